use super::AlgebraError;

/// Residue in `[0, p)`.
pub type Coeff = u32;

const INVERSE_TABLE_LIMIT: u32 = 257;

/// Prime field `GF(p)` with `2 <= p < 2^16`, so that products of two
/// residues fit in 32 bits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u32,
    inverses: Vec<Coeff>,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self, AlgebraError> {
        if !(2..(1 << 16)).contains(&p) || !is_prime(p) {
            return Err(AlgebraError::InvalidModulus(p));
        }
        let inverses = if p <= INVERSE_TABLE_LIMIT {
            (0..p).map(|a| if a == 0 { 0 } else { ext_euclid_inverse(a, p) }).collect()
        } else {
            Vec::new()
        };
        Ok(PrimeField { p, inverses })
    }

    #[inline]
    pub fn modulus(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, v: i64) -> Coeff {
        v.rem_euclid(i64::from(self.p)) as Coeff
    }

    #[inline]
    pub fn add(&self, a: Coeff, b: Coeff) -> Coeff {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: Coeff, b: Coeff) -> Coeff {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: Coeff) -> Coeff {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: Coeff, b: Coeff) -> Coeff {
        (a * b) % self.p
    }

    /// Multiplicative inverse of a nonzero residue.
    #[inline]
    pub fn inv(&self, a: Coeff) -> Coeff {
        assert!(a != 0, "inverse of zero in GF({})", self.p);
        if let Some(&i) = self.inverses.get(a as usize) {
            i
        } else {
            ext_euclid_inverse(a, self.p)
        }
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn ext_euclid_inverse(a: u32, p: u32) -> u32 {
    let (mut r0, mut r1) = (i64::from(p), i64::from(a));
    let (mut s0, mut s1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1);
    s0.rem_euclid(i64::from(p)) as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_moduli() {
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(4).is_err());
        assert!(PrimeField::new(65537).is_err());
        assert!(PrimeField::new(65521).is_ok());
    }

    #[test]
    fn inverses_by_brute_force() {
        for p in [2u32, 3, 5, 7, 251, 257, 65521] {
            let f = PrimeField::new(p).unwrap();
            let sample: Vec<u32> = if p < 300 { (1..p).collect() } else { vec![1, 2, 3, 1000, p - 1] };
            for a in sample {
                assert_eq!(f.mul(a, f.inv(a)), 1, "p={p} a={a}");
            }
        }
        assert_eq!(PrimeField::new(5).unwrap().inv(4), 4);
    }

    #[test]
    fn arithmetic_stays_reduced() {
        let f = PrimeField::new(7).unwrap();
        for a in 0..7 {
            for b in 0..7 {
                assert_eq!(f.add(a, b), (a + b) % 7);
                assert_eq!(f.sub(a, b), (a + 7 - b) % 7);
                assert_eq!(f.mul(a, b), (a * b) % 7);
            }
            assert_eq!(f.add(a, f.neg(a)), 0);
        }
        assert_eq!(f.reduce(-1), 6);
    }
}
