use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use super::AlgebraError;

/// Dense exponent vector with a cached total degree.
///
/// The derived total order is graded reverse lexicographic with
/// `x1 > x2 > ... > xn`: higher degree wins, and on a degree tie the
/// monomial with the *smaller* exponent in the last differing variable is
/// the larger one.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[u16; 16]>,
    degree: u32,
}

impl Monomial {
    /// The monomial `1` in `nvars` variables.
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = 1;
        m.degree = 1;
        m
    }

    pub fn from_exponents(exps: &[u16]) -> Self {
        let degree = exps.iter().map(|&e| u32::from(e)).sum();
        Monomial {
            exps: SmallVec::from_slice(exps),
            degree,
        }
    }

    #[inline]
    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u16 {
        self.exps[i]
    }

    /// True iff every exponent is 0 or 1.
    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    /// Index of some variable whose exponent is at least 2.
    pub fn squared_var(&self) -> Option<usize> {
        self.exps.iter().position(|&e| e >= 2)
    }

    /// `self | other`.
    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// Product of two monomials. With `boolean` set, exponents are capped at
    /// one (arithmetic modulo `x_i^2 = x_i`).
    pub fn checked_mul(&self, other: &Monomial, boolean: bool) -> Result<Monomial, AlgebraError> {
        let mut exps = self.exps.clone();
        let mut degree = 0u32;
        for (i, (e, &o)) in exps.iter_mut().zip(&other.exps).enumerate() {
            let sum = if boolean {
                (*e | o).min(1)
            } else {
                e.checked_add(o).ok_or(AlgebraError::ExponentOverflow { var: i })?
            };
            *e = sum;
            degree += u32::from(sum);
        }
        Ok(Monomial { exps, degree })
    }

    /// Like [`Monomial::checked_mul`] but panics on exponent overflow.
    #[inline]
    pub fn mul(&self, other: &Monomial, boolean: bool) -> Monomial {
        self.checked_mul(other, boolean)
            .expect("monomial exponent overflow")
    }

    /// Multiply by a single variable.
    pub fn mul_var(&self, i: usize, boolean: bool) -> Monomial {
        let mut m = self.clone();
        if boolean && m.exps[i] >= 1 {
            return m;
        }
        m.exps[i] = m.exps[i].checked_add(1).expect("monomial exponent overflow");
        m.degree += 1;
        m
    }

    /// Exact quotient `self / divisor`.
    pub fn checked_div(&self, divisor: &Monomial) -> Result<Monomial, AlgebraError> {
        if !divisor.divides(self) {
            return Err(AlgebraError::NotDivisible);
        }
        let exps: SmallVec<[u16; 16]> = self
            .exps
            .iter()
            .zip(&divisor.exps)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Monomial {
            exps,
            degree: self.degree - divisor.degree,
        })
    }

    /// Exact quotient, panicking when `divisor` does not divide `self`.
    #[inline]
    pub fn div(&self, divisor: &Monomial) -> Monomial {
        self.checked_div(divisor).expect("monomial does not divide")
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[u16; 16]> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| a.max(b))
            .collect();
        let degree = exps.iter().map(|&e| u32::from(e)).sum();
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Render with the given variable names, e.g. `a*b^2`; `1` for the identity.
    pub fn display_with<'a>(&'a self, names: &'a [String]) -> MonomialDisplay<'a> {
        MonomialDisplay { mono: self, names }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| {
            for (a, b) in self.exps.iter().zip(&other.exps).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

pub struct MonomialDisplay<'a> {
    mono: &'a Monomial,
    names: &'a [String],
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.mono.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            match self.names.get(i) {
                Some(name) => write!(f, "{name}")?,
                None => write!(f, "x{}", i + 1)?,
            }
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}
