use std::cmp::Ordering;
use std::fmt::Write as _;

use super::{AlgebraError, Coeff, Monomial, Ring};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: Coeff,
    pub mono: Monomial,
}

/// Sparse polynomial: terms strictly descending, no zero coefficients.
/// The zero polynomial has no terms.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    /// Normalize an arbitrary list of terms: reduce coefficients, apply the
    /// boolean quotient when active, sort, merge equal monomials and drop zeros.
    pub fn from_terms(ring: &Ring, mut terms: Vec<Term>) -> Self {
        let p = ring.field().modulus();
        for t in &mut terms {
            t.coeff %= p;
            if ring.is_boolean() && !t.mono.is_squarefree() {
                let capped: Vec<u16> = t.mono.exponents().iter().map(|&e| e.min(1)).collect();
                t.mono = Monomial::from_exponents(&capped);
            }
        }
        terms.sort_unstable_by(|a, b| b.mono.cmp(&a.mono));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mono == t.mono => {
                    last.coeff = ring.field().add(last.coeff, t.coeff);
                }
                _ => {
                    if out.last().is_some_and(|l| l.coeff == 0) {
                        out.pop();
                    }
                    out.push(t);
                }
            }
        }
        if out.last().is_some_and(|l| l.coeff == 0) {
            out.pop();
        }
        Polynomial { terms: out }
    }

    /// Wrap terms that are already strictly descending with nonzero
    /// coefficients.
    pub fn from_sorted_terms(terms: Vec<Term>) -> Self {
        debug_assert!(terms.iter().all(|t| t.coeff != 0));
        debug_assert!(terms.windows(2).all(|w| w[0].mono > w[1].mono));
        Polynomial { terms }
    }

    /// Build from `(coefficient, exponents)` pairs; coefficients may be negative.
    pub fn from_pairs(ring: &Ring, pairs: &[(i64, &[u16])]) -> Self {
        let terms = pairs
            .iter()
            .map(|&(c, e)| Term {
                coeff: ring.field().reduce(c),
                mono: Monomial::from_exponents(e),
            })
            .collect();
        Self::from_terms(ring, terms)
    }

    pub fn monomial(ring: &Ring, coeff: Coeff, mono: Monomial) -> Self {
        Self::from_terms(ring, vec![Term { coeff, mono }])
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.terms.iter().map(|t| &t.mono)
    }

    /// Leading monomial; `None` plays the role of `lm(0) = 0`, which sorts
    /// below every monomial.
    #[inline]
    pub fn lm(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.mono)
    }

    /// Leading coefficient, `0` for the zero polynomial.
    #[inline]
    pub fn lc(&self) -> Coeff {
        self.terms.first().map_or(0, |t| t.coeff)
    }

    pub fn is_constant(&self) -> bool {
        self.lm().is_some_and(Monomial::is_one)
    }

    pub fn make_monic(&self, ring: &Ring) -> Result<Polynomial, AlgebraError> {
        if self.is_zero() {
            return Err(AlgebraError::ZeroPolynomial);
        }
        Ok(self.scale(ring, ring.field().inv(self.lc())))
    }

    /// Monic copy, or zero for zero.
    pub fn monic_or_zero(&self, ring: &Ring) -> Polynomial {
        self.make_monic(ring).unwrap_or_default()
    }

    pub fn scale(&self, ring: &Ring, c: Coeff) -> Polynomial {
        if c == 0 {
            return Polynomial::zero();
        }
        if c == 1 {
            return self.clone();
        }
        let f = ring.field();
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    coeff: f.mul(t.coeff, c),
                    mono: t.mono.clone(),
                })
                .collect(),
        }
    }

    /// `c * t * self`.
    pub fn mul_term(&self, ring: &Ring, c: Coeff, t: &Monomial) -> Polynomial {
        if c == 0 || self.is_zero() {
            return Polynomial::zero();
        }
        let f = ring.field();
        let terms: Vec<Term> = self
            .terms
            .iter()
            .map(|term| Term {
                coeff: f.mul(term.coeff, c),
                mono: term.mono.mul(t, ring.is_boolean()),
            })
            .collect();
        if ring.is_boolean() && !t.is_one() {
            // The quotient is not multiplicative; re-sort and merge.
            Self::from_terms(ring, terms)
        } else {
            Polynomial { terms }
        }
    }

    pub fn add(&self, ring: &Ring, other: &Polynomial) -> Polynomial {
        merge(ring, &self.terms, &other.terms, false)
    }

    pub fn sub(&self, ring: &Ring, other: &Polynomial) -> Polynomial {
        merge(ring, &self.terms, &other.terms, true)
    }

    /// `cf * tf * f - cg * tg * g`.
    pub fn combine(
        ring: &Ring,
        cf: Coeff,
        tf: &Monomial,
        f: &Polynomial,
        cg: Coeff,
        tg: &Monomial,
        g: &Polynomial,
    ) -> Polynomial {
        let a = f.mul_term(ring, cf, tf);
        let b = g.mul_term(ring, cg, tg);
        merge(ring, &a.terms, &b.terms, true)
    }

    pub fn mul(&self, ring: &Ring, other: &Polynomial) -> Polynomial {
        let mut terms = Vec::with_capacity(self.len() * other.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(Term {
                    coeff: ring.field().mul(a.coeff, b.coeff),
                    mono: a.mono.mul(&b.mono, ring.is_boolean()),
                });
            }
        }
        Self::from_terms(ring, terms)
    }

    /// Evaluate at a point given as residues.
    pub fn evaluate(&self, ring: &Ring, point: &[Coeff]) -> Coeff {
        let f = ring.field();
        self.terms.iter().fold(0, |acc, t| {
            let mut v = t.coeff;
            for (i, &e) in t.mono.exponents().iter().enumerate() {
                for _ in 0..e {
                    v = f.mul(v, point[i]);
                }
            }
            f.add(acc, v)
        })
    }

    /// Human-readable form, e.g. `a*b - c`. Coefficients above `p/2` are
    /// printed as negatives.
    pub fn display(&self, ring: &Ring) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let p = ring.field().modulus();
        let names = ring.var_names();
        let mut out = String::new();
        for (k, t) in self.terms.iter().enumerate() {
            let (neg, mag) = if p > 2 && t.coeff > p / 2 {
                (true, p - t.coeff)
            } else {
                (false, t.coeff)
            };
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            if t.mono.is_one() {
                let _ = write!(out, "{mag}");
            } else if mag == 1 {
                let _ = write!(out, "{}", t.mono.display_with(names));
            } else {
                let _ = write!(out, "{mag}*{}", t.mono.display_with(names));
            }
        }
        out
    }
}

fn merge(ring: &Ring, a: &[Term], b: &[Term], negate_b: bool) -> Polynomial {
    let f = ring.field();
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let bcoeff = |c: Coeff| if negate_b { f.neg(c) } else { c };
    while i < a.len() && j < b.len() {
        match a[i].mono.cmp(&b[j].mono) {
            Ordering::Greater => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Less => {
                out.push(Term {
                    coeff: bcoeff(b[j].coeff),
                    mono: b[j].mono.clone(),
                });
                j += 1;
            }
            Ordering::Equal => {
                let c = f.add(a[i].coeff, bcoeff(b[j].coeff));
                if c != 0 {
                    out.push(Term {
                        coeff: c,
                        mono: a[i].mono.clone(),
                    });
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(|t| Term {
        coeff: bcoeff(t.coeff),
        mono: t.mono.clone(),
    }));
    Polynomial { terms: out }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn abc(p: u32) -> Ring {
        Ring::new(p, vec!["a".into(), "b".into(), "c".into()], false).unwrap()
    }

    fn is_normalized(f: &Polynomial) -> bool {
        f.terms().iter().all(|t| t.coeff != 0)
            && f.terms().windows(2).all(|w| w[0].mono > w[1].mono)
    }

    /// Dense expansion used as an independent check of `combine`.
    fn expand(ring: &Ring, parts: &[(Coeff, &Monomial, &Polynomial)]) -> Vec<(Vec<u16>, Coeff)> {
        let mut acc: std::collections::BTreeMap<Vec<u16>, Coeff> = Default::default();
        for &(c, t, f) in parts {
            for term in f.terms() {
                let e: Vec<u16> = term.mono.exponents().iter().zip(t.exponents()).map(|(x, y)| x + y).collect();
                let v = acc.entry(e).or_insert(0);
                *v = ring.field().add(*v, ring.field().mul(c, term.coeff));
            }
        }
        acc.into_iter().filter(|(_, c)| *c != 0).collect()
    }

    #[test]
    fn combine_example() {
        let r = abc(5);
        let f = Polynomial::from_pairs(&r, &[(1, &[1, 1, 1]), (-1, &[0, 0, 0])]);
        let g = Polynomial::from_pairs(&r, &[(1, &[0, 1, 1]), (-1, &[0, 1, 0])]);
        let one = r.one();
        let a = r.var(0);
        let got = Polynomial::combine(&r, 1, &one, &f, 1, &a, &g);
        let want = Polynomial::from_pairs(&r, &[(1, &[1, 1, 0]), (-1, &[0, 0, 0])]);
        assert_eq!(got, want);
        assert_eq!(got.display(&r), "a*b - 1");
        let minus_one = r.field().neg(1);
        let oracle = expand(&r, &[(1, &one, &f), (minus_one, &a, &g)]);
        let got_dense: Vec<(Vec<u16>, Coeff)> = {
            let mut v: Vec<_> = got.terms().iter().map(|t| (t.mono.exponents().to_vec(), t.coeff)).collect();
            v.sort();
            v
        };
        assert_eq!(got_dense, oracle);
    }

    #[test]
    fn combine_degenerate_cases() {
        let r = abc(5);
        let f = Polynomial::from_pairs(&r, &[(1, &[1, 1, 1]), (-1, &[0, 0, 0])]);
        let one = r.one();
        assert!(Polynomial::combine(&r, 1, &one, &f, 1, &one, &f).is_zero());
        let t = r.var(2);
        let z = Polynomial::zero();
        assert_eq!(Polynomial::combine(&r, 3, &t, &f, 0, &one, &z), f.mul_term(&r, 3, &t));
    }

    #[test]
    fn head_reads() {
        let r = abc(5);
        let f = Polynomial::from_pairs(&r, &[(1, &[1, 1, 1]), (-1, &[0, 0, 0])]);
        assert_eq!(f.lm(), Some(&Monomial::from_exponents(&[1, 1, 1])));
        assert_eq!(f.lc(), 1);
        assert_eq!(Polynomial::zero().lm(), None);
        assert_eq!(Polynomial::zero().lc(), 0);
        assert_eq!(Polynomial::zero().make_monic(&r), Err(AlgebraError::ZeroPolynomial));
    }

    #[test]
    fn make_monic_over_gf5() {
        let r = abc(5);
        // 4c^2 + c -> c^2 + 4c since 4^-1 = 4
        let f = Polynomial::from_pairs(&r, &[(4, &[0, 0, 2]), (1, &[0, 0, 1])]);
        let want = Polynomial::from_pairs(&r, &[(1, &[0, 0, 2]), (4, &[0, 0, 1])]);
        assert_eq!(f.make_monic(&r).unwrap(), want);
        // brute-force the inverse
        let inv = (1..5).find(|x| (4 * x) % 5 == 1).unwrap();
        assert_eq!(f.scale(&r, inv), want);
    }

    #[test]
    fn boolean_products_agree_with_function_evaluation() {
        // In GF(2)[x]/(x^2 - x) polynomials are functions on {0,1}^n, so a
        // product can be checked pointwise.
        let r = Ring::with_nvars(2, 3, true).unwrap();
        let f = Polynomial::from_pairs(&r, &[(1, &[1, 1, 0]), (1, &[0, 0, 1]), (1, &[0, 0, 0])]);
        let g = Polynomial::from_pairs(&r, &[(1, &[1, 0, 0]), (1, &[0, 1, 1])]);
        let h = f.mul(&r, &g);
        for bits in 0..8u32 {
            let pt: Vec<Coeff> = (0..3).map(|i| (bits >> i) & 1).collect();
            assert_eq!(h.evaluate(&r, &pt), (f.evaluate(&r, &pt) * g.evaluate(&r, &pt)) % 2);
        }
        assert!(h.monomials().all(Monomial::is_squarefree));
    }

    #[test]
    fn display_round_trip_shape() {
        let r = abc(5);
        let f = Polynomial::from_pairs(&r, &[(-1, &[0, 0, 2]), (1, &[0, 0, 1])]);
        assert_eq!(f.display(&r), "-c^2 + c");
        let g = Polynomial::from_pairs(&r, &[(2, &[1, 0, 0]), (3, &[0, 0, 0])]);
        assert_eq!(g.display(&r), "2*a - 2");
    }

    fn poly_strategy(p: u32) -> impl Strategy<Value = Vec<(i64, Vec<u16>)>> {
        proptest::collection::vec((0i64..i64::from(p), proptest::collection::vec(0u16..3, 3)), 0..6)
    }

    fn build(r: &Ring, v: &[(i64, Vec<u16>)]) -> Polynomial {
        let pairs: Vec<(i64, &[u16])> = v.iter().map(|(c, e)| (*c, e.as_slice())).collect();
        Polynomial::from_pairs(r, &pairs)
    }

    proptest! {
        #[test]
        fn combine_output_is_normalized(a in poly_strategy(7), b in poly_strategy(7),
                                        ta in proptest::collection::vec(0u16..2, 3),
                                        tb in proptest::collection::vec(0u16..2, 3),
                                        boolean in any::<bool>()) {
            let r = Ring::with_nvars(7, 3, boolean).unwrap();
            let (f, g) = (build(&r, &a), build(&r, &b));
            let (ta, tb) = (Monomial::from_exponents(&ta), Monomial::from_exponents(&tb));
            let h = Polynomial::combine(&r, 3, &ta, &f, 5, &tb, &g);
            prop_assert!(is_normalized(&h));
            if boolean {
                prop_assert!(h.monomials().all(Monomial::is_squarefree));
            }
        }

        #[test]
        fn combine_cancels_leading_terms(a in poly_strategy(5), b in poly_strategy(5)) {
            let r = abc(5);
            let (f, g) = (build(&r, &a), build(&r, &b));
            prop_assume!(!f.is_zero() && !g.is_zero());
            let (lf, lg) = (f.lm().unwrap(), g.lm().unwrap());
            let l = lf.lcm(lg);
            let (tf, tg) = (l.div(lf), l.div(lg));
            let h = Polynomial::combine(&r, g.lc(), &tf, &f, f.lc(), &tg, &g);
            prop_assert!(h.lm().is_none_or(|m| *m < l));
        }

        #[test]
        fn combine_matches_dense_expansion(a in poly_strategy(5), b in poly_strategy(5),
                                           ta in proptest::collection::vec(0u16..3, 3)) {
            let r = abc(5);
            let (f, g) = (build(&r, &a), build(&r, &b));
            let t = Monomial::from_exponents(&ta);
            let one = r.one();
            let h = Polynomial::combine(&r, 2, &t, &f, 3, &one, &g);
            let mut dense: Vec<_> = h.terms().iter().map(|t| (t.mono.exponents().to_vec(), t.coeff)).collect();
            dense.sort();
            let oracle = expand(&r, &[(2, &t, &f), (r.field().neg(3), &one, &g)]);
            prop_assert_eq!(dense, oracle);
        }
    }
}
