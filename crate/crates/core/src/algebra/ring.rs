use std::cmp::Ordering;
use std::fmt;

use super::{AlgebraError, Monomial, PrimeField};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
}

impl MonomialOrder {
    pub fn tag(self) -> &'static str {
        match self {
            MonomialOrder::Grevlex => "grevlex",
        }
    }
}

/// Polynomial ring `GF(p)[x1..xn]`, optionally taken modulo the field
/// equations `x_i^2 - x_i` (boolean mode).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    field: PrimeField,
    names: Vec<String>,
    boolean: bool,
    order: MonomialOrder,
}

impl Ring {
    pub fn new(p: u32, names: Vec<String>, boolean: bool) -> Result<Self, AlgebraError> {
        let field = PrimeField::new(p)?;
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(AlgebraError::DuplicateVariable(a.clone()));
            }
        }
        Ok(Ring {
            field,
            names,
            boolean,
            order: MonomialOrder::Grevlex,
        })
    }

    /// Ring with variables named `x1 .. xn`.
    pub fn with_nvars(p: u32, nvars: usize, boolean: bool) -> Result<Self, AlgebraError> {
        Self::new(p, (1..=nvars).map(|i| format!("x{i}")).collect(), boolean)
    }

    #[inline]
    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    #[inline]
    pub fn is_boolean(&self) -> bool {
        self.boolean
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_names(&self) -> &[String] {
        &self.names
    }

    /// The same ring without the field-equation quotient.
    pub fn ordinary(&self) -> Ring {
        Ring {
            boolean: false,
            ..self.clone()
        }
    }

    pub fn one(&self) -> Monomial {
        Monomial::one(self.nvars())
    }

    pub fn var(&self, i: usize) -> Monomial {
        Monomial::var(self.nvars(), i)
    }

    /// Monomial product in this ring.
    #[inline]
    pub fn mono_mul(&self, a: &Monomial, b: &Monomial) -> Monomial {
        a.mul(b, self.boolean)
    }

    #[inline]
    pub fn cmp_mono(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.order {
            MonomialOrder::Grevlex => a.cmp(b),
        }
    }

    #[inline]
    pub fn cmp_sig(&self, s: &Signature, t: &Signature) -> Ordering {
        s.cmp(t)
    }

    pub fn fmt_mono(&self, m: &Monomial) -> String {
        m.display_with(&self.names).to_string()
    }

    pub fn fmt_sig(&self, s: &Signature) -> String {
        if s.mono.is_one() {
            format!("e{}", s.index + 1)
        } else {
            format!("{}*e{}", self.fmt_mono(&s.mono), s.index + 1)
        }
    }
}

/// Module monomial `x^a * e_i` used as a signature. `index` is zero based,
/// so `index == 0` is `e_1`.
///
/// Ordered position over term: a lower index dominates (`e_1` is the largest
/// unit vector), and within one index the monomial order decides.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Signature {
    pub index: usize,
    pub mono: Monomial,
}

impl Signature {
    pub fn unit(nvars: usize, index: usize) -> Self {
        Signature {
            index,
            mono: Monomial::one(nvars),
        }
    }

    pub fn new(index: usize, mono: Monomial) -> Self {
        Signature { index, mono }
    }

    /// `t * self`. Signature monomials never use the boolean quotient.
    pub fn mul(&self, t: &Monomial) -> Signature {
        Signature {
            index: self.index,
            mono: self.mono.mul(t, false),
        }
    }

    /// `self | other` as module monomials.
    pub fn divides(&self, other: &Signature) -> bool {
        self.index == other.index && self.mono.divides(&other.mono)
    }
}

impl Ord for Signature {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .index
            .cmp(&self.index)
            .then_with(|| self.mono.cmp(&other.mono))
    }
}

impl PartialOrd for Signature {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}e{}", self.mono, self.index + 1)
    }
}
