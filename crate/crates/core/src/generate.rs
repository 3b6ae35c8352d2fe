//! Seeded random systems.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Monomial, Polynomial, Ring, Term};
use crate::io::System;

/// Squarefree monomials of degree at most `d` in `n` variables, ascending.
fn squarefree_monomials(n: usize, d: u32) -> Vec<Monomial> {
    let mut out = vec![Monomial::one(n)];
    let mut frontier = vec![(Monomial::one(n), 0usize)];
    for _ in 0..d {
        let mut next = Vec::new();
        for (m, from) in &frontier {
            for v in *from..n {
                let mm = m.mul_var(v, false);
                out.push(mm.clone());
                next.push((mm, v + 1));
            }
        }
        frontier = next;
    }
    out.sort();
    out
}

fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

/// `n` boolean quadratics in `x1..xn` over GF(2); every squarefree monomial of
/// degree at most 2 appears with probability 1/2. Zero draws are redrawn.
pub fn gen_random_square(n: usize, seed: u64) -> System {
    assert!(n >= 1, "need at least one variable");
    let ring = Ring::new(2, names(n), true).expect("valid ring");
    let monos = squarefree_monomials(n, 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let polys = (0..n)
        .map(|_| loop {
            let terms: Vec<Term> = monos
                .iter()
                .filter(|_| rng.gen_bool(0.5))
                .map(|m| Term {
                    coeff: 1,
                    mono: m.clone(),
                })
                .collect();
            let f = Polynomial::from_terms(&ring, terms);
            if !f.is_zero() {
                break f;
            }
        })
        .collect();
    System { ring, polys }
}

/// Shape of a general random system.
#[derive(Clone, Debug)]
pub struct RandomSpec {
    pub field: u32,
    pub nvars: usize,
    pub npolys: usize,
    pub max_degree: u32,
    /// Upper bound on terms per polynomial.
    pub max_terms: usize,
    pub boolean: bool,
}

/// Random system with the given shape. Variable names are `a, b, c, ...`
/// up to 26 variables and `x1, x2, ...` beyond.
pub fn random_system(spec: &RandomSpec, seed: u64) -> System {
    let names: Vec<String> = if spec.nvars <= 26 {
        (0..spec.nvars).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
    } else {
        names(spec.nvars)
    };
    let ring = Ring::new(spec.field, names, spec.boolean).expect("valid ring");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = spec.field;
    let polys = (0..spec.npolys)
        .map(|_| loop {
            let nterms = rng.gen_range(1..=spec.max_terms.max(1));
            let terms: Vec<Term> = (0..nterms)
                .map(|_| {
                    let deg = rng.gen_range(0..=spec.max_degree);
                    let mut exps = vec![0u16; spec.nvars];
                    for _ in 0..deg {
                        exps[rng.gen_range(0..spec.nvars)] += 1;
                    }
                    Term {
                        coeff: rng.gen_range(1..p),
                        mono: Monomial::from_exponents(&exps),
                    }
                })
                .collect();
            let f = Polynomial::from_terms(&ring, terms);
            if !f.is_zero() {
                break f;
            }
        })
        .collect();
    System { ring, polys }
}

/// Rewrite a boolean system in the ordinary ring with `x^2 - x` appended
/// for every variable.
pub fn with_field_equations(sys: &System) -> System {
    let ring = sys.ring.ordinary();
    let mut polys = sys.polys.clone();
    for v in 0..ring.nvars() {
        let x = ring.var(v);
        polys.push(Polynomial::monomial(&ring, 1, x.mul(&x, false)).sub(&ring, &Polynomial::monomial(&ring, 1, x)));
    }
    System { ring, polys }
}
