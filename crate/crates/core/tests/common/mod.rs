#![allow(dead_code)]

use mogvw::generate::{random_system, RandomSpec};
use mogvw::io::{parse_system, System};
use mogvw::oracle::minimal_leads;
use mogvw::{Monomial, Polynomial};

pub const TOY: &str = "field 5\nvars a b c\norder grevlex\npoly a*b*c - 1\npoly a*b - c\npoly b*c - b\n";

pub fn toy() -> System {
    parse_system(TOY).unwrap()
}

/// Shape of the `k`-th random instance: 2 to 4 variables, degree at most 3,
/// cycling through GF(2), GF(5), GF(7) and the boolean quotient.
pub fn spec(k: u64) -> RandomSpec {
    let (field, boolean) = [(2, false), (5, false), (7, false), (2, true), (5, true)][(k % 5) as usize];
    let nvars = 2 + ((k / 5) % 3) as usize;
    RandomSpec {
        field,
        nvars,
        npolys: 2 + (k % 3) as usize,
        max_degree: 3,
        max_terms: 4,
        boolean,
    }
}

pub fn instance(k: u64) -> System {
    random_system(&spec(k), 1000 + k)
}

pub fn lead_ideal(basis: &[Polynomial]) -> Vec<Monomial> {
    minimal_leads(basis.iter().filter_map(|f| f.lm()))
}
