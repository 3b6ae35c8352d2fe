//! Plain Buchberger completion and Gröbner-basis verification.
//!
//! Shares only the algebra layer with the engines.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::algebra::{Monomial, Polynomial, Ring};

#[derive(Clone, Copy, Debug)]
pub struct OracleConfig {
    /// Skip pairs with coprime leads.
    pub product_criterion: bool,
    /// Skip `(i, j)` when some `k` has `lm(k) | lcm(i, j)` and both `(i, k)`
    /// and `(j, k)` are already treated.
    pub chain_criterion: bool,
    /// In boolean mode, also complete in the ordinary ring with the field
    /// equations appended and compare.
    pub boolean_cross_check: bool,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            product_criterion: true,
            chain_criterion: true,
            boolean_cross_check: true,
        }
    }
}

/// Reduced Gröbner basis: monic, autoreduced, descending by lead.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleGB {
    pub polys: Vec<Polynomial>,
}

impl OracleGB {
    pub fn leads(&self) -> Vec<Monomial> {
        self.polys.iter().filter_map(|p| p.lm().cloned()).collect()
    }
}

/// Full division of `f` by `g`, always taking the first reducer in list
/// order whose lead divides the current term.
pub fn normal_form(ring: &Ring, f: &Polynomial, g: &[Polynomial]) -> Polynomial {
    let g: Vec<&Polynomial> = g.iter().filter(|p| !p.is_zero()).collect();
    let mut rest = f.clone();
    let mut rem = Vec::new();
    let fld = ring.field();
    while let Some(t) = rest.terms().first().cloned() {
        match g.iter().find(|h| h.lm().unwrap().divides(&t.mono)) {
            Some(h) => {
                let q = t.mono.div(h.lm().unwrap());
                let c = fld.mul(t.coeff, fld.inv(h.lc()));
                rest = rest.sub(ring, &h.mul_term(ring, c, &q));
            }
            None => {
                rem.push(t);
                rest = Polynomial::from_sorted_terms(rest.terms()[1..].to_vec());
            }
        }
    }
    Polynomial::from_sorted_terms(rem)
}

/// S-polynomial of two nonzero polynomials.
pub fn s_polynomial(ring: &Ring, f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (lf, lg) = (f.lm().unwrap(), g.lm().unwrap());
    let l = lf.lcm(lg);
    Polynomial::combine(ring, g.lc(), &l.div(lf), f, f.lc(), &l.div(lg), g)
}

/// `x_v * g` in the quotient for every `x_v` dividing `lm(g)`.
pub fn field_products(ring: &Ring, g: &Polynomial) -> Vec<Polynomial> {
    let Some(lead) = g.lm() else { return Vec::new() };
    (0..ring.nvars())
        .filter(|&v| lead.exponent(v) > 0)
        .map(|v| g.mul_term(ring, 1, &ring.var(v)))
        .collect()
}

/// Buchberger completion followed by reduction to canonical form. In
/// boolean mode the products `x_v * g` for `x_v | lm(g)` are queued like
/// pairs of degree `deg(lm(g)) + 1`.
pub fn buchberger(ring: &Ring, system: &[Polynomial], cfg: OracleConfig) -> OracleGB {
    // (lcm degree, first, second); second == usize::MAX - v marks a field product by x_v
    type Pair = (u32, usize, usize);
    let mut basis: Vec<Polynomial> = Vec::new();
    let mut pairs: BTreeSet<Pair> = BTreeSet::new();
    let mut treated: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut pending: Vec<Polynomial> = system.iter().filter(|f| !f.is_zero()).cloned().collect();

    let add = |h: Polynomial, basis: &mut Vec<Polynomial>, pairs: &mut BTreeSet<Pair>| {
        let h = h.monic_or_zero(ring);
        let k = basis.len();
        let lk = h.lm().unwrap().clone();
        for (i, b) in basis.iter().enumerate() {
            pairs.insert((b.lm().unwrap().lcm(&lk).degree(), i, k));
        }
        if ring.is_boolean() {
            for v in (0..ring.nvars()).filter(|&v| lk.exponent(v) > 0) {
                pairs.insert((lk.degree() + 1, k, usize::MAX - v));
            }
        }
        basis.push(h);
    };

    loop {
        while let Some(f) = pending.pop() {
            let h = normal_form(ring, &f, &basis);
            if !h.is_zero() {
                add(h, &mut basis, &mut pairs);
            }
        }
        let Some(pair) = pairs.pop_first() else { break };
        let (_, i, j) = pair;
        if j >= basis.len() {
            let v = usize::MAX - j;
            pending.push(basis[i].mul_term(ring, 1, &ring.var(v)));
            continue;
        }
        let (li, lj) = (basis[i].lm().unwrap(), basis[j].lm().unwrap());
        let l = li.lcm(lj);
        let skip = (cfg.product_criterion && li.is_coprime(lj))
            || (cfg.chain_criterion
                && (0..basis.len()).any(|k| {
                    k != i
                        && k != j
                        && basis[k].lm().unwrap().divides(&l)
                        && treated.contains(&(i.min(k), i.max(k)))
                        && treated.contains(&(j.min(k), j.max(k)))
                }));
        treated.insert((i, j));
        if !skip {
            pending.push(s_polynomial(ring, &basis[i], &basis[j]));
        }
    }
    OracleGB {
        polys: reduce_basis(ring, basis),
    }
}

/// Minimalize, tail-reduce, make monic, sort descending by lead.
pub fn reduce_basis(ring: &Ring, mut g: Vec<Polynomial>) -> Vec<Polynomial> {
    g.retain(|p| !p.is_zero());
    g.sort_by(|a, b| a.lm().cmp(&b.lm()));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for p in g {
        let l = p.lm().unwrap();
        if !minimal.iter().any(|q| q.lm().unwrap().divides(l)) {
            minimal.push(p);
        }
    }
    let mut out: Vec<Polynomial> = (0..minimal.len())
        .map(|i| {
            let others: Vec<Polynomial> = minimal
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != i)
                .map(|(_, q)| q.clone())
                .collect();
            let p = &minimal[i];
            let lead = Polynomial::from_sorted_terms(p.terms()[..1].to_vec());
            let tail = Polynomial::from_sorted_terms(p.terms()[1..].to_vec());
            lead.add(ring, &normal_form(ring, &tail, &others)).monic_or_zero(ring)
        })
        .collect();
    out.sort_by(|a, b| b.lm().cmp(&a.lm()));
    out
}

/// Completion in the ordinary ring with `x_i^2 - x_i` appended, keeping only
/// elements with squarefree leads. Agrees with [`buchberger`] in boolean mode.
pub fn buchberger_with_field_equations(ring: &Ring, system: &[Polynomial], cfg: OracleConfig) -> OracleGB {
    let ord = ring.ordinary();
    let mut sys: Vec<Polynomial> = system.to_vec();
    for v in 0..ord.nvars() {
        let x = ord.var(v);
        sys.push(
            Polynomial::monomial(&ord, 1, x.mul(&x, false)).sub(&ord, &Polynomial::monomial(&ord, 1, x)),
        );
    }
    let gb = buchberger(&ord, &sys, cfg);
    OracleGB {
        polys: gb
            .polys
            .into_iter()
            .filter(|p| p.lm().unwrap().is_squarefree())
            .collect(),
    }
}

/// Minimal generators of the monomial ideal spanned by `leads`, ascending.
pub fn minimal_leads<'a>(leads: impl IntoIterator<Item = &'a Monomial>) -> Vec<Monomial> {
    let mut all: Vec<Monomial> = leads.into_iter().cloned().collect();
    all.sort();
    all.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for m in all {
        if !out.iter().any(|q| q.divides(&m)) {
            out.push(m);
        }
    }
    out
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub s_pairs: bool,
    pub inputs_reduce: bool,
    pub candidate_in_ideal: bool,
    pub leads_match: bool,
    /// Boolean mode only: the two oracle paths agree.
    pub oracle_paths_agree: Option<bool>,
    pub failures: Vec<String>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.s_pairs
            && self.inputs_reduce
            && self.candidate_in_ideal
            && self.leads_match
            && self.oracle_paths_agree != Some(false)
    }
}

/// Check `candidate` against `system`; failures are itemized in the report.
pub fn verify_gb(ring: &Ring, candidate: &[Polynomial], system: &[Polynomial], cfg: OracleConfig) -> VerifyReport {
    let cand: Vec<Polynomial> = candidate.iter().filter(|p| !p.is_zero()).cloned().collect();
    let mut r = VerifyReport {
        s_pairs: true,
        inputs_reduce: true,
        candidate_in_ideal: true,
        leads_match: true,
        ..Default::default()
    };
    let show = |p: &Polynomial| p.display(ring);

    // With every candidate reducing to zero modulo its reduced form, the two
    // span the same ideal with the same leads, so it suffices to check the
    // S-pairs of the reduced form. Coprime leads always reduce to zero.
    let red = reduce_basis(ring, cand.clone());
    for f in &cand {
        if !normal_form(ring, f, &red).is_zero() {
            r.s_pairs = false;
            r.failures.push(format!("{} does not reduce modulo the interreduced candidate", show(f)));
        }
    }
    for i in 0..red.len() {
        for j in i + 1..red.len() {
            if red[i].lm().unwrap().is_coprime(red[j].lm().unwrap()) {
                continue;
            }
            let s = s_polynomial(ring, &red[i], &red[j]);
            if !normal_form(ring, &s, &red).is_zero() {
                r.s_pairs = false;
                r.failures.push(format!("S({}, {}) does not reduce to 0", show(&red[i]), show(&red[j])));
            }
        }
        if ring.is_boolean() {
            for h in field_products(ring, &red[i]) {
                if !normal_form(ring, &h, &red).is_zero() {
                    r.s_pairs = false;
                    r.failures.push(format!("field product {} does not reduce to 0", show(&h)));
                }
            }
        }
    }
    for f in system {
        if !normal_form(ring, f, &cand).is_zero() {
            r.inputs_reduce = false;
            r.failures.push(format!("input {} does not reduce to 0", show(f)));
        }
    }
    let gb = buchberger(ring, system, cfg);
    for f in &cand {
        if !normal_form(ring, f, &gb.polys).is_zero() {
            r.candidate_in_ideal = false;
            r.failures.push(format!("{} is not in the ideal", show(f)));
        }
    }
    let mine = minimal_leads(cand.iter().map(|p| p.lm().unwrap()));
    let theirs = minimal_leads(gb.polys.iter().map(|p| p.lm().unwrap()));
    if mine != theirs {
        r.leads_match = false;
        let fmt = |v: &[Monomial]| v.iter().map(|m| ring.fmt_mono(m)).collect::<Vec<_>>().join(", ");
        r.failures
            .push(format!("lead ideals differ: {{{}}} vs oracle {{{}}}", fmt(&mine), fmt(&theirs)));
    }
    if ring.is_boolean() && cfg.boolean_cross_check {
        let other = buchberger_with_field_equations(ring, system, cfg);
        let agree = other == gb;
        r.oracle_paths_agree = Some(agree);
        if !agree {
            r.failures.push("quotient and field-equation oracles disagree".into());
        }
    }
    r
}
