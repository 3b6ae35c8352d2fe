//! Labeled monomials and the shared basis state.
//!
//! A labeled monomial `(m, (u, f))` is stored in reduced form: the monomial
//! `m`, and a shared [`Generator`] holding `lm(u)` and `f`. Its signature is
//! `(m / lm(f)) * lm(u)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rustc_hash::FxHashMap;
use serde::Serialize;

use crate::algebra::{Monomial, Polynomial, Ring, Signature};

/// A labeled polynomial `(lm(u), f)` with `f` monic and nonzero.
#[derive(Debug)]
pub struct Generator {
    /// 1-based; inputs are `1..=l`, later generators continue the count.
    pub id: usize,
    pub sig: Signature,
    pub poly: Polynomial,
}

impl Generator {
    #[inline]
    pub fn lead(&self) -> &Monomial {
        self.poly.lm().expect("generator polynomial is nonzero")
    }
}

#[derive(Clone, Debug)]
pub struct LabeledMonomial {
    pub mono: Monomial,
    pub gen: Arc<Generator>,
    pub lifted: bool,
    /// Creation order, assigned on insertion into a [`BasisState`].
    pub serial: u64,
}

impl LabeledMonomial {
    pub fn primitive(gen: Arc<Generator>) -> Self {
        LabeledMonomial {
            mono: gen.lead().clone(),
            gen,
            lifted: false,
            serial: 0,
        }
    }

    /// `t_f = m / lm(f)`.
    #[inline]
    pub fn cofactor(&self) -> Monomial {
        self.mono.div(self.gen.lead())
    }

    #[inline]
    pub fn signature(&self) -> Signature {
        self.gen.sig.mul(&self.cofactor())
    }

    #[inline]
    pub fn is_primitive(&self) -> bool {
        &self.mono == self.gen.lead()
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.mono.degree()
    }

    /// The polynomial `t_f * f`, whose leading monomial is `m`.
    pub fn multiple(&self, ring: &Ring) -> Polynomial {
        self.gen.poly.mul_term(ring, 1, &self.cofactor())
    }

    /// `(x_i m, (lm(u), f))` with ordinary multiplication, unlifted.
    pub fn lift_by_var(&self, i: usize) -> LabeledMonomial {
        LabeledMonomial {
            mono: self.mono.mul_var(i, false),
            gen: Arc::clone(&self.gen),
            lifted: false,
            serial: 0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Collision {
    KeepA,
    KeepB,
    Equal,
}

/// Collision rule: the smaller signature is retained.
pub fn resolve_collision(a: &LabeledMonomial, b: &LabeledMonomial) -> Collision {
    assert_eq!(a.mono, b.mono, "collision between different monomials");
    match a.signature().cmp(&b.signature()) {
        std::cmp::Ordering::Less => Collision::KeepA,
        std::cmp::Ordering::Greater => Collision::KeepB,
        std::cmp::Ordering::Equal => Collision::Equal,
    }
}

#[derive(Clone, Debug)]
pub enum InsertOutcome {
    Inserted,
    Replaced(LabeledMonomial),
    RejectedEqual,
    RejectedLarger,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Criterion {
    Lcm,
    Syzygy,
    Principal,
    Rewritten,
}

impl Criterion {
    pub const ALL: [Criterion; 4] = [
        Criterion::Lcm,
        Criterion::Syzygy,
        Criterion::Principal,
        Criterion::Rewritten,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Criterion::Lcm => "lcm",
            Criterion::Syzygy => "syzygy",
            Criterion::Principal => "principal",
            Criterion::Rewritten => "rewritten",
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Criterion {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Criterion::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown criterion `{s}` (expected lcm, syzygy, principal or rewritten)"))
    }
}

/// On/off switches for the rejection criteria.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Criteria {
    pub lcm: bool,
    pub syzygy: bool,
    pub principal: bool,
    pub rewritten: bool,
}

impl Default for Criteria {
    fn default() -> Self {
        Self::all()
    }
}

impl Criteria {
    pub fn all() -> Self {
        Criteria {
            lcm: true,
            syzygy: true,
            principal: true,
            rewritten: true,
        }
    }

    pub fn none() -> Self {
        Criteria {
            lcm: false,
            syzygy: false,
            principal: false,
            rewritten: false,
        }
    }

    /// Bit 0 = lcm, 1 = syzygy, 2 = principal, 3 = rewritten.
    pub fn from_mask(mask: u8) -> Self {
        Criteria {
            lcm: mask & 1 != 0,
            syzygy: mask & 2 != 0,
            principal: mask & 4 != 0,
            rewritten: mask & 8 != 0,
        }
    }

    pub fn enabled(&self, c: Criterion) -> bool {
        match c {
            Criterion::Lcm => self.lcm,
            Criterion::Syzygy => self.syzygy,
            Criterion::Principal => self.principal,
            Criterion::Rewritten => self.rewritten,
        }
    }

    pub fn set(&mut self, c: Criterion, on: bool) {
        match c {
            Criterion::Lcm => self.lcm = on,
            Criterion::Syzygy => self.syzygy = on,
            Criterion::Principal => self.principal = on,
            Criterion::Rewritten => self.rewritten = on,
        }
    }
}

/// Instrumentation counters.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub loops: u64,
    pub lifts: u64,
    pub inserted: u64,
    pub collisions: u64,
    pub replacements: u64,
    pub equal_signatures: u64,
    pub rejected_lcm: u64,
    pub rejected_syzygy: u64,
    pub rejected_principal: u64,
    pub rejected_rewritten: u64,
    /// Full reductions started (each passes the criteria gate).
    pub mutual_reductions: u64,
    pub reduction_steps: u64,
    pub syzygies_found: u64,
    pub generators: u64,
    pub extensions: u64,
    /// Loops after which `liftdeg` was lower than at some earlier loop.
    pub liftdeg_drops: u64,
}

impl Stats {
    pub fn rejections(&self, c: Criterion) -> u64 {
        match c {
            Criterion::Lcm => self.rejected_lcm,
            Criterion::Syzygy => self.rejected_syzygy,
            Criterion::Principal => self.rejected_principal,
            Criterion::Rewritten => self.rejected_rewritten,
        }
    }

    fn bump_rejection(&mut self, c: Criterion) {
        match c {
            Criterion::Lcm => self.rejected_lcm += 1,
            Criterion::Syzygy => self.rejected_syzygy += 1,
            Criterion::Principal => self.rejected_principal += 1,
            Criterion::Rewritten => self.rejected_rewritten += 1,
        }
    }
}

/// Recorded syzygy signatures, kept minimal under divisibility per index.
#[derive(Clone, Debug, Default)]
pub struct SyzygySet {
    by_index: Vec<Vec<Monomial>>,
}

impl SyzygySet {
    pub fn new(ngens: usize) -> Self {
        SyzygySet {
            by_index: vec![Vec::new(); ngens],
        }
    }

    /// Some recorded signature divides `sig`.
    pub fn covers(&self, sig: &Signature) -> bool {
        self.by_index
            .get(sig.index)
            .is_some_and(|v| v.iter().any(|m| m.divides(&sig.mono)))
    }

    /// Returns false when `sig` was already covered.
    pub fn insert(&mut self, sig: &Signature) -> bool {
        if self.covers(sig) {
            return false;
        }
        if sig.index >= self.by_index.len() {
            self.by_index.resize(sig.index + 1, Vec::new());
        }
        let v = &mut self.by_index[sig.index];
        v.retain(|m| !sig.mono.divides(m));
        v.push(sig.mono.clone());
        true
    }

    pub fn len(&self) -> usize {
        self.by_index.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = Signature> + '_ {
        self.by_index
            .iter()
            .enumerate()
            .flat_map(|(i, v)| v.iter().map(move |m| Signature::new(i, m.clone())))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct UnliftedKey {
    degree: u32,
    sig: Signature,
    serial: u64,
    mono: Monomial,
}

impl UnliftedKey {
    fn of(lm: &LabeledMonomial) -> Self {
        UnliftedKey {
            degree: lm.degree(),
            sig: lm.signature(),
            serial: lm.serial,
            mono: lm.mono.clone(),
        }
    }
}

/// A candidate for reduction, described by what the criteria need.
#[derive(Clone, Copy, Debug)]
pub struct Candidate<'a> {
    /// The labeled monomial, as an ordinary product (may carry a square in
    /// boolean mode when it collides with a field equation).
    pub key: &'a Monomial,
    pub sig: &'a Signature,
    /// `lm(f)` of the candidate's generator.
    pub lead: &'a Monomial,
    /// `lm(g)` of the resident it collides with.
    pub resident_lead: &'a Monomial,
}

/// The set of labeled monomials: a hash map keyed by monomial, recorded
/// syzygy signatures, and the bookkeeping both engines need.
#[derive(Clone, Debug)]
pub struct BasisState {
    ring: Ring,
    entries: FxHashMap<Monomial, LabeledMonomial>,
    syzygies: SyzygySet,
    /// Generators referenced by current entries, per signature index, with
    /// reference counts.
    gens_by_index: Vec<FxHashMap<usize, (Arc<Generator>, usize)>>,
    unlifted: BTreeSet<UnliftedKey>,
    primitive_degrees: BTreeMap<u32, usize>,
    next_serial: u64,
    next_gen: usize,
    pub stats: Stats,
}

impl BasisState {
    pub fn new(ring: Ring, ngens: usize) -> Self {
        BasisState {
            ring,
            entries: FxHashMap::default(),
            syzygies: SyzygySet::new(ngens),
            gens_by_index: vec![FxHashMap::default(); ngens],
            unlifted: BTreeSet::new(),
            primitive_degrees: BTreeMap::new(),
            next_serial: 0,
            next_gen: ngens + 1,
            stats: Stats::default(),
        }
    }

    /// State holding the primitive entries `(lm(f_i), (e_i, f_i))`. Inputs
    /// must be nonzero with pairwise distinct leading monomials; they are made
    /// monic here. With `seed_syzygies`, the principal syzygy signatures
    /// `lm(f_j) e_i` for `i < j` are recorded as well.
    pub fn from_inputs(ring: Ring, inputs: &[Polynomial], seed_syzygies: bool) -> Self {
        let mut state = BasisState::new(ring.clone(), inputs.len());
        for (i, f) in inputs.iter().enumerate() {
            let poly = f.make_monic(&ring).expect("inputs are nonzero");
            let gen = Arc::new(Generator {
                id: i + 1,
                sig: Signature::unit(ring.nvars(), i),
                poly,
            });
            let lm = LabeledMonomial::primitive(gen);
            debug_assert!(!state.entries.contains_key(&lm.mono), "input leads must be distinct");
            state.insert(lm);
        }
        if seed_syzygies {
            for j in 0..inputs.len() {
                for i in 0..j {
                    let lead = inputs[j].lm().expect("nonzero").clone();
                    state.syzygies.insert(&Signature::new(i, lead));
                }
            }
        }
        state
    }

    #[inline]
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    #[inline]
    pub fn get(&self, m: &Monomial) -> Option<&LabeledMonomial> {
        self.entries.get(m)
    }

    pub fn entries(&self) -> impl Iterator<Item = &LabeledMonomial> {
        self.entries.values()
    }

    /// Entries sorted by descending monomial.
    pub fn sorted_entries(&self) -> Vec<&LabeledMonomial> {
        let mut v: Vec<_> = self.entries.values().collect();
        v.sort_by(|a, b| b.mono.cmp(&a.mono));
        v
    }

    pub fn syzygies(&self) -> &SyzygySet {
        &self.syzygies
    }

    /// Allocate a generator with the next id.
    pub fn new_generator(&mut self, sig: Signature, poly: Polynomial) -> Arc<Generator> {
        let poly = poly.make_monic(&self.ring).expect("generator polynomial is nonzero");
        let id = self.next_gen;
        self.next_gen += 1;
        self.stats.generators += 1;
        Arc::new(Generator { id, sig, poly })
    }

    /// Insert at a free key. Returns the assigned serial.
    pub fn insert(&mut self, mut lm: LabeledMonomial) -> u64 {
        debug_assert!(lm.gen.lead().divides(&lm.mono));
        lm.serial = self.next_serial;
        self.next_serial += 1;
        let serial = lm.serial;
        self.stats.inserted += 1;
        self.track(&lm, true);
        let prev = self.entries.insert(lm.mono.clone(), lm);
        assert!(prev.is_none(), "insert at an occupied key");
        serial
    }

    pub fn remove(&mut self, m: &Monomial) -> Option<LabeledMonomial> {
        let lm = self.entries.remove(m)?;
        self.track(&lm, false);
        Some(lm)
    }

    /// Swap `lm` in for the resident at the same key.
    pub fn replace(&mut self, lm: LabeledMonomial) -> LabeledMonomial {
        let old = self.remove(&lm.mono).expect("replace at an empty key");
        self.stats.replacements += 1;
        self.insert(lm);
        old
    }

    /// Collision-resolving insertion; equal signatures keep the incumbent.
    pub fn insert_or_replace(&mut self, lm: LabeledMonomial) -> InsertOutcome {
        match self.entries.get(&lm.mono) {
            None => {
                self.insert(lm);
                InsertOutcome::Inserted
            }
            Some(res) => {
                self.stats.collisions += 1;
                match resolve_collision(&lm, res) {
                    Collision::KeepA => InsertOutcome::Replaced(self.replace(lm)),
                    Collision::Equal => {
                        self.stats.equal_signatures += 1;
                        InsertOutcome::RejectedEqual
                    }
                    Collision::KeepB => InsertOutcome::RejectedLarger,
                }
            }
        }
    }

    fn track(&mut self, lm: &LabeledMonomial, add: bool) {
        let idx = lm.gen.sig.index;
        if idx >= self.gens_by_index.len() {
            self.gens_by_index.resize_with(idx + 1, FxHashMap::default);
        }
        let gens = &mut self.gens_by_index[idx];
        if add {
            gens.entry(lm.gen.id)
                .or_insert_with(|| (Arc::clone(&lm.gen), 0))
                .1 += 1;
        } else if let Some(slot) = gens.get_mut(&lm.gen.id) {
            slot.1 -= 1;
            if slot.1 == 0 {
                gens.remove(&lm.gen.id);
            }
        }
        if !lm.lifted {
            let key = UnliftedKey::of(lm);
            if add {
                self.unlifted.insert(key);
            } else {
                self.unlifted.remove(&key);
            }
        }
        if lm.is_primitive() {
            let d = lm.degree();
            if add {
                *self.primitive_degrees.entry(d).or_insert(0) += 1;
            } else if let Some(c) = self.primitive_degrees.get_mut(&d) {
                *c -= 1;
                if *c == 0 {
                    self.primitive_degrees.remove(&d);
                }
            }
        }
    }

    pub fn mark_lifted(&mut self, m: &Monomial) {
        if let Some(lm) = self.entries.get_mut(m) {
            if !lm.lifted {
                self.unlifted.remove(&UnliftedKey::of(lm));
                lm.lifted = true;
            }
        }
    }

    pub fn record_syzygy(&mut self, sig: &Signature) -> bool {
        self.stats.syzygies_found += 1;
        self.syzygies.insert(sig)
    }

    /// LCM criterion: the collision is not at `lcm(lm(f), lm(g))`.
    pub fn lcm_check(key: &Monomial, lead: &Monomial, resident_lead: &Monomial) -> bool {
        *key != lead.lcm(resident_lead)
    }

    /// Syzygy criterion: a recorded syzygy signature divides `sig`. In
    /// boolean mode a square in the signature monomial is divisible by the
    /// principal syzygy of a field equation.
    pub fn syzygy_check(&self, sig: &Signature) -> bool {
        (self.ring.is_boolean() && !sig.mono.is_squarefree()) || self.syzygies.covers(sig)
    }

    /// Principal syzygy criterion: `sig = x^a e_i` and the entry keyed by
    /// `x^a` has a signature index `j > i`. In boolean mode a square in `x^a`
    /// is keyed by a field equation, whose index exceeds every input's.
    pub fn principal_check(&self, sig: &Signature) -> bool {
        if self.ring.is_boolean() && !sig.mono.is_squarefree() {
            return true;
        }
        self.entries
            .get(&sig.mono)
            .is_some_and(|e| e.gen.sig.index > sig.index)
    }

    /// An entry `(key, g)` with `t * sig(g) = sig` and `t * lm(g) = key`, if
    /// some referenced generator `g` admits one: the labeled monomial that
    /// lifting `g` by `t` would produce, with exactly this key and signature.
    pub fn same_signature_multiple(&self, key: &Monomial, sig: &Signature) -> Option<LabeledMonomial> {
        let gens = self.gens_by_index.get(sig.index)?;
        gens.values()
            .map(|(g, _)| g)
            .filter(|g| {
                g.sig.mono.divides(&sig.mono) && g.lead().divides(key) && sig.mono.div(&g.sig.mono) == key.div(g.lead())
            })
            .min_by_key(|g| g.id)
            .map(|g| LabeledMonomial {
                mono: key.clone(),
                gen: g.clone(),
                lifted: false,
                serial: 0,
            })
    }

    /// Rewritten criterion: some generator `(v, g)` referenced by the current
    /// entries has `lm(v) | sig` and `(sig / lm(v)) * lm(g) < key`.
    pub fn rewritten_check(&self, key: &Monomial, sig: &Signature) -> bool {
        let Some(gens) = self.gens_by_index.get(sig.index) else {
            return false;
        };
        gens.values().any(|(g, _)| {
            g.sig.mono.divides(&sig.mono) && {
                let t = sig.mono.div(&g.sig.mono);
                t.mul(g.lead(), false) < *key
            }
        })
    }

    /// First criterion (in the order lcm, syzygy, principal, rewritten) that
    /// rejects the candidate. Counts the rejection.
    pub fn gate(&mut self, c: Candidate<'_>, criteria: Criteria) -> Option<Criterion> {
        let hit = self.first_rejection(c, criteria);
        if let Some(k) = hit {
            self.stats.bump_rejection(k);
        }
        hit
    }

    /// Like [`BasisState::gate`] without touching the counters.
    pub fn first_rejection(&self, c: Candidate<'_>, criteria: Criteria) -> Option<Criterion> {
        if criteria.lcm && Self::lcm_check(c.key, c.lead, c.resident_lead) {
            return Some(Criterion::Lcm);
        }
        if criteria.syzygy && self.syzygy_check(c.sig) {
            return Some(Criterion::Syzygy);
        }
        if criteria.principal && self.principal_check(c.sig) {
            return Some(Criterion::Principal);
        }
        if criteria.rewritten && self.rewritten_check(c.key, c.sig) {
            return Some(Criterion::Rewritten);
        }
        None
    }

    /// Largest degree of a primitive entry (0 when there is none).
    pub fn max_primitive_degree(&self) -> u32 {
        self.primitive_degrees.keys().next_back().copied().unwrap_or(0)
    }

    /// Smallest degree of an unlifted entry.
    pub fn mindeg(&self) -> Option<u32> {
        self.unlifted.first().map(|k| k.degree)
    }

    /// Largest `deg(lcm(lm(f), lm(g)))` over pairs of primitive entries.
    pub fn maxcpdeg(&self) -> u32 {
        let leads: Vec<&Monomial> = self
            .entries
            .values()
            .filter(|e| e.is_primitive())
            .map(|e| &e.mono)
            .collect();
        let mut best = 0;
        for (i, a) in leads.iter().enumerate() {
            for b in &leads[i..] {
                best = best.max(a.lcm(b).degree());
            }
        }
        best
    }

    /// Unlifted entries in `(degree, signature, serial)` order.
    pub fn unlifted(&self) -> impl Iterator<Item = &LabeledMonomial> {
        self.unlifted.iter().map(|k| &self.entries[&k.mono])
    }

    pub fn unlifted_count(&self) -> usize {
        self.unlifted.len()
    }

    pub fn primitives(&self) -> Vec<&LabeledMonomial> {
        let mut v: Vec<_> = self.entries.values().filter(|e| e.is_primitive()).collect();
        v.sort_by(|a, b| b.mono.cmp(&a.mono));
        v
    }

    /// Monic polynomials of the primitive entries, by descending lead.
    pub fn basis(&self) -> Vec<Polynomial> {
        self.primitives().into_iter().map(|e| e.gen.poly.clone()).collect()
    }

    /// Consistency of the bookkeeping; returns a description of each problem.
    pub fn check_invariants(&self) -> Vec<String> {
        let mut problems = Vec::new();
        let mut refs: FxHashMap<usize, usize> = FxHashMap::default();
        let mut prim: BTreeMap<u32, usize> = BTreeMap::new();
        let mut unlifted = 0;
        for (k, e) in &self.entries {
            if *k != e.mono {
                problems.push(format!("entry keyed at {k:?} holds {:?}", e.mono));
            }
            if !e.gen.lead().divides(&e.mono) {
                problems.push(format!("lm(f) does not divide {:?}", e.mono));
            }
            if self.ring.is_boolean() && !e.mono.is_squarefree() {
                problems.push(format!("non-squarefree entry {:?} in boolean mode", e.mono));
            }
            *refs.entry(e.gen.id).or_insert(0) += 1;
            if e.is_primitive() {
                *prim.entry(e.degree()).or_insert(0) += 1;
            }
            if !e.lifted {
                unlifted += 1;
                if !self.unlifted.contains(&UnliftedKey::of(e)) {
                    problems.push(format!("unlifted entry {:?} missing from index", e.mono));
                }
            }
        }
        if unlifted != self.unlifted.len() {
            problems.push(format!("unlifted index has {} keys for {unlifted} entries", self.unlifted.len()));
        }
        if prim != self.primitive_degrees {
            problems.push("primitive degree counts out of sync".into());
        }
        let tracked: usize = self.gens_by_index.iter().map(|g| g.values().map(|(_, c)| c).sum::<usize>()).sum();
        if tracked != self.entries.len() || self.gens_by_index.iter().flat_map(|g| g.iter()).any(|(id, (_, c))| refs.get(id) != Some(c)) {
            problems.push("generator reference counts out of sync".into());
        }
        problems
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Polynomial;
    use proptest::prelude::*;

    fn ring() -> Ring {
        Ring::new(5, vec!["a".into(), "b".into(), "c".into()], false).unwrap()
    }

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e)
    }

    fn p(r: &Ring, pairs: &[(i64, &[u16])]) -> Polynomial {
        Polynomial::from_pairs(r, pairs)
    }

    fn toy_inputs(r: &Ring) -> Vec<Polynomial> {
        vec![
            p(r, &[(1, &[1, 1, 1]), (-1, &[0, 0, 0])]),
            p(r, &[(1, &[1, 1, 0]), (-1, &[0, 0, 1])]),
            p(r, &[(1, &[0, 1, 1]), (-1, &[0, 1, 0])]),
        ]
    }

    fn gen(id: usize, sig: Signature, poly: Polynomial) -> Arc<Generator> {
        Arc::new(Generator { id, sig, poly })
    }

    #[test]
    fn signatures_of_toy_entries() {
        let r = ring();
        let f = toy_inputs(&r);
        let r1 = gen(1, Signature::unit(3, 0), f[0].clone());
        let r3 = gen(3, Signature::unit(3, 2), f[2].clone());
        let a = LabeledMonomial::primitive(r1);
        assert_eq!(a.signature(), Signature::unit(3, 0));
        let b = LabeledMonomial {
            mono: m(&[1, 1, 1]),
            gen: r3.clone(),
            lifted: false,
            serial: 0,
        };
        assert_eq!(b.signature(), Signature::new(2, m(&[1, 0, 0])));
        assert_eq!(r.fmt_sig(&b.signature()), "a*e3");
        assert_eq!(resolve_collision(&a, &b), Collision::KeepB);
        assert_eq!(resolve_collision(&a, &a), Collision::Equal);
        // lift (bc, r3) by c
        let bc = LabeledMonomial::primitive(r3);
        let lifted = bc.lift_by_var(2);
        assert_eq!(lifted.mono, m(&[0, 1, 2]));
        assert_eq!(lifted.signature(), bc.signature().mul(&m(&[0, 0, 1])));
        assert_eq!(lifted.mono.div(&m(&[0, 0, 1])), bc.mono);
    }

    #[test]
    fn two_generator_collision_keeps_lower_index() {
        // (xy, (e1, f1)) vs (xy, (e2, f2)): keep the e2 entry.
        let r = Ring::new(5, vec!["x".into(), "y".into()], false).unwrap();
        let f1 = p(&r, &[(1, &[1, 1]), (1, &[1, 0])]);
        let f2 = p(&r, &[(1, &[1, 1]), (1, &[0, 1])]);
        let a = LabeledMonomial::primitive(gen(1, Signature::unit(2, 0), f1));
        let b = LabeledMonomial::primitive(gen(2, Signature::unit(2, 1), f2));
        assert_eq!(resolve_collision(&a, &b), Collision::KeepB);
    }

    #[test]
    fn toy_initial_state() {
        let r = ring();
        let s = BasisState::from_inputs(r.clone(), &toy_inputs(&r), true);
        assert_eq!(s.len(), 3);
        assert_eq!(s.max_primitive_degree(), 3);
        assert_eq!(s.mindeg(), Some(2));
        let seeds: Vec<String> = s.syzygies().iter().map(|g| r.fmt_sig(&g)).collect();
        assert_eq!(seeds, ["a*b*e1", "b*c*e1", "b*c*e2"]);
        assert!(s.check_invariants().is_empty());
        // The smallest unlifted entry is (bc, r3).
        assert_eq!(s.unlifted().next().unwrap().mono, m(&[0, 1, 1]));
    }

    #[test]
    fn insert_or_replace_outcomes() {
        let r = ring();
        let mut s = BasisState::from_inputs(r.clone(), &toy_inputs(&r), true);
        let r3 = s.get(&m(&[0, 1, 1])).unwrap().gen.clone();
        let abc_r3 = LabeledMonomial {
            mono: m(&[1, 1, 1]),
            gen: r3,
            lifted: false,
            serial: 0,
        };
        match s.insert_or_replace(abc_r3.clone()) {
            InsertOutcome::Replaced(old) => assert_eq!(old.gen.id, 1),
            other => panic!("{other:?}"),
        }
        assert!(matches!(s.insert_or_replace(abc_r3), InsertOutcome::RejectedEqual));
        let g4 = s.new_generator(Signature::unit(3, 0), p(&r, &[(1, &[0, 0, 1]), (-1, &[0, 0, 0])]));
        assert_eq!(g4.id, 4);
        assert!(matches!(s.insert_or_replace(LabeledMonomial::primitive(g4)), InsertOutcome::Inserted));
        assert_eq!(s.max_primitive_degree(), 2);
        assert_eq!(s.mindeg(), Some(1));
        assert!(s.check_invariants().is_empty());
    }

    #[test]
    fn syzygy_and_principal_checks() {
        let r = ring();
        let s = BasisState::from_inputs(r.clone(), &toy_inputs(&r), true);
        // bc*e2 is a seed
        assert!(s.syzygy_check(&Signature::new(1, m(&[0, 1, 1]))));
        assert!(s.syzygy_check(&Signature::new(1, m(&[0, 2, 1]))));
        assert!(!s.syzygy_check(&Signature::new(2, m(&[0, 1, 1]))));
        assert!(!BasisState::new(r.clone(), 3).syzygy_check(&Signature::new(0, m(&[1, 1, 1]))));
        // bc is keyed by (bc, r3), index 3 > 2
        assert!(s.principal_check(&Signature::new(1, m(&[0, 1, 1]))));
        assert!(!s.principal_check(&Signature::new(2, m(&[0, 1, 1]))));
        assert!(!s.principal_check(&Signature::new(0, m(&[0, 0, 1]))));
    }

    #[test]
    fn principal_check_on_two_generators() {
        // f1 = b + 1, f2 = a + b: the entry keyed at b carries index 1, so a
        // signature b*e2 is rejected. Recording lm(f1) e2 = b*e2 makes the
        // general check agree.
        let r = Ring::new(5, vec!["a".into(), "b".into()], false).unwrap();
        let f1 = p(&r, &[(1, &[0, 1]), (1, &[0, 0])]);
        let f2 = p(&r, &[(1, &[1, 0]), (1, &[0, 1])]);
        let mut s = BasisState::from_inputs(r.clone(), &[f1, f2], false);
        let sig = Signature::new(1, m(&[0, 1]));
        assert!(!s.syzygy_check(&sig));
        // b is keyed by (b, e1): the index of that entry is 0 < 1
        assert!(!s.principal_check(&sig));
        // swap roles: signature b*e1 against an entry keyed at b of index 1
        let g = s.new_generator(Signature::unit(2, 1), p(&r, &[(1, &[0, 1]), (2, &[0, 0])]));
        s.replace(LabeledMonomial::primitive(g));
        let sig1 = Signature::new(0, m(&[0, 1]));
        assert!(s.principal_check(&sig1));
        s.record_syzygy(&Signature::new(0, m(&[0, 1])));
        assert!(s.syzygy_check(&sig1));
    }

    #[test]
    fn same_signature_multiple_matches_key_and_signature() {
        let r = ring();
        let s = BasisState::from_inputs(r.clone(), &toy_inputs(&r), true);
        // a * (bc, e3) = (abc, a e3)
        let hit = s.same_signature_multiple(&m(&[1, 1, 1]), &Signature::new(2, m(&[1, 0, 0]))).unwrap();
        assert_eq!(hit.gen.id, 3);
        assert_eq!(hit.signature(), Signature::new(2, m(&[1, 0, 0])));
        assert!(s.same_signature_multiple(&m(&[1, 1, 1]), &Signature::new(2, m(&[0, 1, 0]))).is_none());
        assert!(s.same_signature_multiple(&m(&[0, 2, 1]), &Signature::new(2, m(&[0, 1, 0]))).is_some());
        // c * (ab, e2) = (abc, c e2), but c * (abc, e1) is keyed at abc^2
        assert_eq!(s.same_signature_multiple(&m(&[1, 1, 1]), &Signature::new(1, m(&[0, 0, 1]))).unwrap().gen.id, 2);
        assert!(s.same_signature_multiple(&m(&[1, 1, 1]), &Signature::new(0, m(&[0, 0, 1]))).is_none());
    }

    #[test]
    fn lcm_examples() {
        let (abc, c, bc, c2, ac2) = (m(&[1, 1, 1]), m(&[0, 0, 1]), m(&[0, 1, 1]), m(&[0, 0, 2]), m(&[1, 0, 2]));
        assert!(BasisState::lcm_check(&abc, &c, &bc));
        assert!(BasisState::lcm_check(&ac2, &c, &c2));
        assert!(!BasisState::lcm_check(&bc, &c, &bc));
    }

    #[test]
    fn rewritten_strictness() {
        let r = ring();
        let s = BasisState::from_inputs(r.clone(), &toy_inputs(&r), true);
        // (abc, r1) covering itself: t' * lm(f1) = abc, not smaller.
        assert!(!s.rewritten_check(&m(&[1, 1, 1]), &Signature::unit(3, 0)));
        assert!(!BasisState::new(r, 3).rewritten_check(&m(&[1, 1, 1]), &Signature::unit(3, 0)));
    }

    /// Definition-level rewritten check over every entry.
    fn rewritten_brute(s: &BasisState, key: &Monomial, sig: &Signature) -> bool {
        s.entries().any(|e| {
            let v = &e.gen.sig;
            v.index == sig.index
                && v.mono.divides(&sig.mono)
                && sig.mono.div(&v.mono).mul(e.gen.lead(), false) < *key
        })
    }

    #[test]
    fn rewritten_rejects_a_cheaper_multiple() {
        // Two labeled polynomials with the same signature index: g1 = x + y
        // at e1 and g2 = y + 1 at x*e1. Lifting g1 by x gives signature x*e1
        // at x^2, but g2 already has signature x*e1 with the smaller lead y.
        let r = Ring::new(5, vec!["x".into(), "y".into()], false).unwrap();
        let mut s = BasisState::new(r.clone(), 1);
        let g1 = s.new_generator(Signature::unit(2, 0), p(&r, &[(1, &[1, 0]), (1, &[0, 1])]));
        let g2 = s.new_generator(Signature::new(0, m(&[1, 0])), p(&r, &[(1, &[0, 1]), (1, &[0, 0])]));
        s.insert(LabeledMonomial::primitive(g1));
        s.insert(LabeledMonomial::primitive(g2));
        let key = m(&[2, 0]);
        let sig = Signature::new(0, m(&[1, 0]));
        assert!(s.rewritten_check(&key, &sig));
        assert!(rewritten_brute(&s, &key, &sig));
        let key = m(&[0, 2]);
        let sig = Signature::new(0, m(&[0, 1]));
        assert_eq!(s.rewritten_check(&key, &sig), rewritten_brute(&s, &key, &sig));
    }

    proptest! {
        #[test]
        fn replacements_strictly_decrease_signatures(
            ops in proptest::collection::vec((0usize..3, proptest::collection::vec(0u16..2, 3), 0usize..4), 1..40)
        ) {
            let r = ring();
            let mut s = BasisState::new(r.clone(), 3);
            let base = [m(&[0, 0, 1]), m(&[0, 1, 0]), m(&[1, 0, 0])];
            let mut gens = Vec::new();
            for (i, b) in base.iter().enumerate() {
                let poly = Polynomial::monomial(&r, 1, b.clone()).add(&r, &Polynomial::monomial(&r, 1, r.one()));
                gens.push(s.new_generator(Signature::new(i, b.clone()), poly));
            }
            for (g, t, _) in ops {
                let gen = gens[g].clone();
                let lm = LabeledMonomial { mono: gen.lead().mul(&m(&t), false), gen, lifted: false, serial: 0 };
                let before = s.get(&lm.mono).map(LabeledMonomial::signature);
                let sig = lm.signature();
                if let InsertOutcome::Replaced(old) = s.insert_or_replace(lm) {
                    prop_assert!(sig < old.signature());
                    prop_assert_eq!(Some(old.signature()), before);
                }
                prop_assert!(s.check_invariants().is_empty());
                let distinct: std::collections::HashSet<_> = s.entries().map(|e| e.mono.clone()).collect();
                prop_assert_eq!(distinct.len(), s.len());
            }
        }

        #[test]
        fn lift_multiplies_signature(e in proptest::collection::vec(0u16..3, 3), i in 0usize..3) {
            let r = ring();
            let f = toy_inputs(&r);
            let g = gen(2, Signature::new(1, m(&e)), f[1].clone());
            let lm = LabeledMonomial::primitive(g).lift_by_var(i);
            let twice = lm.lift_by_var(i);
            prop_assert_eq!(twice.signature(), lm.signature().mul(&r.var(i)));
        }

        #[test]
        fn principal_implies_general(
            leads in proptest::collection::vec(proptest::collection::vec(0u16..3, 3), 2..4),
            sig_mono in proptest::collection::vec(0u16..3, 3),
            idx in 0usize..3,
        ) {
            let r = ring();
            let mut inputs: Vec<Polynomial> = Vec::new();
            for l in &leads {
                let mono = m(l);
                if inputs.iter().all(|f| f.lm() != Some(&mono)) {
                    inputs.push(Polynomial::monomial(&r, 1, mono).add(&r, &Polynomial::monomial(&r, 2, r.one())));
                }
            }
            let mut s = BasisState::from_inputs(r.clone(), &inputs, false);
            let idx = idx % inputs.len();
            let sig = Signature::new(idx, m(&sig_mono));
            if s.principal_check(&sig) {
                let g = s.get(&sig.mono).unwrap().gen.lead().clone();
                s.record_syzygy(&Signature::new(idx, g));
                prop_assert!(s.syzygy_check(&sig));
            }
        }
    }
}
