//! The stepwise engine: pick one unlifted labeled monomial, lift it by every
//! variable, and mutually reduce each lift against the basis.

use std::fmt::Write as _;

use serde::Serialize;

use crate::algebra::{Monomial, Polynomial, Ring, Signature};
use crate::labeled::{BasisState, Candidate, Criteria, Criterion, LabeledMonomial, Stats};
use crate::{Deadline, EngineError};

/// Which unlifted entry a loop picks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum Selection {
    /// Minimal `(degree, signature, serial)`.
    #[default]
    DegreeSignature,
    /// Loop `k` lifts the entry keyed by the `k`-th monomial when it is
    /// eligible; otherwise, and after the list runs out, the default rule.
    Prescribed(Vec<Monomial>),
}

#[derive(Clone, Debug)]
pub struct StepConfig {
    pub criteria: Criteria,
    pub selection: Selection,
    /// Keep syzygy signatures found by reduction for the syzygy criterion.
    pub record_syzygies: bool,
    pub trace: bool,
    /// Verify state and reduction invariants as the run proceeds; problems
    /// are collected in [`StepOutput::violations`].
    pub check_invariants: bool,
    pub deadline: Deadline,
}

impl Default for StepConfig {
    fn default() -> Self {
        StepConfig {
            criteria: Criteria::all(),
            selection: Selection::DegreeSignature,
            record_syzygies: true,
            trace: false,
            check_invariants: false,
            deadline: Deadline::none(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum TraceEvent {
    Inserted {
        mono: String,
        gen: usize,
        sig: String,
    },
    Replaced {
        mono: String,
        gen: usize,
        sig: String,
        evicted_gen: usize,
        evicted_sig: String,
    },
    EqualSignature {
        mono: String,
        gen: usize,
    },
    Rejected {
        mono: String,
        gen: usize,
        sig: String,
        criterion: Criterion,
    },
    Reduced {
        mono: String,
        gen: usize,
        sig: String,
        to: String,
    },
    Syzygy {
        sig: String,
    },
}

impl TraceEvent {
    pub fn render(&self) -> String {
        match self {
            TraceEvent::Inserted { mono, gen, sig } => format!("insert ({mono}, r{gen}) sig {sig}"),
            TraceEvent::Replaced {
                mono,
                gen,
                sig,
                evicted_gen,
                evicted_sig,
            } => format!("replace ({mono}, r{evicted_gen}) sig {evicted_sig} by ({mono}, r{gen}) sig {sig}"),
            TraceEvent::EqualSignature { mono, gen } => format!("equal signature ({mono}, r{gen}) dropped"),
            TraceEvent::Rejected {
                mono,
                gen,
                sig,
                criterion,
            } => format!("reject ({mono}, r{gen}) sig {sig} by {criterion}"),
            TraceEvent::Reduced { mono, gen, sig, to } => format!("reduce ({mono}, r{gen}) sig {sig} to {to}"),
            TraceEvent::Syzygy { sig } => format!("syzygy {sig}"),
        }
    }
}

/// Everything that happened in one loop of the engine.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TraceRecord {
    pub loop_no: u64,
    pub source: String,
    pub liftdeg: u32,
    pub events: Vec<TraceEvent>,
    pub entries_after: usize,
    pub syzygies_after: usize,
}

impl TraceRecord {
    pub fn render(&self) -> String {
        let mut s = format!("LOOP {}: lift {} (liftdeg {})\n", self.loop_no, self.source, self.liftdeg);
        for e in &self.events {
            let _ = writeln!(s, "  {}", e.render());
        }
        let _ = writeln!(s, "  -> {} entries, {} syzygies", self.entries_after, self.syzygies_after);
        s
    }
}

pub fn render_trace(records: &[TraceRecord]) -> String {
    records.iter().map(TraceRecord::render).collect()
}

#[derive(Clone, Debug)]
pub struct StepOutput {
    /// Monic primitive polynomials, by descending lead.
    pub basis: Vec<Polynomial>,
    /// The inputs after interreduction; generator `i` is `inputs[i - 1]`.
    pub inputs: Vec<Polynomial>,
    pub state: Option<BasisState>,
    pub stats: Stats,
    pub trace: Vec<TraceRecord>,
    pub violations: Vec<String>,
}

/// Outcome of reducing a labeled monomial as far as possible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduced {
    Primitive { sig: Signature, poly: Polynomial },
    Syzygy(Signature),
}

impl Reduced {
    pub fn signature(&self) -> &Signature {
        match self {
            Reduced::Primitive { sig, .. } | Reduced::Syzygy(sig) => sig,
        }
    }

    /// Leading monomial; `None` for a syzygy.
    pub fn mono(&self) -> Option<&Monomial> {
        match self {
            Reduced::Primitive { poly, .. } => poly.lm(),
            Reduced::Syzygy(_) => None,
        }
    }
}

/// `lc(g) p - lc(p) t_g g`, where `reducer = (m, (v, g))` and `lm(p) = m`.
fn reduce_once(ring: &Ring, p: &Polynomial, reducer: &LabeledMonomial) -> Polynomial {
    let g = &reducer.gen.poly;
    Polynomial::combine(ring, g.lc(), &ring.one(), p, p.lc(), &reducer.cofactor(), g)
}

/// One-step reduction of `target` by a resident of the same monomial with a
/// strictly smaller signature. The result keeps the target's signature.
pub fn one_step_reduce(
    ring: &Ring,
    target: &LabeledMonomial,
    reducer: &LabeledMonomial,
) -> Result<Reduced, EngineError> {
    if target.mono != reducer.mono {
        return Err(EngineError::Logic("one-step reduction needs equal monomials"));
    }
    let sig = target.signature();
    if reducer.signature() >= sig {
        return Err(EngineError::Logic("reducer signature must be smaller"));
    }
    let p = reduce_once(ring, &target.multiple(ring), reducer);
    Ok(if p.is_zero() {
        Reduced::Syzygy(sig)
    } else {
        Reduced::Primitive {
            sig,
            poly: p.monic_or_zero(ring),
        }
    })
}

/// Reduce `(sig, poly)` while its leading monomial is keyed by an entry of
/// strictly smaller signature.
fn reduce_poly(state: &mut BasisState, sig: Signature, mut poly: Polynomial) -> Reduced {
    state.stats.mutual_reductions += 1;
    let ring = state.ring().clone();
    loop {
        let Some(lead) = poly.lm() else {
            return Reduced::Syzygy(sig);
        };
        match state.get(lead) {
            Some(res) if res.signature() < sig => {
                poly = reduce_once(&ring, &poly, res);
                state.stats.reduction_steps += 1;
            }
            _ => break,
        }
    }
    Reduced::Primitive {
        sig,
        poly: poly.monic_or_zero(&ring),
    }
}

/// Full reduction of `target` by the basis; returns the target itself
/// (as a primitive-or-multiple polynomial) when it is not reducible.
pub fn reduce_full(state: &mut BasisState, target: &LabeledMonomial) -> Reduced {
    let poly = target.multiple(state.ring());
    reduce_poly(state, target.signature(), poly)
}

enum Work {
    Entry(LabeledMonomial),
    /// `x_var * src` where `x_var` already divides `src.mono` (boolean mode):
    /// a collision with the field equation `x_var^2 - x_var`.
    Field { src: LabeledMonomial, var: usize },
}

struct Run<'a> {
    state: BasisState,
    cfg: &'a StepConfig,
    events: Vec<TraceEvent>,
    violations: Vec<String>,
}

impl Run<'_> {
    fn fmt_entry(&self, mono: &Monomial) -> String {
        self.state.ring().fmt_mono(mono)
    }

    fn fmt_sig(&self, s: &Signature) -> String {
        self.state.ring().fmt_sig(s)
    }

    fn note(&mut self, f: impl FnOnce(&Self) -> TraceEvent) {
        if self.cfg.trace {
            let e = f(self);
            self.events.push(e);
        }
    }

    fn after_mutation(&mut self) {
        if self.cfg.check_invariants {
            let problems = self.state.check_invariants();
            self.violations.extend(problems);
        }
    }

    /// Mutual reduction with an explicit stack instead of recursion.
    fn mutual_reduce(&mut self, first: Work) {
        let mut stack = vec![first];
        while let Some(work) = stack.pop() {
            match work {
                Work::Entry(lm) => self.process_entry(lm, &mut stack),
                Work::Field { src, var } => self.process_field(src, var, &mut stack),
            }
        }
    }

    fn process_entry(&mut self, lm: LabeledMonomial, stack: &mut Vec<Work>) {
        let sig = lm.signature();
        let Some(res) = self.state.get(&lm.mono).cloned() else {
            self.note(|r| TraceEvent::Inserted {
                mono: r.fmt_entry(&lm.mono),
                gen: lm.gen.id,
                sig: r.fmt_sig(&sig),
            });
            self.state.insert(lm);
            self.after_mutation();
            return;
        };
        self.state.stats.collisions += 1;
        let rsig = res.signature();
        match sig.cmp(&rsig) {
            std::cmp::Ordering::Equal => {
                self.state.stats.equal_signatures += 1;
                self.note(|r| TraceEvent::EqualSignature {
                    mono: r.fmt_entry(&lm.mono),
                    gen: lm.gen.id,
                });
            }
            std::cmp::Ordering::Less => {
                self.note(|r| TraceEvent::Replaced {
                    mono: r.fmt_entry(&lm.mono),
                    gen: lm.gen.id,
                    sig: r.fmt_sig(&sig),
                    evicted_gen: res.gen.id,
                    evicted_sig: r.fmt_sig(&rsig),
                });
                let evicted = self.state.replace(lm);
                self.after_mutation();
                stack.push(Work::Entry(evicted));
            }
            std::cmp::Ordering::Greater => {
                let cand = Candidate {
                    key: &lm.mono,
                    sig: &sig,
                    lead: lm.gen.lead(),
                    resident_lead: res.gen.lead(),
                };
                if let Some(c) = self.state.gate(cand, self.cfg.criteria) {
                    self.note(|r| TraceEvent::Rejected {
                        mono: r.fmt_entry(&lm.mono),
                        gen: lm.gen.id,
                        sig: r.fmt_sig(&sig),
                        criterion: c,
                    });
                    return;
                }
                let poly = lm.multiple(self.state.ring());
                let red = reduce_poly(&mut self.state, sig.clone(), poly);
                self.check_reduction(&lm.mono, &sig, &red);
                self.note(|r| TraceEvent::Reduced {
                    mono: r.fmt_entry(&lm.mono),
                    gen: lm.gen.id,
                    sig: r.fmt_sig(red.signature()),
                    to: red.mono().map_or_else(|| "0".to_string(), |m| r.fmt_entry(m)),
                });
                self.place(red, stack);
            }
        }
    }

    fn process_field(&mut self, src: LabeledMonomial, var: usize, stack: &mut Vec<Work>) {
        let ring = self.state.ring().clone();
        let xi = ring.var(var);
        let key = src.mono.mul(&xi, false);
        let sig = src.signature().mul(&xi);
        let square = xi.mul(&xi, false);
        self.state.stats.collisions += 1;
        let cand = Candidate {
            key: &key,
            sig: &sig,
            lead: src.gen.lead(),
            resident_lead: &square,
        };
        if let Some(c) = self.state.gate(cand, self.cfg.criteria) {
            self.note(|r| TraceEvent::Rejected {
                mono: r.fmt_entry(&key),
                gen: src.gen.id,
                sig: r.fmt_sig(&sig),
                criterion: c,
            });
            return;
        }
        let poly = src.multiple(&ring).mul_term(&ring, 1, &xi);
        let red = reduce_poly(&mut self.state, sig.clone(), poly);
        self.check_reduction(&key, &sig, &red);
        self.note(|r| TraceEvent::Reduced {
            mono: r.fmt_entry(&key),
            gen: src.gen.id,
            sig: r.fmt_sig(red.signature()),
            to: red.mono().map_or_else(|| "0".to_string(), |m| r.fmt_entry(m)),
        });
        self.place(red, stack);
    }

    fn check_reduction(&mut self, from: &Monomial, sig: &Signature, red: &Reduced) {
        if !self.cfg.check_invariants {
            return;
        }
        if red.signature() != sig {
            self.violations.push(format!("reduction of {from:?} changed its signature"));
        }
        if let Some(m) = red.mono() {
            if m >= from {
                self.violations.push(format!("reduction of {from:?} did not decrease the monomial"));
            }
        }
    }

    /// Entry for a reduced result keyed at `lead`. A generator whose lift
    /// already carries this key and signature is reused instead of
    /// creating a new one.
    fn result_entry(&mut self, lead: &Monomial, sig: Signature, poly: Polynomial) -> LabeledMonomial {
        match self.state.same_signature_multiple(lead, &sig) {
            Some(lm) => {
                self.state.stats.equal_signatures += 1;
                lm
            }
            None => LabeledMonomial::primitive(self.state.new_generator(sig, poly)),
        }
    }

    fn place(&mut self, red: Reduced, stack: &mut Vec<Work>) {
        match red {
            Reduced::Syzygy(sig) => {
                if self.cfg.record_syzygies {
                    self.state.record_syzygy(&sig);
                } else {
                    self.state.stats.syzygies_found += 1;
                }
                self.note(|r| TraceEvent::Syzygy { sig: r.fmt_sig(&sig) });
            }
            Reduced::Primitive { sig, poly } => {
                let lead = poly.lm().expect("primitive result is nonzero").clone();
                match self.state.get(&lead).map(LabeledMonomial::signature) {
                    None => {
                        let lm = self.result_entry(&lead, sig, poly);
                        self.note(|r| TraceEvent::Inserted {
                            mono: r.fmt_entry(&lm.mono),
                            gen: lm.gen.id,
                            sig: r.fmt_sig(&lm.signature()),
                        });
                        self.state.insert(lm);
                        self.after_mutation();
                    }
                    Some(rsig) => {
                        self.state.stats.collisions += 1;
                        if sig < rsig {
                            let lm = self.result_entry(&lead, sig, poly);
                            let evicted = self.state.replace(lm.clone());
                            self.note(|r| TraceEvent::Replaced {
                                mono: r.fmt_entry(&lead),
                                gen: lm.gen.id,
                                sig: r.fmt_sig(&lm.signature()),
                                evicted_gen: evicted.gen.id,
                                evicted_sig: r.fmt_sig(&rsig),
                            });
                            self.after_mutation();
                            stack.push(Work::Entry(evicted));
                        } else {
                            // A fully reduced result never has a larger signature.
                            debug_assert_eq!(sig, rsig);
                            self.state.stats.equal_signatures += 1;
                            self.note(|r| TraceEvent::EqualSignature {
                                mono: r.fmt_entry(&lead),
                                gen: 0,
                            });
                        }
                    }
                }
            }
        }
    }
}

/// Mutually reduce a labeled monomial against `state` with default settings.
pub fn mutual_reduce(state: BasisState, lm: LabeledMonomial, cfg: &StepConfig) -> (BasisState, Vec<TraceEvent>) {
    let mut run = Run {
        state,
        cfg,
        events: Vec::new(),
        violations: Vec::new(),
    };
    run.mutual_reduce(Work::Entry(lm));
    (run.state, run.events)
}

/// Interreduce the inputs until their leading monomials are pairwise
/// distinct. Zero polynomials are dropped; the rest are made monic.
pub fn preprocess_inputs(ring: &Ring, system: &[Polynomial]) -> Vec<Polynomial> {
    let mut out: Vec<Polynomial> = Vec::with_capacity(system.len());
    for f in system {
        let mut f = f.clone();
        while let Some(g) = f.lm().and_then(|m| out.iter().find(|g| g.lm() == Some(m))) {
            f = f.sub(ring, &g.scale(ring, f.lc()));
        }
        if f.is_zero() {
            log::warn!("input polynomial reduced to zero and was dropped");
        } else {
            out.push(f.monic_or_zero(ring));
        }
    }
    out
}

/// The unlifted entry a loop would lift, among those of degree `<= liftdeg`.
pub fn pick_unlifted<'s>(
    state: &'s BasisState,
    liftdeg: u32,
    selection: &Selection,
    loop_no: u64,
) -> Option<&'s LabeledMonomial> {
    if let Selection::Prescribed(list) = selection {
        let wanted = usize::try_from(loop_no).ok().and_then(|k| list.get(k));
        if let Some(e) = wanted.and_then(|m| state.get(m)) {
            if !e.lifted && e.degree() <= liftdeg {
                return Some(e);
            }
        }
    }
    state.unlifted().next().filter(|e| e.degree() <= liftdeg)
}

/// Entries may exceed the current `liftdeg + 1` once `liftdeg` has dropped,
/// so the bound is checked against the largest `liftdeg` seen so far.
pub(crate) fn degree_bound(state: &BasisState, peak: u32, loop_no: u64, out: &mut Vec<String>) {
    if let Some(e) = state.entries().find(|e| e.degree() > peak + 1) {
        out.push(format!(
            "loop {loop_no}: entry of degree {} exceeds liftdeg + 1 = {}",
            e.degree(),
            peak + 1
        ));
    }
}

/// Run the stepwise engine on `system`.
pub fn run_step_engine(ring: &Ring, system: &[Polynomial], cfg: &StepConfig) -> Result<StepOutput, EngineError> {
    if system.is_empty() {
        return Err(EngineError::EmptyInput);
    }
    let inputs = preprocess_inputs(ring, system);
    if inputs.is_empty() {
        log::warn!("every input is zero; the basis is empty");
        return Ok(StepOutput {
            basis: Vec::new(),
            inputs,
            state: None,
            stats: Stats::default(),
            trace: Vec::new(),
            violations: Vec::new(),
        });
    }
    let mut run = Run {
        state: BasisState::from_inputs(ring.clone(), &inputs, true),
        cfg,
        events: Vec::new(),
        violations: Vec::new(),
    };
    let mut trace = Vec::new();
    let mut floor = 0u32;
    let mut peak = run.state.max_primitive_degree();
    let mut loop_no = 0u64;
    loop {
        loop {
            cfg.deadline.check()?;
            let liftdeg = run.state.max_primitive_degree().max(floor);
            let Some(src) = pick_unlifted(&run.state, liftdeg, &cfg.selection, loop_no).cloned() else {
                break;
            };
            loop_no += 1;
            run.state.stats.loops += 1;
            run.state.mark_lifted(&src.mono);
            for i in 0..ring.nvars() {
                run.state.stats.lifts += 1;
                if ring.is_boolean() && src.mono.exponent(i) > 0 {
                    run.mutual_reduce(Work::Field { src: src.clone(), var: i });
                } else {
                    run.mutual_reduce(Work::Entry(src.lift_by_var(i)));
                }
            }
            let liftdeg = run.state.max_primitive_degree().max(floor);
            if liftdeg < peak {
                run.state.stats.liftdeg_drops += 1;
            }
            peak = peak.max(liftdeg);
            if cfg.check_invariants {
                degree_bound(&run.state, peak, loop_no, &mut run.violations);
            }
            if cfg.trace {
                trace.push(TraceRecord {
                    loop_no,
                    source: format!("({}, r{})", ring.fmt_mono(&src.mono), src.gen.id),
                    liftdeg,
                    events: std::mem::take(&mut run.events),
                    entries_after: run.state.len(),
                    syzygies_after: run.state.syzygies().len(),
                });
            }
        }
        let liftdeg = run.state.max_primitive_degree().max(floor);
        let maxcp = run.state.maxcpdeg();
        if maxcp > liftdeg + 1 {
            log::debug!("extending liftdeg from {liftdeg} to {}", maxcp - 1);
            floor = maxcp - 1;
            run.state.stats.extensions += 1;
            continue;
        }
        break;
    }
    let state = run.state;
    Ok(StepOutput {
        basis: state.basis(),
        inputs,
        stats: state.stats.clone(),
        state: Some(state),
        trace,
        violations: run.violations,
    })
}
