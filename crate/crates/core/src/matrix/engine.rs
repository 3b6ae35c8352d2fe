use rustc_hash::FxHashSet;
use serde::Serialize;

use super::dense::MacaulayMatrix;
use crate::algebra::{Monomial, Polynomial, Ring, Signature};
use crate::labeled::{BasisState, Candidate, Criteria, LabeledMonomial, Stats};
use crate::step::{degree_bound, preprocess_inputs};
use crate::{Deadline, EngineError};

#[derive(Clone, Debug)]
pub struct MatrixConfig {
    pub criteria: Criteria,
    pub record_matrix_stats: bool,
    /// Record the signatures of rows that eliminate to zero as syzygies.
    pub zero_row_syzygies: bool,
    /// Use rayon for row operations (only when built with `parallel`).
    pub parallel: bool,
    pub check_invariants: bool,
    pub deadline: Deadline,
}

impl Default for MatrixConfig {
    fn default() -> Self {
        MatrixConfig {
            criteria: Criteria::all(),
            record_matrix_stats: true,
            zero_row_syzygies: false,
            parallel: true,
            check_invariants: false,
            deadline: Deadline::none(),
        }
    }
}

/// Size and outcome of one elimination.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatrixStats {
    #[serde(rename = "loop")]
    pub loop_no: u64,
    pub mindeg: u32,
    pub rows: usize,
    pub cols: usize,
    pub new_pivots: usize,
    pub zero_rows: usize,
}

#[derive(Clone, Debug)]
pub struct MatrixOutput {
    pub basis: Vec<Polynomial>,
    pub inputs: Vec<Polynomial>,
    pub state: Option<BasisState>,
    pub stats: Stats,
    pub matrices: Vec<MatrixStats>,
    pub violations: Vec<String>,
}

/// A labeled polynomial `(sig, poly)` headed for the matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Row {
    pub sig: Signature,
    pub poly: Polynomial,
    /// Generator the row is a multiple of.
    pub gen: usize,
    /// `x_i * t * f` with `x_i` already in `t * lm(f)` (boolean mode); its
    /// lead still needs a reducer from the basis.
    pub field_lift: bool,
}

impl Row {
    fn of(ring: &Ring, lm: &LabeledMonomial) -> Row {
        Row {
            sig: lm.signature(),
            poly: lm.multiple(ring),
            gen: lm.gen.id,
            field_lift: false,
        }
    }
}

/// Every unlifted entry of degree `mindeg`, marked lifted.
pub fn collect_todo(state: &mut BasisState, mindeg: u32) -> Vec<LabeledMonomial> {
    let todo: Vec<LabeledMonomial> = state
        .unlifted()
        .take_while(|e| e.degree() == mindeg)
        .cloned()
        .collect();
    for e in &todo {
        state.mark_lifted(&e.mono);
    }
    todo
}

struct Batch {
    rows: Vec<Row>,
    seen: FxHashSet<(Signature, usize)>,
}

impl Batch {
    fn push(&mut self, row: Row) {
        if self.seen.insert((row.sig.clone(), row.gen)) {
            self.rows.push(row);
        }
    }
}

/// Lift every entry of `todo` by every variable. Collisions that pass the
/// criteria put both multiples into the batch; a smaller newcomer replaces
/// the resident first. Free slots are filled directly.
pub fn lift_fn(state: &mut BasisState, todo: &[LabeledMonomial], criteria: Criteria) -> Vec<Row> {
    let ring = state.ring().clone();
    let mut batch = Batch {
        rows: Vec::new(),
        seen: FxHashSet::default(),
    };
    for src in todo {
        let ssig = src.signature();
        for i in 0..ring.nvars() {
            state.stats.lifts += 1;
            if ring.is_boolean() && src.mono.exponent(i) > 0 {
                let xi = ring.var(i);
                let key = src.mono.mul(&xi, false);
                let sig = ssig.mul(&xi);
                let square = xi.mul(&xi, false);
                state.stats.collisions += 1;
                let cand = Candidate {
                    key: &key,
                    sig: &sig,
                    lead: src.gen.lead(),
                    resident_lead: &square,
                };
                if state.gate(cand, criteria).is_none() {
                    batch.push(Row {
                        sig,
                        poly: src.multiple(&ring).mul_term(&ring, 1, &xi),
                        gen: src.gen.id,
                        field_lift: true,
                    });
                }
                continue;
            }
            let new = src.lift_by_var(i);
            let Some(res) = state.get(&new.mono).cloned() else {
                state.insert(new);
                continue;
            };
            state.stats.collisions += 1;
            let sig = new.signature();
            let rsig = res.signature();
            match sig.cmp(&rsig) {
                std::cmp::Ordering::Greater => {
                    let cand = Candidate {
                        key: &new.mono,
                        sig: &sig,
                        lead: new.gen.lead(),
                        resident_lead: res.gen.lead(),
                    };
                    if state.gate(cand, criteria).is_none() {
                        batch.push(Row::of(&ring, &new));
                        batch.push(Row::of(&ring, &res));
                    }
                }
                std::cmp::Ordering::Less => {
                    state.replace(new.clone());
                    let cand = Candidate {
                        key: &res.mono,
                        sig: &rsig,
                        lead: res.gen.lead(),
                        resident_lead: new.gen.lead(),
                    };
                    if state.gate(cand, criteria).is_none() {
                        batch.push(Row::of(&ring, &new));
                        batch.push(Row::of(&ring, &res));
                    }
                }
                std::cmp::Ordering::Equal => state.stats.equal_signatures += 1,
            }
        }
    }
    batch.rows
}

/// Close the batch under reducers: every monomial of every row that is
/// keyed in the basis brings in the resident's multiple.
pub fn append_fn(state: &BasisState, rows: &mut Vec<Row>) {
    let ring = state.ring();
    let mut done: FxHashSet<Monomial> = rows
        .iter()
        .filter(|r| !r.field_lift)
        .filter_map(|r| r.poly.lm().cloned())
        .collect();
    let mut k = 0;
    while k < rows.len() {
        let mut found = Vec::new();
        for m in rows[k].poly.monomials() {
            if !done.contains(m) {
                done.insert(m.clone());
                if let Some(e) = state.get(m) {
                    found.push(Row::of(ring, e));
                }
            }
        }
        rows.extend(found);
        k += 1;
    }
}

/// Sort ascending by signature and keep one row per signature: the one
/// with the smallest lead, then the smallest generator id.
pub fn dedupe_by_signature(mut rows: Vec<Row>) -> Vec<Row> {
    rows.sort_by(|a, b| {
        a.sig
            .cmp(&b.sig)
            .then_with(|| a.poly.lm().cmp(&b.poly.lm()))
            .then(a.gen.cmp(&b.gen))
    });
    rows.dedup_by(|later, first| later.sig == first.sig);
    rows
}

/// Result of eliminating one batch.
#[derive(Clone, Debug)]
pub struct Eliminated {
    /// Nonzero rows after elimination, ascending by signature, with a flag
    /// telling whether the row was reduced.
    pub rows: Vec<(Signature, Polynomial, bool)>,
    pub zero_sigs: Vec<Signature>,
    pub nrows: usize,
    pub ncols: usize,
    pub new_pivots: usize,
}

/// One-sided elimination of rows sorted ascending by signature.
pub fn eliminate_fn(ring: &Ring, rows: &[Row], parallel: bool) -> Eliminated {
    let input: Vec<(Signature, &Polynomial)> = rows.iter().map(|r| (r.sig.clone(), &r.poly)).collect();
    let mut m = MacaulayMatrix::from_rows(ring, &input);
    let e = m.eliminate(ring.field(), parallel);
    let mut out = Vec::with_capacity(rows.len());
    let mut zero_sigs = Vec::new();
    for (i, lead) in e.leads.iter().enumerate() {
        match lead {
            Some(_) => out.push((m.signature(i).clone(), m.row_poly(i), e.changed[i])),
            None => zero_sigs.push(m.signature(i).clone()),
        }
    }
    Eliminated {
        rows: out,
        zero_sigs,
        nrows: m.nrows(),
        ncols: m.ncols(),
        new_pivots: e.new_pivots(),
    }
}

/// Fold eliminated rows into the basis: a lead that is free is inserted, a
/// lead whose resident has a larger signature is replaced.
pub fn update_fn(state: &mut BasisState, rows: Vec<(Signature, Polynomial, bool)>) {
    for (sig, h, _) in rows {
        let Some(lead) = h.lm() else { continue };
        let entry = |state: &mut BasisState, sig: Signature, h: Polynomial| match state.same_signature_multiple(lead, &sig) {
            Some(lm) => {
                state.stats.equal_signatures += 1;
                lm
            }
            None => LabeledMonomial::primitive(state.new_generator(sig, h)),
        };
        match state.get(lead).map(LabeledMonomial::signature) {
            None => {
                let lm = entry(state, sig, h.clone());
                state.insert(lm);
            }
            Some(rsig) => {
                state.stats.collisions += 1;
                if rsig > sig {
                    let lm = entry(state, sig, h.clone());
                    state.replace(lm);
                }
            }
        }
    }
}

/// Run the batch engine on `system`.
pub fn run_matrix_engine(ring: &Ring, system: &[Polynomial], cfg: &MatrixConfig) -> Result<MatrixOutput, EngineError> {
    if system.is_empty() {
        return Err(EngineError::EmptyInput);
    }
    let inputs = preprocess_inputs(ring, system);
    if inputs.is_empty() {
        log::warn!("every input is zero; the basis is empty");
        return Ok(MatrixOutput {
            basis: Vec::new(),
            inputs,
            state: None,
            stats: Stats::default(),
            matrices: Vec::new(),
            violations: Vec::new(),
        });
    }
    let mut state = BasisState::from_inputs(ring.clone(), &inputs, false);
    let mut matrices = Vec::new();
    let mut violations = Vec::new();
    let mut floor = 0u32;
    let mut peak = state.max_primitive_degree();
    let mut loop_no = 0u64;
    loop {
        loop {
            cfg.deadline.check()?;
            let liftdeg = state.max_primitive_degree().max(floor);
            let Some(mindeg) = state.mindeg().filter(|&d| d <= liftdeg) else {
                break;
            };
            loop_no += 1;
            state.stats.loops += 1;
            let todo = collect_todo(&mut state, mindeg);
            let mut rows = lift_fn(&mut state, &todo, cfg.criteria);
            append_fn(&state, &mut rows);
            let rows = dedupe_by_signature(rows);
            if rows.is_empty() {
                continue;
            }
            let elim = eliminate_fn(ring, &rows, cfg.parallel);
            if cfg.record_matrix_stats {
                matrices.push(MatrixStats {
                    loop_no,
                    mindeg,
                    rows: elim.nrows,
                    cols: elim.ncols,
                    new_pivots: elim.new_pivots,
                    zero_rows: elim.zero_sigs.len(),
                });
            }
            for s in &elim.zero_sigs {
                if cfg.zero_row_syzygies {
                    state.record_syzygy(s);
                } else {
                    state.stats.syzygies_found += 1;
                }
            }
            update_fn(&mut state, elim.rows);
            let liftdeg = state.max_primitive_degree().max(floor);
            if liftdeg < peak {
                state.stats.liftdeg_drops += 1;
            }
            peak = peak.max(liftdeg);
            if cfg.check_invariants {
                violations.extend(state.check_invariants());
                degree_bound(&state, peak, loop_no, &mut violations);
            }
        }
        let liftdeg = state.max_primitive_degree().max(floor);
        let maxcp = state.maxcpdeg();
        if maxcp > liftdeg + 1 {
            log::debug!("extending liftdeg from {liftdeg} to {}", maxcp - 1);
            floor = maxcp - 1;
            state.stats.extensions += 1;
            continue;
        }
        break;
    }
    Ok(MatrixOutput {
        basis: state.basis(),
        inputs,
        stats: state.stats.clone(),
        state: Some(state),
        matrices,
        violations,
    })
}

/// Rows of `rows` grouped by leading monomial, for closure checks.
#[cfg(test)]
fn by_lead(rows: &[Row]) -> rustc_hash::FxHashMap<Monomial, Vec<usize>> {
    let mut m: rustc_hash::FxHashMap<Monomial, Vec<usize>> = Default::default();
    for (i, r) in rows.iter().enumerate() {
        if let Some(l) = r.poly.lm() {
            m.entry(l.clone()).or_default().push(i);
        }
    }
    m
}
