//! Dense Macaulay matrices over GF(2) (bit-packed) and GF(p), with
//! one-sided elimination: a row is only ever reduced by rows above it.

use rustc_hash::FxHashMap;

use crate::algebra::{Coeff, Monomial, Polynomial, PrimeField, Ring, Signature, Term};
use crate::par;

/// Below this many touched row elements a column step runs sequentially.
const PAR_MIN_WORK: usize = 1 << 14;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Rows {
    /// Column `j` is bit `j % 64` of word `j / 64`.
    Gf2 { words: usize, data: Vec<Vec<u64>> },
    Gfp { data: Vec<Vec<Coeff>> },
}

/// Rows are kept in the order given (ascending signature); columns are the
/// monomials of all rows in descending order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MacaulayMatrix {
    columns: Vec<Monomial>,
    sigs: Vec<Signature>,
    rows: Rows,
}

/// What one elimination did to each row.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Elimination {
    /// Leading column of each row afterwards; `None` for a zero row.
    pub leads: Vec<Option<usize>>,
    /// Whether the row was combined with some pivot.
    pub changed: Vec<bool>,
}

impl Elimination {
    pub fn zero_rows(&self) -> usize {
        self.leads.iter().filter(|l| l.is_none()).count()
    }

    /// Rows that were reduced and are still nonzero.
    pub fn new_pivots(&self) -> usize {
        self.leads
            .iter()
            .zip(&self.changed)
            .filter(|(l, c)| l.is_some() && **c)
            .count()
    }
}

impl MacaulayMatrix {
    pub fn from_rows(ring: &Ring, rows: &[(Signature, &Polynomial)]) -> Self {
        let mut columns: Vec<Monomial> = rows
            .iter()
            .flat_map(|(_, p)| p.monomials().cloned())
            .collect();
        columns.sort_unstable_by(|a, b| b.cmp(a));
        columns.dedup();
        let index: FxHashMap<&Monomial, usize> = columns.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let sigs = rows.iter().map(|(s, _)| s.clone()).collect();
        let rows = if ring.field().modulus() == 2 {
            let words = columns.len().div_ceil(64);
            let data = rows
                .iter()
                .map(|(_, p)| {
                    let mut r = vec![0u64; words];
                    for t in p.terms() {
                        let j = index[&t.mono];
                        r[j / 64] |= 1 << (j % 64);
                    }
                    r
                })
                .collect();
            Rows::Gf2 { words, data }
        } else {
            let data = rows
                .iter()
                .map(|(_, p)| {
                    let mut r = vec![0; columns.len()];
                    for t in p.terms() {
                        r[index[&t.mono]] = t.coeff;
                    }
                    r
                })
                .collect();
            Rows::Gfp { data }
        };
        MacaulayMatrix { columns, sigs, rows }
    }

    pub fn nrows(&self) -> usize {
        self.sigs.len()
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Monomial] {
        &self.columns
    }

    pub fn signature(&self, i: usize) -> &Signature {
        &self.sigs[i]
    }

    pub fn entry(&self, i: usize, j: usize) -> Coeff {
        match &self.rows {
            Rows::Gf2 { data, .. } => ((data[i][j / 64] >> (j % 64)) & 1) as Coeff,
            Rows::Gfp { data } => data[i][j],
        }
    }

    pub fn row_poly(&self, i: usize) -> Polynomial {
        let terms: Vec<Term> = (0..self.ncols())
            .filter_map(|j| {
                let c = self.entry(i, j);
                (c != 0).then(|| Term {
                    coeff: c,
                    mono: self.columns[j].clone(),
                })
            })
            .collect();
        // columns are descending, so the terms are already normalized
        Polynomial::from_sorted_terms(terms)
    }

    /// One-sided elimination by column sweep. At each column, the topmost
    /// row leading there becomes the pivot (made monic) and clears that
    /// column from every other row leading there. This gives the same rows
    /// as reducing each row, top to bottom, by the pivots above it.
    pub fn eliminate(&mut self, field: &PrimeField, parallel: bool) -> Elimination {
        let ncols = self.ncols();
        match &mut self.rows {
            Rows::Gf2 { words, data } => {
                let words = *words;
                sweep(
                    data,
                    ncols,
                    parallel,
                    words,
                    gf2_lead,
                    |_, _| {},
                    |row: &mut Vec<u64>, piv: &Vec<u64>, col| {
                        for (a, b) in row[col / 64..].iter_mut().zip(&piv[col / 64..]) {
                            *a ^= *b;
                        }
                    },
                )
            }
            Rows::Gfp { data } => {
                let p = field.modulus();
                sweep(
                    data,
                    ncols,
                    parallel,
                    ncols,
                    gfp_lead,
                    |row: &mut Vec<Coeff>, col| {
                        let inv = field.inv(row[col]);
                        if inv != 1 {
                            for x in &mut row[col..] {
                                *x = field.mul(*x, inv);
                            }
                        }
                    },
                    |row: &mut Vec<Coeff>, piv: &Vec<Coeff>, col| {
                        let f = p - row[col];
                        for (a, &b) in row[col..].iter_mut().zip(&piv[col..]) {
                            *a = (*a + f * b) % p;
                        }
                    },
                )
            }
        }
    }
}

fn gf2_lead(row: &Vec<u64>, from: usize) -> Option<usize> {
    let w0 = from / 64;
    if w0 >= row.len() {
        return None;
    }
    let first = row[w0] & (!0u64 << (from % 64));
    if first != 0 {
        return Some(w0 * 64 + first.trailing_zeros() as usize);
    }
    row[w0 + 1..]
        .iter()
        .position(|&w| w != 0)
        .map(|k| (w0 + 1 + k) * 64 + row[w0 + 1 + k].trailing_zeros() as usize)
}

fn gfp_lead(row: &Vec<Coeff>, from: usize) -> Option<usize> {
    row.get(from..)?.iter().position(|&c| c != 0).map(|k| from + k)
}

fn sweep<R, L, N, X>(
    data: &mut [R],
    ncols: usize,
    parallel: bool,
    row_len: usize,
    lead: L,
    normalize: N,
    reduce: X,
) -> Elimination
where
    R: Default + Send + Sync,
    L: Fn(&R, usize) -> Option<usize> + Sync,
    N: Fn(&mut R, usize),
    X: Fn(&mut R, &R, usize) + Sync,
{
    let n = data.len();
    let mut buckets: Vec<Vec<usize>> = vec![Vec::new(); ncols];
    let mut leads = vec![None; n];
    let mut changed = vec![false; n];
    for (i, r) in data.iter().enumerate() {
        if let Some(c) = lead(r, 0) {
            buckets[c].push(i);
        }
    }
    for col in 0..ncols {
        let mut bucket = std::mem::take(&mut buckets[col]);
        if bucket.is_empty() {
            continue;
        }
        bucket.sort_unstable();
        let piv = bucket[0];
        normalize(&mut data[piv], col);
        leads[piv] = Some(col);
        if bucket.len() == 1 {
            continue;
        }
        let mut taken: Vec<(usize, R, Option<usize>)> = bucket[1..]
            .iter()
            .map(|&i| (i, std::mem::take(&mut data[i]), None))
            .collect();
        let pivot_row = &data[piv];
        let work = taken.len() * row_len.saturating_sub(col);
        par::for_each_mut(&mut taken, parallel && work >= PAR_MIN_WORK, |(_, row, l)| {
            reduce(row, pivot_row, col);
            *l = lead(row, col + 1);
        });
        for (i, row, l) in taken {
            data[i] = row;
            changed[i] = true;
            match l {
                Some(c) => buckets[c].push(i),
                None => leads[i] = None,
            }
        }
    }
    Elimination { leads, changed }
}
