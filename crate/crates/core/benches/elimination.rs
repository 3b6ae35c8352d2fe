use criterion::{criterion_group, criterion_main, BatchSize, BenchmarkId, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use mogvw::algebra::{Monomial, Polynomial, Ring, Signature, Term};
use mogvw::matrix::MacaulayMatrix;

/// `nrows` random rows over every monomial of degree <= 3 in `nvars`
/// variables, roughly a third of the columns filled.
fn random_matrix(p: u32, nvars: usize, nrows: usize, seed: u64) -> (Ring, MacaulayMatrix) {
    let ring = Ring::with_nvars(p, nvars, false).unwrap();
    let mut monos = Vec::new();
    let mut e = vec![0u16; nvars];
    fn walk(out: &mut Vec<Monomial>, e: &mut [u16], v: usize, left: u16) {
        if v == e.len() {
            out.push(Monomial::from_exponents(e));
            return;
        }
        for k in 0..=left {
            e[v] = k;
            walk(out, e, v + 1, left - k);
        }
        e[v] = 0;
    }
    walk(&mut monos, &mut e, 0, 3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows: Vec<(Signature, Polynomial)> = (0..nrows)
        .map(|i| {
            let mut terms = Vec::new();
            for m in &monos {
                if rng.gen_bool(0.35) {
                    terms.push(Term {
                        coeff: rng.gen_range(1..p),
                        mono: m.clone(),
                    });
                }
            }
            let mut se = vec![0u16; nvars];
            se[i % nvars] = 1 + (i / nvars) as u16;
            let sig = Signature::new(i % 4, Monomial::from_exponents(&se));
            (sig, Polynomial::from_terms(&ring, terms))
        })
        .collect();
    let mut rows = rows;
    rows.sort_by(|a, b| a.0.cmp(&b.0));
    rows.dedup_by(|a, b| a.0 == b.0);
    let refs: Vec<(Signature, &Polynomial)> = rows.iter().map(|(s, f)| (s.clone(), f)).collect();
    let m = MacaulayMatrix::from_rows(&ring, &refs);
    (ring, m)
}

fn eliminate(c: &mut Criterion) {
    let mut group = c.benchmark_group("eliminate");
    group.sample_size(20);
    for (p, nvars, nrows) in [(2u32, 8usize, 400usize), (2, 10, 800), (7, 8, 400), (7, 10, 800)] {
        let (ring, m) = random_matrix(p, nvars, nrows, 11);
        let label = format!("gf{p}_{}x{}", m.nrows(), m.ncols());
        for parallel in [false, true] {
            let path = if parallel { "parallel" } else { "sequential" };
            group.bench_with_input(BenchmarkId::new(path, &label), &m, |b, m| {
                b.iter_batched(|| m.clone(), |mut m| m.eliminate(ring.field(), parallel), BatchSize::LargeInput)
            });
        }
    }
    group.finish();
}

criterion_group!(benches, eliminate);
criterion_main!(benches);
