//! Unit-weight symmetrized traces of representation matrices.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::basis::GellMannBasis;
use crate::error::{Error, Result};
use crate::invariants::dfamily::admissible_tuples;
use crate::linalg::{frobenius_pair_unchecked, CMatrix, ZERO};
use crate::tensor::tuple;
use crate::tensor::SymTensor;

/// Pair products above this many bytes are not precomputed.
const PAIR_BYTES: f64 = 2.6e8;
const HERMITIAN_TOL: f64 = 1e-12;

/// Ordered-product traces over one matrix list, with the products `D_a D_b`
/// (`a <= b`) precomputed when affordable. For hermitian lists
/// `D_b D_a = (D_a D_b)^dag`, so the lower triangle is implied.
pub struct ChainTracer<'a> {
    mats: &'a [CMatrix],
    pairs: Option<Vec<CMatrix>>,
}

fn tri(a: usize, b: usize) -> usize {
    b * (b + 1) / 2 + a
}

/// `Tr(op(a) op(b))`, `op` the identity or the adjoint.
fn pair_trace(a: &CMatrix, a_adj: bool, b: &CMatrix, b_adj: bool) -> Complex64 {
    match (a_adj, b_adj) {
        (false, false) => frobenius_pair_unchecked(a, b),
        (true, true) => frobenius_pair_unchecked(a, b).conj(),
        (false, true) => a.as_slice().iter().zip(b.as_slice()).map(|(x, y)| x * y.conj()).sum(),
        (true, false) => a.as_slice().iter().zip(b.as_slice()).map(|(x, y)| x.conj() * y).sum(),
    }
}

impl<'a> ChainTracer<'a> {
    /// `with_pairs` requests pair products; they are skipped for non-hermitian
    /// lists and above the memory budget.
    pub fn new(mats: &'a [CMatrix], with_pairs: bool) -> Self {
        let r = mats.len();
        let dim = mats.first().map_or(0, CMatrix::rows) as f64;
        let bytes = (r * (r + 1) / 2) as f64 * dim * dim * 16.0;
        let hermitian = mats.iter().all(|m| m.hermiticity_residual() < HERMITIAN_TOL);
        let pairs = (with_pairs && hermitian && bytes <= PAIR_BYTES).then(|| {
            let order: Vec<(usize, usize)> = (0..r).flat_map(|b| (0..=b).map(move |a| (a, b))).collect();
            order
                .into_par_iter()
                .map(|(a, b)| mats[a].mul_unchecked(&mats[b]))
                .collect()
        });
        ChainTracer { mats, pairs }
    }

    pub fn has_pairs(&self) -> bool {
        self.pairs.is_some()
    }

    pub fn dim(&self) -> usize {
        self.mats.first().map_or(0, CMatrix::rows)
    }

    fn pair(&self, a: usize, b: usize) -> Option<(&CMatrix, bool)> {
        let pairs = self.pairs.as_ref()?;
        Some(if a <= b {
            (&pairs[tri(a, b)], false)
        } else {
            (&pairs[tri(b, a)], true)
        })
    }

    fn pair_owned(&self, a: usize, b: usize) -> CMatrix {
        match self.pair(a, b) {
            Some((p, false)) => p.clone(),
            Some((p, true)) => p.adjoint(),
            None => self.mats[a].mul_unchecked(&self.mats[b]),
        }
    }

    /// `Tr(D_w0 D_w1 ... )`.
    pub fn trace(&self, word: &[usize]) -> Complex64 {
        let m = &self.mats;
        match word.len() {
            0 => Complex64::new(self.dim() as f64, 0.0),
            1 => m[word[0]].trace().expect("square"),
            2 => frobenius_pair_unchecked(&m[word[0]], &m[word[1]]),
            3 => match self.pair(word[0], word[1]) {
                Some((p, adj)) => pair_trace(p, adj, &m[word[2]], false),
                None => frobenius_pair_unchecked(&m[word[0]].mul_unchecked(&m[word[1]]), &m[word[2]]),
            },
            4 => match (self.pair(word[0], word[1]), self.pair(word[2], word[3])) {
                (Some((p, pa)), Some((q, qa))) => pair_trace(p, pa, q, qa),
                _ => frobenius_pair_unchecked(&self.pair_owned(word[0], word[1]), &self.pair_owned(word[2], word[3])),
            },
            len => {
                let mut acc = self.pair_owned(word[0], word[1]);
                let mut pos = 2;
                while len - pos > 2 {
                    acc = acc.mul_unchecked(&self.pair_owned(word[pos], word[pos + 1]));
                    pos += 2;
                }
                if len - pos == 2 {
                    match self.pair(word[pos], word[pos + 1]) {
                        Some((q, qa)) => pair_trace(&acc, false, q, qa),
                        None => frobenius_pair_unchecked(&acc, &self.pair_owned(word[pos], word[pos + 1])),
                    }
                } else {
                    frobenius_pair_unchecked(&acc, &m[word[pos]])
                }
            }
        }
    }

    /// Unit-weight symmetrized trace at a sorted tuple: the first factor is held
    /// fixed by cyclicity and the distinct arrangements of the rest averaged.
    pub fn sym_trace(&self, sorted: &[usize]) -> Complex64 {
        let (first, rest) = sorted.split_first().expect("nonempty tuple");
        let mut word = Vec::with_capacity(sorted.len());
        let mut total = ZERO;
        let mut count = 0usize;
        tuple::for_each_distinct_permutation(rest, |p| {
            word.clear();
            word.push(*first);
            word.extend_from_slice(p);
            total += self.trace(&word);
            count += 1;
        });
        total / count as f64
    }

    /// Estimated flops for `count` symmetrized traces of rank `m`.
    pub fn cost(&self, m: usize, count: f64) -> f64 {
        let d = self.dim() as f64;
        let arrangements = tuple::factorial(m.saturating_sub(1));
        let per = if m <= 4 && self.has_pairs() {
            d * d
        } else {
            d * d * d * (m as f64 / 2.0).max(1.0)
        };
        8.0 * count * arrangements * per
    }

    /// Flops spent precomputing pair products.
    pub fn setup_cost(&self) -> f64 {
        let r = self.mats.len() as f64;
        let d = self.dim() as f64;
        if self.has_pairs() {
            4.0 * r * (r + 1.0) * d * d * d
        } else {
            0.0
        }
    }
}

/// Estimated cost of the full symmetrized trace tensor of rank `m`.
pub fn sym_trace_tensor_cost(mats: &[CMatrix], m: usize) -> f64 {
    let r = mats.len();
    let d = mats.first().map_or(0, CMatrix::rows) as f64;
    let count = tuple::binomial(r + m - 1, m);
    let per = if m <= 4 { d * d } else { d * d * d * m as f64 / 2.0 };
    8.0 * count * tuple::factorial(m - 1) * per + 4.0 * (r * r) as f64 * d * d * d
}

/// `T_(k1..km) = Tr D_(k1 .. D_km)` on every canonical tuple. Entries that
/// the selection rule forces to zero are not evaluated.
pub fn sym_trace_tensor(
    basis: &GellMannBasis,
    mats: &[CMatrix],
    m: usize,
    flop_cap: f64,
    entry_cap: f64,
) -> Result<SymTensor> {
    if m < 1 {
        return Err(Error::Domain("symmetrized trace needs rank >= 1".into()));
    }
    if mats.len() != basis.dim() {
        return Err(Error::Domain(format!(
            "expected {} matrices, got {}",
            basis.dim(),
            mats.len()
        )));
    }
    let cost = sym_trace_tensor_cost(mats, m);
    if cost > flop_cap {
        return Err(Error::cap(
            format!("symmetrized trace tensor of rank {m}"),
            cost,
            flop_cap,
            "; use the antisymmetrized single-component route",
        ));
    }
    let tuples = admissible_tuples(basis, m, false, 0, entry_cap, "symmetrized trace entries")?;
    let tracer = ChainTracer::new(mats, m >= 3);
    let pairs: Vec<(Vec<usize>, f64)> = tuples
        .into_par_iter()
        .map(|t| {
            let v = tracer.sym_trace(&t).re;
            (t, v)
        })
        .collect();
    Ok(SymTensor::from_entries(m, basis.dim(), pairs))
}

/// Symmetrization over all slots of `Tr(A_k1 .. A_k(m-1) B_km)`: every distinct
/// arrangement of each canonical tuple is averaged, with `B` always last.
pub fn mixed_sym_trace_tensor(
    basis: &GellMannBasis,
    head: &[CMatrix],
    last: &[CMatrix],
    m: usize,
    entry_cap: f64,
) -> Result<SymTensor> {
    let tuples = admissible_tuples(basis, m, false, 0, entry_cap, "mixed symmetrized trace entries")?;
    let tracer = ChainTracer::new(head, true);
    let pairs: Vec<(Vec<usize>, f64)> = tuples
        .into_par_iter()
        .map(|t| {
            let mut total = ZERO;
            let mut count = 0usize;
            tuple::for_each_distinct_permutation(&t, |w| {
                let (tail, body) = w.split_last().expect("nonempty");
                // Tr(P B) with P the ordered product of the head factors
                let prod = if body.len() == 1 {
                    head[body[0]].clone()
                } else {
                    let mut acc = tracer.pair_owned(body[0], body[1]);
                    for &k in &body[2..] {
                        acc = acc.mul_unchecked(&head[k]);
                    }
                    acc
                };
                total += frobenius_pair_unchecked(&prod, &last[*tail]);
                count += 1;
            });
            (t, (total / count as f64).re)
        })
        .collect();
    Ok(SymTensor::from_entries(m, basis.dim(), pairs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{gell_mann_basis, structure_constants};
    use crate::reps;
    use crate::traces;

    #[test]
    fn tracer_matches_plain_products() {
        let b = gell_mann_basis(3).unwrap();
        let sc = structure_constants(&b);
        let ad = reps::adjoint_rep(&sc);
        let with = ChainTracer::new(&ad.mats, true);
        let without = ChainTracer::new(&ad.mats, false);
        assert!(with.has_pairs() && !without.has_pairs());
        for word in [
            vec![0, 1],
            vec![3, 1, 7],
            vec![6, 2, 2, 0],
            vec![0, 1, 2, 3, 4],
            vec![7, 6, 5, 4, 3, 2],
        ] {
            let chain: Vec<&CMatrix> = word.iter().map(|&i| &ad.mats[i]).collect();
            let want = crate::linalg::trace_product(&chain).unwrap();
            assert!((with.trace(&word) - want).norm() < 1e-12, "{word:?}");
            assert!((without.trace(&word) - want).norm() < 1e-12, "{word:?}");
        }
        let want = traces::sym_trace(&ad.mats.iter().collect::<Vec<_>>(), &[1, 1, 3, 4]).unwrap();
        assert!((with.sym_trace(&[1, 1, 3, 4]) - want).norm() < 1e-12);
    }

    #[test]
    fn selection_rule_holds_for_traces() {
        // skipped entries of non-self-conjugate representations really vanish
        let b = gell_mann_basis(3).unwrap();
        let s2 = reps::sym_power_rep(&b, 2, 100).unwrap();
        let tracer = ChainTracer::new(&s2.mats, true);
        for m in [3, 4] {
            tuple::for_each_nondecreasing(m, 8, |t| {
                let admissible = b.admissible(t) && b.imaginary_count(t).is_multiple_of(2);
                if !admissible {
                    assert!(tracer.sym_trace(t).norm() < 1e-12, "{t:?}");
                }
            });
        }
    }

    #[test]
    fn defining_quadratic_trace_is_half_delta() {
        let b = gell_mann_basis(3).unwrap();
        let def = reps::defining_rep(&b);
        let t = sym_trace_tensor(&b, &def.mats, 2, 1e12, 1e7).unwrap();
        assert!(t.max_abs_diff(&SymTensor::delta(8).scale(0.5)) < 1e-14);
    }
}
