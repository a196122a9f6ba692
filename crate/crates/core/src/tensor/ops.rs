use crate::error::{Error, Result};

use super::tuple;
use super::{AltTensor, DenseTensor, SymTensor, TensorView};

/// Unit-weight symmetrisation over all slots.
pub fn symmetrize(t: &dyn TensorView) -> SymTensor {
    let mut pairs = Vec::new();
    tuple::for_each_nondecreasing(t.rank(), t.dim(), |k| {
        let mut sum = 0.0;
        let mut count = 0usize;
        tuple::for_each_distinct_permutation(k, |p| {
            sum += t.get(p);
            count += 1;
        });
        let v = sum / count as f64;
        if v != 0.0 {
            pairs.push((tuple::pack(k), v));
        }
    });
    SymTensor::from_key_pairs(t.rank(), t.dim(), pairs)
}

/// Unit-weight alternation over the given slots; other slots are untouched.
pub fn antisymmetrize(t: &dyn TensorView, positions: &[usize]) -> Result<DenseTensor> {
    let rank = t.rank();
    if positions.iter().any(|&p| p >= rank) {
        return Err(Error::Domain(format!(
            "antisymmetrize: slot out of range for rank {rank}: {positions:?}"
        )));
    }
    let mut seen = positions.to_vec();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != positions.len() {
        return Err(Error::Domain(format!("antisymmetrize: repeated slot in {positions:?}")));
    }
    let perms = tuple::signed_permutations(positions.len());
    let norm = tuple::factorial(positions.len());
    let mut buf = vec![0usize; rank];
    Ok(DenseTensor::from_fn(rank, t.dim(), |idx| {
        let mut acc = 0.0;
        for (p, s) in &perms {
            buf.copy_from_slice(idx);
            for (slot, &q) in positions.iter().zip(p) {
                buf[*slot] = idx[positions[q]];
            }
            acc += s * t.get(&buf);
        }
        acc / norm
    }))
}

/// Unit-weight alternation over every slot, stored canonically.
pub fn antisymmetrize_full(t: &dyn TensorView) -> AltTensor {
    let rank = t.rank();
    let perms = tuple::signed_permutations(rank);
    let norm = tuple::factorial(rank);
    let mut buf = vec![0usize; rank];
    let mut pairs = Vec::new();
    tuple::for_each_increasing(rank, t.dim(), |k| {
        let mut acc = 0.0;
        for (p, s) in &perms {
            for (b, &q) in buf.iter_mut().zip(p) {
                *b = k[q];
            }
            acc += s * t.get(&buf);
        }
        if acc != 0.0 {
            pairs.push((tuple::pack(k), acc / norm));
        }
    });
    AltTensor::from_key_pairs(rank, t.dim(), pairs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Symmetry {
    None,
    Sym,
    Alt,
}

/// Which slot of the left operand is summed against which slot of the right one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionPlan {
    pub pairs: Vec<(usize, usize)>,
    pub output: Symmetry,
}

impl ContractionPlan {
    pub fn new(pairs: Vec<(usize, usize)>, output: Symmetry) -> Self {
        ContractionPlan { pairs, output }
    }

    fn validate(&self, a: &dyn TensorView, b: &dyn TensorView) -> Result<()> {
        let (mut la, mut lb): (Vec<usize>, Vec<usize>) = self.pairs.iter().copied().unzip();
        if la.iter().any(|&p| p >= a.rank()) || lb.iter().any(|&p| p >= b.rank()) {
            return Err(Error::Plan(format!(
                "slots {:?} out of range for ranks ({}, {})",
                self.pairs,
                a.rank(),
                b.rank()
            )));
        }
        la.sort_unstable();
        lb.sort_unstable();
        if la.windows(2).any(|w| w[0] == w[1]) || lb.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Plan(format!("slots in {:?} are not disjoint", self.pairs)));
        }
        if a.dim() != b.dim() {
            return Err(Error::Plan(format!(
                "paired slot dims differ: {} vs {}",
                a.dim(),
                b.dim()
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum ContractOutput {
    Scalar(f64),
    Dense(DenseTensor),
    Sym(SymTensor),
    Alt(AltTensor),
}

impl ContractOutput {
    pub fn scalar(&self) -> Option<f64> {
        match self {
            ContractOutput::Scalar(v) => Some(*v),
            _ => None,
        }
    }

    pub fn into_dense(self) -> Option<DenseTensor> {
        match self {
            ContractOutput::Dense(d) => Some(d),
            ContractOutput::Sym(s) => Some(DenseTensor::from_view(&s)),
            ContractOutput::Alt(a) => Some(DenseTensor::from_view(&a)),
            ContractOutput::Scalar(_) => None,
        }
    }
}

/// Pairwise contraction. Output slots are the free slots of `a` followed by the
/// free slots of `b`, each in their original order. The operand with fewer
/// stored entries drives the loop; the other one is only looked up.
pub fn contract(a: &dyn TensorView, b: &dyn TensorView, plan: &ContractionPlan) -> Result<ContractOutput> {
    plan.validate(a, b)?;
    let dim = a.dim();
    let free_a: Vec<usize> = (0..a.rank())
        .filter(|p| !plan.pairs.iter().any(|q| q.0 == *p))
        .collect();
    let free_b: Vec<usize> = (0..b.rank())
        .filter(|p| !plan.pairs.iter().any(|q| q.1 == *p))
        .collect();
    let out_rank = free_a.len() + free_b.len();
    let mut out = DenseTensor::zeros(out_rank, dim);

    // orient so that `drive` is iterated and `look` is looked up
    let a_drives = a.nnz() <= b.nnz();
    let (drive, look) = if a_drives { (a, b) } else { (b, a) };
    let links: Vec<(usize, usize)> = plan
        .pairs
        .iter()
        .map(|&(pa, pb)| if a_drives { (pa, pb) } else { (pb, pa) })
        .collect();
    let look_free: Vec<usize> = (0..look.rank()).filter(|p| !links.iter().any(|q| q.1 == *p)).collect();
    let drive_free: Vec<usize> = (0..drive.rank()).filter(|p| !links.iter().any(|q| q.0 == *p)).collect();

    let mut look_idx = vec![0usize; look.rank()];
    let mut out_idx = vec![0usize; out_rank];
    let mut free_vals = vec![0usize; look_free.len()];
    drive.for_each_raw(&mut |di, dv| {
        for &(pd, pl) in &links {
            look_idx[pl] = di[pd];
        }
        let total = dim.pow(look_free.len() as u32);
        for code in 0..total {
            let mut c = code;
            for p in (0..free_vals.len()).rev() {
                free_vals[p] = c % dim;
                c /= dim;
            }
            for (&slot, &v) in look_free.iter().zip(&free_vals) {
                look_idx[slot] = v;
            }
            let lv = look.get(&look_idx);
            if lv == 0.0 {
                continue;
            }
            let drive_part = drive_free.iter().map(|&p| di[p]);
            if a_drives {
                for (o, v) in out_idx.iter_mut().zip(drive_part.chain(free_vals.iter().copied())) {
                    *o = v;
                }
            } else {
                for (o, v) in out_idx.iter_mut().zip(free_vals.iter().copied().chain(drive_part)) {
                    *o = v;
                }
            }
            out.add_at(&out_idx, dv * lv);
        }
    });

    if out_rank == 0 {
        return Ok(ContractOutput::Scalar(out.get(&[])));
    }
    Ok(match plan.output {
        Symmetry::None => ContractOutput::Dense(out),
        Symmetry::Sym => ContractOutput::Sym(SymTensor::from_dense(&out)),
        Symmetry::Alt => ContractOutput::Alt(AltTensor::from_dense(&out)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive_contract(a: &DenseTensor, b: &DenseTensor, pairs: &[(usize, usize)]) -> DenseTensor {
        let dim = a.dim();
        let free_a: Vec<usize> = (0..a.rank()).filter(|p| !pairs.iter().any(|q| q.0 == *p)).collect();
        let free_b: Vec<usize> = (0..b.rank()).filter(|p| !pairs.iter().any(|q| q.1 == *p)).collect();
        let out_rank = free_a.len() + free_b.len();
        DenseTensor::from_fn(out_rank, dim, |o| {
            let mut acc = 0.0;
            let mut s = vec![0usize; pairs.len()];
            let mut ia = vec![0usize; a.rank()];
            let mut ib = vec![0usize; b.rank()];
            loop {
                for (k, &p) in free_a.iter().enumerate() {
                    ia[p] = o[k];
                }
                for (k, &p) in free_b.iter().enumerate() {
                    ib[p] = o[free_a.len() + k];
                }
                for (k, &(pa, pb)) in pairs.iter().enumerate() {
                    ia[pa] = s[k];
                    ib[pb] = s[k];
                }
                acc += a.get(&ia) * b.get(&ib);
                let mut p = 0;
                while p < s.len() {
                    s[p] += 1;
                    if s[p] < dim {
                        break;
                    }
                    s[p] = 0;
                    p += 1;
                }
                if p == s.len() {
                    break;
                }
            }
            acc
        })
    }

    fn pseudo_random(rank: usize, dim: usize, seed: u64) -> DenseTensor {
        let mut state = seed.wrapping_mul(0x9E3779B97F4A7C15).wrapping_add(1);
        DenseTensor::from_fn(rank, dim, |_| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state % 2001) as f64 / 1000.0 - 1.0
        })
    }

    #[test]
    fn contract_matches_naive_loop() {
        let a = pseudo_random(3, 4, 1);
        let b = pseudo_random(2, 4, 2);
        for pairs in [vec![(2, 0)], vec![(0, 1), (1, 0)], vec![(1, 1)]] {
            let plan = ContractionPlan::new(pairs.clone(), Symmetry::None);
            let got = contract(&a, &b, &plan).unwrap().into_dense().unwrap();
            let want = naive_contract(&a, &b, &pairs);
            assert!(got.max_abs_diff(&want) < 1e-12, "{pairs:?}");
        }
    }

    #[test]
    fn contract_full_gives_scalar() {
        let a = pseudo_random(2, 3, 5);
        let plan = ContractionPlan::new(vec![(0, 0), (1, 1)], Symmetry::None);
        let s = contract(&a, &a, &plan).unwrap().scalar().unwrap();
        assert!((s - a.norm_sq()).abs() < 1e-12);
    }

    #[test]
    fn delta_contraction_is_identity() {
        let t = pseudo_random(3, 4, 9);
        let delta = SymTensor::delta(4);
        let plan = ContractionPlan::new(vec![(0, 0)], Symmetry::None);
        let out = contract(&delta, &t, &plan).unwrap().into_dense().unwrap();
        assert!(out.max_abs_diff(&t) < 1e-15);
    }

    #[test]
    fn invalid_plans_rejected() {
        let a = pseudo_random(2, 3, 1);
        let b = pseudo_random(2, 4, 1);
        assert!(contract(&a, &a, &ContractionPlan::new(vec![(0, 0), (0, 1)], Symmetry::None)).is_err());
        assert!(contract(&a, &a, &ContractionPlan::new(vec![(2, 0)], Symmetry::None)).is_err());
        assert!(contract(&a, &b, &ContractionPlan::new(vec![(0, 0)], Symmetry::None)).is_err());
    }

    #[test]
    fn symmetrize_idempotent_and_kills_alt() {
        let t = pseudo_random(3, 3, 4);
        let s1 = symmetrize(&t);
        let s2 = symmetrize(&s1);
        assert!(s1.max_abs_diff(&s2) < 1e-15);
        let alt = antisymmetrize_full(&t);
        assert!(symmetrize(&alt).max_abs() < 1e-15);
    }

    #[test]
    fn antisymmetrize_properties() {
        let t = pseudo_random(3, 3, 7);
        let once = antisymmetrize(&t, &[0, 2]).unwrap();
        let twice = antisymmetrize(&once, &[0, 2]).unwrap();
        assert!(once.max_abs_diff(&twice) < 1e-15);
        let s = symmetrize(&t);
        assert!(antisymmetrize(&s, &[1, 2]).unwrap().max_abs() < 1e-15);
        assert!(antisymmetrize(&t, &[0, 3]).is_err());
        assert!(antisymmetrize(&t, &[1, 1]).is_err());
        // full alternation agrees with the slot version on canonical tuples
        let full = antisymmetrize_full(&t);
        let dense = antisymmetrize(&t, &[0, 1, 2]).unwrap();
        assert!(DenseTensor::from_view(&full).max_abs_diff(&dense) < 1e-15);
    }

    #[test]
    fn dense_round_trips_through_canonical() {
        let t = pseudo_random(3, 3, 11);
        let s = symmetrize(&t);
        let back = SymTensor::from_dense(&DenseTensor::from_view(&s));
        assert!(back.max_abs_diff(&s) == 0.0);
        let a = antisymmetrize_full(&t);
        let back = AltTensor::from_dense(&DenseTensor::from_view(&a));
        assert!(back.max_abs_diff(&a) == 0.0);
    }
}
