use rayon::prelude::*;

use crate::basis::{GellMannBasis, StructureConstants};
use crate::error::{Error, Result};
use crate::tensor::tuple::{self, Key};
use crate::tensor::SymTensor;

/// Canonical tuples of the given rank that survive the selection rule with the
/// given parity of imaginary generators.
pub(crate) fn admissible_tuples(
    basis: &GellMannBasis,
    rank: usize,
    strict: bool,
    imaginary_parity: usize,
    cap: f64,
    what: &str,
) -> Result<Vec<Vec<usize>>> {
    let r = basis.dim();
    let count = if strict {
        tuple::binomial(r, rank)
    } else {
        tuple::binomial(r + rank - 1, rank)
    };
    if count > cap {
        return Err(Error::cap(what, count, cap, ""));
    }
    let mut out = Vec::new();
    let mut visit = |t: &[usize]| {
        if basis.admissible(t) && basis.imaginary_count(t) % 2 == imaginary_parity {
            out.push(t.to_vec());
        }
    };
    if strict {
        tuple::for_each_increasing(rank, r, &mut visit);
    } else {
        tuple::for_each_nondecreasing(rank, r, &mut visit);
    }
    Ok(out)
}

/// Next member of the symmetrized family from its predecessor:
/// `d^(m)_I = (1/C(m,2)) sum_{slot pairs a<b} d^(m-1)_{I\{a,b}, j} d_{j I_a I_b}`.
pub fn next_member(basis: &GellMannBasis, sc: &StructureConstants, prev: &SymTensor, cap: f64) -> Result<SymTensor> {
    let m = prev.rank() + 1;
    let tuples = admissible_tuples(basis, m, false, 0, cap, &format!("d^({m}) canonical entries"))?;
    let weight = 1.0 / tuple::binomial(m, 2);
    let pairs: Vec<(Key, f64)> = tuples
        .par_iter()
        .filter_map(|idx| {
            let mut rest = Vec::with_capacity(m - 1);
            let mut s = 0.0;
            for a in 0..m {
                for b in a + 1..m {
                    // equal slot values with equal remainders give identical terms
                    if b > a + 1 && idx[b] == idx[b - 1] {
                        continue;
                    }
                    let mult = (b + 1..m).take_while(|&c| idx[c] == idx[b]).count() + 1;
                    let row = sc.d_row(idx[a], idx[b]);
                    if row.is_empty() {
                        continue;
                    }
                    rest.clear();
                    rest.extend((0..m).filter(|&c| c != a && c != b).map(|c| idx[c]));
                    rest.push(0);
                    let mut t = 0.0;
                    for &(j, dv) in row {
                        *rest.last_mut().unwrap() = j;
                        t += prev.get(&rest) * dv;
                    }
                    s += t * mult as f64;
                }
            }
            let v = s * weight;
            (v != 0.0).then(|| (tuple::pack(idx), v))
        })
        .collect();
    Ok(SymTensor::from_key_pairs(m, basis.dim(), pairs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::{gell_mann_basis, structure_constants};
    use crate::tensor::{symmetrize, DenseTensor};

    #[test]
    fn fourth_member_matches_dense_symmetrization() {
        let b = gell_mann_basis(3).unwrap();
        let sc = structure_constants(&b);
        let r = b.dim();
        let d4 = next_member(&b, &sc, sc.d_tensor(), 1e9).unwrap();
        let raw = DenseTensor::from_fn(4, r, |i| {
            (0..r).map(|p| sc.d(i[0], i[1], p) * sc.d(p, i[2], i[3])).sum()
        });
        let oracle = symmetrize(&raw);
        assert!(d4.max_abs_diff(&oracle) < 1e-14);
    }
}
