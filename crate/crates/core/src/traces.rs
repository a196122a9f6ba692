//! Traces of (anti)symmetrized matrix products.
//!
//! The antisymmetrized trace uses a dynamic program over subsets: with
//! `P(S) = sum over orderings of S of sign * product`, appending the last
//! factor gives `P(S) = sum_{j in S} (-1)^{#{s in S : s > j}} P(S \ j) D_j`,
//! which costs about `k 2^(k-1)` products instead of `k!`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{frobenius_pair_unchecked, CMatrix, ZERO};
use crate::tensor::tuple;

fn check_square_chain(ms: &[&CMatrix]) -> Result<usize> {
    let first = ms
        .first()
        .ok_or_else(|| Error::Domain("trace of an empty product".into()))?;
    let d = first.rows();
    for m in ms {
        if m.shape() != (d, d) {
            return Err(Error::Shape {
                op: "trace",
                left: (d, d),
                right: m.shape(),
            });
        }
    }
    Ok(d)
}

/// Matrix products needed by the subset program for `k` factors.
pub fn antisym_trace_cost(k: usize) -> f64 {
    k as f64 * 2f64.powi(k as i32 - 1)
}

/// Unit-weight antisymmetrized trace `(1/k!) sum_sigma sgn(sigma) Tr(M_sigma(1) .. M_sigma(k))`.
pub fn antisym_trace(ms: &[&CMatrix]) -> Result<Complex64> {
    check_square_chain(ms)?;
    let k = ms.len();
    if k > 24 {
        return Err(Error::cap("antisymmetrized trace factors", k as f64, 24.0, ""));
    }
    if k == 1 {
        return ms[0].trace();
    }
    let full = (1usize << k) - 1;
    let mut table: Vec<Option<CMatrix>> = vec![None; 1 << k];
    for j in 0..k {
        table[1 << j] = Some(ms[j].clone());
    }
    for set in 1..full {
        let size = set.count_ones() as usize;
        if size < 2 || size == k {
            continue;
        }
        let mut acc: Option<CMatrix> = None;
        for j in 0..k {
            if set & (1 << j) == 0 {
                continue;
            }
            let above = (set >> (j + 1)).count_ones();
            let prev = table[set & !(1 << j)].as_ref().expect("filled in numeric order");
            let mut term = prev.mul_unchecked(ms[j]);
            if above % 2 == 1 {
                term = term.scale(Complex64::new(-1.0, 0.0));
            }
            acc = Some(match acc {
                None => term,
                Some(mut a) => {
                    a.axpy(Complex64::new(1.0, 0.0), &term).expect("same shape");
                    a
                }
            });
        }
        table[set] = acc;
    }
    let mut total = ZERO;
    for j in 0..k {
        let prev = table[full & !(1 << j)].as_ref().expect("filled");
        let t = frobenius_pair_unchecked(prev, ms[j]);
        let above = (k - 1 - j) as u32;
        total += if above % 2 == 1 { -t } else { t };
    }
    Ok(total / tuple::factorial(k))
}

/// Same quantity by the signed permutation sum with shared prefixes; `k!` leaves.
pub fn antisym_trace_by_permutations(ms: &[&CMatrix]) -> Result<Complex64> {
    let d = check_square_chain(ms)?;
    let k = ms.len();
    fn walk(ms: &[&CMatrix], used: &mut Vec<bool>, prefix: &CMatrix, sign: f64, depth: usize) -> Complex64 {
        let k = ms.len();
        if depth == k - 1 {
            let last = used.iter().position(|u| !u).expect("one left");
            return frobenius_pair_unchecked(prefix, ms[last]) * sign;
        }
        let mut s = ZERO;
        let mut skipped = 0.0;
        for j in 0..k {
            if used[j] {
                continue;
            }
            // choosing the (skipped+1)-th unused index moves it past `skipped` earlier ones
            let sgn = if skipped as usize % 2 == 1 { -sign } else { sign };
            used[j] = true;
            let next = prefix.mul_unchecked(ms[j]);
            s += walk(ms, used, &next, sgn, depth + 1);
            used[j] = false;
            skipped += 1.0;
        }
        s
    }
    if k == 1 {
        return ms[0].trace();
    }
    let mut used = vec![false; k];
    let total = walk(ms, &mut used, &CMatrix::identity(d), 1.0, 0);
    Ok(total / tuple::factorial(k))
}

/// Unit-weight symmetrized trace. By cyclicity the first factor stays fixed
/// and the distinct arrangements of the remaining factors are averaged.
pub fn sym_trace(ms: &[&CMatrix], idx: &[usize]) -> Result<Complex64> {
    let chain: Vec<&CMatrix> = idx.iter().map(|&i| ms[i]).collect();
    check_square_chain(&chain)?;
    let mut sorted = idx.to_vec();
    sorted.sort_unstable();
    let (first, rest) = sorted.split_first().expect("nonempty");
    let mut total = ZERO;
    let mut count = 0usize;
    let mut chain = Vec::with_capacity(idx.len());
    tuple::for_each_distinct_permutation(rest, |p| {
        chain.clear();
        chain.push(ms[*first]);
        chain.extend(p.iter().map(|&i| ms[i]));
        total += crate::linalg::trace_product(&chain).expect("checked");
        count += 1;
    });
    Ok(total / count as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis::gell_mann_basis;

    #[test]
    fn dp_matches_permutation_tree() {
        let b = gell_mann_basis(3).unwrap();
        for idx in [[0usize, 1, 2, 3, 4], [0, 3, 4, 5, 6], [7, 1, 2, 5, 6]] {
            let ms: Vec<&CMatrix> = idx.iter().map(|&i| b.lambda(i)).collect();
            let a = antisym_trace(&ms).unwrap();
            let t = antisym_trace_by_permutations(&ms).unwrap();
            assert!((a - t).norm() < 1e-13, "{a} vs {t}");
        }
    }

    #[test]
    fn antisym_of_three_gell_mann_is_two_i_f() {
        let b = gell_mann_basis(3).unwrap();
        let ms = [b.lambda(0), b.lambda(1), b.lambda(2)];
        let v = antisym_trace(&ms).unwrap();
        assert!((v - Complex64::new(0.0, 2.0)).norm() < 1e-14);
    }

    #[test]
    fn repeated_factor_gives_zero() {
        let b = gell_mann_basis(3).unwrap();
        let ms = [b.lambda(0), b.lambda(3), b.lambda(0)];
        assert!(antisym_trace(&ms).unwrap().norm() < 1e-14);
    }

    #[test]
    fn sym_trace_of_two_is_plain_trace() {
        let b = gell_mann_basis(3).unwrap();
        let v = sym_trace(b.lambdas().iter().collect::<Vec<_>>().as_slice(), &[4, 4]).unwrap();
        assert!((v.re - 2.0).abs() < 1e-14);
    }
}
