use num_complex::Complex64;
use rayon::prelude::*;

use crate::basis::{GellMannBasis, StructureConstants};
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::tensor::tuple::{self, Key};
use crate::tensor::{AltTensor, SymTensor};
use crate::traces::antisym_trace;

use super::dfamily::admissible_tuples;

/// `Omega^(2m-1)` for one algebra; `absent` marks orders beyond the rank,
/// whose body is the zero tensor.
#[derive(Clone, Debug)]
pub struct OmegaTensor {
    pub n: usize,
    pub m: usize,
    pub body: AltTensor,
    pub absent: bool,
    /// Largest entry actually produced by the construction when `absent`.
    pub vanishing_residual: f64,
}

impl OmegaTensor {
    pub fn norm_sq(&self) -> f64 {
        self.body.norm_sq()
    }
}

/// `(2^(2m-3) / (2m-2)!) n prod_{q=1}^{m-1} (n^2 - q^2)`; zero for `m > n`.
pub fn omega_norm_closed_form(n: usize, m: usize) -> f64 {
    assert!(m >= 2, "order must be at least 2");
    let nf = n as f64;
    let prod: f64 = (1..m).map(|q| nf * nf - (q * q) as f64).product();
    2f64.powi(2 * m as i32 - 3) / tuple::factorial(2 * m - 2) * nf * prod
}

/// Norm obtained by iterating `|Omega^(2m-1)|^2 = 4/((2m-2)(2m-3)) |Omega^(2m-3)|^2`
/// from `|f|^2 = n(n^2-1)`. Kept only to document that this ratio lacks the
/// `n^2 - (m-1)^2` growth factor of the closed form.
pub fn omega_norm_short_recursion(n: usize, m: usize) -> f64 {
    let nf = n as f64;
    let mut v = nf * (nf * nf - 1.0);
    for k in 3..=m {
        v *= 4.0 / (((2 * k - 2) * (2 * k - 3)) as f64);
    }
    v
}

/// Weight of one perfect matching after collapsing the `(2m-2)!` alternation:
/// `2^(m-1) (m-1)! / (2m-2)!`.
pub(crate) fn matching_weight(m: usize) -> f64 {
    2f64.powi(m as i32 - 1) * tuple::factorial(m - 1) / tuple::factorial(2 * m - 2)
}

type FRow<'a> = &'a [(usize, f64)];

/// Visits every perfect matching of the sorted slice `rem` whose pairs all
/// have nonempty f-rows, passing the matching sign and the rows.
fn for_each_matching<'a>(
    sc: &'a StructureConstants,
    rem: &[usize],
    rows: &mut Vec<FRow<'a>>,
    sign: f64,
    f: &mut dyn FnMut(f64, &[FRow<'a>]),
) {
    if rem.is_empty() {
        f(sign, rows);
        return;
    }
    let p = rem[0];
    for t in 1..rem.len() {
        let q = rem[t];
        let row = sc.f_row(p, q);
        if row.is_empty() {
            continue;
        }
        let s = if t % 2 == 0 { -sign } else { sign };
        let next: Vec<usize> = rem[1..t].iter().chain(&rem[t + 1..]).copied().collect();
        rows.push(row);
        for_each_matching(sc, &next, rows, s, f);
        rows.pop();
    }
}

/// One raw component of the construction with `dm` in place of `d^(m)`:
/// the first `2m-2` slots are alternated, the last slot contracts into `dm`.
pub fn omega_component_with(sc: &StructureConstants, dm: &SymTensor, raw: &[usize]) -> f64 {
    let m = dm.rank();
    assert_eq!(raw.len(), 2 * m - 1, "tuple length must be 2m-1");
    let k = raw[2 * m - 2];
    let mut x = raw[..2 * m - 2].to_vec();
    let outer = tuple::sort_with_parity(&mut x);
    if outer == 0 {
        return 0.0;
    }
    let mut total = 0.0;
    let mut slots = vec![0usize; m];
    let mut rows = Vec::with_capacity(m - 1);
    for_each_matching(sc, &x, &mut rows, 1.0, &mut |sign, rows| {
        total += sign * contract_rows(dm, rows, k, &mut slots);
    });
    outer as f64 * matching_weight(m) * total
}

/// `sum_a prod_s row_s[a_s] * dm[a_1 .. a_{m-1}, k]`.
fn contract_rows(dm: &SymTensor, rows: &[&[(usize, f64)]], k: usize, slots: &mut [usize]) -> f64 {
    fn rec(dm: &SymTensor, rows: &[&[(usize, f64)]], depth: usize, coef: f64, slots: &mut [usize]) -> f64 {
        if depth == rows.len() {
            return coef * dm.get(slots);
        }
        rows[depth]
            .iter()
            .map(|&(a, fv)| {
                slots[depth] = a;
                rec(dm, rows, depth + 1, coef * fv, slots)
            })
            .sum()
    }
    let last = slots.len() - 1;
    slots[last] = k;
    rec(dm, rows, 0, 1.0, slots)
}

/// All canonical entries of the construction with `dm` in place of `d^(m)`.
pub fn build_omega_with(
    basis: &GellMannBasis,
    sc: &StructureConstants,
    dm: &SymTensor,
    entry_cap: f64,
) -> Result<AltTensor> {
    let m = dm.rank();
    let rank = 2 * m - 1;
    let r = basis.dim();
    if rank > r {
        return Ok(AltTensor::zero(rank, r));
    }
    let tuples = admissible_tuples(
        basis,
        rank,
        true,
        (m - 1) % 2,
        entry_cap,
        &format!("Omega^({rank}) canonical entries; use single components instead"),
    )?;
    let pairs: Vec<(Key, f64)> = tuples
        .par_iter()
        .filter_map(|t| {
            let v = omega_component_with(sc, dm, t);
            (v != 0.0).then(|| (tuple::pack(t), v))
        })
        .collect();
    Ok(AltTensor::from_key_pairs(rank, r, pairs))
}

/// Refuses single components whose alternation exceeds `factorial_cap` terms.
pub(crate) fn check_component_cost(m: usize, factorial_cap: f64) -> Result<()> {
    let terms = tuple::factorial(2 * m - 2);
    if terms > factorial_cap {
        return Err(Error::cap(
            format!("Omega^({}) alternation terms", 2 * m - 1),
            terms,
            factorial_cap,
            "",
        ));
    }
    Ok(())
}

/// `Tr lambda_[x]` divided by `2 i^(m-1)`, with the leftover imaginary part.
pub fn omega_component_from_lambdas(basis: &GellMannBasis, raw: &[usize]) -> Result<(f64, f64)> {
    if raw.len().is_multiple_of(2) {
        return Err(Error::Domain(format!(
            "Omega components have odd rank, got {}",
            raw.len()
        )));
    }
    let m = raw.len().div_ceil(2);
    let ms: Vec<&CMatrix> = raw.iter().map(|&i| basis.lambda(i)).collect();
    let tr = antisym_trace(&ms)?;
    let v = tr / (Complex64::new(0.0, 1.0).powu(m as u32 - 1) * 2.0);
    Ok((v.re, v.im.abs()))
}

/// Full tensor from antisymmetrized lambda traces, with the largest imaginary residue.
pub fn omega_from_lambdas(basis: &GellMannBasis, m: usize, entry_cap: f64) -> Result<(AltTensor, f64)> {
    let rank = 2 * m - 1;
    let r = basis.dim();
    if rank > r {
        return Ok((AltTensor::zero(rank, r), 0.0));
    }
    let tuples = admissible_tuples(basis, rank, true, (m - 1) % 2, entry_cap, "Omega canonical entries")?;
    let results: Vec<Result<(Key, f64, f64)>> = tuples
        .par_iter()
        .map(|t| omega_component_from_lambdas(basis, t).map(|(v, im)| (tuple::pack(t), v, im)))
        .collect();
    let mut pairs = Vec::with_capacity(results.len());
    let mut worst_im = 0.0f64;
    for res in results {
        let (k, v, im) = res?;
        worst_im = worst_im.max(im);
        pairs.push((k, v));
    }
    Ok((AltTensor::from_key_pairs(rank, r, pairs), worst_im))
}
