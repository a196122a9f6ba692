//! Symmetrized-trace identities for the adjoint, spinor, symmetric-square and
//! antisymmetric-square representations.

use crate::check::{relative_residual, Check};
use crate::context::SuN;
use crate::error::{Error, Result};
use crate::linalg::CMatrix;
use crate::reps::RepKind;
use crate::tensor::SymTensor;

use super::closed::spinor_dim;
use super::{build_rep, gdi_single_component, mixed_sym_trace_tensor, sym_trace_tensor};

const ABS: f64 = 1e-9;
const REL: f64 = 1e-8;

fn trace_tensor(alg: &SuN, mats: &[CMatrix], m: usize) -> Result<SymTensor> {
    let caps = &alg.config().caps;
    sym_trace_tensor(alg.basis(), mats, m, caps.trace_flops, caps.tensor_entries)
}

fn compare(name: impl Into<String>, got: &SymTensor, want: &SymTensor) -> Check {
    Check::new(name, relative_residual(got.max_abs_diff(want), want.max_abs()), ABS)
}

/// Least-squares coefficients of `target` on `basis`, with the largest entry
/// of the remainder.
pub fn fit_on(target: &SymTensor, basis: &[&SymTensor]) -> (Vec<f64>, f64) {
    let k = basis.len();
    let mut a = vec![vec![0.0; k + 1]; k];
    for i in 0..k {
        for j in 0..k {
            a[i][j] = basis[i].dot(basis[j]);
        }
        a[i][k] = basis[i].dot(target);
    }
    for col in 0..k {
        let pivot = (col..k)
            .max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))
            .expect("rows");
        a.swap(col, pivot);
        let p = a[col][col];
        let pivot_row = a[col].clone();
        for (row, r) in a.iter_mut().enumerate().take(k) {
            if row != col && p != 0.0 {
                let f = r[col] / p;
                for (x, y) in r[col..=k].iter_mut().zip(&pivot_row[col..=k]) {
                    *x -= f * y;
                }
            }
        }
    }
    let coefs: Vec<f64> = (0..k).map(|i| a[i][k] / a[i][i]).collect();
    let mut fitted = SymTensor::zero(target.rank(), target.dim());
    for (c, b) in coefs.iter().zip(basis) {
        fitted = fitted.lin_comb(1.0, b, *c);
    }
    (coefs, target.max_abs_diff(&fitted))
}

/// Matrices `(D_i)_jk = d_ijk`.
pub fn d_matrices(alg: &SuN) -> Vec<CMatrix> {
    let r = alg.dim();
    let sc = alg.constants();
    (0..r)
        .map(|i| CMatrix::from_fn(r, r, |j, k| num_complex::Complex64::new(sc.d(i, j, k), 0.0)))
        .collect()
}

/// Adjoint four- and five-fold traces, the spinor four-fold trace when the
/// spinor fits the caps, and the leading sixth-order adjoint coefficient for
/// `n >= 6`.
pub fn verify_trace_lemmas(alg: &SuN) -> Result<Vec<Check>> {
    let n = alg.n();
    let nf = n as f64;
    let r = alg.dim();
    let delta = SymTensor::delta(r);
    let dd = delta.sym_product(&delta);
    let mut out = Vec::new();
    let ad = build_rep(alg, &RepKind::Adjoint)?;

    if n <= 5 {
        let t4 = trace_tensor(alg, &ad.mats, 4)?;
        let want = alg.d_family(4)?.lin_comb(nf / 4.0, &dd, 2.0);
        out.push(compare(format!("adjoint 4-trace su({n})"), &t4, &want));

        let caps = &alg.config().caps;
        let mixed = mixed_sym_trace_tensor(alg.basis(), &ad.mats, &d_matrices(alg), 5, caps.tensor_entries)?;
        let d_delta = alg.d_family(3)?.sym_product(&delta);
        let want = alg.d_family(5)?.lin_comb(nf / 8.0, &d_delta, 1.0);
        out.push(compare(format!("adjoint 4-trace with d matrix su({n})"), &mixed, &want));
    } else {
        out.push(Check::skipped(format!("adjoint 4-trace su({n})"), "checked for n <= 5"));
    }

    match build_rep(alg, &RepKind::Spinor) {
        Ok(sp) => {
            let t4 = trace_tensor(alg, &sp.mats, 4)?;
            let dim = spinor_dim(n);
            let want = alg
                .d_family(4)?
                .lin_comb(-nf / 64.0 * dim, &dd, (3.0 * nf * nf - 8.0) / 64.0 * dim);
            out.push(compare(format!("spinor 4-trace su({n})"), &t4, &want));
        }
        Err(Error::CapExceeded { .. }) => out.push(Check::skipped(
            format!("spinor 4-trace su({n})"),
            "spinor exceeds the dimension cap",
        )),
        Err(e) => return Err(e),
    }

    if n >= 6 {
        // lower-order terms drop out of the antisymmetrized component
        let rep = gdi_single_component(alg, &ad, 6)?;
        let coef = rep.gdi_value / 32.0;
        out.push(
            Check::new(
                format!("adjoint 6-trace leading coefficient su({n})"),
                relative_residual((coef - nf / 16.0).abs(), nf / 16.0),
                REL,
            )
            .with_detail(format!("coefficient {coef:.12}, expected n/16")),
        );
    } else {
        out.push(Check::skipped(
            format!("adjoint 6-trace leading coefficient su({n})"),
            "needs a primitive sixth-order invariant, n >= 6",
        ));
    }
    Ok(out)
}

/// Quadratic, cubic and quartic trace normalizations of the symmetric square
/// and of the antisymmetric square.
pub fn verify_trace_normalizations(alg: &SuN) -> Result<Vec<Check>> {
    let n = alg.n();
    let nf = n as f64;
    let r = alg.dim();
    let delta = SymTensor::delta(r);
    let d = alg.d_family(3)?;
    let mut out = Vec::new();
    for (kind, sign) in [(RepKind::SymPower(2), 1.0), (RepKind::Fund(2), -1.0)] {
        let rep = build_rep(alg, &kind)?;
        let t2 = trace_tensor(alg, &rep.mats, 2)?;
        out.push(compare(
            format!("{kind} 2-trace su({n})"),
            &t2,
            &delta.scale((nf + 2.0 * sign) / 2.0),
        ));
        let t3 = trace_tensor(alg, &rep.mats, 3)?;
        out.push(compare(
            format!("{kind} 3-trace su({n})"),
            &t3,
            &d.scale((nf + 4.0 * sign) / 4.0),
        ));
        if n >= 4 {
            let t4 = trace_tensor(alg, &rep.mats, 4)?;
            let dd = delta.sym_product(&delta);
            let d4 = alg.d_family(4)?;
            let (coefs, rem) = fit_on(&t4, &[&d4, &dd]);
            let want = (nf + 8.0 * sign) / 8.0;
            let res = relative_residual((coefs[0] - want).abs(), want) + rem / t4.max_abs().max(1.0);
            out.push(
                Check::new(format!("{kind} 4-trace leading coefficient su({n})"), res, REL)
                    .with_detail(format!("d4 coefficient {:.12}, remainder {rem:.2e}", coefs[0])),
            );
        } else {
            out.push(Check::skipped(
                format!("{kind} 4-trace leading coefficient su({n})"),
                "d4 is not primitive for n = 3",
            ));
        }
    }
    Ok(out)
}
