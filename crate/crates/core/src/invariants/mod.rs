//! The symmetric d family, the antisymmetric Omega tensors and the
//! symmetric, traceless, mutually orthogonal t tensors, with the identities
//! relating them.

pub mod dfamily;
pub(crate) mod omega;
pub(crate) mod ttensor;

pub use dfamily::next_member as d_family_next;
pub use omega::{
    build_omega_with, omega_component_from_lambdas, omega_component_with, omega_from_lambdas, omega_norm_closed_form,
    omega_norm_short_recursion, OmegaTensor,
};
pub use ttensor::{build_t, t_component_unsymmetrized, TTensor};

use crate::check::{relative_residual, Check};
use crate::context::SuN;
use crate::error::Result;
use crate::tensor::{contract, ContractionPlan, DenseTensor, SymTensor, Symmetry, TensorView};

const REL: f64 = 1e-8;
const ABS: f64 = 1e-9;

/// Closed forms of `t^(m)` in terms of the d family, for `m <= 5`.
pub fn t_closed_form(alg: &SuN, m: usize) -> Result<Option<SymTensor>> {
    let n = alg.n() as f64;
    let r = alg.dim();
    let delta = SymTensor::delta(r);
    Ok(match m {
        2 => Some(delta.scale(n)),
        3 => Some(alg.d_family(3)?.scale(n * n / 3.0)),
        4 => {
            let dd = delta.sym_product(&delta);
            Some(
                alg.d_family(4)?
                    .lin_comb(n * (n * n + 1.0) / 15.0, &dd, -2.0 * (n * n - 4.0) / 15.0),
            )
        }
        5 => {
            let d_delta = alg.d_family(3)?.sym_product(&delta);
            Some(alg.d_family(5)?.lin_comb(
                n / 135.0 * n * (n * n + 5.0),
                &d_delta,
                -n / 135.0 * 2.0 * (3.0 * n * n - 20.0),
            ))
        }
        _ => None,
    })
}

fn dense_diff(a: &DenseTensor, b: &dyn TensorView) -> (f64, f64) {
    let b = DenseTensor::from_view(b);
    (a.max_abs_diff(&b), b.max_abs())
}

fn contract_dense(a: &dyn TensorView, b: &dyn TensorView, slots: usize) -> Result<DenseTensor> {
    let plan = ContractionPlan::new((0..slots).map(|s| (s, s)).collect(), Symmetry::None);
    Ok(match contract(a, b, &plan)? {
        crate::tensor::ContractOutput::Scalar(v) => DenseTensor::from_fn(0, a.dim(), |_| v),
        other => other.into_dense().expect("non-scalar"),
    })
}

/// Closed forms, tracelessness, partial contractions, orthogonality and
/// squared norms of the t tensors, for every order computable under the caps.
pub fn verify_t_identities(alg: &SuN) -> Result<Vec<Check>> {
    let n = alg.n();
    let nf = n as f64;
    let mut out = Vec::new();
    let top = n.min(5);
    let mut ts = Vec::new();
    for m in 2..=top {
        if !alg.t_tensor_feasible(m) {
            out.push(Check::skipped(format!("t{m} closed form"), "exceeds tensor caps"));
            continue;
        }
        let t = alg.t_tensor(m)?;
        let expected = t_closed_form(alg, m)?.expect("m <= 5");
        let res = relative_residual(t.body.max_abs_diff(&expected), expected.max_abs());
        let ratio = t.body.dot(&expected) / expected.norm_sq();
        out.push(
            Check::new(format!("t{m} closed form"), res, REL)
                .with_detail(format!("computed / closed form = {ratio:.12}")),
        );
        ts.push(t);
    }

    let d = alg.d_family(3)?;
    let d4 = alg.d_family(4)?;
    // d^(4)_ijkl d_ijm = (2/3)(n^2-8)/n d_klm
    let lhs = contract_dense(&*d4, &*d, 2)?;
    let (diff, scale) = dense_diff(&lhs, &d.scale(2.0 / 3.0 * (nf * nf - 8.0) / nf));
    out.push(Check::new("d4 d partial trace", relative_residual(diff, scale), REL));

    let d8_coef = 2.0 / 45.0 * nf * nf * (nf * nf - 9.0);
    let t4 = ts.iter().find(|t| t.m == 4);
    match t4 {
        Some(t4) => {
            let scale = t4.body.max_abs();
            let tr = contract_dense(&t4.body, &SymTensor::delta(alg.dim()), 2)?;
            out.push(Check::new("t4 delta trace", tr.max_abs() / scale.max(1.0), ABS));
            let td = contract_dense(&t4.body, &*d, 3)?;
            out.push(Check::new("t4 d full trace", td.max_abs() / scale.max(1.0), ABS));
            let lhs = contract_dense(&t4.body, &*d, 2)?;
            let (diff, s) = dense_diff(&lhs, &d.scale(d8_coef));
            out.push(Check::new("t4 d partial trace", relative_residual(diff, s), REL));
        }
        None if n == 3 => {
            // the order-4 closed form evaluated at n = 3 must be annihilated by d
            let formula = t_closed_form(alg, 4)?.expect("m = 4");
            let lhs = contract_dense(&formula, &*d, 2)?;
            out.push(
                Check::new("t4 d partial trace", lhs.max_abs(), ABS)
                    .with_detail("t4 absent; checked on its d-family expression, coefficient 0 at n = 3"),
            );
        }
        None => out.push(Check::skipped("t4 d partial trace", "t4 unavailable")),
    }

    for (a, ta) in ts.iter().enumerate() {
        for tb in &ts[a + 1..] {
            let c = contract_dense(&tb.body, &ta.body, ta.m)?;
            let scale = ta.body.max_abs() * tb.body.max_abs();
            out.push(Check::new(
                format!("t{} t{} orthogonality", tb.m, ta.m),
                c.max_abs() / scale.max(1.0),
                ABS,
            ));
        }
    }

    for t in &ts {
        let sq = t.body.norm_sq();
        let c = Check::new(
            format!("t{} squared norm positive", t.m),
            if sq > 0.0 { 0.0 } else { 1.0 },
            0.0,
        );
        out.push(c.with_detail(format!("{sq:.12e}")));
    }
    if n < 6 {
        let om = alg.omega(n + 1);
        match om {
            Ok(om) => out.push(
                Check::new(format!("Omega order {} vanishes", n + 1), om.vanishing_residual, ABS)
                    .with_detail("t absent beyond the rank"),
            ),
            Err(e) => out.push(Check::skipped(format!("Omega order {} vanishes", n + 1), e.to_string())),
        }
    }
    Ok(out)
}

/// Expressions of `d^(4)`, `d^(5)` through lower members that hold at small n.
pub fn nonprimitive_expression(alg: &SuN, m: usize) -> Result<Option<SymTensor>> {
    let r = alg.dim();
    let delta = SymTensor::delta(r);
    Ok(match (alg.n(), m) {
        (3, 4) => Some(delta.sym_product(&delta).scale(1.0 / 3.0)),
        (3, 5) => Some(alg.d_family(3)?.sym_product(&delta).scale(1.0 / 3.0)),
        (4, 5) => Some(alg.d_family(3)?.sym_product(&delta).scale(2.0 / 3.0)),
        _ => None,
    })
}

/// The expression matches `d^(m)` and yields a vanishing Omega when used in
/// its place.
pub fn verify_nonprimitive(alg: &SuN, m: usize) -> Result<Vec<Check>> {
    let Some(expr) = nonprimitive_expression(alg, m)? else {
        return Ok(vec![Check::skipped(
            format!("d{m} reduction at su({})", alg.n()),
            "no reduction known",
        )]);
    };
    let dm = alg.d_family(m)?;
    let res = relative_residual(dm.max_abs_diff(&expr), expr.max_abs());
    let om = build_omega_with(alg.basis(), alg.constants(), &expr, alg.config().caps.tensor_entries)?;
    Ok(vec![
        Check::new(format!("d{m} reduction at su({})", alg.n()), res, REL),
        Check::new(
            format!("Omega from reduced d{m} at su({}) vanishes", alg.n()),
            om.max_abs(),
            ABS,
        ),
    ])
}
