//! Racah-Casimir eigenvalues and generalized Dynkin indices.
//!
//! Two independent routes:
//! * symmetric trace: `c = (1/dim) t^(m) . Tr D_(k1 .. D_km)`, then
//!   `gdi = 2^(m-1) dim c / |Omega^(2m-1)|^2` with the closed-form norm;
//! * single component: `gdi = Tr D_[x] / ((i/4)^(m-1) Omega_x)` at one tuple `x`
//!   of length `2m-1`, which never needs `t^(m)` or the full Omega tensor.

pub mod closed;
pub mod component;
pub mod lemmas;
pub mod symtrace;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::check::{relative_residual, Check};
use crate::context::SuN;
use crate::error::{Error, Result};
use crate::invariants::omega_norm_closed_form;
use crate::linalg::CMatrix;
use crate::reps::{self, Representation};
use crate::tensor::tuple;

pub use closed::ClosedForm;
pub use component::{antisym_trace_component, OmegaSource, PickedTuple, EPS_PICK};
pub use symtrace::{mixed_sym_trace_tensor, sym_trace_tensor, ChainTracer};

/// Default integrality tolerance, relative to `max(1, |gdi|)`.
pub const EPS_INT: f64 = 1e-4;
const ODD_ABS: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    SymmetricTrace,
    AntisymComponent,
    ClosedForm,
}

/// Route request; `Auto` takes the symmetric-trace route whenever `t^(m)`
/// and the traces fit the caps, the single-component route otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RouteChoice {
    SymmetricTrace,
    AntisymComponent,
    Both,
    #[default]
    Auto,
}

impl std::str::FromStr for RouteChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "sym" | "symmetric-trace" => RouteChoice::SymmetricTrace,
            "component" | "antisym-component" => RouteChoice::AntisymComponent,
            "both" => RouteChoice::Both,
            "auto" => RouteChoice::Auto,
            _ => return Err(Error::Domain(format!("unknown route {s:?}"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IndexReport {
    pub n: usize,
    pub m: usize,
    pub rep: String,
    pub dim: usize,
    pub c_value: f64,
    pub gdi_value: f64,
    pub gdi_rounded: i64,
    pub route: Route,
    /// Distance of `gdi_value` from the nearest integer.
    pub residual: f64,
    /// `|gdi_sym - gdi_component|` when both routes ran.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cross_route_residual: Option<f64>,
    /// Imaginary part left in the eigenvalue or component ratio.
    pub imaginary_residual: f64,
    /// The Casimir of this order does not exist for su(n), `m > n`.
    pub absent: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tuple: Option<PickedTuple>,
}

impl IndexReport {
    fn new(n: usize, m: usize, rep: &Representation, c: f64, gdi: f64, route: Route, imag: f64) -> Self {
        let rounded = gdi.round();
        IndexReport {
            n,
            m,
            rep: rep.name(),
            dim: rep.dim(),
            c_value: c,
            gdi_value: gdi,
            gdi_rounded: rounded as i64,
            route,
            residual: (gdi - rounded).abs(),
            cross_route_residual: None,
            imaginary_residual: imag,
            absent: false,
            tuple: None,
        }
    }

    fn absent(n: usize, m: usize, rep: &Representation, route: Route) -> Self {
        IndexReport {
            absent: true,
            ..IndexReport::new(n, m, rep, 0.0, 0.0, route, 0.0)
        }
    }

    /// Integrality and cross-route agreement within `EPS_INT * max(1, |gdi|)`.
    pub fn is_consistent(&self) -> bool {
        let tol = EPS_INT * self.gdi_value.abs().max(1.0);
        self.residual < tol && self.cross_route_residual.is_none_or(|x| x < tol)
    }
}

/// Eigenvalue of the order-`m` Casimir on an irreducible (or isotypic) representation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Eigenvalue {
    pub value: f64,
    pub imaginary: f64,
    pub absent: bool,
}

fn check_rep(alg: &SuN, rep: &Representation) -> Result<()> {
    if rep.n != alg.n() || rep.mats.len() != alg.dim() {
        return Err(Error::Domain(format!(
            "representation {} of su({}) used with su({})",
            rep.name(),
            rep.n,
            alg.n()
        )));
    }
    Ok(())
}

/// Builds a representation of `alg` under its caps.
pub fn build_rep(alg: &SuN, kind: &reps::RepKind) -> Result<Representation> {
    let caps = &alg.config().caps;
    reps::build(kind, alg.basis(), alg.constants(), caps.rep_dim, caps.spinor_dim)
}

/// Flop estimate of the symmetric-trace route, or `None` when `t^(m)` is out of reach.
pub fn symmetric_route_cost(alg: &SuN, rep: &Representation, m: usize) -> Option<f64> {
    if m > alg.n() {
        return Some(0.0);
    }
    if !alg.t_tensor_feasible(m) {
        return None;
    }
    Some(symtrace::sym_trace_tensor_cost(&rep.mats, m))
}

/// `c^(m)(D) = (1/dim D) t^(m)_(K) Tr D_(K)`, summed over the support of `t`.
pub fn casimir_eigenvalue(alg: &SuN, rep: &Representation, m: usize) -> Result<Eigenvalue> {
    check_rep(alg, rep)?;
    if m < 2 {
        return Err(Error::Domain(format!("Casimir orders start at 2, got {m}")));
    }
    if m > alg.n() {
        return Ok(Eigenvalue {
            value: 0.0,
            imaginary: 0.0,
            absent: true,
        });
    }
    let t = alg.t_tensor(m)?;
    let tracer = ChainTracer::new(&rep.mats, m >= 3);
    let cost = tracer.cost(m, t.body.len() as f64) + tracer.setup_cost();
    let cap = alg.config().caps.trace_flops;
    if cost > cap {
        return Err(Error::cap(
            format!("symmetric traces of {} at order {m}", rep.name()),
            cost,
            cap,
            "; use the antisymmetrized single-component route",
        ));
    }
    let entries: Vec<(Vec<usize>, f64)> = t.body.entries().collect();
    let total: Complex64 = entries
        .par_iter()
        .map(|(k, tv)| tracer.sym_trace(k) * (tuple::multiplicity(k) * tv))
        .sum();
    let total = total / rep.dim() as f64;
    Ok(Eigenvalue {
        value: total.re,
        imaginary: total.im.abs(),
        absent: false,
    })
}

/// `gdi = 2^(m-1) dim c / |Omega^(2m-1)|^2` with `c` from the symmetric-trace route.
pub fn gdi_from_eigenvalue(alg: &SuN, rep: &Representation, m: usize) -> Result<IndexReport> {
    let ev = casimir_eigenvalue(alg, rep, m)?;
    if ev.absent {
        return Ok(IndexReport::absent(alg.n(), m, rep, Route::SymmetricTrace));
    }
    let norm = omega_norm_closed_form(alg.n(), m);
    let gdi = 2f64.powi(m as i32 - 1) * rep.dim() as f64 * ev.value / norm;
    Ok(IndexReport::new(
        alg.n(),
        m,
        rep,
        ev.value,
        gdi,
        Route::SymmetricTrace,
        ev.imaginary,
    ))
}

/// `gdi = Tr D_[x] / ((i/4)^(m-1) Omega_x)` at the robust tuple for this order.
pub fn gdi_single_component(alg: &SuN, rep: &Representation, m: usize) -> Result<IndexReport> {
    check_rep(alg, rep)?;
    if m < 2 {
        return Err(Error::Domain(format!("Casimir orders start at 2, got {m}")));
    }
    if m > alg.n() {
        return Ok(IndexReport::absent(alg.n(), m, rep, Route::AntisymComponent));
    }
    let picked = alg.robust_tuple(m)?;
    let tr = antisym_trace_component(&rep.mats, &picked.indices, alg.config().caps.trace_flops)?;
    let denom = Complex64::new(0.0, 0.25).powu(m as u32 - 1) * picked.omega;
    let ratio = tr / denom;
    let gdi = ratio.re;
    let norm = omega_norm_closed_form(alg.n(), m);
    let c = 2f64.powi(1 - m as i32) * gdi * norm / rep.dim() as f64;
    let mut report = IndexReport::new(alg.n(), m, rep, c, gdi, Route::AntisymComponent, ratio.im.abs());
    report.tuple = Some((*picked).clone());
    Ok(report)
}

/// Index by the requested route. With `Both`, the symmetric-trace values are
/// reported and the component route supplies `cross_route_residual`.
pub fn compute_index(alg: &SuN, rep: &Representation, m: usize, choice: RouteChoice) -> Result<IndexReport> {
    match choice {
        RouteChoice::SymmetricTrace => gdi_from_eigenvalue(alg, rep, m),
        RouteChoice::AntisymComponent => gdi_single_component(alg, rep, m),
        RouteChoice::Both => {
            let mut sym = gdi_from_eigenvalue(alg, rep, m)?;
            let comp = gdi_single_component(alg, rep, m)?;
            sym.cross_route_residual = Some((sym.gdi_value - comp.gdi_value).abs());
            sym.tuple = comp.tuple;
            Ok(sym)
        }
        RouteChoice::Auto => {
            let affordable = symmetric_route_cost(alg, rep, m).is_some_and(|c| c <= alg.config().caps.trace_flops);
            if affordable {
                gdi_from_eigenvalue(alg, rep, m)
            } else {
                gdi_single_component(alg, rep, m)
            }
        }
    }
}

/// `c^(m)(conj D) = (-1)^m c^(m)(D)`, and odd orders vanish on self-conjugate
/// representations.
pub fn conjugation_check(alg: &SuN, rep: &Representation, m: usize, choice: RouteChoice) -> Result<Vec<Check>> {
    let conj = reps::conjugate_rep(rep);
    let a = compute_index(alg, rep, m, choice)?;
    let b = compute_index(alg, &conj, m, choice)?;
    let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
    let scale = a.c_value.abs().max(1.0);
    let mut out = vec![Check::new(
        format!("conjugation sign m={m} {}", rep.name()),
        (b.c_value - sign * a.c_value).abs() / scale,
        alg.config().tolerance.rel,
    )
    .with_detail(format!("c = {:.12}, c(conj) = {:.12}", a.c_value, b.c_value))];
    if m % 2 == 1 && rep.kind.is_self_conjugate(alg.n()) {
        out.push(Check::new(
            format!("odd order vanishes m={m} {}", rep.name()),
            a.c_value.abs(),
            ODD_ABS,
        ));
    }
    Ok(out)
}

/// The operator `t^(m)_(K) D_k1 .. D_km` as a matrix.
pub fn casimir_operator(alg: &SuN, rep: &Representation, m: usize) -> Result<CMatrix> {
    check_rep(alg, rep)?;
    let t = alg.t_tensor(m)?;
    let d = rep.dim();
    let mut op = CMatrix::zeros(d, d);
    for (k, tv) in t.body.entries() {
        tuple::for_each_distinct_permutation(&k, |w| {
            let mut prod = rep.mats[w[0]].clone();
            for &i in &w[1..] {
                prod = prod.mul_unchecked(&rep.mats[i]);
            }
            op.axpy(Complex64::new(tv, 0.0), &prod).expect("same shape");
        });
    }
    Ok(op)
}

/// `(max off-diagonal, spread of the diagonal)` of a matrix.
pub fn scalarity(op: &CMatrix) -> (f64, f64) {
    let d = op.rows();
    let mut off = 0.0f64;
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for i in 0..d {
        for j in 0..d {
            let z = op[(i, j)];
            if i == j {
                lo = lo.min(z.re);
                hi = hi.max(z.re);
                off = off.max(z.im.abs());
            } else {
                off = off.max(z.norm());
            }
        }
    }
    (off, hi - lo)
}

/// Computed `c^(p)(ad)` against `2^(p-1)/(2p-2)! n^2 prod_{k=2}^{p-1}(n^2-k^2)`.
pub fn adjoint_conjecture(alg: &SuN, p: usize, choice: RouteChoice) -> Result<Check> {
    let ad = build_rep(alg, &reps::RepKind::Adjoint)?;
    let got = compute_index(alg, &ad, p, choice)?;
    let want = ClosedForm::AdjointEigenvalue { m: p }.evaluate(alg.n())?;
    Ok(Check::new(
        format!("adjoint eigenvalue conjecture p={p} su({})", alg.n()),
        relative_residual((got.c_value - want).abs(), want),
        1e-6,
    )
    .with_detail(format!("computed {:.10}, formula {:.10}", got.c_value, want)))
}
