//! Verification suites, organised by acceptance criterion. Each tier runs all
//! ten criteria, restricted to the algebras the tier covers.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use sun_casimir::casimir::lemmas::{verify_trace_lemmas, verify_trace_normalizations};
use sun_casimir::casimir::{
    adjoint_conjecture, build_rep, casimir_eigenvalue, compute_index, symmetric_route_cost, ClosedForm, IndexReport,
    RouteChoice, EPS_INT,
};
use sun_casimir::check::relative_residual;
use sun_casimir::invariants::{omega_from_lambdas, omega_norm_closed_form, verify_nonprimitive, verify_t_identities};
use sun_casimir::reps::RepKind;
use sun_casimir::{ArtifactStore, Check, Config, Status, SuN};

use crate::config::Tier;
use crate::table::compute_table;

const ABS: f64 = 1e-9;
const REL: f64 = 1e-8;

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "basis identities"),
    (2, "Omega closed form"),
    (3, "t-tensor contract"),
    (4, "non-primitivity"),
    (5, "defining-rep indices"),
    (6, "adjoint"),
    (7, "spinor"),
    (8, "symmetric powers"),
    (9, "tables"),
    (10, "property suite"),
];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: String,
    pub elapsed_secs: f64,
    pub checks: Vec<Check>,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    /// `PASS|FAIL criterion N (title): p passed, f failed, s skipped`.
    pub fn summary_line(&self) -> String {
        let count = |s: Status| self.checks.iter().filter(|c| c.status == s).count();
        format!(
            "{} criterion {} ({}): {} passed, {} failed, {} skipped in {:.1}s",
            if self.passed() { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Skipped),
            self.elapsed_secs
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub tier: Tier,
    pub passed: bool,
    pub criteria: Vec<CriterionReport>,
}

/// Lazily constructed algebras sharing one configuration and store.
pub struct Workbench {
    config: Config,
    store: Option<Arc<dyn ArtifactStore>>,
    algebras: BTreeMap<usize, Arc<SuN>>,
}

impl Workbench {
    pub fn new(config: Config, store: Option<Arc<dyn ArtifactStore>>) -> Self {
        Workbench {
            config,
            store,
            algebras: BTreeMap::new(),
        }
    }

    pub fn alg(&mut self, n: usize) -> sun_casimir::Result<Arc<SuN>> {
        if let Some(a) = self.algebras.get(&n) {
            return Ok(a.clone());
        }
        let mut alg = SuN::with_config(n, self.config.clone())?;
        if let Some(store) = &self.store {
            alg = alg.with_store(store.clone());
        }
        let alg = Arc::new(alg);
        self.algebras.insert(n, alg.clone());
        Ok(alg)
    }
}

fn rel_check(name: impl Into<String>, got: f64, want: f64, tol: f64) -> Check {
    Check::new(name, relative_residual((got - want).abs(), want), tol)
        .with_detail(format!("got {got:.12}, want {want}"))
}

/// Integer index check: the value is within `EPS_INT` of the expected integer
/// and of its own rounding.
fn index_check(name: impl Into<String>, r: &IndexReport, want: f64) -> Check {
    let tol = EPS_INT * want.abs().max(1.0);
    let res = (r.gdi_value - want)
        .abs()
        .max(r.residual)
        .max(r.cross_route_residual.unwrap_or(0.0));
    Check::new(name, res, tol).with_detail(format!("gdi {:.9} by {:?}, want {want}", r.gdi_value, r.route))
}

fn ns(tier: Tier, lo: usize, hi: usize) -> impl Iterator<Item = usize> {
    lo..=hi.min(tier.max_n())
}

pub fn run_criterion(id: u8, tier: Tier, bench: &mut Workbench) -> CriterionReport {
    let title = CRITERIA
        .iter()
        .find(|c| c.0 == id)
        .map_or("unknown", |c| c.1)
        .to_string();
    let start = Instant::now();
    let mut checks = Vec::new();
    let result = match id {
        1 => basis_identities(bench, &mut checks),
        2 => omega_closed_form(tier, bench, &mut checks),
        3 => t_contract(tier, bench, &mut checks),
        4 => non_primitivity(bench, &mut checks),
        5 => defining(tier, bench, &mut checks),
        6 => adjoint(tier, bench, &mut checks),
        7 => spinor(tier, bench, &mut checks),
        8 => symmetric_powers(tier, bench, &mut checks),
        9 => tables(tier, bench, &mut checks),
        10 => properties(tier, bench, &mut checks),
        _ => Err(sun_casimir::Error::Domain(format!("no criterion {id}"))),
    };
    if let Err(e) = result {
        checks.push(Check::new(format!("criterion {id} aborted"), f64::INFINITY, 0.0).with_detail(e.to_string()));
    }
    CriterionReport {
        id,
        title,
        elapsed_secs: start.elapsed().as_secs_f64(),
        checks,
    }
}

pub fn run_suite(tier: Tier, bench: &mut Workbench, mut progress: impl FnMut(&CriterionReport)) -> SuiteReport {
    let criteria: Vec<CriterionReport> = CRITERIA
        .iter()
        .map(|&(id, _)| {
            let r = run_criterion(id, tier, bench);
            progress(&r);
            r
        })
        .collect();
    SuiteReport {
        tier,
        passed: criteria.iter().all(CriterionReport::passed),
        criteria,
    }
}

type Out<'a> = &'a mut Vec<Check>;

fn basis_identities(bench: &mut Workbench, out: Out) -> sun_casimir::Result<()> {
    for n in 3..=6 {
        let alg = bench.alg(n)?;
        let (b, sc) = (alg.basis(), alg.constants());
        let nf = n as f64;
        out.push(Check::new(
            format!("su({n}) traces and normalization"),
            b.trace_residual(),
            ABS,
        ));
        out.push(Check::new(
            format!("su({n}) hermiticity"),
            b.hermiticity_residual(),
            ABS,
        ));
        out.push(Check::new(
            format!("su({n}) product reconstruction"),
            b.product_residual(sc),
            ABS,
        ));
        out.push(Check::new(
            format!("su({n}) Jacobi identity"),
            sc.jacobi_residual(),
            ABS,
        ));
        out.push(Check::new(format!("su({n}) f f = n delta"), sc.ff_residual() / nf, REL));
        let want = nf * (nf * nf - 1.0);
        out.push(rel_check(
            format!("su({n}) Omega3 squared norm"),
            sc.f_tensor().norm_sq(),
            want,
            REL,
        ));
    }
    Ok(())
}

fn omega_closed_form(tier: Tier, bench: &mut Workbench, out: Out) -> sun_casimir::Result<()> {
    let mut cases = vec![(3, 2, 24.0), (3, 3, 40.0), (4, 2, 60.0), (4, 3, 240.0), (4, 4, 224.0)];
    if tier >= Tier::Extended {
        cases.extend((2..=4).map(|m| (5, m, omega_norm_closed_form(5, m))));
    }
    for (n, m, want) in cases {
        let alg = bench.alg(n)?;
        let om = alg.omega(m)?;
        out.push(rel_check(
            format!("su({n}) Omega order {m} squared norm"),
            om.norm_sq(),
            want,
            REL,
        ));
        out.push(rel_check(
            format!("su({n}) Omega order {m} closed form"),
            omega_norm_closed_form(n, m),
            want,
            1e-12,
        ));
    }
    let alg = bench.alg(3)?;
    for m in [4, 5] {
        let om = alg.omega(m)?;
        let res = if om.absent {
            om.vanishing_residual.max(om.norm_sq())
        } else {
            f64::INFINITY
        };
        out.push(Check::new(format!("su(3) Omega order {m} absent"), res, ABS));
    }
    for (n, m) in [(3, 3), (4, 3)] {
        let alg = bench.alg(n)?;
        let om = alg.omega(m)?;
        let (via, imag) = omega_from_lambdas(alg.basis(), m, alg.config().caps.tensor_entries)?;
        let res = relative_residual(om.body.max_abs_diff(&via), om.body.max_abs()).max(imag);
        out.push(Check::new(
            format!("su({n}) Omega order {m} lambda-trace route"),
            res,
            REL,
        ));
    }
    Ok(())
}

fn t_contract(tier: Tier, bench: &mut Workbench, out: Out) -> sun_casimir::Result<()> {
    for n in ns(tier, 3, 5) {
        let alg = bench.alg(n)?;
        out.extend(verify_t_identities(&alg)?.into_iter().map(|c| Check {
            name: format!("su({n}) {}", c.name),
            ..c
        }));
    }
    Ok(())
}

fn non_primitivity(bench: &mut Workbench, out: Out) -> sun_casimir::Result<()> {
    for (n, m) in [(3, 4), (3, 5), (4, 5)] {
        out.extend(verify_nonprimitive(&*bench.alg(n)?, m)?);
    }
    Ok(())
}

fn defining(tier: Tier, bench: &mut Workbench, out: Out) -> sun_casimir::Result<()> {
    for n in ns(tier, 3, 5) {
        let alg = bench.alg(n)?;
        let def = build_rep(&alg, &RepKind::Defining)?;
        for m in 2..=n {
            let r = compute_index(&alg, &def, m, RouteChoice::Both)?;
            out.push(index_check(format!("su({n}) defining gdi m={m}, both routes"), &r, 1.0));
            let table = ClosedForm::DefiningEigenvalue { m }.evaluate(n)?;
            out.push(rel_check(
                format!("su({n}) defining c{m} tabulated"),
                r.c_value,
                table,
                REL,
            ));
            let from_norm = ClosedForm::DefiningEigenvalueFromNorm { m }.evaluate(n)?;
            out.push(rel_check(
                format!("su({n}) defining c{m} from Omega norm"),
                r.c_value,
                from_norm,
                REL,
            ));
        }
    }
    Ok(())
}

fn adjoint(tier: Tier, bench: &mut Workbench, out: Out) -> sun_casimir::Result<()> {
    for n in 3..=6 {
        let alg = bench.alg(n)?;
        let ad = build_rep(&alg, &RepKind::Adjoint)?;
        let nf = n as f64;
        let c2 = casimir_eigenvalue(&alg, &ad, 2)?.value;
        out.push(rel_check(format!("su({n}) adjoint c2 = n^2"), c2, nf * nf, REL));
        let g2 = compute_index(&alg, &ad, 2, RouteChoice::Auto)?;
        out.push(index_check(format!("su({n}) adjoint gdi2 = 2n"), &g2, 2.0 * nf));
        for m in [3, 5] {
            if m > n || n > tier.max_n() {
                continue;
            }
            let r = compute_index(&alg, &ad, m, RouteChoice::Auto)?;
            out.push(
                Check::new(format!("su({n}) adjoint c{m} vanishes"), r.c_value.abs(), ABS)
                    .with_detail(format!("{:?}", r.route)),
            );
        }
        if (4..=5).contains(&n) && n <= tier.max_n() {
            let r = compute_index(&alg, &ad, 4, RouteChoice::Auto)?;
            out.push(index_check(format!("su({n}) adjoint gdi4 = 2n"), &r, 2.0 * nf));
        }
    }
    if tier >= Tier::Extended {
        let alg = bench.alg(6)?;
        let ad = build_rep(&alg, &RepKind::Adjoint)?;
        let r = compute_index(&alg, &ad, 6, RouteChoice::AntisymComponent)?;
        out.push(index_check("su(6) adjoint gdi6 = 12, single component", &r, 12.0));
    }
    for n in [3, 4] {
        out.extend(verify_trace_lemmas(&*bench.alg(n)?)?);
    }
    if tier >= Tier::Heavy {
        out.extend(
            verify_trace_lemmas(&*bench.alg(6)?)?
                .into_iter()
                .filter(|c| c.status != Status::Skipped),
        );
    }
    Ok(())
}

fn spinor(tier: Tier, bench: &mut Workbench, out: Out) -> sun_casimir::Result<()> {
    let alg = bench.alg(3)?;
    let sp = build_rep(&alg, &RepKind::Spinor)?;
    let ad = build_rep(&alg, &RepKind::Adjoint)?;
    out.push(Check::new("su(3) spinor dim 16", (sp.dim() as f64 - 16.0).abs(), 0.0));
    let g2 = compute_index(&alg, &sp, 2, RouteChoice::SymmetricTrace)?;
    out.push(index_check("su(3) spinor gdi2 = 12", &g2, 12.0));
    let g3 = compute_index(&alg, &sp, 3, RouteChoice::SymmetricTrace)?;
    out.push(index_check("su(3) spinor gdi3 = 0", &g3, 0.0));
    out.push(rel_check("su(3) spinor c2 = 9", g2.c_value, 9.0, REL));
    let a2 = compute_index(&alg, &ad, 2, RouteChoice::SymmetricTrace)?;
    out.push(rel_check("su(3) spinor c2 = adjoint c2", g2.c_value, a2.c_value, REL));
    out.push(rel_check(
        "su(3) spinor gdi2 = 2 adjoint gdi2",
        g2.gdi_value,
        2.0 * a2.gdi_value,
        REL,
    ));
    if tier >= Tier::Extended {
        let alg = bench.alg(4)?;
        let sp = build_rep(&alg, &RepKind::Spinor)?;
        out.push(Check::new("su(4) spinor dim 128", (sp.dim() as f64 - 128.0).abs(), 0.0));
        for (m, want) in [(2, 128.0), (4, -64.0)] {
            let r = compute_index(&alg, &sp, m, RouteChoice::SymmetricTrace)?;
            out.push(index_check(format!("su(4) spinor gdi{m} = {want}"), &r, want));
            let cf = ClosedForm::SpinorIndex { m }.evaluate(4)?;
            out.push(rel_check(format!("su(4) spinor gdi{m} closed form"), cf, want, 1e-12));
        }
    }
    Ok(())
}

fn symmetric_powers(tier: Tier, bench: &mut Workbench, out: Out) -> sun_casimir::Result<()> {
    for n in ns(tier, 3, 6) {
        let alg = bench.alg(n)?;
        for p in 1..=4 {
            let rep = build_rep(&alg, &RepKind::SymPower(p))?;
            for m in 2..=n.min(4) {
                let r = compute_index(&alg, &rep, m, RouteChoice::Auto)?;
                let want = ClosedForm::SymPowerIndex { m, p }.evaluate(n)?;
                out.push(index_check(format!("su({n}) sym:{p} gdi{m}"), &r, want));
                if p == 2 && n <= 5 {
                    let s2 = ClosedForm::SymSquareIndex { m }.evaluate(n)?;
                    out.push(index_check(format!("su({n}) sym:2 gdi{m} = n + 2^(m-1)"), &r, s2));
                }
            }
        }
        if n <= 5 {
            out.extend(
                verify_trace_normalizations(&alg)?
                    .into_iter()
                    .filter(|c| c.name.starts_with("sym")),
            );
        }
    }
    Ok(())
}

fn tables(tier: Tier, bench: &mut Workbench, out: Out) -> sun_casimir::Result<()> {
    for n in ns(tier, 3, 6) {
        let alg = bench.alg(n)?;
        out.extend(compute_table(&alg, RouteChoice::Auto)?.checks());
    }
    Ok(())
}

fn properties(tier: Tier, bench: &mut Workbench, out: Out) -> sun_casimir::Result<()> {
    for n in ns(tier, 3, 6) {
        let alg = bench.alg(n)?;
        let mut kinds = vec![RepKind::Defining, RepKind::Adjoint, RepKind::SymPower(2)];
        kinds.extend((2..n).map(RepKind::Fund));
        let (mut worst_int, mut worst_cross, mut cells, mut crossed) = (0.0f64, 0.0f64, 0, 0);
        for kind in &kinds {
            let rep = build_rep(&alg, kind)?;
            for m in 2..=n {
                let both = symmetric_route_cost(&alg, &rep, m).is_some_and(|c| c <= alg.config().caps.trace_flops);
                let choice = if both {
                    RouteChoice::Both
                } else {
                    RouteChoice::AntisymComponent
                };
                let r = compute_index(&alg, &rep, m, choice)?;
                let scale = r.gdi_value.abs().max(1.0);
                worst_int = worst_int.max(r.residual / scale);
                cells += 1;
                if let Some(x) = r.cross_route_residual {
                    worst_cross = worst_cross.max(x / scale);
                    crossed += 1;
                }
            }
        }
        out.push(
            Check::new(format!("su({n}) gdi integrality"), worst_int, EPS_INT).with_detail(format!("{cells} cells")),
        );
        out.push(
            Check::new(format!("su({n}) route cross-agreement"), worst_cross, EPS_INT)
                .with_detail(format!("{crossed} cells on both routes")),
        );
        for p in [2, 4, 6].into_iter().filter(|&p| p <= n) {
            let c = adjoint_conjecture(&alg, p, RouteChoice::Auto)?;
            out.push(Check {
                detail: format!("conjecture consistency; {}", c.detail),
                ..c
            });
        }
    }
    Ok(())
}
