//! Index tables of the fundamental representations.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sun_casimir::casimir::{build_rep, compute_index, ClosedForm, Route, RouteChoice, EPS_INT};
use sun_casimir::reps::RepKind;
use sun_casimir::{Check, Error, SuN};

use crate::config::Format;
use crate::reference::reference_entry;

const CLOSED_FORM_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClosedFormNote {
    pub form: String,
    pub value: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum CellOutcome {
    Computed {
        value: i64,
        gdi_value: f64,
        route: Route,
        /// Distance of `gdi_value` from `value`.
        residual: f64,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        closed_form: Option<ClosedFormNote>,
    },
    /// Refused under the current caps.
    NeedsHeavy { reason: String },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    pub s: usize,
    #[serde(flatten)]
    pub outcome: CellOutcome,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GdiRow {
    pub m: usize,
    pub cells: Vec<Cell>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GdiTable {
    pub n: usize,
    pub rows: Vec<GdiRow>,
}

/// A closed-form value for the fundamental `s` at order `m`, directly or
/// through conjugation `s -> n - s`, which multiplies the index by `(-1)^m`.
pub fn closed_form_value(n: usize, m: usize, s: usize) -> Option<(String, f64)> {
    let direct = |s: usize| -> Option<(String, f64)> {
        if s == 1 {
            return Some(("defining index 1".into(), 1.0));
        }
        let form = ClosedForm::for_fundamental(m, s)?;
        form.evaluate(n).ok().map(|v| (form.to_string(), v))
    };
    direct(s).or_else(|| {
        let sign = if m.is_multiple_of(2) { 1.0 } else { -1.0 };
        direct(n - s).map(|(name, v)| (format!("conjugate of {name}"), sign * v))
    })
}

/// Every cell by the requested route; cells refused by the caps are kept as
/// `NeedsHeavy` rather than dropped.
pub fn compute_table(alg: &SuN, route: RouteChoice) -> sun_casimir::Result<GdiTable> {
    let n = alg.n();
    let reps = (1..n)
        .map(|s| build_rep(alg, &RepKind::Fund(s)))
        .collect::<sun_casimir::Result<Vec<_>>>()?;
    let mut rows = Vec::with_capacity(n - 1);
    for m in 2..=n {
        let mut cells = Vec::with_capacity(n - 1);
        for (rep, s) in reps.iter().zip(1..) {
            let outcome = match compute_index(alg, rep, m, route) {
                Ok(r) => CellOutcome::Computed {
                    value: r.gdi_rounded,
                    gdi_value: r.gdi_value,
                    route: r.route,
                    residual: r.residual.max(r.cross_route_residual.unwrap_or(0.0)),
                    closed_form: closed_form_value(n, m, s).map(|(form, value)| ClosedFormNote {
                        form,
                        value,
                        passed: (r.gdi_value - value).abs() <= CLOSED_FORM_TOL * value.abs().max(1.0),
                    }),
                },
                Err(e @ Error::CapExceeded { .. }) => CellOutcome::NeedsHeavy { reason: e.to_string() },
                Err(e) => return Err(e),
            };
            cells.push(Cell { s, outcome });
        }
        rows.push(GdiRow { m, cells });
    }
    Ok(GdiTable { n, rows })
}

impl GdiTable {
    pub fn cell(&self, m: usize, s: usize) -> Option<&Cell> {
        self.rows.iter().find(|r| r.m == m)?.cells.iter().find(|c| c.s == s)
    }

    pub fn entry(&self, m: usize, s: usize) -> Option<i64> {
        match self.cell(m, s)?.outcome {
            CellOutcome::Computed { value, .. } => Some(value),
            CellOutcome::NeedsHeavy { .. } => None,
        }
    }

    /// Cells `(m, s)` breaking `entry(m, s) = (-1)^m entry(m, n - s)`.
    pub fn conjugation_violations(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for row in &self.rows {
            let sign = if row.m % 2 == 0 { 1 } else { -1 };
            for s in 1..self.n {
                if let (Some(a), Some(b)) = (self.entry(row.m, s), self.entry(row.m, self.n - s)) {
                    if a != sign * b {
                        out.push((row.m, s));
                    }
                }
            }
        }
        out
    }

    /// One check per cell against the published table (integrality alone
    /// where no published value exists), the closed-form annotations, and the
    /// conjugation symmetry of the whole table.
    pub fn checks(&self) -> Vec<Check> {
        let n = self.n;
        let mut out = Vec::new();
        for row in &self.rows {
            for cell in &row.cells {
                let name = format!("table su({n}) m={} s={}", row.m, cell.s);
                match &cell.outcome {
                    CellOutcome::Computed {
                        gdi_value,
                        route,
                        residual,
                        closed_form,
                        ..
                    } => {
                        let tol = EPS_INT * gdi_value.abs().max(1.0);
                        let detail = format!("{gdi_value:.9} by {route:?}, integrality residual {residual:.2e}");
                        let check = match reference_entry(n, row.m, cell.s) {
                            Some(want) => Check::new(name.clone(), (gdi_value - want as f64).abs().max(*residual), tol)
                                .with_detail(format!("published {want}; {detail}")),
                            None => Check::new(name.clone(), *residual, tol).with_detail(detail),
                        };
                        out.push(check);
                        if let Some(cf) = closed_form {
                            out.push(
                                Check::new(
                                    format!("{name} closed form"),
                                    (gdi_value - cf.value).abs() / cf.value.abs().max(1.0),
                                    CLOSED_FORM_TOL,
                                )
                                .with_detail(format!("{} = {}", cf.form, cf.value)),
                            );
                        }
                    }
                    CellOutcome::NeedsHeavy { reason } => out.push(Check::skipped(name, reason.clone())),
                }
            }
        }
        let bad = self.conjugation_violations();
        out.push(
            Check::new(format!("table su({n}) conjugation symmetry"), bad.len() as f64, 0.0).with_detail(
                if bad.is_empty() {
                    String::new()
                } else {
                    format!("violations at {bad:?}")
                },
            ),
        );
        out
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Md => self.to_markdown(),
            Format::Csv => self.to_csv(),
            Format::Json => serde_json::to_string_pretty(self).expect("table serializes"),
        }
    }

    fn to_markdown(&self) -> String {
        let n = self.n;
        let mut out = format!("| su({n}) |");
        for s in 1..n {
            write!(out, " s={s} |").unwrap();
        }
        out.push('\n');
        out.push_str(&"|---".repeat(n));
        out.push_str("|\n");
        for row in &self.rows {
            write!(out, "| m={} |", row.m).unwrap();
            for cell in &row.cells {
                match &cell.outcome {
                    CellOutcome::Computed { value, .. } => write!(out, " {value} |").unwrap(),
                    CellOutcome::NeedsHeavy { .. } => out.push_str(" needs --heavy |"),
                }
            }
            out.push('\n');
        }
        out.push('\n');
        for row in &self.rows {
            for cell in &row.cells {
                if let CellOutcome::Computed {
                    route,
                    residual,
                    closed_form,
                    ..
                } = &cell.outcome
                {
                    write!(out, "- m={} s={}: {route:?}, residual {residual:.1e}", row.m, cell.s).unwrap();
                    if let Some(cf) = closed_form {
                        let verdict = if cf.passed { "pass" } else { "FAIL" };
                        write!(out, "; {} = {} {verdict}", cf.form, cf.value).unwrap();
                    }
                    out.push('\n');
                }
            }
        }
        out
    }

    fn to_csv(&self) -> String {
        let mut out = String::from(
            "n,m,s,status,value,gdi_value,route,residual,closed_form,closed_form_value,closed_form_pass\n",
        );
        for row in &self.rows {
            for cell in &row.cells {
                let prefix = format!("{},{},{}", self.n, row.m, cell.s);
                match &cell.outcome {
                    CellOutcome::Computed {
                        value,
                        gdi_value,
                        route,
                        residual,
                        closed_form,
                    } => {
                        let (form, cv, pass) = match closed_form {
                            Some(cf) => (cf.form.clone(), cf.value.to_string(), cf.passed.to_string()),
                            None => Default::default(),
                        };
                        writeln!(
                            out,
                            "{prefix},computed,{value},{gdi_value},{route:?},{residual:e},\"{form}\",{cv},{pass}"
                        )
                        .unwrap();
                    }
                    CellOutcome::NeedsHeavy { .. } => writeln!(out, "{prefix},needs_heavy,,,,,,,").unwrap(),
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms_cover_conjugates() {
        let (name, v) = closed_form_value(5, 5, 2).unwrap();
        assert_eq!(v, -11.0, "{name}");
        let (name, v) = closed_form_value(5, 5, 4).unwrap();
        assert_eq!(v, -1.0);
        assert!(name.starts_with("conjugate"));
        assert!(closed_form_value(6, 6, 3).is_none());
    }

    #[test]
    fn su3_table_matches_and_renders() {
        let alg = SuN::new(3).unwrap();
        let t = compute_table(&alg, RouteChoice::Auto).unwrap();
        assert_eq!(t.entry(3, 2), Some(-1));
        assert!(t.checks().iter().all(Check::passed));
        let md = t.render(Format::Md);
        assert!(md.starts_with("| su(3) | s=1 | s=2 |\n|---|---|---|\n| m=2 | 1 | 1 |\n| m=3 | 1 | -1 |"));
        assert_eq!(t.render(Format::Csv).lines().count(), 5);
    }

    #[test]
    fn refused_cells_are_marked() {
        let mut config = sun_casimir::Config::default();
        config.caps.trace_flops = 1.0;
        let alg = SuN::with_config(3, config).unwrap();
        let t = compute_table(&alg, RouteChoice::Auto).unwrap();
        assert!(t.entry(2, 1).is_none());
        assert!(t.render(Format::Md).contains("needs --heavy"));
        assert!(t.checks().iter().any(|c| c.status == sun_casimir::Status::Skipped));
    }
}
