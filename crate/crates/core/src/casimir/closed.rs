//! Closed-form eigenvalues and indices, used as oracles. Each form checks its
//! own range of validity and answers `NotApplicable` outside it, which is
//! distinct from a genuine zero.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::omega_norm_closed_form;
use crate::tensor::tuple::factorial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "family")]
pub enum ClosedForm {
    /// su(3) quadratic eigenvalue at Dynkin labels `(lambda, mu)`.
    Su3Quadratic { lambda: u32, mu: u32 },
    /// su(4) quadratic eigenvalue at `(lambda, mu, nu)`; linear term in `mu` is 16.
    Su4Quadratic { lambda: u32, mu: u32, nu: u32 },
    /// su(3) cubic eigenvalue at `(lambda, mu)`.
    Su3Cubic { lambda: u32, mu: u32 },
    /// Defining representation, `m = 2..5`, coefficients as tabulated:
    /// 1/2, 1/12, 1/180, 1/1680 times `prod_{q<m}(n^2 - q^2)`.
    DefiningEigenvalue { m: usize },
    /// Defining representation from `n c = 2^(1-m) |Omega^(2m-1)|^2`, any `m`.
    DefiningEigenvalueFromNorm { m: usize },
    /// Adjoint eigenvalue: zero for odd `m`, `2^(m-1)/(2m-2)! n^2 prod_{k=2}^{m-1}(n^2-k^2)`
    /// for even `m` (stated for `m <= 6`, conjectured beyond).
    AdjointEigenvalue { m: usize },
    /// `2n` for even `m`, zero for odd `m`.
    AdjointIndex { m: usize },
    /// Spinor eigenvalue for `m` in 2..=4.
    SpinorEigenvalue { m: usize },
    /// Spinor index for `m` in 2..=4.
    SpinorIndex { m: usize },
    /// `n + 2^(m-1)` for the symmetric square.
    SymSquareIndex { m: usize },
    /// Symmetric power `p`, `m` in 2..=4.
    SymPowerIndex { m: usize, p: usize },
    /// `n - 2^(m-1)` for the antisymmetric square.
    FundSquareIndex { m: usize },
    /// Fundamental `s`, `m` in 2..=4.
    FundIndex { m: usize, s: usize },
    /// Fifth-order index of the third fundamental, `(n-6)(n-27)/2`, for `n >= 5`.
    FundCubeQuinticIndex,
}

fn na(msg: String) -> Error {
    Error::NotApplicable(msg)
}

fn casimir_order(n: usize, m: usize) -> Result<()> {
    if m < 2 || m > n {
        return Err(na(format!("order {m} Casimir does not exist for su({n})")));
    }
    Ok(())
}

fn prod_sq(n: usize, from: usize, to: usize) -> f64 {
    let n2 = (n * n) as f64;
    (from..=to).map(|q| n2 - (q * q) as f64).product()
}

/// Dimension of the spinor module, `2^floor((n^2-1)/2)`.
pub fn spinor_dim(n: usize) -> f64 {
    2f64.powi(((n * n - 1) / 2) as i32)
}

impl ClosedForm {
    pub fn evaluate(&self, n: usize) -> Result<f64> {
        let nf = n as f64;
        match *self {
            ClosedForm::Su3Quadratic { lambda, mu } => {
                if n != 3 {
                    return Err(na(format!("su(3) formula used at su({n})")));
                }
                let (l, u) = (lambda as f64, mu as f64);
                Ok(l * l + l * u + u * u + 3.0 * l + 3.0 * u)
            }
            ClosedForm::Su4Quadratic { lambda, mu, nu } => {
                if n != 4 {
                    return Err(na(format!("su(4) formula used at su({n})")));
                }
                let (l, u, v) = (lambda as f64, mu as f64, nu as f64);
                Ok(0.5
                    * (3.0 * l * l
                        + 4.0 * u * u
                        + 3.0 * v * v
                        + 4.0 * l * u
                        + 2.0 * l * v
                        + 4.0 * u * v
                        + 12.0 * l
                        + 16.0 * u
                        + 12.0 * v))
            }
            ClosedForm::Su3Cubic { lambda, mu } => {
                if n != 3 {
                    return Err(na(format!("su(3) formula used at su({n})")));
                }
                let (l, u) = (lambda as f64, mu as f64);
                Ok((l + 2.0 * u + 3.0) * (2.0 * l + u + 3.0) * (l - u) / 6.0)
            }
            ClosedForm::DefiningEigenvalue { m } => {
                let coef = match m {
                    2 => 1.0 / 2.0,
                    3 => 1.0 / 12.0,
                    4 => 1.0 / 180.0,
                    5 => 1.0 / 1680.0,
                    _ => return Err(na(format!("tabulated defining eigenvalue only for m = 2..5, got {m}"))),
                };
                Ok(coef * prod_sq(n, 1, m - 1))
            }
            ClosedForm::DefiningEigenvalueFromNorm { m } => {
                if m < 2 {
                    return Err(na(format!("order {m}")));
                }
                Ok(2f64.powi(1 - m as i32) * omega_norm_closed_form(n, m) / nf)
            }
            ClosedForm::AdjointEigenvalue { m } => {
                if m < 2 {
                    return Err(na(format!("order {m}")));
                }
                if m % 2 == 1 {
                    return Ok(0.0);
                }
                Ok(2f64.powi(m as i32 - 1) / factorial(2 * m - 2) * nf * nf * prod_sq(n, 2, m - 1))
            }
            ClosedForm::AdjointIndex { m } => {
                casimir_order(n, m)?;
                Ok(if m % 2 == 0 { 2.0 * nf } else { 0.0 })
            }
            ClosedForm::SpinorEigenvalue { m } => match m {
                2 => Ok(nf / 8.0 * omega_norm_closed_form(n, 2)),
                3 => Ok(0.0),
                4 => Ok(-nf / 64.0 * omega_norm_closed_form(n, 4)),
                _ => Err(na(format!("spinor eigenvalue known only for m = 2..4, got {m}"))),
            },
            ClosedForm::SpinorIndex { m } => {
                casimir_order(n, m)?;
                match m {
                    2 => Ok(nf / 4.0 * spinor_dim(n)),
                    3 => Ok(0.0),
                    4 => Ok(-nf / 8.0 * spinor_dim(n)),
                    _ => Err(na(format!("spinor index known only for m = 2..4, got {m}"))),
                }
            }
            ClosedForm::SymSquareIndex { m } => {
                casimir_order(n, m)?;
                Ok(nf + 2f64.powi(m as i32 - 1))
            }
            ClosedForm::SymPowerIndex { m, p } => {
                casimir_order(n, m)?;
                if p == 0 {
                    return Err(na("symmetric power p = 0".into()));
                }
                let (pf, base) = (p as f64, factorial(n + p) / factorial(p - 1));
                match m {
                    2 => Ok(base / factorial(n + 1)),
                    3 => Ok(base / factorial(n + 2) * (nf + 2.0 * pf)),
                    4 => Ok(base / factorial(n + 3) * (nf * nf - nf + 6.0 * pf * nf + 6.0 * pf * pf)),
                    _ => Err(na(format!("symmetric power index known only for m = 2..4, got {m}"))),
                }
            }
            ClosedForm::FundSquareIndex { m } => {
                casimir_order(n, m)?;
                if n < 3 {
                    return Err(na(format!("no second fundamental for su({n})")));
                }
                Ok(nf - 2f64.powi(m as i32 - 1))
            }
            ClosedForm::FundIndex { m, s } => {
                casimir_order(n, m)?;
                if s == 0 || s >= n {
                    return Err(na(format!("fundamental s = {s} for su({n})")));
                }
                let sf = s as f64;
                let base = 1.0 / (factorial(s - 1) * factorial(n - s - 1));
                match m {
                    2 => Ok(factorial(n - 2) * base),
                    3 => Ok(factorial(n - 3) * base * (nf - 2.0 * sf)),
                    4 => Ok(factorial(n - 4) * base * (nf * nf + nf - 6.0 * sf * nf + 6.0 * sf * sf)),
                    _ => Err(na(format!("fundamental index known only for m = 2..4, got {m}"))),
                }
            }
            ClosedForm::FundCubeQuinticIndex => {
                if n < 5 {
                    return Err(na(format!("fifth-order index needs n >= 5, got su({n})")));
                }
                Ok(0.5 * (nf - 6.0) * (nf - 27.0))
            }
        }
    }

    /// Index form for the fundamental `s` at order `m`, if one is known.
    pub fn for_fundamental(m: usize, s: usize) -> Option<ClosedForm> {
        match (m, s) {
            (2..=4, _) => Some(ClosedForm::FundIndex { m, s }),
            (_, 2) => Some(ClosedForm::FundSquareIndex { m }),
            (5, 3) => Some(ClosedForm::FundCubeQuinticIndex),
            _ => None,
        }
    }
}

impl std::fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClosedForm::Su3Quadratic { lambda, mu } => write!(f, "su3 c2({lambda},{mu})"),
            ClosedForm::Su4Quadratic { lambda, mu, nu } => write!(f, "su4 c2({lambda},{mu},{nu})"),
            ClosedForm::Su3Cubic { lambda, mu } => write!(f, "su3 c3({lambda},{mu})"),
            ClosedForm::DefiningEigenvalue { m } => write!(f, "c{m}(def) tabulated"),
            ClosedForm::DefiningEigenvalueFromNorm { m } => write!(f, "c{m}(def) from Omega norm"),
            ClosedForm::AdjointEigenvalue { m } => write!(f, "c{m}(adj)"),
            ClosedForm::AdjointIndex { m } => write!(f, "gdi{m}(adj) = 2n"),
            ClosedForm::SpinorEigenvalue { m } => write!(f, "c{m}(spinor)"),
            ClosedForm::SpinorIndex { m } => write!(f, "gdi{m}(spinor)"),
            ClosedForm::SymSquareIndex { m } => write!(f, "gdi{m}(sym:2) = n + 2^(m-1)"),
            ClosedForm::SymPowerIndex { m, p } => write!(f, "gdi{m}(sym:{p})"),
            ClosedForm::FundSquareIndex { m } => write!(f, "gdi{m}(fund:2) = n - 2^(m-1)"),
            ClosedForm::FundIndex { m, s } => write!(f, "gdi{m}(fund:{s})"),
            ClosedForm::FundCubeQuinticIndex => write!(f, "gdi5(fund:3) = (n-6)(n-27)/2"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-10 * b.abs().max(1.0)
    }

    #[test]
    fn tabulated_values() {
        assert!(close(ClosedForm::DefiningEigenvalue { m: 4 }.evaluate(4).unwrap(), 7.0));
        assert!(close(
            ClosedForm::DefiningEigenvalue { m: 3 }.evaluate(3).unwrap(),
            10.0 / 3.0
        ));
        assert!(close(ClosedForm::SymSquareIndex { m: 2 }.evaluate(3).unwrap(), 5.0));
        assert!(close(ClosedForm::FundIndex { m: 4, s: 3 }.evaluate(6).unwrap(), -6.0));
        assert!(close(ClosedForm::FundCubeQuinticIndex.evaluate(5).unwrap(), 11.0));
        assert!(close(
            ClosedForm::AdjointEigenvalue { m: 4 }.evaluate(4).unwrap(),
            8.0 * 1344.0 / 720.0
        ));
        assert!(close(ClosedForm::SpinorIndex { m: 4 }.evaluate(4).unwrap(), -64.0));
        assert!(close(
            ClosedForm::Su3Cubic { lambda: 1, mu: 0 }.evaluate(3).unwrap(),
            10.0 / 3.0
        ));
        assert!(close(
            ClosedForm::Su4Quadratic {
                lambda: 1,
                mu: 0,
                nu: 1
            }
            .evaluate(4)
            .unwrap(),
            16.0
        ));
    }

    #[test]
    fn families_agree_where_they_overlap() {
        for n in 3..=8 {
            for m in 2..=n.min(4) {
                let k5 = ClosedForm::FundSquareIndex { m }.evaluate(n).unwrap();
                let k = ClosedForm::FundIndex { m, s: 2 }.evaluate(n).unwrap();
                assert!(close(k, k5), "n={n} m={m}");
                let j6 = ClosedForm::SymSquareIndex { m }.evaluate(n).unwrap();
                let j = ClosedForm::SymPowerIndex { m, p: 2 }.evaluate(n).unwrap();
                assert!(close(j, j6), "n={n} m={m}");
                let p1 = ClosedForm::SymPowerIndex { m, p: 1 }.evaluate(n).unwrap();
                let s1 = ClosedForm::FundIndex { m, s: 1 }.evaluate(n).unwrap();
                assert!(close(p1, 1.0) && close(s1, 1.0));
            }
        }
    }

    #[test]
    fn applicability_guards() {
        assert!(matches!(
            ClosedForm::AdjointIndex { m: 4 }.evaluate(3),
            Err(Error::NotApplicable(_))
        ));
        assert!(matches!(
            ClosedForm::FundCubeQuinticIndex.evaluate(4),
            Err(Error::NotApplicable(_))
        ));
        assert!(matches!(
            ClosedForm::Su3Quadratic { lambda: 1, mu: 0 }.evaluate(4),
            Err(Error::NotApplicable(_))
        ));
        assert_eq!(ClosedForm::AdjointIndex { m: 3 }.evaluate(3).unwrap(), 0.0);
    }

    #[test]
    fn tabulated_defining_quintic_differs_from_norm_relation() {
        let table = ClosedForm::DefiningEigenvalue { m: 5 }.evaluate(5).unwrap();
        let norm = ClosedForm::DefiningEigenvalueFromNorm { m: 5 }.evaluate(5).unwrap();
        assert!(close(table / norm, 3.0));
        for m in 2..=4 {
            let a = ClosedForm::DefiningEigenvalue { m }.evaluate(6).unwrap();
            let b = ClosedForm::DefiningEigenvalueFromNorm { m }.evaluate(6).unwrap();
            assert!(close(a, b), "m={m}");
        }
    }
}
