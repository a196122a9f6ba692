//! Concrete representations: defining, adjoint, symmetric and antisymmetric
//! tensor powers of the defining representation, the Dirac-matrix spinor
//! representation, and conjugates.
//!
//! Tensor powers are built directly on occupation bases (nondecreasing tuples
//! for symmetric powers, strictly increasing ones for antisymmetric powers)
//! with the second-quantized action `sum_ab A_ab a_a^dag a_b` of each
//! generator `A = lambda_i / 2`.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::basis::{GellMannBasis, StructureConstants};
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, ONE, ZERO};
use crate::tensor::tuple;

/// Which family a representation belongs to.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepKind {
    Defining,
    Adjoint,
    SymPower(usize),
    Fund(usize),
    Spinor,
    Conjugate(Box<RepKind>),
}

impl RepKind {
    /// Dimension predicted by the family formula.
    pub fn expected_dim(&self, n: usize) -> f64 {
        match self {
            RepKind::Defining => n as f64,
            RepKind::Adjoint => (n * n - 1) as f64,
            RepKind::SymPower(p) => tuple::binomial(n + p - 1, *p),
            RepKind::Fund(s) => tuple::binomial(n, *s),
            RepKind::Spinor => 2f64.powi(((n * n - 1) / 2) as i32),
            RepKind::Conjugate(inner) => inner.expected_dim(n),
        }
    }

    /// Conjugate-equivalence class: adjoint and the middle fundamental are
    /// self-conjugate, `fund(s)` pairs with `fund(n - s)`.
    pub fn is_self_conjugate(&self, n: usize) -> bool {
        match self {
            RepKind::Adjoint | RepKind::Spinor => true,
            RepKind::Fund(s) => 2 * s == n,
            RepKind::Conjugate(inner) => inner.is_self_conjugate(n),
            RepKind::Defining | RepKind::SymPower(_) => false,
        }
    }
}

impl fmt::Display for RepKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RepKind::Defining => write!(f, "def"),
            RepKind::Adjoint => write!(f, "adj"),
            RepKind::SymPower(p) => write!(f, "sym:{p}"),
            RepKind::Fund(s) => write!(f, "fund:{s}"),
            RepKind::Spinor => write!(f, "spinor"),
            RepKind::Conjugate(inner) => write!(f, "conj:{inner}"),
        }
    }
}

impl FromStr for RepKind {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let bad = || Error::RepSpec(spec.to_string());
        let count = |v: &str| v.parse::<usize>().ok().filter(|&p| p >= 1).ok_or_else(bad);
        Ok(match spec.trim() {
            "def" | "defining" => RepKind::Defining,
            "adj" | "adjoint" => RepKind::Adjoint,
            "spinor" => RepKind::Spinor,
            s => match s.split_once(':') {
                Some(("sym", p)) => RepKind::SymPower(count(p)?),
                Some(("fund", v)) => RepKind::Fund(count(v)?),
                Some(("conj", inner)) => RepKind::Conjugate(Box::new(inner.parse()?)),
                _ => return Err(bad()),
            },
        })
    }
}

/// Matrices `D_i` representing the Gell-Mann generators `X_i`.
#[derive(Clone, Debug)]
pub struct Representation {
    pub kind: RepKind,
    pub n: usize,
    pub mats: Vec<CMatrix>,
}

impl Representation {
    pub fn dim(&self) -> usize {
        self.mats.first().map_or(0, CMatrix::rows)
    }

    pub fn name(&self) -> String {
        self.kind.to_string()
    }

    /// `max ||[D_i, D_j] - i f_ijk D_k||` over all pairs when the algebra is
    /// small, over `samples` pseudo-random pairs otherwise.
    pub fn commutation_residual(&self, sc: &StructureConstants, samples: Option<usize>) -> f64 {
        let r = self.mats.len();
        let pairs: Vec<(usize, usize)> = match samples {
            None => (0..r).flat_map(|i| (i + 1..r).map(move |j| (i, j))).collect(),
            Some(count) => {
                let mut state = 0x2545_f491_4f6c_dd1du64 ^ (r as u64);
                (0..count)
                    .map(|_| {
                        state ^= state << 13;
                        state ^= state >> 7;
                        state ^= state << 17;
                        let i = (state % r as u64) as usize;
                        let j = ((state >> 32) % r as u64) as usize;
                        (i, j)
                    })
                    .collect()
            }
        };
        pairs
            .par_iter()
            .map(|&(i, j)| {
                let mut lhs = self.mats[i].commutator(&self.mats[j]).expect("square");
                for &(k, v) in sc.f_row(i, j) {
                    lhs.axpy(Complex64::new(0.0, -v), &self.mats[k]).expect("same shape");
                }
                lhs.max_abs()
            })
            .reduce(|| 0.0, f64::max)
    }

    /// Commutation residual with the sampling policy used by the builders:
    /// every pair up to su(4), 200 sampled pairs beyond.
    pub fn default_commutation_residual(&self, sc: &StructureConstants) -> f64 {
        let samples = (self.n > 4).then_some(200);
        self.commutation_residual(sc, samples)
    }

    /// `Tr(D_i D_j)` for all pairs, as a dense row-major `r x r` array.
    pub fn quadratic_traces(&self) -> Vec<Complex64> {
        let r = self.mats.len();
        (0..r * r)
            .into_par_iter()
            .map(|ij| crate::linalg::frobenius_pair_unchecked(&self.mats[ij / r], &self.mats[ij % r]))
            .collect()
    }
}

fn check_rep_dim(kind: &RepKind, n: usize, cap: usize) -> Result<usize> {
    let dim = kind.expected_dim(n);
    if dim > cap as f64 {
        return Err(Error::cap(
            format!("dimension of {kind} for su({n})"),
            dim,
            cap as f64,
            "",
        ));
    }
    Ok(dim as usize)
}

/// Builds the representation named by `kind`, refusing dimensions above `dim_cap`
/// (and spinor dimensions above `spinor_cap`).
pub fn build(
    kind: &RepKind,
    basis: &GellMannBasis,
    sc: &StructureConstants,
    dim_cap: usize,
    spinor_cap: usize,
) -> Result<Representation> {
    let n = basis.n();
    match kind {
        RepKind::Defining => Ok(defining_rep(basis)),
        RepKind::Adjoint => Ok(adjoint_rep(sc)),
        RepKind::SymPower(p) => sym_power_rep(basis, *p, dim_cap),
        RepKind::Fund(s) => fund_rep(basis, *s, dim_cap),
        RepKind::Spinor => spinor_rep(sc, spinor_cap),
        RepKind::Conjugate(inner) => {
            if let RepKind::Conjugate(twice) = inner.as_ref() {
                return build(twice, basis, sc, dim_cap, spinor_cap);
            }
            build(inner, basis, sc, dim_cap, spinor_cap).map(|d| conjugate_rep(&d))
        }
    }
    .map(|mut rep| {
        rep.n = n;
        rep
    })
}

/// `D_i = lambda_i / 2`.
pub fn defining_rep(basis: &GellMannBasis) -> Representation {
    let half = Complex64::new(0.5, 0.0);
    Representation {
        kind: RepKind::Defining,
        n: basis.n(),
        mats: basis.lambdas().iter().map(|l| l.scale(half)).collect(),
    }
}

/// `(ad_i)_jk = -i f_ijk`.
pub fn adjoint_rep(sc: &StructureConstants) -> Representation {
    let r = sc.dim();
    let mats = (0..r)
        .into_par_iter()
        .map(|i| {
            let mut m = CMatrix::zeros(r, r);
            for j in 0..r {
                for &(k, v) in sc.f_row(i, j) {
                    m[(j, k)] = Complex64::new(0.0, -v);
                }
            }
            m
        })
        .collect();
    Representation {
        kind: RepKind::Adjoint,
        n: sc.n(),
        mats,
    }
}

/// Nonzero entries `(a, b, A_ab)` of `lambda_i / 2`.
fn half_lambda_entries(basis: &GellMannBasis, i: usize) -> Vec<(usize, usize, Complex64)> {
    let l = basis.lambda(i);
    let n = basis.n();
    (0..n)
        .flat_map(|a| (0..n).map(move |b| (a, b)))
        .filter_map(|(a, b)| {
            let v = l[(a, b)];
            (v != ZERO).then_some((a, b, v * 0.5))
        })
        .collect()
}

/// Occupation-basis action of every generator on the states `states`, with
/// `hop(state, a, b)` returning the image of `a_a^dag a_b` as (index, coefficient).
fn second_quantized<F>(basis: &GellMannBasis, states: &[Vec<usize>], hop: F) -> Vec<CMatrix>
where
    F: Fn(&[usize], usize, usize) -> Option<(Vec<usize>, f64)> + Sync,
{
    let dim = states.len();
    let index: std::collections::HashMap<&[usize], usize> =
        states.iter().enumerate().map(|(k, s)| (s.as_slice(), k)).collect();
    (0..basis.dim())
        .into_par_iter()
        .map(|i| {
            let entries = half_lambda_entries(basis, i);
            let mut m = CMatrix::zeros(dim, dim);
            for (col, s) in states.iter().enumerate() {
                for &(a, b, v) in &entries {
                    if let Some((target, coef)) = hop(s, a, b) {
                        let row = index[target.as_slice()];
                        m[(row, col)] += v * coef;
                    }
                }
            }
            m
        })
        .collect()
}

/// Symmetric power `p` on normalized bosonic occupation states labelled by
/// nondecreasing `p`-tuples; dimension `C(n+p-1, p)`.
pub fn sym_power_rep(basis: &GellMannBasis, p: usize, dim_cap: usize) -> Result<Representation> {
    let n = basis.n();
    let kind = RepKind::SymPower(p);
    if p == 0 {
        return Err(Error::Domain("symmetric power needs p >= 1".into()));
    }
    check_rep_dim(&kind, n, dim_cap)?;
    let mut states = Vec::new();
    tuple::for_each_nondecreasing(p, n, |t| states.push(t.to_vec()));
    let hop = |s: &[usize], a: usize, b: usize| {
        let occ_b = s.iter().filter(|&&x| x == b).count();
        if occ_b == 0 {
            return None;
        }
        if a == b {
            return Some((s.to_vec(), occ_b as f64));
        }
        let occ_a = s.iter().filter(|&&x| x == a).count();
        let mut t = s.to_vec();
        let pos = t.iter().position(|&x| x == b).expect("occupied");
        t[pos] = a;
        t.sort_unstable();
        Some((t, ((occ_b * (occ_a + 1)) as f64).sqrt()))
    };
    Ok(Representation {
        kind,
        n,
        mats: second_quantized(basis, &states, hop),
    })
}

/// Antisymmetric power `s` on fermionic occupation states labelled by
/// strictly increasing `s`-tuples; dimension `C(n, s)`.
pub fn fund_rep(basis: &GellMannBasis, s: usize, dim_cap: usize) -> Result<Representation> {
    let n = basis.n();
    if s == 0 || s >= n {
        return Err(Error::Domain(format!(
            "fundamental index s must lie in 1..{}, got {s}",
            n - 1
        )));
    }
    let kind = RepKind::Fund(s);
    check_rep_dim(&kind, n, dim_cap)?;
    let mut states = Vec::new();
    tuple::for_each_increasing(s, n, |t| states.push(t.to_vec()));
    let hop = |st: &[usize], a: usize, b: usize| {
        let pos_b = st.iter().position(|&x| x == b)?;
        if a == b {
            return Some((st.to_vec(), 1.0));
        }
        if st.contains(&a) {
            return None;
        }
        // annihilate b past the modes below it, then create a past the modes below it
        let mut rest: Vec<usize> = st.to_vec();
        rest.remove(pos_b);
        let below_a = rest.iter().filter(|&&x| x < a).count();
        let sign = if (pos_b + below_a) % 2 == 0 { 1.0 } else { -1.0 };
        rest.insert(below_a, a);
        Some((rest, sign))
    };
    Ok(Representation {
        kind,
        n,
        mats: second_quantized(basis, &states, hop),
    })
}

/// Hermitian Euclidean Dirac matrices `{gamma_i, gamma_j} = 2 delta_ij`.
#[derive(Clone, Debug)]
pub struct GammaSet {
    pub r: usize,
    pub gammas: Vec<CMatrix>,
}

impl GammaSet {
    /// `max |{gamma_i, gamma_j} - 2 delta_ij|` together with the worst hermiticity defect.
    pub fn clifford_residual(&self) -> f64 {
        let size = self.gammas.first().map_or(1, CMatrix::rows);
        let two = CMatrix::identity(size).scale(Complex64::new(2.0, 0.0));
        let mut worst = 0.0f64;
        for (i, gi) in self.gammas.iter().enumerate() {
            worst = worst.max(gi.hermiticity_residual());
            for (j, gj) in self.gammas.iter().enumerate().skip(i) {
                let ac = gi.anticommutator(gj).expect("square");
                let res = if i == j {
                    ac.max_abs_diff(&two).expect("same shape")
                } else {
                    ac.max_abs()
                };
                worst = worst.max(res);
            }
        }
        worst
    }
}

fn pauli() -> [CMatrix; 3] {
    let i = Complex64::new(0.0, 1.0);
    [
        CMatrix::from_fn(2, 2, |a, b| if a != b { ONE } else { ZERO }),
        CMatrix::from_fn(2, 2, |a, b| match (a, b) {
            (0, 1) => -i,
            (1, 0) => i,
            _ => ZERO,
        }),
        CMatrix::diag(&[ONE, -ONE]),
    ]
}

/// Gammas of size `2^(r/2)`. Pair `a` uses `sigma3^(a) x sigma_{1,2} x 1^(h-a-1)`;
/// for odd `r` the last gamma is `sigma3^(h)`, the product of the others up to a phase.
pub fn gamma_set(r: usize, size_cap: usize) -> Result<GammaSet> {
    let h = r / 2;
    let size = 2f64.powi(h as i32);
    if size > size_cap as f64 {
        return Err(Error::cap(
            format!("Dirac matrices of size 2^{h} for r = {r}"),
            size,
            size_cap as f64,
            "",
        ));
    }
    let [s1, s2, s3] = pauli();
    let id = CMatrix::identity(2);
    let chain = |a: usize, mid: &CMatrix| {
        let mut m = CMatrix::identity(1);
        for _ in 0..a {
            m = m.kron(&s3);
        }
        m = m.kron(mid);
        for _ in a + 1..h {
            m = m.kron(&id);
        }
        m
    };
    let mut gammas = Vec::with_capacity(r);
    for a in 0..h {
        gammas.push(chain(a, &s1));
        gammas.push(chain(a, &s2));
    }
    if r % 2 == 1 {
        let mut m = CMatrix::identity(1);
        for _ in 0..h {
            m = m.kron(&s3);
        }
        gammas.push(m);
    }
    Ok(GammaSet { r, gammas })
}

/// `S_i = -(i/4) f_ijk gamma_j gamma_k`, of dimension `2^((n^2-1)/2)`.
pub fn spinor_rep(sc: &StructureConstants, size_cap: usize) -> Result<Representation> {
    let gs = gamma_set(sc.dim(), size_cap)?;
    Ok(spinor_from_gammas(sc, &gs))
}

/// Spinor matrices from a given gamma set; distinct gammas anticommute, so
/// the double sum halves to `-(i/2) sum_{j<k} f_ijk gamma_j gamma_k`.
pub fn spinor_from_gammas(sc: &StructureConstants, gs: &GammaSet) -> Representation {
    let mats = (0..sc.dim())
        .into_par_iter()
        .map(|i| {
            let size = gs.gammas[0].rows();
            let mut m = CMatrix::zeros(size, size);
            for &(j, k, v) in sc.f_support(i) {
                let prod = gs.gammas[j].mul_unchecked(&gs.gammas[k]);
                m.axpy(Complex64::new(0.0, -0.5 * v), &prod).expect("same shape");
            }
            m
        })
        .collect();
    Representation {
        kind: RepKind::Spinor,
        n: sc.n(),
        mats,
    }
}

/// `D_i -> -D_i^T`.
pub fn conjugate_rep(d: &Representation) -> Representation {
    let minus = Complex64::new(-1.0, 0.0);
    Representation {
        kind: RepKind::Conjugate(Box::new(d.kind.clone())),
        n: d.n,
        mats: d.mats.iter().map(|m| m.transpose().scale(minus)).collect(),
    }
}
