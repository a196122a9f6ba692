//! Single antisymmetrized-trace components and the choice of a robust tuple.

use std::collections::HashMap;

use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::basis::GellMannBasis;
use crate::context::SuN;
use crate::error::{Error, Result};
use crate::invariants::omega_component_from_lambdas;
use crate::linalg::CMatrix;
use crate::tensor::tuple;
use crate::traces::{antisym_trace, antisym_trace_cost};

/// Smallest acceptable `|Omega|` at the chosen tuple.
pub const EPS_PICK: f64 = 1e-6;
const CANDIDATES: usize = 48;
const ATTEMPTS: usize = 200_000;

/// Where the Omega value at a picked tuple came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OmegaSource {
    /// Contraction of structure constants into `d^(m)`.
    DFamily,
    /// `Tr lambda_[x] / (2 i^(m-1))`, used when `d^(m)` exceeds the caps.
    LambdaTrace,
}

/// Tuple used by the single-component route.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PickedTuple {
    pub m: usize,
    pub indices: Vec<usize>,
    pub omega: f64,
    pub source: OmegaSource,
    /// `|Omega_d - Omega_lambda|` when both were evaluated.
    pub route_gap: Option<f64>,
}

/// Samples strictly increasing tuples of length `2m-1` that pass the
/// selection rule: `m-1` index pairs drawn from nonzero `f` entries, closed by
/// the unique generator restoring a zero mask and the right imaginary parity.
struct Sampler<'a> {
    basis: &'a GellMannBasis,
    pairs: Vec<(usize, usize)>,
    by_mask: HashMap<(u64, bool), Vec<usize>>,
}

impl<'a> Sampler<'a> {
    fn new(alg: &'a SuN) -> Self {
        let basis = alg.basis();
        let sc = alg.constants();
        let mut pairs: Vec<(usize, usize)> = (0..basis.dim())
            .flat_map(|k| sc.f_support(k).iter().map(|&(i, j, _)| (i, j)))
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        let mut by_mask: HashMap<(u64, bool), Vec<usize>> = HashMap::new();
        for i in 0..basis.dim() {
            by_mask
                .entry((basis.mask(i), basis.is_imaginary(i)))
                .or_default()
                .push(i);
        }
        Sampler { basis, pairs, by_mask }
    }

    fn sample(&self, m: usize, rng: &mut ChaCha8Rng) -> Option<Vec<usize>> {
        let mut idx = Vec::with_capacity(2 * m - 1);
        for _ in 0..m - 1 {
            let &(i, j) = self.pairs.choose(rng)?;
            if idx.contains(&i) || idx.contains(&j) {
                return None;
            }
            idx.push(i);
            idx.push(j);
        }
        let mask = idx.iter().fold(0u64, |acc, &i| acc ^ self.basis.mask(i));
        let imag = self.basis.imaginary_count(&idx);
        let want_imag = (m - 1 + imag) % 2 == 1;
        let options: Vec<usize> = self
            .by_mask
            .get(&(mask, want_imag))?
            .iter()
            .copied()
            .filter(|k| !idx.contains(k))
            .collect();
        if options.is_empty() {
            return None;
        }
        idx.push(options[rng.gen_range(0..options.len())]);
        idx.sort_unstable();
        Some(idx)
    }
}

/// Deterministic search for a tuple with large `|Omega^(2m-1)|`, scoring
/// candidates by `|Tr lambda_[x]| / 2`, which equals `|Omega_x|`.
pub(crate) fn search_tuple(alg: &SuN, m: usize) -> Result<PickedTuple> {
    let n = alg.n();
    if m < 2 || m > n {
        return Err(Error::Domain(format!("no Omega^({}) for su({n})", 2 * m - 1)));
    }
    let sampler = Sampler::new(alg);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 ^ ((n as u64) << 8) ^ m as u64);
    let mut candidates: Vec<Vec<usize>> = Vec::with_capacity(CANDIDATES);
    for _ in 0..ATTEMPTS {
        if candidates.len() == CANDIDATES {
            break;
        }
        if let Some(t) = sampler.sample(m, &mut rng) {
            if !candidates.contains(&t) {
                candidates.push(t);
            }
        }
    }
    let scored: Vec<(f64, Vec<usize>)> = candidates
        .into_par_iter()
        .map(|t| {
            let (v, _) = omega_component_from_lambdas(alg.basis(), &t)?;
            Ok((v.abs(), t))
        })
        .collect::<Result<_>>()?;
    let (best, indices) = scored
        .into_iter()
        .max_by(|a, b| a.0.total_cmp(&b.0).then_with(|| b.1.cmp(&a.1)))
        .unwrap_or((0.0, Vec::new()));
    if best <= EPS_PICK {
        return Err(Error::NoRobustTuple { n, m, best });
    }
    let (lambda_value, _) = omega_component_from_lambdas(alg.basis(), &indices)?;
    let from_d = if alg.omega_component_feasible(m) {
        Some(alg.omega_component(m, &indices)?)
    } else {
        None
    };
    Ok(match from_d {
        Some(v) => PickedTuple {
            m,
            indices,
            omega: v,
            source: OmegaSource::DFamily,
            route_gap: Some((v - lambda_value).abs()),
        },
        None => PickedTuple {
            m,
            indices,
            omega: lambda_value,
            source: OmegaSource::LambdaTrace,
            route_gap: None,
        },
    })
}

/// Flops of one antisymmetrized trace of `k` factors of size `dim`.
pub fn component_cost(k: usize, dim: usize) -> f64 {
    8.0 * antisym_trace_cost(k) * (dim as f64).powi(3)
}

/// `Tr D_[i_1 .. i_k]` with unit weight.
pub fn antisym_trace_component(mats: &[CMatrix], indices: &[usize], flop_cap: f64) -> Result<Complex64> {
    if let Some(&bad) = indices.iter().find(|&&i| i >= mats.len()) {
        return Err(Error::Domain(format!("generator index {bad} out of range")));
    }
    let mut sorted = indices.to_vec();
    if tuple::sort_with_parity(&mut sorted) == 0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let dim = mats.first().map_or(0, CMatrix::rows);
    let cost = component_cost(indices.len(), dim);
    if cost > flop_cap {
        return Err(Error::cap(
            format!("antisymmetrized trace of {} factors of size {dim}", indices.len()),
            cost,
            flop_cap,
            "",
        ));
    }
    let chain: Vec<&CMatrix> = indices.iter().map(|&i| &mats[i]).collect();
    antisym_trace(&chain)
}
