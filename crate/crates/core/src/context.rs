//! Per-algebra state: basis, constants, and lazily built invariant tensors.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::basis::{gell_mann_basis, structure_constants, GellMannBasis, StructureConstants};
use crate::casimir::component::{self, PickedTuple};
use crate::error::{Error, Result};
use crate::invariants::{dfamily, omega, ttensor, OmegaTensor, TTensor};
use crate::linalg::Tolerance;
use crate::tensor::codec::{self, CanonicalTensor};
use crate::tensor::{AltTensor, SymTensor};

/// Bumped whenever the generator ordering or normalization changes.
pub const BASIS_ORDERING_VERSION: u16 = 1;

/// Size limits; every limit is a refusal threshold, never a truncation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Caps {
    /// Canonical tuples enumerated for one tensor.
    pub tensor_entries: f64,
    /// Alternation terms `(2m-2)!` for a single Omega component.
    pub factorial_terms: f64,
    /// Spinor module dimension.
    pub spinor_dim: usize,
    /// Dimension of any other representation.
    pub rep_dim: usize,
    /// Complex multiply-adds for one trace computation.
    pub trace_flops: f64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            tensor_entries: 1e7,
            factorial_terms: 4e6,
            spinor_dim: 128,
            rep_dim: 4096,
            trace_flops: 2e11,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Config {
    pub tolerance: Tolerance,
    pub caps: Caps,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArtifactKind {
    D,
    Omega,
    T,
}

impl ArtifactKind {
    pub fn tag(self) -> &'static str {
        match self {
            ArtifactKind::D => "d",
            ArtifactKind::Omega => "omega",
            ArtifactKind::T => "t",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ArtifactKey {
    pub kind: ArtifactKind,
    pub n: usize,
    pub m: usize,
}

/// Read-through persistence for built tensors. Payloads use the tensor codec;
/// anything that fails to decode or has the wrong shape is rebuilt.
pub trait ArtifactStore: Send + Sync {
    fn load(&self, key: &ArtifactKey) -> Option<Vec<u8>>;
    fn save(&self, key: &ArtifactKey, bytes: &[u8]);
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildCounts {
    pub d_builds: usize,
    pub omega_builds: usize,
    pub t_builds: usize,
    pub store_hits: usize,
}

#[derive(Default)]
struct Counters {
    d: AtomicUsize,
    omega: AtomicUsize,
    t: AtomicUsize,
    hits: AtomicUsize,
}

type Memo<T> = Mutex<BTreeMap<usize, Arc<T>>>;

pub struct SuN {
    n: usize,
    config: Config,
    basis: GellMannBasis,
    constants: StructureConstants,
    d_family: Memo<SymTensor>,
    omegas: Memo<OmegaTensor>,
    ts: Memo<TTensor>,
    tuples: Memo<PickedTuple>,
    store: Option<Arc<dyn ArtifactStore>>,
    counters: Counters,
}

impl std::fmt::Debug for SuN {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SuN")
            .field("n", &self.n)
            .field("config", &self.config)
            .finish()
    }
}

fn memo_get<T>(memo: &Memo<T>, m: usize) -> Option<Arc<T>> {
    memo.lock().expect("memo poisoned").get(&m).cloned()
}

fn memo_put<T>(memo: &Memo<T>, m: usize, v: T) -> Arc<T> {
    let v = Arc::new(v);
    memo.lock().expect("memo poisoned").entry(m).or_insert(v).clone()
}

impl SuN {
    pub fn new(n: usize) -> Result<Self> {
        Self::with_config(n, Config::default())
    }

    pub fn with_config(n: usize, config: Config) -> Result<Self> {
        let basis = gell_mann_basis(n)?;
        let constants = structure_constants(&basis);
        Ok(SuN {
            n,
            config,
            basis,
            constants,
            d_family: Mutex::default(),
            omegas: Mutex::default(),
            ts: Mutex::default(),
            tuples: Mutex::default(),
            store: None,
            counters: Counters::default(),
        })
    }

    pub fn with_store(mut self, store: Arc<dyn ArtifactStore>) -> Self {
        self.store = Some(store);
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Adjoint dimension `n^2 - 1`.
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn basis(&self) -> &GellMannBasis {
        &self.basis
    }

    pub fn constants(&self) -> &StructureConstants {
        &self.constants
    }

    pub fn config(&self) -> &Config {
        &self.config
    }

    pub fn build_counts(&self) -> BuildCounts {
        BuildCounts {
            d_builds: self.counters.d.load(Ordering::Relaxed),
            omega_builds: self.counters.omega.load(Ordering::Relaxed),
            t_builds: self.counters.t.load(Ordering::Relaxed),
            store_hits: self.counters.hits.load(Ordering::Relaxed),
        }
    }

    fn load_artifact(&self, kind: ArtifactKind, m: usize, rank: usize) -> Option<CanonicalTensor> {
        let store = self.store.as_ref()?;
        let key = ArtifactKey { kind, n: self.n, m };
        let bytes = store.load(&key)?;
        let (n, t) = codec::decode(&bytes).ok()?;
        let (r, d) = match &t {
            CanonicalTensor::Sym(s) => (s.rank(), s.dim()),
            CanonicalTensor::Alt(a) => (a.rank(), a.dim()),
        };
        if n as usize != self.n || r != rank || d != self.dim() {
            return None;
        }
        self.counters.hits.fetch_add(1, Ordering::Relaxed);
        Some(t)
    }

    fn save_artifact(&self, kind: ArtifactKind, m: usize, t: CanonicalTensor) -> CanonicalTensor {
        if let Some(store) = &self.store {
            let key = ArtifactKey { kind, n: self.n, m };
            store.save(&key, &codec::encode(self.n as u16, &t));
        }
        t
    }

    fn require_d(&self) -> Result<()> {
        if self.n < 3 {
            return Err(Error::Domain(format!(
                "the symmetric d family needs n >= 3, got su({})",
                self.n
            )));
        }
        Ok(())
    }

    /// Member `d^(m)` of the symmetrized family; `d^(2)` is the Kronecker delta.
    pub fn d_family(&self, m: usize) -> Result<Arc<SymTensor>> {
        self.require_d()?;
        if m < 2 {
            return Err(Error::Domain(format!("d family starts at rank 2, got {m}")));
        }
        if let Some(t) = memo_get(&self.d_family, m) {
            return Ok(t);
        }
        let built = match m {
            2 => SymTensor::delta(self.dim()),
            3 => self.constants.d_tensor().clone(),
            _ => match self.load_artifact(ArtifactKind::D, m, m) {
                Some(CanonicalTensor::Sym(s)) => s,
                _ => {
                    let prev = self.d_family(m - 1)?;
                    self.counters.d.fetch_add(1, Ordering::Relaxed);
                    let t = dfamily::next_member(&self.basis, &self.constants, &prev, self.config.caps.tensor_entries)?;
                    match self.save_artifact(ArtifactKind::D, m, CanonicalTensor::Sym(t)) {
                        CanonicalTensor::Sym(s) => s,
                        CanonicalTensor::Alt(_) => unreachable!(),
                    }
                }
            },
        };
        Ok(memo_put(&self.d_family, m, built))
    }

    /// Full `Omega^(2m-1)`. Orders beyond the rank are still constructed when
    /// affordable, checked to vanish, and returned as an absent zero tensor.
    pub fn omega(&self, m: usize) -> Result<Arc<OmegaTensor>> {
        if m < 2 {
            return Err(Error::Domain(format!("Omega orders start at m = 2, got {m}")));
        }
        if let Some(t) = memo_get(&self.omegas, m) {
            return Ok(t);
        }
        let rank = 2 * m - 1;
        if m == 2 {
            let t = OmegaTensor {
                n: self.n,
                m,
                body: self.constants.f_tensor().clone(),
                absent: false,
                vanishing_residual: 0.0,
            };
            return Ok(memo_put(&self.omegas, m, t));
        }
        self.require_d()?;
        let absent = m > self.n;
        let cached = if absent {
            None
        } else {
            match self.load_artifact(ArtifactKind::Omega, m, rank) {
                Some(CanonicalTensor::Alt(a)) => Some(a),
                _ => None,
            }
        };
        let body = match cached {
            Some(a) => a,
            None => {
                let dm = self.d_family(m)?;
                self.counters.omega.fetch_add(1, Ordering::Relaxed);
                let a = omega::build_omega_with(&self.basis, &self.constants, &dm, self.config.caps.tensor_entries)?;
                if absent {
                    a
                } else {
                    match self.save_artifact(ArtifactKind::Omega, m, CanonicalTensor::Alt(a)) {
                        CanonicalTensor::Alt(a) => a,
                        CanonicalTensor::Sym(_) => unreachable!(),
                    }
                }
            }
        };
        let t = if absent {
            OmegaTensor {
                n: self.n,
                m,
                vanishing_residual: body.max_abs(),
                body: AltTensor::zero(rank, self.dim()),
                absent: true,
            }
        } else {
            OmegaTensor {
                n: self.n,
                m,
                body,
                absent: false,
                vanishing_residual: 0.0,
            }
        };
        Ok(memo_put(&self.omegas, m, t))
    }

    /// One component of `Omega^(2m-1)` at a raw tuple (last slot contracted
    /// into `d^(m)`), without building the full tensor.
    pub fn omega_component(&self, m: usize, raw: &[usize]) -> Result<f64> {
        if raw.len() != 2 * m - 1 || raw.iter().any(|&i| i >= self.dim()) {
            return Err(Error::Domain(format!(
                "Omega^({}) needs {} indices below {}",
                2 * m - 1,
                2 * m - 1,
                self.dim()
            )));
        }
        if m == 2 {
            return Ok(self.constants.f(raw[0], raw[1], raw[2]));
        }
        omega::check_component_cost(m, self.config.caps.factorial_terms)?;
        let dm = self.d_family(m)?;
        Ok(omega::omega_component_with(&self.constants, &dm, raw))
    }

    /// `t^(m)`; absent (zero) for `m > n`.
    pub fn t_tensor(&self, m: usize) -> Result<Arc<TTensor>> {
        if m < 2 {
            return Err(Error::Domain(format!("t orders start at m = 2, got {m}")));
        }
        if let Some(t) = memo_get(&self.ts, m) {
            return Ok(t);
        }
        if m > self.n {
            let t = TTensor {
                n: self.n,
                m,
                body: SymTensor::zero(m, self.dim()),
                absent: true,
            };
            return Ok(memo_put(&self.ts, m, t));
        }
        let body = match self.load_artifact(ArtifactKind::T, m, m) {
            Some(CanonicalTensor::Sym(s)) => s,
            _ => {
                let om = self.omega(m)?;
                self.counters.t.fetch_add(1, Ordering::Relaxed);
                let s = ttensor::build_t(&self.constants, &om.body);
                match self.save_artifact(ArtifactKind::T, m, CanonicalTensor::Sym(s)) {
                    CanonicalTensor::Sym(s) => s,
                    CanonicalTensor::Alt(_) => unreachable!(),
                }
            }
        };
        Ok(memo_put(
            &self.ts,
            m,
            TTensor {
                n: self.n,
                m,
                body,
                absent: false,
            },
        ))
    }

    /// Whether a single `Omega^(2m-1)` component can be taken from `d^(m)`
    /// under the current caps.
    pub fn omega_component_feasible(&self, m: usize) -> bool {
        if m == 2 {
            return true;
        }
        if self.n < 3 || crate::tensor::tuple::factorial(2 * m - 2) > self.config.caps.factorial_terms {
            return false;
        }
        memo_get(&self.d_family, m).is_some()
            || crate::tensor::tuple::binomial(self.dim() + m - 1, m) <= self.config.caps.tensor_entries
    }

    /// Tuple with a large `|Omega^(2m-1)|` for the single-component route,
    /// chosen once per order.
    pub fn robust_tuple(&self, m: usize) -> Result<Arc<PickedTuple>> {
        if let Some(t) = memo_get(&self.tuples, m) {
            return Ok(t);
        }
        let t = component::search_tuple(self, m)?;
        Ok(memo_put(&self.tuples, m, t))
    }

    /// Whether `t^(m)` can be built under the current caps.
    pub fn t_tensor_feasible(&self, m: usize) -> bool {
        if m > self.n {
            return true;
        }
        if m <= 2 || memo_get(&self.ts, m).is_some() || memo_get(&self.omegas, m).is_some() {
            return true;
        }
        let r = self.dim();
        crate::tensor::tuple::binomial(r, 2 * m - 1) <= self.config.caps.tensor_entries
            && crate::tensor::tuple::binomial(r + m - 1, m) <= self.config.caps.tensor_entries
    }
}
