//! Canonical storage and contraction of real tensors over the adjoint index range.
//!
//! [`SymTensor`] keeps one value per nondecreasing index tuple and [`AltTensor`]
//! one value per strictly increasing tuple; both resolve arbitrary index orders
//! on lookup. [`DenseTensor`] is the plain row-major container used for small
//! intermediate results and for oracles in tests.

mod canonical;
pub mod codec;
mod ops;
pub mod tuple;

pub use canonical::{AltTensor, SymTensor, PRUNE_REL};
pub use ops::{antisymmetrize, antisymmetrize_full, contract, symmetrize, ContractOutput, ContractionPlan, Symmetry};

/// Read access shared by the dense and canonical containers.
pub trait TensorView {
    fn rank(&self) -> usize;
    fn dim(&self) -> usize;
    fn get(&self, idx: &[usize]) -> f64;
    /// Number of stored values (for canonical storage, the canonical entries).
    fn nnz(&self) -> usize;
    /// Visits every raw index assignment with a nonzero value.
    fn for_each_raw(&self, f: &mut dyn FnMut(&[usize], f64));
    /// Sum of squares over all raw index assignments.
    fn norm_sq(&self) -> f64;
}

#[derive(Clone, Debug, PartialEq)]
pub struct DenseTensor {
    rank: usize,
    dim: usize,
    data: Vec<f64>,
}

impl DenseTensor {
    pub fn zeros(rank: usize, dim: usize) -> Self {
        DenseTensor {
            rank,
            dim,
            data: vec![0.0; dim.pow(rank as u32)],
        }
    }

    pub fn from_fn(rank: usize, dim: usize, mut f: impl FnMut(&[usize]) -> f64) -> Self {
        let mut t = Self::zeros(rank, dim);
        let mut idx = vec![0usize; rank];
        for v in t.data.iter_mut() {
            *v = f(&idx);
            for p in (0..rank).rev() {
                idx[p] += 1;
                if idx[p] < dim {
                    break;
                }
                idx[p] = 0;
            }
        }
        t
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank);
        idx.iter().fold(0, |acc, &i| acc * self.dim + i)
    }

    #[inline]
    pub fn get(&self, idx: &[usize]) -> f64 {
        self.data[self.offset(idx)]
    }

    #[inline]
    pub fn set(&mut self, idx: &[usize], v: f64) {
        let o = self.offset(idx);
        self.data[o] = v;
    }

    #[inline]
    pub fn add_at(&mut self, idx: &[usize], v: f64) {
        let o = self.offset(idx);
        self.data[o] += v;
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|v| v.abs()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &DenseTensor) -> f64 {
        assert_eq!((self.rank, self.dim), (other.rank, other.dim));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    /// Dense copy of any tensor view.
    pub fn from_view(t: &dyn TensorView) -> Self {
        let mut out = Self::zeros(t.rank(), t.dim());
        t.for_each_raw(&mut |idx, v| out.set(idx, v));
        out
    }
}

impl TensorView for DenseTensor {
    fn rank(&self) -> usize {
        self.rank
    }
    fn dim(&self) -> usize {
        self.dim
    }
    fn get(&self, idx: &[usize]) -> f64 {
        DenseTensor::get(self, idx)
    }
    fn nnz(&self) -> usize {
        self.data.iter().filter(|v| **v != 0.0).count()
    }
    fn for_each_raw(&self, f: &mut dyn FnMut(&[usize], f64)) {
        let mut idx = vec![0usize; self.rank];
        for &v in &self.data {
            if v != 0.0 {
                f(&idx, v);
            }
            for p in (0..self.rank).rev() {
                idx[p] += 1;
                if idx[p] < self.dim {
                    break;
                }
                idx[p] = 0;
            }
        }
    }
    fn norm_sq(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum()
    }
}

/// Full self-contraction of any tensor.
pub fn norm_sq(t: &dyn TensorView) -> f64 {
    t.norm_sq()
}
