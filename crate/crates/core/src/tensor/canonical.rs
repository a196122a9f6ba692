use std::collections::HashMap;

use super::tuple::{self, Key};
use super::{DenseTensor, TensorView};

/// Entries whose magnitude is below this fraction of the largest entry are dropped.
pub const PRUNE_REL: f64 = 1e-12;

/// Sorted canonical entries shared by the symmetric and antisymmetric containers.
#[derive(Clone, Debug, PartialEq)]
struct Entries {
    rank: usize,
    dim: usize,
    keys: Vec<Key>,
    vals: Vec<f64>,
}

impl Entries {
    fn from_pairs(rank: usize, dim: usize, mut pairs: Vec<(Key, f64)>) -> Self {
        assert!(rank <= tuple::MAX_RANK, "rank {rank} exceeds {}", tuple::MAX_RANK);
        assert!(dim <= tuple::MAX_DIM, "dim {dim} exceeds {}", tuple::MAX_DIM);
        pairs.sort_unstable_by_key(|p| p.0);
        pairs.dedup_by(|b, a| {
            if a.0 == b.0 {
                a.1 += b.1;
                true
            } else {
                false
            }
        });
        let max = pairs.iter().map(|p| p.1.abs()).fold(0.0, f64::max);
        let floor = max * PRUNE_REL;
        let (keys, vals) = pairs.into_iter().filter(|p| p.1 != 0.0 && p.1.abs() > floor).unzip();
        Entries { rank, dim, keys, vals }
    }

    #[inline]
    fn lookup(&self, key: Key) -> f64 {
        match self.keys.binary_search(&key) {
            Ok(p) => self.vals[p],
            Err(_) => 0.0,
        }
    }

    fn iter(&self) -> impl Iterator<Item = (Vec<usize>, f64)> + '_ {
        self.keys
            .iter()
            .zip(&self.vals)
            .map(move |(&k, &v)| (tuple::unpack(k, self.rank), v))
    }

    fn max_abs(&self) -> f64 {
        self.vals.iter().map(|v| v.abs()).fold(0.0, f64::max)
    }

    fn map_values(&self, f: impl Fn(f64) -> f64) -> Self {
        let pairs = self.keys.iter().zip(&self.vals).map(|(&k, &v)| (k, f(v))).collect();
        Entries::from_pairs(self.rank, self.dim, pairs)
    }

    fn combine(&self, other: &Self, alpha: f64, beta: f64) -> Self {
        assert_eq!((self.rank, self.dim), (other.rank, other.dim));
        let mut pairs: Vec<(Key, f64)> = Vec::with_capacity(self.keys.len() + other.keys.len());
        pairs.extend(self.keys.iter().zip(&self.vals).map(|(&k, &v)| (k, alpha * v)));
        pairs.extend(other.keys.iter().zip(&other.vals).map(|(&k, &v)| (k, beta * v)));
        Entries::from_pairs(self.rank, self.dim, pairs)
    }
}

macro_rules! canonical_common {
    ($t:ty) => {
        impl $t {
            pub fn rank(&self) -> usize {
                self.0.rank
            }

            pub fn dim(&self) -> usize {
                self.0.dim
            }

            /// Number of stored canonical entries.
            pub fn len(&self) -> usize {
                self.0.keys.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.keys.is_empty()
            }

            /// Canonical entries in lexicographic order.
            pub fn entries(&self) -> impl Iterator<Item = (Vec<usize>, f64)> + '_ {
                self.0.iter()
            }

            pub(crate) fn raw_parts(&self) -> (&[Key], &[f64]) {
                (&self.0.keys, &self.0.vals)
            }

            /// Lookup by the packed key of an already canonical tuple.
            #[inline]
            pub fn get_key(&self, key: Key) -> f64 {
                self.0.lookup(key)
            }

            pub fn max_abs(&self) -> f64 {
                self.0.max_abs()
            }

            pub fn scale(&self, alpha: f64) -> Self {
                Self(self.0.map_values(|v| alpha * v))
            }

            /// `alpha * self + beta * other`.
            pub fn lin_comb(&self, alpha: f64, other: &Self, beta: f64) -> Self {
                Self(self.0.combine(&other.0, alpha, beta))
            }

            pub fn zero(rank: usize, dim: usize) -> Self {
                Self(Entries::from_pairs(rank, dim, Vec::new()))
            }

            /// Largest entrywise difference between two tensors of the same shape.
            pub fn max_abs_diff(&self, other: &Self) -> f64 {
                self.lin_comb(1.0, other, -1.0).max_abs()
            }
        }
    };
}

/// Totally symmetric real tensor stored on nondecreasing index tuples.
#[derive(Clone, Debug, PartialEq)]
pub struct SymTensor(Entries);

/// Totally antisymmetric real tensor stored on strictly increasing index tuples.
#[derive(Clone, Debug, PartialEq)]
pub struct AltTensor(Entries);

canonical_common!(SymTensor);
canonical_common!(AltTensor);

impl SymTensor {
    /// Builds from `(tuple, value)` pairs; tuples are canonicalised and
    /// repeated tuples summed.
    pub fn from_entries(rank: usize, dim: usize, entries: impl IntoIterator<Item = (Vec<usize>, f64)>) -> Self {
        let pairs = entries
            .into_iter()
            .map(|(t, v)| {
                assert_eq!(t.len(), rank);
                (tuple::sym_key(&t), v)
            })
            .collect();
        SymTensor(Entries::from_pairs(rank, dim, pairs))
    }

    pub(crate) fn from_key_pairs(rank: usize, dim: usize, pairs: Vec<(Key, f64)>) -> Self {
        SymTensor(Entries::from_pairs(rank, dim, pairs))
    }

    /// Kronecker delta as a rank-2 symmetric tensor.
    pub fn delta(dim: usize) -> Self {
        Self::from_entries(2, dim, (0..dim).map(|i| (vec![i, i], 1.0)))
    }

    #[inline]
    pub fn get(&self, idx: &[usize]) -> f64 {
        debug_assert_eq!(idx.len(), self.rank());
        self.0.lookup(tuple::sym_key(idx))
    }

    /// Takes the canonical (nondecreasing) entries of a dense tensor.
    pub fn from_dense(t: &DenseTensor) -> Self {
        let mut pairs = Vec::new();
        tuple::for_each_nondecreasing(t.rank(), t.dim(), |k| {
            let v = t.get(k);
            if v != 0.0 {
                pairs.push((tuple::pack(k), v));
            }
        });
        SymTensor(Entries::from_pairs(t.rank(), t.dim(), pairs))
    }

    /// Full self-contraction: sum of `multiplicity * value^2` over canonical entries.
    pub fn norm_sq(&self) -> f64 {
        let mut buf = vec![0usize; self.rank()];
        self.0
            .keys
            .iter()
            .zip(&self.0.vals)
            .map(|(&k, &v)| {
                tuple::unpack_into(k, &mut buf);
                tuple::multiplicity(&buf) * v * v
            })
            .sum()
    }

    /// Full contraction with another symmetric tensor of the same rank.
    pub fn dot(&self, other: &SymTensor) -> f64 {
        assert_eq!((self.rank(), self.dim()), (other.rank(), other.dim()));
        let (small, big) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut buf = vec![0usize; self.rank()];
        small
            .0
            .keys
            .iter()
            .zip(&small.0.vals)
            .map(|(&k, &v)| {
                let w = big.0.lookup(k);
                if w == 0.0 {
                    return 0.0;
                }
                tuple::unpack_into(k, &mut buf);
                tuple::multiplicity(&buf) * v * w
            })
            .sum()
    }

    /// Symmetrised outer product with unit weight, `a_(i..j b_k..l)`.
    pub fn sym_product(&self, other: &SymTensor) -> SymTensor {
        assert_eq!(self.dim(), other.dim());
        let (p, q) = (self.rank(), other.rank());
        let total = tuple::binomial(p + q, p);
        let mut acc: HashMap<Key, f64> = HashMap::new();
        let mut ka = vec![0usize; p];
        let mut kb = vec![0usize; q];
        let mut kk = vec![0usize; p + q];
        for (&a, &va) in self.0.keys.iter().zip(&self.0.vals) {
            tuple::unpack_into(a, &mut ka);
            for (&b, &vb) in other.0.keys.iter().zip(&other.0.vals) {
                tuple::unpack_into(b, &mut kb);
                kk[..p].copy_from_slice(&ka);
                kk[p..].copy_from_slice(&kb);
                kk.sort_unstable();
                // number of position subsets of kk carrying the multiset ka
                let mut ways = 1.0;
                let mut i = 0;
                while i < kk.len() {
                    let x = kk[i];
                    let ck = kk[i..].iter().take_while(|&&y| y == x).count();
                    let ca = ka.iter().filter(|&&y| y == x).count();
                    ways *= tuple::binomial(ck, ca);
                    i += ck;
                }
                *acc.entry(tuple::pack(&kk)).or_insert(0.0) += ways * va * vb / total;
            }
        }
        SymTensor(Entries::from_pairs(p + q, self.dim(), acc.into_iter().collect()))
    }
}

impl AltTensor {
    /// Builds from `(tuple, value)` pairs given at arbitrary orderings; the
    /// permutation sign is applied and tuples with repeated indices are ignored.
    pub fn from_entries(rank: usize, dim: usize, entries: impl IntoIterator<Item = (Vec<usize>, f64)>) -> Self {
        let pairs = entries
            .into_iter()
            .filter_map(|(t, v)| {
                assert_eq!(t.len(), rank);
                tuple::alt_key(&t).map(|(k, s)| (k, s * v))
            })
            .collect();
        AltTensor(Entries::from_pairs(rank, dim, pairs))
    }

    pub(crate) fn from_key_pairs(rank: usize, dim: usize, pairs: Vec<(Key, f64)>) -> Self {
        AltTensor(Entries::from_pairs(rank, dim, pairs))
    }

    /// Signed lookup; exactly zero on a repeated index.
    #[inline]
    pub fn get(&self, idx: &[usize]) -> f64 {
        debug_assert_eq!(idx.len(), self.rank());
        match tuple::alt_key(idx) {
            Some((k, s)) => s * self.0.lookup(k),
            None => 0.0,
        }
    }

    /// Takes the canonical (strictly increasing) entries of a dense tensor.
    pub fn from_dense(t: &DenseTensor) -> Self {
        let mut pairs = Vec::new();
        tuple::for_each_increasing(t.rank(), t.dim(), |k| {
            let v = t.get(k);
            if v != 0.0 {
                pairs.push((tuple::pack(k), v));
            }
        });
        AltTensor(Entries::from_pairs(t.rank(), t.dim(), pairs))
    }

    /// Full self-contraction: `rank! * sum(value^2)`.
    pub fn norm_sq(&self) -> f64 {
        tuple::factorial(self.rank()) * self.0.vals.iter().map(|v| v * v).sum::<f64>()
    }
}

impl TensorView for SymTensor {
    fn rank(&self) -> usize {
        self.rank()
    }
    fn dim(&self) -> usize {
        self.dim()
    }
    fn get(&self, idx: &[usize]) -> f64 {
        SymTensor::get(self, idx)
    }
    fn nnz(&self) -> usize {
        self.len()
    }
    fn for_each_raw(&self, f: &mut dyn FnMut(&[usize], f64)) {
        for (t, v) in self.entries() {
            tuple::for_each_distinct_permutation(&t, |p| f(p, v));
        }
    }
    fn norm_sq(&self) -> f64 {
        SymTensor::norm_sq(self)
    }
}

impl TensorView for AltTensor {
    fn rank(&self) -> usize {
        self.rank()
    }
    fn dim(&self) -> usize {
        self.dim()
    }
    fn get(&self, idx: &[usize]) -> f64 {
        AltTensor::get(self, idx)
    }
    fn nnz(&self) -> usize {
        self.len()
    }
    fn for_each_raw(&self, f: &mut dyn FnMut(&[usize], f64)) {
        let perms = tuple::signed_permutations(self.rank());
        let mut buf = vec![0usize; self.rank()];
        for (t, v) in self.entries() {
            for (p, s) in &perms {
                for (b, &q) in buf.iter_mut().zip(p) {
                    *b = t[q];
                }
                f(&buf, s * v);
            }
        }
    }
    fn norm_sq(&self) -> f64 {
        AltTensor::norm_sq(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sym_lookup_is_permutation_invariant() {
        let t = SymTensor::from_entries(3, 4, vec![(vec![2, 0, 1], 1.5)]);
        assert_eq!(t.len(), 1);
        for p in [[0, 1, 2], [2, 1, 0], [1, 2, 0]] {
            assert_eq!(t.get(&p), 1.5);
        }
        assert_eq!(t.norm_sq(), 6.0 * 2.25);
    }

    #[test]
    fn alt_lookup_signs() {
        let t = AltTensor::from_entries(3, 4, vec![(vec![0, 1, 2], 2.0)]);
        assert_eq!(t.get(&[1, 0, 2]), -2.0);
        assert_eq!(t.get(&[2, 0, 1]), 2.0);
        assert_eq!(t.get(&[1, 1, 2]), 0.0);
        assert_eq!(t.norm_sq(), 6.0 * 4.0);
    }

    #[test]
    fn alt_from_entries_ignores_repeats_and_signs_input() {
        let t = AltTensor::from_entries(2, 3, vec![(vec![1, 0], 1.0), (vec![2, 2], 5.0)]);
        assert_eq!(t.len(), 1);
        assert_eq!(t.get(&[0, 1]), -1.0);
    }

    #[test]
    fn pruning_drops_relative_noise() {
        let t = SymTensor::from_entries(1, 3, vec![(vec![0], 1.0), (vec![1], 1e-15), (vec![2], 0.0)]);
        assert_eq!(t.len(), 1);
    }

    #[test]
    fn sym_product_of_deltas() {
        // delta_(ij delta_kl) at (0,0,0,0) is 1, at (0,0,1,1) it is 1/3
        let d = SymTensor::delta(3);
        let dd = d.sym_product(&d);
        assert!((dd.get(&[0, 0, 0, 0]) - 1.0).abs() < 1e-15);
        assert!((dd.get(&[0, 1, 0, 1]) - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(dd.get(&[0, 1, 1, 2]), 0.0);
    }

    #[test]
    fn dot_matches_norm() {
        let t = SymTensor::from_entries(2, 3, vec![(vec![0, 1], 2.0), (vec![2, 2], -1.0)]);
        assert_eq!(t.dot(&t), t.norm_sq());
    }
}
