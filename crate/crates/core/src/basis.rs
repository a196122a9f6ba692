//! Generalized Gell-Mann basis of su(n) and the constant tensors `f`, `d`.
//!
//! Ordering: for `k = 1..n`, first the off-diagonal pairs `(j, k)` with
//! `j < k` (symmetric, then antisymmetric), then the diagonal generator
//! `sqrt(2/(k(k+1))) diag(1, .., 1, -k, 0, ..)`. For n = 2 this is the Pauli
//! triple and for n = 3 the usual `lambda_1 .. lambda_8`.
//!
//! Every generator also carries a parity mask over `Z_2^n`: conjugation by a
//! diagonal sign matrix flips off-diagonal generators touching an odd number of
//! flipped rows, so any invariant tensor component vanishes unless the XOR of
//! the masks of its indices is zero.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, ONE, ZERO};
use crate::tensor::{AltTensor, SymTensor};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Generator {
    /// Entries `[j,k] = [k,j] = 1`.
    Symmetric { j: usize, k: usize },
    /// Entries `[j,k] = -i`, `[k,j] = i`.
    Antisymmetric { j: usize, k: usize },
    /// The `k`-th Cartan generator, `k = 1..n`.
    Diagonal { k: usize },
}

impl Generator {
    pub fn mask(self) -> u64 {
        match self {
            Generator::Symmetric { j, k } | Generator::Antisymmetric { j, k } => (1 << j) | (1 << k),
            Generator::Diagonal { .. } => 0,
        }
    }

    pub fn is_imaginary(self) -> bool {
        matches!(self, Generator::Antisymmetric { .. })
    }
}

#[derive(Clone, Debug)]
pub struct GellMannBasis {
    n: usize,
    generators: Vec<Generator>,
    lambdas: Vec<CMatrix>,
    masks: Vec<u64>,
}

pub fn gell_mann_basis(n: usize) -> Result<GellMannBasis> {
    if n < 2 {
        return Err(Error::Domain(format!("su(n) needs n >= 2, got {n}")));
    }
    if n * n > crate::tensor::tuple::MAX_DIM || n > 63 {
        return Err(Error::Domain(format!("su({n}) exceeds the supported index range")));
    }
    let mut generators = Vec::with_capacity(n * n - 1);
    for k in 1..n {
        for j in 0..k {
            generators.push(Generator::Symmetric { j, k });
            generators.push(Generator::Antisymmetric { j, k });
        }
        generators.push(Generator::Diagonal { k });
    }
    let lambdas = generators.iter().map(|&g| generator_matrix(n, g)).collect();
    let masks = generators.iter().map(|g| g.mask()).collect();
    Ok(GellMannBasis {
        n,
        generators,
        lambdas,
        masks,
    })
}

fn generator_matrix(n: usize, g: Generator) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    match g {
        Generator::Symmetric { j, k } => {
            m[(j, k)] = ONE;
            m[(k, j)] = ONE;
        }
        Generator::Antisymmetric { j, k } => {
            m[(j, k)] = Complex64::new(0.0, -1.0);
            m[(k, j)] = Complex64::new(0.0, 1.0);
        }
        Generator::Diagonal { k } => {
            let norm = (2.0 / (k * (k + 1)) as f64).sqrt();
            for a in 0..k {
                m[(a, a)] = Complex64::new(norm, 0.0);
            }
            m[(k, k)] = Complex64::new(-(k as f64) * norm, 0.0);
        }
    }
    m
}

impl GellMannBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Adjoint dimension `n^2 - 1`.
    pub fn dim(&self) -> usize {
        self.lambdas.len()
    }

    pub fn lambdas(&self) -> &[CMatrix] {
        &self.lambdas
    }

    pub fn lambda(&self, i: usize) -> &CMatrix {
        &self.lambdas[i]
    }

    pub fn generator(&self, i: usize) -> Generator {
        self.generators[i]
    }

    pub fn mask(&self, i: usize) -> u64 {
        self.masks[i]
    }

    pub fn is_imaginary(&self, i: usize) -> bool {
        self.generators[i].is_imaginary()
    }

    /// Necessary condition for a nonzero invariant tensor component.
    pub fn admissible(&self, idx: &[usize]) -> bool {
        idx.iter().fold(0, |acc, &i| acc ^ self.masks[i]) == 0
    }

    pub fn imaginary_count(&self, idx: &[usize]) -> usize {
        idx.iter().filter(|&&i| self.is_imaginary(i)).count()
    }

    /// Max over `|Tr lambda_i|` and `|Tr(lambda_i lambda_j) - 2 delta_ij|`.
    pub fn trace_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, a) in self.lambdas.iter().enumerate() {
            worst = worst.max(a.trace().expect("square").norm());
            for (j, b) in self.lambdas.iter().enumerate() {
                let target = if i == j { 2.0 } else { 0.0 };
                let t = crate::linalg::frobenius_pair_unchecked(a, b);
                worst = worst.max((t - Complex64::new(target, 0.0)).norm());
            }
        }
        worst
    }

    pub fn hermiticity_residual(&self) -> f64 {
        self.lambdas
            .iter()
            .map(|l| l.hermiticity_residual())
            .fold(0.0, f64::max)
    }

    /// Max entrywise residual of
    /// `lambda_i lambda_j = (2/n) delta_ij + (d_ijk + i f_ijk) lambda_k` over all pairs.
    pub fn product_residual(&self, sc: &StructureConstants) -> f64 {
        let r = self.dim();
        let mut worst = 0.0f64;
        for i in 0..r {
            for j in 0..r {
                let lhs = self.lambdas[i].mul_unchecked(&self.lambdas[j]);
                let mut rhs = if i == j {
                    CMatrix::identity(self.n).scale(Complex64::new(2.0 / self.n as f64, 0.0))
                } else {
                    CMatrix::zeros(self.n, self.n)
                };
                for k in 0..r {
                    let c = Complex64::new(sc.d(i, j, k), sc.f(i, j, k));
                    if c != ZERO {
                        rhs.axpy(c, &self.lambdas[k]).expect("same shape");
                    }
                }
                worst = worst.max(lhs.max_abs_diff(&rhs).expect("same shape"));
            }
        }
        worst
    }
}

/// `f` and `d` from trace formulas, with dense lookup tables and sparse
/// row structure for the contraction kernels.
#[derive(Clone, Debug)]
pub struct StructureConstants {
    n: usize,
    dim: usize,
    f: AltTensor,
    d: SymTensor,
    f_dense: Vec<f64>,
    d_dense: Vec<f64>,
    /// Per `k`: all `(i, j, f_ijk)` with `i < j` and `f_ijk != 0`.
    f_support: Vec<Vec<(usize, usize, f64)>>,
    /// Per `(i, j)`: all `(k, f_ijk)` with `f_ijk != 0`.
    f_rows: Vec<Vec<(usize, f64)>>,
    /// Per `(i, j)`: all `(k, d_ijk)` with `d_ijk != 0`.
    d_rows: Vec<Vec<(usize, f64)>>,
    imaginary_residual: f64,
}

const ZERO_CUT: f64 = 1e-13;

pub fn structure_constants(basis: &GellMannBasis) -> StructureConstants {
    let r = basis.dim();
    let mut f_dense = vec![0.0; r * r * r];
    let mut d_dense = vec![0.0; r * r * r];
    let mut imaginary_residual = 0.0f64;
    let mut f_pairs = Vec::new();
    let mut d_pairs = Vec::new();
    for i in 0..r {
        for j in i..r {
            let ij = basis.lambda(i).mul_unchecked(basis.lambda(j));
            let ji = basis.lambda(j).mul_unchecked(basis.lambda(i));
            for k in j..r {
                if !basis.admissible(&[i, j, k]) {
                    continue;
                }
                let t_ij = crate::linalg::frobenius_pair_unchecked(&ij, basis.lambda(k));
                let t_ji = crate::linalg::frobenius_pair_unchecked(&ji, basis.lambda(k));
                // f = Tr([a,b]c)/(4i), d = Tr({a,b}c)/4
                let f = (t_ij - t_ji) / Complex64::new(0.0, 4.0);
                let d = (t_ij + t_ji) / 4.0;
                imaginary_residual = imaginary_residual.max(f.im.abs()).max(d.im.abs());
                let (f, d) = (clean(f.re), clean(d.re));
                if f != 0.0 && i < j && j < k {
                    f_pairs.push((vec![i, j, k], f));
                }
                if d != 0.0 {
                    d_pairs.push((vec![i, j, k], d));
                }
            }
        }
    }
    let f = AltTensor::from_entries(3, r, f_pairs);
    let d = SymTensor::from_entries(3, r, d_pairs);
    let mut f_support = vec![Vec::new(); r];
    let mut f_rows = vec![Vec::new(); r * r];
    let mut d_rows = vec![Vec::new(); r * r];
    for (idx, v) in f.entries() {
        let (a, b, c) = (idx[0], idx[1], idx[2]);
        for (x, y, z, s) in [
            (a, b, c, 1.0),
            (b, c, a, 1.0),
            (c, a, b, 1.0),
            (b, a, c, -1.0),
            (c, b, a, -1.0),
            (a, c, b, -1.0),
        ] {
            f_dense[(x * r + y) * r + z] = s * v;
            f_rows[x * r + y].push((z, s * v));
            if x < y {
                f_support[z].push((x, y, s * v));
            }
        }
    }
    for (idx, v) in d.entries() {
        crate::tensor::tuple::for_each_distinct_permutation(&idx, |p| {
            d_dense[(p[0] * r + p[1]) * r + p[2]] = v;
            d_rows[p[0] * r + p[1]].push((p[2], v));
        });
    }
    for row in f_rows.iter_mut().chain(d_rows.iter_mut()) {
        row.sort_by_key(|&(k, _)| k);
    }
    for s in f_support.iter_mut() {
        s.sort_by_key(|&(i, j, _)| (i, j));
    }
    StructureConstants {
        n: basis.n(),
        dim: r,
        f,
        d,
        f_dense,
        d_dense,
        f_support,
        f_rows,
        d_rows,
        imaginary_residual,
    }
}

fn clean(v: f64) -> f64 {
    if v.abs() < ZERO_CUT {
        0.0
    } else {
        v
    }
}

impl StructureConstants {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn f_tensor(&self) -> &AltTensor {
        &self.f
    }

    pub fn d_tensor(&self) -> &SymTensor {
        &self.d
    }

    #[inline]
    pub fn f(&self, i: usize, j: usize, k: usize) -> f64 {
        self.f_dense[(i * self.dim + j) * self.dim + k]
    }

    #[inline]
    pub fn d(&self, i: usize, j: usize, k: usize) -> f64 {
        self.d_dense[(i * self.dim + j) * self.dim + k]
    }

    /// Nonzero `(i, j, f_ijk)` with `i < j` for fixed `k`.
    pub fn f_support(&self, k: usize) -> &[(usize, usize, f64)] {
        &self.f_support[k]
    }

    /// Nonzero `(k, f_ijk)` for fixed `(i, j)`.
    pub fn f_row(&self, i: usize, j: usize) -> &[(usize, f64)] {
        &self.f_rows[i * self.dim + j]
    }

    /// Nonzero `(k, d_ijk)` for fixed `(i, j)`.
    pub fn d_row(&self, i: usize, j: usize) -> &[(usize, f64)] {
        &self.d_rows[i * self.dim + j]
    }

    pub fn imaginary_residual(&self) -> f64 {
        self.imaginary_residual
    }

    /// `max |f_ija f_akl + f_jka f_ail + f_kia f_ajl|` over all `i, j, k, l`.
    pub fn jacobi_residual(&self) -> f64 {
        let r = self.dim;
        let mut worst = 0.0f64;
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    for l in 0..r {
                        worst = worst.max(self.jacobi_term(i, j, k, l).abs());
                    }
                }
            }
        }
        worst
    }

    fn jacobi_term(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        self.f_row(i, j)
            .iter()
            .map(|&(a, fa)| fa * self.f(a, k, l))
            .chain(self.f_row(j, k).iter().map(|&(a, fa)| fa * self.f(a, i, l)))
            .chain(self.f_row(k, i).iter().map(|&(a, fa)| fa * self.f(a, j, l)))
            .sum()
    }

    /// `max |f_ikl f_jkl - n delta_ij|`.
    pub fn ff_residual(&self) -> f64 {
        self.pair_contraction_residual(|s, i, j| s.f_row(i, j), self.n as f64)
    }

    /// `max |d_ikl d_jkl - (n^2 - 4)/n delta_ij|`.
    pub fn dd_residual(&self) -> f64 {
        let n = self.n as f64;
        self.pair_contraction_residual(|s, i, j| s.d_row(i, j), (n * n - 4.0) / n)
    }

    fn pair_contraction_residual<'a>(
        &'a self,
        row: impl Fn(&'a Self, usize, usize) -> &'a [(usize, f64)],
        target: f64,
    ) -> f64 {
        let r = self.dim;
        let mut worst = 0.0f64;
        for i in 0..r {
            for j in 0..r {
                let mut s = 0.0;
                for k in 0..r {
                    let a = row(self, i, k);
                    let b = row(self, j, k);
                    s += sparse_dot(a, b);
                }
                let t = if i == j { target } else { 0.0 };
                worst = worst.max((s - t).abs());
            }
        }
        worst
    }

    /// `max_i |sum_j d_ijj|`.
    pub fn d_trace_residual(&self) -> f64 {
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.d(i, j, j)).sum::<f64>().abs())
            .fold(0.0, f64::max)
    }
}

fn sparse_dot(a: &[(usize, f64)], b: &[(usize, f64)]) -> f64 {
    let (mut p, mut q, mut s) = (0, 0, 0.0);
    while p < a.len() && q < b.len() {
        match a[p].0.cmp(&b[q].0) {
            std::cmp::Ordering::Less => p += 1,
            std::cmp::Ordering::Greater => q += 1,
            std::cmp::Ordering::Equal => {
                s += a[p].1 * b[q].1;
                p += 1;
                q += 1;
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::I;

    #[test]
    fn su2_is_pauli() {
        let b = gell_mann_basis(2).unwrap();
        let s1 = CMatrix::from_vec(2, 2, vec![ZERO, ONE, ONE, ZERO]).unwrap();
        let s2 = CMatrix::from_vec(2, 2, vec![ZERO, -I, I, ZERO]).unwrap();
        let s3 = CMatrix::diag(&[ONE, -ONE]);
        assert_eq!(b.dim(), 3);
        assert!(b.lambda(0).max_abs_diff(&s1).unwrap() < 1e-15);
        assert!(b.lambda(1).max_abs_diff(&s2).unwrap() < 1e-15);
        assert!(b.lambda(2).max_abs_diff(&s3).unwrap() < 1e-15);
    }

    #[test]
    fn rejects_small_n() {
        assert!(matches!(gell_mann_basis(1), Err(Error::Domain(_))));
    }

    #[test]
    fn su3_reference_values() {
        let b = gell_mann_basis(3).unwrap();
        let l8 = b.lambda(7);
        assert!((crate::linalg::frobenius_pair(l8, l8).unwrap().re - 2.0).abs() < 1e-14);
        let sc = structure_constants(&b);
        assert!((sc.f(0, 1, 2) - 1.0).abs() < 1e-14);
        assert!((sc.d(0, 0, 7) - 1.0 / 3f64.sqrt()).abs() < 1e-14);
        assert!((sc.f_tensor().get(&[1, 0, 2]) + 1.0).abs() < 1e-14);
        for i in 0..8 {
            for j in 0..8 {
                assert_eq!(sc.f(i, i, j), 0.0);
            }
        }
    }

    #[test]
    fn su5_shapes_and_hermiticity() {
        let b = gell_mann_basis(5).unwrap();
        assert_eq!(b.dim(), 24);
        assert!(b.lambdas().iter().all(|l| l.shape() == (5, 5)));
        assert!(b.hermiticity_residual() < 1e-9);
    }

    #[test]
    fn identities_hold_through_su5() {
        for n in 2..=5 {
            let b = gell_mann_basis(n).unwrap();
            let sc = structure_constants(&b);
            assert!(b.trace_residual() < 1e-12, "n={n}");
            assert!(b.product_residual(&sc) < 1e-12, "n={n}");
            assert!(sc.imaginary_residual() < 1e-12);
            assert!(sc.ff_residual() < 1e-12);
            assert!(sc.dd_residual() < 1e-12);
            assert!(sc.d_trace_residual() < 1e-12);
        }
    }

    #[test]
    fn selection_rule_matches_brute_force() {
        let b = gell_mann_basis(4).unwrap();
        let r = b.dim();
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    let t = crate::linalg::trace_product(&[b.lambda(i), b.lambda(j), b.lambda(k)]).unwrap();
                    if !b.admissible(&[i, j, k]) {
                        assert!(t.norm() < 1e-14);
                    }
                }
            }
        }
    }
}
