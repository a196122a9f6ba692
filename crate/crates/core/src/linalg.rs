//! Dense complex matrices.
//!
//! Everything the crate builds (Gell-Mann matrices, representation matrices,
//! Dirac matrices) is square, so the API is deliberately small: products,
//! (anti)commutators, Kronecker products and traces of ordered products.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);
pub const I: Complex64 = Complex64::new(0.0, 1.0);

/// Absolute/relative comparison thresholds.
#[derive(Clone, Copy, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs: 1e-9, rel: 1e-8 }
    }
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64) -> Result<Self> {
        if !(abs > 0.0 && rel > 0.0) {
            return Err(Error::Domain(format!(
                "tolerances must be strictly positive, got abs={abs}, rel={rel}"
            )));
        }
        Ok(Tolerance { abs, rel })
    }

    /// `|a - b| <= abs + rel * max(|a|, |b|)`.
    pub fn close(&self, a: f64, b: f64) -> bool {
        (a - b).abs() <= self.abs + self.rel * a.abs().max(b.abs())
    }
}

/// Row-major dense complex matrix.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for j in 0..self.cols {
                let z = self[(i, j)];
                write!(f, "{:+.4}{:+.4}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix {
            rows,
            cols,
            data: vec![ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = ONE;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        CMatrix { rows, cols, data }
    }

    /// Builds a matrix from row-major entries.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape {
                op: "from_vec",
                left: (rows, cols),
                right: (data.len(), 1),
            });
        }
        Ok(CMatrix { rows, cols, data })
    }

    pub fn diag(entries: &[Complex64]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, &z) in entries.iter().enumerate() {
            m[(i, i)] = z;
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn matmul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.cols != other.rows {
            return Err(Error::Shape {
                op: "matmul",
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(self.mul_unchecked(other))
    }

    /// Product without the shape check; callers guarantee `self.cols == other.rows`.
    pub(crate) fn mul_unchecked(&self, other: &CMatrix) -> CMatrix {
        debug_assert_eq!(self.cols, other.rows);
        let (n, k, m) = (self.rows, self.cols, other.cols);
        let mut out = vec![ZERO; n * m];
        for i in 0..n {
            let row = &mut out[i * m..(i + 1) * m];
            for p in 0..k {
                let a = self.data[i * k + p];
                if a.re == 0.0 && a.im == 0.0 {
                    continue;
                }
                let brow = &other.data[p * m..(p + 1) * m];
                for (o, b) in row.iter_mut().zip(brow) {
                    *o += a * b;
                }
            }
        }
        CMatrix {
            rows: n,
            cols: m,
            data: out,
        }
    }

    fn check_same(&self, other: &CMatrix, op: &'static str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::Shape {
                op,
                left: self.shape(),
                right: other.shape(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &CMatrix) -> Result<CMatrix> {
        self.check_same(other, "add")?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &CMatrix) -> Result<CMatrix> {
        self.check_same(other, "sub")?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &CMatrix, f: impl Fn(Complex64, Complex64) -> Complex64) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    /// `self += alpha * x`.
    pub fn axpy(&mut self, alpha: Complex64, x: &CMatrix) -> Result<()> {
        self.check_same(x, "axpy")?;
        for (s, &v) in self.data.iter_mut().zip(&x.data) {
            *s += alpha * v;
        }
        Ok(())
    }

    pub fn scale(&self, alpha: Complex64) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&z| alpha * z).collect(),
        }
    }

    pub fn transpose(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        CMatrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn commutator(&self, other: &CMatrix) -> Result<CMatrix> {
        self.check_same(other, "commutator")?;
        if !self.is_square() {
            return Err(Error::Shape {
                op: "commutator",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let ab = self.mul_unchecked(other);
        let ba = other.mul_unchecked(self);
        Ok(ab.zip_with(&ba, |x, y| x - y))
    }

    pub fn anticommutator(&self, other: &CMatrix) -> Result<CMatrix> {
        self.check_same(other, "anticommutator")?;
        if !self.is_square() {
            return Err(Error::Shape {
                op: "anticommutator",
                left: self.shape(),
                right: other.shape(),
            });
        }
        let ab = self.mul_unchecked(other);
        let ba = other.mul_unchecked(self);
        Ok(ab.zip_with(&ba, |x, y| x + y))
    }

    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        let (r1, c1) = self.shape();
        let (r2, c2) = other.shape();
        CMatrix::from_fn(r1 * r2, c1 * c2, |i, j| {
            self[(i / r2, j / c2)] * other[(i % r2, j % c2)]
        })
    }

    pub fn trace(&self) -> Result<Complex64> {
        if !self.is_square() {
            return Err(Error::Shape {
                op: "trace",
                left: self.shape(),
                right: self.shape(),
            });
        }
        Ok((0..self.rows).map(|i| self[(i, i)]).sum())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &CMatrix) -> Result<f64> {
        self.check_same(other, "max_abs_diff")?;
        Ok(self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn hermiticity_residual(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in i..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_residual() < tol
    }
}

/// `Tr(a b)` computed as the entrywise pairing `sum_ij a_ij b_ji`, without forming `a b`.
pub fn frobenius_pair(a: &CMatrix, b: &CMatrix) -> Result<Complex64> {
    if a.rows != b.cols || a.cols != b.rows {
        return Err(Error::Shape {
            op: "frobenius_pair",
            left: a.shape(),
            right: b.shape(),
        });
    }
    Ok(frobenius_pair_unchecked(a, b))
}

#[inline]
pub(crate) fn frobenius_pair_unchecked(a: &CMatrix, b: &CMatrix) -> Complex64 {
    let (n, m) = a.shape();
    let mut acc = ZERO;
    for i in 0..n {
        let arow = &a.data[i * m..(i + 1) * m];
        for (j, &x) in arow.iter().enumerate() {
            acc += x * b.data[j * n + i];
        }
    }
    acc
}

/// Trace of the ordered product `ms[0] ms[1] ... ms[k-1]`.
///
/// The chain is multiplied left to right up to the second-to-last factor and
/// closed with [`frobenius_pair`], so the last full product is never formed.
pub fn trace_product(ms: &[&CMatrix]) -> Result<Complex64> {
    let Some((first, rest)) = ms.split_first() else {
        return Err(Error::Domain("trace_product of an empty sequence".into()));
    };
    for w in ms.windows(2) {
        if w[0].cols != w[1].rows {
            return Err(Error::Shape {
                op: "trace_product",
                left: w[0].shape(),
                right: w[1].shape(),
            });
        }
    }
    let last = ms[ms.len() - 1];
    if first.rows != last.cols {
        return Err(Error::Shape {
            op: "trace_product",
            left: first.shape(),
            right: last.shape(),
        });
    }
    match rest.len() {
        0 => first.trace(),
        1 => Ok(frobenius_pair_unchecked(first, rest[0])),
        _ => {
            let mut acc = first.mul_unchecked(rest[0]);
            for m in &rest[1..rest.len() - 1] {
                acc = acc.mul_unchecked(m);
            }
            Ok(frobenius_pair_unchecked(&acc, last))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pauli() -> [CMatrix; 3] {
        let s1 = CMatrix::from_fn(2, 2, |i, j| if i != j { ONE } else { ZERO });
        let s2 = CMatrix::from_vec(2, 2, vec![ZERO, -I, I, ZERO]).unwrap();
        let s3 = CMatrix::diag(&[ONE, -ONE]);
        [s1, s2, s3]
    }

    #[test]
    fn identity_product() {
        let i2 = CMatrix::identity(2);
        assert_eq!(i2.matmul(&i2).unwrap(), i2);
    }

    #[test]
    fn pauli_product() {
        let [s1, s2, s3] = pauli();
        let p = s1.matmul(&s2).unwrap();
        assert!(p.max_abs_diff(&s3.scale(I)).unwrap() < 1e-15);
    }

    #[test]
    fn annihilator() {
        let [s1, ..] = pauli();
        let z = CMatrix::zeros(2, 2);
        assert_eq!(s1.matmul(&z).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn matmul_shape_error_names_shapes() {
        let a = CMatrix::zeros(2, 3);
        let b = CMatrix::zeros(2, 3);
        let err = a.matmul(&b).unwrap_err().to_string();
        assert!(err.contains("(2, 3)"), "{err}");
    }

    #[test]
    fn commutators() {
        let [s1, s2, s3] = pauli();
        assert_eq!(s1.commutator(&s1).unwrap().max_abs(), 0.0);
        assert!(s1.anticommutator(&s2).unwrap().max_abs() < 1e-15);
        let c = s1.commutator(&s2).unwrap();
        assert!(c.max_abs_diff(&s3.scale(2.0 * I)).unwrap() < 1e-15);
        assert!(s1.commutator(&CMatrix::zeros(3, 3)).is_err());
    }

    #[test]
    fn kron_cases() {
        let i2 = CMatrix::identity(2);
        assert_eq!(i2.kron(&i2), CMatrix::identity(4));
        let [_, _, s3] = pauli();
        assert_eq!(s3.kron(&i2), CMatrix::diag(&[ONE, ONE, -ONE, -ONE]));
        assert_eq!(CMatrix::zeros(3, 3).kron(&i2).shape(), (6, 6));
    }

    #[test]
    fn traces() {
        assert_eq!(CMatrix::identity(5).trace().unwrap(), Complex64::new(5.0, 0.0));
        let [s1, s2, s3] = pauli();
        // Tr(s1 s2 s3) = Tr(i s3 s3) = 2i
        let t = trace_product(&[&s1, &s2, &s3]).unwrap();
        assert!((t - 2.0 * I).norm() < 1e-15);
        assert!(trace_product(&[]).is_err());
        assert!(trace_product(&[&s1, &CMatrix::zeros(3, 3)]).is_err());
    }

    #[test]
    fn tolerance_validation() {
        assert!(Tolerance::new(0.0, 1e-8).is_err());
        let t = Tolerance::default();
        assert!(t.close(1.0, 1.0 + 1e-9));
        assert!(!t.close(1.0, 1.0 + 1e-6));
    }
}
