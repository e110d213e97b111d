//! Dense complex matrices for the small sizes used throughout the crate
//! (2×2 strategy operators, 4×4 object and strategy densities, 16×16
//! system payoff tensors).

mod eigen;

use std::fmt;
use std::ops::{Add, Index, IndexMut, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::error::{Error, Result};

pub use eigen::{eig_hermitian, EigenDecomposition, MAX_SWEEPS};

pub type C64 = Complex64;

pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };
pub const I: C64 = C64 { re: 0.0, im: 1.0 };

/// Default absolute tolerance for complex scalar equality.
pub const EQ_TOL: f64 = 1e-10;

/// Relative tolerance on `‖a − a†‖_F / ‖a‖_F` for a matrix to count as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// Row-major dense complex matrix.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<C64>,
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

    /// Builds a matrix from row-major entries, rejecting length mismatches
    /// and non-finite values.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch(format!(
                "matrix dimensions must be positive, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(k) = data
            .iter()
            .position(|z| !z.re.is_finite() || !z.im.is_finite())
        {
            return Err(Error::NonFinite {
                row: k / cols,
                col: k % cols,
            });
        }
        Ok(CMatrix { rows, cols, data })
    }

    /// Builds a matrix from nested rows. All rows must have the same length.
    pub fn from_rows<R: AsRef<[C64]>>(rows: &[R]) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map(|r| r.as_ref().len()).unwrap_or(0);
        let mut data = Vec::with_capacity(n * m);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != m {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {m}",
                    row.len()
                )));
            }
            data.extend_from_slice(row);
        }
        Self::from_vec(n, m, data)
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = C64::new(d, 0.0);
        }
        m
    }

    /// Outer product `|u⟩⟨v|`.
    pub fn outer(u: &[C64], v: &[C64]) -> Self {
        let mut m = Self::zeros(u.len(), v.len());
        for (i, a) in u.iter().enumerate() {
            for (j, b) in v.iter().enumerate() {
                m[(i, j)] = a * b.conj();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn row(&self, i: usize) -> &[C64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<C64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    pub fn diagonal(&self) -> Vec<C64> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)])
            .collect()
    }

    pub fn matmul(&self, other: &CMatrix) -> Result<CMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[C64]) -> Result<Vec<C64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot apply {}x{} matrix to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    /// Kronecker product, `(a⊗b)[p·rb + q, r·cb + s] = a[p,r]·b[q,s]`.
    pub fn kron(&self, other: &CMatrix) -> CMatrix {
        let (rb, cb) = (other.rows, other.cols);
        let mut out = CMatrix::zeros(self.rows * rb, self.cols * cb);
        for p in 0..self.rows {
            for r in 0..self.cols {
                let a = self[(p, r)];
                if a == ZERO {
                    continue;
                }
                for q in 0..rb {
                    for s in 0..cb {
                        out[(p * rb + q, r * cb + s)] = a * other[(q, s)];
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> Result<C64> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.diagonal().into_iter().sum())
    }

    /// Traces out one factor of a bipartite operator on `dims.0 ⊗ dims.1`.
    ///
    /// `traced = 0` removes the first factor and returns a `dims.1`-sided
    /// matrix; `traced = 1` removes the second.
    pub fn partial_trace(&self, dims: (usize, usize), traced: usize) -> Result<CMatrix> {
        let (d0, d1) = dims;
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if d0 == 0 || d1 == 0 || d0 * d1 != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix does not factor as {d0}x{d1}",
                self.rows, self.cols
            )));
        }
        match traced {
            0 => {
                let mut out = CMatrix::zeros(d1, d1);
                for q in 0..d1 {
                    for s in 0..d1 {
                        out[(q, s)] = (0..d0).map(|k| self[(k * d1 + q, k * d1 + s)]).sum();
                    }
                }
                Ok(out)
            }
            1 => {
                let mut out = CMatrix::zeros(d0, d0);
                for p in 0..d0 {
                    for r in 0..d0 {
                        out[(p, r)] = (0..d1).map(|k| self[(p * d1 + k, r * d1 + k)]).sum();
                    }
                }
                Ok(out)
            }
            other => Err(Error::InvalidInput(format!(
                "subsystem index must be 0 or 1, got {other}"
            ))),
        }
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry-wise modulus of `self − other`.
    pub fn max_abs_diff(&self, other: &CMatrix) -> f64 {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// `‖a − a†‖_F`.
    pub fn hermitian_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let mut acc = 0.0;
        for i in 0..self.rows {
            for j in 0..self.cols {
                acc += (self[(i, j)] - self[(j, i)].conj()).norm_sqr();
            }
        }
        acc.sqrt()
    }

    pub fn is_hermitian(&self, rel_tol: f64) -> bool {
        self.is_square() && self.hermitian_deviation() <= rel_tol * self.frobenius_norm()
    }

    pub fn ensure_hermitian(&self, rel_tol: f64) -> Result<()> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let deviation = self.hermitian_deviation();
        if deviation > rel_tol * self.frobenius_norm() {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(())
    }

    /// Restriction to the rows and columns listed in `idx`.
    pub fn submatrix(&self, idx: &[usize]) -> CMatrix {
        let n = idx.len();
        let mut out = CMatrix::zeros(n, n);
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                out[(a, b)] = self[(i, j)];
            }
        }
        out
    }

    /// `⟨u|A|v⟩`.
    pub fn sandwich(&self, u: &[C64], v: &[C64]) -> Result<C64> {
        let av = self.apply(v)?;
        if u.len() != av.len() {
            return Err(Error::DimensionMismatch(format!(
                "bra of length {} against {}x{} matrix",
                u.len(),
                self.rows,
                self.cols
            )));
        }
        Ok(u.iter().zip(&av).map(|(a, b)| a.conj() * b).sum())
    }

    pub fn scale(&self, k: C64) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * k).collect(),
        }
    }

    pub fn map<F: Fn(C64) -> C64>(&self, f: F) -> CMatrix {
        CMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().copied().map(f).collect(),
        }
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;

    fn index(&self, (i, j): (usize, usize)) -> &C64 {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut C64 {
        assert!(
            i < self.rows && j < self.cols,
            "index ({i}, {j}) out of bounds"
        );
        &mut self.data[i * self.cols + j]
    }
}

macro_rules! elementwise {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&CMatrix> for &CMatrix {
            type Output = CMatrix;

            fn $method(self, rhs: &CMatrix) -> CMatrix {
                assert_eq!(
                    (self.rows, self.cols),
                    (rhs.rows, rhs.cols),
                    "shape mismatch in elementwise op"
                );
                CMatrix {
                    rows: self.rows,
                    cols: self.cols,
                    data: self.data.iter().zip(&rhs.data).map(|(a, b)| a $op b).collect(),
                }
            }
        }

        impl $trait<CMatrix> for CMatrix {
            type Output = CMatrix;

            fn $method(self, rhs: CMatrix) -> CMatrix {
                &self $op &rhs
            }
        }
    };
}

elementwise!(Add, add, +);
elementwise!(Sub, sub, -);

impl Mul<C64> for &CMatrix {
    type Output = CMatrix;

    fn mul(self, k: C64) -> CMatrix {
        self.scale(k)
    }
}

impl Mul<f64> for &CMatrix {
    type Output = CMatrix;

    fn mul(self, k: f64) -> CMatrix {
        self.scale(C64::new(k, 0.0))
    }
}

impl Neg for &CMatrix {
    type Output = CMatrix;

    fn neg(self) -> CMatrix {
        self.scale(-ONE)
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            write!(f, "  ")?;
            for z in self.row(i) {
                write!(f, "{:>+9.4}{:>+9.4}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Euclidean norm of a complex vector.
pub fn vec_norm(v: &[C64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `⟨u|v⟩`, conjugate-linear in `u`.
pub fn vec_dot(u: &[C64], v: &[C64]) -> C64 {
    u.iter().zip(v).map(|(a, b)| a.conj() * b).sum()
}

/// Kronecker product of two vectors.
pub fn kron_vec(u: &[C64], v: &[C64]) -> Vec<C64> {
    u.iter()
        .flat_map(|a| v.iter().map(move |b| a * b))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn fc() -> CMatrix {
        CMatrix::from_rows(&[[ZERO, ONE], [ONE, ZERO]]).unwrap()
    }

    fn fq() -> CMatrix {
        CMatrix::from_rows(&[[ZERO, -I], [I, ZERO]]).unwrap()
    }

    fn nq() -> CMatrix {
        CMatrix::from_real_diagonal(&[1.0, -1.0])
    }

    #[test]
    fn matmul_identity_and_involution() {
        let id = CMatrix::identity(2);
        assert_eq!(id.matmul(&fc()).unwrap(), fc());
        assert_eq!(fc().matmul(&fc()).unwrap(), id);
    }

    #[test]
    fn matmul_nq_fq_by_hand() {
        // [[1,0],[0,-1]]·[[0,-i],[i,0]] = [[0,-i],[-i,0]]
        let want = CMatrix::from_rows(&[[ZERO, -I], [-I, ZERO]]).unwrap();
        assert_eq!(nq().matmul(&fq()).unwrap(), want);
    }

    #[test]
    fn matmul_rejects_mismatch() {
        let a = CMatrix::zeros(2, 3);
        let b = CMatrix::zeros(2, 2);
        assert!(matches!(a.matmul(&b), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn dagger_examples() {
        assert_eq!(fq().dagger(), fq());
        let raise = CMatrix::from_rows(&[[ZERO, ONE], [ZERO, ZERO]]).unwrap();
        let lower = CMatrix::from_rows(&[[ZERO, ZERO], [ONE, ZERO]]).unwrap();
        assert_eq!(raise.dagger(), lower);
    }

    #[test]
    fn kron_basis_action() {
        assert_eq!(
            CMatrix::identity(2).kron(&CMatrix::identity(2)),
            CMatrix::identity(4)
        );
        // (Nc ⊗ Fc)|UU⟩ = |UD⟩
        let uu = [ONE, ZERO, ZERO, ZERO];
        let out = CMatrix::identity(2).kron(&fc()).apply(&uu).unwrap();
        assert_eq!(out, vec![ZERO, ONE, ZERO, ZERO]);
    }

    #[test]
    fn kron_entrywise_against_four_index_loop() {
        let a = CMatrix::from_rows(&[[c(1.0, 2.0), c(-0.5, 0.1)], [c(0.3, -1.0), c(2.0, 0.0)]])
            .unwrap();
        let b = CMatrix::from_rows(&[[c(0.0, 1.0), c(4.0, -2.0)], [c(1.5, 0.5), c(-1.0, -1.0)]])
            .unwrap();
        let k = a.kron(&b);
        for p in 0..2 {
            for q in 0..2 {
                for r in 0..2 {
                    for s in 0..2 {
                        assert_eq!(k[(p * 2 + q, r * 2 + s)], a[(p, r)] * b[(q, s)]);
                    }
                }
            }
        }
    }

    #[test]
    fn trace_examples() {
        assert_eq!(CMatrix::identity(4).trace().unwrap(), c(4.0, 0.0));
        assert_eq!(fc().trace().unwrap(), ZERO);
        assert!(matches!(
            CMatrix::zeros(2, 3).trace(),
            Err(Error::NotSquare { rows: 2, cols: 3 })
        ));
    }

    #[test]
    fn partial_trace_examples() {
        let mut e0 = vec![ZERO; 16];
        e0[0] = ONE;
        let proj = CMatrix::outer(&e0, &e0);
        let reduced = proj.partial_trace((4, 4), 1).unwrap();
        let mut want = CMatrix::zeros(4, 4);
        want[(0, 0)] = ONE;
        assert_eq!(reduced, want);

        let id = CMatrix::identity(16);
        for which in 0..2 {
            assert_eq!(
                id.partial_trace((4, 4), which).unwrap(),
                &CMatrix::identity(4) * 4.0
            );
        }
    }

    #[test]
    fn partial_trace_of_product() {
        let a =
            CMatrix::from_rows(&[[c(0.7, 0.0), c(0.1, 0.2)], [c(0.1, -0.2), c(0.3, 0.0)]]).unwrap();
        let b =
            CMatrix::from_rows(&[[c(0.4, 0.0), c(0.0, -0.3)], [c(0.0, 0.3), c(0.6, 0.0)]]).unwrap();
        let ab = a.kron(&b);
        let tr_a = a.trace().unwrap();
        let got = ab.partial_trace((2, 2), 0).unwrap();
        assert!(got.max_abs_diff(&b.scale(tr_a)) < 1e-15);
        let got = ab.partial_trace((2, 2), 1).unwrap();
        assert!(got.max_abs_diff(&a.scale(b.trace().unwrap())) < 1e-15);
    }

    #[test]
    fn partial_trace_rejects_bad_factorization() {
        let m = CMatrix::identity(16);
        assert!(m.partial_trace((3, 5), 0).is_err());
        assert!(m.partial_trace((4, 4), 2).is_err());
    }

    #[test]
    fn from_vec_rejects_non_finite() {
        let err = CMatrix::from_vec(1, 2, vec![ONE, c(f64::NAN, 0.0)]).unwrap_err();
        assert_eq!(err, Error::NonFinite { row: 0, col: 1 });
    }
}
