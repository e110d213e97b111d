//! Cyclic Jacobi eigensolver for Hermitian matrices.

use super::{vec_norm, CMatrix, C64, HERMITIAN_TOL, ZERO};
use crate::error::{Error, Result};

pub const MAX_SWEEPS: usize = 100;

/// Off-diagonal Frobenius norm at which the iteration stops, relative to `‖a‖_F`.
const OFF_TOL: f64 = 1e-12;

/// Moduli within this of the maximum count as tied when picking the phase anchor.
const PHASE_TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Descending.
    pub eigenvalues: Vec<f64>,
    /// `eigenvectors[k]` is the unit eigenvector for `eigenvalues[k]`.
    pub eigenvectors: Vec<Vec<C64>>,
}

impl EigenDecomposition {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    /// `Σ_k λ_k |v_k⟩⟨v_k|`.
    pub fn reconstruct(&self) -> CMatrix {
        let n = self.len();
        let mut out = CMatrix::zeros(n, n);
        for (lambda, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            out = &out + &(&CMatrix::outer(v, v) * *lambda);
        }
        out
    }

    /// Orthogonal projector onto the span of the eigenvectors at `indices`.
    pub fn projector(&self, indices: &[usize]) -> CMatrix {
        let n = self.len();
        let mut out = CMatrix::zeros(n, n);
        for &k in indices {
            let v = &self.eigenvectors[k];
            out = &out + &CMatrix::outer(v, v);
        }
        out
    }
}

/// Full eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations.
pub fn eig_hermitian(a: &CMatrix) -> Result<EigenDecomposition> {
    a.ensure_hermitian(HERMITIAN_TOL)?;
    let n = a.rows();
    let norm = a.frobenius_norm();
    let threshold = OFF_TOL * norm;

    // Work on the exactly Hermitian part so rounding asymmetry in the input
    // cannot stall the sweep.
    let mut m = CMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] = (a[(i, j)] + a[(j, i)].conj()) * 0.5;
        }
    }
    let mut v = CMatrix::identity(n);

    let mut sweeps = 0;
    loop {
        let off = off_diagonal_norm(&m);
        if off <= threshold {
            break;
        }
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence {
                sweeps,
                off_norm: off,
            });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
        sweeps += 1;
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(j, j)].re.total_cmp(&m[(i, i)].re));

    let eigenvalues = order.iter().map(|&k| m[(k, k)].re).collect();
    let eigenvectors = order
        .iter()
        .map(|&k| canonical_phase(v.column(k)))
        .collect();
    Ok(EigenDecomposition {
        eigenvalues,
        eigenvectors,
    })
}

fn off_diagonal_norm(m: &CMatrix) -> f64 {
    let n = m.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += m[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Zeroes `m[p,q]` with the unitary `W = diag(1, e^{-iψ})·R(c, s)` acting
/// on the `(p, q)` plane, where `m[p,q] = |m[p,q]|·e^{iψ}`. Accumulates
/// `v ← v·W`.
fn rotate(m: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let apq = m[(p, q)];
    let mag = apq.norm();
    if mag == 0.0 {
        return;
    }
    let phase = apq / mag; // e^{iψ}
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;

    let theta = (aqq - app) / (2.0 * mag);
    let t = if theta >= 0.0 {
        1.0 / (theta + (theta * theta + 1.0).sqrt())
    } else {
        -1.0 / (-theta + (theta * theta + 1.0).sqrt())
    };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    let w_pp = C64::new(c, 0.0);
    let w_pq = C64::new(s, 0.0);
    let w_qp = -phase.conj() * s;
    let w_qq = phase.conj() * c;

    let n = m.rows();
    for k in 0..n {
        let (mkp, mkq) = (m[(k, p)], m[(k, q)]);
        m[(k, p)] = mkp * w_pp + mkq * w_qp;
        m[(k, q)] = mkp * w_pq + mkq * w_qq;
    }
    for k in 0..n {
        let (mpk, mqk) = (m[(p, k)], m[(q, k)]);
        m[(p, k)] = w_pp.conj() * mpk + w_qp.conj() * mqk;
        m[(q, k)] = w_pq.conj() * mpk + w_qq.conj() * mqk;
    }
    m[(p, q)] = ZERO;
    m[(q, p)] = ZERO;
    m[(p, p)].im = 0.0;
    m[(q, q)].im = 0.0;

    for k in 0..n {
        let (vkp, vkq) = (v[(k, p)], v[(k, q)]);
        v[(k, p)] = vkp * w_pp + vkq * w_qp;
        v[(k, q)] = vkp * w_pq + vkq * w_qq;
    }
}

/// Rescales `v` to unit norm and rotates its phase so the first component
/// of (near-)maximal modulus is real and positive.
pub(crate) fn canonical_phase(mut v: Vec<C64>) -> Vec<C64> {
    let norm = vec_norm(&v);
    if norm == 0.0 {
        return v;
    }
    let max = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let anchor = v
        .iter()
        .find(|z| z.norm() >= max - PHASE_TIE_TOL * norm)
        .copied()
        .unwrap_or(ZERO);
    let rot = anchor.conj() / (anchor.norm() * norm);
    for z in v.iter_mut() {
        *z *= rot;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::super::{vec_dot, I, ONE};
    use super::*;

    fn residual(a: &CMatrix, lambda: f64, v: &[C64]) -> f64 {
        let av = a.apply(v).unwrap();
        av.iter()
            .zip(v)
            .map(|(x, y)| (x - y * lambda).norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    #[test]
    fn diagonal_input() {
        let a = CMatrix::from_real_diagonal(&[0.0, 1.0, 3.0, 0.0]);
        let eig = eig_hermitian(&a).unwrap();
        assert_eq!(eig.eigenvalues, vec![3.0, 1.0, 0.0, 0.0]);
    }

    #[test]
    fn pauli_y_spectrum() {
        let y = CMatrix::from_rows(&[[ZERO, -I], [I, ZERO]]).unwrap();
        let eig = eig_hermitian(&y).unwrap();
        assert!((eig.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((eig.eigenvalues[1] + 1.0).abs() < 1e-14);
        for (l, v) in eig.eigenvalues.iter().zip(&eig.eigenvectors) {
            assert!(residual(&y, *l, v) < 1e-14);
        }
        // Canonical phase: (1, i)/√2 for +1.
        let v = &eig.eigenvectors[0];
        assert!((v[0] - C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0)).norm() < 1e-14);
        assert!((v[1] - I * std::f64::consts::FRAC_1_SQRT_2).norm() < 1e-14);
    }

    #[test]
    fn zero_matrix_is_already_diagonal() {
        let eig = eig_hermitian(&CMatrix::zeros(3, 3)).unwrap();
        assert_eq!(eig.eigenvalues, vec![0.0; 3]);
    }

    #[test]
    fn rejects_non_hermitian() {
        let a = CMatrix::from_rows(&[[ONE, ONE], [ZERO, ONE]]).unwrap();
        assert!(matches!(eig_hermitian(&a), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn dense_complex_matrix() {
        let a = CMatrix::from_rows(&[
            [C64::new(2.0, 0.0), C64::new(1.0, -1.0), C64::new(0.0, 0.5)],
            [C64::new(1.0, 1.0), C64::new(-1.0, 0.0), C64::new(0.25, 0.0)],
            [C64::new(0.0, -0.5), C64::new(0.25, 0.0), C64::new(0.5, 0.0)],
        ])
        .unwrap();
        let eig = eig_hermitian(&a).unwrap();
        let norm = a.frobenius_norm();
        for (l, v) in eig.eigenvalues.iter().zip(&eig.eigenvectors) {
            assert!(residual(&a, *l, v) <= 1e-12 * norm);
        }
        for i in 0..3 {
            for j in 0..3 {
                let d = vec_dot(&eig.eigenvectors[i], &eig.eigenvectors[j]);
                let want = if i == j { 1.0 } else { 0.0 };
                assert!((d - C64::new(want, 0.0)).norm() < 1e-12);
            }
        }
        assert!(eig.reconstruct().max_abs_diff(&a) < 1e-12);
        assert!(eig.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
    }
}
