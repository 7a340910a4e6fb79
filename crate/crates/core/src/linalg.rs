//! Symmetric eigendecomposition, PSD matrix square root and Cholesky.
//!
//! The matrices handled here are covariance-sized (dimension <= 16), so
//! the eigensolver uses cyclic Jacobi rotations: slower than QR on large
//! inputs but unconditionally robust on small symmetric ones.

use crate::error::{Error, Result};
use crate::matrix::Matrix;

const JACOBI_TOL: f64 = 1e-14;
const JACOBI_MAX_SWEEPS: usize = 64;

/// Symmetry tolerance for eigendecomposition inputs, scaled by magnitude.
fn symmetry_tol(a: &Matrix) -> f64 {
    1e-10 * a.max_abs().max(1.0)
}

/// Eigendecomposition of a symmetric matrix via cyclic Jacobi rotations.
///
/// Returns eigenvalues sorted descending and the matching orthonormal
/// eigenvectors as the columns of the returned matrix, so that
/// `a == V diag(l) V^T`.
pub fn sym_eig(a: &Matrix) -> Result<(Vec<f64>, Matrix)> {
    let n = a.rows();
    if n != a.cols() {
        return Err(Error::Dimension(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if a.max_asymmetry() > symmetry_tol(a) {
        return Err(Error::Contract(format!(
            "matrix is not symmetric (max asymmetry {:.3e})",
            a.max_asymmetry()
        )));
    }

    // Work on a symmetrized copy so rounding-level asymmetry cannot leak in.
    let mut m = a.clone();
    for i in 0..n {
        for j in (i + 1)..n {
            let v = 0.5 * (m.get(i, j) + m.get(j, i));
            m.set(i, j, v);
            m.set(j, i, v);
        }
    }

    let mut v = Matrix::identity(n);
    let scale = m.max_abs().max(1.0);

    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(m.get(p, q).abs());
            }
        }
        if off <= JACOBI_TOL * scale {
            converged = true;
            break;
        }

        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m.get(p, q);
                if apq.abs() <= JACOBI_TOL * scale {
                    continue;
                }
                let app = m.get(p, p);
                let aqq = m.get(q, q);
                let theta = 0.5 * (aqq - app) / apq;
                // Smaller-magnitude root of t^2 + 2*theta*t - 1 = 0.
                let t = theta.signum() / (theta.abs() + (1.0 + theta * theta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                for k in 0..n {
                    let mkp = m.get(k, p);
                    let mkq = m.get(k, q);
                    m.set(k, p, c * mkp - s * mkq);
                    m.set(k, q, s * mkp + c * mkq);
                }
                for k in 0..n {
                    let mpk = m.get(p, k);
                    let mqk = m.get(q, k);
                    m.set(p, k, c * mpk - s * mqk);
                    m.set(q, k, s * mpk + c * mqk);
                }
                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, c * vkp - s * vkq);
                    v.set(k, q, s * vkp + c * vkq);
                }
            }
        }
    }
    if !converged {
        // Final check: the sweep loop may have converged on its last pass.
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off = off.max(m.get(p, q).abs());
            }
        }
        if off > JACOBI_TOL * scale {
            return Err(Error::Numeric(format!(
                "Jacobi eigensolver did not converge in {JACOBI_MAX_SWEEPS} sweeps \
                 (off-diagonal {off:.3e})"
            )));
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    let eig: Vec<f64> = (0..n).map(|i| m.get(i, i)).collect();
    order.sort_by(|&i, &j| eig[j].partial_cmp(&eig[i]).expect("finite eigenvalues"));

    let values: Vec<f64> = order.iter().map(|&i| eig[i]).collect();
    let mut vectors = Matrix::zeros(n, n);
    for (col, &src) in order.iter().enumerate() {
        for row in 0..n {
            vectors.set(row, col, v.get(row, src));
        }
    }
    Ok((values, vectors))
}

/// Principal square root of a symmetric PSD matrix.
///
/// Eigenvalues in `(-1e-6, 0)` are treated as rounding noise and clamped
/// to zero; anything below `-1e-6` is a genuine PSD violation.
pub fn sqrtm_psd(a: &Matrix) -> Result<Matrix> {
    let (values, vectors) = sym_eig(a)?;
    let mut roots = Vec::with_capacity(values.len());
    for &l in &values {
        if l < -1e-6 {
            return Err(Error::NotPsd(format!("eigenvalue {l:.6e} below -1e-6")));
        }
        roots.push(l.max(0.0).sqrt());
    }
    let n = a.rows();
    // V diag(sqrt(l)) V^T, then symmetrize away rounding.
    let mut scaled = vectors.clone();
    for row in 0..n {
        for col in 0..n {
            scaled.set(row, col, vectors.get(row, col) * roots[col]);
        }
    }
    let out = scaled.matmul(&vectors.transpose())?;
    let mut sym = out.clone();
    for i in 0..n {
        for j in 0..n {
            sym.set(i, j, 0.5 * (out.get(i, j) + out.get(j, i)));
        }
    }
    Ok(sym)
}

/// Cholesky factorization of a symmetric positive definite matrix.
///
/// Returns the lower-triangular `L` with `L L^T == a`.
pub fn cholesky(a: &Matrix) -> Result<Matrix> {
    let n = a.rows();
    if n != a.cols() {
        return Err(Error::Dimension("Cholesky needs a square matrix".to_string()));
    }
    if a.max_asymmetry() > symmetry_tol(a) {
        return Err(Error::Contract("Cholesky input not symmetric".to_string()));
    }
    let mut l = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let mut sum = a.get(i, j);
            for k in 0..j {
                sum -= l.get(i, k) * l.get(j, k);
            }
            if i == j {
                if sum <= 0.0 {
                    return Err(Error::NotPsd(format!(
                        "non-positive pivot {sum:.6e} at row {i}"
                    )));
                }
                l.set(i, j, sum.sqrt());
            } else {
                l.set(i, j, sum / l.get(j, j));
            }
        }
    }
    Ok(l)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha12Rng;

    fn random_symmetric(n: usize, rng: &mut impl Rng) -> Matrix {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..=i {
                let v = rng.gen_range(-3.0..3.0);
                m.set(i, j, v);
                m.set(j, i, v);
            }
        }
        m
    }

    fn random_psd(n: usize, rng: &mut impl Rng) -> Matrix {
        let mut b = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                b.set(i, j, rng.gen_range(-2.0..2.0));
            }
        }
        b.matmul(&b.transpose()).unwrap()
    }

    fn reconstruct(values: &[f64], vectors: &Matrix) -> Matrix {
        let n = values.len();
        let mut scaled = vectors.clone();
        for r in 0..n {
            for c in 0..n {
                scaled.set(r, c, vectors.get(r, c) * values[c]);
            }
        }
        scaled.matmul(&vectors.transpose()).unwrap()
    }

    #[test]
    fn diagonal_eigenvalues() {
        let a = Matrix::from_diag(&[3.0, 1.0]);
        let (values, vectors) = sym_eig(&a).unwrap();
        assert_eq!(values, vec![3.0, 1.0]);
        assert_eq!(vectors, Matrix::identity(2));
    }

    #[test]
    fn textbook_two_by_two() {
        let a = Matrix::from_rows(&[&[2.0, 1.0], &[1.0, 2.0]]).unwrap();
        let (values, vectors) = sym_eig(&a).unwrap();
        assert!((values[0] - 3.0).abs() < 1e-12);
        assert!((values[1] - 1.0).abs() < 1e-12);
        let inv_sqrt2 = 1.0 / 2.0f64.sqrt();
        // First column parallel to (1,1)/sqrt(2), second to (1,-1)/sqrt(2).
        let c0 = (vectors.get(0, 0).abs() - inv_sqrt2).abs();
        let c1 = (vectors.get(1, 0).abs() - inv_sqrt2).abs();
        assert!(c0 < 1e-12 && c1 < 1e-12);
        assert!(vectors.get(0, 1) * vectors.get(1, 1) < 0.0);
    }

    #[test]
    fn non_symmetric_rejected() {
        let a = Matrix::from_rows(&[&[1.0, 2.0], &[0.0, 1.0]]).unwrap();
        assert!(matches!(sym_eig(&a), Err(Error::Contract(_))));
    }

    #[test]
    fn random_reconstruction() {
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        for _ in 0..20 {
            let a = random_symmetric(6, &mut rng);
            let (values, vectors) = sym_eig(&a).unwrap();
            let back = reconstruct(&values, &vectors);
            let rel = back.sub(&a).unwrap().frobenius_norm() / a.frobenius_norm().max(1e-12);
            assert!(rel < 1e-8, "reconstruction error {rel}");
        }
    }

    #[test]
    fn sqrtm_identity_and_diag() {
        let i = Matrix::identity(3);
        assert!(sqrtm_psd(&i).unwrap().sub(&i).unwrap().max_abs() < 1e-12);
        let a = Matrix::from_diag(&[4.0, 9.0]);
        let r = sqrtm_psd(&a).unwrap();
        assert!(r.sub(&Matrix::from_diag(&[2.0, 3.0])).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn sqrtm_squares_back() {
        let mut rng = ChaCha12Rng::seed_from_u64(7);
        for _ in 0..20 {
            let a = random_psd(5, &mut rng);
            let r = sqrtm_psd(&a).unwrap();
            let err = r.matmul(&r).unwrap().sub(&a).unwrap().frobenius_norm();
            assert!(err < 1e-8, "squaring error {err}");
            assert!(r.max_asymmetry() < 1e-10);
        }
    }

    #[test]
    fn sqrtm_rejects_indefinite() {
        let a = Matrix::from_diag(&[1.0, -0.5]);
        assert!(matches!(sqrtm_psd(&a), Err(Error::NotPsd(_))));
    }

    #[test]
    fn sqrtm_clamps_rounding_noise() {
        let a = Matrix::from_diag(&[1.0, -1e-9]);
        let r = sqrtm_psd(&a).unwrap();
        assert_eq!(r.get(1, 1), 0.0);
    }

    #[test]
    fn cholesky_identity_and_diag() {
        let i = Matrix::identity(4);
        assert_eq!(cholesky(&i).unwrap(), i);
        let a = Matrix::from_diag(&[4.0]);
        assert_eq!(cholesky(&a).unwrap().get(0, 0), 2.0);
    }

    #[test]
    fn cholesky_reconstructs() {
        let mut rng = ChaCha12Rng::seed_from_u64(3);
        for _ in 0..20 {
            // B B^T + I keeps the matrix safely positive definite.
            let mut a = random_psd(3, &mut rng);
            for i in 0..3 {
                a.set(i, i, a.get(i, i) + 1.0);
            }
            let l = cholesky(&a).unwrap();
            let err = l.matmul(&l.transpose()).unwrap().sub(&a).unwrap().max_abs();
            assert!(err < 1e-10, "reconstruction error {err}");
        }
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        let a = Matrix::from_diag(&[1.0, -1.0]);
        assert!(matches!(cholesky(&a), Err(Error::NotPsd(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn eig_reconstruction_up_to_16(seed in 0u64..1000, n in 2usize..=16) {
            let mut rng = ChaCha12Rng::seed_from_u64(seed);
            let a = random_symmetric(n, &mut rng);
            let (values, vectors) = sym_eig(&a).unwrap();
            let back = reconstruct(&values, &vectors);
            let rel = back.sub(&a).unwrap().frobenius_norm()
                / a.frobenius_norm().max(1e-12);
            prop_assert!(rel < 1e-8);
            // Orthonormality of the eigenvector basis.
            let vtv = vectors.transpose().matmul(&vectors).unwrap();
            prop_assert!(vtv.sub(&Matrix::identity(n)).unwrap().max_abs() < 1e-8);
            // Sorted descending.
            for w in values.windows(2) {
                prop_assert!(w[0] >= w[1]);
            }
        }
    }
}
