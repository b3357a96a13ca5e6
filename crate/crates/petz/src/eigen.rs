//! Cyclic Jacobi diagonalization for dense complex Hermitian matrices.
//!
//! Plane rotations with a complex phase annihilate one off-diagonal entry at
//! a time; sweeps repeat until the off-diagonal Frobenius norm falls below a
//! small multiple of the matrix norm. Everything is done in plain loops so
//! results are deterministic for a given input.

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::{eps_floored, Scalar};

const MAX_SWEEPS: usize = 100;

/// Spectral decomposition of a Hermitian matrix: eigenvalues ascending,
/// eigenvector `k` in column `k` of a unitary matrix.
#[derive(Debug, Clone)]
pub struct EigenDecomposition<T> {
    eigenvalues: Vec<T>,
    eigenvectors: ComplexMatrix<T>,
}

impl<T: Scalar> EigenDecomposition<T> {
    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &ComplexMatrix<T> {
        &self.eigenvectors
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `V · diag(f(lambda)) · V^dagger`.
    pub fn assemble(&self, f: impl Fn(T) -> T) -> ComplexMatrix<T> {
        let n = self.dim();
        let v = &self.eigenvectors;
        let mut out = ComplexMatrix::zeros(n);
        for k in 0..n {
            let w = f(self.eigenvalues[k]);
            if w.is_zero() {
                continue;
            }
            for i in 0..n {
                let vik = v[(i, k)] * w;
                for j in 0..n {
                    out[(i, j)] = out[(i, j)] + vik * v[(j, k)].conj();
                }
            }
        }
        out
    }

    /// Frobenius distance between `V diag(lambda) V^dagger` and `m`.
    pub fn reconstruction_error(&self, m: &ComplexMatrix<T>) -> T {
        self.assemble(|x| x)
            .sub(m)
            .map(|d| d.frobenius_norm())
            .unwrap_or_else(|_| T::infinity())
    }

    /// Frobenius distance of `V^dagger V` from the identity.
    pub fn orthonormality_error(&self) -> T {
        let v = &self.eigenvectors;
        let gram = v.adjoint().mul(v).expect("square");
        gram.sub(&ComplexMatrix::identity(self.dim()))
            .expect("square")
            .frobenius_norm()
    }
}

/// Diagonalizes a Hermitian matrix.
///
/// The input must be Hermitian within `herm_tol` (largest entry of
/// `A - A^dagger` in modulus); it is symmetrized before iteration so the
/// rotations see an exactly Hermitian operand.
pub fn hermitian_eigen<T: Scalar>(
    m: &ComplexMatrix<T>,
    herm_tol: T,
) -> Result<EigenDecomposition<T>> {
    let defect = m.hermitian_defect();
    if defect > herm_tol {
        return Err(Error::NotHermitian {
            defect: defect.to_f64().unwrap_or(f64::NAN),
        });
    }
    let n = m.dim();
    let mut a = m.add(&m.adjoint()).expect("square").scale(T::from_f64_lossy(0.5));
    let mut v = ComplexMatrix::<T>::identity(n);
    let norm = a.frobenius_norm();
    let conv = eps_floored::<T>(1e-14, 4.0) * norm;

    if n <= 1 || norm.is_zero() {
        let eigenvalues = (0..n).map(|i| a[(i, i)].re).collect();
        return Ok(EigenDecomposition { eigenvalues, eigenvectors: v });
    }

    // entries below this are not worth rotating on; their total stays under
    // the convergence target
    let skip = conv / T::from_usize(n).unwrap();

    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= conv {
            converged = true;
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let beta = a[(p, q)];
                let beta_abs = beta.norm();
                if beta_abs <= skip {
                    continue;
                }
                rotate(&mut a, &mut v, p, q, beta, beta_abs);
            }
        }
    }
    if !converged && off_diagonal_norm(&a) > conv {
        return Err(Error::EigenConvergence { sweeps: MAX_SWEEPS });
    }

    let mut order: Vec<usize> = (0..n).collect();
    let diag: Vec<T> = (0..n).map(|i| a[(i, i)].re).collect();
    order.sort_by(|&i, &j| diag[i].partial_cmp(&diag[j]).expect("finite eigenvalues"));

    let eigenvalues: Vec<T> = order.iter().map(|&k| diag[k]).collect();
    let mut eigenvectors = ComplexMatrix::zeros(n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for i in 0..n {
            eigenvectors[(i, new_col)] = v[(i, old_col)];
        }
    }
    Ok(EigenDecomposition { eigenvalues, eigenvectors })
}

/// Reassembles a decomposition whose eigenvalues were adjusted after the
/// solve (clipping, renormalization). Crate-internal.
pub(crate) fn decomposition_from_parts<T: Scalar>(
    eigenvalues: Vec<T>,
    eigenvectors: ComplexMatrix<T>,
) -> EigenDecomposition<T> {
    EigenDecomposition { eigenvalues, eigenvectors }
}

fn off_diagonal_norm<T: Scalar>(a: &ComplexMatrix<T>) -> T {
    let n = a.dim();
    let two = T::from_f64_lossy(2.0);
    let mut sum = T::zero();
    for p in 0..n - 1 {
        for q in p + 1..n {
            sum = sum + two * a[(p, q)].norm_sqr();
        }
    }
    sum.sqrt()
}

/// One Jacobi rotation annihilating `a[(p, q)]`.
///
/// With `beta = |beta| e^{i phi}`, the unitary is
/// `J[p,p] = c`, `J[p,q] = s e^{i phi}`, `J[q,p] = -s e^{-i phi}`, `J[q,q] = c`,
/// applied as `A <- J^dagger A J`, `V <- V J`. The rotated diagonal entries
/// follow the closed forms `a_pp - t|beta|` and `a_qq + t|beta|`, which keeps
/// the diagonal exactly real.
fn rotate<T: Scalar>(
    a: &mut ComplexMatrix<T>,
    v: &mut ComplexMatrix<T>,
    p: usize,
    q: usize,
    beta: Complex<T>,
    beta_abs: T,
) {
    let n = a.dim();
    let alpha = a[(p, p)].re;
    let gamma = a[(q, q)].re;
    let half = T::from_f64_lossy(0.5);
    let tau = (gamma - alpha) * half / beta_abs;
    // smaller root of t^2 + 2 tau t - 1 = 0
    let t = if tau.is_infinite() {
        T::zero()
    } else {
        let sign = if tau >= T::zero() { T::one() } else { -T::one() };
        sign / (tau.abs() + (T::one() + tau * tau).sqrt())
    };
    let c = T::one() / (T::one() + t * t).sqrt();
    let s = t * c;
    let phase = beta / beta_abs;

    let cs = Complex::new(c, T::zero());
    let sp = phase * s; // s e^{i phi}
    let spc = sp.conj();

    // columns p and q of both A and V
    for i in 0..n {
        let aip = a[(i, p)];
        let aiq = a[(i, q)];
        a[(i, p)] = aip * cs - aiq * spc;
        a[(i, q)] = aip * sp + aiq * cs;

        let vip = v[(i, p)];
        let viq = v[(i, q)];
        v[(i, p)] = vip * cs - viq * spc;
        v[(i, q)] = vip * sp + viq * cs;
    }
    // rows p and q of A
    for j in 0..n {
        let apj = a[(p, j)];
        let aqj = a[(q, j)];
        a[(p, j)] = apj * cs - aqj * sp;
        a[(q, j)] = apj * spc + aqj * cs;
    }
    // closed-form diagonal and annihilated pair
    a[(p, p)] = Complex::new(alpha - t * beta_abs, T::zero());
    a[(q, q)] = Complex::new(gamma + t * beta_abs, T::zero());
    a[(p, q)] = Complex::new(T::zero(), T::zero());
    a[(q, p)] = Complex::new(T::zero(), T::zero());
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_has_unit_spectrum() {
        let eig = hermitian_eigen(&ComplexMatrix::<f64>::identity(3), 1e-10).unwrap();
        for &w in eig.eigenvalues() {
            assert!((w - 1.0).abs() <= 1e-14);
        }
    }

    #[test]
    fn pauli_x_spectrum_is_plus_minus_one() {
        let m = ComplexMatrix::new(2, vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])
            .unwrap();
        let eig = hermitian_eigen(&m, 1e-10).unwrap();
        assert!((eig.eigenvalues()[0] + 1.0).abs() <= 1e-14);
        assert!((eig.eigenvalues()[1] - 1.0).abs() <= 1e-14);
        assert!(eig.reconstruction_error(&m) <= 1e-13);
    }

    #[test]
    fn random_hermitian_dim5_reconstructs() {
        // fixed arbitrary Hermitian matrix, built from a deterministic pattern
        let n = 5;
        let mut m = ComplexMatrix::<f64>::zeros(n);
        let mut x = 0.1f64;
        for i in 0..n {
            for j in i..n {
                x = (x * 997.0 + 0.1234).sin();
                let re = x;
                x = (x * 997.0 + 0.1234).sin();
                let im = if i == j { 0.0 } else { x };
                m[(i, j)] = c(re, im);
                m[(j, i)] = c(re, -im);
            }
        }
        let eig = hermitian_eigen(&m, 1e-10).unwrap();
        assert!(eig.reconstruction_error(&m) <= 1e-12);
        assert!(eig.orthonormality_error() <= 1e-13);
        for k in 1..n {
            assert!(eig.eigenvalues()[k] >= eig.eigenvalues()[k - 1]);
        }
    }

    #[test]
    fn complex_entries_are_handled() {
        let m = ComplexMatrix::new(2, vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)])
            .unwrap();
        // Pauli-Y: eigenvalues -1, 1
        let eig = hermitian_eigen(&m, 1e-10).unwrap();
        assert!((eig.eigenvalues()[0] + 1.0).abs() <= 1e-14);
        assert!((eig.eigenvalues()[1] - 1.0).abs() <= 1e-14);
        assert!(eig.reconstruction_error(&m) <= 1e-13);
    }

    #[test]
    fn non_hermitian_input_is_rejected() {
        let m = ComplexMatrix::new(2, vec![c(0.0, 0.0), c(1.0, 0.0), c(0.5, 0.0), c(0.0, 0.0)])
            .unwrap();
        assert!(matches!(
            hermitian_eigen(&m, 1e-10),
            Err(Error::NotHermitian { .. })
        ));
    }
}
