//! Validated quantum states and observables.
//!
//! A [`DensityMatrix`] owns its spectral decomposition. At construction the
//! spectrum is clipped (eigenvalues under the support threshold become exact
//! zeros), renormalized to unit trace, and the stored matrix is reassembled
//! from the clipped spectrum, so matrix and spectrum never disagree.

use crate::eigen::{hermitian_eigen, EigenDecomposition};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::{eps_floored, support_rel, Scalar};

/// Validation tolerances, overridable per call.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances<T> {
    /// Largest allowed entry of `A - A^dagger` in modulus.
    pub hermiticity: T,
    /// Most negative eigenvalue accepted before declaring the input not PSD.
    pub psd: T,
    /// Largest allowed `|tr - 1|`.
    pub trace: T,
}

impl<T: Scalar> Default for Tolerances<T> {
    fn default() -> Self {
        Self {
            hermiticity: eps_floored::<T>(1e-10, 128.0),
            psd: eps_floored::<T>(1e-10, 128.0),
            trace: eps_floored::<T>(1e-10, 128.0),
        }
    }
}

/// Positive-semidefinite unit-trace Hermitian matrix with cached spectrum.
#[derive(Debug, Clone)]
pub struct DensityMatrix<T> {
    matrix: ComplexMatrix<T>,
    spectrum: EigenDecomposition<T>,
    support_mask: Vec<bool>,
}

impl<T: Scalar> DensityMatrix<T> {
    /// Validates with default tolerances.
    pub fn new(matrix: ComplexMatrix<T>) -> Result<Self> {
        validate_density(matrix, &Tolerances::default())
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    pub fn spectrum(&self) -> &EigenDecomposition<T> {
        &self.spectrum
    }

    /// Eigenvalues ascending; sub-threshold ones are exact zeros.
    pub fn eigenvalues(&self) -> &[T] {
        self.spectrum.eigenvalues()
    }

    /// `true` where the eigenvalue is strictly positive.
    pub fn support_mask(&self) -> &[bool] {
        &self.support_mask
    }

    pub fn rank(&self) -> usize {
        self.support_mask.iter().filter(|&&s| s).count()
    }

    /// `V diag(f(lambda)) V^dagger` with `f` applied on the support only;
    /// zero eigenvalues map to zero no matter what `f` would do.
    pub fn spectral_map(&self, f: impl Fn(T) -> T) -> ComplexMatrix<T> {
        self.spectrum
            .assemble(|w| if w > T::zero() { f(w) } else { T::zero() })
    }

    /// Matrix power with the support convention `0^a = 0` for every `a`,
    /// so negative and zero exponents act on the support alone.
    pub fn power(&self, a: T) -> ComplexMatrix<T> {
        if a == T::one() {
            return self.matrix.clone();
        }
        self.spectral_map(|w| w.powf(a))
    }

    /// Projector onto the support.
    pub fn support_projector(&self) -> ComplexMatrix<T> {
        self.spectral_map(|_| T::one())
    }

    /// `tr(rho^a (I - Pi_sigma))`: how much of this state lives on the other
    /// state's kernel. Zero (up to roundoff) exactly when the support of
    /// `self` is contained in the support of `other`.
    pub fn mass_outside_support(&self, other: &Self) -> Result<T> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch { left: self.dim(), right: other.dim() });
        }
        let on = self
            .matrix
            .product_trace(&other.support_projector())?
            .re;
        Ok((T::one() - on).max(T::zero()))
    }

    /// `tr(rho theta)`.
    pub fn expectation(&self, theta: &Observable<T>) -> Result<T> {
        Ok(self.matrix.product_trace(theta.matrix())?.re)
    }
}

/// Hermitian operator.
#[derive(Debug, Clone)]
pub struct Observable<T> {
    matrix: ComplexMatrix<T>,
}

impl<T: Scalar> Observable<T> {
    pub fn new(matrix: ComplexMatrix<T>) -> Result<Self> {
        Self::with_tolerance(matrix, Tolerances::default().hermiticity)
    }

    pub fn with_tolerance(matrix: ComplexMatrix<T>, herm_tol: T) -> Result<Self> {
        let defect = matrix.hermitian_defect();
        if defect > herm_tol {
            return Err(Error::NotHermitian { defect: defect.to_f64().unwrap_or(f64::NAN) });
        }
        Ok(Self { matrix })
    }

    pub fn from_diag(diag: &[T]) -> Self {
        Self { matrix: ComplexMatrix::from_diag(diag) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn matrix(&self) -> &ComplexMatrix<T> {
        &self.matrix
    }

    /// `theta^2`, Hermitian by construction.
    pub fn squared(&self) -> Self {
        Self { matrix: self.matrix.mul(&self.matrix).expect("square") }
    }
}

/// Validates a candidate density matrix.
///
/// Checks Hermiticity, positive semidefiniteness and unit trace against
/// `tol`, then clips sub-threshold eigenvalues to exact zeros, renormalizes
/// the spectrum and reassembles the stored matrix from it.
pub fn validate_density<T: Scalar>(
    matrix: ComplexMatrix<T>,
    tol: &Tolerances<T>,
) -> Result<DensityMatrix<T>> {
    let spectrum = hermitian_eigen(&matrix, tol.hermiticity)?;
    let eigenvalues = spectrum.eigenvalues();

    if let Some(&w) = eigenvalues.first() {
        if w < -tol.psd {
            return Err(Error::NotPsd { eigenvalue: w.to_f64().unwrap_or(f64::NAN) });
        }
    }
    let trace = eigenvalues.iter().fold(T::zero(), |acc, &w| acc + w);
    if (trace - T::one()).abs() > tol.trace {
        return Err(Error::TraceNotOne { trace: trace.to_f64().unwrap_or(f64::NAN) });
    }

    let max_abs = eigenvalues
        .iter()
        .fold(T::zero(), |acc, &w| acc.max(w.abs()));
    let threshold = support_rel::<T>() * max_abs;
    let clipped: Vec<T> = eigenvalues
        .iter()
        .map(|&w| if w <= threshold { T::zero() } else { w })
        .collect();
    let clipped_sum = clipped.iter().fold(T::zero(), |acc, &w| acc + w);
    let renormalized: Vec<T> = clipped.iter().map(|&w| w / clipped_sum).collect();

    // rebuild the decomposition with the clipped spectrum and the matrix from it
    let eigenvectors = spectrum.eigenvectors().clone();
    let spectrum = crate::eigen::decomposition_from_parts(renormalized, eigenvectors);
    let matrix = spectrum.assemble(|w| w);
    let support_mask = spectrum.eigenvalues().iter().map(|&w| w > T::zero()).collect();
    Ok(DensityMatrix { matrix, spectrum, support_mask })
}

/// Trace distance `T(rho, sigma) = (1/2) sum_k |w_k|` over the eigenvalues of
/// `rho - sigma`, clamped into `[0, 1]`.
pub fn trace_distance<T: Scalar>(rho: &DensityMatrix<T>, sigma: &DensityMatrix<T>) -> Result<T> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch { left: rho.dim(), right: sigma.dim() });
    }
    let diff = rho.matrix().sub(sigma.matrix())?;
    let herm_tol = Tolerances::default().hermiticity;
    let eig = hermitian_eigen(&diff, herm_tol)?;
    let half = T::from_f64_lossy(0.5);
    let t = eig
        .eigenvalues()
        .iter()
        .fold(T::zero(), |acc, &w| acc + w.abs())
        * half;
    Ok(t.max(T::zero()).min(T::one()))
}
