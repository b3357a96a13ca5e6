//! Quantum divergences: the Petz-Rényi family, its symmetric version, the
//! quantum relative entropy, and Holevo fidelity.
//!
//! Support conventions: for `alpha > 1` the first argument must live inside
//! the support of the second or the divergence is `+inf`; for
//! `alpha in (0, 1)` orthogonal supports give `+inf` through a vanishing
//! trace overlap. The overlap is checked before taking its logarithm and
//! anything at or below `1e-300` maps to `+inf`.

use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{kernel_mass_threshold, overlap_underflow, Scalar};
use crate::state::{trace_distance, DensityMatrix};

/// A real value or `+inf`; divergences produce no other non-finite value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtendedReal<T> {
    Finite(T),
    Infinite,
}

impl<T: Scalar> ExtendedReal<T> {
    pub fn is_finite(&self) -> bool {
        matches!(self, ExtendedReal::Finite(_))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtendedReal::Infinite)
    }

    pub fn finite(&self) -> Option<T> {
        match self {
            ExtendedReal::Finite(v) => Some(*v),
            ExtendedReal::Infinite => None,
        }
    }

    /// Collapses to the scalar type, mapping `Infinite` to `T::infinity()`.
    pub fn to_scalar(&self) -> T {
        match self {
            ExtendedReal::Finite(v) => *v,
            ExtendedReal::Infinite => T::infinity(),
        }
    }

    /// Mean of two values; `+inf` propagates.
    pub fn average(self, other: Self) -> Self {
        match (self, other) {
            (ExtendedReal::Finite(a), ExtendedReal::Finite(b)) => {
                ExtendedReal::Finite((a + b) * T::from_f64_lossy(0.5))
            }
            _ => ExtendedReal::Infinite,
        }
    }
}

impl<T: Scalar> fmt::Display for ExtendedReal<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedReal::Finite(v) => write!(f, "{v}"),
            ExtendedReal::Infinite => write!(f, "inf"),
        }
    }
}

/// Petz-Rényi relative entropy
/// `D_alpha(rho || sigma) = ln tr(rho^alpha sigma^(1-alpha)) / (alpha - 1)`
/// for `alpha in (0,1) u (1,inf)`, computed through matrix powers of the
/// cached spectra.
pub fn petz_renyi<T: Scalar>(
    rho: &DensityMatrix<T>,
    sigma: &DensityMatrix<T>,
    alpha: T,
) -> Result<ExtendedReal<T>> {
    check_alpha(alpha)?;
    if alpha == T::one() {
        return Err(Error::AlphaIsOne);
    }
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch { left: rho.dim(), right: sigma.dim() });
    }
    // sigma^(1-alpha) has a negative exponent for alpha > 1: rho must not
    // put weight on sigma's kernel
    if alpha > T::one() && rho.mass_outside_support(sigma)? > kernel_mass_threshold::<T>() {
        return Ok(ExtendedReal::Infinite);
    }
    let overlap = rho
        .power(alpha)
        .product_trace(&sigma.power(T::one() - alpha))?
        .re;
    if !overlap.is_finite() {
        return Ok(ExtendedReal::Infinite);
    }
    if overlap <= overlap_underflow::<T>() {
        return Ok(ExtendedReal::Infinite);
    }
    Ok(ExtendedReal::Finite(overlap.ln() / (alpha - T::one())))
}

/// Quantum relative entropy `tr(rho ln rho) - tr(rho ln sigma)` on supports;
/// `+inf` when `rho` has weight outside the support of `sigma`.
pub fn quantum_relative_entropy<T: Scalar>(
    rho: &DensityMatrix<T>,
    sigma: &DensityMatrix<T>,
) -> Result<ExtendedReal<T>> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch { left: rho.dim(), right: sigma.dim() });
    }
    if rho.mass_outside_support(sigma)? > kernel_mass_threshold::<T>() {
        return Ok(ExtendedReal::Infinite);
    }
    let self_term = rho
        .eigenvalues()
        .iter()
        .filter(|&&w| w > T::zero())
        .fold(T::zero(), |acc, &w| acc + w * w.ln());
    let log_sigma = sigma.spectral_map(|w| w.ln());
    let cross_term = rho.matrix().product_trace(&log_sigma)?.re;
    Ok(ExtendedReal::Finite(self_term - cross_term))
}

/// Symmetric Petz-Rényi divergence: the mean of the two argument orders,
/// with the `alpha = 1` case read as the symmetrized relative entropy.
/// `+inf` in either direction makes the result `+inf`.
pub fn symmetric_petz_renyi<T: Scalar>(
    rho: &DensityMatrix<T>,
    sigma: &DensityMatrix<T>,
    alpha: T,
) -> Result<ExtendedReal<T>> {
    check_alpha(alpha)?;
    if alpha == T::one() {
        let fwd = quantum_relative_entropy(rho, sigma)?;
        let bwd = quantum_relative_entropy(sigma, rho)?;
        return Ok(fwd.average(bwd));
    }
    let fwd = petz_renyi(rho, sigma, alpha)?;
    let bwd = petz_renyi(sigma, rho, alpha)?;
    Ok(fwd.average(bwd))
}

/// Holevo fidelity `[tr(sqrt(rho) sqrt(sigma))]^2`, clamped into `[0, 1]`.
pub fn holevo_fidelity<T: Scalar>(
    rho: &DensityMatrix<T>,
    sigma: &DensityMatrix<T>,
) -> Result<T> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch { left: rho.dim(), right: sigma.dim() });
    }
    let half = T::from_f64_lossy(0.5);
    let overlap = rho.power(half).product_trace(&sigma.power(half))?.re;
    Ok((overlap * overlap).max(T::zero()).min(T::one()))
}

/// Holevo's trace-norm inequality `T <= sqrt(1 - F_H)`, returned as
/// `(lhs, rhs)` for callers that want the margin.
pub fn holevo_inequality_sides<T: Scalar>(
    rho: &DensityMatrix<T>,
    sigma: &DensityMatrix<T>,
) -> Result<(T, T)> {
    let t = trace_distance(rho, sigma)?;
    let f = holevo_fidelity(rho, sigma)?;
    Ok((t, (T::one() - f).max(T::zero()).sqrt()))
}

fn check_alpha<T: Scalar>(alpha: T) -> Result<()> {
    if alpha <= T::zero() || !alpha.is_finite() {
        return Err(Error::InvalidAlpha { alpha: alpha.to_f64().unwrap_or(f64::NAN) });
    }
    Ok(())
}
