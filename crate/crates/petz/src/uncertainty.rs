//! The uncertainty statistic `s`, the sign operator of a state difference,
//! and the inequality checks wiring divergences, bounds and embeddings
//! together.
//!
//! Margins are reported as `lhs - rhs`; an infinite divergence on the left
//! short-circuits to an infinite margin rather than doing arithmetic on
//! infinities.

use crate::bounds::{bound_b, uncertainty_f};
use crate::classical::{entropy_variable, symmetric_classical_renyi, Distribution, Involution};
use crate::divergence::{symmetric_petz_renyi, ExtendedReal};
use crate::error::{Error, Result};
use crate::scalar::{mean_equal_rel, one_minus_tiny, support_rel, Scalar};
use crate::state::{trace_distance, DensityMatrix, Observable};

/// Means and variances of one observable in two states; variances are
/// clipped at zero.
#[derive(Debug, Clone, Copy)]
pub struct MomentSummary<T> {
    pub mean_rho: T,
    pub mean_sigma: T,
    pub var_rho: T,
    pub var_sigma: T,
}

/// Sign operator of `rho - sigma` plus the weight of its kernel.
#[derive(Debug, Clone)]
pub struct OmegaResult<T> {
    /// Eigenvalues in `{-1, 0, +1}`; squares to identity minus the kernel
    /// projector.
    pub omega: Observable<T>,
    /// `tr(rho epsilon_hat)`, which matches `tr(sigma epsilon_hat)` up to
    /// roundoff.
    pub epsilon: T,
}

/// One checked inequality: `lhs >= rhs` with `margin = lhs - rhs`.
#[derive(Debug, Clone, Copy)]
pub struct InequalityMargin<T> {
    pub lhs: ExtendedReal<T>,
    pub rhs: ExtendedReal<T>,
    pub margin: ExtendedReal<T>,
}

impl<T: Scalar> InequalityMargin<T> {
    /// Margin for a bound check: an infinite `lhs` wins outright.
    pub fn of(lhs: ExtendedReal<T>, rhs: ExtendedReal<T>) -> Self {
        let margin = match (lhs, rhs) {
            (ExtendedReal::Infinite, _) => ExtendedReal::Infinite,
            (ExtendedReal::Finite(a), ExtendedReal::Finite(b)) => ExtendedReal::Finite(a - b),
            (ExtendedReal::Finite(a), ExtendedReal::Infinite) => {
                ExtendedReal::Finite(a - T::infinity())
            }
        };
        Self { lhs, rhs, margin }
    }

    /// Margin forced infinite by a short-circuited divergence.
    pub fn short_circuit(lhs: ExtendedReal<T>, rhs: ExtendedReal<T>) -> Self {
        Self { lhs, rhs, margin: ExtendedReal::Infinite }
    }
}

struct RawMoments<T> {
    mean_rho: T,
    mean_sigma: T,
    second_rho: T,
    second_sigma: T,
}

fn raw_moments<T: Scalar>(
    rho: &DensityMatrix<T>,
    sigma: &DensityMatrix<T>,
    theta: &Observable<T>,
) -> Result<RawMoments<T>> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch { left: rho.dim(), right: sigma.dim() });
    }
    if theta.dim() != rho.dim() {
        return Err(Error::DimensionMismatch { left: rho.dim(), right: theta.dim() });
    }
    let theta_sq = theta.squared();
    Ok(RawMoments {
        mean_rho: rho.expectation(theta)?,
        mean_sigma: sigma.expectation(theta)?,
        second_rho: rho.expectation(&theta_sq)?,
        second_sigma: sigma.expectation(&theta_sq)?,
    })
}

impl<T: Scalar> RawMoments<T> {
    fn summary(&self) -> MomentSummary<T> {
        MomentSummary {
            mean_rho: self.mean_rho,
            mean_sigma: self.mean_sigma,
            var_rho: (self.second_rho - self.mean_rho * self.mean_rho).max(T::zero()),
            var_sigma: (self.second_sigma - self.mean_sigma * self.mean_sigma).max(T::zero()),
        }
    }

    /// Scale against which a mean difference counts as zero.
    fn mean_scale(&self) -> T {
        T::one()
            .max(self.second_rho.max(T::zero()).sqrt())
            .max(self.second_sigma.max(T::zero()).sqrt())
    }

    fn mean_shift(&self) -> T {
        self.mean_rho - self.mean_sigma
    }

    fn shift_is_zero(&self) -> bool {
        self.mean_shift().abs() <= mean_equal_rel::<T>() * self.mean_scale()
    }
}

pub fn moment_summary<T: Scalar>(
    rho: &DensityMatrix<T>,
    sigma: &DensityMatrix<T>,
    theta: &Observable<T>,
) -> Result<MomentSummary<T>> {
    Ok(raw_moments(rho, sigma, theta)?.summary())
}

/// The normalized mean-shift statistic
/// `s = sqrt[ (dm^2/2) / (var_rho + var_sigma + dm^2/2) ]` in `[0, 1]`.
/// A mean shift below roundoff scale counts as zero, which also covers the
/// 0/0 convention when both variances vanish.
pub fn s_statistic<T: Scalar>(
    rho: &DensityMatrix<T>,
    sigma: &DensityMatrix<T>,
    theta: &Observable<T>,
) -> Result<T> {
    let raw = raw_moments(rho, sigma, theta)?;
    if raw.shift_is_zero() {
        return Ok(T::zero());
    }
    let summary = raw.summary();
    let half = T::from_f64_lossy(0.5);
    let shift = raw.mean_shift();
    let num = half * shift * shift;
    let den = summary.var_rho + summary.var_sigma + num;
    Ok((num / den).sqrt().max(T::zero()).min(T::one()))
}

/// Sign operator of `rho - sigma`: `+1` on positive eigenspaces, `-1` on
/// negative ones, zero on the kernel (eigenvalues within `1e-12` of zero,
/// relative to the largest). Its mean gap is twice the trace distance.
pub fn omega_operator<T: Scalar>(
    rho: &DensityMatrix<T>,
    sigma: &DensityMatrix<T>,
) -> Result<OmegaResult<T>> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch { left: rho.dim(), right: sigma.dim() });
    }
    let diff = rho.matrix().sub(sigma.matrix())?;
    let eig = crate::eigen::hermitian_eigen(&diff, crate::state::Tolerances::default().hermiticity)?;
    let max_abs = eig
        .eigenvalues()
        .iter()
        .fold(T::zero(), |acc, &w| acc.max(w.abs()));
    let threshold = support_rel::<T>() * max_abs;
    let omega = eig.assemble(|w| {
        if w > threshold {
            T::one()
        } else if w < -threshold {
            -T::one()
        } else {
            T::zero()
        }
    });
    let kernel = eig.assemble(|w| if w.abs() <= threshold { T::one() } else { T::zero() });
    let epsilon = rho.matrix().product_trace(&kernel)?.re;
    Ok(OmegaResult { omega: Observable::new(omega)?, epsilon })
}

fn bound_at<T: Scalar>(alpha: T, x: T) -> Result<T> {
    bound_b(alpha, x.min(one_minus_tiny::<T>()).max(T::zero()))
}

/// The divergence-statistics inequality `D_alpha(rho, sigma) >= B(alpha, s)`.
pub fn check_uncertainty_relation<T: Scalar>(
    rho: &DensityMatrix<T>,
    sigma: &DensityMatrix<T>,
    theta: &Observable<T>,
    alpha: T,
) -> Result<InequalityMargin<T>> {
    let lhs = symmetric_petz_renyi(rho, sigma, alpha)?;
    let s = s_statistic(rho, sigma, theta)?;
    let rhs = ExtendedReal::Finite(bound_at(alpha, s)?);
    Ok(InequalityMargin::of(lhs, rhs))
}

/// The trace-norm chain built on the sign operator.
#[derive(Debug, Clone)]
pub struct TraceNormCheck<T> {
    /// `D_alpha >= B(alpha, s(rho, sigma; omega))`.
    pub uncertainty_stage: InequalityMargin<T>,
    /// `s(rho, sigma; omega) >= T(rho, sigma)`.
    pub trace_stage: InequalityMargin<T>,
    /// `D_alpha >= B(alpha, T(rho, sigma))`.
    pub trace_norm_bound: InequalityMargin<T>,
    pub s_omega: T,
    pub trace_distance: T,
    pub kernel_weight: T,
}

pub fn check_trace_norm_bound<T: Scalar>(
    rho: &DensityMatrix<T>,
    sigma: &DensityMatrix<T>,
    alpha: T,
) -> Result<TraceNormCheck<T>> {
    let d = symmetric_petz_renyi(rho, sigma, alpha)?;
    let omega = omega_operator(rho, sigma)?;
    let s_omega = s_statistic(rho, sigma, &omega.omega)?;
    let t = trace_distance(rho, sigma)?;
    Ok(TraceNormCheck {
        uncertainty_stage: InequalityMargin::of(d, ExtendedReal::Finite(bound_at(alpha, s_omega)?)),
        trace_stage: InequalityMargin::of(
            ExtendedReal::Finite(s_omega),
            ExtendedReal::Finite(t),
        ),
        trace_norm_bound: InequalityMargin::of(d, ExtendedReal::Finite(bound_at(alpha, t)?)),
        s_omega,
        trace_distance: t,
        kernel_weight: omega.epsilon,
    })
}

/// The inverted relation: observable uncertainty bounded below by
/// `f(alpha, D_alpha)`. Requires distinct means; an infinite divergence
/// short-circuits to an infinite margin.
pub fn check_inverted_uncertainty<T: Scalar>(
    rho: &DensityMatrix<T>,
    sigma: &DensityMatrix<T>,
    theta: &Observable<T>,
    alpha: T,
) -> Result<InequalityMargin<T>> {
    let raw = raw_moments(rho, sigma, theta)?;
    if raw.shift_is_zero() {
        return Err(Error::EqualMeans);
    }
    let summary = raw.summary();
    let shift = raw.mean_shift();
    let half = T::from_f64_lossy(0.5);
    let lhs = ExtendedReal::Finite(
        (summary.var_rho + summary.var_sigma) / (half * shift * shift),
    );
    match symmetric_petz_renyi(rho, sigma, alpha)? {
        ExtendedReal::Infinite => Ok(InequalityMargin::short_circuit(
            lhs,
            ExtendedReal::Finite(T::zero()),
        )),
        ExtendedReal::Finite(d) => Ok(InequalityMargin::of(lhs, uncertainty_f(alpha, d)?)),
    }
}

/// Classical analogue of the inverted relation for commuting data.
pub fn check_classical_tur<T: Scalar>(
    p: &Distribution<T>,
    q: &Distribution<T>,
    theta: &[T],
    alpha: T,
) -> Result<InequalityMargin<T>> {
    let (mean_p, var_p) = p.moments(theta)?;
    let (mean_q, var_q) = q.moments(theta)?;
    let second = |d: &Distribution<T>| -> Result<T> {
        let sq: Vec<T> = theta.iter().map(|&v| v * v).collect();
        d.expectation(&sq)
    };
    let scale = T::one().max(second(p)?.sqrt()).max(second(q)?.sqrt());
    let shift = mean_p - mean_q;
    if shift.abs() <= mean_equal_rel::<T>() * scale {
        return Err(Error::EqualMeans);
    }
    let half = T::from_f64_lossy(0.5);
    let lhs = ExtendedReal::Finite((var_p + var_q) / (half * shift * shift));
    match symmetric_classical_renyi(p, q, alpha)? {
        ExtendedReal::Infinite => Ok(InequalityMargin::short_circuit(
            lhs,
            ExtendedReal::Finite(T::zero()),
        )),
        ExtendedReal::Finite(d) => Ok(InequalityMargin::of(lhs, uncertainty_f(alpha, d)?)),
    }
}

/// Exchange-fluctuation relation: for a current antisymmetric under the
/// trajectory reversal, `Var(theta) / <theta>^2 >= f(1, <Sigma>)` with
/// `<Sigma>` the mean entropy production of the reversal.
pub fn check_exchange_tur<T: Scalar>(
    p: &Distribution<T>,
    m: &Involution,
    theta: &[T],
) -> Result<InequalityMargin<T>> {
    if theta.len() != p.len() {
        return Err(Error::LengthMismatch { left: p.len(), right: theta.len() });
    }
    let theta_scale = theta
        .iter()
        .fold(T::zero(), |acc, &v| acc.max(v.abs()))
        .max(T::one());
    for s in 0..theta.len() {
        if (theta[m.apply(s)] + theta[s]).abs() > mean_equal_rel::<T>() * theta_scale {
            return Err(Error::NotAntisymmetric { index: s });
        }
    }
    let (mean, var) = p.moments(theta)?;
    let sq: Vec<T> = theta.iter().map(|&v| v * v).collect();
    let scale = T::one().max(p.expectation(&sq)?.sqrt());
    if mean.abs() <= mean_equal_rel::<T>() * scale {
        return Err(Error::ZeroMeanCurrent);
    }
    let lhs = ExtendedReal::Finite(var / (mean * mean));
    let sigma = entropy_variable(p, m)?;
    let entropy_mean = sigma.mean().max(T::zero());
    Ok(InequalityMargin::of(lhs, uncertainty_f(T::one(), entropy_mean)?))
}
