//! The tight trace-norm bound function and its inverse.
//!
//! `bound_b(alpha, x) = ln[ cosh((2 alpha - 1) u) / cosh(u) ] / (alpha - 1)`
//! with `u = arctanh(x)`, continued at `alpha = 1` by its limit
//! `2 x arctanh(x)`. It is strictly increasing in `x` on `[0, 1)` for every
//! `alpha > 0`, which makes a plain bisection the whole inversion story.
//!
//! `ln cosh` is evaluated in the log domain,
//! `ln cosh(u) = |u| + ln(1 + e^(-2|u|)) - ln 2`,
//! so large `alpha * arctanh(x)` cannot overflow, and `arctanh` itself is
//! `ln((1+x)/(1-x)) / 2` with the argument capped just under one.

use crate::divergence::ExtendedReal;
use crate::error::{Error, Result};
use crate::scalar::{alpha_one_window, eps_floored, one_minus_tiny, Scalar};

const BISECT_MAX_ITERS: usize = 200;

/// `arctanh` with the argument capped at `1 - max(1e-15, 4 eps)`.
pub fn arctanh_clamped<T: Scalar>(x: T) -> T {
    let x = x.min(one_minus_tiny::<T>());
    let half = T::from_f64_lossy(0.5);
    ((T::one() + x) / (T::one() - x)).ln() * half
}

/// Overflow-free `ln cosh`.
pub fn ln_cosh<T: Scalar>(u: T) -> T {
    let a = u.abs();
    let two = T::from_f64_lossy(2.0);
    a + (-two * a).exp().ln_1p() - T::LN_2()
}

/// The bound function `B(alpha, x)`; domain `alpha > 0`, `0 <= x < 1`.
pub fn bound_b<T: Scalar>(alpha: T, x: T) -> Result<T> {
    check_alpha(alpha)?;
    if x < T::zero() || x >= T::one() || !x.is_finite() {
        return Err(Error::Domain { what: "x", value: x.to_f64().unwrap_or(f64::NAN) });
    }
    let u = arctanh_clamped(x);
    if (alpha - T::one()).abs() <= alpha_one_window::<T>() {
        // analytic limit; the direct quotient is 0/0 here
        return Ok((x + x) * u);
    }
    let two = T::from_f64_lossy(2.0);
    let stretched = (two * alpha - T::one()) * u;
    Ok((ln_cosh(stretched) - ln_cosh(u)) / (alpha - T::one()))
}

/// Result of inverting the bound function.
#[derive(Debug, Clone, Copy)]
pub struct BoundInverse<T> {
    /// Argument with `B(alpha, x)` closest to the requested value.
    pub x: T,
    /// Set when the requested value exceeds what the capped domain reaches;
    /// `x` is then the cap itself.
    pub saturated: bool,
}

/// Inverse of `B(alpha, ·)` on `x >= 0`, by bisection on `[0, 1)`.
pub fn bound_b_inverse<T: Scalar>(alpha: T, y: T) -> Result<BoundInverse<T>> {
    check_alpha(alpha)?;
    if y < T::zero() || !y.is_finite() {
        return Err(Error::Domain { what: "y", value: y.to_f64().unwrap_or(f64::NAN) });
    }
    if y.is_zero() {
        return Ok(BoundInverse { x: T::zero(), saturated: false });
    }
    let cap = one_minus_tiny::<T>();
    if bound_b(alpha, cap)? < y {
        return Ok(BoundInverse { x: cap, saturated: true });
    }
    let width_target = eps_floored::<T>(1e-15, 2.0);
    let half = T::from_f64_lossy(0.5);
    let mut lo = T::zero();
    let mut hi = cap;
    for _ in 0..BISECT_MAX_ITERS {
        if hi - lo < width_target {
            break;
        }
        let mid = (lo + hi) * half;
        if bound_b(alpha, mid)? < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(BoundInverse { x: (lo + hi) * half, saturated: false })
}

/// The inverted-bound function `f(alpha, D) = 1 / B^{-1}(alpha, D)^2 - 1`;
/// `D = 0` maps to the infinity marker.
pub fn uncertainty_f<T: Scalar>(alpha: T, d: T) -> Result<ExtendedReal<T>> {
    let inv = bound_b_inverse(alpha, d)?;
    if inv.x.is_zero() {
        return Ok(ExtendedReal::Infinite);
    }
    Ok(ExtendedReal::Finite(T::one() / (inv.x * inv.x) - T::one()))
}

/// Right-hand side of the Pinsker-type comparison, `2 min(alpha, 1) T^2`.
pub fn pinsker_rhs<T: Scalar>(alpha: T, t: T) -> Result<T> {
    check_alpha(alpha)?;
    if t < T::zero() || t > T::one() {
        return Err(Error::Domain { what: "t", value: t.to_f64().unwrap_or(f64::NAN) });
    }
    let two = T::from_f64_lossy(2.0);
    Ok(two * alpha.min(T::one()) * t * t)
}

/// Inverse of `h(x) = x tanh(x/2)` on `x >= 0`; the relative-entropy case of
/// the inverted bound is `1 / sinh^2(h^{-1}(D) / 2)`, used as an independent
/// route against `uncertainty_f(1, ·)`.
pub fn invert_x_tanh_half<T: Scalar>(y: T) -> Result<T> {
    if y < T::zero() || !y.is_finite() {
        return Err(Error::Domain { what: "y", value: y.to_f64().unwrap_or(f64::NAN) });
    }
    if y.is_zero() {
        return Ok(T::zero());
    }
    let half = T::from_f64_lossy(0.5);
    let h = |x: T| x * (x * half).tanh();
    let mut hi = T::one();
    while h(hi) < y {
        hi = hi + hi;
    }
    let mut lo = T::zero();
    let width_target = eps_floored::<T>(1e-15, 2.0) * hi.max(T::one());
    for _ in 0..BISECT_MAX_ITERS {
        if hi - lo < width_target {
            break;
        }
        let mid = (lo + hi) * half;
        if h(mid) < y {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok((lo + hi) * half)
}

fn check_alpha<T: Scalar>(alpha: T) -> Result<()> {
    if alpha <= T::zero() || !alpha.is_finite() {
        return Err(Error::InvalidAlpha { alpha: alpha.to_f64().unwrap_or(f64::NAN) });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DEFAULT_ALPHA_GRID;

    // closed forms evaluated independently:
    const B_HALF_AT_06: f64 = 0.4462871026284195; // -ln(1 - 0.36)
    const B_TWO_AT_TANH1: f64 = 1.8755476740947580; // ln(1 + 4 sinh^2 1)
    const TANH_1: f64 = 0.7615941559557649;
    const SQRT_HALF: f64 = 0.7071067811865476;
    const INV_SINH_SQ_1: f64 = 0.7240616609663105;
    const H_AT_2: f64 = 1.5231883119115298; // 2 tanh(1)

    #[test]
    fn vanishes_at_zero_for_every_alpha() {
        for &alpha in DEFAULT_ALPHA_GRID {
            assert_eq!(bound_b(alpha, 0.0).unwrap(), 0.0);
        }
    }

    #[test]
    fn closed_form_at_alpha_half() {
        assert!((bound_b(0.5, 0.6).unwrap() - B_HALF_AT_06).abs() <= 1e-15);
        // B(1/2, x) = -ln(1 - x^2) across a mesh
        for k in 0..1000 {
            let x = 0.999 * k as f64 / 999.0;
            let direct = bound_b(0.5, x).unwrap();
            let closed = -(1.0 - x * x).ln();
            assert!((direct - closed).abs() <= 1e-12, "x={x}");
        }
    }

    #[test]
    fn matches_independent_route_at_alpha_two() {
        assert!((bound_b(2.0, TANH_1).unwrap() - B_TWO_AT_TANH1).abs() <= 1e-14);
    }

    #[test]
    fn limit_branch_agrees_with_neighbors() {
        for k in 1..100 {
            let x = k as f64 / 100.0;
            let limit = 2.0 * x * arctanh_clamped(x);
            assert!((bound_b(1.0 + 1e-5, x).unwrap() - limit).abs() <= 1e-3);
            assert!((bound_b(1.0 - 1e-5, x).unwrap() - limit).abs() <= 1e-3);
            assert!((bound_b(1.0, x).unwrap() - limit).abs() <= 1e-15);
        }
    }

    #[test]
    fn domain_errors() {
        assert!(matches!(bound_b(2.0, 1.0), Err(Error::Domain { .. })));
        assert!(matches!(bound_b(2.0, -0.1), Err(Error::Domain { .. })));
        assert!(matches!(bound_b(0.0, 0.5), Err(Error::InvalidAlpha { .. })));
        assert!(matches!(bound_b_inverse(2.0, -1.0), Err(Error::Domain { .. })));
    }

    #[test]
    fn strictly_increasing_on_meshes() {
        for &alpha in DEFAULT_ALPHA_GRID {
            let mut prev = -1.0;
            for k in 0..1000 {
                let x = 0.999 * k as f64 / 999.0;
                let b = bound_b(alpha, x).unwrap();
                assert!(b > prev, "alpha={alpha}, x={x}");
                prev = b;
            }
        }
    }

    #[test]
    fn inverse_basics() {
        for &alpha in DEFAULT_ALPHA_GRID {
            let inv = bound_b_inverse(alpha, 0.0).unwrap();
            assert_eq!(inv.x, 0.0);
            assert!(!inv.saturated);
        }
        let inv = bound_b_inverse(0.5, std::f64::consts::LN_2).unwrap();
        assert!((inv.x - SQRT_HALF).abs() <= 1e-12);

        let y = bound_b(2.0, 0.761594f64).unwrap();
        let inv = bound_b_inverse(2.0, y).unwrap();
        assert!((inv.x - 0.761594).abs() <= 1e-8);
    }

    #[test]
    fn inverse_saturates_above_range() {
        let inv = bound_b_inverse(2.0, 1e6f64).unwrap();
        assert!(inv.saturated);
        assert!(inv.x > 0.999999);
    }

    #[test]
    fn inverted_bound_examples() {
        // alpha = 1/2: f = F/(1-F) with F = e^{-D}
        let f = uncertainty_f(0.5, std::f64::consts::LN_2).unwrap().finite().unwrap();
        assert!((f - 1.0).abs() <= 1e-10);

        // composing with the forward map: B(alpha, 0.5) -> 1/0.25 - 1 = 3
        for &alpha in DEFAULT_ALPHA_GRID {
            let d = bound_b(alpha, 0.5).unwrap();
            let f = uncertainty_f(alpha, d).unwrap().finite().unwrap();
            assert!((f - 3.0).abs() <= 1e-8, "alpha={alpha}");
        }

        // alpha = 1 cross-check: f(1, h(2)) = 1/sinh^2(1)
        let f = uncertainty_f(1.0, H_AT_2).unwrap().finite().unwrap();
        assert!((f - INV_SINH_SQ_1).abs() <= 1e-8);
        let g = invert_x_tanh_half(H_AT_2).unwrap();
        assert!((g - 2.0).abs() <= 1e-10);
        let via_g = 1.0 / (g / 2.0).sinh().powi(2);
        assert!((f - via_g).abs() <= 1e-8);

        assert!(uncertainty_f(2.0, 0.0).unwrap().is_infinite());
    }

    #[test]
    fn pinsker_examples() {
        assert_eq!(pinsker_rhs(2.0, 0.0f64).unwrap(), 0.0);
        assert!((pinsker_rhs(0.5, 0.6f64).unwrap() - 0.36).abs() <= 1e-15);
        assert!((pinsker_rhs(3.0, 0.5f64).unwrap() - 0.5).abs() <= 1e-15);
    }

    #[test]
    fn dominates_pinsker_on_a_mesh() {
        for i in 1..=100 {
            let alpha = 5.0 * i as f64 / 100.0;
            for k in 0..200 {
                let t = 0.999 * k as f64 / 199.0;
                let b = bound_b(alpha, t).unwrap();
                let p = pinsker_rhs(alpha, t).unwrap();
                assert!(b - p >= -1e-12, "alpha={alpha}, t={t}, gap={}", b - p);
            }
        }
    }

    #[test]
    fn trace_norm_chain_on_a_mesh() {
        // ln 1/(1-T^2) >= T^2
        for k in 0..1000 {
            let t = 0.999 * k as f64 / 999.0;
            assert!(-(1.0 - t * t).ln() >= t * t - 1e-15);
        }
    }

    #[test]
    fn cosh_ratio_is_convex_in_alpha() {
        let g = |alpha: f64, x: f64| ln_cosh((2.0 * alpha - 1.0) * x) - ln_cosh(x);
        let h = 0.05;
        for i in 1..200 {
            let alpha = i as f64 * 0.025;
            for k in 1..40 {
                let x = k as f64 * 0.25;
                let second = g(alpha + h, x) - 2.0 * g(alpha, x) + g(alpha - h, x);
                assert!(second >= -1e-9, "alpha={alpha}, x={x}");
            }
        }
    }

    #[test]
    fn no_overflow_for_large_alpha() {
        let b = bound_b(1000.0, 0.999999f64).unwrap();
        assert!(b.is_finite());
        assert!(b > 0.0);
    }
}
