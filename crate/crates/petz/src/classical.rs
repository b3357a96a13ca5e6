//! Classical distributions, Rényi divergences, triangular discrimination,
//! total variation, and the involution / entropy-variable machinery.
//!
//! Triangular discrimination uses the halved convention
//! `delta(P, Q) = sum_s (P_s - Q_s)^2 / (2 (P_s + Q_s))`,
//! which ranges over `[0, 1]`. The halved form is the one consistent with
//! `delta = < tanh^2(Sigma/2) >` under the involution construction and with
//! `arctanh(sqrt(delta))` staying defined, so it is used everywhere here.
//! Terms with `P_s = Q_s = 0` contribute zero.

use num_complex::Complex;

use crate::divergence::ExtendedReal;
use crate::error::{Error, Result};
use crate::scalar::{eps_floored, mean_equal_rel, overlap_underflow, Scalar};

/// Nonnegative weights summing to one, with an exact support mask.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution<T> {
    weights: Vec<T>,
    support: Vec<bool>,
}

impl<T: Scalar> Distribution<T> {
    /// Validates nonnegativity and normalization (sum within `1e-12` of 1).
    pub fn new(weights: Vec<T>) -> Result<Self> {
        let mut sum = T::zero();
        for (index, &w) in weights.iter().enumerate() {
            if !w.is_finite() || w < T::zero() {
                return Err(Error::NegativeWeight {
                    index,
                    value: w.to_f64().unwrap_or(f64::NAN),
                });
            }
            sum += w;
        }
        if (sum - T::one()).abs() > eps_floored::<T>(1e-12, 64.0) {
            return Err(Error::NotNormalized { sum: sum.to_f64().unwrap_or(f64::NAN) });
        }
        let support = weights.iter().map(|&w| w > T::zero()).collect();
        Ok(Self { weights, support })
    }

    /// Scales arbitrary nonnegative weights to sum to one.
    pub fn normalized(raw: Vec<T>) -> Result<Self> {
        let mut sum = T::zero();
        for (index, &w) in raw.iter().enumerate() {
            if !w.is_finite() || w < T::zero() {
                return Err(Error::NegativeWeight {
                    index,
                    value: w.to_f64().unwrap_or(f64::NAN),
                });
            }
            sum += w;
        }
        if sum <= T::zero() {
            return Err(Error::NotNormalized { sum: 0.0 });
        }
        Self::new(raw.into_iter().map(|w| w / sum).collect())
    }

    pub fn uniform(n: usize) -> Self {
        let w = T::one() / T::from_usize(n).unwrap();
        Self { weights: vec![w; n], support: vec![true; n] }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn weights(&self) -> &[T] {
        &self.weights
    }

    pub fn support(&self) -> &[bool] {
        &self.support
    }

    /// `P(m(s))` as a distribution.
    pub fn permute(&self, m: &Involution) -> Result<Self> {
        if m.len() != self.len() {
            return Err(Error::LengthMismatch { left: self.len(), right: m.len() });
        }
        let weights = (0..self.len()).map(|s| self.weights[m.apply(s)]).collect();
        Ok(Self::new(weights).expect("permutation preserves normalization"))
    }

    /// `< values >_P`.
    pub fn expectation(&self, values: &[T]) -> Result<T> {
        if values.len() != self.len() {
            return Err(Error::LengthMismatch { left: self.len(), right: values.len() });
        }
        Ok(self
            .weights
            .iter()
            .zip(values)
            .fold(T::zero(), |acc, (&w, &v)| acc + w * v))
    }

    /// Mean and variance of a real random variable, variance clipped at zero.
    pub fn moments(&self, values: &[T]) -> Result<(T, T)> {
        let mean = self.expectation(values)?;
        let second = self
            .weights
            .iter()
            .zip(values)
            .fold(T::zero(), |acc, (&w, &v)| acc + w * v * v);
        Ok((mean, (second - mean * mean).max(T::zero())))
    }
}

/// A self-inverse permutation.
#[derive(Debug, Clone, PartialEq)]
pub struct Involution {
    map: Vec<usize>,
}

impl Involution {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let n = map.len();
        for (index, &value) in map.iter().enumerate() {
            if value >= n {
                return Err(Error::IndexOutOfRange { index, value, len: n });
            }
        }
        for (index, &value) in map.iter().enumerate() {
            if map[value] != index {
                return Err(Error::NotInvolution { index });
            }
        }
        Ok(Self { map })
    }

    pub fn identity(n: usize) -> Self {
        Self { map: (0..n).collect() }
    }

    /// Swaps `s` and `s + n` in a doubled index set of length `2n`.
    pub fn half_swap(n: usize) -> Self {
        let map = (0..2 * n).map(|s| (s + n) % (2 * n)).collect();
        Self { map }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn apply(&self, s: usize) -> usize {
        self.map[s]
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn fixed_points(&self) -> impl Iterator<Item = usize> + '_ {
        self.map
            .iter()
            .enumerate()
            .filter(|&(s, &t)| s == t)
            .map(|(s, _)| s)
    }
}

/// The entropy-like variable `Sigma(s) = ln P(s) / P(m(s))` of a distribution
/// under an involution, with `Sigma = 0` wherever either weight vanishes.
///
/// Values are filled pairwise so the antisymmetry `Sigma(m(s)) = -Sigma(s)`
/// holds exactly, not just up to rounding.
#[derive(Debug, Clone)]
pub struct EntropyVariable<T> {
    values: Vec<T>,
    source: Distribution<T>,
    involution: Involution,
}

impl<T: Scalar> EntropyVariable<T> {
    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn source(&self) -> &Distribution<T> {
        &self.source
    }

    pub fn involution(&self) -> &Involution {
        &self.involution
    }

    /// `< Sigma >_P`, the mean entropy production.
    pub fn mean(&self) -> T {
        self.source
            .expectation(&self.values)
            .expect("lengths agree by construction")
    }
}

pub fn entropy_variable<T: Scalar>(
    p: &Distribution<T>,
    m: &Involution,
) -> Result<EntropyVariable<T>> {
    if m.len() != p.len() {
        return Err(Error::LengthMismatch { left: p.len(), right: m.len() });
    }
    let w = p.weights();
    let mut values = vec![T::zero(); p.len()];
    for s in 0..p.len() {
        let t = m.apply(s);
        if s < t && w[s] > T::zero() && w[t] > T::zero() {
            let v = (w[s] / w[t]).ln();
            values[s] = v;
            values[t] = -v;
        }
    }
    Ok(EntropyVariable { values, source: p.clone(), involution: m.clone() })
}

/// Classical Rényi relative entropy
/// `D_alpha(P | Q) = ln sum_s P_s^alpha Q_s^(1-alpha) / (alpha - 1)`;
/// `alpha = 1` is routed to the Kullback-Leibler divergence. Zero-weight
/// terms follow the same support conventions as the quantum side.
pub fn classical_renyi<T: Scalar>(
    p: &Distribution<T>,
    q: &Distribution<T>,
    alpha: T,
) -> Result<ExtendedReal<T>> {
    if alpha <= T::zero() || !alpha.is_finite() {
        return Err(Error::InvalidAlpha { alpha: alpha.to_f64().unwrap_or(f64::NAN) });
    }
    check_lengths(p, q)?;
    if alpha == T::one() {
        return classical_kl(p, q);
    }
    let mut sum = T::zero();
    for s in 0..p.len() {
        let (ps, qs) = (p.weights()[s], q.weights()[s]);
        if ps > T::zero() && qs > T::zero() {
            sum += ps.powf(alpha) * qs.powf(T::one() - alpha);
        } else if ps > T::zero() && alpha > T::one() {
            // Q_s^(1-alpha) would blow up
            return Ok(ExtendedReal::Infinite);
        }
    }
    if !sum.is_finite() || sum <= overlap_underflow::<T>() {
        return Ok(ExtendedReal::Infinite);
    }
    Ok(ExtendedReal::Finite(sum.ln() / (alpha - T::one())))
}

/// Kullback-Leibler divergence `sum P ln(P/Q)`.
pub fn classical_kl<T: Scalar>(
    p: &Distribution<T>,
    q: &Distribution<T>,
) -> Result<ExtendedReal<T>> {
    check_lengths(p, q)?;
    let mut sum = T::zero();
    for s in 0..p.len() {
        let (ps, qs) = (p.weights()[s], q.weights()[s]);
        if ps > T::zero() {
            if qs <= T::zero() {
                return Ok(ExtendedReal::Infinite);
            }
            sum += ps * (ps / qs).ln();
        }
    }
    Ok(ExtendedReal::Finite(sum))
}

/// Mean of the two argument orders; `alpha = 1` averages the two
/// Kullback-Leibler directions; `+inf` propagates.
pub fn symmetric_classical_renyi<T: Scalar>(
    p: &Distribution<T>,
    q: &Distribution<T>,
    alpha: T,
) -> Result<ExtendedReal<T>> {
    let fwd = classical_renyi(p, q, alpha)?;
    let bwd = classical_renyi(q, p, alpha)?;
    Ok(fwd.average(bwd))
}

/// Triangular discrimination in the halved convention, in `[0, 1]`.
pub fn triangular_discrimination<T: Scalar>(
    p: &Distribution<T>,
    q: &Distribution<T>,
) -> Result<T> {
    check_lengths(p, q)?;
    let half = T::from_f64_lossy(0.5);
    let mut sum = T::zero();
    for s in 0..p.len() {
        let (ps, qs) = (p.weights()[s], q.weights()[s]);
        let denom = ps + qs;
        if denom > T::zero() {
            let d = ps - qs;
            sum += d * d * half / denom;
        }
    }
    Ok(sum.max(T::zero()).min(T::one()))
}

/// Total variation `(1/2) sum |P - Q|`, in `[0, 1]`.
pub fn total_variation<T: Scalar>(p: &Distribution<T>, q: &Distribution<T>) -> Result<T> {
    check_lengths(p, q)?;
    let half = T::from_f64_lossy(0.5);
    let sum = p
        .weights()
        .iter()
        .zip(q.weights())
        .fold(T::zero(), |acc, (&a, &b)| acc + (a - b).abs());
    Ok((sum * half).max(T::zero()).min(T::one()))
}

/// Doubles `(P, Q)` into a single distribution with a bit-flip involution:
/// the first `n` slots carry `P/2`, the last `n` carry `Q/2`, and the
/// involution swaps the halves. The triangular discrimination of the pair
/// against its reversal reproduces `delta(P, Q)` exactly.
pub fn pair_construction<T: Scalar>(
    p: &Distribution<T>,
    q: &Distribution<T>,
) -> Result<(Distribution<T>, Involution)> {
    check_lengths(p, q)?;
    let half = T::from_f64_lossy(0.5);
    let mut weights = Vec::with_capacity(2 * p.len());
    weights.extend(p.weights().iter().map(|&w| w * half));
    weights.extend(q.weights().iter().map(|&w| w * half));
    Ok((Distribution::new(weights)?, Involution::half_swap(p.len())))
}

/// Both sides of the exponential-moment identity
/// `< exp((alpha-1) Sigma) > = < cosh((alpha-1/2) Sigma) / cosh(Sigma/2) >`,
/// computed independently so callers can assert their agreement.
pub fn exp_moment_identity<T: Scalar>(sigma: &EntropyVariable<T>, alpha: T) -> (T, T) {
    let half = T::from_f64_lossy(0.5);
    let w = sigma.source().weights();
    let mut lhs = T::zero();
    let mut rhs = T::zero();
    for (s, &v) in sigma.values().iter().enumerate() {
        lhs = lhs + w[s] * ((alpha - T::one()) * v).exp();
        rhs = rhs + w[s] * ((alpha - half) * v).cosh() / (v * half).cosh();
    }
    (lhs, rhs)
}

/// Lower bound on the triangular discrimination from the mean shift of a
/// complex random variable: returns
/// `(delta(P, Q), (1/2)|dm|^2 / (var_P + var_Q + (1/2)|dm|^2))`
/// with `dm = <Theta>_P - <Theta>_Q` and variances `<|Theta|^2> - |<Theta>|^2`.
/// A degenerate ratio (mean shift indistinguishable from zero) is defined
/// as zero.
pub fn mean_shift_bound<T: Scalar>(
    p: &Distribution<T>,
    q: &Distribution<T>,
    theta: &[Complex<T>],
) -> Result<(T, T)> {
    check_lengths(p, q)?;
    if theta.len() != p.len() {
        return Err(Error::LengthMismatch { left: p.len(), right: theta.len() });
    }
    let lhs = triangular_discrimination(p, q)?;
    let stats_p = complex_stats(p, theta);
    let stats_q = complex_stats(q, theta);
    let shift = stats_p.mean - stats_q.mean;
    let scale = T::one().max(stats_p.second.sqrt()).max(stats_q.second.sqrt());
    if shift.norm() <= mean_equal_rel::<T>() * scale {
        return Ok((lhs, T::zero()));
    }
    let half = T::from_f64_lossy(0.5);
    let num = shift.norm_sqr() * half;
    let rhs = num / (stats_p.variance + stats_q.variance + num);
    Ok((lhs, rhs))
}

struct ComplexStats<T> {
    mean: Complex<T>,
    second: T,
    variance: T,
}

fn complex_stats<T: Scalar>(p: &Distribution<T>, theta: &[Complex<T>]) -> ComplexStats<T> {
    let mut mean = Complex::new(T::zero(), T::zero());
    let mut second = T::zero();
    for (&w, &z) in p.weights().iter().zip(theta) {
        mean = mean + z * w;
        second += w * z.norm_sqr();
    }
    let variance = (second - mean.norm_sqr()).max(T::zero());
    ComplexStats { mean, second, variance }
}

fn check_lengths<T: Scalar>(p: &Distribution<T>, q: &Distribution<T>) -> Result<()> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch { left: p.len(), right: q.len() });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dist(w: &[f64]) -> Distribution<f64> {
        Distribution::new(w.to_vec()).unwrap()
    }

    const LN_1_16: f64 = 0.14842000511827328;
    const LN_7_3: f64 = 0.8472978603872036;

    #[test]
    fn renyi_identical_arguments() {
        let p = dist(&[0.7, 0.3]);
        for alpha in [0.3, 0.5, 1.0, 2.0, 3.0] {
            let d = classical_renyi(&p, &p, alpha).unwrap().finite().unwrap();
            assert!(d.abs() <= 1e-12);
        }
    }

    #[test]
    fn renyi_two_point_example() {
        let p = dist(&[0.7, 0.3]);
        let q = dist(&[0.5, 0.5]);
        let d = classical_renyi(&p, &q, 2.0).unwrap().finite().unwrap();
        assert!((d - LN_1_16).abs() <= 1e-14);
    }

    #[test]
    fn renyi_disjoint_supports() {
        let p = dist(&[1.0, 0.0]);
        let q = dist(&[0.0, 1.0]);
        assert!(classical_renyi(&p, &q, 0.5).unwrap().is_infinite());
        assert!(classical_renyi(&p, &q, 2.0).unwrap().is_infinite());
    }

    #[test]
    fn triangular_discrimination_examples() {
        let p = dist(&[0.7, 0.3]);
        assert_eq!(triangular_discrimination(&p, &p).unwrap(), 0.0);

        let disjoint_p = dist(&[1.0, 0.0]);
        let disjoint_q = dist(&[0.0, 1.0]);
        assert!((triangular_discrimination(&disjoint_p, &disjoint_q).unwrap() - 1.0).abs() <= 1e-15);

        // swapped two-point distribution: delta = (2a - 1)^2; at
        // a = e^2/(e^2+1) this equals tanh(1)^2
        let a = 0.8807970779778823;
        let swapped_p = dist(&[a, 1.0 - a]);
        let swapped_q = dist(&[1.0 - a, a]);
        let delta = triangular_discrimination(&swapped_p, &swapped_q).unwrap();
        assert!((delta - 0.5800256583859735).abs() <= 1e-12);
        assert!((delta - (2.0 * a - 1.0) * (2.0 * a - 1.0)).abs() <= 1e-15);
    }

    #[test]
    fn total_variation_examples() {
        let p = dist(&[0.7, 0.3]);
        let q = dist(&[0.5, 0.5]);
        assert_eq!(total_variation(&p, &p).unwrap(), 0.0);
        assert!((total_variation(&p, &q).unwrap() - 0.2).abs() <= 1e-15);
        let dp = dist(&[1.0, 0.0]);
        let dq = dist(&[0.0, 1.0]);
        assert!((total_variation(&dp, &dq).unwrap() - 1.0).abs() <= 1e-15);
    }

    #[test]
    fn entropy_variable_examples() {
        let uniform = Distribution::<f64>::uniform(4);
        let m = Involution::half_swap(2);
        let sigma = entropy_variable(&uniform, &m).unwrap();
        assert!(sigma.values().iter().all(|&v| v == 0.0));

        let p = dist(&[0.7, 0.3]);
        let swap = Involution::new(vec![1, 0]).unwrap();
        let sigma = entropy_variable(&p, &swap).unwrap();
        assert!((sigma.values()[0] - LN_7_3).abs() <= 1e-15);
        assert_eq!(sigma.values()[1], -sigma.values()[0]);

        let fixed = Involution::identity(2);
        let sigma = entropy_variable(&p, &fixed).unwrap();
        assert!(sigma.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn pair_construction_examples() {
        let (p, m) = pair_construction(&dist(&[1.0]), &dist(&[1.0])).unwrap();
        assert_eq!(p.weights(), &[0.5, 0.5]);
        assert_eq!(m.map(), &[1, 0]);

        let (p, m) = pair_construction(&dist(&[0.7, 0.3]), &dist(&[0.5, 0.5])).unwrap();
        assert_eq!(p.weights(), &[0.35, 0.15, 0.25, 0.25]);
        assert_eq!(m.map(), &[2, 3, 0, 1]);
    }

    #[test]
    fn pair_construction_preserves_discrimination() {
        let p = dist(&[0.6, 0.1, 0.3]);
        let q = dist(&[0.2, 0.5, 0.3]);
        let (pair, m) = pair_construction(&p, &q).unwrap();
        let reversed = pair.permute(&m).unwrap();
        let lhs = triangular_discrimination(&pair, &reversed).unwrap();
        let rhs = triangular_discrimination(&p, &q).unwrap();
        assert!((lhs - rhs).abs() <= 1e-12);
    }

    #[test]
    fn pair_divergence_matches_at_half_and_one_only() {
        // the doubled pair reproduces the symmetric divergence exactly at
        // alpha = 1/2 and alpha = 1; elsewhere the two differ by an
        // arithmetic-vs-geometric mean gap with a known sign
        let p = dist(&[0.7, 0.3]);
        let q = dist(&[0.5, 0.5]);
        let (pair, m) = pair_construction(&p, &q).unwrap();
        let reversed = pair.permute(&m).unwrap();
        for alpha in [0.5, 1.0] {
            let via_pair = symmetric_classical_renyi(&pair, &reversed, alpha)
                .unwrap()
                .finite()
                .unwrap();
            let direct = symmetric_classical_renyi(&p, &q, alpha).unwrap().finite().unwrap();
            assert!((via_pair - direct).abs() <= 1e-12, "alpha={alpha}");
        }
        for alpha in [0.3, 0.9, 1.5, 2.0, 3.0] {
            let via_pair = symmetric_classical_renyi(&pair, &reversed, alpha)
                .unwrap()
                .finite()
                .unwrap();
            let direct = symmetric_classical_renyi(&p, &q, alpha).unwrap().finite().unwrap();
            if alpha > 1.0 {
                assert!(via_pair >= direct - 1e-12, "alpha={alpha}");
            } else {
                assert!(via_pair <= direct + 1e-12, "alpha={alpha}");
            }
        }
    }

    #[test]
    fn exp_moment_identity_examples() {
        let uniform = Distribution::<f64>::uniform(2);
        let swap = Involution::new(vec![1, 0]).unwrap();
        let sigma = entropy_variable(&uniform, &swap).unwrap();
        let (lhs, rhs) = exp_moment_identity(&sigma, 2.0);
        assert_eq!(lhs, 1.0);
        assert_eq!(rhs, 1.0);

        let p = dist(&[0.7, 0.3]);
        let sigma = entropy_variable(&p, &swap).unwrap();
        let (lhs, rhs) = exp_moment_identity(&sigma, 2.0);
        assert!((lhs - 37.0 / 21.0).abs() <= 1e-14);
        assert!((lhs - rhs).abs() <= 1e-12);
    }

    #[test]
    fn mean_shift_bound_examples() {
        let a = 0.8807970779778823;
        let p = dist(&[a, 1.0 - a]);
        let q = dist(&[1.0 - a, a]);

        // constant observable: bound degenerates to zero
        let constant = vec![Complex::new(2.0, -1.0); 2];
        let (lhs, rhs) = mean_shift_bound(&p, &q, &constant).unwrap();
        assert_eq!(rhs, 0.0);
        assert!(lhs >= 0.0);

        // antisymmetric two-point observable saturates the bound
        let phi = 1.7;
        let theta = vec![Complex::new(phi, 0.0), Complex::new(-phi, 0.0)];
        let (lhs, rhs) = mean_shift_bound(&p, &q, &theta).unwrap();
        assert!((lhs - rhs).abs() <= 1e-12);
        assert!((lhs - (2.0 * a - 1.0) * (2.0 * a - 1.0)).abs() <= 1e-12);
    }

    #[test]
    fn length_mismatch_is_rejected() {
        let p = dist(&[0.5, 0.5]);
        let q = dist(&[1.0]);
        assert!(matches!(
            classical_renyi(&p, &q, 2.0),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn involution_validation() {
        assert!(Involution::new(vec![1, 0, 2]).is_ok());
        assert!(matches!(
            Involution::new(vec![1, 2, 0]),
            Err(Error::NotInvolution { .. })
        ));
        assert!(matches!(
            Involution::new(vec![3, 0]),
            Err(Error::IndexOutOfRange { .. })
        ));
    }
}
