//! Nussbaum-Szkoła embedding: maps a pair of `n`-dimensional states into a
//! pair of classical distributions on the `n^2` eigenvector index pairs,
//! `P_ij = p_i |<p_i|q_j>|^2` and `Q_ij = q_j |<p_i|q_j>|^2`, together with
//! the complex variable `Theta_ij = <p_i|theta|q_j> / <p_i|q_j>` carried by
//! an observable.
//!
//! The embedding reproduces every Petz-Rényi divergence of the pair, and its
//! first moments of `Theta` reproduce the observable's quantum means while
//! the second moments are dominated by them.
//!
//! Eigenvectors are ordered by descending eigenvalue with a deterministic
//! phase fix (first component of visible modulus rotated to the positive
//! real axis) and a lexicographic tie-break, so embeddings are reproducible.
//! Raw `P` entries are still basis-dependent under degenerate spectra; only
//! basis-independent quantities should be asserted against them.

use num_complex::Complex;

use crate::classical::{classical_renyi, Distribution};
use crate::divergence::{petz_renyi, quantum_relative_entropy, ExtendedReal};
use crate::error::{Error, Result};
use crate::scalar::{eps_floored, overlap_sq_zero, Scalar};
use crate::state::{DensityMatrix, Observable};

/// The classical image of a state pair, plus the optional embedded variable.
#[derive(Debug, Clone)]
pub struct NsEmbedding<T> {
    dim: usize,
    p: Distribution<T>,
    q: Distribution<T>,
    theta: Option<Vec<Complex<T>>>,
}

impl<T: Scalar> NsEmbedding<T> {
    /// Dimension `n` of the underlying states; the index set has `n^2` slots.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Row-major position of the pair `(i, j)`.
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.dim + j
    }

    pub fn p(&self) -> &Distribution<T> {
        &self.p
    }

    pub fn q(&self) -> &Distribution<T> {
        &self.q
    }

    pub fn theta(&self) -> Option<&[Complex<T>]> {
        self.theta.as_deref()
    }
}

/// Spectrum of a state ordered for embedding work: eigenvalues descending,
/// phase-fixed eigenvectors as rows of `vectors`.
struct OrderedSpectrum<T> {
    values: Vec<T>,
    vectors: Vec<Vec<Complex<T>>>,
}

fn ordered_spectrum<T: Scalar>(state: &DensityMatrix<T>) -> OrderedSpectrum<T> {
    let n = state.dim();
    let eig = state.spectrum();
    let mut vectors: Vec<Vec<Complex<T>>> = (0..n).map(|k| eig.eigenvectors().col(k)).collect();
    for v in &mut vectors {
        fix_phase(v);
    }
    let values = eig.eigenvalues();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        values[b]
            .partial_cmp(&values[a])
            .expect("finite eigenvalues")
            .then_with(|| lex_cmp(&vectors[a], &vectors[b]))
    });
    OrderedSpectrum {
        values: order.iter().map(|&k| values[k]).collect(),
        vectors: order.iter().map(|&k| vectors[k].clone()).collect(),
    }
}

/// Rotates the global phase so the first component of visible modulus lands
/// on the positive real axis.
fn fix_phase<T: Scalar>(v: &mut [Complex<T>]) {
    let tiny = eps_floored::<T>(1e-12, 16.0);
    if let Some(lead) = v.iter().find(|z| z.norm() > tiny) {
        let phase = lead.conj() / lead.norm();
        for z in v.iter_mut() {
            *z = *z * phase;
        }
    }
}

fn lex_cmp<T: Scalar>(a: &[Complex<T>], b: &[Complex<T>]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        match x.re.partial_cmp(&y.re).expect("finite").then_with(|| {
            x.im.partial_cmp(&y.im).expect("finite")
        }) {
            std::cmp::Ordering::Equal => continue,
            other => return other,
        }
    }
    std::cmp::Ordering::Equal
}

fn inner<T: Scalar>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    a.iter()
        .zip(b)
        .fold(Complex::new(T::zero(), T::zero()), |acc, (&x, &y)| acc + x.conj() * y)
}

fn apply<T: Scalar>(m: &crate::matrix::ComplexMatrix<T>, v: &[Complex<T>]) -> Vec<Complex<T>> {
    let n = m.dim();
    (0..n)
        .map(|i| {
            (0..n).fold(Complex::new(T::zero(), T::zero()), |acc, j| acc + m[(i, j)] * v[j])
        })
        .collect()
}

/// Builds the embedding. Squared overlaps at or below `1e-14` are treated as
/// exact zeros, which zeroes the matching `P`, `Q` and `Theta` entries; both
/// distributions are rescaled to absorb the discarded dust.
pub fn ns_embed<T: Scalar>(
    rho: &DensityMatrix<T>,
    sigma: &DensityMatrix<T>,
    theta: Option<&Observable<T>>,
) -> Result<NsEmbedding<T>> {
    let n = rho.dim();
    if sigma.dim() != n {
        return Err(Error::DimensionMismatch { left: n, right: sigma.dim() });
    }
    if let Some(th) = theta {
        if th.dim() != n {
            return Err(Error::DimensionMismatch { left: n, right: th.dim() });
        }
    }
    let rho_spec = ordered_spectrum(rho);
    let sigma_spec = ordered_spectrum(sigma);
    let zero_sq = overlap_sq_zero::<T>();

    let mut p = vec![T::zero(); n * n];
    let mut q = vec![T::zero(); n * n];
    let mut th = theta.map(|_| vec![Complex::new(T::zero(), T::zero()); n * n]);
    let theta_columns: Option<Vec<Vec<Complex<T>>>> = theta.map(|obs| {
        sigma_spec
            .vectors
            .iter()
            .map(|qv| apply(obs.matrix(), qv))
            .collect()
    });

    for i in 0..n {
        for j in 0..n {
            let overlap = inner(&rho_spec.vectors[i], &sigma_spec.vectors[j]);
            let weight = overlap.norm_sqr();
            if weight <= zero_sq {
                continue;
            }
            let slot = i * n + j;
            p[slot] = rho_spec.values[i] * weight;
            q[slot] = sigma_spec.values[j] * weight;
            if let (Some(th), Some(cols)) = (th.as_mut(), theta_columns.as_ref()) {
                th[slot] = inner(&rho_spec.vectors[i], &cols[j]) / overlap;
            }
        }
    }

    Ok(NsEmbedding {
        dim: n,
        p: Distribution::normalized(p)?,
        q: Distribution::normalized(q)?,
        theta: th,
    })
}

/// The same divergence along both routes: `(D_alpha(P|Q), D_alpha(rho||sigma))`
/// computed independently (classical sum vs matrix powers), `alpha = 1`
/// meaning the relative entropy on both sides. Callers assert agreement.
pub fn ns_divergence_identity<T: Scalar>(
    rho: &DensityMatrix<T>,
    sigma: &DensityMatrix<T>,
    alpha: T,
) -> Result<(ExtendedReal<T>, ExtendedReal<T>)> {
    let embedding = ns_embed(rho, sigma, None)?;
    let classical = classical_renyi(embedding.p(), embedding.q(), alpha)?;
    let quantum = if alpha == T::one() {
        quantum_relative_entropy(rho, sigma)?
    } else {
        petz_renyi(rho, sigma, alpha)?
    };
    Ok((classical, quantum))
}

/// First and second moments of the embedded variable next to the quantum
/// traces they mirror. The first moments agree to roundoff; the second
/// moments are dominated by the corresponding traces.
#[derive(Debug, Clone)]
pub struct NsMoments<T> {
    pub mean_p: Complex<T>,
    pub mean_q: Complex<T>,
    pub second_p: T,
    pub second_q: T,
    pub tr_rho_theta: T,
    pub tr_sigma_theta: T,
    pub tr_rho_theta_sq: T,
    pub tr_sigma_theta_sq: T,
}

pub fn ns_moments<T: Scalar>(
    rho: &DensityMatrix<T>,
    sigma: &DensityMatrix<T>,
    theta: &Observable<T>,
) -> Result<NsMoments<T>> {
    let embedding = ns_embed(rho, sigma, Some(theta))?;
    let values = embedding.theta().expect("embedded with an observable");
    let mut mean_p = Complex::new(T::zero(), T::zero());
    let mut mean_q = Complex::new(T::zero(), T::zero());
    let mut second_p = T::zero();
    let mut second_q = T::zero();
    for (slot, &z) in values.iter().enumerate() {
        let wp = embedding.p().weights()[slot];
        let wq = embedding.q().weights()[slot];
        mean_p = mean_p + z * wp;
        mean_q = mean_q + z * wq;
        second_p += wp * z.norm_sqr();
        second_q += wq * z.norm_sqr();
    }
    let theta_sq = theta.squared();
    Ok(NsMoments {
        mean_p,
        mean_q,
        second_p,
        second_q,
        tr_rho_theta: rho.expectation(theta)?,
        tr_sigma_theta: sigma.expectation(theta)?,
        tr_rho_theta_sq: rho.expectation(&theta_sq)?,
        tr_sigma_theta_sq: sigma.expectation(&theta_sq)?,
    })
}
