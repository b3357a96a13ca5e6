//! Deterministic, seedable generation of test instances.
//!
//! Randomness comes from ChaCha12 keyed by a 64-bit seed (expanded through
//! splitmix64) with one counter-addressed stream per trial, so parallel
//! sweeps draw order-independent, reproducible values. All variates are
//! produced by fixed transforms of raw 64-bit words: uniforms take the top
//! 53 bits, normals are Box-Muller (cosine branch, two uniforms per draw),
//! exponentials are `-ln(1 - u)`. No platform library is involved beyond
//! `ln`/`cos`/`sqrt`.

use num_complex::Complex;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::classical::{Distribution, Involution};
use crate::error::{Error, Result};
use crate::matrix::ComplexMatrix;
use crate::scalar::Scalar;
use crate::state::{DensityMatrix, Observable};

/// A master seed from which per-trial substreams are derived.
#[derive(Debug, Clone, Copy)]
pub struct RngStream {
    seed: u64,
}

impl RngStream {
    pub fn new(seed: u64) -> Self {
        Self { seed }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Independent stream for one trial; identical `(seed, id)` pairs
    /// reproduce identical sequences.
    pub fn substream(&self, id: u64) -> SubStream {
        let mut key = [0u8; 32];
        let mut state = self.seed;
        for chunk in key.chunks_exact_mut(8) {
            chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
        }
        let mut rng = ChaCha12Rng::from_seed(key);
        rng.set_stream(id);
        SubStream { rng }
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// One trial's random stream.
#[derive(Debug, Clone)]
pub struct SubStream {
    rng: ChaCha12Rng,
}

impl SubStream {
    pub fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    /// Uniform in `[0, 1)` from the top 53 bits of one word.
    pub fn uniform(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Standard normal via Box-Muller, cosine branch; two words per draw.
    pub fn standard_normal(&mut self) -> f64 {
        let u1 = 1.0 - self.uniform(); // (0, 1]
        let u2 = self.uniform();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }

    /// Standard complex normal: real and imaginary parts N(0, 1/2).
    pub fn complex_normal<T: Scalar>(&mut self) -> Complex<T> {
        let scale = std::f64::consts::FRAC_1_SQRT_2;
        Complex::new(
            T::from_f64_lossy(self.standard_normal() * scale),
            T::from_f64_lossy(self.standard_normal() * scale),
        )
    }

    /// Uniform index in `0..n`.
    pub fn index(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

/// Ginibre-style random state: `G G^dagger / tr(G G^dagger)` with `G` a
/// `dim x rank` matrix of standard complex Gaussians.
pub fn random_density<T: Scalar>(
    dim: usize,
    rank: usize,
    stream: &mut SubStream,
) -> Result<DensityMatrix<T>> {
    if rank == 0 || rank > dim {
        return Err(Error::RankOutOfRange { rank, dim });
    }
    let g: Vec<Vec<Complex<T>>> = (0..dim)
        .map(|_| (0..rank).map(|_| stream.complex_normal()).collect())
        .collect();
    let mut m = ComplexMatrix::<T>::zeros(dim);
    let mut trace = T::zero();
    for i in 0..dim {
        for j in 0..dim {
            let mut z = Complex::new(T::zero(), T::zero());
            for k in 0..rank {
                z = z + g[i][k] * g[j][k].conj();
            }
            m[(i, j)] = z;
            if i == j {
                trace += z.re;
            }
        }
    }
    DensityMatrix::new(m.scale(T::one() / trace))
}

/// Random Hermitian observable `(A + A^dagger) / 2` with complex Gaussian `A`.
pub fn random_observable<T: Scalar>(dim: usize, stream: &mut SubStream) -> Result<Observable<T>> {
    let a: Vec<Vec<Complex<T>>> = (0..dim)
        .map(|_| (0..dim).map(|_| stream.complex_normal()).collect())
        .collect();
    let mut m = ComplexMatrix::<T>::zeros(dim);
    let half = T::from_f64_lossy(0.5);
    for i in 0..dim {
        m[(i, i)] = Complex::new(a[i][i].re, T::zero());
        for j in i + 1..dim {
            let z = (a[i][j] + a[j][i].conj()) * half;
            m[(i, j)] = z;
            m[(j, i)] = z.conj();
        }
    }
    Observable::new(m)
}

/// The exactly saturating two-level family:
/// `rho = diag(e^(eps/2), e^(-eps/2)) / (2 cosh(eps/2))`, `sigma` with the
/// entries swapped, and the observable `diag(phi, -phi)`. Its moments are
/// `tr(rho theta) = phi tanh(eps/2)` and `tr(rho theta^2) = phi^2`.
pub fn saturating_pair<T: Scalar>(
    epsilon: T,
    phi: T,
) -> Result<(DensityMatrix<T>, DensityMatrix<T>, Observable<T>)> {
    if phi.is_zero() || !phi.is_finite() {
        return Err(Error::Domain { what: "phi", value: phi.to_f64().unwrap_or(f64::NAN) });
    }
    let a = T::one() / (T::one() + (-epsilon).exp());
    let b = T::one() / (T::one() + epsilon.exp());
    let rho = DensityMatrix::new(ComplexMatrix::from_diag(&[a, b]))?;
    let sigma = DensityMatrix::new(ComplexMatrix::from_diag(&[b, a]))?;
    let theta = Observable::from_diag(&[phi, -phi]);
    Ok((rho, sigma, theta))
}

/// Random full-support distribution from normalized exponential variates.
pub fn random_distribution<T: Scalar>(n: usize, stream: &mut SubStream) -> Result<Distribution<T>> {
    let raw: Vec<T> = (0..n)
        .map(|_| T::from_f64_lossy(-(1.0 - stream.uniform()).ln()))
        .collect();
    Distribution::normalized(raw)
}

/// Random involution from a shuffled pairing; odd lengths leave the final
/// element fixed.
pub fn random_involution(n: usize, stream: &mut SubStream) -> Involution {
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        order.swap(i, stream.index(i + 1));
    }
    let mut map = vec![0usize; n];
    let mut k = 0;
    while k + 1 < n {
        map[order[k]] = order[k + 1];
        map[order[k + 1]] = order[k];
        k += 2;
    }
    if n % 2 == 1 {
        map[order[n - 1]] = order[n - 1];
    }
    Involution::new(map).expect("pairing is an involution by construction")
}

/// Random trajectory-style instance: a full-support distribution, a pairing
/// involution, and a current that is exactly antisymmetric under it (zero at
/// fixed points).
pub fn random_trajectory_instance<T: Scalar>(
    n: usize,
    stream: &mut SubStream,
) -> Result<(Distribution<T>, Involution, Vec<T>)> {
    let p = random_distribution::<T>(n, stream)?;
    let m = random_involution(n, stream);
    let mut theta = vec![T::zero(); n];
    for s in 0..n {
        let t = m.apply(s);
        if s < t {
            let g = T::from_f64_lossy(stream.standard_normal());
            theta[s] = g;
            theta[t] = -g;
        }
    }
    Ok((p, m, theta))
}
