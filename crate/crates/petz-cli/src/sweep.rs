//! Trial generation and sweep execution.
//!
//! Every trial owns the substream addressed by its index, so results do not
//! depend on scheduling; rows come back in trial order either way.

use std::time::Instant;

use anyhow::{anyhow, Result};
use rayon::prelude::*;

use petz::{
    check_classical_tur, check_exchange_tur, check_inverted_uncertainty,
    check_trace_norm_bound, check_uncertainty_relation, entropy_variable, exp_moment_identity,
    mean_shift_bound, ns_divergence_identity, random_density, random_distribution,
    random_involution, random_observable, random_trajectory_instance, saturating_pair,
    symmetric_classical_renyi, total_variation, trace_distance, triangular_discrimination,
    DensityMatrix, Error, ExtendedReal, Observable, RngStream, SubStream,
};

use crate::config::{SweepConfig, Which};
use crate::report::{identity_margin, SweepReport, SweepRow};

/// Runs one verification sweep.
pub fn run_sweep(which: Which, config: &SweepConfig) -> Result<SweepReport> {
    config.validate()?;
    let start = Instant::now();
    let trial_rows: Vec<Vec<SweepRow>> = if config.jobs <= 1 {
        (0..config.trials)
            .map(|trial| run_trial(which, config, trial))
            .collect::<Result<_>>()?
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.jobs)
            .build()
            .map_err(|e| anyhow!("cannot build worker pool: {e}"))?;
        pool.install(|| {
            (0..config.trials)
                .into_par_iter()
                .map(|trial| run_trial(which, config, trial))
                .collect::<Result<_>>()
        })?
    };
    let rows = trial_rows.into_iter().flatten().collect();
    Ok(SweepReport::build(
        which.token().to_string(),
        config,
        rows,
        start.elapsed().as_millis(),
    ))
}

/// Saturation scan over the exactly saturating two-level family: one row per
/// `(epsilon, alpha)` pair with the absolute gap as the margin.
pub fn run_saturation(epsilons: &[f64], config: &SweepConfig) -> Result<SweepReport> {
    if epsilons.is_empty() {
        return Err(anyhow!("epsilon grid must not be empty"));
    }
    config.validate()?;
    let start = Instant::now();
    let mut rows = Vec::with_capacity(epsilons.len() * config.alphas.len());
    for (k, &eps) in epsilons.iter().enumerate() {
        let (rho, sigma, theta) = saturating_pair::<f64>(eps, 1.0)?;
        let t = trace_distance(&rho, &sigma)?;
        let s = petz::s_statistic(&rho, &sigma, &theta)?;
        for &alpha in &config.alphas {
            let check = check_uncertainty_relation(&rho, &sigma, &theta, alpha)?;
            let lhs = check.lhs.to_scalar();
            let rhs = check.rhs.to_scalar();
            rows.push(SweepRow {
                trial: k,
                dim: 2,
                alpha,
                seed: config.seed,
                lhs,
                rhs,
                margin: identity_margin(lhs, rhs),
                inequality: "saturation",
                t,
                s,
                epsilon_kernel: 0.0,
            });
        }
    }
    Ok(SweepReport::build(
        "saturation".to_string(),
        config,
        rows,
        start.elapsed().as_millis(),
    ))
}

fn run_trial(which: Which, config: &SweepConfig, trial: usize) -> Result<Vec<SweepRow>> {
    let mut stream = RngStream::new(config.seed).substream(trial as u64);
    let dim = config.dims[stream.index(config.dims.len())];
    match which {
        Which::Theorem => theorem_trial(config, trial, dim, &mut stream),
        Which::Holevo => holevo_trial(config, trial, dim, &mut stream),
        Which::Inverted => inverted_trial(config, trial, dim, &mut stream),
        Which::Classical => classical_trial(config, trial, dim, &mut stream),
        Which::Exchange => exchange_trial(config, trial, dim, &mut stream),
        Which::NsIdentity => ns_identity_trial(config, trial, dim, &mut stream),
        Which::Lemma1 => lemma1_trial(config, trial, dim, &mut stream),
        Which::Lemma2 => lemma2_trial(config, trial, dim, &mut stream),
    }
}

fn random_pair(
    dim: usize,
    stream: &mut SubStream,
) -> Result<(DensityMatrix<f64>, DensityMatrix<f64>)> {
    let rank_rho = 1 + stream.index(dim);
    let rank_sigma = 1 + stream.index(dim);
    Ok((
        random_density::<f64>(dim, rank_rho, stream)?,
        random_density::<f64>(dim, rank_sigma, stream)?,
    ))
}

fn theorem_trial(
    config: &SweepConfig,
    trial: usize,
    dim: usize,
    stream: &mut SubStream,
) -> Result<Vec<SweepRow>> {
    let (rho, sigma) = random_pair(dim, stream)?;
    let theta = random_observable::<f64>(dim, stream)?;
    let t = trace_distance(&rho, &sigma)?;
    let s = petz::s_statistic(&rho, &sigma, &theta)?;
    let mut rows = Vec::with_capacity(config.alphas.len());
    for &alpha in &config.alphas {
        let check = check_uncertainty_relation(&rho, &sigma, &theta, alpha)?;
        rows.push(SweepRow {
            trial,
            dim,
            alpha,
            seed: config.seed,
            lhs: check.lhs.to_scalar(),
            rhs: check.rhs.to_scalar(),
            margin: check.margin.to_scalar(),
            inequality: "theorem",
            t,
            s,
            epsilon_kernel: f64::NAN,
        });
    }
    Ok(rows)
}

fn holevo_trial(
    config: &SweepConfig,
    trial: usize,
    dim: usize,
    stream: &mut SubStream,
) -> Result<Vec<SweepRow>> {
    let (rho, sigma) = random_pair(dim, stream)?;
    let mut rows = Vec::with_capacity(2 * config.alphas.len() + 1);
    let mut stage_emitted = false;
    for &alpha in &config.alphas {
        let check = check_trace_norm_bound(&rho, &sigma, alpha)?;
        let base = SweepRow {
            trial,
            dim,
            alpha,
            seed: config.seed,
            lhs: 0.0,
            rhs: 0.0,
            margin: 0.0,
            inequality: "holevo-bound",
            t: check.trace_distance,
            s: check.s_omega,
            epsilon_kernel: check.kernel_weight,
        };
        rows.push(SweepRow {
            lhs: check.trace_norm_bound.lhs.to_scalar(),
            rhs: check.trace_norm_bound.rhs.to_scalar(),
            margin: check.trace_norm_bound.margin.to_scalar(),
            ..base.clone()
        });
        rows.push(SweepRow {
            lhs: check.uncertainty_stage.lhs.to_scalar(),
            rhs: check.uncertainty_stage.rhs.to_scalar(),
            margin: check.uncertainty_stage.margin.to_scalar(),
            inequality: "holevo-uncertainty",
            ..base.clone()
        });
        if !stage_emitted {
            stage_emitted = true;
            rows.push(SweepRow {
                alpha: f64::NAN,
                lhs: check.trace_stage.lhs.to_scalar(),
                rhs: check.trace_stage.rhs.to_scalar(),
                margin: check.trace_stage.margin.to_scalar(),
                inequality: "holevo-trace-stage",
                ..base
            });
        }
    }
    Ok(rows)
}

fn inverted_trial(
    config: &SweepConfig,
    trial: usize,
    dim: usize,
    stream: &mut SubStream,
) -> Result<Vec<SweepRow>> {
    let (rho, sigma) = random_pair(dim, stream)?;
    // a freshly drawn observable can in principle have matching means; the
    // relation needs them distinct, so redraw within the trial's substream
    let mut theta = random_observable::<f64>(dim, stream)?;
    let mut guard = 0;
    while matches!(
        check_inverted_uncertainty(&rho, &sigma, &theta, config.alphas[0]),
        Err(Error::EqualMeans)
    ) {
        theta = random_observable::<f64>(dim, stream)?;
        guard += 1;
        if guard > 100 {
            return Err(anyhow!("could not draw an observable with distinct means"));
        }
    }
    let t = trace_distance(&rho, &sigma)?;
    let s = petz::s_statistic(&rho, &sigma, &theta)?;
    let mut rows = Vec::with_capacity(config.alphas.len());
    for &alpha in &config.alphas {
        let check = check_inverted_uncertainty(&rho, &sigma, &theta, alpha)?;
        rows.push(SweepRow {
            trial,
            dim,
            alpha,
            seed: config.seed,
            lhs: check.lhs.to_scalar(),
            rhs: check.rhs.to_scalar(),
            margin: check.margin.to_scalar(),
            inequality: "inverted-ur",
            t,
            s,
            epsilon_kernel: f64::NAN,
        });
    }
    Ok(rows)
}

fn classical_trial(
    config: &SweepConfig,
    trial: usize,
    dim: usize,
    stream: &mut SubStream,
) -> Result<Vec<SweepRow>> {
    let p = random_distribution::<f64>(dim, stream)?;
    let q = random_distribution::<f64>(dim, stream)?;
    let mut theta: Vec<f64> = (0..dim).map(|_| stream.standard_normal()).collect();
    let mut guard = 0;
    while matches!(
        check_classical_tur(&p, &q, &theta, config.alphas[0]),
        Err(Error::EqualMeans)
    ) {
        theta = (0..dim).map(|_| stream.standard_normal()).collect();
        guard += 1;
        if guard > 100 {
            return Err(anyhow!("could not draw a variable with distinct means"));
        }
    }
    let t = total_variation(&p, &q)?;
    let mut rows = Vec::with_capacity(config.alphas.len());
    for &alpha in &config.alphas {
        let check = check_classical_tur(&p, &q, &theta, alpha)?;
        rows.push(SweepRow {
            trial,
            dim,
            alpha,
            seed: config.seed,
            lhs: check.lhs.to_scalar(),
            rhs: check.rhs.to_scalar(),
            margin: check.margin.to_scalar(),
            inequality: "classical-tur",
            t,
            s: f64::NAN,
            epsilon_kernel: f64::NAN,
        });
    }
    Ok(rows)
}

fn exchange_trial(
    config: &SweepConfig,
    trial: usize,
    dim: usize,
    stream: &mut SubStream,
) -> Result<Vec<SweepRow>> {
    let mut instance = random_trajectory_instance::<f64>(dim, stream)?;
    let mut guard = 0;
    loop {
        match check_exchange_tur(&instance.0, &instance.1, &instance.2) {
            Err(Error::ZeroMeanCurrent) => {
                instance = random_trajectory_instance::<f64>(dim, stream)?;
                guard += 1;
                if guard > 100 {
                    return Err(anyhow!("could not draw a current with nonzero mean"));
                }
            }
            Err(other) => return Err(other.into()),
            Ok(check) => {
                return Ok(vec![SweepRow {
                    trial,
                    dim,
                    alpha: 1.0,
                    seed: config.seed,
                    lhs: check.lhs.to_scalar(),
                    rhs: check.rhs.to_scalar(),
                    margin: check.margin.to_scalar(),
                    inequality: "exchange-tur",
                    t: f64::NAN,
                    s: f64::NAN,
                    epsilon_kernel: f64::NAN,
                }]);
            }
        }
    }
}

fn ns_identity_trial(
    config: &SweepConfig,
    trial: usize,
    dim: usize,
    stream: &mut SubStream,
) -> Result<Vec<SweepRow>> {
    let (rho, sigma) = random_pair(dim, stream)?;
    let mut rows = Vec::with_capacity(config.alphas.len());
    for &alpha in &config.alphas {
        let (classical, quantum) = ns_divergence_identity(&rho, &sigma, alpha)?;
        let lhs = classical.to_scalar();
        let rhs = quantum.to_scalar();
        rows.push(SweepRow {
            trial,
            dim,
            alpha,
            seed: config.seed,
            lhs,
            rhs,
            margin: identity_margin(lhs, rhs),
            inequality: "ns-identity",
            t: f64::NAN,
            s: f64::NAN,
            epsilon_kernel: f64::NAN,
        });
    }
    Ok(rows)
}

fn lemma1_trial(
    config: &SweepConfig,
    trial: usize,
    dim: usize,
    stream: &mut SubStream,
) -> Result<Vec<SweepRow>> {
    let mut rows = Vec::with_capacity(2 * config.alphas.len() + 1);

    // bound stage on a random pair of full-support distributions
    let p = random_distribution::<f64>(dim, stream)?;
    let q = random_distribution::<f64>(dim, stream)?;
    let delta = triangular_discrimination(&p, &q)?;
    let tv = total_variation(&p, &q)?;
    for &alpha in &config.alphas {
        let d = match symmetric_classical_renyi(&p, &q, alpha)? {
            ExtendedReal::Finite(v) => v,
            ExtendedReal::Infinite => f64::INFINITY,
        };
        let b = petz::bound_b(alpha, delta.sqrt())?;
        rows.push(SweepRow {
            trial,
            dim,
            alpha,
            seed: config.seed,
            lhs: d,
            rhs: b,
            margin: if d.is_infinite() { f64::INFINITY } else { d - b },
            inequality: "lemma1-bound",
            t: tv,
            s: delta.sqrt(),
            epsilon_kernel: f64::NAN,
        });
    }

    // proof identities on a random involution instance
    let p2 = random_distribution::<f64>(dim, stream)?;
    let m = random_involution(dim, stream);
    let sigma = entropy_variable(&p2, &m)?;
    for &alpha in &config.alphas {
        let (lhs, rhs) = exp_moment_identity(&sigma, alpha);
        rows.push(SweepRow {
            trial,
            dim,
            alpha,
            seed: config.seed,
            lhs,
            rhs,
            margin: identity_margin(lhs, rhs),
            inequality: "exp-moment",
            t: f64::NAN,
            s: f64::NAN,
            epsilon_kernel: f64::NAN,
        });
    }
    let reversed = p2.permute(&m)?;
    let lhs = triangular_discrimination(&p2, &reversed)?;
    let rhs: f64 = p2
        .weights()
        .iter()
        .zip(sigma.values())
        .map(|(&w, &v)| w * (v / 2.0).tanh().powi(2))
        .sum();
    rows.push(SweepRow {
        trial,
        dim,
        alpha: f64::NAN,
        seed: config.seed,
        lhs,
        rhs,
        margin: identity_margin(lhs, rhs),
        inequality: "tanh-squared",
        t: f64::NAN,
        s: f64::NAN,
        epsilon_kernel: f64::NAN,
    });
    Ok(rows)
}

fn lemma2_trial(
    config: &SweepConfig,
    trial: usize,
    dim: usize,
    stream: &mut SubStream,
) -> Result<Vec<SweepRow>> {
    let p = random_distribution::<f64>(dim, stream)?;
    let q = random_distribution::<f64>(dim, stream)?;
    let theta: Vec<petz::Complex<f64>> = (0..dim).map(|_| stream.complex_normal()).collect();
    let (lhs, rhs) = mean_shift_bound(&p, &q, &theta)?;
    Ok(vec![SweepRow {
        trial,
        dim,
        alpha: f64::NAN,
        seed: config.seed,
        lhs,
        rhs,
        margin: lhs - rhs,
        inequality: "lemma2-bound",
        t: f64::NAN,
        s: f64::NAN,
        epsilon_kernel: f64::NAN,
    }])
}

/// Builds the embedding dump for two matrix files and an optional observable.
pub fn dump_embedding(
    rho: &DensityMatrix<f64>,
    sigma: &DensityMatrix<f64>,
    theta: Option<&Observable<f64>>,
) -> Result<serde_json::Value> {
    let embedding = petz::ns_embed(rho, sigma, theta)?;
    let theta_parts = embedding.theta().map(|values| {
        let re: Vec<f64> = values.iter().map(|z| z.re).collect();
        let im: Vec<f64> = values.iter().map(|z| z.im).collect();
        (re, im)
    });
    Ok(serde_json::json!({
        "dim": embedding.dim(),
        "index_layout": "row-major (i, j): slot = i * dim + j",
        "eigenvector_order": "descending eigenvalue, deterministic phase",
        "p": embedding.p().weights(),
        "q": embedding.q().weights(),
        "theta_re": theta_parts.as_ref().map(|(re, _)| re.clone()),
        "theta_im": theta_parts.as_ref().map(|(_, im)| im.clone()),
    }))
}
