//! Cross-module invariants checked on seeded random instances: metric
//! properties of the trace distance, the fidelity identities, the classical
//! bound chain, the embedding chain, and the sign-operator identities.

use petz::bounds::{arctanh_clamped, bound_b};
use petz::{
    check_classical_tur, check_inverted_uncertainty, check_uncertainty_relation, classical_kl,
    entropy_variable, exp_moment_identity, holevo_fidelity, ns_divergence_identity, ns_embed,
    omega_operator, pair_construction, random_density, random_distribution, random_involution,
    random_observable, s_statistic, saturating_pair, symmetric_classical_renyi,
    symmetric_petz_renyi, total_variation, trace_distance, triangular_discrimination,
    ComplexMatrix, DensityMatrix, Distribution, ExtendedReal, Observable, RngStream,
    DEFAULT_ALPHA_GRID,
};

#[test]
fn trace_distance_is_a_metric_on_random_triples() {
    let mut stream = RngStream::new(101).substream(0);
    for _ in 0..40 {
        let a = random_density::<f64>(4, 4, &mut stream).unwrap();
        let b = random_density::<f64>(4, 4, &mut stream).unwrap();
        let c = random_density::<f64>(4, 4, &mut stream).unwrap();
        let ab = trace_distance(&a, &b).unwrap();
        let ba = trace_distance(&b, &a).unwrap();
        let bc = trace_distance(&b, &c).unwrap();
        let ac = trace_distance(&a, &c).unwrap();
        assert!((ab - ba).abs() <= 1e-10);
        assert!(ac <= ab + bc + 1e-10);
        assert!((0.0..=1.0).contains(&ab));
    }
}

#[test]
fn eigenvalues_sum_to_one_after_validation() {
    let mut stream = RngStream::new(103).substream(0);
    for dim in 2..=6 {
        for rank in 1..=dim {
            let rho = random_density::<f64>(dim, rank, &mut stream).unwrap();
            let sum: f64 = rho.eigenvalues().iter().sum();
            assert!((sum - 1.0).abs() <= 1e-12);
        }
    }
}

#[test]
fn holevo_inequality_on_random_pairs() {
    let mut stream = RngStream::new(107).substream(0);
    for trial in 0..60 {
        let dim = 2 + trial % 5;
        let rho = random_density::<f64>(dim, 1 + trial % dim, &mut stream).unwrap();
        let sigma = random_density::<f64>(dim, dim, &mut stream).unwrap();
        let t = trace_distance(&rho, &sigma).unwrap();
        let f = holevo_fidelity(&rho, &sigma).unwrap();
        assert!(t <= (1.0 - f).sqrt() + 1e-9, "T={t}, F={f}");
    }
}

#[test]
fn fidelity_is_the_half_order_divergence() {
    let mut stream = RngStream::new(109).substream(0);
    for _ in 0..40 {
        let rho = random_density::<f64>(4, 4, &mut stream).unwrap();
        let sigma = random_density::<f64>(4, 4, &mut stream).unwrap();
        let d = symmetric_petz_renyi(&rho, &sigma, 0.5).unwrap().finite().unwrap();
        let f = holevo_fidelity(&rho, &sigma).unwrap();
        assert!((d + f.ln()).abs() <= 1e-9);
    }
}

#[test]
fn divergences_are_nonnegative_up_to_roundoff() {
    let mut stream = RngStream::new(113).substream(0);
    for trial in 0..30 {
        let dim = 2 + trial % 4;
        let rho = random_density::<f64>(dim, 1 + trial % dim, &mut stream).unwrap();
        let sigma = random_density::<f64>(dim, 1 + (trial / 2) % dim, &mut stream).unwrap();
        for &alpha in DEFAULT_ALPHA_GRID {
            if let ExtendedReal::Finite(d) = symmetric_petz_renyi(&rho, &sigma, alpha).unwrap() {
                assert!(d >= -1e-9, "alpha={alpha}: {d}");
            }
        }
    }
}

#[test]
fn symmetric_divergence_is_continuous_at_alpha_one() {
    let mut stream = RngStream::new(127).substream(0);
    for _ in 0..20 {
        let rho = random_density::<f64>(3, 3, &mut stream).unwrap();
        let sigma = random_density::<f64>(3, 3, &mut stream).unwrap();
        let at_one = symmetric_petz_renyi(&rho, &sigma, 1.0).unwrap().finite().unwrap();
        for alpha in [1.0 - 1e-5, 1.0 + 1e-5] {
            let near = symmetric_petz_renyi(&rho, &sigma, alpha).unwrap().finite().unwrap();
            assert!((near - at_one).abs() <= 1e-3);
        }
    }
}

#[test]
fn tanh_squared_identity_for_the_entropy_variable() {
    let mut stream = RngStream::new(131).substream(0);
    for n in [2usize, 4, 6, 8] {
        for _ in 0..20 {
            let p = random_distribution::<f64>(n, &mut stream).unwrap();
            let m = random_involution(n, &mut stream);
            let sigma = entropy_variable(&p, &m).unwrap();
            let mean_tanh_sq: f64 = p
                .weights()
                .iter()
                .zip(sigma.values())
                .map(|(&w, &v)| w * (v / 2.0).tanh().powi(2))
                .sum();
            let reversed = p.permute(&m).unwrap();
            let delta = triangular_discrimination(&p, &reversed).unwrap();
            assert!((delta - mean_tanh_sq).abs() <= 1e-12);
        }
    }
}

#[test]
fn classical_bound_chain_on_random_pairs() {
    let mut stream = RngStream::new(137).substream(0);
    for _ in 0..50 {
        let p = random_distribution::<f64>(6, &mut stream).unwrap();
        let q = random_distribution::<f64>(6, &mut stream).unwrap();
        let delta = triangular_discrimination(&p, &q).unwrap();
        for &alpha in DEFAULT_ALPHA_GRID {
            let d = symmetric_classical_renyi(&p, &q, alpha).unwrap().finite().unwrap();
            let b = bound_b(alpha, delta.sqrt()).unwrap();
            assert!(d >= b - 1e-9, "alpha={alpha}: D={d}, B={b}");
        }
    }
}

#[test]
fn total_variation_bound_on_the_symmetric_relative_entropy() {
    let mut stream = RngStream::new(139).substream(0);
    for _ in 0..50 {
        let p = random_distribution::<f64>(5, &mut stream).unwrap();
        let q = random_distribution::<f64>(5, &mut stream).unwrap();
        let kl_fwd = classical_kl(&p, &q).unwrap().finite().unwrap();
        let kl_bwd = classical_kl(&q, &p).unwrap().finite().unwrap();
        let d1 = 0.5 * (kl_fwd + kl_bwd);
        let tv = total_variation(&p, &q).unwrap();
        assert!(d1 >= 2.0 * tv * arctanh_clamped(tv) - 1e-9);
    }
}

#[test]
fn jensen_direction_flips_around_alpha_one() {
    let mut stream = RngStream::new(149).substream(0);
    for _ in 0..30 {
        let p = random_distribution::<f64>(6, &mut stream).unwrap();
        let m = random_involution(6, &mut stream);
        let sigma = entropy_variable(&p, &m).unwrap();
        let reversed = p.permute(&m).unwrap();
        let delta = triangular_discrimination(&p, &reversed).unwrap();
        for &alpha in DEFAULT_ALPHA_GRID {
            if alpha == 1.0 {
                continue;
            }
            // <F(Sigma)> vs F at the averaged argument, where
            // F(2 arctanh sqrt(y)) = exp((alpha - 1) B(alpha, sqrt(y)))
            let (_, mean_f) = exp_moment_identity(&sigma, alpha);
            let at_mean = ((alpha - 1.0) * bound_b(alpha, delta.sqrt()).unwrap()).exp();
            if alpha > 1.0 {
                assert!(mean_f >= at_mean - 1e-10, "alpha={alpha}");
            } else {
                assert!(mean_f <= at_mean + 1e-10, "alpha={alpha}");
            }
        }
    }
}

#[test]
fn embedding_chain_links_hold_independently() {
    let mut stream = RngStream::new(151).substream(0);
    for trial in 0..25 {
        let dim = 2 + trial % 4;
        let rho = random_density::<f64>(dim, dim, &mut stream).unwrap();
        let sigma = random_density::<f64>(dim, dim, &mut stream).unwrap();
        let theta = random_observable::<f64>(dim, &mut stream).unwrap();

        let embedding = ns_embed(&rho, &sigma, Some(&theta)).unwrap();
        let delta = triangular_discrimination(embedding.p(), embedding.q()).unwrap();
        let s = s_statistic(&rho, &sigma, &theta).unwrap();
        assert!(delta.sqrt() >= s - 1e-10, "sqrt(delta)={} s={s}", delta.sqrt());

        for &alpha in DEFAULT_ALPHA_GRID {
            let dq = symmetric_petz_renyi(&rho, &sigma, alpha).unwrap().finite().unwrap();
            let dc = symmetric_classical_renyi(embedding.p(), embedding.q(), alpha)
                .unwrap()
                .finite()
                .unwrap();
            assert!((dq - dc).abs() <= 1e-9, "alpha={alpha}");
            let b_delta = bound_b(alpha, delta.sqrt()).unwrap();
            let b_s = bound_b(alpha, s).unwrap();
            assert!(dc >= b_delta - 1e-9, "alpha={alpha}");
            assert!(b_delta >= b_s - 1e-9, "alpha={alpha}");
        }
    }
}

#[test]
fn sign_operator_identities() {
    let mut stream = RngStream::new(157).substream(0);
    for trial in 0..30 {
        let dim = 2 + trial % 5;
        let rank = 1 + trial % dim;
        let rho = random_density::<f64>(dim, dim, &mut stream).unwrap();
        let sigma = random_density::<f64>(dim, rank, &mut stream).unwrap();
        let result = omega_operator(&rho, &sigma).unwrap();
        let omega_sq = result.omega.squared();
        let mean_sq_rho = rho.expectation(&omega_sq).unwrap();
        let mean_sq_sigma = sigma.expectation(&omega_sq).unwrap();
        assert!((mean_sq_rho - (1.0 - result.epsilon)).abs() <= 1e-10);
        assert!((mean_sq_sigma - (1.0 - result.epsilon)).abs() <= 1e-10);

        let t = trace_distance(&rho, &sigma).unwrap();
        let mean_rho = rho.expectation(&result.omega).unwrap();
        let mean_sigma = sigma.expectation(&result.omega).unwrap();
        let one_norm = 2.0 * t;
        assert!(0.5 * one_norm * one_norm <= mean_rho * mean_rho + mean_sigma * mean_sigma + 1e-10);
    }
}

#[test]
fn saturating_family_saturates_every_relation() {
    for k in 0..=13 {
        let eps = 0.1 + 0.3 * k as f64; // 0.1 ..= 4.0
        let (rho, sigma, theta) = saturating_pair::<f64>(eps, 1.0).unwrap();
        for &alpha in DEFAULT_ALPHA_GRID {
            let theorem = check_uncertainty_relation(&rho, &sigma, &theta, alpha).unwrap();
            assert!(
                theorem.margin.finite().unwrap().abs() <= 1e-8,
                "eps={eps}, alpha={alpha}"
            );
            let inverted = check_inverted_uncertainty(&rho, &sigma, &theta, alpha).unwrap();
            assert!(
                inverted.margin.finite().unwrap().abs() <= 1e-8,
                "eps={eps}, alpha={alpha}"
            );

            let a = 1.0 / (1.0 + (-eps).exp());
            let p = Distribution::new(vec![a, 1.0 - a]).unwrap();
            let q = Distribution::new(vec![1.0 - a, a]).unwrap();
            let classical = check_classical_tur(&p, &q, &[1.0, -1.0], alpha).unwrap();
            assert!(
                classical.margin.finite().unwrap().abs() <= 1e-8,
                "eps={eps}, alpha={alpha}"
            );
        }
    }
}

#[test]
fn commuting_states_reduce_to_the_classical_relation() {
    let mut stream = RngStream::new(163).substream(0);
    for _ in 0..15 {
        let p = random_distribution::<f64>(4, &mut stream).unwrap();
        let q = random_distribution::<f64>(4, &mut stream).unwrap();
        let values: Vec<f64> = (0..4).map(|_| stream.standard_normal()).collect();

        let rho = DensityMatrix::new(ComplexMatrix::from_diag(p.weights())).unwrap();
        let sigma = DensityMatrix::new(ComplexMatrix::from_diag(q.weights())).unwrap();
        let theta = Observable::from_diag(&values);

        for &alpha in DEFAULT_ALPHA_GRID {
            let quantum = check_inverted_uncertainty(&rho, &sigma, &theta, alpha);
            let classical = check_classical_tur(&p, &q, &values, alpha);
            match (quantum, classical) {
                (Ok(qm), Ok(cm)) => {
                    let qv = qm.margin.finite().unwrap();
                    let cv = cm.margin.finite().unwrap();
                    assert!((qv - cv).abs() <= 1e-10, "alpha={alpha}: {qv} vs {cv}");
                }
                (Err(petz::Error::EqualMeans), Err(petz::Error::EqualMeans)) => {}
                (q, c) => panic!("mismatched outcomes: {q:?} vs {c:?}"),
            }
        }
    }
}

#[test]
fn divergence_identity_detects_matched_infinities() {
    let mut stream = RngStream::new(167).substream(0);
    for trial in 0..10 {
        let dim = 3 + trial % 3;
        let rho = random_density::<f64>(dim, dim, &mut stream).unwrap();
        let sigma = random_density::<f64>(dim, dim - 1, &mut stream).unwrap();
        for &alpha in &[1.5, 2.0, 3.0] {
            let (c, q) = ns_divergence_identity(&rho, &sigma, *&alpha).unwrap();
            assert_eq!(c.is_infinite(), q.is_infinite());
            assert!(c.is_infinite());
        }
    }
}

#[test]
fn f32_instantiation_stays_coherent() {
    let (rho, sigma, theta) = saturating_pair::<f32>(2.0, 1.0).unwrap();
    let d = symmetric_petz_renyi(&rho, &sigma, 2.0f32).unwrap().finite().unwrap();
    let s = s_statistic(&rho, &sigma, &theta).unwrap();
    let b = bound_b(2.0f32, s).unwrap();
    assert!((d - 1.8755477f32).abs() <= 1e-3);
    assert!((d - b).abs() <= 1e-3);
}
