//! Identities of the branching-process theory on random degree laws.

use netvax_core::degrees::{poisson, DegreeDistribution, Provenance};
use netvax_core::theory::{
    acquaintance_alpha, acquaintance_offspring, acquaintance_r, acquaintance_theory, base_offspring, e1_theory,
    e2_theory, edgewise_offspring, edgewise_r, extinction_base, r0, uniform_theory,
};
use proptest::prelude::*;

fn dist_strategy() -> impl Strategy<Value = DegreeDistribution> {
    prop::collection::vec(0.0f64..1.0, 2..25).prop_filter_map("needs positive mean", |mut w| {
        w[1] += 0.05;
        DegreeDistribution::from_weights(w, Provenance::Explicit).ok()
    })
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn e1_is_alpha_times_e2(d in dist_strategy(), p in 0.0f64..=1.0, alpha in 0.001f64..=1.0) {
        let r1 = edgewise_r(&d, p, alpha, false).unwrap();
        let r2 = edgewise_r(&d, p, alpha, true).unwrap();
        prop_assert!(close(r1, alpha * r2, 1e-10));
        prop_assert!(close(e1_theory(&d, p, alpha).unwrap().r, r1, 1e-12));
    }

    #[test]
    fn uniform_scales_r0(d in dist_strategy(), p in 0.0f64..=1.0, v in 0.0f64..0.999) {
        let r = uniform_theory(&d, p, v).unwrap().r;
        prop_assert!(close(r, (1.0 - v) * r0(&d, p).unwrap(), 1e-10));
    }

    #[test]
    fn offspring_laws_are_proper(d in dist_strategy(), p in 0.0f64..=1.0, c in 0.0f64..20.0, alpha in 0.001f64..=1.0) {
        let base = base_offspring(&d, p);
        prop_assert!(close(base.total_mass(), 1.0, 1e-10));
        prop_assert!(close(base.mean(), r0(&d, p).unwrap(), 1e-10));

        let a = acquaintance_alpha(&d, c).unwrap();
        let acq = acquaintance_offspring(&d, p, c, a);
        prop_assert!(close(acq.total_mass(), 1.0, 1e-10));
        prop_assert!(close(acq.mean(), acquaintance_r(&d, p, c).unwrap(), 1e-10));

        for both in [false, true] {
            let law = edgewise_offspring(&d, p, alpha, both);
            prop_assert!(close(law.total_mass(), 1.0, 1e-10));
            prop_assert!(close(law.mean(), edgewise_r(&d, p, alpha, both).unwrap(), 1e-10));
        }
    }

    #[test]
    fn vanishing_strategies_reduce_to_base(d in dist_strategy(), p in 0.0f64..=1.0) {
        let base = extinction_base(&d, p).unwrap();
        for t in [
            uniform_theory(&d, p, 0.0).unwrap(),
            acquaintance_theory(&d, p, 0.0).unwrap(),
            e1_theory(&d, p, 1.0).unwrap(),
            e2_theory(&d, p, 1.0).unwrap(),
        ] {
            prop_assert!((t.r - base.r).abs() < 1e-8);
            prop_assert!((t.pi_tilde - base.pi_tilde).abs() < 1e-8);
            prop_assert!((t.pi - base.pi).abs() < 1e-8);
            prop_assert!(t.v.abs() < 1e-8);
        }
    }

    #[test]
    fn extinction_is_smallest_fixed_point(d in dist_strategy(), p in 0.0f64..=1.0) {
        let res = extinction_base(&d, p).unwrap();
        prop_assume!(!res.degenerate);
        prop_assert!(res.residual < 1e-10);
        let law = base_offspring(&d, p);
        prop_assert!((law.pgf(res.pi_tilde) - res.pi_tilde).abs() < 1e-9);
        // Below the root the pgf lies strictly above the diagonal.
        for i in 0..50 {
            let t = res.pi_tilde * i as f64 / 50.0;
            prop_assert!(law.pgf(t) > t - 1e-12);
        }
        prop_assert!((0.0..=1.0).contains(&res.tau));
    }

    #[test]
    fn pgf_is_increasing_and_convex(d in dist_strategy()) {
        let vals: Vec<f64> = (0..=40).map(|i| d.pgf(i as f64 / 40.0).unwrap()).collect();
        prop_assert!(vals.windows(2).all(|w| w[1] >= w[0] - 1e-15));
        prop_assert!(vals.windows(3).all(|w| w[2] - 2.0 * w[1] + w[0] >= -1e-12));
        prop_assert!((vals[40] - 1.0).abs() < 1e-12);
        let sb = d.size_biased().unwrap();
        prop_assert!((sb.probabilities().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        prop_assert!((d.pgf_prime(1.0).unwrap() - d.mean()).abs() < 1e-10);
    }

    #[test]
    fn tau_decreases_with_effort(d in dist_strategy(), p in 0.3f64..=1.0, x in 0.0f64..1.0, y in 0.0f64..1.0) {
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        let t = |s: f64| uniform_theory(&d, p, s * 0.99).unwrap().tau;
        prop_assert!(t(hi) <= t(lo) + 1e-9);
        let a = |s: f64| acquaintance_theory(&d, p, 10.0 * s).unwrap().tau;
        prop_assert!(a(hi) <= a(lo) + 1e-9);
        let e = |s: f64| e2_theory(&d, p, 1.0 - 0.999 * s).unwrap().tau;
        prop_assert!(e(hi) <= e(lo) + 1e-9);
    }
}

#[test]
fn poisson_is_shift_invariant_under_size_biasing() {
    // For Poisson, D~ - 1 is again Poisson with the same mean.
    let d = poisson(4.0, 1e-14).unwrap();
    let sb = d.size_biased().unwrap();
    for k in 0..20 {
        assert!((sb.prob(k + 1) - d.prob(k)).abs() < 1e-12);
    }
}
