//! Momentum profiles: Parseval, reciprocity and ridge structure.

use abentropy::eigen::solve;
use abentropy::momentum::{build_profile, radial_amplitude};
use abentropy::quadrature::riemann_oracle;
use abentropy::{Eigenstate, QuantumNumbers, SystemParams};

fn state_with(n: u32, l: i32, beta: f64, r0: f64) -> Eigenstate {
    solve(&SystemParams::new(1.0, beta, r0, 1.0).unwrap(), &QuantumNumbers::new(n, l, 1.0).unwrap()).unwrap()
}

fn local_maxima(values: &[f64]) -> usize {
    values.windows(3).filter(|w| w[1] > w[0] && w[1] >= w[2]).count()
}

#[test]
fn parseval_on_fast_states() {
    for (n, l, beta) in [(0, 0, 0.8), (1, -1, 0.4), (2, -2, 0.2)] {
        let p = build_profile(&state_with(n, l, beta, 1.0), 512, 1e-7).unwrap();
        assert!((p.captured_norm() - 1.0).abs() <= 1e-6, "({n},{l},{beta}): {}", p.captured_norm());
        assert!(p.tail_norm_bound() <= 1e-7);
        assert!(p.truncated_norm() < 1.0);
    }
}

#[test]
fn reciprocity_under_radius_scaling() {
    let (s, scale) = (state_with(1, -1, 0.4, 1.0), 2.0);
    let big = state_with(1, -1, 0.4, scale);
    for &p in &[0.0, 0.13, 0.4, 0.77, 1.5, 3.2] {
        let direct = radial_amplitude(&big, p).unwrap();
        let mapped = scale * radial_amplitude(&s, scale * p).unwrap();
        assert!((direct - mapped).abs() <= 1e-8, "p = {p}: {direct} vs {mapped}");
    }
}

#[test]
fn amplitude_matches_midpoint_oracle() {
    let s = state_with(2, 1, 0.4, 1.0);
    let pi = std::f64::consts::PI;
    for &p in &[0.3, 1.1, 2.6] {
        let order = abentropy::Order::new(1.0).unwrap();
        let oracle = 2.0
            * pi
            * riemann_oracle(
                |r| s.radial(r) * abentropy::specfun::bessel_j(order, 2.0 * pi * p * r).unwrap() * r,
                0.0,
                1.0,
                200_000,
            )
            .unwrap();
        let got = radial_amplitude(&s, p).unwrap();
        assert!((got - oracle).abs() <= 1e-8, "p = {p}: {got} vs {oracle}");
    }
}

#[test]
fn second_radial_excitation_has_ridges() {
    let p = build_profile(&state_with(2, -2, 0.2, 1.0), 512, 1e-7).unwrap();
    let densities: Vec<f64> = p.samples().iter().map(|s| s.density).collect();
    assert!(local_maxima(&densities) >= 3, "{} maxima", local_maxima(&densities));
    assert!(densities.iter().all(|&d| d >= 0.0));
}

#[test]
fn profile_is_deterministic() {
    let s = state_with(1, 1, 0.4, 1.0);
    let a = build_profile(&s, 128, 1e-7).unwrap();
    let b = build_profile(&s, 128, 1e-7).unwrap();
    assert_eq!(a.p_max(), b.p_max());
    assert_eq!(a.samples(), b.samples());
}

#[test]
fn profile_rejects_points_beyond_cutoff() {
    let p = build_profile(&state_with(0, 0, 0.8, 1.0), 128, 1e-7).unwrap();
    assert!(p.amplitude(p.p_max() * 1.01).is_err());
    assert!(p.density(0.5 * p.p_max()).unwrap() >= 0.0);
}
