//! Acceptance suite: one test per release criterion, each printing a
//! PASS line with the measured numbers (visible with `--nocapture`).
//!
//! Run with `cargo test -p bellsim --test acceptance`.

use std::f64::consts::{FRAC_PI_6, PI, SQRT_2};
use std::time::Instant;

use bellsim::correlator::{
    chsh_curve, chsh_f, delta_f_curve, single_photon_transfer, state_overlap, state_overlap_hv,
    Particle, PolarizationLabel,
};
use bellsim::kinematics::{rapidity_from_velocity, SPEED_OF_LIGHT_M_PER_S};
use bellsim::oracle::{chsh_sum, mc_transfer, simulate_bell_run, SplitMix64};
use bellsim::quadrature::QuadratureSpec;

fn theta_grid(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| i as f64 * (PI / 2.0) / (n - 1) as f64)
        .collect()
}

fn ideal_f(theta: f64) -> f64 {
    (1.0 + 2.0 * (2.0 * theta).cos() - (4.0 * theta).cos()).abs()
}

fn f_at_pi_6(alpha: f64, width: f64, spec: &QuadratureSpec) -> f64 {
    chsh_f(FRAC_PI_6, alpha, width, spec).unwrap().f_value
}

#[test]
fn criterion_01_ideal_limit_maximum() {
    let start = Instant::now();
    let grid = theta_grid(181);
    let curve = chsh_curve(&grid, 0.0, 0.0, &QuadratureSpec::default()).unwrap();
    let best = curve
        .points
        .iter()
        .max_by(|a, b| a.f_value.total_cmp(&b.f_value))
        .unwrap();
    let err = (best.f_value - 2.5).abs();
    assert!(err < 1e-9, "max F = {} (error {err:e})", best.f_value);
    assert!(
        (best.theta - FRAC_PI_6).abs() < 1e-12,
        "maximum sits at theta = {}, expected pi/6",
        best.theta
    );
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}, budget 1 s");
    println!(
        "[criterion 01] PASS ideal-limit maximum: F = {:.12} at theta = pi/6 (error {err:.2e}, {elapsed:?})",
        best.f_value
    );
}

#[test]
fn criterion_02_closed_form_curve() {
    let grid = theta_grid(181);
    let curve = chsh_curve(&grid, 0.0, 0.0, &QuadratureSpec::default()).unwrap();
    let worst = curve
        .points
        .iter()
        .map(|p| (p.f_value - ideal_f(p.theta)).abs())
        .fold(0.0_f64, f64::max);
    assert!(worst < 1e-10, "worst closed-form deviation {worst:e}");
    println!("[criterion 02] PASS closed-form curve: sup |F - ideal| = {worst:.2e}");
}

#[test]
fn criterion_03_boost_immunity_at_zero_width() {
    let grid = theta_grid(181);
    let spec = QuadratureSpec::default();
    let reference = chsh_curve(&grid, 0.0, 0.0, &spec).unwrap();
    let mut worst = 0.0_f64;
    for alpha in [-3.0, -1.0, 1.0, 3.0] {
        let curve = chsh_curve(&grid, alpha, 0.0, &spec).unwrap();
        for (a, b) in curve.points.iter().zip(reference.points.iter()) {
            worst = worst.max((a.f_value - b.f_value).abs());
        }
    }
    assert!(worst < 1e-9, "sup deviation across boosts = {worst:e}");
    println!("[criterion 03] PASS boost immunity at W = 0: sup deviation = {worst:.2e}");
}

#[test]
fn criterion_04_width_ordering_at_saturated_boost() {
    let start = Instant::now();
    let spec = QuadratureSpec::default();
    let grid = theta_grid(181);

    // Saturation: alpha = 15 is "alpha -> infinity" to well below 1e-6.
    let widths = [0.0, 0.3, 0.6, 1.0];
    let mut f_at_15 = Vec::new();
    for &w in &widths {
        let c15 = chsh_curve(&grid, 15.0, w, &spec).unwrap();
        let c20 = chsh_curve(&grid, 20.0, w, &spec).unwrap();
        let sat = c15
            .points
            .iter()
            .zip(c20.points.iter())
            .map(|(a, b)| (a.f_value - b.f_value).abs())
            .fold(0.0_f64, f64::max);
        assert!(sat < 1e-6, "saturation residual {sat:e} at W = {w}");
        f_at_15.push(c15.points[60].f_value);
    }
    for (pair, ws) in f_at_15.windows(2).zip(widths.windows(2)) {
        let gap = pair[0] - pair[1];
        assert!(
            gap > 1e-3,
            "F(pi/6) gap {gap:e} between W = {} and W = {}",
            ws[0],
            ws[1]
        );
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 30.0,
        "took {elapsed:?}, budget 30 s"
    );
    println!(
        "[criterion 04] PASS width ordering at alpha = 15: F(pi/6) = {f_at_15:.6?} over W = {widths:?} ({elapsed:?})"
    );
}

#[test]
fn criterion_05_boost_ordering_at_fixed_width() {
    let spec = QuadratureSpec::default();
    let alphas = [2.0, 1.0, 0.0, -1.0, -2.0, -4.0];
    let values: Vec<f64> = alphas.iter().map(|&a| f_at_pi_6(a, 0.6, &spec)).collect();
    for pair in values.windows(2) {
        assert!(pair[0] >= pair[1], "F(pi/6) not non-increasing: {values:?}");
    }
    let drop = values.first().unwrap() - values.last().unwrap();
    assert!(drop > 1e-2, "total drop {drop:e} too small");
    println!(
        "[criterion 05] PASS boost ordering at W = 0.6: F(pi/6) = {values:.6?}, total drop {drop:.3}"
    );
}

#[test]
fn criterion_06_difference_curve_stability() {
    let alpha = 2.6e-5;
    let width = 1e-3;
    let grid = theta_grid(19);
    let base = delta_f_curve(&grid, alpha, width, &QuadratureSpec::default()).unwrap();
    let doubled_spec = QuadratureSpec {
        n_radial: 128,
        n_azimuthal: 128,
        ..QuadratureSpec::default()
    };
    let doubled = delta_f_curve(&grid, alpha, width, &doubled_spec).unwrap();

    // "Two significant digits" against the curve scale, which also covers
    // the points where the difference passes through zero.
    let scale = base.delta_f.iter().fold(0.0_f64, |acc, d| acc.max(d.abs()));
    assert!(scale > 0.0, "difference curve vanished entirely");
    let worst = base
        .delta_f
        .iter()
        .zip(doubled.delta_f.iter())
        .map(|(a, b)| (a - b).abs())
        .fold(0.0_f64, f64::max);
    assert!(
        worst <= 5e-3 * scale,
        "node doubling moved delta F by {worst:e} against scale {scale:e}"
    );

    let at_rest = delta_f_curve(&grid, 0.0, width, &QuadratureSpec::default()).unwrap();
    assert!(at_rest.delta_f.iter().all(|&d| d == 0.0));

    let iss = rapidity_from_velocity(7.7e3 / SPEED_OF_LIGHT_M_PER_S).unwrap();
    assert_eq!(
        (iss.abs() * 1e6).round(),
        26.0,
        "ISS rapidity magnitude {iss:e} != 2.6e-5 at two significant digits"
    );
    println!(
        "[criterion 06] PASS difference-curve stability: max |delta F| = {scale:.3e}, doubling shift {worst:.2e}, |alpha_ISS| = {:.4e}",
        iss.abs()
    );
}

#[test]
fn criterion_07_oracle_equivalence() {
    let start = Instant::now();
    let spec = QuadratureSpec::default();
    let n_samples = 10_000_000;
    let cases = [
        (Particle::A, 0.6, 0.0, 101),
        (Particle::A, 0.6, -2.0, 102),
        (Particle::A, 0.1, 3.0, 103),
        (Particle::B, 0.6, 0.0, 104),
    ];
    for (particle, width, alpha, seed) in cases {
        let quad = single_photon_transfer(particle, alpha, width, &spec).unwrap();
        let mc = mc_transfer(particle, alpha, width, n_samples, seed);
        let quad_blocks = quad.blocks();
        let mut worst_pull = 0.0_f64;
        for (label, p, q, est) in mc.entries() {
            let (_, g) = quad_blocks.iter().find(|(l, _)| *l == label).unwrap();
            let delta = (est.mean - g.0[p][q]).norm();
            let bound = 3.0 * est.std_error + 1e-12;
            assert!(
                delta <= bound,
                "{particle:?} (W={width}, alpha={alpha}) G_{label}[{p}{q}]: |delta| = {delta:e} > {bound:e}"
            );
            if est.std_error > 0.0 {
                worst_pull = worst_pull.max(delta / est.std_error);
            }
        }
        println!(
            "[criterion 07] {particle:?} (W={width}, alpha={alpha}): worst pull {worst_pull:.2} sigma"
        );
    }
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 120.0,
        "took {elapsed:?}, budget 2 min"
    );
    println!("[criterion 07] PASS oracle equivalence at 1e7 samples ({elapsed:?})");
}

#[test]
fn criterion_08_tsirelson_bound() {
    let spec = QuadratureSpec {
        target_tol: 1e-8,
        ..QuadratureSpec::default()
    };
    let bound = 2.0 * SQRT_2 + 1e-9;
    let mut rng = SplitMix64::new(0xC1A0);
    let mut max_f = 0.0_f64;
    for _ in 0..100 {
        let theta = rng.next_f64() * PI / 2.0;
        let alpha = -4.0 + 8.0 * rng.next_f64();
        let width = 1.5 * rng.next_f64();
        let point = chsh_f(theta, alpha, width, &spec).unwrap();
        assert!(
            point.f_value <= bound,
            "F = {} at (theta={theta}, alpha={alpha}, W={width})",
            point.f_value
        );
        max_f = max_f.max(point.f_value);
    }
    println!("[criterion 08] PASS Tsirelson bound: max F over 100 random points = {max_f:.6} <= {bound:.6}");
}

#[test]
fn criterion_09_finite_n_convergence() {
    for (n, seed) in [(10_000_u64, 11), (1_000_000, 12)] {
        let runs = simulate_bell_run(FRAC_PI_6, n, seed);
        let sum = chsh_sum(&runs);
        let tol = 5.0 / (n as f64).sqrt();
        assert!(
            (sum - 2.5).abs() < tol,
            "N = {n}: CHSH sum {sum} misses 2.5 by more than {tol:e}"
        );
        println!(
            "[criterion 09] N = {n}: CHSH sum = {sum:.6} (|delta| = {:.2e} < {tol:.2e})",
            (sum - 2.5).abs()
        );
    }
    println!("[criterion 09] PASS finite-N convergence");
}

#[test]
fn criterion_10_state_consistency() {
    let spec = QuadratureSpec::default();
    let (alpha, width) = (-2.0, 0.6);
    let hh = state_overlap(
        Particle::A,
        alpha,
        width,
        &spec,
        PolarizationLabel::H,
        PolarizationLabel::H,
    )
    .unwrap();
    let vv = state_overlap(
        Particle::A,
        alpha,
        width,
        &spec,
        PolarizationLabel::V,
        PolarizationLabel::V,
    )
    .unwrap();
    let hv = state_overlap_hv(Particle::A, alpha, width, &spec).unwrap();
    assert!(
        (hh.re - 1.0).abs() < 1e-12 && hh.im.abs() < 1e-14,
        "<H'|H'> = {hh}"
    );
    assert!(
        (vv.re - 1.0).abs() < 1e-12 && vv.im.abs() < 1e-14,
        "<V'|V'> = {vv}"
    );
    assert!(hv.norm() < 1e-12, "<H'|V'> = {hv}");
    println!(
        "[criterion 10] PASS state consistency at (W, alpha) = ({width}, {alpha}): <H'|H'> - 1 = {:.1e}, |<H'|V'>| = {:.1e}",
        hh.re - 1.0,
        hv.norm()
    );
}
