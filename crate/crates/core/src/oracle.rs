//! Independent Monte-Carlo evaluation of the transfer-matrix integrals and
//! a finite-N Bell-experiment simulator.
//!
//! The sampler shares only the polarization and kinematics primitives with
//! the quadrature path: the transverse Gaussian is sampled exactly through
//! the inverse radial CDF (`r = W·√(−ln u)`), the azimuth uniformly, and
//! the integrand expressions are written out here rather than reused, so
//! the two routes disagree only through their integration methods.
//!
//! All randomness comes from SplitMix64 (Steele, Lea & Flood 2014), a
//! 64-bit counter-hash generator: trivially seedable, splittable by
//! draw order, and bit-exact across platforms.

use num_complex::Complex64;

use crate::kinematics::ZBoost;
use crate::polarization::{hv_coefficients, projector_matrices};
use crate::wavepacket::SupportPoint;
use crate::{correlator::Particle, wavepacket::GaussianPacket};

/// SplitMix64 pseudo-random generator.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Uniform on [0, 1) with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform on (0, 1]; safe under a logarithm.
    pub fn next_open01(&mut self) -> f64 {
        1.0 - self.next_f64()
    }
}

/// Mean, standard error and sample count of one Monte-Carlo estimate. For
/// complex estimands the standard error combines both components,
/// `√((var_re + var_im)/n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: Complex64,
    pub std_error: f64,
    pub n_samples: u64,
}

/// Accumulates a complex mean and componentwise variances.
#[derive(Debug, Clone, Copy)]
struct Accumulator {
    sum: Complex64,
    sum_sq: (f64, f64),
}

impl Accumulator {
    fn new() -> Self {
        Self {
            sum: Complex64::ZERO,
            sum_sq: (0.0, 0.0),
        }
    }

    fn push(&mut self, v: Complex64) {
        self.sum += v;
        self.sum_sq.0 += v.re * v.re;
        self.sum_sq.1 += v.im * v.im;
    }

    fn finish(&self, n: u64) -> McEstimate {
        let nf = n as f64;
        let mean = self.sum / nf;
        let var_re = (self.sum_sq.0 / nf - mean.re * mean.re).max(0.0);
        let var_im = (self.sum_sq.1 / nf - mean.im * mean.im).max(0.0);
        McEstimate {
            mean,
            std_error: ((var_re + var_im) / nf).sqrt(),
            n_samples: n,
        }
    }
}

/// Monte-Carlo expectation of `f(r, φ)` under the transverse Gaussian
/// density (the same measure the polar quadrature integrates against).
pub fn mc_expectation<F>(f: F, width: f64, n_samples: u64, seed: u64) -> McEstimate
where
    F: Fn(f64, f64) -> Complex64,
{
    assert!(width > 0.0, "sampling needs a positive width");
    assert!(n_samples >= 1);
    let mut rng = SplitMix64::new(seed);
    let mut acc = Accumulator::new();
    for _ in 0..n_samples {
        let r = width * (-rng.next_open01().ln()).sqrt();
        let phi = 2.0 * std::f64::consts::PI * rng.next_f64();
        acc.push(f(r, phi));
    }
    acc.finish(n_samples)
}

/// Monte-Carlo estimates of the sixteen transfer-matrix entries, addressed
/// as `blocks[block][p][q]` with blocks ordered (xx, xy, yx, yy).
#[derive(Debug, Clone)]
pub struct McTransferMatrices {
    pub blocks: [[[McEstimate; 2]; 2]; 4],
    pub particle: Particle,
    pub alpha: f64,
    pub width: f64,
    pub seed: u64,
}

impl McTransferMatrices {
    pub const BLOCK_LABELS: [&'static str; 4] = ["xx", "xy", "yx", "yy"];

    /// All entries with their (block label, bra, ket) addressing.
    pub fn entries(&self) -> impl Iterator<Item = (&'static str, usize, usize, &McEstimate)> {
        self.blocks.iter().enumerate().flat_map(|(b, block)| {
            block.iter().enumerate().flat_map(move |(p, row)| {
                row.iter()
                    .enumerate()
                    .map(move |(q, est)| (Self::BLOCK_LABELS[b], p, q, est))
            })
        })
    }
}

/// Monte-Carlo route to the same `G_ab[P,Q]` integrals as the quadrature
/// reduction; every estimate comes from one shared sample stream so the
/// entries stay correlated exactly as the integrand dictates.
pub fn mc_transfer(
    particle: Particle,
    alpha: f64,
    width: f64,
    n_samples: u64,
    seed: u64,
) -> McTransferMatrices {
    assert!(
        particle == Particle::A || alpha == 0.0,
        "the detector of photon B is at rest; got alpha = {alpha}"
    );
    assert!(n_samples >= 10_000, "need at least 1e4 samples");
    let packet =
        GaussianPacket::new(width, particle.packet_direction()).expect("positive width required");
    let boost = ZBoost::new(alpha);
    let mut rng = SplitMix64::new(seed);
    let mut accs = [[[Accumulator::new(); 2]; 2]; 4];

    for _ in 0..n_samples {
        let r = width * (-rng.next_open01().ln()).sqrt();
        let phi = 2.0 * std::f64::consts::PI * rng.next_f64();

        // The integrand, written out independently of the correlator:
        // state coefficients at the rest-frame momentum, projector
        // geometry at the boosted momentum.
        let q = packet.momentum_at(SupportPoint::new(r, phi));
        let state = hv_coefficients(&q.direction().expect("support momentum is nonzero"))
            .expect("support never reaches a degenerate direction");
        let boosted = boost.apply(&q);
        let projectors =
            projector_matrices(&boosted.direction().expect("boosted momentum is nonzero"));

        let states = [state.c_h, state.c_v];
        let blocks = [
            projectors.m_xx,
            projectors.m_xy,
            projectors.m_yx,
            projectors.m_yy,
        ];
        for (b, m) in blocks.iter().enumerate() {
            for (p, bra) in states.iter().enumerate() {
                for (q_idx, ket) in states.iter().enumerate() {
                    accs[b][p][q_idx].push(m.quadratic_form(bra, ket));
                }
            }
        }
    }

    let finish = |b: usize, p: usize, q: usize| accs[b][p][q].finish(n_samples);
    McTransferMatrices {
        blocks: std::array::from_fn(|b| {
            std::array::from_fn(|p| std::array::from_fn(|q| finish(b, p, q)))
        }),
        particle,
        alpha,
        width,
        seed,
    }
}

/// Outcome tally of a finite Bell run at one analyzer angle pair, in the
/// plane-wave (ideal) limit where the joint ±1 outcome law is exact.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiniteRun {
    pub n_pairs: u64,
    /// (A-side angle, B-side angle) in radians.
    pub angle_pair: (f64, f64),
    /// Counts of (s_A, s_B) outcomes ordered (++, +−, −+, −−).
    pub counts: [u64; 4],
    /// Empirical correlation `(n₊₊ + n₋₋ − n₊₋ − n₋₊)/N`.
    pub e_hat: f64,
    pub seed: u64,
}

/// Simulate `n_pairs` photon pairs at each of the four CHSH angle pairs
/// `(0,0), (0,−ϑ), (ϑ,0), (ϑ,−ϑ)` in the ideal limit, where the joint
/// outcome law is `Pr(s_A, s_B) = (1 + s_A·s_B·cos 2Δ)/4` with Δ the angle
/// difference. Each pair draws its own stream seeded from the root seed.
pub fn simulate_bell_run(theta: f64, n_pairs: u64, seed: u64) -> [FiniteRun; 4] {
    assert!(n_pairs >= 1);
    let pairs = [(0.0, 0.0), (0.0, -theta), (theta, 0.0), (theta, -theta)];
    let mut seeder = SplitMix64::new(seed);
    pairs.map(|angle_pair| {
        let pair_seed = seeder.next_u64();
        let mut rng = SplitMix64::new(pair_seed);
        let delta = angle_pair.0 - angle_pair.1;
        let same_sign = 0.5 * (1.0 + (2.0 * delta).cos());
        let mut counts = [0u64; 4];
        for _ in 0..n_pairs {
            let u = rng.next_f64();
            let outcome = if u < same_sign {
                // Correlated halves: ++ and −− equally likely.
                if rng.next_f64() < 0.5 {
                    0
                } else {
                    3
                }
            } else if rng.next_f64() < 0.5 {
                1
            } else {
                2
            };
            counts[outcome] += 1;
        }
        let e_hat = (counts[0] as f64 + counts[3] as f64 - counts[1] as f64 - counts[2] as f64)
            / n_pairs as f64;
        FiniteRun {
            n_pairs,
            angle_pair,
            counts,
            e_hat,
            seed: pair_seed,
        }
    })
}

/// Finite-N CHSH combination `E₁ + E₂ + E₃ − E₄` of the four runs.
pub fn chsh_sum(runs: &[FiniteRun; 4]) -> f64 {
    runs[0].e_hat + runs[1].e_hat + runs[2].e_hat - runs[3].e_hat
}
