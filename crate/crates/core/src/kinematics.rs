//! Massless four-momentum algebra and collinear Lorentz boosts along z.
//!
//! Momenta are stored as spatial three-vectors in units of the central
//! momentum magnitude; the energy of a massless photon is the Euclidean
//! norm. Boosts are parameterized by the rapidity `alpha = -atanh(v)`,
//! where `v` is the detector velocity along +z in units of c: a detector
//! receding with the photon (v > 0) has negative rapidity and sees the
//! photon redshifted.

use crate::{Error, Result};

/// Speed of light, for converting laboratory velocities to fractions of c.
pub const SPEED_OF_LIGHT_M_PER_S: f64 = 299_792_458.0;

/// Spatial photon momentum in units of the central momentum magnitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThreeMomentum {
    pub kx: f64,
    pub ky: f64,
    pub kz: f64,
}

impl ThreeMomentum {
    pub fn new(kx: f64, ky: f64, kz: f64) -> Self {
        Self { kx, ky, kz }
    }

    /// Massless on-shell energy `k⁰ = ‖k‖`.
    pub fn energy(&self) -> f64 {
        (self.kx * self.kx + self.ky * self.ky + self.kz * self.kz).sqrt()
    }

    /// Transverse momentum radius `√(kx² + ky²)`.
    pub fn transverse_radius(&self) -> f64 {
        self.kx.hypot(self.ky)
    }

    /// Direction of the momentum; the zero vector has none.
    pub fn direction(&self) -> Result<SphericalDirection> {
        if self.energy() == 0.0 {
            return Err(Error::ZeroMomentum);
        }
        let theta = self.transverse_radius().atan2(self.kz);
        let phi = self.ky.atan2(self.kx);
        Ok(SphericalDirection::new(theta, phi))
    }
}

/// Direction on the unit sphere with `theta ∈ [0, π]`, `phi ∈ [0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphericalDirection {
    theta: f64,
    phi: f64,
}

impl SphericalDirection {
    /// `phi` is wrapped into `[0, 2π)`; `theta` must already be in `[0, π]`.
    pub fn new(theta: f64, phi: f64) -> Self {
        debug_assert!(
            (0.0..=std::f64::consts::PI).contains(&theta),
            "polar angle out of range: {theta}"
        );
        let tau = 2.0 * std::f64::consts::PI;
        let mut phi = phi.rem_euclid(tau);
        if phi >= tau {
            phi = 0.0; // rem_euclid may round up to the modulus itself
        }
        Self { theta, phi }
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Unit vector `(sinθ cosφ, sinθ sinφ, cosθ)`.
    pub fn unit_vector(&self) -> [f64; 3] {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        [st * cp, st * sp, ct]
    }
}

/// Pure Lorentz boost along the z axis with rapidity `alpha`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZBoost {
    alpha: f64,
}

impl ZBoost {
    pub fn new(alpha: f64) -> Self {
        Self { alpha }
    }

    pub fn identity() -> Self {
        Self { alpha: 0.0 }
    }

    pub fn rapidity(&self) -> f64 {
        self.alpha
    }

    /// Detector velocity along +z in units of c (`v = -tanh(alpha)`).
    pub fn velocity(&self) -> f64 {
        -self.alpha.tanh()
    }

    /// Rapidities add under composition of collinear boosts.
    pub fn compose(&self, other: &ZBoost) -> ZBoost {
        ZBoost::new(self.alpha + other.alpha)
    }

    pub fn inverse(&self) -> ZBoost {
        ZBoost::new(-self.alpha)
    }

    /// Spatial part of `Λ_Z · (‖k‖, k)`: the transverse components are
    /// untouched and `kz' = sinh(α)·‖k‖ + cosh(α)·kz`. The boosted momentum
    /// stays on the light cone, `‖k'‖ = cosh(α)·‖k‖ + sinh(α)·kz`.
    pub fn apply(&self, k: &ThreeMomentum) -> ThreeMomentum {
        let energy = k.energy();
        ThreeMomentum::new(
            k.kx,
            k.ky,
            self.alpha.sinh() * energy + self.alpha.cosh() * k.kz,
        )
    }
}

/// Rapidity of a z-boost from the detector velocity `v` (units of c):
/// `alpha = -atanh(v)`.
pub fn rapidity_from_velocity(v: f64) -> Result<f64> {
    if v.is_nan() || v.abs() >= 1.0 {
        return Err(Error::SuperluminalVelocity(v));
    }
    Ok(-v.atanh())
}

/// Wigner phase `Θ(Λ_Z, k)` for a collinear boost. It vanishes identically;
/// the function exists as the seam where a general-boost phase would enter.
pub fn wigner_phase(_boost: &ZBoost, k: &ThreeMomentum) -> f64 {
    debug_assert!(k.energy() > 0.0, "Wigner phase needs a nonzero momentum");
    0.0
}
