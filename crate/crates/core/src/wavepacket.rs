//! Transverse Gaussian momentum distribution of one photon.
//!
//! The physical momentum density carries a delta function pinning the
//! longitudinal component to the central momentum (±1 in internal units),
//! so the packet is never represented pointwise in three dimensions.
//! Every momentum integral reduces to a two-dimensional polar integral
//! over the transverse plane against
//!
//! ```text
//! weight(r)·r dr dφ = π⁻¹ W⁻² e^{−(r/W)²} · r dr dφ,
//! ```
//!
//! which is normalized to one. This is the only finite reading of the
//! distributional amplitude and matches how the density is used upstream.

use crate::kinematics::ThreeMomentum;
use crate::{Error, Result};

/// Propagation direction of the packet's central momentum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PacketDirection {
    /// Photon A, central momentum +ẑ.
    PlusZ,
    /// Photon B, central momentum −ẑ.
    MinusZ,
}

impl PacketDirection {
    /// Longitudinal momentum component pinned by the delta function.
    pub fn longitudinal(&self) -> f64 {
        match self {
            PacketDirection::PlusZ => 1.0,
            PacketDirection::MinusZ => -1.0,
        }
    }
}

/// A point of the delta-collapsed packet support: transverse radius and
/// azimuth, with the longitudinal component implied by the packet.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SupportPoint {
    pub r: f64,
    pub phi: f64,
}

impl SupportPoint {
    pub fn new(r: f64, phi: f64) -> Self {
        debug_assert!(r >= 0.0, "transverse radius must be nonnegative");
        Self { r, phi }
    }
}

/// Transverse Gaussian packet of normalized width `W = w/|p|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianPacket {
    width: f64,
    direction: PacketDirection,
}

impl GaussianPacket {
    pub fn new(width: f64, direction: PacketDirection) -> Result<Self> {
        if !width.is_finite() || width <= 0.0 {
            return Err(Error::InvalidWidth(width));
        }
        Ok(Self { width, direction })
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn direction(&self) -> PacketDirection {
        self.direction
    }

    /// Transverse density `π⁻¹ W⁻² e^{−(r/W)²}`; together with the polar
    /// measure `r dr dφ` it integrates to one.
    pub fn weight(&self, r: f64) -> f64 {
        debug_assert!(r >= 0.0);
        let scaled = r / self.width;
        (-scaled * scaled).exp() / (std::f64::consts::PI * self.width * self.width)
    }

    /// Momentum at a support point: `(r cosφ, r sinφ, ±1)`.
    pub fn momentum_at(&self, pt: SupportPoint) -> ThreeMomentum {
        let (sp, cp) = pt.phi.sin_cos();
        ThreeMomentum::new(pt.r * cp, pt.r * sp, self.direction.longitudinal())
    }
}
