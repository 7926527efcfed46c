//! Momentum-dependent polarization geometry.
//!
//! At a momentum direction `k̂` the circular (helicity) basis vectors are
//! `ε^±_k = R(k̂)·(1, ±i, 0)/√2` with `R(k̂) = R_z(φ)·R_y(θ)` rotating ẑ
//! into `k̂`, completed by the bookkeeping longitudinal vector `ε^l_k = k̂`.
//! The lab measurement axes x̂, ŷ decompose in this triad with coefficients
//!
//! ```text
//! x_± = (cosθ cosφ ± i sinφ)/√2      x_l = sinθ cosφ
//! y_± = (cosθ sinφ ∓ i cosφ)/√2      y_l = sinθ sinφ
//! ```
//!
//! Conventions pinned here (and verified by reconstruction tests):
//! the inner product is antilinear in the left slot, the coefficients are
//! `x_a = ⟨ε^a, x̂⟩`, and a vector reassembles as `v = Σ_a ⟨ε^a, v⟩ ε^a`
//! without extra conjugation. All downstream transfer-matrix entries are
//! invariant under a momentum-dependent rephasing `R(k̂) → R(k̂)·R_z(χ(k̂))`
//! of the triad, so nothing physical depends on this choice.

use num_complex::Complex64;

use crate::kinematics::SphericalDirection;
use crate::linalg::{ComplexTriple, Mat3, RealMat3};
use crate::{Error, Result};

/// Transverse denominators below this are treated as degenerate (the
/// measurement axis is longitudinal and has no transverse part).
pub const DEGENERATE_DIRECTION_THRESHOLD: f64 = 1e-30;

/// The circular-plus-longitudinal basis at one momentum direction.
#[derive(Debug, Clone, Copy)]
pub struct HelicityTriad {
    pub eps_plus: ComplexTriple,
    pub eps_minus: ComplexTriple,
    pub eps_long: ComplexTriple,
}

/// The six scalar coefficients of x̂ and ŷ in the helicity triad.
#[derive(Debug, Clone, Copy)]
pub struct TransverseCoefficients {
    pub x_plus: Complex64,
    pub x_minus: Complex64,
    pub y_plus: Complex64,
    pub y_minus: Complex64,
    pub x_long: f64,
    pub y_long: f64,
}

impl TransverseCoefficients {
    /// Coefficient column of the x̂ ket in the `(ε⁺, ε⁻, ε^l)` basis.
    pub fn x_column(&self) -> ComplexTriple {
        ComplexTriple::new(self.x_plus, self.x_minus, self.x_long.into())
    }

    /// Coefficient column of the ŷ ket in the `(ε⁺, ε⁻, ε^l)` basis.
    pub fn y_column(&self) -> ComplexTriple {
        ComplexTriple::new(self.y_plus, self.y_minus, self.y_long.into())
    }

    /// `|x₊|² + |x₋|²`, the squared transverse part of x̂.
    pub fn transverse_norm_sqr_x(&self) -> f64 {
        self.x_plus.norm_sqr() + self.x_minus.norm_sqr()
    }

    /// `|y₊|² + |y₋|²`, the squared transverse part of ŷ.
    pub fn transverse_norm_sqr_y(&self) -> f64 {
        self.y_plus.norm_sqr() + self.y_minus.norm_sqr()
    }
}

/// Normalized transverse coefficient columns of the `|ê_x⟩`, `|ê_y⟩` states
/// (the horizontal/vertical photon polarizations); longitudinal entries are
/// zero by construction.
#[derive(Debug, Clone, Copy)]
pub struct HVCoefficients {
    pub c_h: ComplexTriple,
    pub c_v: ComplexTriple,
}

/// Matrices of the four measurement projectors `|â⟩⟨b̂|` in the helicity
/// basis at one momentum direction.
#[derive(Debug, Clone, Copy)]
pub struct ProjectorMatrices {
    pub m_xx: Mat3,
    pub m_xy: Mat3,
    pub m_yx: Mat3,
    pub m_yy: Mat3,
}

/// Rotation taking ẑ into `k̂`, in the convention `R(k̂) = R_z(φ)·R_y(θ)`.
pub fn rotation_matrix(dir: &SphericalDirection) -> RealMat3 {
    let (st, ct) = dir.theta().sin_cos();
    let (sp, cp) = dir.phi().sin_cos();
    RealMat3([
        [cp * ct, -sp, cp * st],
        [sp * ct, cp, sp * st],
        [-st, 0.0, ct],
    ])
}

/// Helicity triad at `k̂`: `ε^± = R(k̂)·(1, ±i, 0)/√2`, `ε^l = k̂`.
pub fn helicity_triad(dir: &SphericalDirection) -> HelicityTriad {
    let rot = rotation_matrix(dir);
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    let plus = ComplexTriple::new(
        Complex64::new(inv_sqrt2, 0.0),
        Complex64::new(0.0, inv_sqrt2),
        Complex64::ZERO,
    );
    let minus = ComplexTriple::new(
        Complex64::new(inv_sqrt2, 0.0),
        Complex64::new(0.0, -inv_sqrt2),
        Complex64::ZERO,
    );
    HelicityTriad {
        eps_plus: rot.apply_complex(&plus),
        eps_minus: rot.apply_complex(&minus),
        eps_long: ComplexTriple::from_real(dir.unit_vector()),
    }
}

/// Closed-form coefficients of x̂ and ŷ in the helicity triad at `k̂`.
pub fn xy_coefficients(dir: &SphericalDirection) -> TransverseCoefficients {
    let (st, ct) = dir.theta().sin_cos();
    let (sp, cp) = dir.phi().sin_cos();
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    TransverseCoefficients {
        x_plus: Complex64::new(ct * cp, sp) * inv_sqrt2,
        x_minus: Complex64::new(ct * cp, -sp) * inv_sqrt2,
        y_plus: Complex64::new(ct * sp, -cp) * inv_sqrt2,
        y_minus: Complex64::new(ct * sp, cp) * inv_sqrt2,
        x_long: st * cp,
        y_long: st * sp,
    }
}

/// Normalized transverse coefficient pairs of `|ê_x⟩` and `|ê_y⟩`.
///
/// Fails when x̂ or ŷ is (numerically) parallel to `k̂`, e.g. θ = π/2 with
/// φ = 0 for ê_x; the in-scope packet support never reaches these points.
pub fn hv_coefficients(dir: &SphericalDirection) -> Result<HVCoefficients> {
    let coeffs = xy_coefficients(dir);
    let nx_sqr = coeffs.transverse_norm_sqr_x();
    let ny_sqr = coeffs.transverse_norm_sqr_y();
    if nx_sqr < DEGENERATE_DIRECTION_THRESHOLD || ny_sqr < DEGENERATE_DIRECTION_THRESHOLD {
        return Err(Error::DegenerateDirection {
            theta: dir.theta(),
            phi: dir.phi(),
        });
    }
    let nx = nx_sqr.sqrt();
    let ny = ny_sqr.sqrt();
    Ok(HVCoefficients {
        c_h: ComplexTriple::new(coeffs.x_plus / nx, coeffs.x_minus / nx, Complex64::ZERO),
        c_v: ComplexTriple::new(coeffs.y_plus / ny, coeffs.y_minus / ny, Complex64::ZERO),
    })
}

/// Matrices of `P_ab = |â⟩⟨b̂|` (a, b ∈ {x, y}) in the helicity basis:
/// `M_ab = column(a)·column(b)†`.
pub fn projector_matrices(dir: &SphericalDirection) -> ProjectorMatrices {
    let coeffs = xy_coefficients(dir);
    let x = coeffs.x_column();
    let y = coeffs.y_column();
    ProjectorMatrices {
        m_xx: Mat3::outer(&x, &x),
        m_xy: Mat3::outer(&x, &y),
        m_yx: Mat3::outer(&y, &x),
        m_yy: Mat3::outer(&y, &y),
    }
}

/// The two Hermitian components of the polarization measurement operator,
/// `σ_φ = (M_xx − M_yy)·cos2φ + (M_xy + M_yx)·sin2φ`.
pub fn sigma_components(dir: &SphericalDirection) -> (Mat3, Mat3) {
    let p = projector_matrices(dir);
    (p.m_xx.sub(&p.m_yy), p.m_xy.add(&p.m_yx))
}
