use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// `rapidity_from_velocity` needs `|v| < 1` (v in units of c).
    #[error("velocity must satisfy |v| < 1 in units of c, got {0}")]
    SuperluminalVelocity(f64),

    /// A direction was requested from the zero momentum vector.
    #[error("zero momentum has no direction")]
    ZeroMomentum,

    /// Gaussian packet widths must be positive and finite.
    #[error("packet width must be positive and finite, got {0}")]
    InvalidWidth(f64),

    /// The measurement axis is (numerically) longitudinal at this momentum
    /// direction, so the transverse polarization states are undefined.
    #[error("degenerate direction (theta={theta}, phi={phi}): transverse denominator below 1e-30")]
    DegenerateDirection { theta: f64, phi: f64 },

    /// Node counts must be positive, the radius cap and tolerance positive.
    #[error("invalid quadrature spec: {0}")]
    InvalidQuadratureSpec(String),

    /// The integrand produced a NaN; the offending node is reported.
    #[error("integrand returned NaN at node (r={r}, phi={phi})")]
    NanAtNode { r: f64, phi: f64 },

    /// Node doubling did not reach the target tolerance.
    #[error(
        "quadrature did not converge: est_error={est_error:.3e} > target={target:.3e} \
         at {n_radial}x{n_azimuthal} nodes"
    )]
    QuadratureNotConverged {
        est_error: f64,
        target: f64,
        n_radial: usize,
        n_azimuthal: usize,
    },

    /// Theta grids must be nonempty and strictly increasing.
    #[error("theta grid must be nonempty and strictly increasing")]
    InvalidThetaGrid,

    /// A difference curve would be dominated by quadrature error.
    #[error(
        "cancellation guard: quadrature error {est_error:.3e} exceeds 10% of \
         max |delta F| = {scale:.3e}"
    )]
    CancellationGuard { est_error: f64, scale: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;
