//! Polarization correlations of entangled photon pairs measured by a moving
//! detector.
//!
//! Two photons fly apart along ±z, each described by a transverse Gaussian
//! wave packet of normalized width `W` (momentum spread over central
//! momentum). The detector of photon A moves along z with rapidity `alpha`
//! while the detector of photon B is at rest. This crate evaluates the CHSH
//! Bell functional `F(ϑ)` for that configuration:
//!
//! * [`kinematics`] — massless momenta and collinear z-boosts,
//! * [`polarization`] — helicity triads, transverse coefficient functions and
//!   measurement projectors,
//! * [`wavepacket`] — the transverse Gaussian momentum density,
//! * [`quadrature`] — deterministic polar quadrature with node-doubling
//!   error control,
//! * [`correlator`] — per-photon transfer matrices, correlations and `F(ϑ)`,
//! * [`oracle`] — Monte-Carlo re-evaluation of the same integrals and a
//!   finite-N Bell-experiment simulator.
//!
//! Internal units fix the central momentum magnitude to one (`ħ = c = 1`),
//! so every result depends only on the pair `(alpha, W)`.

pub mod correlator;
mod error;
pub mod kinematics;
pub mod linalg;
pub mod oracle;
pub mod polarization;
pub mod quadrature;
pub mod wavepacket;

pub use error::{Error, Result};
