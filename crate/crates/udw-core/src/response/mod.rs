//! Wavepacket correlation kernels and first-order excitation probability of
//! a smeared two-level detector, inertial or uniformly accelerated.
//!
//! The field operator smeared by the detector profile, evaluated on the
//! rigid-frame chart and Fourier-transformed in the comoving coordinate,
//! takes the form
//!
//! ```text
//!     Psi(tau) = INT dk mu(k) [ a_k G-(k,tau) e^{+i theta(k,tau)}
//!                             + a_k+ G+(k,tau) e^{-i theta(k,tau)} ]
//! ```
//!
//! with mu(k) = [2 (2 pi) c |k|]^{-1/2}, G+-(k,tau) = F^(+-L(k,tau)) the
//! spectral profile at the chirped argument, and theta the centre-worldline
//! phase. The detector centre is translated to the lab origin (theta is
//! measured relative to the tau = 0 centre position), which is what makes a
//! lab-prepared wavepacket aimed at the origin reach the detector and gives
//! the correct inertial limit as the acceleration goes to zero.
//!
//! For a one-particle state |y> = INT dk y(k) a_k+ |0> the correlation
//! kernel W_y(tau', tau'') = <y| Psi(tau'') Psi(tau') |y> splits into three
//! terms: two packet cross terms weighted by conj(y(k)) y(kappa) and one
//! |y|^2-weighted vacuum term,
//!
//! ```text
//!   A = INT dk dkappa  conj(y) y  mu mu  G+(k,t'') G-(kappa,t')
//!         e^{i [theta(kappa,t') - theta(k,t'')]}
//!   B = INT dk         mu^2        G+(k,t')  G-(k,t'')
//!         e^{i [theta(k,t'') - theta(k,t')]}
//!   C = INT dk dkappa  conj(y) y  mu mu  G+(k,t') G-(kappa,t'')
//!         e^{i [theta(kappa,t'') - theta(k,t')]}
//! ```
//!
//! and the first-order excitation probability over the sharp switching
//! window [tau0, tau1] is
//!
//! ```text
//!     P = |g|^2 INT dtau' dtau'' e^{i Omega (tau' - tau'')} W_y(tau'', tau')
//! ```
//!
//! evaluated with the 2-D oscillatory quadrature engine (no rotating-wave
//! approximation: both rotating and counter-rotating content survive). The
//! vacuum term is retained, not subtracted, and reported separately in the
//! breakdown so stimulated and vacuum-window contributions can be isolated.
//!
//! The massless 1-D mode measure diverges at k = 0, so the k-domain is a
//! pair of symmetric intervals [-k_max, -k_min] u [k_min, k_max] (the
//! negative branch can be disabled for single-sided scenarios); defaults are
//! k_min = 1e-3 Omega/c and k_max = Omega/c + 12/L, or 40 Omega/c for a
//! pointlike profile. IR-cutoff sensitivity of the vacuum term is reported
//! alongside every probability.

mod kernel;
mod probability;
pub mod oracle;
mod wavepacket;

pub use kernel::{
    correlation_general, correlation_symmetric, g_pm, CorrelationKernel, KernelVariant, Sign,
};
pub use probability::{
    excitation_probability, spectral_response, Breakdown, IrSensitivity, ProbabilityResult,
    ResponsePoint,
};
pub use wavepacket::WavepacketSpectrum;

use crate::kinematics::{KinematicsError, TrajectoryFrame};
use crate::profiles::{ProfileError, ProfileKind, SpatialProfile};
use crate::quadrature::QuadratureError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ResponseError {
    #[error("detector gap must be positive (got {gap})")]
    InvalidGap { gap: f64 },
    #[error("coupling must be finite (got {coupling})")]
    InvalidCoupling { coupling: f64 },
    #[error("switching window must satisfy tau0 < tau1 (got [{t0}, {t1}])")]
    InvalidWindow { t0: f64, t1: f64 },
    #[error("k domain must satisfy 0 < k_min < k_max (got [{k_min}, {k_max}])")]
    InvalidKDomain { k_min: f64, k_max: f64 },
    #[error("wavepacket support [{lo}, {hi}] must exclude k = 0")]
    PacketSupportIncludesZero { lo: f64, hi: f64 },
    #[error("wavepacket is not unit-normalised: INT |y|^2 dk = {norm}")]
    PacketNotNormalized { norm: f64 },
    #[error("wavepacket carrier must be positive and finite (got {k0})")]
    InvalidPacketCarrier { k0: f64 },
    #[error("wavepacket width must be positive and small against the carrier (got sigma = {sigma} at k0 = {k0})")]
    InvalidPacketWidth { k0: f64, sigma: f64 },
    #[error("mode functions are undefined at k = 0")]
    ZeroWavenumber,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("quadrature did not converge while evaluating {what} (error estimate {error_estimate:.3e})")]
    QuadratureFailure { what: &'static str, error_estimate: f64 },
    #[error("probability {value:.6e} is negative beyond 5x the quadrature error {error:.3e}; this indicates an implementation fault, not physics")]
    NegativeBeyondTolerance { value: f64, error: f64 },
    #[error(transparent)]
    Kinematics(#[from] KinematicsError),
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error(transparent)]
    Grid(#[from] crate::grid::GridError),
}

/// Numerical policy of the response integrals. `None` entries resolve to the
/// gap- and profile-dependent defaults at evaluation time.
#[derive(Clone, Debug)]
pub struct ResponseNumerics {
    pub k_min: Option<f64>,
    pub k_max: Option<f64>,
    /// Integrate the left-moving branch [-k_max, -k_min] as well (default).
    pub include_negative: bool,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_panels_1d: usize,
    pub max_panels_2d: usize,
}

impl Default for ResponseNumerics {
    fn default() -> Self {
        ResponseNumerics {
            k_min: None,
            k_max: None,
            include_negative: true,
            rel_tol: 1e-6,
            abs_tol: 1e-20,
            max_panels_1d: 20_000,
            max_panels_2d: 60_000,
        }
    }
}

/// Detector gap, coupling, smearing profile, trajectory and switching
/// window. Construction enforces the horizon-margin invariant between the
/// frame and the profile extent.
#[derive(Clone, Debug)]
pub struct DetectorConfig {
    gap: f64,
    coupling: f64,
    profile: SpatialProfile,
    frame: TrajectoryFrame,
    window: (f64, f64),
    numerics: ResponseNumerics,
}

impl DetectorConfig {
    pub fn new(
        gap: f64,
        coupling: f64,
        profile: SpatialProfile,
        frame: TrajectoryFrame,
        window: (f64, f64),
    ) -> Result<Self, ResponseError> {
        if !(gap > 0.0) || !gap.is_finite() {
            return Err(ResponseError::InvalidGap { gap });
        }
        if !coupling.is_finite() {
            return Err(ResponseError::InvalidCoupling { coupling });
        }
        if !(window.0 < window.1) || !window.0.is_finite() || !window.1.is_finite() {
            return Err(ResponseError::InvalidWindow { t0: window.0, t1: window.1 });
        }
        frame.check_extent(profile.extent())?;
        Ok(DetectorConfig {
            gap,
            coupling,
            profile,
            frame,
            window,
            numerics: ResponseNumerics::default(),
        })
    }

    pub fn with_numerics(mut self, numerics: ResponseNumerics) -> Self {
        self.numerics = numerics;
        self
    }

    pub fn gap(&self) -> f64 {
        self.gap
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn profile(&self) -> &SpatialProfile {
        &self.profile
    }

    pub fn frame(&self) -> &TrajectoryFrame {
        &self.frame
    }

    pub fn window(&self) -> (f64, f64) {
        self.window
    }

    pub fn numerics(&self) -> &ResponseNumerics {
        &self.numerics
    }

    /// Resolved mode-domain cutoffs [k_min, k_max], optionally widened to
    /// cover a packet's support.
    pub fn k_domain(&self, packet: Option<&WavepacketSpectrum>) -> Result<KDomain, ResponseError> {
        let c = self.frame.c();
        let k_gap = self.gap / c;
        let k_min = self.numerics.k_min.unwrap_or(1e-3 * k_gap);
        let mut k_max = self.numerics.k_max.unwrap_or_else(|| {
            match self.profile.characteristic_width() {
                Some(l) => k_gap + 12.0 / l,
                None => 40.0 * k_gap,
            }
        });
        if let Some(p) = packet {
            let (lo, hi) = p.support();
            k_max = k_max.max(lo.abs().max(hi.abs()) * 1.000001);
        }
        if !(k_min > 0.0) || !(k_min < k_max) {
            return Err(ResponseError::InvalidKDomain { k_min, k_max });
        }
        Ok(KDomain { k_min, k_max, include_negative: self.numerics.include_negative })
    }

    /// Wavenumber beyond which the spectral profile is negligible
    /// (|F^| below ~1e-6 of its peak); bounds the kernel's oscillation rate
    /// in proper time.
    pub(crate) fn spectral_reach(&self, k_cap: f64) -> f64 {
        fn reach(kind: &ProfileKind, c: f64, k_cap: f64) -> f64 {
            let decades = (1e-6f64).ln().abs();
            match kind {
                ProfileKind::Delta => k_cap,
                ProfileKind::Gaussian { width } => (2.0 * decades).sqrt() / width,
                ProfileKind::Lorentzian { width } => decades / width,
                ProfileKind::Modulated { envelope, carrier } => {
                    carrier + reach(envelope.kind(), c, k_cap)
                }
                ProfileKind::Tabulated { .. } => k_cap,
            }
        }
        reach(self.profile.kind(), self.frame.c(), k_cap).min(k_cap)
    }
}

/// Resolved mode domain: the interval [k_min, k_max] and, unless disabled,
/// its mirror image on the negative axis.
#[derive(Clone, Copy, Debug)]
pub struct KDomain {
    pub k_min: f64,
    pub k_max: f64,
    pub include_negative: bool,
}

impl KDomain {
    /// Integration intervals in deterministic order (negative branch first).
    pub fn intervals(&self) -> Vec<(f64, f64)> {
        if self.include_negative {
            vec![(-self.k_max, -self.k_min), (self.k_min, self.k_max)]
        } else {
            vec![(self.k_min, self.k_max)]
        }
    }
}
