//! One-particle wavepacket spectra y(k).

use super::ResponseError;
use crate::grid::ComplexSpline;
use crate::quadrature::{self, QuadratureSpec};
use num_complex::Complex64;
use std::sync::Arc;

#[derive(Clone, Debug)]
enum PacketKind {
    /// Real Gaussian spectral amplitude centred at `k0` with width `sigma`
    /// (amplitude scale `amp` absorbs the support-truncation renormalisation).
    GaussianReal { k0: f64, sigma: f64, amp: f64 },
    /// Sampled complex amplitude, spline-interpolated.
    Tabulated { spline: Arc<ComplexSpline>, real: bool },
}

/// Spectral amplitude of the one-particle signal state, unit-normalised on
/// its support: INT |y(k)|^2 dk = 1. The support is a single interval that
/// excludes k = 0 (the mode measure is IR-singular there).
#[derive(Clone, Debug)]
pub struct WavepacketSpectrum {
    kind: PacketKind,
    support: (f64, f64),
}

impl WavepacketSpectrum {
    /// Real Gaussian packet at carrier wavenumber `k0 > 0`; support is
    /// truncated at 8 sigma (or just above k = 0) and renormalised there.
    pub fn gaussian(k0: f64, sigma: f64) -> Result<Self, ResponseError> {
        if !(k0 > 0.0) || !k0.is_finite() {
            return Err(ResponseError::InvalidPacketCarrier { k0 });
        }
        if !(sigma > 0.0) || !sigma.is_finite() || sigma > 0.5 * k0 {
            return Err(ResponseError::InvalidPacketWidth { k0, sigma });
        }
        let lo = (k0 - 8.0 * sigma).max(1e-3 * k0);
        let hi = k0 + 8.0 * sigma;
        Self::gaussian_with_support(k0, sigma, (lo, hi))
    }

    pub fn gaussian_with_support(
        k0: f64,
        sigma: f64,
        support: (f64, f64),
    ) -> Result<Self, ResponseError> {
        if !(k0 > 0.0) || !k0.is_finite() {
            return Err(ResponseError::InvalidPacketCarrier { k0 });
        }
        if !(sigma > 0.0) || !sigma.is_finite() {
            return Err(ResponseError::InvalidPacketWidth { k0, sigma });
        }
        check_support(support)?;
        let mut packet = WavepacketSpectrum {
            kind: PacketKind::GaussianReal { k0, sigma, amp: 1.0 },
            support,
        };
        let norm = packet.norm_sq()?;
        if norm <= 0.0 {
            return Err(ResponseError::PacketNotNormalized { norm });
        }
        if let PacketKind::GaussianReal { amp, .. } = &mut packet.kind {
            *amp = norm.sqrt().recip();
        }
        Ok(packet)
    }

    /// Packet from sampled amplitudes on a strictly increasing k grid
    /// (rescaled to unit norm; the grid must not straddle k = 0).
    pub fn from_samples(k: Vec<f64>, values: Vec<Complex64>) -> Result<Self, ResponseError> {
        let support = (k[0], *k.last().ok_or(ResponseError::PacketSupportIncludesZero {
            lo: f64::NAN,
            hi: f64::NAN,
        })?);
        check_support(support)?;
        let peak = values.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
        let real = values.iter().all(|v| v.im.abs() <= 1e-12 * peak);
        let spline = Arc::new(ComplexSpline::new(&k, &values)?);
        let mut packet =
            WavepacketSpectrum { kind: PacketKind::Tabulated { spline, real }, support };
        let norm = packet.norm_sq()?;
        if norm <= 0.0 {
            return Err(ResponseError::PacketNotNormalized { norm });
        }
        let scale = norm.sqrt().recip();
        let rescaled: Vec<Complex64> = values.iter().map(|v| v * scale).collect();
        packet.kind =
            PacketKind::Tabulated { spline: Arc::new(ComplexSpline::new(&k, &rescaled)?), real };
        Ok(packet)
    }

    pub fn amplitude(&self, k: f64) -> Complex64 {
        if k < self.support.0 || k > self.support.1 {
            return Complex64::new(0.0, 0.0);
        }
        match &self.kind {
            PacketKind::GaussianReal { k0, sigma, amp } => {
                let norm = (2.0 * std::f64::consts::PI * sigma * sigma).powf(-0.25);
                let d = k - k0;
                Complex64::new(amp * norm * (-d * d / (4.0 * sigma * sigma)).exp(), 0.0)
            }
            PacketKind::Tabulated { spline, .. } => spline.eval(k),
        }
    }

    pub fn support(&self) -> (f64, f64) {
        self.support
    }

    /// Spectral width scale, used for quadrature panel sizing.
    pub fn width_scale(&self) -> f64 {
        match &self.kind {
            PacketKind::GaussianReal { sigma, .. } => *sigma,
            PacketKind::Tabulated { .. } => 0.25 * (self.support.1 - self.support.0),
        }
    }

    pub fn is_real(&self) -> bool {
        match &self.kind {
            PacketKind::GaussianReal { .. } => true,
            PacketKind::Tabulated { real, .. } => *real,
        }
    }

    /// INT |y|^2 over the support (1 after construction, up to quadrature
    /// tolerance).
    pub fn norm_sq(&self) -> Result<f64, ResponseError> {
        let spec = QuadratureSpec::new(1e-11, 1e-15, 4096).expect("static spec");
        let r = quadrature::integrate_1d(
            |k| Complex64::new(self.amplitude(k).norm_sqr(), 0.0),
            self.support,
            &spec,
        )?;
        Ok(r.value.re)
    }

    /// Enforces the unit-norm invariant (used by validation paths).
    pub fn check_normalized(&self) -> Result<(), ResponseError> {
        let norm = self.norm_sq()?;
        if (norm - 1.0).abs() > 1e-8 {
            return Err(ResponseError::PacketNotNormalized { norm });
        }
        Ok(())
    }
}

fn check_support(support: (f64, f64)) -> Result<(), ResponseError> {
    let (lo, hi) = support;
    if !(lo < hi) || !lo.is_finite() || !hi.is_finite() || (lo <= 0.0 && hi >= 0.0) {
        return Err(ResponseError::PacketSupportIncludesZero { lo, hi });
    }
    Ok(())
}
