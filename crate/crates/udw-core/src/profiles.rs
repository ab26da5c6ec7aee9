//! Spatial smearing profiles F(x) and their spectral profiles F^(k).
//!
//! The Fourier convention is fixed crate-wide to
//!
//! ```text
//!     F^(k) = INT F(x) e^{-i k x} dx          (no 2 pi prefactor)
//! ```
//!
//! so a profile normalised to unit spatial integral has F^(0) = 1. Delta,
//! Gaussian, Lorentzian and cosine-modulated profiles transform in closed
//! form; tabulated profiles go through oscillation-aware adaptive quadrature
//! of a cubic-spline interpolant.
//!
//! A modulated profile is S(x) cos(q x) with q = Omega/c: the spectral
//! profile splits into (1/2)[S^(k-q) + S^(k+q)], two copies of the envelope
//! transform centred on the resonance wavenumbers +-q instead of on zero.
//! The carrier is anchored at x = 0 (not at the envelope centre), which keeps
//! that split identity exact for off-centre envelopes.
//!
//! Real non-negative envelopes are normalised to unit spatial integral at
//! construction; modulated profiles inherit the envelope normalisation and
//! their own integral is in general not 1.

use crate::grid::{ComplexSpline, GridError};
use crate::quadrature::{self, PhaseHint, QuadratureSpec};
use num_complex::Complex64;
use std::path::Path;
use std::sync::Arc;
use thiserror::Error;

/// Relative magnitude below which the profile is treated as supported.
const SUPPORT_CUT: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum ProfileError {
    #[error("a delta profile is a distribution and cannot be evaluated pointwise")]
    DeltaNotEvaluable,
    #[error("a delta profile cannot carry an internal modulation")]
    DeltaNotModulable,
    #[error("modulated profiles cannot be modulated again")]
    NestedModulation,
    #[error("profile width must be positive (got {width})")]
    NonPositiveWidth { width: f64 },
    #[error("carrier frequency must be finite and non-negative (got {gap})")]
    InvalidCarrier { gap: f64 },
    #[error("speed of light must be positive (got {c})")]
    InvalidSpeed { c: f64 },
    #[error("centre offset is only supported on delta, Gaussian and Lorentzian profiles")]
    CenterUnsupported,
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("tabulated values vanish everywhere")]
    EmptyProfile,
    #[error("tabulated grid does not cover the support: |F| at the {end} end is {ratio:.3e} of the peak (need < 1e-12)")]
    InsufficientCoverage { end: &'static str, ratio: f64 },
    #[error("numeric spectral transform did not converge at k = {k} (error {error_estimate:.3e}, target {target:.3e})")]
    QuadratureFailure { k: f64, error_estimate: f64, target: f64 },
    #[error("{path}:{line}: {message}")]
    Parse { path: String, line: usize, message: String },
    #[error("failed to read profile file: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Debug)]
pub enum ProfileKind {
    /// Pointlike detector, F(x) = delta(x - centre).
    Delta,
    /// Normalised Gaussian with characteristic length `width`.
    Gaussian { width: f64 },
    /// Normalised Lorentzian with half-width `width`.
    Lorentzian { width: f64 },
    /// Envelope times cos(carrier * x); `carrier` is Omega/c.
    Modulated { envelope: Box<SpatialProfile>, carrier: f64 },
    /// Sampled profile interpolated by a natural cubic spline.
    Tabulated { x: Vec<f64>, values: Vec<Complex64>, spline: Arc<ComplexSpline> },
}

#[derive(Clone, Debug)]
pub struct SpatialProfile {
    kind: ProfileKind,
    center: f64,
}

impl SpatialProfile {
    pub fn delta() -> Self {
        SpatialProfile { kind: ProfileKind::Delta, center: 0.0 }
    }

    pub fn gaussian(width: f64) -> Result<Self, ProfileError> {
        if !(width > 0.0) || !width.is_finite() {
            return Err(ProfileError::NonPositiveWidth { width });
        }
        Ok(SpatialProfile { kind: ProfileKind::Gaussian { width }, center: 0.0 })
    }

    pub fn lorentzian(width: f64) -> Result<Self, ProfileError> {
        if !(width > 0.0) || !width.is_finite() {
            return Err(ProfileError::NonPositiveWidth { width });
        }
        Ok(SpatialProfile { kind: ProfileKind::Lorentzian { width }, center: 0.0 })
    }

    /// Builds a tabulated profile. The grid must be strictly increasing and
    /// cover the support down to |F| < 1e-12 of the peak at both ends. Real
    /// non-negative data are rescaled to unit integral.
    pub fn tabulated(x: Vec<f64>, mut values: Vec<Complex64>) -> Result<Self, ProfileError> {
        crate::grid::validate_grid(&x)?;
        if x.len() != values.len() {
            return Err(GridError::LengthMismatch { x: x.len(), y: values.len() }.into());
        }
        let peak = values.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
        if peak == 0.0 {
            return Err(ProfileError::EmptyProfile);
        }
        let first = values.first().unwrap().norm() / peak;
        let last = values.last().unwrap().norm() / peak;
        if first >= SUPPORT_CUT {
            return Err(ProfileError::InsufficientCoverage { end: "lower", ratio: first });
        }
        if last >= SUPPORT_CUT {
            return Err(ProfileError::InsufficientCoverage { end: "upper", ratio: last });
        }
        let real_nonneg = values
            .iter()
            .all(|v| v.im.abs() <= 1e-12 * peak && v.re >= -1e-12 * peak);
        if real_nonneg {
            let spline = ComplexSpline::new(&x, &values)?;
            let total = spline.integral().re;
            if total > 0.0 {
                for v in values.iter_mut() {
                    *v /= total;
                }
            }
        }
        let spline = Arc::new(ComplexSpline::new(&x, &values)?);
        Ok(SpatialProfile { kind: ProfileKind::Tabulated { x, values, spline }, center: 0.0 })
    }

    /// Loads a tabulated profile from whitespace-delimited text with columns
    /// `x  Re F  [Im F]`; `#` starts a comment.
    pub fn tabulated_from_path<P: AsRef<Path>>(path: P) -> Result<Self, ProfileError> {
        let text = std::fs::read_to_string(&path)?;
        let (x, values) = parse_columns(&text, &path.as_ref().display().to_string())?;
        Self::tabulated(x, values)
    }

    /// Translates the profile to `center`. Only meaningful for the analytic
    /// shapes; tabulated grids already carry absolute positions and modulated
    /// profiles keep their carrier anchored at the origin.
    pub fn with_center(mut self, center: f64) -> Result<Self, ProfileError> {
        match self.kind {
            ProfileKind::Delta | ProfileKind::Gaussian { .. } | ProfileKind::Lorentzian { .. } => {
                self.center = center;
                Ok(self)
            }
            _ => Err(ProfileError::CenterUnsupported),
        }
    }

    /// Wraps the profile with the internal oscillation cos(Omega x / c).
    pub fn modulate(self, gap: f64, c: f64) -> Result<Self, ProfileError> {
        match self.kind {
            ProfileKind::Delta => return Err(ProfileError::DeltaNotModulable),
            ProfileKind::Modulated { .. } => return Err(ProfileError::NestedModulation),
            _ => {}
        }
        if !gap.is_finite() || gap < 0.0 {
            return Err(ProfileError::InvalidCarrier { gap });
        }
        if !(c > 0.0) || !c.is_finite() {
            return Err(ProfileError::InvalidSpeed { c });
        }
        Ok(SpatialProfile {
            kind: ProfileKind::Modulated { envelope: Box::new(self), carrier: gap / c },
            center: 0.0,
        })
    }

    pub fn kind(&self) -> &ProfileKind {
        &self.kind
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    /// Pointwise value of F. Delta profiles reject pointwise evaluation.
    pub fn eval(&self, x: f64) -> Result<Complex64, ProfileError> {
        match &self.kind {
            ProfileKind::Delta => Err(ProfileError::DeltaNotEvaluable),
            ProfileKind::Gaussian { width } => {
                let u = (x - self.center) / width;
                Ok(Complex64::new(
                    (-0.5 * u * u).exp() / (width * (2.0 * std::f64::consts::PI).sqrt()),
                    0.0,
                ))
            }
            ProfileKind::Lorentzian { width } => {
                let u = x - self.center;
                Ok(Complex64::new(
                    width / (std::f64::consts::PI * (u * u + width * width)),
                    0.0,
                ))
            }
            ProfileKind::Modulated { envelope, carrier } => {
                Ok(envelope.eval(x)? * (carrier * x).cos())
            }
            ProfileKind::Tabulated { spline, .. } => Ok(spline.eval(x)),
        }
    }

    /// Spectral profile F^(k): closed form where the shape allows it,
    /// adaptive quadrature of the interpolant for tabulated data.
    pub fn spectral(&self) -> Result<SpectralProfile, ProfileError> {
        self.spectral_with(default_transform_spec())
    }

    pub fn spectral_with(&self, spec: QuadratureSpec) -> Result<SpectralProfile, ProfileError> {
        let kind = self.spectral_kind(&spec)?;
        let provenance = if matches!(kind, SpectralKind::Numeric { .. }) {
            Provenance::Numeric(spec)
        } else {
            Provenance::Analytic
        };
        Ok(SpectralProfile { provenance, kind })
    }

    fn spectral_kind(&self, spec: &QuadratureSpec) -> Result<SpectralKind, ProfileError> {
        Ok(match &self.kind {
            ProfileKind::Delta => SpectralKind::Delta { center: self.center },
            ProfileKind::Gaussian { width } => {
                SpectralKind::Gaussian { width: *width, center: self.center }
            }
            ProfileKind::Lorentzian { width } => {
                SpectralKind::Lorentzian { width: *width, center: self.center }
            }
            ProfileKind::Modulated { envelope, carrier } => SpectralKind::Split {
                inner: Box::new(envelope.spectral_kind(spec)?),
                carrier: *carrier,
            },
            ProfileKind::Tabulated { spline, .. } => {
                SpectralKind::Numeric { spline: Arc::clone(spline), spec: spec.clone() }
            }
        })
    }

    /// Half-width of the effective support (|F| above 1e-12 of the peak),
    /// measured from the lab origin. Used for the rigid-frame horizon check.
    pub fn extent(&self) -> f64 {
        match &self.kind {
            ProfileKind::Delta => self.center.abs(),
            ProfileKind::Gaussian { width } => {
                self.center.abs() + width * (-2.0 * SUPPORT_CUT.ln()).sqrt()
            }
            ProfileKind::Lorentzian { width } => {
                self.center.abs() + width * (1.0 / SUPPORT_CUT - 1.0).sqrt()
            }
            ProfileKind::Modulated { envelope, .. } => envelope.extent(),
            ProfileKind::Tabulated { x, .. } => x[0].abs().max(x.last().unwrap().abs()),
        }
    }

    /// Characteristic length scale L of the smearing; `None` for pointlike.
    pub fn characteristic_width(&self) -> Option<f64> {
        match &self.kind {
            ProfileKind::Delta => None,
            ProfileKind::Gaussian { width } | ProfileKind::Lorentzian { width } => Some(*width),
            ProfileKind::Modulated { envelope, .. } => envelope.characteristic_width(),
            ProfileKind::Tabulated { x, values, .. } => {
                // RMS width of |F| about its weighted mean.
                let mut w0 = 0.0;
                let mut w1 = 0.0;
                for (xi, v) in x.iter().zip(values) {
                    w0 += v.norm();
                    w1 += v.norm() * xi;
                }
                let mean = w1 / w0;
                let mut w2 = 0.0;
                for (xi, v) in x.iter().zip(values) {
                    w2 += v.norm() * (xi - mean) * (xi - mean);
                }
                Some((w2 / w0).sqrt())
            }
        }
    }
}

fn default_transform_spec() -> QuadratureSpec {
    QuadratureSpec::new(1e-9, 1e-13, 4096).expect("static spec is valid")
}

fn parse_columns(text: &str, path: &str) -> Result<(Vec<f64>, Vec<Complex64>), ProfileError> {
    let mut xs = Vec::new();
    let mut vs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 && fields.len() != 3 {
            return Err(ProfileError::Parse {
                path: path.to_string(),
                line: lineno + 1,
                message: format!("expected 2 or 3 columns, found {}", fields.len()),
            });
        }
        let parse = |s: &str| -> Result<f64, ProfileError> {
            s.parse::<f64>().map_err(|e| ProfileError::Parse {
                path: path.to_string(),
                line: lineno + 1,
                message: format!("bad number {s:?}: {e}"),
            })
        };
        xs.push(parse(fields[0])?);
        let re = parse(fields[1])?;
        let im = if fields.len() == 3 { parse(fields[2])? } else { 0.0 };
        vs.push(Complex64::new(re, im));
    }
    Ok((xs, vs))
}

/// Where a spectral evaluator comes from.
#[derive(Clone, Debug)]
pub enum Provenance {
    Analytic,
    Numeric(QuadratureSpec),
}

#[derive(Clone, Debug)]
enum SpectralKind {
    Delta { center: f64 },
    Gaussian { width: f64, center: f64 },
    Lorentzian { width: f64, center: f64 },
    Split { inner: Box<SpectralKind>, carrier: f64 },
    Numeric { spline: Arc<ComplexSpline>, spec: QuadratureSpec },
}

impl SpectralKind {
    fn eval(&self, k: f64) -> Result<Complex64, ProfileError> {
        Ok(match self {
            SpectralKind::Delta { center } => Complex64::from_polar(1.0, -k * center),
            SpectralKind::Gaussian { width, center } => {
                Complex64::from_polar((-0.5 * k * k * width * width).exp(), -k * center)
            }
            SpectralKind::Lorentzian { width, center } => {
                Complex64::from_polar((-width * k.abs()).exp(), -k * center)
            }
            SpectralKind::Split { inner, carrier } => {
                0.5 * (inner.eval(k - carrier)? + inner.eval(k + carrier)?)
            }
            SpectralKind::Numeric { spline, spec } => {
                let range = spline.knot_range();
                let s = spline.clone();
                let quad_spec = spec.clone().with_phase_hint(PhaseHint::constant(k));
                let r = quadrature::integrate_1d(
                    move |x| s.eval(x) * Complex64::from_polar(1.0, -k * x),
                    range,
                    &quad_spec,
                )
                .map_err(|_| ProfileError::QuadratureFailure {
                    k,
                    error_estimate: f64::INFINITY,
                    target: spec.abs_tol,
                })?;
                if !r.converged {
                    return Err(ProfileError::QuadratureFailure {
                        k,
                        error_estimate: r.error_estimate,
                        target: (spec.rel_tol * r.value.norm()).max(spec.abs_tol),
                    });
                }
                r.value
            }
        })
    }
}

/// The spectral profile F^(k).
#[derive(Clone, Debug)]
pub struct SpectralProfile {
    provenance: Provenance,
    kind: SpectralKind,
}

impl SpectralProfile {
    pub fn eval(&self, k: f64) -> Result<Complex64, ProfileError> {
        self.kind.eval(k)
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// True when sampled values satisfy F^(k) = F^(-k) to `tol` (holds for
    /// real even profiles).
    pub fn is_even(&self, k_scale: f64, tol: f64) -> bool {
        let samples = [0.13, 0.37, 0.71, 1.0, 1.62, 2.4, 3.7];
        samples.iter().all(|&s| {
            let k = s * k_scale;
            match (self.eval(k), self.eval(-k)) {
                (Ok(a), Ok(b)) => (a - b).norm() <= tol,
                _ => false,
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    const SQRT_2PI: f64 = 2.506_628_274_631_000_5;

    #[test]
    fn gaussian_eval_known_values() {
        let g = SpatialProfile::gaussian(1.0).unwrap();
        assert_relative_eq!(g.eval(0.0).unwrap().re, 1.0 / SQRT_2PI, max_relative = 1e-14);
        let g2 = SpatialProfile::gaussian(2.0).unwrap();
        let expect = (1.0 / (2.0 * SQRT_2PI)) * (-0.5f64).exp();
        assert_relative_eq!(g2.eval(2.0).unwrap().re, expect, max_relative = 1e-14);
    }

    #[test]
    fn modulated_eval_at_origin_equals_envelope() {
        let g = SpatialProfile::gaussian(1.0).unwrap();
        let m = g.modulate(3.0, 1.0).unwrap();
        assert_relative_eq!(m.eval(0.0).unwrap().re, 1.0 / SQRT_2PI, max_relative = 1e-14);
    }

    #[test]
    fn delta_eval_and_modulate_reject() {
        let d = SpatialProfile::delta();
        assert!(matches!(d.eval(0.0), Err(ProfileError::DeltaNotEvaluable)));
        assert!(matches!(
            SpatialProfile::delta().modulate(1.0, 1.0),
            Err(ProfileError::DeltaNotModulable)
        ));
    }

    #[test]
    fn nested_modulation_rejects() {
        let m = SpatialProfile::gaussian(1.0).unwrap().modulate(1.0, 1.0).unwrap();
        assert!(matches!(m.modulate(2.0, 1.0), Err(ProfileError::NestedModulation)));
    }

    #[test]
    fn invalid_widths_reject() {
        assert!(SpatialProfile::gaussian(0.0).is_err());
        assert!(SpatialProfile::gaussian(-1.0).is_err());
        assert!(SpatialProfile::lorentzian(f64::NAN).is_err());
    }

    #[test]
    fn spectral_closed_forms() {
        let s = SpatialProfile::gaussian(1.5).unwrap().spectral().unwrap();
        assert_relative_eq!(
            s.eval(2.0).unwrap().re,
            (-0.5f64 * 4.0 * 2.25).exp(),
            max_relative = 1e-14
        );
        let d = SpatialProfile::delta().spectral().unwrap();
        for k in [-30.0, 0.0, 4.5] {
            assert_eq!(d.eval(k).unwrap(), Complex64::new(1.0, 0.0));
        }
        let l = SpatialProfile::lorentzian(0.7).unwrap().spectral().unwrap();
        assert_relative_eq!(l.eval(-3.0).unwrap().re, (-0.7f64 * 3.0).exp(), max_relative = 1e-14);
    }

    #[test]
    fn modulated_spectral_split() {
        let om = 2.0;
        let l = 1.3;
        let m = SpatialProfile::gaussian(l).unwrap().modulate(om, 1.0).unwrap();
        let s = m.spectral().unwrap();
        // At k = Omega/c the split Gaussian gives (1/2)(1 + e^{-2 Omega^2 L^2 / c^2}).
        let expect = 0.5 * (1.0 + (-2.0 * om * om * l * l).exp());
        assert_relative_eq!(s.eval(om).unwrap().re, expect, max_relative = 1e-13);
    }

    #[test]
    fn modulate_zero_gap_is_identity() {
        let g = SpatialProfile::gaussian(0.8).unwrap();
        let m = g.clone().modulate(0.0, 1.0).unwrap();
        for x in [-2.0, -0.3, 0.0, 1.7] {
            assert_eq!(g.eval(x).unwrap(), m.eval(x).unwrap());
        }
    }

    #[test]
    fn spectral_of_centred_gaussian_carries_phase() {
        let c0 = 0.6;
        let g = SpatialProfile::gaussian(1.0).unwrap().with_center(c0).unwrap();
        let s = g.spectral().unwrap();
        let k = 1.7f64;
        let expect = Complex64::from_polar((-0.5 * k * k).exp(), -k * c0);
        assert!((s.eval(k).unwrap() - expect).norm() < 1e-14);
    }

    /// Reference transform for test purposes: brute-force quadrature of
    /// F(x) e^{-ikx} over [-X, X] plus an integration-by-parts tail series
    /// (enough for 1e-10 on the shapes used here).
    fn reference_transform<F, D>(f: F, derivs: D, k: f64, xcut: impl Fn(f64) -> f64) -> Complex64
    where
        F: Fn(f64) -> f64,
        D: Fn(f64, usize) -> f64,
    {
        let x = xcut(k);
        let spec = QuadratureSpec::new(1e-12, 1e-12, 20_000)
            .unwrap()
            .with_phase_hint(PhaseHint::constant(k.abs().max(1e-3)));
        let body = quadrature::integrate_1d(
            |t| Complex64::from_polar(f(t), -k * t),
            (-x, x),
            &spec,
        )
        .unwrap()
        .value;
        if k == 0.0 {
            // Even shapes only; tails handled analytically by the caller.
            return body;
        }
        // One-sided tail INT_X^inf f e^{-ikx} dx ~ e^{-ikX} SUM_n f^(n)(X)/(ik)^{n+1};
        // for even f the two tails combine to twice the real part.
        let ik = Complex64::new(0.0, k);
        let mut s = Complex64::new(0.0, 0.0);
        let mut pw = ik;
        for n in 0..6 {
            s += derivs(x, n) / pw;
            pw *= ik;
        }
        let one_side = Complex64::from_polar(1.0, -k * x) * s;
        body + 2.0 * one_side.re
    }

    #[test]
    fn numeric_transform_matches_gaussian_closed_form() {
        let l = 0.8;
        let f = move |x: f64| (-0.5 * x * x / (l * l)).exp() / (l * SQRT_2PI);
        let s = SpatialProfile::gaussian(l).unwrap().spectral().unwrap();
        let mut worst = 0.0f64;
        for i in 0..81 {
            let k = -10.0 / l + 20.0 / l * i as f64 / 80.0;
            let numeric = reference_transform(f, |_, _| 0.0, k, |_| 14.0 * l);
            let analytic = s.eval(k).unwrap();
            worst = worst.max((numeric - analytic).norm());
        }
        assert!(worst < 1e-8, "gaussian transform residual {worst}");
    }

    #[test]
    fn numeric_transform_matches_lorentzian_closed_form() {
        let l = 1.0;
        let f = move |x: f64| (l / std::f64::consts::PI) / (x * x + l * l);
        // Analytic derivatives of f up to order 5 via the partial-fraction form.
        let derivs = move |x: f64, n: usize| {
            // f = (1/(2 pi i)) [1/(x-il) - 1/(x+il)]; n-th derivative is
            // (-1)^n n! (1/(2 pi i)) [(x-il)^{-n-1} - (x+il)^{-n-1}].
            let zm = Complex64::new(x, -l);
            let zp = Complex64::new(x, l);
            let fact: f64 = (1..=n).map(|i| i as f64).product::<f64>().max(1.0);
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            let val = (zm.powi(-(n as i32) - 1) - zp.powi(-(n as i32) - 1))
                / Complex64::new(0.0, 2.0 * std::f64::consts::PI);
            (sign * fact * val).re
        };
        let s = SpatialProfile::lorentzian(l).unwrap().spectral().unwrap();
        let mut worst = 0.0f64;
        for i in 0..81 {
            let k = -10.0 / l + 20.0 / l * i as f64 / 80.0;
            let numeric = if k == 0.0 {
                // Exact arctan tail at k = 0.
                let x = 200.0 * l;
                let spec = QuadratureSpec::new(1e-13, 1e-13, 20_000).unwrap();
                let body = quadrature::integrate_1d(
                    |t| Complex64::new(f(t), 0.0),
                    (-x, x),
                    &spec,
                )
                .unwrap()
                .value;
                body + Complex64::new(1.0 - 2.0 * (x / l).atan() / std::f64::consts::PI, 0.0)
            } else {
                reference_transform(f, derivs, k, |k| (200.0 * l).max(40.0 / k.abs()))
            };
            let analytic = s.eval(k).unwrap();
            worst = worst.max((numeric - analytic).norm());
        }
        assert!(worst < 1e-8, "lorentzian transform residual {worst}");
    }

    #[test]
    fn tabulated_profile_transform_and_parseval() {
        let l = 1.0;
        let n = 1601;
        let x: Vec<f64> = (0..n).map(|i| -10.0 + 20.0 * i as f64 / (n - 1) as f64).collect();
        let v: Vec<Complex64> = x
            .iter()
            .map(|&t| Complex64::new((-0.5 * t * t / (l * l)).exp(), 0.0))
            .collect();
        let p = SpatialProfile::tabulated(x.clone(), v).unwrap();
        // Auto-normalised to unit integral.
        assert_relative_eq!(p.eval(0.0).unwrap().re, 1.0 / (l * SQRT_2PI), epsilon = 1e-9);
        let s = p.spectral().unwrap();
        assert!(matches!(s.provenance(), Provenance::Numeric(_)));
        for k in [0.0, 0.5, 1.0, 2.0, 4.0] {
            let analytic = (-0.5 * k * k * l * l).exp();
            assert!(
                (s.eval(k).unwrap().re - analytic).abs() < 1e-7,
                "tabulated transform at k = {k}"
            );
        }
        // Parseval: INT |F|^2 dx = (1/2pi) INT |F^|^2 dk.
        let spec = QuadratureSpec::new(1e-9, 1e-13, 8192).unwrap();
        let lhs = quadrature::integrate_1d(
            |t| {
                let f = p.eval(t).unwrap();
                Complex64::new(f.norm_sqr(), 0.0)
            },
            (-10.0, 10.0),
            &spec,
        )
        .unwrap()
        .value
        .re;
        let rhs = quadrature::integrate_1d(
            |k| {
                let f = s.eval(k).unwrap();
                Complex64::new(f.norm_sqr(), 0.0)
            },
            (-12.0, 12.0),
            &spec,
        )
        .unwrap()
        .value
        .re
            / (2.0 * std::f64::consts::PI);
        assert_relative_eq!(lhs, rhs, max_relative = 1e-6);
    }

    #[test]
    fn tabulated_grid_validation() {
        let bad_cover = SpatialProfile::tabulated(
            vec![-1.0, 0.0, 1.0],
            vec![
                Complex64::new(0.5, 0.0),
                Complex64::new(1.0, 0.0),
                Complex64::new(0.5, 0.0),
            ],
        );
        assert!(matches!(bad_cover, Err(ProfileError::InsufficientCoverage { .. })));
        let not_increasing = SpatialProfile::tabulated(
            vec![0.0, 0.0, 1.0],
            vec![Complex64::new(0.0, 0.0); 3],
        );
        assert!(not_increasing.is_err());
    }

    #[test]
    fn even_real_profiles_have_even_real_transform() {
        for p in [
            SpatialProfile::gaussian(2.0).unwrap(),
            SpatialProfile::lorentzian(0.5).unwrap(),
            SpatialProfile::gaussian(1.0).unwrap().modulate(4.0, 1.0).unwrap(),
        ] {
            let s = p.spectral().unwrap();
            for k in [0.1, 0.7, 2.0, 9.3] {
                let a = s.eval(k).unwrap();
                let b = s.eval(-k).unwrap();
                assert!((a - b).norm() < 1e-12);
                assert!(a.im.abs() < 1e-12);
            }
            assert!(s.is_even(1.0, 1e-12));
        }
    }

    #[test]
    fn spectral_zero_equals_spatial_integral() {
        // F^(0) = INT F dx = 1 for normalised envelopes.
        for p in [
            SpatialProfile::gaussian(3.0).unwrap(),
            SpatialProfile::lorentzian(1.1).unwrap(),
        ] {
            let s = p.spectral().unwrap();
            assert_relative_eq!(s.eval(0.0).unwrap().re, 1.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn parse_profile_text() {
        let text = "# comment\n-1.0 1.0e-15\n0.0 1.0 0.0\n1.0 1e-15 # trailing\n";
        let (x, v) = parse_columns(text, "inline").unwrap();
        assert_eq!(x, vec![-1.0, 0.0, 1.0]);
        assert_eq!(v[1], Complex64::new(1.0, 0.0));
        assert!(parse_columns("0.0 1.0 2.0 3.0\n", "inline").is_err());
        assert!(parse_columns("0.0 abc\n", "inline").is_err());
    }

    proptest! {
        #[test]
        fn transform_conjugate_symmetry(width in 0.2f64..3.0, center in -2.0f64..2.0, k in 0.01f64..8.0) {
            // Real profiles have F^(-k) = conj(F^(k)).
            let p = SpatialProfile::gaussian(width).unwrap().with_center(center).unwrap();
            let s = p.spectral().unwrap();
            let a = s.eval(k).unwrap();
            let b = s.eval(-k).unwrap();
            prop_assert!((a.conj() - b).norm() < 1e-12);
        }

        #[test]
        fn modulation_split_identity(width in 0.2f64..2.0, gap in 0.1f64..5.0, k in -6.0f64..6.0) {
            let env = SpatialProfile::gaussian(width).unwrap();
            let env_s = env.clone().spectral().unwrap();
            let m = env.modulate(gap, 1.0).unwrap().spectral().unwrap();
            let split = 0.5 * (env_s.eval(k - gap).unwrap() + env_s.eval(k + gap).unwrap());
            prop_assert!((m.eval(k).unwrap() - split).norm() < 1e-9);
        }
    }
}
