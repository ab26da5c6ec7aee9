//! Correlation kernel W_y(tau', tau'') of the smeared field in a
//! one-particle wavepacket state, in two algebraically equivalent routes:
//! the literal three-term form (general profiles and packets) and the
//! cosine-combined two-term form (even spectral profiles, real packets).
//! The two routes share no integrand code, so their agreement is a genuine
//! cross-check of both the algebra and the quadrature.

use super::wavepacket::WavepacketSpectrum;
use super::{DetectorConfig, ResponseError};
use crate::kinematics::TrajectoryFrame;
use crate::profiles::{SpatialProfile, SpectralProfile};
use crate::quadrature::{self, PhaseHint, QuadratureSpec};
use num_complex::Complex64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// G+-(k, tau) = F^(+-L(k, tau)): the spectral profile at the chirped
/// argument of the rigid trajectory.
pub fn g_pm(
    profile: &SpatialProfile,
    sign: Sign,
    k: f64,
    tau: f64,
    frame: &TrajectoryFrame,
) -> Result<Complex64, ResponseError> {
    if k == 0.0 {
        return Err(ResponseError::ZeroWavenumber);
    }
    let spectral = profile.spectral()?;
    let l = frame.chirped_wavenumber(k, tau);
    let arg = match sign {
        Sign::Plus => l,
        Sign::Minus => -l,
    };
    Ok(spectral.eval(arg)?)
}

/// Shared evaluation state: resolved spectral profile, k-domain and
/// numerical policy for one (packet, detector) pair.
pub(crate) struct Engine {
    pub gap: f64,
    pub coupling: f64,
    pub frame: TrajectoryFrame,
    pub window: (f64, f64),
    pub spectral: SpectralProfile,
    pub intervals: Vec<(f64, f64)>,
    pub packet: WavepacketSpectrum,
    pub rel_tol: f64,
    pub max_panels_1d: usize,
    pub max_panels_2d: usize,
    pub c: f64,
}

impl Engine {
    pub fn new(packet: &WavepacketSpectrum, cfg: &DetectorConfig) -> Result<Self, ResponseError> {
        packet.check_normalized()?;
        let kdom = cfg.k_domain(Some(packet))?;
        Ok(Engine {
            gap: cfg.gap(),
            coupling: cfg.coupling(),
            frame: *cfg.frame(),
            window: cfg.window(),
            spectral: cfg.profile().spectral()?,
            intervals: kdom.intervals(),
            packet: packet.clone(),
            rel_tol: cfg.numerics().rel_tol,
            max_panels_1d: cfg.numerics().max_panels_1d,
            max_panels_2d: cfg.numerics().max_panels_2d,
            c: cfg.frame().c(),
        })
    }

    pub fn mu(&self, k: f64) -> f64 {
        (2.0 * (2.0 * std::f64::consts::PI) * self.c * k.abs()).sqrt().recip()
    }

    fn spectral_at(&self, arg: f64) -> Complex64 {
        // Inside quadrature closures a failed numeric transform surfaces as
        // a non-finite sample, which the engine reports as an error.
        self.spectral
            .eval(arg)
            .unwrap_or(Complex64::new(f64::NAN, f64::NAN))
    }

    /// G+(k,tau) e^{-i theta(k,tau)}: the creation-side mode function.
    pub fn mode_plus(&self, k: f64, tau: f64) -> Complex64 {
        let l = self.frame.chirped_wavenumber(k, tau);
        self.spectral_at(l) * Complex64::from_polar(1.0, -self.frame.center_phase(k, tau))
    }

    /// G-(k,tau) e^{+i theta(k,tau)}: the annihilation-side mode function.
    pub fn mode_minus(&self, k: f64, tau: f64) -> Complex64 {
        let l = self.frame.chirped_wavenumber(k, tau);
        self.spectral_at(-l) * Complex64::from_polar(1.0, self.frame.center_phase(k, tau))
    }

    /// Bound on |d theta / dk| over the given proper times (the k-space
    /// oscillation rate of the kernel integrands).
    pub fn k_rate(&self, taus: &[f64]) -> f64 {
        let a = self.frame.accel();
        taus.iter()
            .map(|&t| {
                if a == 0.0 {
                    self.c * t.abs()
                } else {
                    (self.c * self.c / a) * (a * t.abs() / self.c).exp_m1()
                }
            })
            .fold(0.0f64, f64::max)
    }

    /// Tolerances for the kernel-level k integrals: two decades tighter than
    /// the probability target so route-equivalence checks are meaningful.
    pub fn kernel_spec(&self, rate: f64) -> QuadratureSpec {
        let rel = (self.rel_tol * 1e-2).clamp(1e-12, 1e-8);
        QuadratureSpec::new(rel, 1e-18, self.max_panels_1d)
            .expect("validated tolerances")
            .with_phase_hint(PhaseHint::constant(rate.max(1e-12)))
    }

    fn not_converged(what: &'static str, err: f64) -> ResponseError {
        ResponseError::QuadratureFailure { what, error_estimate: err }
    }

    /// Packet leg INT dk conj(y) mu G+(k,tau) e^{-i theta}.
    pub fn phi_plus(&self, tau: f64) -> Result<Complex64, ResponseError> {
        let spec = self.kernel_spec(self.k_rate(&[tau]));
        let r = quadrature::integrate_1d(
            |k| self.packet.amplitude(k).conj() * self.mu(k) * self.mode_plus(k, tau),
            self.packet.support(),
            &spec,
        )?;
        if !r.converged {
            return Err(Self::not_converged("packet leg (+)", r.error_estimate));
        }
        Ok(r.value)
    }

    /// Packet leg INT dk y mu G-(k,tau) e^{+i theta}.
    pub fn phi_minus(&self, tau: f64) -> Result<Complex64, ResponseError> {
        let spec = self.kernel_spec(self.k_rate(&[tau]));
        let r = quadrature::integrate_1d(
            |k| self.packet.amplitude(k) * self.mu(k) * self.mode_minus(k, tau),
            self.packet.support(),
            &spec,
        )?;
        if !r.converged {
            return Err(Self::not_converged("packet leg (-)", r.error_estimate));
        }
        Ok(r.value)
    }

    /// Vacuum term B(tau', tau'') = INT dk mu^2 G+(k,tau') G-(k,tau'')
    /// e^{i[theta(k,tau'') - theta(k,tau')]} over the k-domain.
    pub fn w_vacuum(&self, tp: f64, ts: f64) -> Result<Complex64, ResponseError> {
        let spec = self.kernel_spec(2.0 * self.k_rate(&[tp, ts]));
        let mut acc = Complex64::new(0.0, 0.0);
        for &iv in &self.intervals {
            let r = quadrature::integrate_1d(
                |k| {
                    let m2 = self.mu(k);
                    m2 * m2 * self.mode_plus(k, tp) * self.mode_minus(k, ts)
                },
                iv,
                &spec,
            )?;
            if !r.converged {
                return Err(Self::not_converged("vacuum term", r.error_estimate));
            }
            acc += r.value;
        }
        Ok(acc)
    }

    /// The literal three-term kernel: packet cross terms evaluated as double
    /// integrals over the packet support, plus the vacuum term.
    pub fn w_general(&self, tp: f64, ts: f64) -> Result<Complex64, ResponseError> {
        let supp = self.packet.support();
        let rate = self.k_rate(&[tp, ts]);
        let spec2 = QuadratureSpec::new(
            (self.rel_tol * 1e-2).clamp(1e-12, 1e-8),
            1e-18,
            self.max_panels_2d,
        )
        .expect("validated tolerances")
        .with_phase_hint(PhaseHint::constant(rate.max(1e-12)));

        // A: weight conj(y(k)) y(kappa), modes G+(k,ts) G-(kappa,tp).
        let term_a = quadrature::integrate_2d(
            &|k: f64, kappa: f64| {
                self.packet.amplitude(k).conj()
                    * self.packet.amplitude(kappa)
                    * self.mu(k)
                    * self.mu(kappa)
                    * self.mode_plus(k, ts)
                    * self.mode_minus(kappa, tp)
            },
            supp,
            supp,
            &spec2,
        )?;
        if !term_a.converged {
            return Err(Self::not_converged("packet cross term A", term_a.error_estimate));
        }
        // C: same weight, modes G+(k,tp) G-(kappa,ts).
        let term_c = quadrature::integrate_2d(
            &|k: f64, kappa: f64| {
                self.packet.amplitude(k).conj()
                    * self.packet.amplitude(kappa)
                    * self.mu(k)
                    * self.mu(kappa)
                    * self.mode_plus(k, tp)
                    * self.mode_minus(kappa, ts)
            },
            supp,
            supp,
            &spec2,
        )?;
        if !term_c.converged {
            return Err(Self::not_converged("packet cross term C", term_c.error_estimate));
        }
        let term_b = self.w_vacuum(tp, ts)?;
        Ok(term_a.value + term_b + term_c.value)
    }

    /// Preconditions of the cosine-combined form: even spectral profile and
    /// real packet amplitude.
    pub fn check_symmetric_preconditions(&self) -> Result<(), ResponseError> {
        let k_scale = self.gap / self.c;
        if !self.spectral.is_even(k_scale, 1e-9) {
            return Err(ResponseError::PreconditionViolated(
                "spectral profile is not even-symmetric to 1e-9 (cosine form needs F^(k) = F^(-k))"
                    .into(),
            ));
        }
        if !self.packet.is_real() {
            return Err(ResponseError::PreconditionViolated(
                "wavepacket amplitude has an imaginary part (cosine form needs real y)".into(),
            ));
        }
        Ok(())
    }

    /// Cosine-combined kernel for even profiles and real packets: the two
    /// cross terms collapse into one cosine-weighted double integral
    /// (measure 1/((2 pi) c sqrt(|k||kappa|)) = 2 mu mu), the vacuum term is
    /// unchanged.
    pub fn w_symmetric(&self, tp: f64, ts: f64) -> Result<Complex64, ResponseError> {
        self.check_symmetric_preconditions()?;
        let supp = self.packet.support();
        let rate = self.k_rate(&[tp, ts]);
        let spec2 = QuadratureSpec::new(
            (self.rel_tol * 1e-2).clamp(1e-12, 1e-8),
            1e-18,
            self.max_panels_2d,
        )
        .expect("validated tolerances")
        .with_phase_hint(PhaseHint::constant(rate.max(1e-12)));
        let cross = quadrature::integrate_2d(
            &|k: f64, kappa: f64| {
                let g_k = self.spectral_at(self.frame.chirped_wavenumber(k, ts));
                let g_kappa = self.spectral_at(self.frame.chirped_wavenumber(kappa, tp));
                let angle =
                    self.frame.center_phase(kappa, tp) - self.frame.center_phase(k, ts);
                self.packet.amplitude(k)
                    * self.packet.amplitude(kappa)
                    * (2.0 * self.mu(k) * self.mu(kappa))
                    * g_k
                    * g_kappa
                    * angle.cos()
            },
            supp,
            supp,
            &spec2,
        )?;
        if !cross.converged {
            return Err(Self::not_converged("cosine cross term", cross.error_estimate));
        }
        Ok(cross.value + self.w_vacuum(tp, ts)?)
    }
}

/// W_y(tau', tau'') through the literal three-term route.
pub fn correlation_general(
    packet: &WavepacketSpectrum,
    cfg: &DetectorConfig,
    tau_prime: f64,
    tau_dprime: f64,
) -> Result<Complex64, ResponseError> {
    Engine::new(packet, cfg)?.w_general(tau_prime, tau_dprime)
}

/// W_y(tau', tau'') through the cosine-combined route (even spectral
/// profile, real packet).
pub fn correlation_symmetric(
    packet: &WavepacketSpectrum,
    cfg: &DetectorConfig,
    tau_prime: f64,
    tau_dprime: f64,
) -> Result<Complex64, ResponseError> {
    Engine::new(packet, cfg)?.w_symmetric(tau_prime, tau_dprime)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KernelVariant {
    General,
    CosSimplified,
}

/// A reusable correlation-kernel evaluator bound to one packet and detector.
pub struct CorrelationKernel {
    engine: Engine,
    variant: KernelVariant,
}

impl CorrelationKernel {
    pub fn new(
        packet: &WavepacketSpectrum,
        cfg: &DetectorConfig,
        variant: KernelVariant,
    ) -> Result<Self, ResponseError> {
        let engine = Engine::new(packet, cfg)?;
        if variant == KernelVariant::CosSimplified {
            engine.check_symmetric_preconditions()?;
        }
        Ok(CorrelationKernel { engine, variant })
    }

    pub fn variant(&self) -> KernelVariant {
        self.variant
    }

    pub fn eval(&self, tau_prime: f64, tau_dprime: f64) -> Result<Complex64, ResponseError> {
        match self.variant {
            KernelVariant::General => self.engine.w_general(tau_prime, tau_dprime),
            KernelVariant::CosSimplified => self.engine.w_symmetric(tau_prime, tau_dprime),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::response::ResponseNumerics;
    use approx::assert_relative_eq;

    fn gaussian_cfg(accel: f64, width: f64, modulated: bool) -> DetectorConfig {
        let mut profile = SpatialProfile::gaussian(width).unwrap();
        if modulated {
            profile = profile.modulate(1.0, 1.0).unwrap();
        }
        DetectorConfig::new(
            1.0,
            0.01,
            profile,
            TrajectoryFrame::new(accel, 1.0).unwrap(),
            (0.0, 5.0),
        )
        .unwrap()
    }

    fn narrow_numerics() -> ResponseNumerics {
        ResponseNumerics {
            k_min: Some(0.5),
            k_max: Some(1.5),
            include_negative: false,
            ..ResponseNumerics::default()
        }
    }

    #[test]
    fn g_pm_examples() {
        let frame = TrajectoryFrame::new(0.3, 1.0).unwrap();
        let gauss = SpatialProfile::gaussian(2.0).unwrap();
        // tau = 0: L = k, so G+- is the plain spectral profile.
        let k = 0.7f64;
        let expect = (-0.5 * k * k * 4.0).exp();
        assert_relative_eq!(
            g_pm(&gauss, Sign::Plus, k, 0.0, &frame).unwrap().re,
            expect,
            max_relative = 1e-13
        );
        // Even profile: G+ = G- pointwise.
        for tau in [-1.0, 0.4, 2.0] {
            let p = g_pm(&gauss, Sign::Plus, k, tau, &frame).unwrap();
            let m = g_pm(&gauss, Sign::Minus, k, tau, &frame).unwrap();
            assert!((p - m).norm() < 1e-14);
        }
        assert!(matches!(
            g_pm(&gauss, Sign::Plus, 0.0, 0.0, &frame),
            Err(ResponseError::ZeroWavenumber)
        ));
    }

    #[test]
    fn g_pm_on_resonance_chirped_modulated() {
        // k > 0 branch with k = (Omega/c) e^{a tau / c} lands the chirped
        // argument exactly on the carrier: G = (1 + e^{-2 Omega^2 L^2 / c^2})/2.
        let (om, l, a) = (1.0f64, 2.0f64, 0.4f64);
        let frame = TrajectoryFrame::new(a, 1.0).unwrap();
        let profile = SpatialProfile::gaussian(l).unwrap().modulate(om, 1.0).unwrap();
        let tau = 0.8;
        let k = om * (a * tau).exp();
        let got = g_pm(&profile, Sign::Plus, k, tau, &frame).unwrap();
        let expect = 0.5 * (1.0 + (-2.0 * om * om * l * l).exp());
        assert_relative_eq!(got.re, expect, max_relative = 1e-12);
        assert!(got.im.abs() < 1e-14);
    }

    #[test]
    fn kernel_is_hermitian_under_swap() {
        let cfg = gaussian_cfg(0.1, 1.0, false).with_numerics(narrow_numerics());
        let y = WavepacketSpectrum::gaussian(1.0, 0.12).unwrap();
        let engine = Engine::new(&y, &cfg).unwrap();
        let mut wmax = 0.0f64;
        let mut worst = 0.0f64;
        for (tp, ts) in [(0.0, 0.0), (0.3, 1.1), (1.0, 0.2), (2.0, 1.7)] {
            let w1 = engine.w_general(tp, ts).unwrap();
            let w2 = engine.w_general(ts, tp).unwrap();
            wmax = wmax.max(w1.norm());
            worst = worst.max((w1 - w2.conj()).norm());
        }
        assert!(worst < 1e-8 * wmax, "hermiticity residual {worst} vs scale {wmax}");
    }

    #[test]
    fn equal_time_diagonal_is_real_nonnegative() {
        let cfg = gaussian_cfg(0.0, 1.0, false).with_numerics(narrow_numerics());
        let y = WavepacketSpectrum::gaussian(1.0, 0.12).unwrap();
        let engine = Engine::new(&y, &cfg).unwrap();
        for tau in [0.0, 0.7, 2.5] {
            let w = engine.w_general(tau, tau).unwrap();
            assert!(w.im.abs() < 1e-10 * w.re.abs());
            assert!(w.re > 0.0);
        }
    }

    #[test]
    fn cos_form_matches_general_form() {
        for accel in [0.0, 0.08] {
            let cfg = gaussian_cfg(accel, 1.0, false).with_numerics(narrow_numerics());
            let y = WavepacketSpectrum::gaussian(1.0, 0.12).unwrap();
            let engine = Engine::new(&y, &cfg).unwrap();
            for (tp, ts) in [(0.0, 0.9), (0.5, 0.5), (1.8, 0.3)] {
                let a = engine.w_general(tp, ts).unwrap();
                let b = engine.w_symmetric(tp, ts).unwrap();
                assert!(
                    (a - b).norm() < 1e-6 * a.norm(),
                    "a = {accel}, ({tp},{ts}): {a} vs {b}"
                );
            }
        }
    }

    #[test]
    fn cos_form_preconditions() {
        // Complex packet rejected.
        let cfg = gaussian_cfg(0.0, 1.0, false).with_numerics(narrow_numerics());
        let k: Vec<f64> = (0..101).map(|i| 0.6 + 0.8 * i as f64 / 100.0).collect();
        let v: Vec<Complex64> = k
            .iter()
            .map(|&ki| Complex64::from_polar((-(ki - 1.0f64).powi(2) / 0.02).exp(), 2.0 * ki))
            .collect();
        let yc = WavepacketSpectrum::from_samples(k, v).unwrap();
        assert!(matches!(
            correlation_symmetric(&yc, &cfg, 0.1, 0.2),
            Err(ResponseError::PreconditionViolated(_))
        ));
        // Modulated profile (even) and delta profile (F^ = 1) are admissible.
        let y = WavepacketSpectrum::gaussian(1.0, 0.12).unwrap();
        let cfg_mod = gaussian_cfg(0.0, 1.0, true).with_numerics(narrow_numerics());
        assert!(CorrelationKernel::new(&y, &cfg_mod, KernelVariant::CosSimplified).is_ok());
        let cfg_delta = DetectorConfig::new(
            1.0,
            0.01,
            SpatialProfile::delta(),
            TrajectoryFrame::inertial(),
            (0.0, 5.0),
        )
        .unwrap()
        .with_numerics(narrow_numerics());
        assert!(CorrelationKernel::new(&y, &cfg_delta, KernelVariant::CosSimplified).is_ok());
        // An off-centre Gaussian has a complex (non-even) transform.
        let off = SpatialProfile::gaussian(1.0).unwrap().with_center(0.4).unwrap();
        let cfg_off = DetectorConfig::new(
            1.0,
            0.01,
            off,
            TrajectoryFrame::inertial(),
            (0.0, 5.0),
        )
        .unwrap()
        .with_numerics(narrow_numerics());
        assert!(matches!(
            correlation_symmetric(&y, &cfg_off, 0.1, 0.2),
            Err(ResponseError::PreconditionViolated(_))
        ));
    }

    #[test]
    fn kernel_struct_dispatches() {
        let cfg = gaussian_cfg(0.0, 1.0, false).with_numerics(narrow_numerics());
        let y = WavepacketSpectrum::gaussian(1.0, 0.12).unwrap();
        let kg = CorrelationKernel::new(&y, &cfg, KernelVariant::General).unwrap();
        let kc = CorrelationKernel::new(&y, &cfg, KernelVariant::CosSimplified).unwrap();
        let a = kg.eval(0.4, 1.2).unwrap();
        let b = kc.eval(0.4, 1.2).unwrap();
        assert!((a - b).norm() < 1e-6 * a.norm());
        assert_eq!(kg.variant(), KernelVariant::General);
    }
}
