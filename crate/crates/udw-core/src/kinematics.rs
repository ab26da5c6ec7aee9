//! Fermi-Walker rigid-trajectory geometry for a uniformly accelerated
//! detector (or the inertial limit).
//!
//! The comoving chart (tau, chi) maps to lab coordinates through
//!
//! ```text
//!     t(tau, chi) = (c/a + chi/c) sinh(a tau / c)
//!     x(tau, chi) = (c^2/a + chi) cosh(a tau / c)
//! ```
//!
//! so every point of the detector keeps constant proper distance to the
//! centre worldline chi = 0 (rigidity), at the price of a chi-dependent
//! proper acceleration. The chart is valid for chi > -c^2/a; the constructor
//! checks the smearing support stays on this side of the horizon.
//!
//! A plane-wave phase evaluated on the chart factorises,
//!
//! ```text
//!     k x - c|k| t = L(k, tau) (chi + c^2/a),
//!     L(k, tau)    = k exp(-sign(k) a tau / c),
//! ```
//!
//! which is what turns the smearing integral into a spectral-profile
//! evaluation at the chirped argument L. Right- and left-movers chirp with
//! opposite exponents. (Substituting the coordinate map gives the decaying
//! exponent for k > 0; that sign also reproduces the stationary-phase
//! condition Omega = omega e^{-a tau / c}, so the chirped resonance is
//! omega_R(tau) = Omega e^{a tau / c}.)
//!
//! The inertial case a = 0 is an explicit analytic branch (t = tau, x = chi),
//! not a numerical limit, to avoid catastrophic cancellation in the c^2/a
//! terms.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum KinematicsError {
    #[error("proper acceleration must be finite and non-negative (got {accel})")]
    InvalidAcceleration { accel: f64 },
    #[error("speed of light must be positive (got {c})")]
    InvalidSpeed { c: f64 },
    #[error("detector extent {extent} reaches the Rindler horizon: need a*extent/c^2 < 1 (a = {accel}, c = {c})")]
    ExtentBeyondHorizon { accel: f64, c: f64, extent: f64 },
    #[error("chi = {chi} lies at or beyond the horizon chi = {horizon}")]
    HorizonCrossing { chi: f64, horizon: f64 },
    #[error("the phase factorisation is undefined at k = 0")]
    ZeroWavenumber,
}

/// Minkowski four-vector with signature (+, -, -, -).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourVector(pub [f64; 4]);

impl FourVector {
    pub fn minkowski_dot(&self, other: &FourVector) -> f64 {
        self.0[0] * other.0[0]
            - self.0[1] * other.0[1]
            - self.0[2] * other.0[2]
            - self.0[3] * other.0[3]
    }
}

/// Lab-frame image of a Fermi-Walker chart point.
#[derive(Clone, Copy, Debug)]
pub struct FermiWalkerEvent {
    pub tau: f64,
    pub chi: f64,
    pub t: f64,
    pub x: f64,
}

/// Uniform proper acceleration plus the Fermi-Walker chart; `accel == 0`
/// denotes the inertial worldline at the origin.
#[derive(Clone, Copy, Debug)]
pub struct TrajectoryFrame {
    accel: f64,
    c: f64,
}

impl TrajectoryFrame {
    pub fn new(accel: f64, c: f64) -> Result<Self, KinematicsError> {
        if !accel.is_finite() || accel < 0.0 {
            return Err(KinematicsError::InvalidAcceleration { accel });
        }
        if !(c > 0.0) || !c.is_finite() {
            return Err(KinematicsError::InvalidSpeed { c });
        }
        Ok(TrajectoryFrame { accel, c })
    }

    /// Natural units, inertial.
    pub fn inertial() -> Self {
        TrajectoryFrame { accel: 0.0, c: 1.0 }
    }

    /// Frame for a detector of the given smearing extent; rejects
    /// configurations whose support touches the horizon.
    pub fn for_extent(accel: f64, c: f64, extent: f64) -> Result<Self, KinematicsError> {
        let frame = Self::new(accel, c)?;
        frame.check_extent(extent)?;
        Ok(frame)
    }

    pub fn check_extent(&self, extent: f64) -> Result<(), KinematicsError> {
        if self.accel * extent / (self.c * self.c) >= 1.0 {
            return Err(KinematicsError::ExtentBeyondHorizon {
                accel: self.accel,
                c: self.c,
                extent,
            });
        }
        Ok(())
    }

    pub fn accel(&self) -> f64 {
        self.accel
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn is_inertial(&self) -> bool {
        self.accel == 0.0
    }

    /// Lab event of the chart point (tau, chi).
    pub fn event(&self, tau: f64, chi: f64) -> Result<FermiWalkerEvent, KinematicsError> {
        if self.is_inertial() {
            return Ok(FermiWalkerEvent { tau, chi, t: tau, x: chi });
        }
        let horizon = -self.c * self.c / self.accel;
        if chi <= horizon {
            return Err(KinematicsError::HorizonCrossing { chi, horizon });
        }
        let arg = self.accel * tau / self.c;
        Ok(FermiWalkerEvent {
            tau,
            chi,
            t: (self.c / self.accel + chi / self.c) * arg.sinh(),
            x: (self.c * self.c / self.accel + chi) * arg.cosh(),
        })
    }

    /// Four-velocity of the centre worldline, normalised to <u,u> = c^2.
    pub fn four_velocity(&self, tau: f64) -> FourVector {
        if self.is_inertial() {
            return FourVector([self.c, 0.0, 0.0, 0.0]);
        }
        let arg = self.accel * tau / self.c;
        FourVector([self.c * arg.cosh(), self.c * arg.sinh(), 0.0, 0.0])
    }

    /// The spatial leg of the comoving triad along the acceleration axis,
    /// e_chi = (sinh(a tau/c), cosh(a tau/c), 0, 0); a unit spacelike vector
    /// orthogonal to the four-velocity at every tau.
    pub fn dreibein(&self, tau: f64) -> FourVector {
        if self.is_inertial() {
            return FourVector([0.0, 1.0, 0.0, 0.0]);
        }
        let arg = self.accel * tau / self.c;
        FourVector([arg.sinh(), arg.cosh(), 0.0, 0.0])
    }

    /// Chirped spectral argument L(k, tau) = k e^{-sign(k) a tau / c}.
    pub fn chirped_wavenumber(&self, k: f64, tau: f64) -> f64 {
        if self.is_inertial() {
            return k;
        }
        k * (-k.signum() * self.accel * tau / self.c).exp()
    }

    /// Plane-wave phase k x - c |k| t at the chart point (tau, chi),
    /// computed from the exact coordinate map. Factorises as
    /// L(k, tau) (chi + c^2/a).
    pub fn phase(&self, k: f64, tau: f64, chi: f64) -> Result<f64, KinematicsError> {
        if k == 0.0 {
            return Err(KinematicsError::ZeroWavenumber);
        }
        let ev = self.event(tau, chi)?;
        Ok(k * ev.x - self.c * k.abs() * ev.t)
    }

    /// Phase accumulated at the detector centre relative to its tau = 0
    /// position: (c^2/a)[L(k, tau) - k], analytically continued to
    /// -c|k| tau for a = 0. This is the oscillatory weight that appears in
    /// the response integrals once the detector centre is translated to the
    /// lab origin.
    pub fn center_phase(&self, k: f64, tau: f64) -> f64 {
        if self.is_inertial() {
            return -self.c * k.abs() * tau;
        }
        let s = k.signum();
        (self.c * self.c / self.accel) * k * (-s * self.accel * tau / self.c).exp_m1()
    }

    /// Instantaneous lab frequency resonant with the detector gap,
    /// omega_R(tau) = Omega e^{a tau / c}.
    pub fn resonance_frequency(&self, gap: f64, tau: f64) -> f64 {
        assert!(gap > 0.0, "detector gap must be positive");
        if self.is_inertial() {
            return gap;
        }
        gap * (self.accel * tau / self.c).exp()
    }

    /// Proper distance between the chi = 0 and chi = d worldlines measured in
    /// the momentary rest frame at proper time tau, computed by numerically
    /// locating the simultaneous event on the chi = d worldline (no use of
    /// the chart's built-in simultaneity). Rigidity means this equals d.
    pub fn simultaneity_distance(&self, tau: f64, d: f64) -> Result<f64, KinematicsError> {
        let center = self.event(tau, 0.0)?;
        let u = self.four_velocity(tau);
        // Simultaneity condition: <X_d(tau_d) - X_0(tau), u(tau)> = 0,
        // solved for tau_d by bisection on a bracketing interval.
        let sep = |tau_d: f64| -> Result<f64, KinematicsError> {
            let e = self.event(tau_d, d)?;
            let dx = FourVector([self.c * (e.t - center.t), e.x - center.x, 0.0, 0.0]);
            Ok(dx.minkowski_dot(&u))
        };
        let mut lo = tau - 1.0;
        let mut hi = tau + 1.0;
        while sep(lo)?.signum() == sep(hi)?.signum() {
            let w = hi - lo;
            lo -= w;
            hi += w;
            if hi - lo > 1e6 {
                // Degenerate only if the worldlines never become simultaneous,
                // which cannot happen inside the chart's validity domain.
                break;
            }
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if sep(mid)?.signum() == sep(lo)?.signum() {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let e = self.event(0.5 * (lo + hi), d)?;
        let dx = FourVector([self.c * (e.t - center.t), e.x - center.x, 0.0, 0.0]);
        Ok((-dx.minkowski_dot(&dx)).sqrt())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    #[test]
    fn event_at_tau_zero() {
        let f = TrajectoryFrame::new(2.0, 1.0).unwrap();
        let e = f.event(0.0, 0.3).unwrap();
        assert_eq!(e.t, 0.0);
        assert_relative_eq!(e.x, 0.5 + 0.3, max_relative = 1e-15);
    }

    #[test]
    fn event_small_acceleration_limit() {
        let f = TrajectoryFrame::new(1e-9, 1.0).unwrap();
        let e = f.event(1.0, 0.0).unwrap();
        assert_relative_eq!(e.t, 1.0, max_relative = 1e-9);
        assert_relative_eq!(e.x, 1e9, max_relative = 1e-9);
    }

    #[test]
    fn event_unit_acceleration() {
        let f = TrajectoryFrame::new(1.0, 1.0).unwrap();
        let e = f.event(1.0, 0.0).unwrap();
        assert_relative_eq!(e.t, 1.0f64.sinh(), max_relative = 1e-15);
        assert_relative_eq!(e.x, 1.0f64.cosh(), max_relative = 1e-15);
        // Hyperbolic worldline: x^2 - c^2 t^2 = (c^2/a)^2.
        assert_relative_eq!(e.x * e.x - e.t * e.t, 1.0, max_relative = 1e-12);
    }

    #[test]
    fn inertial_branch_is_analytic() {
        let f = TrajectoryFrame::inertial();
        let e = f.event(2.5, -0.7).unwrap();
        assert_eq!((e.t, e.x), (2.5, -0.7));
    }

    #[test]
    fn horizon_crossing_rejected() {
        let f = TrajectoryFrame::new(1.0, 1.0).unwrap();
        assert!(matches!(
            f.event(0.0, -1.0),
            Err(KinematicsError::HorizonCrossing { .. })
        ));
        assert!(f.event(0.0, -0.999).is_ok());
    }

    #[test]
    fn extent_check() {
        assert!(TrajectoryFrame::for_extent(1.0, 1.0, 0.5).is_ok());
        assert!(matches!(
            TrajectoryFrame::for_extent(1.0, 1.0, 1.0),
            Err(KinematicsError::ExtentBeyondHorizon { .. })
        ));
    }

    #[test]
    fn dreibein_rest_frame_and_norm() {
        let f = TrajectoryFrame::new(0.7, 1.0).unwrap();
        assert_eq!(f.dreibein(0.0).0, [0.0, 1.0, 0.0, 0.0]);
        for tau in [-2.0, -0.3, 0.0, 1.1, 4.0] {
            let e = f.dreibein(tau);
            assert_relative_eq!(e.minkowski_dot(&e), -1.0, max_relative = 1e-12);
            let u = f.four_velocity(tau);
            assert!((e.minkowski_dot(&u)).abs() < 1e-12 * u.0[0].abs().max(1.0));
            assert_relative_eq!(u.minkowski_dot(&u), 1.0, max_relative = 1e-12);
        }
    }

    #[test]
    fn chirped_wavenumber_signs() {
        let f = TrajectoryFrame::new(0.5, 1.0).unwrap();
        let tau = 1.3;
        assert_relative_eq!(
            f.chirped_wavenumber(2.0, tau),
            2.0 * (-0.5 * tau).exp(),
            max_relative = 1e-15
        );
        assert_relative_eq!(
            f.chirped_wavenumber(-2.0, tau),
            -2.0 * (0.5 * tau).exp(),
            max_relative = 1e-15
        );
        assert_relative_eq!(f.chirped_wavenumber(2.0, 0.0), 2.0, max_relative = 1e-15);
    }

    #[test]
    fn phase_factorises() {
        for accel in [0.5, 1.0, 2.0] {
            let f = TrajectoryFrame::new(accel, 1.0).unwrap();
            for i in 0..10 {
                let k = -3.0 + 6.3 * i as f64 / 9.0;
                if k == 0.0 {
                    continue;
                }
                for j in 0..10 {
                    let tau = -1.5 + 3.0 * j as f64 / 9.0;
                    for l in 0..10 {
                        let chi = -0.4 + 0.8 * l as f64 / 9.0;
                        let phase = f.phase(k, tau, chi).unwrap();
                        let fact = f.chirped_wavenumber(k, tau) * (chi + 1.0 / accel);
                        assert!(
                            (phase - fact).abs() < 1e-10,
                            "a={accel} k={k} tau={tau} chi={chi}: {phase} vs {fact}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn phase_at_tau_zero_is_linear() {
        let f = TrajectoryFrame::new(1.0, 1.0).unwrap();
        let k = 2.2;
        let chi = 0.1;
        assert_relative_eq!(f.phase(k, 0.0, chi).unwrap(), k * (chi + 1.0), max_relative = 1e-12);
        assert!(matches!(f.phase(0.0, 0.0, 0.0), Err(KinematicsError::ZeroWavenumber)));
    }

    #[test]
    fn center_phase_matches_unregularised_difference() {
        // For a > 0 the centre phase is (c^2/a)(L - k); check against the
        // direct expression and the inertial continuation.
        let f = TrajectoryFrame::new(0.25, 1.0).unwrap();
        let k = 1.7;
        let tau = 0.9;
        let expect = (1.0 / 0.25) * (f.chirped_wavenumber(k, tau) - k);
        assert_relative_eq!(f.center_phase(k, tau), expect, max_relative = 1e-12);
        let tiny = TrajectoryFrame::new(1e-8, 1.0).unwrap();
        assert_relative_eq!(tiny.center_phase(k, tau), -k * tau, max_relative = 1e-7);
        assert_eq!(TrajectoryFrame::inertial().center_phase(-2.0, 3.0), -6.0);
    }

    #[test]
    fn resonance_frequency_cases() {
        let f = TrajectoryFrame::new(1.0, 1.0).unwrap();
        assert_eq!(f.resonance_frequency(1.0, 0.0), 1.0);
        assert_eq!(TrajectoryFrame::inertial().resonance_frequency(1.0, 5.0), 1.0);
        assert_relative_eq!(
            f.resonance_frequency(1.0, std::f64::consts::LN_2),
            2.0,
            max_relative = 1e-15
        );
    }

    #[test]
    fn rigidity_proper_distance() {
        let f = TrajectoryFrame::new(1.0, 1.0).unwrap();
        for tau in [0.0, 0.5, 1.0, 2.0] {
            let d = f.simultaneity_distance(tau, 0.4).unwrap();
            assert!((d - 0.4).abs() < 1e-10, "tau = {tau}: distance {d}");
        }
    }

    #[test]
    fn inertial_continuity_first_order() {
        // t(eps) - tau ~ eps * chi * tau / c^2 at fixed chi: slope 1 in eps.
        let tau = 1.5;
        let chi = 0.3;
        let mut gaps = Vec::new();
        for eps in [1e-3, 1e-4, 1e-5] {
            let f = TrajectoryFrame::new(eps, 1.0).unwrap();
            gaps.push((f.event(tau, chi).unwrap().t - tau).abs());
        }
        assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2]);
        let slope1 = (gaps[0] / gaps[1]).log10();
        let slope2 = (gaps[1] / gaps[2]).log10();
        assert!((slope1 - 1.0).abs() < 0.2, "order {slope1}");
        assert!((slope2 - 1.0).abs() < 0.2, "order {slope2}");
    }

    #[test]
    fn invalid_construction() {
        assert!(TrajectoryFrame::new(-1.0, 1.0).is_err());
        assert!(TrajectoryFrame::new(f64::NAN, 1.0).is_err());
        assert!(TrajectoryFrame::new(1.0, 0.0).is_err());
    }

    proptest! {
        #[test]
        fn worldline_stays_hyperbolic(accel in 0.1f64..1.5, tau in -2.0f64..2.0) {
            let f = TrajectoryFrame::new(accel, 1.0).unwrap();
            let e = f.event(tau, 0.0).unwrap();
            let r2 = 1.0 / (accel * accel);
            // x^2 - t^2 cancels catastrophically once cosh(a tau) is large;
            // keep a tau <= 3 so the identity is testable at 1e-10 relative.
            prop_assert!(((e.x * e.x - e.t * e.t) - r2).abs() < 1e-10 * r2.max(1.0));
        }

        #[test]
        fn factorisation_both_signs(accel in 0.2f64..3.0, k in prop::sample::select(vec![-4.0, -1.3, -0.2, 0.3, 1.9, 5.0]), tau in -2.0f64..2.0, chi in -0.3f64..0.3) {
            let f = TrajectoryFrame::new(accel, 1.0).unwrap();
            let phase = f.phase(k, tau, chi).unwrap();
            let fact = f.chirped_wavenumber(k, tau) * (chi + 1.0 / accel);
            prop_assert!((phase - fact).abs() < 1e-9 * fact.abs().max(1.0));
        }
    }
}
