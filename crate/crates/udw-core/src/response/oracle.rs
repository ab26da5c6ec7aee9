//! Independent validation oracle: the field is discretised into a finite set
//! of modes on the configured k-domain, the ladder operators are realised
//! exactly on a sparse occupation-number basis, and the correlation kernel
//! is evaluated by direct operator algebra (no Wick expansion, no shared
//! integrand code with the continuum route).
//!
//! Midpoint cells discretise each k interval; a_j = a(k_j) sqrt(dk) carries
//! the canonical commutator, so the smeared field becomes
//!
//! ```text
//!     Psi(tau) = SUM_j sqrt(dk_j) mu(k_j) [ a_j G-(k_j,tau) e^{+i theta}
//!                                         + a_j+ G+(k_j,tau) e^{-i theta} ]
//! ```
//!
//! and |y> = SUM_j y(k_j) sqrt(dk_j) a_j+ |0>, renormalised exactly on the
//! discrete modes. Applying Psi once to a one-particle state reaches only
//! the 0- and 2-particle sectors, so the inner product
//! <y| Psi(tau'') Psi(tau') |y> = <Psi(tau'') y | Psi(tau') y> is exact on
//! the truncated basis; the discretisation error is pure midpoint error and
//! vanishes as O(dk^2).

use super::kernel::Engine;
use super::wavepacket::WavepacketSpectrum;
use super::{DetectorConfig, ResponseError};
use num_complex::Complex64;
use std::collections::BTreeMap;

/// Occupation-number basis state with at most two quanta.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
enum Occ {
    Vac,
    One(u32),
    /// Two quanta in modes (i, j) with i <= j; |2_i> is Two(i, i).
    Two(u32, u32),
}

/// Sparse state vector over the truncated occupation basis. BTreeMap keys
/// give a deterministic reduction order.
#[derive(Clone, Debug, Default)]
struct FockState {
    amp: BTreeMap<Occ, Complex64>,
}

impl FockState {
    fn add(&mut self, key: Occ, value: Complex64) {
        *self.amp.entry(key).or_insert(Complex64::new(0.0, 0.0)) += value;
    }

    /// a_j with the exact sqrt(n) factors.
    fn annihilate(&self, j: u32) -> FockState {
        let mut out = FockState::default();
        for (&key, &a) in &self.amp {
            match key {
                Occ::Vac => {}
                Occ::One(i) if i == j => out.add(Occ::Vac, a),
                Occ::One(_) => {}
                Occ::Two(i, l) if i == j && l == j => {
                    out.add(Occ::One(j), a * 2.0f64.sqrt())
                }
                Occ::Two(i, l) if i == j => out.add(Occ::One(l), a),
                Occ::Two(i, l) if l == j => out.add(Occ::One(i), a),
                Occ::Two(..) => {}
            }
        }
        out
    }

    /// a_j+ with the exact sqrt(n+1) factors; amplitudes that would leave
    /// the two-quantum basis are dropped (they cannot contribute to an inner
    /// product against a <= 2-quantum bra).
    fn create(&self, j: u32) -> FockState {
        let mut out = FockState::default();
        for (&key, &a) in &self.amp {
            match key {
                Occ::Vac => out.add(Occ::One(j), a),
                Occ::One(i) if i == j => out.add(Occ::Two(j, j), a * 2.0f64.sqrt()),
                Occ::One(i) => out.add(Occ::Two(i.min(j), i.max(j)), a),
                Occ::Two(..) => {}
            }
        }
        out
    }

    fn axpy(&mut self, coeff: Complex64, other: &FockState) {
        for (&key, &a) in &other.amp {
            self.add(key, coeff * a);
        }
    }

    fn inner(&self, other: &FockState) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (key, a) in &self.amp {
            if let Some(b) = other.amp.get(key) {
                acc += a.conj() * b;
            }
        }
        acc
    }
}

/// Exact ladder-algebra evaluator for a midpoint discretisation of the
/// configured k-domain into `n_modes` cells.
pub struct DiscreteModeOracle {
    engine: Engine,
    modes: Vec<f64>,
    sqrt_dk: Vec<f64>,
    coeffs: Vec<Complex64>,
}

impl DiscreteModeOracle {
    pub fn new(
        packet: &WavepacketSpectrum,
        cfg: &DetectorConfig,
        n_modes: usize,
    ) -> Result<Self, ResponseError> {
        assert!(n_modes >= 2, "oracle needs at least two modes");
        let engine = Engine::new(packet, cfg)?;
        let intervals = engine.intervals.clone();
        let total_len: f64 = intervals.iter().map(|&(a, b)| b - a).sum();
        let mut modes = Vec::with_capacity(n_modes);
        let mut sqrt_dk = Vec::with_capacity(n_modes);
        let mut remaining = n_modes;
        for (idx, &(a, b)) in intervals.iter().enumerate() {
            let n_here = if idx + 1 == intervals.len() {
                remaining
            } else {
                ((n_modes as f64) * (b - a) / total_len).round().max(1.0) as usize
            };
            remaining -= n_here.min(remaining);
            let dk = (b - a) / n_here as f64;
            for i in 0..n_here {
                modes.push(a + (i as f64 + 0.5) * dk);
                sqrt_dk.push(dk.sqrt());
            }
        }
        // |y> on the discrete modes, normalised exactly.
        let mut coeffs: Vec<Complex64> = modes
            .iter()
            .zip(&sqrt_dk)
            .map(|(&k, &s)| packet.amplitude(k) * s)
            .collect();
        let norm: f64 = coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(ResponseError::PacketNotNormalized { norm: 0.0 });
        }
        for c in coeffs.iter_mut() {
            *c /= norm;
        }
        Ok(DiscreteModeOracle { engine, modes, sqrt_dk, coeffs })
    }

    pub fn n_modes(&self) -> usize {
        self.modes.len()
    }

    fn packet_state(&self) -> FockState {
        let mut state = FockState::default();
        for (j, &c) in self.coeffs.iter().enumerate() {
            state.add(Occ::One(j as u32), c);
        }
        state
    }

    /// Psi(tau) applied by direct ladder action.
    fn apply_field(&self, tau: f64, state: &FockState) -> FockState {
        let mut out = FockState::default();
        for (j, &k) in self.modes.iter().enumerate() {
            let weight = self.sqrt_dk[j] * self.engine.mu(k);
            let m_minus = weight * self.engine.mode_minus(k, tau);
            let m_plus = weight * self.engine.mode_plus(k, tau);
            out.axpy(m_minus, &state.annihilate(j as u32));
            out.axpy(m_plus, &state.create(j as u32));
        }
        out
    }

    /// <y| Psi(tau'') Psi(tau') |y> by direct operator algebra.
    pub fn correlation(&self, tau_prime: f64, tau_dprime: f64) -> Complex64 {
        let y = self.packet_state();
        let ket = self.apply_field(tau_prime, &y);
        let bra = self.apply_field(tau_dprime, &y);
        bra.inner(&ket)
    }
}
