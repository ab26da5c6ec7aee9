//! Derives detector smearing functions and the Pauli-basis decomposition of
//! the minimal-coupling light-matter interaction from atomic wavefunctions.
//!
//! The momentum-coupling Hamiltonian of a two-level atom, written in the
//! atomic basis, splits into I, sigma_z, sigma_x, sigma_y channels whose
//! mode densities are built from the four matrix elements
//!
//! ```text
//!     G_ij(p) = INT dx e^{-i p x} eps(p) . ( Psi_i*(x) [-i grad Psi_j(x)] )
//! ```
//!
//! with i, j ranging over the ground/excited wavefunctions sampled on a
//! common grid:
//!
//! ```text
//!     alpha(p) = [G_gg + G_ee]/2        (identity channel)
//!     beta(p)  = [G_gg - G_ee]/2        (sigma_z channel)
//!     gamma(p) = [G_ge + G_eg]/2        (sigma_x channel)
//!     delta(p) = [G_ge - G_eg]/(2i)     (sigma_y channel)
//! ```
//!
//! The identity channel is removed by displacing the field modes,
//! b_p = a_p + e [G_gg(p) + G_ee(p)] / (2p)^{3/2}, which feeds constant
//! corrections back into the other channels:
//!
//! ```text
//!     alpha_gamma = (e^2/4) Re INT dp/p [G_gg* + G_ee*][G_ge + G_eg]
//!     alpha_delta = (e^2/4) Re INT dp/p [G_gg* + G_ee*][G_ge - G_eg]/i
//!     alpha_beta  = (e^2/4) Re INT dp/p [G_gg* + G_ee*][G_gg - G_ee]
//! ```
//!
//! alpha_beta renormalises the detector gap and is reported as `gap_shift`.
//! The 1/p measure makes these integrals infrared-divergent whenever the
//! densities stay finite at p = 0, so they carry a configurable IR cutoff
//! (default 1e-3 of the dominant wavenumber of the identity density) and the
//! result is reported together with its value at twice the cutoff.
//!
//! The equivalent detector smearing function is
//!
//! ```text
//!     F(x) = -i Psi_e*(x) grad Psi_g(x),
//! ```
//!
//! exposed both as a grid evaluator and as a tabulated spatial profile. When
//! the two wavefunctions coincide (a spin-split gap, where the orbital is
//! shared) the sigma_z density vanishes identically.
//!
//! Everything here is specialised to one spatial dimension; the hydrogenic
//! 1s example is handled on a radial grid in [`radial`], where the gradient
//! of a spherically symmetric orbital points along the radial unit vector
//! and the smearing magnitude for a shared 1s orbital works out to
//! exp(-2r/a0) / (pi a0^4).

use crate::grid::{self, ComplexSpline, GridError};
use crate::profiles::{ProfileError, SpatialProfile};
use crate::quadrature::{self, QuadratureSpec};
use num_complex::Complex64;
use rayon::prelude::*;
use std::path::Path;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum QedError {
    #[error("wavefunction is not unit-normalised: INT |Psi|^2 dx = {norm} (need 1 within 1e-8)")]
    NotNormalized { norm: f64 },
    #[error("wavefunction does not decay at the {end} grid end: |Psi|/max = {ratio:.3e} (need < 1e-10)")]
    BoundaryDecay { end: &'static str, ratio: f64 },
    #[error("wavefunctions must share the same grid")]
    GridMismatch,
    #[error("mode measure is singular at p = 0")]
    ZeroMomentum,
    #[error("p grid reaches below the IR cutoff: min |p| = {requested}, cutoff = {cutoff}")]
    IRCutoffRequired { requested: f64, cutoff: f64 },
    #[error("polarization vector is not unit-modulus at p = {p}: |eps| = {norm}")]
    InvalidPolarization { p: f64, norm: f64 },
    #[error("constant-term integral did not converge (error {error_estimate:.3e})")]
    QuadratureFailure { error_estimate: f64 },
    #[error("p grid must be non-empty and exclude p = 0")]
    EmptyMomentumGrid,
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Profile(#[from] ProfileError),
    #[error("{path}:{line}: {message}")]
    Parse { path: String, line: usize, message: String },
    #[error("failed to read wavefunction file: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StateLabel {
    Ground,
    Excited,
}

/// A wavefunction sampled on a strictly increasing 1-D grid, unit-normalised
/// and decaying below 1e-10 of its peak at both grid ends (so integration by
/// parts carries no boundary terms).
#[derive(Clone, Debug)]
pub struct WavefunctionGrid {
    x: Arc<Vec<f64>>,
    values: Vec<Complex64>,
    label: StateLabel,
}

impl WavefunctionGrid {
    pub fn new(x: Vec<f64>, values: Vec<Complex64>, label: StateLabel) -> Result<Self, QedError> {
        grid::validate_grid(&x)?;
        if x.len() != values.len() {
            return Err(GridError::LengthMismatch { x: x.len(), y: values.len() }.into());
        }
        let wf = WavefunctionGrid { x: Arc::new(x), values, label };
        let norm = wf.l2_norm_sq()?;
        if (norm - 1.0).abs() > 1e-8 {
            return Err(QedError::NotNormalized { norm });
        }
        wf.check_decay()?;
        Ok(wf)
    }

    /// Rescales the samples to unit L2 norm, then validates.
    pub fn normalized(
        x: Vec<f64>,
        mut values: Vec<Complex64>,
        label: StateLabel,
    ) -> Result<Self, QedError> {
        grid::validate_grid(&x)?;
        if x.len() != values.len() {
            return Err(GridError::LengthMismatch { x: x.len(), y: values.len() }.into());
        }
        let density: Vec<Complex64> =
            values.iter().map(|v| Complex64::new(v.norm_sqr(), 0.0)).collect();
        let norm = grid::integrate_sampled(&x, &density)?.re;
        if norm > 0.0 {
            let scale = norm.sqrt().recip();
            for v in values.iter_mut() {
                *v *= scale;
            }
        }
        Self::new(x, values, label)
    }

    /// Loads from whitespace-delimited text with columns `x  Re Psi  [Im Psi]`
    /// ('#' comments) and rescales to unit norm.
    pub fn from_path<P: AsRef<Path>>(path: P, label: StateLabel) -> Result<Self, QedError> {
        let text = std::fs::read_to_string(&path)?;
        let display = path.as_ref().display().to_string();
        let (x, values) = parse_columns(&text, &display)?;
        Self::normalized(x, values, label)
    }

    fn check_decay(&self) -> Result<(), QedError> {
        let peak = self.values.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
        let first = self.values.first().unwrap().norm() / peak;
        let last = self.values.last().unwrap().norm() / peak;
        if first >= 1e-10 {
            return Err(QedError::BoundaryDecay { end: "lower", ratio: first });
        }
        if last >= 1e-10 {
            return Err(QedError::BoundaryDecay { end: "upper", ratio: last });
        }
        Ok(())
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn label(&self) -> StateLabel {
        self.label
    }

    pub fn l2_norm_sq(&self) -> Result<f64, QedError> {
        let density: Vec<Complex64> =
            self.values.iter().map(|v| Complex64::new(v.norm_sqr(), 0.0)).collect();
        Ok(grid::integrate_sampled(&self.x, &density)?.re)
    }

    /// -i d/dx Psi on the grid (five-point interior stencils).
    pub fn momentum_action(&self) -> Result<Vec<Complex64>, QedError> {
        let g = grid::gradient_on_grid(&self.x, &self.values)?;
        Ok(g.into_iter().map(|v| v * Complex64::new(0.0, -1.0)).collect())
    }

    pub fn shares_grid(&self, other: &WavefunctionGrid) -> bool {
        Arc::ptr_eq(&self.x, &other.x) || *self.x == *other.x
    }

    /// Full width of the grid (used by the dipolar-regime check).
    pub fn extent(&self) -> f64 {
        self.x.last().unwrap() - self.x[0]
    }
}

fn parse_columns(text: &str, path: &str) -> Result<(Vec<f64>, Vec<Complex64>), QedError> {
    let mut xs = Vec::new();
    let mut vs = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 && fields.len() != 3 {
            return Err(QedError::Parse {
                path: path.to_string(),
                line: lineno + 1,
                message: format!("expected 2 or 3 columns, found {}", fields.len()),
            });
        }
        let parse = |s: &str| -> Result<f64, QedError> {
            s.parse::<f64>().map_err(|e| QedError::Parse {
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

/// Mode polarization for the 1-D reduction: a unit-modulus complex scalar
/// per wavenumber (the projection eps . v collapses to a single spatial
/// component in one dimension, and the polarization sum to one term).
#[derive(Clone)]
pub struct PolarizationSetup {
    epsilon: Arc<dyn Fn(f64) -> Complex64 + Send + Sync>,
}

impl std::fmt::Debug for PolarizationSetup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("PolarizationSetup(..)")
    }
}

impl PolarizationSetup {
    /// eps = 1 for every mode.
    pub fn scalar() -> Self {
        PolarizationSetup { epsilon: Arc::new(|_| Complex64::new(1.0, 0.0)) }
    }

    /// Custom unit-modulus polarization phase; checked on a sample of modes.
    pub fn new<F: Fn(f64) -> Complex64 + Send + Sync + 'static>(f: F) -> Result<Self, QedError> {
        for p in [-10.0, -1.0, -0.1, 0.1, 1.0, 10.0] {
            let n = f(p).norm();
            if (n - 1.0).abs() > 1e-12 {
                return Err(QedError::InvalidPolarization { p, norm: n });
            }
        }
        Ok(PolarizationSetup { epsilon: Arc::new(f) })
    }

    pub fn epsilon(&self, p: f64) -> Complex64 {
        (self.epsilon)(p)
    }

    /// Mode-measure weight 1/sqrt(2|p|).
    pub fn mode_measure(&self, p: f64) -> Result<f64, QedError> {
        if p == 0.0 {
            return Err(QedError::ZeroMomentum);
        }
        Ok(1.0 / (2.0 * p.abs()).sqrt())
    }
}

fn g_integral(
    psi_i: &WavefunctionGrid,
    momentum_j: &[Complex64],
    pol: &PolarizationSetup,
    p: f64,
) -> Result<Complex64, QedError> {
    let eps = pol.epsilon(p);
    let x = psi_i.x();
    let integrand: Vec<Complex64> = x
        .iter()
        .zip(psi_i.values().iter().zip(momentum_j))
        .map(|(&xi, (a, m))| Complex64::from_polar(1.0, -p * xi) * eps * a.conj() * m)
        .collect();
    Ok(grid::integrate_sampled(x, &integrand)?)
}

/// Matrix element G_ij(p) = INT dx e^{-ipx} eps(p) (Psi_i* [-i d/dx Psi_j]).
///
/// Both wavefunctions must share the grid, and the grid must resolve the
/// e^{-ipx} oscillation (|p| h well below 1).
pub fn matrix_element_g(
    psi_i: &WavefunctionGrid,
    psi_j: &WavefunctionGrid,
    pol: &PolarizationSetup,
    p: f64,
) -> Result<Complex64, QedError> {
    if !psi_i.shares_grid(psi_j) {
        return Err(QedError::GridMismatch);
    }
    let momentum_j = psi_j.momentum_action()?;
    g_integral(psi_i, &momentum_j, pol, p)
}

/// The smearing function F(x) = -i Psi_e*(x) d/dx Psi_g(x) on the shared grid.
#[derive(Clone, Debug)]
pub struct VectorSmearing {
    x: Arc<Vec<f64>>,
    values: Vec<Complex64>,
    spline: ComplexSpline,
}

impl VectorSmearing {
    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn eval(&self, at: f64) -> Complex64 {
        self.spline.eval(at)
    }

    /// The 1-D component as a tabulated spatial profile for the response
    /// pipeline. The smearing is complex in general, so no unit-integral
    /// normalisation is applied.
    pub fn to_profile(&self) -> Result<SpatialProfile, QedError> {
        Ok(SpatialProfile::tabulated((*self.x).clone(), self.values.clone())?)
    }
}

pub fn smearing_from_wavefunctions(
    psi_e: &WavefunctionGrid,
    psi_g: &WavefunctionGrid,
) -> Result<VectorSmearing, QedError> {
    if !psi_e.shares_grid(psi_g) {
        return Err(QedError::GridMismatch);
    }
    let momentum_g = psi_g.momentum_action()?;
    let values: Vec<Complex64> = psi_e
        .values()
        .iter()
        .zip(&momentum_g)
        .map(|(e, m)| e.conj() * m)
        .collect();
    let spline = ComplexSpline::new(psi_e.x(), &values)?;
    Ok(VectorSmearing { x: Arc::clone(&psi_e.x), values, spline })
}

/// Reported alongside every IR-regularised constant: its value when the
/// cutoff is doubled, to expose cutoff sensitivity.
#[derive(Clone, Copy, Debug)]
pub struct CutoffSensitivity {
    pub ir_cutoff: f64,
    pub alpha_gamma_doubled: f64,
    pub alpha_delta_doubled: f64,
    pub alpha_beta_doubled: f64,
}

/// Pauli-channel mode densities of the coupling, plus the displaced-vacuum
/// constants.
#[derive(Clone, Debug)]
pub struct HamiltonianDecomposition {
    psi_g: WavefunctionGrid,
    psi_e: WavefunctionGrid,
    pol: PolarizationSetup,
    coupling: f64,
    p_grid: Vec<f64>,
    g_gg: Vec<Complex64>,
    g_ee: Vec<Complex64>,
    g_ge: Vec<Complex64>,
    g_eg: Vec<Complex64>,
    pub alpha_gamma: f64,
    pub alpha_delta: f64,
    pub alpha_beta: f64,
    /// alpha_beta, reabsorbed into the detector gap.
    pub gap_shift: f64,
    pub sensitivity: CutoffSensitivity,
}

impl HamiltonianDecomposition {
    pub fn p_grid(&self) -> &[f64] {
        &self.p_grid
    }

    pub fn coupling(&self) -> f64 {
        self.coupling
    }

    pub fn g_gg(&self) -> &[Complex64] {
        &self.g_gg
    }

    pub fn g_ee(&self) -> &[Complex64] {
        &self.g_ee
    }

    pub fn g_ge(&self) -> &[Complex64] {
        &self.g_ge
    }

    pub fn g_eg(&self) -> &[Complex64] {
        &self.g_eg
    }

    pub fn alpha_density(&self, i: usize) -> Complex64 {
        0.5 * (self.g_gg[i] + self.g_ee[i])
    }

    pub fn beta_density(&self, i: usize) -> Complex64 {
        0.5 * (self.g_gg[i] - self.g_ee[i])
    }

    pub fn gamma_density(&self, i: usize) -> Complex64 {
        0.5 * (self.g_ge[i] + self.g_eg[i])
    }

    pub fn delta_density(&self, i: usize) -> Complex64 {
        (self.g_ge[i] - self.g_eg[i]) / Complex64::new(0.0, 2.0)
    }

    /// Displacement separating the dressed modes from the bare ones,
    /// e [G_gg(p) + G_ee(p)] / (2|p|)^{3/2}.
    pub fn vacuum_mode_shift(&self, p: f64) -> Result<Complex64, QedError> {
        if p == 0.0 {
            return Err(QedError::ZeroMomentum);
        }
        let mg = self.psi_g.momentum_action()?;
        let me = self.psi_e.momentum_action()?;
        let ggg = g_integral(&self.psi_g, &mg, &self.pol, p)?;
        let gee = g_integral(&self.psi_e, &me, &self.pol, p)?;
        Ok(self.coupling * (ggg + gee) / (2.0 * p.abs()).powf(1.5))
    }

    /// CSV export: a '#' header block with the constants and cutoff
    /// metadata, then one row per grid wavenumber with the four matrix
    /// elements and four channel densities.
    pub fn export_csv<W: std::io::Write>(&self, w: &mut W) -> std::io::Result<()> {
        writeln!(w, "# coupling_e = {}", self.coupling)?;
        writeln!(w, "# ir_cutoff = {}", self.sensitivity.ir_cutoff)?;
        writeln!(
            w,
            "# alpha_gamma = {} (at doubled cutoff: {})",
            self.alpha_gamma, self.sensitivity.alpha_gamma_doubled
        )?;
        writeln!(
            w,
            "# alpha_delta = {} (at doubled cutoff: {})",
            self.alpha_delta, self.sensitivity.alpha_delta_doubled
        )?;
        writeln!(
            w,
            "# alpha_beta = {} (at doubled cutoff: {})",
            self.alpha_beta, self.sensitivity.alpha_beta_doubled
        )?;
        writeln!(w, "# gap_shift = {}", self.gap_shift)?;
        writeln!(
            w,
            "p,re_G_gg,im_G_gg,re_G_ee,im_G_ee,re_G_ge,im_G_ge,re_G_eg,im_G_eg,\
             re_alpha,im_alpha,re_beta,im_beta,re_gamma,im_gamma,re_delta,im_delta"
        )?;
        for i in 0..self.p_grid.len() {
            let (a, b, g, d) = (
                self.alpha_density(i),
                self.beta_density(i),
                self.gamma_density(i),
                self.delta_density(i),
            );
            writeln!(
                w,
                "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
                self.p_grid[i],
                self.g_gg[i].re,
                self.g_gg[i].im,
                self.g_ee[i].re,
                self.g_ee[i].im,
                self.g_ge[i].re,
                self.g_ge[i].im,
                self.g_eg[i].re,
                self.g_eg[i].im,
                a.re,
                a.im,
                b.re,
                b.im,
                g.re,
                g.im,
                d.re,
                d.im,
            )?;
        }
        Ok(())
    }
}

/// Tabulates the four matrix elements over `p_grid` and assembles the
/// Pauli-channel densities and displaced-vacuum constants.
///
/// The default IR cutoff is 1e-3 of the dominant wavenumber of the identity
/// density (the |G_gg + G_ee| peak over the grid); `decompose_with_cutoff`
/// overrides it. Requesting grid points below the cutoff is an error.
pub fn decompose(
    psi_g: &WavefunctionGrid,
    psi_e: &WavefunctionGrid,
    pol: &PolarizationSetup,
    p_grid: &[f64],
    coupling: f64,
) -> Result<HamiltonianDecomposition, QedError> {
    decompose_with_cutoff(psi_g, psi_e, pol, p_grid, coupling, None)
}

pub fn decompose_with_cutoff(
    psi_g: &WavefunctionGrid,
    psi_e: &WavefunctionGrid,
    pol: &PolarizationSetup,
    p_grid: &[f64],
    coupling: f64,
    ir_cutoff: Option<f64>,
) -> Result<HamiltonianDecomposition, QedError> {
    if !psi_g.shares_grid(psi_e) {
        return Err(QedError::GridMismatch);
    }
    if p_grid.is_empty() || p_grid.iter().any(|&p| p == 0.0) {
        return Err(QedError::EmptyMomentumGrid);
    }
    let mg = psi_g.momentum_action()?;
    let me = psi_e.momentum_action()?;

    // The four tabulations are independent across wavenumbers; evaluate in
    // parallel and collect in grid order.
    let rows: Result<Vec<_>, QedError> = p_grid
        .par_iter()
        .map(|&p| {
            Ok((
                g_integral(psi_g, &mg, pol, p)?,
                g_integral(psi_e, &me, pol, p)?,
                g_integral(psi_g, &me, pol, p)?,
                g_integral(psi_e, &mg, pol, p)?,
            ))
        })
        .collect();
    let rows = rows?;
    let g_gg: Vec<Complex64> = rows.iter().map(|r| r.0).collect();
    let g_ee: Vec<Complex64> = rows.iter().map(|r| r.1).collect();
    let g_ge: Vec<Complex64> = rows.iter().map(|r| r.2).collect();
    let g_eg: Vec<Complex64> = rows.iter().map(|r| r.3).collect();

    // Dominant wavenumber of the identity density sets the IR cutoff scale.
    let mut p_dom = p_grid[0].abs();
    let mut best = -1.0;
    for (i, &p) in p_grid.iter().enumerate() {
        let mag = (g_gg[i] + g_ee[i]).norm();
        if mag > best {
            best = mag;
            p_dom = p.abs();
        }
    }
    let cutoff = ir_cutoff.unwrap_or(1e-3 * p_dom);
    let min_p = p_grid.iter().map(|p| p.abs()).fold(f64::INFINITY, f64::min);
    if min_p < cutoff {
        return Err(QedError::IRCutoffRequired { requested: min_p, cutoff });
    }
    let p_max = p_grid.iter().map(|p| p.abs()).fold(0.0f64, f64::max);

    let constants = |lo: f64| -> Result<(f64, f64, f64), QedError> {
        if coupling == 0.0 {
            return Ok((0.0, 0.0, 0.0));
        }
        let spec = QuadratureSpec::new(1e-9, 1e-12, 4096).expect("static spec");
        let eval_channel = |combine: &dyn Fn(Complex64, Complex64, Complex64, Complex64) -> Complex64|
         -> Result<f64, QedError> {
            let r = quadrature::integrate_1d(
                |p| {
                    let ggg = g_integral(psi_g, &mg, pol, p).unwrap_or_default();
                    let gee = g_integral(psi_e, &me, pol, p).unwrap_or_default();
                    let gge = g_integral(psi_g, &me, pol, p).unwrap_or_default();
                    let geg = g_integral(psi_e, &mg, pol, p).unwrap_or_default();
                    combine(ggg, gee, gge, geg) / p
                },
                (lo, p_max),
                &spec,
            )
            .map_err(|_| QedError::QuadratureFailure { error_estimate: f64::INFINITY })?;
            if !r.converged {
                return Err(QedError::QuadratureFailure { error_estimate: r.error_estimate });
            }
            Ok(0.25 * coupling * coupling * r.value.re)
        };
        let ag = eval_channel(&|ggg, gee, gge, geg| (ggg + gee).conj() * (gge + geg))?;
        let ad = eval_channel(&|ggg, gee, gge, geg| {
            (ggg + gee).conj() * ((gge - geg) / Complex64::new(0.0, 1.0))
        })?;
        let ab = eval_channel(&|ggg, gee, _, _| (ggg + gee).conj() * (ggg - gee))?;
        Ok((ag, ad, ab))
    };

    let (alpha_gamma, alpha_delta, alpha_beta) = constants(cutoff)?;
    let (ag2, ad2, ab2) = constants(2.0 * cutoff)?;

    Ok(HamiltonianDecomposition {
        psi_g: psi_g.clone(),
        psi_e: psi_e.clone(),
        pol: pol.clone(),
        coupling,
        p_grid: p_grid.to_vec(),
        g_gg,
        g_ee,
        g_ge,
        g_eg,
        alpha_gamma,
        alpha_delta,
        alpha_beta,
        gap_shift: alpha_beta,
        sensitivity: CutoffSensitivity {
            ir_cutoff: cutoff,
            alpha_gamma_doubled: ag2,
            alpha_delta_doubled: ad2,
            alpha_beta_doubled: ab2,
        },
    })
}

/// Analytic test orbitals sampled on uniform grids.
pub mod samples {
    use super::*;

    fn uniform(x_max: f64, n: usize) -> Vec<f64> {
        (0..n).map(|i| -x_max + 2.0 * x_max * i as f64 / (n - 1) as f64).collect()
    }

    /// Ground Gaussian orbital, (pi sigma^2)^{-1/4} e^{-x^2 / 2 sigma^2}.
    pub fn gaussian_ground(sigma: f64, x_max: f64, n: usize) -> WavefunctionGrid {
        let x = uniform(x_max, n);
        let norm = (std::f64::consts::PI * sigma * sigma).powf(-0.25);
        let v = x
            .iter()
            .map(|&t| Complex64::new(norm * (-0.5 * t * t / (sigma * sigma)).exp(), 0.0))
            .collect();
        WavefunctionGrid::normalized(x, v, StateLabel::Ground).expect("analytic sample is valid")
    }

    /// First excited oscillator orbital, sqrt(2) (x/sigma) times the ground.
    pub fn gaussian_excited(sigma: f64, x_max: f64, n: usize) -> WavefunctionGrid {
        let x = uniform(x_max, n);
        let norm = (std::f64::consts::PI * sigma * sigma).powf(-0.25) * 2.0f64.sqrt();
        let v = x
            .iter()
            .map(|&t| {
                Complex64::new(norm * (t / sigma) * (-0.5 * t * t / (sigma * sigma)).exp(), 0.0)
            })
            .collect();
        WavefunctionGrid::normalized(x, v, StateLabel::Excited).expect("analytic sample is valid")
    }

    /// Exponentially localised sech orbital, (2w)^{-1/2} sech(x/w).
    pub fn sech_ground(w: f64, x_max: f64, n: usize) -> WavefunctionGrid {
        let x = uniform(x_max, n);
        let norm = (2.0 * w).sqrt().recip();
        let v = x
            .iter()
            .map(|&t| Complex64::new(norm / (t / w).cosh(), 0.0))
            .collect();
        WavefunctionGrid::normalized(x, v, StateLabel::Ground).expect("analytic sample is valid")
    }
}

/// Radially symmetric orbitals: the gradient points along the radial unit
/// vector, so the smearing reduces to a scalar radial function times u_r.
pub mod radial {
    use super::*;

    /// Radial orbital R(r) on a grid from r = 0, normalised with the
    /// 4 pi r^2 measure.
    #[derive(Clone, Debug)]
    pub struct RadialWavefunction {
        r: Arc<Vec<f64>>,
        values: Vec<Complex64>,
    }

    impl RadialWavefunction {
        pub fn normalized(r: Vec<f64>, mut values: Vec<Complex64>) -> Result<Self, QedError> {
            grid::validate_grid(&r)?;
            if r.len() != values.len() {
                return Err(GridError::LengthMismatch { x: r.len(), y: values.len() }.into());
            }
            let density: Vec<Complex64> = r
                .iter()
                .zip(&values)
                .map(|(&ri, v)| {
                    Complex64::new(4.0 * std::f64::consts::PI * ri * ri * v.norm_sqr(), 0.0)
                })
                .collect();
            // Simpson rather than the natural spline: the 4 pi r^2 |Psi|^2
            // integrand has curvature at r = 0, where a natural end condition
            // would cost O(h^3) accuracy.
            let norm = grid::integrate_sampled_simpson(&r, &density)?.re;
            if norm > 0.0 {
                let scale = norm.sqrt().recip();
                for v in values.iter_mut() {
                    *v *= scale;
                }
            }
            let peak = values.iter().map(|v| v.norm()).fold(0.0f64, f64::max);
            let last = values.last().unwrap().norm() / peak;
            if last >= 1e-10 {
                return Err(QedError::BoundaryDecay { end: "upper", ratio: last });
            }
            Ok(RadialWavefunction { r: Arc::new(r), values })
        }

        pub fn r(&self) -> &[f64] {
            &self.r
        }

        pub fn values(&self) -> &[Complex64] {
            &self.values
        }
    }

    /// Hydrogenic 1s orbital e^{-r/a0} / sqrt(pi a0^3) sampled to `r_max`.
    pub fn hydrogen_1s(a0: f64, r_max: f64, n: usize) -> RadialWavefunction {
        let r: Vec<f64> = (0..n).map(|i| r_max * i as f64 / (n - 1) as f64).collect();
        let norm = (std::f64::consts::PI * a0 * a0 * a0).sqrt().recip();
        let v = r
            .iter()
            .map(|&ri| Complex64::new(norm * (-ri / a0).exp(), 0.0))
            .collect();
        RadialWavefunction::normalized(r, v).expect("hydrogenic sample is valid")
    }

    /// Radial component of the smearing, F_r(r) = -i R_e*(r) dR_g/dr.
    /// For a shared 1s orbital this is +i e^{-2r/a0} / (pi a0^4).
    pub fn radial_smearing(
        psi_e: &RadialWavefunction,
        psi_g: &RadialWavefunction,
    ) -> Result<Vec<Complex64>, QedError> {
        if !(Arc::ptr_eq(&psi_e.r, &psi_g.r) || *psi_e.r == *psi_g.r) {
            return Err(QedError::GridMismatch);
        }
        let grad = grid::gradient_on_grid(&psi_g.r, &psi_g.values)?;
        Ok(psi_e
            .values
            .iter()
            .zip(&grad)
            .map(|(e, g)| Complex64::new(0.0, -1.0) * e.conj() * g)
            .collect())
    }
}
