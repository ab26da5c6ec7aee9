//! Scenario files: sectioned key-value text (TOML), hand-authorable and
//! diff-friendly, with a JSON mirror for machine consumption.
//!
//! All physical inputs are interpreted in the units declared by the optional
//! `[units]` section (scale factors to internal natural units, applied only
//! at the I/O boundary); internally everything runs in natural units.

use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use udw_core::kinematics::TrajectoryFrame;
use udw_core::profiles::SpatialProfile;
use udw_core::response::{DetectorConfig, ResponseNumerics, WavepacketSpectrum};

/// A configuration error that names the offending field.
#[derive(Debug)]
pub struct ConfigError {
    pub field: String,
    pub message: String,
}

impl std::fmt::Display for ConfigError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.field, self.message)
    }
}

impl std::error::Error for ConfigError {}

fn err(field: &str, message: impl Into<String>) -> ConfigError {
    ConfigError { field: field.to_string(), message: message.into() }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RunMode {
    Profile,
    Respond,
    Scan,
    Qed,
}

impl std::fmt::Display for RunMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            RunMode::Profile => "profile",
            RunMode::Respond => "respond",
            RunMode::Scan => "scan",
            RunMode::Qed => "qed",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSection {
    pub mode: RunMode,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileSection {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub width: Option<f64>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub modulated: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub center: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub file: Option<PathBuf>,
}

fn is_false(b: &bool) -> bool {
    !b
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DetectorSection {
    pub gap: f64,
    pub coupling: f64,
    #[serde(default)]
    pub acceleration: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<f64>,
    pub window: [f64; 2],
    pub profile: ProfileSection,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PacketSection {
    pub carrier: f64,
    pub width: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScanSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub carriers: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub carrier_min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub carrier_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub carrier_count: Option<usize>,
    pub packet_width: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileRunSection {
    pub k_min: f64,
    pub k_max: f64,
    pub points: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QedSection {
    pub ground_file: PathBuf,
    pub excited_file: PathBuf,
    pub coupling_e: f64,
    pub p_min: f64,
    pub p_max: f64,
    pub p_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ir_cutoff: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KernelDumpSection {
    pub tau_points: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NumericsSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rel_tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abs_tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub include_negative: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_panels_1d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_panels_2d: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dir: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<OutputFormat>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Csv,
    Json,
    Both,
}

/// Scale factors from the scenario's units to internal natural units.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitsSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub length: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub time: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub run: Option<RunSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detector: Option<DetectorSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub packet: Option<PacketSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scan: Option<ScanSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile_run: Option<ProfileRunSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub qed: Option<QedSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kernel_dump: Option<KernelDumpSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub numerics: Option<NumericsSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub units: Option<UnitsSection>,
}

/// Unit conversions: internal = input * scale.
#[derive(Clone, Copy, Debug)]
pub struct UnitScales {
    pub length: f64,
    pub time: f64,
}

impl UnitScales {
    pub fn frequency(&self) -> f64 {
        1.0 / self.time
    }

    pub fn wavenumber(&self) -> f64 {
        1.0 / self.length
    }

    pub fn speed(&self) -> f64 {
        self.length / self.time
    }

    pub fn acceleration(&self) -> f64 {
        self.length / (self.time * self.time)
    }
}

impl Scenario {
    pub fn from_path(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| err("scenario", format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        toml::from_str(text).map_err(|e| err("scenario", format!("TOML parse error: {e}")))
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("scenario serialises")
    }

    pub fn unit_scales(&self) -> Result<UnitScales, ConfigError> {
        let u = self.units.clone().unwrap_or(UnitsSection { length: None, time: None });
        let length = u.length.unwrap_or(1.0);
        let time = u.time.unwrap_or(1.0);
        if !(length > 0.0) || !length.is_finite() {
            return Err(err("units.length", format!("must be positive (got {length})")));
        }
        if !(time > 0.0) || !time.is_finite() {
            return Err(err("units.time", format!("must be positive (got {time})")));
        }
        Ok(UnitScales { length, time })
    }

    fn detector(&self) -> Result<&DetectorSection, ConfigError> {
        self.detector.as_ref().ok_or_else(|| err("detector", "section is required for this run"))
    }

    /// Speed of light in internal units.
    pub fn light_speed(&self) -> Result<f64, ConfigError> {
        let scales = self.unit_scales()?;
        let det = self.detector()?;
        let c = det.c.unwrap_or(1.0) * scales.speed();
        if !(c > 0.0) || !c.is_finite() {
            return Err(err("detector.c", format!("must be positive (got {})", det.c.unwrap_or(1.0))));
        }
        Ok(c)
    }

    pub fn build_profile(&self, base_dir: &Path) -> Result<SpatialProfile, ConfigError> {
        let scales = self.unit_scales()?;
        let det = self.detector()?;
        let p = &det.profile;
        let width = p.width.map(|w| w * scales.length);
        let mut profile = match p.kind.as_str() {
            "delta" => SpatialProfile::delta(),
            "gaussian" => {
                let w = width.ok_or_else(|| err("detector.profile.width", "required for gaussian"))?;
                SpatialProfile::gaussian(w)
                    .map_err(|e| err("detector.profile.width", e.to_string()))?
            }
            "lorentzian" => {
                let w = width
                    .ok_or_else(|| err("detector.profile.width", "required for lorentzian"))?;
                SpatialProfile::lorentzian(w)
                    .map_err(|e| err("detector.profile.width", e.to_string()))?
            }
            "tabulated" => {
                let file = p
                    .file
                    .as_ref()
                    .ok_or_else(|| err("detector.profile.file", "required for tabulated"))?;
                let path = if file.is_absolute() { file.clone() } else { base_dir.join(file) };
                SpatialProfile::tabulated_from_path(&path)
                    .map_err(|e| err("detector.profile.file", e.to_string()))?
            }
            other => {
                return Err(err(
                    "detector.profile.kind",
                    format!("unknown kind {other:?} (expected delta|gaussian|lorentzian|tabulated)"),
                ))
            }
        };
        if let Some(center) = p.center {
            profile = profile
                .with_center(center * scales.length)
                .map_err(|e| err("detector.profile.center", e.to_string()))?;
        }
        if p.modulated {
            let gap = det.gap * scales.frequency();
            let c = self.light_speed()?;
            profile = profile
                .modulate(gap, c)
                .map_err(|e| err("detector.profile.modulated", e.to_string()))?;
        }
        Ok(profile)
    }

    pub fn build_detector_config(&self, base_dir: &Path) -> Result<DetectorConfig, ConfigError> {
        let scales = self.unit_scales()?;
        let det = self.detector()?;
        if !(det.gap > 0.0) || !det.gap.is_finite() {
            return Err(err("detector.gap", format!("must be positive (got {})", det.gap)));
        }
        if !det.coupling.is_finite() {
            return Err(err("detector.coupling", format!("must be finite (got {})", det.coupling)));
        }
        if det.acceleration < 0.0 || !det.acceleration.is_finite() {
            return Err(err(
                "detector.acceleration",
                format!("must be non-negative (got {})", det.acceleration),
            ));
        }
        if !(det.window[0] < det.window[1]) {
            return Err(err(
                "detector.window",
                format!("must satisfy t0 < t1 (got [{}, {}])", det.window[0], det.window[1]),
            ));
        }
        let c = self.light_speed()?;
        let profile = self.build_profile(base_dir)?;
        let frame = TrajectoryFrame::new(det.acceleration * scales.acceleration(), c)
            .map_err(|e| err("detector.acceleration", e.to_string()))?;
        let window = (det.window[0] * scales.time, det.window[1] * scales.time);
        let cfg = DetectorConfig::new(
            det.gap * scales.frequency(),
            det.coupling * scales.frequency(),
            profile,
            frame,
            window,
        )
        .map_err(|e| err("detector", e.to_string()))?;
        Ok(cfg.with_numerics(self.numerics_resolved()?))
    }

    pub fn numerics_resolved(&self) -> Result<ResponseNumerics, ConfigError> {
        let scales = self.unit_scales()?;
        let mut n = ResponseNumerics::default();
        if let Some(section) = &self.numerics {
            if let Some(v) = section.rel_tol {
                if !(v > 0.0) {
                    return Err(err("numerics.rel_tol", format!("must be positive (got {v})")));
                }
                n.rel_tol = v;
            }
            if let Some(v) = section.abs_tol {
                if !(v > 0.0) {
                    return Err(err("numerics.abs_tol", format!("must be positive (got {v})")));
                }
                n.abs_tol = v;
            }
            n.k_min = section.k_min.map(|v| v * scales.wavenumber());
            n.k_max = section.k_max.map(|v| v * scales.wavenumber());
            if let (Some(lo), Some(hi)) = (n.k_min, n.k_max) {
                if !(lo > 0.0 && lo < hi) {
                    return Err(err(
                        "numerics.k_min",
                        format!("need 0 < k_min < k_max (got {lo} and {hi})"),
                    ));
                }
            }
            if let Some(v) = section.include_negative {
                n.include_negative = v;
            }
            if let Some(v) = section.max_panels_1d {
                if v < 4 {
                    return Err(err("numerics.max_panels_1d", "must be at least 4"));
                }
                n.max_panels_1d = v;
            }
            if let Some(v) = section.max_panels_2d {
                if v < 4 {
                    return Err(err("numerics.max_panels_2d", "must be at least 4"));
                }
                n.max_panels_2d = v;
            }
        }
        Ok(n)
    }

    pub fn build_packet(&self) -> Result<WavepacketSpectrum, ConfigError> {
        let scales = self.unit_scales()?;
        let packet =
            self.packet.as_ref().ok_or_else(|| err("packet", "section is required for respond"))?;
        if !(packet.carrier > 0.0) {
            return Err(err("packet.carrier", format!("must be positive (got {})", packet.carrier)));
        }
        if !(packet.width > 0.0) {
            return Err(err("packet.width", format!("must be positive (got {})", packet.width)));
        }
        let c = self.light_speed()?;
        WavepacketSpectrum::gaussian(
            packet.carrier * scales.frequency() / c,
            packet.width * scales.frequency() / c,
        )
        .map_err(|e| err("packet", e.to_string()))
    }

    /// Carrier list of a scan, in internal frequency units.
    pub fn scan_carriers(&self) -> Result<(Vec<f64>, f64), ConfigError> {
        let scales = self.unit_scales()?;
        let scan = self.scan.as_ref().ok_or_else(|| err("scan", "section is required for scan"))?;
        if !(scan.packet_width > 0.0) {
            return Err(err(
                "scan.packet_width",
                format!("must be positive (got {})", scan.packet_width),
            ));
        }
        let carriers: Vec<f64> = if let Some(list) = &scan.carriers {
            if list.is_empty() {
                return Err(err("scan.carriers", "must not be empty"));
            }
            list.clone()
        } else {
            let lo = scan.carrier_min.ok_or_else(|| err("scan.carrier_min", "required"))?;
            let hi = scan.carrier_max.ok_or_else(|| err("scan.carrier_max", "required"))?;
            let n = scan.carrier_count.ok_or_else(|| err("scan.carrier_count", "required"))?;
            if !(lo > 0.0 && lo < hi) {
                return Err(err("scan.carrier_min", format!("need 0 < min < max (got {lo}, {hi})")));
            }
            if n < 2 {
                return Err(err("scan.carrier_count", "must be at least 2"));
            }
            (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
        };
        if carriers.iter().any(|&w| !(w > 0.0)) {
            return Err(err("scan.carriers", "all carriers must be positive"));
        }
        Ok((
            carriers.iter().map(|w| w * scales.frequency()).collect(),
            scan.packet_width * scales.frequency(),
        ))
    }

    pub fn output_dir(&self) -> PathBuf {
        self.output
            .as_ref()
            .and_then(|o| o.dir.clone())
            .unwrap_or_else(|| PathBuf::from("out"))
    }

    pub fn output_format(&self) -> OutputFormat {
        self.output.as_ref().and_then(|o| o.format).unwrap_or(OutputFormat::Both)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = r#"
[run]
mode = "respond"

[detector]
gap = 1.0
coupling = 0.01
acceleration = 0.0
window = [0.0, 20.0]

[detector.profile]
kind = "gaussian"
width = 5.0
modulated = true

[packet]
carrier = 1.0
width = 0.05

[numerics]
rel_tol = 1e-6

[output]
dir = "out"
format = "both"
"#;

    #[test]
    fn roundtrip_is_identity() {
        let s1 = Scenario::from_toml(EXAMPLE).unwrap();
        let text = s1.to_toml();
        let s2 = Scenario::from_toml(&text).unwrap();
        assert_eq!(s1, s2);
        let text2 = s2.to_toml();
        assert_eq!(text, text2);
    }

    #[test]
    fn builds_core_types() {
        let s = Scenario::from_toml(EXAMPLE).unwrap();
        let cfg = s.build_detector_config(Path::new(".")).unwrap();
        assert_eq!(cfg.gap(), 1.0);
        assert_eq!(cfg.window(), (0.0, 20.0));
        let y = s.build_packet().unwrap();
        assert!(y.support().0 > 0.0);
    }

    #[test]
    fn errors_name_the_field() {
        let bad = EXAMPLE.replace("gap = 1.0", "gap = -1.0");
        let s = Scenario::from_toml(&bad).unwrap();
        let e = s.build_detector_config(Path::new(".")).unwrap_err();
        assert_eq!(e.field, "detector.gap");
        let bad_width = EXAMPLE.replace("width = 5.0", "width = -2.0");
        let s = Scenario::from_toml(&bad_width).unwrap();
        let e = s.build_detector_config(Path::new(".")).unwrap_err();
        assert!(e.field.starts_with("detector.profile"));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let bad = EXAMPLE.replace("gap = 1.0", "gap = 1.0\ntypo_field = 3");
        assert!(Scenario::from_toml(&bad).is_err());
    }

    #[test]
    fn unit_scales_apply_at_the_boundary() {
        let with_units = format!("{EXAMPLE}\n[units]\nlength = 2.0\ntime = 4.0\n");
        let s = Scenario::from_toml(&with_units).unwrap();
        let cfg = s.build_detector_config(Path::new(".")).unwrap();
        // Frequencies scale as 1/time, lengths as length.
        assert!((cfg.gap() - 0.25).abs() < 1e-15);
        assert_eq!(cfg.window(), (0.0, 80.0));
        assert!((cfg.profile().characteristic_width().unwrap() - 10.0).abs() < 1e-12);
        // c defaults to 1 in scenario units = length/time internally.
        assert!((cfg.frame().c() - 0.5).abs() < 1e-15);
    }

    #[test]
    fn scan_carrier_grid() {
        let scan = r#"
[detector]
gap = 1.0
coupling = 0.01
window = [0.0, 5.0]

[detector.profile]
kind = "delta"

[scan]
carrier_min = 0.5
carrier_max = 1.5
carrier_count = 3
packet_width = 0.05
"#;
        let s = Scenario::from_toml(scan).unwrap();
        let (carriers, width) = s.scan_carriers().unwrap();
        assert_eq!(carriers, vec![0.5, 1.0, 1.5]);
        assert_eq!(width, 0.05);
    }
}
