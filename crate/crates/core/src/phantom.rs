//! Synthetic transillumination phantom.
//!
//! Stands in for a laboratory rig: a Beer-Lambert attenuation model with
//! Gaussian absorption bands drives both the imaging and the photodiode
//! voltage generators. Band centers follow published glucose/water peaks;
//! band strengths, widths, and scatter coefficients are tunable synthetic
//! defaults, not measured values.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma, Normal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::image::Image;

/// One Gaussian absorption band.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Band {
    pub center_nm: f64,
    pub width_nm: f64,
    pub strength: f64,
}

impl Band {
    pub fn new(center_nm: f64, width_nm: f64, strength: f64) -> Self {
        Band {
            center_nm,
            width_nm,
            strength,
        }
    }

    /// Band contribution at a wavelength: `strength * exp(-((l-c)/w)^2 / 2)`.
    fn value_at(&self, wavelength_nm: f64) -> f64 {
        let z = (wavelength_nm - self.center_nm) / self.width_nm;
        self.strength * (-0.5 * z * z).exp()
    }
}

/// Illumination source family. Lasers carry multiplicative speckle; LEDs do
/// not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SourceKind {
    Laser,
    Led,
}

impl std::fmt::Display for SourceKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SourceKind::Laser => write!(f, "laser"),
            SourceKind::Led => write!(f, "led"),
        }
    }
}

impl std::str::FromStr for SourceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "laser" => Ok(SourceKind::Laser),
            "led" => Ok(SourceKind::Led),
            other => Err(Error::invalid(format!(
                "unknown source kind `{other}` (expected laser or led)"
            ))),
        }
    }
}

/// Optical parameters of one synthetic acquisition condition.
#[derive(Debug, Clone, PartialEq)]
pub struct OpticalConfig {
    pub wavelength_nm: f64,
    pub path_length_cm: f64,
    pub glucose_bands: Vec<Band>,
    pub water_bands: Vec<Band>,
    /// Concentration-independent scattering, 1/cm.
    pub scatter_coeff: f64,
    /// Concentration-dependent scattering, 1/cm per mg/dL. Carries the
    /// glucose signal at wavelengths far from the absorption bands.
    pub glucose_scatter_slope: f64,
    pub beam_sigma_px: f64,
    /// Speckle contrast (std/mean) applied for laser sources.
    pub speckle_contrast: f64,
    /// Additive sensor noise, in normalized intensity units.
    pub sensor_noise_sigma: f64,
    /// Peak beam intensity before attenuation, normalized units.
    pub peak_intensity: f64,
    pub source_kind: SourceKind,
}

/// Published absorption peak centers used for the default bands, nm.
pub const GLUCOSE_PEAKS_NM: [f64; 4] = [1408.0, 1536.0, 1688.0, 2261.0];
pub const WATER_PEAKS_NM: [f64; 3] = [1450.0, 1787.0, 1934.0];

impl OpticalConfig {
    /// Default imaging condition for one of the four source setups.
    pub fn imaging_default(wavelength_nm: f64, source_kind: SourceKind) -> Self {
        OpticalConfig {
            wavelength_nm,
            source_kind,
            ..OpticalConfig::base()
        }
    }

    /// Default photodiode condition: 1600 nm LED.
    pub fn voltage_default() -> Self {
        OpticalConfig {
            wavelength_nm: 1600.0,
            source_kind: SourceKind::Led,
            ..OpticalConfig::base()
        }
    }

    fn base() -> Self {
        // Strengths and widths are synthetic-world defaults chosen for a
        // usable dynamic range over 70-200 mg/dL, not measured coefficients.
        let glucose_bands = GLUCOSE_PEAKS_NM
            .iter()
            .map(|&c| Band::new(c, 60.0, 2.0e-3))
            .collect();
        let water_bands = vec![
            Band::new(WATER_PEAKS_NM[0], 70.0, 0.8),
            Band::new(WATER_PEAKS_NM[1], 70.0, 0.6),
            Band::new(WATER_PEAKS_NM[2], 90.0, 1.0),
        ];
        OpticalConfig {
            wavelength_nm: 850.0,
            path_length_cm: 1.0,
            glucose_bands,
            water_bands,
            scatter_coeff: 0.4,
            glucose_scatter_slope: 2.0e-3,
            beam_sigma_px: 40.0,
            speckle_contrast: 0.15,
            sensor_noise_sigma: 0.01,
            peak_intensity: 0.85,
            source_kind: SourceKind::Led,
        }
    }

    /// The four default acquisition conditions, in manifest order.
    pub fn default_sources() -> Vec<OpticalConfig> {
        vec![
            OpticalConfig::imaging_default(650.0, SourceKind::Laser),
            OpticalConfig::imaging_default(808.0, SourceKind::Laser),
            OpticalConfig::imaging_default(850.0, SourceKind::Laser),
            OpticalConfig::imaging_default(850.0, SourceKind::Led),
        ]
    }

    /// Manifest label for this condition, e.g. `650-laser`.
    pub fn source_label(&self) -> String {
        format!("{}-{}", self.wavelength_nm as i64, self.source_kind)
    }

    pub fn validate(&self) -> Result<()> {
        if !(400.0..=2500.0).contains(&self.wavelength_nm) {
            return Err(Error::invalid(format!(
                "wavelength {} nm outside 400-2500 nm",
                self.wavelength_nm
            )));
        }
        if !(self.path_length_cm > 0.0) {
            return Err(Error::invalid("path length must be positive"));
        }
        for b in self.glucose_bands.iter().chain(&self.water_bands) {
            if !(b.width_nm > 0.0) {
                return Err(Error::invalid(format!(
                    "band width must be positive, got {}",
                    b.width_nm
                )));
            }
            if b.strength < 0.0 {
                return Err(Error::invalid(format!(
                    "band strength must be nonnegative, got {}",
                    b.strength
                )));
            }
        }
        if self.scatter_coeff < 0.0 {
            return Err(Error::invalid("scatter coefficient must be nonnegative"));
        }
        if !(self.beam_sigma_px > 0.0) {
            return Err(Error::invalid("beam sigma must be positive"));
        }
        if !(0.0..=1.0).contains(&self.speckle_contrast) {
            return Err(Error::invalid("speckle contrast must be in [0, 1]"));
        }
        if self.sensor_noise_sigma < 0.0 {
            return Err(Error::invalid("sensor noise sigma must be nonnegative"));
        }
        if !(self.peak_intensity > 0.0 && self.peak_intensity <= 1.0) {
            return Err(Error::invalid("peak intensity must be in (0, 1]"));
        }
        Ok(())
    }
}

/// Absorption coefficient at the configured wavelength, 1/cm:
/// water bands plus `concentration *` glucose bands.
pub fn absorption_coefficient(config: &OpticalConfig, concentration: f64) -> f64 {
    let water: f64 = config
        .water_bands
        .iter()
        .map(|b| b.value_at(config.wavelength_nm))
        .sum();
    let glucose: f64 = config
        .glucose_bands
        .iter()
        .map(|b| b.value_at(config.wavelength_nm))
        .sum();
    water + concentration * glucose
}

/// Beer-Lambert transmittance in (0, 1]:
/// `exp(-(mu_a + mu_s + slope * c) * L)`.
pub fn transmittance(config: &OpticalConfig, concentration: f64) -> Result<f64> {
    let attenuation = absorption_coefficient(config, concentration)
        + config.scatter_coeff
        + config.glucose_scatter_slope * concentration;
    if attenuation < 0.0 {
        return Err(Error::invalid(format!(
            "negative effective attenuation {attenuation} would give T > 1"
        )));
    }
    Ok((-attenuation * config.path_length_cm).exp())
}

/// Synthetic transillumination frame: Gaussian beam times transmittance,
/// with multiplicative speckle for lasers and additive sensor noise, clamped
/// to `[0, 1]`. Identical inputs produce bit-identical images.
pub fn gen_image(
    config: &OpticalConfig,
    concentration: f64,
    width: usize,
    height: usize,
    seed: u64,
) -> Result<Image> {
    if width < 8 || height < 8 {
        return Err(Error::invalid(format!(
            "phantom images must be at least 8x8, got {width}x{height}"
        )));
    }
    let t = transmittance(config, concentration)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let speckle = if config.source_kind == SourceKind::Laser && config.speckle_contrast > 0.0 {
        let c2 = config.speckle_contrast * config.speckle_contrast;
        Some(Gamma::new(1.0 / c2, c2).expect("validated contrast"))
    } else {
        None
    };
    let noise = if config.sensor_noise_sigma > 0.0 {
        Some(Normal::new(0.0, config.sensor_noise_sigma).expect("validated sigma"))
    } else {
        None
    };
    let cx = (width as f64 - 1.0) / 2.0;
    let cy = (height as f64 - 1.0) / 2.0;
    let inv_two_sigma2 = 1.0 / (2.0 * config.beam_sigma_px * config.beam_sigma_px);
    let mut pixels = Vec::with_capacity(width * height);
    for y in 0..height {
        let dy = y as f64 - cy;
        for x in 0..width {
            let dx = x as f64 - cx;
            let beam = (-(dx * dx + dy * dy) * inv_two_sigma2).exp();
            let mut value = config.peak_intensity * beam * t;
            if let Some(g) = &speckle {
                value *= g.sample(&mut rng);
            }
            if let Some(n) = &noise {
                value += n.sample(&mut rng);
            }
            pixels.push(value.clamp(0.0, 1.0));
        }
    }
    Image::new(width, height, pixels)
}

/// Photodiode acquisition front-end: dark level, ambient offset, and the
/// transimpedance gain that converts transmitted intensity to volts.
#[derive(Debug, Clone, PartialEq)]
pub struct VoltageRig {
    pub dark_level_v: f64,
    pub ambient_offset_v: f64,
    pub gain_v: f64,
    pub noise_sigma_v: f64,
}

impl Default for VoltageRig {
    fn default() -> Self {
        VoltageRig {
            dark_level_v: 0.05,
            ambient_offset_v: 0.05,
            gain_v: 2.0,
            noise_sigma_v: 0.002,
        }
    }
}

/// One photodiode reading triple with its reference concentration.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VoltageSample {
    pub v_baseline: f64,
    pub v_pre: f64,
    pub v_post: f64,
    pub concentration_mgdl: f64,
}

/// Simulates one three-voltage acquisition. Deterministic per seed; the
/// transmitted term `(v_post - v_pre) / gain` decreases with concentration in
/// expectation.
pub fn gen_voltage_sample(
    config: &OpticalConfig,
    rig: &VoltageRig,
    concentration: f64,
    seed: u64,
) -> Result<VoltageSample> {
    let t = transmittance(config, concentration)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noise = if rig.noise_sigma_v > 0.0 {
        Some(Normal::new(0.0, rig.noise_sigma_v).expect("validated sigma"))
    } else {
        None
    };
    let mut draw = |rng: &mut ChaCha8Rng| noise.as_ref().map_or(0.0, |n| n.sample(rng));
    let v_baseline = (rig.dark_level_v + draw(&mut rng)).max(0.0);
    let v_pre = (v_baseline + rig.ambient_offset_v + draw(&mut rng)).max(v_baseline);
    let v_post = (v_pre + rig.gain_v * t * (1.0 + draw(&mut rng))).max(0.0);
    Ok(VoltageSample {
        v_baseline,
        v_pre,
        v_post,
        concentration_mgdl: concentration,
    })
}

/// Concentration sweep description shared by the dataset generators.
#[derive(Debug, Clone)]
pub struct ConcentrationSweep {
    pub min_mgdl: f64,
    pub max_mgdl: f64,
    pub step_mgdl: f64,
}

impl ConcentrationSweep {
    pub fn new(min_mgdl: f64, max_mgdl: f64, step_mgdl: f64) -> Result<Self> {
        if !(min_mgdl < max_mgdl) {
            return Err(Error::invalid(format!(
                "concentration range [{min_mgdl}, {max_mgdl}] is empty"
            )));
        }
        if !(step_mgdl > 0.0) {
            return Err(Error::invalid("concentration step must be positive"));
        }
        Ok(ConcentrationSweep {
            min_mgdl,
            max_mgdl,
            step_mgdl,
        })
    }

    /// Levels `min + k * step`, count `floor((max - min) / step) + 1`.
    pub fn levels(&self) -> Vec<f64> {
        let count = ((self.max_mgdl - self.min_mgdl) / self.step_mgdl).floor() as usize + 1;
        (0..count)
            .map(|k| self.min_mgdl + k as f64 * self.step_mgdl)
            .collect()
    }
}
