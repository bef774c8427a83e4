//! Composite texture + frequency descriptors fed to the regressors.
//!
//! The fused vector holds the four co-occurrence statistics for each of the
//! four orientations, followed by the three spectral descriptors: 19 values.

mod glcm;
mod spectrum;

pub use glcm::{glcm, glcm_offset, glcm_stats, Glcm, GlcmStats, GLCM_ANGLES};
pub use spectrum::{dft2_magnitude, mid_band_energy, spectral_features, SpectralFeatures, Spectrum};

use crate::error::{Error, Result};
use crate::image::{normalize_unit, quantize, Image, QuantizedImage};

/// Number of values in a fused feature vector.
pub const FEATURE_LEN: usize = 19;

/// Column names for the fused layout, in order.
pub const FEATURE_NAMES: [&str; FEATURE_LEN] = [
    "contrast_0",
    "energy_0",
    "homogeneity_0",
    "correlation_0",
    "contrast_45",
    "energy_45",
    "homogeneity_45",
    "correlation_45",
    "contrast_90",
    "energy_90",
    "homogeneity_90",
    "correlation_90",
    "contrast_135",
    "energy_135",
    "homogeneity_135",
    "correlation_135",
    "low_freq_energy",
    "high_freq_energy",
    "spectral_entropy",
];

/// Fixed-length fused descriptor.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    values: [f64; FEATURE_LEN],
}

impl FeatureVector {
    pub fn from_parts(stats: &[GlcmStats; 4], spectral: &SpectralFeatures) -> Result<Self> {
        let mut values = [0.0; FEATURE_LEN];
        for (k, s) in stats.iter().enumerate() {
            values[4 * k] = s.contrast;
            values[4 * k + 1] = s.energy;
            values[4 * k + 2] = s.homogeneity;
            values[4 * k + 3] = s.correlation;
        }
        values[16] = spectral.low_freq_energy;
        values[17] = spectral.high_freq_energy;
        values[18] = spectral.spectral_entropy;
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::invalid(format!("non-finite feature value {bad}")));
        }
        Ok(FeatureVector { values })
    }

    pub fn from_values(values: [f64; FEATURE_LEN]) -> Self {
        FeatureVector { values }
    }

    pub fn values(&self) -> &[f64; FEATURE_LEN] {
        &self.values
    }
}

/// Co-occurrence statistics at distance 1 for all four orientations,
/// symmetric and normalized.
pub fn all_orientation_stats(q: &QuantizedImage) -> Result<[GlcmStats; 4]> {
    let mut out = [GlcmStats {
        contrast: 0.0,
        energy: 0.0,
        homogeneity: 0.0,
        correlation: 0.0,
    }; 4];
    for (k, &angle) in GLCM_ANGLES.iter().enumerate() {
        let g = glcm(q, 1, angle, true)?;
        out[k] = glcm_stats(&g)?;
    }
    Ok(out)
}

/// Default fusion: co-occurrence statistics on the quantized spatial image
/// and spectral descriptors on the DFT of the spatial image.
pub fn fuse_features(q: &QuantizedImage, img: &Image) -> Result<FeatureVector> {
    if q.width() != img.width() || q.height() != img.height() {
        return Err(Error::invalid(format!(
            "quantized {}x{} and spatial {}x{} images disagree",
            q.width(),
            q.height(),
            img.width(),
            img.height()
        )));
    }
    let stats = all_orientation_stats(q)?;
    let spectral = spectral_features(&dft2_magnitude(img))?;
    FeatureVector::from_parts(&stats, &spectral)
}

/// Sequential variant: the co-occurrence statistics are computed on the
/// centered log-magnitude spectrum instead of the spatial image. The spectral
/// descriptors still come from the same spectrum, so the vector layout is
/// unchanged.
pub fn fuse_features_on_spectrum(img: &Image, levels: usize) -> Result<FeatureVector> {
    let spec = dft2_magnitude(img).to_centered();
    let spectral = spectral_features(&spec)?;
    let log_mag: Vec<f64> = spec.magnitudes().iter().map(|m| m.ln_1p()).collect();
    let mag_img = Image::new(spec.width(), spec.height(), log_mag)?;
    let q = quantize(&normalize_unit(&mag_img), levels)?;
    let stats = all_orientation_stats(&q)?;
    FeatureVector::from_parts(&stats, &spectral)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image::{Image, QuantizedImage};

    #[test]
    fn fused_vector_has_fixed_layout() {
        let pixels: Vec<f64> = (0..64).map(|i| ((i * 31 + 7) % 64) as f64 / 63.0).collect();
        let img = Image::new(8, 8, pixels).unwrap();
        let q = quantize(&img, 8).unwrap();
        let fv = fuse_features(&q, &img).unwrap();
        assert_eq!(fv.values().len(), FEATURE_LEN);
        assert_eq!(FEATURE_NAMES.len(), FEATURE_LEN);
    }

    #[test]
    fn constant_image_fuses_to_known_vector() {
        let img = Image::filled(8, 8, 0.5).unwrap();
        let q = quantize(&img, 32).unwrap();
        let fv = fuse_features(&q, &img).unwrap();
        let v = fv.values();
        for k in 0..4 {
            assert_eq!(v[4 * k], 0.0, "contrast orientation {k}");
            assert_eq!(v[4 * k + 1], 1.0, "energy orientation {k}");
            assert_eq!(v[4 * k + 2], 1.0, "homogeneity orientation {k}");
            assert_eq!(v[4 * k + 3], 1.0, "correlation orientation {k}");
        }
        assert_eq!(v[16], 1.0);
        assert_eq!(v[17], 0.0);
        assert_eq!(v[18], 0.0);
    }

    #[test]
    fn fusion_equals_independently_computed_parts() {
        let pixels: Vec<f64> = (0..100)
            .map(|i| (((i * 17 + 3) % 41) as f64 / 40.0))
            .collect();
        let img = Image::new(10, 10, pixels).unwrap();
        let q = quantize(&img, 8).unwrap();
        let fv = fuse_features(&q, &img).unwrap();

        let stats = all_orientation_stats(&q).unwrap();
        let spectral = spectral_features(&dft2_magnitude(&img)).unwrap();
        for (k, s) in stats.iter().enumerate() {
            assert_eq!(fv.values()[4 * k], s.contrast);
            assert_eq!(fv.values()[4 * k + 1], s.energy);
            assert_eq!(fv.values()[4 * k + 2], s.homogeneity);
            assert_eq!(fv.values()[4 * k + 3], s.correlation);
        }
        assert_eq!(fv.values()[16], spectral.low_freq_energy);
        assert_eq!(fv.values()[17], spectral.high_freq_energy);
        assert_eq!(fv.values()[18], spectral.spectral_entropy);
    }

    #[test]
    fn size_mismatch_is_rejected() {
        let img = Image::filled(8, 8, 0.5).unwrap();
        let q = QuantizedImage::new(4, 4, 8, vec![1; 16]).unwrap();
        assert!(fuse_features(&q, &img).is_err());
    }

    #[test]
    fn spectrum_mode_produces_finite_vector() {
        let pixels: Vec<f64> = (0..256)
            .map(|i| (((i * 11 + 5) % 97) as f64 / 96.0))
            .collect();
        let img = Image::new(16, 16, pixels).unwrap();
        let fv = fuse_features_on_spectrum(&img, 16).unwrap();
        assert!(fv.values().iter().all(|v| v.is_finite()));
        // Spectral tail must match the default route: same spectrum either way.
        let q = quantize(&img, 16).unwrap();
        let base = fuse_features(&q, &img).unwrap();
        for k in 16..19 {
            assert!((fv.values()[k] - base.values()[k]).abs() < 1e-12);
        }
    }
}
