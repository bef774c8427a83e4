//! 2D discrete Fourier magnitudes and frequency-domain descriptors.

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::image::Image;

/// Magnitude spectrum |F(u, v)| of an image.
///
/// Layout follows the unnormalized forward transform: index (0, 0) is the DC
/// bin unless `dc_centered` is set, in which case the spectrum has been
/// cyclically shifted so DC sits at (W/2, H/2).
#[derive(Debug, Clone)]
pub struct Spectrum {
    width: usize,
    height: usize,
    magnitudes: Vec<f64>,
    dc_centered: bool,
}

/// Band energies and entropy of a power spectrum.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralFeatures {
    pub low_freq_energy: f64,
    pub high_freq_energy: f64,
    pub spectral_entropy: f64,
}

impl Spectrum {
    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn magnitudes(&self) -> &[f64] {
        &self.magnitudes
    }

    pub fn dc_centered(&self) -> bool {
        self.dc_centered
    }

    pub fn get(&self, u: usize, v: usize) -> f64 {
        self.magnitudes[v * self.width + u]
    }

    /// Cyclic shift putting the DC bin at (W/2, H/2).
    pub fn to_centered(&self) -> Spectrum {
        if self.dc_centered {
            return self.clone();
        }
        let w = self.width;
        let h = self.height;
        let mut shifted = vec![0.0; w * h];
        for v in 0..h {
            for u in 0..w {
                let cu = (u + w / 2) % w;
                let cv = (v + h / 2) % h;
                shifted[cv * w + cu] = self.magnitudes[v * w + u];
            }
        }
        Spectrum {
            width: w,
            height: h,
            magnitudes: shifted,
            dc_centered: true,
        }
    }
}

/// Unnormalized forward 2D DFT magnitudes:
/// `F(u,v) = sum_x sum_y I(x,y) exp(-j 2 pi (u x / W + v y / H))`.
pub fn dft2_magnitude(img: &Image) -> Spectrum {
    let w = img.width();
    let h = img.height();
    let mut planner = FftPlanner::<f64>::new();
    let row_fft = planner.plan_fft_forward(w);
    let col_fft = planner.plan_fft_forward(h);

    let mut grid: Vec<Complex<f64>> = img
        .pixels()
        .iter()
        .map(|&p| Complex::new(p, 0.0))
        .collect();
    for row in grid.chunks_mut(w) {
        row_fft.process(row);
    }
    let mut column = vec![Complex::new(0.0, 0.0); h];
    for u in 0..w {
        for y in 0..h {
            column[y] = grid[y * w + u];
        }
        col_fft.process(&mut column);
        for y in 0..h {
            grid[y * w + u] = column[y];
        }
    }
    Spectrum {
        width: w,
        height: h,
        magnitudes: grid.iter().map(|c| c.norm()).collect(),
        dc_centered: false,
    }
}

/// Normalized radius of bin (u, v) measured cyclically from DC, scaled so the
/// Nyquist corner sits at 1.
fn normalized_radius(u: usize, v: usize, w: usize, h: usize) -> f64 {
    let du = u.min(w - u) as f64; // cyclic distance from DC along u
    let dv = v.min(h - v) as f64;
    let nu = (w / 2).max(1) as f64;
    let nv = (h / 2).max(1) as f64;
    ((du / nu).powi(2) + (dv / nv).powi(2)).sqrt() / std::f64::consts::SQRT_2
}

/// Band energies and entropy of the normalized power spectrum.
///
/// With `p(u,v) = |F|^2 / sum |F|^2` and rho the normalized radius from DC:
/// low band is `rho <= 0.25`, high band is `rho > 0.5`, and entropy is the
/// Shannon entropy of `p` scaled by `log2(W*H)` into `[0, 1]`.
pub fn spectral_features(s: &Spectrum) -> Result<SpectralFeatures> {
    let w = s.width;
    let h = s.height;
    let total: f64 = s.magnitudes.iter().map(|m| m * m).sum();
    if total <= 0.0 {
        return Err(Error::invalid("spectrum has zero total energy"));
    }
    let mut low = 0.0;
    let mut high = 0.0;
    let mut entropy = 0.0;
    for v in 0..h {
        for u in 0..w {
            // Radii are defined on the raw layout; undo centering if needed.
            let (ru, rv) = if s.dc_centered {
                ((u + w - w / 2) % w, (v + h - h / 2) % h)
            } else {
                (u, v)
            };
            let rho = normalized_radius(ru, rv, w, h);
            let m = s.magnitudes[v * w + u];
            let p = (m * m) / total;
            if rho <= 0.25 {
                low += p;
            } else if rho > 0.5 {
                high += p;
            }
            if p > 0.0 {
                entropy -= p * p.log2();
            }
        }
    }
    let bins = (w * h) as f64;
    let entropy = if bins > 1.0 { entropy / bins.log2() } else { 0.0 };
    Ok(SpectralFeatures {
        low_freq_energy: low,
        high_freq_energy: high,
        spectral_entropy: entropy,
    })
}

/// Energy in the implicit middle band `0.25 < rho <= 0.5`.
pub fn mid_band_energy(s: &Spectrum) -> Result<f64> {
    let f = spectral_features(s)?;
    Ok(1.0 - f.low_freq_energy - f.high_freq_energy)
}
