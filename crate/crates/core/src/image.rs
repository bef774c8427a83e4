//! Grayscale image representation, preprocessing, and augmentation.
//!
//! Pixels are stored row-major as `f64` intensities. Preprocessing keeps the
//! `[0, 1]` convention: loaders normalize by the sample maxval, and every
//! augmentation clamps its output back into `[0, 1]`.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rand::SeedableRng;

use crate::error::{Error, Result};

/// 2D grayscale intensity field.
#[derive(Debug, Clone, PartialEq)]
pub struct Image {
    width: usize,
    height: usize,
    pixels: Vec<f64>,
}

impl Image {
    pub fn new(width: usize, height: usize, pixels: Vec<f64>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::invalid(format!(
                "image dimensions must be >= 1, got {width}x{height}"
            )));
        }
        if pixels.len() != width * height {
            return Err(Error::invalid(format!(
                "pixel buffer length {} does not match {width}x{height}",
                pixels.len()
            )));
        }
        Ok(Image {
            width,
            height,
            pixels,
        })
    }

    pub fn filled(width: usize, height: usize, value: f64) -> Result<Self> {
        Image::new(width, height, vec![value; width * height])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn pixels(&self) -> &[f64] {
        &self.pixels
    }

    pub fn pixels_mut(&mut self) -> &mut [f64] {
        &mut self.pixels
    }

    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.pixels[y * self.width + x]
    }

    pub fn mean(&self) -> f64 {
        self.pixels.iter().sum::<f64>() / self.pixels.len() as f64
    }

    /// Bilinear sample with edge clamping at fractional coordinates.
    fn sample_bilinear(&self, x: f64, y: f64) -> f64 {
        let clamp_x = |v: i64| v.clamp(0, self.width as i64 - 1) as usize;
        let clamp_y = |v: i64| v.clamp(0, self.height as i64 - 1) as usize;
        let x0 = x.floor();
        let y0 = y.floor();
        let fx = x - x0;
        let fy = y - y0;
        let x0i = x0 as i64;
        let y0i = y0 as i64;
        let p00 = self.get(clamp_x(x0i), clamp_y(y0i));
        let p10 = self.get(clamp_x(x0i + 1), clamp_y(y0i));
        let p01 = self.get(clamp_x(x0i), clamp_y(y0i + 1));
        let p11 = self.get(clamp_x(x0i + 1), clamp_y(y0i + 1));
        let top = p00 + fx * (p10 - p00);
        let bottom = p01 + fx * (p11 - p01);
        top + fy * (bottom - top)
    }
}

/// Image quantized to `levels` gray codes.
#[derive(Debug, Clone, PartialEq)]
pub struct QuantizedImage {
    width: usize,
    height: usize,
    levels: usize,
    codes: Vec<usize>,
}

impl QuantizedImage {
    pub fn new(width: usize, height: usize, levels: usize, codes: Vec<usize>) -> Result<Self> {
        if levels < 2 {
            return Err(Error::invalid(format!(
                "quantization needs at least 2 gray levels, got {levels}"
            )));
        }
        if codes.len() != width * height {
            return Err(Error::invalid(format!(
                "code buffer length {} does not match {width}x{height}",
                codes.len()
            )));
        }
        if let Some(&bad) = codes.iter().find(|&&c| c >= levels) {
            return Err(Error::invalid(format!(
                "code {bad} out of range for {levels} gray levels"
            )));
        }
        Ok(QuantizedImage {
            width,
            height,
            levels,
            codes,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn codes(&self) -> &[usize] {
        &self.codes
    }

    pub fn get(&self, x: usize, y: usize) -> usize {
        self.codes[y * self.width + x]
    }
}

/// Bilinear resize with pixel-center alignment and edge clamping.
///
/// Destination pixel centers map to source coordinates via
/// `src = (dst + 0.5) * (src_dim / dst_dim) - 0.5`.
pub fn resize_bilinear(img: &Image, out_w: usize, out_h: usize) -> Result<Image> {
    if out_w == 0 || out_h == 0 {
        return Err(Error::invalid(format!(
            "resize target must be >= 1, got {out_w}x{out_h}"
        )));
    }
    let sx = img.width as f64 / out_w as f64;
    let sy = img.height as f64 / out_h as f64;
    let mut pixels = Vec::with_capacity(out_w * out_h);
    for oy in 0..out_h {
        let src_y = (oy as f64 + 0.5) * sy - 0.5;
        for ox in 0..out_w {
            let src_x = (ox as f64 + 0.5) * sx - 0.5;
            pixels.push(img.sample_bilinear(src_x, src_y));
        }
    }
    Image::new(out_w, out_h, pixels)
}

/// Min-max normalization to `[0, 1]`; a constant image maps to all zeros.
pub fn normalize_unit(img: &Image) -> Image {
    let min = img.pixels.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = img.pixels.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let range = max - min;
    let pixels = if range > 0.0 {
        img.pixels.iter().map(|p| (p - min) / range).collect()
    } else {
        vec![0.0; img.pixels.len()]
    };
    Image {
        width: img.width,
        height: img.height,
        pixels,
    }
}

/// Quantizes a `[0, 1]` image to `levels` codes: `min(floor(p * G), G - 1)`.
pub fn quantize(img: &Image, levels: usize) -> Result<QuantizedImage> {
    if levels < 2 {
        return Err(Error::invalid(format!(
            "quantization needs at least 2 gray levels, got {levels}"
        )));
    }
    if let Some(&bad) = img
        .pixels
        .iter()
        .find(|p| !p.is_finite() || **p < 0.0 || **p > 1.0)
    {
        return Err(Error::invalid(format!(
            "quantize expects pixels in [0, 1], found {bad}"
        )));
    }
    let codes = img
        .pixels
        .iter()
        .map(|&p| ((p * levels as f64).floor() as usize).min(levels - 1))
        .collect();
    Ok(QuantizedImage {
        width: img.width,
        height: img.height,
        levels,
        codes,
    })
}

/// Contrast augmentation about the image mean: `p' = mean + gain * (p - mean)`,
/// clamped to `[0, 1]`.
pub fn aug_contrast(img: &Image, gain: f64) -> Result<Image> {
    if !(gain > 0.0) {
        return Err(Error::invalid(format!(
            "contrast gain must be positive, got {gain}"
        )));
    }
    let mean = img.mean();
    let pixels = img
        .pixels
        .iter()
        .map(|&p| (mean + gain * (p - mean)).clamp(0.0, 1.0))
        .collect();
    Ok(Image {
        width: img.width,
        height: img.height,
        pixels,
    })
}

/// Rotation about the image center with bilinear sampling and edge-clamp
/// padding. Positive angles rotate image content counterclockwise.
pub fn aug_rotate(img: &Image, angle_deg: f64) -> Image {
    let theta = angle_deg.to_radians();
    let (sin, cos) = theta.sin_cos();
    let cx = (img.width as f64 - 1.0) / 2.0;
    let cy = (img.height as f64 - 1.0) / 2.0;
    let mut pixels = Vec::with_capacity(img.pixels.len());
    for y in 0..img.height {
        let dy = y as f64 - cy;
        for x in 0..img.width {
            let dx = x as f64 - cx;
            // Inverse mapping: rotate the destination offset back by theta.
            let src_x = cx + cos * dx + sin * dy;
            let src_y = cy - sin * dx + cos * dy;
            pixels.push(img.sample_bilinear(src_x, src_y));
        }
    }
    Image {
        width: img.width,
        height: img.height,
        pixels,
    }
}

/// Additive Gaussian pixel noise, clamped to `[0, 1]`, deterministic per seed.
pub fn aug_noise(img: &Image, sigma: f64, seed: u64) -> Result<Image> {
    if sigma < 0.0 {
        return Err(Error::invalid(format!(
            "noise sigma must be nonnegative, got {sigma}"
        )));
    }
    if sigma == 0.0 {
        return Ok(img.clone());
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let normal = Normal::new(0.0, sigma).expect("validated sigma");
    let pixels = img
        .pixels
        .iter()
        .map(|&p| (p + normal.sample(&mut rng)).clamp(0.0, 1.0))
        .collect();
    Ok(Image {
        width: img.width,
        height: img.height,
        pixels,
    })
}

/// Parameter ranges for randomized augmentation draws.
#[derive(Debug, Clone)]
pub struct AugmentRanges {
    pub gain: (f64, f64),
    pub angle_deg: (f64, f64),
    pub noise_sigma: (f64, f64),
}

impl Default for AugmentRanges {
    fn default() -> Self {
        AugmentRanges {
            gain: (0.8, 1.2),
            angle_deg: (-10.0, 10.0),
            noise_sigma: (0.002, 0.01),
        }
    }
}

/// One randomized augmentation pass: contrast, then rotation, then noise,
/// with parameters drawn uniformly from `ranges`. Deterministic per seed.
pub fn augment_random(img: &Image, ranges: &AugmentRanges, seed: u64) -> Result<Image> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gain = rng.gen_range(ranges.gain.0..=ranges.gain.1);
    let angle = rng.gen_range(ranges.angle_deg.0..=ranges.angle_deg.1);
    let sigma = rng.gen_range(ranges.noise_sigma.0..=ranges.noise_sigma.1);
    let noise_seed = rng.gen::<u64>();
    let out = aug_contrast(img, gain)?;
    let out = aug_rotate(&out, angle);
    aug_noise(&out, sigma, noise_seed)
}
