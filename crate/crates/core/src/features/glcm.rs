//! Gray-level co-occurrence matrices and their second-order statistics.

use crate::error::{Error, Result};
use crate::image::QuantizedImage;

/// Supported co-occurrence orientations, in degrees.
pub const GLCM_ANGLES: [f64; 4] = [0.0, 45.0, 90.0, 135.0];

/// Normalized co-occurrence matrix for one (distance, angle) offset.
#[derive(Debug, Clone)]
pub struct Glcm {
    levels: usize,
    matrix: Vec<f64>,
    distance: usize,
    theta_deg: f64,
}

/// The four Haralick statistics extracted from a [`Glcm`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GlcmStats {
    pub contrast: f64,
    pub energy: f64,
    pub homogeneity: f64,
    pub correlation: f64,
}

impl Glcm {
    pub fn levels(&self) -> usize {
        self.levels
    }

    pub fn distance(&self) -> usize {
        self.distance
    }

    pub fn theta_deg(&self) -> f64 {
        self.theta_deg
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.matrix[i * self.levels + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.matrix
    }

    /// Builds a Glcm directly from a normalized matrix. Intended for tests
    /// and oracles; rejects matrices that do not sum to 1.
    pub fn from_matrix(levels: usize, matrix: Vec<f64>, distance: usize, theta_deg: f64) -> Result<Self> {
        if matrix.len() != levels * levels {
            return Err(Error::invalid(format!(
                "matrix length {} does not match {levels}x{levels}",
                matrix.len()
            )));
        }
        let sum: f64 = matrix.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::invalid(format!(
                "co-occurrence matrix must be normalized, sums to {sum}"
            )));
        }
        Ok(Glcm {
            levels,
            matrix,
            distance,
            theta_deg,
        })
    }
}

/// Pixel offset for a distance/angle pair: `(d cos t, d sin t)` rounded to
/// the nearest integers. Angles are restricted to the four standard
/// orientations.
pub fn glcm_offset(distance: usize, theta_deg: f64) -> Result<(i64, i64)> {
    if distance == 0 {
        return Err(Error::invalid("co-occurrence distance must be >= 1"));
    }
    if !GLCM_ANGLES.contains(&theta_deg) {
        return Err(Error::invalid(format!(
            "angle {theta_deg} not in {{0, 45, 90, 135}}"
        )));
    }
    let theta = theta_deg.to_radians();
    let dx = (distance as f64 * theta.cos()).round() as i64;
    let dy = (distance as f64 * theta.sin()).round() as i64;
    Ok((dx, dy))
}

/// Counts co-occurring code pairs at the given offset and normalizes to a
/// probability matrix. In symmetric mode each pair is also counted in the
/// transposed position.
///
/// Errors if the offset leaves no pixel pair inside the image.
pub fn glcm(q: &QuantizedImage, distance: usize, theta_deg: f64, symmetric: bool) -> Result<Glcm> {
    let (dx, dy) = glcm_offset(distance, theta_deg)?;
    let levels = q.levels();
    let w = q.width() as i64;
    let h = q.height() as i64;
    let mut counts = vec![0.0f64; levels * levels];
    let mut total = 0.0f64;
    for y in 0..h {
        let ny = y + dy;
        if ny < 0 || ny >= h {
            continue;
        }
        for x in 0..w {
            let nx = x + dx;
            if nx < 0 || nx >= w {
                continue;
            }
            let i = q.get(x as usize, y as usize);
            let j = q.get(nx as usize, ny as usize);
            counts[i * levels + j] += 1.0;
            total += 1.0;
            if symmetric {
                counts[j * levels + i] += 1.0;
                total += 1.0;
            }
        }
    }
    if total == 0.0 {
        return Err(Error::invalid(format!(
            "image {}x{} has no pixel pairs at offset ({dx}, {dy})",
            q.width(),
            q.height()
        )));
    }
    for c in &mut counts {
        *c /= total;
    }
    Ok(Glcm {
        levels,
        matrix: counts,
        distance,
        theta_deg,
    })
}

/// Contrast, energy, homogeneity, and correlation of a normalized GLCM.
///
/// Correlation is defined as 1.0 when either marginal standard deviation is
/// zero: a constant region is perfectly self-correlated.
pub fn glcm_stats(g: &Glcm) -> Result<GlcmStats> {
    let sum: f64 = g.matrix.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::invalid(format!(
            "glcm_stats requires a normalized matrix, sums to {sum}"
        )));
    }
    let n = g.levels;
    let mut contrast = 0.0;
    let mut energy = 0.0;
    let mut homogeneity = 0.0;
    let mut marg_i = vec![0.0; n];
    let mut marg_j = vec![0.0; n];
    for i in 0..n {
        for j in 0..n {
            let p = g.get(i, j);
            let diff = i as f64 - j as f64;
            contrast += diff * diff * p;
            energy += p * p;
            homogeneity += p / (1.0 + diff.abs());
            marg_i[i] += p;
            marg_j[j] += p;
        }
    }
    let mean_i: f64 = marg_i.iter().enumerate().map(|(i, p)| i as f64 * p).sum();
    let mean_j: f64 = marg_j.iter().enumerate().map(|(j, p)| j as f64 * p).sum();
    let var_i: f64 = marg_i
        .iter()
        .enumerate()
        .map(|(i, p)| (i as f64 - mean_i).powi(2) * p)
        .sum();
    let var_j: f64 = marg_j
        .iter()
        .enumerate()
        .map(|(j, p)| (j as f64 - mean_j).powi(2) * p)
        .sum();
    let correlation = if var_i <= 0.0 || var_j <= 0.0 {
        1.0
    } else {
        let denom = var_i.sqrt() * var_j.sqrt();
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += (i as f64 - mean_i) * (j as f64 - mean_j) * g.get(i, j);
            }
        }
        acc / denom
    };
    Ok(GlcmStats {
        contrast,
        energy,
        homogeneity,
        correlation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::image::QuantizedImage;

    fn quant(w: usize, h: usize, levels: usize, codes: &[usize]) -> QuantizedImage {
        QuantizedImage::new(w, h, levels, codes.to_vec()).unwrap()
    }

    #[test]
    fn horizontal_rows_of_equal_codes() {
        let q = quant(2, 2, 2, &[0, 0, 1, 1]);
        let g = glcm(&q, 1, 0.0, true).unwrap();
        assert_eq!(g.get(0, 0), 0.5);
        assert_eq!(g.get(0, 1), 0.0);
        assert_eq!(g.get(1, 0), 0.0);
        assert_eq!(g.get(1, 1), 0.5);
    }

    #[test]
    fn horizontal_checkerboard() {
        let q = quant(2, 2, 2, &[0, 1, 1, 0]);
        let g = glcm(&q, 1, 0.0, true).unwrap();
        assert_eq!(g.get(0, 0), 0.0);
        assert_eq!(g.get(0, 1), 0.5);
        assert_eq!(g.get(1, 0), 0.5);
        assert_eq!(g.get(1, 1), 0.0);
    }

    #[test]
    fn constant_image_single_entry() {
        let q = quant(3, 3, 4, &[2; 9]);
        for &angle in &GLCM_ANGLES {
            let g = glcm(&q, 1, angle, true).unwrap();
            assert_eq!(g.get(2, 2), 1.0);
            let total: f64 = g.entries().iter().sum();
            assert!((total - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn offsets_match_convention() {
        assert_eq!(glcm_offset(1, 0.0).unwrap(), (1, 0));
        assert_eq!(glcm_offset(1, 45.0).unwrap(), (1, 1));
        assert_eq!(glcm_offset(1, 90.0).unwrap(), (0, 1));
        assert_eq!(glcm_offset(1, 135.0).unwrap(), (-1, 1));
        assert!(glcm_offset(1, 30.0).is_err());
        assert!(glcm_offset(0, 0.0).is_err());
    }

    #[test]
    fn too_small_image_is_rejected() {
        let q = quant(1, 1, 2, &[0]);
        let err = glcm(&q, 1, 0.0, true).unwrap_err();
        assert!(err.to_string().contains("no pixel pairs"));
    }

    #[test]
    fn stats_on_diagonal_matrix() {
        let g = Glcm::from_matrix(2, vec![0.5, 0.0, 0.0, 0.5], 1, 0.0).unwrap();
        let s = glcm_stats(&g).unwrap();
        assert_eq!(s.contrast, 0.0);
        assert_eq!(s.energy, 0.5);
        assert_eq!(s.homogeneity, 1.0);
        assert_eq!(s.correlation, 1.0);
    }

    #[test]
    fn stats_on_antidiagonal_matrix() {
        let g = Glcm::from_matrix(2, vec![0.0, 0.5, 0.5, 0.0], 1, 0.0).unwrap();
        let s = glcm_stats(&g).unwrap();
        assert_eq!(s.contrast, 1.0);
        assert_eq!(s.energy, 0.5);
        assert_eq!(s.homogeneity, 0.5);
        assert!((s.correlation + 1.0).abs() < 1e-12);
    }

    #[test]
    fn stats_on_constant_image() {
        let q = quant(4, 4, 8, &[3; 16]);
        let g = glcm(&q, 1, 0.0, true).unwrap();
        let s = glcm_stats(&g).unwrap();
        assert_eq!(s.contrast, 0.0);
        assert_eq!(s.energy, 1.0);
        assert_eq!(s.homogeneity, 1.0);
        assert_eq!(s.correlation, 1.0);
    }

    #[test]
    fn stats_reject_unnormalized() {
        let g = Glcm {
            levels: 2,
            matrix: vec![1.0, 1.0, 0.0, 0.0],
            distance: 1,
            theta_deg: 0.0,
        };
        assert!(glcm_stats(&g).is_err());
    }

    #[test]
    fn symmetric_mode_is_transpose_invariant() {
        let codes: Vec<usize> = (0..48).map(|i| (i * 7 + 3) % 5).collect();
        let q = quant(8, 6, 5, &codes);
        for &angle in &GLCM_ANGLES {
            let g = glcm(&q, 1, angle, true).unwrap();
            for i in 0..5 {
                for j in 0..5 {
                    assert_eq!(g.get(i, j), g.get(j, i));
                }
            }
        }
    }
}
