//! Source-to-detector geometry: solid-angle acceptance and the
//! distance-dependent scatter/background inflation.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometryModel {
    /// Source to detector window, centimetres.
    pub distance_cm: f64,
    /// Radius of the circular detector window, centimetres.
    pub window_radius_cm: f64,
    /// Per-centimetre growth of the background/noise term, modelling beta
    /// scattering that becomes more prominent with distance.
    pub scatter_noise_coeff: f64,
}

impl GeometryModel {
    pub fn new(distance_cm: f64, window_radius_cm: f64, scatter_noise_coeff: f64) -> Result<Self> {
        if !(distance_cm > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "distance_cm must be positive, got {distance_cm}"
            )));
        }
        if !(window_radius_cm > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "window_radius_cm must be positive, got {window_radius_cm}"
            )));
        }
        if scatter_noise_coeff < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "scatter_noise_coeff must be non-negative, got {scatter_noise_coeff}"
            )));
        }
        Ok(Self {
            distance_cm,
            window_radius_cm,
            scatter_noise_coeff,
        })
    }

    /// Geometric acceptance of an on-axis point source facing a disc window:
    /// g(d) = (1 - d / sqrt(d^2 + r^2)) / 2.
    ///
    /// Strictly decreasing in distance, approaching the hemisphere limit 1/2
    /// as d goes to 0 and vanishing as d grows.
    pub fn acceptance(&self) -> f64 {
        let d = self.distance_cm;
        let r = self.window_radius_cm;
        (1.0 - d / d.hypot(r)) / 2.0
    }

    /// Multiplier applied to the detector background rate at this distance.
    pub fn background_inflation(&self) -> f64 {
        1.0 + self.scatter_noise_coeff * self.distance_cm
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn acceptance_hemisphere_limit() {
        let g = GeometryModel::new(1e-9, 1.0, 0.0).unwrap().acceptance();
        assert!((g - 0.5).abs() < 1e-9);
    }

    #[test]
    fn acceptance_closed_form_point() {
        // r = 1, d = sqrt(3): g = (1 - sqrt(3)/2) / 2
        let g = GeometryModel::new(3.0f64.sqrt(), 1.0, 0.0).unwrap().acceptance();
        assert!((g - 0.066_987_298_107_780_68).abs() < 1e-12);
    }

    /// Independent check: integrate the solid angle over the disc window
    /// (Simpson quadrature of the on-axis flux kernel) and compare with the
    /// closed form.
    #[test]
    fn acceptance_matches_disc_quadrature() {
        fn quadrature(d: f64, r: f64) -> f64 {
            // fraction = (1/4pi) * 2pi * int_0^r d * rho / (rho^2+d^2)^(3/2) drho
            let kernel = |rho: f64| d * rho / (rho * rho + d * d).powf(1.5);
            let n = 10_000;
            let h = r / n as f64;
            let mut sum = kernel(0.0) + kernel(r);
            for i in 1..n {
                let w = if i % 2 == 1 { 4.0 } else { 2.0 };
                sum += w * kernel(i as f64 * h);
            }
            (h / 3.0) * sum / 2.0
        }
        for (d, r) in [(3.0f64.sqrt(), 1.0), (2.0, 0.7), (4.0, 0.7), (0.5, 2.0)] {
            let g = GeometryModel::new(d, r, 0.0).unwrap().acceptance();
            let q = quadrature(d, r);
            assert!((g - q).abs() < 1e-10, "d={d} r={r}: {g} vs {q}");
        }
    }

    #[test]
    fn acceptance_strictly_decreasing() {
        let mut prev = f64::INFINITY;
        for i in 1..200 {
            let d = i as f64 * 0.1;
            let g = GeometryModel::new(d, 1.0, 0.0).unwrap().acceptance();
            assert!(g > 0.0 && g <= 0.5);
            assert!(g < prev, "acceptance not decreasing at d = {d}");
            prev = g;
        }
    }

    #[test]
    fn acceptance_vanishes_at_large_distance() {
        let g = GeometryModel::new(1e9, 1.0, 0.0).unwrap().acceptance();
        assert!(g < 1e-18);
        assert!(g >= 0.0);
    }

    #[test]
    fn background_grows_with_distance() {
        let near = GeometryModel::new(2.0, 1.0, 0.5).unwrap();
        let far = GeometryModel::new(4.0, 1.0, 0.5).unwrap();
        assert!(far.background_inflation() > near.background_inflation());
        assert_eq!(near.background_inflation(), 2.0);
    }
}
