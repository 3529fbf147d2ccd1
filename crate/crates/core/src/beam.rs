//! Transverse model of the lattice beam.
//!
//! The beam propagates horizontally along the lattice axis `y`,
//! `edge_offset` below the chip surface. Clipping at the chip edge
//! diffracts it; the resulting intensity is stored as a normalized map over
//! `(y, z)` where `z` is the vertical coordinate of the release frame (the
//! chip edge sits at `z = 0`, the beam axis at `z = -edge_offset`) and the
//! propagation distance to a map column is `distance + y`. The horizontal
//! transverse direction is symmetric, so it never enters the map.
//!
//! Columns are computed with the paraxial angular-spectrum propagator: one
//! FFT of the clipped source field, a quadratic spectral phase per
//! propagation distance, and an inverse FFT. Map nodes coincide with
//! propagation grid nodes, so no resampling error enters the stored map.

use ndarray::Array2;
use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::error::CoreError;
use crate::Result;

/// Normalized transverse intensity of an unclipped Gaussian beam,
/// `exp(-2 (x^2 + z^2) / w^2)`, coordinates relative to the beam axis.
pub fn gaussian_intensity(waist: f64, x: f64, z: f64) -> f64 {
    (-2.0 * (x * x + z * z) / (waist * waist)).exp()
}

/// Geometry of the clipped beam.
#[derive(Debug, Clone, Copy)]
pub struct BeamGeometry {
    /// 1/e^2 intensity radius (m).
    pub waist: f64,
    /// Optical wavelength (m).
    pub wavelength: f64,
    /// Depth of the beam axis below the clipping edge (m).
    pub edge_offset: f64,
    /// Propagation distance from the edge to the map column at y = 0 (m).
    pub distance: f64,
}

impl Default for BeamGeometry {
    fn default() -> Self {
        Self { waist: 3.75e-3, wavelength: 780.241e-9, edge_offset: 2.5e-3, distance: 25e-3 }
    }
}

const FFT_POINTS: usize = 1 << 17;
const FFT_SPAN_WAISTS: f64 = 16.0;

/// Normalized intensity map of the (possibly diffracted) lattice beam.
#[derive(Debug, Clone)]
pub struct BeamProfile {
    pub geometry: BeamGeometry,
    y0: f64,
    dy: f64,
    z0: f64,
    dz: f64,
    /// I/I0, indexed [iy, iz].
    intensity: Array2<f64>,
    /// Current perturbation magnitude: max |I - I_gauss|/I0 over the map.
    pub perturbation_scale: f64,
    /// Set when rescaling pushed intensities negative and they were floored.
    pub floored: bool,
}

impl BeamProfile {
    /// Diffraction pattern of the beam clipped at the chip edge, over map
    /// columns `y` in `[y_min, y_max]` (step `y_step`) and heights `z` in
    /// `[z_min, z_max]` (release frame; the node spacing along z is the
    /// propagation grid spacing).
    pub fn knife_edge(
        geometry: BeamGeometry,
        y_min: f64,
        y_max: f64,
        y_step: f64,
        z_min: f64,
        z_max: f64,
    ) -> Result<Self> {
        if y_step <= 0.0 || y_max <= y_min || z_max <= z_min {
            return Err(CoreError::InvalidParameter("degenerate beam-map grid".into()));
        }
        if geometry.distance + y_min <= 0.0 {
            return Err(CoreError::InvalidParameter(
                "map extends to non-positive propagation distance".into(),
            ));
        }
        let span = FFT_SPAN_WAISTS * geometry.waist;
        let n = FFT_POINTS;
        let dz = span / n as f64;
        // source samples z'_i = (i - n/2) dz in the release frame
        let idx_of = |z: f64| ((z / dz) + (n / 2) as f64).round() as i64;
        let i_lo = idx_of(z_min) - 2;
        let i_hi = idx_of(z_max) + 2;
        if i_lo < 1 || i_hi >= (n as i64) - 1 {
            return Err(CoreError::InvalidParameter(
                "requested z range exceeds the propagation window".into(),
            ));
        }
        let (i_lo, i_hi) = (i_lo as usize, i_hi as usize);
        let nz = i_hi - i_lo + 1;
        let z0 = (i_lo as f64 - (n / 2) as f64) * dz;

        let ny = ((y_max - y_min) / y_step).round() as usize + 1;
        let mut intensity = Array2::zeros((ny, nz));

        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_forward(n);
        let ifft = planner.plan_fft_inverse(n);
        let mut source = vec![Complex64::default(); n];
        for (i, s) in source.iter_mut().enumerate() {
            let z = (i as f64 - (n / 2) as f64) * dz;
            if z <= 0.0 {
                let u = (z + geometry.edge_offset) / geometry.waist;
                *s = Complex64::new((-u * u).exp(), 0.0);
            }
        }
        fft.process(&mut source);
        let spectrum = source;

        let k_light = 2.0 * std::f64::consts::PI / geometry.wavelength;
        let dq = 2.0 * std::f64::consts::PI / span;
        let q = |j: usize| -> f64 {
            if j < n / 2 {
                j as f64 * dq
            } else {
                (j as f64 - n as f64) * dq
            }
        };
        let norm = 1.0 / n as f64;
        let mut column = vec![Complex64::default(); n];
        for iy in 0..ny {
            let y = y_min + iy as f64 * y_step;
            let d = geometry.distance + y;
            for (j, (c, s)) in column.iter_mut().zip(&spectrum).enumerate() {
                let qj = q(j);
                let phase = -qj * qj * d / (2.0 * k_light);
                *c = s * Complex64::from_polar(norm, phase);
            }
            ifft.process(&mut column);
            for iz in 0..nz {
                intensity[(iy, iz)] = column[i_lo + iz].norm_sqr();
            }
        }

        let mut profile = Self {
            geometry,
            y0: y_min,
            dy: y_step,
            z0,
            dz,
            intensity,
            perturbation_scale: 0.0,
            floored: false,
        };
        profile.perturbation_scale = profile.measure_raw_perturbation();
        Ok(profile)
    }

    /// Unclipped reference profile on the same kind of grid.
    pub fn pure_gaussian(
        geometry: BeamGeometry,
        y_min: f64,
        y_max: f64,
        y_step: f64,
        z_min: f64,
        z_max: f64,
        z_step: f64,
    ) -> Result<Self> {
        if y_step <= 0.0 || z_step <= 0.0 || y_max <= y_min || z_max <= z_min {
            return Err(CoreError::InvalidParameter("degenerate beam-map grid".into()));
        }
        let ny = ((y_max - y_min) / y_step).round() as usize + 1;
        let nz = ((z_max - z_min) / z_step).round() as usize + 1;
        let mut intensity = Array2::zeros((ny, nz));
        for iy in 0..ny {
            for iz in 0..nz {
                let z = z_min + iz as f64 * z_step;
                intensity[(iy, iz)] =
                    gaussian_intensity(geometry.waist, 0.0, z + geometry.edge_offset);
            }
        }
        Ok(Self {
            geometry,
            y0: y_min,
            dy: y_step,
            z0: z_min,
            dz: z_step,
            intensity,
            perturbation_scale: 0.0,
            floored: false,
        })
    }

    /// Unclipped Gaussian reference at height `z` (release frame).
    pub fn gaussian_reference(&self, z: f64) -> f64 {
        gaussian_intensity(self.geometry.waist, 0.0, z + self.geometry.edge_offset)
    }

    fn measure_raw_perturbation(&self) -> f64 {
        let mut max = 0.0_f64;
        for iy in 0..self.intensity.nrows() {
            for iz in 0..self.intensity.ncols() {
                let z = self.z0 + iz as f64 * self.dz;
                let diff = (self.intensity[(iy, iz)] - self.gaussian_reference(z)).abs();
                max = max.max(diff);
            }
        }
        max
    }

    /// Rescale the deviation from the Gaussian so its maximum over the map
    /// equals `s_pert`; intensities pushed negative are floored at zero and
    /// flagged.
    pub fn scale_perturbation(&self, s_pert: f64) -> Result<Self> {
        if s_pert < 0.0 {
            return Err(CoreError::InvalidParameter("s_pert must be >= 0".into()));
        }
        let raw = self.measure_raw_perturbation();
        let mut out = self.clone();
        out.floored = false;
        if s_pert == 0.0 {
            for iy in 0..out.intensity.nrows() {
                for iz in 0..out.intensity.ncols() {
                    let z = out.z0 + iz as f64 * out.dz;
                    out.intensity[(iy, iz)] = out.gaussian_reference(z);
                }
            }
            out.perturbation_scale = 0.0;
            return Ok(out);
        }
        if raw == 0.0 {
            return Err(CoreError::InvalidParameter(
                "profile has no perturbation to rescale".into(),
            ));
        }
        let factor = s_pert / raw;
        for iy in 0..out.intensity.nrows() {
            for iz in 0..out.intensity.ncols() {
                let z = out.z0 + iz as f64 * out.dz;
                let gauss = out.gaussian_reference(z);
                let v = gauss + factor * (out.intensity[(iy, iz)] - gauss);
                if v < 0.0 {
                    out.floored = true;
                    out.intensity[(iy, iz)] = 0.0;
                } else {
                    out.intensity[(iy, iz)] = v;
                }
            }
        }
        out.perturbation_scale = s_pert;
        Ok(out)
    }

    pub fn y_range(&self) -> (f64, f64) {
        (self.y0, self.y0 + (self.intensity.nrows() - 1) as f64 * self.dy)
    }

    pub fn z_range(&self) -> (f64, f64) {
        (self.z0, self.z0 + (self.intensity.ncols() - 1) as f64 * self.dz)
    }

    /// True when `(y, z)` can be queried, leaving the one-node margin the
    /// central differences need.
    pub fn contains(&self, y: f64, z: f64) -> bool {
        let iy = (y - self.y0) / self.dy;
        let iz = (z - self.z0) / self.dz;
        iy >= 1.0
            && iy <= (self.intensity.nrows() - 3) as f64
            && iz >= 1.0
            && iz <= (self.intensity.ncols() - 3) as f64
    }

    fn cell(&self, y: f64, z: f64) -> Result<(usize, usize, f64, f64)> {
        if !self.contains(y, z) {
            return Err(CoreError::OutOfGrid(y, z));
        }
        let fy = (y - self.y0) / self.dy;
        let fz = (z - self.z0) / self.dz;
        let iy = fy.floor() as usize;
        let iz = fz.floor() as usize;
        Ok((iy, iz, fy - iy as f64, fz - iz as f64))
    }

    /// Bilinear interpolation of I/I0 at `(y, z)`.
    pub fn intensity_at(&self, y: f64, z: f64) -> Result<f64> {
        let (iy, iz, ty, tz) = self.cell(y, z)?;
        let v00 = self.intensity[(iy, iz)];
        let v10 = self.intensity[(iy + 1, iz)];
        let v01 = self.intensity[(iy, iz + 1)];
        let v11 = self.intensity[(iy + 1, iz + 1)];
        Ok(v00 * (1.0 - ty) * (1.0 - tz)
            + v10 * ty * (1.0 - tz)
            + v01 * (1.0 - ty) * tz
            + v11 * ty * tz)
    }

    fn node_gradient(&self, iy: usize, iz: usize) -> (f64, f64) {
        let gy = (self.intensity[(iy + 1, iz)] - self.intensity[(iy - 1, iz)]) / (2.0 * self.dy);
        let gz = (self.intensity[(iy, iz + 1)] - self.intensity[(iy, iz - 1)]) / (2.0 * self.dz);
        (gy, gz)
    }

    /// `(dI/dy, dI/dz)/I0` at `(y, z)`: central differences at the four
    /// surrounding nodes, bilinearly interpolated.
    pub fn gradient_at(&self, y: f64, z: f64) -> Result<(f64, f64)> {
        let (iy, iz, ty, tz) = self.cell(y, z)?;
        let g00 = self.node_gradient(iy, iz);
        let g10 = self.node_gradient(iy + 1, iz);
        let g01 = self.node_gradient(iy, iz + 1);
        let g11 = self.node_gradient(iy + 1, iz + 1);
        let mix = |a: f64, b: f64, c: f64, d: f64| {
            a * (1.0 - ty) * (1.0 - tz) + b * ty * (1.0 - tz) + c * (1.0 - ty) * tz + d * ty * tz
        };
        Ok((mix(g00.0, g10.0, g01.0, g11.0), mix(g00.1, g10.1, g01.1, g11.1)))
    }

    /// Iterate map rows as `(y, z, intensity)` for export.
    pub fn samples(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        let nz = self.intensity.ncols();
        (0..self.intensity.nrows()).flat_map(move |iy| {
            (0..nz).map(move |iz| {
                (
                    self.y0 + iy as f64 * self.dy,
                    self.z0 + iz as f64 * self.dz,
                    self.intensity[(iy, iz)],
                )
            })
        })
    }

    /// Map-grid steps `(dy, dz)`.
    pub fn steps(&self) -> (f64, f64) {
        (self.dy, self.dz)
    }
}
