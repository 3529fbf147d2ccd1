//! 1D split-step spectral solver for the time-dependent, 1D-reduced
//! Gross-Pitaevskii equation, plus the momentum-space diagnostics built on
//! top of it.
//!
//! States live on a uniform periodic grid; the kinetic propagator is exact
//! in momentum space, the potential and mean-field terms are applied
//! pointwise, and steps are combined in the symmetric
//! kinetic-potential-kinetic order.

mod bloch;
mod drive;
mod split_step;

pub use bloch::{bloch_efficiency, BlochRunConfig, BlochRunResult};
pub use drive::{DriveCoeffs, LatticeDrive, SingleLatticeField};
pub use split_step::{evolve, max_stable_dt};

use std::collections::BTreeMap;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::constants::HBAR;
use crate::error::CoreError;
use crate::Result;

/// Uniform spatial grid centered on the origin.
#[derive(Debug, Clone, PartialEq)]
pub struct SpatialGrid {
    n: usize,
    dy: f64,
}

impl SpatialGrid {
    /// `n` must be a power of two.
    pub fn new(n: usize, dy: f64) -> Result<Self> {
        if !n.is_power_of_two() || n < 16 {
            return Err(CoreError::InvalidParameter(format!(
                "grid size {n} must be a power of two >= 16"
            )));
        }
        if dy <= 0.0 {
            return Err(CoreError::InvalidParameter("grid spacing must be positive".into()));
        }
        Ok(Self { n, dy })
    }

    /// Grid whose largest resolvable wavenumber is at least
    /// `max_momentum_hbark` photon recoils of the given lattice wavenumber.
    pub fn for_max_momentum(n: usize, max_momentum_hbark: f64, wavenumber: f64) -> Result<Self> {
        if max_momentum_hbark <= 0.0 {
            return Err(CoreError::InvalidParameter(
                "maximum resolvable momentum must be positive".into(),
            ));
        }
        let kappa_max = max_momentum_hbark * wavenumber;
        Self::new(n, std::f64::consts::PI / kappa_max)
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        self.dy
    }

    pub fn span(&self) -> f64 {
        self.n as f64 * self.dy
    }

    /// Position of sample `i`; the grid is centered on zero.
    pub fn y(&self, i: usize) -> f64 {
        (i as f64 - (self.n / 2) as f64) * self.dy
    }

    /// Largest resolvable wavenumber magnitude pi/dy (1/m).
    pub fn kappa_max(&self) -> f64 {
        std::f64::consts::PI / self.dy
    }

    /// Wavenumber of FFT bin `j` in standard FFT ordering (1/m).
    pub fn kappa(&self, j: usize) -> f64 {
        let n = self.n as f64;
        let dk = 2.0 * std::f64::consts::PI / (n * self.dy);
        if j < self.n / 2 {
            j as f64 * dk
        } else {
            (j as f64 - n) * dk
        }
    }
}

/// Complex amplitudes on a spatial grid, with the particle mass they evolve
/// under.
#[derive(Debug, Clone)]
pub struct WaveFunction1D {
    pub grid: SpatialGrid,
    pub psi: Vec<Complex64>,
    pub time: f64,
    pub mass: f64,
}

impl WaveFunction1D {
    /// L2 norm squared, `sum |psi|^2 dy`.
    pub fn norm_sq(&self) -> f64 {
        self.psi.iter().map(|a| a.norm_sqr()).sum::<f64>() * self.grid.spacing()
    }

    pub fn renormalize(&mut self) {
        let n = self.norm_sq().sqrt();
        if n > 0.0 {
            let s = 1.0 / n;
            for a in &mut self.psi {
                *a *= s;
            }
        }
    }

    /// Density-weighted mean position (m).
    pub fn mean_position(&self) -> f64 {
        let mut num = 0.0;
        let mut den = 0.0;
        for (i, a) in self.psi.iter().enumerate() {
            let w = a.norm_sqr();
            num += w * self.grid.y(i);
            den += w;
        }
        num / den
    }

    /// Momentum-space density |phi(kappa_j)|^2 in FFT bin order, normalized
    /// so that `sum rho_j dkappa = 1` for a unit-norm state.
    pub fn momentum_density(&self) -> Vec<f64> {
        let n = self.grid.len();
        let mut buf = self.psi.clone();
        let mut planner = FftPlanner::new();
        let fft = planner.plan_fft_forward(n);
        fft.process(&mut buf);
        let dy = self.grid.spacing();
        let scale = dy * dy / (2.0 * std::f64::consts::PI);
        buf.iter().map(|a| a.norm_sqr() * scale).collect()
    }

    /// Standard deviation of the momentum distribution (kg m/s).
    pub fn momentum_sigma(&self) -> f64 {
        let rho = self.momentum_density();
        let mut w = 0.0;
        let mut m1 = 0.0;
        let mut m2 = 0.0;
        for (j, r) in rho.iter().enumerate() {
            let kappa = self.grid.kappa(j);
            w += r;
            m1 += r * kappa;
            m2 += r * kappa * kappa;
        }
        m1 /= w;
        m2 /= w;
        HBAR * (m2 - m1 * m1).max(0.0).sqrt()
    }
}

/// Mean-field interaction parameters of the 1D reduction.
#[derive(Debug, Clone, Copy)]
pub struct NonlinearityParams {
    /// Effective 1D coupling constant (J m); the mean-field term is
    /// `g1d * atom_number * |psi|^2` for a unit-norm wavefunction.
    pub g1d: f64,
    /// Atom number.
    pub atom_number: f64,
    /// Transverse harmonic-oscillator length (m), used only by the
    /// nonpolynomial correction.
    pub transverse_scale: f64,
    /// Enable the nonpolynomial (transverse-width) correction factor.
    pub nonpolynomial: bool,
}

impl NonlinearityParams {
    pub fn none() -> Self {
        Self { g1d: 0.0, atom_number: 0.0, transverse_scale: 1e-6, nonpolynomial: false }
    }

    pub fn cubic(g1d: f64, atom_number: f64) -> Result<Self> {
        if g1d < 0.0 {
            return Err(CoreError::InvalidParameter("g1d must be >= 0".into()));
        }
        Ok(Self { g1d, atom_number, transverse_scale: 1e-6, nonpolynomial: false })
    }
}

/// Initial wave-packet shape along the lattice axis.
#[derive(Debug, Clone, Copy)]
pub enum InitialProfile {
    /// Gaussian density of the given position width; `None` picks the
    /// minimum-uncertainty width for the requested expansion rate.
    Gaussian { sigma_y: Option<f64> },
    /// Inverted-parabola density of the given radius.
    ThomasFermi { radius: f64 },
}

/// Construct a normalized wave packet at rest whose momentum distribution
/// has standard deviation `mass * sigma_v`.
///
/// Widths broader than the minimum-uncertainty width are realized with a
/// quadratic (expansion) phase, which is how a delta-kick collimated cloud
/// carries its residual expansion rate.
pub fn initial_state(
    grid: SpatialGrid,
    profile: InitialProfile,
    sigma_v: f64,
    mass: f64,
    _nonlinearity: &NonlinearityParams,
) -> Result<WaveFunction1D> {
    if sigma_v <= 0.0 {
        return Err(CoreError::InvalidParameter("sigma_v must be positive".into()));
    }
    let sigma_p = mass * sigma_v;
    let n = grid.len();

    let (envelope, rms_width): (Vec<f64>, f64) = match profile {
        InitialProfile::Gaussian { sigma_y } => {
            let min_width = HBAR / (2.0 * sigma_p);
            let sy = sigma_y.unwrap_or(min_width);
            if sy < min_width * (1.0 - 1e-12) {
                return Err(CoreError::InvalidParameter(format!(
                    "sigma_y = {sy:.3e} m is below the minimum-uncertainty width {min_width:.3e} m for sigma_v = {sigma_v:.3e} m/s"
                )));
            }
            let env = (0..n)
                .map(|i| {
                    let y = grid.y(i);
                    (-y * y / (4.0 * sy * sy)).exp()
                })
                .collect();
            (env, sy)
        }
        InitialProfile::ThomasFermi { radius } => {
            if radius <= 0.0 {
                return Err(CoreError::InvalidParameter("radius must be positive".into()));
            }
            let env = (0..n)
                .map(|i| {
                    let u = grid.y(i) / radius;
                    (1.0 - u * u).max(0.0).sqrt()
                })
                .collect();
            (env, radius / 5.0_f64.sqrt())
        }
    };

    if grid.span() < 8.0 * rms_width {
        return Err(CoreError::GridTooSmall(format!(
            "span {:.3e} m < 8 x packet width {:.3e} m",
            grid.span(),
            rms_width
        )));
    }

    let mut wf = WaveFunction1D {
        grid,
        psi: envelope.iter().map(|&e| Complex64::new(e, 0.0)).collect(),
        time: 0.0,
        mass,
    };
    wf.renormalize();

    // expansion chirp: total sigma_p^2 = intrinsic^2 + (m alpha)^2 <y^2>
    let intrinsic = wf.momentum_sigma();
    if intrinsic > sigma_p * (1.0 + 1e-9) {
        return Err(CoreError::InvalidParameter(format!(
            "profile's intrinsic momentum width {intrinsic:.3e} exceeds the requested {sigma_p:.3e}"
        )));
    }
    let dy2: f64 = {
        let dyl = wf.grid.spacing();
        wf.psi
            .iter()
            .enumerate()
            .map(|(i, a)| a.norm_sqr() * wf.grid.y(i).powi(2))
            .sum::<f64>()
            * dyl
    };
    let extra = (sigma_p * sigma_p - intrinsic * intrinsic).max(0.0);
    if extra > 0.0 && dy2 > 0.0 {
        let alpha = extra.sqrt() / (mass * dy2.sqrt());
        for i in 0..n {
            let y = wf.grid.y(i);
            let phase = mass * alpha * y * y / (2.0 * HBAR);
            wf.psi[i] *= Complex64::from_polar(1.0, phase);
        }
    }
    Ok(wf)
}

/// Imprint an idealized first-order double-Bragg splitting: the state is
/// multiplied with `(exp(+i phi) + exp(-i phi))/sqrt(2)`, `phi = K y / (2
/// hbar)` for a relative momentum of `k_dbd` photon recoils, then
/// renormalized.
pub fn imprint_dbd(wf: &mut WaveFunction1D, k_dbd: i32, wavenumber: f64) -> Result<()> {
    if k_dbd % 2 != 0 {
        return Err(CoreError::Precondition(format!(
            "K_DBD = {k_dbd} hbar k must be an even integer"
        )));
    }
    if k_dbd == 0 {
        return Ok(());
    }
    let half = f64::from(k_dbd) / 2.0;
    if half.abs() * wavenumber > 0.95 * wf.grid.kappa_max() {
        return Err(CoreError::GridTooSmall(format!(
            "grid cannot resolve +-{half} hbar k"
        )));
    }
    let kappa = half * wavenumber;
    for i in 0..wf.grid.len() {
        let y = wf.grid.y(i);
        // (e^{i phi} + e^{-i phi})/sqrt(2) = sqrt(2) cos(phi)
        wf.psi[i] *= 2.0_f64.sqrt() * (kappa * y).cos();
    }
    wf.renormalize();
    Ok(())
}

/// Fractions of the momentum density inside windows `n hbar k +-
/// half_width hbar k` around the even momentum classes.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentumPopulations {
    fractions: BTreeMap<i32, f64>,
}

impl MomentumPopulations {
    pub fn fraction(&self, class: i32) -> f64 {
        self.fractions.get(&class).copied().unwrap_or(0.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, f64)> + '_ {
        self.fractions.iter().map(|(k, v)| (*k, *v))
    }

    pub fn total(&self) -> f64 {
        self.fractions.values().sum()
    }
}

/// Integrate the momentum density over the class windows. Momentum classes
/// are the even multiples of `hbar k` (they are spaced by two photon
/// recoils); `half_width` must keep adjacent windows disjoint.
pub fn momentum_populations(
    wf: &WaveFunction1D,
    half_width: f64,
    wavenumber: f64,
) -> Result<MomentumPopulations> {
    if !(half_width > 0.0 && half_width < 1.0) {
        return Err(CoreError::Precondition(format!(
            "half_width = {half_width} must lie in (0, 1); windows on adjacent classes would otherwise overlap"
        )));
    }
    let rho = wf.momentum_density();
    let n = wf.grid.len() as f64;
    let dk = 2.0 * std::f64::consts::PI / (n * wf.grid.spacing());
    let total: f64 = rho.iter().sum::<f64>() * dk;
    let mut fractions = BTreeMap::new();
    let n_max = (wf.grid.kappa_max() / wavenumber).floor() as i32;
    for (j, r) in rho.iter().enumerate() {
        let class_f = wf.grid.kappa(j) / wavenumber;
        let class = 2 * (class_f / 2.0).round() as i32;
        if class.abs() > n_max {
            continue;
        }
        if (class_f - f64::from(class)).abs() <= half_width {
            *fractions.entry(class).or_insert(0.0) += r * dk;
        }
    }
    for v in fractions.values_mut() {
        *v /= total;
    }
    Ok(MomentumPopulations { fractions })
}
