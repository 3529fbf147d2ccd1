//! Bloch-oscillation transfer efficiency in the twin lattice.
//!
//! One efficiency run reproduces the measurement sequence: double-Bragg
//! imprint of a +-n hbar k superposition, linear intensity load of the twin
//! lattice with matched velocities, a chirped acceleration adding +-2 hbar k
//! per arm over `t_acc`, linear unload, and momentum classification.

use super::split_step::{evolve, max_stable_dt};
use super::{
    initial_state, momentum_populations, InitialProfile, MomentumPopulations,
    NonlinearityParams, SpatialGrid,
};
use crate::error::CoreError;
use crate::lattice::LatticeParams;
use crate::piecewise::PiecewiseLinear;
use crate::twinlattice::TwinLatticeField;
use crate::Result;

/// Parameters of one transfer-efficiency run.
#[derive(Debug, Clone)]
pub struct BlochRunConfig {
    /// Initial arm momentum n: the imprint prepares +-n hbar k. Even, >= 2.
    pub start_arm: i32,
    /// Lattice depth during the plateau (J).
    pub depth: f64,
    /// Duration of the acceleration ramp (s).
    pub t_acc: f64,
    /// Polarization overlap of the twin lattice.
    pub sigma_pol: f64,
    /// Initial expansion rate of the packet (m/s).
    pub sigma_v: f64,
    /// Linear intensity load/unload time (s).
    pub load_time: f64,
    /// Number of grid points (power of two).
    pub grid_points: usize,
    /// Extra resolvable momentum beyond the target class (hbar k).
    pub momentum_margin: f64,
    /// Momentum-window half width (hbar k).
    pub half_width: f64,
    pub nonlinearity: NonlinearityParams,
}

impl BlochRunConfig {
    pub fn new(start_arm: i32, depth: f64, t_acc: f64, sigma_pol: f64, params: &LatticeParams) -> Self {
        Self {
            start_arm,
            depth,
            t_acc,
            sigma_pol,
            sigma_v: 0.03 * params.recoil_velocity,
            load_time: 200e-6,
            grid_points: 1 << 14,
            momentum_margin: 16.0,
            half_width: 0.5,
            nonlinearity: NonlinearityParams::none(),
        }
    }
}

/// Result of one efficiency run.
#[derive(Debug, Clone)]
pub struct BlochRunResult {
    /// Fraction of atoms in the +-(n+2) hbar k target classes.
    pub efficiency: f64,
    pub populations: MomentumPopulations,
    /// Deviation of the final norm from one.
    pub norm_error: f64,
}

/// Run one Bloch-transfer efficiency measurement.
pub fn bloch_efficiency(config: &BlochRunConfig, params: &LatticeParams) -> Result<BlochRunResult> {
    let n0 = config.start_arm;
    if n0 < 2 || n0 % 2 != 0 {
        return Err(CoreError::Precondition(format!(
            "start momentum +-{n0} hbar k must be even and >= 2"
        )));
    }
    if config.t_acc <= 0.0 || config.load_time < 0.0 {
        return Err(CoreError::Precondition("t_acc must be positive".into()));
    }
    let target = n0 + 2;
    let grid = SpatialGrid::for_max_momentum(
        config.grid_points,
        f64::from(target) + config.momentum_margin,
        params.wavenumber,
    )?;

    let mut wf = initial_state(
        grid,
        InitialProfile::Gaussian { sigma_y: None },
        config.sigma_v,
        params.species.mass,
        &config.nonlinearity,
    )?;
    super::imprint_dbd(&mut wf, 2 * n0, params.wavenumber)?;

    let two_k_vr = 2.0 * params.wavenumber * params.recoil_velocity;
    let t_load = config.load_time;
    let t_unload_start = t_load + config.t_acc;
    let t_end = t_unload_start + config.load_time;
    let chirp = PiecewiseLinear::new(&[
        (0.0, f64::from(n0) * two_k_vr),
        (t_load, f64::from(n0) * two_k_vr),
        (t_unload_start, f64::from(target) * two_k_vr),
        (t_end, f64::from(target) * two_k_vr),
    ]);
    let mut field = TwinLatticeField::new(config.depth, config.sigma_pol, chirp, params.wavenumber)?;
    field.depth_envelope = PiecewiseLinear::new(&[
        (0.0, 0.0),
        (t_load, 1.0),
        (t_unload_start, 1.0),
        (t_end, 0.0),
    ]);

    let dt = 0.98 * max_stable_dt(&wf, config.depth);
    evolve(&mut wf, &field, t_end, dt, &config.nonlinearity)?;

    let populations = momentum_populations(&wf, config.half_width, params.wavenumber)?;
    let efficiency = populations.fraction(target) + populations.fraction(-target);
    let norm_error = (wf.norm_sq() - 1.0).abs();
    Ok(BlochRunResult { efficiency, populations, norm_error })
}
