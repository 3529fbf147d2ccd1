//! The twin-lattice dipole potential.
//!
//! Two counterpropagating lattices of equal depth plus the parasitic
//! standing wave generated by imperfect polarization. The polarization
//! overlap `sigma_pol` produces a standing-wave coefficient
//! `sigma_pol / (1 - sigma_pol)`.

use crate::error::CoreError;
use crate::lattice::LatticeParams;
use crate::piecewise::PiecewiseLinear;
use crate::schedule::InterferometerSchedule;
use crate::Result;

/// The twin-lattice light field: depth, polarization overlap, frequency
/// difference profile and wavenumber.
#[derive(Debug, Clone)]
pub struct TwinLatticeField {
    /// Lattice depth V0 when fully on (J).
    pub depth: f64,
    /// Polarization overlap |e1.e2|/2, in [0, 0.5).
    pub sigma_pol: f64,
    /// Frequency difference between the two lattices (rad/s) over time.
    pub chirp: PiecewiseLinear,
    /// Lattice wavenumber (1/m).
    pub wavenumber: f64,
    /// Intensity envelope scaling the depth over time, in [0, 1].
    pub depth_envelope: PiecewiseLinear,
}

impl TwinLatticeField {
    pub fn new(depth: f64, sigma_pol: f64, chirp: PiecewiseLinear, wavenumber: f64) -> Result<Self> {
        if !(0.0..0.5).contains(&sigma_pol) {
            return Err(CoreError::InvalidParameter(format!(
                "sigma_pol = {sigma_pol} must lie in [0, 0.5)"
            )));
        }
        if depth < 0.0 || wavenumber <= 0.0 {
            return Err(CoreError::InvalidParameter(
                "depth must be >= 0 and wavenumber > 0".into(),
            ));
        }
        Ok(Self {
            depth,
            sigma_pol,
            chirp,
            wavenumber,
            depth_envelope: PiecewiseLinear::constant(1.0),
        })
    }

    /// Standing-wave coefficient sigma_pol/(1 - sigma_pol).
    pub fn standing_wave_coefficient(&self) -> f64 {
        self.sigma_pol / (1.0 - self.sigma_pol)
    }

    /// Accumulated phase of the frequency difference, `int_0^t d_omega dt'`.
    pub fn accumulated_phase(&self, t: f64) -> f64 {
        self.chirp.integral(t)
    }

    /// Instantaneous depth `V0 * envelope(t)` (J).
    pub fn depth_at(&self, t: f64) -> f64 {
        self.depth * self.depth_envelope.eval(t)
    }

    /// Upper bound of the magnitude of the potential over space and time,
    /// used for step-size guards.
    pub fn max_abs_potential(&self) -> f64 {
        let c = self.standing_wave_coefficient();
        let v0 = self.depth * self.depth_envelope.max_abs();
        2.0 * v0 * (1.0 + c)
    }
}

/// Lab-frame twin-lattice potential at position `y` and time `t`.
///
/// V0 [cos^2(ky - phi/2) + cos^2(ky + phi/2)
///     + sigma/(1-sigma) * 2 cos(ky + phi/2) cos(ky - phi/2)]
/// with phi the accumulated phase of the frequency difference.
pub fn potential_lab(field: &TwinLatticeField, y: f64, t: f64) -> f64 {
    let phi = field.accumulated_phase(t);
    let ky = field.wavenumber * y;
    let c = field.standing_wave_coefficient();
    let a = (ky - 0.5 * phi).cos();
    let b = (ky + 0.5 * phi).cos();
    field.depth_at(t) * (a * a + b * b + c * 2.0 * a * b)
}

/// Potential in the rest frame of a wave packet comoving with one lattice.
///
/// Only defined for a constant frequency difference; a chirped field has no
/// uniformly moving rest frame and is rejected.
pub fn potential_wp_frame(field: &TwinLatticeField, y: f64, t: f64) -> Result<f64> {
    if !field.chirp.is_constant() {
        return Err(CoreError::Precondition(
            "wave-packet frame requires a constant frequency difference".into(),
        ));
    }
    let d_omega = field.chirp.eval(0.0);
    let ky = field.wavenumber * y;
    let c = field.standing_wave_coefficient();
    let a = ky.cos();
    let b = (ky + d_omega * t).cos();
    Ok(field.depth_at(t) * (a * a + b * b + c * 2.0 * a * b))
}

/// Frequency-difference profile that keeps each lattice comoving with its
/// arm: during a ramp from `n1 hbar k` to `n2 hbar k` per arm the difference
/// runs linearly from `2 k n1 v_r` to `2 k n2 v_r`.
pub fn chirp_profile(schedule: &InterferometerSchedule, params: &LatticeParams) -> PiecewiseLinear {
    let momentum = schedule.arm1_momentum_profile();
    let scale = 2.0 * params.wavenumber * params.recoil_velocity;
    // the momentum profile is piecewise linear, so scaling its knots is exact
    let total = schedule.total_duration();
    let mut knots: Vec<(f64, f64)> = Vec::new();
    let mut boundaries: Vec<f64> = vec![0.0];
    let starts = schedule.segment_starts();
    for (start, seg) in starts.iter().zip(&schedule.segments) {
        let end = start + seg.duration();
        match seg {
            crate::schedule::Segment::DbdPulse { .. } => {
                let center = start + 0.5 * seg.duration();
                boundaries.push(center);
                boundaries.push(center);
            }
            crate::schedule::Segment::BoRamp { load, duration, .. } => {
                boundaries.push(start + load);
                boundaries.push(start + load + duration);
                boundaries.push(end);
            }
            crate::schedule::Segment::Free { .. } => boundaries.push(end),
        }
    }
    boundaries.push(total);
    let mut last = f64::NEG_INFINITY;
    for &t in &boundaries {
        // duplicate knots encode steps at the pulse centers
        let v = momentum.eval(t) * scale;
        if t > last || knots.last().map(|k| k.1 != v).unwrap_or(true) {
            knots.push((t, v));
        }
        last = t;
    }
    knots.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    PiecewiseLinear::new(&knots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schedule::{build_schedule, ScheduleConfig};
    use crate::species::AtomSpecies;

    fn field(sigma_pol: f64, d_omega: f64) -> TwinLatticeField {
        TwinLatticeField::new(
            1.0,
            sigma_pol,
            PiecewiseLinear::constant(d_omega),
            8.054e6,
        )
        .unwrap()
    }

    fn rb_params() -> LatticeParams {
        LatticeParams::derive(AtomSpecies::rb87(), 2.0 * std::f64::consts::PI * 100e9).unwrap()
    }

    #[test]
    fn lab_potential_origin() {
        // both cosines equal 1 at y = 0, t = 0
        let f = field(0.0, 1e5);
        assert!((potential_lab(&f, 0.0, 0.0) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn standing_wave_depth_for_paper_polarization() {
        let f = field(0.2688, 0.0);
        assert!((f.standing_wave_coefficient() - 0.368).abs() < 1e-3);
    }

    #[test]
    fn spatial_average_is_depth() {
        // average of each cos^2 over a lattice period is 1/2
        let f = field(0.0, 3e5);
        let k = f.wavenumber;
        let period = std::f64::consts::PI / k;
        let n = 20_000;
        let t = 1.7e-4;
        let avg: f64 = (0..n)
            .map(|i| potential_lab(&f, period * i as f64 / n as f64, t))
            .sum::<f64>()
            / n as f64;
        assert!((avg - 1.0).abs() < 1e-9);
    }

    #[test]
    fn lab_potential_periodic_and_bounded() {
        let f = field(0.0, 2.7e5);
        let k = f.wavenumber;
        let period = std::f64::consts::PI / k;
        for i in 0..200 {
            let y = -3.0 * period + 6.0 * period * i as f64 / 200.0;
            let t = 1e-4 * i as f64 / 200.0;
            let v = potential_lab(&f, y, t);
            assert!((potential_lab(&f, y + period, t) - v).abs() < 1e-12);
            assert!((-1e-12..=2.0 + 1e-12).contains(&v));
        }
    }

    #[test]
    fn lab_potential_even_in_y_at_zero_phase() {
        let f = field(0.3, 4e5);
        for i in 1..40 {
            let y = 1e-8 * i as f64;
            assert!((potential_lab(&f, y, 0.0) - potential_lab(&f, -y, 0.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn wp_frame_initial_shape() {
        // terms coincide at t = 0: 2 V0 cos^2(ky)
        let f = field(0.0, 5e5);
        for i in 0..50 {
            let y = 1e-8 * i as f64;
            let expect = 2.0 * (f.wavenumber * y).cos().powi(2);
            assert!((potential_wp_frame(&f, y, 0.0).unwrap() - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn wp_frame_time_averages() {
        let f = field(0.25, 2.0 * std::f64::consts::PI * 1e5);
        let y = 3.3e-8;
        let period = 1e-5; // one cycle of d_omega
        let n = 100_000;
        let mut avg = 0.0;
        for i in 0..n {
            let t = period * i as f64 / n as f64;
            avg += potential_wp_frame(&f, y, t).unwrap();
        }
        avg /= n as f64;
        // <cos^2(ky + wt)> = 1/2 and <cos(ky + wt) cos(ky)> = 0, leaving
        // cos^2(ky) + 1/2
        let expect = (f.wavenumber * y).cos().powi(2) + 0.5;
        assert!((avg - expect).abs() < 1e-6);
    }

    #[test]
    fn wp_frame_rejects_chirp() {
        let chirp = PiecewiseLinear::new(&[(0.0, 0.0), (1e-3, 4e5)]);
        let f = TwinLatticeField::new(1.0, 0.0, chirp, 8.054e6).unwrap();
        assert!(potential_wp_frame(&f, 0.0, 1e-4).is_err());
    }

    #[test]
    fn sigma_pol_range_enforced() {
        assert!(TwinLatticeField::new(1.0, 0.5, PiecewiseLinear::constant(0.0), 8e6).is_err());
        assert!(TwinLatticeField::new(1.0, -0.1, PiecewiseLinear::constant(0.0), 8e6).is_err());
    }

    #[test]
    fn chirp_values_on_schedule() {
        let params = rb_params();
        let sched = build_schedule(&ScheduleConfig::standard(408, 25.3 * params.recoil_energy))
            .unwrap();
        let chirp = chirp_profile(&sched, &params);
        // loading at +-4 hbar k: d_omega/2pi ~ 60.3 kHz
        let starts = sched.segment_starts();
        let first_bo = sched
            .segments
            .iter()
            .position(|s| matches!(s, crate::schedule::Segment::BoRamp { .. }))
            .unwrap();
        let t_load = starts[first_bo] + 1e-6;
        let f_load = chirp.eval(t_load) / (2.0 * std::f64::consts::PI);
        assert!((f_load - 60.3e3).abs() / 60.3e3 < 2e-3, "got {f_load}");
        // plateau at +-204 hbar k: ~3.08 MHz
        let free_idx = sched
            .segments
            .iter()
            .position(|s| matches!(s, crate::schedule::Segment::Free { .. }))
            .unwrap();
        let t_free = starts[free_idx] + 1e-4;
        let f_pk = chirp.eval(t_free) / (2.0 * std::f64::consts::PI);
        assert!((f_pk - 3.08e6).abs() / 3.08e6 < 2e-3, "got {f_pk}");
        // static arms before the first pulse center
        assert_eq!(chirp.eval(0.0), 0.0);
    }
}
