//! Interferometer pulse sequences.
//!
//! A schedule is an ordered list of segments: double-Bragg pulse windows,
//! Bloch-oscillation blocks (intensity load, one or two linear frequency
//! ramps, intensity unload) and free evolution. Arm momenta are tracked in
//! units of the photon recoil `hbar k` for the positive arm; the negative arm
//! mirrors it throughout.
//!
//! Timing convention: a Bragg pulse of Gaussian width `sigma` occupies a
//! window of `7 sigma` (+-3.5 sigma) and its momentum kick is booked at the
//! window center. With the 37.5 us pulses, 200 us loads and 2 ms ramps this
//! closes the total duration to exactly 12.1 ms for every sequence that
//! contains Bloch oscillations.

use crate::error::CoreError;
use crate::piecewise::PiecewiseLinear;
use crate::Result;

/// Full pulse window occupied by a Bragg pulse, in units of its Gaussian width.
pub const DBD_WINDOW_SIGMAS: f64 = 7.0;

/// One element of the pulse sequence.
#[derive(Debug, Clone, PartialEq)]
pub enum Segment {
    /// First-order double Bragg pulse: Gaussian width (s) and the momentum
    /// change of the positive arm in units of hbar k (the other arm gets the
    /// opposite kick).
    DbdPulse { width: f64, arm_delta: i32 },
    /// One linear Bloch-oscillation frequency ramp. `load`/`unload` are the
    /// linear intensity ramps attached before/after this piece (zero when the
    /// ramp is the interior piece of a split ramp).
    BoRamp {
        load: f64,
        duration: f64,
        unload: f64,
        start_arm: i32,
        end_arm: i32,
        depth: f64,
    },
    /// Lattice off.
    Free { duration: f64 },
}

impl Segment {
    pub fn duration(&self) -> f64 {
        match self {
            Segment::DbdPulse { width, .. } => DBD_WINDOW_SIGMAS * width,
            Segment::BoRamp { load, duration, unload, .. } => load + duration + unload,
            Segment::Free { duration } => *duration,
        }
    }
}

/// Scenario parameters from which a schedule is assembled.
#[derive(Debug, Clone)]
pub struct ScheduleConfig {
    /// Relative momentum K at the plateau, units of hbar k; even, >= 8.
    pub k_relative: i32,
    /// Lattice depth during Bloch oscillations (J).
    pub depth: f64,
    /// Timing asymmetry added to the second-half free evolution (s).
    pub delta_t: f64,
    /// Free-fall time before the interferometer starts (s).
    pub t0: f64,
    /// Total interferometer duration 2T (s).
    pub total_duration: f64,
    /// Gaussian width of the Bragg pulses (s).
    pub pulse_width: f64,
    /// Intensity load/unload ramp time of a BO block (s).
    pub load_time: f64,
    /// Total frequency-ramp time of one BO block (s).
    pub ramp_time: f64,
}

impl ScheduleConfig {
    /// Timings of the experiment: 37.5 us pulses, 200 us loads, 2 ms ramps,
    /// 2T = 12.1 ms, t0 = 14.7 ms.
    pub fn standard(k_relative: i32, depth: f64) -> Self {
        Self {
            k_relative,
            depth,
            delta_t: 0.0,
            t0: 14.7e-3,
            total_duration: 12.1e-3,
            pulse_width: 37.5e-6,
            load_time: 200e-6,
            ramp_time: 2.0e-3,
        }
    }
}

/// The assembled pulse sequence of one interferometer.
#[derive(Debug, Clone)]
pub struct InterferometerSchedule {
    pub segments: Vec<Segment>,
    pub k_relative: i32,
    pub delta_t: f64,
    pub t0: f64,
    pub depth: f64,
}

/// Split-ramp rule: relative momentum transferred in the first piece and its
/// duration, for the sequences where the ramp is split in two.
fn split_ramp_rule(k_relative: i32, ramp_time: f64) -> Option<(i32, f64, f64)> {
    let first = match k_relative {
        128 => 0.5e-3,
        208 => 0.4e-3,
        308 | 408 => 0.3e-3,
        _ => return None,
    };
    Some((12, first, ramp_time - first))
}

/// Build the interferometer schedule for one value of the relative momentum.
///
/// Sequence: two splitting pulses to +-4 hbar k, an acceleration and a
/// deceleration BO block around the first free evolution, a four-pulse
/// mirror, the mirrored BO pair around the second free evolution (stretched
/// by `delta_t`), and two recombination pulses. For `k_relative == 8` the BO
/// blocks are absent and the free evolution absorbs the time.
pub fn build_schedule(config: &ScheduleConfig) -> Result<InterferometerSchedule> {
    let k = config.k_relative;
    if k < 8 || k % 2 != 0 {
        return Err(CoreError::Precondition(format!(
            "relative momentum K = {k} hbar k must be even and >= 8"
        )));
    }
    for (name, v) in [
        ("pulse_width", config.pulse_width),
        ("load_time", config.load_time),
        ("ramp_time", config.ramp_time),
        ("total_duration", config.total_duration),
        ("t0", config.t0),
    ] {
        if v <= 0.0 {
            return Err(CoreError::Precondition(format!("{name} must be positive, got {v}")));
        }
    }
    if k > 8 && config.depth <= 0.0 {
        return Err(CoreError::Precondition(
            "lattice depth must be positive for sequences with Bloch oscillations".into(),
        ));
    }

    let window = DBD_WINDOW_SIGMAS * config.pulse_width;
    let has_bo = k > 8;
    let bo_block = if has_bo { 2.0 * config.load_time + config.ramp_time } else { 0.0 };
    // 8 pulse windows and, with BO, 4 blocks; the two free segments take the rest.
    let free = 0.5 * (config.total_duration - 8.0 * window - 4.0 * bo_block);
    if free <= 0.0 {
        return Err(CoreError::Precondition(format!(
            "total duration {:.4e} s is too short for the pulse sequence",
            config.total_duration
        )));
    }
    if free + config.delta_t <= 0.0 {
        return Err(CoreError::Precondition(format!(
            "delta_t = {:.3e} s would make the second free evolution non-positive",
            config.delta_t
        )));
    }

    let pulse = |arm_delta: i32| Segment::DbdPulse { width: config.pulse_width, arm_delta };
    let plateau = k / 2;

    let mut ramps_up: Vec<(i32, i32, f64)> = Vec::new();
    match split_ramp_rule(k, config.ramp_time) {
        Some((rel_first, t_first, t_rest)) => {
            let mid = 4 + rel_first / 2;
            ramps_up.push((4, mid, t_first));
            ramps_up.push((mid, plateau, t_rest));
        }
        None => ramps_up.push((4, plateau, config.ramp_time)),
    }

    let bo_block_segments = |up: bool, sign: i32| -> Vec<Segment> {
        let mut parts: Vec<(i32, i32, f64)> = if up {
            ramps_up.clone()
        } else {
            ramps_up.iter().rev().map(|&(a, b, t)| (b, a, t)).collect()
        };
        for p in parts.iter_mut() {
            p.0 *= sign;
            p.1 *= sign;
        }
        let n = parts.len();
        parts
            .into_iter()
            .enumerate()
            .map(|(i, (start_arm, end_arm, duration))| Segment::BoRamp {
                load: if i == 0 { config.load_time } else { 0.0 },
                duration,
                unload: if i == n - 1 { config.load_time } else { 0.0 },
                start_arm,
                end_arm,
                depth: config.depth,
            })
            .collect()
    };

    let mut segments = Vec::new();
    segments.push(pulse(2));
    segments.push(pulse(2));
    if has_bo {
        segments.extend(bo_block_segments(true, 1));
    }
    segments.push(Segment::Free { duration: free });
    if has_bo {
        segments.extend(bo_block_segments(false, 1));
    }
    for _ in 0..4 {
        segments.push(pulse(-2));
    }
    if has_bo {
        segments.extend(bo_block_segments(true, -1));
    }
    segments.push(Segment::Free { duration: free + config.delta_t });
    if has_bo {
        segments.extend(bo_block_segments(false, -1));
    }
    segments.push(pulse(2));
    segments.push(pulse(2));

    Ok(InterferometerSchedule {
        segments,
        k_relative: k,
        delta_t: config.delta_t,
        t0: config.t0,
        depth: config.depth,
    })
}

impl InterferometerSchedule {
    /// Total duration 2T including the asymmetry (s).
    pub fn total_duration(&self) -> f64 {
        self.segments.iter().map(Segment::duration).sum()
    }

    /// Total time the atoms interact with the twin lattice during Bloch
    /// oscillations, including the intensity load and unload ramps (s).
    pub fn tau_twin(&self) -> f64 {
        self.segments
            .iter()
            .filter(|s| matches!(s, Segment::BoRamp { .. }))
            .map(Segment::duration)
            .sum()
    }

    /// Plateau relative momentum K/2 of the positive arm (hbar k).
    pub fn plateau_arm_momentum(&self) -> i32 {
        self.k_relative / 2
    }

    /// Segment start times in order.
    pub fn segment_starts(&self) -> Vec<f64> {
        let mut t = 0.0;
        self.segments
            .iter()
            .map(|s| {
                let start = t;
                t += s.duration();
                start
            })
            .collect()
    }

    /// Momentum of the positive arm in units of hbar k as a piecewise-linear
    /// function of time. Bragg kicks step at the pulse-window centers; BO
    /// ramps interpolate linearly.
    pub fn arm1_momentum_profile(&self) -> PiecewiseLinear {
        let mut knots: Vec<(f64, f64)> = vec![(0.0, 0.0)];
        let mut n = 0.0;
        let mut t = 0.0;
        for seg in &self.segments {
            match *seg {
                Segment::DbdPulse { arm_delta, .. } => {
                    let d = seg.duration();
                    let center = t + 0.5 * d;
                    knots.push((center, n));
                    n += f64::from(arm_delta);
                    knots.push((center, n));
                    t += d;
                }
                Segment::BoRamp { load, duration, unload, start_arm, end_arm, .. } => {
                    debug_assert!((n - f64::from(start_arm)).abs() < 1e-9);
                    // accumulate boundary times sequentially so they stay
                    // monotone to the last ulp
                    let t_ramp = t + load;
                    let t_unload = t_ramp + duration;
                    let t_end = t_unload + unload;
                    knots.push((t_ramp, f64::from(start_arm)));
                    knots.push((t_unload, f64::from(end_arm)));
                    n = f64::from(end_arm);
                    t = t_end;
                    knots.push((t, n));
                }
                Segment::Free { duration } => {
                    t += duration;
                    knots.push((t, n));
                }
            }
        }
        knots.push((t, n));
        PiecewiseLinear::new(&knots)
    }

    /// Net momentum change of the closed (zero-port) branch; zero for a
    /// well-formed schedule.
    pub fn net_arm_momentum(&self) -> i32 {
        let mut n = 0;
        for seg in &self.segments {
            match *seg {
                Segment::DbdPulse { arm_delta, .. } => n += arm_delta,
                Segment::BoRamp { start_arm, end_arm, .. } => n += end_arm - start_arm,
                Segment::Free { .. } => {}
            }
        }
        n
    }

    /// For `delta_t = 0` the second half of the sequence is the time reverse
    /// of the first: segment durations mirror and the arm momentum profile is
    /// antisymmetric about the midpoint.
    pub fn is_time_reverse_symmetric(&self, tol: f64) -> bool {
        let durations: Vec<f64> = self.segments.iter().map(Segment::duration).collect();
        let mirrored = durations
            .iter()
            .zip(durations.iter().rev())
            .all(|(a, b)| (a - b).abs() < tol);
        if !mirrored {
            return false;
        }
        let total = self.total_duration();
        let profile = self.arm1_momentum_profile();
        let steps = 2048;
        (0..=steps).all(|i| {
            let t = total * f64::from(i) / f64::from(steps);
            (profile.eval(t) + profile.eval(total - t)).abs() < 1e-6
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sched(k: i32) -> InterferometerSchedule {
        build_schedule(&ScheduleConfig::standard(k, 25.3 * 2.5e-30)).unwrap()
    }

    #[test]
    fn k48_single_ramp_blocks() {
        let s = sched(48);
        let ramps: Vec<_> = s
            .segments
            .iter()
            .filter_map(|seg| match seg {
                Segment::BoRamp { duration, load, unload, .. } => Some((*load, *duration, *unload)),
                _ => None,
            })
            .collect();
        assert_eq!(ramps.len(), 4);
        for (load, dur, unload) in ramps {
            assert!((dur - 2.0e-3).abs() < 1e-12);
            assert!((load - 200e-6).abs() < 1e-12);
            assert!((unload - 200e-6).abs() < 1e-12);
        }
    }

    #[test]
    fn k408_split_ramp_first_piece() {
        let s = sched(408);
        let first = s
            .segments
            .iter()
            .find_map(|seg| match seg {
                Segment::BoRamp { duration, start_arm, end_arm, .. } => {
                    Some((*duration, *start_arm, *end_arm))
                }
                _ => None,
            })
            .unwrap();
        // 12 hbar k of relative momentum (6 per arm) in 0.3 ms
        assert!((first.0 - 0.3e-3).abs() < 1e-12);
        assert_eq!(first.1, 4);
        assert_eq!(first.2, 10);
    }

    #[test]
    fn k8_has_no_bo_blocks() {
        let s = sched(8);
        assert!(s.segments.iter().all(|seg| !matches!(seg, Segment::BoRamp { .. })));
        assert!((s.total_duration() - 12.1e-3).abs() < 1e-12);
        assert_eq!(s.tau_twin(), 0.0);
    }

    #[test]
    fn total_duration_and_tau_twin() {
        for k in [24, 48, 88, 128, 208, 308, 408] {
            let s = sched(k);
            assert!(
                (s.total_duration() - 12.1e-3).abs() < 1e-12,
                "2T != 12.1 ms for K={k}"
            );
            assert!((s.tau_twin() - 9.6e-3).abs() < 1e-12, "tau_twin != 9.6 ms for K={k}");
        }
    }

    #[test]
    fn free_segments_are_200us_with_bo() {
        let s = sched(408);
        let frees: Vec<f64> = s
            .segments
            .iter()
            .filter_map(|seg| match seg {
                Segment::Free { duration } => Some(*duration),
                _ => None,
            })
            .collect();
        assert_eq!(frees.len(), 2);
        assert!((frees[0] - 200e-6).abs() < 1e-12);
        assert!((frees[1] - 200e-6).abs() < 1e-12);
    }

    #[test]
    fn momentum_closes_and_mirror_symmetry() {
        for k in [8, 24, 128, 408] {
            let s = sched(k);
            assert_eq!(s.net_arm_momentum(), 0, "momentum does not close for K={k}");
            assert!(s.is_time_reverse_symmetric(1e-12), "not mirror symmetric for K={k}");
        }
    }

    #[test]
    fn delta_t_breaks_symmetry() {
        let mut cfg = ScheduleConfig::standard(48, 2.5e-29);
        cfg.delta_t = 5e-6;
        let s = build_schedule(&cfg).unwrap();
        assert!(!s.is_time_reverse_symmetric(1e-12));
        assert!((s.total_duration() - (12.1e-3 + 5e-6)).abs() < 1e-12);
    }

    #[test]
    fn integer_momenta_at_boundaries() {
        let s = sched(208);
        let profile = s.arm1_momentum_profile();
        let mut t = 0.0;
        for seg in &s.segments {
            t += seg.duration();
            let n = profile.eval(t);
            assert!((n - n.round()).abs() < 1e-9, "non-integer momentum at boundary");
        }
    }

    #[test]
    fn profile_plateau_value() {
        let s = sched(408);
        // midpoint of the first free evolution sits on the plateau
        let starts = s.segment_starts();
        let free_idx = s
            .segments
            .iter()
            .position(|seg| matches!(seg, Segment::Free { .. }))
            .unwrap();
        let t = starts[free_idx] + 100e-6;
        assert!((s.arm1_momentum_profile().eval(t) - 204.0).abs() < 1e-9);
    }

    #[test]
    fn rejects_bad_k() {
        assert!(build_schedule(&ScheduleConfig::standard(7, 1e-29)).is_err());
        assert!(build_schedule(&ScheduleConfig::standard(6, 1e-29)).is_err());
        assert!(build_schedule(&ScheduleConfig::standard(9, 1e-29)).is_err());
    }

    #[test]
    fn rejects_negative_durations() {
        let mut cfg = ScheduleConfig::standard(48, 1e-29);
        cfg.load_time = -1e-6;
        assert!(build_schedule(&cfg).is_err());
    }
}
