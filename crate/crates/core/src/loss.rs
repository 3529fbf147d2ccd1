//! Closed-form loss and contrast models.
//!
//! Landau-Zener transfer efficiency through the first band gap, the
//! spontaneous-emission rate of atoms riding one of the twin lattices, the
//! exponential survival it implies, and the atom-loss contrast model that
//! combines measured atom numbers with the Bragg-only baseline contrast.

use crate::constants::HBAR;
use crate::error::CoreError;
use crate::lattice::LatticeParams;
use crate::schedule::{InterferometerSchedule, Segment};
use crate::Result;

/// Critical acceleration pi V0^2 / (16 hbar^2 k) of the first-band-gap
/// diabatic model (m/s^2).
pub fn critical_acceleration(depth: f64, params: &LatticeParams) -> f64 {
    std::f64::consts::PI * depth * depth / (16.0 * HBAR * HBAR * params.wavenumber)
}

/// Transfer efficiency of `n_osc` Bloch oscillations at constant
/// acceleration `a`: `(1 - exp(-a_c/a))^n_osc` with the band gap V0/2.
pub fn landau_zener_efficiency(depth: f64, a: f64, n_osc: u32, params: &LatticeParams) -> Result<f64> {
    if a <= 0.0 {
        return Err(CoreError::Precondition("acceleration must be positive".into()));
    }
    if depth < 0.0 {
        return Err(CoreError::Precondition("depth must be >= 0".into()));
    }
    let a_c = critical_acceleration(depth, params);
    Ok((1.0 - (-a_c / a).exp()).powi(n_osc as i32))
}

/// Spontaneous-emission rate of an atom comoving with one lattice of a
/// blue-detuned twin lattice of depth `V0`:
/// `P = (Gamma/|Delta|) (V0/hbar) [1/(2 sqrt(V0/E_r)) + 1/2]`.
///
/// The first bracket term is the comoving lattice sampled by the lowest
/// Bloch state sitting on its nodes; the second is the time average of the
/// counterpropagating lattice.
pub fn spontaneous_rate(depth: f64, linewidth: f64, detuning: f64, params: &LatticeParams) -> Result<f64> {
    if depth <= 0.0 {
        return Err(CoreError::Precondition("depth must be positive".into()));
    }
    if detuning == 0.0 {
        return Err(CoreError::Precondition("detuning must be nonzero".into()));
    }
    let s = depth / params.recoil_energy;
    Ok(linewidth / detuning.abs() * (depth / HBAR) * (0.5 / s.sqrt() + 0.5))
}

/// Fraction of atoms surviving spontaneous emission for `tau_twin` of
/// lattice interaction, `exp(-P tau)`.
pub fn survival(rate: f64, tau_twin: f64) -> Result<f64> {
    if rate < 0.0 || tau_twin < 0.0 {
        return Err(CoreError::Precondition("rate and tau_twin must be >= 0".into()));
    }
    Ok((-rate * tau_twin).exp())
}

/// Total lattice-interaction time of a schedule (s); identical for all the
/// sequences with Bloch oscillations at fixed block timings.
pub fn tau_twin_of(schedule: &InterferometerSchedule) -> f64 {
    schedule.tau_twin()
}

/// Landau-Zener efficiency accumulated over all BO ramps of a schedule; each
/// 2 hbar k of arm momentum change is one gap crossing at that ramp's
/// acceleration.
pub fn schedule_lz_efficiency(schedule: &InterferometerSchedule, params: &LatticeParams) -> Result<f64> {
    let mut eff = 1.0;
    for seg in &schedule.segments {
        if let Segment::BoRamp { duration, start_arm, end_arm, depth, .. } = seg {
            let dn = (end_arm - start_arm).unsigned_abs();
            if dn == 0 {
                continue;
            }
            let crossings = dn / 2;
            let a = f64::from(dn) * params.recoil_velocity / duration;
            eff *= landau_zener_efficiency(*depth, a, crossings, params)?;
        }
    }
    Ok(eff)
}

/// Outcome of the atom-loss contrast model, flagged when the raw value left
/// [0, 1] and was clamped.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContrastValue {
    pub value: f64,
    pub clamped: bool,
}

/// Atom-loss contrast `C(K) = 1 - (1 - C8) / (N_ratio / survival)`.
///
/// `n_ratio` is the measured atom number relative to the Bragg-only
/// interferometer and `survival` the spontaneous-emission fraction, so the
/// quotient is the coherent fraction remaining after non-adiabatic losses.
pub fn atom_loss_contrast(n_ratio: f64, survival: f64, c8: f64) -> Result<ContrastValue> {
    if !(n_ratio > 0.0 && survival > 0.0 && survival <= 1.0) {
        return Err(CoreError::Precondition(
            "n_ratio must be > 0 and survival in (0, 1]".into(),
        ));
    }
    if !(c8 > 0.0 && c8 <= 1.0) {
        return Err(CoreError::Precondition("C(8 hbar k) must lie in (0, 1]".into()));
    }
    let raw = 1.0 - (1.0 - c8) / (n_ratio / survival);
    let value = raw.clamp(0.0, 1.0);
    Ok(ContrastValue { value, clamped: value != raw })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::species::AtomSpecies;
    use proptest::prelude::*;

    fn rb_params() -> LatticeParams {
        LatticeParams::derive(AtomSpecies::rb87(), 2.0 * std::f64::consts::PI * 100e9).unwrap()
    }

    #[test]
    fn lz_limits() {
        let p = rb_params();
        let er = p.recoil_energy;
        // adiabatic limit
        assert!(landau_zener_efficiency(5.0 * er, 1e-6, 1, &p).unwrap() > 1.0 - 1e-12);
        // vanishing gap
        assert!(landau_zener_efficiency(0.0, 10.0, 1, &p).unwrap() < 1e-12);
    }

    #[test]
    fn lz_deep_lattice_slow_ramp() {
        let p = rb_params();
        let a = 2.0 * p.recoil_velocity / 800e-6;
        let eff = landau_zener_efficiency(10.0 * p.recoil_energy, a, 1, &p).unwrap();
        assert!(eff > 0.999, "eff = {eff}");
    }

    #[test]
    fn spontaneous_rate_reference_point() {
        // V0 = 25.3 E_r at 100 GHz blue detuning: 22 per second +-5%
        let p = rb_params();
        let rate = spontaneous_rate(
            25.3 * p.recoil_energy,
            p.species.natural_linewidth,
            p.detuning,
            &p,
        )
        .unwrap();
        assert!((rate - 22.0).abs() / 22.0 < 0.05, "rate = {rate}");
    }

    #[test]
    fn spontaneous_rate_unit_depth() {
        // at V0 = E_r both bracket terms are 1/2
        let p = rb_params();
        let rate = spontaneous_rate(p.recoil_energy, p.species.natural_linewidth, p.detuning, &p)
            .unwrap();
        let expect = p.species.natural_linewidth / p.detuning * p.recoil_energy / HBAR;
        assert!((rate - expect).abs() / expect < 1e-12);
    }

    #[test]
    fn spontaneous_rate_vanishes_with_depth() {
        let p = rb_params();
        let r1 = spontaneous_rate(1e-4 * p.recoil_energy, p.species.natural_linewidth, p.detuning, &p).unwrap();
        let r2 = spontaneous_rate(1e-6 * p.recoil_energy, p.species.natural_linewidth, p.detuning, &p).unwrap();
        assert!(r2 < r1);
        assert!(r2 < 1e-2);
    }

    #[test]
    fn survival_reference_point() {
        // P = 22/s over 9.6 ms of lattice time: 18-19% loss
        let s = survival(22.0, 9.6e-3).unwrap();
        assert!((1.0 - s - 0.18).abs() < 0.02, "loss = {}", 1.0 - s);
    }

    #[test]
    fn survival_limits() {
        assert_eq!(survival(0.0, 1.0).unwrap(), 1.0);
        assert!(survival(1e9, 1.0).unwrap() < 1e-300);
    }

    #[test]
    fn atom_loss_contrast_reduces_to_c8() {
        let c = atom_loss_contrast(0.81, 0.81, 0.7059).unwrap();
        assert!((c.value - 0.7059).abs() < 1e-12);
        assert!(!c.clamped);
    }

    #[test]
    fn atom_loss_contrast_reference_point() {
        // measured endpoint: N/N0 = 0.35, survival 0.81, C8 = 0.7059
        let c = atom_loss_contrast(0.35, 0.81, 0.7059).unwrap();
        assert!((c.value - 0.32).abs() < 0.01, "C = {}", c.value);
        assert!((c.value - 0.35).abs() < 0.05);
    }

    #[test]
    fn atom_loss_contrast_offset_only_limit() {
        let c8 = 0.7059;
        let c = atom_loss_contrast(1.0 - c8, 1.0, c8).unwrap();
        assert!(c.value.abs() < 1e-12);
    }

    #[test]
    fn atom_loss_contrast_clamps_and_flags() {
        let c = atom_loss_contrast(0.1, 1.0, 0.5).unwrap();
        assert_eq!(c.value, 0.0);
        assert!(c.clamped);
    }

    #[test]
    fn schedule_lz_efficiency_matches_manual_product() {
        use crate::schedule::{build_schedule, ScheduleConfig};
        let p = rb_params();
        let depth = 25.3 * p.recoil_energy;
        let sched = build_schedule(&ScheduleConfig::standard(408, depth)).unwrap();
        let got = schedule_lz_efficiency(&sched, &p).unwrap();
        // per half: 6 hbar k over 0.3 ms then 194 hbar k over 1.7 ms, four times
        let a1 = 6.0 * p.recoil_velocity / 0.3e-3;
        let a2 = 194.0 * p.recoil_velocity / 1.7e-3;
        let manual = landau_zener_efficiency(depth, a1, 3, &p).unwrap().powi(4)
            * landau_zener_efficiency(depth, a2, 97, &p).unwrap().powi(4);
        assert!((got - manual).abs() < 1e-12);
    }

    proptest! {
        /// C is monotone increasing in the quotient n_ratio/survival.
        #[test]
        fn contrast_monotone_in_quotient(
            q1 in 0.05_f64..3.0,
            dq in 0.0_f64..2.0,
            c8 in 0.05_f64..1.0,
        ) {
            let a = atom_loss_contrast(q1, 1.0, c8).unwrap().value;
            let b = atom_loss_contrast(q1 + dq, 1.0, c8).unwrap().value;
            prop_assert!(b >= a - 1e-12);
        }

        /// survival factorizes over time intervals.
        #[test]
        fn survival_multiplicative(
            p in 0.0_f64..100.0,
            t1 in 0.0_f64..0.05,
            t2 in 0.0_f64..0.05,
        ) {
            let lhs = survival(p, t1 + t2).unwrap();
            let rhs = survival(p, t1).unwrap() * survival(p, t2).unwrap();
            prop_assert!((lhs - rhs).abs() < 1e-12);
        }

        /// spontaneous rate grows with depth.
        #[test]
        fn rate_monotone_in_depth(v0 in 0.1_f64..60.0, dv in 0.01_f64..20.0) {
            let par = rb_params();
            let er = par.recoil_energy;
            let gamma = par.species.natural_linewidth;
            let r1 = spontaneous_rate(v0 * er, gamma, par.detuning, &par).unwrap();
            let r2 = spontaneous_rate((v0 + dv) * er, gamma, par.detuning, &par).unwrap();
            prop_assert!(r2 > r1);
        }
    }
}
