use std::time::Instant;
use twinlat_core::gpe::{bloch_efficiency, BlochRunConfig};
use twinlat_core::lattice::LatticeParams;
use twinlat_core::species::AtomSpecies;

fn main() {
    let params =
        LatticeParams::derive(AtomSpecies::rb87(), 2.0 * std::f64::consts::PI * 100e9).unwrap();
    let er = params.recoil_energy;
    for (v0_er, t_acc, sig) in [
        (2.0, 800e-6, 0.0),
        (2.5, 800e-6, 0.0),
        (3.0, 800e-6, 0.0),
        (10.0, 800e-6, 0.0),
        (2.0, 800e-6, 0.2688),
        (4.0, 800e-6, 0.2688),
    ] {
        let start = Instant::now();
        let cfg = BlochRunConfig::new(2, v0_er * er, t_acc, sig, &params);
        let r = bloch_efficiency(&cfg, &params).unwrap();
        // closed-form LZ for comparison
        let a = 2.0 * params.recoil_velocity / t_acc;
        let v0 = v0_er * er;
        let hbar = 1.054571817e-34;
        let a_c = std::f64::consts::PI * v0 * v0 / (16.0 * hbar * hbar * params.wavenumber);
        let lz = 1.0 - (-a_c / a).exp();
        println!(
            "V0={:4.1}Er t_acc={:3.0}us sig={:.4} -> eff={:.5} (LZ closed form {:.5})  norm_err={:.2e}  [{:.1} s]",
            v0_er,
            t_acc * 1e6,
            sig,
            r.efficiency,
            lz,
            r.norm_error,
            start.elapsed().as_secs_f64()
        );
    }
}
