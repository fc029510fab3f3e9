//! Refits the error-estimate constants on the d = 0 calibration grid.
use hecke_core::afe::{calibration_grid, error_shape, zeta_d0_oracle, AfeConfig, AfeEngine};

fn main() {
    let mut out = Vec::new();
    for k in 0..=8 {
        let engine = AfeEngine::new(AfeConfig { k, ..Default::default() }).expect("valid config");
        let mut worst: f64 = 0.0;
        for s in calibration_grid() {
            let v = engine.eval(0, s).expect("grid point admissible");
            let err = (v.value - zeta_d0_oracle(s).expect("s != 1")).norm();
            worst = worst.max(err / error_shape(k, s, v.t_cond, v.x));
        }
        out.push(worst);
        println!("K={k} C={worst:.6e}");
    }
    println!("{out:?}");
}
