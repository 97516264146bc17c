//! Print the closed-form BIC predictions of the fig2 parameter set and
//! the decay-rate zeros found by a frequency sweep.

use bicwire::{bic, dispersion, model::Sector, presets};

fn main() -> Result<(), bicwire::Error> {
    let preset = presets::fig2();
    for p in bic::predict_all(&preset.params, Sector::P)? {
        println!(
            "{:?} BIC at z0 = {:+.4}, omega+El = {:+.4}",
            p.kind,
            p.z0,
            p.omega_plus_el(&preset.params)
        );
    }
    let table = dispersion::sweep(&preset.params, preset.sector, &preset.omega_grid())?;
    println!("gamma zeros: {:?}", table.zeros);
    Ok(())
}
