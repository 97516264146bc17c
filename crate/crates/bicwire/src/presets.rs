//! Bundled parameter sets reproducing the reference figures.
//!
//! All four share `T1 = T2 = 0.2`, `E_u = 0.1`, `n = 0`, `W = 2`, the
//! p-sector, and differ in `(x_D, g)`:
//!
//! | preset | x_D | g   |
//! |--------|-----|-----|
//! | fig2   |  2  | 0.2 |
//! | fig3   |  2  | 0.4 |
//! | fig4   |  4  | 0.2 |
//! | fig5   |  4  | 0.4 |
//!
//! The lower level is placed at `E_l = 0` so the sweep axis `Ω + E_l`
//! coincides with the bare frequency.

use crate::model::{ModelParams, Sector};

#[derive(Debug, Clone)]
pub struct Preset {
    pub name: &'static str,
    pub params: ModelParams,
    pub sector: Sector,
    /// Default sweep range in `Ω + E_l` and point count.
    pub omega_min: f64,
    pub omega_max: f64,
    pub omega_steps: usize,
}

impl Preset {
    /// The default sweep grid (inclusive endpoints).
    pub fn omega_grid(&self) -> Vec<f64> {
        grid(self.omega_min, self.omega_max, self.omega_steps)
    }
}

/// Uniform inclusive grid with `steps` points.
pub fn grid(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    if steps <= 1 {
        return vec![lo];
    }
    (0..steps)
        .map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64)
        .collect()
}

fn base(name: &'static str, x_d: u32, g: f64) -> Preset {
    let params =
        ModelParams::new(2.0, g, 0.2, 0.2, 0.0, 0.1, x_d, 0).expect("preset parameters are valid");
    let (omega_min, omega_max) = if x_d == 2 { (-1.0, 1.6) } else { (-1.6, 1.6) };
    Preset {
        name,
        params,
        sector: Sector::P,
        omega_min,
        omega_max,
        omega_steps: 801,
    }
}

pub fn fig2() -> Preset {
    base("fig2", 2, 0.2)
}

pub fn fig3() -> Preset {
    base("fig3", 2, 0.4)
}

pub fn fig4() -> Preset {
    base("fig4", 4, 0.2)
}

pub fn fig5() -> Preset {
    base("fig5", 4, 0.4)
}

pub fn by_name(name: &str) -> Option<Preset> {
    match name {
        "fig2" => Some(fig2()),
        "fig3" => Some(fig3()),
        "fig4" => Some(fig4()),
        "fig5" => Some(fig5()),
        _ => None,
    }
}
