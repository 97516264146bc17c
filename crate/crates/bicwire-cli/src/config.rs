//! Run configuration: defaults, presets, config file, and flag overlay.
//!
//! Precedence (lowest to highest): built-in defaults (the fig2 parameter
//! set) < `--preset` < `--config` file < explicit flags.

use serde::{Deserialize, Serialize};

use bicwire::model::Sector;
use bicwire::presets::{self, Preset};
use bicwire::ModelParams;

/// Fully resolved run configuration. Round-trips losslessly through TOML.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    #[serde(rename = "W")]
    pub w: f64,
    pub g: f64,
    #[serde(rename = "T1")]
    pub t1: f64,
    #[serde(rename = "T2")]
    pub t2: f64,
    #[serde(rename = "El")]
    pub e_l: f64,
    #[serde(rename = "Eu")]
    pub e_u: f64,
    #[serde(rename = "xD")]
    pub x_d: f64,
    pub n: f64,
    pub sector: String,
    pub omega_min: f64,
    pub omega_max: f64,
    pub omega_steps: usize,
}

/// A sparse layer of settings (config file or command-line flags).
#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PartialConfig {
    #[serde(rename = "W")]
    pub w: Option<f64>,
    pub g: Option<f64>,
    #[serde(rename = "T1")]
    pub t1: Option<f64>,
    #[serde(rename = "T2")]
    pub t2: Option<f64>,
    #[serde(rename = "El")]
    pub e_l: Option<f64>,
    #[serde(rename = "Eu")]
    pub e_u: Option<f64>,
    #[serde(rename = "xD")]
    pub x_d: Option<f64>,
    pub n: Option<f64>,
    pub sector: Option<String>,
    pub omega_min: Option<f64>,
    pub omega_max: Option<f64>,
    pub omega_steps: Option<usize>,
}

impl PartialConfig {
    pub fn parse_toml(text: &str) -> Result<Self, String> {
        toml::from_str(text).map_err(|e| format!("config file: {e}"))
    }

    fn apply(&self, base: &mut RunConfig, range_set: &mut bool) {
        macro_rules! ov {
            ($($f:ident),*) => { $( if let Some(v) = self.$f.clone() { base.$f = v; } )* };
        }
        ov!(w, g, t1, t2, e_l, e_u, x_d, n, sector, omega_steps);
        if let Some(v) = self.omega_min {
            base.omega_min = v;
            *range_set = true;
        }
        if let Some(v) = self.omega_max {
            base.omega_max = v;
            *range_set = true;
        }
    }
}

impl RunConfig {
    fn from_preset(p: &Preset) -> Self {
        Self {
            w: p.params.w,
            g: p.params.g,
            t1: p.params.t1,
            t2: p.params.t2,
            e_l: p.params.e_l,
            e_u: p.params.e_u,
            x_d: p.params.x_d as f64,
            n: p.params.n as f64,
            sector: p.sector.label().to_string(),
            omega_min: p.omega_min,
            omega_max: p.omega_max,
            omega_steps: p.omega_steps,
        }
    }

    /// Resolve the effective configuration from the precedence chain.
    pub fn resolve(
        preset: Option<&str>,
        file: Option<&PartialConfig>,
        flags: &PartialConfig,
    ) -> Result<Self, String> {
        let preset = match preset {
            Some(name) => Some(
                presets::by_name(name)
                    .ok_or_else(|| format!("unknown preset '{name}' (have fig2..fig5)"))?,
            ),
            None => None,
        };
        let mut cfg = Self::from_preset(&preset.clone().unwrap_or_else(presets::fig2));
        // was the sweep range pinned by preset/file/flags?
        let mut range_set = preset.is_some();
        if let Some(f) = file {
            f.apply(&mut cfg, &mut range_set);
        }
        flags.apply(&mut cfg, &mut range_set);
        if !range_set {
            // default grid widens for the longer impurity spacing
            let (lo, hi) = if cfg.x_d >= 4.0 {
                (-1.6, 1.6)
            } else {
                (-1.0, 1.6)
            };
            cfg.omega_min = lo;
            cfg.omega_max = hi;
        }
        if !cfg.omega_min.is_finite() || !cfg.omega_max.is_finite() || cfg.omega_max < cfg.omega_min
        {
            return Err(format!(
                "omega range is empty or non-finite: [{}, {}]",
                cfg.omega_min, cfg.omega_max
            ));
        }
        if cfg.omega_steps == 0 {
            return Err("omega_steps must be at least 1".into());
        }
        Ok(cfg)
    }

    pub fn params(&self) -> Result<ModelParams, String> {
        ModelParams::from_raw(
            self.w, self.g, self.t1, self.t2, self.e_l, self.e_u, self.x_d, self.n,
        )
        .map_err(|e| e.to_string())
    }

    pub fn sector(&self) -> Result<Sector, String> {
        self.sector.parse()
    }

    /// The `Ω + E_l` sweep grid.
    pub fn omega_grid(&self) -> Vec<f64> {
        presets::grid(self.omega_min, self.omega_max, self.omega_steps)
    }
}

/// Annotation attached to the dynamic prediction of certain presets: the
/// reference curves quote a slightly different zero location than the
/// closed form.
pub fn dynamic_note(preset: Option<&str>) -> Option<&'static str> {
    match preset {
        Some("fig3") | Some("fig5") => {
            Some("closed-form frequency -0.65; the reference figure quotes -0.659 for this zero")
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_are_fig2() {
        let cfg = RunConfig::resolve(None, None, &PartialConfig::default()).unwrap();
        assert_eq!(cfg.w, 2.0);
        assert_eq!(cfg.g, 0.2);
        assert_eq!(cfg.x_d, 2.0);
        assert_eq!(cfg.sector, "p");
        assert_eq!((cfg.omega_min, cfg.omega_max), (-1.0, 1.6));
        assert_eq!(cfg.omega_steps, 801);
    }

    #[test]
    fn toml_round_trip_is_lossless() {
        let cfg = RunConfig::resolve(Some("fig4"), None, &PartialConfig::default()).unwrap();
        let text = toml::to_string(&cfg).unwrap();
        let back: RunConfig = toml::from_str(&text).unwrap();
        assert_eq!(cfg, back);
    }

    #[test]
    fn precedence_flags_over_file_over_preset() {
        let file = PartialConfig {
            g: Some(0.4),
            t2: Some(0.1),
            ..Default::default()
        };
        let flags = PartialConfig {
            g: Some(0.1),
            ..Default::default()
        };
        let cfg = RunConfig::resolve(Some("fig2"), Some(&file), &flags).unwrap();
        assert_eq!(cfg.g, 0.1); // flag beats file
        assert_eq!(cfg.t2, 0.1); // file beats preset
        assert_eq!(cfg.t1, 0.2); // preset survives
    }

    #[test]
    fn default_range_follows_x_d() {
        let flags = PartialConfig {
            x_d: Some(4.0),
            ..Default::default()
        };
        let cfg = RunConfig::resolve(None, None, &flags).unwrap();
        assert_eq!((cfg.omega_min, cfg.omega_max), (-1.6, 1.6));
        // but an explicit preset pins its own range
        let cfg = RunConfig::resolve(Some("fig2"), None, &flags).unwrap();
        assert_eq!((cfg.omega_min, cfg.omega_max), (-1.0, 1.6));
    }

    #[test]
    fn unknown_config_keys_are_rejected() {
        assert!(PartialConfig::parse_toml("gg = 0.3").is_err());
    }

    #[test]
    fn fractional_site_is_a_config_error() {
        let flags = PartialConfig {
            x_d: Some(2.5),
            ..Default::default()
        };
        let cfg = RunConfig::resolve(None, None, &flags).unwrap();
        let err = cfg.params().unwrap_err();
        assert!(err.contains("x_D must be a positive integer"));
    }
}
