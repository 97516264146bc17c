//! Physical parameters, parity sectors, and the dressed two-level reduction.
//!
//! Units: lattice constant and ℏ are 1, the wire band center is the energy
//! origin. `w` is the half-bandwidth, so the continuum is `[-w, w]`.

use crate::{Error, Result};

/// Parity sector of the inversion-symmetric two-impurity problem.
///
/// Selects the sign in the self-energy profile `1 ± u^{2x_D}`:
/// plus for [`Sector::S`] (symmetric), minus for [`Sector::P`]
/// (antisymmetric).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sector {
    /// Antisymmetric combinations; couples through `sin(k x_D)`.
    P,
    /// Symmetric combinations; couples through `cos(k x_D)`.
    S,
}

impl Sector {
    /// Sign of the `u^{2x_D}` term: +1 for s, -1 for p.
    pub fn sign(self) -> f64 {
        match self {
            Sector::S => 1.0,
            Sector::P => -1.0,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Sector::P => "p",
            Sector::S => "s",
        }
    }
}

impl std::str::FromStr for Sector {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "p" | "P" => Ok(Sector::P),
            "s" | "S" => Ok(Sector::S),
            other => Err(format!("sector must be 'p' or 's', got '{other}'")),
        }
    }
}

impl std::fmt::Display for Sector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Parameters of one photon manifold of the driven two-impurity wire.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    /// Half-bandwidth of the wire continuum; the band is `[-w, w]`.
    pub w: f64,
    /// Dimensionless impurity-wire coupling.
    pub g: f64,
    /// Intra-atomic optical transition strength (lower ↔ upper level).
    pub t1: f64,
    /// Inter-atomic optical transition strength (lower level ↔ wire).
    pub t2: f64,
    /// Lower impurity level (donor = acceptor).
    pub e_l: f64,
    /// Upper impurity level.
    pub e_u: f64,
    /// Donor position in lattice sites; the acceptor sits at `-x_d`.
    pub x_d: u32,
    /// Photon manifold index.
    pub n: u32,
}

impl ModelParams {
    /// Validate and construct. `w` must be positive and `x_d >= 1`.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        w: f64,
        g: f64,
        t1: f64,
        t2: f64,
        e_l: f64,
        e_u: f64,
        x_d: u32,
        n: u32,
    ) -> Result<Self> {
        for (name, value) in [
            ("W", w),
            ("g", g),
            ("T1", t1),
            ("T2", t2),
            ("E_l", e_l),
            ("E_u", e_u),
        ] {
            if !value.is_finite() {
                return Err(Error::NonFinite { name, value });
            }
        }
        if w <= 0.0 {
            return Err(Error::NonPositiveBandwidth(w));
        }
        if x_d == 0 {
            return Err(Error::InvalidImpuritySite(0.0));
        }
        Ok(Self {
            w,
            g,
            t1,
            t2,
            e_l,
            e_u,
            x_d,
            n,
        })
    }

    /// Construct from raw (possibly non-integer) position and manifold
    /// index, as they arrive from config files.
    #[allow(clippy::too_many_arguments)]
    pub fn from_raw(
        w: f64,
        g: f64,
        t1: f64,
        t2: f64,
        e_l: f64,
        e_u: f64,
        x_d: f64,
        n: f64,
    ) -> Result<Self> {
        if !x_d.is_finite() || x_d.fract() != 0.0 || x_d < 1.0 {
            return Err(Error::InvalidImpuritySite(x_d));
        }
        if !n.is_finite() || n.fract() != 0.0 || n < 0.0 {
            return Err(Error::InvalidPhotonIndex(n));
        }
        Self::new(w, g, t1, t2, e_l, e_u, x_d as u32, n as u32)
    }
}

/// Electron dispersion of the wire, `E_k = -w cos k`, for `k` in `[-π, π]`.
pub fn band_energy(k: f64, w: f64) -> f64 {
    -w * k.cos()
}

/// The dressed two-level block and its two continuum coupling strengths.
///
/// `lambda_u` carries the charge-transfer channel (`√2 g w`), `lambda_l`
/// the direct optical channel (`√(2(n+1)) t2`). With these normalizations
/// the rank-1 continuum self-energy `Ξ(z)/(2w)·|c⟩⟨c|`, `c = (λ_l, λ_u)`,
/// reproduces the dispersion function exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveTwoLevel {
    /// Dressed lower level `e_l + (n+1)Ω`.
    pub h_ll: f64,
    /// Dressed upper level `e_u + nΩ`.
    pub h_uu: f64,
    /// Intra-atomic coupling `√(n+1)·t1`.
    pub h_lu: f64,
    /// Lower-level continuum coupling `√(2(n+1))·t2`.
    pub lambda_l: f64,
    /// Upper-level continuum coupling `√2·g·w`.
    pub lambda_u: f64,
    pub sector: Sector,
}

/// Reduce the manifold to its dressed two-level block at frequency `omega`.
pub fn effective_two_level(params: &ModelParams, omega: f64, sector: Sector) -> EffectiveTwoLevel {
    let np1 = (params.n + 1) as f64;
    EffectiveTwoLevel {
        h_ll: params.e_l + np1 * omega,
        h_uu: params.e_u + params.n as f64 * omega,
        h_lu: np1.sqrt() * params.t1,
        lambda_l: (2.0 * np1).sqrt() * params.t2,
        lambda_u: std::f64::consts::SQRT_2 * params.g * params.w,
        sector,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fig2() -> ModelParams {
        ModelParams::new(2.0, 0.2, 0.2, 0.2, 0.0, 0.1, 2, 0).unwrap()
    }

    #[test]
    fn validate_accepts_figure_params() {
        assert!(ModelParams::new(2.0, 0.2, 0.2, 0.2, 0.0, 0.1, 2, 0).is_ok());
    }

    #[test]
    fn validate_rejects_zero_bandwidth() {
        let err = ModelParams::new(0.0, 0.2, 0.2, 0.2, 0.0, 0.1, 2, 0).unwrap_err();
        assert!(matches!(err, Error::NonPositiveBandwidth(_)));
        assert!(err.to_string().contains("W must be positive"));
    }

    #[test]
    fn validate_rejects_fractional_site() {
        let err = ModelParams::from_raw(2.0, 0.2, 0.2, 0.2, 0.0, 0.1, 2.5, 0.0).unwrap_err();
        assert!(err.to_string().contains("x_D must be a positive integer"));
    }

    #[test]
    fn validate_rejects_non_finite() {
        let err = ModelParams::new(2.0, f64::NAN, 0.2, 0.2, 0.0, 0.1, 2, 0).unwrap_err();
        assert!(matches!(err, Error::NonFinite { name: "g", .. }));
    }

    #[test]
    fn band_energy_hits_center_and_edges() {
        assert!(band_energy(std::f64::consts::FRAC_PI_2, 2.0).abs() < 1e-15);
        assert_eq!(band_energy(0.0, 2.0), -2.0);
        assert!((band_energy(std::f64::consts::PI, 2.0) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn effective_two_level_fig2_values() {
        let eff = effective_two_level(&fig2(), -0.2, Sector::P);
        assert_eq!(eff.h_ll, -0.2);
        assert_eq!(eff.h_uu, 0.1);
        assert_eq!(eff.h_lu, 0.2);
        assert!((eff.lambda_u - 0.565_685_424_949_238_1).abs() < 1e-15);
        assert!((eff.lambda_l - 0.282_842_712_474_619_06).abs() < 1e-15);
    }

    #[test]
    fn decoupled_limits() {
        let mut p = fig2();
        p.t1 = 0.0;
        assert_eq!(effective_two_level(&p, 0.3, Sector::P).h_lu, 0.0);
        let mut p = fig2();
        p.t2 = 0.0;
        assert_eq!(effective_two_level(&p, 0.3, Sector::S).lambda_l, 0.0);
        let mut p = fig2();
        p.g = 0.0;
        assert_eq!(effective_two_level(&p, 0.3, Sector::P).lambda_u, 0.0);
        // and conversely: live couplings give nonzero strengths
        let eff = effective_two_level(&fig2(), 0.3, Sector::P);
        assert!(eff.lambda_u != 0.0 && eff.lambda_l != 0.0);
    }

    #[test]
    fn effective_two_level_is_bit_deterministic() {
        let p = fig2();
        let a = effective_two_level(&p, -0.2337, Sector::S);
        let b = effective_two_level(&p, -0.2337, Sector::S);
        for (x, y) in [
            (a.h_ll, b.h_ll),
            (a.h_uu, b.h_uu),
            (a.h_lu, b.h_lu),
            (a.lambda_l, b.lambda_l),
            (a.lambda_u, b.lambda_u),
        ] {
            assert_eq!(x.to_bits(), y.to_bits());
        }
    }
}
