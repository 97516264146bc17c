//! Closed-form predictors for the two kinds of bound states in the
//! continuum, and verification against the dispersion equation.
//!
//! *Static* BICs sit where the self-energy itself vanishes,
//! `z0 = -W cos(mπ / 2x_D)` with even `m` in the p-sector and odd `m` in
//! the s-sector; their energies do not depend on the couplings `g`, `T2`.
//! The driving frequency placing a dressed level there solves
//! `(z0 - (n+1)Ω - E_l)(z0 - nΩ - E_u) = (n+1)T1²`.
//!
//! *Dynamic* BICs come from Fano cancellation between the two optical
//! channels: the self-energy coefficient `Q` and the two-level
//! characteristic polynomial `P` share a root, which pins the frequency to
//!
//! ```text
//! Ω* = E_u - E_l - W g T1/T2 + (n+1) T1 T2 / (W g)
//! ```
//!
//! and the energy to the root of the linear `Q`.

use num_complex::Complex64;

use crate::dispersion::{DispersionEq, PoleKind};
use crate::model::{ModelParams, Sector};
use crate::selfenergy::Sheet;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BicKind {
    Static,
    Dynamic,
}

/// An analytically predicted bound state in the continuum.
#[derive(Debug, Clone, Copy)]
pub struct BicPrediction {
    pub kind: BicKind,
    pub sector: Sector,
    /// Self-energy zero index (static predictions only).
    pub m: Option<u32>,
    /// Predicted energy.
    pub z0: f64,
    /// Driving frequency Ω at which the state decouples.
    pub omega: f64,
    /// Whether `|z0| ≤ W`; only in-band states are BICs proper.
    pub in_band: bool,
    /// `|D(z0, Ω)|` evaluated after prediction.
    pub residual: f64,
}

impl BicPrediction {
    pub fn omega_plus_el(&self, params: &ModelParams) -> f64 {
        self.omega + params.e_l
    }
}

/// Diagnostics accompanying a dynamic-BIC prediction.
#[derive(Debug, Clone, Copy)]
pub struct DynamicBic {
    pub prediction: BicPrediction,
    /// Which root of the real-solution (two-level) formula matched:
    /// +1 for the upper sign, -1 for the lower.
    pub eqz_sign: i8,
    /// Distance between the Fano-cancellation energy and that root.
    pub eqz_match_error: f64,
    pub residual_first_sheet: f64,
    pub residual_second_sheet: f64,
}

/// Outcome of the dynamic-BIC predictor; the preconditions `g > 0`,
/// `T2 > 0` are reported as a structured refusal, not an error.
#[derive(Debug, Clone)]
pub enum DynamicBicOutcome {
    Bic(DynamicBic),
    NotApplicable { reason: String },
}

impl DynamicBicOutcome {
    pub fn bic(&self) -> Option<&DynamicBic> {
        match self {
            DynamicBicOutcome::Bic(b) => Some(b),
            DynamicBicOutcome::NotApplicable { .. } => None,
        }
    }
}

/// All self-energy zeros `(m, z0)` of a sector, band edges excluded.
///
/// Even `m` for the p-sector, odd for the s-sector, `0 < m < 2x_D`; the
/// p-sector with `x_D = 1` has none.
pub fn static_bic_energies(x_d: u32, sector: Sector, w: f64) -> Vec<(u32, f64)> {
    let start = match sector {
        Sector::P => 2,
        Sector::S => 1,
    };
    (start..2 * x_d)
        .step_by(2)
        .map(|m| {
            let theta = m as f64 * std::f64::consts::PI / (2.0 * x_d as f64);
            (m, -w * theta.cos())
        })
        .collect()
}

/// Driving frequencies at which a dressed level sits exactly on the
/// static-BIC energy `z0`.
///
/// For `n = 0` the condition is linear in Ω with the single solution
/// `Ω = z0 - E_l - T1²/(z0 - E_u)`; for `n ≥ 1` it is quadratic and zero,
/// one, or two real roots may exist (an empty vector means no static BIC
/// for this `(z0, n)`).
pub fn static_bic_frequencies(z0: f64, params: &ModelParams) -> Result<Vec<f64>> {
    let n = params.n as f64;
    let np1 = n + 1.0;
    let (a, b) = (z0 - params.e_l, z0 - params.e_u);
    if params.n == 0 {
        if b.abs() < 1e-14 {
            if params.t1 != 0.0 {
                return Err(Error::DegenerateFrequency(z0));
            }
            // T1 = 0 limit of the closed form
            return Ok(vec![a]);
        }
        return Ok(vec![a - params.t1 * params.t1 / b]);
    }
    // n(n+1) Ω² - [n·a + (n+1)·b] Ω + a·b - (n+1)T1² = 0
    let ca = n * np1;
    let cb = -(n * a + np1 * b);
    let cc = a * b - np1 * params.t1 * params.t1;
    let disc = cb * cb - 4.0 * ca * cc;
    if disc < 0.0 {
        return Ok(Vec::new());
    }
    let sq = disc.sqrt();
    // stable quadratic roots
    let q = -0.5 * (cb + cb.signum() * sq);
    let mut roots = if q == 0.0 {
        vec![0.0]
    } else {
        vec![q / ca, cc / q]
    };
    roots.sort_by(|x, y| x.partial_cmp(y).unwrap());
    roots.dedup_by(|x, y| (*x - *y).abs() < 1e-14);
    Ok(roots)
}

/// All static predictions of a sector, one record per `(m, Ω)` pair.
pub fn static_predictions(params: &ModelParams, sector: Sector) -> Result<Vec<BicPrediction>> {
    let mut out = Vec::new();
    for (m, z0) in static_bic_energies(params.x_d, sector, params.w) {
        for omega in static_bic_frequencies(z0, params)? {
            let residual = prediction_residual(params, sector, z0, omega);
            out.push(BicPrediction {
                kind: BicKind::Static,
                sector,
                m: Some(m),
                z0,
                omega,
                in_band: z0.abs() <= params.w,
                residual,
            });
        }
    }
    Ok(out)
}

/// The Fano-cancellation (dynamic) BIC of a sector, if the two optical
/// channels are both active.
pub fn dynamic_bic(params: &ModelParams, sector: Sector) -> DynamicBicOutcome {
    if params.g <= 0.0 || params.t2 <= 0.0 {
        let reason = if params.t2 <= 0.0 {
            format!(
                "dynamic BIC requires T2 > 0 (got {}): with the direct channel off, \
                 Fano cancellation cannot occur",
                params.t2
            )
        } else {
            format!("dynamic BIC requires g > 0 (got {})", params.g)
        };
        return DynamicBicOutcome::NotApplicable { reason };
    }
    let np1 = (params.n + 1) as f64;
    let (w, g, t1, t2) = (params.w, params.g, params.t1, params.t2);
    let omega = params.e_u - params.e_l - w * g * t1 / t2 + np1 * t1 * t2 / (w * g);

    let eq = DispersionEq::new(params, omega, sector);
    let z0 = eq.q_root().expect("q1 = g²W + (n+1)T2²/W > 0 here");

    // cross-check against the two-level real-solution roots
    let (h_ll, h_uu, h_lu) = (eq.eff.h_ll, eq.eff.h_uu, eq.eff.h_lu);
    let disc = ((h_ll - h_uu).powi(2) + 4.0 * h_lu * h_lu).sqrt();
    let upper = 0.5 * (h_ll + h_uu + disc);
    let lower = 0.5 * (h_ll + h_uu - disc);
    let (eqz_sign, eqz_match_error) = if (z0 - upper).abs() <= (z0 - lower).abs() {
        (1i8, (z0 - upper).abs())
    } else {
        (-1i8, (z0 - lower).abs())
    };

    let in_band = z0.abs() <= params.w;
    let zc = Complex64::new(z0, 0.0);
    let (res1, res2) = if in_band {
        let r = eq.value_from_u(on_band_u(z0, params.w)).norm();
        (r, r)
    } else {
        (
            eq.value(zc, Sheet::First)
                .map(|v| v.norm())
                .unwrap_or(f64::NAN),
            eq.value(zc, Sheet::Second)
                .map(|v| v.norm())
                .unwrap_or(f64::NAN),
        )
    };

    DynamicBicOutcome::Bic(DynamicBic {
        prediction: BicPrediction {
            kind: BicKind::Dynamic,
            sector,
            m: None,
            z0,
            omega,
            in_band,
            residual: res1.max(res2),
        },
        eqz_sign,
        eqz_match_error,
        residual_first_sheet: res1,
        residual_second_sheet: res2,
    })
}

/// Every prediction of a sector: all static records plus the dynamic one
/// when applicable.
pub fn predict_all(params: &ModelParams, sector: Sector) -> Result<Vec<BicPrediction>> {
    let mut out = static_predictions(params, sector)?;
    if let DynamicBicOutcome::Bic(d) = dynamic_bic(params, sector) {
        out.push(d.prediction);
    }
    out.sort_by(|a, b| a.omega.partial_cmp(&b.omega).unwrap());
    Ok(out)
}

/// Report of a prediction checked against the dispersion equation.
#[derive(Debug, Clone)]
pub struct VerifyReport {
    pub residual_first_sheet: f64,
    pub residual_second_sheet: f64,
    /// Nearest `kind = bic` pole from `solve` and its distance to `z0`
    /// (only sought for in-band predictions).
    pub matched_pole: Option<(Complex64, f64)>,
    pub passed: bool,
    /// Explanation when the pole search was skipped.
    pub skipped: Option<String>,
}

/// Evaluate `|D(z0, Ω)|` on both sheets and, for in-band predictions,
/// confirm that `solve` reports a BIC pole within `1e-9` of `z0`.
/// Verification failure is reported, not raised.
pub fn verify_bic(pred: &BicPrediction, params: &ModelParams) -> Result<VerifyReport> {
    let eq = DispersionEq::new(params, pred.omega, pred.sector);
    let zc = Complex64::new(pred.z0, 0.0);
    let (res1, res2) = if pred.in_band {
        let r = eq.value_from_u(on_band_u(pred.z0, params.w)).norm();
        (r, r)
    } else {
        (
            eq.value(zc, Sheet::First)?.norm(),
            eq.value(zc, Sheet::Second)?.norm(),
        )
    };

    if !pred.in_band {
        return Ok(VerifyReport {
            residual_first_sheet: res1,
            residual_second_sheet: res2,
            matched_pole: None,
            passed: res1 < 1e-10 && res2 < 1e-10,
            skipped: Some(format!(
                "|z0| = {} > W = {}: bound state outside band, not a BIC",
                pred.z0.abs(),
                params.w
            )),
        });
    }

    let poles = eq.solve()?;
    let matched = poles
        .iter()
        .filter(|p| p.kind == PoleKind::Bic)
        .map(|p| (p.z, (p.z - zc).norm()))
        .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap());
    let pole_ok = matched.map(|(_, d)| d < 1e-9).unwrap_or(false);
    Ok(VerifyReport {
        residual_first_sheet: res1,
        residual_second_sheet: res2,
        matched_pole: matched,
        passed: res1 < 1e-10 && res2 < 1e-10 && pole_ok,
        skipped: None,
    })
}

fn prediction_residual(params: &ModelParams, sector: Sector, z0: f64, omega: f64) -> f64 {
    let eq = DispersionEq::new(params, omega, sector);
    if z0.abs() < params.w {
        eq.value_from_u(on_band_u(z0, params.w)).norm()
    } else {
        let zc = Complex64::new(z0, 0.0);
        eq.value(zc, Sheet::First)
            .map(|v| v.norm())
            .unwrap_or(f64::NAN)
    }
}

/// Unit-circle Bloch variable of a real in-band energy (`+i0⁺` limit).
fn on_band_u(z0: f64, w: f64) -> Complex64 {
    let theta = (-z0 / w).clamp(-1.0, 1.0).acos();
    Complex64::new(theta.cos(), theta.sin())
}
