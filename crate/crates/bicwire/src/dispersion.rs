//! The pole (dispersion) equation, its reduction to a real polynomial in
//! the Bloch variable, root classification, and branch-tracked frequency
//! sweeps.
//!
//! The dispersion function of one sector is
//!
//! ```text
//! D(z) = P(z) - Ξ(z) Q(z)
//! P(z) = (z - H_ll)(z - H_uu) - H_lu²
//! Q(z) = g²W (z - H_ll) + 2(n+1) g T1 T2 + (n+1)(T2²/W)(z - H_uu)
//! ```
//!
//! `Q` is the coefficient multiplying the self-energy; its zeros are where
//! Fano cancellation between the two optical channels can occur. Root
//! finding happens in `u` rather than `z`: substituting
//! `z = -(W/2)(u + 1/u)` and clearing denominators gives the real
//! polynomial
//!
//! ```text
//! Π(u) = u³ (u² - 1) D(z(u))
//! ```
//!
//! of degree `2x_D + 5`, whose roots cover both Riemann sheets at once
//! (`|u| < 1` first sheet, `|u| > 1` second) with no branch-cut
//! bookkeeping. The structural factors contribute spurious roots at
//! `u = 0` and, in the p-sector, at `u = ±1`; these are filtered.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::model::{effective_two_level, EffectiveTwoLevel, ModelParams, Sector};
use crate::poly::real_poly_roots;
use crate::selfenergy::{u_from_z, xi_from_u, xi_prime, z_from_u, Sheet};
use crate::{Error, Result};

/// Spurious-root filter threshold on `|u|` and `|u² - 1|`.
const SPURIOUS_EPS: f64 = 1e-8;
/// A root counts as real (BIC / bound) when `|Im z|` is below this.
const REAL_EPS: f64 = 1e-9;
/// Relative residual bound: `|D(z)| < RESIDUAL_BOUND · max(1, |z|²)`.
pub const RESIDUAL_BOUND: f64 = 1e-9;

/// Classification of a dispersion-equation root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PoleKind {
    /// Complex pole on the second sheet; `gamma = |Im z|` is the decay
    /// rate (conjugate partners are both reported).
    Resonance,
    /// Real root outside the band (`|z| > W`), either sheet.
    Bound,
    /// Real root inside the band: a bound state in the continuum.
    Bic,
    /// Root pinned to a band edge by the structural `(u² - 1)` factor
    /// where the dispersion function itself vanishes; kept only for
    /// diagnostics.
    BandArtifact,
}

/// One root of the dispersion equation.
#[derive(Debug, Clone, Copy)]
pub struct Pole {
    pub z: Complex64,
    pub u: Complex64,
    pub sheet: Sheet,
    /// `|Im z|`; the decay rate on resonance branches.
    pub gamma: f64,
    /// `|D(z)|` after polishing.
    pub residual: f64,
    pub kind: PoleKind,
}

/// Roots discarded by the spurious-root filter, for diagnostics.
#[derive(Debug, Clone, Default)]
pub struct SolveDiagnostics {
    /// (u, reason) pairs for filtered roots.
    pub discarded: Vec<(Complex64, &'static str)>,
}

/// The dispersion equation of one `(params, Ω, sector)` triple.
#[derive(Debug, Clone)]
pub struct DispersionEq {
    pub eff: EffectiveTwoLevel,
    w: f64,
    x_d: u32,
    sector: Sector,
    /// `P(z) = z² + p[1] z + p[0]`
    p: [f64; 2],
    /// `Q(z) = q[1] z + q[0]`
    q: [f64; 2],
}

impl DispersionEq {
    pub fn new(params: &ModelParams, omega: f64, sector: Sector) -> Self {
        let eff = effective_two_level(params, omega, sector);
        let np1 = (params.n + 1) as f64;
        let (w, g) = (params.w, params.g);
        let p = [
            eff.h_ll * eff.h_uu - eff.h_lu * eff.h_lu,
            -(eff.h_ll + eff.h_uu),
        ];
        let q = [
            -g * g * w * eff.h_ll + 2.0 * np1 * g * params.t1 * params.t2
                - np1 * params.t2 * params.t2 / w * eff.h_uu,
            g * g * w + np1 * params.t2 * params.t2 / w,
        ];
        Self {
            eff,
            w,
            x_d: params.x_d,
            sector,
            p,
            q,
        }
    }

    pub fn sector(&self) -> Sector {
        self.sector
    }

    /// `P(z)`: the decoupled two-level characteristic polynomial.
    pub fn p_at(&self, z: Complex64) -> Complex64 {
        (z + self.p[1]) * z + self.p[0]
    }

    /// `Q(z)`: the self-energy coefficient (Fano cancellation ⇔ `Q = 0`).
    pub fn q_at(&self, z: Complex64) -> Complex64 {
        self.q[1] * z + self.q[0]
    }

    /// The root of the linear `Q`, if `Q` is not identically constant.
    pub fn q_root(&self) -> Option<f64> {
        (self.q[1] != 0.0).then(|| -self.q[0] / self.q[1])
    }

    /// `D(z)` through the closed-form self-energy on the given sheet.
    pub fn value(&self, z: Complex64, sheet: Sheet) -> Result<Complex64> {
        let bp = u_from_z(z, sheet, self.w)?;
        Ok(self.value_from_u(bp.u))
    }

    /// `D` evaluated from a Bloch variable directly (no sheet selection;
    /// well-defined on the band cut).
    pub fn value_from_u(&self, u: Complex64) -> Complex64 {
        let z = z_from_u(u, self.w);
        self.p_at(z) - xi_from_u(u, self.sector, self.x_d) * self.q_at(z)
    }

    /// `D` as the determinant of the rank-1-dressed two-level block,
    /// `det(z - H₂ - Ξ(z)/(2W) |c⟩⟨c|)`, `c = (λ_l, λ_u)`. Algebraically
    /// identical to [`Self::value`]; kept as an independent route for
    /// tests of the coupling calibration.
    pub fn value_det_form(&self, z: Complex64, sheet: Sheet) -> Result<Complex64> {
        let bp = u_from_z(z, sheet, self.w)?;
        let xi = xi_from_u(bp.u, self.sector, self.x_d);
        let e = &self.eff;
        let s = xi / (2.0 * self.w);
        let a = z - e.h_ll - s * e.lambda_l * e.lambda_l;
        let d = z - e.h_uu - s * e.lambda_u * e.lambda_u;
        let off = e.h_lu + s * e.lambda_l * e.lambda_u;
        Ok(a * d - off * off)
    }

    /// `dD/dz` on the given sheet.
    pub fn derivative(&self, z: Complex64, sheet: Sheet) -> Result<Complex64> {
        let xi = crate::selfenergy::xi(z, self.sector, sheet, self.x_d, self.w)?;
        let dxi = xi_prime(z, self.sector, sheet, self.x_d, self.w)?;
        Ok(2.0 * z + self.p[1] - dxi * self.q_at(z) - xi * self.q[1])
    }

    /// Ascending real coefficients of `Π(u) = u³(u²-1) D(z(u))`, degree
    /// `2x_D + 5` (for `x_D ≥ 2`; `max(7, 2x_D+5)` in general).
    ///
    /// Built from the pole-cleared pieces `p(u) = u² P(z(u))` and
    /// `q(u) = u Q(z(u))` as `u [ (u²-1) p(u) - 2u² (1 ± u^{2x_D}) q(u) ]`.
    pub fn u_polynomial(&self) -> Vec<f64> {
        let w = self.w;
        // uz(u) := u·z(u) = -(W/2)(u² + 1)
        let uz = [-w / 2.0, 0.0, -w / 2.0];
        // p(u) = uz² + p1·u·uz + p0·u²
        let mut pu = polymul(&uz, &uz);
        polyadd_into(&mut pu, &polymul(&[0.0, self.p[1]], &uz));
        polyadd_into(&mut pu, &[0.0, 0.0, self.p[0]]);
        // q(u) = q1·uz + q0·u
        let mut qu = uz.iter().map(|c| c * self.q[1]).collect::<Vec<_>>();
        polyadd_into(&mut qu, &[0.0, self.q[0]]);
        // fan(u) = 1 ± u^{2x_D}
        let mut fan = vec![0.0; 2 * self.x_d as usize + 1];
        fan[0] = 1.0;
        *fan.last_mut().unwrap() += self.sector.sign();

        let t1 = polymul(&[-1.0, 0.0, 1.0], &pu);
        let t2 = polymul(&polymul(&[0.0, 0.0, 2.0], &fan), &qu);
        let mut core = t1;
        polysub_into(&mut core, &t2);
        polymul(&[0.0, 1.0], &core)
    }

    /// All poles of the resolvent: roots of the `u`-polynomial, filtered,
    /// polished on `D`, and classified. In-band (BIC) roots are reported
    /// once even though `u` and `ū` both solve `Π`.
    pub fn solve(&self) -> Result<Vec<Pole>> {
        self.solve_detailed().map(|(poles, _)| poles)
    }

    pub fn solve_detailed(&self) -> Result<(Vec<Pole>, SolveDiagnostics)> {
        let coeffs = self.u_polynomial();
        let roots = real_poly_roots(&coeffs, 400)?;
        let mut diag = SolveDiagnostics::default();
        let mut poles: Vec<Pole> = Vec::new();

        for u0 in roots {
            if u0.norm() < SPURIOUS_EPS {
                diag.discarded.push((u0, "structural u=0 factor"));
                continue;
            }
            let u = self.polish_u(&coeffs, u0);
            if (u * u - 1.0).norm() < SPURIOUS_EPS {
                match self.edge_root(u) {
                    Some(pole) => poles.push(pole),
                    None => diag.discarded.push((u, "band-edge artifact")),
                }
                continue;
            }

            let z = z_from_u(u, self.w);
            // The u-polished root is already machine-accurate; an extra
            // Newton pass on D(z) is only safe away from the band cut,
            // where the sheet is unambiguous.
            let near_band = (u.norm() - 1.0).abs() < 1e-6;
            let (z, u, residual) = if near_band {
                (z, u, self.value_from_u(u).norm())
            } else {
                let sheet = if u.norm() < 1.0 {
                    Sheet::First
                } else {
                    Sheet::Second
                };
                self.polish_z(z, sheet)
            };
            let sheet = if (u.norm() - 1.0).abs() < REAL_EPS {
                // on the cut both sheets coincide; report the physical one
                Sheet::First
            } else if u.norm() < 1.0 {
                Sheet::First
            } else {
                Sheet::Second
            };
            let kind = if z.im.abs() < REAL_EPS {
                if z.re.abs() <= self.w * (1.0 + REAL_EPS) {
                    PoleKind::Bic
                } else {
                    PoleKind::Bound
                }
            } else {
                PoleKind::Resonance
            };
            let pole = Pole {
                z,
                u,
                sheet,
                gamma: z.im.abs(),
                residual,
                kind,
            };

            if pole.residual > RESIDUAL_BOUND * pole.z.norm_sqr().max(1.0) {
                diag.discarded.push((u, "residual above tolerance"));
                continue;
            }
            // BICs appear as (u, ū) pairs mapping to one z: keep one.
            if pole.kind == PoleKind::Bic {
                if let Some(prev) = poles
                    .iter_mut()
                    .find(|p| p.kind == PoleKind::Bic && (p.z - pole.z).norm() < 10.0 * REAL_EPS)
                {
                    if pole.residual < prev.residual {
                        *prev = pole;
                    }
                    continue;
                }
            }
            poles.push(pole);
        }

        poles.sort_by(|a, b| {
            (a.z.re, a.z.im)
                .partial_cmp(&(b.z.re, b.z.im))
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        Ok((poles, diag))
    }

    /// Newton steps on `Π` itself; cheap sharpening of the Aberth output.
    fn polish_u(&self, coeffs: &[f64], mut u: Complex64) -> Complex64 {
        for _ in 0..8 {
            let mut p = Complex64::default();
            let mut dp = Complex64::default();
            for &c in coeffs.iter().rev() {
                dp = dp * u + p;
                p = p * u + c;
            }
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            u -= step;
            if step.norm() < 1e-15 * (1.0 + u.norm()) {
                break;
            }
        }
        u
    }

    /// Newton on `D(z)` for off-band roots; returns the polished energy,
    /// the matching Bloch variable, and `|D|`.
    fn polish_z(&self, mut z: Complex64, sheet: Sheet) -> (Complex64, Complex64, f64) {
        let mut best = z;
        let mut best_res = match self.value(z, sheet) {
            Ok(v) => v.norm(),
            Err(_) => f64::INFINITY,
        };
        for _ in 0..50 {
            let (val, der) = match (self.value(z, sheet), self.derivative(z, sheet)) {
                (Ok(v), Ok(d)) => (v, d),
                _ => break,
            };
            if val.norm() < best_res {
                best_res = val.norm();
                best = z;
            }
            if val.norm() <= 1e-13 * z.norm_sqr().max(1.0) || der.norm() == 0.0 {
                break;
            }
            let step = val / der;
            z -= step;
            if step.norm() < 1e-16 * (1.0 + z.norm()) {
                break;
            }
        }
        let u = match u_from_z(best, sheet, self.w) {
            Ok(bp) => bp.u,
            Err(_) => Complex64::default(),
        };
        (best, u, best_res)
    }

    /// Decide whether a root pinned at `u ≈ ±1` is a genuine band-edge
    /// zero of `D` or a structural artifact of the `(u² - 1)` factor.
    fn edge_root(&self, u: Complex64) -> Option<Pole> {
        let sign = if u.re >= 0.0 { 1.0 } else { -1.0 };
        let z_edge = Complex64::new(-sign * self.w, 0.0);
        let d_edge = match self.sector {
            // finite limit Ξ^p(∓W) = ∓2 x_D (L'Hôpital on 0/0)
            Sector::P => {
                let xi_lim = -sign * 2.0 * self.x_d as f64;
                self.p_at(z_edge) - xi_lim * self.q_at(z_edge)
            }
            // Ξ^s diverges, but a root only reaches u = ±1 when Q
            // vanishes there, and then Ξ·Q → 0 (the divergence is 1/(u∓1)
            // against Q ~ (u∓1)²); the limit of D is P alone
            Sector::S => self.p_at(z_edge),
        };
        if d_edge.norm() < RESIDUAL_BOUND * z_edge.norm_sqr().max(1.0) {
            Some(Pole {
                z: z_edge,
                u: Complex64::new(sign, 0.0),
                sheet: Sheet::First,
                gamma: 0.0,
                residual: d_edge.norm(),
                kind: PoleKind::BandArtifact,
            })
        } else {
            None
        }
    }
}

fn polymul(a: &[f64], b: &[f64]) -> Vec<f64> {
    let mut out = vec![0.0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0.0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn polyadd_into(a: &mut Vec<f64>, b: &[f64]) {
    if b.len() > a.len() {
        a.resize(b.len(), 0.0);
    }
    for (x, &y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

fn polysub_into(a: &mut Vec<f64>, b: &[f64]) {
    if b.len() > a.len() {
        a.resize(b.len(), 0.0);
    }
    for (x, &y) in a.iter_mut().zip(b) {
        *x -= y;
    }
}

/// One row of a frequency sweep.
#[derive(Debug, Clone, Copy)]
pub struct SweepRow {
    pub omega_plus_el: f64,
    pub branch_id: u32,
    pub re_z: f64,
    pub im_z: f64,
    pub gamma: f64,
    pub u_re: f64,
    pub u_im: f64,
    pub residual: f64,
    pub kind: PoleKind,
}

/// A refined zero of the decay rate along a sweep.
#[derive(Debug, Clone, Copy)]
pub struct GammaZero {
    pub omega_plus_el: f64,
    pub gamma: f64,
}

/// Branch-tracked sweep of the pole set over driving frequency.
#[derive(Debug, Clone)]
pub struct SweepTable {
    /// Sorted by (omega ascending, branch_id ascending).
    pub rows: Vec<SweepRow>,
    /// Confirmed decay-rate zeros (`gamma < 1e-10` after refinement).
    pub zeros: Vec<GammaZero>,
}

impl SweepTable {
    /// Minimum decay rate over resonance/BIC rows with `omega_plus_el` in
    /// `[lo, hi]` (bound states outside the band carry Γ = 0 trivially and
    /// are excluded).
    pub fn min_gamma_in(&self, lo: f64, hi: f64) -> Option<f64> {
        self.rows
            .iter()
            .filter(|r| r.omega_plus_el >= lo && r.omega_plus_el <= hi)
            .filter(|r| matches!(r.kind, PoleKind::Resonance | PoleKind::Bic))
            .map(|r| r.gamma)
            .min_by(|a, b| a.partial_cmp(b).unwrap())
    }
}

/// Sweep the dispersion equation over a grid of `Ω + E_l` values.
///
/// Grid points are solved independently (in parallel); branches are then
/// assembled by nearest-neighbor continuation in `z`, with midpoint
/// refinement where a branch jumps by more than 5× the median step.
/// Zeros of the decay rate are located by golden-section minimization
/// plus a parabola-vertex correction and confirmed at `|Γ| < 1e-10`.
pub fn sweep(params: &ModelParams, sector: Sector, omega_plus_el: &[f64]) -> Result<SweepTable> {
    if let Some(&bad) = omega_plus_el.iter().find(|x| !x.is_finite()) {
        return Err(Error::SweepFailure {
            omega: bad,
            message: "grid contains a non-finite value".into(),
        });
    }
    let mut omegas: Vec<f64> = omega_plus_el.to_vec();
    omegas.sort_by(|a, b| a.partial_cmp(b).unwrap());
    omegas.dedup();

    let solve_at = |x: f64| -> Result<Vec<Pole>> {
        let eq = DispersionEq::new(params, x - params.e_l, sector);
        let mut poles = eq.solve().map_err(|e| Error::SweepFailure {
            omega: x,
            message: e.to_string(),
        })?;
        poles.retain(|p| p.kind != PoleKind::BandArtifact);
        Ok(poles)
    };

    let mut columns: Vec<(f64, Vec<Pole>)> = omegas
        .par_iter()
        .map(|&x| solve_at(x).map(|p| (x, p)))
        .collect::<Result<_>>()?;

    // Midpoint refinement where branch continuation jumps.
    for _ in 0..4 {
        let jumps = jump_intervals(&columns);
        if jumps.is_empty() {
            break;
        }
        let mids: Vec<f64> = jumps
            .iter()
            .map(|&i| 0.5 * (columns[i].0 + columns[i + 1].0))
            .collect();
        let new_cols: Vec<(f64, Vec<Pole>)> = mids
            .par_iter()
            .map(|&x| solve_at(x).map(|p| (x, p)))
            .collect::<Result<_>>()?;
        columns.extend(new_cols);
        columns.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    }

    // Gamma-zero candidates from per-column minima, refined.
    let mut zeros: Vec<GammaZero> = Vec::new();
    let gmin: Vec<f64> = columns.iter().map(|(_, poles)| min_gamma(poles)).collect();
    for i in 1..columns.len().saturating_sub(1) {
        if gmin[i] <= gmin[i - 1] && gmin[i] <= gmin[i + 1] && gmin[i] < 1e-3 {
            let objective =
                |x: f64| -> f64 { solve_at(x).map(|p| min_gamma(&p)).unwrap_or(f64::INFINITY) };
            let (mut x, _) = golden_min(&objective, columns[i - 1].0, columns[i + 1].0, 1e-11);
            // parabola-vertex correction: the minimum value sits in the
            // root-finder noise floor, so sample where Γ is well above it
            let mut h = 1e-4;
            for _ in 0..2 {
                let (g0, gm, gp) = (objective(x), objective(x - h), objective(x + h));
                let denom = gp - 2.0 * g0 + gm;
                if denom > 0.0 {
                    x -= h * (gp - gm) / (2.0 * denom);
                }
                h *= 0.1;
            }
            let g = objective(x);
            if g < 1e-10 {
                if !zeros.iter().any(|z| (z.omega_plus_el - x).abs() < 1e-8) {
                    zeros.push(GammaZero {
                        omega_plus_el: x,
                        gamma: g,
                    });
                }
                // make the zero visible as a sweep row
                if !columns.iter().any(|(cx, _)| (cx - x).abs() < 1e-14) {
                    let col = solve_at(x)?;
                    columns.push((x, col));
                }
            }
        }
    }
    columns.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    zeros.sort_by(|a, b| a.omega_plus_el.partial_cmp(&b.omega_plus_el).unwrap());

    Ok(SweepTable {
        rows: assemble_branches(&columns),
        zeros,
    })
}

fn min_gamma(poles: &[Pole]) -> f64 {
    poles
        .iter()
        .filter(|p| p.kind == PoleKind::Resonance || p.kind == PoleKind::Bic)
        .map(|p| p.gamma)
        .fold(f64::INFINITY, f64::min)
}

/// Greedy nearest-neighbor branch assembly over sorted columns.
fn assemble_branches(columns: &[(f64, Vec<Pole>)]) -> Vec<SweepRow> {
    let mut rows = Vec::new();
    let mut next_id = 0u32;
    // open branches: (id, last z)
    let mut open: Vec<(u32, Complex64)> = Vec::new();

    for (x, poles) in columns {
        let mut assigned: Vec<Option<u32>> = vec![None; poles.len()];
        let mut taken = vec![false; open.len()];
        // all (distance, branch index, pole index), greedy smallest first
        let mut cand: Vec<(f64, usize, usize)> = Vec::new();
        for (bi, (_, last)) in open.iter().enumerate() {
            for (pi, pole) in poles.iter().enumerate() {
                cand.push(((pole.z - last).norm(), bi, pi));
            }
        }
        cand.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        for (_, bi, pi) in cand {
            if !taken[bi] && assigned[pi].is_none() {
                taken[bi] = true;
                assigned[pi] = Some(open[bi].0);
            }
        }
        let mut new_open = Vec::new();
        for (pi, pole) in poles.iter().enumerate() {
            let id = assigned[pi].unwrap_or_else(|| {
                let id = next_id;
                next_id += 1;
                id
            });
            new_open.push((id, pole.z));
            rows.push(SweepRow {
                omega_plus_el: *x,
                branch_id: id,
                re_z: pole.z.re,
                im_z: pole.z.im,
                gamma: pole.gamma,
                u_re: pole.u.re,
                u_im: pole.u.im,
                residual: pole.residual,
                kind: pole.kind,
            });
        }
        open = new_open;
    }

    rows.sort_by(|a, b| {
        (a.omega_plus_el, a.branch_id)
            .partial_cmp(&(b.omega_plus_el, b.branch_id))
            .unwrap()
    });
    rows
}

/// Indices `i` where continuation from column `i` to `i+1` jumps by more
/// than 5× the median matched distance.
fn jump_intervals(columns: &[(f64, Vec<Pole>)]) -> Vec<usize> {
    let mut dists: Vec<(usize, f64)> = Vec::new();
    for i in 0..columns.len().saturating_sub(1) {
        let (_, a) = &columns[i];
        let (_, b) = &columns[i + 1];
        let mut worst = 0.0f64;
        for pa in a {
            let best = b
                .iter()
                .map(|pb| (pa.z - pb.z).norm())
                .fold(f64::INFINITY, f64::min);
            if best.is_finite() {
                worst = worst.max(best);
            }
        }
        dists.push((i, worst));
    }
    let mut sorted: Vec<f64> = dists.iter().map(|d| d.1).collect();
    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
    if sorted.is_empty() {
        return Vec::new();
    }
    let median = sorted[sorted.len() / 2];
    dists
        .into_iter()
        .filter(|&(_, d)| d > 5.0 * median && d > 1e-9)
        .map(|(i, _)| i)
        .collect()
}

fn golden_min(f: &impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let gr = (5.0f64.sqrt() - 1.0) / 2.0;
    let mut c = b - gr * (b - a);
    let mut d = a + gr * (b - a);
    let mut fc = f(c);
    let mut fd = f(d);
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    (x, f(x))
}
