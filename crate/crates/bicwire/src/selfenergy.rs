//! Closed-form wire self-energies `Ξ^{p,s}(z)` on both Riemann sheets,
//! plus a numerical quadrature oracle.
//!
//! The Bloch substitution `z = -(W/2)(u + 1/u)` (i.e. `u = e^{iθ}` with
//! `z = -W cos θ` on the band) collapses the two-sheeted energy surface to
//! the `u`-plane: the two solutions of `u² + (2z/W)u + 1 = 0` are
//! reciprocal, the one inside the unit circle is the physical sheet and the
//! one outside is the second sheet. In terms of `u`,
//!
//! ```text
//! Ξ^{p,s}(z) = 2u (1 ∓ u^{2x_D}) / (u² - 1)        (- for p, + for s)
//! ```
//!
//! which equals `(1 ± e^{2i x_D θ}) / (i sin θ)` on the band. The sheet
//! selection by `|u| ≶ 1` is fixed by the physical decay `Ξ ~ W/z` at
//! infinity: the `|u| < 1` root gives a vanishing self-energy while the
//! other diverges.

use num_complex::Complex64;

use crate::model::Sector;
use crate::{Error, Result};

/// Tolerance below which `z` counts as sitting on a band edge `±W`.
pub const BAND_EDGE_EPS: f64 = 1e-10;

/// Riemann sheet of the resolvent.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sheet {
    /// Physical sheet, `|u| < 1`; no complex poles.
    First,
    /// Analytic continuation through the band cut, `|u| > 1`.
    Second,
}

impl Sheet {
    pub fn label(self) -> &'static str {
        match self {
            Sheet::First => "first",
            Sheet::Second => "second",
        }
    }
}

/// A point of the complex energy surface in Bloch coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochPoint {
    pub z: Complex64,
    pub u: Complex64,
    pub sheet: Sheet,
}

/// Map a complex energy to the Bloch variable on the requested sheet.
///
/// For real `z` strictly inside the band both roots sit on the unit circle;
/// the root with `Im u > 0` is returned for either sheet request, matching
/// the `z + i0⁺` limit from the first sheet (the sheets join there).
pub fn u_from_z(z: Complex64, sheet: Sheet, w: f64) -> Result<BlochPoint> {
    let edge = |s: f64| (z - Complex64::new(s * w, 0.0)).norm() < BAND_EDGE_EPS;
    if edge(1.0) || edge(-1.0) {
        return Err(Error::BandEdge {
            re: z.re,
            im: z.im,
            w,
        });
    }

    let u = if z.im == 0.0 && z.re.abs() < w {
        // On the band cut: u = e^{iθ}, θ = acos(-z/W) in (0, π).
        let theta = (-z.re / w).acos();
        Complex64::new(theta.cos(), theta.sin())
    } else {
        let b = 2.0 * z / w;
        let mut s = (b * b - 4.0).sqrt();
        if (b.conj() * s).re < 0.0 {
            s = -s;
        }
        // big root first, small root as its reciprocal: no cancellation
        let big = -(b + s) / 2.0;
        let small = 1.0 / big;
        match sheet {
            Sheet::First => small,
            Sheet::Second => big,
        }
    };

    debug_assert!(
        (u * u + (2.0 * z / w) * u + 1.0).norm() <= 1e-12 * (1.0 + u.norm_sqr()),
        "Bloch quadratic residual too large"
    );
    Ok(BlochPoint { z, u, sheet })
}

/// Recover the energy from the Bloch variable.
pub fn z_from_u(u: Complex64, w: f64) -> Complex64 {
    -(w / 2.0) * (u + 1.0 / u)
}

/// Self-energy evaluated directly from the Bloch variable.
///
/// No sheet bookkeeping: `u` already encodes it.
pub fn xi_from_u(u: Complex64, sector: Sector, x_d: u32) -> Complex64 {
    2.0 * u * (1.0 + sector.sign() * u.powu(2 * x_d)) / (u * u - 1.0)
}

/// Closed-form self-energy `Ξ^{sector}(z)` on the requested sheet.
///
/// Errors on band edges, where `sin θ → 0` makes the expression singular
/// (in the p-sector the limit is finite but the formula is 0/0; callers
/// that sweep real energies should work in `u` instead).
pub fn xi(z: Complex64, sector: Sector, sheet: Sheet, x_d: u32, w: f64) -> Result<Complex64> {
    let bp = u_from_z(z, sheet, w)?;
    Ok(xi_from_u(bp.u, sector, x_d))
}

/// Derivative `dΞ/dz` on the requested sheet.
pub fn xi_prime(z: Complex64, sector: Sector, sheet: Sheet, x_d: u32, w: f64) -> Result<Complex64> {
    let bp = u_from_z(z, sheet, w)?;
    let u = bp.u;
    let m = 2 * x_d;
    // Ξ = N/Dd with N = 2u + 2s·u^{m+1}, Dd = u² - 1
    let s = sector.sign();
    let n = 2.0 * u + 2.0 * s * u.powu(m + 1);
    let n_p = 2.0 + 2.0 * s * (m as f64 + 1.0) * u.powu(m);
    let dd = u * u - 1.0;
    let dxi_du = (n_p * dd - n * 2.0 * u) / (dd * dd);
    let du_dz = -2.0 * u * u / (w * dd);
    Ok(dxi_du * du_dz)
}

/// Quadrature oracle for the first-sheet self-energy:
/// `(1/π) ∫₀^π W (1 ± cos 2k x_D) / (z - W cos k) dk`
/// (the integrand is even in `k`). Adaptive Gauss–Kronrod to absolute
/// tolerance 1e-10; requires `|Im z| > 1e-6` so the integrand stays
/// bounded.
pub fn xi_quadrature(z: Complex64, sector: Sector, x_d: u32, w: f64) -> Result<Complex64> {
    xi_quadrature_profile(z, sector.sign(), x_d, w)
}

/// Same integral with the interference profile removed (`1` instead of
/// `1 ± cos 2k x_D`); the sector-summed integrand identity
/// `Ξ^p + Ξ^s = 2 Ξ₀` is exposed for tests.
pub fn xi0_quadrature(z: Complex64, w: f64) -> Result<Complex64> {
    xi_quadrature_profile(z, 0.0, 1, w)
}

fn xi_quadrature_profile(z: Complex64, sign: f64, x_d: u32, w: f64) -> Result<Complex64> {
    if z.im.abs() <= 1e-6 {
        return Err(Error::QuadraturePrecondition(z.im.abs()));
    }
    let f = |k: f64| w * (1.0 + sign * (2.0 * k * x_d as f64).cos()) / (z - w * k.cos());
    let (value, estimate) = quad::adaptive_gk15(&f, 0.0, std::f64::consts::PI, 1e-11)?;
    let _ = estimate;
    Ok(value / std::f64::consts::PI)
}

/// Adaptive Gauss–Kronrod 7/15 quadrature for complex-valued integrands.
mod quad {
    use num_complex::Complex64;

    use crate::{Error, Result};

    // Nodes and weights of the 15-point Kronrod rule on [-1, 1] with the
    // embedded 7-point Gauss rule (positive half; symmetric).
    const XGK: [f64; 8] = [
        0.991455371120813,
        0.949107912342759,
        0.864864423359769,
        0.741531185599394,
        0.586087235467691,
        0.405845151377397,
        0.207784955007898,
        0.000000000000000,
    ];
    const WGK: [f64; 8] = [
        0.022935322010529,
        0.063092092629979,
        0.104790010322250,
        0.140653259715525,
        0.169004726639267,
        0.190350578064785,
        0.204432940075298,
        0.209482141084728,
    ];
    const WG: [f64; 4] = [
        0.129484966168870,
        0.279705391489277,
        0.381830050505119,
        0.417959183673469,
    ];

    fn gk15(f: &impl Fn(f64) -> Complex64, a: f64, b: f64) -> (Complex64, f64) {
        let c = 0.5 * (a + b);
        let h = 0.5 * (b - a);
        let mut kron = Complex64::default();
        let mut gauss = Complex64::default();
        for (i, (&x, &wk)) in XGK.iter().zip(WGK.iter()).enumerate() {
            let val = if x == 0.0 {
                f(c)
            } else {
                f(c - h * x) + f(c + h * x)
            };
            kron += wk * val;
            if i % 2 == 1 {
                gauss += WG[i / 2] * val;
            }
        }
        kron *= h;
        gauss *= h;
        (kron, (kron - gauss).norm())
    }

    /// Bisection-adaptive GK15 with a global absolute tolerance.
    pub(super) fn adaptive_gk15(
        f: &impl Fn(f64) -> Complex64,
        a: f64,
        b: f64,
        tol: f64,
    ) -> Result<(Complex64, f64)> {
        // (a, b, estimate, error, depth)
        let (v0, e0) = gk15(f, a, b);
        let mut stack = vec![(a, b, v0, e0, 0u32)];
        let mut value = Complex64::default();
        let mut err_total = 0.0;
        const MAX_DEPTH: u32 = 48;
        const MAX_INTERVALS: usize = 100_000;
        let mut used = 0usize;
        while let Some((a, b, v, e, depth)) = stack.pop() {
            used += 1;
            if used > MAX_INTERVALS {
                return Err(Error::QuadratureNonConvergence { tol, estimate: e });
            }
            let local_tol = tol * (b - a) / (std::f64::consts::PI);
            if e <= local_tol.max(1e-16) || depth >= MAX_DEPTH {
                if depth >= MAX_DEPTH && e > local_tol {
                    return Err(Error::QuadratureNonConvergence { tol, estimate: e });
                }
                value += v;
                err_total += e;
            } else {
                let m = 0.5 * (a + b);
                let (vl, el) = gk15(f, a, m);
                let (vr, er) = gk15(f, m, b);
                stack.push((a, m, vl, el, depth + 1));
                stack.push((m, b, vr, er, depth + 1));
            }
        }
        Ok((value, err_total))
    }
}

#[cfg(test)]
#[allow(clippy::excessive_precision)] // frozen oracle values kept digit-for-digit
mod tests {
    use super::*;

    const W: f64 = 2.0;

    #[test]
    fn u_from_z_off_band_examples() {
        // smaller-modulus root of u² + 10u + 1 = 0 is -5 + √24
        let bp = u_from_z(Complex64::new(10.0, 0.0), Sheet::First, W).unwrap();
        assert!((bp.u.re - (-0.101_020_514_433_644_24)).abs() < 1e-12);
        assert!(bp.u.im.abs() < 1e-15);
        let bp2 = u_from_z(Complex64::new(10.0, 0.0), Sheet::Second, W).unwrap();
        assert!((bp2.u.re - (-9.898_979_485_566_356)).abs() < 1e-12);
        // reciprocal pair
        assert!((bp.u * bp2.u - 1.0).norm() < 1e-12);
    }

    #[test]
    fn u_from_z_band_center_is_i() {
        let bp = u_from_z(Complex64::new(0.0, 0.0), Sheet::First, W).unwrap();
        assert!((bp.u - Complex64::i()).norm() < 1e-15);
        // the +i0⁺ limit is shared by both sheet requests on the cut
        let bp2 = u_from_z(Complex64::new(0.0, 0.0), Sheet::Second, W).unwrap();
        assert_eq!(bp.u, bp2.u);
    }

    #[test]
    fn u_from_z_band_edge_errors() {
        assert!(matches!(
            u_from_z(Complex64::new(W, 0.0), Sheet::First, W),
            Err(Error::BandEdge { .. })
        ));
        assert!(matches!(
            u_from_z(Complex64::new(-W, 1e-12), Sheet::Second, W),
            Err(Error::BandEdge { .. })
        ));
    }

    #[test]
    fn xi_band_limit_values() {
        // z=0, x_D=2: u = i, u⁴ = 1 → p-sector zero (the static-BIC
        // mechanism), s-sector (1+1)/(i·1) = -2i.
        let p = xi(Complex64::new(0.0, 0.0), Sector::P, Sheet::First, 2, W).unwrap();
        assert!(p.norm() < 1e-15);
        let s = xi(Complex64::new(0.0, 0.0), Sector::S, Sheet::First, 2, W).unwrap();
        assert!((s - Complex64::new(0.0, -2.0)).norm() < 1e-14);
    }

    #[test]
    fn xi_matches_quadrature_oracle() {
        // frozen quadrature values generated independently (scipy)
        let z = Complex64::new(0.3, 0.4);
        let p = xi(z, Sector::P, Sheet::First, 2, W).unwrap();
        let p_ref = Complex64::new(-2.284_460_742_923_549e-1, -6.289_884_323_207_089e-1);
        assert!((p - p_ref).norm() < 1e-12);
        let s = xi(z, Sector::S, Sheet::First, 2, W).unwrap();
        let s_ref = Complex64::new(2.867_781_377_785_301e-1, -1.351_159_092_700_414);
        assert!((s - s_ref).norm() < 1e-12);

        let q = xi_quadrature(z, Sector::P, 2, W).unwrap();
        assert!((q - p).norm() / p.norm() < 1e-8);

        let z = Complex64::new(0.0, 1.0);
        let closed = xi(z, Sector::P, Sheet::First, 1, W).unwrap();
        let quad = xi_quadrature(z, Sector::P, 1, W).unwrap();
        assert!((closed - quad).norm() < 1e-8);
        let q_ref = Complex64::new(0.0, -1.236_067_977_499_790);
        assert!((quad - q_ref).norm() < 1e-10);
    }

    #[test]
    fn xi_quadrature_near_real_axis() {
        // z = 5 + i·10⁻³: essentially the real-axis value W/√(z²-W²)
        let z = Complex64::new(5.0, 1e-3);
        let q = xi_quadrature(z, Sector::P, 2, W).unwrap();
        let closed = xi(z, Sector::P, Sheet::First, 2, W).unwrap();
        assert!((q - closed).norm() / closed.norm() < 1e-6);
        let base = W / (z * z - W * W).sqrt();
        assert!((q / base - 1.0).norm() < 0.01);
    }

    #[test]
    fn xi_quadrature_rejects_real_energies() {
        assert!(matches!(
            xi_quadrature(Complex64::new(0.3, 1e-9), Sector::P, 2, W),
            Err(Error::QuadraturePrecondition(_))
        ));
    }

    #[test]
    fn sector_swap_identity() {
        // (1 - c) + (1 + c) = 2: p + s integrand equals twice the plain one
        let z = Complex64::new(-0.7, 0.9);
        let p = xi_quadrature(z, Sector::P, 3, W).unwrap();
        let s = xi_quadrature(z, Sector::S, 3, W).unwrap();
        let x0 = xi0_quadrature(z, W).unwrap();
        assert!((p + s - 2.0 * x0).norm() < 1e-9);
    }

    #[test]
    fn sector_sum_rule() {
        let z = Complex64::new(1.3, -0.4);
        for sheet in [Sheet::First, Sheet::Second] {
            let bp = u_from_z(z, sheet, W).unwrap();
            let sum = xi_from_u(bp.u, Sector::P, 2) + xi_from_u(bp.u, Sector::S, 2);
            let expect = 4.0 * bp.u / (bp.u * bp.u - 1.0);
            assert!((sum - expect).norm() < 1e-12);
        }
    }

    #[test]
    fn first_sheet_decays_second_diverges() {
        let z = Complex64::new(1e6, 0.0);
        let xi1 = xi(z, Sector::S, Sheet::First, 2, W).unwrap();
        assert!((z * xi1 / W - 1.0).norm() < 1e-10);
        let xi2 = xi(z, Sector::S, Sheet::Second, 2, W).unwrap();
        assert!(xi2.norm() > 1e10);
    }

    #[test]
    fn sheets_join_across_the_cut() {
        // Ξ_I(x + iδ) ≈ Ξ_II(x - iδ) on the band
        let d = 1e-9;
        let above = xi(Complex64::new(0.7, d), Sector::P, Sheet::First, 2, W).unwrap();
        let below = xi(Complex64::new(0.7, -d), Sector::P, Sheet::Second, 2, W).unwrap();
        assert!((above - below).norm() < 1e-7);
    }

    #[test]
    fn p_sector_edge_limit_is_finite() {
        // Ξ^p(z → ∓W) → ∓2x_D (0/0 in the raw formula, finite limit)
        for x_d in [1u32, 2, 4] {
            let u = Complex64::new(1.0 - 1e-8, 0.0);
            let lim = xi_from_u(u, Sector::P, x_d);
            assert!((lim.re - (-2.0 * x_d as f64)).abs() < 1e-5);
        }
    }
}
