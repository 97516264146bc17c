//! All-roots finder for real-coefficient polynomials via Aberth–Ehrlich
//! simultaneous iteration.
//!
//! Degrees in this crate stay below ~20 (the dispersion polynomial has
//! degree `2x_D + 5`), where the simultaneous iteration is fast and does
//! not need deflation.

use num_complex::Complex64;

use crate::{Error, Result};

/// Evaluate `p` and `p'` at `x` in one Horner pass (ascending coefficients).
fn horner2(coeffs: &[f64], x: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::default();
    let mut dp = Complex64::default();
    for &c in coeffs.iter().rev() {
        dp = dp * x + p;
        p = p * x + c;
    }
    (p, dp)
}

/// Backward-error scale `Σ |c_k| |x|^k` for the convergence test.
fn residual_scale(coeffs: &[f64], x: Complex64) -> f64 {
    let ax = x.norm();
    let mut s = 0.0;
    let mut pow = 1.0;
    for &c in coeffs {
        s += c.abs() * pow;
        pow *= ax;
    }
    s.max(f64::MIN_POSITIVE)
}

/// All complex roots of the polynomial with the given ascending real
/// coefficients, in no particular order. Exact zero leading coefficients
/// are trimmed; exact zero trailing coefficients become roots at the
/// origin.
pub fn real_poly_roots(coeffs: &[f64], max_iter: usize) -> Result<Vec<Complex64>> {
    let mut c: Vec<f64> = coeffs.to_vec();
    while c.last() == Some(&0.0) {
        c.pop();
    }
    let mut roots = Vec::new();
    while c.first() == Some(&0.0) {
        roots.push(Complex64::default());
        c.remove(0);
    }
    if c.len() <= 1 {
        return Ok(roots);
    }
    if c.len() == 2 {
        roots.push(Complex64::new(-c[0] / c[1], 0.0));
        return Ok(roots);
    }

    let n = c.len() - 1;
    // Initial guesses on a circle at the geometric mean of the root moduli,
    // angles offset so real-axis symmetry cannot stall the iteration.
    let rho = (c[0].abs() / c[n].abs()).powf(1.0 / n as f64).max(1e-3);
    let mut x: Vec<Complex64> = (0..n)
        .map(|j| {
            let ang = 2.0 * std::f64::consts::PI * j as f64 / n as f64 + 0.437;
            let r = rho * (1.0 + 0.05 * (j as f64 + 1.0) / n as f64);
            Complex64::from_polar(r, ang)
        })
        .collect();

    let tol = 1e-14;
    let mut worst = f64::INFINITY;
    for _ in 0..max_iter {
        let mut moved = 0.0f64;
        worst = 0.0f64;
        for i in 0..n {
            let (p, dp) = horner2(&c, x[i]);
            let scale = residual_scale(&c, x[i]);
            worst = worst.max(p.norm() / scale);
            if p.norm() <= tol * scale {
                continue;
            }
            let newton = if dp.norm() == 0.0 {
                // flat spot: nudge off it
                Complex64::new(1e-8, 1e-8)
            } else {
                p / dp
            };
            let mut repulsion = Complex64::default();
            for (j, xj) in x.iter().enumerate() {
                if j != i {
                    let d = x[i] - xj;
                    if d.norm() > 0.0 {
                        repulsion += 1.0 / d;
                    }
                }
            }
            let denom = 1.0 - newton * repulsion;
            let step = if denom.norm() < 1e-300 {
                newton
            } else {
                newton / denom
            };
            x[i] -= step;
            moved = moved.max(step.norm() / (1.0 + x[i].norm()));
        }
        if worst <= tol || moved < 1e-16 {
            break;
        }
    }

    if worst > 1e-10 {
        return Err(Error::RootFinderNonConvergence {
            iters: max_iter,
            residual: worst,
        });
    }
    roots.extend(x);
    Ok(roots)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn contains(roots: &[Complex64], want: Complex64, tol: f64) -> bool {
        roots.iter().any(|r| (r - want).norm() < tol)
    }

    #[test]
    fn quadratic_with_known_roots() {
        // u² + 10u + 1: roots -5 ± √24
        let roots = real_poly_roots(&[1.0, 10.0, 1.0], 100).unwrap();
        assert_eq!(roots.len(), 2);
        assert!(contains(
            &roots,
            Complex64::new(-0.10102051443364424, 0.0),
            1e-12
        ));
        assert!(contains(
            &roots,
            Complex64::new(-9.898979485566356, 0.0),
            1e-10
        ));
    }

    #[test]
    fn factored_quintic() {
        // (u² + 1)(u - 2)(u + 3)(u - 0.5) expanded
        let c = [3.0, -6.5, 3.5, -5.5, 0.5, 1.0];
        let roots = real_poly_roots(&c, 200).unwrap();
        assert_eq!(roots.len(), 5);
        for want in [
            Complex64::new(0.0, 1.0),
            Complex64::new(0.0, -1.0),
            Complex64::new(2.0, 0.0),
            Complex64::new(-3.0, 0.0),
            Complex64::new(0.5, 0.0),
        ] {
            assert!(contains(&roots, want, 1e-10), "missing {want}");
        }
    }

    #[test]
    fn trailing_zeros_become_origin_roots() {
        // u²(u - 1)
        let roots = real_poly_roots(&[0.0, 0.0, -1.0, 1.0], 100).unwrap();
        assert_eq!(roots.len(), 3);
        assert_eq!(roots.iter().filter(|r| r.norm() == 0.0).count(), 2);
        assert!(contains(&roots, Complex64::new(1.0, 0.0), 1e-12));
    }

    #[test]
    fn conjugate_closure_on_random_polynomials() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let deg = rng.gen_range(3..=13);
            let c: Vec<f64> = (0..=deg).map(|_| rng.gen_range(-2.0..2.0)).collect();
            if c[deg].abs() < 0.1 {
                continue;
            }
            let roots = real_poly_roots(&c, 300).unwrap();
            assert_eq!(roots.len(), deg);
            for r in &roots {
                let conj_present = roots.iter().any(|s| (s - r.conj()).norm() < 1e-6);
                assert!(conj_present, "conjugate of {r} missing");
            }
        }
    }
}
