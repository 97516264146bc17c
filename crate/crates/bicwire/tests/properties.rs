//! Property tests for the analytic invariants of the self-energy and the
//! Bloch-variable machinery.

use num_complex::Complex64;
use proptest::prelude::*;

use bicwire::model::{band_energy, Sector};
use bicwire::selfenergy::{u_from_z, xi_from_u, Sheet};

fn off_band_z() -> impl Strategy<Value = Complex64> {
    // keep |Im z| away from zero so neither root hugs the unit circle
    (any::<bool>(), -4.0f64..4.0, 1e-3f64..3.0)
        .prop_map(|(neg, re, im)| Complex64::new(re, if neg { -im } else { im }))
}

proptest! {
    #[test]
    fn band_energy_range_and_parity(k in -std::f64::consts::PI..std::f64::consts::PI, w in 0.1f64..10.0) {
        let e = band_energy(k, w);
        prop_assert!(e >= -w - 1e-12 && e <= w + 1e-12);
        prop_assert!((e - band_energy(-k, w)).abs() < 1e-12);
    }

    #[test]
    fn band_energy_monotone_on_half_range(w in 0.1f64..10.0) {
        let n = 64;
        let mut last = f64::NEG_INFINITY;
        for i in 0..=n {
            let k = std::f64::consts::PI * i as f64 / n as f64;
            let e = band_energy(k, w);
            prop_assert!(e >= last);
            last = e;
        }
    }

    #[test]
    fn bloch_roots_are_reciprocal(z in off_band_z(), w in 0.5f64..4.0) {
        let first = u_from_z(z, Sheet::First, w).unwrap();
        let second = u_from_z(z, Sheet::Second, w).unwrap();
        prop_assert!((first.u * second.u - 1.0).norm() < 1e-12);
        prop_assert!(first.u.norm() < 1.0);
        prop_assert!(second.u.norm() > 1.0);
        // quadratic residual
        let q = first.u * first.u + (2.0 * z / w) * first.u + 1.0;
        prop_assert!(q.norm() < 1e-12 * (1.0 + first.u.norm_sqr()));
    }

    #[test]
    fn xi_schwarz_reflection(z in off_band_z(), x_d in 1u32..5) {
        let w = 2.0;
        for sheet in [Sheet::First, Sheet::Second] {
            for sector in [Sector::P, Sector::S] {
                let a = xi_from_u(u_from_z(z, sheet, w).unwrap().u, sector, x_d);
                let b = xi_from_u(u_from_z(z.conj(), sheet, w).unwrap().u, sector, x_d);
                prop_assert!((a.conj() - b).norm() < 1e-12 * (1.0 + a.norm()));
            }
        }
    }

    #[test]
    fn xi_sector_sum_rule(z in off_band_z(), x_d in 1u32..5) {
        let w = 2.0;
        let bp = u_from_z(z, Sheet::First, w).unwrap();
        let sum = xi_from_u(bp.u, Sector::P, x_d) + xi_from_u(bp.u, Sector::S, x_d);
        let expect = 4.0 * bp.u / (bp.u * bp.u - 1.0);
        prop_assert!((sum - expect).norm() < 1e-12 * (1.0 + expect.norm()));
    }
}
