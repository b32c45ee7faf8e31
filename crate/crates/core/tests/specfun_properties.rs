use std::f64::consts::PI;

use clampte_core::specfun::{bessel_i, bessel_j, bessel_k, bessel_y, hankel1};
use clampte_core::Complex64;
use proptest::prelude::*;

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 500, ..ProptestConfig::default() })]

    #[test]
    fn cylinder_wronskian(n in 0i32..=20, x in 0.1f64..30.0) {
        let z = re(x);
        let w = bessel_j(n + 1, z).unwrap() * bessel_y(n, z).unwrap()
            - bessel_j(n, z).unwrap() * bessel_y(n + 1, z).unwrap();
        let want = 2.0 / (PI * x);
        prop_assert!((w.re - want).abs() <= 1e-10 * (1.0 + want), "n={} x={} got {} want {}", n, x, w.re, want);
    }

    #[test]
    fn modified_wronskian(n in 0i32..=20, x in 0.1f64..30.0) {
        // I_n K_{n+1} + I_{n+1} K_n = 1/x, checked relative to the largest term
        let z = re(x);
        let a = bessel_i(n, z).unwrap() * bessel_k(n + 1, z).unwrap();
        let b = bessel_i(n + 1, z).unwrap() * bessel_k(n, z).unwrap();
        let scale = a.norm().max(b.norm()).max(1.0 / x);
        prop_assert!(((a + b).re - 1.0 / x).abs() <= 1e-10 * scale);
    }

    #[test]
    fn real_axis_values_are_real(n in 0i32..=20, x in 0.1f64..30.0) {
        let z = re(x);
        prop_assert_eq!(bessel_j(n, z).unwrap().im, 0.0);
        prop_assert_eq!(bessel_y(n, z).unwrap().im, 0.0);
        prop_assert!(bessel_i(n, z).unwrap().re > 0.0);
        prop_assert!(bessel_k(n, z).unwrap().re > 0.0);
    }

    #[test]
    fn conjugate_symmetry(n in 0i32..=8, x in 0.2f64..25.0, y in -3.0f64..3.0) {
        let z = Complex64::new(x, y);
        let j = bessel_j(n, z).unwrap();
        let jc = bessel_j(n, z.conj()).unwrap();
        prop_assert!((j.conj() - jc).norm() <= 1e-12 * (1.0 + j.norm()));
        let k = bessel_k(n, z).unwrap();
        let kc = bessel_k(n, z.conj()).unwrap();
        prop_assert!((k.conj() - kc).norm() <= 1e-12 * (1.0 + k.norm()));
    }

    #[test]
    fn hankel_is_j_plus_i_y(n in 0i32..=10, x in 0.1f64..30.0, y in -2.0f64..2.0) {
        let z = Complex64::new(x, y);
        let h = hankel1(n, z).unwrap();
        let jy = bessel_j(n, z).unwrap() + Complex64::i() * bessel_y(n, z).unwrap();
        prop_assert!((h - jy).norm() <= 1e-9 * (1.0 + h.norm()));
    }
}

#[test]
fn hankel_phase_at_large_argument() {
    // H_0(z) e^{-i(z - π/4)} sqrt(πz/2) → 1
    for x in [200.0, 1000.0, 5000.0] {
        let z = re(x);
        let h = hankel1(0, z).unwrap();
        let lead = (Complex64::i() * (z - 0.25 * PI)).exp() * (2.0 / (PI * x)).sqrt();
        assert!((h / lead - 1.0).norm() < 1.0 / x);
    }
}
