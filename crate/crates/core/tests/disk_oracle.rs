use clampte_core::oracle::{
    disk_dirichlet, disk_neumann, disk_te_roots, disk_te_roots_with, te_determinant_scaled, DiskKind,
};
use clampte_core::specfun::{bessel_j, bessel_j_prime};
use clampte_core::Complex64;

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

#[test]
fn dirichlet_first_five() {
    let s = disk_dirichlet(5).unwrap();
    assert_eq!(s.kind, DiskKind::Dirichlet);
    assert!(close(&s.values(), &[2.40483, 3.83171, 3.83171, 5.13562, 5.13562], 1e-5));
}

#[test]
fn neumann_first_five() {
    let s = disk_neumann(5).unwrap();
    assert!(close(&s.values(), &[0.0, 1.84119, 1.84119, 3.05424, 3.05424], 1e-5));
}

#[test]
fn transmission_first_five() {
    let s = disk_te_roots(5).unwrap();
    assert!(close(&s.values(), &[1.61464, 3.05164, 3.05164, 4.36452, 4.36452], 1e-5));
    assert_eq!(s.modes[0].order, 0);
    assert_eq!(s.modes[1].order, 1);
}

#[test]
fn first_transmission_root_below_first_dirichlet() {
    let k1 = disk_te_roots(1).unwrap().values()[0];
    let d1 = disk_dirichlet(1).unwrap().values()[0];
    assert!(k1 <= d1);
}

#[test]
fn scan_step_halving_is_stable() {
    let a = disk_te_roots_with(8, 6.0, 0.01).unwrap().values();
    let b = disk_te_roots_with(8, 6.0, 0.005).unwrap().values();
    assert!(close(&a, &b, 1e-10), "{a:?} {b:?}");
}

#[test]
fn roots_have_small_residuals() {
    for m in disk_te_roots(9).unwrap().modes {
        let f = |k: f64| te_determinant_scaled(m.order, k).unwrap();
        let slope = (f(m.value + 1e-6) - f(m.value - 1e-6)) / 2e-6;
        assert!(f(m.value).abs() <= 1e-10 * slope.abs().max(1.0));
    }
}

#[test]
fn bessel_zero_interlacing() {
    let first_zero = |f: &dyn Fn(f64) -> f64| -> f64 {
        let mut x = 0.05;
        while f(x).signum() == f(x + 0.01).signum() {
            x += 0.01;
        }
        clampte_core::oracle::bracketed_root(f, x, x + 0.01, 1e-13).unwrap()
    };
    let mut prev = 0.0;
    for n in 0..=10 {
        let j = first_zero(&|x| bessel_j(n, Complex64::new(x, 0.0)).unwrap().re);
        assert!(j > prev);
        prev = j;
        if n >= 1 {
            let jp = first_zero(&|x| bessel_j_prime(n, Complex64::new(x, 0.0)).unwrap().re);
            assert!(jp <= j);
        }
    }
}

#[test]
fn count_limit() {
    assert!(disk_dirichlet(51).is_err());
}
