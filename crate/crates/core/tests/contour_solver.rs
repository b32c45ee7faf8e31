use clampte_core::bie::{dirichlet_family, CMat, OperatorFamily};
use clampte_core::geometry::{BoundaryDiscretization, PlanarCurve};
use clampte_core::nep::{
    beyn_run, beyn_solve, dense_lu_solve, dense_svd, BeynOptions, ContourSpec, LuFactor,
};
use clampte_core::{Complex64, Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `diag(f_1(z), ..., f_n(z))`.
struct Diagonal(Vec<fn(Complex64) -> Complex64>);

impl OperatorFamily for Diagonal {
    fn dim(&self) -> usize {
        self.0.len()
    }

    fn eval(&self, z: Complex64) -> Result<CMat> {
        let mut m = CMat::zeros(self.0.len(), self.0.len());
        for (i, f) in self.0.iter().enumerate() {
            m[(i, i)] = f(z);
        }
        Ok(m)
    }
}

fn random_matrix(rows: usize, cols: usize, seed: u64) -> CMat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    CMat::from_fn(rows, cols, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
}

#[test]
fn linear_diagonal_family() {
    let fam = Diagonal(vec![|z| z - 2.0, |z| z - 5.0]);
    let contour = ContourSpec::circle(c(2.0), 1.0).unwrap();
    let res = beyn_solve(&fam, &contour, 1e-8).unwrap();
    assert_eq!(res.len(), 1);
    assert!((res[0].eigenvalue - 2.0).norm() < 1e-12);
    assert_eq!(res[0].multiplicity, 1);
    assert!(res[0].residual <= 1e-12);
}

#[test]
fn quadratic_factor_family() {
    let fam = Diagonal(vec![|z| z * z - 1.0, |z| z - 10.0]);
    let contour = ContourSpec::circle(c(0.9), 0.5).unwrap();
    let res = beyn_solve(&fam, &contour, 1e-8).unwrap();
    assert_eq!(res.len(), 1);
    assert!((res[0].eigenvalue - 1.0).norm() < 1e-10);
}

#[test]
fn disk_dirichlet_values_with_multiplicity() {
    let bd = BoundaryDiscretization::new(&PlanarCurve::unit_disk(), 128).unwrap();
    let fam = dirichlet_family(&bd);
    let contour = ContourSpec::new(c(3.0), 1.0, 0.2).unwrap();
    let res = beyn_solve(&fam, &contour, 1e-8).unwrap();
    let total: usize = res.iter().map(|r| r.multiplicity).sum();
    assert_eq!(total, 3);
    assert!((res[0].eigenvalue.re - 2.404825557695773).abs() < 1e-8);
    assert_eq!(res[1].multiplicity, 2);
    assert!((res[1].eigenvalue.re - 3.831705970207512).abs() < 1e-8);
    for r in &res {
        assert!(r.eigenvalue.im == 0.0 && r.raw.im.abs() <= 1e-6 * (1.0 + r.raw.re));
        assert!(r.residual <= 1e-6);
    }
}

#[test]
fn empty_contour_has_negligible_moment() {
    // no Dirichlet value of the unit disk lies in (4.0, 5.0)
    let bd = BoundaryDiscretization::new(&PlanarCurve::unit_disk(), 64).unwrap();
    let fam = dirichlet_family(&bd);
    let contour = ContourSpec::new(c(4.5), 0.4, 0.2).unwrap();
    let out = beyn_run(&fam, &contour, &BeynOptions::default(), 0).unwrap();
    assert!(out.results.is_empty());
    assert!(out.a0_norm <= 1e-8 * out.scale, "{:e} vs {:e}", out.a0_norm, out.scale);
}

#[test]
fn quadrature_doubling_is_stable() {
    let bd = BoundaryDiscretization::new(&PlanarCurve::unit_disk(), 64).unwrap();
    let fam = dirichlet_family(&bd);
    let options = BeynOptions { refine_steps: 0, ..BeynOptions::default() };
    let base = ContourSpec::new(c(3.0), 1.0, 0.2).unwrap();
    let a = beyn_run(&fam, &base.with_points(16).unwrap(), &options, 0).unwrap().results;
    let b = beyn_run(&fam, &base.with_points(32).unwrap(), &options, 0).unwrap().results;
    assert_eq!(a.len(), b.len());
    for (x, y) in a.iter().zip(&b) {
        assert!((x.raw - y.raw).norm() <= 1e-8, "{} vs {}", x.raw, y.raw);
    }
}

#[test]
fn contour_must_avoid_branch_cut() {
    assert!(matches!(ContourSpec::new(c(0.5), 1.0, 0.2), Err(Error::Contour(_))));
    assert!(ContourSpec::new(Complex64::new(0.5, 1.0), 1.0, 0.2).is_ok());
    assert!(ContourSpec::new(c(2.0), 1.0, 0.2).unwrap().with_points(7).is_err());
}

#[test]
fn rank_overflow_is_reported() {
    // 40 simple eigenvalues in one contour exceed 8 doubled three times
    struct Many;
    impl OperatorFamily for Many {
        fn dim(&self) -> usize {
            80
        }
        fn eval(&self, z: Complex64) -> Result<CMat> {
            let mut m = CMat::zeros(80, 80);
            for i in 0..80 {
                m[(i, i)] = z - (1.0 + 0.02 * (i % 70) as f64);
            }
            Ok(m)
        }
    }
    let contour = ContourSpec::new(c(1.7), 0.8, 0.1).unwrap();
    assert!(matches!(beyn_solve(&Many, &contour, 1e-8), Err(Error::RankOverflow { .. })));
}

#[test]
fn identity_solve() {
    let b = random_matrix(6, 3, 1);
    let s = dense_lu_solve(&CMat::identity(6, 6), &b).unwrap();
    assert!((&s.x - &b).norm_l2() == 0.0);
}

#[test]
fn random_system_recovers_solution() {
    let a = random_matrix(50, 50, 2);
    let x_star = random_matrix(50, 4, 3);
    let b = &a * &x_star;
    let s = dense_lu_solve(&a, &b).unwrap();
    assert!((&s.x - &x_star).norm_l2() <= 1e-9 * x_star.norm_l2());
    let r = (&a * &s.x - &b).norm_l2();
    assert!(r <= 1e-10 * a.norm_l2() * s.x.norm_l2());
    assert!(!s.ill_conditioned());
}

#[test]
fn hilbert_matrix_is_flagged() {
    let a = CMat::from_fn(12, 12, |i, j| c(1.0 / (i + j + 1) as f64));
    let s = dense_lu_solve(&a, &CMat::identity(12, 12)).unwrap();
    let svd = dense_svd(&a).unwrap();
    let kappa2 = svd.sigma[0] / svd.sigma[11];
    assert!(kappa2 > 1e12);
    assert!(s.ill_conditioned(), "estimate {:e}", s.condition);
}

#[test]
fn singular_matrix_reports_pivot() {
    let mut a = random_matrix(5, 5, 4);
    for j in 0..5 {
        a[(3, j)] = c(0.0);
    }
    assert!(matches!(LuFactor::new(&a), Err(Error::Singular { .. })));
}

#[test]
fn svd_reconstructs_random_matrix() {
    let a = random_matrix(30, 8, 5);
    let s = dense_svd(&a).unwrap();
    let mut us = s.u.clone();
    for j in 0..8 {
        for i in 0..30 {
            us[(i, j)] *= s.sigma[j];
        }
    }
    let err = (&a * &s.v - &us).norm_l2();
    assert!(err <= 1e-10 * a.norm_l2());
    assert!(s.sigma.windows(2).all(|w| w[0] >= w[1] && w[1] >= 0.0));
}
