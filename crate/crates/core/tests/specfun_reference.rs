//! Cylinder functions against 30-digit reference values (mpmath).

use clampte_core::specfun::{bessel_i, bessel_j, bessel_k, bessel_y, hankel1};
use clampte_core::Complex64;

fn rel(got: Complex64, want: Complex64) -> f64 {
    (got - want).norm() / want.norm()
}

// (n, x, J, Y, I, K)
const REAL: &[(i32, f64, f64, f64, f64, f64)] = &[
    (0, 0.5, 0.93846980724081290423, -0.44451873350670655715, 1.0634833707413235193, 0.92441907122766586178),
    (0, 3.0, -0.26005195490193343762, 0.37685001001279038197, 4.8807925858650240856, 0.034739504386279248072),
    (1, 3.0, 0.33905895852593645893, 0.32467442479179997844, 3.9533702174026093965, 0.040156431128194184377),
    (5, 7.5, 0.28347390516255045867, 0.17541805694546512319, 48.241360395663654229, 0.0011491630148312387836),
    (12, 20.0, -0.11899062431039906511, -0.15975239491660578726, 1211289.7000691594502, 1.7696955511715142593e-8),
    (40, 45.0, 0.12660062126820200267, 0.11933217757749343982, 89477977586.339231746, 9.2808925055890754189e-14),
    (3, 30.0, 0.12921122875972498304, -0.06803569025319872277, 671140461797.43961864, 2.4713310636589929359e-14),
    (0, 49.0, -0.052900033322273515066, -0.10096113511605106371, 1.0898358416028087174e+20, 9.3634406747595817138e-23),
    (20, 0.1, 3.9194377208586220087e-45, -4.0607084201263677101e+42, 3.9203710314199778248e-45, 6.3768675266611785739e+42),
];

#[test]
fn real_axis_values() {
    for &(n, x, j, y, i, k) in REAL {
        let z = Complex64::new(x, 0.0);
        let cases = [
            ("J", bessel_j(n, z).unwrap(), j),
            ("Y", bessel_y(n, z).unwrap(), y),
            ("I", bessel_i(n, z).unwrap(), i),
            ("K", bessel_k(n, z).unwrap(), k),
        ];
        for (name, got, want) in cases {
            let e = rel(got, Complex64::new(want, 0.0));
            assert!(e < 1e-10, "{name}_{n}({x}) rel err {e:e}");
            assert!(got.im == 0.0 || got.im.abs() < 1e-14 * got.re.abs(), "{name}_{n}({x}) not real");
        }
    }
}

// (n, z, J, H1)
const COMPLEX: &[(i32, (f64, f64), (f64, f64), (f64, f64))] = &[
    (0, (1.0, 0.3), (0.77990705425523407307, -0.13348379376076741723), (0.54917148054105463339, -0.0071438785871120648627)),
    (1, (14.0, 1.5), (0.33037633398267996181, 0.3355880986127211865), (0.027713059027146164372, -0.038729278998341888142)),
    (3, (5.0, -2.0), (0.89732975795019508626, 0.48238965746078678006), (1.7279429664332724251, 0.9654933559732698631)),
    (0, (-13.0, 1.0), (0.32230428308058252595, -0.07955673498478274668), (-0.074802604351822206393, -0.031593435307071077114)),
];

#[test]
fn complex_argument_values() {
    for &(n, z, j, h) in COMPLEX {
        let z = Complex64::new(z.0, z.1);
        let ej = rel(bessel_j(n, z).unwrap(), Complex64::new(j.0, j.1));
        let eh = rel(hankel1(n, z).unwrap(), Complex64::new(h.0, h.1));
        assert!(ej < 1e-8, "J_{n}({z}) rel err {ej:e}");
        assert!(eh < 1e-8, "H_{n}({z}) rel err {eh:e}");
    }
}

// (n, z, I, K)
const MODIFIED: &[(i32, (f64, f64), (f64, f64), (f64, f64))] = &[
    (0, (3.0, 1.0), (3.220418127928039054, 3.4418593052991378813), (0.013830675060516718502, -0.030989778540318227295)),
    (1, (0.5, 0.4), (0.24253975141058949005, 0.21468312418842273033), (0.82285364976469736747, -1.0508776712930030132)),
    (0, (10.0, 7.0), (2331.2805940225717, 999.8263617661926064), (8.4994983729729379928e-6, -0.00001373544366001534581)),
    (1, (2.5, 2.4), (-1.250284476417225647, 2.0974468097384373098), (-0.057004140201255766249, -0.01745388934095866793)),
    (4, (35.0, 3.0), (-83979005401186.93298, 13957810773531.62089), (-1.6561748689643040726e-16, -1.3322759557614441024e-17)),
];

#[test]
fn complex_modified_values() {
    for &(n, z, i, k) in MODIFIED {
        let z = Complex64::new(z.0, z.1);
        let ei = rel(bessel_i(n, z).unwrap(), Complex64::new(i.0, i.1));
        let ek = rel(bessel_k(n, z).unwrap(), Complex64::new(k.0, k.1));
        assert!(ei < 1e-8, "I_{n}({z}) rel err {ei:e}");
        assert!(ek < 1e-8, "K_{n}({z}) rel err {ek:e}");
    }
}
