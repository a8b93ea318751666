use num::rational::BigRational;
use num::{BigInt, Zero};
use unizeros::poly::{CosinePoly, Poly};
use unizeros::transforms::{
    chebyshev_combine_int, cosine_to_chebyshev, eval_chebyshev_form, eval_cosine, eval_cosine_f64,
    eval_unit_circle, lift_odd_degree, self_reciprocal_to_cosine,
};
use unizeros::Error;

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn ints(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| rat(x, 1)).collect()
}

fn bigs(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

#[test]
fn cosine_form_of_small_symmetric_polys() {
    let p = Poly::from_ints(&[1, 1, 1]).unwrap();
    let c = self_reciprocal_to_cosine(&p).unwrap();
    assert_eq!(c.coeffs(), &ints(&[1, 2])[..]);

    let q = Poly::from_ints(&[1, 2, 1]).unwrap();
    let c2 = self_reciprocal_to_cosine(&q).unwrap();
    assert_eq!(c2.coeffs(), &ints(&[2, 2])[..]);

    let r = Poly::from_ints(&[3]).unwrap();
    assert_eq!(self_reciprocal_to_cosine(&r).unwrap().coeffs(), &ints(&[3])[..]);
}

#[test]
fn cosine_form_rejects_bad_structure() {
    let odd = Poly::from_ints(&[1, 1]).unwrap();
    assert!(matches!(
        self_reciprocal_to_cosine(&odd),
        Err(Error::Structure(_))
    ));
    let asym = Poly::from_ints(&[1, 2, 3]).unwrap();
    assert!(matches!(
        self_reciprocal_to_cosine(&asym),
        Err(Error::Structure(_))
    ));
}

#[test]
fn lift_produces_even_symmetric_and_doubles_at_one() {
    let p = Poly::from_ints(&[1, 1]).unwrap();
    let q = lift_odd_degree(&p).unwrap();
    assert_eq!(q.coeffs(), &ints(&[1, 2, 1])[..]);
    assert!(q.is_self_reciprocal());
    assert_eq!(q.coeff_sum(), rat(2, 1) * p.coeff_sum());

    let p2 = Poly::from_ints(&[1, -1, -1, 1]).unwrap();
    let q2 = lift_odd_degree(&p2).unwrap();
    assert_eq!(q2.degree(), 4);
    assert!(q2.is_self_reciprocal());
    assert_eq!(q2.coeff_sum(), rat(2, 1) * p2.coeff_sum());

    assert!(matches!(
        lift_odd_degree(&Poly::from_ints(&[1, 2, 1]).unwrap()),
        Err(Error::Structure(_))
    ));
    assert!(matches!(
        lift_odd_degree(&Poly::from_ints(&[1, 2]).unwrap()),
        Err(Error::Structure(_))
    ));
}

#[test]
fn lift_multiplies_unit_circle_values_by_z_plus_one() {
    let p = Poly::from_ints(&[1, -1, 1, 1, -1, 1]).unwrap();
    assert!(p.is_self_reciprocal());
    let q = lift_odd_degree(&p).unwrap();
    for i in 0..100 {
        let t = -3.1 + 6.2 * (i as f64) / 99.0;
        let pv = eval_unit_circle(&p, t);
        let qv = eval_unit_circle(&q, t);
        let factor = num::complex::Complex64::new(t.cos() + 1.0, t.sin());
        let expect = pv * factor;
        assert!(
            (qv - expect).norm() < 1e-9,
            "t = {t}: {qv} vs {expect}"
        );
    }
}

#[test]
fn chebyshev_conversion_frozen_cases() {
    // 1 + 2 cos t -> 1 + 2x
    let f = cosine_to_chebyshev(&CosinePoly::from_ints(&[1, 2]).unwrap()).unwrap();
    assert_eq!(f.coeffs(), &ints(&[1, 2])[..]);
    // cos 2t -> 2x^2 - 1
    let f2 = cosine_to_chebyshev(&CosinePoly::from_ints(&[0, 0, 1]).unwrap()).unwrap();
    assert_eq!(f2.coeffs(), &ints(&[-1, 0, 2])[..]);
    // 2 - cos 3t -> 2 + 3x - 4x^3
    let f3 = cosine_to_chebyshev(&CosinePoly::from_ints(&[2, 0, 0, -1]).unwrap()).unwrap();
    assert_eq!(f3.coeffs(), &ints(&[2, 3, 0, -4])[..]);
}

#[test]
fn chebyshev_combine_int_small_rows() {
    assert_eq!(chebyshev_combine_int(&bigs(&[5])), bigs(&[5]));
    assert_eq!(chebyshev_combine_int(&bigs(&[0, 1])), bigs(&[0, 1]));
    assert_eq!(chebyshev_combine_int(&bigs(&[0, 0, 1])), bigs(&[-1, 0, 2]));
    assert_eq!(
        chebyshev_combine_int(&bigs(&[0, 0, 0, 1])),
        bigs(&[0, -3, 0, 4])
    );
    assert_eq!(
        chebyshev_combine_int(&bigs(&[0, 0, 0, 0, 1])),
        bigs(&[1, 0, -8, 0, 8])
    );
    // trailing zeros trim; the zero input gives the empty vector
    assert_eq!(chebyshev_combine_int(&bigs(&[7, 0, 0])), bigs(&[7]));
    assert!(chebyshev_combine_int(&bigs(&[0, 0])).is_empty());
}

#[test]
fn chebyshev_conversion_is_linear() {
    let a = CosinePoly::new(vec![rat(1, 2), rat(-1, 3), rat(2, 1)]).unwrap();
    let b = CosinePoly::new(vec![rat(1, 7), rat(5, 2), rat(-1, 6)]).unwrap();
    let sum = CosinePoly::new(
        a.coeffs()
            .iter()
            .zip(b.coeffs())
            .map(|(x, y)| x + y)
            .collect(),
    )
    .unwrap();
    let fa = cosine_to_chebyshev(&a).unwrap();
    let fb = cosine_to_chebyshev(&b).unwrap();
    let fs = cosine_to_chebyshev(&sum).unwrap();
    for j in 0..fs.coeffs().len() {
        assert_eq!(fs.coeffs()[j], &fa.coeffs()[j] + &fb.coeffs()[j]);
    }
}

#[test]
fn chebyshev_form_evaluates_like_the_cosine_sum() {
    let c = CosinePoly::new(vec![rat(1, 3), rat(-2, 1), rat(1, 2), rat(0, 1), rat(4, 7)])
        .unwrap();
    let f = cosine_to_chebyshev(&c).unwrap();
    for i in 0..64 {
        let t = -std::f64::consts::PI + std::f64::consts::TAU * (i as f64) / 64.0;
        let direct = eval_cosine(&c, t);
        let viachev = eval_chebyshev_form(&f, t.cos());
        assert!(
            (direct - viachev).abs() < 1e-10,
            "t = {t}: {direct} vs {viachev}"
        );
    }
}

#[test]
fn unit_circle_modulus_matches_cosine_modulus() {
    let p = Poly::from_ints(&[1, -1, 1, -1, 1]).unwrap();
    let c = self_reciprocal_to_cosine(&p).unwrap();
    for i in 0..100 {
        let t = -3.14 + 6.28 * (i as f64) / 99.0;
        let pm = eval_unit_circle(&p, t).norm();
        let tm = eval_cosine(&c, t).abs();
        assert!((pm - tm).abs() < 1e-9, "t = {t}: {pm} vs {tm}");
    }
}

#[test]
fn clenshaw_handles_edge_angles() {
    // cos(pi as f64) is exactly -1, so this vanishes exactly
    let v = eval_cosine_f64(&[2.0, 2.0], std::f64::consts::PI);
    assert_eq!(v, 0.0);
    let w = eval_cosine_f64(&[1.0, 2.0], 2.0 * std::f64::consts::FRAC_PI_3);
    assert!(w.abs() < 1e-12);
    // constant and empty behave
    assert_eq!(eval_cosine_f64(&[3.5], 1.234), 3.5);
    assert_eq!(eval_cosine_f64(&[], 1.234), 0.0);
}

#[test]
fn capacity_cap_enforced() {
    let mut coeffs = vec![BigRational::zero(); 4098];
    coeffs[4097] = rat(1, 1);
    let c = CosinePoly::new(coeffs).unwrap();
    assert!(matches!(cosine_to_chebyshev(&c), Err(Error::Capacity(_))));
}

#[test]
fn round_trip_poly_to_cosine_to_chebyshev() {
    // P = (z^2+z+1)^2 is self-reciprocal of degree 4
    let p = Poly::from_ints(&[1, 2, 3, 2, 1]).unwrap();
    let c = self_reciprocal_to_cosine(&p).unwrap();
    assert_eq!(c.coeffs(), &ints(&[3, 4, 2])[..]);
    let f = cosine_to_chebyshev(&c).unwrap();
    // 3 + 4x + 2(2x^2 - 1) = 1 + 4x + 4x^2 = (1 + 2x)^2
    assert_eq!(f.coeffs(), &ints(&[1, 4, 4])[..]);
}
