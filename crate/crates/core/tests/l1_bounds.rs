//! Quadrature values against closed forms and a brute-force Simpson oracle,
//! plus the coefficient lower bounds and zero-count upper bounds that the
//! verification reports wire together.

use std::f64::consts::PI;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};
use unizeros::families::LittlewoodFamily;
use unizeros::l1::{
    antiderivative, cos_lower_rhs, exp_lower_rhs, l1_norm, l1_norm_sparse, period_integral,
    verify_l1_lower, verify_l1_upper, windowed_l1, zero_count_upper, CosineSparse,
};
use unizeros::transforms::{eval_cosine, self_reciprocal_to_cosine};
use unizeros::{CosinePoly, Error, Poly};

fn mix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Composite Simpson with 2*panels points, the independent cross-check for
/// the adaptive quadrature.
fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panels: usize) -> f64 {
    let n = panels * 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + h * i as f64);
    }
    s * h / 3.0
}

#[test]
fn l1_of_pure_cosine_is_4() {
    let c = CosinePoly::from_ints(&[0, 1]).unwrap();
    let q = l1_norm(&c).unwrap();
    assert!((q.value - 4.0).abs() < 1e-9, "got {}", q.value);
    assert!(q.error_bound >= 0.0 && q.subintervals >= 1);
}

#[test]
fn l1_of_constant_is_2pi() {
    let c = CosinePoly::from_ints(&[1]).unwrap();
    let q = l1_norm(&c).unwrap();
    assert!((q.value - 2.0 * PI).abs() < 1e-9, "got {}", q.value);
}

#[test]
fn l1_matches_closed_form_and_simpson_oracle() {
    // T = 1 + 2cos t changes sign at +-2pi/3; integrating the pieces gives
    // 2pi/3 + 4 sqrt 3.
    let c = CosinePoly::from_ints(&[1, 2]).unwrap();
    let q = l1_norm(&c).unwrap();
    let closed = 2.0 * PI / 3.0 + 4.0 * 3.0f64.sqrt();
    assert!((q.value - closed).abs() < 1e-9, "got {}", q.value);

    let oracle = simpson(&|t: f64| (1.0 + 2.0 * t.cos()).abs(), -PI, PI, 500_000);
    assert!((q.value - oracle).abs() < 1e-7, "oracle {oracle} vs {}", q.value);
}

#[test]
fn l1_error_bound_stays_small_for_large_degree() {
    // All-ones cosine form of degree 1024: a worst case for panel count,
    // with about 2n sign changes over the period.
    let c = CosinePoly::new(vec![rat(1); 1025]).unwrap();
    let q = l1_norm(&c).unwrap();
    assert!(q.error_bound < 1e-8, "error bound {}", q.error_bound);
    assert!(q.value > 0.0 && q.subintervals >= 1);
}

#[test]
fn l1_rejects_identically_zero_input() {
    let c = CosinePoly::from_ints(&[0, 0, 0]).unwrap();
    assert!(matches!(l1_norm(&c), Err(Error::DegenerateInput(_))));
    let s = CosineSparse::new(vec![(3, 0.0)]).unwrap();
    assert!(matches!(l1_norm_sparse(&s), Err(Error::DegenerateInput(_))));
}

#[test]
fn sparse_construction_validates_and_evaluates() {
    assert!(matches!(
        CosineSparse::new(vec![(2, 1.0), (2, -1.0)]),
        Err(Error::Structure(_))
    ));
    assert!(matches!(
        CosineSparse::new(vec![(4, 1.0), (1, 2.0)]),
        Err(Error::Structure(_))
    ));
    assert!(matches!(
        CosineSparse::new(vec![(0, f64::NAN)]),
        Err(Error::Domain(_))
    ));

    let c = CosinePoly::from_ints(&[1, 0, -2]).unwrap();
    let s = CosineSparse::from_cosine_poly(&c);
    assert_eq!(s.terms(), &[(0, 1.0), (2, -2.0)]);
    assert_eq!(s.max_freq(), 2);
    assert_eq!(s.max_amp(), 2.0);
    for k in 0..32 {
        let t = -PI + 2.0 * PI * k as f64 / 32.0;
        assert!((s.eval(t) - eval_cosine(&c, t)).abs() < 1e-12);
    }

    let zero = CosineSparse::from_cosine_poly(&CosinePoly::from_ints(&[0]).unwrap());
    assert!(zero.is_zero() && zero.max_freq() == 0 && zero.max_amp() == 0.0);
}

#[test]
fn sparse_l1_rejects_huge_frequencies() {
    let s = CosineSparse::new(vec![(1 << 17, 1.0)]).unwrap();
    assert!(matches!(l1_norm_sparse(&s), Err(Error::Capacity(_))));
}

#[test]
fn sparse_l1_agrees_with_dense_on_shared_inputs() {
    let mut seed = 0x11a2_b3c4u64;
    for _ in 0..25 {
        let deg = 1 + (mix(&mut seed) % 10) as usize;
        let coeffs: Vec<BigRational> = (0..=deg)
            .map(|_| rat((mix(&mut seed) % 7) as i64 - 3))
            .collect();
        let c = match CosinePoly::new(coeffs) {
            Ok(c) if !c.is_zero() => c,
            _ => continue,
        };
        let dense = l1_norm(&c).unwrap();
        let sparse = l1_norm_sparse(&CosineSparse::from_cosine_poly(&c)).unwrap();
        assert!(
            (dense.value - sparse.value).abs() < 1e-8,
            "dense {} sparse {} for {c:?}",
            dense.value,
            sparse.value
        );
    }
}

#[test]
fn exp_lower_rhs_frozen_values() {
    // cos t expands to two exponentials of modulus 1/2.
    let q = CosineSparse::new(vec![(1, 1.0)]).unwrap();
    assert!((exp_lower_rhs(&q) - 1.0 / 40.0).abs() < 1e-15);

    let one = CosineSparse::new(vec![(0, 1.0)]).unwrap();
    assert!((exp_lower_rhs(&one) - 1.0 / 30.0).abs() < 1e-15);

    // 1 + cos t: moduli 1/2, 1, 1/2 in ascending frequency order.
    let mixed = CosineSparse::new(vec![(0, 1.0), (1, 1.0)]).unwrap();
    let expect = (0.5 / 1.0 + 1.0 / 2.0 + 0.5 / 3.0) / 30.0;
    assert!((exp_lower_rhs(&mixed) - expect).abs() < 1e-15);
}

#[test]
fn cos_lower_rhs_frozen_values() {
    let single = CosineSparse::new(vec![(0, 1.0)]).unwrap();
    assert!((cos_lower_rhs(&single) - 1.0 / 60.0).abs() < 1e-15);

    let pair = CosineSparse::new(vec![(0, 1.0), (1, 1.0)]).unwrap();
    assert!((cos_lower_rhs(&pair) - 1.0 / 40.0).abs() < 1e-15);

    let five = CosineSparse::new((0..5).map(|j| (j, 1.0)).collect()).unwrap();
    let harmonic = 1.0 + 0.5 + 1.0 / 3.0 + 0.25 + 0.2;
    assert!((cos_lower_rhs(&five) - harmonic / 60.0).abs() < 1e-15);
}

#[test]
fn upper_bound_frozen_values() {
    // Single cosine term: empty reciprocal sum, K = 3 gives 6 pi.
    let q = CosineSparse::new(vec![(1, 1.0)]).unwrap();
    let (sharp, log) = zero_count_upper(&q, 3).unwrap();
    assert!((sharp - 6.0 * PI).abs() < 1e-12);
    assert!((log - 6.0 * 5.0).abs() < 1e-12);

    // 1 + cos t with K = 2: 4(pi + 1).
    let mixed = CosineSparse::new(vec![(0, 1.0), (1, 1.0)]).unwrap();
    let (sharp, _) = zero_count_upper(&mixed, 2).unwrap();
    assert!((sharp - 4.0 * (PI + 1.0)).abs() < 1e-12);

    assert!(matches!(zero_count_upper(&q, 0), Err(Error::Range(_))));
}

#[test]
fn sharp_bound_never_exceeds_log_bound() {
    // Consecutive frequencies are the worst case for the reciprocal sum.
    for m in 1..=64u64 {
        let terms: Vec<(u64, f64)> = (0..=m).map(|j| (j, 1.0)).collect();
        let q = CosineSparse::new(terms).unwrap();
        let (sharp, log) = zero_count_upper(&q, 2).unwrap();
        assert!(sharp <= log, "m = {m}: sharp {sharp} > log {log}");
    }
}

#[test]
fn lower_checks_pass_on_simple_inputs() {
    let q = CosineSparse::new(vec![(1, 1.0)]).unwrap();
    let reports = verify_l1_lower(&q, "cos-t").unwrap();
    assert_eq!(reports.len(), 2);
    assert_eq!(reports[0].check, "l1-lower-exp");
    assert_eq!(reports[1].check, "l1-lower-cos");
    for r in &reports {
        assert!(r.pass, "{} failed: lhs {} rhs {}", r.check, r.lhs, r.rhs);
        assert!((r.margin - (r.lhs - r.rhs)).abs() < 1e-12);
        assert_eq!(r.input_id, "cos-t");
    }
    assert!((reports[0].lhs - 4.0).abs() < 1e-9);
    assert!((reports[0].rhs - 1.0 / 40.0).abs() < 1e-15);

    // All-ones cosine form of degree 5, the classic positive kernel shape.
    let dense = CosinePoly::from_ints(&[1, 1, 1, 1, 1, 1]).unwrap();
    let sparse = CosineSparse::from_cosine_poly(&dense);
    for r in verify_l1_lower(&sparse, "kernel-5").unwrap() {
        assert!(r.pass, "{} failed on kernel-5", r.check);
    }
}

#[test]
fn random_sparse_sums_pass_lower_checks() {
    let mut seed = 0x10e7_3a5fu64;
    for case in 0..150 {
        let m = 1 + (mix(&mut seed) % 32) as usize;
        let mut freqs: Vec<u64> = Vec::with_capacity(m);
        let mut next = mix(&mut seed) % 3;
        for _ in 0..m {
            freqs.push(next);
            next += 1 + mix(&mut seed) % 8;
        }
        let amps = [-2.0, -1.0, 1.0, 2.0];
        let terms: Vec<(u64, f64)> = freqs
            .into_iter()
            .map(|f| (f, amps[(mix(&mut seed) % 4) as usize]))
            .collect();
        let q = CosineSparse::new(terms).unwrap();
        for r in verify_l1_lower(&q, &format!("rand-{case}")).unwrap() {
            assert!(
                r.pass,
                "case {case}: {} lhs {} rhs {} for {:?}",
                r.check,
                r.lhs,
                r.rhs,
                q.terms()
            );
        }
    }
}

#[test]
fn random_reciprocal_forms_pass_upper_check() {
    let mut seed = 0xabba_0110u64;
    for case in 0..60 {
        let n = 2 * (2 + (mix(&mut seed) % 15) as usize); // even degree 4..32
        let fam = LittlewoodFamily::self_reciprocal(n).unwrap();
        let idx = (mix(&mut seed) as u128) % fam.population();
        let p = fam.at(idx).unwrap();
        let c = self_reciprocal_to_cosine(&p).unwrap();
        let q = CosineSparse::from_cosine_poly(&c);
        let r = verify_l1_upper(&q, None, &format!("srl-{case}")).unwrap();
        assert!(
            r.pass,
            "case {case} deg {n} idx {idx}: lhs {} k {} sharp {}",
            r.lhs, r.k_used, r.bound_sharp
        );
        assert!(r.k_used >= 1);
        if q.terms().len() >= 2 {
            assert!(r.bound_sharp <= r.bound_log);
        }
    }
}

#[test]
fn upper_check_frozen_examples() {
    let q = CosineSparse::new(vec![(1, 1.0)]).unwrap();
    let r = verify_l1_upper(&q, None, "cos-t").unwrap();
    // cos t has 2 distinct zeros, so K = 3 and the bound is 6 pi.
    assert_eq!(r.k_used, 3);
    assert!((r.bound_sharp - 6.0 * PI).abs() < 1e-9);
    assert!((r.lhs - 4.0).abs() < 1e-9);
    assert!(r.pass);
    assert_eq!(r.check, "l1-upper-zeros");

    let q2 = CosineSparse::new(vec![(0, 1.0), (1, 2.0)]).unwrap();
    let r2 = verify_l1_upper(&q2, None, "one-plus-2cos").unwrap();
    assert_eq!(r2.k_used, 3);
    assert!(r2.pass);

    // Forcing K overrides the counted value.
    let forced = verify_l1_upper(&q, Some(7), "cos-t-forced").unwrap();
    assert_eq!(forced.k_used, 7);
    assert!((forced.bound_sharp - 14.0 * PI).abs() < 1e-9);
}

#[test]
fn period_integral_is_2pi_times_mean_and_below_l1() {
    let mut seed = 0x0f0f_1234u64;
    let mut tested = 0;
    while tested < 200 {
        let deg = (mix(&mut seed) % 25) as usize;
        let coeffs: Vec<BigRational> = (0..=deg)
            .map(|_| rat((mix(&mut seed) % 7) as i64 - 3))
            .collect();
        let c = CosinePoly::new(coeffs).unwrap();
        let c0 = c.coeffs()[0].to_f64().unwrap();
        let signed = period_integral(&c);
        assert!(
            (signed.value - 2.0 * PI * c0).abs() < 1e-9,
            "signed integral {} vs 2 pi c0 {}",
            signed.value,
            2.0 * PI * c0
        );
        if !c.is_zero() {
            let q = l1_norm(&c).unwrap();
            assert!(
                q.value + 1e-9 >= signed.value.abs(),
                "l1 {} below |integral| {}",
                q.value,
                signed.value.abs()
            );
        }
        tested += 1;
    }
}

#[test]
fn antiderivative_frozen_forms() {
    let lin = antiderivative(&CosinePoly::from_ints(&[1]).unwrap());
    assert!(lin.linear_coeff().is_one());
    assert!(lin.sine_coeffs().is_empty());
    assert!((lin.eval(PI) - PI).abs() < 1e-15);

    let sine = antiderivative(&CosinePoly::from_ints(&[0, 1]).unwrap());
    assert!(sine.linear_coeff().is_zero());
    assert_eq!(sine.sine_coeffs(), &[rat(1)]);
    for k in 0..16 {
        let x = -2.0 + 0.25 * k as f64;
        assert!((sine.eval(x) - x.sin()).abs() < 1e-15);
    }

    // c_j / j stays exact: coefficient 1 at frequency 3 gives 1/3.
    let third = antiderivative(&CosinePoly::from_ints(&[0, 0, 0, 1]).unwrap());
    let want = BigRational::new(BigInt::from(1), BigInt::from(3));
    assert_eq!(third.sine_coeffs()[2], want);
}

#[test]
fn antiderivative_derivative_recovers_the_sum() {
    let mut seed = 0xdead_beefu64;
    let coeffs: Vec<BigRational> = (0..=10)
        .map(|_| rat((mix(&mut seed) % 5) as i64 - 2))
        .collect();
    let c = CosinePoly::new(coeffs).unwrap();
    let r = antiderivative(&c);
    let h = 1e-6;
    for _ in 0..64 {
        let x = -PI + 2.0 * PI * (mix(&mut seed) % 10_000) as f64 / 10_000.0;
        let diff = (r.eval(x + h) - r.eval(x - h)) / (2.0 * h);
        assert!(
            (diff - eval_cosine(&c, x)).abs() < 1e-8,
            "derivative mismatch at {x}"
        );
    }
}

#[test]
fn antiderivative_matches_quadrature_at_degree_128() {
    let mut seed = 0x1288_0001u64;
    let coeffs: Vec<BigRational> = (0..=128)
        .map(|_| rat((mix(&mut seed) % 5) as i64 - 2))
        .collect();
    let c = CosinePoly::new(coeffs).unwrap();
    let r = antiderivative(&c);
    let (a, b) = (-1.0, 2.0);
    let oracle = simpson(&|t| eval_cosine(&c, t), a, b, 200_000);
    assert!(
        (r.eval(b) - r.eval(a) - oracle).abs() < 1e-8,
        "closed form {} vs quadrature {}",
        r.eval(b) - r.eval(a),
        oracle
    );
}

#[test]
fn all_ones_antiderivative_stays_bounded_near_zero() {
    // For the all-ones cosine forms the sine series telescopes into the
    // bounded sawtooth partial sums, so the quarter-radius sup must not
    // grow with the degree.
    let max_on_window = |h: usize| {
        let c = CosinePoly::new(vec![rat(1); h + 1]).unwrap();
        let r = antiderivative(&c);
        let mut m = 0.0f64;
        for k in 0..=100 {
            let x = -0.25 + 0.5 * k as f64 / 100.0;
            m = m.max(r.eval(x).abs());
        }
        m
    };
    let base = max_on_window(2);
    let mut worst = 0.0f64;
    for h in 2..=512 {
        worst = worst.max(max_on_window(h));
    }
    assert!(
        worst <= 10.0 * base,
        "sup grew to {worst} against base {base}"
    );
}

#[test]
fn windowed_l1_frozen_and_monotone() {
    // |P| = 1 for the constant, so the window integral is its length.
    let one = Poly::from_ints(&[1]).unwrap();
    for delta in [0.1, 1.0, 3.0] {
        let q = windowed_l1(&one, delta).unwrap();
        assert!((q.value - 2.0 * delta).abs() < 1e-10);
    }

    let p = Poly::from_ints(&[1, 1, 1]).unwrap();
    let q = windowed_l1(&p, PI / 2.0).unwrap();
    let oracle = simpson(
        &|t: f64| {
            let (s, c) = t.sin_cos();
            let re = 1.0 + c + (2.0 * t).cos();
            let im = s + (2.0 * t).sin();
            re.hypot(im)
        },
        -PI / 2.0,
        PI / 2.0,
        50_000,
    );
    assert!((q.value - oracle).abs() < 1e-8, "{} vs {oracle}", q.value);

    assert!(matches!(windowed_l1(&p, 0.0), Err(Error::Range(_))));
    assert!(matches!(windowed_l1(&p, PI), Err(Error::Range(_))));
    assert!(matches!(windowed_l1(&p, -1.0), Err(Error::Range(_))));

    let mut seed = 0x77ab_cdefu64;
    for _ in 0..20 {
        let deg = 1 + (mix(&mut seed) % 8) as usize;
        let coeffs: Vec<BigRational> = (0..=deg)
            .map(|_| rat((mix(&mut seed) % 5) as i64 - 2))
            .collect();
        let p = Poly::new(coeffs).unwrap();
        let mut prev = 0.0;
        for delta in [0.3, 0.8, 1.5, 2.9] {
            let q = windowed_l1(&p, delta).unwrap();
            assert!(q.value + 1e-12 >= prev, "shrank at delta {delta} for {p:?}");
            prev = q.value;
        }
    }
}

#[test]
fn reports_serialize_as_json_lines() {
    let q = CosineSparse::new(vec![(1, 1.0)]).unwrap();
    let lower = verify_l1_lower(&q, "id-1").unwrap();
    let line = serde_json::to_string(&lower[0]).unwrap();
    let v: serde_json::Value = serde_json::from_str(&line).unwrap();
    assert_eq!(v["check"], "l1-lower-exp");
    assert_eq!(v["pass"], true);
    assert_eq!(v["input_id"], "id-1");
    assert!(v["lhs"].is_number() && v["rhs"].is_number());

    let upper = verify_l1_upper(&q, None, "id-2").unwrap();
    let v: serde_json::Value =
        serde_json::from_str(&serde_json::to_string(&upper).unwrap()).unwrap();
    assert_eq!(v["check"], "l1-upper-zeros");
    assert_eq!(v["k_used"], 3);
    assert!(v["bound_sharp"].is_number() && v["bound_log"].is_number());
}
