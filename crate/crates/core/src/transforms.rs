//! Transformations between the algebraic form P(z), the cosine form
//! T(t) = P(e^it) e^(-int) of a self-reciprocal even-degree P, and the
//! Chebyshev form F(x) with x = cos t, plus the floating evaluation kernels.

use num::bigint::BigInt;
use num::complex::Complex64;
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::poly::{CosinePoly, Poly};

/// Largest degree the exact Chebyshev conversion accepts. Beyond this the
/// floating pipeline is the intended route.
pub const CHEBYSHEV_MAX_DEGREE: usize = 4096;

/// F(x) = sum f_j x^j in the monomial basis of x = cos t, with exact
/// rational coefficients. Satisfies F(cos t) = T(t) for the source cosine
/// polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChebyshevForm {
    f: Vec<BigRational>,
}

impl ChebyshevForm {
    pub fn coeffs(&self) -> &[BigRational] {
        &self.f
    }
}

/// Cosine form of a self-reciprocal even-degree polynomial: with degree 2n,
/// c_0 = a_n and c_j = 2 a_{n+j}, so that P(e^it) e^(-int) = sum c_j cos(jt).
pub fn self_reciprocal_to_cosine(p: &Poly) -> Result<CosinePoly> {
    let deg = p.degree();
    if deg % 2 != 0 {
        return Err(Error::Structure(format!(
            "degree {deg} is odd; the cosine form needs even degree"
        )));
    }
    if !p.is_self_reciprocal() {
        return Err(Error::Structure(
            "coefficients are not mirror-symmetric at the declared degree".into(),
        ));
    }
    let n = deg / 2;
    let a = p.coeffs();
    let mut c = Vec::with_capacity(n + 1);
    c.push(a[n].clone());
    let two = BigRational::from_integer(BigInt::from(2));
    for j in 1..=n {
        c.push(&a[n + j] * &two);
    }
    CosinePoly::new(c)
}

/// Multiply an odd-degree self-reciprocal polynomial by (z + 1), producing
/// an even-degree self-reciprocal polynomial with value at 1 doubled.
pub fn lift_odd_degree(p: &Poly) -> Result<Poly> {
    let deg = p.degree();
    if deg % 2 == 0 {
        return Err(Error::Structure(format!(
            "degree {deg} is even; the lift applies to odd degree"
        )));
    }
    if !p.is_self_reciprocal() {
        return Err(Error::Structure(
            "coefficients are not mirror-symmetric at the declared degree".into(),
        ));
    }
    let a = p.coeffs();
    let mut out = Vec::with_capacity(deg + 2);
    out.push(a[0].clone());
    for j in 1..=deg {
        out.push(&a[j] + &a[j - 1]);
    }
    out.push(a[deg].clone());
    Poly::new(out)
}

/// Exact Chebyshev conversion: F = sum c_j Ch_j with the recurrence
/// Ch_{j+1} = 2x Ch_j - Ch_{j-1} carried in exact arithmetic. Degrees above
/// [`CHEBYSHEV_MAX_DEGREE`] are a capacity error (use the floating path).
pub fn cosine_to_chebyshev(c: &CosinePoly) -> Result<ChebyshevForm> {
    let n = c.degree();
    if n > CHEBYSHEV_MAX_DEGREE {
        return Err(Error::Capacity(format!(
            "degree {n} exceeds the exact-conversion cap {CHEBYSHEV_MAX_DEGREE}"
        )));
    }
    let (ci, den) = c.to_integer_scaled();
    let fi = chebyshev_combine_int(&ci);
    let den = BigRational::from_integer(den);
    let mut f: Vec<BigRational> = fi
        .into_iter()
        .map(|x| BigRational::from_integer(x) / &den)
        .collect();
    if f.is_empty() {
        f.push(BigRational::zero());
    }
    // pad to the declared degree so deg F = deg c as a declared-length form
    while f.len() < n + 1 {
        f.push(BigRational::zero());
    }
    Ok(ChebyshevForm { f })
}

/// Integer-coefficient core of the Chebyshev conversion: given integer
/// cosine coefficients c_0..c_n, returns the monomial coefficients of
/// sum c_j Ch_j(x), trimmed. Two rolling recurrence rows keep memory linear.
pub fn chebyshev_combine_int(c: &[BigInt]) -> Vec<BigInt> {
    let n = match c.iter().rposition(|x| !x.is_zero()) {
        Some(n) => n,
        None => return Vec::new(),
    };
    let mut acc = vec![BigInt::zero(); n + 1];
    acc[0] = c[0].clone();
    if n >= 1 {
        acc[1] = c[1].clone();
    }
    // rows: prev = Ch_{j-1}, cur = Ch_j
    let mut prev = vec![BigInt::one()];
    let mut cur = vec![BigInt::zero(), BigInt::one()];
    for j in 2..=n {
        // next = 2x*cur - prev
        let mut next = vec![BigInt::zero(); j + 1];
        for (i, v) in cur.iter().enumerate() {
            if !v.is_zero() {
                next[i + 1] = v << 1;
            }
        }
        for (i, v) in prev.iter().enumerate() {
            if !v.is_zero() {
                next[i] -= v;
            }
        }
        if !c[j].is_zero() {
            for (i, v) in next.iter().enumerate() {
                if !v.is_zero() {
                    acc[i] += &c[j] * v;
                }
            }
        }
        prev = cur;
        cur = next;
    }
    arith::trim(&mut acc);
    acc
}

/// T(t) = sum c_j cos(jt) by the Clenshaw recurrence in f64.
pub fn eval_cosine(c: &CosinePoly, t: f64) -> f64 {
    let cf: Vec<f64> = c
        .coeffs()
        .iter()
        .map(|x| x.to_f64().unwrap_or(f64::NAN))
        .collect();
    eval_cosine_f64(&cf, t)
}

/// Clenshaw on raw f64 cosine coefficients; the grid counter calls this in
/// a loop and converts coefficients once.
pub fn eval_cosine_f64(cf: &[f64], t: f64) -> f64 {
    let x = t.cos();
    let two_x = 2.0 * x;
    let mut b1 = 0.0f64;
    let mut b2 = 0.0f64;
    for &cj in cf.iter().skip(1).rev() {
        let b0 = cj + two_x * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    cf.first().copied().unwrap_or(0.0) + x * b1 - b2
}

/// P(e^it) by Horner in complex arithmetic.
pub fn eval_unit_circle(p: &Poly, t: f64) -> Complex64 {
    let z = Complex64::new(t.cos(), t.sin());
    let mut acc = Complex64::new(0.0, 0.0);
    for c in p.coeffs().iter().rev() {
        acc = acc * z + Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
    }
    acc
}

/// F(x) for a Chebyshev form, by Horner in f64. Used by tests to spot-check
/// F(cos t) = T(t).
pub fn eval_chebyshev_form(f: &ChebyshevForm, x: f64) -> f64 {
    let mut acc = 0.0f64;
    for c in f.f.iter().rev() {
        acc = acc * x + c.to_f64().unwrap_or(f64::NAN);
    }
    acc
}
