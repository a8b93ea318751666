//! Exact arithmetic kernels on dense integer polynomials.
//!
//! Polynomials live in `Vec<BigInt>`, coefficients in ascending powers.
//! Trailing zeros are tolerated everywhere; [`deg`] returns the true degree.
//! The module provides the pieces the exact zero counter is assembled from:
//! ring arithmetic, exact and pseudo division, a modular gcd with an exact
//! divisibility certificate, Yun square-free decomposition, dyadic points,
//! and a certified floating sign evaluator with exact fallback.
//!
//! This is a low-level module. It is public so the kernels can be exercised
//! directly by oracle tests, but the types here are deliberately bare.

use num::bigint::BigInt;
use num::{Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Degree, or `None` for the zero polynomial.
pub fn deg(f: &[BigInt]) -> Option<usize> {
    f.iter().rposition(|c| !c.is_zero())
}

/// Drop trailing zero coefficients in place.
pub fn trim(f: &mut Vec<BigInt>) {
    while f.last().map_or(false, |c| c.is_zero()) {
        f.pop();
    }
}

pub fn is_zero_poly(f: &[BigInt]) -> bool {
    deg(f).is_none()
}

/// Leading coefficient; zero polynomial yields 0.
pub fn leading(f: &[BigInt]) -> BigInt {
    match deg(f) {
        Some(d) => f[d].clone(),
        None => BigInt::zero(),
    }
}

pub fn add(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut c = BigInt::zero();
        if i < a.len() {
            c += &a[i];
        }
        if i < b.len() {
            c += &b[i];
        }
        out.push(c);
    }
    trim(&mut out);
    out
}

pub fn sub(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut c = BigInt::zero();
        if i < a.len() {
            c += &a[i];
        }
        if i < b.len() {
            c -= &b[i];
        }
        out.push(c);
    }
    trim(&mut out);
    out
}

pub fn neg(a: &[BigInt]) -> Vec<BigInt> {
    a.iter().map(|c| -c).collect()
}

/// Schoolbook product. Degrees in this crate stay in the low thousands,
/// where schoolbook is fine.
pub fn mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let (da, db) = match (deg(a), deg(b)) {
        (Some(x), Some(y)) => (x, y),
        _ => return Vec::new(),
    };
    let mut out = vec![BigInt::zero(); da + db + 1];
    for i in 0..=da {
        if a[i].is_zero() {
            continue;
        }
        for j in 0..=db {
            if !b[j].is_zero() {
                out[i + j] += &a[i] * &b[j];
            }
        }
    }
    out
}

pub fn scale(a: &[BigInt], s: &BigInt) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = a.iter().map(|c| c * s).collect();
    trim(&mut out);
    out
}

pub fn derivative(f: &[BigInt]) -> Vec<BigInt> {
    if f.len() <= 1 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(f.len() - 1);
    for (j, c) in f.iter().enumerate().skip(1) {
        out.push(c * BigInt::from(j));
    }
    trim(&mut out);
    out
}

pub fn eval_bigint(f: &[BigInt], x: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in f.iter().rev() {
        acc = acc * x + c;
    }
    acc
}

/// gcd of all coefficients, nonnegative; zero polynomial has content 0.
pub fn content(f: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for c in f {
        if !c.is_zero() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
    }
    g
}

/// Divide out the (positive) content. The sign of the polynomial is kept,
/// so this is safe inside sign-sensitive chains. Zero maps to empty.
pub fn primitive(f: &[BigInt]) -> Vec<BigInt> {
    let c = content(f);
    if c.is_zero() {
        return Vec::new();
    }
    let mut out: Vec<BigInt> = f.iter().map(|x| x / &c).collect();
    trim(&mut out);
    out
}

/// Exact quotient `f / g` in Z[x]; `None` when g does not divide f over the
/// integers (including the case deg f < deg g with f nonzero).
pub fn exact_div(f: &[BigInt], g: &[BigInt]) -> Option<Vec<BigInt>> {
    let dg = deg(g)?;
    let df = match deg(f) {
        Some(d) => d,
        None => return Some(Vec::new()),
    };
    if df < dg {
        return None;
    }
    let lg = &g[dg];
    let mut rem: Vec<BigInt> = f[..=df].to_vec();
    let mut q = vec![BigInt::zero(); df - dg + 1];
    for k in (0..=df - dg).rev() {
        let lead = std::mem::take(&mut rem[dg + k]);
        if lead.is_zero() {
            continue;
        }
        let (qk, r) = lead.div_rem(lg);
        if !r.is_zero() {
            return None;
        }
        for j in 0..dg {
            if !g[j].is_zero() {
                rem[j + k] -= &qk * &g[j];
            }
        }
        q[k] = qk;
    }
    if rem.iter().any(|c| !c.is_zero()) {
        return None;
    }
    trim(&mut q);
    Some(q)
}

/// Pseudo-remainder of f by g, scaled by an even power of lc(g) when needed
/// so the scaling factor is always positive. The result therefore has the
/// same sign as the true rational remainder at every point, which is what
/// sign-variation chains require. Result is not reduced; callers usually
/// take [`primitive`] of it.
pub fn prem_keep_sign(f: &[BigInt], g: &[BigInt]) -> Vec<BigInt> {
    let dg = deg(g).expect("prem: zero divisor");
    let df = match deg(f) {
        Some(d) => d,
        None => return Vec::new(),
    };
    if df < dg {
        return f.to_vec();
    }
    let lg = g[dg].clone();
    let mut r: Vec<BigInt> = f[..=df].to_vec();
    let mut steps = df - dg + 1;
    while let Some(dr) = deg(&r) {
        if dr < dg {
            break;
        }
        let lead = r[dr].clone();
        for c in r.iter_mut() {
            *c *= &lg;
        }
        for j in 0..=dg {
            if !g[j].is_zero() {
                r[j + dr - dg] -= &lead * &g[j];
            }
        }
        trim(&mut r);
        steps -= 1;
    }
    // bring total scaling to lc(g)^(df-dg+1), then square it if that power
    // is odd and lc(g) is negative
    if steps > 0 {
        let fix = num::pow::pow(lg.clone(), steps);
        for c in r.iter_mut() {
            *c *= &fix;
        }
    }
    if lg.is_negative() && (df - dg + 1) % 2 == 1 {
        for c in r.iter_mut() {
            *c *= &lg;
        }
    }
    trim(&mut r);
    r
}

// --- modular machinery -----------------------------------------------------

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn powmod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b, m);
        }
        b = mulmod(b, b, m);
        e >>= 1;
    }
    acc
}

fn invmod(a: u64, p: u64) -> u64 {
    // p prime
    powmod(a, p - 2, p)
}

/// Deterministic Miller-Rabin over the full u64 range.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes just below 2^62, for modular images with room to CRT in u64/u128.
struct PrimeStream {
    next: u64,
}

impl PrimeStream {
    fn new() -> Self {
        PrimeStream {
            next: (1u64 << 62) - 1,
        }
    }
}

impl Iterator for PrimeStream {
    type Item = u64;
    fn next(&mut self) -> Option<u64> {
        loop {
            let c = self.next;
            self.next -= 2;
            if is_prime_u64(c) {
                return Some(c);
            }
        }
    }
}

fn reduce_mod(f: &[BigInt], p: u64) -> Vec<u64> {
    let bp = BigInt::from(p);
    let mut out = Vec::with_capacity(f.len());
    for c in f {
        let r = c.mod_floor(&bp);
        out.push(r.to_u64().expect("residue fits u64"));
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

/// Monic gcd in GF(p)[x], dense Euclid. Inputs need not be normalized.
fn gcd_mod_p(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut r0: Vec<u64> = a.to_vec();
    let mut r1: Vec<u64> = b.to_vec();
    let strip = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    strip(&mut r0);
    strip(&mut r1);
    while !r1.is_empty() {
        // r0 mod r1
        let inv = invmod(*r1.last().unwrap(), p);
        while r0.len() >= r1.len() && !r0.is_empty() {
            let k = r0.len() - r1.len();
            let q = mulmod(*r0.last().unwrap(), inv, p);
            if q != 0 {
                for (j, &c) in r1.iter().enumerate() {
                    let t = mulmod(q, c, p);
                    let idx = j + k;
                    r0[idx] = (r0[idx] + p - t) % p;
                }
            }
            strip(&mut r0);
            if r0.len() < r1.len() {
                break;
            }
        }
        std::mem::swap(&mut r0, &mut r1);
    }
    if r0.is_empty() {
        return r0;
    }
    let inv = invmod(*r0.last().unwrap(), p);
    for c in r0.iter_mut() {
        *c = mulmod(*c, inv, p);
    }
    r0
}

fn crt_symmetric(res: &BigInt, m: &BigInt, r_new: u64, p: u64) -> BigInt {
    // combine x = res (mod m), x = r_new (mod p), symmetric representative
    let bp = BigInt::from(p);
    let m_mod_p = m
        .mod_floor(&bp)
        .to_u64()
        .expect("modulus residue fits u64");
    let res_mod_p = res.mod_floor(&bp).to_u64().expect("residue fits u64");
    let diff = (r_new + p - res_mod_p) % p;
    let t = mulmod(diff, invmod(m_mod_p, p), p);
    let combined = res + m * BigInt::from(t);
    let m_new = m * &bp;
    let half = &m_new >> 1;
    if combined > half {
        combined - m_new
    } else {
        combined
    }
}

/// Primitive gcd of a and b in Z[x], leading coefficient positive.
///
/// Contents are stripped first, so this is the gcd "up to rational
/// constants": exactly what root-multiplicity work needs. Computed from
/// modular images (degree-minimal filtering, CRT lift) and certified by
/// exact trial division before being returned, so unlucky primes can only
/// cost time, never correctness.
pub fn gcd_primitive(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let pa = primitive(a);
    let pb = primitive(b);
    if pa.is_empty() {
        return normalize_lc_positive(pb);
    }
    if pb.is_empty() {
        return normalize_lc_positive(pa);
    }
    let (hi, lo) = if deg(&pa) >= deg(&pb) {
        (pa, pb)
    } else {
        (pb, pa)
    };
    if deg(&lo) == Some(0) {
        return vec![BigInt::one()];
    }
    let gamma = leading(&hi).abs().gcd(&leading(&lo).abs());

    let mut best_deg = usize::MAX;
    let mut lifted: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut stable = false;

    for p in PrimeStream::new() {
        let bp = BigInt::from(p);
        if (leading(&hi).mod_floor(&bp)).is_zero() || (leading(&lo).mod_floor(&bp)).is_zero() {
            continue;
        }
        let ga = gcd_mod_p(&reduce_mod(&hi, p), &reduce_mod(&lo, p), p);
        let d = ga.len() - 1;
        if d == 0 {
            // a single clean prime with coprime images proves coprimality
            return vec![BigInt::one()];
        }
        if d > best_deg {
            continue; // unlucky prime
        }
        let gm = gamma.mod_floor(&bp).to_u64().expect("fits u64");
        let image: Vec<u64> = ga.iter().map(|&c| mulmod(c, gm, p)).collect();
        if d < best_deg {
            best_deg = d;
            modulus = bp.clone();
            let half = &modulus >> 1;
            lifted = image
                .iter()
                .map(|&c| {
                    let v = BigInt::from(c);
                    if v > half {
                        v - &modulus
                    } else {
                        v
                    }
                })
                .collect();
            stable = false;
            continue;
        }
        // same degree: CRT and test for stabilization
        let before = lifted.clone();
        for (i, &c) in image.iter().enumerate() {
            lifted[i] = crt_symmetric(&lifted[i], &modulus, c, p);
        }
        modulus *= &bp;
        if lifted == before {
            if stable {
                // two stable rounds in a row: try to certify
                let cand = normalize_lc_positive(primitive(&lifted));
                if exact_div(&hi, &cand).is_some() && exact_div(&lo, &cand).is_some() {
                    return cand;
                }
                stable = false;
            } else {
                stable = true;
            }
        } else {
            stable = false;
        }
    }
    unreachable!("prime stream is unbounded")
}

fn normalize_lc_positive(mut f: Vec<BigInt>) -> Vec<BigInt> {
    if leading(&f).is_negative() {
        for c in f.iter_mut() {
            *c = -&*c;
        }
    }
    f
}

/// Yun square-free decomposition of a nonconstant integer polynomial.
///
/// Returns pairwise-coprime primitive square-free factors with their
/// multiplicities, multiplicity ascending, omitting trivial (constant)
/// factors. The product of `f_i^(m_i)` equals the input up to a rational
/// constant.
pub fn squarefree_decomposition(f: &[BigInt]) -> Result<Vec<(Vec<BigInt>, usize)>> {
    let d = deg(f).ok_or_else(|| Error::DegenerateInput("zero polynomial".into()))?;
    if d == 0 {
        return Ok(Vec::new());
    }
    let f = normalize_lc_positive(primitive(f));
    let fp = derivative(&f);
    let u = gcd_primitive(&f, &fp);
    let mut v = exact_div(&f, &u).expect("gcd divides f");
    let mut w = exact_div(&fp, &u).expect("gcd divides f'");
    let mut out = Vec::new();
    let mut m = 1usize;
    while deg(&v) != Some(0) {
        let vd = derivative(&v);
        let h = sub(&w, &vd);
        let a = gcd_primitive(&v, &h);
        if deg(&a).map_or(false, |d| d > 0) {
            out.push((normalize_lc_positive(a.clone()), m));
        }
        v = exact_div(&v, &a).expect("factor divides v");
        w = exact_div(&h, &a).expect("factor divides w");
        m += 1;
    }
    Ok(out)
}

// --- dyadic points and certified sign evaluation ----------------------------

/// Largest denominator exponent the dyadic machinery will produce.
/// Chosen so numerators stay comfortably inside i128 through one extra
/// halving plus slack.
pub const DYADIC_MAX_K: u32 = 120;

/// The rational num / 2^k. Denominator exponents are capped at
/// [`DYADIC_MAX_K`]; construction past the cap is a capacity error.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dyadic {
    pub num: i128,
    pub k: u32,
}

impl Dyadic {
    pub fn new(num: i128, k: u32) -> Result<Dyadic> {
        if k > DYADIC_MAX_K {
            return Err(Error::Capacity(format!(
                "dyadic denominator exponent {k} exceeds cap {DYADIC_MAX_K}"
            )));
        }
        Ok(Dyadic { num, k })
    }

    pub fn from_int(n: i64) -> Dyadic {
        Dyadic {
            num: n as i128,
            k: 0,
        }
    }

    /// Reduce so num is odd or zero.
    pub fn normalized(self) -> Dyadic {
        let mut d = self;
        while d.k > 0 && d.num % 2 == 0 {
            d.num /= 2;
            d.k -= 1;
        }
        if d.num == 0 {
            d.k = 0;
        }
        d
    }

    pub fn midpoint(a: Dyadic, b: Dyadic) -> Result<Dyadic> {
        let k = a.k.max(b.k);
        let an = a.num << (k - a.k);
        let bn = b.num << (k - b.k);
        Dyadic::new(an + bn, k + 1).map(Dyadic::normalized)
    }

    pub fn to_f64(self) -> f64 {
        // Exact only when num fits in 53 bits; callers that need certainty
        // use to_f64_exact.
        (self.num as f64) * (2.0f64).powi(-(self.k as i32))
    }

    /// f64 value when the conversion is exact, else None.
    pub fn to_f64_exact(self) -> Option<f64> {
        if self.num.unsigned_abs() <= (1u128 << 53) {
            Some(self.to_f64())
        } else {
            None
        }
    }

    pub fn width_to(self, other: Dyadic) -> f64 {
        (other.to_f64() - self.to_f64()).abs()
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let k = self.k.max(other.k);
        let a = self.num << (k - self.k);
        let b = other.num << (k - other.k);
        a.cmp(&b)
    }
}

/// Exact sign of f at num/2^k: sign of sum c_j num^j 2^(k(d-j)).
pub fn sign_at_dyadic_exact(f: &[BigInt], x: Dyadic) -> i8 {
    let d = match deg(f) {
        Some(d) => d,
        None => return 0,
    };
    let num = BigInt::from(x.num);
    let mut acc = f[d].clone();
    for j in (0..d).rev() {
        acc *= &num;
        if !f[j].is_zero() {
            acc += &f[j] << (x.k as usize * (d - j));
        }
    }
    match acc.sign() {
        num::bigint::Sign::Minus => -1,
        num::bigint::Sign::NoSign => 0,
        num::bigint::Sign::Plus => 1,
    }
}

/// Certified sign evaluation on [-1, 1]: a floating filter backed by exact
/// arithmetic. The filter scales all coefficients by a common power of two,
/// runs Horner in f64, and accepts the sign only when the value clears a
/// running error bound valid for |x| <= 1; otherwise the exact path decides.
pub struct SignEval {
    exact: Vec<BigInt>,
    approx: Vec<f64>,
    degree: usize,
}

impl SignEval {
    pub fn new(f: &[BigInt]) -> SignEval {
        let d = deg(f).map_or(0, |d| d);
        let coeffs = &f[..f.len().min(d + 1)];
        let max_bits = coeffs.iter().map(|c| c.bits()).max().unwrap_or(0);
        // keep scaled magnitudes below ~2^900 so sums cannot overflow f64
        let shift = max_bits.saturating_sub(900);
        let approx: Vec<f64> = coeffs
            .iter()
            .map(|c| {
                let b = c.bits();
                if b <= 53 {
                    c.to_f64().unwrap() * (2.0f64).powi(-(shift as i32))
                } else {
                    let top = c >> (b - 53) as usize;
                    // value = top * 2^(b-53-shift) with relative error <= 2^-52
                    top.to_f64().unwrap() * (2.0f64).powi((b as i64 - 53 - shift as i64) as i32)
                }
            })
            .collect();
        SignEval {
            exact: f.to_vec(),
            approx,
            degree: d,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Sign at a dyadic point in [-1, 1]. Never wrong: uncertain floating
    /// results fall through to exact evaluation.
    pub fn sign_at(&self, x: Dyadic) -> i8 {
        if let Some(xf) = x.to_f64_exact() {
            debug_assert!(xf.abs() <= 1.0 + 1e-15);
            let mut s = 0.0f64;
            let mut a = 0.0f64; // Horner on |coeffs| at |x|, bounds p~(|x|)
            let ax = xf.abs();
            for c in self.approx.iter().rev() {
                s = s * xf + c;
                a = a * ax + c.abs();
            }
            // gamma_{2d} for Horner plus 2^-51 slack for coefficient rounding
            let d = self.degree as f64;
            let bound = a * ((2.0 * d + 2.0) * f64::EPSILON + 2.0f64.powi(-51)) + 1e-300;
            if s.abs() > bound {
                return if s > 0.0 { 1 } else { -1 };
            }
        }
        sign_at_dyadic_exact(&self.exact, x)
    }
}

// --- small prime utilities ---------------------------------------------------

/// Trial-division primality for moderate n. Intended range is n <= 10^7,
/// well past anything the construction code asks for.
pub fn is_prime_trial(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// b^e mod m for u64 inputs, exposed for the small-prime callers.
pub fn powmod_u64(b: u64, e: u64, m: u64) -> u64 {
    powmod(b, e, m)
}
