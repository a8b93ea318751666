//! Constructions of the structured coefficient families the scans study:
//! Legendre-symbol polynomials, mirror-constrained Littlewood families, and
//! the sparse cosine family with exactly two period zeros.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

use crate::arith::{is_prime_trial, powmod_u64};
use crate::error::{Error, Result};
use crate::poly::{CosinePoly, Poly};

/// Legendre symbol (k | p) by Euler's criterion: 0 when p divides k, else
/// k^((p-1)/2) mod p resolved to +-1. p must be an odd prime; primality is
/// checked by trial division, which is fine through the supported range
/// p <= 10^7.
pub fn legendre_symbol(k: i64, p: u64) -> Result<i8> {
    if p > 10_000_000 {
        return Err(Error::Range(format!("p = {p} exceeds the supported range 10^7")));
    }
    if p == 2 || !is_prime_trial(p) {
        return Err(Error::Domain(format!("p = {p} is not an odd prime")));
    }
    let r = k.rem_euclid(p as i64) as u64;
    if r == 0 {
        return Ok(0);
    }
    let e = powmod_u64(r, (p - 1) / 2, p);
    if e == 1 {
        Ok(1)
    } else if e == p - 1 {
        Ok(-1)
    } else {
        Err(Error::Domain(format!(
            "Euler's criterion returned {e} for ({k} | {p}); p cannot be prime"
        )))
    }
}

/// The length-p Legendre-symbol polynomial: entry k is (k | p), so the
/// declared degree is p - 1 and entry 0 is always 0.
pub fn fekete(p: u64) -> Result<Poly> {
    // legendre_symbol validates p; compute symbols by one pass of Euler
    legendre_symbol(1, p)?;
    let coeffs = (0..p)
        .map(|k| {
            let s = legendre_symbol(k as i64, p).expect("p validated");
            BigRational::from_integer(BigInt::from(s))
        })
        .collect();
    Poly::new(coeffs)
}

/// The sparse cosine sum
///   cos t + cos((4n+1)t) + sum over k in 0..n of (cos((4k+1)t) - cos((4k+3)t)),
/// built term by term. Degree 4n+1; it has exactly two period zeros, at
/// -pi/2 and pi/2, both simple, for every n >= 1.
pub fn two_zero_cosine_family(n: usize) -> Result<CosinePoly> {
    if n < 1 {
        return Err(Error::Range("n must be at least 1".into()));
    }
    let mut c = vec![BigRational::zero(); 4 * n + 2];
    let one = BigRational::one();
    c[1] += &one;
    c[4 * n + 1] += &one;
    for k in 0..n {
        c[4 * k + 1] += &one;
        c[4 * k + 3] -= &one;
    }
    CosinePoly::new(c)
}

/// Index j in 0..k of a k-th root of unity z_j = exp(2*pi*i*j/k) at which
/// Re(sum_m b_m z_j^m) is provably nonzero. Such an index always exists when
/// every b_m is nonzero. Floating evaluation with a 1e-9 acceptance
/// threshold does the work; if every real part falls under the threshold,
/// the check escalates to exact arithmetic, which is available for
/// k in {1, 2, 3, 4, 6} where the relevant cosines are rational. For other
/// k an all-below-threshold outcome is reported as inconclusive rather than
/// asserted either way.
pub fn real_part_nonvanishing_witness(b: &[BigRational]) -> Result<usize> {
    let k = b.len();
    if k == 0 {
        return Err(Error::Precondition("need at least one coefficient".into()));
    }
    if let Some(i) = b.iter().position(|x| x.is_zero()) {
        return Err(Error::Precondition(format!("b[{i}] is zero")));
    }
    let bf: Vec<f64> = b
        .iter()
        .map(|x| num::ToPrimitive::to_f64(x).unwrap_or(f64::NAN))
        .collect();
    for j in 0..k {
        let mut re = 0.0f64;
        for (m, &bm) in bf.iter().enumerate() {
            re += bm * (std::f64::consts::TAU * (j as f64) * (m as f64) / (k as f64)).cos();
        }
        if re.abs() > 1e-9 {
            return Ok(j);
        }
    }
    // exact escalation: cos(2 pi r / k) is rational exactly for these k
    let table: Option<Vec<BigRational>> = match k {
        1 => Some(vec![BigRational::one()]),
        2 => Some(vec![BigRational::one(), -BigRational::one()]),
        3 => {
            let h = BigRational::new(BigInt::from(-1), BigInt::from(2));
            Some(vec![BigRational::one(), h.clone(), h])
        }
        4 => Some(vec![
            BigRational::one(),
            BigRational::zero(),
            -BigRational::one(),
            BigRational::zero(),
        ]),
        6 => {
            let h = BigRational::new(BigInt::from(1), BigInt::from(2));
            Some(vec![
                BigRational::one(),
                h.clone(),
                -h.clone(),
                -BigRational::one(),
                -h.clone(),
                h,
            ])
        }
        _ => None,
    };
    match table {
        Some(cos_tab) => {
            for j in 0..k {
                let mut re = BigRational::zero();
                for (m, bm) in b.iter().enumerate() {
                    re += bm * &cos_tab[(j * m) % k];
                }
                if !re.is_zero() {
                    return Ok(j);
                }
            }
            Err(Error::Domain(
                "all real parts vanish exactly, which contradicts the nonzero-coefficient hypothesis"
                    .into(),
            ))
        }
        None => Err(Error::Inconclusive(format!(
            "all {k} real parts fall below the 1e-9 floating threshold and k = {k} \
             is outside the exact-escalation set {{1, 2, 3, 4, 6}}"
        ))),
    }
}

/// A mirror-constrained Littlewood family over {-1, +1}, addressed by index.
///
/// The free coefficients are the prefix a_0..a_h; the rest are filled in by
/// the mirror rule. Indexing is lexicographic on the free prefix with +1
/// ordered before -1: bit (h - t) of the index chooses a_t, 0 for +1.
/// Index arithmetic makes the family splittable into contiguous ranges for
/// parallel scans and random access.
#[derive(Clone, Copy, Debug)]
pub struct LittlewoodFamily {
    n: usize,
    free: u32,
    skew: bool,
    empty: bool,
}

impl LittlewoodFamily {
    /// Vectors of declared degree n over {-1, +1} with a_j = a_{n-j}.
    /// Population 2^(floor(n/2) + 1).
    pub fn self_reciprocal(n: usize) -> Result<LittlewoodFamily> {
        if n < 1 || n > 250 {
            return Err(Error::Range(
                "degree must be in 1..=250 (population indexing uses u128)".into(),
            ));
        }
        Ok(LittlewoodFamily {
            n,
            free: (n / 2 + 1) as u32,
            skew: false,
            empty: false,
        })
    }

    /// Vectors of declared degree n over {-1, +1} with a_j = (-1)^j a_{n-j}
    /// for every j. Applying the rule at j and n-j forces a_j = (-1)^n a_j,
    /// so odd n is empty; for n = 2 mod 4 the middle coefficient would have
    /// to vanish, so only n = 0 mod 4 is populated, with 2^(n/2 + 1) members.
    pub fn skew_reciprocal(n: usize) -> Result<LittlewoodFamily> {
        if n < 1 || n > 250 {
            return Err(Error::Range(
                "degree must be in 1..=250 (population indexing uses u128)".into(),
            ));
        }
        let empty = n % 4 != 0;
        Ok(LittlewoodFamily {
            n,
            free: if empty { 0 } else { (n / 2 + 1) as u32 },
            skew: true,
            empty,
        })
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn is_skew(&self) -> bool {
        self.skew
    }

    pub fn population(&self) -> u128 {
        if self.empty {
            0
        } else {
            1u128 << self.free
        }
    }

    /// The index-th member. Indices run in 0..population().
    pub fn at(&self, index: u128) -> Result<Poly> {
        if index >= self.population() {
            return Err(Error::Range(format!(
                "index {index} out of range for population {}",
                self.population()
            )));
        }
        let n = self.n;
        let h = (self.free - 1) as usize;
        let mut a = vec![0i64; n + 1];
        for t in 0..=h {
            let bit = (index >> (h - t)) & 1;
            a[t] = if bit == 0 { 1 } else { -1 };
        }
        for t in 0..=h {
            let j = n - t;
            if j > h {
                a[j] = if self.skew {
                    // a_{n-t} = (-1)^t a_t
                    if t % 2 == 0 {
                        a[t]
                    } else {
                        -a[t]
                    }
                } else {
                    a[t]
                };
            }
        }
        Poly::from_ints(&a)
    }

    /// Members with indices in start..end, in index order.
    pub fn iter_range(
        &self,
        start: u128,
        end: u128,
    ) -> impl Iterator<Item = Poly> + '_ {
        let end = end.min(self.population());
        (start..end).map(move |i| self.at(i).expect("index in range"))
    }

    pub fn iter(&self) -> impl Iterator<Item = Poly> + '_ {
        self.iter_range(0, self.population())
    }
}
