//! Polynomial and alphabet types shared across the crate.
//!
//! [`Poly`] is an algebraic polynomial with exact rational coefficients and a
//! declared degree: the coefficient vector always has length degree + 1, and
//! a zero leading coefficient is legal (the declared degree is part of the
//! data, reversal and mirror-symmetry tests use it as given).
//!
//! [`CosinePoly`] is a cosine sum c_0 + c_1 cos t + ... + c_n cos(nt) with
//! exact rational coefficients.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    /// Coefficients in ascending powers; the declared degree is len - 1.
    pub fn new(coeffs: Vec<BigRational>) -> Result<Poly> {
        if coeffs.is_empty() {
            return Err(Error::DegenerateInput(
                "a polynomial needs at least one coefficient".into(),
            ));
        }
        Ok(Poly { coeffs })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<Poly> {
        Poly::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    /// Declared degree (not the degree of the trimmed polynomial).
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &BigRational {
        &self.coeffs[j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Number of nonzero coefficients.
    pub fn nc(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Number of length-k coefficient windows with nonzero sum: the count of
    /// u in 0..=n-k+1 with a_u + ... + a_{u+k-1} != 0. Zero when k exceeds
    /// the coefficient count; k = 0 is a range error.
    pub fn nc_k(&self, k: usize) -> Result<usize> {
        if k == 0 {
            return Err(Error::Range("window length k must be at least 1".into()));
        }
        let n = self.coeffs.len();
        if k > n {
            return Ok(0);
        }
        let mut sum: BigRational = self.coeffs[..k].iter().sum();
        let mut count = if sum.is_zero() { 0 } else { 1 };
        for u in 1..=n - k {
            sum += &self.coeffs[u + k - 1] - &self.coeffs[u - 1];
            if !sum.is_zero() {
                count += 1;
            }
        }
        Ok(count)
    }

    /// a_j == a_{n-j} for every j, at the declared degree n.
    pub fn is_self_reciprocal(&self) -> bool {
        let n = self.degree();
        (0..=n / 2).all(|j| self.coeffs[j] == self.coeffs[n - j])
    }

    /// a_j == (-1)^j a_{n-j} for every j, at the declared degree n.
    /// The condition is required at all j, so both orientations of each
    /// mirror pair must hold; for n not divisible by 4 this forces zeros
    /// into any coefficient set that could otherwise satisfy it.
    pub fn is_skew_reciprocal(&self) -> bool {
        let n = self.degree();
        (0..=n).all(|j| {
            let mirrored = &self.coeffs[n - j];
            if j % 2 == 0 {
                self.coeffs[j] == *mirrored
            } else {
                self.coeffs[j] == -mirrored
            }
        })
    }

    /// Coefficient vector reversed at the declared degree.
    pub fn reciprocal_adjoint(&self) -> Poly {
        let mut c = self.coeffs.clone();
        c.reverse();
        Poly { coeffs: c }
    }

    /// P(1): the plain coefficient sum.
    pub fn coeff_sum(&self) -> BigRational {
        self.coeffs.iter().sum()
    }

    /// Clear denominators: returns (c, D) with c integer coefficients of
    /// D * P, D the positive lcm of the denominators. Zeros of P and of c
    /// agree exactly.
    pub fn to_integer_scaled(&self) -> (Vec<BigInt>, BigInt) {
        let mut d = BigInt::one();
        for c in &self.coeffs {
            d = d.lcm(c.denom());
        }
        let ints = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&d / c.denom()))
            .collect();
        (ints, d)
    }
}

#[derive(Serialize, Deserialize)]
struct PolyWire {
    degree: usize,
    coeffs: Vec<String>,
}

impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyWire {
            degree: self.degree(),
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Poly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Poly, D::Error> {
        let w = PolyWire::deserialize(d)?;
        if w.coeffs.is_empty() {
            return Err(D::Error::custom("coeffs must be nonempty"));
        }
        if w.degree != w.coeffs.len() - 1 {
            return Err(D::Error::custom(format!(
                "declared degree {} does not match {} coefficients",
                w.degree,
                w.coeffs.len()
            )));
        }
        let coeffs = parse_rationals(&w.coeffs).map_err(D::Error::custom)?;
        Ok(Poly { coeffs })
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Parse a list of "p" or "p/q" strings.
pub fn parse_rationals(items: &[String]) -> Result<Vec<BigRational>> {
    items
        .iter()
        .map(|s| {
            let t = s.trim();
            BigRational::from_str(t)
                .map_err(|e| Error::Format(format!("bad rational '{t}': {e}")))
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosinePoly {
    coeffs: Vec<BigRational>,
}

impl CosinePoly {
    /// c_0..c_n for c_0 + c_1 cos t + ... + c_n cos(nt).
    pub fn new(coeffs: Vec<BigRational>) -> Result<CosinePoly> {
        if coeffs.is_empty() {
            return Err(Error::DegenerateInput(
                "a cosine polynomial needs at least one coefficient".into(),
            ));
        }
        Ok(CosinePoly { coeffs })
    }

    pub fn from_ints(coeffs: &[i64]) -> Result<CosinePoly> {
        CosinePoly::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// T(0) = c_0 + c_1 + ... + c_n.
    pub fn coeff_sum(&self) -> BigRational {
        self.coeffs.iter().sum()
    }

    pub fn to_integer_scaled(&self) -> (Vec<BigInt>, BigInt) {
        let mut d = BigInt::one();
        for c in &self.coeffs {
            d = d.lcm(c.denom());
        }
        let ints = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&d / c.denom()))
            .collect();
        (ints, d)
    }
}

impl Serialize for CosinePoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyWire {
            degree: self.degree(),
            coeffs: self.coeffs.iter().map(|c| c.to_string()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CosinePoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<CosinePoly, D::Error> {
        let w = PolyWire::deserialize(d)?;
        if w.coeffs.is_empty() {
            return Err(D::Error::custom("coeffs must be nonempty"));
        }
        if w.degree != w.coeffs.len() - 1 {
            return Err(D::Error::custom(format!(
                "declared degree {} does not match {} coefficients",
                w.degree,
                w.coeffs.len()
            )));
        }
        let coeffs = parse_rationals(&w.coeffs).map_err(D::Error::custom)?;
        Ok(CosinePoly { coeffs })
    }
}

/// A finite coefficient set, stored sorted without duplicates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Alphabet {
    elements: Vec<BigRational>,
}

impl Alphabet {
    pub fn new(mut elements: Vec<BigRational>) -> Result<Alphabet> {
        if elements.is_empty() {
            return Err(Error::DegenerateInput("alphabet must be nonempty".into()));
        }
        elements.sort();
        elements.dedup();
        Ok(Alphabet { elements })
    }

    pub fn from_ints(elements: &[i64]) -> Result<Alphabet> {
        Alphabet::new(
            elements
                .iter()
                .map(|&c| BigRational::from_integer(BigInt::from(c)))
                .collect(),
        )
    }

    pub fn elements(&self) -> &[BigRational] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        self.elements.binary_search(x).is_ok()
    }

    /// Smallest absolute value among the nonzero elements; None when the
    /// alphabet is {0} only.
    pub fn gamma(&self) -> Option<BigRational> {
        self.elements
            .iter()
            .filter(|e| !e.is_zero())
            .map(|e| e.abs())
            .min()
    }

    /// True when no nonempty multiset of nonzero elements sums to zero.
    /// Over the rationals this holds exactly when every nonzero element has
    /// the same strict sign: a positive and a negative rational always admit
    /// a vanishing positive-integer combination.
    pub fn zero_sum_free(&self) -> bool {
        let has_pos = self.elements.iter().any(|e| e.is_positive());
        let has_neg = self.elements.iter().any(|e| e.is_negative());
        !(has_pos && has_neg)
    }
}
