//! Higher-order Hermite polynomials `H_n^(m)(x, y) = exp(y ∂_x^m) x^n`.
//!
//! The closed form is the finite sum
//!
//! ```text
//! H_n^(m)(x, y) = n! Σ_{r=0}^{⌊n/m⌋} x^(n-mr) y^r / ((n-mr)! r!)
//! ```
//!
//! Coefficients are kept as arbitrary-precision integers so that the
//! recurrences and the differential identities can be checked exactly,
//! as polynomial identities, for any degree. `RationalPoly` is the exact
//! bivariate carrier used for those checks.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, Error, Result};

/// Order `m ≥ 2` and degree `n ≥ 0` of a higher-order Hermite polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PolyIndex {
    m: u32,
    n: u32,
}

impl PolyIndex {
    pub fn new(m: u32, n: u32) -> Result<Self> {
        if m < 2 {
            return domain(format!("polynomial order m = {m} must be at least 2"));
        }
        Ok(Self { m, n })
    }

    /// Signed constructor for callers holding untrusted integers (CLI, JSON).
    pub fn from_signed(m: i64, n: i64) -> Result<Self> {
        if n < 0 {
            return domain(format!("polynomial degree n = {n} must be non-negative"));
        }
        let m = u32::try_from(m).map_err(|_| Error::Domain(format!("order m = {m} out of range")))?;
        let n = u32::try_from(n).map_err(|_| Error::Domain(format!("degree n = {n} out of range")))?;
        Self::new(m, n)
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Largest `r` with a nonzero term, `⌊n/m⌋`.
    pub fn max_r(&self) -> u32 {
        self.n / self.m
    }

    fn with_degree(&self, n: u32) -> Self {
        Self { m: self.m, n }
    }
}

/// One term `coeff · x^(n-mr) · y^r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteTerm {
    pub r: u32,
    pub coeff: BigUint,
}

/// Exact term list of `H_n^(m)`, ascending in `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermitePoly {
    index: PolyIndex,
    terms: Vec<HermiteTerm>,
}

impl HermitePoly {
    pub fn index(&self) -> PolyIndex {
        self.index
    }

    pub fn terms(&self) -> &[HermiteTerm] {
        &self.terms
    }

    /// x-power carried by term `r`.
    pub fn x_power(&self, r: u32) -> u32 {
        self.index.n - self.index.m * r
    }

    pub fn to_rational(&self) -> RationalPoly {
        let mut p = RationalPoly::zero();
        for t in &self.terms {
            p.add_term(
                self.x_power(t.r),
                t.r,
                BigRational::from_integer(BigInt::from(t.coeff.clone())),
            );
        }
        p
    }

    /// Horner evaluation in `y` with exact coefficients rounded once to `f64`.
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.terms.iter().rev().fold(0.0, |acc, t| {
            let c = t.coeff.to_f64().unwrap_or(f64::INFINITY);
            acc * y + c * x.powi(self.x_power(t.r) as i32)
        })
    }

    pub fn eval_exact(&self, x: &BigRational, y: &BigRational) -> BigRational {
        self.to_rational().eval_exact(x, y)
    }
}

/// `n! / ((n - mr)! r!)`, exact.
fn term_coefficient(n: u32, m: u32, r: u32) -> BigUint {
    let low = n - m * r;
    let falling = ((low + 1)..=n).fold(BigUint::one(), |acc, k| acc * k);
    let r_fact = (1..=r).fold(BigUint::one(), |acc, k| acc * k);
    falling / r_fact
}

pub fn hermite_coefficients(index: PolyIndex) -> HermitePoly {
    let terms = (0..=index.max_r())
        .map(|r| HermiteTerm {
            r,
            coeff: term_coefficient(index.n, index.m, r),
        })
        .collect();
    HermitePoly { index, terms }
}

pub fn hermite_eval(index: PolyIndex, x: f64, y: f64) -> f64 {
    hermite_coefficients(index).eval(x, y)
}

/// `H_{n+1}^(m)` assembled from the pure recurrence
/// `x H_n + m · n!/(n-m+1)! · y · H_{n-m+1}`.
pub fn recurrence_step(index: PolyIndex) -> RationalPoly {
    let n = index.n;
    let m = index.m;
    let mut next = hermite_coefficients(index).to_rational().mul_x();
    if n + 1 >= m {
        let lower_deg = n + 1 - m;
        let falling: BigUint = ((lower_deg + 1)..=n).fold(BigUint::one(), |acc, k| acc * k);
        let factor = BigRational::from_integer(BigInt::from(falling * m));
        let lower = hermite_coefficients(index.with_degree(lower_deg)).to_rational();
        next = next.add(&lower.mul_y().scale(&factor));
    }
    next
}

pub fn diff_x(poly: &HermitePoly) -> RationalPoly {
    poly.to_rational().diff_x()
}

pub fn diff_y(poly: &HermitePoly) -> RationalPoly {
    poly.to_rational().diff_y()
}

/// `(m y ∂_x^m + x ∂_x − n) H_n^(m)`; identically zero.
///
/// The factor `m` on the first term is required: on `x^(n-mr) y^r` the Euler
/// operator `x ∂_x` gives `n − mr`, and `y ∂_y = y ∂_x^m` gives `r`.
pub fn ode_residual(index: PolyIndex) -> RationalPoly {
    let h = hermite_coefficients(index).to_rational();
    let m = BigRational::from_integer(BigInt::from(index.m));
    let high = h.diff_x_n(index.m).mul_y().scale(&m);
    let drift = h.diff_x().mul_x();
    let n = BigRational::from_integer(BigInt::from(index.n));
    high.add(&drift).sub(&h.scale(&n))
}

/// `(∂_y − ∂_x^m) H_n^(m)`; identically zero.
pub fn heat_residual(index: PolyIndex) -> RationalPoly {
    let h = hermite_coefficients(index).to_rational();
    h.diff_y().sub(&h.diff_x_n(index.m))
}

/// Bivariate polynomial in `(x, y)` with exact rational coefficients,
/// keyed by `(x-power, y-power)`. Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RationalPoly {
    coeffs: BTreeMap<(u32, u32), BigRational>,
}

impl RationalPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, x_pow: u32, y_pow: u32) -> BigRational {
        self.coeffs
            .get(&(x_pow, y_pow))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &BigRational)> {
        self.coeffs.iter()
    }

    pub fn add_term(&mut self, x_pow: u32, y_pow: u32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let key = (x_pow, y_pow);
        let sum = self.coeff(x_pow, y_pow) + c;
        if sum.is_zero() {
            self.coeffs.remove(&key);
        } else {
            self.coeffs.insert(key, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, j), c) in &other.coeffs {
            out.add_term(i, j, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-BigRational::one()))
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.coeffs {
            out.add_term(i, j, c * s);
        }
        out
    }

    pub fn mul_x(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&(i, j), c)| ((i + 1, j), c.clone())).collect(),
        }
    }

    pub fn mul_y(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(&(i, j), c)| ((i, j + 1), c.clone())).collect(),
        }
    }

    pub fn diff_x(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.coeffs {
            if i > 0 {
                out.add_term(i - 1, j, c * BigRational::from_integer(BigInt::from(i)));
            }
        }
        out
    }

    pub fn diff_y(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.coeffs {
            if j > 0 {
                out.add_term(i, j - 1, c * BigRational::from_integer(BigInt::from(j)));
            }
        }
        out
    }

    pub fn diff_x_n(&self, order: u32) -> Self {
        (0..order).fold(self.clone(), |p, _| p.diff_x())
    }

    pub fn eval_exact(&self, x: &BigRational, y: &BigRational) -> BigRational {
        self.coeffs.iter().fold(BigRational::zero(), |acc, (&(i, j), c)| {
            acc + c * num_traits::pow(x.clone(), i as usize) * num_traits::pow(y.clone(), j as usize)
        })
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.coeffs
            .iter()
            .map(|(&(i, j), c)| c.to_f64().unwrap_or(f64::NAN) * x.powi(i as i32) * y.powi(j as i32))
            .sum()
    }
}

impl From<&HermitePoly> for RationalPoly {
    fn from(p: &HermitePoly) -> Self {
        p.to_rational()
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&(i, j), c) in self.coeffs.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            if i > 0 {
                write!(f, "·x^{i}")?;
            }
            if j > 0 {
                write!(f, "·y^{j}")?;
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    r: u32,
    coeff: String,
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    m: u32,
    n: u32,
    terms: Vec<TermRepr>,
}

impl Serialize for HermitePoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        PolyRepr {
            m: self.index.m,
            n: self.index.n,
            terms: self
                .terms
                .iter()
                .map(|t| TermRepr {
                    r: t.r,
                    coeff: t.coeff.to_str_radix(10),
                })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HermitePoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = PolyRepr::deserialize(d)?;
        let index = PolyIndex::new(repr.m, repr.n).map_err(D::Error::custom)?;
        let expected = hermite_coefficients(index);
        if repr.terms.len() != expected.terms.len() {
            return Err(D::Error::custom(format!(
                "expected {} terms for m = {}, n = {}",
                expected.terms.len(),
                repr.m,
                repr.n
            )));
        }
        for (got, want) in repr.terms.iter().zip(&expected.terms) {
            let coeff = BigUint::parse_bytes(got.coeff.as_bytes(), 10)
                .ok_or_else(|| D::Error::custom(format!("bad coefficient {:?}", got.coeff)))?;
            if got.r != want.r || coeff != want.coeff {
                return Err(D::Error::custom(format!("term r = {} does not match the closed form", got.r)));
            }
        }
        Ok(expected)
    }
}
