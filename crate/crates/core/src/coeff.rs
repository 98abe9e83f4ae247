//! Exact arithmetic in the quadratic field `Q(v)` with `v = sqrt(q)` for a prime `q`.
//!
//! Every structure constant in the engine is a [`QuadNumber`] `a + b*v` with
//! rational `a`, `b`. Since `q` is prime, `v` is irrational and the pair
//! `(a, b)` is unique.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoeffError {
    #[error("q = {0} is not a prime")]
    NotPrime(u64),
    #[error("mismatched field contexts: q = {0} vs q = {1}")]
    Mismatch(u32, u32),
    #[error("division by zero")]
    DivisionByZero,
    #[error("malformed coefficient JSON: {0}")]
    Json(String),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The field context `Q(sqrt(q))`. Construction validates primality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadField {
    q: u32,
}

impl QuadField {
    pub fn new(q: u64) -> Result<Self, CoeffError> {
        if !is_prime(q) || q > u64::from(u32::MAX) {
            return Err(CoeffError::NotPrime(q));
        }
        Ok(QuadField { q: q as u32 })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn zero(&self) -> QuadNumber {
        QuadNumber::from_parts(Rational::zero(), Rational::zero(), self.q)
    }

    pub fn one(&self) -> QuadNumber {
        self.rational(Rational::one())
    }

    pub fn rational(&self, a: Rational) -> QuadNumber {
        QuadNumber::from_parts(a, Rational::zero(), self.q)
    }

    pub fn integer(&self, n: i64) -> QuadNumber {
        self.rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `v^n` for any integer `n`.
    pub fn vpow(&self, n: i64) -> QuadNumber {
        let half = n.div_euclid(2);
        let odd = n.rem_euclid(2) == 1;
        let scale = qpow_rational(self.q, half);
        if odd {
            QuadNumber::from_parts(Rational::zero(), scale, self.q)
        } else {
            QuadNumber::from_parts(scale, Rational::zero(), self.q)
        }
    }

    /// Quantum integer `[r] = v^{r-1} + v^{r-3} + ... + v^{1-r}`.
    pub fn qint(&self, r: u32) -> QuadNumber {
        let r = i64::from(r);
        (0..r).fold(self.zero(), |acc, k| acc + self.vpow(r - 1 - 2 * k))
    }

    pub fn from_json(&self, value: &Value) -> Result<QuadNumber, CoeffError> {
        let part = |key: &str| -> Result<Rational, CoeffError> {
            let s = value
                .get(key)
                .and_then(Value::as_str)
                .ok_or_else(|| CoeffError::Json(format!("missing string field {key:?}")))?;
            parse_rational(s)
        };
        Ok(QuadNumber::from_parts(part("a")?, part("b")?, self.q))
    }
}

/// `q^e` as an exact rational, `e` possibly negative.
pub fn qpow_rational(q: u32, e: i64) -> Rational {
    let p = BigInt::from(BigUint::from(q).pow(e.unsigned_abs() as u32));
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

/// Parses `"n"` or `"n/d"` with decimal integers.
pub fn parse_rational(s: &str) -> Result<Rational, CoeffError> {
    let bad = || CoeffError::Json(format!("bad rational {s:?}"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(CoeffError::DivisionByZero);
    }
    Ok(Rational::new(n, d))
}

/// Canonical `"num/den"` rendering used in every JSON export.
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// `a + b*sqrt(q)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadNumber {
    a: Rational,
    b: Rational,
    q: u32,
}

impl QuadNumber {
    pub fn from_parts(a: Rational, b: Rational, q: u32) -> Self {
        QuadNumber { a, b, q }
    }

    /// Rational part.
    pub fn a(&self) -> &Rational {
        &self.a
    }

    /// Coefficient of `sqrt(q)`.
    pub fn b(&self) -> &Rational {
        &self.b
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn field(&self) -> QuadField {
        QuadField { q: self.q }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    fn check(&self, other: &QuadNumber) -> Result<(), CoeffError> {
        if self.q == other.q {
            Ok(())
        } else {
            Err(CoeffError::Mismatch(self.q, other.q))
        }
    }

    pub fn try_add(&self, other: &QuadNumber) -> Result<QuadNumber, CoeffError> {
        self.check(other)?;
        Ok(QuadNumber::from_parts(&self.a + &other.a, &self.b + &other.b, self.q))
    }

    pub fn try_mul(&self, other: &QuadNumber) -> Result<QuadNumber, CoeffError> {
        self.check(other)?;
        let q = Rational::from_integer(BigInt::from(self.q));
        let a = &self.a * &other.a + &self.b * &other.b * q;
        let b = &self.a * &other.b + &self.b * &other.a;
        Ok(QuadNumber::from_parts(a, b, self.q))
    }

    /// `(a - b v) / (a^2 - q b^2)`.
    pub fn inv(&self) -> Result<QuadNumber, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        let q = Rational::from_integer(BigInt::from(self.q));
        let norm = &self.a * &self.a - &self.b * &self.b * q;
        Ok(QuadNumber::from_parts(
            &self.a / &norm,
            -(&self.b / &norm),
            self.q,
        ))
    }

    pub fn try_div(&self, other: &QuadNumber) -> Result<QuadNumber, CoeffError> {
        self.try_mul(&other.inv()?)
    }

    pub fn scale(&self, r: &Rational) -> QuadNumber {
        QuadNumber::from_parts(&self.a * r, &self.b * r, self.q)
    }

    pub fn to_json(&self) -> Value {
        json!({ "a": format_rational(&self.a), "b": format_rational(&self.b) })
    }
}

impl fmt::Debug for QuadNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})@q={}", self.a, self.b, self.q)
    }
}

impl fmt::Display for QuadNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*v", self.b),
            (false, false) => {
                let sign = if self.b.is_negative() { '-' } else { '+' };
                write!(f, "{} {} {}*v", self.a, sign, self.b.abs())
            }
        }
    }
}

// Operator impls panic on mismatched contexts; the `try_*` methods report it.
impl Add<&QuadNumber> for &QuadNumber {
    type Output = QuadNumber;
    fn add(self, rhs: &QuadNumber) -> QuadNumber {
        self.try_add(rhs).expect("QuadNumber addition")
    }
}

impl Add for QuadNumber {
    type Output = QuadNumber;
    fn add(self, rhs: QuadNumber) -> QuadNumber {
        &self + &rhs
    }
}

impl AddAssign<&QuadNumber> for QuadNumber {
    fn add_assign(&mut self, rhs: &QuadNumber) {
        assert_eq!(self.q, rhs.q, "QuadNumber addition across fields");
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl Neg for &QuadNumber {
    type Output = QuadNumber;
    fn neg(self) -> QuadNumber {
        QuadNumber::from_parts(-&self.a, -&self.b, self.q)
    }
}

impl Neg for QuadNumber {
    type Output = QuadNumber;
    fn neg(self) -> QuadNumber {
        -&self
    }
}

impl Sub<&QuadNumber> for &QuadNumber {
    type Output = QuadNumber;
    fn sub(self, rhs: &QuadNumber) -> QuadNumber {
        self + &(-rhs)
    }
}

impl Sub for QuadNumber {
    type Output = QuadNumber;
    fn sub(self, rhs: QuadNumber) -> QuadNumber {
        &self - &rhs
    }
}

impl Mul<&QuadNumber> for &QuadNumber {
    type Output = QuadNumber;
    fn mul(self, rhs: &QuadNumber) -> QuadNumber {
        self.try_mul(rhs).expect("QuadNumber multiplication")
    }
}

impl Mul for QuadNumber {
    type Output = QuadNumber;
    fn mul(self, rhs: QuadNumber) -> QuadNumber {
        &self * &rhs
    }
}
