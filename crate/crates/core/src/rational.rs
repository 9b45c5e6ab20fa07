//! Exact rationals over arbitrary-precision integers, plus the period and
//! prime-structure helpers the wave-number modules are built on.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An integer fraction in lowest terms with a positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rational {
    num: BigInt,
    den: BigInt,
}

/// Reduce `num/den` to lowest terms with a positive denominator.
pub fn reduce(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Rational> {
    let num = num.into();
    let den = den.into();
    if den.is_zero() {
        return Err(Error::InvalidRational(format!("{num}/0 has a zero denominator")));
    }
    Ok(Rational::normalized(num, den))
}

impl Rational {
    fn normalized(num: BigInt, den: BigInt) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Rational { num: BigInt::zero(), den: BigInt::one() };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = (num / &g, den / g);
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        Rational { num, den }
    }

    pub fn new(num: i64, den: i64) -> Result<Self> {
        reduce(num, den)
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Rational { num: n.into(), den: BigInt::one() }
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    pub fn floor(&self) -> BigInt {
        self.num.div_floor(&self.den)
    }

    /// The representative of `self` modulo 1 in `[0, 1)`.
    pub fn fract(&self) -> Rational {
        Rational { num: self.num.mod_floor(&self.den), den: self.den.clone() }
    }

    pub fn recip(&self) -> Result<Rational> {
        reduce(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Rational) -> Result<Rational> {
        if rhs.is_zero() {
            return Err(Error::InvalidRational(format!("division of {self} by zero")));
        }
        Ok(Rational::normalized(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn div_int(&self, n: u64) -> Result<Rational> {
        if n == 0 {
            return Err(Error::InvalidRational(format!("division of {self} by zero")));
        }
        Ok(Rational::normalized(self.num.clone(), &self.den * BigInt::from(n)))
    }

    pub fn mul_int(&self, n: i64) -> Rational {
        Rational::normalized(&self.num * BigInt::from(n), self.den.clone())
    }

    /// Nearest `f64`; exact for values representable in double precision.
    pub fn to_f64(&self) -> f64 {
        if let (Some(n), Some(d)) = (self.num.to_f64(), self.den.to_f64()) {
            if n.is_finite() && d.is_finite() && n.abs() < 9.0e15 && d < 9.0e15 {
                return n / d;
            }
        }
        // Shift both terms down to a common scale where f64 division is safe.
        let bits = self.num.bits().max(self.den.bits());
        let shift = bits.saturating_sub(1000);
        let n = (&self.num >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (&self.den >> shift).to_f64().unwrap_or(f64::NAN);
        if d == 0.0 {
            return if n.is_sign_negative() { f64::NEG_INFINITY } else { f64::INFINITY };
        }
        n / d
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidRational(format!("cannot parse {s:?}"));
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let d: BigInt = d.parse().map_err(|_| bad())?;
        reduce(n, d)
    }
}

impl Serialize for Rational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl<'a> Add<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn add(self, rhs: &Rational) -> Rational {
        Rational::normalized(&self.num * &rhs.den + &rhs.num * &self.den, &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn sub(self, rhs: &Rational) -> Rational {
        Rational::normalized(&self.num * &rhs.den - &rhs.num * &self.den, &self.den * &rhs.den)
    }
}

impl<'a> Mul<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn mul(self, rhs: &Rational) -> Rational {
        Rational::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

/// Panics on a zero divisor; use [`Rational::checked_div`] when the divisor may vanish.
impl<'a> Div<&'a Rational> for &'a Rational {
    type Output = Rational;
    fn div(self, rhs: &Rational) -> Rational {
        self.checked_div(rhs).expect("rational division by zero")
    }
}

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational { num: -&self.num, den: self.den.clone() }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational { (&self).$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

/// Ordered `(prime, exponent)` pairs with strictly increasing primes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeFactorization {
    pub factors: Vec<(BigUint, u32)>,
}

impl PrimeFactorization {
    pub fn product(&self) -> BigUint {
        self.factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * num_traits::pow(p.clone(), *e as usize))
    }

    /// The pairwise-coprime prime-power factors `p^e`.
    pub fn prime_powers(&self) -> Vec<BigUint> {
        self.factors.iter().map(|(p, e)| num_traits::pow(p.clone(), *e as usize)).collect()
    }
}

/// The common period of sequences with the given periods, built with the
/// recursive gcd scheme: `p_N = prod(d_j) / prod(g_j)` with
/// `g_j = gcd(p_{j-1}, d_j)`. The result is the least common multiple.
pub fn combined_period(periods: &[BigUint]) -> Result<BigUint> {
    let (first, rest) = periods
        .split_first()
        .ok_or_else(|| Error::Argument("combined_period of an empty list".into()))?;
    if periods.iter().any(|p| p.is_zero()) {
        return Err(Error::Argument("periods must be positive".into()));
    }
    let mut prod_d = first.clone();
    let mut prod_g = BigUint::one();
    for d in rest {
        let p_prev = &prod_d / &prod_g;
        let g = p_prev.gcd(d);
        prod_d *= d;
        prod_g *= g;
    }
    Ok(prod_d / prod_g)
}

/// Machine-width combined period for materialized sequences.
pub fn combined_period_usize(a: usize, b: usize) -> usize {
    a / a.gcd(&b) * b
}

/// Trial-division factorization of `n >= 2`.
pub fn prime_factorize(n: &BigUint) -> Result<PrimeFactorization> {
    if *n < BigUint::from(2u32) {
        return Err(Error::Argument(format!("prime_factorize needs n >= 2, got {n}")));
    }
    let mut rest = n.clone();
    let mut factors = Vec::new();
    let mut push = |p: BigUint, rest: &mut BigUint| {
        let mut e = 0u32;
        while (&*rest % &p).is_zero() {
            *rest /= &p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    push(BigUint::from(2u32), &mut rest);
    let mut p = BigUint::from(3u32);
    while &p * &p <= rest {
        push(p.clone(), &mut rest);
        p += 2u32;
    }
    if !rest.is_one() {
        factors.push((rest, 1));
    }
    Ok(PrimeFactorization { factors })
}

/// Split `r` (taken modulo 1) into one term `m_k / p_k^{e_k}` per prime-power
/// factor of its denominator, so that the terms sum to `r` modulo 1.
///
/// Terms come out in increasing prime order with numerators in `[1, p^e)`.
/// A denominator of 1 yields the empty decomposition.
pub fn partial_fractions_mod1(r: &Rational) -> Result<Vec<Rational>> {
    let r = r.fract();
    if r.is_integer() {
        return Ok(Vec::new());
    }
    let den = r.denom().to_biguint().expect("positive denominator");
    let num = r.numer().to_biguint().expect("fract is nonnegative");
    let fact = prime_factorize(&den)?;
    let mut terms = Vec::with_capacity(fact.factors.len());
    for q in fact.prime_powers() {
        // r = num/(q*c) with gcd(q, c) = 1; the q-part numerator is num * c^{-1} mod q.
        let cofactor = &den / &q;
        let inv = mod_inverse(&(&cofactor % &q), &q)
            .expect("prime-power cofactor is coprime to its prime power");
        let m = (&num * inv) % &q;
        terms.push(reduce(BigInt::from_biguint(Sign::Plus, m), BigInt::from_biguint(Sign::Plus, q))?);
    }
    Ok(terms)
}

fn mod_inverse(a: &BigUint, m: &BigUint) -> Option<BigUint> {
    let a = BigInt::from_biguint(Sign::Plus, a.clone());
    let m = BigInt::from_biguint(Sign::Plus, m.clone());
    let egcd = a.extended_gcd(&m);
    if !egcd.gcd.is_one() {
        return None;
    }
    egcd.x.mod_floor(&m).to_biguint()
}
