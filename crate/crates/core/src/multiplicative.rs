//! Multiplicative wave numbers `w(f, g) = exp(2πi(fξ + g))` with rational
//! parameters, kept exact in parameter space.
//!
//! `g` is measured in cycles and normalized into `[0, 1)`. `f` is kept as
//! given (reduced but not taken modulo 1) because roots act on the
//! representative: `w(1/2,0)` and `w(3/2,0)` sample identically but have
//! different square roots.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::highprec::HpContext;
use crate::periodic::{PeriodicSeq, Precision};
use crate::rational::{partial_fractions_mod1, prime_factorize, Rational};

/// Largest period [`MultWave::sample`] will materialize.
pub const MAX_SAMPLED_PERIOD: usize = 1 << 24;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultWave {
    f: Rational,
    g: Rational,
}

/// `exp(2πi r)` with `r` reduced modulo 1 exactly first.
pub fn expi_cycles(r: &Rational) -> Complex64 {
    let t = r.fract().to_f64();
    Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * t)
}

impl MultWave {
    pub fn new(f: Rational, g: Rational) -> Self {
        MultWave { f, g: g.fract() }
    }

    pub fn from_ints(fn_: i64, fd: i64, gn: i64, gd: i64) -> Result<Self> {
        Ok(Self::new(Rational::new(fn_, fd)?, Rational::new(gn, gd)?))
    }

    pub fn identity() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }

    pub fn f(&self) -> &Rational {
        &self.f
    }

    pub fn g(&self) -> &Rational {
        &self.g
    }

    pub fn period(&self) -> BigUint {
        self.f.denom().to_biguint().expect("positive denominator")
    }

    pub fn period_usize(&self) -> Result<usize> {
        self.period()
            .to_usize()
            .filter(|&n| n <= MAX_SAMPLED_PERIOD)
            .ok_or_else(|| Error::Argument(format!("period {} is too large to sample", self.period())))
    }

    /// Exact phase `fξ + g` in cycles.
    pub fn phase(&self, xi: i64) -> Rational {
        &self.f.mul_int(xi) + &self.g
    }

    pub fn at(&self, xi: i64) -> Complex64 {
        expi_cycles(&self.phase(xi))
    }

    pub fn sample(&self) -> Result<PeriodicSeq> {
        let n = self.period_usize()?;
        PeriodicSeq::from_fn(n, |xi| self.at(xi))
    }

    /// Sample with each element evaluated at the requested precision and
    /// rounded to double.
    pub fn sample_with(&self, precision: Precision) -> Result<PeriodicSeq> {
        match precision {
            Precision::Double => self.sample(),
            Precision::High => {
                let n = self.period_usize()?;
                let mut hp = HpContext::new();
                PeriodicSeq::from_fn(n, |xi| {
                    let z = hp.expi_cycles(&self.phase(xi));
                    hp.to_c64(&z)
                })
            }
        }
    }

    pub fn product(&self, other: &MultWave) -> MultWave {
        MultWave::new(&self.f + &other.f, &self.g + &other.g)
    }

    pub fn inverse(&self) -> MultWave {
        MultWave::new(-&self.f, -&self.g)
    }

    pub fn quotient(&self, other: &MultWave) -> MultWave {
        self.product(&other.inverse())
    }

    /// Conjugate image `(-f, -g)`.
    pub fn reflect_real(&self) -> MultWave {
        self.inverse()
    }

    /// Orthogonal-conjugate image `(-f, 1/2 - g)`, whose samples are
    /// `-conj` of the samples of `self`.
    pub fn reflect_imag(&self) -> MultWave {
        let half = Rational::new(1, 2).expect("1/2");
        MultWave::new(-&self.f, &half - &self.g)
    }

    /// Parameter root `(f/n, g/n)` of this representative.
    pub fn root(&self, n: u64) -> Result<MultWave> {
        if n == 0 {
            return Err(Error::Argument("root index must be >= 1".into()));
        }
        Ok(MultWave::new(self.f.div_int(n)?, self.g.div_int(n)?))
    }

    /// The `n` distinct values taken over one period, in phase order.
    pub fn phases(&self) -> Result<Vec<Complex64>> {
        Ok(self.sample()?.into_values())
    }

    pub fn is_constant(&self) -> bool {
        self.f.is_integer()
    }

    pub fn is_simple(&self) -> bool {
        self.g.denom() == self.f.denom()
    }

    /// True when both parameters agree modulo 1, i.e. the sampled sequences
    /// coincide element-wise.
    pub fn same_sequence(&self, other: &MultWave) -> bool {
        self.f.fract() == other.f.fract() && self.g == other.g
    }

    /// Factor into wave numbers of prime-power period (increasing prime
    /// order) whose product samples identically to `self`.
    ///
    /// Each prime `p` dividing `den(f)` or `den(g)` contributes one factor
    /// carrying the `p`-parts of both parameters. A factor with no `p`-part
    /// in `f` is constant (period 1). The identity factors into `[]`.
    pub fn factor_period_prime(&self) -> Result<Vec<MultWave>> {
        let f_terms = partial_fractions_mod1(&self.f)?;
        let g_terms = partial_fractions_mod1(&self.g)?;
        let prime_of = |r: &Rational| -> Result<BigUint> {
            let den = r.denom().to_biguint().expect("positive denominator");
            Ok(prime_factorize(&den)?.factors.remove(0).0)
        };
        let mut by_prime: Vec<(BigUint, Rational, Rational)> = Vec::new();
        for (t, is_f) in f_terms.iter().map(|t| (t, true)).chain(g_terms.iter().map(|t| (t, false))) {
            let p = prime_of(t)?;
            let slot = match by_prime.iter().position(|(q, _, _)| *q == p) {
                Some(i) => i,
                None => {
                    by_prime.push((p, Rational::zero(), Rational::zero()));
                    by_prime.len() - 1
                }
            };
            if is_f {
                by_prime[slot].1 = t.clone();
            } else {
                by_prime[slot].2 = t.clone();
            }
        }
        by_prime.sort_by(|a, b| a.0.cmp(&b.0));
        Ok(by_prime.into_iter().map(|(_, f, g)| MultWave::new(f, g)).collect())
    }
}

impl fmt::Display for MultWave {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w({},{})", self.f, self.g)
    }
}

impl FromStr for MultWave {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Argument(format!("expected w(f,g), got {s:?}"));
        let inner = s
            .trim()
            .strip_prefix("w(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (f, g) = inner.split_once(',').ok_or_else(bad)?;
        Ok(MultWave::new(f.parse()?, g.parse()?))
    }
}

impl Serialize for MultWave {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for MultWave {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Sum of the `f` and `g` parameters, used for carrier means.
pub(crate) fn parameter_sums<'a>(waves: impl Iterator<Item = &'a MultWave>) -> (Rational, Rational) {
    waves.fold((Rational::zero(), Rational::zero()), |(f, g), w| (&f + w.f(), &g + w.g()))
}
