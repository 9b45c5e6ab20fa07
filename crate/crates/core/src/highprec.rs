//! Extended-precision complex kernel used by [`Precision::High`].
//!
//! [`Precision::High`]: crate::periodic::Precision::High

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_complex::Complex64;

use crate::rational::Rational;

/// Mantissa bits; 192 bits is about 57 significant decimal digits.
pub const HIGH_PRECISION_BITS: usize = 192;

const RM: RoundingMode = RoundingMode::ToEven;

#[derive(Clone, Debug)]
pub struct HpComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

/// Working precision plus the constant cache astro-float needs for
/// transcendental functions. Not shared between threads; make one per call.
pub struct HpContext {
    p: usize,
    cc: Consts,
}

impl Default for HpContext {
    fn default() -> Self {
        Self::new()
    }
}

impl HpContext {
    pub fn new() -> Self {
        Self::with_bits(HIGH_PRECISION_BITS)
    }

    pub fn with_bits(p: usize) -> Self {
        HpContext { p, cc: Consts::new().expect("astro-float constant cache") }
    }

    pub fn bits(&self) -> usize {
        self.p
    }

    pub fn real(&mut self, r: &Rational) -> BigFloat {
        let n = BigFloat::parse(&r.numer().to_string(), Radix::Dec, self.p, RM, &mut self.cc);
        let d = BigFloat::parse(&r.denom().to_string(), Radix::Dec, self.p, RM, &mut self.cc);
        n.div(&d, self.p, RM)
    }

    pub fn from_int(&self, n: i64) -> BigFloat {
        BigFloat::from_i64(n, self.p)
    }

    pub fn from_c64(&self, c: Complex64) -> HpComplex {
        HpComplex { re: BigFloat::from_f64(c.re, self.p), im: BigFloat::from_f64(c.im, self.p) }
    }

    pub fn complex_int(&self, re: i64, im: i64) -> HpComplex {
        HpComplex { re: self.from_int(re), im: self.from_int(im) }
    }

    /// `sin(π r)`.
    pub fn sin_pi(&mut self, r: &Rational) -> BigFloat {
        let x = self.pi_times(r);
        x.sin(self.p, RM, &mut self.cc)
    }

    fn pi_times(&mut self, r: &Rational) -> BigFloat {
        let pi = self.cc.pi(self.p, RM);
        let r = self.real(r);
        pi.mul(&r, self.p, RM)
    }

    /// `exp(2πi r)`; `r` is reduced modulo 1 exactly before evaluation.
    pub fn expi_cycles(&mut self, r: &Rational) -> HpComplex {
        let x = self.pi_times(&r.fract().mul_int(2));
        HpComplex { re: x.cos(self.p, RM, &mut self.cc), im: x.sin(self.p, RM, &mut self.cc) }
    }

    pub fn add(&self, a: &HpComplex, b: &HpComplex) -> HpComplex {
        HpComplex { re: a.re.add(&b.re, self.p, RM), im: a.im.add(&b.im, self.p, RM) }
    }

    pub fn sub(&self, a: &HpComplex, b: &HpComplex) -> HpComplex {
        HpComplex { re: a.re.sub(&b.re, self.p, RM), im: a.im.sub(&b.im, self.p, RM) }
    }

    pub fn mul(&self, a: &HpComplex, b: &HpComplex) -> HpComplex {
        let re = a.re.mul(&b.re, self.p, RM).sub(&a.im.mul(&b.im, self.p, RM), self.p, RM);
        let im = a.re.mul(&b.im, self.p, RM).add(&a.im.mul(&b.re, self.p, RM), self.p, RM);
        HpComplex { re, im }
    }

    pub fn mul_real(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.p, RM)
    }

    pub fn div_real(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.p, RM)
    }

    pub fn conj(&self, a: &HpComplex) -> HpComplex {
        HpComplex { re: a.re.clone(), im: a.im.neg() }
    }

    pub fn to_f64(&mut self, x: &BigFloat) -> f64 {
        if x.is_zero() {
            return 0.0;
        }
        let s = x.format(Radix::Dec, RM, &mut self.cc).expect("finite value formats");
        s.parse().unwrap_or(f64::NAN)
    }

    pub fn to_c64(&mut self, a: &HpComplex) -> Complex64 {
        Complex64::new(self.to_f64(&a.re), self.to_f64(&a.im))
    }
}
