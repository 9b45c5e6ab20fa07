//! Finite principal sequences of complex values and their element-wise
//! operators.
//!
//! A [`PeriodicSeq`] of period `λ` stores the elements at phase indices
//! `ξ = 1..=λ`; the element at any `ξ ∈ Z` is `values[(ξ - 1) mod λ]`.
//! Binary operators first extend both operands to the combined period.
//! That period is a valid period of the result but not always the minimal
//! one; call [`PeriodicSeq::reduce_period`] to minimize explicitly.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::combined_period_usize;

/// Absolute and relative slack for floating comparisons.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub abs_eps: f64,
    pub rel_eps: f64,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { abs_eps: 1e-9, rel_eps: 1e-9 }
    }
}

impl Tolerance {
    pub fn new(abs_eps: f64, rel_eps: f64) -> Result<Self> {
        let ok = |x: f64| x.is_finite() && x >= 0.0;
        if !ok(abs_eps) || !ok(rel_eps) {
            return Err(Error::Argument(format!(
                "tolerances must be finite and nonnegative, got abs={abs_eps} rel={rel_eps}"
            )));
        }
        Ok(Tolerance { abs_eps, rel_eps })
    }

    pub fn uniform(eps: f64) -> Result<Self> {
        Self::new(eps, eps)
    }

    pub fn close(&self, a: Complex64, b: Complex64) -> bool {
        (a - b).norm() <= self.abs_eps + self.rel_eps * a.norm().max(b.norm())
    }

    pub fn is_zero(&self, c: Complex64) -> bool {
        c.norm() <= self.abs_eps
    }
}

/// Arithmetic precision for the kernels that offer a choice.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Precision {
    #[default]
    Double,
    /// Roughly 57 significant decimal digits.
    High,
}

/// Principal `n`th root: argument in `(-π/n, π/n]`, and `0` maps to `0`.
pub fn principal_root(c: Complex64, n: u32) -> Complex64 {
    if n == 1 || c == Complex64::new(0.0, 0.0) {
        return c;
    }
    let (r, theta) = c.to_polar();
    let theta = if theta <= -PI { PI } else { theta };
    Complex64::from_polar(r.powf(1.0 / n as f64), theta / n as f64)
}

/// Principal argument in `(-π, π]`, with `arg(0) = 0`.
pub fn principal_arg(c: Complex64) -> f64 {
    if c.re == 0.0 && c.im == 0.0 {
        return 0.0;
    }
    let theta = c.im.atan2(c.re);
    if theta <= -PI {
        PI
    } else {
        theta
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PeriodicSeq {
    values: Vec<Complex64>,
}

impl PeriodicSeq {
    pub fn new(values: Vec<Complex64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Argument("a periodic sequence needs period >= 1".into()));
        }
        Ok(PeriodicSeq { values })
    }

    pub fn from_real(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn constant(c: Complex64) -> Self {
        PeriodicSeq { values: vec![c] }
    }

    pub fn zeros(period: usize) -> Self {
        PeriodicSeq { values: vec![Complex64::new(0.0, 0.0); period.max(1)] }
    }

    pub fn from_fn(period: usize, f: impl FnMut(i64) -> Complex64) -> Result<Self> {
        Self::new((1..=period as i64).map(f).collect())
    }

    pub fn period(&self) -> usize {
        self.values.len()
    }

    /// Principal sequence, `values()[k]` holds phase `ξ = k + 1`.
    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    /// Element at an arbitrary phase index under the extension rule.
    pub fn at(&self, xi: i64) -> Complex64 {
        let n = self.period() as i64;
        self.values[(xi - 1).rem_euclid(n) as usize]
    }

    /// Re-window to `period`, which must be a multiple of the current period.
    pub fn extend_to(&self, period: usize) -> Self {
        debug_assert!(period.is_multiple_of(self.period()));
        PeriodicSeq { values: (1..=period as i64).map(|xi| self.at(xi)).collect() }
    }

    /// Extend both sequences to their combined period.
    pub fn align(&self, other: &PeriodicSeq) -> (PeriodicSeq, PeriodicSeq) {
        let p = combined_period_usize(self.period(), other.period());
        (self.extend_to(p), other.extend_to(p))
    }

    pub fn zip_with(
        &self,
        other: &PeriodicSeq,
        mut f: impl FnMut(Complex64, Complex64) -> Complex64,
    ) -> PeriodicSeq {
        let p = combined_period_usize(self.period(), other.period());
        PeriodicSeq { values: (1..=p as i64).map(|xi| f(self.at(xi), other.at(xi))).collect() }
    }

    pub fn map(&self, f: impl FnMut(Complex64) -> Complex64) -> PeriodicSeq {
        PeriodicSeq { values: self.values.iter().copied().map(f).collect() }
    }

    pub fn ew_product(&self, other: &PeriodicSeq) -> PeriodicSeq {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn ew_sum(&self, other: &PeriodicSeq) -> PeriodicSeq {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn ew_difference(&self, other: &PeriodicSeq) -> PeriodicSeq {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn ew_quotient(&self, other: &PeriodicSeq) -> Result<PeriodicSeq> {
        self.ew_quotient_with(other, &Tolerance::default())
    }

    /// Division by a sequence with any element within `tol.abs_eps` of zero
    /// is refused, naming the first offending phase.
    pub fn ew_quotient_with(&self, other: &PeriodicSeq, tol: &Tolerance) -> Result<PeriodicSeq> {
        other.check_nonzero(tol)?;
        Ok(self.zip_with(other, |a, b| a / b))
    }

    pub fn check_nonzero(&self, tol: &Tolerance) -> Result<()> {
        match self.values.iter().position(|&c| tol.is_zero(c)) {
            Some(k) => Err(Error::DivisionByZeroElement { xi: k as i64 + 1 }),
            None => Ok(()),
        }
    }

    pub fn conj(&self) -> PeriodicSeq {
        self.map(|c| c.conj())
    }

    pub fn orth_conj(&self) -> PeriodicSeq {
        self.map(|c| -c.conj())
    }

    pub fn root_n(&self, n: u32) -> Result<PeriodicSeq> {
        if n == 0 {
            return Err(Error::Argument("root index must be >= 1".into()));
        }
        Ok(self.map(|c| principal_root(c, n)))
    }

    pub fn inverse(&self) -> Result<PeriodicSeq> {
        self.inverse_with(&Tolerance::default())
    }

    /// `conj(a) / (a * conj(a))`, the reciprocal by way of the squared modulus.
    pub fn inverse_with(&self, tol: &Tolerance) -> Result<PeriodicSeq> {
        let conj = self.conj();
        let modulus_sq = self.ew_product(&conj);
        conj.ew_quotient_with(&modulus_sq, tol)
    }

    /// Root mean square of the moduli over the principal sequence.
    pub fn norm(&self) -> f64 {
        if let [c] = self.values.as_slice() {
            return c.norm();
        }
        let s: f64 = self.values.iter().map(|c| c.norm_sqr()).sum();
        (s / self.period() as f64).sqrt()
    }

    /// Cyclic shift; the output element at `ξ` is the input element at `ξ + shift`.
    pub fn rotate(&self, shift: i64) -> PeriodicSeq {
        PeriodicSeq { values: (1..=self.period() as i64).map(|xi| self.at(xi + shift)).collect() }
    }

    /// Shrink to the smallest divisor `d` of the period such that the
    /// sequence is `d`-periodic within `tol`.
    pub fn reduce_period(&self, tol: &Tolerance) -> PeriodicSeq {
        let n = self.period();
        for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
            let periodic = (d..n).all(|k| tol.close(self.values[k], self.values[k % d]));
            if periodic {
                return PeriodicSeq { values: self.values[..d].to_vec() };
            }
        }
        self.clone()
    }

    pub fn sum_over_period(&self) -> Complex64 {
        self.values.iter().sum()
    }

    pub fn approx_eq(&self, other: &PeriodicSeq, tol: &Tolerance) -> bool {
        let (a, b) = self.align(other);
        a.values.iter().zip(&b.values).all(|(&x, &y)| tol.close(x, y))
    }

    /// Largest element-wise distance after alignment.
    pub fn max_abs_diff(&self, other: &PeriodicSeq) -> f64 {
        let (a, b) = self.align(other);
        a.values.iter().zip(&b.values).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
    }

    pub fn dilate(&self, rho: Complex64) -> PeriodicSeq {
        self.map(|c| rho * c)
    }

    pub fn translate(&self, c: Complex64) -> PeriodicSeq {
        self.map(|x| x + c)
    }
}

impl Add for &PeriodicSeq {
    type Output = PeriodicSeq;
    fn add(self, rhs: &PeriodicSeq) -> PeriodicSeq {
        self.ew_sum(rhs)
    }
}

impl Sub for &PeriodicSeq {
    type Output = PeriodicSeq;
    fn sub(self, rhs: &PeriodicSeq) -> PeriodicSeq {
        self.ew_difference(rhs)
    }
}

impl Mul for &PeriodicSeq {
    type Output = PeriodicSeq;
    fn mul(self, rhs: &PeriodicSeq) -> PeriodicSeq {
        self.ew_product(rhs)
    }
}

impl Neg for &PeriodicSeq {
    type Output = PeriodicSeq;
    fn neg(self) -> PeriodicSeq {
        self.map(|c| -c)
    }
}

#[derive(Serialize, Deserialize)]
struct SeqJson {
    period: usize,
    values: Vec<[f64; 2]>,
}

impl Serialize for PeriodicSeq {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SeqJson { period: self.period(), values: self.values.iter().map(|c| [c.re, c.im]).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for PeriodicSeq {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = SeqJson::deserialize(d)?;
        if raw.period != raw.values.len() {
            return Err(D::Error::custom(format!(
                "period {} does not match {} values",
                raw.period,
                raw.values.len()
            )));
        }
        PeriodicSeq::new(raw.values.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
            .map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn seq(v: &[Complex64]) -> PeriodicSeq {
        PeriodicSeq::new(v.to_vec()).unwrap()
    }

    fn real(v: &[f64]) -> PeriodicSeq {
        PeriodicSeq::from_real(v).unwrap()
    }

    fn quarter() -> PeriodicSeq {
        seq(&[c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0), c(1.0, 0.0)])
    }

    #[test]
    fn empty_sequence_rejected() {
        assert!(PeriodicSeq::new(vec![]).is_err());
    }

    #[test]
    fn align_periods() {
        let (a, b) = real(&[1.0, 2.0]).align(&real(&[1.0, 2.0, 3.0]));
        assert_eq!((a.period(), b.period()), (6, 6));
        let (a, b) = real(&[1.0; 4]).align(&real(&[2.0; 4]));
        assert_eq!((a.period(), b.period()), (4, 4));
        let (a, b) = real(&[7.0]).align(&real(&[1.0, 2.0, 3.0, 4.0, 5.0]));
        assert_eq!((a.period(), b.period()), (5, 5));
        assert_eq!(a.values(), &[c(7.0, 0.0); 5]);
    }

    #[test]
    fn element_wise_examples() {
        let s = real(&[1.0, -1.0]).ew_sum(&real(&[1.0, 1.0, 1.0]));
        assert_eq!(s, real(&[2.0, 0.0, 2.0, 0.0, 2.0, 0.0]));
        let p = quarter().ew_product(&quarter().conj());
        assert!(p.approx_eq(&real(&[1.0; 4]), &Tolerance::default()));
        let q = real(&[1.0, 2.0]).ew_quotient(&real(&[2.0])).unwrap();
        assert_eq!(q, real(&[0.5, 1.0]));
    }

    #[test]
    fn quotient_names_zero_phase() {
        let err = real(&[1.0]).ew_quotient(&real(&[1.0, 2.0, 0.0])).unwrap_err();
        assert_eq!(err, Error::DivisionByZeroElement { xi: 3 });
        assert!(real(&[3.0, 0.0]).inverse().is_err());
    }

    #[test]
    fn conjugates() {
        assert_eq!(quarter().conj(), seq(&[c(0.0, -1.0), c(-1.0, 0.0), c(0.0, 1.0), c(1.0, 0.0)]));
        assert_eq!(real(&[1.0]).orth_conj(), real(&[-1.0]));
        let a = seq(&[c(1.5, -2.0), c(0.25, 3.0)]);
        assert_eq!(a.orth_conj().orth_conj(), a);
    }

    #[test]
    fn principal_roots() {
        let r = real(&[-1.0]).root_n(2).unwrap();
        assert!(r.approx_eq(&seq(&[c(0.0, 1.0)]), &Tolerance::default()));
        let a = seq(&[c(0.3, -0.7), c(-2.0, 1.0)]);
        assert_eq!(a.root_n(1).unwrap(), a);
        assert!(real(&[1.0, 16.0]).root_n(4).unwrap().approx_eq(&real(&[1.0, 2.0]), &Tolerance::default()));
        assert_eq!(real(&[0.0]).root_n(3).unwrap(), real(&[0.0]));
        // -1 with a negative-zero imaginary part still takes the upper branch
        assert!(principal_root(c(-1.0, -0.0), 2).im > 0.0);
    }

    #[test]
    fn inverse_examples() {
        let tol = Tolerance::default();
        assert!(real(&[2.0]).inverse().unwrap().approx_eq(&real(&[0.5]), &tol));
        assert!(quarter().inverse().unwrap().approx_eq(&quarter().conj(), &tol));
        let a = seq(&[c(1.0, 2.0), c(-3.0, 0.5), c(0.1, 0.0)]);
        assert!(a.ew_product(&a.inverse().unwrap()).approx_eq(&real(&[1.0]), &tol));
    }

    #[test]
    fn norm_examples() {
        assert!((quarter().norm() - 1.0).abs() < 1e-12);
        let z = c(3.0, -4.0);
        assert_eq!(seq(&[z, z, z]).norm(), 5.0);
        assert!((real(&[1.0, 0.0]).norm() - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn rotations() {
        assert_eq!(quarter().rotate(4), quarter());
        assert_eq!(real(&[1.0, 2.0, 3.0]).rotate(1), real(&[2.0, 3.0, 1.0]));
        assert_eq!(real(&[1.0, 2.0, 3.0]).rotate(-1), real(&[3.0, 1.0, 2.0]));
        let a = real(&[1.0, 2.0]);
        let b = real(&[5.0, 6.0, 7.0]);
        assert_eq!(a.ew_sum(&b).rotate(2), a.rotate(2).ew_sum(&b.rotate(2)));
    }

    #[test]
    fn reduce_period_examples() {
        let tol = Tolerance::default();
        assert_eq!(real(&[1.0; 4]).reduce_period(&tol), real(&[1.0]));
        assert_eq!(quarter().reduce_period(&tol), quarter());
        let half = real(&[-1.0, 1.0]);
        let sq = half.ew_product(&half);
        assert_eq!(sq.period(), 2);
        assert_eq!(sq.reduce_period(&tol), real(&[1.0]));
    }

    #[test]
    fn misc_ops() {
        assert!(quarter().sum_over_period().norm() < 1e-15);
        assert_eq!(real(&[1.0, 2.0]).dilate(c(3.0, 0.0)), real(&[3.0, 6.0]));
        assert_eq!(real(&[0.0]).translate(c(5.0, 0.0)), real(&[5.0]));
        assert!(real(&[1.0]).approx_eq(&real(&[1.0, 1.0 + 1e-12]), &Tolerance::default()));
        assert!(!real(&[1.0]).approx_eq(&real(&[1.0, 1.1]), &Tolerance::default()));
    }

    #[test]
    fn tolerance_validation() {
        assert!(Tolerance::new(-1.0, 0.0).is_err());
        assert!(Tolerance::new(f64::NAN, 0.0).is_err());
        assert!(Tolerance::new(0.0, 1e-3).is_ok());
    }

    #[test]
    fn json_shape() {
        let j = serde_json::to_string(&seq(&[c(1.0, 0.0), c(0.0, -1.5)])).unwrap();
        assert_eq!(j, r#"{"period":2,"values":[[1.0,0.0],[0.0,-1.5]]}"#);
        let back: PeriodicSeq = serde_json::from_str(&j).unwrap();
        assert_eq!(back.period(), 2);
        assert!(serde_json::from_str::<PeriodicSeq>(r#"{"period":3,"values":[[1,0]]}"#).is_err());
    }
}
