//! Integral wave numbers (cumulative phase sums), the recursive n-gon
//! construction, and particulate wave numbers over finite windows.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::multiplicative::MultWave;
use crate::periodic::{PeriodicSeq, Tolerance};
use crate::rational::Rational;

/// Partial sums over the principal window: element `k` is `Σ_{j≤k} s(j)`.
pub fn integral(s: &PeriodicSeq) -> PeriodicSeq {
    let mut acc = Complex64::new(0.0, 0.0);
    let values = s
        .values()
        .iter()
        .map(|v| {
            acc += v;
            acc
        })
        .collect();
    PeriodicSeq::new(values).expect("same length as input")
}

/// `|I_k|` for `k = 1..=n` where `I = integral(sample(w))`.
pub fn integral_magnitudes(w: &MultWave) -> Result<Vec<f64>> {
    let n = w.period_usize()?;
    if n < 2 {
        return Err(Error::Argument(format!("integral magnitudes need period >= 2, got {n}")));
    }
    Ok(integral(&w.sample()?).values().iter().map(|c| c.norm()).collect())
}

/// Closed form `|sin(π f k) / sin(π f)|` for the `k`th partial sum of `w(f, g)`.
pub fn integral_magnitude_closed_form(f: &Rational, k: i64) -> Result<f64> {
    if f.is_integer() {
        return Err(Error::Domain("closed form needs a non-integer frequency".into()));
    }
    let denom = (PI * f.fract().to_f64()).sin();
    let num = (PI * f.mul_int(k).fract().to_f64()).sin();
    Ok((num / denom).abs())
}

pub fn is_zero_sum(s: &PeriodicSeq, tol: f64) -> bool {
    s.sum_over_period().norm() <= tol
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NGonTrace {
    pub iteration: usize,
    pub vertices: PeriodicSeq,
    pub edge_norm: f64,
    pub vertex_norm: f64,
}

fn mean(s: &PeriodicSeq) -> Complex64 {
    s.sum_over_period() / s.period() as f64
}

fn trace(iteration: usize, vertices: PeriodicSeq) -> NGonTrace {
    let centre = mean(&vertices);
    let vertex_norm = vertices.translate(-centre).norm();
    let edge_norm = (vertices.at(2) - vertices.at(1)).norm();
    NGonTrace { iteration, vertices, edge_norm, vertex_norm }
}

/// Iteration 0 is `w(1/n,0)` itself (edges `2 sin(π/n)`, vertex norm 1).
/// Each later iteration integrates the previous polygon re-centred at the
/// origin, so its edges have the previous vertex norm as length and its
/// vertices start a polygon through the origin.
pub fn iterate_ngon(n: usize, t_max: usize) -> Result<Vec<NGonTrace>> {
    if n < 3 {
        return Err(Error::Argument(format!("n-gon needs n >= 3, got {n}")));
    }
    let w = MultWave::new(Rational::new(1, n as i64)?, Rational::zero());
    let mut out = vec![trace(0, w.sample()?)];
    for t in 1..=t_max {
        let prev = &out[t - 1].vertices;
        let centred = prev.translate(-mean(prev));
        out.push(trace(t, integral(&centred)));
    }
    Ok(out)
}

/// A finite, aperiodic run of values at `ξ = lo..=hi`.
#[derive(Clone, Debug, PartialEq)]
pub struct WindowedSeq {
    lo: i64,
    hi: i64,
    values: Vec<Complex64>,
}

impl WindowedSeq {
    pub fn new(lo: i64, hi: i64, values: Vec<Complex64>) -> Result<Self> {
        if lo > hi {
            return Err(Error::Argument(format!("window [{lo}, {hi}] is empty")));
        }
        if values.len() as i64 != hi - lo + 1 {
            return Err(Error::Argument(format!(
                "window [{lo}, {hi}] needs {} values, got {}",
                hi - lo + 1,
                values.len()
            )));
        }
        Ok(WindowedSeq { lo, hi, values })
    }

    pub fn from_fn(lo: i64, hi: i64, f: impl FnMut(i64) -> Complex64) -> Result<Self> {
        if lo > hi {
            return Err(Error::Argument(format!("window [{lo}, {hi}] is empty")));
        }
        Self::new(lo, hi, (lo..=hi).map(f).collect())
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    /// Value at `ξ`, or `None` outside the window.
    pub fn at(&self, xi: i64) -> Option<Complex64> {
        (self.lo..=self.hi).contains(&xi).then(|| self.values[(xi - self.lo) as usize])
    }

    /// Phases with a nonzero value.
    pub fn support(&self) -> Vec<i64> {
        (self.lo..=self.hi).zip(&self.values).filter(|(_, v)| v.norm() != 0.0).map(|(xi, _)| xi).collect()
    }

    fn zip_with(&self, other: &WindowedSeq, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        if (self.lo, self.hi) != (other.lo, other.hi) {
            return Err(Error::Argument(format!(
                "windows differ: [{}, {}] vs [{}, {}]",
                self.lo, self.hi, other.lo, other.hi
            )));
        }
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect();
        Ok(WindowedSeq { lo: self.lo, hi: self.hi, values })
    }

    pub fn ew_product(&self, other: &WindowedSeq) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn ew_sum(&self, other: &WindowedSeq) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        WindowedSeq { lo: self.lo, hi: self.hi, values: self.values.iter().map(|v| v * c).collect() }
    }
}

#[derive(Serialize, Deserialize)]
struct WindowJson {
    lo: i64,
    hi: i64,
    values: Vec<[f64; 2]>,
}

impl Serialize for WindowedSeq {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        WindowJson { lo: self.lo, hi: self.hi, values: self.values.iter().map(|c| [c.re, c.im]).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for WindowedSeq {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = WindowJson::deserialize(d)?;
        WindowedSeq::new(raw.lo, raw.hi, raw.values.into_iter().map(|[re, im]| Complex64::new(re, im)).collect())
            .map_err(D::Error::custom)
    }
}

fn check_basis_n(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::Argument("basis index n must be >= 1".into()));
    }
    Ok(())
}

fn multiple_mask(n: u64, lo: i64, hi: i64, on_multiple: f64, off: f64) -> Result<WindowedSeq> {
    check_basis_n(n)?;
    WindowedSeq::from_fn(lo, hi, |xi| {
        let v = if xi.rem_euclid(n as i64) == 0 { on_multiple } else { off };
        Complex64::new(v, 0.0)
    })
}

/// Co-number of the basis `e(1/n)` over `[lo, hi]`: 0 at multiples of `n`, 1 elsewhere.
pub fn co_basis_window(n: u64, lo: i64, hi: i64) -> Result<WindowedSeq> {
    multiple_mask(n, lo, hi, 0.0, 1.0)
}

/// Re-number of the basis `e(1/n)` over `[lo, hi]`: 1 at multiples of `n`, 0 elsewhere.
pub fn re_basis_window(n: u64, lo: i64, hi: i64) -> Result<WindowedSeq> {
    multiple_mask(n, lo, hi, 1.0, 0.0)
}

/// `∘e(1/n) ⊗ Π_{j=n+1..W} ∗e(1/j)` over `[−W, W]`. Factors with `j > W`
/// are identically 1 on that window and are omitted.
pub fn particulate_unit(n: u64, window: u64) -> Result<WindowedSeq> {
    check_basis_n(n)?;
    if window < n + 1 {
        return Err(Error::Argument(format!("window bound {window} must be >= n+1 = {}", n + 1)));
    }
    let w = window as i64;
    let mut acc = re_basis_window(n, -w, w)?;
    for j in n + 1..=window {
        acc = acc.ew_product(&co_basis_window(j, -w, w)?)?;
    }
    Ok(acc)
}

/// `m`-fold sum of [`particulate_unit`].
pub fn particulate_scale(n: u64, m: u64, window: u64) -> Result<WindowedSeq> {
    if m == 0 {
        return Err(Error::Argument("scale m must be >= 1".into()));
    }
    let unit = particulate_unit(n, window)?;
    let mut acc = unit.clone();
    for _ in 1..m {
        acc = acc.ew_sum(&unit)?;
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Plus,
    Minus,
}

/// `value` at `ξ = +n` (or `−n`) only: the symmetric particulate number
/// scaled by `value` and masked to one sign of `ξ`.
pub fn particulate_one_sided(n: u64, value: Complex64, side: Side, window: u64) -> Result<WindowedSeq> {
    let unit = particulate_unit(n, window)?;
    let w = window as i64;
    let mask = WindowedSeq::from_fn(-w, w, |xi| {
        let keep = match side {
            Side::Plus => xi > 0,
            Side::Minus => xi < 0,
        };
        Complex64::new(if keep { 1.0 } else { 0.0 }, 0.0)
    })?;
    Ok(unit.ew_product(&mask)?.scale(value))
}

/// Element-wise check that `s` is within `tol` of the all-`c` sequence.
pub fn is_constant_window(s: &WindowedSeq, c: Complex64, tol: &Tolerance) -> bool {
    s.values().iter().all(|&v| tol.close(v, c))
}
