//! Polar forms `A·w(f,g)` of sums of wave numbers.
//!
//! The production path for an N-term sum is [`polar_decompose_sum`]: the
//! carrier is the parameter mean and the amplitude is the direct sum divided
//! by the sampled carrier. [`amplitude_recursive`] evaluates the subset
//! recursion for the amplitude and serves as an independent check.

use std::collections::HashMap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multiplicative::{parameter_sums, MultWave};
use crate::periodic::{principal_arg, PeriodicSeq, Tolerance};
use crate::rational::{combined_period_usize, Rational};

/// Largest term count accepted by [`amplitude_recursive`].
pub const MAX_RECURSIVE_TERMS: usize = 10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolarForm {
    pub amplitude: PeriodicSeq,
    pub carrier: MultWave,
}

impl PolarForm {
    /// `amplitude ⊗ sample(carrier)`.
    pub fn reconstruct(&self) -> Result<PeriodicSeq> {
        Ok(self.amplitude.ew_product(&self.carrier.sample()?))
    }
}

/// A sampled complex phase `F` with `exp(iF) = C·w`.
#[derive(Clone, Debug, PartialEq)]
pub struct LogPhase {
    pub value: PeriodicSeq,
}

impl LogPhase {
    /// `F(ξ) = 2π(fξ + g) - i·ln C(ξ)` over the combined period of `C` and
    /// `w`. The angle is reduced modulo 2π exactly before scaling.
    pub fn from_term(coeff: &PeriodicSeq, w: &MultWave) -> Result<Self> {
        coeff.check_nonzero(&Tolerance::new(0.0, 0.0)?)?;
        let n = combined_period_usize(coeff.period(), w.period_usize()?);
        let value = PeriodicSeq::from_fn(n, |xi| {
            let angle = 2.0 * PI * w.phase(xi).fract().to_f64();
            Complex64::new(angle, 0.0) - Complex64::i() * coeff.at(xi).ln()
        })?;
        Ok(LogPhase { value })
    }

    pub fn unit(w: &MultWave) -> Result<Self> {
        Self::from_term(&PeriodicSeq::constant(Complex64::new(1.0, 0.0)), w)
    }

    pub fn constant(f: Complex64) -> Self {
        LogPhase { value: PeriodicSeq::constant(f) }
    }

    pub fn exp_i(&self) -> PeriodicSeq {
        self.value.map(|f| (Complex64::i() * f).exp())
    }
}

fn half_angle_amplitude(a: &MultWave, b: &MultWave, f: impl Fn(f64) -> Complex64) -> Result<PolarForm> {
    let half = Rational::new(1, 2)?;
    let df = &(a.f() - b.f()) * &half;
    let dg = &(a.g() - b.g()) * &half;
    let diff = MultWave::new(df.clone(), Rational::zero());
    let n = diff.period_usize()?;
    let amplitude = PeriodicSeq::from_fn(n, |xi| {
        let phi = &df.mul_int(xi) + &dg;
        f(2.0 * PI * phi.fract().to_f64())
    })?;
    let carrier = MultWave::new(&(a.f() + b.f()) * &half, &(a.g() + b.g()) * &half);
    Ok(PolarForm { amplitude, carrier })
}

/// `w(f1,g1) ⊕ w(f2,g2) = 2cos(2π(Δf ξ + Δg)) · w(mean f, mean g)` with
/// `Δ` the half-differences.
pub fn sum2_polar(a: &MultWave, b: &MultWave) -> Result<PolarForm> {
    half_angle_amplitude(a, b, |t| Complex64::new(2.0 * t.cos(), 0.0))
}

/// Difference counterpart of [`sum2_polar`], with amplitude `2i·sin(·)`.
pub fn diff2_polar(a: &MultWave, b: &MultWave) -> Result<PolarForm> {
    half_angle_amplitude(a, b, |t| Complex64::new(0.0, 2.0 * t.sin()))
}

/// Polar form of `Σ C_j·w_j`: carrier `w(Σf_j/N, Σg_j/N)`, amplitude the
/// direct sum divided by the sampled carrier. Phases where the direct sum
/// vanishes (within the default tolerance) get amplitude exactly 0.
pub fn polar_decompose_sum(terms: &[(PeriodicSeq, MultWave)]) -> Result<PolarForm> {
    if terms.is_empty() {
        return Err(Error::Argument("polar_decompose_sum needs at least one term".into()));
    }
    let direct = direct_sum(terms)?;
    let count = terms.len() as u64;
    let (fs, gs) = parameter_sums(terms.iter().map(|(_, w)| w));
    let carrier = MultWave::new(fs.div_int(count)?, gs.div_int(count)?);
    let carrier_samples = carrier.sample()?;
    let tol = Tolerance::default();
    let amplitude = direct.zip_with(&carrier_samples, |s, w| if tol.is_zero(s) { Complex64::new(0.0, 0.0) } else { s / w });
    Ok(PolarForm { amplitude, carrier })
}

/// `Σ C_j ⊗ sample(w_j)` over the combined period.
pub fn direct_sum(terms: &[(PeriodicSeq, MultWave)]) -> Result<PeriodicSeq> {
    let mut acc: Option<PeriodicSeq> = None;
    for (c, w) in terms {
        let t = c.ew_product(&w.sample()?);
        acc = Some(match acc {
            None => t,
            Some(a) => a.ew_sum(&t),
        });
    }
    acc.ok_or_else(|| Error::Argument("empty term list".into()))
}

/// Amplitude `A_N` of `Σ exp(iF_j) = A_N · exp(i ΣF_j / N)` by the subset
/// recursion, evaluated element-wise over the combined period.
///
/// For a subset `T` of size `k ≥ 3`, each member `m` gives the factor
/// `2cos((Σ_{T∖m} F − (k−1)F_m) / (2(k−1)) − i·ln A_{T∖m}^{1/2}) · A_{T∖m}^{1/2}`
/// and `A_T` is the principal-magnitude `k`th root of their product. The
/// `k`th root is taken on the branch nearest the single-factor estimates,
/// which is what keeps the next level of the recursion consistent.
pub fn amplitude_recursive(logs: &[LogPhase]) -> Result<PeriodicSeq> {
    let n = logs.len();
    if n == 0 || n > MAX_RECURSIVE_TERMS {
        return Err(Error::Argument(format!(
            "amplitude_recursive takes 1..={MAX_RECURSIVE_TERMS} terms, got {n}"
        )));
    }
    let period = logs.iter().fold(1, |p, l| combined_period_usize(p, l.value.period()));
    let mut out = Vec::with_capacity(period);
    for xi in 1..=period as i64 {
        let f: Vec<Complex64> = logs.iter().map(|l| l.value.at(xi)).collect();
        let mut memo = SubsetAmplitudes::new(&f, xi);
        out.push(memo.amplitude((1u32 << n) - 1)?);
    }
    PeriodicSeq::new(out)
}

/// Per-phase memo of `A_T` keyed by subset bitmask.
pub(crate) struct SubsetAmplitudes<'a> {
    f: &'a [Complex64],
    xi: i64,
    memo: HashMap<u32, Complex64>,
}

impl<'a> SubsetAmplitudes<'a> {
    pub(crate) fn new(f: &'a [Complex64], xi: i64) -> Self {
        SubsetAmplitudes { f, xi, memo: HashMap::new() }
    }

    fn members(mask: u32) -> Vec<usize> {
        (0..32).filter(|i| mask & (1 << i) != 0).collect()
    }

    pub(crate) fn amplitude(&mut self, mask: u32) -> Result<Complex64> {
        if let Some(&a) = self.memo.get(&mask) {
            return Ok(a);
        }
        let members = Self::members(mask);
        let a = match members.len() {
            0 => return Err(Error::Argument("empty subset".into())),
            1 => Complex64::new(1.0, 0.0),
            2 => 2.0 * ((self.f[members[0]] - self.f[members[1]]) / 2.0).cos(),
            k => {
                let sum_f: Complex64 = members.iter().map(|&j| self.f[j]).sum();
                let mut product = Complex64::new(1.0, 0.0);
                let mut estimates = Complex64::new(0.0, 0.0);
                for &m in &members {
                    let (factor, shift) = self.leave_one_out_factor(mask, m)?;
                    product *= factor;
                    // a single factor already equals S·exp(-i(μ_m + F_m)/2)
                    estimates += factor * (Complex64::i() * (shift - sum_f / k as f64)).exp();
                }
                nearest_root(product, k as u32, estimates / k as f64)
            }
        };
        self.memo.insert(mask, a);
        Ok(a)
    }

    /// `(2cos(x − i·ln A^{1/2})·A^{1/2}, (μ_m + F_m)/2)` for member `m` of `mask`.
    pub(crate) fn leave_one_out_factor(&mut self, mask: u32, m: usize) -> Result<(Complex64, Complex64)> {
        let (half_log, x, shift) = self.factor_parts(mask, m)?;
        let root_a = half_log.exp();
        let factor = 2.0 * (x - Complex64::i() * half_log).cos() * root_a;
        Ok((factor, shift))
    }

    /// `(½·ln A_{T∖m}, x_m, (μ_m + F_m)/2)` for member `m` of `mask`.
    pub(crate) fn factor_parts(&mut self, mask: u32, m: usize) -> Result<(Complex64, Complex64, Complex64)> {
        let rest = mask & !(1 << m);
        let rest_members = Self::members(rest);
        let k1 = rest_members.len() as f64;
        let a_rest = self.amplitude(rest)?;
        let scale: f64 = rest_members.iter().map(|&j| (Complex64::i() * self.f[j]).exp().norm()).sum();
        if a_rest.norm() <= 1e-12 * scale {
            return Err(Error::DegenerateSubset {
                subset: rest_members.iter().map(|j| j + 1).collect(),
                xi: self.xi,
            });
        }
        let sum_rest: Complex64 = rest_members.iter().map(|&j| self.f[j]).sum();
        let x = (sum_rest - k1 * self.f[m]) / (2.0 * k1);
        let shift = (sum_rest / k1 + self.f[m]) / 2.0;
        Ok((a_rest.ln() / 2.0, x, shift))
    }
}

/// The `k`th root of `z` closest to `hint`.
fn nearest_root(z: Complex64, k: u32, hint: Complex64) -> Complex64 {
    let base = crate::periodic::principal_root(z, k);
    let step = Complex64::from_polar(1.0, 2.0 * PI / k as f64);
    let mut best = base;
    let mut r = base;
    for _ in 1..k {
        r *= step;
        if (r - hint).norm() < (best - hint).norm() {
            best = r;
        }
    }
    best
}

/// `2cos((1/i)·ln(a/b)^{1/2})·(ab)^{1/2}` with both half-logs taken from the
/// same principal logs `L_a`, `L_b`, which makes the result equal `a ⊕ b`.
pub fn sum_via_products(a: &PeriodicSeq, b: &PeriodicSeq) -> Result<PeriodicSeq> {
    via_products(a, b, |x| 2.0 * x.cos())
}

/// Difference counterpart of [`sum_via_products`], with `2i·sin`.
pub fn diff_via_products(a: &PeriodicSeq, b: &PeriodicSeq) -> Result<PeriodicSeq> {
    via_products(a, b, |x| 2.0 * Complex64::i() * x.sin())
}

fn via_products(a: &PeriodicSeq, b: &PeriodicSeq, trig: impl Fn(Complex64) -> Complex64) -> Result<PeriodicSeq> {
    let exact_zero = Tolerance::new(0.0, 0.0)?;
    a.check_nonzero(&exact_zero).map_err(|e| Error::Domain(format!("left operand: {e}")))?;
    b.check_nonzero(&exact_zero).map_err(|e| Error::Domain(format!("right operand: {e}")))?;
    Ok(a.zip_with(b, |x, y| {
        let (la, lb) = (x.ln(), y.ln());
        let half_diff = (la - lb) / 2.0;
        let half_sum = (la + lb) / 2.0;
        trig(-Complex64::i() * half_diff) * half_sum.exp()
    }))
}

/// Element-wise modulus and principal argument in `(-π, π]`; `arg(0) = 0`.
pub fn magnitude_form(a: &PeriodicSeq) -> (PeriodicSeq, PeriodicSeq) {
    let mags = a.map(|c| Complex64::new(c.norm(), 0.0));
    let args = a.map(|c| Complex64::new(principal_arg(c), 0.0));
    (mags, args)
}

/// Windowed RMS distance between `exp(2πi(f_n ξ + g_n))` and the real-parameter
/// limit `exp(2πi(f0 ξ + g0))` over `ξ = 1..=window`, one value per `n`.
pub fn cauchy_demo(
    f_seq: &[Rational],
    g_seq: &[Rational],
    f0: f64,
    g0: f64,
    window: usize,
) -> Result<Vec<f64>> {
    if window == 0 {
        return Err(Error::Argument("window must be >= 1".into()));
    }
    if f_seq.len() != g_seq.len() {
        return Err(Error::Argument(format!(
            "parameter sequences differ in length: {} vs {}",
            f_seq.len(),
            g_seq.len()
        )));
    }
    let limit = |xi: i64| {
        let t = (f0 * xi as f64 + g0).rem_euclid(1.0);
        Complex64::from_polar(1.0, 2.0 * PI * t)
    };
    Ok(f_seq
        .iter()
        .zip(g_seq)
        .map(|(f, g)| {
            let w = MultWave::new(f.clone(), g.clone());
            let s: f64 = (1..=window as i64).map(|xi| (w.at(xi) - limit(xi)).norm_sqr()).sum();
            (s / window as f64).sqrt()
        })
        .collect())
}
