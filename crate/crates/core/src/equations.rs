//! Equations in invertible wave numbers: a residual checker that arbitrates
//! every solver, the two-term cancellation family, factored zero conditions
//! for N-term sums, and Möbius fixed points.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::multiplicative::MultWave;
use crate::periodic::{PeriodicSeq, Tolerance};
use crate::polar::{direct_sum, LogPhase, SubsetAmplitudes};
use crate::rational::{combined_period_usize, Rational};

/// RMS norm of `Σ C_j ⊗ sample(w_j)`; zero iff the equation holds.
pub fn residual(terms: &[(PeriodicSeq, MultWave)]) -> Result<f64> {
    Ok(direct_sum(terms)?.norm())
}

fn unit_terms(ws: &[MultWave]) -> Vec<(PeriodicSeq, MultWave)> {
    ws.iter().map(|w| (PeriodicSeq::constant(Complex64::new(1.0, 0.0)), w.clone())).collect()
}

/// All `w(f1, g1)` with `w(f1,g1) ⊕ w(f2,g2) = 0`:
/// `f1 = f2 + df + k`, `g1 = g2 + dg + l` for integers `k`, `l`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoTermSolution {
    pub f2: Rational,
    pub g2: Rational,
    pub df: Rational,
    pub dg: Rational,
}

impl TwoTermSolution {
    /// The exact first term for integer offsets `(k, l)`, without reducing
    /// `g` modulo 1 so that `member(k, l).1` shows the offset.
    pub fn member(&self, k: i64, l: i64) -> (Rational, Rational) {
        let f1 = &(&self.f2 + &self.df) + &Rational::from(k);
        let g1 = &(&self.g2 + &self.dg) + &Rational::from(l);
        (f1, g1)
    }

    pub fn member_wave(&self, k: i64, l: i64) -> MultWave {
        let (f, g) = self.member(k, l);
        MultWave::new(f, g)
    }

    /// `true` when `(f1, g1)` lies in the family.
    pub fn contains(&self, f1: &Rational, g1: &Rational) -> bool {
        (&(f1 - &self.f2) - &self.df).is_integer() && (&(g1 - &self.g2) - &self.dg).is_integer()
    }

    pub fn second(&self) -> MultWave {
        MultWave::new(self.f2.clone(), self.g2.clone())
    }

    /// Residual of `w(f1,g1) ⊕ w(f2,g2)` for an arbitrary candidate.
    pub fn residual_of(&self, f1: &Rational, g1: &Rational) -> Result<f64> {
        residual(&unit_terms(&[MultWave::new(f1.clone(), g1.clone()), self.second()]))
    }
}

/// `2cos((F1−F2)/2) = 0` in cycles: `f1 − f2 ∈ Z`, `g1 − g2 ∈ 1/2 + Z`.
pub fn solve_two_term(f2: &Rational, g2: &Rational) -> TwoTermSolution {
    TwoTermSolution {
        f2: f2.clone(),
        g2: g2.clone(),
        df: Rational::zero(),
        dg: Rational::new(1, 2).expect("nonzero denominator"),
    }
}

/// Leave-one-out factors of an N-term sum.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FactoredConditions {
    /// Factor `m`: `A_{(m)}^{1/2} · cos(x_m − i ln A_{(m)}^{1/2})`, with
    /// `A_{(m)}` the amplitude of the sum without term `m`.
    pub factors: Vec<PeriodicSeq>,
    /// Per factor, the phases where it vanishes within tolerance.
    pub vanishing: Vec<Vec<i64>>,
    pub residual: f64,
    /// Largest element-wise gap between `Π_m (2·factor_m) · e^{iΣF}` and
    /// `(Σ e^{iF_j})^N`.
    pub consistency_error: f64,
}

impl FactoredConditions {
    /// Phases at which some factor vanishes.
    pub fn solution_phases(&self) -> Vec<i64> {
        let mut all: Vec<i64> = self.vanishing.iter().flatten().copied().collect();
        all.sort_unstable();
        all.dedup();
        all
    }
}

pub const MIN_FACTORED_TERMS: usize = 3;
pub const MAX_FACTORED_TERMS: usize = 8;

/// Factors the sum `Σ C_j w_j` at every phase. Each factor times a unit
/// carrier equals the full sum, so the equation holds at a phase exactly
/// when the factors vanish there.
pub fn factored_conditions(terms: &[(PeriodicSeq, MultWave)], tol: &Tolerance) -> Result<FactoredConditions> {
    let n = terms.len();
    if !(MIN_FACTORED_TERMS..=MAX_FACTORED_TERMS).contains(&n) {
        return Err(Error::Argument(format!(
            "factored conditions take {MIN_FACTORED_TERMS}..={MAX_FACTORED_TERMS} terms, got {n}"
        )));
    }
    let logs = terms.iter().map(|(c, w)| LogPhase::from_term(c, w)).collect::<Result<Vec<_>>>()?;
    let period = logs.iter().fold(1, |p, l| combined_period_usize(p, l.value.period()));
    let full = (1u32 << n) - 1;
    let mut columns = vec![Vec::with_capacity(period); n];
    let mut consistency_error = 0f64;
    for xi in 1..=period as i64 {
        let f: Vec<Complex64> = logs.iter().map(|l| l.value.at(xi)).collect();
        let mut memo = SubsetAmplitudes::new(&f, xi);
        let mut product = Complex64::new(1.0, 0.0);
        for (m, column) in columns.iter_mut().enumerate() {
            let (half_log, x, _) = memo.factor_parts(full, m)?;
            let factor = half_log.exp() * (x - Complex64::i() * half_log).cos();
            product *= 2.0 * factor;
            column.push(factor);
        }
        let sum_f: Complex64 = f.iter().sum();
        let direct: Complex64 = f.iter().map(|&fj| (Complex64::i() * fj).exp()).sum();
        let lhs = product * (Complex64::i() * sum_f).exp();
        consistency_error = consistency_error.max((lhs - direct.powu(n as u32)).norm());
    }
    let factors = columns.into_iter().map(PeriodicSeq::new).collect::<Result<Vec<_>>>()?;
    let vanishing = factors
        .iter()
        .map(|s| (1..=period as i64).filter(|&xi| tol.is_zero(s.at(xi))).collect())
        .collect();
    Ok(FactoredConditions { factors, vanishing, residual: residual(terms)?, consistency_error })
}

/// Fixed points `ω = (Aω + B)/(Cω + D)`, i.e. `Cω² + (D−A)ω − B = 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadraticRoots {
    pub plus: PeriodicSeq,
    pub minus: PeriodicSeq,
    pub residual_plus: f64,
    pub residual_minus: f64,
    /// Phases where the discriminant vanishes and the roots coincide.
    pub double_root_phases: Vec<i64>,
    /// Phases where `Cω + D` vanishes at a root, so the map itself is undefined there.
    pub poles: Vec<i64>,
}

/// `ω = (−(D−A) ± sqrt((D−A)² + 4BC)) / 2C` element-wise, principal square root.
pub fn mobius_fixed_points(
    a: &PeriodicSeq,
    b: &PeriodicSeq,
    c: &PeriodicSeq,
    d: &PeriodicSeq,
    tol: &Tolerance,
) -> Result<QuadraticRoots> {
    c.check_nonzero(tol)?;
    let period = [a, b, c, d].iter().fold(1, |p, s| combined_period_usize(p, s.period()));
    let mut plus = Vec::with_capacity(period);
    let mut minus = Vec::with_capacity(period);
    let mut double_root_phases = Vec::new();
    let mut poles = Vec::new();
    for xi in 1..=period as i64 {
        let (av, bv, cv, dv) = (a.at(xi), b.at(xi), c.at(xi), d.at(xi));
        let lin = dv - av;
        let disc = lin * lin + 4.0 * bv * cv;
        let root = disc.sqrt();
        if tol.is_zero(disc) {
            double_root_phases.push(xi);
        }
        let (p, m) = ((-lin + root) / (2.0 * cv), (-lin - root) / (2.0 * cv));
        if tol.is_zero(cv * p + dv) || tol.is_zero(cv * m + dv) {
            poles.push(xi);
        }
        plus.push(p);
        minus.push(m);
    }
    let plus = PeriodicSeq::new(plus)?;
    let minus = PeriodicSeq::new(minus)?;
    let residual_plus = quadratic_residual(a, b, c, d, &plus);
    let residual_minus = quadratic_residual(a, b, c, d, &minus);
    Ok(QuadraticRoots { plus, minus, residual_plus, residual_minus, double_root_phases, poles })
}

/// RMS norm of `C⊗ω² ⊕ (D⊖A)⊗ω ⊖ B`.
pub fn quadratic_residual(a: &PeriodicSeq, b: &PeriodicSeq, c: &PeriodicSeq, d: &PeriodicSeq, w: &PeriodicSeq) -> f64 {
    let quad = c.ew_product(&w.ew_product(w));
    let lin = d.ew_difference(a).ew_product(w);
    quad.ew_sum(&lin).ew_difference(b).norm()
}

/// `max_ξ |M(ω) − ω|` over phases where `Cω + D` is nonzero.
pub fn mobius_fixed_point_error(
    a: &PeriodicSeq,
    b: &PeriodicSeq,
    c: &PeriodicSeq,
    d: &PeriodicSeq,
    w: &PeriodicSeq,
    tol: &Tolerance,
) -> f64 {
    let period = [a, b, c, d, w].iter().fold(1, |p, s| combined_period_usize(p, s.period()));
    (1..=period as i64)
        .filter_map(|xi| {
            let den = c.at(xi) * w.at(xi) + d.at(xi);
            (!tol.is_zero(den)).then(|| ((a.at(xi) * w.at(xi) + b.at(xi)) / den - w.at(xi)).norm())
        })
        .fold(0.0, f64::max)
}
