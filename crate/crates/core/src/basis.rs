//! Phase-indicator bases built from translated wave numbers.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::highprec::{HpComplex, HpContext};
use crate::multiplicative::{expi_cycles, MultWave};
use crate::periodic::{PeriodicSeq, Precision};
use crate::rational::Rational;

/// Above this size the leave-one-out construction runs in extended precision.
pub const HIGH_PRECISION_THRESHOLD: usize = 16;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisSet {
    pub n: usize,
    pub orthonormal: bool,
    pub elements: Vec<PeriodicSeq>,
}

/// Output of [`construct_orthogonal_basis`].
#[derive(Clone, Debug)]
pub struct ConstructedBasis {
    pub basis: BasisSet,
    /// `t(ξ)`: the leave-one-out product evaluated at its own phase.
    pub t_values: Vec<Complex64>,
    pub precision: Precision,
}

fn check_index(n: usize, j: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Argument(format!("basis size must be >= 2, got {n}")));
    }
    if j == 0 || j > n {
        return Err(Error::Argument(format!("phase index {j} outside 1..={n}")));
    }
    Ok(())
}

fn cycles(k: i64, n: usize) -> Rational {
    Rational::new(k, n as i64).expect("n >= 1")
}

/// Samples of `w(1/n,0) ⊖ w(0,j/n)`; zero at `ξ = j`.
pub fn translated_wave(n: usize, j: usize) -> Result<PeriodicSeq> {
    check_index(n, j)?;
    let shift = expi_cycles(&cycles(j as i64, n));
    PeriodicSeq::from_fn(n, |xi| {
        if xi == j as i64 {
            Complex64::new(0.0, 0.0)
        } else {
            expi_cycles(&cycles(xi, n)) - shift
        }
    })
}

/// Element `j` of the orthogonal basis: `n` at phase `j`, 0 elsewhere.
pub fn basis_element(n: usize, j: usize) -> Result<PeriodicSeq> {
    check_index(n, j)?;
    Ok(indicator(n, j, n as f64))
}

fn indicator(n: usize, j: usize, value: f64) -> PeriodicSeq {
    let mut v = vec![Complex64::new(0.0, 0.0); n];
    v[j - 1] = Complex64::new(value, 0.0);
    PeriodicSeq::new(v).expect("n >= 1")
}

pub fn orthogonal_basis(n: usize) -> Result<BasisSet> {
    if n < 2 {
        return Err(Error::Argument(format!("basis size must be >= 2, got {n}")));
    }
    Ok(BasisSet { n, orthonormal: false, elements: (1..=n).map(|j| indicator(n, j, n as f64)).collect() })
}

pub fn orthonormal_basis(n: usize) -> Result<BasisSet> {
    if n == 0 {
        return Err(Error::Argument("basis size must be >= 1".into()));
    }
    Ok(BasisSet { n, orthonormal: true, elements: (1..=n).map(|j| indicator(n, j, 1.0)).collect() })
}

/// Builds each element as the product of the other `n−1` translated waves,
/// times `w(1/n,0)`. Requests for `n` above [`HIGH_PRECISION_THRESHOLD`]
/// always run in extended precision.
pub fn construct_orthogonal_basis(n: usize, precision: Precision) -> Result<ConstructedBasis> {
    if n < 2 {
        return Err(Error::Argument(format!("basis size must be >= 2, got {n}")));
    }
    let precision = if n > HIGH_PRECISION_THRESHOLD { Precision::High } else { precision };
    let grid = match precision {
        Precision::Double => Grid::Double,
        Precision::High => Grid::High(Box::default()),
    };
    grid.construct(n, precision)
}

enum Grid {
    Double,
    High(Box<HpContext>),
}

impl Grid {
    fn construct(mut self, n: usize, precision: Precision) -> Result<ConstructedBasis> {
        let mut elements = Vec::with_capacity(n);
        let mut t_values = Vec::with_capacity(n);
        match &mut self {
            Grid::Double => {
                let roots: Vec<Complex64> = (1..=n as i64).map(|k| expi_cycles(&cycles(k, n))).collect();
                for j in 1..=n {
                    let mut product = vec![Complex64::new(1.0, 0.0); n];
                    for k in (1..=n).filter(|&k| k != j) {
                        for (xi, p) in product.iter_mut().enumerate() {
                            *p *= roots[xi] - roots[k - 1];
                        }
                    }
                    t_values.push(product[j - 1]);
                    let u = product.iter().zip(&roots).map(|(p, r)| p * r).collect();
                    elements.push(PeriodicSeq::new(u)?);
                }
            }
            Grid::High(hp) => {
                let roots: Vec<HpComplex> = (1..=n as i64).map(|k| hp.expi_cycles(&cycles(k, n))).collect();
                for j in 1..=n {
                    let mut product: Vec<HpComplex> = (0..n).map(|_| hp.complex_int(1, 0)).collect();
                    for k in (1..=n).filter(|&k| k != j) {
                        for (xi, p) in product.iter_mut().enumerate() {
                            let factor = hp.sub(&roots[xi], &roots[k - 1]);
                            *p = hp.mul(p, &factor);
                        }
                    }
                    t_values.push(hp.to_c64(&product[j - 1]));
                    let u: Vec<Complex64> = product
                        .iter()
                        .zip(&roots)
                        .map(|(p, r)| {
                            let v = hp.mul(p, r);
                            hp.to_c64(&v)
                        })
                        .collect();
                    elements.push(PeriodicSeq::new(u)?);
                }
            }
        }
        Ok(ConstructedBasis { basis: BasisSet { n, orthonormal: false, elements }, t_values, precision })
    }
}

/// `Π_{m=1}^{n−1} sin(πm/n)`; equals `n / 2^{n−1}`.
pub fn sin_product(n: usize, precision: Precision) -> Result<f64> {
    if n == 0 {
        return Err(Error::Argument("sin_product needs n >= 1".into()));
    }
    Ok(match precision {
        Precision::Double => (1..n).map(|m| (PI * m as f64 / n as f64).sin()).product(),
        Precision::High => {
            let mut hp = HpContext::new();
            let mut acc = hp.from_int(1);
            for m in 1..n {
                let s = hp.sin_pi(&cycles(m as i64, n));
                acc = hp.mul_real(&acc, &s);
            }
            hp.to_f64(&acc)
        }
    })
}

/// Zeroes every phase of `s` whose index is not in `keep` (1-based).
pub fn project_phases(s: &PeriodicSeq, keep: &[usize]) -> Result<PeriodicSeq> {
    let n = s.period();
    if let Some(&bad) = keep.iter().find(|&&k| k == 0 || k > n) {
        return Err(Error::Argument(format!("phase index {bad} outside 1..={n}")));
    }
    let mut mask = vec![false; n];
    for &k in keep {
        mask[k - 1] = true;
    }
    PeriodicSeq::new(s.values().iter().zip(&mask).map(|(&v, &m)| if m { v } else { Complex64::new(0.0, 0.0) }).collect())
}

/// Co-number: the principal sequence with its last phase removed.
pub fn co_number(w: &MultWave) -> Result<PeriodicSeq> {
    let s = w.sample()?;
    let n = s.period();
    project_phases(&s, &(1..n).collect::<Vec<_>>())
}

/// Re-number: the principal sequence restricted to its last phase.
pub fn re_number(w: &MultWave) -> Result<PeriodicSeq> {
    let s = w.sample()?;
    let n = s.period();
    project_phases(&s, &[n])
}
