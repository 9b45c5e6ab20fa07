//! Evaluation of parsed expressions.
//!
//! Wave-number literals stay exact under `*`, `/`, `circ`, `conj`,
//! `orthconj`, `inv` and `root`; anything else is sampled and evaluated
//! element-wise.

use num_complex::Complex64;
use thiserror::Error;
use wavenum::integral::integral;
use wavenum::sieve::circ_product;
use wavenum::{Error, MultWave, PeriodicSeq, Precision, Tolerance};

use crate::expr::{BinOp, Expr, Func};

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Wave(MultWave),
    Seq(PeriodicSeq),
    Real(f64),
}

/// A library error plus the smallest subexpression that raised it.
#[derive(Clone, Debug, PartialEq, Error)]
#[error("{source} (in `{context}`)")]
pub struct EvalError {
    pub context: String,
    pub source: Error,
}

#[derive(Clone, Debug)]
pub struct Evaluator {
    pub precision: Precision,
    pub tol: Tolerance,
}

impl Default for Evaluator {
    fn default() -> Self {
        Evaluator { precision: Precision::Double, tol: Tolerance::default() }
    }
}

impl Evaluator {
    pub fn new(precision: Precision, tol: Tolerance) -> Self {
        Evaluator { precision, tol }
    }

    pub fn eval(&self, e: &Expr) -> Result<Value, EvalError> {
        let at = |source: Error| EvalError { context: e.to_string(), source };
        match e {
            Expr::Rational(r) => Ok(Value::Seq(PeriodicSeq::constant(Complex64::new(r.to_f64(), 0.0)))),
            Expr::Decimal(x) => Ok(Value::Seq(PeriodicSeq::constant(Complex64::new(*x, 0.0)))),
            Expr::Imag(x) => Ok(Value::Seq(PeriodicSeq::constant(Complex64::new(0.0, *x)))),
            Expr::Wave(w) => Ok(Value::Wave(w.clone())),
            Expr::Call(func, arg) => {
                let v = self.eval(arg)?;
                self.call(*func, v).map_err(at)
            }
            Expr::Binary(op, a, b) => {
                let (a, b) = (self.eval(a)?, self.eval(b)?);
                self.binary(*op, a, b).map_err(at)
            }
        }
    }

    pub fn to_seq(&self, v: Value) -> wavenum::Result<PeriodicSeq> {
        match v {
            Value::Wave(w) => w.sample_with(self.precision),
            Value::Seq(s) => Ok(s),
            Value::Real(x) => Ok(PeriodicSeq::constant(Complex64::new(x, 0.0))),
        }
    }

    fn call(&self, func: Func, v: Value) -> wavenum::Result<Value> {
        if let Value::Wave(w) = &v {
            match func {
                Func::Conj | Func::Inv => return Ok(Value::Wave(w.inverse())),
                Func::OrthConj => return Ok(Value::Wave(w.reflect_imag())),
                Func::Root(n) => return Ok(Value::Wave(w.root(n as u64)?)),
                Func::Integral | Func::Norm => {}
            }
        }
        let s = self.to_seq(v)?;
        Ok(match func {
            Func::Conj => Value::Seq(s.conj()),
            Func::OrthConj => Value::Seq(s.orth_conj()),
            Func::Inv => Value::Seq(s.inverse_with(&self.tol)?),
            Func::Root(n) => Value::Seq(s.root_n(n)?),
            Func::Integral => Value::Seq(integral(&s)),
            Func::Norm => Value::Real(s.norm()),
        })
    }

    fn binary(&self, op: BinOp, a: Value, b: Value) -> wavenum::Result<Value> {
        if let (Value::Wave(x), Value::Wave(y)) = (&a, &b) {
            match op {
                BinOp::Mul => return Ok(Value::Wave(x.product(y))),
                BinOp::Div => return Ok(Value::Wave(x.quotient(y))),
                BinOp::Circ => return Ok(Value::Wave(circ_product(x, y)?)),
                BinOp::Add | BinOp::Sub => {}
            }
        }
        if op == BinOp::Circ {
            return Err(Error::Argument("circ needs wave-number operands".into()));
        }
        let (x, y) = (self.to_seq(a)?, self.to_seq(b)?);
        Ok(Value::Seq(match op {
            BinOp::Add => x.ew_sum(&y),
            BinOp::Sub => x.ew_difference(&y),
            BinOp::Mul => x.ew_product(&y),
            BinOp::Div => x.ew_quotient_with(&y, &self.tol)?,
            BinOp::Circ => unreachable!("handled above"),
        }))
    }

    /// Splits a top-level sum into `(coefficient, wave)` terms. Each term
    /// must be a wave number or a product of a coefficient and a wave number.
    pub fn sum_terms(&self, e: &Expr) -> Result<Vec<(PeriodicSeq, MultWave)>, EvalError> {
        let mut flat = Vec::new();
        flatten(e, 1.0, &mut flat);
        flat.into_iter()
            .map(|(sign, term)| {
                let scale = |s: PeriodicSeq| s.dilate(Complex64::new(sign, 0.0));
                if let Value::Wave(w) = self.eval(term)? {
                    return Ok((PeriodicSeq::constant(Complex64::new(sign, 0.0)), w));
                }
                if let Expr::Binary(BinOp::Mul, a, b) = term {
                    match (self.eval(a)?, self.eval(b)?) {
                        (Value::Wave(w), c) | (c, Value::Wave(w)) if !matches!(c, Value::Wave(_)) => {
                            let c = self.to_seq(c).map_err(|source| EvalError { context: term.to_string(), source })?;
                            return Ok((scale(c), w));
                        }
                        _ => {}
                    }
                }
                Err(EvalError {
                    context: term.to_string(),
                    source: Error::Argument("term is not a wave number or coefficient * wave number".into()),
                })
            })
            .collect()
    }
}

fn flatten<'a>(e: &'a Expr, sign: f64, out: &mut Vec<(f64, &'a Expr)>) {
    match e {
        Expr::Binary(BinOp::Add, a, b) => {
            flatten(a, sign, out);
            flatten(b, sign, out);
        }
        Expr::Binary(BinOp::Sub, a, b) => {
            flatten(a, sign, out);
            flatten(b, -sign, out);
        }
        other => out.push((sign, other)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse;

    fn eval(s: &str) -> Value {
        Evaluator::default().eval(&parse(s).unwrap()).unwrap()
    }

    #[test]
    fn quarter_wave() {
        let Value::Wave(w) = eval("w(1/4,0)") else { panic!() };
        let s = w.sample().unwrap();
        let expected = [Complex64::new(0.0, 1.0), Complex64::new(-1.0, 0.0), Complex64::new(0.0, -1.0), Complex64::new(1.0, 0.0)];
        for (a, b) in s.values().iter().zip(expected) {
            assert!((a - b).norm() < 1e-12);
        }
    }

    #[test]
    fn exact_wave_algebra() {
        assert_eq!(eval("w(1/2,0) circ w(1/3,0)"), Value::Wave("w(1/6,0)".parse().unwrap()));
        assert_eq!(eval("w(1/4,0) * w(1/4,0)"), Value::Wave("w(1/2,0)".parse().unwrap()));
        assert_eq!(eval("w(1/4,0) / w(1/4,1/2)"), Value::Wave("w(0,1/2)".parse().unwrap()));
        assert_eq!(eval("root(w(1/2,0), 2)"), Value::Wave("w(1/4,0)".parse().unwrap()));
        assert_eq!(eval("norm(2)"), Value::Real(2.0));
        assert_eq!(eval("norm(-3 + 4i)"), Value::Real(5.0));
    }

    #[test]
    fn errors_name_the_failing_subexpression() {
        let e = Evaluator::default().eval(&parse("norm(w(1/2,0) / (1 - 1))").unwrap()).unwrap_err();
        assert_eq!(e.context, "w(1/2,0) / (1 - 1)");
        assert_eq!(e.source, Error::DivisionByZeroElement { xi: 1 });
        let e = Evaluator::default().eval(&parse("2 circ w(1/2,0)").unwrap()).unwrap_err();
        assert!(matches!(e.source, Error::Argument(_)));
    }

    #[test]
    fn sum_terms_split() {
        let ev = Evaluator::default();
        let terms = ev.sum_terms(&parse("w(0,0) - 2 * w(1/3,0) + w(1/2,0) * i").unwrap()).unwrap();
        assert_eq!(terms.len(), 3);
        assert_eq!(terms[1].0.values()[0], Complex64::new(-2.0, 0.0));
        assert_eq!(terms[2].0.values()[0], Complex64::new(0.0, 1.0));
        assert!(ev.sum_terms(&parse("w(0,0) + 3").unwrap()).is_err());
    }
}
