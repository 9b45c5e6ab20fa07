//! Deterministic number formatting: 12 significant digits, tiny values as 0.

use num_complex::Complex64;
use serde_json::{json, Value};
use wavenum::integral::WindowedSeq;
use wavenum::PeriodicSeq;

pub const SIGNIFICANT_DIGITS: usize = 12;

pub fn round(x: f64) -> f64 {
    if !x.is_finite() {
        return x;
    }
    if x.abs() < 1e-12 {
        return 0.0;
    }
    let r: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x).parse().expect("formatted float parses");
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

pub fn real_text(x: f64) -> String {
    format!("{}", round(x))
}

pub fn complex_text(c: Complex64) -> String {
    let (re, im) = (round(c.re), round(c.im));
    let imag = |v: f64| match v {
        1.0 => "i".to_string(),
        -1.0 => "-i".to_string(),
        _ => format!("{v}i"),
    };
    match (re == 0.0, im == 0.0) {
        (_, true) => format!("{re}"),
        (true, false) => imag(im),
        (false, false) if im < 0.0 => format!("{re}-{}", imag(-im)),
        (false, false) => format!("{re}+{}", imag(im)),
    }
}

pub fn values_text(values: &[Complex64]) -> String {
    let parts: Vec<String> = values.iter().map(|&c| complex_text(c)).collect();
    format!("{{{}}}", parts.join(", "))
}

pub fn complex_json(c: Complex64) -> Value {
    json!([round(c.re), round(c.im)])
}

pub fn values_json(values: &[Complex64]) -> Value {
    Value::Array(values.iter().map(|&c| complex_json(c)).collect())
}

pub fn seq_json(s: &PeriodicSeq) -> Value {
    json!({ "period": s.period(), "values": values_json(s.values()) })
}

pub fn window_json(w: &WindowedSeq) -> Value {
    json!({ "lo": w.lo(), "hi": w.hi(), "values": values_json(w.values()) })
}
