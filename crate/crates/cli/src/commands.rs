//! One function per subcommand; each returns both renderings of its result.

use std::path::Path;

use num_complex::Complex64;
use serde_json::{json, Value as Json};
use wavenum::basis::{construct_orthogonal_basis, orthogonal_basis, orthonormal_basis};
use wavenum::equations::{factored_conditions, mobius_fixed_points, solve_two_term};
use wavenum::integral::{iterate_ngon, particulate_one_sided, particulate_scale, Side};
use wavenum::polar::{diff2_polar, direct_sum, polar_decompose_sum, sum2_polar};
use wavenum::sieve::{discover_primes_traced, eratosthenes, frontier_sequence};
use wavenum::{MultWave, PeriodicSeq, Rational};

use crate::eval::{Evaluator, Value};
use crate::expr::{parse, Expr};
use crate::format::{complex_text, real_text, round, seq_json, values_json, values_text, window_json};
use crate::CliError;

pub struct Output {
    pub json: Json,
    pub text: String,
}

fn parse_expr(s: &str) -> Result<Expr, CliError> {
    parse(s).map_err(CliError::Syntax)
}

fn eval_seq(ev: &Evaluator, s: &str) -> Result<PeriodicSeq, CliError> {
    let e = parse_expr(s)?;
    let v = ev.eval(&e)?;
    ev.to_seq(v).map_err(|source| CliError::domain(&e, source))
}

pub fn eval(ev: &Evaluator, input: &str) -> Result<Output, CliError> {
    let e = parse_expr(input)?;
    let printed = e.to_string();
    Ok(match ev.eval(&e)? {
        Value::Wave(w) => {
            let s = w.sample_with(ev.precision).map_err(|source| CliError::domain(&e, source))?;
            Output {
                json: json!({ "expr": printed, "kind": "wave", "wave": w.to_string(), "period": s.period(), "values": values_json(s.values()) }),
                text: format!("{w} = {}", values_text(s.values())),
            }
        }
        Value::Seq(s) => Output {
            json: json!({ "expr": printed, "kind": "sequence", "period": s.period(), "values": values_json(s.values()) }),
            text: values_text(s.values()),
        },
        Value::Real(x) => Output { json: json!({ "expr": printed, "kind": "real", "value": round(x) }), text: real_text(x) },
    })
}

pub fn polar(ev: &Evaluator, input: &str) -> Result<Output, CliError> {
    let e = parse_expr(input)?;
    let terms = ev.sum_terms(&e)?;
    let unit = |c: &PeriodicSeq| c.period() == 1 && c.values()[0].im == 0.0 && c.values()[0].re.abs() == 1.0;
    let form = match terms.as_slice() {
        [(c1, a), (c2, b)] if unit(c1) && unit(c2) && c1.values()[0].re == 1.0 => {
            if c2.values()[0].re == 1.0 {
                sum2_polar(a, b)
            } else {
                diff2_polar(a, b)
            }
        }
        _ => polar_decompose_sum(&terms),
    }
    .map_err(|source| CliError::domain(&e, source))?;
    let direct = direct_sum(&terms).map_err(|source| CliError::domain(&e, source))?;
    let rebuilt = form.reconstruct().map_err(|source| CliError::domain(&e, source))?;
    let error = rebuilt.max_abs_diff(&direct);
    Ok(Output {
        json: json!({
            "expr": e.to_string(),
            "terms": terms.len(),
            "amplitude": seq_json(&form.amplitude),
            "carrier": form.carrier.to_string(),
            "reconstruction_error": round(error),
        }),
        text: format!(
            "amplitude = {}\ncarrier = {}\nreconstruction error = {}",
            values_text(form.amplitude.values()),
            form.carrier,
            real_text(error)
        ),
    })
}

pub fn basis(ev: &Evaluator, n: usize, orthonormal: bool, construct: bool) -> Result<Output, CliError> {
    let set = if orthonormal { orthonormal_basis(n) } else { orthogonal_basis(n) }.map_err(CliError::Lib)?;
    let rows: Vec<String> = set
        .elements
        .iter()
        .map(|e| format!("[{}]", e.values().iter().map(|&c| complex_text(c)).collect::<Vec<_>>().join(", ")))
        .collect();
    let mut json = json!({
        "n": n,
        "orthonormal": orthonormal,
        "elements": set.elements.iter().map(seq_json).collect::<Vec<_>>(),
    });
    let mut text = rows.join("\n");
    if construct {
        let built = construct_orthogonal_basis(n, ev.precision).map_err(CliError::Lib)?;
        let scale = if orthonormal { 1.0 / n as f64 } else { 1.0 };
        let deviation = built
            .basis
            .elements
            .iter()
            .zip(&set.elements)
            .map(|(u, d)| u.dilate(Complex64::new(scale, 0.0)).max_abs_diff(d))
            .fold(0.0, f64::max);
        let precision = match built.precision {
            wavenum::Precision::Double => "double",
            wavenum::Precision::High => "high",
        };
        json["constructed"] = json!({
            "precision": precision,
            "max_deviation": round(deviation),
            "t_values": values_json(&built.t_values),
        });
        text.push_str(&format!("\nconstructed ({precision}): max deviation {}", real_text(deviation)));
    }
    Ok(Output { json, text })
}

pub fn integral(ev: &Evaluator, input: &str) -> Result<Output, CliError> {
    let s = eval_seq(ev, input)?;
    let i = wavenum::integral::integral(&s);
    let magnitudes: Vec<f64> = i.values().iter().map(|c| round(c.norm())).collect();
    let zero_sum = wavenum::integral::is_zero_sum(&s, ev.tol.abs_eps);
    Ok(Output {
        json: json!({ "integral": seq_json(&i), "magnitudes": magnitudes, "zero_sum": zero_sum }),
        text: format!(
            "{}\n|I_k| = [{}]\nzero-sum: {zero_sum}",
            values_text(i.values()),
            magnitudes.iter().map(|&m| real_text(m)).collect::<Vec<_>>().join(", ")
        ),
    })
}

pub fn ngon(n: usize, t: usize) -> Result<Output, CliError> {
    let traces = iterate_ngon(n, t).map_err(CliError::Lib)?;
    let mut text = String::from("t\tvertex_norm\tedge_norm");
    for tr in &traces {
        text.push_str(&format!("\n{}\t{}\t{}", tr.iteration, real_text(tr.vertex_norm), real_text(tr.edge_norm)));
    }
    let json_traces: Vec<Json> = traces
        .iter()
        .map(|tr| {
            json!({
                "iteration": tr.iteration,
                "vertex_norm": round(tr.vertex_norm),
                "edge_norm": round(tr.edge_norm),
                "vertices": seq_json(&tr.vertices),
            })
        })
        .collect();
    Ok(Output { json: json!({ "n": n, "traces": json_traces }), text })
}

pub fn particulate(n: u64, window: u64, scale: u64, side: Option<Side>) -> Result<Output, CliError> {
    let seq = match side {
        None => particulate_scale(n, scale, window),
        Some(side) => particulate_one_sided(n, Complex64::new(scale as f64, 0.0), side, window),
    }
    .map_err(CliError::Lib)?;
    let support = seq.support();
    let text = support
        .iter()
        .map(|&xi| format!("xi={xi}: {}", complex_text(seq.at(xi).expect("in window"))))
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Output {
        json: json!({ "n": n, "window": window, "support": support, "sequence": window_json(&seq) }),
        text,
    })
}

pub fn sieve(limit: u64, trace_csv: Option<&Path>) -> Result<Output, CliError> {
    let (primes, steps) = discover_primes_traced(limit).map_err(CliError::Lib)?;
    let matches_oracle = primes == eratosthenes(limit).map_err(CliError::Lib)?;
    if let Some(path) = trace_csv {
        let mut w = csv::Writer::from_path(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        for s in &steps {
            w.serialize(s).map_err(|e| CliError::Io(e.to_string()))?;
        }
        w.flush().map_err(|e| CliError::Io(e.to_string()))?;
    }
    let list = primes.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ");
    Ok(Output {
        json: json!({
            "limit": limit,
            "count": primes.len(),
            "primes": primes,
            "matches_oracle": matches_oracle,
            "steps": steps,
        }),
        text: format!("{list}\ncount: {}", primes.len()),
    })
}

pub fn frontier(k: usize) -> Result<Output, CliError> {
    let values: Vec<String> = frontier_sequence(k).map_err(CliError::Lib)?.iter().map(|v| v.to_string()).collect();
    Ok(Output { text: values.join(", "), json: json!({ "iterations": k, "frontier": values }) })
}

pub fn solve_mobius(ev: &Evaluator, args: [&str; 4]) -> Result<Output, CliError> {
    let [a, b, c, d] = args.map(|s| eval_seq(ev, s));
    let (a, b, c, d) = (a?, b?, c?, d?);
    let roots = mobius_fixed_points(&a, &b, &c, &d, &ev.tol).map_err(CliError::Lib)?;
    Ok(Output {
        json: json!({
            "roots": [seq_json(&roots.plus), seq_json(&roots.minus)],
            "residuals": [round(roots.residual_plus), round(roots.residual_minus)],
            "vanishing_factors": [],
            "double_root_phases": roots.double_root_phases,
            "poles": roots.poles,
        }),
        text: format!(
            "omega+ = {}\nomega- = {}\nresiduals: {}, {}",
            values_text(roots.plus.values()),
            values_text(roots.minus.values()),
            real_text(roots.residual_plus),
            real_text(roots.residual_minus)
        ),
    })
}

fn parse_rational(s: &str) -> Result<Rational, CliError> {
    s.trim().parse().map_err(|e: wavenum::Error| CliError::Usage(format!("'{s}': {e}")))
}

pub fn solve_two(f2: &str, g2: &str) -> Result<Output, CliError> {
    let (f2, g2) = (parse_rational(f2)?, parse_rational(g2)?);
    let family = solve_two_term(&f2, &g2);
    let (f1, g1) = family.member(0, 0);
    let r = family.residual_of(&f1, &g1).map_err(CliError::Lib)?;
    let first = MultWave::new(f1.clone(), g1.clone());
    Ok(Output {
        json: json!({
            "roots": [{ "f1": f1.to_string(), "g1": g1.to_string(), "wave": first.to_string() }],
            "family": { "df": family.df.to_string(), "dg": family.dg.to_string() },
            "residuals": [round(r)],
            "vanishing_factors": [],
        }),
        text: format!("f1 = {f1} + k, g1 = {g1} + l (k, l integers)\nresidual: {}", real_text(r)),
    })
}

pub fn solve_sum(ev: &Evaluator, input: &str) -> Result<Output, CliError> {
    let e = parse_expr(input)?;
    let terms = ev.sum_terms(&e)?;
    let fc = factored_conditions(&terms, &ev.tol).map_err(|source| CliError::domain(&e, source))?;
    let roots = fc.solution_phases();
    let sum = direct_sum(&terms).map_err(|source| CliError::domain(&e, source))?;
    let residuals: Vec<f64> = roots.iter().map(|&xi| round(sum.at(xi).norm())).collect();
    let mut text = format!(
        "solution phases: [{}]\nresiduals: [{}]\nsum norm: {}",
        roots.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "),
        residuals.iter().map(|&r| real_text(r)).collect::<Vec<_>>().join(", "),
        real_text(fc.residual)
    );
    for (m, v) in fc.vanishing.iter().enumerate() {
        text.push_str(&format!("\nfactor {}: vanishes at [{}]", m + 1, v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")));
    }
    Ok(Output {
        json: json!({
            "roots": roots,
            "residuals": residuals,
            "vanishing_factors": fc.vanishing,
            "sum_norm": round(fc.residual),
            "consistency_error": round(fc.consistency_error),
            "factors": fc.factors.iter().map(seq_json).collect::<Vec<_>>(),
        }),
        text,
    })
}
