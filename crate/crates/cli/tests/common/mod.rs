//! Shared helpers: running the binary, golden files, schemas and a random
//! expression generator.

#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;
use wavenum::{MultWave, Rational};
use wavenum_cli::expr::{parse, BinOp, Expr, Func};

pub const SCHEMA_BASE: &str = "https://wavenum.example/schemas/";

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_wavenum")).args(args).output().expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8(out.stdout).expect("utf-8 stdout"),
        stderr: String::from_utf8(out.stderr).expect("utf-8 stderr"),
    }
}

fn crate_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

// ---- golden files ----

fn render(r: &Run) -> String {
    format!("exit: {}\n--- stdout\n{}--- stderr\n{}", r.code, r.stdout, r.stderr)
}

/// Runs every `tests/golden/*.cmd` (one argument per line) and compares with
/// the sibling `.out`. With `UPDATE_GOLDEN=1` the `.out` files are rewritten.
pub fn check_goldens() -> Vec<(String, Result<(), String>)> {
    let dir = crate_dir().join("tests/golden");
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut cmds: Vec<PathBuf> = fs::read_dir(&dir)
        .expect("golden dir")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "cmd"))
        .collect();
    cmds.sort();
    cmds.into_iter()
        .map(|cmd| {
            let name = cmd.file_stem().unwrap().to_string_lossy().into_owned();
            let text = fs::read_to_string(&cmd).unwrap();
            let args: Vec<&str> = text.lines().collect();
            let got = render(&run(&args));
            let out = cmd.with_extension("out");
            if update {
                fs::write(&out, &got).unwrap();
            }
            let result = match fs::read_to_string(&out) {
                Ok(want) if want == got => Ok(()),
                Ok(want) => Err(format!("expected:\n{want}\ngot:\n{got}")),
                Err(e) => Err(format!("{}: {e}", out.display())),
            };
            (name, result)
        })
        .collect()
}

// ---- schemas ----

fn load(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

pub fn validate(schema: &str, doc: &Value) -> Result<(), String> {
    let dir = crate_dir().join("schemas");
    let defs = load(&dir.join("defs.schema.json"));
    let registry = jsonschema::Registry::new()
        .add(format!("{SCHEMA_BASE}defs.schema.json"), defs)
        .map_err(|e| e.to_string())?
        .prepare()
        .map_err(|e| e.to_string())?;
    let validator = jsonschema::options()
        .with_registry(&registry)
        .build(&load(&dir.join(format!("{schema}.schema.json"))))
        .map_err(|e| e.to_string())?;
    let errors: Vec<String> = validator.iter_errors(doc).map(|e| format!("{e} at {}", e.instance_path())).collect();
    if errors.is_empty() {
        Ok(())
    } else {
        Err(errors.join("; "))
    }
}

/// One `--json` invocation per subcommand variant, with the schema its
/// output must satisfy. Error cases are checked against `error` on stderr.
pub fn schema_cases() -> Vec<(&'static str, Vec<&'static str>)> {
    vec![
        ("eval", vec!["eval", "w(1/4,0)"]),
        ("eval", vec!["eval", "w(1/4,0) + 2"]),
        ("eval", vec!["eval", "norm(3 + 4i)"]),
        ("polar", vec!["polar", "w(1/3,0) + w(1/5,1/2)"]),
        ("polar", vec!["polar", "w(0,0) + 2 * w(1/3,0) - w(1/4,1/8)"]),
        ("basis", vec!["basis", "4"]),
        ("basis", vec!["basis", "5", "--orthonormal", "--construct"]),
        ("integral", vec!["integral", "w(1/4,0)"]),
        ("ngon", vec!["ngon", "6", "3"]),
        ("particulate", vec!["particulate", "3", "5"]),
        ("particulate", vec!["particulate", "2", "4", "--side", "plus", "--scale", "2"]),
        ("sieve", vec!["sieve", "100"]),
        ("frontier", vec!["frontier", "3"]),
        ("solve-mobius", vec!["solve-mobius", "1", "1", "1", "1"]),
        ("solve-mobius", vec!["solve-mobius", "w(1/4,0)", "2", "1 + i", "-1"]),
        ("solve-two", vec!["solve-two", "1/4", "0"]),
        ("solve-sum", vec!["solve-sum", "w(0,0) + w(1/3,0) + w(2/3,0)"]),
        ("error", vec!["eval", "w(1/2,)"]),
        ("error", vec!["eval", "1 / (1 - 1)"]),
        ("error", vec!["basis"]),
        ("error", vec!["frontier", "0"]),
    ]
}

/// Runs each schema case and returns the failures.
pub fn schema_failures() -> Vec<String> {
    let mut failures = Vec::new();
    for (schema, args) in schema_cases() {
        let mut full = vec!["--json"];
        full.extend(&args);
        let r = run(&full);
        let (stream, want_ok) = if schema == "error" { (&r.stderr, false) } else { (&r.stdout, true) };
        if (r.code == 0) != want_ok {
            failures.push(format!("{args:?}: exit {} stderr {}", r.code, r.stderr));
            continue;
        }
        let other = if want_ok { &r.stderr } else { &r.stdout };
        if !other.is_empty() || stream.lines().count() != 1 {
            failures.push(format!("{args:?}: expected exactly one JSON line on one stream"));
            continue;
        }
        match serde_json::from_str::<Value>(stream) {
            Ok(doc) => {
                if let Err(e) = validate(schema, &doc) {
                    failures.push(format!("{args:?}: {e}"));
                }
            }
            Err(e) => failures.push(format!("{args:?}: not JSON: {e}")),
        }
    }
    failures
}

// ---- expression generator ----

fn rational(rng: &mut StdRng) -> Rational {
    Rational::new(rng.gen_range(-40..=40), rng.gen_range(1..=24)).unwrap()
}

fn leaf(rng: &mut StdRng) -> Expr {
    match rng.gen_range(0..4) {
        0 => Expr::Rational(rational(rng)),
        1 => Expr::Decimal(rng.gen_range(-1e3..1e3f64) * 10f64.powi(rng.gen_range(-8..8))),
        2 => Expr::Imag(rng.gen_range(-50.0..50.0f64)),
        _ => Expr::Wave(MultWave::new(rational(rng), rational(rng))),
    }
}

pub fn random_expr(rng: &mut StdRng, depth: u32) -> Expr {
    if depth == 0 || rng.gen_bool(0.25) {
        return leaf(rng);
    }
    if rng.gen_bool(0.3) {
        let func = match rng.gen_range(0..6) {
            0 => Func::Conj,
            1 => Func::OrthConj,
            2 => Func::Inv,
            3 => Func::Root(rng.gen_range(1..=9)),
            4 => Func::Integral,
            _ => Func::Norm,
        };
        return Expr::call(func, random_expr(rng, depth - 1));
    }
    let op = [BinOp::Add, BinOp::Sub, BinOp::Mul, BinOp::Div, BinOp::Circ][rng.gen_range(0..5)];
    Expr::binary(op, random_expr(rng, depth - 1), random_expr(rng, depth - 1))
}

/// Generates `count` trees and checks `parse(print(e)) == e` and that
/// printing is stable. Returns the failures.
pub fn fixpoint_failures(count: usize, seed: u64) -> Vec<String> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..count)
        .filter_map(|_| {
            let e = random_expr(&mut rng, 5);
            let printed = e.to_string();
            match parse(&printed) {
                Ok(back) if back == e && back.to_string() == printed => None,
                Ok(back) => Some(format!("{printed} re-parsed as {back}")),
                Err(err) => Some(format!("{printed}: {err}")),
            }
        })
        .collect()
}
