//! Command-line front end.
//!
//! Exit codes: 0 for a decided answer (including "not periodic" or "not
//! conjugate"), 1 when `verify` finds a failing check, 2 for usage and parse
//! errors.

use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::characteristics::{enumerate_general, CompleteCharacteristic};
use crate::dynamics::{
    complete_characteristic, conjugate_test, lefschetz_number, lower_period_set, map_period,
    AffineTorusMap,
};
use crate::error::Error;
use crate::exactlin::{det, trace, Mat2, Rat, Vec2Q};
use crate::glz::{batterson_class, oriented_class, OrientedClass};
use crate::verify::run_battery;

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "periodic-torus",
    version,
    about = "Classify periodic homeomorphisms of the 2-torus"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Classify the affine torus map x ↦ A·x + v
    Classify {
        #[command(flatten)]
        map: MapArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List admissible complete characteristics
    Enumerate {
        #[arg(long, default_value_t = 1)]
        genus: u64,
        #[arg(long = "max-period", default_value_t = 12)]
        max_period: u64,
        #[arg(long = "max-orbits", default_value_t = 6)]
        max_orbits: u64,
        /// Also list free characteristics (n, p)
        #[arg(long = "include-free")]
        include_free: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Decide orientation-preserving conjugacy of two periodic maps
    Conjugate {
        #[arg(long, value_parser = parse_matrix, allow_hyphen_values = true)]
        matrix1: Mat2,
        #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
        translation1: Option<Vec2Q>,
        #[arg(long, value_parser = parse_matrix, allow_hyphen_values = true)]
        matrix2: Mat2,
        #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
        translation2: Option<Vec2Q>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the built-in verification battery
    Verify {
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args, Debug)]
pub struct MapArgs {
    /// Row-major integer matrix `a,b,c,d`
    #[arg(long, value_parser = parse_matrix, allow_hyphen_values = true)]
    pub matrix: Mat2,
    /// Translation `p/q,r/s`
    #[arg(long, value_parser = parse_vector, allow_hyphen_values = true)]
    pub translation: Option<Vec2Q>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

pub fn parse_matrix(s: &str) -> Result<Mat2, String> {
    let entries: Vec<BigInt> = s
        .split(',')
        .map(|e| BigInt::from_str(e.trim()).map_err(|_| format!("not an integer: {e:?}")))
        .collect::<Result<_, _>>()?;
    match <[BigInt; 4]>::try_from(entries) {
        Ok([a, b, c, d]) => Ok(Mat2::new(a, b, c, d)),
        Err(v) => Err(format!("expected 4 entries a,b,c,d, got {}", v.len())),
    }
}

pub fn parse_rational(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let bad = || format!("not a rational: {s:?}");
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
            let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
            if q == BigInt::from(0) {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(Rat::new(p, q))
        }
        None => BigInt::from_str(s).map(Rat::from_integer).map_err(|_| bad()),
    }
}

pub fn parse_vector(s: &str) -> Result<Vec2Q, String> {
    let parts: Vec<&str> = s.split(',').collect();
    match parts.as_slice() {
        [x, y] => Ok(Vec2Q::new(parse_rational(x)?, parse_rational(y)?)),
        _ => Err(format!("expected two rationals x,y, got {s:?}")),
    }
}

/// Structured command output.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub inputs: Value,
    pub results: Value,
    pub diagnostics: Vec<String>,
    #[serde(skip)]
    text: Vec<String>,
}

impl Report {
    fn new(command: &str, inputs: Value) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            inputs,
            results: Value::Object(Default::default()),
            diagnostics: Vec::new(),
            text: Vec::new(),
        }
    }

    fn set(&mut self, key: &str, value: Value) {
        if let Value::Object(map) = &mut self.results {
            map.insert(key.to_string(), value);
        }
    }

    fn line(&mut self, line: impl Into<String>) {
        self.text.push(line.into());
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Text => {
                let mut out = format!("command: {}\n", self.command);
                for l in &self.text {
                    out.push_str(l);
                    out.push('\n');
                }
                for d in &self.diagnostics {
                    out.push_str("note: ");
                    out.push_str(d);
                    out.push('\n');
                }
                out
            }
        }
    }
}

/// Captured result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: rendered }
            } else {
                Outcome { code, stdout: rendered, stderr: String::new() }
            };
        }
    };
    dispatch(cli.command)
}

fn usage_error(msg: impl std::fmt::Display) -> Outcome {
    Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {msg}\n") }
}

fn ok(report: Report, format: Format, code: i32) -> Outcome {
    Outcome { code, stdout: report.render(format), stderr: String::new() }
}

pub fn dispatch(command: Command) -> Outcome {
    match command {
        Command::Classify { map, format } => {
            match build_map(map.matrix, map.translation) {
                Ok(f) => ok(cmd_classify(&f), format, EXIT_OK),
                Err(e) => usage_error(e),
            }
        }
        Command::Enumerate { genus, max_period, max_orbits, include_free, format } => {
            if max_period == 0 {
                return usage_error("--max-period must be at least 1");
            }
            ok(cmd_enumerate(genus, max_period, max_orbits, include_free), format, EXIT_OK)
        }
        Command::Conjugate { matrix1, translation1, matrix2, translation2, format } => {
            let f = match build_map(matrix1, translation1) {
                Ok(f) => f,
                Err(e) => return usage_error(format!("first map: {e}")),
            };
            let g = match build_map(matrix2, translation2) {
                Ok(g) => g,
                Err(e) => return usage_error(format!("second map: {e}")),
            };
            ok(cmd_conjugate(&f, &g), format, EXIT_OK)
        }
        Command::Verify { format } => {
            let (report, all_passed) = cmd_verify();
            let code = if all_passed { EXIT_OK } else { EXIT_VERIFY_FAILED };
            ok(report, format, code)
        }
    }
}

fn build_map(matrix: Mat2, translation: Option<Vec2Q>) -> Result<AffineTorusMap, Error> {
    AffineTorusMap::new(matrix, translation.unwrap_or_else(Vec2Q::zero))
}

fn map_inputs(f: &AffineTorusMap) -> Value {
    let m = f.matrix();
    let v = f.translation();
    json!({
        "matrix": [m.a.to_string(), m.b.to_string(), m.c.to_string(), m.d.to_string()],
        "translation": [v.x.to_string(), v.y.to_string()],
    })
}

fn characteristic_json(k: &CompleteCharacteristic) -> Value {
    json!({
        "n": k.period(),
        "p": k.genus(),
        "orbits": k.orbits().iter().map(|o| json!([o.period, o.valency])).collect::<Vec<_>>(),
        "tuple": k.to_tuple(),
        "label": k.torus_label().map(|j| format!("kappa{j}")),
    })
}

fn characteristic_text(k: &CompleteCharacteristic) -> String {
    match k.torus_name() {
        Some(name) => format!("{k} = {name}"),
        None => k.to_string(),
    }
}

pub fn cmd_classify(f: &AffineTorusMap) -> Report {
    let mut r = Report::new("classify", map_inputs(f));
    let a = f.matrix();
    let d = det(a);
    let t = trace(a);
    r.set("det", json!(d.to_string()));
    r.set("trace", json!(t.to_string()));
    r.line(format!("matrix: {a}"));
    r.line(format!("translation: {}", f.translation()));
    r.line(format!("det: {d}"));
    r.line(format!("trace: {t}"));

    let period = map_period(f);
    match period {
        Some(n) => {
            r.set("period", json!(n));
            r.line(format!("period: {n}"));
        }
        None => {
            r.set("period", json!("non-periodic"));
            r.line("period: non-periodic");
        }
    }

    match batterson_class(a) {
        Ok(c) => {
            r.set("batterson_class", json!(c.to_string()));
            r.line(format!("similarity class: {c}"));
        }
        Err(_) => {
            r.set("batterson_class", Value::Null);
            r.line("similarity class: none (hyperbolic)");
            r.diagnostics.push("spectrum off the unit circle: hyperbolic automorphism".into());
        }
    }

    let oriented = oriented_class(a).expect("matrix is unimodular");
    let homotopic_to_identity = a.is_identity();
    r.set("oriented_class", json!(oriented.to_string()));
    r.set("homotopic_to_identity", json!(homotopic_to_identity));
    r.line(format!("oriented class: {oriented}"));
    r.line(format!("homotopic to identity: {homotopic_to_identity}"));
    r.set("lefschetz_number", json!(lefschetz_number(a).to_string()));

    if oriented == OrientedClass::OrientationReversing {
        r.diagnostics.push("orientation-reversing: out of classification scope".into());
    }
    if period.is_none() {
        r.diagnostics.push("map is not periodic".into());
    }

    if period.is_some() && f.preserves_orientation() {
        match (complete_characteristic(f), lower_period_set(f)) {
            (Ok(k), Ok(b)) => {
                r.set("characteristic", characteristic_json(&k));
                r.set("orbits", serde_json::to_value(&b.orbits).expect("orbits serialize"));
                r.line(format!("characteristic: {}", characteristic_text(&k)));
                if !b.orbits.is_empty() {
                    r.line("orbits:");
                }
                for o in &b.orbits {
                    let pts: Vec<String> = o.points.iter().map(|p| p.to_string()).collect();
                    r.line(format!(
                        "  n_i={} lambda={} delta={} d={}: {}",
                        o.period,
                        o.lambda,
                        o.delta,
                        o.valency,
                        pts.join(" ")
                    ));
                }
            }
            (Err(e), _) | (_, Err(e)) => {
                r.set("characteristic", Value::Null);
                r.diagnostics.push(e.to_string());
            }
        }
    } else {
        r.set("characteristic", Value::Null);
        r.set("orbits", Value::Null);
    }
    r
}

pub fn cmd_enumerate(genus: u64, max_period: u64, max_orbits: u64, include_free: bool) -> Report {
    let mut r = Report::new(
        "enumerate",
        json!({
            "genus": genus,
            "max_period": max_period,
            "max_orbits": max_orbits,
            "include_free": include_free,
        }),
    );
    let list: Vec<CompleteCharacteristic> = enumerate_general(genus, max_period, max_orbits)
        .into_iter()
        .filter(|k| include_free || !k.is_free())
        .collect();
    r.set("count", json!(list.len()));
    r.set(
        "characteristics",
        Value::Array(list.iter().map(characteristic_json).collect()),
    );
    r.line(format!("count: {}", list.len()));
    for k in &list {
        r.line(format!("  {}", characteristic_text(k)));
    }
    r
}

pub fn cmd_conjugate(f: &AffineTorusMap, g: &AffineTorusMap) -> Report {
    let mut r = Report::new(
        "conjugate",
        json!({ "map1": map_inputs(f), "map2": map_inputs(g) }),
    );
    r.line(format!("map1: {f}"));
    r.line(format!("map2: {g}"));
    match conjugate_test(f, g) {
        Ok(v) => {
            r.set("conjugate", json!(v.conjugate));
            r.set("reason", json!(v.reason));
            r.line(format!(
                "verdict: {}",
                if v.conjugate { "conjugate" } else { "not conjugate" }
            ));
            r.line(format!("reason: {}", v.reason));
        }
        Err(e) => {
            r.set("conjugate", Value::Null);
            r.set("reason", json!(e.to_string()));
            r.line("verdict: undecided");
            r.line(format!("reason: {e}"));
            r.diagnostics.push(e.to_string());
        }
    }
    r
}

pub fn cmd_verify() -> (Report, bool) {
    let mut r = Report::new("verify", json!({}));
    let checks = run_battery();
    let passed = checks.iter().filter(|c| c.passed).count();
    let all = passed == checks.len();
    r.set("checks", serde_json::to_value(&checks).expect("checks serialize"));
    r.set("passed", json!(passed));
    r.set("total", json!(checks.len()));
    r.set("ok", json!(all));
    for c in &checks {
        r.line(format!(
            "[{}] {}: {}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.detail
        ));
    }
    r.line(format!("{passed}/{} checks passed", checks.len()));
    for c in checks.iter().filter(|c| !c.passed) {
        r.diagnostics.push(format!("failed check: {}", c.name));
    }
    (r, all)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_matrices_and_vectors() {
        assert_eq!(parse_matrix("1,1,-1,0").unwrap(), Mat2::from_i64(1, 1, -1, 0));
        assert!(parse_matrix("1,2,3").is_err());
        assert!(parse_matrix("1,x,3,4").is_err());
        assert_eq!(
            parse_vector("1/4,0").unwrap(),
            Vec2Q::from_ratios((1, 4), (0, 1))
        );
        assert_eq!(parse_rational("-2/6").unwrap(), Rat::new((-1).into(), 3.into()));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_vector("1/2").is_err());
    }

    #[test]
    fn classify_worked_example_text() {
        let out = run(["periodic-torus", "classify", "--matrix", "1,1,-1,0"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.contains("period: 6"));
        assert!(out.stdout.contains("oriented class: A5"));
        assert!(out.stdout.contains("orbits {(3,1),(2,2),(1,5)}) = κ₅"));
    }

    #[test]
    fn non_unimodular_is_usage_error() {
        let out = run(["periodic-torus", "classify", "--matrix", "2,0,0,2"]);
        assert_eq!(out.code, EXIT_USAGE);
        assert!(out.stderr.contains("not unimodular"));
    }

    #[test]
    fn bad_parse_is_usage_error() {
        let out = run(["periodic-torus", "classify", "--matrix", "1,1"]);
        assert_eq!(out.code, EXIT_USAGE);
        let out = run(["periodic-torus", "frobnicate"]);
        assert_eq!(out.code, EXIT_USAGE);
    }
}
