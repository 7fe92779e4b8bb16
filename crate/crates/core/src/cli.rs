//! Command-line front end. Exit codes: `0` success or pass, `1` verification
//! failure, `2` invalid input.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use serde_json::{Map, Value};

use crate::arith::{class_number, count_sqrt_mod, Discriminant};
use crate::cubes::{construct_cube, constructed_tuples, count_orbits, Cube, CubeInvariants};
use crate::error::{Error, Result};
use crate::localfactors::SatakeParameter;
use crate::series::{shintani_z, wmds_z};
use crate::verify::{self, Report, DEFAULT_CASES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "cubezeta",
    version,
    about = "Exact checks for cubes, forms and their zeta functions"
)]
struct Cli {
    #[arg(long, value_enum, global = true, default_value = "json")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Class number of a negative fundamental discriminant
    Classnum {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
    },
    /// Number of square roots of d modulo a
    Sqrtcount {
        #[arg(long, allow_hyphen_values = true)]
        d: i64,
        #[arg(long)]
        modulus: u64,
    },
    #[command(subcommand)]
    Cube(CubeCommand),
    #[command(subcommand)]
    Verify(VerifyCommand),
    #[command(subcommand)]
    Zeta(ZetaCommand),
}

#[derive(Debug, Args)]
struct InvariantArgs {
    #[arg(long, allow_hyphen_values = true)]
    disc: i64,
    #[arg(long, allow_hyphen_values = true)]
    m: i64,
    #[arg(long, allow_hyphen_values = true)]
    n: i64,
}

#[derive(Debug, Subcommand)]
enum CubeCommand {
    /// Cube with prescribed (D, m, n, x, y)
    Construct {
        #[command(flatten)]
        inv: InvariantArgs,
        #[arg(long, allow_hyphen_values = true)]
        x: i64,
        #[arg(long, allow_hyphen_values = true)]
        y: i64,
    },
    /// (D, m, n, x, y) of a cube given as a,b,c,d,e,f,g,h
    Invariants {
        #[arg(long, allow_hyphen_values = true)]
        cube: String,
    },
    /// Number of integral orbits with invariants (D, m, n)
    Orbits {
        #[command(flatten)]
        inv: InvariantArgs,
    },
}

#[derive(Debug, Args)]
struct SeedArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_CASES)]
    cases: u64,
}

#[derive(Debug, Subcommand)]
enum VerifyCommand {
    /// A(D, 4m) against the WMDS-side convolution for m <= limit
    Prop2 {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
        #[arg(long, default_value_t = 5000)]
        limit: u64,
    },
    /// 2-adic tables and the constant 2
    Ptilde2 {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
        #[arg(long, default_value_t = 6)]
        lmax: u32,
    },
    /// Cube composition law over every pair of form classes
    Composition {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
    },
    /// Local integral against the L-factor ratio
    Local {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
        #[arg(long)]
        p: u64,
        /// Satake parameters as integers or num/den; repeatable
        #[arg(long, value_delimiter = ',', default_value = "2,3/2,5,7/3")]
        alpha: Vec<String>,
        #[arg(long, default_value_t = 40)]
        order: usize,
    },
    /// Fusion of random cubes
    Fusion(SeedArgs),
    /// Borel characters on random rational cubes
    Characters(SeedArgs),
    /// Pfaffian identities on random alternating matrices
    Pfaffian(SeedArgs),
}

#[derive(Debug, Args)]
struct ComplexArgs {
    /// complex number such as 3, 2.5 or 3+1i
    #[arg(long, allow_hyphen_values = true)]
    s: String,
    #[arg(long, allow_hyphen_values = true)]
    w: String,
}

#[derive(Debug, Subcommand)]
enum ZetaCommand {
    /// Truncated Z(s, w) = xi_1 + xi_2
    Shintani {
        #[command(flatten)]
        point: ComplexArgs,
        #[arg(long)]
        amax: u64,
        #[arg(long)]
        dmax: u64,
    },
    /// Truncated A_2 double Dirichlet series over the given discriminants
    Wmds {
        #[command(flatten)]
        point: ComplexArgs,
        #[arg(long)]
        mmax: u64,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        disc: Vec<i64>,
    },
}

/// A flat record or a verification report.
enum Output {
    Record(Map<String, Value>),
    Report(Report),
}

fn rational(x: &BigRational) -> Value {
    Value::String(format!("{}/{}", x.numer(), x.denom()))
}

fn bigint(x: &BigInt) -> Value {
    x.to_string()
        .parse::<serde_json::Number>()
        .map(Value::Number)
        .unwrap_or_else(|_| Value::String(x.to_string()))
}

fn record<const N: usize>(pairs: [(&str, Value); N]) -> Output {
    Output::Record(pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

fn parse_cube(text: &str) -> Result<Cube> {
    let parts: Vec<i64> = text
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| Error::Invalid(format!("cube literal {text:?}: {e}")))?;
    let entries: [i64; 8] = parts
        .try_into()
        .map_err(|_| Error::Invalid(format!("cube literal {text:?} needs eight entries")))?;
    Ok(Cube::from_i64(entries))
}

fn parse_alpha(text: &str) -> Result<SatakeParameter> {
    let bad = || Error::Invalid(format!("Satake parameter {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (
            n.trim().parse().map_err(|_| bad())?,
            d.trim().parse().map_err(|_| bad())?,
        ),
        None => (text.trim().parse().map_err(|_| bad())?, 1),
    };
    SatakeParameter::from_ratio(num, den)
}

fn parse_complex(text: &str) -> Result<Complex64> {
    text.parse::<Complex64>()
        .map_err(|_| Error::Invalid(format!("complex number {text:?}")))
}

fn complex_fields(map: &mut Map<String, Value>, name: &str, z: Complex64) {
    map.insert(format!("{name}_re"), Value::from(z.re));
    map.insert(format!("{name}_im"), Value::from(z.im));
}

fn execute(command: Command) -> Result<Output> {
    match command {
        Command::Classnum { disc } => {
            let d = Discriminant::new(disc)?;
            Ok(record([
                ("disc", disc.into()),
                ("h", class_number(d)?.into()),
            ]))
        }
        Command::Sqrtcount { d, modulus } => Ok(record([
            ("d", d.into()),
            ("modulus", modulus.into()),
            ("count", count_sqrt_mod(d, modulus)?.into()),
        ])),
        Command::Cube(CubeCommand::Construct { inv, x, y }) => {
            let cube = construct_cube(&CubeInvariants::from_i64(inv.disc, inv.m, inv.n, x, y))?;
            let names = ["a", "b", "c", "d", "e", "f", "g", "h"];
            Ok(Output::Record(
                names
                    .iter()
                    .zip(&cube.entries)
                    .map(|(k, v)| (k.to_string(), bigint(v)))
                    .collect(),
            ))
        }
        Command::Cube(CubeCommand::Invariants { cube }) => {
            let t = parse_cube(&cube)?.invariant_tuple()?;
            Ok(record([
                ("disc", bigint(&t.disc)),
                ("m", bigint(&t.m)),
                ("n", bigint(&t.n)),
                ("x", bigint(&t.x)),
                ("y", bigint(&t.y)),
            ]))
        }
        Command::Cube(CubeCommand::Orbits { inv }) => {
            let d = Discriminant::new(inv.disc)?;
            let orbits = count_orbits(d, inv.m, inv.n)?;
            let tuples = constructed_tuples(inv.disc, inv.m, inv.n)?.len();
            Ok(record([
                ("disc", inv.disc.into()),
                ("m", inv.m.into()),
                ("n", inv.n.into()),
                ("orbits", rational(&orbits)),
                ("tuples", tuples.into()),
            ]))
        }
        Command::Verify(v) => Ok(Output::Report(match v {
            VerifyCommand::Prop2 { disc, limit } => {
                verify::coefficient_identity_suite(&[Discriminant::new(disc)?], limit)?
            }
            VerifyCommand::Ptilde2 { disc, lmax } => {
                verify::ptilde2_suite(&[Discriminant::new(disc)?], lmax)?
            }
            VerifyCommand::Composition { disc } => {
                verify::composition_suite(&[Discriminant::new(disc)?])?
            }
            VerifyCommand::Local {
                disc,
                p,
                alpha,
                order,
            } => {
                let alphas = alpha
                    .iter()
                    .map(|a| parse_alpha(a))
                    .collect::<Result<Vec<_>>>()?;
                verify::local_suite(Discriminant::new(disc)?, &[p], &alphas, order)?
            }
            VerifyCommand::Fusion(s) => verify::fusion_suite(s.seed, s.cases),
            VerifyCommand::Characters(s) => verify::characters_suite(s.seed, s.cases),
            VerifyCommand::Pfaffian(s) => verify::pfaffian_suite(s.seed, s.cases),
        })),
        Command::Zeta(ZetaCommand::Shintani { point, amax, dmax }) => {
            let z = shintani_z(
                parse_complex(&point.s)?,
                parse_complex(&point.w)?,
                amax,
                dmax,
            );
            let mut map = Map::new();
            complex_fields(&mut map, "s", z.s);
            complex_fields(&mut map, "w", z.w);
            map.insert("amax".into(), amax.into());
            map.insert("dmax".into(), dmax.into());
            complex_fields(&mut map, "xi1", z.xi1);
            complex_fields(&mut map, "xi2", z.xi2);
            complex_fields(&mut map, "value", z.value);
            complex_fields(&mut map, "last_shell", z.last_shell);
            Ok(Output::Record(map))
        }
        Command::Zeta(ZetaCommand::Wmds { point, mmax, disc }) => {
            let (s, w) = (parse_complex(&point.s)?, parse_complex(&point.w)?);
            let dset = disc
                .iter()
                .map(|&d| Discriminant::new(d))
                .collect::<Result<Vec<_>>>()?;
            let value = wmds_z(s, w, mmax, &dset)?;
            let mut map = Map::new();
            complex_fields(&mut map, "s", s);
            complex_fields(&mut map, "w", w);
            map.insert("mmax".into(), mmax.into());
            map.insert(
                "discs".into(),
                disc.iter()
                    .map(|d| d.to_string())
                    .collect::<Vec<_>>()
                    .join(";")
                    .into(),
            );
            complex_fields(&mut map, "value", value);
            Ok(Output::Record(map))
        }
    }
}

/// Nested objects become dotted keys.
pub fn flatten(value: &Value) -> Vec<(String, Value)> {
    fn walk(prefix: &str, value: &Value, out: &mut Vec<(String, Value)>) {
        match value {
            Value::Object(map) if !prefix.is_empty() || !map.is_empty() => {
                for (k, v) in map {
                    let key = if prefix.is_empty() {
                        k.clone()
                    } else {
                        format!("{prefix}.{k}")
                    };
                    walk(&key, v, out);
                }
            }
            other => out.push((prefix.to_string(), other.clone())),
        }
    }
    let mut out = Vec::new();
    walk("", value, &mut out);
    out
}

fn scalar_text(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn render(value: &Value, format: Format, out: &mut dyn Write) -> std::io::Result<()> {
    match format {
        Format::Json => writeln!(out, "{value}"),
        Format::Text => {
            for (k, v) in flatten(value) {
                writeln!(out, "{k}: {}", scalar_text(&v))?;
            }
            Ok(())
        }
        Format::Csv => {
            let fields = flatten(value);
            let mut w = csv::Writer::from_writer(out);
            w.write_record(fields.iter().map(|(k, _)| k.as_str()))?;
            w.write_record(fields.iter().map(|(_, v)| scalar_text(v)))?;
            w.flush()
        }
    }
}

/// Runs the command line with explicit output streams and returns the exit code.
pub fn run_with<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return if code == 0 { 0 } else { 2 };
        }
    };
    match execute(cli.command) {
        Ok(output) => {
            let (value, code) = match output {
                Output::Record(map) => (Value::Object(map), 0),
                Output::Report(r) => {
                    let code = if r.passed() { 0 } else { 1 };
                    (serde_json::to_value(&r).expect("report serializes"), code)
                }
            };
            if let Err(e) = render(&value, cli.format, out) {
                let _ = writeln!(err, "error: {e}");
                return 2;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with(
        argv,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("cubezeta").chain(args.iter().copied());
        let code = run_with(argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn classnum_json() {
        let (code, out, _) = call(&["classnum", "--disc", "-23", "--format", "json"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), r#"{"disc":-23,"h":3}"#);
    }

    #[test]
    fn coefficient_identity_report() {
        let (code, out, _) = call(&["verify", "prop2", "--disc", "-23", "--limit", "5000"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["status"], "pass");
        assert_eq!(v["suite"], "prop2");
    }

    #[test]
    fn congruence_failure_is_invalid_input() {
        let (code, out, err) = call(&[
            "cube",
            "construct",
            "--disc",
            "-23",
            "--m",
            "1",
            "--n",
            "1",
            "--x",
            "0",
            "--y",
            "1",
        ]);
        assert_eq!(code, 2);
        assert!(out.is_empty());
        assert!(err.contains("x^2 = D (mod 4m)"), "{err}");
    }

    #[test]
    fn unknown_subcommand() {
        let (code, _, err) = call(&["frobnicate"]);
        assert_eq!(code, 2);
        assert!(err.contains("Usage"), "{err}");
    }

    #[test]
    fn cube_commands() {
        let (code, out, _) = call(&[
            "cube",
            "construct",
            "--disc",
            "-4",
            "--m",
            "1",
            "--n",
            "1",
            "--x",
            "0",
            "--y",
            "0",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["a"], 0);
        assert_eq!(v["h"], -1);
        let (code, out, _) = call(&[
            "cube",
            "invariants",
            "--cube",
            "0,1,1,0,1,0,0,-1",
            "--format",
            "text",
        ]);
        assert_eq!(code, 0);
        assert!(out.contains("disc: -4"));
        let (code, out, _) = call(&["cube", "orbits", "--disc", "-23", "--m", "2", "--n", "3"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["orbits"], "4/1");
        assert_eq!(v["tuples"], 4);
        let (code, _, _) = call(&["cube", "invariants", "--cube", "1,2,3"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn csv_output() {
        let (code, out, _) = call(&[
            "sqrtcount",
            "--d",
            "-23",
            "--modulus",
            "8",
            "--format",
            "csv",
        ]);
        assert_eq!(code, 0);
        assert_eq!(out, "count,d,modulus\n4,-23,8\n");
    }

    #[test]
    fn degenerate_alpha_is_invalid_input() {
        let (code, _, err) = call(&[
            "verify", "local", "--disc", "-23", "--p", "3", "--alpha", "1",
        ]);
        assert_eq!(code, 2);
        assert!(err.contains("alpha^2 = 1"), "{err}");
        let (code, _, _) = call(&["verify", "local", "--disc", "-23", "--p", "23"]);
        assert_eq!(code, 2);
    }

    #[test]
    fn zeta_commands() {
        let (code, out, _) = call(&[
            "zeta", "shintani", "--s", "2", "--w", "2", "--amax", "1", "--dmax", "1",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["value_re"], 2.0);
        let (code, out, _) = call(&[
            "zeta", "wmds", "--s", "2", "--w", "1", "--mmax", "1", "--disc", "5",
        ]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert!((v["value_re"].as_f64().unwrap() - 0.2).abs() < 1e-15);
        let (code, _, _) = call(&[
            "zeta", "wmds", "--s", "2", "--w", "1", "--mmax", "1", "--disc", "8",
        ]);
        assert_eq!(code, 2);
    }
}
