//! Command-line front end. Every subcommand prints one compact JSON object
//! on standard output; errors go to standard error with a nonzero exit code.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::classifier::classify;
use crate::components::{count_ml, dim_component, enumerate_ml, sample_point};
use crate::error::{Error, Result};
use crate::git_quotient::{dim_git, enumerate_tpl, trace_fingerprint};
use crate::jordan_spec::jordan_data;
use crate::json;
use crate::qchains::associated_sequence;
use crate::qcommutant::{hom_ext, predicted_commutant_dim, qcommutant_basis};
use crate::qscalar::{Ell, FieldContext};

/// Seed used when neither `--seed` nor `QPLANE_SEED` is given.
pub const DEFAULT_SEED: u64 = 20_231_017;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_RELATION: i32 = 3;
pub const EXIT_EIGENVALUES: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "qplane",
    version,
    about = "Exact computations with q-commuting matrix pairs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List component indices with their dimensions (or GIT indices with --git).
    Enumerate {
        #[arg(long, value_parser = parse_ell)]
        ell: Ell,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        git: bool,
    },
    /// List GIT quotient indices (p, m, r) with their dimensions.
    GitEnumerate {
        #[arg(long, value_parser = parse_ell)]
        ell: Ell,
        #[arg(long)]
        n: usize,
    },
    /// Number of irreducible components.
    Count {
        #[arg(long, value_parser = parse_ell)]
        ell: Ell,
        #[arg(long)]
        n: usize,
    },
    /// Component index certified to contain a pair.
    Classify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Basis of the solutions of AX = qXA.
    Commutant {
        #[arg(long)]
        input: PathBuf,
    },
    /// Deterministic generic point of a stratum.
    Sample {
        #[arg(long, value_parser = parse_ell)]
        ell: Ell,
        /// Path to an index JSON file, or the JSON itself.
        #[arg(long)]
        index: String,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Trace invariants Tr(A^i B^j), 0 <= i, j <= max-degree.
    Invariants {
        #[arg(long)]
        input: PathBuf,
        /// Defaults to the matrix size.
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Dimensions of Hom and Ext between two modules.
    Homext {
        #[arg(long)]
        m1: PathBuf,
        #[arg(long)]
        m2: PathBuf,
    },
    /// Chain-length counts associated with eigenvalue multiplicities.
    Chains {
        #[arg(long, value_parser = parse_ell)]
        ell: Ell,
        /// Comma-separated multiplicities, e.g. 3,2,3,1.
        #[arg(long, value_delimiter = ',')]
        counts: Vec<usize>,
    },
}

fn parse_ell(text: &str) -> std::result::Result<Ell, String> {
    Ell::parse(text).map_err(|e| e.to_string())
}

fn exit_code(err: &Error) -> i32 {
    match err {
        Error::RelationViolated => EXIT_RELATION,
        Error::EigenvaluesNotFound(_) => EXIT_EIGENVALUES,
        _ => EXIT_INVALID,
    }
}

fn read_json(path: &Path) -> Result<Value> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::invalid(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::invalid(format!("invalid JSON in {}: {e}", path.display())))
}

fn inline_or_file(arg: &str) -> Result<Value> {
    if arg.trim_start().starts_with('{') {
        serde_json::from_str(arg).map_err(|e| Error::invalid(format!("invalid JSON: {e}")))
    } else {
        read_json(Path::new(arg))
    }
}

fn env_seed() -> Result<Option<u64>> {
    match std::env::var("QPLANE_SEED") {
        Ok(s) => {
            s.trim().parse().map(Some).map_err(|_| {
                Error::invalid(format!("QPLANE_SEED `{s}` is not an unsigned integer"))
            })
        }
        Err(_) => Ok(None),
    }
}

fn execute(command: Command) -> Result<Value> {
    match command {
        Command::Enumerate { ell, n, git: true } | Command::GitEnumerate { ell, n } => {
            FieldContext::for_ell(ell)?;
            let list: Vec<Value> = enumerate_tpl(ell, n)
                .iter()
                .map(|g| {
                    let mut obj = json::git_index_to_json(g);
                    obj.insert("dim".into(), json!(dim_git(g, ell)));
                    Value::Object(obj)
                })
                .collect();
            Ok(json!({ "ell": ell.to_string(), "n": n, "git": list }))
        }
        Command::Enumerate { ell, n, git: false } => {
            FieldContext::for_ell(ell)?;
            let list: Vec<Value> = enumerate_ml(ell, n)
                .iter()
                .map(|idx| {
                    let mut obj = json::index_to_json(idx);
                    obj.insert("dim".into(), json!(dim_component(idx)));
                    Value::Object(obj)
                })
                .collect();
            Ok(json!({ "ell": ell.to_string(), "n": n, "indices": list }))
        }
        Command::Count { ell, n } => {
            FieldContext::for_ell(ell)?;
            // u128 exceeds the JSON number range serde_json accepts from u64.
            let count = count_ml(ell, n);
            let value = u64::try_from(count)
                .map(|c| json!(c))
                .unwrap_or_else(|_| json!(count.to_string()));
            Ok(json!({ "count": value }))
        }
        Command::Classify { input } => {
            let v = read_json(&input)?;
            let pair = json::pair_from_json(&v)?;
            let hints = json::hints_from_json(&v, pair.ctx())?;
            let spec = jordan_data(pair.a(), &hints)?;
            let idx = classify(&pair, &hints)?;
            Ok(json!({
                "index": Value::Object(json::index_to_json(&idx)),
                "jordan": json::spec_to_json(&spec),
            }))
        }
        Command::Commutant { input } => {
            let v = read_json(&input)?;
            let ctx = json::field_from_json(json_field(&v, "field")?)?;
            let a = json::matrix_from_json(json_field(&v, "A")?, ctx)?;
            let basis = qcommutant_basis(&a)?;
            let mut out = Map::new();
            out.insert("dim".into(), json!(basis.len()));
            let hints = json::hints_from_json(&v, ctx)?;
            if let Ok(spec) = jordan_data(&a, &hints) {
                out.insert("predicted".into(), json!(predicted_commutant_dim(&spec)));
            }
            out.insert(
                "basis".into(),
                Value::Array(basis.iter().map(json::matrix_to_json).collect()),
            );
            Ok(Value::Object(out))
        }
        Command::Sample { ell, index, seed } => {
            let seed = match seed {
                Some(s) => s,
                None => env_seed()?.unwrap_or(DEFAULT_SEED),
            };
            let idx = json::index_from_json(&inline_or_file(&index)?, ell)?;
            let pair = sample_point(&idx, seed)?;
            let mut out = json::pair_to_json(&pair);
            out.insert("index".into(), Value::Object(json::index_to_json(&idx)));
            out.insert("seed".into(), json!(seed));
            Ok(Value::Object(out))
        }
        Command::Invariants { input, max_degree } => {
            let pair = json::pair_from_json(&read_json(&input)?)?;
            let degree = max_degree.unwrap_or(pair.size());
            Ok(json::fingerprint_to_json(&trace_fingerprint(&pair, degree)))
        }
        Command::Homext { m1, m2 } => {
            let p1 = json::pair_from_json(&read_json(&m1)?)?;
            let p2 = json::pair_from_json(&read_json(&m2)?)?;
            let report = hom_ext(&p1, &p2)?;
            Ok(json!({
                "hom": report.hom_dim,
                "ext1": report.ext1_dim,
                "ext2": report.ext2_dim,
            }))
        }
        Command::Chains { ell, counts } => {
            FieldContext::for_ell(ell)?;
            Ok(json!({ "m": associated_sequence(&counts, ell)? }))
        }
    }
}

fn json_field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key)
        .ok_or_else(|| Error::invalid(format!("missing field `{key}`")))
}

/// Runs the CLI on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let _ = if e.use_stderr() {
                write!(err, "{e}")
            } else {
                write!(out, "{e}")
            };
            return code;
        }
    };
    match execute(cli.command) {
        Ok(value) => {
            let _ = writeln!(out, "{value}");
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "{}", json!({ "error": e.to_string() }));
            exit_code(&e)
        }
    }
}

pub fn run_from_env() -> i32 {
    run(
        std::env::args_os(),
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(
            std::iter::once("qplane").chain(args.iter().copied()),
            &mut out,
            &mut err,
        );
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn count_and_chains() {
        assert_eq!(
            run_str(&["count", "--ell", "2", "--n", "2"]),
            (0, "{\"count\":4}\n".into())
        );
        assert_eq!(
            run_str(&["chains", "--ell", "4", "--counts", "3,2,3,1"]),
            (0, "{\"m\":[2,0,1,1]}\n".into())
        );
    }

    #[test]
    fn bad_flags_exit_two() {
        assert_eq!(
            run_str(&["count", "--ell", "0", "--n", "2"]).0,
            EXIT_INVALID
        );
        assert_eq!(run_str(&["frobnicate"]).0, EXIT_INVALID);
        assert_eq!(
            run_str(&["chains", "--ell", "3", "--counts", "1,2"]).0,
            EXIT_INVALID
        );
    }
}
