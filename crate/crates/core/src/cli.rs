//! The `agpir` command line. [`run`] takes the argument list and output
//! streams so it can be driven from tests.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand};
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use thiserror::Error;

use crate::agcode::SubsetMode;
use crate::curve::{find_curve, find_max_curve, CurveError, CurveModel, CurveSummary};
use crate::params::{self, max_rate_g0, max_rate_g1, ParamsError};
use crate::pir_scheme::{
    build_scheme, verify_scheme, Database, Genus, SchemeDescriptor, SchemeError, SchemeParams,
};
use crate::sim_harness::{
    privacy_oracle_all_subsets, run_retrieval, run_retrieval_timed, security_oracle_all_subsets,
    SimError,
};

#[derive(Debug, Parser)]
#[command(
    name = "agpir",
    version,
    about = "Secure private information retrieval from evaluation codes on curves"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Count the rational points of y² = x³ + a x + b over F_p.
    CountPoints {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
    },
    /// First curve in (a, b) order with at least the given number of points.
    FindCurve {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        min_points: u64,
    },
    /// Build a scheme and write its JSON descriptor.
    Build {
        #[arg(long)]
        p: u64,
        #[arg(long, value_parser = clap::value_parser!(u8).range(0..=1))]
        genus: u8,
        #[arg(long)]
        x: usize,
        #[arg(long)]
        t: usize,
        /// Fragments per file; the largest feasible value when omitted.
        #[arg(long)]
        l: Option<usize>,
        #[arg(long, requires = "b")]
        a: Option<u64>,
        #[arg(long, requires = "a")]
        b: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run one retrieval round on a random database and write the transcript.
    Simulate {
        #[arg(long)]
        scheme: PathBuf,
        #[arg(long)]
        files: usize,
        /// 0-based index of the requested file.
        #[arg(long)]
        theta: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
        /// Record wall-clock timings (makes the transcript non-reproducible).
        #[arg(long)]
        timing: bool,
    },
    /// Check a scheme descriptor; exits non-zero on failure.
    Verify {
        #[arg(long)]
        scheme: PathBuf,
        /// `all` or `sample:COUNT:SEED`.
        #[arg(long, default_value = "all")]
        subsets: SubsetArg,
        /// Also run the exhaustive privacy and security oracles.
        #[arg(long)]
        exhaustive_oracle: bool,
    },
    /// Compare both genera over X = T and write a CSV.
    Sweep {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        xt_min: usize,
        #[arg(long)]
        xt_max: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, requires = "b", conflicts_with = "preset")]
        a: Option<u64>,
        #[arg(long, requires = "a", conflicts_with = "preset")]
        b: Option<u64>,
        /// Named genus-1 curve, e.g. `fig1-127`.
        #[arg(long)]
        preset: Option<String>,
    },
}

/// Parsed `--subsets` value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubsetArg(pub SubsetMode);

impl FromStr for SubsetArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "all" {
            return Ok(SubsetArg(SubsetMode::All));
        }
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            ["sample", count, seed] => {
                let count = count.parse().map_err(|e| format!("bad COUNT: {e}"))?;
                let seed = seed.parse().map_err(|e| format!("bad SEED: {e}"))?;
                Ok(SubsetArg(SubsetMode::Sample { count, seed }))
            }
            _ => Err(format!("expected `all` or `sample:COUNT:SEED`, got {s:?}")),
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Params(#[from] ParamsError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{0}")]
    Usage(String),
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, contents: &[u8]) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_scheme(path: &Path) -> Result<crate::pir_scheme::SchemeInstance, CliError> {
    let desc = SchemeDescriptor::from_json(&read(path)?)?;
    Ok(desc.instantiate()?)
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code: 0 on success, 1 when verification fails,
/// 2 on errors.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn io(e: std::io::Error) -> CliError {
    CliError::Io {
        path: PathBuf::from("<stdout>"),
        source: e,
    }
}

/// `Ok(false)` signals a failed verification.
fn execute(cmd: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<bool, CliError> {
    match cmd {
        Command::CountPoints { p, a, b } => {
            let s = CurveSummary::of(&CurveModel::weierstrass(p, a, b)?)?;
            writeln!(out, "points={} Z={}", s.points, s.z).map_err(io)?;
        }
        Command::FindCurve { p, min_points } => {
            let s = CurveSummary::of(&find_curve(p, min_points)?)?;
            writeln!(out, "{}", serde_json::to_string(&s).expect("summary serializes"))
                .map_err(io)?;
        }
        Command::Build {
            p,
            genus,
            x,
            t,
            l,
            a,
            b,
            seed,
            out: path,
        } => {
            let genus = Genus::try_from(genus).map_err(CliError::Usage)?;
            let mut curve = a.zip(b);
            if genus == Genus::Zero && curve.is_some() {
                return Err(SchemeError::UnexpectedCurve.into());
            }
            let l = match (l, genus) {
                (Some(l), Genus::One) if l % 2 == 0 => {
                    writeln!(err, "warning: genus-1 L must be odd, using L = {}", l - 1)
                        .map_err(io)?;
                    l - 1
                }
                (Some(l), _) => l,
                (None, Genus::Zero) => max_rate_g0(p, x, t)?.l().ok_or_else(|| {
                    CliError::Usage(format!("no feasible L for q = {p}, X = {x}, T = {t}"))
                })?,
                (None, Genus::One) => {
                    let c = match curve {
                        Some((a, b)) => CurveModel::weierstrass(p, a, b)?,
                        None => find_max_curve(p)?,
                    };
                    let (ca, cb) = c.coefficients().expect("elliptic");
                    curve = Some((ca.value(), cb.value()));
                    max_rate_g1(p, x, t, Some(&c))?.l().ok_or_else(|| {
                        CliError::Usage(format!("no feasible odd L for q = {p}, X = {x}, T = {t}"))
                    })?
                }
            };
            let mut params = SchemeParams::new(p, genus, x, t, l, seed);
            params.curve = curve;
            let inst = build_scheme(&params)?;
            write(&path, inst.descriptor().to_json().as_bytes())?;
            writeln!(
                out,
                "built genus-{genus} scheme: L={} N={} rate={} ({:.4})",
                inst.l(),
                inst.n(),
                inst.rate(),
                inst.rate().value()
            )
            .map_err(io)?;
        }
        Command::Simulate {
            scheme,
            files,
            theta,
            seed,
            out: path,
            timing,
        } => {
            let inst = load_scheme(&scheme)?;
            // the database uses stream 1 of the seed; the protocol uses stream 0
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(1);
            let db = Database::random(inst.field(), files, inst.l(), &mut rng)?;
            let transcript = if timing {
                run_retrieval_timed(&inst, &db, theta, seed)?
            } else {
                run_retrieval(&inst, &db, theta, seed)?
            };
            write(&path, transcript.to_json().as_bytes())?;
            writeln!(out, "decoded file {theta}: {:?}", transcript.decoded).map_err(io)?;
        }
        Command::Verify {
            scheme,
            subsets,
            exhaustive_oracle,
        } => return verify(&scheme, subsets.0, exhaustive_oracle, out),
        Command::Sweep {
            p,
            xt_min,
            xt_max,
            out: path,
            a,
            b,
            preset,
        } => {
            let curve = match (a.zip(b), preset) {
                (Some((a, b)), _) => Some(CurveModel::weierstrass(p, a, b)?),
                (None, Some(name)) => {
                    let pr = params::preset(&name)?;
                    if pr.p != p {
                        return Err(CliError::Usage(format!(
                            "preset {name} is over F_{}, not F_{p}",
                            pr.p
                        )));
                    }
                    Some(pr.curve()?)
                }
                (None, None) => None,
            };
            let s = params::sweep(p, xt_min, xt_max, curve.as_ref())?;
            let file = fs::File::create(&path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            params::write_csv(&s.rows, file)?;
            let show = |v: Option<usize>| v.map_or("none".to_string(), |x| x.to_string());
            writeln!(out, "rows={}", s.rows.len()).map_err(io)?;
            writeln!(out, "crossover X=T={}", show(s.summary.crossover)).map_err(io)?;
            writeln!(out, "largest feasible genus 0: {}", show(s.summary.largest_feasible_g0))
                .map_err(io)?;
            writeln!(out, "largest feasible genus 1: {}", show(s.summary.largest_feasible_g1))
                .map_err(io)?;
            writeln!(out, "only genus 1 feasible: {:?}", s.summary.only_genus1).map_err(io)?;
        }
    }
    Ok(true)
}

fn verify(
    path: &Path,
    mode: SubsetMode,
    oracle: bool,
    out: &mut dyn Write,
) -> Result<bool, CliError> {
    let inst = match load_scheme(path) {
        Ok(i) => i,
        Err(CliError::Scheme(SchemeError::VerificationFailed(msg))) => {
            writeln!(out, "FAIL build: {msg}").map_err(io)?;
            return Ok(false);
        }
        Err(e) => return Err(e),
    };
    let report = verify_scheme(&inst, mode);
    let mark = |ok: bool| if ok { "PASS" } else { "FAIL" };
    for c in &report.conditions {
        writeln!(out, "{} {}: {}", mark(c.passed), c.name, c.detail).map_err(io)?;
    }
    let subset_line = |name: String, r: &crate::agcode::SubsetReport| {
        format!(
            "{} {name}: {} of {} {}-subsets checked ({}), {} dependent",
            mark(r.passed()),
            r.checked,
            r.total_subsets,
            r.t,
            if r.exhaustive { "exhaustive" } else { "sampled" },
            r.failure_count
        )
    };
    writeln!(out, "{}", subset_line("privacy".into(), &report.privacy)).map_err(io)?;
    for (l, r) in report.security.iter().enumerate() {
        writeln!(out, "{}", subset_line(format!("security[{l}]"), r)).map_err(io)?;
    }
    let mut ok = report.passed();
    if oracle {
        let files = 2;
        let privacy = privacy_oracle_all_subsets(&inst, inst.t(), 0, 1, files)?;
        writeln!(
            out,
            "{} privacy oracle: {} subsets of size {}, {} distinguishing",
            mark(privacy.passed()),
            privacy.subsets,
            privacy.subset_size,
            privacy.failures.len()
        )
        .map_err(io)?;
        let mut rng = ChaCha8Rng::seed_from_u64(inst.params().seed);
        let db_a = Database::random(inst.field(), files, inst.l(), &mut rng)?;
        let db_b = Database::random(inst.field(), files, inst.l(), &mut rng)?;
        let security = security_oracle_all_subsets(&inst, inst.x(), &db_a, &db_b)?;
        writeln!(
            out,
            "{} security oracle: {} subsets of size {}, {} distinguishing",
            mark(security.passed()),
            security.subsets,
            security.subset_size,
            security.failures.len()
        )
        .map_err(io)?;
        ok &= privacy.passed() && security.passed();
    }
    writeln!(out, "{}", if ok { "verification passed" } else { "verification FAILED" })
        .map_err(io)?;
    Ok(ok)
}
