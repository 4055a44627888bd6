//! Command-line front end.
//!
//! Machine-readable output is JSON on stdout (or `--out`); summaries go to
//! stderr. Exit codes: 0 success, 1 a verification failed, 2 usage or input
//! error. `QLATTICE_THREADS` or `--threads` caps the worker pool.

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use crate::error::Error;
use crate::haction::verify_decomposition;
use crate::json::{basis_from_json, basis_to_json, parse, to_string};
use crate::qcomb::verify_identities;
use crate::scheme::{
    eigentable, grassmann_tree_oracle, johnson_rooted_tree_count, johnson_tree_oracle,
    laplacian_from_eigentable, laplacian_spectrum, rooted_tree_count, theorem_gg_sides,
    theorem_jg_sides,
};
use crate::sjb::{construct_sjb, verify_sjb, VerifyMode};

pub const THREADS_ENV: &str = "QLATTICE_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "qlattice",
    version,
    about = "Exact symmetric Jordan bases of subspace lattices"
)]
struct Cli {
    /// Worker threads (default: $QLATTICE_THREADS or all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    Full,
    Spot,
    None,
}

impl From<Mode> for VerifyMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Full => VerifyMode::Full,
            Mode::Spot => VerifyMode::Spot,
            Mode::None => VerifyMode::None,
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build J_q(n) and write it as JSON.
    Construct {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "full")]
        verify: Mode,
    },
    /// Re-verify a basis file.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "full")]
        mode: Mode,
    },
    /// Check the decomposition of V(B_q(n+1)) under the translation group.
    Decompose {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
    },
    /// Grassmann scheme eigenvalues and Laplacian spectrum on B_q(n)_m.
    Scheme {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Rooted spanning tree count of the Grassmann graph C_q(n, m).
    Trees {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        /// Also count with the matrix-tree theorem and check the tree identity.
        #[arg(long)]
        oracle: bool,
    },
    /// Rooted spanning trees of the Johnson graph C(n, m) and its tree identity.
    Johnson {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Check the Gaussian binomial and Galois number identities up to n.
    Identities {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: usize,
    },
}

enum Failure {
    Usage(String),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Verification(_) => Failure::Verify(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

struct Output {
    json: Value,
    summary: String,
    passed: bool,
    path: Option<PathBuf>,
}

fn check_prime(q: u64) -> Result<(), Failure> {
    if crate::is_supported_prime(q) {
        Ok(())
    } else {
        Err(Failure::Usage(format!(
            "q must be prime (2 <= q <= 251), got {q}"
        )))
    }
}

fn check_m(n: usize, m: usize) -> Result<(), Failure> {
    if 2 * m > n {
        Err(Failure::Usage(format!(
            "m must satisfy 0 <= m <= n/2, got n = {n}, m = {m}"
        )))
    } else {
        Ok(())
    }
}

fn report_output(r: crate::Report, path: Option<PathBuf>) -> Output {
    Output {
        json: r.to_json(),
        summary: r.to_string(),
        passed: r.all_passed(),
        path,
    }
}

fn execute(cmd: Command) -> Result<Output, Failure> {
    match cmd {
        Command::Construct { q, n, out, verify } => {
            check_prime(q)?;
            let b = construct_sjb(n, q)?;
            let r = verify_sjb(&b, verify.into());
            let summary = format!(
                "{} chains, {} vectors\n{r}",
                b.chains.len(),
                b.vector_count()
            );
            Ok(Output {
                json: basis_to_json(&b),
                summary,
                passed: r.all_passed(),
                path: out,
            })
        }
        Command::Verify { file, mode } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", file.display())))?;
            let b = basis_from_json(&parse(&text)?)?;
            Ok(report_output(verify_sjb(&b, mode.into()), None))
        }
        Command::Decompose { q, n } => {
            check_prime(q)?;
            Ok(report_output(verify_decomposition(n, q)?, None))
        }
        Command::Scheme { q, n, m } => {
            check_prime(q)?;
            check_m(n, m)?;
            let b = construct_sjb(n, q)?;
            let rows = eigentable(n, m, &b)?;
            let from_rows = laplacian_from_eigentable(&rows);
            let spectrum = laplacian_spectrum(n, m, q)?;
            let agree = from_rows.len() == spectrum.len()
                && from_rows
                    .iter()
                    .zip(&spectrum)
                    .all(|((_, l), (v, _))| l.to_biguint().as_ref() == Some(v));
            let json = json!({
                "q": q,
                "n": n,
                "m": m,
                "eigentable": rows.iter().map(|r| json!({
                    "start_rank": r.start_rank,
                    "eigenvalues": r.eigenvalues.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
                "laplacian_from_eigentable": from_rows.iter().map(|(k, l)| json!({
                    "start_rank": k,
                    "eigenvalue": l.to_string(),
                })).collect::<Vec<_>>(),
                "laplacian_spectrum": spectrum.iter().map(|(v, k)| json!({
                    "eigenvalue": v.to_string(),
                    "multiplicity": k.to_string(),
                })).collect::<Vec<_>>(),
                "match": agree,
            });
            let summary = format!(
                "{} eigenvalue rows; Laplacian spectrum agrees: {agree}\n",
                rows.len()
            );
            Ok(Output {
                json,
                summary,
                passed: agree,
                path: None,
            })
        }
        Command::Trees { q, n, m, oracle } => {
            check_prime(q)?;
            check_m(n, m)?;
            let formula = rooted_tree_count(n, m, q)?;
            if !oracle {
                return Ok(Output {
                    json: json!({ "formula": formula.to_string() }),
                    summary: format!("rooted spanning trees of C_{q}({n},{m}): {formula}\n"),
                    passed: true,
                    path: None,
                });
            }
            let counted = grassmann_tree_oracle(n, m, q)?;
            let agree = counted == formula;
            let mut json = json!({
                "formula": formula.to_string(),
                "oracle": counted.to_string(),
                "match": agree,
            });
            let mut passed = agree;
            let mut summary = format!(
                "rooted spanning trees of C_{q}({n},{m}): {formula} = {counted}: {agree}\n"
            );
            if m >= 1 {
                let (l, r) = theorem_gg_sides(n, m, q)?;
                passed &= l == r;
                summary.push_str(&format!("tree identity holds: {}\n", l == r));
                json["identity"] =
                    json!({ "left": l.to_string(), "right": r.to_string(), "holds": l == r });
            }
            Ok(Output {
                json,
                summary,
                passed,
                path: None,
            })
        }
        Command::Johnson { n, m } => {
            check_m(n, m)?;
            let formula = johnson_rooted_tree_count(n, m)?;
            let counted = johnson_tree_oracle(n, m)?;
            let agree = formula == counted;
            let mut json = json!({
                "n": n,
                "m": m,
                "formula": formula.to_string(),
                "oracle": counted.to_string(),
                "match": agree,
            });
            let mut passed = agree;
            if m >= 1 {
                let (l, r) = theorem_jg_sides(n, m)?;
                passed &= l == r;
                json["identity"] =
                    json!({ "left": l.to_string(), "right": r.to_string(), "holds": l == r });
            }
            let summary =
                format!("rooted spanning trees of C({n},{m}): {formula} = {counted}: {agree}\n");
            Ok(Output {
                json,
                summary,
                passed,
                path: None,
            })
        }
        Command::Identities { q, n } => {
            check_prime(q)?;
            Ok(report_output(verify_identities(n as i64, q)?, None))
        }
    }
}

fn thread_count(flag: Option<usize>) -> Result<Option<usize>, Failure> {
    if let Some(t) = flag {
        return Ok(Some(t));
    }
    match std::env::var(THREADS_ENV) {
        Ok(s) => s.trim().parse().map(Some).map_err(|_| {
            Failure::Usage(format!(
                "{THREADS_ENV} must be a positive integer, got {s:?}"
            ))
        }),
        Err(_) => Ok(None),
    }
}

/// Runs the command line `argv` (program name first) and returns the exit code.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(stdout, "{text}")
            } else {
                write!(stderr, "{text}")
            };
            return code;
        }
    };
    let result = thread_count(cli.threads).and_then(|threads| {
        let mut pool = rayon::ThreadPoolBuilder::new();
        if let Some(t) = threads {
            if t == 0 {
                return Err(Failure::Usage("thread count must be positive".into()));
            }
            pool = pool.num_threads(t);
        }
        let pool = pool.build().map_err(|e| Failure::Usage(e.to_string()))?;
        pool.install(|| execute(cli.command))
    });
    match result {
        Ok(out) => {
            let text = to_string(&out.json);
            let written = match &out.path {
                Some(p) => std::fs::write(p, &text)
                    .map_err(|e| format!("cannot write {}: {e}", p.display())),
                None => stdout.write_all(text.as_bytes()).map_err(|e| e.to_string()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {e}");
                return 2;
            }
            let _ = write!(stderr, "{}", out.summary);
            if out.passed {
                0
            } else {
                1
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            2
        }
        Err(Failure::Verify(msg)) => {
            let _ = writeln!(stderr, "verification failed: {msg}");
            1
        }
    }
}

/// [`run_with`] on the process streams.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with(
        argv,
        &mut std::io::stdout().lock(),
        &mut std::io::stderr().lock(),
    )
}
