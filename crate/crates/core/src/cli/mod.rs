//! Command-line driver. Every randomized command is determined by `--seed`.
//!
//! Exit codes: 0 on success, 2 on a structured failure (`Ambiguous`,
//! `CostExceeded`, `DecodeFailure`, `NotEquivalent`, ...), 1 on usage, input,
//! or I/O errors.

pub mod format;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::ser::{Serialize, SerializeMap, Serializer};
use serde_json::{json, Value};

use crate::affine::{
    affine_group, brute_force_aut, ga_order, minimal_degree_affine, DEFAULT_ENUMERATION_BOUND,
};
use crate::code::{dual, hull, min_distance, weight_enumerator, LinearCode, DEFAULT_CAP};
use crate::cryptosys::{decrypt, encrypt, key_pair_from_parts, keygen, known_code_instance, PublicKey};
use crate::error::Error;
use crate::f2linalg::{apply_perm_cols, mul, BitMatrix};
use crate::hsp::rm_hsp_check;
use crate::rm::{rm_generator, rm_raw_generator, RmParams};
use crate::ssa::{brute_force_equivalence, random_equivalence_instance, run_benchmark, solve_equivalence};

#[derive(Parser, Debug)]
#[command(name = "codequiv", version, about = "Binary code equivalence toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Machine-readable report.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Monomial generator matrix of RM(r, m).
    RmGen {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generator of the dual code.
    Dual {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generator of the hull (code ∩ dual).
    Hull {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weight enumerator, by exhaustive enumeration.
    Wef {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Minimum distance, by exhaustive enumeration.
    Mindist {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Writes public.b2, params.txt, secret_s.b2 and secret_p.txt into --out.
    Keygen {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Encrypts the message vector in --in with the key directory --key.
    Encrypt {
        #[arg(long)]
        key: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Decrypts the ciphertext vector in --in with the key directory --key.
    Decrypt {
        #[arg(long)]
        key: PathBuf,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Writes known.b2, public.b2, hidden_s.b2 and hidden_p.txt into --out,
    /// from RM(r, m) (--r/--m) or a random [n, k] code with hull dimension 1..=6 (--n/--k).
    Instance {
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Support splitting attack on the instance directory --in.
    SsaAttack {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// Directory for the recovered s.b2 and p.txt.
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Exhaustive search over all permutations (n <= 8) on the instance directory --in.
    BruteEquiv {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Minimal degree of GA(m, 2) by enumeration.
    AutMinDegree {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_BOUND)]
        bound: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Automorphism group by scanning S_n (n <= 8), from --in or RM(--r, --m).
    AutBrute {
        #[arg(long = "in")]
        input: Option<PathBuf>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Hardness conditions for RM(r, m).
    HspCheck {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        m: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Support splitting success rate on random instances.
    Bench {
        #[arg(long, default_value_t = 32)]
        n: usize,
        #[arg(long, default_value_t = 16)]
        k: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        #[command(flatten)]
        common: Common,
    },
}

/// An ordered key/value report, printed as `key: value` lines or as JSON.
#[derive(Debug, Default)]
struct Report(Vec<(&'static str, Value)>);

impl Report {
    fn push(&mut self, key: &'static str, value: impl Into<Value>) -> &mut Self {
        self.0.push((key, value.into()));
        self
    }

    fn render(&self, as_json: bool) -> String {
        if as_json {
            let mut s = serde_json::to_string_pretty(self).expect("report serializes");
            s.push('\n');
            return s;
        }
        let mut s = String::new();
        for (k, v) in &self.0 {
            let shown = match v {
                Value::String(text) => text.clone(),
                other => other.to_string(),
            };
            s.push_str(&format!("{k}: {shown}\n"));
        }
        s
    }
}

impl Serialize for Report {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

enum CliError {
    Usage(String),
    Io(PathBuf, std::io::Error),
    Lib(Error),
    /// A structured failure with its report already built.
    Failure(Report, Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

type CliResult<T> = Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError::Io(path.to_owned(), e))
}

fn write(path: &Path, contents: &str) -> CliResult<()> {
    fs::write(path, contents).map_err(|e| CliError::Io(path.to_owned(), e))
}

fn ensure_dir(path: &Path) -> CliResult<()> {
    fs::create_dir_all(path).map_err(|e| CliError::Io(path.to_owned(), e))
}

fn read_matrix(path: &Path) -> CliResult<BitMatrix> {
    Ok(format::parse_matrix(&read(path)?)?)
}

/// Writes to `out` or returns the text for standard output.
fn emit(out: &Option<PathBuf>, contents: String) -> CliResult<Option<String>> {
    match out {
        Some(p) => {
            write(p, &contents)?;
            Ok(None)
        }
        None => Ok(Some(contents)),
    }
}

fn failure_report(e: &Error) -> Report {
    let mut r = Report::default();
    r.push("status", e.kind());
    r.push("detail", e.to_string());
    if let Error::Ambiguous { blocks } = e {
        r.push("blocks", json!(blocks));
    }
    r
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn execute(cmd: Command) -> CliResult<(String, bool)> {
    let mut json_mode = false;
    let text: Option<String> = match cmd {
        Command::RmGen { r, m, out } => {
            let g = rm_raw_generator(&RmParams::new(r, m)?)?;
            emit(&out, format::write_matrix(&g))?
        }
        Command::Dual { input, out } => {
            let c = LinearCode::from_generator(&read_matrix(&input)?);
            emit(&out, format::write_matrix(dual(&c).generator()))?
        }
        Command::Hull { input, out } => {
            let c = LinearCode::from_generator(&read_matrix(&input)?);
            emit(&out, format::write_matrix(hull(&c).generator()))?
        }
        Command::Wef { input, cap, common } => {
            json_mode = common.json;
            let c = LinearCode::from_generator(&read_matrix(&input)?);
            let mut r = Report::default();
            r.push("n", c.n()).push("k", c.k());
            match weight_enumerator(&c, cap) {
                Ok(we) => {
                    r.push("status", "ok").push("counts", json!(we.counts()));
                    Some(r.render(json_mode))
                }
                Err(e) => return Err(structured(r, e)),
            }
        }
        Command::Mindist { input, cap, common } => {
            json_mode = common.json;
            let c = LinearCode::from_generator(&read_matrix(&input)?);
            let mut r = Report::default();
            r.push("n", c.n()).push("k", c.k());
            match min_distance(&c, cap) {
                Ok(d) => {
                    r.push("status", "ok").push("min_distance", d);
                    Some(r.render(json_mode))
                }
                Err(e) => return Err(structured(r, e)),
            }
        }
        Command::Keygen { r, m, seed, out } => {
            let (sk, pk) = keygen(r, m, &mut rng(seed))?;
            ensure_dir(&out)?;
            write(&out.join("public.b2"), &format::write_matrix(&pk.generator))?;
            write(&out.join("params.txt"), &format::write_params(&sk.params))?;
            write(&out.join("secret_s.b2"), &format::write_matrix(&sk.scrambler))?;
            write(&out.join("secret_p.txt"), &format::write_permutation(&sk.permutation))?;
            let mut rep = Report::default();
            rep.push("k", pk.k()).push("n", pk.n()).push("t", pk.t);
            Some(rep.render(false))
        }
        Command::Encrypt { key, input, out, seed } => {
            let (_, t) = format::parse_params(&read(&key.join("params.txt"))?)?;
            let pk = PublicKey {
                generator: read_matrix(&key.join("public.b2"))?,
                t,
            };
            let msg = format::parse_vector(&read(&input)?)?;
            let ct = encrypt(&pk, &msg, &mut rng(seed))?;
            emit(&out, format::write_vector(&ct))?
        }
        Command::Decrypt { key, input, out } => {
            let (params, _) = format::parse_params(&read(&key.join("params.txt"))?)?;
            let s = read_matrix(&key.join("secret_s.b2"))?;
            let p = format::parse_permutation(&read(&key.join("secret_p.txt"))?)?;
            let (sk, _) = key_pair_from_parts(params, s, p)?;
            let ct = format::parse_vector(&read(&input)?)?;
            let msg = decrypt(&sk, &ct).map_err(|e| structured(Report::default(), e))?;
            emit(&out, format::write_vector(&msg))?
        }
        Command::Instance { r, m, n, k, seed, out } => {
            let mut g = rng(seed);
            let inst = match (r, m, n, k) {
                (Some(r), Some(m), None, None) => known_code_instance(r, m, &mut g)?,
                (None, None, Some(n), Some(k)) => random_equivalence_instance(n, k, 1..=6, &mut g)?,
                _ => return Err(CliError::Usage("instance needs either --r and --m, or --n and --k".into())),
            };
            ensure_dir(&out)?;
            write(&out.join("known.b2"), &format::write_matrix(&inst.known))?;
            write(&out.join("public.b2"), &format::write_matrix(&inst.public))?;
            write(&out.join("hidden_s.b2"), &format::write_matrix(&inst.hidden_scrambler))?;
            write(&out.join("hidden_p.txt"), &format::write_permutation(&inst.hidden_permutation))?;
            let mut rep = Report::default();
            rep.push("k", inst.known.rows()).push("n", inst.known.cols());
            Some(rep.render(false))
        }
        Command::SsaAttack { input, cap, out, common } => {
            json_mode = common.json;
            let known = read_matrix(&input.join("known.b2"))?;
            let public = read_matrix(&input.join("public.b2"))?;
            let solved = solve_equivalence(&known, &public, cap);
            Some(equivalence_report(solved, &known, &public, &out)?.render(json_mode))
        }
        Command::BruteEquiv { input, out, common } => {
            json_mode = common.json;
            let known = read_matrix(&input.join("known.b2"))?;
            let public = read_matrix(&input.join("public.b2"))?;
            let solved = brute_force_equivalence(&known, &public);
            Some(equivalence_report(solved, &known, &public, &out)?.render(json_mode))
        }
        Command::AutMinDegree { m, bound, common } => {
            json_mode = common.json;
            let mut r = Report::default();
            r.push("m", m);
            match minimal_degree_affine(m, bound) {
                Ok(d) => {
                    r.push("status", "ok")
                        .push("group_order", ga_order(m).order.to_string())
                        .push("min_degree", d)
                        .push("half_length", 1u64 << (m - 1));
                    Some(r.render(json_mode))
                }
                Err(e) => return Err(structured(r, e)),
            }
        }
        Command::AutBrute { input, r, m, common } => {
            json_mode = common.json;
            let (c, affine_m) = match (input, r, m) {
                (Some(path), None, None) => (LinearCode::from_generator(&read_matrix(&path)?), None),
                (None, Some(r), Some(m)) => (rm_generator(r, m)?, Some(m)),
                _ => return Err(CliError::Usage("aut-brute needs --in, or --r and --m".into())),
            };
            let mut rep = Report::default();
            rep.push("n", c.n()).push("k", c.k());
            let auts = match brute_force_aut(&c) {
                Ok(a) => a,
                Err(e) => return Err(structured(rep, e)),
            };
            rep.push("status", "ok").push("aut_size", auts.len());
            if let Some(m) = affine_m {
                let ga: std::collections::BTreeSet<_> = affine_group(m, DEFAULT_ENUMERATION_BOUND)?
                    .iter()
                    .map(|s| s.as_permutation())
                    .collect::<Result<_, _>>()?;
                let found: std::collections::BTreeSet<_> = auts.into_iter().collect();
                rep.push("affine_group_size", ga.len()).push("equals_affine_group", found == ga);
            }
            Some(rep.render(json_mode))
        }
        Command::HspCheck { r, m, common } => {
            json_mode = common.json;
            let h = rm_hsp_check(r, m)?;
            let v = &h.verdict;
            let mut rep = Report::default();
            rep.push("r", h.r)
                .push("m", h.m)
                .push("n", v.n.clone())
                .push("k", h.k)
                .push("size_cond", v.size_cond)
                .push("aut_cond", v.aut_cond)
                .push("degree_cond", v.degree_cond)
                .push("overall", v.overall)
                .push("r_small", h.r_small)
                .push("k_squared_cond", h.k_squared_cond)
                .push("dimension_bound", json!(h.dimension_bound))
                .push("size_lhs_log2", v.size_lhs_log2.clone())
                .push("size_rhs_log2", v.size_rhs_log2.clone())
                .push("aut_order", h.aut_order.clone())
                .push("log2_aut_bound", h.log2_aut_bound)
                .push("aut_threshold", v.aut_threshold.clone())
                .push("min_degree", v.min_degree.clone())
                .push("degree_threshold", v.degree_threshold.clone())
                .push("aut_surrogate", v.aut_surrogate)
                .push("degree_surrogate", v.degree_surrogate);
            Some(rep.render(json_mode))
        }
        Command::Bench { n, k, trials, seed, cap, common } => {
            json_mode = common.json;
            let b = run_benchmark(n, k, trials, seed, cap)?;
            let mut rep = Report::default();
            for (key, value) in serde_json::to_value(&b)
                .expect("serializable")
                .as_object()
                .expect("struct")
                .iter()
            {
                let key: &'static str = match key.as_str() {
                    "n" => "n",
                    "k" => "k",
                    "seed" => "seed",
                    "cap" => "cap",
                    "trials" => "trials",
                    "successes" => "successes",
                    "invalid" => "invalid",
                    "ambiguous" => "ambiguous",
                    "cost_exceeded" => "cost_exceeded",
                    "not_equivalent" => "not_equivalent",
                    _ => "other_errors",
                };
                rep.push(key, value.clone());
            }
            Some(rep.render(json_mode))
        }
    };
    Ok((text.unwrap_or_default(), json_mode))
}

fn structured(mut report: Report, e: Error) -> CliError {
    if e.is_structured_failure() {
        for (k, v) in failure_report(&e).0 {
            report.push(k, v);
        }
        CliError::Failure(report, e)
    } else {
        CliError::Lib(e)
    }
}

fn equivalence_report(
    solved: crate::error::Result<(BitMatrix, crate::f2linalg::Permutation)>,
    known: &BitMatrix,
    public: &BitMatrix,
    out: &Option<PathBuf>,
) -> CliResult<Report> {
    let mut rep = Report::default();
    rep.push("n", known.cols()).push("k", known.rows());
    let (s, p) = solved.map_err(|e| structured(Report(rep.0.clone()), e))?;
    let verified = apply_perm_cols(&mul(&s, known)?, &p)? == *public;
    rep.push("status", "ok")
        .push("verified", verified)
        .push("permutation", json!(p.image()));
    if let Some(dir) = out {
        ensure_dir(dir)?;
        write(&dir.join("s.b2"), &format::write_matrix(&s))?;
        write(&dir.join("p.txt"), &format::write_permutation(&p))?;
    }
    Ok(rep)
}

/// Runs the tool on `args` (including the program name) and returns the
/// process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = stdout.write_all(rendered.as_bytes());
            } else {
                let _ = stderr.write_all(rendered.as_bytes());
            }
            return code;
        }
    };
    let json_flag = command_json(&cli.command);
    match execute(cli.command) {
        Ok((text, _)) => {
            let _ = stdout.write_all(text.as_bytes());
            0
        }
        Err(CliError::Failure(report, e)) => {
            let _ = stdout.write_all(report.render(json_flag).as_bytes());
            let _ = writeln!(stderr, "error: {e}");
            2
        }
        Err(CliError::Lib(e)) if e.is_structured_failure() => {
            let _ = stdout.write_all(failure_report(&e).render(json_flag).as_bytes());
            let _ = writeln!(stderr, "error: {e}");
            2
        }
        Err(CliError::Lib(e)) => {
            let _ = writeln!(stderr, "error: {e}");
            1
        }
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(stderr, "usage error: {msg}");
            1
        }
        Err(CliError::Io(path, e)) => {
            let _ = writeln!(stderr, "error: {}: {e}", path.display());
            1
        }
    }
}

fn command_json(cmd: &Command) -> bool {
    match cmd {
        Command::Wef { common, .. }
        | Command::Mindist { common, .. }
        | Command::SsaAttack { common, .. }
        | Command::BruteEquiv { common, .. }
        | Command::AutMinDegree { common, .. }
        | Command::AutBrute { common, .. }
        | Command::HspCheck { common, .. }
        | Command::Bench { common, .. } => common.json,
        _ => false,
    }
}
