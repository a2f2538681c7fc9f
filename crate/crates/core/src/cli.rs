//! The `motdens` command-line front end.
//!
//! [`run`] takes the argument list and two sinks so that the whole tool can
//! be driven from tests; `main` only forwards to it.

use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::blowup::{random_sequence, run_script, BlowupState, ScriptError};
use crate::density::{curve_density, surface_density, CurveBranchData, DensityError};
use crate::mring::{MotivicClass, Poly, RationalFunctionL};
use crate::oracle::{cross_check, mean_value_curve, CheckReport, OracleError, OracleParams};
use crate::resgraph::{parse_graph, random_admissible, serialize_graph, validate, DualGraph};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

const EXIT_HELP: &str = "\
Exit codes:
  0  success (valid graph, formula/oracle match, identity holds)
  1  domain violation (inadmissible graph, mismatch, identity fails, bad values)
  2  I/O, parse or usage error
  3  oracle budget exhausted (no stabilization within n_max, period too large)";

#[derive(Parser, Debug)]
#[command(
    name = "motdens",
    version,
    about = "Motivic local densities from weighted dual resolution graphs",
    after_help = EXIT_HELP
)]
struct Cli {
    /// Truncation precision D: compare coefficients of L^0 .. L^-D.
    #[arg(long, global = true, default_value_t = 12)]
    precision: u64,
    /// Number of consecutive equal truncations required for a limit.
    #[arg(long, global = true, default_value_t = 3,
          value_parser = clap::value_parser!(u64).range(2..))]
    window: u64,
    /// Largest radius explored, as a multiple of the period e.
    #[arg(long, global = true, default_value_t = 60,
          value_parser = clap::value_parser!(u64).range(1..))]
    nmax: u64,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    machine: bool,
    /// Replace genus-0 symbolic curve classes by L + 1.
    #[arg(long, global = true)]
    rationalize: bool,
    /// Seed for random graphs and blowup sequences.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check a graph file against the admissibility rules.
    Validate { path: PathBuf },
    /// Closed-form density of the surface resolved by a graph file.
    Density { path: PathBuf },
    /// Density of a plane curve from its branch multiplicities, e.g. "2,3".
    Curve {
        #[arg(allow_hyphen_values = true)]
        mults: String,
        /// Also compute the mean value by enumeration.
        #[arg(long)]
        oracle: bool,
    },
    /// Compare the closed form with the brute-force mean value.
    Oracle {
        #[arg(required_unless_present = "random", conflicts_with = "random")]
        path: Option<PathBuf>,
        /// Check this many random admissible graphs instead of a file.
        #[arg(long)]
        random: Option<usize>,
    },
    /// Run blowups from the first blowup of the smooth plane germ.
    Blowup {
        #[arg(required_unless_present = "random", conflicts_with = "random")]
        script: Option<PathBuf>,
        /// Apply this many random blowups instead of a script.
        #[arg(long)]
        random: Option<usize>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputMode {
    Human,
    Machine,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub precision: u64,
    pub window: u64,
    pub nmax_multiplier: u64,
    pub output: OutputMode,
    pub rationalize: bool,
    pub seed: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        let p = OracleParams::default();
        RunConfig {
            precision: p.precision,
            window: p.window as u64,
            nmax_multiplier: p.n_max_multiplier,
            output: OutputMode::Human,
            rationalize: false,
            seed: 0,
        }
    }
}

impl RunConfig {
    fn oracle_params(&self) -> OracleParams {
        OracleParams {
            precision: self.precision,
            window: self.window as usize,
            n_max_multiplier: self.nmax_multiplier,
        }
    }

    fn header(&self) -> String {
        format!(
            "# precision={} window={} nmax={}*e rationalize={} seed={}",
            self.precision, self.window, self.nmax_multiplier, self.rationalize, self.seed
        )
    }
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    config: RunConfig,
}

impl Io<'_> {
    fn machine(&self) -> bool {
        self.config.output == OutputMode::Machine
    }

    fn line(&mut self, s: impl Display) {
        let _ = writeln!(self.out, "{s}");
    }

    fn diag(&mut self, s: impl Display) {
        let _ = writeln!(self.err, "{s}");
    }

    fn header(&mut self) {
        if !self.machine() {
            let h = self.config.header();
            self.line(h);
        }
    }

    fn json(&mut self, mut body: Value) {
        body["config"] = serde_json::to_value(&self.config).unwrap();
        let text = serde_json::to_string_pretty(&body).unwrap();
        self.line(text);
    }

    fn fail(&mut self, code: i32, msg: impl Display) -> i32 {
        self.diag(format!("error: {msg}"));
        code
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let informational = matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion);
            let rendered = e.render().to_string();
            if informational {
                let _ = write!(out, "{rendered}");
                return EXIT_OK;
            }
            let _ = write!(err, "{rendered}");
            return EXIT_INPUT;
        }
    };
    let config = RunConfig {
        precision: cli.precision,
        window: cli.window,
        nmax_multiplier: cli.nmax,
        output: if cli.machine { OutputMode::Machine } else { OutputMode::Human },
        rationalize: cli.rationalize,
        seed: cli.seed,
    };
    let mut io = Io { out, err, config };
    match cli.command {
        Command::Validate { path } => cmd_validate(&mut io, &path),
        Command::Density { path } => cmd_density(&mut io, &path),
        Command::Curve { mults, oracle } => cmd_curve(&mut io, &mults, oracle),
        Command::Oracle { path: Some(path), .. } => cmd_oracle_file(&mut io, &path),
        Command::Oracle { random, .. } => cmd_oracle_random(&mut io, random.unwrap_or(0)),
        Command::Blowup { script: Some(path), .. } => cmd_blowup_script(&mut io, &path),
        Command::Blowup { random, .. } => cmd_blowup_random(&mut io, random.unwrap_or(0)),
    }
}

fn load_graph(io: &mut Io<'_>, path: &Path) -> Result<DualGraph, i32> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| io.fail(EXIT_INPUT, format!("cannot read {}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| io.fail(EXIT_INPUT, format!("{}: {e}", path.display())))
}

fn cmd_validate(io: &mut Io<'_>, path: &Path) -> i32 {
    let g = match load_graph(io, path) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let report = validate(&g);
    if io.machine() {
        io.json(json!({
            "command": "validate",
            "path": path.display().to_string(),
            "report": report,
        }));
    } else {
        io.header();
        for v in &report.violations {
            io.line(format!("violation: {v}"));
        }
        for w in &report.warnings {
            io.line(format!("warning: {w}"));
        }
        io.line(if report.is_ok() { "valid" } else { "invalid" });
    }
    if report.is_ok() { EXIT_OK } else { EXIT_DOMAIN }
}

fn rationalize(g: &DualGraph, d: &MotivicClass) -> MotivicClass {
    let l_plus_one = RationalFunctionL::from_poly(Poly::lpow(1).add(&Poly::one()));
    g.vertices()
        .iter()
        .filter(|v| v.class.is_symbolic_rational())
        .fold(d.clone(), |acc, v| acc.substitute(&v.symbol(), &l_plus_one))
}

fn density_failure(io: &mut Io<'_>, e: &DensityError) -> i32 {
    match e {
        DensityError::NonAdmissibleAdjacency { a, b } => io.fail(
            EXIT_DOMAIN,
            format!(
                "{e}\n  rate-one components {a} and {b} meet; an admissible graph has no edge \
                 between two vertices with q = 1"
            ),
        ),
        _ => io.fail(EXIT_DOMAIN, e),
    }
}

fn cmd_density(io: &mut Io<'_>, path: &Path) -> i32 {
    let g = match load_graph(io, path) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let mut d = match surface_density(&g) {
        Ok(d) => d,
        Err(e) => return density_failure(io, &e),
    };
    for w in validate(&g).warnings {
        io.diag(format!("warning: {w}"));
    }
    if io.config.rationalize {
        d = rationalize(&g, &d);
    }
    if io.machine() {
        let expansion = d.expand(io.config.precision).to_entries();
        io.json(json!({
            "command": "density",
            "path": path.display().to_string(),
            "density": d.canonical_string(),
            "expansion": expansion,
        }));
    } else {
        io.header();
        io.line(d.canonical_string());
    }
    EXIT_OK
}

fn parse_mults(text: &str) -> Result<Vec<i64>, String> {
    text.split(',')
        .map(|s| {
            let s = s.trim();
            s.parse::<i64>().map_err(|_| format!("not an integer: {s:?}"))
        })
        .collect()
}

fn cmd_curve(io: &mut Io<'_>, text: &str, with_oracle: bool) -> i32 {
    let mults = match parse_mults(text) {
        Ok(m) => m,
        Err(e) => return io.fail(EXIT_INPUT, e),
    };
    if mults.iter().any(|&m| m <= 0) {
        return io.fail(EXIT_DOMAIN, "branch multiplicities must be positive");
    }
    let b = match CurveBranchData::new(mults.iter().map(|&m| m as u64).collect()) {
        Ok(b) => b,
        Err(e) => return io.fail(EXIT_DOMAIN, e),
    };
    let period = b.mults().iter().try_fold(1u64, |acc, &m| {
        use num_integer::Integer;
        (acc / acc.gcd(&m)).checked_mul(m)
    });
    if with_oracle && period.is_none_or(|e| e > crate::oracle::MAX_PERIOD) {
        return io.fail(
            EXIT_BUDGET,
            OracleError::PeriodTooLarge { period, limit: crate::oracle::MAX_PERIOD },
        );
    }
    let d = curve_density(&b);
    let oracle = with_oracle.then(|| mean_value_curve(&b));
    let matched = oracle.as_ref().map(|r| r.mean == d);
    if io.machine() {
        let mut body = json!({
            "command": "curve",
            "multiplicities": mults,
            "density": d.to_string(),
        });
        if let Some(rep) = &oracle {
            body["oracle"] = json!({
                "period": rep.period,
                "limits": rep.limits.iter().map(BigRational::to_string).collect::<Vec<_>>(),
                "mean": rep.mean.to_string(),
                "matched": matched,
            });
        }
        io.json(body);
    } else {
        io.header();
        match &oracle {
            Some(rep) => io.line(format!(
                "{d} (oracle: {}, {})",
                rep.mean,
                if rep.mean == d { "match" } else { "MISMATCH" }
            )),
            None => io.line(&d),
        }
    }
    if matched == Some(false) { EXIT_DOMAIN } else { EXIT_OK }
}

fn oracle_failure_code(e: &OracleError) -> i32 {
    match e {
        OracleError::NoStabilization { .. } | OracleError::PeriodTooLarge { .. } => EXIT_BUDGET,
        _ => EXIT_DOMAIN,
    }
}

fn check_code(r: &CheckReport) -> i32 {
    if r.matched { EXIT_OK } else { EXIT_DOMAIN }
}

fn cmd_oracle_file(io: &mut Io<'_>, path: &Path) -> i32 {
    let g = match load_graph(io, path) {
        Ok(g) => g,
        Err(code) => return code,
    };
    let report = match cross_check(&g, &io.config.oracle_params()) {
        Ok(r) => r,
        Err(OracleError::Density(e)) => return density_failure(io, &e),
        Err(e) => return io.fail(oracle_failure_code(&e), e),
    };
    if io.machine() {
        io.json(json!({
            "command": "oracle",
            "path": path.display().to_string(),
            "check": report.to_machine(),
        }));
    } else {
        io.header();
        io.line(&report);
        io.line("");
        io.line(&report.oracle);
    }
    check_code(&report)
}

fn cmd_oracle_random(io: &mut Io<'_>, count: usize) -> i32 {
    let mut rng = ChaCha8Rng::seed_from_u64(io.config.seed);
    let params = io.config.oracle_params();
    let mut worst = EXIT_OK;
    let mut entries = Vec::new();
    io.header();
    for i in 0..count {
        let g = random_admissible(&mut rng, 6, 6, false);
        let (code, summary) = match cross_check(&g, &params) {
            Ok(r) => (check_code(&r), if r.matched { "match".to_string() } else { "MISMATCH".to_string() }),
            Err(e) => (oracle_failure_code(&e), e.to_string()),
        };
        if code == EXIT_DOMAIN || worst == EXIT_OK {
            worst = code;
        }
        if io.machine() {
            entries.push(json!({
                "index": i,
                "graph": serde_json::from_str::<Value>(&serialize_graph(&g)).unwrap(),
                "result": summary,
                "exit": code,
            }));
        } else {
            let vertices = g.vertices().len();
            io.line(format!("graph {i:>4} ({vertices} vertices): {summary}"));
        }
    }
    if io.machine() {
        io.json(json!({ "command": "oracle", "random": count, "graphs": entries }));
    } else {
        io.line(format!("{count} graphs checked"));
    }
    worst
}

fn blowup_report(io: &mut Io<'_>, ops: &[String], state: &BlowupState) -> i32 {
    let identity = state.check_smooth_identity().unwrap_or(false);
    if io.machine() {
        let rows: Vec<Value> = state
            .rows()
            .iter()
            .map(|r| {
                json!({
                    "id": r.id,
                    "m": r.m,
                    "q": r.q.to_string(),
                    "k": r.k,
                    "mather_log": r.mather_log.to_string(),
                })
            })
            .collect();
        io.json(json!({
            "command": "blowup",
            "operations": ops,
            "graph": serde_json::from_str::<Value>(&serialize_graph(state.graph())).unwrap(),
            "rows": rows,
            "identity": identity,
        }));
    } else {
        io.header();
        for op in ops {
            io.line(format!("# {op}"));
        }
        io.line(serialize_graph(state.graph()));
        io.line(state.to_string().trim_end());
        io.line(format!("identity q = (k+1)/m - 1: {}", if identity { "OK" } else { "FAILED" }));
    }
    if identity { EXIT_OK } else { EXIT_DOMAIN }
}

fn cmd_blowup_script(io: &mut Io<'_>, path: &Path) -> i32 {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => return io.fail(EXIT_INPUT, format!("cannot read {}: {e}", path.display())),
    };
    let states = match run_script(&BlowupState::init_smooth(), &text) {
        Ok(s) => s,
        Err(e @ ScriptError::Syntax { .. }) => return io.fail(EXIT_INPUT, e),
        Err(e @ ScriptError::Blowup { .. }) => return io.fail(EXIT_DOMAIN, e),
    };
    let ops: Vec<String> = crate::blowup::parse_script(&text)
        .map(|ops| ops.into_iter().map(|(_, op)| op.to_string()).collect())
        .unwrap_or_default();
    blowup_report(io, &ops, states.last().unwrap())
}

fn cmd_blowup_random(io: &mut Io<'_>, steps: usize) -> i32 {
    let mut rng = ChaCha8Rng::seed_from_u64(io.config.seed);
    let seq = random_sequence(steps, &mut rng);
    let ops: Vec<String> = seq.iter().filter_map(|(op, _)| op.as_ref().map(ToString::to_string)).collect();
    let all_ok = seq
        .iter()
        .all(|(_, s)| s.check_smooth_identity().unwrap_or(false));
    let code = blowup_report(io, &ops, &seq.last().unwrap().1);
    if !all_ok {
        io.diag("error: identity failed at an intermediate step");
        return EXIT_DOMAIN;
    }
    code
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mults_parsing() {
        assert_eq!(parse_mults("2, 3"), Ok(vec![2, 3]));
        assert_eq!(parse_mults("-1"), Ok(vec![-1]));
        assert!(parse_mults("2,x").is_err());
        assert!(parse_mults("").is_err());
    }

    #[test]
    fn config_defaults() {
        let c = RunConfig::default();
        assert_eq!((c.precision, c.window, c.nmax_multiplier), (12, 3, 60));
        assert_eq!(c.oracle_params(), OracleParams::default());
    }
}
