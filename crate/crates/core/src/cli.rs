//! Command-line front end. Every flag is global and may also be given in a
//! TOML config file; flags take precedence.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::criterion::{
    criterion_constants, decay_check, denominator_growth, g_operator_check, table_json, table_markdown,
    threshold_table, PlaceQ,
};
use crate::determinant::{build_delta, DetSetup};
use crate::error::Error;
use crate::exact::{format_rational, parse_rational};
use crate::holonomic::{family_streams, FamilyConfig, FamilySpec};
use crate::pade::{family_plan, proportional, solve_pade_oracle, PadeSystem};

pub const SCHEMA_VERSION: u32 = 1;

/// Slack allowed above the denominator-growth bound.
pub const GROWTH_SLACK: f64 = 0.15;

pub mod exit {
    pub const OK: i32 = 0;
    pub const FAILURE: i32 = 1;
    pub const ZERO_POLYNOMIAL: i32 = 2;
    pub const HYPOTHESIS: i32 = 3;
}

#[derive(Parser, Debug)]
#[command(name = "pade", version, about = "Exact Padé approximants via Rodrigues formulas")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub run: RunConfig,
    /// TOML file with defaults for any flag.
    #[arg(long = "config", global = true)]
    pub config_file: Option<PathBuf>,
}

#[derive(Subcommand, Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    /// Build the approximant system for one `h`.
    Construct,
    /// Build the system and compare it with the linear-algebra oracle.
    Verify,
    /// Evaluate the determinant and compare it with the closed forms.
    Det,
    /// Constants of the linear-independence measure.
    Criterion,
    /// Thresholds on log|alpha| for `V(alpha) > 0`.
    Table,
    /// Residue test for `-a d/dz + b` to be a G-operator.
    Gop,
    /// Growth of the Pochhammer-ratio denominators.
    Growth,
    /// Decay of the remainders and growth of `P` at a place.
    Decay,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Construct => "construct",
            Command::Verify => "verify",
            Command::Det => "det",
            Command::Criterion => "criterion",
            Command::Table => "table",
            Command::Gop => "gop",
            Command::Growth => "growth",
            Command::Decay => "decay",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Markdown,
}

/// Every parameter of a run. Unused fields are ignored by a command.
#[derive(Args, Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    /// chebyshev | bessel | laguerre-gamma | laguerre-delta | hermite | lerch | custom
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    /// An integer, or a range `lo..hi` (inclusive) for `table`.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub u: Option<String>,
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<usize>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub gamma: Vec<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub delta: Vec<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub alpha: Vec<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub beta: Vec<String>,
    /// `a(z)` of a custom operator, e.g. `z^2 - 1`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<String>,
    /// `inf` or a prime.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub place: Option<String>,
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    /// Lower end of the `N` (decay) or `n` (growth) window.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub from: Option<usize>,
    /// Upper end of the `N` (decay) or `n` (growth) window.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub to: Option<usize>,
    /// Oracle degree bound for `verify` (defaults to the Rodrigues bound).
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    /// Initial tail slack for remainder checks.
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub precision: Option<usize>,
    /// Report path; not embedded in the report itself.
    #[arg(long, global = true)]
    #[serde(skip_serializing)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[arg(long, global = true)]
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub dump_matrix: bool,
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::usage(format!("config file: {e}")))
    }

    /// Fields set in `self` win over `base`.
    pub fn over(self, base: RunConfig) -> RunConfig {
        fn vec_or(a: Vec<String>, b: Vec<String>) -> Vec<String> {
            if a.is_empty() {
                b
            } else {
                a
            }
        }
        RunConfig {
            family: self.family.or(base.family),
            u: self.u.or(base.u),
            n: self.n.or(base.n),
            h: self.h.or(base.h),
            gamma: vec_or(self.gamma, base.gamma),
            delta: vec_or(self.delta, base.delta),
            alpha: vec_or(self.alpha, base.alpha),
            beta: vec_or(self.beta, base.beta),
            a: self.a.or(base.a),
            b: self.b.or(base.b),
            place: self.place.or(base.place),
            eps: self.eps.or(base.eps),
            from: self.from.or(base.from),
            to: self.to.or(base.to),
            m: self.m.or(base.m),
            precision: self.precision.or(base.precision),
            out: self.out.or(base.out),
            format: self.format.or(base.format),
            dump_matrix: self.dump_matrix || base.dump_matrix,
        }
    }

    fn need<T: Clone>(v: &Option<T>, name: &str) -> Result<T, CliError> {
        v.clone()
            .ok_or_else(|| CliError::usage(format!("--{name} is required")))
    }

    fn u_single(&self) -> Result<usize, CliError> {
        let s = Self::need(&self.u, "u")?;
        s.trim()
            .parse()
            .map_err(|_| CliError::usage(format!("--u expects an integer, got {s:?}")))
    }

    fn u_range(&self) -> Result<Vec<u64>, CliError> {
        let s = self.u.clone().unwrap_or_else(|| "2..15".into());
        let bad = || CliError::usage(format!("--u expects `lo..hi` or an integer, got {s:?}"));
        if let Some((lo, hi)) = s.split_once("..") {
            let lo: u64 = lo.trim().parse().map_err(|_| bad())?;
            let hi: u64 = hi.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
            Ok((lo..=hi).collect())
        } else {
            Ok(vec![s.trim().parse().map_err(|_| bad())?])
        }
    }

    fn family_spec(&self) -> Result<FamilySpec, CliError> {
        let family = Self::need(&self.family, "family")?;
        let cfg = FamilyConfig {
            family,
            u: match &self.u {
                Some(_) => Some(self.u_single()?),
                None => None,
            },
            gamma: self.gamma.clone(),
            delta: self.delta.clone(),
            alpha: self.alpha.clone(),
            a: self.a.clone(),
            b: self.b.clone(),
        };
        Ok(FamilySpec::from_config(&cfg)?)
    }

    fn single_alpha(&self) -> Result<crate::exact::Rational, CliError> {
        match self.alpha.as_slice() {
            [a] => Ok(parse_rational(a)?),
            _ => Err(CliError::usage("exactly one --alpha is required")),
        }
    }

    fn place_q(&self) -> Result<PlaceQ, CliError> {
        Ok(PlaceQ::parse(self.place.as_deref().unwrap_or("inf"))?)
    }
}

/// An error together with its exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    fn usage(m: impl Into<String>) -> Self {
        CliError {
            code: exit::FAILURE,
            message: m.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::ZeroPolynomial => exit::ZERO_POLYNOMIAL,
            Error::Hypothesis(_)
            | Error::InvalidFamily(_)
            | Error::AssumptionViolated { .. }
            | Error::NegativeW
            | Error::NotCommuting(..)
            | Error::IdealMembership => exit::HYPOTHESIS,
            _ => exit::FAILURE,
        };
        CliError {
            code,
            message: e.to_string(),
        }
    }
}

/// Output of a command: the report and whether its checks passed.
#[derive(Debug)]
pub struct Outcome {
    pub result: Value,
    pub markdown: Option<String>,
    pub ok: bool,
}

impl Outcome {
    fn new(result: Value, ok: bool) -> Self {
        Outcome {
            result,
            markdown: None,
            ok,
        }
    }
}

fn construct_system(cfg: &RunConfig) -> Result<(FamilySpec, PadeSystem), CliError> {
    let spec = cfg.family_spec()?;
    let n = RunConfig::need(&cfg.n, "n")?;
    let h = cfg.h.unwrap_or(0);
    let data = family_streams(&spec)?;
    let plan = family_plan(&data, n)?;
    let sys = plan.construct_with_slack(&data.f_poly(n, h), cfg.precision.unwrap_or(5))?;
    Ok((spec, sys))
}

fn cmd_construct(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (_, sys) = construct_system(cfg)?;
    let ok = sys.verified.passed();
    Ok(Outcome::new(sys.to_json(), ok))
}

fn cmd_verify(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let (spec, sys) = construct_system(cfg)?;
    let data = family_streams(&spec)?;
    let m = cfg.m.unwrap_or(sys.degree_bound);
    let oracle = solve_pade_oracle(&data.all_streams(), &sys.weights, m)?;
    let prop = proportional(&sys.p, &oracle.system.p);
    let ok = sys.verified.passed() && (oracle.kernel_dim != 1 || prop);
    let result = json!({
        "system": sys.to_json(),
        "oracle": {
            "degree_bound": m,
            "kernel_dim": oracle.kernel_dim,
            "P": oracle.system.p.to_strings(),
            "proportional": prop,
        },
        "passed": ok,
    });
    Ok(Outcome::new(result, ok))
}

fn cmd_det(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let spec = cfg.family_spec()?;
    let n = RunConfig::need(&cfg.n, "n")?;
    let report = build_delta(&DetSetup::new(&spec, n)?)?;
    let mut result = report.to_json(cfg.dump_matrix);
    result["match"] = json!(report.formula_match() && report.closed_match().unwrap_or(true));
    let md = format!(
        "# Determinant\n\n| family | n | d | W | Delta | degree | explained |\n|---|---|---|---|---|---|---|\n| {} | {} | {} | {} | {} | {} | {} |\n",
        spec.tag(),
        n,
        report.d,
        report.big_w,
        format_rational(&report.delta),
        report.delta_degree.map_or("-".into(), |d| d.to_string()),
        report.explained(),
    );
    Ok(Outcome {
        ok: report.explained(),
        result,
        markdown: Some(md),
    })
}

fn cmd_criterion(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let u = cfg.u_single()? as u64;
    let alpha = cfg.single_alpha()?;
    let v0 = cfg.place_q()?;
    let eps = cfg.eps.unwrap_or(0.1);
    let r = criterion_constants(u, &alpha, v0, eps)?;
    let result = r.to_json();
    let fmt = |x: f64| format!("{x:.6}");
    let md = format!(
        "# Criterion constants\n\nu = {}, alpha = {}, v0 = {}, eps = {}\n\n| A | B | U | V | mu | C |\n|---|---|---|---|---|---|\n| {} | {} | {} | {} | {} | {} |\n",
        u,
        format_rational(&alpha),
        v0,
        eps,
        fmt(r.a),
        fmt(r.b),
        fmt(r.big_u),
        fmt(r.v),
        r.mu.map_or("-".into(), fmt),
        r.c.map_or("-".into(), |c| format!("{c:.6e}")),
    );
    Ok(Outcome {
        result,
        markdown: Some(md),
        ok: true,
    })
}

fn cmd_table(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let rows = threshold_table(cfg.u_range()?)?;
    let md = format!("# Thresholds for V(alpha) > 0\n\n{}", table_markdown(&rows));
    Ok(Outcome {
        result: table_json(&rows),
        markdown: Some(md),
        ok: true,
    })
}

fn cmd_gop(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let parse = |v: &[String]| {
        v.iter()
            .map(|s| parse_rational(s))
            .collect::<crate::error::Result<Vec<_>>>()
    };
    let gamma = match cfg.gamma.as_slice() {
        [g] => parse_rational(g)?,
        _ => return Err(CliError::usage("exactly one --gamma is required")),
    };
    let r = g_operator_check(&parse(&cfg.alpha)?, &parse(&cfg.beta)?, &gamma)?;
    Ok(Outcome::new(r.to_json(), r.is_g_operator))
}

fn cmd_growth(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let u = cfg.u_single()? as u64;
    let lo = cfg.from.unwrap_or(100) as u64;
    let hi = cfg.to.unwrap_or(300) as u64;
    if lo > hi {
        return Err(CliError::usage("--from must not exceed --to"));
    }
    let g = denominator_growth(u, hi)?;
    let max = g.max_ratio(lo.max(1), hi);
    let ok = max <= g.bound + GROWTH_SLACK;
    let mut result = g.to_json();
    result["window"] = json!({ "from": lo, "to": hi });
    result["max_ratio"] = crate::criterion::real_json(max);
    result["slack"] = crate::criterion::real_json(GROWTH_SLACK);
    result["within_bound"] = json!(ok);
    Ok(Outcome::new(result, ok))
}

fn cmd_decay(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let u = cfg.u_single()?;
    let alpha = cfg.single_alpha()?;
    let v = cfg.place_q()?;
    let lo = cfg.from.unwrap_or(1);
    let hi = cfg.to.unwrap_or(8);
    let r = decay_check(u, &alpha, v, lo..=hi)?;
    let ok = r.r_ok() && r.p_ok();
    Ok(Outcome::new(r.to_json(), ok))
}

pub fn run_command(command: Command, cfg: &RunConfig) -> Result<Outcome, CliError> {
    match command {
        Command::Construct => cmd_construct(cfg),
        Command::Verify => cmd_verify(cfg),
        Command::Det => cmd_det(cfg),
        Command::Criterion => cmd_criterion(cfg),
        Command::Table => cmd_table(cfg),
        Command::Gop => cmd_gop(cfg),
        Command::Growth => cmd_growth(cfg),
        Command::Decay => cmd_decay(cfg),
    }
}

/// The full report text for an outcome.
pub fn render(command: Command, cfg: &RunConfig, outcome: &Outcome) -> String {
    match cfg.format.unwrap_or_default() {
        Format::Json => {
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "command": command.name(),
                "config": cfg,
                "ok": outcome.ok,
                "result": outcome.result,
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Markdown => match &outcome.markdown {
            Some(md) => md.clone(),
            None => format!(
                "# {}\n\n```json\n{}\n```\n",
                command.name(),
                serde_json::to_string_pretty(&outcome.result).expect("reports serialize")
            ),
        },
    }
}

/// Writes through a temporary file in the same directory, then renames.
pub fn write_atomic(path: &Path, text: &str) -> std::io::Result<()> {
    let dir = path
        .parent()
        .filter(|p| !p.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_default();
    let tmp = dir.join(format!(".{name}.{}.tmp", std::process::id()));
    {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(text.as_bytes())?;
        f.sync_all()?;
    }
    fs::rename(&tmp, path).inspect_err(|_| {
        let _ = fs::remove_file(&tmp);
    })
}

/// Parses arguments, runs the command and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { exit::FAILURE } else { exit::OK };
            let _ = e.print();
            return code;
        }
    };
    let cfg = match &cli.config_file {
        Some(path) => match fs::read_to_string(path)
            .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
            .and_then(|t| RunConfig::from_toml(&t))
        {
            Ok(base) => cli.run.clone().over(base),
            Err(e) => {
                eprintln!("error: {}", e.message);
                return e.code;
            }
        },
        None => cli.run.clone(),
    };
    match run_command(cli.command, &cfg) {
        Ok(outcome) => {
            let text = render(cli.command, &cfg, &outcome);
            match &cfg.out {
                Some(path) => {
                    if let Err(e) = write_atomic(path, &text) {
                        eprintln!("error: {}: {e}", path.display());
                        return exit::FAILURE;
                    }
                }
                None => print!("{text}"),
            }
            if outcome.ok {
                exit::OK
            } else {
                eprintln!("error: {} checks failed", cli.command.name());
                exit::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}
