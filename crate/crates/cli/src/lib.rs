//! The `dahalab` command line: relation suites, Hamiltonians, PBW reduction
//! and two-type checks.
//!
//! Exit codes: 0 on success, 1 when a verification fails, 2 on usage,
//! parse or evaluation errors.

pub mod config;

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use dahalab::relations::{list_relations, suite_gens, verify_with};
use dahalab::{
    closed_d12, closed_m, res_sym, twotype_build, twotype_identity_check, CalDParams, CoreError, Ctx, Frac, Gens,
    Hgl, Mode, Op, SymKind, TwoTypeKind,
};
use dahalab_exact::{parse_ratfn, Rat, VarSet};

pub use config::{Format, ModeName, RunConfig};

#[derive(Parser, Debug)]
#[command(name = "dahalab", version, about = "Exact computations with the GL_n double affine Hecke algebra")]
struct Cli {
    /// Optional `key = value` file; flags on the command line take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args, Debug, Default)]
struct Common {
    #[arg(long)]
    n: Option<usize>,
    /// exact or spec.
    #[arg(long)]
    mode: Option<ModeName>,
    #[arg(long)]
    seed: Option<u64>,
    /// json or text.
    #[arg(long)]
    format: Option<Format>,
}

#[derive(Args, Debug, Default)]
struct Family {
    #[arg(long)]
    l1: Option<usize>,
    #[arg(long)]
    l2: Option<usize>,
    /// `a_{-l1},…,a_{l2}` as comma-separated scalars, or `sym`.
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Checks catalog relations in the polynomial representation.
    Verify {
        #[arg(long)]
        id: Option<String>,
        /// Use the ψ images of the generators.
        #[arg(long)]
        psi: bool,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        family: Family,
    },
    /// `Res` of a symmetric polynomial in the operators `𝒟_i`.
    Res {
        /// `p<r>` (power sum) or `e<r>` (elementary).
        #[arg(long)]
        sym: String,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        family: Family,
    },
    /// Closed-form Hamiltonians.
    Hamiltonian {
        kind: HamKind,
        #[arg(long)]
        n1: Option<usize>,
        #[arg(long)]
        n2: Option<usize>,
        /// `name=value` pairs separated by commas; missing names stay symbolic.
        #[arg(long, allow_hyphen_values = true)]
        params: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// PBW normal forms.
    Pbw {
        #[command(subcommand)]
        cmd: PbwCommand,
    },
    /// Operator identities.
    Identity {
        #[command(subcommand)]
        cmd: IdentityCommand,
    },
    /// Whether two `Res` Hamiltonians commute.
    Commute {
        /// Two symmetric polynomials, e.g. `p1,p2`.
        #[arg(long)]
        pair: String,
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        family: Family,
    },
}

#[derive(Subcommand, Debug)]
enum PbwCommand {
    /// Reduces an expression in `T_k`, `Y_i^{±1}`, `e_ij` to PBW normal form.
    Reduce {
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        /// Overrides `DAHA_STEP_BOUND` and the config file.
        #[arg(long)]
        step_bound: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Subcommand, Debug)]
enum IdentityCommand {
    /// The identity relating the two-type Hamiltonians.
    TwoType {
        #[arg(long)]
        n1: usize,
        #[arg(long)]
        n2: usize,
        #[arg(long)]
        format: Option<Format>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum HamKind {
    MAbc,
    D12,
    TwotypeH,
    TwotypeHhat,
    TwotypeM,
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome { code: 0, stdout, stderr: String::new() }
    }

    fn usage(msg: impl Into<String>) -> Outcome {
        Outcome { code: 2, stdout: String::new(), stderr: msg.into() }
    }
}

/// Errors end the run with exit code 2.
#[derive(Debug)]
enum Fail {
    Usage(String),
    Core(CoreError),
}

impl From<CoreError> for Fail {
    fn from(e: CoreError) -> Fail {
        Fail::Core(e)
    }
}

type Res<T> = std::result::Result<T, Fail>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome::ok(e.to_string())
                }
                _ => Outcome::usage(e.to_string()),
            }
        }
    };
    let file = match &cli.config {
        Some(p) => match RunConfig::load(p) {
            Ok(c) => c,
            Err(e) => return Outcome::usage(format!("error: {e}\n")),
        },
        None => RunConfig::default(),
    };
    match dispatch(cli.cmd, file) {
        Ok(o) => o,
        Err(Fail::Usage(m)) => Outcome::usage(format!("error: {m}\n")),
        Err(Fail::Core(e)) => Outcome::usage(format!("error: {e}\n")),
    }
}

fn merge(mut cfg: RunConfig, common: &Common, family: Option<&Family>) -> Res<RunConfig> {
    cfg.n = common.n.or(cfg.n);
    cfg.mode = common.mode.or(cfg.mode);
    cfg.seed = common.seed.or(cfg.seed);
    cfg.format = common.format.or(cfg.format);
    if let Some(f) = family {
        cfg.l1 = f.l1.or(cfg.l1);
        cfg.l2 = f.l2.or(cfg.l2);
        cfg.a = f.a.clone().or(cfg.a);
    }
    if cfg.n == Some(0) {
        return Err(Fail::Usage("n must be at least 1".into()));
    }
    Ok(cfg)
}

fn need_n(cfg: &RunConfig) -> Res<usize> {
    cfg.n.ok_or_else(|| Fail::Usage("--n is required".into()))
}

fn dispatch(cmd: Command, file: RunConfig) -> Res<Outcome> {
    match cmd {
        Command::Verify { id, psi, common, family } => cmd_verify(merge(file, &common, Some(&family))?, id, psi),
        Command::Res { sym, common, family } => cmd_res(merge(file, &common, Some(&family))?, &sym),
        Command::Hamiltonian { kind, n1, n2, params, common } => {
            cmd_hamiltonian(merge(file, &common, None)?, kind, n1, n2, params.as_deref())
        }
        Command::Pbw { cmd: PbwCommand::Reduce { expr, step_bound, common } } => {
            let mut cfg = merge(file, &common, None)?;
            let env = std::env::var("DAHA_STEP_BOUND").ok().and_then(|s| s.trim().parse().ok());
            cfg.step_bound = step_bound.or(env).or(cfg.step_bound);
            cmd_pbw_reduce(cfg, &expr)
        }
        Command::Identity { cmd: IdentityCommand::TwoType { n1, n2, format } } => {
            let format = format.or(file.format).unwrap_or_default();
            cmd_two_type(n1, n2, format)
        }
        Command::Commute { pair, common, family } => cmd_commute(merge(file, &common, Some(&family))?, &pair),
    }
}

fn line(v: &Value) -> String {
    format!("{v}\n")
}

fn cmd_verify(cfg: RunConfig, id: Option<String>, psi: bool) -> Res<Outcome> {
    let n = need_n(&cfg)?;
    let cald = (cfg.l1.unwrap_or(1), cfg.l2.unwrap_or(1));
    let entries: Vec<_> = match &id {
        Some(id) => vec![dahalab::relations::find_relation(id)?],
        None => list_relations(),
    };
    let gens = suite_gens(n, cfg.mode(), psi, cald)?;
    let format = cfg.format.unwrap_or_default();
    let mut out = String::new();
    let mut failed = false;
    for e in entries {
        let skip = if n < e.n_min {
            Some(format!("needs n >= {}", e.n_min))
        } else if psi && !e.psi_ok {
            Some("not stated for the ψ images".to_string())
        } else {
            None
        };
        if let Some(reason) = skip {
            if id.is_some() {
                return Err(Fail::Usage(format!("{}: {reason}", e.id)));
            }
            match format {
                Format::Json => out.push_str(&line(&json!({ "id": e.id, "n": n, "skipped": reason }))),
                Format::Text => out.push_str(&format!("{} n={n} skipped: {reason}\n", e.id)),
            }
            continue;
        }
        let r = verify_with(&e, &gens)?;
        failed |= !r.verified();
        match format {
            Format::Json => out.push_str(&line(&r.to_json())),
            Format::Text => {
                let status = if r.verified() { "ok".to_string() } else { format!("FAILED {}", r.failures.len()) };
                out.push_str(&format!("{} n={} {}: {status} ({} instances)\n", r.id, r.n, r.mode, r.instances));
                for f in &r.failures {
                    out.push_str(&format!("  {}: {}\n", f.assignment, f.difference));
                }
            }
        }
    }
    Ok(Outcome { code: if failed { 1 } else { 0 }, stdout: out, stderr: String::new() })
}

fn parse_sym(s: &str) -> Res<SymKind> {
    let bad = || Fail::Usage(format!("unknown symmetric polynomial `{s}` (expected p<r> or e<r>)"));
    let (head, tail) = s.split_at(s.find(|c: char| c.is_ascii_digit()).ok_or_else(bad)?);
    let r: usize = tail.parse().map_err(|_| bad())?;
    match head {
        "p" => Ok(SymKind::PowerSum(r)),
        "e" => Ok(SymKind::Elementary(r)),
        _ => Err(bad()),
    }
}

fn is_sym(a: &str) -> bool {
    matches!(a, "sym" | "symbolic")
}

/// Generators with the `𝒟^{(l1,l2)}` family of the configuration.
fn family_gens(cfg: &RunConfig) -> Res<Gens> {
    let n = need_n(cfg)?;
    let (l1, l2) = (cfg.l1.unwrap_or(1), cfg.l2.unwrap_or(1));
    let a = cfg.a.as_deref().unwrap_or("sym");
    if is_sym(a) {
        return Ok(suite_gens(n, cfg.mode(), false, (l1, l2))?);
    }
    let ctx = Ctx::daha(n, &[], cfg.mode())?;
    let vals: Vec<&str> = a.split(',').map(str::trim).collect();
    if vals.len() != l1 + l2 + 1 {
        return Err(Fail::Usage(format!("--a needs {} values for l1 = {l1}, l2 = {l2}, got {}", l1 + l2 + 1, vals.len())));
    }
    let mut map = BTreeMap::new();
    for (j, v) in (-(l1 as i32)..=(l2 as i32)).zip(vals) {
        map.insert(j, ctx.parse(v)?);
    }
    Ok(Gens::new(ctx).with_cald(CalDParams::new(l1, l2, map)?))
}

fn emit_op(ctx: &Ctx, op: &Op, format: Format) -> String {
    match format {
        Format::Json => line(&ctx.op_to_json(op)),
        Format::Text => ctx.op_to_text(op),
    }
}

fn cmd_res(cfg: RunConfig, sym: &str) -> Res<Outcome> {
    let s = parse_sym(sym)?;
    let gens = family_gens(&cfg)?;
    let op = res_sym(&gens, s)?;
    Ok(Outcome::ok(emit_op(gens.ctx(), &op, cfg.format.unwrap_or_default())))
}

fn parse_params(text: Option<&str>) -> Res<Vec<(String, String)>> {
    let mut out = Vec::new();
    for part in text.unwrap_or("").split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part
            .split_once('=')
            .ok_or_else(|| Fail::Usage(format!("parameter `{part}` is not of the form name=value")))?;
        out.push((k.trim().to_string(), v.trim().to_string()));
    }
    Ok(out)
}

/// Scalar values for `names` in `ctx`; names without a value stay symbolic.
fn scalar_values(ctx: &Ctx, names: &[&str], given: &[(String, String)]) -> Res<Vec<Frac>> {
    for (k, _) in given {
        if !names.contains(&k.as_str()) {
            return Err(Fail::Usage(format!("unknown parameter `{k}` (expected one of {})", names.join(", "))));
        }
    }
    names
        .iter()
        .map(|name| match given.iter().rev().find(|(k, _)| k == name) {
            Some((_, v)) => Ok(ctx.parse(v)?),
            None => Ok(ctx.scalar(name)?),
        })
        .collect()
}

fn parse_rat(text: &str) -> Res<Rat> {
    let r = parse_ratfn(text, &VarSet::empty()).map_err(CoreError::from)?;
    r.as_constant().ok_or_else(|| Fail::Usage(format!("`{text}` is not a rational number")))
}

fn cmd_hamiltonian(cfg: RunConfig, kind: HamKind, n1: Option<usize>, n2: Option<usize>, params: Option<&str>) -> Res<Outcome> {
    let given = parse_params(params)?;
    let format = cfg.format.unwrap_or_default();
    let two = match kind {
        HamKind::MAbc | HamKind::D12 => None,
        HamKind::TwotypeH => Some(TwoTypeKind::HFull),
        HamKind::TwotypeHhat => Some(TwoTypeKind::HHat),
        HamKind::TwotypeM => Some(TwoTypeKind::MTilde),
    };
    if let Some(tk) = two {
        if cfg.mode == Some(ModeName::Specialized) {
            return Err(Fail::Usage("two-type operators are built in exact mode only".into()));
        }
        let n1 = n1.ok_or_else(|| Fail::Usage("--n1 is required".into()))?;
        let n2 = n2.ok_or_else(|| Fail::Usage("--n2 is required".into()))?;
        let mut values = BTreeMap::new();
        for (k, v) in &given {
            values.insert(k.clone(), parse_rat(v)?);
        }
        let op = twotype_build(tk, n1, n2, &values)?;
        return Ok(Outcome::ok(match format {
            Format::Json => line(&op.to_json()),
            Format::Text => op.to_text(),
        }));
    }
    let n = need_n(&cfg)?;
    let names: &[&str] = if kind == HamKind::MAbc { &["a", "b", "c"] } else { &["am1", "a0", "a1", "a2"] };
    let ctx = Ctx::daha(n, names, cfg.mode())?;
    let v = scalar_values(&ctx, names, &given)?;
    let op = if kind == HamKind::MAbc { closed_m(&ctx, &v[0], &v[1], &v[2])? } else { closed_d12(&ctx, &v[0], &v[1], &v[2], &v[3])? };
    Ok(Outcome::ok(emit_op(&ctx, &op, format)))
}

fn cmd_pbw_reduce(cfg: RunConfig, expr: &str) -> Res<Outcome> {
    let n = need_n(&cfg)?;
    let mut h = Hgl::new(n, cfg.mode())?;
    if let Some(b) = cfg.step_bound {
        h = h.with_step_bound(b);
    }
    let x = h.parse(expr)?;
    let p = h.reduce(&x)?;
    Ok(Outcome::ok(match cfg.format.unwrap_or_default() {
        Format::Json => line(&p.to_json(h.ctx())),
        Format::Text => format!("{}\n", p.to_text(h.ctx())),
    }))
}

fn cmd_two_type(n1: usize, n2: usize, format: Format) -> Res<Outcome> {
    let holds = twotype_identity_check(n1, n2)?;
    let stdout = match format {
        Format::Json => line(&json!({ "check": "two-type identity", "N1": n1, "N2": n2, "holds": holds })),
        Format::Text => format!("two-type identity N1={n1} N2={n2}: {}\n", if holds { "holds" } else { "FAILS" }),
    };
    Ok(Outcome { code: if holds { 0 } else { 1 }, stdout, stderr: String::new() })
}

fn cmd_commute(cfg: RunConfig, pair: &str) -> Res<Outcome> {
    let parts: Vec<&str> = pair.split(',').map(str::trim).collect();
    let [a, b] = parts[..] else {
        return Err(Fail::Usage(format!("--pair needs two entries, got `{pair}`")));
    };
    let (sa, sb) = (parse_sym(a)?, parse_sym(b)?);
    let gens = family_gens(&cfg)?;
    let ctx = gens.ctx();
    let comm = ctx.commutator(&res_sym(&gens, sa)?, &res_sym(&gens, sb)?)?;
    let commute = comm.is_zero();
    let mode: Mode = ctx.mode();
    let stdout = match cfg.format.unwrap_or_default() {
        Format::Json => line(&json!({
            "pair": [a, b],
            "n": gens.n(),
            "mode": mode.to_string(),
            "commute": commute,
        })),
        Format::Text => format!("[{a}, {b}] n={} {mode}: {}\n", gens.n(), if commute { "0" } else { "nonzero" }),
    };
    Ok(Outcome { code: if commute { 0 } else { 1 }, stdout, stderr: String::new() })
}
