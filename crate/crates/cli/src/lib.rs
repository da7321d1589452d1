//! Command dispatch for the `bifurcata` binary. [`run`] is the whole program
//! minus process I/O, so tests can drive it directly.

use bifurcata::fiber::{euler_fiber, euler_generic};
use bifurcata::infinity::{analyze_with, fiber_invariants, AnalysisReport, AnalyzeOptions};
use bifurcata::jets::{count_jets_filtered, Filter, JetSpec, DEFAULT_BUDGET};
use bifurcata::newton::{face_polynomials, is_nondegenerate, newton_polygon};
use bifurcata::parallel::default_workers;
use bifurcata::parse::parse_value;
use bifurcata::report::{to_json, ErrorEnvelope, FiberJson, JetJson, NewtonJson, ReportJson, SpectrumJson, ValueClassJson};
use bifurcata::{critical_spectrum, parse_polynomial, Error, Poly, Rat, ValueClass};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

/// Exact invariants at infinity of plane polynomial maps.
#[derive(Parser, Debug)]
#[command(name = "bifurcata", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(clap::Args, Debug, Clone)]
pub struct Common {
    /// Polynomial in x and y, e.g. "x*(x*y - 1)".
    pub polynomial: String,
    /// Emit JSON instead of text.
    #[arg(long)]
    pub json: bool,
    /// Worker threads for independent fibers or jet blocks.
    #[arg(long, value_parser = clap::value_parser!(u16).range(1..=256))]
    pub workers: Option<u16>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Full report: every candidate fiber, the bifurcation sets and the global relation.
    Analyze {
        #[command(flatten)]
        common: Common,
    },
    /// Euler characteristic of the fiber over a rational value.
    EulerFiber {
        #[command(flatten)]
        common: Common,
        /// The value, as an integer or "p/q".
        #[arg(long, allow_hyphen_values = true)]
        value: String,
    },
    /// Euler characteristic of the general fiber and the candidate special values.
    EulerGeneric {
        #[command(flatten)]
        common: Common,
    },
    /// Milnor numbers of the fibers, or of the fiber over --value.
    Milnor {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        value: Option<String>,
    },
    /// λ and the Euler characteristic at infinity over --value, or over every candidate.
    Lambda {
        #[command(flatten)]
        common: Common,
        #[arg(long, allow_hyphen_values = true)]
        value: Option<String>,
    },
    /// The Euler-jump set and the λ-bifurcation set.
    Bifurcation {
        #[command(flatten)]
        common: Common,
    },
    /// Newton polygon at infinity, nondegeneracy and the Kouchnirenko number.
    Newton {
        #[command(flatten)]
        common: Common,
    },
    /// Count jets of level n over F_p.
    Jets {
        #[command(flatten)]
        common: Common,
        /// Prime p of the coefficient field
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..=1_000_000_007))]
        prime: u64,
        /// Level n: jets are taken mod t^(n+1)
        #[arg(long, value_parser = clap::value_parser!(u32).range(0..=64))]
        level: u32,
        #[arg(long, value_enum, default_value_t = FilterArg::OnFiber)]
        filter: FilterArg,
        /// Largest number of jets to enumerate.
        #[arg(long, default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
        budget: u64,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum FilterArg {
    /// f(φ) ≡ 0 mod t^(n+1)
    OnFiber,
    /// f(φ) ≡ t^n mod t^(n+1)
    OrderAc,
}

impl From<FilterArg> for Filter {
    fn from(f: FilterArg) -> Self {
        match f {
            FilterArg::OnFiber => Filter::OnFiber,
            FilterArg::OrderAc => Filter::OrderAc,
        }
    }
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Analyze { common }
            | Command::EulerFiber { common, .. }
            | Command::EulerGeneric { common }
            | Command::Milnor { common, .. }
            | Command::Lambda { common, .. }
            | Command::Bifurcation { common }
            | Command::Newton { common }
            | Command::Jets { common, .. } => common,
        }
    }
}

/// Exit status and captured streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { code: 0, stdout, stderr: String::new() }
    }
}

/// Runs one command line (`args[0]` is the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args: Vec<std::ffi::OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome::ok(e.to_string());
            }
            if args.iter().any(|a| a == "--json") {
                let env = json!({ "error": { "kind": "usage", "message": e.to_string() } });
                return Outcome { code: 2, stdout: to_json(&env), stderr: String::new() };
            }
            return Outcome { code: 2, stdout: String::new(), stderr: e.render().to_string() };
        }
    };
    let json_mode = cli.command.common().json;
    match execute(&cli.command) {
        Ok(out) => Outcome::ok(out),
        Err(e) => {
            let code = if e.is_user_error() { 2 } else { 1 };
            if json_mode {
                Outcome { code, stdout: to_json(&ErrorEnvelope::from(&e)), stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: format!("error: {e}\n") }
            }
        }
    }
}

fn set(classes: &[ValueClass]) -> String {
    let items: Vec<String> = classes.iter().map(ToString::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

fn class_json(v: &ValueClass) -> ValueClassJson {
    v.into()
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "undefined".into(), |v| v.to_string())
}

fn value_arg(text: &str) -> Result<ValueClass, Error> {
    Ok(ValueClass::rational(&parse_value(text)?))
}

fn workers(common: &Common) -> usize {
    common.workers.map_or_else(default_workers, usize::from)
}

fn report(f: &Poly<Rat>, common: &Common) -> Result<AnalysisReport, Error> {
    analyze_with(f, &AnalyzeOptions { workers: workers(common), ..Default::default() })
}

fn render_report(r: &AnalysisReport) -> String {
    let mut out = format!("f = {}\nchi_gen = {}\n", r.polynomial.render(), r.chi_gen);
    for v in &r.fibers {
        out.push_str(&format!(
            "value {}: chi = {}, mu = {}, lambda = {}, chi_inf = {}\n",
            v.value,
            v.chi_a,
            opt(v.mu_a),
            opt(v.lambda_a),
            opt(v.chi_infinity)
        ));
    }
    out.push_str(&format!("euler jump set: {}\n", set(&r.euler_jump_set)));
    if let Some(ls) = &r.lambda_set {
        out.push_str(&format!("lambda set: {}\n", set(ls)));
    }
    if let Some(d) = &r.discriminant {
        out.push_str(&format!("discriminant: {}\n", set(d)));
    }
    if let Some(c) = &r.consistency {
        out.push_str(&format!(
            "global relation: {} = 1 - ({} + {}) {}\n",
            c.chi_gen,
            c.mu_sum,
            c.lambda_sum,
            if c.holds() { "holds" } else { "FAILS" }
        ));
    }
    for w in &r.warnings {
        out.push_str(&format!("warning: {w}\n"));
    }
    out
}

fn execute(cmd: &Command) -> Result<String, Error> {
    let common = cmd.common();
    let f = parse_polynomial(&common.polynomial)?;
    let poly = f.render();
    let json_mode = common.json;
    match cmd {
        Command::Analyze { .. } => {
            let r = report(&f, common)?;
            Ok(if json_mode { to_json(&ReportJson::from(&r)) } else { render_report(&r) })
        }
        Command::EulerFiber { value, .. } => {
            let class = value_arg(value)?;
            let chi = euler_fiber(&f, &class)?;
            Ok(if json_mode {
                to_json(&json!({ "polynomial": poly, "value": class_json(&class), "chi": chi }))
            } else {
                format!("value {class}: chi = {chi}\n")
            })
        }
        Command::EulerGeneric { .. } => {
            let g = euler_generic(&f)?;
            Ok(if json_mode {
                let cands: Vec<ValueClassJson> = g.candidates.iter().map(class_json).collect();
                to_json(&json!({ "polynomial": poly, "chi_gen": g.chi_gen, "candidates": cands }))
            } else {
                format!("chi_gen = {}\ncandidates: {}\n", g.chi_gen, set(&g.candidates))
            })
        }
        Command::Milnor { value, .. } => {
            let s = critical_spectrum(&f)?;
            match value {
                Some(v) => {
                    let class = value_arg(v)?;
                    let mu = s.mu_of(&class)?;
                    Ok(if json_mode {
                        to_json(&json!({ "polynomial": poly, "value": class_json(&class), "mu": mu, "mu_total": s.mu_total }))
                    } else {
                        format!("value {class}: mu = {mu}; total mu = {}\n", s.mu_total)
                    })
                }
                None => Ok(if json_mode {
                    to_json(&json!({ "polynomial": poly, "spectrum": SpectrumJson::from(&s) }))
                } else {
                    let mut parts: Vec<String> = s.entries.iter().map(|e| format!("value {}: mu = {}", e.value, e.mu)).collect();
                    parts.push(format!("total mu = {}", s.mu_total));
                    format!("{}\n", parts.join("; "))
                }),
            }
        }
        Command::Lambda { value, .. } => {
            let (chi_gen, fibers) = match value {
                Some(v) => {
                    let inv = fiber_invariants(&f, &value_arg(v)?)?;
                    let jump = inv.mu_a.unwrap_or(0) as i64 + inv.lambda_a.unwrap_or(0);
                    (inv.chi_a - jump, vec![inv])
                }
                None => {
                    let r = report(&f, common)?;
                    if r.lambda_set.is_none() {
                        return Err(Error::NonIsolated);
                    }
                    (r.chi_gen, r.fibers)
                }
            };
            Ok(if json_mode {
                let list: Vec<FiberJson> = fibers.iter().map(FiberJson::from).collect();
                to_json(&json!({ "polynomial": poly, "chi_gen": chi_gen, "fibers": list }))
            } else {
                fibers
                    .iter()
                    .map(|v| format!("value {}: lambda = {}; chi_inf = {}\n", v.value, opt(v.lambda_a), opt(v.chi_infinity)))
                    .collect()
            })
        }
        Command::Bifurcation { .. } => {
            let r = report(&f, common)?;
            Ok(if json_mode {
                let jump: Vec<ValueClassJson> = r.euler_jump_set.iter().map(class_json).collect();
                let lambda: Option<Vec<ValueClassJson>> = r.lambda_set.as_ref().map(|l| l.iter().map(class_json).collect());
                to_json(&json!({ "polynomial": poly, "euler_jump_set": jump, "lambda_set": lambda }))
            } else {
                let mut out = format!("euler jump set: {}\n", set(&r.euler_jump_set));
                match &r.lambda_set {
                    Some(l) => out.push_str(&format!("lambda set: {}\n", set(l))),
                    None => out.push_str("lambda set: undefined (critical locus not isolated)\n"),
                }
                out
            })
        }
        Command::Newton { .. } => {
            let np = newton_polygon(&f)?;
            let faces: Vec<String> = face_polynomials(&f)?.iter().map(Poly::render).collect();
            let nj = NewtonJson::new(&np, faces, is_nondegenerate(&f)?);
            Ok(if json_mode {
                to_json(&nj)
            } else {
                let pts = |v: &[(i64, i64)]| v.iter().map(|(a, b)| format!("({a},{b})")).collect::<Vec<_>>().join(" ");
                let mut out = format!("vertices: {}\n", pts(&nj.vertices));
                for face in &nj.face_polynomials {
                    out.push_str(&format!("face: {face}\n"));
                }
                out.push_str(&format!("convenient: {}\nnondegenerate: {}\n", nj.convenient, nj.nondegenerate));
                out.push_str(&format!("kouchnirenko number: {}\n", opt(nj.kouchnirenko_number)));
                out
            })
        }
        Command::Jets { prime, level, filter, budget, .. } => {
            let spec = JetSpec::new(*prime, *level, (*filter).into())?.with_budget(*budget).with_workers(workers(common));
            let c = count_jets_filtered(&f, &spec)?;
            let j = JetJson::from(&c);
            Ok(if json_mode {
                to_json(&j)
            } else {
                format!("count {} (p = {}, n = {}, {})\nnormalized {}\n", j.count, j.prime, j.level, j.filter, j.normalized)
            })
        }
    }
}
