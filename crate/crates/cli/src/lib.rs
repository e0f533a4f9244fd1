//! Argument parsing and command execution for the `gkm` binary.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use gkm::actions::{basis_by_solve, delta, generate_schubert_basis, partial, SchubertBasis};
use gkm::calc::{chevalley_monk_terms, structure_constants};
use gkm::graph::{build_flag_graph, build_hessenberg_graph, HessenbergFunction, MomentGraph};
use gkm::reps::{act, character_vector, decompose_character, Action, CharacterTable};
use gkm::verify::run_suite;
use gkm::weyl::{max_group_order, LieType, WeylElement};
use gkm::{GkmError, Result};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Dot,
    Json,
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ActionArg {
    Dot,
    Star,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Operator {
    Delta,
    Partial,
}

#[derive(Debug, Clone, clap::Args)]
struct Target {
    /// Root system and rank, e.g. A2, B3, C2, D4.
    #[arg(long = "type", value_name = "TYPE")]
    lie_type: Option<String>,
    /// Hessenberg function, e.g. 2,2,3 (type A only).
    #[arg(long, conflicts_with = "lie_type")]
    hess: Option<String>,
}

#[derive(Debug, Clone, clap::Args)]
struct Common {
    #[command(flatten)]
    target: Target,
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write output to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Largest Weyl group order accepted (default 1000 or GKM_MAX_GROUP_ORDER).
    #[arg(long)]
    max_order: Option<u128>,
}

#[derive(Debug, Subcommand)]
enum RawCommand {
    /// Export the moment graph.
    Graph {
        #[command(flatten)]
        common: Common,
    },
    /// Print the Schubert (canonical) basis.
    Basis {
        #[command(flatten)]
        common: Common,
    },
    /// Apply a group element to the Schubert class p_u.
    Act {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "dot")]
        action: ActionArg,
        /// Acting element, as a word ("s1 s2") or one-line notation ("[2,3,1]").
        #[arg(long)]
        perm: String,
        /// Index of the Schubert class p_u
        #[arg(long)]
        u: String,
    },
    /// Apply a divided-difference operator to p_u.
    Ddo {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "delta")]
        op: Operator,
        /// Simple root index, 1-based
        #[arg(long)]
        i: usize,
        /// Index of the Schubert class p_u
        #[arg(long)]
        u: String,
    },
    /// Structure constants of p_u · p_v.
    Mult {
        #[command(flatten)]
        common: Common,
        /// Index of the Schubert class p_u
        #[arg(long)]
        u: String,
        /// Index of the second factor p_v
        #[arg(long)]
        v: String,
    },
    /// Chevalley-Monk terms of p_{s_i} · p_w, compared with the product.
    Monk {
        #[command(flatten)]
        common: Common,
        /// Simple root index, 1-based
        #[arg(long)]
        i: usize,
        /// Index w of the second factor p_w
        #[arg(long)]
        perm: String,
    },
    /// Character of the dot or star representation.
    Char {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "star")]
        action: ActionArg,
        /// Character table JSON; the shipped S3/S4 tables are used otherwise.
        #[arg(long)]
        table: Option<PathBuf>,
    },
    /// Run the property suite and print one line per check.
    Verify {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Parser)]
#[command(name = "gkm", version, about = "Exact GKM computations on flag and Hessenberg varieties")]
struct Cli {
    #[command(subcommand)]
    command: RawCommand,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphSpec {
    Flag(LieType),
    Hessenberg(HessenbergFunction),
}

impl GraphSpec {
    pub fn lie_type(&self) -> LieType {
        match self {
            GraphSpec::Flag(lt) => *lt,
            GraphSpec::Hessenberg(h) => LieType::new(gkm::weyl::Family::A, h.n() - 1).expect("validated at parse time"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Graph,
    Basis,
    Act { action: Action, perm: WeylElement, u: WeylElement },
    Ddo { op: Operator, i: usize, u: WeylElement },
    Mult { u: WeylElement, v: WeylElement },
    Monk { i: usize, perm: WeylElement },
    Char { action: Action, table: Option<PathBuf> },
    Verify,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Graph => "graph",
            Command::Basis => "basis",
            Command::Act { .. } => "act",
            Command::Ddo { .. } => "ddo",
            Command::Mult { .. } => "mult",
            Command::Monk { .. } => "monk",
            Command::Char { .. } => "char",
            Command::Verify => "verify",
        }
    }
}

/// A fully validated invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandPlan {
    pub command: Command,
    pub graph: GraphSpec,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub max_order: u128,
}

/// Usage errors carry clap's rendered message.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn usage(e: impl std::fmt::Display) -> UsageError {
    UsageError(format!("error: {e}\n"))
}

/// Parses `argv` (without the program name) into a plan.
pub fn parse_args<I, S>(argv: I) -> std::result::Result<CommandPlan, UsageError>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let args = std::iter::once(std::ffi::OsString::from("gkm")).chain(argv.into_iter().map(Into::into));
    let cli = Cli::try_parse_from(args).map_err(|e| UsageError(e.render().to_string()))?;
    let (common, command) = match cli.command {
        RawCommand::Graph { common } => (common, None),
        RawCommand::Basis { common } => (common, Some(RawSpecific::Basis)),
        RawCommand::Act { common, action, perm, u } => (common, Some(RawSpecific::Act(action, perm, u))),
        RawCommand::Ddo { common, op, i, u } => (common, Some(RawSpecific::Ddo(op, i, u))),
        RawCommand::Mult { common, u, v } => (common, Some(RawSpecific::Mult(u, v))),
        RawCommand::Monk { common, i, perm } => (common, Some(RawSpecific::Monk(i, perm))),
        RawCommand::Char { common, action, table } => (common, Some(RawSpecific::Char(action, table))),
        RawCommand::Verify { common } => (common, Some(RawSpecific::Verify)),
    };
    let graph = match (&common.target.lie_type, &common.target.hess) {
        (Some(t), None) => GraphSpec::Flag(t.parse().map_err(usage)?),
        (None, Some(h)) => {
            let h: HessenbergFunction = h.parse().map_err(usage)?;
            if h.n() < 2 {
                return Err(usage("Hessenberg functions need n >= 2"));
            }
            GraphSpec::Hessenberg(h)
        }
        _ => return Err(usage("exactly one of --type or --hess is required")),
    };
    let lt = graph.lie_type();
    let el = |s: &str| WeylElement::parse(lt, s).map_err(usage);
    let command = match command {
        None => Command::Graph,
        Some(RawSpecific::Basis) => Command::Basis,
        Some(RawSpecific::Act(a, perm, u)) => Command::Act { action: action_of(a), perm: el(&perm)?, u: el(&u)? },
        Some(RawSpecific::Ddo(op, i, u)) => {
            lt.check_simple_index(i).map_err(usage)?;
            Command::Ddo { op, i, u: el(&u)? }
        }
        Some(RawSpecific::Mult(u, v)) => Command::Mult { u: el(&u)?, v: el(&v)? },
        Some(RawSpecific::Monk(i, perm)) => {
            lt.check_simple_index(i).map_err(usage)?;
            Command::Monk { i, perm: el(&perm)? }
        }
        Some(RawSpecific::Char(a, table)) => Command::Char { action: action_of(a), table },
        Some(RawSpecific::Verify) => Command::Verify,
    };
    let default_format = if command == Command::Graph { Format::Dot } else { Format::Tsv };
    let format = common.format.unwrap_or(default_format);
    let allowed: &[Format] = match command {
        Command::Graph => &[Format::Dot, Format::Json],
        Command::Verify | Command::Mult { .. } | Command::Monk { .. } | Command::Char { .. } => &[Format::Tsv],
        _ => &[Format::Json, Format::Tsv],
    };
    if !allowed.contains(&format) {
        return Err(usage(format!("format {format:?} is not available for {}", command.name())));
    }
    if matches!(graph, GraphSpec::Hessenberg(_))
        && !matches!(
            command,
            Command::Graph
                | Command::Basis
                | Command::Act { action: Action::Dot, .. }
                | Command::Ddo { op: Operator::Delta, .. }
        )
    {
        return Err(usage(format!("{} is not available on Hessenberg graphs", command.name())));
    }
    Ok(CommandPlan {
        command,
        graph,
        format,
        output: common.output,
        max_order: common.max_order.unwrap_or_else(max_group_order),
    })
}

enum RawSpecific {
    Basis,
    Act(ActionArg, String, String),
    Ddo(Operator, usize, String),
    Mult(String, String),
    Monk(usize, String),
    Char(ActionArg, Option<PathBuf>),
    Verify,
}

fn action_of(a: ActionArg) -> Action {
    match a {
        ActionArg::Dot => Action::Dot,
        ActionArg::Star => Action::Star,
    }
}

/// The artifact a command produced, diagnostics for standard error, and the
/// exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub output: String,
    pub diagnostic: String,
}

impl Outcome {
    fn success(output: String) -> Self {
        Outcome { status: EXIT_OK, output, diagnostic: String::new() }
    }

    fn with_status(status: i32, output: String) -> Self {
        Outcome { status, output, diagnostic: String::new() }
    }
}

fn build_graph(plan: &CommandPlan) -> Result<MomentGraph> {
    let lt = plan.graph.lie_type();
    if lt.group_order() > plan.max_order {
        return Err(GkmError::Resource(format!(
            "{lt} has order {}, above the bound {}",
            lt.group_order(),
            plan.max_order
        )));
    }
    match &plan.graph {
        GraphSpec::Flag(lt) => build_flag_graph(*lt),
        GraphSpec::Hessenberg(h) => build_hessenberg_graph(h),
    }
}

fn basis_for(g: &MomentGraph) -> Result<SchubertBasis> {
    if g.is_flag() {
        generate_schubert_basis(g)
    } else {
        basis_by_solve(g)
    }
}

fn class_tsv(g: &MomentGraph, label: &str, c: &gkm::classes::EquivariantClass, out: &mut String) {
    for (v, p) in g.vertices().iter().zip(c.values()) {
        let _ = writeln!(out, "{label}\t{v}\t{p}");
    }
}

fn class_out(plan: &CommandPlan, g: &MomentGraph, label: &str, c: &gkm::classes::EquivariantClass) -> Result<String> {
    match plan.format {
        Format::Json => Ok(c.to_json(g)? + "\n"),
        _ => {
            let mut out = String::from("class\tvertex\tvalue\n");
            class_tsv(g, label, c, &mut out);
            Ok(out)
        }
    }
}

/// Runs a plan; library errors become exit statuses with a message.
pub fn execute(plan: &CommandPlan) -> Outcome {
    match run(plan) {
        Ok(o) => o,
        Err(e) => {
            let status = match e {
                GkmError::Resource(_)
                | GkmError::Argument(_)
                | GkmError::Parse(_)
                | GkmError::Config(_)
                | GkmError::Unsupported(_)
                | GkmError::TypeMismatch(_)
                | GkmError::InvalidTable(_)
                | GkmError::ActionUndefined { .. }
                | GkmError::PalaisSmaleViolation { .. } => EXIT_USAGE,
                _ => EXIT_FAILURE,
            };
            Outcome { status, output: String::new(), diagnostic: format!("error: {e}\n") }
        }
    }
}

fn run(plan: &CommandPlan) -> Result<Outcome> {
    let g = build_graph(plan)?;
    let ok = |output: String| Ok(Outcome::success(output));
    match &plan.command {
        Command::Graph => match plan.format {
            Format::Json => ok(g.to_json() + "\n"),
            _ => ok(g.to_dot()),
        },
        Command::Basis => {
            let b = basis_for(&g)?;
            match plan.format {
                Format::Json => {
                    let mut out = String::from("[\n");
                    for (k, c) in b.classes().iter().enumerate() {
                        let sep = if k + 1 < b.classes().len() { "," } else { "" };
                        let _ = writeln!(out, "{}{sep}", c.to_json(&g)?);
                    }
                    out.push_str("]\n");
                    ok(out)
                }
                _ => {
                    let mut out = String::from("class\tvertex\tvalue\n");
                    for (w, c) in g.vertices().iter().zip(b.classes()) {
                        class_tsv(&g, &w.to_string(), c, &mut out);
                    }
                    ok(out)
                }
            }
        }
        Command::Act { action, perm, u } => {
            let b = basis_for(&g)?;
            let c = act(&g, *action, perm, b.class(&g, u)?)?;
            ok(class_out(plan, &g, &format!("{action}({perm},{u})"), &c)?)
        }
        Command::Ddo { op, i, u } => {
            let b = basis_for(&g)?;
            let p = b.class(&g, u)?;
            let (c, name) = match op {
                Operator::Delta => (delta(&g, *i, p)?, "delta"),
                Operator::Partial => (partial(&g, *i, p)?, "partial"),
            };
            ok(class_out(plan, &g, &format!("{name}{i}({u})"), &c)?)
        }
        Command::Mult { u, v } => {
            let b = basis_for(&g)?;
            let table = structure_constants(&g, &b, u, v)?;
            let mut out = String::from("u\tv\tw\tequivariant\tordinary\n");
            for (w, c) in &table.entries {
                let _ = writeln!(out, "{u}\t{v}\t{w}\t{c}\t{}", c.constant_term());
            }
            ok(out)
        }
        Command::Monk { i, perm } => {
            let b = basis_for(&g)?;
            let terms = chevalley_monk_terms(*i, perm)?;
            let s = WeylElement::simple_reflection(g.lie_type(), *i)?;
            let ordinary = structure_constants(&g, &b, &s, perm)?.ordinary();
            let mut out = String::from("w\tterm\tordinary\n");
            for t in &terms {
                let c = ordinary.get(t).cloned().unwrap_or_default();
                let _ = writeln!(out, "{perm}\t{t}\t{c}");
            }
            let one = gkm::poly::rat(1);
            let agrees = ordinary.len() == terms.len() && terms.iter().all(|t| ordinary.get(t) == Some(&one));
            let _ = writeln!(out, "# product agrees with the rule: {agrees}");
            Ok(Outcome::with_status(if agrees { EXIT_OK } else { EXIT_FAILURE }, out))
        }
        Command::Char { action, table } => {
            let b = basis_for(&g)?;
            let chi = character_vector(&g, &b, *action)?;
            let mut out = String::from("element\tcharacter\n");
            for (v, c) in &chi.values {
                let _ = writeln!(out, "{v}\t{c}");
            }
            let table = match table {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| GkmError::Argument(format!("{}: {e}", path.display())))?;
                    Some(CharacterTable::from_json(&text)?)
                }
                None => CharacterTable::builtin(g.lie_type()),
            };
            if let Some(table) = table {
                for (label, m) in decompose_character(&chi, &table)? {
                    let _ = writeln!(out, "# {label}\t{m}");
                }
            }
            ok(out)
        }
        Command::Verify => {
            let reports = run_suite(g.lie_type())?;
            let mut out = String::new();
            for r in &reports {
                let _ = writeln!(out, "{r}");
            }
            let status = if reports.iter().all(|r| r.passed()) { EXIT_OK } else { EXIT_FAILURE };
            Ok(Outcome::with_status(status, out))
        }
    }
}
