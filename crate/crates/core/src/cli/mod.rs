//! Command-line front end. [`run`] parses arguments, dispatches to the
//! library and returns the exit status with the rendered output, so the
//! binary only prints.
//!
//! Exit status: 0 on success, 1 when an assertion or check comes out
//! negative, 2 on input errors.

mod render;

pub use render::{render_proof, ProofFormat};

use std::ffi::OsString;
use std::fmt::Write;
use std::fs;
use std::path::Path;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::decomposition::{
    additive_pair, census, check_demorgan_dual, decompose_mall, decompose_mll_capped, derive_mll, stuck_cut,
    CensusMode, DecompositionError, DecompositionVerdict, ProofTree, VerdictStatus,
};
use crate::exponentials::{
    emll_nondecomposability_check, emll_premise_sets, ContextShape, EmllError, EmllSearchBounds,
};
use crate::formulas::{behavior, parse, FormulaError, Language, DEFAULT_ENUMERATION_CAP};
use crate::intuitionistic::{decompose_imll, derive_imll, imll_behavior, imll_census, validate_imll, ImllError};
use crate::partitions::{
    dual_capped, orthogonality, simulate_cut_merge, validate_connective, ConnectivePair, Mode, Partition,
    PartitionError, PartitionSet,
};

pub const EXIT_OK: u8 = 0;
pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed JSON in {what}: {source}")]
    Json {
        what: String,
        #[source]
        source: serde_json::Error,
    },
    #[error("invalid connective: {0}")]
    InvalidConnective(String),
    #[error("{0}")]
    Input(String),
    #[error("cap exceeded: {0}")]
    Undecided(String),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error(transparent)]
    Imll(#[from] ImllError),
    #[error(transparent)]
    Emll(#[from] EmllError),
}

/// On-disk form of a connective. Negative integers mark checked elements.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConnectiveDocument {
    #[serde(default)]
    pub name: String,
    pub arity: usize,
    pub left: Vec<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right: Option<Vec<Vec<Vec<i64>>>>,
    #[serde(default)]
    pub polarized: bool,
}

/// A connective read from a document, with what loading had to say about it.
#[derive(Debug, Clone)]
pub struct LoadedConnective {
    pub pair: ConnectivePair,
    pub mode: Mode,
    pub notices: Vec<String>,
    /// Present when the document supplied both sides.
    pub validation: Option<(bool, String)>,
}

impl ConnectiveDocument {
    pub fn from_pair(c: &ConnectivePair, polarized: bool) -> Self {
        ConnectiveDocument {
            name: c.name.clone().unwrap_or_default(),
            arity: c.arity,
            left: c.left.to_signed(),
            right: Some(c.right.to_signed()),
            polarized,
        }
    }

    pub fn mode(&self) -> Mode {
        if self.polarized {
            Mode::Polarized
        } else {
            Mode::Unpolarized
        }
    }

    /// Builds the pair. A missing right side is computed as the dual of the
    /// left, and the left is closed.
    pub fn load(&self, cap: Option<usize>) -> Result<LoadedConnective, CliError> {
        let mode = self.mode();
        let cap = cap.unwrap_or(mode.default_cap());
        let left = PartitionSet::from_signed(Some(self.arity), &self.left)?;
        let mut notices = Vec::new();
        let named = |c: ConnectivePair| if self.name.is_empty() { c } else { c.named(&self.name) };
        match &self.right {
            Some(right) => {
                let right = PartitionSet::from_signed(Some(self.arity), right)?;
                let pair = named(ConnectivePair::new(left, right)?);
                let validation = if self.polarized {
                    let r = validate_imll(&pair)?;
                    (r.valid, r.to_string())
                } else {
                    let r = validate_connective(&pair, mode)?;
                    (r.valid, r.to_string())
                };
                Ok(LoadedConnective { pair, mode, notices, validation: Some(validation) })
            }
            None => {
                let right = dual_capped(&left, mode, cap)?;
                let closed = dual_capped(&right, mode, cap)?;
                if closed != left {
                    notices.push(format!("notice: left side closed under double dual: {closed}"));
                }
                let pair = named(ConnectivePair::new(closed, right)?);
                Ok(LoadedConnective { pair, mode, notices, validation: None })
            }
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "gmc", version, about = "Generalized multiplicative connectives as sets of partitions")]
pub struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DecomposeSystem {
    Mll,
    Mall,
    Imll,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AssertSystem {
    Mll,
    Emll,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BehaviorSystem {
    Mll,
    Imll,
    Emll,
}

#[derive(Debug, Clone, Args)]
pub struct Caps {
    /// Largest arity enumerated exhaustively.
    #[arg(long)]
    pub max_arity: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct BoundArgs {
    /// Largest candidate formula, in nodes.
    #[arg(long)]
    pub max_size: Option<usize>,
    #[arg(long)]
    pub max_modal_depth: Option<usize>,
    /// ?-weakenings per branch.
    #[arg(long)]
    pub max_weakenings: Option<usize>,
    /// ?-contractions per branch.
    #[arg(long)]
    pub max_contractions: Option<usize>,
}

impl BoundArgs {
    fn bounds(&self) -> EmllSearchBounds {
        let d = EmllSearchBounds::default();
        EmllSearchBounds {
            max_size: self.max_size.unwrap_or(d.max_size),
            max_modal_depth: self.max_modal_depth.unwrap_or(d.max_modal_depth),
            max_weakenings: self.max_weakenings.unwrap_or(d.max_weakenings),
            max_contractions: self.max_contractions.unwrap_or(d.max_contractions),
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Test two partitions for orthogonality.
    Orth {
        p: String,
        q: String,
        /// Polarized orthogonality; implied when an element is negative.
        #[arg(long)]
        polarized: bool,
        /// Also print the cut-merge simulation.
        #[arg(long)]
        trace: bool,
    },
    /// The dual of a set of partitions.
    Dual {
        input: String,
        #[arg(long)]
        polarized: bool,
        #[command(flatten)]
        caps: Caps,
    },
    /// The closed connective generated by a set of partitions.
    Closure {
        input: String,
        #[arg(long)]
        polarized: bool,
        #[command(flatten)]
        caps: Caps,
    },
    /// Check that the two sides of a connective are mutual duals.
    Validate {
        input: String,
        #[command(flatten)]
        caps: Caps,
    },
    /// Partition set of a formula.
    Behavior {
        formula: String,
        #[arg(long, value_enum, default_value = "mll")]
        system: BehaviorSystem,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Decompose a connective into a formula.
    Decompose {
        #[arg(long, value_enum)]
        system: DecomposeSystem,
        input: String,
        /// Render proofs as bussproofs source.
        #[arg(long)]
        latex: bool,
        /// Only run the closure checks.
        #[arg(long)]
        validate_only: bool,
        #[command(flatten)]
        caps: Caps,
    },
    /// Succeed only when the connective is non-decomposable.
    AssertNondecomposable {
        #[arg(long, value_enum)]
        system: AssertSystem,
        input: String,
        #[command(flatten)]
        caps: Caps,
        #[command(flatten)]
        bounds: BoundArgs,
    },
    /// Classify every connective of one arity.
    Census {
        #[arg(long)]
        arity: usize,
        /// Intuitionistic connectives instead of classical ones.
        #[arg(long)]
        polarized: bool,
        #[arg(long)]
        csv: bool,
        /// Generate from at most this many partitions.
        #[arg(long)]
        generators: Option<usize>,
    },
    /// Whether two formulas are De Morgan duals, or, given a connective,
    /// whether its two additive formulas are.
    DemorganCheck { first: String, second: Option<String> },
    /// Render derivations.
    Render {
        /// A connective, or a partition with `--formula`.
        input: String,
        #[arg(long)]
        latex: bool,
        /// The cut between the two additive formulas.
        #[arg(long)]
        stuck_cut: bool,
        /// Derive this formula's premise grouping `input`.
        #[arg(long)]
        formula: Option<String>,
    },
}

/// What a command produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: u8,
    pub stdout: String,
    pub stderr: String,
}

struct Reply {
    text: String,
    negative: bool,
    notices: Vec<String>,
}

impl Reply {
    fn ok(text: String) -> Self {
        Reply { text, negative: false, notices: Vec::new() }
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { status: EXIT_INPUT, stdout: String::new(), stderr: text }
            } else {
                Outcome { status: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(&cli) {
        Ok(reply) => {
            let mut stderr = String::new();
            for n in &reply.notices {
                let _ = writeln!(stderr, "{n}");
            }
            let status = if reply.negative { EXIT_NEGATIVE } else { EXIT_OK };
            Outcome { status, stdout: reply.text, stderr }
        }
        Err(e) => Outcome { status: EXIT_INPUT, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn read_file(path: &str) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_string(), source })
}

/// `@path`, inline JSON, or a path to an existing file.
fn json_source(arg: &str) -> Result<(String, String), CliError> {
    if let Some(path) = arg.strip_prefix('@') {
        return Ok((read_file(path)?, path.to_string()));
    }
    let trimmed = arg.trim_start();
    if trimmed.starts_with('[') || trimmed.starts_with('{') {
        return Ok((arg.to_string(), "argument".to_string()));
    }
    if Path::new(arg).is_file() {
        return Ok((read_file(arg)?, arg.to_string()));
    }
    Err(CliError::Input(format!("{arg}: expected inline JSON, @file.json or an existing file")))
}

fn from_json<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|source| CliError::Json { what: what.to_string(), source })
}

fn formula_source(arg: &str) -> Result<String, CliError> {
    match arg.strip_prefix('@') {
        Some(path) => Ok(read_file(path)?.trim().to_string()),
        None => Ok(arg.to_string()),
    }
}

fn read_partition(arg: &str) -> Result<Partition, CliError> {
    let (text, what) = json_source(arg)?;
    let raw: Vec<Vec<i64>> = from_json(&text, &what)?;
    Ok(Partition::from_signed(&raw)?)
}

fn has_negative(raw: &[Vec<Vec<i64>>]) -> bool {
    raw.iter().flatten().flatten().any(|&e| e < 0)
}

fn arity_of(raw: &[Vec<Vec<i64>>]) -> usize {
    raw.iter().flatten().flatten().map(|e| e.unsigned_abs() as usize).max().unwrap_or(0)
}

/// A connective document, or a bare list of partitions taken as its left side.
fn read_document(arg: &str, polarized: bool) -> Result<ConnectiveDocument, CliError> {
    let (text, what) = json_source(arg)?;
    let value: serde_json::Value = from_json(&text, &what)?;
    if value.is_array() {
        let left: Vec<Vec<Vec<i64>>> =
            serde_json::from_value(value).map_err(|source| CliError::Json { what, source })?;
        let polarized = polarized || has_negative(&left);
        return Ok(ConnectiveDocument { name: String::new(), arity: arity_of(&left), left, right: None, polarized });
    }
    let mut doc: ConnectiveDocument =
        serde_json::from_value(value).map_err(|source| CliError::Json { what, source })?;
    doc.polarized |= polarized;
    Ok(doc)
}

fn load_connective(arg: &str, polarized: bool, caps: &Caps) -> Result<LoadedConnective, CliError> {
    read_document(arg, polarized)?.load(caps.max_arity)
}

/// Loads and insists on a valid pair.
fn load_valid(arg: &str, polarized: bool, caps: &Caps) -> Result<LoadedConnective, CliError> {
    let loaded = load_connective(arg, polarized, caps)?;
    if let Some((false, report)) = &loaded.validation {
        return Err(CliError::InvalidConnective(report.clone()));
    }
    Ok(loaded)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn proofs_text(proofs: &[ProofTree], format: ProofFormat) -> String {
    proofs.iter().map(|t| render_proof(t, format)).collect::<Vec<_>>().join("\n")
}

fn verdict_text(v: &DecompositionVerdict, format: ProofFormat) -> String {
    let mut out = format!("{}\n", v.summary());
    for n in &v.notes {
        let _ = writeln!(out, "{n}");
    }
    if let VerdictStatus::Decomposable { proofs, .. } = &v.status {
        out.push('\n');
        out.push_str(&proofs_text(proofs, format));
    }
    out
}

fn execute(cli: &Cli) -> Result<Reply, CliError> {
    let json = cli.json;
    match &cli.command {
        Command::Orth { p, q, polarized, trace } => {
            let (p, q) = (read_partition(p)?, read_partition(q)?);
            let mode =
                if *polarized || p.is_polarized() || q.is_polarized() { Mode::Polarized } else { Mode::Unpolarized };
            let report = orthogonality(&p, &q, mode)?;
            let merge = simulate_cut_merge(&p, &q, mode)?;
            if json {
                return Ok(Reply::ok(to_json(&serde_json::json!({ "report": report, "cut_merge": merge }))));
            }
            let mut text = format!("{report}\n");
            if *trace {
                for s in &merge.steps {
                    let _ = writeln!(text, "  cut {}: joins sequents {} and {}", s.element, s.joined.0, s.joined.1);
                }
                let _ = writeln!(text, "cut-merge {merge}");
            }
            Ok(Reply::ok(text))
        }
        Command::Dual { input, polarized, caps } => {
            let doc = read_document(input, *polarized)?;
            let left = PartitionSet::from_signed(Some(doc.arity), &doc.left)?;
            let cap = caps.max_arity.unwrap_or(doc.mode().default_cap());
            let d = dual_capped(&left, doc.mode(), cap)?;
            Ok(Reply::ok(if json { to_json(&d) } else { format!("{d}\n") }))
        }
        Command::Closure { input, polarized, caps } => {
            let mut doc = read_document(input, *polarized)?;
            doc.right = None;
            let loaded = doc.load(caps.max_arity)?;
            let text = if json {
                to_json(&ConnectiveDocument::from_pair(&loaded.pair, doc.polarized))
            } else {
                format!("left:  {}\nright: {}\n", loaded.pair.left, loaded.pair.right)
            };
            Ok(Reply { text, negative: false, notices: loaded.notices })
        }
        Command::Validate { input, caps } => {
            let loaded = load_connective(input, false, caps)?;
            let (valid, report) = loaded.validation.clone().unwrap_or_else(|| {
                (true, "valid connective (right side computed as the dual of the left)".to_string())
            });
            let text = if json {
                to_json(&serde_json::json!({ "valid": valid, "report": report }))
            } else {
                format!("{report}\n")
            };
            Ok(Reply { text, negative: !valid, notices: loaded.notices })
        }
        Command::Behavior { formula, system, bounds } => {
            let text = formula_source(formula)?;
            match system {
                BehaviorSystem::Mll => {
                    let b = behavior(&parse(&text, Language::Mll)?)?;
                    Ok(Reply::ok(if json { to_json(&b) } else { format!("{b}\n") }))
                }
                BehaviorSystem::Imll => {
                    let b = imll_behavior(&parse(&text, Language::Imll)?)?;
                    Ok(Reply::ok(if json { to_json(&b) } else { format!("{b}\n") }))
                }
                BehaviorSystem::Emll => {
                    let f = parse(&text, Language::Emll)?;
                    let sets = emll_premise_sets(&f, ContextShape::Arbitrary, &bounds.bounds())?;
                    if json {
                        return Ok(Reply::ok(to_json(&sets)));
                    }
                    let mut out = String::new();
                    for g in &sets.groupings {
                        let classes: Vec<String> = g
                            .classes
                            .iter()
                            .map(|&c| {
                                let xs: Vec<String> = crate::partitions::elements(c).map(|e| e.to_string()).collect();
                                format!("[{}]", xs.join(","))
                            })
                            .collect();
                        let mut flags = Vec::new();
                        if g.modal {
                            flags.push("modal");
                        }
                        if g.has_empty_premise() {
                            flags.push("empty premise");
                        }
                        let flags = if flags.is_empty() { String::new() } else { format!("  ({})", flags.join(", ")) };
                        let _ = writeln!(out, "[{}]{flags}", classes.join(","));
                    }
                    if sets.groupings.is_empty() {
                        out.push_str("no premise grouping\n");
                    }
                    if sets.bound_hit {
                        out.push_str("weakening bound reached\n");
                    }
                    Ok(Reply::ok(out))
                }
            }
        }
        Command::Decompose { system, input, latex, validate_only, caps } => {
            let format = if *latex { ProofFormat::Latex } else { ProofFormat::Text };
            let polarized = *system == DecomposeSystem::Imll;
            if *validate_only {
                let loaded = load_connective(input, polarized, caps)?;
                let (valid, report) = loaded.validation.clone().unwrap_or((true, "valid connective".into()));
                return Ok(Reply { text: format!("{report}\n"), negative: !valid, notices: loaded.notices });
            }
            let loaded = load_valid(input, polarized, caps)?;
            let c = &loaded.pair;
            let text = match system {
                DecomposeSystem::Mall => {
                    let d = decompose_mall(&c.left)?;
                    if json {
                        to_json(&d)
                    } else {
                        format!("{}\n\n{}", d.formula, proofs_text(&d.proofs, format))
                    }
                }
                DecomposeSystem::Mll => {
                    let v = decompose_mll_capped(c, caps.max_arity.unwrap_or(DEFAULT_ENUMERATION_CAP))?;
                    if json {
                        to_json(&v)
                    } else {
                        verdict_text(&v, format)
                    }
                }
                DecomposeSystem::Imll => {
                    let v = decompose_imll(c)?;
                    if json {
                        to_json(&v)
                    } else {
                        verdict_text(&v, format)
                    }
                }
            };
            Ok(Reply { text, negative: false, notices: loaded.notices })
        }
        Command::AssertNondecomposable { system, input, caps, bounds } => {
            let loaded = load_valid(input, false, caps)?;
            let c = &loaded.pair;
            let (text, negative) = match system {
                AssertSystem::Mll => {
                    let v = decompose_mll_capped(c, caps.max_arity.unwrap_or(DEFAULT_ENUMERATION_CAP))?;
                    if let VerdictStatus::Unknown { reason } = &v.status {
                        return Err(CliError::Undecided(reason.clone()));
                    }
                    let text = if json { to_json(&v) } else { verdict_text(&v, ProofFormat::Text) };
                    (text, v.is_decomposable())
                }
                AssertSystem::Emll => match emll_nondecomposability_check(c, &bounds.bounds()) {
                    Ok(v) => {
                        let text = if json { to_json(&v) } else { format!("{}\n", v.summary()) };
                        (text, !v.no_counterexample())
                    }
                    Err(EmllError::Precondition(why)) => (format!("{why}\n"), true),
                    Err(e) => return Err(e.into()),
                },
            };
            Ok(Reply { text, negative, notices: loaded.notices })
        }
        Command::Census { arity, polarized, csv, generators } => {
            if *polarized {
                let r = imll_census(*arity)?;
                let text = if *csv {
                    r.to_csv()
                } else if json {
                    to_json(&r)
                } else {
                    let mut out = format!(
                        "arity {}: {} connectives, {} proper, {} decomposable, {} non-decomposable, {} outside the premise schema\n",
                        r.arity, r.connectives, r.proper, r.decomposable, r.non_decomposable, r.outside_schema
                    );
                    for (how, count) in &r.by_construction {
                        let name = serde_json::to_value(how).expect("serializable");
                        let _ = writeln!(out, "  {}: {count}", name.as_str().unwrap_or_default());
                    }
                    for e in r.entries.iter().filter(|e| e.verdict == "non-decomposable") {
                        let _ = writeln!(out, "non-decomposable: {}", e.right);
                    }
                    out
                };
                return Ok(Reply::ok(text));
            }
            let mode = match generators {
                Some(k) => CensusMode::GeneratorBounded { max_generators: *k },
                None => CensusMode::default_for(*arity),
            };
            let r = census(*arity, mode)?;
            let text = if *csv {
                r.to_csv()
            } else if json {
                to_json(&r)
            } else {
                let mut out = format!(
                    "arity {}: {} connectives from {} generating sets, {} decomposable, {} non-decomposable\n",
                    r.arity, r.connectives, r.generating_sets, r.decomposable, r.non_decomposable
                );
                for e in r.non_decomposable_entries() {
                    let _ = writeln!(out, "non-decomposable: {}", e.left);
                }
                out
            };
            Ok(Reply::ok(text))
        }
        Command::DemorganCheck { first, second } => {
            let (left, right, dual) = match second {
                Some(second) => {
                    let f = parse(&formula_source(first)?, Language::Mall)?;
                    let g = parse(&formula_source(second)?, Language::Mall)?;
                    let dual = check_demorgan_dual(&f, &g)?;
                    (f, g, dual)
                }
                None => {
                    let loaded = load_valid(first, false, &Caps { max_arity: None })?;
                    let pair = additive_pair(&loaded.pair)?;
                    (pair.left, pair.right, pair.dual)
                }
            };
            let text = if json {
                to_json(&serde_json::json!({ "left": left, "right": right, "dual": dual }))
            } else {
                let verdict = if dual { "De Morgan dual" } else { "not De Morgan dual" };
                format!("{left}\n{right}\n{verdict}\n")
            };
            Ok(Reply::ok(text))
        }
        Command::Render { input, latex, stuck_cut: stuck, formula } => {
            let format = if *latex { ProofFormat::Latex } else { ProofFormat::Text };
            let trees = match formula {
                Some(f) => {
                    let target = read_partition(input)?;
                    let text = formula_source(f)?;
                    let tree = if target.is_polarized() {
                        derive_imll(&parse(&text, Language::Imll)?, &target)
                    } else {
                        derive_mll(&parse(&text, Language::Mll)?, &target)
                    };
                    match tree {
                        Some(t) => vec![t],
                        None => {
                            let text = format!("{text} has no derivation with premise grouping {target}\n");
                            return Ok(Reply { text, negative: true, notices: Vec::new() });
                        }
                    }
                }
                None => {
                    let loaded = load_valid(input, false, &Caps { max_arity: None })?;
                    if *stuck {
                        vec![stuck_cut(&loaded.pair)?]
                    } else {
                        decompose_mall(&loaded.pair.left)?.proofs
                    }
                }
            };
            Ok(Reply::ok(if json { to_json(&trees) } else { proofs_text(&trees, format) }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gmc(args: &[&str]) -> Outcome {
        run(std::iter::once("gmc").chain(args.iter().copied()))
    }

    #[test]
    fn orth_example() {
        let o = gmc(&["orth", "[[1,2],[3,4]]", "[[1,4],[2],[3]]"]);
        assert_eq!(o.status, EXIT_OK);
        assert_eq!(o.stdout, "orthogonal (tree: 5 vertices, 4 edges)\n");
    }

    #[test]
    fn behavior_example() {
        let o = gmc(&["behavior", "(a1*a2)|a3"]);
        assert_eq!(o.stdout, "[[1,3],[2]] ; [[1],[2,3]]\n");
    }

    #[test]
    fn input_errors_exit_two() {
        assert_eq!(gmc(&["behavior", "a1*a2|a3"]).status, EXIT_INPUT);
        assert_eq!(gmc(&["dual", "[[[1,1]]]"]).status, EXIT_INPUT);
        assert_eq!(gmc(&["dual", "no-such-file.json"]).status, EXIT_INPUT);
        assert_eq!(gmc(&["frobnicate"]).status, EXIT_INPUT);
        let o = gmc(&["validate", r#"{"arity":2,"left":[[[1],[2]]],"right":[[[1],[2]]],"extra":1}"#]);
        assert_eq!(o.status, EXIT_INPUT);
    }

    #[test]
    fn invalid_pair_is_reported() {
        let o = gmc(&["validate", r#"{"arity":2,"left":[[[1],[2]]],"right":[[[1],[2]]]}"#]);
        assert_eq!(o.status, EXIT_NEGATIVE);
        assert!(o.stdout.starts_with("invalid connective"));
    }

    #[test]
    fn closure_notice() {
        let o = gmc(&["closure", "[[[1,2,3]]]"]);
        assert_eq!(o.status, EXIT_OK);
        assert!(o.stderr.is_empty());
        assert_eq!(o.stdout, "left:  [[1,2,3]]\nright: [[1],[2],[3]]\n");
    }

    #[test]
    fn document_round_trip() {
        let doc = read_document("[[[1,2],[3,4]],[[1,3],[2,4]]]", false).unwrap();
        let loaded = doc.load(None).unwrap();
        let saved = ConnectiveDocument::from_pair(&loaded.pair, false);
        let text = serde_json::to_string(&saved).unwrap();
        let again: ConnectiveDocument = serde_json::from_str(&text).unwrap();
        let reloaded = again.load(None).unwrap();
        assert_eq!(reloaded.pair, loaded.pair);
        assert_eq!(reloaded.validation.map(|v| v.0), Some(true));
    }

    #[test]
    fn tensor_is_not_asserted_non_decomposable() {
        let o = gmc(&["assert-nondecomposable", "--system", "mll", "[[[1],[2]]]"]);
        assert_eq!(o.status, EXIT_NEGATIVE);
        assert!(o.stdout.starts_with("MLL decomposable: a1*a2"));
    }
}
