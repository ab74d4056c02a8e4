//! `rauzykit`: invariants, class enumeration and renaming-group checks for
//! labeled interval-exchange pairs.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use rauzykit::blocks::matching_types;
use rauzykit::classes::{holonomy, verify_ratio_with};
use rauzykit::{
    cache, classify_type, decompose, enumerate_labeled, find_pattern, marked_structure, profile,
    sigma, spin_with_budget, Budget, ClassEnumeration, Error, Flavor, Pair, PatternSearch,
    SpinParity,
};
use serde::Serialize;
use serde_json::{json, Value};

const BUDGET_ENV: &str = "RAUZYKIT_BUDGET";

#[derive(Parser)]
#[command(
    name = "rauzykit",
    version,
    about = "Rauzy classes and renaming groups of labeled pairs"
)]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Emit the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Labeled member limit; the non-labeled limit is a tenth of it.
    #[arg(long, global = true, value_name = "N")]
    budget: Option<usize>,
    /// Class cache file, read if present and written otherwise.
    #[arg(long, global = true, value_name = "PATH")]
    cache: Option<PathBuf>,
    /// `right` or `extended`.
    #[arg(long, global = true)]
    flavor: Option<String>,
}

#[derive(Subcommand)]
enum Verb {
    /// Σ, the marked cycle structure and the profile.
    Invariants { pair: String },
    /// Labeled class under the chosen flavor (right by default).
    Class { pair: String },
    /// Labeled extended class.
    ExtendedClass { pair: String },
    /// Renaming group by the holonomy method.
    Renamings { pair: String },
    /// Compares the renaming group order with the value the profile predicts.
    VerifyRatio { pair: String },
    /// Spin parity.
    Spin { pair: String },
    /// Block decomposition of a standard pair.
    Decompose { pair: String },
    /// Induction path from one pair to another over the same letters.
    FindPattern { source: String, target: String },
}

impl Verb {
    fn name(&self) -> &'static str {
        match self {
            Verb::Invariants { .. } => "invariants",
            Verb::Class { .. } => "class",
            Verb::ExtendedClass { .. } => "extended-class",
            Verb::Renamings { .. } => "renamings",
            Verb::VerifyRatio { .. } => "verify-ratio",
            Verb::Spin { .. } => "spin",
            Verb::Decompose { .. } => "decompose",
            Verb::FindPattern { .. } => "find-pattern",
        }
    }

    fn pair_text(&self) -> &str {
        match self {
            Verb::Invariants { pair }
            | Verb::Class { pair }
            | Verb::ExtendedClass { pair }
            | Verb::Renamings { pair }
            | Verb::VerifyRatio { pair }
            | Verb::Spin { pair }
            | Verb::Decompose { pair } => pair,
            Verb::FindPattern { source, .. } => source,
        }
    }
}

#[derive(Serialize)]
struct Input {
    verb: &'static str,
    pair: String,
    target: Option<String>,
    flavor: Flavor,
    budget: BudgetOut,
}

#[derive(Serialize)]
struct BudgetOut {
    labeled: usize,
    nonlabeled: usize,
}

#[derive(Serialize, Default)]
struct Invariants {
    irreducible: bool,
    standard: bool,
    sigma: Option<String>,
    marked: Option<String>,
    profile: Option<Vec<usize>>,
    simple: Option<bool>,
    spin_defined: Option<bool>,
    spin: Option<SpinParity>,
}

#[derive(Serialize)]
struct Sizes {
    labeled: Option<usize>,
    nonlabeled: Option<usize>,
}

#[derive(Serialize)]
struct Group {
    order: u64,
    classification: String,
    generators: Vec<String>,
}

#[derive(Serialize)]
struct Report {
    input: Input,
    invariants: Option<Invariants>,
    sizes: Option<Sizes>,
    group: Option<Group>,
    verdict: Option<Value>,
}

/// Exit statuses.
const PASS: u8 = 0;
const FAIL: u8 = 1;
const USAGE: u8 = 2;
const BUDGET: u8 = 3;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::BudgetExceeded { .. } => BUDGET,
        Error::Internal(_) => FAIL,
        _ => USAGE,
    }
}

fn budget_from(flag: Option<usize>) -> Result<Budget, String> {
    if let Some(n) = flag {
        return Ok(Budget::from_limit(n));
    }
    match std::env::var(BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map(Budget::from_limit)
            .map_err(|_| format!("{BUDGET_ENV}: expected a member count, got `{v}`")),
        Err(_) => Ok(Budget::default()),
    }
}

fn invariants_of(p: &Pair) -> rauzykit::Result<Invariants> {
    let mut inv = Invariants {
        irreducible: p.is_irreducible(),
        standard: p.is_standard(),
        ..Invariants::default()
    };
    if inv.irreducible {
        let prof = profile(p)?;
        inv.sigma = Some(sigma(p)?.to_string());
        inv.marked = Some(marked_structure(p)?.to_string());
        inv.simple = Some(prof.is_simple());
        inv.spin_defined = Some(prof.is_spin_defined());
        inv.profile = Some(prof.lengths().to_vec());
    }
    Ok(inv)
}

fn group_of(g: &rauzykit::PermGroup) -> Group {
    Group {
        order: g.order() as u64,
        classification: g.classification().to_string(),
        generators: g.generators().iter().map(|x| x.to_string()).collect(),
    }
}

/// A class from the cache file when it holds `p`, otherwise enumerated and
/// written there.
fn class_with_cache(
    p: &Pair,
    flavor: Flavor,
    budget: Budget,
    path: Option<&Path>,
) -> rauzykit::Result<ClassEnumeration> {
    if let Some(path) = path {
        if path.exists() {
            let class = cache::load(path)?;
            if class.flavor() != flavor || !class.contains(p) {
                return Err(Error::Precondition(format!(
                    "{} holds a {} class that does not contain {p}",
                    path.display(),
                    class.flavor()
                )));
            }
            return Ok(class);
        }
    }
    let class = enumerate_labeled(p, flavor, budget)?;
    if let Some(path) = path {
        cache::store(&class, path)?;
    }
    Ok(class)
}

struct Outcome {
    code: u8,
    lines: Vec<String>,
}

fn run(cli: &Cli, report: &mut Report, budget: Budget) -> rauzykit::Result<Outcome> {
    let p = Pair::parse(cli.verb.pair_text())?;
    report.input.pair = p.to_string();
    report.invariants = Some(invariants_of(&p)?);
    if !p.is_irreducible() {
        return Err(Error::Reducible(p.to_string()));
    }
    let inv = report.invariants.as_mut().expect("set above");
    let flavor = report.input.flavor;
    let mut lines = Vec::new();
    let mut code = PASS;
    match &cli.verb {
        Verb::Invariants { .. } => {
            lines.push(format!("sigma: {}", inv.sigma.as_deref().unwrap_or("")));
            lines.push(format!("marked: {}", inv.marked.as_deref().unwrap_or("")));
            lines.push(format!("profile: {}", profile(&p)?));
            lines.push(format!("simple: {}", inv.simple.unwrap_or(false)));
            report.verdict = Some(json!({ "pass": true }));
        }
        Verb::Class { .. } | Verb::ExtendedClass { .. } => {
            let class = class_with_cache(&p, flavor, budget, cli.cache.as_deref())?;
            report.sizes = Some(Sizes {
                labeled: Some(class.len()),
                nonlabeled: Some(class.nonlabeled_len()),
            });
            lines.push(format!("flavor: {flavor}"));
            lines.push(format!("labeled: {}", class.len()));
            lines.push(format!("nonlabeled: {}", class.nonlabeled_len()));
            report.verdict = Some(json!({ "pass": true }));
        }
        Verb::Renamings { .. } => {
            let h = holonomy(&p, Flavor::Extended, budget)?;
            report.sizes = Some(Sizes {
                labeled: None,
                nonlabeled: Some(h.nonlabeled_size),
            });
            let g = group_of(&h.group);
            lines.push(format!("order: {}", g.order));
            lines.push(format!("classification: {}", g.classification));
            lines.push(format!("generators: {}", g.generators.join(" ")));
            lines.push(format!("nonlabeled: {}", h.nonlabeled_size));
            report.group = Some(g);
            report.verdict = Some(json!({ "pass": true, "discrepancies": h.discrepancies }));
        }
        Verb::VerifyRatio { .. } => {
            let r = verify_ratio_with(&p, budget)?;
            report.sizes = Some(Sizes {
                labeled: r.labeled_size,
                nonlabeled: Some(r.nonlabeled_size),
            });
            report.group = Some(Group {
                order: r.computed,
                classification: r.classification.to_string(),
                generators: r.generators.clone(),
            });
            lines.push(format!(
                "profile: {} ({})",
                r.profile,
                if r.simple { "simple" } else { "repeated" }
            ));
            lines.push(format!("predicted: {}", r.predicted));
            lines.push(format!("computed: {}", r.computed));
            lines.push(format!("classification: {}", r.classification));
            lines.push(format!("nonlabeled: {}", r.nonlabeled_size));
            if let (Some(l), Some(q)) = (r.labeled_size, r.quotient) {
                lines.push(format!("labeled: {l} (quotient {q})"));
            }
            lines.push(format!("verdict: {}", if r.pass { "pass" } else { "fail" }));
            report.verdict = Some(json!({
                "pass": r.pass,
                "predicted": r.predicted,
                "computed": r.computed,
                "quotient": r.quotient,
            }));
            if !r.pass {
                code = FAIL;
            }
        }
        Verb::Spin { .. } => {
            let s = spin_with_budget(&p, budget.nonlabeled)?;
            inv.spin = Some(s.value);
            lines.push(format!("spin: {}", s.value));
            if let Some(q) = &s.representative {
                lines.push(format!("representative: {q}"));
            }
            if let Some(note) = &s.note {
                lines.push(format!("note: {note}"));
            }
            let pass = s.value != SpinParity::NotComputed;
            if !pass {
                code = if s.note.as_deref().is_some_and(|n| n.starts_with("budget")) {
                    BUDGET
                } else {
                    FAIL
                };
            }
            report.verdict = Some(json!({
                "pass": pass,
                "representative": s.representative.map(|q| q.to_string()),
                "note": s.note,
            }));
        }
        Verb::Decompose { .. } => {
            let d = decompose(&p)?;
            let types: Vec<String> = matching_types(&p)?.iter().map(|t| t.to_string()).collect();
            let tag = classify_type(&p)?;
            match &d {
                Some(d) => lines.push(format!("blocks: {}", d.display(p.alphabet()))),
                None => lines.push("blocks: none".into()),
            }
            lines.push(format!("type: {tag}"));
            report.verdict = Some(json!({
                "pass": true,
                "blocks": d.as_ref().map(|d| d.report(p.alphabet())),
                "types": types,
                "type": tag,
            }));
        }
        Verb::FindPattern { target, .. } => {
            let q = Pair::parse_with(p.alphabet(), target)?;
            report.input.target = Some(q.to_string());
            let (result, path) = match find_pattern(&p, &q, flavor, budget)? {
                PatternSearch::Found(path) => ("found", Some(path)),
                PatternSearch::NotFound => {
                    code = FAIL;
                    ("not_found", None)
                }
                PatternSearch::Unverified { .. } => {
                    code = BUDGET;
                    ("unverified", None)
                }
            };
            let word = path.as_ref().map(|w| {
                w.iter()
                    .map(|m| m.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            });
            lines.push(format!("result: {result}"));
            if let Some(w) = &word {
                lines.push(format!("path: {w}"));
                lines.push(format!("length: {}", path.as_ref().map_or(0, Vec::len)));
            }
            report.verdict = Some(json!({
                "pass": code == PASS,
                "result": result,
                "path": word,
                "length": path.map(|w| w.len()),
            }));
        }
    }
    Ok(Outcome { code, lines })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = match budget_from(cli.budget) {
        Ok(b) => b,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(USAGE);
        }
    };
    let verb = cli.verb.name();
    let flavor = match (&cli.verb, cli.flavor.as_deref()) {
        (Verb::ExtendedClass { .. }, _) => Ok(Flavor::Extended),
        (_, None) => Ok(Flavor::Right),
        (_, Some(s)) => Flavor::parse(s),
    };
    let flavor = match flavor {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(USAGE);
        }
    };
    if cli.cache.is_some() && !matches!(cli.verb, Verb::Class { .. } | Verb::ExtendedClass { .. }) {
        eprintln!("error: --cache applies to class and extended-class only");
        return ExitCode::from(USAGE);
    }
    let mut report = Report {
        input: Input {
            verb,
            pair: cli.verb.pair_text().to_string(),
            target: match &cli.verb {
                Verb::FindPattern { target, .. } => Some(target.clone()),
                _ => None,
            },
            flavor,
            budget: BudgetOut {
                labeled: budget.labeled,
                nonlabeled: budget.nonlabeled,
            },
        },
        invariants: None,
        sizes: None,
        group: None,
        verdict: None,
    };
    let (code, lines) = match run(&cli, &mut report, budget) {
        Ok(o) => (o.code, o.lines),
        Err(e) => {
            report.verdict = Some(json!({ "pass": false, "error": e.to_string() }));
            eprintln!("error: {e}");
            (exit_code(&e), Vec::new())
        }
    };
    if cli.json {
        let text = serde_json::to_string_pretty(&report).expect("report serializes");
        println!("{text}");
    } else {
        for line in lines {
            println!("{line}");
        }
    }
    ExitCode::from(code)
}
