//! Command dispatch for the `earring` binary.
//!
//! [`run_command`] turns a parsed [`CommandRequest`] into an exit status and a
//! report. JSON reports are one object `{command, family, inputs, result}`
//! with keys in sorted order, so identical requests print identical bytes.
//! The schema lives in `schema/report.schema.json`.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use earring_core::enumerate::{reduced_words, symmetric_values};
use earring_core::{
    check_coherence, decomposition_audit, empty_interior_scan, family_from_name, format_word,
    invert, iota, multiply, parse_word, psi, reduce, sigma, stabilization_check, telescope_element,
    witness_dichotomy, AuditOptions, Branch, Exactness, Family, LimitElement, SigmaValue,
    Stability, StabilizationReport, WitnessError, WitnessReport, Word,
};
use serde_json::{json, Value};

/// Exit statuses.
pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVARIANT: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "earring",
    version,
    about = "Free-product words, the Hawaiian earring group and its sigma stratification"
)]
pub struct CommandRequest {
    /// Letter groups: `z` (integers) or `zmod:<m>` (integers mod m).
    #[arg(long, global = true, default_value = "z")]
    pub family: String,

    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,

    /// Number of coordinates inspected for stream elements.
    #[arg(long, global = true, default_value_t = 32)]
    pub depth: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Reduce a word to free-product normal form.
    Reduce { word: String },
    /// Multiply two words in the free product.
    Mul { u: String, v: String },
    /// Invert a word.
    Inv { word: String },
    /// Delete every letter of type greater than m (no reduction).
    Kappa {
        #[arg(long)]
        m: u32,
        word: String,
    },
    /// Apply the bonding map G_{n+1} -> G_n to the reduced word.
    Psi {
        #[arg(long)]
        n: u32,
        word: String,
    },
    /// List coordinates 1..depth of an element and check their coherence.
    Coords { element: String },
    /// Compute sigma of an element.
    Sigma { element: String },
    /// Check whether the kappa_m images of an element stabilize by depth.
    Stab {
        element: String,
        #[arg(long, default_value_t = 1)]
        m: u32,
    },
    /// Show the telescope element's coordinates.
    Telescope {
        /// Also run the m = 1 stabilization check.
        #[arg(long)]
        check_membership: bool,
    },
    /// Run the perturbation dichotomy at one level or over a range.
    Witness {
        element: String,
        /// Single probe level.
        #[arg(long, conflicts_with = "n_max")]
        n: Option<usize>,
        /// Probe every level sigma+1..=n_max (default sigma+8).
        #[arg(long)]
        n_max: Option<usize>,
    },
    /// Stratify an enumerated corpus of words and audit every stratum.
    Audit {
        #[arg(long, default_value_t = 3)]
        max_len: usize,
        #[arg(long, default_value_t = 3)]
        max_type: u32,
        /// Letter values range over ±1..=±values.
        #[arg(long, default_value_t = 1)]
        values: i64,
        /// Probe levels up to this one instead of sigma+8.
        #[arg(long)]
        n_max: Option<usize>,
        /// Add the telescope element to the corpus.
        #[arg(long)]
        include_telescope: bool,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Reduce { .. } => "reduce",
            Command::Mul { .. } => "mul",
            Command::Inv { .. } => "inv",
            Command::Kappa { .. } => "kappa",
            Command::Psi { .. } => "psi",
            Command::Coords { .. } => "coords",
            Command::Sigma { .. } => "sigma",
            Command::Stab { .. } => "stab",
            Command::Telescope { .. } => "telescope",
            Command::Witness { .. } => "witness",
            Command::Audit { .. } => "audit",
        }
    }
}

/// Exit status plus what goes to stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub status: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Invariant(String),
}

struct Report {
    inputs: Value,
    result: Value,
    text: String,
}

pub fn run_command(req: &CommandRequest) -> Outcome {
    let family = match family_from_name(&req.family) {
        Ok(f) => f,
        Err(e) => return failure(Failure::Usage(e.to_string())),
    };
    if req.depth < 2 {
        return failure(Failure::Usage(format!(
            "--depth must be at least 2, got {}",
            req.depth
        )));
    }
    match dispatch(req, &family) {
        Ok(report) => {
            let stdout = match req.format {
                Format::Json => {
                    let doc = json!({
                        "command": req.command.name(),
                        "family": family.name(),
                        "inputs": report.inputs,
                        "result": report.result,
                    });
                    format!("{doc}\n")
                }
                Format::Text => report.text,
            };
            Outcome {
                status: EXIT_OK,
                stdout,
                stderr: String::new(),
            }
        }
        Err(f) => failure(f),
    }
}

fn failure(f: Failure) -> Outcome {
    let (status, message) = match f {
        Failure::Usage(m) => (EXIT_USAGE, m),
        Failure::Invariant(m) => (EXIT_INVARIANT, m),
    };
    Outcome {
        status,
        stdout: String::new(),
        stderr: format!("error: {message}\n"),
    }
}

fn word_arg(family: &Family, text: &str) -> Result<Word, Failure> {
    parse_word(&**family, text).map_err(|e| Failure::Usage(format!("in `{text}`: {e}")))
}

fn element_arg(family: &Family, text: &str) -> Result<LimitElement, Failure> {
    if text.trim() == "telescope" {
        Ok(telescope_element(family.clone()))
    } else {
        Ok(iota(family.clone(), &word_arg(family, text)?))
    }
}

fn invariant(e: impl std::fmt::Display) -> Failure {
    Failure::Invariant(e.to_string())
}

fn dispatch(req: &CommandRequest, family: &Family) -> Result<Report, Failure> {
    let f = &**family;
    let fmt = |w: &Word| format_word(f, w);
    let depth = req.depth;
    match &req.command {
        Command::Reduce { word } => {
            let r = reduce(f, &word_arg(family, word)?);
            Ok(Report {
                inputs: json!({ "word": word }),
                result: json!({ "word": fmt(&r) }),
                text: format!("{}\n", fmt(&r)),
            })
        }
        Command::Mul { u, v } => {
            let a = reduce(f, &word_arg(family, u)?);
            let b = reduce(f, &word_arg(family, v)?);
            let p = multiply(f, &a, &b);
            Ok(Report {
                inputs: json!({ "u": u, "v": v }),
                result: json!({ "word": fmt(&p) }),
                text: format!("{}\n", fmt(&p)),
            })
        }
        Command::Inv { word } => {
            let r = invert(f, &reduce(f, &word_arg(family, word)?));
            Ok(Report {
                inputs: json!({ "word": word }),
                result: json!({ "word": fmt(&r) }),
                text: format!("{}\n", fmt(&r)),
            })
        }
        Command::Kappa { m, word } => {
            if *m == 0 {
                return Err(Failure::Usage("--m must be at least 1".into()));
            }
            let k = word_arg(family, word)?.kappa(*m);
            Ok(Report {
                inputs: json!({ "m": m, "word": word }),
                result: json!({ "word": fmt(&k) }),
                text: format!("{}\n", fmt(&k)),
            })
        }
        Command::Psi { n, word } => {
            if *n == 0 {
                return Err(Failure::Usage("--n must be at least 1".into()));
            }
            let r = reduce(f, &word_arg(family, word)?);
            let p = psi(f, *n, &r).map_err(invariant)?;
            Ok(Report {
                inputs: json!({ "n": n, "word": word }),
                result: json!({ "word": fmt(&p) }),
                text: format!("{}\n", fmt(&p)),
            })
        }
        Command::Coords { element } => {
            let e = element_arg(family, element)?;
            let coords = (1..=depth)
                .map(|n| e.coordinate(n).map(|w| fmt(&w)))
                .collect::<Result<Vec<_>, _>>()
                .map_err(invariant)?;
            check_coherence(&e, depth).map_err(invariant)?;
            let mut text = format!("{}\n", e.description());
            for (n, w) in coords.iter().enumerate() {
                let _ = writeln!(text, "{:>4}  {w}", n + 1);
            }
            Ok(Report {
                inputs: json!({ "depth": depth, "element": element }),
                result: json!({
                    "element": e.description(),
                    "coordinates": coords,
                    "coherent": true,
                }),
                text,
            })
        }
        Command::Sigma { element } => {
            let e = element_arg(family, element)?;
            let s = sigma(&e, depth).map_err(invariant)?;
            Ok(Report {
                inputs: json!({ "depth": depth, "element": element }),
                result: sigma_json(&s),
                text: format!("sigma({}) = {}\n", e.description(), sigma_text(&s)),
            })
        }
        Command::Stab { element, m } => {
            let e = element_arg(family, element)?;
            let r = stabilization_check(&e, *m, depth).map_err(invariant)?;
            Ok(Report {
                inputs: json!({ "depth": depth, "element": element, "m": m }),
                result: stab_json(f, &r),
                text: format!("{}: {}\n", e.description(), stab_text(f, &r)),
            })
        }
        Command::Telescope { check_membership } => {
            let t = telescope_element(family.clone());
            let coords = (1..=depth)
                .map(|n| t.coordinate(n))
                .collect::<Result<Vec<_>, _>>()
                .map_err(invariant)?;
            let lengths: Vec<usize> = coords.iter().map(|w| w.kappa(1).len()).collect();
            let mut result = json!({
                "coordinates": coords.iter().map(|w| fmt(w)).collect::<Vec<_>>(),
                "kappa1_lengths": lengths,
            });
            let mut text = String::from("   n  |kappa_1|  coordinate\n");
            for (n, (w, len)) in coords.iter().zip(&lengths).enumerate() {
                let _ = writeln!(text, "{:>4}  {len:>9}  {}", n + 1, fmt(w));
            }
            if *check_membership {
                let r = stabilization_check(&t, 1, depth).map_err(invariant)?;
                result["verdict"] = json!(verdict_text(&r.verdict));
                let _ = writeln!(text, "m = 1, depth {depth}: {}", verdict_text(&r.verdict));
            }
            Ok(Report {
                inputs: json!({ "check_membership": check_membership, "depth": depth }),
                result,
                text,
            })
        }
        Command::Witness { element, n, n_max } => {
            let e = element_arg(family, element)?;
            let s = sigma(&e, depth).map_err(invariant)?;
            let reports = match n {
                Some(n) => vec![witness_dichotomy(&e, *n).map_err(witness_failure)?],
                None => {
                    empty_interior_scan(&e, n_max.unwrap_or(s.n + 8)).map_err(witness_failure)?
                }
            };
            let mut text = format!("{}: sigma = {}\n", e.description(), sigma_text(&s));
            for r in &reports {
                let _ = writeln!(text, "{}", witness_text(f, r));
            }
            Ok(Report {
                inputs: json!({ "element": element, "n": n, "n_max": n_max }),
                result: json!({
                    "element": e.description(),
                    "sigma": sigma_json(&s),
                    "reports": reports.iter().map(|r| witness_json(f, r)).collect::<Vec<_>>(),
                }),
                text,
            })
        }
        Command::Audit {
            max_len,
            max_type,
            values,
            n_max,
            include_telescope,
        } => {
            if *max_type == 0 || *values < 1 {
                return Err(Failure::Usage(
                    "--max-type and --values must be at least 1".into(),
                ));
            }
            let mut corpus: Vec<LimitElement> =
                reduced_words(f, *max_len, *max_type, &symmetric_values(*values))
                    .iter()
                    .map(|w| iota(family.clone(), w))
                    .collect();
            if *include_telescope {
                corpus.push(telescope_element(family.clone()));
            }
            let opts = AuditOptions {
                n_max: *n_max,
                depth,
                ..AuditOptions::default()
            };
            let table = decomposition_audit(&corpus, &opts).map_err(invariant)?;
            if !table.passed {
                return Err(Failure::Invariant(format!(
                    "audit failed\n{}",
                    table.render_text()
                )));
            }
            Ok(Report {
                inputs: json!({
                    "depth": depth,
                    "include_telescope": include_telescope,
                    "max_len": max_len,
                    "max_type": max_type,
                    "n_max": n_max,
                    "values": values,
                }),
                result: serde_json::to_value(&table).expect("audit table serializes"),
                text: table.render_text(),
            })
        }
    }
}

fn witness_failure(e: WitnessError) -> Failure {
    Failure::Invariant(e.to_string())
}

fn sigma_json(s: &SigmaValue) -> Value {
    match s.exactness {
        Exactness::Exact => json!({ "N": s.n, "exactness": "exact" }),
        Exactness::BoundedByDepth(d) => {
            json!({ "N": s.n, "exactness": "bounded_by_depth", "depth": d })
        }
    }
}

fn sigma_text(s: &SigmaValue) -> String {
    match s.exactness {
        Exactness::Exact => format!("{} (exact)", s.n),
        Exactness::BoundedByDepth(d) => format!("{} (bounded by depth {d})", s.n),
    }
}

fn verdict_text(v: &Stability) -> String {
    match v {
        Stability::StableFrom(n) => format!("stable from {n}"),
        Stability::NotStableByDepth => "not stable by depth".to_string(),
    }
}

fn stab_json(f: &dyn earring_core::GroupFamily, r: &StabilizationReport) -> Value {
    let stable_from = match r.verdict {
        Stability::StableFrom(n) => Some(n),
        Stability::NotStableByDepth => None,
    };
    json!({
        "m": r.m,
        "depth": r.depth,
        "verdict": verdict_text(&r.verdict),
        "stable_from": stable_from,
        "final_image": format_word(f, &r.final_image),
        "certified": r.certified,
    })
}

fn stab_text(f: &dyn earring_core::GroupFamily, r: &StabilizationReport) -> String {
    format!(
        "kappa_{} images {} (depth {}{}), final image {}",
        r.m,
        verdict_text(&r.verdict),
        r.depth,
        if r.certified { ", certified" } else { "" },
        format_word(f, &r.final_image)
    )
}

fn branch_name(b: Branch) -> &'static str {
    match b {
        Branch::LeftEscapes => "left_escapes",
        Branch::RightEscapes => "right_escapes",
    }
}

fn witness_json(f: &dyn earring_core::GroupFamily, r: &WitnessReport) -> Value {
    json!({
        "n": r.n,
        "branch": branch_name(r.branch),
        "opposite_escapes": r.opposite_escapes,
        "first_letter_type": r.first_letter_type,
        "base_kappa1": format_word(f, &r.base_kappa1),
        "left_kappa1": format_word(f, &r.left_kappa1),
        "right_kappa1": format_word(f, &r.right_kappa1),
    })
}

fn witness_text(f: &dyn earring_core::GroupFamily, r: &WitnessReport) -> String {
    let first = r
        .first_letter_type
        .map_or_else(|| "none".to_string(), |t| format!("type {t}"));
    format!(
        "n = {:>3}  x1: {first:<8}  {}  kappa_1: {} -> {}",
        r.n,
        branch_name(r.branch),
        format_word(f, &r.base_kappa1),
        format_word(f, r.escaping_kappa1()),
    )
}
