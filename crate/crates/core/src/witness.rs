//! Constructive witnesses that each stratum `σ^{-1}(K)` of `G` is closed and
//! has empty interior, so that `G = ⋃_K σ^{-1}(K)` is a countable union of
//! nowhere dense closed sets.
//!
//! For an element `f` with `σ(f) = K` and a level `n > K`, the perturbations
//! `g_n = [h_1, h_n]` and `g^n = [h_n, h_1]` have trivial coordinates below
//! `n`, so `g_n f` and `g^n f` agree with `f` there. At level `n` one of them
//! gains the literal prefix `h_1 h_1^{-1}` in its `κ_1` image, which moves it
//! out of `σ^{-1}(K)`. Which one depends on the type of the first letter of
//! `f(n)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{LimitError, WitnessError};
use crate::family::Family;
use crate::limit::{
    iota, lim_multiply, sigma, sigma_certificate, LimitElement, SigmaValue, DEFAULT_DEPTH,
};
use crate::par::{map_ordered, Execution};
use crate::word::{Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    /// `g_n = h_1 h_n h_1^{-1} h_n^{-1}`
    Left,
    /// `g^n = h_n h_1 h_n^{-1} h_1^{-1}`
    Right,
}

/// The commutator perturbation at level `n ≥ 2`, as an ι-image.
pub fn perturbation(family: Family, n: usize, side: Side) -> Result<LimitElement, WitnessError> {
    if n < 2 {
        return Err(WitnessError::LevelTooSmall(n));
    }
    let f = &*family;
    let ty = u32::try_from(n).map_err(|_| WitnessError::LevelTooSmall(n))?;
    let h1 = Letter::new(1, f.distinguished(1));
    let hn = Letter::new(ty, f.distinguished(ty));
    let (a, b) = match side {
        Side::Left => (h1, hn),
        Side::Right => (hn, h1),
    };
    let word = Word::new(vec![a, b, a.inverse(f), b.inverse(f)]);
    Ok(iota(family, &word))
}

/// Which perturbation leaves the stratum. Determined by the first letter
/// `x_1` of `f(n)`: `x_1 ∉ H_n` (or `f(n)` empty) selects the left one,
/// `x_1 ∈ H_n` the right one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    LeftEscapes,
    RightEscapes,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub base: String,
    pub sigma: SigmaValue,
    pub n: usize,
    pub branch: Branch,
    /// The perturbation on the other side leaves the stratum too.
    pub opposite_escapes: bool,
    pub first_letter_type: Option<u32>,
    /// `κ_1(f(n))`
    pub base_kappa1: Word,
    /// `κ_1(g_n f (n))`
    pub left_kappa1: Word,
    /// `κ_1(g^n f (n))`
    pub right_kappa1: Word,
}

impl WitnessReport {
    pub fn escaping_kappa1(&self) -> &Word {
        match self.branch {
            Branch::LeftEscapes => &self.left_kappa1,
            Branch::RightEscapes => &self.right_kappa1,
        }
    }
}

fn exact_sigma(f: &LimitElement) -> Result<SigmaValue, WitnessError> {
    let s = sigma(f, DEFAULT_DEPTH)?;
    if !s.is_exact() {
        return Err(WitnessError::NotExact {
            description: f.description(),
        });
    }
    Ok(s)
}

struct Probe {
    report: WitnessReport,
    left: LimitElement,
    right: LimitElement,
}

fn violated(n: usize, reason: impl Into<String>) -> WitnessError {
    WitnessError::Violated {
        n,
        reason: reason.into(),
    }
}

fn probe(f: &LimitElement, k: SigmaValue, n: usize) -> Result<Probe, WitnessError> {
    if n <= k.n {
        return Err(WitnessError::LevelNotAboveSigma { n, sigma: k.n });
    }
    let family = f.family().clone();
    let left = lim_multiply(&perturbation(family.clone(), n, Side::Left)?, f)?;
    let right = lim_multiply(&perturbation(family.clone(), n, Side::Right)?, f)?;

    let base_prev = f.coordinate(n - 1)?.kappa(1);
    let base_now_word = f.coordinate(n)?;
    let base_now = base_now_word.kappa(1);
    let left_prev = left.coordinate(n - 1)?.kappa(1);
    let right_prev = right.coordinate(n - 1)?.kappa(1);
    if !(base_now == base_prev && base_prev == left_prev && left_prev == right_prev) {
        return Err(violated(
            n,
            format!(
                "equation chain broken: f(n)={base_now}, f(n-1)={base_prev}, \
                 left(n-1)={left_prev}, right(n-1)={right_prev}"
            ),
        ));
    }

    let left_now = left.coordinate(n)?.kappa(1);
    let right_now = right.coordinate(n)?.kappa(1);
    let first_letter_type = base_now_word.first().map(|l| l.type_index());
    let branch = match first_letter_type {
        Some(t) if t as usize == n => Branch::RightEscapes,
        _ => Branch::LeftEscapes,
    };
    let (escaping, escaping_now, other_now) = match branch {
        Branch::LeftEscapes => (&left, &left_now, &right_now),
        Branch::RightEscapes => (&right, &right_now, &left_now),
    };

    let fam = &*family;
    let h1 = Letter::new(1, fam.distinguished(1));
    let expected = Word::new(vec![h1, h1.inverse(fam)]).concat(&base_now);
    if *escaping_now != expected {
        return Err(violated(
            n,
            format!("{branch:?}: expected kappa_1 image {expected}, got {escaping_now}"),
        ));
    }
    if sigma_certificate(escaping, k.n, (n + 1).max(DEFAULT_DEPTH))? {
        return Err(violated(
            n,
            format!(
                "{branch:?}: perturbed element still certifies sigma = {}",
                k.n
            ),
        ));
    }

    let report = WitnessReport {
        base: f.description(),
        sigma: k,
        n,
        branch,
        opposite_escapes: *other_now != base_now,
        first_letter_type,
        left_kappa1: left_now,
        right_kappa1: right_now,
        base_kappa1: base_now,
    };
    Ok(Probe {
        report,
        left,
        right,
    })
}

/// Runs the two-sided perturbation check at level `n`.
///
/// Requires an element with exact `σ(f) = K` and `n ≥ K + 1`. Fails with
/// [`WitnessError::Violated`] if any step of the argument does not hold
/// literally: the `κ_1` equation chain at level `n - 1`, the prefix
/// `h_1 h_1^{-1}` on the escaping side, or the escaping element still
/// certifying `σ = K`.
pub fn witness_dichotomy(f: &LimitElement, n: usize) -> Result<WitnessReport, WitnessError> {
    let k = exact_sigma(f)?;
    probe(f, k, n).map(|p| p.report)
}

/// [`witness_dichotomy`] for every level `K+1..=n_max`, plus the convergence
/// schedule: both perturbed elements agree with `f` below their level.
pub fn empty_interior_scan(
    f: &LimitElement,
    n_max: usize,
) -> Result<Vec<WitnessReport>, WitnessError> {
    let k = exact_sigma(f)?;
    let mut reports = Vec::new();
    for n in k.n + 1..=n_max {
        let p = probe(f, k, n)?;
        for i in 1..n {
            let base = f.coordinate(i)?;
            if p.left.coordinate(i)? != base || p.right.coordinate(i)? != base {
                return Err(violated(
                    n,
                    format!("perturbation disturbs coordinate {i} below its level"),
                ));
            }
        }
        reports.push(p.report);
    }
    Ok(reports)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AuditOptions {
    /// Probe levels `K+1..=K+probes` per element unless `n_max` is set.
    pub probes: usize,
    pub n_max: Option<usize>,
    pub depth: usize,
    pub execution: Execution,
}

impl Default for AuditOptions {
    fn default() -> Self {
        AuditOptions {
            probes: 8,
            n_max: None,
            depth: DEFAULT_DEPTH,
            execution: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanSummary {
    pub levels: usize,
    pub left: usize,
    pub right: usize,
    pub all_escape: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditRow {
    pub element: String,
    pub stratum: usize,
    /// Levels in `1..=bound+1` whose certificate holds; exactly `[stratum]`
    /// when the closedness mechanism checks out.
    pub certified_levels: Vec<usize>,
    pub certificate: bool,
    pub scan: ScanSummary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum AuditEntry {
    Eligible(AuditRow),
    Ineligible { element: String, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditTable {
    pub entries: Vec<AuditEntry>,
    /// Stratum `N` ↦ number of eligible elements with `σ = N`.
    pub strata: BTreeMap<usize, usize>,
    pub eligible: usize,
    pub ineligible: usize,
    pub passed: bool,
}

fn audit_one(e: &LimitElement, opts: &AuditOptions) -> Result<AuditEntry, LimitError> {
    let s = match sigma(e, opts.depth) {
        Ok(s) if s.is_exact() => s,
        Ok(s) => {
            return Ok(AuditEntry::Ineligible {
                element: e.description(),
                reason: format!("sigma = {} is only bounded by depth {}", s.n, opts.depth),
            })
        }
        Err(LimitError::SigmaUndefined { depth, .. }) => {
            return Ok(AuditEntry::Ineligible {
                element: e.description(),
                reason: format!("kappa_1 images not stable by depth {depth}; not in G"),
            })
        }
        Err(other) => return Err(other),
    };

    let bound = e.stabilization_bound().unwrap_or(s.n);
    let cert_depth = (bound + 2).max(opts.depth);
    let mut certified_levels = Vec::new();
    for level in 1..=bound + 1 {
        if sigma_certificate(e, level, cert_depth)? {
            certified_levels.push(level);
        }
    }
    let certificate = certified_levels == [s.n];

    let n_max = opts.n_max.unwrap_or(s.n + opts.probes);
    let scan = match empty_interior_scan(e, n_max) {
        Ok(reports) => ScanSummary {
            levels: reports.len(),
            left: reports
                .iter()
                .filter(|r| r.branch == Branch::LeftEscapes)
                .count(),
            right: reports
                .iter()
                .filter(|r| r.branch == Branch::RightEscapes)
                .count(),
            all_escape: true,
            error: None,
        },
        Err(err) => ScanSummary {
            levels: 0,
            left: 0,
            right: 0,
            all_escape: false,
            error: Some(err.to_string()),
        },
    };
    Ok(AuditEntry::Eligible(AuditRow {
        element: e.description(),
        stratum: s.n,
        certified_levels,
        certificate,
        scan,
    }))
}

/// Assigns every corpus element its stratum, checks the certificate that
/// pins the stratum, and runs the empty-interior scan.
///
/// Elements without exact `σ` are listed as ineligible rather than failing the
/// audit. The audit passes when every eligible element has exactly one
/// certified stratum and every probed level escapes.
pub fn decomposition_audit(
    corpus: &[LimitElement],
    opts: &AuditOptions,
) -> Result<AuditTable, LimitError> {
    let entries = map_ordered(opts.execution, corpus, |e| audit_one(e, opts))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let mut strata = BTreeMap::new();
    let mut passed = true;
    let mut eligible = 0;
    for entry in &entries {
        if let AuditEntry::Eligible(row) = entry {
            eligible += 1;
            *strata.entry(row.stratum).or_insert(0) += 1;
            passed &= row.certificate && row.scan.all_escape;
        }
    }
    Ok(AuditTable {
        ineligible: entries.len() - eligible,
        eligible,
        entries,
        strata,
        passed,
    })
}

impl AuditTable {
    /// Aligned text columns: element, stratum, certificate, scan.
    pub fn render_text(&self) -> String {
        let rows: Vec<[String; 4]> = self
            .entries
            .iter()
            .map(|entry| match entry {
                AuditEntry::Eligible(row) => [
                    row.element.clone(),
                    row.stratum.to_string(),
                    if row.certificate { "ok" } else { "FAIL" }.to_string(),
                    match &row.scan.error {
                        Some(err) => format!("FAIL: {err}"),
                        None => format!(
                            "{} levels, {} left, {} right",
                            row.scan.levels, row.scan.left, row.scan.right
                        ),
                    },
                ],
                AuditEntry::Ineligible { element, reason } => [
                    element.clone(),
                    "-".to_string(),
                    "-".to_string(),
                    format!("ineligible: {reason}"),
                ],
            })
            .collect();
        let header = ["element", "stratum", "certificate", "scan"].map(String::from);
        let mut widths = header.clone().map(|h| h.chars().count());
        for row in &rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut out = String::new();
        for row in std::iter::once(&header).chain(&rows) {
            let line = row
                .iter()
                .zip(widths)
                .map(|(cell, w)| format!("{cell:<w$}"))
                .collect::<Vec<_>>()
                .join("  ");
            out.push_str(line.trim_end());
            out.push('\n');
        }
        let strata = self
            .strata
            .iter()
            .map(|(n, c)| format!("{n}: {c}"))
            .collect::<Vec<_>>()
            .join(", ");
        let _ = writeln!(out, "strata: {{{strata}}}");
        let _ = writeln!(
            out,
            "eligible: {}, ineligible: {}, audit: {}",
            self.eligible,
            self.ineligible,
            if self.passed { "pass" } else { "FAIL" }
        );
        out
    }
}
