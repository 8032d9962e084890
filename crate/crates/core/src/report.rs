//! Input parsing, the end-to-end analysis pipeline, and report rendering.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::algebra::{format_rational, parse_rational, Integer, RatMatrix};
use crate::decision::{schwartz_frame_criterion, FrameDecision};
use crate::error::{Error, Result};
use crate::invariants::{compute_invariants, LatticeInvariants};
use crate::lattice::Lattice;
use crate::oracle::{run_oracle, SCAN_LIMIT};
use crate::par::{self, Execution};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Matrix entry as written in a document: `"p/q"`, `"p"`, or a JSON integer.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Int(i64),
    Text(String),
}

/// Structured lattice input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeDocument {
    pub d: usize,
    pub matrix: Vec<Vec<Entry>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub nonrational: bool,
}

impl LatticeDocument {
    pub fn from_lattice(lattice: &Lattice) -> Self {
        LatticeDocument {
            d: lattice.d(),
            matrix: lattice
                .generator()
                .row_iter()
                .map(|row| row.iter().map(|x| Entry::Text(format_rational(x))).collect())
                .collect(),
            nonrational: lattice.is_declared_nonrational(),
        }
    }

    pub fn to_lattice(&self) -> Result<Lattice> {
        let rows = self
            .matrix
            .iter()
            .map(|row| {
                row.iter()
                    .map(|e| match e {
                        Entry::Int(v) => Ok(Integer::from(*v).into()),
                        Entry::Text(s) => parse_rational(s),
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        build_lattice(self.d, rows).map(|l| l.declared_nonrational(self.nonrational))
    }
}

fn build_lattice(d: usize, rows: Vec<Vec<crate::algebra::Rational>>) -> Result<Lattice> {
    if d == 0 {
        return Err(Error::ZeroDimension);
    }
    let n = 2 * d;
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        let widths: Vec<usize> = rows.iter().map(Vec::len).collect();
        return Err(Error::Shape(format!(
            "expected {n}x{n} matrix for d = {d}, got {} rows with lengths {widths:?}",
            rows.len()
        )));
    }
    Lattice::new(d, RatMatrix::from_rows(rows)?)
}

/// Inline form: rows separated by `;`, entries by `,`. When `d` is not
/// given it is inferred as half the row count.
pub fn parse_inline(text: &str, d: Option<usize>) -> Result<Lattice> {
    let rows = text
        .trim()
        .trim_end_matches(';')
        .split(';')
        .map(|row| row.split(',').map(parse_rational).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let d = match d {
        Some(d) => d,
        None if rows.len() % 2 == 0 => rows.len() / 2,
        None => {
            return Err(Error::Shape(format!(
                "{} rows cannot form a 2d x 2d matrix",
                rows.len()
            )))
        }
    };
    build_lattice(d, rows)
}

/// Accepts either a JSON lattice document or the inline form.
pub fn parse_lattice(text: &str) -> Result<Lattice> {
    if text.trim_start().starts_with('{') {
        let doc: LatticeDocument =
            serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
        doc.to_lattice()
    } else {
        parse_inline(text, None)
    }
}

/// A batch entry is a lattice document or an inline string.
pub fn lattice_from_value(value: &Value) -> Result<Lattice> {
    match value {
        Value::String(s) => parse_inline(s, None),
        Value::Object(_) => serde_json::from_value::<LatticeDocument>(value.clone())
            .map_err(|e| Error::Document(e.to_string()))?
            .to_lattice(),
        other => Err(Error::Document(format!(
            "batch entry must be an object or string, got {other}"
        ))),
    }
}

pub fn parse_batch(text: &str) -> Result<Vec<Value>> {
    match serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))? {
        Value::Array(items) => Ok(items),
        _ => Err(Error::Document("batch document must be a JSON array".into())),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AnalyzeOptions {
    /// Run the Smith and brute-force subgroup cross-checks.
    pub oracle: bool,
    pub scan_limit: u64,
    pub exec: Execution,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        AnalyzeOptions {
            oracle: false,
            scan_limit: SCAN_LIMIT,
            exec: Execution::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnalysisReport {
    pub lattice: Lattice,
    pub invariants: LatticeInvariants,
    pub decision: FrameDecision,
    /// Oracle outcome; `None` when the oracle did not run.
    pub verified: Option<bool>,
    pub tool_version: String,
}

impl AnalysisReport {
    pub fn exit_code(&self) -> i32 {
        if self.verified == Some(false) {
            3
        } else {
            0
        }
    }

    pub fn to_record(&self) -> ReportRecord {
        let ints = |v: &[Integer]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
        let matrix = |m: &RatMatrix| {
            m.row_iter()
                .map(|r| r.iter().map(format_rational).collect())
                .collect::<Vec<Vec<String>>>()
        };
        let inv = &self.invariants;
        let a = inv.arithmetic.as_ref();
        let n_gamma = inv.n_gamma().to_string();
        ReportRecord {
            d: inv.d,
            matrix: matrix(self.lattice.generator()),
            rational: inv.is_rational(),
            covol: format_rational(&inv.covol),
            order_r: a.map(|a| a.order.to_string()),
            invariant_factors: a.map(|a| ints(&a.h)),
            r_i: a.map(|a| ints(&a.r_i)),
            index: a.map_or_else(|| "infinite".to_string(), |a| a.index.to_string()),
            quotient: a.map(|a| ints(&a.quotient())),
            homogeneity_degree: inv.homogeneity_degree().to_string(),
            n_gamma,
            rc_upper_bound: format_rational(&inv.rc_upper_bound()),
            threshold: format_rational(&self.decision.threshold),
            margin: format_rational(&self.decision.margin),
            status: self.decision.status.to_string(),
            k: self.decision.window_bound_k.to_string(),
            k_coarse: self.decision.window_bound_coarse.to_string(),
            omega_subgroup_basis: a.map(|a| matrix(&a.omega_subgroup_generator)),
            verified: self.verified,
            tool_version: self.tool_version.clone(),
        }
    }
}

/// Serialized report; field order is the output order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub d: usize,
    pub matrix: Vec<Vec<String>>,
    pub rational: bool,
    pub covol: String,
    pub order_r: Option<String>,
    pub invariant_factors: Option<Vec<String>>,
    pub r_i: Option<Vec<String>>,
    pub n_gamma: String,
    pub index: String,
    pub quotient: Option<Vec<String>>,
    pub homogeneity_degree: String,
    pub rc_upper_bound: String,
    pub threshold: String,
    pub margin: String,
    pub status: String,
    pub k: String,
    pub k_coarse: String,
    pub omega_subgroup_basis: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verified: Option<bool>,
    pub tool_version: String,
}

impl ReportRecord {
    /// The input part of the report as a document that parses back to the
    /// same lattice.
    pub fn input_document(&self) -> LatticeDocument {
        LatticeDocument {
            d: self.d,
            matrix: self
                .matrix
                .iter()
                .map(|r| r.iter().cloned().map(Entry::Text).collect())
                .collect(),
            nonrational: !self.rational,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let list = |v: &Option<Vec<String>>| match v {
            Some(v) => format!("[{}]", v.join(", ")),
            None => "n/a".to_string(),
        };
        let rows = |out: &mut String, m: &[Vec<String>]| {
            for r in m {
                let _ = writeln!(out, "  [{}]", r.join(", "));
            }
        };
        let mut out = String::new();
        let _ = writeln!(out, "d: {}", self.d);
        let _ = writeln!(out, "matrix:");
        rows(&mut out, &self.matrix);
        let _ = writeln!(out, "rational: {}", self.rational);
        let _ = writeln!(out, "covol: {}", self.covol);
        let _ = writeln!(out, "order_r: {}", self.order_r.as_deref().unwrap_or("n/a"));
        let _ = writeln!(out, "invariant_factors: {}", list(&self.invariant_factors));
        let _ = writeln!(out, "r_i: {}", list(&self.r_i));
        let _ = writeln!(out, "n_gamma: {}", self.n_gamma);
        let _ = writeln!(out, "index: {}", self.index);
        let _ = writeln!(out, "quotient: {}", list(&self.quotient));
        let _ = writeln!(out, "homogeneity_degree: {}", self.homogeneity_degree);
        let _ = writeln!(out, "rc_upper_bound: {}", self.rc_upper_bound);
        let _ = writeln!(out, "threshold: {}", self.threshold);
        let _ = writeln!(out, "margin: {}", self.margin);
        let _ = writeln!(out, "status: {}", self.status);
        let _ = writeln!(out, "k: {}", self.k);
        let _ = writeln!(out, "k_coarse: {}", self.k_coarse);
        match &self.omega_subgroup_basis {
            Some(m) => {
                let _ = writeln!(out, "omega_subgroup_basis:");
                rows(&mut out, m);
            }
            None => {
                let _ = writeln!(out, "omega_subgroup_basis: n/a");
            }
        }
        if let Some(v) = self.verified {
            let _ = writeln!(out, "verified: {v}");
        }
        let _ = writeln!(out, "tool_version: {}", self.tool_version);
        out
    }
}

pub fn analyze(lattice: &Lattice) -> Result<AnalysisReport> {
    analyze_with(lattice, &AnalyzeOptions::default())
}

pub fn analyze_with(lattice: &Lattice, opts: &AnalyzeOptions) -> Result<AnalysisReport> {
    let invariants = compute_invariants(lattice)?;
    let decision = schwartz_frame_criterion(&invariants);
    let verified = if opts.oracle && invariants.is_rational() {
        Some(run_oracle(lattice, &invariants, opts.scan_limit, opts.exec)?.verified())
    } else {
        None
    };
    Ok(AnalysisReport {
        lattice: lattice.clone(),
        invariants,
        decision,
        verified,
        tool_version: TOOL_VERSION.to_string(),
    })
}

/// Analyzes every entry independently; output order matches input order.
pub fn run_batch(inputs: &[Value], opts: &AnalyzeOptions) -> Vec<Result<AnalysisReport>> {
    par::map(inputs, opts.exec, |v| {
        lattice_from_value(v).and_then(|l| analyze_with(&l, opts))
    })
}

/// One output record per batch entry.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BatchRecord {
    Report(Box<ReportRecord>),
    Error { error: String, exit_code: i32 },
}

impl BatchRecord {
    pub fn from_result(r: &Result<AnalysisReport>) -> Self {
        match r {
            Ok(rep) => BatchRecord::Report(Box::new(rep.to_record())),
            Err(e) => BatchRecord::Error {
                error: e.to_string(),
                exit_code: e.exit_code(),
            },
        }
    }
}

/// Largest per-entry exit code, 0 for an all-clean batch.
pub fn batch_exit_code(results: &[Result<AnalysisReport>]) -> i32 {
    results
        .iter()
        .map(|r| match r {
            Ok(rep) => rep.exit_code(),
            Err(e) => e.exit_code(),
        })
        .max()
        .unwrap_or(0)
}

pub fn batch_to_json(results: &[Result<AnalysisReport>]) -> String {
    let records: Vec<BatchRecord> = results.iter().map(BatchRecord::from_result).collect();
    serde_json::to_string_pretty(&records).expect("batch serializes")
}

pub fn batch_to_text(results: &[Result<AnalysisReport>]) -> String {
    let mut out = String::new();
    for (i, r) in results.iter().enumerate() {
        let _ = writeln!(out, "== entry {i} ==");
        match r {
            Ok(rep) => out.push_str(&rep.to_record().to_text()),
            Err(e) => {
                let _ = writeln!(out, "error: {e}");
            }
        }
    }
    out
}
