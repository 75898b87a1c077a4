//! The verification grid: every measure of a witness stream is built by
//! construction and compared against the bound table.

use std::fmt::Write as _;
use std::ops::RangeInclusive;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::atoms::{atom_bound_formula, enumerate_atoms};
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::ideals::{self, Expected, IdealClass, Measure, Pairing};
use crate::minimize::minimize;
use crate::ops::{
    boolean_product, complexity, concat_epsilon, concat_ideal_redirect, quotient_complexities,
    reverse, star_generic, BoolOp,
};
use crate::semigroup::{default_cap, syntactic_semigroup_size_with_cap};
use crate::witnesses::{apply_dialect, PartialPermutation, StreamClass};

/// Builds the full-alphabet witness of a class for a given `n`.
pub type WitnessFn = dyn Fn(IdealClass, usize) -> Result<Dfa> + Sync;

/// What a record measures; the declaration order is the report order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckKind {
    Semigroup,
    QuotientProfile,
    AtomCount,
    AtomComplexity,
    Reversal,
    Star,
    Product,
    ProductRedirect,
    Boolean(BoolOp),
}

impl CheckKind {
    pub fn name(self) -> &'static str {
        match self {
            CheckKind::Semigroup => "semigroup",
            CheckKind::QuotientProfile => "quotient_profile",
            CheckKind::AtomCount => "atom_count",
            CheckKind::AtomComplexity => "atom_complexity",
            CheckKind::Reversal => "reversal",
            CheckKind::Star => "star",
            CheckKind::Product => "product",
            CheckKind::ProductRedirect => "product_redirect",
            CheckKind::Boolean(op) => op.name(),
        }
    }

    fn measure(self) -> Measure {
        match self {
            CheckKind::Semigroup => Measure::Semigroup,
            CheckKind::QuotientProfile => Measure::QuotientProfile,
            CheckKind::AtomCount => Measure::AtomCount,
            CheckKind::AtomComplexity => Measure::AtomComplexity,
            CheckKind::Reversal => Measure::Reversal,
            CheckKind::Star => Measure::Star,
            CheckKind::Product | CheckKind::ProductRedirect => Measure::Product,
            CheckKind::Boolean(op) => op.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    pub n: usize,
    #[serde(rename = "S", skip_serializing_if = "Option::is_none")]
    pub subset: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairing: Option<Pairing>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dialect: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub second_dialect: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub class: &'static str,
    pub measure: &'static str,
    pub params: Params,
    pub expected: Option<Expected>,
    pub measured: Option<Expected>,
    pub pass: bool,
    /// `null` unless timing was requested.
    pub ms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip)]
    kind: CheckKind,
    #[serde(skip)]
    class_key: IdealClass,
    #[serde(skip)]
    subset_mask: u64,
    #[serde(skip)]
    cap_exceeded: bool,
}

impl CheckRecord {
    pub fn kind(&self) -> CheckKind {
        self.kind
    }

    fn sort_key(
        &self,
    ) -> (
        IdealClass,
        CheckKind,
        Option<Pairing>,
        Option<usize>,
        usize,
        u64,
    ) {
        (
            self.class_key,
            self.kind,
            self.params.pairing,
            self.params.m,
            self.params.n,
            self.subset_mask,
        )
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl VerificationReport {
    fn from_records(mut checks: Vec<CheckRecord>) -> Self {
        checks.sort_by_key(|r| r.sort_key());
        let pass = checks.iter().filter(|r| r.pass).count();
        let summary = Summary {
            pass,
            fail: checks.len() - pass,
        };
        Self { checks, summary }
    }

    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn cap_exceeded(&self) -> bool {
        self.checks.iter().any(|r| r.cap_exceeded)
    }

    /// 0 all pass, 1 some check failed, 3 a semigroup closure hit its cap.
    pub fn exit_code(&self) -> i32 {
        if self.cap_exceeded() {
            3
        } else if self.all_pass() {
            0
        } else {
            1
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.checks.iter().filter(|r| !r.pass)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_csv(&self) -> String {
        let rows = table_rows(&self.to_json_value());
        let mut out = String::from("class,measure,params,expected,measured,pass,ms\n");
        for row in rows {
            let quoted: Vec<String> = row.iter().map(|c| csv_field(c)).collect();
            out.push_str(&quoted.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_markdown(&self) -> String {
        let value = self.to_json_value();
        let mut out = String::from(
            "| class | measure | params | expected | measured | pass | ms |\n|---|---|---|---|---|---|---|\n",
        );
        for row in table_rows(&value) {
            let _ = writeln!(out, "| {} |", row.join(" | "));
        }
        let summary = &value["summary"];
        let _ = writeln!(
            out,
            "\n**{} passed, {} failed**",
            summary["pass"], summary["fail"]
        );
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn compact(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Null => String::new(),
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn table_rows(report: &serde_json::Value) -> Vec<Vec<String>> {
    let empty = Vec::new();
    let checks = report["checks"].as_array().unwrap_or(&empty);
    checks
        .iter()
        .map(|c| {
            let params = c["params"]
                .as_object()
                .map(|o| {
                    o.iter()
                        .map(|(k, v)| format!("{k}={}", compact(v)))
                        .collect::<Vec<_>>()
                        .join(";")
                })
                .unwrap_or_default();
            vec![
                compact(&c["class"]),
                compact(&c["measure"]),
                params,
                compact(&c["expected"]),
                compact(&c["measured"]),
                compact(&c["pass"]),
                compact(&c["ms"]),
            ]
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub class: IdealClass,
    pub n_range: RangeInclusive<usize>,
    /// Operand sizes for product and boolean checks; `None` skips them.
    pub mn_range: Option<RangeInclusive<usize>>,
    /// Semigroup cap; `None` uses the per-`n` default.
    pub cap: Option<usize>,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Record elapsed milliseconds per check. Off keeps reports
    /// byte-reproducible.
    pub timing: bool,
}

impl VerifyConfig {
    /// Default desk-scale ranges for a class.
    pub fn for_class(class: IdealClass) -> Self {
        let lo = class.min_n();
        Self {
            class,
            n_range: lo..=7,
            mn_range: Some(lo..=6),
            cap: None,
            jobs: None,
            timing: false,
        }
    }

    fn validate(&self) -> Result<()> {
        let min = self.class.min_n();
        let ranges = std::iter::once(&self.n_range).chain(self.mn_range.as_ref());
        for r in ranges {
            if r.is_empty() {
                return Err(Error::InvalidParameters(format!("empty range {r:?}")));
            }
            if *r.start() < min {
                return Err(Error::ParameterOutOfRange {
                    class: self.class.name(),
                    n: *r.start(),
                    min,
                });
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug)]
enum Task {
    Unary(CheckKind, usize),
    Binary(CheckKind, Pairing, usize, usize),
}

fn tasks(config: &VerifyConfig) -> Vec<Task> {
    let class = config.class;
    let mut out = Vec::new();
    for n in config.n_range.clone() {
        for kind in [
            CheckKind::Semigroup,
            CheckKind::QuotientProfile,
            CheckKind::AtomCount,
            CheckKind::AtomComplexity,
            CheckKind::Reversal,
            CheckKind::Star,
        ] {
            out.push(Task::Unary(kind, n));
        }
    }
    if let Some(range) = &config.mn_range {
        for m in range.clone() {
            for n in range.clone() {
                out.push(Task::Binary(CheckKind::Product, Pairing::Dialect, m, n));
                if class != IdealClass::Right {
                    out.push(Task::Binary(
                        CheckKind::ProductRedirect,
                        Pairing::Dialect,
                        m,
                        n,
                    ));
                }
                for op in BoolOp::ALL {
                    out.push(Task::Binary(CheckKind::Boolean(op), Pairing::Dialect, m, n));
                    if m != n && ideals::same_stream_dialect(class).is_some() {
                        out.push(Task::Binary(
                            CheckKind::Boolean(op),
                            Pairing::SameStream,
                            m,
                            n,
                        ));
                    }
                }
            }
        }
    }
    out
}

/// Runs the grid on the standard witnesses.
pub fn verify(config: &VerifyConfig) -> Result<VerificationReport> {
    verify_with(config, &|class, n| StreamClass::from(class).witness(n))
}

/// Runs the grid with a caller-supplied witness builder.
pub fn verify_with(config: &VerifyConfig, witness: &WitnessFn) -> Result<VerificationReport> {
    config.validate()?;
    let tasks = tasks(config);
    let run = || -> Vec<CheckRecord> {
        tasks
            .par_iter()
            .flat_map_iter(|&task| run_task(config, witness, task))
            .collect()
    };
    let records = match config.jobs {
        Some(jobs) => rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build()
            .map_err(|e| Error::InvalidParameters(format!("worker pool: {e}")))?
            .install(run),
        None => run(),
    };
    Ok(VerificationReport::from_records(records))
}

fn dialect_witness(
    witness: &WitnessFn,
    class: IdealClass,
    n: usize,
    dialect: Option<&str>,
) -> Result<Dfa> {
    let full = witness(class, n)?;
    match dialect {
        Some(d) => Ok(apply_dialect(&full, &d.parse::<PartialPermutation>()?)?.sorted_alphabet()),
        None => Ok(full),
    }
}

fn record(
    config: &VerifyConfig,
    kind: CheckKind,
    params: Params,
    expected: Result<Expected>,
    measured: Result<Expected>,
    extra_failure: Option<String>,
    started: Instant,
) -> CheckRecord {
    let mut error = None;
    let mut cap_exceeded = false;
    let expected = expected.map_err(|e| error = Some(e.to_string())).ok();
    let measured = match measured {
        Ok(v) => Some(v),
        Err(e) => {
            cap_exceeded = matches!(e, Error::SemigroupCap { .. });
            error = Some(e.to_string());
            None
        }
    };
    if extra_failure.is_some() {
        error = extra_failure;
    }
    let pass = error.is_none() && expected.is_some() && expected == measured;
    let subset_mask = params
        .subset
        .as_ref()
        .map(|s| s.iter().fold(0u64, |acc, &q| acc | 1 << (q - 1)))
        .unwrap_or(0);
    CheckRecord {
        class: config.class.name(),
        measure: kind.name(),
        params,
        expected,
        measured,
        pass,
        ms: config.timing.then(|| started.elapsed().as_millis() as u64),
        error,
        kind,
        class_key: config.class,
        subset_mask,
        cap_exceeded,
    }
}

fn count(v: usize) -> Expected {
    Expected::Count(v as u64)
}

fn run_task(config: &VerifyConfig, witness: &WitnessFn, task: Task) -> Vec<CheckRecord> {
    let class = config.class;
    let started = Instant::now();
    match task {
        Task::Unary(CheckKind::AtomComplexity, n) => atom_records(config, witness, n, started),
        Task::Unary(kind, n) => {
            let entry = ideals::entry(class, kind.measure()).expect("table is complete");
            let params = Params {
                m: None,
                n,
                subset: None,
                pairing: None,
                dialect: entry.dialect.map(str::to_string),
                second_dialect: None,
            };
            let expected = ideals::expected(class, kind.measure(), None, n);
            let measured = (|| -> Result<Expected> {
                let d = dialect_witness(witness, class, n, entry.dialect)?;
                Ok(match kind {
                    CheckKind::Semigroup => {
                        let minimal = minimize(&d);
                        let cap = config
                            .cap
                            .unwrap_or_else(|| default_cap(minimal.state_count()));
                        count(syntactic_semigroup_size_with_cap(&minimal, cap)?)
                    }
                    CheckKind::QuotientProfile => Expected::Profile(
                        quotient_complexities(&d)
                            .into_iter()
                            .map(|c| c as u64)
                            .collect(),
                    ),
                    CheckKind::AtomCount => count(enumerate_atoms(&minimize(&d))?.len()),
                    CheckKind::Reversal => count(reverse(&d).state_count()),
                    CheckKind::Star => count(star_generic(&d).state_count()),
                    _ => unreachable!("binary kinds are not unary tasks"),
                })
            })();
            vec![record(
                config, kind, params, expected, measured, None, started,
            )]
        }
        Task::Binary(kind, pairing, m, n) => {
            let entry = ideals::entry(class, kind.measure()).expect("table is complete");
            let (d1_spec, d2_spec) = match pairing {
                Pairing::Dialect => (entry.dialect, entry.second_dialect),
                Pairing::SameStream => {
                    let d = ideals::same_stream_dialect(class);
                    (d, d)
                }
            };
            let params = Params {
                m: Some(m),
                n,
                subset: None,
                pairing: kind.measure().boolean().map(|_| pairing),
                dialect: d1_spec.map(str::to_string),
                second_dialect: d2_spec.map(str::to_string),
            };
            let expected = match (pairing, kind.measure().boolean()) {
                (Pairing::SameStream, Some(op)) => ideals::same_stream_expected(class, op, m, n),
                _ => ideals::expected(class, kind.measure(), Some(m), n),
            };
            let mut disagreement = None;
            let measured = (|| -> Result<Expected> {
                let d1 = dialect_witness(witness, class, m, d1_spec)?;
                let d2 = dialect_witness(witness, class, n, d2_spec)?;
                Ok(match kind {
                    CheckKind::Product => count(concat_epsilon(&d1, &d2)?.state_count()),
                    CheckKind::ProductRedirect => {
                        let redirected = minimize(&concat_ideal_redirect(&d1, &d2)?);
                        if redirected != concat_epsilon(&d1, &d2)? {
                            disagreement = Some(
                                "redirect and epsilon-NFA products accept different languages"
                                    .to_string(),
                            );
                        }
                        count(redirected.state_count())
                    }
                    CheckKind::Boolean(op) => count(complexity(&boolean_product(&d1, &d2, op)?)),
                    _ => unreachable!("unary kinds are not binary tasks"),
                })
            })();
            vec![record(
                config,
                kind,
                params,
                expected,
                measured,
                disagreement,
                started,
            )]
        }
    }
}

fn atom_records(
    config: &VerifyConfig,
    witness: &WitnessFn,
    n: usize,
    started: Instant,
) -> Vec<CheckRecord> {
    let class = config.class;
    let kind = CheckKind::AtomComplexity;
    let base = Params {
        m: None,
        n,
        subset: None,
        pairing: None,
        dialect: None,
        second_dialect: None,
    };
    let atoms = witness(class, n).and_then(|d| enumerate_atoms(&minimize(&d)));
    match atoms {
        Err(e) => vec![record(
            config,
            kind,
            base,
            Err(Error::InvalidParameters("no atoms enumerated".into())),
            Err(e),
            None,
            started,
        )],
        Ok(atoms) => atoms
            .into_iter()
            .map(|atom| {
                let params = Params {
                    subset: Some(atom.subset.to_one_based()),
                    ..base.clone()
                };
                let expected = atom_bound_formula(class, n, &atom.subset).map(Expected::Count);
                record(
                    config,
                    kind,
                    params,
                    expected,
                    Ok(count(atom.complexity)),
                    None,
                    started,
                )
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_right_grid_passes() {
        let config = VerifyConfig {
            n_range: 3..=4,
            mn_range: Some(3..=4),
            ..VerifyConfig::for_class(IdealClass::Right)
        };
        let report = verify(&config).unwrap();
        let failures: Vec<_> = report.failures().collect();
        assert!(failures.is_empty(), "{failures:#?}");
        assert_eq!(report.exit_code(), 0);
    }

    #[test]
    fn invalid_range() {
        let config = VerifyConfig {
            n_range: 3..=5,
            ..VerifyConfig::for_class(IdealClass::Left)
        };
        assert!(verify(&config).is_err());
    }

    #[test]
    fn cap_overflow_is_exit_three() {
        let config = VerifyConfig {
            n_range: 4..=4,
            mn_range: None,
            cap: Some(10),
            ..VerifyConfig::for_class(IdealClass::Right)
        };
        let report = verify(&config).unwrap();
        assert_eq!(report.exit_code(), 3);
        let sg = report
            .checks
            .iter()
            .find(|r| r.measure == "semigroup")
            .unwrap();
        assert!(!sg.pass);
        assert!(sg.error.as_deref().unwrap().contains("cap"));
    }

    #[test]
    fn renderings() {
        let config = VerifyConfig {
            n_range: 3..=3,
            mn_range: None,
            ..VerifyConfig::for_class(IdealClass::Right)
        };
        let report = verify(&config).unwrap();
        let csv = report.to_csv();
        assert!(csv.starts_with("class,measure,params,expected,measured,pass,ms\n"));
        assert_eq!(csv.lines().count(), report.checks.len() + 1);
        assert!(csv.contains("right,semigroup,n=3,9,9,true,"));
        let md = report.to_markdown();
        assert!(md.contains("| right | star | dialect=a,-,-,d;n=3 | 4 | 4 | true |  |"));
    }
}
