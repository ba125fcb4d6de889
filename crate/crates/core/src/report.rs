//! Outcomes of property-suite runs.

use std::fmt::Write as _;

use serde_json::json;

use crate::interval::Interval;
use crate::pwl::PiecewiseFn;
use crate::rational::{self, Rational};

/// A law input. Witnesses store these so a failing case can be replayed.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Function(PiecewiseFn),
    Interval(Interval),
    Scalar(Rational),
}

impl Value {
    pub fn function(&self) -> &PiecewiseFn {
        match self {
            Value::Function(f) => f,
            other => panic!("expected a function input, got {other:?}"),
        }
    }

    pub fn interval(&self) -> &Interval {
        match self {
            Value::Interval(x) => x,
            other => panic!("expected an interval input, got {other:?}"),
        }
    }

    pub fn scalar(&self) -> &Rational {
        match self {
            Value::Scalar(x) => x,
            other => panic!("expected a scalar input, got {other:?}"),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Value::Function(_) => "function",
            Value::Interval(_) => "interval",
            Value::Scalar(_) => "scalar",
        }
    }
}

/// What a suite expects of a law. `Violated` laws encode counter-claims:
/// they pass by producing a witness. `Observed` laws are reported only.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expect {
    Holds,
    Violated,
    Observed,
}

impl Expect {
    pub fn as_str(self) -> &'static str {
        match self {
            Expect::Holds => "holds",
            Expect::Violated => "violated",
            Expect::Observed => "observed",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub case: usize,
    pub inputs: Vec<(String, Value)>,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LawResult {
    pub id: String,
    pub expect: Expect,
    /// Cases whose premise held.
    pub checks: usize,
    pub violations: usize,
    /// Lowest-indexed violating case.
    pub witness: Option<Witness>,
}

impl LawResult {
    pub fn passed(&self) -> bool {
        match self.expect {
            Expect::Holds => self.violations == 0,
            Expect::Violated => self.witness.is_some(),
            Expect::Observed => true,
        }
    }

    pub fn held(&self) -> bool {
        self.violations == 0
    }

    fn status(&self) -> &'static str {
        match (self.expect, self.passed()) {
            (Expect::Observed, _) => "INFO",
            (_, true) => "PASS",
            (_, false) => "FAIL",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PropertyReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    /// Generator settings, recorded for auditability.
    pub generator: Option<String>,
    pub laws: Vec<LawResult>,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(LawResult::passed)
    }

    pub fn failures(&self) -> Vec<&LawResult> {
        self.laws.iter().filter(|l| !l.passed()).collect()
    }

    pub fn law(&self, id: &str) -> Option<&LawResult> {
        self.laws.iter().find(|l| l.id == id)
    }

    /// One line per law. `witness_ref` names where a witness was persisted;
    /// when it returns `None` the witness is printed inline on the next line.
    pub fn render_text(&self, witness_ref: impl Fn(&LawResult) -> Option<String>) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "suite {} seed={} trials={}", self.suite, self.seed, self.trials);
        if let Some(g) = &self.generator {
            let _ = writeln!(out, "generator {g}");
        }
        for law in &self.laws {
            let outcome = if law.held() { "held" } else { "violated" };
            let _ = write!(
                out,
                "{} {} expect={} outcome={} checks={} violations={}",
                law.id,
                law.status(),
                law.expect.as_str(),
                outcome,
                law.checks,
                law.violations
            );
            match (&law.witness, witness_ref(law)) {
                (None, _) => {
                    let _ = writeln!(out, " witness=-");
                }
                (Some(_), Some(path)) => {
                    let _ = writeln!(out, " witness={path}");
                }
                (Some(w), None) => {
                    let _ = writeln!(out, " witness=inline");
                    let _ = writeln!(out, "  {}", witness_json(self, law, w));
                }
            }
        }
        let _ = writeln!(out, "result {}", if self.passed() { "PASS" } else { "FAIL" });
        out
    }

    /// JSON-lines rendering: a header object, one object per law with its
    /// witness inline, and a result object.
    pub fn render_jsonl(&self) -> String {
        let mut out = String::new();
        let header = json!({
            "suite": self.suite,
            "seed": self.seed,
            "trials": self.trials,
            "generator": self.generator,
        });
        let _ = writeln!(out, "{header}");
        for law in &self.laws {
            let line = json!({
                "law": law.id,
                "status": law.status(),
                "expect": law.expect.as_str(),
                "checks": law.checks,
                "violations": law.violations,
                "witness": law.witness.as_ref().map(|w| witness_json(self, law, w)),
            });
            let _ = writeln!(out, "{line}");
        }
        let _ = writeln!(out, "{}", json!({ "result": if self.passed() { "PASS" } else { "FAIL" } }));
        out
    }
}

/// Replayable JSON form of a witness.
pub fn witness_json(report: &PropertyReport, law: &LawResult, w: &Witness) -> serde_json::Value {
    let inputs: Vec<serde_json::Value> = w
        .inputs
        .iter()
        .map(|(name, v)| match v {
            Value::Function(f) => json!({ "name": name, "function": crate::doc::to_json(name, f) }),
            Value::Interval(x) => json!({ "name": name, "interval": x.to_string() }),
            Value::Scalar(s) => json!({ "name": name, "scalar": rational::fmt(s) }),
        })
        .collect();
    json!({
        "suite": report.suite,
        "law": law.id,
        "seed": report.seed,
        "case": w.case,
        "inputs": inputs,
        "expected": w.expected,
        "actual": w.actual,
    })
}
