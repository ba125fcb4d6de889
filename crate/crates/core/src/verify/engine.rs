//! Law evaluation: each law draws (or enumerates) its inputs per case and
//! checks them. Cases run in parallel; results are gathered in case order
//! so a report depends only on the seed and the case count.

use std::fmt::Display;

use rayon::prelude::*;

use crate::error::Result;
use crate::report::{Expect, LawResult, PropertyReport, Value, Witness};
use crate::verify::generator::{Generator, GeneratorConfig};

#[derive(Clone, Debug, PartialEq)]
pub enum Verdict {
    Holds,
    /// The law's premise did not hold for these inputs.
    Vacuous,
    Mismatch { expected: String, actual: String },
}

impl Verdict {
    pub fn eq<T: PartialEq + Display>(expected: &T, actual: &T) -> Verdict {
        if expected == actual {
            Verdict::Holds
        } else {
            Verdict::Mismatch { expected: expected.to_string(), actual: actual.to_string() }
        }
    }

    pub fn truth(cond: bool, claim: impl Into<String>) -> Verdict {
        if cond {
            Verdict::Holds
        } else {
            Verdict::Mismatch { expected: claim.into(), actual: "false".into() }
        }
    }

    /// First non-holding verdict, else `Holds`.
    pub fn all(verdicts: impl IntoIterator<Item = Verdict>) -> Verdict {
        verdicts.into_iter().find(|v| *v != Verdict::Holds).unwrap_or(Verdict::Holds)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cases {
    /// One random draw per trial.
    Random,
    /// A fixed enumeration; the case index selects the tuple.
    Exhaustive(usize),
}

type InputFn = dyn Fn(&mut Generator, usize) -> Vec<Value> + Send + Sync;
type CheckFn = dyn Fn(&[Value]) -> Result<Verdict> + Send + Sync;

pub struct Law {
    pub id: String,
    pub expect: Expect,
    pub names: Vec<&'static str>,
    pub cases: Cases,
    input: Box<InputFn>,
    check: Box<CheckFn>,
}

impl Law {
    pub fn new(
        id: impl Into<String>,
        expect: Expect,
        names: &[&'static str],
        cases: Cases,
        input: impl Fn(&mut Generator, usize) -> Vec<Value> + Send + Sync + 'static,
        check: impl Fn(&[Value]) -> Result<Verdict> + Send + Sync + 'static,
    ) -> Self {
        Law {
            id: id.into(),
            expect,
            names: names.to_vec(),
            cases,
            input: Box::new(input),
            check: Box::new(check),
        }
    }

    /// Evaluates the law on explicit inputs; errors count as mismatches.
    pub fn evaluate(&self, inputs: &[Value]) -> Verdict {
        match (self.check)(inputs) {
            Ok(v) => v,
            Err(e) => Verdict::Mismatch { expected: "no error".into(), actual: format!("error: {e}") },
        }
    }

    pub fn draw(&self, cfg: &GeneratorConfig, case: usize) -> Vec<Value> {
        let mut gen = Generator::with_stream(cfg.clone(), case_seed(cfg.seed, &self.id, case));
        (self.input)(&mut gen, case)
    }

    fn case_count(&self, trials: usize) -> usize {
        match self.cases {
            Cases::Random => trials,
            Cases::Exhaustive(n) => n,
        }
    }

    pub fn run(&self, cfg: &GeneratorConfig, trials: usize) -> LawResult {
        let outcomes: Vec<(usize, Verdict, Option<Vec<Value>>)> = (0..self.case_count(trials))
            .into_par_iter()
            .filter_map(|case| {
                let inputs = self.draw(cfg, case);
                match self.evaluate(&inputs) {
                    Verdict::Holds => None,
                    v @ Verdict::Vacuous => Some((case, v, None)),
                    v => Some((case, v, Some(inputs))),
                }
            })
            .collect();
        let vacuous = outcomes.iter().filter(|(_, v, _)| *v == Verdict::Vacuous).count();
        let mut violations = outcomes.into_iter().filter(|(_, v, _)| *v != Verdict::Vacuous);
        let first = violations.next();
        let count = first.is_some() as usize + violations.count();
        let witness = first.map(|(case, verdict, inputs)| {
            let Verdict::Mismatch { expected, actual } = verdict else { unreachable!() };
            Witness {
                case,
                inputs: self
                    .names
                    .iter()
                    .map(|n| n.to_string())
                    .zip(inputs.expect("kept for mismatches"))
                    .collect(),
                expected,
                actual,
            }
        });
        LawResult {
            id: self.id.clone(),
            expect: self.expect,
            checks: self.case_count(trials) - vacuous,
            violations: count,
            witness,
        }
    }
}

pub struct Suite {
    pub name: String,
    /// Whether the suite draws random inputs (and so depends on seed and trials).
    pub randomized: bool,
    pub laws: Vec<Law>,
}

impl Suite {
    pub fn run(&self, cfg: &GeneratorConfig, trials: usize) -> PropertyReport {
        PropertyReport {
            suite: self.name.clone(),
            seed: cfg.seed,
            trials,
            generator: self.randomized.then(|| cfg.describe()),
            laws: self.laws.iter().map(|law| law.run(cfg, trials)).collect(),
        }
    }

    pub fn law(&self, id: &str) -> Option<&Law> {
        self.laws.iter().find(|l| l.id == id)
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Per-case stream seed; stable across law reordering.
fn case_seed(seed: u64, law: &str, case: usize) -> u64 {
    let id_hash = law.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x100_0000_01b3));
    splitmix(splitmix(seed ^ id_hash) ^ case as u64)
}

/// Decodes a case index into a tuple of indices below `base`.
pub fn tuple_index(mut case: usize, base: usize, arity: usize) -> Vec<usize> {
    let mut out = vec![0; arity];
    for slot in out.iter_mut().rev() {
        *slot = case % base;
        case /= base;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational;

    fn toy(expect: Expect, fail_on: usize) -> Law {
        Law::new(
            "toy",
            expect,
            &["n"],
            Cases::Exhaustive(10),
            |_, case| vec![Value::Scalar(rational::int(case as i64))],
            move |v| {
                let n = v[0].scalar().clone();
                Ok(if n == rational::int(3) {
                    Verdict::Vacuous
                } else {
                    Verdict::truth(n < rational::int(fail_on as i64), "small")
                })
            },
        )
    }

    #[test]
    fn counts_and_first_witness() {
        let r = toy(Expect::Holds, 6).run(&GeneratorConfig::default(), 0);
        assert_eq!(r.checks, 9);
        assert_eq!(r.violations, 4);
        let w = r.witness.unwrap();
        assert_eq!(w.case, 6);
        assert_eq!(w.inputs[0].0, "n");
        let r = toy(Expect::Holds, 100).run(&GeneratorConfig::default(), 0);
        assert!(r.passed());
    }

    #[test]
    fn tuple_decoding() {
        assert_eq!(tuple_index(0, 5, 3), vec![0, 0, 0]);
        assert_eq!(tuple_index(7, 5, 2), vec![1, 2]);
        assert_eq!(tuple_index(124, 5, 3), vec![4, 4, 4]);
    }

    #[test]
    fn case_seeds_differ_by_law_and_case() {
        assert_ne!(case_seed(1, "a", 0), case_seed(1, "b", 0));
        assert_ne!(case_seed(1, "a", 0), case_seed(1, "a", 1));
        assert_eq!(case_seed(1, "a", 5), case_seed(1, "a", 5));
    }
}
