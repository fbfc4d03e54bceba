//! Structured results of the sampled checkers.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

/// Outcome of one property evaluated over a batch of samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub name: String,
    pub samples: usize,
    #[serde(serialize_with = "ser_residual", deserialize_with = "de_residual")]
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// The worst failing instance, if any.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub title: String,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl Report {
    pub fn new(title: impl Into<String>, seed: u64) -> Self {
        Report { title: title.into(), seed, checks: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn max_residual(&self) -> f64 {
        self.checks.iter().map(|c| c.max_residual).fold(0.0, f64::max)
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Appends the checks of `other`, prefixing their names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut c in other.checks {
            c.name = format!("{prefix}: {}", c.name);
            self.checks.push(c);
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} (seed {})", self.title, self.seed)?;
        for c in &self.checks {
            writeln!(
                f,
                "  {}  {:<48} samples={:<6} max_residual={:.3e} tol={:.1e}",
                if c.passed { "PASS" } else { "FAIL" },
                c.name,
                c.samples,
                c.max_residual,
                c.tolerance
            )?;
            if let (false, Some(w)) = (c.passed, &c.witness) {
                writeln!(f, "        witness: {w}")?;
            }
        }
        write!(f, "{}", if self.passed() { "result: pass" } else { "result: FAIL" })
    }
}

fn ser_residual<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
    if x.is_finite() {
        s.serialize_f64(*x)
    } else if x.is_nan() {
        s.serialize_str("nan")
    } else {
        s.serialize_str("inf")
    }
}

fn de_residual<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }
    match Repr::deserialize(d)? {
        Repr::Num(x) => Ok(x),
        Repr::Text(t) if t == "inf" => Ok(f64::INFINITY),
        Repr::Text(t) if t == "nan" => Ok(f64::NAN),
        Repr::Text(t) => Err(serde::de::Error::custom(format!("bad residual {t:?}"))),
    }
}

/// Running maximum of a residual over samples, remembering the worst failure.
pub(crate) struct Tally {
    name: String,
    tolerance: f64,
    samples: usize,
    max: f64,
    witness: Option<Value>,
}

impl Tally {
    pub(crate) fn new(name: impl Into<String>, tolerance: f64) -> Self {
        Tally { name: name.into(), tolerance, samples: 0, max: 0.0, witness: None }
    }

    pub(crate) fn record(&mut self, residual: f64, witness: impl FnOnce() -> Value) {
        let r = if residual.is_nan() { f64::INFINITY } else { residual };
        self.samples += 1;
        if r > self.max {
            self.max = r;
            if r > self.tolerance {
                self.witness = Some(witness());
            }
        }
    }

    pub(crate) fn finish(self) -> CheckResult {
        CheckResult {
            passed: self.max <= self.tolerance,
            name: self.name,
            samples: self.samples,
            max_residual: self.max,
            tolerance: self.tolerance,
            witness: self.witness,
        }
    }
}
