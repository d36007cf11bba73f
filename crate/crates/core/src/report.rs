//! Verification reports shared by the lemma checkers and the CLI.

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub lemma: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(lemma: &str, seed: Option<u64>) -> Self {
        Self { lemma: lemma.to_string(), seed, pass: true, checks: Vec::new() }
    }

    pub fn push(&mut self, name: impl Into<String>, pass: bool, witness: Value) {
        self.pass &= pass;
        self.checks.push(Check { name: name.into(), pass, witness });
    }

    /// Appends another report's checks under a name prefix.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for c in other.checks {
            self.push(format!("{prefix}/{}", c.name), c.pass, c.witness);
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}
