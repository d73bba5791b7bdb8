// SPDX-License-Identifier: Apache-2.0

use serde::Serialize;

use crate::riesz::RieszVector;

/// One named pass/fail check; failures carry a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<RieszVector>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub checks: Vec<Check>,
}

impl CheckReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pass(&mut self, name: &str) -> &mut Self {
        self.checks.push(Check { name: name.into(), passed: true, witness: None, note: None });
        self
    }

    pub fn pass_with_note(&mut self, name: &str, note: impl Into<String>) -> &mut Self {
        self.checks.push(Check { name: name.into(), passed: true, witness: None, note: Some(note.into()) });
        self
    }

    pub fn fail(&mut self, name: &str, witness: RieszVector, note: impl Into<String>) -> &mut Self {
        self.checks.push(Check { name: name.into(), passed: false, witness: Some(witness), note: Some(note.into()) });
        self
    }

    /// Records `name` as passed when `witness` is `None`.
    pub fn record(&mut self, name: &str, witness: Option<(RieszVector, String)>) -> &mut Self {
        match witness {
            None => self.pass(name),
            Some((w, note)) => self.fail(name, w, note),
        }
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}
