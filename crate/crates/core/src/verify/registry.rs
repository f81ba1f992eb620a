//! The identity registry: a versioned TOML file with one `[[identity]]` record
//! per checked evaluation.
//!
//! ```toml
//! version = 1
//! topics = ["Ls_n(pi) table", ...]
//!
//! [[identity]]
//! id = "ls-pi-n4"
//! kind = "exact_vs_oracle"
//! anchor = "Ls_n(pi) table"
//! tags = ["section-2", "logsine"]
//! lhs = { eval = "ls_numeric", n = 4, sigma = "1" }
//! rhs = { eval = "closed", family = "ls_pi_recursive", n = 4 }
//! tolerance = { offset = 5, floor = 1e-18 }   # optional
//! max_digits = 12                             # optional
//! ```
//!
//! `kind` is one of `exact_vs_oracle`, `oracle_vs_oracle`, `symbolic`,
//! `inequality` (`lhs <= rhs`), `refuted_expected` (passes when the sides differ by at
//! least `min_gap`) and `conjecture` (only run on request).

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::eval::Evaluator;
use crate::error::{Error, Result};

pub const REGISTRY_VERSION: u32 = 1;

const BUILTIN: &str = include_str!("../../data/registry.toml");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityKind {
    ExactVsOracle,
    OracleVsOracle,
    Symbolic,
    Inequality,
    RefutedExpected,
    Conjecture,
}

/// Absolute tolerance `max(10^-(digits - offset), floor)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TolerancePolicy {
    #[serde(default = "default_offset")]
    pub offset: u32,
    #[serde(default)]
    pub floor: Option<f64>,
}

fn default_offset() -> u32 {
    5
}

impl Default for TolerancePolicy {
    fn default() -> Self {
        TolerancePolicy { offset: default_offset(), floor: None }
    }
}

impl TolerancePolicy {
    pub fn tolerance(&self, digits: u32) -> f64 {
        let e = digits.saturating_sub(self.offset).max(1) as i32;
        let t = 10f64.powi(-e);
        match self.floor {
            Some(f) if f > t => f,
            _ => t,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Identity {
    pub id: String,
    pub kind: IdentityKind,
    pub anchor: String,
    #[serde(default)]
    pub tags: Vec<String>,
    pub lhs: Evaluator,
    pub rhs: Evaluator,
    #[serde(default)]
    pub tolerance: TolerancePolicy,
    /// Evaluate at no more than this many digits (for slow oracles).
    #[serde(default)]
    pub max_digits: Option<u32>,
    /// For `refuted_expected`: the smallest difference that counts as a refutation.
    #[serde(default)]
    pub min_gap: Option<f64>,
}

impl Identity {
    pub fn matches(&self, filter: &str) -> bool {
        filter == "all" || self.id == filter || self.tags.iter().any(|t| t == filter)
    }

    pub fn is_conjecture(&self) -> bool {
        self.kind == IdentityKind::Conjecture
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Registry {
    pub version: u32,
    /// Every anchor an identity may cite; each must be covered by at least one identity.
    pub topics: Vec<String>,
    #[serde(rename = "identity")]
    pub identities: Vec<Identity>,
}

impl Registry {
    pub fn builtin() -> Result<Registry> {
        Registry::from_toml_str(BUILTIN)
    }

    pub fn from_toml_str(s: &str) -> Result<Registry> {
        let r: Registry = toml::from_str(s).map_err(|e| Error::Registry(e.to_string()))?;
        r.validate()?;
        Ok(r)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Registry(e.to_string()))
    }

    fn validate(&self) -> Result<()> {
        if self.version != REGISTRY_VERSION {
            return Err(Error::Registry(format!(
                "registry version {} is not supported (expected {REGISTRY_VERSION})",
                self.version
            )));
        }
        let topics: BTreeSet<&str> = self.topics.iter().map(String::as_str).collect();
        let mut seen = BTreeSet::new();
        for i in &self.identities {
            if !seen.insert(i.id.as_str()) {
                return Err(Error::Registry(format!("duplicate identity id `{}`", i.id)));
            }
            if !topics.contains(i.anchor.as_str()) {
                return Err(Error::Registry(format!("identity `{}` cites unknown anchor `{}`", i.id, i.anchor)));
            }
            if i.kind == IdentityKind::RefutedExpected && i.min_gap.is_none() {
                return Err(Error::Registry(format!("identity `{}` needs min_gap", i.id)));
            }
        }
        Ok(())
    }

    pub fn get(&self, id: &str) -> Result<&Identity> {
        self.identities.iter().find(|i| i.id == id).ok_or_else(|| Error::UnknownIdentity(id.to_string()))
    }

    /// Topics no identity cites.
    pub fn uncovered_topics(&self) -> Vec<&str> {
        self.topics.iter().filter(|t| !self.identities.iter().any(|i| &i.anchor == *t)).map(String::as_str).collect()
    }

    /// `(id, anchor)` pairs, sorted by id.
    pub fn cross_reference(&self) -> Vec<(&str, &str)> {
        let mut v: Vec<(&str, &str)> = self.identities.iter().map(|i| (i.id.as_str(), i.anchor.as_str())).collect();
        v.sort();
        v
    }
}
