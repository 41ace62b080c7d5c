//! Machine-readable reports. Variable sets are lists of names and cells are
//! lists of category labels.

use serde::Serialize;
use swapsafe_core::swap::MarginalCheck;
use swapsafe_core::{Cell, SeparatorDecomposition, SwapWitness, VarSet};

use crate::codebook::Codebook;

#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_set: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub components: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub separator: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_alpha: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_beta: Option<Vec<String>>,
    #[serde(rename = "E", skip_serializing_if = "Option::is_none")]
    pub swap_vars: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cells_before: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cells_after: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub marginal_checks: Option<Vec<MarginalEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<Vec<WitnessEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub separators: Option<Vec<SeparatorEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uniques: Option<Vec<UniqueEntry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub move_check: Option<MoveEntry>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub markov_note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notices: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MarginalEntry {
    pub vars: Vec<String>,
    pub preserved: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessEntry {
    pub separator: Vec<String>,
    pub gamma_alpha: Vec<String>,
    pub gamma_beta: Vec<String>,
    #[serde(rename = "E")]
    pub swap_vars: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partner: Option<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SeparatorEntry {
    pub separator: Vec<String>,
    pub components: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct UniqueEntry {
    pub row: usize,
    pub cell: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleEntry {
    pub found: bool,
    #[serde(rename = "E", skip_serializing_if = "Option::is_none")]
    pub swap_vars: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub partner: Option<Vec<String>>,
    pub agrees: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct MoveEntry {
    pub is_move: bool,
    pub matches_difference: bool,
    pub degree: u64,
}

/// Formatting helpers bound to one codebook.
pub struct Names<'a>(pub &'a Codebook);

impl Names<'_> {
    pub fn set(&self, s: VarSet) -> Vec<String> {
        self.0.var_names(s)
    }

    pub fn sets(&self, sets: &[VarSet]) -> Vec<Vec<String>> {
        sets.iter().map(|&s| self.set(s)).collect()
    }

    pub fn cell(&self, c: &Cell) -> Vec<String> {
        self.0.cell_labels(c)
    }

    pub fn cells<'c>(&self, cells: impl IntoIterator<Item = &'c Cell>) -> Vec<Vec<String>> {
        cells.into_iter().map(|c| self.cell(c)).collect()
    }

    pub fn checks(&self, checks: &[MarginalCheck]) -> Vec<MarginalEntry> {
        checks
            .iter()
            .map(|c| MarginalEntry {
                vars: self.set(c.vars),
                preserved: c.preserved,
            })
            .collect()
    }

    pub fn witness(&self, w: &SwapWitness, partner: Option<&Cell>) -> WitnessEntry {
        WitnessEntry {
            separator: self.set(w.separator),
            gamma_alpha: self.set(w.gamma_alpha),
            gamma_beta: self.set(w.gamma_beta),
            swap_vars: self.set(w.swap_vars),
            partner: partner.map(|c| self.cell(c)),
        }
    }

    pub fn separator(&self, d: &SeparatorDecomposition) -> SeparatorEntry {
        SeparatorEntry {
            separator: self.set(d.separator),
            components: self.sets(&d.components),
        }
    }

    /// `{age, occupation}`.
    pub fn brace(&self, s: VarSet) -> String {
        format!("{{{}}}", self.set(s).join(", "))
    }

    /// `(male, 55, nurse, Tokyo)`.
    pub fn tuple(&self, c: &Cell) -> String {
        format!("({})", self.cell(c).join(", "))
    }
}
