//! Variable names and category labels.
//!
//! The schema file is JSON:
//!
//! ```json
//! {"variables": [
//!   {"name": "sex", "categories": ["male", "female"]},
//!   {"name": "age"}
//! ]}
//! ```
//!
//! A bare list of names is also accepted. Variables with listed categories
//! are closed: any other label is an error. Variables without a list get
//! 1-based levels in order of first appearance in the data.

use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use swapsafe_core::{Cell, Schema, VarSet};

use crate::error::{AppError, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VariableSpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub categories: Option<Vec<String>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum SchemaFile {
    Full { variables: Vec<VariableSpec> },
    Names(Vec<String>),
}

#[derive(Debug, Clone)]
struct Variable {
    name: String,
    labels: Vec<String>,
    index: HashMap<String, u32>,
    closed: bool,
}

impl Variable {
    fn push(&mut self, label: &str) -> u32 {
        self.labels.push(label.to_owned());
        let level = self.labels.len() as u32;
        self.index.insert(label.to_owned(), level);
        level
    }
}

#[derive(Debug, Clone)]
pub struct Codebook {
    vars: Vec<Variable>,
}

impl Codebook {
    pub fn new(specs: Vec<VariableSpec>) -> Result<Self> {
        if specs.is_empty() {
            return Err(AppError::Config("schema lists no variables".into()));
        }
        let mut vars: Vec<Variable> = Vec::with_capacity(specs.len());
        for spec in specs {
            if vars.iter().any(|v| v.name == spec.name) {
                return Err(AppError::Config(format!(
                    "duplicate variable {:?}",
                    spec.name
                )));
            }
            let mut var = Variable {
                name: spec.name,
                labels: Vec::new(),
                index: HashMap::new(),
                closed: spec.categories.is_some(),
            };
            for label in spec.categories.unwrap_or_default() {
                if var.index.contains_key(&label) {
                    return Err(AppError::Config(format!(
                        "variable {:?} lists category {label:?} twice",
                        var.name
                    )));
                }
                var.push(&label);
            }
            if var.closed && var.labels.is_empty() {
                return Err(AppError::Config(format!(
                    "variable {:?} has no categories",
                    var.name
                )));
            }
            vars.push(var);
        }
        Ok(Codebook { vars })
    }

    pub fn from_names<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        Codebook::new(
            names
                .into_iter()
                .map(|n| VariableSpec {
                    name: n.into(),
                    categories: None,
                })
                .collect(),
        )
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: SchemaFile = serde_json::from_str(text).map_err(|source| AppError::Json {
            what: "schema".into(),
            source,
        })?;
        match file {
            SchemaFile::Full { variables } => Codebook::new(variables),
            SchemaFile::Names(names) => Codebook::from_names(names),
        }
    }

    /// All labels seen so far, pinned in their current order.
    pub fn to_json(&self) -> String {
        let specs: Vec<VariableSpec> = self
            .vars
            .iter()
            .map(|v| VariableSpec {
                name: v.name.clone(),
                categories: Some(v.labels.clone()),
            })
            .collect();
        let value = serde_json::json!({ "variables": specs });
        serde_json::to_string_pretty(&value).expect("codebook serializes")
    }

    pub fn k(&self) -> usize {
        self.vars.len()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.vars.iter().map(|v| v.name.as_str())
    }

    pub fn name(&self, var: usize) -> &str {
        &self.vars[var].name
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v.name == name)
    }

    pub fn labels(&self, var: usize) -> &[String] {
        &self.vars[var].labels
    }

    pub fn level(&self, var: usize, label: &str) -> Option<u32> {
        self.vars[var].index.get(label).copied()
    }

    /// Level of `label`, registering it if the variable is open.
    pub(crate) fn intern(&mut self, var: usize, label: &str) -> Option<u32> {
        let v = &mut self.vars[var];
        match v.index.get(label) {
            Some(&level) => Some(level),
            None if v.closed => None,
            None => Some(v.push(label)),
        }
    }

    pub fn label(&self, var: usize, level: u32) -> &str {
        &self.vars[var].labels[level as usize - 1]
    }

    pub fn cell_labels(&self, cell: &Cell) -> Vec<String> {
        cell.coords()
            .iter()
            .enumerate()
            .map(|(m, &l)| self.label(m, l).to_owned())
            .collect()
    }

    pub fn var_names(&self, set: VarSet) -> Vec<String> {
        set.iter().map(|m| self.name(m).to_owned()).collect()
    }

    /// Core schema with one level per known label.
    pub fn schema(&self) -> Result<Arc<Schema>> {
        let names = self.vars.iter().map(|v| v.name.clone()).collect();
        let levels = self.vars.iter().map(|v| v.labels.len() as u32).collect();
        Ok(Arc::new(Schema::new(names, levels)?))
    }

    /// Resolves a variable given by name or 1-based position.
    pub fn resolve_var(&self, token: &str) -> Result<usize> {
        let token = token.trim();
        if let Some(m) = self.index_of(token) {
            return Ok(m);
        }
        match token.parse::<usize>() {
            Ok(n) if (1..=self.k()).contains(&n) => Ok(n - 1),
            _ => Err(AppError::Config(format!("unknown variable {token:?}"))),
        }
    }

    /// Comma-separated variable list, e.g. `age,occupation` or `2,3`.
    pub fn parse_vars(&self, text: &str) -> Result<VarSet> {
        let mut set = VarSet::EMPTY;
        for token in text.split(',').filter(|t| !t.trim().is_empty()) {
            set.insert(self.resolve_var(token)?);
        }
        if set.is_empty() {
            return Err(AppError::Config("empty variable list".into()));
        }
        Ok(set)
    }
}
