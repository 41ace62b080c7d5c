//! Generating-class and move files.

use serde::Deserialize;
use swapsafe_core::{Cell, GeneratingClass, Move, Normalized, Schema, VarSet};

use std::sync::Arc;

use crate::codebook::Codebook;
use crate::error::{AppError, Result};

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum VarRef {
    Index(usize),
    Name(String),
}

impl VarRef {
    fn resolve(&self, codebook: &Codebook) -> Result<usize> {
        match self {
            VarRef::Name(name) => codebook
                .index_of(name)
                .ok_or_else(|| AppError::Config(format!("unknown variable {name:?}"))),
            VarRef::Index(n) if (1..=codebook.k()).contains(n) => Ok(n - 1),
            VarRef::Index(n) => Err(AppError::Config(format!(
                "variable index {n} outside 1..={}",
                codebook.k()
            ))),
        }
    }
}

/// Parses a JSON list of variable lists, names or 1-based positions, e.g.
/// `[["age","occupation"],["sex"],[4]]`.
pub fn parse_margins(text: &str, codebook: &Codebook) -> Result<Normalized> {
    let raw: Vec<Vec<VarRef>> = serde_json::from_str(text).map_err(|source| AppError::Json {
        what: "generating class".into(),
        source,
    })?;
    let mut sets = Vec::with_capacity(raw.len());
    for member in &raw {
        let mut set = VarSet::EMPTY;
        for v in member {
            set.insert(v.resolve(codebook)?);
        }
        sets.push(set);
    }
    GeneratingClass::normalize(sets, VarSet::full(codebook.k()))
        .map_err(|e| AppError::Config(e.to_string()))
}

pub fn margins_to_json(class: &GeneratingClass, codebook: &Codebook) -> String {
    let sets: Vec<Vec<String>> = class
        .members()
        .iter()
        .map(|&d| codebook.var_names(d))
        .collect();
    serde_json::to_string(&sets).expect("margins serialize")
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum Coord {
    Level(u32),
    Label(String),
}

#[derive(Debug, Clone, Deserialize)]
struct MoveEntry {
    cell: Vec<Coord>,
    value: i64,
}

/// Parses `[{"cell": [..], "value": 1}, ..]`. Coordinates are labels or
/// 1-based levels.
pub fn parse_move(text: &str, codebook: &Codebook, schema: &Arc<Schema>) -> Result<Move> {
    let raw: Vec<MoveEntry> = serde_json::from_str(text).map_err(|source| AppError::Json {
        what: "move".into(),
        source,
    })?;
    let mut entries = Vec::with_capacity(raw.len());
    for e in raw {
        if e.cell.len() != codebook.k() {
            return Err(AppError::Config(format!(
                "move cell has {} coordinates, expected {}",
                e.cell.len(),
                codebook.k()
            )));
        }
        let coords = e
            .cell
            .iter()
            .enumerate()
            .map(|(m, c)| match c {
                Coord::Level(l) => Ok(*l),
                Coord::Label(s) => codebook.level(m, s).ok_or_else(|| {
                    AppError::Config(format!("unknown category {s:?} for {:?}", codebook.name(m)))
                }),
            })
            .collect::<Result<Vec<u32>>>()?;
        let cell = Cell::new(coords);
        schema
            .validate(&cell)
            .map_err(|e| AppError::Config(e.to_string()))?;
        entries.push((cell, e.value));
    }
    Move::new(schema.clone(), entries).map_err(|e| AppError::Config(e.to_string()))
}
