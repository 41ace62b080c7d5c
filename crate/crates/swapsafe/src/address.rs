//! Record and cell addresses on the command line.
//!
//! * `7` or `row:7`: data row 7 (1-based, header excluded);
//! * `idx:1,2,1`: a cell by 1-based level indices;
//! * `male,55,nurse,Tokyo` or `label:...`: a cell by category labels.
//!
//! A cell that holds several rows resolves to the lowest one.

use swapsafe_core::Cell;

use crate::codebook::Codebook;
use crate::data::Dataset;
use crate::error::{AppError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Address {
    Row(usize),
    Levels(Vec<u32>),
    Labels(Vec<String>),
}

impl Address {
    pub fn parse(text: &str) -> Result<Address> {
        let text = text.trim();
        let bad = || AppError::BadAddress(text.to_owned());
        let split = |s: &str| {
            s.split(',')
                .map(|t| t.trim().to_owned())
                .collect::<Vec<_>>()
        };
        if let Some(rest) = text.strip_prefix("row:") {
            return rest.trim().parse().map(Address::Row).map_err(|_| bad());
        }
        if let Some(rest) = text.strip_prefix("idx:") {
            return split(rest)
                .iter()
                .map(|t| t.parse::<u32>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map(Address::Levels)
                .map_err(|_| bad());
        }
        if let Some(rest) = text.strip_prefix("label:") {
            return Ok(Address::Labels(split(rest)));
        }
        if let Ok(n) = text.parse::<usize>() {
            return Ok(Address::Row(n));
        }
        if text.is_empty() {
            return Err(bad());
        }
        Ok(Address::Labels(split(text)))
    }
}

/// A resolved address: the cell, the row standing for it if any, and a
/// notice when the choice of row was not forced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Resolved {
    pub cell: Cell,
    pub row: Option<usize>,
    pub notice: Option<String>,
}

pub fn resolve(text: &str, codebook: &Codebook, data: &Dataset) -> Result<Resolved> {
    let cell = match Address::parse(text)? {
        Address::Row(n) => {
            let record = data
                .table
                .record(n)
                .ok_or_else(|| AppError::Usage(format!("no data row {n}")))?;
            return Ok(Resolved {
                cell: record.cell.clone(),
                row: Some(n),
                notice: None,
            });
        }
        Address::Levels(levels) => Cell::new(levels),
        Address::Labels(labels) => {
            if labels.len() != codebook.k() {
                return Err(AppError::Usage(format!(
                    "{text:?} has {} labels, expected {}",
                    labels.len(),
                    codebook.k()
                )));
            }
            let coords = labels
                .iter()
                .enumerate()
                .map(|(m, l)| {
                    codebook.level(m, l).ok_or_else(|| {
                        AppError::Usage(format!(
                            "unknown category {l:?} for {:?}",
                            codebook.name(m)
                        ))
                    })
                })
                .collect::<Result<Vec<u32>>>()?;
            Cell::new(coords)
        }
    };
    data.table
        .schema()
        .validate(&cell)
        .map_err(|e| AppError::Usage(e.to_string()))?;
    let rows = data.rows_in(&cell);
    let notice =
        (rows.len() > 1).then(|| format!("{text:?} matches rows {rows:?}; using row {}", rows[0]));
    Ok(Resolved {
        cell,
        row: rows.first().copied(),
        notice,
    })
}
