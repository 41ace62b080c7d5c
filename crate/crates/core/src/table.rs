//! Schemas, cells, microdata and sparse contingency tables.

use core::fmt;

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::varset::{VarSet, MAX_VARS};

/// Variable names and category counts `I_1..I_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schema {
    names: Vec<String>,
    levels: Vec<u32>,
}

impl Schema {
    pub fn new(names: Vec<String>, levels: Vec<u32>) -> Result<Self> {
        if names.len() != levels.len() {
            return Err(Error::SchemaShape {
                names: names.len(),
                levels: levels.len(),
            });
        }
        if names.is_empty() {
            return Err(Error::EmptySchema);
        }
        if names.len() > MAX_VARS {
            return Err(Error::TooManyVariables(names.len()));
        }
        if let Some(var) = levels.iter().position(|&l| l == 0) {
            return Err(Error::NoLevels { var });
        }
        for (n, name) in names.iter().enumerate() {
            if names[..n].contains(name) {
                return Err(Error::DuplicateName(name.clone()));
            }
        }
        Ok(Schema { names, levels })
    }

    /// Schema with generated names `x1..xk`.
    pub fn anonymous(levels: Vec<u32>) -> Result<Self> {
        let names = (1..=levels.len()).map(|n| alloc::format!("x{n}")).collect();
        Schema::new(names, levels)
    }

    pub fn k(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, var: usize) -> &str {
        &self.names[var]
    }

    pub fn levels(&self) -> &[u32] {
        &self.levels
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// The full variable set `Δ`.
    pub fn all_vars(&self) -> VarSet {
        VarSet::full(self.k())
    }

    /// Checks that `vars` is a nonempty subset of `Δ`.
    pub fn check_vars(&self, vars: VarSet) -> Result<()> {
        if vars.is_empty() {
            return Err(Error::EmptyVarSet);
        }
        if !vars.is_subset(self.all_vars()) {
            return Err(Error::NotSubset {
                set: vars,
                within: self.all_vars(),
            });
        }
        Ok(())
    }

    /// Validates a full-length cell.
    pub fn validate(&self, cell: &Cell) -> Result<()> {
        self.validate_over(self.all_vars(), cell)
    }

    /// Validates a marginal cell whose coordinates belong to `vars`, in
    /// ascending variable order.
    pub fn validate_over(&self, vars: VarSet, cell: &Cell) -> Result<()> {
        if cell.arity() != vars.len() {
            return Err(Error::CellArity {
                cell: cell.clone(),
                expected: vars.len(),
                found: cell.arity(),
            });
        }
        for (&level, var) in cell.coords().iter().zip(vars.iter()) {
            let levels = self.levels[var];
            if level == 0 || level > levels {
                return Err(Error::LevelOutOfRange {
                    cell: cell.clone(),
                    var,
                    level,
                    levels,
                });
            }
        }
        Ok(())
    }
}

/// A cell `i = (i_1, ..., i_k)` with 1-based levels.
///
/// The same type carries marginal cells `i_D`; their coordinates follow the
/// ascending order of `D`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cell(Vec<u32>);

impl Cell {
    pub fn new(coords: Vec<u32>) -> Self {
        Cell(coords)
    }

    pub fn coords(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, pos: usize) -> u32 {
        self.0[pos]
    }

    /// Coordinate positions at which `self` and `other` disagree.
    ///
    /// Both cells must have the same arity and at most [`MAX_VARS`]
    /// coordinates.
    pub fn differing(&self, other: &Cell) -> VarSet {
        debug_assert_eq!(self.arity(), other.arity());
        let mut bits = 0u64;
        for (n, (a, b)) in self.0.iter().zip(&other.0).enumerate() {
            if a != b {
                bits |= 1 << n;
            }
        }
        VarSet::from_bits(bits)
    }

    /// Restriction to the given coordinate positions.
    pub fn project(&self, positions: VarSet) -> Cell {
        Cell(positions.iter().map(|p| self.0[p]).collect())
    }

    /// `(self_E, other_{E^C})`: coordinates in `positions` from `self`,
    /// the rest from `other`.
    pub fn splice(&self, other: &Cell, positions: VarSet) -> Cell {
        Cell(
            self.0
                .iter()
                .zip(&other.0)
                .enumerate()
                .map(|(n, (&a, &b))| if positions.contains(n) { a } else { b })
                .collect(),
        )
    }
}

impl From<Vec<u32>> for Cell {
    fn from(v: Vec<u32>) -> Self {
        Cell(v)
    }
}

impl<const N: usize> From<[u32; N]> for Cell {
    fn from(v: [u32; N]) -> Self {
        Cell(v.to_vec())
    }
}

impl fmt::Debug for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (n, c) in self.0.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    pub id: usize,
    pub cell: Cell,
}

/// An `n x k` microdata set: records in their original order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MicrodataTable {
    schema: Arc<Schema>,
    records: Vec<Record>,
}

impl MicrodataTable {
    pub fn new(schema: Arc<Schema>, records: Vec<Record>) -> Result<Self> {
        let mut ids: Vec<usize> = Vec::with_capacity(records.len());
        for r in &records {
            schema.validate(&r.cell)?;
            ids.push(r.id);
        }
        ids.sort_unstable();
        if let Some(w) = ids.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateRecordId(w[0]));
        }
        Ok(MicrodataTable { schema, records })
    }

    /// Records numbered `1..=n` in iteration order.
    pub fn from_cells(schema: Arc<Schema>, cells: impl IntoIterator<Item = Cell>) -> Result<Self> {
        let records = cells
            .into_iter()
            .enumerate()
            .map(|(n, cell)| Record { id: n + 1, cell })
            .collect();
        MicrodataTable::new(schema, records)
    }

    pub fn schema(&self) -> &Arc<Schema> {
        &self.schema
    }

    pub fn records(&self) -> &[Record] {
        &self.records
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn record(&self, id: usize) -> Option<&Record> {
        self.records.iter().find(|r| r.id == id)
    }

    /// Lowest-ordinal record falling in `cell`.
    pub fn first_in_cell(&self, cell: &Cell) -> Option<&Record> {
        self.records.iter().find(|r| &r.cell == cell)
    }

    /// Forget record identities.
    pub fn to_contingency(&self) -> ContingencyTable {
        let mut counts = BTreeMap::new();
        for r in &self.records {
            *counts.entry(r.cell.clone()).or_insert(0u64) += 1;
        }
        ContingencyTable {
            vars: self.schema.all_vars(),
            schema: self.schema.clone(),
            total: self.records.len() as u64,
            counts,
        }
    }
}

/// Sparse cell counts over a set of variables of a schema.
///
/// A table built from microdata spans all of `Δ`; marginals span a subset
/// `D` and their cells list coordinates in ascending variable order. Zero
/// counts are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContingencyTable {
    schema: Arc<Schema>,
    vars: VarSet,
    counts: BTreeMap<Cell, u64>,
    total: u64,
}

impl ContingencyTable {
    /// Builds a full table from `(cell, count)` pairs. Repeated cells add up.
    pub fn from_counts(
        schema: Arc<Schema>,
        counts: impl IntoIterator<Item = (Cell, u64)>,
    ) -> Result<Self> {
        let vars = schema.all_vars();
        ContingencyTable::over(schema, vars, counts)
    }

    /// Builds a table over `vars` from `(marginal cell, count)` pairs.
    pub fn over(
        schema: Arc<Schema>,
        vars: VarSet,
        counts: impl IntoIterator<Item = (Cell, u64)>,
    ) -> Result<Self> {
        schema.check_vars(vars)?;
        let mut map = BTreeMap::new();
        let mut total = 0;
        for (cell, c) in counts {
            schema.validate_over(vars, &cell)?;
            if c > 0 {
                *map.entry(cell).or_insert(0) += c;
                total += c;
            }
        }
        Ok(ContingencyTable {
            schema,
            vars,
            counts: map,
            total,
        })
    }

    pub fn from_cells(schema: Arc<Schema>, cells: impl IntoIterator<Item = Cell>) -> Result<Self> {
        ContingencyTable::from_counts(schema, cells.into_iter().map(|c| (c, 1)))
    }

    pub fn schema(&self) -> &Arc<Schema> {
        &self.schema
    }

    pub fn vars(&self) -> VarSet {
        self.vars
    }

    /// Total count `n`.
    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn count(&self, cell: &Cell) -> u64 {
        self.counts.get(cell).copied().unwrap_or(0)
    }

    /// Number of occupied cells.
    pub fn support_len(&self) -> usize {
        self.counts.len()
    }

    /// Occupied cells in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (&Cell, u64)> + '_ {
        self.counts.iter().map(|(c, &n)| (c, n))
    }

    pub fn cells(&self) -> impl Iterator<Item = &Cell> + '_ {
        self.counts.keys()
    }

    /// Positions (within this table's cells) of the variables in `d`.
    pub fn positions_of(&self, d: VarSet) -> VarSet {
        if self.vars.bits() == VarSet::full(self.vars.len()).bits() {
            return d;
        }
        d.iter().map(|v| self.vars.rank(v)).collect()
    }

    /// Variables corresponding to cell positions.
    pub fn vars_at(&self, positions: VarSet) -> VarSet {
        if self.vars.bits() == VarSet::full(self.vars.len()).bits() {
            return positions;
        }
        let order = self.vars.to_vec();
        positions.iter().map(|p| order[p]).collect()
    }

    fn check_sub(&self, d: VarSet) -> Result<()> {
        if d.is_empty() {
            return Err(Error::EmptyVarSet);
        }
        if !d.is_subset(self.vars) {
            return Err(Error::NotSubset {
                set: d,
                within: self.vars,
            });
        }
        Ok(())
    }

    /// The `D`-marginal `n_D(i_D) = Σ_{i_{D^C}} n(i_D, i_{D^C})`.
    pub fn marginal(&self, d: VarSet) -> Result<ContingencyTable> {
        self.check_sub(d)?;
        if d == self.vars {
            return Ok(self.clone());
        }
        let pos = self.positions_of(d);
        let mut counts = BTreeMap::new();
        for (cell, n) in &self.counts {
            *counts.entry(cell.project(pos)).or_insert(0) += *n;
        }
        Ok(ContingencyTable {
            schema: self.schema.clone(),
            vars: d,
            counts,
            total: self.total,
        })
    }

    /// Cells with `n(i) = 1`, in lexicographic order.
    pub fn sample_uniques(&self) -> Vec<Cell> {
        self.counts
            .iter()
            .filter(|(_, &n)| n == 1)
            .map(|(c, _)| c.clone())
            .collect()
    }

    /// Slice of the `γ_{α,β} = γ_α ∪ γ_β ∪ S` marginal holding the cells
    /// that agree with `anchor` on `S` and disagree on both `γ_α` and `γ_β`.
    pub fn diagonal_subtable(
        &self,
        anchor: &Cell,
        separator: VarSet,
        gamma_alpha: VarSet,
        gamma_beta: VarSet,
    ) -> Result<DiagonalSubtable> {
        if gamma_alpha.is_empty() || gamma_beta.is_empty() {
            return Err(Error::EmptyVarSet);
        }
        for (a, b) in [
            (separator, gamma_alpha),
            (separator, gamma_beta),
            (gamma_alpha, gamma_beta),
        ] {
            if a.intersects(b) {
                return Err(Error::Overlapping(a, b));
            }
        }
        let span = separator.union(gamma_alpha).union(gamma_beta);
        self.check_sub(span)?;
        self.schema.validate_over(self.vars, anchor)?;

        let s = self.positions_of(separator);
        let ga = self.positions_of(gamma_alpha);
        let gb = self.positions_of(gamma_beta);
        let pos = self.positions_of(span);
        let mut entries = BTreeMap::new();
        for (cell, n) in &self.counts {
            let diff = anchor.differing(cell);
            if diff.is_disjoint(s) && diff.intersects(ga) && diff.intersects(gb) {
                *entries.entry(cell.project(pos)).or_insert(0) += *n;
            }
        }
        Ok(DiagonalSubtable {
            anchor: anchor.clone(),
            separator,
            gamma_alpha,
            gamma_beta,
            entries,
        })
    }

    /// Adds signed deltas cell by cell. Fails if any count would go negative.
    pub fn apply_delta<'a>(
        &self,
        delta: impl IntoIterator<Item = (&'a Cell, i64)>,
    ) -> Result<Self> {
        let mut out = self.clone();
        for (cell, d) in delta {
            self.schema.validate_over(self.vars, cell)?;
            let cur = out.counts.get(cell).copied().unwrap_or(0) as i128;
            let next = cur + d as i128;
            if next < 0 {
                return Err(Error::NegativeCount(cell.clone()));
            }
            if next == 0 {
                out.counts.remove(cell);
            } else {
                out.counts.insert(cell.clone(), next as u64);
            }
            out.total = (out.total as i128 + d as i128) as u64;
        }
        Ok(out)
    }
}

/// `n̄_{γ_{α,β}}(i' | i)`: the off-diagonal block of partners for `anchor`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalSubtable {
    anchor: Cell,
    separator: VarSet,
    gamma_alpha: VarSet,
    gamma_beta: VarSet,
    entries: BTreeMap<Cell, u64>,
}

impl DiagonalSubtable {
    pub fn anchor(&self) -> &Cell {
        &self.anchor
    }

    pub fn separator(&self) -> VarSet {
        self.separator
    }

    pub fn gamma_alpha(&self) -> VarSet {
        self.gamma_alpha
    }

    pub fn gamma_beta(&self) -> VarSet {
        self.gamma_beta
    }

    /// `γ_{α,β}`; entry cells list coordinates of these variables in order.
    pub fn vars(&self) -> VarSet {
        self.separator
            .union(self.gamma_alpha)
            .union(self.gamma_beta)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Cell, u64)> + '_ {
        self.entries.iter().map(|(c, &n)| (c, n))
    }

    pub fn is_nonempty(&self) -> bool {
        !self.entries.is_empty()
    }

    /// Lexicographically smallest marginal cell with a positive count.
    pub fn first(&self) -> Option<&Cell> {
        self.entries.keys().next()
    }
}
