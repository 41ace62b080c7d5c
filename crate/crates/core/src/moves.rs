//! Moves: integer tables whose protected marginals all vanish.
//!
//! Adding a move to a table never changes a protected marginal. A primitive
//! move (two `+1`, two `-1`) is the same thing as an effective two-record
//! swap; this module converts in both directions.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::GeneratingClass;
use crate::swap::SwapPlan;
use crate::table::{Cell, ContingencyTable, Schema};
use crate::varset::VarSet;

/// Sparse signed table `f(i)` over the full schema.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Move {
    schema: Arc<Schema>,
    entries: BTreeMap<Cell, i64>,
}

fn signed_marginal<'a>(
    entries: impl IntoIterator<Item = (&'a Cell, i64)>,
    d: VarSet,
) -> BTreeMap<Cell, i64> {
    let mut out = BTreeMap::new();
    for (c, f) in entries {
        *out.entry(c.project(d)).or_insert(0) += f;
    }
    out.retain(|_, f| *f != 0);
    out
}

fn vanishes_on<'a, I>(entries: I, class: &GeneratingClass) -> bool
where
    I: IntoIterator<Item = (&'a Cell, i64)> + Clone,
{
    class
        .members()
        .iter()
        .all(|&d| signed_marginal(entries.clone(), d).is_empty())
}

impl Move {
    /// Sums repeated cells and drops zeros. The entries must sum to zero.
    pub fn new(
        schema: Arc<Schema>,
        entries: impl IntoIterator<Item = (Cell, i64)>,
    ) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (c, f) in entries {
            schema.validate(&c)?;
            *map.entry(c).or_insert(0i64) += f;
        }
        map.retain(|_, f| *f != 0);
        let sum: i64 = map.values().sum();
        if sum != 0 {
            return Err(Error::MoveSumNonzero(sum));
        }
        Ok(Move {
            schema,
            entries: map,
        })
    }

    pub fn zero(schema: Arc<Schema>) -> Self {
        Move {
            schema,
            entries: BTreeMap::new(),
        }
    }

    /// `after - before`.
    pub fn between(before: &ContingencyTable, after: &ContingencyTable) -> Result<Self> {
        if before.schema() != after.schema() {
            return Err(Error::SchemaMismatch);
        }
        let mut map: BTreeMap<Cell, i64> = BTreeMap::new();
        for (c, n) in after.iter() {
            *map.entry(c.clone()).or_insert(0) += n as i64;
        }
        for (c, n) in before.iter() {
            *map.entry(c.clone()).or_insert(0) -= n as i64;
        }
        Move::new(before.schema().clone(), map)
    }

    pub fn schema(&self) -> &Arc<Schema> {
        &self.schema
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Cell, i64)> + Clone + '_ {
        self.entries.iter().map(|(c, &f)| (c, f))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Half the sum of absolute entries.
    pub fn degree(&self) -> u64 {
        self.entries.values().map(|f| f.unsigned_abs()).sum::<u64>() / 2
    }

    /// `f_D`, with zero entries dropped.
    pub fn marginal(&self, d: VarSet) -> Result<BTreeMap<Cell, i64>> {
        self.schema.check_vars(d)?;
        Ok(signed_marginal(self.entries(), d))
    }

    /// Whether `f_D ≡ 0` for every `D` in the class.
    pub fn is_move(&self, class: &GeneratingClass) -> bool {
        class.universe().is_subset(self.schema.all_vars()) && vanishes_on(self.entries(), class)
    }

    /// `n + f`.
    pub fn apply(&self, table: &ContingencyTable) -> Result<ContingencyTable> {
        if table.schema() != &self.schema {
            return Err(Error::SchemaMismatch);
        }
        table.apply_delta(self.entries())
    }

    /// The move as a primitive move, if it has that shape.
    pub fn to_primitive(&self) -> Result<PrimitiveMove> {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for (c, f) in self.entries() {
            match f {
                1 => pos.push(c.clone()),
                -1 => neg.push(c.clone()),
                _ => return Err(Error::NotPrimitive("entries must be +1 or -1")),
            }
        }
        match (<[Cell; 2]>::try_from(pos), <[Cell; 2]>::try_from(neg)) {
            (Ok(p), Ok(n)) => PrimitiveMove::new(p, n),
            _ => Err(Error::NotPrimitive(
                "needs exactly two +1 and two -1 entries",
            )),
        }
    }
}

/// `+1` at `i'`, `j'` and `-1` at `i`, `j`; four distinct cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveMove {
    positive: [Cell; 2],
    negative: [Cell; 2],
}

impl PrimitiveMove {
    pub fn new(mut positive: [Cell; 2], mut negative: [Cell; 2]) -> Result<Self> {
        positive.sort();
        negative.sort();
        let k = negative[0].arity();
        if positive.iter().chain(&negative).any(|c| c.arity() != k) {
            return Err(Error::NotPrimitive("cells differ in arity"));
        }
        let all = [&positive[0], &positive[1], &negative[0], &negative[1]];
        for a in 0..4 {
            if all[a + 1..].contains(&all[a]) {
                return Err(Error::NotPrimitive("the four cells must be distinct"));
            }
        }
        Ok(PrimitiveMove { positive, negative })
    }

    pub fn positive(&self) -> &[Cell; 2] {
        &self.positive
    }

    pub fn negative(&self) -> &[Cell; 2] {
        &self.negative
    }

    fn entries(&self) -> impl Iterator<Item = (&Cell, i64)> + Clone + '_ {
        self.positive
            .iter()
            .map(|c| (c, 1))
            .chain(self.negative.iter().map(|c| (c, -1)))
    }

    pub fn is_move(&self, class: &GeneratingClass) -> bool {
        vanishes_on(self.entries(), class)
    }

    /// Whether `{i_m, j_m} = {i'_m, j'_m}` for every variable `m`; on
    /// failure, the first offending variable.
    pub fn coordinate_law(&self) -> core::result::Result<(), usize> {
        let [i, j] = &self.negative;
        let [ip, jp] = &self.positive;
        for m in 0..i.arity() {
            let (a, b) = (i.get(m), j.get(m));
            let (c, d) = (ip.get(m), jp.get(m));
            if !((a == c && b == d) || (a == d && b == c)) {
                return Err(m);
            }
        }
        Ok(())
    }

    pub fn to_move(&self, schema: Arc<Schema>) -> Result<Move> {
        Move::new(schema, self.entries().map(|(c, f)| (c.clone(), f)))
    }
}

/// The table difference of an effective swap.
pub fn swap_to_move(plan: &SwapPlan) -> PrimitiveMove {
    PrimitiveMove::new(
        [plan.into_i().clone(), plan.into_j().clone()],
        [plan.i().clone(), plan.j().clone()],
    )
    .expect("an effective swap touches four distinct cells")
}

/// Reads a primitive move for `class` back as an `E`-swap with
/// `E = {m ∈ Δ̄ : i'_m = j_m}`, where `Δ̄` is where `i` and `j` differ.
///
/// The class must cover every variable of the cells.
pub fn move_to_swap(m: &PrimitiveMove, class: &GeneratingClass) -> Result<SwapPlan> {
    let k = m.negative[0].arity();
    let all = VarSet::full(k);
    if class.universe() != all {
        return Err(Error::IncompleteCover {
            covered: class.universe(),
            all,
        });
    }
    if !m.is_move(class) {
        return Err(Error::NotAMove);
    }
    m.coordinate_law().map_err(|var| Error::NotASwap { var })?;
    let [i, j] = &m.negative;
    let ip = &m.positive[0];
    let e: VarSet = i
        .differing(j)
        .iter()
        .filter(|&v| ip.get(v) == j.get(v))
        .collect();
    let plan = SwapPlan::new(i.clone(), j.clone(), e)?;
    debug_assert_eq!(&swap_to_move(&plan), m);
    Ok(plan)
}

/// Informational note on what pairwise unswappability means for a class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MarkovNote {
    /// Decomposable class: primitive moves connect every fiber, so a record
    /// that can move at all can move through a two-record swap.
    Decomposable,
    /// Not decomposable: swaps among three or more records may still exist
    /// when no two-record swap does.
    NotDecomposable,
}

impl MarkovNote {
    pub fn for_class(class: &GeneratingClass) -> Self {
        if class.is_decomposable() {
            MarkovNote::Decomposable
        } else {
            MarkovNote::NotDecomposable
        }
    }

    pub fn message(self) -> &'static str {
        match self {
            MarkovNote::Decomposable => {
                "decomposable model: a Markov basis of primitive moves exists, so two-record swaps reach every record that can be changed at all"
            }
            MarkovNote::NotDecomposable => {
                "non-decomposable model: primitive moves do not form a Markov basis; pairwise unswappability is inconclusive for swaps among three or more records"
            }
        }
    }
}
