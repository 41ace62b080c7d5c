//! Two-record swaps that keep protected marginals fixed.
//!
//! Swapping the `E`-coordinates of records `i` and `j` replaces the pair
//! `{(i_E, i_{E^C}), (j_E, j_{E^C})}` by `{(i_E, j_{E^C}), (j_E, i_{E^C})}`.
//! The swap is effective when the record multiset changes, and it fixes the
//! `D`-marginal when the differing variables inside `D` move together.
//! A pair admits such a swap for every `D` in a generating class exactly
//! when the generated graph, restricted to the differing variables, falls
//! apart into several components.

use core::cmp::Ordering;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::{GeneratingClass, SeparatorDecomposition};
use crate::table::{Cell, ContingencyTable};
use crate::varset::VarSet;

fn same_arity(i: &Cell, j: &Cell) -> Result<()> {
    if i.arity() != j.arity() {
        return Err(Error::CellArity {
            cell: j.clone(),
            expected: i.arity(),
            found: j.arity(),
        });
    }
    Ok(())
}

fn check_swap_set(k: usize, e: VarSet) -> Result<()> {
    let all = VarSet::full(k);
    if e.is_empty() || e == all || !e.is_subset(all) {
        return Err(Error::InvalidSwapSet(e, all));
    }
    Ok(())
}

/// `Δ̄ = {s : i_s ≠ j_s}`.
pub fn difference_set(i: &Cell, j: &Cell) -> Result<VarSet> {
    same_arity(i, j)?;
    Ok(i.differing(j))
}

/// Whether `E`-swapping `i` and `j` changes the pair: `i_E ≠ j_E` and
/// `i_{E^C} ≠ j_{E^C}`.
pub fn is_effective(i: &Cell, j: &Cell, e: VarSet) -> Result<bool> {
    same_arity(i, j)?;
    check_swap_set(i.arity(), e)?;
    let diff = i.differing(j);
    let ec = VarSet::full(i.arity()).difference(e);
    Ok(diff.intersects(e) && diff.intersects(ec))
}

/// Whether `E`-swapping leaves the `D`-marginal unchanged: one of
/// `D ⊆ E`, `D ⊆ E^C`, `i_{E∩D} = j_{E∩D}` or `i_{E^C∩D} = j_{E^C∩D}`.
pub fn fixes_marginal(i: &Cell, j: &Cell, e: VarSet, d: VarSet) -> Result<bool> {
    same_arity(i, j)?;
    check_swap_set(i.arity(), e)?;
    let all = VarSet::full(i.arity());
    if d.is_empty() {
        return Err(Error::EmptyVarSet);
    }
    if !d.is_subset(all) {
        return Err(Error::NotSubset {
            set: d,
            within: all,
        });
    }
    let ec = all.difference(e);
    let diff = i.differing(j);
    Ok(d.is_subset(e)
        || d.is_subset(ec)
        || diff.is_disjoint(e.intersection(d))
        || diff.is_disjoint(ec.intersection(d)))
}

/// An effective `E`-swap of two cells.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SwapPlan {
    i: Cell,
    j: Cell,
    swap_vars: VarSet,
    into_i: Cell,
    into_j: Cell,
}

impl SwapPlan {
    pub fn new(i: Cell, j: Cell, swap_vars: VarSet) -> Result<Self> {
        if !is_effective(&i, &j, swap_vars)? {
            return Err(Error::NotEffective {
                i,
                j,
                set: swap_vars,
            });
        }
        Ok(SwapPlan {
            into_i: i.splice(&j, swap_vars),
            into_j: j.splice(&i, swap_vars),
            i,
            j,
            swap_vars,
        })
    }

    pub fn i(&self) -> &Cell {
        &self.i
    }

    pub fn j(&self) -> &Cell {
        &self.j
    }

    /// `E`.
    pub fn swap_vars(&self) -> VarSet {
        self.swap_vars
    }

    /// `(i_E, j_{E^C})`.
    pub fn into_i(&self) -> &Cell {
        &self.into_i
    }

    /// `(j_E, i_{E^C})`.
    pub fn into_j(&self) -> &Cell {
        &self.into_j
    }

    /// The same exchange expressed through `E^C`.
    pub fn complement(&self) -> SwapPlan {
        let ec = VarSet::full(self.i.arity()).difference(self.swap_vars);
        SwapPlan {
            i: self.i.clone(),
            j: self.j.clone(),
            swap_vars: ec,
            into_i: self.into_j.clone(),
            into_j: self.into_i.clone(),
        }
    }

    /// Whether this swap fixes the `D`-marginal for every member of `class`.
    pub fn fixes_all(&self, class: &GeneratingClass) -> bool {
        class
            .members()
            .iter()
            .all(|&d| fixes_marginal(&self.i, &self.j, self.swap_vars, d).unwrap_or(false))
    }
}

/// Result of [`check_pair`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCheck {
    /// `Δ̄`, the differing variables.
    pub delta: VarSet,
    /// Components of `G_Δ̄`, ordered by smallest vertex.
    pub components: Vec<VarSet>,
    /// Canonical swap set when the pair is swappable.
    pub swap_vars: Option<VarSet>,
}

fn check_class_fits(class: &GeneratingClass, k: usize) -> Result<()> {
    let all = VarSet::full(k);
    if !class.universe().is_subset(all) {
        return Err(Error::NotSubset {
            set: class.universe(),
            within: all,
        });
    }
    Ok(())
}

/// Computes `Δ̄`, the components of `G_Δ̄` and the swap verdict.
///
/// The pair is swappable iff `G_Δ̄` has at least two components; the
/// returned `E` is the component holding the smallest differing variable.
/// Variables no member covers are isolated vertices of the graph, free to
/// move on their own.
pub fn check_pair(i: &Cell, j: &Cell, class: &GeneratingClass) -> Result<PairCheck> {
    let delta = difference_set(i, j)?;
    check_class_fits(class, i.arity())?;
    let components = class
        .graph_on(VarSet::full(i.arity()))
        .components_within(delta);
    let swap_vars = if components.len() >= 2 {
        Some(components[0])
    } else {
        None
    };
    Ok(PairCheck {
        delta,
        components,
        swap_vars,
    })
}

/// Some `E` whose swap is effective and fixes every protected marginal, or
/// `None` when no such `E` exists.
pub fn is_swappable(i: &Cell, j: &Cell, class: &GeneratingClass) -> Result<Option<VarSet>> {
    Ok(check_pair(i, j, class)?.swap_vars)
}

/// `(S, γ_α, γ_β)` with `i_S = j_S`, `i_{γ_α} ≠ j_{γ_α}`, `i_{γ_β} ≠ j_{γ_β}`,
/// and the swap set `E = γ_α` it licenses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SwapWitness {
    pub separator: VarSet,
    pub gamma_alpha: VarSet,
    pub gamma_beta: VarSet,
    pub swap_vars: VarSet,
}

impl SwapWitness {
    /// `γ_{α,β} = γ_α ∪ γ_β ∪ S`.
    pub fn span(&self) -> VarSet {
        self.separator
            .union(self.gamma_alpha)
            .union(self.gamma_beta)
    }
}

fn sorted_decompositions(
    k: usize,
    seps: &[SeparatorDecomposition],
) -> Result<Vec<SeparatorDecomposition>> {
    let universe = VarSet::full(k);
    for d in seps {
        let mut seen = d.separator;
        for &c in &d.components {
            if c.is_empty() || c.intersects(seen) {
                return Err(Error::SeparatorMismatch(universe));
            }
            seen = seen.union(c);
        }
        if seen != universe {
            return Err(Error::SeparatorMismatch(universe));
        }
    }
    let mut out = seps.to_vec();
    out.sort();
    Ok(out)
}

/// Minimal separators of `G^D`, taken over all `k` variables, with their
/// components; includes `S = ∅` when that graph is disconnected.
pub fn decompositions(class: &GeneratingClass, k: usize) -> Vec<SeparatorDecomposition> {
    class.graph_on(VarSet::full(k)).minimal_separators()
}

/// Every separator triple certifying that `i` and `j` are swappable, in
/// separator then component-pair order.
pub fn all_witnesses(
    i: &Cell,
    j: &Cell,
    class: &GeneratingClass,
    seps: &[SeparatorDecomposition],
) -> Result<Vec<SwapWitness>> {
    let delta = difference_set(i, j)?;
    check_class_fits(class, i.arity())?;
    let mut out = Vec::new();
    for d in sorted_decompositions(i.arity(), seps)? {
        if d.separator.intersects(delta) {
            continue;
        }
        for (ga, gb) in d.pairs() {
            if ga.intersects(delta) && gb.intersects(delta) {
                out.push(SwapWitness {
                    separator: d.separator,
                    gamma_alpha: ga,
                    gamma_beta: gb,
                    swap_vars: ga,
                });
            }
        }
    }
    Ok(out)
}

/// First separator triple certifying swappability of `i` and `j`.
pub fn separator_witness(
    i: &Cell,
    j: &Cell,
    class: &GeneratingClass,
    seps: &[SeparatorDecomposition],
) -> Result<Option<SwapWitness>> {
    Ok(all_witnesses(i, j, class, seps)?.into_iter().next())
}

/// `n(i) - 1`, `n(j) - 1`, `n(i_E, j_{E^C}) + 1`, `n(j_E, i_{E^C}) + 1`.
pub fn apply_swap(table: &ContingencyTable, plan: &SwapPlan) -> Result<ContingencyTable> {
    for c in [plan.i(), plan.j()] {
        if table.count(c) == 0 {
            return Err(Error::InsufficientCount(c.clone()));
        }
    }
    if plan.i() == plan.j() && table.count(plan.i()) < 2 {
        return Err(Error::InsufficientCount(plan.i().clone()));
    }
    table.apply_delta([
        (plan.i(), -1),
        (plan.j(), -1),
        (plan.into_i(), 1),
        (plan.into_j(), 1),
    ])
}

/// A partner found by the separator search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partner {
    pub plan: SwapPlan,
    pub witness: SwapWitness,
    /// The selected marginal cell `i'_{γ_{α,β}}` of the diagonal subtable.
    pub marginal_cell: Cell,
}

/// Partner search over one table and generating class.
///
/// Occupied cells are bucketed by their restriction to each separator, so a
/// query only scans the slice `j_S = i_S`.
pub struct PartnerSearch<'a> {
    table: &'a ContingencyTable,
    decomps: Vec<SeparatorDecomposition>,
    slices: Vec<BTreeMap<Cell, Vec<&'a Cell>>>,
}

impl<'a> PartnerSearch<'a> {
    pub fn new(
        table: &'a ContingencyTable,
        class: &GeneratingClass,
        seps: &[SeparatorDecomposition],
    ) -> Result<Self> {
        let k = table.schema().k();
        if table.vars() != VarSet::full(k) {
            return Err(Error::NotSubset {
                set: VarSet::full(k),
                within: table.vars(),
            });
        }
        check_class_fits(class, k)?;
        let decomps = sorted_decompositions(k, seps)?;
        let slices = decomps
            .iter()
            .map(|d| {
                let mut m: BTreeMap<Cell, Vec<&Cell>> = BTreeMap::new();
                for c in table.cells() {
                    m.entry(c.project(d.separator)).or_default().push(c);
                }
                m
            })
            .collect();
        Ok(PartnerSearch {
            table,
            decomps,
            slices,
        })
    }

    pub fn decompositions(&self) -> &[SeparatorDecomposition] {
        &self.decomps
    }

    fn check_anchor(&self, i: &Cell) -> Result<()> {
        self.table.schema().validate(i)?;
        if self.table.count(i) == 0 {
            return Err(Error::InsufficientCount(i.clone()));
        }
        Ok(())
    }

    fn scan(&self, i: &Cell, mut on_hit: impl FnMut(Partner) -> bool) -> Result<()> {
        self.check_anchor(i)?;
        for (d, slices) in self.decomps.iter().zip(&self.slices) {
            let Some(slice) = slices.get(&i.project(d.separator)) else {
                continue;
            };
            let diffs: Vec<VarSet> = slice.iter().map(|c| i.differing(c)).collect();
            for (ga, gb) in d.pairs() {
                let span = d.separator.union(ga).union(gb);
                let mut best: Option<&Cell> = None;
                for (c, diff) in slice.iter().zip(&diffs) {
                    if !(diff.intersects(ga) && diff.intersects(gb)) {
                        continue;
                    }
                    // Slices are lexicographic, so ties on the projection keep
                    // the earlier (smaller) full cell.
                    if best.is_none_or(|b| cmp_projected(c, b, span) == Ordering::Less) {
                        best = Some(c);
                    }
                }
                if let Some(j) = best {
                    let witness = SwapWitness {
                        separator: d.separator,
                        gamma_alpha: ga,
                        gamma_beta: gb,
                        swap_vars: ga,
                    };
                    let partner = Partner {
                        plan: SwapPlan::new(i.clone(), j.clone(), ga)?,
                        witness,
                        marginal_cell: j.project(span),
                    };
                    if !on_hit(partner) {
                        return Ok(());
                    }
                }
            }
        }
        Ok(())
    }

    /// First hit in separator order, component-pair order, then
    /// lexicographically smallest marginal cell and full cell.
    pub fn find(&self, i: &Cell) -> Result<Option<Partner>> {
        let mut found = None;
        self.scan(i, |p| {
            found = Some(p);
            false
        })?;
        Ok(found)
    }

    /// One partner per separator triple with a nonempty diagonal subtable.
    pub fn find_all(&self, i: &Cell) -> Result<Vec<Partner>> {
        let mut all = Vec::new();
        self.scan(i, |p| {
            all.push(p);
            true
        })?;
        Ok(all)
    }
}

fn cmp_projected(a: &Cell, b: &Cell, positions: VarSet) -> Ordering {
    for p in positions {
        match a.get(p).cmp(&b.get(p)) {
            Ordering::Equal => {}
            o => return o,
        }
    }
    Ordering::Equal
}

/// Finds a partner for `i` and performs the swap. `None` means `i` is not
/// swappable with any single record of the table.
pub fn find_partner(
    table: &ContingencyTable,
    i: &Cell,
    class: &GeneratingClass,
    seps: &[SeparatorDecomposition],
) -> Result<Option<(Partner, ContingencyTable)>> {
    let search = PartnerSearch::new(table, class, seps)?;
    match search.find(i)? {
        Some(p) => {
            let after = apply_swap(table, &p.plan)?;
            Ok(Some((p, after)))
        }
        None => Ok(None),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarginalCheck {
    pub vars: VarSet,
    pub preserved: bool,
}

/// Per-member marginal comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreservationReport {
    pub checks: Vec<MarginalCheck>,
}

impl PreservationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.preserved)
    }

    pub fn disturbed(&self) -> impl Iterator<Item = VarSet> + '_ {
        self.checks.iter().filter(|c| !c.preserved).map(|c| c.vars)
    }
}

/// Compares `marginal(before, D)` with `marginal(after, D)` for each member.
pub fn verify_preservation(
    before: &ContingencyTable,
    after: &ContingencyTable,
    class: &GeneratingClass,
) -> Result<PreservationReport> {
    if before.schema() != after.schema() {
        return Err(Error::SchemaMismatch);
    }
    let checks = class
        .members()
        .iter()
        .map(|&d| {
            Ok(MarginalCheck {
                vars: d,
                preserved: before.marginal(d)? == after.marginal(d)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PreservationReport { checks })
}
