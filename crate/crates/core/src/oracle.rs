//! Exhaustive reference checks.
//!
//! Nothing here uses the generated graph, separators or the swap engine.
//! Swappability is decided by trying every swap set and recounting
//! marginals; separators by testing every vertex subset. All routines are
//! exponential and refuse inputs above their size limits.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::{GeneratingClass, Graph};
use crate::table::{Cell, ContingencyTable};
use crate::varset::VarSet;

/// Largest `|Δ|` [`brute_swappable`] will enumerate.
pub const SWAP_LIMIT: usize = 20;
/// Largest vertex count [`brute_minimal_separators`] will enumerate.
pub const SEPARATOR_LIMIT: usize = 8;

fn project(c: &Cell, d: VarSet) -> Vec<u32> {
    d.iter().map(|m| c.get(m)).collect()
}

/// `D`-marginal of a small multiset of cells, as a sorted list of marginal cells.
fn multiset_marginal(cells: &[&Cell], d: VarSet) -> Vec<Vec<u32>> {
    let mut out: Vec<Vec<u32>> = cells.iter().map(|c| project(c, d)).collect();
    out.sort();
    out
}

/// `(a_E, b_{Δ∖E})` built coordinate by coordinate.
fn exchange(a: &Cell, b: &Cell, e: VarSet) -> Cell {
    Cell::new(
        (0..a.arity())
            .map(|m| if e.contains(m) { a.get(m) } else { b.get(m) })
            .collect(),
    )
}

fn swap_ok(i: &Cell, j: &Cell, e: VarSet, universe: VarSet, class: &GeneratingClass) -> bool {
    let rest = universe.difference(e);
    let effective = project(i, e) != project(j, e) && project(i, rest) != project(j, rest);
    if !effective {
        return false;
    }
    let a = exchange(i, j, e);
    let b = exchange(j, i, e);
    class
        .members()
        .iter()
        .all(|&d| multiset_marginal(&[i, j], d) == multiset_marginal(&[&a, &b], d))
}

/// Lexicographically first nonempty proper `E ⊆ Δ` whose swap is effective
/// and leaves every protected marginal of `{i, j}` unchanged. `Δ` is the
/// full set of cell coordinates.
pub fn brute_swappable(i: &Cell, j: &Cell, class: &GeneratingClass) -> Result<Option<VarSet>> {
    if i.arity() != j.arity() {
        return Err(Error::CellArity {
            cell: j.clone(),
            expected: i.arity(),
            found: j.arity(),
        });
    }
    if i.arity() > SWAP_LIMIT {
        return Err(Error::OracleLimit {
            k: i.arity(),
            limit: SWAP_LIMIT,
        });
    }
    let universe = VarSet::full(i.arity());
    if !class.universe().is_subset(universe) {
        return Err(Error::NotSubset {
            set: class.universe(),
            within: universe,
        });
    }
    let order = universe.to_vec();

    // Preorder DFS over ascending extensions visits subsets lexicographically.
    fn dfs(
        prefix: VarSet,
        from: usize,
        order: &[usize],
        visit: &mut dyn FnMut(VarSet) -> bool,
    ) -> Option<VarSet> {
        for n in from..order.len() {
            let e = prefix.union(VarSet::singleton(order[n]));
            if visit(e) {
                return Some(e);
            }
            if let Some(hit) = dfs(e, n + 1, order, visit) {
                return Some(hit);
            }
        }
        None
    }
    let mut visit = |e: VarSet| e != universe && swap_ok(i, j, e, universe, class);
    Ok(dfs(VarSet::EMPTY, 0, &order, &mut visit))
}

/// First `(j, E)` in lexicographic order with `j ≠ i` occupied and
/// `brute_swappable(i, j)` succeeding.
pub fn brute_partner(
    table: &ContingencyTable,
    i: &Cell,
    class: &GeneratingClass,
) -> Result<Option<(Cell, VarSet)>> {
    for (j, _) in table.iter() {
        if j == i {
            continue;
        }
        if let Some(e) = brute_swappable(i, j, class)? {
            return Ok(Some((j.clone(), e)));
        }
    }
    Ok(None)
}

/// Vertices reachable from `a` without leaving `alive`.
fn reach(g: &Graph, a: usize, alive: VarSet) -> VarSet {
    let mut seen = VarSet::singleton(a);
    let mut frontier = seen;
    while !frontier.is_empty() {
        let mut next = VarSet::EMPTY;
        for u in frontier {
            for w in alive.difference(seen) {
                if g.has_edge(u, w) {
                    next.insert(w);
                }
            }
        }
        seen = seen.union(next);
        frontier = next;
    }
    seen
}

/// All `S` such that some `a, b ∉ S` are disconnected in `G − S` but
/// reconnected when any single vertex of `S` is put back.
pub fn brute_minimal_separators(g: &Graph) -> Result<Vec<VarSet>> {
    let v = g.vertices();
    if v.len() > SEPARATOR_LIMIT {
        return Err(Error::OracleLimit {
            k: v.len(),
            limit: SEPARATOR_LIMIT,
        });
    }
    let mut out = Vec::new();
    for s in v.subsets() {
        let alive = v.difference(s);
        let rest = alive.to_vec();
        let cut: Vec<VarSet> = rest.iter().map(|&a| reach(g, a, alive)).collect();
        let restored: Vec<Vec<VarSet>> = s
            .iter()
            .map(|x| {
                let back = alive.union(VarSet::singleton(x));
                rest.iter().map(|&a| reach(g, a, back)).collect()
            })
            .collect();
        let is_sep = rest.iter().enumerate().any(|(n, _)| {
            rest[n + 1..]
                .iter()
                .any(|&b| !cut[n].contains(b) && restored.iter().all(|r| r[n].contains(b)))
        });
        if is_sep {
            out.push(s);
        }
    }
    out.sort();
    Ok(out)
}
