//! Generating classes and the graphs they generate.
//!
//! A generating class is an antichain of variable sets whose marginals are
//! protected. Its generated graph joins two variables whenever some member
//! contains both. Swappability of two records is decided on induced
//! subgraphs of that graph, and partner search walks its minimal vertex
//! separators.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::varset::{VarSet, MAX_VARS};

/// An antichain `D_1..D_r` of nonempty variable sets, together with the
/// variable set `Δ = ∪ D_s` it spans.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratingClass {
    members: Vec<VarSet>,
    universe: VarSet,
}

/// Outcome of [`GeneratingClass::normalize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    pub class: GeneratingClass,
    /// Input sets dropped because a larger member contains them.
    pub dropped: Vec<VarSet>,
    /// Variables of the requested `Δ` that no member covers. When nonempty
    /// the effective `Δ` has been shrunk to the union of the members.
    pub uncovered: VarSet,
}

impl GeneratingClass {
    /// Reduces `sets` to its maximal members and shrinks `Δ` to their union.
    pub fn normalize(sets: impl IntoIterator<Item = VarSet>, delta: VarSet) -> Result<Normalized> {
        let sets: Vec<VarSet> = sets.into_iter().collect();
        if sets.is_empty() {
            return Err(Error::EmptyGeneratingClass);
        }
        for (n, &d) in sets.iter().enumerate() {
            if d.is_empty() {
                return Err(Error::EmptyMember(n));
            }
            if !d.is_subset(delta) {
                return Err(Error::NotSubset {
                    set: d,
                    within: delta,
                });
            }
        }
        let unique: BTreeSet<VarSet> = sets.iter().copied().collect();
        let mut members = Vec::new();
        let mut dropped = Vec::new();
        for &d in &unique {
            if unique.iter().any(|&e| e != d && d.is_subset(e)) {
                dropped.push(d);
            } else {
                members.push(d);
            }
        }
        let universe = members.iter().fold(VarSet::EMPTY, |acc, &d| acc.union(d));
        Ok(Normalized {
            class: GeneratingClass { members, universe },
            dropped,
            uncovered: delta.difference(universe),
        })
    }

    /// Like [`normalize`](Self::normalize) over `Δ = ∪ sets`, keeping only the class.
    pub fn new(sets: impl IntoIterator<Item = VarSet>) -> Result<Self> {
        let sets: Vec<VarSet> = sets.into_iter().collect();
        let delta = sets.iter().fold(VarSet::EMPTY, |acc, &d| acc.union(d));
        Ok(GeneratingClass::normalize(sets, delta)?.class)
    }

    /// All `size`-element subsets of `{0..k-1}`.
    pub fn all_subsets_of_size(k: usize, size: usize) -> Result<Self> {
        GeneratingClass::new(VarSet::full(k).subsets().filter(|s| s.len() == size))
    }

    /// Members in lexicographic order.
    pub fn members(&self) -> &[VarSet] {
        &self.members
    }

    /// The effective variable set `Δ`.
    pub fn universe(&self) -> VarSet {
        self.universe
    }

    /// `G^D`: vertex set `Δ`, edge `{s,t}` iff some member contains both.
    pub fn graph(&self) -> Graph {
        self.graph_on(self.universe)
    }

    /// `G^D` with extra isolated vertices for the variables of `vertices`
    /// that no member covers.
    pub fn graph_on(&self, vertices: VarSet) -> Graph {
        let mut g = Graph::empty(vertices.union(self.universe));
        for &d in &self.members {
            for s in d {
                g.adj[s] = g.adj[s].union(d.difference(VarSet::singleton(s)));
            }
        }
        g
    }

    /// True when the members are exactly the maximal cliques of `G^D`.
    pub fn is_graphical(&self) -> bool {
        let cliques: BTreeSet<VarSet> = self.graph().maximal_cliques().into_iter().collect();
        let members: BTreeSet<VarSet> = self.members.iter().copied().collect();
        cliques == members
    }

    /// Graphical with a chordal generated graph.
    pub fn is_decomposable(&self) -> bool {
        self.is_graphical() && self.graph().is_chordal()
    }
}

/// Simple undirected graph on a subset of the variables.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    vertices: VarSet,
    adj: [VarSet; MAX_VARS],
}

impl core::fmt::Debug for Graph {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("Graph")
            .field("vertices", &self.vertices)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    pub fn empty(vertices: VarSet) -> Self {
        Graph {
            vertices,
            adj: [VarSet::EMPTY; MAX_VARS],
        }
    }

    pub fn complete(vertices: VarSet) -> Self {
        let mut g = Graph::empty(vertices);
        for v in vertices {
            g.adj[v] = vertices.difference(VarSet::singleton(v));
        }
        g
    }

    pub fn from_edges(
        vertices: VarSet,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self> {
        let mut g = Graph::empty(vertices);
        for (s, t) in edges {
            g.add_edge(s, t)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, s: usize, t: usize) -> Result<()> {
        if s == t {
            return Err(Error::SelfLoop(s));
        }
        let ends = VarSet::singleton(s).union(VarSet::singleton(t));
        if !ends.is_subset(self.vertices) {
            return Err(Error::NotSubset {
                set: ends,
                within: self.vertices,
            });
        }
        self.adj[s].insert(t);
        self.adj[t].insert(s);
        Ok(())
    }

    pub fn vertices(&self) -> VarSet {
        self.vertices
    }

    pub fn neighbors(&self, v: usize) -> VarSet {
        if v < MAX_VARS {
            self.adj[v]
        } else {
            VarSet::EMPTY
        }
    }

    pub fn has_edge(&self, s: usize, t: usize) -> bool {
        self.neighbors(s).contains(t)
    }

    /// Edges `(s, t)` with `s < t`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.vertices.iter().flat_map(move |s| {
            self.adj[s]
                .iter()
                .filter(move |&t| t > s)
                .map(move |t| (s, t))
        })
    }

    pub fn edge_count(&self) -> usize {
        self.vertices
            .iter()
            .map(|v| self.adj[v].len())
            .sum::<usize>()
            / 2
    }

    /// `adj(A) = ∪_{δ∈A} adj(δ) \ A`.
    pub fn neighborhood(&self, set: VarSet) -> VarSet {
        set.iter()
            .fold(VarSet::EMPTY, |acc, v| acc.union(self.adj[v]))
            .difference(set)
    }

    /// Subgraph induced by `vertices`.
    pub fn induced(&self, vertices: VarSet) -> Result<Graph> {
        if !vertices.is_subset(self.vertices) {
            return Err(Error::NotSubset {
                set: vertices,
                within: self.vertices,
            });
        }
        let mut g = Graph::empty(vertices);
        for v in vertices {
            g.adj[v] = self.adj[v].intersection(vertices);
        }
        Ok(g)
    }

    /// Vertices reachable from `start` without leaving `within`.
    fn reach(&self, start: usize, within: VarSet) -> VarSet {
        let mut seen = VarSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let next = self
                .neighborhood(frontier)
                .intersection(within)
                .difference(seen);
            seen = seen.union(next);
            frontier = next;
        }
        seen
    }

    /// Connected components of the subgraph induced by `within`, ordered by
    /// smallest vertex.
    pub fn components_within(&self, within: VarSet) -> Vec<VarSet> {
        let mut rest = within.intersection(self.vertices);
        let mut out = Vec::new();
        while let Some(v) = rest.first() {
            let c = self.reach(v, rest);
            out.push(c);
            rest = rest.difference(c);
        }
        out
    }

    pub fn connected_components(&self) -> Vec<VarSet> {
        self.components_within(self.vertices)
    }

    /// An empty or single-vertex graph counts as connected.
    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    pub fn is_clique(&self, set: VarSet) -> bool {
        set.iter()
            .all(|v| set.difference(VarSet::singleton(v)).is_subset(self.adj[v]))
    }

    pub fn is_complete(&self) -> bool {
        self.is_clique(self.vertices)
    }

    /// Maximum cardinality search. When the graph is chordal the returned
    /// order is a perfect elimination ordering; otherwise `None`.
    pub fn perfect_elimination_order(&self) -> Option<Vec<usize>> {
        let mut numbered = VarSet::EMPTY;
        let mut visit = Vec::with_capacity(self.vertices.len());
        while numbered != self.vertices {
            let v = self
                .vertices
                .difference(numbered)
                .iter()
                .max_by_key(|&v| {
                    (
                        self.adj[v].intersection(numbered).len(),
                        core::cmp::Reverse(v),
                    )
                })
                .expect("unnumbered vertex");
            numbered.insert(v);
            visit.push(v);
        }
        visit.reverse();
        self.is_perfect_elimination_order(&visit).then_some(visit)
    }

    /// Checks that every vertex's later neighbours in `order` form a clique
    /// and that `order` lists each vertex exactly once.
    pub fn is_perfect_elimination_order(&self, order: &[usize]) -> bool {
        let listed: VarSet = order.iter().collect();
        if listed != self.vertices || order.len() != self.vertices.len() {
            return false;
        }
        let mut later = self.vertices;
        for &v in order {
            later.remove(v);
            if !self.is_clique(self.adj[v].intersection(later)) {
                return false;
            }
        }
        true
    }

    pub fn is_chordal(&self) -> bool {
        self.perfect_elimination_order().is_some()
    }

    /// Maximal cliques (Bron–Kerbosch with pivoting), sorted.
    pub fn maximal_cliques(&self) -> Vec<VarSet> {
        fn expand(g: &Graph, r: VarSet, mut p: VarSet, mut x: VarSet, out: &mut Vec<VarSet>) {
            let Some(pivot) = p.union(x).first() else {
                out.push(r);
                return;
            };
            for v in p.difference(g.adj[pivot]) {
                expand(
                    g,
                    r.union(VarSet::singleton(v)),
                    p.intersection(g.adj[v]),
                    x.intersection(g.adj[v]),
                    out,
                );
                p.remove(v);
                x.insert(v);
            }
        }
        let mut out = Vec::new();
        if !self.vertices.is_empty() {
            expand(self, VarSet::EMPTY, self.vertices, VarSet::EMPTY, &mut out);
        }
        out.sort();
        out
    }

    /// `S` together with the components of `G_{V∖S}`.
    pub fn decompose(&self, separator: VarSet) -> SeparatorDecomposition {
        SeparatorDecomposition {
            separator,
            components: self.components_within(self.vertices.difference(separator)),
        }
    }

    /// True iff `separator` is a minimal `(a,b)`-separator for some pair,
    /// i.e. `G_{V∖S}` has at least two components `C` with `adj(C) = S`.
    pub fn is_minimal_separator(&self, separator: VarSet) -> bool {
        if !separator.is_subset(self.vertices) {
            return false;
        }
        self.components_within(self.vertices.difference(separator))
            .into_iter()
            .filter(|&c| self.neighborhood(c) == separator)
            .count()
            >= 2
    }

    /// Every minimal vertex separator, each with the components it leaves,
    /// sorted by separator. The empty separator appears exactly when the
    /// graph is disconnected.
    ///
    /// Seeds with `adj(C)` for each component `C` of `G − N[v]`, then closes
    /// under `S ↦ adj(C)` for components `C` of `G − (S ∪ N(x))`, `x ∈ S`.
    pub fn minimal_separators(&self) -> Vec<SeparatorDecomposition> {
        let mut found = BTreeSet::new();
        let mut queue = Vec::new();
        let mut push = |s: VarSet, queue: &mut Vec<VarSet>| {
            if found.insert(s) {
                queue.push(s);
            }
        };
        for v in self.vertices {
            let closed = self.adj[v].union(VarSet::singleton(v));
            for c in self.components_within(self.vertices.difference(closed)) {
                push(self.neighborhood(c), &mut queue);
            }
        }
        while let Some(s) = queue.pop() {
            for x in s {
                let removed = s.union(self.adj[x]);
                for c in self.components_within(self.vertices.difference(removed)) {
                    push(self.neighborhood(c), &mut queue);
                }
            }
        }
        found.into_iter().map(|s| self.decompose(s)).collect()
    }

    /// Whether every listed separator induces a complete subgraph.
    pub fn separators_induce_cliques(&self, seps: &[SeparatorDecomposition]) -> bool {
        seps.iter().all(|d| self.is_clique(d.separator))
    }
}

/// A minimal vertex separator `S` and the components `γ` of `G_{Δ∖S}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SeparatorDecomposition {
    pub separator: VarSet,
    /// Ordered by smallest vertex.
    pub components: Vec<VarSet>,
}

impl SeparatorDecomposition {
    /// Component pairs `(γ_α, γ_β)` with `α < β`.
    pub fn pairs(&self) -> impl Iterator<Item = (VarSet, VarSet)> + '_ {
        self.components
            .iter()
            .enumerate()
            .flat_map(move |(a, &ga)| self.components[a + 1..].iter().map(move |&gb| (ga, gb)))
    }

    /// `S ∪ ∪γ`.
    pub fn span(&self) -> VarSet {
        self.components
            .iter()
            .fold(self.separator, |acc, &c| acc.union(c))
    }
}
