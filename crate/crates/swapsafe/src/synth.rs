//! Seeded synthetic data.

use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use swapsafe_core::{Cell, ContingencyTable, GeneratingClass, Schema, VarSet};

use crate::codebook::{Codebook, VariableSpec};

/// A small random table with a random antichain of protected margins.
#[derive(Debug, Clone)]
pub struct Instance {
    pub schema: Arc<Schema>,
    pub cells: Vec<Cell>,
    pub class: GeneratingClass,
}

impl Instance {
    pub fn table(&self) -> ContingencyTable {
        ContingencyTable::from_cells(self.schema.clone(), self.cells.iter().cloned())
            .expect("generated cells fit their schema")
    }
}

fn random_cell(rng: &mut impl Rng, levels: &[u32]) -> Cell {
    Cell::new(levels.iter().map(|&l| rng.gen_range(1..=l)).collect())
}

/// `k` in 3..=6, levels in 2..=3, 2..=30 records, 1..=4 random margins with
/// non-maximal ones dropped.
pub fn random_instance(rng: &mut impl Rng) -> Instance {
    let k = rng.gen_range(3..=6);
    let levels: Vec<u32> = (0..k).map(|_| rng.gen_range(2..=3)).collect();
    let n = rng.gen_range(2..=30);
    let cells = (0..n).map(|_| random_cell(rng, &levels)).collect();
    let full = VarSet::full(k).bits();
    let members = rng.gen_range(1..=4);
    let sets: Vec<VarSet> = (0..members)
        .map(|_| VarSet::from_bits(rng.gen_range(1..=full)))
        .collect();
    Instance {
        schema: Arc::new(Schema::anonymous(levels).expect("valid levels")),
        cells,
        class: GeneratingClass::new(sets).expect("nonempty members"),
    }
}

/// Cliques of three variables overlapping in one, `{0,1,2}, {2,3,4}, ...`,
/// closed by a final pair when needed. The generated graph is a chain of
/// triangles, hence chordal, and the class is decomposable.
pub fn chain_class(k: usize) -> GeneratingClass {
    assert!(k >= 2, "a chain needs two variables");
    let mut sets = Vec::new();
    let mut start = 0;
    while start + 1 < k {
        let end = (start + 2).min(k - 1);
        sets.push((start..=end).collect::<VarSet>());
        start = end;
    }
    GeneratingClass::new(sets).expect("nonempty chain")
}

/// Parameters of [`chain_data`].
#[derive(Debug, Clone)]
pub struct ChainSpec {
    pub records: usize,
    pub vars: usize,
    pub max_levels: u32,
    pub seed: u64,
}

/// Records whose variables form a Markov chain: each variable copies a
/// function of its predecessor half of the time and is uniform otherwise.
/// Categories are pinned as `"1"..="L"` so labels equal level indices.
pub fn chain_data(spec: &ChainSpec) -> (Codebook, Vec<Cell>) {
    let mut rng = StdRng::seed_from_u64(spec.seed);
    let levels: Vec<u32> = (0..spec.vars)
        .map(|_| rng.gen_range(2..=spec.max_levels.max(2)))
        .collect();
    let mut cells = Vec::with_capacity(spec.records);
    for _ in 0..spec.records {
        let mut coords = Vec::with_capacity(spec.vars);
        for (m, &l) in levels.iter().enumerate() {
            let v = if m > 0 && rng.gen_bool(0.5) {
                (coords[m - 1] * 7 + 3) % l + 1
            } else {
                rng.gen_range(1..=l)
            };
            coords.push(v);
        }
        cells.push(Cell::new(coords));
    }
    let codebook = Codebook::new(
        levels
            .iter()
            .enumerate()
            .map(|(m, &l)| VariableSpec {
                name: format!("x{}", m + 1),
                categories: Some((1..=l).map(|v| v.to_string()).collect()),
            })
            .collect(),
    )
    .expect("distinct names");
    (codebook, cells)
}

/// Header line plus one comma-separated row per cell.
pub fn to_csv(codebook: &Codebook, cells: &[Cell]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(codebook.names()).expect("in-memory write");
    for c in cells {
        w.write_record(codebook.cell_labels(c))
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 labels")
}
