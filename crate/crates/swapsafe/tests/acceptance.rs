//! Acceptance criteria. Each prints one PASS/FAIL line; the process fails if
//! any criterion does.

use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use swapsafe::codebook::{Codebook, VariableSpec};
use swapsafe::data::load_microdata;
use swapsafe::synth::{chain_class, chain_data, random_instance, to_csv, ChainSpec, Instance};
use swapsafe_core::oracle::{brute_minimal_separators, brute_partner, brute_swappable};
use swapsafe_core::{
    apply_swap, decompositions, find_partner, is_swappable, move_to_swap, separator_witness,
    swap_to_move, verify_preservation, Cell, ContingencyTable, GeneratingClass, Graph, Move,
    PartnerSearch, SwapPlan, VarSet,
};

const FIXTURE_TIME: Duration = Duration::from_secs(1);
const CORPUS_INSTANCES: usize = 1_000;
const CORPUS_SEED: u64 = 0x5a_f3;
const CORPUS_TIME: Duration = Duration::from_secs(300);
const EXHAUSTIVE_VERTICES: usize = 6;
const RANDOM_GRAPHS: usize = 200;
const ROUND_TRIPS: usize = 1_000;
const SCALE_RECORDS: usize = 10_000;
const SCALE_VARS: usize = 8;
const SCALE_MAX_LEVELS: u32 = 10;
const SCALE_PER_RECORD: Duration = Duration::from_secs(1);
const SCALE_SWEEP: Duration = Duration::from_secs(60);

type Verdict = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Verdict + 'a>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn vs(v: &[usize]) -> VarSet {
    v.iter().collect()
}

fn two_record_codebook() -> Codebook {
    let spec = |name: &str, cats: [&str; 2]| VariableSpec {
        name: name.into(),
        categories: Some(cats.iter().map(|s| s.to_string()).collect()),
    };
    Codebook::new(vec![
        spec("sex", ["male", "female"]),
        spec("age", ["55", "50"]),
        spec("occupation", ["nurse", "police officer"]),
        spec("residence", ["Tokyo", "Osaka"]),
    ])
    .unwrap()
}

const TWO_RECORD_DATA: &str = "male,55,nurse,Tokyo\nfemale,50,police officer,Osaka\n";
const ROTATION_BEFORE: &str = "x1,x2,x3\n1,1,1\n1,2,2\n2,2,1\n2,1,2\n";
const ROTATION_AFTER: &str = "x1,x2,x3\n1,1,2\n1,2,1\n2,2,2\n2,1,1\n";

/// Two-record fixture: exchanging occupation keeps the one-way margins but
/// not {age, occupation}; exchanging age and occupation keeps both.
fn criterion_1() -> Verdict {
    let start = Instant::now();
    let mut cb = two_record_codebook();
    let data = load_microdata(TWO_RECORD_DATA, &mut cb, b',').map_err(|e| e.to_string())?;
    let before = data.table.to_contingency();
    let (i, j) = (Cell::from([1, 1, 1, 1]), Cell::from([2, 2, 2, 2]));
    let age_occ = vs(&[1, 2]);
    let one_way = GeneratingClass::new((0..4).map(VarSet::singleton)).unwrap();

    let occ = SwapPlan::new(i.clone(), j.clone(), vs(&[2])).unwrap();
    let after = apply_swap(&before, &occ).unwrap();
    ensure(
        after.count(&Cell::from([1, 1, 2, 1])) == 1 && after.count(&Cell::from([2, 2, 1, 2])) == 1,
        || "occupation swap produced the wrong records".into(),
    )?;
    let report = verify_preservation(&before, &after, &one_way).unwrap();
    ensure(report.passed(), || {
        "occupation swap moved a one-way margin".into()
    })?;
    ensure(
        before.marginal(age_occ).unwrap() != after.marginal(age_occ).unwrap(),
        || "occupation swap left {age, occupation} unchanged".into(),
    )?;

    let both = SwapPlan::new(i, j, age_occ).unwrap();
    let after = apply_swap(&before, &both).unwrap();
    ensure(
        after.count(&Cell::from([1, 2, 2, 1])) == 1 && after.count(&Cell::from([2, 1, 1, 2])) == 1,
        || "age+occupation swap produced the wrong records".into(),
    )?;
    ensure(
        before.marginal(age_occ).unwrap() == after.marginal(age_occ).unwrap(),
        || "age+occupation swap moved {age, occupation}".into(),
    )?;
    ensure(
        verify_preservation(&before, &after, &one_way)
            .unwrap()
            .passed(),
        || "age+occupation swap moved a one-way margin".into(),
    )?;
    let elapsed = start.elapsed();
    ensure(elapsed < FIXTURE_TIME, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "occupation disturbs {{age, occupation}}, age+occupation preserves it ({elapsed:?})"
    ))
}

fn cli(dir: &Path, args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_swapsafe"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
    )
}

/// Three binary variables, all two-way margins: no pair swaps, no record
/// finds a partner, but the four-record rotation fixes every margin.
fn criterion_2() -> Verdict {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let d = dir.path();
    fs::write(d.join("data.csv"), ROTATION_BEFORE).unwrap();
    fs::write(d.join("after.csv"), ROTATION_AFTER).unwrap();
    fs::write(
        d.join("margins.json"),
        r#"[["x1","x2"],["x1","x3"],["x2","x3"]]"#,
    )
    .unwrap();
    let base = ["--data", "data.csv", "--margins", "margins.json"];

    let mut pairs = 0;
    for a in 1..=4 {
        for b in a + 1..=4 {
            let (ra, rb) = (a.to_string(), b.to_string());
            let mut args = base.to_vec();
            args.extend(["check", "--record-a", &ra, "--record-b", &rb]);
            let (code, out) = cli(d, &args);
            let report: serde_json::Value =
                serde_json::from_str(&out).map_err(|e| e.to_string())?;
            ensure(code == 1, || format!("check {a} {b} exited {code}"))?;
            ensure(report["reason"] == "G_Δ̄ connected", || {
                format!("check {a} {b} reason {}", report["reason"])
            })?;
            pairs += 1;
        }
    }
    for r in 1..=4 {
        let rs = r.to_string();
        let mut args = base.to_vec();
        args.extend(["find", "--cell", &rs]);
        let (code, out) = cli(d, &args);
        let report: serde_json::Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
        ensure(code == 1 && report["verdict"] == "no partner", || {
            format!("find {r} exited {code} with {}", report["verdict"])
        })?;
    }

    let mut cb = Codebook::from_names(["x1", "x2", "x3"]).unwrap();
    let before = load_microdata(ROTATION_BEFORE, &mut cb, b',').unwrap();
    let after = load_microdata(ROTATION_AFTER, &mut cb, b',').unwrap();
    let all2 = GeneratingClass::all_subsets_of_size(3, 2).unwrap();
    let m = Move::between(
        &before.table.to_contingency(),
        &after.table.to_contingency(),
    )
    .unwrap();
    ensure(m.degree() == 4, || {
        format!("rotation has degree {}", m.degree())
    })?;
    ensure(m.is_move(&all2), || "rotation is not a move".into())?;
    ensure(m.to_primitive().is_err(), || "rotation is primitive".into())?;

    let mut args = base.to_vec();
    args.extend(["verify", "--before", "data.csv", "--after", "after.csv"]);
    let (code, _) = cli(d, &args);
    ensure(code == 0, || {
        format!("verify of the rotation exited {code}")
    })?;
    Ok(format!(
        "{pairs} pairs not swappable, 4 records without partner, rotation is a degree-4 move"
    ))
}

/// Two-record marginals recomputed from contingency tables.
fn recheck(inst: &Instance, i: &Cell, j: &Cell, e: VarSet) -> bool {
    let two = ContingencyTable::from_cells(inst.schema.clone(), [i.clone(), j.clone()]).unwrap();
    let Ok(plan) = SwapPlan::new(i.clone(), j.clone(), e) else {
        return false;
    };
    let after = apply_swap(&two, &plan).unwrap();
    inst.class
        .members()
        .iter()
        .all(|&d| two.marginal(d).unwrap() == after.marginal(d).unwrap())
}

fn corpus() -> Vec<Instance> {
    let mut rng = StdRng::seed_from_u64(CORPUS_SEED);
    (0..CORPUS_INSTANCES)
        .map(|_| random_instance(&mut rng))
        .collect()
}

/// Graph criterion, exhaustive search and separator witnesses agree on every
/// pair of records; every returned swap set passes a recount.
fn criterion_3(corpus: &[Instance]) -> Verdict {
    let start = Instant::now();
    let (mut pairs, mut swappable) = (0usize, 0usize);
    for (n, inst) in corpus.iter().enumerate() {
        let k = inst.schema.k();
        let seps = decompositions(&inst.class, k);
        for a in 0..inst.cells.len() {
            for b in a + 1..inst.cells.len() {
                let (i, j) = (&inst.cells[a], &inst.cells[b]);
                let fast = is_swappable(i, j, &inst.class).unwrap();
                let brute = brute_swappable(i, j, &inst.class).unwrap();
                let witness = separator_witness(i, j, &inst.class, &seps).unwrap();
                pairs += 1;
                ensure(
                    fast.is_some() == brute.is_some() && fast.is_some() == witness.is_some(),
                    || format!("instance {n}: {i} vs {j}: {fast:?} {brute:?} {witness:?}"),
                )?;
                let sets = [fast, brute, witness.map(|w| w.swap_vars)];
                for e in sets.into_iter().flatten() {
                    ensure(recheck(inst, i, j, e), || {
                        format!("instance {n}: E = {e} fails the recount for {i}, {j}")
                    })?;
                }
                swappable += usize::from(fast.is_some());
            }
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < CORPUS_TIME, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{} instances, {pairs} pairs ({swappable} swappable), zero mismatches ({elapsed:?})",
        corpus.len()
    ))
}

fn all_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|s| (s + 1..n).map(move |t| (s, t)))
        .collect()
}

fn check_graph(g: &Graph) -> Result<bool, String> {
    let fast: Vec<VarSet> = g.minimal_separators().iter().map(|d| d.separator).collect();
    let brute = brute_minimal_separators(g).unwrap();
    ensure(fast == brute, || format!("{g:?}: {fast:?} vs {brute:?}"))?;
    let chordal = g.is_chordal();
    if chordal {
        ensure(g.separators_induce_cliques(&g.minimal_separators()), || {
            format!("{g:?}: chordal but a separator is not a clique")
        })?;
    }
    Ok(chordal)
}

/// Separator enumeration against subset enumeration.
fn criterion_4() -> Verdict {
    let (mut graphs, mut chordal) = (0usize, 0usize);
    for n in 1..=EXHAUSTIVE_VERTICES {
        let edges = all_pairs(n);
        for mask in 0u64..(1 << edges.len()) {
            let chosen = edges.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1);
            let g = Graph::from_edges(VarSet::full(n), chosen.map(|(_, &e)| e)).unwrap();
            if !g.is_connected() {
                continue;
            }
            graphs += 1;
            chordal += usize::from(check_graph(&g)?);
        }
    }
    let exhaustive = graphs;
    let mut rng = StdRng::seed_from_u64(CORPUS_SEED ^ 0x9);
    for _ in 0..RANDOM_GRAPHS {
        let n = rng.gen_range(7..=8);
        let density = rng.gen_range(0.2..0.8);
        let mut g = Graph::empty(VarSet::full(n));
        for (s, t) in all_pairs(n) {
            if rng.gen_bool(density) {
                g.add_edge(s, t).unwrap();
            }
        }
        graphs += 1;
        chordal += usize::from(check_graph(&g)?);
    }
    Ok(format!(
        "{graphs} graphs ({exhaustive} connected on <= {EXHAUSTIVE_VERTICES} vertices, {RANDOM_GRAPHS} random on 7-8), {chordal} chordal, zero mismatches"
    ))
}

/// Partner search is sound and finds a partner exactly when one exists.
fn criterion_5(corpus: &[Instance]) -> Verdict {
    let (mut queries, mut found) = (0usize, 0usize);
    for (n, inst) in corpus.iter().enumerate() {
        let table = inst.table();
        let seps = decompositions(&inst.class, inst.schema.k());
        for i in table.cells() {
            let fast = find_partner(&table, i, &inst.class, &seps).unwrap();
            let brute = brute_partner(&table, i, &inst.class).unwrap();
            queries += 1;
            ensure(fast.is_some() == brute.is_some(), || {
                format!(
                    "instance {n}, cell {i}: search {} vs oracle {brute:?}",
                    fast.is_some()
                )
            })?;
            if let Some((p, after)) = fast {
                let report = verify_preservation(&table, &after, &inst.class).unwrap();
                ensure(report.passed(), || {
                    format!(
                        "instance {n}, cell {i}: swap with {} moved a margin",
                        p.plan.j()
                    )
                })?;
                found += 1;
            }
        }
    }
    Ok(format!(
        "{queries} queries, {found} partners found, zero mismatches"
    ))
}

/// Swap to move and back, up to exchanging E with its complement.
fn criterion_6() -> Verdict {
    let mut rng = StdRng::seed_from_u64(CORPUS_SEED ^ 0x6);
    let mut done = 0;
    let mut tries = 0;
    while done < ROUND_TRIPS {
        tries += 1;
        ensure(tries < 100 * ROUND_TRIPS, || {
            "could not sample enough plans".into()
        })?;
        let inst = random_instance(&mut rng);
        let k = inst.schema.k();
        let n = inst.cells.len();
        let (i, j) = (
            &inst.cells[rng.gen_range(0..n)],
            &inst.cells[rng.gen_range(0..n)],
        );
        let e = VarSet::from_bits(rng.gen_range(1..VarSet::full(k).bits()));
        let Ok(plan) = SwapPlan::new(i.clone(), j.clone(), e) else {
            continue;
        };
        if !plan.fixes_all(&inst.class) {
            continue;
        }
        // One-way margins are fixed by every swap, so adding them only
        // completes the cover.
        let covering = GeneratingClass::new(
            inst.class
                .members()
                .iter()
                .copied()
                .chain((0..k).map(VarSet::singleton)),
        )
        .unwrap();
        let m = swap_to_move(&plan);
        let back = move_to_swap(&m, &covering).map_err(|err| format!("{plan:?}: {err}"))?;
        // Outside the difference set E has no effect.
        let delta = i.differing(j);
        let (e, ec) = (e.intersection(delta), delta.difference(e));
        let mut got = [back.into_i().clone(), back.into_j().clone()];
        let mut want = [plan.into_i().clone(), plan.into_j().clone()];
        got.sort();
        want.sort();
        ensure(
            got == want && (back.swap_vars() == e || back.swap_vars() == ec),
            || format!("{plan:?} came back as {back:?}"),
        )?;
        let table = inst.table();
        let via_move = m
            .to_move(inst.schema.clone())
            .unwrap()
            .apply(&table)
            .unwrap();
        ensure(via_move == apply_swap(&table, &plan).unwrap(), || {
            format!("{plan:?}: move and swap give different tables")
        })?;
        done += 1;
    }
    Ok(format!(
        "{done} plans round-tripped, move and swap tables equal"
    ))
}

/// Chain-of-cliques data at survey scale.
fn criterion_7() -> Verdict {
    let spec = ChainSpec {
        records: SCALE_RECORDS,
        vars: SCALE_VARS,
        max_levels: SCALE_MAX_LEVELS,
        seed: CORPUS_SEED,
    };
    let (codebook, cells) = chain_data(&spec);
    let class = chain_class(SCALE_VARS);
    ensure(
        class.is_decomposable() && (3..=4).contains(&class.members().len()),
        || "scale class is not a decomposable chain of 3-4 cliques".into(),
    )?;

    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let d = dir.path();
    fs::write(d.join("data.csv"), to_csv(&codebook, &cells)).unwrap();
    fs::write(d.join("schema.json"), codebook.to_json()).unwrap();
    fs::write(
        d.join("margins.json"),
        swapsafe::margins::margins_to_json(&class, &codebook),
    )
    .unwrap();

    let table = ContingencyTable::from_cells(codebook.schema().unwrap(), cells).unwrap();
    let uniques = table.sample_uniques();
    let first_unique_row = {
        let mut data_cb = codebook.clone();
        let text = fs::read_to_string(d.join("data.csv")).unwrap();
        let data = load_microdata(&text, &mut data_cb, b',').unwrap();
        data.first_row_in(&uniques[0], None).unwrap()
    };
    let row = first_unique_row.to_string();
    let start = Instant::now();
    let (code, _) = cli(
        d,
        &[
            "--data",
            "data.csv",
            "--schema",
            "schema.json",
            "--margins",
            "margins.json",
            "find",
            "--cell",
            &row,
            "--out",
            "out.csv",
        ],
    );
    let cli_time = start.elapsed();
    ensure(code == 0 || code == 1, || format!("find exited {code}"))?;
    ensure(cli_time < SCALE_PER_RECORD, || {
        format!("one find took {cli_time:?}")
    })?;

    let start = Instant::now();
    let seps = decompositions(&class, SCALE_VARS);
    let search = PartnerSearch::new(&table, &class, &seps).unwrap();
    let mut slowest = Duration::ZERO;
    let mut found = 0;
    for i in &uniques {
        let t = Instant::now();
        let p = search.find(i).unwrap();
        slowest = slowest.max(t.elapsed());
        if let Some(p) = p {
            debug_assert!(p.plan.fixes_all(&class));
            found += 1;
        }
    }
    let sweep = start.elapsed();
    ensure(slowest < SCALE_PER_RECORD, || {
        format!("slowest record took {slowest:?}")
    })?;
    ensure(sweep < SCALE_SWEEP, || format!("sweep took {sweep:?}"))?;
    Ok(format!(
        "{} uniques of {SCALE_RECORDS}, {found} with partner; CLI find {cli_time:?}, slowest {slowest:?}, sweep {sweep:?}",
        uniques.len()
    ))
}

fn main() {
    let corpus = corpus();
    let criteria: [Criterion; 7] = [
        ("two-record fixture", Box::new(criterion_1)),
        ("all two-way margins fixture", Box::new(criterion_2)),
        ("oracle equivalence", Box::new(|| criterion_3(&corpus))),
        ("separator enumeration", Box::new(criterion_4)),
        ("partner search", Box::new(|| criterion_5(&corpus))),
        ("swap/move round trip", Box::new(criterion_6)),
        ("scale", Box::new(criterion_7)),
    ];
    let mut failed = 0;
    for (n, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} ({name}): PASS: {detail}", n + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL: {detail}", n + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
