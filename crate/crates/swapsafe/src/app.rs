//! Subcommand dispatch. [`run`] does all the work and returns the report,
//! a human summary and the exit status; the binary only prints them.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use swapsafe_core::oracle::{brute_partner, brute_swappable, SWAP_LIMIT};
use swapsafe_core::swap::all_witnesses;
use swapsafe_core::{
    apply_swap, check_pair, decompositions, fixes_marginal, verify_preservation, Cell,
    ContingencyTable, GeneratingClass, MarkovNote, MicrodataTable, Move, Normalized, PartnerSearch,
    SwapPlan, VarSet,
};

use crate::address::{resolve, Resolved};
use crate::codebook::Codebook;
use crate::data::{load_microdata, Dataset};
use crate::error::{AppError, Result};
use crate::margins::{margins_to_json, parse_margins, parse_move};
use crate::report::{MarginalEntry, MoveEntry, Names, OracleEntry, Report, UniqueEntry};
use crate::synth::{chain_class, chain_data, to_csv, ChainSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERDICT: i32 = 1;

#[derive(Debug, Parser)]
#[command(
    name = "swapsafe",
    version,
    about = "Marginal-preserving record swaps for categorical microdata"
)]
pub struct Cli {
    #[command(flatten)]
    pub inputs: Inputs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Inputs {
    /// Microdata file, one record per row.
    #[arg(long, global = true)]
    pub data: Option<PathBuf>,
    /// Schema JSON. Without it the data file must start with a header row.
    #[arg(long, global = true)]
    pub schema: Option<PathBuf>,
    /// Generating class JSON, e.g. [["age","occupation"],["sex"]].
    #[arg(long, global = true)]
    pub margins: Option<PathBuf>,
    /// Field delimiter of data files.
    #[arg(long, global = true, default_value_t = ',')]
    pub delimiter: char,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// List sample-unique records.
    Uniques,
    /// List minimal separators of the generated graph and their components.
    Separators,
    /// Decide whether two records can swap without moving a protected margin.
    Check {
        /// Record address: row number, row:N, idx:a,b,.. or a label tuple.
        #[arg(long)]
        record_a: String,
        /// Second record, addressed the same way.
        #[arg(long)]
        record_b: String,
        /// Report every separator witness.
        #[arg(long)]
        all: bool,
        /// Cross-check against exhaustive search.
        #[arg(long)]
        oracle: bool,
    },
    /// Find a swap partner for a record and perform the swap.
    Find {
        /// Record address: row number, row:N, idx:a,b,.. or a label tuple.
        #[arg(long)]
        cell: String,
        /// Where to write the swapped data.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to write the schema with every category pinned.
        #[arg(long)]
        schema_out: Option<PathBuf>,
        /// Report one partner per separator triple.
        #[arg(long)]
        all: bool,
        /// Cross-check against exhaustive search.
        #[arg(long)]
        oracle: bool,
    },
    /// Swap the given variables between two records.
    Swap {
        /// Record address: row number, row:N, idx:a,b,.. or a label tuple.
        #[arg(long)]
        cell_i: String,
        /// Second record, addressed the same way.
        #[arg(long)]
        cell_j: String,
        /// Variables to exchange, by name or 1-based position.
        #[arg(long)]
        vars: String,
        /// Where to write the swapped data.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Where to write the schema with every category pinned.
        #[arg(long)]
        schema_out: Option<PathBuf>,
    },
    /// Compare protected margins of two data files.
    Verify {
        /// Original data file.
        #[arg(long)]
        before: PathBuf,
        /// Released data file.
        #[arg(long)]
        after: PathBuf,
        /// Move JSON expected to equal after minus before.
        #[arg(long = "move")]
        move_file: Option<PathBuf>,
    },
    /// Write a synthetic data set with a decomposable chain of margins.
    Generate {
        /// Random seed.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of records.
        #[arg(long, default_value_t = 10_000)]
        records: usize,
        /// Number of variables.
        #[arg(long, default_value_t = 8)]
        vars: usize,
        /// Largest number of categories per variable.
        #[arg(long, default_value_t = 10)]
        max_levels: u32,
        /// Directory for data.csv, schema.json and margins.json.
        #[arg(long)]
        out_dir: PathBuf,
    },
}

#[derive(Debug)]
pub struct Outcome {
    pub report: Report,
    pub summary: Vec<String>,
    pub code: i32,
}

impl Outcome {
    fn new(report: Report, summary: Vec<String>, code: i32) -> Self {
        Outcome {
            report,
            summary,
            code,
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| AppError::io(path, e))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| AppError::io(path, e))
}

fn delimiter(inputs: &Inputs) -> Result<u8> {
    u8::try_from(inputs.delimiter)
        .ok()
        .filter(|b| b.is_ascii())
        .ok_or_else(|| AppError::Usage("delimiter must be a single ASCII character".into()))
}

/// Codebook from `--schema`, or from the header row of `data`.
fn codebook_for(inputs: &Inputs, data: &str) -> Result<Codebook> {
    if let Some(path) = &inputs.schema {
        return Codebook::from_json(&read(path)?);
    }
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .delimiter(delimiter(inputs)?)
        .from_reader(data.as_bytes());
    match reader.records().next() {
        Some(Ok(header)) => Codebook::from_names(header.iter()),
        Some(Err(e)) => Err(AppError::Data(e.to_string())),
        None => Err(AppError::NoRecords),
    }
}

struct Context {
    codebook: Codebook,
    data: Dataset,
    table: ContingencyTable,
    notices: Vec<String>,
}

fn load(inputs: &Inputs) -> Result<Context> {
    let path = inputs
        .data
        .as_deref()
        .ok_or_else(|| AppError::Usage("--data is required".into()))?;
    let text = read(path)?;
    let mut codebook = codebook_for(inputs, &text)?;
    let data = load_microdata(&text, &mut codebook, delimiter(inputs)?)?;
    let table = data.table.to_contingency();
    Ok(Context {
        codebook,
        data,
        table,
        notices: Vec::new(),
    })
}

fn margins(
    inputs: &Inputs,
    codebook: &Codebook,
    notices: &mut Vec<String>,
) -> Result<Option<GeneratingClass>> {
    let Some(path) = &inputs.margins else {
        return Ok(None);
    };
    let Normalized {
        class,
        dropped,
        uncovered,
    } = parse_margins(&read(path)?, codebook)?;
    let names = Names(codebook);
    for d in dropped {
        notices.push(format!(
            "margin {} lies inside another and was dropped",
            names.brace(d)
        ));
    }
    if !uncovered.is_empty() {
        notices.push(format!(
            "variables {} are in no protected margin and swap freely",
            names.brace(uncovered)
        ));
    }
    Ok(Some(class))
}

fn required_margins(
    inputs: &Inputs,
    codebook: &Codebook,
    notices: &mut Vec<String>,
) -> Result<GeneratingClass> {
    margins(inputs, codebook, notices)?
        .ok_or_else(|| AppError::Usage("--margins is required".into()))
}

/// Protected margins, or every one-way margin when none are given.
fn margins_or_singletons(
    inputs: &Inputs,
    codebook: &Codebook,
    notices: &mut Vec<String>,
) -> Result<GeneratingClass> {
    match margins(inputs, codebook, notices)? {
        Some(c) => Ok(c),
        None => {
            notices.push("no --margins given; checking one-way margins".into());
            Ok(GeneratingClass::new(
                (0..codebook.k()).map(VarSet::singleton),
            )?)
        }
    }
}

fn note_resolution(r: &Resolved, notices: &mut Vec<String>) {
    if let Some(n) = &r.notice {
        notices.push(n.clone());
    }
}

fn occupied_row(r: &Resolved, what: &str) -> Result<usize> {
    r.row
        .ok_or_else(|| AppError::Usage(format!("{what} matches no record in the data")))
}

/// Cells written to the rows of `i` and `j`: each record takes the other's
/// values on the swapped variables.
fn swapped(plan: &SwapPlan) -> (Cell, Cell) {
    (plan.into_j().clone(), plan.into_i().clone())
}

pub fn run(cli: &Cli) -> Result<Outcome> {
    match &cli.command {
        Command::Uniques => uniques(&cli.inputs),
        Command::Separators => separators(&cli.inputs),
        Command::Check {
            record_a,
            record_b,
            all,
            oracle,
        } => check(&cli.inputs, record_a, record_b, *all, *oracle),
        Command::Find {
            cell,
            out,
            schema_out,
            all,
            oracle,
        } => find(
            &cli.inputs,
            cell,
            out.as_deref(),
            schema_out.as_deref(),
            *all,
            *oracle,
        ),
        Command::Swap {
            cell_i,
            cell_j,
            vars,
            out,
            schema_out,
        } => swap(
            &cli.inputs,
            cell_i,
            cell_j,
            vars,
            out.as_deref(),
            schema_out.as_deref(),
        ),
        Command::Verify {
            before,
            after,
            move_file,
        } => verify(&cli.inputs, before, after, move_file.as_deref()),
        Command::Generate {
            seed,
            records,
            vars,
            max_levels,
            out_dir,
        } => generate(*seed, *records, *vars, *max_levels, out_dir),
    }
}

fn uniques(inputs: &Inputs) -> Result<Outcome> {
    let ctx = load(inputs)?;
    let names = Names(&ctx.codebook);
    let list: Vec<UniqueEntry> = ctx
        .table
        .sample_uniques()
        .iter()
        .map(|c| UniqueEntry {
            row: ctx
                .data
                .first_row_in(c, None)
                .expect("unique cells are occupied"),
            cell: names.cell(c),
        })
        .collect();
    let summary = vec![format!(
        "{} of {} records are sample unique",
        list.len(),
        ctx.data.table.len()
    )];
    let report = Report {
        command: "uniques".into(),
        uniques: Some(list),
        ..Report::default()
    };
    Ok(Outcome::new(report, summary, EXIT_OK))
}

fn separators(inputs: &Inputs) -> Result<Outcome> {
    let ctx = load(inputs)?;
    let mut notices = ctx.notices;
    let class = required_margins(inputs, &ctx.codebook, &mut notices)?;
    let names = Names(&ctx.codebook);
    let seps = decompositions(&class, ctx.codebook.k());
    let note = MarkovNote::for_class(&class).message();
    let mut summary: Vec<String> = seps
        .iter()
        .map(|d| {
            let comps: Vec<String> = d.components.iter().map(|&c| names.brace(c)).collect();
            format!("S = {}: {}", names.brace(d.separator), comps.join(" | "))
        })
        .collect();
    if seps.is_empty() {
        summary.push("the generated graph is complete; no two records can swap".into());
    }
    summary.push(note.into());
    let report = Report {
        command: "separators".into(),
        separators: Some(seps.iter().map(|d| names.separator(d)).collect()),
        markov_note: Some(note.into()),
        notices,
        ..Report::default()
    };
    Ok(Outcome::new(report, summary, EXIT_OK))
}

fn check(inputs: &Inputs, a: &str, b: &str, all: bool, oracle: bool) -> Result<Outcome> {
    let ctx = load(inputs)?;
    let mut notices = ctx.notices;
    let class = required_margins(inputs, &ctx.codebook, &mut notices)?;
    let k = ctx.codebook.k();
    let names = Names(&ctx.codebook);
    let ra = resolve(a, &ctx.codebook, &ctx.data)?;
    let rb = resolve(b, &ctx.codebook, &ctx.data)?;
    note_resolution(&ra, &mut notices);
    note_resolution(&rb, &mut notices);
    let (i, j) = (&ra.cell, &rb.cell);

    let pair = check_pair(i, j, &class)?;
    let seps = decompositions(&class, k);
    let witnesses = all_witnesses(i, j, &class, &seps)?;
    let mut report = Report {
        command: "check".into(),
        delta_set: Some(names.set(pair.delta)),
        components: Some(names.sets(&pair.components)),
        cells_before: Some(names.cells([i, j])),
        markov_note: Some(MarkovNote::for_class(&class).message().into()),
        ..Report::default()
    };
    let mut summary = vec![
        format!("records {} and {}", names.tuple(i), names.tuple(j)),
        format!("difference set {}", names.brace(pair.delta)),
    ];

    let code = match pair.swap_vars {
        Some(e) => {
            let plan = SwapPlan::new(i.clone(), j.clone(), e)?;
            let (ni, nj) = swapped(&plan);
            report.verdict = Some("swappable".into());
            report.swap_vars = Some(names.set(e));
            report.cells_after = Some(names.cells([&ni, &nj]));
            report.marginal_checks = Some(
                class
                    .members()
                    .iter()
                    .map(|&d| {
                        Ok(MarginalEntry {
                            vars: names.set(d),
                            preserved: fixes_marginal(i, j, e, d)?,
                        })
                    })
                    .collect::<Result<Vec<_>>>()?,
            );
            if let Some(w) = witnesses.first() {
                report.separator = Some(names.set(w.separator));
                report.gamma_alpha = Some(names.set(w.gamma_alpha));
                report.gamma_beta = Some(names.set(w.gamma_beta));
            }
            summary.push(format!(
                "swappable: G_Δ̄ has {} components; swap E = {}",
                pair.components.len(),
                names.brace(e)
            ));
            EXIT_OK
        }
        None => {
            let reason = if pair.delta.is_empty() {
                "records identical"
            } else {
                "G_Δ̄ connected"
            };
            report.verdict = Some("not swappable".into());
            report.reason = Some(reason.into());
            summary.push(format!("not swappable: {reason}"));
            EXIT_VERDICT
        }
    };
    if all {
        report.witnesses = Some(witnesses.iter().map(|w| names.witness(w, None)).collect());
    }
    if oracle {
        if k > SWAP_LIMIT {
            notices.push(format!(
                "oracle skipped: {k} variables exceed its limit of {SWAP_LIMIT}"
            ));
        } else {
            let brute = brute_swappable(i, j, &class)?;
            let agrees = brute.is_some() == pair.swap_vars.is_some();
            summary.push(format!(
                "oracle {}",
                if agrees { "agrees" } else { "DISAGREES" }
            ));
            report.oracle = Some(OracleEntry {
                found: brute.is_some(),
                swap_vars: brute.map(|e| names.set(e)),
                partner: None,
                agrees,
            });
        }
    }
    report.notices = notices;
    Ok(Outcome::new(report, summary, code))
}

fn find(
    inputs: &Inputs,
    cell: &str,
    out: Option<&Path>,
    schema_out: Option<&Path>,
    all: bool,
    oracle: bool,
) -> Result<Outcome> {
    let ctx = load(inputs)?;
    let mut notices = ctx.notices;
    let class = required_margins(inputs, &ctx.codebook, &mut notices)?;
    let k = ctx.codebook.k();
    let names = Names(&ctx.codebook);
    let target = resolve(cell, &ctx.codebook, &ctx.data)?;
    note_resolution(&target, &mut notices);
    let row_i = occupied_row(&target, cell)?;
    let i = &target.cell;

    let seps = decompositions(&class, k);
    let search = PartnerSearch::new(&ctx.table, &class, &seps)?;
    let found = search.find(i)?;
    let mut report = Report {
        command: "find".into(),
        markov_note: Some(MarkovNote::for_class(&class).message().into()),
        ..Report::default()
    };
    let mut summary = vec![format!("record {row_i} {}", names.tuple(i))];

    let code = match &found {
        Some(p) => {
            let plan = &p.plan;
            let j = plan.j();
            let row_j = ctx
                .data
                .first_row_in(j, Some(row_i))
                .expect("partner cell is occupied");
            let after = apply_swap(&ctx.table, plan)?;
            let checks = verify_preservation(&ctx.table, &after, &class)?;
            let (ni, nj) = swapped(plan);
            report.verdict = Some("swapped".into());
            report.delta_set = Some(names.set(i.differing(j)));
            report.separator = Some(names.set(p.witness.separator));
            report.gamma_alpha = Some(names.set(p.witness.gamma_alpha));
            report.gamma_beta = Some(names.set(p.witness.gamma_beta));
            report.swap_vars = Some(names.set(plan.swap_vars()));
            report.cells_before = Some(names.cells([i, j]));
            report.cells_after = Some(names.cells([&ni, &nj]));
            report.rows = Some(vec![row_i, row_j]);
            report.marginal_checks = Some(names.checks(&checks.checks));
            summary.push(format!(
                "partner: record {row_j} {}, swap E = {} (S = {})",
                names.tuple(j),
                names.brace(plan.swap_vars()),
                names.brace(p.witness.separator)
            ));
            summary.push(format!(
                "after: {} and {}",
                names.tuple(&ni),
                names.tuple(&nj)
            ));
            if let Some(path) = out {
                let changes = BTreeMap::from([(row_i, ni), (row_j, nj)]);
                write(path, &ctx.data.rewrite(&ctx.codebook, &changes)?)?;
                report.output = Some(path.display().to_string());
                summary.push(format!("wrote {}", path.display()));
            }
            EXIT_OK
        }
        None => {
            report.verdict = Some("no partner".into());
            report.reason = Some("every diagonal subtable is empty".into());
            summary.push("no record can swap with it without moving a protected margin".into());
            EXIT_VERDICT
        }
    };
    if let Some(path) = schema_out {
        write(path, &ctx.codebook.to_json())?;
    }
    if all {
        let every = search.find_all(i)?;
        report.witnesses = Some(
            every
                .iter()
                .map(|p| names.witness(&p.witness, Some(p.plan.j())))
                .collect(),
        );
    }
    if oracle {
        if k > SWAP_LIMIT {
            notices.push(format!(
                "oracle skipped: {k} variables exceed its limit of {SWAP_LIMIT}"
            ));
        } else {
            let brute = brute_partner(&ctx.table, i, &class)?;
            let agrees = brute.is_some() == found.is_some();
            summary.push(format!(
                "oracle {}",
                if agrees { "agrees" } else { "DISAGREES" }
            ));
            report.oracle = Some(OracleEntry {
                found: brute.is_some(),
                swap_vars: brute.as_ref().map(|(_, e)| names.set(*e)),
                partner: brute.as_ref().map(|(c, _)| names.cell(c)),
                agrees,
            });
        }
    }
    report.notices = notices;
    Ok(Outcome::new(report, summary, code))
}

fn swap(
    inputs: &Inputs,
    cell_i: &str,
    cell_j: &str,
    vars: &str,
    out: Option<&Path>,
    schema_out: Option<&Path>,
) -> Result<Outcome> {
    let ctx = load(inputs)?;
    let mut notices = ctx.notices;
    let class = margins_or_singletons(inputs, &ctx.codebook, &mut notices)?;
    let names = Names(&ctx.codebook);
    let ri = resolve(cell_i, &ctx.codebook, &ctx.data)?;
    let rj = resolve(cell_j, &ctx.codebook, &ctx.data)?;
    note_resolution(&ri, &mut notices);
    note_resolution(&rj, &mut notices);
    let row_i = occupied_row(&ri, cell_i)?;
    let row_j = match rj.row {
        Some(r) if r != row_i => r,
        _ => ctx
            .data
            .first_row_in(&rj.cell, Some(row_i))
            .ok_or_else(|| AppError::Usage(format!("{cell_j} matches no other record")))?,
    };
    let e = ctx.codebook.parse_vars(vars)?;
    let plan = SwapPlan::new(ri.cell.clone(), rj.cell.clone(), e)
        .map_err(|err| AppError::Usage(err.to_string()))?;
    let after = apply_swap(&ctx.table, &plan)?;
    let checks = verify_preservation(&ctx.table, &after, &class)?;
    let (ni, nj) = swapped(&plan);

    let mut summary = vec![format!(
        "swapped {} between records {row_i} and {row_j}",
        names.brace(e)
    )];
    for d in checks.disturbed() {
        summary.push(format!("disturbed margin {}", names.brace(d)));
    }
    let passed = checks.passed();
    summary.push(if passed {
        "all protected margins preserved".into()
    } else {
        "some protected margins changed".into()
    });
    let mut report = Report {
        command: "swap".into(),
        verdict: Some(if passed { "preserved" } else { "disturbed" }.into()),
        delta_set: Some(names.set(ri.cell.differing(&rj.cell))),
        swap_vars: Some(names.set(e)),
        cells_before: Some(names.cells([&ri.cell, &rj.cell])),
        cells_after: Some(names.cells([&ni, &nj])),
        rows: Some(vec![row_i, row_j]),
        marginal_checks: Some(names.checks(&checks.checks)),
        ..Report::default()
    };
    if let Some(path) = out {
        let changes = BTreeMap::from([(row_i, ni), (row_j, nj)]);
        write(path, &ctx.data.rewrite(&ctx.codebook, &changes)?)?;
        report.output = Some(path.display().to_string());
    }
    if let Some(path) = schema_out {
        write(path, &ctx.codebook.to_json())?;
    }
    report.notices = notices;
    Ok(Outcome::new(
        report,
        summary,
        if passed { EXIT_OK } else { EXIT_VERDICT },
    ))
}

fn verify(
    inputs: &Inputs,
    before: &Path,
    after: &Path,
    move_file: Option<&Path>,
) -> Result<Outcome> {
    let before_text = read(before)?;
    let after_text = read(after)?;
    let mut codebook = codebook_for(inputs, &before_text)?;
    let delim = delimiter(inputs)?;
    let b = load_microdata(&before_text, &mut codebook, delim)?;
    let a = load_microdata(&after_text, &mut codebook, delim)?;
    // Labels first seen in the second file widen the schema of the first.
    let schema = codebook.schema()?;
    let rebuild = |t: &MicrodataTable| -> Result<ContingencyTable> {
        Ok(MicrodataTable::new(schema.clone(), t.records().to_vec())?.to_contingency())
    };
    let (tb, ta) = (rebuild(&b.table)?, rebuild(&a.table)?);
    let mut notices = Vec::new();
    let class = margins_or_singletons(inputs, &codebook, &mut notices)?;
    let names = Names(&codebook);
    let checks = verify_preservation(&tb, &ta, &class)?;
    let mut passed = checks.passed();

    let mut summary: Vec<String> = checks
        .checks
        .iter()
        .map(|c| {
            format!(
                "{} {}",
                names.brace(c.vars),
                if c.preserved { "equal" } else { "DIFFERS" }
            )
        })
        .collect();
    if tb.total() != ta.total() {
        summary.push(format!(
            "record counts differ: {} vs {}",
            tb.total(),
            ta.total()
        ));
    }
    let mut report = Report {
        command: "verify".into(),
        marginal_checks: Some(names.checks(&checks.checks)),
        ..Report::default()
    };
    if let Some(path) = move_file {
        let m = parse_move(&read(path)?, &codebook, &schema)?;
        let difference = Move::between(&tb, &ta)?;
        let entry = MoveEntry {
            is_move: m.is_move(&class),
            matches_difference: difference == m,
            degree: m.degree(),
        };
        summary.push(format!(
            "move of degree {}: {}, {}",
            entry.degree,
            if entry.is_move {
                "fixes the margins"
            } else {
                "changes a margin"
            },
            if entry.matches_difference {
                "equals after - before"
            } else {
                "differs from after - before"
            }
        ));
        passed &= entry.is_move && entry.matches_difference;
        report.move_check = Some(entry);
    }
    report.verdict = Some(if passed { "preserved" } else { "disturbed" }.into());
    report.notices = notices;
    Ok(Outcome::new(
        report,
        summary,
        if passed { EXIT_OK } else { EXIT_VERDICT },
    ))
}

fn generate(
    seed: u64,
    records: usize,
    vars: usize,
    max_levels: u32,
    out_dir: &Path,
) -> Result<Outcome> {
    if !(2..=64).contains(&vars) || records == 0 {
        return Err(AppError::Usage(
            "need 2..=64 variables and at least one record".into(),
        ));
    }
    let spec = ChainSpec {
        records,
        vars,
        max_levels,
        seed,
    };
    let (codebook, cells) = chain_data(&spec);
    let class = chain_class(vars);
    fs::create_dir_all(out_dir).map_err(|e| AppError::io(out_dir, e))?;
    let paths = [
        ("data.csv", to_csv(&codebook, &cells)),
        ("schema.json", codebook.to_json()),
        ("margins.json", margins_to_json(&class, &codebook)),
    ];
    let mut summary = Vec::new();
    for (name, text) in &paths {
        let path = out_dir.join(name);
        write(&path, text)?;
        summary.push(format!("wrote {}", path.display()));
    }
    let report = Report {
        command: "generate".into(),
        output: Some(out_dir.display().to_string()),
        ..Report::default()
    };
    Ok(Outcome::new(report, summary, EXIT_OK))
}
