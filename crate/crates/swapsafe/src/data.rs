//! Delimited microdata files.

use std::collections::BTreeMap;
use std::ops::Range;

use swapsafe_core::{Cell, MicrodataTable, Record};

use crate::codebook::Codebook;
use crate::error::{AppError, Result};

/// A loaded file together with what is needed to rewrite single rows.
#[derive(Debug, Clone)]
pub struct Dataset {
    pub table: MicrodataTable,
    source: String,
    delimiter: u8,
    /// Byte range of each data row, including its line ending.
    spans: Vec<Range<usize>>,
    /// Variable read from each column.
    columns: Vec<usize>,
    pub has_header: bool,
}

/// Reads `text` row by row. Record ids are 1-based data-row ordinals. The
/// first row is taken as a header when its fields are exactly the variable
/// names, in any order.
pub fn load_microdata(text: &str, codebook: &mut Codebook, delimiter: u8) -> Result<Dataset> {
    let k = codebook.k();
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .delimiter(delimiter)
        .from_reader(text.as_bytes());

    let mut starts = Vec::new();
    let mut rows: Vec<(u64, csv::StringRecord)> = Vec::new();
    let mut record = csv::StringRecord::new();
    loop {
        let ordinal = rows.len() + 1;
        match reader.read_record(&mut record) {
            Ok(true) => {}
            Ok(false) => break,
            Err(e) => {
                let line = e.position().map_or(0, |p| p.line());
                return Err(AppError::Csv {
                    row: ordinal,
                    line,
                    message: e.to_string(),
                });
            }
        }
        let pos = record.position().expect("reader tracks positions");
        // After a CRLF row the reader reports the next row as starting at '\n'.
        let at = pos.byte() as usize;
        let skipped = text[at..].len() - text[at..].trim_start_matches(['\r', '\n']).len();
        starts.push(at + skipped);
        rows.push((pos.line(), record.clone()));
    }

    let mut columns: Vec<usize> = (0..k).collect();
    let mut has_header = false;
    if let Some((_, first)) = rows.first() {
        let mapped: Option<Vec<usize>> = first.iter().map(|f| codebook.index_of(f)).collect();
        if let Some(mapped) = mapped {
            let mut sorted = mapped.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if mapped.len() == k && sorted.len() == k {
                columns = mapped;
                has_header = true;
            }
        }
    }

    let skip = usize::from(has_header);
    if rows.len() <= skip {
        return Err(AppError::NoRecords);
    }
    let mut spans = Vec::with_capacity(rows.len() - skip);
    let mut records = Vec::with_capacity(rows.len() - skip);
    for (n, (line, fields)) in rows.iter().enumerate().skip(skip) {
        let row = n + 1 - skip;
        if fields.len() != k {
            return Err(AppError::Arity {
                row,
                line: *line,
                expected: k,
                found: fields.len(),
            });
        }
        let mut coords = vec![0u32; k];
        for (col, label) in fields.iter().enumerate() {
            let var = columns[col];
            coords[var] = codebook
                .intern(var, label)
                .ok_or_else(|| AppError::UnknownLabel {
                    row,
                    line: *line,
                    var: codebook.name(var).to_owned(),
                    label: label.to_owned(),
                })?;
        }
        let end = starts.get(n + 1).copied().unwrap_or(text.len());
        spans.push(starts[n]..end);
        records.push(Record {
            id: row,
            cell: Cell::new(coords),
        });
    }
    let table = MicrodataTable::new(codebook.schema()?, records)?;
    Ok(Dataset {
        table,
        source: text.to_owned(),
        delimiter,
        spans,
        columns,
        has_header,
    })
}

impl Dataset {
    pub fn source(&self) -> &str {
        &self.source
    }

    /// Raw text of data row `row`, line ending included.
    pub fn row_text(&self, row: usize) -> &str {
        &self.source[self.spans[row - 1].clone()]
    }

    /// Lowest row ordinal whose record lies in `cell`, skipping `except`.
    pub fn first_row_in(&self, cell: &Cell, except: Option<usize>) -> Option<usize> {
        self.table
            .records()
            .iter()
            .find(|r| &r.cell == cell && Some(r.id) != except)
            .map(|r| r.id)
    }

    pub fn rows_in(&self, cell: &Cell) -> Vec<usize> {
        self.table
            .records()
            .iter()
            .filter(|r| &r.cell == cell)
            .map(|r| r.id)
            .collect()
    }

    /// The source text with the given rows replaced by new cells. Every other
    /// byte is copied unchanged.
    pub fn rewrite(&self, codebook: &Codebook, changes: &BTreeMap<usize, Cell>) -> Result<String> {
        let mut out = String::with_capacity(self.source.len());
        let mut at = 0;
        for (&row, cell) in changes {
            let span = self
                .spans
                .get(row.wrapping_sub(1))
                .ok_or_else(|| AppError::Data(format!("no row {row}")))?;
            out.push_str(&self.source[at..span.start]);
            let old = &self.source[span.clone()];
            let body = old.trim_end_matches(['\r', '\n']);
            out.push_str(&self.format_row(codebook, cell)?);
            out.push_str(&old[body.len()..]);
            at = span.end;
        }
        out.push_str(&self.source[at..]);
        Ok(out)
    }

    fn format_row(&self, codebook: &Codebook, cell: &Cell) -> Result<String> {
        let labels = codebook.cell_labels(cell);
        let mut w = csv::WriterBuilder::new()
            .delimiter(self.delimiter)
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(self.columns.iter().map(|&var| labels[var].as_str()))
            .map_err(|e| AppError::Data(e.to_string()))?;
        let bytes = w.into_inner().map_err(|e| AppError::Data(e.to_string()))?;
        let text = String::from_utf8(bytes).expect("labels are utf-8");
        Ok(text.trim_end_matches('\n').to_owned())
    }
}
