//! Matrix files, report records and their JSON / CSV encodings.
//!
//! Matrix file: `{"p": 1, "q": 1, "entries": [[[re, im], …], …]}`, row
//! major, `(p+q)²` entries.

use std::io::Write;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::config::Suite;
use crate::checks::CheckReport;
use crate::error::{Error, Result};
use crate::model::{ComplexMatrix, PseudoHermitianMatrix, Signature, TOL_STRUCT};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub p: usize,
    pub q: usize,
    pub entries: Vec<Vec<[f64; 2]>>,
}

impl MatrixFile {
    pub fn from_matrix(a: &PseudoHermitianMatrix) -> Self {
        let m = a.matrix();
        let sig = a.signature();
        MatrixFile {
            p: sig.p(),
            q: sig.q(),
            entries: (0..m.nrows())
                .map(|r| (0..m.ncols()).map(|c| [m[(r, c)].re, m[(r, c)].im]).collect())
                .collect(),
        }
    }

    /// Checks shape and structure; the structural tolerance is relative to
    /// `max(1, ‖A‖_max)`.
    pub fn into_matrix(self) -> Result<PseudoHermitianMatrix> {
        let sig = Signature::new(self.p, self.q)?;
        let n = sig.n();
        if self.entries.len() != n || self.entries.iter().any(|row| row.len() != n) {
            let shape = self.entries.iter().map(Vec::len).collect::<Vec<_>>();
            return Err(Error::Schema(format!(
                "entries must be a {n}x{n} array for signature {sig}, got {} rows with lengths {shape:?}",
                self.entries.len()
            )));
        }
        let m = ComplexMatrix::from_fn(n, n, |r, c| {
            let [re, im] = self.entries[r][c];
            Complex64::new(re, im)
        });
        let scale = crate::model::max_abs(&m).max(1.0);
        PseudoHermitianMatrix::new(sig, m, TOL_STRUCT * scale)
    }
}

pub fn parse_matrix(text: &str) -> Result<PseudoHermitianMatrix> {
    let file: MatrixFile = serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
    file.into_matrix()
}

pub fn read_matrix(path: &Path) -> Result<PseudoHermitianMatrix> {
    let text = std::fs::read_to_string(path)?;
    parse_matrix(&text).map_err(|e| match e {
        Error::Schema(msg) => Error::Schema(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn matrix_to_json(a: &PseudoHermitianMatrix) -> String {
    serde_json::to_string_pretty(&MatrixFile::from_matrix(a)).expect("finite entries serialize")
}

pub fn write_matrix(path: &Path, a: &PseudoHermitianMatrix) -> Result<()> {
    std::fs::write(path, matrix_to_json(a) + "\n")?;
    Ok(())
}

/// One line of `reports.jsonl`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub suite: Suite,
    pub instance: u64,
    pub report: CheckReport,
}

/// One row of `reports.csv`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    pub suite: String,
    pub instance: u64,
    pub case_id: String,
    pub indices: String,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub margin: Option<f64>,
    pub pass: bool,
}

fn format_indices(indices: &[usize], partner: &[usize]) -> String {
    let join = |v: &[usize]| v.iter().map(usize::to_string).collect::<Vec<_>>().join(";");
    if partner.is_empty() {
        join(indices)
    } else {
        format!("{}|{}", join(indices), join(partner))
    }
}

impl ReportRecord {
    /// Rows for every case; a report that never ran yields one failing row
    /// carrying the reason as `case_id`.
    pub fn csv_rows(&self) -> Vec<CsvRow> {
        let suite = self.suite.name().to_string();
        if let Some(reason) = &self.report.failure {
            return vec![CsvRow {
                suite,
                instance: self.instance,
                case_id: format!("not run: {reason}"),
                indices: String::new(),
                lhs: None,
                rhs: None,
                margin: None,
                pass: false,
            }];
        }
        self.report
            .cases
            .iter()
            .map(|c| CsvRow {
                suite: suite.clone(),
                instance: self.instance,
                case_id: c.case_id.clone(),
                indices: format_indices(&c.indices, &c.partner),
                lhs: Some(c.lhs),
                rhs: Some(c.rhs),
                margin: Some(c.margin),
                pass: c.passed(),
            })
            .collect()
    }
}

/// Appends records to a report stream in the chosen format.
pub enum ReportSink<W: Write> {
    Json(W),
    Csv(Box<csv::Writer<W>>),
}

impl<W: Write> ReportSink<W> {
    pub fn json(w: W) -> Self {
        ReportSink::Json(w)
    }

    pub fn csv(w: W) -> Self {
        ReportSink::Csv(Box::new(csv::Writer::from_writer(w)))
    }

    pub fn write(&mut self, record: &ReportRecord) -> Result<()> {
        match self {
            ReportSink::Json(w) => {
                serde_json::to_writer(&mut *w, record)?;
                w.write_all(b"\n")?;
            }
            ReportSink::Csv(w) => {
                for row in record.csv_rows() {
                    w.serialize(row)?;
                }
            }
        }
        Ok(())
    }

    pub fn flush(&mut self) -> Result<()> {
        match self {
            ReportSink::Json(w) => w.flush()?,
            ReportSink::Csv(w) => w.flush()?,
        }
        Ok(())
    }
}
