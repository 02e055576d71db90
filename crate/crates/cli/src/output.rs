//! Record types and their CSV/JSON encodings.
//!
//! Every float is written with ten significant digits in scientific
//! notation, so output is byte-identical across runs and CSV parses back to
//! exactly the printed values.

use std::io::{Read, Write};

use clap::ValueEnum;
use rootscope_core::solvers::RootKind;
use serde::{Deserialize, Serialize};

use crate::error::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Positive,
    Negative,
    Nonreal,
}

impl From<RootKind> for Kind {
    fn from(k: RootKind) -> Self {
        match k {
            RootKind::Positive => Kind::Positive,
            RootKind::Negative => Kind::Negative,
            RootKind::NonReal => Kind::Nonreal,
        }
    }
}

/// One root, optionally with the approximant it is compared against.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub n: u32,
    pub root_re: f64,
    pub root_im: f64,
    pub kind: Kind,
    pub residual: f64,
    pub approx_value_re: Option<f64>,
    pub approx_value_im: Option<f64>,
    pub abs_deviation: Option<f64>,
}

/// CSV layout; the column names differ slightly from the record fields.
#[derive(Debug, Serialize, Deserialize)]
struct CsvRow {
    n: u32,
    kind: Kind,
    root_re: f64,
    root_im: f64,
    residual: f64,
    approx_re: Option<f64>,
    approx_im: Option<f64>,
    abs_deviation: Option<f64>,
}

pub const CSV_HEADER: [&str; 8] = [
    "n",
    "kind",
    "root_re",
    "root_im",
    "residual",
    "approx_re",
    "approx_im",
    "abs_deviation",
];

/// `x` in the fixed output format: ten significant digits, scientific.
pub fn sci(x: f64) -> String {
    format!("{x:.9e}")
}

/// `x` rounded to what [`sci`] prints.
pub fn rounded(x: f64) -> f64 {
    sci(x).parse().expect("formatted float parses")
}

fn opt(x: Option<f64>) -> String {
    x.map(sci).unwrap_or_default()
}

impl OutputRecord {
    /// The record as it reads back from printed output.
    pub fn rounded(&self) -> Self {
        OutputRecord {
            n: self.n,
            root_re: rounded(self.root_re),
            root_im: rounded(self.root_im),
            kind: self.kind,
            residual: rounded(self.residual),
            approx_value_re: self.approx_value_re.map(rounded),
            approx_value_im: self.approx_value_im.map(rounded),
            abs_deviation: self.abs_deviation.map(rounded),
        }
    }
}

fn kind_label(k: Kind) -> &'static str {
    match k {
        Kind::Positive => "positive",
        Kind::Negative => "negative",
        Kind::Nonreal => "nonreal",
    }
}

pub fn write_records(records: &[OutputRecord], format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(CSV_HEADER)?;
            for r in records {
                w.write_record([
                    r.n.to_string(),
                    kind_label(r.kind).to_string(),
                    sci(r.root_re),
                    sci(r.root_im),
                    sci(r.residual),
                    opt(r.approx_value_re),
                    opt(r.approx_value_im),
                    opt(r.abs_deviation),
                ])?;
            }
            w.flush()?;
        }
        Format::Json => {
            let rounded: Vec<OutputRecord> = records.iter().map(OutputRecord::rounded).collect();
            serde_json::to_writer_pretty(&mut *out, &rounded)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

/// Read records back from CSV produced by [`write_records`].
pub fn read_csv(input: impl Read) -> Result<Vec<OutputRecord>> {
    let mut reader = csv::Reader::from_reader(input);
    let mut records = Vec::new();
    for row in reader.deserialize::<CsvRow>() {
        let row = row?;
        records.push(OutputRecord {
            n: row.n,
            root_re: row.root_re,
            root_im: row.root_im,
            kind: row.kind,
            residual: row.residual,
            approx_value_re: row.approx_re,
            approx_value_im: row.approx_im,
            abs_deviation: row.abs_deviation,
        });
    }
    Ok(records)
}
