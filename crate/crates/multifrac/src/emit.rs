//! Artifact emission. Every table goes out as CSV with a header row
//! and a '#'-prefixed metadata trailer; every float is printed with
//! 17 significant digits so a reader can reconstruct the exact bits.
//! Non-finite values are refused at push time: a NaN in a cell means
//! the computation failed and the caller must exit nonzero instead of
//! shipping it.

use crate::error::{Error, Result};
use std::fmt::Write as _;

pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Clone, Debug)]
pub struct CsvDoc {
    header: String,
    columns: usize,
    rows: Vec<String>,
    meta: Vec<(String, String)>,
}

impl CsvDoc {
    pub fn new(columns: &[&str]) -> CsvDoc {
        CsvDoc {
            header: columns.join(","),
            columns: columns.len(),
            rows: Vec::new(),
            meta: Vec::new(),
        }
    }

    pub fn push_row(&mut self, values: &[f64]) -> Result<()> {
        if values.len() != self.columns {
            return Err(Error::invalid(format!(
                "row has {} cells, header has {}",
                values.len(),
                self.columns
            )));
        }
        if let Some(bad) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::numerical(format!(
                "non-finite value {bad} refused by the emitter"
            )));
        }
        let row = values.iter().map(|v| fmt_float(*v)).collect::<Vec<_>>().join(",");
        self.rows.push(row);
        Ok(())
    }

    pub fn meta(&mut self, key: &str, value: impl AsRef<str>) {
        self.meta.push((key.to_string(), value.as_ref().to_string()));
    }

    pub fn meta_float(&mut self, key: &str, value: f64) {
        self.meta.push((key.to_string(), fmt_float(value)));
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.header);
        out.push('\n');
        for row in &self.rows {
            out.push_str(row);
            out.push('\n');
        }
        for (k, v) in &self.meta {
            let _ = writeln!(out, "# {k}: {v}");
        }
        out
    }
}

/// Standard metadata block: tool version, config digest, and the
/// measure normalization convention, identical across all artifacts.
pub fn stamp_standard_meta(doc: &mut CsvDoc, config_hash: &str) {
    doc.meta("tool_version", env!("CARGO_PKG_VERSION"));
    doc.meta("config_hash", config_hash);
    doc.meta(
        "normalization",
        "cylinder masses use the potential shifted to zero pressure; \
         pressure and spectrum axes use the potential as given",
    );
}
