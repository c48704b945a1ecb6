//! Output rendering shared by every command.

use serde_json::Value;

use crate::config::OutputMode;
use crate::error::CliError;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        Table {
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push<S: Into<String>>(&mut self, row: impl IntoIterator<Item = S>) {
        let row: Vec<String> = row.into_iter().map(Into::into).collect();
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    /// Space-aligned columns, header underlined.
    pub fn to_human(&self) -> String {
        let width = |i: usize| {
            self.rows
                .iter()
                .map(|r| r[i].chars().count())
                .chain(std::iter::once(self.headers[i].chars().count()))
                .max()
                .unwrap_or(0)
        };
        let widths: Vec<usize> = (0..self.headers.len()).map(width).collect();
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
                .collect();
            padded.join("  ").trim_end().to_string()
        };
        let mut out = line(&self.headers);
        out.push('\n');
        let rule: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
        out.push_str(&rule.join("  "));
        out.push('\n');
        for row in &self.rows {
            out.push_str(&line(row));
            out.push('\n');
        }
        out
    }

    pub fn to_csv(&self) -> Result<String, CliError> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.headers)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| CliError::Csv(e.into_error().into()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// What a command produced, before an output mode is chosen.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    /// Lines printed above the table in human mode.
    pub summary: Vec<String>,
    pub table: Table,
    /// Lines printed below the table in human mode.
    pub notes: Vec<String>,
    pub json: Value,
}

impl Report {
    pub fn render(&self, mode: OutputMode) -> Result<String, CliError> {
        match mode {
            OutputMode::Human => {
                let mut out = String::new();
                for line in &self.summary {
                    out.push_str(line);
                    out.push('\n');
                }
                if !self.table.rows.is_empty() {
                    if !self.summary.is_empty() {
                        out.push('\n');
                    }
                    out.push_str(&self.table.to_human());
                }
                if !self.notes.is_empty() {
                    out.push('\n');
                    for line in &self.notes {
                        out.push_str(line);
                        out.push('\n');
                    }
                }
                Ok(out)
            }
            OutputMode::Json => {
                let mut text = serde_json::to_string_pretty(&self.json)?;
                text.push('\n');
                Ok(text)
            }
            OutputMode::Csv => self.table.to_csv(),
        }
    }
}
