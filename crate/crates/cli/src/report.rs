//! Command reports and their three renderings.

use std::fmt::Write as _;
use std::time::Duration;

use compat_lie_core::{Rational, Verdict, Witness};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessOut {
    pub condition: String,
    /// 1-based basis indices.
    pub args: Vec<usize>,
    pub residual: Vec<String>,
}

impl From<&Witness> for WitnessOut {
    fn from(w: &Witness) -> Self {
        WitnessOut {
            condition: w.condition.clone(),
            args: w.args.iter().map(|a| a + 1).collect(),
            residual: w.residual.iter().map(ToString::to_string).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerdictLine {
    pub check: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessOut>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Table {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub verdicts: Vec<VerdictLine>,
    pub tables: Vec<Table>,
    /// Wall time; shown in text output only.
    #[serde(skip)]
    pub elapsed: Option<Duration>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub fn join_rationals(v: &[Rational]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

impl Report {
    pub fn new(command: String) -> Self {
        Report {
            command,
            verdicts: Vec::new(),
            tables: Vec::new(),
            elapsed: None,
        }
    }

    pub fn verdict(&mut self, check: &str, v: &Verdict) -> bool {
        self.verdicts.push(VerdictLine {
            check: check.to_string(),
            ok: v.is_ok(),
            witness: v.witness().map(WitnessOut::from),
        });
        v.is_ok()
    }

    pub fn flag(&mut self, check: &str, ok: bool) -> bool {
        self.verdicts.push(VerdictLine {
            check: check.to_string(),
            ok,
            witness: None,
        });
        ok
    }

    pub fn all_ok(&self) -> bool {
        self.verdicts.iter().all(|v| v.ok)
    }

    pub fn render(&self, format: Format, verbose: bool) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Csv => self.render_csv(),
            Format::Text => self.render_text(verbose),
        }
    }

    fn render_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
        let io = "writing to memory";
        w.write_record(["command", &self.command]).expect(io);
        for v in &self.verdicts {
            let status = if v.ok { "ok" } else { "fail" };
            match &v.witness {
                None => w.write_record(["verdict", &v.check, status]).expect(io),
                Some(wit) => {
                    let args = wit.args.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ");
                    w.write_record(["verdict", &v.check, status, &wit.condition, &args, &wit.residual.join(" ")])
                        .expect(io)
                }
            }
        }
        for t in &self.tables {
            let mut header = vec!["table".to_string(), t.name.clone()];
            header.extend(t.columns.iter().cloned());
            w.write_record(&header).expect(io);
            for r in &t.rows {
                let mut rec = vec!["row".to_string(), t.name.clone()];
                rec.extend(r.iter().cloned());
                w.write_record(&rec).expect(io);
            }
        }
        String::from_utf8(w.into_inner().expect(io)).expect("csv output is UTF-8")
    }

    fn render_text(&self, verbose: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "$ {}", self.command);
        let width = self.verdicts.iter().map(|v| v.check.len()).max().unwrap_or(0);
        for v in &self.verdicts {
            let status = if v.ok { "ok" } else { "FAIL" };
            let _ = write!(out, "{:<width$}  {status}", v.check);
            if let Some(w) = &v.witness {
                let args = w.args.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
                let _ = write!(out, "  {} at ({args})", w.condition);
                if verbose {
                    let _ = write!(out, " residual [{}]", w.residual.join(", "));
                }
            }
            out.push('\n');
        }
        for t in &self.tables {
            let _ = writeln!(out, "\n{}", t.name);
            let mut widths: Vec<usize> = t.columns.iter().map(String::len).collect();
            for r in &t.rows {
                for (w, c) in widths.iter_mut().zip(r) {
                    *w = (*w).max(c.len());
                }
            }
            let line = |cells: &[String]| {
                cells
                    .iter()
                    .zip(&widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            let _ = writeln!(out, "  {}", line(&t.columns));
            for r in &t.rows {
                let _ = writeln!(out, "  {}", line(r));
            }
        }
        if let Some(e) = self.elapsed {
            let _ = writeln!(out, "\nelapsed {:.3} s", e.as_secs_f64());
        }
        out
    }
}
