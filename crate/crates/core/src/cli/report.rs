//! Text and CSV rendering of decisions and summaries.

use std::io::{self, Write};

use crate::hyperspace::{Decision, ProbeTrace};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Csv,
}

/// Writes key/value lines (text) or a two-column table (CSV).
pub fn fields(out: &mut dyn Write, format: Format, rows: &[(&str, String)]) -> io::Result<()> {
    match format {
        Format::Text => {
            let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
            for (k, v) in rows {
                writeln!(out, "{k:<width$}  {v}")?;
            }
            Ok(())
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["key", "value"])?;
            for (k, v) in rows {
                w.write_record([*k, v.as_str()])?;
            }
            w.flush()
        }
    }
}

/// A decision with its per-probe traces.
///
/// Text output shows each probe's head and tail maxima and the tail-quarter
/// table; CSV output lists every sampled value as `section,probe,index,value,bound`.
pub fn decision(out: &mut dyn Write, format: Format, title: &str, d: &Decision) -> io::Result<()> {
    match format {
        Format::Text => {
            writeln!(out, "{title}: {}", d.verdict)?;
            for t in &d.traces {
                text_trace(out, t)?;
            }
            if let Some(w) = &d.witness {
                writeln!(
                    out,
                    "  witness: {} at index {}, value {:.6e}",
                    w.probe, w.index, w.value
                )?;
            }
            Ok(())
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["section", "probe", "index", "value", "bound"])?;
            for t in &d.traces {
                let probe = t.probe.to_string();
                for (i, v) in t.indexed() {
                    w.write_record([
                        title,
                        &probe,
                        &i.to_string(),
                        &v.to_string(),
                        &t.bound.to_string(),
                    ])?;
                }
            }
            w.write_record([title, "verdict", "", &d.verdict.to_string(), ""])?;
            w.flush()
        }
    }
}

fn text_trace(out: &mut dyn Write, t: &ProbeTrace) -> io::Result<()> {
    writeln!(
        out,
        "  probe {}: head max {:.6e}, tail max {:.6e}, bound {:e}",
        t.probe, t.head_max, t.tail_max, t.bound
    )?;
    let quarter = t.values.len().div_ceil(4).min(t.values.len());
    writeln!(out, "    {:>6}  {:>14}  {:>10}", "index", "value", "bound")?;
    for (i, v) in t.indexed().skip(t.values.len() - quarter) {
        writeln!(out, "    {i:>6}  {v:>14.6e}  {:>10e}", t.bound)?;
    }
    Ok(())
}

/// One row per property of a check suite.
#[derive(Debug, Clone, PartialEq)]
pub struct PropertyRow {
    pub suite: &'static str,
    pub property: String,
    pub passed: usize,
    pub total: usize,
}

impl PropertyRow {
    pub fn ok(&self) -> bool {
        self.passed == self.total
    }
}

pub fn properties(out: &mut dyn Write, format: Format, rows: &[PropertyRow]) -> io::Result<()> {
    match format {
        Format::Text => {
            let width = rows.iter().map(|r| r.property.len()).max().unwrap_or(0);
            for r in rows {
                let status = if r.ok() { "pass" } else { "FAIL" };
                writeln!(
                    out,
                    "{:<18} {:<width$}  {:>3}/{:<3} {status}",
                    r.suite, r.property, r.passed, r.total
                )?;
            }
            let ok = rows.iter().filter(|r| r.ok()).count();
            writeln!(out, "{ok}/{} properties pass", rows.len())
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["suite", "property", "passed", "total", "status"])?;
            for r in rows {
                let status = if r.ok() { "pass" } else { "fail" };
                w.write_record([
                    r.suite,
                    &r.property,
                    &r.passed.to_string(),
                    &r.total.to_string(),
                    status,
                ])?;
            }
            w.flush()
        }
    }
}
