use std::io::Write;

use serde::Serialize;

use crate::args::Format;
use crate::report::Report;
use crate::CliError;

fn io_err(e: impl std::fmt::Display) -> CliError {
    CliError::Output(e.to_string())
}

fn write_csv<R: Serialize>(out: &mut dyn Write, rows: &[R], footer: &[(&str, String)]) -> Result<(), CliError> {
    {
        let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(&mut *out);
        for row in rows {
            w.serialize(row).map_err(io_err)?;
        }
        w.flush().map_err(io_err)?;
    }
    for (key, value) in footer {
        writeln!(out, "# {key}={value}").map_err(io_err)?;
    }
    Ok(())
}

fn write_json<T: Serialize>(out: &mut dyn Write, doc: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, doc).map_err(io_err)?;
    writeln!(out).map_err(io_err)
}

/// Writes `report` in the requested format. Tail output is always plain text.
pub fn render(report: &Report, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    match (report, format) {
        (Report::Tail(text), _) => writeln!(out, "{text}").map_err(io_err),
        (Report::Count(row), Format::Csv) => write_csv(out, std::slice::from_ref(row), &[]),
        (Report::Count(row), Format::Json) => write_json(out, row),
        (Report::Scan(t), Format::Csv) => write_csv(
            out,
            &t.rows,
            &[
                ("sequence", t.sequence.clone()),
                ("target_constant", t.target_constant.to_string()),
                ("y_d", t.y_d.to_string()),
                ("baseline_density", t.baseline_density.to_string()),
            ],
        ),
        (Report::Scan(t), Format::Json) => write_json(out, t),
        (Report::Discrepancy(row), Format::Csv) => write_csv(out, std::slice::from_ref(row), &[]),
        (Report::Discrepancy(row), Format::Json) => write_json(out, row),
        (Report::Benford(t), Format::Csv) => write_csv(
            out,
            &t.rows,
            &[
                ("source", t.source.clone()),
                ("N", t.n.to_string()),
                ("max_abs_gap", t.max_abs_gap.to_string()),
                ("log_discrepancy", t.log_discrepancy.to_string()),
            ],
        ),
        (Report::Benford(t), Format::Json) => write_json(out, t),
        (Report::Limits(t), Format::Csv) => write_csv(
            out,
            &t.rows,
            &[("baseline_density", t.baseline_density.to_string()), ("y_limit", t.y_limit.to_string())],
        ),
        (Report::Limits(t), Format::Json) => write_json(out, t),
    }
}
