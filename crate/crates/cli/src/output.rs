//! Output rendering shared by the subcommands: human tables, JSON lines,
//! and CSV with exactly the documented column sets.

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    /// Human-readable aligned columns.
    Table,
    /// One JSON object per row (a single object for verify reports).
    Json,
    /// Comma-separated values with a header row.
    Csv,
}

/// Left-aligned columns separated by two spaces, no trailing whitespace.
pub fn render_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let emit = |out: &mut String, cells: &[String]| {
        let last = cells.len() - 1;
        for (i, cell) in cells.iter().enumerate() {
            if i < last {
                out.push_str(&format!("{cell:<width$}  ", width = widths[i]));
            } else {
                out.push_str(cell);
            }
        }
        out.push('\n');
    };
    let headers: Vec<String> = headers.iter().map(|h| h.to_string()).collect();
    emit(&mut out, &headers);
    for row in rows {
        emit(&mut out, row);
    }
    out
}

/// One CSV line. The column values here never contain commas, quotes, or
/// newlines (indices, decimal digits, mode names, ';'-joined digit lists),
/// so no quoting is needed.
pub fn csv_line(fields: &[String]) -> String {
    debug_assert!(fields.iter().all(|f| !f.contains([',', '"', '\n', '\r'])));
    fields.join(",")
}
