//! CSV emission with a header row and reals at 17 significant digits.

use std::io::{self, Write};

/// Scientific notation with 16 digits after the point (17 significant).
pub fn format_real(x: f64) -> String {
    format!("{x:.16e}")
}

/// A row type that knows its CSV header.
pub trait CsvRecord {
    fn header() -> &'static [&'static str];
    fn fields(&self) -> Vec<String>;
}

pub fn write_csv<W: Write, R: CsvRecord>(mut out: W, rows: &[R]) -> io::Result<()> {
    writeln!(out, "{}", R::header().join(","))?;
    for row in rows {
        writeln!(out, "{}", row.fields().join(","))?;
    }
    out.flush()
}

pub fn csv_string<R: CsvRecord>(rows: &[R]) -> String {
    let mut buf = Vec::new();
    write_csv(&mut buf, rows).expect("writing to memory cannot fail");
    String::from_utf8(buf).expect("CSV output is ASCII")
}
