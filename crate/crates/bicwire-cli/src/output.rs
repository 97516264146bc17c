//! Deterministic CSV/JSON writers (fixed float formatting, 17 significant
//! digits in CSV; LF line endings; UTF-8).

use std::io::Write;
use std::path::Path;

/// 17 significant digits, scientific; enough to round-trip any f64.
pub fn f17(x: f64) -> String {
    format!("{x:.16e}")
}

pub enum Sink {
    Stdout,
    File(std::fs::File),
}

impl Sink {
    pub fn open(path: Option<&Path>) -> std::io::Result<Self> {
        Ok(match path {
            None => Sink::Stdout,
            Some(p) => Sink::File(std::fs::File::create(p)?),
        })
    }

    pub fn write_all(&mut self, text: &str) -> std::io::Result<()> {
        match self {
            Sink::Stdout => {
                let mut out = std::io::stdout().lock();
                out.write_all(text.as_bytes())?;
                out.flush()
            }
            Sink::File(f) => {
                f.write_all(text.as_bytes())?;
                f.flush()
            }
        }
    }
}

/// Build a CSV document from a header and row cells.
pub fn csv(header: &str, rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut text = String::from(header);
    text.push('\n');
    for row in rows {
        text.push_str(&row.join(","));
        text.push('\n');
    }
    text
}
