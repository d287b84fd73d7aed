//! CSV writing, number formatting and file output.

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::{CliError, Result};

/// `v` with 17 significant digits, or `places` decimals when rounding is requested.
pub fn fmt_float(v: f64, round: Option<usize>) -> String {
    if let Some(places) = round {
        return orbitlab_core::scale::format_rounded(v, places);
    }
    if v == 0.0 || !v.is_finite() {
        return format!("{v}");
    }
    let e = v.abs().log10().floor() as i32;
    if (-5..17).contains(&e) {
        format!("{:.*}", (16 - e) as usize, v)
    } else {
        format!("{v:.16e}")
    }
}

/// Writes `bytes` to `path` through a temporary sibling and a rename, so readers
/// never see a partial file. `-` means standard output.
pub fn write_bytes(path: &Path, bytes: &[u8]) -> Result<()> {
    if path == Path::new("-") {
        let mut out = std::io::stdout().lock();
        return out
            .write_all(bytes)
            .and_then(|_| out.flush())
            .map_err(|e| CliError::io(path, e));
    }
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    let tmp = tmp_path(path);
    std::fs::write(&tmp, bytes).map_err(|e| CliError::io(&tmp, e))?;
    std::fs::rename(&tmp, path).map_err(|e| CliError::io(path, e))
}

fn tmp_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".tmp");
    path.with_file_name(name)
}

/// An in-memory CSV table, written in one piece.
pub struct Table {
    writer: csv::Writer<Vec<u8>>,
    rows: usize,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(header).expect("in-memory write");
        Table { writer, rows: 0 }
    }

    pub fn row<I, S>(&mut self, fields: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.writer.write_record(fields).expect("in-memory write");
        self.rows += 1;
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn into_bytes(self) -> Vec<u8> {
        self.writer.into_inner().expect("in-memory flush")
    }

    pub fn write(self, path: &Path) -> Result<()> {
        write_bytes(path, &self.into_bytes())
    }
}

/// Output format of an `--emit` path, from `--format` or the extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn resolve(path: &Path, explicit: Option<Format>) -> Format {
        explicit.unwrap_or_else(|| match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("json") => Format::Json,
            _ => Format::Csv,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formats() {
        assert_eq!(fmt_float(0.886_039_827_551_585_6, None), "0.88603982755158561");
        assert_eq!(fmt_float(1.5, None), "1.5000000000000000");
        assert_eq!(fmt_float(0.0, None), "0");
        assert_eq!(fmt_float(1e-9, None), "1.0000000000000001e-9");
        assert_eq!(fmt_float(0.886_04, Some(4)), "0.8860");
        assert_eq!(fmt_float(0.125, Some(2)), "0.12");
        for v in [0.123_456_789_012_345_67, 12_345.678_9, 3.0e-4] {
            assert_eq!(fmt_float(v, None).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn tables_and_formats() {
        let mut t = Table::new(&["n", "tau"]);
        t.row(["1", "1"]);
        t.row(["12", "6"]);
        assert_eq!(t.rows(), 2);
        assert_eq!(String::from_utf8(t.into_bytes()).unwrap(), "n,tau\n1,1\n12,6\n");
        assert_eq!(Format::resolve(Path::new("a/b.JSON"), None), Format::Json);
        assert_eq!(Format::resolve(Path::new("a/b.csv"), None), Format::Csv);
        assert_eq!(Format::resolve(Path::new("a/b.csv"), Some(Format::Json)), Format::Json);
    }
}
