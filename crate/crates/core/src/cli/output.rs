//! CSV rendering and all-or-nothing file output.

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::error::Result;

/// Shortest round-trip representation.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:?}")
}

/// Renders a header and rows as CSV text (LF line endings).
pub fn render_csv(header: &[&str], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| std::io::Error::other(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// Writes every file or none: all contents are staged in temporary files in
/// the target directory and only renamed into place once all are written.
pub fn write_all_atomic(dir: &Path, files: &[(&str, String)]) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut staged = Vec::with_capacity(files.len());
    for (name, content) in files {
        let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
        tmp.write_all(content.as_bytes())?;
        tmp.flush()?;
        staged.push((tmp, dir.join(name)));
    }
    let mut out = Vec::with_capacity(staged.len());
    for (tmp, path) in staged {
        tmp.persist(&path).map_err(|e| e.error)?;
        out.push(path);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_round_trips() {
        for v in [0.25, 1.0, 0.1 + 0.2, 1e-300, 0.0] {
            assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn csv_has_header_and_lf() {
        let s = render_csv(&["a", "b"], &[vec!["1".into(), "x,y".into()]]).unwrap();
        assert_eq!(s, "a,b\n1,\"x,y\"\n");
    }

    #[test]
    fn atomic_write_creates_files() {
        let dir = tempfile::tempdir().unwrap();
        let paths = write_all_atomic(
            dir.path(),
            &[("a.csv", "x\n".into()), ("b.csv", "y\n".into())],
        )
        .unwrap();
        assert_eq!(std::fs::read_to_string(&paths[1]).unwrap(), "y\n");
        assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2);
    }
}
