//! Tabular reports: CSV with a `#` metadata header, a JSON mirror, parsing
//! back, merging, and plot-script emission.
//!
//! Floats are written with Rust's shortest round-trip formatting, so a report
//! is a pure function of its inputs.

use std::fmt;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use crate::error::{QdlError, Result};
use crate::tolerances::BANDS;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Int(v) => write!(f, "{v}"),
            Cell::Float(v) => write!(f, "{v}"),
            Cell::Text(v) => f.write_str(v),
            Cell::Bool(v) => write!(f, "{v}"),
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl Cell {
    fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) if v.is_finite() => json!(v),
            Cell::Float(v) => json!(v.to_string()),
            Cell::Text(v) => json!(v),
            Cell::Bool(v) => json!(v),
        }
    }
}

/// Joins list values with `;` so they fit in one CSV field.
pub fn join_list(xs: &[f64]) -> String {
    xs.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(";")
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub kind: String,
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Report {
    pub fn new(kind: &str, columns: &[&str]) -> Self {
        Self {
            kind: kind.to_string(),
            meta: vec![
                ("tool".into(), format!("qdl {}", env!("CARGO_PKG_VERSION"))),
                ("kind".into(), kind.to_string()),
            ],
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl fmt::Display) -> &mut Self {
        self.meta.push((key.to_string(), value.to_string()));
        self
    }

    pub fn meta_value(&self, key: &str) -> Option<&str> {
        self.meta.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => Ok(self.to_json()),
        }
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut out = String::new();
        for (k, v) in &self.meta {
            out.push_str(&format!("# {k} = {v}\n"));
        }
        for b in BANDS {
            out.push_str(&format!("# band.{} = {}\n", b.name, b.value));
        }
        let mut w = csv::WriterBuilder::new().from_writer(Vec::new());
        w.write_record(&self.columns).map_err(csv_err)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.to_string())).map_err(csv_err)?;
        }
        let body = w.into_inner().map_err(|e| QdlError::Io(e.to_string()))?;
        out.push_str(&String::from_utf8(body).map_err(|e| QdlError::Io(e.to_string()))?);
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        let v = json!({
            "meta": self.meta.iter().map(|(k, v)| json!([k, v])).collect::<Vec<_>>(),
            "tolerances": BANDS.iter().map(|b| json!({"name": b.name, "value": b.value, "meaning": b.meaning})).collect::<Vec<_>>(),
            "columns": self.columns,
            "rows": self.rows.iter().map(|r| r.iter().map(Cell::to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
        });
        let mut s = serde_json::to_string_pretty(&v).expect("report JSON is serialisable");
        s.push('\n');
        s
    }

    pub fn write(&self, path: &Path, format: Format) -> Result<()> {
        std::fs::write(path, self.render(format)?)?;
        Ok(())
    }

    /// Position of a column by name.
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }
}

fn csv_err(e: csv::Error) -> QdlError {
    QdlError::Io(e.to_string())
}

/// A report read back from CSV; every cell is kept as text.
#[derive(Debug, Clone, PartialEq)]
pub struct ParsedReport {
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl ParsedReport {
    pub fn kind(&self) -> Option<&str> {
        self.meta.iter().find(|(k, _)| k == "kind").map(|(_, v)| v.as_str())
    }
}

pub fn parse_csv(text: &str) -> Result<ParsedReport> {
    let mut meta = Vec::new();
    for line in text.lines().take_while(|l| l.starts_with('#')) {
        if let Some((k, v)) = line[1..].split_once('=') {
            meta.push((k.trim().to_string(), v.trim().to_string()));
        }
    }
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .flexible(true)
        .from_reader(text.as_bytes());
    let parse_err = |e: csv::Error| {
        let line = e.position().map(|p| p.line() as usize).unwrap_or(0);
        QdlError::Parse {
            line,
            msg: e.to_string(),
        }
    };
    let columns: Vec<String> = rdr.headers().map_err(parse_err)?.iter().map(String::from).collect();
    if columns.is_empty() || columns.iter().all(|c| c.is_empty()) {
        return Err(QdlError::Parse {
            line: 1,
            msg: "missing header row".into(),
        });
    }
    let mut rows = Vec::new();
    for rec in rdr.records() {
        let rec = rec.map_err(parse_err)?;
        let line = rec.position().map(|p| p.line() as usize).unwrap_or(0);
        if rec.len() != columns.len() {
            return Err(QdlError::Parse {
                line,
                msg: format!("expected {} fields, found {}", columns.len(), rec.len()),
            });
        }
        rows.push(rec.iter().map(String::from).collect());
    }
    Ok(ParsedReport { meta, columns, rows })
}

/// Concatenates the rows of reports that share one header. Metadata of the
/// first report is kept and the sources are listed.
pub fn merge(paths: &[PathBuf]) -> Result<Option<Report>> {
    let mut merged: Option<Report> = None;
    for path in paths {
        let text = std::fs::read_to_string(path)?;
        let parsed = parse_csv(&text).map_err(|e| match e {
            QdlError::Parse { line, msg } => QdlError::Parse {
                line,
                msg: format!("{}: {msg}", path.display()),
            },
            other => other,
        })?;
        let m = merged.get_or_insert_with(|| {
            let mut r = Report {
                kind: "merged".into(),
                meta: parsed
                    .meta
                    .iter()
                    .filter(|(k, _)| !k.starts_with("band."))
                    .cloned()
                    .collect(),
                columns: parsed.columns.clone(),
                rows: Vec::new(),
            };
            r.meta.push(("merged".into(), String::new()));
            r
        });
        if m.columns != parsed.columns {
            return Err(QdlError::InvalidArgument(format!(
                "{} has columns {:?}, expected {:?}",
                path.display(),
                parsed.columns,
                m.columns
            )));
        }
        m.rows.extend(parsed.rows.into_iter().map(|r| r.into_iter().map(Cell::Text).collect()));
        let last = m.meta.last_mut().expect("merged entry present");
        if !last.1.is_empty() {
            last.1.push(' ');
        }
        last.1.push_str(&path.display().to_string());
    }
    Ok(merged)
}

/// Writes a gnuplot script next to the report and returns its path. The
/// script is never run.
pub fn emit_plot_script(report_path: &Path) -> Result<PathBuf> {
    let text = std::fs::read_to_string(report_path)?;
    let parsed = parse_csv(&text)?;
    let col = |name: &str| parsed.columns.iter().position(|c| c == name).map(|i| i + 1);
    let data = report_path
        .file_name()
        .map(|f| f.to_string_lossy().into_owned())
        .unwrap_or_default();
    let (xlabel, ylabel, using, style) = match (parsed.kind(), col("X"), col("ratio"), col("class_j"), col("fraction")) {
        (_, _, _, Some(c), Some(f)) => ("class j".to_string(), "fraction".to_string(), format!("{c}:{f}"), "boxes"),
        (_, Some(x), Some(r), _, _) => ("log X".to_string(), "ratio".to_string(), format!("(log(${x})):{r}"), "linespoints"),
        _ => {
            if parsed.columns.len() < 2 {
                return Err(QdlError::InvalidArgument("need at least two columns to plot".into()));
            }
            (parsed.columns[0].clone(), parsed.columns[1].clone(), "1:2".to_string(), "linespoints")
        }
    };
    let script = format!(
        "set datafile separator ','\n\
         set datafile commentschars '#'\n\
         set key autotitle columnhead\n\
         set xlabel '{xlabel}'\n\
         set ylabel '{ylabel}'\n\
         plot '{data}' using {using} with {style}\n"
    );
    let out = report_path.with_extension("gp");
    std::fs::write(&out, script)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Report {
        let mut r = Report::new("demo", &["X", "ratio", "label"]);
        r.meta("X", 100);
        r.push(vec![100.0.into(), 0.1.into(), "a,b".into()]);
        r.push(vec![1000.0.into(), (1.0 / 3.0).into(), "c".into()]);
        r
    }

    #[test]
    fn csv_round_trip() {
        let r = sample();
        let text = r.to_csv().unwrap();
        assert!(text.starts_with("# tool = qdl "));
        assert!(text.contains("# band.funceq_residual = 0.00000001"));
        let p = parse_csv(&text).unwrap();
        assert_eq!(p.columns, vec!["X", "ratio", "label"]);
        assert_eq!(p.rows[0], vec!["100", "0.1", "a,b"]);
        assert_eq!(p.rows[1][1].parse::<f64>().unwrap(), 1.0 / 3.0);
        assert_eq!(p.kind(), Some("demo"));
    }

    #[test]
    fn json_mirror() {
        let v: Value = serde_json::from_str(&sample().to_json()).unwrap();
        assert_eq!(v["columns"][1], "ratio");
        assert_eq!(v["rows"][0][1], 0.1);
        assert!(v["tolerances"].as_array().unwrap().len() >= 10);
    }

    #[test]
    fn malformed_row_names_line() {
        let text = "# kind = demo\nX,ratio\n1,2\n3\n";
        match parse_csv(text) {
            Err(QdlError::Parse { line, .. }) => assert_eq!(line, 4),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn plot_scripts() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("ladder.csv");
        sample().write(&path, Format::Csv).unwrap();
        let gp = emit_plot_script(&path).unwrap();
        let s = std::fs::read_to_string(gp).unwrap();
        assert!(s.contains("using (log($1)):2"));

        let mut c = Report::new("harper-census", &["class_j", "count", "fraction"]);
        c.push(vec![0u64.into(), 3u64.into(), 0.75.into()]);
        let path = dir.path().join("census.csv");
        c.write(&path, Format::Csv).unwrap();
        let s = std::fs::read_to_string(emit_plot_script(&path).unwrap()).unwrap();
        assert!(s.contains("using 1:3 with boxes"));

        let bad = dir.path().join("bad.csv");
        std::fs::write(&bad, "X,ratio\n1,2\n1,2,3\n").unwrap();
        assert!(matches!(emit_plot_script(&bad), Err(QdlError::Parse { line: 3, .. })));
    }

    #[test]
    fn merge_reports() {
        let dir = tempfile::tempdir().unwrap();
        let a = dir.path().join("a.csv");
        let b = dir.path().join("b.csv");
        sample().write(&a, Format::Csv).unwrap();
        sample().write(&b, Format::Csv).unwrap();
        let m = merge(&[a, b]).unwrap().unwrap();
        assert_eq!(m.rows.len(), 4);
        assert!(merge(&[]).unwrap().is_none());
    }
}
