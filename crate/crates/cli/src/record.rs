//! The fixed CSV schema shared by every run and bench command.

use std::io::Write;

use serde::Serialize;

/// Column order of the CSV output.
pub const COLUMNS: [&str; 15] = [
    "instance",
    "n",
    "algorithm",
    "profile",
    "params",
    "value",
    "exact",
    "ratio",
    "distinct_queries",
    "raw_queries",
    "peak_words",
    "passes",
    "branch",
    "seed",
    "wall_ms",
];

/// One algorithm run. `exact` and `ratio` are empty when no reference was computed.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunRecord {
    pub instance: String,
    pub n: usize,
    pub algorithm: String,
    pub profile: String,
    pub params: String,
    pub value: f64,
    pub exact: Option<f64>,
    pub ratio: Option<f64>,
    pub distinct_queries: u64,
    pub raw_queries: u64,
    pub peak_words: u64,
    pub passes: usize,
    pub branch: String,
    pub seed: u64,
    pub wall_ms: u64,
}

impl RunRecord {
    pub fn new(instance: impl Into<String>, n: usize, algorithm: &str, seed: u64) -> Self {
        RunRecord {
            instance: instance.into(),
            n,
            algorithm: algorithm.to_string(),
            profile: String::new(),
            params: String::new(),
            value: 0.0,
            exact: None,
            ratio: None,
            distinct_queries: 0,
            raw_queries: 0,
            peak_words: 0,
            passes: 0,
            branch: String::new(),
            seed,
            wall_ms: 0,
        }
    }

    /// Sets the reference value and the ratio `value / exact`.
    pub fn with_exact(mut self, exact: Option<f64>) -> Self {
        self.exact = exact;
        self.ratio = exact.filter(|&e| e != 0.0).map(|e| self.value / e);
        self
    }
}

/// Writes the header, then the rows in the given order.
pub fn write_csv<W: Write>(out: W, rows: &[RunRecord]) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(COLUMNS)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_table_is_header_only() {
        let mut buf = vec![];
        write_csv(&mut buf, &[]).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), format!("{}\n", COLUMNS.join(",")));
    }

    #[test]
    fn optional_columns_are_blank() {
        let mut r = RunRecord::new("x", 4, "two-pass", 7);
        r.value = 3.0;
        let mut buf = vec![];
        write_csv(&mut buf, &[r.clone(), r.with_exact(Some(2.0))]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[1], "x,4,two-pass,,,3.0,,,0,0,0,0,,7,0");
        assert_eq!(lines[2], "x,4,two-pass,,,3.0,2.0,1.5,0,0,0,0,,7,0");
    }
}
