use std::fmt::Write as _;

use crate::evolution::GridFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// `v` rounded to `precision` significant digits, printed in the shortest
/// form that reads back to the rounded value (exponent notation outside
/// `[1e-5, 1e16)`). Locale-independent; `7.0` prints as `7`.
pub fn number(v: f64, precision: usize) -> String {
    if !v.is_finite() {
        return if v.is_nan() { "nan".into() } else if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let rounded: f64 = format!("{:.*e}", precision.saturating_sub(1), v)
        .parse()
        .expect("formatted float parses");
    let a = rounded.abs();
    let s = if a != 0.0 && !(1e-5..1e16).contains(&a) {
        format!("{rounded:e}")
    } else {
        format!("{rounded}")
    };
    if s == "-0" {
        "0".into()
    } else {
        s
    }
}

fn json_number(v: f64, precision: usize) -> String {
    if v.is_finite() {
        number(v, precision)
    } else {
        "null".into()
    }
}

/// Rows of named real columns.
#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn render(&self, format: Format, precision: usize) -> String {
        let mut out = String::new();
        match format {
            Format::Csv => {
                out.push_str(&self.columns.join(","));
                out.push('\n');
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(|&v| number(v, precision)).collect();
                    out.push_str(&cells.join(","));
                    out.push('\n');
                }
            }
            Format::Json => {
                out.push('[');
                for (i, row) in self.rows.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push_str("\n  {");
                    for (j, (name, &v)) in self.columns.iter().zip(row).enumerate() {
                        if j > 0 {
                            out.push_str(", ");
                        }
                        let _ = write!(out, "\"{name}\": {}", json_number(v, precision));
                    }
                    out.push('}');
                }
                out.push_str("\n]\n");
            }
        }
        out
    }
}

pub fn scalar(v: f64, format: Format, precision: usize) -> String {
    match format {
        Format::Csv => format!("{}\n", number(v, precision)),
        Format::Json => format!("{}\n", json_number(v, precision)),
    }
}

pub fn array(values: &[f64], format: Format, precision: usize) -> String {
    match format {
        Format::Json => {
            let cells: Vec<String> = values.iter().map(|&v| json_number(v, precision)).collect();
            format!("[{}]\n", cells.join(", "))
        }
        Format::Csv => {
            let mut t = Table::new(&["n", "a"]);
            t.rows = values.iter().enumerate().map(|(n, &a)| vec![n as f64, a]).collect();
            t.render(Format::Csv, precision)
        }
    }
}

pub fn grid_function(g: &GridFunction, format: Format, precision: usize) -> String {
    match format {
        Format::Csv => g.to_csv(precision),
        Format::Json => {
            let grid = g.grid();
            let join = |f: &dyn Fn(usize) -> f64| -> String {
                (0..grid.len()).map(|j| json_number(f(j), precision)).collect::<Vec<_>>().join(", ")
            };
            let s = g.samples();
            format!(
                "{{\"x_min\": {}, \"x_max\": {}, \"n\": {},\n \"x\": [{}],\n \"re\": [{}],\n \"im\": [{}]}}\n",
                json_number(grid.x_min(), 17),
                json_number(grid.x_max(), 17),
                grid.len(),
                join(&|j| grid.x(j)),
                join(&|j| s[j].re),
                join(&|j| s[j].im),
            )
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers() {
        assert_eq!(number(7.0, 12), "7");
        assert_eq!(number(0.355_028_053_887_817_2, 12), "0.355028053888");
        assert_eq!(number(-1.234_56e-30, 4), "-1.235e-30");
        assert_eq!(number(2.5e20, 4), "2.5e20");
        assert_eq!(number(-0.0, 6), "0");
        assert_eq!(number(f64::NAN, 6), "nan");
        assert_eq!(json_number(f64::INFINITY, 6), "null");
    }

    #[test]
    fn table_formats() {
        let mut t = Table::new(&["x", "v"]);
        t.rows.push(vec![0.5, 2.0]);
        assert_eq!(t.render(Format::Csv, 6), "x,v\n0.5,2\n");
        assert_eq!(t.render(Format::Json, 6), "[\n  {\"x\": 0.5, \"v\": 2}\n]\n");
        assert_eq!(array(&[1.0, 0.25], Format::Json, 8), "[1, 0.25]\n");
    }
}
