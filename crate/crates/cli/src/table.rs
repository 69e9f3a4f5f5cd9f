use std::fmt::Write as _;
use std::path::Path;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Bool(bool),
    Text(String),
    Blank,
}

impl Cell {
    /// Twelve significant digits in scientific notation.
    pub fn format(&self, out: &mut String) {
        match self {
            Cell::Num(x) => write!(out, "{x:.11e}").unwrap(),
            Cell::Bool(b) => write!(out, "{b}").unwrap(),
            Cell::Text(s) => out.push_str(s),
            Cell::Blank => {}
        }
    }

    pub fn as_num(&self) -> Option<f64> {
        match self {
            Cell::Num(x) => Some(*x),
            _ => None,
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Cell::Bool(b) => Some(*b),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: Vec<String>) -> Self {
        Self {
            header,
            rows: Vec::new(),
        }
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    /// Prepend a constant column.
    pub fn with_leading_column(mut self, name: &str, value: Cell) -> Self {
        self.header.insert(0, name.to_string());
        for row in &mut self.rows {
            row.insert(0, value.clone());
        }
        self
    }

    /// Append the rows of `other`, which must have the same header.
    pub fn extend(&mut self, other: Table) {
        if self.header.is_empty() {
            self.header = other.header;
        } else {
            assert_eq!(self.header, other.header, "mismatched tables");
        }
        self.rows.extend(other.rows);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.header.join(",");
        out.push('\n');
        for row in &self.rows {
            for (i, cell) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                cell.format(&mut out);
            }
            out.push('\n');
        }
        out
    }

    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        std::fs::write(path, self.to_csv())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_layout() {
        let mut t = Table::new(vec!["a".into(), "b".into(), "c".into(), "d".into()]);
        t.rows.push(vec![
            Cell::Num(6.9),
            Cell::Bool(false),
            Cell::Blank,
            Cell::Text("X".into()),
        ]);
        t.rows.push(vec![
            Cell::Num(-1.2e-5),
            Cell::Bool(true),
            Cell::Num(0.0),
            Cell::Text("Y".into()),
        ]);
        assert_eq!(
            t.to_csv(),
            "a,b,c,d\n6.90000000000e0,false,,X\n-1.20000000000e-5,true,0.00000000000e0,Y\n"
        );
    }

    #[test]
    fn twelve_significant_digits_round_trip_closely() {
        for x in [std::f64::consts::PI, 1.0 / 3.0, 9.87654321e11, -2.5e-300] {
            let mut s = String::new();
            Cell::Num(x).format(&mut s);
            let y: f64 = s.parse().unwrap();
            assert!((x - y).abs() <= 5e-12 * x.abs(), "{s}");
        }
    }
}
