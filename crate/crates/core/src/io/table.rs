use std::fs::File;
use std::io::{Read, Write};
use std::path::Path;

use num_bigint::BigInt;

use crate::arithmetic::{TrendPoint, WeightedBallSeries};
use crate::bessel::BoundEnvelope;
use crate::error::{Error, Result};
use crate::geodesics::{CircleReport, LengthLine};
use crate::lattice_count::RadialSeries;
use crate::numeric::{format_f64, format_rational};
use crate::spectrum::CountSeries;

/// A header plus string rows; floats are already rendered with 17
/// significant digits and integers in full decimal.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<String>) -> Result<()> {
        if row.len() != self.header.len() {
            return Err(Error::invalid(format!("row has {} fields, header has {}", row.len(), self.header.len())));
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn write_to<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        out.write_record(&self.header)?;
        for row in &self.rows {
            out.write_record(row)?;
        }
        out.flush()?;
        Ok(())
    }

    pub fn write_path(&self, path: &Path) -> Result<()> {
        self.write_to(File::create(path)?)
    }

    pub fn to_csv_string(&self) -> Result<String> {
        let mut buf = Vec::new();
        self.write_to(&mut buf)?;
        String::from_utf8(buf).map_err(|e| Error::invalid(e.to_string()))
    }

    pub fn read_from<R: Read>(r: R) -> Result<Self> {
        let mut reader = csv::Reader::from_reader(r);
        let header = reader.headers()?.iter().map(str::to_string).collect();
        let rows = reader
            .records()
            .map(|rec| rec.map(|r| r.iter().map(str::to_string).collect()))
            .collect::<std::result::Result<Vec<Vec<String>>, _>>()?;
        Ok(Table { header, rows })
    }

    /// Column `name` parsed as `f64`.
    pub fn column_f64(&self, name: &str) -> Result<Vec<f64>> {
        let i = self.header.iter().position(|h| h == name).ok_or_else(|| Error::invalid(format!("no column {name}")))?;
        self.rows
            .iter()
            .map(|r| r[i].parse::<f64>().map_err(|e| Error::invalid(format!("{name}: {e}"))))
            .collect()
    }
}

pub trait ToTable {
    fn to_table(&self) -> Table;
}

fn f(x: f64) -> String {
    format_f64(x)
}

impl ToTable for CountSeries {
    fn to_table(&self) -> Table {
        let mut t = Table::new(&["lambda", "count", "leading", "remainder"]);
        for r in &self.rows {
            t.rows.push(vec![f(r.lambda), r.count.to_string(), f(r.leading), f(r.remainder)]);
        }
        t
    }
}

impl ToTable for RadialSeries {
    fn to_table(&self) -> Table {
        let mut t = Table::new(&["R", "count", "leading", "remainder"]);
        for r in &self.rows {
            t.rows.push(vec![f(r.radius), format_rational(&r.value), f(r.leading), f(r.remainder)]);
        }
        t
    }
}

impl ToTable for WeightedBallSeries {
    fn to_table(&self) -> Table {
        let mut t = Table::new(&["R2", "value", "leading", "remainder", "normalized"]);
        for r in &self.rows {
            t.rows.push(vec![r.r2.to_string(), r.value.to_string(), f(r.leading), f(r.remainder), f(r.normalized)]);
        }
        t
    }
}

impl ToTable for CircleReport {
    fn to_table(&self) -> Table {
        let mut t = Table::new(&["x", "count", "leading", "remainder", "delta", "zeta"]);
        let (d, z) = (format_rational(&self.delta), format_rational(&self.zeta));
        for r in &self.rows {
            t.rows.push(vec![f(r.x), r.count.to_string(), f(r.leading), f(r.remainder), d.clone(), z.clone()]);
        }
        t
    }
}

impl ToTable for BoundEnvelope {
    fn to_table(&self) -> Table {
        let mut t = Table::new(&["z", "integral", "ratio"]);
        for r in &self.rows {
            t.rows.push(vec![f(r.z), f(r.integral), f(r.ratio)]);
        }
        t
    }
}

/// One evaluation of an exact identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityRow {
    pub t: u64,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

pub fn identity_table(rows: &[IdentityRow]) -> Table {
    let mut t = Table::new(&["t", "lhs", "rhs", "equal"]);
    for r in rows {
        t.rows.push(vec![r.t.to_string(), r.lhs.to_string(), r.rhs.to_string(), (r.lhs == r.rhs).to_string()]);
    }
    t
}

pub fn length_table(lines: &[LengthLine]) -> Table {
    let mut t = Table::new(&["k", "length_sq", "count"]);
    for l in lines {
        t.rows.push(vec![l.k.to_string(), f(l.length_sq), l.count.to_string()]);
    }
    t
}

pub fn trend_table(points: &[TrendPoint]) -> Table {
    let mut t = Table::new(&["k", "deviation"]);
    for p in points {
        t.rows.push(vec![p.k.to_string(), f(p.deviation)]);
    }
    t
}
