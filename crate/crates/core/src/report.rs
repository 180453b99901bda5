//! Flat records for every computation, rendered as an aligned table, one JSON
//! object per line, or CSV. Field order is fixed per record type so the
//! machine-readable formats are byte-stable.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};

use crate::cohomology::{BettiTable, GradedDims};
use crate::ktheory::KRanks;
use crate::labels::SquareReport;
use crate::quotient::{component_of, isotropy, Component, ProjectivePoint};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Table,
    JsonRecords,
    Csv,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "table" => Ok(OutputFormat::Table),
            "json-records" => Ok(OutputFormat::JsonRecords),
            "csv" => Ok(OutputFormat::Csv),
            other => Err(format!(
                "unknown format {other:?} (expected table, json-records or csv)"
            )),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Table => "table",
            OutputFormat::JsonRecords => "json-records",
            OutputFormat::Csv => "csv",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Int(BigInt),
    Text(String),
    List(Vec<BigInt>),
    Bool(bool),
    Empty,
}

impl Value {
    fn plain(&self) -> String {
        match self {
            Value::Int(i) => i.to_string(),
            Value::Text(s) => s.clone(),
            Value::List(v) => v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "),
            Value::Bool(b) => b.to_string(),
            Value::Empty => String::new(),
        }
    }

    fn json(&self) -> serde_json::Value {
        fn number(i: &BigInt) -> serde_json::Value {
            serde_json::Value::Number(i.to_string().parse().expect("integer literal"))
        }
        match self {
            Value::Int(i) => number(i),
            Value::Text(s) => serde_json::Value::String(s.clone()),
            Value::List(v) => serde_json::Value::Array(v.iter().map(number).collect()),
            Value::Bool(b) => serde_json::Value::Bool(*b),
            Value::Empty => serde_json::Value::Null,
        }
    }
}

impl From<u64> for Value {
    fn from(x: u64) -> Self {
        Value::Int(x.into())
    }
}

impl From<&BigUint> for Value {
    fn from(x: &BigUint) -> Self {
        Value::Int(BigInt::from(x.clone()))
    }
}

impl From<&[BigUint]> for Value {
    fn from(xs: &[BigUint]) -> Self {
        Value::List(xs.iter().map(|x| BigInt::from(x.clone())).collect())
    }
}

impl From<String> for Value {
    fn from(s: String) -> Self {
        Value::Text(s)
    }
}

impl From<bool> for Value {
    fn from(b: bool) -> Self {
        Value::Bool(b)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Record {
    fields: Vec<(&'static str, Value)>,
}

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &'static str, value: impl Into<Value>) -> Self {
        self.fields.push((key, value.into()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.iter().find(|(k, _)| *k == key).map(|(_, v)| v)
    }

    pub fn keys(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.fields.iter().map(|(k, _)| *k)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Object(
            self.fields
                .iter()
                .map(|(k, v)| (k.to_string(), v.json()))
                .collect(),
        )
    }
}

/// Renders records that share one key set. The header comes from the first
/// record.
pub fn render(records: &[Record], format: OutputFormat) -> String {
    match format {
        OutputFormat::JsonRecords => records
            .iter()
            .map(|r| format!("{}\n", r.to_json()))
            .collect(),
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            if let Some(first) = records.first() {
                w.write_record(first.keys()).expect("in-memory write");
            }
            for r in records {
                w.write_record(r.fields.iter().map(|(_, v)| v.plain()))
                    .expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
        }
        OutputFormat::Table => render_table(records),
    }
}

fn render_table(records: &[Record]) -> String {
    let Some(first) = records.first() else {
        return String::new();
    };
    let header: Vec<String> = first.keys().map(str::to_string).collect();
    let rows: Vec<Vec<String>> = records
        .iter()
        .map(|r| r.fields.iter().map(|(_, v)| v.plain()).collect())
        .collect();
    let widths: Vec<usize> = (0..header.len())
        .map(|i| {
            rows.iter()
                .map(|row| row[i].chars().count())
                .chain([header[i].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    let mut out = line(&header);
    out.push_str(&line(&widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>()));
    for row in &rows {
        out.push_str(&line(row));
    }
    out
}

/// `(n, k, omega_num, omega_den, d, g, dim)`.
pub fn component_record(c: &Component) -> Record {
    let omega = c.omega();
    Record::new()
        .with("n", c.n())
        .with("k", c.k())
        .with("omega_num", omega.numerator())
        .with("omega_den", omega.denominator())
        .with("d", c.d())
        .with("g", c.g())
        .with("dim", c.dim())
}

/// `(n; a_0..a_n; b_0..b_{n-1}; g(n); g(n)/2)`.
pub fn betti_record(a: &GradedDims, b: &BettiTable, g: &BigUint) -> Record {
    Record::new()
        .with("n", a.n)
        .with("a", a.dims.as_slice())
        .with("b", b.betti.as_slice())
        .with("g", g)
        .with("half_g", &(g / 2u32))
}

/// `ω` written as `j/d` with `d = n/(n,k)`, the order it is enumerated at.
pub fn omega_label(c: &Component) -> String {
    let d = c.d();
    let omega = c.omega();
    format!("{}/{}", omega.numerator() * (d / omega.denominator()), d)
}

/// One row per component followed by a `total` row carrying `(k0, k1)`.
pub fn ktheory_records(ranks: &KRanks) -> Vec<Record> {
    let mut out: Vec<Record> = ranks
        .breakdown
        .iter()
        .map(|row| {
            let c = &row.component;
            Record::new()
                .with("kind", "component".to_string())
                .with("n", ranks.n)
                .with("k", c.k())
                .with("omega", omega_label(c))
                .with("d", c.d())
                .with("g", c.g())
                .with("dim", c.dim())
                .with("h_ev", &row.h_ev)
                .with("h_odd", &row.h_odd)
        })
        .collect();
    out.push(
        Record::new()
            .with("kind", "total".to_string())
            .with("n", ranks.n)
            .with("k", Value::Empty)
            .with("omega", Value::Empty)
            .with("d", Value::Empty)
            .with("g", Value::Empty)
            .with("dim", Value::Empty)
            .with("h_ev", &ranks.k0)
            .with("h_odd", &ranks.k1),
    );
    out
}

/// Normalized point, isotropy, memberships `k:ω` for `1 <= k <= n`, fibre.
pub fn isotropy_record(p: &ProjectivePoint) -> Record {
    let iso = isotropy(p);
    let memberships: Vec<String> = (1..=p.n())
        .filter_map(|k| component_of(p, k))
        .map(|c| format!("{}:{}", c.k(), omega_label(&c)))
        .collect();
    let point: Vec<String> = p.angles().iter().map(|a| a.to_string()).collect();
    Record::new()
        .with("n", p.n())
        .with("point", point.join(","))
        .with("order", iso.order)
        .with("generator_k", iso.generator.k())
        .with("fibre", crate::quotient::fibre_cardinality(p))
        .with("memberships", memberships.join(" "))
}

pub fn sequence_records(values: &[BigUint]) -> Vec<Record> {
    values
        .iter()
        .enumerate()
        .map(|(i, v)| Record::new().with("n", i as u64 + 1).with("half_g", v))
        .collect()
}

pub fn square_record(r: &SquareReport) -> Record {
    Record::new()
        .with("n", r.n)
        .with("M", r.lattice_m)
        .with("lattice_size", r.lattice_size)
        .with("orbits", r.orbit_count)
        .with("ext_orbits", r.ext_orbit_count)
        .with("labels", r.label_count)
        .with("pass", r.passed)
        .with(
            "witness",
            r.witness.clone().map(Value::Text).unwrap_or(Value::Empty),
        )
}

pub fn admissible_records(big_n: u64, p: u64, q: u64, ns: &[u64]) -> Vec<Record> {
    ns.iter()
        .map(|&n| {
            Record::new()
                .with("N", big_n)
                .with("p", p)
                .with("q", q)
                .with("n", n)
                .with("m", big_n / n)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::RationalAngle;
    use crate::quotient::enumerate_components;

    #[test]
    fn component_rows_render_stably() {
        let rows: Vec<_> = enumerate_components(2)
            .unwrap()
            .iter()
            .map(component_record)
            .collect();
        assert_eq!(
            render(&rows, OutputFormat::Csv),
            "n,k,omega_num,omega_den,d,g,dim\n2,1,0,1,2,1,0\n2,1,1,2,2,1,0\n2,2,0,1,1,2,1\n"
        );
        assert_eq!(
            render(&rows[..1], OutputFormat::JsonRecords),
            "{\"n\":2,\"k\":1,\"omega_num\":0,\"omega_den\":1,\"d\":2,\"g\":1,\"dim\":0}\n"
        );
        let table = render(&rows, OutputFormat::Table);
        assert_eq!(table.lines().count(), 5);
        assert!(table.starts_with("n  k  omega_num"));
    }

    #[test]
    fn omega_label_uses_enumeration_order() {
        let c = Component::new(6, 2, RationalAngle::new(1, 3)).unwrap();
        assert_eq!(omega_label(&c), "1/3");
        let c = Component::new(6, 1, RationalAngle::new(1, 2)).unwrap();
        assert_eq!(omega_label(&c), "3/6");
        let c = Component::new(6, 6, RationalAngle::ZERO).unwrap();
        assert_eq!(omega_label(&c), "0/1");
    }

    #[test]
    fn lists_and_empties() {
        let r = Record::new()
            .with("a", Value::List(vec![1.into(), 0.into(), 2.into()]))
            .with("w", Value::Empty);
        assert_eq!(render(std::slice::from_ref(&r), OutputFormat::JsonRecords), "{\"a\":[1,0,2],\"w\":null}\n");
        assert_eq!(render(&[r], OutputFormat::Csv), "a,w\n1 0 2,\n");
    }

    #[test]
    fn big_numbers_stay_exact_in_json() {
        let big = BigUint::from(1u32) << 100usize;
        let r = Record::new().with("x", &big);
        assert_eq!(
            render(&[r], OutputFormat::JsonRecords),
            "{\"x\":1267650600228229401496703205376}\n"
        );
    }

    #[test]
    fn format_parsing() {
        assert_eq!("csv".parse::<OutputFormat>().unwrap(), OutputFormat::Csv);
        assert_eq!(
            "json-records".parse::<OutputFormat>().unwrap(),
            OutputFormat::JsonRecords
        );
        assert!("xml".parse::<OutputFormat>().is_err());
    }
}
