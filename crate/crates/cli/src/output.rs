//! Rendering of sequences in the three output formats.
//!
//! * `bfile`: `index value` per line, preceded by a `#` header unless
//!   suppressed. Orbit tables use `n k T(n,k)` triples instead.
//! * `json`: `{"r", "kind", "origin", "values"}` with every integer written as
//!   a decimal string. For `orbits`, `values` holds one array of coefficient
//!   strings per `n`.
//! * `plain`: one value per line; for orbits, one line of space-separated
//!   coefficients per `n`.

use clap::ValueEnum;
use homcount::{Nat, OrbitPolynomial};
use serde::{Deserialize, Serialize};

use crate::bfile::BFile;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Bfile,
    Json,
    Plain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Lambda,
    Tuples,
    Orbits,
    Transitive,
}

#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceDoc {
    pub r: u32,
    pub kind: Kind,
    pub origin: i64,
    pub values: Vec<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub egf_normalized: bool,
}

#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitsDoc {
    pub r: u32,
    pub kind: Kind,
    pub origin: i64,
    pub values: Vec<Vec<String>>,
}

pub struct Sequence<'a> {
    pub r: u32,
    pub kind: Kind,
    pub origin: i64,
    pub values: &'a [Nat],
    pub egf_normalized: bool,
}

pub fn render_sequence(seq: &Sequence<'_>, format: Format, header: Option<&str>) -> String {
    match format {
        Format::Bfile => {
            let mut out = header_lines(header);
            out.push_str(&BFile::from_values(seq.origin, seq.values).to_string());
            out
        }
        Format::Plain => seq.values.iter().map(|v| format!("{v}\n")).collect(),
        Format::Json => {
            let doc = SequenceDoc {
                r: seq.r,
                kind: seq.kind,
                origin: seq.origin,
                values: seq.values.iter().map(Nat::to_string).collect(),
                egf_normalized: seq.egf_normalized,
            };
            serde_json::to_string(&doc).expect("plain data serializes") + "\n"
        }
    }
}

pub fn render_orbits(r: u32, polys: &[OrbitPolynomial], format: Format, header: Option<&str>) -> String {
    match format {
        Format::Bfile => {
            let mut out = header_lines(header);
            for (n, p) in polys.iter().enumerate() {
                for (k, c) in p.coeffs().iter().enumerate() {
                    // P_0 = 1 is the only entry with a y^0 term
                    if k > 0 || n == 0 {
                        out.push_str(&format!("{n} {k} {c}\n"));
                    }
                }
            }
            out
        }
        Format::Plain => polys
            .iter()
            .map(|p| {
                let cells: Vec<String> = p.coeffs().iter().map(Nat::to_string).collect();
                cells.join(" ") + "\n"
            })
            .collect(),
        Format::Json => {
            let doc = OrbitsDoc {
                r,
                kind: Kind::Orbits,
                origin: 0,
                values: polys
                    .iter()
                    .map(|p| p.coeffs().iter().map(Nat::to_string).collect())
                    .collect(),
            };
            serde_json::to_string(&doc).expect("plain data serializes") + "\n"
        }
    }
}

fn header_lines(header: Option<&str>) -> String {
    header
        .map(|h| h.lines().map(|l| format!("# {l}\n")).collect())
        .unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nats(v: &[u64]) -> Vec<Nat> {
        v.iter().map(|&x| Nat::from(x)).collect()
    }

    #[test]
    fn bfile_lines_with_header() {
        let values = nats(&[1, 3, 4, 7]);
        let seq = Sequence {
            r: 2,
            kind: Kind::Lambda,
            origin: 1,
            values: &values,
            egf_normalized: false,
        };
        let out = render_sequence(&seq, Format::Bfile, Some("lambda_2(n)"));
        assert_eq!(out, "# lambda_2(n)\n1 1\n2 3\n3 4\n4 7\n");
        assert_eq!(render_sequence(&seq, Format::Plain, None), "1\n3\n4\n7\n");
    }

    #[test]
    fn json_uses_decimal_strings() {
        let values = vec![Nat::from(10u32).pow(40)];
        let seq = Sequence {
            r: 6,
            kind: Kind::Tuples,
            origin: 0,
            values: &values,
            egf_normalized: false,
        };
        let out = render_sequence(&seq, Format::Json, None);
        assert_eq!(
            out.trim(),
            format!(r#"{{"r":6,"kind":"tuples","origin":0,"values":["1{}"]}}"#, "0".repeat(40))
        );
        let doc: SequenceDoc = serde_json::from_str(&out).unwrap();
        assert_eq!(doc.values.len(), 1);
        assert!(!doc.egf_normalized);
    }

    #[test]
    fn orbit_formats() {
        let polys = vec![OrbitPolynomial::one(), OrbitPolynomial::from_u64s(&[0, 1]), OrbitPolynomial::from_u64s(&[0, 3, 1])];
        assert_eq!(render_orbits(2, &polys, Format::Plain, None), "1\n0 1\n0 3 1\n");
        assert_eq!(
            render_orbits(2, &polys, Format::Bfile, None),
            "0 0 1\n1 1 1\n2 1 3\n2 2 1\n"
        );
        let doc: OrbitsDoc = serde_json::from_str(&render_orbits(2, &polys, Format::Json, None)).unwrap();
        assert_eq!(doc.kind, Kind::Orbits);
        assert_eq!(doc.values[2], vec!["0", "3", "1"]);
    }
}
