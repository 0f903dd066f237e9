//! Output formats. All integer, so output is identical on every platform.

use std::str::FromStr;

use serde_json::{json, Value as Json};

use super::Value;
use crate::error::Error;
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;
use crate::resolution::{show_reg, BettiTable};
use crate::ring::Ring;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Tsv,
    Text,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "json" => Ok(Format::Json),
            "tsv" => Ok(Format::Tsv),
            "text" => Ok(Format::Text),
            _ => Err(Error::structural(format!(
                "unknown format `{s}` (json, tsv or text)"
            ))),
        }
    }
}

fn sorted_exps(a: &MonomialIdeal) -> Vec<Vec<u16>> {
    let mut v: Vec<Vec<u16>> = a.gens().iter().map(|g| g.exps().to_vec()).collect();
    v.sort();
    v
}

fn tuple(m: &Monomial) -> String {
    let parts: Vec<String> = m.exps().iter().map(|e| e.to_string()).collect();
    format!("({})", parts.join(","))
}

fn ideal_json(a: &MonomialIdeal) -> Json {
    json!({ "gens": sorted_exps(a) })
}

fn table_json(t: &BettiTable) -> Json {
    Json::Array(
        t.entries
            .iter()
            .map(|e| json!({ "i": e.i, "multidegree": e.multidegree.exps(), "rank": e.rank }))
            .collect(),
    )
}

fn int_json(v: Option<i64>) -> Json {
    v.map_or_else(|| Json::String("-inf".into()), |x| json!(x))
}

/// Total-degree table in the usual layout: row `j - i`, column `i`.
fn table_text(t: &BettiTable) -> String {
    let graded = t.graded();
    if graded.is_empty() {
        return "(empty)\n".into();
    }
    let max_i = graded.keys().map(|k| k.0).max().unwrap();
    let rows: Vec<i64> = graded.keys().map(|&(i, d)| d as i64 - i as i64).collect();
    let (lo, hi) = (*rows.iter().min().unwrap(), *rows.iter().max().unwrap());
    let width = graded
        .values()
        .map(|v| v.to_string().len())
        .max()
        .unwrap()
        .max(max_i.to_string().len())
        + 1;
    let mut out = format!("{:>4}:", "");
    for i in 0..=max_i {
        out += &format!("{i:>width$}");
    }
    out.push('\n');
    for r in lo..=hi {
        out += &format!("{r:>4}:");
        for i in 0..=max_i {
            let d = r + i as i64;
            let v = if d < 0 {
                None
            } else {
                graded.get(&(i, d as u32))
            };
            out += &format!("{:>width$}", v.map_or("-".to_string(), |v| v.to_string()));
        }
        out.push('\n');
    }
    out
}

fn prime_text(p: &crate::decompose::MonomialPrime, ring: &Ring) -> String {
    p.display(ring).to_string()
}

/// Renders a value. Text output is the same notation the parser reads.
pub fn emit(v: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let j = match v {
                Value::Ideal(a) => ideal_json(a),
                Value::Int(x) => json!({ "value": int_json(*x) }),
                Value::Table { table, .. } => table_json(table),
                Value::Primes { primes, ring } => {
                    let sets: Vec<Vec<&str>> = primes
                        .iter()
                        .map(|p| {
                            (0..ring.nvars())
                                .filter(|j| p.mask() >> j & 1 == 1)
                                .map(|j| ring.var_name(j))
                                .collect()
                        })
                        .collect();
                    json!({ "primes": sets })
                }
                Value::Components(c) => {
                    json!({ "components": c.iter().map(ideal_json).collect::<Vec<_>>() })
                }
            };
            format!("{j}\n")
        }
        Format::Tsv => match v {
            Value::Ideal(a) => {
                let mut gens: Vec<&Monomial> = a.gens().iter().collect();
                gens.sort_by(|x, y| x.exps().cmp(y.exps()));
                gens.iter().map(|g| format!("{}\n", tuple(g))).collect()
            }
            Value::Int(x) => format!("{}\n", show_reg(*x)),
            Value::Table { table, .. } => table
                .entries
                .iter()
                .map(|e| format!("{}\t{}\t{}\n", e.i, tuple(&e.multidegree), e.rank))
                .collect(),
            Value::Primes { primes, ring } => primes
                .iter()
                .map(|p| format!("{}\n", prime_text(p, ring)))
                .collect(),
            Value::Components(c) => c.iter().map(|a| format!("{a}\n")).collect(),
        },
        Format::Text => match v {
            Value::Ideal(a) => format!("{a}\n"),
            Value::Int(x) => format!("{}\n", show_reg(*x)),
            Value::Table { table, .. } => table_text(table),
            Value::Primes { primes, ring } => {
                let parts: Vec<String> = primes.iter().map(|p| prime_text(p, ring)).collect();
                format!("{{{}}}\n", parts.join(", "))
            }
            Value::Components(c) => {
                let parts: Vec<String> = c.iter().map(|a| a.to_string()).collect();
                format!("{}\n", parts.join(" & "))
            }
        },
    }
}
