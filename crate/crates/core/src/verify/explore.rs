//! Evidence collection for two open questions about regularity.
//!
//! `reg-lb`: is `reg I^(s) ≥ 2s` for unmixed `I ⊆ 𝔪^2`?
//! `asym-eq`: is `reg F^(s) = max{reg I^(s), reg J^(s)}` for `s ≫ 0` when
//! both factors are unmixed?
//!
//! Nothing here passes or fails. Negative slack is reported as a finding.

use std::io::Write;
use std::str::FromStr;

use rand::Rng as _;
use serde::{Deserialize, Serialize};

use super::generate::{factor_ring, generate_ideal, instance_rng, GeneratorConfig, Structure};
use crate::decompose;
use crate::error::{Error, Result};
use crate::fiber::make_fiber;
use crate::ideal::MonomialIdeal;
use crate::par;
use crate::resolution::cache::BettiCache;
use crate::resolution::show_reg as show;
use crate::resolution::{BettiOptions, FieldChar};
use crate::symbolic::{symbolic_power, SymbolicMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Question {
    RegLb,
    AsymEq,
}

impl FromStr for Question {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reg-lb" => Ok(Question::RegLb),
            "asym-eq" => Ok(Question::AsymEq),
            _ => Err(Error::structural(format!(
                "unknown question `{s}` (expected reg-lb or asym-eq)"
            ))),
        }
    }
}

/// One line of the exploration log.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub question: Question,
    pub index: u64,
    pub i: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub j: Option<String>,
    pub s: u32,
    pub p: FieldChar,
    pub reg_i: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reg_j: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reg_f: Option<i64>,
    /// `max_{i<s} reg I^(i) + s - i`, logged for the conjectured recursion.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub envelope: Option<i64>,
    /// `reg I^(s) - 2s`, or `reg F^(s) - max{reg I^(s), reg J^(s)}`.
    pub slack: i64,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct Summary {
    pub instances: usize,
    pub records: usize,
    pub min_slack: Option<i64>,
    /// Records contradicting the question (negative slack for `reg-lb`).
    pub findings: Vec<Record>,
    /// For `asym-eq`: instances where equality fails at the largest `s`
    /// scanned. Consistent-up-to-bound is all the scan can say.
    pub unequal_at_top: usize,
    pub skipped: Vec<String>,
}

/// Draws an unmixed ideal contained in the square of the maximal ideal.
fn unmixed_factor(
    cfg: &GeneratorConfig,
    index: u64,
    stream: u64,
    prefix: &str,
) -> Result<MonomialIdeal> {
    let mut rng = instance_rng(cfg.seed, index.wrapping_mul(2).wrapping_add(stream));
    let ring = factor_ring(prefix, rng.gen_range(1..=cfg.nvars));
    let structure = match cfg.structure {
        Structure::Mixed | Structure::Zero | Structure::Random => Structure::Unmixed,
        s => s,
    };
    let mut strict = cfg.clone();
    strict.linear_rate = 0.0;
    for _ in 0..cfg.retries.max(1) {
        let a = generate_ideal(&mut rng, &ring, structure, &strict)?;
        if !a.is_zero() && a.min_gen_degree().is_some_and(|d| d >= 2) && decompose::is_unmixed(&a)?
        {
            return Ok(a);
        }
    }
    Err(Error::domain(
        "no unmixed ideal in m^2 within the retry budget",
    ))
}

fn reg(cache: &BettiCache, a: &MonomialIdeal, p: FieldChar) -> Result<Option<i64>> {
    Ok(cache.invariants(a, p)?.reg_ideal)
}

fn explore_one(
    q: Question,
    cfg: &GeneratorConfig,
    index: u64,
    opts: BettiOptions,
) -> Result<Vec<Record>> {
    let cache = BettiCache::new(cfg.chars.clone(), opts);
    let i = unmixed_factor(cfg, index, 0, "x")?;
    let sym_i: Vec<MonomialIdeal> = (1..=cfg.s_max)
        .map(|s| symbolic_power(&i, s, SymbolicMode::Ass))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    match q {
        Question::RegLb => {
            for &p in &cfg.chars {
                let regs: Vec<Option<i64>> = sym_i
                    .iter()
                    .map(|a| reg(&cache, a, p))
                    .collect::<Result<_>>()?;
                for s in 1..=cfg.s_max {
                    let r = regs[s as usize - 1];
                    let envelope = (1..s)
                        .map(|k| regs[k as usize - 1].map(|v| v + (s - k) as i64))
                        .max()
                        .flatten();
                    out.push(Record {
                        question: q,
                        index,
                        i: i.to_string(),
                        j: None,
                        s,
                        p,
                        reg_i: r,
                        reg_j: None,
                        reg_f: None,
                        envelope,
                        slack: r.expect("non-zero ideal") - 2 * s as i64,
                    });
                }
            }
        }
        Question::AsymEq => {
            let j = unmixed_factor(cfg, index, 1, "y")?;
            let inst = make_fiber(&i, &j)?;
            for s in 1..=cfg.s_max {
                let sym_j = symbolic_power(&j, s, SymbolicMode::Ass)?;
                let sym_f = symbolic_power(&inst.f, s, SymbolicMode::Ass)?;
                for &p in &cfg.chars {
                    let (ri, rj, rf) = (
                        reg(&cache, &sym_i[s as usize - 1], p)?,
                        reg(&cache, &sym_j, p)?,
                        reg(&cache, &sym_f, p)?,
                    );
                    let slack = rf.expect("non-zero") - ri.max(rj).expect("non-zero");
                    out.push(Record {
                        question: q,
                        index,
                        i: i.to_string(),
                        j: Some(j.to_string()),
                        s,
                        p,
                        reg_i: ri,
                        reg_j: rj,
                        reg_f: rf,
                        envelope: None,
                        slack,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Explores `budget` instances and appends one JSON line per record to
/// `log`. Instances are computed in parallel and written in index order.
pub fn explore(
    q: Question,
    cfg: &GeneratorConfig,
    budget: usize,
    opts: BettiOptions,
    log: &mut dyn Write,
) -> Result<Summary> {
    cfg.validate()?;
    let indices: Vec<u64> = (0..budget as u64).collect();
    let results = par::map(&indices, |&k| explore_one(q, cfg, k, opts));
    let mut sum = Summary {
        instances: budget,
        ..Default::default()
    };
    for (k, res) in results.into_iter().enumerate() {
        let records = match res {
            Ok(r) => r,
            Err(e) => {
                sum.skipped.push(format!("instance {k}: {e}"));
                continue;
            }
        };
        for r in &records {
            let line = serde_json::to_string(r).map_err(|e| Error::structural(e.to_string()))?;
            writeln!(log, "{line}")
                .map_err(|e| Error::structural(format!("log write failed: {e}")))?;
            sum.min_slack = Some(sum.min_slack.map_or(r.slack, |m| m.min(r.slack)));
            if q == Question::RegLb && r.slack < 0 {
                sum.findings.push(r.clone());
            }
        }
        if q == Question::AsymEq && records.iter().any(|r| r.s == cfg.s_max && r.slack != 0) {
            sum.unequal_at_top += 1;
            sum.findings.extend(
                records
                    .iter()
                    .filter(|r| r.s == cfg.s_max && r.slack != 0)
                    .cloned(),
            );
        }
        sum.records += records.len();
    }
    Ok(sum)
}

impl std::fmt::Display for Summary {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(
            f,
            "instances {} records {} skipped {}",
            self.instances,
            self.records,
            self.skipped.len()
        )?;
        writeln!(f, "minimum slack {}", show(self.min_slack))?;
        for r in &self.findings {
            writeln!(
                f,
                "finding: s={} p={} I={} slack {}",
                r.s, r.p, r.i, r.slack
            )?;
        }
        write!(f, "findings {}", self.findings.len())
    }
}
