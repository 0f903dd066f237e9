//! The formula-check harness: a closed catalogue of checks, suite runs over
//! generated instances, failure witnesses and their replay.

mod checks;
pub mod explore;
pub mod generate;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fiber::{make_fiber, FiberInstance};
use crate::ideal::MonomialIdeal;
use crate::monomial::Exp;
use crate::par;
use crate::resolution::cache::BettiCache;
use crate::resolution::{BettiOptions, FieldChar};
use crate::ring::Ring;

pub use checks::Claim;
use checks::{Env, Memo, Outcome};
use generate::{generate_instance, GeneratorConfig};

macro_rules! check_ids {
    ($($id:ident $n:literal $title:literal,)*) => {
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
        pub enum CheckId { $($id,)* }

        impl CheckId {
            pub const ALL: [CheckId; 25] = [$(CheckId::$id,)*];

            pub fn number(self) -> u32 {
                match self { $(CheckId::$id => $n,)* }
            }

            pub fn title(self) -> &'static str {
                match self { $(CheckId::$id => $title,)* }
            }
        }
    };
}

check_ids! {
    C1 1 "I ∩ J = IJ for ideals in disjoint variables",
    C2 2 "regularity of tensor products",
    C3 3 "reg(m^s M) via reg(M/m^s M)",
    C4 4 "symbolic power of an unmixed ideal by components",
    C5 5 "binomial expansion of (I+J)^(s)",
    C6 6 "depth 0 forces I^(s) = I^s",
    C7 7 "F as an intersection; depth and reg of F",
    C8 8 "decomposition of F^s and the G chain",
    C9 9 "depth and reg of (I+n)^s",
    C10 10 "depth and reg of (I+n)^(s)",
    C11 11 "F^(s) = (I+n)^(s) ∩ (J+m)^(s)",
    C12 12 "F^(s) as a double sum",
    C13 13 "associated and minimal primes of F",
    C14 14 "intersection formula for filtrations",
    C15 15 "depth and reg of F^(s), positive depth",
    C16 16 "W_s has a generator of degree 2s",
    C17 17 "reg F^(s), unmixed case",
    C18 18 "generator degrees of I^(s)",
    C19 19 "F^(s) = F^s, depth zero case",
    C20 20 "depth T/F^s = 0 with socle witness",
    C21 21 "containments and non-containments in F^s",
    C22 22 "reg F^s",
    C23 23 "U_s and reg(U_s/F^s)",
    C24 24 "reg F^s, equigenerated case",
    C25 25 "minimal symbolic powers of F",
}

impl CheckId {
    /// Checks whose claims do not involve `s`; suites run them at `s = 1` only.
    pub fn s_independent(self) -> bool {
        matches!(self, CheckId::C7 | CheckId::C13)
    }

    /// Checks whose verdicts must agree across characteristics.
    pub fn char_free(self) -> bool {
        matches!(
            self,
            CheckId::C15 | CheckId::C19 | CheckId::C20 | CheckId::C22
        )
    }

    pub fn parse_list(text: &str) -> Result<Vec<CheckId>> {
        if text.trim() == "all" {
            return Ok(CheckId::ALL.to_vec());
        }
        let mut out: Vec<CheckId> = text
            .split(',')
            .map(|t| t.trim().parse())
            .collect::<Result<_>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}", self.number())
    }
}

impl FromStr for CheckId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let digits = s.strip_prefix(['C', 'c']).unwrap_or(s);
        digits
            .parse::<u32>()
            .ok()
            .and_then(|n| CheckId::ALL.into_iter().find(|c| c.number() == n))
            .ok_or_else(|| Error::structural(format!("unknown check `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Pass,
    Fail,
    HypothesisNotMet,
    ResourceExceeded,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::HypothesisNotMet => "hypothesis-not-met",
            Status::ResourceExceeded => "resource-exceeded",
        })
    }
}

/// Self-contained description of a fiber instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSpec {
    pub r_vars: Vec<String>,
    pub s_vars: Vec<String>,
    pub i: Vec<Vec<Exp>>,
    pub j: Vec<Vec<Exp>>,
}

impl InstanceSpec {
    pub fn of(inst: &FiberInstance) -> Self {
        let exps = |a: &MonomialIdeal| a.gens().iter().map(|g| g.exps().to_vec()).collect();
        InstanceSpec {
            r_vars: inst.ring_r.vars().to_vec(),
            s_vars: inst.ring_s.vars().to_vec(),
            i: exps(&inst.i),
            j: exps(&inst.j),
        }
    }

    pub fn build(&self) -> Result<FiberInstance> {
        let ideal = |vars: &[String], gens: &[Vec<Exp>]| -> Result<MonomialIdeal> {
            let ring = Ring::new(vars)?;
            let refs: Vec<&[Exp]> = gens.iter().map(|g| g.as_slice()).collect();
            MonomialIdeal::from_exponents(&ring, &refs)
        };
        make_fiber(
            &ideal(&self.r_vars, &self.i)?,
            &ideal(&self.s_vars, &self.j)?,
        )
    }

    /// The instance as a program in the expression language, ending in `F`.
    pub fn program(&self) -> Result<String> {
        let inst = self.build()?;
        Ok(format!(
            "ring T = [{} | {}];\nI = {};\nJ = {};\nfiber(I, J)\n",
            self.r_vars.join(" "),
            self.s_vars.join(" "),
            inst.i_t,
            inst.j_t
        ))
    }
}

impl fmt::Display for InstanceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.build() {
            Ok(inst) => write!(f, "{inst}"),
            Err(e) => write!(f, "<invalid instance: {e}>"),
        }
    }
}

/// Everything needed to reproduce one failed comparison.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub instance: InstanceSpec,
    pub program: String,
    pub check: CheckId,
    pub s: u32,
    pub p: FieldChar,
    pub claim: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: CheckId,
    pub instance: String,
    pub s: u32,
    pub p: FieldChar,
    pub status: Status,
    pub detail: String,
    pub claims: usize,
    pub witness: Option<Witness>,
    pub micros: u64,
}

fn report_from(
    id: CheckId,
    inst: &FiberInstance,
    s: u32,
    p: FieldChar,
    outcome: Result<Outcome>,
    start: Instant,
) -> CheckReport {
    let mut r = CheckReport {
        check: id,
        instance: inst.to_string(),
        s,
        p,
        status: Status::Pass,
        detail: String::new(),
        claims: 0,
        witness: None,
        micros: start.elapsed().as_micros() as u64,
    };
    let witness = |claim: &str, lhs: String, rhs: String| {
        let instance = InstanceSpec::of(inst);
        Witness {
            program: instance.program().unwrap_or_default(),
            instance,
            check: id,
            s,
            p,
            claim: claim.to_string(),
            lhs,
            rhs,
        }
    };
    match outcome {
        Ok(Outcome::NotApplicable(why)) => {
            r.status = Status::HypothesisNotMet;
            r.detail = why;
        }
        Ok(Outcome::Checked(c)) => {
            r.claims = c.items.len();
            if let Some(bad) = c.first_failure() {
                r.status = Status::Fail;
                r.detail = format!("{}: {} vs {}", bad.label, bad.lhs, bad.rhs);
                r.witness = Some(witness(&bad.label, bad.lhs.clone(), bad.rhs.clone()));
            }
        }
        Err(e) if e.is_resource() => {
            r.status = Status::ResourceExceeded;
            r.detail = e.to_string();
        }
        Err(e) => {
            // a kernel refusing the claimed input is itself a discrepancy
            r.status = Status::Fail;
            r.detail = e.to_string();
            r.witness = Some(witness("kernel error", e.to_string(), "a value".into()));
        }
    }
    r
}

fn run_in(
    id: CheckId,
    inst: &FiberInstance,
    s: u32,
    p: FieldChar,
    cache: &BettiCache,
    memo: &Memo,
) -> CheckReport {
    let start = Instant::now();
    let outcome = if s == 0 {
        Err(Error::domain("checks need s ≥ 1"))
    } else {
        checks::run(
            id,
            &Env {
                inst,
                p,
                cache,
                memo,
            },
            s,
        )
    };
    report_from(id, inst, s, p, outcome, start)
}

/// One check on one instance, with a private cache.
pub fn run_check(id: CheckId, inst: &FiberInstance, s: u32, p: FieldChar) -> CheckReport {
    let cache = BettiCache::new(vec![p], BettiOptions::default());
    run_in(id, inst, s, p, &cache, &Memo::default())
}

/// All claims of one check, pass or fail, for inspection.
pub fn claims(
    id: CheckId,
    inst: &FiberInstance,
    s: u32,
    p: FieldChar,
) -> Result<Option<Vec<Claim>>> {
    let cache = BettiCache::new(vec![p], BettiOptions::default());
    let memo = Memo::default();
    match checks::run(
        id,
        &Env {
            inst,
            p,
            cache: &cache,
            memo: &memo,
        },
        s,
    )? {
        Outcome::Checked(c) => Ok(Some(c.items)),
        Outcome::NotApplicable(_) => Ok(None),
    }
}

/// Rebuilds the witness instance from its description and reruns the check.
/// Returns the fresh report; a reproduced failure has status `fail` with the
/// same claim.
pub fn replay(w: &Witness) -> Result<CheckReport> {
    let inst = w.instance.build()?;
    Ok(run_check(w.check, &inst, w.s, w.p))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub checks: Vec<CheckId>,
    pub instances: usize,
    pub generator: GeneratorConfig,
    pub betti: BettiOptions,
    /// Cache directory shared across runs, if any.
    pub cache_dir: Option<std::path::PathBuf>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            checks: CheckId::ALL.to_vec(),
            instances: 500,
            generator: GeneratorConfig::default(),
            betti: BettiOptions::default(),
            cache_dir: None,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    pub pass: usize,
    pub fail: usize,
    pub hypothesis_not_met: usize,
    pub resource_exceeded: usize,
}

impl Counts {
    fn add(&mut self, s: Status) {
        match s {
            Status::Pass => self.pass += 1,
            Status::Fail => self.fail += 1,
            Status::HypothesisNotMet => self.hypothesis_not_met += 1,
            Status::ResourceExceeded => self.resource_exceeded += 1,
        }
    }

    pub fn total(&self) -> usize {
        self.pass + self.fail + self.hypothesis_not_met + self.resource_exceeded
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Slow {
    pub index: u64,
    pub check: CheckId,
    pub s: u32,
    pub p: FieldChar,
    pub micros: u64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub instances: usize,
    pub seed: u64,
    pub chars: Vec<FieldChar>,
    pub per_check: BTreeMap<CheckId, Counts>,
    pub failures: Vec<Witness>,
    /// Instances the generator could not produce.
    pub generation_errors: Vec<String>,
    pub slowest: Vec<Slow>,
    /// `(agree, disagree)` over (instance, check, s) for the char-free checks.
    pub cross_char: (usize, usize),
    pub millis: u64,
}

impl SuiteReport {
    pub fn total(&self) -> Counts {
        let mut t = Counts::default();
        for c in self.per_check.values() {
            t.pass += c.pass;
            t.fail += c.fail;
            t.hypothesis_not_met += c.hypothesis_not_met;
            t.resource_exceeded += c.resource_exceeded;
        }
        t
    }

    pub fn passed(&self) -> bool {
        self.total().fail == 0 && self.generation_errors.is_empty() && self.cross_char.1 == 0
    }
}

const SLOWEST_KEPT: usize = 10;

/// Every configured check on one instance, for every `s` and `p`.
pub fn check_instance(
    inst: &FiberInstance,
    ids: &[CheckId],
    s_max: u32,
    cache: &BettiCache,
) -> Vec<CheckReport> {
    let memo = Memo::default();
    let mut out = Vec::new();
    for &id in ids {
        let top = if id.s_independent() { 1 } else { s_max };
        for s in 1..=top {
            for &p in cache.chars() {
                out.push(run_in(id, inst, s, p, cache, &memo));
            }
        }
    }
    out
}

/// Runs the suite. Instances are processed in parallel; the report does not
/// depend on scheduling.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    cfg.generator.validate()?;
    let start = Instant::now();
    let chars = cfg.generator.chars.clone();
    let indices: Vec<u64> = (0..cfg.instances as u64).collect();
    let per_instance = par::map(
        &indices,
        |&k| -> std::result::Result<Vec<CheckReport>, String> {
            let inst =
                generate_instance(&cfg.generator, k).map_err(|e| format!("instance {k}: {e}"))?;
            let mut cache = BettiCache::new(chars.clone(), cfg.betti);
            if let Some(d) = &cfg.cache_dir {
                cache = cache.with_dir(d);
            }
            Ok(check_instance(
                &inst,
                &cfg.checks,
                cfg.generator.s_max,
                &cache,
            ))
        },
    );

    let mut report = SuiteReport {
        instances: cfg.instances,
        seed: cfg.generator.seed,
        chars: chars.clone(),
        per_check: cfg.checks.iter().map(|&c| (c, Counts::default())).collect(),
        failures: Vec::new(),
        generation_errors: Vec::new(),
        slowest: Vec::new(),
        cross_char: (0, 0),
        millis: 0,
    };
    for (k, res) in per_instance.into_iter().enumerate() {
        let reports = match res {
            Ok(r) => r,
            Err(e) => {
                report.generation_errors.push(e);
                continue;
            }
        };
        let mut verdicts: BTreeMap<(CheckId, u32), Vec<Status>> = BTreeMap::new();
        for r in reports {
            report.per_check.entry(r.check).or_default().add(r.status);
            if r.check.char_free() {
                verdicts.entry((r.check, r.s)).or_default().push(r.status);
            }
            report.slowest.push(Slow {
                index: k as u64,
                check: r.check,
                s: r.s,
                p: r.p,
                micros: r.micros,
            });
            if let Some(w) = r.witness {
                report.failures.push(w);
            }
        }
        for v in verdicts.values() {
            if v.windows(2).all(|w| w[0] == w[1]) {
                report.cross_char.0 += 1;
            } else {
                report.cross_char.1 += 1;
            }
        }
        report.slowest.sort_by_key(|x| std::cmp::Reverse(x.micros));
        report.slowest.truncate(SLOWEST_KEPT);
    }
    report.millis = start.elapsed().as_millis() as u64;
    Ok(report)
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let chars: Vec<String> = self.chars.iter().map(|p| p.to_string()).collect();
        writeln!(
            f,
            "instances {} seed {} chars {}",
            self.instances,
            self.seed,
            chars.join(",")
        )?;
        writeln!(
            f,
            "{:<5} {:>7} {:>5} {:>8} {:>8}",
            "check", "pass", "fail", "hyp-not", "resource"
        )?;
        for (id, c) in &self.per_check {
            writeln!(
                f,
                "{:<5} {:>7} {:>5} {:>8} {:>8}",
                id.to_string(),
                c.pass,
                c.fail,
                c.hypothesis_not_met,
                c.resource_exceeded
            )?;
        }
        let t = self.total();
        writeln!(
            f,
            "total {:>7} {:>5} {:>8} {:>8}",
            t.pass, t.fail, t.hypothesis_not_met, t.resource_exceeded
        )?;
        writeln!(
            f,
            "cross-characteristic verdicts: {} agree, {} disagree",
            self.cross_char.0, self.cross_char.1
        )?;
        for e in &self.generation_errors {
            writeln!(f, "generation error: {e}")?;
        }
        for w in &self.failures {
            writeln!(
                f,
                "FAIL {} s={} p={} {}: {} vs {}",
                w.check, w.s, w.p, w.claim, w.lhs, w.rhs
            )?;
            writeln!(f, "  instance {}", w.instance)?;
        }
        if let Some(s) = self.slowest.first() {
            writeln!(
                f,
                "slowest: instance {} {} s={} p={} {} ms",
                s.index,
                s.check,
                s.s,
                s.p,
                s.micros / 1000
            )?;
        }
        write!(
            f,
            "verdict {} in {} ms",
            if self.passed() { "PASS" } else { "FAIL" },
            self.millis
        )
    }
}
