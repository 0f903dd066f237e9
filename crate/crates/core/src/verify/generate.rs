//! Deterministic random instances.
//!
//! Instance `k` of a configuration is drawn from a ChaCha stream selected by
//! `(seed, k)`, so any instance can be regenerated on its own.

use std::collections::BTreeSet;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::decompose;
use crate::error::{Error, Result};
use crate::fiber::{make_fiber, FiberInstance};
use crate::ideal::MonomialIdeal;
use crate::monomial::{Exp, Monomial};
use crate::resolution::FieldChar;
use crate::ring::Ring;

/// Shape of the generated factor ideals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Structure {
    Random,
    Squarefree,
    Equigenerated,
    Unmixed,
    Primary,
    Zero,
    /// Each factor picks one of the other structures independently.
    Mixed,
}

impl Structure {
    pub const ALL: [Structure; 7] = [
        Structure::Random,
        Structure::Squarefree,
        Structure::Equigenerated,
        Structure::Unmixed,
        Structure::Primary,
        Structure::Zero,
        Structure::Mixed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Structure::Random => "random",
            Structure::Squarefree => "squarefree",
            Structure::Equigenerated => "equigenerated",
            Structure::Unmixed => "unmixed",
            Structure::Primary => "primary",
            Structure::Zero => "zero",
            Structure::Mixed => "mixed",
        }
    }
}

impl FromStr for Structure {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Structure::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::structural(format!("unknown structure `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    /// Variables per factor are drawn from `1..=nvars`.
    pub nvars: usize,
    pub max_degree: u32,
    pub max_gens: usize,
    pub structure: Structure,
    pub s_max: u32,
    pub chars: Vec<FieldChar>,
    pub seed: u64,
    /// Probability that a generated ideal (outside `zero`) may have linear
    /// generators, i.e. is not forced into `𝔪^2`.
    pub linear_rate: f64,
    /// Rejection-sampling attempts per ideal.
    pub retries: usize,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            nvars: 4,
            max_degree: 5,
            max_gens: 6,
            structure: Structure::Mixed,
            s_max: 3,
            chars: FieldChar::default_set(),
            seed: 42,
            linear_rate: 0.1,
            retries: 2000,
        }
    }
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<()> {
        if self.nvars == 0 || self.max_degree == 0 || self.max_gens == 0 || self.s_max == 0 {
            return Err(Error::domain("generator bounds must be positive"));
        }
        if self.nvars > 16 {
            return Err(Error::domain("at most 16 variables per factor"));
        }
        if self.chars.is_empty() {
            return Err(Error::domain("need at least one characteristic"));
        }
        if !(0.0..=1.0).contains(&self.linear_rate) {
            return Err(Error::domain("linear_rate must lie in [0, 1]"));
        }
        Ok(())
    }
}

pub(crate) fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub(crate) fn factor_ring(prefix: &str, k: usize) -> Arc<Ring> {
    let names: Vec<String> = (1..=k).map(|j| format!("{prefix}{j}")).collect();
    Ring::new(&names).expect("generated names are distinct")
}

/// The `index`-th instance of the configuration.
pub fn generate_instance(cfg: &GeneratorConfig, index: u64) -> Result<FiberInstance> {
    cfg.validate()?;
    let mut rng = instance_rng(cfg.seed, index);
    let (si, sj) = match cfg.structure {
        Structure::Mixed => (pick_structure(&mut rng), pick_structure(&mut rng)),
        s => (s, s),
    };
    let r = factor_ring("x", rng.gen_range(1..=cfg.nvars));
    let s = factor_ring("y", rng.gen_range(1..=cfg.nvars));
    let i = generate_ideal(&mut rng, &r, si, cfg)?;
    let j = generate_ideal(&mut rng, &s, sj, cfg)?;
    make_fiber(&i, &j)
}

/// Instances `0..count`.
pub fn generate_instances(cfg: &GeneratorConfig, count: usize) -> Result<Vec<FiberInstance>> {
    (0..count as u64)
        .map(|k| generate_instance(cfg, k))
        .collect()
}

fn pick_structure(rng: &mut ChaCha8Rng) -> Structure {
    // zero factors are rarer than the rest
    let pool = [
        (Structure::Random, 4),
        (Structure::Squarefree, 3),
        (Structure::Equigenerated, 3),
        (Structure::Unmixed, 3),
        (Structure::Primary, 2),
        (Structure::Zero, 1),
    ];
    pool.choose_weighted(rng, |x| x.1).unwrap().0
}

/// One ideal of the requested structure over `ring`.
pub fn generate_ideal(
    rng: &mut ChaCha8Rng,
    ring: &Arc<Ring>,
    structure: Structure,
    cfg: &GeneratorConfig,
) -> Result<MonomialIdeal> {
    let n = ring.nvars();
    let allow_linear = rng.gen_bool(cfg.linear_rate);
    let mut min_deg = if allow_linear { 1 } else { 2 };
    if structure == Structure::Squarefree {
        // one variable has no squarefree monomials of degree two
        min_deg = min_deg.min(n as u32);
    }
    for _ in 0..cfg.retries.max(1) {
        let cand = match structure {
            Structure::Zero => return Ok(MonomialIdeal::zero(ring)),
            Structure::Mixed => {
                let s = pick_structure(rng);
                return generate_ideal(rng, ring, s, cfg);
            }
            Structure::Random => {
                let k = rng.gen_range(1..=cfg.max_gens);
                let gens = (0..k)
                    .map(|_| random_monomial(rng, n, min_deg, cfg.max_degree))
                    .collect();
                MonomialIdeal::minimalize(ring, gens)?
            }
            Structure::Equigenerated => {
                let d = rng.gen_range(min_deg..=cfg.max_degree.max(min_deg));
                let k = rng.gen_range(1..=cfg.max_gens);
                let gens = (0..k).map(|_| random_monomial(rng, n, d, d)).collect();
                MonomialIdeal::minimalize(ring, gens)?
            }
            Structure::Squarefree => {
                let top = (cfg.max_degree as usize).min(n);
                let lo = (min_deg as usize).min(top);
                let k = rng.gen_range(1..=cfg.max_gens);
                let gens = (0..k)
                    .map(|_| {
                        let d = rng.gen_range(lo..=top);
                        let mut vars: Vec<usize> = (0..n).collect();
                        vars.shuffle(rng);
                        let mut e = vec![0 as Exp; n];
                        for &v in &vars[..d] {
                            e[v] = 1;
                        }
                        Monomial::new(&e)
                    })
                    .collect();
                MonomialIdeal::minimalize(ring, gens)?
            }
            Structure::Primary => {
                let p = random_support(rng, n);
                primary_with_radical(rng, ring, p, min_deg, cfg)?
            }
            Structure::Unmixed => {
                let primes = random_antichain(rng, n);
                let parts = primes
                    .iter()
                    .map(|&p| primary_with_radical(rng, ring, p, min_deg, cfg))
                    .collect::<Result<Vec<_>>>()?;
                MonomialIdeal::intersect_all(ring, parts)?
            }
        };
        if accept(&cand, structure, min_deg, cfg)? {
            return Ok(cand);
        }
    }
    Err(Error::domain(format!(
        "could not generate a {} ideal in {} variables within {} attempts",
        structure.name(),
        n,
        cfg.retries
    )))
}

fn accept(
    a: &MonomialIdeal,
    structure: Structure,
    min_deg: u32,
    cfg: &GeneratorConfig,
) -> Result<bool> {
    if a.is_zero() || !a.is_proper() {
        return Ok(false);
    }
    if a.num_gens() > cfg.max_gens || a.max_gen_degree().unwrap_or(0) > cfg.max_degree {
        return Ok(false);
    }
    if a.min_gen_degree().unwrap_or(0) < min_deg {
        return Ok(false);
    }
    Ok(match structure {
        Structure::Unmixed => decompose::is_unmixed(a)?,
        Structure::Primary => decompose::is_primary(a),
        Structure::Squarefree => a.is_squarefree(),
        Structure::Equigenerated => a.is_equigenerated(),
        _ => true,
    })
}

fn random_monomial(rng: &mut ChaCha8Rng, n: usize, lo: u32, hi: u32) -> Monomial {
    let d = rng.gen_range(lo..=hi.max(lo));
    let mut e = vec![0 as Exp; n];
    for _ in 0..d {
        e[rng.gen_range(0..n)] += 1;
    }
    Monomial::new(&e)
}

fn random_support(rng: &mut ChaCha8Rng, n: usize) -> u64 {
    rng.gen_range(1u64..(1u64 << n))
}

/// Up to three pairwise incomparable non-empty variable sets.
fn random_antichain(rng: &mut ChaCha8Rng, n: usize) -> Vec<u64> {
    let want = rng.gen_range(1..=3);
    let mut out: BTreeSet<u64> = BTreeSet::new();
    for _ in 0..20 {
        if out.len() == want {
            break;
        }
        let p = random_support(rng, n);
        if out.iter().all(|&q| p & !q != 0 && q & !p != 0) {
            out.insert(p);
        }
    }
    out.into_iter().collect()
}

/// A primary ideal with radical generated by the variables in `mask`: pure
/// powers of those variables plus a few mixed monomials in them.
fn primary_with_radical(
    rng: &mut ChaCha8Rng,
    ring: &Arc<Ring>,
    mask: u64,
    min_deg: u32,
    cfg: &GeneratorConfig,
) -> Result<MonomialIdeal> {
    let n = ring.nvars();
    let vars: Vec<usize> = (0..n).filter(|&j| mask >> j & 1 == 1).collect();
    let hi = cfg.max_degree.clamp(1, 3);
    let mut gens: Vec<Monomial> = vars
        .iter()
        .map(|&j| Monomial::var_power(n, j, rng.gen_range(min_deg.min(hi)..=hi) as Exp))
        .collect();
    if vars.len() > 1 {
        for _ in 0..rng.gen_range(0..=2) {
            let d = rng.gen_range(min_deg.max(2)..=cfg.max_degree.max(2));
            let mut e = vec![0 as Exp; n];
            for _ in 0..d {
                e[*vars.choose(rng).unwrap()] += 1;
            }
            gens.push(Monomial::new(&e));
        }
    }
    MonomialIdeal::minimalize(ring, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic() {
        let cfg = GeneratorConfig {
            structure: Structure::Squarefree,
            nvars: 3,
            ..Default::default()
        };
        let a = generate_instances(&cfg, 10).unwrap();
        let b = generate_instances(&cfg, 10).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.f, y.f);
        }
        assert_eq!(generate_instance(&cfg, 7).unwrap().f, a[7].f);
        assert!(a.iter().all(|x| x.i.is_squarefree() && x.j.is_squarefree()));
    }

    #[test]
    fn zero_structure() {
        let cfg = GeneratorConfig {
            structure: Structure::Zero,
            ..Default::default()
        };
        for inst in generate_instances(&cfg, 5).unwrap() {
            assert!(inst.i.is_zero() && inst.j.is_zero());
        }
    }

    #[test]
    fn unmixed_and_primary_structures() {
        for (st, check) in [
            (
                Structure::Unmixed,
                decompose::is_unmixed as fn(&MonomialIdeal) -> Result<bool>,
            ),
            (Structure::Primary, |a: &MonomialIdeal| {
                Ok(decompose::is_primary(a))
            }),
        ] {
            let cfg = GeneratorConfig {
                structure: st,
                ..Default::default()
            };
            for inst in generate_instances(&cfg, 25).unwrap() {
                assert!(check(&inst.i).unwrap() && check(&inst.j).unwrap(), "{inst}");
                assert!(inst.i.num_gens() <= 6 && inst.i.max_gen_degree().unwrap() <= 5);
            }
        }
    }

    #[test]
    fn bounds_respected() {
        let cfg = GeneratorConfig::default();
        for inst in generate_instances(&cfg, 60).unwrap() {
            for a in [&inst.i, &inst.j] {
                assert!(a.ring().nvars() <= 4);
                assert!(a.num_gens() <= 6);
                assert!(a.max_gen_degree().unwrap_or(0) <= 5);
            }
        }
    }
}
