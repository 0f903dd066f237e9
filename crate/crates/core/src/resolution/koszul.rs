//! Multigraded Betti numbers from upper Koszul simplicial complexes.
//!
//! For a multidegree `a`, `K^a(I) = {S ⊆ supp(a) : x^{a-S} ∈ I}` and
//! `β_{i,a}(I) = dim H̃_{i-1}(K^a)`. Only multidegrees in the lcm lattice of
//! the minimal generators can carry nonzero Betti numbers; they are found by
//! a depth-first search over per-variable exponent values that keeps, at
//! every node, the generators still dividing the partial multidegree.

use std::sync::atomic::{AtomicU64, Ordering};

use super::homology::Complex;
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::{Exp, Monomial};
use crate::par;

/// How candidate multidegrees are produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Enumeration {
    /// The lcm lattice of the minimal generators.
    LcmClosure,
    /// Every exponent vector below the lcm of all generators. Debug only.
    Box,
}

/// One nonzero multigraded Betti number of the ideal, per requested prime.
#[derive(Debug, Clone)]
pub(crate) struct RawEntry {
    pub i: usize,
    pub multidegree: Monomial,
    /// rank for each requested characteristic, in request order
    pub ranks: Vec<u64>,
}

struct Search<'a> {
    gens: &'a [Monomial],
    values: Vec<Vec<Exp>>,
    nvars: usize,
    chars: &'a [u64],
    budget: u64,
    visited: &'a AtomicU64,
}

impl Search<'_> {
    fn count(&self) -> Result<()> {
        let v = self.visited.fetch_add(1, Ordering::Relaxed) + 1;
        if v > self.budget {
            Err(Error::resource("lcm-lattice multidegrees", self.budget))
        } else {
            Ok(())
        }
    }

    fn dfs(&self, j: usize, a: &mut Vec<Exp>, cand: &[u32], out: &mut Vec<RawEntry>) -> Result<()> {
        if j == self.nvars {
            self.count()?;
            koszul_point(self.gens, a, cand, self.chars, out);
            return Ok(());
        }
        let mut next = Vec::with_capacity(cand.len());
        for &v in &self.values[j] {
            next.clear();
            next.extend(
                cand.iter()
                    .copied()
                    .filter(|&g| self.gens[g as usize].exps()[j] <= v),
            );
            if next.is_empty() {
                continue;
            }
            a[j] = v;
            if !(0..=j).all(|k| {
                a[k] == 0
                    || next
                        .iter()
                        .any(|&g| self.gens[g as usize].exps()[k] == a[k])
            }) {
                continue;
            }
            self.dfs(j + 1, a, &next, out)?;
        }
        a[j] = 0;
        Ok(())
    }
}

/// Computes the nonzero Betti numbers of `ideal` over each prime in `chars`.
pub(crate) fn koszul_betti(
    ideal: &MonomialIdeal,
    chars: &[u64],
    enumeration: Enumeration,
    budget: u64,
) -> Result<Vec<RawEntry>> {
    let gens = ideal.gens();
    let n = ideal.ring().nvars();
    if n > 20 {
        return Err(Error::resource("variables for dense Koszul complexes", 20));
    }
    let visited = AtomicU64::new(0);
    let mut entries = match enumeration {
        Enumeration::LcmClosure => {
            let values: Vec<Vec<Exp>> = (0..n)
                .map(|j| {
                    let mut v: Vec<Exp> = gens.iter().map(|g| g.exps()[j]).collect();
                    v.sort_unstable();
                    v.dedup();
                    v
                })
                .collect();
            let search = Search {
                gens,
                values,
                nvars: n,
                chars,
                budget,
                visited: &visited,
            };
            let all: Vec<u32> = (0..gens.len() as u32).collect();
            if n == 0 {
                let mut out = Vec::new();
                search.dfs(0, &mut Vec::new(), &all, &mut out)?;
                out
            } else {
                // Split the search on the first coordinate for the worker pool.
                let firsts = search.values[0].clone();
                let parts = par::map(&firsts, |&v| {
                    let cand: Vec<u32> = all
                        .iter()
                        .copied()
                        .filter(|&g| gens[g as usize].exps()[0] <= v)
                        .collect();
                    let mut out = Vec::new();
                    if cand.is_empty()
                        || (v > 0 && !cand.iter().any(|&g| gens[g as usize].exps()[0] == v))
                    {
                        return Ok(out);
                    }
                    let mut a = vec![0; n];
                    a[0] = v;
                    search.dfs(1, &mut a, &cand, &mut out)?;
                    Ok(out)
                });
                let mut out = Vec::new();
                for p in parts {
                    out.extend(p?);
                }
                out
            }
        }
        Enumeration::Box => box_search(gens, n, chars, budget)?,
    };
    entries.sort_by(|x, y| {
        x.i.cmp(&y.i)
            .then_with(|| x.multidegree.cmp(&y.multidegree))
    });
    Ok(entries)
}

fn box_search(gens: &[Monomial], n: usize, chars: &[u64], budget: u64) -> Result<Vec<RawEntry>> {
    let top: Vec<Exp> = (0..n)
        .map(|j| gens.iter().map(|g| g.exps()[j]).max().unwrap_or(0))
        .collect();
    let size = top
        .iter()
        .try_fold(1u64, |acc, &t| acc.checked_mul(t as u64 + 1));
    match size {
        Some(s) if s <= budget => {}
        _ => return Err(Error::resource("exponent box multidegrees", budget)),
    }
    let mut out = Vec::new();
    let mut a = vec![0 as Exp; n];
    loop {
        let am = Monomial::new(&a);
        let cand: Vec<u32> = (0..gens.len() as u32)
            .filter(|&g| gens[g as usize].divides(&am))
            .collect();
        if !cand.is_empty() {
            koszul_point(gens, &a, &cand, chars, &mut out);
        }
        // odometer increment
        let mut j = 0;
        loop {
            if j == n {
                return Ok(out);
            }
            if a[j] < top[j] {
                a[j] += 1;
                break;
            }
            a[j] = 0;
            j += 1;
        }
    }
}

/// Homology of `K^a` given the generators dividing `x^a`.
fn koszul_point(
    gens: &[Monomial],
    a: &[Exp],
    dividing: &[u32],
    chars: &[u64],
    out: &mut Vec<RawEntry>,
) {
    let supp: Vec<usize> = (0..a.len()).filter(|&j| a[j] > 0).collect();
    let k = supp.len();
    // M_g = variables where g reaches a; S is a face iff some M_g misses S.
    let mut masks: Vec<u32> = dividing
        .iter()
        .map(|&g| {
            let e = gens[g as usize].exps();
            supp.iter()
                .enumerate()
                .fold(0u32, |m, (l, &j)| if e[j] == a[j] { m | 1 << l } else { m })
        })
        .collect();
    masks.sort_unstable_by_key(|m| m.count_ones());
    masks.dedup();
    let mut minimal: Vec<u32> = Vec::with_capacity(masks.len());
    for m in masks {
        if !minimal.iter().any(|&q| q & !m == 0) {
            minimal.push(m);
        }
    }
    if minimal.contains(&0) {
        // K^a is the full simplex on supp(a): acyclic unless it is {∅}.
        if k == 0 {
            out.push(RawEntry {
                i: 0,
                multidegree: Monomial::new(a),
                ranks: vec![1; chars.len()],
            });
        }
        return;
    }
    let covered = minimal.iter().fold(0u32, |u, &m| u | m);
    if covered != (1u32 << k) - 1 {
        // some vertex lies in every facet: K^a is a cone
        return;
    }
    let facets: Vec<u32> = minimal.iter().map(|&m| !m & ((1u32 << k) - 1)).collect();
    let complex = Complex::from_facets(k, &facets);
    let per_char: Vec<Vec<usize>> = chars.iter().map(|&p| complex.reduced_betti(p)).collect();
    // index d+1 of reduced_betti is H̃_d, which gives β_{d+1,a}
    for idx in 0..=k {
        if per_char.iter().all(|b| b[idx] == 0) {
            continue;
        }
        out.push(RawEntry {
            i: idx,
            multidegree: Monomial::new(a),
            ranks: per_char.iter().map(|b| b[idx] as u64).collect(),
        });
    }
}
