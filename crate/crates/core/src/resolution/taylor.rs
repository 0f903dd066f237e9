//! Betti numbers from the Taylor resolution.
//!
//! This is an independent cross-check for the Koszul engine: the Taylor
//! complex of `r` generators has one basis element per nonempty subset, and
//! after tensoring with the field only the lcm-preserving faces survive in
//! each multidegree. Exponential in the number of generators, so only usable
//! on small ideals.

use std::collections::BTreeMap;

use super::homology::rank_mod_p;
use super::{BettiEntry, BettiTable, FieldChar};
use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

pub const MAX_TAYLOR_GENS: usize = 16;

pub fn taylor_betti(ideal: &MonomialIdeal, p: FieldChar) -> Result<BettiTable> {
    let gens = ideal.gens();
    let r = gens.len();
    if r == 0 {
        return Err(Error::domain("Betti table of the zero ideal"));
    }
    if r > MAX_TAYLOR_GENS {
        return Err(Error::resource(
            "Taylor complex generators",
            MAX_TAYLOR_GENS as u64,
        ));
    }
    let mut lcms: Vec<Monomial> = Vec::with_capacity(1 << r);
    lcms.push(Monomial::one(ideal.ring().nvars()));
    let mut groups: BTreeMap<Monomial, Vec<u32>> = BTreeMap::new();
    for sigma in 1u32..(1 << r) {
        let low = sigma.trailing_zeros() as usize;
        let l = lcms[(sigma & (sigma - 1)) as usize].lcm(&gens[low]);
        groups.entry(l.clone()).or_default().push(sigma);
        lcms.push(l);
    }
    let q = p.get() as u64;
    let mut entries = Vec::new();
    for (a, subsets) in groups {
        // by_deg[i] = subsets with i+1 elements, i.e. homological degree i
        let mut by_deg: Vec<Vec<u32>> = vec![Vec::new(); r];
        for &s in &subsets {
            by_deg[s.count_ones() as usize - 1].push(s);
        }
        let rank_d = |i: usize| -> usize {
            // d_i : C_i -> C_{i-1}
            if i == 0 || by_deg[i].is_empty() || by_deg[i - 1].is_empty() {
                return 0;
            }
            let mut mat = vec![vec![0u64; by_deg[i - 1].len()]; by_deg[i].len()];
            for (ci, &s) in by_deg[i].iter().enumerate() {
                let mut rest = s;
                let mut pos = 0;
                while rest != 0 {
                    let t = rest.trailing_zeros();
                    rest &= rest - 1;
                    let sub = s & !(1 << t);
                    if let Ok(ri) = by_deg[i - 1].binary_search(&sub) {
                        mat[ci][ri] = if pos % 2 == 0 { 1 } else { q - 1 };
                    }
                    pos += 1;
                }
            }
            rank_mod_p(&mut mat, q)
        };
        let ranks: Vec<usize> = (0..=r).map(|i| if i < r { rank_d(i) } else { 0 }).collect();
        for i in 0..r {
            let dim = by_deg[i].len() - ranks[i] - if i + 1 < r { ranks[i + 1] } else { 0 };
            if dim > 0 {
                entries.push(BettiEntry {
                    i,
                    multidegree: a.clone(),
                    rank: dim as u64,
                });
            }
        }
    }
    Ok(BettiTable::from_entries(ideal.ring().nvars(), p, entries))
}
