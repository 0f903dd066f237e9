//! Graded Betti tables over prime fields and the invariants derived from
//! them: projective dimension, depth and Castelnuovo–Mumford regularity.
//!
//! Regularities are `Option<i64>` with `None` standing for `-∞`, the value
//! taken by the zero ideal. `Option`'s ordering puts `None` below every
//! `Some`, so `max` over a mixed list behaves as expected.

pub mod cache;
pub mod homology;
mod koszul;
pub mod taylor;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::monomial::Monomial;

pub use koszul::Enumeration;

/// Default cap on enumerated multidegrees.
pub const DEFAULT_MULTIDEGREE_BUDGET: u64 = 10_000_000;

/// Renders a regularity, `None` as `-inf`.
pub fn show_reg(v: Option<i64>) -> String {
    v.map_or_else(|| "-inf".to_string(), |x| x.to_string())
}

/// Characteristic of the coefficient field; always prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct FieldChar(u32);

impl FieldChar {
    pub fn new(p: u32) -> Result<Self> {
        if p >= 2
            && (2..)
                .take_while(|d| d * d <= p)
                .all(|d| !p.is_multiple_of(d))
        {
            Ok(FieldChar(p))
        } else {
            Err(Error::domain(format!("{p} is not prime")))
        }
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// The characteristics every formula check runs at.
    pub fn default_set() -> Vec<FieldChar> {
        vec![FieldChar(2), FieldChar(3), FieldChar(101)]
    }
}

impl TryFrom<u32> for FieldChar {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        FieldChar::new(p)
    }
}

impl From<FieldChar> for u32 {
    fn from(p: FieldChar) -> u32 {
        p.0
    }
}

impl fmt::Display for FieldChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Whether a table describes the ideal `I` or the quotient `R/I`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Subject {
    Ideal,
    Quotient,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiEntry {
    pub i: usize,
    pub multidegree: Monomial,
    pub rank: u64,
}

/// Sparse multigraded Betti table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub subject: Subject,
    pub nvars: usize,
    pub char: FieldChar,
    /// sorted by homological index, then multidegree
    pub entries: Vec<BettiEntry>,
}

impl BettiTable {
    pub(crate) fn from_entries(
        nvars: usize,
        char: FieldChar,
        mut entries: Vec<BettiEntry>,
    ) -> Self {
        entries.sort_by(|a, b| {
            a.i.cmp(&b.i)
                .then_with(|| a.multidegree.cmp(&b.multidegree))
        });
        BettiTable {
            subject: Subject::Ideal,
            nvars,
            char,
            entries,
        }
    }

    /// The table of `R/I` from the table of `I`.
    pub fn to_quotient(&self) -> BettiTable {
        if self.subject == Subject::Quotient {
            return self.clone();
        }
        let mut entries = vec![BettiEntry {
            i: 0,
            multidegree: Monomial::one(self.nvars),
            rank: 1,
        }];
        entries.extend(self.entries.iter().map(|e| BettiEntry {
            i: e.i + 1,
            ..e.clone()
        }));
        BettiTable {
            subject: Subject::Quotient,
            nvars: self.nvars,
            char: self.char,
            entries,
        }
    }

    /// Projective dimension of the subject.
    pub fn pd(&self) -> Option<usize> {
        self.entries.iter().map(|e| e.i).max()
    }

    /// Regularity of the subject.
    pub fn reg(&self) -> Option<i64> {
        self.entries
            .iter()
            .map(|e| e.multidegree.degree() as i64 - e.i as i64)
            .max()
    }

    /// `depth(R/I) = nvars - pd(R/I)`.
    pub fn depth_quotient(&self) -> usize {
        let pd_q = match self.subject {
            Subject::Ideal => self.pd().map_or(0, |p| p + 1),
            Subject::Quotient => self.pd().unwrap_or(0),
        };
        self.nvars - pd_q
    }

    /// Total-degree collapse `β_{i,j}`.
    pub fn graded(&self) -> BTreeMap<(usize, u32), u64> {
        let mut out = BTreeMap::new();
        for e in &self.entries {
            *out.entry((e.i, e.multidegree.degree())).or_insert(0) += e.rank;
        }
        out
    }

    pub fn beta(&self, i: usize, a: &Monomial) -> u64 {
        self.entries
            .iter()
            .find(|e| e.i == i && &e.multidegree == a)
            .map_or(0, |e| e.rank)
    }
}

/// Options for the Koszul engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiOptions {
    pub budget: u64,
    pub enumeration: Enumeration,
}

impl Default for BettiOptions {
    fn default() -> Self {
        BettiOptions {
            budget: DEFAULT_MULTIDEGREE_BUDGET,
            enumeration: Enumeration::LcmClosure,
        }
    }
}

/// Betti table of a non-zero ideal over GF(p).
pub fn betti_table(a: &MonomialIdeal, p: FieldChar) -> Result<BettiTable> {
    Ok(betti_tables(a, &[p], BettiOptions::default())?.remove(0))
}

/// Betti tables for several characteristics in one pass: the complexes are
/// built once and only the rank computations repeat.
pub fn betti_tables(
    a: &MonomialIdeal,
    chars: &[FieldChar],
    opts: BettiOptions,
) -> Result<Vec<BettiTable>> {
    if a.is_zero() {
        return Err(Error::domain("Betti table of the zero ideal"));
    }
    let ps: Vec<u64> = chars.iter().map(|c| c.get() as u64).collect();
    let raw = koszul::koszul_betti(a, &ps, opts.enumeration, opts.budget)?;
    let n = a.ring().nvars();
    Ok(chars
        .iter()
        .enumerate()
        .map(|(k, &c)| {
            let entries = raw
                .iter()
                .filter(|e| e.ranks[k] > 0)
                .map(|e| BettiEntry {
                    i: e.i,
                    multidegree: e.multidegree.clone(),
                    rank: e.ranks[k],
                })
                .collect();
            BettiTable::from_entries(n, c, entries)
        })
        .collect())
}

/// How an invariant was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Koszul,
    Structured,
    TaylorOracle,
}

/// Depth of `R/A^(s)` over a window of `s`, as a stand-in for the symbolic
/// analytic spread.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableDepth {
    pub value: usize,
    pub s_from: u32,
    pub s_to: u32,
    pub depths: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub depth_quotient: usize,
    pub pd_quotient: usize,
    pub reg_ideal: Option<i64>,
    pub reg_quotient: i64,
    pub d: Option<u32>,
    pub char: FieldChar,
    pub method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stable_symbolic_depth: Option<StableDepth>,
}

impl InvariantReport {
    pub fn from_table(a: &MonomialIdeal, table: &BettiTable) -> Self {
        let q = table.to_quotient();
        InvariantReport {
            depth_quotient: q.depth_quotient(),
            pd_quotient: q.pd().unwrap_or(0),
            reg_ideal: table.reg(),
            reg_quotient: q.reg().unwrap_or(0),
            d: a.max_gen_degree(),
            char: table.char,
            method: Method::Koszul,
            stable_symbolic_depth: None,
        }
    }

    pub fn of_zero(nvars: usize, p: FieldChar) -> Self {
        InvariantReport {
            depth_quotient: nvars,
            pd_quotient: 0,
            reg_ideal: None,
            reg_quotient: 0,
            d: None,
            char: p,
            method: Method::Koszul,
            stable_symbolic_depth: None,
        }
    }
}

/// Depth, projective dimension and regularity of a proper ideal.
pub fn invariants(a: &MonomialIdeal, p: FieldChar) -> Result<InvariantReport> {
    if a.is_unit() {
        return Err(Error::domain("invariants of the unit ideal"));
    }
    if a.is_zero() {
        return Ok(InvariantReport::of_zero(a.ring().nvars(), p));
    }
    Ok(InvariantReport::from_table(a, &betti_table(a, p)?))
}

/// Scans `depth(R/A^(s))` for `s` in `1..=s_max` and reports the last value.
pub fn stable_symbolic_depth(a: &MonomialIdeal, p: FieldChar, s_max: u32) -> Result<StableDepth> {
    let mut depths = Vec::new();
    for s in 1..=s_max.max(1) {
        let sp = crate::symbolic::symbolic_power(a, s, crate::symbolic::SymbolicMode::Ass)?;
        depths.push(invariants(&sp, p)?.depth_quotient);
    }
    Ok(StableDepth {
        value: *depths.last().unwrap(),
        s_from: 1,
        s_to: s_max.max(1),
        depths,
    })
}

/// Splits `A = B·C` with `B`, `C` in disjoint sets of variables, `B` as
/// small as possible. Returns `None` if no such split exists.
pub fn split_disjoint_product(a: &MonomialIdeal) -> Option<(MonomialIdeal, MonomialIdeal)> {
    let supp = a.support();
    let vars: Vec<u32> = (0..64).filter(|j| supp >> j & 1 == 1).collect();
    let k = vars.len();
    if k < 2 || a.num_gens() == 0 {
        return None;
    }
    let candidates: Vec<u64> = if k <= 16 {
        let rest = &vars[1..];
        let mut v: Vec<u64> = (0u64..(1 << (k - 1)) - 1)
            .map(|bits| {
                rest.iter().enumerate().fold(1u64 << vars[0], |m, (l, &j)| {
                    if bits >> l & 1 == 1 {
                        m | 1 << j
                    } else {
                        m
                    }
                })
            })
            .collect();
        v.sort_by_key(|m| m.count_ones());
        v
    } else {
        let ring = a.ring();
        (0..ring.blocks().len())
            .map(|b| ring.block_mask(b) & supp)
            .filter(|&m| m != 0 && m != supp)
            .collect()
    };
    for x in candidates {
        let y = supp & !x;
        let ring = a.ring();
        let b = MonomialIdeal::minimalize(ring, a.gens().iter().map(|g| g.restrict(x)).collect())
            .ok()?;
        let c = MonomialIdeal::minimalize(ring, a.gens().iter().map(|g| g.restrict(y)).collect())
            .ok()?;
        if b.num_gens() * c.num_gens() != a.num_gens() {
            continue;
        }
        if b.product(&c).ok().as_ref() == Some(a) {
            return Some((b, c));
        }
    }
    None
}

/// `Some(s)` when `A = P^s` for the prime `P` on the support of `A`.
pub fn prime_power_exponent(a: &MonomialIdeal) -> Option<u32> {
    let s = a.min_gen_degree()?;
    if !a.is_equigenerated() || s == 0 {
        return None;
    }
    let k = a.support().count_ones() as u64;
    // number of monomials of degree s in k variables
    let count = (1..=s as u64).fold(1u64, |acc, i| acc * (k - 1 + i) / i);
    (a.num_gens() as u64 == count).then_some(s)
}

/// Regularity via structural shortcuts, falling back to `fallback`:
/// disjoint-variable products add regularities, and `P^s` has regularity `s`.
pub fn reg_structured_with(
    a: &MonomialIdeal,
    fallback: &dyn Fn(&MonomialIdeal) -> Result<Option<i64>>,
) -> Result<(Option<i64>, Method)> {
    if a.is_zero() {
        return Err(Error::domain("regularity shortcut needs a non-zero ideal"));
    }
    if let Some(s) = prime_power_exponent(a) {
        return Ok((Some(s as i64), Method::Structured));
    }
    if let Some((b, c)) = split_disjoint_product(a) {
        let (rb, _) = reg_structured_with(&b, fallback)?;
        let (rc, _) = reg_structured_with(&c, fallback)?;
        let sum = rb.zip(rc).map(|(x, y)| x + y);
        return Ok((sum, Method::Structured));
    }
    Ok((fallback(a)?, Method::Koszul))
}

pub fn reg_structured(a: &MonomialIdeal, p: FieldChar) -> Result<i64> {
    let (r, _) = reg_structured_with(a, &|x| Ok(betti_table(x, p)?.reg()))?;
    r.ok_or_else(|| Error::domain("regularity of the zero ideal"))
}

/// A monomial in `(A : 𝔪) \ A`, if any. Such a witness exists exactly when
/// `depth(R/A) = 0`.
pub fn socle_test(a: &MonomialIdeal) -> Option<Monomial> {
    let ring = a.ring();
    let mut colon = MonomialIdeal::unit(ring);
    for j in 0..ring.nvars() {
        let xj = Monomial::var_power(ring.nvars(), j, 1);
        colon = colon.intersect(&a.colon_monomial(&xj)).ok()?;
    }
    colon.gens().iter().find(|g| !a.contains(g)).cloned()
}

/// Cap on monomials visited while scanning a finite-length quotient.
pub const DEFAULT_COLENGTH_BUDGET: usize = 5_000_000;

/// Largest degree of a monomial in `A \ B` for a finite-length quotient
/// `A/B`; `None` (−∞) when `A = B`.
pub fn finite_colength_top_degree(a: &MonomialIdeal, b: &MonomialIdeal) -> Result<Option<u32>> {
    finite_colength_top_degree_with(a, b, DEFAULT_COLENGTH_BUDGET)
}

/// Every monomial of `A \ B` is `g·v` with `g` a generator of `A` outside
/// `B` and `v` outside `B : g`, so the top degree is the maximum of
/// `deg g` plus the top standard degree of `B : g`.
pub fn finite_colength_top_degree_with(
    a: &MonomialIdeal,
    b: &MonomialIdeal,
    budget: usize,
) -> Result<Option<u32>> {
    if a.ring() != b.ring() {
        return Err(Error::structural("ring mismatch"));
    }
    if !b.is_subset_of(a) {
        return Err(Error::domain("B is not contained in A"));
    }
    let mut top = None;
    for g in a.gens().iter().filter(|g| !b.contains(g)) {
        let c = b.colon_monomial(g);
        if !c.has_finite_colength() {
            return Err(Error::domain("A/B does not have finite length"));
        }
        let t = c.top_standard_degree(budget)?.expect("g is outside B");
        top = top.max(Some(g.degree() + t));
    }
    Ok(top)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Exp;
    use crate::ring::Ring;
    use std::sync::Arc;

    fn ideal(r: &Arc<Ring>, gens: &[&[Exp]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(r, gens).unwrap()
    }

    fn p(x: u32) -> FieldChar {
        FieldChar::new(x).unwrap()
    }

    #[test]
    fn field_char_must_be_prime() {
        assert!(FieldChar::new(4).is_err());
        assert!(FieldChar::new(1).is_err());
        assert_eq!(FieldChar::new(101).unwrap().get(), 101);
    }

    #[test]
    fn triangle_table() {
        let r = Ring::new(&["x", "y", "z"]).unwrap();
        let t = ideal(&r, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        for c in [2, 3, 101] {
            let b = betti_table(&t, p(c)).unwrap();
            assert_eq!(b.graded(), BTreeMap::from([((0, 2), 3), ((1, 3), 2)]));
            assert_eq!(b.beta(1, &Monomial::new(&[1, 1, 1])), 2);
            let inv = InvariantReport::from_table(&t, &b);
            assert_eq!(inv.depth_quotient, 1);
            assert_eq!(inv.reg_ideal, Some(2));
            assert_eq!(inv.reg_quotient, 1);
        }
    }

    #[test]
    fn principal_and_zero() {
        let r = Ring::new(&["x"]).unwrap();
        let b = betti_table(&ideal(&r, &[&[2]]), p(2)).unwrap();
        assert_eq!(
            b.entries,
            vec![BettiEntry {
                i: 0,
                multidegree: Monomial::new(&[2]),
                rank: 1
            }]
        );
        assert!(betti_table(&MonomialIdeal::zero(&r), p(2)).is_err());
        let r3 = Ring::new(&["x", "y", "z"]).unwrap();
        let z = invariants(&MonomialIdeal::zero(&r3), p(2)).unwrap();
        assert_eq!(
            (z.depth_quotient, z.reg_quotient, z.reg_ideal),
            (3, 0, None)
        );
    }

    #[test]
    fn box_enumeration_agrees() {
        let r = Ring::new(&["x", "y", "z"]).unwrap();
        let a = ideal(&r, &[&[2, 1, 0], &[0, 2, 1], &[1, 0, 2], &[1, 1, 1]]);
        let lcm = betti_tables(&a, &[p(2)], BettiOptions::default()).unwrap();
        let bx = betti_tables(
            &a,
            &[p(2)],
            BettiOptions {
                enumeration: Enumeration::Box,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(lcm, bx);
    }

    #[test]
    fn budget_exceeded_is_resource_error() {
        let r = Ring::new(&["x", "y"]).unwrap();
        let a = MonomialIdeal::maximal(&r).power(5).unwrap();
        let err = betti_tables(
            &a,
            &[p(2)],
            BettiOptions {
                budget: 3,
                ..Default::default()
            },
        )
        .unwrap_err();
        assert!(err.is_resource());
    }

    #[test]
    fn structured_regularity() {
        let r = Ring::new(&["x", "y"]).unwrap();
        let m = MonomialIdeal::maximal(&r);
        for s in 1..5 {
            assert_eq!(
                reg_structured(&m.power(s).unwrap(), p(2)).unwrap(),
                s as i64
            );
        }
        let r4 = Ring::new(&["a", "b", "c", "d"]).unwrap();
        let b = ideal(&r4, &[&[2, 0, 0, 0], &[1, 1, 0, 0]]);
        let c = ideal(&r4, &[&[0, 0, 1, 1], &[0, 0, 0, 3]]);
        let bc = b.product(&c).unwrap();
        let (sb, sc) = split_disjoint_product(&bc).unwrap();
        assert_eq!(sb.product(&sc).unwrap(), bc);
        let direct = betti_table(&bc, p(3)).unwrap().reg().unwrap();
        assert_eq!(reg_structured(&bc, p(3)).unwrap(), direct);
    }

    #[test]
    fn socle_examples() {
        let r = Ring::new(&["x", "y"]).unwrap();
        let m4 = MonomialIdeal::maximal(&r).power(4).unwrap();
        let w = socle_test(&m4).unwrap();
        assert_eq!(w.degree(), 3);
        assert!(socle_test(&ideal(&r, &[&[1, 0]])).is_none());
        assert_eq!(
            socle_test(&ideal(&r, &[&[2, 0], &[1, 1]])),
            Some(Monomial::new(&[1, 0]))
        );
    }

    #[test]
    fn colength_examples() {
        let r = Ring::new(&["x", "y"]).unwrap();
        let m = MonomialIdeal::maximal(&r);
        let m3 = m.power(3).unwrap();
        let m4 = m.power(4).unwrap();
        assert_eq!(finite_colength_top_degree(&m3, &m4).unwrap(), Some(3));
        assert_eq!(finite_colength_top_degree(&m3, &m3).unwrap(), None);
        assert!(finite_colength_top_degree(&m4, &m3).is_err());
        let x = ideal(&r, &[&[1, 0]]);
        let x2 = ideal(&r, &[&[2, 0]]);
        assert!(finite_colength_top_degree(&x, &x2).is_err());
    }
}
