//! Irreducible decomposition, associated and minimal primes, unmixed part.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ideal::{minimal_set, MonomialIdeal};
use crate::monomial::Monomial;
use crate::par;
use crate::ring::Ring;

/// Default cap on the number of irreducible components kept at any step.
pub const DEFAULT_COMPONENT_BUDGET: usize = 100_000;

/// A prime generated by a subset of the ring variables, stored as a mask.
///
/// Ordered by the number of variables first, so sorted sets list primes by
/// height.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct MonomialPrime {
    vars: u64,
}

impl MonomialPrime {
    pub fn new(vars: u64) -> Self {
        MonomialPrime { vars }
    }

    pub fn zero() -> Self {
        MonomialPrime { vars: 0 }
    }

    pub fn mask(&self) -> u64 {
        self.vars
    }

    pub fn height(&self) -> u32 {
        self.vars.count_ones()
    }

    pub fn is_subset_of(&self, other: &MonomialPrime) -> bool {
        self.vars & !other.vars == 0
    }

    pub fn to_ideal(&self, ring: &Arc<Ring>) -> MonomialIdeal {
        MonomialIdeal::variable_prime(ring, self.vars)
    }

    pub fn display<'a>(&'a self, ring: &'a Ring) -> PrimeDisplay<'a> {
        PrimeDisplay { p: *self, ring }
    }
}

impl Ord for MonomialPrime {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.height()
            .cmp(&other.height())
            .then_with(|| other.vars.reverse_bits().cmp(&self.vars.reverse_bits()))
    }
}

impl PartialOrd for MonomialPrime {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

pub struct PrimeDisplay<'a> {
    p: MonomialPrime,
    ring: &'a Ring,
}

impl fmt::Display for PrimeDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = (0..self.ring.nvars())
            .filter(|j| self.p.vars >> j & 1 == 1)
            .map(|j| self.ring.var_name(j))
            .collect();
        if names.is_empty() {
            write!(f, "(0)")
        } else {
            write!(f, "({})", names.join(", "))
        }
    }
}

/// One primary component together with its radical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub ideal: MonomialIdeal,
    pub radical: MonomialPrime,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimaryDecomposition {
    pub components: Vec<Component>,
    pub irredundant: bool,
}

impl PrimaryDecomposition {
    pub fn associated_primes(&self) -> BTreeSet<MonomialPrime> {
        self.components.iter().map(|c| c.radical).collect()
    }

    /// Intersection of all components.
    pub fn intersection(&self, ring: &Arc<Ring>) -> Result<MonomialIdeal> {
        MonomialIdeal::intersect_all(
            ring,
            self.components.iter().map(|c| c.ideal.clone()).collect(),
        )
    }
}

/// An irreducible ideal `(x_j^{q_j} : q_j > 0)` kept as its exponent vector.
type Corner = Monomial;

fn corner_contains(big: &Corner, small: &Corner) -> bool {
    // (x^q) ⊇ (x^q') iff every pure power of q' lies in (x^q).
    small
        .exps()
        .iter()
        .zip(big.exps())
        .all(|(&qs, &qb)| qs == 0 || (qb > 0 && qb <= qs))
}

fn corner_ideal(ring: &Arc<Ring>, q: &Corner) -> MonomialIdeal {
    let n = ring.nvars();
    let gens = q
        .exps()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(j, &e)| Monomial::var_power(n, j, e))
        .collect();
    MonomialIdeal::from_minimal_unchecked(ring.clone(), minimal_set(gens))
}

/// Adds generators one at a time: for an irreducible `c` not containing `g`,
/// `c + (g) = ∩_{j ∈ supp g} (c + (x_j^{g_j}))`, and each term is again
/// irreducible. Redundant components are dropped after every step.
fn incremental(gens: &[Monomial], budget: usize) -> Result<Vec<Corner>> {
    let n = gens[0].len();
    let mut comps: Vec<Corner> = vec![Monomial::one(n)];
    for g in gens {
        let mut next = Vec::with_capacity(comps.len());
        for c in &comps {
            if corner_has(c, g) {
                next.push(c.clone());
                continue;
            }
            for j in 0..n {
                let e = g.exps()[j];
                if e == 0 {
                    continue;
                }
                // c has no x_j, or only a higher power of it
                let mut q = c.exps().to_vec();
                q[j] = e;
                next.push(Monomial::new(&q));
            }
        }
        comps = prune(next);
        if comps.len() > budget {
            return Err(Error::resource("irreducible components", budget as u64));
        }
    }
    Ok(comps)
}

/// Whether the monomial lies in the irreducible ideal with corner `q`.
fn corner_has(q: &Corner, m: &Monomial) -> bool {
    q.exps()
        .iter()
        .zip(m.exps())
        .any(|(&qj, &mj)| qj > 0 && mj >= qj)
}

/// Irredundant irreducible decomposition, with the default component budget.
pub fn irreducible_decomposition(a: &MonomialIdeal) -> Result<PrimaryDecomposition> {
    irreducible_decomposition_with_budget(a, DEFAULT_COMPONENT_BUDGET)
}

pub fn irreducible_decomposition_with_budget(
    a: &MonomialIdeal,
    budget: usize,
) -> Result<PrimaryDecomposition> {
    if a.is_zero() {
        return Err(Error::domain("irreducible decomposition of the zero ideal"));
    }
    if a.is_unit() {
        return Err(Error::domain("irreducible decomposition of the unit ideal"));
    }
    let corners = incremental(a.gens(), budget)?;
    let ring = a.ring();
    let components = corners
        .into_iter()
        .map(|q| Component {
            radical: MonomialPrime::new(q.support()),
            ideal: corner_ideal(ring, &q),
        })
        .collect();
    Ok(PrimaryDecomposition {
        components,
        irredundant: true,
    })
}

/// Deduplicates and drops every component that contains another one. For
/// irreducible monomial ideals this is the same as dropping components that
/// contain the intersection of the rest.
fn prune(mut leaves: Vec<Corner>) -> Vec<Corner> {
    let mut seen = HashSet::new();
    leaves.retain(|q| seen.insert(q.clone()));
    let keep: Vec<bool> = par::map(&leaves, |q| {
        !leaves.iter().any(|o| o != q && corner_contains(q, o))
    });
    let mut out: Vec<Corner> = leaves
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(q, _)| q)
        .collect();
    out.sort_by(|a, b| {
        MonomialPrime::new(a.support())
            .cmp(&MonomialPrime::new(b.support()))
            .then_with(|| a.cmp(b))
    });
    out
}

/// Associated primes of `R/A`; the zero ideal has the zero prime.
pub fn associated_primes(a: &MonomialIdeal) -> Result<BTreeSet<MonomialPrime>> {
    if a.is_zero() {
        return Ok([MonomialPrime::zero()].into_iter().collect());
    }
    Ok(irreducible_decomposition(a)?.associated_primes())
}

fn minimal_elements(primes: &BTreeSet<MonomialPrime>) -> BTreeSet<MonomialPrime> {
    primes
        .iter()
        .filter(|p| !primes.iter().any(|q| q != *p && q.is_subset_of(p)))
        .copied()
        .collect()
}

pub(crate) fn maximal_elements(primes: &BTreeSet<MonomialPrime>) -> BTreeSet<MonomialPrime> {
    primes
        .iter()
        .filter(|p| !primes.iter().any(|q| q != *p && p.is_subset_of(q)))
        .copied()
        .collect()
}

/// Minimal primes of `R/A`; the zero ideal has the zero prime.
pub fn minimal_primes(a: &MonomialIdeal) -> Result<BTreeSet<MonomialPrime>> {
    if a.is_unit() {
        return Err(Error::domain("minimal primes of the unit ideal"));
    }
    if a.is_zero() {
        return Ok([MonomialPrime::zero()].into_iter().collect());
    }
    // Min(A) = Ass(√A), and the radical is squarefree so its decomposition
    // is cheap; going through Ass(A) gives the same set.
    Ok(minimal_elements(&associated_primes(&a.radical())?))
}

/// Krull dimension of `R/A`; `None` for the unit ideal.
pub fn dimension(a: &MonomialIdeal) -> Option<u32> {
    let n = a.ring().nvars() as u32;
    let min = minimal_primes(a).ok()?;
    min.iter().map(|p| n - p.height()).max()
}

/// Unmixed part: intersection of the components at minimal primes. Returns
/// the ideal unchanged (and `true`) when `A` has no embedded primes.
pub fn unmixed_part(a: &MonomialIdeal) -> Result<(MonomialIdeal, bool)> {
    if a.is_zero() {
        return Ok((a.clone(), true));
    }
    let dec = irreducible_decomposition(a)?;
    let ass = dec.associated_primes();
    let min = minimal_elements(&ass);
    if ass == min {
        return Ok((a.clone(), true));
    }
    let parts = dec
        .components
        .into_iter()
        .filter(|c| min.contains(&c.radical))
        .map(|c| c.ideal)
        .collect();
    Ok((MonomialIdeal::intersect_all(a.ring(), parts)?, false))
}

pub fn is_unmixed(a: &MonomialIdeal) -> Result<bool> {
    let ass = associated_primes(a)?;
    Ok(minimal_elements(&ass) == ass)
}

/// Groups the irreducible components by radical: each group intersects to a
/// primary component, giving an irredundant primary decomposition.
pub fn primary_decomposition(a: &MonomialIdeal) -> Result<PrimaryDecomposition> {
    let dec = irreducible_decomposition(a)?;
    let mut groups: Vec<(MonomialPrime, Vec<MonomialIdeal>)> = Vec::new();
    for c in dec.components {
        match groups.iter_mut().find(|(p, _)| *p == c.radical) {
            Some((_, v)) => v.push(c.ideal),
            None => groups.push((c.radical, vec![c.ideal])),
        }
    }
    let components = groups
        .into_iter()
        .map(|(radical, parts)| {
            Ok(Component {
                ideal: MonomialIdeal::intersect_all(a.ring(), parts)?,
                radical,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PrimaryDecomposition {
        components,
        irredundant: true,
    })
}

/// A monomial ideal is primary iff every variable that occurs in a generator
/// also occurs as a pure power generator.
pub fn is_primary(a: &MonomialIdeal) -> bool {
    let pure = a
        .gens()
        .iter()
        .filter(|g| g.is_pure_power())
        .fold(0, |m, g| m | g.support());
    a.is_proper() && !a.is_zero() && a.support() & !pure == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::Exp;

    fn ideal(r: &Arc<Ring>, gens: &[&[Exp]]) -> MonomialIdeal {
        MonomialIdeal::from_exponents(r, gens).unwrap()
    }

    fn primes(r: &Arc<Ring>, names: &[&[&str]]) -> BTreeSet<MonomialPrime> {
        names
            .iter()
            .map(|vs| MonomialPrime::new(vs.iter().fold(0, |m, v| m | 1 << r.index_of(v).unwrap())))
            .collect()
    }

    #[test]
    fn decomposition_of_x2_xy() {
        let r = Ring::new(&["x", "y"]).unwrap();
        let a = ideal(&r, &[&[2, 0], &[1, 1]]);
        let dec = irreducible_decomposition(&a).unwrap();
        let comps: Vec<_> = dec.components.iter().map(|c| c.ideal.clone()).collect();
        assert_eq!(
            comps,
            vec![ideal(&r, &[&[1, 0]]), ideal(&r, &[&[2, 0], &[0, 1]])]
        );
        // brute-force oracle: fold the components back together
        assert_eq!(comps[0].intersect(&comps[1]).unwrap(), a);
        assert_eq!(dec.associated_primes(), primes(&r, &[&["x"], &["x", "y"]]));
        assert_eq!(minimal_primes(&a).unwrap(), primes(&r, &[&["x"]]));
        assert_eq!(unmixed_part(&a).unwrap(), (ideal(&r, &[&[1, 0]]), false));
    }

    #[test]
    fn simple_decompositions() {
        let r = Ring::new(&["x", "y"]).unwrap();
        let xy = ideal(&r, &[&[1, 1]]);
        let comps: Vec<_> = irreducible_decomposition(&xy)
            .unwrap()
            .components
            .into_iter()
            .map(|c| c.ideal)
            .collect();
        assert_eq!(comps, vec![ideal(&r, &[&[1, 0]]), ideal(&r, &[&[0, 1]])]);
        let x2 = ideal(&r, &[&[2, 0]]);
        let dec = irreducible_decomposition(&x2).unwrap();
        assert_eq!(dec.components.len(), 1);
        assert_eq!(dec.components[0].ideal, x2);
        assert_eq!(unmixed_part(&x2).unwrap(), (x2, true));
    }

    #[test]
    fn triangle_is_unmixed() {
        let r = Ring::new(&["x", "y", "z"]).unwrap();
        let a = ideal(&r, &[&[1, 1, 0], &[1, 0, 1], &[0, 1, 1]]);
        let ass = associated_primes(&a).unwrap();
        assert_eq!(ass, primes(&r, &[&["x", "y"], &["x", "z"], &["y", "z"]]));
        assert_eq!(minimal_primes(&a).unwrap(), ass);
        assert_eq!(unmixed_part(&a).unwrap(), (a.clone(), true));
        assert_eq!(dimension(&a), Some(1));
    }

    #[test]
    fn errors_and_zero() {
        let r = Ring::new(&["x"]).unwrap();
        assert!(irreducible_decomposition(&MonomialIdeal::zero(&r)).is_err());
        assert!(irreducible_decomposition(&MonomialIdeal::unit(&r)).is_err());
        assert!(minimal_primes(&MonomialIdeal::unit(&r)).is_err());
        assert_eq!(
            minimal_primes(&MonomialIdeal::zero(&r)).unwrap(),
            [MonomialPrime::zero()].into_iter().collect()
        );
        assert_eq!(
            associated_primes(&MonomialIdeal::zero(&r)).unwrap(),
            [MonomialPrime::zero()].into_iter().collect()
        );
        assert_eq!(dimension(&MonomialIdeal::zero(&r)), Some(1));
    }

    #[test]
    fn budget_is_enforced() {
        let r = Ring::new(&["a", "b", "c", "d"]).unwrap();
        let a = ideal(&r, &[&[1, 1, 0, 0], &[0, 0, 1, 1]]);
        assert!(irreducible_decomposition_with_budget(&a, 2)
            .unwrap_err()
            .is_resource());
        assert_eq!(
            irreducible_decomposition_with_budget(&a, 4)
                .unwrap()
                .components
                .len(),
            4
        );
    }

    #[test]
    fn primary_grouping() {
        let r = Ring::new(&["x", "y"]).unwrap();
        // (x^2, xy, y^3) is (x,y)-primary with two irreducible components.
        let a = ideal(&r, &[&[2, 0], &[1, 1], &[0, 3]]);
        assert!(is_primary(&a));
        let pd = primary_decomposition(&a).unwrap();
        assert_eq!(pd.components.len(), 1);
        assert_eq!(pd.components[0].ideal, a);
        assert!(!is_primary(&ideal(&r, &[&[1, 1]])));
    }
}
