//! Monomial ideals in canonical form.
//!
//! An ideal is stored as its minimal monomial generating set, sorted in the
//! graded-lex order of [`Monomial`]. Structural equality is therefore
//! mathematical equality. The zero ideal has no generators and the unit ideal
//! is generated by `1`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::monomial::{Exp, Monomial};
use crate::ring::Ring;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    ring: Arc<Ring>,
    gens: Vec<Monomial>,
}

/// Binary ideal operations accepted by [`MonomialIdeal::combine`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CombineMode {
    Sum,
    Product,
    Intersect,
    Colon,
}

impl MonomialIdeal {
    /// Canonical ideal generated by `gens`.
    pub fn minimalize(ring: &Arc<Ring>, gens: Vec<Monomial>) -> Result<Self> {
        let n = ring.nvars();
        if let Some(bad) = gens.iter().find(|g| g.len() != n) {
            return Err(Error::structural(format!(
                "monomial has {} exponents, ring has {n} variables",
                bad.len()
            )));
        }
        Ok(Self::from_minimal_unchecked(
            ring.clone(),
            minimal_set(gens),
        ))
    }

    pub(crate) fn from_minimal_unchecked(ring: Arc<Ring>, gens: Vec<Monomial>) -> Self {
        MonomialIdeal { ring, gens }
    }

    /// Builds an ideal from raw exponent vectors.
    pub fn from_exponents(ring: &Arc<Ring>, gens: &[&[Exp]]) -> Result<Self> {
        Self::minimalize(ring, gens.iter().map(|e| Monomial::new(e)).collect())
    }

    pub fn zero(ring: &Arc<Ring>) -> Self {
        MonomialIdeal {
            ring: ring.clone(),
            gens: Vec::new(),
        }
    }

    pub fn unit(ring: &Arc<Ring>) -> Self {
        MonomialIdeal {
            ring: ring.clone(),
            gens: vec![Monomial::one(ring.nvars())],
        }
    }

    /// The prime generated by the variables in `mask`.
    pub fn variable_prime(ring: &Arc<Ring>, mask: u64) -> Self {
        let n = ring.nvars();
        let gens = (0..n)
            .filter(|j| mask >> j & 1 == 1)
            .map(|j| Monomial::var_power(n, j, 1))
            .collect();
        Self::from_minimal_unchecked(ring.clone(), minimal_set(gens))
    }

    /// The graded maximal ideal of the whole ring.
    pub fn maximal(ring: &Arc<Ring>) -> Self {
        Self::variable_prime(ring, ring.full_mask())
    }

    /// The ideal generated by the variables of one block.
    pub fn block_maximal(ring: &Arc<Ring>, block: usize) -> Self {
        Self::variable_prime(ring, ring.block_mask(block))
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn gens(&self) -> &[Monomial] {
        &self.gens
    }

    pub fn num_gens(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].is_one()
    }

    pub fn is_proper(&self) -> bool {
        !self.is_unit()
    }

    /// Union of the supports of the generators.
    pub fn support(&self) -> u64 {
        self.gens.iter().fold(0, |m, g| m | g.support())
    }

    pub fn is_squarefree(&self) -> bool {
        self.gens.iter().all(Monomial::is_squarefree)
    }

    /// All minimal generators share one degree (vacuously true for zero).
    pub fn is_equigenerated(&self) -> bool {
        self.gens.windows(2).all(|w| w[0].degree() == w[1].degree())
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::structural(format!(
                "ring mismatch: {} vs {}",
                self.ring, other.ring
            )))
        }
    }

    pub fn combine(&self, other: &Self, mode: CombineMode) -> Result<Self> {
        match mode {
            CombineMode::Sum => self.sum(other),
            CombineMode::Product => self.product(other),
            CombineMode::Intersect => self.intersect(other),
            CombineMode::Colon => self.colon(other),
        }
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Self::from_minimal_unchecked(
            self.ring.clone(),
            minimal_set(gens),
        ))
    }

    pub fn product(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a.checked_mul(b)?);
            }
        }
        Ok(Self::from_minimal_unchecked(
            self.ring.clone(),
            minimal_set(gens),
        ))
    }

    /// Intersection, generated by the pairwise lcms of generators.
    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        // A generator already in the other ideal is itself in the
        // intersection and makes every lcm it takes part in redundant.
        let (a_in, a_out): (Vec<_>, Vec<_>) = self.gens.iter().partition(|g| other.contains(g));
        let (b_in, b_out): (Vec<_>, Vec<_>) = other.gens.iter().partition(|g| self.contains(g));
        let mut gens: Vec<Monomial> = a_in.into_iter().chain(b_in).cloned().collect();
        for a in &a_out {
            for b in &b_out {
                gens.push(a.lcm(b));
            }
        }
        Ok(Self::from_minimal_unchecked(
            self.ring.clone(),
            minimal_set(gens),
        ))
    }

    /// `(self : m)` for a single monomial.
    pub fn colon_monomial(&self, m: &Monomial) -> Self {
        let gens = self.gens.iter().map(|g| g.colon(m)).collect();
        Self::from_minimal_unchecked(self.ring.clone(), minimal_set(gens))
    }

    /// `(self : other) = ∩_{b ∈ G(other)} (self : b)`.
    pub fn colon(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        let mut parts: Vec<Self> = other.gens.iter().map(|b| self.colon_monomial(b)).collect();
        parts.sort_by_key(|p| p.num_gens());
        let mut acc = Self::unit(&self.ring);
        for p in parts {
            acc = acc.intersect(&p)?;
        }
        Ok(acc)
    }

    /// Ordinary power by iterated product; `A^0` is the unit ideal.
    pub fn power(&self, s: u32) -> Result<Self> {
        let mut acc = Self::unit(&self.ring);
        for _ in 0..s {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    pub fn radical(&self) -> Self {
        let gens = self.gens.iter().map(Monomial::support_monomial).collect();
        Self::from_minimal_unchecked(self.ring.clone(), minimal_set(gens))
    }

    /// Largest degree of a minimal generator; `None` stands for `-∞` (zero ideal).
    pub fn max_gen_degree(&self) -> Option<u32> {
        self.gens.iter().map(Monomial::degree).max()
    }

    pub fn min_gen_degree(&self) -> Option<u32> {
        self.gens.iter().map(Monomial::degree).min()
    }

    /// Ideal membership of a monomial.
    pub fn contains(&self, m: &Monomial) -> bool {
        let ms = m.support();
        self.gens
            .iter()
            .any(|g| g.support() & !ms == 0 && g.divides(m))
    }

    /// `self ⊆ other`.
    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    /// Whether `R/A` has finite length: every variable has a pure power
    /// among the generators.
    pub fn has_finite_colength(&self) -> bool {
        let pure = self
            .gens
            .iter()
            .filter(|g| g.is_pure_power())
            .fold(0, |m, g| m | g.support());
        pure == self.ring.full_mask() || self.is_unit()
    }

    /// Largest degree of a monomial outside `A`, for `A` of finite colength;
    /// `None` for the unit ideal. `budget` caps the monomials visited.
    pub fn top_standard_degree(&self, budget: usize) -> Result<Option<u32>> {
        if !self.has_finite_colength() {
            return Err(Error::domain("quotient does not have finite length"));
        }
        let n = self.ring.nvars();
        let one = Monomial::one(n);
        if self.contains(&one) {
            return Ok(None);
        }
        // each standard monomial is reached once, by raising variables in
        // non-decreasing index order
        let mut stack = vec![(one, 0usize)];
        let mut top = 0;
        let mut visited = 0usize;
        while let Some((v, from)) = stack.pop() {
            top = top.max(v.degree());
            visited += 1;
            if visited > budget {
                return Err(Error::resource("standard monomials", budget as u64));
            }
            for j in from..n {
                let w = v.times_var(j)?;
                if !self.contains(&w) {
                    stack.push((w, j));
                }
            }
        }
        Ok(Some(top))
    }

    /// `𝔪^k ⊆ A`.
    pub fn contains_power_of_maximal(&self, k: u32, budget: usize) -> Result<bool> {
        if !self.has_finite_colength() {
            return Ok(false);
        }
        Ok(self.top_standard_degree(budget)?.is_none_or(|t| t < k))
    }

    /// Keeps the generators supported inside `mask`: the contraction of the
    /// ideal to the subring on those variables, still written in this ring.
    pub fn restrict_to(&self, mask: u64) -> Self {
        let gens = self
            .gens
            .iter()
            .filter(|g| g.support() & !mask == 0)
            .cloned()
            .collect();
        Self::from_minimal_unchecked(self.ring.clone(), gens)
    }

    /// Extension to a ring that contains this one at variable `offset`.
    pub fn extend_to(&self, target: &Arc<Ring>, offset: usize) -> Result<Self> {
        if offset + self.ring.nvars() > target.nvars() {
            return Err(Error::structural("extension target ring too small"));
        }
        let n = target.nvars();
        let gens = self.gens.iter().map(|g| g.embed(n, offset)).collect();
        Ok(Self::from_minimal_unchecked(
            target.clone(),
            minimal_set(gens),
        ))
    }

    /// Contraction to `sub`, which sits inside this ring at `offset`.
    pub fn contract_to(&self, sub: &Arc<Ring>, offset: usize) -> Result<Self> {
        let k = sub.nvars();
        if offset + k > self.ring.nvars() {
            return Err(Error::structural("contraction target ring too large"));
        }
        let mask = crate::ring::range_mask(offset..offset + k);
        let gens = self
            .restrict_to(mask)
            .gens
            .iter()
            .map(|g| Monomial::new(&g.exps()[offset..offset + k]))
            .collect();
        Ok(Self::from_minimal_unchecked(sub.clone(), minimal_set(gens)))
    }

    /// Sum of a list of ideals over one ring.
    pub fn sum_all<'a>(
        ring: &Arc<Ring>,
        parts: impl IntoIterator<Item = &'a Self>,
    ) -> Result<Self> {
        let mut gens = Vec::new();
        for p in parts {
            if !(Arc::ptr_eq(ring, &p.ring) || **ring == *p.ring) {
                return Err(Error::structural("ring mismatch in sum"));
            }
            gens.extend(p.gens.iter().cloned());
        }
        Ok(Self::from_minimal_unchecked(
            ring.clone(),
            minimal_set(gens),
        ))
    }

    /// Intersection of a non-empty list, folded smallest-first.
    pub fn intersect_all(ring: &Arc<Ring>, mut parts: Vec<Self>) -> Result<Self> {
        parts.sort_by_key(|p| p.num_gens());
        let mut it = parts.into_iter();
        let mut acc = match it.next() {
            Some(p) => p,
            None => return Ok(Self::unit(ring)),
        };
        for p in it {
            acc = acc.intersect(&p)?;
        }
        Ok(acc)
    }
}

/// Sorted, deduplicated, pairwise non-dividing subset of `gens`.
pub(crate) fn minimal_set(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_unstable();
    gens.dedup();
    let mut kept: Vec<(u64, Monomial)> = Vec::with_capacity(gens.len());
    for g in gens {
        let gs = g.support();
        // Sorted by degree, so any divisor of `g` is already kept.
        if !kept.iter().any(|(ks, k)| ks & !gs == 0 && k.divides(&g)) {
            kept.push((gs, g));
        }
    }
    kept.into_iter().map(|(_, g)| g).collect()
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "(0)");
        }
        write!(f, "(")?;
        for (k, g) in self.gens.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", g.display(&self.ring))?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.ring)
    }
}
