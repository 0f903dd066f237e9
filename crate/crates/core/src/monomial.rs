//! Exponent vectors.

use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::ring::Ring;

/// Exponent width. Arithmetic is checked; overflow is an error, never a wrap.
pub type Exp = u16;

pub(crate) type ExpVec = SmallVec<[Exp; 8]>;

/// A monomial as a vector of exponents over a ring's variables.
///
/// Monomials are ordered graded-lexicographically: first by total degree,
/// then by the exponent vector with earlier variables weighing more, so that
/// `x^2 < x*y < y^2` in the canonical generator order.
#[derive(Clone, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct Monomial {
    exps: ExpVec,
}

impl Monomial {
    pub fn new(exps: &[Exp]) -> Self {
        Monomial {
            exps: SmallVec::from_slice(exps),
        }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
        }
    }

    /// `x_j^e` in a ring with `nvars` variables.
    pub fn var_power(nvars: usize, j: usize, e: Exp) -> Self {
        let mut m = Self::one(nvars);
        m.exps[j] = e;
        m
    }

    pub fn exps(&self) -> &[Exp] {
        &self.exps
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    /// Degree restricted to the variables in `mask`.
    pub fn degree_in(&self, mask: u64) -> u32 {
        self.exps
            .iter()
            .enumerate()
            .filter(|(j, _)| mask >> j & 1 == 1)
            .map(|(_, &e)| e as u32)
            .sum()
    }

    /// Degrees per block of `ring` (the multigrading that makes block
    /// variables degree `e_k`).
    pub fn block_degrees(&self, ring: &Ring) -> Vec<u32> {
        ring.blocks()
            .iter()
            .map(|b| self.exps[b.range.clone()].iter().map(|&e| e as u32).sum())
            .collect()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn support(&self) -> u64 {
        self.exps
            .iter()
            .enumerate()
            .fold(0u64, |m, (j, &e)| if e > 0 { m | 1 << j } else { m })
    }

    /// Pure power of a single variable (excluding 1).
    pub fn is_pure_power(&self) -> bool {
        self.support().count_ones() == 1
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.iter().all(|&e| e <= 1)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        debug_assert_eq!(self.len(), other.len());
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(&a, &b)| a.max(b))
                .collect(),
        }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(&a, &b)| a.min(b))
                .collect(),
        }
    }

    pub fn checked_mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut exps = ExpVec::with_capacity(self.len());
        for (&a, &b) in self.exps.iter().zip(other.exps.iter()) {
            exps.push(a.checked_add(b).ok_or_else(|| overflow(a, b))?);
        }
        Ok(Monomial { exps })
    }

    pub fn checked_pow(&self, s: u32) -> Result<Monomial> {
        let mut exps = ExpVec::with_capacity(self.len());
        for &a in &self.exps {
            let e = Exp::try_from(a as u64 * s as u64)
                .map_err(|_| Error::Overflow(format!("{a} * {s} exceeds {}", Exp::MAX)))?;
            exps.push(e);
        }
        Ok(Monomial { exps })
    }

    /// `self / gcd(self, other)`, the generator of `(self) : (other)`.
    pub fn colon(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(other.exps.iter())
                .map(|(&a, &b)| a.saturating_sub(b))
                .collect(),
        }
    }

    /// Exact quotient; `None` when `other` does not divide `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        let mut exps = ExpVec::with_capacity(self.len());
        for (&a, &b) in self.exps.iter().zip(other.exps.iter()) {
            exps.push(a.checked_sub(b)?);
        }
        Some(Monomial { exps })
    }

    /// The squarefree monomial with the same support.
    pub fn support_monomial(&self) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|&e| e.min(1)).collect(),
        }
    }

    /// Sets every exponent outside `mask` to zero.
    pub fn restrict(&self, mask: u64) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .enumerate()
                .map(|(j, &e)| if mask >> j & 1 == 1 { e } else { 0 })
                .collect(),
        }
    }

    /// Places this monomial into a larger ring at the given variable offset.
    pub fn embed(&self, nvars: usize, offset: usize) -> Monomial {
        let mut m = Monomial::one(nvars);
        m.exps[offset..offset + self.len()].copy_from_slice(&self.exps);
        m
    }

    /// Multiplies by the variable `x_j`.
    pub fn times_var(&self, j: usize) -> Result<Monomial> {
        let mut m = self.clone();
        m.exps[j] = m.exps[j]
            .checked_add(1)
            .ok_or_else(|| overflow(self.exps[j], 1))?;
        Ok(m)
    }

    pub fn display<'a>(&'a self, ring: &'a Ring) -> MonomialDisplay<'a> {
        MonomialDisplay { m: self, ring }
    }
}

fn overflow(a: Exp, b: Exp) -> Error {
    Error::Overflow(format!("{a} + {b} exceeds {}", Exp::MAX))
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

/// Human-readable form, e.g. `x^2*y`; the unit monomial prints as `1`.
pub struct MonomialDisplay<'a> {
    m: &'a Monomial,
    ring: &'a Ring,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, &e) in self.m.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.ring.var_name(j))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let x2 = Monomial::new(&[2, 0]);
        let xy = Monomial::new(&[1, 1]);
        let y2 = Monomial::new(&[0, 2]);
        let x = Monomial::new(&[1, 0]);
        let mut v = vec![y2.clone(), xy.clone(), x.clone(), x2.clone()];
        v.sort();
        assert_eq!(v, vec![x, x2, xy, y2]);
    }

    #[test]
    fn overflow_is_detected() {
        let a = Monomial::new(&[Exp::MAX, 0]);
        let b = Monomial::new(&[1, 0]);
        assert!(matches!(a.checked_mul(&b), Err(Error::Overflow(_))));
        assert!(a.times_var(0).is_err());
    }

    #[test]
    fn colon_and_division() {
        let a = Monomial::new(&[2, 1]);
        let b = Monomial::new(&[0, 1]);
        assert_eq!(a.colon(&b), Monomial::new(&[2, 0]));
        assert_eq!(a.checked_div(&b), Some(Monomial::new(&[2, 0])));
        assert_eq!(b.checked_div(&a), None);
    }

    #[test]
    fn display() {
        let r = Ring::new(&["x", "y"]).unwrap();
        assert_eq!(Monomial::new(&[2, 1]).display(&r).to_string(), "x^2*y");
        assert_eq!(Monomial::one(2).display(&r).to_string(), "1");
    }
}
