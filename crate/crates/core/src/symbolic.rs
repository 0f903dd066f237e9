//! Monomial localization and symbolic powers.

use std::collections::BTreeSet;

use crate::decompose::{self, MonomialPrime};
use crate::error::{Error, Result};
use crate::ideal::{minimal_set, MonomialIdeal};
use crate::monomial::Monomial;
use crate::par;

/// Which primes the symbolic power intersects over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SymbolicMode {
    /// All associated primes.
    Ass,
    /// Minimal primes only.
    Min,
}

impl std::str::FromStr for SymbolicMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ass" => Ok(SymbolicMode::Ass),
            "min" => Ok(SymbolicMode::Min),
            other => Err(Error::structural(format!(
                "unknown symbolic mode `{other}`"
            ))),
        }
    }
}

/// `A R_P ∩ R` for a monomial prime `P`: variables outside `P` become units,
/// so they are erased from every generator.
pub fn monomial_localization(a: &MonomialIdeal, p: MonomialPrime) -> Result<MonomialIdeal> {
    if p.mask() & !a.ring().full_mask() != 0 {
        return Err(Error::structural("prime uses variables outside the ring"));
    }
    let gens = a.gens().iter().map(|g| g.restrict(p.mask())).collect();
    Ok(MonomialIdeal::from_minimal_unchecked(
        a.ring().clone(),
        minimal_set(gens),
    ))
}

/// Saturation `A : (∏_{v∉P} v)^∞` by iterated colon; an independent route to
/// [`monomial_localization`].
pub fn saturation_localization(a: &MonomialIdeal, p: MonomialPrime) -> Result<MonomialIdeal> {
    let n = a.ring().nvars();
    let outside = a.ring().full_mask() & !p.mask();
    let mut exps = vec![0; n];
    for (j, e) in exps.iter_mut().enumerate() {
        if outside >> j & 1 == 1 {
            *e = 1;
        }
    }
    let f = Monomial::new(&exps);
    let mut cur = a.clone();
    loop {
        let next = cur.colon_monomial(&f);
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
}

/// The primes a symbolic power intersects over.
pub fn symbolic_primes(a: &MonomialIdeal, mode: SymbolicMode) -> Result<BTreeSet<MonomialPrime>> {
    match mode {
        SymbolicMode::Ass => decompose::associated_primes(a),
        SymbolicMode::Min => decompose::minimal_primes(a),
    }
}

/// `s`-th symbolic power. `s = 0` gives the unit ideal.
pub fn symbolic_power(a: &MonomialIdeal, s: u32, mode: SymbolicMode) -> Result<MonomialIdeal> {
    if a.is_zero() || a.is_unit() {
        return Err(Error::domain("symbolic power of the zero or unit ideal"));
    }
    if s == 0 {
        return Ok(MonomialIdeal::unit(a.ring()));
    }
    let primes = symbolic_primes(a, mode)?;
    symbolic_power_over(a, s, &primes)
}

/// Intersection of the localizations of `A^s` at the given primes.
///
/// Localizing at a larger prime erases fewer variables and gives a smaller
/// ideal, so only the inclusion-maximal primes contribute.
pub fn symbolic_power_over(
    a: &MonomialIdeal,
    s: u32,
    primes: &BTreeSet<MonomialPrime>,
) -> Result<MonomialIdeal> {
    let power = a.power(s)?;
    let top: Vec<MonomialPrime> = decompose::maximal_elements(primes).into_iter().collect();
    if top
        .iter()
        .any(|p| p.mask() & a.ring().full_mask() == a.ring().full_mask())
    {
        return Ok(power);
    }
    let parts = par::map(&top, |p| monomial_localization(&power, *p))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    MonomialIdeal::intersect_all(a.ring(), parts)
}

/// Cross-check route for unmixed ideals: intersect the symbolic powers of
/// the primary components.
pub fn symbolic_power_by_components(a: &MonomialIdeal, s: u32) -> Result<MonomialIdeal> {
    let dec = decompose::primary_decomposition(a)?;
    let parts = dec
        .components
        .iter()
        .map(|c| monomial_localization(&c.ideal.power(s)?, c.radical))
        .collect::<Result<Vec<_>>>()?;
    MonomialIdeal::intersect_all(a.ring(), parts)
}
