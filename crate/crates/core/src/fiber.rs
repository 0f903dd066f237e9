//! Fiber products `F = I + J + 𝔪𝔫` in `T = R ⊗ S` and the auxiliary ideals
//! built from them.
//!
//! `R` occupies the first variables of `T` and `S` the rest; ideals of the
//! factors are extended by embedding exponent vectors.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ideal::MonomialIdeal;
use crate::ring::Ring;
use crate::symbolic::{symbolic_power, SymbolicMode};

#[derive(Debug, Clone)]
pub struct FiberInstance {
    pub ring_r: Arc<Ring>,
    pub ring_s: Arc<Ring>,
    pub ring_t: Arc<Ring>,
    /// `I ⊆ R` and `J ⊆ S`.
    pub i: MonomialIdeal,
    pub j: MonomialIdeal,
    /// Extensions of `I` and `J` to `T`.
    pub i_t: MonomialIdeal,
    pub j_t: MonomialIdeal,
    pub m: MonomialIdeal,
    pub n: MonomialIdeal,
    /// `𝔪 + 𝔫`
    pub p: MonomialIdeal,
    pub f: MonomialIdeal,
    pub i_in_m2: bool,
    pub j_in_n2: bool,
}

/// Builds the fiber product of `I ⊆ R` and `J ⊆ S`.
pub fn make_fiber(i: &MonomialIdeal, j: &MonomialIdeal) -> Result<FiberInstance> {
    let t = i.ring().tensor(j.ring())?;
    FiberInstance::assemble(i.clone(), j.clone(), t)
}

/// Fiber product over a two-block ring `T`, from ideals of `T` supported on
/// the first and second block respectively.
pub fn make_fiber_in(
    t: &Arc<Ring>,
    i_t: &MonomialIdeal,
    j_t: &MonomialIdeal,
) -> Result<FiberInstance> {
    if t.blocks().len() != 2 {
        return Err(Error::structural(
            "fiber product needs a ring with exactly two blocks",
        ));
    }
    if i_t.ring() != t || j_t.ring() != t {
        return Err(Error::structural("ring mismatch in fiber product"));
    }
    let (b0, b1) = (&t.blocks()[0], &t.blocks()[1]);
    if i_t.support() & !t.block_mask(0) != 0 || j_t.support() & !t.block_mask(1) != 0 {
        return Err(Error::domain("fiber factors must live in separate blocks"));
    }
    let ring_r = Ring::with_blocks(vec![(b0.name.clone(), t.vars()[b0.range.clone()].to_vec())])?;
    let ring_s = Ring::with_blocks(vec![(b1.name.clone(), t.vars()[b1.range.clone()].to_vec())])?;
    let i = i_t.contract_to(&ring_r, 0)?;
    let j = j_t.contract_to(&ring_s, ring_r.nvars())?;
    FiberInstance::assemble(i, j, t.clone())
}

impl FiberInstance {
    fn assemble(i: MonomialIdeal, j: MonomialIdeal, t: Arc<Ring>) -> Result<Self> {
        let ring_r = i.ring().clone();
        let ring_s = j.ring().clone();
        if ring_r.nvars() == 0 || ring_s.nvars() == 0 {
            return Err(Error::domain(
                "fiber factors need rings of positive dimension",
            ));
        }
        if i.is_unit() || j.is_unit() {
            return Err(Error::domain("fiber factors must be proper ideals"));
        }
        let nr = ring_r.nvars();
        let i_t = i.extend_to(&t, 0)?;
        let j_t = j.extend_to(&t, nr)?;
        let m = MonomialIdeal::variable_prime(&t, crate::ring::range_mask(0..nr));
        let n = MonomialIdeal::variable_prime(&t, crate::ring::range_mask(nr..t.nvars()));
        let p = MonomialIdeal::maximal(&t);
        let f = MonomialIdeal::sum_all(&t, [&i_t, &j_t, &m.product(&n)?])?;
        let mr = MonomialIdeal::maximal(&ring_r).power(2)?;
        let ns = MonomialIdeal::maximal(&ring_s).power(2)?;
        Ok(FiberInstance {
            i_in_m2: i.is_subset_of(&mr),
            j_in_n2: j.is_subset_of(&ns),
            ring_r,
            ring_s,
            ring_t: t,
            i,
            j,
            i_t,
            j_t,
            m,
            n,
            p,
            f,
        })
    }

    /// The same instance with the roles of `I` and `J` exchanged.
    pub fn swapped(&self) -> Result<FiberInstance> {
        make_fiber(&self.j, &self.i)
    }

    pub fn offset_s(&self) -> usize {
        self.ring_r.nvars()
    }

    /// Extension of an ideal of `R` to `T`.
    pub fn ext_r(&self, a: &MonomialIdeal) -> Result<MonomialIdeal> {
        if a.ring() != &self.ring_r {
            return Err(Error::structural("ideal is not over R"));
        }
        a.extend_to(&self.ring_t, 0)
    }

    /// Extension of an ideal of `S` to `T`.
    pub fn ext_s(&self, a: &MonomialIdeal) -> Result<MonomialIdeal> {
        if a.ring() != &self.ring_s {
            return Err(Error::structural("ideal is not over S"));
        }
        a.extend_to(&self.ring_t, self.offset_s())
    }

    /// Contraction of an ideal of `T` to `R`: generators that only involve
    /// the variables of `R`.
    pub fn contract_r(&self, a: &MonomialIdeal) -> Result<MonomialIdeal> {
        a.contract_to(&self.ring_r, 0)
    }

    pub fn hypotheses_m2(&self) -> bool {
        self.i_in_m2 && self.j_in_n2
    }
}

impl fmt::Display for FiberInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "R={} I={} S={} J={}",
            self.ring_r, self.i, self.ring_s, self.j
        )
    }
}

/// A descending chain `K_0 ⊇ K_1 ⊇ …` of ideals over one ring.
#[derive(Debug, Clone)]
pub struct Filtration {
    ideals: Vec<MonomialIdeal>,
}

impl Filtration {
    pub fn new(ideals: Vec<MonomialIdeal>) -> Result<Self> {
        let Some(first) = ideals.first() else {
            return Err(Error::structural("empty filtration"));
        };
        let ring = first.ring().clone();
        for w in ideals.windows(2) {
            if w[1].ring() != &ring {
                return Err(Error::structural("filtration mixes rings"));
            }
            if !w[1].is_subset_of(&w[0]) {
                return Err(Error::domain("filtration is not descending"));
            }
        }
        Ok(Filtration { ideals })
    }

    /// `R, A, A^2, …, A^top`.
    pub fn ordinary(a: &MonomialIdeal, top: u32) -> Result<Self> {
        Self::new((0..=top).map(|i| a.power(i)).collect::<Result<_>>()?)
    }

    /// `R, A^(1), …, A^(top)`; the zero ideal gives `R, 0, 0, …`.
    pub fn symbolic(a: &MonomialIdeal, top: u32, mode: SymbolicMode) -> Result<Self> {
        let ring = a.ring();
        let ideals = (0..=top)
            .map(|i| match i {
                0 => Ok(MonomialIdeal::unit(ring)),
                _ if a.is_zero() => Ok(MonomialIdeal::zero(ring)),
                _ => symbolic_power(a, i, mode),
            })
            .collect::<Result<_>>()?;
        Self::new(ideals)
    }

    /// `R, A + 𝔪^2, A^2 + 𝔪^3, …`: a filtration that is neither ordinary nor
    /// symbolic powers.
    pub fn truncated(a: &MonomialIdeal, top: u32) -> Result<Self> {
        let m = MonomialIdeal::maximal(a.ring());
        let ideals = (0..=top)
            .map(|i| match i {
                0 => Ok(MonomialIdeal::unit(a.ring())),
                _ => a.power(i)?.sum(&m.power(i + 1)?),
            })
            .collect::<Result<_>>()?;
        Self::new(ideals)
    }

    pub fn ideals(&self) -> &[MonomialIdeal] {
        &self.ideals
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn ring(&self) -> &Arc<Ring> {
        self.ideals[0].ring()
    }
}

/// Flavor of `U_s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UFlavor {
    Ordinary,
    Symbolic,
    MinSymbolic,
}

/// `Σ_{i=0}^s K_i · Q^{s-i}` in `T`, for extended ideals `K_i`.
fn binomial_sum(parts: &[MonomialIdeal], q: &MonomialIdeal, s: u32) -> Result<MonomialIdeal> {
    let ring = q.ring();
    let mut terms = Vec::with_capacity(parts.len());
    for (i, k) in parts.iter().enumerate().take(s as usize + 1) {
        terms.push(k.product(&q.power(s - i as u32)?)?);
    }
    MonomialIdeal::sum_all(ring, terms.iter())
}

/// `U_s = (I+𝔫)^s ∩ (J+𝔪)^s` and its symbolic analogues. The symbolic
/// flavors expand `(I+𝔫)^(s)` as `Σ I^(i) 𝔫^{s-i}`, which needs `I, J ≠ 0`.
pub fn u_ideal(inst: &FiberInstance, s: u32, flavor: UFlavor) -> Result<MonomialIdeal> {
    if s == 0 {
        return Err(Error::domain("U_s needs s ≥ 1"));
    }
    let (left, right) = match flavor {
        UFlavor::Ordinary => (
            inst.i_t.sum(&inst.n)?.power(s)?,
            inst.j_t.sum(&inst.m)?.power(s)?,
        ),
        UFlavor::Symbolic | UFlavor::MinSymbolic => {
            if inst.i.is_zero() || inst.j.is_zero() {
                return Err(Error::domain("symbolic U_s needs non-zero I and J"));
            }
            let mode = if flavor == UFlavor::Symbolic {
                SymbolicMode::Ass
            } else {
                SymbolicMode::Min
            };
            let ki = Filtration::symbolic(&inst.i, s, mode)?;
            let lj = Filtration::symbolic(&inst.j, s, mode)?;
            let ki: Vec<_> = ki
                .ideals()
                .iter()
                .map(|a| inst.ext_r(a))
                .collect::<Result<_>>()?;
            let lj: Vec<_> = lj
                .ideals()
                .iter()
                .map(|a| inst.ext_s(a))
                .collect::<Result<_>>()?;
            (
                binomial_sum(&ki, &inst.n, s)?,
                binomial_sum(&lj, &inst.m, s)?,
            )
        }
    };
    left.intersect(&right)
}

/// Both sides of the filtration intersection formula:
/// `lhs = (Σ K_i 𝔫^{s-i}) ∩ (Σ L_t 𝔪^{s-t})` and
/// `rhs = Σ_{i,t} (K_i ∩ 𝔪^{s-t})(L_t ∩ 𝔫^{s-i})`.
pub fn filtration_intersect(
    inst: &FiberInstance,
    k: &Filtration,
    l: &Filtration,
    s: u32,
) -> Result<(MonomialIdeal, MonomialIdeal)> {
    let need = s as usize + 1;
    if k.len() < need || l.len() < need {
        return Err(Error::domain(format!(
            "filtrations need at least {need} terms"
        )));
    }
    if k.ring() != &inst.ring_r || l.ring() != &inst.ring_s {
        return Err(Error::structural("filtrations must live over R and S"));
    }
    let kt: Vec<_> = k.ideals()[..need]
        .iter()
        .map(|a| inst.ext_r(a))
        .collect::<Result<_>>()?;
    let lt: Vec<_> = l.ideals()[..need]
        .iter()
        .map(|a| inst.ext_s(a))
        .collect::<Result<_>>()?;
    let lhs = binomial_sum(&kt, &inst.n, s)?.intersect(&binomial_sum(&lt, &inst.m, s)?)?;

    let mr = MonomialIdeal::maximal(&inst.ring_r);
    let ns = MonomialIdeal::maximal(&inst.ring_s);
    let mpow: Vec<_> = (0..=s).map(|e| mr.power(e)).collect::<Result<_>>()?;
    let npow: Vec<_> = (0..=s).map(|e| ns.power(e)).collect::<Result<_>>()?;
    let mut terms = Vec::with_capacity(need * need);
    for i in 0..need {
        for t in 0..need {
            let a = k.ideals()[i].intersect(&mpow[need - 1 - t])?;
            let b = l.ideals()[t].intersect(&npow[need - 1 - i])?;
            if a.is_zero() || b.is_zero() {
                continue;
            }
            terms.push(inst.ext_r(&a)?.product(&inst.ext_s(&b)?)?);
        }
    }
    let rhs = MonomialIdeal::sum_all(&inst.ring_t, terms.iter())?;
    Ok((lhs, rhs))
}

/// `G_0 = H^s, …, G_s` with `H = I + 𝔪𝔫` and
/// `G_t = H^s + Σ_{i=1}^t (𝔪𝔫)^{s-i} J^i`.
pub fn g_chain(inst: &FiberInstance, s: u32) -> Result<Vec<MonomialIdeal>> {
    if s == 0 {
        return Err(Error::domain("G chain needs s ≥ 1"));
    }
    let mn = inst.m.product(&inst.n)?;
    let h = inst.i_t.sum(&mn)?;
    let mut out = vec![h.power(s)?];
    for t in 1..=s {
        let term = mn.power(s - t)?.product(&inst.j_t.power(t)?)?;
        let next = out.last().unwrap().sum(&term)?;
        out.push(next);
    }
    Ok(out)
}
