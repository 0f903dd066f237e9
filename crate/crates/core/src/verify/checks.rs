//! The individual checks. Each one evaluates both sides of its claims on a
//! fiber instance and records every comparison.

use std::any::Any;
use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex};

use crate::decompose::{self, MonomialPrime};
use crate::error::Result;
use crate::fiber::{filtration_intersect, g_chain, u_ideal, FiberInstance, Filtration, UFlavor};
use crate::ideal::MonomialIdeal;
use crate::resolution::cache::BettiCache;
use crate::resolution::{finite_colength_top_degree_with, socle_test, FieldChar};
use crate::ring::Ring;
use crate::symbolic::{symbolic_power, SymbolicMode};

use super::CheckId;

/// Cap on monomials visited by finite-length scans inside checks.
const SCAN_BUDGET: usize = 2_000_000;

/// One compared pair.
#[derive(Debug, Clone)]
pub struct Claim {
    pub label: String,
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

#[derive(Debug, Default)]
pub struct Claims {
    pub items: Vec<Claim>,
}

use crate::resolution::show_reg as show;

impl Claims {
    fn ideal_eq(&mut self, label: impl Into<String>, a: &MonomialIdeal, b: &MonomialIdeal) {
        self.items.push(Claim {
            label: label.into(),
            lhs: a.to_string(),
            rhs: b.to_string(),
            holds: a == b,
        });
    }

    fn int_eq(&mut self, label: impl Into<String>, a: Option<i64>, b: Option<i64>) {
        self.items.push(Claim {
            label: label.into(),
            lhs: show(a),
            rhs: show(b),
            holds: a == b,
        });
    }

    fn int_ge(&mut self, label: impl Into<String>, a: Option<i64>, b: Option<i64>) {
        self.items.push(Claim {
            label: label.into(),
            lhs: show(a),
            rhs: show(b),
            holds: a >= b,
        });
    }

    fn truth(&mut self, label: impl Into<String>, holds: bool, lhs: String, rhs: String) {
        self.items.push(Claim {
            label: label.into(),
            lhs,
            rhs,
            holds,
        });
    }

    fn subset(
        &mut self,
        label: impl Into<String>,
        a: &MonomialIdeal,
        b: &MonomialIdeal,
        expect: bool,
    ) {
        let holds = a.is_subset_of(b) == expect;
        self.truth(label, holds, a.to_string(), b.to_string());
    }

    pub fn first_failure(&self) -> Option<&Claim> {
        self.items.iter().find(|c| !c.holds)
    }
}

pub enum Outcome {
    Checked(Claims),
    NotApplicable(String),
}

/// Per-instance memo shared by all checks, values of `s` and characteristics.
#[derive(Default)]
pub struct Memo {
    map: Mutex<HashMap<String, Arc<dyn Any + Send + Sync>>>,
}

impl Memo {
    fn get<T: Clone + Send + Sync + 'static>(
        &self,
        key: String,
        f: impl FnOnce() -> Result<T>,
    ) -> Result<T> {
        if let Some(v) = self.map.lock().unwrap().get(&key) {
            return Ok(v
                .downcast_ref::<T>()
                .expect("memo key reused with another type")
                .clone());
        }
        let v = f()?;
        self.map.lock().unwrap().insert(key, Arc::new(v.clone()));
        Ok(v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Side {
    I,
    J,
}

impl Side {
    fn tag(self) -> &'static str {
        match self {
            Side::I => "I",
            Side::J => "J",
        }
    }
}

pub struct Env<'a> {
    pub inst: &'a FiberInstance,
    pub p: FieldChar,
    pub cache: &'a BettiCache,
    pub memo: &'a Memo,
}

fn max_all(xs: impl IntoIterator<Item = Option<i64>>) -> Option<i64> {
    xs.into_iter().fold(None, |a, b| a.max(b))
}

fn plus(x: Option<i64>, k: i64) -> Option<i64> {
    x.map(|v| v + k)
}

impl Env<'_> {
    fn reg(&self, a: &MonomialIdeal) -> Result<Option<i64>> {
        if a.is_unit() {
            return Ok(Some(0));
        }
        Ok(self.cache.invariants(a, self.p)?.reg_ideal)
    }

    fn reg_quotient(&self, a: &MonomialIdeal) -> Result<i64> {
        Ok(self.cache.invariants(a, self.p)?.reg_quotient)
    }

    fn depth_quotient(&self, a: &MonomialIdeal) -> Result<i64> {
        Ok(self.cache.invariants(a, self.p)?.depth_quotient as i64)
    }

    fn factor(&self, side: Side) -> &MonomialIdeal {
        match side {
            Side::I => &self.inst.i,
            Side::J => &self.inst.j,
        }
    }

    fn factor_ring(&self, side: Side) -> &Arc<Ring> {
        match side {
            Side::I => &self.inst.ring_r,
            Side::J => &self.inst.ring_s,
        }
    }

    fn ext(&self, side: Side, a: &MonomialIdeal) -> Result<MonomialIdeal> {
        match side {
            Side::I => self.inst.ext_r(a),
            Side::J => self.inst.ext_s(a),
        }
    }

    fn contract(&self, side: Side, a: &MonomialIdeal) -> Result<MonomialIdeal> {
        match side {
            Side::I => a.contract_to(&self.inst.ring_r, 0),
            Side::J => a.contract_to(&self.inst.ring_s, self.inst.offset_s()),
        }
    }

    /// The maximal ideal of the other block, in `T`.
    fn other_t(&self, side: Side) -> &MonomialIdeal {
        match side {
            Side::I => &self.inst.n,
            Side::J => &self.inst.m,
        }
    }

    fn own_max(&self, side: Side) -> MonomialIdeal {
        MonomialIdeal::maximal(self.factor_ring(side))
    }

    fn pow(&self, side: Side, k: u32) -> Result<MonomialIdeal> {
        self.memo
            .get(format!("{}^{k}", side.tag()), || self.factor(side).power(k))
    }

    /// `X^(k)` with the conventions `X^(0) = R` and `0^(k) = 0`.
    fn sym(&self, side: Side, k: u32, mode: SymbolicMode) -> Result<MonomialIdeal> {
        self.memo.get(format!("{}({k},{mode:?})", side.tag()), || {
            let x = self.factor(side);
            if k == 0 {
                Ok(MonomialIdeal::unit(x.ring()))
            } else if x.is_zero() {
                Ok(x.clone())
            } else {
                symbolic_power(x, k, mode)
            }
        })
    }

    /// `𝔪^a X^b` over the factor ring.
    fn max_times_pow(&self, side: Side, a: u32, b: u32) -> Result<MonomialIdeal> {
        self.memo.get(format!("m^{a}{}^{b}", side.tag()), || {
            self.own_max(side).power(a)?.product(&self.pow(side, b)?)
        })
    }

    fn f_pow(&self, k: u32) -> Result<MonomialIdeal> {
        self.memo.get(format!("F^{k}"), || self.inst.f.power(k))
    }

    fn f_sym(&self, k: u32, mode: SymbolicMode) -> Result<MonomialIdeal> {
        self.memo.get(format!("F({k},{mode:?})"), || {
            symbolic_power(&self.inst.f, k, mode)
        })
    }

    fn u_s(&self, s: u32) -> Result<MonomialIdeal> {
        self.memo
            .get(format!("U{s}"), || u_ideal(self.inst, s, UFlavor::Ordinary))
    }

    fn ass(&self, side: Side) -> Result<BTreeSet<MonomialPrime>> {
        self.memo.get(format!("Ass{}", side.tag()), || {
            decompose::associated_primes(self.factor(side))
        })
    }

    /// `depth(R/X) ≥ 1`, read off the associated primes.
    fn depth_positive(&self, side: Side) -> Result<bool> {
        let full = self.factor_ring(side).full_mask();
        Ok(!self.ass(side)?.iter().any(|p| p.mask() == full))
    }

    fn dim_positive(&self, side: Side) -> bool {
        decompose::dimension(self.factor(side)).is_some_and(|d| d > 0)
    }

    fn unmixed(&self, side: Side) -> Result<bool> {
        let x = self.factor(side);
        Ok(!x.is_zero() && decompose::is_unmixed(x)?)
    }

    fn in_square(&self, side: Side) -> bool {
        match side {
            Side::I => self.inst.i_in_m2,
            Side::J => self.inst.j_in_n2,
        }
    }
}

fn notation(env: &Env) -> Option<Outcome> {
    (!env.inst.hypotheses_m2()).then(|| Outcome::NotApplicable("needs I ⊆ m^2 and J ⊆ n^2".into()))
}

fn depths_positive(env: &Env) -> Result<bool> {
    Ok(env.depth_positive(Side::I)? && env.depth_positive(Side::J)?)
}

fn prime_set_string(ps: &BTreeSet<MonomialPrime>, ring: &Ring) -> String {
    let parts: Vec<String> = ps.iter().map(|p| p.display(ring).to_string()).collect();
    format!("{{{}}}", parts.join(", "))
}

pub fn run(id: CheckId, env: &Env, s: u32) -> Result<Outcome> {
    match id {
        CheckId::C1 => c1(env, s),
        CheckId::C2 => c2(env, s),
        CheckId::C3 => c3(env, s),
        CheckId::C4 => c4(env, s),
        CheckId::C5 => c5(env, s),
        CheckId::C6 => c6(env, s),
        CheckId::C7 => c7(env),
        CheckId::C8 => c8(env, s),
        CheckId::C9 => c9(env, s),
        CheckId::C10 => c10(env, s),
        CheckId::C11 => c11(env, s),
        CheckId::C12 => c12(env, s),
        CheckId::C13 => c13(env),
        CheckId::C14 => c14(env, s),
        CheckId::C15 => c15(env, s),
        CheckId::C16 => c16(env, s),
        CheckId::C17 => c17(env, s),
        CheckId::C18 => c18(env, s),
        CheckId::C19 => c19(env, s),
        CheckId::C20 => c20(env, s),
        CheckId::C21 => c21(env, s),
        CheckId::C22 => c22(env, s),
        CheckId::C23 => c23(env, s),
        CheckId::C24 => c24(env, s),
        CheckId::C25 => c25(env, s),
    }
}

fn c1(env: &Env, s: u32) -> Result<Outcome> {
    let mut c = Claims::default();
    let (i, j) = (&env.inst.i_t, &env.inst.j_t);
    c.ideal_eq("I ∩ J = IJ", &i.intersect(j)?, &i.product(j)?);
    let is = env.ext(Side::I, &env.pow(Side::I, s)?)?;
    let js = env.ext(Side::J, &env.pow(Side::J, s)?)?;
    c.ideal_eq(
        "I^s ∩ J^s = I^s J^s",
        &is.intersect(&js)?,
        &is.product(&js)?,
    );
    Ok(Outcome::Checked(c))
}

fn c2(env: &Env, s: u32) -> Result<Outcome> {
    let mut c = Claims::default();
    let is = env.pow(Side::I, s)?;
    let js = env.pow(Side::J, s)?;
    let (ist, jst) = (env.ext(Side::I, &is)?, env.ext(Side::J, &js)?);
    let prod = ist.product(&jst)?;
    let rhs = env.reg(&is)?.zip(env.reg(&js)?).map(|(a, b)| a + b);
    c.int_eq("reg_T(I^s ⊗ J^s) = reg I^s + reg J^s", env.reg(&prod)?, rhs);
    let lhs = env.reg_quotient(&ist.sum(&jst)?)?;
    let rhs = env.reg_quotient(&is)? + env.reg_quotient(&js)?;
    c.int_eq(
        "reg T/(I^s + J^s) = reg R/I^s + reg S/J^s",
        Some(lhs),
        Some(rhs),
    );
    Ok(Outcome::Checked(c))
}

fn c3(env: &Env, s: u32) -> Result<Outcome> {
    let mut c = Claims::default();
    for side in [Side::I, Side::J] {
        let x = env.factor(side);
        if x.is_zero() {
            continue;
        }
        let t = side.tag();
        let msx = env.max_times_pow(side, s, 1)?;
        let top = finite_colength_top_degree_with(x, &msx, SCAN_BUDGET)?;
        let reg_x = env.reg(x)?;
        let reg_msx = env.reg(&msx)?;
        c.int_eq(
            format!("reg(m^s {t}) = max(reg {t}, reg({t}/m^s {t}) + 1)"),
            reg_msx,
            reg_x.max(top.map(|d| d as i64 + 1)),
        );
        if x.is_equigenerated() {
            let d = x.max_gen_degree().map(|d| d as i64 + s as i64);
            c.int_eq(
                format!("reg(m^s {t}) = max(reg {t}, s + d({t}))"),
                reg_msx,
                reg_x.max(d),
            );
        }
    }
    if c.items.is_empty() {
        return Ok(Outcome::NotApplicable("both factors are zero".into()));
    }
    Ok(Outcome::Checked(c))
}

fn c4(env: &Env, s: u32) -> Result<Outcome> {
    let mut c = Claims::default();
    for side in [Side::I, Side::J] {
        if !env.unmixed(side)? {
            continue;
        }
        let x = env.factor(side);
        let direct = env.sym(side, s, SymbolicMode::Ass)?;
        let by_parts = crate::symbolic::symbolic_power_by_components(x, s)?;
        c.ideal_eq(
            format!("{t}^(s) = ∩ Q_k^(s)", t = side.tag()),
            &direct,
            &by_parts,
        );
    }
    if c.items.is_empty() {
        return Ok(Outcome::NotApplicable("no non-zero unmixed factor".into()));
    }
    Ok(Outcome::Checked(c))
}

fn c5(env: &Env, s: u32) -> Result<Outcome> {
    if env.inst.i.is_zero() || env.inst.j.is_zero() {
        return Ok(Outcome::NotApplicable("needs non-zero I and J".into()));
    }
    let mut c = Claims::default();
    let sum = env.inst.i_t.sum(&env.inst.j_t)?;
    let lhs = symbolic_power(&sum, s, SymbolicMode::Ass)?;
    let mut terms = Vec::new();
    for i in 0..=s {
        let a = env.ext(Side::I, &env.sym(Side::I, i, SymbolicMode::Ass)?)?;
        let b = env.ext(Side::J, &env.sym(Side::J, s - i, SymbolicMode::Ass)?)?;
        terms.push(a.product(&b)?);
    }
    let rhs = MonomialIdeal::sum_all(&env.inst.ring_t, terms.iter())?;
    c.ideal_eq("(I+J)^(s) = Σ I^(i) J^(s-i)", &lhs, &rhs);
    Ok(Outcome::Checked(c))
}

fn c6(env: &Env, s: u32) -> Result<Outcome> {
    let mut c = Claims::default();
    for side in [Side::I, Side::J] {
        let x = env.factor(side);
        if x.is_zero() {
            continue;
        }
        let t = side.tag();
        let depth = env.depth_quotient(x)?;
        c.truth(
            format!("depth R/{t} = 0 iff R/{t} has socle"),
            (depth == 0) == socle_test(x).is_some(),
            depth.to_string(),
            format!(
                "{:?}",
                socle_test(x).map(|w| w.display(x.ring()).to_string())
            ),
        );
        let sym = env.sym(side, s, SymbolicMode::Ass)?;
        if depth == 0 {
            c.ideal_eq(
                format!("depth 0: {t}^(s) = {t}^s"),
                &sym,
                &env.pow(side, s)?,
            );
        } else {
            c.int_ge(
                format!("depth R/{t}^(s) ≥ 1"),
                Some(env.depth_quotient(&sym)?),
                Some(1),
            );
        }
    }
    if c.items.is_empty() {
        return Ok(Outcome::NotApplicable("both factors are zero".into()));
    }
    Ok(Outcome::Checked(c))
}

fn c7(env: &Env) -> Result<Outcome> {
    if let Some(o) = notation(env) {
        return Ok(o);
    }
    let inst = env.inst;
    let mut c = Claims::default();
    let rhs = inst.i_t.sum(&inst.n)?.intersect(&inst.j_t.sum(&inst.m)?)?;
    c.ideal_eq("F = (I+n) ∩ (J+m)", &inst.f, &rhs);
    let di = env.depth_quotient(&inst.i)?;
    let dj = env.depth_quotient(&inst.j)?;
    c.int_eq(
        "depth T/F = min(1, depth R/I, depth S/J)",
        Some(env.depth_quotient(&inst.f)?),
        Some(1.min(di).min(dj)),
    );
    let (rf, ri, rj) = (env.reg(&inst.f)?, env.reg(&inst.i)?, env.reg(&inst.j)?);
    c.int_eq(
        "reg F = max(2, reg I, reg J)",
        rf,
        max_all([Some(2), ri, rj]),
    );
    if !(inst.i.is_zero() && inst.j.is_zero()) {
        c.int_eq("reg F = max(reg I, reg J)", rf, ri.max(rj));
    }
    Ok(Outcome::Checked(c))
}

fn c8(env: &Env, s: u32) -> Result<Outcome> {
    if let Some(o) = notation(env) {
        return Ok(o);
    }
    let inst = env.inst;
    let t = &inst.ring_t;
    let mut c = Claims::default();
    let fs = env.f_pow(s)?;
    let mn = inst.m.product(&inst.n)?;
    let is = env.ext(Side::I, &env.pow(Side::I, s)?)?;
    let js = env.ext(Side::J, &env.pow(Side::J, s)?)?;
    let rec = MonomialIdeal::sum_all(t, [&is, &js, &mn.product(&env.f_pow(s - 1)?)?])?;
    c.ideal_eq("F^s = I^s + J^s + mn F^(s-1)", &fs, &rec);
    let mut terms = Vec::new();
    for k in 0..=s {
        let ik = env.ext(Side::I, &env.pow(Side::I, s - k)?)?;
        let jk = env.ext(Side::J, &env.pow(Side::J, s - k)?)?;
        terms.push(mn.power(k)?.product(&ik.sum(&jk)?)?);
    }
    c.ideal_eq(
        "F^s = Σ (mn)^k (I^(s-k) + J^(s-k))",
        &fs,
        &MonomialIdeal::sum_all(t, terms.iter())?,
    );
    let g = g_chain(inst, s)?;
    c.ideal_eq("G_s = F^s", &g[s as usize], &fs);
    for k in 1..=s {
        let jk = env.ext(Side::J, &env.pow(Side::J, k)?)?;
        let lhs = g[k as usize - 1].intersect(&mn.power(s - k)?.product(&jk)?)?;
        let rhs = inst
            .m
            .power(s - k + 1)?
            .product(&inst.n.power(s - k)?)?
            .product(&jk)?;
        c.ideal_eq(
            format!(
                "G_{} ∩ (mn)^{} J^{k} = m^{} n^{} J^{k}",
                k - 1,
                s - k,
                s - k + 1,
                s - k
            ),
            &lhs,
            &rhs,
        );
    }
    Ok(Outcome::Checked(c))
}

/// `(X + other)^s` and its depth/regularity against the powers of `X`.
fn plus_other_block(env: &Env, s: u32, symbolic: bool) -> Result<Claims> {
    let mut c = Claims::default();
    for side in [Side::I, Side::J] {
        let t = side.tag();
        let xt = env.ext(side, env.factor(side))?;
        let base = xt.sum(env.other_t(side))?;
        let (big, kind) = if symbolic {
            (symbolic_power(&base, s, SymbolicMode::Ass)?, "(s)")
        } else {
            (base.power(s)?, "s")
        };
        let mut depths = Vec::new();
        let mut regs = Vec::new();
        for i in 1..=s {
            let xi = if symbolic {
                env.sym(side, i, SymbolicMode::Ass)?
            } else {
                env.pow(side, i)?
            };
            depths.push(env.depth_quotient(&xi)?);
            regs.push(Some(env.reg_quotient(&xi)? + (s - i) as i64));
        }
        let dmin = depths.into_iter().min();
        c.int_eq(
            format!("depth T/({t}+other)^{kind} = min depth"),
            Some(env.depth_quotient(&big)?),
            dmin,
        );
        c.int_eq(
            format!("reg T/({t}+other)^{kind} = max reg + s - i"),
            Some(env.reg_quotient(&big)?),
            max_all(regs),
        );
    }
    Ok(c)
}

fn c9(env: &Env, s: u32) -> Result<Outcome> {
    Ok(Outcome::Checked(plus_other_block(env, s, false)?))
}

fn c10(env: &Env, s: u32) -> Result<Outcome> {
    Ok(Outcome::Checked(plus_other_block(env, s, true)?))
}

fn c11(env: &Env, s: u32) -> Result<Outcome> {
    if let Some(o) = notation(env) {
        return Ok(o);
    }
    let inst = env.inst;
    let mut c = Claims::default();
    let fsym = env.f_sym(s, SymbolicMode::Ass)?;
    if depths_positive(env)? {
        let a = symbolic_power(&inst.i_t.sum(&inst.n)?, s, SymbolicMode::Ass)?;
        let b = symbolic_power(&inst.j_t.sum(&inst.m)?, s, SymbolicMode::Ass)?;
        c.ideal_eq("F^(s) = (I+n)^(s) ∩ (J+m)^(s)", &fsym, &a.intersect(&b)?);
    } else {
        c.ideal_eq("depth 0 factor: F^(s) = F^s", &fsym, &env.f_pow(s)?);
    }
    Ok(Outcome::Checked(c))
}

fn symbolic_filtrations(env: &Env, s: u32, mode: SymbolicMode) -> Result<(Filtration, Filtration)> {
    let k = Filtration::new(
        (0..=s)
            .map(|i| env.sym(Side::I, i, mode))
            .collect::<Result<_>>()?,
    )?;
    let l = Filtration::new(
        (0..=s)
            .map(|i| env.sym(Side::J, i, mode))
            .collect::<Result<_>>()?,
    )?;
    Ok((k, l))
}

fn c12(env: &Env, s: u32) -> Result<Outcome> {
    if let Some(o) = notation(env) {
        return Ok(o);
    }
    if !depths_positive(env)? {
        return Ok(Outcome::NotApplicable(
            "needs depth R/I, depth S/J ≥ 1".into(),
        ));
    }
    let mut c = Claims::default();
    let (k, l) = symbolic_filtrations(env, s, SymbolicMode::Ass)?;
    let (lhs, rhs) = filtration_intersect(env.inst, &k, &l, s)?;
    let fsym = env.f_sym(s, SymbolicMode::Ass)?;
    c.ideal_eq("F^(s) = Σ (I^(i) ∩ m^(s-t))(J^(t) ∩ n^(s-i))", &fsym, &rhs);
    c.ideal_eq("binomial intersection = double sum", &lhs, &rhs);
    Ok(Outcome::Checked(c))
}

fn c13(env: &Env) -> Result<Outcome> {
    if let Some(o) = notation(env) {
        return Ok(o);
    }
    let inst = env.inst;
    let t = &inst.ring_t;
    let off = inst.offset_s();
    let m_mask = inst.m.support();
    let n_mask = inst.n.support();
    let lift_i = |ps: &BTreeSet<MonomialPrime>| -> BTreeSet<MonomialPrime> {
        ps.iter()
            .map(|p| MonomialPrime::new(p.mask() | n_mask))
            .collect()
    };
    let lift_j = |ps: &BTreeSet<MonomialPrime>| -> BTreeSet<MonomialPrime> {
        ps.iter()
            .map(|p| MonomialPrime::new(p.mask() << off | m_mask))
            .collect()
    };
    let mut c = Claims::default();
    let ass_f = decompose::associated_primes(&inst.f)?;
    let expect: BTreeSet<_> = lift_i(&env.ass(Side::I)?)
        .union(&lift_j(&env.ass(Side::J)?))
        .copied()
        .collect();
    c.truth(
        "Ass F = {P + n} ∪ {Q + m}",
        ass_f == expect,
        prime_set_string(&ass_f, t),
        prime_set_string(&expect, t),
    );
    let min_f = decompose::minimal_primes(&inst.f)?;
    let min_i = decompose::minimal_primes(&inst.i)?;
    let min_j = decompose::minimal_primes(&inst.j)?;
    let bound: BTreeSet<_> = lift_i(&min_i).union(&lift_j(&min_j)).copied().collect();
    c.truth(
        "Min F ⊆ {P + n} ∪ {Q + m}",
        min_f.is_subset(&bound),
        prime_set_string(&min_f, t),
        prime_set_string(&bound, t),
    );
    let (dim_i, dim_j) = (env.dim_positive(Side::I), env.dim_positive(Side::J));
    if dim_i && dim_j {
        c.truth(
            "positive dimensions: Min F = {P + n} ∪ {Q + m}",
            min_f == bound,
            prime_set_string(&min_f, t),
            prime_set_string(&bound, t),
        );
    }
    if !dim_i {
        let e = lift_j(&min_j);
        c.truth(
            "dim R/I = 0: Min F = {Q + m}",
            min_f == e,
            prime_set_string(&min_f, t),
            prime_set_string(&e, t),
        );
    }
    if !dim_j {
        let e = lift_i(&min_i);
        c.truth(
            "dim S/J = 0: Min F = {P + n}",
            min_f == e,
            prime_set_string(&min_f, t),
            prime_set_string(&e, t),
        );
    }
    Ok(Outcome::Checked(c))
}

fn c14(env: &Env, s: u32) -> Result<Outcome> {
    let inst = env.inst;
    let mut c = Claims::default();
    let pairs = [
        (
            "ordinary",
            Filtration::ordinary(&inst.i, s)?,
            Filtration::ordinary(&inst.j, s)?,
        ),
        (
            "symbolic",
            symbolic_filtrations(env, s, SymbolicMode::Ass)?.0,
            symbolic_filtrations(env, s, SymbolicMode::Ass)?.1,
        ),
        (
            "truncated",
            Filtration::truncated(&inst.i, s)?,
            Filtration::truncated(&inst.j, s)?,
        ),
    ];
    for (name, k, l) in pairs {
        let (lhs, rhs) = filtration_intersect(inst, &k, &l, s)?;
        c.ideal_eq(
            format!("{name} filtrations: intersection = double sum"),
            &lhs,
            &rhs,
        );
    }
    Ok(Outcome::Checked(c))
}

/// `max_{i∈[1,s]} {[2s,] reg A_i + s - i, reg B_i + s - i}`.
fn formula(
    env: &Env,
    s: u32,
    with_2s: bool,
    term: &dyn Fn(Side, u32) -> Result<MonomialIdeal>,
) -> Result<Option<i64>> {
    let mut vals = vec![if with_2s { Some(2 * s as i64) } else { None }];
    for side in [Side::I, Side::J] {
        for i in 1..=s {
            vals.push(plus(env.reg(&term(side, i)?)?, (s - i) as i64));
        }
    }
    Ok(max_all(vals))
}

fn c15(env: &Env, s: u32) -> Result<Outcome> {
    if let Some(o) = notation(env) {
        return Ok(o);
    }
    if !depths_positive(env)? {
        return Ok(Outcome::NotApplicable(
            "needs depth R/I, depth S/J ≥ 1".into(),
        ));
    }
    let mut c = Claims::default();
    let fsym = env.f_sym(s, SymbolicMode::Ass)?;
    c.int_eq(
        "depth T/F^(s) = 1",
        Some(env.depth_quotient(&fsym)?),
        Some(1),
    );
    let f = formula(env, s, true, &|side, i| env.sym(side, i, SymbolicMode::Ass))?;
    c.int_eq(
        "reg F^(s) = max(2s, reg I^(i) + s - i, reg J^(i) + s - i)",
        env.reg(&fsym)?,
        f,
    );
    Ok(Outcome::Checked(c))
}

fn c16(env: &Env, s: u32) -> Result<Outcome> {
    if !(env.dim_positive(Side::I) && env.dim_positive(Side::J)) {
        return Ok(Outcome::NotApplicable("needs dim R/I, dim S/J > 0".into()));
    }
    let inst = env.inst;
    let mut c = Claims::default();
    let msns = inst.m.power(s)?.product(&inst.n.power(s)?)?;
    let pairs = [
        (
            "ordinary",
            Filtration::ordinary(&inst.i, s)?,
            Filtration::ordinary(&inst.j, s)?,
        ),
        (
            "symbolic",
            symbolic_filtrations(env, s, SymbolicMode::Ass)?.0,
            symbolic_filtrations(env, s, SymbolicMode::Ass)?.1,
        ),
    ];
    for (name, k, l) in pairs {
        let (w, _) = filtration_intersect(inst, &k, &l, s)?;
        let pw = inst.p.product(&w)?;
        c.subset(format!("{name}: m^s n^s ⊄ p W_s"), &msns, &pw, false);
        let has = w.gens().iter().any(|g| g.degree() == 2 * s);
        c.truth(
            format!("{name}: W_s has a generator of degree 2s"),
            has,
            w.to_string(),
            format!("degree {}", 2 * s),
        );
    }
    Ok(Outcome::Checked(c))
}

fn c17(env: &Env, s: u32) -> Result<Outcome> {
    if let Some(o) = notation(env) {
        return Ok(o);
    }
    if !depths_positive(env)? {
        return Ok(Outcome::NotApplicable(
            "needs depth R/I, depth S/J ≥ 1".into(),
        ));
    }
    if !(env.unmixed(Side::I)? || env.unmixed(Side::J)?) {
        return Ok(Outcome::NotApplicable(
            "needs a non-zero unmixed factor".into(),
        ));
    }
    let mut c = Claims::default();
    let fsym = env.f_sym(s, SymbolicMode::Ass)?;
    let f = formula(env, s, false, &|side, i| {
        env.sym(side, i, SymbolicMode::Ass)
    })?;
    c.int_eq(
        "reg F^(s) = max(reg I^(i) + s - i, reg J^(i) + s - i)",
        env.reg(&fsym)?,
        f,
    );
    Ok(Outcome::Checked(c))
}

fn c18(env: &Env, s: u32) -> Result<Outcome> {
    let mut c = Claims::default();
    for side in [Side::I, Side::J] {
        if !env.unmixed(side)? {
            continue;
        }
        let t = side.tag();
        let x = env.factor(side);
        let sym = env.sym(side, s, SymbolicMode::Ass)?;
        let rad = x.radical();
        for f in rad.gens() {
            let fs = f.checked_pow(s)?;
            let found = sym.gens().iter().any(|g| fs.divides(g));
            c.truth(
                format!("{t}: some generator of {t}^(s) is divisible by f^s"),
                found,
                f.display(x.ring()).to_string(),
                sym.to_string(),
            );
        }
        if env.in_square(side) {
            let d_sym = sym.max_gen_degree().map(|d| d as i64);
            let d_rad = rad.max_gen_degree().unwrap_or(0).max(2) as i64;
            c.int_ge(
                format!("d({t}^(s)) ≥ max(2, d(rad {t})) s"),
                d_sym,
                Some(d_rad * s as i64),
            );
        }
    }
    if c.items.is_empty() {
        return Ok(Outcome::NotApplicable("no non-zero unmixed factor".into()));
    }
    Ok(Outcome::Checked(c))
}

fn c19(env: &Env, s: u32) -> Result<Outcome> {
    if let Some(o) = notation(env) {
        return Ok(o);
    }
    if depths_positive(env)? {
        return Ok(Outcome::NotApplicable("needs a factor of depth 0".into()));
    }
    let mut c = Claims::default();
    let fsym = env.f_sym(s, SymbolicMode::Ass)?;
    c.ideal_eq("F^(s) = F^s", &fsym, &env.f_pow(s)?);
    c.int_eq(
        "depth T/F^(s) = 0",
        Some(env.depth_quotient(&fsym)?),
        Some(0),
    );
    let f = formula(env, s, false, &|side, i| env.max_times_pow(side, s - i, i))?;
    c.int_eq(
        "reg F^(s) = max(reg m^(s-i) I^i + s - i, reg n^(s-i) J^i + s - i)",
        env.reg(&fsym)?,
        f,
    );
    Ok(Outcome::Checked(c))
}

fn c20(env: &Env, s: u32) -> Result<Outcome> {
    if let Some(o) = notation(env) {
        return Ok(o);
    }
    if s < 2 {
        return Ok(Outcome::NotApplicable("needs s ≥ 2".into()));
    }
    let inst = env.inst;
    if inst.i.is_zero() && inst.j.is_zero() {
        return Ok(Outcome::NotApplicable("needs a non-zero factor".into()));
    }
    let mut c = Claims::default();
    let fs = env.f_pow(s)?;
    c.int_eq("depth T/F^s = 0", Some(env.depth_quotient(&fs)?), Some(0));
    let colon = fs.colon(&inst.p)?;
    let w = socle_test(&fs);
    let ok = w
        .as_ref()
        .is_some_and(|w| colon.contains(w) && !fs.contains(w));
    c.truth(
        "socle witness in (F^s : p) \\ F^s",
        ok,
        w.map_or_else(|| "none".into(), |w| w.display(&inst.ring_t).to_string()),
        "monomial".into(),
    );
    for side in [Side::I, Side::J] {
        if env.factor(side).is_zero() {
            continue;
        }
        let t = side.tag();
        let fam = env
            .ext(side, &env.pow(side, s - 1)?)?
            .product(env.other_t(side))?;
        c.subset(format!("{t}^(s-1) · other ⊄ F^s"), &fam, &fs, false);
        c.subset(format!("{t}^(s-1) · other ⊆ F^s : p"), &fam, &colon, true);
    }
    Ok(Outcome::Checked(c))
}

fn c21(env: &Env, s: u32) -> Result<Outcome> {
    if let Some(o) = notation(env) {
        return Ok(o);
    }
    if s < 2 {
        return Ok(Outcome::NotApplicable("needs s ≥ 2".into()));
    }
    let mut c = Claims::default();
    let fs = env.f_pow(s)?;
    let mn = env.inst.m.product(&env.inst.n)?;
    for side in [Side::I, Side::J] {
        let t = side.tag();
        let own = env.own_max(side);
        let other = env.other_t(side);
        for i in 1..s {
            let xi = env.pow(side, i)?;
            let cap = xi.intersect(&own.power(s)?)?;
            let cap_t = env.ext(side, &cap)?;
            let lhs = cap_t.product(&other.power(s - i)?)?.intersect(&fs)?;
            let rhs = mn.power(s - i)?.product(&env.f_pow(i)?)?;
            c.subset(
                format!(
                    "({t}^{i} ∩ own^s) other^{} ∩ F^s ⊆ (mn)^{} F^{i}",
                    s - i,
                    s - i
                ),
                &lhs,
                &rhs,
                true,
            );
            let col = env.contract(side, &fs.colon(&other.power(s - i)?)?)?;
            let ident_l = col.intersect(&cap)?;
            let ident_r = env.max_times_pow(side, s - i, i)?;
            c.ideal_eq(
                format!(
                    "(F^s : other^{}) ∩ ({t}^{i} ∩ own^s) = own^{} {t}^{i}",
                    s - i,
                    s - i
                ),
                &ident_l,
                &ident_r,
            );
            if !env.factor(side).is_zero() {
                let prod = env
                    .ext(side, &env.max_times_pow(side, s - i - 1, i)?)?
                    .product(&other.power(s - i)?)?;
                c.subset(
                    format!("{t}^{i} own^{} other^{} ⊄ F^s", s - i - 1, s - i),
                    &prod,
                    &fs,
                    false,
                );
            }
        }
    }
    Ok(Outcome::Checked(c))
}

fn c22(env: &Env, s: u32) -> Result<Outcome> {
    if let Some(o) = notation(env) {
        return Ok(o);
    }
    let mut c = Claims::default();
    let reg_fs = env.reg(&env.f_pow(s)?)?;
    let term = |side, i| env.max_times_pow(side, s - i, i);
    c.int_eq(
        "reg F^s = max(2s, reg m^(s-i) I^i + s - i, reg n^(s-i) J^i + s - i)",
        reg_fs,
        formula(env, s, true, &term)?,
    );
    if !(env.inst.i.is_zero() && env.inst.j.is_zero()) {
        c.int_eq(
            "reg F^s = max(reg m^(s-i) I^i + s - i, reg n^(s-i) J^i + s - i)",
            reg_fs,
            formula(env, s, false, &term)?,
        );
    }
    Ok(Outcome::Checked(c))
}

fn c23(env: &Env, s: u32) -> Result<Outcome> {
    if let Some(o) = notation(env) {
        return Ok(o);
    }
    let inst = env.inst;
    let mut c = Claims::default();
    let us = env.u_s(s)?;
    let fs = env.f_pow(s)?;
    let k = Filtration::ordinary(&inst.i, s)?;
    let l = Filtration::ordinary(&inst.j, s)?;
    let (_, rhs) = filtration_intersect(inst, &k, &l, s)?;
    c.ideal_eq("U_s = Σ (I^i ∩ m^(s-t))(J^t ∩ n^(s-i))", &us, &rhs);
    let pow_term = |side, i| env.pow(side, i);
    let base = formula(env, s, true, &pow_term)?;
    c.int_eq(
        "reg U_s = max(2s, reg I^i + s - i, reg J^i + s - i)",
        env.reg(&us)?,
        base,
    );
    c.subset("F^s ⊆ U_s", &fs, &us, true);
    // p^(2s-1) U_s ⊆ F^s, one generator at a time
    let k2 = 2 * s - 1;
    let mut bad = None;
    for u in us.gens() {
        if !fs
            .colon_monomial(u)
            .contains_power_of_maximal(k2, SCAN_BUDGET)?
        {
            bad = Some(u.display(&inst.ring_t).to_string());
            break;
        }
    }
    c.truth(
        "p^(2s-1) U_s ⊆ F^s",
        bad.is_none(),
        bad.unwrap_or_else(|| "all generators".into()),
        "F^s".into(),
    );
    let top = finite_colength_top_degree_with(&us, &fs, SCAN_BUDGET)?.map(|d| d as i64);
    c.int_eq(
        "reg F^s = max(reg(U_s/F^s) + 1, 2s, reg I^i + s - i, reg J^i + s - i)",
        env.reg(&fs)?,
        plus(top, 1).max(base),
    );
    if s >= 2 {
        for side in [Side::I, Side::J] {
            if env.factor(side).is_zero() {
                continue;
            }
            let t = side.tag();
            c.int_ge(
                format!("{t} ≠ 0: reg(U_s/F^s) ≥ 2s - 1"),
                top,
                Some(k2 as i64),
            );
            let mut lower = vec![Some(k2 as i64)];
            for i in 1..=s {
                let xi = env.pow(side, i)?;
                let sub = env.max_times_pow(side, s - i, i)?;
                let d = finite_colength_top_degree_with(&xi, &sub, SCAN_BUDGET)?.map(|d| d as i64);
                lower.push(plus(d, (s - i) as i64));
            }
            c.int_ge(
                format!(
                    "{t} ≠ 0: reg(U_s/F^s) ≥ max(2s - 1, reg({t}^i / own^(s-i) {t}^i) + s - i)"
                ),
                top,
                max_all(lower),
            );
        }
    }
    Ok(Outcome::Checked(c))
}

fn c24(env: &Env, s: u32) -> Result<Outcome> {
    if let Some(o) = notation(env) {
        return Ok(o);
    }
    let inst = env.inst;
    if inst.i.is_zero()
        || inst.j.is_zero()
        || !inst.i.is_equigenerated()
        || !inst.j.is_equigenerated()
    {
        return Ok(Outcome::NotApplicable(
            "needs non-zero equigenerated I and J".into(),
        ));
    }
    let mut c = Claims::default();
    let f = formula(env, s, false, &|side, i| env.pow(side, i))?;
    c.int_eq(
        "reg F^s = max(reg I^i + s - i, reg J^i + s - i)",
        env.reg(&env.f_pow(s)?)?,
        f,
    );
    Ok(Outcome::Checked(c))
}

fn c25(env: &Env, s: u32) -> Result<Outcome> {
    if let Some(o) = notation(env) {
        return Ok(o);
    }
    if !(env.dim_positive(Side::I) && env.dim_positive(Side::J)) {
        return Ok(Outcome::NotApplicable("needs dim R/I, dim S/J ≥ 1".into()));
    }
    let inst = env.inst;
    let t = &inst.ring_t;
    let mut c = Claims::default();
    let ium = env.ext(Side::I, &decompose::unmixed_part(&inst.i)?.0)?;
    let jum = env.ext(Side::J, &decompose::unmixed_part(&inst.j)?.0)?;
    let mf1 = env.f_sym(1, SymbolicMode::Min)?;
    let split = ium.sum(&inst.n)?.intersect(&jum.sum(&inst.m)?)?;
    c.ideal_eq("mF^(1) = (I^um + n) ∩ (J^um + m)", &mf1, &split);
    c.ideal_eq(
        "mF^(1) = I^um + J^um + mn",
        &mf1,
        &MonomialIdeal::sum_all(t, [&ium, &jum, &inst.m.product(&inst.n)?])?,
    );
    let mfs = env.f_sym(s, SymbolicMode::Min)?;
    let a = symbolic_power(&inst.i_t.sum(&inst.n)?, s, SymbolicMode::Min)?;
    let b = symbolic_power(&inst.j_t.sum(&inst.m)?, s, SymbolicMode::Min)?;
    c.ideal_eq("mF^(s) = m(I+n)^(s) ∩ m(J+m)^(s)", &mfs, &a.intersect(&b)?);
    let a = symbolic_power(&ium.sum(&inst.n)?, s, SymbolicMode::Ass)?;
    let b = symbolic_power(&jum.sum(&inst.m)?, s, SymbolicMode::Ass)?;
    c.ideal_eq(
        "mF^(s) = (I^um + n)^(s) ∩ (J^um + m)^(s)",
        &mfs,
        &a.intersect(&b)?,
    );
    let (k, l) = symbolic_filtrations(env, s, SymbolicMode::Min)?;
    let (_, rhs) = filtration_intersect(inst, &k, &l, s)?;
    c.ideal_eq(
        "mF^(s) = Σ (mI^(i) ∩ m^(s-t))(mJ^(t) ∩ n^(s-i))",
        &mfs,
        &rhs,
    );
    c.int_eq(
        "depth T/mF^(s) = 1",
        Some(env.depth_quotient(&mfs)?),
        Some(1),
    );
    let f = formula(env, s, true, &|side, i| env.sym(side, i, SymbolicMode::Min))?;
    c.int_eq(
        "reg mF^(s) = max(2s, reg mI^(i) + s - i, reg mJ^(i) + s - i)",
        env.reg(&mfs)?,
        f,
    );
    Ok(Outcome::Checked(c))
}
