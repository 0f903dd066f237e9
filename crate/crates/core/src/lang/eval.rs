//! Evaluation against the kernels.

use std::collections::HashMap;
use std::sync::Arc;

use super::{Expr, ExprKind, LangError, Op, Program};
use crate::decompose::{self, MonomialPrime};
use crate::error::Error;
use crate::fiber::make_fiber_in;
use crate::ideal::MonomialIdeal;
use crate::monomial::{Exp, Monomial};
use crate::resolution::cache::BettiCache;
use crate::resolution::{BettiOptions, BettiTable, FieldChar};
use crate::ring::Ring;
use crate::symbolic::{symbolic_power, SymbolicMode};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Ideal(MonomialIdeal),
    /// `None` is `-∞`.
    Int(Option<i64>),
    Table {
        table: BettiTable,
        ring: Arc<Ring>,
    },
    Primes {
        primes: Vec<MonomialPrime>,
        ring: Arc<Ring>,
    },
    /// Irreducible components.
    Components(Vec<MonomialIdeal>),
}

impl Value {
    fn kind(&self) -> &'static str {
        match self {
            Value::Ideal(_) => "an ideal",
            Value::Int(_) => "an integer",
            Value::Table { .. } => "a Betti table",
            Value::Primes { .. } => "a set of primes",
            Value::Components(_) => "a decomposition",
        }
    }
}

/// Evaluates with a fresh cache, using the on-disk directory from the
/// environment when it is set.
pub fn evaluate(p: &Program, char: FieldChar) -> Result<Value, LangError> {
    let cache = BettiCache::new(vec![char], BettiOptions::default()).with_env_dir();
    evaluate_with(p, char, &cache)
}

pub fn evaluate_with(p: &Program, char: FieldChar, cache: &BettiCache) -> Result<Value, LangError> {
    let mut ev = Evaluator {
        p,
        char,
        cache,
        env: HashMap::new(),
    };
    for b in &p.bindings {
        let v = ev.eval(&b.expr)?;
        ev.env.insert(b.name.clone(), v);
    }
    ev.eval(&p.result)
}

struct Evaluator<'a> {
    p: &'a Program,
    char: FieldChar,
    cache: &'a BettiCache,
    env: HashMap<String, Value>,
}

impl Evaluator<'_> {
    fn ring(&self) -> &Arc<Ring> {
        &self.p.ring
    }

    fn kernel<T>(&self, e: &Expr, r: Result<T, Error>) -> Result<T, LangError> {
        r.map_err(|err| LangError::eval(self.p, e, err))
    }

    fn ideal(&mut self, e: &Expr) -> Result<MonomialIdeal, LangError> {
        match self.eval(e)? {
            Value::Ideal(a) => Ok(a),
            v => Err(LangError::arity(
                self.p,
                e,
                format!("expected an ideal, got {}", v.kind()),
            )),
        }
    }

    fn eval(&mut self, e: &Expr) -> Result<Value, LangError> {
        match &e.kind {
            ExprKind::Zero => Ok(Value::Ideal(MonomialIdeal::zero(self.ring()))),
            ExprKind::Unit => Ok(Value::Ideal(MonomialIdeal::unit(self.ring()))),
            ExprKind::Literal(gens) => {
                let n = self.ring().nvars();
                let mut monos = Vec::with_capacity(gens.len());
                for g in gens {
                    let mut exps = vec![0 as Exp; n];
                    for (v, k) in g {
                        let j = self.ring().index_of(v).expect("parser checked variables");
                        exps[j] = self.kernel(
                            e,
                            exps[j]
                                .checked_add(*k)
                                .ok_or_else(|| Error::Overflow(format!("exponent of {v}"))),
                        )?;
                    }
                    monos.push(Monomial::new(&exps));
                }
                Ok(Value::Ideal(self.kernel(
                    e,
                    MonomialIdeal::minimalize(self.ring(), monos),
                )?))
            }
            ExprKind::Name(n) => Ok(self.env.get(n).expect("parser checked names").clone()),
            ExprKind::Binary(op, a, b) => {
                let (x, y) = (self.ideal(a)?, self.ideal(b)?);
                let r = match op {
                    Op::Sum => x.sum(&y),
                    Op::Product => x.product(&y),
                    Op::Intersect => x.intersect(&y),
                    Op::Colon => x.colon(&y),
                };
                Ok(Value::Ideal(self.kernel(e, r)?))
            }
            ExprKind::Power(a, k) => {
                let x = self.ideal(a)?;
                Ok(Value::Ideal(self.kernel(e, x.power(*k))?))
            }
            ExprKind::Call(c) => self.call(e, &c.name, &c.args),
            ExprKind::Int(_) | ExprKind::Word(_) => Err(LangError::arity(
                self.p,
                e,
                "integers and modes are only allowed as arguments",
            )),
        }
    }

    fn int_arg(&self, e: &Expr) -> Result<u32, LangError> {
        match e.kind {
            ExprKind::Int(v) => {
                u32::try_from(v).map_err(|_| LangError::arity(self.p, e, "integer too large"))
            }
            _ => Err(LangError::arity(self.p, e, "expected an integer")),
        }
    }

    fn call(&mut self, e: &Expr, name: &str, args: &[Expr]) -> Result<Value, LangError> {
        let arity = |lo: usize, hi: usize| -> Result<(), LangError> {
            if args.len() < lo || args.len() > hi {
                let want = if lo == hi {
                    lo.to_string()
                } else {
                    format!("{lo} or {hi}")
                };
                return Err(LangError::arity(
                    self.p,
                    e,
                    format!("`{name}` takes {want} argument(s), got {}", args.len()),
                ));
            }
            Ok(())
        };
        match name {
            "rad" | "reg" | "depth" | "betti" | "ass" | "min" | "decomp" => {
                arity(1, 1)?;
                let a = self.ideal(&args[0])?;
                let r: Result<Value, Error> = match name {
                    "rad" => Ok(Value::Ideal(a.radical())),
                    "reg" => self
                        .cache
                        .invariants(&a, self.char)
                        .map(|r| Value::Int(r.reg_ideal)),
                    "depth" => self
                        .cache
                        .invariants(&a, self.char)
                        .map(|r| Value::Int(Some(r.depth_quotient as i64))),
                    "betti" => self.cache.table(&a, self.char).map(|table| Value::Table {
                        table,
                        ring: a.ring().clone(),
                    }),
                    "ass" => decompose::associated_primes(&a).map(|s| Value::Primes {
                        primes: s.into_iter().collect(),
                        ring: a.ring().clone(),
                    }),
                    "min" => decompose::minimal_primes(&a).map(|s| Value::Primes {
                        primes: s.into_iter().collect(),
                        ring: a.ring().clone(),
                    }),
                    _ => decompose::irreducible_decomposition(&a).map(|d| {
                        Value::Components(d.components.into_iter().map(|c| c.ideal).collect())
                    }),
                };
                self.kernel(e, r)
            }
            "pow" => {
                arity(2, 2)?;
                let a = self.ideal(&args[0])?;
                let k = self.int_arg(&args[1])?;
                Ok(Value::Ideal(self.kernel(e, a.power(k))?))
            }
            "symb" | "msymb" => {
                if name == "symb" {
                    arity(2, 3)?;
                } else {
                    arity(2, 2)?;
                }
                let a = self.ideal(&args[0])?;
                let s = self.int_arg(&args[1])?;
                let mode = match args.get(2).map(|x| &x.kind) {
                    None if name == "msymb" => SymbolicMode::Min,
                    None => SymbolicMode::Ass,
                    Some(ExprKind::Word(w)) if w == "ass" => SymbolicMode::Ass,
                    Some(ExprKind::Word(w)) if w == "min" => SymbolicMode::Min,
                    Some(_) => {
                        return Err(LangError::arity(
                            self.p,
                            &args[2],
                            "mode must be `ass` or `min`",
                        ))
                    }
                };
                Ok(Value::Ideal(self.kernel(e, symbolic_power(&a, s, mode))?))
            }
            "fiber" => {
                arity(2, 2)?;
                let a = self.ideal(&args[0])?;
                let b = self.ideal(&args[1])?;
                let inst = self.kernel(e, make_fiber_in(self.ring(), &a, &b))?;
                Ok(Value::Ideal(inst.f))
            }
            _ => Err(LangError::unknown(&self.p.text, e.span.start, name)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::parse_program;
    use super::*;

    fn run(text: &str) -> Value {
        evaluate(&parse_program(text).unwrap(), FieldChar::new(2).unwrap()).unwrap()
    }

    fn ideal(text: &str) -> String {
        match run(text) {
            Value::Ideal(a) => a.to_string(),
            v => panic!("not an ideal: {v:?}"),
        }
    }

    #[test]
    fn fiber_of_squares() {
        assert_eq!(
            ideal("ring T=[x | y]; fiber((x^2),(y^2))"),
            "(x^2, x*y, y^2)"
        );
    }

    #[test]
    fn arithmetic() {
        assert_eq!(ideal("ring R=[x y]; (x^2, x*y) : (x)"), "(x, y)");
        assert_eq!(ideal("ring R=[x y]; (x) & (y)"), "(x*y)");
        assert_eq!(ideal("ring R=[x y]; pow((x, y), 0)"), "(1)");
        assert_eq!(ideal("ring R=[x y]; (x*x)"), "(x^2)");
        assert_eq!(ideal("ring R=[x y]; (0) + (1)"), "(1)");
        assert_eq!(ideal("ring R=[x y]; I = (x, y); I^2"), "(x^2, x*y, y^2)");
    }

    #[test]
    fn symbolic_and_invariants() {
        let t = "ring R=[x y z]; I = (x*y, x*z, y*z);";
        let s = ideal(&format!("{t} symb(I, 2, ass)"));
        assert!(s.contains("x*y*z"), "{s}");
        assert_eq!(run(&format!("{t} reg(I)")), Value::Int(Some(2)));
        assert_eq!(run(&format!("{t} depth(I)")), Value::Int(Some(1)));
        assert_eq!(run("ring R=[x y]; reg((0))"), Value::Int(None));
        let Value::Primes { primes, .. } = run(&format!("{t} min(I)")) else {
            panic!()
        };
        assert_eq!(primes.len(), 3);
        let Value::Components(c) = run("ring R=[x y]; decomp((x^2, x*y))") else {
            panic!()
        };
        assert_eq!(c.len(), 2);
    }

    #[test]
    fn errors_carry_the_expression() {
        let p = parse_program("ring R=[x y];\nsymb((0), 2)").unwrap();
        let e = evaluate(&p, FieldChar::new(2).unwrap()).unwrap_err();
        assert!(
            matches!(&e, LangError::Eval { line: 2, expr, .. } if expr == "symb((0), 2)"),
            "{e}"
        );
        let p = parse_program("ring R=[x y]; pow((x))").unwrap();
        assert!(matches!(
            evaluate(&p, FieldChar::new(2).unwrap()),
            Err(LangError::Arity { .. })
        ));
        let p = parse_program("ring R=[x y]; reg(reg((x)))").unwrap();
        assert!(matches!(
            evaluate(&p, FieldChar::new(2).unwrap()),
            Err(LangError::Arity { .. })
        ));
        let p = parse_program("ring R=[x y]; fiber((x), (y))").unwrap();
        assert!(evaluate(&p, FieldChar::new(2).unwrap()).is_err());
    }
}
