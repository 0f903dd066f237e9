//! Tokenizer and recursive-descent parser.

use std::collections::HashSet;
use std::sync::Arc;

use super::{Binding, Call, Expr, ExprKind, LangError, Op, Program, Span};
use crate::ring::Ring;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(u64),
    Sym(char),
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    start: usize,
    end: usize,
}

const SYMBOLS: &str = "=[]|;(),+*&:^";

fn tokenize(text: &str) -> Result<Vec<Token>, LangError> {
    let mut out = Vec::new();
    let mut it = text.char_indices().peekable();
    while let Some(&(i, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
        } else if c == '#' {
            while it.peek().is_some_and(|&(_, c)| c != '\n') {
                it.next();
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut end = i;
            while let Some(&(j, d)) = it.peek() {
                if d.is_ascii_alphanumeric() || d == '_' || d == '\'' {
                    end = j + d.len_utf8();
                    it.next();
                } else {
                    break;
                }
            }
            out.push(Token {
                tok: Tok::Ident(text[i..end].to_string()),
                start: i,
                end,
            });
        } else if c.is_ascii_digit() {
            let mut end = i;
            while let Some(&(j, d)) = it.peek() {
                if d.is_ascii_digit() {
                    end = j + 1;
                    it.next();
                } else {
                    break;
                }
            }
            let v = text[i..end]
                .parse()
                .map_err(|_| LangError::syntax(text, i, "integer literal too large"))?;
            out.push(Token {
                tok: Tok::Int(v),
                start: i,
                end,
            });
        } else if SYMBOLS.contains(c) {
            it.next();
            out.push(Token {
                tok: Tok::Sym(c),
                start: i,
                end: i + 1,
            });
        } else {
            return Err(LangError::syntax(
                text,
                i,
                format!("unexpected character `{c}`"),
            ));
        }
    }
    out.push(Token {
        tok: Tok::End,
        start: text.len(),
        end: text.len(),
    });
    Ok(out)
}

pub(super) const FUNCTIONS: [&str; 11] = [
    "rad", "symb", "msymb", "fiber", "pow", "reg", "depth", "betti", "ass", "min", "decomp",
];

struct Parser<'a> {
    text: &'a str,
    toks: Vec<Token>,
    pos: usize,
    vars: HashSet<String>,
    names: HashSet<String>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn here(&self) -> usize {
        self.toks[self.pos].start
    }

    fn last_end(&self) -> usize {
        self.toks[self.pos.saturating_sub(1)].end
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, msg: impl Into<String>) -> LangError {
        LangError::syntax(self.text, self.here(), msg)
    }

    fn describe(&self) -> String {
        match self.peek() {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Int(v) => format!("`{v}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::End => "end of input".into(),
        }
    }

    fn expect(&mut self, c: char) -> Result<(), LangError> {
        if self.peek() == &Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`, found {}", self.describe())))
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == &Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, LangError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.err(format!("expected {what}, found {}", self.describe()))),
        }
    }

    fn int(&mut self) -> Result<u64, LangError> {
        match *self.peek() {
            Tok::Int(v) => {
                self.bump();
                Ok(v)
            }
            _ => Err(self.err(format!("expected an integer, found {}", self.describe()))),
        }
    }

    fn ring_decl(&mut self) -> Result<(String, Arc<Ring>), LangError> {
        let start = self.here();
        match self.peek() {
            Tok::Ident(k) if k == "ring" => {
                self.bump();
            }
            _ => {
                return Err(self.err(format!(
                    "a program starts with `ring`, found {}",
                    self.describe()
                )))
            }
        }
        let name = self.ident("a ring name")?;
        self.expect('=')?;
        self.expect('[')?;
        let mut blocks = vec![Vec::new()];
        loop {
            match self.peek().clone() {
                Tok::Ident(v) => {
                    self.bump();
                    blocks.last_mut().unwrap().push(v);
                }
                Tok::Sym('|') => {
                    self.bump();
                    blocks.push(Vec::new());
                }
                Tok::Sym(']') => {
                    self.bump();
                    break;
                }
                _ => {
                    return Err(self.err(format!(
                        "expected a variable, `|` or `]`, found {}",
                        self.describe()
                    )))
                }
            }
        }
        if blocks.iter().any(|b| b.is_empty()) {
            return Err(LangError::syntax(self.text, start, "empty variable block"));
        }
        self.expect(';')?;
        let named = blocks
            .into_iter()
            .enumerate()
            .map(|(k, b)| (format!("B{k}"), b))
            .collect();
        let ring = Ring::with_blocks(named)
            .map_err(|e| LangError::syntax(self.text, start, e.to_string()))?;
        for v in ring.vars() {
            if FUNCTIONS.contains(&v.as_str()) || v == "ring" {
                return Err(LangError::syntax(
                    self.text,
                    start,
                    format!("`{v}` is reserved"),
                ));
            }
        }
        self.vars = ring.vars().iter().cloned().collect();
        Ok((name, ring))
    }

    fn program(mut self) -> Result<Program, LangError> {
        let (ring_name, ring) = self.ring_decl()?;
        let mut bindings = Vec::new();
        // a binding is `name = ...`; anything else starts the final expression
        while matches!(self.peek(), Tok::Ident(_)) && self.peek_at(1) == &Tok::Sym('=') {
            let start = self.here();
            let name = self.ident("a name")?;
            if self.vars.contains(&name) {
                return Err(LangError::syntax(
                    self.text,
                    start,
                    format!("`{name}` is a ring variable"),
                ));
            }
            if FUNCTIONS.contains(&name.as_str()) {
                return Err(LangError::syntax(
                    self.text,
                    start,
                    format!("`{name}` is a function name"),
                ));
            }
            self.expect('=')?;
            let expr = self.expr()?;
            self.expect(';')?;
            self.names.insert(name.clone());
            bindings.push(Binding { name, expr });
        }
        let result = self.expr()?;
        self.eat(';');
        if self.peek() != &Tok::End {
            return Err(self.err(format!(
                "expected end of program, found {}",
                self.describe()
            )));
        }
        Ok(Program {
            text: self.text.to_string(),
            ring_name,
            ring,
            bindings,
            result,
        })
    }

    fn node(&self, start: usize, kind: ExprKind) -> Expr {
        Expr {
            kind,
            span: Span {
                start,
                end: self.last_end(),
            },
        }
    }

    fn binary(
        &mut self,
        ops: &[(char, Op)],
        next: fn(&mut Self) -> Result<Expr, LangError>,
    ) -> Result<Expr, LangError> {
        let start = self.here();
        let mut lhs = next(self)?;
        'outer: loop {
            for &(c, op) in ops {
                if self.eat(c) {
                    let rhs = next(self)?;
                    lhs = self.node(start, ExprKind::Binary(op, Box::new(lhs), Box::new(rhs)));
                    continue 'outer;
                }
            }
            return Ok(lhs);
        }
    }

    // precedence, loosest first: `+`, then `&` and `:`, then `*`, then `^`
    fn expr(&mut self) -> Result<Expr, LangError> {
        self.binary(&[('+', Op::Sum)], Self::meet)
    }

    fn meet(&mut self) -> Result<Expr, LangError> {
        self.binary(&[('&', Op::Intersect), (':', Op::Colon)], Self::product)
    }

    fn product(&mut self) -> Result<Expr, LangError> {
        self.binary(&[('*', Op::Product)], Self::power)
    }

    fn power(&mut self) -> Result<Expr, LangError> {
        let start = self.here();
        let mut base = self.atom()?;
        while self.eat('^') {
            let k = self.int()?;
            let k = u32::try_from(k).map_err(|_| self.err("exponent too large"))?;
            base = self.node(start, ExprKind::Power(Box::new(base), k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr, LangError> {
        let start = self.here();
        match self.peek().clone() {
            Tok::Sym('(') => {
                if self.literal_ahead() {
                    self.literal()
                } else {
                    self.bump();
                    let e = self.expr()?;
                    self.expect(')')?;
                    Ok(e)
                }
            }
            Tok::Ident(name) => {
                self.bump();
                if self.peek() == &Tok::Sym('(') && FUNCTIONS.contains(&name.as_str()) {
                    return self.call(start, name);
                }
                if FUNCTIONS.contains(&name.as_str()) {
                    return Err(LangError::syntax(
                        self.text,
                        start,
                        format!("`{name}` needs arguments"),
                    ));
                }
                if self.vars.contains(&name) {
                    return Err(LangError::syntax(
                        self.text,
                        start,
                        format!("`{name}` is a variable; write the ideal as ({name})"),
                    ));
                }
                if !self.names.contains(&name) {
                    return Err(LangError::unknown(self.text, start, &name));
                }
                Ok(self.node(start, ExprKind::Name(name)))
            }
            Tok::Int(_) => Err(self.err("integers only appear as exponents and arguments")),
            _ => Err(self.err(format!(
                "expected an ideal expression, found {}",
                self.describe()
            ))),
        }
    }

    /// `(` followed by a ring variable or by `0)` / `1)`.
    fn literal_ahead(&self) -> bool {
        match self.peek_at(1) {
            Tok::Ident(v) => self.vars.contains(v),
            Tok::Int(0 | 1) => self.peek_at(2) == &Tok::Sym(')'),
            _ => false,
        }
    }

    fn literal(&mut self) -> Result<Expr, LangError> {
        let start = self.here();
        self.expect('(')?;
        if let Tok::Int(v) = *self.peek() {
            self.bump();
            self.expect(')')?;
            return Ok(self.node(
                start,
                if v == 0 {
                    ExprKind::Zero
                } else {
                    ExprKind::Unit
                },
            ));
        }
        let mut gens = Vec::new();
        loop {
            let mut mono = Vec::new();
            loop {
                let at = self.here();
                let v = self.ident("a variable")?;
                if !self.vars.contains(&v) {
                    return Err(LangError::syntax(
                        self.text,
                        at,
                        format!("`{v}` is not a variable of the ring"),
                    ));
                }
                let e = if self.eat('^') { self.int()? } else { 1 };
                let e = u16::try_from(e).map_err(|_| self.err("exponent too large"))?;
                mono.push((v, e));
                if !self.eat('*') {
                    break;
                }
            }
            gens.push(mono);
            if self.eat(')') {
                break;
            }
            self.expect(',')?;
        }
        Ok(self.node(start, ExprKind::Literal(gens)))
    }

    fn call(&mut self, start: usize, name: String) -> Result<Expr, LangError> {
        self.expect('(')?;
        let mut args = Vec::new();
        if !self.eat(')') {
            loop {
                args.push(self.arg()?);
                if self.eat(')') {
                    break;
                }
                self.expect(',')?;
            }
        }
        Ok(self.node(start, ExprKind::Call(Call { name, args })))
    }

    fn arg(&mut self) -> Result<Expr, LangError> {
        let start = self.here();
        match self.peek().clone() {
            Tok::Int(v) => {
                self.bump();
                Ok(self.node(start, ExprKind::Int(v)))
            }
            Tok::Ident(w) if (w == "ass" || w == "min") && self.peek_at(1) != &Tok::Sym('(') => {
                self.bump();
                Ok(self.node(start, ExprKind::Word(w)))
            }
            _ => self.expr(),
        }
    }
}

pub fn parse_program(text: &str) -> Result<Program, LangError> {
    let p = Parser {
        text,
        toks: tokenize(text)?,
        pos: 0,
        vars: HashSet::new(),
        names: HashSet::new(),
    };
    p.program()
}
