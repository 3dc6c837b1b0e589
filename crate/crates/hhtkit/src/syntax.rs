//! Lexer and recursive-descent parser for the ASCII formula language.
//!
//! Precedence, tightest first: `not` and quantifiers, `&`, `|`, `->`
//! (right associative), `<->`. An identifier is a constant if the
//! signature declares it and a variable otherwise.

use std::fmt;

use hhtkit_core::{Binder, Formula, FunVar, Pred, PredVar, Prop, Quantifier, Signature, Term, Var};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Num(usize),
    Sym(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Num(n) => write!(f, "`{n}`"),
            Tok::Sym(s) => write!(f, "`{s}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

const SYMBOLS: &[&str] = &[
    "<->", ":=", "->", "!=", "(", ")", "{", "}", "[", "]", ",", ";", ":", ".", "&", "|", "=", "/", "^", "+",
];

const RESERVED: &[&str] = &["forall", "exists", "not", "top", "bot"];

fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let is_start = |c: char| c.is_ascii_alphabetic() || c == '_';
    let is_cont = |c: char| c.is_ascii_alphanumeric() || c == '_' || c == '\'';
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let (start_line, start_col) = (line, col);
        let tok = if is_start(c) {
            let mut s = String::new();
            while i < chars.len() {
                let d = chars[i];
                // `-` joins words (`gen-all`, `and-el`) but never starts `->`
                let dash = d == '-' && chars.get(i + 1).is_some_and(|&e| e.is_ascii_alphabetic());
                if !(is_cont(d) || dash) {
                    break;
                }
                s.push(d);
                i += 1;
            }
            col += s.chars().count();
            Tok::Ident(s)
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while i < chars.len() && chars[i].is_ascii_digit() {
                s.push(chars[i]);
                i += 1;
            }
            col += s.len();
            let n = s.parse().map_err(|_| ParseError { line, col: start_col, message: "number too large".into() })?;
            Tok::Num(n)
        } else {
            let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
            let sym = SYMBOLS.iter().find(|s| rest.starts_with(**s)).ok_or_else(|| ParseError {
                line,
                col,
                message: format!("unexpected character `{c}`"),
            })?;
            i += sym.len();
            col += sym.len();
            Tok::Sym(sym)
        };
        out.push(Token { tok, line: start_line, col: start_col });
    }
    out.push(Token { tok: Tok::Eof, line, col });
    Ok(out)
}

pub struct Parser {
    toks: Vec<Token>,
    pos: usize,
    /// Second-order variables bound by enclosing quantifiers.
    scope: Vec<Var>,
}

type Res<T> = Result<T, ParseError>;

impl Parser {
    pub fn new(src: &str) -> Res<Self> {
        Ok(Parser { toks: lex(src)?, pos: 0, scope: Vec::new() })
    }

    pub fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    /// Error located at the current token.
    pub fn error(&self, message: impl Into<String>) -> ParseError {
        let t = &self.toks[self.pos];
        ParseError { line: t.line, col: t.col, message: message.into() }
    }

    /// Position of the current token, for errors raised after parsing.
    pub fn mark(&self) -> (usize, usize) {
        let t = &self.toks[self.pos];
        (t.line, t.col)
    }

    fn unexpected<T>(&self, wanted: &str) -> Res<T> {
        Err(self.error(format!("expected {wanted}, found {}", self.peek())))
    }

    pub fn at_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Sym(t) if *t == s)
    }

    pub fn at_word(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Ident(t) if t == w)
    }

    pub fn eat_sym(&mut self, s: &str) -> bool {
        let hit = self.at_sym(s);
        if hit {
            self.bump();
        }
        hit
    }

    pub fn eat_word(&mut self, w: &str) -> bool {
        let hit = self.at_word(w);
        if hit {
            self.bump();
        }
        hit
    }

    pub fn expect_sym(&mut self, s: &str) -> Res<()> {
        if self.eat_sym(s) {
            Ok(())
        } else {
            self.unexpected(&format!("`{s}`"))
        }
    }

    pub fn expect_word(&mut self, w: &str) -> Res<()> {
        if self.eat_word(w) {
            Ok(())
        } else {
            self.unexpected(&format!("`{w}`"))
        }
    }

    pub fn ident(&mut self) -> Res<String> {
        match self.peek().clone() {
            Tok::Ident(s) if !RESERVED.contains(&s.as_str()) => {
                self.bump();
                Ok(s)
            }
            _ => self.unexpected("an identifier"),
        }
    }

    pub fn number(&mut self) -> Res<usize> {
        match *self.peek() {
            Tok::Num(n) => {
                self.bump();
                Ok(n)
            }
            _ => self.unexpected("a number"),
        }
    }

    pub fn at_eof(&self) -> bool {
        *self.peek() == Tok::Eof
    }

    pub fn expect_eof(&mut self) -> Res<()> {
        if self.at_eof() {
            Ok(())
        } else {
            self.unexpected("end of input")
        }
    }

    // ---- signature block ----

    /// `const a, b.  fn s/1.  pred P/1, Q/0.  restrictor R/1.` in any order
    /// and number. Restrictors are unary predicates and are not repeated
    /// under `pred`.
    pub fn signature(&mut self) -> Res<Signature> {
        let (line, col) = self.mark();
        let mut functions = Vec::new();
        let mut predicates = Vec::new();
        let mut restrictors = Vec::new();
        loop {
            let kw = match self.peek() {
                Tok::Ident(w) if ["const", "fn", "pred", "restrictor"].contains(&w.as_str()) => w.clone(),
                _ => break,
            };
            self.bump();
            loop {
                let name = self.ident()?;
                match kw.as_str() {
                    "const" => functions.push((name, 0)),
                    "fn" => {
                        self.expect_sym("/")?;
                        functions.push((name, self.number()?));
                    }
                    "pred" => {
                        self.expect_sym("/")?;
                        predicates.push((name, self.number()?));
                    }
                    _ => {
                        if self.eat_sym("/") && self.number()? != 1 {
                            return Err(self.error(format!("restrictor `{name}` must have arity 1")));
                        }
                        predicates.push((name.clone(), 1));
                        restrictors.push(name);
                    }
                }
                if !self.eat_sym(",") {
                    break;
                }
            }
            self.expect_sym(".")?;
        }
        Signature::new(functions, predicates, restrictors).map_err(|e| ParseError { line, col, message: e.to_string() })
    }

    // ---- first- and second-order formulas ----

    pub fn formula(&mut self, sig: &Signature) -> Res<Formula> {
        let l = self.imp(sig)?;
        if self.eat_sym("<->") {
            let r = self.imp(sig)?;
            return Ok(Formula::iff(l, r));
        }
        Ok(l)
    }

    fn imp(&mut self, sig: &Signature) -> Res<Formula> {
        let l = self.or(sig)?;
        if self.eat_sym("->") {
            let r = self.imp(sig)?;
            return Ok(Formula::imp(l, r));
        }
        Ok(l)
    }

    fn or(&mut self, sig: &Signature) -> Res<Formula> {
        let mut l = self.and(sig)?;
        while self.eat_sym("|") {
            l = Formula::or(l, self.and(sig)?);
        }
        Ok(l)
    }

    fn and(&mut self, sig: &Signature) -> Res<Formula> {
        let mut l = self.unary(sig)?;
        while self.eat_sym("&") {
            l = Formula::and(l, self.unary(sig)?);
        }
        Ok(l)
    }

    fn unary(&mut self, sig: &Signature) -> Res<Formula> {
        if self.eat_word("not") {
            return Ok(Formula::not(self.unary(sig)?));
        }
        let q = if self.eat_word("forall") {
            Quantifier::Forall
        } else if self.eat_word("exists") {
            Quantifier::Exists
        } else {
            return self.primary(sig);
        };
        let binder = self.binder(sig)?;
        let vs = binder.bound_vars();
        let n = vs.len();
        self.scope.extend(vs);
        let body = self.unary(sig);
        self.scope.truncate(self.scope.len() - n);
        Ok(Formula::quant(q, binder, body?))
    }

    fn bindable(&mut self, sig: &Signature) -> Res<String> {
        let name = self.ident()?;
        if sig.declares(&name) {
            self.pos -= 1;
            return Err(self.error(format!("cannot bind the constant `{name}`")));
        }
        Ok(name)
    }

    fn binder(&mut self, sig: &Signature) -> Res<Binder> {
        if self.eat_sym("(") {
            let mut vs: Vec<(String, String)> = Vec::new();
            loop {
                let x = self.bindable(sig)?;
                if vs.iter().any(|(y, _)| *y == x) {
                    return Err(self.error(format!("variable `{x}` repeated in generalized variable")));
                }
                self.expect_sym(":")?;
                let r = self.ident()?;
                if !sig.is_restrictor(&r) {
                    self.pos -= 1;
                    return Err(self.error(format!("`{r}` is not a restrictor")));
                }
                vs.push((x, r));
                if !self.eat_sym(",") {
                    break;
                }
            }
            self.expect_sym(")")?;
            return Ok(Binder::Restricted(vs));
        }
        let name = self.bindable(sig)?;
        if self.eat_sym("/") {
            return Ok(Binder::Pred(PredVar::new(name, self.number()?)));
        }
        if self.eat_sym("^") {
            let n = self.number()?;
            if n == 0 {
                return Err(self.error("function variables have positive arity"));
            }
            return Ok(Binder::Fun(FunVar::new(name, n)));
        }
        Ok(Binder::Object(name))
    }

    fn primary(&mut self, sig: &Signature) -> Res<Formula> {
        if self.eat_word("top") {
            return Ok(Formula::top());
        }
        if self.eat_word("bot") {
            return Ok(Formula::Bot);
        }
        if self.eat_sym("(") {
            let f = self.formula(sig)?;
            self.expect_sym(")")?;
            return Ok(f);
        }
        let Tok::Ident(name) = self.peek().clone() else {
            return self.unexpected("a formula");
        };
        if let Some(n) = sig.predicate_arity(&name) {
            self.bump();
            let args = self.args(sig, &name, n)?;
            return Ok(Formula::atom(name, args));
        }
        if *self.peek_at(1) == Tok::Sym("/") {
            self.bump();
            self.bump();
            let p = PredVar::new(name.clone(), self.number()?);
            let args = self.args(sig, &name, p.arity)?;
            return Ok(Formula::pred_var(p, args));
        }
        let arities = self.bound_arities(&name, true);
        if !arities.is_empty() {
            self.bump();
            let args = self.bound_args(sig, &name, &arities)?;
            return Ok(Formula::Atom(Pred::Var(PredVar::new(name, args.len())), args));
        }
        let l = self.term(sig)?;
        if self.eat_sym("=") {
            return Ok(Formula::eq(l, self.term(sig)?));
        }
        if self.eat_sym("!=") {
            return Ok(Formula::neq(l, self.term(sig)?));
        }
        self.unexpected("`=` or `!=` after a term")
    }

    /// An argument list for a symbol of arity `n`; omitted when `n` is 0.
    fn args(&mut self, sig: &Signature, head: &str, n: usize) -> Res<Vec<Term>> {
        let mut args = Vec::new();
        if self.eat_sym("(") {
            loop {
                args.push(self.term(sig)?);
                if !self.eat_sym(",") {
                    break;
                }
            }
            self.expect_sym(")")?;
        }
        if args.len() != n {
            self.pos -= 1;
            return Err(self.error(format!("`{head}` takes {n} argument(s), found {}", args.len())));
        }
        Ok(args)
    }

    /// Arities of the bound second-order variables called `name`, innermost
    /// first. Variables of different arity are distinct even when they
    /// share a name, so the argument count picks one.
    fn bound_arities(&self, name: &str, pred: bool) -> Vec<usize> {
        self.scope
            .iter()
            .rev()
            .filter_map(|v| match v {
                Var::Pred(p) if pred && p.name == name => Some(p.arity),
                Var::Fun(g) if !pred && g.name == name => Some(g.arity),
                _ => None,
            })
            .collect()
    }

    fn bound_args(&mut self, sig: &Signature, name: &str, arities: &[usize]) -> Res<Vec<Term>> {
        let n = if self.at_sym("(") {
            let mark = self.pos;
            let mut depth = 0usize;
            let mut n = 1;
            loop {
                match self.peek() {
                    Tok::Sym("(") => depth += 1,
                    Tok::Sym(")") => {
                        depth -= 1;
                        if depth == 0 {
                            break;
                        }
                    }
                    Tok::Sym(",") if depth == 1 => n += 1,
                    Tok::Eof => break,
                    _ => {}
                }
                self.bump();
            }
            self.pos = mark;
            n
        } else {
            0
        };
        let arity = if arities.contains(&n) { n } else { arities[0] };
        self.args(sig, name, arity)
    }

    pub fn term(&mut self, sig: &Signature) -> Res<Term> {
        let name = self.ident()?;
        if let Some(n) = sig.function_arity(&name) {
            let args = self.args(sig, &name, n)?;
            return Ok(Term::app(name, args));
        }
        if self.eat_sym("^") {
            let g = FunVar::new(name.clone(), self.number()?);
            let args = self.args(sig, &name, g.arity)?;
            return Ok(Term::FunVar(g, args));
        }
        let arities = self.bound_arities(&name, false);
        if !arities.is_empty() {
            let args = self.bound_args(sig, &name, &arities)?;
            return Ok(Term::FunVar(FunVar::new(name, args.len()), args));
        }
        if self.at_sym("(") {
            self.pos -= 1;
            return Err(self.error(format!("unknown function `{name}`")));
        }
        Ok(Term::var(name))
    }

    /// Makes a second-order variable visible to bare-name references, as
    /// if bound by an enclosing quantifier.
    pub fn bind(&mut self, v: Var) {
        self.scope.push(v);
    }

    pub fn clear_scope(&mut self) {
        self.scope.clear();
    }

    // ---- infinitary propositional formulas ----

    pub fn prop(&mut self) -> Res<Prop> {
        let l = self.prop_imp()?;
        if self.eat_sym("<->") {
            return Ok(Prop::iff(l, self.prop_imp()?));
        }
        Ok(l)
    }

    fn prop_imp(&mut self) -> Res<Prop> {
        let l = self.prop_or()?;
        if self.eat_sym("->") {
            return Ok(Prop::imp(l, self.prop_imp()?));
        }
        Ok(l)
    }

    fn prop_or(&mut self) -> Res<Prop> {
        let mut l = self.prop_and()?;
        while self.eat_sym("|") {
            l = Prop::or(l, self.prop_and()?);
        }
        Ok(l)
    }

    fn prop_and(&mut self) -> Res<Prop> {
        let mut l = self.prop_unary()?;
        while self.eat_sym("&") {
            l = Prop::and(l, self.prop_unary()?);
        }
        Ok(l)
    }

    fn prop_unary(&mut self) -> Res<Prop> {
        if self.eat_word("not") {
            return Ok(Prop::not(self.prop_unary()?));
        }
        if self.eat_word("top") {
            return Ok(Prop::top());
        }
        if self.eat_word("bot") {
            return Ok(Prop::bot());
        }
        if self.eat_sym("(") {
            let p = self.prop()?;
            self.expect_sym(")")?;
            return Ok(p);
        }
        let conj = self.at_word("And");
        if (conj || self.at_word("Or")) && *self.peek_at(1) == Tok::Sym("{") {
            self.bump();
            self.bump();
            let mut items = Vec::new();
            if !self.eat_sym("}") {
                loop {
                    items.push(self.prop()?);
                    if !(self.eat_sym(";") || self.eat_sym(",")) {
                        break;
                    }
                }
                self.expect_sym("}")?;
            }
            return Ok(if conj { Prop::and_of(items) } else { Prop::or_of(items) });
        }
        Ok(Prop::atom(self.ident()?))
    }
}

pub fn parse_signature(src: &str) -> Result<Signature, ParseError> {
    let mut p = Parser::new(src)?;
    let sig = p.signature()?;
    p.expect_eof()?;
    Ok(sig)
}

pub fn parse_formula(src: &str, sig: &Signature) -> Result<Formula, ParseError> {
    let mut p = Parser::new(src)?;
    let f = p.formula(sig)?;
    p.expect_eof()?;
    Ok(f)
}

pub fn parse_term(src: &str, sig: &Signature) -> Result<Term, ParseError> {
    let mut p = Parser::new(src)?;
    let t = p.term(sig)?;
    p.expect_eof()?;
    Ok(t)
}

pub fn parse_prop(src: &str) -> Result<Prop, ParseError> {
    let mut p = Parser::new(src)?;
    let f = p.prop()?;
    p.expect_eof()?;
    Ok(f)
}

/// The signature block that [`Parser::signature`] reads back.
pub fn write_signature(sig: &Signature) -> String {
    let mut out = String::new();
    let consts = sig.object_constants();
    if !consts.is_empty() {
        out += &format!("const {}.\n", consts.join(", "));
    }
    let list = |items: Vec<String>| items.join(", ");
    let fns: Vec<String> = sig.functions().filter(|&(_, n)| n > 0).map(|(f, n)| format!("{f}/{n}")).collect();
    if !fns.is_empty() {
        out += &format!("fn {}.\n", list(fns));
    }
    let preds: Vec<String> =
        sig.predicates().filter(|(p, _)| !sig.is_restrictor(p)).map(|(p, n)| format!("{p}/{n}")).collect();
    if !preds.is_empty() {
        out += &format!("pred {}.\n", list(preds));
    }
    let rs: Vec<String> = sig.restrictors().map(|r| format!("{r}/1")).collect();
    if !rs.is_empty() {
        out += &format!("restrictor {}.\n", list(rs));
    }
    out
}
