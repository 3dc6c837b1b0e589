//! Terms, ground terms and ground atoms.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::signature::Signature;

/// A function variable `f^n` (second-order). Identity is name plus arity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FunVar {
    pub name: String,
    pub arity: usize,
}

impl FunVar {
    pub fn new(name: impl Into<String>, arity: usize) -> Self {
        FunVar { name: name.into(), arity }
    }
}

impl fmt::Display for FunVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.name, self.arity)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    /// Object variable.
    Var(String),
    /// Function constant applied to arguments; object constants have none.
    App(String, Vec<Term>),
    /// Function variable applied to arguments.
    FunVar(FunVar, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn constant(name: impl Into<String>) -> Self {
        Term::App(name.into(), Vec::new())
    }

    pub fn app(name: impl Into<String>, args: Vec<Term>) -> Self {
        Term::App(name.into(), args)
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) | Term::FunVar(..) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    pub fn to_ground(&self) -> Option<GroundTerm> {
        match self {
            Term::App(head, args) => Some(GroundTerm {
                head: head.clone(),
                args: args.iter().map(Term::to_ground).collect::<Option<_>>()?,
            }),
            _ => None,
        }
    }

    /// True iff the object variable `v` occurs in the term.
    pub fn contains_var(&self, v: &str) -> bool {
        match self {
            Term::Var(x) => x == v,
            Term::App(_, args) | Term::FunVar(_, args) => args.iter().any(|a| a.contains_var(v)),
        }
    }

    pub fn contains_fun_var(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::FunVar(..) => true,
            Term::App(_, args) => args.iter().any(Term::contains_fun_var),
        }
    }

    /// Nesting depth of function applications; variables and constants are 0.
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) | Term::FunVar(_, args) => {
                args.iter().map(|a| a.depth() + 1).max().unwrap_or(0)
            }
        }
    }

    /// Checks arities against the signature. Function variables must have
    /// positive arity matching their argument count.
    pub fn well_formed(&self, sig: &Signature) -> Result<(), String> {
        match self {
            Term::Var(_) => Ok(()),
            Term::App(f, args) => {
                match sig.function_arity(f) {
                    None => return Err(alloc::format!("unknown function constant `{f}`")),
                    Some(n) if n != args.len() => {
                        return Err(alloc::format!("`{f}` expects {n} arguments, got {}", args.len()))
                    }
                    _ => {}
                }
                args.iter().try_for_each(|a| a.well_formed(sig))
            }
            Term::FunVar(v, args) => {
                if v.arity == 0 || v.arity != args.len() {
                    return Err(alloc::format!("function variable `{v}` applied to {} arguments", args.len()));
                }
                args.iter().try_for_each(|a| a.well_formed(sig))
            }
        }
    }
}

impl From<&GroundTerm> for Term {
    fn from(g: &GroundTerm) -> Self {
        Term::App(g.head.clone(), g.args.iter().map(Term::from).collect())
    }
}

/// A variable-free term over a signature.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundTerm {
    pub head: String,
    pub args: Vec<GroundTerm>,
}

impl GroundTerm {
    pub fn constant(name: impl Into<String>) -> Self {
        GroundTerm { head: name.into(), args: Vec::new() }
    }

    pub fn app(head: impl Into<String>, args: Vec<GroundTerm>) -> Self {
        GroundTerm { head: head.into(), args }
    }

    pub fn depth(&self) -> usize {
        self.args.iter().map(|a| a.depth() + 1).max().unwrap_or(0)
    }
}

impl fmt::Display for GroundTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.head)?;
        write_args(f, &self.args)
    }
}

/// A closed atomic formula without equality: predicate constant applied to
/// ground terms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundAtom {
    pub pred: String,
    pub args: Vec<GroundTerm>,
}

impl GroundAtom {
    pub fn new(pred: impl Into<String>, args: Vec<GroundTerm>) -> Self {
        GroundAtom { pred: pred.into(), args }
    }
}

impl fmt::Display for GroundAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pred)?;
        write_args(f, &self.args)
    }
}

fn write_args(f: &mut fmt::Formatter<'_>, args: &[GroundTerm]) -> fmt::Result {
    if args.is_empty() {
        return Ok(());
    }
    f.write_str("(")?;
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{a}")?;
    }
    f.write_str(")")
}

/// All ground terms of depth at most `depth`, ordered by depth and then
/// lexicographically. With a nullary-only signature this is the whole
/// Herbrand universe for any depth.
pub fn ground_terms_up_to(sig: &Signature, depth: usize) -> Vec<GroundTerm> {
    let mut layers: Vec<Vec<GroundTerm>> = Vec::new();
    let mut all: Vec<GroundTerm> = sig.object_constants().into_iter().map(GroundTerm::constant).collect();
    layers.push(all.clone());
    for d in 1..=depth {
        let mut layer = Vec::new();
        for (f, n) in sig.functions().filter(|&(_, n)| n > 0) {
            // tuples over `all` with at least one argument of depth d-1
            for tuple in tuples(&all, n) {
                if tuple.iter().any(|t| t.depth() == d - 1) {
                    layer.push(GroundTerm::app(f, tuple));
                }
            }
        }
        layer.sort();
        if layer.is_empty() {
            break;
        }
        all.extend(layer.iter().cloned());
        layers.push(layer);
    }
    all
}

/// All `n`-tuples over `items` in lexicographic (odometer) order.
pub fn tuples<T: Clone>(items: &[T], n: usize) -> Vec<Vec<T>> {
    let mut out = Vec::new();
    if items.is_empty() && n > 0 {
        return out;
    }
    let mut idx = alloc::vec![0usize; n];
    loop {
        out.push(idx.iter().map(|&i| items[i].clone()).collect());
        let mut k = n;
        loop {
            if k == 0 {
                return out;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < items.len() {
                break;
            }
            idx[k] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use alloc::vec;

    fn sig_as() -> Signature {
        Signature::new(vec![("a".to_string(), 0), ("s".to_string(), 1)], vec![], vec![]).unwrap()
    }

    #[test]
    fn bounded_universe_counts() {
        let u = ground_terms_up_to(&sig_as(), 3);
        let shown: Vec<_> = u.iter().map(|t| t.to_string()).collect();
        assert_eq!(shown, vec!["a", "s(a)", "s(s(a))", "s(s(s(a)))"]);
    }

    #[test]
    fn bounded_universe_binary() {
        let sig = Signature::new(
            vec![("a".to_string(), 0), ("b".to_string(), 0), ("g".to_string(), 2)],
            vec![],
            vec![],
        )
        .unwrap();
        // depth 0: 2 terms; depth 1: 2*2 = 4 applications
        assert_eq!(ground_terms_up_to(&sig, 1).len(), 6);
        // depth 2: 6*6 - 2*2 = 32 new applications
        assert_eq!(ground_terms_up_to(&sig, 2).len(), 38);
    }

    #[test]
    fn tuples_odometer() {
        let t = tuples(&[0, 1], 2);
        assert_eq!(t, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(tuples(&[0, 1, 2], 0), vec![Vec::<i32>::new()]);
        assert!(tuples::<i32>(&[], 1).is_empty());
    }

    #[test]
    fn ground_conversion() {
        let t = Term::app("s", vec![Term::constant("a")]);
        assert_eq!(t.to_ground().unwrap().to_string(), "s(a)");
        assert!(Term::app("s", vec![Term::var("x")]).to_ground().is_none());
        assert_eq!(t.depth(), 1);
    }
}
