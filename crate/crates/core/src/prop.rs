//! Finitely represented infinitary propositional formulas.
//!
//! Conjunctions and disjunctions are sets: children are deduplicated and
//! kept in a canonical order, so structurally equal families compare equal.
//! `⊤` is the empty conjunction and `⊥` the empty disjunction.

use alloc::boxed::Box;
use alloc::collections::BTreeSet;
use alloc::string::String;
use core::fmt;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Prop {
    Atom(String),
    And(BTreeSet<Prop>),
    Or(BTreeSet<Prop>),
    Imp(Box<Prop>, Box<Prop>),
}

impl Prop {
    pub fn atom(name: impl Into<String>) -> Self {
        Prop::Atom(name.into())
    }

    pub fn top() -> Self {
        Prop::And(BTreeSet::new())
    }

    pub fn bot() -> Self {
        Prop::Or(BTreeSet::new())
    }

    pub fn and_of(items: impl IntoIterator<Item = Prop>) -> Self {
        Prop::And(items.into_iter().collect())
    }

    pub fn or_of(items: impl IntoIterator<Item = Prop>) -> Self {
        Prop::Or(items.into_iter().collect())
    }

    /// Binary `{l, r}^∧`.
    pub fn and(l: Prop, r: Prop) -> Self {
        Prop::and_of([l, r])
    }

    pub fn or(l: Prop, r: Prop) -> Self {
        Prop::or_of([l, r])
    }

    pub fn imp(l: Prop, r: Prop) -> Self {
        Prop::Imp(Box::new(l), Box::new(r))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Prop) -> Self {
        Prop::imp(f, Prop::bot())
    }

    pub fn iff(l: Prop, r: Prop) -> Self {
        Prop::and(Prop::imp(l.clone(), r.clone()), Prop::imp(r, l))
    }

    pub fn is_top(&self) -> bool {
        matches!(self, Prop::And(s) if s.is_empty())
    }

    pub fn is_bot(&self) -> bool {
        matches!(self, Prop::Or(s) if s.is_empty())
    }

    /// Atoms have rank 0; a set or implication node has the least rank
    /// strictly above all of its children (so `⊤` and `⊥` have rank 0).
    pub fn rank(&self) -> usize {
        match self {
            Prop::Atom(_) => 0,
            Prop::And(s) | Prop::Or(s) => s.iter().map(|c| c.rank() + 1).max().unwrap_or(0),
            Prop::Imp(l, r) => 1 + l.rank().max(r.rank()),
        }
    }

    /// Atoms occurring in the formula, sorted.
    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Prop::Atom(a) => {
                if !out.contains(a) {
                    out.insert(a.clone());
                }
            }
            Prop::And(s) | Prop::Or(s) => s.iter().for_each(|c| c.collect_atoms(out)),
            Prop::Imp(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// Number of nodes in the tree representation.
    pub fn node_count(&self) -> usize {
        match self {
            Prop::Atom(_) => 1,
            Prop::And(s) | Prop::Or(s) => 1 + s.iter().map(Prop::node_count).sum::<usize>(),
            Prop::Imp(l, r) => 1 + l.node_count() + r.node_count(),
        }
    }
}

impl fmt::Display for Prop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_prop(f, self, false)
    }
}

/// `nested` is set where an implication needs parentheses (left of `->`).
fn write_prop(f: &mut fmt::Formatter<'_>, p: &Prop, nested: bool) -> fmt::Result {
    match p {
        Prop::Atom(a) => f.write_str(a),
        _ if p.is_top() => f.write_str("top"),
        _ if p.is_bot() => f.write_str("bot"),
        Prop::And(s) | Prop::Or(s) => {
            f.write_str(if matches!(p, Prop::And(_)) { "And{" } else { "Or{" })?;
            for (i, c) in s.iter().enumerate() {
                if i > 0 {
                    f.write_str("; ")?;
                }
                write_prop(f, c, false)?;
            }
            f.write_str("}")
        }
        Prop::Imp(l, r) if r.is_bot() => {
            f.write_str("not ")?;
            write_prop(f, l, true)
        }
        Prop::Imp(l, r) => {
            if nested {
                f.write_str("(")?;
            }
            write_prop(f, l, true)?;
            f.write_str(" -> ")?;
            write_prop(f, r, false)?;
            if nested {
                f.write_str(")")?;
            }
            Ok(())
        }
    }
}
