//! First-order signatures: function constants, predicate constants and the
//! restrictor subset of the unary predicates.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("signature contains no object constant")]
    NoObjectConstant,
    #[error("name `{0}` is declared more than once")]
    DuplicateName(String),
    #[error("restrictor `{0}` is not a unary predicate constant")]
    BadRestrictor(String),
}

/// A first-order signature. Object constants are function constants of
/// arity 0; propositional constants are predicate constants of arity 0.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Signature {
    functions: BTreeMap<String, usize>,
    predicates: BTreeMap<String, usize>,
    restrictors: BTreeSet<String>,
}

impl Signature {
    /// Validates and builds a signature.
    pub fn new<F, P, R>(functions: F, predicates: P, restrictors: R) -> Result<Self, SignatureError>
    where
        F: IntoIterator<Item = (String, usize)>,
        P: IntoIterator<Item = (String, usize)>,
        R: IntoIterator<Item = String>,
    {
        let mut sig = Signature::default();
        for (name, arity) in functions {
            if sig.functions.insert(name.clone(), arity).is_some() {
                return Err(SignatureError::DuplicateName(name));
            }
        }
        for (name, arity) in predicates {
            if sig.functions.contains_key(&name) || sig.predicates.insert(name.clone(), arity).is_some() {
                return Err(SignatureError::DuplicateName(name));
            }
        }
        for name in restrictors {
            if sig.predicates.get(&name) != Some(&1) {
                return Err(SignatureError::BadRestrictor(name));
            }
            sig.restrictors.insert(name);
        }
        if !sig.functions.values().any(|&a| a == 0) {
            return Err(SignatureError::NoObjectConstant);
        }
        Ok(sig)
    }

    pub fn function_arity(&self, name: &str) -> Option<usize> {
        self.functions.get(name).copied()
    }

    pub fn predicate_arity(&self, name: &str) -> Option<usize> {
        self.predicates.get(name).copied()
    }

    pub fn is_restrictor(&self, name: &str) -> bool {
        self.restrictors.contains(name)
    }

    pub fn functions(&self) -> impl Iterator<Item = (&str, usize)> {
        self.functions.iter().map(|(n, &a)| (n.as_str(), a))
    }

    pub fn predicates(&self) -> impl Iterator<Item = (&str, usize)> {
        self.predicates.iter().map(|(n, &a)| (n.as_str(), a))
    }

    pub fn restrictors(&self) -> impl Iterator<Item = &str> {
        self.restrictors.iter().map(String::as_str)
    }

    /// Object constants in name order.
    pub fn object_constants(&self) -> Vec<&str> {
        self.functions
            .iter()
            .filter(|(_, &a)| a == 0)
            .map(|(n, _)| n.as_str())
            .collect()
    }

    /// True iff every function constant is nullary, i.e. the Herbrand universe
    /// is finite.
    pub fn is_nullary_only(&self) -> bool {
        self.functions.values().all(|&a| a == 0)
    }

    /// True iff every declaration of `self` occurs identically in `other`.
    pub fn is_subsignature_of(&self, other: &Signature) -> bool {
        self.functions.iter().all(|(n, a)| other.functions.get(n) == Some(a))
            && self.predicates.iter().all(|(n, a)| other.predicates.get(n) == Some(a))
            && self.restrictors.iter().all(|r| other.restrictors.contains(r))
    }

    pub fn declares(&self, name: &str) -> bool {
        self.functions.contains_key(name) || self.predicates.contains_key(name)
    }
}
