//! Kernel for proving here-and-there validity of infinitary propositional
//! formulas by way of finite first- and second-order proofs.
//!
//! The crate is `no_std` (with `alloc`). It covers:
//!
//! - first/second-order syntax with restrictors ([`formula`], [`term`],
//!   [`signature`]) and finitely represented infinitary propositional
//!   formulas ([`prop`]);
//! - the two-world satisfaction relation and exhaustive HT-validity checking
//!   ([`ht`]);
//! - instances of closed first-order formulas under substitutions
//!   ([`instance`]);
//! - a Hilbert-style checker for HHT, HHT² and HHT²+DCA ([`kernel`]);
//! - Herbrand HT-interpretations, including quantification over function and
//!   predicate names, and the lifting construction ([`herbrand`]).
//!
//! Parsing, file formats and the command line live in the `hhtkit` crate.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod formula;
pub mod herbrand;
pub mod ht;
pub mod instance;
pub mod kernel;
pub mod prop;
pub mod signature;
pub mod term;

pub use formula::{BinOp, Binder, Formula, Pred, PredVar, Quantifier, Var};
pub use ht::{HtInterpretation, Validity, World};
pub use instance::{Mode, Substitution};
pub use prop::Prop;
pub use signature::Signature;
pub use term::{FunVar, GroundAtom, GroundTerm, Term};
