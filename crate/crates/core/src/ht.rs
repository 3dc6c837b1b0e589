//! HT-interpretations, two-world satisfaction and exhaustive HT-validity
//! checking for propositional formulas.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::{self, Write};
use core::ops::Range;

use thiserror::Error;

use crate::prop::Prop;

/// Default limit on the number of distinct atoms for [`ht_valid`].
pub const DEFAULT_ATOM_LIMIT: usize = 20;

/// The two worlds, ordered `H < T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum World {
    H,
    T,
}

impl World {
    pub const ALL: [World; 2] = [World::H, World::T];

    /// Worlds `w'` with `self ≤ w'`.
    pub fn successors(self) -> &'static [World] {
        match self {
            World::H => &World::ALL,
            World::T => &World::ALL[1..],
        }
    }
}

/// Three-valued status of an atom in an HT-interpretation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AtomState {
    Absent,
    ThereOnly,
    Both,
}

impl AtomState {
    pub const ALL: [AtomState; 3] = [AtomState::Absent, AtomState::ThereOnly, AtomState::Both];

    pub fn holds_at(self, w: World) -> bool {
        match w {
            World::H => self == AtomState::Both,
            World::T => self != AtomState::Absent,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            AtomState::Absent => "absent",
            AtomState::ThereOnly => "there-only",
            AtomState::Both => "both",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HtError {
    #[error("here-set is not contained in there-set (atom `{0}`)")]
    NotPersistent(String),
    #[error("formula has {atoms} atoms, above the limit of {limit}")]
    BudgetExceeded { atoms: usize, limit: usize },
}

/// Anything that says which atoms hold at which world.
pub trait Valuation {
    fn holds(&self, atom: &str, w: World) -> bool;
}

/// A pair `⟨here, there⟩` of atom sets with `here ⊆ there`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct HtInterpretation {
    here: BTreeSet<String>,
    there: BTreeSet<String>,
}

impl HtInterpretation {
    pub fn new(here: BTreeSet<String>, there: BTreeSet<String>) -> Result<Self, HtError> {
        if let Some(a) = here.iter().find(|a| !there.contains(*a)) {
            return Err(HtError::NotPersistent(a.clone()));
        }
        Ok(HtInterpretation { here, there })
    }

    /// Builds an interpretation from per-atom states.
    pub fn from_states<'a>(states: impl IntoIterator<Item = (&'a str, AtomState)>) -> Self {
        let mut i = HtInterpretation::default();
        for (a, s) in states {
            if s.holds_at(World::T) {
                i.there.insert(a.into());
            }
            if s.holds_at(World::H) {
                i.here.insert(a.into());
            }
        }
        i
    }

    /// The total interpretation `⟨s, s⟩`.
    pub fn total(set: BTreeSet<String>) -> Self {
        HtInterpretation { here: set.clone(), there: set }
    }

    pub fn here(&self) -> &BTreeSet<String> {
        &self.here
    }

    pub fn there(&self) -> &BTreeSet<String> {
        &self.there
    }

    pub fn state(&self, atom: &str) -> AtomState {
        if self.here.contains(atom) {
            AtomState::Both
        } else if self.there.contains(atom) {
            AtomState::ThereOnly
        } else {
            AtomState::Absent
        }
    }

    /// One line per atom, `p: both | there-only | absent`.
    pub fn render<'a>(&self, atoms: impl IntoIterator<Item = &'a str>) -> String {
        let mut atoms: Vec<&str> = atoms.into_iter().collect();
        atoms.sort_unstable();
        atoms.dedup();
        let mut out = String::new();
        for a in atoms {
            let _ = writeln!(out, "{a}: {}", self.state(a).label());
        }
        out
    }
}

impl Valuation for HtInterpretation {
    fn holds(&self, atom: &str, w: World) -> bool {
        match w {
            World::H => self.here.contains(atom),
            World::T => self.there.contains(atom),
        }
    }
}

/// `I, w ⊨ F`. The implication clause quantifies over all `w' ≥ w`.
pub fn satisfies<V: Valuation + ?Sized>(i: &V, w: World, f: &Prop) -> bool {
    match f {
        Prop::Atom(a) => i.holds(a, w),
        Prop::And(s) => s.iter().all(|g| satisfies(i, w, g)),
        Prop::Or(s) => s.iter().any(|g| satisfies(i, w, g)),
        Prop::Imp(l, r) => w.successors().iter().all(|&v| !satisfies(i, v, l) || satisfies(i, v, r)),
    }
}

/// `I ⊨ F`, i.e. satisfaction at `h`.
pub fn models<V: Valuation + ?Sized>(i: &V, f: &Prop) -> bool {
    satisfies(i, World::H, f)
}

/// Three-valued evaluation: 2 = true at h, 1 = true only at t, 0 = false.
/// Conjunction is min, disjunction max, and `F → G` is 2 if `F ≤ G`,
/// otherwise the value of `G`.
pub fn g3_eval(i: &HtInterpretation, f: &Prop) -> u8 {
    match f {
        Prop::Atom(a) => match i.state(a) {
            AtomState::Absent => 0,
            AtomState::ThereOnly => 1,
            AtomState::Both => 2,
        },
        Prop::And(s) => s.iter().map(|g| g3_eval(i, g)).min().unwrap_or(2),
        Prop::Or(s) => s.iter().map(|g| g3_eval(i, g)).max().unwrap_or(0),
        Prop::Imp(l, r) => {
            let (a, b) = (g3_eval(i, l), g3_eval(i, r));
            if a <= b {
                2
            } else {
                b
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Countermodel {
    /// The atom universe of the checked formula, sorted.
    pub atoms: Vec<String>,
    pub interpretation: HtInterpretation,
}

impl Countermodel {
    pub fn render(&self) -> String {
        self.interpretation.render(self.atoms.iter().map(String::as_str))
    }
}

impl fmt::Display for Countermodel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Validity {
    Valid,
    Countermodel(Countermodel),
}

impl Validity {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validity::Valid)
    }
}

/// Interpretation number `index` in canonical order: atoms sorted, each
/// atom a base-3 digit (absent < there-only < both), the first atom most
/// significant.
struct Indexed<'a> {
    atoms: &'a [String],
    states: Vec<AtomState>,
}

impl Indexed<'_> {
    fn set_index(&mut self, mut index: u64) {
        for s in self.states.iter_mut().rev() {
            *s = AtomState::ALL[(index % 3) as usize];
            index /= 3;
        }
    }

    fn to_interpretation(&self) -> HtInterpretation {
        HtInterpretation::from_states(self.atoms.iter().map(String::as_str).zip(self.states.iter().copied()))
    }
}

impl Valuation for Indexed<'_> {
    fn holds(&self, atom: &str, w: World) -> bool {
        match self.atoms.binary_search_by(|a| a.as_str().cmp(atom)) {
            Ok(k) => self.states[k].holds_at(w),
            Err(_) => false,
        }
    }
}

/// Number of HT-interpretations over `n` atoms.
pub fn interpretation_count(n: usize) -> Option<u64> {
    3u64.checked_pow(u32::try_from(n).ok()?)
}

/// The smallest index in `range` whose interpretation fails `f` at `h`.
/// Disjoint ranges can be searched independently and merged by minimum.
pub fn first_failure(f: &Prop, atoms: &[String], range: Range<u64>) -> Option<u64> {
    let mut v = Indexed { atoms, states: alloc::vec![AtomState::Absent; atoms.len()] };
    range.into_iter().find(|&k| {
        v.set_index(k);
        !models(&v, f)
    })
}

/// Exhaustive HT-validity check over the atoms occurring in `f`.
pub fn ht_valid(f: &Prop) -> Result<Validity, HtError> {
    ht_valid_with_limit(f, DEFAULT_ATOM_LIMIT)
}

pub fn ht_valid_with_limit(f: &Prop, limit: usize) -> Result<Validity, HtError> {
    let atoms: Vec<String> = f.atoms().into_iter().collect();
    if atoms.len() > limit {
        return Err(HtError::BudgetExceeded { atoms: atoms.len(), limit });
    }
    let total = interpretation_count(atoms.len()).ok_or(HtError::BudgetExceeded { atoms: atoms.len(), limit })?;
    Ok(match first_failure(f, &atoms, 0..total) {
        None => Validity::Valid,
        Some(k) => {
            let mut v = Indexed { atoms: &atoms, states: alloc::vec![AtomState::Absent; atoms.len()] };
            v.set_index(k);
            let interpretation = v.to_interpretation();
            Validity::Countermodel(Countermodel { atoms, interpretation })
        }
    })
}
