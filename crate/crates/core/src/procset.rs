//! Process identifiers and bitmask process sets.
//!
//! A [`Universe`] fixes a lexicographic order on [`ProcessId`]s and assigns
//! each one a [`Pid`] index. Every [`ProcSet`] is interpreted relative to
//! one universe. Sets order by size first and then lexicographically by
//! their members, which is the canonical order used in all reports.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, Sub, SubAssign};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const MAX_PROCESSES: usize = 64;

/// Textual process identifier.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct ProcessId(String);

impl ProcessId {
    pub fn new(id: impl Into<String>) -> Result<Self> {
        let id = id.into();
        if id.is_empty() || id.chars().any(|c| c.is_whitespace() || c == ',' || c == ':') {
            return Err(Error::InvalidProcessId(id));
        }
        Ok(ProcessId(id))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl TryFrom<String> for ProcessId {
    type Error = Error;
    fn try_from(value: String) -> Result<Self> {
        ProcessId::new(value)
    }
}

impl From<ProcessId> for String {
    fn from(value: ProcessId) -> Self {
        value.0
    }
}

impl FromStr for ProcessId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ProcessId::new(s)
    }
}

impl fmt::Display for ProcessId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Index of a process inside its universe.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pid(pub u8);

impl Pid {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// Finite set of processes as a 64-bit mask.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ProcSet(u64);

impl ProcSet {
    pub const EMPTY: ProcSet = ProcSet(0);

    pub fn from_bits(bits: u64) -> Self {
        ProcSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    /// The first `n` processes.
    pub fn full(n: usize) -> Self {
        if n >= 64 {
            ProcSet(u64::MAX)
        } else {
            ProcSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(p: Pid) -> Self {
        ProcSet(1 << p.0)
    }

    pub fn contains(self, p: Pid) -> bool {
        self.0 & (1 << p.0) != 0
    }

    pub fn insert(&mut self, p: Pid) {
        self.0 |= 1 << p.0;
    }

    pub fn remove(&mut self, p: Pid) {
        self.0 &= !(1 << p.0);
    }

    pub fn with(self, p: Pid) -> Self {
        ProcSet(self.0 | (1 << p.0))
    }

    pub fn without(self, p: Pid) -> Self {
        ProcSet(self.0 & !(1 << p.0))
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: ProcSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: ProcSet) -> bool {
        self.0 & other.0 != 0
    }

    pub fn first(self) -> Option<Pid> {
        (self.0 != 0).then(|| Pid(self.0.trailing_zeros() as u8))
    }

    pub fn iter(self) -> impl Iterator<Item = Pid> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let i = bits.trailing_zeros();
            bits &= bits - 1;
            Some(Pid(i as u8))
        })
    }

    /// All subsets of `self`, in no particular order.
    pub fn subsets(self) -> impl Iterator<Item = ProcSet> {
        let mask = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask { None } else { Some(((cur | !mask).wrapping_add(1)) & mask) };
            Some(ProcSet(cur))
        })
    }

    /// All subsets of `self` in canonical order.
    pub fn subsets_sorted(self) -> Vec<ProcSet> {
        let mut all: Vec<ProcSet> = self.subsets().collect();
        all.sort();
        all
    }
}

impl Ord for ProcSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & (diff & diff.wrapping_neg()) != 0 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl PartialOrd for ProcSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ProcSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|p| p.0)).finish()
    }
}

impl FromIterator<Pid> for ProcSet {
    fn from_iter<I: IntoIterator<Item = Pid>>(iter: I) -> Self {
        let mut s = ProcSet::EMPTY;
        for p in iter {
            s.insert(p);
        }
        s
    }
}

macro_rules! set_op {
    ($tr:ident, $f:ident, $atr:ident, $af:ident, $e:expr) => {
        impl $tr for ProcSet {
            type Output = ProcSet;
            fn $f(self, rhs: ProcSet) -> ProcSet {
                ProcSet($e(self.0, rhs.0))
            }
        }
        impl $atr for ProcSet {
            fn $af(&mut self, rhs: ProcSet) {
                self.0 = $e(self.0, rhs.0);
            }
        }
    };
}

set_op!(BitOr, bitor, BitOrAssign, bitor_assign, |a: u64, b: u64| a | b);
set_op!(BitAnd, bitand, BitAndAssign, bitand_assign, |a: u64, b: u64| a & b);
set_op!(Sub, sub, SubAssign, sub_assign, |a: u64, b: u64| a & !b);

/// Sorts a family canonically and removes duplicates.
pub fn canonical_family(mut family: Vec<ProcSet>) -> Vec<ProcSet> {
    family.sort();
    family.dedup();
    family
}

/// Keeps only the inclusion-minimal members of a family, canonically sorted.
pub fn minimal_members(family: Vec<ProcSet>) -> Vec<ProcSet> {
    let sorted = canonical_family(family);
    let mut kept: Vec<ProcSet> = Vec::new();
    for s in sorted {
        if !kept.iter().any(|k| k.is_subset(s)) {
            kept.push(s);
        }
    }
    kept
}

/// Keeps only the inclusion-maximal members of a family, canonically sorted.
pub fn maximal_members(family: Vec<ProcSet>) -> Vec<ProcSet> {
    let sorted = canonical_family(family);
    let kept: Vec<ProcSet> =
        sorted.iter().copied().filter(|s| !sorted.iter().any(|o| o != s && s.is_subset(*o))).collect();
    kept
}

/// The finite, lexicographically ordered set of all processes of a system.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Universe {
    ids: Vec<ProcessId>,
}

impl Universe {
    pub fn new(ids: impl IntoIterator<Item = ProcessId>) -> Result<Self> {
        let mut ids: Vec<ProcessId> = ids.into_iter().collect();
        ids.sort();
        ids.dedup();
        if ids.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        if ids.len() > MAX_PROCESSES {
            return Err(Error::UniverseTooLarge(ids.len()));
        }
        Ok(Universe { ids })
    }

    /// Universe `p1..pn`.
    pub fn numbered(n: usize) -> Result<Self> {
        Universe::new((1..=n).map(|i| ProcessId(format!("p{i}"))))
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn all(&self) -> ProcSet {
        ProcSet::full(self.ids.len())
    }

    pub fn pids(&self) -> impl Iterator<Item = Pid> + '_ {
        (0..self.ids.len()).map(|i| Pid(i as u8))
    }

    pub fn ids(&self) -> &[ProcessId] {
        &self.ids
    }

    pub fn id(&self, p: Pid) -> &ProcessId {
        &self.ids[p.index()]
    }

    pub fn pid(&self, id: &str) -> Result<Pid> {
        self.ids
            .binary_search_by(|probe| probe.as_str().cmp(id))
            .map(|i| Pid(i as u8))
            .map_err(|_| Error::UnknownProcess(id.to_string()))
    }

    pub fn set<S: AsRef<str>>(&self, ids: impl IntoIterator<Item = S>) -> Result<ProcSet> {
        let mut s = ProcSet::EMPTY;
        for id in ids {
            s.insert(self.pid(id.as_ref())?);
        }
        Ok(s)
    }

    pub fn names(&self, s: ProcSet) -> Vec<String> {
        s.iter().map(|p| self.id(p).to_string()).collect()
    }

    pub fn family_names(&self, family: &[ProcSet]) -> Vec<Vec<String>> {
        family.iter().map(|s| self.names(*s)).collect()
    }

    pub fn show(&self, s: ProcSet) -> String {
        format!("{{{}}}", self.names(s).join(","))
    }

    pub fn show_family(&self, family: &[ProcSet]) -> String {
        let parts: Vec<String> = family.iter().map(|s| self.show(*s)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_is_size_then_lexicographic() {
        let s = |v: &[u8]| v.iter().map(|&i| Pid(i)).collect::<ProcSet>();
        let fam = canonical_family(vec![s(&[1, 2]), s(&[0, 3]), s(&[3]), s(&[]), s(&[0])]);
        assert_eq!(fam, vec![s(&[]), s(&[0]), s(&[3]), s(&[0, 3]), s(&[1, 2])]);
    }

    #[test]
    fn subsets_enumerates_every_submask_once() {
        let mask = ProcSet::from_bits(0b1011);
        let subs = mask.subsets_sorted();
        assert_eq!(subs.len(), 8);
        assert!(subs.iter().all(|s| s.is_subset(mask)));
        assert_eq!(canonical_family(subs.clone()).len(), 8);
    }

    #[test]
    fn universe_sorts_ids_lexicographically() {
        let u = Universe::new(["p2", "p10", "p1"].map(|s| ProcessId::new(s).unwrap())).unwrap();
        assert_eq!(u.names(u.all()), vec!["p1", "p10", "p2"]);
        assert!(u.pid("p3").is_err());
    }

    #[test]
    fn rejects_malformed_ids() {
        assert!(ProcessId::new("").is_err());
        assert!(ProcessId::new("a b").is_err());
    }
}
