use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// RCC8 base relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Rcc8 {
    DC,
    EC,
    PO,
    TPP,
    NTPP,
    TPPi,
    NTPPi,
    EQ,
}

impl Rcc8 {
    pub const ALL: [Rcc8; 8] = [
        Rcc8::DC,
        Rcc8::EC,
        Rcc8::PO,
        Rcc8::TPP,
        Rcc8::NTPP,
        Rcc8::TPPi,
        Rcc8::NTPPi,
        Rcc8::EQ,
    ];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Rcc8 {
        Rcc8::ALL[i]
    }

    pub fn name(self) -> &'static str {
        match self {
            Rcc8::DC => "DC",
            Rcc8::EC => "EC",
            Rcc8::PO => "PO",
            Rcc8::TPP => "TPP",
            Rcc8::NTPP => "NTPP",
            Rcc8::TPPi => "TPPi",
            Rcc8::NTPPi => "NTPPi",
            Rcc8::EQ => "EQ",
        }
    }

    pub fn converse(self) -> Rcc8 {
        match self {
            Rcc8::TPP => Rcc8::TPPi,
            Rcc8::TPPi => Rcc8::TPP,
            Rcc8::NTPP => Rcc8::NTPPi,
            Rcc8::NTPPi => Rcc8::NTPP,
            r => r,
        }
    }
}

impl fmt::Display for Rcc8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rcc8 {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rcc8::ALL
            .into_iter()
            .find(|r| r.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown RCC8 relation `{s}`"))
    }
}

/// Disjunction of base relations as a bitset. Empty means inconsistent; all eight
/// means unknown.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct RelationSet(u8);

impl RelationSet {
    pub const EMPTY: RelationSet = RelationSet(0);
    pub const UNIVERSAL: RelationSet = RelationSet(0xff);

    pub fn from_bits(bits: u8) -> RelationSet {
        RelationSet(bits)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn single(r: Rcc8) -> RelationSet {
        RelationSet(1 << r.index())
    }

    pub fn of(rels: &[Rcc8]) -> RelationSet {
        rels.iter().fold(RelationSet::EMPTY, |s, &r| s.with(r))
    }

    pub fn with(self, r: Rcc8) -> RelationSet {
        RelationSet(self.0 | (1 << r.index()))
    }

    pub fn contains(self, r: Rcc8) -> bool {
        self.0 & (1 << r.index()) != 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_universal(self) -> bool {
        self.0 == 0xff
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: RelationSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: RelationSet) -> RelationSet {
        RelationSet(self.0 | other.0)
    }

    pub fn intersection(self, other: RelationSet) -> RelationSet {
        RelationSet(self.0 & other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = Rcc8> {
        Rcc8::ALL.into_iter().filter(move |r| self.contains(*r))
    }

    pub fn converse(self) -> RelationSet {
        self.iter().fold(RelationSet::EMPTY, |s, r| s.with(r.converse()))
    }

    pub fn names(self) -> Vec<&'static str> {
        self.iter().map(Rcc8::name).collect()
    }

    /// Parses a topological formal meaning: a base relation name, or `PP`/`PPi`
    /// for the proper-part disjunctions.
    pub fn from_f_meaning(s: &str) -> Option<RelationSet> {
        match s {
            "PP" => Some(RelationSet::of(&[Rcc8::TPP, Rcc8::NTPP])),
            "PPi" => Some(RelationSet::of(&[Rcc8::TPPi, Rcc8::NTPPi])),
            _ => s.parse().ok().map(RelationSet::single),
        }
    }
}

impl From<Rcc8> for RelationSet {
    fn from(r: Rcc8) -> Self {
        RelationSet::single(r)
    }
}

impl fmt::Display for RelationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names().join(", "))
    }
}

impl Serialize for RelationSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.names().serialize(s)
    }
}

impl<'de> Deserialize<'de> for RelationSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let names = Vec::<String>::deserialize(d)?;
        names.iter().try_fold(RelationSet::EMPTY, |s, n| {
            n.parse::<Rcc8>().map(|r| s.with(r)).map_err(serde::de::Error::custom)
        })
    }
}
