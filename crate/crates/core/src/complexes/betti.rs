use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::groebner::FreeModule;
use crate::ring::Multidegree;

/// Multigraded Betti numbers: rank of `S(-a)` in `F_i` for each `(i, a)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, Multidegree), usize>,
    len: usize,
}

#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct BettiEntry {
    pub i: usize,
    /// The degree `a` of the summand `S(-a)`.
    pub twist: Vec<i32>,
    pub rank: usize,
}

/// Serialized form of a [`BettiTable`].
#[derive(Serialize, Deserialize, Debug, PartialEq, Eq)]
pub struct BettiJson {
    /// Number of distinct twists in each homological degree.
    pub lengths: Vec<usize>,
    pub totals: Vec<usize>,
    pub entries: Vec<BettiEntry>,
    pub distinct_twists: usize,
}

impl BettiTable {
    pub fn from_modules(modules: &[FreeModule]) -> Self {
        let mut entries = BTreeMap::new();
        for (i, m) in modules.iter().enumerate() {
            for d in m.degrees() {
                *entries.entry((i, d.clone())).or_insert(0) += 1;
            }
        }
        BettiTable { entries, len: modules.len() }
    }

    /// Build from `(i, a, rank)` triples.
    pub fn from_entries(items: impl IntoIterator<Item = (usize, Multidegree, usize)>) -> Self {
        let mut entries = BTreeMap::new();
        let mut len = 0;
        for (i, a, r) in items {
            if r > 0 {
                *entries.entry((i, a)).or_insert(0) += r;
                len = len.max(i + 1);
            }
        }
        BettiTable { entries, len }
    }

    pub fn rank(&self, i: usize, a: &Multidegree) -> usize {
        self.entries.get(&(i, a.clone())).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, &Multidegree, usize)> {
        self.entries.iter().map(|((i, a), r)| (*i, a, *r))
    }

    /// Entries of `F_i`, largest first component first.
    pub fn column(&self, i: usize) -> Vec<(Multidegree, usize)> {
        let mut v: Vec<(Multidegree, usize)> =
            self.entries.iter().filter(|((j, _), _)| *j == i).map(|((_, a), r)| (a.clone(), *r)).collect();
        v.sort_by(|x, y| y.0.cmp(&x.0));
        v
    }

    pub fn totals(&self) -> Vec<usize> {
        (0..self.len).map(|i| self.column(i).iter().map(|(_, r)| r).sum()).collect()
    }

    pub fn lengths(&self) -> Vec<usize> {
        (0..self.len).map(|i| self.column(i).len()).collect()
    }

    /// Number of distinct degrees `a` appearing anywhere in the table.
    pub fn distinct_twists(&self) -> usize {
        self.entries.keys().map(|(_, a)| a).collect::<BTreeSet<_>>().len()
    }

    pub fn to_json(&self) -> BettiJson {
        BettiJson {
            lengths: self.lengths(),
            totals: self.totals(),
            entries: (0..self.len)
                .flat_map(|i| {
                    self.column(i)
                        .into_iter()
                        .map(move |(a, rank)| BettiEntry { i, twist: a.as_slice().to_vec(), rank })
                })
                .collect(),
            distinct_twists: self.distinct_twists(),
        }
    }

    pub fn from_json(j: &BettiJson) -> Self {
        Self::from_entries(j.entries.iter().map(|e| (e.i, Multidegree::from(e.twist.clone()), e.rank)))
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            let parts: Vec<String> = self
                .column(i)
                .iter()
                .map(|(a, r)| {
                    let twist = if a.as_slice().iter().all(|&x| x == 0) {
                        "S".to_string()
                    } else {
                        format!("S{}", -a)
                    };
                    if *r == 1 {
                        twist
                    } else {
                        format!("{twist}^{r}")
                    }
                })
                .collect();
            let body = if parts.is_empty() { "0".to_string() } else { parts.join(" ⊕ ") };
            writeln!(f, "F_{i}: {body}")?;
        }
        writeln!(f, "totals: {:?}; distinct twists: {}", self.totals(), self.distinct_twists())
    }
}
