//! Vincular patterns: parsing, containment and the reverse/complement symmetries.
//!
//! A pattern is written as dash-separated blocks; letters inside a block must
//! sit at adjacent positions in any copy. `1-2-3` is the classical pattern 123,
//! `12-3` requires the first two letters of a copy to be adjacent, and `123` is
//! fully consecutive. Letters above 9 use brackets, e.g. `[10]-9-8-7-6-5-4-3-2-1`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{parse_letters, write_letters, Perm};

/// A pattern `(σ, X)` with adjacency set `X ⊆ {1, …, k−1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VincularPattern {
    sigma: Perm,
    /// `adjacent[j]` holds when `j + 1 ∈ X`, i.e. pattern positions `j` and
    /// `j + 1` (zero-based) must be matched at adjacent indices.
    adjacent: Vec<bool>,
}

impl VincularPattern {
    pub fn new(sigma: Perm, adjacencies: impl IntoIterator<Item = usize>) -> Result<Self> {
        let k = sigma.len();
        if k == 0 {
            return Err(Error::InvalidPattern(
                "patterns must have length at least 1".into(),
            ));
        }
        let mut adjacent = vec![false; k - 1];
        for x in adjacencies {
            if x == 0 || x >= k {
                return Err(Error::InvalidPattern(format!(
                    "adjacency {x} outside 1..={} for {sigma}",
                    k - 1
                )));
            }
            adjacent[x - 1] = true;
        }
        Ok(VincularPattern { sigma, adjacent })
    }

    pub fn classical(sigma: Perm) -> Self {
        let k = sigma.len();
        VincularPattern {
            sigma,
            adjacent: vec![false; k.saturating_sub(1)],
        }
    }

    pub fn consecutive(sigma: Perm) -> Self {
        let k = sigma.len();
        VincularPattern {
            sigma,
            adjacent: vec![true; k.saturating_sub(1)],
        }
    }

    pub fn sigma(&self) -> &Perm {
        &self.sigma
    }

    pub fn len(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sigma.is_empty()
    }

    /// The adjacency set `X` as one-based positions.
    pub fn adjacencies(&self) -> BTreeSet<usize> {
        self.adjacent
            .iter()
            .enumerate()
            .filter(|(_, &a)| a)
            .map(|(j, _)| j + 1)
            .collect()
    }

    /// `(σ, X)^r = (σ^r, k − X)`.
    pub fn reverse(&self) -> Self {
        VincularPattern {
            sigma: self.sigma.reverse(),
            adjacent: self.adjacent.iter().rev().copied().collect(),
        }
    }

    /// `(σ, X)^c = (σ^c, X)`.
    pub fn complement(&self) -> Self {
        VincularPattern {
            sigma: self.sigma.complement(),
            adjacent: self.adjacent.clone(),
        }
    }

    /// Number of copies of the pattern in `text` (any repeat-free word).
    pub fn count_copies(&self, text: &[u32]) -> u64 {
        if text.len() < self.len() {
            return 0;
        }
        let mut chosen = Vec::with_capacity(self.len());
        self.search_forward(text, &mut chosen, false)
    }

    pub fn occurs_in(&self, text: &[u32]) -> bool {
        if text.len() < self.len() {
            return false;
        }
        let mut chosen = Vec::with_capacity(self.len());
        self.search_forward(text, &mut chosen, true) > 0
    }

    /// Whether some copy uses index `end` (zero-based) as its last letter and
    /// lies entirely within `text[..=end]`.
    pub fn occurs_ending_at(&self, text: &[u32], end: usize) -> bool {
        let k = self.len();
        if end + 1 < k {
            return false;
        }
        let mut slots = vec![0usize; k];
        slots[k - 1] = end;
        self.search_backward(text, &mut slots, k - 1)
    }

    fn consistent(
        &self,
        text: &[u32],
        j: usize,
        pos: usize,
        other_j: usize,
        other_pos: usize,
    ) -> bool {
        let s = self.sigma.letters();
        (text[other_pos] < text[pos]) == (s[other_j] < s[j])
    }

    fn search_forward(&self, text: &[u32], chosen: &mut Vec<usize>, first_only: bool) -> u64 {
        let k = self.len();
        let j = chosen.len();
        if j == k {
            return 1;
        }
        let n = text.len();
        let lo = chosen.last().map_or(0, |&p| p + 1);
        // Leave room for the k - j - 1 pattern letters still to place.
        let room = n + 1 - (k - j);
        let hi = if j > 0 && self.adjacent[j - 1] {
            (lo + 1).min(room)
        } else {
            room
        };
        let mut total = 0;
        for pos in lo..hi {
            if chosen
                .iter()
                .enumerate()
                .all(|(i, &q)| self.consistent(text, j, pos, i, q))
            {
                chosen.push(pos);
                total += self.search_forward(text, chosen, first_only);
                chosen.pop();
                if first_only && total > 0 {
                    return total;
                }
            }
        }
        total
    }

    /// Fills `slots[j]`, given `slots[j..]`, right to left.
    fn search_backward(&self, text: &[u32], slots: &mut [usize], j: usize) -> bool {
        let k = slots.len();
        let ok = |slots: &[usize], j: usize, pos: usize| {
            (j + 1..k).all(|i| self.consistent(text, j, pos, i, slots[i]))
        };
        if j == k - 1 {
            // The last letter is fixed; nothing to compare yet.
            return j == 0 || self.search_backward(text, slots, j - 1);
        }
        let next = slots[j + 1];
        let range = if self.adjacent[j] {
            if next == 0 || next - 1 < j {
                return false;
            }
            next - 1..next
        } else {
            if next < j + 1 {
                return false;
            }
            j..next
        };
        for pos in range.rev() {
            if ok(slots, j, pos) {
                slots[j] = pos;
                if j == 0 || self.search_backward(text, slots, j - 1) {
                    return true;
                }
            }
        }
        false
    }
}

impl fmt::Display for VincularPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = self.sigma.letters();
        for (j, &x) in letters.iter().enumerate() {
            if j > 0 && !self.adjacent[j - 1] {
                f.write_str("-")?;
            }
            write_letters(f, &[x])?;
        }
        Ok(())
    }
}

impl fmt::Debug for VincularPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VincularPattern({self})")
    }
}

impl FromStr for VincularPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let lead = s.len() - s.trim_start().len();
        if trimmed.is_empty() {
            return Err(Error::PatternParse {
                input: s.to_string(),
                at: 0,
                reason: "empty pattern".into(),
            });
        }
        let mut letters = Vec::new();
        let mut adjacencies = Vec::new();
        let mut offset = lead;
        for block in trimmed.split('-') {
            if block.is_empty() {
                return Err(Error::PatternParse {
                    input: s.to_string(),
                    at: offset,
                    reason: "empty block between dashes".into(),
                });
            }
            let block_letters = parse_letters(block, offset)?;
            // Adjacencies only inside a block; the dash seam stays free.
            let start = letters.len();
            letters.extend(block_letters);
            adjacencies.extend(start + 1..letters.len());
            offset += block.len() + 1;
        }
        let sigma = Perm::new(letters).map_err(|e| Error::PatternParse {
            input: s.to_string(),
            at: lead,
            reason: e.to_string(),
        })?;
        VincularPattern::new(sigma, adjacencies)
    }
}

impl Serialize for VincularPattern {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for VincularPattern {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a comma-separated pattern list such as `2-1-3,1-2-3-4`.
pub fn parse_pattern_set(s: &str) -> Result<Vec<VincularPattern>> {
    let mut out: Vec<VincularPattern> = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let pat: VincularPattern = part.parse()?;
        if !out.contains(&pat) {
            out.push(pat);
        }
    }
    Ok(out)
}

pub fn avoids_all(pi: &[u32], patterns: &[VincularPattern]) -> bool {
    patterns.iter().all(|b| !b.occurs_in(pi))
}

/// One of the four symmetries that map pattern classes to pattern classes.
/// All of them are involutions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Symmetry {
    #[default]
    Identity,
    Complement,
    Reverse,
    ReverseComplement,
}

impl Symmetry {
    pub const SEARCH_ORDER: [Symmetry; 4] = [
        Symmetry::Identity,
        Symmetry::Complement,
        Symmetry::Reverse,
        Symmetry::ReverseComplement,
    ];

    pub fn apply_pattern(self, p: &VincularPattern) -> VincularPattern {
        match self {
            Symmetry::Identity => p.clone(),
            Symmetry::Complement => p.complement(),
            Symmetry::Reverse => p.reverse(),
            Symmetry::ReverseComplement => p.reverse().complement(),
        }
    }

    pub fn apply_patterns(self, ps: &[VincularPattern]) -> Vec<VincularPattern> {
        ps.iter().map(|p| self.apply_pattern(p)).collect()
    }

    pub fn apply_perm(self, p: &Perm) -> Perm {
        match self {
            Symmetry::Identity => p.clone(),
            Symmetry::Complement => p.complement(),
            Symmetry::Reverse => p.reverse(),
            Symmetry::ReverseComplement => p.reverse().complement(),
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Symmetry::Identity => "identity",
            Symmetry::Complement => "c",
            Symmetry::Reverse => "r",
            Symmetry::ReverseComplement => "rc",
        }
    }
}

impl fmt::Display for Symmetry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}
