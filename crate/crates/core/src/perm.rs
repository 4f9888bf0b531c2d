//! Permutations, prefix words, reduction, deletion and spacing vectors.
//!
//! Letters are one-based throughout, exactly as permutations are written by
//! hand: the permutation `312` is stored as `[3, 1, 2]`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A permutation of `1..=n`.
///
/// Ordering is by length first and lexicographic within a length, which is
/// the order prefixes are listed in schemes.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn new(letters: Vec<u32>) -> Result<Self> {
        let n = letters.len();
        let mut seen = vec![false; n + 1];
        for &x in &letters {
            if x == 0 || x as usize > n {
                return Err(Error::InvalidPerm {
                    letters,
                    reason: format!("letter {x} outside 1..={n}"),
                });
            }
            if std::mem::replace(&mut seen[x as usize], true) {
                return Err(Error::InvalidPerm {
                    letters,
                    reason: format!("letter {x} repeated"),
                });
            }
        }
        Ok(Perm(letters))
    }

    pub(crate) fn from_vec_unchecked(letters: Vec<u32>) -> Self {
        debug_assert!(Perm::new(letters.clone()).is_ok(), "{letters:?}");
        Perm(letters)
    }

    pub fn empty() -> Self {
        Perm(Vec::new())
    }

    pub fn identity(n: usize) -> Self {
        Perm((1..=n as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[u32] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<u32> {
        self.0
    }

    /// View this permutation as a word in its own ambient size.
    pub fn to_word(&self) -> Word {
        Word {
            letters: self.0.clone(),
            n: self.0.len() as u32,
        }
    }

    pub fn reverse(&self) -> Perm {
        Perm(self.0.iter().rev().copied().collect())
    }

    pub fn complement(&self) -> Perm {
        let n = self.0.len() as u32;
        Perm(self.0.iter().map(|&x| n + 1 - x).collect())
    }

    /// All `k + 1` permutations whose first `k` letters reduce to `self`,
    /// ordered by the value of the new last letter.
    pub fn children(&self) -> Vec<Perm> {
        (1..=self.0.len() as u32 + 1)
            .map(|v| self.child(v))
            .collect()
    }

    /// The child whose last letter has value `last`.
    pub fn child(&self, last: u32) -> Perm {
        let mut letters: Vec<u32> = self
            .0
            .iter()
            .map(|&x| if x >= last { x + 1 } else { x })
            .collect();
        letters.push(last);
        Perm(letters)
    }

    /// `d_R`: drop the letters at the (one-based) indices in `r` and reduce.
    pub fn delete(&self, r: &[usize]) -> Result<Perm> {
        check_indices(r, self.0.len())?;
        Ok(Perm(delete_letters(&self.0, r)))
    }

    /// `red(p_1 .. p_s)`.
    pub fn prefix(&self, s: usize) -> Perm {
        Perm(reduce_unchecked(&self.0[..s]))
    }
}

impl Ord for Perm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Perm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("ε");
        }
        write_letters(f, &self.0)
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm({self})")
    }
}

impl FromStr for Perm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "ε" || s == "e" {
            return Ok(Perm::empty());
        }
        let letters = parse_letters(s, 0)?;
        Perm::new(letters)
    }
}

/// Writes letters with single digits bare and larger values in brackets.
pub(crate) fn write_letters(f: &mut impl fmt::Write, letters: &[u32]) -> fmt::Result {
    for &x in letters {
        if x <= 9 {
            write!(f, "{x}")?;
        } else {
            write!(f, "[{x}]")?;
        }
    }
    Ok(())
}

/// Parses a run of letters: digits `1`–`9`, or bracketed numbers such as `[12]`.
pub(crate) fn parse_letters(s: &str, offset: usize) -> Result<Vec<u32>> {
    let err = |at: usize, reason: &str| Error::PatternParse {
        input: s.to_string(),
        at: offset + at,
        reason: reason.to_string(),
    };
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        match bytes[i] {
            b'1'..=b'9' => {
                out.push(u32::from(bytes[i] - b'0'));
                i += 1;
            }
            b'[' => {
                let close = s[i..]
                    .find(']')
                    .map(|j| i + j)
                    .ok_or_else(|| err(i, "unclosed '['"))?;
                let value: u32 = s[i + 1..close]
                    .parse()
                    .map_err(|_| err(i + 1, "expected a number inside brackets"))?;
                if value == 0 {
                    return Err(err(i + 1, "letters start at 1"));
                }
                out.push(value);
                i = close + 1;
            }
            _ => return Err(err(i, "expected a digit 1-9 or a bracketed number")),
        }
    }
    Ok(out)
}

/// A repeat-free word sitting as the prefix of a permutation of `1..=n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Word {
    letters: Vec<u32>,
    n: u32,
}

impl Word {
    pub fn new(letters: Vec<u32>, n: u32) -> Result<Self> {
        if letters.len() > n as usize {
            return Err(Error::InvalidWord {
                letters,
                reason: format!("longer than its ambient size {n}"),
            });
        }
        let mut seen = vec![false; n as usize + 1];
        for &x in &letters {
            if x == 0 || x > n {
                return Err(Error::InvalidWord {
                    letters,
                    reason: format!("letter {x} outside 1..={n}"),
                });
            }
            if std::mem::replace(&mut seen[x as usize], true) {
                return Err(Error::InvalidWord {
                    letters,
                    reason: format!("letter {x} repeated"),
                });
            }
        }
        Ok(Word { letters, n })
    }

    pub(crate) fn from_parts_unchecked(letters: Vec<u32>, n: u32) -> Self {
        Word { letters, n }
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Ambient size `n` of the permutations this word is a prefix of.
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn reduce(&self) -> Perm {
        Perm(reduce_unchecked(&self.letters))
    }

    /// `d_R(w)`: drop the letters at the indices in `r`, shift larger letters
    /// down, and shrink the ambient size by `|r|`.
    pub fn delete(&self, r: &[usize]) -> Result<Word> {
        check_indices(r, self.letters.len())?;
        Ok(Word {
            letters: delete_letters(&self.letters, r),
            n: self.n - r.len() as u32,
        })
    }

    pub fn spacing_vector(&self) -> SpacingVector {
        let mut sorted = self.letters.clone();
        sorted.sort_unstable();
        let mut gaps = Vec::with_capacity(sorted.len() + 1);
        let mut prev = 0;
        for &c in sorted.iter().chain(std::iter::once(&(self.n + 1))) {
            gaps.push(c - prev - 1);
            prev = c;
        }
        SpacingVector(gaps)
    }

    /// Rebuilds the unique word with pattern `p` and spacing vector `g`.
    pub fn reconstruct(p: &Perm, g: &SpacingVector) -> Result<Word> {
        if g.0.len() != p.len() + 1 {
            return Err(Error::InvalidWord {
                letters: p.letters().to_vec(),
                reason: format!(
                    "spacing vector of length {} does not fit a prefix of length {}",
                    g.0.len(),
                    p.len()
                ),
            });
        }
        Ok(reconstruct_unchecked(p.letters(), g.gaps()))
    }
}

pub(crate) fn reconstruct_unchecked(p: &[u32], gaps: &[u32]) -> Word {
    // c[i] is the value of the i-th smallest letter.
    let mut c = Vec::with_capacity(p.len() + 1);
    c.push(0u32);
    for g in &gaps[..p.len()] {
        let last = *c.last().unwrap();
        c.push(last + g + 1);
    }
    let n = p.len() as u32 + gaps.iter().sum::<u32>();
    Word {
        letters: p.iter().map(|&x| c[x as usize]).collect(),
        n,
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            f.write_str("ε")?;
        } else {
            write_letters(f, &self.letters)?;
        }
        write!(f, " (n={})", self.n)
    }
}

/// The `(k+1)`-vector of gap sizes between consecutive prefix letters.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct SpacingVector(pub Vec<u32>);

impl SpacingVector {
    pub fn gaps(&self) -> &[u32] {
        &self.0
    }

    pub fn sum(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Product order: every component at least the matching one in `other`.
    pub fn dominates(&self, other: &[u32]) -> bool {
        dominates(&self.0, other)
    }
}

impl fmt::Display for SpacingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str(">")
    }
}

pub(crate) fn dominates(a: &[u32], b: &[u32]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x >= y)
}

/// `red(w)` for a repeat-free word.
pub fn reduce(letters: &[u32]) -> Result<Perm> {
    let mut sorted = letters.to_vec();
    sorted.sort_unstable();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidWord {
            letters: letters.to_vec(),
            reason: "reduction needs distinct letters".into(),
        });
    }
    Ok(Perm(reduce_unchecked(letters)))
}

pub(crate) fn reduce_unchecked(letters: &[u32]) -> Vec<u32> {
    let mut order: Vec<usize> = (0..letters.len()).collect();
    order.sort_unstable_by_key(|&i| letters[i]);
    let mut out = vec![0; letters.len()];
    for (rank, i) in order.into_iter().enumerate() {
        out[i] = rank as u32 + 1;
    }
    out
}

pub(crate) fn check_indices(r: &[usize], len: usize) -> Result<()> {
    let increasing = r.windows(2).all(|w| w[0] < w[1]);
    if !increasing || r.first().is_some_and(|&x| x == 0) || r.last().is_some_and(|&x| x > len) {
        return Err(Error::IndexOutOfRange {
            indices: r.to_vec(),
            len,
        });
    }
    Ok(())
}

/// Deletes the letters at one-based indices `r` (validated by the caller)
/// and lowers each survivor by the number of deleted letters below it.
pub(crate) fn delete_letters(letters: &[u32], r: &[usize]) -> Vec<u32> {
    let removed: Vec<u32> = r.iter().map(|&i| letters[i - 1]).collect();
    letters
        .iter()
        .enumerate()
        .filter(|(i, _)| r.binary_search(&(i + 1)).is_err())
        .map(|(_, &x)| x - removed.iter().filter(|&&y| y < x).count() as u32)
        .collect()
}
