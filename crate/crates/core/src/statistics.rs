//! Permutation statistics, their margins and deletion differences.
//!
//! A statistic is *ES-compatible with margin `m`* when the change
//! `f(π) − f(d_R(π))` is fixed by the length of `π` and its first
//! `max R + m` letters. [`Statistic::delta`] computes that change from the
//! prefix alone; [`Statistic::eval`] evaluates the statistic directly and is
//! what the brute-force oracle uses.

use std::fmt;

use crate::error::{Error, Result};
use crate::pattern::{Symmetry, VincularPattern};
use crate::perm::{reduce_unchecked, Perm, Word};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Statistic {
    /// Copies of the consecutive pattern `(σ, [t−1])`. Margin `t − 1`.
    Consecutive(VincularPattern),
    /// Copies of `σ_1 … σ_{t−1} - σ_t`, i.e. `(σ, [t−2])`. Margin `t − 2`.
    TailVincular(VincularPattern),
    /// Copies of `σ_1 - σ_2 … σ_t`. Not ES-compatible; reverse it to get a
    /// tail pattern.
    HeadVincular(VincularPattern),
    RtlMax,
    RtlMin,
    /// Not ES-compatible.
    LtrMax,
    /// Not ES-compatible.
    LtrMin,
    /// Right-to-left maximal copies of a consecutive pattern.
    RtlMaxCopies(VincularPattern),
}

impl Statistic {
    pub fn consecutive(sigma: Perm) -> Result<Self> {
        if sigma.is_empty() {
            return Err(Error::InvalidPattern(
                "consecutive statistic needs a nonempty pattern".into(),
            ));
        }
        Ok(Statistic::Consecutive(VincularPattern::consecutive(sigma)))
    }

    pub fn tail(sigma: Perm) -> Result<Self> {
        let t = sigma.len();
        if t < 2 {
            return Err(Error::InvalidPattern(format!(
                "tail-vincular statistic needs length at least 2, got {sigma}"
            )));
        }
        Ok(Statistic::TailVincular(VincularPattern::new(
            sigma,
            1..t - 1,
        )?))
    }

    /// Length 2 gives the classical pattern, which is also tail-vincular,
    /// so it is stored in that form.
    pub fn head(sigma: Perm) -> Result<Self> {
        let t = sigma.len();
        if t < 2 {
            return Err(Error::InvalidPattern(format!(
                "head-vincular statistic needs length at least 2, got {sigma}"
            )));
        }
        if t == 2 {
            return Statistic::tail(sigma);
        }
        Ok(Statistic::HeadVincular(VincularPattern::new(sigma, 2..t)?))
    }

    pub fn rtl_max_copies(sigma: Perm) -> Result<Self> {
        if sigma.is_empty() {
            return Err(Error::InvalidPattern(
                "rtl-maximal copies need a nonempty pattern".into(),
            ));
        }
        Ok(Statistic::RtlMaxCopies(VincularPattern::consecutive(sigma)))
    }

    fn sigma(&self) -> Option<&Perm> {
        match self {
            Statistic::Consecutive(p)
            | Statistic::TailVincular(p)
            | Statistic::HeadVincular(p)
            | Statistic::RtlMaxCopies(p) => Some(p.sigma()),
            _ => None,
        }
    }

    /// The margin with which this statistic is ES-compatible, or
    /// [`Error::NotEsCompatible`].
    ///
    /// Right-to-left maximal copies of a pattern of length `t ≥ 2` are
    /// rejected: whether a copy inside the prefix is maximal depends on how
    /// the suffix is arranged, so no finite margin fixes the deletion
    /// difference (see the `rtl_copies_are_not_es_compatible` test). Length 1
    /// is plain `rtlmax`.
    pub fn margin(&self) -> Result<usize> {
        let t = self.sigma().map_or(0, Perm::len);
        match self {
            Statistic::Consecutive(_) => Ok(t - 1),
            Statistic::TailVincular(_) => Ok(t - 2),
            Statistic::RtlMax | Statistic::RtlMin => Ok(0),
            Statistic::RtlMaxCopies(_) if t == 1 => Ok(0),
            _ => Err(Error::NotEsCompatible(self.to_string())),
        }
    }

    pub fn eval(&self, pi: &[u32]) -> i64 {
        match self {
            Statistic::Consecutive(p) | Statistic::TailVincular(p) | Statistic::HeadVincular(p) => {
                p.count_copies(pi) as i64
            }
            Statistic::RtlMax => rtl_extrema(pi, |a, b| a > b),
            Statistic::RtlMin => rtl_extrema(pi, |a, b| a < b),
            Statistic::LtrMax => ltr_extrema(pi, |a, b| a > b),
            Statistic::LtrMin => ltr_extrema(pi, |a, b| a < b),
            Statistic::RtlMaxCopies(p) => rtl_maximal_copies(p.sigma().letters(), pi),
        }
    }

    /// `Δ_R(w, n)`: the value of `f(π) − f(d_R(π))` shared by every
    /// permutation `π` of length `w.n()` that starts with `w`.
    pub fn delta(&self, r: &[usize], w: &Word) -> Result<i64> {
        let m = self.margin()?;
        let max_r = r.last().copied().unwrap_or(0);
        if max_r + m > w.len() {
            return Err(Error::Clearance {
                stat: self.to_string(),
                margin: m,
                max_r,
                len: w.len(),
            });
        }
        if r.is_empty() {
            return Ok(0);
        }
        let deleted = w.delete(r)?;
        Ok(match self {
            Statistic::Consecutive(p) => {
                p.count_copies(w.letters()) as i64 - p.count_copies(deleted.letters()) as i64
            }
            Statistic::TailVincular(p) => {
                tail_prefix_sum(p.sigma(), w) - tail_prefix_sum(p.sigma(), &deleted)
            }
            Statistic::RtlMax | Statistic::RtlMaxCopies(_) => {
                rtl_max_star(w.letters(), w.n()) - rtl_max_star(deleted.letters(), deleted.n())
            }
            Statistic::RtlMin => rtl_min_star(w.letters()) - rtl_min_star(deleted.letters()),
            _ => unreachable!("margin() rejects the remaining kinds"),
        })
    }

    /// `f ∘ s`: the statistic whose value on `π` is this one's value on `s(π)`.
    pub fn transformed(&self, s: Symmetry) -> Result<Statistic> {
        use Statistic::*;
        let flip = |p: &VincularPattern| s.apply_perm(p.sigma());
        let reversing = matches!(s, Symmetry::Reverse | Symmetry::ReverseComplement);
        let complementing = matches!(s, Symmetry::Complement | Symmetry::ReverseComplement);
        Ok(match self {
            Consecutive(p) => Statistic::consecutive(flip(p))?,
            TailVincular(p) if reversing => Statistic::head(flip(p))?,
            TailVincular(p) => Statistic::tail(flip(p))?,
            HeadVincular(p) if reversing => Statistic::tail(flip(p))?,
            HeadVincular(p) => Statistic::head(flip(p))?,
            RtlMax | RtlMin | LtrMax | LtrMin => {
                let (rtl, max) = match self {
                    RtlMax => (true, true),
                    RtlMin => (true, false),
                    LtrMax => (false, true),
                    _ => (false, false),
                };
                match (rtl != reversing, max != complementing) {
                    (true, true) => RtlMax,
                    (true, false) => RtlMin,
                    (false, true) => LtrMax,
                    (false, false) => LtrMin,
                }
            }
            RtlMaxCopies(_) if s == Symmetry::Identity => self.clone(),
            RtlMaxCopies(_) => {
                return Err(Error::NotEsCompatible(format!(
                    "{self} has no counterpart under symmetry {s}"
                )))
            }
        })
    }
}

impl fmt::Display for Statistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statistic::Consecutive(p) => write!(f, "cons:{p}"),
            Statistic::TailVincular(p) => write!(f, "tail:{p}"),
            Statistic::HeadVincular(p) => write!(f, "head:{p}"),
            Statistic::RtlMax => f.write_str("rtlmax"),
            Statistic::RtlMin => f.write_str("rtlmin"),
            Statistic::LtrMax => f.write_str("ltrmax"),
            Statistic::LtrMin => f.write_str("ltrmin"),
            Statistic::RtlMaxCopies(p) => write!(f, "rtlcopies:{p}"),
        }
    }
}

fn rtl_extrema(pi: &[u32], beats: impl Fn(u32, u32) -> bool) -> i64 {
    let mut best: Option<u32> = None;
    let mut count = 0;
    for &x in pi.iter().rev() {
        if best.is_none_or(|b| beats(x, b)) {
            best = Some(x);
            count += 1;
        }
    }
    count
}

fn ltr_extrema(pi: &[u32], beats: impl Fn(u32, u32) -> bool) -> i64 {
    let mut best: Option<u32> = None;
    let mut count = 0;
    for &x in pi {
        if best.is_none_or(|b| beats(x, b)) {
            best = Some(x);
            count += 1;
        }
    }
    count
}

/// Copies of the consecutive pattern `sigma` whose smallest letter beats the
/// smallest letter of every copy starting further right.
fn rtl_maximal_copies(sigma: &[u32], pi: &[u32]) -> i64 {
    let t = sigma.len();
    if pi.len() < t {
        return 0;
    }
    let min_at = sigma.iter().position(|&x| x == 1).unwrap();
    let mut best: Option<u32> = None;
    let mut count = 0;
    for i in (0..=pi.len() - t).rev() {
        let window = &pi[i..i + t];
        if reduce_unchecked(window) == sigma {
            let low = window[min_at];
            if best.is_none_or(|b| low > b) {
                count += 1;
            }
            best = Some(best.map_or(low, |b| b.max(low)));
        }
    }
    count
}

/// Prefix letters already known to be right-to-left maxima: every larger
/// value in `1..=n` sits to their left.
pub fn rtl_max_star(w: &[u32], n: u32) -> i64 {
    (0..w.len())
        .filter(|&i| {
            let x = w[i];
            let larger_left = w[..i].iter().filter(|&&y| y > x).count() as u32;
            larger_left == n - x
        })
        .count() as i64
}

/// Prefix letters already known to be right-to-left minima: every smaller
/// value sits to their left.
pub fn rtl_min_star(w: &[u32]) -> i64 {
    (0..w.len())
        .filter(|&i| {
            let x = w[i];
            w[..i].iter().filter(|&&y| y < x).count() as u32 == x - 1
        })
        .count() as i64
}

/// `h_i(w, n)` for the tail-vincular pattern `σ_1 … σ_{t−1} - σ_t`: how many
/// letters of the whole permutation complete the window starting at the
/// one-based index `i` to a copy of `σ`. Zero unless the window matches
/// `σ_1 … σ_{t−1}`.
pub fn tail_h(sigma: &Perm, w: &Word, i: usize) -> i64 {
    let s = sigma.letters();
    let t = s.len();
    let window = &w.letters()[i - 1..i + t - 2];
    if reduce_unchecked(window) != reduce_unchecked(&s[..t - 1]) {
        return 0;
    }
    let last = s[t - 1];
    if last == 1 {
        *window.iter().min().unwrap() as i64 - 1
    } else if last as usize == t {
        w.n() as i64 - *window.iter().max().unwrap() as i64
    } else {
        let a = s.iter().position(|&x| x == last - 1).unwrap();
        let b = s.iter().position(|&x| x == last + 1).unwrap();
        window[b] as i64 - window[a] as i64 - 1
    }
}

/// `h'_i(w)`: letters left of index `i` that would complete the window to a
/// copy of `σ`. These are counted by [`tail_h`] but precede the window.
pub fn tail_h_prime(sigma: &Perm, w: &Word, i: usize) -> i64 {
    let s = sigma.letters();
    let t = s.len();
    let letters = w.letters();
    let mut buf: Vec<u32> = letters[i - 1..i + t - 2].to_vec();
    buf.push(0);
    (0..i - 1)
        .filter(|&j| {
            buf[t - 1] = letters[j];
            reduce_unchecked(&buf) == s
        })
        .count() as i64
}

fn tail_prefix_sum(sigma: &Perm, w: &Word) -> i64 {
    let t = sigma.len();
    let k = w.len();
    if k + 2 < t + 1 {
        return 0;
    }
    (1..=k + 2 - t)
        .map(|i| tail_h(sigma, w, i) - tail_h_prime(sigma, w, i))
        .sum()
}

/// An integer linear combination of statistics.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CompositeStatistic {
    name: String,
    terms: Vec<(i64, Statistic)>,
}

impl CompositeStatistic {
    pub fn new(name: impl Into<String>, terms: Vec<(i64, Statistic)>) -> Self {
        CompositeStatistic {
            name: name.into(),
            terms,
        }
    }

    pub fn single(stat: Statistic) -> Self {
        CompositeStatistic {
            name: stat.to_string(),
            terms: vec![(1, stat)],
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn terms(&self) -> &[(i64, Statistic)] {
        &self.terms
    }

    pub fn margin(&self) -> Result<usize> {
        self.terms
            .iter()
            .map(|(_, s)| s.margin())
            .try_fold(0, |acc, m| m.map(|m| acc.max(m)))
    }

    pub fn eval(&self, pi: &[u32]) -> i64 {
        self.terms.iter().map(|(c, s)| c * s.eval(pi)).sum()
    }

    pub fn delta(&self, r: &[usize], w: &Word) -> Result<i64> {
        self.terms
            .iter()
            .map(|(c, s)| s.delta(r, w).map(|d| c * d))
            .sum()
    }

    /// Same name, terms rewritten so that evaluating on `s(π)` gives the
    /// original value on `π`.
    pub fn transformed(&self, s: Symmetry) -> Result<Self> {
        Ok(CompositeStatistic {
            name: self.name.clone(),
            terms: self
                .terms
                .iter()
                .map(|(c, t)| t.transformed(s).map(|t| (*c, t)))
                .collect::<Result<_>>()?,
        })
    }
}

impl fmt::Display for CompositeStatistic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

pub const BUILTIN_NAMES: [&str; 7] = ["inv", "des", "peak", "vall", "rtlmax", "rtlmin", "rmaj"];

/// Resolves a statistic name: one of [`BUILTIN_NAMES`], `maj`, `ltrmax`,
/// `ltrmin`, or `cons:<pattern>`, `tail:<pattern>`, `rtlcopies:<pattern>`.
pub fn builtin(name: &str) -> Result<CompositeStatistic> {
    let name = name.trim();
    let perm = |s: &str| s.parse::<Perm>().expect("builtin literal");
    let cons = |s: &str| Statistic::consecutive(perm(s)).unwrap();
    let tail = |s: &str| Statistic::tail(perm(s)).unwrap();
    let head = |s: &str| Statistic::head(perm(s)).unwrap();
    let composite = |terms: Vec<Statistic>| {
        CompositeStatistic::new(name, terms.into_iter().map(|t| (1, t)).collect())
    };
    Ok(match name {
        "inv" => composite(vec![tail("21")]),
        "des" => composite(vec![cons("21")]),
        "peak" => composite(vec![cons("132"), cons("231")]),
        "vall" => composite(vec![cons("213"), cons("312")]),
        "rtlmax" => composite(vec![Statistic::RtlMax]),
        "rtlmin" => composite(vec![Statistic::RtlMin]),
        "ltrmax" => composite(vec![Statistic::LtrMax]),
        "ltrmin" => composite(vec![Statistic::LtrMin]),
        "rmaj" => composite(vec![tail("123"), tail("132"), tail("231"), cons("12")]),
        "maj" => composite(vec![head("321"), head("231"), head("132"), cons("21")]),
        _ => {
            let (kind, pat) = name
                .split_once(':')
                .ok_or_else(|| Error::UnknownStatistic(name.to_string()))?;
            let pat: VincularPattern = pat.parse()?;
            let shape_err = |want: &str| {
                Error::InvalidPattern(format!(
                    "{pat} is not a {want} pattern (statistic {name:?})"
                ))
            };
            let t = pat.len();
            let stat = match kind {
                "cons" if pat.adjacencies().len() == t - 1 => Statistic::Consecutive(pat),
                "cons" => return Err(shape_err("consecutive")),
                "tail" if t >= 2 && pat.adjacencies() == (1..t - 1).collect() => {
                    Statistic::TailVincular(pat)
                }
                "tail" => return Err(shape_err("tail-vincular")),
                "rtlcopies" if pat.adjacencies().len() == t - 1 => Statistic::RtlMaxCopies(pat),
                "rtlcopies" => return Err(shape_err("consecutive")),
                _ => return Err(Error::UnknownStatistic(name.to_string())),
            };
            composite(vec![stat])
        }
    })
}

/// Parses a comma-separated list of statistic names.
pub fn parse_stats(s: &str) -> Result<Vec<CompositeStatistic>> {
    s.split(',')
        .map(str::trim)
        .filter(|p| !p.is_empty())
        .map(builtin)
        .collect()
}

/// Several statistics tracked jointly, one indeterminate each.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiStat {
    stats: Vec<CompositeStatistic>,
}

impl MultiStat {
    pub fn new(stats: Vec<CompositeStatistic>) -> Result<Self> {
        if stats.is_empty() {
            return Err(Error::UnknownStatistic("empty statistic list".into()));
        }
        Ok(MultiStat { stats })
    }

    pub fn single(stat: CompositeStatistic) -> Self {
        MultiStat { stats: vec![stat] }
    }

    pub fn parse(s: &str) -> Result<Self> {
        MultiStat::new(parse_stats(s)?)
    }

    pub fn stats(&self) -> &[CompositeStatistic] {
        &self.stats
    }

    pub fn arity(&self) -> usize {
        self.stats.len()
    }

    pub fn margin(&self) -> Result<usize> {
        self.stats
            .iter()
            .map(CompositeStatistic::margin)
            .try_fold(0, |acc, m| m.map(|m| acc.max(m)))
    }

    pub fn names(&self) -> Vec<String> {
        self.stats.iter().map(|s| s.name().to_string()).collect()
    }

    pub fn transformed(&self, s: Symmetry) -> Result<Self> {
        Ok(MultiStat {
            stats: self
                .stats
                .iter()
                .map(|c| c.transformed(s))
                .collect::<Result<_>>()?,
        })
    }
}
