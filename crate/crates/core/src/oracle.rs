//! Brute-force ground truth.
//!
//! Permutations are grown left to right and a branch is cut as soon as the
//! placed letters contain a copy of a forbidden pattern. Because adjacency
//! sets never touch the ends of a pattern, a copy inside a prefix stays a copy
//! in every extension, so the cut never loses an avoider.

use std::ops::ControlFlow;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::pattern::VincularPattern;
use crate::perm::{Perm, Word};
use crate::poly::DistPolynomial;
use crate::statistics::MultiStat;

pub const DEFAULT_CAP: u32 = 12;

/// `Spt(n; B; red(w); w)`: avoiders of `B` of length `w.n()` starting with `w`.
#[derive(Clone, Debug)]
pub struct PrefixQuery<'a> {
    pub patterns: &'a [VincularPattern],
    pub prefix: Word,
}

impl<'a> PrefixQuery<'a> {
    pub fn new(n: u32, patterns: &'a [VincularPattern], prefix: &[u32]) -> Result<Self> {
        Ok(PrefixQuery {
            patterns,
            prefix: Word::new(prefix.to_vec(), n)?,
        })
    }

    /// All of `Av_n(B)`.
    pub fn all(n: u32, patterns: &'a [VincularPattern]) -> Self {
        PrefixQuery {
            patterns,
            prefix: Word::from_parts_unchecked(Vec::new(), n),
        }
    }

    pub fn n(&self) -> u32 {
        self.prefix.n()
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Oracle {
    pub cap: u32,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { cap: DEFAULT_CAP }
    }
}

impl Oracle {
    pub fn with_cap(cap: u32) -> Self {
        Oracle { cap }
    }

    fn check(&self, n: u32) -> Result<()> {
        if n > self.cap {
            return Err(Error::OracleCap { n, cap: self.cap });
        }
        Ok(())
    }

    /// Members in lexicographic order.
    pub fn enumerate(&self, q: &PrefixQuery) -> Result<Vec<Perm>> {
        let mut out = Vec::new();
        self.for_each(q, |pi| {
            out.push(Perm::from_vec_unchecked(pi.to_vec()));
            ControlFlow::Continue(())
        })?;
        Ok(out)
    }

    pub fn count(&self, q: &PrefixQuery) -> Result<u64> {
        let mut c = 0u64;
        self.for_each(q, |_| {
            c += 1;
            ControlFlow::Continue(())
        })?;
        Ok(c)
    }

    pub fn exists(&self, q: &PrefixQuery) -> Result<bool> {
        let mut found = false;
        self.for_each(q, |_| {
            found = true;
            ControlFlow::Break(())
        })?;
        Ok(found)
    }

    /// Visits members in lexicographic order until `visit` breaks.
    pub fn for_each(
        &self,
        q: &PrefixQuery,
        mut visit: impl FnMut(&[u32]) -> ControlFlow<()>,
    ) -> Result<()> {
        self.check(q.n())?;
        let _ = for_each_avoider(q.n(), q.patterns, q.prefix.letters(), &mut visit);
        Ok(())
    }
}

/// Whether any copy of any pattern ends at index `end`.
pub(crate) fn copy_ends_at(seq: &[u32], patterns: &[VincularPattern], end: usize) -> bool {
    patterns.iter().any(|b| b.occurs_ending_at(seq, end))
}

pub(crate) fn for_each_avoider(
    n: u32,
    patterns: &[VincularPattern],
    prefix: &[u32],
    visit: &mut impl FnMut(&[u32]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if (0..prefix.len()).any(|i| copy_ends_at(prefix, patterns, i)) {
        return ControlFlow::Continue(());
    }
    let mut used = vec![false; n as usize + 1];
    for &x in prefix {
        used[x as usize] = true;
    }
    let mut seq = prefix.to_vec();
    grow(n, patterns, &mut seq, &mut used, visit)
}

fn grow(
    n: u32,
    patterns: &[VincularPattern],
    seq: &mut Vec<u32>,
    used: &mut [bool],
    visit: &mut impl FnMut(&[u32]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    if seq.len() == n as usize {
        return visit(seq);
    }
    for v in 1..=n {
        if used[v as usize] {
            continue;
        }
        seq.push(v);
        if !copy_ends_at(seq, patterns, seq.len() - 1) {
            used[v as usize] = true;
            let flow = grow(n, patterns, seq, used, visit);
            used[v as usize] = false;
            if flow.is_break() {
                seq.pop();
                return flow;
            }
        }
        seq.pop();
    }
    ControlFlow::Continue(())
}

/// `|Av_n(B)|` by exhaustive search.
pub fn brute_count(n: u32, patterns: &[VincularPattern]) -> Result<u64> {
    Oracle::default().count(&PrefixQuery::all(n, patterns))
}

/// `F(Av_n(B), f, q)` by summing a monomial per avoider.
pub fn brute_distribution(
    n: u32,
    patterns: &[VincularPattern],
    stats: &MultiStat,
) -> Result<DistPolynomial> {
    let mut poly = DistPolynomial::zero(stats.arity());
    Oracle::default().for_each(&PrefixQuery::all(n, patterns), |pi| {
        let e = stats.stats().iter().map(|s| s.eval(pi)).collect();
        poly.add_term(e, BigUint::from(1u32));
        ControlFlow::Continue(())
    })?;
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{avoids_all, parse_pattern_set};
    use crate::statistics::builtin;

    fn pats(s: &str) -> Vec<VincularPattern> {
        parse_pattern_set(s).unwrap()
    }

    fn strs(perms: &[Perm]) -> Vec<String> {
        perms.iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn prefix_query_examples() {
        let b = pats("1-2-3");
        let o = Oracle::default();
        let q = PrefixQuery::new(5, &b, &[5, 3]).unwrap();
        assert_eq!(
            strs(&o.enumerate(&q).unwrap()),
            vec!["53142", "53214", "53241", "53412", "53421"]
        );
        assert_eq!(o.enumerate(&PrefixQuery::all(3, &[])).unwrap().len(), 6);
        let q = PrefixQuery::new(5, &b, &[1, 2]).unwrap();
        assert!(o.enumerate(&q).unwrap().is_empty());
        assert!(!o.exists(&q).unwrap());
        assert!(matches!(
            o.count(&PrefixQuery::all(13, &b)),
            Err(Error::OracleCap { n: 13, cap: 12 })
        ));
    }

    #[test]
    fn brute_values() {
        assert_eq!(brute_count(5, &pats("1-2-3")).unwrap(), 42);
        let peak = MultiStat::single(builtin("peak").unwrap());
        assert_eq!(
            brute_distribution(5, &pats("1-2-3"), &peak).unwrap(),
            DistPolynomial::univariate(&[(0, 5), (1, 32), (2, 5)])
        );
        let des = MultiStat::single(builtin("des").unwrap());
        assert_eq!(
            brute_distribution(3, &[], &des).unwrap(),
            DistPolynomial::univariate(&[(0, 1), (1, 4), (2, 1)])
        );
        assert_eq!(brute_count(0, &pats("1-2-3")).unwrap(), 1);
    }

    #[test]
    fn prefix_sets_partition_the_class() {
        for b in ["1-2-3", "2-31", "1-32", "21-3,1-2-3-4"] {
            let b = pats(b);
            for n in 1..=8u32 {
                let total = brute_count(n, &b).unwrap();
                for k in 1..=2.min(n as usize) {
                    let mut sum = 0;
                    for_each_word(n, k, &mut |w| {
                        sum += Oracle::default()
                            .count(&PrefixQuery::new(n, &b, w).unwrap())
                            .unwrap();
                    });
                    assert_eq!(sum, total);
                }
            }
        }
    }

    fn for_each_word(n: u32, k: usize, f: &mut impl FnMut(&[u32])) {
        fn go(n: u32, k: usize, cur: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
            if cur.len() == k {
                f(cur);
                return;
            }
            for v in 1..=n {
                if !cur.contains(&v) {
                    cur.push(v);
                    go(n, k, cur, f);
                    cur.pop();
                }
            }
        }
        go(n, k, &mut Vec::new(), f);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn pattern_set() -> impl Strategy<Value = Vec<VincularPattern>> {
            let one = (2usize..=4).prop_flat_map(|k| {
                (
                    Just((1..=k as u32).collect::<Vec<_>>()).prop_shuffle(),
                    proptest::collection::vec(any::<bool>(), k - 1),
                )
                    .prop_map(|(s, adj)| {
                        let x = adj
                            .iter()
                            .enumerate()
                            .filter(|(_, &a)| a)
                            .map(|(j, _)| j + 1);
                        VincularPattern::new(Perm::new(s).unwrap(), x).unwrap()
                    })
            });
            proptest::collection::vec(one, 0..=2)
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]
            #[test]
            fn pruning_matches_filtering(b in pattern_set(), n in 0u32..=7) {
                let pruned = Oracle::default().enumerate(&PrefixQuery::all(n, &b)).unwrap();
                let filtered: Vec<Perm> = Oracle::default()
                    .enumerate(&PrefixQuery::all(n, &[]))
                    .unwrap()
                    .into_iter()
                    .filter(|p| avoids_all(p.letters(), &b))
                    .collect();
                prop_assert_eq!(pruned, filtered);
            }
        }
    }
}
