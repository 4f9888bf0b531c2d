//! Reads a scheme as a memoized system of recurrences.
//!
//! A state is a prefix pattern `p` together with the spacing vector `g` of
//! the concrete prefix word; the word itself is rebuilt from the pair when a
//! deletion difference needs it. At each state:
//!
//! 1. if `g` lies above a gap vector of `p` the set is empty;
//! 2. if `p` has a deletion set `R`, recurse on `(d_R(p), g(d_R(w)))` and
//!    multiply by `q^Δ`;
//! 3. otherwise sum over the next letter, which splits one gap in two.

use std::collections::HashMap;

use num_bigint::BigUint;

use crate::discovery::{discover_for_stats, Outcome, SearchBounds};
use crate::error::{Error, Result};
use crate::pattern::{avoids_all, Symmetry, VincularPattern};
use crate::perm::{reconstruct_unchecked, Perm};
use crate::poly::DistPolynomial;
use crate::scheme::Scheme;
use crate::statistics::MultiStat;

type MemoKey = (Perm, Vec<u32>);

/// One evaluation session: a scheme, the statistics being tracked and a
/// private memo table that is reused across `n`.
#[derive(Debug)]
pub struct Evaluator<'s> {
    scheme: &'s Scheme,
    /// Already transformed to act on the class the scheme counts.
    stats: Option<MultiStat>,
    memo: HashMap<MemoKey, DistPolynomial>,
    memoize: bool,
}

impl<'s> Evaluator<'s> {
    /// Counting only.
    pub fn counting(scheme: &'s Scheme) -> Result<Self> {
        scheme.validate()?;
        Ok(Evaluator {
            scheme,
            stats: None,
            memo: HashMap::new(),
            memoize: true,
        })
    }

    /// Tracks `stats`, given on the class the caller asked about. They are
    /// rewritten through the scheme's symmetry before use.
    pub fn with_stats(scheme: &'s Scheme, stats: &MultiStat) -> Result<Self> {
        scheme.validate()?;
        let stats = stats.transformed(scheme.symmetry)?;
        let margin = stats.margin()?;
        let clearance = scheme.clearance();
        if !clearance.covers(margin) {
            return Err(Error::ClearanceShortfall {
                clearance: clearance.to_string(),
                margin,
            });
        }
        Ok(Evaluator {
            scheme,
            stats: Some(stats),
            memo: HashMap::new(),
            memoize: true,
        })
    }

    /// Turns the memo table off; only useful for checking that it is sound.
    pub fn without_memo(mut self) -> Self {
        self.memoize = false;
        self.memo.clear();
        self
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    fn arity(&self) -> usize {
        self.stats.as_ref().map_or(0, MultiStat::arity)
    }

    pub fn count(&mut self, n: u32) -> Result<BigUint> {
        Ok(self.evaluate(n)?.at_one())
    }

    pub fn distribution(&mut self, n: u32) -> Result<DistPolynomial> {
        let p = self.evaluate(n)?;
        p.check_nonnegative()?;
        Ok(p)
    }

    /// Counts for `n = 1..=n_max`.
    pub fn sequence(&mut self, n_max: u32) -> Result<Vec<BigUint>> {
        (1..=n_max).map(|n| self.count(n)).collect()
    }

    fn evaluate(&mut self, n: u32) -> Result<DistPolynomial> {
        self.eval(Perm::empty(), vec![n])
    }

    fn eval(&mut self, p: Perm, g: Vec<u32>) -> Result<DistPolynomial> {
        if self.memoize {
            if let Some(v) = self.memo.get(&(p.clone(), g.clone())) {
                return Ok(v.clone());
            }
        }
        let value = self.compute(&p, &g)?;
        if self.memoize {
            self.memo.insert((p, g), value.clone());
        }
        Ok(value)
    }

    fn compute(&mut self, p: &Perm, g: &[u32]) -> Result<DistPolynomial> {
        let scheme = self.scheme;
        let arity = self.arity();
        let t = scheme.get(p).ok_or_else(|| {
            Error::Invariant(format!("evaluation reached prefix {p} outside the scheme"))
        })?;
        if t.gap_hit(g) {
            return Ok(DistPolynomial::zero(arity));
        }
        if g.iter().all(|&x| x == 0) {
            if !avoids_all(p.letters(), &scheme.patterns) {
                return Ok(DistPolynomial::zero(arity));
            }
            let e = match &self.stats {
                Some(ms) => ms.stats().iter().map(|s| s.eval(p.letters())).collect(),
                None => Vec::new(),
            };
            return Ok(DistPolynomial::monomial(e));
        }
        if !t.rd.is_empty() {
            let w = reconstruct_unchecked(p.letters(), g);
            let shift = match &self.stats {
                Some(ms) => ms
                    .stats()
                    .iter()
                    .map(|s| s.delta(&t.rd, &w))
                    .collect::<Result<Vec<i64>>>()?,
                None => Vec::new(),
            };
            let image = w.delete(&t.rd)?;
            let sub = self.eval(image.reduce(), image.spacing_vector().0)?;
            return Ok(sub.shifted(&shift));
        }
        let mut total = DistPolynomial::zero(arity);
        for i in 0..g.len() {
            for j in 0..g[i] {
                let mut h = Vec::with_capacity(g.len() + 1);
                h.extend_from_slice(&g[..i]);
                h.push(j);
                h.push(g[i] - 1 - j);
                h.extend_from_slice(&g[i + 1..]);
                let sub = self.eval(p.child(i as u32 + 1), h)?;
                total.add_assign(&sub);
            }
        }
        Ok(total)
    }
}

/// `|Av_n(B)|` for the class the scheme counts.
pub fn count(s: &Scheme, n: u32) -> Result<BigUint> {
    Evaluator::counting(s)?.count(n)
}

/// `F(Av_n(B), f, q)` where `B` is the scheme's source pattern set.
pub fn distribution(s: &Scheme, stats: &MultiStat, n: u32) -> Result<DistPolynomial> {
    Evaluator::with_stats(s, stats)?.distribution(n)
}

/// Counts for `n = 1..=n_max`.
pub fn sequence(s: &Scheme, n_max: u32) -> Result<Vec<BigUint>> {
    Evaluator::counting(s)?.sequence(n_max)
}

/// Comma-separated terms, as sequence databases expect them.
pub fn oeis_format(terms: &[BigUint]) -> String {
    terms
        .iter()
        .map(|t| t.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// `F(Av_n(B), f, q)` computed from a scheme for `Bʳ`, tracking the reversed
/// statistics (so `maj` becomes `rmaj`).
pub fn distribution_via_reversal(
    patterns: &[VincularPattern],
    stats: &MultiStat,
    n: u32,
    bounds: &SearchBounds,
) -> Result<DistPolynomial> {
    let s = reversed_scheme(patterns, stats, bounds)?;
    distribution(&s, stats, n)
}

/// A scheme for `Bʳ` deep enough for the reversed statistics.
pub fn reversed_scheme(
    patterns: &[VincularPattern],
    stats: &MultiStat,
    bounds: &SearchBounds,
) -> Result<Scheme> {
    match discover_for_stats(patterns, stats, 0, &[Symmetry::Reverse], bounds)? {
        Outcome::Found(s) => Ok(s),
        Outcome::Exhausted(f) => Err(Error::NoScheme(
            f.iter()
                .map(|f| f.to_string())
                .collect::<Vec<_>>()
                .join("; "),
        )),
    }
}
