//! Automated search for enumeration schemes.
//!
//! Gap vectors and reversibly deletable sets are verified empirically for
//! every ambient size up to [`SearchBounds::verify_n`], using the prefix
//! enumerator of the [`oracle`](crate::oracle) module. Nothing here is a
//! proof; schemes record the bound they were checked to.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::oracle::{copy_ends_at, for_each_avoider, DEFAULT_CAP};
use crate::pattern::{Symmetry, VincularPattern};
use crate::perm::{delete_letters, dominates, reconstruct_unchecked, Perm, SpacingVector, Word};
use crate::scheme::{Scheme, SchemeTriple};
use crate::statistics::MultiStat;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBounds {
    /// Longest prefix the search may create.
    pub max_depth: usize,
    /// Largest component sum of a candidate gap vector.
    pub max_gap_sum: u32,
    /// Largest ambient size used when checking gap vectors and deletions.
    pub verify_n: u32,
}

impl SearchBounds {
    /// Defaults scaled to the longest pattern in `patterns`.
    pub fn for_patterns(patterns: &[VincularPattern]) -> Self {
        let len = longest(patterns);
        let max_depth = 4.max(len);
        let max_gap_sum = len.saturating_sub(1).max(1) as u32;
        let verify_n = ((max_depth + 2 * len + 2) as u32)
            .min(DEFAULT_CAP)
            .max(max_depth as u32 + max_gap_sum + 1);
        SearchBounds {
            max_depth,
            max_gap_sum,
            verify_n,
        }
    }

    pub fn with_max_depth(self, max_depth: usize) -> Self {
        let mut b = self;
        b.max_depth = max_depth;
        b.verify_n = b.verify_n.max(max_depth as u32 + b.max_gap_sum + 1);
        b
    }

    pub fn validate(&self, patterns: &[VincularPattern]) -> Result<()> {
        let len = longest(patterns) as u32;
        let depth = self.max_depth as u32;
        if self.max_depth < 1 {
            return Err(Error::Bounds("max_depth must be at least 1".into()));
        }
        let need = (depth + len + 1).max(depth + self.max_gap_sum + 1);
        if self.verify_n < need {
            return Err(Error::Bounds(format!(
                "verify_n = {} is too small for max_depth = {} (needs at least {need})",
                self.verify_n, self.max_depth
            )));
        }
        if self.verify_n > DEFAULT_CAP {
            return Err(Error::Bounds(format!(
                "verify_n = {} exceeds the brute-force cap {DEFAULT_CAP}",
                self.verify_n
            )));
        }
        Ok(())
    }
}

/// `depth:gapsum:verify`.
impl FromStr for SearchBounds {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || Error::Bounds(format!("expected depth:gapsum:verify, got {s:?}"));
        if parts.len() != 3 {
            return Err(bad());
        }
        Ok(SearchBounds {
            max_depth: parts[0].trim().parse().map_err(|_| bad())?,
            max_gap_sum: parts[1].trim().parse().map_err(|_| bad())?,
            verify_n: parts[2].trim().parse().map_err(|_| bad())?,
        })
    }
}

impl fmt::Display for SearchBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}:{}",
            self.max_depth, self.max_gap_sum, self.verify_n
        )
    }
}

fn longest(patterns: &[VincularPattern]) -> usize {
    patterns.iter().map(VincularPattern::len).max().unwrap_or(1)
}

/// All vectors of `parts` nonnegative entries summing to `total`, in
/// lexicographic order.
pub(crate) fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    fn go(total: u32, parts: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if parts == 1 {
            cur.push(total);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for x in 0..=total {
            cur.push(x);
            go(total - x, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if parts > 0 {
        go(total, parts, &mut Vec::new(), &mut out);
    }
    out
}

/// Every `(n, g)` cell with `|p| <= n <= n_max`.
fn cells(k: usize, n_max: u32) -> impl Iterator<Item = Vec<u32>> {
    (k as u32..=n_max.max(k as u32)).flat_map(move |n| compositions(n - k as u32, k + 1))
}

fn has_avoider(patterns: &[VincularPattern], p: &Perm, g: &[u32]) -> bool {
    let w = reconstruct_unchecked(p.letters(), g);
    for_each_avoider(
        w.n(),
        patterns,
        w.letters(),
        &mut |_| ControlFlow::Break(()),
    )
    .is_break()
}

/// Minimal gap vectors for `p` with component sum at most `max_gap_sum`.
pub fn find_gap_basis(
    p: &Perm,
    patterns: &[VincularPattern],
    bounds: &SearchBounds,
) -> Vec<SpacingVector> {
    let k = p.len();
    if patterns.iter().any(|b| b.occurs_in(p.letters())) {
        return vec![SpacingVector(vec![0; k + 1])];
    }
    let nonempty: Vec<Vec<u32>> = cells(k, bounds.verify_n)
        .filter(|g| has_avoider(patterns, p, g))
        .collect();
    let mut basis: Vec<SpacingVector> = Vec::new();
    for s in 0..=bounds.max_gap_sum {
        for v in compositions(s, k + 1) {
            if basis.iter().any(|b| dominates(&v, &b.0)) {
                continue;
            }
            if !nonempty.iter().any(|g| dominates(g, &v)) {
                basis.push(SpacingVector(v));
            }
        }
    }
    basis
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    /// `π` avoids every pattern but deleting created a copy.
    ImageContainsPattern,
    /// `π` contains a pattern that the deletion destroyed.
    PreimageContainsPattern,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub w: Word,
    pub pi: Perm,
    pub image: Perm,
    pub kind: WitnessKind,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            WitnessKind::ImageContainsPattern => "avoids, but its image contains a pattern",
            WitnessKind::PreimageContainsPattern => "contains a pattern, but its image avoids",
        };
        write!(
            f,
            "{} extends {} and {what} ({})",
            self.pi, self.w, self.image
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Deletability {
    Verified,
    Refuted(Witness),
}

/// Checks that deleting the positions `r` is a bijection between the
/// avoiders extending `w` and those extending `d_R(w)` for every `w` of
/// pattern `p` that misses all of `gaps`.
pub fn is_reversibly_deletable(
    p: &Perm,
    r: &[usize],
    patterns: &[VincularPattern],
    gaps: &[SpacingVector],
    bounds: &SearchBounds,
) -> Result<Deletability> {
    crate::perm::check_indices(r, p.len())?;
    if r.is_empty() {
        return Err(Error::Bounds("deletion set must be nonempty".into()));
    }
    for g in cells(p.len(), bounds.verify_n) {
        if gaps.iter().any(|v| dominates(&g, &v.0)) {
            continue;
        }
        let w = reconstruct_unchecked(p.letters(), &g);
        if let Some(wit) = find_mismatch(&w, r, patterns) {
            return Ok(Deletability::Refuted(wit));
        }
    }
    Ok(Deletability::Verified)
}

/// Searches the extensions of `w` for one whose membership in the avoider
/// class differs from that of its `d_R` image.
fn find_mismatch(w: &Word, r: &[usize], patterns: &[VincularPattern]) -> Option<Witness> {
    let n = w.n();
    let mut removed: Vec<u32> = r.iter().map(|&i| w.letters()[i - 1]).collect();
    removed.sort_unstable();
    let shift: Vec<u32> = (0..=n)
        .map(|x| x - removed.iter().filter(|&&y| y < x).count() as u32)
        .collect();
    let mut a = w.letters().to_vec();
    let mut b = delete_letters(w.letters(), r);
    let a_has = (0..a.len()).any(|i| copy_ends_at(&a, patterns, i));
    let b_has = (0..b.len()).any(|i| copy_ends_at(&b, patterns, i));
    let mut used = vec![false; n as usize + 1];
    for &x in w.letters() {
        used[x as usize] = true;
    }
    let mut st = Mismatch {
        n,
        patterns,
        shift: &shift,
        used: &mut used,
    };
    let (pi, image, kind) = st.search(&mut a, &mut b, a_has, b_has)?;
    Some(Witness {
        w: w.clone(),
        pi: Perm::from_vec_unchecked(pi),
        image: Perm::from_vec_unchecked(image),
        kind,
    })
}

struct Mismatch<'a> {
    n: u32,
    patterns: &'a [VincularPattern],
    shift: &'a [u32],
    used: &'a mut [bool],
}

impl Mismatch<'_> {
    fn search(
        &mut self,
        a: &mut Vec<u32>,
        b: &mut Vec<u32>,
        a_has: bool,
        b_has: bool,
    ) -> Option<(Vec<u32>, Vec<u32>, WitnessKind)> {
        if a_has && b_has {
            return None;
        }
        if a.len() == self.n as usize {
            return match (a_has, b_has) {
                (false, true) => Some((a.clone(), b.clone(), WitnessKind::ImageContainsPattern)),
                (true, false) => Some((a.clone(), b.clone(), WitnessKind::PreimageContainsPattern)),
                _ => None,
            };
        }
        for v in 1..=self.n {
            if self.used[v as usize] {
                continue;
            }
            a.push(v);
            b.push(self.shift[v as usize]);
            let na = a_has || copy_ends_at(a, self.patterns, a.len() - 1);
            let nb = b_has || copy_ends_at(b, self.patterns, b.len() - 1);
            self.used[v as usize] = true;
            let found = self.search(a, b, na, nb);
            self.used[v as usize] = false;
            a.pop();
            b.pop();
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

/// Nonempty subsets of `1..=m` by increasing size, then lexicographically.
pub(crate) fn candidate_sets(m: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, size: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for x in start..=m {
            cur.push(x);
            go(x + 1, m, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    for size in 1..=m {
        go(1, m, size, &mut Vec::new(), &mut out);
    }
    out
}

/// Prefixes the search could not close, for one pattern set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frontier {
    pub symmetry: Symmetry,
    pub patterns: Vec<VincularPattern>,
    pub open: Vec<Perm>,
}

impl fmt::Display for Frontier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pats: Vec<String> = self.patterns.iter().map(|p| p.to_string()).collect();
        let open: Vec<String> = self.open.iter().map(|p| p.to_string()).collect();
        write!(
            f,
            "[{}] ({}): no deletion found for {}",
            pats.join(", "),
            self.symmetry,
            open.join(" ")
        )
    }
}

#[derive(Clone, Debug)]
pub enum Outcome {
    Found(Scheme),
    Exhausted(Vec<Frontier>),
}

impl Outcome {
    pub fn scheme(self) -> Option<Scheme> {
        match self {
            Outcome::Found(s) => Some(s),
            Outcome::Exhausted(_) => None,
        }
    }
}

/// Breadth-first construction of a scheme whose deletions all satisfy
/// `R ⊆ [|p| − c]`, so that its clearance is at least `c`.
pub fn discover(patterns: &[VincularPattern], c: usize, bounds: &SearchBounds) -> Result<Outcome> {
    bounds.validate(patterns)?;
    let mut closed: BTreeMap<Perm, SchemeTriple> = BTreeMap::new();
    let mut queue: BTreeSet<Perm> = BTreeSet::from([Perm::empty()]);
    let mut open = Vec::new();
    while let Some(p) = queue.pop_first() {
        if closed.contains_key(&p) {
            continue;
        }
        let gaps = find_gap_basis(&p, patterns, bounds);
        let zero = gaps.iter().any(|g| g.sum() == 0);
        let mut rd = Vec::new();
        if !zero {
            for r in candidate_sets(p.len().saturating_sub(c)) {
                if is_reversibly_deletable(&p, &r, patterns, &gaps, bounds)?
                    == Deletability::Verified
                {
                    rd = r;
                    break;
                }
            }
        }
        let triple = SchemeTriple::new(p.clone(), gaps, rd);
        if let Some(d) = triple.deletion_target() {
            if !closed.contains_key(&d) {
                queue.insert(d);
            }
        } else if triple.expands() {
            if p.len() >= bounds.max_depth {
                open.push(p);
                continue;
            }
            queue.extend(
                p.children()
                    .into_iter()
                    .filter(|ch| !closed.contains_key(ch)),
            );
        }
        closed.insert(p, triple);
    }
    if !open.is_empty() {
        return Ok(Outcome::Exhausted(vec![Frontier {
            symmetry: Symmetry::Identity,
            patterns: patterns.to_vec(),
            open,
        }]));
    }
    let scheme = Scheme::new(patterns.to_vec(), closed.into_values(), bounds.verify_n)?;
    Ok(Outcome::Found(scheme))
}

/// Tries `B`, `Bᶜ`, `Bʳ` and `Bʳᶜ` in turn. A found scheme counts the
/// transformed class and carries the symmetry that was applied.
pub fn discover_with_symmetry(
    patterns: &[VincularPattern],
    c: usize,
    bounds: &SearchBounds,
) -> Result<Outcome> {
    discover_among(patterns, &Symmetry::SEARCH_ORDER, bounds, |_| Ok(c))
}

/// Like [`discover_with_symmetry`] restricted to `symmetries`, choosing the
/// clearance for each candidate as the larger of `min_c` and the margin of
/// the statistics after transformation. Symmetries under which some
/// statistic stops being ES-compatible are skipped.
pub fn discover_for_stats(
    patterns: &[VincularPattern],
    stats: &MultiStat,
    min_c: usize,
    symmetries: &[Symmetry],
    bounds: &SearchBounds,
) -> Result<Outcome> {
    let mut last_err = None;
    let out = discover_among(patterns, symmetries, bounds, |sym| {
        match stats.transformed(sym).and_then(|m| m.margin()) {
            Ok(m) => Ok(min_c.max(m)),
            Err(e) => {
                last_err = Some(e.clone());
                Err(e)
            }
        }
    });
    match out {
        Ok(Outcome::Exhausted(f)) if f.is_empty() => {
            Err(last_err.unwrap_or_else(|| Error::Bounds("no symmetry to try".into())))
        }
        other => other,
    }
}

fn discover_among(
    patterns: &[VincularPattern],
    symmetries: &[Symmetry],
    bounds: &SearchBounds,
    mut clearance: impl FnMut(Symmetry) -> Result<usize>,
) -> Result<Outcome> {
    let mut frontiers = Vec::new();
    let mut tried: Vec<BTreeSet<VincularPattern>> = Vec::new();
    for &sym in symmetries {
        let Ok(c) = clearance(sym) else { continue };
        let b = sym.apply_patterns(patterns);
        let key: BTreeSet<VincularPattern> = b.iter().cloned().collect();
        if tried.contains(&key) {
            continue;
        }
        tried.push(key);
        match discover(&b, c, bounds)? {
            Outcome::Found(mut s) => {
                s.symmetry = sym;
                return Ok(Outcome::Found(s));
            }
            Outcome::Exhausted(fs) => frontiers.extend(fs.into_iter().map(|mut f| {
                f.symmetry = sym;
                f
            })),
        }
    }
    Ok(Outcome::Exhausted(frontiers))
}

/// Gap oracle for [`Scheme::deepen`], with bounds large enough for the
/// deepened prefixes.
pub fn deepen_scheme(s: &Scheme, c: usize, bounds: &SearchBounds) -> Result<Scheme> {
    let patterns = s.patterns.clone();
    let mut b = *bounds;
    b.verify_n = b
        .verify_n
        .max((s.depth() + c) as u32 + b.max_gap_sum + 1)
        .min(DEFAULT_CAP);
    let mut out = s.deepen(c, |p| Ok(find_gap_basis(p, &patterns, &b)))?;
    out.verification_bound = out.verification_bound.min(b.verify_n);
    Ok(out)
}

/// Returns `s` unchanged when its clearance covers the margin of `stats`
/// (read through the scheme's symmetry), and a deepened copy otherwise.
pub fn ensure_clearance(s: Scheme, stats: &MultiStat, bounds: &SearchBounds) -> Result<Scheme> {
    let margin = stats.transformed(s.symmetry)?.margin()?;
    if s.clearance().covers(margin) {
        return Ok(s);
    }
    deepen_scheme(&s, margin, bounds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::parse_pattern_set;
    use crate::scheme::tests::catalan_scheme;

    fn pats(s: &str) -> Vec<VincularPattern> {
        parse_pattern_set(s).unwrap()
    }

    fn perm(s: &str) -> Perm {
        s.parse().unwrap()
    }

    fn sv(v: &[u32]) -> SpacingVector {
        SpacingVector(v.to_vec())
    }

    fn small() -> SearchBounds {
        SearchBounds {
            max_depth: 4,
            max_gap_sum: 2,
            verify_n: 9,
        }
    }

    #[test]
    fn bounds_parse_and_validate() {
        let b: SearchBounds = "4:2:9".parse().unwrap();
        assert_eq!(b, small());
        assert_eq!(b.to_string(), "4:2:9");
        assert!("4:2".parse::<SearchBounds>().is_err());
        assert!(b.validate(&pats("1-2-3")).is_ok());
        let tight = SearchBounds { verify_n: 7, ..b };
        assert!(matches!(
            tight.validate(&pats("1-2-3")),
            Err(Error::Bounds(_))
        ));
        let zero = SearchBounds { max_depth: 0, ..b };
        assert!(zero.validate(&pats("1-2-3")).is_err());
        let over = SearchBounds { verify_n: 13, ..b };
        assert!(over.validate(&pats("1-2-3")).is_err());
        let d = SearchBounds::for_patterns(&pats("1-2-3"));
        assert!(d.validate(&pats("1-2-3")).is_ok());
    }

    #[test]
    fn compositions_and_candidates() {
        assert_eq!(compositions(2, 2), vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
        assert_eq!(compositions(0, 3), vec![vec![0, 0, 0]]);
        assert_eq!(
            candidate_sets(3),
            vec![
                vec![1],
                vec![2],
                vec![3],
                vec![1, 2],
                vec![1, 3],
                vec![2, 3],
                vec![1, 2, 3]
            ]
        );
        assert!(candidate_sets(0).is_empty());
    }

    #[test]
    fn gap_bases() {
        let b = pats("1-2-3");
        assert_eq!(
            find_gap_basis(&perm("12"), &b, &small()),
            vec![sv(&[0, 0, 1])]
        );
        assert!(find_gap_basis(&perm("21"), &b, &small()).is_empty());
        assert_eq!(
            find_gap_basis(&perm("123"), &b, &small()),
            vec![sv(&[0, 0, 0, 0])]
        );
        let b3 = pats("3-1-2,3-2-1");
        let mut g = find_gap_basis(&perm("21"), &b3, &small());
        g.sort();
        assert_eq!(g, vec![sv(&[0, 1, 0]), sv(&[1, 0, 0])]);
    }

    #[test]
    fn reversible_deletions() {
        let b = pats("1-2-3");
        let g12 = [sv(&[0, 0, 1])];
        assert_eq!(
            is_reversibly_deletable(&perm("12"), &[2], &b, &g12, &small()).unwrap(),
            Deletability::Verified
        );
        assert_eq!(
            is_reversibly_deletable(&perm("21"), &[1], &b, &[], &small()).unwrap(),
            Deletability::Verified
        );
        let Deletability::Refuted(wit) =
            is_reversibly_deletable(&perm("12"), &[1], &b, &g12, &small()).unwrap()
        else {
            panic!("deleting the smaller letter of an ascent is not reversible");
        };
        assert_eq!(wit.kind, WitnessKind::PreimageContainsPattern);
        assert!(!crate::pattern::avoids_all(wit.pi.letters(), &b));
        assert!(crate::pattern::avoids_all(wit.image.letters(), &b));
        assert!(is_reversibly_deletable(&perm("12"), &[], &b, &g12, &small()).is_err());
        assert!(is_reversibly_deletable(&perm("12"), &[3], &b, &g12, &small()).is_err());
    }

    #[test]
    fn deleting_can_create_vincular_copies() {
        // Removing a letter brings its neighbours together, which can form
        // an adjacency the original permutation did not have.
        // 2314 avoids 1-23, but dropping the 1 joins 3 and 4.
        let b = pats("1-23");
        let p = perm("231");
        let gaps = find_gap_basis(&p, &b, &small());
        let Deletability::Refuted(w) =
            is_reversibly_deletable(&p, &[3], &b, &gaps, &small()).unwrap()
        else {
            panic!("deleting the last letter is not reversible");
        };
        assert_eq!(w.kind, WitnessKind::ImageContainsPattern);
        assert_eq!(w.pi, perm("2314"));
        assert_eq!(w.image, perm("123"));

        // The consecutive descent pattern: deleting the first letter of 21
        // can destroy a descent at the front.
        let b = pats("21");
        let p = perm("1");
        let Deletability::Refuted(w) =
            is_reversibly_deletable(&p, &[1], &b, &[], &small()).unwrap()
        else {
            panic!("refuted");
        };
        assert_eq!(w.kind, WitnessKind::PreimageContainsPattern);
    }

    #[test]
    fn discovers_the_catalan_scheme() {
        let Outcome::Found(s) = discover(&pats("1-2-3"), 0, &small()).unwrap() else {
            panic!("no scheme")
        };
        assert_eq!(s.triples, catalan_scheme().triples);
        assert_eq!(s.verification_bound, 9);
    }

    #[test]
    fn clearance_one_search() {
        let Outcome::Found(s) = discover(&pats("1-2-3"), 1, &small()).unwrap() else {
            panic!("no scheme")
        };
        assert!(s.clearance().covers(1));
        let shown: Vec<String> = s.triples.values().map(|t| t.to_string()).collect();
        assert_eq!(
            shown,
            vec![
                "(ε, {}, {})",
                "(1, {}, {})",
                "(12, {<0,0,1>}, {})",
                "(21, {}, {1})",
                "(123, {<0,0,0,0>}, {})",
                "(132, {<0,0,0,1>, <0,0,1,0>}, {2})",
                "(231, {<0,0,0,1>}, {1})",
            ]
        );
    }

    #[test]
    fn decreasing_prefixes_never_close() {
        let b = pats("2-3-1");
        let bounds = SearchBounds::for_patterns(&b).with_max_depth(4);
        let Outcome::Exhausted(f) = discover(&b, 0, &bounds).unwrap() else {
            panic!("2-3-1 should not close")
        };
        assert!(f[0].open.contains(&perm("4321")));
    }

    #[test]
    fn symmetry_search_order() {
        let b = pats("2-3-1");
        let bounds = SearchBounds::for_patterns(&b).with_max_depth(4);
        let Outcome::Found(s) = discover_with_symmetry(&b, 0, &bounds).unwrap() else {
            panic!("some symmetry works")
        };
        assert_eq!(s.symmetry, Symmetry::Reverse);
        assert_eq!(s.patterns, pats("1-3-2"));
        assert_eq!(s.source_patterns(), b);
    }

    #[test]
    fn stats_drive_clearance() {
        let ms = MultiStat::parse("maj").unwrap();
        let b = pats("2-1-3,1-2-3");
        assert!(discover_for_stats(&b, &ms, 0, &[Symmetry::Identity], &small()).is_err());
        let Outcome::Found(s) =
            discover_for_stats(&b, &ms, 0, &[Symmetry::Reverse], &small()).unwrap()
        else {
            panic!("reversed class has a scheme")
        };
        assert_eq!(s.symmetry, Symmetry::Reverse);
        assert!(s.clearance().covers(1));
    }

    #[test]
    fn deepening_with_discovered_gaps() {
        let d = deepen_scheme(&catalan_scheme(), 1, &small()).unwrap();
        assert_eq!(d.len(), 10);
        let t = d.get(&perm("132")).unwrap();
        assert_eq!(t.gaps, vec![sv(&[0, 0, 0, 1]), sv(&[0, 0, 1, 0])]);
        assert_eq!(t.rd, vec![2]);
        let d2 = deepen_scheme(&catalan_scheme(), 2, &small()).unwrap();
        assert!(d2.clearance().covers(2));
    }
}
