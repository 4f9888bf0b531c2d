//! Enumeration schemes: `(prefix, gap basis, deletion set)` triples.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pattern::{Symmetry, VincularPattern};
use crate::perm::{check_indices, dominates, Perm, SpacingVector};

/// One node of a scheme.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SchemeTriple {
    pub prefix: Perm,
    /// Minimal gap vectors, each of length `|prefix| + 1`.
    pub gaps: Vec<SpacingVector>,
    /// Reversibly deletable indices, one-based and increasing.
    pub rd: Vec<usize>,
}

impl SchemeTriple {
    pub fn new(prefix: Perm, mut gaps: Vec<SpacingVector>, mut rd: Vec<usize>) -> Self {
        gaps.sort();
        gaps.dedup();
        rd.sort_unstable();
        rd.dedup();
        SchemeTriple { prefix, gaps, rd }
    }

    /// Shorthand used by fixtures: `SchemeTriple::parse("12", &[&[0, 0, 1]], &[2])`.
    pub fn parse(prefix: &str, gaps: &[&[u32]], rd: &[usize]) -> Result<Self> {
        Ok(SchemeTriple::new(
            prefix.parse()?,
            gaps.iter().map(|g| SpacingVector(g.to_vec())).collect(),
            rd.to_vec(),
        ))
    }

    pub fn has_zero_gap(&self) -> bool {
        self.gaps.iter().any(|v| v.0.iter().all(|&x| x == 0))
    }

    /// Rule 1: some basis vector lies below `g`.
    pub fn gap_hit(&self, g: &[u32]) -> bool {
        self.gaps.iter().any(|v| dominates(g, &v.0))
    }

    /// Whether the scheme must contain every child of this prefix.
    pub fn expands(&self) -> bool {
        self.rd.is_empty() && !self.has_zero_gap()
    }

    pub fn deletion_target(&self) -> Option<Perm> {
        if self.rd.is_empty() {
            None
        } else {
            self.prefix.delete(&self.rd).ok()
        }
    }
}

impl fmt::Display for SchemeTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {{", self.prefix)?;
        for (i, g) in self.gaps.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str("}, {")?;
        for (i, r) in self.rd.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{r}")?;
        }
        f.write_str("})")
    }
}

/// Minimum of `|p| − max R` over the triples that actually delete.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Clearance {
    Finite(usize),
    Unbounded,
}

impl Clearance {
    pub fn covers(self, margin: usize) -> bool {
        self >= Clearance::Finite(margin)
    }
}

impl fmt::Display for Clearance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Clearance::Finite(c) => write!(f, "{c}"),
            Clearance::Unbounded => f.write_str("unbounded"),
        }
    }
}

/// A scheme for `Av(patterns)`.
///
/// `symmetry` records how `patterns` was obtained from the pattern set the
/// user asked about: the scheme counts `Av(patterns)`, and
/// `symmetry.apply_patterns(&patterns)` recovers the original set.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Scheme {
    pub patterns: Vec<VincularPattern>,
    pub symmetry: Symmetry,
    pub triples: BTreeMap<Perm, SchemeTriple>,
    pub verification_bound: u32,
}

impl Scheme {
    /// Builds and validates.
    pub fn new(
        patterns: Vec<VincularPattern>,
        triples: impl IntoIterator<Item = SchemeTriple>,
        verification_bound: u32,
    ) -> Result<Self> {
        let s = Scheme::new_unchecked(patterns, triples, verification_bound);
        s.validate()?;
        Ok(s)
    }

    pub fn new_unchecked(
        patterns: Vec<VincularPattern>,
        triples: impl IntoIterator<Item = SchemeTriple>,
        verification_bound: u32,
    ) -> Self {
        Scheme {
            patterns,
            symmetry: Symmetry::Identity,
            triples: triples.into_iter().map(|t| (t.prefix.clone(), t)).collect(),
            verification_bound,
        }
    }

    pub fn get(&self, p: &Perm) -> Option<&SchemeTriple> {
        self.triples.get(p)
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    /// The pattern set the scheme answers questions about.
    pub fn source_patterns(&self) -> Vec<VincularPattern> {
        self.symmetry.apply_patterns(&self.patterns)
    }

    pub fn depth(&self) -> usize {
        self.triples.keys().map(Perm::len).max().unwrap_or(0)
    }

    /// Checks the root, closure and well-formedness criteria, reporting the
    /// first violation in prefix order.
    pub fn validate(&self) -> Result<()> {
        let fail = |criterion, p: &Perm, detail: String| Error::InvalidScheme {
            criterion,
            prefix: p.to_string(),
            detail,
        };
        if !self.triples.contains_key(&Perm::empty()) {
            return Err(fail(
                "root",
                &Perm::empty(),
                "no triple for the empty prefix".into(),
            ));
        }
        for (p, t) in &self.triples {
            if &t.prefix != p {
                return Err(fail(
                    "well-formed",
                    p,
                    format!("keyed triple has prefix {}", t.prefix),
                ));
            }
            let k = p.len();
            if let Some(g) = t.gaps.iter().find(|g| g.0.len() != k + 1) {
                return Err(fail(
                    "well-formed",
                    p,
                    format!("gap vector {g} should have length {}", k + 1),
                ));
            }
            for (i, a) in t.gaps.iter().enumerate() {
                for b in &t.gaps[i + 1..] {
                    if a.dominates(&b.0) || b.dominates(&a.0) {
                        return Err(fail(
                            "well-formed",
                            p,
                            format!("gap vectors {a} and {b} are comparable"),
                        ));
                    }
                }
            }
            if check_indices(&t.rd, k).is_err() {
                return Err(fail(
                    "well-formed",
                    p,
                    format!(
                        "deletion set {:?} is not an increasing subset of 1..={k}",
                        t.rd
                    ),
                ));
            }
            if t.expands() {
                if let Some(c) = p
                    .children()
                    .into_iter()
                    .find(|c| !self.triples.contains_key(c))
                {
                    return Err(fail("2a", p, format!("child {c} has no triple")));
                }
            } else if let Some(d) = t.deletion_target() {
                if !self.triples.contains_key(&d) {
                    return Err(fail("2b", p, format!("deletion image {d} has no triple")));
                }
            }
        }
        Ok(())
    }

    pub fn clearance(&self) -> Clearance {
        self.triples
            .values()
            .filter(|t| !t.rd.is_empty() && !t.has_zero_gap())
            .map(|t| Clearance::Finite(t.prefix.len() - t.rd.last().unwrap()))
            .min()
            .unwrap_or(Clearance::Unbounded)
    }

    /// Deepens to clearance at least `c`, inheriting deletion sets with
    /// [`inherit_rd`].
    pub fn deepen(
        &self,
        c: usize,
        gap_oracle: impl FnMut(&Perm) -> Result<Vec<SpacingVector>>,
    ) -> Result<Scheme> {
        self.deepen_with(c, gap_oracle, inherit_rd)
    }

    /// Builds a triple for every prefix of length at most `depth + c`. Gap
    /// bases come from `gap_oracle`; deletion sets are empty below the new
    /// depth and supplied by `rd_inheritor` at it.
    pub fn deepen_with(
        &self,
        c: usize,
        mut gap_oracle: impl FnMut(&Perm) -> Result<Vec<SpacingVector>>,
        mut rd_inheritor: impl FnMut(&Scheme, &Perm) -> Vec<usize>,
    ) -> Result<Scheme> {
        if c == 0 {
            return Err(Error::Bounds("deepening needs c >= 1".into()));
        }
        let depth = self.depth() + c;
        let mut triples = Vec::new();
        let mut level = vec![Perm::empty()];
        for len in 0..=depth {
            for p in &level {
                let gaps = gap_oracle(p)?;
                let rd = if len < depth {
                    Vec::new()
                } else {
                    rd_inheritor(self, p)
                };
                triples.push(SchemeTriple::new(p.clone(), gaps, rd));
            }
            if len < depth {
                level = level.iter().flat_map(Perm::children).collect();
            }
        }
        let mut out =
            Scheme::new_unchecked(self.patterns.clone(), triples, self.verification_bound);
        out.symmetry = self.symmetry;
        out.validate()?;
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        let file = SchemeFile {
            patterns: self.patterns.clone(),
            symmetry: self.symmetry,
            verification_bound: self.verification_bound,
            clearance: Some(self.clearance().to_string()),
            triples: self
                .triples
                .values()
                .map(|t| TripleFile {
                    prefix: t.prefix.to_string(),
                    gaps: t.gaps.iter().map(|g| g.0.clone()).collect(),
                    rd: t.rd.clone(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&file).expect("scheme serializes")
    }

    /// Parses and validates a scheme document.
    pub fn from_json(text: &str) -> Result<Scheme> {
        let file: SchemeFile =
            serde_json::from_str(text).map_err(|e| Error::SchemeParse(e.to_string()))?;
        let mut seen = BTreeSet::new();
        let mut triples = Vec::with_capacity(file.triples.len());
        for t in file.triples {
            let prefix: Perm = t.prefix.parse()?;
            if !seen.insert(prefix.clone()) {
                return Err(Error::SchemeParse(format!(
                    "duplicate triple for prefix {prefix}"
                )));
            }
            triples.push(SchemeTriple::new(
                prefix,
                t.gaps.into_iter().map(SpacingVector).collect(),
                t.rd,
            ));
        }
        let mut s = Scheme::new_unchecked(file.patterns, triples, file.verification_bound);
        s.symmetry = file.symmetry;
        s.validate()?;
        Ok(s)
    }

    /// Tree view: children hang under the prefixes that expand, gap bases
    /// are listed in brackets and deletions are drawn as `d_R -> target`.
    pub fn render_tree(&self) -> String {
        let mut out = String::new();
        let mut seen = BTreeSet::new();
        self.render_node(&Perm::empty(), "", true, true, &mut seen, &mut out);
        let detached: Vec<&Perm> = self.triples.keys().filter(|p| !seen.contains(*p)).collect();
        if !detached.is_empty() {
            out.push_str("reached only by deletion:\n");
            for p in detached {
                let mut line = String::new();
                self.describe(p, &mut line);
                let _ = writeln!(out, "  {line}");
            }
        }
        out
    }

    fn render_node(
        &self,
        p: &Perm,
        indent: &str,
        last: bool,
        root: bool,
        seen: &mut BTreeSet<Perm>,
        out: &mut String,
    ) {
        seen.insert(p.clone());
        let mut line = String::new();
        self.describe(p, &mut line);
        if root {
            let _ = writeln!(out, "{line}");
        } else {
            let _ = writeln!(out, "{indent}{}{line}", if last { "└── " } else { "├── " });
        }
        let t = &self.triples[p];
        if !t.expands() {
            return;
        }
        let mut kids: Vec<Perm> = p
            .children()
            .into_iter()
            .filter(|c| self.triples.contains_key(c))
            .collect();
        kids.sort();
        let next = if root {
            String::new()
        } else {
            format!("{indent}{}", if last { "    " } else { "│   " })
        };
        for (i, c) in kids.iter().enumerate() {
            self.render_node(c, &next, i + 1 == kids.len(), false, seen, out);
        }
    }

    fn describe(&self, p: &Perm, line: &mut String) {
        let t = &self.triples[p];
        let _ = write!(line, "{p}");
        if !t.gaps.is_empty() {
            let gaps: Vec<String> = t.gaps.iter().map(|g| g.to_string()).collect();
            let _ = write!(line, "  [{}]", gaps.join(", "));
        }
        if let Some(d) = t.deletion_target() {
            let r: Vec<String> = t.rd.iter().map(|r| r.to_string()).collect();
            let _ = write!(line, "  d_{{{}}} -> {d}", r.join(","));
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, t) in self.triples.values().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{t}")?;
        }
        f.write_str("}")
    }
}

/// The deletion set of the longest prefix of `p` that has a triple in `s`.
pub fn inherit_rd(s: &Scheme, p: &Perm) -> Vec<usize> {
    (0..=p.len())
        .rev()
        .find_map(|len| s.get(&p.prefix(len)))
        .map(|t| t.rd.clone())
        .unwrap_or_default()
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SchemeFile {
    patterns: Vec<VincularPattern>,
    #[serde(default)]
    symmetry: Symmetry,
    verification_bound: u32,
    /// Informational; recomputed on load.
    #[serde(default)]
    clearance: Option<String>,
    triples: Vec<TripleFile>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TripleFile {
    prefix: String,
    #[serde(default)]
    gaps: Vec<Vec<u32>>,
    #[serde(default)]
    rd: Vec<usize>,
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::pattern::parse_pattern_set;

    pub(crate) fn catalan_scheme() -> Scheme {
        Scheme::new(
            parse_pattern_set("1-2-3").unwrap(),
            [
                SchemeTriple::parse("", &[], &[]).unwrap(),
                SchemeTriple::parse("1", &[], &[]).unwrap(),
                SchemeTriple::parse("12", &[&[0, 0, 1]], &[2]).unwrap(),
                SchemeTriple::parse("21", &[], &[1]).unwrap(),
            ],
            9,
        )
        .unwrap()
    }

    /// The clearance-1 scheme as printed for `Av(1-2-3)`.
    pub(crate) fn catalan_scheme_c1() -> Scheme {
        Scheme::new(
            parse_pattern_set("1-2-3").unwrap(),
            [
                SchemeTriple::parse("", &[], &[]).unwrap(),
                SchemeTriple::parse("1", &[], &[]).unwrap(),
                SchemeTriple::parse("12", &[&[0, 0, 1]], &[]).unwrap(),
                SchemeTriple::parse("21", &[], &[1]).unwrap(),
                SchemeTriple::parse("123", &[&[0, 0, 0, 0]], &[2]).unwrap(),
                SchemeTriple::parse("132", &[&[0, 0, 1, 0], &[0, 0, 0, 1]], &[2]).unwrap(),
                SchemeTriple::parse("231", &[&[0, 0, 0, 1]], &[1, 2]).unwrap(),
            ],
            9,
        )
        .unwrap()
    }

    fn violation(s: &Scheme) -> (&'static str, String) {
        match s.validate() {
            Err(Error::InvalidScheme {
                criterion, prefix, ..
            }) => (criterion, prefix),
            other => panic!("expected a violation, got {other:?}"),
        }
    }

    #[test]
    fn validation_reports_first_violation() {
        let mut s = catalan_scheme();
        assert!(s.validate().is_ok());
        s.triples.remove(&"21".parse().unwrap());
        assert_eq!(violation(&s), ("2a", "1".into()));

        let only_root =
            Scheme::new_unchecked(vec![], [SchemeTriple::parse("", &[], &[]).unwrap()], 0);
        assert_eq!(violation(&only_root), ("2a", "ε".into()));

        let no_root = Scheme::new_unchecked(vec![], [], 0);
        assert_eq!(violation(&no_root).0, "root");

        let mut bad_rd = catalan_scheme();
        bad_rd.triples.get_mut(&"21".parse().unwrap()).unwrap().rd = vec![3];
        assert_eq!(violation(&bad_rd), ("well-formed", "21".into()));

        let mut bad_gap = catalan_scheme();
        bad_gap
            .triples
            .get_mut(&"12".parse().unwrap())
            .unwrap()
            .gaps = vec![SpacingVector(vec![0, 0, 1]), SpacingVector(vec![0, 1, 1])];
        assert_eq!(violation(&bad_gap), ("well-formed", "12".into()));

        let mut missing_image = catalan_scheme_c1();
        missing_image.triples.remove(&"12".parse().unwrap());
        assert_eq!(violation(&missing_image).0, "2a");
        let mut c1 = catalan_scheme_c1();
        let stray = SchemeTriple::parse("2431", &[], &[1]).unwrap();
        c1.triples.insert(stray.prefix.clone(), stray);
        assert_eq!(violation(&c1), ("2b", "2431".into()));
    }

    #[test]
    fn clearance_values() {
        assert_eq!(catalan_scheme().clearance(), Clearance::Finite(0));
        assert_eq!(catalan_scheme_c1().clearance(), Clearance::Finite(1));
        let free = Scheme::new(
            vec![],
            [
                SchemeTriple::parse("", &[], &[]).unwrap(),
                SchemeTriple::parse("1", &[], &[1]).unwrap(),
            ],
            0,
        )
        .unwrap();
        assert_eq!(free.clearance(), Clearance::Finite(0));
        let contained = Scheme::new(
            parse_pattern_set("1").unwrap(),
            [
                SchemeTriple::parse("", &[], &[]).unwrap(),
                SchemeTriple::parse("1", &[&[0, 0]], &[]).unwrap(),
            ],
            0,
        )
        .unwrap();
        assert_eq!(contained.clearance(), Clearance::Unbounded);
        assert!(Clearance::Unbounded.covers(7));
        assert!(!Clearance::Finite(1).covers(2));
        assert_eq!(catalan_scheme().depth(), 2);
    }

    /// Gap bases of `Av(1-2-3)` for prefixes up to length 3, worked out by
    /// hand: a prefix containing the pattern has the zero vector, an
    /// ascent `ab` forbids any room above `b`.
    fn catalan_gaps(p: &Perm) -> Result<Vec<SpacingVector>> {
        let v: &[&[u32]] = match p.to_string().as_str() {
            "12" => &[&[0, 0, 1]],
            "123" => &[&[0, 0, 0, 0]],
            "132" => &[&[0, 0, 1, 0], &[0, 0, 0, 1]],
            "231" | "213" => &[&[0, 0, 0, 1]],
            "312" => &[&[0, 0, 1, 0], &[0, 0, 0, 1]],
            _ => &[],
        };
        Ok(v.iter().map(|g| SpacingVector(g.to_vec())).collect())
    }

    #[test]
    fn deepen_matches_the_proof_construction() {
        let d = catalan_scheme().deepen(1, catalan_gaps).unwrap();
        assert_eq!(d.len(), 10);
        assert!(d.clearance().covers(1));
        let rd = |p: &str| d.get(&p.parse().unwrap()).unwrap().rd.clone();
        assert_eq!(rd("132"), vec![2]);
        assert_eq!(rd("123"), vec![2]);
        assert_eq!(rd("231"), vec![2]);
        assert_eq!(rd("213"), vec![1]);
        assert_eq!(rd("312"), vec![1]);
        assert_eq!(rd("321"), vec![1]);
        assert!(rd("12").is_empty() && rd("21").is_empty());
        assert_eq!(
            d.get(&"132".parse().unwrap()).unwrap().to_string(),
            "(132, {<0,0,0,1>, <0,0,1,0>}, {2})"
        );
        assert!(catalan_scheme().deepen(0, catalan_gaps).is_err());
    }

    #[test]
    fn json_round_trip_and_errors() {
        let s = catalan_scheme_c1();
        let text = s.to_json();
        assert_eq!(Scheme::from_json(&text).unwrap(), s);
        let truncated = &text[..text.len() / 2];
        match Scheme::from_json(truncated) {
            Err(Error::SchemeParse(msg)) => assert!(msg.contains("line"), "{msg}"),
            other => panic!("{other:?}"),
        }
        let mut doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        doc["triples"]
            .as_array_mut()
            .unwrap()
            .push(serde_json::json!({"prefix": "2431", "rd": [1]}));
        let broken = doc.to_string();
        assert!(matches!(
            Scheme::from_json(&broken),
            Err(Error::InvalidScheme {
                criterion: "2b",
                ..
            })
        ));
    }

    #[test]
    fn tree_view() {
        let tree = catalan_scheme().render_tree();
        assert_eq!(
            tree,
            "ε\n└── 1\n    ├── 12  [<0,0,1>]  d_{2} -> 1\n    └── 21  d_{1} -> 1\n"
        );
    }
}
