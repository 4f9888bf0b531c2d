//! Sparse multivariate polynomials with big-integer coefficients.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `Σ c · q_1^{e_1} ⋯ q_m^{e_m}` with nonzero coefficients only.
///
/// Exponents are signed so that deletion differences can be applied along a
/// recursion path before they net out; [`DistPolynomial::check_nonnegative`]
/// guards finished results.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DistPolynomial {
    arity: usize,
    terms: BTreeMap<Vec<i64>, BigUint>,
}

impl DistPolynomial {
    pub fn zero(arity: usize) -> Self {
        DistPolynomial {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(arity: usize) -> Self {
        Self::monomial(vec![0; arity])
    }

    pub fn monomial(exponents: Vec<i64>) -> Self {
        let arity = exponents.len();
        let mut terms = BTreeMap::new();
        terms.insert(exponents, BigUint::one());
        DistPolynomial { arity, terms }
    }

    /// A univariate polynomial from `(exponent, coefficient)` pairs.
    pub fn univariate(pairs: &[(i64, u64)]) -> Self {
        Self::from_terms(1, pairs.iter().map(|&(e, c)| (vec![e], BigUint::from(c))))
    }

    pub fn from_terms(arity: usize, terms: impl IntoIterator<Item = (Vec<i64>, BigUint)>) -> Self {
        let mut p = DistPolynomial::zero(arity);
        for (e, c) in terms {
            assert_eq!(e.len(), arity, "exponent vector arity");
            p.add_term(e, c);
        }
        p
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[i64], &BigUint)> {
        self.terms.iter().map(|(e, c)| (e.as_slice(), c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponents: &[i64]) -> BigUint {
        self.terms.get(exponents).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, exponents: Vec<i64>, coefficient: BigUint) {
        if coefficient.is_zero() {
            return;
        }
        *self.terms.entry(exponents).or_default() += coefficient;
    }

    pub fn add_assign(&mut self, other: &DistPolynomial) {
        debug_assert_eq!(self.arity, other.arity);
        for (e, c) in &other.terms {
            *self.terms.entry(e.clone()).or_default() += c;
        }
    }

    /// Multiplies by the monomial `q^shift`.
    pub fn shifted(&self, shift: &[i64]) -> DistPolynomial {
        if shift.iter().all(|&s| s == 0) {
            return self.clone();
        }
        DistPolynomial {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Value with every indeterminate set to 1.
    pub fn at_one(&self) -> BigUint {
        self.terms.values().sum()
    }

    /// Degree in indeterminate `i` (`None` for the zero polynomial).
    pub fn degree(&self, i: usize) -> Option<i64> {
        self.terms.keys().map(|e| e[i]).max()
    }

    /// Keeps only indeterminate `i`, summing over the others.
    pub fn marginal(&self, i: usize) -> DistPolynomial {
        let mut out = DistPolynomial::zero(1);
        for (e, c) in &self.terms {
            out.add_term(vec![e[i]], c.clone());
        }
        out
    }

    pub fn check_nonnegative(&self) -> Result<()> {
        match self.terms.keys().find(|e| e.iter().any(|&x| x < 0)) {
            Some(e) => Err(Error::Invariant(format!(
                "negative exponent {e:?} in a finished distribution"
            ))),
            None => Ok(()),
        }
    }

    /// Renders with the given indeterminate names, lowest exponents first.
    pub fn display_with<'a>(&'a self, vars: &'a [String]) -> impl fmt::Display + 'a {
        Rendered { poly: self, vars }
    }

    /// The conventional names: `q` for one indeterminate, `q, t` for two,
    /// `q1 … qm` otherwise.
    pub fn default_vars(arity: usize) -> Vec<String> {
        match arity {
            1 => vec!["q".into()],
            2 => vec!["q".into(), "t".into()],
            m => (1..=m).map(|i| format!("q{i}")).collect(),
        }
    }
}

struct Rendered<'a> {
    poly: &'a DistPolynomial,
    vars: &'a [String],
}

impl fmt::Display for Rendered<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        for (n, (e, c)) in self.poly.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            let vars: Vec<String> = e
                .iter()
                .zip(self.vars)
                .filter(|(&x, _)| x != 0)
                .map(|(&x, v)| {
                    if x == 1 {
                        v.clone()
                    } else {
                        format!("{v}^{x}")
                    }
                })
                .collect();
            if vars.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                f.write_str(&vars.join("*"))?;
            } else {
                write!(f, "{c}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for DistPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars = DistPolynomial::default_vars(self.arity);
        let shown = self.display_with(&vars);
        write!(f, "{shown}")
    }
}
