//! Elements of the twofold tensor square of the truncated line.

use std::collections::BTreeMap;
use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::braided_line::poly::GradedPoly;
use crate::rational::Rat;

/// Element of `B ⊗ B` for the truncated line `B = k[x]/(x^(bound+1))`, in
/// the normal-ordered basis `x^a ⊗ x^b`. The grading is total degree, so the
/// truncation keeps exactly the terms with `a + b <= bound`; everything above
/// is dropped on insertion. Zero coefficients are pruned, which makes
/// structural equality semantic equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidedTensor {
    bound: usize,
    coeffs: BTreeMap<(usize, usize), Rat>,
}

impl BraidedTensor {
    pub fn zero(bound: usize) -> Self {
        BraidedTensor {
            bound,
            coeffs: BTreeMap::new(),
        }
    }

    /// `1 ⊗ 1`.
    pub fn unit(bound: usize) -> Self {
        Self::monomial(bound, 0, 0)
    }

    /// `x^a ⊗ x^b`. Panics if `a + b` exceeds the bound.
    pub fn monomial(bound: usize, a: usize, b: usize) -> Self {
        assert!(a + b <= bound, "degree {}+{} above bound {bound}", a, b);
        let mut t = Self::zero(bound);
        t.coeffs.insert((a, b), Rat::one());
        t
    }

    /// `f ⊗ g`, truncated to total degree `<= bound`.
    pub fn from_pure(f: &GradedPoly, g: &GradedPoly) -> Self {
        assert_eq!(f.bound(), g.bound(), "mixed truncation bounds");
        let mut t = Self::zero(f.bound());
        for (a, fa) in f.coeffs().iter().enumerate() {
            if fa.is_zero() {
                continue;
            }
            for (b, gb) in g.coeffs().iter().enumerate() {
                if gb.is_zero() {
                    continue;
                }
                t.add_term(a, b, fa * gb);
            }
        }
        t
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn coeff(&self, a: usize, b: usize) -> Rat {
        self.coeffs.get(&(a, b)).cloned().unwrap_or_else(Rat::zero)
    }

    /// Adds `value` to the coefficient of `x^a ⊗ x^b`; terms above the bound
    /// are dropped and coefficients that cancel to zero are removed.
    pub fn add_term(&mut self, a: usize, b: usize, value: Rat) {
        if a + b > self.bound || value.is_zero() {
            return;
        }
        let slot = self.coeffs.entry((a, b)).or_insert_with(Rat::zero);
        *slot += value;
        if slot.is_zero() {
            self.coeffs.remove(&(a, b));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, &Rat)> {
        self.coeffs.iter().map(|(&(a, b), c)| (a, b, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.bound, other.bound, "mixed truncation bounds");
        let mut out = self.clone();
        for (a, b, c) in other.terms() {
            out.add_term(a, b, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, s: &Rat) -> Self {
        if s.is_zero() {
            return Self::zero(self.bound);
        }
        BraidedTensor {
            bound: self.bound,
            coeffs: self
                .coeffs
                .iter()
                .map(|(&k, c)| (k, c * s))
                .collect(),
        }
    }

    /// Rescales each term by a factor depending on its left degree.
    pub fn scale_left_by(&self, factor: impl Fn(usize) -> Rat) -> Self {
        let mut out = Self::zero(self.bound);
        for (a, b, c) in self.terms() {
            out.add_term(a, b, c * factor(a));
        }
        out
    }

    /// Rescales each term by a factor depending on its right degree.
    pub fn scale_right_by(&self, factor: impl Fn(usize) -> Rat) -> Self {
        let mut out = Self::zero(self.bound);
        for (a, b, c) in self.terms() {
            out.add_term(a, b, c * factor(b));
        }
        out
    }
}

impl fmt::Display for BraidedTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (a, b, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            write!(f, "{c}*(x^{a}⊗x^{b})")?;
            first = false;
        }
        Ok(())
    }
}

/// Serializes as a sorted list of `[a, b, "coefficient"]` triples.
impl Serialize for BraidedTensor {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for (a, b, c) in self.terms() {
            seq.serialize_element(&(a, b, c.to_string()))?;
        }
        seq.end()
    }
}
