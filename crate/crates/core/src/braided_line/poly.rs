//! Polynomials in one variable truncated at a fixed degree bound.

use std::fmt;

use serde::de;
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::rational::Rat;

/// Dense polynomial `f = sum_i f_i x^i` with `0 <= i <= bound`. All
/// operations stay inside the truncation: products silently drop terms above
/// the bound, which matches working in `k[x]/(x^(bound+1))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedPoly {
    coeffs: Vec<Rat>,
}

impl GradedPoly {
    pub fn zero(bound: usize) -> Self {
        GradedPoly {
            coeffs: vec![Rat::zero(); bound + 1],
        }
    }

    pub fn one(bound: usize) -> Self {
        Self::monomial(bound, 0)
    }

    /// `x^degree`. Panics if the degree exceeds the bound.
    pub fn monomial(bound: usize, degree: usize) -> Self {
        assert!(degree <= bound, "degree {degree} above bound {bound}");
        let mut p = Self::zero(bound);
        p.coeffs[degree] = Rat::one();
        p
    }

    /// Bound is inferred as `coeffs.len() - 1`; the vector must be nonempty.
    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        assert!(!coeffs.is_empty(), "a polynomial needs a constant term slot");
        GradedPoly { coeffs }
    }

    pub fn bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, degree: usize) -> &Rat {
        &self.coeffs[degree]
    }

    pub fn set_coeff(&mut self, degree: usize, value: Rat) {
        self.coeffs[degree] = value;
    }

    /// Adds `value` to the coefficient of `x^degree`, dropping it if the
    /// degree lies above the bound.
    pub fn accumulate(&mut self, degree: usize, value: Rat) {
        if degree < self.coeffs.len() {
            self.coeffs[degree] += value;
        }
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rat::is_zero)
    }

    /// Degree of the highest nonzero coefficient, `None` for the zero
    /// polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero())
    }

    fn assert_same_bound(&self, other: &Self) {
        assert_eq!(
            self.bound(),
            other.bound(),
            "mixed truncation bounds {} and {}",
            self.bound(),
            other.bound()
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.assert_same_bound(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        GradedPoly { coeffs }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.assert_same_bound(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        GradedPoly { coeffs }
    }

    pub fn scale(&self, s: &Rat) -> Self {
        GradedPoly {
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        GradedPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Product in `k[x]/(x^(bound+1))`: convolution with terms above the
    /// bound dropped.
    pub fn multiply(&self, other: &Self) -> Self {
        self.assert_same_bound(other);
        let mut out = Self::zero(self.bound());
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j > self.bound() {
                    break;
                }
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }

    /// `f(x) -> f(-x)`: negates the odd coefficients.
    pub fn substitute_neg_x(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect();
        GradedPoly { coeffs }
    }

    /// Sum of all coefficients, i.e. the evaluation at x = 1.
    pub fn eval_at_one(&self) -> Rat {
        self.coeffs.iter().sum()
    }
}

impl fmt::Display for GradedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if wrote {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            } else if c.is_negative() {
                write!(f, "-")?;
            }
            let mag = c.abs();
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "x")?;
                    } else {
                        write!(f, "x^{i}")?;
                    }
                }
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for GradedPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(c)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for GradedPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let coeffs = Vec::<Rat>::deserialize(deserializer)?;
        if coeffs.is_empty() {
            return Err(de::Error::custom("polynomial needs at least one slot"));
        }
        Ok(GradedPoly { coeffs })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    fn poly(coeffs: &[&str]) -> GradedPoly {
        GradedPoly::from_coeffs(coeffs.iter().map(|s| r(s)).collect())
    }

    #[test]
    fn construction_and_queries() {
        let p = poly(&["1", "0", "-2"]);
        assert_eq!(p.bound(), 2);
        assert_eq!(p.coeff(2), &r("-2"));
        assert_eq!(p.degree(), Some(2));
        assert_eq!(GradedPoly::zero(4).degree(), None);
        assert!(GradedPoly::zero(4).is_zero());
        assert_eq!(GradedPoly::monomial(3, 2).degree(), Some(2));
    }

    #[test]
    #[should_panic(expected = "above bound")]
    fn monomial_respects_bound() {
        GradedPoly::monomial(2, 3);
    }

    #[test]
    fn ring_operations_truncate() {
        let a = poly(&["1", "1", "0"]);
        let b = poly(&["0", "1", "2"]);
        assert_eq!(a.add(&b), poly(&["1", "2", "2"]));
        assert_eq!(a.sub(&b), poly(&["1", "0", "-2"]));
        assert_eq!(a.scale(&r("1/2")), poly(&["1/2", "1/2", "0"]));
        // (1+x)(x+2x^2) = x + 3x^2 + 2x^3, and x^3 falls off the bound.
        assert_eq!(a.multiply(&b), poly(&["0", "1", "3"]));
    }

    #[test]
    fn sign_flip_and_evaluation() {
        let p = poly(&["1", "-3", "2", "5"]);
        assert_eq!(p.substitute_neg_x(), poly(&["1", "3", "2", "-5"]));
        assert_eq!(p.eval_at_one(), r("5"));
        assert_eq!(p.substitute_neg_x().substitute_neg_x(), p);
    }

    #[test]
    fn accumulate_drops_overflow() {
        let mut p = GradedPoly::zero(1);
        p.accumulate(1, r("2"));
        p.accumulate(5, r("7"));
        assert_eq!(p, poly(&["0", "2"]));
    }

    #[test]
    fn display_is_readable() {
        assert_eq!(poly(&["1", "-3", "2"]).to_string(), "1 - 3*x + 2*x^2");
        assert_eq!(poly(&["0", "0", "0"]).to_string(), "0");
        assert_eq!(poly(&["-1/2", "1", "0"]).to_string(), "-1/2 + x");
    }

    #[test]
    fn serde_round_trip() {
        let p = poly(&["1", "-1/3", "0"]);
        let json = serde_json::to_string(&p).unwrap();
        assert_eq!(json, "[\"1\",\"-1/3\",\"0\"]");
        let back: GradedPoly = serde_json::from_str(&json).unwrap();
        assert_eq!(back, p);
        assert!(serde_json::from_str::<GradedPoly>("[]").is_err());
    }
}
