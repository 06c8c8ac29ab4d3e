//! Exact q-combinatorics.
//!
//! The deformation parameter q is any nonzero rational; when q is a prime
//! power the formulas here count linear-algebra objects over F_q, but nothing
//! in this module assumes that. Quantities defined:
//!
//! * the q-integer `[i]_q = (q^i - 1)/(q - 1) = 1 + q + ... + q^(i-1)`,
//! * the q-factorial `[i]_q! = [1]_q [2]_q ... [i]_q`,
//! * the Gaussian binomial `[i choose j]_q = [i]_q! / ([j]_q! [i-j]_q!)`,
//!   which counts j-dimensional subspaces of an i-dimensional space,
//! * the number `(q^i - 1)(q^i - q) ... (q^i - q^(j-1))` of ordered linearly
//!   independent j-tuples in an i-dimensional space,
//! * the truncated alternating series `sum_{i=0}^{d} (-1)^i / prod_{m=1}^{i}
//!   (q^m - 1)`, a cut-off q-exponential evaluated where it collapses to the
//!   proportion of fixed-point-free elements of GL(d, F_q).
//!
//! Division by `q^m - 1` appears throughout, so each function rejects q
//! values that zero a needed factor with [`Error::DegenerateQ`] instead of
//! taking a limit. For a rational q only q = 1 and q = -1 can be roots of
//! unity, which keeps the admissibility test cheap.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rational::Rat;

/// A nonzero rational deformation parameter.
#[derive(Clone, PartialEq, Eq)]
pub struct QParam(Rat);

impl QParam {
    pub fn new(q: Rat) -> Result<Self> {
        if q.is_zero() {
            return Err(Error::ZeroQ);
        }
        Ok(QParam(q))
    }

    pub fn from_integer(n: i64) -> Result<Self> {
        QParam::new(Rat::from(n))
    }

    pub fn value(&self) -> &Rat {
        &self.0
    }

    pub fn pow(&self, exp: i64) -> Rat {
        self.0.pow(exp)
    }

    /// `q^m - 1`.
    pub fn pow_minus_one(&self, m: usize) -> Rat {
        self.pow(m as i64) - Rat::one()
    }

    pub fn inverse(&self) -> QParam {
        QParam(self.0.recip().expect("q is nonzero"))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    /// Smallest m in `1..=max_power` with `q^m = 1`, if any. A rational with
    /// |numerator| != |denominator| has strictly growing or shrinking powers,
    /// so only q = 1 (every m) and q = -1 (even m) can degenerate.
    pub fn degenerate_power(&self, max_power: usize) -> Option<usize> {
        if self.0.is_one() && max_power >= 1 {
            Some(1)
        } else if (-&self.0).is_one() && max_power >= 2 {
            Some(2)
        } else {
            None
        }
    }

    /// Errors unless `q^m != 1` for every m in `1..=max_power`.
    pub fn require_admissible(&self, max_power: usize) -> Result<()> {
        match self.degenerate_power(max_power) {
            Some(power) => Err(Error::DegenerateQ {
                q: self.0.clone(),
                power,
            }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for QParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for QParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl FromStr for QParam {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        QParam::new(s.parse()?)
    }
}

fn degenerate(q: &QParam, power: usize) -> Error {
    Error::DegenerateQ {
        q: q.value().clone(),
        power,
    }
}

/// `[i]_q = (q^i - 1)/(q - 1)`. Requires q != 1.
pub fn q_int(i: usize, q: &QParam) -> Result<Rat> {
    if q.is_one() {
        return Err(degenerate(q, 1));
    }
    Ok(q.pow_minus_one(i) / q.pow_minus_one(1))
}

/// `[i]_q! = prod_{m=1}^{i} [m]_q`. The empty product is 1 for any q; for
/// i >= 1 every factor `q^m - 1` with m <= i must be nonzero.
pub fn q_factorial(i: usize, q: &QParam) -> Result<Rat> {
    let mut numer = Rat::one();
    for m in 1..=i {
        let factor = q.pow_minus_one(m);
        if factor.is_zero() {
            return Err(degenerate(q, m));
        }
        numer *= factor;
    }
    Ok(numer / q.pow_minus_one(1).pow(i as i64))
}

/// Gaussian binomial via the product form
/// `prod_{m=0}^{j-1} (q^(i-m) - 1)/(q^(j-m) - 1)`.
///
/// Only the j denominator factors must be nonzero, so e.g. `[i choose 0]_q`
/// is 1 for every nonzero q, and a vanishing numerator factor simply makes
/// the value 0 (as for `[2 choose 1]` at q = -1).
pub fn q_binomial(i: usize, j: usize, q: &QParam) -> Result<Rat> {
    if j > i {
        return Err(Error::IndexOutOfRange { i, j });
    }
    let mut numer = Rat::one();
    let mut denom = Rat::one();
    for m in 0..j {
        let bottom = q.pow_minus_one(j - m);
        if bottom.is_zero() {
            return Err(degenerate(q, j - m));
        }
        numer *= q.pow_minus_one(i - m);
        denom *= bottom;
    }
    Ok(numer / denom)
}

/// Gaussian binomial via `[i]_q! / ([j]_q! [i-j]_q!)`. Stricter than
/// [`q_binomial`]: all of `q^1 - 1 .. q^i - 1` must be nonzero. Kept as an
/// independent route so tests can cross-check the two.
pub fn q_binomial_by_factorials(i: usize, j: usize, q: &QParam) -> Result<Rat> {
    if j > i {
        return Err(Error::IndexOutOfRange { i, j });
    }
    Ok(q_factorial(i, q)? / (q_factorial(j, q)? * q_factorial(i - j, q)?))
}

/// `prod_{m=0}^{j-1} (q^i - q^m)`: for a prime power q, the number of ordered
/// linearly independent j-tuples of vectors in an i-dimensional space over
/// F_q. Total for all arguments; the product is empty (1) for j = 0 and hits
/// a zero factor (0) as soon as j > i.
pub fn count_indep_tuples(i: usize, j: usize, q: &QParam) -> Rat {
    let qi = q.pow(i as i64);
    let mut out = Rat::one();
    for m in 0..j {
        out *= &qi - q.pow(m as i64);
    }
    out
}

/// `sum_{i=0}^{d} (-1)^i / prod_{m=1}^{i} (q^m - 1)`.
///
/// For q the order of a finite field this equals the proportion of elements
/// of GL(d, F_q) fixing no nonzero vector. Rejects q = 1 for every d (the
/// series is a deformation of `e^{-1}`; at q = 1 its shape is meaningless
/// even though the d = 0 partial sum would not divide by zero).
pub fn truncated_q_exp_neg(d: usize, q: &QParam) -> Result<Rat> {
    if q.is_one() {
        return Err(degenerate(q, 1));
    }
    let mut acc = Rat::one();
    let mut ladder = Rat::one();
    let mut sign = Rat::one();
    for i in 1..=d {
        let factor = q.pow_minus_one(i);
        if factor.is_zero() {
            return Err(degenerate(q, i));
        }
        ladder *= factor;
        sign = -sign;
        acc += &sign / &ladder;
    }
    Ok(acc)
}

/// `prod_{m=1}^{j} (q^m - 1)`, the unnormalized q-factorial ladder. Total;
/// callers that must divide by it check admissibility themselves.
pub fn q_pochhammer(j: usize, q: &QParam) -> Rat {
    let mut out = Rat::one();
    for m in 1..=j {
        out *= q.pow_minus_one(m);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(s: &str) -> Rat {
        s.parse().unwrap()
    }

    fn qp(s: &str) -> QParam {
        s.parse().unwrap()
    }

    #[test]
    fn qparam_rejects_zero() {
        assert_eq!(QParam::new(Rat::zero()), Err(Error::ZeroQ));
        assert!(qp("1").is_one());
    }

    #[test]
    fn degenerate_power_detection() {
        assert_eq!(qp("1").degenerate_power(1), Some(1));
        assert_eq!(qp("-1").degenerate_power(1), None);
        assert_eq!(qp("-1").degenerate_power(2), Some(2));
        assert_eq!(qp("3/2").degenerate_power(100), None);
        assert_eq!(qp("-2").degenerate_power(100), None);
        assert!(qp("2").require_admissible(50).is_ok());
        assert!(matches!(
            qp("-1").require_admissible(4),
            Err(Error::DegenerateQ { power: 2, .. })
        ));
    }

    #[test]
    fn q_int_values() {
        let q2 = qp("2");
        assert_eq!(q_int(0, &q2).unwrap(), Rat::zero());
        assert_eq!(q_int(1, &q2).unwrap(), Rat::one());
        assert_eq!(q_int(3, &q2).unwrap(), r("7"));
        assert_eq!(q_int(2, &qp("3/2")).unwrap(), r("5/2"));
        assert_eq!(q_int(2, &qp("-1")).unwrap(), Rat::zero());
        assert!(matches!(
            q_int(3, &qp("1")),
            Err(Error::DegenerateQ { power: 1, .. })
        ));
    }

    #[test]
    fn q_factorial_values() {
        assert_eq!(q_factorial(0, &qp("2")).unwrap(), Rat::one());
        assert_eq!(q_factorial(0, &qp("1")).unwrap(), Rat::one());
        assert_eq!(q_factorial(3, &qp("2")).unwrap(), r("21"));
        assert_eq!(q_factorial(2, &qp("1/2")).unwrap(), r("3/2"));
        assert!(matches!(
            q_factorial(1, &qp("1")),
            Err(Error::DegenerateQ { power: 1, .. })
        ));
        assert!(matches!(
            q_factorial(2, &qp("-1")),
            Err(Error::DegenerateQ { power: 2, .. })
        ));
    }

    #[test]
    fn q_binomial_values() {
        assert_eq!(q_binomial(5, 0, &qp("7")).unwrap(), Rat::one());
        assert_eq!(q_binomial(5, 0, &qp("1")).unwrap(), Rat::one());
        assert_eq!(q_binomial(2, 1, &qp("5")).unwrap(), r("6"));
        assert_eq!(q_binomial(4, 2, &qp("2")).unwrap(), r("35"));
        assert_eq!(q_binomial(2, 1, &qp("-1")).unwrap(), Rat::zero());
        assert_eq!(q_binomial(3, 1, &qp("3/2")).unwrap(), r("19/4"));
        assert!(matches!(
            q_binomial(3, 5, &qp("2")),
            Err(Error::IndexOutOfRange { i: 3, j: 5 })
        ));
        assert!(matches!(
            q_binomial(3, 2, &qp("-1")),
            Err(Error::DegenerateQ { power: 2, .. })
        ));
    }

    #[test]
    fn binomial_routes_agree() {
        for qs in ["2", "3", "5", "3/2", "1/2", "-2", "7/5"] {
            let q = qp(qs);
            for i in 0..=6usize {
                for j in 0..=i {
                    assert_eq!(
                        q_binomial(i, j, &q).unwrap(),
                        q_binomial_by_factorials(i, j, &q).unwrap(),
                        "({i},{j}) at q={qs}"
                    );
                }
            }
        }
    }

    #[test]
    fn binomial_symmetry_and_recursion() {
        let q = qp("3/2");
        for i in 1..=8usize {
            for j in 1..=i {
                let lhs = q_binomial(i, j, &q).unwrap();
                assert_eq!(lhs, q_binomial(i, i - j, &q).unwrap());
                // Pascal with a q-weight on the second term.
                let rhs = q_binomial(i - 1, j - 1, &q).unwrap()
                    + q.pow(j as i64) * q_binomial_pad(i - 1, j, &q);
                assert_eq!(lhs, rhs, "({i},{j})");
            }
        }
    }

    fn q_binomial_pad(i: usize, j: usize, q: &QParam) -> Rat {
        if j > i {
            Rat::zero()
        } else {
            q_binomial(i, j, q).unwrap()
        }
    }

    #[test]
    fn near_one_binomials_approach_ordinary_ones() {
        // No limits are taken anywhere; this only pins that the q-dependence
        // is continuous where defined.
        let q = qp("1001/1000");
        let diff = q_binomial(4, 2, &q).unwrap() - r("6");
        assert!(diff.abs() < r("1/10"));
    }

    #[test]
    fn independent_tuple_counts() {
        let q2 = qp("2");
        assert_eq!(count_indep_tuples(0, 0, &q2), Rat::one());
        assert_eq!(count_indep_tuples(2, 0, &q2), Rat::one());
        assert_eq!(count_indep_tuples(2, 1, &q2), r("3"));
        assert_eq!(count_indep_tuples(2, 2, &q2), r("6"));
        assert_eq!(count_indep_tuples(3, 3, &q2), r("168"));
        assert_eq!(count_indep_tuples(2, 3, &q2), Rat::zero());
        assert_eq!(count_indep_tuples(1, 2, &qp("5")), Rat::zero());
        assert_eq!(count_indep_tuples(2, 1, &qp("3/2")), r("5/4"));
    }

    #[test]
    fn tuple_count_factors_through_subspace_choice() {
        // Choosing j independent vectors in an i-space is choosing a j-space
        // and then a basis of it.
        for qs in ["2", "3", "5/3"] {
            let q = qp(qs);
            for i in 0..=5usize {
                for j in 0..=i {
                    let lhs = count_indep_tuples(i, j, &q);
                    let rhs = q_binomial(i, j, &q).unwrap() * count_indep_tuples(j, j, &q);
                    assert_eq!(lhs, rhs, "({i},{j}) at q={qs}");
                }
            }
        }
    }

    #[test]
    fn truncated_exponential_values() {
        assert_eq!(truncated_q_exp_neg(0, &qp("2")).unwrap(), Rat::one());
        assert_eq!(truncated_q_exp_neg(1, &qp("3")).unwrap(), r("1/2"));
        assert_eq!(truncated_q_exp_neg(2, &qp("2")).unwrap(), r("1/3"));
        assert_eq!(truncated_q_exp_neg(3, &qp("2")).unwrap(), r("2/7"));
        assert!(matches!(
            truncated_q_exp_neg(0, &qp("1")),
            Err(Error::DegenerateQ { power: 1, .. })
        ));
        assert!(matches!(
            truncated_q_exp_neg(2, &qp("-1")),
            Err(Error::DegenerateQ { power: 2, .. })
        ));
    }

    #[test]
    fn pochhammer_ladder() {
        let q2 = qp("2");
        assert_eq!(q_pochhammer(0, &q2), Rat::one());
        assert_eq!(q_pochhammer(1, &q2), Rat::one());
        assert_eq!(q_pochhammer(2, &q2), r("3"));
        assert_eq!(q_pochhammer(3, &q2), r("21"));
        assert_eq!(q_pochhammer(2, &qp("-1")), Rat::zero());
        // Matches the q-factorial up to the (q-1)^j normalization.
        let q = qp("5/2");
        for j in 0..=5usize {
            assert_eq!(
                q_pochhammer(j, &q),
                q_factorial(j, &q).unwrap() * q.pow_minus_one(1).pow(j as i64)
            );
        }
    }
}
