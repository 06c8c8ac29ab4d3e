//! Conversion between the two standard summaries of how a matrix group acts
//! on a d-dimensional space over F_q:
//!
//! * the fixed-space spectrum `P_i`, the probability that a uniformly random
//!   group element fixes pointwise exactly an i-dimensional subspace, and
//! * the orbit counts `L_j`, the number of group orbits on ordered linearly
//!   independent j-tuples of vectors.
//!
//! Averaging fixed tuples over the group gives the triangular relation
//!
//! ```text
//! L_j = sum_{i=j}^{d} P_i (q^i - 1)(q^i - q) ... (q^i - q^(j-1)),
//! ```
//!
//! and the inverse triangle is
//!
//! ```text
//! P_j = q^(-j(j-1)/2) / prod_{m=1}^{j}(q^m - 1)
//!       * sum_{i=j}^{d} L_i (-1)^(i-j) / (q^(j(i-j)) prod_{m=1}^{i-j}(q^m - 1)).
//! ```
//!
//! Both directions are also computed along an independent second route: the
//! generating function `L(x) = sum_j L_j x^j / prod_{m=1}^{j}(q^m - 1)`
//! satisfies `L(-x) = T P(x)` for the braided-line operator `T`, so applying
//! `T` or `T⁻¹` to coefficient vectors performs the same conversion. The
//! crate keeps the closed formulas and the operator route separate so that
//! tests can confirm they agree.
//!
//! The formulas make sense for any nonzero rational q that is not a root of
//! unity of order <= d; only the forward map `probabilities_to_orbits` is
//! total in q. Nothing here requires the `P_i` to come from an actual group;
//! [`validate_group_spectrum`] checks the constraints an actual group of
//! known order imposes.

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::braided_line::{operator_t, operator_t_inverse, GradedPoly, InverseRoute};
use crate::error::{Error, Result};
use crate::qcalc::{q_pochhammer, QParam};
use crate::rational::Rat;

/// `P_i` for `i = 0..=d`.
#[derive(Clone, Debug, PartialEq)]
pub struct FixSpectrum {
    d: usize,
    q: QParam,
    probs: Vec<Rat>,
}

impl FixSpectrum {
    pub fn new(d: usize, q: QParam, probs: Vec<Rat>) -> Result<Self> {
        if probs.len() != d + 1 {
            return Err(Error::DimensionMismatch {
                expected: d + 1,
                actual: probs.len(),
            });
        }
        Ok(FixSpectrum { d, q, probs })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn q(&self) -> &QParam {
        &self.q
    }

    pub fn probs(&self) -> &[Rat] {
        &self.probs
    }

    pub fn to_poly(&self) -> GradedPoly {
        GradedPoly::from_coeffs(self.probs.clone())
    }
}

/// `L_j` for `j = 0..=d`. `L_0` counts orbits on the empty tuple, so it is 1
/// whenever the `P_i` sum to 1.
#[derive(Clone, Debug, PartialEq)]
pub struct OrbitCounts {
    d: usize,
    q: QParam,
    counts: Vec<Rat>,
}

impl OrbitCounts {
    pub fn new(d: usize, q: QParam, counts: Vec<Rat>) -> Result<Self> {
        if counts.len() != d + 1 {
            return Err(Error::DimensionMismatch {
                expected: d + 1,
                actual: counts.len(),
            });
        }
        Ok(OrbitCounts { d, q, counts })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn q(&self) -> &QParam {
        &self.q
    }

    pub fn counts(&self) -> &[Rat] {
        &self.counts
    }
}

/// Integer-space power tables for a fixed `q = a/b` in lowest terms. Every
/// rational this module assembles from them is already canonical: from
/// `gcd(a, b) = 1` and `a^k - b^k ≡ a^k (mod b)`, each numerator factor is
/// coprime to b, so the gcd pass a general rational product would run on
/// every multiplication can be skipped — and that pass is what dominates
/// bulk conversions. A vanishing factor `a^k = b^k` only happens at
/// `q = ±1`, where `b = 1` keeps even raw zeros canonical.
struct RawPowers {
    a: Vec<BigInt>,
    b: Vec<BigInt>,
}

impl RawPowers {
    fn new(q: &QParam, a_max: usize, b_max: usize) -> Self {
        let mut a = Vec::with_capacity(a_max + 1);
        let mut b = Vec::with_capacity(b_max + 1);
        a.push(BigInt::one());
        b.push(BigInt::one());
        for e in 1..=a_max {
            a.push(&a[e - 1] * q.value().numer());
        }
        for e in 1..=b_max {
            b.push(&b[e - 1] * q.value().denom());
        }
        RawPowers { a, b }
    }

    /// Numerator of `q^k - 1` over the denominator `b^k`.
    fn diff(&self, k: usize) -> BigInt {
        &self.a[k] - &self.b[k]
    }
}

/// Forward triangle: `L_j = sum_i P_i * #{independent j-tuples in an
/// i-space}`. Total in q; the tuple counts are plain polynomials in q.
pub fn probabilities_to_orbits(spectrum: &FixSpectrum) -> OrbitCounts {
    let d = spectrum.d;
    let q = &spectrum.q;
    // tuples[i][j] = prod_{m=0}^{j-1} (q^i - q^m), assembled in integer
    // space via q^i - q^m = a^m (a^(i-m) - b^(i-m)) / b^i: numerator
    // prod_m a^m (a^(i-m) - b^(i-m)), denominator b^(i*j). Entries with
    // j > i stay zero because the m = i factor vanishes.
    let pw = RawPowers::new(q, d, d * d);
    let mut tuples = vec![vec![Rat::zero(); d + 1]; d + 1];
    for i in 0..=d {
        let mut numer = BigInt::one();
        tuples[i][0] = Rat::one();
        for j in 1..=i {
            numer = numer * &pw.a[j - 1] * pw.diff(i - j + 1);
            tuples[i][j] = Rat::from_reduced_parts(numer.clone(), pw.b[i * j].clone());
        }
    }
    let counts = (0..=d)
        .map(|j| {
            spectrum
                .probs
                .iter()
                .enumerate()
                .map(|(i, p)| p * &tuples[i][j])
                .sum()
        })
        .collect();
    OrbitCounts {
        d,
        q: spectrum.q.clone(),
        counts,
    }
}

/// Forward conversion through the braided line: `T P(x) = L(-x)`, then the
/// ladder normalization recovers `L_j` from the coefficients of `L(-x)`.
pub fn probabilities_to_orbits_via_operator(spectrum: &FixSpectrum) -> Result<OrbitCounts> {
    let d = spectrum.d;
    let q = &spectrum.q;
    q.require_admissible(d)?;
    let signed = operator_t(d, q)?.apply(&spectrum.to_poly());
    let counts = (0..=d)
        .map(|j| {
            let sign = if j % 2 == 0 { Rat::one() } else { -Rat::one() };
            sign * signed.coeff(j) * q_pochhammer(j, q)
        })
        .collect();
    Ok(OrbitCounts {
        d,
        q: q.clone(),
        counts,
    })
}

/// Inverse triangle in closed form. Requires `q^m != 1` for `m <= d`.
pub fn orbits_to_probabilities(counts: &OrbitCounts) -> Result<FixSpectrum> {
    let d = counts.d;
    let q = &counts.q;
    q.require_admissible(d)?;
    // Row j of the triangle, with T = d - j and poch(m) = prod_{t<=m}(q^t-1),
    // is evaluated over its common denominator:
    //
    //   sum_{t=0}^{T} (-1)^t L_{j+t} / (q^(jt) poch(t))
    //     = [sum_t (-1)^t L_{j+t} w_t] / (q^(jT) poch(T)),
    //   w_t = q^(j(T-t)) poch(T)/poch(t),  w_T = 1,  w_{t-1} = w_t q^j (q^t - 1),
    //
    // so each row costs a single division. The weights and the row
    // denominator q^(j(j-1)/2 + jT) poch(j) poch(T) are assembled from
    // integer-space tables (see RawPowers for why no reduction is needed;
    // admissibility keeps every poch factor nonzero).
    let pw = RawPowers::new(q, d.max(d * d.saturating_sub(1) / 2), d * d);
    let mut poch_numer = Vec::with_capacity(d + 1);
    poch_numer.push(BigInt::one());
    for m in 1..=d {
        poch_numer.push(&poch_numer[m - 1] * pw.diff(m));
    }
    let poch_b_exp = |m: usize| m * (m + 1) / 2;
    let mut probs = Vec::with_capacity(d + 1);
    for j in 0..=d {
        let t_max = d - j;
        let mut weight_numer = BigInt::one();
        let mut weight_b_exp = 0usize;
        let mut acc = Rat::zero();
        for t in (0..=t_max).rev() {
            let weight =
                Rat::from_reduced_parts(weight_numer.clone(), pw.b[weight_b_exp].clone());
            let term = &counts.counts[j + t] * weight;
            if t % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
            if t > 0 {
                weight_numer = weight_numer * &pw.a[j] * pw.diff(t);
                weight_b_exp += j + t;
            }
        }
        let triangle = j * j.saturating_sub(1) / 2;
        let denom_numer = &pw.a[triangle + j * t_max] * &poch_numer[j] * &poch_numer[t_max];
        let denom_b_exp = triangle + j * t_max + poch_b_exp(j) + poch_b_exp(t_max);
        probs.push(acc / Rat::from_reduced_parts(denom_numer, pw.b[denom_b_exp].clone()));
    }
    Ok(FixSpectrum {
        d,
        q: q.clone(),
        probs,
    })
}

/// Inverse conversion through the braided line: build the coefficient vector
/// of `L(-x)` and apply `T⁻¹`.
pub fn orbits_to_probabilities_via_operator(counts: &OrbitCounts) -> Result<FixSpectrum> {
    let d = counts.d;
    let q = &counts.q;
    q.require_admissible(d)?;
    let signed = generating_function_l(counts)?.substitute_neg_x();
    let probs = operator_t_inverse(d, q, InverseRoute::AntipodeConjugation)?.apply(&signed);
    Ok(FixSpectrum {
        d,
        q: q.clone(),
        probs: probs.coeffs().to_vec(),
    })
}

/// Coefficients of `L(x) = sum_j L_j x^j / prod_{m=1}^{j}(q^m - 1)`.
pub fn generating_function_l(counts: &OrbitCounts) -> Result<GradedPoly> {
    let d = counts.d;
    let q = &counts.q;
    q.require_admissible(d)?;
    let coeffs = counts
        .counts
        .iter()
        .enumerate()
        .map(|(j, l)| l / q_pochhammer(j, q))
        .collect();
    Ok(GradedPoly::from_coeffs(coeffs))
}

/// Constraint report for a spectrum that claims to describe a group of the
/// given order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumValidation {
    /// `sum_i P_i = 1`.
    pub sums_to_one: bool,
    /// Every `P_i >= 0`.
    pub nonnegative: bool,
    /// Every `|G| * P_i` is a nonnegative integer (it counts elements).
    pub integral_counts: bool,
    pub problems: Vec<String>,
}

impl SpectrumValidation {
    pub fn passed(&self) -> bool {
        self.sums_to_one && self.nonnegative && self.integral_counts
    }
}

pub fn validate_group_spectrum(spectrum: &FixSpectrum, group_order: u64) -> SpectrumValidation {
    let mut v = SpectrumValidation {
        sums_to_one: true,
        nonnegative: true,
        integral_counts: true,
        problems: Vec::new(),
    };
    let total: Rat = spectrum.probs.iter().sum();
    if !total.is_one() {
        v.sums_to_one = false;
        v.problems.push(format!("probabilities sum to {total}, not 1"));
    }
    let order = Rat::from(group_order);
    for (i, p) in spectrum.probs.iter().enumerate() {
        if p.is_negative() {
            v.nonnegative = false;
            v.problems.push(format!("P_{i} = {p} is negative"));
        }
        let scaled = p * &order;
        if !scaled.is_integer() {
            v.integral_counts = false;
            v.problems
                .push(format!("|G| * P_{i} = {scaled} is not an integer"));
        }
    }
    v
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

    fn spectrum(d: usize, q: &str, probs: &[&str]) -> FixSpectrum {
        FixSpectrum::new(d, qp(q), probs.iter().map(|s| r(s)).collect()).unwrap()
    }

    fn orbit(d: usize, q: &str, counts: &[&str]) -> OrbitCounts {
        OrbitCounts::new(d, qp(q), counts.iter().map(|s| r(s)).collect()).unwrap()
    }

    #[test]
    fn length_is_checked() {
        assert!(matches!(
            FixSpectrum::new(2, qp("2"), vec![Rat::one()]),
            Err(Error::DimensionMismatch {
                expected: 3,
                actual: 1
            })
        ));
        assert!(OrbitCounts::new(0, qp("2"), vec![Rat::one()]).is_ok());
    }

    #[test]
    fn transitive_two_dimensional_example() {
        // A group acting with one orbit on tuples of every size: the full
        // GL(2, F_2) with P = (1/3, 1/2, 1/6).
        let p = spectrum(2, "2", &["1/3", "1/2", "1/6"]);
        let l = probabilities_to_orbits(&p);
        assert_eq!(l.counts(), &[r("1"), r("1"), r("1")]);
        let back = orbits_to_probabilities(&l).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn trivial_group_counts_all_tuples() {
        // Only the identity: P = (0, 0, 1) in dimension 2 over F_2, and every
        // independent tuple is its own orbit: 1, 3, 6.
        let p = spectrum(2, "2", &["0", "0", "1"]);
        let l = probabilities_to_orbits(&p);
        assert_eq!(l.counts(), &[r("1"), r("3"), r("6")]);
        assert_eq!(orbits_to_probabilities(&l).unwrap(), p);
    }

    #[test]
    fn one_dimensional_example() {
        // GL(1, F_3) = {1, 2}: the identity fixes the line, the other element
        // only the origin.
        let p = spectrum(1, "3", &["1/2", "1/2"]);
        let l = probabilities_to_orbits(&p);
        assert_eq!(l.counts(), &[r("1"), r("1")]);
        assert_eq!(orbits_to_probabilities(&l).unwrap(), p);
    }

    #[test]
    fn operator_routes_match_closed_formulas() {
        let examples = [
            spectrum(2, "2", &["1/3", "1/2", "1/6"]),
            spectrum(2, "2", &["0", "0", "1"]),
            spectrum(3, "5/2", &["-1/3", "2", "1/4", "7"]),
            spectrum(0, "7", &["4/3"]),
            spectrum(4, "-2", &["1", "1/2", "-5", "0", "2/9"]),
        ];
        for p in examples {
            let l_direct = probabilities_to_orbits(&p);
            let l_op = probabilities_to_orbits_via_operator(&p).unwrap();
            assert_eq!(l_direct, l_op);
            let p_direct = orbits_to_probabilities(&l_direct).unwrap();
            let p_op = orbits_to_probabilities_via_operator(&l_direct).unwrap();
            assert_eq!(p_direct, p_op);
            assert_eq!(p_direct, p);
        }
    }

    #[test]
    fn degenerate_q_is_rejected_where_division_happens() {
        let l = orbit(2, "1", &["1", "1", "1"]);
        assert!(matches!(
            orbits_to_probabilities(&l),
            Err(Error::DegenerateQ { power: 1, .. })
        ));
        let l = orbit(2, "-1", &["1", "1", "1"]);
        assert!(matches!(
            orbits_to_probabilities(&l),
            Err(Error::DegenerateQ { power: 2, .. })
        ));
        // d = 0 never divides, so even q = 1 is fine there.
        let l = orbit(0, "1", &["5"]);
        assert_eq!(orbits_to_probabilities(&l).unwrap().probs(), &[r("5")]);
        // The forward direction is total in q.
        let p = spectrum(2, "1", &["1/3", "1/2", "1/6"]);
        assert_eq!(probabilities_to_orbits(&p).counts()[1], Rat::zero());
    }

    #[test]
    fn generating_function_normalizes_by_the_ladder() {
        let l = orbit(2, "2", &["1", "1", "1"]);
        let gen = generating_function_l(&l).unwrap();
        assert_eq!(gen.coeffs(), &[r("1"), r("1"), r("1/3")]);
        assert_eq!(gen.substitute_neg_x().coeffs(), &[r("1"), r("-1"), r("1/3")]);
    }

    #[test]
    fn normalized_spectra_have_one_empty_orbit() {
        let p = spectrum(3, "3", &["1/4", "1/4", "1/4", "1/4"]);
        let l = probabilities_to_orbits(&p);
        assert_eq!(l.counts()[0], Rat::one());
    }

    #[test]
    fn validation_catches_each_constraint() {
        let good = spectrum(2, "2", &["1/3", "1/2", "1/6"]);
        let v = validate_group_spectrum(&good, 6);
        assert!(v.passed());
        assert!(v.problems.is_empty());

        let wrong_sum = spectrum(1, "2", &["1/2", "1/3"]);
        assert!(!validate_group_spectrum(&wrong_sum, 6).sums_to_one);

        let negative = spectrum(1, "2", &["3/2", "-1/2"]);
        let v = validate_group_spectrum(&negative, 2);
        assert!(!v.nonnegative);

        // Sums to 1 and nonnegative, but 5 * 1/3 is not a whole count.
        let fractional = spectrum(1, "2", &["1/3", "2/3"]);
        let v = validate_group_spectrum(&fractional, 5);
        assert!(v.sums_to_one && v.nonnegative && !v.integral_counts);
        assert_eq!(v.problems.len(), 2);
        assert!(!v.passed());
    }
}
