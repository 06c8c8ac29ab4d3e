//! The braided line and its Hopf structure.
//!
//! The braided line is the polynomial algebra `k[x]` with `x` placed in
//! degree 1 and the braiding `Ψ(x^a ⊗ x^b) = q^(ab) x^b ⊗ x^a` instead of
//! the flip. Everything here works in the truncation `B = k[x]/(x^(N+1))`,
//! which is all the fixed-point application needs, with exact rational
//! coefficients and a generic nonzero rational q.
//!
//! In the braided tensor square `B ⊗ B` multiplication picks up a q-power
//! when the inner factors move past each other: writing `y = x ⊗ 1` and
//! `x = 1 ⊗ x`, monomials obey `x y = q y x`, so `B ⊗ B` is a quantum
//! plane. The structure maps are
//!
//! * coproduct `Δ x^i = sum_j [i choose j]_q x^j ⊗ x^(i-j)` (x is primitive:
//!   `Δx = x ⊗ 1 + 1 ⊗ x`, and the q-binomials arise from powers of that),
//! * counit `ε f = f(0)`,
//! * antipode `S x^i = (-1)^i q^(i(i-1)/2) x^i`, an anti-homomorphism with
//!   respect to the braiding, with inverse `S⁻¹ x^i = (-1)^i q^(-i(i-1)/2) x^i`,
//! * the linear functional `φ` sending every monomial to 1, i.e. evaluation
//!   at x = 1.
//!
//! Out of these the module builds the operator `T = (φ ⊗ S) ∘ Δ` and its
//! inverse, the maps that convert between the two generating functions of a
//! fixed-point spectrum. Because evaluation at 1 is not an algebra map on a
//! braided object, `φ` must always be the last step of a composite; the
//! private `phi_collapse` is the only place a tensor factor is evaluated,
//! and it never reorders factors first.
//!
//! The analytic side of the same structure: the Jackson derivative
//! `∂_q x^n = [n]_q x^(n-1)` is nilpotent on the truncation, its braided
//! exponential `e_q^(∂_q) = sum_i ∂_q^i / [i]_q!` is the shift `(φ ⊗ id) ∘ Δ`,
//! and `T` factors as `S ∘ e_q^(∂_q)`. See [`q_exp_of_operator`].

pub mod operator;
pub mod poly;
pub mod tensor;

pub use operator::LinearOperator;
pub use poly::GradedPoly;
pub use tensor::BraidedTensor;

use crate::error::{Error, Result};
use crate::qcalc::{q_binomial, q_factorial, q_int, QParam};
use crate::rational::Rat;

/// `Ψ(x^a ⊗ x^b) = q^(ab) x^b ⊗ x^a`, extended linearly.
pub fn braiding(t: &BraidedTensor, q: &QParam) -> BraidedTensor {
    braid_with_sign(t, q, 1)
}

/// `Ψ⁻¹(x^a ⊗ x^b) = q^(-ab) x^b ⊗ x^a`.
pub fn braiding_inverse(t: &BraidedTensor, q: &QParam) -> BraidedTensor {
    braid_with_sign(t, q, -1)
}

fn braid_with_sign(t: &BraidedTensor, q: &QParam, sign: i64) -> BraidedTensor {
    let mut out = BraidedTensor::zero(t.bound());
    for (a, b, c) in t.terms() {
        out.add_term(b, a, c * q.pow(sign * (a * b) as i64));
    }
    out
}

/// Product in the braided tensor square:
/// `(x^a ⊗ x^b)(x^c ⊗ x^d) = q^(bc) x^(a+c) ⊗ x^(b+d)`.
pub fn tensor_multiply(s: &BraidedTensor, t: &BraidedTensor, q: &QParam) -> BraidedTensor {
    assert_eq!(s.bound(), t.bound(), "mixed truncation bounds");
    let mut out = BraidedTensor::zero(s.bound());
    for (a, b, cs) in s.terms() {
        for (c, d, ct) in t.terms() {
            out.add_term(a + c, b + d, cs * ct * q.pow((b * c) as i64));
        }
    }
    out
}

/// `Δ x^i = sum_{j=0}^{i} [i choose j]_q x^j ⊗ x^(i-j)`, extended linearly.
/// Degenerate q values that zero a needed binomial denominator are rejected.
pub fn coproduct(f: &GradedPoly, q: &QParam) -> Result<BraidedTensor> {
    let mut out = BraidedTensor::zero(f.bound());
    for (i, fi) in f.coeffs().iter().enumerate() {
        if fi.is_zero() {
            continue;
        }
        for j in 0..=i {
            out.add_term(j, i - j, fi * q_binomial(i, j, q)?);
        }
    }
    Ok(out)
}

/// `ε f = f(0)`.
pub fn counit(f: &GradedPoly) -> Rat {
    f.coeff(0).clone()
}

/// The scalar through which the antipode acts on `x^i`:
/// `S x^i = (-1)^i q^(i(i-1)/2) x^i`.
pub fn antipode_scalar(i: usize, q: &QParam) -> Rat {
    signed_half_power(i, q, 1)
}

/// `S⁻¹ x^i = (-1)^i q^(-i(i-1)/2) x^i`.
pub fn antipode_inverse_scalar(i: usize, q: &QParam) -> Rat {
    signed_half_power(i, q, -1)
}

fn signed_half_power(i: usize, q: &QParam, sign: i64) -> Rat {
    let triangle = (i * i.saturating_sub(1) / 2) as i64;
    let power = q.pow(sign * triangle);
    if i % 2 == 0 {
        power
    } else {
        -power
    }
}

pub fn antipode(f: &GradedPoly, q: &QParam) -> GradedPoly {
    scale_by_degree(f, |i| antipode_scalar(i, q))
}

pub fn antipode_inverse(f: &GradedPoly, q: &QParam) -> GradedPoly {
    scale_by_degree(f, |i| antipode_inverse_scalar(i, q))
}

fn scale_by_degree(f: &GradedPoly, factor: impl Fn(usize) -> Rat) -> GradedPoly {
    let mut out = GradedPoly::zero(f.bound());
    for (i, c) in f.coeffs().iter().enumerate() {
        if !c.is_zero() {
            out.set_coeff(i, c * factor(i));
        }
    }
    out
}

/// The multiplication map `m : B ⊗ B -> B`, `x^a ⊗ x^b -> x^(a+b)`. In one
/// variable no braiding factor appears; total degree is preserved, so the
/// truncation is never hit.
pub fn collapse_product(t: &BraidedTensor) -> GradedPoly {
    let mut out = GradedPoly::zero(t.bound());
    for (a, b, c) in t.terms() {
        out.accumulate(a + b, c.clone());
    }
    out
}

/// How a tensor factor is transformed before `φ` collapses the left slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum FactorMap {
    Keep,
    Antipode,
    AntipodeInverse,
}

fn factor_scalar(map: FactorMap, degree: usize, q: &QParam) -> Rat {
    match map {
        FactorMap::Keep => Rat::one(),
        FactorMap::Antipode => antipode_scalar(degree, q),
        FactorMap::AntipodeInverse => antipode_inverse_scalar(degree, q),
    }
}

/// Applies degreewise maps to both tensor factors, then `φ` to the left one:
/// `x^a ⊗ x^b -> scalar_left(a) scalar_right(b) x^b`.
///
/// Both antipodes act diagonally on monomials, so the factor maps commute
/// with this collapse and no reordering of tensor legs is ever needed. `φ`
/// itself happens last, which is the only sound position for it: evaluation
/// at x = 1 is not an algebra map in the braided category, so collapsing a
/// factor early would silently drop braiding phases.
fn phi_collapse(t: &BraidedTensor, left: FactorMap, right: FactorMap, q: &QParam) -> GradedPoly {
    let mut out = GradedPoly::zero(t.bound());
    for (a, b, c) in t.terms() {
        out.accumulate(b, c * factor_scalar(left, a, q) * factor_scalar(right, b, q));
    }
    out
}

/// `(φ ⊗ id) ∘ Δ`: the braided shift of the argument by 1. On monomials
/// `x^i -> sum_j [i choose j]_q x^j`, the q-deformed expansion of `(x+1)^i`.
pub fn operator_q_shift(bound: usize, q: &QParam) -> Result<LinearOperator> {
    operator_from_coproduct(bound, q, FactorMap::Keep, FactorMap::Keep, false)
}

/// `T = (φ ⊗ S) ∘ Δ`, the conversion matrix from the fixed-space spectrum to
/// the alternating orbit generating function. On monomials
/// `T x^i = sum_j [i choose j]_q q^(j(j-1)/2) (-x)^j`; in particular
/// `T(x) = 1 - x` and `T(x²) = 1 - (1+q)x + qx²`.
pub fn operator_t(bound: usize, q: &QParam) -> Result<LinearOperator> {
    operator_from_coproduct(bound, q, FactorMap::Keep, FactorMap::Antipode, false)
}

/// The two independent constructions of `T⁻¹`. Both give
/// `T⁻¹ x^i = sum_j [i choose j]_q q^(-j(j-1)/2) q^(-j(i-j)) (-x)^j`;
/// computing them separately lets tests confirm the agreement.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InverseRoute {
    /// `(φ∘S ⊗ id) ∘ Δ ∘ S⁻¹`: undo the antipode, recomultiply, kill the
    /// left leg through `φ∘S`.
    AntipodeConjugation,
    /// `(φ ⊗ S⁻¹) ∘ Ψ⁻¹ ∘ Δ`: the form obtained by dualizing `T` itself.
    InverseBraiding,
}

pub fn operator_t_inverse(bound: usize, q: &QParam, route: InverseRoute) -> Result<LinearOperator> {
    match route {
        InverseRoute::AntipodeConjugation => {
            let mut images = Vec::with_capacity(bound + 1);
            for i in 0..=bound {
                let pre = antipode_inverse(&GradedPoly::monomial(bound, i), q);
                let split = coproduct(&pre, q)?;
                images.push(phi_collapse(&split, FactorMap::Antipode, FactorMap::Keep, q));
            }
            Ok(LinearOperator::from_basis_images(&images))
        }
        InverseRoute::InverseBraiding => {
            operator_from_coproduct(bound, q, FactorMap::Keep, FactorMap::AntipodeInverse, true)
        }
    }
}

fn operator_from_coproduct(
    bound: usize,
    q: &QParam,
    left: FactorMap,
    right: FactorMap,
    unbraid: bool,
) -> Result<LinearOperator> {
    let mut images = Vec::with_capacity(bound + 1);
    for i in 0..=bound {
        let mut split = coproduct(&GradedPoly::monomial(bound, i), q)?;
        if unbraid {
            split = braiding_inverse(&split, q);
        }
        images.push(phi_collapse(&split, left, right, q));
    }
    Ok(LinearOperator::from_basis_images(&images))
}

/// The antipode as a diagonal matrix on the truncation.
pub fn antipode_operator(bound: usize, q: &QParam) -> LinearOperator {
    diagonal_operator(bound, |i| antipode_scalar(i, q))
}

pub fn antipode_inverse_operator(bound: usize, q: &QParam) -> LinearOperator {
    diagonal_operator(bound, |i| antipode_inverse_scalar(i, q))
}

fn diagonal_operator(bound: usize, diag: impl Fn(usize) -> Rat) -> LinearOperator {
    LinearOperator::from_fn(bound + 1, |r, c| {
        if r == c {
            diag(r)
        } else {
            Rat::zero()
        }
    })
}

/// Jackson q-derivative `∂_q x^n = [n]_q x^(n-1)`. Requires q != 1 (at q = 1
/// it would just be d/dx, which this deformation-indexed module refuses to
/// conflate).
pub fn jackson_derivative(f: &GradedPoly, q: &QParam) -> Result<GradedPoly> {
    q.require_admissible(1)?;
    let mut out = GradedPoly::zero(f.bound());
    for (n, c) in f.coeffs().iter().enumerate().skip(1) {
        if !c.is_zero() {
            out.set_coeff(n - 1, c * q_int(n, q)?);
        }
    }
    Ok(out)
}

/// Matrix of the Jackson derivative on the truncation: strictly upper
/// shift weighted by q-integers, hence nilpotent.
pub fn jackson_operator(bound: usize, q: &QParam) -> Result<LinearOperator> {
    q.require_admissible(1)?;
    let mut m = LinearOperator::zero(bound + 1);
    for n in 1..=bound {
        m.set_entry(n - 1, n, q_int(n, q)?);
    }
    Ok(m)
}

/// Braided exponential `e_q^A = sum_{i=0}^{N} A^i / [i]_q!` of a nilpotent
/// operator on an (N+1)-dimensional truncation.
///
/// Nilpotency (`A^(N+1) = 0`) makes the sum finite and exact, and gives the
/// inversion law `e_q^A ∘ e_(q⁻¹)^(-A) = id` without any convergence
/// questions. Rejects non-nilpotent input and q values degenerate for some
/// needed q-factorial.
pub fn q_exp_of_operator(a: &LinearOperator, q: &QParam) -> Result<LinearOperator> {
    let dim = a.dim();
    if !a.pow(dim).is_zero() {
        return Err(Error::NotNilpotent { power: dim });
    }
    let mut acc = LinearOperator::identity(dim);
    let mut power = LinearOperator::identity(dim);
    for i in 1..dim {
        power = power.compose(a);
        if power.is_zero() {
            break;
        }
        let fact = q_factorial(i, q)?;
        acc = acc.add(&power.scale(&fact.recip().expect("q-factorial is nonzero")));
    }
    Ok(acc)
}
