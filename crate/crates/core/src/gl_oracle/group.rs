//! Finite matrix groups by brute force: explicit element lists, fixed-space
//! statistics, and two independent ways to count orbits on independent
//! tuples. Everything here exists to check the braided-line transforms
//! against reality, so it favors obviously-correct enumeration over
//! cleverness.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::gl_oracle::field::{Field, FieldSpec};
use crate::gl_oracle::matrix::FqMatrix;
use crate::orbit_transform::{FixSpectrum, OrbitCounts};
use crate::qcalc::{count_indep_tuples, QParam};
use crate::rational::Rat;

/// A finite subgroup of GL(d, F_q) with its elements fully enumerated.
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    field: Arc<Field>,
    d: usize,
    generators: Vec<FqMatrix>,
    elements: Vec<FqMatrix>,
}

/// Breadth-first closure of a generating set under right multiplication.
/// Finite monoids of invertible matrices are groups, so closing under
/// products alone suffices; no inverses are taken. Fails with
/// [`Error::OrderBoundExceeded`] as soon as the element list would grow past
/// `max_order`.
pub fn group_closure(generators: &[FqMatrix], max_order: usize) -> Result<MatrixGroup> {
    let first = generators
        .first()
        .ok_or_else(|| Error::InvalidInput("a group needs at least one generator".into()))?;
    let d = first.dim();
    let field = Arc::clone(first.field());
    for (index, g) in generators.iter().enumerate() {
        if g.dim() != d || g.field().order() != field.order() {
            return Err(Error::InvalidInput(format!(
                "generator {index} does not match the first generator's shape"
            )));
        }
        if g.rank() != d {
            return Err(Error::SingularGenerator { index });
        }
    }

    let identity = FqMatrix::identity(&field, d);
    let mut elements = vec![identity.clone()];
    let mut seen: HashSet<Vec<u8>> = HashSet::new();
    seen.insert(identity.canonical_bytes());
    let mut head = 0;
    while head < elements.len() {
        let current = elements[head].clone();
        head += 1;
        for g in generators {
            let next = current.mul(g);
            let key = next.canonical_bytes();
            if !seen.contains(&key) {
                if elements.len() >= max_order {
                    return Err(Error::OrderBoundExceeded { max_order });
                }
                seen.insert(key);
                elements.push(next);
            }
        }
    }
    Ok(MatrixGroup {
        field,
        d,
        generators: generators.to_vec(),
        elements,
    })
}

/// The classical generating set of GL(d, F_q): a primitive scalar in the
/// first slot, the coordinate cycle, and one elementary transvection.
/// For d = 1 the scalar alone generates.
pub fn standard_gl_generators(field: &Arc<Field>, d: usize) -> Vec<FqMatrix> {
    assert!(d >= 1);
    let alpha = field.multiplicative_generator();
    let mut diag = FqMatrix::identity(field, d);
    diag.set(0, 0, alpha);
    if d == 1 {
        return vec![diag];
    }
    let mut cycle = FqMatrix::from_rows(field, &vec![vec![0; d]; d]).expect("square");
    for i in 0..d {
        cycle.set((i + 1) % d, i, 1);
    }
    let mut transvection = FqMatrix::identity(field, d);
    transvection.set(0, 1, 1);
    vec![diag, cycle, transvection]
}

/// Dimension of the fixed space of `g`, i.e. `d - rank(g - I)`.
pub fn fix_dimension(g: &FqMatrix) -> usize {
    g.dim() - g.minus_identity().rank()
}

impl MatrixGroup {
    /// The full general linear group in dimension d over the given field.
    pub fn full_gl(field: &Arc<Field>, d: usize, max_order: usize) -> Result<Self> {
        group_closure(&standard_gl_generators(field, d), max_order)
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn elements(&self) -> &[FqMatrix] {
        &self.elements
    }

    pub fn generators(&self) -> &[FqMatrix] {
        &self.generators
    }

    fn q_param(&self) -> QParam {
        QParam::from_integer(self.field.order() as i64).expect("field order is nonzero")
    }

    /// Tally of elements by fixed-space dimension, indices `0..=d`.
    pub fn fix_dimension_tally(&self) -> Vec<u64> {
        let mut tally = vec![0u64; self.d + 1];
        for g in &self.elements {
            tally[fix_dimension(g)] += 1;
        }
        tally
    }

    /// The spectrum `P_i = #{g : fix(g) has dimension i} / |G|`.
    pub fn fix_spectrum(&self) -> FixSpectrum {
        let order = Rat::from(self.order());
        let probs = self
            .fix_dimension_tally()
            .iter()
            .map(|&count| Rat::from(count) / &order)
            .collect();
        FixSpectrum::new(self.d, self.q_param(), probs).expect("tally has length d + 1")
    }

    /// Orbit counts by averaging: `L_j = (1/|G|) sum_g #{independent j-tuples
    /// fixed by g}`, and a g with an i-dimensional fixed space fixes exactly
    /// the tuples inside that space. The averages must come out integral;
    /// anything else reports [`Error::NonIntegerOrbitCount`].
    pub fn orbit_counts_burnside(&self) -> Result<OrbitCounts> {
        let q = self.q_param();
        let tally = self.fix_dimension_tally();
        let order = Rat::from(self.order());
        let mut counts = Vec::with_capacity(self.d + 1);
        for j in 0..=self.d {
            let total: Rat = tally
                .iter()
                .enumerate()
                .map(|(i, &n)| Rat::from(n) * count_indep_tuples(i, j, &q))
                .sum();
            let average = total / &order;
            if !average.is_integer() || average.is_negative() {
                return Err(Error::NonIntegerOrbitCount {
                    j,
                    value: average,
                });
            }
            counts.push(average);
        }
        OrbitCounts::new(self.d, q, counts)
    }

    /// Orbit counts by explicit enumeration: list every ordered independent
    /// j-tuple, then flood-fill orbits under the generators. Refuses with
    /// [`Error::TupleBudgetExceeded`] if some j needs more than `max_tuples`
    /// tuples (the analytic count is known in advance).
    pub fn orbit_counts_direct(&self, max_tuples: usize) -> Result<OrbitCounts> {
        let q = self.q_param();
        let mut counts = Vec::with_capacity(self.d + 1);
        for j in 0..=self.d {
            let required = count_indep_tuples(self.d, j, &q)
                .to_u64()
                .expect("tuple counts at integer q are integers");
            if required > max_tuples as u64 {
                return Err(Error::TupleBudgetExceeded {
                    j,
                    required,
                    max_tuples,
                });
            }
            counts.push(Rat::from(self.count_tuple_orbits(j, required)));
        }
        OrbitCounts::new(self.d, q, counts)
    }

    fn count_tuple_orbits(&self, j: usize, expected: u64) -> u64 {
        let tuples = self.independent_tuples(j);
        assert_eq!(tuples.len() as u64, expected, "tuple enumeration mismatch");
        let index: HashMap<&[u64], usize> = tuples
            .iter()
            .enumerate()
            .map(|(i, t)| (t.as_slice(), i))
            .collect();
        let mut visited = vec![false; tuples.len()];
        let mut orbits = 0;
        let mut stack = Vec::new();
        for start in 0..tuples.len() {
            if visited[start] {
                continue;
            }
            orbits += 1;
            visited[start] = true;
            stack.push(start);
            while let Some(at) = stack.pop() {
                for g in &self.generators {
                    let image = self.apply_to_tuple(g, &tuples[at]);
                    let idx = index[image.as_slice()];
                    if !visited[idx] {
                        visited[idx] = true;
                        stack.push(idx);
                    }
                }
            }
        }
        orbits
    }

    /// All ordered linearly independent j-tuples of vector indices, in
    /// lexicographic order. Vectors are encoded base-q like field elements
    /// are encoded base-p.
    fn independent_tuples(&self, j: usize) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        let mut tuple = Vec::with_capacity(j);
        let mut basis: Vec<Vec<u64>> = Vec::with_capacity(j);
        self.extend_tuple(j, &mut tuple, &mut basis, &mut out);
        out
    }

    fn extend_tuple(
        &self,
        j: usize,
        tuple: &mut Vec<u64>,
        basis: &mut Vec<Vec<u64>>,
        out: &mut Vec<Vec<u64>>,
    ) {
        if tuple.len() == j {
            out.push(tuple.clone());
            return;
        }
        let space = (self.field.order() as u128).pow(self.d as u32) as u64;
        for v in 1..space {
            let coords = self.decode_vector(v);
            if let Some(reduced) = self.reduce_against(&coords, basis) {
                tuple.push(v);
                basis.push(reduced);
                self.extend_tuple(j, tuple, basis, out);
                basis.pop();
                tuple.pop();
            }
        }
    }

    fn decode_vector(&self, v: u64) -> Vec<u64> {
        let q = self.field.order();
        let mut rest = v;
        (0..self.d)
            .map(|_| {
                let c = rest % q;
                rest /= q;
                c
            })
            .collect()
    }

    fn encode_vector(&self, coords: &[u64]) -> u64 {
        let q = self.field.order();
        coords.iter().rev().fold(0, |acc, &c| acc * q + c)
    }

    /// Reduces `coords` against a row-echelon basis; `Some(normalized row)`
    /// when independent, `None` when the vector lies in the span.
    fn reduce_against(&self, coords: &[u64], basis: &[Vec<u64>]) -> Option<Vec<u64>> {
        let f = &self.field;
        let mut v = coords.to_vec();
        for row in basis {
            let pivot = row.iter().position(|&c| c != 0).expect("normalized row");
            if v[pivot] != 0 {
                let factor = v[pivot];
                for (slot, &r) in v.iter_mut().zip(row) {
                    *slot = f.sub(*slot, f.mul(factor, r));
                }
            }
        }
        let lead = v.iter().position(|&c| c != 0)?;
        let inv = f.inv(v[lead]).expect("leading entry is nonzero");
        for slot in v.iter_mut() {
            *slot = f.mul(*slot, inv);
        }
        Some(v)
    }

    fn apply_to_tuple(&self, g: &FqMatrix, tuple: &[u64]) -> Vec<u64> {
        tuple
            .iter()
            .map(|&v| self.encode_vector(&g.apply(&self.decode_vector(v))))
            .collect()
    }

    /// The conjugate group `h G h⁻¹`, rebuilt from conjugated generators.
    pub fn conjugate(&self, h: &FqMatrix) -> Result<Self> {
        let h_inv = h.inverse()?;
        let generators: Vec<FqMatrix> = self
            .generators
            .iter()
            .map(|g| h.mul(g).mul(&h_inv))
            .collect();
        group_closure(&generators, self.order())
    }
}

/// JSON description of a subgroup: the field (`p`, optional `k` and
/// `modulus`) and generator matrices as row-major integer grids.
#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupInput {
    pub d: usize,
    pub p: u64,
    #[serde(default = "one")]
    pub k: u32,
    #[serde(default)]
    pub modulus: Option<Vec<u64>>,
    pub generators: Vec<Vec<Vec<u64>>>,
}

fn one() -> u32 {
    1
}

impl GroupInput {
    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::InvalidInput(format!("group JSON: {e}")))
    }

    pub fn field(&self) -> Result<Field> {
        let spec = if self.k == 1 {
            if self.modulus.is_some() {
                return Err(Error::InvalidInput(
                    "a prime field takes no modulus".into(),
                ));
            }
            FieldSpec::prime(self.p)?
        } else {
            match &self.modulus {
                Some(m) => FieldSpec::extension(self.p, self.k, m.clone())?,
                None => FieldSpec::for_order(
                    self.p
                        .checked_pow(self.k)
                        .ok_or_else(|| Error::InvalidField("p^k overflows".into()))?,
                )?,
            }
        };
        Ok(Field::new(spec))
    }

    /// Builds the group, enumerating at most `max_order` elements.
    pub fn build(&self, max_order: usize) -> Result<MatrixGroup> {
        if self.d == 0 {
            return Err(Error::InvalidInput("dimension must be at least 1".into()));
        }
        let field = Arc::new(self.field()?);
        if self.generators.is_empty() {
            return Err(Error::InvalidInput(
                "a group needs at least one generator".into(),
            ));
        }
        let mut gens = Vec::with_capacity(self.generators.len());
        for rows in &self.generators {
            if rows.len() != self.d {
                return Err(Error::InvalidInput(format!(
                    "generator has {} rows in dimension {}",
                    rows.len(),
                    self.d
                )));
            }
            gens.push(FqMatrix::from_rows(&field, rows)?);
        }
        group_closure(&gens, max_order)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(q: u64) -> Arc<Field> {
        Arc::new(Field::from_order(q).unwrap())
    }

    fn rat(s: &str) -> Rat {
        s.parse().unwrap()
    }

    #[test]
    fn closure_finds_small_general_linear_groups() {
        for (d, q, order) in [
            (1usize, 2u64, 1usize),
            (1, 3, 2),
            (2, 2, 6),
            (2, 3, 48),
            (3, 2, 168),
            (2, 4, 180),
            (2, 5, 480),
        ] {
            let f = field(q);
            let g = MatrixGroup::full_gl(&f, d, 1_000_000).unwrap();
            assert_eq!(g.order(), order, "GL({d}, {q})");
        }
    }

    #[test]
    fn closure_respects_the_order_bound() {
        let f = field(2);
        let err = MatrixGroup::full_gl(&f, 3, 10);
        assert!(matches!(err, Err(Error::OrderBoundExceeded { max_order: 10 })));
        // An exact bound is not exceeded.
        assert!(MatrixGroup::full_gl(&f, 2, 6).is_ok());
    }

    #[test]
    fn singular_generators_are_rejected() {
        let f = field(2);
        let sing = FqMatrix::from_rows(&f, &[vec![1, 1], vec![1, 1]]).unwrap();
        let id = FqMatrix::identity(&f, 2);
        assert!(matches!(
            group_closure(&[id, sing], 100),
            Err(Error::SingularGenerator { index: 1 })
        ));
        assert!(matches!(
            group_closure(&[], 100),
            Err(Error::InvalidInput(_))
        ));
    }

    #[test]
    fn trivial_group_statistics() {
        let f = field(2);
        let id = FqMatrix::identity(&f, 2);
        let g = group_closure(&[id], 10).unwrap();
        assert_eq!(g.order(), 1);
        assert_eq!(g.fix_spectrum().probs(), &[rat("0"), rat("0"), rat("1")]);
        let l = g.orbit_counts_burnside().unwrap();
        assert_eq!(l.counts(), &[rat("1"), rat("3"), rat("6")]);
        let l2 = g.orbit_counts_direct(100).unwrap();
        assert_eq!(l2.counts(), l.counts());
    }

    #[test]
    fn gl22_is_transitive_on_independent_tuples() {
        let f = field(2);
        let g = MatrixGroup::full_gl(&f, 2, 100).unwrap();
        assert_eq!(g.fix_spectrum().probs(), &[rat("1/3"), rat("1/2"), rat("1/6")]);
        assert_eq!(
            g.orbit_counts_burnside().unwrap().counts(),
            &[rat("1"), rat("1"), rat("1")]
        );
        assert_eq!(
            g.orbit_counts_direct(100).unwrap().counts(),
            &[rat("1"), rat("1"), rat("1")]
        );
    }

    #[test]
    fn fix_dimensions_in_gl22() {
        let f = field(2);
        let g = MatrixGroup::full_gl(&f, 2, 100).unwrap();
        let tally = g.fix_dimension_tally();
        // 2 fixed-point-free (the order-3 rotations), 3 transvections fixing
        // a line, 1 identity.
        assert_eq!(tally, vec![2, 3, 1]);
    }

    #[test]
    fn direct_enumeration_respects_budget() {
        let f = field(2);
        let g = MatrixGroup::full_gl(&f, 3, 1000).unwrap();
        assert!(matches!(
            g.orbit_counts_direct(100),
            Err(Error::TupleBudgetExceeded { j: 3, required: 168, .. })
        ));
        assert!(g.orbit_counts_direct(168).is_ok());
    }

    #[test]
    fn cyclic_subgroup_of_gl23() {
        // One transvection generates a cyclic group of order 3 inside
        // GL(2, 3): identity fixes the plane, both powers fix a line.
        let f = field(3);
        let t = FqMatrix::from_rows(&f, &[vec![1, 1], vec![0, 1]]).unwrap();
        let g = group_closure(&[t], 10).unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.fix_spectrum().probs(), &[rat("0"), rat("2/3"), rat("1/3")]);
        let burnside = g.orbit_counts_burnside().unwrap();
        let direct = g.orbit_counts_direct(1000).unwrap();
        assert_eq!(burnside.counts(), direct.counts());
        // L = (1, 4, 16): 8 nonzero vectors in orbits {v, v+e1-ish} etc.
        assert_eq!(burnside.counts(), &[rat("1"), rat("4"), rat("16")]);
    }

    #[test]
    fn conjugation_preserves_all_statistics() {
        let f = field(3);
        let t = FqMatrix::from_rows(&f, &[vec![1, 1], vec![0, 1]]).unwrap();
        let g = group_closure(&[t], 10).unwrap();
        let h = FqMatrix::from_rows(&f, &[vec![1, 2], vec![1, 1]]).unwrap();
        let conj = g.conjugate(&h).unwrap();
        assert_eq!(conj.order(), g.order());
        assert_eq!(conj.fix_spectrum().probs(), g.fix_spectrum().probs());
        assert_eq!(
            conj.orbit_counts_direct(1000).unwrap().counts(),
            g.orbit_counts_direct(1000).unwrap().counts()
        );
    }

    #[test]
    fn group_input_round_trip() {
        let json = r#"{
            "d": 2,
            "p": 3,
            "generators": [[[1, 1], [0, 1]]]
        }"#;
        let input = GroupInput::parse(json).unwrap();
        let g = input.build(100).unwrap();
        assert_eq!(g.order(), 3);

        let ext = r#"{
            "d": 1,
            "p": 2,
            "k": 2,
            "generators": [[[2]]]
        }"#;
        let g = GroupInput::parse(ext).unwrap().build(100).unwrap();
        assert_eq!(g.order(), 3, "multiplicative group of F_4");

        assert!(GroupInput::parse("{\"d\": 2}").is_err());
        let bad = r#"{"d": 2, "p": 3, "modulus": [1, 0, 1], "generators": [[[1,0],[0,1]]]}"#;
        assert!(GroupInput::parse(bad).unwrap().build(10).is_err());
    }

    #[test]
    fn burnside_and_direct_agree_on_borel() {
        // Upper triangular invertible matrices over F_3: order 12.
        let f = field(3);
        let gens = [
            FqMatrix::from_rows(&f, &[vec![2, 0], vec![0, 1]]).unwrap(),
            FqMatrix::from_rows(&f, &[vec![1, 0], vec![0, 2]]).unwrap(),
            FqMatrix::from_rows(&f, &[vec![1, 1], vec![0, 1]]).unwrap(),
        ];
        let g = group_closure(&gens, 100).unwrap();
        assert_eq!(g.order(), 12);
        let burnside = g.orbit_counts_burnside().unwrap();
        let direct = g.orbit_counts_direct(1000).unwrap();
        assert_eq!(burnside.counts(), direct.counts());
        assert_eq!(burnside.counts()[0], Rat::one());
    }
}
