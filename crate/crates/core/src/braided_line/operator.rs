//! Linear operators on the truncated line, stored as dense rational
//! matrices acting on the monomial basis `1, x, ..., x^N`.

use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::braided_line::poly::GradedPoly;
use crate::rational::Rat;

/// Square matrix over the rationals; column `c` holds the image of `x^c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearOperator {
    rows: Vec<Vec<Rat>>,
}

impl LinearOperator {
    pub fn zero(dim: usize) -> Self {
        assert!(dim > 0, "operators act on at least the constants");
        LinearOperator {
            rows: vec![vec![Rat::zero(); dim]; dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.rows[i][i] = Rat::one();
        }
        m
    }

    pub fn from_fn(dim: usize, mut entry: impl FnMut(usize, usize) -> Rat) -> Self {
        let mut m = Self::zero(dim);
        for r in 0..dim {
            for c in 0..dim {
                m.rows[r][c] = entry(r, c);
            }
        }
        m
    }

    /// Builds the matrix whose `c`-th column is `images[c]`; every image must
    /// share the bound `images.len() - 1`.
    pub fn from_basis_images(images: &[GradedPoly]) -> Self {
        let dim = images.len();
        assert!(dim > 0);
        let mut m = Self::zero(dim);
        for (c, img) in images.iter().enumerate() {
            assert_eq!(img.bound() + 1, dim, "image bound does not match dim");
            for r in 0..dim {
                m.rows[r][c] = img.coeff(r).clone();
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> &Rat {
        &self.rows[row][col]
    }

    pub fn set_entry(&mut self, row: usize, col: usize, value: Rat) {
        self.rows[row][col] = value;
    }

    pub fn apply(&self, f: &GradedPoly) -> GradedPoly {
        assert_eq!(f.bound() + 1, self.dim(), "polynomial bound mismatch");
        let mut out = GradedPoly::zero(f.bound());
        for (c, fc) in f.coeffs().iter().enumerate() {
            if fc.is_zero() {
                continue;
            }
            for r in 0..self.dim() {
                if !self.rows[r][c].is_zero() {
                    out.accumulate(r, &self.rows[r][c] * fc);
                }
            }
        }
        out
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        let dim = self.dim();
        let mut out = Self::zero(dim);
        for r in 0..dim {
            for k in 0..dim {
                if self.rows[r][k].is_zero() {
                    continue;
                }
                for c in 0..dim {
                    if !other.rows[k][c].is_zero() {
                        let term = &self.rows[r][k] * &other.rows[k][c];
                        out.rows[r][c] += term;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        Self::from_fn(self.dim(), |r, c| &self.rows[r][c] + &other.rows[r][c])
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim(), other.dim(), "dimension mismatch");
        Self::from_fn(self.dim(), |r, c| &self.rows[r][c] - &other.rows[r][c])
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.dim(), |r, c| -&self.rows[r][c])
    }

    pub fn scale(&self, s: &Rat) -> Self {
        Self::from_fn(self.dim(), |r, c| &self.rows[r][c] * s)
    }

    pub fn pow(&self, exp: usize) -> Self {
        let mut out = Self::identity(self.dim());
        for _ in 0..exp {
            out = out.compose(self);
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().flatten().all(Rat::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self == &Self::identity(self.dim())
    }
}

impl fmt::Display for LinearOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Rat::to_string).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Serializes row-major as nested arrays of rational strings.
impl Serialize for LinearOperator {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.rows.len()))?;
        for row in &self.rows {
            seq.serialize_element(row)?;
        }
        seq.end()
    }
}
