//! Dense square matrices over a finite field.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gl_oracle::field::Field;

/// Row-major d x d matrix of element indices, sharing its field.
#[derive(Clone)]
pub struct FqMatrix {
    field: Arc<Field>,
    d: usize,
    entries: Vec<u64>,
}

impl FqMatrix {
    pub fn identity(field: &Arc<Field>, d: usize) -> Self {
        assert!(d >= 1, "matrices act on at least one dimension");
        let mut m = FqMatrix {
            field: Arc::clone(field),
            d,
            entries: vec![0; d * d],
        };
        for i in 0..d {
            m.entries[i * d + i] = 1;
        }
        m
    }

    pub fn from_rows(field: &Arc<Field>, rows: &[Vec<u64>]) -> Result<Self> {
        let d = rows.len();
        if d == 0 {
            return Err(Error::InvalidInput("matrix has no rows".into()));
        }
        let mut entries = Vec::with_capacity(d * d);
        for row in rows {
            if row.len() != d {
                return Err(Error::InvalidInput(format!(
                    "row of length {} in a {d} x {d} matrix",
                    row.len()
                )));
            }
            for &e in row {
                if e >= field.order() {
                    return Err(Error::InvalidInput(format!(
                        "entry {e} is not an element of a field of order {}",
                        field.order()
                    )));
                }
                entries.push(e);
            }
        }
        Ok(FqMatrix {
            field: Arc::clone(field),
            d,
            entries,
        })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn get(&self, row: usize, col: usize) -> u64 {
        self.entries[row * self.d + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: u64) {
        assert!(value < self.field.order());
        self.entries[row * self.d + col] = value;
    }

    fn assert_compatible(&self, other: &Self) {
        assert_eq!(self.d, other.d, "dimension mismatch");
        assert_eq!(
            self.field.order(),
            other.field.order(),
            "field order mismatch"
        );
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.assert_compatible(other);
        let d = self.d;
        let f = &self.field;
        let mut entries = vec![0u64; d * d];
        for r in 0..d {
            for k in 0..d {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..d {
                    let b = other.get(k, c);
                    if b != 0 {
                        let slot = &mut entries[r * d + c];
                        *slot = f.add(*slot, f.mul(a, b));
                    }
                }
            }
        }
        FqMatrix {
            field: Arc::clone(&self.field),
            d,
            entries,
        }
    }

    /// `self - I`, the matrix whose kernel is the fixed space.
    pub fn minus_identity(&self) -> Self {
        let mut m = self.clone();
        for i in 0..self.d {
            let e = m.get(i, i);
            m.entries[i * self.d + i] = self.field.sub(e, 1);
        }
        m
    }

    pub fn is_identity(&self) -> bool {
        self.entries
            .iter()
            .enumerate()
            .all(|(idx, &e)| e == u64::from(idx / self.d == idx % self.d))
    }

    /// Rank by Gaussian elimination on a scratch copy.
    pub fn rank(&self) -> usize {
        let d = self.d;
        let f = &self.field;
        let mut m = self.entries.clone();
        let mut rank = 0;
        for col in 0..d {
            let pivot = (rank..d).find(|&r| m[r * d + col] != 0);
            let Some(pivot) = pivot else { continue };
            m.swap_ranges(pivot * d, rank * d, d);
            let inv = f.inv(m[rank * d + col]).expect("pivot is nonzero");
            for c in col..d {
                m[rank * d + c] = f.mul(m[rank * d + c], inv);
            }
            for r in 0..d {
                if r != rank && m[r * d + col] != 0 {
                    let factor = m[r * d + col];
                    for c in col..d {
                        let sub = f.mul(factor, m[rank * d + c]);
                        m[r * d + c] = f.sub(m[r * d + c], sub);
                    }
                }
            }
            rank += 1;
            if rank == d {
                break;
            }
        }
        rank
    }

    /// Gauss-Jordan inverse; [`Error::Singular`] when the rank is deficient.
    pub fn inverse(&self) -> Result<Self> {
        let d = self.d;
        let f = &self.field;
        let mut m = self.entries.clone();
        let mut inv = FqMatrix::identity(&self.field, d).entries;
        for col in 0..d {
            let pivot = (col..d)
                .find(|&r| m[r * d + col] != 0)
                .ok_or(Error::Singular)?;
            m.swap_ranges(pivot * d, col * d, d);
            inv.swap_ranges(pivot * d, col * d, d);
            let scale = f.inv(m[col * d + col]).expect("pivot is nonzero");
            for c in 0..d {
                m[col * d + c] = f.mul(m[col * d + c], scale);
                inv[col * d + c] = f.mul(inv[col * d + c], scale);
            }
            for r in 0..d {
                if r != col && m[r * d + col] != 0 {
                    let factor = m[r * d + col];
                    for c in 0..d {
                        let sub_m = f.mul(factor, m[col * d + c]);
                        m[r * d + c] = f.sub(m[r * d + c], sub_m);
                        let sub_i = f.mul(factor, inv[col * d + c]);
                        inv[r * d + c] = f.sub(inv[r * d + c], sub_i);
                    }
                }
            }
        }
        Ok(FqMatrix {
            field: Arc::clone(&self.field),
            d,
            entries: inv,
        })
    }

    /// Image of a coordinate vector under this matrix.
    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        assert_eq!(v.len(), self.d, "vector length mismatch");
        let f = &self.field;
        (0..self.d)
            .map(|r| {
                v.iter()
                    .enumerate()
                    .fold(0, |acc, (c, &x)| f.add(acc, f.mul(self.get(r, c), x)))
            })
            .collect()
    }

    /// Deterministic byte encoding: entries row-major, one byte each when the
    /// field order fits, two little-endian bytes otherwise.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        if self.field.order() <= 256 {
            self.entries.iter().map(|&e| e as u8).collect()
        } else {
            self.entries
                .iter()
                .flat_map(|&e| (e as u16).to_le_bytes())
                .collect()
        }
    }
}

impl PartialEq for FqMatrix {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d
            && self.field.order() == other.field.order()
            && self.entries == other.entries
    }
}

impl Eq for FqMatrix {}

impl Hash for FqMatrix {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.d.hash(state);
        self.entries.hash(state);
    }
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FqMatrix({} x {} over F_{})", self.d, self.d, self.field.order())?;
        for r in 0..self.d {
            let row: Vec<String> = (0..self.d).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Swaps two non-overlapping length-`len` ranges of a flat buffer.
trait SwapRanges {
    fn swap_ranges(&mut self, a: usize, b: usize, len: usize);
}

impl SwapRanges for Vec<u64> {
    fn swap_ranges(&mut self, a: usize, b: usize, len: usize) {
        if a == b {
            return;
        }
        for i in 0..len {
            self.swap(a + i, b + i);
        }
    }
}
