//! Arithmetic in small finite fields F_(p^k).
//!
//! Elements are the indices `0..q`. The base-p digits of an index, least
//! significant first, are the coefficients of its residue polynomial in
//! `F_p[t]/(modulus)`; index 0 is zero, index 1 is one, index p is `t`.
//! Prime fields (k = 1) skip the polynomial layer entirely. Arithmetic works
//! directly on digit vectors; at the orders this crate handles (q <= 65536,
//! and in practice far smaller) table-free arithmetic is plenty fast and
//! keeps construction O(1).

use crate::error::{Error, Result};

/// Largest supported field order; also what makes one- or two-byte canonical
/// matrix encodings sufficient.
pub const MAX_FIELD_ORDER: u64 = 65536;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut f = 2;
    while f * f <= n {
        if n % f == 0 {
            return false;
        }
        f += 1;
    }
    true
}

/// Index of the last nonzero coefficient.
fn poly_degree(a: &[u64]) -> Option<usize> {
    a.iter().rposition(|&c| c != 0)
}

/// Remainder of `a` by a monic divisor `b` of degree >= 1, coefficients
/// mod p.
fn poly_rem_monic(p: u64, mut a: Vec<u64>, b: &[u64]) -> Vec<u64> {
    let db = poly_degree(b).expect("divisor is nonzero");
    while let Some(da) = poly_degree(&a) {
        if da < db {
            break;
        }
        let lead = a[da];
        a[da] = 0;
        for i in 0..db {
            let sub = (lead * (p - b[i])) % p;
            a[da - db + i] = (a[da - db + i] + sub) % p;
        }
    }
    a
}

/// Trial division by every monic polynomial of degree 1..=k/2 over F_p.
fn is_irreducible(p: u64, modulus: &[u64]) -> bool {
    let k = poly_degree(modulus).expect("modulus is nonzero");
    for ddeg in 1..=k / 2 {
        let count = p.pow(ddeg as u32);
        for idx in 0..count {
            let mut candidate = vec![0u64; ddeg + 1];
            let mut rest = idx;
            for slot in candidate.iter_mut().take(ddeg) {
                *slot = rest % p;
                rest /= p;
            }
            candidate[ddeg] = 1;
            let rem = poly_rem_monic(p, modulus.to_vec(), &candidate);
            if poly_degree(&rem).is_none() {
                return false;
            }
        }
    }
    true
}

/// Validated description of a finite field: characteristic, extension degree
/// and (for k >= 2) a monic irreducible modulus, coefficients little-endian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    p: u64,
    k: u32,
    modulus: Vec<u64>,
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if p > MAX_FIELD_ORDER {
            return Err(Error::InvalidField(format!(
                "order {p} exceeds the supported maximum {MAX_FIELD_ORDER}"
            )));
        }
        Ok(FieldSpec {
            p,
            k: 1,
            modulus: Vec::new(),
        })
    }

    pub fn extension(p: u64, k: u32, modulus: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if k < 2 {
            return Err(Error::InvalidField(
                "extension degree must be at least 2; use a prime field for k = 1".into(),
            ));
        }
        let order = (p as u128).checked_pow(k).ok_or_else(|| {
            Error::InvalidField(format!("p^k overflows for p = {p}, k = {k}"))
        })?;
        if order > MAX_FIELD_ORDER as u128 {
            return Err(Error::InvalidField(format!(
                "order {order} exceeds the supported maximum {MAX_FIELD_ORDER}"
            )));
        }
        if modulus.len() != k as usize + 1 {
            return Err(Error::InvalidField(format!(
                "modulus for degree {k} needs {} coefficients, got {}",
                k + 1,
                modulus.len()
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField(
                "modulus coefficients must be reduced mod p".into(),
            ));
        }
        if modulus[k as usize] != 1 {
            return Err(Error::InvalidField("modulus must be monic".into()));
        }
        if !is_irreducible(p, &modulus) {
            return Err(Error::InvalidField(format!(
                "modulus {modulus:?} is reducible over F_{p}"
            )));
        }
        Ok(FieldSpec { p, k, modulus })
    }

    /// Field of the given order. Prime orders need nothing else; for the
    /// common small prime powers a built-in irreducible modulus is used.
    pub fn for_order(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidField(format!("{q} is not a prime power")));
        }
        let p = (2..=q).find(|f| q % f == 0).expect("q >= 2 has a factor");
        let mut rest = q;
        let mut k = 0u32;
        while rest % p == 0 {
            rest /= p;
            k += 1;
        }
        if rest != 1 {
            return Err(Error::InvalidField(format!("{q} is not a prime power")));
        }
        if k == 1 {
            return FieldSpec::prime(p);
        }
        let modulus: Vec<u64> = match (p, k) {
            (2, 2) => vec![1, 1, 1],
            (2, 3) => vec![1, 1, 0, 1],
            (2, 4) => vec![1, 1, 0, 0, 1],
            (3, 2) => vec![1, 0, 1],
            (3, 3) => vec![1, 2, 0, 1],
            (5, 2) => vec![2, 0, 1],
            _ => {
                return Err(Error::InvalidField(format!(
                    "no built-in modulus for order {q}; supply one explicitly"
                )))
            }
        };
        FieldSpec::extension(p, k, modulus)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn order(&self) -> u64 {
        self.p.pow(self.k)
    }
}

/// A finite field ready for arithmetic on element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Field {
    spec: FieldSpec,
    order: u64,
}

impl Field {
    pub fn new(spec: FieldSpec) -> Self {
        let order = spec.order();
        Field { spec, order }
    }

    pub fn from_order(q: u64) -> Result<Self> {
        Ok(Field::new(FieldSpec::for_order(q)?))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn characteristic(&self) -> u64 {
        self.spec.p
    }

    fn digits(&self, a: u64) -> Vec<u64> {
        debug_assert!(a < self.order);
        let p = self.spec.p;
        let k = self.spec.k as usize;
        let mut out = vec![0u64; k];
        let mut rest = a;
        for slot in out.iter_mut() {
            *slot = rest % p;
            rest /= p;
        }
        out
    }

    fn undigits(&self, digits: &[u64]) -> u64 {
        let p = self.spec.p;
        digits.iter().rev().fold(0, |acc, &c| acc * p + c)
    }

    pub fn element_from_digits(&self, digits: &[u64]) -> Result<u64> {
        if digits.len() != self.spec.k as usize || digits.iter().any(|&c| c >= self.spec.p) {
            return Err(Error::InvalidInput(format!(
                "digits {digits:?} do not describe an element of a field of order {}",
                self.order
            )));
        }
        Ok(self.undigits(digits))
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.spec.k == 1 {
            return (a + b) % self.spec.p;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let sum: Vec<u64> = da
            .iter()
            .zip(&db)
            .map(|(x, y)| (x + y) % self.spec.p)
            .collect();
        self.undigits(&sum)
    }

    pub fn neg(&self, a: u64) -> u64 {
        if self.spec.k == 1 {
            return (self.spec.p - a % self.spec.p) % self.spec.p;
        }
        let p = self.spec.p;
        let da: Vec<u64> = self.digits(a).iter().map(|&c| (p - c) % p).collect();
        self.undigits(&da)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let p = self.spec.p;
        if self.spec.k == 1 {
            return (a * b) % p;
        }
        let k = self.spec.k as usize;
        let (da, db) = (self.digits(a), self.digits(b));
        let mut conv = vec![0u64; 2 * k - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                conv[i + j] = (conv[i + j] + x * y) % p;
            }
        }
        // Reduce by the monic modulus: t^k = -(m_0 + m_1 t + ... + m_(k-1) t^(k-1)).
        for deg in (k..conv.len()).rev() {
            let c = conv[deg];
            if c == 0 {
                continue;
            }
            conv[deg] = 0;
            for i in 0..k {
                let sub = (c * (p - self.spec.modulus[i])) % p;
                conv[deg - k + i] = (conv[deg - k + i] + sub) % p;
            }
        }
        conv.truncate(k);
        self.undigits(&conv)
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        let mut base = a;
        let mut exp = e;
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse as `a^(q-2)`; the multiplicative group has order q - 1.
    pub fn inv(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero { order: self.order });
        }
        let inv = self.pow(a, self.order - 2);
        debug_assert_eq!(self.mul(a, inv), 1);
        Ok(inv)
    }

    /// Order of a nonzero element in the multiplicative group.
    pub fn element_order(&self, a: u64) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero { order: self.order });
        }
        let mut acc = a;
        let mut ord = 1;
        while acc != 1 {
            acc = self.mul(acc, a);
            ord += 1;
        }
        Ok(ord)
    }

    /// Smallest-index generator of the multiplicative group.
    pub fn multiplicative_generator(&self) -> u64 {
        (1..self.order)
            .find(|&a| self.element_order(a).expect("nonzero") == self.order - 1)
            .expect("finite field multiplicative groups are cyclic")
    }
}
