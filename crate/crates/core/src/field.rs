//! Binary extension fields GF(2^m) for 1 <= m <= 128 in polynomial basis.

use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use crate::error::{Error, Result};
use crate::gf2poly::{gcd, BitPolynomial};
use crate::residue::prime_factors;

pub const MAX_DEGREE: u32 = 128;

/// GF(2)[z] / (modulus) with the modulus irreducible of degree `m`.
///
/// Elements are `u128` bit vectors; `low` stores the modulus without its
/// leading `z^m` term so that degree 128 fits.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    m: u32,
    low: u128,
}

impl FieldSpec {
    /// GF(2^m) over the smallest irreducible polynomial of degree `m`,
    /// ordering candidates by their coefficient vector read as an integer.
    pub fn new(m: u32) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&m) {
            return Err(Error::DegreeOutOfRange(m));
        }
        let step = if m == 1 { 1 } else { 2 };
        let mut low: u128 = if m == 1 { 0 } else { 1 };
        loop {
            let candidate = Self { m, low };
            if candidate.modulus_is_irreducible() {
                return Ok(candidate);
            }
            low += step;
        }
    }

    /// GF(2^m) over a caller-supplied modulus, which must be irreducible.
    pub fn with_modulus(modulus: &BitPolynomial) -> Result<Self> {
        let m = modulus.degree().unwrap_or(0) as u32;
        if !(1..=MAX_DEGREE).contains(&m) {
            return Err(Error::DegreeOutOfRange(m));
        }
        let low = modulus
            .add(&BitPolynomial::monomial(m as usize))
            .to_u128()
            .expect("degree < m");
        let spec = Self { m, low };
        if !spec.modulus_is_irreducible() {
            return Err(Error::Reducible(m));
        }
        Ok(spec)
    }

    pub fn degree(&self) -> u32 {
        self.m
    }

    pub fn modulus(&self) -> BitPolynomial {
        BitPolynomial::from_u128(self.low).add(&BitPolynomial::monomial(self.m as usize))
    }

    #[inline]
    fn mask(&self) -> u128 {
        if self.m == 128 {
            u128::MAX
        } else {
            (1u128 << self.m) - 1
        }
    }

    /// `2^m - 1`, the order of the multiplicative group.
    pub fn group_order(&self) -> u128 {
        self.mask()
    }

    /// Residue of `z` modulo the modulus.
    fn z_raw(&self) -> u128 {
        if self.m == 1 {
            self.low
        } else {
            2
        }
    }

    /// `gcd(z^(2^k) - z, f) = 1` for `k < m` and `z^(2^m) = z`.
    fn modulus_is_irreducible(&self) -> bool {
        let f = self.modulus();
        let z = self.z_raw();
        let mut frob = z;
        for _ in 1..self.m {
            frob = self.mul_raw(frob, frob);
            let diff = BitPolynomial::from_u128(frob ^ z);
            if !gcd(&diff, &f).expect("modulus is nonzero").is_one() {
                return false;
            }
        }
        self.mul_raw(frob, frob) == z
    }

    /// Shift-and-add multiplication with reduction on every shift.
    #[inline]
    pub fn mul_raw(&self, a: u128, b: u128) -> u128 {
        let top = 1u128 << (self.m - 1);
        let mask = self.mask();
        let mut acc = 0u128;
        let mut a = a;
        let mut b = b;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            b >>= 1;
            let carry = a & top != 0;
            a = (a << 1) & mask;
            if carry {
                a ^= self.low;
            }
        }
        acc
    }

    pub fn pow_raw(&self, base: u128, mut exp: u128) -> u128 {
        let mut acc = 1u128;
        let mut base = base;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn zero(&self) -> FieldElement<'_> {
        FieldElement {
            value: 0,
            field: self,
        }
    }

    pub fn one(&self) -> FieldElement<'_> {
        FieldElement {
            value: 1,
            field: self,
        }
    }

    /// The class of `z`.
    pub fn generator_z(&self) -> FieldElement<'_> {
        FieldElement {
            value: self.z_raw(),
            field: self,
        }
    }

    pub fn element(&self, value: u128) -> Result<FieldElement<'_>> {
        if value & !self.mask() != 0 {
            return Err(Error::MixedFields);
        }
        Ok(FieldElement { value, field: self })
    }

    /// Every element of order exactly `n` qualifies; the first found while
    /// scanning candidate generators in integer order is returned.
    pub fn primitive_nth_root(&self, n: u64) -> Result<FieldElement<'_>> {
        let order = self.group_order();
        if n == 0 || order % n as u128 != 0 {
            return Err(Error::OrderUnavailable { n, m: self.m });
        }
        let cofactor = order / n as u128;
        let primes = prime_factors(n);
        let exact = |x: u128| {
            primes
                .iter()
                .all(|&r| self.pow_raw(x, (n / r) as u128) != 1)
        };
        let mut candidate = 1u128;
        while candidate <= self.mask() {
            let x = self.pow_raw(candidate, cofactor);
            if exact(x) {
                return Ok(FieldElement {
                    value: x,
                    field: self,
                });
            }
            candidate += 1;
        }
        Err(Error::OrderUnavailable { n, m: self.m })
    }

    /// The root of `z^2 + z + 1` with the smaller integer representation.
    pub fn subfield_mu(&self) -> Result<FieldElement<'_>> {
        if self.m % 2 != 0 {
            return Err(Error::NoSubfield { m: self.m, k: 2 });
        }
        let w = self.primitive_nth_root(3)?.value;
        Ok(FieldElement {
            value: w.min(w ^ 1),
            field: self,
        })
    }

    /// The four roots of `z^4 + z + 1`, in increasing integer order.
    pub fn quartic_roots(&self) -> Result<Vec<FieldElement<'_>>> {
        if self.m % 4 != 0 {
            return Err(Error::NoSubfield { m: self.m, k: 4 });
        }
        let zeta = self.primitive_nth_root(15)?;
        let mut roots: Vec<u128> = (1..15)
            .map(|k| zeta.pow(k).value)
            .filter(|&r| self.pow_raw(r, 4) ^ r ^ 1 == 0)
            .collect();
        roots.sort_unstable();
        roots.dedup();
        debug_assert_eq!(roots.len(), 4);
        Ok(roots
            .into_iter()
            .map(|value| FieldElement { value, field: self })
            .collect())
    }

    /// The root of `z^2 + z = mu` with the smaller integer representation.
    pub fn subfield_eta(&self, mu: FieldElement<'_>) -> Result<FieldElement<'_>> {
        let roots = self.quartic_roots()?;
        roots
            .into_iter()
            .find(|eta| (*eta * *eta + *eta).value == mu.value)
            .ok_or(Error::NoSubfield { m: self.m, k: 4 })
    }
}

/// An element of a particular [`FieldSpec`].
#[derive(Clone, Copy)]
pub struct FieldElement<'f> {
    value: u128,
    field: &'f FieldSpec,
}

impl<'f> FieldElement<'f> {
    pub fn value(&self) -> u128 {
        self.value
    }

    pub fn field(&self) -> &'f FieldSpec {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn same_field(&self, other: &Self) -> bool {
        std::ptr::eq(self.field, other.field) || self.field == other.field
    }

    pub fn checked_add(self, other: Self) -> Result<Self> {
        if !self.same_field(&other) {
            return Err(Error::MixedFields);
        }
        Ok(Self {
            value: self.value ^ other.value,
            field: self.field,
        })
    }

    pub fn checked_mul(self, other: Self) -> Result<Self> {
        if !self.same_field(&other) {
            return Err(Error::MixedFields);
        }
        Ok(Self {
            value: self.field.mul_raw(self.value, other.value),
            field: self.field,
        })
    }

    pub fn pow(self, exp: u128) -> Self {
        Self {
            value: self.field.pow_raw(self.value, exp),
            field: self.field,
        }
    }

    pub fn square(self) -> Self {
        self.pow(2)
    }

    /// `a^(2^m - 2)`.
    pub fn inverse(self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(self.field.group_order() - 1))
    }

    /// Multiplicative order; `None` for zero.
    pub fn order(self) -> Option<u128> {
        if self.is_zero() {
            return None;
        }
        let mut order = self.field.group_order();
        for r in factor_u128(order) {
            while order % r == 0 && self.pow(order / r).value == 1 {
                order /= r;
            }
        }
        Some(order)
    }
}

/// Distinct prime factors of `2^m - 1`-sized numbers. Falls back to plain
/// trial division, which is fine for the Mersenne-like group orders seen
/// at desk scale but is not meant for adversarial input.
fn factor_u128(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut f = 2u128;
    while f * f <= n && f < (1 << 32) {
        if n % f == 0 {
            out.push(f);
            while n % f == 0 {
                n /= f;
            }
        }
        f += if f == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl<'f> Add for FieldElement<'f> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs)
            .expect("operands from different fields")
    }
}

impl AddAssign for FieldElement<'_> {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl<'f> Mul for FieldElement<'f> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(rhs)
            .expect("operands from different fields")
    }
}

impl PartialEq for FieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.same_field(other)
    }
}

impl Eq for FieldElement<'_> {}

impl fmt::Debug for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0x{:x}", self.value)
    }
}

impl fmt::Display for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:x}", self.value)
    }
}
