//! Arithmetic in the prime field `F_p`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Characteristic used when a session does not choose one.
pub const DEFAULT_CHARACTERISTIC: u32 = 32003;

/// A validated prime modulus `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        if p >= 1 << 31 {
            return Err(Error::InvalidCharacteristic(p, "must be below 2^31"));
        }
        if !is_prime(p) {
            return Err(Error::InvalidCharacteristic(p, "not prime"));
        }
        Ok(PrimeField { p })
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    /// Small characteristics can change lengths (e.g. via Frobenius effects),
    /// so the harness surfaces a warning for them.
    pub fn is_small(&self) -> bool {
        self.p < 1000
    }

    #[inline]
    pub fn element(&self, value: i64) -> FieldScalar {
        FieldScalar { value: self.reduce_i64(value), p: self.p }
    }

    #[inline]
    pub fn zero(&self) -> FieldScalar {
        FieldScalar { value: 0, p: self.p }
    }

    #[inline]
    pub fn one(&self) -> FieldScalar {
        FieldScalar { value: 1 % self.p, p: self.p }
    }

    #[inline]
    pub(crate) fn reduce_i64(&self, value: i64) -> u32 {
        value.rem_euclid(self.p as i64) as u32
    }

    #[inline]
    pub(crate) fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub(crate) fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub(crate) fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub(crate) fn mul(&self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.p as u64) as u32
    }

    /// Inverse via the extended Euclidean algorithm; `None` for zero.
    pub(crate) fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(t0.rem_euclid(self.p as i64) as u32)
    }

    /// Symmetric representative in `(-p/2, p/2]`, used for printing.
    pub(crate) fn signed(&self, a: u32) -> i64 {
        if a > self.p / 2 {
            a as i64 - self.p as i64
        } else {
            a as i64
        }
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        PrimeField { p: DEFAULT_CHARACTERISTIC }
    }
}

impl TryFrom<u32> for PrimeField {
    type Error = Error;
    fn try_from(p: u32) -> Result<Self> {
        PrimeField::new(p)
    }
}

impl From<PrimeField> for u32 {
    fn from(f: PrimeField) -> u32 {
        f.p
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let n = n as u64;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A fully reduced residue together with its characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldScalar {
    value: u32,
    p: u32,
}

#[allow(clippy::should_implement_trait)]
impl FieldScalar {
    #[inline]
    pub fn value(&self) -> u32 {
        self.value
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn field(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    pub fn add(self, other: FieldScalar) -> FieldScalar {
        assert_eq!(self.p, other.p, "mixed characteristics");
        FieldScalar { value: self.field().add(self.value, other.value), p: self.p }
    }

    pub fn sub(self, other: FieldScalar) -> FieldScalar {
        assert_eq!(self.p, other.p, "mixed characteristics");
        FieldScalar { value: self.field().sub(self.value, other.value), p: self.p }
    }

    pub fn neg(self) -> FieldScalar {
        FieldScalar { value: self.field().neg(self.value), p: self.p }
    }

    pub fn mul(self, other: FieldScalar) -> FieldScalar {
        assert_eq!(self.p, other.p, "mixed characteristics");
        FieldScalar { value: self.field().mul(self.value, other.value), p: self.p }
    }

    pub fn inv(self) -> Result<FieldScalar> {
        self.field().inv(self.value).map(|value| FieldScalar { value, p: self.p }).ok_or(Error::DivisionByZero)
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
