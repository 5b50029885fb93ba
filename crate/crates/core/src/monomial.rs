//! Exponent vectors and monomial orders.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest number of variables a ring may have, auxiliary variables included.
pub const MAX_VARS: usize = 20;

/// Exponent vector with cached total degree.
///
/// Slots beyond the ring's variable count are always zero, so equality and
/// hashing never depend on the ring.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    degree: u32,
}

impl Monomial {
    #[inline]
    pub fn one() -> Self {
        Monomial { exps: [0; MAX_VARS], degree: 0 }
    }

    pub fn var(index: usize) -> Self {
        let mut m = Monomial::one();
        m.exps[index] = 1;
        m.degree = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::TooManyVariables(exps.len(), MAX_VARS));
        }
        let mut m = Monomial::one();
        for (slot, &e) in m.exps.iter_mut().zip(exps) {
            *slot =
                u16::try_from(e).map_err(|_| Error::InvalidArgument(format!("exponent {e} exceeds {}", u16::MAX)))?;
            m.degree += e;
        }
        Ok(m)
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn exponent(&self, var: usize) -> u32 {
        self.exps[var] as u32
    }

    pub fn exponents(&self, nvars: usize) -> &[u16] {
        &self.exps[..nvars]
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Product; exponent overflow is a hard error because it can only come
    /// from inputs far outside the intended scale.
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (e, &o) in exps.iter_mut().zip(other.exps.iter()) {
            *e = e.checked_add(o).expect("monomial exponent overflow (exponents are limited to u16)");
        }
        Monomial { exps, degree: self.degree + other.degree }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller guarantees divisibility.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let mut exps = other.exps;
        for (e, &s) in exps.iter_mut().zip(self.exps.iter()) {
            *e -= s;
        }
        Monomial { exps, degree: other.degree - self.degree }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        let mut degree = 0;
        for (e, &o) in exps.iter_mut().zip(other.exps.iter()) {
            *e = (*e).max(o);
            degree += *e as u32;
        }
        Monomial { exps, degree }
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        let mut degree = 0;
        for (e, &o) in exps.iter_mut().zip(other.exps.iter()) {
            *e = (*e).min(o);
            degree += *e as u32;
        }
        Monomial { exps, degree }
    }

    #[inline]
    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Number of variables with a positive exponent.
    pub fn support_size(&self) -> usize {
        self.exps.iter().filter(|&&e| e > 0).count()
    }

    /// Moves the exponents of `from` into slot `to` order; used when embedding
    /// into rings with extra variables.
    pub(crate) fn remap(&self, map: &[usize]) -> Monomial {
        let mut m = Monomial::one();
        for (i, &target) in map.iter().enumerate() {
            m.exps[target] = self.exps[i];
        }
        m.degree = self.degree;
        m
    }

    pub(crate) fn set_exponent(&mut self, var: usize, e: u16) {
        self.degree = self.degree - self.exps[var] as u32 + e as u32;
        self.exps[var] = e;
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let last = self.exps.iter().rposition(|&e| e > 0).map_or(0, |p| p + 1);
        write!(f, "{:?}", &self.exps[..last])
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderKind {
    DegRevLex,
    DegLex,
    /// Elimination order: the first `n` variables (in priority order) form a
    /// block that dominates the rest; degrevlex inside each block.
    Block(usize),
}

/// A monomial order together with a variable priority permutation.
///
/// `priority[0]` is the most significant variable. The identity permutation
/// is stored as `None`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialOrder {
    kind: OrderKind,
    priority: Option<Arc<[usize]>>,
}

impl MonomialOrder {
    pub fn degrevlex() -> Self {
        MonomialOrder { kind: OrderKind::DegRevLex, priority: None }
    }

    pub fn deglex() -> Self {
        MonomialOrder { kind: OrderKind::DegLex, priority: None }
    }

    pub fn block(eliminated: usize) -> Self {
        MonomialOrder { kind: OrderKind::Block(eliminated), priority: None }
    }

    pub fn new(kind: OrderKind) -> Self {
        MonomialOrder { kind, priority: None }
    }

    /// Sets the variable priority; `priority` must be a permutation of `0..n`.
    pub fn with_priority(mut self, priority: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; priority.len()];
        for &p in &priority {
            if p >= priority.len() || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidArgument(format!("{priority:?} is not a permutation")));
            }
        }
        let identity = priority.iter().enumerate().all(|(i, &p)| i == p);
        self.priority = if identity { None } else { Some(priority.into()) };
        Ok(self)
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn priority(&self) -> Option<&[usize]> {
        self.priority.as_deref()
    }

    #[inline]
    fn exp(&self, m: &Monomial, rank: usize) -> u16 {
        match &self.priority {
            None => m.exps[rank],
            Some(p) => {
                if rank < p.len() {
                    m.exps[p[rank]]
                } else {
                    0
                }
            }
        }
    }

    fn revlex_tail(&self, a: &Monomial, b: &Monomial, lo: usize, hi: usize) -> Ordering {
        for r in (lo..hi).rev() {
            let (ea, eb) = (self.exp(a, r), self.exp(b, r));
            if ea != eb {
                return eb.cmp(&ea);
            }
        }
        Ordering::Equal
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::DegRevLex => a.degree.cmp(&b.degree).then_with(|| self.revlex_tail(a, b, 0, MAX_VARS)),
            OrderKind::DegLex => a.degree.cmp(&b.degree).then_with(|| {
                for r in 0..MAX_VARS {
                    let (ea, eb) = (self.exp(a, r), self.exp(b, r));
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                }
                Ordering::Equal
            }),
            OrderKind::Block(k) => {
                let block_deg = |m: &Monomial| (0..k).map(|r| self.exp(m, r) as u32).sum::<u32>();
                block_deg(a)
                    .cmp(&block_deg(b))
                    .then_with(|| self.revlex_tail(a, b, 0, k))
                    .then_with(|| a.degree.cmp(&b.degree))
                    .then_with(|| self.revlex_tail(a, b, k, MAX_VARS))
            }
        }
    }
}

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder::degrevlex()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::from_exponents(e).unwrap()
    }

    #[test]
    fn degrevlex_basics() {
        let o = MonomialOrder::degrevlex();
        // x^2y > xy^2 with x > y
        assert_eq!(o.cmp(&m(&[2, 1]), &m(&[1, 2])), Ordering::Greater);
        // x*z < y^2 in degrevlex (z appears)
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[0, 0, 3]), &m(&[1])), Ordering::Greater);
    }

    #[test]
    fn deglex_basics() {
        let o = MonomialOrder::deglex();
        assert_eq!(o.cmp(&m(&[1, 2]), &m(&[0, 3])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Greater);
    }

    #[test]
    fn block_order_eliminates() {
        let o = MonomialOrder::block(1);
        // t > any power of x
        assert_eq!(o.cmp(&m(&[1, 0]), &m(&[0, 9])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[1, 2]), &m(&[1, 1])), Ordering::Greater);
    }

    #[test]
    fn priority_permutes_variables() {
        let o = MonomialOrder::deglex().with_priority(vec![1, 0]).unwrap();
        // y is now the most significant variable
        assert_eq!(o.cmp(&m(&[0, 1]), &m(&[1, 0])), Ordering::Greater);
        assert!(MonomialOrder::deglex().with_priority(vec![0, 0]).is_err());
    }

    #[test]
    fn divisibility_and_lcm() {
        let a = m(&[2, 1]);
        let b = m(&[1, 3]);
        assert_eq!(a.lcm(&b), m(&[2, 3]));
        assert_eq!(a.gcd(&b), m(&[1, 1]));
        assert!(m(&[1, 1]).divides(&a));
        assert_eq!(m(&[1, 1]).quotient_of(&a), m(&[1]));
        assert!(m(&[1]).is_coprime(&m(&[0, 4])));
    }
}
