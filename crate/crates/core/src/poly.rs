//! Polynomials over `F_p` and sparse vectors over the polynomial ring.
//!
//! A [`Ring`] owns the coefficient field, the variable names and the monomial
//! order; polynomials and vectors are plain term lists that are only
//! meaningful relative to the ring that built them.

use std::cmp::Ordering;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{FieldScalar, PrimeField};
use crate::homology::ResolutionCache;
use crate::monomial::{Monomial, MonomialOrder, OrderKind, MAX_VARS};

/// One term `coeff * mono * e_comp` of a vector. Polynomials use `comp == 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub comp: u32,
    pub mono: Monomial,
    pub coeff: u32,
}

/// Sparse element of a free module `R^k`, terms strictly descending in the
/// position-over-term order, no zero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Vector {
    terms: Vec<Term>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    #[inline]
    pub fn leading(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest component index that carries a term, plus one.
    pub fn min_rank(&self) -> usize {
        self.terms.iter().map(|t| t.comp as usize + 1).max().unwrap_or(0)
    }

    /// Degree of the first term counting the component shift.
    pub fn degree(&self, shifts: &[i32]) -> Option<i32> {
        self.terms.first().map(|t| t.mono.degree() as i32 + shifts[t.comp as usize])
    }

    pub fn is_homogeneous(&self, shifts: &[i32]) -> bool {
        let mut it = self.terms.iter().map(|t| t.mono.degree() as i32 + shifts[t.comp as usize]);
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Maximum shifted degree over all terms (the "sugar" of the element).
    pub(crate) fn max_degree(&self, shifts: &[i32]) -> i32 {
        self.terms.iter().map(|t| t.mono.degree() as i32 + shifts[t.comp as usize]).max().unwrap_or(0)
    }

    /// Entry in component `c` as a polynomial.
    pub fn component(&self, c: u32) -> Poly {
        Poly(Vector { terms: self.terms.iter().filter(|t| t.comp == c).map(|t| Term { comp: 0, ..*t }).collect() })
    }

    /// Re-indexes components through `f`; the result is re-normalized by `ring`.
    pub fn map_components(&self, ring: &Ring, f: impl Fn(u32) -> Option<u32>) -> Vector {
        let terms = self.terms.iter().filter_map(|t| f(t.comp).map(|comp| Term { comp, ..*t })).collect();
        ring.normalize(terms)
    }
}

/// A polynomial: a vector supported in component 0.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly(pub(crate) Vector);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vector::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn terms(&self) -> &[Term] {
        self.0.terms()
    }

    pub fn as_vector(&self) -> &Vector {
        &self.0
    }

    pub fn into_vector(self) -> Vector {
        self.0
    }

    /// The polynomial placed in component `comp`.
    pub fn in_component(&self, comp: u32) -> Vector {
        Vector { terms: self.0.terms.iter().map(|t| Term { comp, ..*t }).collect() }
    }

    pub fn degree(&self) -> Option<u32> {
        self.0.terms.iter().map(|t| t.mono.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.0.is_homogeneous(&[0])
    }

    pub fn is_constant(&self) -> bool {
        self.0.terms.iter().all(|t| t.mono.is_one())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

struct RingInner {
    field: PrimeField,
    vars: Vec<String>,
    order: MonomialOrder,
    resolutions: ResolutionCache,
}

/// The polynomial ring `k[x_1..x_r]` with a fixed monomial order.
#[derive(Clone)]
pub struct Ring(Arc<RingInner>);

impl std::fmt::Debug for Ring {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Ring")
            .field("p", &self.0.field.characteristic())
            .field("vars", &self.0.vars)
            .field("order", &self.0.order)
            .finish()
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.field == other.0.field && self.0.vars == other.0.vars && self.0.order == other.0.order)
    }
}

impl Ring {
    pub fn new<S: Into<String>>(
        field: PrimeField,
        vars: impl IntoIterator<Item = S>,
        order: MonomialOrder,
    ) -> Result<Ring> {
        let vars: Vec<String> = vars.into_iter().map(Into::into).collect();
        if vars.len() > MAX_VARS {
            return Err(Error::TooManyVariables(vars.len(), MAX_VARS));
        }
        for (i, v) in vars.iter().enumerate() {
            if vars[..i].contains(v) {
                return Err(Error::DuplicateVariable(v.clone()));
            }
        }
        if let Some(p) = order.priority() {
            if p.len() != vars.len() {
                return Err(Error::InvalidArgument(format!(
                    "priority has {} entries for {} variables",
                    p.len(),
                    vars.len()
                )));
            }
        }
        if let OrderKind::Block(k) = order.kind() {
            if k > vars.len() {
                return Err(Error::InvalidArgument(format!("block of {k} variables in a ring of {}", vars.len())));
            }
        }
        Ok(Ring(Arc::new(RingInner { field, vars, order, resolutions: ResolutionCache::default() })))
    }

    /// `k[vars]` over the default characteristic with degrevlex.
    pub fn standard(vars: &[&str]) -> Ring {
        Ring::new(PrimeField::default(), vars.iter().copied(), MonomialOrder::degrevlex()).expect("valid standard ring")
    }

    #[inline]
    pub fn field(&self) -> PrimeField {
        self.0.field
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.0.vars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.0.order
    }

    pub(crate) fn resolutions(&self) -> &ResolutionCache {
        &self.0.resolutions
    }

    /// The same variables and field under another order.
    pub fn with_order(&self, order: MonomialOrder) -> Result<Ring> {
        Ring::new(self.field(), self.0.vars.iter().cloned(), order)
    }

    /// A ring whose first variables are `extra`, followed by this ring's
    /// variables. Returns the map sending old variable indices to new ones.
    pub fn extended(&self, extra: &[String], order: MonomialOrder) -> Result<(Ring, Vec<usize>)> {
        let mut vars: Vec<String> = extra.to_vec();
        vars.extend(self.0.vars.iter().cloned());
        let ring = Ring::new(self.field(), vars, order)?;
        let map = (0..self.nvars()).map(|i| i + extra.len()).collect();
        Ok((ring, map))
    }

    // ---- term order -------------------------------------------------------

    #[inline]
    pub fn cmp_mono(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.0.order.cmp(a, b)
    }

    /// Position-over-term: lower component index dominates.
    #[inline]
    pub fn cmp_term(&self, a: &Term, b: &Term) -> Ordering {
        b.comp.cmp(&a.comp).then_with(|| self.cmp_mono(&a.mono, &b.mono))
    }

    // ---- construction -----------------------------------------------------

    pub fn scalar(&self, c: i64) -> FieldScalar {
        self.field().element(c)
    }

    pub fn constant(&self, c: i64) -> Poly {
        let c = self.field().reduce_i64(c);
        if c == 0 {
            Poly::zero()
        } else {
            Poly(Vector { terms: vec![Term { comp: 0, mono: Monomial::one(), coeff: c }] })
        }
    }

    pub fn one(&self) -> Poly {
        self.constant(1)
    }

    pub fn var(&self, index: usize) -> Poly {
        assert!(index < self.nvars(), "variable index out of range");
        Poly(Vector { terms: vec![Term { comp: 0, mono: Monomial::var(index), coeff: 1 }] })
    }

    pub fn monomial(&self, mono: Monomial, coeff: i64) -> Poly {
        self.normalize_poly(vec![Term { comp: 0, mono, coeff: self.field().reduce_i64(coeff) }])
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.0.vars.iter().position(|v| v == name)
    }

    /// Unit vector `e_comp`.
    pub fn unit_vector(&self, comp: u32) -> Vector {
        Vector { terms: vec![Term { comp, mono: Monomial::one(), coeff: 1 }] }
    }

    /// Vector from one polynomial per component.
    pub fn vector_from_entries(&self, entries: &[Poly]) -> Vector {
        let mut terms = Vec::new();
        for (c, f) in entries.iter().enumerate() {
            terms.extend(f.terms().iter().map(|t| Term { comp: c as u32, ..*t }));
        }
        // components are already in increasing order, each entry sorted
        Vector { terms }
    }

    pub fn vector_entries(&self, v: &Vector, rank: usize) -> Vec<Poly> {
        (0..rank as u32).map(|c| v.component(c)).collect()
    }

    /// Sorts terms, merges equal monomials and drops zeros.
    pub fn normalize(&self, mut terms: Vec<Term>) -> Vector {
        let p = self.field();
        terms.retain(|t| t.coeff % p.characteristic() != 0);
        for t in &mut terms {
            t.coeff %= p.characteristic();
        }
        terms.sort_by(|a, b| self.cmp_term(b, a));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.comp == t.comp && last.mono == t.mono => {
                    last.coeff = p.add(last.coeff, t.coeff);
                    if last.coeff == 0 {
                        out.pop();
                    }
                }
                _ => out.push(t),
            }
        }
        Vector { terms: out }
    }

    pub fn normalize_poly(&self, terms: Vec<Term>) -> Poly {
        Poly(self.normalize(terms))
    }

    // ---- arithmetic -------------------------------------------------------

    /// `a + c * b`, merging two sorted term lists.
    fn add_scaled_sorted(&self, a: &[Term], c: u32, b: &[Term]) -> Vec<Term> {
        let p = self.field();
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match self.cmp_term(&a[i], &b[j]) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term { coeff: p.mul(c, b[j].coeff), ..b[j] });
                    j += 1;
                }
                Ordering::Equal => {
                    let s = p.add(a[i].coeff, p.mul(c, b[j].coeff));
                    if s != 0 {
                        out.push(Term { coeff: s, ..a[i] });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(b[j..].iter().map(|t| Term { coeff: p.mul(c, t.coeff), ..*t }));
        out
    }

    pub fn add(&self, a: &Vector, b: &Vector) -> Vector {
        Vector { terms: self.add_scaled_sorted(&a.terms, 1, &b.terms) }
    }

    pub fn sub(&self, a: &Vector, b: &Vector) -> Vector {
        let m1 = self.field().neg(1);
        Vector { terms: self.add_scaled_sorted(&a.terms, m1, &b.terms) }
    }

    pub fn neg(&self, a: &Vector) -> Vector {
        let p = self.field();
        Vector { terms: a.terms.iter().map(|t| Term { coeff: p.neg(t.coeff), ..*t }).collect() }
    }

    /// `c * mono * v`; the order is multiplicative so sortedness is kept.
    pub fn mul_term(&self, v: &Vector, c: u32, mono: &Monomial) -> Vector {
        if c == 0 {
            return Vector::zero();
        }
        let p = self.field();
        Vector {
            terms: v
                .terms
                .iter()
                .map(|t| Term { comp: t.comp, mono: t.mono.mul(mono), coeff: p.mul(c, t.coeff) })
                .collect(),
        }
    }

    /// `a - c * mono * b` without materializing the scaled copy.
    pub(crate) fn sub_mul_term(&self, a: &Vector, c: u32, mono: &Monomial, b: &Vector) -> Vector {
        let p = self.field();
        let nc = p.neg(c);
        let (a, b) = (&a.terms, &b.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        let shifted = |t: &Term| Term { comp: t.comp, mono: t.mono.mul(mono), coeff: p.mul(nc, t.coeff) };
        let mut next_b = b.first().map(shifted);
        while i < a.len() {
            let Some(bj) = next_b else { break };
            match self.cmp_term(&a[i], &bj) {
                Ordering::Greater => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push(bj);
                    j += 1;
                    next_b = b.get(j).map(shifted);
                }
                Ordering::Equal => {
                    let s = p.add(a[i].coeff, bj.coeff);
                    if s != 0 {
                        out.push(Term { coeff: s, ..a[i] });
                    }
                    i += 1;
                    j += 1;
                    next_b = b.get(j).map(shifted);
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        if let Some(bj) = next_b {
            out.push(bj);
            out.extend(b[j + 1..].iter().map(shifted));
        }
        Vector { terms: out }
    }

    /// Polynomial times vector.
    pub fn scale(&self, f: &Poly, v: &Vector) -> Vector {
        if f.is_zero() || v.is_zero() {
            return Vector::zero();
        }
        let mut terms = Vec::with_capacity(f.len() * v.len());
        let p = self.field();
        for a in f.terms() {
            for b in &v.terms {
                terms.push(Term { comp: b.comp, mono: a.mono.mul(&b.mono), coeff: p.mul(a.coeff, b.coeff) });
            }
        }
        self.normalize(terms)
    }

    pub fn scale_const(&self, c: u32, v: &Vector) -> Vector {
        self.mul_term(v, c, &Monomial::one())
    }

    /// Scales so the leading coefficient is one.
    pub fn make_monic(&self, v: &Vector) -> Vector {
        match v.leading() {
            None => Vector::zero(),
            Some(t) if t.coeff == 1 => v.clone(),
            Some(t) => {
                let inv = self.field().inv(t.coeff).expect("nonzero leading coefficient");
                self.scale_const(inv, v)
            }
        }
    }

    pub fn poly_add(&self, f: &Poly, g: &Poly) -> Poly {
        Poly(self.add(&f.0, &g.0))
    }

    pub fn poly_sub(&self, f: &Poly, g: &Poly) -> Poly {
        Poly(self.sub(&f.0, &g.0))
    }

    pub fn poly_neg(&self, f: &Poly) -> Poly {
        Poly(self.neg(&f.0))
    }

    pub fn poly_mul(&self, f: &Poly, g: &Poly) -> Poly {
        Poly(self.scale(f, &g.0))
    }

    pub fn poly_pow(&self, f: &Poly, n: u32) -> Poly {
        (0..n).fold(self.one(), |acc, _| self.poly_mul(&acc, f))
    }

    /// Maximal term of `f` under the ring order.
    pub fn leading_term(&self, f: &Poly) -> Result<(Monomial, FieldScalar)> {
        f.terms().first().map(|t| (t.mono, self.field().element(t.coeff as i64))).ok_or(Error::ZeroPolynomial)
    }

    /// Re-sorts `f` under this ring's order; identity on canonical input.
    pub fn renormalize(&self, f: &Poly) -> Poly {
        self.normalize_poly(f.terms().to_vec())
    }

    /// Maps a polynomial from a ring with fewer variables along `map`.
    pub fn embed(&self, f: &Poly, map: &[usize]) -> Poly {
        self.normalize_poly(f.terms().iter().map(|t| Term { mono: t.mono.remap(map), ..*t }).collect())
    }

    pub fn embed_vector(&self, v: &Vector, map: &[usize]) -> Vector {
        self.normalize(v.terms.iter().map(|t| Term { mono: t.mono.remap(map), ..*t }).collect())
    }

    /// Inverse of [`Ring::embed`]: `None` if a term uses a variable outside
    /// the image of `map`.
    pub fn restrict(&self, f: &Poly, map: &[usize], target: &Ring) -> Option<Poly> {
        let mut terms = Vec::with_capacity(f.len());
        let mut used = vec![false; self.nvars()];
        for &m in map {
            used[m] = true;
        }
        for t in f.terms() {
            if (0..self.nvars()).any(|v| !used[v] && t.mono.exponent(v) > 0) {
                return None;
            }
            let mut mono = Monomial::one();
            for (i, &m) in map.iter().enumerate() {
                mono.set_exponent(i, t.mono.exponent(m) as u16);
            }
            terms.push(Term { mono, ..*t });
        }
        Some(target.normalize_poly(terms))
    }

    /// Substitutes zero for every variable in `vars`.
    pub fn set_to_zero(&self, f: &Poly, vars: &[usize]) -> Poly {
        Poly(Vector {
            terms: f.terms().iter().filter(|t| vars.iter().all(|&v| t.mono.exponent(v) == 0)).copied().collect(),
        })
    }

    // ---- printing ---------------------------------------------------------

    pub fn fmt_monomial(&self, m: &Monomial) -> String {
        let mut s = String::new();
        for (i, name) in self.0.vars.iter().enumerate() {
            let e = m.exponent(i);
            if e == 0 {
                continue;
            }
            if !s.is_empty() {
                s.push('*');
            }
            s.push_str(name);
            if e > 1 {
                let _ = write!(s, "^{e}");
            }
        }
        if s.is_empty() {
            s.push('1');
        }
        s
    }

    pub fn fmt_poly(&self, f: &Poly) -> String {
        if f.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (k, t) in f.terms().iter().enumerate() {
            let c = self.field().signed(t.coeff);
            let (neg, abs) = (c < 0, c.unsigned_abs());
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            if t.mono.is_one() {
                let _ = write!(s, "{abs}");
            } else {
                if abs != 1 {
                    let _ = write!(s, "{abs}*");
                }
                s.push_str(&self.fmt_monomial(&t.mono));
            }
        }
        s
    }

    pub fn fmt_vector(&self, v: &Vector, rank: usize) -> String {
        let entries: Vec<String> = self.vector_entries(v, rank).iter().map(|f| self.fmt_poly(f)).collect();
        format!("[{}]", entries.join(", "))
    }

    pub fn parse_poly(&self, text: &str) -> Result<Poly> {
        crate::parse::parse_poly(self, text)
    }
}
