//! Homogeneous ideals of `k[x_1..x_r]` and the ideal-theoretic operations
//! built on Groebner bases.

use std::fmt;
use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, minimal_generators, GroebnerBasis};
use crate::hilbert;
use crate::length::Length;
use crate::monomial::{MonomialOrder, MAX_VARS};
use crate::poly::{Poly, Ring, Vector};

/// An ideal given by generators, with its reduced basis computed on demand.
#[derive(Clone)]
pub struct Ideal {
    ring: Ring,
    gens: Vec<Poly>,
    gb: OnceLock<GroebnerBasis>,
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ideal{self}")
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return f.write_str("(0)");
        }
        let parts: Vec<String> = self.gens.iter().map(|g| self.ring.fmt_poly(g)).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Ideal {
    /// Ideal generated by homogeneous polynomials; zero generators are dropped.
    pub fn new(ring: &Ring, gens: Vec<Poly>) -> Result<Ideal> {
        for g in &gens {
            if !g.is_homogeneous() {
                return Err(Error::NotHomogeneous(ring.fmt_poly(g)));
            }
        }
        Ok(Ideal::from_gens(ring, gens))
    }

    pub(crate) fn from_gens(ring: &Ring, gens: Vec<Poly>) -> Ideal {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { ring: ring.clone(), gens, gb: OnceLock::new() }
    }

    pub fn parse(ring: &Ring, gens: &[&str]) -> Result<Ideal> {
        let polys = gens.iter().map(|s| ring.parse_poly(s)).collect::<Result<Vec<_>>>()?;
        Ideal::new(ring, polys)
    }

    pub fn zero(ring: &Ring) -> Ideal {
        Ideal::from_gens(ring, Vec::new())
    }

    pub fn unit(ring: &Ring) -> Ideal {
        Ideal::from_gens(ring, vec![ring.one()])
    }

    /// The homogeneous maximal ideal `(x_1, ..., x_r)`.
    pub fn maximal(ring: &Ring) -> Ideal {
        Ideal::from_gens(ring, (0..ring.nvars()).map(|v| ring.var(v)).collect())
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| buchberger(&self.ring, &self.gens))
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.groebner().contains_unit()
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.groebner().normal_form_poly(f).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.contains(g))
    }

    /// Equality as ideals (compared through reduced bases).
    pub fn same_ideal(&self, other: &Ideal) -> bool {
        self.groebner().same_module(other.groebner())
    }

    /// A minimal homogeneous generating set of the same ideal.
    pub fn minimalized(&self) -> Ideal {
        Ideal::from_gens(&self.ring, minimize(&self.ring, &self.gens))
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::from_gens(&self.ring, minimize(&self.ring, &gens))
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        let r = &self.ring;
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for f in &self.gens {
            for g in &other.gens {
                gens.push(r.poly_mul(f, g));
            }
        }
        Ideal::from_gens(r, minimize(r, &gens))
    }

    /// `I^n`, with `I^0` the unit ideal.
    pub fn power(&self, n: u32) -> Ideal {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..n {
            acc = acc.product(self);
        }
        acc
    }

    /// `I ∩ J` by eliminating `t` from `t·I + (1 - t)·J`.
    pub fn intersect(&self, other: &Ideal) -> Ideal {
        let r = &self.ring;
        if self.is_zero() || other.is_zero() {
            return Ideal::zero(r);
        }
        let (ext, map) =
            r.extended(&["@t".to_string()], MonomialOrder::block(1)).expect("room for one auxiliary variable");
        let t = ext.var(0);
        let one_minus_t = ext.poly_sub(&ext.one(), &t);
        let mut gens = Vec::new();
        for f in &self.gens {
            gens.push(ext.poly_mul(&t, &ext.embed(f, &map)));
        }
        for g in &other.gens {
            gens.push(ext.poly_mul(&one_minus_t, &ext.embed(g, &map)));
        }
        let gb = buchberger(&ext, &gens);
        let kept: Vec<Poly> = gb.polys().iter().filter_map(|h| ext.restrict(h, &map, r)).collect();
        Ideal::from_gens(r, minimize(r, &kept))
    }

    /// `I : (f)`.
    pub fn colon_poly(&self, f: &Poly) -> Ideal {
        let r = &self.ring;
        if f.is_zero() || self.contains(f) {
            return Ideal::unit(r);
        }
        let principal = Ideal::from_gens(r, vec![f.clone()]);
        let both = self.intersect(&principal);
        let quotients: Vec<Poly> =
            both.gens.iter().map(|h| divide_exact(r, h, f).expect("element of (f) is divisible by f")).collect();
        Ideal::from_gens(r, minimize(r, &quotients))
    }

    /// `I : J = {f : fJ ⊆ I}`.
    pub fn colon(&self, other: &Ideal) -> Ideal {
        let mut acc = Ideal::unit(&self.ring);
        for g in &other.gens {
            acc = acc.intersect(&self.colon_poly(g));
        }
        acc
    }

    /// Whether `f ∈ rad(I)`, via `1 ∈ I + (1 - t·f)` in `k[t, x]`.
    pub fn radical_contains(&self, f: &Poly) -> bool {
        if f.is_zero() || self.contains(f) {
            return true;
        }
        if self.is_zero() {
            return false;
        }
        let r = &self.ring;
        let (ext, map) =
            r.extended(&["@t".to_string()], MonomialOrder::degrevlex()).expect("room for one auxiliary variable");
        let mut gens: Vec<Poly> = self.gens.iter().map(|g| ext.embed(g, &map)).collect();
        let tf = ext.poly_mul(&ext.var(0), &ext.embed(f, &map));
        gens.push(ext.poly_sub(&ext.one(), &tf));
        buchberger(&ext, &gens).contains_unit()
    }

    pub fn radical_contains_ideal(&self, other: &Ideal) -> bool {
        other.gens.iter().all(|g| self.radical_contains(g))
    }

    /// Krull dimension of `R/I`; `-1` for the unit ideal.
    pub fn krull_dimension(&self) -> i64 {
        let lts: Vec<_> = self.groebner().leading_terms().map(|(_, m)| m).collect();
        hilbert::dimension(self.ring.nvars(), &lts)
    }

    /// Whether the radical is the homogeneous maximal ideal.
    pub fn is_primary_to_maximal(&self) -> bool {
        self.krull_dimension() == 0
    }

    /// `λ(R/I)`: the number of standard monomials, or infinite.
    pub fn quotient_length(&self) -> Length {
        let lts: Vec<_> = self.groebner().leading_terms().map(|(_, m)| m).collect();
        hilbert::standard_monomial_count(self.ring.nvars(), &lts)
    }

    /// Analytic spread of the image of `I` in `R/ann`: the Krull dimension of
    /// the fiber cone, read off from the Rees ideal with the base variables
    /// set to zero.
    pub fn analytic_spread(&self, ann: &Ideal) -> Result<usize> {
        let r = &self.ring;
        let ann_vecs: Vec<Vector> = ann.gens.iter().map(|g| g.as_vector().clone()).collect();
        let reduced: Vec<Vector> =
            self.gens.iter().map(|g| ann.groebner().normal_form(g.as_vector())).filter(|v| !v.is_zero()).collect();
        let image: Vec<Poly> =
            minimal_generators(r, &[0], &ann_vecs, &reduced).into_iter().map(|v| v.component(0)).collect();
        let s = image.len();
        if s == 0 {
            return Ok(0);
        }
        let nv = r.nvars();
        if 1 + nv + s > MAX_VARS {
            return Err(Error::TooManyVariables(1 + nv + s, MAX_VARS));
        }
        let mut names = vec!["@t".to_string()];
        names.extend(r.var_names().iter().cloned());
        names.extend((1..=s).map(|j| format!("@T{j}")));
        let ext = Ring::new(r.field(), names.clone(), MonomialOrder::block(1))?;
        let base_map: Vec<usize> = (0..nv).map(|v| v + 1).collect();
        let mut gens = Vec::new();
        for (j, f) in image.iter().enumerate() {
            let tf = ext.poly_mul(&ext.var(0), &ext.embed(f, &base_map));
            gens.push(ext.poly_sub(&ext.var(1 + nv + j), &tf));
        }
        gens.extend(ann.gens.iter().map(|g| ext.embed(g, &base_map)));
        let gb = buchberger(&ext, &gens);

        let fiber_ring = Ring::new(r.field(), names[1 + nv..].iter().cloned(), MonomialOrder::degrevlex())?;
        let fiber_map: Vec<usize> = (0..s).map(|j| 1 + nv + j).collect();
        let base_vars: Vec<usize> = (0..=nv).collect();
        let fiber_gens: Vec<Poly> = gb
            .polys()
            .iter()
            .filter(|h| h.terms().iter().all(|t| t.mono.exponent(0) == 0))
            .filter_map(|h| ext.restrict(&ext.set_to_zero(h, &base_vars), &fiber_map, &fiber_ring))
            .collect();
        let dim = Ideal::from_gens(&fiber_ring, fiber_gens).krull_dimension();
        Ok(dim.max(0) as usize)
    }
}

/// Minimal generators of the ideal spanned by `gens`.
fn minimize(ring: &Ring, gens: &[Poly]) -> Vec<Poly> {
    let vs: Vec<Vector> = gens.iter().filter(|g| !g.is_zero()).map(|g| g.as_vector().clone()).collect();
    if vs.iter().any(|v| v.terms().iter().all(|t| t.mono.is_one())) {
        return vec![ring.one()];
    }
    minimal_generators(ring, &[0], &[], &vs).into_iter().map(|v| v.component(0)).collect()
}

/// `h / g` when `g` divides `h`.
pub fn divide_exact(ring: &Ring, h: &Poly, g: &Poly) -> Option<Poly> {
    let lead = *g.terms().first()?;
    let inv = ring.field().inv(lead.coeff)?;
    let p = ring.field();
    let mut rem = h.as_vector().clone();
    let mut quot = Vec::new();
    while let Some(t) = rem.leading().copied() {
        if !lead.mono.divides(&t.mono) {
            return None;
        }
        let m = lead.mono.quotient_of(&t.mono);
        let c = p.mul(t.coeff, inv);
        rem = ring.sub_mul_term(&rem, c, &m, g.as_vector());
        quot.push(crate::poly::Term { comp: 0, mono: m, coeff: c });
    }
    Some(ring.normalize_poly(quot))
}

pub fn ideal_power(i: &Ideal, n: u32) -> Ideal {
    i.power(n)
}

pub fn ideal_intersect(i: &Ideal, j: &Ideal) -> Ideal {
    i.intersect(j)
}

pub fn ideal_colon(i: &Ideal, j: &Ideal) -> Ideal {
    i.colon(j)
}

pub fn radical_membership(f: &Poly, i: &Ideal) -> bool {
    i.radical_contains(f)
}

pub fn krull_dimension(i: &Ideal) -> i64 {
    i.krull_dimension()
}

pub fn is_p_primary(i: &Ideal) -> bool {
    i.is_primary_to_maximal()
}

pub fn quotient_length(i: &Ideal) -> Length {
    i.quotient_length()
}

pub fn analytic_spread(i: &Ideal, ann: &Ideal) -> Result<usize> {
    i.analytic_spread(ann)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Ring {
        Ring::standard(&["x", "y"])
    }

    fn id(r: &Ring, g: &[&str]) -> Ideal {
        Ideal::parse(r, g).unwrap()
    }

    #[test]
    fn powers() {
        let r = ring();
        assert!(id(&r, &["x", "y"]).power(2).same_ideal(&id(&r, &["x^2", "x*y", "y^2"])));
        assert!(id(&r, &["x", "y"]).power(0).is_unit());
        let p = id(&r, &["x^2", "x*y"]).power(2);
        assert_eq!(p.generators().len(), 3);
        assert!(p.same_ideal(&id(&r, &["x^4", "x^3*y", "x^2*y^2"])));
    }

    #[test]
    fn intersections() {
        let r = ring();
        assert!(id(&r, &["x"]).intersect(&id(&r, &["y"])).same_ideal(&id(&r, &["x*y"])));
        let i = id(&r, &["x^2", "y"]);
        assert!(i.intersect(&Ideal::unit(&r)).same_ideal(&i));
        assert!(id(&r, &["x", "y"]).intersect(&id(&r, &["x"])).same_ideal(&id(&r, &["x"])));
    }

    #[test]
    fn colons() {
        let r = ring();
        assert!(id(&r, &["x*y"]).colon(&id(&r, &["x"])).same_ideal(&id(&r, &["y"])));
        let i = id(&r, &["x^2", "x*y^3"]);
        assert!(i.colon(&Ideal::unit(&r)).same_ideal(&i));
        assert!(id(&r, &["x^2"]).colon(&id(&r, &["x"])).same_ideal(&id(&r, &["x"])));
    }

    #[test]
    fn radicals() {
        let r = ring();
        let p = |s: &str| r.parse_poly(s).unwrap();
        assert!(id(&r, &["x^2"]).radical_contains(&p("x")));
        assert!(!id(&r, &["x^2"]).radical_contains(&p("y")));
        assert!(id(&r, &["x^2", "y^2"]).radical_contains(&p("x+y")));
    }

    #[test]
    fn dimensions_and_lengths() {
        let r = ring();
        assert_eq!(id(&r, &["x", "y"]).krull_dimension(), 0);
        assert_eq!(id(&r, &["x"]).krull_dimension(), 1);
        assert_eq!(Ideal::zero(&r).krull_dimension(), 2);
        assert_eq!(Ideal::unit(&r).krull_dimension(), -1);
        assert!(id(&r, &["x^2", "y^3"]).is_primary_to_maximal());
        assert!(!id(&r, &["x"]).is_primary_to_maximal());
        assert!(id(&r, &["x^2 + y^2", "x*y"]).is_primary_to_maximal());
        assert_eq!(id(&r, &["x", "y"]).power(4).quotient_length(), Length::Finite(10));
        assert_eq!(id(&r, &["x^2", "x*y", "y^3"]).quotient_length(), Length::Finite(4));
        assert_eq!(id(&r, &["x"]).quotient_length(), Length::Infinite);
    }

    #[test]
    fn analytic_spreads() {
        let r = ring();
        let zero = Ideal::zero(&r);
        assert_eq!(id(&r, &["x", "y"]).analytic_spread(&zero).unwrap(), 2);
        assert_eq!(id(&r, &["x"]).analytic_spread(&zero).unwrap(), 1);
        assert_eq!(id(&r, &["x", "y"]).analytic_spread(&id(&r, &["x"])).unwrap(), 1);
        assert_eq!(id(&r, &["x^2", "y^2"]).analytic_spread(&zero).unwrap(), 2);
    }

    #[test]
    fn rejects_inhomogeneous() {
        let r = ring();
        assert!(matches!(Ideal::parse(&r, &["x + y^2"]), Err(Error::NotHomogeneous(_))));
    }

    #[test]
    fn exact_division() {
        let r = ring();
        let p = |s: &str| r.parse_poly(s).unwrap();
        assert_eq!(divide_exact(&r, &p("x^2 - y^2"), &p("x + y")), Some(p("x - y")));
        assert_eq!(divide_exact(&r, &p("x^2 + y^2"), &p("x + y")), None);
    }
}
