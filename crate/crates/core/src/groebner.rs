//! Buchberger's algorithm for submodules of `R^k` under position-over-term.
//!
//! Ideals are the rank-one case. Pairs are selected by sugar degree (which
//! equals the true degree for homogeneous input) and pruned with the
//! Gebauer-Moeller installation of Buchberger's chain criterion; the coprime
//! criterion is only sound for ideals and is disabled for rank > 1.

use std::cmp::Ordering;

use crate::certify;
use crate::monomial::Monomial;
use crate::poly::{Poly, Ring, Term, Vector};

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    comp: u32,
    lcm: Monomial,
    sugar: i32,
}

/// Incremental Buchberger state. After [`Buchberger::run`] the active
/// elements form a Groebner basis of everything added so far.
pub(crate) struct Buchberger<'r> {
    ring: &'r Ring,
    shifts: Vec<i32>,
    coprime_criterion: bool,
    elems: Vec<Vector>,
    lead: Vec<(u32, Monomial)>,
    sugar: Vec<i32>,
    active: Vec<bool>,
    by_comp: Vec<Vec<usize>>,
    pairs: Vec<Pair>,
    pending: Vec<(Vector, i32)>,
}

impl<'r> Buchberger<'r> {
    pub(crate) fn new(ring: &'r Ring, shifts: &[i32]) -> Self {
        Buchberger {
            ring,
            shifts: shifts.to_vec(),
            coprime_criterion: shifts.len() == 1,
            elems: Vec::new(),
            lead: Vec::new(),
            sugar: Vec::new(),
            active: Vec::new(),
            by_comp: vec![Vec::new(); shifts.len()],
            pairs: Vec::new(),
            pending: Vec::new(),
        }
    }

    /// Queues a generator; it is processed in sugar order during `run`.
    pub(crate) fn add(&mut self, v: Vector) {
        if !v.is_zero() {
            let s = v.max_degree(&self.shifts);
            self.pending.push((v, s));
        }
    }

    fn find_divisor(&self, comp: u32, mono: &Monomial) -> Option<usize> {
        self.by_comp[comp as usize].iter().copied().find(|&g| self.active[g] && self.lead[g].1.divides(mono))
    }

    /// Full reduction against the active elements, starting at term `from`.
    fn reduce_from(&self, mut r: Vector, from: usize) -> Vector {
        let mut i = from;
        while i < r.len() {
            let t = r.terms()[i];
            match self.find_divisor(t.comp, &t.mono) {
                Some(g) => {
                    let m = self.lead[g].1.quotient_of(&t.mono);
                    r = self.ring.sub_mul_term(&r, t.coeff, &m, &self.elems[g]);
                }
                None => i += 1,
            }
        }
        r
    }

    pub(crate) fn reduce(&self, v: &Vector) -> Vector {
        self.reduce_from(v.clone(), 0)
    }

    fn spoly(&self, p: &Pair) -> Vector {
        let (fi, fj) = (&self.elems[p.i], &self.elems[p.j]);
        let mi = self.lead[p.i].1.quotient_of(&p.lcm);
        let mj = self.lead[p.j].1.quotient_of(&p.lcm);
        let a = self.ring.mul_term(fi, 1, &mi);
        self.ring.sub_mul_term(&a, 1, &mj, fj)
    }

    fn install(&mut self, h: Vector, sugar: i32) {
        let h = self.ring.make_monic(&h);
        let lt = *h.leading().expect("nonzero");
        let idx = self.elems.len();
        let (comp, lm) = (lt.comp, lt.mono);
        self.elems.push(h);
        self.lead.push((comp, lm));
        self.sugar.push(sugar);
        self.active.push(false);

        // candidate pairs (h, g) with g active in the same component
        let cands: Vec<(usize, Monomial, bool)> = self.by_comp[comp as usize]
            .iter()
            .copied()
            .filter(|&g| self.active[g])
            .map(|g| {
                let gm = self.lead[g].1;
                (g, lm.lcm(&gm), self.coprime_criterion && lm.is_coprime(&gm))
            })
            .collect();
        let mut kept: Vec<usize> = Vec::new();
        for k in 0..cands.len() {
            let (_, ref l1, coprime) = cands[k];
            if coprime {
                kept.push(k);
                continue;
            }
            let dominated =
                cands[k + 1..].iter().any(|c| c.1.divides(l1)) || kept.iter().any(|&kk| cands[kk].1.divides(l1));
            if !dominated {
                kept.push(k);
            }
        }

        // chain criterion on old pairs
        let lead = &self.lead;
        self.pairs.retain(|p| {
            if p.comp != comp || !lm.divides(&p.lcm) {
                return true;
            }
            let li = lead[p.i].1.lcm(&lm);
            let lj = lead[p.j].1.lcm(&lm);
            li == p.lcm || lj == p.lcm
        });

        for k in kept {
            let (g, l, coprime) = cands[k];
            if coprime {
                continue;
            }
            let sg = self.sugar[g] + (l.degree() - self.lead[g].1.degree()) as i32;
            let sh = sugar + (l.degree() - lm.degree()) as i32;
            self.pairs.push(Pair { i: g, j: idx, comp, lcm: l, sugar: sg.max(sh) });
        }

        for &g in &self.by_comp[comp as usize] {
            if self.active[g] && lm.divides(&self.lead[g].1) {
                self.active[g] = false;
            }
        }
        self.active[idx] = true;
        self.by_comp[comp as usize].push(idx);
    }

    fn cmp_pairs(&self, a: &Pair, b: &Pair) -> Ordering {
        a.sugar
            .cmp(&b.sugar)
            .then_with(|| {
                let ta = Term { comp: a.comp, mono: a.lcm, coeff: 1 };
                let tb = Term { comp: b.comp, mono: b.lcm, coeff: 1 };
                self.ring.cmp_term(&ta, &tb)
            })
            .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)))
    }

    pub(crate) fn run(&mut self) {
        // inputs are consumed lowest sugar first, stable on ties
        self.pending.sort_by_key(|(_, s)| std::cmp::Reverse(*s));
        loop {
            let best_pair = (0..self.pairs.len()).min_by(|&a, &b| self.cmp_pairs(&self.pairs[a], &self.pairs[b]));
            let next_input = self.pending.last().map(|(_, s)| *s);
            let take_input = match (next_input, best_pair) {
                (None, None) => break,
                (Some(_), None) => true,
                (None, Some(_)) => false,
                (Some(s), Some(k)) => s <= self.pairs[k].sugar,
            };
            if take_input {
                let (v, s) = self.pending.pop().expect("pending input");
                let h = self.reduce(&v);
                if !h.is_zero() {
                    self.install(h, s);
                }
            } else {
                let pair = self.pairs.swap_remove(best_pair.expect("pair"));
                let s = self.spoly(&pair);
                let h = self.reduce_from(s, 0);
                if !h.is_zero() {
                    self.install(h, pair.sugar);
                }
            }
        }
    }

    /// Reduced basis: minimal, tail-reduced, monic, sorted by leading term.
    pub(crate) fn reduced(&self) -> Vec<Vector> {
        let mut idx: Vec<usize> = (0..self.elems.len()).filter(|&g| self.active[g]).collect();
        // by position, then degree, then decreasing leading monomial
        idx.sort_by(|&a, &b| {
            let ta = self.elems[a].leading().expect("nonzero");
            let tb = self.elems[b].leading().expect("nonzero");
            ta.comp
                .cmp(&tb.comp)
                .then_with(|| ta.mono.degree().cmp(&tb.mono.degree()))
                .then_with(|| self.ring.cmp_mono(&tb.mono, &ta.mono))
        });
        idx.iter().map(|&g| self.reduce_from(self.elems[g].clone(), 1)).collect()
    }
}

/// A reduced Groebner basis of a submodule of `R^k` (an ideal when `k = 1`).
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    shifts: Vec<i32>,
    elements: Vec<Vector>,
}

impl GroebnerBasis {
    /// Reduced basis of the submodule of `R^k` spanned by `gens`, where
    /// `k = shifts.len()`.
    pub fn compute(ring: &Ring, shifts: &[i32], gens: &[Vector]) -> GroebnerBasis {
        let mut engine = Buchberger::new(ring, shifts);
        for g in gens {
            debug_assert!(g.min_rank() <= shifts.len(), "generator outside the ambient module");
            engine.add(g.clone());
        }
        engine.run();
        let gb = GroebnerBasis { ring: ring.clone(), shifts: shifts.to_vec(), elements: engine.reduced() };
        if certify::enabled() {
            assert!(gb.verify_certificate(), "Buchberger certificate failed");
        }
        gb
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn shifts(&self) -> &[i32] {
        &self.shifts
    }

    pub fn elements(&self) -> &[Vector] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements as polynomials (rank-one bases).
    pub fn polys(&self) -> Vec<Poly> {
        self.elements.iter().map(|v| v.component(0)).collect()
    }

    pub fn leading_terms(&self) -> impl Iterator<Item = (u32, Monomial)> + '_ {
        self.elements.iter().map(|v| {
            let t = v.leading().expect("nonzero basis element");
            (t.comp, t.mono)
        })
    }

    /// Leading monomials grouped by component.
    pub fn leading_by_component(&self) -> Vec<Vec<Monomial>> {
        let mut out = vec![Vec::new(); self.rank()];
        for (c, m) in self.leading_terms() {
            out[c as usize].push(m);
        }
        out
    }

    fn divisor(&self, t: &Term) -> Option<&Vector> {
        self.elements.iter().find(|g| {
            let l = g.leading().expect("nonzero");
            l.comp == t.comp && l.mono.divides(&t.mono)
        })
    }

    /// Remainder with no term divisible by a leading term of the basis.
    pub fn normal_form(&self, v: &Vector) -> Vector {
        let mut r = v.clone();
        let mut i = 0;
        while i < r.len() {
            let t = r.terms()[i];
            match self.divisor(&t) {
                Some(g) => {
                    let m = g.leading().expect("nonzero").mono.quotient_of(&t.mono);
                    r = self.ring.sub_mul_term(&r, t.coeff, &m, g);
                }
                None => i += 1,
            }
        }
        r
    }

    pub fn normal_form_poly(&self, f: &Poly) -> Poly {
        self.normal_form(f.as_vector()).component(0)
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.normal_form(v).is_zero()
    }

    pub fn contains_unit(&self) -> bool {
        self.elements.iter().any(|g| g.leading().is_some_and(|t| t.mono.is_one()) && self.rank() == 1)
    }

    /// Every S-vector of basis pairs reduces to zero and the basis is
    /// reduced and monic.
    pub fn verify_certificate(&self) -> bool {
        let ring = &self.ring;
        for (a, f) in self.elements.iter().enumerate() {
            let lf = f.leading().expect("nonzero");
            if lf.coeff != 1 {
                return false;
            }
            for (b, g) in self.elements.iter().enumerate() {
                if a == b {
                    continue;
                }
                let lg = g.leading().expect("nonzero");
                if f.terms().iter().any(|t| t.comp == lg.comp && lg.mono.divides(&t.mono)) {
                    return false;
                }
                if b < a || lf.comp != lg.comp {
                    continue;
                }
                let l = lf.mono.lcm(&lg.mono);
                let s =
                    ring.sub_mul_term(&ring.mul_term(f, 1, &lf.mono.quotient_of(&l)), 1, &lg.mono.quotient_of(&l), g);
                if !self.normal_form(&s).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Same submodule, compared through reduced bases.
    pub fn same_module(&self, other: &GroebnerBasis) -> bool {
        self.elements == other.elements
    }
}

/// Reduced Groebner basis of the ideal generated by `gens`.
pub fn buchberger(ring: &Ring, gens: &[Poly]) -> GroebnerBasis {
    let vs: Vec<Vector> = gens.iter().map(|f| f.as_vector().clone()).collect();
    GroebnerBasis::compute(ring, &[0], &vs)
}

/// Normal form of `f` with respect to a basis.
pub fn normal_form(f: &Poly, basis: &GroebnerBasis) -> Poly {
    basis.normal_form_poly(f)
}

/// Greedy minimal generating set of a graded submodule: generators are
/// visited by increasing degree and kept only if they are not already in the
/// span of the kept ones. For homogeneous input this is a minimal system of
/// generators. `already` generators are in the span but never returned.
pub(crate) fn minimal_generators(ring: &Ring, shifts: &[i32], already: &[Vector], gens: &[Vector]) -> Vec<Vector> {
    let mut engine = Buchberger::new(ring, shifts);
    for v in already {
        engine.add(v.clone());
    }
    engine.run();
    let mut order: Vec<usize> = (0..gens.len()).filter(|&k| !gens[k].is_zero()).collect();
    order.sort_by(|&a, &b| {
        let (da, db) = (gens[a].max_degree(shifts), gens[b].max_degree(shifts));
        da.cmp(&db).then_with(|| gens[a].len().cmp(&gens[b].len())).then(a.cmp(&b))
    });
    let mut kept = Vec::new();
    for k in order {
        if !engine.reduce(&gens[k]).is_zero() {
            kept.push(gens[k].clone());
            engine.add(gens[k].clone());
            engine.run();
        }
    }
    kept
}
