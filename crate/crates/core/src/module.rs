//! Finitely presented graded modules, maps of free modules, syzygies and
//! subquotients.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::sync::OnceLock;

use serde::Serialize;

use crate::certify;
use crate::error::{Error, Result};
use crate::groebner::{minimal_generators, GroebnerBasis};
use crate::hilbert;
use crate::ideal::Ideal;
use crate::length::Length;
use crate::monomial::Monomial;
use crate::poly::{Poly, Ring, Term, Vector};

/// A graded free module `⊕ R(-shift_c)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct FreeModule {
    shifts: Vec<i32>,
}

impl FreeModule {
    pub fn new(shifts: Vec<i32>) -> Self {
        FreeModule { shifts }
    }

    pub fn free(rank: usize) -> Self {
        FreeModule { shifts: vec![0; rank] }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn shifts(&self) -> &[i32] {
        &self.shifts
    }

    /// `self ⊗ other`, basis `(a, b)` at index `a * other.rank() + b`.
    pub fn tensor(&self, other: &FreeModule) -> FreeModule {
        let mut shifts = Vec::with_capacity(self.rank() * other.rank());
        for &a in &self.shifts {
            for &b in &other.shifts {
                shifts.push(a + b);
            }
        }
        FreeModule { shifts }
    }

    pub fn direct_sum(&self, other: &FreeModule) -> FreeModule {
        let mut shifts = self.shifts.clone();
        shifts.extend_from_slice(&other.shifts);
        FreeModule { shifts }
    }
}

/// Degree of each vector under `shifts`, zero vectors counted as degree 0.
fn degrees(vs: &[Vector], shifts: &[i32]) -> Vec<i32> {
    vs.iter().map(|v| v.degree(shifts).unwrap_or(0)).collect()
}

fn check_homogeneous(ring: &Ring, vs: &[Vector], ambient: &FreeModule) -> Result<()> {
    for v in vs {
        if v.min_rank() > ambient.rank() {
            return Err(Error::DimensionMismatch(format!(
                "vector with {} components in a free module of rank {}",
                v.min_rank(),
                ambient.rank()
            )));
        }
        if !v.is_homogeneous(ambient.shifts()) {
            return Err(Error::NotHomogeneous(ring.fmt_vector(v, ambient.rank())));
        }
    }
    Ok(())
}

/// A homogeneous map of free modules, stored by the images of the source
/// basis vectors.
#[derive(Clone, Debug)]
pub struct ModuleMap {
    ring: Ring,
    source: FreeModule,
    target: FreeModule,
    columns: Vec<Vector>,
}

impl ModuleMap {
    pub fn new(ring: &Ring, source: FreeModule, target: FreeModule, columns: Vec<Vector>) -> Result<ModuleMap> {
        if columns.len() != source.rank() {
            return Err(Error::DimensionMismatch(format!(
                "{} columns for a source of rank {}",
                columns.len(),
                source.rank()
            )));
        }
        check_homogeneous(ring, &columns, &target)?;
        for (j, c) in columns.iter().enumerate() {
            if let Some(d) = c.degree(target.shifts()) {
                if d != source.shifts()[j] {
                    return Err(Error::NotHomogeneous(format!(
                        "column {j} has degree {d} but its source shift is {}",
                        source.shifts()[j]
                    )));
                }
            }
        }
        Ok(ModuleMap { ring: ring.clone(), source, target, columns })
    }

    /// The map whose source shifts are the degrees of the columns.
    pub fn from_columns(ring: &Ring, target: FreeModule, columns: Vec<Vector>) -> Result<ModuleMap> {
        let source = FreeModule::new(degrees(&columns, target.shifts()));
        ModuleMap::new(ring, source, target, columns)
    }

    pub fn identity(ring: &Ring, module: &FreeModule) -> ModuleMap {
        let columns = (0..module.rank() as u32).map(|c| ring.unit_vector(c)).collect();
        ModuleMap { ring: ring.clone(), source: module.clone(), target: module.clone(), columns }
    }

    pub fn zero(ring: &Ring, source: FreeModule, target: FreeModule) -> ModuleMap {
        let columns = vec![Vector::zero(); source.rank()];
        ModuleMap { ring: ring.clone(), source, target, columns }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn source(&self) -> &FreeModule {
        &self.source
    }

    pub fn target(&self) -> &FreeModule {
        &self.target
    }

    pub fn columns(&self) -> &[Vector] {
        &self.columns
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vector::is_zero)
    }

    /// Image of a source vector.
    pub fn apply(&self, v: &Vector) -> Vector {
        let r = &self.ring;
        let mut acc = Vector::zero();
        for c in 0..self.source.rank() as u32 {
            let coeff = v.component(c);
            if !coeff.is_zero() {
                acc = r.add(&acc, &r.scale(&coeff, &self.columns[c as usize]));
            }
        }
        acc
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &ModuleMap) -> ModuleMap {
        let columns = other.columns.iter().map(|c| self.apply(c)).collect();
        ModuleMap { ring: self.ring.clone(), source: other.source.clone(), target: self.target.clone(), columns }
    }

    /// `self ⊗ id_B` for a free module `B`, using the basis convention of
    /// [`FreeModule::tensor`].
    pub fn tensor_identity(&self, b: &FreeModule) -> ModuleMap {
        let rb = b.rank() as u32;
        let mut columns = Vec::with_capacity(self.source.rank() * b.rank());
        for col in &self.columns {
            for s in 0..rb {
                let terms: Vec<Term> = col.terms().iter().map(|t| Term { comp: t.comp * rb + s, ..*t }).collect();
                columns.push(self.ring.normalize(terms));
            }
        }
        ModuleMap { ring: self.ring.clone(), source: self.source.tensor(b), target: self.target.tensor(b), columns }
    }

    pub fn fmt_matrix(&self) -> String {
        let r = &self.ring;
        let mut rows = Vec::new();
        for i in 0..self.target.rank() as u32 {
            let row: Vec<String> = self.columns.iter().map(|c| r.fmt_poly(&c.component(i))).collect();
            rows.push(format!("[{}]", row.join(", ")));
        }
        format!("[{}]", rows.join(", "))
    }
}

/// Reduced module Groebner basis of the span of `gens` in `ambient`.
pub fn module_groebner(ring: &Ring, gens: &[Vector], ambient: &FreeModule) -> GroebnerBasis {
    GroebnerBasis::compute(ring, ambient.shifts(), gens)
}

/// Vectors among `gb` supported in components `>= offset`, shifted down.
fn tail_elements(ring: &Ring, gb: &GroebnerBasis, offset: u32) -> Vec<Vector> {
    gb.elements()
        .iter()
        .filter(|g| g.leading().is_some_and(|t| t.comp >= offset))
        .map(|g| g.map_components(ring, |c| c.checked_sub(offset)))
        .collect()
}

/// A map whose image is the kernel of `m`, with minimal homogeneous
/// generators.
pub fn syzygies(m: &ModuleMap) -> ModuleMap {
    let r = &m.ring;
    let t = m.target.rank() as u32;
    let ambient = m.target.direct_sum(&m.source);
    let gens: Vec<Vector> = m.columns.iter().enumerate().map(|(j, c)| r.add(c, &r.unit_vector(t + j as u32))).collect();
    let gb = GroebnerBasis::compute(r, ambient.shifts(), &gens);
    let kernel = tail_elements(r, &gb, t);
    let kernel = minimal_generators(r, m.source.shifts(), &[], &kernel);
    let syz = ModuleMap {
        ring: r.clone(),
        source: FreeModule::new(degrees(&kernel, m.source.shifts())),
        target: m.source.clone(),
        columns: kernel,
    };
    if certify::enabled() {
        assert!(m.compose(&syz).is_zero(), "syzygy certificate failed: composition is nonzero");
    }
    syz
}

/// Generators of `span(u) ∩ span(w)` inside `ambient`.
pub fn submodule_intersect(ring: &Ring, u: &[Vector], w: &[Vector], ambient: &FreeModule) -> Vec<Vector> {
    if u.iter().all(Vector::is_zero) || w.iter().all(Vector::is_zero) {
        return Vec::new();
    }
    let t = ambient.rank() as u32;
    let doubled = ambient.direct_sum(ambient);
    let mut gens = Vec::with_capacity(u.len() + w.len());
    for v in u {
        let copy = v.map_components(ring, |c| Some(c + t));
        gens.push(ring.add(v, &copy));
    }
    gens.extend(w.iter().cloned());
    let gb = GroebnerBasis::compute(ring, doubled.shifts(), &gens);
    let inter = tail_elements(ring, &gb, t);
    minimal_generators(ring, ambient.shifts(), &[], &inter)
}

/// Generators of `{v : m(v) ∈ span(sub)}`.
pub fn preimage(m: &ModuleMap, sub: &[Vector]) -> Vec<Vector> {
    let r = &m.ring;
    let s = m.source.rank() as u32;
    if s == 0 {
        return Vec::new();
    }
    let mut columns = m.columns.clone();
    columns.extend(sub.iter().filter(|v| !v.is_zero()).cloned());
    let map = ModuleMap::from_columns(r, m.target.clone(), columns).expect("homogeneous columns");
    let mut source_shifts = m.source.shifts.clone();
    source_shifts.extend_from_slice(&map.source.shifts[m.source.rank()..]);
    let map = ModuleMap { source: FreeModule::new(source_shifts), ..map };
    let gens: Vec<Vector> = syzygies(&map)
        .columns()
        .iter()
        .map(|v| v.map_components(r, |c| if c < s { Some(c) } else { None }))
        .filter(|v| !v.is_zero())
        .collect();
    minimal_generators(r, m.source.shifts(), &[], &gens)
}

/// `{f : f·u ∈ span(v)}`.
pub fn colon_vector(ring: &Ring, ambient: &FreeModule, v: &[Vector], u: &Vector) -> Ideal {
    if u.is_zero() {
        return Ideal::unit(ring);
    }
    let t = ambient.rank() as u32;
    let shift_u = u.degree(ambient.shifts()).unwrap_or(0);
    let mut shifts = ambient.shifts().to_vec();
    shifts.push(shift_u);
    let mut gens = vec![ring.add(u, &ring.unit_vector(t))];
    gens.extend(v.iter().cloned());
    let gb = GroebnerBasis::compute(ring, &shifts, &gens);
    let polys: Vec<Poly> = tail_elements(ring, &gb, t).iter().map(|g| g.component(0)).collect();
    Ideal::from_gens(ring, polys).minimalized()
}

/// Annihilator of `span(u)/span(v)`.
fn annihilator_of(ring: &Ring, ambient: &FreeModule, u: &[Vector], v: &[Vector]) -> Ideal {
    let mut acc = Ideal::unit(ring);
    let vgb = GroebnerBasis::compute(ring, ambient.shifts(), v);
    for g in u {
        if vgb.contains(g) {
            continue;
        }
        acc = acc.intersect(&colon_vector(ring, ambient, v, g));
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// `λ(span(U)/span(V))` for `V ⊆ U` from the two Hilbert series.
fn length_by_series(ring: &Ring, ambient: &FreeModule, ugb: &GroebnerBasis, vgb: &GroebnerBasis) -> Length {
    let nv = ring.nvars();
    let lu = ugb.leading_by_component();
    let lv = vgb.leading_by_component();
    let base = ambient.shifts().iter().copied().min().unwrap_or(0);
    let mut diff: Vec<i64> = Vec::new();
    for c in 0..ambient.rank() {
        if lu[c] == lv[c] {
            continue;
        }
        let shift = (ambient.shifts()[c] - base) as usize;
        let nu = hilbert::hilbert_numerator(nv, &lu[c]);
        let nvv = hilbert::hilbert_numerator(nv, &lv[c]);
        let len = shift + nu.len().max(nvv.len());
        if diff.len() < len {
            diff.resize(len, 0);
        }
        for (k, x) in nvv.iter().enumerate() {
            diff[k + shift] += x;
        }
        for (k, x) in nu.iter().enumerate() {
            diff[k + shift] -= x;
        }
    }
    if diff.iter().all(|&x| x == 0) {
        return Length::Finite(0);
    }
    let (q, k) = hilbert::divide_out_one_minus_t(&diff, nv);
    if k < nv {
        return Length::Infinite;
    }
    let total: i64 = q.iter().sum();
    assert!(total >= 0, "negative length from Hilbert series difference");
    Length::Finite(total as u64)
}

/// Standard monomial count of a module basis: `λ(F/span)`.
fn standard_count(ring: &Ring, gb: &GroebnerBasis) -> Length {
    let mut total = Length::Finite(0);
    for lts in gb.leading_by_component() {
        total = total + hilbert::standard_monomial_count(ring.nvars(), &lts);
        if !total.is_finite() {
            break;
        }
    }
    total
}

/// Eliminates generators killed by relations with a unit entry.
fn prune(ring: &Ring, ambient: &FreeModule, relations: &[Vector]) -> (FreeModule, Vec<Vector>) {
    let mut shifts = ambient.shifts().to_vec();
    let mut rels: Vec<Vector> = relations.iter().filter(|v| !v.is_zero()).cloned().collect();
    loop {
        let found = rels
            .iter()
            .enumerate()
            .find_map(|(k, v)| v.terms().iter().rev().find(|t| t.mono.is_one()).map(|t| (k, t.comp, t.coeff)));
        let Some((k, comp, coeff)) = found else { break };
        let pivot = rels.swap_remove(k);
        let inv = ring.field().inv(coeff).expect("nonzero coefficient");
        let pivot = ring.scale_const(inv, &pivot);
        rels = rels
            .into_iter()
            .map(|w| {
                let wc = w.component(comp);
                let w = if wc.is_zero() { w } else { ring.sub(&w, &ring.scale(&wc, &pivot)) };
                w.map_components(ring, |c| match c.cmp(&comp) {
                    std::cmp::Ordering::Less => Some(c),
                    std::cmp::Ordering::Equal => None,
                    std::cmp::Ordering::Greater => Some(c - 1),
                })
            })
            .filter(|w| !w.is_zero())
            .collect();
        shifts.remove(comp as usize);
    }
    let rels = minimal_generators(ring, &shifts, &[], &rels);
    (FreeModule::new(shifts), rels)
}

/// The cokernel of a homogeneous matrix.
#[derive(Clone, Debug)]
pub struct FPModule {
    ring: Ring,
    ambient: FreeModule,
    relations: Vec<Vector>,
    gb: OnceLock<GroebnerBasis>,
}

impl FPModule {
    pub fn new(ring: &Ring, ambient: FreeModule, relations: Vec<Vector>) -> Result<FPModule> {
        check_homogeneous(ring, &relations, &ambient)?;
        Ok(FPModule::raw(ring, ambient, relations))
    }

    fn raw(ring: &Ring, ambient: FreeModule, relations: Vec<Vector>) -> FPModule {
        let relations = relations.into_iter().filter(|v| !v.is_zero()).collect();
        FPModule { ring: ring.clone(), ambient, relations, gb: OnceLock::new() }
    }

    /// `R^rank`.
    pub fn free(ring: &Ring, rank: usize) -> FPModule {
        FPModule::raw(ring, FreeModule::free(rank), Vec::new())
    }

    /// `R/I`.
    pub fn cyclic(ideal: &Ideal) -> FPModule {
        let rels = ideal.generators().iter().map(|g| g.as_vector().clone()).collect();
        FPModule::raw(ideal.ring(), FreeModule::free(1), rels)
    }

    /// Cokernel of the matrix with the given rows; degree shifts of the
    /// target are inferred so that every column is homogeneous.
    pub fn from_matrix(ring: &Ring, rows: &[Vec<Poly>]) -> Result<FPModule> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::DimensionMismatch("matrix rows have different lengths".into()));
        }
        for f in rows.iter().flatten() {
            if !f.is_homogeneous() {
                return Err(Error::NotHomogeneous(ring.fmt_poly(f)));
            }
        }
        let shifts = infer_shifts(ring, rows, nrows, ncols)?;
        let columns: Vec<Vector> = (0..ncols)
            .map(|j| {
                let entries: Vec<Poly> = rows.iter().map(|r| r[j].clone()).collect();
                ring.vector_from_entries(&entries)
            })
            .collect();
        FPModule::new(ring, FreeModule::new(shifts), columns)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ambient(&self) -> &FreeModule {
        &self.ambient
    }

    pub fn relations(&self) -> &[Vector] {
        &self.relations
    }

    pub fn presentation(&self) -> ModuleMap {
        ModuleMap {
            ring: self.ring.clone(),
            source: FreeModule::new(degrees(&self.relations, self.ambient.shifts())),
            target: self.ambient.clone(),
            columns: self.relations.clone(),
        }
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| module_groebner(&self.ring, &self.relations, &self.ambient))
    }

    pub fn generators(&self) -> Vec<Vector> {
        (0..self.ambient.rank() as u32).map(|c| self.ring.unit_vector(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.generators().iter().all(|g| self.groebner().contains(g))
    }

    /// The same module with unit relations eliminated and minimal relations.
    pub fn pruned(&self) -> FPModule {
        let (ambient, rels) = prune(&self.ring, &self.ambient, &self.relations);
        FPModule::raw(&self.ring, ambient, rels)
    }

    /// `M/I^n M`.
    pub fn quotient_by_power(&self, ideal: &Ideal, n: u32) -> FPModule {
        let power = ideal.power(n);
        let mut rels = self.relations.clone();
        for c in 0..self.ambient.rank() as u32 {
            rels.extend(power.generators().iter().map(|g| g.in_component(c)));
        }
        FPModule::raw(&self.ring, self.ambient.clone(), rels)
    }

    /// `I^n M` as a subquotient of the ambient free module.
    pub fn scale(&self, ideal: &Ideal, n: u32) -> Subquotient {
        self.as_subquotient().scale(ideal, n)
    }

    pub fn as_subquotient(&self) -> Subquotient {
        Subquotient::raw(&self.ring, self.ambient.clone(), self.generators(), self.relations.clone())
    }

    pub fn annihilator(&self) -> Ideal {
        annihilator_of(&self.ring, &self.ambient, &self.generators(), &self.relations)
    }

    pub fn length(&self) -> Length {
        standard_count(&self.ring, self.groebner())
    }

    /// Canonical text of the pruned presentation; equal keys mean equal
    /// presentations.
    pub fn cache_key(&self) -> String {
        let mut s = String::new();
        let _ = write!(s, "{:?}|", self.ambient.shifts());
        for g in self.groebner().elements() {
            s.push_str(&self.ring.fmt_vector(g, self.ambient.rank()));
            s.push(';');
        }
        s
    }

    pub fn describe(&self) -> String {
        if self.relations.is_empty() {
            return format!("R^{}", self.ambient.rank());
        }
        format!("coker {}", self.presentation().fmt_matrix())
    }
}

fn infer_shifts(ring: &Ring, rows: &[Vec<Poly>], nrows: usize, ncols: usize) -> Result<Vec<i32>> {
    let mut row_shift: Vec<Option<i32>> = vec![None; nrows];
    let mut col_deg: Vec<Option<i32>> = vec![None; ncols];
    for start in 0..nrows {
        if row_shift[start].is_some() {
            continue;
        }
        row_shift[start] = Some(0);
        let mut queue = VecDeque::from([(true, start)]);
        while let Some((is_row, k)) = queue.pop_front() {
            if is_row {
                let s = row_shift[k].expect("assigned");
                for j in 0..ncols {
                    if let Some(d) = rows[k][j].degree() {
                        let want = d as i32 + s;
                        match col_deg[j] {
                            None => {
                                col_deg[j] = Some(want);
                                queue.push_back((false, j));
                            }
                            Some(have) if have != want => {
                                return Err(Error::NotHomogeneous(format!(
                                    "no degree shifts make column {} homogeneous (entry {})",
                                    j + 1,
                                    ring.fmt_poly(&rows[k][j])
                                )))
                            }
                            _ => {}
                        }
                    }
                }
            } else {
                let dj = col_deg[k].expect("assigned");
                for (i, row) in rows.iter().enumerate() {
                    if let Some(d) = row[k].degree() {
                        let want = dj - d as i32;
                        match row_shift[i] {
                            None => {
                                row_shift[i] = Some(want);
                                queue.push_back((true, i));
                            }
                            Some(have) if have != want => {
                                return Err(Error::NotHomogeneous(format!(
                                    "no degree shifts make column {} homogeneous (entry {})",
                                    k + 1,
                                    ring.fmt_poly(&row[k])
                                )))
                            }
                            _ => {}
                        }
                    }
                }
            }
        }
    }
    Ok(row_shift.into_iter().map(|s| s.unwrap_or(0)).collect())
}

/// `U/V` for submodules `V ⊆ U` of a free module.
#[derive(Clone, Debug)]
pub struct Subquotient {
    ring: Ring,
    ambient: FreeModule,
    u: Vec<Vector>,
    v: Vec<Vector>,
    ugb: OnceLock<GroebnerBasis>,
    vgb: OnceLock<GroebnerBasis>,
}

impl Subquotient {
    /// `U/V`; fails unless every generator of `V` lies in `U`.
    pub fn new(ring: &Ring, ambient: FreeModule, u: Vec<Vector>, v: Vec<Vector>) -> Result<Subquotient> {
        check_homogeneous(ring, &u, &ambient)?;
        check_homogeneous(ring, &v, &ambient)?;
        let ugb = module_groebner(ring, &u, &ambient);
        if let Some(bad) = v.iter().find(|g| !ugb.contains(g)) {
            return Err(Error::InvalidArgument(format!(
                "denominator generator {} is not in the numerator",
                ring.fmt_vector(bad, ambient.rank())
            )));
        }
        let sq = Subquotient::raw(ring, ambient, u, v);
        let _ = sq.ugb.set(ugb);
        Ok(sq)
    }

    /// `(U + V)/V`.
    pub fn over(ring: &Ring, ambient: FreeModule, u: Vec<Vector>, v: Vec<Vector>) -> Subquotient {
        Subquotient::raw(ring, ambient, u, v)
    }

    fn raw(ring: &Ring, ambient: FreeModule, mut u: Vec<Vector>, v: Vec<Vector>) -> Subquotient {
        u.retain(|g| !g.is_zero());
        let v: Vec<Vector> = v.into_iter().filter(|g| !g.is_zero()).collect();
        u.extend(v.iter().cloned());
        Subquotient { ring: ring.clone(), ambient, u, v, ugb: OnceLock::new(), vgb: OnceLock::new() }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ambient(&self) -> &FreeModule {
        &self.ambient
    }

    /// Generators of the numerator (they include those of the denominator).
    pub fn numerator(&self) -> &[Vector] {
        &self.u
    }

    pub fn denominator(&self) -> &[Vector] {
        &self.v
    }

    pub fn numerator_gb(&self) -> &GroebnerBasis {
        self.ugb.get_or_init(|| module_groebner(&self.ring, &self.u, &self.ambient))
    }

    pub fn denominator_gb(&self) -> &GroebnerBasis {
        self.vgb.get_or_init(|| module_groebner(&self.ring, &self.v, &self.ambient))
    }

    pub fn is_zero(&self) -> bool {
        let vgb = self.denominator_gb();
        self.u.iter().all(|g| vgb.contains(g))
    }

    /// Same numerator and denominator as submodules.
    pub fn same_as(&self, other: &Subquotient) -> bool {
        self.numerator_gb().same_module(other.numerator_gb())
            && self.denominator_gb().same_module(other.denominator_gb())
    }

    fn is_graded(&self) -> bool {
        let s = self.ambient.shifts();
        self.u.iter().all(|g| g.is_homogeneous(s))
    }

    pub fn length(&self) -> Length {
        if self.is_graded() {
            length_by_series(&self.ring, &self.ambient, self.numerator_gb(), self.denominator_gb())
        } else {
            self.length_by_presentation()
        }
    }

    /// Length of the cokernel presentation; independent of the series route.
    pub fn length_by_presentation(&self) -> Length {
        self.presentation_unpruned().length()
    }

    /// Numerator generators that are not in the denominator.
    fn essential_generators(&self) -> Vec<Vector> {
        let vgb = self.denominator_gb();
        let gens: Vec<Vector> = self.u.iter().filter(|g| !vgb.contains(g)).cloned().collect();
        minimal_generators(&self.ring, self.ambient.shifts(), &self.v, &gens)
    }

    fn presentation_unpruned(&self) -> FPModule {
        let r = &self.ring;
        let cover = self.essential_generators();
        if cover.is_empty() {
            return FPModule::free(r, 0);
        }
        let a = cover.len();
        let mut columns = cover.clone();
        columns.extend(self.v.iter().cloned());
        let map = ModuleMap::from_columns(r, self.ambient.clone(), columns).expect("homogeneous generators");
        let syz = syzygies(&map);
        let rels: Vec<Vector> = syz
            .columns()
            .iter()
            .map(|s| s.map_components(r, |c| if (c as usize) < a { Some(c) } else { None }))
            .filter(|s| !s.is_zero())
            .collect();
        let shifts = degrees(&cover, self.ambient.shifts());
        FPModule::raw(r, FreeModule::new(shifts), rels)
    }

    /// A pruned presentation `coker` of this subquotient.
    pub fn presentation(&self) -> FPModule {
        self.presentation_unpruned().pruned()
    }

    pub fn annihilator(&self) -> Ideal {
        annihilator_of(&self.ring, &self.ambient, &self.essential_generators(), &self.v)
    }

    /// `(I^n U + V)/V`.
    pub fn scale(&self, ideal: &Ideal, n: u32) -> Subquotient {
        let power = ideal.power(n);
        let mut u = Vec::new();
        for g in &self.u {
            for f in power.generators() {
                u.push(self.ring.scale(f, g));
            }
        }
        Subquotient::raw(&self.ring, self.ambient.clone(), u, self.v.clone())
    }

    /// `(U + V)/(V + extra)`.
    pub fn modulo(&self, extra: &[Vector]) -> Subquotient {
        let mut v = self.v.clone();
        v.extend(extra.iter().cloned());
        Subquotient::raw(&self.ring, self.ambient.clone(), self.u.clone(), v)
    }
}

/// `λ(U/V)`.
pub fn module_length(s: &Subquotient) -> Length {
    s.length()
}

/// `I^n M` as a subquotient.
pub fn scale_module(ideal: &Ideal, n: u32, m: &FPModule) -> Subquotient {
    m.scale(ideal, n)
}

pub fn annihilator(m: &FPModule) -> Ideal {
    m.annihilator()
}

/// Monomial `x^e` helper used by tests and fixtures.
pub fn monomial_vector(ring: &Ring, exps: &[u32], comp: u32) -> Vector {
    let m = Monomial::from_exponents(exps).expect("valid exponents");
    ring.monomial(m, 1).in_component(comp)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Ring {
        Ring::standard(&["x", "y"])
    }

    fn vecs(r: &Ring, rows: &[&[&str]]) -> Vec<Vector> {
        rows.iter()
            .map(|entries| {
                let ps: Vec<Poly> = entries.iter().map(|s| r.parse_poly(s).unwrap()).collect();
                r.vector_from_entries(&ps)
            })
            .collect()
    }

    #[test]
    fn koszul_syzygy() {
        let r = ring();
        let m = ModuleMap::from_columns(&r, FreeModule::free(1), vecs(&r, &[&["x"], &["y"]])).unwrap();
        let s = syzygies(&m);
        assert_eq!(s.columns().len(), 1);
        let col = &s.columns()[0];
        let expected = vecs(&r, &[&["-y", "x"]])[0].clone();
        assert!(col == &expected || col == &r.neg(&expected));
        assert!(m.compose(&s).is_zero());
    }

    #[test]
    fn syzygy_with_common_factor() {
        let r = ring();
        let m = ModuleMap::from_columns(&r, FreeModule::free(1), vecs(&r, &[&["x^2"], &["x*y"]])).unwrap();
        let s = syzygies(&m);
        assert_eq!(s.columns().len(), 1);
        assert_eq!(s.source().shifts(), &[3]);
        assert!(m.compose(&s).is_zero());
    }

    #[test]
    fn identity_has_no_syzygies() {
        let r = ring();
        let id = ModuleMap::identity(&r, &FreeModule::free(2));
        assert!(syzygies(&id).columns().is_empty());
    }

    #[test]
    fn intersections() {
        let r = ring();
        let f1 = FreeModule::free(1);
        let got = submodule_intersect(&r, &vecs(&r, &[&["x"]]), &vecs(&r, &[&["y"]]), &f1);
        assert_eq!(got, vecs(&r, &[&["x*y"]]));
        let f2 = FreeModule::free(2);
        let got = submodule_intersect(&r, &vecs(&r, &[&["x", "0"]]), &vecs(&r, &[&["x", "x"]]), &f2);
        assert!(got.is_empty());
    }

    #[test]
    fn annihilators() {
        let r = ring();
        let x = Ideal::parse(&r, &["x"]).unwrap();
        assert!(FPModule::cyclic(&x).annihilator().same_ideal(&x));
        assert!(FPModule::free(&r, 1).annihilator().is_zero());
        let rows = vec![vec![r.parse_poly("x").unwrap(), Poly::zero()], vec![Poly::zero(), r.parse_poly("y").unwrap()]];
        let m = FPModule::from_matrix(&r, &rows).unwrap();
        assert!(m.annihilator().same_ideal(&Ideal::parse(&r, &["x*y"]).unwrap()));
    }

    #[test]
    fn lengths() {
        let r = ring();
        let max = Ideal::maximal(&r);
        assert_eq!(FPModule::cyclic(&max).length(), Length::Finite(1));
        let sq = FPModule::free(&r, 1).scale(&max, 1).modulo(&vecs(&r, &[&["x^2"], &["x*y"], &["y^2"]]));
        assert_eq!(sq.length(), Length::Finite(2));
        assert_eq!(sq.length_by_presentation(), Length::Finite(2));
        let x = Ideal::parse(&r, &["x"]).unwrap();
        assert_eq!(FPModule::cyclic(&x).as_subquotient().length(), Length::Infinite);
    }

    #[test]
    fn scaling_a_cyclic_module() {
        let r = ring();
        let m = FPModule::cyclic(&Ideal::parse(&r, &["x"]).unwrap());
        let sq = m.scale(&Ideal::maximal(&r), 2);
        let expected = Subquotient::over(&r, FreeModule::free(1), vecs(&r, &[&["y^2"]]), vecs(&r, &[&["x"]]));
        assert!(sq.same_as(&expected));
        assert!(m.scale(&Ideal::maximal(&r), 0).same_as(&m.as_subquotient()));
    }

    #[test]
    fn shift_inference() {
        let r = ring();
        let rows = vec![vec![r.parse_poly("x^2").unwrap()], vec![r.parse_poly("y").unwrap()]];
        let m = FPModule::from_matrix(&r, &rows).unwrap();
        assert_eq!(m.ambient().shifts(), &[0, 1]);
        let bad = vec![
            vec![r.parse_poly("x^2").unwrap(), r.parse_poly("x").unwrap()],
            vec![r.parse_poly("y").unwrap(), r.parse_poly("y").unwrap()],
        ];
        assert!(matches!(FPModule::from_matrix(&r, &bad), Err(Error::NotHomogeneous(_))));
    }

    #[test]
    fn pruning_removes_unit_relations() {
        let r = ring();
        let rows = vec![
            vec![r.parse_poly("1").unwrap(), r.parse_poly("0").unwrap()],
            vec![r.parse_poly("x").unwrap(), r.parse_poly("y").unwrap()],
        ];
        let m = FPModule::from_matrix(&r, &rows).unwrap().pruned();
        assert_eq!(m.ambient().rank(), 1);
        assert_eq!(m.relations().len(), 1);
    }
}
