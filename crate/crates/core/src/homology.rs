//! Free resolutions, Tor as homology of tensored resolutions, and the maps
//! on Tor induced by `I^n M ⊆ M` and `N → N/J^m N`.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use serde::Serialize;

use crate::certify;
use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::ideal::Ideal;
use crate::length::Length;
use crate::module::{
    module_groebner, preimage, submodule_intersect, syzygies, FPModule, FreeModule, ModuleMap, Subquotient,
};
use crate::poly::{Ring, Vector};

#[derive(Clone, Debug)]
struct ResolutionData {
    modules: Vec<FreeModule>,
    columns: Vec<Vec<Vector>>,
}

/// Resolutions keyed by reduced presentation, shared by all computations in
/// one ring. Concurrent readers, exclusive writers.
#[derive(Default)]
pub struct ResolutionCache {
    inner: RwLock<HashMap<String, Arc<ResolutionData>>>,
}

impl ResolutionCache {
    fn get(&self, key: &str) -> Option<Arc<ResolutionData>> {
        self.inner.read().expect("resolution cache poisoned").get(key).cloned()
    }

    fn put(&self, key: String, data: Arc<ResolutionData>) {
        let mut map = self.inner.write().expect("resolution cache poisoned");
        let longer = map.get(&key).is_none_or(|old| old.columns.len() < data.columns.len());
        if longer {
            map.insert(key, data);
        }
    }

    pub fn len(&self) -> usize {
        self.inner.read().expect("resolution cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// A free resolution `F_len -> ... -> F_1 -> F_0 -> M -> 0`.
#[derive(Clone, Debug)]
pub struct Resolution {
    ring: Ring,
    module: FPModule,
    modules: Vec<FreeModule>,
    maps: Vec<ModuleMap>,
}

impl Resolution {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// The resolved module, in the pruned presentation `coker(maps[0])`.
    pub fn module(&self) -> &FPModule {
        &self.module
    }

    pub fn length(&self) -> usize {
        self.maps.len()
    }

    /// `F_j`; zero beyond the computed length.
    pub fn free_module(&self, j: usize) -> FreeModule {
        self.modules.get(j).cloned().unwrap_or_default()
    }

    /// `d_j : F_{j+1} -> F_j`.
    pub fn map(&self, j: usize) -> ModuleMap {
        match self.maps.get(j) {
            Some(m) => m.clone(),
            None => ModuleMap::zero(&self.ring, self.free_module(j + 1), self.free_module(j)),
        }
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(FreeModule::rank).collect()
    }

    /// Consecutive composites vanish and every kernel lies in the next image.
    pub fn verify_exactness(&self) -> bool {
        for j in 1..self.maps.len() {
            if !self.maps[j - 1].compose(&self.maps[j]).is_zero() {
                return false;
            }
            let im: GroebnerBasis = module_groebner(&self.ring, self.maps[j].columns(), self.maps[j].target());
            if syzygies(&self.maps[j - 1]).columns().iter().any(|k| !im.contains(k)) {
                return false;
            }
        }
        true
    }

    fn from_data(ring: &Ring, module: FPModule, data: &ResolutionData, length: usize) -> Resolution {
        let n = length.min(data.columns.len());
        let modules: Vec<FreeModule> = data.modules[..=n].to_vec();
        let maps = (0..n)
            .map(|j| {
                ModuleMap::new(ring, modules[j + 1].clone(), modules[j].clone(), data.columns[j].clone())
                    .expect("cached resolution maps are homogeneous")
            })
            .collect();
        Resolution { ring: ring.clone(), module, modules, maps }
    }
}

/// A resolution of `m` with `length` maps (fewer when it ends early).
pub fn free_resolution(m: &FPModule, length: usize) -> Resolution {
    let ring = m.ring().clone();
    let module = m.pruned();
    let key = module.cache_key();
    if let Some(data) = ring.resolutions().get(&key) {
        let done = data.modules.last().is_some_and(|f| f.rank() == 0);
        if data.columns.len() >= length || done {
            return Resolution::from_data(&ring, module, &data, length);
        }
    }
    let mut modules = vec![module.ambient().clone()];
    let mut columns: Vec<Vec<Vector>> = Vec::new();
    let mut current = module.presentation();
    for j in 0..length {
        modules.push(current.source().clone());
        columns.push(current.columns().to_vec());
        if current.source().rank() == 0 || j + 1 == length {
            break;
        }
        current = syzygies(&current);
    }
    let data = Arc::new(ResolutionData { modules, columns });
    ring.resolutions().put(key, data.clone());
    let res = Resolution::from_data(&ring, module, &data, length);
    if certify::enabled() {
        assert!(res.verify_exactness(), "resolution certificate failed");
    }
    res
}

/// Cycles and boundaries of `F_• ⊗ B` in degree `i`, lifted to the free
/// module `F_i ⊗ G_0` where `B = coker(G_1 -> G_0)`.
#[derive(Clone, Debug)]
pub struct TensorDegree {
    pub ambient: FreeModule,
    /// `{v : (d_{i-1} ⊗ 1) v ∈ (im β)^{f_{i-1}}}`.
    pub cycles: Vec<Vector>,
    /// Columns of `d_i ⊗ 1`.
    pub boundaries: Vec<Vector>,
    /// `(im β)^{f_i}`.
    pub relations: Vec<Vector>,
}

impl TensorDegree {
    /// `Tor_i = cycles / (boundaries + relations)`.
    pub fn homology(&self, ring: &Ring) -> Subquotient {
        let mut den = self.boundaries.clone();
        den.extend(self.relations.iter().cloned());
        Subquotient::over(ring, self.ambient.clone(), self.cycles.clone(), den)
    }

    /// `I^n` times every basis vector of the ambient, plus the relations:
    /// the lift of `(I^n B)^{f_i}`.
    pub fn scaled_ambient(&self, power: &Ideal) -> Vec<Vector> {
        let mut out = self.relations.clone();
        for c in 0..self.ambient.rank() as u32 {
            out.extend(power.generators().iter().map(|g| g.in_component(c)));
        }
        out
    }
}

fn block_relations(ring: &Ring, b: &FPModule, blocks: usize) -> Vec<Vector> {
    let gb = b.ambient().rank() as u32;
    let mut out = Vec::new();
    for j in 0..blocks as u32 {
        for rel in b.relations() {
            out.push(rel.map_components(ring, |c| Some(j * gb + c)));
        }
    }
    out
}

/// Degree `i` of `res ⊗ B`, with `B` in its given presentation.
pub fn tensor_degree(res: &Resolution, b: &FPModule, i: usize) -> TensorDegree {
    let ring = res.ring();
    let g0 = b.ambient();
    let fi = res.free_module(i);
    let ambient = fi.tensor(g0);
    let boundaries: Vec<Vector> =
        res.map(i).tensor_identity(g0).columns().iter().filter(|v| !v.is_zero()).cloned().collect();
    let relations = block_relations(ring, b, fi.rank());
    let cycles = if ambient.rank() == 0 {
        Vec::new()
    } else if i == 0 {
        (0..ambient.rank() as u32).map(|c| ring.unit_vector(c)).collect()
    } else {
        let d = res.map(i - 1).tensor_identity(g0);
        let below = block_relations(ring, b, res.free_module(i - 1).rank());
        preimage(&d, &below)
    };
    TensorDegree { ambient, cycles, boundaries, relations }
}

/// `Tor_i` together with its length.
#[derive(Clone, Debug)]
pub struct TorResult {
    pub index: i64,
    pub value: Subquotient,
    pub length: Length,
}

impl TorResult {
    fn zero(ring: &Ring, index: i64) -> TorResult {
        TorResult {
            index,
            value: Subquotient::over(ring, FreeModule::free(0), Vec::new(), Vec::new()),
            length: Length::Finite(0),
        }
    }
}

/// `Tor_i(A, B)`, resolving `A` and tensoring with `B`. Negative indices
/// give the zero module.
pub fn tor(i: i64, a: &FPModule, b: &FPModule) -> TorResult {
    let ring = a.ring();
    if i < 0 {
        return TorResult::zero(ring, i);
    }
    let i = i as usize;
    let res = free_resolution(a, i + 1);
    let b = b.pruned();
    let value = tensor_degree(&res, &b, i).homology(ring);
    let length = value.length();
    TorResult { index: i as i64, value, length }
}

/// `λ(Tor_i(A, B))`.
pub fn tor_length(i: i64, a: &FPModule, b: &FPModule) -> Length {
    tor(i, a, b).length
}

/// Whether `λ(Tor_i(A,B)) = λ(Tor_i(B,A))`.
pub fn tor_symmetric_check(i: i64, a: &FPModule, b: &FPModule) -> bool {
    tor_length(i, a, b) == tor_length(i, b, a)
}

/// The image of an induced map on Tor, as a submodule of the target.
#[derive(Clone, Debug)]
pub struct InducedTorMap {
    pub source: TorResult,
    pub target: TorResult,
    /// Image generators in the target's free coordinates.
    pub image_generators: Vec<Vector>,
    pub image: Subquotient,
    pub image_length: Length,
}

impl InducedTorMap {
    pub fn is_zero(&self) -> bool {
        self.image.is_zero()
    }
}

/// `Tor_i(M, N)` against a resolution of `N`, with `M` tensored in; the
/// setting of the map induced by `I^n M ⊆ M`.
pub struct ImageSeries {
    ring: Ring,
    ideal: Ideal,
    degree: TensorDegree,
    denominator: Vec<Vector>,
    cache: HashMap<u32, Vec<Vector>>,
}

impl ImageSeries {
    pub fn new(i: usize, ideal: &Ideal, m: &FPModule, n: &FPModule) -> ImageSeries {
        let ring = m.ring().clone();
        let res = free_resolution(n, i + 1);
        let degree = tensor_degree(&res, m, i);
        let mut denominator = degree.boundaries.clone();
        denominator.extend(degree.relations.iter().cloned());
        ImageSeries { ring, ideal: ideal.clone(), degree, denominator, cache: HashMap::new() }
    }

    pub fn target(&self) -> Subquotient {
        self.degree.homology(&self.ring)
    }

    /// Lift of the cycles inside `I^n M^{β_i}`: `K ∩ I^n M^{β_i}`.
    pub fn cycles_in_power(&mut self, n: u32) -> Vec<Vector> {
        if let Some(v) = self.cache.get(&n) {
            return v.clone();
        }
        let v = if n == 0 {
            self.degree.cycles.clone()
        } else {
            let scaled = self.degree.scaled_ambient(&self.ideal.power(n));
            submodule_intersect(&self.ring, &self.degree.cycles, &scaled, &self.degree.ambient)
        };
        self.cache.insert(n, v.clone());
        v
    }

    /// `im(Tor_i(I^n M, N) -> Tor_i(M, N))`.
    pub fn image(&mut self, n: u32) -> Subquotient {
        let gens = self.cycles_in_power(n);
        Subquotient::over(&self.ring, self.degree.ambient.clone(), gens, self.denominator.clone())
    }

    /// `I^k · im_n`.
    pub fn scaled_image(&mut self, n: u32, k: u32) -> Subquotient {
        self.image(n).scale(&self.ideal, k)
    }

    /// `Tor_i(I^n M, N) = (K ∩ I^n M^{β_i}) / (I^n L)`.
    pub fn source(&mut self, n: u32) -> TorResult {
        let ring = self.ring.clone();
        let power = self.ideal.power(n);
        let mut den: Vec<Vector> = Vec::new();
        for b in &self.degree.boundaries {
            den.extend(power.generators().iter().map(|g| ring.scale(g, b)));
        }
        den.extend(self.degree.relations.iter().cloned());
        let value = Subquotient::over(&ring, self.degree.ambient.clone(), self.cycles_in_power(n), den);
        let length = value.length();
        TorResult { index: 0, value, length }
    }

    /// Whether `im_{n+1} = I·im_n`.
    pub fn step_holds(&mut self, n: u32) -> bool {
        let next = self.image(n + 1);
        let scaled = self.scaled_image(n, 1);
        next.same_as(&scaled)
    }
}

/// `im(Tor_i(I^n M, N) -> Tor_i(M, N))`, computed against one resolution
/// of `N`. `shape_from` additionally checks `im_n = I^{n-k} im_k`.
pub fn induced_image_a(i: usize, ideal: &Ideal, n: u32, m: &FPModule, nn: &FPModule) -> InducedTorMap {
    let mut series = ImageSeries::new(i, ideal, m, nn);
    let mut source = series.source(n);
    source.index = i as i64;
    let target_value = series.target();
    let target_length = target_value.length();
    let image = series.image(n);
    let image_length = image.length();
    InducedTorMap {
        source,
        target: TorResult { index: i as i64, value: target_value, length: target_length },
        image_generators: series.cycles_in_power(n),
        image,
        image_length,
    }
}

/// Whether `im_n = I^{n-k} · im_k` for the map of [`induced_image_a`].
pub fn image_has_shape(i: usize, ideal: &Ideal, n: u32, k: u32, m: &FPModule, nn: &FPModule) -> bool {
    if n < k {
        return false;
    }
    let mut series = ImageSeries::new(i, ideal, m, nn);
    series.image(n).same_as(&series.scaled_image(k, n - k))
}

/// Result of searching for the onset of `im_{n+1} = I·im_n`.
#[derive(Clone, Debug, Serialize)]
pub struct Stabilization {
    /// Smallest `k` found, if any.
    pub k: Option<u32>,
    pub verified: bool,
    /// Consecutive `n` checked from `k`.
    pub window: u32,
    pub budget: u32,
    /// `λ(im_n)` for every `n` computed.
    pub image_lengths: Vec<Length>,
    /// Whether the image at the end of the verified window is zero.
    pub final_image_zero: Option<bool>,
    pub diagnostics: Vec<String>,
}

/// Smallest `k <= budget` such that `im_{n+1} = I·im_n` for `window`
/// consecutive `n >= k`.
pub fn image_stabilization(
    i: usize,
    ideal: &Ideal,
    m: &FPModule,
    nn: &FPModule,
    budget: u32,
    window: u32,
) -> Stabilization {
    let mut series = ImageSeries::new(i, ideal, m, nn);
    let mut holds: Vec<bool> = Vec::new();
    let mut diagnostics = Vec::new();
    let mut found = None;
    for k in 0..=budget {
        while holds.len() < (k + window) as usize {
            let n = holds.len() as u32;
            let ok = series.step_holds(n);
            if !ok {
                diagnostics.push(format!("im_{} differs from I*im_{}", n + 1, n));
            }
            holds.push(ok);
        }
        if holds[k as usize..(k + window) as usize].iter().all(|&b| b) {
            found = Some(k);
            break;
        }
    }
    let computed = holds.len() as u32 + 1;
    let image_lengths: Vec<Length> = (0..computed).map(|n| series.image(n).length()).collect();
    let final_image_zero = found.map(|k| series.image(k + window).is_zero());
    if found.is_none() {
        diagnostics.push(format!("no onset k <= {budget} with {window} consecutive stable steps"));
    }
    Stabilization { k: found, verified: found.is_some(), window, budget, image_lengths, final_image_zero, diagnostics }
}

/// `im(Tor_i(M, N) -> Tor_i(M, N/J^m N))`, computed against one resolution
/// of `M`.
pub fn induced_image_b(i: usize, ideal: &Ideal, m_pow: u32, m: &FPModule, nn: &FPModule) -> InducedTorMap {
    let ring = m.ring().clone();
    let res = free_resolution(m, i + 1);
    let n_pruned = nn.pruned();
    let degree = tensor_degree(&res, &n_pruned, i);
    let source_value = degree.homology(&ring);
    let quotient = n_pruned.quotient_by_power(ideal, m_pow);
    let target_degree = tensor_degree(&res, &quotient, i);
    let target_value = target_degree.homology(&ring);
    let mut den = target_degree.boundaries.clone();
    den.extend(target_degree.relations.iter().cloned());
    let image = Subquotient::over(&ring, degree.ambient.clone(), degree.cycles.clone(), den);
    let image_length = image.length();
    let source_length = source_value.length();
    let target_length = target_value.length();
    InducedTorMap {
        source: TorResult { index: i as i64, value: source_value, length: source_length },
        target: TorResult { index: i as i64, value: target_value, length: target_length },
        image_generators: degree.cycles,
        image,
        image_length,
    }
}

/// The five conditions of the radical-containment equivalence for one
/// `(i, I, M, N)`, each evaluated within `budget`.
#[derive(Clone, Debug, Serialize)]
pub struct Prop5Report {
    pub i: usize,
    pub budget: u32,
    /// `I ⊆ rad ann Tor_i(M, N)`.
    pub a: bool,
    /// Same for `Tor_i(I^k M, N)` at `k = budget`.
    pub b: bool,
    /// Same for every `n <= budget`.
    pub c: bool,
    /// Same for the image annihilators, every `n <= budget`.
    pub d: bool,
    /// The image vanishes at `n = budget`.
    pub e: bool,
    pub agree: bool,
    pub failing_n_c: Vec<u32>,
    pub failing_n_d: Vec<u32>,
    pub tor_length: Length,
}

pub fn check_prop5(i: usize, ideal: &Ideal, m: &FPModule, nn: &FPModule, budget: u32) -> Result<Prop5Report> {
    if budget == 0 {
        return Err(Error::InvalidArgument("budget must be positive".into()));
    }
    let tor_mn = tor(i as i64, m, nn);
    let a = tor_mn.value.annihilator().radical_contains_ideal(ideal);

    let mut failing_c = Vec::new();
    let mut b = false;
    for n in 0..=budget {
        let scaled = m.scale(ideal, n).presentation();
        let ok = tor(i as i64, &scaled, nn).value.annihilator().radical_contains_ideal(ideal);
        if n == budget {
            b = ok;
        }
        if !ok {
            failing_c.push(n);
        }
    }
    let c = failing_c.is_empty();

    let mut series = ImageSeries::new(i, ideal, m, nn);
    let mut failing_d = Vec::new();
    for n in 0..=budget {
        if !series.image(n).annihilator().radical_contains_ideal(ideal) {
            failing_d.push(n);
        }
    }
    let d = failing_d.is_empty();
    let e = series.image(budget).is_zero();
    let agree = a == b && b == c && c == d && d == e;
    Ok(Prop5Report {
        i,
        budget,
        a,
        b,
        c,
        d,
        e,
        agree,
        failing_n_c: failing_c,
        failing_n_d: failing_d,
        tor_length: tor_mn.length,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> Ring {
        Ring::standard(&["x", "y"])
    }

    fn cyclic(r: &Ring, g: &[&str]) -> FPModule {
        FPModule::cyclic(&Ideal::parse(r, g).unwrap())
    }

    #[test]
    fn resolution_ranks() {
        let r = ring();
        assert_eq!(free_resolution(&cyclic(&r, &["x", "y"]), 3).ranks(), vec![1, 2, 1, 0]);
        assert_eq!(free_resolution(&FPModule::free(&r, 1), 3).ranks(), vec![1, 0]);
        assert_eq!(free_resolution(&cyclic(&r, &["x"]), 3).ranks(), vec![1, 1, 0]);
    }

    #[test]
    fn koszul_tor() {
        let r = ring();
        let k = cyclic(&r, &["x", "y"]);
        let lens: Vec<Length> = (0..=3).map(|i| tor_length(i, &k, &k)).collect();
        assert_eq!(lens, vec![Length::Finite(1), Length::Finite(2), Length::Finite(1), Length::Finite(0)]);
        assert_eq!(tor_length(-1, &k, &k), Length::Finite(0));
    }

    #[test]
    fn tor_examples() {
        let r = ring();
        let mx = cyclic(&r, &["x"]);
        let my = cyclic(&r, &["y"]);
        assert_eq!(tor_length(1, &mx, &my), Length::Finite(0));
        assert_eq!(tor_length(1, &mx, &mx), Length::Infinite);
        assert!(tor_symmetric_check(1, &mx, &my));
        let p3 = FPModule::cyclic(&Ideal::maximal(&r).power(3));
        let p5 = FPModule::cyclic(&Ideal::maximal(&r).power(5));
        assert_eq!(tor_length(0, &p3, &p5), Length::Finite(6));
    }

    #[test]
    fn images_a() {
        let r = ring();
        let k = cyclic(&r, &["x", "y"]);
        let max = Ideal::maximal(&r);
        assert!(induced_image_a(1, &max, 2, &k, &k).is_zero());
        let im0 = induced_image_a(0, &max, 0, &k, &k);
        assert_eq!(im0.image_length, im0.target.length);
        let mx = cyclic(&r, &["x"]);
        for n in 0..4 {
            assert!(!induced_image_a(1, &max, n, &mx, &mx).is_zero());
        }
    }

    #[test]
    fn images_b() {
        let r = ring();
        let max = Ideal::maximal(&r);
        let free = FPModule::free(&r, 1);
        assert_eq!(induced_image_b(0, &max, 0, &free, &free).image_length, Length::Finite(0));
        assert_eq!(induced_image_b(0, &max, 3, &free, &free).image_length, Length::Finite(6));
        let k = cyclic(&r, &["x", "y"]);
        assert_eq!(induced_image_b(1, &max, 4, &k, &free).image_length, Length::Finite(0));
    }

    #[test]
    fn stabilization() {
        let r = ring();
        let max = Ideal::maximal(&r);
        let k = cyclic(&r, &["x", "y"]);
        let s = image_stabilization(1, &max, &k, &k, 4, 4);
        assert!(s.verified);
        assert_eq!(s.final_image_zero, Some(true));
        let mx = cyclic(&r, &["x"]);
        let s = image_stabilization(1, &max, &mx, &mx, 4, 4);
        assert!(s.verified);
        assert_eq!(s.final_image_zero, Some(false));
    }

    #[test]
    fn prop5_examples() {
        let r = ring();
        let max = Ideal::maximal(&r);
        let k = cyclic(&r, &["x", "y"]);
        let rep = check_prop5(1, &max, &k, &k, 3).unwrap();
        assert!(rep.agree && rep.a);
        let mx = cyclic(&r, &["x"]);
        let rep = check_prop5(1, &max, &mx, &mx, 3).unwrap();
        assert!(rep.agree && !rep.a);
        let free = FPModule::free(&r, 1);
        let rep = check_prop5(1, &max, &free, &free, 3).unwrap();
        assert!(rep.agree && rep.a);
    }
}
