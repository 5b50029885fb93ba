//! Exact detection of eventually polynomial integer tables by finite
//! differences in the binomial basis, with hold-out validation.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::length::Length;
use crate::sampler::{SampleTable, Series};

/// Generalized binomial coefficient `C(x, a)`, exact for every integer `x`.
pub fn binomial(x: i128, a: u32) -> i128 {
    let mut r: i128 = 1;
    for t in 0..a as i128 {
        r = r * (x - t) / (t + 1);
    }
    r
}

fn rat(x: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn fmt_rat(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A polynomial in `n` (and `m`) with rational coefficients in the monomial
/// basis, keyed by `(deg_n, deg_m)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RationalPoly {
    pub vars: usize,
    pub coeffs: BTreeMap<(u32, u32), BigRational>,
}

impl RationalPoly {
    fn univariate_binomial(shift: i64, a: u32) -> Vec<BigRational> {
        // C(x - shift, a) = prod_{t<a} (x - shift - t) / (t + 1)
        let mut p = vec![BigRational::one()];
        for t in 0..a as i64 {
            let c = rat(-(shift + t) as i128);
            let mut next = vec![BigRational::zero(); p.len() + 1];
            for (k, pk) in p.iter().enumerate() {
                next[k + 1] += pk;
                next[k] += pk * &c;
            }
            let d = rat((t + 1) as i128);
            p = next.into_iter().map(|x| x / &d).collect();
        }
        p
    }

    fn insert(&mut self, key: (u32, u32), value: BigRational) {
        if value.is_zero() {
            return;
        }
        let e = self.coeffs.entry(key).or_insert_with(BigRational::zero);
        *e += value;
        if e.is_zero() {
            self.coeffs.remove(&key);
        }
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|(a, b)| a + b).max()
    }

    pub fn evaluate(&self, n: i64, m: i64) -> BigRational {
        let mut acc = BigRational::zero();
        for (&(a, b), c) in &self.coeffs {
            acc += c * rat((n as i128).pow(a)) * rat((m as i128).pow(b));
        }
        acc
    }
}

impl std::fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let mut s = String::new();
        for (k, (&(a, b), c)) in self.coeffs.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mut mono = String::new();
            for (name, e) in [("n", a), ("m", b)] {
                if e == 0 {
                    continue;
                }
                if !mono.is_empty() {
                    mono.push('*');
                }
                mono.push_str(name);
                if e > 1 {
                    let _ = write!(mono, "^{e}");
                }
            }
            if mono.is_empty() {
                s.push_str(&fmt_rat(&abs));
            } else if abs.is_one() {
                s.push_str(&mono);
            } else {
                let _ = write!(s, "{}*{mono}", fmt_rat(&abs));
            }
        }
        f.write_str(&s)
    }
}

impl Serialize for RationalPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<MonomialTerm> =
            self.coeffs.iter().map(|(&(a, b), c)| MonomialTerm { n: a, m: b, coeff: fmt_rat(c) }).collect();
        let mut st = s.serialize_struct("RationalPoly", 2)?;
        st.serialize_field("text", &self.to_string())?;
        st.serialize_field("terms", &terms)?;
        st.end()
    }
}

#[derive(Serialize)]
struct MonomialTerm {
    n: u32,
    m: u32,
    coeff: String,
}

#[derive(Serialize)]
struct BinomialTerm {
    a: u32,
    b: u32,
    coeff: i64,
}

/// `Σ c_{a,b} C(n - n0, a) C(m - m0, b)` with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerPolynomial {
    pub vars: usize,
    pub n0: i64,
    pub m0: i64,
    /// Nonzero coefficients keyed by `(a, b)`.
    pub coeffs: BTreeMap<(u32, u32), i64>,
}

impl IntegerPolynomial {
    pub fn new(vars: usize, n0: i64, m0: i64, coeffs: BTreeMap<(u32, u32), i64>) -> Self {
        let coeffs = coeffs.into_iter().filter(|&(_, c)| c != 0).collect();
        IntegerPolynomial { vars, n0, m0, coeffs }
    }

    pub fn evaluate(&self, n: i64, m: i64) -> i128 {
        self.coeffs
            .iter()
            .map(|(&(a, b), &c)| c as i128 * binomial((n - self.n0) as i128, a) * binomial((m - self.m0) as i128, b))
            .sum()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.coeffs.keys().map(|(a, b)| a + b).max()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn to_rational(&self) -> RationalPoly {
        let mut out = RationalPoly { vars: self.vars, coeffs: BTreeMap::new() };
        for (&(a, b), &c) in &self.coeffs {
            let pn = RationalPoly::univariate_binomial(self.n0, a);
            let pm = RationalPoly::univariate_binomial(self.m0, b);
            for (i, x) in pn.iter().enumerate() {
                for (j, y) in pm.iter().enumerate() {
                    out.insert((i as u32, j as u32), x * y * rat(c as i128));
                }
            }
        }
        out
    }

    pub fn binomial_text(&self) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let shifted = |name: &str, x0: i64| match x0.cmp(&0) {
            std::cmp::Ordering::Equal => name.to_string(),
            std::cmp::Ordering::Greater => format!("{name}-{x0}"),
            std::cmp::Ordering::Less => format!("{name}+{}", -x0),
        };
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(&(a, b), &c)| {
                let mut s = format!("{c}*C({},{a})", shifted("n", self.n0));
                if self.vars == 2 {
                    let _ = write!(s, "*C({},{b})", shifted("m", self.m0));
                }
                s
            })
            .collect();
        parts.join(" + ")
    }
}

impl Serialize for IntegerPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let binomial: Vec<BinomialTerm> =
            self.coeffs.iter().map(|(&(a, b), &coeff)| BinomialTerm { a, b, coeff }).collect();
        let mut st = s.serialize_struct("IntegerPolynomial", 5)?;
        if self.vars == 2 {
            st.serialize_field("onset", &[self.n0, self.m0])?;
        } else {
            st.serialize_field("onset", &[self.n0])?;
        }
        st.serialize_field("degree", &self.total_degree())?;
        st.serialize_field("binomial", &binomial)?;
        st.serialize_field("binomial_text", &self.binomial_text())?;
        st.serialize_field("monomial", &self.to_rational())?;
        st.end()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FitVerdict {
    #[serde(rename = "POLYNOMIAL")]
    Polynomial,
    #[serde(rename = "NO_POLYNOMIAL_FOUND")]
    NoPolynomialFound,
    #[serde(rename = "INFINITE_VALUES")]
    InfiniteValues,
}

impl std::fmt::Display for FitVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FitVerdict::Polynomial => "POLYNOMIAL",
            FitVerdict::NoPolynomialFound => "NO_POLYNOMIAL_FOUND",
            FitVerdict::InfiniteValues => "INFINITE_VALUES",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Residual {
    pub n: i64,
    pub m: i64,
    pub observed: u64,
    pub predicted: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OnsetAttempt {
    pub onset: [i64; 2],
    /// `accepted`, `residuals`, `no-holdout`, `window-outside-table` or `infinite`.
    pub outcome: String,
    pub residual_count: usize,
}

/// Two exact fits on either side of a line that disagree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegionEvidence {
    pub line: String,
    pub degree: u32,
    pub start: i64,
    pub above: RationalPoly,
    pub below: RationalPoly,
    pub above_cells: usize,
    pub below_cells: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FitReport {
    pub verdict: FitVerdict,
    pub vars: usize,
    pub max_degree: u32,
    pub polynomial: Option<IntegerPolynomial>,
    pub onset: Option<[i64; 2]>,
    pub fit_cells: usize,
    pub holdout_cells: usize,
    /// Onset with the fewest residuals when no fit was accepted.
    pub best_onset: Option<[i64; 2]>,
    pub residuals: Vec<Residual>,
    pub region_evidence: Option<RegionEvidence>,
    pub attempts: Vec<OnsetAttempt>,
}

impl FitReport {
    pub fn is_polynomial(&self) -> bool {
        self.verdict == FitVerdict::Polynomial
    }

    /// Total degree of the fitted polynomial; `None` if no fit or zero.
    pub fn degree(&self) -> Option<u32> {
        self.polynomial.as_ref().and_then(IntegerPolynomial::total_degree)
    }
}

/// Uniform read access to a table (`vars == 2`) or series (`vars == 1`,
/// `m` ignored and fixed to 0).
trait Data {
    fn vars(&self) -> usize;
    fn value(&self, n: i64, m: i64) -> Option<Length>;
    fn cells(&self) -> Vec<(i64, i64)>;
}

impl Data for SampleTable {
    fn vars(&self) -> usize {
        2
    }
    fn value(&self, n: i64, m: i64) -> Option<Length> {
        self.get(n, m)
    }
    fn cells(&self) -> Vec<(i64, i64)> {
        let r = &self.ranges;
        let mut out = Vec::new();
        for n in r.n_lo..=r.n_hi {
            for m in r.m_lo..=r.m_hi {
                out.push((n as i64, m as i64));
            }
        }
        out
    }
}

impl Data for Series {
    fn vars(&self) -> usize {
        1
    }
    fn value(&self, n: i64, m: i64) -> Option<Length> {
        if m != 0 {
            return None;
        }
        self.get(n)
    }
    fn cells(&self) -> Vec<(i64, i64)> {
        (0..self.values.len()).map(|k| (self.n_lo as i64 + k as i64, 0)).collect()
    }
}

/// `{1..5}²` ordered by `n0 + m0`, then `n0`.
pub fn default_onsets() -> Vec<(i64, i64)> {
    let mut v: Vec<(i64, i64)> = (1..=5).flat_map(|a| (1..=5).map(move |b| (a, b))).collect();
    v.sort_by_key(|&(a, b)| (a + b, a));
    v
}

pub fn default_onsets_univariate() -> Vec<i64> {
    (1..=5).collect()
}

enum Attempt {
    Outside,
    Infinite,
    Done { poly: IntegerPolynomial, residuals: Vec<Residual>, window: usize, holdout: usize },
}

fn try_onset(data: &dyn Data, d: u32, n0: i64, m0: i64) -> Attempt {
    let vars = data.vars();
    let top = d + 1;
    let tri: Vec<(u32, u32)> = if vars == 1 {
        (0..=top).map(|a| (a, 0)).collect()
    } else {
        (0..=top).flat_map(|a| (0..=top - a).map(move |b| (a, b))).collect()
    };
    let mut vals: BTreeMap<(u32, u32), i128> = BTreeMap::new();
    for &(a, b) in &tri {
        match data.value(n0 + a as i64, m0 + b as i64) {
            None => return Attempt::Outside,
            Some(Length::Infinite) => return Attempt::Infinite,
            Some(Length::Finite(v)) => {
                vals.insert((a, b), v as i128);
            }
        }
    }
    let quadrant: Vec<(i64, i64)> = data.cells().into_iter().filter(|&(n, m)| n >= n0 && m >= m0).collect();
    let mut observed = Vec::with_capacity(quadrant.len());
    for &(n, m) in &quadrant {
        match data.value(n, m) {
            Some(Length::Finite(v)) => observed.push(v),
            _ => return Attempt::Infinite,
        }
    }
    // forward differences at the onset
    let mut coeffs = BTreeMap::new();
    for &(a, b) in tri.iter().filter(|(a, b)| a + b <= d) {
        let mut delta: i128 = 0;
        for i in 0..=a {
            for j in 0..=b {
                let sign = if (a - i + b - j) % 2 == 0 { 1 } else { -1 };
                delta += sign * binomial(a as i128, i) * binomial(b as i128, j) * vals[&(i, j)];
            }
        }
        coeffs.insert((a, b), delta as i64);
    }
    let poly = IntegerPolynomial::new(vars, n0, if vars == 2 { m0 } else { 0 }, coeffs);
    let residuals: Vec<Residual> = quadrant
        .iter()
        .zip(&observed)
        .filter_map(|(&(n, m), &v)| {
            let p = poly.evaluate(n, m);
            (p != v as i128).then_some(Residual { n, m, observed: v, predicted: p as i64 })
        })
        .collect();
    let holdout = quadrant.len().saturating_sub(tri.len());
    Attempt::Done { poly, residuals, window: tri.len(), holdout }
}

fn fit(data: &dyn Data, max_degree: u32, onsets: &[(i64, i64)]) -> FitReport {
    let mut attempts = Vec::new();
    let mut best: Option<([i64; 2], Vec<Residual>)> = None;
    let mut any_finite = false;
    let mut any_infinite = false;
    for &(n0, m0) in onsets {
        let onset = [n0, m0];
        match try_onset(data, max_degree, n0, m0) {
            Attempt::Outside => {
                attempts.push(OnsetAttempt { onset, outcome: "window-outside-table".into(), residual_count: 0 })
            }
            Attempt::Infinite => {
                any_infinite = true;
                attempts.push(OnsetAttempt { onset, outcome: "infinite".into(), residual_count: 0 });
            }
            Attempt::Done { poly, residuals, window, holdout } => {
                any_finite = true;
                if residuals.is_empty() && holdout > 0 {
                    attempts.push(OnsetAttempt { onset, outcome: "accepted".into(), residual_count: 0 });
                    return FitReport {
                        verdict: FitVerdict::Polynomial,
                        vars: data.vars(),
                        max_degree,
                        polynomial: Some(poly),
                        onset: Some(onset),
                        fit_cells: window,
                        holdout_cells: holdout,
                        best_onset: Some(onset),
                        residuals: Vec::new(),
                        region_evidence: None,
                        attempts,
                    };
                }
                let outcome = if residuals.is_empty() { "no-holdout" } else { "residuals" };
                attempts.push(OnsetAttempt { onset, outcome: outcome.into(), residual_count: residuals.len() });
                if !residuals.is_empty() && best.as_ref().is_none_or(|(_, r)| residuals.len() < r.len()) {
                    best = Some((onset, residuals));
                }
            }
        }
    }
    let verdict = if !any_finite && any_infinite { FitVerdict::InfiniteValues } else { FitVerdict::NoPolynomialFound };
    let region_evidence = if verdict == FitVerdict::NoPolynomialFound && data.vars() == 2 {
        region_evidence(data, max_degree)
    } else {
        None
    };
    let (best_onset, residuals) = match best {
        Some((o, r)) => (Some(o), r),
        None => (None, Vec::new()),
    };
    FitReport {
        verdict,
        vars: data.vars(),
        max_degree,
        polynomial: None,
        onset: None,
        fit_cells: 0,
        holdout_cells: 0,
        best_onset,
        residuals,
        region_evidence,
        attempts,
    }
}

/// Exact interpolation of all `cells` by a polynomial of total degree at
/// most `d`; `None` unless the solution exists and is unique.
fn exact_fit(data: &dyn Data, cells: &[(i64, i64)], d: u32) -> Option<RationalPoly> {
    let basis: Vec<(u32, u32)> = (0..=d).flat_map(|t| (0..=t).map(move |b| (t - b, b))).collect();
    if cells.len() < basis.len() {
        return None;
    }
    let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(cells.len());
    for &(n, m) in cells {
        let Some(Length::Finite(v)) = data.value(n, m) else { return None };
        let mut row: Vec<BigRational> =
            basis.iter().map(|&(a, b)| rat((n as i128).pow(a) * (m as i128).pow(b))).collect();
        row.push(rat(v as i128));
        rows.push(row);
    }
    let ncols = basis.len();
    let mut pivot_row = 0;
    for col in 0..ncols {
        let p = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(pivot_row, p);
        let inv = rows[pivot_row][col].recip();
        for x in rows[pivot_row].iter_mut() {
            *x *= &inv;
        }
        let prow = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != pivot_row && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, y) in row.iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
        pivot_row += 1;
    }
    if rows[pivot_row..].iter().any(|r| !r[ncols].is_zero()) {
        return None;
    }
    let mut out = RationalPoly { vars: 2, coeffs: BTreeMap::new() };
    for (k, &key) in basis.iter().enumerate() {
        out.insert(key, rows[k][ncols].clone());
    }
    Some(out)
}

/// Looks for lines `a·n = b·m` with exact but different fits of degree
/// `d..=d+2` on each side.
fn region_evidence(data: &dyn Data, max_degree: u32) -> Option<RegionEvidence> {
    let cells = data.cells();
    let lo = cells.iter().map(|c| c.0.min(c.1)).min()?;
    let lines = [(1, 1, "n = m"), (1, 2, "n = 2m"), (2, 1, "2n = m")];
    for (d, (a, b, line)) in (max_degree..=max_degree + 2).flat_map(|d| lines.map(|l| (d, l))) {
        for start in lo.max(1)..=lo.max(1) + 2 {
            let region: Vec<(i64, i64)> = cells.iter().copied().filter(|&(n, m)| n >= start && m >= start).collect();
            let above: Vec<(i64, i64)> = region.iter().copied().filter(|&(n, m)| a * n - b * m >= 1).collect();
            let below: Vec<(i64, i64)> = region.iter().copied().filter(|&(n, m)| a * n - b * m <= -1).collect();
            let (Some(pa), Some(pb)) = (exact_fit(data, &above, d), exact_fit(data, &below, d)) else { continue };
            if pa != pb {
                return Some(RegionEvidence {
                    line: line.to_string(),
                    degree: d,
                    start,
                    above: pa,
                    below: pb,
                    above_cells: above.len(),
                    below_cells: below.len(),
                });
            }
        }
    }
    None
}

/// Fits `table` by a polynomial of total degree at most `max_degree`,
/// trying `onsets` in order; the first onset whose polynomial reproduces
/// every cell of its quadrant, including a non-empty hold-out, wins.
pub fn fit_bivariate(table: &SampleTable, max_degree: u32, onsets: &[(i64, i64)]) -> FitReport {
    fit(table, max_degree, onsets)
}

pub fn fit_univariate(series: &Series, max_degree: u32, onsets: &[i64]) -> FitReport {
    let onsets: Vec<(i64, i64)> = onsets.iter().map(|&n| (n, 0)).collect();
    fit(series, max_degree, &onsets)
}
