//! Predictions from the algebraic criteria, cross-checked against sampled
//! and fitted tables.

use serde::Serialize;

use crate::error::Result;
use crate::fit::{default_onsets, default_onsets_univariate, fit_bivariate, fit_univariate, FitReport, FitVerdict};
use crate::homology::{tor, tor_length};
use crate::ideal::Ideal;
use crate::length::Length;
use crate::module::FPModule;
use crate::poly::Ring;
use crate::sampler::{sample_diagonal, sample_grid, sample_quotient_scaled, Ranges, SampleTable, Series};

/// The data one check runs on: `Tor_i` of `M/I^n M` against `N/J^m N`.
#[derive(Clone, Debug)]
pub struct Fixture {
    pub label: String,
    pub i: usize,
    pub m: FPModule,
    pub n: FPModule,
    pub ii: Ideal,
    pub jj: Ideal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixtureInfo {
    pub label: String,
    pub characteristic: u32,
    pub variables: Vec<String>,
    pub i: usize,
    #[serde(rename = "M")]
    pub m: String,
    #[serde(rename = "N")]
    pub n: String,
    #[serde(rename = "I")]
    pub ii: String,
    #[serde(rename = "J")]
    pub jj: String,
}

impl Fixture {
    pub fn new(label: impl Into<String>, i: usize, m: FPModule, n: FPModule, ii: Ideal, jj: Ideal) -> Fixture {
        Fixture { label: label.into(), i, m, n, ii, jj }
    }

    pub fn ring(&self) -> &Ring {
        self.m.ring()
    }

    pub fn info(&self) -> FixtureInfo {
        FixtureInfo {
            label: self.label.clone(),
            characteristic: self.ring().field().characteristic(),
            variables: self.ring().var_names().to_vec(),
            i: self.i,
            m: self.m.describe(),
            n: self.n.describe(),
            ii: self.ii.to_string(),
            jj: self.jj.to_string(),
        }
    }

    /// `ℓ_M(I)` and `ℓ_N(J)`, each over the ring modulo the module's
    /// annihilator.
    pub fn spreads(&self) -> Result<(usize, usize)> {
        Ok((self.ii.analytic_spread(&self.m.annihilator())?, self.jj.analytic_spread(&self.n.annihilator())?))
    }

    /// Degree cap used when none is given. When both primary hypotheses hold
    /// it is `max(ℓ_M(I) - 1, 0) + max(ℓ_N(J) - 1, 0)`, which is
    /// `ℓ_M(I) + ℓ_N(J) - 2` unless a spread is zero; otherwise
    /// `ℓ_M(I) + ℓ_N(J)`.
    pub fn default_max_degree(&self) -> Result<u32> {
        let (a, b) = self.spreads()?;
        Ok(if corollary8_hypotheses(self).iter().all(|h| h.holds) {
            (a.saturating_sub(1) + b.saturating_sub(1)) as u32
        } else {
            (a + b) as u32
        })
    }
}

/// Sampling and fitting limits shared by the checks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Budgets {
    pub grid: Ranges,
    pub diagonal: (u32, u32),
    pub max_degree: Option<u32>,
    pub onsets: Vec<(i64, i64)>,
    pub diagonal_onsets: Vec<i64>,
    #[serde(skip)]
    pub parallel: bool,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            grid: Ranges::square(1, 8),
            diagonal: (1, 10),
            max_degree: None,
            onsets: default_onsets(),
            diagonal_onsets: default_onsets_univariate(),
            parallel: false,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Conclusion {
    #[serde(rename = "CONFIRMED")]
    Confirmed,
    #[serde(rename = "REFUTED")]
    Refuted,
    #[serde(rename = "INCONCLUSIVE")]
    Inconclusive,
}

impl std::fmt::Display for Conclusion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Conclusion::Confirmed => "CONFIRMED",
            Conclusion::Refuted => "REFUTED",
            Conclusion::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// A named boolean with the data that decided it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub holds: bool,
    pub detail: String,
    /// Items responsible for a failure, such as generators outside a radical.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub failures: Vec<String>,
}

fn check(name: impl Into<String>, holds: bool, detail: impl Into<String>) -> Check {
    Check { name: name.into(), holds, detail: detail.into(), failures: Vec::new() }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    pub theorem: String,
    pub fixture: FixtureInfo,
    pub budgets: Budgets,
    pub max_degree: Option<u32>,
    pub hypotheses: Vec<Check>,
    pub criteria: Vec<Check>,
    /// `Some(true)` when eventual polynomiality is predicted.
    pub prediction: Option<bool>,
    pub empirical: Option<FitReport>,
    pub table: Option<SampleTable>,
    pub series: Option<Series>,
    /// Fit of a second table checked alongside the main one.
    pub alternate: Option<FitReport>,
    pub alternate_table: Option<SampleTable>,
    /// `H(n,m)` minus the predicted value, by cell.
    pub identity_residuals: Option<Vec<Vec<i64>>>,
    pub onset: Option<[i64; 2]>,
    pub conclusion: Conclusion,
    pub notes: Vec<String>,
}

impl TheoremReport {
    fn new(theorem: &str, fx: &Fixture, budgets: &Budgets) -> TheoremReport {
        TheoremReport {
            theorem: theorem.into(),
            fixture: fx.info(),
            budgets: budgets.clone(),
            max_degree: None,
            hypotheses: Vec::new(),
            criteria: Vec::new(),
            prediction: None,
            empirical: None,
            table: None,
            series: None,
            alternate: None,
            alternate_table: None,
            identity_residuals: None,
            onset: None,
            conclusion: Conclusion::Inconclusive,
            notes: Vec::new(),
        }
    }

    fn hypotheses_hold(&mut self) -> bool {
        match self.hypotheses.iter().find(|h| !h.holds) {
            Some(h) => {
                self.notes.push(format!("hypothesis failed: {}", h.name));
                false
            }
            None => true,
        }
    }

    /// Compares the prediction with the fitter verdict.
    fn conclude(&mut self) {
        let observed = match self.empirical.as_ref().map(|f| f.verdict) {
            Some(FitVerdict::Polynomial) => Some(true),
            Some(FitVerdict::NoPolynomialFound) => Some(false),
            _ => None,
        };
        self.conclusion = match (self.prediction, observed) {
            (Some(p), Some(o)) if p == o => Conclusion::Confirmed,
            (Some(_), Some(_)) => Conclusion::Refuted,
            _ => Conclusion::Inconclusive,
        };
        if observed.is_none() && self.empirical.is_some() {
            self.notes.push("the sampled table contains infinite values".into());
        }
    }

    pub fn is_refuted(&self) -> bool {
        self.conclusion == Conclusion::Refuted
    }
}

fn ann_sum(fx: &Fixture) -> Ideal {
    fx.m.annihilator().sum(&fx.n.annihilator())
}

fn primary_check(name: &str, ideal: &Ideal) -> Check {
    check(name, ideal.is_primary_to_maximal(), ideal.to_string())
}

/// `I + ann M + ann N` and `J + ann M + ann N` are primary to the maximal
/// ideal.
pub fn corollary8_hypotheses(fx: &Fixture) -> Vec<Check> {
    let ann = ann_sum(fx);
    vec![
        primary_check("I + ann M + ann N is primary to the maximal ideal", &fx.ii.sum(&ann)),
        primary_check("J + ann M + ann N is primary to the maximal ideal", &fx.jj.sum(&ann)),
    ]
}

/// One check per `j ∈ {i-1, i}`: every generator of `I` lies in
/// `rad ann Tor_j(M, N)`.
pub fn radical_criteria(fx: &Fixture) -> Vec<Check> {
    let ring = fx.ring();
    let mut out = Vec::new();
    for j in [fx.i as i64 - 1, fx.i as i64] {
        let name = format!("I in rad ann Tor_{j}(M, N)");
        if j < 0 {
            out.push(check(name, true, "Tor of negative index is zero"));
            continue;
        }
        let ann = tor(j, &fx.m, &fx.n).value.annihilator();
        let mut parts = Vec::new();
        let mut failures = Vec::new();
        for g in fx.ii.generators() {
            let ok = ann.radical_contains(g);
            parts.push(format!("{}: {}", ring.fmt_poly(g), if ok { "yes" } else { "no" }));
            if !ok {
                failures.push(ring.fmt_poly(g));
            }
        }
        let mut c = check(name, failures.is_empty(), format!("ann = {ann}; {}", parts.join(", ")));
        c.failures = failures;
        out.push(c);
    }
    out
}

/// Finiteness of `λ(Tor_j(M, N))` for `j ∈ {i-1, i}`.
pub fn finite_length_criteria(fx: &Fixture) -> Vec<Check> {
    [fx.i as i64 - 1, fx.i as i64]
        .into_iter()
        .map(|j| {
            let len = tor_length(j, &fx.m, &fx.n);
            check(format!("Tor_{j}(M, N) has finite length"), len.is_finite(), format!("length {len}"))
        })
        .collect()
}

fn grid_fit(fx: &Fixture, b: &Budgets, report: &mut TheoremReport) -> Result<()> {
    let d = match b.max_degree {
        Some(d) => d,
        None => fx.default_max_degree()?,
    };
    let table = sample_grid(fx.i, &fx.m, &fx.n, &fx.ii, &fx.jj, b.grid, b.parallel);
    report.empirical = Some(fit_bivariate(&table, d, &b.onsets));
    report.table = Some(table);
    report.max_degree = Some(d);
    Ok(())
}

/// Polynomiality of `H` iff `I ⊆ rad ann Tor_j(M, N)` for `j ∈ {i-1, i}`,
/// under `ann M + ann N + J` primary.
pub fn check_theorem6(fx: &Fixture, b: &Budgets) -> Result<TheoremReport> {
    let mut rep = TheoremReport::new("theorem6", fx, b);
    rep.hypotheses.push(primary_check("ann M + ann N + J is primary to the maximal ideal", &ann_sum(fx).sum(&fx.jj)));
    if !rep.hypotheses_hold() {
        return Ok(rep);
    }
    rep.criteria = radical_criteria(fx);
    rep.prediction = Some(rep.criteria.iter().all(|c| c.holds));
    grid_fit(fx, b, &mut rep)?;
    rep.conclude();
    Ok(rep)
}

/// The diagonal `H(n, n)` with `J = I` is eventually polynomial under
/// `I + ann M + ann N` primary.
pub fn check_corollary7(fx: &Fixture, b: &Budgets) -> Result<TheoremReport> {
    let mut rep = TheoremReport::new("corollary7", fx, b);
    rep.hypotheses.push(corollary8_hypotheses(fx).swap_remove(0));
    if !rep.hypotheses_hold() {
        return Ok(rep);
    }
    rep.prediction = Some(true);
    let d = match b.max_degree {
        Some(d) => d,
        None => (fx.ii.analytic_spread(&fx.m.annihilator())? + fx.ii.analytic_spread(&fx.n.annihilator())?) as u32,
    };
    let series = sample_diagonal(fx.i, &fx.m, &fx.n, &fx.ii, b.diagonal, b.parallel);
    rep.empirical = Some(fit_univariate(&series, d, &b.diagonal_onsets));
    rep.series = Some(series);
    rep.max_degree = Some(d);
    rep.conclude();
    Ok(rep)
}

/// Polynomiality of `H` iff `Tor_i(M, N)` and `Tor_{i-1}(M, N)` have finite
/// length, under both primary hypotheses; also compares with the radical
/// criterion.
pub fn check_corollary8(fx: &Fixture, b: &Budgets) -> Result<TheoremReport> {
    let mut rep = TheoremReport::new("corollary8", fx, b);
    rep.hypotheses = corollary8_hypotheses(fx);
    if !rep.hypotheses_hold() {
        return Ok(rep);
    }
    let finite = finite_length_criteria(fx);
    let radical = radical_criteria(fx);
    let by_length = finite.iter().all(|c| c.holds);
    let by_radical = radical.iter().all(|c| c.holds);
    rep.criteria = finite;
    rep.criteria.extend(radical);
    rep.criteria.push(check(
        "finite-length and radical criteria agree",
        by_length == by_radical,
        format!("finite length: {by_length}, radical containment: {by_radical}"),
    ));
    rep.prediction = Some(by_length);
    grid_fit(fx, b, &mut rep)?;
    rep.conclude();
    if by_length != by_radical {
        rep.notes.push("the two equivalent criteria disagree".into());
        rep.conclusion = Conclusion::Refuted;
    }
    Ok(rep)
}

/// The four-term identity for `H` when `M ⊗ N` has finite length, checked
/// cell by cell; the onset is the smallest square corner past which every
/// residual vanishes.
pub fn check_theorem9(fx: &Fixture, b: &Budgets) -> Result<TheoremReport> {
    let mut rep = TheoremReport::new("theorem9", fx, b);
    let tensor = tor_length(0, &fx.m, &fx.n);
    rep.hypotheses.push(check("M (x) N has finite length", tensor.is_finite(), format!("length {tensor}")));
    if !rep.hypotheses_hold() {
        return Ok(rep);
    }
    rep.prediction = Some(true);
    let i = fx.i as i64;
    let g = b.grid;
    let base = tor_length(i, &fx.m, &fx.n);
    let scaled_m: Vec<FPModule> = (g.n_lo..=g.n_hi).map(|n| fx.m.scale(&fx.ii, n).presentation()).collect();
    let scaled_n: Vec<FPModule> = (g.m_lo..=g.m_hi).map(|m| fx.n.scale(&fx.jj, m).presentation()).collect();
    let left: Vec<Length> = scaled_m.iter().map(|sm| tor_length(i - 1, sm, &fx.n)).collect();
    let right: Vec<Length> = scaled_n.iter().map(|sn| tor_length(i - 1, &fx.m, sn)).collect();
    let both = SampleTable::tabulate(fx.i, g, b.parallel, |n, m| {
        tor_length(i - 2, &scaled_m[(n - g.n_lo) as usize], &scaled_n[(m - g.m_lo) as usize])
    });
    let table = sample_grid(fx.i, &fx.m, &fx.n, &fx.ii, &fx.jj, g, b.parallel);
    let mut residuals = Vec::new();
    let mut finite = true;
    for (a, row) in table.values.iter().enumerate() {
        let mut out = Vec::new();
        for (c, &h) in row.iter().enumerate() {
            let rhs = base + left[a] + right[c] + both.values[a][c];
            match (h.finite(), rhs.finite()) {
                (Some(h), Some(r)) => out.push(h as i64 - r as i64),
                _ => {
                    finite = false;
                    out.push(0);
                }
            }
        }
        residuals.push(out);
    }
    rep.criteria.push(check(format!("Tor_{i}(M, N) has finite length"), base.is_finite(), format!("length {base}")));
    if !finite {
        rep.notes.push("a term of the identity has infinite length".into());
        rep.identity_residuals = Some(residuals);
        rep.table = Some(table);
        return Ok(rep);
    }
    let lo = g.n_lo.max(g.m_lo) as i64;
    let hi = (g.n_hi.min(g.m_hi) as i64 - 2).max(lo);
    let zero_past = |k: i64| {
        residuals.iter().enumerate().all(|(a, row)| {
            row.iter()
                .enumerate()
                .all(|(c, &r)| r == 0 || (a as i64 + (g.n_lo as i64)) < k || (c as i64 + g.m_lo as i64) < k)
        })
    };
    rep.onset = (lo..=hi).find(|&k| zero_past(k)).map(|k| [k, k]);
    let d = match b.max_degree {
        Some(d) => d,
        None => fx.default_max_degree()?,
    };
    rep.empirical = Some(fit_bivariate(&table, d, &b.onsets));
    rep.max_degree = Some(d);
    rep.identity_residuals = Some(residuals);
    rep.table = Some(table);
    match rep.onset {
        Some(k) => {
            rep.criteria.push(check(
                "four-term identity holds past the onset",
                true,
                format!("onset ({}, {})", k[0], k[1]),
            ));
            rep.conclude();
        }
        None => {
            rep.criteria.push(check(
                "four-term identity holds past the onset",
                false,
                format!("no onset k in {lo}..={hi} with zero residuals"),
            ));
            rep.notes.push("no stabilization onset inside the grid; raise the grid to decide".into());
            rep.conclusion = Conclusion::Inconclusive;
        }
    }
    Ok(rep)
}

/// `Some(true)` when `fit` is polynomial of total degree at most `cap`
/// (the zero polynomial always qualifies), `None` without a polynomial fit.
pub fn degree_within(fit: &FitReport, cap: i64) -> Option<bool> {
    if !fit.is_polynomial() {
        return None;
    }
    Some(fit.degree().is_none_or(|d| d as i64 <= cap))
}

fn spread_checks(rep: &mut TheoremReport, lm: usize, ln: usize) -> i64 {
    let cap = lm as i64 + ln as i64 - 2;
    rep.criteria.push(check("analytic spread of I on M", true, format!("l_M(I) = {lm}")));
    rep.criteria.push(check("analytic spread of J on N", true, format!("l_N(J) = {ln}")));
    cap
}

fn bound_conclusion(rep: &mut TheoremReport, cap: i64) {
    let fit = rep.empirical.as_ref().expect("fit present");
    let degree = fit.degree().map_or("-inf".to_string(), |d| d.to_string());
    match degree_within(fit, cap) {
        Some(ok) => {
            rep.criteria.push(check("degree bound", ok, format!("degree {degree} <= {cap}")));
            rep.conclusion = if ok { Conclusion::Confirmed } else { Conclusion::Refuted };
        }
        None => {
            rep.notes.push(format!("no polynomial fit ({}), so the bound makes no claim", fit.verdict));
            rep.conclusion = Conclusion::Inconclusive;
        }
    }
}

/// Degree bound `ℓ_M(I) + ℓ_N(J) - 2` for an existing fit.
pub fn check_prop10_fit(fit: &FitReport, fx: &Fixture, b: &Budgets) -> Result<TheoremReport> {
    let mut rep = TheoremReport::new("prop10", fx, b);
    rep.hypotheses = corollary8_hypotheses(fx);
    if !rep.hypotheses_hold() {
        return Ok(rep);
    }
    let (lm, ln) = fx.spreads()?;
    let cap = spread_checks(&mut rep, lm, ln);
    rep.prediction = Some(true);
    rep.max_degree = Some(fit.max_degree);
    rep.empirical = Some(fit.clone());
    rep.notes.push("l_M(I) is interpreted as the analytic spread of the image of I in R/ann M".into());
    bound_conclusion(&mut rep, cap);
    Ok(rep)
}

/// Degree bound `ℓ_M(I) + ℓ_N(J) - 2` on the fitted `H(n, m)`, which
/// decides the conclusion. `λ(Tor_i(M/I^n M, J^m N))` is fitted as well and a
/// violation there is reported as a discrepancy note.
pub fn check_prop10(fx: &Fixture, b: &Budgets) -> Result<TheoremReport> {
    let mut rep = TheoremReport::new("prop10", fx, b);
    rep.hypotheses = corollary8_hypotheses(fx);
    if !rep.hypotheses_hold() {
        return Ok(rep);
    }
    let (lm, ln) = fx.spreads()?;
    let cap = spread_checks(&mut rep, lm, ln);
    let finite = finite_length_criteria(fx);
    rep.prediction = Some(finite.iter().all(|c| c.holds));
    rep.criteria.extend(finite);
    let d = b.max_degree.unwrap_or((lm + ln) as u32);
    rep.max_degree = Some(d);
    let plain = sample_grid(fx.i, &fx.m, &fx.n, &fx.ii, &fx.jj, b.grid, b.parallel);
    rep.empirical = Some(fit_bivariate(&plain, d, &b.onsets));
    rep.table = Some(plain);
    let scaled = sample_quotient_scaled(fx.i, &fx.m, &fx.n, &fx.ii, &fx.jj, b.grid, b.parallel);
    let scaled_fit = fit_bivariate(&scaled, d, &b.onsets);
    if let Some(ok) = degree_within(&scaled_fit, cap) {
        let degree = scaled_fit.degree().map_or("-inf".to_string(), |d| d.to_string());
        rep.criteria.push(check(
            "degree bound for length Tor_i(M/I^n M, J^m N)",
            ok,
            format!("degree {degree} <= {cap}"),
        ));
        if !ok {
            rep.notes
                .push(format!("discrepancy: length Tor_i(M/I^n M, J^m N) has degree {degree}, above the cap {cap}"));
        }
    }
    rep.alternate = Some(scaled_fit);
    rep.alternate_table = Some(scaled);
    rep.notes.push("l_M(I) is interpreted as the analytic spread of the image of I in R/ann M".into());
    bound_conclusion(&mut rep, cap);
    Ok(rep)
}

/// The two families of non-polynomial examples over `k[x, y]`: the
/// regular-sequence family `M = N = R/(x)` with `I = J = (x, y)` for
/// `i ∈ {1, 2}`, and the graded shadow of the non-isolated-singularity
/// family (annihilator the non-maximal prime `(x)`) for `i ∈ {0, 1, 2}`.
pub fn remark_fixtures(ring: &Ring, b: &Budgets) -> Result<Vec<TheoremReport>> {
    let x = ring.var(0);
    let q = Ideal::new(ring, vec![x])?;
    let module = FPModule::cyclic(&q);
    let max = Ideal::maximal(ring);
    let mut out = Vec::new();
    for i in [1, 2] {
        let fx = Fixture::new(
            format!("regular-sequence family, i={i}"),
            i,
            module.clone(),
            module.clone(),
            max.clone(),
            max.clone(),
        );
        out.push(check_theorem6(&fx, b)?);
    }
    for i in [0, 1, 2] {
        let fx = Fixture::new(
            format!("non-maximal prime family, i={i}"),
            i,
            module.clone(),
            module.clone(),
            max.clone(),
            max.clone(),
        );
        let mut rep = check_corollary8(&fx, b)?;
        rep.notes.push(
            "localization at the non-maximal prime is not checked; only infinite Tor length and non-polynomiality are"
                .into(),
        );
        out.push(rep);
    }
    Ok(out)
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

    fn fixture(r: &Ring, i: usize, m: FPModule, n: FPModule) -> Fixture {
        let max = Ideal::maximal(r);
        Fixture::new("test", i, m, n, max.clone(), max)
    }

    #[test]
    fn theorem6_on_basic_fixtures() {
        let r = ring();
        let b = Budgets::default();
        let rep = check_theorem6(&fixture(&r, 1, cyclic(&r, &["x"]), cyclic(&r, &["x"])), &b).unwrap();
        assert_eq!(rep.prediction, Some(false));
        assert_eq!(rep.conclusion, Conclusion::Confirmed);
        assert!(rep.empirical.as_ref().unwrap().region_evidence.is_some());
        let rep = check_theorem6(&fixture(&r, 0, cyclic(&r, &["x"]), cyclic(&r, &["y"])), &b).unwrap();
        assert_eq!(rep.prediction, Some(true));
        assert_eq!(rep.conclusion, Conclusion::Confirmed);
        let rep = check_theorem6(&fixture(&r, 1, FPModule::free(&r, 1), FPModule::free(&r, 1)), &b).unwrap();
        assert_eq!(rep.conclusion, Conclusion::Confirmed);
    }

    #[test]
    fn corollary7_diagonal_of_min_table() {
        let r = ring();
        let b = Budgets::default();
        let rep = check_corollary7(&fixture(&r, 0, FPModule::free(&r, 1), FPModule::free(&r, 1)), &b).unwrap();
        assert_eq!(rep.conclusion, Conclusion::Confirmed);
        let poly = rep.empirical.unwrap().polynomial.unwrap();
        assert_eq!(poly.to_rational().to_string(), "1/2*n^2 + 1/2*n");
    }

    #[test]
    fn theorem9_identity() {
        let r = ring();
        let b = Budgets { grid: Ranges::square(1, 6), ..Budgets::default() };
        let k = cyclic(&r, &["x", "y"]);
        let rep = check_theorem9(&fixture(&r, 1, k.clone(), k), &b).unwrap();
        assert_eq!(rep.conclusion, Conclusion::Confirmed);
        assert!(rep.identity_residuals.unwrap().iter().flatten().all(|&x| x == 0));
    }

    #[test]
    fn prop10_bounds() {
        let r = ring();
        let b = Budgets::default();
        let rep = check_prop10(&fixture(&r, 0, cyclic(&r, &["x"]), cyclic(&r, &["y"])), &b).unwrap();
        assert_eq!(rep.conclusion, Conclusion::Confirmed);
        let a = cyclic(&r, &["x"]);
        let rep = check_prop10(&fixture(&r, 0, a.clone(), a), &b).unwrap();
        assert_eq!(rep.conclusion, Conclusion::Inconclusive);
        assert!(rep.notes.iter().any(|n| n.starts_with("discrepancy")));
        // l = 0 on k: H is the nonzero constant 2, above the cap -2
        let k = cyclic(&r, &["x", "y"]);
        let rep = check_prop10(&fixture(&r, 1, k.clone(), k), &b).unwrap();
        assert_eq!(rep.conclusion, Conclusion::Refuted);
        let x = Ideal::parse(&r, &["x"]).unwrap();
        let fx = Fixture::new("guard", 0, FPModule::free(&r, 1), FPModule::free(&r, 1), x.clone(), x);
        assert_eq!(check_prop10(&fx, &b).unwrap().conclusion, Conclusion::Inconclusive);
    }
}
