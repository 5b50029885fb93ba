//! Acceptance suite: one test per criterion, each printing a single
//! `criterion NN PASS|FAIL` line with the measured detail.

use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;

use rand::rngs::StdRng;
use rand::{Rng as _, SeedableRng};
use serde_json::Value;
use tempfile::TempDir;
use torhilbert::{run_session, Overrides, RunOptions, Status, TaskKind};
use torhilbert_tests::{corpus, fixture_of, fixture_tasks, hypotheses_hold, reports, session_paths, stem};
use torhilbert_core::fit::{default_onsets, fit_bivariate, IntegerPolynomial};
use torhilbert_core::harness::{corollary8_hypotheses, finite_length_criteria, radical_criteria};
use torhilbert_core::homology::{free_resolution, image_stabilization};
use torhilbert_core::module::syzygies;
use torhilbert_core::sampler::{Ranges, SampleTable};
use torhilbert_core::{FPModule, Ideal, Length, Ring};

/// Writes past the test harness's output capture so passing criteria print
/// their line too.
fn report(n: u32, title: &str, pass: bool, detail: &str) {
    let line = format!("criterion {n:02} {} {title}: {detail}\n", if pass { "PASS" } else { "FAIL" });
    let _ = std::io::stdout().lock().write_all(line.as_bytes());
    assert!(pass, "criterion {n} failed: {title}: {detail}");
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, j| acc * (n - j) / (j + 1))
}

fn grid_side(r: &Value) -> (u64, u64) {
    let g = &r["budgets"]["grid"];
    let n = g["n_hi"].as_u64().unwrap() - g["n_lo"].as_u64().unwrap() + 1;
    let m = g["m_hi"].as_u64().unwrap() - g["m_lo"].as_u64().unwrap() + 1;
    (n, m)
}

#[test]
fn criterion_01_length_oracle() {
    let r = Ring::standard(&["x", "y"]);
    let p = Ideal::maximal(&r);
    let mut bad = Vec::new();
    for n in 1..=10u64 {
        let got = FPModule::cyclic(&p.power(n as u32)).length();
        if got != Length::Finite(n * (n + 1) / 2) {
            bad.push(format!("n={n}: {got}"));
        }
    }
    let q = Ideal::parse(&r, &["x^2", "x*y", "y^3"]).unwrap();
    let staircase = FPModule::cyclic(&q).length();
    if staircase != Length::Finite(4) {
        bad.push(format!("(x^2, xy, y^3): {staircase}"));
    }
    let detail = if bad.is_empty() { "11 exact lengths match".to_string() } else { bad.join("; ") };
    report(1, "length oracle", bad.is_empty(), &detail);
}

#[test]
fn criterion_02_koszul_tor() {
    let mut bad = Vec::new();
    let mut checked = 0;
    for (name, r) in [("koszul", 2u64), ("koszul3", 3u64)] {
        for rep in reports(name) {
            for row in rep["lengths"].as_array().unwrap() {
                let i = row["i"].as_u64().unwrap();
                checked += 1;
                if row["forward"].as_u64() != Some(binomial(r, i)) {
                    bad.push(format!("r={r} i={i}: {}", row["forward"]));
                }
            }
        }
    }
    let pass = bad.is_empty() && checked == 9;
    let detail = if pass {
        format!("{checked} lengths equal C(r, i)")
    } else {
        format!("{checked} checked; {}", bad.join("; "))
    };
    report(2, "Koszul Tor", pass, &detail);
}

#[test]
fn criterion_03_tor_symmetry() {
    let mut pairs = 0;
    let mut infinite = 0;
    let mut bad = Vec::new();
    for rep in reports("tor_symmetry") {
        pairs += 1;
        let rows = rep["lengths"].as_array().unwrap();
        if rows.len() != 4 {
            bad.push(format!("{} vs {}: {} degrees", rep["M"], rep["N"], rows.len()));
        }
        for row in rows {
            infinite += (row["forward"] == "INF") as usize;
            if row["forward"] != row["backward"] {
                bad.push(format!("{} vs {} at i={}", rep["M"], rep["N"], row["i"]));
            }
        }
    }
    let pass = bad.is_empty() && pairs >= 10 && infinite > 0;
    report(
        3,
        "Tor symmetry",
        pass,
        &format!("{pairs} pairs, i <= 3, {infinite} infinite entries, {} mismatches {bad:?}", bad.len()),
    );
}

#[test]
fn criterion_04_prop5_agreement() {
    let reps = reports("prop5");
    let bad: Vec<String> = reps
        .iter()
        .filter(|r| r["prop5"]["agree"] != Value::Bool(true) || r["prop5"]["budget"] != 8)
        .map(|r| r["fixture"]["label"].to_string())
        .collect();
    let pass = bad.is_empty() && !reps.is_empty();
    report(4, "five conditions agree", pass, &format!("{} fixtures at budget 8, disagreements {bad:?}", reps.len()));
}

#[test]
fn criterion_05_image_stabilization() {
    let mut seen = BTreeSet::new();
    let mut jobs = Vec::new();
    for (session, task, _) in fixture_tasks() {
        if task.kind == TaskKind::Tor {
            continue;
        }
        let key = (
            session.clone(),
            task.i,
            task.m.as_ref().unwrap().name.clone(),
            task.n.as_ref().unwrap().name.clone(),
            task.ii.as_ref().unwrap().name.clone(),
        );
        if seen.insert(key.clone()) {
            jobs.push((key, task));
        }
    }
    let results: Vec<(String, Option<u32>, bool)> = std::thread::scope(|s| {
        let handles: Vec<_> = jobs
            .iter()
            .map(|(key, task)| {
                s.spawn(move || {
                    let st = image_stabilization(
                        task.i,
                        &task.ii.as_ref().unwrap().value,
                        &task.m.as_ref().unwrap().value,
                        &task.n.as_ref().unwrap().value,
                        4,
                        4,
                    );
                    (format!("{}: i={} M={} N={} I={}", key.0, key.1, key.2, key.3, key.4), st.k, st.verified)
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let bad: Vec<&String> =
        results.iter().filter(|(_, k, v)| !(k.is_some_and(|k| k <= 4) && *v)).map(|r| &r.0).collect();
    let worst = results.iter().filter_map(|r| r.1).max().unwrap_or(0);
    report(
        5,
        "image stabilization",
        bad.is_empty(),
        &format!("{} fixtures, largest onset k={worst}, window 4, failures {bad:?}", results.len()),
    );
}

#[test]
fn criterion_06_theorem6() {
    let reps = reports("theorem6");
    let full_onsets: BTreeSet<(i64, i64)> = default_onsets().into_iter().collect();
    let mut meeting = 0;
    let mut bad = Vec::new();
    let mut remark = BTreeSet::new();
    for r in &reps {
        if !hypotheses_hold(r) {
            continue;
        }
        meeting += 1;
        let label = r["fixture"]["label"].as_str().unwrap();
        let (n, m) = grid_side(r);
        let onsets: BTreeSet<(i64, i64)> = r["budgets"]["onsets"]
            .as_array()
            .unwrap()
            .iter()
            .map(|p| (p[0].as_i64().unwrap(), p[1].as_i64().unwrap()))
            .collect();
        if r["conclusion"] != "CONFIRMED" || n < 8 || m < 8 || !onsets.is_superset(&full_onsets) {
            bad.push(format!("{label}: {} on {n}x{m}", r["conclusion"]));
        }
        let f = &r["fixture"];
        let i = f["i"].as_u64().unwrap();
        if f["M"] == "coker [[x]]"
            && f["N"] == "coker [[x]]"
            && f["I"] == "(x, y)"
            && f["J"] == "(x, y)"
            && (1..=2).contains(&i)
        {
            let e = &r["empirical"];
            if e["verdict"] == "NO_POLYNOMIAL_FOUND" && e["region_evidence"].is_object() {
                remark.insert(i);
            } else {
                bad.push(format!("{label}: remark family not region dependent"));
            }
        }
    }
    let pass = bad.is_empty() && meeting >= 6 && remark.len() == 2;
    report(
        6,
        "radical criterion matches fitter",
        pass,
        &format!("{meeting} fixtures meet the hypothesis, remark family i in {remark:?}, mismatches {bad:?}"),
    );
}

#[test]
fn criterion_07_corollary7() {
    let mut meeting = 0;
    let mut bad = Vec::new();
    let mut closed_form = false;
    for r in reports("corollary7") {
        if !hypotheses_hold(r) {
            continue;
        }
        meeting += 1;
        let e = &r["empirical"];
        if r["conclusion"] != "CONFIRMED" || e["verdict"] != "POLYNOMIAL" {
            bad.push(r["fixture"]["label"].to_string());
        }
        let f = &r["fixture"];
        if f["M"] == "R^1" && f["N"] == "R^1" && f["I"] == "(x, y)" && f["i"] == 0 {
            let values = r["series"]["values"].as_array().unwrap();
            let lo = r["series"]["n_lo"].as_u64().unwrap();
            let oracle = values.iter().enumerate().all(|(k, v)| {
                let n = lo + k as u64;
                v.as_u64() == Some(n * (n + 1) / 2)
            });
            closed_form = oracle && e["polynomial"]["monomial"]["text"] == "1/2*n^2 + 1/2*n";
        }
    }
    let bivariate_fails = reports("corollary8").iter().any(|r| {
        let f = &r["fixture"];
        f["M"] == "R^1" && f["N"] == "R^1" && f["i"] == 0 && r["empirical"]["verdict"] == "NO_POLYNOMIAL_FOUND"
    });
    let pass = bad.is_empty() && meeting > 0 && closed_form && bivariate_fails;
    report(
        7,
        "diagonal fits",
        pass,
        &format!(
            "{meeting} fixtures, failures {bad:?}, M=N=R diagonal n(n+1)/2: {closed_form}, bivariate non-polynomial: {bivariate_fails}"
        ),
    );
}

#[test]
fn criterion_08_corollary8() {
    let mut doubly_primary = 0;
    let mut bad = Vec::new();
    for (session, task, _) in fixture_tasks() {
        if task.kind == TaskKind::Tor {
            continue;
        }
        let fx = fixture_of(task);
        if !corollary8_hypotheses(&fx).iter().all(|h| h.holds) {
            continue;
        }
        doubly_primary += 1;
        let radical = radical_criteria(&fx).iter().all(|c| c.holds);
        let finite = finite_length_criteria(&fx).iter().all(|c| c.holds);
        if radical != finite {
            bad.push(format!("{session} {}", fx.label));
        }
    }
    let reps = reports("corollary8");
    for r in &reps {
        if hypotheses_hold(r) && r["conclusion"] != "CONFIRMED" {
            bad.push(format!("corollary8 {}: {}", r["fixture"]["label"], r["conclusion"]));
        }
    }
    let min_structure = reps.iter().any(|r| {
        let f = &r["fixture"];
        f["M"] == "R^1"
            && f["N"] == "R^1"
            && f["I"] == "(x, y)"
            && f["J"] == "(x, y)"
            && f["i"] == 0
            && r["prediction"] == Value::Bool(false)
            && r["empirical"]["verdict"] == "NO_POLYNOMIAL_FOUND"
    });
    let pass = bad.is_empty() && doubly_primary > 0 && min_structure;
    report(
        8,
        "finite-length criterion equals radical criterion",
        pass,
        &format!("{doubly_primary} doubly-primary fixtures, min-structure predicted and observed: {min_structure}, mismatches {bad:?}"),
    );
}

#[test]
fn criterion_09_theorem9() {
    let mut meeting = 0;
    let mut bad = Vec::new();
    for name in ["theorem9", "theorem9_xyz"] {
        for r in reports(name) {
            if !hypotheses_hold(r) {
                continue;
            }
            meeting += 1;
            let label = r["fixture"]["label"].as_str().unwrap();
            let (n, m) = grid_side(r);
            let onset = &r["onset"];
            let residuals = &r["identity_residuals"];
            let zero_past = onset.is_array()
                && residuals.as_array().is_some_and(|rows| {
                    let g = &r["budgets"]["grid"];
                    let (n_lo, m_lo) = (g["n_lo"].as_i64().unwrap(), g["m_lo"].as_i64().unwrap());
                    let (n0, m0) = (onset[0].as_i64().unwrap(), onset[1].as_i64().unwrap());
                    rows.iter().enumerate().all(|(a, row)| {
                        row.as_array()
                            .unwrap()
                            .iter()
                            .enumerate()
                            .all(|(b, v)| a as i64 + n_lo < n0 || b as i64 + m_lo < m0 || v.as_i64() == Some(0))
                    })
                });
            if !zero_past || n < 6 || m < 6 || r["conclusion"] != "CONFIRMED" {
                bad.push(format!("{name} {label}: {}", r["conclusion"]));
            }
        }
    }
    let pass = bad.is_empty() && meeting >= 3;
    report(9, "four-term identity", pass, &format!("{meeting} fixtures with finite M (x) N, failures {bad:?}"));
}

#[test]
fn criterion_10_prop10_degree_cap() {
    let r = Ring::standard(&["x", "y"]);
    let zero = Ideal::zero(&r);
    let l_max = Ideal::maximal(&r).analytic_spread(&zero).unwrap();
    let l_x = Ideal::parse(&r, &["x"]).unwrap().analytic_spread(&zero).unwrap();
    let hand = l_max == 2 && l_x == 1;

    // in scope: both primary hypotheses hold and Tor_i, Tor_{i-1} have finite length
    let mut fits = 0;
    let mut out_of_scope = 0;
    let mut violations = Vec::new();
    for (session, task, rep) in fixture_tasks() {
        let Some(rep) = rep else { continue };
        let fit = if task.kind == TaskKind::Fit { &rep["fit"] } else { &rep["empirical"] };
        if fit["verdict"] != "POLYNOMIAL" {
            continue;
        }
        let fx = fixture_of(task);
        let in_scope =
            corollary8_hypotheses(&fx).iter().all(|h| h.holds) && finite_length_criteria(&fx).iter().all(|c| c.holds);
        if !in_scope {
            out_of_scope += 1;
            continue;
        }
        fits += 1;
        let (lm, ln) = fx.spreads().unwrap();
        let cap = lm as i64 + ln as i64 - 2;
        let degree = fit["polynomial"]["degree"].as_i64();
        if degree.is_some_and(|d| d > cap) {
            violations.push(format!("{session} {} i={}: degree {} > {lm}+{ln}-2", fx.label, fx.i, degree.unwrap()));
        }
    }
    let pass = hand && violations.is_empty() && fits > 0;
    report(
        10,
        "degree cap l_M(I) + l_N(J) - 2",
        pass,
        &format!(
            "l((x,y)) = {l_max}, l((x)) = {l_x}; {fits} polynomial fits in scope ({out_of_scope} outside the hypotheses), {} above the cap: {violations:?}",
            violations.len()
        ),
    );
}

#[test]
fn criterion_11_fitter_round_trip() {
    let mut rng = StdRng::seed_from_u64(0x5eed_2024);
    let mut failures = Vec::new();
    for trial in 0..200 {
        let degree = rng.gen_range(0..=4u32);
        let mut coeffs = BTreeMap::new();
        for a in 0..=degree {
            for b in 0..=degree - a {
                coeffs.insert((a, b), rng.gen_range(-9..=9i64));
            }
        }
        let mut poly = IntegerPolynomial::new(2, 1, 1, coeffs.clone());
        let lowest =
            (1..=8).flat_map(|n| (1..=8).map(move |m| (n, m))).map(|(n, m)| poly.evaluate(n, m)).min().unwrap();
        if lowest < 0 {
            *coeffs.entry((0, 0)).or_insert(0) -= lowest as i64;
            poly = IntegerPolynomial::new(2, 1, 1, coeffs);
        }
        let table = SampleTable::tabulate(0, Ranges::square(1, 8), false, |n, m| {
            Length::Finite(poly.evaluate(n as i64, m as i64) as u64)
        });
        let fit = fit_bivariate(&table, 4, &default_onsets());
        let recovered = fit.polynomial.as_ref().is_some_and(|p| p.to_rational() == poly.to_rational());
        if !recovered {
            failures.push(format!("trial {trial}: {}", poly.binomial_text()));
        }
    }
    report(
        11,
        "fitter round trip",
        failures.is_empty(),
        &format!("200 polynomials of degree <= 4 on 8x8, failures {failures:?}"),
    );
}

#[test]
fn criterion_12_engine_properties() {
    let mut bad = Vec::new();
    let mut counts = [0usize; 5];
    let out = TempDir::new().unwrap();
    for path in session_paths() {
        let name = stem(&path);
        let opts = RunOptions { out: Some(out.path().join(&name)), parallel: false, certify: true };
        let summary = run_session(&path, &Overrides::default(), &opts).unwrap();
        for o in &summary.outcomes {
            if o.status == Status::Failed {
                bad.push(format!("{name} task {}: {}", o.index, o.summary));
            }
        }
    }
    for (name, session) in &corpus().sessions {
        let ring = &session.ring;
        for (iname, ideal) in &session.ideals {
            counts[0] += 1;
            if !ideal.groebner().verify_certificate() {
                bad.push(format!("{name} ideal {iname}: S-pair certificate"));
            }
            let gb = ideal.groebner();
            let mut probe = ring.one();
            for g in ideal.generators() {
                probe = ring.poly_add(&ring.poly_mul(&probe, &ring.var(0)), g);
            }
            counts[1] += 1;
            let once = gb.normal_form_poly(&probe);
            if gb.normal_form_poly(&once) != once {
                bad.push(format!("{name} ideal {iname}: normal form not idempotent"));
            }
        }
        for (mname, module) in &session.modules {
            let pres = module.presentation();
            counts[2] += 1;
            if !pres.compose(&syzygies(&pres)).is_zero() {
                bad.push(format!("{name} module {mname}: syzygy composition"));
            }
            counts[3] += 1;
            if !free_resolution(module, ring.nvars() + 1).verify_exactness() {
                bad.push(format!("{name} module {mname}: resolution not exact"));
            }
            for (iname, ideal) in &session.ideals {
                let top = module.quotient_by_power(ideal, 3).length();
                if !top.is_finite() {
                    continue;
                }
                counts[4] += 1;
                let bottom = module.quotient_by_power(ideal, 1).length();
                let middle = module.scale(ideal, 1).modulo(module.scale(ideal, 3).numerator()).length();
                if top != bottom + middle {
                    bad.push(format!("{name} {mname}/{iname}^3: {top} != {bottom} + {middle}"));
                }
            }
        }
    }
    report(
        12,
        "engine property suite",
        bad.is_empty(),
        &format!(
            "certified corpus run; {} Groebner certificates, {} normal forms, {} syzygy maps, {} resolutions, {} length sequences; failures {bad:?}",
            counts[0], counts[1], counts[2], counts[3], counts[4]
        ),
    );
}
