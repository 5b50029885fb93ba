//! Plain-text narratives for the JSON reports written by `run`.

use std::fmt::Write as _;

use serde_json::Value;

fn s(v: &Value) -> String {
    match v {
        Value::String(x) => x.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn pair(v: &Value) -> String {
    match v.as_array() {
        Some(a) => format!("({})", a.iter().map(s).collect::<Vec<_>>().join(", ")),
        None => s(v),
    }
}

fn fixture_line(out: &mut String, fx: &Value) {
    if fx.is_null() {
        return;
    }
    let vars: Vec<String> = fx["variables"].as_array().map(|a| a.iter().map(s).collect()).unwrap_or_default();
    let _ = writeln!(out, "Fixture: {}", s(&fx["label"]));
    let _ = writeln!(
        out,
        "  ring k[{}] with char k = {}; i = {}; M = {}; N = {}; I = {}; J = {}",
        vars.join(", "),
        s(&fx["characteristic"]),
        s(&fx["i"]),
        s(&fx["M"]),
        s(&fx["N"]),
        s(&fx["I"]),
        s(&fx["J"])
    );
}

fn checks(out: &mut String, title: &str, list: &Value) {
    let Some(items) = list.as_array().filter(|a| !a.is_empty()) else { return };
    let _ = writeln!(out, "{title}:");
    for c in items {
        let mark = if c["holds"] == Value::Bool(true) { "holds" } else { "fails" };
        let _ = writeln!(out, "  [{mark}] {}: {}", s(&c["name"]), s(&c["detail"]));
        if let Some(f) = c["failures"].as_array().filter(|f| !f.is_empty()) {
            let names: Vec<String> = f.iter().map(s).collect();
            let _ = writeln!(out, "    not in the radical: {}", names.join(", "));
        }
    }
}

fn fit(out: &mut String, title: &str, f: &Value) {
    if f.is_null() {
        return;
    }
    let verdict = s(&f["verdict"]);
    let _ = write!(out, "{title}: {verdict} (max degree {}", s(&f["max_degree"]));
    match verdict.as_str() {
        "POLYNOMIAL" => {
            let p = &f["polynomial"];
            let _ = writeln!(
                out,
                ", onset {}, {} fitted cells, {} held out)",
                pair(&f["onset"]),
                s(&f["fit_cells"]),
                s(&f["holdout_cells"])
            );
            let _ = writeln!(out, "  polynomial: {}", s(&p["monomial"]["text"]));
            let _ = writeln!(out, "  binomial basis: {}", s(&p["binomial_text"]));
            let degree = if p["degree"].is_null() { "-inf".to_string() } else { s(&p["degree"]) };
            let _ = writeln!(out, "  total degree: {degree}");
        }
        "INFINITE_VALUES" => {
            let _ = writeln!(out, ")");
            let _ = writeln!(out, "  every candidate region contains infinite lengths");
        }
        _ => {
            let _ = writeln!(out, ")");
            let res = f["residuals"].as_array().cloned().unwrap_or_default();
            if !f["best_onset"].is_null() {
                let _ = writeln!(out, "  best onset {} leaves {} mismatched cells", pair(&f["best_onset"]), res.len());
                for r in res.iter().take(3) {
                    let _ = writeln!(
                        out,
                        "    at ({}, {}): observed {}, predicted {}",
                        s(&r["n"]),
                        s(&r["m"]),
                        s(&r["observed"]),
                        s(&r["predicted"])
                    );
                }
            } else {
                let _ = writeln!(out, "  no onset had enough cells for a fit and a hold-out");
            }
            let ev = &f["region_evidence"];
            if !ev.is_null() {
                let _ = writeln!(
                    out,
                    "  region dependence across {} (degree {}, cells with n, m >= {}):",
                    s(&ev["line"]),
                    s(&ev["degree"]),
                    s(&ev["start"])
                );
                let _ = writeln!(out, "    above the line: {}", s(&ev["above"]["text"]));
                let _ = writeln!(out, "    below the line: {}", s(&ev["below"]["text"]));
            }
        }
    }
}

fn residual_summary(out: &mut String, v: &Value) {
    let Some(rows) = v["identity_residuals"].as_array() else { return };
    let nonzero =
        rows.iter().flat_map(|r| r.as_array().cloned().unwrap_or_default()).filter(|x| x.as_i64() != Some(0)).count();
    match v["onset"].as_array() {
        Some(_) => {
            let _ = writeln!(
                out,
                "Identity residuals: zero past onset {} ({nonzero} nonzero cells before it)",
                pair(&v["onset"])
            );
        }
        None => {
            let _ = writeln!(out, "Identity residuals: {nonzero} nonzero cells and no onset inside the grid");
        }
    }
}

fn budgets(out: &mut String, b: &Value, max_degree: &Value) {
    if b.is_null() {
        return;
    }
    let g = &b["grid"];
    let onsets = b["onsets"].as_array().map_or(0, Vec::len);
    let _ = writeln!(
        out,
        "Budgets: grid n={}..{}, m={}..{}; diagonal n={}..{}; {} bivariate onsets; max degree {}",
        s(&g["n_lo"]),
        s(&g["n_hi"]),
        s(&g["m_lo"]),
        s(&g["m_hi"]),
        s(&b["diagonal"][0]),
        s(&b["diagonal"][1]),
        onsets,
        s(max_degree)
    );
}

fn theorem(out: &mut String, v: &Value) {
    let _ = writeln!(out, "Check: {}", s(&v["theorem"]));
    fixture_line(out, &v["fixture"]);
    checks(out, "Hypotheses", &v["hypotheses"]);
    checks(out, "Criteria", &v["criteria"]);
    let prediction = match v["prediction"].as_bool() {
        Some(true) => "eventually polynomial",
        Some(false) => "not eventually polynomial",
        None => "none",
    };
    let _ = writeln!(out, "Prediction: {prediction}");
    fit(out, "Fitter", &v["empirical"]);
    fit(out, "Second form", &v["alternate"]);
    residual_summary(out, v);
    let _ = writeln!(out, "Conclusion: {}", s(&v["conclusion"]));
    for n in v["notes"].as_array().into_iter().flatten() {
        let _ = writeln!(out, "Note: {}", s(n));
    }
    budgets(out, &v["budgets"], &v["max_degree"]);
}

/// Human-readable account of a report: hypotheses, criteria, verdicts and
/// budgets.
pub fn explain(v: &Value) -> String {
    let mut out = String::new();
    let task = v["task"].as_str().unwrap_or("");
    if !v["theorem"].is_null() {
        theorem(&mut out, v);
        return out;
    }
    match task {
        "fit" => {
            fixture_line(&mut out, &v["fixture"]);
            fit(&mut out, "Fit", &v["fit"]);
        }
        "remark" => {
            for (k, r) in v["reports"].as_array().into_iter().flatten().enumerate() {
                if k > 0 {
                    out.push('\n');
                }
                theorem(&mut out, r);
            }
        }
        "prop5" => {
            fixture_line(&mut out, &v["fixture"]);
            let p = &v["prop5"];
            let _ = writeln!(out, "Conditions on I and Tor_{} with budget {}:", s(&p["i"]), s(&p["budget"]));
            for (key, text) in [
                ("a", "I in rad ann Tor_i(M, N)"),
                ("b", "I in rad ann Tor_i(I^k M, N) at k = budget"),
                ("c", "I in rad ann Tor_i(I^n M, N) for every n <= budget"),
                ("d", "I in rad ann of the image for every n <= budget"),
                ("e", "the image vanishes at n = budget"),
            ] {
                let _ = writeln!(out, "  ({key}) {text}: {}", s(&p[key]));
            }
            let verdict = if p["agree"] == Value::Bool(true) { "all agree" } else { "DISAGREE" };
            let _ = writeln!(out, "Result: {verdict}; length Tor_i(M, N) = {}", s(&p["tor_length"]));
        }
        "stabilize" => {
            fixture_line(&mut out, &v["fixture"]);
            let st = &v["stabilization"];
            match st["k"].as_u64() {
                Some(k) => {
                    let _ = writeln!(out, "im_(n+1) = I*im_n for {} consecutive n from k = {k}", s(&st["window"]));
                }
                None => {
                    let _ = writeln!(out, "No onset k <= {} found", s(&st["budget"]));
                }
            }
            let lens: Vec<String> = st["image_lengths"].as_array().into_iter().flatten().map(s).collect();
            let _ = writeln!(out, "Image lengths from n = 0: {}", lens.join(", "));
            let _ = writeln!(out, "Image zero at the end of the window: {}", s(&st["final_image_zero"]));
        }
        "tor" => {
            let _ = writeln!(out, "Tor lengths for M = {}, N = {}:", s(&v["M"]), s(&v["N"]));
            for r in v["lengths"].as_array().into_iter().flatten() {
                let _ = writeln!(
                    out,
                    "  i = {}: Tor_i(M, N) = {}, Tor_i(N, M) = {}",
                    s(&r["i"]),
                    s(&r["forward"]),
                    s(&r["backward"])
                );
            }
            let _ = writeln!(out, "Symmetric: {}", s(&v["symmetric"]));
        }
        _ if !v["verdict"].is_null() => fit(&mut out, "Fit", v),
        _ => {
            let _ = writeln!(out, "Unrecognized report");
        }
    }
    out
}
