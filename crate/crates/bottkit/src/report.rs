//! Stable renderings of computation results: plain text, JSON, and an SVG
//! grid for cohomology tables.
//!
//! Every function here is a pure formatter. Output bytes depend only on
//! the inputs, so all of them are safe to pin in golden tests. JSON keeps
//! dimensions as decimal strings since they routinely exceed u64.

use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::bott::{CohomologyTable, GrassmannianCtx};
use crate::bundles::BundleExpr;
use crate::complexes::ComplexReport;
use crate::criteria::{ConditionSet, Violation};

/// The character grid of a cohomology table, degrees increasing downward
/// and twists increasing to the right. Vanishing groups print as dots.
pub fn table_text(ctx: GrassmannianCtx, bundle: &str, table: &CohomologyTable) -> String {
    let (lo, hi) = table.window();
    let dim = ctx.variety_dim();
    let mut out = format!("{bundle} on G({},{})\n", ctx.k(), ctx.n());
    out.push_str(&format!(
        "twists {lo}..={hi} ({})\n",
        if table.certified() {
            "certified complete"
        } else {
            "explicit window, not certified"
        }
    ));
    let twists: Vec<i64> = (lo..=hi).collect();
    let mut widths: Vec<usize> = twists.iter().map(|t| t.to_string().len()).collect();
    for (idx, t) in twists.iter().enumerate() {
        for j in 0..=dim {
            if let Some(d) = table.get(j, *t) {
                widths[idx] = widths[idx].max(d.to_string().len());
            }
        }
    }
    let row_label = dim.to_string().len().max(3);
    out.push_str(&format!("{:>row_label$}", "j\\t"));
    for (idx, t) in twists.iter().enumerate() {
        out.push_str(&format!("  {:>w$}", t, w = widths[idx]));
    }
    out.push('\n');
    for j in 0..=dim {
        out.push_str(&format!("{j:>row_label$}"));
        for (idx, t) in twists.iter().enumerate() {
            match table.get(j, *t) {
                Some(d) => out.push_str(&format!("  {:>w$}", d.to_string(), w = widths[idx])),
                None => out.push_str(&format!("  {:>w$}", ".", w = widths[idx])),
            }
        }
        out.push('\n');
    }
    out
}

pub fn table_json(ctx: GrassmannianCtx, bundle: &str, table: &CohomologyTable) -> Value {
    let (lo, hi) = table.window();
    let entries: Vec<Value> = table
        .entries()
        .map(|(j, t, d)| json!({"j": j, "t": t, "dim": d.to_string()}))
        .collect();
    json!({
        "grassmannian": {"k": ctx.k(), "n": ctx.n()},
        "bundle": bundle,
        "variety_dim": ctx.variety_dim(),
        "window": {"lo": lo, "hi": hi, "certified": table.certified()},
        "entries": entries,
    })
}

/// Shape-only SVG of a cohomology table. One circle per nonzero group,
/// radius growing with the number of decimal digits, blue on the extreme
/// rows j = 0 and j = dim, red in between where an exactness obstruction
/// would sit. No text elements, so the bytes are font-independent.
pub fn table_svg(ctx: GrassmannianCtx, table: &CohomologyTable) -> String {
    let (lo, hi) = table.window();
    let dim = ctx.variety_dim();
    let cols = (hi - lo + 1) as u32;
    let rows = dim as u32 + 1;
    let cell = 22u32;
    let margin = 30u32;
    let width = 2 * margin + cols * cell;
    let height = 2 * margin + rows * cell;
    let x = |t: i64| margin + (t - lo) as u32 * cell + cell / 2;
    let y = |j: usize| margin + j as u32 * cell + cell / 2;
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width}\" height=\"{height}\" \
         viewBox=\"0 0 {width} {height}\">\n"
    ));
    out.push_str(&format!(
        "<rect x=\"0\" y=\"0\" width=\"{width}\" height=\"{height}\" fill=\"#ffffff\"/>\n"
    ));
    for j in 0..rows {
        out.push_str(&format!(
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n",
            margin,
            y(j as usize),
            width - margin,
            y(j as usize)
        ));
    }
    for c in 0..cols {
        out.push_str(&format!(
            "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n",
            x(lo + c as i64),
            margin,
            height - margin
        ));
    }
    // the vertical line at t = 0 anchors the picture
    if lo <= 0 && 0 <= hi {
        out.push_str(&format!(
            "<line x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"#555555\" \
             stroke-width=\"2\" stroke-dasharray=\"6 4\"/>\n",
            x(0),
            margin,
            height - margin
        ));
    }
    for (j, t, d) in table.entries() {
        let digits = d.to_string().len() as u32;
        let r = (3 + 2 * digits.min(4)).min(cell / 2);
        let color = if j == 0 || j == dim {
            "#1f77b4"
        } else {
            "#d62728"
        };
        out.push_str(&format!(
            "<circle cx=\"{}\" cy=\"{}\" r=\"{r}\" fill=\"{color}\"/>\n",
            x(t),
            y(j)
        ));
    }
    out.push_str("</svg>\n");
    out
}

/// One line per set: the name, then its points in (i, j) order.
pub fn sets_text(sets: &[ConditionSet]) -> String {
    let mut out = String::new();
    for s in sets {
        out.push_str(&s.name);
        out.push(':');
        if s.points.is_empty() {
            out.push_str(" (empty)");
        }
        for p in &s.points {
            out.push_str(&format!(" ({},{})", p.i, p.j));
        }
        out.push('\n');
    }
    out
}

pub fn sets_json(sets: &[ConditionSet]) -> Value {
    let rendered: Vec<Value> = sets
        .iter()
        .map(|s| {
            json!({
                "name": s.name,
                "points": s.points.iter().map(|p| json!([p.i, p.j])).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "sets": rendered })
}

pub fn violations_text(violations: &[Violation]) -> String {
    if violations.is_empty() {
        return "all hypothesis points hold\n".to_string();
    }
    let mut out = String::new();
    for v in violations {
        out.push_str(&format!(
            "point ({},{}) fails: nonzero H^{} at twist {}, dimension {}\n",
            v.i, v.j, v.j, v.witness_twist, v.dimension
        ));
    }
    out
}

pub fn violations_json(criterion: &str, n: usize, k_level: usize, violations: &[Violation]) -> Value {
    let rendered: Vec<Value> = violations
        .iter()
        .map(|v| {
            json!({
                "i": v.i,
                "j": v.j,
                "t": v.witness_twist,
                "dim": v.dimension.to_string(),
            })
        })
        .collect();
    json!({
        "criterion": criterion,
        "n": n,
        "k": k_level,
        "violations": rendered,
    })
}

pub fn acm_text(found: &[BundleExpr]) -> String {
    if found.is_empty() {
        return "no ACM bundles in the family\n".to_string();
    }
    let mut out = String::new();
    for e in found {
        out.push_str(&e.to_string());
        out.push('\n');
    }
    out
}

pub fn acm_json(ctx: GrassmannianCtx, family: &str, bound: u32, found: &[BundleExpr]) -> Value {
    json!({
        "grassmannian": {"k": ctx.k(), "n": ctx.n()},
        "family": family,
        "bound": bound,
        "acm": found.iter().map(|e| e.to_string()).collect::<Vec<_>>(),
    })
}

fn offender_line(offenders: &[(usize, i64, BigUint)]) -> String {
    offenders
        .iter()
        .map(|(j, t, d)| format!("h^{j}(t={t})={d}"))
        .collect::<Vec<_>>()
        .join(", ")
}

pub fn complex_text(report: &ComplexReport) -> String {
    let mut out = format!("complex {}\n", report.name);
    for (p, term) in report.terms.iter().enumerate() {
        out.push_str(&format!("  {p:>2}: {term}\n"));
    }
    out.push_str(&format!(
        "rank alternating sum: {} [{}]\n",
        report.rank_sum,
        if report.rank_ok { "ok" } else { "FAIL" }
    ));
    let (lo, hi) = report.euler_window;
    if report.euler_ok {
        out.push_str(&format!(
            "euler characteristic sums to zero for all twists {lo}..={hi} [ok]\n"
        ));
    } else {
        out.push_str(&format!(
            "euler characteristic nonzero at twists {:?} within {lo}..={hi} [FAIL]\n",
            report.euler_failures
        ));
    }
    if report.acm_ok {
        out.push_str("intermediate cohomology: none in any term [ok]\n");
    } else {
        for p in &report.acm {
            if !p.offenders.is_empty() {
                out.push_str(&format!(
                    "term {} ({}) has intermediate cohomology: {}\n",
                    p.position,
                    p.term,
                    offender_line(&p.offenders)
                ));
            }
        }
    }
    match report.selfdual_twist {
        Some(t) => out.push_str(&format!("self-dual with twist {t}\n")),
        None => out.push_str("not self-dual under reversal\n"),
    }
    out
}

pub fn complex_json(report: &ComplexReport) -> Value {
    let acm: Vec<Value> = report
        .acm
        .iter()
        .map(|p| {
            json!({
                "position": p.position,
                "term": p.term,
                "offending": p
                    .offenders
                    .iter()
                    .map(|(j, t, d)| json!([j, t, d.to_string()]))
                    .collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "name": report.name,
        "terms": report.terms,
        "rank_sum": report.rank_sum.to_string(),
        "rank_ok": report.rank_ok,
        "euler": {
            "window": [report.euler_window.0, report.euler_window.1],
            "failures": report.euler_failures,
            "ok": report.euler_ok,
        },
        "acm": acm,
        "acm_ok": report.acm_ok,
        "selfdual_twist": report.selfdual_twist,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bott::cohomology_table;
    use crate::complexes::{complex_checks, serre_extension};
    use crate::criteria::{evaluate, main_hypotheses};
    use crate::grammar::parse_bundle;

    fn g(k: usize, n: usize) -> GrassmannianCtx {
        GrassmannianCtx::new(k, n).unwrap()
    }

    #[test]
    fn text_table_for_a_single_class() {
        let ctx = g(1, 4);
        let e = parse_bundle(ctx, "Sym^3 Q(-4)").unwrap();
        let table = cohomology_table(ctx, &e, Some((-1, 1))).unwrap();
        let text = table_text(ctx, "Sym^3 Q(-4)", &table);
        assert_eq!(
            text,
            "Sym^3 Q(-4) on G(1,4)\n\
             twists -1..=1 (explicit window, not certified)\n\
             j\\t  -1  0  1\n\
             \u{20}\u{20}0   .  .  .\n\
             \u{20}\u{20}1   .  .  .\n\
             \u{20}\u{20}2   .  .  .\n\
             \u{20}\u{20}3   .  1  .\n\
             \u{20}\u{20}4   .  .  .\n\
             \u{20}\u{20}5   .  .  .\n\
             \u{20}\u{20}6   .  .  .\n"
        );
    }

    #[test]
    fn json_table_entries_are_sorted_and_stringly() {
        let ctx = g(1, 3);
        let e = parse_bundle(ctx, "O").unwrap();
        let table = cohomology_table(ctx, &e, Some((-5, 1))).unwrap();
        let v = table_json(ctx, "O", &table);
        assert_eq!(v["grassmannian"]["n"], 3);
        // both boundary columns are nonempty and pure, so even this
        // hand-picked window certifies
        assert_eq!(v["window"]["certified"], Value::Bool(true));
        let entries = v["entries"].as_array().unwrap();
        assert_eq!(entries[0]["j"], 0);
        assert_eq!(entries[0]["t"], 0);
        assert_eq!(entries[0]["dim"], "1");
        let pairs: Vec<(u64, i64)> = entries
            .iter()
            .map(|e| (e["j"].as_u64().unwrap(), e["t"].as_i64().unwrap()))
            .collect();
        let mut sorted = pairs.clone();
        sorted.sort();
        assert_eq!(pairs, sorted);
    }

    #[test]
    fn svg_table_is_deterministic_and_textless() {
        let ctx = g(1, 4);
        let e = parse_bundle(ctx, "Q").unwrap();
        let table = cohomology_table(ctx, &e, None).unwrap();
        let a = table_svg(ctx, &table);
        let b = table_svg(ctx, &table);
        assert_eq!(a, b);
        assert!(a.starts_with("<svg "));
        assert!(a.contains("circle"));
        assert!(!a.contains("<text"));
    }

    #[test]
    fn set_listing_round_trip() {
        let sets = vec![main_hypotheses(4, 0).unwrap()];
        let text = sets_text(&sets);
        assert!(text.starts_with("main_0:"));
        assert!(text.contains("(2,3)"));
        let v = sets_json(&sets);
        assert_eq!(v["sets"][0]["name"], "main_0");
        assert!(v["sets"][0]["points"].as_array().unwrap().len() >= 3);
    }

    #[test]
    fn violation_rendering() {
        let ctx = g(1, 4);
        let e = parse_bundle(ctx, "Q").unwrap();
        let conds = main_hypotheses(4, 0).unwrap();
        let violations = evaluate(ctx, &e, &conds).unwrap();
        assert_eq!(violations.len(), 1);
        let text = violations_text(&violations);
        assert_eq!(text, "point (2,3) fails: nonzero H^3 at twist -4, dimension 1\n");
        let v = violations_json("am", 4, 0, &violations);
        assert_eq!(v["violations"][0]["t"], -4);
        assert_eq!(v["violations"][0]["dim"], "1");
        assert_eq!(
            violations_text(&[]),
            "all hypothesis points hold\n"
        );
    }

    #[test]
    fn complex_rendering_has_the_documented_shape() {
        let report = complex_checks(&serre_extension(2).unwrap()).unwrap();
        let text = complex_text(&report);
        assert!(text.starts_with("complex serre_2\n   0: O(-3)\n"));
        assert!(text.contains("rank alternating sum: 0 [ok]"));
        assert!(text.contains("self-dual with twist -3"));
        let v = complex_json(&report);
        assert_eq!(v["name"], "serre_2");
        assert_eq!(v["rank_sum"], "0");
        assert_eq!(v["rank_ok"], Value::Bool(true));
        assert_eq!(v["euler"]["ok"], Value::Bool(true));
        assert_eq!(v["selfdual_twist"], 0 - 3);
        assert_eq!(v["acm"].as_array().unwrap().len(), 4);
        assert_eq!(v["acm"][0]["offending"].as_array().unwrap().len(), 0);
    }
}
