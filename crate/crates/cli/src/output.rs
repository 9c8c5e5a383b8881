//! Text and JSON renderings. Rationals go to JSON as `[numerator, denominator]`
//! decimal strings.

use serde_json::{json, Value};
use tau_analysis::{AnalysisError, RatioRow};
use tau_core::{render_poly, Poly, Rational, RenderStyle, TauSolution};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Json,
}

pub fn json_rational(r: &Rational) -> Value {
    json!([r.numer().to_string(), r.denom().to_string()])
}

fn json_poly(p: &Poly) -> Value {
    Value::Array(p.coeffs().iter().map(json_rational).collect())
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

pub(crate) fn solution(sol: &TauSolution, format: Format) -> String {
    let p = &sol.params;
    match format {
        Format::Json => pretty(&json!({
            "y_n": json_poly(&sol.y_n),
            "u_p": json_poly(&sol.u_p),
            "tau": sol.tau.iter().map(json_rational).collect::<Vec<_>>(),
            "params": { "k": p.k, "l": p.l, "s": p.s, "p": p.p, "r": p.r, "m": p.m },
            "residual_verified": sol.residual_verified,
            "warnings": sol.warnings,
        })),
        Format::Text => {
            let tau: Vec<String> = sol.tau.iter().map(ToString::to_string).collect();
            let mut out = format!(
                "y_n: {}\nu_p: {}\ntau: {}\nparams: k={} l={} s={} p={} r={} m={}\nresidual_verified: {}\n",
                render_poly(&sol.y_n, RenderStyle::Human),
                render_poly(&sol.u_p, RenderStyle::Human),
                if tau.is_empty() { "none".to_string() } else { tau.join(", ") },
                p.k,
                p.l,
                p.s,
                p.p,
                p.r,
                p.m,
                sol.residual_verified
            );
            for w in &sol.warnings {
                out.push_str(&format!("warning: {w}\n"));
            }
            out
        }
    }
}

pub(crate) fn table(ns: &[usize], rows: &[Result<RatioRow, AnalysisError>], format: Format) -> String {
    match format {
        Format::Json => pretty(&Value::Array(
            ns.iter()
                .zip(rows)
                .map(|(n, row)| match row {
                    Ok(r) => json!({
                        "n": r.n,
                        "numerator": r.numerator,
                        "denominator": r.denominator,
                        "ratio": r.ratio,
                        "norm": r.norm_kind.name(),
                    }),
                    Err(e) => json!({ "n": n, "error": e.to_string() }),
                })
                .collect(),
        )),
        Format::Text => {
            let mut out = format!("{:>4}  {:>14}  {:>14}  {:>8}  norm\n", "n", "numerator", "denominator", "ratio");
            for (n, row) in ns.iter().zip(rows) {
                match row {
                    Ok(r) => out.push_str(&format!(
                        "{:>4}  {:>14.6e}  {:>14.6e}  {:>8.4}  {}\n",
                        r.n,
                        r.numerator,
                        r.denominator,
                        r.ratio,
                        r.norm_kind.name()
                    )),
                    Err(e) => out.push_str(&format!("{n:>4}  error: {e}\n")),
                }
            }
            out
        }
    }
}

pub(crate) fn taylor(n: usize, series: &Poly, format: Format) -> String {
    match format {
        Format::Json => pretty(&json!({ "degree": n, "coefficients": json_poly(series) })),
        Format::Text => format!("{}\n", render_poly(series, RenderStyle::Human)),
    }
}
