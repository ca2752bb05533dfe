use std::fmt::Write as _;

use serde_json::{json, Value};

use super::Format;
use crate::error::Result;
use crate::gausscf::{gauss_rule, leading_error_constant, legendre_pair, weight_polynomial, LeadingError};
use crate::interprule::Convention;
use crate::momseries::{moment_series_t, product_split};
use crate::numerics::{hp_log10_scaled, HpFloat, Precision};
use crate::ratpoly::RatPoly;

const TABLE_DIGITS: usize = 16;
const LOG_DIGITS: usize = 10;

/// Everything printed for one Gaussian rule.
#[derive(Debug, Clone)]
pub struct TableEntry {
    pub n: usize,
    pub node_poly_u: RatPoly,
    pub numerator_u: RatPoly,
    pub node_poly_t: RatPoly,
    pub numerator_t: RatPoly,
    pub nodes_u: Vec<HpFloat>,
    pub nodes_t: Vec<HpFloat>,
    pub weights: Vec<HpFloat>,
    pub log10_scaled: Vec<HpFloat>,
    pub weight_polynomial: RatPoly,
    pub leading: LeadingError,
}

pub fn table_entry(n: usize, precision: Precision) -> Result<TableEntry> {
    let pair = legendre_pair(n + 1);
    let rule = gauss_rule(n, precision)?;
    let t_rule = rule.to_convention(Convention::T01);
    let node_poly_t = t_rule.node_poly().expect("gauss rules carry a node polynomial").clone();
    let (numerator_t, _) = product_split(&node_poly_t, &moment_series_t(n + 1), 0)?;
    let log10_scaled = rule
        .weights()
        .iter()
        .map(hp_log10_scaled)
        .collect::<Result<Vec<_>>>()?;
    Ok(TableEntry {
        n,
        node_poly_u: pair.w,
        numerator_u: pair.v,
        node_poly_t,
        numerator_t,
        nodes_u: rule.nodes().to_vec(),
        nodes_t: t_rule.nodes().to_vec(),
        weights: rule.weights().to_vec(),
        log10_scaled,
        weight_polynomial: weight_polynomial(n)?,
        leading: leading_error_constant(n),
    })
}

fn sig(x: &HpFloat) -> String {
    x.to_sig_digits(TABLE_DIGITS)
}

fn leading_decimal(entry: &TableEntry, precision_bits_of: &HpFloat) -> String {
    let bits = precision_bits_of.precision_bits();
    HpFloat::from_rational_bits(&entry.leading.k_first, bits).to_sig_digits(TABLE_DIGITS)
}

fn coeff_strings(p: &RatPoly) -> Vec<String> {
    p.coeffs().iter().map(ToString::to_string).collect()
}

pub fn render_tables(entries: &[TableEntry], format: Format) -> String {
    match format {
        Format::Text => render_text(entries),
        Format::Csv => render_csv(entries),
        Format::Json => render_json(entries),
    }
}

fn render_text(entries: &[TableEntry]) -> String {
    let mut out = String::new();
    for (i, e) in entries.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let count = e.n + 1;
        let _ = writeln!(out, "n = {} ({} node{})", e.n, count, if count == 1 { "" } else { "s" });
        let _ = writeln!(out, "  U  = {}", e.node_poly_u.display_var("u"));
        let _ = writeln!(out, "  U' = {}", e.numerator_u.display_var("u"));
        let _ = writeln!(out, "  T  = {}", e.node_poly_t.display_var("t"));
        let _ = writeln!(out, "  T' = {}", e.numerator_t.display_var("t"));
        let _ = writeln!(out, "  weight polynomial = {}", e.weight_polynomial.display_var("u"));
        let _ = writeln!(
            out,
            "  leading error: k({}) = {} = {}  (u form: {} u^-{})",
            2 * e.n + 2,
            e.leading.k_first,
            leading_decimal(e, &e.weights[0]),
            e.leading.u_constant,
            2 * e.n + 3
        );
        let _ = writeln!(
            out,
            "  {:>3}  {:>20}  {:>20}  {:>20}  {:>12}",
            "j", "node u", "node t", "weight", "log10(1e9 R)"
        );
        for j in 0..count {
            let _ = writeln!(
                out,
                "  {:>3}  {:>20}  {:>20}  {:>20}  {:>12}",
                j,
                sig(&e.nodes_u[j]),
                sig(&e.nodes_t[j]),
                sig(&e.weights[j]),
                e.log10_scaled[j].to_sig_digits(LOG_DIGITS)
            );
        }
    }
    out
}

fn render_csv(entries: &[TableEntry]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(Vec::new());
    w.write_record([
        "n",
        "node_index",
        "node_t",
        "node_u",
        "weight",
        "log10_weight_scaled",
        "leading_error_rational",
        "leading_error_decimal",
    ])
    .expect("in-memory write");
    for e in entries {
        let lead = leading_decimal(e, &e.weights[0]);
        for j in 0..=e.n {
            w.write_record([
                e.n.to_string(),
                j.to_string(),
                sig(&e.nodes_t[j]),
                sig(&e.nodes_u[j]),
                sig(&e.weights[j]),
                e.log10_scaled[j].to_sig_digits(LOG_DIGITS),
                e.leading.k_first.to_string(),
                lead.clone(),
            ])
            .expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

fn entry_json(e: &TableEntry) -> Value {
    let strings = |v: &[HpFloat]| v.iter().map(sig).collect::<Vec<_>>();
    json!({
        "n": e.n,
        "convention": "t",
        "nodes": strings(&e.nodes_t),
        "nodes_u": strings(&e.nodes_u),
        "weights": strings(&e.weights),
        "log10_scaled_weights": e.log10_scaled.iter().map(|x| x.to_sig_digits(LOG_DIGITS)).collect::<Vec<_>>(),
        "leading_error": {
            "rational": e.leading.k_first.to_string(),
            "decimal": leading_decimal(e, &e.weights[0]),
            "order": 2 * e.n + 2,
            "u_constant": e.leading.u_constant.to_string(),
        },
        "weight_polynomial": coeff_strings(&e.weight_polynomial),
        "node_polynomial_t": coeff_strings(&e.node_poly_t),
        "numerator_polynomial_t": coeff_strings(&e.numerator_t),
        "node_polynomial_u": coeff_strings(&e.node_poly_u),
        "numerator_polynomial_u": coeff_strings(&e.numerator_u),
    })
}

/// A JSON array with one object per rule. Keys are emitted in sorted order
/// and every number is a fixed-width decimal string, so re-parsing and
/// re-rendering reproduces the bytes.
fn render_json(entries: &[TableEntry]) -> String {
    let doc = Value::Array(entries.iter().map(entry_json).collect());
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Rational;

    fn entry(n: usize) -> TableEntry {
        table_entry(n, Precision::default()).unwrap()
    }

    #[test]
    fn midpoint_row() {
        let e = entry(0);
        assert_eq!(sig(&e.nodes_t[0]), "0.5000000000000000");
        assert_eq!(sig(&e.weights[0]), "1.000000000000000");
        assert_eq!(e.node_poly_t, RatPoly::from_roots(&[Rational::frac(1, 2)]));
        assert_eq!(e.numerator_t, RatPoly::one());
    }

    #[test]
    fn two_point_row() {
        let e = entry(1);
        assert_eq!(sig(&e.nodes_u[0]), "-0.5773502691896258");
        assert_eq!(sig(&e.nodes_u[1]), "0.5773502691896258");
        assert_eq!(e.log10_scaled[0].to_sig_digits(LOG_DIGITS), "8.698970004");
        assert_eq!(e.leading.k_first, Rational::frac(1, 180));
    }

    #[test]
    fn csv_shape() {
        let out = render_tables(&[entry(0), entry(1)], Format::Csv);
        let lines: Vec<&str> = out.split("\r\n").filter(|l| !l.is_empty()).collect();
        assert_eq!(lines.len(), 4);
        assert!(lines[1].starts_with("0,0,0.5000000000000000,0.000000000000000,1.000000000000000,9.000000000,1/12,"));
    }

    #[test]
    fn json_round_trip_is_byte_identical() {
        let out = render_tables(&[entry(0), entry(2), entry(5)], Format::Json);
        let parsed: Value = serde_json::from_str(&out).unwrap();
        let mut again = serde_json::to_string_pretty(&parsed).unwrap();
        again.push('\n');
        assert_eq!(again, out);
        assert_eq!(parsed[1]["weight_polynomial"], json!(["4/9", "0", "-5/18"]));
        assert_eq!(parsed[1]["leading_error"]["rational"], json!("1/2800"));
    }

    #[test]
    fn text_lists_polynomials() {
        let out = render_tables(&[entry(2)], Format::Text);
        assert!(out.contains("U  = u^3 - 3/5*u"));
        assert!(out.contains("U' = u^2 - 4/15"));
        assert!(out.contains("weight polynomial = -5/18*u^2 + 4/9"));
    }
}
