use std::fmt::Write as _;

use serde_json::{json, Value};

use super::Format;
use crate::error::Result;
use crate::gausscf::gauss_rule;
use crate::interprule::{rule_terms, Convention, Integrand};
use crate::numerics::{HpFloat, Precision, Rational};

pub const DEMO_FROM: i64 = 100_000;
pub const DEMO_WIDTH: i64 = 100_000;

/// Shown beside the table for comparison.
pub const BESSEL_VALUE: &str = "8406.24312";

const PRODUCT_DECIMALS: usize = 7;

#[derive(Debug, Clone)]
pub struct DemoRow {
    pub n: usize,
    pub value: HpFloat,
    /// `Δ R_j / ln x_j`, in ascending node order.
    pub products: Vec<HpFloat>,
    /// Abscissae `x_j` in `[g, g + Δ]`.
    pub nodes: Vec<HpFloat>,
}

impl DemoRow {
    /// Seven rules or fewer print six decimals; from seven nodes on, seven.
    pub fn decimals(&self) -> usize {
        if self.n <= 5 {
            6
        } else {
            7
        }
    }

    pub fn rendered_value(&self) -> String {
        self.value.to_fixed(self.decimals())
    }
}

pub fn demo_rows(n_max: usize, precision: Precision) -> Result<Vec<DemoRow>> {
    let bits = precision.bits();
    let g = HpFloat::from_rational_bits(&Rational::from_integer(DEMO_FROM), bits);
    let delta = HpFloat::from_rational_bits(&Rational::from_integer(DEMO_WIDTH), bits);
    let f = Integrand::ReciprocalLog;
    (0..=n_max)
        .map(|n| {
            let rule = gauss_rule(n, precision)?.to_convention(Convention::T01);
            let products = rule_terms(&rule, |x| f.eval(x), &g, &delta)?;
            let value = products
                .iter()
                .fold(HpFloat::zero_bits(bits), |acc, p| &acc + p);
            let nodes = rule.nodes().iter().map(|a| &g + &(&delta * a)).collect();
            Ok(DemoRow {
                n,
                value,
                products,
                nodes,
            })
        })
        .collect()
}

/// Number of leading characters `a` shares with `b`.
fn common_prefix(a: &str, b: &str) -> usize {
    a.chars().zip(b.chars()).take_while(|(x, y)| x == y).count()
}

/// Characters of each rendered value that agree with the next row's value.
/// The last row has nothing to compare with and reports zero.
pub fn stable_prefixes(rows: &[DemoRow]) -> Vec<usize> {
    let rendered: Vec<String> = rows.iter().map(DemoRow::rendered_value).collect();
    (0..rows.len())
        .map(|i| match rendered.get(i + 1) {
            Some(next) => common_prefix(&rendered[i], next),
            None => 0,
        })
        .collect()
}

pub fn render_demo(rows: &[DemoRow], format: Format) -> String {
    match format {
        Format::Text => render_text(rows),
        Format::Csv => render_csv(rows),
        Format::Json => render_json(rows),
    }
}

fn render_text(rows: &[DemoRow]) -> String {
    let stable = stable_prefixes(rows);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "integral of 1/ln x from {} to {}",
        DEMO_FROM,
        DEMO_FROM + DEMO_WIDTH
    );
    let _ = writeln!(out, "{:>3}  {:>6}  {:<16}  stable", "n", "nodes", "value");
    for (row, s) in rows.iter().zip(&stable) {
        let value = row.rendered_value();
        let marked = if *s > 0 {
            format!("{}|{}", &value[..*s], &value[*s..])
        } else {
            value.clone()
        };
        let _ = writeln!(out, "{:>3}  {:>6}  {:<16}  {}", row.n, row.n + 1, value, marked);
    }
    out.push('\n');
    for row in rows {
        let _ = writeln!(out, "n = {} products:", row.n);
        for (x, p) in row.nodes.iter().zip(&row.products) {
            let _ = writeln!(
                out,
                "  x = {:>22}  {:>16}",
                x.to_fixed(10),
                p.to_fixed(PRODUCT_DECIMALS)
            );
        }
    }
    out.push('\n');
    let _ = writeln!(out, "Bessel: {BESSEL_VALUE}");
    out
}

fn render_csv(rows: &[DemoRow]) -> String {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::CRLF)
        .from_writer(Vec::new());
    w.write_record(["n", "node_index", "x", "product", "value", "stable_prefix"])
        .expect("in-memory write");
    let stable = stable_prefixes(rows);
    for (row, s) in rows.iter().zip(&stable) {
        let value = row.rendered_value();
        for (j, (x, p)) in row.nodes.iter().zip(&row.products).enumerate() {
            w.write_record([
                row.n.to_string(),
                j.to_string(),
                x.to_fixed(10),
                p.to_fixed(PRODUCT_DECIMALS),
                value.clone(),
                s.to_string(),
            ])
            .expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

fn render_json(rows: &[DemoRow]) -> String {
    let stable = stable_prefixes(rows);
    let doc = json!({
        "from": DEMO_FROM.to_string(),
        "width": DEMO_WIDTH.to_string(),
        "reference": BESSEL_VALUE,
        "rows": rows
            .iter()
            .zip(&stable)
            .map(|(row, s)| json!({
                "n": row.n,
                "value": row.rendered_value(),
                "stable_prefix": s,
                "nodes": row.nodes.iter().map(|x| x.to_fixed(10)).collect::<Vec<_>>(),
                "products": row.products.iter().map(|p| p.to_fixed(PRODUCT_DECIMALS)).collect::<Vec<_>>(),
            }))
            .collect::<Vec<Value>>(),
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows() -> Vec<DemoRow> {
        demo_rows(6, Precision::default()).unwrap()
    }

    #[test]
    fn values_match_independent_quadrature() {
        // Reference values from a separate Gauss-Legendre implementation.
        let expected = [
            "8390.394608",
            "8405.954599",
            "8406.236775",
            "8406.242969",
            "8406.243117",
            "8406.243121",
            "8406.2431208",
        ];
        let got: Vec<String> = rows().iter().map(DemoRow::rendered_value).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn totals_agree_with_printed_products() {
        for row in rows() {
            let sum: Rational = row
                .products
                .iter()
                .map(|p| p.to_fixed(PRODUCT_DECIMALS).parse::<Rational>().unwrap())
                .sum();
            let diff = (&sum - &row.value.to_rational()).abs();
            assert!(diff <= Rational::frac(row.products.len() as i64, 20_000_000), "n = {}", row.n);
        }
    }

    #[test]
    fn seven_point_products() {
        let rows = rows();
        let p: Vec<String> = rows[6].products.iter().map(|p| p.to_fixed(7)).collect();
        assert_eq!(
            p,
            [
                "561.1213803",
                "1202.0551999",
                "1621.6290817",
                "1753.4212405",
                "1584.9790252",
                "1152.0681116",
                "530.9690816",
            ]
        );
    }

    #[test]
    fn stable_prefix_grows() {
        let s = stable_prefixes(&rows());
        assert_eq!(&s[..6], &[1, 3, 6, 7, 9, 10]);
        assert_eq!(*s.last().unwrap(), 0);
    }

    #[test]
    fn text_has_reference_line() {
        let out = render_demo(&rows()[..2], Format::Text);
        assert!(out.ends_with("Bessel: 8406.24312\n"));
        assert!(out.contains("8390.394608"));
    }
}
