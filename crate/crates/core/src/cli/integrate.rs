use std::fmt::Write as _;
use std::path::Path;

use serde_json::json;

use super::{check_order, CliError, Format, RuleKind};
use crate::error::Error;
use crate::gausscf::gauss_rule;
use crate::interprule::{
    error_coefficients, newton_cotes, rule_terms, Convention, Integrand, QuadRule,
};
use crate::numerics::{HpFloat, Precision, Rational};
use crate::ratpoly::RatPoly;

const MAX_COEFFS: usize = 64;
const VALUE_DIGITS: usize = 20;

/// Node-aligned function values read from a samples file.
#[derive(Debug, Clone, PartialEq)]
pub struct Samples {
    pub rule: RuleKind,
    pub n: usize,
    pub convention: Convention,
    pub values: Vec<Rational>,
}

impl Samples {
    pub fn expected_len(&self) -> usize {
        self.n + 1
    }
}

fn header_field<'a>(field: &'a str, key: &str) -> Option<&'a str> {
    field.strip_prefix(key)?.strip_prefix('=')
}

/// Parses `#rule <gauss|cotes> n=<n> convention=<t|u>` followed by one
/// decimal per line, ascending by node. Blank lines are skipped.
pub fn parse_samples(text: &str) -> Result<Samples, CliError> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let header = lines
        .next()
        .ok_or_else(|| CliError::Data("samples file is empty".into()))?;
    let bad_header = || CliError::Data(format!("malformed samples header: {header:?}"));
    let mut fields = header.split_whitespace();
    if fields.next() != Some("#rule") {
        return Err(bad_header());
    }
    let rule = match fields.next() {
        Some("gauss") => RuleKind::Gauss,
        Some("cotes") => RuleKind::Cotes,
        _ => return Err(bad_header()),
    };
    let (mut n, mut convention) = (None, Convention::T01);
    for field in fields {
        if let Some(v) = header_field(field, "n") {
            n = Some(v.parse::<usize>().map_err(|_| bad_header())?);
        } else if let Some(v) = header_field(field, "convention") {
            convention = match v {
                "t" => Convention::T01,
                "u" => Convention::U11,
                _ => return Err(bad_header()),
            };
        } else {
            return Err(bad_header());
        }
    }
    let n = n.ok_or_else(bad_header)?;
    let values = lines
        .enumerate()
        .map(|(i, line)| {
            line.parse::<Rational>()
                .map_err(|_| CliError::Data(format!("sample {}: cannot parse {line:?}", i + 1)))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let samples = Samples {
        rule,
        n,
        convention,
        values,
    };
    if samples.values.len() != samples.expected_len() {
        return Err(CliError::Data(format!(
            "samples file has {} values, expected {} for n = {}",
            samples.values.len(),
            samples.expected_len(),
            n
        )));
    }
    Ok(samples)
}

fn build_rule(rule: RuleKind, n: usize, precision: Precision) -> Result<QuadRule, CliError> {
    check_order(n)?;
    match rule {
        RuleKind::Gauss => Ok(gauss_rule(n, precision)?.to_convention(Convention::T01)),
        RuleKind::Cotes => newton_cotes(n, precision).map_err(|e| match e {
            Error::InvalidArgument(msg) => CliError::Usage(msg),
            other => other.into(),
        }),
    }
}

fn parse_number(flag: &str, s: &str) -> Result<Rational, CliError> {
    s.parse::<Rational>()
        .map_err(|_| CliError::Usage(format!("--{flag}: cannot parse {s:?}")))
}

/// Exact integral and exact error `∫ - rule` of `p` over `[g, g + Δ]`.
struct ExactCheck {
    integral: Rational,
    error: Rational,
}

fn exact_check(rule: &QuadRule, p: &RatPoly, g: &Rational, delta: &Rational) -> Result<ExactCheck, CliError> {
    let q = p.compose_affine(delta, g);
    let integral = delta * &q.integral_01();
    let error = match q.degree() {
        None => Rational::zero(),
        Some(d) => {
            let k = error_coefficients(rule, d + 1)?;
            delta * &q
                .coeffs()
                .iter()
                .zip(&k.exact)
                .map(|(c, k)| c * k)
                .sum::<Rational>()
        }
    };
    Ok(ExactCheck { integral, error })
}

#[allow(clippy::too_many_arguments)]
pub(crate) fn run(
    rule: RuleKind,
    n: Option<usize>,
    function: Option<&str>,
    samples: Option<&Path>,
    from: &str,
    width: &str,
    format: Format,
    precision: Precision,
) -> Result<String, CliError> {
    let g = parse_number("from", from)?;
    let delta = parse_number("width", width)?;
    if delta.is_zero() {
        return Err(CliError::Usage("--width must be nonzero".into()));
    }
    let bits = precision.bits();
    let g_hp = HpFloat::from_rational(&g, precision);
    let delta_hp = HpFloat::from_rational(&delta, precision);

    let (rule_kind, n, value, exact) = if let Some(path) = samples {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Data(format!("{}: {e}", path.display())))?;
        let s = parse_samples(&text)?;
        if let Some(n) = n {
            if n != s.n {
                return Err(CliError::Data(format!(
                    "--n {n} does not match samples header n={}",
                    s.n
                )));
            }
        }
        let quad = build_rule(s.rule, s.n, precision)?;
        let value = quad
            .weights()
            .iter()
            .zip(&s.values)
            .fold(HpFloat::zero_bits(bits), |acc, (w, y)| {
                &acc + &(w * &HpFloat::from_rational(y, precision))
            });
        (s.rule, s.n, &delta_hp * &value, None)
    } else {
        let name = function.ok_or_else(|| CliError::Usage("one of --fn or --samples is required".into()))?;
        let f: Integrand = name
            .parse()
            .map_err(|e: Error| CliError::Usage(e.to_string()))?;
        let n = n.ok_or_else(|| CliError::Usage("--n is required".into()))?;
        let quad = build_rule(rule, n, precision)?;
        let terms = rule_terms(&quad, |x| f.eval(x), &g_hp, &delta_hp)?;
        let value = terms
            .iter()
            .fold(HpFloat::zero_bits(bits), |acc, t| &acc + t);
        let exact = match f.as_poly() {
            Some(p) => Some(exact_check(&quad, p, &g, &delta)?),
            None => None,
        };
        (rule, n, value, exact)
    };

    let rule_name = match rule_kind {
        RuleKind::Gauss => "gauss",
        RuleKind::Cotes => "cotes",
    };
    let rendered = value.to_sig_digits(VALUE_DIGITS);
    Ok(match format {
        Format::Text => {
            let mut out = format!("{rule_name} n={n}: {rendered}\n");
            if let Some(e) = &exact {
                let _ = writeln!(out, "exact integral: {}", e.integral);
                let _ = writeln!(out, "exact error:    {}", e.error);
            }
            out
        }
        Format::Csv => {
            let mut out = String::from("rule,n,value,exact_integral,exact_error\r\n");
            let (i, e) = exact
                .as_ref()
                .map_or((String::new(), String::new()), |e| (e.integral.to_string(), e.error.to_string()));
            let _ = write!(out, "{rule_name},{n},{rendered},{i},{e}\r\n");
            out
        }
        Format::Json => {
            let mut doc = json!({ "rule": rule_name, "n": n, "value": rendered });
            if let Some(e) = &exact {
                doc["exact_integral"] = json!(e.integral.to_string());
                doc["exact_error"] = json!(e.error.to_string());
            }
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
            s
        }
    })
}

pub(crate) fn error_coeffs(
    rule: RuleKind,
    n: usize,
    count: usize,
    format: Format,
    precision: Precision,
) -> Result<String, CliError> {
    if count > MAX_COEFFS {
        return Err(CliError::Usage(format!(
            "--k {count} exceeds the limit of {MAX_COEFFS}"
        )));
    }
    let quad = build_rule(rule, n, precision)?;
    let series = error_coefficients(&quad, count)?;
    let digits = precision.digits().saturating_sub(10).max(16) as usize;
    let decimals: Vec<String> = series
        .exact
        .iter()
        .map(|k| HpFloat::from_rational(k, precision).to_sig_digits(digits))
        .collect();
    Ok(match format {
        Format::Text => series
            .exact
            .iter()
            .enumerate()
            .map(|(m, k)| format!("k({m}) = {k}\n"))
            .collect(),
        Format::Csv => {
            let mut out = String::from("m,rational,decimal\r\n");
            for (m, (k, d)) in series.exact.iter().zip(&decimals).enumerate() {
                let _ = write!(out, "{m},{k},{d}\r\n");
            }
            out
        }
        Format::Json => {
            let doc = json!({
                "convention": "t",
                "n": n,
                "rational": series.exact.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "decimal": decimals,
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
            s.push('\n');
            s
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Precision {
        Precision::default()
    }

    #[test]
    fn gauss_integrates_cubic_exactly() {
        let out = run(RuleKind::Gauss, Some(1), Some("poly:0,0,0,1"), None, "0", "1", Format::Text, p()).unwrap();
        assert!(out.starts_with("gauss n=1: 0.25000000000000000000\n"), "{out}");
        assert!(out.contains("exact error:    0\n"));
    }

    #[test]
    fn simpson_on_quartic() {
        let out = run(RuleKind::Cotes, Some(2), Some("poly:0,0,0,0,1"), None, "0", "1", Format::Text, p()).unwrap();
        assert!(out.starts_with("cotes n=2: 0.20833333333333333333\n"), "{out}");
        assert!(out.contains("exact integral: 1/5\n"));
        assert!(out.contains("exact error:    -1/120\n"));
    }

    #[test]
    fn exact_error_on_shifted_interval() {
        // Simpson on x^4 over [1, 3]: exact 242/5, rule gives 146/3.
        let out = run(RuleKind::Cotes, Some(2), Some("poly:0,0,0,0,1"), None, "1", "2", Format::Text, p()).unwrap();
        assert!(out.contains("exact integral: 242/5\n"));
        assert!(out.contains(&format!("exact error:    {}\n", Rational::frac(242, 5) - Rational::frac(146, 3))));
    }

    #[test]
    fn unknown_integrand_is_usage_error() {
        let err = run(RuleKind::Gauss, Some(1), Some("sin"), None, "0", "1", Format::Text, p()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn coefficient_lists() {
        let out = error_coeffs(RuleKind::Gauss, 0, 4, Format::Text, p()).unwrap();
        assert_eq!(out, "k(0) = 0\nk(1) = 0\nk(2) = 1/12\nk(3) = 1/8\n");
        let out = error_coeffs(RuleKind::Cotes, 2, 5, Format::Csv, p()).unwrap();
        assert!(out.ends_with("4,-1/120,-0.008333333333333333333333333333333333333333\r\n"), "{out}");
        let out = error_coeffs(RuleKind::Gauss, 1, 5, Format::Json, p()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["rational"], json!(["0", "0", "0", "0", "1/180"]));
        assert_eq!(error_coeffs(RuleKind::Gauss, 1, 65, Format::Text, p()).unwrap_err().exit_code(), 2);
    }

    #[test]
    fn samples_parse_and_count() {
        let s = parse_samples("#rule gauss n=1 convention=t\n0.5\n1.5\n").unwrap();
        assert_eq!(s.values, vec![Rational::frac(1, 2), Rational::frac(3, 2)]);
        let err = parse_samples("#rule gauss n=2 convention=t\n0.5\n1.5\n").unwrap_err();
        assert_eq!(err.exit_code(), 3);
        assert!(err.to_string().contains("has 2 values, expected 3"));
        assert_eq!(parse_samples("0.5\n").unwrap_err().exit_code(), 3);
    }
}
