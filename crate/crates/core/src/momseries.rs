//! Formal series in descending powers and the polynomial/tail split.
//!
//! A [`SeriesTail`] stores `c[0] x^-1 + c[1] x^-2 + ...` truncated to an
//! explicit number of coefficients. The moment series of a measure `μ` is
//! `Σ μ_m x^-(m+1)`, the formal expansion of `∫ dμ(s) / (x - s)`.
//!
//! Multiplying a node polynomial `T` by the moment series splits into a
//! polynomial part `T'` and a tail `T''`. The weights of the interpolatory
//! rule on the roots of `T` are `T'(a) / T_x(a)`, and `T'' / T` is the error
//! series whose coefficients are the moment deficits `k(m)`.

use crate::error::{Error, Result};
use crate::interprule::QuadRule;
use crate::numerics::{HpFloat, Rational};
use crate::ratpoly::RatPoly;

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SeriesTail {
    coeffs: Vec<Rational>,
}

impl SeriesTail {
    pub fn new(coeffs: Vec<Rational>) -> Self {
        SeriesTail { coeffs }
    }

    pub fn zeros(len: usize) -> Self {
        SeriesTail::new(vec![Rational::zero(); len])
    }

    /// Number of stored coefficients (the truncation order).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^-(m+1)`.
    pub fn coeff(&self, m: usize) -> Option<&Rational> {
        self.coeffs.get(m)
    }

    pub fn truncated(&self, len: usize) -> Self {
        SeriesTail::new(self.coeffs.iter().take(len).cloned().collect())
    }

    /// Index of the first nonzero coefficient.
    pub fn leading_index(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Descending expansion of `num / den` (`deg num < deg den`), first
    /// `len` coefficients.
    pub fn from_rational_function(num: &RatPoly, den: &RatPoly, len: usize) -> Result<Self> {
        laurent_quotient(num, None, den, len)
    }

    /// Descending expansion of `self / den`, first `len` coefficients. The
    /// result starts with `deg den` zeros.
    pub fn div_poly(&self, den: &RatPoly, len: usize) -> Result<Self> {
        laurent_quotient(&RatPoly::zero(), Some(self), den, len)
    }
}

/// Expansion of `(poly + tail) / den` in descending powers. `tail = None`
/// means an exact zero tail. `poly` must have degree below `den` so the
/// quotient has no polynomial part.
pub fn laurent_quotient(
    poly: &RatPoly,
    tail: Option<&SeriesTail>,
    den: &RatPoly,
    len: usize,
) -> Result<SeriesTail> {
    let d = den.degree().ok_or(Error::DivisionByZero)?;
    if let Some(p) = poly.degree() {
        if p >= d {
            return Err(Error::ImproperFraction {
                numerator: p,
                denominator: d,
            });
        }
    }
    if let Some(tail) = tail {
        let needed = len.saturating_sub(d);
        if tail.len() < needed {
            return Err(Error::Truncated {
                needed,
                available: tail.len(),
            });
        }
    }
    // Coefficient of x^p in the numerator.
    let numerator = |p: i64| -> Rational {
        if p >= 0 {
            poly.coeff(p as usize)
        } else {
            tail.and_then(|t| t.coeff((-p - 1) as usize).cloned())
                .unwrap_or_else(Rational::zero)
        }
    };
    let lead = den.leading().expect("nonzero");
    let mut out: Vec<Rational> = Vec::with_capacity(len);
    for m in 0..len {
        let mut acc = numerator(d as i64 - 1 - m as i64);
        for i in 0..d {
            if let Some(idx) = (m + i).checked_sub(d) {
                acc -= &(&den.coeff(i) * &out[idx]);
            }
        }
        out.push(&acc / lead);
    }
    Ok(SeriesTail::new(out))
}

/// Moments of `dt` on `[0, 1]`: `c[m] = 1/(m+1)`.
pub fn moment_series_t(len: usize) -> SeriesTail {
    SeriesTail::new((0..len).map(|m| Rational::frac(1, m as i64 + 1)).collect())
}

/// Moments of `du/2` on `[-1, 1]`: `c[m] = 1/(m+1)` for even `m`, else 0.
/// This is the expansion of `(1/2) ln((u+1)/(u-1))`.
pub fn moment_series_u(len: usize) -> SeriesTail {
    SeriesTail::new(
        (0..len)
            .map(|m| {
                if m % 2 == 0 {
                    Rational::frac(1, m as i64 + 1)
                } else {
                    Rational::zero()
                }
            })
            .collect(),
    )
}

/// Splits `T * sigma` into its polynomial part and the first `tail_len`
/// coefficients of the remaining descending series.
///
/// `sigma` must hold at least `deg T + tail_len` coefficients.
pub fn product_split(
    node_poly: &RatPoly,
    sigma: &SeriesTail,
    tail_len: usize,
) -> Result<(RatPoly, SeriesTail)> {
    let Some(d) = node_poly.degree() else {
        return Ok((RatPoly::zero(), SeriesTail::zeros(tail_len)));
    };
    let needed = d + tail_len;
    if sigma.len() < needed.max(d) {
        return Err(Error::Truncated {
            needed: needed.max(d),
            available: sigma.len(),
        });
    }
    let t = node_poly.coeffs();
    // x^p, p >= 0: sum over i > p of t_i * sigma_{i-p-1}
    let poly = RatPoly::new(
        (0..d)
            .map(|p| ((p + 1)..=d).map(|i| &t[i] * &sigma.coeffs[i - p - 1]).sum())
            .collect(),
    );
    // x^-(j+1): sum over i of t_i * sigma_{i+j}
    let tail = SeriesTail::new(
        (0..tail_len)
            .map(|j| (0..=d).map(|i| &t[i] * &sigma.coeffs[i + j]).sum())
            .collect(),
    );
    Ok((poly, tail))
}

/// Rule moments `Σ_j R_j a_j^m`, the expansion of `Σ_j R_j / (x - a_j)`.
#[derive(Clone, Debug)]
pub struct RuleMoments {
    pub approx: Vec<HpFloat>,
    /// Present when the rule's nodes and weights are exact rationals.
    pub exact: Option<SeriesTail>,
}

pub fn cauchy_expansion_of_rule(rule: &QuadRule, len: usize) -> RuleMoments {
    let bits = rule.precision().bits();
    let approx = (0..len)
        .map(|m| {
            rule.nodes()
                .iter()
                .zip(rule.weights())
                .fold(HpFloat::zero_bits(bits), |acc, (a, w)| {
                    &acc + &(w * &hp_pow(a, m, bits))
                })
        })
        .collect();
    let exact = match (rule.exact_nodes(), rule.exact_weights()) {
        (Some(nodes), Some(weights)) => Some(SeriesTail::new(
            (0..len)
                .map(|m| {
                    nodes
                        .iter()
                        .zip(weights)
                        .map(|(a, w)| w * &a.pow(m as u32))
                        .sum()
                })
                .collect(),
        )),
        _ => None,
    };
    RuleMoments { approx, exact }
}

fn hp_pow(x: &HpFloat, k: usize, bits: u32) -> HpFloat {
    (0..k).fold(HpFloat::from_int_bits(1, bits), |acc, _| &acc * x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::interprule::{interpolatory_rule, Convention, Nodes};
    use crate::numerics::Precision;
    use proptest::prelude::*;

    fn q(p: i64, d: i64) -> Rational {
        Rational::frac(p, d)
    }

    #[test]
    fn moment_series_examples() {
        assert_eq!(moment_series_t(3).coeffs(), &[q(1, 1), q(1, 2), q(1, 3)]);
        assert_eq!(moment_series_t(1).coeffs(), &[q(1, 1)]);
        assert_eq!(moment_series_t(10).coeff(9), Some(&q(1, 10)));

        assert_eq!(
            moment_series_u(5).coeffs(),
            &[q(1, 1), q(0, 1), q(1, 3), q(0, 1), q(1, 5)]
        );
        assert_eq!(moment_series_u(7).coeff(6), Some(&q(1, 7)));
        assert!(moment_series_u(40).coeffs().iter().skip(1).step_by(2).all(Rational::is_zero));
    }

    #[test]
    fn moment_series_u_is_half_measure_moments() {
        let s = moment_series_u(12);
        for m in 0..12 {
            let half = RatPoly::monomial(q(1, 2), m).integral_pm1();
            assert_eq!(s.coeff(m), Some(&half));
        }
    }

    #[test]
    fn split_of_midpoint_node_polynomial() {
        let t = RatPoly::from_roots(&[q(1, 2)]);
        let (poly, tail) = product_split(&t, &moment_series_t(8), 4).unwrap();
        assert_eq!(poly, RatPoly::one());
        // tail_j = 1/(j+2) - 1/(2(j+1))
        assert_eq!(tail.coeffs(), &[q(0, 1), q(1, 12), q(1, 12), q(3, 40)]);
        // dividing by T gives the moment deficits 1/(m+1) - (1/2)^m
        let theta = tail.div_poly(&t, 4).unwrap();
        assert_eq!(theta.coeffs(), &[q(0, 1), q(0, 1), q(1, 12), q(1, 8)]);
    }

    #[test]
    fn split_of_constant_is_all_tail() {
        let sigma = moment_series_t(5);
        let (poly, tail) = product_split(&RatPoly::one(), &sigma, 5).unwrap();
        assert!(poly.is_zero());
        assert_eq!(tail, sigma);
    }

    #[test]
    fn split_of_two_point_u_polynomial() {
        let u2 = RatPoly::new(vec![q(-1, 3), q(0, 1), q(1, 1)]);
        let (poly, tail) = product_split(&u2, &moment_series_u(10), 6).unwrap();
        assert_eq!(poly, RatPoly::monomial(q(1, 1), 1));
        assert_eq!(tail.leading_index(), Some(2));
        assert_eq!(tail.coeff(2), Some(&q(4, 45)));
        // phi - u/(u^2 - 1/3) starts at u^-5 with the same constant
        let diff = tail.div_poly(&u2, 6).unwrap();
        assert_eq!(diff.leading_index(), Some(4));
        assert_eq!(diff.coeff(4), Some(&q(4, 45)));
    }

    #[test]
    fn truncation_is_reported() {
        let t = RatPoly::from_roots(&[q(0, 1), q(1, 1)]);
        assert_eq!(
            product_split(&t, &moment_series_t(3), 2),
            Err(Error::Truncated { needed: 4, available: 3 })
        );
        assert!(matches!(
            moment_series_t(2).div_poly(&t, 6),
            Err(Error::Truncated { .. })
        ));
    }

    #[test]
    fn improper_quotient_is_rejected() {
        let t = RatPoly::from_roots(&[q(1, 2)]);
        assert!(matches!(
            SeriesTail::from_rational_function(&t, &t, 3),
            Err(Error::ImproperFraction { .. })
        ));
    }

    #[test]
    fn cauchy_expansion_examples() {
        let p = Precision::default();
        let mid = interpolatory_rule(&Nodes::Exact(vec![q(1, 2)]), Convention::T01, p).unwrap();
        let e = cauchy_expansion_of_rule(&mid, 3);
        assert_eq!(e.exact.unwrap().coeffs(), &[q(1, 1), q(1, 2), q(1, 4)]);
        assert_eq!(e.approx[2], HpFloat::from_rational(&q(1, 4), p));

        let trap =
            interpolatory_rule(&Nodes::Exact(vec![q(0, 1), q(1, 1)]), Convention::T01, p).unwrap();
        let e = cauchy_expansion_of_rule(&trap, 3);
        assert_eq!(e.exact.unwrap().coeffs(), &[q(1, 1), q(1, 2), q(1, 2)]);

        let e = cauchy_expansion_of_rule(&mid, 0);
        assert!(e.approx.is_empty());
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-12i64..12, 1i64..7).prop_map(|(p, d)| Rational::frac(p, d))
    }

    proptest! {
        #[test]
        fn split_recombines(lower in prop::collection::vec(small_rational(), 0..=6), uses_u in any::<bool>()) {
            let mut c = lower.clone();
            c.push(Rational::one());
            let t = RatPoly::new(c);
            let d = t.degree().unwrap();
            let k = 10;
            let sigma = if uses_u { moment_series_u(d + k) } else { moment_series_t(d + k) };
            let (poly, tail) = product_split(&t, &sigma, k).unwrap();
            prop_assert!(poly.degree().map_or(d == 0, |p| p + 1 == d));
            prop_assert_eq!(poly.leading().cloned().unwrap_or(Rational::zero()),
                            if d == 0 { Rational::zero() } else { sigma.coeffs()[0].clone() });
            let back = laurent_quotient(&poly, Some(&tail), &t, k).unwrap();
            prop_assert_eq!(back, sigma.truncated(k));
        }

        #[test]
        fn rule_moments_match_node_polynomial_quotient(
            nodes in prop::collection::btree_set((0i64..30, 1i64..8), 1..6)
        ) {
            let mut nodes: Vec<Rational> = nodes.into_iter().map(|(p, d)| Rational::frac(p % (d + 1), d)).collect();
            nodes.sort();
            nodes.dedup();
            let p = Precision::default();
            let rule = interpolatory_rule(&Nodes::Exact(nodes.clone()), Convention::T01, p).unwrap();
            let t = RatPoly::from_roots(&nodes);
            let (numer, _) = product_split(&t, &moment_series_t(nodes.len()), 0).unwrap();
            let k = 12;
            let lhs = cauchy_expansion_of_rule(&rule, k).exact.unwrap();
            let rhs = SeriesTail::from_rational_function(&numer, &t, k).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
