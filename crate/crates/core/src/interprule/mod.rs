//! Interpolatory quadrature rules, Newton–Cotes rules, error coefficients
//! and rule application.

mod integrand;

pub use integrand::Integrand;

use crate::error::{Error, Result};
use crate::momseries::{cauchy_expansion_of_rule, moment_series_t, moment_series_u, product_split, SeriesTail};
use crate::numerics::{HpFloat, Precision, Rational};
use crate::ratpoly::RatPoly;

/// Variable and measure a rule is expressed in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Convention {
    /// `t` on `[0, 1]` with `dt`.
    T01,
    /// `u` on `[-1, 1]` with `du / 2`.
    U11,
}

impl Convention {
    pub fn moments(self, len: usize) -> SeriesTail {
        match self {
            Convention::T01 => moment_series_t(len),
            Convention::U11 => moment_series_u(len),
        }
    }

    fn bounds(self) -> (Rational, Rational) {
        match self {
            Convention::T01 => (Rational::zero(), Rational::one()),
            Convention::U11 => (Rational::from(-1), Rational::one()),
        }
    }

    pub fn variable(self) -> &'static str {
        match self {
            Convention::T01 => "t",
            Convention::U11 => "u",
        }
    }
}

/// Node input for [`interpolatory_rule`].
#[derive(Debug, Clone)]
pub enum Nodes {
    Exact(Vec<Rational>),
    Approx(Vec<HpFloat>),
}

/// Nodes `a_j` and weights `R_j` such that `∫ f ≈ Σ R_j f(a_j)` under the
/// rule's convention. Nodes are strictly increasing.
#[derive(Debug, Clone)]
pub struct QuadRule {
    convention: Convention,
    precision: Precision,
    nodes: Vec<HpFloat>,
    weights: Vec<HpFloat>,
    exact_nodes: Option<Vec<Rational>>,
    exact_weights: Option<Vec<Rational>>,
    node_poly: Option<RatPoly>,
    degree: usize,
    outside_interval: bool,
}

impl QuadRule {
    #[allow(clippy::too_many_arguments)]
    pub(crate) fn from_parts(
        convention: Convention,
        precision: Precision,
        nodes: Vec<HpFloat>,
        weights: Vec<HpFloat>,
        exact_nodes: Option<Vec<Rational>>,
        exact_weights: Option<Vec<Rational>>,
        node_poly: Option<RatPoly>,
        degree: usize,
    ) -> Self {
        let (lo, hi) = convention.bounds();
        let (lo, hi) = (
            HpFloat::from_rational(&lo, precision),
            HpFloat::from_rational(&hi, precision),
        );
        let outside_interval = nodes.iter().any(|a| *a < lo || *a > hi);
        QuadRule {
            convention,
            precision,
            nodes,
            weights,
            exact_nodes,
            exact_weights,
            node_poly,
            degree,
            outside_interval,
        }
    }

    pub fn convention(&self) -> Convention {
        self.convention
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn nodes(&self) -> &[HpFloat] {
        &self.nodes
    }

    pub fn weights(&self) -> &[HpFloat] {
        &self.weights
    }

    pub fn exact_nodes(&self) -> Option<&[Rational]> {
        self.exact_nodes.as_deref()
    }

    pub fn exact_weights(&self) -> Option<&[Rational]> {
        self.exact_weights.as_deref()
    }

    /// Monic polynomial in the rule's variable whose roots are the nodes.
    pub fn node_poly(&self) -> Option<&RatPoly> {
        self.node_poly.as_ref()
    }

    /// Claimed degree of precision.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Set when some node lies outside the convention's interval. The rule
    /// is still well defined.
    pub fn outside_interval(&self) -> bool {
        self.outside_interval
    }

    /// Re-expresses the rule via `t = (u + 1) / 2`; weights are unchanged
    /// because both measures have unit mass.
    pub fn to_convention(&self, target: Convention) -> QuadRule {
        if target == self.convention {
            return self.clone();
        }
        let one = HpFloat::from_int_bits(1, self.precision.bits());
        let half = Rational::frac(1, 2);
        let map_hp = |x: &HpFloat| match target {
            Convention::T01 => (x + &one).mul_pow2(-1),
            Convention::U11 => x.mul_pow2(1) - &one,
        };
        let map_q = |x: &Rational| match target {
            Convention::T01 => (x + &Rational::one()) * &half,
            Convention::U11 => x.mul_pow2(1) - Rational::one(),
        };
        // T(t) = 2^-d U(2t - 1) and U(u) = 2^d T((u + 1)/2), both monic.
        let node_poly = self.node_poly.as_ref().map(|p| match target {
            Convention::T01 => p.compose_affine(&Rational::from(2), &Rational::from(-1)).monic(),
            Convention::U11 => p.compose_affine(&half, &half).monic(),
        });
        QuadRule {
            convention: target,
            precision: self.precision,
            nodes: self.nodes.iter().map(map_hp).collect(),
            weights: self.weights.clone(),
            exact_nodes: self.exact_nodes.as_ref().map(|v| v.iter().map(map_q).collect()),
            exact_weights: self.exact_weights.clone(),
            node_poly,
            degree: self.degree,
            outside_interval: self.outside_interval,
        }
    }
}

/// Builds the interpolatory rule on the given nodes: `T` from its roots,
/// `T'` as the polynomial part of `T` times the moment series, and weights
/// `R_j = T'(a_j) / T_x(a_j)`.
pub fn interpolatory_rule(nodes: &Nodes, convention: Convention, precision: Precision) -> Result<QuadRule> {
    match nodes {
        Nodes::Exact(nodes) => exact_rule(nodes, convention, precision),
        Nodes::Approx(nodes) => approx_rule(nodes, convention, precision),
    }
}

fn exact_rule(nodes: &[Rational], convention: Convention, precision: Precision) -> Result<QuadRule> {
    if nodes.is_empty() {
        return Err(Error::EmptyRule);
    }
    let mut sorted = nodes.to_vec();
    sorted.sort();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::duplicate(&w[0]));
    }
    let count = sorted.len();
    let node_poly = RatPoly::from_roots(&sorted);
    let (numerator, _) = product_split(&node_poly, &convention.moments(count), 0)?;
    let slope = node_poly.derivative();
    let weights: Vec<Rational> = sorted
        .iter()
        .map(|a| numerator.eval(a) / slope.eval(a))
        .collect();

    // Actual degree: first nonzero moment deficit, which occurs by 2n+2.
    let moments = convention.moments(2 * count + 1);
    let degree = (0..=2 * count)
        .find(|&m| {
            let rule: Rational = sorted
                .iter()
                .zip(&weights)
                .map(|(a, w)| w * &a.pow(m as u32))
                .sum();
            moments.coeffs()[m] != rule
        })
        .expect("an n+1 point rule cannot integrate degree 2n+2")
        - 1;

    Ok(QuadRule::from_parts(
        convention,
        precision,
        sorted.iter().map(|a| HpFloat::from_rational(a, precision)).collect(),
        weights.iter().map(|w| HpFloat::from_rational(w, precision)).collect(),
        Some(sorted),
        Some(weights),
        Some(node_poly),
        degree,
    ))
}

fn approx_rule(nodes: &[HpFloat], convention: Convention, precision: Precision) -> Result<QuadRule> {
    if nodes.is_empty() {
        return Err(Error::EmptyRule);
    }
    let bits = precision.bits();
    let mut sorted: Vec<HpFloat> = nodes.iter().map(|a| a.with_bits(bits)).collect();
    sorted.sort();
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicateNode {
            value: w[0].to_sig_digits(20),
        });
    }
    let moments: Vec<HpFloat> = convention
        .moments(sorted.len())
        .coeffs()
        .iter()
        .map(|m| HpFloat::from_rational(m, precision))
        .collect();
    let weights = (0..sorted.len())
        .map(|j| {
            // T / (t - a_j) and its value at a_j, which is dT/dt there.
            let others: Vec<&HpFloat> = sorted.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, a)| a).collect();
            let cofactor = hp_poly_from_roots(&others, bits);
            let numerator = cofactor
                .iter()
                .zip(&moments)
                .fold(HpFloat::zero_bits(bits), |acc, (c, m)| &acc + &(c * m));
            let slope = others
                .iter()
                .fold(HpFloat::from_int_bits(1, bits), |acc, a| &acc * &(&sorted[j] - *a));
            numerator.checked_div(&slope)
        })
        .collect::<Result<Vec<_>>>()?;
    let degree = sorted.len() - 1;
    Ok(QuadRule::from_parts(
        convention, precision, sorted, weights, None, None, None, degree,
    ))
}

fn hp_poly_from_roots(roots: &[&HpFloat], bits: u32) -> Vec<HpFloat> {
    let mut coeffs = vec![HpFloat::from_int_bits(1, bits)];
    for r in roots {
        let mut next = vec![HpFloat::zero_bits(bits); coeffs.len() + 1];
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] = &next[i + 1] + c;
            next[i] = &next[i] - &(c * *r);
        }
        coeffs = next;
    }
    coeffs
}

/// Closed Newton–Cotes rule with nodes `i/n`, `i = 0..=n`, on `[0, 1]`.
pub fn newton_cotes(n: usize, precision: Precision) -> Result<QuadRule> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "closed Newton-Cotes rules need n >= 1".into(),
        ));
    }
    let nodes: Vec<Rational> = (0..=n as i64).map(|i| Rational::frac(i, n as i64)).collect();
    exact_rule(&nodes, Convention::T01, precision)
}

/// Moment deficits `k(m) = ∫_0^1 t^m dt - Σ R_j a_j^m` in the t convention.
#[derive(Debug, Clone)]
pub struct ErrorSeries {
    /// From `T'' / T`, exact.
    pub exact: Vec<Rational>,
    /// From the rule's own nodes and weights.
    pub direct: Vec<HpFloat>,
}

impl ErrorSeries {
    pub fn len(&self) -> usize {
        self.exact.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exact.is_empty()
    }

    /// `k(m)`.
    pub fn k(&self, m: usize) -> &Rational {
        &self.exact[m]
    }

    /// Largest `d` with `k(0..=d)` all zero, if a nonzero coefficient is
    /// within the computed range.
    pub fn degree(&self) -> Option<usize> {
        self.exact.iter().position(|k| !k.is_zero()).map(|m| m.wrapping_sub(1))
    }
}

/// Computes `k(0) .. k(len-1)` twice: from the rule's moments directly, and
/// by dividing the tail `T''` by `T`. The two must agree (exactly when the
/// rule is rational, to `10^-(P-8)` otherwise).
pub fn error_coefficients(rule: &QuadRule, len: usize) -> Result<ErrorSeries> {
    let rule = rule.to_convention(Convention::T01);
    let node_poly = rule.node_poly().ok_or(Error::MissingNodePolynomial)?;
    let d = node_poly.degree().expect("node polynomial is nonzero");
    let tail_len = len.saturating_sub(d);
    let sigma = moment_series_t(d + tail_len);
    let (_, tail) = product_split(node_poly, &sigma, tail_len)?;
    let series = tail.div_poly(node_poly, len)?;

    let truth = moment_series_t(len);
    let rule_moments = cauchy_expansion_of_rule(&rule, len);
    let precision = rule.precision();
    let direct: Vec<HpFloat> = truth
        .coeffs()
        .iter()
        .zip(&rule_moments.approx)
        .map(|(mu, r)| &HpFloat::from_rational(mu, precision) - r)
        .collect();

    if let Some(exact) = &rule_moments.exact {
        for (m, ((mu, r), s)) in truth.coeffs().iter().zip(exact.coeffs()).zip(series.coeffs()).enumerate() {
            let k = mu - r;
            if k != *s {
                return Err(Error::InconsistentErrorSeries {
                    order: m,
                    direct: k.to_string(),
                    series: s.to_string(),
                });
            }
        }
    }
    let tol = precision.tolerance(8);
    let one = HpFloat::one(precision);
    for (m, (k, s)) in direct.iter().zip(series.coeffs()).enumerate() {
        let s_hp = HpFloat::from_rational(s, precision);
        let scale = std::cmp::max(one.clone(), s_hp.abs());
        if (k - &s_hp).abs() > &tol * &scale {
            return Err(Error::InconsistentErrorSeries {
                order: m,
                direct: k.to_sig_digits(20),
                series: s.to_string(),
            });
        }
    }
    Ok(ErrorSeries {
        exact: series.coeffs().to_vec(),
        direct,
    })
}

/// Per-node contributions `Δ R_j f(x_j)` of the rule mapped onto
/// `[g, g + Δ]`.
pub fn rule_terms<F>(rule: &QuadRule, f: F, g: &HpFloat, delta: &HpFloat) -> Result<Vec<HpFloat>>
where
    F: Fn(&HpFloat) -> Result<HpFloat>,
{
    if delta.is_zero() {
        return Err(Error::ZeroWidth);
    }
    let bits = rule.precision().bits().max(g.precision_bits());
    let one = HpFloat::from_int_bits(1, bits);
    rule.nodes()
        .iter()
        .zip(rule.weights())
        .enumerate()
        .map(|(index, (a, w))| {
            let unit = match rule.convention() {
                Convention::T01 => a.clone(),
                Convention::U11 => (a + &one).mul_pow2(-1),
            };
            let x = g + &(delta * &unit);
            let y = f(&x).map_err(|e| Error::Integrand {
                index,
                message: e.to_string(),
            })?;
            Ok(&(delta * w) * &y)
        })
        .collect()
}

/// `Δ Σ R_j f(g + Δ a_j)` (t convention) or the same with
/// `a_j = (u_j + 1)/2` (u convention).
pub fn apply_rule<F>(rule: &QuadRule, f: F, g: &HpFloat, delta: &HpFloat) -> Result<HpFloat>
where
    F: Fn(&HpFloat) -> Result<HpFloat>,
{
    let terms = rule_terms(rule, f, g, delta)?;
    let bits = rule.precision().bits();
    Ok(terms
        .iter()
        .fold(HpFloat::zero_bits(bits), |acc, t| &acc + t))
}
