//! Gaussian rules from the continued fraction of the moment series.
//!
//! The moment series of `du/2` on `[-1, 1]`,
//! `φ(u) = u^-1 + u^-3/3 + u^-5/5 + ...`, has the continued fraction
//!
//! ```text
//! φ = 1 / (u - (1/3) / (u - (4/15) / (u - (9/35) / (u - ...))))
//! ```
//!
//! with partial numerators `v(m) = -m^2 / ((2m-1)(2m+1))`. Its convergents
//! `V(m) / W(m)` satisfy `X(m+1) = u X(m) + v(m) X(m-1)`. `W(m)` is the monic
//! Legendre polynomial of degree `m`; `W(m) φ - V(m)` starts at `u^-(m+1)`,
//! so the roots of `W(n+1)` are the nodes of the `(n+1)`-point rule of
//! degree `2n+1`, and `V(n+1)` is its weight numerator.

use crate::error::{Error, Result};
use crate::interprule::{Convention, QuadRule};
use crate::momseries::product_split;
use crate::numerics::{HpFloat, Precision, Rational};
use crate::ratpoly::{mod_inverse_eval, RatPoly};
use crate::rootfind::real_roots_symmetric;

/// Largest supported rule index `n` (rules with `n + 1` nodes).
pub const MAX_ORDER: usize = 12;

/// Partial numerator `v(m)`; `v(0) = 1` is the leading numerator.
pub fn cf_coefficient(m: usize) -> Rational {
    if m == 0 {
        return Rational::one();
    }
    let m = m as i64;
    Rational::frac(-m * m, (2 * m - 1) * (2 * m + 1))
}

/// Convergent numerator `v` and denominator `w` of order `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct LegendrePair {
    pub m: usize,
    /// Monic, degree `m`.
    pub w: RatPoly,
    /// Degree `m - 1` and monic for `m >= 1`; zero for `m = 0`.
    pub v: RatPoly,
}

pub fn legendre_pair(m: usize) -> LegendrePair {
    let u = RatPoly::monomial(Rational::one(), 1);
    let (mut v_prev, mut w_prev) = (RatPoly::zero(), RatPoly::one());
    if m == 0 {
        return LegendrePair { m, w: w_prev, v: v_prev };
    }
    let (mut v, mut w) = (RatPoly::one(), u.clone());
    for k in 1..m {
        let c = cf_coefficient(k);
        let v_next = &(&u * &v) + &v_prev.scale(&c);
        let w_next = &(&u * &w) + &w_prev.scale(&c);
        v_prev = std::mem::replace(&mut v, v_next);
        w_prev = std::mem::replace(&mut w, w_next);
    }
    LegendrePair { m, w, v }
}

/// The `(n+1)`-point Gaussian rule in the u convention, of degree `2n+1`.
/// Use [`QuadRule::to_convention`] for the t form.
pub fn gauss_rule(n: usize, precision: Precision) -> Result<QuadRule> {
    if n > MAX_ORDER {
        return Err(Error::UnsupportedOrder { n, max: MAX_ORDER });
    }
    let pair = legendre_pair(n + 1);
    let roots = real_roots_symmetric(&pair.w, precision)?.roots;
    let slope = pair.w.derivative();
    let weights = roots
        .iter()
        .map(|b| pair.v.eval_hp(b).checked_div(&slope.eval_hp(b)))
        .collect::<Result<Vec<_>>>()?;
    let (exact_nodes, exact_weights) = if n == 0 {
        (Some(vec![Rational::zero()]), Some(vec![Rational::one()]))
    } else {
        (None, None)
    };
    Ok(QuadRule::from_parts(
        Convention::U11,
        precision,
        roots,
        weights,
        exact_nodes,
        exact_weights,
        Some(pair.w),
        2 * n + 1,
    ))
}

/// Rational polynomial `ρ` of degree at most `n` with `ρ(b_j) = R_j` at the
/// nodes of [`gauss_rule`]`(n)`: `V(n+1) / W(n+1)'` reduced modulo `W(n+1)`.
pub fn weight_polynomial(n: usize) -> Result<RatPoly> {
    let pair = legendre_pair(n + 1);
    mod_inverse_eval(&pair.v, &pair.w.derivative(), &pair.w)
}

/// First nonzero error term of the `(n+1)`-point Gaussian rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeadingError {
    /// Coefficient of `u^-(2n+3)` in `φ - V/W`: `|v(0) v(1) ... v(n+1)|`.
    pub u_constant: Rational,
    /// `k(2n+2)` in the t convention, `u_constant / 4^(n+1)`.
    pub k_first: Rational,
}

pub fn leading_error_constant(n: usize) -> LeadingError {
    let u_constant: Rational = (0..=n + 1).map(|m| cf_coefficient(m).abs()).product();
    let k_first = u_constant.mul_pow2(-2 * (n as i64 + 1));
    LeadingError { u_constant, k_first }
}

/// The monic degree-`n+1` polynomial whose product with the moment series
/// has no terms in `x^-1 .. x^-(n+1)`, found by solving the linear system
/// for its lower coefficients directly.
pub fn annihilating_polynomial(n: usize, convention: Convention) -> Result<RatPoly> {
    let d = n + 1;
    let sigma = convention.moments(2 * d);
    let s = sigma.coeffs();
    // Σ_i α_i s_{i+j} = -s_{d+j}, j = 0..d
    let matrix: Vec<Vec<Rational>> = (0..d)
        .map(|j| (0..d).map(|i| s[i + j].clone()).collect())
        .collect();
    let rhs: Vec<Rational> = (0..d).map(|j| -&s[d + j]).collect();
    let mut coeffs = solve_exact(matrix, rhs)?;
    coeffs.push(Rational::one());
    let poly = RatPoly::new(coeffs);
    debug_assert!(product_split(&poly, &sigma, d)
        .map(|(_, tail)| tail.coeffs().iter().all(Rational::is_zero))
        .unwrap_or(false));
    Ok(poly)
}

/// Gauss–Jordan elimination over the rationals.
fn solve_exact(mut a: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Result<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::InvalidArgument("singular moment system".into()))?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        let inv = a[col][col].recip()?;
        for x in &mut a[col][col..] {
            *x *= &inv;
        }
        b[col] *= &inv;
        let pivot_row = a[col].clone();
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for (x, p) in a[r][col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &(&f * p);
            }
            let delta = &f * &b[col];
            b[r] -= &delta;
        }
    }
    Ok(b)
}

/// Nodes and weights evaluated from the weight polynomial, for cross-checks.
pub fn weights_from_polynomial(rho: &RatPoly, nodes: &[HpFloat]) -> Vec<HpFloat> {
    nodes.iter().map(|b| rho.eval_hp(b)).collect()
}
