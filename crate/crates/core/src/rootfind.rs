//! Real roots of a polynomial with definite parity, all simple and inside
//! `(-1, 1)`.
//!
//! `W(u) = u^s Q(u^2)`: sign changes of `Q(u^2)` on a uniform grid over
//! `(0, 1]` isolate the positive roots (the grid is evaluated exactly in
//! rationals), each bracket is polished by safeguarded Newton iteration on
//! `W`, and the negative roots follow by symmetry.

use crate::error::{Error, Result};
use crate::numerics::{HpFloat, Precision, Rational};
use crate::ratpoly::RatPoly;

const MAX_PANELS: i64 = 1 << 10;
const MAX_ITERATIONS: usize = 2000;
const GUARD_BITS: u32 = 16;

#[derive(Debug, Clone)]
pub struct RootSet {
    /// Strictly increasing.
    pub roots: Vec<HpFloat>,
    /// `max |W(r)| / |W'(r)|` over the returned roots.
    pub residual_bound: HpFloat,
}

enum Bracket {
    Exact(Rational),
    Sign(Rational, Rational),
}

pub fn real_roots_symmetric(w: &RatPoly, precision: Precision) -> Result<RootSet> {
    let fail = |reason: &str| Error::RootPrecondition {
        reason: reason.to_string(),
    };
    let degree = w.degree().ok_or_else(|| fail("zero polynomial"))?;
    if !w.is_monic() {
        return Err(fail("polynomial is not monic"));
    }
    let s = w.parity().ok_or_else(|| fail("polynomial has mixed parity"))?;
    let reduced = RatPoly::new(w.coeffs().iter().skip(s).step_by(2).cloned().collect());
    let reduced_degree = (degree - s) / 2;
    if reduced.coeff(0).is_zero() && degree > 0 {
        return Err(fail("multiple root at the origin"));
    }
    if reduced.eval(&Rational::one()).is_zero() {
        return Err(fail("root on the interval boundary"));
    }

    let brackets = isolate(&reduced, reduced_degree)?;
    let bits = precision.bits() + GUARD_BITS;
    let slope = w.derivative();
    let tol = HpFloat::pow10(-(precision.digits() as i32 - 5), precision).with_bits(bits);

    let mut positive = Vec::with_capacity(brackets.len());
    for b in brackets {
        let root = match b {
            Bracket::Exact(r) => HpFloat::from_rational_bits(&r, bits),
            Bracket::Sign(lo, hi) => polish(w, &slope, &lo, &hi, &tol, bits)?,
        };
        positive.push(root.with_precision(precision));
    }

    let mut roots: Vec<HpFloat> = positive.iter().rev().map(|r| -r).collect();
    if s == 1 {
        roots.push(HpFloat::zero(precision));
    }
    roots.extend(positive);

    let residual_bound = roots
        .iter()
        .map(|r| {
            let r = r.with_bits(bits);
            let d = slope.eval_hp(&r);
            w.eval_hp(&r).abs().checked_div(&d.abs()).unwrap_or_else(|_| d.abs())
        })
        .max()
        .unwrap_or_else(|| HpFloat::zero(precision))
        .with_precision(precision);

    Ok(RootSet {
        roots,
        residual_bound,
    })
}

/// Brackets for the roots of `q(u^2)` with `u` in `(0, 1)`.
fn isolate(reduced: &RatPoly, expected: usize) -> Result<Vec<Bracket>> {
    if expected == 0 {
        return Ok(Vec::new());
    }
    let mut panels = 4i64;
    let mut found = 0;
    while panels <= MAX_PANELS {
        let mut brackets = Vec::new();
        let mut prev: Option<(Rational, i32)> = None;
        for k in 0..=panels {
            let u = Rational::frac(k, panels);
            let sign = reduced.eval(&(&u * &u)).signum();
            if sign == 0 {
                brackets.push(Bracket::Exact(u));
                prev = None;
                continue;
            }
            if let Some((lo, prev_sign)) = &prev {
                if *prev_sign != sign {
                    brackets.push(Bracket::Sign(lo.clone(), u.clone()));
                }
            }
            prev = Some((u, sign));
        }
        found = brackets.len();
        if found == expected {
            return Ok(brackets);
        }
        panels *= 2;
    }
    Err(Error::RootIsolation { expected, found })
}

/// Newton iteration kept inside `[lo, hi]`; falls back to bisection when a
/// step leaves the bracket.
fn polish(
    w: &RatPoly,
    slope: &RatPoly,
    lo: &Rational,
    hi: &Rational,
    tol: &HpFloat,
    bits: u32,
) -> Result<HpFloat> {
    let mut lo = HpFloat::from_rational_bits(lo, bits);
    let mut hi = HpFloat::from_rational_bits(hi, bits);
    let lo_sign = w.eval_hp(&lo).signum();
    let mut x = (&lo + &hi).mul_pow2(-1);
    for _ in 0..MAX_ITERATIONS {
        let fx = w.eval_hp(&x);
        if fx.is_zero() {
            return Ok(x);
        }
        if fx.signum() == lo_sign {
            lo = x.clone();
        } else {
            hi = x.clone();
        }
        let dfx = slope.eval_hp(&x);
        let newton = if dfx.is_zero() {
            None
        } else {
            let step = fx.checked_div(&dfx)?;
            let next = &x - &step;
            (next > lo && next < hi).then_some((next, step))
        };
        match newton {
            Some((next, step)) => {
                x = next;
                if step.abs() <= *tol {
                    return Ok(x);
                }
            }
            None => {
                x = (&lo + &hi).mul_pow2(-1);
                if &hi - &lo <= *tol {
                    return Ok(x);
                }
            }
        }
    }
    Err(Error::RootStalled {
        lo: lo.to_sig_digits(20),
        hi: hi.to_sig_digits(20),
    })
}
