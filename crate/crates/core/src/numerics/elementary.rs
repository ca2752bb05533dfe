//! Natural and scaled decimal logarithms.

use super::HpFloat;
use crate::error::{Error, Result};

const GUARD_BITS: u32 = 32;

/// `atanh(z) = z + z^3/3 + z^5/5 + ...` at `bits` of working precision.
/// Intended for `|z| <= 1/3`.
fn atanh_series(z: &HpFloat, bits: u32) -> HpFloat {
    let z = z.with_bits(bits);
    let z2 = &z * &z;
    let mut power = z.clone();
    let mut sum = z;
    let mut k: i64 = 1;
    loop {
        power = &power * &z2;
        k += 2;
        let term = power.checked_div(&int(k, bits)).expect("odd divisor");
        if term.is_zero() || term.top() < sum.top() - bits as i64 - 4 {
            break;
        }
        sum = &sum + &term;
    }
    sum
}

fn int(n: i64, bits: u32) -> HpFloat {
    HpFloat::from_int_bits(n, bits)
}

fn ln2(bits: u32) -> HpFloat {
    let third = int(1, bits).checked_div(&int(3, bits)).expect("nonzero");
    atanh_series(&third, bits).mul_pow2(1)
}

/// Natural logarithm. Writes `x = m * 2^k` with `m` in `[1/sqrt 2, sqrt 2]`
/// and sums `2 atanh((m - 1)/(m + 1)) + k ln 2`.
pub fn hp_ln(x: &HpFloat) -> Result<HpFloat> {
    if x.signum() <= 0 {
        return Err(Error::Domain {
            function: "ln",
            argument: x.to_sig_digits(12),
        });
    }
    let bits = x.precision_bits();
    let wb = bits + GUARD_BITS;
    let (mag, exp) = x.mantissa_parts();
    let len = mag.bits() as i64;
    let mut k = exp + len - 1;
    let mut m = x.mul_pow2(-k).with_bits(wb);
    // sqrt(2) < m  <=>  m^2 > 2
    if &m * &m > int(2, wb) {
        m = m.mul_pow2(-1);
        k += 1;
    }
    let one = int(1, wb);
    let z = (&m - &one).checked_div(&(&m + &one))?;
    let mut result = atanh_series(&z, wb).mul_pow2(1);
    if k != 0 {
        result = &result + &(&ln2(wb) * &int(k, wb));
    }
    Ok(result.with_bits(bits))
}

/// `log10(10^9 * w) = 9 + ln(w) / ln(10)`.
pub fn hp_log10_scaled(w: &HpFloat) -> Result<HpFloat> {
    if w.signum() <= 0 {
        return Err(Error::Domain {
            function: "log10",
            argument: w.to_sig_digits(12),
        });
    }
    let bits = w.precision_bits();
    let wb = bits + GUARD_BITS;
    let ln_w = hp_ln(&w.with_bits(wb))?;
    let ln_10 = hp_ln(&int(10, wb))?;
    let scaled = &int(9, wb) + &ln_w.checked_div(&ln_10)?;
    Ok(scaled.with_bits(bits))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::{Precision, Rational};
    use proptest::prelude::*;

    fn hp(r: Rational) -> HpFloat {
        HpFloat::from_rational(&r, Precision::default())
    }

    #[test]
    fn ln_of_one_is_zero() {
        assert!(hp_ln(&hp(Rational::one())).unwrap().is_zero());
    }

    #[test]
    fn ln_rejects_nonpositive() {
        assert!(matches!(hp_ln(&hp(Rational::zero())), Err(Error::Domain { .. })));
        assert!(hp_ln(&hp(Rational::from(-2))).is_err());
        assert!(hp_log10_scaled(&hp(Rational::zero())).is_err());
    }

    /// Independent route: ln(100000) = 5 ln 10, with ln 10 = 3 ln 2 + ln(5/4)
    /// and both pieces summed from the plain Mercator series of
    /// ln(1 + y) = y - y^2/2 + ...  in exact rationals (y = 1/4) and the
    /// Gregory series for ln 2 = 2 atanh(1/3) at a lower truncation.
    #[test]
    fn ln_100000_matches_independent_series() {
        let mercator = |y: Rational, terms: u32| -> Rational {
            (1..=terms)
                .map(|k| {
                    let t = y.pow(k) / Rational::from(k as i64);
                    if k % 2 == 0 { -t } else { t }
                })
                .sum()
        };
        // ln 2 = -ln(1 - 1/2) = sum (1/2)^k / k
        let ln2: Rational = (1..=200u32)
            .map(|k| Rational::frac(1, 2).pow(k) / Rational::from(k as i64))
            .sum();
        let ln_5_4 = mercator(Rational::frac(1, 4), 90);
        let ln10 = Rational::from(3) * &ln2 + ln_5_4;
        let oracle = hp(Rational::from(5) * ln10);
        let got = hp_ln(&hp(Rational::from(100000))).unwrap();
        assert!((&got - &oracle).abs() < HpFloat::pow10(-45, Precision::default()));
        assert_eq!(got.to_sig_digits(19), "11.51292546497022842");
    }

    #[test]
    fn log10_scaled_values() {
        let p = Precision::default();
        let nine = hp_log10_scaled(&hp(Rational::one())).unwrap();
        assert_eq!(nine, HpFloat::from_int(9, p));
        let half = hp_log10_scaled(&hp(Rational::frac(1, 2))).unwrap();
        assert_eq!(half.to_sig_digits(10), "8.698970004");
        let zero = hp_log10_scaled(&hp(Rational::new(1, 1_000_000_000).unwrap())).unwrap();
        assert!(zero.abs() < HpFloat::pow10(-45, p));
    }

    #[test]
    fn ln_of_small_and_large_powers_of_two() {
        let p = Precision::default();
        let l1 = hp_ln(&HpFloat::from_int(1 << 20, p)).unwrap();
        let l2 = hp_ln(&HpFloat::from_int(2, p)).unwrap();
        let diff = (&l1 - &(&l2 * &HpFloat::from_int(20, p))).abs();
        assert!(diff < HpFloat::pow10(-47, p));
        let inv = hp_ln(&HpFloat::from_rational(&Rational::frac(1, 1 << 20), p)).unwrap();
        assert!((&inv + &l1).abs() < HpFloat::pow10(-47, p));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn ln_is_additive(a in 1u32..1_000_000, b in 1u32..1_000_000, da in 1u32..1000, db in 1u32..1000) {
            let p = Precision::default();
            let x = HpFloat::from_rational(&Rational::frac(a as i64, da as i64), p);
            let y = HpFloat::from_rational(&Rational::frac(b as i64, db as i64), p);
            let lhs = hp_ln(&(&x * &y)).unwrap();
            let rhs = &hp_ln(&x).unwrap() + &hp_ln(&y).unwrap();
            let scale = std::cmp::max(lhs.abs(), HpFloat::one(p));
            let tol = &p.tolerance(6) * &scale;
            prop_assert!((&lhs - &rhs).abs() <= tol);
        }
    }
}
