//! Binary floating point with a runtime-selected number of decimal digits.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Pow, ToPrimitive, Zero};

use super::Rational;
use crate::error::{Error, Result};

const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Working precision in significant decimal digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Precision(u32);

impl Precision {
    pub const DEFAULT_DIGITS: u32 = 50;
    pub const MIN_DIGITS: u32 = 40;

    pub fn new(digits: u32) -> Result<Self> {
        if digits < Self::MIN_DIGITS {
            return Err(Error::PrecisionTooLow {
                requested: digits,
                minimum: Self::MIN_DIGITS,
            });
        }
        Ok(Precision(digits))
    }

    pub fn digits(self) -> u32 {
        self.0
    }

    /// Mantissa width: enough bits for `digits` decimals plus eight guard bits.
    pub fn bits(self) -> u32 {
        (self.0 as f64 * LOG2_10).ceil() as u32 + 8
    }

    /// `10^-(digits - slack)` at this precision.
    pub fn tolerance(self, slack: u32) -> HpFloat {
        HpFloat::pow10(-(self.0 as i32 - slack as i32), self)
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision(Self::DEFAULT_DIGITS)
    }
}

/// `(-1)^neg * mag * 2^exp`, with `mag` holding exactly `bits` bits unless
/// the value is zero. Every operation rounds half-to-even to `bits`.
#[derive(Clone)]
pub struct HpFloat {
    neg: bool,
    mag: BigUint,
    exp: i64,
    bits: u32,
}

impl HpFloat {
    pub(crate) fn zero_bits(bits: u32) -> Self {
        HpFloat {
            neg: false,
            mag: BigUint::zero(),
            exp: 0,
            bits,
        }
    }

    pub fn zero(prec: Precision) -> Self {
        Self::zero_bits(prec.bits())
    }

    pub fn one(prec: Precision) -> Self {
        Self::from_int(1, prec)
    }

    pub fn from_int(n: i64, prec: Precision) -> Self {
        Self::round(n < 0, BigUint::from(n.unsigned_abs()), 0, prec.bits(), false)
    }

    pub fn from_rational(r: &Rational, prec: Precision) -> Self {
        Self::from_rational_bits(r, prec.bits())
    }

    pub(crate) fn from_rational_bits(r: &Rational, bits: u32) -> Self {
        Self::from_ratio_bits(r.numer(), r.denom(), bits)
    }

    pub(crate) fn from_int_bits(n: i64, bits: u32) -> Self {
        Self::round(n < 0, BigUint::from(n.unsigned_abs()), 0, bits, false)
    }

    fn from_ratio_bits(num: &BigInt, den: &BigInt, bits: u32) -> Self {
        if num.is_zero() {
            return Self::zero_bits(bits);
        }
        let neg = (num.sign() == Sign::Minus) != (den.sign() == Sign::Minus);
        let n = num.magnitude();
        let d = den.magnitude();
        let shift = bits as u64 + 2 + d.bits();
        let (q, r) = (n << shift).div_rem(d);
        Self::round(neg, q, -(shift as i64), bits, !r.is_zero())
    }

    /// Exact conversion of a finite `f64`, then rounded to `prec`.
    pub fn from_f64(x: f64, prec: Precision) -> Self {
        assert!(x.is_finite(), "non-finite f64");
        if x == 0.0 {
            return Self::zero(prec);
        }
        let raw = x.to_bits();
        let neg = raw >> 63 == 1;
        let biased = ((raw >> 52) & 0x7ff) as i64;
        let frac = raw & ((1u64 << 52) - 1);
        let (m, e) = if biased == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        Self::round(neg, BigUint::from(m), e, prec.bits(), false)
    }

    pub fn pow10(k: i32, prec: Precision) -> Self {
        let p = Pow::pow(&BigInt::from(10), k.unsigned_abs());
        if k >= 0 {
            Self::from_ratio_bits(&p, &BigInt::one(), prec.bits())
        } else {
            Self::from_ratio_bits(&BigInt::one(), &p, prec.bits())
        }
    }

    fn round(neg: bool, mag: BigUint, exp: i64, bits: u32, sticky: bool) -> Self {
        if mag.is_zero() {
            return Self::zero_bits(bits);
        }
        let len = mag.bits();
        let target = bits as u64;
        if len <= target {
            let shift = target - len;
            return HpFloat {
                neg,
                mag: mag << shift,
                exp: exp - shift as i64,
                bits,
            };
        }
        let shift = len - target;
        let mut q = &mag >> shift;
        let rem = mag - (&q << shift);
        let half = BigUint::one() << (shift - 1);
        let round_up = match rem.cmp(&half) {
            Ordering::Greater => true,
            Ordering::Less => false,
            Ordering::Equal => sticky || q.is_odd(),
        };
        let mut exp = exp + shift as i64;
        if round_up {
            q += 1u32;
            if q.bits() > target {
                q >>= 1;
                exp += 1;
            }
        }
        HpFloat {
            neg,
            mag: q,
            exp,
            bits,
        }
    }

    pub fn with_precision(&self, prec: Precision) -> Self {
        self.with_bits(prec.bits())
    }

    pub(crate) fn with_bits(&self, bits: u32) -> Self {
        Self::round(self.neg, self.mag.clone(), self.exp, bits, false)
    }

    pub fn precision_bits(&self) -> u32 {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.mag.is_zero()
    }

    pub fn signum(&self) -> i32 {
        if self.mag.is_zero() {
            0
        } else if self.neg {
            -1
        } else {
            1
        }
    }

    pub fn abs(&self) -> Self {
        HpFloat {
            neg: false,
            ..self.clone()
        }
    }

    /// Multiplies by `2^k`; exact.
    pub fn mul_pow2(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        HpFloat {
            exp: self.exp + k,
            ..self.clone()
        }
    }

    /// Exponent of the leading bit: `2^(top-1) <= |x| < 2^top`.
    pub(crate) fn top(&self) -> i64 {
        self.exp + self.mag.bits() as i64
    }

    pub(crate) fn mantissa_parts(&self) -> (&BigUint, i64) {
        (&self.mag, self.exp)
    }

    fn add_signed(&self, rhs: &HpFloat, rhs_neg: bool) -> HpFloat {
        let bits = self.bits.max(rhs.bits);
        if rhs.is_zero() {
            return self.with_bits(bits);
        }
        if self.is_zero() {
            return Self::round(rhs_neg, rhs.mag.clone(), rhs.exp, bits, false);
        }
        // Operands far apart: the smaller one lies below the rounding bit.
        let gap = bits as i64 + 3;
        if self.top() - rhs.top() > gap {
            return self.with_bits(bits);
        }
        if rhs.top() - self.top() > gap {
            return Self::round(rhs_neg, rhs.mag.clone(), rhs.exp, bits, false);
        }
        let e = self.exp.min(rhs.exp);
        let a = &self.mag << (self.exp - e) as u64;
        let b = &rhs.mag << (rhs.exp - e) as u64;
        let (neg, mag) = if self.neg == rhs_neg {
            (self.neg, a + b)
        } else if a >= b {
            (self.neg, a - b)
        } else {
            (rhs_neg, b - a)
        };
        Self::round(neg, mag, e, bits, false)
    }

    pub fn checked_div(&self, rhs: &HpFloat) -> Result<HpFloat> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let bits = self.bits.max(rhs.bits);
        if self.is_zero() {
            return Ok(Self::zero_bits(bits));
        }
        let shift = bits as u64 + 2 + rhs.mag.bits();
        let (q, r) = (&self.mag << shift).div_rem(&rhs.mag);
        Ok(Self::round(
            self.neg != rhs.neg,
            q,
            self.exp - shift as i64 - rhs.exp,
            bits,
            !r.is_zero(),
        ))
    }

    /// The exact binary value as a fraction.
    pub fn to_rational(&self) -> Rational {
        let m = BigInt::from_biguint(
            if self.neg { Sign::Minus } else { Sign::Plus },
            self.mag.clone(),
        );
        Rational::from_integer(m).mul_pow2(self.exp)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let len = self.mag.bits();
        let keep = len.min(64);
        let top = (&self.mag >> (len - keep)).to_u64().unwrap_or(u64::MAX);
        let e = self.exp + (len - keep) as i64;
        let e = e.clamp(-4000, 4000) as i32;
        let v = top as f64 * 2f64.powi(e / 2) * 2f64.powi(e - e / 2);
        if self.neg {
            -v
        } else {
            v
        }
    }

    /// Decimal rendering with exactly `digits` significant digits, rounded
    /// half-to-even, in positional notation.
    pub fn to_sig_digits(&self, digits: usize) -> String {
        assert!(digits >= 1);
        if self.is_zero() {
            return if digits == 1 {
                "0".to_string()
            } else {
                format!("0.{}", "0".repeat(digits - 1))
            };
        }
        let exact = self.to_rational().abs();
        let mut e10 = ((self.top() - 1) as f64 * std::f64::consts::LOG10_2).floor() as i64;
        let lower = Pow::pow(&BigInt::from(10), (digits - 1) as u32);
        let upper = &lower * 10;
        let n = loop {
            let n = scale10(&exact, digits as i64 - 1 - e10).round_half_even();
            if n >= upper {
                e10 += 1;
            } else if n < lower {
                e10 -= 1;
            } else {
                break n;
            }
        };
        let s = n.to_string();
        let point = e10 + 1;
        let body = if point <= 0 {
            format!("0.{}{}", "0".repeat((-point) as usize), s)
        } else if point as usize >= s.len() {
            format!("{}{}", s, "0".repeat(point as usize - s.len()))
        } else {
            let (int, frac) = s.split_at(point as usize);
            format!("{int}.{frac}")
        };
        if self.neg {
            format!("-{body}")
        } else {
            body
        }
    }

    /// Decimal rendering with `decimals` digits after the point, rounded
    /// half-to-even.
    pub fn to_fixed(&self, decimals: usize) -> String {
        let n = scale10(&self.to_rational(), decimals as i64).round_half_even();
        let neg = n.sign() == Sign::Minus;
        let mut s = n.magnitude().to_string();
        if s.len() <= decimals {
            s = format!("{}{}", "0".repeat(decimals + 1 - s.len()), s);
        }
        let body = if decimals == 0 {
            s
        } else {
            let (int, frac) = s.split_at(s.len() - decimals);
            format!("{int}.{frac}")
        };
        if neg {
            format!("-{body}")
        } else {
            body
        }
    }
}

fn scale10(x: &Rational, k: i64) -> Rational {
    let p = Rational::from_integer(Pow::pow(&BigInt::from(10), k.unsigned_abs()));
    if k >= 0 {
        x * &p
    } else {
        x / &p
    }
}

impl PartialEq for HpFloat {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for HpFloat {}

impl PartialOrd for HpFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for HpFloat {
    fn cmp(&self, other: &Self) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let by_magnitude = match self.top().cmp(&other.top()) {
            Ordering::Equal => {
                let e = self.exp.min(other.exp);
                let a = &self.mag << (self.exp - e) as u64;
                let b = &other.mag << (other.exp - e) as u64;
                a.cmp(&b)
            }
            ord => ord,
        };
        if sa < 0 {
            by_magnitude.reverse()
        } else {
            by_magnitude
        }
    }
}

impl fmt::Display for HpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        f.write_str(&self.to_sig_digits(digits))
    }
}

impl fmt::Debug for HpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HpFloat({})", self.to_sig_digits(24))
    }
}

impl Add<&HpFloat> for &HpFloat {
    type Output = HpFloat;
    fn add(self, rhs: &HpFloat) -> HpFloat {
        self.add_signed(rhs, rhs.neg)
    }
}

impl Sub<&HpFloat> for &HpFloat {
    type Output = HpFloat;
    fn sub(self, rhs: &HpFloat) -> HpFloat {
        self.add_signed(rhs, !rhs.neg)
    }
}

impl Mul<&HpFloat> for &HpFloat {
    type Output = HpFloat;
    fn mul(self, rhs: &HpFloat) -> HpFloat {
        let bits = self.bits.max(rhs.bits);
        HpFloat::round(
            self.neg != rhs.neg,
            &self.mag * &rhs.mag,
            self.exp + rhs.exp,
            bits,
            false,
        )
    }
}

/// Panics on a zero divisor; see [`HpFloat::checked_div`].
impl Div<&HpFloat> for &HpFloat {
    type Output = HpFloat;
    fn div(self, rhs: &HpFloat) -> HpFloat {
        self.checked_div(rhs).expect("division by zero")
    }
}

macro_rules! owned_binop {
    ($Trait:ident, $method:ident) => {
        impl $Trait<HpFloat> for HpFloat {
            type Output = HpFloat;
            fn $method(self, rhs: HpFloat) -> HpFloat {
                $Trait::$method(&self, &rhs)
            }
        }
        impl $Trait<&HpFloat> for HpFloat {
            type Output = HpFloat;
            fn $method(self, rhs: &HpFloat) -> HpFloat {
                $Trait::$method(&self, rhs)
            }
        }
        impl $Trait<HpFloat> for &HpFloat {
            type Output = HpFloat;
            fn $method(self, rhs: HpFloat) -> HpFloat {
                $Trait::$method(self, &rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl Neg for HpFloat {
    type Output = HpFloat;
    fn neg(mut self) -> HpFloat {
        if !self.mag.is_zero() {
            self.neg = !self.neg;
        }
        self
    }
}

impl Neg for &HpFloat {
    type Output = HpFloat;
    fn neg(self) -> HpFloat {
        -self.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p50() -> Precision {
        Precision::default()
    }

    #[test]
    fn precision_floor() {
        assert!(Precision::new(39).is_err());
        assert_eq!(Precision::new(40).unwrap().digits(), 40);
        assert_eq!(p50().bits(), 175);
    }

    #[test]
    fn third_times_three() {
        let third = HpFloat::from_rational(&Rational::frac(1, 3), p50());
        let back = &third * &HpFloat::from_int(3, p50());
        let err = (&back - &HpFloat::one(p50())).abs();
        assert!(err < HpFloat::pow10(-48, p50()));
    }

    #[test]
    fn rational_round_trip_is_within_half_ulp() {
        let r = Rational::frac(22, 7);
        let x = HpFloat::from_rational(&r, p50());
        let diff = (x.to_rational() - &r).abs();
        let ulp = Rational::one().mul_pow2(2 - p50().bits() as i64);
        assert!(diff <= ulp);
    }

    #[test]
    fn ordering_and_signs() {
        let p = p50();
        let a = HpFloat::from_rational(&Rational::frac(-3, 2), p);
        let b = HpFloat::from_int(1, p);
        assert!(a < b);
        assert!(-&a > b);
        assert_eq!(HpFloat::zero(p), -HpFloat::zero(p));
        assert_eq!((&b - &b).signum(), 0);
    }

    #[test]
    fn far_apart_addition_keeps_larger() {
        let p = p50();
        let big = HpFloat::pow10(60, p);
        let tiny = HpFloat::pow10(-60, p);
        assert_eq!(&big + &tiny, big);
        assert_eq!(&tiny - &big, -big.clone());
    }

    #[test]
    fn renders_significant_digits() {
        let p = p50();
        assert_eq!(HpFloat::from_rational(&Rational::frac(1, 2), p).to_sig_digits(16), "0.5000000000000000");
        assert_eq!(HpFloat::one(p).to_sig_digits(16), "1.000000000000000");
        assert_eq!(HpFloat::zero(p).to_sig_digits(4), "0.000");
        assert_eq!(HpFloat::from_rational(&Rational::frac(1, 2800), p).to_sig_digits(4), "0.0003571");
        assert_eq!(HpFloat::from_rational(&Rational::frac(-2, 3), p).to_sig_digits(3), "-0.667");
        assert_eq!(HpFloat::from_int(123456, p).to_sig_digits(3), "123000");
        assert_eq!(HpFloat::from_rational(&Rational::frac(999, 100), p).to_sig_digits(2), "10");
    }

    #[test]
    fn renders_fixed_with_ties_to_even() {
        let p = p50();
        assert_eq!(HpFloat::from_rational(&Rational::frac(5, 2), p).to_fixed(0), "2");
        assert_eq!(HpFloat::from_rational(&Rational::frac(1, 8), p).to_fixed(2), "0.12");
        assert_eq!(HpFloat::from_rational(&Rational::frac(3, 8), p).to_fixed(2), "0.38");
        assert_eq!(HpFloat::from_rational(&Rational::frac(-1, 1000), p).to_fixed(2), "0.00");
        assert_eq!(HpFloat::from_rational(&Rational::frac(-7, 4), p).to_fixed(3), "-1.750");
    }

    #[test]
    fn f64_conversions() {
        let p = p50();
        let x = HpFloat::from_f64(0.1, p);
        assert_eq!(x.to_f64(), 0.1);
        assert_eq!(HpFloat::from_f64(-3.5, p).to_rational(), Rational::frac(-7, 2));
        assert_eq!(HpFloat::from_f64(5e-324, p).to_f64(), 5e-324);
    }

    #[test]
    fn division_is_correctly_rounded() {
        let p = p50();
        let q = HpFloat::from_int(2, p).checked_div(&HpFloat::from_int(3, p)).unwrap();
        assert_eq!(q, HpFloat::from_rational(&Rational::frac(2, 3), p));
        assert!(HpFloat::one(p).checked_div(&HpFloat::zero(p)).is_err());
    }
}
