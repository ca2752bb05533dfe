use std::str::FromStr;

use crate::error::{Error, Result};
use crate::numerics::{hp_ln, HpFloat, Rational};
use crate::ratpoly::RatPoly;

/// Built-in integrands, addressed by name on the command line.
#[derive(Debug, Clone, PartialEq)]
pub enum Integrand {
    /// `1 / ln x`
    ReciprocalLog,
    /// `1 / (1 + 25 x^2)`
    Runge,
    /// Polynomial with exact coefficients, ascending.
    Poly(RatPoly),
}

impl Integrand {
    pub fn eval(&self, x: &HpFloat) -> Result<HpFloat> {
        let bits = x.precision_bits();
        match self {
            Integrand::ReciprocalLog => {
                let l = hp_ln(x)?;
                HpFloat::from_int_bits(1, bits).checked_div(&l)
            }
            Integrand::Runge => {
                let one = HpFloat::from_int_bits(1, bits);
                let den = &one + &(&HpFloat::from_int_bits(25, bits) * &(x * x));
                one.checked_div(&den)
            }
            Integrand::Poly(p) => Ok(p.eval_hp(x)),
        }
    }

    pub fn as_poly(&self) -> Option<&RatPoly> {
        match self {
            Integrand::Poly(p) => Some(p),
            _ => None,
        }
    }
}

/// `reciprocal-log`, `runge`, or `poly:c0,c1,...` (ascending coefficients,
/// each a fraction or decimal).
impl FromStr for Integrand {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "reciprocal-log" => Ok(Integrand::ReciprocalLog),
            "runge" => Ok(Integrand::Runge),
            _ => {
                let body = s
                    .strip_prefix("poly:")
                    .ok_or_else(|| Error::UnknownIntegrand(s.to_string()))?;
                let coeffs = body
                    .split(',')
                    .map(str::parse::<Rational>)
                    .collect::<Result<Vec<_>>>()
                    .map_err(|_| Error::UnknownIntegrand(s.to_string()))?;
                Ok(Integrand::Poly(RatPoly::new(coeffs)))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Precision;

    #[test]
    fn parses_registry_names() {
        assert_eq!("runge".parse::<Integrand>().unwrap(), Integrand::Runge);
        assert_eq!(
            "poly:0,0,0,1".parse::<Integrand>().unwrap(),
            Integrand::Poly(RatPoly::monomial(Rational::one(), 3))
        );
        assert!(matches!("sin".parse::<Integrand>(), Err(Error::UnknownIntegrand(_))));
        assert!("poly:1,x".parse::<Integrand>().is_err());
    }

    #[test]
    fn evaluates() {
        let p = Precision::default();
        let x = HpFloat::from_rational(&Rational::frac(1, 5), p);
        assert_eq!(Integrand::Runge.eval(&x).unwrap(), HpFloat::from_rational(&Rational::frac(1, 2), p));
        assert!(Integrand::ReciprocalLog.eval(&HpFloat::one(p)).is_err());
        assert!(Integrand::ReciprocalLog.eval(&HpFloat::zero(p)).is_err());
    }
}
