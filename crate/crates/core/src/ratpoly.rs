//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::numerics::{HpFloat, Rational};

/// Coefficients in ascending degree. The zero polynomial is the empty
/// vector; otherwise the last coefficient is nonzero.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<Rational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Rational::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::new(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: Rational, k: usize) -> Self {
        let mut coeffs = vec![Rational::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// The monic polynomial `(x - r0)(x - r1)...`; empty input gives `1`.
    pub fn from_roots(roots: &[Rational]) -> Self {
        roots.iter().fold(Self::one(), |acc, r| {
            let mut next = vec![Rational::zero(); acc.coeffs.len() + 1];
            for (i, c) in acc.coeffs.iter().enumerate() {
                next[i + 1] += c;
                next[i] -= &(c * r);
            }
            Self::new(next)
        })
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| *c == Rational::one())
    }

    /// `Some(0)` if only even powers occur, `Some(1)` if only odd powers,
    /// `None` for mixed parity. The zero polynomial counts as even.
    pub fn parity(&self) -> Option<usize> {
        let mut seen = None;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match seen {
                None => seen = Some(i % 2),
                Some(p) if p != i % 2 => return None,
                _ => {}
            }
        }
        Some(seen.unwrap_or(0))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip().expect("nonzero leading coefficient")),
            None => Self::zero(),
        }
    }

    /// `f = q g + r` with `deg r < deg g`.
    pub fn div_rem(&self, divisor: &RatPoly) -> Result<(RatPoly, RatPoly)> {
        let dg = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead = divisor.leading().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dg {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dg];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dg] / lead;
            if c.is_zero() {
                continue;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &(&c * d);
            }
            quot[k] = c;
        }
        rem.truncate(dg);
        Ok((Self::new(quot), Self::new(rem)))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Rational::from(i as i64))
                .collect(),
        )
    }

    /// Antiderivative with zero constant term.
    pub fn antiderivative(&self) -> Self {
        let mut out = vec![Rational::zero()];
        out.extend(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c / &Rational::from(i as i64 + 1)),
        );
        Self::new(out)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// Horner evaluation at the precision carried by `x`.
    pub fn eval_hp(&self, x: &HpFloat) -> HpFloat {
        let bits = x.precision_bits();
        self.coeffs
            .iter()
            .rev()
            .fold(HpFloat::zero_bits(bits), |acc, c| {
                &(&acc * x) + &HpFloat::from_rational_bits(c, bits)
            })
    }

    /// `∫_0^1 f(t) dt`, exactly.
    pub fn integral_01(&self) -> Rational {
        self.antiderivative().eval(&Rational::one())
    }

    /// `∫_{-1}^1 f(u) du`, exactly.
    pub fn integral_pm1(&self) -> Rational {
        let a = self.antiderivative();
        a.eval(&Rational::one()) - a.eval(&Rational::from(-1))
    }

    /// `f(a x + b)`.
    pub fn compose_affine(&self, a: &Rational, b: &Rational) -> Self {
        let inner = RatPoly::new(vec![b.clone(), a.clone()]);
        self.coeffs
            .iter()
            .rev()
            .fold(Self::zero(), |acc, c| &(&acc * &inner) + &RatPoly::constant(c.clone()))
    }

    pub fn display_var<'a>(&'a self, var: &'a str) -> impl fmt::Display + 'a {
        PolyDisplay { poly: self, var }
    }
}

/// Extended Euclid: returns monic `g = gcd(a, b)` and `s, t` with
/// `s a + t b = g`. Remainders are made monic at each step.
pub fn ext_gcd(a: &RatPoly, b: &RatPoly) -> (RatPoly, RatPoly, RatPoly) {
    let normalize = |r: &RatPoly, s: &RatPoly, t: &RatPoly| match r.leading() {
        Some(lc) => {
            let inv = lc.recip().expect("nonzero");
            (r.scale(&inv), s.scale(&inv), t.scale(&inv))
        }
        None => (r.clone(), s.clone(), t.clone()),
    };
    let (mut r0, mut s0, mut t0) = normalize(a, &RatPoly::one(), &RatPoly::zero());
    let (mut r1, mut s1, mut t1) = normalize(b, &RatPoly::zero(), &RatPoly::one());
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
        let s = &s0 - &(&q * &s1);
        let t = &t0 - &(&q * &t1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
        t0 = std::mem::replace(&mut t1, t);
        (r1, s1, t1) = normalize(&r1, &s1, &t1);
    }
    (r0, s0, t0)
}

/// The polynomial of degree below `deg zetap` that agrees with `Z / zeta` at
/// every root of `zetap`: `Z * zeta^{-1} mod zetap`.
pub fn mod_inverse_eval(z: &RatPoly, zeta: &RatPoly, zetap: &RatPoly) -> Result<RatPoly> {
    let modulus_degree = zetap.degree().ok_or(Error::DivisionByZero)?;
    if modulus_degree == 0 {
        return Ok(RatPoly::zero());
    }
    let (_, reduced) = zeta.div_rem(zetap)?;
    let (g, s, _) = ext_gcd(&reduced, zetap);
    match g.degree() {
        Some(0) => {}
        Some(d) => return Err(Error::SharedRoot { gcd_degree: d }),
        None => unreachable!("gcd with a nonzero modulus is nonzero"),
    }
    let (_, p) = (z * &s).div_rem(zetap)?;
    Ok(p)
}

struct PolyDisplay<'a> {
    poly: &'a RatPoly,
    var: &'a str,
}

impl fmt::Display for PolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.poly.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let power = match i {
                0 => String::new(),
                1 => self.var.to_string(),
                _ => format!("{}^{}", self.var, i),
            };
            if i == 0 {
                write!(f, "{a}")?;
            } else if a == Rational::one() {
                f.write_str(&power)?;
            } else {
                write!(f, "{a}*{power}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.display_var("x").fmt(f)
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatPoly({})", self)
    }
}

impl Add<&RatPoly> for &RatPoly {
    type Output = RatPoly;
    fn add(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub<&RatPoly> for &RatPoly {
    type Output = RatPoly;
    fn sub(self, rhs: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        RatPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul<&RatPoly> for &RatPoly {
    type Output = RatPoly;
    fn mul(self, rhs: &RatPoly) -> RatPoly {
        if self.is_zero() || rhs.is_zero() {
            return RatPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        RatPoly::new(out)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}
