//! Reduced rational functions in `k` with rational coefficients.

use super::poly::Poly;
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

/// An element of ℚ(k). The denominator is monic and coprime to the numerator,
/// so structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFunc {
    num: Poly,
    den: Poly,
}

impl Default for RatFunc {
    fn default() -> Self {
        RatFunc::zero()
    }
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc { num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        RatFunc { num: Poly::one(), den: Poly::one() }
    }

    /// The level symbol `k`.
    pub fn kappa() -> Self {
        RatFunc { num: Poly::monomial(BigRational::one(), 1), den: Poly::one() }
    }

    pub fn from_int(n: i64) -> Self {
        RatFunc::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        RatFunc::from_rational(BigRational::new(n.into(), d.into()))
    }

    pub fn from_rational(q: BigRational) -> Self {
        RatFunc { num: Poly::constant(q), den: Poly::one() }
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFunc { num: p, den: Poly::one() }
    }

    /// Build `num/den`, reducing; errors if `den` is zero.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc::reduced(num, den))
    }

    fn reduced(num: Poly, den: Poly) -> Self {
        if num.is_zero() {
            return RatFunc::zero();
        }
        if den.is_constant() {
            let d = den.constant_value().unwrap();
            if d.is_one() {
                return RatFunc { num, den };
            }
            return RatFunc { num: num.scale(&d.recip()), den: Poly::one() };
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.div_rem(&g).0, den.div_rem(&g).0) };
        let lc = den.leading();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc { num: num.scale(&inv), den: den.scale(&inv) }
        }
    }

    pub fn numer(&self) -> &Poly {
        &self.num
    }

    pub fn denom(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// `Some(q)` when the value does not depend on `k`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    pub fn scale_rational(&self, q: &BigRational) -> RatFunc {
        if q.is_zero() {
            return RatFunc::zero();
        }
        RatFunc { num: self.num.scale(q), den: self.den.clone() }
    }

    pub fn recip(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFunc::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<RatFunc> {
        Ok(self * &other.recip()?)
    }

    pub fn pow(&self, e: u32) -> RatFunc {
        let mut acc = RatFunc::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Specialize `k` to the rational `k0`.
    pub fn evaluate_at(&self, k0: &BigRational) -> Result<BigRational> {
        let d = self.den.eval(k0);
        if d.is_zero() {
            let lin = Poly::from_coeffs(vec![-k0.clone(), BigRational::one()]);
            return Err(Error::Pole { at: fmt_q(k0), factor: format!("{}", IntPoly(&lin)) });
        }
        Ok(self.num.eval(k0) / d)
    }

    /// Limit as `k → ∞`.
    pub fn limit_at_infinity(&self) -> Result<BigRational> {
        let dn = match self.num.degree() {
            None => return Ok(BigRational::zero()),
            Some(d) => d,
        };
        let dd = self.den.degree().unwrap();
        if dn > dd {
            return Err(Error::Diverges(self.to_string()));
        }
        if dn < dd {
            return Ok(BigRational::zero());
        }
        Ok(self.num.leading() / self.den.leading())
    }

    /// Substitute `k ↦ k + s`.
    pub fn shift(&self, s: &BigRational) -> RatFunc {
        RatFunc::reduced(self.num.shift(s), self.den.shift(s))
    }

    pub fn parse(s: &str) -> Result<RatFunc> {
        super::parse::parse_ratfunc(s)
    }
}

fn fmt_q(q: &BigRational) -> String {
    if q.is_integer() {
        q.to_integer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Display helper printing a polynomial after clearing denominators.
struct IntPoly<'a>(&'a Poly);

impl fmt::Display for IntPoly<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (ints, _) = self.0.primitive_part();
        Poly::from_coeffs(ints.into_iter().map(BigRational::from_integer).collect()).fmt(f)
    }
}

fn int_poly(ints: &[BigInt], scale: &BigInt) -> Poly {
    Poly::from_coeffs(ints.iter().map(|c| BigRational::from_integer(c * scale)).collect())
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            if let Some(c) = self.num.constant_value() {
                return write!(f, "{}", fmt_q(&c));
            }
            return self.num.fmt(f);
        }
        let (ni, ns) = self.num.primitive_part();
        let (di, ds) = self.den.primitive_part();
        let s = ns / ds;
        let top = int_poly(&ni, s.numer());
        let bot = int_poly(&di, s.denom());
        if top.term_count() > 1 {
            write!(f, "({top})")?;
        } else {
            write!(f, "{top}")?;
        }
        if bot.term_count() > 1 || !bot.leading().is_one() {
            write!(f, "/({bot})")
        } else {
            write!(f, "/{bot}")
        }
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            let num = self.num.add(&o.num);
            if self.den.is_one() {
                return RatFunc { num, den: Poly::one() };
            }
            return RatFunc::reduced(num, self.den.clone());
        }
        if o.den.is_one() {
            return RatFunc::reduced(self.num.add(&o.num.mul(&self.den)), self.den.clone());
        }
        if self.den.is_one() {
            return RatFunc::reduced(o.num.add(&self.num.mul(&o.den)), o.den.clone());
        }
        RatFunc::reduced(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den))
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, o: &RatFunc) -> RatFunc {
        self + &(-o)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, o: &RatFunc) -> RatFunc {
        if self.is_zero() || o.is_zero() {
            return RatFunc::zero();
        }
        if self.is_constant() {
            let c = self.num.constant_value().unwrap();
            return RatFunc { num: o.num.scale(&c), den: o.den.clone() };
        }
        if o.is_constant() {
            let c = o.num.constant_value().unwrap();
            return RatFunc { num: self.num.scale(&c), den: self.den.clone() };
        }
        if self.den.is_one() && o.den.is_one() {
            return RatFunc { num: self.num.mul(&o.num), den: Poly::one() };
        }
        RatFunc::reduced(self.num.mul(&o.num), self.den.mul(&o.den))
    }
}

impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero; use [`RatFunc::checked_div`] for a fallible version.
    fn div(self, o: &RatFunc) -> RatFunc {
        self.checked_div(o).expect("division by the zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: RatFunc) -> RatFunc {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, o: &RatFunc) -> RatFunc {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&RatFunc> for RatFunc {
    fn add_assign(&mut self, o: &RatFunc) {
        *self = &*self + o;
    }
}

impl SubAssign<&RatFunc> for RatFunc {
    fn sub_assign(&mut self, o: &RatFunc) {
        *self = &*self - o;
    }
}

impl From<i64> for RatFunc {
    fn from(n: i64) -> Self {
        RatFunc::from_int(n)
    }
}

impl From<BigRational> for RatFunc {
    fn from(q: BigRational) -> Self {
        RatFunc::from_rational(q)
    }
}

impl RatFunc {
    /// True when the value is a nonzero constant of negative sign.
    pub fn is_negative_constant(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_negative())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rf(s: &str) -> RatFunc {
        RatFunc::parse(s).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(rf("1/k") + rf("1/k"), rf("2/k"));
        assert_eq!(rf("(1+k)/(4+2*k)") * rf("4+2*k"), rf("1+k"));
        let d = rf("3/k^2") - RatFunc::one();
        assert_eq!(d.to_string(), "(3-k^2)/k^2");
        assert_eq!(d, rf("(3-k^2)/k^2"));
    }

    #[test]
    fn evaluation() {
        assert_eq!(rf("(1+k)/(4+2*k)").evaluate_at(&q(2, 1)).unwrap(), q(3, 8));
        assert_eq!(rf("k/k").evaluate_at(&q(5, 1)).unwrap(), q(1, 1));
        assert!(matches!(rf("1/k").evaluate_at(&q(0, 1)), Err(Error::Pole { .. })));
    }

    #[test]
    fn limits() {
        assert_eq!(rf("(1+k)/(4+2*k)").limit_at_infinity().unwrap(), q(1, 2));
        assert_eq!((rf("3/k^2") - RatFunc::one()).limit_at_infinity().unwrap(), q(-1, 1));
        assert!(matches!(RatFunc::kappa().limit_at_infinity(), Err(Error::Diverges(_))));
    }

    #[test]
    fn division_by_zero() {
        assert!(matches!(RatFunc::one().checked_div(&RatFunc::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn display_roundtrip() {
        for s in ["0", "-7/3", "k", "(1+k)/(4+2*k)", "(3-k^2)/k^2", "1/(2*k)", "-(1+k)/(2*k)"] {
            let a = rf(s);
            assert_eq!(rf(&a.to_string()), a, "{s}");
        }
    }
}
