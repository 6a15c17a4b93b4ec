//! Dense univariate polynomials over ℚ in the level symbol `k`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// Coefficients are stored lowest degree first; trailing zeros are never kept.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Poly {
    coeffs: Vec<BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        let mut p = Poly { coeffs: vec![c] };
        p.trim();
        p
    }

    /// The monomial `c k^d`.
    pub fn monomial(c: BigRational, d: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![BigRational::zero(); d + 1];
        coeffs[d] = c;
        Poly { coeffs }
    }

    pub fn from_coeffs(coeffs: Vec<BigRational>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, with the zero polynomial reported as `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn constant_value(&self) -> Option<BigRational> {
        match self.coeffs.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn leading(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn neg(&self) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = other.coeffs.get(i);
            out.push(match (a, b) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::from_coeffs(out)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let dd = d.degree().unwrap();
        let lead_inv = d.leading().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() < d.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dj;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let inv = self.leading().recip();
        self.scale(&inv)
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r;
        }
        x.monic()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// The polynomial `p(k + s)`.
    pub fn shift(&self, s: &BigRational) -> Poly {
        let mut out = Poly::zero();
        let lin = Poly::from_coeffs(vec![s.clone(), BigRational::one()]);
        for c in self.coeffs.iter().rev() {
            out = out.mul(&lin).add(&Poly::constant(c.clone()));
        }
        out
    }

    /// Write `self` with integer coefficients: returns (content-free integer coefficients, scale)
    /// with `self = scale * Σ ints[i] k^i`, `ints` primitive and with positive leading entry.
    pub fn primitive_part(&self) -> (Vec<BigInt>, BigRational) {
        use num_integer::Integer;
        if self.is_zero() {
            return (Vec::new(), BigRational::zero());
        }
        let mut lcm = BigInt::one();
        for c in &self.coeffs {
            lcm = lcm.lcm(c.denom());
        }
        let ints: Vec<BigInt> = self.coeffs.iter().map(|c| (c * &lcm).to_integer()).collect();
        let mut g = BigInt::zero();
        for i in &ints {
            g = g.gcd(i);
        }
        if ints.last().unwrap().is_negative() {
            g = -g;
        }
        let ints = ints.into_iter().map(|i| i / &g).collect();
        (ints, BigRational::new(g, lcm))
    }

    pub(crate) fn fmt_with(&self, f: &mut fmt::Formatter<'_>, sym: &str) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { "-" } else { "+" })?;
            }
            first = false;
            let coeff_str = if a.is_integer() { a.to_integer().to_string() } else { format!("{}/{}", a.numer(), a.denom()) };
            match d {
                0 => write!(f, "{coeff_str}")?,
                _ => {
                    if !a.is_one() {
                        if a.is_integer() {
                            write!(f, "{coeff_str}*")?;
                        } else {
                            write!(f, "({coeff_str})*")?;
                        }
                    }
                    if d == 1 {
                        write!(f, "{sym}")?;
                    } else {
                        write!(f, "{sym}^{d}")?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, "k")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn p(cs: &[i64]) -> Poly {
        Poly::from_coeffs(cs.iter().map(|&c| q(c, 1)).collect())
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = p(&[1, 2, 3, 4]);
        let b = p(&[5, 0, 2]);
        let (qt, r) = a.div_rem(&b);
        assert_eq!(qt.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn gcd_is_monic_common_factor() {
        let f = p(&[2, 1]); // k+2
        let a = f.mul(&p(&[1, 1]));
        let b = f.mul(&p(&[-3, 0, 1]));
        assert_eq!(Poly::gcd(&a, &b), f);
        assert_eq!(Poly::gcd(&p(&[4]), &p(&[0, 1])), Poly::one());
    }

    #[test]
    fn shift_matches_eval() {
        let a = p(&[1, -2, 0, 3]);
        let s = q(5, 2);
        let sh = a.shift(&s);
        for x in -3..4 {
            let x = q(x, 1);
            assert_eq!(sh.eval(&x), a.eval(&(&x + &s)));
        }
    }

    #[test]
    fn printing() {
        assert_eq!(p(&[3, 0, -1]).to_string(), "3-k^2");
        assert_eq!(Poly::from_coeffs(vec![q(1, 2), q(-1, 3)]).to_string(), "1/2-(1/3)*k");
    }

    #[test]
    fn primitive_part_integer_form() {
        let a = Poly::from_coeffs(vec![q(1, 2), q(-1, 3)]);
        let (ints, s) = a.primitive_part();
        assert_eq!(ints, vec![BigInt::from(-3), BigInt::from(2)]);
        assert_eq!(s, q(-1, 6));
    }
}
