//! Exact coefficients: ℚ(k), the rational functions in the level symbol.

mod parse;
mod poly;
mod ratfunc;

pub(crate) use parse::Cursor;
pub use poly::Poly;
pub use ratfunc::RatFunc;

/// Scalar coefficient type used throughout the engine.
pub type ScalarCoeff = RatFunc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

pub fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Binomial coefficient `C(m, j)` for any integer `m` and `j ≥ 0`.
pub fn binom(m: i64, j: u32) -> BigRational {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..j as i64 {
        num *= m - i;
        den *= i + 1;
    }
    BigRational::new(num, den)
}

/// Falling factorial `m (m-1) ... (m-j+1)`.
pub fn falling(m: i64, j: u32) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..j as i64 {
        acc *= m - i;
    }
    acc
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n as i64).fold(BigInt::one(), |a, i| a * i)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generalized_binomials() {
        assert_eq!(binom(5, 2), q(10, 1));
        assert_eq!(binom(-1, 3), q(-1, 1));
        assert_eq!(binom(-2, 2), q(3, 1));
        assert_eq!(binom(2, 3), q(0, 1));
        assert_eq!(falling(3, 4), BigInt::from(0));
        assert_eq!(factorial(5), BigInt::from(120));
    }
}
