//! The centrally extended Lie superalgebra of super differential operators on
//! the circle, in the basis `t^r f(D) M_a` with `D = t∂_t`.

use crate::coeff::{factorial, q, Poly, RatFunc};
use crate::free_systems::JLabel;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// `J^{a,k}_n = −t^{n+k}∂_t^k M_a = −t^n [D]_k M_a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SdMode {
    pub a: JLabel,
    pub k: u32,
    pub n: i64,
}

impl SdMode {
    pub fn new(a: JLabel, k: u32, n: i64) -> Self {
        SdMode { a, k, n }
    }

    /// `J^{a,k}(m) = J^{a,k}_{m−k}`, the `m`-th mode of the field `J^{a,k}(z)`.
    pub fn field_mode(a: JLabel, k: u32, m: i64) -> Self {
        SdMode { a, k, n: m - k as i64 }
    }

    pub fn m(&self) -> i64 {
        self.n + self.k as i64
    }

    pub fn is_odd(&self) -> bool {
        self.a.is_odd()
    }
}

impl fmt::Display for SdMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "J^{{{},{}}}_{}", self.a, self.k, self.n)
    }
}

/// `[x]_k = x(x−1)…(x−k+1)` as a polynomial.
pub fn falling_poly(k: u32) -> Poly {
    (0..k as i64).fold(Poly::one(), |p, i| p.mul(&Poly::from_coeffs(vec![q(-i, 1), BigRational::one()])))
}

/// Matrix-unit product: `0 = E11`, `1 = E22`, `+ = E12`, `− = E21`.
pub fn matmul(a: JLabel, b: JLabel) -> Option<JLabel> {
    use JLabel::*;
    let rc = |x: JLabel| match x {
        Zero => (1, 1),
        One => (2, 2),
        Plus => (1, 2),
        Minus => (2, 1),
    };
    let ((i, j), (k, l)) = (rc(a), rc(b));
    if j != k {
        return None;
    }
    Some(match (i, l) {
        (1, 1) => Zero,
        (2, 2) => One,
        (1, 2) => Plus,
        _ => Minus,
    })
}

fn supertrace(a: JLabel) -> i64 {
    match a {
        JLabel::Zero => 1,
        JLabel::One => -1,
        _ => 0,
    }
}

/// A finite sum `Σ t^r f_{r,a}(D) M_a`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct SdElem {
    pub terms: BTreeMap<(i64, JLabel), Poly>,
}

impl SdElem {
    pub fn from_mode(m: SdMode) -> Self {
        let mut e = SdElem::default();
        e.add(m.n, m.a, falling_poly(m.k).neg());
        e
    }

    pub fn add(&mut self, r: i64, a: JLabel, p: Poly) {
        let slot = self.terms.entry((r, a)).or_insert_with(Poly::zero);
        *slot = slot.add(&p);
        if slot.is_zero() {
            self.terms.remove(&(r, a));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let mut e = SdElem::default();
        for (&(r, a), p) in &self.terms {
            e.add(r, a, p.scale(c));
        }
        e
    }

    pub fn plus(&self, o: &SdElem) -> Self {
        let mut e = self.clone();
        for (&(r, a), p) in &o.terms {
            e.add(r, a, p.clone());
        }
        e
    }

    /// Coefficients in the basis `J^{a,k}_n`, using Newton's forward differences.
    pub fn to_modes(&self) -> Vec<(SdMode, BigRational)> {
        let mut out = Vec::new();
        for (&(r, a), p) in &self.terms {
            let deg = p.degree().unwrap_or(0);
            let mut vals: Vec<BigRational> = (0..=deg as i64).map(|x| p.eval(&q(x, 1))).collect();
            for m in 0..=deg {
                let h = &vals[0] / BigRational::from_integer(factorial(m as u32));
                if !h.is_zero() {
                    out.push((SdMode::new(a, m as u32, r), -h));
                }
                vals = vals.windows(2).map(|w| &w[1] - &w[0]).collect();
            }
        }
        out.sort_by(|x, y| x.0.cmp(&y.0));
        out
    }

    pub fn from_modes(modes: &[(SdMode, BigRational)]) -> Self {
        modes.iter().fold(SdElem::default(), |e, (m, c)| e.plus(&SdElem::from_mode(*m).scale(c)))
    }
}

fn bracket_component(r: i64, a: JLabel, f: &Poly, s: i64, b: JLabel, g: &Poly, out: &mut SdElem) {
    let sign = if a.is_odd() && b.is_odd() { -1 } else { 1 };
    if let Some(ab) = matmul(a, b) {
        out.add(r + s, ab, f.shift(&q(s, 1)).mul(g));
    }
    if let Some(ba) = matmul(b, a) {
        out.add(r + s, ba, g.shift(&q(r, 1)).mul(f).scale(&q(-sign, 1)));
    }
}

fn cocycle_component(r: i64, a: JLabel, f: &Poly, s: i64, b: JLabel, g: &Poly) -> BigRational {
    if r + s != 0 {
        return BigRational::zero();
    }
    if r < 0 {
        let sign = if a.is_odd() && b.is_odd() { 1 } else { -1 };
        return cocycle_component(s, b, g, r, a, f) * q(sign, 1);
    }
    let st = matmul(a, b).map_or(0, supertrace);
    if st == 0 {
        return BigRational::zero();
    }
    let mut acc = BigRational::zero();
    for j in -r..=-1 {
        acc += f.eval(&q(j, 1)) * g.eval(&q(j + r, 1));
    }
    acc * q(st, 1)
}

/// `Ψ(x, y)`; both arguments must be parity-homogeneous.
pub fn cocycle(x: &SdElem, y: &SdElem) -> BigRational {
    let mut acc = BigRational::zero();
    for (&(r, a), f) in &x.terms {
        for (&(s, b), g) in &y.terms {
            acc += cocycle_component(r, a, f, s, b, g);
        }
    }
    acc
}

/// `[x, y] = t^{r+s}(F(D+s)G(D) − (−1)^{|F||G|} G(D+r)F(D)) + Ψ(x, y)C`, returned as
/// (noncentral part, coefficient of `C`).
pub fn bracket(x: &SdElem, y: &SdElem) -> (SdElem, BigRational) {
    let mut out = SdElem::default();
    for (&(r, a), f) in &x.terms {
        for (&(s, b), g) in &y.terms {
            bracket_component(r, a, f, s, b, g, &mut out);
        }
    }
    (out, cocycle(x, y))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SdBracket {
    pub modes: Vec<(SdMode, BigRational)>,
    pub central: RatFunc,
}

/// `[x, y]` in the `J^{a,k}_n` basis at central charge `c`.
pub fn sd_bracket(x: SdMode, y: SdMode, c: &RatFunc) -> SdBracket {
    let (e, z) = bracket(&SdElem::from_mode(x), &SdElem::from_mode(y));
    SdBracket { modes: e.to_modes(), central: c.scale_rational(&z) }
}

/// The label swap `0↔1`, `+↔−`; it sends `C` to `−C`.
pub fn pi(e: &SdElem) -> SdElem {
    let mut out = SdElem::default();
    for (&(r, a), p) in &e.terms {
        out.add(r, a.swapped(), p.clone());
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn label(i: u32) -> JLabel {
        JLabel::from_index(i)
    }

    fn random_mode(rng: &mut ChaCha8Rng) -> SdMode {
        SdMode::new(label(rng.gen_range(0..4)), rng.gen_range(0..4), rng.gen_range(-4..5))
    }

    fn parity(m: &SdMode) -> i64 {
        m.is_odd() as i64
    }

    #[test]
    fn mode_basis_roundtrip() {
        for a in 0..4 {
            for k in 0..5 {
                let m = SdMode::new(label(a), k, 3 - k as i64);
                assert_eq!(SdElem::from_mode(m).to_modes(), vec![(m, q(1, 1))]);
            }
        }
    }

    #[test]
    fn central_terms() {
        let c = RatFunc::kappa();
        for m in 0..5 {
            let b = sd_bracket(SdMode::new(JLabel::Zero, 0, m), SdMode::new(JLabel::Zero, 0, -m), &c);
            assert_eq!(b.central, c.scale_rational(&q(m, 1)));
            assert!(b.modes.is_empty());
            let b = sd_bracket(SdMode::new(JLabel::Plus, 0, m), SdMode::new(JLabel::Minus, 0, -m), &c);
            assert_eq!(b.central, c.scale_rational(&q(m, 1)));
        }
        let b = sd_bracket(SdMode::new(JLabel::One, 2, 3), SdMode::new(JLabel::One, 1, -2), &c);
        assert!(b.central.is_zero());
    }

    #[test]
    fn jacobi_and_cocycle_identities() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let (x, y, z) = (random_mode(&mut rng), random_mode(&mut rng), random_mode(&mut rng));
            let (ex, ey, ez) = (SdElem::from_mode(x), SdElem::from_mode(y), SdElem::from_mode(z));
            let (px, py, pz) = (parity(&x), parity(&y), parity(&z));
            let sgn = |e: i64| q(if e % 2 == 0 { 1 } else { -1 }, 1);
            // (−1)^{|x||z|}[x,[y,z]] + cyclic = 0, including the central parts.
            let term = |a: &SdElem, b: &SdElem, cc: &SdElem| {
                let (bc, _) = bracket(b, cc);
                bracket(a, &bc)
            };
            let (t1, c1) = term(&ex, &ey, &ez);
            let (t2, c2) = term(&ey, &ez, &ex);
            let (t3, c3) = term(&ez, &ex, &ey);
            let s1 = sgn(px * pz);
            let s2 = sgn(py * px);
            let s3 = sgn(pz * py);
            let total = t1.scale(&s1).plus(&t2.scale(&s2)).plus(&t3.scale(&s3));
            assert!(total.is_zero(), "Jacobi fails on {x} {y} {z}");
            assert!((c1 * &s1 + c2 * &s2 + c3 * &s3).is_zero(), "cocycle fails on {x} {y} {z}");
            // super-antisymmetry
            let (a, ca) = bracket(&ex, &ey);
            let (b, cb) = bracket(&ey, &ex);
            let s = sgn(px * py + 1);
            assert!(a.plus(&b.scale(&s).scale(&q(-1, 1))).is_zero());
            assert_eq!(ca, cb * s);
        }
    }

    #[test]
    fn pi_automorphism() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..300 {
            let (x, y) = (SdElem::from_mode(random_mode(&mut rng)), SdElem::from_mode(random_mode(&mut rng)));
            let (b, c) = bracket(&x, &y);
            let (pb, pc) = bracket(&pi(&x), &pi(&y));
            assert_eq!(pi(&b), pb);
            assert_eq!(pc, -c);
        }
    }
}
