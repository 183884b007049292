//! Homogeneous polynomials `Sym^{k-2}` and cusps.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::groups::Mat2;
use crate::nt;

/// Homogeneous polynomial of degree `d`; `coeffs[w]` is the coefficient of `X^w Y^(d-w)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SymPoly {
    coeffs: Vec<BigInt>,
}

impl SymPoly {
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Self {
        assert!(!coeffs.is_empty(), "degree must be at least zero");
        SymPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// `X^w Y^(d-w)`.
    pub fn monomial(d: usize, w: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); d + 1];
        coeffs[w] = BigInt::one();
        SymPoly { coeffs }
    }

    pub fn zero(d: usize) -> Self {
        SymPoly { coeffs: vec![BigInt::zero(); d + 1] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        let d = self.degree();
        let mut s = BigInt::zero();
        for (w, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                s += c * num_traits::pow(x.clone(), w) * num_traits::pow(y.clone(), d - w);
            }
        }
        s
    }

    pub fn add(&self, o: &Self) -> Self {
        SymPoly { coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        SymPoly { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }
}

impl fmt::Display for SymPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        let mut first = true;
        for (w, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match (w, d - w) {
                (0, 0) => String::new(),
                (w, 0) => pw("x", w),
                (0, v) => pw("y", v),
                (w, v) => format!("{}*{}", pw("x", w), pw("y", v)),
            };
            let neg = c.sign() == num_bigint::Sign::Minus;
            let abs = if neg { -c } else { c.clone() };
            if !first {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            match (mono.is_empty(), abs.is_one()) {
                (true, _) => write!(f, "{abs}")?,
                (false, true) => write!(f, "{mono}")?,
                (false, false) => write!(f, "{abs}*{mono}")?,
            }
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn pw(v: &str, e: usize) -> String {
    if e == 1 {
        v.to_string()
    } else {
        format!("{v}^{e}")
    }
}

/// Coefficients in `X` of `(s X + t Y)^e`.
fn linear_power(s: &BigInt, t: &BigInt, e: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); e + 1];
    let mut binom = BigInt::one();
    for j in 0..=e {
        out[j] = &binom * num_traits::pow(s.clone(), j) * num_traits::pow(t.clone(), e - j);
        binom = binom * BigInt::from(e - j) / BigInt::from(j + 1);
    }
    out
}

/// Left action on `Sym^d` of the standard representation:
/// `(g P)(X, Y) = P(aX + cY, bX + dY)` for `g = [[a, b], [c, d]]`.
pub fn sym_action(g: &Mat2, p: &SymPoly) -> SymPoly {
    let d = p.degree();
    if d == 0 {
        return p.clone();
    }
    let [a, b, c, dd] = g.0.map(BigInt::from);
    let mut out = vec![BigInt::zero(); d + 1];
    for (w, coef) in p.coeffs.iter().enumerate() {
        if coef.is_zero() {
            continue;
        }
        let u = linear_power(&a, &c, w);
        let v = linear_power(&b, &dd, d - w);
        for (i, x) in u.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in v.iter().enumerate() {
                out[i + j] += coef * x * y;
            }
        }
    }
    SymPoly { coeffs: out }
}

/// A point `u/v` of `P^1(Q)` with `gcd(u, v) = 1` and `v > 0`, or `v = 0, u = 1` for infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Cusp {
    pub u: i128,
    pub v: i128,
}

impl Cusp {
    pub const INFINITY: Cusp = Cusp { u: 1, v: 0 };
    pub const ZERO: Cusp = Cusp { u: 0, v: 1 };

    pub fn new(u: i128, v: i128) -> Self {
        assert!(u != 0 || v != 0, "0/0 is not a cusp");
        let g = nt::gcd(u, v);
        let (mut u, mut v) = (u / g, v / g);
        if v < 0 || (v == 0 && u < 0) {
            u = -u;
            v = -v;
        }
        Cusp { u, v }
    }

    pub fn is_infinity(&self) -> bool {
        self.v == 0
    }

    /// `g` applied to this cusp by fractional linear transformation.
    pub fn act(&self, g: &Mat2) -> Cusp {
        let (u, v) = g.apply_vec(self.u, self.v);
        Cusp::new(u, v)
    }

    /// A matrix in `SL2(Z)` taking infinity to this cusp.
    pub fn to_sl2(&self) -> Mat2 {
        let (_, x, y) = nt::egcd(self.u, self.v);
        // u x + v y = 1
        Mat2([self.u, -y, self.v, x])
    }
}

impl fmt::Display for Cusp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v == 0 {
            write!(f, "oo")
        } else if self.v == 1 {
            write!(f, "{}", self.u)
        } else {
            write!(f, "{}/{}", self.u, self.v)
        }
    }
}

/// Matrices `g_j` in `SL2(Z)` with `{0, u/v} = sum_j g_j {0, oo}`, from the
/// continued fraction convergents of `u/v`.
pub fn manin_path(c: &Cusp) -> Vec<Mat2> {
    // convergents p_{-2}/q_{-2} = 0/1, p_{-1}/q_{-1} = 1/0
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    let mut out = vec![to_sl(Mat2([p1, p0, q1, q0]))];
    if c.is_infinity() {
        return out;
    }
    let (mut a, mut b) = (c.u, c.v);
    while b != 0 {
        let (qt, r) = a.div_mod_floor(&b);
        let (p2, q2) = (qt * p1 + p0, qt * q1 + q0);
        (p0, q0, p1, q1) = (p1, q1, p2, q2);
        out.push(to_sl(Mat2([p1, p0, q1, q0])));
        a = b;
        b = r;
    }
    out
}

/// Negates the first column when the determinant is `-1`.
fn to_sl(m: Mat2) -> Mat2 {
    let m = if m.det() == -1 { Mat2([-m.0[0], m.0[1], -m.0[2], m.0[3]]) } else { m };
    debug_assert_eq!(m.det(), 1);
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn action_examples() {
        let x = SymPoly::from_ints(&[0, 1]);
        assert_eq!(sym_action(&Mat2::diag(2, 1), &x), SymPoly::from_ints(&[0, 2]));
        let p = SymPoly::from_ints(&[1, -2, 3]);
        assert_eq!(sym_action(&Mat2::I, &p), p);
        let (g, h) = (Mat2([2, 1, 7, 4]), Mat2([0, -1, 1, 3]));
        assert_eq!(sym_action(&g.mul(&h), &p), sym_action(&g, &sym_action(&h, &p)));
    }

    #[test]
    fn path_ends_at_the_cusp() {
        for (u, v) in [(3, 7), (-5, 12), (0, 1), (1, 0), (22, 7), (-1, 1)] {
            let c = Cusp::new(u, v);
            let path = manin_path(&c);
            assert_eq!(Cusp::INFINITY.act(&path[0]), Cusp::INFINITY);
            assert_eq!(Cusp::ZERO.act(&path[0]), Cusp::ZERO);
            for w in path.windows(2) {
                assert_eq!(Cusp::INFINITY.act(&w[0]), Cusp::ZERO.act(&w[1]));
            }
            assert_eq!(Cusp::INFINITY.act(path.last().unwrap()), c);
        }
    }
}
