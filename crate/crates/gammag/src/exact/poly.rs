use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{q, Field, Rational};

/// Dense univariate polynomial, coefficients from degree 0 upward.
/// The zero polynomial has no coefficients; otherwise the top one is nonzero.
#[derive(Clone, PartialEq, Debug)]
pub struct Poly<F> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero_elem()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(c: F) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `x - a`.
    pub fn linear_root(a: &F) -> Self {
        Self::from_coeffs(vec![-a.clone(), a.one_like()])
    }

    /// `c * x^n`.
    pub fn monomial(c: F, n: usize) -> Self {
        let mut v = vec![c.zero_like(); n];
        v.push(c);
        Self::from_coeffs(v)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<F> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&F> {
        self.coeffs.get(i)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut v = Vec::with_capacity(n);
        for i in 0..n {
            match (self.coeffs.get(i), o.coeffs.get(i)) {
                (Some(a), Some(b)) => v.push(a.clone() + b),
                (Some(a), None) => v.push(a.clone()),
                (None, Some(b)) => v.push(b.clone()),
                (None, None) => unreachable!(),
            }
        }
        Self::from_coeffs(v)
    }

    pub fn neg(&self) -> Self {
        Poly { coeffs: self.coeffs.iter().map(|c| -c.clone()).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let z = self.coeffs[0].zero_like();
        let mut v = vec![z; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero_elem() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                let t = a.clone() * b;
                v[i + j] = v[i + j].clone() + &t;
            }
        }
        Self::from_coeffs(v)
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a.clone() * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let one = match self.coeffs.first().or(self.coeffs.last()) {
            Some(c) => Self::constant(c.one_like()),
            None => return if e == 0 { panic!("0^0 polynomial") } else { Self::zero() },
        };
        let mut r = one;
        for _ in 0..e {
            r = r.mul(self);
        }
        r
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dl = d.lead().expect("polynomial division by zero").clone();
        let dd = d.deg();
        if self.is_zero() || self.deg() < dd {
            return (Self::zero(), self.clone());
        }
        let inv = dl.inv();
        let mut r = self.coeffs.clone();
        let z = dl.zero_like();
        let mut quo = vec![z; self.deg() - dd + 1];
        for i in (dd..=self.deg()).rev() {
            if r[i].is_zero_elem() {
                continue;
            }
            let c = r[i].clone() * &inv;
            for j in 0..=dd {
                let t = c.clone() * &d.coeffs[j];
                r[i - dd + j] = r[i - dd + j].clone() - &t;
            }
            quo[i - dd] = c;
        }
        r.truncate(dd);
        (Self::from_coeffs(quo), Self::from_coeffs(r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(l) => self.scale(&l.inv()),
        }
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Self::zero();
        }
        let v = self.coeffs[1..].iter().enumerate().map(|(i, c)| c.from_int_like(i as i64 + 1) * c).collect();
        Self::from_coeffs(v)
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

impl Poly<Rational> {
    pub fn x() -> Self {
        Self::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::from_coeffs(c.iter().map(|&a| q(a)).collect())
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    /// Content-free integer polynomial with positive leading coefficient,
    /// a rational multiple of `self`.
    pub fn primitive_int(&self) -> Vec<BigInt> {
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let mut v: Vec<BigInt> = self.coeffs.iter().map(|c| (c * q_from(&den)).to_integer()).collect();
        let mut g = BigInt::zero();
        for a in &v {
            g = g.gcd(a);
        }
        if !g.is_zero() {
            for a in v.iter_mut() {
                *a /= &g;
            }
        }
        if v.last().is_some_and(|l| l.is_negative()) {
            for a in v.iter_mut() {
                *a = -a.clone();
            }
        }
        v
    }

    pub fn from_bigints(v: &[BigInt]) -> Self {
        Self::from_coeffs(v.iter().map(|a| Rational::from_integer(a.clone())).collect())
    }

    /// Squarefree decomposition: pairs `(g_i, i)` with `self = c * prod g_i^i`,
    /// each `g_i` monic squarefree and pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly<Rational>, u32)> {
        let mut out = Vec::new();
        if self.deg() == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let mut a = super::factor::gcd(&f, &fp);
        let mut b = f.divrem(&a).0;
        let mut c = fp.divrem(&a).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1;
        while b.deg() > 0 {
            a = super::factor::gcd(&b, &d);
            b = b.divrem(&a).0;
            c = d.divrem(&a).0;
            if a.deg() > 0 {
                out.push((a.monic(), i));
            }
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// Parse strings such as `x^3 + 2*x^2 - x - 1` (also accepts `2x^2`).
    pub fn parse(s: &str) -> Option<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return None;
        }
        let mut terms = Vec::new();
        let mut cur = String::new();
        for (i, ch) in t.chars().enumerate() {
            if (ch == '+' || ch == '-') && i > 0 && !cur.ends_with('^') {
                terms.push(std::mem::take(&mut cur));
            }
            cur.push(ch);
        }
        terms.push(cur);
        let mut acc = Self::zero();
        for term in terms {
            let (sign, body) = match term.strip_prefix('-') {
                Some(b) => (-1, b.to_string()),
                None => (1, term.trim_start_matches('+').to_string()),
            };
            let (coef, exp) = if let Some(pos) = body.find('x') {
                let cs = body[..pos].trim_end_matches('*');
                let coef = if cs.is_empty() { Rational::one() } else { super::parse_rational(cs)? };
                let rest = &body[pos + 1..];
                let exp = if rest.is_empty() { 1 } else { rest.strip_prefix('^')?.parse::<usize>().ok()? };
                (coef, exp)
            } else {
                (super::parse_rational(&body)?, 0)
            };
            acc = acc.add(&Self::monomial(coef * q(sign), exp));
        }
        Some(acc)
    }
}

fn q_from(b: &BigInt) -> Rational {
    Rational::from_integer(b.clone())
}

/// Writes `c*var^i` terms from the top degree down, e.g. `x^2 - 3/2*x + 1`.
pub(crate) fn fmt_rational_poly(coeffs: &[Rational], var: &str, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if coeffs.iter().all(|c| c.is_zero()) {
        return write!(f, "0");
    }
    let mut first = true;
    for i in (0..coeffs.len()).rev() {
        let c = &coeffs[i];
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
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        first = false;
        let cs = super::rational_to_string(&a);
        match i {
            0 => write!(f, "{cs}")?,
            _ => {
                if !a.is_one() {
                    write!(f, "{cs}*")?;
                }
                if i == 1 {
                    write!(f, "{var}")?;
                } else {
                    write!(f, "{var}^{i}")?;
                }
            }
        }
    }
    Ok(())
}

impl fmt::Display for Poly<Rational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rational_poly(&self.coeffs, "x", f)
    }
}
