use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::poly::{fmt_rational_poly, Poly};
use super::{CyclotomicEmbed, Field, Rational};

/// `Q[x]/(f)` for a monic irreducible `f`. Irreducibility is the caller's
/// promise; division by a zero divisor panics.
#[derive(Debug, PartialEq)]
pub struct NumberField {
    modulus: Poly<Rational>,
    cyclotomic: Option<u64>,
}

impl NumberField {
    pub fn new(modulus: &Poly<Rational>) -> Arc<Self> {
        assert!(modulus.deg() >= 1, "number field modulus must have positive degree");
        Arc::new(NumberField { modulus: modulus.monic(), cyclotomic: None })
    }

    /// `Q(zeta_n)` with modulus the n-th cyclotomic polynomial.
    pub fn cyclotomic(n: u64) -> Arc<Self> {
        Arc::new(NumberField { modulus: cyclotomic_poly(n), cyclotomic: Some(n) })
    }

    pub fn modulus(&self) -> &Poly<Rational> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.deg()
    }

    pub fn cyclotomic_order(&self) -> Option<u64> {
        self.cyclotomic
    }
}

pub fn cyclotomic_poly(n: u64) -> Poly<Rational> {
    assert!(n >= 1);
    let mut f = Poly::monomial(Rational::one(), n as usize).sub(&Poly::one());
    for d in 1..n {
        if n % d == 0 {
            f = f.divrem(&cyclotomic_poly(d)).0;
        }
    }
    f
}

/// Element of a [`NumberField`], stored by its coordinates in the power basis.
#[derive(Clone)]
pub struct NfElem {
    field: Arc<NumberField>,
    c: Vec<Rational>,
}

impl NfElem {
    pub fn from_poly(field: &Arc<NumberField>, p: &Poly<Rational>) -> Self {
        let r = p.rem(field.modulus());
        let mut c: Vec<Rational> = r.into_coeffs();
        c.resize(field.degree(), Rational::zero());
        NfElem { field: field.clone(), c }
    }

    pub fn from_rational(field: &Arc<NumberField>, x: Rational) -> Self {
        Self::from_poly(field, &Poly::constant(x))
    }

    /// The class of `x`.
    pub fn gen(field: &Arc<NumberField>) -> Self {
        Self::from_poly(field, &Poly::x())
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[Rational] {
        &self.c
    }

    pub fn to_poly(&self) -> Poly<Rational> {
        Poly::from_coeffs(self.c.clone())
    }

    /// `Some(q)` when the element lies in Q.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.c[1..].iter().all(|x| x.is_zero()) {
            Some(self.c[0].clone())
        } else {
            None
        }
    }

    fn same(&self, o: &Self) {
        debug_assert!(Arc::ptr_eq(&self.field, &o.field) || self.field.modulus == o.field.modulus);
    }

    fn inverse(&self) -> Self {
        // extended Euclid on (self, modulus)
        let m = self.field.modulus().clone();
        let (mut r0, mut r1) = (m, self.to_poly());
        let (mut s0, mut s1) = (Poly::<Rational>::zero(), Poly::one());
        assert!(!r1.is_zero(), "inverse of zero in number field");
        while !r1.is_zero() {
            let (qt, r) = r0.divrem(&r1);
            let s = s0.sub(&qt.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        assert!(r0.deg() == 0, "element is a zero divisor; modulus is reducible");
        let inv = r0.coeffs()[0].recip();
        Self::from_poly(&self.field, &s0.scale(&inv))
    }
}

impl PartialEq for NfElem {
    fn eq(&self, o: &Self) -> bool {
        self.c == o.c && (Arc::ptr_eq(&self.field, &o.field) || self.field.modulus == o.field.modulus)
    }
}

impl fmt::Debug for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NfElem({self})")
    }
}

impl fmt::Display for NfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_rational_poly(&self.c, "a", f)
    }
}

impl Add<&NfElem> for NfElem {
    type Output = NfElem;
    fn add(mut self, o: &NfElem) -> NfElem {
        self.same(o);
        for (a, b) in self.c.iter_mut().zip(&o.c) {
            *a += b;
        }
        self
    }
}

impl Sub<&NfElem> for NfElem {
    type Output = NfElem;
    fn sub(mut self, o: &NfElem) -> NfElem {
        self.same(o);
        for (a, b) in self.c.iter_mut().zip(&o.c) {
            *a -= b;
        }
        self
    }
}

impl Mul<&NfElem> for NfElem {
    type Output = NfElem;
    fn mul(self, o: &NfElem) -> NfElem {
        self.same(o);
        if self.field.degree() == 1 {
            return NfElem { c: vec![&self.c[0] * &o.c[0]], field: self.field };
        }
        let p = self.to_poly().mul(&o.to_poly());
        Self::from_poly(&self.field, &p)
    }
}

impl Div<&NfElem> for NfElem {
    type Output = NfElem;
    fn div(self, o: &NfElem) -> NfElem {
        let inv = o.inverse();
        self * &inv
    }
}

impl Neg for NfElem {
    type Output = NfElem;
    fn neg(mut self) -> NfElem {
        for a in self.c.iter_mut() {
            *a = -a.clone();
        }
        self
    }
}

impl Add for NfElem {
    type Output = NfElem;
    fn add(self, o: NfElem) -> NfElem {
        self + &o
    }
}

impl Sub for NfElem {
    type Output = NfElem;
    fn sub(self, o: NfElem) -> NfElem {
        self - &o
    }
}

impl Mul for NfElem {
    type Output = NfElem;
    fn mul(self, o: NfElem) -> NfElem {
        self * &o
    }
}

impl Div for NfElem {
    type Output = NfElem;
    fn div(self, o: NfElem) -> NfElem {
        self / &o
    }
}

impl Field for NfElem {
    fn zero_like(&self) -> Self {
        NfElem { field: self.field.clone(), c: vec![Rational::zero(); self.c.len()] }
    }
    fn one_like(&self) -> Self {
        let mut c = vec![Rational::zero(); self.c.len()];
        c[0] = Rational::one();
        NfElem { field: self.field.clone(), c }
    }
    fn is_zero_elem(&self) -> bool {
        self.c.iter().all(|x| x.is_zero())
    }
    fn from_rational_like(&self, q: &Rational) -> Self {
        let mut c = vec![Rational::zero(); self.c.len()];
        c[0] = q.clone();
        NfElem { field: self.field.clone(), c }
    }
    fn inv(&self) -> Self {
        self.inverse()
    }
}

impl CyclotomicEmbed for NfElem {
    fn root_of_unity(&self, order: u64, exp: u64) -> Option<Self> {
        let m = self.field.cyclotomic_order()?;
        if order == 0 || m % order != 0 {
            return None;
        }
        let e = ((m / order) * (exp % order)) as usize;
        let z = Poly::monomial(Rational::one(), e);
        Some(Self::from_poly(&self.field, &z))
    }
}
