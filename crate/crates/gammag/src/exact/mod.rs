//! Exact arithmetic: rationals, univariate polynomials, number fields,
//! dense matrices over a field, factorization over Q, and the seeded RNG.

pub mod factor;
pub mod matrix;
pub mod modp;
pub mod multimod;
pub mod numfield;
pub mod poly;
pub mod random;
pub mod subspace;

use std::fmt::{Debug, Display};
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

pub use matrix::Matrix;
pub use numfield::{NfElem, NumberField};
pub use poly::Poly;
pub use subspace::Subspace;

/// Arbitrary precision rational number.
pub type Rational = num_rational::BigRational;

/// A field element. Elements carry enough context to produce their own
/// zero and one, which lets number field elements share this interface.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
    + for<'a> Div<&'a Self, Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn from_rational_like(&self, q: &Rational) -> Self;

    fn from_int_like(&self, n: i64) -> Self {
        self.from_rational_like(&Rational::from_integer(BigInt::from(n)))
    }

    fn is_one_elem(&self) -> bool {
        *self == self.one_like()
    }

    fn inv(&self) -> Self {
        self.one_like() / self
    }

    /// A faster characteristic polynomial than Hessenberg reduction, if the field has one.
    fn charpoly_hook(_m: &Matrix<Self>) -> Option<Poly<Self>> {
        None
    }

    /// Restriction of `op` to an invariant subspace, by a faster route if the field has one.
    /// `Some(None)` means the subspace is not invariant.
    fn restrict_hook(_s: &Subspace<Self>, _op: &Matrix<Self>) -> Option<Option<Matrix<Self>>> {
        None
    }
}

/// Fields containing the roots of unity needed for a character.
pub trait CyclotomicEmbed: Field {
    /// `zeta_order^exp`, or `None` when this field lacks that root of unity.
    fn root_of_unity(&self, order: u64, exp: u64) -> Option<Self>;
}

impl Field for Rational {
    fn zero_like(&self) -> Self {
        Rational::zero()
    }
    fn one_like(&self) -> Self {
        Rational::one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn from_rational_like(&self, q: &Rational) -> Self {
        q.clone()
    }
    fn is_one_elem(&self) -> bool {
        self.is_one()
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn charpoly_hook(m: &Matrix<Self>) -> Option<Poly<Self>> {
        (m.nrows() >= MULTIMODULAR_MIN_DIM).then(|| multimod::charpoly(m))
    }
    fn restrict_hook(s: &Subspace<Self>, op: &Matrix<Self>) -> Option<Option<Matrix<Self>>> {
        (s.dim() >= MULTIMODULAR_MIN_DIM).then(|| multimod::restrict(op, &s.basis(), s.pivots()))
    }
}

/// Rational matrices at least this large get multimodular characteristic polynomials.
const MULTIMODULAR_MIN_DIM: usize = 16;

impl CyclotomicEmbed for Rational {
    fn root_of_unity(&self, order: u64, exp: u64) -> Option<Self> {
        let e = exp % order.max(1);
        if e == 0 {
            Some(Rational::one())
        } else if 2 * e == order {
            Some(-Rational::one())
        } else {
            None
        }
    }
}

pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn qq(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn q_big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Parse `a`, `-a` or `a/b`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rational::new(n, d))
    } else {
        s.parse::<BigInt>().ok().map(Rational::from_integer)
    }
}

pub fn rational_to_string(x: &Rational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
