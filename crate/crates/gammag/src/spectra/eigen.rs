//! Systems of Hecke eigenvalues and local Euler factors of irreducible pieces.

use std::sync::Arc;

use num_traits::Zero;

use crate::exact::{Field, Matrix, NfElem, NumberField, Poly, Rational};
use crate::hecke::{diamond_operator, sigma_p};
use crate::nt;
use crate::{Error, Result};

use super::dual::{dual_vector_space, row_restrict};
use super::{Availability, HeckeModule, HeckePiece};

/// `a_1, ..., a_{L-1}` in `Q[x]/(f)`. Entries are `None` where `T_n` needs
/// bad-prime data that was not supplied.
#[derive(Clone, Debug)]
pub struct EigenSystem {
    pub field: Arc<NumberField>,
    pub a: Vec<Option<NfElem>>,
}

impl EigenSystem {
    pub fn precision(&self) -> usize {
        self.a.len() + 1
    }

    pub fn modulus(&self) -> &Poly<Rational> {
        self.field.modulus()
    }

    /// `a_n` for `1 <= n < L`.
    pub fn get(&self, n: usize) -> Option<&NfElem> {
        self.a.get(n.checked_sub(1)?)?.as_ref()
    }

    /// `a_n` as a rational number, when it is one.
    pub fn rational(&self, n: usize) -> Option<Rational> {
        self.get(n)?.as_rational()
    }
}

/// Eigenvalues `a_n`, `n < L`, of an eigenvector of the piece's dual.
/// Prime powers coprime to `N` use `T_{p^r}` directly; at bad primes
/// `a_{p^r} = a_p^r`; everything else is completed multiplicatively.
pub fn eigen_system(m: &HeckeModule, piece: &HeckePiece, l: usize) -> Result<EigenSystem> {
    let dual = dual_vector_space(m, &piece.space)?;
    let field = NumberField::new(&piece.field_poly);
    let kz = NfElem::from_rational(&field, Rational::zero());
    let mut t = Matrix::zeros(dual.dim(), dual.dim(), m.space().zero());
    for &(p, c) in &piece.certificate {
        t = t.add(&row_restrict(&dual, &*m.tp(p)?)?.scale(&Rational::from_integer(c.into())));
    }
    // y (T - x) = 0 over K
    let x = NfElem::gen(&field);
    let mut tk = t.map(&kz, |q| NfElem::from_rational(&field, q.clone()));
    for i in 0..tk.nrows() {
        let d = tk.get(i, i).clone() - &x;
        tk.set(i, i, d);
    }
    let y = tk
        .left_kernel()
        .into_iter()
        .next()
        .ok_or_else(|| Error::Other("no eigenvector over the piece field".into()))?;
    let basis = dual.basis();
    let n = m.space().dim();
    let v: Vec<NfElem> = (0..n)
        .map(|j| {
            let mut s = kz.clone();
            for (yi, b) in y.iter().zip(&basis) {
                if !b[j].is_zero() {
                    s = s + &(yi.clone() * &NfElem::from_rational(&field, b[j].clone()));
                }
            }
            s
        })
        .collect();
    let i0 = v.iter().position(|c| !c.is_zero_elem()).expect("eigenvector is nonzero");
    let pairing = |col: &[Rational]| -> NfElem {
        let mut s = kz.clone();
        for (vj, cj) in v.iter().zip(col) {
            if !cj.is_zero() {
                s = s + &(vj.clone() * &NfElem::from_rational(&field, cj.clone()));
            }
        }
        s / &v[i0]
    };
    let mut a: Vec<Option<NfElem>> = vec![None; l.saturating_sub(1)];
    if l > 1 {
        a[0] = Some(NfElem::from_rational(&field, Rational::from_integer(1.into())));
    }
    for p in nt::primes_up_to(l.saturating_sub(1) as u64) {
        let avail = m.availability(p);
        let mut q = p;
        let mut r = 1u32;
        let mut ap: Option<NfElem> = None;
        while (q as usize) < l {
            let val = match avail {
                Availability::Missing => None,
                Availability::Supplied if r > 1 => ap.clone().map(|x| pow(&x, r)),
                _ => Some(pairing(&m.tn_columns(q, &[i0])?[0])),
            };
            if r == 1 {
                ap = val.clone();
            }
            a[q as usize - 1] = val;
            q *= p;
            r += 1;
        }
    }
    for k in 2..l {
        let f = nt::factorize(k as u64);
        if f.len() < 2 {
            continue;
        }
        let mut prod = Some(a[0].clone().unwrap());
        for (p, e) in f {
            let pe = p.pow(e) as usize;
            prod = match (prod, &a[pe - 1]) {
                (Some(x), Some(y)) => Some(x * y),
                _ => None,
            };
        }
        a[k - 1] = prod;
    }
    Ok(EigenSystem { field, a })
}

fn pow(x: &NfElem, r: u32) -> NfElem {
    let mut out = NfElem::from_rational(x.field(), Rational::from_integer(1.into()));
    for _ in 0..r {
        out = out * x;
    }
    out
}

/// `det(1 - T_p X + <sigma_p> p X^2)` on the piece, for weight 2 and good `p`.
pub fn local_euler_factor(m: &HeckeModule, piece: &HeckePiece, p: u64) -> Result<Poly<Rational>> {
    if m.space().weight() != 2 {
        return Err(Error::Invalid("local Euler factors are implemented in weight 2".into()));
    }
    if m.availability(p) != Availability::Good {
        return Err(Error::Invalid(format!("p = {p} is not coprime to the level and a determinant of G")));
    }
    let zero = m.space().zero();
    let t = piece.space.restrict(&*m.tp(p)?)?;
    let sigma = sigma_p(m.group().group(), p)?;
    let d = piece.space.restrict(&diamond_operator(m.space(), &sigma)?)?;
    let w = t.nrows();
    // det(Y^2 - T Y + p D) is the characteristic polynomial of [[0, I], [-p D, T]]
    let mut c = Matrix::zeros(2 * w, 2 * w, zero);
    let pq = Rational::from_integer((p as i64).into());
    for i in 0..w {
        c.set(i, w + i, zero.one_like());
        for j in 0..w {
            c.set(w + i, j, -(d.get(i, j).clone() * &pq));
            c.set(w + i, w + j, t.get(i, j).clone());
        }
    }
    let mut coeffs = c.charpoly().into_coeffs();
    coeffs.reverse();
    Ok(Poly::from_coeffs(coeffs))
}
