//! Splitting the working space into irreducible Hecke modules.

use std::cmp::Ordering;

use crate::exact::factor::factor;
use crate::exact::multimod::{charpoly_from_factors, primary_component};
use crate::exact::random::{seeded, small_nonzero};
use crate::exact::{Matrix, Poly, Rational, Subspace};
use crate::{Error, Result};

use super::{Factored, HeckeModule};

/// Attempts of random combinations in [`is_irreducible`] after the single operators.
const RETRIES: usize = 8;
/// Operators entering a random combination.
const COMBO_PRIMES: usize = 4;

/// An irreducible piece of the working space.
#[derive(Clone, Debug)]
pub struct HeckePiece {
    /// Subspace of the ambient modular symbols space.
    pub space: Subspace<Rational>,
    /// Characteristic polynomial of `T_p` on the piece, `p = label_prime`.
    pub label: Poly<Rational>,
    pub label_prime: u64,
    /// An operator `sum c_p T_p` whose characteristic polynomial on the piece
    /// is `g^m` with `g` irreducible, and that `g`.
    pub certificate: Vec<(u64, i64)>,
    pub field_poly: Poly<Rational>,
}

impl HeckePiece {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }
}

/// `sum c_p T_p` on the working space.
fn combination(m: &HeckeModule, combo: &[(u64, i64)]) -> Result<Matrix<Rational>> {
    let n = m.working().dim();
    let mut acc = Matrix::zeros(n, n, m.space().zero());
    for &(p, c) in combo {
        acc = acc.add(&m.tp_working(p)?.scale(&Rational::from_integer(c.into())));
    }
    Ok(acc)
}

/// `Some(g)` when the characteristic polynomial of `t` is `g^m`, `g` irreducible,
/// and `g(t) = 0`.
fn irreducible_power(t: &Matrix<Rational>, mult: usize) -> Option<Poly<Rational>> {
    let f = factor(&t.charpoly());
    if f.len() != 1 || f[0].1 as usize != mult {
        return None;
    }
    let g = f[0].0.clone();
    (mult == 1 || t.eval_poly(&g).is_zero()).then_some(g)
}

/// Seeded random combinations of the first few good `T_p`, tried on `w`
/// (in working coordinates) until one has characteristic polynomial `g^m`.
fn certify(m: &HeckeModule, w: &Subspace<Rational>, seed: u64) -> Result<Option<(Vec<(u64, i64)>, Poly<Rational>)>> {
    let mult = m.multiplicity();
    if w.dim() % mult != 0 {
        return Ok(None);
    }
    let primes = m.good_primes();
    let pool = &primes[..primes.len().min(COMBO_PRIMES)];
    let mut tries: Vec<Vec<(u64, i64)>> = pool.iter().map(|&p| vec![(p, 1)]).collect();
    let mut rng = seeded(seed);
    for _ in 0..RETRIES {
        tries.push(pool.iter().map(|&p| (p, small_nonzero(&mut rng, 10))).collect());
    }
    for combo in tries {
        let t = w.restrict(&combination(m, &combo)?)?;
        if let Some(g) = irreducible_power(&t, mult) {
            return Ok(Some((combo, g)));
        }
    }
    Ok(None)
}

/// Whether the piece passes the randomized irreducibility test. `true` is
/// proven on the plus part, where the certificate has an irreducible
/// characteristic polynomial.
pub fn is_irreducible(m: &HeckeModule, piece: &Subspace<Rational>, seed: u64) -> Result<bool> {
    let w = to_working(m, piece)?;
    Ok(certify(m, &w, seed)?.is_some())
}

fn to_working(m: &HeckeModule, piece: &Subspace<Rational>) -> Result<Subspace<Rational>> {
    let coords: Option<Vec<Vec<Rational>>> = piece.basis().iter().map(|v| m.working().coordinates(v)).collect();
    let coords = coords.ok_or_else(|| Error::Invalid("piece is not inside the working space".into()))?;
    Ok(Subspace::span(&coords, m.working().dim(), m.space().zero()))
}

type Raw = (Subspace<Rational>, Vec<(u64, i64)>, Poly<Rational>);

/// Factored characteristic polynomial of `T_p` on `w`, a subspace of the working space.
fn restricted_factors(m: &HeckeModule, w: &Subspace<Rational>, t: &Matrix<Rational>, p: u64) -> Result<Factored> {
    let full = m.tp_factored(p)?;
    Ok(if w.dim() == m.working().dim() { (*full).clone() } else { charpoly_from_factors(t, &full) })
}

/// Splits `w` by the primary decomposition of `T_{primes[i]}`. A part that
/// stays whole is tested for irreducibility and otherwise split further with
/// the next prime; a proper part starts over from the first prime.
fn split(
    m: &HeckeModule,
    w: Subspace<Rational>,
    i: usize,
    primes: &[u64],
    seed: u64,
    out: &mut Vec<Raw>,
) -> Result<()> {
    if w.dim() == 0 {
        return Ok(());
    }
    let Some(&p) = primes.get(i) else {
        return Err(Error::NoSplit { dim: w.dim(), bound: m.prime_cap() });
    };
    let t = w.restrict(&*m.tp_working(p)?)?;
    let parts = restricted_factors(m, &w, &t, p)?;
    if parts.len() == 1 {
        let (f, a) = &parts[0];
        let mult = m.multiplicity();
        if *a as usize == mult && (mult == 1 || t.eval_poly(f).is_zero()) {
            out.push((w, vec![(p, 1)], f.clone()));
        } else if let Some((combo, g)) = certify(m, &w, seed)? {
            out.push((w, combo, g));
        } else {
            split(m, w, i + 1, primes, seed, out)?;
        }
        return Ok(());
    }
    for k in 0..parts.len() {
        split(m, w.embed(&primary_component(&t, &parts, k)), 0, primes, seed, out)?;
    }
    Ok(())
}

fn cmp_label(a: &Poly<Rational>, b: &Poly<Rational>) -> Ordering {
    let ka: Vec<_> = a.coeffs().iter().rev().collect();
    let kb: Vec<_> = b.coeffs().iter().rev().collect();
    ka.cmp(&kb)
}

/// Decomposes the working space into irreducible Hecke modules, sorted by
/// dimension and then by label.
pub fn decompose(m: &HeckeModule, seed: u64) -> Result<Vec<HeckePiece>> {
    let primes = m.good_primes();
    let label_prime = *primes.first().ok_or_else(|| Error::Invalid("no good prime below the cap".into()))?;
    let full = Subspace::full(m.working().dim(), m.space().zero());
    let mut raw = Vec::new();
    split(m, full, 0, &primes, seed, &mut raw)?;
    let mut pieces = Vec::with_capacity(raw.len());
    for (w, certificate, field_poly) in raw {
        let t = w.restrict(&*m.tp_working(label_prime)?)?;
        let label =
            restricted_factors(m, &w, &t, label_prime)?.iter().fold(Poly::one(), |acc, (f, a)| acc.mul(&f.pow(*a)));
        pieces.push(HeckePiece { space: m.working().embed(&w), label, label_prime, certificate, field_poly });
    }
    pieces.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| cmp_label(&a.label, &b.label)));
    Ok(pieces)
}
