//! Multimodular linear algebra over Q. Characteristic polynomials and primary
//! components are computed modulo word-size primes, lifted by CRT or rational
//! reconstruction, and checked exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;

use super::modp::{self, inv_mod, FpPoly};
use super::random::seeded;
use super::{Matrix, Poly, Rational, Subspace};
use crate::nt::is_prime;

/// Primes in `[2^30, 2^31)`, descending.
pub(crate) fn word_primes() -> impl Iterator<Item = u64> {
    ((1u64 << 30)..(1u64 << 31)).rev().filter(|&p| p % 2 == 1 && is_prime(p))
}

pub(crate) fn big_mod(x: &BigInt, p: u64) -> u64 {
    match x.to_i64() {
        Some(v) => v.rem_euclid(p as i64) as u64,
        None => x.mod_floor(&BigInt::from(p)).to_u64().unwrap(),
    }
}

fn rat_mod(x: &Rational, p: u64) -> Option<u64> {
    let d = big_mod(x.denom(), p);
    (d != 0).then(|| big_mod(x.numer(), p) * inv_mod(d, p) % p)
}

fn poly_mod(f: &Poly<Rational>, p: u64) -> Option<FpPoly> {
    let c: Option<Vec<u64>> = f.coeffs().iter().map(|x| rat_mod(x, p)).collect();
    Some(modp::trim(c?))
}

/// Integer matrix `d m` (row-major) and the common denominator `d`.
fn integral(m: &Matrix<Rational>) -> (Vec<BigInt>, BigInt) {
    let mut d = BigInt::one();
    for i in 0..m.nrows() {
        for x in m.row(i) {
            d = d.lcm(x.denom());
        }
    }
    let mut out = Vec::with_capacity(m.nrows() * m.ncols());
    for i in 0..m.nrows() {
        out.extend(m.row(i).iter().map(|x| x.numer() * (&d / x.denom())));
    }
    (out, d)
}

/// Upper bound on `log2 prod_r (1 + |row_r|_2)`, which bounds every
/// coefficient of the characteristic polynomial (Hadamard on principal minors).
fn hadamard_bits(a: &[BigInt], n: usize) -> u64 {
    let mut total = 0f64;
    for r in 0..n {
        let s: BigInt = a[r * n..(r + 1) * n].iter().map(|x| x * x).sum();
        total += match s.to_f64() {
            Some(v) if v.is_finite() => (1.0 + v.sqrt()).log2(),
            _ => s.bits() as f64 / 2.0 + 1.0,
        };
    }
    (total * (1.0 + 1e-9) + 1.0).ceil() as u64
}

/// Characteristic polynomial mod `p` of a square row-major matrix, low to high.
pub(crate) fn charpoly_mod(a: &[u64], n: usize, p: u64) -> FpPoly {
    let mut h = a.to_vec();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| h[i * n + m - 1] != 0) else {
            continue;
        };
        if i != m {
            for j in 0..n {
                h.swap(i * n + j, m * n + j);
            }
            for j in 0..n {
                h.swap(j * n + i, j * n + m);
            }
        }
        let inv = inv_mod(h[m * n + m - 1], p);
        for i in m + 1..n {
            let u = h[i * n + m - 1] * inv % p;
            if u == 0 {
                continue;
            }
            for j in 0..n {
                h[i * n + j] = (h[i * n + j] + p - u * h[m * n + j] % p) % p;
            }
            for j in 0..n {
                h[j * n + m] = (h[j * n + m] + u * h[j * n + i]) % p;
            }
        }
    }
    let mut polys: Vec<FpPoly> = vec![vec![1]];
    for m in 1..=n {
        let lin = vec![(p - h[(m - 1) * n + m - 1]) % p, 1];
        let mut pm = modp::mul(&lin, &polys[m - 1], p);
        let mut t = 1u64;
        for i in (1..m).rev() {
            t = t * h[i * n + i - 1] % p;
            if t == 0 {
                break;
            }
            let c = h[(i - 1) * n + m - 1] * t % p;
            if c != 0 {
                pm = modp::sub(&pm, &modp::scale(&polys[i - 1], c, p), p);
            }
        }
        polys.push(pm);
    }
    let mut out = polys.pop().unwrap();
    out.resize(n + 1, 0);
    out
}

/// Incremental CRT of a vector of residues, kept in `[0, modulus)`.
pub(crate) struct Crt {
    pub(crate) modulus: BigInt,
    values: Vec<BigInt>,
}

impl Crt {
    pub(crate) fn new(len: usize) -> Self {
        Crt { modulus: BigInt::one(), values: vec![BigInt::zero(); len] }
    }

    /// Folds in residues mod `p`; `false` when no symmetric value changed.
    pub(crate) fn add(&mut self, r: &[u64], p: u64) -> bool {
        let mut changed = false;
        let mp = big_mod(&self.modulus, p);
        let inv = inv_mod(mp, p);
        let pb = BigInt::from(p);
        let half = &self.modulus >> 1;
        for (x, &ri) in self.values.iter_mut().zip(r) {
            let xm = big_mod(x, p);
            let k = (ri + p - xm) % p * inv % p;
            let neg = *x > half;
            if k != 0 {
                *x += &self.modulus * BigInt::from(k);
                changed |= !neg || k != p - 1;
            } else {
                changed |= neg;
            }
        }
        self.modulus *= pb;
        changed
    }

    pub(crate) fn symmetric(&self, i: usize) -> BigInt {
        let x = &self.values[i];
        if x * 2 > self.modulus {
            x - &self.modulus
        } else {
            x.clone()
        }
    }
}

/// `a/b` with `|a|, b <= sqrt(m / 2)` and `a = b x mod m`, if one exists.
fn rational_reconstruction(x: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), x.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let (q, r) = r0.div_rem(&r1);
        let t = &t0 - &q * &t1;
        (r0, r1, t0, t1) = (r1, r, t1, t);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rational::new(r1, t1))
}

/// Characteristic polynomial of a rational matrix, from residues modulo
/// enough primes to cover the Hadamard bound.
pub fn charpoly(m: &Matrix<Rational>) -> Poly<Rational> {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "charpoly of a non-square matrix");
    let (a, d) = integral(m);
    let bits = hadamard_bits(&a, n) + 1;
    let mut crt = Crt::new(n + 1);
    let mut got = 0u64;
    for p in word_primes() {
        if got > bits {
            break;
        }
        let r: Vec<u64> = a.iter().map(|x| big_mod(x, p)).collect();
        crt.add(&charpoly_mod(&r, n, p), p);
        got += 30;
    }
    // charpoly(d m)(x) = d^n charpoly(m)(x / d)
    let coeffs = (0..=n).map(|k| Rational::new(crt.symmetric(k), num_traits::pow(d.clone(), n - k))).collect();
    Poly::from_coeffs(coeffs)
}

/// Reductions of `parts` mod `p` when they are defined and pairwise coprime.
fn coprime_reductions(parts: &[(Poly<Rational>, u32)], p: u64) -> Option<Vec<FpPoly>> {
    let red: Option<Vec<FpPoly>> = parts.iter().map(|(f, _)| poly_mod(f, p)).collect();
    let red = red?;
    if red.iter().zip(parts).any(|(r, (f, _))| r.len() != f.coeffs().len()) {
        return None;
    }
    for i in 0..red.len() {
        for j in i + 1..red.len() {
            if modp::gcd(&red[i], &red[j], p).len() != 1 {
                return None;
            }
        }
    }
    Some(red)
}

fn divides_times(f: &FpPoly, g: &FpPoly, p: u64) -> u32 {
    let mut g = g.clone();
    let mut e = 0;
    loop {
        let (q, r) = modp::divrem(&g, f, p);
        if !r.is_empty() {
            return e;
        }
        g = q;
        e += 1;
    }
}

/// Factorization of the characteristic polynomial of `c`, given that it divides
/// `prod f_i^{a_i}` for the distinct monic irreducibles in `parts`. Exact: the
/// exponents are read off modulo one prime where the `f_i` stay coprime.
pub fn charpoly_from_factors(c: &Matrix<Rational>, parts: &[(Poly<Rational>, u32)]) -> Vec<(Poly<Rational>, u32)> {
    let n = c.nrows();
    let (a, d) = integral(c);
    for p in word_primes() {
        let dp = big_mod(&d, p);
        if dp == 0 {
            continue;
        }
        let Some(red) = coprime_reductions(parts, p) else {
            continue;
        };
        let di = inv_mod(dp, p);
        let r: Vec<u64> = a.iter().map(|x| big_mod(x, p) * di % p).collect();
        let chi = charpoly_mod(&r, n, p);
        let mut out = Vec::new();
        let mut check: FpPoly = vec![1];
        for ((f, amax), fr) in parts.iter().zip(&red) {
            let e = divides_times(fr, &chi, p).min(*amax);
            if e > 0 {
                out.push((f.clone(), e));
                for _ in 0..e {
                    check = modp::mul(&check, fr, p);
                }
            }
        }
        assert_eq!(check, chi, "characteristic polynomial is not a product of the given factors");
        return out;
    }
    unreachable!("no usable prime")
}

/// Row echelon form mod `p`, built one vector at a time and kept fully reduced.
struct Echelon {
    n: usize,
    p: u64,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl Echelon {
    fn new(n: usize, p: u64) -> Self {
        Echelon { n, p, rows: Vec::new(), pivots: Vec::new() }
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    fn insert(&mut self, mut v: Vec<u64>) -> bool {
        let p = self.p;
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let x = v[c];
            if x != 0 {
                for j in 0..self.n {
                    v[j] = (v[j] + p - x * row[j] % p) % p;
                }
            }
        }
        let Some(c) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(v[c], p);
        for x in v.iter_mut() {
            *x = *x * inv % p;
        }
        for row in self.rows.iter_mut() {
            let x = row[c];
            if x != 0 {
                for j in 0..self.n {
                    row[j] = (row[j] + p - x * v[j] % p) % p;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < c);
        self.rows.insert(at, v);
        self.pivots.insert(at, c);
        true
    }
}

fn mat_vec(a: &[u64], n: usize, v: &[u64], p: u64) -> Vec<u64> {
    (0..n).map(|i| a[i * n..(i + 1) * n].iter().zip(v).fold(0u64, |acc, (x, y)| (acc + x * y) % p)).collect()
}

/// Echelon basis mod `p` of `ker f_i^{a_i}(t)`, as the span of `g(t) v` and its
/// Krylov iterates for random `v`, where `g` is the product of the other parts.
fn component_mod(
    t: &[u64],
    n: usize,
    red: &[FpPoly],
    parts: &[(Poly<Rational>, u32)],
    i: usize,
    p: u64,
) -> Option<Echelon> {
    let target = parts[i].0.deg() * parts[i].1 as usize;
    let mut g: FpPoly = vec![1];
    for (j, (fr, (_, a))) in red.iter().zip(parts).enumerate() {
        if j != i {
            for _ in 0..*a {
                g = modp::mul(&g, fr, p);
            }
        }
    }
    let mut rng = seeded(p);
    let mut e = Echelon::new(n, p);
    for _ in 0..target + 8 {
        if e.rows.len() >= target {
            break;
        }
        let v: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        let mut u = vec![0u64; n];
        for &c in g.iter().rev() {
            u = mat_vec(t, n, &u, p);
            for (x, y) in u.iter_mut().zip(&v) {
                *x = (*x + c * y) % p;
            }
        }
        while e.rows.len() < target && e.insert(u.clone()) {
            u = mat_vec(t, n, &u, p);
        }
    }
    (e.rows.len() == target).then_some(e)
}

/// Rational echelon basis from the CRT images of the non-pivot entries.
fn reconstruct(crt: &Crt, pivots: &[usize], n: usize) -> Option<Vec<Vec<Rational>>> {
    let d = pivots.len();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let mut rows = vec![vec![Rational::zero(); n]; d];
    for (r, &c) in pivots.iter().enumerate() {
        rows[r][c] = Rational::one();
        for (k, &j) in free.iter().enumerate() {
            rows[r][j] = rational_reconstruction(&crt.values[r * free.len() + k], &crt.modulus)?;
        }
    }
    Some(rows)
}

fn free_entries(e: &Echelon) -> Vec<u64> {
    let mut out = Vec::new();
    for row in &e.rows {
        out.extend((0..e.n).filter(|c| !e.pivots.contains(c)).map(|c| row[c]));
    }
    out
}

/// Images `dt t (den_k b_k)` of a scaled echelon basis, with the row
/// denominators `den_k`; `None` unless the span is `t`-invariant.
fn invariant_images(
    t: &(Vec<BigInt>, BigInt),
    n: usize,
    rows: &[Vec<Rational>],
    pivots: &[usize],
) -> Option<(Vec<BigInt>, Vec<Vec<BigInt>>)> {
    let ti = &t.0;
    let d = rows.len();
    let dens: Vec<BigInt> = rows.iter().map(|r| r.iter().fold(BigInt::one(), |a, x| a.lcm(x.denom()))).collect();
    let ints: Vec<Vec<BigInt>> =
        rows.iter().zip(&dens).map(|(r, den)| r.iter().map(|x| x.numer() * (den / x.denom())).collect()).collect();
    let l = dens.iter().fold(BigInt::one(), |a, x| a.lcm(x));
    let scale: Vec<BigInt> = dens.iter().map(|x| &l / x).collect();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    // invariance iff l u_k = sum_j u_k[piv_j] (l / den_j) b_j den_j
    let mut images = Vec::with_capacity(d);
    for b in &ints {
        let u: Vec<BigInt> = (0..n)
            .map(|r| {
                ti[r * n..(r + 1) * n]
                    .iter()
                    .zip(b)
                    .filter(|(x, y)| !x.is_zero() && !y.is_zero())
                    .map(|(x, y)| x * y)
                    .sum()
            })
            .collect();
        for &c in &free {
            let rhs: BigInt =
                (0..d).filter(|&j| !ints[j][c].is_zero()).map(|j| &u[pivots[j]] * &scale[j] * &ints[j][c]).sum();
            if rhs != &l * &u[c] {
                return None;
            }
        }
        images.push(u);
    }
    Some((dens, images))
}

/// Matrix of `t` on the span of an echelon basis, in echelon coordinates.
pub fn restrict(t: &Matrix<Rational>, rows: &[Vec<Rational>], pivots: &[usize]) -> Option<Matrix<Rational>> {
    let n = t.nrows();
    let ti = integral(t);
    let (dens, images) = invariant_images(&ti, n, rows, pivots)?;
    let d = rows.len();
    let cols = images
        .iter()
        .zip(&dens)
        .map(|(u, den)| {
            let q = &ti.1 * den;
            pivots.iter().map(|&c| Rational::new(u[c].clone(), q.clone())).collect()
        })
        .collect();
    Some(Matrix::from_cols(cols, d, t.zero_elem()))
}

/// Exact check that `rows` spans `ker f_i^{a_i}(t)`: the span is `t`-invariant and
/// the characteristic polynomial of `t` on it is `f_i^{a_i}`.
fn verify_component(
    t: &(Vec<BigInt>, BigInt),
    n: usize,
    rows: &[Vec<Rational>],
    pivots: &[usize],
    parts: &[(Poly<Rational>, u32)],
    i: usize,
) -> bool {
    let dt = &t.1;
    let d = rows.len();
    let Some((dens, images)) = invariant_images(t, n, rows, pivots) else {
        return false;
    };
    // C[j][k] = u_k[piv_j] / (dt den_k)
    for p in word_primes() {
        let den_ok = big_mod(dt, p) != 0 && dens.iter().all(|x| big_mod(x, p) != 0);
        if !den_ok {
            continue;
        }
        let Some(red) = coprime_reductions(parts, p) else {
            continue;
        };
        let dtinv = inv_mod(big_mod(dt, p), p);
        let mut c = vec![0u64; d * d];
        for (k, u) in images.iter().enumerate() {
            let s = dtinv * inv_mod(big_mod(&dens[k], p), p) % p;
            for j in 0..d {
                c[j * d + k] = big_mod(&u[pivots[j]], p) * s % p;
            }
        }
        let mut want: FpPoly = vec![1];
        for _ in 0..parts[i].1 {
            want = modp::mul(&want, &red[i], p);
        }
        return charpoly_mod(&c, d, p) == want;
    }
    unreachable!("no usable prime")
}

/// `ker f_i^{a_i}(t)` where `parts` is the factorization of the characteristic
/// polynomial of `t` into distinct monic irreducibles.
pub fn primary_component(t: &Matrix<Rational>, parts: &[(Poly<Rational>, u32)], i: usize) -> Subspace<Rational> {
    let n = t.nrows();
    let zero = t.zero_elem();
    if parts.len() == 1 {
        return Subspace::full(n, zero);
    }
    let ti = integral(t);
    let mut best: Option<Vec<usize>> = None;
    let mut crt = Crt::new(0);
    let mut candidate: Option<Vec<Vec<Rational>>> = None;
    let mut count = 0usize;
    let mut next_try = 1usize;
    for p in word_primes() {
        let dp = big_mod(&ti.1, p);
        if dp == 0 {
            continue;
        }
        let Some(red) = coprime_reductions(parts, p) else {
            continue;
        };
        let di = inv_mod(dp, p);
        let tm: Vec<u64> = ti.0.iter().map(|x| big_mod(x, p) * di % p).collect();
        let Some(e) = component_mod(&tm, n, &red, parts, i, p) else {
            continue;
        };
        match &best {
            Some(b) if *b < e.pivots => continue,
            Some(b) if *b == e.pivots => {}
            _ => {
                best = Some(e.pivots.clone());
                crt = Crt::new(e.rows.len() * (n - e.rows.len()));
                candidate = None;
                count = 0;
                next_try = 1;
            }
        }
        let pivots = best.clone().unwrap();
        let residues = free_entries(&e);
        if let Some(rows) = &candidate {
            let agrees = rows
                .iter()
                .flat_map(|r| pivots_free(r, &pivots))
                .zip(&residues)
                .all(|(x, &y)| rat_mod(x, p) == Some(y));
            if agrees && verify_component(&ti, n, rows, &pivots, parts, i) {
                let basis = Matrix::from_rows(rows.clone(), zero);
                return Subspace::from_echelon(basis, pivots);
            }
            candidate = None;
        }
        crt.add(&residues, p);
        count += 1;
        if count >= next_try {
            candidate = reconstruct(&crt, &pivots, n);
            next_try = count + count.div_ceil(4);
        }
    }
    unreachable!("ran out of primes")
}

fn pivots_free<'a>(row: &'a [Rational], pivots: &'a [usize]) -> impl Iterator<Item = &'a Rational> + 'a {
    row.iter().enumerate().filter(|(c, _)| !pivots.contains(c)).map(|(_, x)| x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::factor::factor;
    use crate::exact::{q, qq};

    fn sample(n: usize, seed: u64) -> Matrix<Rational> {
        let mut rng = seeded(seed);
        let rows = (0..n)
            .map(|_| {
                (0..n).map(|_| Rational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=4).into())).collect()
            })
            .collect();
        Matrix::from_rows(rows, &q(0))
    }

    #[test]
    fn charpoly_matches_hessenberg() {
        for (n, seed) in [(1, 1), (5, 2), (12, 3), (20, 4)] {
            let m = sample(n, seed);
            assert_eq!(charpoly(&m), m.charpoly_hessenberg());
        }
    }

    #[test]
    fn reconstruction() {
        let m = BigInt::from(1_000_000_007u64) * BigInt::from(998_244_353u64);
        let x = Rational::new((-17).into(), 23.into());
        let r = rat_mod(&x, 1_000_000_007).unwrap();
        let s = rat_mod(&x, 998_244_353).unwrap();
        let mut crt = Crt::new(1);
        crt.add(&[r], 1_000_000_007);
        crt.add(&[s], 998_244_353);
        assert_eq!(crt.modulus, m);
        assert_eq!(rational_reconstruction(&crt.values[0], &m), Some(x));
    }

    #[test]
    fn components_of_a_block_matrix() {
        // diag(A, A, B) conjugated by a unimodular matrix
        let a = Matrix::from_int_rows(&[vec![0, 1], vec![3, 0]]);
        let b = Matrix::from_int_rows(&[vec![0, 0, 1], vec![1, 0, 1], vec![0, 1, 0]]);
        let mut m = Matrix::zeros_q(7, 7);
        for (off, blk) in [(0, &a), (2, &a), (4, &b)] {
            for i in 0..blk.nrows() {
                for j in 0..blk.ncols() {
                    m.set(off + i, off + j, blk.get(i, j).clone());
                }
            }
        }
        let mut u = Matrix::identity_q(7);
        for i in 0..6 {
            u.set(i, i + 1, q(i as i64 - 2));
        }
        let uinv = {
            let (r, _) = {
                let mut aug = Matrix::zeros_q(7, 14);
                for i in 0..7 {
                    for j in 0..7 {
                        aug.set(i, j, u.get(i, j).clone());
                    }
                    aug.set(i, 7 + i, q(1));
                }
                aug.rref()
            };
            r.submatrix(0, 7, 7, 14)
        };
        let t = u.mul(&m).mul(&uinv);
        let parts = factor(&charpoly(&t));
        assert_eq!(parts.len(), 2);
        for (i, (f, a)) in parts.iter().enumerate() {
            let w = primary_component(&t, &parts, i);
            assert_eq!(w.dim(), f.deg() * *a as usize);
            let k = t.eval_poly(&f.pow(*a));
            assert_eq!(w, Subspace::span(&k.kernel(), 7, &q(0)));
            assert_eq!(charpoly_from_factors(&w.restrict(&t).unwrap(), &parts), vec![(f.clone(), *a)]);
            let r = restrict(&t.scale(&qq(1, 3)), &w.basis(), w.pivots()).unwrap();
            assert_eq!(r, w.restrict(&t).unwrap().scale(&qq(1, 3)));
        }
        let line = Subspace::span(&[vec![q(1), q(2), q(0), q(0), q(0), q(0), q(-1)]], 7, &q(0));
        assert!(restrict(&t, &line.basis(), line.pivots()).is_none());
    }
}
