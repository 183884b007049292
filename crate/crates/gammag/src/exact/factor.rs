//! Factorization in Q[x]: squarefree decomposition, factorization modulo a
//! small prime, Hensel lifting, and exhaustive recombination of lifted factors.

use std::collections::BTreeSet;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::modp::{self, FpPoly};
use super::multimod::{big_mod, word_primes, Crt};
use super::{Poly, Rational};

type ZPoly = Vec<BigInt>;

/// Monic irreducible factors with multiplicities, sorted by degree and then
/// by coefficients. Constants have no factors.
pub fn factor(f: &Poly<Rational>) -> Vec<(Poly<Rational>, u32)> {
    let mut out = Vec::new();
    for (g, e) in f.squarefree_decomposition() {
        for h in factor_squarefree(&g) {
            out.push((h, e));
        }
    }
    sort_factors(&mut out);
    out
}

pub fn is_irreducible(f: &Poly<Rational>) -> bool {
    let fs = factor(f);
    fs.len() == 1 && fs[0].1 == 1
}

fn sort_factors(v: &mut [(Poly<Rational>, u32)]) {
    v.sort_by(|a, b| {
        a.0.deg().cmp(&b.0.deg()).then_with(|| {
            let ka: Vec<_> = a.0.coeffs().iter().rev().collect();
            let kb: Vec<_> = b.0.coeffs().iter().rev().collect();
            ka.cmp(&kb)
        })
    });
}

/// Monic irreducible factors of a squarefree polynomial.
pub fn factor_squarefree(f: &Poly<Rational>) -> Vec<Poly<Rational>> {
    if f.deg() == 0 {
        return Vec::new();
    }
    let mut z = f.primitive_int();
    let mut out = Vec::new();
    // strip factors of x
    let shift = z.iter().take_while(|c| c.is_zero()).count();
    if shift > 0 {
        out.push(Poly::x());
        z.drain(..shift);
    }
    if z.len() > 1 {
        for g in zassenhaus(&z) {
            out.push(Poly::from_bigints(&g).monic());
        }
    }
    out
}

/// Monic gcd over Q, by CRT of gcds modulo word-size primes. A candidate is
/// accepted once it divides both inputs in Z[x].
pub fn gcd(f: &Poly<Rational>, g: &Poly<Rational>) -> Poly<Rational> {
    if f.is_zero() || g.is_zero() {
        return f.add(g).monic();
    }
    if f.deg() == 0 || g.deg() == 0 {
        return Poly::one();
    }
    let (a, b) = (f.primitive_int(), g.primitive_int());
    let (la, lb) = (a.last().unwrap(), b.last().unwrap());
    let lc = la.gcd(lb);
    let mut best = usize::MAX;
    let mut crt = Crt::new(0);
    for p in word_primes() {
        if big_mod(la, p) == 0 || big_mod(lb, p) == 0 {
            continue;
        }
        let h = modp::gcd(&zred(&a, p), &zred(&b, p), p);
        let d = h.len() - 1;
        if d == 0 {
            return Poly::one();
        }
        if d > best {
            continue;
        }
        if d < best {
            best = d;
            crt = Crt::new(d + 1);
        }
        let h = modp::scale(&h, big_mod(&lc, p), p);
        if !crt.add(&h, p) {
            let cand = primitive(&(0..=d).map(|i| crt.symmetric(i)).collect::<ZPoly>());
            if zdiv_exact(&a, &cand).is_some() && zdiv_exact(&b, &cand).is_some() {
                return Poly::from_bigints(&cand).monic();
            }
        }
    }
    unreachable!("prime supply exhausted")
}

fn zred(f: &ZPoly, p: u64) -> FpPoly {
    modp::trim(f.iter().map(|c| big_mod(c, p)).collect())
}

fn small_primes() -> impl Iterator<Item = u64> {
    (3u64..).step_by(2).filter(|&n| (3..).step_by(2).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

fn reduce_mod_p(f: &ZPoly, p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    modp::trim(f.iter().map(|c| c.mod_floor(&pb).to_u64().unwrap()).collect())
}

fn subset_degree_sums(degs: &[usize]) -> BTreeSet<usize> {
    let mut s = BTreeSet::from([0usize]);
    for &d in degs {
        let add: Vec<usize> = s.iter().map(|x| x + d).collect();
        s.extend(add);
    }
    s
}

/// Irreducible factors over Z of a primitive squarefree polynomial with
/// positive leading coefficient and nonzero constant term.
fn zassenhaus(f: &ZPoly) -> Vec<ZPoly> {
    let n = f.len() - 1;
    if n == 1 {
        return vec![f.clone()];
    }
    let lc = f[n].clone();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut best: Option<(u64, Vec<FpPoly>)> = None;
    let mut allowed: Option<BTreeSet<usize>> = None;
    let mut tried = 0;
    for p in small_primes() {
        if tried >= 6 {
            break;
        }
        if (&lc % BigInt::from(p)).is_zero() {
            continue;
        }
        let fp = reduce_mod_p(f, p);
        if modp::deg(&fp) != n as isize || !modp::is_squarefree(&fp, p) {
            continue;
        }
        tried += 1;
        let facs = modp::factor_squarefree(&modp::monic(&fp, p), p, &mut rng);
        if facs.len() == 1 {
            return vec![f.clone()];
        }
        let degs: Vec<usize> = facs.iter().map(|g| g.len() - 1).collect();
        let sums = subset_degree_sums(&degs);
        allowed = Some(match allowed {
            None => sums,
            Some(a) => a.intersection(&sums).copied().collect(),
        });
        if allowed.as_ref().unwrap().len() == 2 {
            // only 0 and n remain
            return vec![f.clone()];
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
    }
    let (p, facs) = best.expect("no usable prime for factorization");
    let allowed = allowed.unwrap();

    // coefficient bound for factors of lc*f
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let bound = (BigInt::one() << n) * (norm2.sqrt() + 1u32) * &lc * 2u32;
    let pb = BigInt::from(p);
    let mut m = pb.clone();
    let mut e = 1u32;
    while m <= bound {
        m *= &pb;
        e += 1;
    }
    let lifted = hensel_lift(f, &facs, p, e);
    recombine(f, lifted, &m, &allowed)
}

fn sym_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    v
}

fn zmod(a: &ZPoly, m: &BigInt) -> ZPoly {
    let mut v: ZPoly = a.iter().map(|c| c.mod_floor(m)).collect();
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

fn zadd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    (0..n).map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default()).collect()
}

fn zsub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    (0..n).map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default()).collect()
}

/// Division by a monic polynomial modulo `m`.
fn zdivrem_monic(a: &ZPoly, b: &ZPoly, m: &BigInt) -> (ZPoly, ZPoly) {
    let a = zmod(a, m);
    let db = b.len() - 1;
    if a.len() <= db {
        return (Vec::new(), a);
    }
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (db..a.len()).rev() {
        let c = r[i].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for j in 0..=db {
            r[i - db + j] = (&r[i - db + j] - &c * &b[j]).mod_floor(m);
        }
        q[i - db] = c;
    }
    r.truncate(db);
    (zmod(&q, m), zmod(&r, m))
}

fn fp_to_z(a: &FpPoly) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lift `f = lc * prod(facs) mod p` to a factorization modulo `p^e`
/// with monic factors.
fn hensel_lift(f: &ZPoly, facs: &[FpPoly], p: u64, e: u32) -> Vec<ZPoly> {
    let pe = BigInt::from(p).pow(e);
    lift_tree(f, facs, p, &pe)
}

fn lift_tree(f: &ZPoly, facs: &[FpPoly], p: u64, pe: &BigInt) -> Vec<ZPoly> {
    if facs.len() == 1 {
        let lc = f.last().unwrap().clone();
        let inv = lc.modinv(pe).expect("leading coefficient not invertible");
        return vec![zmod(&f.iter().map(|c| c * &inv).collect::<ZPoly>(), pe)];
    }
    let k = facs.len() / 2;
    let prod = |s: &[FpPoly]| s.iter().fold(vec![1u64], |acc, g| modp::mul(&acc, g, p));
    let gl = prod(&facs[..k]);
    let hr = prod(&facs[k..]);
    let lc = f.last().unwrap().mod_floor(&BigInt::from(p)).to_u64().unwrap();
    let g0 = modp::scale(&gl, lc, p);
    let (_, s0, t0) = modp::xgcd(&g0, &hr, p);
    let (g, h) = hensel_pair(f, fp_to_z(&g0), fp_to_z(&hr), fp_to_z(&s0), fp_to_z(&t0), p, pe);
    let mut out = lift_tree(&g, &facs[..k], p, pe);
    out.extend(lift_tree(&h, &facs[k..], p, pe));
    out
}

/// Quadratic Hensel lifting of `f = g h mod p` (h monic) up to modulus `pe`.
fn hensel_pair(
    f: &ZPoly,
    mut g: ZPoly,
    mut h: ZPoly,
    mut s: ZPoly,
    mut t: ZPoly,
    p: u64,
    pe: &BigInt,
) -> (ZPoly, ZPoly) {
    let mut m = BigInt::from(p);
    while m < *pe {
        m = &m * &m;
        let e = zmod(&zsub(f, &zmul(&g, &h)), &m);
        let (q, r) = zdivrem_monic(&zmul(&s, &e), &h, &m);
        let g1 = zmod(&zadd(&zadd(&g, &zmul(&t, &e)), &zmul(&q, &g)), &m);
        let mut h1 = zmod(&zadd(&h, &r), &m);
        // keep h monic
        while h1.len() < h.len() {
            h1.push(BigInt::zero());
        }
        *h1.last_mut().unwrap() = BigInt::one();
        let b = zmod(&zsub(&zadd(&zmul(&s, &g1), &zmul(&t, &h1)), &vec![BigInt::one()]), &m);
        let (c, d) = zdivrem_monic(&zmul(&s, &b), &h1, &m);
        s = zmod(&zsub(&s, &d), &m);
        t = zmod(&zsub(&zsub(&t, &zmul(&t, &b)), &zmul(&c, &g1)), &m);
        g = g1;
        h = h1;
    }
    (zmod(&g, pe), zmod(&h, pe))
}

fn content(a: &ZPoly) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

fn primitive(a: &ZPoly) -> ZPoly {
    let c = content(a);
    let mut v: ZPoly = a.iter().map(|x| x / &c).collect();
    if v.last().is_some_and(|l| l.sign() == Sign::Minus) {
        v = v.into_iter().map(|x| -x).collect();
    }
    v
}

/// Exact division in Z[x]; `None` unless `b` divides `a`.
fn zdiv_exact(a: &ZPoly, b: &ZPoly) -> Option<ZPoly> {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return None;
    }
    let mut r = a.clone();
    let lb = b.last().unwrap();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (db..a.len()).rev() {
        let (c, rem) = r[i].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        if c.is_zero() {
            continue;
        }
        for j in 0..=db {
            r[i - db + j] -= &c * &b[j];
        }
        q[i - db] = c;
    }
    if r.iter().all(|x| x.is_zero()) {
        Some(q)
    } else {
        None
    }
}

fn recombine(f: &ZPoly, mut lifted: Vec<ZPoly>, m: &BigInt, allowed: &BTreeSet<usize>) -> Vec<ZPoly> {
    let mut f = f.clone();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = false;
        let idx: Vec<usize> = (0..lifted.len()).collect();
        for combo in combinations(&idx, size) {
            let d: usize = combo.iter().map(|&i| lifted[i].len() - 1).sum();
            if !allowed.contains(&d) {
                continue;
            }
            let lc = f.last().unwrap().clone();
            let mut g: ZPoly = vec![lc.clone()];
            for &i in &combo {
                g = zmod(&zmul(&g, &lifted[i]), m);
            }
            let g: ZPoly = g.iter().map(|c| sym_mod(c, m)).collect();
            let g = primitive(&g);
            if !f[0].is_zero() && !g[0].is_zero() && !(&f[0] % &g[0]).is_zero() {
                continue;
            }
            if let Some(qt) = zdiv_exact(&f, &g) {
                out.push(g);
                f = qt;
                let keep: Vec<ZPoly> =
                    lifted.iter().enumerate().filter(|(i, _)| !combo.contains(i)).map(|(_, x)| x.clone()).collect();
                lifted = keep;
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    if f.len() > 1 {
        out.push(primitive(&f));
    }
    out
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly<Rational> {
        Poly::from_ints(c)
    }

    #[test]
    fn splits_product_of_known_factors() {
        // (x^2+1)(x^3-3x+1)(x+2)
        let f = p(&[1, 0, 1]).mul(&p(&[1, -3, 0, 1])).mul(&p(&[2, 1]));
        let fs = factor(&f);
        let got: Vec<String> = fs.iter().map(|(g, _)| g.to_string()).collect();
        assert_eq!(got, vec!["x + 2", "x^2 + 1", "x^3 - 3*x + 1"]);
    }

    #[test]
    fn swinnerton_dyer_stays_irreducible() {
        // x^4 - 10x^2 + 1 splits modulo every prime
        assert!(is_irreducible(&p(&[1, 0, -10, 0, 1])));
    }

    #[test]
    fn modular_gcd_agrees_with_euclid() {
        let common = p(&[7, -3, 0, 2]).mul(&p(&[-1, 1]).pow(2));
        let f = common.mul(&p(&[1, 0, 5])).scale(&super::super::qq(3, 4));
        let g = common.mul(&p(&[-9, 4]).pow(3));
        assert_eq!(gcd(&f, &g), f.gcd(&g));
        assert_eq!(gcd(&f, &g), common.monic());
        assert_eq!(gcd(&p(&[1, 1]), &p(&[-1, 1])), Poly::one());
        assert_eq!(gcd(&Poly::zero(), &g), g.monic());
    }

    #[test]
    fn multiplicities_are_reported() {
        let f = p(&[-1, 1]).pow(3).mul(&p(&[1, 1, 1]).pow(2));
        let fs = factor(&f);
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0].1, 3);
        assert_eq!(fs[1].1, 2);
    }

    #[test]
    fn non_monic_rational_input() {
        // (2x - 1)(3x + 5)/7
        let f = p(&[-1, 2]).mul(&p(&[5, 3])).scale(&super::super::qq(1, 7));
        let fs = factor(&f);
        assert_eq!(fs[0].0, Poly::from_coeffs(vec![super::super::qq(-1, 2), Rational::one()]));
        assert_eq!(fs[1].0, Poly::from_coeffs(vec![super::super::qq(5, 3), Rational::one()]));
    }
}
