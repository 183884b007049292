//! Standard subgroups of `GL2(Z/NZ)`.

use super::group::{unit_generators, GroupModN};
use super::mat::{modn, ModMat};
use crate::nt;
use crate::{Error, Result};

fn units_diag(n: u32, upper: bool, lower: bool) -> Vec<ModMat> {
    let mut gens = Vec::new();
    for u in unit_generators(n) {
        if upper {
            gens.push(modn::reduce_i([u as i64, 0, 0, 1], n));
        }
        if lower {
            gens.push(modn::reduce_i([1, 0, 0, u as i64], n));
        }
    }
    gens
}

/// Upper triangular matrices; `Gamma_G = Gamma_0(N)`.
pub fn gamma0(n: u32) -> Result<GroupModN> {
    let mut gens = vec![modn::reduce_i([1, 1, 0, 1], n)];
    gens.extend(units_diag(n, true, true));
    GroupModN::generate(n, &gens)
}

/// `[[1, *], [0, *]]`; `Gamma_G = Gamma_1(N)`.
pub fn gamma1(n: u32) -> Result<GroupModN> {
    let mut gens = vec![modn::reduce_i([1, 1, 0, 1], n)];
    gens.extend(units_diag(n, false, true));
    GroupModN::generate(n, &gens)
}

/// `[[1, 0], [0, *]]`; `Gamma_G = Gamma(N)`.
pub fn gamma_full(n: u32) -> Result<GroupModN> {
    GroupModN::generate(n, &units_diag(n, false, true))
}

fn squarefree_odd_primes(n: u32) -> Result<Vec<u32>> {
    let f = nt::factorize(n as u64);
    if n < 3 || f.iter().any(|&(p, e)| e > 1 || p == 2) {
        return Err(Error::Invalid(format!("non-split Cartan needs an odd prime or squarefree odd level, got {n}")));
    }
    Ok(f.iter().map(|&(p, _)| p as u32).collect())
}

/// Matrix congruent to `x` modulo `p` and to the identity modulo `n / p`.
fn crt_embed(x: &ModMat, p: u32, n: u32) -> ModMat {
    let m = n / p;
    let id = [1u32, 0, 0, 1];
    let mut out = [0u32; 4];
    for i in 0..4 {
        out[i] = nt::crt(x[i] as i128, p as i128, (id[i] % m.max(1)) as i128, m as i128).unwrap() as u32;
    }
    out
}

/// Generator of the cyclic group `{[[a, u b], [b, a]]}` modulo an odd prime `p`.
fn cartan_generator(p: u32) -> ModMat {
    let u = nt::least_nonresidue(p as u64) as u32;
    let order = (p as u64) * (p as u64) - 1;
    let prime_factors: Vec<u64> = nt::factorize(order).iter().map(|&(q, _)| q).collect();
    for a in 0..p {
        for b in 1..p {
            let x = [a, (u as u64 * b as u64 % p as u64) as u32, b, a];
            if !modn::is_invertible(&x, p) {
                continue;
            }
            let is_gen = prime_factors.iter().all(|&q| mat_pow(&x, order / q, p) != modn::identity(p));
            if is_gen {
                return x;
            }
        }
    }
    unreachable!("the non-split Cartan is cyclic")
}

fn mat_pow(x: &ModMat, mut e: u64, n: u32) -> ModMat {
    let mut r = modn::identity(n);
    let mut b = *x;
    while e > 0 {
        if e & 1 == 1 {
            r = modn::mul(&r, &b, n);
        }
        b = modn::mul(&b, &b, n);
        e >>= 1;
    }
    r
}

fn cartan_gens(n: u32, plus: bool) -> Result<Vec<ModMat>> {
    let primes = squarefree_odd_primes(n)?;
    let mut gens = Vec::new();
    for &p in &primes {
        gens.push(crt_embed(&cartan_generator(p), p, n));
        if plus {
            gens.push(crt_embed(&[1, 0, 0, p - 1], p, n));
        }
    }
    Ok(gens)
}

/// Non-split Cartan `{[[a, u b], [b, a]]}` with `u` the least non-residue,
/// for an odd prime or (via CRT) a squarefree odd level.
pub fn nonsplit_cartan(n: u32) -> Result<GroupModN> {
    GroupModN::generate(n, &cartan_gens(n, false)?)
}

/// Normalizer of the non-split Cartan, adding `diag(1, -1)`.
pub fn nonsplit_cartan_plus(n: u32) -> Result<GroupModN> {
    GroupModN::generate(n, &cartan_gens(n, true)?)
}

/// Quaternion `x0 + x1 i + x2 j + x3 k` of the algebra `(-1, -1)` as a matrix
/// modulo an odd prime `p = 1 mod 4`, via `i -> diag(s, -s)`, `j -> [[0, 1], [-1, 0]]`
/// with `s^2 = -1`.
fn quaternion_matrix(x: [i64; 4], p: u32) -> ModMat {
    let s = (1..p as i64).find(|s| (s * s + 1) % p as i64 == 0).expect("p must be 1 mod 4");
    let [x0, x1, x2, x3] = x;
    // k = ij = [[0, s], [s, 0]]
    modn::reduce_i([x0 + x1 * s, x2 + x3 * s, -x2 + x3 * s, x0 - x1 * s], p)
}

/// The exceptional group with projective image `S4`, generated by the images
/// of `1 +- i`, `1 +- j`, `1 +- k` and `-1`, for a prime `p = 1 mod 4`.
pub fn s4_exceptional(p: u32) -> Result<GroupModN> {
    if !nt::is_prime(p as u64) || p % 4 != 1 {
        return Err(Error::Invalid(format!("S4 construction needs a prime 1 mod 4, got {p}")));
    }
    let mut gens = Vec::new();
    for (i, sign) in [(1usize, 1i64), (2, 1), (3, 1), (1, -1), (2, -1), (3, -1)] {
        let mut q = [1i64, 0, 0, 0];
        q[i] = sign;
        gens.push(quaternion_matrix(q, p));
    }
    gens.push(modn::scalar(p - 1, p));
    GroupModN::generate(p, &gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_orders() {
        assert_eq!(gamma0(11).unwrap().order(), 11 * 10 * 10);
        assert_eq!(gamma1(11).unwrap().order(), 11 * 10);
        assert_eq!(gamma_full(11).unwrap().order(), 10);
        assert_eq!(nonsplit_cartan(13).unwrap().order(), 168);
        assert_eq!(nonsplit_cartan_plus(13).unwrap().order(), 336);
        assert_eq!(nonsplit_cartan_plus(15).unwrap().order(), 16 * 48);
        assert!(nonsplit_cartan(9).is_err());
    }
}
