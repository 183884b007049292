//! Small integer number theory.

pub fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    gcd(a as i128, b as i128) as u64
}

pub fn lcm_u64(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd_u64(a, b) * b
    }
}

/// `(g, x, y)` with `a x + b y = g >= 0`.
pub fn egcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

pub fn modinv(a: i128, n: i128) -> Option<i128> {
    if n == 1 {
        return Some(0);
    }
    let (g, x, _) = egcd(a.rem_euclid(n), n);
    (g == 1).then(|| x.rem_euclid(n))
}

/// Solution of `x = a mod m`, `x = b mod n` modulo `lcm(m, n)`, if compatible.
pub fn crt(a: i128, m: i128, b: i128, n: i128) -> Option<i128> {
    let (g, p, _) = egcd(m, n);
    if (b - a).rem_euclid(g) != 0 {
        return None;
    }
    let l = m / g * n;
    let t = ((b - a) / g).rem_euclid(n / g) * p.rem_euclid(n / g) % (n / g);
    Some((a + m * t).rem_euclid(l))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&p| is_prime(p)).collect()
}

/// Prime factorization as `(p, e)` pairs in increasing order.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n).iter().fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// Order of `GL2(Z/nZ)`.
pub fn gl2_order(n: u64) -> u128 {
    factorize(n).iter().fold(1u128, |acc, &(p, e)| {
        let p = p as u128;
        let pe = p.pow(e);
        acc * pe.pow(4) * (p - 1) * (p * p - 1) / (p * p * p)
    })
}

/// Order of `SL2(Z/nZ)`.
pub fn sl2_order(n: u64) -> u128 {
    factorize(n).iter().fold(1u128, |acc, &(p, e)| {
        let p = p as u128;
        let pe = p.pow(e);
        acc * pe.pow(3) * (p * p - 1) / (p * p)
    })
}

/// Least positive quadratic non-residue modulo an odd prime.
pub fn least_nonresidue(p: u64) -> u64 {
    (2..p).find(|&u| pow_mod(u, (p - 1) / 2, p) == p - 1).expect("odd prime expected")
}

pub fn pow_mod(a: u64, mut e: u64, m: u64) -> u64 {
    let m128 = m as u128;
    let mut r = 1u128 % m128;
    let mut b = a as u128 % m128;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m128;
        }
        b = b * b % m128;
        e >>= 1;
    }
    r as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_orders() {
        assert_eq!(sl2_order(11), 1320);
        assert_eq!(gl2_order(2), 6);
        assert_eq!(sl2_order(8), 384);
        assert_eq!(sl2_order(1), 1);
    }

    #[test]
    fn crt_non_coprime() {
        assert_eq!(crt(3, 4, 5, 6), Some(11));
        assert_eq!(crt(1, 4, 2, 6), None);
    }
}
