//! Integer 2x2 matrices and their reductions modulo N.

use std::fmt;

use crate::nt;

/// Integer matrix `[[a, b], [c, d]]` stored as `[a, b, c, d]`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Mat2(pub [i128; 4]);

impl Mat2 {
    pub const I: Mat2 = Mat2([1, 0, 0, 1]);
    /// `[[0, -1], [1, 0]]`
    pub const S: Mat2 = Mat2([0, -1, 1, 0]);
    /// `[[1, 1], [0, 1]]`
    pub const T: Mat2 = Mat2([1, 1, 0, 1]);
    /// `[[0, -1], [1, -1]]`, of order 3 in PSL2.
    pub const TAU: Mat2 = Mat2([0, -1, 1, -1]);
    pub const J: Mat2 = Mat2([-1, 0, 0, -1]);
    /// `diag(-1, 1)`
    pub const ETA: Mat2 = Mat2([-1, 0, 0, 1]);

    pub fn new(a: i128, b: i128, c: i128, d: i128) -> Self {
        Mat2([a, b, c, d])
    }

    pub fn diag(a: i128, d: i128) -> Self {
        Mat2([a, 0, 0, d])
    }

    pub fn det(&self) -> i128 {
        let [a, b, c, d] = self.0;
        a * d - b * c
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        let [a, b, c, d] = self.0;
        let [e, f, g, h] = o.0;
        Mat2([a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h])
    }

    /// Adjugate `det * inverse`.
    pub fn adj(&self) -> Mat2 {
        let [a, b, c, d] = self.0;
        Mat2([d, -b, -c, a])
    }

    /// Inverse of a matrix of determinant `+-1`.
    pub fn inv_unimodular(&self) -> Mat2 {
        let dt = self.det();
        assert!(dt == 1 || dt == -1, "matrix is not unimodular");
        let [a, b, c, d] = self.adj().0;
        Mat2([a * dt, b * dt, c * dt, d * dt])
    }

    pub fn neg(&self) -> Mat2 {
        let [a, b, c, d] = self.0;
        Mat2([-a, -b, -c, -d])
    }

    pub fn scale(&self, k: i128) -> Mat2 {
        let [a, b, c, d] = self.0;
        Mat2([a * k, b * k, c * k, d * k])
    }

    pub fn content(&self) -> i128 {
        self.0.iter().fold(0, |g, &x| nt::gcd(g, x))
    }

    pub fn pow(&self, e: u32) -> Mat2 {
        (0..e).fold(Mat2::I, |acc, _| acc.mul(self))
    }

    /// `T^e` for any integer `e`.
    pub fn t_pow(e: i128) -> Mat2 {
        Mat2([1, e, 0, 1])
    }

    /// `g * (u, v)^T`.
    pub fn apply_vec(&self, u: i128, v: i128) -> (i128, i128) {
        let [a, b, c, d] = self.0;
        (a * u + b * v, c * u + d * v)
    }

    pub fn max_abs(&self) -> i128 {
        self.0.iter().map(|x| x.abs()).max().unwrap()
    }

    pub fn reduce(&self, n: u32) -> ModMat {
        let m = n as i128;
        let [a, b, c, d] = self.0;
        [a, b, c, d].map(|x| x.rem_euclid(m) as u32)
    }

    pub fn from_mod(m: &ModMat) -> Mat2 {
        Mat2(m.map(|x| x as i128))
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.0;
        write!(f, "[[{a}, {b}], [{c}, {d}]]")
    }
}

/// Matrix with entries in `Z/NZ`, stored as `[a, b, c, d]` in `[0, N)`.
pub type ModMat = [u32; 4];

pub mod modn {
    use super::ModMat;
    use crate::nt;

    pub fn identity(n: u32) -> ModMat {
        reduce_i([1, 0, 0, 1], n)
    }

    pub fn reduce_i(m: [i64; 4], n: u32) -> ModMat {
        m.map(|x| x.rem_euclid(n as i64) as u32)
    }

    pub fn mul(x: &ModMat, y: &ModMat, n: u32) -> ModMat {
        let n = n as u64;
        let [a, b, c, d] = x.map(|v| v as u64);
        let [e, f, g, h] = y.map(|v| v as u64);
        [
            ((a * e + b * g) % n) as u32,
            ((a * f + b * h) % n) as u32,
            ((c * e + d * g) % n) as u32,
            ((c * f + d * h) % n) as u32,
        ]
    }

    pub fn det(x: &ModMat, n: u32) -> u32 {
        let n64 = n as u64;
        let [a, b, c, d] = x.map(|v| v as u64);
        ((a * d % n64 + n64 - b * c % n64) % n64) as u32
    }

    pub fn is_invertible(x: &ModMat, n: u32) -> bool {
        nt::gcd_u64(det(x, n) as u64, n as u64) == 1
    }

    pub fn inv(x: &ModMat, n: u32) -> ModMat {
        let dt = det(x, n);
        let di = nt::modinv(dt as i128, n as i128).expect("matrix not invertible mod N") as u64;
        let n64 = n as u64;
        let [a, b, c, d] = x.map(|v| v as u64);
        [
            (d * di % n64) as u32,
            ((n64 - b) % n64 * di % n64) as u32,
            ((n64 - c) % n64 * di % n64) as u32,
            (a * di % n64) as u32,
        ]
    }

    pub fn scalar(s: u32, n: u32) -> ModMat {
        let s = s % n.max(1);
        reduce_i([s as i64, 0, 0, s as i64], n)
    }

    pub fn scale(x: &ModMat, s: u32, n: u32) -> ModMat {
        x.map(|v| ((v as u64 * s as u64) % n as u64) as u32)
    }

    pub fn key(x: &ModMat, n: u32) -> u64 {
        let n = n as u64;
        ((x[0] as u64 * n + x[1] as u64) * n + x[2] as u64) * n + x[3] as u64
    }

    pub fn from_key(mut k: u64, n: u32) -> ModMat {
        let n = n as u64;
        let d = (k % n) as u32;
        k /= n;
        let c = (k % n) as u32;
        k /= n;
        let b = (k % n) as u32;
        k /= n;
        [k as u32, b, c, d]
    }

    /// Reduction from level `n` to a divisor `m`.
    pub fn reduce_to(x: &ModMat, m: u32) -> ModMat {
        x.map(|v| v % m)
    }

    /// `eta x eta^{-1}` with `eta = diag(-1, 1)`.
    pub fn eta_conj(x: &ModMat, n: u32) -> ModMat {
        let neg = |v: u32| (n - v % n) % n;
        [x[0], neg(x[1]), neg(x[2]), x[3]]
    }

    /// All of `GL2(Z/nZ)` (or `SL2` when `sl_only`), in lexicographic order.
    pub fn enumerate_gl2(n: u32, sl_only: bool) -> Vec<ModMat> {
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for d in 0..n {
                        let m = [a, b, c, d];
                        let dt = det(&m, n);
                        if (sl_only && dt == 1 % n) || (!sl_only && nt::gcd_u64(dt as u64, n as u64) == 1) {
                            out.push(m);
                        }
                    }
                }
            }
        }
        out
    }
}

/// Lift an element of `SL2(Z/nZ)` to `SL2(Z)`.
pub fn lift_sl2(x: &ModMat, n: u32) -> Mat2 {
    let m = n as i128;
    if n == 1 {
        return Mat2::I;
    }
    let sym = |v: u32| {
        let v = v as i128;
        if 2 * v > m {
            v - m
        } else {
            v
        }
    };
    let (a, b, c, d) = (sym(x[0]), sym(x[1]), sym(x[2]), sym(x[3]));
    debug_assert_eq!((a * d - b * c).rem_euclid(m), 1);
    // try nearby coprime bottom rows congruent to (c, d) and keep the smallest lift
    let mut shifts: Vec<(i128, i128)> = (-3..=3).flat_map(|j| (-3..=3).map(move |k| (j, k))).collect();
    shifts.sort_by_key(|&(j, k)| (j * j + k * k, j, k));
    let mut best: Option<Mat2> = None;
    for (j, k) in shifts {
        let (c1, d1) = (c + j * m, d + k * m);
        if nt::gcd(c1, d1) != 1 {
            continue;
        }
        let g = complete_row(a, b, c1, d1, m);
        if best.map_or(true, |h| g.max_abs() < h.max_abs()) {
            best = Some(g);
        }
    }
    let g = best.unwrap_or_else(|| {
        let c1 = if c == 0 && d.abs() != 1 { m } else { c };
        let mut k = 0i128;
        let d1 = loop {
            let cand = [d + k * m, d - k * m];
            if let Some(&v) = cand.iter().find(|&&v| nt::gcd(c1, v) == 1) {
                break v;
            }
            k += 1;
        };
        complete_row(a, b, c1, d1, m)
    });
    debug_assert_eq!(g.det(), 1);
    debug_assert_eq!(g.reduce(n), *x);
    g
}

/// Top row `(a1, b1) = (a, b) mod m` completing the coprime bottom row `(c1, d1)`.
fn complete_row(a: i128, b: i128, c1: i128, d1: i128, m: i128) -> Mat2 {
    // a0 d1 - b0 c1 = 1
    let (_, x0, y0) = nt::egcd(d1, c1);
    let (a0, b0) = (x0, -y0);
    // adjust by t*(c1, d1) to match (a, b) mod m
    let (_, u, v) = nt::egcd(c1, d1);
    let t = (u * (a - a0) + v * (b - b0)).rem_euclid(m);
    let t = if 2 * t > m { t - m } else { t };
    let (mut a1, mut b1) = (a0 + t * c1, b0 + t * d1);
    // shrink the top row by multiples of m*(c1, d1)
    let norm = c1 * c1 + d1 * d1;
    let den = m * norm;
    let s = -(2 * (a1 * c1 + b1 * d1) + den).div_euclid(2 * den);
    a1 += s * m * c1;
    b1 += s * m * d1;
    Mat2([a1, b1, c1, d1])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lifts_are_correct_and_small() {
        for n in [2u32, 5, 8, 12, 13] {
            for x in modn::enumerate_gl2(n, true) {
                let g = lift_sl2(&x, n);
                assert_eq!(g.det(), 1);
                assert_eq!(g.reduce(n), x);
                assert!(g.max_abs() <= (n as i128) * (n as i128), "{g} for N={n}");
            }
        }
    }
}
