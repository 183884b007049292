//! Weighted families of determinant-`n` matrices satisfying condition `(C_n)`.

use rustc_hash::FxHashMap;

use crate::groups::Mat2;
use crate::modsym::Cusp;
use crate::nt;

/// Matrices `M` of determinant `n` with integer weights `u_M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeilbronnSet {
    pub n: u64,
    pub items: Vec<(i64, Mat2)>,
}

impl HeilbronnSet {
    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

/// `round(a / b)` with halves rounded away from zero.
fn round_div(a: i128, b: i128) -> i128 {
    let (a, b) = if b < 0 { (-a, -b) } else { (a, b) };
    if a >= 0 {
        (2 * a + b).div_euclid(2 * b)
    } else {
        -((-2 * a + b).div_euclid(2 * b))
    }
}

/// Cremona's Heilbronn matrices for a prime `p`, from the continued fractions
/// of `r / p` with nearest-integer quotients.
pub fn heilbronn_cremona(p: u64) -> HeilbronnSet {
    assert!(nt::is_prime(p), "Cremona's family needs a prime");
    let p = p as i128;
    let mut items = vec![(1, Mat2([1, 0, 0, p]))];
    if p == 2 {
        items.extend([(1, Mat2([2, 0, 0, 1])), (1, Mat2([2, 1, 0, 1])), (1, Mat2([1, 0, 1, 2]))]);
        return HeilbronnSet { n: 2, items };
    }
    let half = p / 2;
    for r in -half..=half {
        let (mut x1, mut x2, mut y1, mut y2) = (p, -r, 0i128, 1i128);
        let (mut a, mut b) = (-p, r);
        items.push((1, Mat2([x1, x2, y1, y2])));
        while b != 0 {
            let q = round_div(a, b);
            let c = a - b * q;
            a = -b;
            b = c;
            let x3 = q * x2 - x1;
            x1 = x2;
            x2 = x3;
            let y3 = q * y2 - y1;
            y1 = y2;
            y2 = y3;
            items.push((1, Mat2([x1, x2, y1, y2])));
        }
    }
    HeilbronnSet { n: p as u64, items }
}

/// Merel's family `{[[a, b], [c, d]] : a > b >= 0, d > c >= 0, ad - bc = n}`.
pub fn heilbronn_merel(n: u64) -> HeilbronnSet {
    let n = n as i128;
    let mut items = Vec::new();
    for a in 1..=n {
        for d in 1..=n {
            let ad = a * d;
            if ad < n {
                continue;
            }
            // bc = ad - n with 0 <= b < a, 0 <= c < d
            let bc = ad - n;
            if bc == 0 {
                for b in 0..a {
                    if b == 0 {
                        for c in 0..d {
                            items.push((1, Mat2([a, 0, c, d])));
                        }
                    } else {
                        items.push((1, Mat2([a, b, 0, d])));
                    }
                }
                continue;
            }
            for b in 1..a {
                if bc % b == 0 && bc / b < d {
                    items.push((1, Mat2([a, b, bc / b, d])));
                }
            }
        }
    }
    HeilbronnSet { n: n as u64, items }
}

/// The family used for `T_n`: Cremona's for primes, Merel's otherwise.
pub fn heilbronn_merel_set(n: u64) -> HeilbronnSet {
    if nt::is_prime(n) {
        heilbronn_cremona(n)
    } else {
        heilbronn_merel(n)
    }
}

/// Canonical form `[[a, 0], [c, d]]`, `0 <= c < d`, of the class `M SL2(Z)`.
pub fn right_class(m: &Mat2) -> (i128, i128, i128) {
    let [m00, m01, m10, m11] = m.0;
    let n = m.det();
    assert!(n > 0, "right classes need positive determinant");
    let (g, s, t) = nt::egcd(m00, m01);
    let (a, y) = if g < 0 { (-g, -(s * m10 + t * m11)) } else { (g, s * m10 + t * m11) };
    let d = n / a;
    (a, y.rem_euclid(d), d)
}

/// Checks `sum_{M in K} u_M ([M oo] - [M 0]) = [oo] - [0]` for every right class `K`.
pub fn condition_cn_check(h: &HeilbronnSet) -> bool {
    let n = h.n as i128;
    if h.items.iter().any(|(_, m)| m.det() != n) {
        return false;
    }
    let mut sums: FxHashMap<(i128, i128, i128), FxHashMap<Cusp, i64>> = FxHashMap::default();
    for (u, m) in &h.items {
        let e = sums.entry(right_class(m)).or_default();
        *e.entry(Cusp::new(m.0[0], m.0[2])).or_default() += u;
        *e.entry(Cusp::new(m.0[1], m.0[3])).or_default() -= u;
    }
    let target: FxHashMap<Cusp, i64> = [(Cusp::INFINITY, 1), (Cusp::ZERO, -1)].into_iter().collect();
    for a in nt::divisors(h.n) {
        let a = a as i128;
        let d = n / a;
        for c in 0..d {
            let mut s = sums.remove(&(a, c, d)).unwrap_or_default();
            s.retain(|_, v| *v != 0);
            if s != target {
                return false;
            }
        }
    }
    sums.is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sets() {
        let one = heilbronn_merel(1);
        assert_eq!(one.items, vec![(1, Mat2::I)]);
        assert!(condition_cn_check(&one));
        let two = heilbronn_merel(2);
        assert_eq!(two.len(), 4);
        assert!(condition_cn_check(&two));
        let mut broken = two.clone();
        broken.items.pop();
        assert!(!condition_cn_check(&broken));
    }

    #[test]
    fn all_sets_up_to_30() {
        for n in 1..=30 {
            assert!(condition_cn_check(&heilbronn_merel(n)), "Merel n={n}");
            if nt::is_prime(n) {
                assert!(condition_cn_check(&heilbronn_cremona(n)), "Cremona p={n}");
            }
        }
        assert!(condition_cn_check(&heilbronn_cremona(97)));
    }
}
