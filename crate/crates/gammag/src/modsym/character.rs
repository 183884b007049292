//! Characters of `Q = Gamma' / Gamma` for `Gamma_G` normal in `Gamma_G'`.

use std::collections::VecDeque;
use std::sync::Arc;

use rustc_hash::FxHashMap;

use crate::exact::CyclotomicEmbed;
use crate::groups::{modn, CongruenceSubgroup, GroupModN, ModMat};
use crate::{Error, Result};

/// A character `eps: Gamma_G' -> mu_n` trivial on `Gamma_G`, stored as
/// exponents of `zeta_n` on `G'0 = G' cap SL2(Z/NZ)`.
#[derive(Clone, Debug)]
pub struct Character<F> {
    over: Arc<GroupModN>,
    order: u64,
    gens: Vec<(ModMat, u64)>,
    exps: FxHashMap<u64, u64>,
    zeta: F,
}

impl<F: CyclotomicEmbed> Character<F> {
    /// Character of `G'0` determined by `gens` (pairs of an element of `G'0` and the
    /// exponent of `zeta_order` it maps to), trivial on `inner`'s `G0`.
    /// `sample` is any element of the coefficient field.
    pub fn new(
        inner: &CongruenceSubgroup,
        over: Arc<GroupModN>,
        gens: &[(ModMat, u64)],
        order: u64,
        sample: &F,
    ) -> Result<Self> {
        let n = inner.level();
        if over.level() != n {
            return Err(Error::Invalid("character groups must have the same level".into()));
        }
        if order == 0 {
            return Err(Error::Invalid("character order must be positive".into()));
        }
        let zeta = sample
            .root_of_unity(order, 1)
            .ok_or_else(|| Error::Invalid(format!("coefficient field lacks roots of unity of order {order}")))?;
        let g0 = inner.g0();
        let over0 = over.sl2_part();
        for (x, _) in gens {
            if !over.contains(x) || modn::det(x, n) != 1 % n {
                return Err(Error::Invalid("character generator is not in G' cap SL2".into()));
            }
        }
        for x in &over0 {
            for g in g0 {
                let c = modn::mul(&modn::mul(x, g, n), &modn::inv(x, n), n);
                if inner.label(&c) != 0 {
                    return Err(Error::Invalid("G0 is not normal in G'0".into()));
                }
            }
        }
        // right multiplication by generators; elements of G0 carry exponent 0
        let mut steps: Vec<(ModMat, u64)> = GroupModN::greedy_generators(n, g0)?.into_iter().map(|g| (g, 0)).collect();
        steps.extend(gens.iter().map(|&(x, e)| (x, e % order)));
        let mut exps = FxHashMap::default();
        let id = modn::identity(n);
        exps.insert(modn::key(&id, n), 0);
        let mut queue = VecDeque::from([(id, 0u64)]);
        while let Some((x, e)) = queue.pop_front() {
            for (s, es) in &steps {
                let y = modn::mul(&x, s, n);
                let ey = (e + es) % order;
                match exps.get(&modn::key(&y, n)) {
                    Some(&old) if old != ey => {
                        return Err(Error::Invalid("character values do not define a homomorphism".into()))
                    }
                    Some(_) => {}
                    None => {
                        exps.insert(modn::key(&y, n), ey);
                        queue.push_back((y, ey));
                    }
                }
            }
        }
        if exps.len() != over0.len() {
            return Err(Error::Invalid("character generators do not generate G'0 / G0".into()));
        }
        Ok(Character { over, order, gens: gens.to_vec(), exps, zeta })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn over(&self) -> &Arc<GroupModN> {
        &self.over
    }

    pub fn generators(&self) -> &[(ModMat, u64)] {
        &self.gens
    }

    /// Exponent of `zeta` at an element of `G'0`.
    pub fn exponent(&self, x: &ModMat) -> Option<u64> {
        self.exps.get(&modn::key(x, self.over.level())).copied()
    }

    pub fn value(&self, x: &ModMat) -> Option<F> {
        self.exponent(x).map(|e| self.power(e))
    }

    pub fn power(&self, e: u64) -> F {
        let mut r = self.zeta.one_like();
        for _ in 0..(e % self.order) {
            r = r * &self.zeta;
        }
        r
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.values().all(|&e| e == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, Rational};
    use crate::groups::families;

    #[test]
    fn odd_character_mod_4() {
        let g1 = CongruenceSubgroup::new(families::gamma1(4).unwrap()).unwrap();
        let g0 = Arc::new(families::gamma0(4).unwrap());
        let minus = modn::scalar(3, 4);
        let eps = Character::<Rational>::new(&g1, g0.clone(), &[(minus, 1)], 2, &q(1)).unwrap();
        assert_eq!(eps.value(&minus), Some(q(-1)));
        assert_eq!(eps.value(&[1, 1, 0, 1]), Some(q(1)));
        assert!(!eps.is_trivial());
        // -1 cannot have exponent 0 and 1 at once
        assert!(Character::<Rational>::new(&g1, g0, &[(minus, 1), ([1, 1, 0, 1], 1)], 2, &q(1)).is_err());
    }
}
