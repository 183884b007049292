use gammag::exact::factor::{factor, gcd};
use gammag::exact::multimod::{charpoly, primary_component};
use gammag::exact::{q, Matrix, Poly, Rational, Subspace};
use proptest::prelude::*;

fn poly(c: &[i64]) -> Poly<Rational> {
    Poly::from_ints(c)
}

fn int_matrix(n: usize, e: &[i64]) -> Matrix<Rational> {
    Matrix::from_int_rows(&e.chunks(n).map(|r| r.to_vec()).collect::<Vec<_>>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn modular_gcd_matches_euclid(
        a in prop::collection::vec(-20i64..=20, 1..6),
        b in prop::collection::vec(-20i64..=20, 1..6),
        h in prop::collection::vec(-20i64..=20, 1..5),
    ) {
        let (a, b, h) = (poly(&a), poly(&b), poly(&h));
        let (f, g) = (a.mul(&h), b.mul(&h));
        let m = gcd(&f, &g);
        prop_assert_eq!(&m, &f.gcd(&g));
        prop_assert!(h.is_zero() || m.rem(&h).is_zero());
    }

    #[test]
    fn multimodular_charpoly_matches_hessenberg(e in prop::collection::vec(-9i64..=9, 18 * 18)) {
        let m = int_matrix(18, &e).scale(&Rational::new(2.into(), 3.into()));
        prop_assert_eq!(charpoly(&m), m.charpoly_hessenberg());
    }

    #[test]
    fn primary_components_are_the_kernels(e in prop::collection::vec(-3i64..=3, 8 * 8)) {
        let m = int_matrix(8, &e);
        let parts = factor(&m.charpoly());
        let mut total = 0;
        for (i, (f, a)) in parts.iter().enumerate() {
            let w = primary_component(&m, &parts, i);
            let k = m.eval_poly(&f.pow(*a));
            prop_assert_eq!(&w, &Subspace::span(&k.kernel(), 8, &q(0)));
            total += w.dim();
        }
        prop_assert_eq!(total, 8);
    }
}
