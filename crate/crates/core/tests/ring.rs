use proptest::prelude::*;
use qfib_core::{LaurentPoly, Monomial, Var};

fn monomial() -> impl Strategy<Value = Monomial> {
    (0u32..4, 0u32..4, -3i32..4, -4i32..6).prop_map(|(ex, ey, ep, eq)| Monomial::new(ex, ey, ep, eq))
}

fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((monomial(), -9i64..10), 0..6)
        .prop_map(|terms| LaurentPoly::from_terms(terms.into_iter().map(|(m, c)| (c, m))))
}

proptest! {
    #[test]
    fn ring_axioms(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() * LaurentPoly::one(), a.clone());
        prop_assert!((a.clone() - a.clone()).is_zero());
    }

    #[test]
    fn text_round_trips(a in laurent()) {
        let s = a.to_string();
        prop_assert_eq!(s.parse::<LaurentPoly>().unwrap(), a);
    }

    #[test]
    fn invert_q_is_an_involution_and_a_ring_map(a in laurent(), b in laurent()) {
        prop_assert_eq!(a.invert_q().invert_q(), a.clone());
        prop_assert_eq!((a.clone() * b.clone()).invert_q(), a.invert_q() * b.invert_q());
    }

    #[test]
    fn exact_division_undoes_multiplication(a in laurent(), b in laurent()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((a.clone() * b.clone()).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn substitution_composes(a in laurent(), i in -2i32..3, j in -2i32..3) {
        // q -> q^i then q -> q^j is q -> q^(ij).
        let once = a.subst_monomial(Var::Q, &Monomial::q_pow(i)).unwrap();
        let twice = once.subst_monomial(Var::Q, &Monomial::q_pow(j)).unwrap();
        prop_assert_eq!(twice, a.subst_monomial(Var::Q, &Monomial::q_pow(i * j)).unwrap());
    }

    #[test]
    fn specialization_is_a_ring_map(a in laurent(), b in laurent()) {
        let at = [(Var::X, 2), (Var::Y, -1), (Var::P, 1), (Var::Q, 1)];
        let s = |p: &LaurentPoly| p.specialize_ints(&at).unwrap();
        prop_assert_eq!(s(&(a.clone() * b.clone())), s(&a) * s(&b));
        prop_assert_eq!(s(&(a.clone() + b.clone())), s(&a) + s(&b));
    }
}
