use std::sync::OnceLock;

use proptest::prelude::*;
use twistform::enveloping::UElement;
use twistform::exact::Rational;
use twistform::integral::IntegralForm;
use twistform::multiloop::{LoopKind, LoopSymbol};
use twistform::roots::TypeLabel;

fn a3() -> &'static IntegralForm {
    static F: OnceLock<IntegralForm> = OnceLock::new();
    F.get_or_init(|| IntegralForm::standard(TypeLabel::A, 3, 2, 1).unwrap())
}

fn a2m2() -> &'static IntegralForm {
    static F: OnceLock<IntegralForm> = OnceLock::new();
    F.get_or_init(|| IntegralForm::standard(TypeLabel::A, 2, 2, 2).unwrap())
}

fn forms() -> impl Strategy<Value = &'static IntegralForm> {
    prop_oneof![Just(a3()), Just(a2m2())]
}

/// A valid symbol of `f` with exponents in [-2, 2].
fn symbol(f: &'static IntegralForm) -> impl Strategy<Value = LoopSymbol> {
    let alg = f.alg();
    let (nw, n0, m) = (alg.num_weights(), alg.rank0(), alg.m);
    (0..3u8, 0..nw.max(n0), prop::collection::vec(-2i64..=2, m)).prop_filter_map("valid symbol", move |(k, i, r)| {
        let kind = match k {
            0 if i < nw => LoopKind::XMinus(i),
            1 if i < n0 => LoopKind::H(i),
            2 if i < nw => LoopKind::XPlus(i),
            _ => return None,
        };
        f.alg().symbol(kind, r).ok()
    })
}

fn word(f: &'static IntegralForm, max: usize) -> impl Strategy<Value = Vec<LoopSymbol>> {
    prop::collection::vec(symbol(f), 1..=max)
}

fn with_words(n: usize, max: usize) -> impl Strategy<Value = (&'static IntegralForm, Vec<Vec<LoopSymbol>>)> {
    forms().prop_flat_map(move |f| (Just(f), prop::collection::vec(word(f, max), n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn multiplication_is_associative((f, ws) in with_words(3, 2)) {
        let u = &f.u;
        let (a, b, c) = (u.word(&ws[0]), u.word(&ws[1]), u.word(&ws[2]));
        let left = u.u_multiply(&u.u_multiply(&a, &b), &c);
        let right = u.u_multiply(&a, &u.u_multiply(&b, &c));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn omega_is_an_involutive_antiautomorphism((f, ws) in with_words(2, 3)) {
        let u = &f.u;
        let (a, b) = (u.word(&ws[0]), u.word(&ws[1]));
        prop_assert_eq!(u.apply_omega(&u.apply_omega(&a)), a.clone());
        let ab = u.u_multiply(&a, &b);
        prop_assert_eq!(u.apply_omega(&ab), u.u_multiply(&u.apply_omega(&b), &u.apply_omega(&a)));
    }

    #[test]
    fn shifts_compose_and_respect_products(ws in prop::collection::vec(word(a3(), 2), 2), v in -1i64..=1, w in -1i64..=1) {
        let u = &a3().u;
        // even shifts keep ε
        let (v, w) = (vec![2 * v], vec![2 * w]);
        let (a, b) = (u.word(&ws[0]), u.word(&ws[1]));
        let tvw = u.apply_t(&v, &u.apply_t(&w, &a).unwrap()).unwrap();
        prop_assert_eq!(tvw, u.apply_t(&[v[0] + w[0]], &a).unwrap());
        let ab = u.u_multiply(&a, &b);
        prop_assert_eq!(
            u.apply_t(&v, &ab).unwrap(),
            u.u_multiply(&u.apply_t(&v, &a).unwrap(), &u.apply_t(&v, &b).unwrap())
        );
    }

    #[test]
    fn sign_substitution_is_an_involution(ws in prop::collection::vec(word(a2m2(), 2), 2), s in 0usize..4) {
        let u = &a2m2().u;
        let b = [vec![1, 1], vec![1, -1], vec![-1, 1], vec![-1, -1]][s].clone();
        let (x, y) = (u.word(&ws[0]), u.word(&ws[1]));
        prop_assert_eq!(u.apply_lambda_sub(&b, &u.apply_lambda_sub(&b, &x).unwrap()).unwrap(), x.clone());
        let xy = u.u_multiply(&x, &y);
        prop_assert_eq!(
            u.apply_lambda_sub(&b, &xy).unwrap(),
            u.u_multiply(&u.apply_lambda_sub(&b, &x).unwrap(), &u.apply_lambda_sub(&b, &y).unwrap())
        );
    }

    #[test]
    fn lambda_series_recursion(i in 0usize..2, r in prop_oneof![Just(1i64), Just(-1), Just(2), Just(-3)], l in 1u32..=4) {
        // l·Λ_l = −Σ_{j=1..l} h_{jr} Λ_{l−j}
        let f = a3();
        let u = &f.u;
        let lam = |n: u32| if n == 0 { UElement::one() } else { u.lambda_coeff(i, &[r], n).unwrap() };
        let mut rhs = UElement::zero();
        for j in 1..=l {
            let h = u.h_or_zero(i, &[j as i64 * r]);
            rhs.add_scaled(&u.u_multiply(&h, &lam(l - j)), &Rational::integer(-1));
        }
        prop_assert_eq!(lam(l).scale(&Rational::integer(l as i64)), rhs);
    }

    #[test]
    fn integral_coordinates_round_trip((f, ws) in with_words(1, 4)) {
        let e = f.u.word(&ws[0]);
        let coords = f.to_integral_coords(&e);
        let mut back = UElement::zero();
        for (om, c) in coords.terms() {
            back.add_scaled(&f.expand(om), c);
        }
        prop_assert_eq!(back, e);
    }
}
