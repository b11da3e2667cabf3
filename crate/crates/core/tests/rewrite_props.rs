use proptest::prelude::*;

use qosp::algebra::{builtin_osp22_prs, builtin_osp22_q};
use qosp::element::{Element, Word};
use qosp::rewrite::{default_order, orient, RewriteSystem, Strategy as Order};
use qosp::scalar::{rational, LaurentPoly, Specialization, Vars};

fn prs_system() -> RewriteSystem {
    let spec = builtin_osp22_prs();
    orient(&spec, &default_order(&spec)).unwrap()
}

fn q_system() -> RewriteSystem {
    let spec = builtin_osp22_q();
    orient(&spec, &default_order(&spec)).unwrap()
}

fn word() -> impl Strategy<Value = Word> {
    prop::collection::vec(0usize..8, 0..=5).prop_map(Word)
}

fn monomial() -> impl Strategy<Value = LaurentPoly> {
    (
        (-4i64..=4).prop_filter("nonzero", |c| *c != 0),
        prop::collection::vec(-2i32..=2, 3),
    )
        .prop_map(|(c, e)| LaurentPoly::monomial(&Vars::prs(), rational(c, 1), e))
}

fn element() -> impl Strategy<Value = Element> {
    prop::collection::vec((monomial(), word()), 1..=3).prop_map(|terms| {
        let mut e = Element::zero(&Vars::prs());
        for (c, w) in terms {
            e.add_term(w, c);
        }
        e
    })
}

fn specialize(e: &Element) -> Element {
    e.map_coeffs(&Vars::t(), |c| Specialization::OneParameter.apply(c))
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normal_forms_are_normal_and_idempotent(e in element()) {
        let sys = prs_system();
        let nf = sys.normal_form(&e).unwrap();
        prop_assert!(nf.terms().all(|(w, _)| sys.is_normal(w)));
        prop_assert_eq!(sys.normal_form(&nf).unwrap(), nf);
    }

    #[test]
    fn normal_form_is_linear(a in element(), b in element(), c in monomial()) {
        let sys = prs_system();
        let lhs = sys.normal_form(&a.add(&b.scale(&c))).unwrap();
        let rhs = sys.normal_form(&a).unwrap().add(&sys.normal_form(&b).unwrap().scale(&c));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn strategy_does_not_matter(e in element()) {
        let sys = prs_system();
        prop_assert_eq!(
            sys.normal_form_with(&e, Order::Leftmost).unwrap(),
            sys.normal_form_with(&e, Order::Rightmost).unwrap()
        );
    }

    #[test]
    fn specialization_commutes_with_normal_form(e in element()) {
        let lhs = specialize(&prs_system().normal_form(&e).unwrap());
        let rhs = q_system().normal_form(&specialize(&e)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
