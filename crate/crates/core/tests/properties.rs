use braid_dimer::activity::{ActivityWord, Base, Letter};
use braid_dimer::braid::BraidWord;
use braid_dimer::diagram::LinkDiagram;
use braid_dimer::dimer::{jones_via_det, kasteleyn_violations, signed_overlay};
use braid_dimer::laurent::{LaurentPoly1, LaurentPoly2};
use braid_dimer::oracle::{bracket_state_sum, jones_state_sum};
use braid_dimer::tait::TaitGraph;
use proptest::prelude::*;

fn poly1() -> impl Strategy<Value = LaurentPoly1> {
    proptest::collection::vec((-8i64..=8, -20i64..=20), 0..6).prop_map(LaurentPoly1::from_terms)
}

fn poly2() -> impl Strategy<Value = LaurentPoly2> {
    proptest::collection::vec((-4i64..=4, -3i64..=3, -9i64..=9), 0..5)
        .prop_map(|t| t.into_iter().map(|(a, z, c)| LaurentPoly2::term(c, a, z)).sum())
}

fn family_word(max_gens: usize, max_exp: i64) -> impl Strategy<Value = BraidWord> {
    (proptest::collection::vec(1..=max_exp, 1..=max_gens), any::<bool>()).prop_map(|(e, neg)| {
        let e: Vec<i64> = e.into_iter().map(|m| if neg { -m } else { m }).collect();
        BraidWord::homogeneous(&e).unwrap()
    })
}

fn any_word() -> impl Strategy<Value = BraidWord> {
    proptest::collection::vec((1usize..=3, prop_oneof![-2i64..=-1, 1i64..=2]), 1..7).prop_map(|s| {
        let text: Vec<String> = s.iter().map(|(g, e)| format!("s{g}^{e}")).collect();
        BraidWord::parse(&text.join(" "), Some(4)).unwrap()
    })
}

fn letter() -> impl Strategy<Value = Letter> {
    (0usize..4, any::<bool>()).prop_map(|(b, barred)| Letter { base: Base::ALL[b], barred })
}

proptest! {
    #[test]
    fn ring_axioms(a in poly1(), b in poly1(), c in poly1()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &a), &LaurentPoly1::zero());
    }

    #[test]
    fn exact_division_round_trip(a in poly1(), b in poly1()) {
        prop_assume!(!b.is_zero());
        prop_assert_eq!((&a * &b).exact_div(&b).unwrap(), a);
    }

    #[test]
    fn display_parse_round_trip(a in poly1()) {
        let back: LaurentPoly1 = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn two_variable_ring(a in poly2(), b in poly2()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        prop_assert_eq!(a.invert_variables().invert_variables(), a);
    }

    #[test]
    fn braid_round_trip(w in any_word()) {
        let back = BraidWord::parse(&w.to_string(), Some(w.strands())).unwrap();
        prop_assert_eq!(back, w);
    }

    #[test]
    fn writhe_is_additive(a in any_word(), b in any_word()) {
        prop_assert_eq!(a.concat(&b).writhe(), a.writhe() + b.writhe());
        prop_assert_eq!(a.mirror().writhe(), -a.writhe());
    }

    #[test]
    fn activity_word_round_trip(ls in proptest::collection::vec(letter(), 0..8)) {
        let w: ActivityWord = ls.into_iter().collect();
        prop_assert_eq!(w.to_string().parse::<ActivityWord>().unwrap(), w);
        prop_assert_eq!(w.ascii().parse::<ActivityWord>().unwrap(), w);
    }

    #[test]
    fn checkerboard_sign_relation(w in any_word()) {
        let Ok(d) = LinkDiagram::close_braid(&w) else { return Ok(()) };
        for c in d.crossings() {
            let parity = if c.generator % 2 == 1 { c.oriented_sign } else { c.oriented_sign.flip() };
            prop_assert_eq!(c.checkerboard_sign, parity);
        }
    }

    #[test]
    fn tree_expansion_matches_state_sum(w in any_word()) {
        let Ok(d) = LinkDiagram::close_braid(&w) else { return Ok(()) };
        let t = TaitGraph::build(&d);
        prop_assert_eq!(t.thistlethwaite_sum(), bracket_state_sum(&d).unwrap());
        let mut count = 0;
        t.for_each_spanning_tree(|tr| { count += 1; assert_eq!(tr.edges.len(), t.vertex_count() - 1); });
        prop_assert!(count > 0);
    }

    #[test]
    fn det_matches_state_sum(w in family_word(4, 4)) {
        prop_assert_eq!(jones_via_det(&w).unwrap(), jones_state_sum(&w).unwrap());
        let (_, g) = signed_overlay(&w).unwrap();
        prop_assert!(kasteleyn_violations(&g, false).is_empty());
    }

    #[test]
    fn mirror_inverts_jones(w in family_word(5, 5)) {
        prop_assert_eq!(jones_via_det(&w.mirror()).unwrap(), jones_via_det(&w).unwrap().invert_variables());
    }

    #[test]
    fn jones_at_one_is_unit(w in family_word(4, 6)) {
        // V(1) = (-2)^(components - 1) at t = A^-4 = 1, i.e. A = 1
        let j = jones_via_det(&w).unwrap();
        let v = j.eval(&num_rational_one()).unwrap();
        let value: i64 = v.to_integer().try_into().unwrap();
        prop_assert!(value != 0 && (value.unsigned_abs()).is_power_of_two(), "J(1) = {}", value);
    }
}

fn num_rational_one() -> num_rational::BigRational {
    num_rational::BigRational::from_integer(1.into())
}
