use markov_fractions::analysis::{approx_constant, length_surd, markov_interval};
use markov_fractions::farey::{
    farey_node_at, farey_path_to, question_mark_farey, question_mark_of_word, question_mark_salem,
};
use markov_fractions::markov::{
    check_relations, mu, mu_in, solve_by_factoring, solve_by_scan, MarkovFraction, TreePosition,
};
use markov_fractions::slopes::{epsilon, is_exceptional_slope, normalize_slope, EpsilonTable};
use markov_fractions::{DyadicRational, Fraction, MarkovTree, MarkovTriple, Turn, TurnWord};
use num_bigint::BigUint;
use proptest::prelude::*;

fn word() -> impl Strategy<Value = TurnWord> {
    prop::collection::vec(prop_oneof![Just(Turn::L), Just(Turn::R)], 0..14).prop_map(TurnWord::new)
}

fn unit_rational() -> impl Strategy<Value = Fraction> {
    (1i64..400)
        .prop_flat_map(|q| (0..=q, Just(q)))
        .prop_map(|(p, q)| Fraction::new(p, q).unwrap())
}

fn open_unit_rational() -> impl Strategy<Value = Fraction> {
    unit_rational().prop_filter("interior", |x| !x.is_zero() && x != &Fraction::one())
}

fn dyadic() -> impl Strategy<Value = DyadicRational> {
    (-5000i64..5000, 0u32..12).prop_map(|(m, n)| DyadicRational::new(m, n))
}

proptest! {
    #[test]
    fn vertices_satisfy_every_relation(w in word()) {
        for tree in [MarkovTree::reduced(), MarkovTree::unit()] {
            let t = tree.vertex_at(&w);
            prop_assert!(t.f1 < t.f3 && t.f3 < t.f2);
            if tree == MarkovTree::reduced() {
                prop_assert!(check_relations(&t).all_hold());
            }
        }
    }

    #[test]
    fn locate_inverts_descent(w in word()) {
        let tree = MarkovTree::reduced();
        let t = tree.vertex_at(&w);
        prop_assert_eq!(tree.locate(&t.f3), Some(TreePosition::Vertex(w)));
    }

    #[test]
    fn vertex_denominators_form_markov_triples(w in word()) {
        let t = MarkovTree::reduced().vertex_at(&w);
        let [a, b, c] = t.denominators().map(|q| q.magnitude().clone());
        let triple = MarkovTriple::new(a, b, c);
        prop_assert!(triple.is_ok());
        prop_assert!(triple.unwrap().is_pairwise_coprime());
    }

    #[test]
    fn mu_is_strictly_increasing(x in unit_rational(), y in unit_rational()) {
        prop_assume!(x < y);
        prop_assert!(mu(&x).unwrap().value < mu(&y).unwrap().value);
    }

    #[test]
    fn question_mark_routes_agree(x in open_unit_rational()) {
        let a = question_mark_farey(&x).unwrap();
        prop_assert_eq!(&a, &question_mark_salem(&x).unwrap());
        prop_assert_eq!(&a, &question_mark_of_word(&farey_path_to(&x).unwrap()));
        let mirror = question_mark_farey(&(Fraction::one() - x.clone())).unwrap();
        prop_assert_eq!(mirror.to_fraction(), Fraction::one() - a.to_fraction());
    }

    #[test]
    fn farey_path_round_trip(w in word()) {
        let x = farey_node_at(&w).value;
        prop_assert_eq!(farey_path_to(&x).unwrap(), w);
    }

    #[test]
    fn epsilon_transports_question_mark(x in unit_rational()) {
        let e = epsilon(&question_mark_farey(&x).unwrap());
        prop_assert_eq!(e, mu_in(&MarkovTree::unit(), &x).unwrap().value);
    }

    #[test]
    fn epsilon_is_odd_and_translation_equivariant(x in dyadic(), n in -20i64..20) {
        let e = epsilon(&x);
        let neg = DyadicRational::new(-x.numerator().clone(), x.exponent());
        prop_assert_eq!(epsilon(&neg), -e.clone());
        let shifted = DyadicRational::new(x.numerator() + (num_bigint::BigInt::from(n) << x.exponent()), x.exponent());
        prop_assert_eq!(epsilon(&shifted), e.clone() + Fraction::from_integer(n));
        prop_assert_eq!(EpsilonTable::new().get(&x), e);
    }

    #[test]
    fn epsilon_is_increasing(a in dyadic(), b in dyadic()) {
        prop_assume!(a < b);
        prop_assert!(epsilon(&a) < epsilon(&b));
    }

    #[test]
    fn normalization_reconstructs(p in -500i64..500, q in 1i64..60) {
        let x = Fraction::new(p, q).unwrap();
        let n = normalize_slope(&x);
        prop_assert_eq!(n.reconstruct(), x);
        prop_assert!(!n.reduced.is_negative() && n.reduced <= Fraction::half());
    }

    #[test]
    fn membership_is_symmetric(w in word(), n in -5i64..5) {
        let r = MarkovTree::reduced().vertex_at(&w).f3;
        let shift = Fraction::from_integer(n);
        prop_assert!(is_exceptional_slope(&(&shift + &r)).is_exceptional());
        prop_assert!(is_exceptional_slope(&(&shift - &r)).is_exceptional());
    }

    #[test]
    fn intervals_have_length_l(w in prop::collection::vec(prop_oneof![Just(Turn::L), Just(Turn::R)], 0..8)) {
        let w = TurnWord::new(w);
        let value = MarkovTree::reduced().vertex_at(&w).f3;
        let iv = markov_interval(&MarkovFraction { value: value.clone(), position: TreePosition::Vertex(w) });
        prop_assert_eq!(iv.hi.checked_sub(&iv.lo).unwrap(), length_surd(value.den()));
        prop_assert!(iv.lo < iv.hi);
        prop_assert!(iv.contains_interior(&value));
    }

    #[test]
    fn approx_constant_bounded_by_first_denominator(p in -100i64..100, q in 1i64..100) {
        let x = Fraction::new(p, q).unwrap();
        let c = approx_constant(&x);
        prop_assert!(c.value > Fraction::zero());
        prop_assert!(c.value <= Fraction::one());
        prop_assert!(c.witness != x);
    }

    #[test]
    fn congruence_routes_agree(q in 1u64..200_000) {
        let scan: Vec<BigUint> = solve_by_scan(q).into_iter().map(BigUint::from).collect();
        prop_assert_eq!(solve_by_factoring(&BigUint::from(q)), scan);
    }

    #[test]
    fn vieta_is_an_involution(path in prop::collection::vec(1usize..=3, 0..12), i in 1usize..=3) {
        let mut t = MarkovTriple::singular();
        for j in path {
            t = t.mutate(j).unwrap();
        }
        prop_assert_eq!(t.mutate(i).unwrap().mutate(i).unwrap(), t);
    }
}
