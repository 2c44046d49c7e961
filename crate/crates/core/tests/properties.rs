//! Property tests over randomly sampled corpus members and elements.

mod common;

use common::corpus_with_at_most;
use grpdco::bisection::{enumerate_bisections, pushforward, Bisection};
use grpdco::caps::Caps;
use grpdco::comorphism::enumerate_comorphisms;
use grpdco::io::{parse_bis, parse_grpd, serialize_bis, serialize_grpd};
use grpdco::pseudogroup::{enumerate_partial_bisections, join, pbis_map, PartialBisection};
use proptest::prelude::*;
use proptest::sample::Index;

fn caps() -> Caps {
    Caps::default()
}

proptest! {
    #[test]
    fn bisection_group_laws(which: Index, ia: Index, ib: Index, ic: Index) {
        let corpus = corpus_with_at_most(3);
        let (_, g) = which.get(&corpus);
        let all = enumerate_bisections(g, &caps()).unwrap();
        let (a, b, c) = (ia.get(&all), ib.get(&all), ic.get(&all));
        let one = Bisection::identity(g);
        prop_assert_eq!(&Bisection::multiply(&one, a).unwrap(), a);
        prop_assert_eq!(&Bisection::multiply(a, &one).unwrap(), a);
        prop_assert_eq!(Bisection::multiply(a, &a.inverse()).unwrap(), one);
        let left = Bisection::multiply(c, &Bisection::multiply(b, a).unwrap()).unwrap();
        let right = Bisection::multiply(&Bisection::multiply(c, b).unwrap(), a).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn partial_bisection_monoid_laws(which: Index, ia: Index, ib: Index, ic: Index) {
        let corpus = corpus_with_at_most(3);
        let (_, g) = which.get(&corpus);
        let all = enumerate_partial_bisections(g, &caps()).unwrap();
        let (a, b, c) = (ia.get(&all), ib.get(&all), ic.get(&all));
        let unit = PartialBisection::unit(g);
        prop_assert_eq!(&PartialBisection::multiply(&unit, a).unwrap(), a);
        prop_assert_eq!(&PartialBisection::multiply(a, &unit).unwrap(), a);
        let left =
            PartialBisection::multiply(c, &PartialBisection::multiply(b, a).unwrap()).unwrap();
        let right =
            PartialBisection::multiply(&PartialBisection::multiply(c, b).unwrap(), a).unwrap();
        prop_assert_eq!(left, right);
        // generalized inverse laws
        let s = a.star();
        let asa = PartialBisection::multiply(&PartialBisection::multiply(a, &s).unwrap(), a)
            .unwrap();
        prop_assert_eq!(&asa, a);
    }

    #[test]
    fn natural_order_matches_restriction(which: Index, ia: Index, ib: Index) {
        let corpus = corpus_with_at_most(3);
        let (_, g) = which.get(&corpus);
        let all = enumerate_partial_bisections(g, &caps()).unwrap();
        let (a, b) = (ia.get(&all), ib.get(&all));
        prop_assert_eq!(
            PartialBisection::natural_leq(a, b).unwrap(),
            PartialBisection::restriction_leq(a, b)
        );
    }

    #[test]
    fn join_of_compatible_pair_is_least_upper_bound(which: Index, ia: Index, ib: Index) {
        let corpus = corpus_with_at_most(3);
        let (_, g) = which.get(&corpus);
        let all = enumerate_partial_bisections(g, &caps()).unwrap();
        let (a, b) = (ia.get(&all), ib.get(&all));
        prop_assume!(PartialBisection::compatible(a, b).unwrap());
        let j = join(g, &[a.clone(), b.clone()]).unwrap();
        prop_assert!(PartialBisection::natural_leq(a, &j).unwrap());
        prop_assert!(PartialBisection::natural_leq(b, &j).unwrap());
        for upper in &all {
            if PartialBisection::natural_leq(a, upper).unwrap()
                && PartialBisection::natural_leq(b, upper).unwrap()
            {
                prop_assert!(PartialBisection::natural_leq(&j, upper).unwrap());
            }
        }
    }

    #[test]
    fn pushforward_is_a_pseudogroup_morphism(fi: Index, ia: Index, ib: Index) {
        // fixed small hom-set with non-trivial structure on both sides
        let corpus = corpus_with_at_most(2);
        let (_, g) = corpus.iter().find(|(n, _)| n == "sigmaZ2").unwrap();
        let (_, h) = corpus.iter().find(|(n, _)| n == "indiscrete2").unwrap();
        let comors = enumerate_comorphisms(g, h, &caps()).unwrap();
        prop_assume!(!comors.is_empty());
        let f = fi.get(&comors);
        let all = enumerate_partial_bisections(g, &caps()).unwrap();
        let (a, b) = (ia.get(&all), ib.get(&all));
        let lhs = pbis_map(f, &PartialBisection::multiply(b, a).unwrap()).unwrap();
        let rhs = PartialBisection::multiply(&pbis_map(f, b).unwrap(), &pbis_map(f, a).unwrap())
            .unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(
            pbis_map(f, &PartialBisection::unit(g)).unwrap(),
            PartialBisection::unit(h)
        );
    }

    #[test]
    fn pushforward_respects_bisection_multiplication(fi: Index, ia: Index, ib: Index) {
        let corpus = corpus_with_at_most(2);
        let (_, g) = corpus.iter().find(|(n, _)| n == "sigmaZ2").unwrap();
        let (_, h) = corpus.iter().find(|(n, _)| n == "indiscrete2").unwrap();
        let comors = enumerate_comorphisms(g, h, &caps()).unwrap();
        prop_assume!(!comors.is_empty());
        let f = fi.get(&comors);
        let all = enumerate_bisections(g, &caps()).unwrap();
        let (a, b) = (ia.get(&all), ib.get(&all));
        let lhs = pushforward(f, &Bisection::multiply(b, a).unwrap()).unwrap();
        let rhs = Bisection::multiply(
            &pushforward(f, b).unwrap(),
            &pushforward(f, a).unwrap(),
        )
        .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn serialization_round_trips(which: Index, ia: Index) {
        let corpus = corpus_with_at_most(4);
        let (_, g) = which.get(&corpus);
        let text = serialize_grpd(g);
        let parsed = parse_grpd(&text).unwrap();
        prop_assert_eq!(&parsed, g.as_ref());
        prop_assert_eq!(serialize_grpd(&parsed), text);

        let all = enumerate_bisections(g, &caps()).unwrap();
        let alpha = ia.get(&all);
        let bis_text = serialize_bis(alpha);
        prop_assert_eq!(&parse_bis(&bis_text, g).unwrap(), alpha);
    }
}
