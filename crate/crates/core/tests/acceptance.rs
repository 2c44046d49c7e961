//! Acceptance suite: one test per criterion, each printing a PASS line with
//! its runtime and enforcing its time budget. Run with `--nocapture` to see
//! the lines.

mod common;

use std::time::{Duration, Instant};

use common::{arc, corpus, corpus_with_at_most, dihedral4, revalidate, symmetric3};
use grpdco::bisection::{
    adjunction_back, adjunction_forward, bisection_group, enumerate_bisections, Bisection,
};
use grpdco::caps::Caps;
use grpdco::comorphism::{
    check_beck_chevalley, enumerate_comorphisms, factorize, Comorphism,
};
use grpdco::functor::{enumerate_functors, Functor};
use grpdco::group::GroupTable;
use grpdco::groupoid::{coproduct, copair, coslice, precompose_functor, pullback, FiniteGroupoid};
use grpdco::inner::{
    build_universe, verify_partial, verify_prop1, verify_theorem1, PartialContext, UniverseMode,
};
use grpdco::iso::find_table_isomorphism;
use grpdco::pseudogroup::{
    check_join_distributivity, enumerate_partial_bisections, enumerate_preservation_maps,
    indiscrete_pbis_count, pbis_map_indices, pbis_materialize, reconstruct_comorphism,
    PartialBisection,
};

const TABLE_CAP: usize = 10_000;

fn caps() -> Caps {
    Caps::default()
}

fn finish(criterion: u32, what: &str, started: Instant, budget: Duration) {
    let elapsed = started.elapsed();
    println!(
        "criterion {criterion} ({what}): PASS in {:.2}s (budget {:.0}s)",
        elapsed.as_secs_f64(),
        budget.as_secs_f64()
    );
    assert!(
        elapsed < budget,
        "criterion {criterion} exceeded its {budget:?} budget: {elapsed:?}"
    );
}

#[test]
fn criterion_01_groupoid_and_functor_laws() {
    let started = Instant::now();
    let caps = caps();
    for (name, g) in corpus() {
        revalidate(&g).unwrap_or_else(|e| panic!("{name}: {e}"));

        for u in g.objects() {
            let cs = coslice(&g, u);
            revalidate(&cs.groupoid).unwrap();
            assert!(cs.projection.is_discrete_opfibration(), "{name} at {u}");
        }
        for a in g.morphisms() {
            let (u, v) = (g.source(a), g.target(a));
            let pre = precompose_functor(&g, a);
            assert!(pre.is_discrete_opfibration(), "{name} morphism {a}");
            let pi_u = coslice(&g, u).projection;
            let pi_v = coslice(&g, v).projection;
            assert_eq!(Functor::compose(&pi_u, &pre).unwrap(), pi_v);
            if g.is_identity(a) {
                assert_eq!(pre, Functor::identity(&coslice(&g, u).groupoid));
            }
        }

        let one = arc(FiniteGroupoid::terminal());
        assert_eq!(
            enumerate_functors(&one, &g, &caps).unwrap().len(),
            g.n_objects(),
            "{name}: functors from the point pick an object"
        );
        assert_eq!(
            enumerate_functors(&g, &one, &caps).unwrap().len(),
            1,
            "{name}: the point is terminal"
        );
        let id = Functor::identity(&g);
        assert!(id.is_bijective_on_objects() && id.is_discrete_opfibration());
    }

    // coproduct couniversality: the mediator exists, validates, and is the
    // only functor restricting to the given legs
    let left = arc(FiniteGroupoid::sigma(&GroupTable::cyclic(2)));
    let right = arc(FiniteGroupoid::interval());
    let cp = coproduct(&left, &right);
    for (_, k) in corpus_with_at_most(2) {
        for f in enumerate_functors(&left, &k, &caps).unwrap() {
            for h in enumerate_functors(&right, &k, &caps).unwrap() {
                let mediator = copair(&cp, &f, &h).unwrap();
                assert_eq!(Functor::compose(&mediator, &cp.left).unwrap(), f);
                assert_eq!(Functor::compose(&mediator, &cp.right).unwrap(), h);
                let matching = enumerate_functors(&cp.sum, &k, &caps)
                    .unwrap()
                    .into_iter()
                    .filter(|m| {
                        Functor::compose(m, &cp.left).unwrap() == f
                            && Functor::compose(m, &cp.right).unwrap() == h
                    })
                    .count();
                assert_eq!(matching, 1, "mediator must be unique");
            }
        }
    }
    finish(1, "groupoid and functor laws", started, Duration::from_secs(10));
}

#[test]
fn criterion_02_factorization_and_beck_chevalley() {
    let started = Instant::now();
    let caps = caps();
    let small = corpus_with_at_most(3);
    let mut checked = 0usize;
    for (gn, g) in &small {
        for (hn, h) in &small {
            for f in enumerate_comorphisms(g, h, &caps).unwrap() {
                let fac = factorize(&f);
                assert!(
                    fac.left.is_discrete_opfibration(),
                    "{gn} to {hn}: left leg must be an opfibration"
                );
                assert!(
                    fac.right.is_bijective_on_objects(),
                    "{gn} to {hn}: right leg must be bijective on objects"
                );
                assert_eq!(fac.recompose().unwrap(), f, "{gn} to {hn}: recomposition");
                checked += 1;
            }
        }
    }
    assert!(checked > 100, "expected a substantial comorphism census, got {checked}");

    // squares of a coslice projection pulled back along a
    // bijective-on-objects functor
    let mut squares = 0usize;
    for (_, g) in &small {
        for (_, h) in &small {
            for boo in enumerate_functors(g, h, &caps)
                .unwrap()
                .into_iter()
                .filter(Functor::is_bijective_on_objects)
            {
                for u in g.objects() {
                    let cs = coslice(h, boo.apply_ob(u));
                    let pb = pullback(&boo, &cs.projection).unwrap();
                    assert!(pb.right.is_bijective_on_objects());
                    assert!(pb.left.is_discrete_opfibration());
                    assert!(
                        check_beck_chevalley(&pb.right, &boo, &pb.left, &cs.projection)
                            .unwrap(),
                        "pullback square must satisfy the comorphism identity"
                    );
                    squares += 1;
                }
            }
        }
    }
    assert!(squares > 50, "expected a substantial square census, got {squares}");
    finish(
        2,
        "factorization and pullback squares",
        started,
        Duration::from_secs(60),
    );
}

#[test]
fn criterion_03_bisection_counts() {
    let started = Instant::now();
    let caps = caps();
    for n in 1..=4 {
        let d = arc(FiniteGroupoid::discrete(n));
        assert_eq!(enumerate_bisections(&d, &caps).unwrap().len(), 1);
    }
    for (n, expected) in [(1, 1), (2, 2), (3, 6), (4, 24)] {
        let i = arc(FiniteGroupoid::indiscrete(n));
        assert_eq!(enumerate_bisections(&i, &caps).unwrap().len(), expected);
    }
    let groups: Vec<(&str, GroupTable)> = vec![
        ("Z2", GroupTable::cyclic(2)),
        ("Z3", GroupTable::cyclic(3)),
        ("Z4", GroupTable::cyclic(4)),
        ("Z5", GroupTable::cyclic(5)),
        ("Z6", GroupTable::cyclic(6)),
        ("Z7", GroupTable::cyclic(7)),
        ("Z8", GroupTable::cyclic(8)),
        ("V4", GroupTable::klein_four()),
        (
            "Z2xZ4",
            GroupTable::direct_product(&GroupTable::cyclic(2), &GroupTable::cyclic(4)),
        ),
        (
            "Z2^3",
            GroupTable::direct_product(&GroupTable::cyclic(2), &GroupTable::klein_four()),
        ),
        ("S3", symmetric3()),
        ("D4", dihedral4()),
    ];
    for (name, h) in groups {
        assert!(h.order() <= 8);
        let g = arc(FiniteGroupoid::sigma(&h));
        let bg = bisection_group(&g, &caps, TABLE_CAP).unwrap();
        assert_eq!(bg.elements.len(), h.order(), "{name}");
        assert!(bg.table.is_isomorphic_to(&h), "{name}: Bis must match the group");
    }
    finish(3, "bisection group counts", started, Duration::from_secs(10));
}

#[test]
fn criterion_04_adjunction_bijections() {
    let started = Instant::now();
    let caps = caps();
    for h in [GroupTable::cyclic(2), GroupTable::cyclic(3), GroupTable::cyclic(4)] {
        let sigma_h = arc(FiniteGroupoid::sigma(&h));
        for (name, g) in corpus_with_at_most(3) {
            let comors = enumerate_comorphisms(&sigma_h, &g, &caps).unwrap();
            let bg = bisection_group(&g, &caps, TABLE_CAP).unwrap();
            let homs = h.homomorphisms_to(&bg.table);
            assert_eq!(
                comors.len(),
                homs.len(),
                "{name}, |H| = {}: comorphism and homomorphism counts",
                h.order()
            );
            for f in &comors {
                let phi = adjunction_forward(f, &h).unwrap();
                assert_eq!(&adjunction_back(&h, &g, &phi).unwrap(), f);
            }
            for hom in &homs {
                let phi: Vec<Bisection> =
                    hom.iter().map(|&i| bg.elements[i].clone()).collect();
                let f = adjunction_back(&h, &g, &phi).unwrap();
                assert_eq!(adjunction_forward(&f, &h).unwrap(), phi);
            }
        }
    }
    finish(4, "group-to-bisections adjunction", started, Duration::from_secs(60));
}

#[test]
fn criterion_05_pseudogroup_laws_and_counts() {
    let started = Instant::now();
    let caps = caps();
    for (name, g) in corpus() {
        let pb = pbis_materialize(&g, &caps, TABLE_CAP)
            .unwrap_or_else(|e| panic!("{name}: {e}"));
        pb.view.validate().unwrap();
        check_join_distributivity(&pb).unwrap();
        assert!(pb.view.is_complete_atomic(), "{name}");
        // atoms of the idempotent lattice correspond to the objects
        let idems = pb.view.idempotents();
        let bottom = pb.bottom_index();
        let atoms: Vec<usize> = idems
            .iter()
            .copied()
            .filter(|&a| {
                a != bottom
                    && idems
                        .iter()
                        .all(|&x| !(pb.view.natural_leq(x, a) && x != a && x != bottom))
            })
            .collect();
        assert_eq!(atoms.len(), g.n_objects(), "{name}: atoms vs objects");
    }
    for n in 0..=4 {
        let d = arc(FiniteGroupoid::discrete(n));
        assert_eq!(
            enumerate_partial_bisections(&d, &caps).unwrap().len(),
            1 << n
        );
    }
    for n in 1..=4 {
        let i = arc(FiniteGroupoid::indiscrete(n));
        assert_eq!(
            enumerate_partial_bisections(&i, &caps).unwrap().len(),
            indiscrete_pbis_count(n)
        );
    }
    for h in [
        GroupTable::cyclic(2),
        GroupTable::cyclic(3),
        GroupTable::klein_four(),
    ] {
        let s = arc(FiniteGroupoid::sigma(&h));
        assert_eq!(
            enumerate_partial_bisections(&s, &caps).unwrap().len(),
            h.order() + 1
        );
    }
    finish(5, "pseudogroup laws and counts", started, Duration::from_secs(30));
}

#[test]
fn criterion_06_pseudogroup_embedding_full_and_faithful() {
    let started = Instant::now();
    let caps = caps();
    let gs = [
        arc(FiniteGroupoid::discrete(1)),
        arc(FiniteGroupoid::discrete(2)),
        arc(FiniteGroupoid::sigma(&GroupTable::cyclic(2))),
    ];
    for g in &gs {
        for h in &gs {
            let pg = pbis_materialize(g, &caps, TABLE_CAP).unwrap();
            let ph = pbis_materialize(h, &caps, TABLE_CAP).unwrap();
            let maps = enumerate_preservation_maps(&pg, &ph).unwrap();
            let comors = enumerate_comorphisms(g, h, &caps).unwrap();
            assert_eq!(maps.len(), comors.len());
            for f in &comors {
                let phi = pbis_map_indices(f, &pg, &ph).unwrap();
                assert_eq!(&reconstruct_comorphism(&pg, &ph, &phi).unwrap(), f);
            }
            for phi in &maps {
                let f = reconstruct_comorphism(&pg, &ph, phi).unwrap();
                assert_eq!(&pbis_map_indices(&f, &pg, &ph).unwrap(), phi);
            }
        }
    }
    finish(
        6,
        "pseudogroup embedding is full and faithful",
        started,
        Duration::from_secs(120),
    );
}

#[test]
fn criterion_07_comorphism_families_match_bisections() {
    let started = Instant::now();
    let caps = caps();
    let cases = [
        ("discrete2", arc(FiniteGroupoid::discrete(2)), 1usize),
        (
            "sigmaZ2",
            arc(FiniteGroupoid::sigma(&GroupTable::cyclic(2))),
            2,
        ),
        ("indiscrete2", arc(FiniteGroupoid::indiscrete(2)), 2),
    ];
    for (name, g, expected) in cases {
        let r = verify_theorem1(&g, &caps, None).unwrap();
        assert!(r.universe.complete, "{name}: universe must close under caps");
        assert_eq!(r.bisections, expected, "{name}");
        assert_eq!(r.families, expected, "{name}: family count");
        assert!(r.extraction_round_trip, "{name}: extraction inverts conjugation");
        assert!(r.group_isomorphic, "{name}: family group matches the bisection group");
        assert!(r.pass);
    }
    finish(
        7,
        "natural families over comorphisms are bisections",
        started,
        Duration::from_secs(600),
    );
}

#[test]
fn criterion_08_homomorphism_families_are_trivial() {
    let started = Instant::now();
    let caps = caps();
    for g in [
        arc(FiniteGroupoid::discrete(2)),
        arc(FiniteGroupoid::sigma(&GroupTable::cyclic(2))),
        arc(FiniteGroupoid::indiscrete(2)),
    ] {
        let r = verify_prop1(&g, &caps, None).unwrap();
        assert!(r.universe.complete);
        assert_eq!(r.families, 1);
        assert!(r.identity_only);
        assert!(r.pass);
    }
    finish(
        8,
        "natural families over homomorphisms are trivial",
        started,
        Duration::from_secs(600),
    );
}

#[test]
fn criterion_09_partial_families_match_partial_bisections() {
    let started = Instant::now();
    let caps = caps();
    let cases = [
        ("discrete2", arc(FiniteGroupoid::discrete(2)), 4usize),
        (
            "sigmaZ2",
            arc(FiniteGroupoid::sigma(&GroupTable::cyclic(2))),
            3,
        ),
    ];
    for (name, g, expected) in cases {
        let r = verify_partial(&g, &caps, None).unwrap();
        assert_eq!(r.partial_bisections, expected, "{name}");
        assert_eq!(r.families, expected, "{name}: family count");
        assert!(r.extraction_round_trip, "{name}");
        assert!(r.monoid_isomorphic, "{name}");
        assert!(r.pass);

        // independent table-level isomorphism between the family monoid and
        // the partial-bisection monoid
        let u = build_universe(&g, UniverseMode::Comorphisms, &caps).unwrap();
        let ctx = PartialContext::new(&u).unwrap();
        let families = ctx.enumerate(None);
        let family_table: Vec<Vec<usize>> = families
            .iter()
            .map(|a| {
                families
                    .iter()
                    .map(|b| {
                        let ab = ctx.multiply(a, b).unwrap();
                        families.iter().position(|f| f == &ab).unwrap()
                    })
                    .collect()
            })
            .collect();
        let pb = pbis_materialize(&g, &caps, TABLE_CAP).unwrap();
        let pbis_table: Vec<Vec<usize>> = (0..pb.view.n)
            .map(|b| (0..pb.view.n).map(|a| pb.view.mul(b, a)).collect())
            .collect();
        assert!(
            find_table_isomorphism(&family_table, &pbis_table).is_some(),
            "{name}: monoid tables must be isomorphic"
        );
    }
    finish(
        9,
        "partial families form the partial-bisection monoid",
        started,
        Duration::from_secs(600),
    );
}

#[test]
fn criterion_10_order_and_compatibility_regressions() {
    let started = Instant::now();
    let caps = caps();
    // the natural partial order coincides with the restriction order
    for (name, g) in corpus() {
        let all = enumerate_partial_bisections(&g, &caps).unwrap();
        if all.len() > 300 {
            continue;
        }
        for a in &all {
            for b in &all {
                assert_eq!(
                    PartialBisection::natural_leq(a, b).unwrap(),
                    PartialBisection::restriction_leq(a, b),
                    "{name}"
                );
            }
        }
    }
    // pinned witness: agreement on the common domain does not imply
    // compatibility (codomain collision)
    let g = arc(FiniteGroupoid::indiscrete(2));
    let a = PartialBisection::singleton(&g, 0); // 0 -> 0
    let b = PartialBisection::singleton(&g, 2); // 1 -> 0
    let agree = g
        .objects()
        .all(|u| a.component(u).is_none() || b.component(u).is_none());
    assert!(agree, "domains are disjoint, so they agree vacuously");
    assert!(!PartialBisection::compatible(&a, &b).unwrap());
    assert!(
        !PartialBisection::multiply(&b.star(), &a).unwrap().is_idempotent(),
        "the definitional compatibility fails on the second product"
    );
    finish(
        10,
        "order and compatibility regressions",
        started,
        Duration::from_secs(30),
    );
}

#[test]
fn comorphism_category_laws_over_corpus() {
    let caps = caps();
    let small = corpus_with_at_most(2);
    for (_, g) in &small {
        for (_, h) in &small {
            for f in enumerate_comorphisms(g, h, &caps).unwrap() {
                assert_eq!(Comorphism::compose(&f, &Comorphism::identity(g)).unwrap(), f);
                assert_eq!(Comorphism::compose(&Comorphism::identity(h), &f).unwrap(), f);
            }
        }
    }
}
