//! Shared fixtures for the integration suites.
#![allow(dead_code)] // not every test binary uses every fixture

use std::sync::Arc;

use grpdco::group::GroupTable;
use grpdco::groupoid::{coproduct, FiniteGroupoid};

pub fn arc(g: FiniteGroupoid) -> Arc<FiniteGroupoid> {
    Arc::new(g)
}

/// The standard corpus: discrete and indiscrete families, one-object
/// groupoids of small groups, the interval, and coproducts with the point
/// and the interval.
pub fn corpus() -> Vec<(String, Arc<FiniteGroupoid>)> {
    let mut out = Vec::new();
    for n in 1..=4 {
        out.push((format!("discrete{n}"), arc(FiniteGroupoid::discrete(n))));
    }
    for n in 1..=4 {
        out.push((format!("indiscrete{n}"), arc(FiniteGroupoid::indiscrete(n))));
    }
    out.push(("sigmaZ2".into(), arc(FiniteGroupoid::sigma(&GroupTable::cyclic(2)))));
    out.push(("sigmaZ3".into(), arc(FiniteGroupoid::sigma(&GroupTable::cyclic(3)))));
    out.push((
        "sigmaV4".into(),
        arc(FiniteGroupoid::sigma(&GroupTable::klein_four())),
    ));
    out.push(("interval".into(), arc(FiniteGroupoid::interval())));
    let z2 = arc(FiniteGroupoid::sigma(&GroupTable::cyclic(2)));
    let i2 = arc(FiniteGroupoid::indiscrete(2));
    let one = arc(FiniteGroupoid::terminal());
    let j = arc(FiniteGroupoid::interval());
    out.push(("sigmaZ2+point".into(), coproduct(&z2, &one).sum));
    out.push(("sigmaZ2+interval".into(), coproduct(&z2, &j).sum));
    out.push(("indiscrete2+point".into(), coproduct(&i2, &one).sum));
    out.push(("indiscrete2+interval".into(), coproduct(&i2, &j).sum));
    out
}

pub fn corpus_with_at_most(objects: usize) -> Vec<(String, Arc<FiniteGroupoid>)> {
    corpus()
        .into_iter()
        .filter(|(_, g)| g.n_objects() <= objects)
        .collect()
}

/// Re-runs every law check on a groupoid by rebuilding it from its own
/// tables; an independent confirmation that constructor outputs are lawful.
pub fn revalidate(g: &FiniteGroupoid) -> grpdco::Result<FiniteGroupoid> {
    let n = g.n_morphisms();
    FiniteGroupoid::from_parts(
        g.n_objects(),
        g.morphisms().map(|m| g.source(m)).collect(),
        g.morphisms().map(|m| g.target(m)).collect(),
        g.objects().map(|u| g.identity(u)).collect(),
        g.morphisms().map(|m| g.inverse(m)).collect(),
        (0..n * n).map(|i| g.compose(i / n, i % n)).collect(),
    )
}

/// Closure of a set of permutations of {0..n-1} under composition, as a
/// group table. Used to build the small non-abelian groups.
pub fn permutation_group(n: usize, generators: &[Vec<usize>]) -> GroupTable {
    let identity: Vec<usize> = (0..n).collect();
    let mut elements = vec![identity];
    loop {
        let mut grew = false;
        for i in 0..elements.len() {
            for g in generators {
                let composed: Vec<usize> = (0..n).map(|x| g[elements[i][x]]).collect();
                if !elements.contains(&composed) {
                    elements.push(composed);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    elements.sort();
    let index = |p: &Vec<usize>| elements.iter().position(|q| q == p).unwrap();
    let rows = elements
        .iter()
        .map(|b| {
            elements
                .iter()
                .map(|a| {
                    let composed: Vec<usize> = (0..n).map(|x| b[a[x]]).collect();
                    index(&composed)
                })
                .collect()
        })
        .collect();
    GroupTable::from_mul_table(rows).expect("permutation closure is a group")
}

pub fn symmetric3() -> GroupTable {
    permutation_group(3, &[vec![1, 2, 0], vec![1, 0, 2]])
}

pub fn dihedral4() -> GroupTable {
    permutation_group(4, &[vec![1, 2, 3, 0], vec![3, 2, 1, 0]])
}
