//! Isomorphism search by backtracking, for tests and universe deduplication.

use std::sync::Arc;

use crate::functor::Functor;
use crate::groupoid::{FiniteGroupoid, Mor, Ob};

/// Finds an invertible functor `a -> b`, if one exists.
pub fn find_isomorphism(
    a: &Arc<FiniteGroupoid>,
    b: &Arc<FiniteGroupoid>,
) -> Option<Functor> {
    if a.n_objects() != b.n_objects() || a.n_morphisms() != b.n_morphisms() {
        return None;
    }
    let mut object_map = vec![usize::MAX; a.n_objects()];
    let mut used = vec![false; b.n_objects()];
    search_objects(a, b, &mut object_map, &mut used, 0)
}

pub fn are_isomorphic(a: &Arc<FiniteGroupoid>, b: &Arc<FiniteGroupoid>) -> bool {
    find_isomorphism(a, b).is_some()
}

fn search_objects(
    a: &Arc<FiniteGroupoid>,
    b: &Arc<FiniteGroupoid>,
    object_map: &mut Vec<Ob>,
    used: &mut Vec<bool>,
    next: Ob,
) -> Option<Functor> {
    if next == a.n_objects() {
        return search_morphisms(a, b, object_map);
    }
    for cand in b.objects() {
        if used[cand] || !hom_profile_matches(a, b, object_map, next, cand) {
            continue;
        }
        object_map[next] = cand;
        used[cand] = true;
        if let Some(f) = search_objects(a, b, object_map, used, next + 1) {
            return Some(f);
        }
        used[cand] = false;
        object_map[next] = usize::MAX;
    }
    None
}

/// Hom-set cardinalities against already-placed objects must agree.
fn hom_profile_matches(
    a: &FiniteGroupoid,
    b: &FiniteGroupoid,
    object_map: &[Ob],
    u: Ob,
    cand: Ob,
) -> bool {
    if a.hom(u, u).len() != b.hom(cand, cand).len() {
        return false;
    }
    for (v, &bv) in object_map.iter().enumerate().take(u) {
        if a.hom(u, v).len() != b.hom(cand, bv).len()
            || a.hom(v, u).len() != b.hom(bv, cand).len()
        {
            return false;
        }
    }
    true
}

fn search_morphisms(
    a: &Arc<FiniteGroupoid>,
    b: &Arc<FiniteGroupoid>,
    object_map: &[Ob],
) -> Option<Functor> {
    let mut morphism_map = vec![usize::MAX; a.n_morphisms()];
    let mut used = vec![false; b.n_morphisms()];
    if extend(a, b, object_map, &mut morphism_map, &mut used, 0) {
        let f = Functor::new(
            a.clone(),
            b.clone(),
            object_map.to_vec(),
            morphism_map,
        )
        .expect("backtracking produced a functor");
        debug_assert!(f.is_invertible());
        Some(f)
    } else {
        None
    }
}

fn extend(
    a: &Arc<FiniteGroupoid>,
    b: &Arc<FiniteGroupoid>,
    object_map: &[Ob],
    morphism_map: &mut Vec<Mor>,
    used: &mut Vec<bool>,
    next: Mor,
) -> bool {
    if next == a.n_morphisms() {
        return true;
    }
    let candidates: Vec<Mor> = if a.is_identity(next) {
        vec![b.identity(object_map[a.source(next)])]
    } else {
        b.hom(object_map[a.source(next)], object_map[a.target(next)])
    };
    for fm in candidates {
        if used[fm] {
            continue;
        }
        morphism_map[next] = fm;
        used[fm] = true;
        if partial_hom_ok(a, b, morphism_map, next) && extend(a, b, object_map, morphism_map, used, next + 1) {
            return true;
        }
        used[fm] = false;
        morphism_map[next] = usize::MAX;
    }
    false
}

fn partial_hom_ok(a: &FiniteGroupoid, b: &FiniteGroupoid, morphism_map: &[Mor], just: Mor) -> bool {
    for x in 0..=just {
        for y in 0..=just {
            if let Some(c) = a.compose(y, x) {
                if c <= just && b.compose(morphism_map[y], morphism_map[x]) != Some(morphism_map[c])
                {
                    return false;
                }
            }
        }
    }
    true
}

/// Isomorphism of finite binary-operation tables (monoid or group style):
/// a bijection `p` with `p(a[i][j]) = b[p(i)][p(j)]`.
pub fn find_table_isomorphism(a: &[Vec<usize>], b: &[Vec<usize>]) -> Option<Vec<usize>> {
    if a.len() != b.len() {
        return None;
    }
    let n = a.len();
    let mut p = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        a: &[Vec<usize>],
        b: &[Vec<usize>],
        p: &mut Vec<usize>,
        used: &mut Vec<bool>,
        next: usize,
    ) -> bool {
        let n = a.len();
        if next == n {
            return true;
        }
        'cand: for cand in 0..n {
            if used[cand] {
                continue;
            }
            p[next] = cand;
            used[cand] = true;
            for i in 0..=next {
                for j in 0..=next {
                    let prod = a[i][j];
                    if prod <= next && b[p[i]][p[j]] != p[prod] {
                        used[cand] = false;
                        p[next] = usize::MAX;
                        continue 'cand;
                    }
                }
            }
            if go(a, b, p, used, next + 1) {
                return true;
            }
            used[cand] = false;
            p[next] = usize::MAX;
        }
        false
    }
    if go(a, b, &mut p, &mut used, 0) {
        Some(p)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupTable;
    use crate::groupoid::coslice;

    #[test]
    fn coslice_of_one_object_groupoid_is_indiscrete() {
        let g = Arc::new(FiniteGroupoid::sigma(&GroupTable::cyclic(3)));
        let cs = coslice(&g, 0);
        assert!(are_isomorphic(
            &cs.groupoid,
            &Arc::new(FiniteGroupoid::indiscrete(3))
        ));
    }

    #[test]
    fn interval_vs_discrete_pair() {
        let j = Arc::new(FiniteGroupoid::interval());
        let d = Arc::new(FiniteGroupoid::discrete(2));
        assert!(!are_isomorphic(&j, &d));
        assert!(are_isomorphic(&j, &Arc::new(FiniteGroupoid::indiscrete(2))));
    }

    #[test]
    fn table_isomorphism_distinguishes_klein_four() {
        let as_rows = |g: &GroupTable| {
            (0..g.order())
                .map(|b| (0..g.order()).map(|a| g.mul(b, a)).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        };
        let z4 = as_rows(&GroupTable::cyclic(4));
        let v4 = as_rows(&GroupTable::klein_four());
        assert!(find_table_isomorphism(&z4, &z4).is_some());
        assert!(find_table_isomorphism(&z4, &v4).is_none());
    }
}
