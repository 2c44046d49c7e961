//! Finite groupoids presented by explicit composition tables.
//!
//! Objects and morphisms are dense small integers, and every structure map
//! is an array indexed by identifier; exhaustive enumeration dominates the
//! runtime of everything built on top, so lookups must stay flat.
//!
//! Composition convention throughout: `compose(b, a)` is `b` after `a`,
//! defined exactly when `target(a) == source(b)`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::functor::Functor;
use crate::group::GroupTable;

pub type Ob = usize;
pub type Mor = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroupoid {
    n_objects: usize,
    source: Vec<Ob>,
    target: Vec<Ob>,
    identity: Vec<Mor>,
    inverse: Vec<Mor>,
    /// Row-major: `compose[b * n_morphisms + a]` holds `b∘a` when composable.
    compose: Vec<Option<Mor>>,
    /// Morphisms grouped by source object, ascending.
    mors_from: Vec<Vec<Mor>>,
    /// Position of each morphism within `mors_from[source]`.
    pos_in_from: Vec<usize>,
}

impl FiniteGroupoid {
    /// Validates a complete table presentation and returns the groupoid.
    ///
    /// Checks run in a fixed order and the first violated law is reported
    /// with its witnesses: table shape, identity endpoints, composability
    /// of declared composites, unit laws, inverse laws, associativity.
    pub fn from_parts(
        n_objects: usize,
        source: Vec<Ob>,
        target: Vec<Ob>,
        identity: Vec<Mor>,
        inverse: Vec<Mor>,
        compose: Vec<Option<Mor>>,
    ) -> Result<Self> {
        let n_mor = source.len();
        if target.len() != n_mor {
            return Err(Error::MalformedTable(format!(
                "source lists {} morphisms but target lists {}",
                n_mor,
                target.len()
            )));
        }
        if identity.len() != n_objects {
            return Err(Error::MalformedTable(format!(
                "expected {} identity entries, found {}",
                n_objects,
                identity.len()
            )));
        }
        if inverse.len() != n_mor {
            return Err(Error::MalformedTable(format!(
                "expected {} inverse entries, found {}",
                n_mor,
                inverse.len()
            )));
        }
        if compose.len() != n_mor * n_mor {
            return Err(Error::MalformedTable(format!(
                "expected {} composition cells, found {}",
                n_mor * n_mor,
                compose.len()
            )));
        }
        for (m, (&s, &t)) in source.iter().zip(&target).enumerate() {
            if s >= n_objects || t >= n_objects {
                return Err(Error::MalformedTable(format!(
                    "morphism {m} has endpoint out of range"
                )));
            }
        }
        for (u, &m) in identity.iter().enumerate() {
            if m >= n_mor {
                return Err(Error::MalformedTable(format!(
                    "identity of object {u} is out of range"
                )));
            }
        }
        for (m, &i) in inverse.iter().enumerate() {
            if i >= n_mor {
                return Err(Error::MalformedTable(format!(
                    "inverse of morphism {m} is out of range"
                )));
            }
        }

        let g = FiniteGroupoid {
            n_objects,
            mors_from: {
                let mut v = vec![Vec::new(); n_objects];
                for (m, &s) in source.iter().enumerate() {
                    v[s].push(m);
                }
                v
            },
            pos_in_from: {
                let mut pos = vec![0; n_mor];
                let mut seen = vec![0usize; n_objects];
                for (m, &s) in source.iter().enumerate() {
                    pos[m] = seen[s];
                    seen[s] += 1;
                }
                pos
            },
            source,
            target,
            identity,
            inverse,
            compose,
        };
        g.check_laws()?;
        Ok(g)
    }

    fn check_laws(&self) -> Result<()> {
        let n = self.n_morphisms();
        for u in 0..self.n_objects {
            let e = self.identity[u];
            if self.source[e] != u || self.target[e] != u {
                return Err(Error::IdentityLaw {
                    object: u,
                    src: self.source[e],
                    tgt: self.target[e],
                });
            }
        }
        for b in 0..n {
            for a in 0..n {
                let cell = self.compose[b * n + a];
                let composable = self.target[a] == self.source[b];
                match cell {
                    Some(_) if !composable => return Err(Error::NotComposable { b, a }),
                    None if composable => return Err(Error::MissingComposite { b, a }),
                    Some(c) => {
                        if c >= n {
                            return Err(Error::MalformedTable(format!(
                                "compose({b}, {a}) is out of range"
                            )));
                        }
                        if self.source[c] != self.source[a] || self.target[c] != self.target[b] {
                            return Err(Error::CompositeSourceTarget { b, a, composite: c });
                        }
                    }
                    None => {}
                }
            }
        }
        for a in 0..n {
            let lid = self.identity[self.target[a]];
            let rid = self.identity[self.source[a]];
            if self.compose[lid * n + a] != Some(a) || self.compose[a * n + rid] != Some(a) {
                return Err(Error::UnitLaw { morphism: a });
            }
        }
        for a in 0..n {
            let i = self.inverse[a];
            // An inverse with the wrong endpoints makes the products below
            // undefined, which is itself an inverse-law failure.
            let left = if self.source[i] == self.target[a] {
                self.compose[i * n + a]
            } else {
                None
            };
            let right = if self.source[a] == self.target[i] {
                self.compose[a * n + i]
            } else {
                None
            };
            if left != Some(self.identity[self.source[a]])
                || right != Some(self.identity[self.target[a]])
            {
                return Err(Error::InverseLaw {
                    morphism: a,
                    inverse: i,
                });
            }
        }
        for a in 0..n {
            for b in self.mors_from(self.target[a]).to_vec() {
                let ba = self.compose[b * n + a].unwrap();
                for c in self.mors_from(self.target[b]).to_vec() {
                    let cb = self.compose[c * n + b].unwrap();
                    if self.compose[c * n + ba] != self.compose[cb * n + a] {
                        return Err(Error::Associativity { c, b, a });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn n_objects(&self) -> usize {
        self.n_objects
    }

    pub fn n_morphisms(&self) -> usize {
        self.source.len()
    }

    pub fn objects(&self) -> std::ops::Range<Ob> {
        0..self.n_objects
    }

    pub fn morphisms(&self) -> std::ops::Range<Mor> {
        0..self.n_morphisms()
    }

    pub fn source(&self, m: Mor) -> Ob {
        self.source[m]
    }

    pub fn target(&self, m: Mor) -> Ob {
        self.target[m]
    }

    pub fn identity(&self, u: Ob) -> Mor {
        self.identity[u]
    }

    pub fn inverse(&self, m: Mor) -> Mor {
        self.inverse[m]
    }

    /// `b∘a` when `target(a) == source(b)`, `None` otherwise.
    pub fn compose(&self, b: Mor, a: Mor) -> Option<Mor> {
        self.compose[b * self.n_morphisms() + a]
    }

    /// Morphisms with source `u`, ascending.
    pub fn mors_from(&self, u: Ob) -> &[Mor] {
        &self.mors_from[u]
    }

    /// Position of `m` within `mors_from(source(m))`.
    pub fn pos_in_from(&self, m: Mor) -> usize {
        self.pos_in_from[m]
    }

    pub fn hom(&self, u: Ob, v: Ob) -> Vec<Mor> {
        self.mors_from[u]
            .iter()
            .copied()
            .filter(|&m| self.target[m] == v)
            .collect()
    }

    pub fn is_identity(&self, m: Mor) -> bool {
        self.identity[self.source[m]] == m
    }

    /// Discrete groupoid: n objects, identities only.
    pub fn discrete(n: usize) -> Self {
        let compose = (0..n * n)
            .map(|i| if i / n == i % n { Some(i / n) } else { None })
            .collect();
        FiniteGroupoid::from_parts(
            n,
            (0..n).collect(),
            (0..n).collect(),
            (0..n).collect(),
            (0..n).collect(),
            compose,
        )
        .expect("discrete groupoid is lawful")
    }

    /// Indiscrete (chaotic) groupoid: exactly one morphism u -> v for every
    /// ordered pair of objects. Morphism u -> v has id `u*n + v`.
    pub fn indiscrete(n: usize) -> Self {
        let nm = n * n;
        let mor = |u: Ob, v: Ob| u * n + v;
        let mut source = vec![0; nm];
        let mut target = vec![0; nm];
        for u in 0..n {
            for v in 0..n {
                source[mor(u, v)] = u;
                target[mor(u, v)] = v;
            }
        }
        let identity = (0..n).map(|u| mor(u, u)).collect();
        let inverse = (0..nm).map(|m| mor(m % n, m / n)).collect();
        let mut compose = vec![None; nm * nm];
        for u in 0..n {
            for v in 0..n {
                for w in 0..n {
                    compose[mor(v, w) * nm + mor(u, v)] = Some(mor(u, w));
                }
            }
        }
        FiniteGroupoid::from_parts(n, source, target, identity, inverse, compose)
            .expect("indiscrete groupoid is lawful")
    }

    /// One-object groupoid whose morphisms are the elements of a group.
    pub fn sigma(group: &GroupTable) -> Self {
        let n = group.order();
        let mut compose = vec![None; n * n];
        for b in 0..n {
            for a in 0..n {
                compose[b * n + a] = Some(group.mul(b, a));
            }
        }
        FiniteGroupoid::from_parts(
            1,
            vec![0; n],
            vec![0; n],
            vec![group.unit()],
            (0..n).map(|m| group.inv(m)).collect(),
            compose,
        )
        .expect("group delooping is lawful")
    }

    /// Validates `table` as a group multiplication table and returns its
    /// one-object groupoid.
    pub fn sigma_from_table(table: Vec<Vec<usize>>) -> Result<Self> {
        Ok(FiniteGroupoid::sigma(&GroupTable::from_mul_table(table)?))
    }

    /// Two objects joined by a single isomorphism (plus identities).
    /// Morphisms: 0 = id 0, 1 = id 1, 2: 0 -> 1, 3: 1 -> 0.
    pub fn interval() -> Self {
        let source = vec![0, 1, 0, 1];
        let target = vec![0, 1, 1, 0];
        let identity = vec![0, 1];
        let inverse = vec![0, 1, 3, 2];
        let mut compose = vec![None; 16];
        let mut set = |b: Mor, a: Mor, c: Mor| compose[b * 4 + a] = Some(c);
        set(0, 0, 0);
        set(1, 1, 1);
        set(2, 0, 2);
        set(1, 2, 2);
        set(3, 1, 3);
        set(0, 3, 3);
        set(3, 2, 0);
        set(2, 3, 1);
        FiniteGroupoid::from_parts(2, source, target, identity, inverse, compose)
            .expect("interval groupoid is lawful")
    }

    pub fn terminal() -> Self {
        FiniteGroupoid::discrete(1)
    }

    pub fn empty() -> Self {
        FiniteGroupoid::discrete(0)
    }
}

/// A coproduct with its injections.
pub struct Coproduct {
    pub sum: Arc<FiniteGroupoid>,
    pub left: Functor,
    pub right: Functor,
}

/// Disjoint union of groupoids; injections are valid functors.
pub fn coproduct(left: &Arc<FiniteGroupoid>, right: &Arc<FiniteGroupoid>) -> Coproduct {
    let (no_l, nm_l) = (left.n_objects(), left.n_morphisms());
    let (no_r, nm_r) = (right.n_objects(), right.n_morphisms());
    let nm = nm_l + nm_r;
    let mut source = Vec::with_capacity(nm);
    let mut target = Vec::with_capacity(nm);
    for m in left.morphisms() {
        source.push(left.source(m));
        target.push(left.target(m));
    }
    for m in right.morphisms() {
        source.push(right.source(m) + no_l);
        target.push(right.target(m) + no_l);
    }
    let mut identity = Vec::with_capacity(no_l + no_r);
    identity.extend(left.objects().map(|u| left.identity(u)));
    identity.extend(right.objects().map(|u| right.identity(u) + nm_l));
    let mut inverse = Vec::with_capacity(nm);
    inverse.extend(left.morphisms().map(|m| left.inverse(m)));
    inverse.extend(right.morphisms().map(|m| right.inverse(m) + nm_l));
    let mut compose = vec![None; nm * nm];
    for b in 0..nm_l {
        for a in 0..nm_l {
            compose[b * nm + a] = left.compose(b, a);
        }
    }
    for b in 0..nm_r {
        for a in 0..nm_r {
            compose[(b + nm_l) * nm + (a + nm_l)] = right.compose(b, a).map(|c| c + nm_l);
        }
    }
    let sum = Arc::new(
        FiniteGroupoid::from_parts(no_l + no_r, source, target, identity, inverse, compose)
            .expect("coproduct of lawful groupoids is lawful"),
    );
    let left_inj = Functor::new(
        left.clone(),
        sum.clone(),
        left.objects().collect(),
        left.morphisms().collect(),
    )
    .expect("coproduct injection is a functor");
    let right_inj = Functor::new(
        right.clone(),
        sum.clone(),
        right.objects().map(|u| u + no_l).collect(),
        right.morphisms().map(|m| m + nm_l).collect(),
    )
    .expect("coproduct injection is a functor");
    Coproduct {
        sum,
        left: left_inj,
        right: right_inj,
    }
}

/// The mediating functor out of a coproduct: agrees with `f` on the left
/// summand and with `h` on the right.
pub fn copair(cp: &Coproduct, f: &Functor, h: &Functor) -> Result<Functor> {
    if f.dom() != cp.left.dom() || h.dom() != cp.right.dom() {
        return Err(Error::Mismatch(
            "copair legs must start at the coproduct summands".into(),
        ));
    }
    if f.cod() != h.cod() {
        return Err(Error::Mismatch("copair legs must share a codomain".into()));
    }
    let no_l = cp.left.dom().n_objects();
    let nm_l = cp.left.dom().n_morphisms();
    let object_map = cp
        .sum
        .objects()
        .map(|u| {
            if u < no_l {
                f.apply_ob(u)
            } else {
                h.apply_ob(u - no_l)
            }
        })
        .collect();
    let morphism_map = cp
        .sum
        .morphisms()
        .map(|m| {
            if m < nm_l {
                f.apply_mor(m)
            } else {
                h.apply_mor(m - nm_l)
            }
        })
        .collect();
    Functor::new(cp.sum.clone(), f.cod().clone(), object_map, morphism_map)
}

/// A coslice groupoid together with its codomain projection.
///
/// Object `k` of the coslice stands for the parent morphism `object_mor[k]`
/// (the k-th morphism out of the base object); the morphism `a -> b` with id
/// `a*n + b` stands for the unique filler `b∘a⁻¹` of the triangle under the
/// base object.
pub struct Coslice {
    pub groupoid: Arc<FiniteGroupoid>,
    pub projection: Functor,
    pub object_mor: Vec<Mor>,
}

pub fn coslice(g: &Arc<FiniteGroupoid>, base: Ob) -> Coslice {
    let object_mor: Vec<Mor> = g.mors_from(base).to_vec();
    let n = object_mor.len();
    let nm = n * n;
    let mor = |a: usize, b: usize| a * n + b;
    let mut source = vec![0; nm];
    let mut target = vec![0; nm];
    for a in 0..n {
        for b in 0..n {
            source[mor(a, b)] = a;
            target[mor(a, b)] = b;
        }
    }
    let identity = (0..n).map(|a| mor(a, a)).collect();
    let inverse = (0..nm).map(|m| mor(m % n, m / n)).collect();
    let mut compose = vec![None; nm * nm];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                compose[mor(b, c) * nm + mor(a, b)] = Some(mor(a, c));
            }
        }
    }
    let groupoid = Arc::new(
        FiniteGroupoid::from_parts(n, source, target, identity, inverse, compose)
            .expect("coslice groupoid is lawful"),
    );
    let object_map = object_mor.iter().map(|&m| g.target(m)).collect();
    let morphism_map = (0..nm)
        .map(|m| {
            let (a, b) = (object_mor[m / n], object_mor[m % n]);
            g.compose(b, g.inverse(a)).expect("coslice filler composes")
        })
        .collect();
    let projection = Functor::new(groupoid.clone(), g.clone(), object_map, morphism_map)
        .expect("coslice projection is a functor");
    Coslice {
        groupoid,
        projection,
        object_mor,
    }
}

/// Precomposition with `a: u -> v`, as a functor `coslice(G, v) -> coslice(G, u)`.
pub fn precompose_functor(g: &Arc<FiniteGroupoid>, a: Mor) -> Functor {
    let (u, v) = (g.source(a), g.target(a));
    let from_v = coslice(g, v);
    let to_u = coslice(g, u);
    let n_v = from_v.object_mor.len();
    let index_in_u = |m: Mor| g.pos_in_from(m);
    let object_map: Vec<Ob> = from_v
        .object_mor
        .iter()
        .map(|&b| index_in_u(g.compose(b, a).expect("precomposition composes")))
        .collect();
    let n_u = to_u.object_mor.len();
    let morphism_map = (0..n_v * n_v)
        .map(|m| {
            let (x, y) = (object_map[m / n_v], object_map[m % n_v]);
            x * n_u + y
        })
        .collect();
    Functor::new(
        from_v.groupoid.clone(),
        to_u.groupoid.clone(),
        object_map,
        morphism_map,
    )
    .expect("precomposition is a functor")
}

/// A pullback of groupoids with its projections.
pub struct PullbackSquare {
    pub apex: Arc<FiniteGroupoid>,
    pub left: Functor,
    pub right: Functor,
}

/// Pullback of `f: A -> C` against `g: B -> C`: objects and morphisms are the
/// pairs agreeing in C, ordered lexicographically.
pub fn pullback(f: &Functor, g: &Functor) -> Result<PullbackSquare> {
    if f.cod() != g.cod() {
        return Err(Error::Mismatch("pullback legs must share a codomain".into()));
    }
    let (a, b) = (f.dom(), g.dom());
    let mut objects = Vec::new();
    for x in a.objects() {
        for y in b.objects() {
            if f.apply_ob(x) == g.apply_ob(y) {
                objects.push((x, y));
            }
        }
    }
    let ob_index = |x: Ob, y: Ob| objects.iter().position(|&p| p == (x, y)).unwrap();
    let mut mors = Vec::new();
    for m in a.morphisms() {
        for p in b.morphisms() {
            if f.apply_mor(m) == g.apply_mor(p) {
                mors.push((m, p));
            }
        }
    }
    let mor_index = |m: Mor, p: Mor| mors.iter().position(|&q| q == (m, p)).unwrap();
    let source = mors
        .iter()
        .map(|&(m, p)| ob_index(a.source(m), b.source(p)))
        .collect();
    let target = mors
        .iter()
        .map(|&(m, p)| ob_index(a.target(m), b.target(p)))
        .collect();
    let identity = objects
        .iter()
        .map(|&(x, y)| mor_index(a.identity(x), b.identity(y)))
        .collect();
    let inverse = mors
        .iter()
        .map(|&(m, p)| mor_index(a.inverse(m), b.inverse(p)))
        .collect();
    let nm = mors.len();
    let mut compose = vec![None; nm * nm];
    for (j, &(m2, p2)) in mors.iter().enumerate() {
        for (i, &(m1, p1)) in mors.iter().enumerate() {
            if let (Some(m), Some(p)) = (a.compose(m2, m1), b.compose(p2, p1)) {
                compose[j * nm + i] = Some(mor_index(m, p));
            }
        }
    }
    let apex = Arc::new(FiniteGroupoid::from_parts(
        objects.len(),
        source,
        target,
        identity,
        inverse,
        compose,
    )?);
    let left = Functor::new(
        apex.clone(),
        a.clone(),
        objects.iter().map(|&(x, _)| x).collect(),
        mors.iter().map(|&(m, _)| m).collect(),
    )?;
    let right = Functor::new(
        apex.clone(),
        b.clone(),
        objects.iter().map(|&(_, y)| y).collect(),
        mors.iter().map(|&(_, p)| p).collect(),
    )?;
    Ok(PullbackSquare { apex, left, right })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> GroupTable {
        GroupTable::cyclic(2)
    }

    #[test]
    fn discrete_counts() {
        let g = FiniteGroupoid::discrete(3);
        assert_eq!(g.n_objects(), 3);
        assert_eq!(g.n_morphisms(), 3);
        assert!(g.morphisms().all(|m| g.is_identity(m)));
    }

    #[test]
    fn indiscrete_counts() {
        // one morphism per ordered pair of objects
        let g = FiniteGroupoid::indiscrete(3);
        assert_eq!(g.n_objects(), 3);
        assert_eq!(g.n_morphisms(), 9);
        for u in g.objects() {
            for v in g.objects() {
                assert_eq!(g.hom(u, v).len(), 1);
            }
        }
    }

    #[test]
    fn sigma_z2_counts() {
        let g = FiniteGroupoid::sigma(&z2());
        assert_eq!(g.n_objects(), 1);
        assert_eq!(g.n_morphisms(), 2);
    }

    #[test]
    fn terminal_is_lawful() {
        let g = FiniteGroupoid::terminal();
        assert_eq!((g.n_objects(), g.n_morphisms()), (1, 1));
    }

    #[test]
    fn empty_groupoid_is_permitted() {
        let g = FiniteGroupoid::empty();
        assert_eq!((g.n_objects(), g.n_morphisms()), (0, 0));
    }

    fn interval_compose_flat() -> Vec<Option<Mor>> {
        let g = FiniteGroupoid::interval();
        let n = g.n_morphisms();
        (0..n * n).map(|i| g.compose(i / n, i % n)).collect()
    }

    #[test]
    fn bad_inverse_reports_inverse_law() {
        // interval groupoid, but with inverse(2) pointing at an identity
        let err = FiniteGroupoid::from_parts(
            2,
            vec![0, 1, 0, 1],
            vec![0, 1, 1, 0],
            vec![0, 1],
            vec![0, 1, 0, 2],
            interval_compose_flat(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::InverseLaw { morphism: 2, .. }));
    }

    #[test]
    fn missing_composite_is_reported() {
        // discrete(2) with the (1,1) cell deleted
        let compose = vec![Some(0), None, None, None];
        let err =
            FiniteGroupoid::from_parts(2, vec![0, 1], vec![0, 1], vec![0, 1], vec![0, 1], compose)
                .unwrap_err();
        assert!(matches!(err, Error::MissingComposite { b: 1, a: 1 }));
    }

    #[test]
    fn coproduct_of_sigma_z2_and_terminal() {
        let g = Arc::new(FiniteGroupoid::sigma(&z2()));
        let one = Arc::new(FiniteGroupoid::terminal());
        let cp = coproduct(&g, &one);
        assert_eq!(cp.sum.n_objects(), 2);
        assert_eq!(cp.sum.n_morphisms(), 3);
    }

    #[test]
    fn coproduct_with_empty_is_isomorphic() {
        let g = Arc::new(FiniteGroupoid::indiscrete(2));
        let e = Arc::new(FiniteGroupoid::empty());
        let cp = coproduct(&g, &e);
        assert!(crate::iso::are_isomorphic(&cp.sum, &g));
    }

    #[test]
    fn copair_agrees_with_legs() {
        // mediator out of G + 1 agrees with f on G and picks the image of
        // the extra point
        let g = Arc::new(FiniteGroupoid::sigma(&z2()));
        let one = Arc::new(FiniteGroupoid::terminal());
        let cp = coproduct(&g, &one);
        let k = Arc::new(FiniteGroupoid::indiscrete(2));
        let f = Functor::new(g.clone(), k.clone(), vec![0], vec![0, 0]).unwrap();
        for x in k.objects() {
            let point = Functor::new(one.clone(), k.clone(), vec![x], vec![k.identity(x)]).unwrap();
            let med = copair(&cp, &f, &point).unwrap();
            assert_eq!(Functor::compose(&med, &cp.left).unwrap(), f);
            assert_eq!(med.apply_ob(1), x);
        }
    }

    #[test]
    fn coslice_of_sigma_z2_is_indiscrete_pair() {
        let g = Arc::new(FiniteGroupoid::sigma(&z2()));
        let cs = coslice(&g, 0);
        assert!(crate::iso::are_isomorphic(
            &cs.groupoid,
            &Arc::new(FiniteGroupoid::indiscrete(2))
        ));
    }

    #[test]
    fn coslice_of_discrete_is_terminal() {
        let g = Arc::new(FiniteGroupoid::discrete(3));
        for u in g.objects() {
            let cs = coslice(&g, u);
            assert_eq!(cs.groupoid.n_objects(), 1);
            assert_eq!(cs.groupoid.n_morphisms(), 1);
        }
    }

    #[test]
    fn precompose_by_identity_is_identity_functor() {
        let g = Arc::new(FiniteGroupoid::indiscrete(3));
        let u = 1;
        let f = precompose_functor(&g, g.identity(u));
        assert_eq!(f, Functor::identity(&coslice(&g, u).groupoid));
    }

    #[test]
    fn precompose_commutes_with_projections() {
        let g = Arc::new(FiniteGroupoid::indiscrete(3));
        for a in g.morphisms() {
            let (u, v) = (g.source(a), g.target(a));
            let f = precompose_functor(&g, a);
            let pi_u = coslice(&g, u).projection;
            let pi_v = coslice(&g, v).projection;
            assert_eq!(Functor::compose(&pi_u, &f).unwrap(), pi_v);
            assert!(f.is_discrete_opfibration());
        }
    }
}
