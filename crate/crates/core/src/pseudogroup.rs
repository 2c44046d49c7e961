//! Partial bisections and the pseudogroup structure they carry.
//!
//! `PBis(G)` is an inverse monoid: multiplication restricts domains,
//! the star map is componentwise inversion, and pairwise-compatible families
//! have joins preserved by multiplication on both sides. The definitional
//! formulas for the compatibility relation (`m·n*` and `n*·m` idempotent) and
//! the natural partial order (`m = n·(m*·m)`) are authoritative here; the
//! descriptions in terms of domain agreement and restriction are re-derived
//! as theorems in the test suite, not taken as definitions.

use std::collections::HashMap;
use std::sync::Arc;

use crate::caps::Caps;
use crate::comorphism::Comorphism;
use crate::error::{Error, Result};
use crate::groupoid::{FiniteGroupoid, Mor, Ob};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialBisection {
    carrier: Arc<FiniteGroupoid>,
    /// `components[u]` is the morphism out of `u`, when `u` is in the domain.
    components: Vec<Option<Mor>>,
}

impl PartialBisection {
    pub fn new(carrier: Arc<FiniteGroupoid>, components: Vec<Option<Mor>>) -> Result<Self> {
        if components.len() != carrier.n_objects() {
            return Err(Error::PartialBisectionLaw(
                "one slot per object required".into(),
            ));
        }
        let mut hit = vec![false; carrier.n_objects()];
        for (u, slot) in components.iter().enumerate() {
            if let Some(m) = *slot {
                if m >= carrier.n_morphisms() || carrier.source(m) != u {
                    return Err(Error::PartialBisectionLaw(format!(
                        "component at object {u} does not start there"
                    )));
                }
                let t = carrier.target(m);
                if hit[t] {
                    return Err(Error::PartialBisectionLaw(format!(
                        "object action is not injective at target {t}"
                    )));
                }
                hit[t] = true;
            }
        }
        Ok(PartialBisection {
            carrier,
            components,
        })
    }

    /// The total identity bisection, the unit of `PBis`.
    pub fn unit(g: &Arc<FiniteGroupoid>) -> Self {
        PartialBisection {
            carrier: g.clone(),
            components: g.objects().map(|u| Some(g.identity(u))).collect(),
        }
    }

    /// The empty partial bisection, the least element.
    pub fn bottom(g: &Arc<FiniteGroupoid>) -> Self {
        PartialBisection {
            carrier: g.clone(),
            components: vec![None; g.n_objects()],
        }
    }

    /// `[a]`: the partial bisection whose sole component is `a`.
    pub fn singleton(g: &Arc<FiniteGroupoid>, a: Mor) -> Self {
        let mut components = vec![None; g.n_objects()];
        components[g.source(a)] = Some(a);
        PartialBisection {
            carrier: g.clone(),
            components,
        }
    }

    /// The unit restricted to a subset of objects; the idempotents of `PBis`.
    pub fn idempotent_on(g: &Arc<FiniteGroupoid>, objects: &[Ob]) -> Self {
        let mut components = vec![None; g.n_objects()];
        for &u in objects {
            components[u] = Some(g.identity(u));
        }
        PartialBisection {
            carrier: g.clone(),
            components,
        }
    }

    pub fn carrier(&self) -> &Arc<FiniteGroupoid> {
        &self.carrier
    }

    pub fn components(&self) -> &[Option<Mor>] {
        &self.components
    }

    pub fn component(&self, u: Ob) -> Option<Mor> {
        self.components[u]
    }

    /// s(α), ascending.
    pub fn domain(&self) -> Vec<Ob> {
        self.carrier
            .objects()
            .filter(|&u| self.components[u].is_some())
            .collect()
    }

    /// t(α), ascending.
    pub fn codomain(&self) -> Vec<Ob> {
        let mut t: Vec<Ob> = self
            .components
            .iter()
            .flatten()
            .map(|&m| self.carrier.target(m))
            .collect();
        t.sort_unstable();
        t
    }

    pub fn object_action(&self, u: Ob) -> Option<Ob> {
        self.components[u].map(|m| self.carrier.target(m))
    }

    /// `(β·α)_u = β_{ᾱ(u)} ∘ α_u` wherever both sides are defined.
    pub fn multiply(b: &PartialBisection, a: &PartialBisection) -> Result<PartialBisection> {
        if a.carrier != b.carrier {
            return Err(Error::Mismatch(
                "partial bisections live on different groupoids".into(),
            ));
        }
        let g = &a.carrier;
        let components = g
            .objects()
            .map(|u| {
                let am = a.components[u]?;
                let bm = b.components[g.target(am)]?;
                Some(g.compose(bm, am).expect("components compose"))
            })
            .collect();
        Ok(PartialBisection {
            carrier: a.carrier.clone(),
            components,
        })
    }

    /// The generalized inverse: `(α*)_{ᾱ(u)} = (α_u)⁻¹`.
    pub fn star(&self) -> PartialBisection {
        let g = &self.carrier;
        let mut components = vec![None; g.n_objects()];
        for u in g.objects() {
            if let Some(m) = self.components[u] {
                components[g.target(m)] = Some(g.inverse(m));
            }
        }
        PartialBisection {
            carrier: self.carrier.clone(),
            components,
        }
    }

    pub fn is_idempotent(&self) -> bool {
        PartialBisection::multiply(self, self).map(|p| p == *self).unwrap_or(false)
    }

    /// Compatibility: `α·β*` and `β*·α` are both idempotent.
    pub fn compatible(a: &PartialBisection, b: &PartialBisection) -> Result<bool> {
        let bs = b.star();
        Ok(PartialBisection::multiply(a, &bs)?.is_idempotent()
            && PartialBisection::multiply(&bs, a)?.is_idempotent())
    }

    /// The natural partial order of the inverse monoid: `m ≤ n` iff
    /// `m = n·(m*·m)`.
    pub fn natural_leq(m: &PartialBisection, n: &PartialBisection) -> Result<bool> {
        let e = PartialBisection::multiply(&m.star(), m)?;
        Ok(PartialBisection::multiply(n, &e)? == *m)
    }

    /// Restriction order: defined on a smaller domain and agreeing there.
    /// A theorem says this coincides with `natural_leq`; kept separate so the
    /// coincidence stays checkable.
    pub fn restriction_leq(m: &PartialBisection, n: &PartialBisection) -> bool {
        m.carrier == n.carrier
            && m.components
                .iter()
                .zip(&n.components)
                .all(|(a, b)| a.is_none() || a == b)
    }
}

/// Join of a pairwise-compatible family. The empty join is the bottom
/// element, which is why the carrier must be passed explicitly.
pub fn join(g: &Arc<FiniteGroupoid>, family: &[PartialBisection]) -> Result<PartialBisection> {
    for (i, a) in family.iter().enumerate() {
        if a.carrier() != g {
            return Err(Error::Mismatch("join family on the wrong groupoid".into()));
        }
        for (j, b) in family.iter().enumerate().skip(i + 1) {
            if !PartialBisection::compatible(a, b)? {
                return Err(Error::IncompatiblePair { i, j });
            }
        }
    }
    let mut components = vec![None; g.n_objects()];
    for a in family {
        for u in g.objects() {
            if let Some(m) = a.component(u) {
                components[u] = Some(m);
            }
        }
    }
    PartialBisection::new(g.clone(), components)
}

/// All partial bisections, ordered lexicographically by component vector
/// with "undefined" sorting before every morphism.
pub fn enumerate_partial_bisections(
    g: &Arc<FiniteGroupoid>,
    caps: &Caps,
) -> Result<Vec<PartialBisection>> {
    caps.check_groupoid(g)?;
    let mut out = Vec::new();
    let mut components: Vec<Option<Mor>> = Vec::with_capacity(g.n_objects());
    let mut hit = vec![false; g.n_objects()];
    fn go(
        g: &Arc<FiniteGroupoid>,
        components: &mut Vec<Option<Mor>>,
        hit: &mut Vec<bool>,
        out: &mut Vec<PartialBisection>,
    ) {
        let u = components.len();
        if u == g.n_objects() {
            out.push(PartialBisection {
                carrier: g.clone(),
                components: components.clone(),
            });
            return;
        }
        components.push(None);
        go(g, components, hit, out);
        components.pop();
        for &m in g.mors_from(u) {
            let t = g.target(m);
            if !hit[t] {
                hit[t] = true;
                components.push(Some(m));
                go(g, components, hit, out);
                components.pop();
                hit[t] = false;
            }
        }
    }
    go(g, &mut components, &mut hit, &mut out);
    Ok(out)
}

/// An inverse monoid given by explicit tables. Also usable for abstract
/// monoids that do not come from partial bisections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InverseMonoidView {
    pub n: usize,
    /// Row-major: `mul[b * n + a]` is `b·a`.
    pub mul: Vec<usize>,
    pub unit: usize,
    pub star: Vec<usize>,
}

impl InverseMonoidView {
    pub fn mul(&self, b: usize, a: usize) -> usize {
        self.mul[b * self.n + a]
    }

    pub fn is_idempotent(&self, m: usize) -> bool {
        self.mul(m, m) == m
    }

    pub fn natural_leq(&self, m: usize, n: usize) -> bool {
        self.mul(n, self.mul(self.star[m], m)) == m
    }

    /// Associativity, unit, and the generalized-inverse law with the
    /// uniqueness of each `m*` checked by brute force.
    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        if self.mul.len() != n * n || self.star.len() != n || self.unit >= n {
            return Err(Error::InverseMonoidLaw("malformed tables".into()));
        }
        if self.mul.iter().any(|&x| x >= n) || self.star.iter().any(|&x| x >= n) {
            return Err(Error::InverseMonoidLaw("entry out of range".into()));
        }
        for c in 0..n {
            for b in 0..n {
                for a in 0..n {
                    if self.mul(self.mul(c, b), a) != self.mul(c, self.mul(b, a)) {
                        return Err(Error::InverseMonoidLaw(format!(
                            "associativity fails at ({c}, {b}, {a})"
                        )));
                    }
                }
            }
        }
        for a in 0..n {
            if self.mul(self.unit, a) != a || self.mul(a, self.unit) != a {
                return Err(Error::InverseMonoidLaw(format!("unit fails at {a}")));
            }
        }
        for m in 0..n {
            let generalized: Vec<usize> = (0..n)
                .filter(|&x| {
                    self.mul(self.mul(m, x), m) == m && self.mul(self.mul(x, m), x) == x
                })
                .collect();
            if generalized != vec![self.star[m]] {
                return Err(Error::InverseMonoidLaw(format!(
                    "element {m} has {} generalized inverses",
                    generalized.len()
                )));
            }
        }
        Ok(())
    }

    pub fn idempotents(&self) -> Vec<usize> {
        (0..self.n).filter(|&m| self.is_idempotent(m)).collect()
    }

    /// True iff the idempotents under the natural order form a Boolean
    /// lattice isomorphic to the power set of its atoms.
    pub fn is_complete_atomic(&self) -> bool {
        let e = self.idempotents();
        let Some(&bottom) = e.iter().find(|&&b| e.iter().all(|&x| self.natural_leq(b, x)))
        else {
            return false;
        };
        let atoms: Vec<usize> = e
            .iter()
            .copied()
            .filter(|&a| {
                a != bottom
                    && e.iter().all(|&x| {
                        !(self.natural_leq(x, a) && x != a && x != bottom)
                    })
            })
            .collect();
        if atoms.len() >= usize::BITS as usize || e.len() != 1usize << atoms.len() {
            return false;
        }
        let mask = |x: usize| -> usize {
            atoms
                .iter()
                .enumerate()
                .filter(|&(_, &a)| self.natural_leq(a, x))
                .fold(0usize, |acc, (i, _)| acc | (1 << i))
        };
        let masks: Vec<usize> = e.iter().map(|&x| mask(x)).collect();
        let mut seen = vec![false; 1 << atoms.len()];
        for &m in &masks {
            if seen[m] {
                return false;
            }
            seen[m] = true;
        }
        for (i, &x) in e.iter().enumerate() {
            for (j, &y) in e.iter().enumerate() {
                if self.natural_leq(x, y) != (masks[i] & !masks[j] == 0) {
                    return false;
                }
            }
        }
        true
    }
}

/// `PBis(G)` materialized: the canonical element list plus its tables.
pub struct PBisMonoid {
    pub carrier: Arc<FiniteGroupoid>,
    pub elements: Vec<PartialBisection>,
    pub view: InverseMonoidView,
    index: HashMap<Vec<Option<Mor>>, usize>,
}

impl PBisMonoid {
    pub fn index_of(&self, p: &PartialBisection) -> Option<usize> {
        self.index.get(p.components()).copied()
    }

    pub fn unit_index(&self) -> usize {
        self.view.unit
    }

    pub fn bottom_index(&self) -> usize {
        self.index_of(&PartialBisection::bottom(&self.carrier))
            .expect("bottom is enumerated")
    }

    /// Indices of the singleton partial bisections `[a]`, per morphism.
    pub fn singleton_indices(&self) -> Vec<usize> {
        self.carrier
            .morphisms()
            .map(|a| {
                self.index_of(&PartialBisection::singleton(&self.carrier, a))
                    .expect("singletons are enumerated")
            })
            .collect()
    }

    /// Join of a set of element indices, if the family is compatible.
    pub fn join_index(&self, family: &[usize]) -> Result<usize> {
        let fam: Vec<PartialBisection> =
            family.iter().map(|&i| self.elements[i].clone()).collect();
        let j = join(&self.carrier, &fam)?;
        Ok(self.index_of(&j).expect("joins are enumerated"))
    }
}

/// Enumerates and tabulates `PBis(g)`, validating the inverse-monoid laws.
pub fn pbis_materialize(g: &Arc<FiniteGroupoid>, caps: &Caps, cap: usize) -> Result<PBisMonoid> {
    let elements = enumerate_partial_bisections(g, caps)?;
    if elements.len() > cap {
        return Err(Error::CapExceeded {
            what: "partial bisection monoid order".into(),
            value: elements.len(),
            cap,
        });
    }
    let index: HashMap<Vec<Option<Mor>>, usize> = elements
        .iter()
        .enumerate()
        .map(|(i, p)| (p.components().to_vec(), i))
        .collect();
    let n = elements.len();
    let mut mul = vec![0usize; n * n];
    for b in 0..n {
        for a in 0..n {
            let p = PartialBisection::multiply(&elements[b], &elements[a])?;
            mul[b * n + a] = index[p.components()];
        }
    }
    let star = elements
        .iter()
        .map(|p| index[p.star().components()])
        .collect();
    let unit = index[PartialBisection::unit(g).components()];
    let view = InverseMonoidView { n, mul, unit, star };
    view.validate()?;
    Ok(PBisMonoid {
        carrier: g.clone(),
        elements,
        view,
        index,
    })
}

/// Multiplication must distribute over binary compatible joins on both
/// sides; checked exhaustively over the materialized monoid.
pub fn check_join_distributivity(pb: &PBisMonoid) -> Result<()> {
    let n = pb.view.n;
    for i in 0..n {
        for j in i..n {
            if !PartialBisection::compatible(&pb.elements[i], &pb.elements[j])? {
                continue;
            }
            let ij = pb.join_index(&[i, j])?;
            for m in 0..n {
                let left = pb.join_index(&[pb.view.mul(m, i), pb.view.mul(m, j)])?;
                if left != pb.view.mul(m, ij) {
                    return Err(Error::PreservationLaw {
                        law: "left distributivity".into(),
                        detail: format!("m={m}, join of ({i}, {j})"),
                    });
                }
                let right = pb.join_index(&[pb.view.mul(i, m), pb.view.mul(j, m)])?;
                if right != pb.view.mul(ij, m) {
                    return Err(Error::PreservationLaw {
                        law: "right distributivity".into(),
                        detail: format!("m={m}, join of ({i}, {j})"),
                    });
                }
            }
        }
    }
    Ok(())
}

/// Pushforward of a partial bisection along a comorphism: domains pull back
/// along the object map, components are lifts.
pub fn pbis_map(f: &Comorphism, alpha: &PartialBisection) -> Result<PartialBisection> {
    if alpha.carrier() != f.dom() {
        return Err(Error::Mismatch(
            "partial bisection must live on the comorphism's domain".into(),
        ));
    }
    let components = f
        .cod()
        .objects()
        .map(|u| alpha.component(f.apply_ob(u)).map(|a| f.lift(u, a)))
        .collect();
    PartialBisection::new(f.cod().clone(), components)
}

/// The index-level monoid map induced by `f` between materialized monoids.
pub fn pbis_map_indices(f: &Comorphism, pg: &PBisMonoid, ph: &PBisMonoid) -> Result<Vec<usize>> {
    pg.elements
        .iter()
        .map(|alpha| {
            let image = pbis_map(f, alpha)?;
            ph.index_of(&image)
                .ok_or_else(|| Error::Mismatch("image not enumerated".into()))
        })
        .collect()
}

/// Checks that `phi` (an index map `pg -> ph`) preserves the unit, all
/// binary products, the bottom element, and binary compatible joins. Finite
/// compatible joins reduce to binary ones, so this is the full preservation
/// property; for very small monoids all subsets are checked as well.
pub fn verify_preservation(pg: &PBisMonoid, ph: &PBisMonoid, phi: &[usize]) -> Result<()> {
    let n = pg.view.n;
    if phi.len() != n || phi.iter().any(|&i| i >= ph.view.n) {
        return Err(Error::PreservationLaw {
            law: "totality".into(),
            detail: "index map has wrong shape".into(),
        });
    }
    if phi[pg.unit_index()] != ph.unit_index() {
        return Err(Error::PreservationLaw {
            law: "unit".into(),
            detail: "unit not preserved".into(),
        });
    }
    if phi[pg.bottom_index()] != ph.bottom_index() {
        return Err(Error::PreservationLaw {
            law: "empty join".into(),
            detail: "bottom not preserved".into(),
        });
    }
    for b in 0..n {
        for a in 0..n {
            if phi[pg.view.mul(b, a)] != ph.view.mul(phi[b], phi[a]) {
                return Err(Error::PreservationLaw {
                    law: "product".into(),
                    detail: format!("at ({b}, {a})"),
                });
            }
        }
    }
    let check_family = |family: &[usize]| -> Result<()> {
        let images: Vec<usize> = family.iter().map(|&i| phi[i]).collect();
        let joined = pg.join_index(family)?;
        let image_join = ph.join_index(&images).map_err(|_| Error::PreservationLaw {
            law: "compatible join".into(),
            detail: format!("images of {family:?} are not compatible"),
        })?;
        if phi[joined] != image_join {
            return Err(Error::PreservationLaw {
                law: "compatible join".into(),
                detail: format!("join of {family:?} not preserved"),
            });
        }
        Ok(())
    };
    for i in 0..n {
        for j in i + 1..n {
            if PartialBisection::compatible(&pg.elements[i], &pg.elements[j])? {
                check_family(&[i, j])?;
            }
        }
    }
    if n <= 12 {
        'subsets: for mask in 0usize..(1 << n) {
            let family: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            for (x, &i) in family.iter().enumerate() {
                for &j in &family[x + 1..] {
                    if !PartialBisection::compatible(&pg.elements[i], &pg.elements[j])? {
                        continue 'subsets;
                    }
                }
            }
            check_family(&family)?;
        }
    }
    Ok(())
}

/// Rebuilds the comorphism behind a preservation map: the object map comes
/// from where the identity singletons land, the lifts from the images of the
/// morphism singletons.
pub fn reconstruct_comorphism(
    pg: &PBisMonoid,
    ph: &PBisMonoid,
    phi: &[usize],
) -> Result<Comorphism> {
    verify_preservation(pg, ph, phi)?;
    let (g, h) = (&pg.carrier, &ph.carrier);
    let mut object_map = vec![usize::MAX; h.n_objects()];
    for u in g.objects() {
        let image = &ph.elements[phi[pg
            .index_of(&PartialBisection::singleton(g, g.identity(u)))
            .expect("identity singleton enumerated")]];
        for v in image.domain() {
            assert_eq!(
                object_map[v],
                usize::MAX,
                "identity singleton images must partition the objects"
            );
            object_map[v] = u;
        }
    }
    assert!(
        object_map.iter().all(|&w| w != usize::MAX),
        "identity singleton images must cover the objects"
    );
    let lifts = h
        .objects()
        .map(|u| {
            g.mors_from(object_map[u])
                .iter()
                .map(|&a| {
                    let image = &ph.elements[phi[pg
                        .index_of(&PartialBisection::singleton(g, a))
                        .expect("singleton enumerated")]];
                    image
                        .component(u)
                        .expect("singleton image defined over the fibre")
                })
                .collect()
        })
        .collect();
    Comorphism::new(g.clone(), h.clone(), object_map, lifts)
}

/// All unit-, product-, and compatible-join-preserving maps `pg -> ph`, as
/// index vectors in canonical order. Join preservation pins every element to
/// the join of its singletons, so the search runs over atom images only.
pub fn enumerate_preservation_maps(pg: &PBisMonoid, ph: &PBisMonoid) -> Result<Vec<Vec<usize>>> {
    let g = &pg.carrier;
    let singletons = pg.singleton_indices();
    let n_atoms = g.n_morphisms();
    let mut image = vec![usize::MAX; n_atoms];
    let mut found = Vec::new();
    let mut stack_err = None;
    extend_atoms(
        pg,
        ph,
        &singletons,
        &mut image,
        0,
        &mut found,
        &mut stack_err,
    );
    if let Some(e) = stack_err {
        return Err(e);
    }
    Ok(found)
}

fn extend_atoms(
    pg: &PBisMonoid,
    ph: &PBisMonoid,
    singletons: &[usize],
    image: &mut Vec<usize>,
    next: usize,
    found: &mut Vec<Vec<usize>>,
    stack_err: &mut Option<Error>,
) {
    if stack_err.is_some() {
        return;
    }
    if next == image.len() {
        match complete_map(pg, ph, singletons, image) {
            Ok(Some(phi)) => found.push(phi),
            Ok(None) => {}
            Err(e) => *stack_err = Some(e),
        }
        return;
    }
    for cand in 0..ph.view.n {
        image[next] = cand;
        if atoms_consistent(pg, ph, singletons, image, next) {
            extend_atoms(pg, ph, singletons, image, next + 1, found, stack_err);
        }
    }
    image[next] = usize::MAX;
}

fn atoms_consistent(
    pg: &PBisMonoid,
    ph: &PBisMonoid,
    singletons: &[usize],
    image: &[usize],
    just: usize,
) -> bool {
    let g = &pg.carrier;
    let bottom_g = pg.bottom_index();
    let bottom_h = ph.bottom_index();
    for b in 0..=just {
        for a in 0..=just {
            let prod = pg.view.mul(singletons[b], singletons[a]);
            let image_prod = ph.view.mul(image[b], image[a]);
            if prod == bottom_g {
                if image_prod != bottom_h {
                    return false;
                }
            } else {
                // the product of composable singletons is again a singleton
                let c = g.compose(b, a).expect("non-bottom product composes");
                if c <= just && image_prod != image[c] {
                    return false;
                }
            }
        }
    }
    true
}

/// Extends atom images to a full index map by joins, then verifies all
/// preservation laws; `None` means the atom assignment does not extend.
fn complete_map(
    pg: &PBisMonoid,
    ph: &PBisMonoid,
    singletons: &[usize],
    image: &[usize],
) -> Result<Option<Vec<usize>>> {
    debug_assert!(singletons.iter().enumerate().all(|(a, &i)| {
        pg.index_of(&PartialBisection::singleton(&pg.carrier, a)) == Some(i)
    }));
    let mut phi = vec![usize::MAX; pg.view.n];
    for (i, alpha) in pg.elements.iter().enumerate() {
        // atom positions are morphism ids
        let parts: Vec<usize> = alpha
            .components()
            .iter()
            .flatten()
            .map(|&a| image[a])
            .collect();
        match ph.join_index(&parts) {
            Ok(j) => phi[i] = j,
            Err(Error::IncompatiblePair { .. }) => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    match verify_preservation(pg, ph, &phi) {
        Ok(()) => Ok(Some(phi)),
        Err(Error::PreservationLaw { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Closed forms used as independent oracles in tests: `2^n` for discrete
/// groupoids, `Σ_k C(n,k)² k!` for indiscrete ones, `|G|+1` for one-object
/// groupoids.
pub fn indiscrete_pbis_count(n: usize) -> usize {
    let choose = |n: usize, k: usize| -> usize {
        let mut c = 1usize;
        for i in 0..k {
            c = c * (n - i) / (i + 1);
        }
        c
    };
    let factorial = |k: usize| (1..=k).product::<usize>().max(1);
    (0..=n).map(|k| choose(n, k).pow(2) * factorial(k)).sum()
}
