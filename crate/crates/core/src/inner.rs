//! Desk-scale verification harness.
//!
//! A `Universe` finitizes "for every map out of G": a set of groupoids closed
//! under the constructions the correspondence proofs lean on (coslices,
//! coproducts with the point and the interval, factorization intermediates),
//! with *all* comorphisms (or functors) among them as arrows. Families of
//! automorphisms indexed by the arrows out of the base are then enumerated
//! under the naturality squares, and the counts compared against the
//! bisections (or partial bisections) of the base.
//!
//! A family found natural over a finite universe is evidence, not proof; the
//! reports say "natural over this universe" and nothing stronger.

use std::collections::HashMap;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use serde::Serialize;

use crate::bisection::{conjugation, enumerate_bisections, pushforward, Bisection};
use crate::caps::Caps;
use crate::comorphism::{enumerate_comorphisms, factorize, lower_star, upper_star, Comorphism};
use crate::error::{Error, Result};
use crate::functor::{enumerate_functors, Functor};
use crate::groupoid::{coproduct, coslice, FiniteGroupoid, Mor, Ob};
use crate::iso::find_isomorphism;
use crate::pseudogroup::{enumerate_partial_bisections, PartialBisection};

// ---------------------------------------------------------------------------
// partial automorphisms

/// An isomorphism between two full subgroupoids of the same carrier, stored
/// as partial object and morphism maps.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialAutomorphism {
    carrier: Arc<FiniteGroupoid>,
    object_map: Vec<Option<Ob>>,
    morphism_map: Vec<Option<Mor>>,
}

impl PartialAutomorphism {
    pub fn new(
        carrier: Arc<FiniteGroupoid>,
        object_map: Vec<Option<Ob>>,
        morphism_map: Vec<Option<Mor>>,
    ) -> Result<Self> {
        let pa = PartialAutomorphism {
            carrier,
            object_map,
            morphism_map,
        };
        pa.validate()?;
        Ok(pa)
    }

    fn validate(&self) -> Result<()> {
        let g = &self.carrier;
        let err = |msg: String| Err(Error::PartialAutomorphismLaw(msg));
        if self.object_map.len() != g.n_objects() || self.morphism_map.len() != g.n_morphisms() {
            return err("maps must have one slot per object and morphism".into());
        }
        let defined = |u: Ob| self.object_map[u].is_some();
        let mut hit = vec![false; g.n_objects()];
        for u in g.objects() {
            if let Some(v) = self.object_map[u] {
                if v >= g.n_objects() || hit[v] {
                    return err(format!("object map not injective at {u}"));
                }
                hit[v] = true;
            }
        }
        let mut image_count = 0usize;
        for m in g.morphisms() {
            let (u, v) = (g.source(m), g.target(m));
            let inside = defined(u) && defined(v);
            match self.morphism_map[m] {
                None if inside => return err(format!("morphism {m} inside the domain unmapped")),
                Some(_) if !inside => {
                    return err(format!("morphism {m} outside the domain mapped"))
                }
                Some(fm) => {
                    if fm >= g.n_morphisms()
                        || g.source(fm) != self.object_map[u].unwrap()
                        || g.target(fm) != self.object_map[v].unwrap()
                    {
                        return err(format!("morphism {m} maps outside its hom-set"));
                    }
                    image_count += 1;
                }
                None => {}
            }
        }
        for u in g.objects() {
            if defined(u) && self.morphism_map[g.identity(u)] != Some(g.identity(self.object_map[u].unwrap())) {
                return err(format!("identity of {u} not preserved"));
            }
        }
        for a in g.morphisms() {
            if self.morphism_map[a].is_none() {
                continue;
            }
            for &b in g.mors_from(g.target(a)) {
                if self.morphism_map[b].is_none() {
                    continue;
                }
                let ba = g.compose(b, a).unwrap();
                let lhs = g.compose(self.morphism_map[b].unwrap(), self.morphism_map[a].unwrap());
                if lhs != self.morphism_map[ba] {
                    return err(format!("composition not preserved at ({b}, {a})"));
                }
            }
        }
        // injective into the full subgroupoid on the image, and onto it
        let target_mors = g
            .morphisms()
            .filter(|&m| hit[g.source(m)] && hit[g.target(m)])
            .count();
        let mut seen = vec![false; g.n_morphisms()];
        for m in g.morphisms() {
            if let Some(fm) = self.morphism_map[m] {
                if seen[fm] {
                    return err(format!("morphism map not injective at {m}"));
                }
                seen[fm] = true;
            }
        }
        if image_count != target_mors {
            return err("morphism map is not onto the image subgroupoid".into());
        }
        Ok(())
    }

    pub fn identity(g: &Arc<FiniteGroupoid>) -> Self {
        PartialAutomorphism {
            carrier: g.clone(),
            object_map: g.objects().map(Some).collect(),
            morphism_map: g.morphisms().map(Some).collect(),
        }
    }

    pub fn empty(g: &Arc<FiniteGroupoid>) -> Self {
        PartialAutomorphism {
            carrier: g.clone(),
            object_map: vec![None; g.n_objects()],
            morphism_map: vec![None; g.n_morphisms()],
        }
    }

    pub fn carrier(&self) -> &Arc<FiniteGroupoid> {
        &self.carrier
    }

    pub fn in_domain(&self, u: Ob) -> bool {
        self.object_map[u].is_some()
    }

    pub fn apply_ob(&self, u: Ob) -> Option<Ob> {
        self.object_map[u]
    }

    pub fn apply_mor(&self, m: Mor) -> Option<Mor> {
        self.morphism_map[m]
    }

    pub fn domain_objects(&self) -> Vec<Ob> {
        self.carrier
            .objects()
            .filter(|&u| self.in_domain(u))
            .collect()
    }

    /// `psi∘phi`, defined on the full subgroupoid where `phi` lands in the
    /// domain of `psi`.
    pub fn compose(psi: &PartialAutomorphism, phi: &PartialAutomorphism) -> Result<Self> {
        if psi.carrier != phi.carrier {
            return Err(Error::Mismatch(
                "partial automorphisms on different carriers".into(),
            ));
        }
        let g = &phi.carrier;
        let object_map: Vec<Option<Ob>> = g
            .objects()
            .map(|u| phi.object_map[u].and_then(|v| psi.object_map[v]))
            .collect();
        let morphism_map = g
            .morphisms()
            .map(|m| {
                let inside = object_map[g.source(m)].is_some() && object_map[g.target(m)].is_some();
                if inside {
                    psi.morphism_map[phi.morphism_map[m].unwrap()]
                } else {
                    None
                }
            })
            .collect();
        PartialAutomorphism::new(phi.carrier.clone(), object_map, morphism_map)
    }
}

/// Conjugation by a partial bisection, as a partial automorphism from the
/// full subgroupoid on its domain to the one on its codomain.
pub fn partial_conjugation(alpha: &PartialBisection) -> PartialAutomorphism {
    let g = alpha.carrier();
    let object_map: Vec<Option<Ob>> = g.objects().map(|u| alpha.object_action(u)).collect();
    let morphism_map = g
        .morphisms()
        .map(|m| {
            let (u, v) = (g.source(m), g.target(m));
            let (au, av) = (alpha.component(u)?, alpha.component(v)?);
            let t = g.compose(m, g.inverse(au)).expect("conjugation composes");
            Some(g.compose(av, t).expect("conjugation composes"))
        })
        .collect();
    PartialAutomorphism::new(g.clone(), object_map, morphism_map)
        .expect("partial conjugation is a partial automorphism")
}

/// All partial automorphisms of `g`, ordered lexicographically by object map
/// (undefined first) then morphism map.
pub fn enumerate_partial_automorphisms(g: &Arc<FiniteGroupoid>) -> Vec<PartialAutomorphism> {
    let mut out = Vec::new();
    let mut object_map: Vec<Option<Ob>> = Vec::with_capacity(g.n_objects());
    let mut hit = vec![false; g.n_objects()];
    fn objects(
        g: &Arc<FiniteGroupoid>,
        object_map: &mut Vec<Option<Ob>>,
        hit: &mut Vec<bool>,
        out: &mut Vec<PartialAutomorphism>,
    ) {
        let u = object_map.len();
        if u == g.n_objects() {
            morphisms(g, object_map, out);
            return;
        }
        object_map.push(None);
        objects(g, object_map, hit, out);
        object_map.pop();
        for v in g.objects() {
            if !hit[v] {
                hit[v] = true;
                object_map.push(Some(v));
                objects(g, object_map, hit, out);
                object_map.pop();
                hit[v] = false;
            }
        }
    }
    fn morphisms(
        g: &Arc<FiniteGroupoid>,
        object_map: &[Option<Ob>],
        out: &mut Vec<PartialAutomorphism>,
    ) {
        let inside: Vec<Mor> = g
            .morphisms()
            .filter(|&m| {
                object_map[g.source(m)].is_some() && object_map[g.target(m)].is_some()
            })
            .collect();
        let mut morphism_map: Vec<Option<Mor>> = vec![None; g.n_morphisms()];
        let mut used = vec![false; g.n_morphisms()];
        fn go(
            g: &Arc<FiniteGroupoid>,
            object_map: &[Option<Ob>],
            inside: &[Mor],
            morphism_map: &mut Vec<Option<Mor>>,
            used: &mut Vec<bool>,
            next: usize,
            out: &mut Vec<PartialAutomorphism>,
        ) {
            if next == inside.len() {
                let candidate = PartialAutomorphism {
                    carrier: g.clone(),
                    object_map: object_map.to_vec(),
                    morphism_map: morphism_map.clone(),
                };
                if candidate.validate().is_ok() {
                    out.push(candidate);
                }
                return;
            }
            let m = inside[next];
            let (fu, fv) = (
                object_map[g.source(m)].unwrap(),
                object_map[g.target(m)].unwrap(),
            );
            let candidates: Vec<Mor> = if g.is_identity(m) {
                vec![g.identity(fu)]
            } else {
                g.hom(fu, fv)
            };
            for fm in candidates {
                if used[fm] {
                    continue;
                }
                morphism_map[m] = Some(fm);
                used[fm] = true;
                let ok = inside[..=next].iter().all(|&a| {
                    inside[..=next].iter().all(|&b| match g.compose(b, a) {
                        Some(ba) => match (morphism_map[b], morphism_map[a], morphism_map[ba]) {
                            (Some(ib), Some(ia), Some(iba)) => g.compose(ib, ia) == Some(iba),
                            _ => true,
                        },
                        None => true,
                    })
                });
                if ok {
                    go(g, object_map, inside, morphism_map, used, next + 1, out);
                }
                used[fm] = false;
                morphism_map[m] = None;
            }
        }
        go(g, object_map, &inside, &mut morphism_map, &mut used, 0, out);
    }
    objects(g, &mut object_map, &mut hit, &mut out);
    out
}

/// The commuting-square condition for a comorphism `f` between partial
/// automorphisms `top` (on `dom(f)`) and `bottom` (on `cod(f)`):
/// (i) domains correspond along the object map and the object actions agree;
/// (ii) lifts of mapped morphisms agree with mapped lifts.
pub fn check_partial_square(
    f: &Comorphism,
    top: &PartialAutomorphism,
    bottom: &PartialAutomorphism,
) -> Result<bool> {
    if top.carrier() != f.dom() || bottom.carrier() != f.cod() {
        return Err(Error::Mismatch(
            "partial square: automorphisms must live on the comorphism's ends".into(),
        ));
    }
    for u in f.cod().objects() {
        if bottom.in_domain(u) != top.in_domain(f.apply_ob(u)) {
            return Ok(false);
        }
        if bottom.in_domain(u)
            && top.apply_ob(f.apply_ob(u)) != Some(f.apply_ob(bottom.apply_ob(u).unwrap()))
        {
            return Ok(false);
        }
    }
    for u in f.cod().objects() {
        if !bottom.in_domain(u) {
            continue;
        }
        for &a in f.dom().mors_from(f.apply_ob(u)) {
            if top.apply_mor(a).is_none() {
                continue;
            }
            let lhs = bottom.apply_mor(f.lift(u, a));
            let rhs = f.lift(bottom.apply_ob(u).unwrap(), top.apply_mor(a).unwrap());
            if lhs != Some(rhs) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// universes

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UniverseMode {
    /// Arrows are comorphisms.
    Comorphisms,
    /// Arrows are homomorphisms (functors).
    Functors,
}

/// Which closure rules were cut short by a cap.
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct ClosureReport {
    pub coslices_truncated: bool,
    pub coproducts_truncated: bool,
    pub factorizations_truncated: bool,
    pub arrows_truncated: bool,
}

impl ClosureReport {
    pub fn complete(&self) -> bool {
        !(self.coslices_truncated
            || self.coproducts_truncated
            || self.factorizations_truncated
            || self.arrows_truncated)
    }
}

/// Where to find the coslice of a base object inside the universe, and how
/// to read its objects as base morphisms.
#[derive(Clone, Debug)]
pub struct CoslicePoint {
    pub groupoid: usize,
    pub arrow: usize,
    pub identity_object: Ob,
    pub object_mor: Vec<Mor>,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct UniverseStats {
    pub groupoids: usize,
    pub arrows: usize,
    pub arrows_out_of_base: usize,
    pub complete: bool,
}

/// Lookup key for a comorphism arrow: (dom index, cod index, tables).
type ComorKey = (usize, usize, Vec<Ob>, Vec<Vec<Mor>>);
/// Lookup key for a functor arrow: (dom index, cod index, tables).
type FunctorKey = (usize, usize, Vec<Ob>, Vec<Mor>);

pub struct Universe {
    mode: UniverseMode,
    caps: Caps,
    groupoids: Vec<Arc<FiniteGroupoid>>,
    arrows_co: Vec<Comorphism>,
    arrows_fn: Vec<Functor>,
    dom_of: Vec<usize>,
    cod_of: Vec<usize>,
    by_dom: Vec<Vec<usize>>,
    co_index: HashMap<ComorKey, usize>,
    fn_index: HashMap<FunctorKey, usize>,
    coslices: Vec<CoslicePoint>,
    pub closure: ClosureReport,
}

impl Universe {
    pub fn mode(&self) -> UniverseMode {
        self.mode
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    pub fn groupoids(&self) -> &[Arc<FiniteGroupoid>] {
        &self.groupoids
    }

    /// The base groupoid is always entry 0.
    pub fn base(&self) -> &Arc<FiniteGroupoid> {
        &self.groupoids[0]
    }

    pub fn n_arrows(&self) -> usize {
        match self.mode {
            UniverseMode::Comorphisms => self.arrows_co.len(),
            UniverseMode::Functors => self.arrows_fn.len(),
        }
    }

    pub fn comorphism(&self, id: usize) -> &Comorphism {
        &self.arrows_co[id]
    }

    pub fn functor_arrow(&self, id: usize) -> &Functor {
        &self.arrows_fn[id]
    }

    pub fn dom_index(&self, id: usize) -> usize {
        self.dom_of[id]
    }

    pub fn cod_index(&self, id: usize) -> usize {
        self.cod_of[id]
    }

    pub fn arrows_from(&self, gidx: usize) -> &[usize] {
        &self.by_dom[gidx]
    }

    /// Arrow ids out of the base, ascending; the positions index family
    /// assignments.
    pub fn out_arrows(&self) -> &[usize] {
        &self.by_dom[0]
    }

    pub fn coslice_points(&self) -> &[CoslicePoint] {
        &self.coslices
    }

    pub fn stats(&self) -> UniverseStats {
        UniverseStats {
            groupoids: self.groupoids.len(),
            arrows: self.n_arrows(),
            arrows_out_of_base: self.out_arrows().len(),
            complete: self.closure.complete(),
        }
    }

    fn find_comorphism(&self, dom: usize, cod: usize, c: &Comorphism) -> Option<usize> {
        self.co_index
            .get(&(dom, cod, c.object_map().to_vec(), c.lift_table().to_vec()))
            .copied()
    }

    fn find_functor(&self, dom: usize, cod: usize, f: &Functor) -> Option<usize> {
        self.fn_index
            .get(&(
                dom,
                cod,
                f.object_map().to_vec(),
                f.morphism_map().to_vec(),
            ))
            .copied()
    }

    /// Id of `g ∘ f` given arrow ids; errors when the arrow set was
    /// truncated.
    fn compose_ids(&self, g: usize, f: usize) -> Result<usize> {
        let (dom, cod) = (self.dom_of[f], self.cod_of[g]);
        let missing = || {
            Error::UniverseIncomplete(format!(
                "composite of arrows {g} and {f} is not in the arrow set"
            ))
        };
        match self.mode {
            UniverseMode::Comorphisms => {
                let c = Comorphism::compose(&self.arrows_co[g], &self.arrows_co[f])?;
                self.find_comorphism(dom, cod, &c).ok_or_else(missing)
            }
            UniverseMode::Functors => {
                let c = Functor::compose(&self.arrows_fn[g], &self.arrows_fn[f])?;
                self.find_functor(dom, cod, &c).ok_or_else(missing)
            }
        }
    }

    /// Position of the identity arrow of the base within `out_arrows`.
    fn identity_out_position(&self) -> Result<usize> {
        let found = match self.mode {
            UniverseMode::Comorphisms => {
                let id = Comorphism::identity(self.base());
                self.find_comorphism(0, 0, &id)
            }
            UniverseMode::Functors => {
                let id = Functor::identity(self.base());
                self.find_functor(0, 0, &id)
            }
        };
        let id_arrow =
            found.ok_or_else(|| Error::UniverseIncomplete("identity arrow missing".into()))?;
        self.out_arrows()
            .iter()
            .position(|&a| a == id_arrow)
            .ok_or_else(|| Error::UniverseIncomplete("identity arrow not out of base".into()))
    }
}

/// Builds the universe around `base`. Closure rules run in a fixed order:
/// coslices of the base (kept exact, their objects are read back during
/// extraction), coproducts with the point and the interval, coslices of
/// everything to a fixpoint, factorization intermediates to a fixpoint
/// (comorphism mode), then all arrows between all pairs. Later rules
/// deduplicate up to isomorphism; every rule honours the caps and reports
/// truncation instead of failing.
pub fn build_universe(
    base: &Arc<FiniteGroupoid>,
    mode: UniverseMode,
    caps: &Caps,
) -> Result<Universe> {
    caps.check_groupoid(base)?;
    let mut groupoids: Vec<Arc<FiniteGroupoid>> = vec![base.clone()];
    let mut closure = ClosureReport::default();

    let admit = |caps: &Caps, groupoids: &[Arc<FiniteGroupoid>], g: &FiniteGroupoid| -> bool {
        caps.admits_groupoid(g) && groupoids.len() < caps.max_universe_groupoids
    };
    let find_structural =
        |groupoids: &[Arc<FiniteGroupoid>], g: &FiniteGroupoid| -> Option<usize> {
            groupoids.iter().position(|h| h.as_ref() == g)
        };
    let find_iso = |groupoids: &[Arc<FiniteGroupoid>], g: &Arc<FiniteGroupoid>| -> Option<usize> {
        groupoids.iter().position(|h| find_isomorphism(h, g).is_some())
    };

    // coslices of the base, exact
    let mut coslices = Vec::new();
    if mode == UniverseMode::Comorphisms {
        for u in base.objects() {
            let cs = coslice(base, u);
            let idx = match find_structural(&groupoids, &cs.groupoid) {
                Some(i) => i,
                None if admit(caps, &groupoids, &cs.groupoid) => {
                    groupoids.push(cs.groupoid.clone());
                    groupoids.len() - 1
                }
                None => {
                    closure.coslices_truncated = true;
                    continue;
                }
            };
            coslices.push(CoslicePoint {
                groupoid: idx,
                arrow: usize::MAX,
                identity_object: base.pos_in_from(base.identity(u)),
                object_mor: cs.object_mor,
            });
        }
    }

    // coproducts with the point and with the interval
    for extra in [FiniteGroupoid::terminal(), FiniteGroupoid::interval()] {
        let sum = coproduct(base, &Arc::new(extra)).sum;
        if find_iso(&groupoids, &sum).is_none() {
            if admit(caps, &groupoids, &sum) {
                groupoids.push(sum);
            } else {
                closure.coproducts_truncated = true;
            }
        }
    }

    // coslices of everything, to a fixpoint, up to isomorphism
    if mode == UniverseMode::Comorphisms {
        let mut next = 0;
        while next < groupoids.len() {
            let g = groupoids[next].clone();
            for u in g.objects() {
                let cs = coslice(&g, u);
                if find_iso(&groupoids, &cs.groupoid).is_none() {
                    if admit(caps, &groupoids, &cs.groupoid) {
                        groupoids.push(cs.groupoid);
                    } else {
                        closure.coslices_truncated = true;
                    }
                }
            }
            next += 1;
        }
    }

    // factorization intermediates of the arrows out of the base, to a
    // fixpoint; the uniqueness argument only ever factorizes those
    if mode == UniverseMode::Comorphisms {
        let mut done = 0usize;
        loop {
            let snapshot = groupoids.len();
            for j in done..snapshot {
                let gj = groupoids[j].clone();
                for f in enumerate_comorphisms(base, &gj, caps)? {
                    let mid = factorize(&f).mid;
                    if find_iso(&groupoids, &mid).is_none() {
                        if admit(caps, &groupoids, &mid) {
                            groupoids.push(mid);
                        } else {
                            closure.factorizations_truncated = true;
                        }
                    }
                }
            }
            done = snapshot;
            if groupoids.len() == snapshot {
                break;
            }
        }
    }

    // all arrows between all ordered pairs
    let mut arrows_co = Vec::new();
    let mut arrows_fn = Vec::new();
    let mut dom_of = Vec::new();
    let mut cod_of = Vec::new();
    'pairs: for i in 0..groupoids.len() {
        for j in 0..groupoids.len() {
            match mode {
                UniverseMode::Comorphisms => {
                    for c in enumerate_comorphisms(&groupoids[i], &groupoids[j], caps)? {
                        if arrows_co.len() >= caps.max_universe_arrows {
                            closure.arrows_truncated = true;
                            break 'pairs;
                        }
                        arrows_co.push(c);
                        dom_of.push(i);
                        cod_of.push(j);
                    }
                }
                UniverseMode::Functors => {
                    for f in enumerate_functors(&groupoids[i], &groupoids[j], caps)? {
                        if arrows_fn.len() >= caps.max_universe_arrows {
                            closure.arrows_truncated = true;
                            break 'pairs;
                        }
                        arrows_fn.push(f);
                        dom_of.push(i);
                        cod_of.push(j);
                    }
                }
            }
        }
    }

    let mut by_dom = vec![Vec::new(); groupoids.len()];
    for (id, &d) in dom_of.iter().enumerate() {
        by_dom[d].push(id);
    }
    let co_index = arrows_co
        .iter()
        .enumerate()
        .map(|(id, c)| {
            (
                (
                    dom_of[id],
                    cod_of[id],
                    c.object_map().to_vec(),
                    c.lift_table().to_vec(),
                ),
                id,
            )
        })
        .collect();
    let fn_index = arrows_fn
        .iter()
        .enumerate()
        .map(|(id, f)| {
            (
                (
                    dom_of[id],
                    cod_of[id],
                    f.object_map().to_vec(),
                    f.morphism_map().to_vec(),
                ),
                id,
            )
        })
        .collect();

    let mut universe = Universe {
        mode,
        caps: *caps,
        groupoids,
        arrows_co,
        arrows_fn,
        dom_of,
        cod_of,
        by_dom,
        co_index,
        fn_index,
        coslices,
        closure,
    };

    // locate the arrow induced by each base coslice projection
    if mode == UniverseMode::Comorphisms {
        for k in 0..universe.coslices.len() {
            let point = &universe.coslices[k];
            let cs_arc = universe.groupoids[point.groupoid].clone();
            let n = point.object_mor.len();
            let object_map: Vec<Ob> =
                point.object_mor.iter().map(|&m| base.target(m)).collect();
            let morphism_map: Vec<Mor> = (0..n * n)
                .map(|m| {
                    let (a, b) = (point.object_mor[m / n], point.object_mor[m % n]);
                    base.compose(b, base.inverse(a)).expect("filler composes")
                })
                .collect();
            let projection = Functor::new(cs_arc, base.clone(), object_map, morphism_map)
                .expect("coslice projection is a functor");
            let arrow = upper_star(&projection).expect("projection is an opfibration");
            universe.coslices[k].arrow = universe
                .find_comorphism(0, universe.coslices[k].groupoid, &arrow)
                .ok_or_else(|| {
                    Error::UniverseIncomplete("coslice projection arrow missing".into())
                })?;
        }
    }

    Ok(universe)
}

// ---------------------------------------------------------------------------
// family search shared by all three modes

/// A family of automorphism choices, one per arrow out of the base,
/// satisfying every naturality square of the universe. `beta[p]` indexes
/// into the context's automorphism list for the codomain of the p-th
/// out-arrow.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct InnerFamily {
    pub beta: Vec<usize>,
}

/// Naturality squares, precomputed as (out-position of f, arrow g,
/// out-position of g∘f).
fn build_squares(u: &Universe) -> Result<Vec<(usize, usize, usize)>> {
    let out = u.out_arrows();
    let mut out_pos = HashMap::new();
    for (p, &id) in out.iter().enumerate() {
        out_pos.insert(id, p);
    }
    let mut squares = Vec::new();
    for (p, &f) in out.iter().enumerate() {
        for &g in u.arrows_from(u.cod_index(f)) {
            let h = u.compose_ids(g, f)?;
            let q = *out_pos
                .get(&h)
                .ok_or_else(|| Error::UniverseIncomplete("composite not out of base".into()))?;
            squares.push((p, g, q));
        }
    }
    Ok(squares)
}

/// Backtracking over per-position candidates, pruned by the square
/// predicate. `order` lists positions in assignment order; squares are
/// checked as soon as both their positions are assigned.
fn search_families(
    n_positions: usize,
    candidates: &[Vec<usize>],
    order: &[usize],
    squares: &[(usize, usize, usize)],
    square_ok: &dyn Fn(usize, usize, usize, usize, usize) -> bool,
) -> Vec<InnerFamily> {
    let mut step_of = vec![0usize; n_positions];
    for (s, &p) in order.iter().enumerate() {
        step_of[p] = s;
    }
    let mut by_step: Vec<Vec<(usize, usize, usize)>> = vec![Vec::new(); n_positions.max(1)];
    for &(p, g, q) in squares {
        by_step[step_of[p].max(step_of[q])].push((p, g, q));
    }
    let mut chosen = vec![usize::MAX; n_positions];
    let mut found = Vec::new();
    fn step(
        s: usize,
        order: &[usize],
        candidates: &[Vec<usize>],
        by_step: &[Vec<(usize, usize, usize)>],
        square_ok: &dyn Fn(usize, usize, usize, usize, usize) -> bool,
        chosen: &mut Vec<usize>,
        found: &mut Vec<InnerFamily>,
    ) {
        if s == order.len() {
            found.push(InnerFamily {
                beta: chosen.clone(),
            });
            return;
        }
        let p = order[s];
        for c in 0..candidates[p].len() {
            chosen[p] = c;
            let ok = by_step[s]
                .iter()
                .all(|&(a, g, b)| square_ok(a, chosen[a], g, b, chosen[b]));
            if ok {
                step(s + 1, order, candidates, by_step, square_ok, chosen, found);
            }
        }
        chosen[p] = usize::MAX;
    }
    if n_positions == 0 {
        found.push(InnerFamily { beta: Vec::new() });
        return found;
    }
    step(
        0,
        order,
        candidates,
        &by_step,
        square_ok,
        &mut chosen,
        &mut found,
    );
    found.sort();
    found
}

fn processing_order(n: usize, first: usize, seed: Option<u64>) -> Vec<usize> {
    let mut rest: Vec<usize> = (0..n).filter(|&p| p != first).collect();
    if let Some(s) = seed {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(s);
        rest.shuffle(&mut rng);
    }
    let mut order = vec![first];
    order.extend(rest);
    order
}

fn require_complete(u: &Universe) -> Result<()> {
    if !u.closure.complete() {
        return Err(Error::UniverseIncomplete(
            "closure was truncated by caps; raise them to enumerate families".into(),
        ));
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// comorphism mode: invertible automorphisms, represented by functors

/// Precomputed data for family enumeration over a comorphism universe.
/// Automorphisms of each groupoid are represented by their underlying
/// invertible functors; the squares are checked as comorphism equalities
/// against the induced maps.
pub struct InnerContext<'a> {
    u: &'a Universe,
    /// Invertible functors per universe groupoid, canonical order.
    auts: Vec<Vec<Functor>>,
    squares: Vec<(usize, usize, usize)>,
    identity_pos: usize,
    /// Interned composite ids: left[g][a] for g∘(aut a of dom g) and
    /// right[g][b] for (aut b of cod g)∘g.
    left_tab: Vec<Vec<u32>>,
    right_tab: Vec<Vec<u32>>,
}

impl<'a> InnerContext<'a> {
    pub fn new(u: &'a Universe) -> Result<Self> {
        if u.mode() != UniverseMode::Comorphisms {
            return Err(Error::Precondition(
                "inner context needs a comorphism universe".into(),
            ));
        }
        require_complete(u)?;
        let mut auts = Vec::new();
        let mut lowered = Vec::new();
        for g in u.groupoids() {
            let a: Vec<Functor> = enumerate_functors(g, g, u.caps())?
                .into_iter()
                .filter(|f| f.is_invertible())
                .collect();
            let l: Vec<Comorphism> = a
                .iter()
                .map(|f| lower_star(f).expect("invertible"))
                .collect();
            auts.push(a);
            lowered.push(l);
        }
        let squares = build_squares(u)?;
        let identity_pos = u.identity_out_position()?;

        let mut intern: HashMap<ComorKey, u32> = HashMap::new();
        let mut key_of = |dom: usize, cod: usize, c: &Comorphism| -> u32 {
            let key = (dom, cod, c.object_map().to_vec(), c.lift_table().to_vec());
            let next = intern.len() as u32;
            *intern.entry(key).or_insert(next)
        };
        let mut left_tab = vec![Vec::new(); u.n_arrows()];
        let mut right_tab = vec![Vec::new(); u.n_arrows()];
        let mut needed: Vec<bool> = vec![false; u.n_arrows()];
        for &(_, g, _) in &squares {
            needed[g] = true;
        }
        for g in 0..u.n_arrows() {
            if !needed[g] {
                continue;
            }
            let (d, c) = (u.dom_index(g), u.cod_index(g));
            let arrow = u.comorphism(g);
            left_tab[g] = lowered[d]
                .iter()
                .map(|low| {
                    let comp = Comorphism::compose(arrow, low).expect("composable");
                    key_of(d, c, &comp)
                })
                .collect();
            right_tab[g] = lowered[c]
                .iter()
                .map(|low| {
                    let comp = Comorphism::compose(low, arrow).expect("composable");
                    key_of(d, c, &comp)
                })
                .collect();
        }
        Ok(InnerContext {
            u,
            auts,
            squares,
            identity_pos,
            left_tab,
            right_tab,
        })
    }

    pub fn universe(&self) -> &Universe {
        self.u
    }

    pub fn automorphisms(&self, gidx: usize) -> &[Functor] {
        &self.auts[gidx]
    }

    /// The invertible functor standing for `beta_f` at out-position `p`.
    pub fn beta(&self, fam: &InnerFamily, p: usize) -> &Functor {
        let cod = self.u.cod_index(self.u.out_arrows()[p]);
        &self.auts[cod][fam.beta[p]]
    }

    fn square_ok(&self, p: usize, cp: usize, g: usize, q: usize, cq: usize) -> bool {
        let _ = (p, q);
        self.left_tab[g][cp] == self.right_tab[g][cq]
    }

    /// All families natural over the universe, canonically ordered. The
    /// optional seed only permutes the internal search order; the result is
    /// independent of it.
    pub fn enumerate(&self, seed: Option<u64>) -> Vec<InnerFamily> {
        let out = self.u.out_arrows();
        let candidates: Vec<Vec<usize>> = out
            .iter()
            .map(|&f| (0..self.auts[self.u.cod_index(f)].len()).collect())
            .collect();
        let order = processing_order(out.len(), self.identity_pos, seed);
        search_families(
            out.len(),
            &candidates,
            &order,
            &self.squares,
            &|p, cp, g, q, cq| self.square_ok(p, cp, g, q, cq),
        )
    }

    /// Violated squares of a family, as (arrow of f, arrow of g) pairs.
    pub fn naturality_violations(&self, fam: &InnerFamily) -> Vec<(usize, usize)> {
        self.squares
            .iter()
            .filter(|&&(p, g, q)| !self.square_ok(p, fam.beta[p], g, q, fam.beta[q]))
            .map(|&(p, g, _)| (self.u.out_arrows()[p], g))
            .collect()
    }

    /// The family of conjugations by the pushforwards of a bisection.
    pub fn conjugation_family(&self, alpha: &Bisection) -> Result<InnerFamily> {
        if alpha.carrier() != self.u.base() {
            return Err(Error::Mismatch("bisection must live on the base".into()));
        }
        let beta = self
            .u
            .out_arrows()
            .iter()
            .map(|&f| {
                let arrow = self.u.comorphism(f);
                let pushed = pushforward(arrow, alpha)?;
                let c = conjugation(&pushed);
                let cod = self.u.cod_index(f);
                self.auts[cod]
                    .iter()
                    .position(|a| a == &c)
                    .ok_or_else(|| Error::Mismatch("conjugation not in automorphism list".into()))
            })
            .collect::<Result<Vec<usize>>>()?;
        Ok(InnerFamily { beta })
    }

    /// Reads the bisection back out of a family: the component at `u` is
    /// where the family's automorphism at the coslice arrow sends the
    /// identity object.
    pub fn extract_bisection(&self, fam: &InnerFamily) -> Result<Bisection> {
        let base = self.u.base();
        let points = self.u.coslice_points();
        if points.len() != base.n_objects() {
            return Err(Error::UniverseIncomplete(
                "universe lacks the base coslices needed for extraction".into(),
            ));
        }
        let out = self.u.out_arrows();
        let components = points
            .iter()
            .map(|point| {
                let p = out
                    .iter()
                    .position(|&a| a == point.arrow)
                    .ok_or_else(|| Error::UniverseIncomplete("coslice arrow missing".into()))?;
                let beta = self.beta(fam, p);
                Ok(point.object_mor[beta.apply_ob(point.identity_object)])
            })
            .collect::<Result<Vec<Mor>>>()?;
        Bisection::new(base.clone(), components)
    }

    /// Pointwise composition of families.
    pub fn multiply(&self, f: &InnerFamily, g: &InnerFamily) -> Result<InnerFamily> {
        let beta = self
            .u
            .out_arrows()
            .iter()
            .enumerate()
            .map(|(p, &arrow)| {
                let cod = self.u.cod_index(arrow);
                let composed =
                    Functor::compose(&self.auts[cod][f.beta[p]], &self.auts[cod][g.beta[p]])?;
                self.auts[cod]
                    .iter()
                    .position(|a| a == &composed)
                    .ok_or_else(|| Error::Mismatch("automorphisms not closed".into()))
            })
            .collect::<Result<Vec<usize>>>()?;
        Ok(InnerFamily { beta })
    }

    pub fn identity_family(&self) -> InnerFamily {
        let beta = self
            .u
            .out_arrows()
            .iter()
            .map(|&f| {
                let cod = self.u.cod_index(f);
                self.auts[cod]
                    .iter()
                    .position(|a| a == &Functor::identity(&self.u.groupoids()[cod]))
                    .expect("identity is enumerated")
            })
            .collect();
        InnerFamily { beta }
    }
}

// ---------------------------------------------------------------------------
// functor mode

/// Family enumeration over a functor universe; automorphisms are invertible
/// endofunctors and squares are plain functor equalities.
pub struct FunctorContext<'a> {
    u: &'a Universe,
    auts: Vec<Vec<Functor>>,
    squares: Vec<(usize, usize, usize)>,
    identity_pos: usize,
    left_tab: Vec<Vec<u32>>,
    right_tab: Vec<Vec<u32>>,
}

impl<'a> FunctorContext<'a> {
    pub fn new(u: &'a Universe) -> Result<Self> {
        if u.mode() != UniverseMode::Functors {
            return Err(Error::Precondition(
                "functor context needs a functor universe".into(),
            ));
        }
        require_complete(u)?;
        let mut auts = Vec::new();
        for g in u.groupoids() {
            let a: Vec<Functor> = enumerate_functors(g, g, u.caps())?
                .into_iter()
                .filter(|f| f.is_invertible())
                .collect();
            auts.push(a);
        }
        let squares = build_squares(u)?;
        let identity_pos = u.identity_out_position()?;

        let mut intern: HashMap<FunctorKey, u32> = HashMap::new();
        let mut key_of = |dom: usize, cod: usize, f: &Functor| -> u32 {
            let key = (
                dom,
                cod,
                f.object_map().to_vec(),
                f.morphism_map().to_vec(),
            );
            let next = intern.len() as u32;
            *intern.entry(key).or_insert(next)
        };
        let mut left_tab = vec![Vec::new(); u.n_arrows()];
        let mut right_tab = vec![Vec::new(); u.n_arrows()];
        let mut needed: Vec<bool> = vec![false; u.n_arrows()];
        for &(_, g, _) in &squares {
            needed[g] = true;
        }
        for g in 0..u.n_arrows() {
            if !needed[g] {
                continue;
            }
            let (d, c) = (u.dom_index(g), u.cod_index(g));
            let arrow = u.functor_arrow(g);
            left_tab[g] = auts[d]
                .iter()
                .map(|a| key_of(d, c, &Functor::compose(arrow, a).expect("composable")))
                .collect();
            right_tab[g] = auts[c]
                .iter()
                .map(|b| key_of(d, c, &Functor::compose(b, arrow).expect("composable")))
                .collect();
        }
        Ok(FunctorContext {
            u,
            auts,
            squares,
            identity_pos,
            left_tab,
            right_tab,
        })
    }

    pub fn enumerate(&self, seed: Option<u64>) -> Vec<InnerFamily> {
        let out = self.u.out_arrows();
        let candidates: Vec<Vec<usize>> = out
            .iter()
            .map(|&f| (0..self.auts[self.u.cod_index(f)].len()).collect())
            .collect();
        let order = processing_order(out.len(), self.identity_pos, seed);
        search_families(
            out.len(),
            &candidates,
            &order,
            &self.squares,
            &|_, cp, g, _, cq| self.left_tab[g][cp] == self.right_tab[g][cq],
        )
    }

    pub fn identity_family(&self) -> InnerFamily {
        let beta = self
            .u
            .out_arrows()
            .iter()
            .map(|&f| {
                let cod = self.u.cod_index(f);
                self.auts[cod]
                    .iter()
                    .position(|a| a == &Functor::identity(&self.u.groupoids()[cod]))
                    .expect("identity is enumerated")
            })
            .collect();
        InnerFamily { beta }
    }
}

// ---------------------------------------------------------------------------
// partial mode

/// Family enumeration where the automorphisms are partial, over a comorphism
/// universe; squares are the two-condition commuting squares of partial
/// automorphisms against a comorphism.
pub struct PartialContext<'a> {
    u: &'a Universe,
    pautos: Vec<Vec<PartialAutomorphism>>,
    squares: Vec<(usize, usize, usize)>,
    identity_pos: usize,
    /// square_tab[g][top][bottom]
    square_tab: Vec<Vec<Vec<bool>>>,
}

impl<'a> PartialContext<'a> {
    pub fn new(u: &'a Universe) -> Result<Self> {
        if u.mode() != UniverseMode::Comorphisms {
            return Err(Error::Precondition(
                "partial context needs a comorphism universe".into(),
            ));
        }
        require_complete(u)?;
        let pautos: Vec<Vec<PartialAutomorphism>> = u
            .groupoids()
            .iter()
            .map(enumerate_partial_automorphisms)
            .collect();
        let squares = build_squares(u)?;
        let identity_pos = u.identity_out_position()?;
        let mut needed: Vec<bool> = vec![false; u.n_arrows()];
        for &(_, g, _) in &squares {
            needed[g] = true;
        }
        let mut square_tab = vec![Vec::new(); u.n_arrows()];
        for g in 0..u.n_arrows() {
            if !needed[g] {
                continue;
            }
            let arrow = u.comorphism(g);
            let (d, c) = (u.dom_index(g), u.cod_index(g));
            square_tab[g] = pautos[d]
                .iter()
                .map(|top| {
                    pautos[c]
                        .iter()
                        .map(|bottom| {
                            check_partial_square(arrow, top, bottom).expect("carriers line up")
                        })
                        .collect()
                })
                .collect();
        }
        Ok(PartialContext {
            u,
            pautos,
            squares,
            identity_pos,
            square_tab,
        })
    }

    pub fn partial_automorphisms(&self, gidx: usize) -> &[PartialAutomorphism] {
        &self.pautos[gidx]
    }

    pub fn beta(&self, fam: &InnerFamily, p: usize) -> &PartialAutomorphism {
        let cod = self.u.cod_index(self.u.out_arrows()[p]);
        &self.pautos[cod][fam.beta[p]]
    }

    pub fn enumerate(&self, seed: Option<u64>) -> Vec<InnerFamily> {
        let out = self.u.out_arrows();
        let candidates: Vec<Vec<usize>> = out
            .iter()
            .map(|&f| (0..self.pautos[self.u.cod_index(f)].len()).collect())
            .collect();
        let order = processing_order(out.len(), self.identity_pos, seed);
        search_families(
            out.len(),
            &candidates,
            &order,
            &self.squares,
            &|_, cp, g, _, cq| self.square_tab[g][cp][cq],
        )
    }

    /// The family of partial conjugations by the pushforwards of a partial
    /// bisection.
    pub fn conjugation_family(&self, alpha: &PartialBisection) -> Result<InnerFamily> {
        if alpha.carrier() != self.u.base() {
            return Err(Error::Mismatch(
                "partial bisection must live on the base".into(),
            ));
        }
        let beta = self
            .u
            .out_arrows()
            .iter()
            .map(|&f| {
                let arrow = self.u.comorphism(f);
                let pushed = crate::pseudogroup::pbis_map(arrow, alpha)?;
                let c = partial_conjugation(&pushed);
                let cod = self.u.cod_index(f);
                self.pautos[cod]
                    .iter()
                    .position(|a| a == &c)
                    .ok_or_else(|| Error::Mismatch("conjugation not enumerated".into()))
            })
            .collect::<Result<Vec<usize>>>()?;
        Ok(InnerFamily { beta })
    }

    /// Reads the partial bisection back out of a family: defined at `u`
    /// exactly when the coslice automorphism is defined at the identity
    /// object.
    pub fn extract_partial_bisection(&self, fam: &InnerFamily) -> Result<PartialBisection> {
        let base = self.u.base();
        let points = self.u.coslice_points();
        if points.len() != base.n_objects() {
            return Err(Error::UniverseIncomplete(
                "universe lacks the base coslices needed for extraction".into(),
            ));
        }
        let out = self.u.out_arrows();
        let components = points
            .iter()
            .map(|point| {
                let p = out
                    .iter()
                    .position(|&a| a == point.arrow)
                    .ok_or_else(|| Error::UniverseIncomplete("coslice arrow missing".into()))?;
                let beta = self.beta(fam, p);
                Ok(beta
                    .apply_ob(point.identity_object)
                    .map(|x| point.object_mor[x]))
            })
            .collect::<Result<Vec<Option<Mor>>>>()?;
        PartialBisection::new(base.clone(), components)
    }

    /// Pointwise composition of families of partial automorphisms.
    pub fn multiply(&self, f: &InnerFamily, g: &InnerFamily) -> Result<InnerFamily> {
        let beta = self
            .u
            .out_arrows()
            .iter()
            .enumerate()
            .map(|(p, &arrow)| {
                let cod = self.u.cod_index(arrow);
                let composed = PartialAutomorphism::compose(
                    &self.pautos[cod][f.beta[p]],
                    &self.pautos[cod][g.beta[p]],
                )?;
                self.pautos[cod]
                    .iter()
                    .position(|a| a == &composed)
                    .ok_or_else(|| Error::Mismatch("partial automorphisms not closed".into()))
            })
            .collect::<Result<Vec<usize>>>()?;
        Ok(InnerFamily { beta })
    }
}

// ---------------------------------------------------------------------------
// reports

#[derive(Clone, Debug, Serialize)]
pub struct TheoremOneReport {
    pub universe: UniverseStats,
    pub bisections: usize,
    pub families: usize,
    pub extraction_round_trip: bool,
    pub group_isomorphic: bool,
    pub family_components: Vec<Vec<Mor>>,
    pub pass: bool,
}

/// Enumerates natural families over the comorphism universe of `g` and
/// compares them with the bisections: the counts must agree, extraction must
/// invert the conjugation-family construction, and pointwise family
/// composition must transport to bisection multiplication.
pub fn verify_theorem1(
    g: &Arc<FiniteGroupoid>,
    caps: &Caps,
    seed: Option<u64>,
) -> Result<TheoremOneReport> {
    let u = build_universe(g, UniverseMode::Comorphisms, caps)?;
    let ctx = InnerContext::new(&u)?;
    let bisections = enumerate_bisections(g, caps)?;
    let families = ctx.enumerate(seed);

    let mut extraction_round_trip = true;
    for alpha in &bisections {
        let fam = ctx.conjugation_family(alpha)?;
        if !families.contains(&fam) || &ctx.extract_bisection(&fam)? != alpha {
            extraction_round_trip = false;
        }
    }
    let mut extracted = Vec::new();
    for fam in &families {
        let alpha = ctx.extract_bisection(fam)?;
        if ctx.conjugation_family(&alpha)? != *fam {
            extraction_round_trip = false;
        }
        extracted.push(alpha);
    }

    let mut group_isomorphic = families.len() == bisections.len();
    for (i, a) in extracted.iter().enumerate() {
        for b in extracted.iter().skip(i + 1) {
            if a == b {
                group_isomorphic = false;
            }
        }
    }
    if group_isomorphic {
        for (i, fi) in families.iter().enumerate() {
            for (j, fj) in families.iter().enumerate() {
                let composed = ctx.multiply(fi, fj)?;
                let transported = Bisection::multiply(&extracted[i], &extracted[j])?;
                if ctx.extract_bisection(&composed)? != transported {
                    group_isomorphic = false;
                }
            }
        }
    }

    let pass = families.len() == bisections.len() && extraction_round_trip && group_isomorphic;
    Ok(TheoremOneReport {
        universe: u.stats(),
        bisections: bisections.len(),
        families: families.len(),
        extraction_round_trip,
        group_isomorphic,
        family_components: extracted.iter().map(|b| b.components().to_vec()).collect(),
        pass,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PropOneReport {
    pub universe: UniverseStats,
    pub families: usize,
    pub identity_only: bool,
    pub pass: bool,
}

/// Enumerates natural families over the functor universe of `g`; only the
/// identity family should survive.
pub fn verify_prop1(
    g: &Arc<FiniteGroupoid>,
    caps: &Caps,
    seed: Option<u64>,
) -> Result<PropOneReport> {
    let u = build_universe(g, UniverseMode::Functors, caps)?;
    let ctx = FunctorContext::new(&u)?;
    let families = ctx.enumerate(seed);
    let identity_only = families.len() == 1 && families[0] == ctx.identity_family();
    Ok(PropOneReport {
        universe: u.stats(),
        families: families.len(),
        identity_only,
        pass: identity_only,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PartialReport {
    pub universe: UniverseStats,
    pub partial_bisections: usize,
    pub families: usize,
    pub extraction_round_trip: bool,
    pub monoid_isomorphic: bool,
    pub pass: bool,
}

/// Enumerates partial-automorphism families over the comorphism universe of
/// `g` and compares them with the partial bisections, including the monoid
/// structure under pointwise composition.
pub fn verify_partial(
    g: &Arc<FiniteGroupoid>,
    caps: &Caps,
    seed: Option<u64>,
) -> Result<PartialReport> {
    let u = build_universe(g, UniverseMode::Comorphisms, caps)?;
    let ctx = PartialContext::new(&u)?;
    let pbis = enumerate_partial_bisections(g, caps)?;
    let families = ctx.enumerate(seed);

    let mut extraction_round_trip = true;
    for alpha in &pbis {
        let fam = ctx.conjugation_family(alpha)?;
        if !families.contains(&fam) || &ctx.extract_partial_bisection(&fam)? != alpha {
            extraction_round_trip = false;
        }
    }
    let mut extracted = Vec::new();
    for fam in &families {
        let alpha = ctx.extract_partial_bisection(fam)?;
        if ctx.conjugation_family(&alpha)? != *fam {
            extraction_round_trip = false;
        }
        extracted.push(alpha);
    }

    let mut monoid_isomorphic = families.len() == pbis.len();
    for (i, a) in extracted.iter().enumerate() {
        for b in extracted.iter().skip(i + 1) {
            if a == b {
                monoid_isomorphic = false;
            }
        }
    }
    if monoid_isomorphic {
        for (i, fi) in families.iter().enumerate() {
            for (j, fj) in families.iter().enumerate() {
                let composed = ctx.multiply(fi, fj)?;
                let transported = PartialBisection::multiply(&extracted[i], &extracted[j])?;
                if ctx.extract_partial_bisection(&composed)? != transported {
                    monoid_isomorphic = false;
                }
            }
        }
    }

    let pass = families.len() == pbis.len() && extraction_round_trip && monoid_isomorphic;
    Ok(PartialReport {
        universe: u.stats(),
        partial_bisections: pbis.len(),
        families: families.len(),
        extraction_round_trip,
        monoid_isomorphic,
        pass,
    })
}
