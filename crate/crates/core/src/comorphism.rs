//! Comorphisms (cofunctors) between finite groupoids.
//!
//! A comorphism `f: G ⇝ H` sends objects of H backwards to objects of G and
//! lifts morphisms forwards: for each H-object `u` and each G-morphism
//! `a` out of `f(u)`, a lift `f(a)_u` out of `u` in H. Three axioms tie the
//! two directions together:
//!
//! (i)   the object map sends the lift's target back to `a`'s target;
//! (ii)  identities lift to identities;
//! (iii) lifting commutes with composition.
//!
//! Lift tables are stored flat, keyed by (object, morphism-position), with
//! morphisms pre-grouped by source in the groupoid itself; axiom checking is
//! the hot loop of every enumeration built on top.

use std::sync::Arc;

use crate::caps::Caps;
use crate::error::{ComorphismAxiom, Error, Result};
use crate::functor::Functor;
use crate::groupoid::{FiniteGroupoid, Mor, Ob};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Comorphism {
    dom: Arc<FiniteGroupoid>,
    cod: Arc<FiniteGroupoid>,
    /// cod-objects to dom-objects.
    object_map: Vec<Ob>,
    /// `lifts[u]` is parallel to `dom.mors_from(object_map[u])`.
    lifts: Vec<Vec<Mor>>,
}

fn axiom_err(axiom: ComorphismAxiom, object: Ob, a: Option<Mor>, b: Option<Mor>) -> Error {
    Error::ComorphismAxiom {
        axiom,
        object,
        a,
        b,
    }
}

impl Comorphism {
    /// Validates a lift table against the comorphism axioms; the first
    /// violated axiom is reported with its witnesses.
    pub fn new(
        dom: Arc<FiniteGroupoid>,
        cod: Arc<FiniteGroupoid>,
        object_map: Vec<Ob>,
        lifts: Vec<Vec<Mor>>,
    ) -> Result<Self> {
        if object_map.len() != cod.n_objects() || lifts.len() != cod.n_objects() {
            return Err(Error::MalformedTable(
                "comorphism tables must cover every codomain object".into(),
            ));
        }
        if object_map.iter().any(|&w| w >= dom.n_objects()) {
            return Err(Error::MalformedTable(
                "comorphism object map out of range".into(),
            ));
        }
        for u in cod.objects() {
            let from = dom.mors_from(object_map[u]);
            if lifts[u].len() != from.len() {
                return Err(Error::MalformedTable(format!(
                    "lift table at object {u} must cover the {} morphisms out of {}",
                    from.len(),
                    object_map[u]
                )));
            }
            if lifts[u].iter().any(|&m| m >= cod.n_morphisms()) {
                return Err(Error::MalformedTable(format!(
                    "lift table at object {u} out of range"
                )));
            }
        }
        let co = Comorphism {
            dom,
            cod,
            object_map,
            lifts,
        };
        co.check_axioms()?;
        Ok(co)
    }

    fn check_axioms(&self) -> Result<()> {
        for u in self.cod.objects() {
            let fu = self.object_map[u];
            for (k, &a) in self.dom.mors_from(fu).iter().enumerate() {
                let m = self.lifts[u][k];
                if self.cod.source(m) != u {
                    return Err(axiom_err(ComorphismAxiom::LiftSource, u, Some(a), None));
                }
                if self.object_map[self.cod.target(m)] != self.dom.target(a) {
                    return Err(axiom_err(ComorphismAxiom::AxiomI, u, Some(a), None));
                }
            }
        }
        for u in self.cod.objects() {
            let fu = self.object_map[u];
            if self.lift(u, self.dom.identity(fu)) != self.cod.identity(u) {
                return Err(axiom_err(ComorphismAxiom::AxiomII, u, None, None));
            }
        }
        for u in self.cod.objects() {
            let fu = self.object_map[u];
            for &a in self.dom.mors_from(fu) {
                let mid = self.lift_target(u, a);
                for &b in self.dom.mors_from(self.dom.target(a)) {
                    let ba = self.dom.compose(b, a).unwrap();
                    let lhs = self.cod.compose(self.lift(mid, b), self.lift(u, a));
                    if lhs != Some(self.lift(u, ba)) {
                        return Err(axiom_err(ComorphismAxiom::AxiomIII, u, Some(a), Some(b)));
                    }
                }
            }
        }
        Ok(())
    }

    /// `f(a)_u`: requires `source(a) == object_map[u]`.
    pub fn lift(&self, u: Ob, a: Mor) -> Mor {
        debug_assert_eq!(self.dom.source(a), self.object_map[u]);
        self.lifts[u][self.dom.pos_in_from(a)]
    }

    /// Target of the lift, an object of the codomain groupoid.
    pub fn lift_target(&self, u: Ob, a: Mor) -> Ob {
        self.cod.target(self.lift(u, a))
    }

    pub fn identity(g: &Arc<FiniteGroupoid>) -> Self {
        Comorphism {
            dom: g.clone(),
            cod: g.clone(),
            object_map: g.objects().collect(),
            lifts: g.objects().map(|u| g.mors_from(u).to_vec()).collect(),
        }
    }

    /// `g∘f` for `f: G ⇝ H`, `g: H ⇝ K` (apply `f`'s lifts first).
    pub fn compose(g: &Comorphism, f: &Comorphism) -> Result<Comorphism> {
        if f.cod != g.dom {
            return Err(Error::Mismatch(
                "comorphism composition: codomain/domain differ".into(),
            ));
        }
        let object_map: Vec<Ob> = g
            .object_map
            .iter()
            .map(|&mid| f.object_map[mid])
            .collect();
        let lifts = g
            .cod
            .objects()
            .map(|u| {
                let mid = g.object_map[u];
                f.dom
                    .mors_from(object_map[u])
                    .iter()
                    .map(|&a| g.lift(u, f.lift(mid, a)))
                    .collect()
            })
            .collect();
        Comorphism::new(f.dom.clone(), g.cod.clone(), object_map, lifts)
    }

    pub fn dom(&self) -> &Arc<FiniteGroupoid> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FiniteGroupoid> {
        &self.cod
    }

    pub fn object_map(&self) -> &[Ob] {
        &self.object_map
    }

    pub fn apply_ob(&self, u: Ob) -> Ob {
        self.object_map[u]
    }

    pub fn lift_table(&self) -> &[Vec<Mor>] {
        &self.lifts
    }
}

/// The comorphism induced by a bijective-on-objects functor: objects go
/// backwards along the inverse bijection, lifts are the functor's values.
pub fn lower_star(f: &Functor) -> Result<Comorphism> {
    if !f.is_bijective_on_objects() {
        return Err(Error::NotBijectiveOnObjects);
    }
    let mut object_map = vec![0; f.cod().n_objects()];
    for u in f.dom().objects() {
        object_map[f.apply_ob(u)] = u;
    }
    let lifts = f
        .cod()
        .objects()
        .map(|u| {
            f.dom()
                .mors_from(object_map[u])
                .iter()
                .map(|&a| f.apply_mor(a))
                .collect()
        })
        .collect();
    Comorphism::new(f.dom().clone(), f.cod().clone(), object_map, lifts)
}

/// The comorphism induced by a discrete opfibration `f: H -> G`, running
/// `G ⇝ H`: objects go along `f`, lifts are the unique opfibration lifts.
pub fn upper_star(f: &Functor) -> Result<Comorphism> {
    let mut lifts = Vec::with_capacity(f.dom().n_objects());
    for u in f.dom().objects() {
        let mut row = Vec::new();
        for &a in f.cod().mors_from(f.apply_ob(u)) {
            row.push(f.opfibration_lift(u, a)?);
        }
        lifts.push(row);
    }
    Comorphism::new(
        f.cod().clone(),
        f.dom().clone(),
        f.object_map().to_vec(),
        lifts,
    )
}

/// A span presentation of a comorphism: a discrete opfibration into the
/// domain and a bijective-on-objects (here: identity-on-objects) functor
/// into the codomain, sharing an intermediate groupoid.
pub struct Factorization {
    pub mid: Arc<FiniteGroupoid>,
    /// `mid -> dom(f)`, a discrete opfibration.
    pub left: Functor,
    /// `mid -> cod(f)`, identity on objects.
    pub right: Functor,
}

impl Factorization {
    /// Reassembles the comorphism the factorization came from.
    pub fn recompose(&self) -> Result<Comorphism> {
        Comorphism::compose(&lower_star(&self.right)?, &upper_star(&self.left)?)
    }
}

/// Splits `f: G ⇝ H` through the groupoid whose objects are those of H and
/// whose morphisms `u -> v` are the G-morphisms `a` out of `f(u)` whose lift
/// at `u` ends at `v`; one morphism per lift-table entry.
pub fn factorize(f: &Comorphism) -> Factorization {
    let (dom, cod) = (f.dom(), f.cod());
    let n_objects = cod.n_objects();
    let mut offset = Vec::with_capacity(n_objects);
    let mut total = 0usize;
    for u in cod.objects() {
        offset.push(total);
        total += f.lift_table()[u].len();
    }
    let entry = |u: Ob, a: Mor| offset[u] + dom.pos_in_from(a);
    let mut source = vec![0; total];
    let mut target = vec![0; total];
    let mut carried = vec![0; total]; // the G-morphism each entry stands for
    for u in cod.objects() {
        for &a in dom.mors_from(f.apply_ob(u)) {
            let e = entry(u, a);
            source[e] = u;
            target[e] = f.lift_target(u, a);
            carried[e] = a;
        }
    }
    let identity = cod
        .objects()
        .map(|u| entry(u, dom.identity(f.apply_ob(u))))
        .collect();
    let inverse = (0..total)
        .map(|e| entry(target[e], dom.inverse(carried[e])))
        .collect();
    let mut compose = vec![None; total * total];
    for e2 in 0..total {
        for e1 in 0..total {
            if source[e2] == target[e1] {
                let ba = dom.compose(carried[e2], carried[e1]).unwrap();
                compose[e2 * total + e1] = Some(entry(source[e1], ba));
            }
        }
    }
    let mid = Arc::new(
        FiniteGroupoid::from_parts(
            n_objects,
            source.clone(),
            target,
            identity,
            inverse,
            compose,
        )
        .expect("factorization intermediate is lawful"),
    );
    let left = Functor::new(
        mid.clone(),
        dom.clone(),
        f.object_map().to_vec(),
        carried.clone(),
    )
    .expect("factorization left leg is a functor");
    let right = Functor::new(
        mid.clone(),
        cod.clone(),
        cod.objects().collect(),
        (0..total).map(|e| f.lift_table()[source[e]][dom.pos_in_from(carried[e])]).collect(),
    )
    .expect("factorization right leg is a functor");
    Factorization { mid, left, right }
}

/// For a commuting square `g∘h = k∘f` with `f, g` bijective on objects and
/// `h, k` discrete opfibrations, checks whether the two induced comorphisms
/// around the square agree. Precondition failures are reported as errors,
/// distinct from a plain `false`.
pub fn check_beck_chevalley(f: &Functor, g: &Functor, h: &Functor, k: &Functor) -> Result<bool> {
    let via_g = Functor::compose(g, h)?;
    let via_k = Functor::compose(k, f)?;
    if via_g != via_k {
        return Err(Error::Precondition("square does not commute".into()));
    }
    if !f.is_bijective_on_objects() || !g.is_bijective_on_objects() {
        return Err(Error::Precondition(
            "horizontal legs must be bijective on objects".into(),
        ));
    }
    if !h.is_discrete_opfibration() || !k.is_discrete_opfibration() {
        return Err(Error::Precondition(
            "vertical legs must be discrete opfibrations".into(),
        ));
    }
    let lhs = Comorphism::compose(&lower_star(f)?, &upper_star(h)?)?;
    let rhs = Comorphism::compose(&upper_star(k)?, &lower_star(g)?)?;
    Ok(lhs == rhs)
}

/// If `f` is invertible in the comorphism category, returns the unique
/// invertible functor `g` with `f` induced by `g` from below, together with
/// the inverse comorphism (induced by `g` from above).
pub fn invert_comorphism(f: &Comorphism) -> Option<(Functor, Comorphism)> {
    if !crate::group::is_permutation(f.object_map(), f.dom().n_objects()) {
        return None;
    }
    let mut back = vec![0; f.dom().n_objects()];
    for u in f.cod().objects() {
        back[f.apply_ob(u)] = u;
    }
    let morphism_map = f
        .dom()
        .morphisms()
        .map(|a| f.lift(back[f.dom().source(a)], a))
        .collect();
    let g = Functor::new(
        f.dom().clone(),
        f.cod().clone(),
        back,
        morphism_map,
    )
    .ok()?;
    if !g.is_invertible() {
        return None;
    }
    debug_assert_eq!(lower_star(&g).as_ref(), Ok(f));
    let inv = upper_star(&g).expect("invertible functors are opfibrations");
    Some((g, inv))
}

/// Complete, duplicate-free enumeration of comorphisms `dom ⇝ cod`, ordered
/// lexicographically by (object map, lift table).
pub fn enumerate_comorphisms(
    dom: &Arc<FiniteGroupoid>,
    cod: &Arc<FiniteGroupoid>,
    caps: &Caps,
) -> Result<Vec<Comorphism>> {
    caps.check_groupoid(dom)?;
    caps.check_groupoid(cod)?;
    let mut out = Vec::new();
    if cod.n_objects() == 0 {
        // the empty groupoid admits exactly one comorphism from anywhere
        out.push(Comorphism {
            dom: dom.clone(),
            cod: cod.clone(),
            object_map: Vec::new(),
            lifts: Vec::new(),
        });
        return Ok(out);
    }
    if dom.n_objects() == 0 {
        return Ok(out);
    }
    let mut object_map = vec![0usize; cod.n_objects()];
    loop {
        enumerate_lifts(dom, cod, &object_map, &mut out);
        let mut i = cod.n_objects();
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            object_map[i] += 1;
            if object_map[i] < dom.n_objects() {
                break;
            }
            object_map[i] = 0;
        }
    }
}

fn enumerate_lifts(
    dom: &Arc<FiniteGroupoid>,
    cod: &Arc<FiniteGroupoid>,
    object_map: &[Ob],
    out: &mut Vec<Comorphism>,
) {
    // flattened lift entries in canonical order, with per-entry candidates
    let mut entries: Vec<(Ob, Mor)> = Vec::new();
    let mut offset = vec![0usize; cod.n_objects()];
    for u in cod.objects() {
        offset[u] = entries.len();
        for &a in dom.mors_from(object_map[u]) {
            entries.push((u, a));
        }
    }
    let mut candidates: Vec<Vec<Mor>> = Vec::with_capacity(entries.len());
    for &(u, a) in &entries {
        if dom.is_identity(a) {
            candidates.push(vec![cod.identity(u)]);
        } else {
            candidates.push(
                cod.mors_from(u)
                    .iter()
                    .copied()
                    .filter(|&m| object_map[cod.target(m)] == dom.target(a))
                    .collect(),
            );
        }
        if candidates.last().unwrap().is_empty() {
            return;
        }
    }
    let entry_of = |u: Ob, a: Mor| offset[u] + dom.pos_in_from(a);
    let mut assigned: Vec<Option<Mor>> = vec![None; entries.len()];

    // axiom (iii) over all currently determined instances; sound because
    // information only grows along a branch
    let composition_ok = |assigned: &[Option<Mor>]| -> bool {
        for (&(u, a), &slot) in entries.iter().zip(assigned.iter()) {
            let Some(m) = slot else { continue };
            let mid = cod.target(m);
            for &b in dom.mors_from(dom.target(a)) {
                let (Some(mb), Some(mba)) = (
                    assigned[entry_of(mid, b)],
                    assigned[entry_of(u, dom.compose(b, a).unwrap())],
                ) else {
                    continue;
                };
                if cod.compose(mb, m) != Some(mba) {
                    return false;
                }
            }
        }
        true
    };

    #[allow(clippy::too_many_arguments)]
    fn go(
        dom: &Arc<FiniteGroupoid>,
        cod: &Arc<FiniteGroupoid>,
        object_map: &[Ob],
        entries: &[(Ob, Mor)],
        candidates: &[Vec<Mor>],
        assigned: &mut Vec<Option<Mor>>,
        next: usize,
        composition_ok: &dyn Fn(&[Option<Mor>]) -> bool,
        out: &mut Vec<Comorphism>,
    ) {
        if next == entries.len() {
            let mut lifts: Vec<Vec<Mor>> = vec![Vec::new(); cod.n_objects()];
            for (&(u, _), &slot) in entries.iter().zip(assigned.iter()) {
                lifts[u].push(slot.unwrap());
            }
            let co = Comorphism {
                dom: dom.clone(),
                cod: cod.clone(),
                object_map: object_map.to_vec(),
                lifts,
            };
            debug_assert!(co.check_axioms().is_ok());
            out.push(co);
            return;
        }
        for &m in &candidates[next] {
            assigned[next] = Some(m);
            if composition_ok(assigned) {
                go(
                    dom,
                    cod,
                    object_map,
                    entries,
                    candidates,
                    assigned,
                    next + 1,
                    composition_ok,
                    out,
                );
            }
        }
        assigned[next] = None;
    }

    go(
        dom,
        cod,
        object_map,
        &entries,
        &candidates,
        &mut assigned,
        0,
        &composition_ok,
        out,
    );
}
