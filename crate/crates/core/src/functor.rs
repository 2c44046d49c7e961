//! Groupoid homomorphisms (functors) and their exhaustive enumeration.

use std::sync::Arc;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::groupoid::{FiniteGroupoid, Mor, Ob};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Functor {
    dom: Arc<FiniteGroupoid>,
    cod: Arc<FiniteGroupoid>,
    object_map: Vec<Ob>,
    morphism_map: Vec<Mor>,
}

impl Functor {
    /// Validates the maps as a functor: endpoints, identities, composition.
    pub fn new(
        dom: Arc<FiniteGroupoid>,
        cod: Arc<FiniteGroupoid>,
        object_map: Vec<Ob>,
        morphism_map: Vec<Mor>,
    ) -> Result<Self> {
        if object_map.len() != dom.n_objects() || morphism_map.len() != dom.n_morphisms() {
            return Err(Error::MalformedTable(
                "functor maps must be total over the domain".into(),
            ));
        }
        if object_map.iter().any(|&u| u >= cod.n_objects())
            || morphism_map.iter().any(|&m| m >= cod.n_morphisms())
        {
            return Err(Error::MalformedTable("functor map out of range".into()));
        }
        for m in dom.morphisms() {
            let fm = morphism_map[m];
            if cod.source(fm) != object_map[dom.source(m)]
                || cod.target(fm) != object_map[dom.target(m)]
            {
                return Err(Error::FunctorSourceTarget { morphism: m });
            }
        }
        for u in dom.objects() {
            if morphism_map[dom.identity(u)] != cod.identity(object_map[u]) {
                return Err(Error::FunctorIdentity { object: u });
            }
        }
        for a in dom.morphisms() {
            for &b in dom.mors_from(dom.target(a)) {
                let ba = dom.compose(b, a).unwrap();
                if cod.compose(morphism_map[b], morphism_map[a]) != Some(morphism_map[ba]) {
                    return Err(Error::FunctorComposition { b, a });
                }
            }
        }
        Ok(Functor {
            dom,
            cod,
            object_map,
            morphism_map,
        })
    }

    pub fn identity(g: &Arc<FiniteGroupoid>) -> Self {
        Functor {
            dom: g.clone(),
            cod: g.clone(),
            object_map: g.objects().collect(),
            morphism_map: g.morphisms().collect(),
        }
    }

    /// `g∘f` (apply `f` first).
    pub fn compose(g: &Functor, f: &Functor) -> Result<Functor> {
        if f.cod() != g.dom() {
            return Err(Error::Mismatch(
                "functor composition: codomain/domain differ".into(),
            ));
        }
        Ok(Functor {
            dom: f.dom.clone(),
            cod: g.cod.clone(),
            object_map: f.object_map.iter().map(|&u| g.object_map[u]).collect(),
            morphism_map: f.morphism_map.iter().map(|&m| g.morphism_map[m]).collect(),
        })
    }

    pub fn dom(&self) -> &Arc<FiniteGroupoid> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<FiniteGroupoid> {
        &self.cod
    }

    pub fn apply_ob(&self, u: Ob) -> Ob {
        self.object_map[u]
    }

    pub fn apply_mor(&self, m: Mor) -> Mor {
        self.morphism_map[m]
    }

    pub fn object_map(&self) -> &[Ob] {
        &self.object_map
    }

    pub fn morphism_map(&self) -> &[Mor] {
        &self.morphism_map
    }

    pub fn is_bijective_on_objects(&self) -> bool {
        crate::group::is_permutation(&self.object_map, self.cod.n_objects())
    }

    /// Discrete opfibration: for each object `u` of the domain and each
    /// `a: F(u) -> v` in the codomain there is exactly one morphism out of
    /// `u` mapping to `a`.
    pub fn is_discrete_opfibration(&self) -> bool {
        for u in self.dom.objects() {
            for &a in self.cod.mors_from(self.object_map[u]) {
                let lifts = self
                    .dom
                    .mors_from(u)
                    .iter()
                    .filter(|&&m| self.morphism_map[m] == a)
                    .count();
                if lifts != 1 {
                    return false;
                }
            }
        }
        true
    }

    /// The unique lift of `a` out of `u`, when this functor is a discrete
    /// opfibration.
    pub fn opfibration_lift(&self, u: Ob, a: Mor) -> Result<Mor> {
        let mut found = None;
        for &m in self.dom.mors_from(u) {
            if self.morphism_map[m] == a {
                if found.is_some() {
                    return Err(Error::NotDiscreteOpfibration {
                        object: u,
                        morphism: a,
                    });
                }
                found = Some(m);
            }
        }
        found.ok_or(Error::NotDiscreteOpfibration {
            object: u,
            morphism: a,
        })
    }

    pub fn is_invertible(&self) -> bool {
        self.is_bijective_on_objects()
            && crate::group::is_permutation(&self.morphism_map, self.cod.n_morphisms())
    }

    pub fn inverse(&self) -> Option<Functor> {
        if !self.is_invertible() {
            return None;
        }
        let mut object_map = vec![0; self.cod.n_objects()];
        for (u, &fu) in self.object_map.iter().enumerate() {
            object_map[fu] = u;
        }
        let mut morphism_map = vec![0; self.cod.n_morphisms()];
        for (m, &fm) in self.morphism_map.iter().enumerate() {
            morphism_map[fm] = m;
        }
        Some(Functor {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            object_map,
            morphism_map,
        })
    }
}

/// Complete, duplicate-free, lexicographically ordered enumeration of all
/// functors `dom -> cod`.
pub fn enumerate_functors(
    dom: &Arc<FiniteGroupoid>,
    cod: &Arc<FiniteGroupoid>,
    caps: &Caps,
) -> Result<Vec<Functor>> {
    caps.check_groupoid(dom)?;
    caps.check_groupoid(cod)?;
    let mut out = Vec::new();
    let n_dom = dom.n_objects();

    // composition triples bucketed by their largest morphism id, so the
    // morphism backtracking can check each exactly once
    let mut triples_by_max: Vec<Vec<(Mor, Mor, Mor)>> = vec![Vec::new(); dom.n_morphisms().max(1)];
    for a in dom.morphisms() {
        for &b in dom.mors_from(dom.target(a)) {
            let ba = dom.compose(b, a).unwrap();
            triples_by_max[b.max(a).max(ba)].push((b, a, ba));
        }
    }

    let mut object_map = vec![0usize; n_dom];
    loop {
        if object_map_feasible(dom, cod, &object_map) {
            let mut morphism_map = vec![usize::MAX; dom.n_morphisms()];
            extend_morphisms(
                dom,
                cod,
                &object_map,
                &mut morphism_map,
                0,
                &triples_by_max,
                &mut out,
            );
        }
        // odometer over object maps, last coordinate fastest
        let mut i = n_dom;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            object_map[i] += 1;
            if object_map[i] < cod.n_objects() {
                break;
            }
            object_map[i] = 0;
        }
    }
}

fn object_map_feasible(
    dom: &FiniteGroupoid,
    cod: &FiniteGroupoid,
    object_map: &[Ob],
) -> bool {
    if dom.n_objects() > 0 && cod.n_objects() == 0 {
        return false;
    }
    for m in dom.morphisms() {
        if cod
            .hom(object_map[dom.source(m)], object_map[dom.target(m)])
            .is_empty()
        {
            return false;
        }
    }
    true
}

#[allow(clippy::too_many_arguments)]
fn extend_morphisms(
    dom: &Arc<FiniteGroupoid>,
    cod: &Arc<FiniteGroupoid>,
    object_map: &[Ob],
    morphism_map: &mut Vec<Mor>,
    next: Mor,
    triples_by_max: &[Vec<(Mor, Mor, Mor)>],
    out: &mut Vec<Functor>,
) {
    if next == dom.n_morphisms() {
        out.push(Functor {
            dom: dom.clone(),
            cod: cod.clone(),
            object_map: object_map.to_vec(),
            morphism_map: morphism_map.clone(),
        });
        return;
    }
    let candidates: Vec<Mor> = if dom.is_identity(next) {
        vec![cod.identity(object_map[dom.source(next)])]
    } else {
        cod.hom(object_map[dom.source(next)], object_map[dom.target(next)])
    };
    for fm in candidates {
        morphism_map[next] = fm;
        let ok = triples_by_max[next].iter().all(|&(b, a, ba)| {
            cod.compose(morphism_map[b], morphism_map[a]) == Some(morphism_map[ba])
        });
        if ok {
            extend_morphisms(
                dom,
                cod,
                object_map,
                morphism_map,
                next + 1,
                triples_by_max,
                out,
            );
        }
    }
    morphism_map[next] = usize::MAX;
}
