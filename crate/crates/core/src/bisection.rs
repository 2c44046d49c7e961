//! Bisections of a groupoid: total families `α_u: u -> ᾱ(u)` whose object
//! action is a bijection. They form a group, push forward along comorphisms,
//! and act on the groupoid by conjugation.

use std::sync::Arc;

use crate::caps::Caps;
use crate::comorphism::Comorphism;
use crate::error::{Error, Result};
use crate::functor::Functor;
use crate::group::GroupTable;
use crate::groupoid::{FiniteGroupoid, Mor, Ob};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bisection {
    carrier: Arc<FiniteGroupoid>,
    /// `components[u]` is a morphism out of `u`; the targets are derived,
    /// never stored.
    components: Vec<Mor>,
}

impl Bisection {
    pub fn new(carrier: Arc<FiniteGroupoid>, components: Vec<Mor>) -> Result<Self> {
        if components.len() != carrier.n_objects() {
            return Err(Error::BisectionLaw(
                "one component per object required".into(),
            ));
        }
        let mut hit = vec![false; carrier.n_objects()];
        for (u, &m) in components.iter().enumerate() {
            if m >= carrier.n_morphisms() || carrier.source(m) != u {
                return Err(Error::BisectionLaw(format!(
                    "component at object {u} does not start there"
                )));
            }
            let t = carrier.target(m);
            if hit[t] {
                return Err(Error::BisectionLaw(format!(
                    "object action is not injective at target {t}"
                )));
            }
            hit[t] = true;
        }
        Ok(Bisection {
            carrier,
            components,
        })
    }

    pub fn identity(g: &Arc<FiniteGroupoid>) -> Self {
        Bisection {
            carrier: g.clone(),
            components: g.objects().map(|u| g.identity(u)).collect(),
        }
    }

    pub fn carrier(&self) -> &Arc<FiniteGroupoid> {
        &self.carrier
    }

    pub fn component(&self, u: Ob) -> Mor {
        self.components[u]
    }

    pub fn components(&self) -> &[Mor] {
        &self.components
    }

    /// ᾱ(u), the induced object bijection.
    pub fn object_action(&self, u: Ob) -> Ob {
        self.carrier.target(self.components[u])
    }

    /// `(β·α)_u = β_{ᾱ(u)} ∘ α_u` (apply `a` first).
    pub fn multiply(b: &Bisection, a: &Bisection) -> Result<Bisection> {
        if a.carrier != b.carrier {
            return Err(Error::Mismatch("bisections live on different groupoids".into()));
        }
        let g = &a.carrier;
        let components = g
            .objects()
            .map(|u| {
                g.compose(b.components[a.object_action(u)], a.components[u])
                    .expect("bisection components compose")
            })
            .collect();
        Ok(Bisection {
            carrier: a.carrier.clone(),
            components,
        })
    }

    /// `(α⁻¹)_{ᾱ(u)} = (α_u)⁻¹`.
    pub fn inverse(&self) -> Bisection {
        let g = &self.carrier;
        let mut components = vec![0; g.n_objects()];
        for u in g.objects() {
            components[self.object_action(u)] = g.inverse(self.components[u]);
        }
        Bisection {
            carrier: self.carrier.clone(),
            components,
        }
    }
}

/// All bisections of `g`, ordered lexicographically by component vector.
pub fn enumerate_bisections(g: &Arc<FiniteGroupoid>, caps: &Caps) -> Result<Vec<Bisection>> {
    caps.check_groupoid(g)?;
    let mut out = Vec::new();
    let mut components = Vec::with_capacity(g.n_objects());
    let mut hit = vec![false; g.n_objects()];
    fn go(
        g: &Arc<FiniteGroupoid>,
        components: &mut Vec<Mor>,
        hit: &mut Vec<bool>,
        out: &mut Vec<Bisection>,
    ) {
        let u = components.len();
        if u == g.n_objects() {
            out.push(Bisection {
                carrier: g.clone(),
                components: components.clone(),
            });
            return;
        }
        for &m in g.mors_from(u) {
            let t = g.target(m);
            if !hit[t] {
                hit[t] = true;
                components.push(m);
                go(g, components, hit, out);
                components.pop();
                hit[t] = false;
            }
        }
    }
    go(g, &mut components, &mut hit, &mut out);
    Ok(out)
}

/// Conjugation by a bisection: `x: u -> v` goes to `α_v ∘ x ∘ α_u⁻¹`.
/// Always an invertible, bijective-on-objects functor.
pub fn conjugation(alpha: &Bisection) -> Functor {
    let g = alpha.carrier();
    let object_map: Vec<Ob> = g.objects().map(|u| alpha.object_action(u)).collect();
    let morphism_map = g
        .morphisms()
        .map(|x| {
            let (u, v) = (g.source(x), g.target(x));
            let xa = g
                .compose(x, g.inverse(alpha.component(u)))
                .expect("conjugation composes");
            g.compose(alpha.component(v), xa)
                .expect("conjugation composes")
        })
        .collect();
    Functor::new(g.clone(), g.clone(), object_map, morphism_map)
        .expect("conjugation is a functor")
}

/// Pushforward of a bisection along a comorphism: `(fα)_u = f(α_{fu})_u`.
pub fn pushforward(f: &Comorphism, alpha: &Bisection) -> Result<Bisection> {
    if alpha.carrier() != f.dom() {
        return Err(Error::Mismatch(
            "bisection must live on the comorphism's domain".into(),
        ));
    }
    let components = f
        .cod()
        .objects()
        .map(|u| f.lift(u, alpha.component(f.apply_ob(u))))
        .collect();
    Bisection::new(f.cod().clone(), components)
}

/// The group of all bisections, materialized as an explicit table.
pub struct BisectionGroup {
    pub elements: Vec<Bisection>,
    pub table: GroupTable,
}

/// Materializes `Bis(g)` when its order stays within `cap` elements.
pub fn bisection_group(g: &Arc<FiniteGroupoid>, caps: &Caps, cap: usize) -> Result<BisectionGroup> {
    let elements = enumerate_bisections(g, caps)?;
    if elements.len() > cap {
        return Err(Error::CapExceeded {
            what: "bisection group order".into(),
            value: elements.len(),
            cap,
        });
    }
    let index_of = |b: &Bisection| elements.iter().position(|e| e == b).expect("closed");
    let rows = elements
        .iter()
        .map(|b| {
            elements
                .iter()
                .map(|a| index_of(&Bisection::multiply(b, a).unwrap()))
                .collect()
        })
        .collect();
    let table = GroupTable::from_mul_table(rows)?;
    Ok(BisectionGroup { elements, table })
}

/// Reads off the group homomorphism `H -> Bis(G)` hidden in a comorphism out
/// of a one-object groupoid: element `a` goes to the family of its lifts.
pub fn adjunction_forward(f: &Comorphism, h: &GroupTable) -> Result<Vec<Bisection>> {
    let sigma_h = FiniteGroupoid::sigma(h);
    if f.dom().as_ref() != &sigma_h {
        return Err(Error::Mismatch(
            "comorphism domain must be the one-object groupoid of the given group".into(),
        ));
    }
    (0..h.order())
        .map(|a| {
            let components = f.cod().objects().map(|u| f.lift(u, a)).collect();
            Bisection::new(f.cod().clone(), components)
        })
        .collect()
}

/// Packages a group homomorphism `H -> Bis(G)` (given element-wise) as a
/// comorphism `ΣH ⇝ G`. Rejects non-homomorphisms.
pub fn adjunction_back(
    h: &GroupTable,
    g: &Arc<FiniteGroupoid>,
    phi: &[Bisection],
) -> Result<Comorphism> {
    if phi.len() != h.order() {
        return Err(Error::NotAHomomorphism(
            "one bisection per group element required".into(),
        ));
    }
    for b in phi {
        if b.carrier() != g {
            return Err(Error::Mismatch("bisection on the wrong groupoid".into()));
        }
    }
    if phi[h.unit()] != Bisection::identity(g) {
        return Err(Error::NotAHomomorphism("unit not preserved".into()));
    }
    for b in 0..h.order() {
        for a in 0..h.order() {
            if Bisection::multiply(&phi[b], &phi[a])? != phi[h.mul(b, a)] {
                return Err(Error::NotAHomomorphism(format!(
                    "product of elements {b} and {a} not preserved"
                )));
            }
        }
    }
    let sigma_h = Arc::new(FiniteGroupoid::sigma(h));
    let object_map = vec![0; g.n_objects()];
    let lifts = g
        .objects()
        .map(|u| (0..h.order()).map(|a| phi[a].component(u)).collect())
        .collect();
    Comorphism::new(sigma_h, g.clone(), object_map, lifts)
}
