//! Finite groups as explicit multiplication tables.
//!
//! Used for the one-object groupoid construction, for materialized bisection
//! groups, and for counting group homomorphisms independently of any
//! groupoid-side enumeration.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupTable {
    order: usize,
    /// Row-major: `mul[b * order + a]` is the product `b * a`.
    mul: Vec<usize>,
    unit: usize,
    inv: Vec<usize>,
}

impl GroupTable {
    /// Validates a multiplication table (closure, associativity, two-sided
    /// unit, two-sided inverses) and derives the unit and inverse maps.
    pub fn from_mul_table(table: Vec<Vec<usize>>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return Err(Error::NotAGroup("empty table".into()));
        }
        let mut mul = vec![0usize; n * n];
        for (b, row) in table.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotAGroup(format!("row {b} has wrong length")));
            }
            for (a, &c) in row.iter().enumerate() {
                if c >= n {
                    return Err(Error::NotAGroup(format!("entry ({b}, {a}) out of range")));
                }
                mul[b * n + a] = c;
            }
        }
        for c in 0..n {
            for b in 0..n {
                for a in 0..n {
                    if mul[mul[c * n + b] * n + a] != mul[c * n + mul[b * n + a]] {
                        return Err(Error::NotAGroup(format!(
                            "associativity fails at ({c}, {b}, {a})"
                        )));
                    }
                }
            }
        }
        let unit = (0..n)
            .find(|&e| (0..n).all(|a| mul[e * n + a] == a && mul[a * n + e] == a))
            .ok_or_else(|| Error::NotAGroup("no two-sided unit".into()))?;
        let mut inv = vec![0usize; n];
        for a in 0..n {
            inv[a] = (0..n)
                .find(|&b| mul[b * n + a] == unit && mul[a * n + b] == unit)
                .ok_or_else(|| Error::NotAGroup(format!("element {a} has no inverse")))?;
        }
        Ok(GroupTable {
            order: n,
            mul,
            unit,
            inv,
        })
    }

    /// Builds directly from already-trusted parts (internal constructions).
    fn from_parts(order: usize, mul: Vec<usize>, unit: usize, inv: Vec<usize>) -> Self {
        let g = GroupTable {
            order,
            mul,
            unit,
            inv,
        };
        debug_assert!(g.validate().is_ok());
        g
    }

    fn validate(&self) -> Result<()> {
        let rows = (0..self.order)
            .map(|b| (0..self.order).map(|a| self.mul(b, a)).collect())
            .collect();
        let checked = GroupTable::from_mul_table(rows)?;
        if checked.unit != self.unit || checked.inv != self.inv {
            return Err(Error::NotAGroup("unit or inverse map mismatch".into()));
        }
        Ok(())
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group needs at least one element");
        let mul = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        let inv = (0..n).map(|a| (n - a) % n).collect();
        GroupTable::from_parts(n, mul, 0, inv)
    }

    pub fn direct_product(g: &GroupTable, h: &GroupTable) -> Self {
        let n = g.order * h.order;
        let code = |x: usize, y: usize| x * h.order + y;
        let mut mul = vec![0; n * n];
        for bx in 0..g.order {
            for by in 0..h.order {
                for ax in 0..g.order {
                    for ay in 0..h.order {
                        mul[code(bx, by) * n + code(ax, ay)] =
                            code(g.mul(bx, ax), h.mul(by, ay));
                    }
                }
            }
        }
        let inv = (0..n)
            .map(|a| code(g.inv(a / h.order), h.inv(a % h.order)))
            .collect();
        GroupTable::from_parts(n, mul, code(g.unit, h.unit), inv)
    }

    pub fn klein_four() -> Self {
        let z2 = GroupTable::cyclic(2);
        GroupTable::direct_product(&z2, &z2)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, b: usize, a: usize) -> usize {
        self.mul[b * self.order + a]
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// All group homomorphisms `self -> other` as image vectors, in
    /// lexicographic order.
    pub fn homomorphisms_to(&self, other: &GroupTable) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut image = vec![usize::MAX; self.order];
        self.extend_hom(other, &mut image, 0, &mut out);
        out
    }

    fn extend_hom(
        &self,
        other: &GroupTable,
        image: &mut Vec<usize>,
        next: usize,
        out: &mut Vec<Vec<usize>>,
    ) {
        if next == self.order {
            out.push(image.clone());
            return;
        }
        for candidate in 0..other.order {
            image[next] = candidate;
            if self.hom_consistent(other, image, next) {
                self.extend_hom(other, image, next + 1, out);
            }
        }
        image[next] = usize::MAX;
    }

    fn hom_consistent(&self, other: &GroupTable, image: &[usize], just: usize) -> bool {
        if just == self.unit && image[just] != other.unit {
            return false;
        }
        for b in 0..=just {
            for a in 0..=just {
                let p = self.mul(b, a);
                if p <= just && other.mul(image[b], image[a]) != image[p] {
                    return false;
                }
            }
        }
        true
    }

    /// Backtracking search for a group isomorphism; used by tests and the
    /// verification harness at small orders.
    pub fn find_isomorphism(&self, other: &GroupTable) -> Option<Vec<usize>> {
        if self.order != other.order {
            return None;
        }
        self.homomorphisms_to(other)
            .into_iter()
            .find(|image| is_permutation(image, other.order))
    }

    pub fn is_isomorphic_to(&self, other: &GroupTable) -> bool {
        self.find_isomorphism(other).is_some()
    }
}

pub(crate) fn is_permutation(image: &[usize], n: usize) -> bool {
    if image.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &x in image {
        if x >= n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}
