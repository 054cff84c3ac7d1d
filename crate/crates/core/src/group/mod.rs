//! Finite groups given as explicit permutation groups.
//!
//! A [`FiniteGroup`] is materialized eagerly: its elements are stored in
//! lexicographic order of their one-line notation, so the identity is
//! always element `0` and element indices are stable across runs. Most
//! algorithms work on element indices through the [`IndexedGroup`] trait,
//! which is also implemented by abstract quotient tables.

mod catalog;
mod iso;
mod lattice;
mod product;
mod quotient;
mod sub;

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::perm::Perm;

pub use catalog::{alternating, cyclic, dihedral, elementary_abelian, klein_four, symmetric, trivial};
pub use iso::{invariants, isomorphic, isomorphisms, GroupInvariants};
pub use lattice::{all_subgroups, all_subgroups_with, conjugacy_classes_of_subgroups};
pub use product::{direct_product, direct_product_with, goursat_subgroups, GoursatCell, GoursatSubgroups};
pub use quotient::{
    central_quotient, has_index_two_subgroup, normal_subgroups, quotient, simple_nonabelian_quotients,
    IsoLabel, QuotientMap, QuotientTable,
};
pub use sub::{derived_subgroup, is_normal_in, order_histogram, Sub};

/// Default bound on the number of elements a closure may produce.
pub const DEFAULT_ORDER_CAP: usize = 10_000;
/// Default bound on `|G1|·|G2|` for streamed product enumeration.
pub const DEFAULT_PRODUCT_CAP: usize = 1_000_000;
/// Groups up to this order get a full multiplication table on demand.
const TABLE_LIMIT: usize = 2048;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_order: usize,
    pub max_product: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_order: DEFAULT_ORDER_CAP,
            max_product: DEFAULT_PRODUCT_CAP,
        }
    }
}

/// Group operations on element indices `0..order`, with `0` the identity.
pub trait IndexedGroup {
    fn order(&self) -> usize;
    fn mul(&self, a: usize, b: usize) -> usize;
    fn inv(&self, a: usize) -> usize;
    /// A generating set, as element indices.
    fn generator_indices(&self) -> Vec<usize>;

    fn identity(&self) -> usize {
        0
    }

    fn conj(&self, x: usize, g: usize) -> usize {
        // g⁻¹ x g
        self.mul(self.mul(self.inv(g), x), g)
    }

    fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != self.identity() {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }
}

/// JSON form of a group: its degree and generators in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupDescriptor {
    pub degree: usize,
    pub generators: Vec<Vec<u32>>,
}

impl GroupDescriptor {
    /// Short stable hash of the canonical JSON encoding.
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(self).expect("descriptor serializes");
        let digest = Sha256::digest(json.as_bytes());
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// A subgroup of some parent group, as sorted indices into the parent's
/// element list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SubgroupRecord {
    pub parent: String,
    pub members: Vec<u32>,
    pub order: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class_id: Option<usize>,
}

impl SubgroupRecord {
    pub fn contains(&self, index: usize) -> bool {
        self.members.binary_search(&(index as u32)).is_ok()
    }

    pub fn canonical_key(&self) -> (usize, &[u32]) {
        (self.order, &self.members)
    }
}

#[derive(Clone)]
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, u32>,
    gen_indices: Vec<usize>,
    inverses: OnceLock<Vec<u32>>,
    table: OnceLock<Option<Vec<u32>>>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.degree)
            .field("order", &self.elements.len())
            .field("generators", &self.generators)
            .finish()
    }
}

impl FiniteGroup {
    /// The group generated by `generators`, with the default order cap.
    pub fn closure(degree: usize, generators: Vec<Perm>) -> Result<FiniteGroup> {
        FiniteGroup::closure_with_cap(degree, generators, DEFAULT_ORDER_CAP)
    }

    pub fn closure_with_cap(degree: usize, generators: Vec<Perm>, cap: usize) -> Result<FiniteGroup> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let id = Perm::identity(degree);
        let mut seen: HashMap<Perm, ()> = HashMap::new();
        seen.insert(id.clone(), ());
        let mut queue = vec![id];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head].clone();
            head += 1;
            for s in &generators {
                let y = x.compose(s);
                if !seen.contains_key(&y) {
                    if seen.len() >= cap {
                        return Err(Error::EnumerationTooLarge { cap });
                    }
                    seen.insert(y.clone(), ());
                    queue.push(y);
                }
            }
        }
        Ok(FiniteGroup::from_parts(degree, generators, queue))
    }

    pub fn from_descriptor(desc: &GroupDescriptor) -> Result<FiniteGroup> {
        let gens = desc
            .generators
            .iter()
            .map(|g| Perm::new(g.clone()))
            .collect::<Result<Vec<_>>>()?;
        FiniteGroup::closure(desc.degree, gens)
    }

    /// Builds a group from a complete, closed element list.
    pub(crate) fn from_parts(degree: usize, generators: Vec<Perm>, mut elements: Vec<Perm>) -> FiniteGroup {
        elements.sort();
        elements.dedup();
        let index: HashMap<Perm, u32> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as u32))
            .collect();
        let gen_indices = generators.iter().map(|g| index[g] as usize).collect();
        FiniteGroup {
            degree,
            generators,
            elements,
            index,
            gen_indices,
            inverses: OnceLock::new(),
            table: OnceLock::new(),
        }
    }

    /// Builds a group from a closed element list, choosing a small
    /// generating set.
    pub(crate) fn from_closed_elements(degree: usize, elements: Vec<Perm>) -> FiniteGroup {
        let mut g = FiniteGroup::from_parts(degree, Vec::new(), elements);
        let gens = sub::small_generating_set(&g, &(0..g.order()).collect::<Vec<_>>());
        g.generators = gens.iter().map(|&i| g.elements[i].clone()).collect();
        g.gen_indices = gens;
        g
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }

    pub fn contains(&self, p: &Perm) -> bool {
        self.index.contains_key(p)
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        GroupDescriptor {
            degree: self.degree,
            generators: self.generators.iter().map(|g| g.images().to_vec()).collect(),
        }
    }

    pub fn descriptor_hash(&self) -> String {
        self.descriptor().hash()
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.gen_indices;
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Builds the multiplication table if the group is small enough.
    /// Later calls to [`IndexedGroup::mul`] use it.
    pub fn ensure_table(&self) -> bool {
        self.table
            .get_or_init(|| {
                let n = self.order();
                if n > TABLE_LIMIT {
                    return None;
                }
                let mut t = vec![0u32; n * n];
                for a in 0..n {
                    for b in 0..n {
                        t[a * n + b] = self.mul_slow(a, b) as u32;
                    }
                }
                Some(t)
            })
            .is_some()
    }

    fn mul_slow(&self, a: usize, b: usize) -> usize {
        let p = self.elements[a].compose(&self.elements[b]);
        self.index[&p] as usize
    }

    /// The record for a subset of element indices, after checking closure.
    pub fn subgroup_record(&self, members: &[usize]) -> Result<SubgroupRecord> {
        let mut sorted: Vec<u32> = members.iter().map(|&i| i as u32).collect();
        sorted.sort_unstable();
        sorted.dedup();
        let rec = SubgroupRecord {
            parent: self.descriptor_hash(),
            order: sorted.len(),
            members: sorted,
            class_id: None,
        };
        if !self.is_subgroup(&rec) {
            return Err(Error::NotASubgroup);
        }
        Ok(rec)
    }

    /// The subgroup generated by the given elements.
    pub fn generated_subgroup(&self, gens: &[Perm]) -> Result<SubgroupRecord> {
        let idx = gens
            .iter()
            .map(|p| self.index_of(p).ok_or(Error::NotASubgroup))
            .collect::<Result<Vec<_>>>()?;
        let sub = Sub::generated(self, &idx);
        Ok(self.record_of(&sub))
    }

    pub(crate) fn record_of(&self, sub: &Sub) -> SubgroupRecord {
        let mut members: Vec<u32> = sub.elems.iter().map(|&i| i as u32).collect();
        members.sort_unstable();
        SubgroupRecord {
            parent: self.descriptor_hash(),
            order: members.len(),
            members,
            class_id: None,
        }
    }

    /// Closure check: non-empty, contains products and inverses.
    pub fn is_subgroup(&self, rec: &SubgroupRecord) -> bool {
        if rec.members.is_empty() || rec.order != rec.members.len() {
            return false;
        }
        if rec.members.iter().any(|&m| m as usize >= self.order()) {
            return false;
        }
        let members: Vec<usize> = rec.members.iter().map(|&m| m as usize).collect();
        members.iter().all(|&a| {
            rec.contains(self.inv(a)) && members.iter().all(|&b| rec.contains(self.mul(a, b)))
        })
    }

    /// Materializes a subgroup as a group in its own right, on the same points.
    pub fn subgroup_as_group(&self, rec: &SubgroupRecord) -> FiniteGroup {
        let elements = rec.members.iter().map(|&m| self.elements[m as usize].clone()).collect();
        FiniteGroup::from_closed_elements(self.degree, elements)
    }

    /// Maps a subgroup of `self` to the element indices of `other`, which
    /// must contain it (e.g. `other` is a subgroup materialized on the
    /// same points).
    pub fn translate_members(&self, rec: &SubgroupRecord, other: &FiniteGroup) -> Option<Vec<usize>> {
        rec.members
            .iter()
            .map(|&m| other.index_of(&self.elements[m as usize]))
            .collect()
    }

    /// Orbits of the group on its points, each sorted, in order of least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut head = 0;
            while head < orbit.len() {
                let x = orbit[head];
                head += 1;
                for g in &self.generators {
                    let y = g.apply(x);
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                    }
                }
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() <= 1
    }
}

impl IndexedGroup for FiniteGroup {
    fn order(&self) -> usize {
        self.elements.len()
    }

    #[inline]
    fn mul(&self, a: usize, b: usize) -> usize {
        match self.table.get() {
            Some(Some(t)) => t[a * self.elements.len() + b] as usize,
            _ => self.mul_slow(a, b),
        }
    }

    fn inv(&self, a: usize) -> usize {
        let inv = self.inverses.get_or_init(|| {
            self.elements
                .iter()
                .map(|p| self.index[&p.inverse()])
                .collect()
        });
        inv[a] as usize
    }

    fn generator_indices(&self) -> Vec<usize> {
        self.gen_indices.clone()
    }
}

impl PartialEq for FiniteGroup {
    /// Equal as sets of permutations on the same points.
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for FiniteGroup {}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_closure() {
        let g = FiniteGroup::closure(3, vec![Perm::new(vec![1, 2, 0]).unwrap()]).unwrap();
        assert_eq!(g.order(), 3);
        assert!(g.element(0).is_identity());
    }

    #[test]
    fn trivial_closure() {
        let g = FiniteGroup::closure(1, vec![]).unwrap();
        assert_eq!(g.order(), 1);
        let g0 = FiniteGroup::closure(0, vec![]).unwrap();
        assert_eq!(g0.order(), 1);
    }

    #[test]
    fn a5_closure_matches_half_of_5_factorial() {
        let c5 = Perm::from_cycles(5, &[&[0, 1, 2, 3, 4]]).unwrap();
        let c3 = Perm::from_cycles(5, &[&[0, 1, 2]]).unwrap();
        let g = FiniteGroup::closure(5, vec![c5, c3]).unwrap();
        assert_eq!(g.order(), 120 / 2);
        // brute force: count even permutations of 5 points
        let even = all_perms(5).into_iter().filter(|p| parity(p) == 0).count();
        assert_eq!(even, 60);
        assert!(g.elements().iter().all(|p| parity(p) == 0));
    }

    fn all_perms(n: usize) -> Vec<Perm> {
        fn rec(n: usize, cur: &mut Vec<u32>, used: &mut Vec<bool>, out: &mut Vec<Perm>) {
            if cur.len() == n {
                out.push(Perm::new(cur.clone()).unwrap());
                return;
            }
            for x in 0..n {
                if !used[x] {
                    used[x] = true;
                    cur.push(x as u32);
                    rec(n, cur, used, out);
                    cur.pop();
                    used[x] = false;
                }
            }
        }
        let mut out = Vec::new();
        rec(n, &mut Vec::new(), &mut vec![false; n], &mut out);
        out
    }

    fn parity(p: &Perm) -> usize {
        p.cycle_lengths().iter().map(|l| l - 1).sum::<usize>() % 2
    }

    #[test]
    fn closure_respects_cap() {
        let g = symmetric(6);
        let err = FiniteGroup::closure_with_cap(6, g.generators().to_vec(), 100).unwrap_err();
        assert_eq!(err, Error::EnumerationTooLarge { cap: 100 });
    }

    #[test]
    fn closure_rejects_degree_mismatch() {
        let err = FiniteGroup::closure(3, vec![Perm::identity(4)]).unwrap_err();
        assert!(matches!(err, Error::DegreeMismatch { .. }));
    }

    #[test]
    fn closed_under_products_and_inverses() {
        let g = symmetric(4);
        for a in 0..g.order() {
            assert!(g.contains(&g.element(a).inverse()));
            for b in 0..g.order() {
                assert!(g.contains(&g.element(a).compose(g.element(b))));
            }
        }
    }

    #[test]
    fn table_and_slow_path_agree() {
        let g = alternating(4);
        let slow: Vec<usize> = (0..144).map(|k| g.mul(k / 12, k % 12)).collect();
        assert!(g.ensure_table());
        let fast: Vec<usize> = (0..144).map(|k| g.mul(k / 12, k % 12)).collect();
        assert_eq!(slow, fast);
    }

    #[test]
    fn descriptor_round_trip() {
        let g = dihedral(5);
        let json = serde_json::to_string(&g.descriptor()).unwrap();
        let d: GroupDescriptor = serde_json::from_str(&json).unwrap();
        let h = FiniteGroup::from_descriptor(&d).unwrap();
        assert_eq!(g, h);
        assert_eq!(g.descriptor_hash(), h.descriptor_hash());
    }
}
