//! Direct products and their subgroups via Goursat data.

use super::iso::isomorphisms;
use super::lattice::subgroup_lattice;
use super::quotient::QuotientTable;
use super::sub::{is_normal_in, order_histogram, Sub};
use super::{FiniteGroup, GroupDescriptor, IndexedGroup, Limits, SubgroupRecord};
use crate::error::{Error, Result};
use crate::perm::Perm;

pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> Result<FiniteGroup> {
    direct_product_with(g, h, &Limits::default())
}

/// `G × H` acting on the disjoint union of the two point sets, `G` first.
/// Element `i·|H| + j` is the pair `(g_i, h_j)`.
pub fn direct_product_with(g: &FiniteGroup, h: &FiniteGroup, limits: &Limits) -> Result<FiniteGroup> {
    let order = g.order() * h.order();
    if order > limits.max_order {
        return Err(Error::EnumerationTooLarge {
            cap: limits.max_order,
        });
    }
    let elements = g
        .elements()
        .iter()
        .flat_map(|a| h.elements().iter().map(move |b| a.direct_sum(b)))
        .collect();
    Ok(FiniteGroup::from_parts(g.degree() + h.degree(), product_generators(g, h), elements))
}

fn product_generators(g: &FiniteGroup, h: &FiniteGroup) -> Vec<Perm> {
    let ig = Perm::identity(g.degree());
    let ih = Perm::identity(h.degree());
    g.generators()
        .iter()
        .map(|a| a.direct_sum(&ih))
        .chain(h.generators().iter().map(|b| ig.direct_sum(b)))
        .collect()
}

/// A section `A/A0` of one factor.
struct Section {
    sub: usize,
    kernel: usize,
    table: QuotientTable,
    key: (usize, Vec<(usize, usize)>),
    /// Members of each coset, sorted.
    cosets: Vec<Vec<usize>>,
}

fn sections(g: &FiniteGroup, lattice: &[Sub]) -> Vec<Section> {
    let mut out = Vec::new();
    for (ai, a) in lattice.iter().enumerate() {
        for (ki, k) in lattice.iter().enumerate() {
            if k.order() > a.order() || !k.is_subset(a) || !is_normal_in_sub(g, a, k) {
                continue;
            }
            let table = QuotientTable::new(g, a, k);
            let mut cosets = vec![Vec::new(); table.order()];
            for x in a.set.ones() {
                cosets[table.coset(x).unwrap()].push(x);
            }
            let key = (table.order(), order_histogram(&table).into_iter().collect());
            out.push(Section {
                sub: ai,
                kernel: ki,
                table,
                key,
                cosets,
            });
        }
    }
    out
}

fn is_normal_in_sub(g: &FiniteGroup, a: &Sub, k: &Sub) -> bool {
    k.gens
        .iter()
        .all(|&s| a.gens.iter().all(|&c| k.contains(g.conj(s, c))))
}

/// Goursat data of one subgroup `H ≤ G1 × G2`: `A = π1(H)`, `A0 = H ∩ (G1 × 1)`,
/// `B = π2(H)`, `B0 = H ∩ (1 × G2)` (as indices into the subgroup lattices
/// of the factors) and the index of the isomorphism `A/A0 → B/B0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoursatCell {
    pub left: usize,
    pub left_kernel: usize,
    pub right: usize,
    pub right_kernel: usize,
    pub iso: usize,
    pub record: SubgroupRecord,
}

/// Streaming enumeration of every subgroup of `G1 × G2`, each exactly once.
///
/// The product group is never materialized; member indices follow the
/// element numbering of [`direct_product`].
pub struct GoursatSubgroups<'a> {
    g1: &'a FiniteGroup,
    g2: &'a FiniteGroup,
    lattice1: Vec<Sub>,
    lattice2: Vec<Sub>,
    sections1: Vec<Section>,
    sections2: Vec<Section>,
    parent: String,
    next1: usize,
    next2: usize,
    isos: Vec<Vec<usize>>,
    next_iso: usize,
}

pub fn goursat_subgroups<'a>(
    g1: &'a FiniteGroup,
    g2: &'a FiniteGroup,
    limits: &Limits,
) -> Result<GoursatSubgroups<'a>> {
    if g1.order().saturating_mul(g2.order()) > limits.max_product {
        return Err(Error::EnumerationTooLarge {
            cap: limits.max_product,
        });
    }
    g1.ensure_table();
    g2.ensure_table();
    let lattice1 = subgroup_lattice(g1);
    let lattice2 = subgroup_lattice(g2);
    let sections1 = sections(g1, &lattice1);
    let sections2 = sections(g2, &lattice2);
    let parent = GroupDescriptor {
        degree: g1.degree() + g2.degree(),
        generators: product_generators(g1, g2)
            .iter()
            .map(|p| p.images().to_vec())
            .collect(),
    }
    .hash();
    Ok(GoursatSubgroups {
        g1,
        g2,
        lattice1,
        lattice2,
        sections1,
        sections2,
        parent,
        next1: 0,
        next2: 0,
        isos: Vec::new(),
        next_iso: 0,
    })
}

impl<'a> GoursatSubgroups<'a> {
    pub fn left_lattice(&self) -> &[Sub] {
        &self.lattice1
    }

    pub fn right_lattice(&self) -> &[Sub] {
        &self.lattice2
    }

    /// Materializes the subgroup of a cell as a permutation group on the
    /// disjoint union of the factors' points.
    pub fn materialize(&self, cell: &GoursatCell) -> FiniteGroup {
        let n2 = self.g2.order();
        let elements = cell
            .record
            .members
            .iter()
            .map(|&m| {
                let (i, j) = (m as usize / n2, m as usize % n2);
                self.g1.element(i).direct_sum(self.g2.element(j))
            })
            .collect();
        FiniteGroup::from_closed_elements(self.g1.degree() + self.g2.degree(), elements)
    }

    /// `H ∩ (G1 × 1)` as a subgroup of the materialized cell, and whether
    /// it is normal there.
    pub fn left_kernel_is_normal(&self, cell: &GoursatCell, h: &FiniteGroup) -> bool {
        let id2 = self.g2.element(0);
        let members: Vec<usize> = self.lattice1[cell.left_kernel]
            .set
            .ones()
            .map(|i| h.index_of(&self.g1.element(i).direct_sum(id2)).expect("kernel lies in H"))
            .collect();
        let gens = super::sub::small_generating_set(h, &members);
        let f = Sub::generated(h, &gens);
        f.order() == members.len() && is_normal_in(h, &f)
    }

    fn build(&self, s1: &Section, s2: &Section, iso: &[usize], iso_index: usize) -> GoursatCell {
        let n2 = self.g2.order() as u32;
        let mut members: Vec<u32> = Vec::new();
        for x in self.lattice1[s1.sub].set.ones() {
            let c = s1.table.coset(x).unwrap();
            for &y in &s2.cosets[iso[c]] {
                members.push(x as u32 * n2 + y as u32);
            }
        }
        members.sort_unstable();
        GoursatCell {
            left: s1.sub,
            left_kernel: s1.kernel,
            right: s2.sub,
            right_kernel: s2.kernel,
            iso: iso_index,
            record: SubgroupRecord {
                parent: self.parent.clone(),
                order: members.len(),
                members,
                class_id: None,
            },
        }
    }
}

impl Iterator for GoursatSubgroups<'_> {
    type Item = GoursatCell;

    fn next(&mut self) -> Option<GoursatCell> {
        loop {
            if self.next1 >= self.sections1.len() {
                return None;
            }
            if self.next_iso < self.isos.len() {
                let k = self.next_iso;
                self.next_iso += 1;
                let s1 = &self.sections1[self.next1];
                let s2 = &self.sections2[self.next2 - 1];
                return Some(self.build(s1, s2, &self.isos[k], k));
            }
            // advance to the next section pair with matching invariants
            if self.next2 >= self.sections2.len() {
                self.next1 += 1;
                self.next2 = 0;
                self.isos.clear();
                self.next_iso = 0;
                continue;
            }
            let s1 = &self.sections1[self.next1];
            let s2 = &self.sections2[self.next2];
            self.next2 += 1;
            self.next_iso = 0;
            self.isos = if s1.key == s2.key {
                isomorphisms(&s1.table, &s2.table, None)
            } else {
                Vec::new()
            };
        }
    }
}
