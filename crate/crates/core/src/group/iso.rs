//! Isomorphism testing: invariant pruning, then generator-image backtracking.

use fixedbitset::FixedBitSet;

use super::sub::{derived_subgroup, element_classes, order_histogram, small_generating_set};
use super::{FiniteGroup, IndexedGroup};

/// Cheap isomorphism invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupInvariants {
    pub order: usize,
    pub histogram: Vec<(usize, usize)>,
    pub abelianization_order: usize,
    pub class_count: usize,
}

pub fn invariants<G: IndexedGroup + ?Sized>(g: &G) -> GroupInvariants {
    GroupInvariants {
        order: g.order(),
        histogram: order_histogram(g).into_iter().collect(),
        abelianization_order: g.order() / derived_subgroup(g).order(),
        class_count: element_classes(g).len(),
    }
}

pub fn isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    if a.order() != b.order() {
        return false;
    }
    a.ensure_table();
    b.ensure_table();
    if invariants(a) != invariants(b) {
        return false;
    }
    !isomorphisms(a, b, Some(1)).is_empty()
}

/// Isomorphisms `g → h`, each as the image index of every element of `g`,
/// in lexicographic order of generator images. Stops after `limit` maps.
pub fn isomorphisms<G, H>(g: &G, h: &H, limit: Option<usize>) -> Vec<Vec<usize>>
where
    G: IndexedGroup + ?Sized,
    H: IndexedGroup + ?Sized,
{
    let mut out = Vec::new();
    if g.order() != h.order() {
        return out;
    }
    let all: Vec<usize> = (0..g.order()).collect();
    let gens = small_generating_set(g, &all);
    if gens.is_empty() {
        return vec![vec![h.identity()]];
    }
    let h_orders: Vec<usize> = (0..h.order()).map(|y| h.element_order(y)).collect();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| {
            let ord = g.element_order(x);
            (0..h.order()).filter(|&y| h_orders[y] == ord).collect()
        })
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    search(g, h, &gens, &candidates, &mut images, limit, &mut out);
    out
}

/// The partial homomorphism on `⟨gens[..images.len()]⟩` determined by the
/// chosen images, if it is well defined and injective.
fn extend_map<G, H>(g: &G, h: &H, gens: &[usize], images: &[usize]) -> Option<Vec<u32>>
where
    G: IndexedGroup + ?Sized,
    H: IndexedGroup + ?Sized,
{
    let mut map = vec![u32::MAX; g.order()];
    let mut used = FixedBitSet::with_capacity(h.order());
    map[g.identity()] = h.identity() as u32;
    used.insert(h.identity());
    let mut queue = vec![g.identity()];
    let mut head = 0;
    while head < queue.len() {
        let z = queue[head];
        head += 1;
        let fz = map[z] as usize;
        for (&s, &t) in gens.iter().zip(images) {
            let w = g.mul(z, s);
            let fw = h.mul(fz, t);
            if map[w] == u32::MAX {
                if used.contains(fw) {
                    return None;
                }
                used.insert(fw);
                map[w] = fw as u32;
                queue.push(w);
            } else if map[w] as usize != fw {
                return None;
            }
        }
    }
    Some(map)
}

fn search<G, H>(
    g: &G,
    h: &H,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
    limit: Option<usize>,
    out: &mut Vec<Vec<usize>>,
) where
    G: IndexedGroup + ?Sized,
    H: IndexedGroup + ?Sized,
{
    if limit.is_some_and(|l| out.len() >= l) {
        return;
    }
    let level = images.len();
    for &y in &candidates[level] {
        images.push(y);
        if let Some(map) = extend_map(g, h, &gens[..=level], images) {
            if level + 1 == gens.len() {
                out.push(map.into_iter().map(|v| v as usize).collect());
            } else {
                search(g, h, gens, candidates, images, limit, out);
            }
        }
        images.pop();
        if limit.is_some_and(|l| out.len() >= l) {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{alternating, cyclic, dihedral, direct_product, klein_four, symmetric};

    #[test]
    fn c6_is_c2_times_c3() {
        let p = direct_product(&cyclic(2), &cyclic(3)).unwrap();
        assert!(isomorphic(&cyclic(6), &p));
    }

    #[test]
    fn d6_is_not_a4() {
        let d6 = dihedral(6);
        let a4 = alternating(4);
        assert_eq!(d6.order(), a4.order());
        // element-order histograms differ, by direct count
        let count = |g: &FiniteGroup, k: u64| g.elements().iter().filter(|p| p.order() == k).count();
        assert_eq!(count(&d6, 2), 7);
        assert_eq!(count(&a4, 2), 3);
        assert!(!isomorphic(&d6, &a4));
    }

    #[test]
    fn automorphism_counts() {
        // |Aut(S3)| = 6, |Aut(V4)| = 6, |Aut(C5)| = 4, |Aut(A5)| = 120
        assert_eq!(isomorphisms(&symmetric(3), &symmetric(3), None).len(), 6);
        assert_eq!(isomorphisms(&klein_four(), &klein_four(), None).len(), 6);
        assert_eq!(isomorphisms(&cyclic(5), &cyclic(5), None).len(), 4);
        let a5 = alternating(5);
        a5.ensure_table();
        assert_eq!(isomorphisms(&a5, &a5, None).len(), 120);
    }

    #[test]
    fn trivial_groups() {
        assert!(isomorphic(&cyclic(1), &crate::group::trivial()));
        assert_eq!(isomorphisms(&cyclic(1), &cyclic(1), None).len(), 1);
    }

    #[test]
    fn isomorphisms_are_homomorphisms() {
        let g = dihedral(4);
        for map in isomorphisms(&g, &g, None) {
            for a in 0..8 {
                for b in 0..8 {
                    assert_eq!(map[g.mul(a, b)], g.mul(map[a], map[b]));
                }
            }
        }
    }
}
