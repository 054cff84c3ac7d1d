//! Subgroups as element-index sets, built with Dimino's coset method.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;

use super::IndexedGroup;

/// A subgroup of an [`IndexedGroup`]: membership bitset, element list and
/// a generating set.
#[derive(Clone, Debug)]
pub struct Sub {
    pub set: FixedBitSet,
    pub elems: Vec<usize>,
    pub gens: Vec<usize>,
}

impl Sub {
    pub fn trivial<G: IndexedGroup + ?Sized>(g: &G) -> Sub {
        let mut set = FixedBitSet::with_capacity(g.order());
        set.insert(g.identity());
        Sub {
            set,
            elems: vec![g.identity()],
            gens: Vec::new(),
        }
    }

    pub fn whole<G: IndexedGroup + ?Sized>(g: &G) -> Sub {
        let mut set = FixedBitSet::with_capacity(g.order());
        set.insert_range(..);
        Sub {
            set,
            elems: (0..g.order()).collect(),
            gens: g.generator_indices(),
        }
    }

    pub fn generated<G: IndexedGroup + ?Sized>(g: &G, gens: &[usize]) -> Sub {
        gens.iter()
            .fold(Sub::trivial(g), |acc, &x| acc.extend(g, x))
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.set.contains(x)
    }

    pub fn is_subset(&self, other: &Sub) -> bool {
        self.set.is_subset(&other.set)
    }

    /// `⟨self, x⟩`. The new elements are added one right coset of `self`
    /// at a time.
    pub fn extend<G: IndexedGroup + ?Sized>(&self, g: &G, x: usize) -> Sub {
        if self.set.contains(x) {
            return self.clone();
        }
        let base = &self.elems;
        let mut set = self.set.clone();
        let mut elems = self.elems.clone();
        let mut gens = self.gens.clone();
        gens.push(x);
        let mut reps = vec![g.identity()];
        let mut pos = 0;
        while pos < reps.len() {
            let r = reps[pos];
            pos += 1;
            for &s in &gens {
                let y = g.mul(r, s);
                if set.contains(y) {
                    continue;
                }
                for &h in base {
                    let z = g.mul(h, y);
                    set.insert(z);
                    elems.push(z);
                }
                reps.push(y);
            }
        }
        Sub { set, elems, gens }
    }

    /// Join with another subgroup.
    pub fn join<G: IndexedGroup + ?Sized>(&self, g: &G, other: &Sub) -> Sub {
        other.gens.iter().fold(self.clone(), |acc, &x| acc.extend(g, x))
    }

    pub fn sorted_elems(&self) -> Vec<usize> {
        self.set.ones().collect()
    }

    /// Image under `x ↦ c⁻¹ x c`.
    pub fn conjugate<G: IndexedGroup + ?Sized>(&self, g: &G, c: usize) -> Sub {
        let mut set = FixedBitSet::with_capacity(g.order());
        let elems: Vec<usize> = self
            .elems
            .iter()
            .map(|&x| {
                let y = g.conj(x, c);
                set.insert(y);
                y
            })
            .collect();
        let gens = self.gens.iter().map(|&x| g.conj(x, c)).collect();
        Sub { set, elems, gens }
    }
}

/// Greedy generating set of the subgroup with the given elements, trying
/// elements of large order first.
pub fn small_generating_set<G: IndexedGroup + ?Sized>(g: &G, elems: &[usize]) -> Vec<usize> {
    let mut by_order: Vec<(usize, usize)> = elems.iter().map(|&x| (g.element_order(x), x)).collect();
    by_order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    let mut cur = Sub::trivial(g);
    let target = elems.len();
    for (_, x) in by_order {
        if cur.order() == target {
            break;
        }
        if !cur.contains(x) {
            cur = cur.extend(g, x);
        }
    }
    cur.gens
}

/// Smallest normal subgroup of `g` containing `seed`.
pub fn normal_closure<G: IndexedGroup + ?Sized>(g: &G, seed: &Sub) -> Sub {
    let ggens = g.generator_indices();
    let mut cur = seed.clone();
    loop {
        let mut grew = false;
        let gens = cur.gens.clone();
        for &s in &gens {
            for &c in &ggens {
                let y = g.conj(s, c);
                if !cur.contains(y) {
                    cur = cur.extend(g, y);
                    grew = true;
                }
            }
        }
        if !grew {
            return cur;
        }
    }
}

/// Whether `h` is normalized by every element of `g`.
pub fn is_normal_in<G: IndexedGroup + ?Sized>(g: &G, h: &Sub) -> bool {
    let ggens = g.generator_indices();
    h.gens
        .iter()
        .all(|&s| ggens.iter().all(|&c| h.contains(g.conj(s, c))))
}

/// Commutator subgroup `[G, G]`.
pub fn derived_subgroup<G: IndexedGroup + ?Sized>(g: &G) -> Sub {
    let gens = g.generator_indices();
    let mut seed = Sub::trivial(g);
    for &a in &gens {
        for &b in &gens {
            let comm = g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b));
            seed = seed.extend(g, comm);
        }
    }
    normal_closure(g, &seed)
}

/// Conjugacy classes of elements, each sorted, ordered by least member.
pub fn element_classes<G: IndexedGroup + ?Sized>(g: &G) -> Vec<Vec<usize>> {
    let n = g.order();
    let gens = g.generator_indices();
    let mut assigned = vec![false; n];
    let mut classes = Vec::new();
    for start in 0..n {
        if assigned[start] {
            continue;
        }
        assigned[start] = true;
        let mut class = vec![start];
        let mut head = 0;
        while head < class.len() {
            let x = class[head];
            head += 1;
            for &c in &gens {
                let y = g.conj(x, c);
                if !assigned[y] {
                    assigned[y] = true;
                    class.push(y);
                }
            }
        }
        class.sort_unstable();
        classes.push(class);
    }
    classes
}

/// Map from element order to the number of elements of that order.
pub fn order_histogram<G: IndexedGroup + ?Sized>(g: &G) -> BTreeMap<usize, usize> {
    let mut hist = BTreeMap::new();
    for x in 0..g.order() {
        *hist.entry(g.element_order(x)).or_insert(0) += 1;
    }
    hist
}
