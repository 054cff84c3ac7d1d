//! Normal subgroups, quotient groups and nonabelian simple quotients.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use super::sub::{element_classes, normal_closure, Sub};
use super::{FiniteGroup, IndexedGroup, SubgroupRecord};
use crate::error::{Error, Result};
use crate::perm::Perm;

/// Abstract quotient `A / A0` of a subgroup `A` of some indexed group by a
/// normal subgroup `A0 ⊴ A`, stored as a coset multiplication table.
#[derive(Clone, Debug)]
pub struct QuotientTable {
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    gens: Vec<usize>,
    /// Coset of each parent element, `u32::MAX` outside `A`.
    coset_of: Vec<u32>,
    /// Least parent element of each coset.
    reps: Vec<usize>,
}

impl QuotientTable {
    pub fn new<G: IndexedGroup + ?Sized>(g: &G, a: &Sub, a0: &Sub) -> QuotientTable {
        let mut coset_of = vec![u32::MAX; g.order()];
        let mut reps = Vec::new();
        for x in a.set.ones() {
            if coset_of[x] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            for &n in &a0.elems {
                coset_of[g.mul(x, n)] = id;
            }
        }
        let order = reps.len();
        let mut table = vec![0u32; order * order];
        for i in 0..order {
            for j in 0..order {
                table[i * order + j] = coset_of[g.mul(reps[i], reps[j])];
            }
        }
        let inverses = reps.iter().map(|&r| coset_of[g.inv(r)]).collect();
        let mut gens: Vec<usize> = a
            .gens
            .iter()
            .map(|&x| coset_of[x] as usize)
            .filter(|&c| c != 0)
            .collect();
        gens.sort_unstable();
        gens.dedup();
        QuotientTable {
            order,
            table,
            inverses,
            gens,
            coset_of,
            reps,
        }
    }

    /// Coset of a parent element of `A`.
    pub fn coset(&self, parent_element: usize) -> Option<usize> {
        match self.coset_of.get(parent_element) {
            Some(&c) if c != u32::MAX => Some(c as usize),
            _ => None,
        }
    }

    pub fn representative(&self, coset: usize) -> usize {
        self.reps[coset]
    }
}

impl IndexedGroup for QuotientTable {
    fn order(&self) -> usize {
        self.order
    }

    fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    fn inv(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    fn generator_indices(&self) -> Vec<usize> {
        self.gens.clone()
    }
}

/// All normal subgroups, as index sets, sorted by `(order, members)`.
pub(crate) fn normal_subs<G: IndexedGroup + ?Sized>(g: &G) -> Vec<Sub> {
    let mut seen: HashMap<FixedBitSet, usize> = HashMap::new();
    let mut subs: Vec<Sub> = Vec::new();
    let trivial = Sub::trivial(g);
    seen.insert(trivial.set.clone(), 0);
    subs.push(trivial);
    // every normal subgroup is a join of normal closures of single elements
    let mut atoms = Vec::new();
    for class in element_classes(g) {
        let nc = normal_closure(g, &Sub::generated(g, &[class[0]]));
        if !seen.contains_key(&nc.set) {
            seen.insert(nc.set.clone(), subs.len());
            atoms.push(subs.len());
            subs.push(nc);
        }
    }
    let mut frontier: Vec<usize> = atoms.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &u in &frontier {
            for &a in &atoms {
                if subs[a].is_subset(&subs[u]) {
                    continue;
                }
                let j = subs[u].join(g, &subs[a]);
                if !seen.contains_key(&j.set) {
                    seen.insert(j.set.clone(), subs.len());
                    next.push(subs.len());
                    subs.push(j);
                }
            }
        }
        frontier = next;
    }
    subs.sort_by(|a, b| {
        a.order()
            .cmp(&b.order())
            .then_with(|| a.set.ones().cmp(b.set.ones()))
    });
    subs
}

pub fn normal_subgroups(g: &FiniteGroup) -> Result<Vec<SubgroupRecord>> {
    if g.order() > super::DEFAULT_ORDER_CAP {
        return Err(Error::EnumerationTooLarge {
            cap: super::DEFAULT_ORDER_CAP,
        });
    }
    Ok(normal_subs(g).iter().map(|s| g.record_of(s)).collect())
}

/// Isomorphism-class label of a group: its order and sorted element-order
/// histogram.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IsoLabel {
    pub order: usize,
    pub histogram: Vec<(usize, usize)>,
}

impl IsoLabel {
    pub fn of<G: IndexedGroup + ?Sized>(g: &G) -> IsoLabel {
        IsoLabel {
            order: g.order(),
            histogram: super::sub::order_histogram(g).into_iter().collect(),
        }
    }

    /// Label of the alternating group on five letters.
    pub fn a5() -> IsoLabel {
        IsoLabel {
            order: 60,
            histogram: vec![(1, 1), (2, 15), (3, 20), (5, 24)],
        }
    }

    /// Conventional name for the small simple groups this crate meets.
    pub fn name(&self) -> Option<&'static str> {
        let h: Vec<(usize, usize)> = self.histogram.clone();
        match (self.order, h.as_slice()) {
            (60, [(1, 1), (2, 15), (3, 20), (5, 24)]) => Some("A5"),
            (168, [(1, 1), (2, 21), (3, 56), (4, 42), (7, 48)]) => Some("PSL(2,7)"),
            (360, [(1, 1), (2, 45), (3, 80), (4, 90), (5, 144)]) => Some("A6"),
            _ => None,
        }
    }
}

impl fmt::Display for IsoLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.name() {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "simple[{}]", self.order),
        }
    }
}

/// Label of `G/N` computed from coset orders, without building `G/N`.
fn quotient_label<G: IndexedGroup + ?Sized>(g: &G, n: &Sub) -> IsoLabel {
    let mut hist: BTreeMap<usize, usize> = BTreeMap::new();
    for x in 0..g.order() {
        let mut k = 1;
        let mut y = x;
        while !n.contains(y) {
            y = g.mul(y, x);
            k += 1;
        }
        *hist.entry(k).or_insert(0) += 1;
    }
    IsoLabel {
        order: g.order() / n.order(),
        histogram: hist.into_iter().map(|(k, c)| (k, c / n.order())).collect(),
    }
}

pub(crate) fn simple_nonabelian_quotient_labels<G: IndexedGroup + ?Sized>(g: &G) -> Vec<IsoLabel> {
    let normals = normal_subs(g);
    let full = g.order();
    let gens = g.generator_indices();
    let mut labels = BTreeSet::new();
    for (i, n) in normals.iter().enumerate() {
        if n.order() == full {
            continue;
        }
        let maximal = normals[i + 1..]
            .iter()
            .all(|m| m.order() == full || !n.is_subset(m) || m.order() == n.order());
        if !maximal {
            continue;
        }
        let nonabelian = gens.iter().any(|&a| {
            gens.iter().any(|&b| {
                let comm = g.mul(g.mul(g.inv(a), g.inv(b)), g.mul(a, b));
                !n.contains(comm)
            })
        });
        if nonabelian {
            labels.insert(quotient_label(g, n));
        }
    }
    labels.into_iter().collect()
}

/// Labels of the nonabelian simple groups `Q ≅ G/N`, one per isomorphism
/// class, sorted.
pub fn simple_nonabelian_quotients(g: &FiniteGroup) -> Result<Vec<IsoLabel>> {
    if g.order() > super::DEFAULT_ORDER_CAP {
        return Err(Error::EnumerationTooLarge {
            cap: super::DEFAULT_ORDER_CAP,
        });
    }
    Ok(simple_nonabelian_quotient_labels(g))
}

/// Whether some subgroup has index two, i.e. the squares do not generate.
pub fn has_index_two_subgroup<G: IndexedGroup + ?Sized>(g: &G) -> bool {
    let squares: Vec<usize> = (0..g.order()).map(|x| g.mul(x, x)).collect();
    Sub::generated(g, &squares).order() != g.order()
}

#[derive(Clone, Debug)]
enum Domain {
    /// Orbits of `N` on tuples of points; `lookup` sends each tuple to its
    /// orbit, `reps` holds one tuple per orbit.
    Tuples {
        reps: Vec<Vec<usize>>,
        lookup: HashMap<Vec<usize>, u32>,
    },
    /// Left cosets `xN`, acted on by left multiplication.
    Cosets {
        parent: Box<FiniteGroup>,
        reps: Vec<usize>,
        coset_of: Vec<u32>,
    },
}

/// `G/N` realized as a permutation group, together with the quotient map.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    quotient: FiniteGroup,
    domain: Domain,
}

impl QuotientMap {
    pub fn group(&self) -> &FiniteGroup {
        &self.quotient
    }

    pub fn into_group(self) -> FiniteGroup {
        self.quotient
    }

    /// Image of an element of `G`.
    pub fn image(&self, g: &Perm) -> Perm {
        match &self.domain {
            Domain::Tuples { reps, lookup } => {
                let images = reps
                    .iter()
                    .map(|t| {
                        let moved: Vec<usize> = t.iter().map(|&x| g.apply(x)).collect();
                        lookup[&moved]
                    })
                    .collect();
                Perm::from_images_unchecked(images)
            }
            Domain::Cosets {
                parent,
                reps,
                coset_of,
            } => {
                let gi = parent.index_of(g).expect("element of the parent group");
                let images = reps.iter().map(|&r| coset_of[parent.mul(gi, r)]).collect();
                Perm::from_images_unchecked(images)
            }
        }
    }
}

fn tuple_domain(n_elems: &[Perm], tuples: Vec<Vec<usize>>) -> (Vec<Vec<usize>>, HashMap<Vec<usize>, u32>) {
    let mut lookup: HashMap<Vec<usize>, u32> = HashMap::new();
    let mut reps = Vec::new();
    for t in tuples {
        if lookup.contains_key(&t) {
            continue;
        }
        let id = reps.len() as u32;
        for n in n_elems {
            lookup.insert(t.iter().map(|&x| n.apply(x)).collect(), id);
        }
        reps.push(t);
    }
    (reps, lookup)
}

/// `G/N` as a permutation group. The action is chosen among `N`-orbits on
/// points, on pairs of points, and finally the regular action on cosets;
/// the first one whose kernel is exactly `N` wins.
pub fn quotient(g: &FiniteGroup, n: &SubgroupRecord) -> Result<QuotientMap> {
    if !g.is_subgroup(n) {
        return Err(Error::NotASubgroup);
    }
    let nsub = {
        let idx: Vec<usize> = n.members.iter().map(|&m| m as usize).collect();
        let mut s = Sub::generated(g, &super::sub::small_generating_set(g, &idx));
        s.elems.sort_unstable();
        s
    };
    if !super::sub::is_normal_in(g, &nsub) {
        return Err(Error::NotNormal);
    }
    let target = g.order() / n.order;
    let n_elems: Vec<Perm> = nsub.elems.iter().map(|&i| g.element(i).clone()).collect();

    let try_tuples = |tuples: Vec<Vec<usize>>| -> Option<QuotientMap> {
        let (reps, lookup) = tuple_domain(&n_elems, tuples);
        let map = QuotientMap {
            quotient: super::trivial(),
            domain: Domain::Tuples { reps, lookup },
        };
        let gens: Vec<Perm> = g.generators().iter().map(|x| map.image(x)).collect();
        let degree = match &map.domain {
            Domain::Tuples { reps, .. } => reps.len(),
            Domain::Cosets { .. } => unreachable!(),
        };
        let q = FiniteGroup::closure_with_cap(degree, gens, target).ok()?;
        (q.order() == target).then_some(QuotientMap { quotient: q, ..map })
    };

    let points: Vec<Vec<usize>> = (0..g.degree()).map(|x| vec![x]).collect();
    if let Some(m) = try_tuples(points.clone()) {
        return Ok(m);
    }
    let orbits = g.orbits();
    let mut all_pairs = points.clone();
    for i in 0..orbits.len() {
        for j in i..orbits.len() {
            let pairs: Vec<Vec<usize>> = orbits[i]
                .iter()
                .flat_map(|&x| orbits[j].iter().map(move |&y| vec![x, y]))
                .collect();
            let mut candidate = points.clone();
            candidate.extend(pairs.iter().cloned());
            if let Some(m) = try_tuples(candidate) {
                return Ok(m);
            }
            all_pairs.extend(pairs);
        }
    }
    if orbits.len() > 1 {
        if let Some(m) = try_tuples(all_pairs) {
            return Ok(m);
        }
    }
    Ok(regular_quotient(g, &nsub))
}

fn regular_quotient(g: &FiniteGroup, n: &Sub) -> QuotientMap {
    let mut coset_of = vec![u32::MAX; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if coset_of[x] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        for &m in &n.elems {
            coset_of[g.mul(x, m)] = id;
        }
        reps.push(x);
    }
    let domain = Domain::Cosets {
        parent: Box::new(g.clone()),
        reps: reps.clone(),
        coset_of,
    };
    let map = QuotientMap {
        quotient: super::trivial(),
        domain,
    };
    let gens: Vec<Perm> = g.generators().iter().map(|x| map.image(x)).collect();
    let q = FiniteGroup::closure_with_cap(reps.len(), gens, reps.len()).expect("coset action");
    QuotientMap { quotient: q, ..map }
}

/// `G/⟨z⟩` for a central involution `z`.
pub fn central_quotient(g: &FiniteGroup, z: &Perm) -> Result<QuotientMap> {
    let zi = g.index_of(z).ok_or(Error::NotCentralInvolution)?;
    if zi == g.identity() || g.mul(zi, zi) != g.identity() {
        return Err(Error::NotCentralInvolution);
    }
    let central = g
        .generator_indices()
        .iter()
        .all(|&s| g.mul(s, zi) == g.mul(zi, s));
    if !central {
        return Err(Error::NotCentralInvolution);
    }
    let rec = g.subgroup_record(&[g.identity(), zi])?;
    quotient(g, &rec)
}
