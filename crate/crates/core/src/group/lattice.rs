//! Subgroup lattice enumeration by cyclic extension.

use std::collections::HashMap;

use fixedbitset::FixedBitSet;

use super::sub::Sub;
use super::{FiniteGroup, IndexedGroup, Limits, SubgroupRecord};
use crate::error::{Error, Result};

/// Every subgroup of `g`, built up layer by layer: each layer extends the
/// subgroups of the previous one by a single cyclic subgroup. Every
/// subgroup is the join of its cyclic subgroups, so this reaches perfect
/// subgroups too.
pub(crate) fn subgroup_lattice<G: IndexedGroup + ?Sized>(g: &G) -> Vec<Sub> {
    let n = g.order();
    let mut seen: HashMap<FixedBitSet, ()> = HashMap::new();
    let mut cyclic_gens: Vec<usize> = Vec::new();
    let mut subs: Vec<Sub> = Vec::new();
    for x in 0..n {
        let c = Sub::generated(g, &[x]);
        if seen.insert(c.set.clone(), ()).is_none() {
            if x != g.identity() {
                cyclic_gens.push(x);
            }
            subs.push(c);
        }
    }
    let mut frontier: Vec<usize> = (0..subs.len()).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &u in &frontier {
            for &x in &cyclic_gens {
                if subs[u].contains(x) {
                    continue;
                }
                let v = subs[u].extend(g, x);
                if seen.insert(v.set.clone(), ()).is_none() {
                    next.push(subs.len());
                    subs.push(v);
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

pub fn all_subgroups(g: &FiniteGroup) -> Result<Vec<SubgroupRecord>> {
    all_subgroups_with(g, &Limits::default())
}

/// All subgroups sorted by `(order, member indices)`, including the
/// trivial group and `g` itself.
pub fn all_subgroups_with(g: &FiniteGroup, limits: &Limits) -> Result<Vec<SubgroupRecord>> {
    if g.order() > limits.max_order {
        return Err(Error::EnumerationTooLarge {
            cap: limits.max_order,
        });
    }
    g.ensure_table();
    Ok(subgroup_lattice(g).iter().map(|s| g.record_of(s)).collect())
}

/// Partition of the subgroups into conjugacy classes. Each class is
/// sorted canonically, so its first entry is the representative; classes
/// are ordered by representative and carry `class_id` = their position.
pub fn conjugacy_classes_of_subgroups(g: &FiniteGroup) -> Result<Vec<Vec<SubgroupRecord>>> {
    let records = all_subgroups(g)?;
    let index: HashMap<&[u32], usize> = records
        .iter()
        .enumerate()
        .map(|(i, r)| (r.members.as_slice(), i))
        .collect();
    let gens = g.generator_indices();
    let mut class_of = vec![usize::MAX; records.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for start in 0..records.len() {
        if class_of[start] != usize::MAX {
            continue;
        }
        let cid = classes.len();
        class_of[start] = cid;
        let mut members = vec![start];
        let mut head = 0;
        while head < members.len() {
            let r = &records[members[head]];
            head += 1;
            for &c in &gens {
                let mut conj: Vec<u32> = r
                    .members
                    .iter()
                    .map(|&x| g.conj(x as usize, c) as u32)
                    .collect();
                conj.sort_unstable();
                let j = index[conj.as_slice()];
                if class_of[j] == usize::MAX {
                    class_of[j] = cid;
                    members.push(j);
                }
            }
        }
        members.sort_unstable();
        classes.push(members);
    }
    // records are already canonically sorted, so sorting member index
    // lists sorts each class and the smallest index is the representative
    classes.sort_by_key(|c| c[0]);
    Ok(classes
        .into_iter()
        .enumerate()
        .map(|(cid, members)| {
            members
                .into_iter()
                .map(|i| SubgroupRecord {
                    class_id: Some(cid),
                    ..records[i].clone()
                })
                .collect()
        })
        .collect())
}
