//! Finite rotation groups, their binary covers, and checks on which
//! nonabelian simple groups occur as quotients of their subgroups and of
//! subgroups of products.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{
    self, central_quotient, conjugacy_classes_of_subgroups, direct_product_with,
    goursat_subgroups, simple_nonabelian_quotients, FiniteGroup, IsoLabel, Limits,
};
use crate::perm::Perm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    Cyclic(usize),
    Dihedral(usize),
    Tetrahedral,
    Octahedral,
    Icosahedral,
    BinaryCyclic(usize),
    BinaryDihedral(usize),
    BinaryTetrahedral,
    BinaryOctahedral,
    BinaryIcosahedral,
}

impl GroupKind {
    pub fn expected_order(self) -> usize {
        match self {
            GroupKind::Cyclic(n) => n,
            GroupKind::Dihedral(n) => 2 * n,
            GroupKind::Tetrahedral => 12,
            GroupKind::Octahedral => 24,
            GroupKind::Icosahedral => 60,
            GroupKind::BinaryCyclic(n) => 2 * n,
            GroupKind::BinaryDihedral(n) => 4 * n,
            GroupKind::BinaryTetrahedral => 24,
            GroupKind::BinaryOctahedral => 48,
            GroupKind::BinaryIcosahedral => 120,
        }
    }

    pub fn is_binary(self) -> bool {
        matches!(
            self,
            GroupKind::BinaryCyclic(_)
                | GroupKind::BinaryDihedral(_)
                | GroupKind::BinaryTetrahedral
                | GroupKind::BinaryOctahedral
                | GroupKind::BinaryIcosahedral
        )
    }

    /// The rotation group a binary kind covers; rotation kinds map to
    /// themselves.
    pub fn rotation_image(self) -> GroupKind {
        match self {
            GroupKind::BinaryCyclic(n) => GroupKind::Cyclic(n),
            GroupKind::BinaryDihedral(n) => GroupKind::Dihedral(n),
            GroupKind::BinaryTetrahedral => GroupKind::Tetrahedral,
            GroupKind::BinaryOctahedral => GroupKind::Octahedral,
            GroupKind::BinaryIcosahedral => GroupKind::Icosahedral,
            k => k,
        }
    }
}

impl fmt::Display for GroupKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupKind::Cyclic(n) => write!(f, "C{n}"),
            GroupKind::Dihedral(n) => write!(f, "D{n}"),
            GroupKind::Tetrahedral => write!(f, "T"),
            GroupKind::Octahedral => write!(f, "O"),
            GroupKind::Icosahedral => write!(f, "I"),
            GroupKind::BinaryCyclic(n) => write!(f, "2C{n}"),
            GroupKind::BinaryDihedral(n) => write!(f, "2D{n}"),
            GroupKind::BinaryTetrahedral => write!(f, "2T"),
            GroupKind::BinaryOctahedral => write!(f, "2O"),
            GroupKind::BinaryIcosahedral => write!(f, "2I"),
        }
    }
}

impl std::str::FromStr for GroupKind {
    type Err = Error;

    /// Accepts the display names (`C5`, `D3`, `T`, `2I`, ...) and the
    /// aliases `A4`, `S4`, `A5`, `S3`.
    fn from_str(s: &str) -> Result<GroupKind> {
        let bad = || Error::Domain(format!("unknown group name {s:?}"));
        let index = |rest: &str| -> Result<usize> {
            match rest.parse::<usize>() {
                Ok(n) if n >= 1 => Ok(n),
                _ => Err(bad()),
            }
        };
        let (binary, body) = match s.strip_prefix('2') {
            Some(rest) if !rest.is_empty() && !rest.starts_with(|c: char| c.is_ascii_digit()) => (true, rest),
            _ => (false, s),
        };
        let kind = match body {
            "T" | "A4" => GroupKind::Tetrahedral,
            "O" | "S4" => GroupKind::Octahedral,
            "I" | "A5" => GroupKind::Icosahedral,
            "S3" => GroupKind::Dihedral(3),
            _ if body.starts_with('C') => GroupKind::Cyclic(index(&body[1..])?),
            _ if body.starts_with('D') => {
                let n = index(&body[1..])?;
                if n < 2 {
                    return Err(bad());
                }
                GroupKind::Dihedral(n)
            }
            _ => return Err(bad()),
        };
        if !binary {
            return Ok(kind);
        }
        Ok(match kind {
            GroupKind::Cyclic(n) => GroupKind::BinaryCyclic(n),
            GroupKind::Dihedral(n) => GroupKind::BinaryDihedral(n),
            GroupKind::Tetrahedral => GroupKind::BinaryTetrahedral,
            GroupKind::Octahedral => GroupKind::BinaryOctahedral,
            _ => GroupKind::BinaryIcosahedral,
        })
    }
}

/// A catalog group with its permutation realization and, for binary kinds,
/// the central involution covering the identity rotation.
#[derive(Debug, Clone)]
pub struct GroupSpec {
    pub kind: GroupKind,
    pub group: FiniteGroup,
    pub central_involution: Option<Perm>,
}

impl GroupSpec {
    pub fn new(kind: GroupKind) -> GroupSpec {
        let (group, central_involution) = realize(kind);
        GroupSpec {
            kind,
            group,
            central_involution,
        }
    }

    /// Checks the order, and for binary kinds that the involution is
    /// central and the quotient by it is the covered rotation group.
    pub fn verify(&self) -> Result<bool> {
        if self.group.order() != self.kind.expected_order() {
            return Ok(false);
        }
        match (&self.central_involution, self.kind.is_binary()) {
            (None, false) => Ok(true),
            (Some(z), true) => {
                let q = central_quotient(&self.group, z)?;
                let image = GroupSpec::new(self.kind.rotation_image());
                Ok(group::isomorphic(q.group(), &image.group))
            }
            _ => Ok(false),
        }
    }
}

fn realize(kind: GroupKind) -> (FiniteGroup, Option<Perm>) {
    match kind {
        GroupKind::Cyclic(n) => (group::cyclic(n), None),
        GroupKind::Dihedral(n) => (group::dihedral(n), None),
        GroupKind::Tetrahedral => (group::alternating(4), None),
        GroupKind::Octahedral => (group::symmetric(4), None),
        GroupKind::Icosahedral => (group::alternating(5), None),
        GroupKind::BinaryCyclic(n) => {
            let g = group::cyclic(2 * n);
            let z = g.generators()[0].pow(n as u64);
            (g, Some(z))
        }
        GroupKind::BinaryDihedral(n) => dicyclic(n),
        GroupKind::BinaryTetrahedral => special_linear_2(3),
        GroupKind::BinaryOctahedral => binary_octahedral(),
        GroupKind::BinaryIcosahedral => special_linear_2(5),
    }
}

/// Dicyclic group of order `4n`, `⟨a, x | a²ⁿ = 1, x² = aⁿ, x⁻¹ax = a⁻¹⟩`,
/// in its left regular action. Element `aᵏxʲ` is point `2k + j`.
fn dicyclic(n: usize) -> (FiniteGroup, Option<Perm>) {
    let m = 2 * n;
    let point = |k: usize, j: usize| 2 * (k % m) + j;
    let mut a = vec![0u32; 2 * m];
    let mut x = vec![0u32; 2 * m];
    let mut z = vec![0u32; 2 * m];
    for k in 0..m {
        for j in 0..2 {
            a[point(k, j)] = point(k + 1, j) as u32;
            z[point(k, j)] = point(k + n, j) as u32;
        }
        x[point(k, 0)] = point(m - k, 1) as u32;
        x[point(k, 1)] = point(n + m - k, 0) as u32;
    }
    let gens = vec![Perm::new(a).unwrap(), Perm::new(x).unwrap()];
    let g = FiniteGroup::closure(2 * m, gens).expect("dicyclic closure");
    (g, Some(Perm::new(z).unwrap()))
}

/// `SL(2, p)` acting on the nonzero vectors of `F_p²`, generated by
/// `[[0,-1],[1,0]]` and `[[1,1],[0,1]]`, with `-I` as the involution.
fn special_linear_2(p: usize) -> (FiniteGroup, Option<Perm>) {
    let vectors: Vec<(usize, usize)> = (0..p)
        .flat_map(|a| (0..p).map(move |b| (a, b)))
        .filter(|&v| v != (0, 0))
        .collect();
    let index: HashMap<(usize, usize), usize> = vectors.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let act = |m: [[usize; 2]; 2]| {
        let images = vectors
            .iter()
            .map(|&(a, b)| {
                let v = ((m[0][0] * a + m[0][1] * b) % p, (m[1][0] * a + m[1][1] * b) % p);
                index[&v] as u32
            })
            .collect();
        Perm::new(images).unwrap()
    };
    let gens = vec![act([[0, p - 1], [1, 0]]), act([[1, 1], [0, 1]])];
    let z = act([[p - 1, 0], [0, p - 1]]);
    (FiniteGroup::closure(vectors.len(), gens).expect("SL(2,p) closure"), Some(z))
}

/// Quaternion `a + bi + cj + dk` over `F_7`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Quat([u8; 4]);

impl Quat {
    fn mul(self, other: Quat) -> Quat {
        let [a1, b1, c1, d1] = self.0.map(i64::from);
        let [a2, b2, c2, d2] = other.0.map(i64::from);
        let r = [
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ];
        Quat(r.map(|x| x.rem_euclid(7) as u8))
    }
}

/// The binary octahedral group as unit quaternions over `F_7`: the Hurwitz
/// units extended by `(1 + i)/√2`, using `1/2 = 4` and `1/√2 = 5`. Acts on
/// itself by left multiplication.
fn binary_octahedral() -> (FiniteGroup, Option<Perm>) {
    let gens = [Quat([0, 1, 0, 0]), Quat([4, 4, 4, 4]), Quat([5, 5, 0, 0])];
    let one = Quat([1, 0, 0, 0]);
    let mut elements = vec![one];
    let mut index: HashMap<Quat, usize> = HashMap::from([(one, 0)]);
    let mut head = 0;
    while head < elements.len() {
        let q = elements[head];
        head += 1;
        for &s in &gens {
            let r = s.mul(q);
            if let std::collections::hash_map::Entry::Vacant(e) = index.entry(r) {
                e.insert(elements.len());
                elements.push(r);
            }
        }
    }
    let left = |s: Quat| {
        Perm::new(elements.iter().map(|&q| index[&s.mul(q)] as u32).collect()).unwrap()
    };
    let perms = gens.iter().map(|&s| left(s)).collect();
    let z = left(Quat([6, 0, 0, 0]));
    (FiniteGroup::closure(elements.len(), perms).expect("binary octahedral closure"), Some(z))
}

/// `C₁..C_maxN`, `D₂..D_maxN`, then the tetrahedral, octahedral and
/// icosahedral groups.
pub fn so3_catalog(max_n: usize) -> Vec<GroupSpec> {
    let mut kinds: Vec<GroupKind> = (1..=max_n).map(GroupKind::Cyclic).collect();
    kinds.extend((2..=max_n).map(GroupKind::Dihedral));
    kinds.extend([GroupKind::Tetrahedral, GroupKind::Octahedral, GroupKind::Icosahedral]);
    kinds.into_iter().map(GroupSpec::new).collect()
}

/// Binary covers of everything in [`so3_catalog`].
pub fn binary_catalog(max_n: usize) -> Vec<GroupSpec> {
    let mut kinds: Vec<GroupKind> = (1..=max_n).map(GroupKind::BinaryCyclic).collect();
    kinds.extend((2..=max_n).map(GroupKind::BinaryDihedral));
    kinds.extend([
        GroupKind::BinaryTetrahedral,
        GroupKind::BinaryOctahedral,
        GroupKind::BinaryIcosahedral,
    ]);
    kinds.into_iter().map(GroupSpec::new).collect()
}

/// `(H1 × H2)/⟨(z1, z2)⟩`, a finite subgroup of `SO(4)`.
pub fn so4_model(h1: &GroupSpec, h2: &GroupSpec) -> Result<FiniteGroup> {
    let (Some(z1), Some(z2)) = (&h1.central_involution, &h2.central_involution) else {
        return Err(Error::NotCentralInvolution);
    };
    let defaults = Limits::default();
    let limits = Limits {
        max_order: (h1.group.order() * h2.group.order()).max(defaults.max_order),
        ..defaults
    };
    let product = direct_product_with(&h1.group, &h2.group, &limits)?;
    Ok(central_quotient(&product, &z1.direct_sum(z2))?.into_group())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientEntry {
    pub group: String,
    pub subgroup_class: usize,
    pub subgroup_order: usize,
    pub quotients: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct A5OnlyReport {
    pub entries: Vec<QuotientEntry>,
    /// Union of every quotient set.
    pub quotients: Vec<String>,
    pub flag: bool,
}

/// For every group in `so3_catalog(max_n)` and every conjugacy class of
/// subgroups, the nonabelian simple quotients; the flag holds when none
/// other than `A5` appears.
pub fn verify_a5_only(max_n: usize) -> Result<A5OnlyReport> {
    if max_n > 60 {
        return Err(Error::Domain(format!("max_n = {max_n} exceeds 60")));
    }
    verify_a5_only_on(&so3_catalog(max_n))
}

pub fn verify_a5_only_on(catalog: &[GroupSpec]) -> Result<A5OnlyReport> {
    let a5 = IsoLabel::a5();
    let mut entries = Vec::new();
    let mut union = BTreeSet::new();
    let mut flag = true;
    for spec in catalog {
        for (class_id, class) in conjugacy_classes_of_subgroups(&spec.group)?.iter().enumerate() {
            let sub = spec.group.subgroup_as_group(&class[0]);
            let labels = simple_nonabelian_quotients(&sub)?;
            flag &= labels.iter().all(|l| *l == a5);
            let names: Vec<String> = labels.iter().map(|l| l.to_string()).collect();
            union.extend(names.iter().cloned());
            entries.push(QuotientEntry {
                group: spec.kind.to_string(),
                subgroup_class: class_id,
                subgroup_order: class[0].order,
                quotients: names,
            });
        }
    }
    Ok(A5OnlyReport {
        entries,
        quotients: union.into_iter().collect(),
        flag,
    })
}

/// Nonabelian simple quotients of all subgroups of `g`, as labels.
pub fn subgroup_quotient_labels(g: &FiniteGroup) -> Result<BTreeSet<IsoLabel>> {
    let mut out = BTreeSet::new();
    for class in conjugacy_classes_of_subgroups(g)? {
        out.extend(simple_nonabelian_quotients(&g.subgroup_as_group(&class[0]))?);
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessedQuotient {
    pub quotient: String,
    /// 1 or 2 for the factor with a subgroup having this quotient (1 is
    /// preferred), 0 when neither has one.
    pub witness_factor: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjectionCell {
    /// Goursat coordinates `(A, A0, B, B0, iso)` into the factor subgroup
    /// lattices.
    pub subgroup: [usize; 5],
    pub order: usize,
    pub quotients: Vec<WitnessedQuotient>,
    pub kernel_normal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProjectionReport {
    pub pair: [String; 2],
    pub subgroups_examined: usize,
    /// Cells with at least one nonabelian simple quotient.
    pub cells: Vec<ProjectionCell>,
    pub flag: bool,
}

/// For every subgroup `H ≤ G1 × G2` and every nonabelian simple quotient
/// `A` of `H`, checks that some subgroup of `G1` or of `G2` also has `A` as
/// a quotient, and that `H ∩ (G1 × 1)` is normal in `H`.
pub fn projection_lemma_check(
    names: [&str; 2],
    g1: &FiniteGroup,
    g2: &FiniteGroup,
    limits: &Limits,
) -> Result<ProjectionReport> {
    let left = subgroup_quotient_labels(g1)?;
    let right = subgroup_quotient_labels(g2)?;
    let mut iter = goursat_subgroups(g1, g2, limits)?;
    let mut cells = Vec::new();
    let mut examined = 0;
    let mut flag = true;
    while let Some(cell) = iter.next() {
        examined += 1;
        // a nonabelian simple group has order at least 60
        if cell.record.order < 60 {
            continue;
        }
        let h = iter.materialize(&cell);
        let labels = simple_nonabelian_quotients(&h)?;
        if labels.is_empty() {
            continue;
        }
        let quotients: Vec<WitnessedQuotient> = labels
            .iter()
            .map(|l| WitnessedQuotient {
                quotient: l.to_string(),
                witness_factor: if left.contains(l) {
                    1
                } else if right.contains(l) {
                    2
                } else {
                    0
                },
            })
            .collect();
        let kernel_normal = iter.left_kernel_is_normal(&cell, &h);
        flag &= kernel_normal && quotients.iter().all(|q| q.witness_factor != 0);
        cells.push(ProjectionCell {
            subgroup: [cell.left, cell.left_kernel, cell.right, cell.right_kernel, cell.iso],
            order: cell.record.order,
            quotients,
            kernel_normal,
        });
    }
    Ok(ProjectionReport {
        pair: [names[0].to_string(), names[1].to_string()],
        subgroups_examined: examined,
        cells,
        flag,
    })
}
