//! Linking matrices and the bounds they give on link symmetry groups.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, SubgroupRecord};
use crate::whitten::{gamma_group, sym_image, WhittenElement, WhittenGroup};

/// Pairwise linking numbers of an `n`-component link. Symmetric with zero
/// diagonal.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "LinkJson", into = "LinkJson")]
pub struct LinkingMatrix {
    entries: Vec<Vec<i64>>,
}

#[derive(Serialize, Deserialize)]
struct LinkJson {
    n: usize,
    lk: Vec<Vec<i64>>,
}

impl TryFrom<LinkJson> for LinkingMatrix {
    type Error = Error;

    fn try_from(j: LinkJson) -> Result<LinkingMatrix> {
        if j.lk.len() != j.n {
            return Err(Error::InvalidLinkingMatrix(format!(
                "n = {} but matrix has {} rows",
                j.n,
                j.lk.len()
            )));
        }
        LinkingMatrix::new(j.lk)
    }
}

impl From<LinkingMatrix> for LinkJson {
    fn from(m: LinkingMatrix) -> LinkJson {
        LinkJson {
            n: m.n(),
            lk: m.entries,
        }
    }
}

impl LinkingMatrix {
    pub fn new(entries: Vec<Vec<i64>>) -> Result<LinkingMatrix> {
        let n = entries.len();
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidLinkingMatrix(format!("row {} has length {}", i + 1, row.len())));
            }
            if row[i] != 0 {
                return Err(Error::InvalidLinkingMatrix(format!("diagonal entry {} is nonzero", i + 1)));
            }
            for j in 0..i {
                if row[j] != entries[j][i] {
                    return Err(Error::InvalidLinkingMatrix(format!(
                        "entries ({},{}) and ({},{}) differ",
                        i + 1,
                        j + 1,
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        Ok(LinkingMatrix { entries })
    }

    pub fn zero(n: usize) -> LinkingMatrix {
        LinkingMatrix {
            entries: vec![vec![0; n]; n],
        }
    }

    /// Builds the matrix from 0-based pairs `(i, j, lk)`; unlisted pairs are 0.
    pub fn from_pairs(n: usize, pairs: &[(usize, usize, i64)]) -> Result<LinkingMatrix> {
        let mut entries = vec![vec![0; n]; n];
        for &(i, j, v) in pairs {
            if i >= n || j >= n || i == j {
                return Err(Error::InvalidLinkingMatrix(format!("bad pair ({i},{j})")));
            }
            entries[i][j] = v;
            entries[j][i] = v;
        }
        Ok(LinkingMatrix { entries })
    }

    pub fn hopf() -> LinkingMatrix {
        LinkingMatrix::from_pairs(2, &[(0, 1, 1)]).unwrap()
    }

    /// Three-component chain: the middle component links each end once.
    pub fn chain3() -> LinkingMatrix {
        LinkingMatrix::from_pairs(3, &[(0, 1, 1), (1, 2, 1)]).unwrap()
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.entries
    }
}

/// `(s·Λ)ᵢⱼ = η·εᵢ·εⱼ·Λ_{ρ(i)ρ(j)}`.
pub fn act_on_linking_matrix(s: &WhittenElement, lk: &LinkingMatrix) -> Result<LinkingMatrix> {
    let n = lk.n();
    if s.n() != n {
        return Err(Error::ComponentMismatch { left: s.n(), right: n });
    }
    let entries = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    s.eta.value() * s.eps[i].value() * s.eps[j].value() * lk.get(s.rho.apply(i), s.rho.apply(j))
                })
                .collect()
        })
        .collect();
    Ok(LinkingMatrix { entries })
}

/// Stabilizer of `Λ` inside a prebuilt `Γₙ`.
pub fn stabilizer_in(w: &WhittenGroup, lk: &LinkingMatrix) -> Result<SubgroupRecord> {
    if w.n() != lk.n() {
        return Err(Error::ComponentMismatch { left: w.n(), right: lk.n() });
    }
    let mut members = Vec::new();
    for i in 0..w.order() {
        if act_on_linking_matrix(&w.element(i), lk)? == *lk {
            members.push(i);
        }
    }
    w.group().subgroup_record(&members)
}

/// `{s ∈ Γₙ : s·Λ = Λ}`, which contains `Σ(L)` for every link with linking
/// matrix `Λ`.
pub fn stabilizer(lk: &LinkingMatrix) -> Result<SubgroupRecord> {
    stabilizer_in(&gamma_group(lk.n())?, lk)
}

/// Permutation image of the stabilizer; contains `S(L)`.
pub fn sym_upper_bound(lk: &LinkingMatrix) -> Result<FiniteGroup> {
    let w = gamma_group(lk.n())?;
    let stab = stabilizer_in(&w, lk)?;
    sym_image(&w, &stab)
}
