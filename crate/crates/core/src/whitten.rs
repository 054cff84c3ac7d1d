//! The Whitten group `Γₙ = ℤ₂ ⊕ ((ℤ₂)ⁿ ⋊ Sₙ)` and its action on ordered,
//! oriented links.
//!
//! An element `s = (η, (ε₁,…,εₙ), ρ)` sends `L = (S, L₁,…,Lₙ)` to
//! `(ηS, ε₁L_{ρ(1)}, …, εₙL_{ρ(n)})`. Requiring this to be a left action
//! fixes the product law
//!
//! ```text
//! (η, ε, ρ) · (η', ε', σ) = (ηη', (εᵢ·ε'_{ρ(i)})ᵢ, σ∘ρ)
//! ```
//!
//! which is anti-isomorphic to the textbook semidirect convention; subgroup
//! and conjugacy counts are the same either way.

use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{self, FiniteGroup, SubgroupRecord};
use crate::perm::Perm;

pub const MAX_COMPONENTS: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_bool_minus(minus: bool) -> Sign {
        if minus {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_bool_minus(self != rhs)
    }
}

impl TryFrom<i8> for Sign {
    type Error = Error;

    fn try_from(v: i8) -> Result<Sign> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(Error::Domain(format!("sign must be 1 or -1, got {v}"))),
        }
    }
}

impl From<Sign> for i8 {
    fn from(s: Sign) -> i8 {
        s.value() as i8
    }
}

/// An element `(η, ε, ρ)` of `Γₙ`. `rho` is stored 0-based; the JSON form
/// uses 1-based images.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "WhittenJson", into = "WhittenJson")]
pub struct WhittenElement {
    pub eta: Sign,
    pub eps: Vec<Sign>,
    pub rho: Perm,
}

#[derive(Serialize, Deserialize)]
struct WhittenJson {
    eta: Sign,
    eps: Vec<Sign>,
    rho: Vec<u32>,
}

impl TryFrom<WhittenJson> for WhittenElement {
    type Error = Error;

    fn try_from(j: WhittenJson) -> Result<WhittenElement> {
        if j.rho.contains(&0) {
            return Err(Error::Domain("rho images are 1-based".into()));
        }
        let rho = Perm::new(j.rho.iter().map(|&x| x - 1).collect())?;
        WhittenElement::new(j.eta, j.eps, rho)
    }
}

impl From<WhittenElement> for WhittenJson {
    fn from(s: WhittenElement) -> WhittenJson {
        WhittenJson {
            eta: s.eta,
            eps: s.eps,
            rho: s.rho.images().iter().map(|&x| x + 1).collect(),
        }
    }
}

impl WhittenElement {
    pub fn new(eta: Sign, eps: Vec<Sign>, rho: Perm) -> Result<WhittenElement> {
        if eps.len() != rho.degree() {
            return Err(Error::ComponentMismatch {
                left: eps.len(),
                right: rho.degree(),
            });
        }
        Ok(WhittenElement { eta, eps, rho })
    }

    /// Convenience constructor from `±1` integers and 0-based images.
    pub fn from_ints(eta: i8, eps: &[i8], rho: &[usize]) -> Result<WhittenElement> {
        WhittenElement::new(
            Sign::try_from(eta)?,
            eps.iter().map(|&e| Sign::try_from(e)).collect::<Result<_>>()?,
            Perm::from_usize(rho)?,
        )
    }

    pub fn identity(n: usize) -> WhittenElement {
        WhittenElement {
            eta: Sign::Plus,
            eps: vec![Sign::Plus; n],
            rho: Perm::identity(n),
        }
    }

    pub fn n(&self) -> usize {
        self.eps.len()
    }

    pub fn is_identity(&self) -> bool {
        self.eta == Sign::Plus && self.eps.iter().all(|&e| e == Sign::Plus) && self.rho.is_identity()
    }
}

impl fmt::Display for WhittenElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let eps: Vec<String> = self.eps.iter().map(|e| e.value().to_string()).collect();
        let rho: Vec<String> = self.rho.images().iter().map(|x| (x + 1).to_string()).collect();
        write!(f, "({}, ({}), [{}])", self.eta.value(), eps.join(","), rho.join(" "))
    }
}

fn check_n(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::ComponentMismatch { left: a, right: b });
    }
    Ok(())
}

pub fn gamma_mul(s: &WhittenElement, t: &WhittenElement) -> Result<WhittenElement> {
    check_n(s.n(), t.n())?;
    let eps = (0..s.n())
        .map(|i| s.eps[i] * t.eps[s.rho.apply(i)])
        .collect();
    Ok(WhittenElement {
        eta: s.eta * t.eta,
        eps,
        rho: t.rho.compose(&s.rho),
    })
}

pub fn gamma_inv(s: &WhittenElement) -> WhittenElement {
    let rho_inv = s.rho.inverse();
    let eps = (0..s.n()).map(|j| s.eps[rho_inv.apply(j)]).collect();
    WhittenElement {
        eta: s.eta,
        eps,
        rho: rho_inv,
    }
}

/// An ordered oriented link up to the data `Γₙ` can see: the ambient
/// orientation, the orientation in each slot, and which original
/// component occupies each slot.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinkRecord {
    pub ambient: Sign,
    pub orientations: Vec<Sign>,
    pub components: Perm,
}

impl LinkRecord {
    /// `(S, L₁, …, Lₙ)` with every orientation positive.
    pub fn standard(n: usize) -> LinkRecord {
        LinkRecord {
            ambient: Sign::Plus,
            orientations: vec![Sign::Plus; n],
            components: Perm::identity(n),
        }
    }

    pub fn n(&self) -> usize {
        self.orientations.len()
    }
}

pub fn act_on_link(s: &WhittenElement, link: &LinkRecord) -> Result<LinkRecord> {
    check_n(s.n(), link.n())?;
    check_n(link.n(), link.components.degree())?;
    let n = s.n();
    let orientations = (0..n)
        .map(|i| s.eps[i] * link.orientations[s.rho.apply(i)])
        .collect();
    let components = (0..n)
        .map(|i| link.components.images()[s.rho.apply(i)])
        .collect();
    Ok(LinkRecord {
        ambient: s.eta * link.ambient,
        orientations,
        components: Perm::new(components)?,
    })
}

/// `Γₙ` as a permutation group on `2 + 2n` points: the two ambient
/// orientations, then `(slot j, +)` and `(slot j, −)` for each slot.
///
/// An element acts by tracking where content goes: the component in slot
/// `j` moves to slot `ρ⁻¹(j)` and has its orientation multiplied by
/// `ε_{ρ⁻¹(j)}`, and the ambient orientation is multiplied by `η`.
#[derive(Debug, Clone)]
pub struct WhittenGroup {
    n: usize,
    group: FiniteGroup,
}

impl WhittenGroup {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn to_perm(&self, s: &WhittenElement) -> Result<Perm> {
        check_n(self.n, s.n())?;
        Ok(encode(s))
    }

    pub fn decode(&self, p: &Perm) -> WhittenElement {
        decode(self.n, p)
    }

    pub fn element(&self, index: usize) -> WhittenElement {
        decode(self.n, self.group.element(index))
    }

    pub fn index_of(&self, s: &WhittenElement) -> Result<usize> {
        let p = self.to_perm(s)?;
        Ok(self.group.index_of(&p).expect("every encoded element lies in Γₙ"))
    }

    /// The subgroup generated by the given elements.
    pub fn subgroup(&self, gens: &[WhittenElement]) -> Result<SubgroupRecord> {
        let perms = gens.iter().map(|s| self.to_perm(s)).collect::<Result<Vec<_>>>()?;
        self.group.generated_subgroup(&perms)
    }

    pub fn members(&self, rec: &SubgroupRecord) -> Vec<WhittenElement> {
        rec.members.iter().map(|&m| self.element(m as usize)).collect()
    }
}

fn encode(s: &WhittenElement) -> Perm {
    let n = s.n();
    let mut images = vec![0u32; 2 + 2 * n];
    let eta_minus = (s.eta == Sign::Minus) as u32;
    images[0] = eta_minus;
    images[1] = 1 - eta_minus;
    let rho_inv = s.rho.inverse();
    for j in 0..n {
        let k = rho_inv.apply(j);
        let flip = (s.eps[k] == Sign::Minus) as u32;
        for sigma in 0..2u32 {
            images[2 + 2 * j + sigma as usize] = 2 + 2 * k as u32 + (sigma ^ flip);
        }
    }
    Perm::from_images_unchecked(images)
}

fn decode(n: usize, p: &Perm) -> WhittenElement {
    let eta = Sign::from_bool_minus(p.apply(0) == 1);
    let mut eps = vec![Sign::Plus; n];
    let mut rho = vec![0usize; n];
    for j in 0..n {
        let image = p.apply(2 + 2 * j) - 2;
        let k = image / 2;
        rho[k] = j;
        eps[k] = Sign::from_bool_minus(image % 2 == 1);
    }
    WhittenElement {
        eta,
        eps,
        rho: Perm::from_usize(&rho).expect("decoded slot map is a bijection"),
    }
}

/// Standard generators: ambient mirror, reversal of the first component,
/// and (for `n ≥ 2`) a transposition and an `n`-cycle of slots.
pub fn gamma_generators(n: usize) -> Vec<WhittenElement> {
    let mut gens = Vec::new();
    let mut mirror = WhittenElement::identity(n);
    mirror.eta = Sign::Minus;
    gens.push(mirror);
    let mut rev = WhittenElement::identity(n);
    rev.eps[0] = Sign::Minus;
    gens.push(rev);
    if n >= 2 {
        let swap = Perm::from_cycles(n, &[&[0, 1]]).unwrap();
        let cycle: Vec<usize> = (0..n).collect();
        let cycle = Perm::from_cycles(n, &[&cycle]).unwrap();
        for rho in [swap, cycle] {
            let mut s = WhittenElement::identity(n);
            s.rho = rho;
            gens.push(s);
        }
    }
    gens
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

/// The faithful permutation model of `Γₙ`, `1 ≤ n ≤ 5`. The encoding is
/// checked to be a homomorphism on all generator pairs, and the order
/// against `2ⁿ⁺¹·n!`.
pub fn gamma_group(n: usize) -> Result<WhittenGroup> {
    if !(1..=MAX_COMPONENTS).contains(&n) {
        return Err(Error::ComponentCountOutOfRange(n));
    }
    let gens = gamma_generators(n);
    for s in &gens {
        for t in &gens {
            if encode(&gamma_mul(s, t)?) != encode(s).compose(&encode(t)) {
                return Err(Error::Domain("Γₙ encoding is not a homomorphism".into()));
            }
        }
    }
    let group = FiniteGroup::closure(2 + 2 * n, gens.iter().map(encode).collect())?;
    let expected = (1usize << (n + 1)) * factorial(n);
    if group.order() != expected {
        return Err(Error::Domain(format!(
            "Γ{n} closure has order {}, expected {expected}",
            group.order()
        )));
    }
    Ok(WhittenGroup { n, group })
}

/// The index-two subgroup `Γ̄ₙ = {η = +1}`.
pub fn bar_gamma(w: &WhittenGroup) -> SubgroupRecord {
    let members: Vec<usize> = (0..w.order())
        .filter(|&i| w.group.element(i).apply(0) == 0)
        .collect();
    w.group.subgroup_record(&members).expect("Γ̄ₙ is a subgroup")
}

/// The permutation image of `H ∩ Γ̄ₙ` in `Sₙ`. Given `H = Σ(L)` this is
/// `S(L)`.
pub fn sym_image(w: &WhittenGroup, h: &SubgroupRecord) -> Result<FiniteGroup> {
    if !w.group.is_subgroup(h) {
        return Err(Error::NotASubgroup);
    }
    let mut rhos: Vec<Perm> = w
        .members(h)
        .into_iter()
        .filter(|s| s.eta == Sign::Plus)
        .map(|s| s.rho)
        .collect();
    rhos.sort();
    rhos.dedup();
    FiniteGroup::closure(w.n, rhos)
}

/// One of the subgroups of `Γ₂` not known to occur as a symmetry group of
/// a two-component link.
#[derive(Debug, Clone, Serialize)]
pub struct MissingSubgroup {
    pub generators: Vec<WhittenElement>,
    pub isomorphism_type: &'static str,
    pub record: SubgroupRecord,
}

/// The five open cases for two-component links, realized inside `Γ₂` with
/// their isomorphism types checked.
pub fn gamma2_missing_subgroups() -> Result<Vec<MissingSubgroup>> {
    let w = gamma_group(2)?;
    let tau = [1usize, 0];
    let id = [0usize, 1];
    let el = |eta: i8, eps: [i8; 2], rho: &[usize]| WhittenElement::from_ints(eta, &eps, rho).unwrap();
    let lists: Vec<(Vec<WhittenElement>, &'static str, FiniteGroup)> = vec![
        (vec![el(1, [-1, 1], &tau)], "Z4", group::cyclic(4)),
        (vec![el(1, [-1, 1], &id), el(-1, [1, 1], &id)], "Z2+Z2", group::klein_four()),
        (vec![el(1, [1, -1], &id), el(-1, [-1, 1], &id)], "Z2+Z2", group::klein_four()),
        (vec![el(-1, [-1, 1], &id), el(1, [-1, 1], &tau)], "D4", group::dihedral(4)),
        (
            vec![el(1, [1, -1], &id), el(1, [-1, 1], &id), el(-1, [1, 1], &id)],
            "Z2+Z2+Z2",
            group::elementary_abelian(3),
        ),
    ];
    lists
        .into_iter()
        .map(|(gens, name, model)| {
            let record = w.subgroup(&gens)?;
            let realized = w.group.subgroup_as_group(&record);
            if !group::isomorphic(&realized, &model) {
                return Err(Error::Domain(format!("subgroup generated by {gens:?} is not {name}")));
            }
            Ok(MissingSubgroup {
                generators: gens,
                isomorphism_type: name,
                record,
            })
        })
        .collect()
}

/// The symmetry types of knots, each naming a subgroup of `Γ₁`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum KnotSymmetryType {
    FullyAmphicheiral,
    Reversible,
    Chiral,
    NegativeAmphicheiral,
    PositiveAmphicheiral,
}

impl KnotSymmetryType {
    pub const ALL: [KnotSymmetryType; 5] = [
        KnotSymmetryType::FullyAmphicheiral,
        KnotSymmetryType::Reversible,
        KnotSymmetryType::Chiral,
        KnotSymmetryType::NegativeAmphicheiral,
        KnotSymmetryType::PositiveAmphicheiral,
    ];

    /// Generators `(η, ε₁)` of the corresponding subgroup of `Γ₁`.
    pub fn generators(self) -> Vec<WhittenElement> {
        let el = |eta: i8, e: i8| WhittenElement::from_ints(eta, &[e], &[0]).unwrap();
        match self {
            KnotSymmetryType::FullyAmphicheiral => vec![el(-1, 1), el(1, -1)],
            KnotSymmetryType::Reversible => vec![el(1, -1)],
            KnotSymmetryType::Chiral => vec![],
            KnotSymmetryType::NegativeAmphicheiral => vec![el(-1, -1)],
            KnotSymmetryType::PositiveAmphicheiral => vec![el(-1, 1)],
        }
    }

    /// A knot with this symmetry group.
    pub fn example(self) -> &'static str {
        match self {
            KnotSymmetryType::FullyAmphicheiral => "4_1",
            KnotSymmetryType::Reversible => "3_1",
            KnotSymmetryType::Chiral => "9_32",
            KnotSymmetryType::NegativeAmphicheiral => "8_17",
            KnotSymmetryType::PositiveAmphicheiral => "12a_147",
        }
    }
}

/// Name of the knot obtained by acting with an element of `Γ₁`.
pub fn knot_operation_name(s: &WhittenElement) -> Option<&'static str> {
    if s.n() != 1 {
        return None;
    }
    Some(match (s.eta, s.eps[0]) {
        (Sign::Plus, Sign::Plus) => "K",
        (Sign::Plus, Sign::Minus) => "reverse",
        (Sign::Minus, Sign::Plus) => "mirror image",
        (Sign::Minus, Sign::Minus) => "reversed mirror image",
    })
}

/// A four-component link whose permutation symmetry group is `A₄`, with
/// that group on `{1,2,3,4}`.
pub fn l12a2007_symmetry_group() -> (&'static str, FiniteGroup) {
    ("L12a2007", group::alternating(4))
}
