//! Standard small permutation groups.

use super::FiniteGroup;
use crate::perm::Perm;

fn build(degree: usize, gens: Vec<Perm>) -> FiniteGroup {
    FiniteGroup::closure(degree, gens).expect("standard group within cap")
}

pub fn trivial() -> FiniteGroup {
    build(1, vec![])
}

/// `C_n` generated by an `n`-cycle.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    let cycle: Vec<usize> = (0..n).collect();
    let gens = if n == 1 {
        vec![]
    } else {
        vec![Perm::from_cycles(n, &[&cycle]).unwrap()]
    };
    build(n, gens)
}

/// Dihedral group of order `2n`. For `n ≥ 3` this is the symmetry group of
/// an `n`-gon; `n = 2` is the Klein four-group on four points and `n = 1`
/// is `C_2`.
pub fn dihedral(n: usize) -> FiniteGroup {
    assert!(n >= 1);
    match n {
        1 => cyclic(2),
        2 => klein_four(),
        _ => {
            let rot: Vec<usize> = (0..n).collect();
            let rot = Perm::from_cycles(n, &[&rot]).unwrap();
            let refl: Vec<u32> = (0..n as u32).map(|i| (n as u32 - i) % n as u32).collect();
            build(n, vec![rot, Perm::new(refl).unwrap()])
        }
    }
}

pub fn klein_four() -> FiniteGroup {
    build(
        4,
        vec![
            Perm::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap(),
            Perm::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap(),
        ],
    )
}

/// `(C_2)^k` acting on `2k` points.
pub fn elementary_abelian(k: usize) -> FiniteGroup {
    if k == 0 {
        return trivial();
    }
    let gens = (0..k)
        .map(|i| Perm::from_cycles(2 * k, &[&[2 * i, 2 * i + 1]]).unwrap())
        .collect();
    build(2 * k, gens)
}

pub fn symmetric(n: usize) -> FiniteGroup {
    let degree = n.max(1);
    if n < 2 {
        return build(degree, vec![]);
    }
    let cycle: Vec<usize> = (0..n).collect();
    build(
        n,
        vec![
            Perm::from_cycles(n, &[&[0, 1]]).unwrap(),
            Perm::from_cycles(n, &[&cycle]).unwrap(),
        ],
    )
}

/// Even permutations of `n` points, generated by 3-cycles `(0 1 k)`.
pub fn alternating(n: usize) -> FiniteGroup {
    let degree = n.max(1);
    if n < 3 {
        return build(degree, vec![]);
    }
    let gens = (2..n)
        .map(|k| Perm::from_cycles(n, &[&[0, 1, k]]).unwrap())
        .collect();
    build(n, gens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(cyclic(1).order(), 1);
        assert_eq!(cyclic(7).order(), 7);
        assert_eq!(dihedral(1).order(), 2);
        assert_eq!(dihedral(2).order(), 4);
        assert_eq!(dihedral(6).order(), 12);
        assert_eq!(symmetric(4).order(), 24);
        assert_eq!(alternating(4).order(), 12);
        assert_eq!(alternating(5).order(), 60);
        assert_eq!(elementary_abelian(3).order(), 8);
    }

    #[test]
    fn dihedral_three_is_nonabelian() {
        assert!(!dihedral(3).is_abelian());
        assert!(dihedral(2).is_abelian());
    }
}
