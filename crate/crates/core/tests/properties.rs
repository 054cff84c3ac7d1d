use proptest::prelude::*;

use linksym::link::{act_on_linking_matrix, stabilizer_in, sym_upper_bound, LinkingMatrix};
use linksym::whitten::{act_on_link, gamma_group, gamma_inv, gamma_mul, LinkRecord, Sign, WhittenElement};
use linksym::{IndexedGroup, Perm};

fn sign() -> impl Strategy<Value = Sign> {
    any::<bool>().prop_map(Sign::from_bool_minus)
}

fn element(n: usize) -> impl Strategy<Value = WhittenElement> {
    (
        sign(),
        proptest::collection::vec(sign(), n),
        Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
    )
        .prop_map(|(eta, eps, rho)| WhittenElement::new(eta, eps, Perm::from_usize(&rho).unwrap()).unwrap())
}

fn record(n: usize) -> impl Strategy<Value = LinkRecord> {
    (
        sign(),
        proptest::collection::vec(sign(), n),
        Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
    )
        .prop_map(|(ambient, orientations, comps)| LinkRecord {
            ambient,
            orientations,
            components: Perm::from_usize(&comps).unwrap(),
        })
}

fn matrix(n: usize) -> impl Strategy<Value = LinkingMatrix> {
    proptest::collection::vec(-3i64..=3, n * (n - 1) / 2).prop_map(move |vals| {
        let mut pairs = Vec::new();
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                pairs.push((i, j, vals[k]));
                k += 1;
            }
        }
        LinkingMatrix::from_pairs(n, &pairs).unwrap()
    })
}

/// Linking numbers of the link described by a record, given the linking
/// matrix of the original ordered link: reversing one component or the
/// ambient orientation negates each linking number it touches.
fn linking_of(record: &LinkRecord, original: &LinkingMatrix) -> LinkingMatrix {
    let n = record.n();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let sign = record.ambient.value() * record.orientations[i].value() * record.orientations[j].value();
            let (ci, cj) = (record.components.apply(i), record.components.apply(j));
            pairs.push((i, j, sign * original.get(ci, cj)));
        }
    }
    LinkingMatrix::from_pairs(n, &pairs).unwrap()
}

fn with_n<S: Strategy>(f: impl Fn(usize) -> S) -> impl Strategy<Value = S::Value> {
    (1usize..=5).prop_flat_map(f)
}

proptest! {
    #[test]
    fn group_axioms((s, t, u) in with_n(|n| (element(n), element(n), element(n)))) {
        let st_u = gamma_mul(&gamma_mul(&s, &t).unwrap(), &u).unwrap();
        let s_tu = gamma_mul(&s, &gamma_mul(&t, &u).unwrap()).unwrap();
        prop_assert_eq!(st_u, s_tu);
        prop_assert!(gamma_mul(&s, &gamma_inv(&s)).unwrap().is_identity());
    }

    #[test]
    fn link_action_law((s, t, l) in with_n(|n| (element(n), element(n), record(n)))) {
        let lhs = act_on_link(&gamma_mul(&s, &t).unwrap(), &l).unwrap();
        let rhs = act_on_link(&s, &act_on_link(&t, &l).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn matrix_action_law((s, t, m) in (2usize..=5).prop_flat_map(|n| (element(n), element(n), matrix(n)))) {
        let lhs = act_on_linking_matrix(&gamma_mul(&s, &t).unwrap(), &m).unwrap();
        let rhs = act_on_linking_matrix(&s, &act_on_linking_matrix(&t, &m).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn matrix_action_matches_link_action((s, m) in (2usize..=5).prop_flat_map(|n| (element(n), matrix(n)))) {
        let moved = act_on_link(&s, &LinkRecord::standard(m.n())).unwrap();
        prop_assert_eq!(act_on_linking_matrix(&s, &m).unwrap(), linking_of(&moved, &m));
    }

    #[test]
    fn stabilizer_is_equivariant((s, m) in (2usize..=3).prop_flat_map(|n| (element(n), matrix(n)))) {
        let w = gamma_group(m.n()).unwrap();
        let g = w.group();
        let stab = stabilizer_in(&w, &m).unwrap();
        prop_assert!(g.is_subgroup(&stab));
        let moved = act_on_linking_matrix(&s, &m).unwrap();
        let stab_moved = stabilizer_in(&w, &moved).unwrap();
        let si = w.index_of(&s).unwrap();
        let mut conj: Vec<u32> = stab
            .members
            .iter()
            .map(|&x| g.mul(g.mul(si, x as usize), g.inv(si)) as u32)
            .collect();
        conj.sort_unstable();
        prop_assert_eq!(conj, stab_moved.members);
    }

    #[test]
    fn total_reversal_of_mirror_stabilizes_only_zero(m in (2usize..=4).prop_flat_map(matrix)) {
        let n = m.n();
        let s = WhittenElement::new(Sign::Minus, vec![Sign::Minus; n], Perm::identity(n)).unwrap();
        let w = gamma_group(n).unwrap();
        let stab = stabilizer_in(&w, &m).unwrap();
        let is_zero = m.rows().iter().flatten().all(|&x| x == 0);
        prop_assert_eq!(stab.contains(w.index_of(&s).unwrap()), is_zero);
        prop_assert_eq!(sym_upper_bound(&m).unwrap(), sym_upper_bound(&act_on_linking_matrix(&s, &m).unwrap()).unwrap());
    }
}
