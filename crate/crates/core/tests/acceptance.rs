//! Acceptance gate. Each criterion prints one PASS/FAIL line and then
//! asserts; run with `--nocapture` to see every line.
//!
//! Randomized criteria read their seed from `LINKSYM_SEED` and fall back to
//! a fixed default.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use linksym::group::{
    all_subgroups, alternating, conjugacy_classes_of_subgroups, cyclic, simple_nonabelian_quotients, symmetric,
    IsoLabel,
};
use linksym::link::{act_on_linking_matrix, LinkingMatrix};
use linksym::rotation::{projection_lemma_check, so4_model, verify_a5_only, GroupKind, GroupSpec};
use linksym::seifert::{attach_data_up_to, check_transposition};
use linksym::tree::{analyze_action, check_branch_structure, free_trees, spanned_subtree, LabeledTree, Locus, TreeAction};
use linksym::whitten::{act_on_link, gamma2_missing_subgroups, gamma_group, gamma_mul, LinkRecord, Sign, WhittenElement};
use linksym::{FiniteGroup, Limits, Perm};

const DEFAULT_SEED: u64 = 0x5eed_2024;

fn seed() -> u64 {
    std::env::var("LINKSYM_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

fn verdict(id: u32, start: Instant, limit: Duration, pass: bool, detail: String) {
    let elapsed = start.elapsed();
    let in_time = elapsed < limit;
    let ok = pass && in_time;
    println!(
        "[{}] criterion {id:>2}: {detail} ({:.2?}, limit {:?})",
        if ok { "PASS" } else { "FAIL" },
        elapsed,
        limit
    );
    assert!(pass, "criterion {id}: {detail}");
    assert!(in_time, "criterion {id}: took {elapsed:?}, limit {limit:?}");
}

#[test]
fn criterion_01_gamma1_subgroups() {
    let start = Instant::now();
    let w = gamma_group(1).unwrap();
    let count = all_subgroups(w.group()).unwrap().len();
    verdict(1, start, Duration::from_secs(1), count == 5, format!("Γ1 has {count} subgroups, expected 5"));
}

#[test]
fn criterion_02_gamma2_classes() {
    let start = Instant::now();
    let w = gamma_group(2).unwrap();
    let classes = conjugacy_classes_of_subgroups(w.group()).unwrap().len();
    verdict(
        2,
        start,
        Duration::from_secs(10),
        w.order() == 16 && classes == 27,
        format!("|Γ2| = {}, {classes} conjugacy classes; expected 16 and 27", w.order()),
    );
}

#[test]
fn criterion_03_s4_classes() {
    let start = Instant::now();
    let classes = conjugacy_classes_of_subgroups(&symmetric(4)).unwrap().len();
    verdict(3, start, Duration::from_secs(5), classes == 11, format!("S4 has {classes} classes, expected 11"));
}

#[test]
fn criterion_04_gamma_orders() {
    let start = Instant::now();
    let orders: Vec<usize> = (1..=5).map(|n| gamma_group(n).unwrap().order()).collect();
    let expected: Vec<usize> = (1..=5usize)
        .map(|n| (1 << (n + 1)) * (1..=n).product::<usize>())
        .collect();
    verdict(
        4,
        start,
        Duration::from_secs(10),
        orders == expected,
        format!("|Γn| for n = 1..5 is {orders:?}, expected {expected:?}"),
    );
}

#[test]
fn criterion_05_missing_subgroups() {
    let start = Instant::now();
    let missing = gamma2_missing_subgroups().unwrap();
    let orders: Vec<usize> = missing.iter().map(|m| m.record.order).collect();
    let types: Vec<&str> = missing.iter().map(|m| m.isomorphism_type).collect();
    let stated_orders = vec![4, 4, 4, 4, 8];
    let stated_types = vec!["Z4", "Z2+Z2", "Z2+Z2", "D4", "Z2+Z2+Z2"];
    verdict(
        5,
        start,
        Duration::from_secs(5),
        orders == stated_orders && types == stated_types,
        format!("orders {orders:?} (stated {stated_orders:?}), types {types:?} (stated {stated_types:?})"),
    );
}

#[test]
fn criterion_06_a5_only() {
    let start = Instant::now();
    let report = verify_a5_only(30).unwrap();
    verdict(
        6,
        start,
        Duration::from_secs(60),
        report.flag && report.quotients == ["A5"],
        format!(
            "flag {} over {} subgroup classes, quotient union {:?}",
            report.flag,
            report.entries.len(),
            report.quotients
        ),
    );
}

#[test]
fn criterion_07_so4_quotients() {
    let start = Instant::now();
    let i2 = GroupSpec::new(GroupKind::BinaryIcosahedral);
    let t2 = GroupSpec::new(GroupKind::BinaryTetrahedral);
    let qi = simple_nonabelian_quotients(&so4_model(&i2, &i2).unwrap()).unwrap();
    let qt = simple_nonabelian_quotients(&so4_model(&t2, &t2).unwrap()).unwrap();
    verdict(
        7,
        start,
        Duration::from_secs(60),
        qi == vec![IsoLabel::a5()] && qt.is_empty(),
        format!(
            "(2I x 2I)/2 quotients {:?}, (2T x 2T)/2 quotients {:?}",
            qi.iter().map(|l| l.to_string()).collect::<Vec<_>>(),
            qt.iter().map(|l| l.to_string()).collect::<Vec<_>>()
        ),
    );
}

#[test]
fn criterion_08_projection_lemma() {
    let start = Instant::now();
    let groups: [(&str, FiniteGroup); 5] = [
        ("C2", cyclic(2)),
        ("S3", symmetric(3)),
        ("A4", alternating(4)),
        ("S4", symmetric(4)),
        ("A5", alternating(5)),
    ];
    let mut failures = Vec::new();
    let mut examined = 0;
    for (n1, g1) in &groups {
        for (n2, g2) in &groups {
            let r = projection_lemma_check([n1, n2], g1, g2, &Limits::default()).unwrap();
            examined += r.subgroups_examined;
            if !r.flag {
                failures.push(format!("{n1}x{n2}"));
            }
        }
    }
    verdict(
        8,
        start,
        Duration::from_secs(300),
        failures.is_empty(),
        format!("25 pairs, {examined} subgroups of products examined, failures {failures:?}"),
    );
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            go(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Every tree on at most ten vertices, every placement of the labels of
/// `A4` or `A5` on distinct vertices, restricted to the subtree those
/// vertices span. Both groups are primitive, so a label-transitive action
/// with a vertex carrying several labels has all labels on one vertex,
/// whose spanned subtree is that vertex.
#[test]
fn criterion_09_tree_suite() {
    let start = Instant::now();
    let mut actions = 0;
    let mut bad = Vec::new();
    for (n, group) in [(4, alternating(4)), (5, alternating(5))] {
        for size in 1..=10 {
            for tree in free_trees(size) {
                for subset in subsets(size, n) {
                    let labels = subset.iter().enumerate().map(|(i, &v)| (i + 1, v)).collect();
                    let labeled = tree.with_labels(labels).unwrap();
                    let span = spanned_subtree(&labeled, &subset).unwrap();
                    let Some(action) = TreeAction::new(&span.tree, &group).unwrap() else {
                        continue;
                    };
                    actions += 1;
                    let report = analyze_action(&span.tree, &action).unwrap();
                    if !report.requires_vertex || !matches!(report.locus, Locus::Vertex(_)) {
                        bad.push((tree.edges().to_vec(), subset.clone()));
                    }
                }
            }
        }
    }
    verdict(
        9,
        start,
        Duration::from_secs(300),
        actions > 0 && bad.is_empty(),
        format!("{actions} extendable A4/A5 actions, {} left an edge or allowed index two", bad.len()),
    );
}

#[test]
fn criterion_10_branch_structure() {
    let start = Instant::now();
    let mut spiders_ok = true;
    for legs in 3..=6 {
        for length in 1..=4 {
            spiders_ok &= check_branch_structure(&LabeledTree::spider(legs, length), legs);
        }
    }
    let double_star_rejected = !check_branch_structure(&LabeledTree::double_star(3, 3), 6);
    verdict(
        10,
        start,
        Duration::from_secs(1),
        spiders_ok && double_star_rejected,
        format!("spiders accepted: {spiders_ok}, double star rejected: {double_star_rejected}"),
    );
}

#[test]
fn criterion_11_seifert_sweep() {
    let start = Instant::now();
    let data = attach_data_up_to(5);
    let mut cases = 0;
    let mut failures = 0;
    for a in &data {
        for w in -5..=5 {
            cases += 1;
            if !check_transposition(a, w).unwrap() {
                failures += 1;
            }
        }
    }
    verdict(
        11,
        start,
        Duration::from_secs(30),
        failures == 0 && cases > 0,
        format!("{} attach data x 11 twists = {cases} cases, {failures} failures", data.len()),
    );
}

fn random_element(rng: &mut ChaCha8Rng, n: usize) -> WhittenElement {
    let sign = |rng: &mut ChaCha8Rng| Sign::from_bool_minus(rng.gen());
    let mut rho: Vec<usize> = (0..n).collect();
    rho.shuffle(rng);
    let eps = (0..n).map(|_| sign(rng)).collect();
    WhittenElement::new(sign(rng), eps, Perm::from_usize(&rho).unwrap()).unwrap()
}

#[test]
fn criterion_12_action_laws() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed());
    let mut link_failures = 0;
    for _ in 0..1000 {
        let n = rng.gen_range(1..=5);
        let (s, t) = (random_element(&mut rng, n), random_element(&mut rng, n));
        let l = act_on_link(&random_element(&mut rng, n), &LinkRecord::standard(n)).unwrap();
        let lhs = act_on_link(&gamma_mul(&s, &t).unwrap(), &l).unwrap();
        let rhs = act_on_link(&s, &act_on_link(&t, &l).unwrap()).unwrap();
        link_failures += usize::from(lhs != rhs);
    }
    let mut matrix_failures = 0;
    for _ in 0..500 {
        let n = rng.gen_range(2..=5);
        let (s, t) = (random_element(&mut rng, n), random_element(&mut rng, n));
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                pairs.push((i, j, rng.gen_range(-4..=4)));
            }
        }
        let m = LinkingMatrix::from_pairs(n, &pairs).unwrap();
        let lhs = act_on_linking_matrix(&gamma_mul(&s, &t).unwrap(), &m).unwrap();
        let rhs = act_on_linking_matrix(&s, &act_on_linking_matrix(&t, &m).unwrap()).unwrap();
        matrix_failures += usize::from(lhs != rhs);
    }
    verdict(
        12,
        start,
        Duration::from_secs(10),
        link_failures == 0 && matrix_failures == 0,
        format!(
            "seed {}: {link_failures}/1000 link failures, {matrix_failures}/500 matrix failures",
            seed()
        ),
    );
}
