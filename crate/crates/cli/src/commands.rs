use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use serde::de::DeserializeOwned;
use serde::Serialize;
use thiserror::Error;

use linksym::group::{
    all_subgroups, alternating, conjugacy_classes_of_subgroups, cyclic, dihedral, simple_nonabelian_quotients,
    symmetric, IsoLabel,
};
use linksym::link::{stabilizer, sym_upper_bound, LinkingMatrix};
use linksym::rotation::{projection_lemma_check, so4_model, verify_a5_only, GroupKind, GroupSpec};
use linksym::seifert::{check_transposition, sweep, AttachData};
use linksym::tree::{analyze_action, check_branch_structure, spanned_subtree, LabeledTree, Locus, TreeAction};
use linksym::whitten::{gamma2_missing_subgroups, gamma_group, WhittenElement};
use linksym::{FiniteGroup, Limits, SubgroupRecord};

use crate::cache::Cache;
use crate::{Command, LabelGroup};

pub const SCHEMA_VERSION: u32 = 1;

/// Largest `n` for which the subgroups of the Whitten group are enumerated.
const MAX_SUBGROUP_N: usize = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] linksym::Error),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("invalid JSON in {path}: {source}")]
    Json { path: PathBuf, source: serde_json::Error },
    #[error("{0}")]
    Usage(String),
}

pub struct Outcome {
    pub report: String,
    pub verified: bool,
}

#[derive(Serialize)]
struct Report<'a, T: Serialize> {
    schema_version: u32,
    verb: &'a str,
    #[serde(flatten)]
    body: T,
}

fn emit<T: Serialize>(verb: &str, body: T, verified: bool) -> Result<Outcome, CliError> {
    let report = Report {
        schema_version: SCHEMA_VERSION,
        verb,
        body,
    };
    Ok(Outcome {
        report: serde_json::to_string_pretty(&report).expect("reports serialize"),
        verified,
    })
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_path_buf(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| CliError::Json {
        path: path.to_path_buf(),
        source,
    })
}

pub fn run(command: Command, cache: &Cache) -> Result<Outcome, CliError> {
    match command {
        Command::GammaOrder { n } => gamma_order(n),
        Command::GammaSubgroups { n, up_to_conjugacy } => gamma_subgroups(n, up_to_conjugacy, cache),
        Command::Gamma2Missing => gamma2_missing(),
        Command::LinkStabilizer { input } => link_stabilizer(&input),
        Command::TreeInvariant {
            input,
            group,
            span,
            single_labels,
        } => tree_invariant(&input, group, span, single_labels),
        Command::TreeStructure { input } => tree_structure(&input),
        Command::RotationVerify { max_n, so4, pair } => match (so4, pair) {
            (Some(_), Some(_)) => Err(CliError::Usage("--so4 and --pair are exclusive".into())),
            (Some(names), None) => rotation_so4(&names),
            (None, Some(names)) => rotation_pair(&names),
            (None, None) => rotation_catalog(max_n),
        },
        Command::SeifertCheck {
            alpha,
            beta,
            delta,
            gamma,
            w,
            sweep: true,
            bound,
        } => {
            if [alpha, beta, delta, gamma, w].iter().any(Option::is_some) {
                return Err(CliError::Usage("--sweep takes only --bound".into()));
            }
            seifert_sweep(bound)
        }
        Command::SeifertCheck {
            alpha,
            beta,
            delta,
            gamma,
            w,
            ..
        } => match (alpha, beta, delta, gamma, w) {
            (Some(a), Some(b), Some(d), Some(g), Some(w)) => seifert_single(a, b, d, g, w),
            _ => Err(CliError::Usage(
                "seifert-check needs --alpha --beta --delta --gamma --w, or --sweep".into(),
            )),
        },
    }
}

#[derive(Serialize)]
struct GammaOrderBody {
    n: usize,
    order: usize,
}

fn gamma_order(n: usize) -> Result<Outcome, CliError> {
    let w = gamma_group(n)?;
    emit("gamma-order", GammaOrderBody { n, order: w.order() }, true)
}

#[derive(Serialize)]
struct SubgroupSummary {
    order: usize,
    class_size: usize,
    isomorphism_label: String,
}

#[derive(Serialize)]
struct GammaSubgroupsBody {
    n: usize,
    group_order: usize,
    up_to_conjugacy: bool,
    count: usize,
    subgroups: Vec<SubgroupSummary>,
}

fn summarize(g: &FiniteGroup, class: &[SubgroupRecord]) -> SubgroupSummary {
    let rep = &class[0];
    let label = IsoLabel::of(&g.subgroup_as_group(rep));
    SubgroupSummary {
        order: rep.order,
        class_size: class.len(),
        isomorphism_label: label.to_string(),
    }
}

fn gamma_subgroups(n: usize, up_to_conjugacy: bool, cache: &Cache) -> Result<Outcome, CliError> {
    if n == 0 || n > MAX_SUBGROUP_N {
        return Err(CliError::Usage(format!("--n must lie in 1..={MAX_SUBGROUP_N}, got {n}")));
    }
    let w = gamma_group(n)?;
    let g = w.group();
    let hash = g.descriptor_hash();
    let subgroups: Vec<SubgroupSummary> = if up_to_conjugacy {
        let classes: Vec<Vec<SubgroupRecord>> =
            cache.get_or_compute(&format!("{hash}-classes"), || conjugacy_classes_of_subgroups(g))?;
        classes.iter().map(|c| summarize(g, c)).collect()
    } else {
        let all: Vec<SubgroupRecord> = cache.get_or_compute(&format!("{hash}-subgroups"), || all_subgroups(g))?;
        all.iter().map(|r| summarize(g, std::slice::from_ref(r))).collect()
    };
    let body = GammaSubgroupsBody {
        n,
        group_order: w.order(),
        up_to_conjugacy,
        count: subgroups.len(),
        subgroups,
    };
    emit("gamma-subgroups", body, true)
}

#[derive(Serialize)]
struct MissingEntry {
    generators: Vec<WhittenElement>,
    isomorphism_type: &'static str,
    order: usize,
}

#[derive(Serialize)]
struct MissingBody {
    subgroups: Vec<MissingEntry>,
}

fn gamma2_missing() -> Result<Outcome, CliError> {
    let subgroups = gamma2_missing_subgroups()?
        .into_iter()
        .map(|m| MissingEntry {
            generators: m.generators,
            isomorphism_type: m.isomorphism_type,
            order: m.record.order,
        })
        .collect();
    emit("gamma2-missing", MissingBody { subgroups }, true)
}

#[derive(Serialize)]
struct StabilizerBody {
    linking_matrix: LinkingMatrix,
    stabilizer_order: usize,
    stabilizer: Vec<WhittenElement>,
    permutation_image_order: usize,
}

fn link_stabilizer(input: &Path) -> Result<Outcome, CliError> {
    let lk: LinkingMatrix = read_json(input)?;
    let w = gamma_group(lk.n())?;
    let stab = stabilizer(&lk)?;
    let body = StabilizerBody {
        stabilizer_order: stab.order,
        stabilizer: w.members(&stab),
        permutation_image_order: sym_upper_bound(&lk)?.order(),
        linking_matrix: lk,
    };
    emit("link-stabilizer", body, true)
}

#[derive(Serialize)]
struct TreeInvariantBody {
    group: &'static str,
    group_order: usize,
    spanned: bool,
    /// Vertex numbering of the reported locus, in the input tree.
    locus: Locus,
    requires_vertex: bool,
    edge_inverted: bool,
    contradiction: bool,
}

fn label_group(kind: LabelGroup, n: usize) -> (&'static str, FiniteGroup) {
    match kind {
        LabelGroup::Alternating => ("alternating", alternating(n)),
        LabelGroup::Symmetric => ("symmetric", symmetric(n)),
        LabelGroup::Cyclic => ("cyclic", cyclic(n)),
        LabelGroup::Dihedral => ("dihedral", dihedral(n)),
    }
}

fn tree_invariant(input: &Path, kind: LabelGroup, span: bool, single_labels: bool) -> Result<Outcome, CliError> {
    let tree: LabeledTree = read_json(input)?;
    let n = tree.labels().len();
    if n == 0 {
        return Err(CliError::Usage("tree has no labels".into()));
    }
    if single_labels {
        tree.check_single_labels()?;
    }
    let (name, group) = label_group(kind, n);
    let (work, original) = if span {
        let keep: Vec<usize> = tree.labels().values().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let sub = spanned_subtree(&tree, &keep)?;
        (sub.tree, sub.original)
    } else {
        (tree.clone(), (0..tree.vertex_count()).collect())
    };
    let action = TreeAction::new(&work, &group)?
        .ok_or_else(|| CliError::Usage(format!("the {name} group on the labels does not act on this tree")))?;
    let report = analyze_action(&work, &action)?;
    let locus = match report.locus {
        Locus::Vertex(v) => Locus::Vertex(original[v]),
        Locus::Edge(a, b) => Locus::Edge(original[a], original[b]),
    };
    let body = TreeInvariantBody {
        group: name,
        group_order: group.order(),
        spanned: span,
        locus,
        requires_vertex: report.requires_vertex,
        edge_inverted: report.edge_inverted,
        contradiction: report.contradiction,
    };
    emit("tree-invariant", body, !report.contradiction)
}

#[derive(Serialize)]
struct TreeStructureBody {
    vertices: usize,
    labels: usize,
    single_vertex_or_spider: bool,
}

fn tree_structure(input: &Path) -> Result<Outcome, CliError> {
    let tree: LabeledTree = read_json(input)?;
    let n = tree.labels().len();
    let ok = check_branch_structure(&tree, n);
    let body = TreeStructureBody {
        vertices: tree.vertex_count(),
        labels: n,
        single_vertex_or_spider: ok,
    };
    emit("tree-structure", body, ok)
}

fn parse_kind(name: &str) -> Result<GroupKind, CliError> {
    name.trim()
        .parse()
        .map_err(|e: linksym::Error| CliError::Usage(format!("group {name:?}: {e}")))
}

#[derive(Serialize)]
struct So4Body {
    factors: [String; 2],
    order: usize,
    quotients: Vec<String>,
}

fn rotation_so4(names: &[String; 2]) -> Result<Outcome, CliError> {
    let h1 = GroupSpec::new(parse_kind(&names[0])?);
    let h2 = GroupSpec::new(parse_kind(&names[1])?);
    let g = so4_model(&h1, &h2)?;
    let quotients: Vec<String> = simple_nonabelian_quotients(&g)?.iter().map(|l| l.to_string()).collect();
    let verified = quotients.iter().all(|q| q == "A5");
    let body = So4Body {
        factors: [h1.kind.to_string(), h2.kind.to_string()],
        order: g.order(),
        quotients,
    };
    emit("rotation-verify", body, verified)
}

fn rotation_pair(names: &[String; 2]) -> Result<Outcome, CliError> {
    let k1 = parse_kind(&names[0])?;
    let k2 = parse_kind(&names[1])?;
    let (g1, g2) = (GroupSpec::new(k1).group, GroupSpec::new(k2).group);
    let (n1, n2) = (k1.to_string(), k2.to_string());
    let report = projection_lemma_check([&n1, &n2], &g1, &g2, &Limits::default())?;
    let flag = report.flag;
    emit("rotation-verify", report, flag)
}

fn rotation_catalog(max_n: usize) -> Result<Outcome, CliError> {
    let report = verify_a5_only(max_n)?;
    let flag = report.flag;
    emit("rotation-verify", report, flag)
}

#[derive(Serialize)]
struct SeifertBody {
    attach: AttachData,
    w: i64,
    transposes: bool,
}

fn seifert_single(alpha: i64, beta: i64, delta: i64, gamma: i64, w: i64) -> Result<Outcome, CliError> {
    let attach = AttachData::new(alpha, beta, delta, gamma)?;
    let transposes = check_transposition(&attach, w)?;
    emit("seifert-check", SeifertBody { attach, w, transposes }, transposes)
}

fn seifert_sweep(bound: i64) -> Result<Outcome, CliError> {
    if !(0..=8).contains(&bound) {
        return Err(CliError::Usage(format!("--bound must lie in 0..=8, got {bound}")));
    }
    let report = sweep(bound);
    let flag = report.flag;
    emit("seifert-check", report, flag)
}
