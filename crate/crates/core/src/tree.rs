//! Labeled trees standing in for JSJ tree diagrams, and finite group actions
//! on them.
//!
//! Vertices are `0..vertices`. Labels are component numbers starting at 1;
//! label `k` corresponds to point `k - 1` of a permutation group acting on
//! the components.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{has_index_two_subgroup, FiniteGroup};
use crate::perm::Perm;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "TreeJson", into = "TreeJson")]
pub struct LabeledTree {
    vertices: usize,
    edges: Vec<(usize, usize)>,
    labels: BTreeMap<usize, usize>,
    adjacency: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct TreeJson {
    vertices: usize,
    edges: Vec<[usize; 2]>,
    #[serde(default)]
    labels: BTreeMap<usize, usize>,
}

impl TryFrom<TreeJson> for LabeledTree {
    type Error = Error;

    fn try_from(j: TreeJson) -> Result<LabeledTree> {
        LabeledTree::new(j.vertices, j.edges.iter().map(|e| (e[0], e[1])).collect(), j.labels)
    }
}

impl From<LabeledTree> for TreeJson {
    fn from(t: LabeledTree) -> TreeJson {
        TreeJson {
            vertices: t.vertices,
            edges: t.edges.iter().map(|&(a, b)| [a, b]).collect(),
            labels: t.labels,
        }
    }
}

/// The invariant piece found by leaf pruning.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Locus {
    Vertex(usize),
    Edge(usize, usize),
}

impl LabeledTree {
    /// Validates a tree: in-range endpoints, no loops or repeated edges,
    /// `|E| = |V| - 1`, connected, label keys at least 1.
    pub fn new(vertices: usize, edges: Vec<(usize, usize)>, labels: BTreeMap<usize, usize>) -> Result<LabeledTree> {
        if vertices == 0 {
            return Err(Error::InvalidTree("a tree needs at least one vertex".into()));
        }
        if edges.len() + 1 != vertices {
            return Err(Error::InvalidTree(format!(
                "{} vertices need {} edges, got {}",
                vertices,
                vertices - 1,
                edges.len()
            )));
        }
        let mut norm: Vec<(usize, usize)> = Vec::with_capacity(edges.len());
        for &(a, b) in &edges {
            if a >= vertices || b >= vertices {
                return Err(Error::UnknownVertex(a.max(b)));
            }
            if a == b {
                return Err(Error::InvalidTree(format!("loop at vertex {a}")));
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        if norm.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidTree("repeated edge".into()));
        }
        let mut adjacency = vec![Vec::new(); vertices];
        for &(a, b) in &norm {
            adjacency[a].push(b);
            adjacency[b].push(a);
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
        }
        for (&label, &v) in &labels {
            if label == 0 {
                return Err(Error::InvalidTree("labels start at 1".into()));
            }
            if v >= vertices {
                return Err(Error::UnknownVertex(v));
            }
        }
        let tree = LabeledTree {
            vertices,
            edges: norm,
            labels,
            adjacency,
        };
        if tree.bfs_distances(0).contains(&usize::MAX) {
            return Err(Error::InvalidTree("tree is not connected".into()));
        }
        Ok(tree)
    }

    pub fn unlabeled(vertices: usize, edges: Vec<(usize, usize)>) -> Result<LabeledTree> {
        LabeledTree::new(vertices, edges, BTreeMap::new())
    }

    pub fn with_labels(&self, labels: BTreeMap<usize, usize>) -> Result<LabeledTree> {
        LabeledTree::new(self.vertices, self.edges.clone(), labels)
    }

    /// Hub `0` with `legs` paths of `length` edges; label `i` sits at the
    /// end of leg `i`.
    pub fn spider(legs: usize, length: usize) -> LabeledTree {
        let mut edges = Vec::new();
        let mut labels = BTreeMap::new();
        let mut next = 1;
        for leg in 0..legs {
            let mut prev = 0;
            for _ in 0..length {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
            labels.insert(leg + 1, prev);
        }
        LabeledTree::new(next, edges, labels).expect("spider is a tree")
    }

    /// Two centers `0` and `1` joined by an edge, with `left` labeled leaves
    /// on `0` and `right` on `1`. Labels run over the left leaves first.
    pub fn double_star(left: usize, right: usize) -> LabeledTree {
        let mut edges = vec![(0, 1)];
        let mut labels = BTreeMap::new();
        for i in 0..left + right {
            let v = i + 2;
            edges.push((if i < left { 0 } else { 1 }, v));
            labels.insert(i + 1, v);
        }
        LabeledTree::new(left + right + 2, edges, labels).expect("double star is a tree")
    }

    pub fn star(leaves: usize) -> LabeledTree {
        let edges = (1..=leaves).map(|v| (0, v)).collect();
        let labels = (1..=leaves).map(|v| (v, v)).collect();
        LabeledTree::new(leaves + 1, edges, labels).expect("star is a tree")
    }

    pub fn path(vertices: usize) -> LabeledTree {
        let edges = (1..vertices).map(|v| (v - 1, v)).collect();
        LabeledTree::unlabeled(vertices, edges).expect("path is a tree")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn labels(&self) -> &BTreeMap<usize, usize> {
        &self.labels
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn valence(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].binary_search(&b).is_ok()
    }

    /// True when the label keys are exactly `1..=k` for some `k`.
    pub fn labels_total(&self) -> bool {
        self.labels.keys().copied().eq(1..=self.labels.len())
    }

    /// Labels carried by each vertex.
    pub fn labels_at(&self) -> Vec<BTreeSet<usize>> {
        let mut at = vec![BTreeSet::new(); self.vertices];
        for (&label, &v) in &self.labels {
            at[v].insert(label);
        }
        at
    }

    /// Rejects vertices carrying more than one label.
    pub fn check_single_labels(&self) -> Result<()> {
        match self.labels_at().iter().position(|s| s.len() > 1) {
            Some(v) => Err(Error::InvalidTree(format!("vertex {v} carries several labels"))),
            None => Ok(()),
        }
    }

    pub fn bfs_distances(&self, from: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.vertices];
        dist[from] = 0;
        let mut queue = VecDeque::from([from]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn distance_matrix(&self) -> Vec<Vec<usize>> {
        (0..self.vertices).map(|v| self.bfs_distances(v)).collect()
    }

    /// Removes all current leaves until at most two vertices remain.
    pub fn center(&self) -> Locus {
        let mut degree: Vec<usize> = (0..self.vertices).map(|v| self.valence(v)).collect();
        let mut alive = self.vertices;
        let mut layer: Vec<usize> = (0..self.vertices).filter(|&v| degree[v] <= 1).collect();
        let mut removed = vec![false; self.vertices];
        while alive > 2 {
            let mut next = Vec::new();
            for &v in &layer {
                removed[v] = true;
                alive -= 1;
            }
            for &v in &layer {
                for &w in &self.adjacency[v] {
                    if !removed[w] {
                        degree[w] -= 1;
                        if degree[w] == 1 {
                            next.push(w);
                        }
                    }
                }
            }
            layer = next;
        }
        let rest: Vec<usize> = (0..self.vertices).filter(|&v| !removed[v]).collect();
        match rest[..] {
            [v] => Locus::Vertex(v),
            [a, b] => Locus::Edge(a, b),
            _ => unreachable!("pruning a tree leaves one or two vertices"),
        }
    }

    fn rooted_code(&self, v: usize, parent: Option<usize>) -> String {
        let mut children: Vec<String> = self.adjacency[v]
            .iter()
            .filter(|&&w| Some(w) != parent)
            .map(|&w| self.rooted_code(w, Some(v)))
            .collect();
        children.sort_unstable();
        format!("({})", children.concat())
    }

    /// Canonical code of the unlabeled shape; equal codes mean isomorphic
    /// trees.
    pub fn shape_code(&self) -> String {
        match self.center() {
            Locus::Vertex(v) => self.rooted_code(v, None),
            Locus::Edge(a, b) => {
                let x = self.rooted_code(a, Some(b));
                let y = self.rooted_code(b, Some(a));
                if x <= y {
                    format!("[{x}{y}]")
                } else {
                    format!("[{y}{x}]")
                }
            }
        }
    }

    /// Whether `map` (a permutation of the vertices) preserves adjacency.
    pub fn is_automorphism(&self, map: &Perm) -> bool {
        map.degree() == self.vertices
            && self
                .edges
                .iter()
                .all(|&(a, b)| self.has_edge(map.apply(a), map.apply(b)))
    }
}

/// A subtree together with the original id of each of its vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subtree {
    pub tree: LabeledTree,
    pub original: Vec<usize>,
}

/// The smallest subtree containing `keep`. Vertices are renumbered in
/// increasing order of original id; labels on dropped vertices are dropped.
pub fn spanned_subtree(tree: &LabeledTree, keep: &[usize]) -> Result<Subtree> {
    if keep.is_empty() {
        return Err(Error::InvalidTree("cannot span an empty vertex set".into()));
    }
    if let Some(&v) = keep.iter().find(|&&v| v >= tree.vertices) {
        return Err(Error::UnknownVertex(v));
    }
    let mut wanted = vec![false; tree.vertices];
    for &v in keep {
        wanted[v] = true;
    }
    let mut degree: Vec<usize> = (0..tree.vertices).map(|v| tree.valence(v)).collect();
    let mut removed = vec![false; tree.vertices];
    let mut stack: Vec<usize> = (0..tree.vertices).filter(|&v| degree[v] <= 1 && !wanted[v]).collect();
    while let Some(v) = stack.pop() {
        if removed[v] {
            continue;
        }
        removed[v] = true;
        for &w in tree.neighbors(v) {
            if !removed[w] {
                degree[w] -= 1;
                if degree[w] <= 1 && !wanted[w] {
                    stack.push(w);
                }
            }
        }
    }
    let original: Vec<usize> = (0..tree.vertices).filter(|&v| !removed[v]).collect();
    let mut renumber = vec![usize::MAX; tree.vertices];
    for (i, &v) in original.iter().enumerate() {
        renumber[v] = i;
    }
    let edges = tree
        .edges
        .iter()
        .filter(|&&(a, b)| !removed[a] && !removed[b])
        .map(|&(a, b)| (renumber[a], renumber[b]))
        .collect();
    let labels = tree
        .labels
        .iter()
        .filter(|&(_, &v)| !removed[v])
        .map(|(&k, &v)| (k, renumber[v]))
        .collect();
    Ok(Subtree {
        tree: LabeledTree::new(original.len(), edges, labels)?,
        original,
    })
}

fn apply_to_label(g: &Perm, label: usize) -> usize {
    let point = label - 1;
    if point < g.degree() {
        g.apply(point) + 1
    } else {
        label
    }
}

/// The tree automorphism sending the vertex of label `k` to the vertex of
/// label `g(k)`, if one exists. When several exist the lexicographically
/// least vertex map is returned; when every leaf is labeled there is at
/// most one.
pub fn extend_leaf_permutation(tree: &LabeledTree, g: &Perm) -> Option<Perm> {
    let n = tree.vertices;
    let at = tree.labels_at();
    let mut fixed: Vec<Option<usize>> = vec![None; n];
    for (&label, &v) in &tree.labels {
        let target = *tree.labels.get(&apply_to_label(g, label))?;
        match fixed[v] {
            Some(t) if t != target => return None,
            _ => fixed[v] = Some(target),
        }
    }
    let mut used = vec![false; n];
    for v in 0..n {
        if let Some(t) = fixed[v] {
            let image: BTreeSet<usize> = at[v].iter().map(|&k| apply_to_label(g, k)).collect();
            if used[t] || image != at[t] {
                return None;
            }
            used[t] = true;
        }
    }
    let dist = tree.distance_matrix();
    let anchors: Vec<(usize, usize)> = (0..n).filter_map(|v| fixed[v].map(|t| (v, t))).collect();
    let mut map = vec![usize::MAX; n];
    if assign(tree, &dist, &fixed, &anchors, &mut map, &mut used, 0) {
        Some(Perm::from_images_unchecked(map.into_iter().map(|x| x as u32).collect()))
    } else {
        None
    }
}

fn assign(
    tree: &LabeledTree,
    dist: &[Vec<usize>],
    fixed: &[Option<usize>],
    anchors: &[(usize, usize)],
    map: &mut Vec<usize>,
    used: &mut Vec<bool>,
    v: usize,
) -> bool {
    if v == map.len() {
        return true;
    }
    let consistent = |c: usize, map: &[usize]| {
        tree.valence(c) == tree.valence(v)
            && (0..v).all(|u| dist[u][v] == dist[map[u]][c])
            && anchors.iter().all(|&(a, t)| dist[a][v] == dist[t][c])
    };
    if let Some(t) = fixed[v] {
        if !consistent(t, map) {
            return false;
        }
        map[v] = t;
        return assign(tree, dist, fixed, anchors, map, used, v + 1);
    }
    for c in 0..map.len() {
        if used[c] || !consistent(c, map) {
            continue;
        }
        used[c] = true;
        map[v] = c;
        if assign(tree, dist, fixed, anchors, map, used, v + 1) {
            return true;
        }
        used[c] = false;
    }
    map[v] = usize::MAX;
    false
}

/// A group acting on the labels together with a vertex map for each
/// element, forming a homomorphism into the automorphisms of the tree.
#[derive(Debug, Clone)]
pub struct TreeAction {
    group: FiniteGroup,
    vertex_maps: Vec<Perm>,
}

impl TreeAction {
    /// Lifts `group` (acting on labels `1..=n`, i.e. points `0..n`) to the
    /// tree. Returns `None` when some generator has no label-equivariant
    /// automorphism, and an error when the chosen lifts do not compose to a
    /// homomorphism.
    pub fn new(tree: &LabeledTree, group: &FiniteGroup) -> Result<Option<TreeAction>> {
        if !tree.labels_total() || tree.labels.len() != group.degree() {
            return Err(Error::InvalidAction(format!(
                "group acts on {} points but the tree labels are {:?}",
                group.degree(),
                tree.labels.keys().collect::<Vec<_>>()
            )));
        }
        let n = group.degree();
        let mut lifts = Vec::new();
        for g in group.generators() {
            match extend_leaf_permutation(tree, g) {
                Some(phi) => lifts.push(g.direct_sum(&phi)),
                None => return Ok(None),
            }
        }
        let combined = FiniteGroup::closure(n + tree.vertices, lifts)?;
        if combined.order() != group.order() {
            return Err(Error::InvalidAction(
                "lifted vertex maps do not define a homomorphism".into(),
            ));
        }
        let mut vertex_maps = vec![Perm::identity(tree.vertices); group.order()];
        for p in combined.elements() {
            let (head, tail) = p.images().split_at(n);
            let g = Perm::from_images_unchecked(head.to_vec());
            let phi = Perm::from_images_unchecked(tail.iter().map(|&x| x - n as u32).collect());
            let i = group.index_of(&g).expect("projection lands in the acting group");
            vertex_maps[i] = phi;
        }
        Ok(Some(TreeAction { group: group.clone(), vertex_maps }))
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn vertex_map(&self, element: usize) -> &Perm {
        &self.vertex_maps[element]
    }

    pub fn vertex_maps(&self) -> &[Perm] {
        &self.vertex_maps
    }

    /// Checks every vertex map is a label-equivariant automorphism and the
    /// assignment respects products.
    pub fn verify(&self, tree: &LabeledTree) -> bool {
        let equivariant = self.group.elements().iter().zip(&self.vertex_maps).all(|(g, phi)| {
            tree.is_automorphism(phi)
                && tree
                    .labels
                    .iter()
                    .all(|(&k, &v)| tree.labels.get(&apply_to_label(g, k)) == Some(&phi.apply(v)))
        });
        let homomorphism = self.group.generators().iter().all(|s| {
            let si = self.group.index_of(s).unwrap();
            (0..self.group.order()).all(|a| {
                let prod = self.group.index_of(&self.group.element(a).compose(s)).unwrap();
                self.vertex_maps[prod] == self.vertex_maps[a].compose(&self.vertex_maps[si])
            })
        });
        equivariant && homomorphism
    }
}

fn locus_fixed(locus: Locus, phi: &Perm) -> bool {
    match locus {
        Locus::Vertex(v) => phi.apply(v) == v,
        Locus::Edge(a, b) => {
            let (x, y) = (phi.apply(a), phi.apply(b));
            (x == a && y == b) || (x == b && y == a)
        }
    }
}

/// The center of the tree, checked to be fixed setwise by every vertex map.
pub fn invariant_locus(tree: &LabeledTree, action: &TreeAction) -> Result<Locus> {
    let locus = tree.center();
    if action.vertex_maps.iter().all(|phi| locus_fixed(locus, phi)) {
        Ok(locus)
    } else {
        Err(Error::InvalidAction("center is not invariant".into()))
    }
}

/// True when the acting group has no subgroup of index two, so it cannot
/// invert an invariant edge.
pub fn requires_vertex(action: &TreeAction) -> bool {
    action.group.ensure_table();
    !has_index_two_subgroup(&action.group)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocusReport {
    pub locus: Locus,
    pub requires_vertex: bool,
    /// Some vertex map swaps the ends of an invariant edge.
    pub edge_inverted: bool,
    /// A group without index-two subgroups left an edge as the locus.
    pub contradiction: bool,
}

pub fn analyze_action(tree: &LabeledTree, action: &TreeAction) -> Result<LocusReport> {
    let locus = invariant_locus(tree, action)?;
    let requires_vertex = requires_vertex(action);
    let edge_inverted = match locus {
        Locus::Vertex(_) => false,
        Locus::Edge(a, _) => action.vertex_maps.iter().any(|phi| phi.apply(a) != a),
    };
    Ok(LocusReport {
        locus,
        requires_vertex,
        edge_inverted,
        contradiction: requires_vertex && matches!(locus, Locus::Edge(..)),
    })
}

/// Whether the tree is either one vertex carrying every label, or a
/// spider: `n` labeled leaves, one vertex of valence above two, and all
/// legs of equal length.
pub fn check_branch_structure(tree: &LabeledTree, n: usize) -> bool {
    let expected: Vec<usize> = (1..=n).collect();
    if !tree.labels.keys().copied().eq(expected.iter().copied()) {
        return false;
    }
    if tree.vertices == 1 {
        return true;
    }
    let at = tree.labels_at();
    let leaves: Vec<usize> = (0..tree.vertices).filter(|&v| tree.valence(v) == 1).collect();
    if leaves.len() != n || leaves.iter().any(|&v| at[v].len() != 1) {
        return false;
    }
    let hubs: Vec<usize> = (0..tree.vertices).filter(|&v| tree.valence(v) > 2).collect();
    let [hub] = hubs[..] else {
        return false;
    };
    let dist = tree.bfs_distances(hub);
    leaves.iter().all(|&v| dist[v] == dist[leaves[0]])
}

/// Every unlabeled tree on `vertices` vertices, one per isomorphism class,
/// ordered by shape code.
pub fn free_trees(vertices: usize) -> Vec<LabeledTree> {
    if vertices == 0 {
        return Vec::new();
    }
    let mut level: BTreeMap<String, LabeledTree> = BTreeMap::new();
    let one = LabeledTree::unlabeled(1, Vec::new()).unwrap();
    level.insert(one.shape_code(), one);
    for size in 1..vertices {
        let mut next = BTreeMap::new();
        for tree in level.values() {
            for v in 0..size {
                let mut edges = tree.edges.clone();
                edges.push((v, size));
                let grown = LabeledTree::unlabeled(size + 1, edges).unwrap();
                next.entry(grown.shape_code()).or_insert(grown);
            }
        }
        level = next;
    }
    level.into_values().collect()
}
