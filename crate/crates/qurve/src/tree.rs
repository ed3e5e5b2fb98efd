//! Trees of semisimple algebras.
//!
//! A vertex carries `S_v = ⊕ M_{d_v(i)}`, an edge carries `S_e` together with
//! its embeddings into both endpoint algebras. An embedding is recorded by its
//! Bratteli matrix `a[k][j]`: the multiplicity of the k-th simple of `S_e`
//! inside the restriction of the j-th simple of the vertex algebra.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SemiSimpleAlgebra {
    pub blocks: Vec<u32>,
}

impl SemiSimpleAlgebra {
    pub fn new(blocks: Vec<u32>) -> Self {
        Self { blocks }
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn dim(&self) -> u64 {
        self.blocks.iter().map(|&d| u64::from(d) * u64::from(d)).sum()
    }
}

/// Rows are indexed by edge blocks, columns by blocks of the target vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RestrictionMap {
    pub matrix: Vec<Vec<u32>>,
}

impl RestrictionMap {
    pub fn new(matrix: Vec<Vec<u32>>) -> Self {
        Self { matrix }
    }

    pub fn get(&self, k: usize, j: usize) -> u32 {
        self.matrix[k][j]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeVertex {
    pub id: String,
    pub blocks: SemiSimpleAlgebra,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeEdge {
    pub id: String,
    pub from: String,
    pub to: String,
    pub blocks: SemiSimpleAlgebra,
    pub restriction_from: RestrictionMap,
    pub restriction_to: RestrictionMap,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TreeOfAlgebras {
    pub name: String,
    pub root: String,
    pub vertices: Vec<TreeVertex>,
    pub edges: Vec<TreeEdge>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TreeDocument {
    #[serde(default)]
    name: String,
    #[serde(default)]
    root: Option<String>,
    vertices: Vec<TreeVertex>,
    #[serde(default)]
    edges: Vec<TreeEdge>,
}

/// One violated invariant, with enough indices to locate it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NoVertices,
    DuplicateVertex(String),
    DuplicateEdge(String),
    EmptyAlgebra { owner: String },
    ZeroBlock { owner: String, block: usize },
    UnknownEndpoint { edge: String, vertex: String },
    UnknownRoot(String),
    MatrixShape { edge: String, side: &'static str, expected: (usize, usize), got: (usize, usize) },
    ColumnIdentity { edge: String, vertex: String, column: usize, expected: u64, got: u64 },
    NotATree { vertices: usize, edges: usize, connected: bool },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NoVertices => write!(f, "tree has no vertices"),
            Violation::DuplicateVertex(v) => write!(f, "duplicate vertex id `{v}`"),
            Violation::DuplicateEdge(e) => write!(f, "duplicate edge id `{e}`"),
            Violation::EmptyAlgebra { owner } => write!(f, "`{owner}` has an empty block list"),
            Violation::ZeroBlock { owner, block } => {
                write!(f, "`{owner}` block {} has size 0", block + 1)
            }
            Violation::UnknownEndpoint { edge, vertex } => {
                write!(f, "edge `{edge}` refers to unknown vertex `{vertex}`")
            }
            Violation::UnknownRoot(r) => write!(f, "root `{r}` is not a declared vertex"),
            Violation::MatrixShape { edge, side, expected, got } => write!(
                f,
                "edge `{edge}` {side}: expected {}x{} matrix, got {}x{}",
                expected.0, expected.1, got.0, got.1
            ),
            Violation::ColumnIdentity { edge, vertex, column, expected, got } => write!(
                f,
                "edge `{edge}` into `{vertex}`: column {} sums to {got}, block size is {expected}",
                column + 1
            ),
            Violation::NotATree { vertices, edges, connected } => write!(
                f,
                "not a tree: {vertices} vertices, {edges} edges, {}",
                if *connected { "connected" } else { "disconnected" }
            ),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "violation: {v}")?;
        }
        Ok(())
    }
}

/// An edge seen from the root: data flows parent → child.
#[derive(Clone, Debug)]
pub struct OrientedEdge<'a> {
    pub index: usize,
    pub edge: &'a TreeEdge,
    pub parent: usize,
    pub child: usize,
    pub parent_map: &'a RestrictionMap,
    pub child_map: &'a RestrictionMap,
}

impl TreeOfAlgebras {
    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.id == id)
    }

    pub fn algebra(&self, v: usize) -> &SemiSimpleAlgebra {
        &self.vertices[v].blocks
    }

    pub fn root_index(&self) -> usize {
        self.vertex_index(&self.root).unwrap_or(0)
    }

    /// Edges oriented away from the root, listed in breadth-first order.
    pub fn oriented_edges(&self) -> Vec<OrientedEdge<'_>> {
        let mut out = Vec::new();
        let mut seen = vec![false; self.vertices.len()];
        let mut used = vec![false; self.edges.len()];
        let mut queue = std::collections::VecDeque::from([self.root_index()]);
        seen[self.root_index()] = true;
        while let Some(v) = queue.pop_front() {
            for (ei, e) in self.edges.iter().enumerate() {
                if used[ei] {
                    continue;
                }
                let (Some(f), Some(t)) = (self.vertex_index(&e.from), self.vertex_index(&e.to)) else {
                    continue;
                };
                let oriented = if f == v {
                    Some((t, &e.restriction_from, &e.restriction_to))
                } else if t == v {
                    Some((f, &e.restriction_to, &e.restriction_from))
                } else {
                    None
                };
                if let Some((child, pm, cm)) = oriented {
                    used[ei] = true;
                    out.push(OrientedEdge { index: ei, edge: e, parent: v, child, parent_map: pm, child_map: cm });
                    if !seen[child] {
                        seen[child] = true;
                        queue.push_back(child);
                    }
                }
            }
        }
        out.sort_by_key(|o| o.index);
        out
    }

    /// Checks every structural invariant and reports all violations found.
    pub fn validate(&self) -> ValidationReport {
        let mut vs = Vec::new();
        if self.vertices.is_empty() {
            vs.push(Violation::NoVertices);
        }
        let mut ids = BTreeSet::new();
        for v in &self.vertices {
            if !ids.insert(v.id.as_str()) {
                vs.push(Violation::DuplicateVertex(v.id.clone()));
            }
            check_blocks(&v.id, &v.blocks, &mut vs);
        }
        let mut eids = BTreeSet::new();
        for e in &self.edges {
            if !eids.insert(e.id.as_str()) {
                vs.push(Violation::DuplicateEdge(e.id.clone()));
            }
            check_blocks(&e.id, &e.blocks, &mut vs);
            for (side, vid, map) in
                [("restriction_from", &e.from, &e.restriction_from), ("restriction_to", &e.to, &e.restriction_to)]
            {
                let Some(vi) = self.vertex_index(vid) else {
                    vs.push(Violation::UnknownEndpoint { edge: e.id.clone(), vertex: vid.clone() });
                    continue;
                };
                let target = &self.vertices[vi].blocks;
                let rows = map.matrix.len();
                let ragged = map.matrix.iter().any(|r| r.len() != target.len());
                if rows != e.blocks.len() || ragged {
                    let cols = map.matrix.first().map_or(0, Vec::len);
                    vs.push(Violation::MatrixShape {
                        edge: e.id.clone(),
                        side,
                        expected: (e.blocks.len(), target.len()),
                        got: (rows, cols),
                    });
                    continue;
                }
                for (j, &dj) in target.blocks.iter().enumerate() {
                    let got: u64 = (0..rows).map(|k| u64::from(map.get(k, j)) * u64::from(e.blocks.blocks[k])).sum();
                    if got != u64::from(dj) {
                        vs.push(Violation::ColumnIdentity {
                            edge: e.id.clone(),
                            vertex: vid.clone(),
                            column: j,
                            expected: u64::from(dj),
                            got,
                        });
                    }
                }
            }
        }
        if !self.vertices.is_empty() && self.vertex_index(&self.root).is_none() {
            vs.push(Violation::UnknownRoot(self.root.clone()));
        }
        let n = self.vertices.len();
        if n > 0 {
            let mut uf = UnionFind::<usize>::new(n);
            for e in &self.edges {
                if let (Some(a), Some(b)) = (self.vertex_index(&e.from), self.vertex_index(&e.to)) {
                    uf.union(a, b);
                }
            }
            let connected = (1..n).all(|i| uf.equiv(0, i));
            if !connected || self.edges.len() + 1 != n {
                vs.push(Violation::NotATree { vertices: n, edges: self.edges.len(), connected });
            }
        }
        ValidationReport { violations: vs }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let r = self.validate();
        match r.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::InvalidTree(v.to_string())),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("tree serializes")
    }

    /// Vertex-block weights `d_v(i)` keyed by vertex id.
    pub fn weights(&self) -> BTreeMap<&str, &[u32]> {
        self.vertices.iter().map(|v| (v.id.as_str(), v.blocks.blocks.as_slice())).collect()
    }
}

fn check_blocks(owner: &str, a: &SemiSimpleAlgebra, vs: &mut Vec<Violation>) {
    if a.is_empty() {
        vs.push(Violation::EmptyAlgebra { owner: owner.to_string() });
    }
    for (i, &d) in a.blocks.iter().enumerate() {
        if d == 0 {
            vs.push(Violation::ZeroBlock { owner: owner.to_string(), block: i });
        }
    }
}

/// Parses a tree document and rejects it unless every invariant holds.
pub fn parse_tree(text: &str) -> Result<TreeOfAlgebras> {
    let t = parse_tree_unchecked(text)?;
    t.ensure_valid()?;
    Ok(t)
}

/// Parses a tree document without checking its invariants; pair with
/// [`validate_tree`] to get every violation at once.
pub fn parse_tree_unchecked(text: &str) -> Result<TreeOfAlgebras> {
    let doc: TreeDocument = serde_json::from_str(text)?;
    let root = match doc.root {
        Some(r) => r,
        None => doc.vertices.first().map(|v| v.id.clone()).unwrap_or_default(),
    };
    Ok(TreeOfAlgebras { name: doc.name, root, vertices: doc.vertices, edges: doc.edges })
}

pub fn validate_tree(t: &TreeOfAlgebras) -> ValidationReport {
    t.validate()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two(rf: Vec<Vec<u32>>) -> TreeOfAlgebras {
        TreeOfAlgebras {
            name: "t".into(),
            root: "v".into(),
            vertices: vec![
                TreeVertex { id: "v".into(), blocks: SemiSimpleAlgebra::new(vec![1, 1]) },
                TreeVertex { id: "w".into(), blocks: SemiSimpleAlgebra::new(vec![2]) },
            ],
            edges: vec![TreeEdge {
                id: "e".into(),
                from: "v".into(),
                to: "w".into(),
                blocks: SemiSimpleAlgebra::new(vec![1, 1]),
                restriction_from: RestrictionMap::new(rf),
                restriction_to: RestrictionMap::new(vec![vec![1], vec![1]]),
            }],
        }
    }

    #[test]
    fn column_identity_violation_names_column() {
        let t = two(vec![vec![1, 0], vec![0, 0]]);
        let r = t.validate();
        assert_eq!(
            r.violations,
            vec![Violation::ColumnIdentity { edge: "e".into(), vertex: "v".into(), column: 1, expected: 1, got: 0 }]
        );
        assert!(two(vec![vec![1, 0], vec![0, 1]]).validate().is_ok());
    }

    #[test]
    fn single_vertex_is_ok() {
        let t = TreeOfAlgebras {
            name: "pt".into(),
            root: "v".into(),
            vertices: vec![TreeVertex { id: "v".into(), blocks: SemiSimpleAlgebra::new(vec![1, 2]) }],
            edges: vec![],
        };
        assert!(t.validate().is_ok());
    }

    #[test]
    fn cycle_is_not_a_tree() {
        let mut t = two(vec![vec![1, 0], vec![0, 1]]);
        let mut e2 = t.edges[0].clone();
        e2.id = "e2".into();
        t.edges.push(e2);
        assert!(t.validate().violations.iter().any(|v| matches!(v, Violation::NotATree { .. })));
        let err = parse_tree(&t.to_json()).unwrap_err();
        assert!(err.to_string().contains("not a tree"), "{err}");
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_tree("{\"vertices\": [ {\"id\": 1} ]}").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 1, .. }), "{err}");
    }

    #[test]
    fn root_defaults_to_first_vertex() {
        let t = parse_tree(r#"{"vertices":[{"id":"a","blocks":[1]}]}"#).unwrap();
        assert_eq!(t.root, "a");
    }
}
