//! The Zariski quiver Γ of a tree and its localization matrices.
//!
//! Vertices of Γ are the simple blocks `μ_i^(v)` of the vertex algebras. Over
//! an edge oriented parent `v` → child `w` there are
//! `n_ij = Σ_k a^(ev)_{ki} a^(ew)_{kj}` arrows `μ_i^(v) → μ_j^(w)`: one for every
//! S_e-block `k`, copy `r` of `k` inside the v-side and copy `s` inside the
//! w-side. Copies are numbered through all blocks of the endpoint, so the label
//! `e:k:r:s` identifies an arrow uniquely.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::quiver::Quiver;
use crate::rational::{fmt_q, Q};
use crate::tree::TreeOfAlgebras;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowOrigin {
    pub edge: usize,
    /// S_e-block, 0-based.
    pub k: usize,
    /// Copy index among the parent-side columns of block `k`, 0-based.
    pub r: usize,
    /// Copy index among the child-side rows of block `k`, 0-based.
    pub s: usize,
    pub from_block: usize,
    pub to_block: usize,
}

#[derive(Clone, Debug)]
pub struct ZariskiQuiver {
    pub quiver: Quiver,
    /// Γ vertex → (tree vertex, block).
    pub blocks: Vec<(usize, usize)>,
    pub origins: Vec<ArrowOrigin>,
    index: BTreeMap<(usize, usize), usize>,
}

impl ZariskiQuiver {
    pub fn vertex(&self, tree_vertex: usize, block: usize) -> usize {
        self.index[&(tree_vertex, block)]
    }

    /// Γ vertices belonging to one tree vertex, in block order.
    pub fn vertices_of(&self, tree_vertex: usize) -> Vec<usize> {
        self.index.range((tree_vertex, 0)..(tree_vertex + 1, 0)).map(|(_, &v)| v).collect()
    }

    pub fn arrow_by_origin(&self, edge: usize, k: usize, r: usize, s: usize) -> Option<usize> {
        self.origins.iter().position(|o| o.edge == edge && o.k == k && o.r == r && o.s == s)
    }
}

/// (block, copy) pairs of the S_e-block `k` in a restriction map, in block order.
fn copies(map: &crate::tree::RestrictionMap, k: usize) -> Vec<usize> {
    map.matrix[k]
        .iter()
        .enumerate()
        .flat_map(|(j, &m)| std::iter::repeat_n(j, m as usize))
        .collect()
}

pub fn zariski_quiver(t: &TreeOfAlgebras) -> Result<ZariskiQuiver> {
    t.ensure_valid()?;
    let mut quiver = Quiver::new();
    let mut blocks = Vec::new();
    let mut index = BTreeMap::new();
    for (vi, v) in t.vertices.iter().enumerate() {
        for i in 0..v.blocks.len() {
            let id = quiver.add_vertex(format!("{}:{}", v.id, i + 1));
            blocks.push((vi, i));
            index.insert((vi, i), id);
        }
    }
    let mut origins = Vec::new();
    for oe in t.oriented_edges() {
        for k in 0..oe.edge.blocks.len() {
            let cols = copies(oe.parent_map, k);
            let rows = copies(oe.child_map, k);
            for (r, &i) in cols.iter().enumerate() {
                for (s, &j) in rows.iter().enumerate() {
                    let label = format!("{}:{}:{}:{}", oe.edge.id, k + 1, r + 1, s + 1);
                    quiver.add_arrow(label, index[&(oe.parent, i)], index[&(oe.child, j)])?;
                    origins.push(ArrowOrigin { edge: oe.index, k, r, s, from_block: i, to_block: j });
                }
            }
        }
    }
    Ok(ZariskiQuiver { quiver, blocks, origins, index })
}

/// Block matrix whose scalar entries are rational combinations of arrows.
/// Scalar row `r` lives over Γ vertex `row_vertices[r]`, column `c` over
/// `col_vertices[c]`; every arrow in entry (r, c) runs `col → row`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrowMatrix {
    pub row_vertices: Vec<usize>,
    pub col_vertices: Vec<usize>,
    pub entries: Vec<Vec<Vec<(usize, Q)>>>,
}

impl ArrowMatrix {
    pub fn zero(row_vertices: Vec<usize>, col_vertices: Vec<usize>) -> Self {
        let entries = vec![vec![Vec::new(); col_vertices.len()]; row_vertices.len()];
        Self { row_vertices, col_vertices, entries }
    }

    pub fn rows(&self) -> usize {
        self.row_vertices.len()
    }

    pub fn cols(&self) -> usize {
        self.col_vertices.len()
    }

    pub fn set(&mut self, r: usize, c: usize, arrow: usize, coeff: Q) {
        let e = &mut self.entries[r][c];
        match e.iter_mut().find(|(a, _)| *a == arrow) {
            Some((_, x)) => *x += coeff,
            None => e.push((arrow, coeff)),
        }
        e.retain(|(_, x)| !x.is_zero());
        e.sort_by_key(|(a, _)| *a);
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.iter().flatten().filter(|e| !e.is_empty()).count()
    }

    /// Every arrow must run from the column vertex to the row vertex.
    pub fn check(&self, q: &Quiver) -> Result<()> {
        for (r, row) in self.entries.iter().enumerate() {
            for (c, e) in row.iter().enumerate() {
                for (a, _) in e {
                    let ar = q.arrows().get(*a).ok_or_else(|| Error::Unknown { kind: "arrow", name: a.to_string() })?;
                    if ar.source != self.col_vertices[c] || ar.target != self.row_vertices[r] {
                        return Err(Error::Shape(format!(
                            "arrow `{}` misplaced at ({}, {})",
                            ar.label,
                            r + 1,
                            c + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Consecutive runs of equal vertices: (vertex, run length).
    pub fn row_blocks(&self) -> Vec<(usize, usize)> {
        runs(&self.row_vertices)
    }

    pub fn col_blocks(&self) -> Vec<(usize, usize)> {
        runs(&self.col_vertices)
    }

    /// One entry as text, e.g. `B11 - 2·B31`, or `0`.
    pub fn cell_text(&self, q: &Quiver, r: usize, c: usize) -> String {
        let e = &self.entries[r][c];
        if e.is_empty() {
            return "0".into();
        }
        e.iter()
            .enumerate()
            .map(|(i, (a, c))| {
                let l = &q.arrow(*a).label;
                let neg = *c < Q::zero();
                let abs = if neg { -c.clone() } else { c.clone() };
                let sign = match (i, neg) {
                    (0, false) => "",
                    (0, true) => "-",
                    (_, false) => " + ",
                    (_, true) => " - ",
                };
                if abs.is_one() {
                    format!("{sign}{l}")
                } else {
                    format!("{sign}{}·{l}", fmt_q(&abs))
                }
            })
            .collect()
    }

    pub fn display<'a>(&'a self, q: &'a Quiver) -> ArrowMatrixDisplay<'a> {
        ArrowMatrixDisplay { m: self, q }
    }
}

fn runs(v: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for &x in v {
        match out.last_mut() {
            Some((y, n)) if *y == x => *n += 1,
            _ => out.push((x, 1)),
        }
    }
    out
}

pub struct ArrowMatrixDisplay<'a> {
    m: &'a ArrowMatrix,
    q: &'a Quiver,
}

impl fmt::Display for ArrowMatrixDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (0..self.m.rows()).map(|r| (0..self.m.cols()).map(|c| self.m.cell_text(self.q, r, c)).collect()).collect();
        let width = cells.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(1);
        for (i, row) in cells.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let line: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
            write!(f, "[ {} ]", line.join("  "))?;
        }
        Ok(())
    }
}

/// The canonical Σ_e: rows are (w-block j, k, s), columns (v-block i, k, r),
/// both sorted lexicographically; entry = the arrow (e, k, r, s) when the
/// S_e-blocks agree, else 0.
pub fn sigma_matrix(t: &TreeOfAlgebras, z: &ZariskiQuiver, edge: &str) -> Result<ArrowMatrix> {
    let ei = t.edge_index(edge).ok_or_else(|| Error::Unknown { kind: "edge", name: edge.to_string() })?;
    let oe = t.oriented_edges().into_iter().find(|o| o.index == ei).expect("every edge is oriented");
    let mut cols = Vec::new();
    let mut rows = Vec::new();
    for k in 0..oe.edge.blocks.len() {
        for (r, &i) in copies(oe.parent_map, k).iter().enumerate() {
            cols.push((i, k, r));
        }
        for (s, &j) in copies(oe.child_map, k).iter().enumerate() {
            rows.push((j, k, s));
        }
    }
    cols.sort();
    rows.sort();
    let mut m = ArrowMatrix::zero(
        rows.iter().map(|&(j, _, _)| z.vertex(oe.child, j)).collect(),
        cols.iter().map(|&(i, _, _)| z.vertex(oe.parent, i)).collect(),
    );
    for (ri, &(_, k, s)) in rows.iter().enumerate() {
        for (ci, &(_, k2, r)) in cols.iter().enumerate() {
            if k == k2 {
                let a = z.arrow_by_origin(ei, k, r, s).expect("arrow exists for matching blocks");
                m.set(ri, ci, a, Q::one());
            }
        }
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::preset_tree;

    #[test]
    fn single_vertex_tree_has_no_arrows() {
        let t = crate::tree::parse_tree(r#"{"vertices":[{"id":"v","blocks":[1,2,3]}]}"#).unwrap();
        let z = zariski_quiver(&t).unwrap();
        assert_eq!(z.quiver.vertex_count(), 3);
        assert_eq!(z.quiver.arrow_count(), 0);
    }

    #[test]
    fn gl2_components() {
        let t = preset_tree("gl2z").unwrap();
        let z = zariski_quiver(&t).unwrap();
        assert_eq!(z.quiver.arrow_count(), 12);
        let x5 = z.vertex(0, 4);
        let y5 = z.vertex(1, 4);
        let par = z.quiver.arrows().iter().filter(|a| a.source == x5 && a.target == y5).count();
        assert_eq!(par, 2);
        let from_x5 = z.quiver.arrows().iter().filter(|a| a.source == x5).count();
        assert_eq!(from_x5, 4);
    }

    #[test]
    fn one_by_one_sigma() {
        let t = crate::tree::parse_tree(
            r#"{"vertices":[{"id":"v","blocks":[1]},{"id":"w","blocks":[1]}],
               "edges":[{"id":"e","from":"v","to":"w","blocks":[1],
                         "restriction_from":[[1]],"restriction_to":[[1]]}]}"#,
        )
        .unwrap();
        let z = zariski_quiver(&t).unwrap();
        let s = sigma_matrix(&t, &z, "e").unwrap();
        assert_eq!(s.display(&z.quiver).to_string(), "[ e:1:1:1 ]");
        assert!(sigma_matrix(&t, &z, "nope").is_err());
    }
}
