//! Localizing at determinantal semi-invariants Δ_e instead of the canonical
//! Σ_e, and the monoid S_Δ of dimension vectors that survive it.
//!
//! For an edge `v — w` write `a = α^(v)`, `b = α^(w)`, `P_ij` for the number of
//! Γ-arrows `μ_i^(v) → μ_j^(w)` and `Q_ij` (= `R_ij`) for the number of linearly
//! independent entries of the block `A_ij` of Δ_e. A weak vector lies in S_Δ
//! when `a_i ≤ Σ_j min(P_ij, Q_ij) b_j` and `b_j ≤ Σ_i min(P_ij, R_ij) a_i` for
//! every edge. With [`Reading::PerIndex`] the counts are taken per column
//! (resp. row) of the block instead, one inequality per index.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::etale::{build, EtaleQuiver};
use crate::hilbert::{cut_by_inequalities, hilbert_basis};
use crate::matrix::QMatrix;
use crate::poisson::{split_coefficient, split_signed_terms};
use crate::quiver::DimVector;
use crate::rational::Q;
use crate::semigroup::{canonical_sort, DimVecConstraintSystem};
use crate::tree::TreeOfAlgebras;
use crate::zariski::{sigma_matrix, ArrowMatrix, ZariskiQuiver};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Reading {
    /// One inequality per block pair, counting independent entries of the block.
    #[default]
    Block,
    /// One inequality per column (resp. row) index of the blocks.
    PerIndex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeDelta {
    pub edge: usize,
    pub weight: u32,
    pub matrix: ArrowMatrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SDeltaSpec {
    pub deltas: Vec<EdgeDelta>,
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct SpecDocument {
    edges: Vec<EdgeDocument>,
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct EdgeDocument {
    edge: String,
    #[serde(default = "one")]
    weight: u32,
    rows: Vec<String>,
    cols: Vec<String>,
    entries: Vec<Vec<String>>,
}

fn one() -> u32 {
    1
}

impl SDeltaSpec {
    /// Σ_e for every edge with `l = 1`. This is a legitimate Δ only when every
    /// S_e-block has size one.
    pub fn canonical(t: &TreeOfAlgebras, z: &ZariskiQuiver) -> Result<Self> {
        let mut deltas = Vec::new();
        for (i, e) in t.edges.iter().enumerate() {
            deltas.push(EdgeDelta { edge: i, weight: 1, matrix: sigma_matrix(t, z, &e.id)? });
        }
        let spec = Self { deltas };
        spec.validate(t, z)?;
        Ok(spec)
    }

    /// `{"edges": [{"edge": "e", "weight": 1, "rows": ["W:1", …],
    /// "cols": ["V:1", …], "entries": [["e:1:1:1", "0", "2 e:2:1:1 - e:2:1:2"], …]}]}`
    pub fn from_json(t: &TreeOfAlgebras, z: &ZariskiQuiver, text: &str) -> Result<Self> {
        let doc: SpecDocument = serde_json::from_str(text)?;
        let q = &z.quiver;
        let vertex = |s: &str| q.vertex_index(s).ok_or_else(|| Error::Unknown { kind: "vertex", name: s.to_string() });
        let mut deltas = Vec::new();
        for ed in doc.edges {
            let edge = t.edge_index(&ed.edge).ok_or_else(|| Error::Unknown { kind: "edge", name: ed.edge.clone() })?;
            let rows = ed.rows.iter().map(|s| vertex(s)).collect::<Result<Vec<_>>>()?;
            let cols = ed.cols.iter().map(|s| vertex(s)).collect::<Result<Vec<_>>>()?;
            if ed.entries.len() != rows.len() {
                return Err(Error::InvalidSpec(format!("edge `{}`: {} rows of entries for {} rows", ed.edge, ed.entries.len(), rows.len())));
            }
            let mut m = ArrowMatrix::zero(rows, cols);
            for (r, row) in ed.entries.iter().enumerate() {
                if row.len() != m.cols() {
                    return Err(Error::InvalidSpec(format!("edge `{}`: row {} has {} entries", ed.edge, r + 1, row.len())));
                }
                for (c, cell) in row.iter().enumerate() {
                    if cell.trim() == "0" {
                        continue;
                    }
                    for (sign, term) in split_signed_terms(cell)? {
                        let (coeff, label) = split_coefficient(&term)?;
                        let a = q.arrow_index(&label).ok_or_else(|| Error::Unknown { kind: "arrow", name: label.clone() })?;
                        m.set(r, c, a, sign * coeff);
                    }
                }
            }
            deltas.push(EdgeDelta { edge, weight: ed.weight, matrix: m });
        }
        let spec = Self { deltas };
        spec.validate(t, z)?;
        Ok(spec)
    }

    /// The document `from_json` reads.
    pub fn to_json(&self, t: &TreeOfAlgebras, z: &ZariskiQuiver) -> String {
        let q = &z.quiver;
        let ids = |v: &[usize]| v.iter().map(|&x| q.vertices()[x].clone()).collect();
        let doc = SpecDocument {
            edges: self
                .deltas
                .iter()
                .map(|d| EdgeDocument {
                    edge: t.edges[d.edge].id.clone(),
                    weight: d.weight,
                    rows: ids(&d.matrix.row_vertices),
                    cols: ids(&d.matrix.col_vertices),
                    entries: (0..d.matrix.rows()).map(|r| (0..d.matrix.cols()).map(|c| d.matrix.cell_text(q, r, c)).collect()).collect(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("serialisable")
    }

    /// Every edge appears once; arrows sit in the right blocks; the μ_j^(w) rows
    /// number `l·d_w(j)` and the μ_i^(v) columns `l·d_v(i)`.
    pub fn validate(&self, t: &TreeOfAlgebras, z: &ZariskiQuiver) -> Result<()> {
        let mut seen = vec![false; t.edges.len()];
        for d in &self.deltas {
            let e = &t.edges[d.edge];
            if std::mem::replace(&mut seen[d.edge], true) {
                return Err(Error::InvalidSpec(format!("edge `{}` given twice", e.id)));
            }
            if d.weight == 0 {
                return Err(Error::InvalidSpec(format!("edge `{}` has weight 0", e.id)));
            }
            d.matrix.check(&z.quiver).map_err(|err| Error::InvalidSpec(format!("edge `{}`: {err}", e.id)))?;
            let oe = t.oriented_edges().into_iter().find(|o| o.index == d.edge).expect("every edge is oriented");
            for (side, tv, list) in [("rows", oe.child, &d.matrix.row_vertices), ("columns", oe.parent, &d.matrix.col_vertices)] {
                for (i, &size) in t.vertices[tv].blocks.blocks.iter().enumerate() {
                    let gv = z.vertex(tv, i);
                    let have = list.iter().filter(|&&x| x == gv).count();
                    let want = (d.weight * size) as usize;
                    if have != want {
                        return Err(Error::InvalidSpec(format!(
                            "edge `{}`: {have} {side} over `{}`, expected {want}",
                            e.id,
                            z.quiver.vertices()[gv]
                        )));
                    }
                }
                if list.iter().any(|&x| z.blocks[x].0 != tv) {
                    return Err(Error::InvalidSpec(format!("edge `{}`: {side} outside the edge", e.id)));
                }
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(Error::InvalidSpec(format!("edge `{}` has no Δ", t.edges[i].id)));
        }
        Ok(())
    }

    /// The S_Δ inequalities as rows `c` with `c·α ≥ 0`.
    pub fn inequalities(&self, t: &TreeOfAlgebras, z: &ZariskiQuiver, reading: Reading) -> Vec<Vec<i64>> {
        let n = z.quiver.vertex_count();
        let counts = z.quiver.arrow_counts();
        let arrows = z.quiver.arrow_count();
        let mut out = Vec::new();
        for d in &self.deltas {
            let oe = t.oriented_edges().into_iter().find(|o| o.index == d.edge).expect("every edge is oriented");
            let vs = z.vertices_of(oe.parent);
            let ws = z.vertices_of(oe.child);
            let m = &d.matrix;
            // Rank of the entries of block (i, j) restricted to the scalar rows
            // `rs` and columns `cs`.
            let rank = |rs: &[usize], cs: &[usize]| -> u64 {
                let vecs: Vec<Vec<Q>> = rs
                    .iter()
                    .flat_map(|&r| cs.iter().map(move |&c| (r, c)))
                    .filter(|&(r, c)| !m.entries[r][c].is_empty())
                    .map(|(r, c)| {
                        let mut v = vec![Q::default(); arrows];
                        for (a, x) in &m.entries[r][c] {
                            v[*a] = x.clone();
                        }
                        v
                    })
                    .collect();
                if vecs.is_empty() {
                    0
                } else {
                    QMatrix::from_rows(vecs).expect("equal lengths").rank() as u64
                }
            };
            let rows_of = |j: usize| -> Vec<usize> { (0..m.rows()).filter(|&r| m.row_vertices[r] == j).collect() };
            let cols_of = |i: usize| -> Vec<usize> { (0..m.cols()).filter(|&c| m.col_vertices[c] == i).collect() };
            // a_i ≤ Σ_j min(P_ij, Q_ij) b_j.
            for &i in &vs {
                let cols = cols_of(i);
                let groups: Vec<Vec<usize>> = match reading {
                    Reading::Block => vec![cols.clone()],
                    Reading::PerIndex => cols.iter().map(|&c| vec![c]).collect(),
                };
                for g in groups {
                    let mut row = vec![0i64; n];
                    row[i] -= 1;
                    for &j in &ws {
                        row[j] += counts[i][j].min(rank(&rows_of(j), &g)) as i64;
                    }
                    out.push(row);
                }
            }
            // b_j ≤ Σ_i min(P_ij, R_ij) a_i.
            for &j in &ws {
                let rows = rows_of(j);
                let groups: Vec<Vec<usize>> = match reading {
                    Reading::Block => vec![rows.clone()],
                    Reading::PerIndex => rows.iter().map(|&r| vec![r]).collect(),
                };
                for g in groups {
                    let mut row = vec![0i64; n];
                    row[j] -= 1;
                    for &i in &vs {
                        row[i] += counts[i][j].min(rank(&g, &cols_of(i))) as i64;
                    }
                    out.push(row);
                }
            }
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn contains(&self, t: &TreeOfAlgebras, z: &ZariskiQuiver, reading: Reading, a: &[u64]) -> Result<bool> {
        if a.len() != z.quiver.vertex_count() {
            return Err(Error::SizeMismatch { expected: z.quiver.vertex_count(), got: a.len() });
        }
        let dot = |row: &Vec<i64>| row.iter().zip(a).map(|(c, &x)| c * x as i64).sum::<i64>();
        let weak = weak_rows(t, z).iter().all(|r| dot(r) == 0);
        Ok(weak
            && self
                .inequalities(t, z, reading)
                .iter()
                .all(|row| dot(row) >= 0))
    }
}

/// Weak-vector equalities, one per connected component of every Γ_e: the
/// weighted sums over the two sides of the component agree. Components are
/// treated separately, so a vector living on one component is weak on its own.
pub fn weak_rows(t: &TreeOfAlgebras, z: &ZariskiQuiver) -> Vec<Vec<i64>> {
    let sys = DimVecConstraintSystem::new(t, z);
    let n = sys.len();
    let counts = z.quiver.arrow_counts();
    let mut rows = Vec::new();
    for oe in t.oriented_edges() {
        let (vs, ws) = (&sys.groups[oe.parent], &sys.groups[oe.child]);
        let mut uf = petgraph::unionfind::UnionFind::new(n);
        for &i in vs {
            for &j in ws {
                if counts[i][j] + counts[j][i] > 0 {
                    uf.union(i, j);
                }
            }
        }
        let mut by_root: BTreeMap<usize, Vec<i64>> = BTreeMap::new();
        for (&x, sign) in vs.iter().map(|x| (x, 1i64)).chain(ws.iter().map(|x| (x, -1i64))) {
            by_root.entry(uf.find(x)).or_insert_with(|| vec![0; n])[x] += sign * sys.weights[x] as i64;
        }
        rows.extend(by_root.into_values().filter(|r| r.iter().any(|&v| v > 0) && r.iter().any(|&v| v < 0)));
    }
    rows
}

/// Hilbert basis of S_Δ: weak vectors (equal weighted sums at the two ends of
/// every edge) satisfying the inequalities. The weak monoid's basis is cut by
/// one halfspace at a time. Canonically sorted.
pub fn sdelta_generators(t: &TreeOfAlgebras, z: &ZariskiQuiver, spec: &SDeltaSpec, reading: Reading) -> Result<Vec<DimVector>> {
    spec.validate(t, z)?;
    let sys = DimVecConstraintSystem::new(t, z);
    let n = sys.len();
    let rows = weak_rows(t, z);
    let weak = hilbert_basis(&rows, n);
    let mut ineq = spec.inequalities(t, z, reading);
    ineq.retain(|c| c.iter().any(|&v| v < 0));
    ineq.sort();
    ineq.dedup();
    let mut gens = cut_by_inequalities(&weak, &ineq);
    canonical_sort(&mut gens, &sys);
    gens.dedup();
    Ok(gens)
}

/// Ψ built from the S_Δ generators. Negative arrow counts can occur here;
/// they are clamped to zero and reported.
pub fn etale_quiver_localized(
    t: &TreeOfAlgebras,
    z: &ZariskiQuiver,
    spec: &SDeltaSpec,
    reading: Reading,
) -> Result<(EtaleQuiver, Vec<String>)> {
    let gens = sdelta_generators(t, z, spec, reading)?;
    build(&z.quiver, gens, DimVecConstraintSystem::new(t, z), true)
}

/// The 8×6 Δ on the edge of the GL₂(ℤ) tree used as a worked example: rows over
/// `b1 b2 b6 b6 b3 b4 b5 b5`, columns over `a1 a2 a3 a4 a5 a5`.
pub fn gl2z_example_delta(t: &TreeOfAlgebras, z: &ZariskiQuiver) -> Result<SDeltaSpec> {
    let a = |i: usize| z.vertex(0, i - 1);
    let b = |j: usize| z.vertex(1, j - 1);
    let q = &z.quiver;
    let between = |i: usize, j: usize| -> Vec<usize> {
        let mut v: Vec<usize> = (0..q.arrow_count()).filter(|&x| q.arrow(x).source == a(i) && q.arrow(x).target == b(j)).collect();
        v.sort_by(|&x, &y| q.arrow(x).label.cmp(&q.arrow(y).label));
        v
    };
    let rows = vec![b(1), b(2), b(6), b(6), b(3), b(4), b(5), b(5)];
    let cols = vec![a(1), a(2), a(3), a(4), a(5), a(5)];
    let mut m = ArrowMatrix::zero(rows, cols);
    let mut put = |r: usize, c: usize, arrow: Option<usize>| -> Result<()> {
        let x = arrow.ok_or_else(|| Error::Internal("missing arrow in the GL₂ tree".into()))?;
        m.set(r, c, x, Q::from_integer(1.into()));
        Ok(())
    };
    let single = |i, j| between(i, j).first().copied();
    let cells: [(usize, usize, usize, usize); 12] = [
        (0, 0, 1, 1),
        (0, 2, 3, 1),
        (1, 1, 2, 2),
        (1, 3, 4, 2),
        (2, 0, 1, 6),
        (2, 1, 2, 6),
        (2, 2, 3, 6),
        (3, 0, 1, 6),
        (3, 1, 2, 6),
        (3, 3, 4, 6),
        (4, 4, 5, 3),
        (5, 5, 5, 4),
    ];
    for &(r, c, i, j) in &cells {
        put(r, c, single(i, j))?;
    }
    let b55 = between(5, 5);
    put(6, 4, b55.first().copied())?;
    put(6, 5, b55.get(1).copied())?;
    put(7, 4, b55.get(1).copied())?;
    put(7, 5, b55.first().copied())?;
    let edge = t.edge_index("D2").ok_or_else(|| Error::Unknown { kind: "edge", name: "D2".into() })?;
    let spec = SDeltaSpec { deltas: vec![EdgeDelta { edge, weight: 1, matrix: m }] };
    spec.validate(t, z)?;
    Ok(spec)
}

/// Counts of Ψ-arrows by (source, target) pair.
pub fn arrow_table(psi: &EtaleQuiver) -> BTreeMap<(usize, usize), usize> {
    let mut out = BTreeMap::new();
    for a in psi.quiver.arrows() {
        *out.entry((a.source, a.target)).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::preset_tree;
    use crate::semigroup::semigroup_generators;
    use crate::zariski::zariski_quiver;

    #[test]
    fn canonical_sigma_reproduces_full_generators() {
        let t = preset_tree("sl2z").unwrap();
        let z = zariski_quiver(&t).unwrap();
        let spec = SDeltaSpec::canonical(&t, &z).unwrap();
        let mut a = sdelta_generators(&t, &z, &spec, Reading::Block).unwrap();
        let mut b = semigroup_generators(&t, &z).unwrap();
        a.sort();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn canonical_needs_unit_edge_blocks() {
        let t = crate::tree::parse_tree(
            r#"{"vertices":[{"id":"v","blocks":[2]},{"id":"w","blocks":[2]}],
               "edges":[{"id":"e","from":"v","to":"w","blocks":[2],
                         "restriction_from":[[1]],"restriction_to":[[1]]}]}"#,
        )
        .unwrap();
        let z = zariski_quiver(&t).unwrap();
        assert!(matches!(SDeltaSpec::canonical(&t, &z), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn gl2_spec_round_trips() {
        let t = preset_tree("gl2z").unwrap();
        let z = zariski_quiver(&t).unwrap();
        let spec = gl2z_example_delta(&t, &z).unwrap();
        assert_eq!(SDeltaSpec::from_json(&t, &z, &spec.to_json(&t, &z)).unwrap(), spec);
    }

    #[test]
    fn json_spec() {
        let t = crate::tree::parse_tree(
            r#"{"vertices":[{"id":"v","blocks":[1]},{"id":"w","blocks":[1]}],
               "edges":[{"id":"e","from":"v","to":"w","blocks":[1],
                         "restriction_from":[[1]],"restriction_to":[[1]]}]}"#,
        )
        .unwrap();
        let z = zariski_quiver(&t).unwrap();
        let text = r#"{"edges":[{"edge":"e","rows":["w:1"],"cols":["v:1"],"entries":[["2 e:1:1:1"]]}]}"#;
        let spec = SDeltaSpec::from_json(&t, &z, text).unwrap();
        assert_eq!(sdelta_generators(&t, &z, &spec, Reading::Block).unwrap(), vec![vec![1, 1]]);
        let bad = r#"{"edges":[{"edge":"e","rows":["v:1"],"cols":["v:1"],"entries":[["e:1:1:1"]]}]}"#;
        assert!(SDeltaSpec::from_json(&t, &z, bad).is_err());
    }
}
