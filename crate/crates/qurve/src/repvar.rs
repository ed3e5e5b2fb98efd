//! Exact evaluation on representations: traces, the Poisson bracket of
//! traces, flows, determinantal semi-invariants and the Calogero–Moser space.

use std::collections::BTreeMap;

use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::poisson::{flow, induced_bracket, moment_element, NCPoly, NecklacePoly, Path};
use crate::quiver::{DoubleQuiver, Quiver};
use crate::rational::Q;
use crate::semigroup::{DimVecConstraintSystem, DimVecStatus};
use crate::tree::TreeOfAlgebras;
use crate::zariski::{sigma_matrix, ArrowMatrix, ZariskiQuiver};

/// A representation: a space of dimension `dims[v]` at every vertex and a
/// `dims[t(a)] × dims[s(a)]` matrix for every arrow.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Representation {
    pub dims: Vec<usize>,
    pub maps: Vec<QMatrix>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RepDocument {
    #[serde(rename = "dim", alias = "dims")]
    dims: Dims,
    #[serde(default)]
    arrows: BTreeMap<String, QMatrix>,
}

/// Vertex dimensions, either in vertex order or keyed by vertex id.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum Dims {
    List(Vec<usize>),
    Map(BTreeMap<String, usize>),
}

impl Representation {
    pub fn new(q: &Quiver, dims: Vec<usize>, maps: Vec<QMatrix>) -> Result<Self> {
        if dims.len() != q.vertex_count() {
            return Err(Error::SizeMismatch { expected: q.vertex_count(), got: dims.len() });
        }
        if maps.len() != q.arrow_count() {
            return Err(Error::SizeMismatch { expected: q.arrow_count(), got: maps.len() });
        }
        for (a, m) in q.arrows().iter().zip(&maps) {
            if m.rows() != dims[a.target] || m.cols() != dims[a.source] {
                return Err(Error::Shape(format!(
                    "`{}` needs a {}×{} matrix, got {}×{}",
                    a.label,
                    dims[a.target],
                    dims[a.source],
                    m.rows(),
                    m.cols()
                )));
            }
        }
        Ok(Self { dims, maps })
    }

    pub fn zero(q: &Quiver, dims: Vec<usize>) -> Self {
        let maps = q.arrows().iter().map(|a| QMatrix::zero(dims[a.target], dims[a.source])).collect();
        Self { dims, maps }
    }

    /// `{"dim": [1, 3], "arrows": {"a": [["1"], ["0"], ["2"]], …}}`; `dim` may
    /// also be an object keyed by vertex id. Arrows left out are zero.
    pub fn from_json(q: &Quiver, text: &str) -> Result<Self> {
        let doc: RepDocument = serde_json::from_str(text)?;
        let mut dims = vec![0; q.vertex_count()];
        match doc.dims {
            Dims::List(list) => {
                if list.len() != dims.len() {
                    return Err(Error::SizeMismatch { expected: dims.len(), got: list.len() });
                }
                dims = list;
            }
            Dims::Map(map) => {
                for (v, d) in map {
                    let i = q.vertex_index(&v).ok_or(Error::Unknown { kind: "vertex", name: v })?;
                    dims[i] = d;
                }
            }
        }
        let mut rep = Self::zero(q, dims.clone());
        for (l, m) in doc.arrows {
            let a = q.arrow_index(&l).ok_or(Error::Unknown { kind: "arrow", name: l })?;
            rep.maps[a] = m;
        }
        Self::new(q, dims, rep.maps)
    }

    pub fn to_json(&self, q: &Quiver) -> String {
        let doc = RepDocument {
            dims: Dims::List(self.dims.clone()),
            arrows: q.arrows().iter().map(|a| a.label.clone()).zip(self.maps.iter().cloned()).collect(),
        };
        serde_json::to_string_pretty(&doc).expect("serialisable")
    }

    pub fn dim_vector(&self) -> Vec<u64> {
        self.dims.iter().map(|&d| d as u64).collect()
    }
}

/// `R(x₁…xₙ) = R(x₁)⋯R(xₙ)`; idempotents give identities.
pub fn evaluate_path(p: &Path, r: &Representation) -> QMatrix {
    match p.arrows().split_first() {
        None => QMatrix::identity(r.dims[p.source()]),
        Some((&first, rest)) => rest.iter().fold(r.maps[first].clone(), |acc, &a| &acc * &r.maps[a]),
    }
}

/// Evaluates a combination of paths sharing their endpoints.
pub fn evaluate(p: &NCPoly, r: &Representation) -> Result<QMatrix> {
    let mut ends = p.terms().keys().map(|x| (x.source(), x.target()));
    let Some((s, t)) = ends.next() else {
        return Err(Error::Empty("polynomial"));
    };
    if ends.any(|e| e != (s, t)) {
        return Err(Error::Shape("terms run between different vertices".into()));
    }
    let mut out = QMatrix::zero(r.dims[t], r.dims[s]);
    for (path, c) in p.terms() {
        out = &out + &evaluate_path(path, r).scale(c);
    }
    Ok(out)
}

/// `Σ c·tr R(p)` over the closed terms; open paths have no trace.
pub fn trace(p: &NCPoly, r: &Representation) -> Q {
    p.terms().iter().filter(|(x, _)| x.is_closed()).map(|(x, c)| evaluate_path(x, r).trace() * c).sum()
}

pub fn trace_necklace(q: &Quiver, n: &NecklacePoly, r: &Representation) -> Q {
    trace(&n.to_ncpoly(q), r)
}

/// `(g·R)(a) = g_{t(a)} R(a) g_{s(a)}⁻¹`.
pub fn act(q: &Quiver, g: &[QMatrix], r: &Representation) -> Result<Representation> {
    if g.len() != q.vertex_count() {
        return Err(Error::SizeMismatch { expected: q.vertex_count(), got: g.len() });
    }
    let mut inv = Vec::with_capacity(g.len());
    for (v, gv) in g.iter().enumerate() {
        if gv.rows() != r.dims[v] || !gv.is_square() {
            return Err(Error::Shape(format!("group element at `{}` has the wrong size", q.vertices()[v])));
        }
        inv.push(gv.inverse().ok_or_else(|| Error::Singular(q.vertices()[v].clone()))?);
    }
    let maps = q.arrows().iter().zip(&r.maps).map(|(a, m)| &(&g[a.target] * m) * &inv[a.source]).collect();
    Ok(Representation { dims: r.dims.clone(), maps })
}

/// `{tr n, tr m}(R) = tr R(μ{{n,m}})`.
pub fn poisson_trace_bracket(dq: &DoubleQuiver, n: &NecklacePoly, m: &NecklacePoly, r: &Representation) -> Q {
    let q = dq.quiver();
    trace(&induced_bracket(dq, &n.to_ncpoly(q), &m.to_ncpoly(q)), r)
}

/// `γ_{n,ρ}` moved onto representations: `R′(a) = R(γ(a))`.
pub fn flow_on_rep(dq: &DoubleQuiver, n: &NecklacePoly, rho: &Q, r: &Representation) -> Result<Representation> {
    let q = dq.quiver();
    let mut maps = Vec::with_capacity(q.arrow_count());
    for a in 0..q.arrow_count() {
        let image = flow(dq, n, rho, &NCPoly::arrow(q, a))?;
        maps.push(evaluate(&image, r)?);
    }
    Representation::new(q, r.dims.clone(), maps)
}

/// The moment map: `R(m)` split into its diagonal blocks, one per vertex.
pub fn moment_evaluate(dq: &DoubleQuiver, r: &Representation) -> Vec<QMatrix> {
    let q = dq.quiver();
    let m = moment_element(dq);
    (0..q.vertex_count())
        .map(|v| {
            let part: NCPoly = m.terms().iter().filter(|(p, _)| p.source() == v).map(|(p, c)| (p.clone(), c.clone())).collect();
            if part.is_zero() {
                QMatrix::zero(r.dims[v], r.dims[v])
            } else {
                evaluate(&part, r).expect("moment terms at one vertex share endpoints")
            }
        })
        .collect()
}

/// `R(m) = Σ λ_v·1_v`.
pub fn moment_equals(dq: &DoubleQuiver, r: &Representation, lambda: &[Q]) -> bool {
    moment_evaluate(dq, r).iter().zip(lambda).zip(&r.dims).all(|((m, l), &d)| *m == QMatrix::identity(d).scale(l))
}

/// Evaluates an arrow matrix entrywise: scalar entry `(r, c)` becomes the
/// block `Σ coeff·R(arrow)` of size `dims[row vertex] × dims[col vertex]`.
pub fn evaluate_arrow_matrix(m: &ArrowMatrix, r: &Representation) -> Result<QMatrix> {
    let blocks: Vec<Vec<QMatrix>> = m
        .entries
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, e)| {
                    let mut b = QMatrix::zero(r.dims[m.row_vertices[i]], r.dims[m.col_vertices[j]]);
                    for (a, c) in e {
                        b = &b + &r.maps[*a].scale(c);
                    }
                    b
                })
                .collect()
        })
        .collect();
    if blocks.is_empty() {
        return Ok(QMatrix::zero(0, 0));
    }
    QMatrix::block(&blocks)
}

/// `det Δ(R)`; fails unless the evaluated matrix is square.
pub fn det_semi_invariant(m: &ArrowMatrix, r: &Representation) -> Result<Q> {
    let big = evaluate_arrow_matrix(m, r)?;
    if !big.is_square() {
        return Err(Error::Shape(format!("Δ(R) is {}×{}", big.rows(), big.cols())));
    }
    Ok(big.det())
}

/// Γ-vertex weights of the character θ_e: `−d_v(i)` over the parent, `d_w(j)`
/// over the child, zero elsewhere.
pub fn theta_weights(t: &TreeOfAlgebras, z: &ZariskiQuiver, edge: &str) -> Result<Vec<i64>> {
    let ei = t.edge_index(edge).ok_or_else(|| Error::Unknown { kind: "edge", name: edge.to_string() })?;
    let oe = t.oriented_edges().into_iter().find(|o| o.index == ei).expect("every edge is oriented");
    let mut w = vec![0i64; z.quiver.vertex_count()];
    for (i, &d) in t.vertices[oe.parent].blocks.blocks.iter().enumerate() {
        w[z.vertex(oe.parent, i)] -= i64::from(d);
    }
    for (j, &d) in t.vertices[oe.child].blocks.blocks.iter().enumerate() {
        w[z.vertex(oe.child, j)] += i64::from(d);
    }
    Ok(w)
}

/// `θ_e(g) = Π det(g_v)^{d_v} Π det(g_w)^{−d_w}`; with it
/// `det Δ(g⁻¹·R) = θ_e(g)^l · det Δ(R)` whenever every Γ vertex occurs as
/// often among the columns (rows) of Δ as its block size. Σ_e over an edge
/// with larger S_e-blocks repeats vertices differently and picks up another
/// character.
pub fn theta_character(t: &TreeOfAlgebras, z: &ZariskiQuiver, edge: &str, g: &[QMatrix]) -> Result<Q> {
    let w = theta_weights(t, z, edge)?;
    let mut out = Q::one();
    for (v, (gv, &k)) in g.iter().zip(&w).enumerate() {
        if k == 0 {
            continue;
        }
        let d = gv.det();
        if d.is_zero() {
            return Err(Error::Singular(z.quiver.vertices()[v].clone()));
        }
        let p = num::pow(d, k.unsigned_abs() as usize);
        out *= if k < 0 { p } else { Q::one() / p };
    }
    Ok(out)
}

/// `Σ_k θ_k β_k ≥ 0` (or `> 0` when `strict`) for a sub-dimension vector β.
pub fn e_semistable_inequality(weights: &[i64], beta: &[u64], strict: bool) -> bool {
    let s: i64 = weights.iter().zip(beta).map(|(w, &b)| w * b as i64).sum();
    if strict {
        s > 0
    } else {
        s >= 0
    }
}

/// Whether every canonical Σ_e(R) is invertible. The dimension vector of R
/// must be full, otherwise Σ_e(R) is not even square.
pub fn sigma_invertible(t: &TreeOfAlgebras, z: &ZariskiQuiver, r: &Representation) -> Result<bool> {
    let dims = r.dim_vector();
    match DimVecConstraintSystem::new(t, z).check(&dims)? {
        DimVecStatus::Full(_) => {}
        other => return Err(Error::NotFull(format!("{dims:?} is {other}"))),
    }
    for e in &t.edges {
        let s = sigma_matrix(t, z, &e.id)?;
        if det_semi_invariant(&s, r)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A point `(X, Z, u, v)` of the Calogero–Moser double quiver:
/// `X = R(b*)`, `Z = R(b)`, `u = R(a)`, `v = R(a*)`. The flow of `b^{k+1}/(k+1)`
/// then reads `(X + ρZ^k, Z, u, v)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CmPoint {
    pub x: QMatrix,
    pub z: QMatrix,
    pub u: QMatrix,
    pub v: QMatrix,
}

impl CmPoint {
    pub fn from_rep(dq: &DoubleQuiver, r: &Representation) -> Result<Self> {
        let get = |l: &str| dq.arrow_by_label(l).map(|a| r.maps[a].clone());
        Ok(Self { x: get("b*")?, z: get("b")?, u: get("a")?, v: get("a*")? })
    }

    pub fn to_rep(&self, dq: &DoubleQuiver) -> Result<Representation> {
        let q = dq.quiver();
        let k = self.z.rows();
        let mut maps = vec![QMatrix::zero(0, 0); q.arrow_count()];
        for (l, m) in [("a", &self.u), ("b", &self.z), ("a*", &self.v), ("b*", &self.x)] {
            maps[dq.arrow_by_label(l)?] = m.clone();
        }
        let (one, two) = (q.vertex_index("1"), q.vertex_index("2"));
        let mut dims = vec![0; q.vertex_count()];
        dims[one.ok_or(Error::Unknown { kind: "vertex", name: "1".into() })?] = 1;
        dims[two.ok_or(Error::Unknown { kind: "vertex", name: "2".into() })?] = k;
        Representation::new(q, dims, maps)
    }
}

/// `rank([X, Z] + 1) = 1`.
pub fn cm_phase_space_check(x: &QMatrix, z: &QMatrix) -> bool {
    let c = &x.commutator(z) + &QMatrix::identity(x.rows());
    c.rank() == 1
}
