//! n-dimension vectors of Γ and the monoid they form.
//!
//! A Γ-dimension vector α comes from an n-dimensional representation of the
//! tree exactly when, for every edge and every S_e-block k, the multiplicity
//! of the k-th simple computed from either endpoint agrees:
//! `Σ_i a^(ev)_{ki} α^(v)_i = Σ_j a^(ew)_{kj} α^(w)_j`. Those equalities force the
//! weighted vertex sums `Σ_i d_v(i) α^(v)_i` to coincide; the common value is n.

use std::cmp::Reverse;

use crate::error::{Error, Result};
use crate::hilbert::hilbert_basis;
use crate::quiver::DimVector;
use crate::tree::TreeOfAlgebras;
use crate::zariski::ZariskiQuiver;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimVecConstraintSystem {
    /// `d_v(i)` for every Γ vertex.
    pub weights: Vec<u64>,
    /// Γ vertices grouped by tree vertex.
    pub groups: Vec<Vec<usize>>,
    /// One row per (edge, S_e-block); a vector is full iff every row vanishes on it.
    pub edge_rows: Vec<Vec<i64>>,
}

impl DimVecConstraintSystem {
    pub fn new(t: &TreeOfAlgebras, z: &ZariskiQuiver) -> Self {
        let n = z.quiver.vertex_count();
        let weights = z.blocks.iter().map(|&(v, i)| u64::from(t.vertices[v].blocks.blocks[i])).collect();
        let groups = (0..t.vertices.len()).map(|v| z.vertices_of(v)).collect();
        let mut edge_rows = Vec::new();
        for oe in t.oriented_edges() {
            for k in 0..oe.edge.blocks.len() {
                let mut row = vec![0i64; n];
                for (i, &m) in oe.parent_map.matrix[k].iter().enumerate() {
                    row[z.vertex(oe.parent, i)] += i64::from(m);
                }
                for (j, &m) in oe.child_map.matrix[k].iter().enumerate() {
                    row[z.vertex(oe.child, j)] -= i64::from(m);
                }
                edge_rows.push(row);
            }
        }
        Self { weights, groups, edge_rows }
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Weighted sum over each tree vertex.
    pub fn vertex_sums(&self, a: &[u64]) -> Vec<u64> {
        self.groups.iter().map(|g| g.iter().map(|&x| self.weights[x] * a[x]).sum()).collect()
    }

    pub fn edges_hold(&self, a: &[u64]) -> bool {
        self.edge_rows.iter().all(|r| r.iter().zip(a).map(|(c, &x)| c * x as i64).sum::<i64>() == 0)
    }

    pub fn check(&self, a: &[u64]) -> Result<DimVecStatus> {
        if a.len() != self.len() {
            return Err(Error::SizeMismatch { expected: self.len(), got: a.len() });
        }
        let sums = self.vertex_sums(a);
        let n = sums.first().copied().unwrap_or(0);
        if sums.iter().any(|&s| s != n) {
            return Ok(DimVecStatus::Invalid);
        }
        Ok(if self.edges_hold(a) { DimVecStatus::Full(n) } else { DimVecStatus::Weak(n) })
    }

    /// `n` of a vector whose vertex sums agree.
    pub fn degree(&self, a: &[u64]) -> u64 {
        self.vertex_sums(a).first().copied().unwrap_or(0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DimVecStatus {
    Full(u64),
    Weak(u64),
    Invalid,
}

impl std::fmt::Display for DimVecStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DimVecStatus::Full(n) => write!(f, "full({n})"),
            DimVecStatus::Weak(n) => write!(f, "weak({n})"),
            DimVecStatus::Invalid => write!(f, "invalid"),
        }
    }
}

pub fn dimvec_check(t: &TreeOfAlgebras, z: &ZariskiQuiver, a: &[u64]) -> Result<DimVecStatus> {
    DimVecConstraintSystem::new(t, z).check(a)
}

/// Sorts by n, then by decreasing entries (earlier vertices first).
pub fn canonical_sort(gens: &mut [DimVector], sys: &DimVecConstraintSystem) {
    gens.sort_by_key(|g| (sys.degree(g), Reverse(g.clone())));
}

/// Hilbert basis of the monoid of full n-dimension vectors, canonically sorted.
pub fn semigroup_generators(t: &TreeOfAlgebras, z: &ZariskiQuiver) -> Result<Vec<DimVector>> {
    let sys = DimVecConstraintSystem::new(t, z);
    let mut gens = hilbert_basis(&sys.edge_rows, sys.len());
    for g in &gens {
        match sys.check(g)? {
            DimVecStatus::Full(n) if n >= 1 => {}
            other => return Err(Error::Internal(format!("generator {g:?} is {other}"))),
        }
    }
    canonical_sort(&mut gens, &sys);
    Ok(gens)
}

/// All `c ∈ ℕ^k` with `Σ c_i gens[i] = α`, in lexicographic order.
pub fn decompose_in_generators(a: &[u64], gens: &[DimVector]) -> Vec<Vec<u64>> {
    let n = a.len();
    if gens.iter().any(|g| g.len() != n) {
        return Vec::new();
    }
    // reach[i][v]: some generator with index ≥ i touches vertex v.
    let mut reach = vec![vec![false; n]; gens.len() + 1];
    for i in (0..gens.len()).rev() {
        for v in 0..n {
            reach[i][v] = reach[i + 1][v] || gens[i][v] > 0;
        }
    }
    let mut out = Vec::new();
    let mut c = vec![0u64; gens.len()];
    let mut rem = a.to_vec();
    fn rec(i: usize, gens: &[DimVector], reach: &[Vec<bool>], rem: &mut [u64], c: &mut [u64], out: &mut Vec<Vec<u64>>) {
        if rem.iter().enumerate().any(|(v, &x)| x > 0 && !reach[i][v]) {
            return;
        }
        if i == gens.len() {
            out.push(c.to_vec());
            return;
        }
        let g = &gens[i];
        let max = g.iter().zip(rem.iter()).filter(|(&gv, _)| gv > 0).map(|(&gv, &r)| r / gv).min().unwrap_or(0);
        for m in 0..=max {
            for (r, &gv) in rem.iter_mut().zip(g) {
                *r -= gv * m;
            }
            c[i] = m;
            rec(i + 1, gens, reach, rem, c, out);
            for (r, &gv) in rem.iter_mut().zip(g) {
                *r += gv * m;
            }
        }
        c[i] = 0;
    }
    rec(0, gens, &reach, &mut rem, &mut c, &mut out);
    out
}

/// `Σ c_i gens[i]`.
pub fn combine(c: &[u64], gens: &[DimVector]) -> DimVector {
    let n = gens.first().map_or(0, Vec::len);
    let mut a = vec![0u64; n];
    for (&m, g) in c.iter().zip(gens) {
        for (x, &y) in a.iter_mut().zip(g) {
            *x += m * y;
        }
    }
    a
}
