//! Labelled multidigraphs with loops, Euler forms and doubling.

use std::collections::{BTreeMap, BTreeSet};

use petgraph::algo::kosaraju_scc;
use petgraph::graph::DiGraph;
use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Nonnegative integer vector indexed by the vertices of a quiver.
pub type DimVector = Vec<u64>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

impl Arrow {
    pub fn is_loop(&self) -> bool {
        self.source == self.target
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_vertices<I, S>(ids: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self { vertices: ids.into_iter().map(Into::into).collect(), arrows: Vec::new() }
    }

    pub fn add_vertex(&mut self, id: impl Into<String>) -> usize {
        self.vertices.push(id.into());
        self.vertices.len() - 1
    }

    /// Adds an arrow; labels must be unique.
    pub fn add_arrow(&mut self, label: impl Into<String>, source: usize, target: usize) -> Result<usize> {
        let label = label.into();
        let n = self.vertices.len();
        if source >= n || target >= n {
            return Err(Error::Unknown { kind: "vertex", name: source.max(target).to_string() });
        }
        if self.arrow_index(&label).is_some() {
            return Err(Error::Parse(format!("duplicate arrow label `{label}`")));
        }
        self.arrows.push(Arrow { label, source, target });
        Ok(self.arrows.len() - 1)
    }

    /// For callers that generate labels known to be fresh; skips the
    /// linear duplicate scan.
    pub(crate) fn push_fresh_arrow(&mut self, label: String, source: usize, target: usize) -> usize {
        debug_assert!(source < self.vertices.len() && target < self.vertices.len());
        self.arrows.push(Arrow { label, source, target });
        self.arrows.len() - 1
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == id)
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    /// `counts[i][j]` = number of arrows i → j.
    pub fn arrow_counts(&self) -> Vec<Vec<u64>> {
        let n = self.vertices.len();
        let mut c = vec![vec![0u64; n]; n];
        for a in &self.arrows {
            c[a.source][a.target] += 1;
        }
        c
    }

    pub fn loops_at(&self, v: usize) -> usize {
        self.arrows.iter().filter(|a| a.source == v && a.target == v).count()
    }

    pub fn check_dim(&self, a: &[u64]) -> Result<()> {
        if a.len() != self.vertices.len() {
            return Err(Error::SizeMismatch { expected: self.vertices.len(), got: a.len() });
        }
        Ok(())
    }

    pub fn unit(&self, i: usize) -> DimVector {
        let mut e = vec![0; self.vertices.len()];
        e[i] = 1;
        e
    }

    /// Weakly connected components, each listed in increasing vertex order.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut uf = UnionFind::<usize>::new(n.max(1));
        for a in &self.arrows {
            uf.union(a.source, a.target);
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            groups.entry(uf.find(v)).or_default().push(v);
        }
        let mut out: Vec<Vec<usize>> = groups.into_values().collect();
        out.sort();
        out
    }

    /// Whether the full subquiver on `support` is strongly connected.
    /// A single vertex counts as strongly connected; the empty set does not.
    pub fn is_strongly_connected_on(&self, support: &[usize]) -> bool {
        if support.is_empty() {
            return false;
        }
        let set: BTreeSet<usize> = support.iter().copied().collect();
        let mut g = DiGraph::<usize, ()>::new();
        let idx: BTreeMap<usize, _> = set.iter().map(|&v| (v, g.add_node(v))).collect();
        for a in &self.arrows {
            if let (Some(&s), Some(&t)) = (idx.get(&a.source), idx.get(&a.target)) {
                g.add_edge(s, t, ());
            }
        }
        kosaraju_scc(&g).len() == 1
    }

    /// Full subquiver on the given vertices (in the given order); also returns
    /// the original index of every kept arrow.
    pub fn induced(&self, keep: &[usize]) -> (Quiver, Vec<usize>) {
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let mut q = Quiver::with_vertices(keep.iter().map(|&v| self.vertices[v].clone()));
        let mut orig = Vec::new();
        for (ai, a) in self.arrows.iter().enumerate() {
            if let (Some(&s), Some(&t)) = (pos.get(&a.source), pos.get(&a.target)) {
                q.arrows.push(Arrow { label: a.label.clone(), source: s, target: t });
                orig.push(ai);
            }
        }
        (q, orig)
    }
}

/// `χ(α,β) = Σ_v α_v β_v − Σ_{a} α_{s(a)} β_{t(a)}`.
pub fn euler_form(q: &Quiver, a: &[u64], b: &[u64]) -> Result<i64> {
    q.check_dim(a)?;
    q.check_dim(b)?;
    Ok(euler_unchecked(q, a, b))
}

pub(crate) fn euler_unchecked(q: &Quiver, a: &[u64], b: &[u64]) -> i64 {
    let diag: i64 = a.iter().zip(b).map(|(&x, &y)| (x * y) as i64).sum();
    let off: i64 = q.arrows.iter().map(|ar| (a[ar.source] * b[ar.target]) as i64).sum();
    diag - off
}

/// Equal arrow counts in both directions between distinct vertices; loops are free.
pub fn is_symmetric(q: &Quiver) -> bool {
    let c = q.arrow_counts();
    let n = c.len();
    (0..n).all(|i| (i + 1..n).all(|j| c[i][j] == c[j][i]))
}

/// A quiver together with a fixed-point-free involution `a ↦ a*` that reverses
/// arrows. `unstarred` marks the class L used in brackets and moment elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DoubleQuiver {
    quiver: Quiver,
    star: Vec<usize>,
    unstarred: Vec<bool>,
}

impl DoubleQuiver {
    /// `pairs` lists (a, a*) with a in L; every arrow must occur exactly once.
    pub fn from_pairs(quiver: Quiver, pairs: &[(usize, usize)]) -> Result<Self> {
        let m = quiver.arrow_count();
        let mut star = vec![usize::MAX; m];
        let mut unstarred = vec![false; m];
        for &(a, b) in pairs {
            if a >= m || b >= m || a == b || star[a] != usize::MAX || star[b] != usize::MAX {
                return Err(Error::NotDouble(format!("bad pair ({a}, {b})")));
            }
            let (x, y) = (quiver.arrow(a), quiver.arrow(b));
            if x.source != y.target || x.target != y.source {
                return Err(Error::NotDouble(format!("`{}` and `{}` are not opposite", x.label, y.label)));
            }
            star[a] = b;
            star[b] = a;
            unstarred[a] = true;
        }
        if let Some(a) = star.iter().position(|&s| s == usize::MAX) {
            return Err(Error::NotDouble(format!("arrow `{}` is unpaired", quiver.arrow(a).label)));
        }
        Ok(Self { quiver, star, unstarred })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn star(&self, a: usize) -> usize {
        self.star[a]
    }

    pub fn is_unstarred(&self, a: usize) -> bool {
        self.unstarred[a]
    }

    /// The class L, in arrow order.
    pub fn unstarred_arrows(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.star.len()).filter(|&a| self.unstarred[a])
    }

    /// (a, a*) pairs with a ∈ L.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.unstarred_arrows().map(|a| (a, self.star[a])).collect()
    }

    pub fn arrow_by_label(&self, label: &str) -> Result<usize> {
        self.quiver.arrow_index(label).ok_or_else(|| Error::Unknown { kind: "arrow", name: label.to_string() })
    }
}

/// Adjoins `a*: j → i` for every arrow `a: i → j` (loops included). The
/// original arrows keep their indices and form L; stars follow in order.
pub fn double_quiver(q: &Quiver) -> DoubleQuiver {
    let mut d = q.clone();
    let m = q.arrow_count();
    let mut pairs = Vec::with_capacity(m);
    for (i, a) in q.arrows.iter().enumerate() {
        let mut label = format!("{}*", a.label);
        while d.arrow_index(&label).is_some() {
            label.push('\'');
        }
        d.arrows.push(Arrow { label, source: a.target, target: a.source });
        pairs.push((i, m + i));
    }
    DoubleQuiver::from_pairs(d, &pairs).expect("doubling is a valid involution")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Symmetrized {
    pub double: DoubleQuiver,
    /// Arrows `a_l: i → i'` that must be inverted to recover the loose loops.
    pub inverted: Vec<usize>,
    /// For every vertex of the double, the vertex of the input it came from.
    pub vertex_map: Vec<usize>,
}

/// Turns a symmetric quiver into a double quiver. Opposite arrows are paired
/// in label order, loops at a vertex are paired in label order, and a single
/// leftover loop `l` at `i` becomes a new vertex `i'` with `l: i → i'` and
/// `l*: i' → i`.
pub fn symmetrize_to_double(q: &Quiver) -> Result<Symmetrized> {
    if !is_symmetric(q) {
        return Err(Error::NotSymmetric(format!("{} vertices", q.vertex_count())));
    }
    let n = q.vertex_count();
    let by_label = |mut v: Vec<usize>| {
        v.sort_by(|&x, &y| q.arrows[x].label.cmp(&q.arrows[y].label));
        v
    };
    let mut out = Quiver::with_vertices(q.vertices.iter().cloned());
    let mut vertex_map: Vec<usize> = (0..n).collect();
    let mut pairs = Vec::new();
    let mut inverted = Vec::new();
    let push = |out: &mut Quiver, a: &Arrow| {
        out.arrows.push(a.clone());
        out.arrows.len() - 1
    };
    for i in 0..n {
        for j in i + 1..n {
            let fwd = by_label((0..q.arrow_count()).filter(|&x| q.arrows[x].source == i && q.arrows[x].target == j).collect());
            let bwd = by_label((0..q.arrow_count()).filter(|&x| q.arrows[x].source == j && q.arrows[x].target == i).collect());
            for (&f, &b) in fwd.iter().zip(&bwd) {
                let fi = push(&mut out, &q.arrows[f]);
                let bi = push(&mut out, &q.arrows[b]);
                pairs.push((fi, bi));
            }
        }
    }
    for i in 0..n {
        let loops = by_label((0..q.arrow_count()).filter(|&x| q.arrows[x].is_loop() && q.arrows[x].source == i).collect());
        for ch in loops.chunks(2) {
            if let [l, m] = ch {
                let li = push(&mut out, &q.arrows[*l]);
                let mi = push(&mut out, &q.arrows[*m]);
                pairs.push((li, mi));
            } else {
                let l = &q.arrows[ch[0]];
                let mut id = format!("{}'", q.vertices[i]);
                while out.vertex_index(&id).is_some() {
                    id.push('\'');
                }
                let v = out.add_vertex(id);
                vertex_map.push(i);
                let a = push(&mut out, &Arrow { label: l.label.clone(), source: i, target: v });
                let mut star = format!("{}*", l.label);
                while out.arrow_index(&star).is_some() || q.arrow_index(&star).is_some() {
                    star.push('\'');
                }
                let b = push(&mut out, &Arrow { label: star, source: v, target: i });
                pairs.push((a, b));
                inverted.push(a);
            }
        }
    }
    let double = DoubleQuiver::from_pairs(out, &pairs)?;
    Ok(Symmetrized { double, inverted, vertex_map })
}

/// Structured-text form of a quiver, optionally with a star pairing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverDocument {
    #[serde(default)]
    pub name: String,
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowDocument>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pairs: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowDocument {
    pub label: String,
    pub source: String,
    pub target: String,
}

impl QuiverDocument {
    pub fn from_quiver(name: &str, q: &Quiver) -> Self {
        Self {
            name: name.to_string(),
            vertices: q.vertices.clone(),
            arrows: q
                .arrows
                .iter()
                .map(|a| ArrowDocument {
                    label: a.label.clone(),
                    source: q.vertices[a.source].clone(),
                    target: q.vertices[a.target].clone(),
                })
                .collect(),
            pairs: Vec::new(),
        }
    }

    pub fn from_double(name: &str, d: &DoubleQuiver) -> Self {
        let mut doc = Self::from_quiver(name, d.quiver());
        let l = |a: usize| d.quiver().arrow(a).label.clone();
        doc.pairs = d.pairs().into_iter().map(|(a, b)| (l(a), l(b))).collect();
        doc
    }

    pub fn to_quiver(&self) -> Result<Quiver> {
        let mut q = Quiver::with_vertices(self.vertices.iter().cloned());
        for a in &self.arrows {
            let find = |id: &str| q.vertex_index(id).ok_or_else(|| Error::Unknown { kind: "vertex", name: id.to_string() });
            let (s, t) = (find(&a.source)?, find(&a.target)?);
            q.add_arrow(a.label.clone(), s, t)?;
        }
        Ok(q)
    }

    /// Uses the stored pairing when present, otherwise doubles the quiver.
    pub fn to_double(&self) -> Result<DoubleQuiver> {
        let q = self.to_quiver()?;
        if self.pairs.is_empty() {
            return Ok(double_quiver(&q));
        }
        let find = |l: &str| q.arrow_index(l).ok_or_else(|| Error::Unknown { kind: "arrow", name: l.to_string() });
        let pairs = self.pairs.iter().map(|(a, b)| Ok((find(a)?, find(b)?))).collect::<Result<Vec<_>>>()?;
        DoubleQuiver::from_pairs(q, &pairs)
    }
}
