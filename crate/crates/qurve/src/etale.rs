//! The étale quiver Ψ, simple dimension vectors, local quivers and the
//! cherry-tree smoothness test.
//!
//! Ψ has one vertex per generator `α_i` of the monoid of full dimension
//! vectors and `δ_ij − χ_Γ(α_i, α_j)` arrows `i → j`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::quiver::{euler_unchecked, is_symmetric, DimVector, Quiver};
use crate::semigroup::{combine, decompose_in_generators, semigroup_generators, DimVecConstraintSystem, DimVecStatus};
use crate::tree::TreeOfAlgebras;
use crate::zariski::zariski_quiver;

#[derive(Clone, Debug)]
pub struct EtaleQuiver {
    /// Ψ, with vertices `g1…gk` in canonical generator order.
    pub quiver: Quiver,
    pub generators: Vec<DimVector>,
    /// Γ, the quiver the generators live on.
    pub gamma: Quiver,
    pub system: DimVecConstraintSystem,
}

/// Ψ for an arbitrary generator list on Γ.
pub fn etale_from_generators(gamma: &Quiver, generators: Vec<DimVector>, system: DimVecConstraintSystem) -> Result<EtaleQuiver> {
    build(gamma, generators, system, false).map(|(psi, _)| psi)
}

/// With `clamp`, negative arrow counts become zero and are reported instead
/// of failing.
pub(crate) fn build(
    gamma: &Quiver,
    generators: Vec<DimVector>,
    system: DimVecConstraintSystem,
    clamp: bool,
) -> Result<(EtaleQuiver, Vec<String>)> {
    let k = generators.len();
    let mut q = Quiver::with_vertices((1..=k).map(|i| format!("g{}", i)));
    let mut warnings = Vec::new();
    for i in 0..k {
        for j in 0..k {
            let count = i64::from(i == j) - euler_unchecked(gamma, &generators[i], &generators[j]);
            if count < 0 {
                let msg = format!("{count} arrows from g{} to g{}", i + 1, j + 1);
                if !clamp {
                    return Err(Error::Internal(msg));
                }
                warnings.push(format!("{msg}; clamped to 0"));
            }
            for m in 1..=count {
                q.push_fresh_arrow(format!("g{}>g{}:{m}", i + 1, j + 1), i, j);
            }
        }
    }
    Ok((EtaleQuiver { quiver: q, generators, gamma: gamma.clone(), system }, warnings))
}

pub fn etale_quiver(t: &TreeOfAlgebras) -> Result<EtaleQuiver> {
    let z = zariski_quiver(t)?;
    let gens = semigroup_generators(t, &z)?;
    etale_from_generators(&z.quiver, gens, DimVecConstraintSystem::new(t, &z))
}

impl EtaleQuiver {
    /// Pushes a Ψ-dimension vector down to Γ.
    pub fn to_gamma(&self, beta: &[u64]) -> DimVector {
        combine(beta, &self.generators)
    }

    /// All Ψ-dimension vectors over a full Γ-dimension vector.
    pub fn decompositions(&self, alpha: &[u64]) -> Result<Vec<DimVector>> {
        match self.system.check(alpha)? {
            DimVecStatus::Full(_) => Ok(decompose_in_generators(alpha, &self.generators)),
            other => Err(Error::NotFull(format!("{alpha:?} is {other}"))),
        }
    }
}

/// Whether `β` is the dimension vector of a simple representation of `q`.
///
/// The support has to be nonempty and strongly connected. A lone vertex
/// without loops or with a single loop, and a pair joined by exactly one
/// arrow each way, only carry simples of dimension one at every vertex.
/// Otherwise `χ(ε_i, β) ≤ 0` and `χ(β, ε_i) ≤ 0` for every `i` in the support.
pub fn is_simple_dimvector(q: &Quiver, beta: &[u64]) -> Result<bool> {
    q.check_dim(beta)?;
    let supp: Vec<usize> = (0..beta.len()).filter(|&i| beta[i] > 0).collect();
    if supp.is_empty() || !q.is_strongly_connected_on(&supp) {
        return Ok(false);
    }
    let counts = q.arrow_counts();
    let all_one = supp.iter().all(|&i| beta[i] == 1);
    match supp.as_slice() {
        [i] if counts[*i][*i] <= 1 => return Ok(all_one),
        [i, j] if counts[*i][*i] == 0 && counts[*j][*j] == 0 && counts[*i][*j] == 1 && counts[*j][*i] == 1 => {
            return Ok(all_one)
        }
        _ => {}
    }
    Ok(supp.iter().all(|&i| {
        let e = q.unit(i);
        euler_unchecked(q, &e, beta) <= 0 && euler_unchecked(q, beta, &e) <= 0
    }))
}

/// Whether the component of `rep_α` described by Ψ contains simples. Every
/// decomposition of `α` into generators must give the same answer.
pub fn component_has_simples(psi: &EtaleQuiver, alpha: &[u64]) -> Result<bool> {
    let decs = psi.decompositions(alpha)?;
    let mut verdict = None;
    for beta in &decs {
        let s = is_simple_dimvector(&psi.quiver, beta)?;
        match verdict {
            None => verdict = Some(s),
            Some(v) if v != s => {
                return Err(Error::Internal(format!("decompositions of {alpha:?} disagree on simples")));
            }
            _ => {}
        }
    }
    verdict.ok_or(Error::Internal(format!("{alpha:?} has no decomposition")))
}

/// A local quiver setting: the quiver on the simple summands of a
/// semisimple representation, and their multiplicities.
#[derive(Clone, Debug)]
pub struct LocalQuiver {
    pub quiver: Quiver,
    pub dims: DimVector,
    /// Summands whose dimension vector is not simple for Ψ.
    pub warnings: Vec<String>,
}

/// `ξ = ⊕ S_i^{e_i}` with `S_i` of Ψ-dimension `γ_i`: the local quiver has
/// `δ_ij − χ_Ψ(γ_i, γ_j)` arrows `i → j` and dimension vector `e`.
pub fn local_quiver(psi: &EtaleQuiver, xi: &[(DimVector, u64)]) -> Result<LocalQuiver> {
    if xi.is_empty() {
        return Err(Error::Empty("semisimple type"));
    }
    let mut warnings = Vec::new();
    for (i, (g, _)) in xi.iter().enumerate() {
        psi.quiver.check_dim(g)?;
        if !is_simple_dimvector(&psi.quiver, g)? {
            warnings.push(format!("summand {} with dimension vector {g:?} is not simple", i + 1));
        }
    }
    let mut q = Quiver::with_vertices((1..=xi.len()).map(|i| format!("s{i}")));
    for (i, (gi, _)) in xi.iter().enumerate() {
        for (j, (gj, _)) in xi.iter().enumerate() {
            let chi = euler_unchecked(&psi.quiver, gi, gj);
            let via_gamma = euler_unchecked(&psi.gamma, &psi.to_gamma(gi), &psi.to_gamma(gj));
            if chi != via_gamma {
                return Err(Error::Internal(format!("χ_Ψ = {chi} but χ_Γ = {via_gamma} for summands {} and {}", i + 1, j + 1)));
            }
            let count = i64::from(i == j) - chi;
            if count < 0 {
                return Err(Error::Internal(format!("{count} arrows from s{} to s{}", i + 1, j + 1)));
            }
            for m in 1..=count {
                q.push_fresh_arrow(format!("s{}>s{}:{m}", i + 1, j + 1), i, j);
            }
        }
    }
    Ok(LocalQuiver { quiver: q, dims: xi.iter().map(|(_, e)| *e).collect(), warnings })
}

/// The cherry-tree test on a symmetric quiver setting `(q, α)`.
///
/// Opposite arrows pair into undirected edges; loops at vertices with
/// `α = 1` are free coordinates and are dropped. A cherry is a leaf `u`
/// hanging off a vertex of dimension one, joined either by `k ≤ α_u` edges
/// with no loop at `u`, or by one edge with exactly one loop at `u`;
/// cherries are harvested until none is left. What remains must be a forest
/// of simple edges without loops, and cutting it at the dimension-one
/// vertices must leave only pieces `n`, `n—m`, `1—n—m` or `n—2—m`. A lone
/// vertex is also fine with one loop, or with two loops when `α = 2`.
pub fn is_cherry_tree(q: &Quiver, alpha: &[u64]) -> Result<bool> {
    q.check_dim(alpha)?;
    if !is_symmetric(q) {
        return Err(Error::NotSymmetric(format!("{} vertices", q.vertex_count())));
    }
    let counts = q.arrow_counts();
    let mut alive: BTreeSet<usize> = (0..alpha.len()).filter(|&i| alpha[i] > 0).collect();
    let loops: Vec<u64> = (0..alpha.len()).map(|i| if alpha[i] == 1 { 0 } else { counts[i][i] }).collect();
    let neighbours = |alive: &BTreeSet<usize>, u: usize| -> Vec<usize> {
        alive.iter().copied().filter(|&w| w != u && counts[u][w] > 0).collect()
    };

    loop {
        let cherry = alive.iter().copied().find(|&u| match neighbours(&alive, u).as_slice() {
            [w] => alpha[*w] == 1 && ((counts[u][*w] <= alpha[u] && loops[u] == 0) || (counts[u][*w] == 1 && loops[u] == 1)),
            _ => false,
        });
        match cherry {
            Some(u) => {
                alive.remove(&u);
            }
            None => break,
        }
    }

    for &u in &alive {
        let nb = neighbours(&alive, u);
        if loops[u] > 0 {
            let lone_ok = nb.is_empty() && (loops[u] == 1 || (alpha[u] == 2 && loops[u] == 2));
            if !lone_ok {
                return Ok(false);
            }
        }
        for &w in &nb {
            if counts[u][w] != 1 {
                return Ok(false);
            }
        }
    }
    let mut uf = petgraph::unionfind::UnionFind::new(alpha.len());
    for &u in &alive {
        for w in neighbours(&alive, u) {
            if u < w && !uf.union(u, w) {
                return Ok(false);
            }
        }
    }

    // Cut at the dimension-one vertices.
    let core: BTreeSet<usize> = alive.iter().copied().filter(|&u| alpha[u] != 1).collect();
    let mut seen = BTreeSet::new();
    for &start in &core {
        if !seen.insert(start) {
            continue;
        }
        let mut piece = vec![start];
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for w in neighbours(&alive, u) {
                if core.contains(&w) && seen.insert(w) {
                    piece.push(w);
                    stack.push(w);
                }
            }
        }
        let boundary: BTreeSet<usize> =
            piece.iter().flat_map(|&u| neighbours(&alive, u)).filter(|w| alpha[*w] == 1).collect();
        let members: Vec<usize> = piece.iter().copied().chain(boundary.iter().copied()).collect();
        let ok = match members.len() {
            0..=2 => true,
            3 => {
                let inner = |u: usize| members.iter().filter(|&&w| w != u && counts[u][w] > 0).count();
                let middle = members.iter().copied().find(|&u| inner(u) == 2).expect("a 3-vertex tree is a path");
                alpha[middle] == 2 || members.iter().any(|&u| u != middle && alpha[u] == 1)
            }
            _ => false,
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of the smoothness test on a whole component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothVerdict {
    pub smooth: bool,
    /// A decomposition whose Ψ-setting is not a cherry tree.
    pub witness: Option<DimVector>,
}

/// Smooth iff `(Ψ, β)` is a cherry tree for every decomposition `β` of `α`.
pub fn is_smooth_component(psi: &EtaleQuiver, alpha: &[u64]) -> Result<SmoothVerdict> {
    for beta in psi.decompositions(alpha)? {
        if !is_cherry_tree(&psi.quiver, &beta)? {
            return Ok(SmoothVerdict { smooth: false, witness: Some(beta) });
        }
    }
    Ok(SmoothVerdict { smooth: true, witness: None })
}

/// Smoothness of the quotient at the point of semisimple type `ξ`.
pub fn is_smooth_point(psi: &EtaleQuiver, xi: &[(DimVector, u64)]) -> Result<bool> {
    let local = local_quiver(psi, xi)?;
    is_cherry_tree(&local.quiver, &local.dims)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::preset_tree;

    fn sym(n: usize, edges: &[(usize, usize, usize)]) -> Quiver {
        let mut q = Quiver::with_vertices((0..n).map(|i| i.to_string()));
        let mut k = 0;
        for &(i, j, m) in edges {
            for _ in 0..m {
                q.add_arrow(format!("x{k}"), i, j).unwrap();
                k += 1;
                if i != j {
                    q.add_arrow(format!("x{k}"), j, i).unwrap();
                    k += 1;
                }
            }
        }
        q
    }

    #[test]
    fn simple_vectors() {
        let q = sym(2, &[(0, 1, 1)]);
        assert!(is_simple_dimvector(&q, &[1, 1]).unwrap());
        assert!(!is_simple_dimvector(&q, &[2, 2]).unwrap());
        assert!(!is_simple_dimvector(&q, &[0, 0]).unwrap());
        let l = sym(1, &[(0, 0, 2)]);
        assert!(is_simple_dimvector(&l, &[5]).unwrap());
        let k = sym(2, &[(0, 1, 2)]);
        assert!(is_simple_dimvector(&k, &[2, 2]).unwrap());
        assert!(!is_simple_dimvector(&k, &[3, 1]).unwrap());
    }

    #[test]
    fn cherries() {
        // 1 = n with k ≤ n edges: smooth.
        let q = sym(2, &[(0, 1, 2)]);
        assert!(is_cherry_tree(&q, &[1, 2]).unwrap());
        assert!(!is_cherry_tree(&q, &[1, 1]).unwrap());
        // 1 — n with a loop at n.
        let q = sym(2, &[(0, 1, 1), (1, 1, 1)]);
        assert!(is_cherry_tree(&q, &[1, 3]).unwrap());
        assert!(!is_cherry_tree(&q, &[2, 3]).unwrap());
        // n — 2 — m, and a star of three non-unit legs which is not.
        let p = sym(3, &[(0, 1, 1), (1, 2, 1)]);
        assert!(is_cherry_tree(&p, &[3, 2, 4]).unwrap());
        assert!(!is_cherry_tree(&p, &[3, 3, 4]).unwrap());
        assert!(is_cherry_tree(&p, &[1, 3, 4]).unwrap());
        // A triangle is not a tree.
        let t = sym(3, &[(0, 1, 1), (1, 2, 1), (0, 2, 1)]);
        assert!(!is_cherry_tree(&t, &[2, 2, 2]).unwrap());
        assert!(is_cherry_tree(&t, &[0, 2, 2]).unwrap());
    }

    #[test]
    fn sl2_etale_quiver() {
        let t = preset_tree("sl2z").unwrap();
        let psi = etale_quiver(&t).unwrap();
        assert_eq!(psi.generators.len(), 12);
        assert!(is_symmetric(&psi.quiver));
        // One generator gives a point.
        let g = psi.generators[0].clone();
        assert!(is_smooth_component(&psi, &g).unwrap().smooth);
        assert!(component_has_simples(&psi, &g).unwrap());
    }
}
