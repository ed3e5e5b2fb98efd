//! Symplectic derivations θₙ and the polynomial flows of one-way necklaces.

use std::collections::BTreeSet;

use num::One;

use super::necklace::NecklacePoly;
use super::path::NCPoly;
use crate::error::{Error, Result};
use crate::quiver::DoubleQuiver;
use crate::rational::{factorial, Q};

/// A derivation of the path algebra fixing the idempotents, given by its
/// value on each arrow (a combination of paths with the arrow's endpoints).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub images: Vec<NCPoly>,
}

impl Derivation {
    /// Leibniz rule on `x₁…xₙ`: `Σ_k x₁…x_{k-1} θ(x_k) x_{k+1}…xₙ`.
    pub fn apply(&self, q: &crate::quiver::Quiver, p: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (path, c) in p.terms() {
            let w = path.arrows();
            for k in 0..w.len() {
                let img = &self.images[w[k]];
                if img.is_zero() {
                    continue;
                }
                let left = NCPoly::path(path.slice(q, 0, k, q.arrow(w[k]).target));
                let right = NCPoly::path(path.slice(q, k + 1, w.len(), q.arrow(w[k]).source));
                out.add_assign_scaled(&left.mul(img).mul(&right), c);
            }
        }
        out
    }
}

/// `θₙ(a) = −∂n/∂a*`, `θₙ(a*) = ∂n/∂a` for `a ∈ L`.
pub fn theta(dq: &DoubleQuiver, n: &NecklacePoly) -> Derivation {
    let q = dq.quiver();
    let mut images = vec![NCPoly::zero(); q.arrow_count()];
    for (a, s) in dq.pairs() {
        images[a] = -&n.derivative(q, s);
        images[s] = n.derivative(q, a);
    }
    Derivation { images }
}

/// First `a ∈ L` with both `a` and `a*` in the support, if any.
pub fn one_way_witness(dq: &DoubleQuiver, support: &BTreeSet<usize>) -> Option<(usize, usize)> {
    dq.pairs().into_iter().find(|(a, s)| support.contains(a) && support.contains(s))
}

/// A necklace (or a sum, judged on the union of supports) is one-way when it
/// never uses an arrow together with its star.
pub fn is_one_way(dq: &DoubleQuiver, n: &NecklacePoly) -> bool {
    one_way_witness(dq, &n.support()).is_none()
}

fn ensure_one_way(dq: &DoubleQuiver, n: &NecklacePoly) -> Result<()> {
    match one_way_witness(dq, &n.support()) {
        None => Ok(()),
        Some((a, s)) => {
            let q = dq.quiver();
            Err(Error::NotOneWay(q.arrow(a).label.clone(), q.arrow(s).label.clone()))
        }
    }
}

/// `γ_{n,ρ}(p) = Σ_{j≤J} ρʲ/j! θₙʲ(p)` where `J` bounds the number of arrows
/// of a term of `p` outside the support of `n`; θₙ maps arrows outside the
/// support into words inside it and kills the rest, so the series stops.
pub fn flow(dq: &DoubleQuiver, n: &NecklacePoly, rho: &Q, p: &NCPoly) -> Result<NCPoly> {
    ensure_one_way(dq, n)?;
    let supp = n.support();
    let q = dq.quiver();
    let depth = p.terms().keys().map(|path| path.arrows().iter().filter(|a| !supp.contains(a)).count()).max().unwrap_or(0);
    let th = theta(dq, n);
    let mut out = p.clone();
    let mut cur = p.clone();
    let mut power = Q::one();
    for j in 1..=depth as u32 {
        cur = th.apply(q, &cur);
        if cur.is_zero() {
            break;
        }
        power *= rho;
        let c = &power / Q::from_integer(factorial(j));
        out.add_assign_scaled(&cur, &c);
    }
    Ok(out)
}

/// The automorphism `γ_{n,ρ}` as images of every arrow.
pub fn flow_automorphism(dq: &DoubleQuiver, n: &NecklacePoly, rho: &Q) -> Result<Vec<NCPoly>> {
    let q = dq.quiver();
    (0..q.arrow_count()).map(|a| flow(dq, n, rho, &NCPoly::arrow(q, a))).collect()
}

/// Applies an automorphism given by arrow images to `p`.
pub fn substitute(images: &[NCPoly], p: &NCPoly) -> NCPoly {
    let mut out = NCPoly::zero();
    for (path, c) in p.terms() {
        let image = match path.arrows().split_first() {
            None => NCPoly::path(path.clone()),
            Some((&first, rest)) => rest.iter().fold(images[first].clone(), |acc, &a| acc.mul(&images[a])),
        };
        out.add_assign_scaled(&image, c);
    }
    out
}

/// `γ_{n₂,ρ₂} ∘ γ_{n₁,ρ₁}` evaluated on `p`. As automorphisms compose,
/// `γ₁` is applied to the arrows of `p` and `γ₂` to the outcome.
pub fn flow_compose(
    dq: &DoubleQuiver,
    first: (&NecklacePoly, &Q),
    second: (&NecklacePoly, &Q),
    p: &NCPoly,
) -> Result<NCPoly> {
    let g1 = flow_automorphism(dq, first.0, first.1)?;
    let g2 = flow_automorphism(dq, second.0, second.1)?;
    let inner = substitute(&g1, p);
    Ok(substitute(&g2, &inner))
}

/// Iterates `θₙ` on `p` up to `k` times and reports the first power that
/// vanishes.
pub fn nilpotency_index(dq: &DoubleQuiver, n: &NecklacePoly, p: &NCPoly, k: usize) -> Option<usize> {
    let th = theta(dq, n);
    let mut cur = p.clone();
    for j in 0..=k {
        if cur.is_zero() {
            return Some(j);
        }
        cur = th.apply(dq.quiver(), &cur);
    }
    None
}
