//! The double Poisson bracket of a double quiver and the brackets it induces.

use num::One;

use super::necklace::NecklacePoly;
use super::path::{NCPoly, Path, Tensor2, Tensor3};
use crate::quiver::{DoubleQuiver, Quiver};
use crate::rational::Q;

/// `∂p/∂c`: every occurrence of `c` in `x₁…xₙ` contributes
/// `x₁…x_{k-1} ⊗ x_{k+1}…xₙ`, empty pieces replaced by `e_{t(c)}`, `e_{s(c)}`.
pub fn double_derivation(q: &Quiver, p: &NCPoly, c: usize) -> Tensor2 {
    let (s, t) = (q.arrow(c).source, q.arrow(c).target);
    let mut out = Tensor2::zero();
    for (path, coeff) in p.terms() {
        let w = path.arrows();
        for k in (0..w.len()).filter(|&k| w[k] == c) {
            let left = path.slice(q, 0, k, t);
            let right = path.slice(q, k + 1, w.len(), s);
            out.add_term((left, right), coeff.clone());
        }
    }
    out
}

/// `Σ (u′·v″) ⊗ (v′·u″)` over the terms `u′⊗u″` of `u` and `v′⊗v″` of `v`.
fn inner_combine(u: &Tensor2, v: &Tensor2) -> Tensor2 {
    let mut out = Tensor2::zero();
    for ((u1, u2), c) in u.terms() {
        for ((v1, v2), d) in v.terms() {
            if let (Some(x), Some(y)) = (u1.compose(v2), v1.compose(u2)) {
                out.add_term((x, y), c * d);
            }
        }
    }
    out
}

/// `{{p,q}} = Σ_{a∈L} (∂q/∂a*)′(∂p/∂a)″ ⊗ (∂p/∂a)′(∂q/∂a*)″
///                  − (∂q/∂a)′(∂p/∂a*)″ ⊗ (∂p/∂a*)′(∂q/∂a)″`.
pub fn double_bracket(dq: &DoubleQuiver, p: &NCPoly, r: &NCPoly) -> Tensor2 {
    let q = dq.quiver();
    let mut out = Tensor2::zero();
    for (a, s) in dq.pairs() {
        let plus = inner_combine(&double_derivation(q, r, s), &double_derivation(q, p, a));
        let minus = inner_combine(&double_derivation(q, r, a), &double_derivation(q, p, s));
        out.add_assign_scaled(&plus, &Q::one());
        out.add_assign_scaled(&minus, &-Q::one());
    }
    out
}

/// `{{a, x′⊗x″}}_L = {{a, x′}} ⊗ x″`.
fn bracket_left(dq: &DoubleQuiver, a: &NCPoly, t: &Tensor2) -> Tensor3 {
    let mut out = Tensor3::zero();
    for ((x1, x2), c) in t.terms() {
        let inner = double_bracket(dq, a, &NCPoly::path(x1.clone()));
        for ((y1, y2), d) in inner.terms() {
            out.add_term((y1.clone(), y2.clone(), x2.clone()), c * d);
        }
    }
    out
}

/// `{{a,{{b,c}}}}_L + τ{{b,{{c,a}}}}_L + τ²{{c,{{a,b}}}}_L` with
/// `τ(u⊗v⊗w) = w⊗u⊗v`; vanishes identically for a double Poisson bracket.
pub fn jacobiator(dq: &DoubleQuiver, a: &NCPoly, b: &NCPoly, c: &NCPoly) -> Tensor3 {
    let one = Q::one();
    let mut out = bracket_left(dq, a, &double_bracket(dq, b, c));
    out.add_assign_scaled(&bracket_left(dq, b, &double_bracket(dq, c, a)).rotate(), &one);
    out.add_assign_scaled(&bracket_left(dq, c, &double_bracket(dq, a, b)).rotate().rotate(), &one);
    out
}

/// `{p,q} = μ({{p,q}})`.
pub fn induced_bracket(dq: &DoubleQuiver, p: &NCPoly, r: &NCPoly) -> NCPoly {
    double_bracket(dq, p, r).multiply()
}

/// `[n,m] = Σ_{a∈L} ∂n/∂a*·∂m/∂a − ∂n/∂a·∂m/∂a*`, read in the commutator
/// quotient. With this sign `[L_i, S] = S` on the PSL₂ necklaces, and
/// `[n,m]` is the projection of the induced bracket `{m,n}`.
pub fn necklace_bracket(dq: &DoubleQuiver, n: &NecklacePoly, m: &NecklacePoly) -> NecklacePoly {
    let q = dq.quiver();
    let mut acc = NCPoly::zero();
    for (a, s) in dq.pairs() {
        acc = &acc + &n.derivative(q, s).mul(&m.derivative(q, a));
        acc = &acc - &n.derivative(q, a).mul(&m.derivative(q, s));
    }
    NecklacePoly::project(q, &acc)
}

/// `m = Σ_{a∈L} a·a* − a*·a`.
pub fn moment_element(dq: &DoubleQuiver) -> NCPoly {
    let q = dq.quiver();
    let mut out = NCPoly::zero();
    for (a, s) in dq.pairs() {
        let (pa, ps) = (Path::arrow(q, a), Path::arrow(q, s));
        out.add_term(pa.compose(&ps).expect("a·a* composes"), Q::one());
        out.add_term(ps.compose(&pa).expect("a*·a composes"), -Q::one());
    }
    out
}
