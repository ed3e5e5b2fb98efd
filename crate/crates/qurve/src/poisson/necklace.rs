//! Necklaces: closed paths up to rotation, and their cyclic derivatives.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use num::One;

use super::path::{display_terms, split_coefficient, split_signed_terms, NCPoly, Path};
use crate::error::{Error, Result};
use crate::quiver::{DoubleQuiver, Quiver};
use crate::rational::Q;

/// A cyclic word, stored as the rotation whose label sequence is
/// lexicographically least. Length-zero necklaces are vertex idempotents.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Necklace {
    Vertex(usize),
    Cycle(Vec<usize>),
}

impl Ord for Necklace {
    fn cmp(&self, other: &Self) -> Ordering {
        fn key(n: &Necklace) -> (usize, usize, &[usize]) {
            match n {
                Necklace::Vertex(v) => (0, *v, &[]),
                Necklace::Cycle(w) => (w.len(), 0, w),
            }
        }
        key(self).cmp(&key(other))
    }
}

impl PartialOrd for Necklace {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Necklace {
    /// `None` unless the path is closed.
    pub fn from_path(q: &Quiver, p: &Path) -> Option<Necklace> {
        if !p.is_closed() {
            return None;
        }
        if p.is_trivial() {
            return Some(Necklace::Vertex(p.source()));
        }
        let w = p.arrows();
        let labels: Vec<&str> = w.iter().map(|&a| q.arrow(a).label.as_str()).collect();
        let n = w.len();
        let best = (0..n)
            .min_by(|&i, &j| (0..n).map(|k| labels[(i + k) % n]).cmp((0..n).map(|k| labels[(j + k) % n])))
            .unwrap_or(0);
        Some(Necklace::Cycle((0..n).map(|k| w[(best + k) % n]).collect()))
    }

    pub fn word(&self) -> &[usize] {
        match self {
            Necklace::Vertex(_) => &[],
            Necklace::Cycle(w) => w,
        }
    }

    pub fn len(&self) -> usize {
        self.word().len()
    }

    pub fn is_empty(&self) -> bool {
        self.word().is_empty()
    }

    /// The representative path starting at the first stored arrow.
    pub fn to_path(&self, q: &Quiver) -> Path {
        match self {
            Necklace::Vertex(v) => Path::trivial(*v),
            Necklace::Cycle(w) => Path::from_arrows(q, w).expect("necklace words compose"),
        }
    }

    /// Largest `m` with `word = u^m`.
    pub fn power(&self) -> usize {
        let w = self.word();
        let n = w.len();
        if n == 0 {
            return 1;
        }
        (1..=n).find(|&p| n.is_multiple_of(p) && (p..n).all(|i| w[i] == w[i - p])).map_or(1, |p| n / p)
    }

    /// Arrows occurring in the word.
    pub fn support(&self) -> BTreeSet<usize> {
        self.word().iter().copied().collect()
    }

    /// `∂n/∂a = Σ_{x_k = a} x_{k+1}…x_n x_1…x_{k-1}`, a combination of paths
    /// from `t(a)` to `s(a)`.
    pub fn derivative(&self, q: &Quiver, a: usize) -> NCPoly {
        let w = self.word();
        let n = w.len();
        let mut out = NCPoly::zero();
        for k in (0..n).filter(|&k| w[k] == a) {
            let rest: Vec<usize> = (1..n).map(|i| w[(k + i) % n]).collect();
            let p = if rest.is_empty() {
                Path::trivial(q.arrow(a).target)
            } else {
                Path::from_arrows(q, &rest).expect("rotation of a cycle composes")
            };
            out.add_term(p, Q::one());
        }
        out
    }

    pub fn display(&self, q: &Quiver) -> String {
        self.to_path(q).display(q)
    }
}

linear_combination!(NecklacePoly, Necklace);

impl NecklacePoly {
    pub fn necklace(n: Necklace) -> Self {
        Self::term(n, Q::one())
    }

    /// Image in the commutator quotient: closed paths become necklaces, open
    /// paths vanish.
    pub fn project(q: &Quiver, p: &NCPoly) -> Self {
        p.terms().iter().filter_map(|(path, c)| Necklace::from_path(q, path).map(|n| (n, c.clone()))).collect()
    }

    /// Representatives as an element of the path algebra.
    pub fn to_ncpoly(&self, q: &Quiver) -> NCPoly {
        self.terms().iter().map(|(n, c)| (n.to_path(q), c.clone())).collect()
    }

    pub fn derivative(&self, q: &Quiver, a: usize) -> NCPoly {
        let mut out = NCPoly::zero();
        for (n, c) in self.terms() {
            out.add_assign_scaled(&n.derivative(q, a), c);
        }
        out
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.terms().keys().flat_map(|n| n.support()).collect()
    }

    pub fn display(&self, q: &Quiver) -> String {
        display_terms(self.terms().iter().rev().map(|(n, c)| (n.display(q), c)))
    }
}

/// Reads a necklace sum. A bare word `u^m` with `u` primitive stands for
/// `(1/m)·u^m`, the usual `tr(X^m)/m` normalisation; a term with an explicit
/// coefficient is taken literally.
pub fn parse_necklace(dq: &DoubleQuiver, text: &str) -> Result<NecklacePoly> {
    let q = dq.quiver();
    let mut out = NecklacePoly::zero();
    for (sign, term) in split_signed_terms(text)? {
        let explicit = term.contains(['·', ' ']);
        let (c, word) = split_coefficient(&term)?;
        let path = super::path::parse_path(dq, &word)?;
        let n = Necklace::from_path(q, &path)
            .ok_or_else(|| Error::Parse(format!("`{word}` is not a closed path")))?;
        let c = if explicit { c } else { Q::new(1.into(), (n.power() as i64).into()) };
        out.add_term(n, sign * c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::preset_double;
    use crate::rational::q_frac;

    #[test]
    fn rotation_invariance() {
        let dq = preset_double("psl2z-double").unwrap();
        let q = dq.quiver();
        let a = parse_necklace(&dq, "s2.s1.s6.s5.s4.s3").unwrap();
        let b = parse_necklace(&dq, "s6.s5.s4.s3.s2.s1").unwrap();
        assert_eq!(a, b);
        assert_eq!(b.display(q), "s1.s6.s5.s4.s3.s2");
    }

    #[test]
    fn powers_are_normalised() {
        let dq = preset_double("calogero-moser").unwrap();
        let n = parse_necklace(&dq, "b.b.b").unwrap();
        let (k, c) = n.terms().iter().next().unwrap();
        assert_eq!(k.power(), 3);
        assert_eq!(*c, q_frac(1, 3));
        let m = parse_necklace(&dq, "2 b.b").unwrap();
        assert_eq!(m.terms().values().next().unwrap(), &q_frac(2, 1));
        assert!(parse_necklace(&dq, "a").is_err());
    }

    #[test]
    fn cyclic_derivative_of_power() {
        let dq = preset_double("calogero-moser").unwrap();
        let q = dq.quiver();
        let n = parse_necklace(&dq, "b.b.b").unwrap();
        let b = q.arrow_index("b").unwrap();
        // (1/3)·3·b² = b².
        assert_eq!(n.derivative(q, b).display(q), "b.b");
    }
}
