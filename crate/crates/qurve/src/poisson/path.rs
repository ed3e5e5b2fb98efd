//! Paths, path-algebra elements and their tensor powers.
//!
//! A path is written left to right as `x₁.x₂.….xₙ` and composed right to left:
//! `xₙ` is traversed first. The product `p·q` means "first q, then p" and is
//! nonzero only when `source(p) = target(q)`.

use std::cmp::Ordering;
use std::fmt::Write as _;

use num::{One, Signed};

use crate::error::{Error, Result};
use crate::quiver::{DoubleQuiver, Quiver};
use crate::rational::{fmt_q, Q};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    arrows: Vec<usize>,
    source: usize,
    target: usize,
}

impl Ord for Path {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.arrows.len(), &self.arrows, self.source, self.target).cmp(&(
            other.arrows.len(),
            &other.arrows,
            other.source,
            other.target,
        ))
    }
}

impl PartialOrd for Path {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Self { arrows: Vec::new(), source: v, target: v }
    }

    pub fn arrow(q: &Quiver, a: usize) -> Self {
        let ar = q.arrow(a);
        Self { arrows: vec![a], source: ar.source, target: ar.target }
    }

    /// Arrows in written order; fails unless consecutive arrows compose.
    pub fn from_arrows(q: &Quiver, arrows: &[usize]) -> Result<Self> {
        let (first, last) = match (arrows.first(), arrows.last()) {
            (Some(&f), Some(&l)) => (f, l),
            _ => return Err(Error::Empty("path")),
        };
        for w in arrows.windows(2) {
            let (x, y) = (q.arrow(w[0]), q.arrow(w[1]));
            if x.source != y.target {
                return Err(Error::Parse(format!("`{}` cannot follow `{}`", x.label, y.label)));
            }
        }
        Ok(Self { arrows: arrows.to_vec(), source: q.arrow(last).source, target: q.arrow(first).target })
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn source(&self) -> usize {
        self.source
    }

    pub fn target(&self) -> usize {
        self.target
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_closed(&self) -> bool {
        self.source == self.target
    }

    /// `self · other` (other first), or `None` when not composable.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if self.source != other.target {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Path { arrows, source: other.source, target: self.target })
    }

    /// Sub-path of written positions `[lo, hi)`; empty ranges become the
    /// idempotent at `at`.
    pub(crate) fn slice(&self, q: &Quiver, lo: usize, hi: usize, at: usize) -> Path {
        if lo >= hi {
            return Path::trivial(at);
        }
        let arrows = self.arrows[lo..hi].to_vec();
        Path { source: q.arrow(arrows[arrows.len() - 1]).source, target: q.arrow(arrows[0]).target, arrows }
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.arrows.is_empty() {
            return format!("e_{}", q.vertices()[self.source]);
        }
        self.arrows.iter().map(|&a| q.arrow(a).label.as_str()).collect::<Vec<_>>().join(".")
    }
}

/// Resolves a label; `x*` also resolves to the star of `x` when no arrow is
/// literally called `x*`.
pub fn resolve_arrow(dq: &DoubleQuiver, label: &str) -> Result<usize> {
    let q = dq.quiver();
    if let Some(a) = q.arrow_index(label) {
        return Ok(a);
    }
    if let Some(base) = label.strip_suffix('*') {
        if let Ok(a) = resolve_arrow(dq, base) {
            return Ok(dq.star(a));
        }
    }
    Err(Error::Unknown { kind: "arrow", name: label.to_string() })
}

/// Parses `x.y.z` (or `e_v` for an idempotent).
pub fn parse_path(dq: &DoubleQuiver, text: &str) -> Result<Path> {
    let q = dq.quiver();
    let text = text.trim();
    if let Some(v) = text.strip_prefix("e_") {
        if let Some(i) = q.vertex_index(v) {
            return Ok(Path::trivial(i));
        }
    }
    let arrows = text.split('.').map(|l| resolve_arrow(dq, l.trim())).collect::<Result<Vec<_>>>()?;
    Path::from_arrows(q, &arrows)
}

linear_combination!(NCPoly, Path);
linear_combination!(Tensor2, (Path, Path));
linear_combination!(Tensor3, (Path, Path, Path));

impl NCPoly {
    pub fn path(p: Path) -> Self {
        Self::term(p, Q::one())
    }

    pub fn arrow(q: &Quiver, a: usize) -> Self {
        Self::path(Path::arrow(q, a))
    }

    /// Bilinear product; non-composable pairs vanish.
    pub fn mul(&self, other: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (p, c) in &self.terms {
            for (r, d) in &other.terms {
                if let Some(pr) = p.compose(r) {
                    out.add_term(pr, c * d);
                }
            }
        }
        out
    }

    /// Longest path length occurring (0 for idempotents and for zero).
    pub fn degree(&self) -> usize {
        self.terms.keys().map(Path::len).max().unwrap_or(0)
    }

    /// Printed with the longest terms first, e.g. `b* + 1/2·b`.
    pub fn display(&self, q: &Quiver) -> String {
        display_terms(self.terms.iter().rev().map(|(p, c)| (p.display(q), c)))
    }
}

pub(crate) fn display_terms<'a>(terms: impl Iterator<Item = (String, &'a Q)>) -> String {
    let mut s = String::new();
    for (i, (word, c)) in terms.enumerate() {
        let neg = c.is_negative();
        match (i, neg) {
            (0, true) => s.push('-'),
            (0, false) => {}
            (_, true) => s.push_str(" - "),
            (_, false) => s.push_str(" + "),
        }
        let abs = c.abs();
        if abs.is_one() {
            s.push_str(&word);
        } else {
            let _ = write!(s, "{}·{}", fmt_q(&abs), word);
        }
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

impl Tensor2 {
    /// `x ⊗ y ↦ y ⊗ x`.
    pub fn swap(&self) -> Tensor2 {
        self.terms.iter().map(|((x, y), c)| ((y.clone(), x.clone()), c.clone())).collect()
    }

    /// Multiplication map `x ⊗ y ↦ x·y`.
    pub fn multiply(&self) -> NCPoly {
        let mut out = NCPoly::zero();
        for ((x, y), c) in &self.terms {
            if let Some(p) = x.compose(y) {
                out.add_term(p, c.clone());
            }
        }
        out
    }

    /// Outer left action `p·(x ⊗ y) = px ⊗ y`.
    pub fn left_mul(&self, p: &NCPoly) -> Tensor2 {
        let mut out = Tensor2::zero();
        for ((x, y), c) in &self.terms {
            for (r, d) in p.terms() {
                if let Some(rx) = r.compose(x) {
                    out.add_term((rx, y.clone()), c * d);
                }
            }
        }
        out
    }

    /// Outer right action `(x ⊗ y)·p = x ⊗ yp`.
    pub fn right_mul(&self, p: &NCPoly) -> Tensor2 {
        let mut out = Tensor2::zero();
        for ((x, y), c) in &self.terms {
            for (r, d) in p.terms() {
                if let Some(yr) = y.compose(r) {
                    out.add_term((x.clone(), yr), c * d);
                }
            }
        }
        out
    }

    pub fn display(&self, q: &Quiver) -> String {
        display_terms(self.terms.iter().map(|((x, y), c)| (format!("{} ⊗ {}", x.display(q), y.display(q)), c)))
    }
}

impl Tensor3 {
    /// `u ⊗ v ⊗ w ↦ w ⊗ u ⊗ v`.
    pub fn rotate(&self) -> Tensor3 {
        self.terms.iter().map(|((u, v, w), c)| ((w.clone(), u.clone(), v.clone()), c.clone())).collect()
    }
}

/// Parses a sum such as `a.b - 1/2 c + e_1`; each term is an optional rational
/// coefficient followed by a path.
pub fn parse_ncpoly(dq: &DoubleQuiver, text: &str) -> Result<NCPoly> {
    let mut out = NCPoly::zero();
    for (sign, term) in split_signed_terms(text)? {
        let (c, word) = split_coefficient(&term)?;
        out.add_term(parse_path(dq, &word)?, sign * c);
    }
    Ok(out)
}

pub(crate) fn split_signed_terms(text: &str) -> Result<Vec<(Q, String)>> {
    let mut out = Vec::new();
    let mut sign = Q::one();
    let mut cur = String::new();
    let mut prev_space = true;
    for ch in text.chars() {
        if (ch == '+' || ch == '-') && prev_space {
            if !cur.trim().is_empty() {
                out.push((sign.clone(), cur.trim().to_string()));
                cur.clear();
                sign = Q::one();
            }
            if ch == '-' {
                sign = -sign;
            }
        } else {
            cur.push(ch);
        }
        prev_space = ch.is_whitespace() || ch == '+' || ch == '-';
        if cur.trim().is_empty() && ch.is_whitespace() {
            prev_space = true;
        }
    }
    if !cur.trim().is_empty() {
        out.push((sign, cur.trim().to_string()));
    }
    if out.is_empty() {
        return Err(Error::Parse(format!("empty expression `{text}`")));
    }
    Ok(out)
}

/// `"1/2 b.b"`, `"3·x"` or `"x"`; returns (coefficient or 1, word).
pub(crate) fn split_coefficient(term: &str) -> Result<(Q, String)> {
    let term = term.trim();
    let (head, rest) = match term.split_once(['·', ' ']) {
        Some((h, r)) => (h, r.trim()),
        None => return Ok((Q::one(), term.to_string())),
    };
    match crate::rational::parse_q(head) {
        Ok(c) => Ok((c, rest.to_string())),
        Err(_) => Err(Error::Parse(format!("cannot read term `{term}`"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets::preset_double;
    use crate::rational::q_frac;

    #[test]
    fn composition_order() {
        let dq = preset_double("calogero-moser").unwrap();
        let q = dq.quiver();
        let a = parse_path(&dq, "a").unwrap();
        let astar = parse_path(&dq, "a*").unwrap();
        // a*·a is the loop at vertex 1; a·a* the loop at vertex 2.
        let p = astar.compose(&a).unwrap();
        assert!(p.is_closed());
        assert_eq!(q.vertices()[p.source()], "1");
        assert!(a.compose(&a).is_none());
        assert_eq!(p.display(q), "a*.a");
        assert!(parse_path(&dq, "a.a").is_err());
    }

    #[test]
    fn polynomial_text() {
        let dq = preset_double("calogero-moser").unwrap();
        let p = parse_ncpoly(&dq, "b* + 1/2 b - b.b").unwrap();
        assert_eq!(p.coefficient(&parse_path(&dq, "b").unwrap()), q_frac(1, 2));
        assert_eq!(p.display(dq.quiver()), "-b.b + b* + 1/2·b");
        let r = parse_ncpoly(&dq, "-2 e_1").unwrap();
        assert_eq!(r.display(dq.quiver()), "-2·e_1");
    }
}
