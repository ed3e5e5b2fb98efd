//! Minimal nonnegative solutions of homogeneous integer systems `M x = 0`.
//!
//! [`hilbert_basis`] starts from the unit vectors of ℕⁿ and cuts by the
//! halfspaces `m·x ≥ 0` and `−m·x ≥ 0` for every row. [`contejean_devie`] is
//! the classical completion, kept as an independent cross-check: it grows a
//! candidate `x` by `e_j` only when `⟨Mx, Me_j⟩ < 0`, i.e. when the step moves
//! `Mx` towards the origin, and drops candidates dominating a known solution.
//! It is far slower on systems with many variables.

use std::collections::BTreeSet;

use rayon::prelude::*;

fn dominates(y: &[u64], b: &[u64]) -> bool {
    y.iter().zip(b).all(|(p, q)| p >= q)
}

/// The Hilbert basis of `{x ∈ ℕⁿ : M x = 0}`, sorted lexicographically.
pub fn hilbert_basis(m: &[Vec<i64>], n: usize) -> Vec<Vec<u64>> {
    let units: Vec<Vec<u64>> = (0..n)
        .map(|j| {
            let mut e = vec![0u64; n];
            e[j] = 1;
            e
        })
        .collect();
    let rows: Vec<Vec<i64>> = m.iter().flat_map(|r| [r.clone(), r.iter().map(|x| -x).collect()]).collect();
    cut_by_inequalities(&units, &rows)
}

/// Same result as [`hilbert_basis`], by Contejean–Devie completion.
pub fn contejean_devie(m: &[Vec<i64>], n: usize) -> Vec<Vec<u64>> {
    let cols: Vec<Vec<i64>> = (0..n).map(|j| m.iter().map(|row| row[j]).collect()).collect();
    let dot = |u: &[i64], v: &[i64]| -> i64 { u.iter().zip(v).map(|(a, b)| a * b).sum() };

    let mut basis: Vec<Vec<u64>> = Vec::new();
    let mut frontier: BTreeSet<(Vec<u64>, Vec<i64>)> = (0..n)
        .map(|j| {
            let mut e = vec![0u64; n];
            e[j] = 1;
            (e, cols[j].clone())
        })
        .collect();

    while !frontier.is_empty() {
        let (sols, rest): (Vec<_>, Vec<_>) = frontier.into_iter().partition(|(_, mx)| mx.iter().all(|&v| v == 0));
        basis.extend(sols.into_iter().map(|(x, _)| x));
        let known = &basis;
        let cols = &cols;
        frontier = rest
            .par_iter()
            .flat_map_iter(|(x, mx)| {
                (0..n).filter_map(move |j| {
                    if dot(mx, &cols[j]) >= 0 {
                        return None;
                    }
                    let mut y = x.clone();
                    y[j] += 1;
                    if known.iter().any(|b| dominates(&y, b)) {
                        return None;
                    }
                    let my: Vec<i64> = mx.iter().zip(&cols[j]).map(|(a, b)| a + b).collect();
                    Some((y, my))
                })
            })
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
    }
    basis.sort();
    basis
}

/// Hilbert basis of `{x ∈ M : C x ≥ 0}` given the Hilbert basis of a
/// positive monoid `M ⊆ ℕⁿ` (closed under the lattice it spans).
///
/// Halfspaces are cut one at a time. For a cut `λ`, sums `y + z` with
/// `λ(y) > 0 > λ(z)` are generated in order of total degree and kept unless
/// some kept `u ≤` them with `x − u` in the previous monoid and `λ(u)` between
/// `0` and `λ(x)`. The survivors with `λ ≥ 0` are the new basis.
pub fn cut_by_inequalities(basis: &[Vec<u64>], rows: &[Vec<i64>]) -> Vec<Vec<u64>> {
    let mut current: Vec<Vec<u64>> = basis.to_vec();
    for (k, lam) in rows.iter().enumerate() {
        current = cut_once(&current, &rows[..k], lam);
    }
    current.sort();
    current
}

fn eval(row: &[i64], x: &[u64]) -> i64 {
    row.iter().zip(x).map(|(a, &b)| a * b as i64).sum()
}

fn cut_once(basis: &[Vec<u64>], old: &[Vec<i64>], lam: &[i64]) -> Vec<Vec<u64>> {
    use std::cmp::Reverse;
    use std::collections::{BinaryHeap, HashSet};

    let reduces = |u: &(Vec<u64>, i64), x: &[u64], lx: i64| -> bool {
        let lu = u.1;
        let sign_ok = if lx > 0 {
            (0..=lx).contains(&lu)
        } else if lx < 0 {
            (lx..=0).contains(&lu)
        } else {
            lu == 0
        };
        if !sign_ok || u.0.as_slice() == x || !dominates(x, &u.0) {
            return false;
        }
        let diff: Vec<u64> = x.iter().zip(&u.0).map(|(a, b)| a - b).collect();
        old.iter().all(|r| eval(r, &diff) >= 0)
    };

    let mut kept: Vec<(Vec<u64>, i64)> = Vec::new();
    let mut heap: BinaryHeap<Reverse<(u64, Vec<u64>)>> = BinaryHeap::new();
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    for b in basis {
        if seen.insert(b.clone()) {
            heap.push(Reverse((b.iter().sum(), b.clone())));
        }
    }
    while let Some(Reverse((_, x))) = heap.pop() {
        let lx = eval(lam, &x);
        if kept.par_iter().any(|u| reduces(u, &x, lx)) {
            continue;
        }
        if lx != 0 {
            for (u, lu) in &kept {
                if (*lu > 0) != (lx > 0) && *lu != 0 {
                    let s: Vec<u64> = x.iter().zip(u).map(|(a, b)| a + b).collect();
                    if seen.insert(s.clone()) {
                        heap.push(Reverse((s.iter().sum(), s)));
                    }
                }
            }
        }
        kept.push((x, lx));
    }
    kept.into_iter().filter(|(_, l)| *l >= 0).map(|(x, _)| x).collect()
}

/// Reference enumeration: minimal nonzero solutions with all entries ≤ `bound`.
/// Exponential; intended for cross-checking small systems.
pub fn bounded_minimal_solutions(m: &[Vec<i64>], n: usize, bound: u64) -> Vec<Vec<u64>> {
    let mut sols = Vec::new();
    let mut x = vec![0u64; n];
    loop {
        let mut i = 0;
        while i < n && x[i] == bound {
            x[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        x[i] += 1;
        if m.iter().all(|row| row.iter().zip(&x).map(|(a, &b)| a * b as i64).sum::<i64>() == 0) {
            sols.push(x.clone());
        }
    }
    sols.sort_by_key(|s| s.iter().sum::<u64>());
    let mut minimal: Vec<Vec<u64>> = Vec::new();
    for s in sols {
        if !minimal.iter().any(|b| dominates(&s, b)) {
            minimal.push(s);
        }
    }
    minimal.sort();
    minimal
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn classic_example() {
        // x + y = 2z has basis (0,2,1), (1,1,1), (2,0,1).
        let m = vec![vec![1, 1, -2]];
        assert_eq!(hilbert_basis(&m, 3), vec![vec![0, 2, 1], vec![1, 1, 1], vec![2, 0, 1]]);
    }

    #[test]
    fn free_variables_are_units() {
        assert_eq!(hilbert_basis(&[], 2), vec![vec![0, 1], vec![1, 0]]);
    }

    /// Slack-variable formulation, used as the oracle for the halfspace cuts.
    fn with_slack(eqs: &[Vec<i64>], ineqs: &[Vec<i64>], n: usize) -> Vec<Vec<u64>> {
        let total = n + ineqs.len();
        let mut rows: Vec<Vec<i64>> = eqs.iter().map(|r| {
            let mut r = r.clone();
            r.resize(total, 0);
            r
        }).collect();
        for (k, c) in ineqs.iter().enumerate() {
            let mut r = c.clone();
            r.resize(total, 0);
            r[n + k] = -1;
            rows.push(r);
        }
        let mut out: Vec<Vec<u64>> = hilbert_basis(&rows, total).into_iter().map(|mut g| {
            g.truncate(n);
            g
        }).filter(|g| g.iter().any(|&v| v > 0)).collect();
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn cut_simple_cone() {
        // x ≤ 2y in ℕ²: basis (0,1), (1,1), (2,1).
        let b = cut_by_inequalities(&[vec![1, 0], vec![0, 1]], &[vec![-1, 2]]);
        assert_eq!(b, vec![vec![0, 1], vec![1, 1], vec![2, 1]]);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]
        #[test]
        fn cuts_agree_with_slack(
            eqs in prop::collection::vec(prop::collection::vec(-2i64..=2, 4), 0..=1),
            ineqs in prop::collection::vec(prop::collection::vec(-3i64..=3, 4), 1..=3),
        ) {
            let start = hilbert_basis(&eqs, 4);
            prop_assert_eq!(cut_by_inequalities(&start, &ineqs), with_slack(&eqs, &ineqs, 4));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(60))]
        #[test]
        fn agrees_with_completion(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 1..=3)) {
            prop_assert_eq!(hilbert_basis(&rows, 5), contejean_devie(&rows, 5));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(40))]
        #[test]
        fn agrees_with_enumeration(rows in prop::collection::vec(prop::collection::vec(-2i64..=2, 4), 1..=2)) {
            let hb = hilbert_basis(&rows, 4);
            let bound = hb.iter().flatten().copied().max().unwrap_or(0).max(4);
            prop_assume!(bound <= 6);
            prop_assert_eq!(hb, bounded_minimal_solutions(&rows, 4, bound));
        }
    }
}
