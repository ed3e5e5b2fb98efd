//! Shared fixtures and seeded generators for the integration tests.
#![allow(dead_code)]

use qurve::matrix::QMatrix;
use qurve::poisson::{NCPoly, Path};
use qurve::presets::preset_tree;
use qurve::rational::q;
use qurve::tree::{RestrictionMap, SemiSimpleAlgebra, TreeEdge, TreeVertex};
use qurve::{zariski_quiver, DimVector, DoubleQuiver, TreeOfAlgebras, ZariskiQuiver};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;
pub type Rng8 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng8 {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn setup(name: &str) -> (TreeOfAlgebras, ZariskiQuiver) {
    let t = preset_tree(name).unwrap();
    let z = zariski_quiver(&t).unwrap();
    (t, z)
}

/// Γ(SL₂) vectors in the printed hexagon order. The second block prints the
/// same vector for `g₉` and `g₁₁`; going round the hexagon forces
/// `g₉ = a₂ + b₆`, and the printed value is kept for `g₁₁`.
pub fn sl2_generators() -> Vec<DimVector> {
    let v = |a: usize, b: usize| {
        let mut g = vec![0u64; 10];
        g[a - 1] = 1;
        g[4 + b - 1] = 1;
        g
    };
    vec![v(1, 1), v(3, 3), v(1, 5), v(3, 1), v(1, 3), v(3, 5), v(2, 2), v(4, 4), v(2, 6), v(4, 2), v(2, 4), v(4, 6)]
}

/// Γ(GL₂) vectors from `(a₁…a₅; b₁…b₆)` multiplicities.
pub fn gl2(a: [u64; 5], b: [u64; 6]) -> DimVector {
    a.iter().chain(b.iter()).copied().collect()
}

pub fn gl2_generators() -> Vec<DimVector> {
    vec![
        gl2([1, 0, 0, 0, 0], [1, 0, 0, 0, 0, 0]),
        gl2([1, 1, 0, 0, 0], [0, 0, 0, 0, 0, 1]),
        gl2([0, 0, 1, 1, 0], [0, 0, 0, 0, 0, 1]),
        gl2([1, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1]),
        gl2([0, 1, 0, 0, 0], [0, 1, 0, 0, 0, 0]),
        gl2([0, 1, 1, 0, 0], [0, 0, 0, 0, 0, 1]),
        gl2([0, 0, 0, 1, 0], [0, 1, 0, 0, 0, 0]),
        gl2([0, 0, 1, 0, 0], [1, 0, 0, 0, 0, 0]),
        gl2([0, 0, 0, 0, 1], [0, 0, 1, 1, 0, 0]),
        gl2([0, 0, 0, 0, 1], [0, 0, 0, 0, 1, 0]),
    ]
}

/// `g₁₁…g₁₄` of S_Δ; `g₁₂` reads `a₂ + a₄` where the table prints `a₂ + b₁`,
/// which is not even a weak vector.
pub fn gl2_delta_extras() -> Vec<DimVector> {
    vec![
        gl2([1, 0, 1, 0, 0], [0, 0, 0, 0, 0, 1]),
        gl2([0, 1, 0, 1, 0], [0, 0, 0, 0, 0, 1]),
        gl2([0, 0, 0, 0, 2], [0, 0, 2, 0, 1, 0]),
        gl2([0, 0, 0, 0, 2], [0, 0, 0, 2, 1, 0]),
    ]
}

pub fn sorted(mut v: Vec<DimVector>) -> Vec<DimVector> {
    v.sort();
    v
}

pub fn index_of(gens: &[DimVector], g: &[u64]) -> usize {
    gens.iter().position(|x| x == g).unwrap_or_else(|| panic!("{g:?} is not a generator"))
}

pub fn random_matrix(rng: &mut Rng8, rows: usize, cols: usize) -> QMatrix {
    let vals: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(-3..=3)).collect();
    QMatrix::from_fn(rows, cols, |i, j| q(vals[i * cols + j]))
}

pub fn random_invertible(rng: &mut Rng8, n: usize) -> QMatrix {
    loop {
        let m = random_matrix(rng, n, n);
        if m.inverse().is_some() {
            return m;
        }
    }
}

/// A walk of up to `len` arrows from a random vertex, in written order.
pub fn random_path(dq: &DoubleQuiver, rng: &mut Rng8, len: usize) -> Path {
    let qv = dq.quiver();
    let mut at = rng.gen_range(0..qv.vertex_count());
    let start = at;
    let mut arrows = Vec::new();
    for _ in 0..len {
        let out: Vec<usize> = (0..qv.arrow_count()).filter(|&a| qv.arrow(a).source == at).collect();
        let Some(&a) = out.choose(rng) else { break };
        arrows.push(a);
        at = qv.arrow(a).target;
    }
    if arrows.is_empty() {
        return Path::trivial(start);
    }
    arrows.reverse();
    Path::from_arrows(qv, &arrows).unwrap()
}

/// A short combination of random paths of length at most `len`.
pub fn random_poly(dq: &DoubleQuiver, rng: &mut Rng8, len: usize) -> NCPoly {
    let terms = rng.gen_range(1..=2);
    (0..terms)
        .map(|_| {
            let l = rng.gen_range(0..=len);
            let c = loop {
                let c = rng.gen_range(-2..=2);
                if c != 0 {
                    break c;
                }
            };
            (random_path(dq, rng, l), q(c))
        })
        .collect()
}

/// Ways of writing `d` as `Σ x_k e_k` with `0 ≤ x_k ≤ 2`.
fn columns(edge: &[u32], d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut x = vec![0u32; edge.len()];
    loop {
        if x.iter().zip(edge).map(|(a, b)| a * b).sum::<u32>() == d {
            out.push(x.clone());
        }
        let mut i = 0;
        loop {
            if i == x.len() {
                return out;
            }
            if x[i] < 2 {
                x[i] += 1;
                break;
            }
            x[i] = 0;
            i += 1;
        }
    }
}

fn restriction(rng: &mut Rng8, edge: &[u32], target: &[u32]) -> Option<RestrictionMap> {
    let mut cols = Vec::new();
    for &d in target {
        let opts = columns(edge, d);
        cols.push(opts.choose(rng)?.clone());
    }
    let m: Vec<Vec<u32>> = (0..edge.len()).map(|k| cols.iter().map(|c| c[k]).collect()).collect();
    // Every edge simple has to occur in the restriction.
    m.iter().all(|row| row.iter().any(|&x| x > 0)).then(|| RestrictionMap::new(m))
}

fn random_blocks(rng: &mut Rng8) -> Vec<u32> {
    let n = rng.gen_range(1..=3);
    (0..n).map(|_| rng.gen_range(1..=3)).collect()
}

/// A random valid tree: at most 4 vertices, at most 3 blocks per algebra,
/// blocks of size at most 3, restriction multiplicities at most 2.
pub fn random_tree(rng: &mut Rng8) -> TreeOfAlgebras {
    'retry: loop {
        let nv = rng.gen_range(1..=4);
        let vertices: Vec<TreeVertex> =
            (0..nv).map(|i| TreeVertex { id: format!("v{i}"), blocks: SemiSimpleAlgebra::new(random_blocks(rng)) }).collect();
        let mut edges = Vec::new();
        for i in 1..nv {
            let parent = rng.gen_range(0..i);
            let mut found = None;
            for _ in 0..50 {
                let eb = random_blocks(rng);
                let from = restriction(rng, &eb, &vertices[parent].blocks.blocks);
                let to = restriction(rng, &eb, &vertices[i].blocks.blocks);
                if let (Some(f), Some(t)) = (from, to) {
                    found = Some((eb, f, t));
                    break;
                }
            }
            let Some((eb, f, t)) = found else { continue 'retry };
            edges.push(TreeEdge {
                id: format!("e{i}"),
                from: vertices[parent].id.clone(),
                to: vertices[i].id.clone(),
                blocks: SemiSimpleAlgebra::new(eb),
                restriction_from: f,
                restriction_to: t,
            });
        }
        let t = TreeOfAlgebras { name: "random".into(), root: "v0".into(), vertices, edges };
        assert!(t.validate().is_ok(), "generator produced an invalid tree");
        return t;
    }
}
