//! Built-in trees and double quivers used by the examples and tests.

use crate::error::{Error, Result};
use crate::quiver::{double_quiver, DoubleQuiver, Quiver};
use crate::tree::{parse_tree, TreeOfAlgebras};

pub const TREE_PRESETS: &[&str] = &["sl2z", "psl2z", "gl2z", "calogero-moser-base"];
pub const DOUBLE_PRESETS: &[&str] = &["calogero-moser", "psl2z-double", "gl2z-double"];

const SL2Z: &str = r#"{
  "name": "sl2z", "root": "Z4",
  "vertices": [{"id": "Z4", "blocks": [1, 1, 1, 1]}, {"id": "Z6", "blocks": [1, 1, 1, 1, 1, 1]}],
  "edges": [{"id": "Z2", "from": "Z4", "to": "Z6", "blocks": [1, 1],
             "restriction_from": [[1, 0, 1, 0], [0, 1, 0, 1]],
             "restriction_to": [[1, 0, 1, 0, 1, 0], [0, 1, 0, 1, 0, 1]]}]
}"#;

const PSL2Z: &str = r#"{
  "name": "psl2z", "root": "Z2",
  "vertices": [{"id": "Z2", "blocks": [1, 1]}, {"id": "Z3", "blocks": [1, 1, 1]}],
  "edges": [{"id": "e", "from": "Z2", "to": "Z3", "blocks": [1],
             "restriction_from": [[1, 1]], "restriction_to": [[1, 1, 1]]}]
}"#;

const GL2Z: &str = r#"{
  "name": "gl2z", "root": "D4",
  "vertices": [{"id": "D4", "blocks": [1, 1, 1, 1, 2]}, {"id": "D6", "blocks": [1, 1, 1, 1, 2, 2]}],
  "edges": [{"id": "D2", "from": "D4", "to": "D6", "blocks": [1, 1, 1, 1],
             "restriction_from": [[1, 0, 1, 0, 0], [0, 0, 0, 0, 1], [0, 0, 0, 0, 1], [0, 1, 0, 1, 0]],
             "restriction_to": [[1, 0, 0, 0, 0, 1], [0, 0, 1, 0, 1, 0], [0, 0, 0, 1, 1, 0], [0, 1, 0, 0, 0, 1]]}]
}"#;

// Its étale quiver is a single arrow each way between a loop-free vertex and
// a vertex with two loops, i.e. the Calogero–Moser double quiver once doubled.
const CM_BASE: &str = r#"{
  "name": "calogero-moser-base", "root": "U",
  "vertices": [{"id": "U", "blocks": [1, 2]}, {"id": "V", "blocks": [1, 3]}],
  "edges": [{"id": "e", "from": "U", "to": "V", "blocks": [1, 1],
             "restriction_from": [[0, 2], [1, 0]], "restriction_to": [[1, 1], [0, 2]]}]
}"#;

pub fn preset_tree(name: &str) -> Result<TreeOfAlgebras> {
    let text = match name {
        "sl2z" => SL2Z,
        "psl2z" => PSL2Z,
        "gl2z" => GL2Z,
        "calogero-moser-base" => CM_BASE,
        _ => return Err(Error::Unknown { kind: "preset", name: name.to_string() }),
    };
    parse_tree(text)
}

/// Vertices `v0..v5`, `s_i: v_{i-1} → v_i` (indices mod 6) and `t_i = s_i*`.
fn psl2z_double() -> DoubleQuiver {
    let mut q = Quiver::with_vertices((0..6).map(|i| format!("v{i}")));
    let mut pairs = Vec::new();
    for i in 1..=6 {
        let s = q.add_arrow(format!("s{i}"), i - 1, i % 6).expect("fresh label");
        let t = q.add_arrow(format!("t{i}"), i % 6, i - 1).expect("fresh label");
        pairs.push((s, t));
    }
    DoubleQuiver::from_pairs(q, &pairs).expect("valid pairing")
}

/// Eight vertices `c1..c8` on the p-cycle `p_i: c_i → c_{i+1}` (indices mod 8),
/// the chords `x1: c2 → c6`, `x2: c4 → c8`, and the stars `q_i = p_i*`,
/// `y_i = x_i*`.
fn gl2z_double() -> DoubleQuiver {
    let mut q = Quiver::with_vertices((1..=8).map(|i| format!("c{i}")));
    let mut pairs = Vec::new();
    for i in 0..8 {
        let p = q.add_arrow(format!("p{}", i + 1), i, (i + 1) % 8).expect("fresh label");
        let s = q.add_arrow(format!("q{}", i + 1), (i + 1) % 8, i).expect("fresh label");
        pairs.push((p, s));
    }
    for (i, (from, to)) in [(1, 5), (3, 7)].into_iter().enumerate() {
        let x = q.add_arrow(format!("x{}", i + 1), from, to).expect("fresh label");
        let y = q.add_arrow(format!("y{}", i + 1), to, from).expect("fresh label");
        pairs.push((x, y));
    }
    DoubleQuiver::from_pairs(q, &pairs).expect("valid pairing")
}

/// Vertex `1` with `a: 1 → 2`, a loop `b` at `2`, and their stars.
fn calogero_moser() -> DoubleQuiver {
    let mut q = Quiver::with_vertices(["1", "2"]);
    q.add_arrow("a", 0, 1).expect("fresh label");
    q.add_arrow("b", 1, 1).expect("fresh label");
    double_quiver(&q)
}

pub fn preset_double(name: &str) -> Result<DoubleQuiver> {
    match name {
        "calogero-moser" => Ok(calogero_moser()),
        "psl2z-double" => Ok(psl2z_double()),
        "gl2z-double" => Ok(gl2z_double()),
        _ => Err(Error::Unknown { kind: "preset", name: name.to_string() }),
    }
}

/// Named necklaces of the preset double quivers, as path words.
pub fn preset_necklace(quiver: &str, name: &str) -> Option<String> {
    let cycle = |prefix: char, rev: bool, n: usize| {
        let mut v: Vec<String> = (1..=n).map(|i| format!("{prefix}{i}")).collect();
        if rev {
            v.reverse();
        }
        v.join(".")
    };
    match (quiver, name) {
        ("psl2z-double", "S") => Some(cycle('s', true, 6)),
        ("psl2z-double", "T") => Some(cycle('t', false, 6)),
        ("psl2z-double", l) if l.len() == 2 && l.starts_with('L') && ('1'..='6').contains(&l.chars().nth(1)?) => {
            let i = &l[1..];
            Some(format!("s{i}.t{i}"))
        }
        ("gl2z-double", "Gp") => Some(cycle('p', true, 8)),
        ("gl2z-double", "Gq") => Some(cycle('q', false, 8)),
        ("gl2z-double", "Kp_x1") => Some("x1.p1.p8.p7.p6".into()),
        ("gl2z-double", "Kp_x2") => Some("x2.p3.p2.p1.p8".into()),
        ("gl2z-double", "Kp_y1") => Some("y1.p5.p4.p3.p2".into()),
        ("gl2z-double", "Kp_y2") => Some("y2.p7.p6.p5.p4".into()),
        _ => None,
    }
}
