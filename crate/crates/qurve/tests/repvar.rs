//! Exact evaluation on representations: functoriality, invariance under the
//! base-change group, semi-invariants and flows.

mod common;

use common::*;
use num::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::RngSeed;
use qurve::matrix::QMatrix;
use qurve::poisson::{flow, parse_necklace, NCPoly, NecklacePoly, Path};
use qurve::presets::{preset_double, preset_tree};
use qurve::rational::q;
use qurve::repvar::*;
use qurve::semigroup::DimVecConstraintSystem;
use qurve::{semigroup_generators, sigma_matrix, zariski_quiver, DimVecStatus, DoubleQuiver, Error, Quiver, Q};
use rand::Rng;

fn random_rep(qv: &Quiver, dims: Vec<usize>, r: &mut Rng8) -> Representation {
    let maps = qv.arrows().iter().map(|a| random_matrix(r, dims[a.target], dims[a.source])).collect();
    Representation::new(qv, dims, maps).unwrap()
}

fn random_group(dims: &[usize], r: &mut Rng8) -> Vec<QMatrix> {
    dims.iter().map(|&d| random_invertible(r, d)).collect()
}

fn random_dims(n: usize, r: &mut Rng8) -> Vec<usize> {
    (0..n).map(|_| r.gen_range(1..=3)).collect()
}

fn doubles() -> Vec<DoubleQuiver> {
    ["calogero-moser", "psl2z-double", "gl2z-double"].iter().map(|n| preset_double(n).unwrap()).collect()
}

/// Closed random paths, as necklaces.
fn random_closed(dq: &DoubleQuiver, r: &mut Rng8) -> Option<NecklacePoly> {
    for _ in 0..20 {
        let len = r.gen_range(1..=5);
        let p = random_path(dq, r, len);
        if p.is_closed() && !p.is_trivial() {
            return Some(NecklacePoly::project(dq.quiver(), &NCPoly::path(p)));
        }
    }
    None
}

fn cfg() -> ProptestConfig {
    ProptestConfig { cases: 64, rng_seed: RngSeed::Fixed(0x7e9), ..ProptestConfig::default() }
}

proptest! {
    #![proptest_config(cfg())]

    /// `R(p q) = R(p) R(q)` for composable paths.
    #[test]
    fn evaluation_is_multiplicative(seed in any::<u64>(), which in 0usize..3) {
        let dq = &doubles()[which];
        let mut r = rng(seed);
        let rep = random_rep(dq.quiver(), random_dims(dq.quiver().vertex_count(), &mut r), &mut r);
        let p = random_path(dq, &mut r, 3);
        let mut qp = random_path(dq, &mut r, 3);
        for _ in 0..20 {
            if p.compose(&qp).is_some() {
                break;
            }
            qp = random_path(dq, &mut r, 3);
        }
        if let Some(pq) = p.compose(&qp) {
            prop_assert_eq!(evaluate_path(&pq, &rep), &evaluate_path(&p, &rep) * &evaluate_path(&qp, &rep));
        }
    }

    /// Traces of necklaces are invariant under `g·R`.
    #[test]
    fn traces_are_conjugation_invariant(seed in any::<u64>(), which in 0usize..3) {
        let dq = &doubles()[which];
        let qv = dq.quiver();
        let mut r = rng(seed);
        let dims = random_dims(qv.vertex_count(), &mut r);
        let rep = random_rep(qv, dims.clone(), &mut r);
        let g = random_group(&dims, &mut r);
        let moved = act(qv, &g, &rep).unwrap();
        if let Some(n) = random_closed(dq, &mut r) {
            prop_assert_eq!(trace_necklace(qv, &n, &rep), trace_necklace(qv, &n, &moved));
        }
    }

    /// The moment map is a sum of commutators: its total trace vanishes, and
    /// it transforms by conjugation.
    #[test]
    fn moment_map_is_equivariant(seed in any::<u64>(), which in 0usize..3) {
        let dq = &doubles()[which];
        let qv = dq.quiver();
        let mut r = rng(seed);
        let dims = random_dims(qv.vertex_count(), &mut r);
        let rep = random_rep(qv, dims.clone(), &mut r);
        let m = moment_evaluate(dq, &rep);
        prop_assert!(m.iter().map(QMatrix::trace).sum::<Q>().is_zero());
        let g = random_group(&dims, &mut r);
        let moved = moment_evaluate(dq, &act(qv, &g, &rep).unwrap());
        for (v, gv) in g.iter().enumerate() {
            prop_assert_eq!(&moved[v], &(&(gv * &m[v]) * &gv.inverse().unwrap()));
        }
    }

    /// Flows are algebra automorphisms: moving the point and evaluating
    /// agrees with evaluating the image.
    #[test]
    fn flow_commutes_with_evaluation(seed in any::<u64>(), k in 1usize..=3, rho in -3i64..=3) {
        let dq = preset_double("calogero-moser").unwrap();
        let qv = dq.quiver();
        let word = vec!["b"; k + 1].join(".");
        let n = parse_necklace(&dq, &word).unwrap();
        let mut r = rng(seed);
        let rep = random_rep(qv, vec![1, r.gen_range(1..=3)], &mut r);
        let moved = flow_on_rep(&dq, &n, &q(rho), &rep).unwrap();
        let p = random_path(&dq, &mut r, 4);
        let image = flow(&dq, &n, &q(rho), &NCPoly::path(p.clone())).unwrap();
        let lhs = if image.is_zero() { QMatrix::zero(rep.dims[p.target()], rep.dims[p.source()]) } else { evaluate(&image, &rep).unwrap() };
        prop_assert_eq!(lhs, evaluate_path(&p, &moved));
    }

    /// `det Σ_e(g⁻¹·R)` picks up `det g` at every column vertex and `det g⁻¹`
    /// at every row vertex; with unit edge blocks that factor is `θ_e(g)`.
    #[test]
    fn sigma_is_semi_invariant(seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = random_tree(&mut r);
        let z = zariski_quiver(&t).unwrap();
        prop_assume!(z.quiver.vertex_count() <= 10 && !t.edges.is_empty());
        let sys = DimVecConstraintSystem::new(&t, &z);
        let gens = semigroup_generators(&t, &z).unwrap();
        let small: Vec<_> = gens.iter().filter(|g| sys.degree(g) <= 4).collect();
        prop_assume!(!small.is_empty());
        let alpha = small[r.gen_range(0..small.len())];
        let dims: Vec<usize> = alpha.iter().map(|&x| x as usize).collect();
        let rep = random_rep(&z.quiver, dims.clone(), &mut r);
        let g = random_group(&dims, &mut r);
        let ginv: Vec<QMatrix> = g.iter().map(|m| m.inverse().unwrap()).collect();
        let moved = act(&z.quiver, &ginv, &rep).unwrap();
        for e in &t.edges {
            let s = sigma_matrix(&t, &z, &e.id).unwrap();
            let cols: Q = s.col_vertices.iter().map(|&v| g[v].det()).product();
            let rows: Q = s.row_vertices.iter().map(|&v| g[v].det()).product();
            let factor = cols / rows;
            prop_assert_eq!(det_semi_invariant(&s, &moved).unwrap(), factor.clone() * det_semi_invariant(&s, &rep).unwrap());
            if e.blocks.blocks.iter().all(|&b| b == 1) {
                prop_assert_eq!(theta_character(&t, &z, &e.id, &g).unwrap(), factor);
            }
        }
    }

    #[test]
    fn representation_json_round_trip(seed in any::<u64>(), which in 0usize..3) {
        let dq = &doubles()[which];
        let mut r = rng(seed);
        let rep = random_rep(dq.quiver(), random_dims(dq.quiver().vertex_count(), &mut r), &mut r);
        prop_assert_eq!(Representation::from_json(dq.quiver(), &rep.to_json(dq.quiver())).unwrap(), rep);
    }
}

#[test]
fn trace_bracket_of_the_loops_is_the_dimension() {
    let dq = preset_double("calogero-moser").unwrap();
    let b = parse_necklace(&dq, "b").unwrap();
    let bs = parse_necklace(&dq, "b*").unwrap();
    let mut r = rng(3);
    for k in 1..=4 {
        let rep = random_rep(dq.quiver(), vec![1, k], &mut r);
        assert_eq!(poisson_trace_bracket(&dq, &b, &bs, &rep), q(k as i64));
        assert_eq!(poisson_trace_bracket(&dq, &bs, &b, &rep), -q(k as i64));
    }
}

#[test]
fn calogero_moser_points() {
    let dq = preset_double("calogero-moser").unwrap();
    for k in 1..=2usize {
        // Z diagonal with distinct eigenvalues, X chosen so [X,Z] + 1 has rank one.
        let z = QMatrix::from_fn(k, k, |i, j| if i == j { q(i as i64 + 1) } else { q(0) });
        let x = QMatrix::from_fn(k, k, |i, j| if i == j { q(0) } else { -q(1) / q(i as i64 - j as i64) });
        let c = &x.commutator(&z) + &QMatrix::identity(k);
        assert_eq!(c.rank(), 1, "k = {k}");
        assert!(cm_phase_space_check(&x, &z));
        let u = QMatrix::from_fn(k, 1, |_, _| q(1));
        let v = QMatrix::from_fn(1, k, |_, _| q(1));
        let p = CmPoint { x, z, u, v };
        let rep = p.to_rep(&dq).unwrap();
        assert_eq!(CmPoint::from_rep(&dq, &rep).unwrap(), p);
    }
    // k = 1: [X,Z] = 0, so rank([X,Z] + 1) = 1 for any pair.
    assert!(cm_phase_space_check(&QMatrix::identity(1).scale(&q(7)), &QMatrix::identity(1)));
    // Commuting 2×2 pair: [X,Z] + 1 = 1 has rank two.
    assert!(!cm_phase_space_check(&QMatrix::identity(2), &QMatrix::identity(2)));
}

#[test]
fn sigma_invertible_examples() {
    let t = preset_tree("gl2z").unwrap();
    let z = zariski_quiver(&t).unwrap();
    let g1 = &gl2_generators()[0];
    let dims: Vec<usize> = g1.iter().map(|&x| x as usize).collect();
    assert!(!sigma_invertible(&t, &z, &Representation::zero(&z.quiver, dims.clone())).unwrap());
    let mut rep = Representation::zero(&z.quiver, dims);
    for m in rep.maps.iter_mut() {
        *m = QMatrix::from_fn(m.rows(), m.cols(), |i, j| if i == j { q(1) } else { q(0) });
    }
    // Full dimension vector: invertibility is exactly det Σ ≠ 0 on each edge.
    let expect = t.edges.iter().all(|e| !det_semi_invariant(&sigma_matrix(&t, &z, &e.id).unwrap(), &rep).unwrap().is_zero());
    assert_eq!(sigma_invertible(&t, &z, &rep).unwrap(), expect);

    let mut weak = vec![0usize; z.quiver.vertex_count()];
    weak[0] = 1;
    let err = sigma_invertible(&t, &z, &Representation::zero(&z.quiver, weak)).unwrap_err();
    assert!(matches!(err, Error::NotFull(_)));
}

#[test]
fn theta_weights_and_stability() {
    let t = preset_tree("sl2z").unwrap();
    let z = zariski_quiver(&t).unwrap();
    let w = theta_weights(&t, &z, &t.edges[0].id).unwrap();
    // The weights pair to zero with every full vector.
    let sys = DimVecConstraintSystem::new(&t, &z);
    for g in semigroup_generators(&t, &z).unwrap() {
        assert!(matches!(sys.check(&g).unwrap(), DimVecStatus::Full(_)));
        assert!(e_semistable_inequality(&w, &g, false));
        assert!(!e_semistable_inequality(&w, &g, true));
    }
    assert!(e_semistable_inequality(&[1, -1], &[2, 1], true));
    assert!(!e_semistable_inequality(&[1, -1], &[1, 2], false));
    let g: Vec<QMatrix> = (0..z.quiver.vertex_count()).map(|_| QMatrix::identity(1)).collect();
    assert!(theta_character(&t, &z, &t.edges[0].id, &g).unwrap().is_one());
}

#[test]
fn evaluate_rejects_mixed_endpoints() {
    let dq = preset_double("psl2z-double").unwrap();
    let qv = dq.quiver();
    let rep = Representation::zero(qv, vec![1; 6]);
    let p: NCPoly = [(Path::arrow(qv, 0), q(1)), (Path::arrow(qv, 2), q(1))].into_iter().collect();
    assert!(evaluate(&p, &rep).is_err());
    assert!(evaluate(&NCPoly::zero(), &rep).is_err());
}
