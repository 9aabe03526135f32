//! Abelian invariants checked against an independent Goeritz-matrix
//! determinant computed over the faces of the full decomposition graph.

use coarse_core::generate::random_planar_map;
use coarse_core::map::{inverse_tangle, MapBuilder};
use coarse_core::presentation::h1_order;
use coarse_core::{brunner, reduced_brunner, EdgeLabel, PlanarMap, TangleExpr};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Determinant by Gaussian elimination over the rationals.
fn det(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let n = m.len();
    let mut acc = BigRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !m[i][k].is_zero()) else {
            return BigRational::zero();
        };
        if p != k {
            m.swap(p, k);
            acc = -acc;
        }
        acc *= m[k][k].clone();
        for i in k + 1..n {
            let f = &m[i][k] / &m[k][k];
            for j in k..n {
                let d = &f * &m[k][j];
                m[i][j] -= d;
            }
        }
    }
    acc
}

/// |det| of the Goeritz matrix: faces weighted by the signed twist count of
/// each full-graph edge, outer face removed.
fn goeritz(m: &PlanarMap) -> BigInt {
    let full = m.expand_to_reduced().unwrap().expand_to_full().unwrap();
    let faces: Vec<usize> = full.faces().iter().map(|f| f.id).filter(|&f| f != full.outer()).collect();
    let index = |f: usize| faces.iter().position(|&g| g == f);
    let n = faces.len();
    let mut g = vec![vec![BigRational::zero(); n]; n];
    for (e, edge) in full.edges().iter().enumerate() {
        let EdgeLabel::Integer(a) = edge.label else { panic!("full graph has integer labels") };
        let w = BigRational::from_integer(BigInt::from(a));
        let (l, r) = full.adjacent_regions(e);
        if l == r {
            continue;
        }
        for (x, y) in [(l, r), (r, l)] {
            if let Some(i) = index(x) {
                g[i][i] += w.clone();
                if let Some(j) = index(y) {
                    g[i][j] -= w.clone();
                }
            }
        }
    }
    det(g).abs().to_integer()
}

fn closure(expr: &str) -> PlanarMap {
    let t: TangleExpr = expr.parse().unwrap();
    let mut b = MapBuilder::new();
    b.vertex("a").vertex("b").tangle_edge("W", "a", "b", t);
    b.rotation("a", &["W.t"]).rotation("b", &["W.h"]).outer("W.t");
    b.build().unwrap()
}

#[test]
fn lens_space_closures() {
    for (expr, p) in [("Q(1/2)", 2), ("Q(1/3)", 3), ("Q(2/5)", 5), ("Q(3/7)", 7), ("Q(10/7)", 7)] {
        let m = closure(expr);
        assert_eq!(goeritz(&m), BigInt::from(p), "{expr}");
        assert_eq!(h1_order(&brunner(&m).unwrap()), BigInt::from(p), "{expr}");
        assert_eq!(h1_order(&reduced_brunner(&m).unwrap()), BigInt::from(p), "{expr}");
    }
}

fn random_label(rng: &mut ChaCha8Rng) -> EdgeLabel {
    let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
    match rng.gen_range(0..3) {
        0 => EdgeLabel::Integer(sign * rng.gen_range(1..4)),
        1 => inverse_tangle(sign * rng.gen_range(2..5)),
        _ => EdgeLabel::Tangle(coarse_core::generate::random_tangle(rng, 2, 4)),
    }
}

#[test]
fn random_maps_agree_with_goeritz() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..60 {
        let steps = rng.gen_range(0..7);
        let m = random_planar_map(&mut rng, steps, random_label);
        let oracle = goeritz(&m);
        let full = h1_order(&brunner(&m).unwrap());
        let reduced = h1_order(&reduced_brunner(&m).unwrap());
        assert_eq!(full, oracle);
        assert_eq!(reduced, oracle);
    }
}
