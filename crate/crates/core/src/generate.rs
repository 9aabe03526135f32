//! Random tangle expressions and random planar maps for property tests.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use rand::Rng;

use crate::exact::Rational;
use crate::map::{Dart, Edge, EdgeLabel, PlanarMap};
use crate::tangle::TangleExpr;

/// Random expression of depth at most `max_depth` with leaves `Q(p/q)`,
/// `0 < |p| <= max_entry`, `0 < q <= max_entry`.
pub fn random_tangle<R: Rng + ?Sized>(rng: &mut R, max_depth: usize, max_entry: i64) -> TangleExpr {
    if max_depth == 0 || rng.gen_ratio(1, 3) {
        let mut p = rng.gen_range(1..=max_entry);
        if rng.gen_bool(0.5) {
            p = -p;
        }
        let q = rng.gen_range(1..=max_entry);
        return TangleExpr::Rational(Rational::new(BigInt::from(p), BigInt::from(q)));
    }
    let a = random_tangle(rng, max_depth - 1, max_entry);
    let b = random_tangle(rng, max_depth - 1, max_entry);
    if rng.gen_bool(0.5) {
        TangleExpr::sum(a, b)
    } else {
        TangleExpr::product(a, b)
    }
}

struct Draft {
    ends: Vec<(usize, usize)>,
    rotation: Vec<Vec<Dart>>,
}

impl Draft {
    fn origin(&self, d: Dart) -> usize {
        let (t, h) = self.ends[d.edge()];
        if d.is_tail() {
            t
        } else {
            h
        }
    }

    fn position(&self, d: Dart) -> (usize, usize) {
        let v = self.origin(d);
        (v, self.rotation[v].iter().position(|&x| x == d).expect("dart in rotation"))
    }

    /// Face orbit on the left of `d`.
    fn orbit(&self, start: Dart) -> Vec<Dart> {
        let mut out = vec![start];
        let mut d = start;
        loop {
            let (v, i) = self.position(d.twin());
            let n = self.rotation[v].len();
            d = self.rotation[v][(i + n - 1) % n];
            if d == start {
                return out;
            }
            out.push(d);
        }
    }

    /// Adds an edge whose darts sit right after `after_tail` and
    /// `after_head` in counterclockwise order, inside their left faces.
    fn add_edge(&mut self, tail: usize, head: usize, after_tail: Option<Dart>, after_head: Option<Dart>) {
        let e = self.ends.len();
        self.ends.push((tail, head));
        for (d, v, after) in [(Dart::tail(e), tail, after_tail), (Dart::head(e), head, after_head)] {
            let at = match after {
                Some(a) => self.position(a).1 + 1,
                None => self.rotation[v].len(),
            };
            self.rotation[v].insert(at, d);
        }
    }
}

/// Random connected plane map grown from a single edge by `steps` moves,
/// each either attaching a pendant edge at a random corner or splitting a
/// random face with a chord between two distinct vertices on it. Edges are
/// named `W1, W2, ...` and oriented at random.
pub fn random_planar_map<R: Rng + ?Sized>(
    rng: &mut R,
    steps: usize,
    mut label: impl FnMut(&mut R) -> EdgeLabel,
) -> PlanarMap {
    let mut draft = Draft { ends: vec![(0, 1)], rotation: vec![vec![Dart::tail(0)], vec![Dart::head(0)]] };
    for _ in 0..steps {
        let darts = 2 * draft.ends.len();
        let d = Dart::from_index(rng.gen_range(0..darts));
        let chord = rng.gen_bool(0.6).then(|| {
            let face = draft.orbit(d);
            let first = draft.origin(d);
            let others: Vec<Dart> = face.iter().copied().filter(|&x| draft.origin(x) != first).collect();
            (!others.is_empty()).then(|| others[rng.gen_range(0..others.len())])
        });
        let flip = rng.gen_bool(0.5);
        match chord.flatten() {
            Some(other) => {
                let (a, b) = (draft.origin(d), draft.origin(other));
                if flip {
                    draft.add_edge(b, a, Some(other), Some(d));
                } else {
                    draft.add_edge(a, b, Some(d), Some(other));
                }
            }
            None => {
                let v = draft.origin(d);
                let w = draft.rotation.len();
                draft.rotation.push(Vec::new());
                if flip {
                    draft.add_edge(w, v, None, Some(d));
                } else {
                    draft.add_edge(v, w, Some(d), None);
                }
            }
        }
    }
    let vertices = (0..draft.rotation.len()).map(|i| format!("v{}", i)).collect();
    let edges = draft
        .ends
        .iter()
        .enumerate()
        .map(|(i, &(tail, head))| Edge { name: format!("W{}", i + 1), tail, head, label: label(rng) })
        .collect();
    let outer = Dart::from_index(rng.gen_range(0..2 * draft.ends.len()));
    PlanarMap::from_parts(vertices, edges, draft.rotation, outer, &[]).expect("generated map is planar")
}
