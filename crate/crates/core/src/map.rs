//! Rotation-system maps for the coarse decomposition graph, its reduced and
//! full expansions, and the connectivity graph.
//!
//! Every edge `e` has two darts: the tail dart `e.t` at its tail vertex and
//! the head dart `e.h` at its head vertex. Rotations list darts
//! counterclockwise. The face of a dart is the face on its left, traced by
//! `next(d) = rotation-predecessor of twin(d)`. For an oriented edge the left
//! region `R_l` is the face of its tail dart, the right region `R_r` the face
//! of its head dart.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive};
use thiserror::Error;

use crate::exact::{is_integer, is_unit_fraction, Rational};
use crate::tangle::{rational_tangle_expr, TangleExpr};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dart(u32);

impl Dart {
    pub fn tail(edge: usize) -> Dart {
        Dart(2 * edge as u32)
    }

    pub fn head(edge: usize) -> Dart {
        Dart(2 * edge as u32 + 1)
    }

    pub fn edge(self) -> usize {
        (self.0 / 2) as usize
    }

    pub fn is_tail(self) -> bool {
        self.0.is_multiple_of(2)
    }

    pub fn twin(self) -> Dart {
        Dart(self.0 ^ 1)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn from_index(i: usize) -> Dart {
        Dart(i as u32)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeLabel {
    /// Twisted band with `n` signed half twists.
    Integer(i64),
    /// `Q(1/m)` collapsed to one edge; `m` carries the sign, `|m| >= 2`.
    Inverse(i64),
    Tangle(TangleExpr),
    /// Connectivity edge.
    Plain,
}

impl fmt::Display for EdgeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeLabel::Integer(n) => write!(f, "[{}]", n),
            EdgeLabel::Inverse(m) => write!(f, "[1/{}]", m),
            EdgeLabel::Tangle(t) => write!(f, "{}", t),
            EdgeLabel::Plain => f.write_str("-"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub tail: usize,
    pub head: usize,
    pub label: EdgeLabel,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub id: usize,
    pub name: String,
    /// Orbit of the face, starting from its smallest dart.
    pub darts: Vec<Dart>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate edge `{0}`")]
    DuplicateEdge(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown dart `{0}`")]
    UnknownDart(String),
    #[error("dart `{0}` listed in the rotation of `{1}` but belongs to another vertex")]
    DartAtWrongVertex(String, String),
    #[error("dart `{0}` appears more than once in rotations")]
    RepeatedDart(String),
    #[error("rotation omits dart `{0}`")]
    MissingDart(String),
    #[error("rotation of `{0}` given twice")]
    RepeatedRotation(String),
    #[error("map has no edges")]
    NoEdges,
    #[error("map is disconnected")]
    Disconnected,
    #[error("Euler check failed: V - E + F = {v} - {e} + {f} != 2")]
    Euler { v: usize, e: usize, f: usize },
    #[error("no outer face given")]
    NoOuter,
    #[error("face name `{0}` used twice")]
    DuplicateFaceName(String),
    #[error("face of dart `{0}` named twice")]
    FaceNamedTwice(String),
    #[error("edge `{0}` is not reduced")]
    NotReduced(String),
    #[error("edge `{0}` has a label too large to expand")]
    LabelTooLarge(String),
}

/// Validated rotation-system map with named faces and a designated outer face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarMap {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    rotation: Vec<Vec<Dart>>,
    succ: Vec<Dart>,
    pred: Vec<Dart>,
    faces: Vec<Face>,
    face_of: Vec<usize>,
    outer: usize,
}

impl PlanarMap {
    /// Validates raw data. `named` assigns names to the faces of the given
    /// darts; remaining faces get fresh names `R0` (outer), `R1`, ...
    pub fn from_parts(
        vertices: Vec<String>,
        edges: Vec<Edge>,
        rotation: Vec<Vec<Dart>>,
        outer: Dart,
        named: &[(String, Dart)],
    ) -> Result<PlanarMap, MapError> {
        if edges.is_empty() {
            return Err(MapError::NoEdges);
        }
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(MapError::DuplicateVertex(v.clone()));
            }
        }
        let mut seen = BTreeSet::new();
        for e in &edges {
            if !seen.insert(e.name.as_str()) {
                return Err(MapError::DuplicateEdge(e.name.clone()));
            }
        }
        let dart_name = |d: Dart| dart_label(&edges, d);
        let n_darts = 2 * edges.len();
        let mut succ = vec![None; n_darts];
        let mut pred = vec![None; n_darts];
        for (v, rot) in rotation.iter().enumerate() {
            for (i, &d) in rot.iter().enumerate() {
                if d.index() >= n_darts {
                    return Err(MapError::UnknownDart(format!("#{}", d.index())));
                }
                let e = &edges[d.edge()];
                let at = if d.is_tail() { e.tail } else { e.head };
                if at != v {
                    return Err(MapError::DartAtWrongVertex(dart_name(d), vertices[v].clone()));
                }
                if succ[d.index()].is_some() {
                    return Err(MapError::RepeatedDart(dart_name(d)));
                }
                let next = rot[(i + 1) % rot.len()];
                succ[d.index()] = Some(next);
                pred[next.index()] = Some(d);
            }
        }
        let mut s = Vec::with_capacity(n_darts);
        let mut p = Vec::with_capacity(n_darts);
        for i in 0..n_darts {
            match (succ[i], pred[i]) {
                (Some(a), Some(b)) => {
                    s.push(a);
                    p.push(b);
                }
                _ => return Err(MapError::MissingDart(dart_name(Dart(i as u32)))),
            }
        }

        // connectivity over vertices
        let mut reached = vec![false; vertices.len()];
        let mut stack = vec![edges[0].tail];
        reached[edges[0].tail] = true;
        while let Some(v) = stack.pop() {
            for &d in &rotation[v] {
                let e = &edges[d.edge()];
                let w = if d.is_tail() { e.head } else { e.tail };
                if !reached[w] {
                    reached[w] = true;
                    stack.push(w);
                }
            }
        }
        if reached.iter().any(|r| !r) {
            return Err(MapError::Disconnected);
        }

        let (orbits, face_of) = trace_orbits(&p);
        let (v, e, f) = (vertices.len(), edges.len(), orbits.len());
        if v + f != e + 2 {
            return Err(MapError::Euler { v, e, f });
        }
        if outer.index() >= n_darts {
            return Err(MapError::NoOuter);
        }
        let outer_face = face_of[outer.index()];

        let mut names: Vec<Option<String>> = vec![None; f];
        let mut used = BTreeSet::new();
        for (name, d) in named {
            if d.index() >= n_darts {
                return Err(MapError::UnknownDart(name.clone()));
            }
            if !used.insert(name.clone()) {
                return Err(MapError::DuplicateFaceName(name.clone()));
            }
            let slot = &mut names[face_of[d.index()]];
            if slot.is_some() {
                return Err(MapError::FaceNamedTwice(dart_name(*d)));
            }
            *slot = Some(name.clone());
        }
        let mut counter = 0usize;
        let mut fresh = |used: &mut BTreeSet<String>| loop {
            let candidate = format!("R{}", counter);
            counter += 1;
            if used.insert(candidate.clone()) {
                return candidate;
            }
        };
        if names[outer_face].is_none() {
            names[outer_face] = Some(fresh(&mut used));
        }
        let faces = orbits
            .into_iter()
            .enumerate()
            .map(|(id, darts)| {
                let name = match names[id].take() {
                    Some(n) => n,
                    None => fresh(&mut used),
                };
                Face { id, name, darts }
            })
            .collect();

        Ok(PlanarMap { vertices, edges, rotation, succ: s, pred: p, faces, face_of, outer: outer_face })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn edge_index(&self, name: &str) -> Option<usize> {
        self.edges.iter().position(|e| e.name == name)
    }

    pub fn rotation(&self, v: usize) -> &[Dart] {
        &self.rotation[v]
    }

    /// Faces ordered by smallest dart.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, id: usize) -> &Face {
        &self.faces[id]
    }

    pub fn face_by_name(&self, name: &str) -> Option<&Face> {
        self.faces.iter().find(|f| f.name == name)
    }

    pub fn face_of(&self, d: Dart) -> usize {
        self.face_of[d.index()]
    }

    pub fn outer(&self) -> usize {
        self.outer
    }

    /// Vertex at which the dart sits.
    pub fn origin(&self, d: Dart) -> usize {
        let e = &self.edges[d.edge()];
        if d.is_tail() {
            e.tail
        } else {
            e.head
        }
    }

    pub fn rotation_succ(&self, d: Dart) -> Dart {
        self.succ[d.index()]
    }

    pub fn rotation_pred(&self, d: Dart) -> Dart {
        self.pred[d.index()]
    }

    /// Next dart along the face on the left of `d`.
    pub fn face_next(&self, d: Dart) -> Dart {
        self.pred[d.twin().index()]
    }

    pub fn dart_name(&self, d: Dart) -> String {
        dart_label(&self.edges, d)
    }

    pub fn parse_dart(&self, s: &str) -> Option<Dart> {
        let (name, end) = s.rsplit_once('.')?;
        let e = self.edge_index(name)?;
        match end {
            "t" => Some(Dart::tail(e)),
            "h" => Some(Dart::head(e)),
            _ => None,
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    /// `(R_l, R_r)`: faces left and right of the edge in its orientation.
    pub fn adjacent_regions(&self, e: usize) -> (usize, usize) {
        (self.face_of(Dart::tail(e)), self.face_of(Dart::head(e)))
    }

    /// Boundary of a face as a cyclic word over edges.
    ///
    /// The face is walked with the face on the right, and the word is written
    /// with the first traversed edge rightmost (`W_n ... W_1`). Exponent `+1`
    /// means the edge is traversed along its orientation. The word is rotated
    /// so that its rightmost letter is the smallest positive letter by edge
    /// index, or the smallest letter when all are negative.
    pub fn boundary_word(&self, face: usize) -> Vec<(usize, i64)> {
        let letters: Vec<(usize, i64)> =
            self.faces[face].darts.iter().map(|d| (d.edge(), if d.is_tail() { -1 } else { 1 })).collect();
        canonical_rotation(letters)
    }

    /// Copy with the orientation of edge `e` reversed.
    pub fn flip_edge(&self, e: usize) -> PlanarMap {
        let swap = |d: Dart| if d.edge() == e { d.twin() } else { d };
        let mut edges = self.edges.clone();
        let edge = &mut edges[e];
        core::mem::swap(&mut edge.tail, &mut edge.head);
        let rotation = self.rotation.iter().map(|r| r.iter().map(|&d| swap(d)).collect()).collect();
        let named: Vec<(String, Dart)> = self.faces.iter().map(|f| (f.name.clone(), swap(f.darts[0]))).collect();
        let outer = swap(self.faces[self.outer].darts[0]);
        PlanarMap::from_parts(self.vertices.clone(), edges, rotation, outer, &named)
            .expect("flipping an edge preserves validity")
    }

    fn named_faces_via(&self, map_dart: impl Fn(Dart) -> Dart) -> (Dart, Vec<(String, Dart)>) {
        let named = self.faces.iter().map(|f| (f.name.clone(), map_dart(f.darts[0]))).collect();
        (map_dart(self.faces[self.outer].darts[0]), named)
    }

    /// Replaces every tangle edge by its reduced decomposition graph:
    /// integer and `[1/m]` tangles become single edges, sums become edges in
    /// series through a fresh vertex, products become parallel edges with a
    /// fresh face between them (first factor on the left). Rational tangles
    /// expand through their canonical expression. Existing faces keep their
    /// names.
    pub fn expand_to_reduced(&self) -> Result<PlanarMap, MapError> {
        self.expand(|x, e, u, v| {
            let edge = &self.edges[e];
            match &edge.label {
                EdgeLabel::Tangle(t) => x.tangle(&edge.name, t, u, v),
                EdgeLabel::Integer(_) | EdgeLabel::Inverse(_) => Ok(x.single(&edge.name, edge.label.clone(), u, v)),
                EdgeLabel::Plain => Err(MapError::NotReduced(edge.name.clone())),
            }
        })
    }

    /// Replaces every `[1/m]` edge by `|m|` parallel `[±1]` edges, giving the
    /// decomposition graph.
    pub fn expand_to_full(&self) -> Result<PlanarMap, MapError> {
        self.expand(|x, e, u, v| {
            let edge = &self.edges[e];
            match &edge.label {
                EdgeLabel::Integer(_) => Ok(x.single(&edge.name, edge.label.clone(), u, v)),
                EdgeLabel::Inverse(m) => x.parallel_units(&edge.name, *m, u, v),
                _ => Err(MapError::NotReduced(edge.name.clone())),
            }
        })
    }

    fn expand(
        &self,
        mut each: impl FnMut(&mut Expander, usize, usize, usize) -> Result<Span, MapError>,
    ) -> Result<PlanarMap, MapError> {
        let mut x = Expander {
            vertices: self.vertices.clone(),
            edges: Vec::new(),
            rotation: vec![Vec::new(); self.vertices.len()],
            fresh_faces: Vec::new(),
        };
        let mut spans = Vec::with_capacity(self.edges.len());
        for (e, edge) in self.edges.iter().enumerate() {
            spans.push(each(&mut x, e, edge.tail, edge.head)?);
        }
        for (v, rot) in self.rotation.iter().enumerate() {
            let mut new_rot = Vec::new();
            for &d in rot {
                let span = &spans[d.edge()];
                new_rot.extend_from_slice(if d.is_tail() { &span.at_tail } else { &span.at_head });
            }
            x.rotation[v] = new_rot;
        }
        let image = |d: Dart| {
            let span = &spans[d.edge()];
            *if d.is_tail() { span.at_tail.last() } else { span.at_head.last() }.expect("non-empty span")
        };
        let (outer, mut named) = self.named_faces_via(image);
        named.extend(x.fresh_faces.iter().cloned());
        PlanarMap::from_parts(x.vertices, x.edges, x.rotation, outer, &named)
    }

    /// Groups edges into maximal bundles of parallel edges that are
    /// consecutive in the rotation (linked through two-edge faces).
    pub fn bundles(&self) -> Connectivity {
        let n = self.edges.len();
        // parent pointer with orientation parity relative to parent
        let mut parent: Vec<(usize, bool)> = (0..n).map(|e| (e, true)).collect();
        fn find(parent: &mut [(usize, bool)], e: usize) -> (usize, bool) {
            let (p, aligned) = parent[e];
            if p == e {
                return (e, true);
            }
            let (root, pa) = find(parent, p);
            let res = (root, aligned == pa);
            parent[e] = res;
            res
        }
        for face in &self.faces {
            if let [d1, d2] = face.darts[..] {
                let (e1, e2) = (d1.edge(), d2.edge());
                if e1 == e2 {
                    continue;
                }
                // consecutive darts of a digon run opposite ways, so the
                // edges agree in orientation iff exactly one dart is a tail
                let aligned = d1.is_tail() != d2.is_tail();
                let (r1, a1) = find(&mut parent, e1);
                let (r2, a2) = find(&mut parent, e2);
                if r1 != r2 {
                    let (lo, hi) = if r1 < r2 { (r1, r2) } else { (r2, r1) };
                    // orientation of hi relative to lo
                    let rel = (a1 == a2) == aligned;
                    parent[hi] = (lo, rel);
                }
            }
        }
        let mut bundle_index: BTreeMap<usize, usize> = BTreeMap::new();
        let mut bundles: Vec<Bundle> = Vec::new();
        let mut edge_bundle = Vec::with_capacity(n);
        for e in 0..n {
            let (root, aligned) = find(&mut parent, e);
            let b = *bundle_index.entry(root).or_insert_with(|| {
                bundles.push(Bundle { name: String::new(), members: Vec::new() });
                bundles.len() - 1
            });
            bundles[b].members.push((e, aligned));
            edge_bundle.push((b, aligned));
        }
        for b in &mut bundles {
            let names: Vec<&str> = b.members.iter().map(|&(e, _)| self.edges[e].name.as_str()).collect();
            b.name = bundle_name(&names);
        }
        Connectivity { bundles, edge_bundle }
    }

    /// Connectivity graph: one plain edge per bundle, oriented like the
    /// bundle's first edge. Faces keep the name of the first original face
    /// (outer first) that merges into them.
    pub fn collapse_connectivity(&self) -> (PlanarMap, Connectivity) {
        let conn = self.bundles();
        let reps: Vec<usize> = conn.bundles.iter().map(|b| b.members[0].0).collect();
        let new_index: BTreeMap<usize, usize> = reps.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let remap = |d: Dart| {
            let i = new_index[&d.edge()];
            if d.is_tail() {
                Dart::tail(i)
            } else {
                Dart::head(i)
            }
        };
        let edges: Vec<Edge> = conn
            .bundles
            .iter()
            .zip(&reps)
            .map(|(b, &e)| Edge {
                name: b.name.clone(),
                tail: self.edges[e].tail,
                head: self.edges[e].head,
                label: EdgeLabel::Plain,
            })
            .collect();
        let rotation: Vec<Vec<Dart>> = self
            .rotation
            .iter()
            .map(|r| r.iter().filter(|d| new_index.contains_key(&d.edge())).map(|&d| remap(d)).collect())
            .collect();
        let surviving: Vec<Dart> =
            (0..2 * self.edges.len()).map(|i| Dart(i as u32)).filter(|d| new_index.contains_key(&d.edge())).collect();
        let provisional =
            PlanarMap::from_parts(self.vertices.clone(), edges.clone(), rotation.clone(), Dart::tail(0), &[])
                .expect("removing parallel edges keeps the map valid");
        // first old face (outer first) merging into each new face
        let mut priority: Vec<usize> = vec![self.outer];
        priority.extend((0..self.faces.len()).filter(|&f| f != self.outer));
        let mut chosen: BTreeMap<usize, (usize, Dart)> = BTreeMap::new();
        for &d in &surviving {
            let old = self.face_of(d);
            let new = provisional.face_of(remap(d));
            let rank = priority.iter().position(|&f| f == old).expect("face");
            let entry = chosen.entry(new).or_insert((rank, remap(d)));
            if rank < entry.0 {
                *entry = (rank, remap(d));
            }
        }
        let named: Vec<(String, Dart)> =
            chosen.values().map(|&(rank, d)| (self.faces[priority[rank]].name.clone(), d)).collect();
        let outer =
            chosen.values().find(|(rank, _)| *rank == 0).map(|&(_, d)| d).unwrap_or_else(|| remap(surviving[0]));
        let map = PlanarMap::from_parts(self.vertices.clone(), edges, rotation, outer, &named)
            .expect("collapsed map is valid");
        (map, conn)
    }
}

fn dart_label(edges: &[Edge], d: Dart) -> String {
    match edges.get(d.edge()) {
        Some(e) => format!("{}.{}", e.name, if d.is_tail() { "t" } else { "h" }),
        None => format!("#{}", d.index()),
    }
}

/// Rotates a cyclic word of `±1` letters so that the rightmost letter is the
/// smallest by `(negative, generator)`.
pub(crate) fn canonical_rotation(letters: Vec<(usize, i64)>) -> Vec<(usize, i64)> {
    if letters.is_empty() {
        return letters;
    }
    let key = |&(g, s): &(usize, i64)| (s < 0, g);
    let (best, _) = letters.iter().enumerate().min_by_key(|(_, l)| key(l)).expect("non-empty");
    let n = letters.len();
    (0..n).map(|i| letters[(best + 1 + i) % n]).collect()
}

fn trace_orbits(pred: &[Dart]) -> (Vec<Vec<Dart>>, Vec<usize>) {
    let n = pred.len();
    let mut face_of = vec![usize::MAX; n];
    let mut orbits = Vec::new();
    for start in 0..n {
        if face_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        let mut orbit = Vec::new();
        let mut d = Dart(start as u32);
        while face_of[d.index()] == usize::MAX {
            face_of[d.index()] = id;
            orbit.push(d);
            d = pred[d.twin().index()];
        }
        orbits.push(orbit);
    }
    (orbits, face_of)
}

fn bundle_name(names: &[&str]) -> String {
    if names.len() == 1 {
        return names[0].to_string();
    }
    let split: Vec<Vec<&str>> = names.iter().map(|n| n.split('.').collect()).collect();
    let mut common = 0;
    while split.iter().all(|s| s.len() > common + 1 && s[common] == split[0][common]) {
        common += 1;
    }
    if common > 0 {
        split[0][..common].join(".")
    } else {
        names.join("+")
    }
}

/// Correspondence between edges and connectivity edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connectivity {
    pub bundles: Vec<Bundle>,
    /// Per edge: its bundle and whether it agrees with the bundle orientation.
    pub edge_bundle: Vec<(usize, bool)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bundle {
    pub name: String,
    /// Member edges with their alignment to the bundle orientation.
    pub members: Vec<(usize, bool)>,
}

/// Darts of a replaced edge at its tail and head vertex, counterclockwise.
/// The last dart of each list sees the original left (tail) or right (head)
/// face on its left.
struct Span {
    at_tail: Vec<Dart>,
    at_head: Vec<Dart>,
}

struct Expander {
    vertices: Vec<String>,
    edges: Vec<Edge>,
    rotation: Vec<Vec<Dart>>,
    fresh_faces: Vec<(String, Dart)>,
}

impl Expander {
    fn single(&mut self, name: &str, label: EdgeLabel, u: usize, v: usize) -> Span {
        let e = self.edges.len();
        self.edges.push(Edge { name: name.to_string(), tail: u, head: v, label });
        Span { at_tail: vec![Dart::tail(e)], at_head: vec![Dart::head(e)] }
    }

    fn tangle(&mut self, name: &str, t: &TangleExpr, u: usize, v: usize) -> Result<Span, MapError> {
        match t {
            TangleExpr::Rational(x) => self.rational(name, x, u, v),
            TangleExpr::Sum(a, b) => {
                let m = self.vertices.len();
                self.vertices.push(format!("{}.v", name));
                self.rotation.push(Vec::new());
                let first = self.tangle(&format!("{}.1", name), a, u, m)?;
                let second = self.tangle(&format!("{}.2", name), b, m, v)?;
                let mut mid = first.at_head;
                mid.extend(second.at_tail);
                self.rotation[m] = mid;
                Ok(Span { at_tail: first.at_tail, at_head: second.at_head })
            }
            TangleExpr::Product(a, b) => {
                let left = self.tangle(&format!("{}.1", name), a, u, v)?;
                let right = self.tangle(&format!("{}.2", name), b, u, v)?;
                let between = *right.at_tail.last().expect("non-empty span");
                self.fresh_faces.push((format!("{}.f", name), between));
                let mut at_tail = right.at_tail;
                at_tail.extend(left.at_tail);
                let mut at_head = left.at_head;
                at_head.extend(right.at_head);
                Ok(Span { at_tail, at_head })
            }
        }
    }

    fn rational(&mut self, name: &str, x: &Rational, u: usize, v: usize) -> Result<Span, MapError> {
        let too_large = || MapError::LabelTooLarge(name.to_string());
        if is_integer(x) {
            let n = x.numer().to_i64().ok_or_else(too_large)?;
            Ok(self.single(name, EdgeLabel::Integer(n), u, v))
        } else if is_unit_fraction(x) {
            let m = x.denom().to_i64().ok_or_else(too_large)?;
            let m = if x.is_negative() { -m } else { m };
            Ok(self.single(name, EdgeLabel::Inverse(m), u, v))
        } else {
            let expr = rational_tangle_expr(x).expect("non-zero fraction");
            self.tangle(name, &expr, u, v)
        }
    }

    fn parallel_units(&mut self, name: &str, m: i64, u: usize, v: usize) -> Result<Span, MapError> {
        let count = m.unsigned_abs();
        if count > 1 << 16 {
            return Err(MapError::LabelTooLarge(name.to_string()));
        }
        let sign = m.signum();
        let mut at_tail = Vec::new();
        let mut at_head = Vec::new();
        for i in 1..=count {
            let span = self.single(&format!("{}.{}", name, i), EdgeLabel::Integer(sign), u, v);
            if i > 1 {
                self.fresh_faces.push((format!("{}.f{}", name, i - 1), span.at_tail[0]));
            }
            at_tail.insert(0, span.at_tail[0]);
            at_head.push(span.at_head[0]);
        }
        Ok(Span { at_tail, at_head })
    }
}

/// Builds maps from named vertices, edges and darts (`<edge>.t`, `<edge>.h`).
#[derive(Debug, Clone, Default)]
pub struct MapBuilder {
    vertices: Vec<String>,
    edges: Vec<(String, String, String, EdgeLabel)>,
    rotations: Vec<(String, Vec<String>)>,
    outer: Option<String>,
    faces: Vec<(String, String)>,
}

impl MapBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vertex(&mut self, name: &str) -> &mut Self {
        self.vertices.push(name.to_string());
        self
    }

    pub fn edge(&mut self, name: &str, tail: &str, head: &str, label: EdgeLabel) -> &mut Self {
        self.edges.push((name.to_string(), tail.to_string(), head.to_string(), label));
        self
    }

    pub fn tangle_edge(&mut self, name: &str, tail: &str, head: &str, t: TangleExpr) -> &mut Self {
        self.edge(name, tail, head, EdgeLabel::Tangle(t))
    }

    pub fn rotation(&mut self, vertex: &str, darts: &[&str]) -> &mut Self {
        self.rotations.push((vertex.to_string(), darts.iter().map(|d| d.to_string()).collect()));
        self
    }

    pub fn outer(&mut self, dart: &str) -> &mut Self {
        self.outer = Some(dart.to_string());
        self
    }

    pub fn face(&mut self, name: &str, dart: &str) -> &mut Self {
        self.faces.push((name.to_string(), dart.to_string()));
        self
    }

    pub fn build(&self) -> Result<PlanarMap, MapError> {
        if self.edges.is_empty() {
            return Err(MapError::NoEdges);
        }
        let mut vid = BTreeMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if vid.insert(v.as_str(), i).is_some() {
                return Err(MapError::DuplicateVertex(v.clone()));
            }
        }
        let lookup = |v: &str| vid.get(v).copied().ok_or_else(|| MapError::UnknownVertex(v.to_string()));
        let mut edges = Vec::new();
        let mut eid = BTreeMap::new();
        for (name, t, h, label) in &self.edges {
            if eid.insert(name.as_str(), edges.len()).is_some() {
                return Err(MapError::DuplicateEdge(name.clone()));
            }
            edges.push(Edge { name: name.clone(), tail: lookup(t)?, head: lookup(h)?, label: label.clone() });
        }
        let dart = |s: &str| -> Result<Dart, MapError> {
            let unknown = || MapError::UnknownDart(s.to_string());
            let (name, end) = s.rsplit_once('.').ok_or_else(unknown)?;
            let e = *eid.get(name).ok_or_else(unknown)?;
            match end {
                "t" => Ok(Dart::tail(e)),
                "h" => Ok(Dart::head(e)),
                _ => Err(unknown()),
            }
        };
        let mut rotation: Vec<Option<Vec<Dart>>> = vec![None; self.vertices.len()];
        for (v, darts) in &self.rotations {
            let i = lookup(v)?;
            if rotation[i].is_some() {
                return Err(MapError::RepeatedRotation(v.clone()));
            }
            rotation[i] = Some(darts.iter().map(|d| dart(d)).collect::<Result<_, _>>()?);
        }
        let rotation = rotation.into_iter().map(Option::unwrap_or_default).collect();
        let outer = dart(self.outer.as_deref().ok_or(MapError::NoOuter)?)?;
        let named = self.faces.iter().map(|(n, d)| Ok((n.clone(), dart(d)?))).collect::<Result<Vec<_>, MapError>>()?;
        PlanarMap::from_parts(self.vertices.clone(), edges, rotation, outer, &named)
    }
}

/// Fraction label helper: `[n]` as a tangle edge label.
pub fn integer_tangle(n: i64) -> EdgeLabel {
    EdgeLabel::Tangle(TangleExpr::Rational(Rational::from_integer(BigInt::from(n))))
}

/// `[1/m]` as a tangle edge label.
pub fn inverse_tangle(m: i64) -> EdgeLabel {
    EdgeLabel::Tangle(TangleExpr::Rational(Rational::new(BigInt::one(), BigInt::from(m))))
}
