//! Presentations of a map's group at three levels of detail, their text
//! form and abelian invariants.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::exact::Rational;
use crate::map::{canonical_rotation, Connectivity, EdgeLabel, MapError, PlanarMap};
use crate::range::{range_of_expr, Range};
use crate::snf::{cokernel_order, invariant_factors, Matrix};
use crate::tangle::TangleExpr;

/// Freely reduced word in syllable form over generator indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<(usize, i64)>);

impl Word {
    pub fn new(letters: impl IntoIterator<Item = (usize, i64)>) -> Word {
        let mut out: Vec<(usize, i64)> = Vec::new();
        for (g, e) in letters {
            if e == 0 {
                continue;
            }
            match out.last_mut() {
                Some((h, f)) if *h == g => {
                    *f += e;
                    if *f == 0 {
                        out.pop();
                    }
                }
                _ => out.push((g, e)),
            }
        }
        Word(out)
    }

    pub fn identity() -> Word {
        Word(Vec::new())
    }

    pub fn generator(g: usize) -> Word {
        Word(alloc::vec![(g, 1)])
    }

    pub fn letters(&self) -> &[(usize, i64)] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Length counted in unit letters.
    pub fn length(&self) -> usize {
        self.0.iter().map(|(_, e)| e.unsigned_abs() as usize).sum()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut out = Word::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.concat(&base);
        }
        out
    }

    /// Unit letters `(g, ±1)`.
    pub fn expand(&self) -> Vec<(usize, i64)> {
        self.0.iter().flat_map(|&(g, e)| core::iter::repeat_n((g, e.signum()), e.unsigned_abs() as usize)).collect()
    }

    pub fn cyclically_reduced(&self) -> Word {
        let mut w = self.0.clone();
        while w.len() >= 2 && w[0].0 == w[w.len() - 1].0 {
            let (_, last) = w.pop().expect("non-empty");
            w[0].1 += last;
            if w[0].1 == 0 {
                w.remove(0);
            }
        }
        Word(w)
    }

    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.0.iter().filter(|(h, _)| *h == g).map(|(_, e)| e).sum()
    }

    /// Space-separated `name^exp`, exponent omitted when 1; `1` when empty.
    pub fn format(&self, names: &[String]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(g, e)| if e == 1 { names[g].clone() } else { format!("{}^{}", names[g], e) })
            .collect();
        parts.join(" ")
    }

    /// Parses the text form against a generator list.
    pub fn parse(text: &str, names: &[String]) -> Result<Word, PresentationError> {
        let text = text.trim();
        if text == "1" {
            return Ok(Word::identity());
        }
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            let (name, exp) = match token.split_once('^') {
                Some((n, e)) => (n, e.parse::<i64>().map_err(|_| PresentationError::Syntax(token.to_string()))?),
                None => (token, 1),
            };
            let g = names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| PresentationError::UnknownGenerator(name.to_string()))?;
            letters.push((g, exp));
        }
        Ok(Word::new(letters))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GenKind {
    Edge,
    Region,
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GenKind::Edge => "edge",
            GenKind::Region => "region",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Provenance {
    LocalEdge,
    ReducedLocalEdge,
    GlobalCycle,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("generator name `{0}` used twice")]
    DuplicateName(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("cannot parse `{0}`")]
    Syntax(String),
}

/// Finite presentation with named edge and region generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<(String, GenKind)>,
    pub relators: Vec<(Word, Provenance)>,
}

impl Presentation {
    pub fn names(&self) -> Vec<String> {
        self.generators.iter().map(|(n, _)| n.clone()).collect()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.relators.iter().map(|(w, _)| w)
    }

    /// Text form: `gen`, then `rel` (local) and `cycle` (global) lines.
    pub fn to_text(&self) -> String {
        let names = self.names();
        let mut out = String::new();
        for (name, kind) in &self.generators {
            out.push_str(&format!("gen {} {}\n", kind, name));
        }
        for (w, prov) in &self.relators {
            let tag = if *prov == Provenance::GlobalCycle { "cycle" } else { "rel" };
            out.push_str(&format!("{} {}\n", tag, w.format(&names)));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Presentation, PresentationError> {
        let mut generators = Vec::new();
        let mut pending = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            match head {
                "gen" => {
                    let mut parts = rest.split_whitespace();
                    let kind = match parts.next() {
                        Some("edge") | Some("tangle") => GenKind::Edge,
                        Some("region") => GenKind::Region,
                        _ => return Err(PresentationError::Syntax(line.to_string())),
                    };
                    let name = parts.next().ok_or_else(|| PresentationError::Syntax(line.to_string()))?;
                    if parts.next().is_some() || name.contains('^') {
                        return Err(PresentationError::Syntax(line.to_string()));
                    }
                    generators.push((name.to_string(), kind));
                }
                "rel" => pending.push((rest.to_string(), Provenance::LocalEdge)),
                "cycle" => pending.push((rest.to_string(), Provenance::GlobalCycle)),
                _ => return Err(PresentationError::Syntax(line.to_string())),
            }
        }
        check_unique(generators.iter().map(|(n, _)| n.as_str()))?;
        let names: Vec<String> = generators.iter().map(|(n, _)| n.clone()).collect();
        let relators = pending
            .into_iter()
            .map(|(w, p)| Ok((Word::parse(&w, &names)?, p)))
            .collect::<Result<_, PresentationError>>()?;
        Ok(Presentation { generators, relators })
    }

    /// Parses a presentation file, dropping `range` lines. Returns the
    /// presentation and the number of lines dropped.
    pub fn parse_lenient(text: &str) -> Result<(Presentation, usize), PresentationError> {
        let mut dropped = 0;
        let kept: Vec<&str> = text
            .lines()
            .filter(|l| {
                let range = l.trim_start().strip_prefix("range").is_some_and(|r| r.starts_with(char::is_whitespace));
                dropped += range as usize;
                !range
            })
            .collect();
        Ok((Presentation::parse(&kept.join("\n"))?, dropped))
    }
}

fn check_unique<'a>(names: impl Iterator<Item = &'a str>) -> Result<(), PresentationError> {
    let mut seen = BTreeSet::new();
    for n in names {
        if !seen.insert(n) {
            return Err(PresentationError::DuplicateName(n.to_string()));
        }
    }
    Ok(())
}

/// Region generator index per face; `None` for the outer face.
fn region_indices(m: &PlanarMap, offset: usize) -> Vec<Option<usize>> {
    let mut next = offset;
    m.faces()
        .iter()
        .map(|f| {
            if f.id == m.outer() {
                None
            } else {
                next += 1;
                Some(next - 1)
            }
        })
        .collect()
}

/// `R_l^-1 R_r` with the outer face read as the identity.
fn region_step(l: Option<usize>, r: Option<usize>) -> Word {
    Word::new(l.map(|g| (g, -1)).into_iter().chain(r.map(|g| (g, 1))))
}

/// Bounded-face boundary words over connectivity letters.
fn cycle_relators(m: &PlanarMap, conn: &Connectivity) -> Vec<Word> {
    let mut out = Vec::new();
    for f in m.faces() {
        if f.id == m.outer() {
            continue;
        }
        let letters: Vec<(usize, i64)> = m
            .boundary_word(f.id)
            .into_iter()
            .map(|(e, s)| {
                let (b, aligned) = conn.edge_bundle[e];
                (b, if aligned { s } else { -s })
            })
            .collect();
        let reduced = Word::new(letters).cyclically_reduced();
        if !reduced.is_empty() {
            out.push(Word::new(canonical_rotation(reduced.expand())));
        }
    }
    out
}

fn generator_list(m: &PlanarMap, conn: &Connectivity) -> Result<Vec<(String, GenKind)>, PresentationError> {
    let mut gens: Vec<(String, GenKind)> = conn.bundles.iter().map(|b| (b.name.clone(), GenKind::Edge)).collect();
    gens.extend(m.faces().iter().filter(|f| f.id != m.outer()).map(|f| (f.name.clone(), GenKind::Region)));
    check_unique(gens.iter().map(|(n, _)| n.as_str()))?;
    Ok(gens)
}

/// Presentation from the full decomposition graph: one generator per
/// connectivity edge and per bounded face, a local relator
/// `W ((R_l^-1 R_r)^a)^-1` per edge and a boundary relator per bounded face.
pub fn brunner(m: &PlanarMap) -> Result<Presentation, PresentationError> {
    let full = m.expand_to_reduced()?.expand_to_full()?;
    local_presentation(&full, Provenance::LocalEdge)
}

/// Presentation from the reduced decomposition graph: a `[±1/m]` edge
/// contributes `W^m ((R_l^-1 R_r)^±1)^-1` and no intermediate regions.
pub fn reduced_brunner(m: &PlanarMap) -> Result<Presentation, PresentationError> {
    let reduced = m.expand_to_reduced()?;
    local_presentation(&reduced, Provenance::ReducedLocalEdge)
}

fn local_presentation(m: &PlanarMap, prov: Provenance) -> Result<Presentation, PresentationError> {
    let conn = m.bundles();
    let generators = generator_list(m, &conn)?;
    let regions = region_indices(m, conn.bundles.len());
    let mut relators = Vec::new();
    for (e, edge) in m.edges().iter().enumerate() {
        let (b, aligned) = conn.edge_bundle[e];
        let (mut l, mut r) = m.adjacent_regions(e);
        if !aligned {
            core::mem::swap(&mut l, &mut r);
        }
        let step = region_step(regions[l], regions[r]);
        let (power, twist) = match edge.label {
            EdgeLabel::Integer(a) => (1, a),
            EdgeLabel::Inverse(k) => (k.abs(), k.signum()),
            _ => return Err(MapError::NotReduced(edge.name.clone()).into()),
        };
        let w = Word::new([(b, power)]).concat(&step.pow(twist).inverse());
        relators.push((w, prov));
    }
    relators.extend(cycle_relators(m, &conn).into_iter().map(|w| (w, Provenance::GlobalCycle)));
    Ok(Presentation { generators, relators })
}

/// Relator-by-generator exponent-sum matrix.
pub fn abelianize(p: &Presentation) -> Matrix {
    let n = p.generators.len();
    p.words().map(|w| (0..n).map(|g| BigInt::from(w.exponent_sum(g))).collect()).collect()
}

/// Invariant factors of the abelianization other than 1, with a 0 per free
/// summand.
pub fn h1_diagonal(p: &Presentation) -> Vec<BigInt> {
    invariant_factors(&abelianize(p), p.generators.len())
}

/// Order of the abelianization; `0` when infinite.
pub fn h1_order(p: &Presentation) -> BigInt {
    cokernel_order(&abelianize(p), p.generators.len())
}

/// Tangle generator of the coarse presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangleGenerator {
    pub name: String,
    pub expr: TangleExpr,
    pub range: Range,
    /// Region indices of `(R_l, R_r)`; `None` is the outer face.
    pub base: (Option<usize>, Option<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoarsePresentation {
    pub tangles: Vec<TangleGenerator>,
    pub regions: Vec<String>,
    /// Boundary words over tangle generator indices.
    pub cycles: Vec<Word>,
}

impl CoarsePresentation {
    pub fn tangle_names(&self) -> Vec<String> {
        self.tangles.iter().map(|t| t.name.clone()).collect()
    }

    /// `R_l^-1 R_r` written out without reduction, `1` when both are outer.
    pub fn base_text(&self, t: &TangleGenerator) -> String {
        let mut parts = Vec::new();
        if let Some(l) = t.base.0 {
            parts.push(format!("{}^-1", self.regions[l]));
        }
        if let Some(r) = t.base.1 {
            parts.push(self.regions[r].clone());
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for t in &self.tangles {
            out.push_str(&format!("gen tangle {}\n", t.name));
        }
        for r in &self.regions {
            out.push_str(&format!("gen region {}\n", r));
        }
        for t in &self.tangles {
            out.push_str(&format!("range {} in {} base {}\n", t.name, t.range, self.base_text(t)));
        }
        let names = self.tangle_names();
        for w in &self.cycles {
            out.push_str(&format!("cycle {}\n", w.format(&names)));
        }
        out
    }
}

/// Label of a coarse edge as a tangle expression.
pub fn label_expr(label: &EdgeLabel) -> Option<TangleExpr> {
    match label {
        EdgeLabel::Tangle(t) => Some(t.clone()),
        EdgeLabel::Integer(n) => Some(TangleExpr::Rational(Rational::from_integer(BigInt::from(*n)))),
        EdgeLabel::Inverse(m) => Some(TangleExpr::Rational(Rational::new(BigInt::from(1), BigInt::from(*m)))),
        EdgeLabel::Plain => None,
    }
}

/// Coarse presentation: one tangle generator per edge of the map with the
/// range of its tangle and base `R_l^-1 R_r`, region generators for bounded
/// faces, and boundary words as cycle relators.
pub fn coarse_brunner(m: &PlanarMap, refine: bool) -> Result<CoarsePresentation, PresentationError> {
    let regions_of = region_indices(m, 0);
    let regions: Vec<String> = m.faces().iter().filter(|f| f.id != m.outer()).map(|f| f.name.clone()).collect();
    let mut tangles = Vec::new();
    for (e, edge) in m.edges().iter().enumerate() {
        let expr = label_expr(&edge.label).ok_or_else(|| MapError::NotReduced(edge.name.clone()))?;
        let (l, r) = m.adjacent_regions(e);
        tangles.push(TangleGenerator {
            name: edge.name.clone(),
            range: range_of_expr(&expr, refine),
            expr,
            base: (regions_of[l], regions_of[r]),
        });
    }
    check_unique(tangles.iter().map(|t| t.name.as_str()).chain(regions.iter().map(|r| r.as_str())))?;
    let cycles = m
        .faces()
        .iter()
        .filter(|f| f.id != m.outer())
        .map(|f| Word::new(m.boundary_word(f.id)))
        .filter(|w| !w.is_empty())
        .collect();
    Ok(CoarsePresentation { tangles, regions, cycles })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::tests::k4;
    use crate::map::{integer_tangle, MapBuilder};
    use alloc::vec;
    use alloc::vec::Vec;

    fn closure(label: EdgeLabel) -> PlanarMap {
        let mut m = MapBuilder::new();
        m.vertex("a").vertex("b").edge("W", "a", "b", label);
        m.rotation("a", &["W.t"]).rotation("b", &["W.h"]).outer("W.t");
        m.build().unwrap()
    }

    fn lines(text: &str) -> Vec<&str> {
        text.lines().collect()
    }

    #[test]
    fn word_reduction() {
        assert_eq!(Word::new([(0, 1), (1, 2), (1, -2), (0, 1)]).letters(), &[(0, 2)]);
        assert_eq!(Word::new([(0, 1), (1, 1), (0, -1)]).cyclically_reduced().letters(), &[(1, 1)]);
        assert_eq!(Word::new([(0, 1), (1, -1)]).pow(-2).letters(), &[(1, 1), (0, -1), (1, 1), (0, -1)]);
        let names = vec!["a".to_string(), "b".to_string()];
        let w = Word::parse("a^2 b^-1 a", &names).unwrap();
        assert_eq!(w.format(&names), "a^2 b^-1 a");
        assert_eq!(Word::identity().format(&names), "1");
    }

    #[test]
    fn k4_relators() {
        let labels = [2, 2, -1, 2, -1, -1].map(EdgeLabel::Integer);
        let p = brunner(&k4(labels.clone())).unwrap();
        let expected = [
            "gen edge W1",
            "gen edge W2",
            "gen edge W3",
            "gen edge W4",
            "gen edge W5",
            "gen edge W6",
            "gen region A",
            "gen region B",
            "gen region C",
            "rel W1 A^-2",
            "rel W2 B^-2",
            "rel W3 C^-1",
            "rel W4 A^-1 B A^-1 B",
            "rel W5 B^-1 C",
            "rel W6 C^-1 A",
            "cycle W6 W4 W1",
            "cycle W4^-1 W5^-1 W2",
            "cycle W6^-1 W3^-1 W5",
        ];
        assert_eq!(lines(&p.to_text()), expected);
        assert_eq!(reduced_brunner(&k4(labels)).unwrap().to_text(), p.to_text());
        assert_eq!(Presentation::parse(&p.to_text()).unwrap().to_text(), p.to_text());
    }

    #[test]
    fn theta_of_three_unit_edges() {
        let p = brunner(&closure(EdgeLabel::Inverse(3))).unwrap();
        let expected =
            ["gen edge W", "gen region W.f1", "gen region W.f2", "rel W W.f1^-1", "rel W W.f2^-1 W.f1", "rel W W.f2"];
        assert_eq!(lines(&p.to_text()), expected);
        assert_eq!(h1_order(&p), BigInt::from(3));
        let r = reduced_brunner(&closure(EdgeLabel::Inverse(3))).unwrap();
        assert_eq!(lines(&r.to_text()), ["gen edge W", "rel W^3"]);
        assert_eq!(h1_order(&r), BigInt::from(3));
        assert_eq!(h1_diagonal(&r), [BigInt::from(3)]);
    }

    #[test]
    fn single_integer_edge_is_trivial() {
        let p = brunner(&closure(EdgeLabel::Integer(5))).unwrap();
        assert_eq!(lines(&p.to_text()), ["gen edge W", "rel W"]);
        assert_eq!(h1_order(&p), BigInt::from(1));
    }

    #[test]
    fn abelianize_examples() {
        let p = Presentation::parse("gen edge a\nrel a^3\n").unwrap();
        assert_eq!(abelianize(&p), vec![vec![BigInt::from(3)]]);
        assert_eq!(h1_order(&p), BigInt::from(3));
        let free = Presentation::parse("gen edge a\n").unwrap();
        assert!(abelianize(&free).is_empty());
        assert_eq!(h1_order(&free), BigInt::from(0));
    }

    #[test]
    fn parse_errors() {
        assert_eq!(Presentation::parse("gen edge a\nrel b\n"), Err(PresentationError::UnknownGenerator("b".into())));
        assert!(matches!(Presentation::parse("gen edge a\ngen region a\n"), Err(PresentationError::DuplicateName(_))));
        assert!(matches!(Presentation::parse("range a in [[0, 1]] base 1\n"), Err(PresentationError::Syntax(_))));
    }

    #[test]
    fn k4_coarse_all_positive() {
        let m = k4(core::array::from_fn(|_| integer_tangle(1)));
        let c = coarse_brunner(&m, false).unwrap();
        let text = c.to_text();
        let got = lines(&text);
        assert_eq!(got[9], "range W1 in [[1, 1]] base A");
        assert_eq!(got[11], "range W3 in [[1, 1]] base C^-1");
        assert_eq!(got[12], "range W4 in [[1, 1]] base B^-1 A");
        assert_eq!(&got[15..], ["cycle W6 W4 W1", "cycle W4^-1 W5^-1 W2", "cycle W6^-1 W3^-1 W5"]);
    }

    #[test]
    fn lenient_parse_drops_ranges() {
        let m = k4(core::array::from_fn(|_| integer_tangle(1)));
        let (p, dropped) = Presentation::parse_lenient(&coarse_brunner(&m, false).unwrap().to_text()).unwrap();
        assert_eq!(dropped, 6);
        assert_eq!(p.generators.len(), 9);
        assert_eq!(p.relators.len(), 3);
    }

    #[test]
    fn degenerate_coarse_base() {
        let label = EdgeLabel::Tangle("Q(2/5)".parse().unwrap());
        let c = coarse_brunner(&closure(label), false).unwrap();
        assert_eq!(lines(&c.to_text()), ["gen tangle W", "range W in [[2/5, 2/5]] base 1"]);
    }
}
