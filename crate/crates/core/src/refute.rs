//! Bounded refutation of left-orderability.
//!
//! Words of length at most the radius are grouped into classes by rewriting
//! with relators inside a length bound. A left ordering would give every
//! non-trivial class a sign, opposite for inverses and closed under products
//! of positives. Those constraints are solved exhaustively; if none is
//! satisfiable the presented group is not left-orderable.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

use crate::certify::{Certificate, Method, Verdict};
use crate::presentation::{Presentation, Word};

/// Letter `g + 1` for generator `g`, `-(g + 1)` for its inverse.
pub type Letter = i32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RefuteError {
    #[error("radius must be at least 1")]
    Radius,
    #[error("word budget of {0} exceeded")]
    Budget(usize),
    #[error("relators must be non-empty words")]
    EmptyRelator,
}

pub const DEFAULT_MAX_WORDS: usize = 200_000;

fn free_reduce(word: impl IntoIterator<Item = Letter>) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::new();
    for x in word {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

fn invert(word: &[Letter]) -> Vec<Letter> {
    word.iter().rev().map(|x| -x).collect()
}

fn to_letters(w: &Word) -> Vec<Letter> {
    w.expand().into_iter().map(|(g, e)| if e > 0 { g as Letter + 1 } else { -(g as Letter + 1) }).collect()
}

/// Text of a letter word over the given names.
pub fn word_text(word: &[Letter], names: &[String]) -> String {
    Word::new(word.iter().map(|&x| ((x.unsigned_abs() - 1) as usize, x.signum() as i64))).format(names)
}

/// Classes of short words with a partial multiplication table.
#[derive(Debug, Clone)]
pub struct GroupBall {
    pub radius: usize,
    /// Bound on intermediate word length while rewriting.
    pub bound: usize,
    /// Freely reduced words of length at most the radius, in shortlex order.
    pub words: Vec<Vec<Letter>>,
    /// Class of each ball word.
    pub class_of: Vec<usize>,
    /// Representative (first ball word) of each class.
    pub representatives: Vec<usize>,
    pub identity: usize,
    pub inverse: Vec<usize>,
    /// `(a, b, c)` with `a * b = c`, for non-identity `a`, `b`.
    pub products: BTreeSet<(usize, usize, usize)>,
    nodes: Vec<Vec<Letter>>,
    parent: Vec<Option<usize>>,
    node_of_word: Vec<usize>,
    visited_words: usize,
}

impl GroupBall {
    pub fn class_count(&self) -> usize {
        self.representatives.len()
    }

    /// Explored words, including intermediates beyond the radius.
    pub fn explored(&self) -> usize {
        self.visited_words
    }

    pub fn class_of_word(&self, word: &[Letter]) -> Option<usize> {
        self.words.iter().position(|w| w == word).map(|i| self.class_of[i])
    }

    /// Rewriting chain from a ball word to the representative of its class.
    /// Consecutive words differ by replacing a subword `u` with `v^-1` for a
    /// cyclic conjugate `uv` of a relator or its inverse, followed by free
    /// reduction.
    pub fn witness(&self, ball_word: usize) -> Vec<Vec<Letter>> {
        let mut chain = Vec::new();
        let mut node = Some(self.node_of_word[ball_word]);
        while let Some(n) = node {
            chain.push(self.nodes[n].clone());
            node = self.parent[n];
        }
        chain
    }
}

/// Relators, their inverses, and all cyclic rotations of both.
fn relator_variants(p: &Presentation) -> Result<Vec<Vec<Letter>>, RefuteError> {
    let mut out = BTreeSet::new();
    for w in p.words() {
        let r = free_reduce(to_letters(w));
        if r.is_empty() {
            if w.is_empty() {
                return Err(RefuteError::EmptyRelator);
            }
            continue;
        }
        for base in [r.clone(), invert(&r)] {
            for k in 0..base.len() {
                let mut rot = base[k..].to_vec();
                rot.extend_from_slice(&base[..k]);
                out.insert(rot);
            }
        }
    }
    Ok(out.into_iter().collect())
}

fn neighbours(word: &[Letter], variants: &[Vec<Letter>], bound: usize, out: &mut Vec<Vec<Letter>>) {
    for r in variants {
        for k in 0..=r.len() {
            let (u, v) = r.split_at(k);
            let replacement = invert(v);
            if u.len() > word.len() {
                continue;
            }
            for i in 0..=word.len() - u.len() {
                if &word[i..i + u.len()] != u {
                    continue;
                }
                let next =
                    free_reduce(word[..i].iter().chain(replacement.iter()).chain(word[i + u.len()..].iter()).copied());
                if next.len() <= bound {
                    out.push(next);
                }
            }
        }
    }
}

fn ball_words(generators: usize, radius: usize) -> Vec<Vec<Letter>> {
    let letters: Vec<Letter> = (1..=generators as Letter).flat_map(|g| [g, -g]).collect();
    let mut words = vec![Vec::new()];
    let mut layer = vec![Vec::new()];
    for _ in 0..radius {
        let mut next = Vec::new();
        for w in &layer {
            for &x in &letters {
                if w.last() != Some(&-x) {
                    let mut v: Vec<Letter> = w.clone();
                    v.push(x);
                    next.push(v);
                }
            }
        }
        words.extend(next.iter().cloned());
        layer = next;
    }
    words
}

pub fn build_ball(p: &Presentation, radius: usize, max_words: usize) -> Result<GroupBall, RefuteError> {
    if radius == 0 {
        return Err(RefuteError::Radius);
    }
    let variants = relator_variants(p)?;
    let bound = radius + variants.iter().map(Vec::len).max().unwrap_or(0);
    let words = ball_words(p.generators.len(), radius);
    if words.len() > max_words {
        return Err(RefuteError::Budget(max_words));
    }
    let mut node_index: BTreeMap<Vec<Letter>, usize> = BTreeMap::new();
    let mut nodes: Vec<Vec<Letter>> = Vec::new();
    let mut parent: Vec<Option<usize>> = Vec::new();
    let mut component: Vec<usize> = Vec::new();
    let mut class_of = vec![usize::MAX; words.len()];
    let mut representatives = Vec::new();
    let mut scratch = Vec::new();
    let ball_index: BTreeMap<&Vec<Letter>, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();

    for start in 0..words.len() {
        if node_index.contains_key(&words[start]) {
            continue;
        }
        let class = representatives.len();
        representatives.push(start);
        let root = nodes.len();
        node_index.insert(words[start].clone(), root);
        nodes.push(words[start].clone());
        parent.push(None);
        component.push(class);
        let mut queue = VecDeque::from([root]);
        while let Some(n) = queue.pop_front() {
            scratch.clear();
            neighbours(&nodes[n], &variants, bound, &mut scratch);
            for next in scratch.drain(..) {
                if node_index.contains_key(&next) {
                    continue;
                }
                if nodes.len() >= max_words {
                    return Err(RefuteError::Budget(max_words));
                }
                let id = nodes.len();
                node_index.insert(next.clone(), id);
                nodes.push(next);
                parent.push(Some(n));
                component.push(class);
                queue.push_back(id);
            }
        }
    }
    let node_of_word: Vec<usize> = words.iter().map(|w| node_index[w]).collect();
    for (i, &n) in node_of_word.iter().enumerate() {
        class_of[i] = component[n];
    }
    let identity = class_of[0];
    let inverse: Vec<usize> = representatives.iter().map(|&w| class_of[ball_index[&invert(&words[w])]]).collect();
    let mut products = BTreeSet::new();
    for (i, a) in words.iter().enumerate() {
        if class_of[i] == identity {
            continue;
        }
        for (j, b) in words.iter().enumerate() {
            if class_of[j] == identity {
                continue;
            }
            let ab = free_reduce(a.iter().chain(b.iter()).copied());
            if let Some(&n) = node_index.get(&ab) {
                products.insert((class_of[i], class_of[j], component[n]));
            }
        }
    }
    Ok(GroupBall {
        radius,
        bound,
        words,
        class_of,
        representatives,
        identity,
        inverse,
        products,
        visited_words: nodes.len(),
        nodes,
        parent,
        node_of_word,
    })
}

/// Literal: variable index with polarity.
type Lit = (usize, bool);

struct Solver {
    clauses: Vec<Vec<Lit>>,
    nodes: u64,
    conflicts: u64,
}

impl Solver {
    fn propagate(&mut self, assign: &mut [Option<bool>], trail: &mut Vec<usize>) -> bool {
        loop {
            let mut changed = false;
            for clause in &self.clauses {
                let mut open = None;
                let mut open_count = 0;
                let mut satisfied = false;
                for &(v, pol) in clause {
                    match assign[v] {
                        Some(x) if x == pol => {
                            satisfied = true;
                            break;
                        }
                        Some(_) => {}
                        None => {
                            open_count += 1;
                            open = Some((v, pol));
                        }
                    }
                }
                if satisfied {
                    continue;
                }
                match (open_count, open) {
                    (0, _) => {
                        self.conflicts += 1;
                        return false;
                    }
                    (1, Some((v, pol))) => {
                        assign[v] = Some(pol);
                        trail.push(v);
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn solve(&mut self, assign: &mut Vec<Option<bool>>) -> bool {
        self.nodes += 1;
        let mut trail = Vec::new();
        if !self.propagate(assign, &mut trail) {
            for v in trail {
                assign[v] = None;
            }
            return false;
        }
        let Some(v) = assign.iter().position(Option::is_none) else {
            return true;
        };
        for value in [true, false] {
            assign[v] = Some(value);
            if self.solve(assign) {
                return true;
            }
            assign[v] = None;
        }
        for v in trail {
            assign[v] = None;
        }
        false
    }
}

/// Outcome of the sign search on a ball.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Refutation {
    pub verdict: Verdict,
    pub reason: String,
    pub classes: usize,
    pub explored: usize,
    pub constraints: usize,
    pub nodes: u64,
    pub conflicts: u64,
    /// For inconclusive results: a sign for every non-trivial class
    /// representative.
    pub signs: Vec<(String, bool)>,
}

impl Refutation {
    pub fn certificate(&self, radius: usize) -> Certificate {
        let assignment = if self.verdict == Verdict::NotLeftOrderable {
            vec![("radius".to_string(), radius.to_string())]
        } else {
            self.signs.iter().map(|(w, s)| (w.replace(' ', "*"), if *s { "+" } else { "-" }.to_string())).collect()
        };
        Certificate {
            verdict: self.verdict,
            method: if self.verdict == Verdict::NotLeftOrderable { Some(Method::ConeSearch) } else { None },
            assignment,
            evidence: vec![
                format!("radius {}: {} classes from {} explored words", radius, self.classes, self.explored),
                format!("{} product constraints", self.constraints),
                format!("search: {} nodes, {} conflicts", self.nodes, self.conflicts),
                self.reason.clone(),
            ],
        }
    }
}

/// Searches for a sign assignment on the ball of the given radius.
pub fn refute(p: &Presentation, radius: usize, max_words: usize) -> Result<Refutation, RefuteError> {
    let ball = build_ball(p, radius, max_words)?;
    let names = p.names();
    let mut result = Refutation {
        verdict: Verdict::NotLeftOrderable,
        reason: String::new(),
        classes: ball.class_count(),
        explored: ball.explored(),
        constraints: ball.products.len(),
        nodes: 0,
        conflicts: 0,
        signs: Vec::new(),
    };
    let generator_classes: Vec<usize> =
        (1..=names.len() as Letter).map(|g| ball.class_of_word(&[g]).expect("generator in ball")).collect();
    if generator_classes.iter().all(|&c| c == ball.identity) {
        result.reason = "all generators are trivial".to_string();
        return Ok(result);
    }
    // one variable per pair of mutually inverse classes
    let mut var_of: Vec<Option<Lit>> = vec![None; ball.class_count()];
    let mut primaries = Vec::new();
    for c in 0..ball.class_count() {
        if c == ball.identity || var_of[c].is_some() {
            continue;
        }
        let inv = ball.inverse[c];
        if inv == c {
            let w = &ball.words[ball.representatives[c]];
            result.reason = format!("{} equals its own inverse", word_text(w, &names));
            return Ok(result);
        }
        let v = primaries.len();
        primaries.push(c);
        var_of[c] = Some((v, true));
        var_of[inv] = Some((v, false));
    }
    let lit = |c: usize| var_of[c].expect("non-identity class");
    let neg = |(v, p): Lit| (v, !p);
    let mut clauses = BTreeSet::new();
    for &(a, b, c) in &ball.products {
        let (la, lb) = (lit(a), lit(b));
        if c == ball.identity {
            clauses.insert(vec![neg(la), neg(lb)]);
            clauses.insert(vec![la, lb]);
        } else {
            let lc = lit(c);
            clauses.insert(vec![neg(la), neg(lb), lc]);
            clauses.insert(vec![la, lb, neg(lc)]);
        }
    }
    let mut solver = Solver { clauses: clauses.into_iter().collect(), nodes: 0, conflicts: 0 };
    let mut assign = vec![None; primaries.len()];
    let satisfiable = solver.solve(&mut assign);
    result.nodes = solver.nodes;
    result.conflicts = solver.conflicts;
    if satisfiable {
        result.verdict = Verdict::Inconclusive;
        result.reason = "a consistent sign assignment exists".to_string();
        result.signs = primaries
            .iter()
            .zip(&assign)
            .map(|(&c, s)| (word_text(&ball.words[ball.representatives[c]], &names), s.unwrap_or(true)))
            .collect();
    } else {
        result.reason = "no consistent sign assignment".to_string();
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(text: &str) -> Presentation {
        Presentation::parse(text).unwrap()
    }

    fn cyclic(n: usize) -> Presentation {
        pres(&format!("gen edge a\nrel a^{}\n", n))
    }

    #[test]
    fn ball_examples() {
        let b = build_ball(&cyclic(3), 2, DEFAULT_MAX_WORDS).unwrap();
        assert_eq!(b.class_count(), 3);
        assert_eq!(b.class_of_word(&[1, 1]), b.class_of_word(&[-1]));
        let b = build_ball(&pres("gen edge a\ngen edge b\n"), 1, DEFAULT_MAX_WORDS).unwrap();
        assert_eq!(b.class_count(), 5);
        let b = build_ball(&cyclic(2), 1, DEFAULT_MAX_WORDS).unwrap();
        assert_eq!(b.class_count(), 2);
        assert_eq!(b.inverse[b.class_of_word(&[1]).unwrap()], b.class_of_word(&[1]).unwrap());
    }

    #[test]
    fn witnesses_are_rewriting_chains() {
        let p = pres("gen edge a\ngen edge b\nrel a^3\nrel a b a^-1 b^-1\n");
        let b = build_ball(&p, 2, DEFAULT_MAX_WORDS).unwrap();
        let variants = relator_variants(&p).unwrap();
        for i in 0..b.words.len() {
            let chain = b.witness(i);
            assert_eq!(chain[0], b.words[i]);
            assert_eq!(chain.last().unwrap(), &b.words[b.representatives[b.class_of[i]]]);
            for step in chain.windows(2) {
                let mut next = Vec::new();
                neighbours(&step[0], &variants, b.bound, &mut next);
                assert!(next.contains(&step[1]));
            }
        }
    }

    #[test]
    fn torsion_refuted() {
        assert_eq!(refute(&cyclic(2), 1, DEFAULT_MAX_WORDS).unwrap().verdict, Verdict::NotLeftOrderable);
        assert_eq!(refute(&cyclic(3), 2, DEFAULT_MAX_WORDS).unwrap().verdict, Verdict::NotLeftOrderable);
        for radius in 2..5 {
            assert_eq!(refute(&cyclic(3), radius, DEFAULT_MAX_WORDS).unwrap().verdict, Verdict::NotLeftOrderable);
        }
    }

    #[test]
    fn free_groups_not_refuted() {
        for radius in 1..4 {
            let r = refute(&pres("gen edge a\ngen edge b\n"), radius, DEFAULT_MAX_WORDS).unwrap();
            assert_eq!(r.verdict, Verdict::Inconclusive);
        }
    }

    #[test]
    fn trivial_group_refuted() {
        let r = refute(&pres("gen edge a\nrel a\n"), 1, DEFAULT_MAX_WORDS).unwrap();
        assert_eq!(r.verdict, Verdict::NotLeftOrderable);
        assert_eq!(r.reason, "all generators are trivial");
    }

    #[test]
    fn budget_and_radius_errors() {
        assert_eq!(refute(&cyclic(2), 0, DEFAULT_MAX_WORDS).unwrap_err(), RefuteError::Radius);
        assert_eq!(refute(&cyclic(5), 3, 5).unwrap_err(), RefuteError::Budget(5));
    }
}
