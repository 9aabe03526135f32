//! Non-left-orderability certificates from coarse presentations: the
//! uniform-sign criterion and two structural templates with range
//! conditions.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

use crate::exact::{integer, Rational};
use crate::presentation::{CoarsePresentation, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    NotLeftOrderable,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::NotLeftOrderable => "not-left-orderable",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    UniformSign,
    Theta1,
    Theta2,
    Pentagon,
    ConeSearch,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::UniformSign => "uniform-sign",
            Method::Theta1 => "theta-1",
            Method::Theta2 => "theta-2",
            Method::Pentagon => "pentagon",
            Method::ConeSearch => "cone-search",
        }
    }

    fn parse(s: &str) -> Option<Method> {
        [Method::UniformSign, Method::Theta1, Method::Theta2, Method::Pentagon, Method::ConeSearch]
            .into_iter()
            .find(|m| m.as_str() == s)
    }
}

/// Verdict with the data needed to check it again.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub verdict: Verdict,
    pub method: Option<Method>,
    /// `slot=generator` pairs; a trailing `'` marks a flipped edge. For the
    /// uniform-sign method the single pair is `sign=nonnegative` or
    /// `sign=nonpositive`.
    pub assignment: Vec<(String, String)>,
    pub evidence: Vec<String>,
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::NotLeftOrderable
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("verdict: {}\n", self.verdict);
        out.push_str(&format!("method: {}\n", self.method.map_or("none", Method::as_str)));
        let pairs: Vec<String> = self.assignment.iter().map(|(s, g)| format!("{}={}", s, g)).collect();
        out.push_str(&format!("assignment: {}\n", pairs.join(" ")));
        for e in &self.evidence {
            out.push_str(&format!("evidence: {}\n", e));
        }
        out
    }

    pub fn parse(text: &str) -> Result<Certificate, ReplayError> {
        let mut verdict = None;
        let mut method = None;
        let mut assignment = None;
        let mut evidence = Vec::new();
        for line in text.lines().filter(|l| !l.trim().is_empty()) {
            let (key, value) = line.split_once(':').ok_or_else(|| ReplayError::Malformed(line.to_string()))?;
            let value = value.trim();
            match key.trim() {
                "verdict" => {
                    verdict = Some(match value {
                        "not-left-orderable" => Verdict::NotLeftOrderable,
                        "inconclusive" => Verdict::Inconclusive,
                        _ => return Err(ReplayError::Malformed(line.to_string())),
                    })
                }
                "method" => {
                    method = Some(if value == "none" {
                        None
                    } else {
                        Some(Method::parse(value).ok_or_else(|| ReplayError::Malformed(line.to_string()))?)
                    })
                }
                "assignment" => {
                    let pairs = value
                        .split_whitespace()
                        .map(|p| {
                            p.split_once('=')
                                .map(|(s, g)| (s.to_string(), g.to_string()))
                                .ok_or_else(|| ReplayError::Malformed(p.to_string()))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    assignment = Some(pairs);
                }
                "evidence" => evidence.push(value.to_string()),
                _ => return Err(ReplayError::Malformed(line.to_string())),
            }
        }
        Ok(Certificate {
            verdict: verdict.ok_or(ReplayError::Missing("verdict"))?,
            method: method.ok_or(ReplayError::Missing("method"))?,
            assignment: assignment.ok_or(ReplayError::Missing("assignment"))?,
            evidence,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("malformed certificate line `{0}`")]
    Malformed(String),
    #[error("certificate lacks a `{0}` line")]
    Missing(&'static str),
    #[error("certificate does not hold: {0}")]
    Rejected(String),
}

/// Side condition on one template slot.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Atom {
    /// `m_i >= c`
    LowerAtLeast(usize, Rational),
    /// `M_i < 0`
    UpperNegative(usize),
    /// `A_i = Q(r)` with `r >= c`
    LeafAtLeast(usize, Rational),
    /// `A_i = Q(c)`
    LeafEquals(usize, Rational),
    /// `A_i = Q(r)` with `-1 <= r < 0`
    LeafNegativeUnitInterval(usize),
}

/// Coarse presentation shape that inputs are matched against, with its
/// numbered condition sets.
#[derive(Debug, Clone)]
pub struct Template {
    pub name: &'static str,
    pub regions: Vec<String>,
    pub tangles: Vec<String>,
    /// Per tangle slot `(R_l, R_r)` as region slots; `None` is the outer face.
    pub bases: Vec<(Option<usize>, Option<usize>)>,
    pub cycles: Vec<Word>,
    conditions: Vec<(Method, Vec<Atom>)>,
}

impl Template {
    fn new(
        name: &'static str,
        regions: &[&str],
        tangle_count: usize,
        bases: &[(&str, &str)],
        cycles: &[&str],
        conditions: Vec<(Method, Vec<Atom>)>,
    ) -> Template {
        let regions: Vec<String> = regions.iter().map(|r| r.to_string()).collect();
        let tangles: Vec<String> = (1..=tangle_count).map(|i| format!("W{}", i)).collect();
        let region = |r: &str| if r == "O" { None } else { regions.iter().position(|x| x == r) };
        let bases = bases.iter().map(|&(l, r)| (region(l), region(r))).collect();
        let cycles = cycles.iter().map(|c| Word::parse(c, &tangles).expect("template word")).collect();
        Template { name, regions, tangles, bases, cycles, conditions }
    }

    /// The six-edge graph with three bounded regions.
    pub fn theta() -> Template {
        let one = || integer(1);
        let minus_one = || integer(-1);
        let mut first = vec![Atom::LowerAtLeast(0, one()), Atom::LowerAtLeast(1, one()), Atom::LowerAtLeast(3, one())];
        for i in [2, 4, 5] {
            first.push(Atom::LowerAtLeast(i, minus_one()));
        }
        for i in [2, 4, 5] {
            first.push(Atom::UpperNegative(i));
        }
        let mut second: Vec<Atom> = (0..5).map(|i| Atom::LowerAtLeast(i, one())).collect();
        second.push(Atom::LeafNegativeUnitInterval(5));
        Template::new(
            "theta",
            &["A", "B", "C"],
            6,
            &[("O", "A"), ("O", "B"), ("C", "O"), ("B", "A"), ("B", "C"), ("C", "A")],
            &["W6 W4 W1", "W4^-1 W5^-1 W2", "W6^-1 W3^-1 W5"],
            vec![(Method::Theta1, first), (Method::Theta2, second)],
        )
    }

    /// The ten-edge graph with five bounded regions.
    pub fn pentagon() -> Template {
        let mut atoms = vec![
            Atom::LeafAtLeast(0, integer(1)),
            Atom::LeafEquals(3, integer(-1)),
            Atom::LeafEquals(9, integer(-1)),
            Atom::LowerAtLeast(1, integer(-1)),
            Atom::LowerAtLeast(2, integer(-1)),
        ];
        for i in [1, 2, 4, 5, 6, 7, 8] {
            atoms.push(Atom::UpperNegative(i));
        }
        Template::new(
            "pentagon",
            &["A", "B", "C", "D", "E"],
            10,
            &[
                ("O", "A"),
                ("B", "O"),
                ("E", "O"),
                ("A", "C"),
                ("C", "D"),
                ("D", "E"),
                ("C", "B"),
                ("D", "B"),
                ("E", "B"),
                ("A", "B"),
            ],
            &["W10^-1 W4^-1 W1", "W2^-1 W9 W8 W7 W10", "W7^-1 W5^-1 W4", "W8^-1 W6^-1 W5", "W9^-1 W3^-1 W6"],
            vec![(Method::Pentagon, atoms)],
        )
    }

    pub fn builtin() -> Vec<Template> {
        vec![Template::theta(), Template::pentagon()]
    }

    /// Coarse presentation of the template itself, with the given ranges.
    pub fn as_presentation(&self, tangles: Vec<crate::presentation::TangleGenerator>) -> CoarsePresentation {
        CoarsePresentation { tangles, regions: self.regions.clone(), cycles: self.cycles.clone() }
    }
}

/// Template slots mapped to coarse generators.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Assignment {
    /// Per tangle slot: generator index and whether the edge is flipped.
    pub tangles: Vec<(usize, bool)>,
    /// Per region slot: region index.
    pub regions: Vec<usize>,
}

/// Smallest representative of a cyclic word up to rotation and inversion.
pub fn cyclic_canonical(w: &Word) -> Vec<(usize, i64)> {
    let letters = w.expand();
    let inverse = w.inverse().expand();
    let n = letters.len();
    let mut best: Option<Vec<(usize, i64)>> = None;
    for source in [&letters, &inverse] {
        for k in 0..n {
            let rotated: Vec<(usize, i64)> = (0..n).map(|i| source[(k + i) % n]).collect();
            if best.as_ref().is_none_or(|b| rotated < *b) {
                best = Some(rotated);
            }
        }
    }
    best.unwrap_or_default()
}

fn cycle_multiset(cycles: impl Iterator<Item = Word>) -> Vec<Vec<(usize, i64)>> {
    let mut out: Vec<_> = cycles.map(|w| cyclic_canonical(&w)).collect();
    out.sort();
    out
}

fn mapped_cycles(t: &Template, a: &Assignment) -> Vec<Vec<(usize, i64)>> {
    cycle_multiset(t.cycles.iter().map(|w| {
        Word::new(w.letters().iter().map(|&(slot, e)| {
            let (g, flip) = a.tangles[slot];
            (g, if flip { -e } else { e })
        }))
    }))
}

fn oriented_base(cp: &CoarsePresentation, g: usize, flip: bool) -> (Option<usize>, Option<usize>) {
    let (l, r) = cp.tangles[g].base;
    if flip {
        (r, l)
    } else {
        (l, r)
    }
}

/// All assignments of template slots to generators (regions bijectively,
/// outer to outer, edges with optional flips) under which bases correspond
/// and the cycle relators agree up to rotation and inversion.
pub fn match_template(cp: &CoarsePresentation, t: &Template) -> Vec<Assignment> {
    let mut out = Vec::new();
    if cp.tangles.len() != t.tangles.len() || cp.regions.len() != t.regions.len() || cp.cycles.len() != t.cycles.len() {
        return out;
    }
    let target = cycle_multiset(cp.cycles.iter().cloned());
    let mut state = Search {
        cp,
        t,
        tangles: Vec::new(),
        used: vec![false; cp.tangles.len()],
        region_map: vec![None; t.regions.len()],
        region_used: vec![false; cp.regions.len()],
    };
    state.run(&target, &mut out);
    out
}

struct Search<'a> {
    cp: &'a CoarsePresentation,
    t: &'a Template,
    tangles: Vec<(usize, bool)>,
    used: Vec<bool>,
    region_map: Vec<Option<usize>>,
    region_used: Vec<bool>,
}

impl Search<'_> {
    fn run(&mut self, target: &[Vec<(usize, i64)>], out: &mut Vec<Assignment>) {
        let slot = self.tangles.len();
        if slot == self.t.tangles.len() {
            let Some(regions) = self.region_map.iter().copied().collect::<Option<Vec<usize>>>() else {
                return;
            };
            let a = Assignment { tangles: self.tangles.clone(), regions };
            if mapped_cycles(self.t, &a) == target {
                out.push(a);
            }
            return;
        }
        for g in 0..self.cp.tangles.len() {
            if self.used[g] {
                continue;
            }
            for flip in [false, true] {
                let (al, ar) = oriented_base(self.cp, g, flip);
                let (tl, tr) = self.t.bases[slot];
                let mut assigned = Vec::new();
                if self.bind(tl, al, &mut assigned) && self.bind(tr, ar, &mut assigned) {
                    self.used[g] = true;
                    self.tangles.push((g, flip));
                    self.run(target, out);
                    self.tangles.pop();
                    self.used[g] = false;
                }
                for r in assigned {
                    if let Some(x) = self.region_map[r].take() {
                        self.region_used[x] = false;
                    }
                }
            }
        }
    }

    fn bind(&mut self, slot: Option<usize>, region: Option<usize>, assigned: &mut Vec<usize>) -> bool {
        match (slot, region) {
            (None, None) => true,
            (Some(s), Some(r)) => match self.region_map[s] {
                Some(x) => x == r,
                None if self.region_used[r] => false,
                None => {
                    self.region_map[s] = Some(r);
                    self.region_used[r] = true;
                    assigned.push(s);
                    true
                }
            },
            _ => false,
        }
    }
}

fn evaluate(atom: &Atom, cp: &CoarsePresentation, a: &Assignment) -> (bool, String) {
    let slot = |i: usize| &cp.tangles[a.tangles[i].0];
    match atom {
        Atom::LowerAtLeast(i, c) => {
            let g = slot(*i);
            let lower = g.range.lower();
            let ok = lower.cmp_numeric(c) != core::cmp::Ordering::Less;
            (ok, format!("m{} = {} {} {} [{}]", i + 1, lower, if ok { ">=" } else { "<" }, c, g.name))
        }
        Atom::UpperNegative(i) => {
            let g = slot(*i);
            let upper = g.range.upper();
            let ok = upper.cmp_numeric(&integer(0)) == core::cmp::Ordering::Less;
            (ok, format!("M{} = {} {} 0 [{}]", i + 1, upper, if ok { "<" } else { ">=" }, g.name))
        }
        Atom::LeafAtLeast(i, c) => {
            let g = slot(*i);
            let ok = g.expr.leaf().is_some_and(|r| r >= c);
            (ok, format!("A{} = {} {} Q(r) with r >= {} [{}]", i + 1, g.expr, verb(ok), c, g.name))
        }
        Atom::LeafEquals(i, c) => {
            let g = slot(*i);
            let ok = g.expr.leaf() == Some(c);
            (ok, format!("A{} = {} {} Q({}) [{}]", i + 1, g.expr, verb(ok), c, g.name))
        }
        Atom::LeafNegativeUnitInterval(i) => {
            let g = slot(*i);
            let ok = g.expr.leaf().is_some_and(|r| *r >= integer(-1) && *r < integer(0));
            (ok, format!("A{} = {} {} Q(r) with -1 <= r < 0 [{}]", i + 1, g.expr, verb(ok), g.name))
        }
    }
}

fn verb(ok: bool) -> &'static str {
    if ok {
        "is"
    } else {
        "is not"
    }
}

fn assignment_pairs(cp: &CoarsePresentation, t: &Template, a: &Assignment) -> Vec<(String, String)> {
    let mut pairs: Vec<(String, String)> = t
        .tangles
        .iter()
        .zip(&a.tangles)
        .map(|(slot, &(g, flip))| (slot.clone(), format!("{}{}", cp.tangles[g].name, if flip { "'" } else { "" })))
        .collect();
    pairs.extend(t.regions.iter().zip(&a.regions).map(|(slot, &r)| (slot.clone(), cp.regions[r].clone())));
    pairs
}

/// All ranges have lower end `>= 0`, or all have upper end `<= 0`.
pub fn check_uniform_sign(cp: &CoarsePresentation) -> Certificate {
    let evidence: Vec<String> = cp.tangles.iter().map(|t| format!("{} in {}", t.name, t.range)).collect();
    let nonneg = !cp.tangles.is_empty() && cp.tangles.iter().all(|t| t.range.lower().is_nonnegative());
    let nonpos = !cp.tangles.is_empty() && cp.tangles.iter().all(|t| t.range.upper().is_nonpositive());
    let sign = if nonneg {
        Some("nonnegative")
    } else if nonpos {
        Some("nonpositive")
    } else {
        None
    };
    match sign {
        Some(s) => Certificate {
            verdict: Verdict::NotLeftOrderable,
            method: Some(Method::UniformSign),
            assignment: vec![("sign".to_string(), s.to_string())],
            evidence,
        },
        None => Certificate { verdict: Verdict::Inconclusive, method: None, assignment: Vec::new(), evidence },
    }
}

/// Evaluates each condition set of the template under an assignment.
pub fn check_conditions(a: &Assignment, cp: &CoarsePresentation, t: &Template) -> Certificate {
    let mut trace = Vec::new();
    for (method, atoms) in &t.conditions {
        let results: Vec<(bool, String)> = atoms.iter().map(|atom| evaluate(atom, cp, a)).collect();
        if results.iter().all(|(ok, _)| *ok) {
            return Certificate {
                verdict: Verdict::NotLeftOrderable,
                method: Some(*method),
                assignment: assignment_pairs(cp, t, a),
                evidence: results.into_iter().map(|(_, s)| s).collect(),
            };
        }
        let failed: Vec<String> = results.into_iter().filter(|(ok, _)| !ok).map(|(_, s)| s).collect();
        trace.push(format!("{} fails: {}", method.as_str(), failed.join("; ")));
    }
    Certificate {
        verdict: Verdict::Inconclusive,
        method: None,
        assignment: assignment_pairs(cp, t, a),
        evidence: trace,
    }
}

/// Uniform sign first, then every match of every built-in template.
pub fn certify(cp: &CoarsePresentation) -> Certificate {
    let uniform = check_uniform_sign(cp);
    if uniform.is_certified() {
        return uniform;
    }
    let mut trace = vec!["uniform-sign: ranges of mixed sign".to_string()];
    for t in Template::builtin() {
        let matches = match_template(cp, &t);
        if matches.is_empty() {
            trace.push(format!("{}: no match", t.name));
        }
        for a in &matches {
            let c = check_conditions(a, cp, &t);
            if c.is_certified() {
                return c;
            }
            let pairs: Vec<String> = c.assignment.iter().map(|(s, g)| format!("{}={}", s, g)).collect();
            for line in c.evidence {
                trace.push(format!("{} [{}]: {}", t.name, pairs.join(" "), line));
            }
        }
    }
    Certificate { verdict: Verdict::Inconclusive, method: None, assignment: Vec::new(), evidence: trace }
}

/// Checks a certificate against a coarse presentation by re-evaluating its
/// recorded assignment and conditions.
pub fn replay(cert: &Certificate, cp: &CoarsePresentation) -> Result<(), ReplayError> {
    let reject = |msg: String| Err(ReplayError::Rejected(msg));
    match (cert.verdict, cert.method) {
        (Verdict::Inconclusive, _) => {
            if certify(cp).is_certified() {
                return reject("input is certifiable".to_string());
            }
            Ok(())
        }
        (Verdict::NotLeftOrderable, None) => reject("no method".to_string()),
        (Verdict::NotLeftOrderable, Some(Method::ConeSearch)) => {
            reject("cone-search verdicts are checked by the refuter".to_string())
        }
        (Verdict::NotLeftOrderable, Some(Method::UniformSign)) => {
            let fresh = check_uniform_sign(cp);
            if !fresh.is_certified() || fresh.assignment != cert.assignment {
                return reject("ranges are not of the recorded sign".to_string());
            }
            if fresh.evidence != cert.evidence {
                return reject("recorded ranges differ".to_string());
            }
            Ok(())
        }
        (Verdict::NotLeftOrderable, Some(method)) => {
            let t = if method == Method::Pentagon { Template::pentagon() } else { Template::theta() };
            let a = parse_assignment(&cert.assignment, cp, &t)?;
            if !match_template(cp, &t).contains(&a) {
                return reject("assignment does not match the template".to_string());
            }
            let (_, atoms) = t.conditions.iter().find(|(m, _)| *m == method).expect("method of template");
            for atom in atoms {
                let (ok, line) = evaluate(atom, cp, &a);
                if !ok {
                    return reject(line);
                }
            }
            Ok(())
        }
    }
}

fn parse_assignment(
    pairs: &[(String, String)],
    cp: &CoarsePresentation,
    t: &Template,
) -> Result<Assignment, ReplayError> {
    let lookup = |slot: &str| {
        pairs
            .iter()
            .find(|(s, _)| s == slot)
            .map(|(_, g)| g.as_str())
            .ok_or_else(|| ReplayError::Rejected(format!("slot {} unassigned", slot)))
    };
    let mut tangles = Vec::new();
    for slot in &t.tangles {
        let g = lookup(slot)?;
        let (name, flip) = match g.strip_suffix('\'') {
            Some(n) => (n, true),
            None => (g, false),
        };
        let i = cp
            .tangles
            .iter()
            .position(|x| x.name == name)
            .ok_or_else(|| ReplayError::Rejected(format!("unknown tangle {}", name)))?;
        tangles.push((i, flip));
    }
    let mut regions = Vec::new();
    for slot in &t.regions {
        let g = lookup(slot)?;
        let i = cp
            .regions
            .iter()
            .position(|x| x == g)
            .ok_or_else(|| ReplayError::Rejected(format!("unknown region {}", g)))?;
        regions.push(i);
    }
    if pairs.len() != t.tangles.len() + t.regions.len() {
        return Err(ReplayError::Rejected("extra assignment entries".to_string()));
    }
    Ok(Assignment { tangles, regions })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presentation::TangleGenerator;
    use crate::range::range_of_expr;
    use crate::tangle::TangleExpr;
    use alloc::collections::BTreeSet;

    fn with_exprs(t: &Template, exprs: &[&str]) -> CoarsePresentation {
        let tangles = t
            .tangles
            .iter()
            .zip(exprs)
            .zip(&t.bases)
            .map(|((name, e), &base)| {
                let expr: TangleExpr = e.parse().unwrap();
                TangleGenerator { name: name.clone(), range: range_of_expr(&expr, false), expr, base }
            })
            .collect();
        t.as_presentation(tangles)
    }

    #[test]
    fn templates_match_themselves() {
        for t in Template::builtin() {
            let exprs: Vec<&str> = t.tangles.iter().map(|_| "Q(1)").collect();
            let cp = with_exprs(&t, &exprs);
            let identity = Assignment {
                tangles: (0..t.tangles.len()).map(|i| (i, false)).collect(),
                regions: (0..t.regions.len()).collect(),
            };
            assert!(match_template(&cp, &t).contains(&identity), "{}", t.name);
        }
    }

    #[test]
    fn theta_matches_closed_under_composition() {
        let t = Template::theta();
        let cp = with_exprs(&t, &["Q(1)"; 6]);
        let all: BTreeSet<Assignment> = match_template(&cp, &t).into_iter().collect();
        assert!(all.len() > 1);
        for a in &all {
            for b in &all {
                let tangles = a
                    .tangles
                    .iter()
                    .map(|&(g, f)| {
                        let (h, f2) = b.tangles[g];
                        (h, f != f2)
                    })
                    .collect();
                let regions = a.regions.iter().map(|&r| b.regions[r]).collect();
                assert!(all.contains(&Assignment { tangles, regions }));
            }
        }
    }

    #[test]
    fn theta_condition_one() {
        let t = Template::theta();
        let cp = with_exprs(&t, &["Q(1)", "Q(1)", "Q(-1)", "Q(1)", "Q(-1)", "Q(-1)"]);
        let c = certify(&cp);
        assert_eq!(c.method, Some(Method::Theta1));
        assert!(c.evidence.contains(&"M3 = -1 < 0 [W3]".to_string()));
        replay(&c, &cp).unwrap();
        replay(&Certificate::parse(&c.to_text()).unwrap(), &cp).unwrap();
    }

    #[test]
    fn theta_condition_two() {
        let t = Template::theta();
        let cp = with_exprs(&t, &["Q(2)", "Q(2)", "Q(2)", "Q(2)", "Q(2)", "Q(-1/2)"]);
        let c = certify(&cp);
        assert_eq!(c.method, Some(Method::Theta2));
        replay(&c, &cp).unwrap();
    }

    #[test]
    fn theta_conditions_fail() {
        let t = Template::theta();
        let cp = with_exprs(&t, &["Q(1/2)", "Q(1)", "Q(-1)", "Q(1)", "Q(-1)", "Q(-2)"]);
        let c = certify(&cp);
        assert_eq!(c.verdict, Verdict::Inconclusive);
        assert!(c.evidence.iter().any(|l| l.contains("m1 = 1/2 < 1")));
    }

    #[test]
    fn pentagon_certified() {
        let t = Template::pentagon();
        let mut exprs = ["Q(-1)"; 10];
        exprs[0] = "Q(2)";
        let cp = with_exprs(&t, &exprs);
        let c = certify(&cp);
        assert_eq!(c.method, Some(Method::Pentagon));
        replay(&c, &cp).unwrap();
        assert!(match_template(&with_exprs(&Template::theta(), &["Q(1)"; 6]), &t).is_empty());
    }

    #[test]
    fn uniform_sign_examples() {
        let t = Template::theta();
        let cp = with_exprs(&t, &["Q(1)"; 6]);
        let c = check_uniform_sign(&cp);
        assert_eq!(c.assignment, [("sign".to_string(), "nonnegative".to_string())]);
        replay(&c, &cp).unwrap();
        let refined = with_exprs(&t, &["(Q(1/3)+Q(1/4))*Q(-1)+Q(2)"; 6]);
        assert!(check_uniform_sign(&refined).is_certified());
        let mixed = with_exprs(&t, &["Q(1)", "Q(-1)", "Q(1)", "Q(1)", "Q(1)", "Q(1)"]);
        assert!(!check_uniform_sign(&mixed).is_certified());
    }

    #[test]
    fn tampered_certificates_rejected() {
        let t = Template::theta();
        let cp = with_exprs(&t, &["Q(1)", "Q(1)", "Q(-1)", "Q(1)", "Q(-1)", "Q(-1)"]);
        let mut c = certify(&cp);
        c.method = Some(Method::Theta2);
        assert!(replay(&c, &cp).is_err());
        let mut c = certify(&cp);
        let first = c.assignment[0].1.clone();
        c.assignment[0].1 = c.assignment[2].1.clone();
        c.assignment[2].1 = first;
        assert!(replay(&c, &cp).is_err());
        let other = with_exprs(&t, &["Q(1/2)", "Q(1)", "Q(-1)", "Q(1)", "Q(-1)", "Q(-1)"]);
        assert!(replay(&certify(&cp), &other).is_err());
    }

    #[test]
    fn canonical_cycles() {
        let a = Word::new([(0, 1), (1, 1), (2, -1)]);
        let rotated = Word::new([(2, -1), (0, 1), (1, 1)]);
        assert_eq!(cyclic_canonical(&a), cyclic_canonical(&rotated));
        assert_eq!(cyclic_canonical(&a), cyclic_canonical(&a.inverse()));
        assert_ne!(cyclic_canonical(&a), cyclic_canonical(&Word::new([(0, 1), (1, -1), (2, -1)])));
    }
}
