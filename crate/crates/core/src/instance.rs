//! Instances with strict preference lists, matchings on them, and the vote
//! arithmetic every other module is built on.
//!
//! A vertex that is left unmatched is treated as matched to itself, and every
//! vertex ranks itself below all of its neighbors. That sentinel is
//! [`Choice::Alone`]; it never appears inside a preference list.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a vertex inside one [`Instance`]. Ordering follows insertion
/// order, which is the canonical order used for every sorted output.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// Something a vertex can be assigned to: a neighbor, or nobody.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Choice {
    Vertex(VertexId),
    Alone,
}

impl From<Option<VertexId>> for Choice {
    fn from(v: Option<VertexId>) -> Self {
        v.map_or(Choice::Alone, Choice::Vertex)
    }
}

/// A single vertex's vote between two options.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Vote {
    Against = -1,
    Indifferent = 0,
    For = 1,
}

impl Vote {
    #[inline]
    pub fn value(self) -> i32 {
        self as i32
    }

    #[inline]
    fn from_ranks(first: u32, second: u32) -> Vote {
        match first.cmp(&second) {
            std::cmp::Ordering::Less => Vote::For,
            std::cmp::Ordering::Equal => Vote::Indifferent,
            std::cmp::Ordering::Greater => Vote::Against,
        }
    }
}

/// Rank used for [`Choice::Alone`]: worse than any list position.
pub(crate) const ALONE: u32 = u32::MAX;

/// An edge with the rank each endpoint gives the other. `u < v` canonically.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeRec {
    pub u: VertexId,
    pub v: VertexId,
    /// Position of `v` in `u`'s list.
    pub rank_at_u: u32,
    /// Position of `u` in `v`'s list.
    pub rank_at_v: u32,
}

/// One breach of the instance invariants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// `listed` appears in `owner`'s list but not the other way round.
    Asymmetric {
        owner: String,
        listed: String,
    },
    Duplicate {
        owner: String,
        listed: String,
    },
    SelfReference {
        owner: String,
    },
    /// Edge joining two vertices on the same side of a labeled bipartition.
    SameSide {
        u: String,
        v: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Asymmetric { owner, listed } => {
                write!(
                    f,
                    "{owner} lists {listed} but {listed} does not list {owner}"
                )
            }
            Violation::Duplicate { owner, listed } => write!(f, "{owner} lists {listed} twice"),
            Violation::SelfReference { owner } => write!(f, "{owner} lists itself"),
            Violation::SameSide { u, v } => {
                write!(f, "edge {u}-{v} joins vertices on the same side")
            }
        }
    }
}

/// A roommates instance: vertices with strictly ordered neighbor lists and an
/// optional left/right labeling.
#[derive(Clone, Debug)]
pub struct Instance {
    names: Vec<String>,
    index: HashMap<String, VertexId>,
    prefs: Vec<Vec<VertexId>>,
    ranks: Vec<HashMap<VertexId, u32>>,
    sides: Option<Vec<Side>>,
    edges: Vec<EdgeRec>,
}

impl Instance {
    /// Builds an instance and rejects it if any invariant is breached.
    pub fn new(
        names: Vec<String>,
        prefs: Vec<Vec<String>>,
        sides: Option<Vec<Side>>,
    ) -> Result<Self> {
        let inst = Self::new_unchecked(names, prefs, sides)?;
        let violations = validate_instance(&inst);
        if violations.is_empty() {
            Ok(inst)
        } else {
            Err(Error::InvalidInstance(violations))
        }
    }

    /// Builds an instance without checking list symmetry, duplicates or the
    /// bipartition. Only names must resolve. Use [`validate_instance`] to
    /// inspect the result.
    pub fn new_unchecked(
        names: Vec<String>,
        prefs: Vec<Vec<String>>,
        sides: Option<Vec<Side>>,
    ) -> Result<Self> {
        if prefs.len() != names.len() {
            return Err(Error::Precondition(format!(
                "{} names but {} preference lists",
                names.len(),
                prefs.len()
            )));
        }
        if let Some(s) = &sides {
            if s.len() != names.len() {
                return Err(Error::Precondition(format!(
                    "{} names but {} side labels",
                    names.len(),
                    s.len()
                )));
            }
        }
        let mut index = HashMap::with_capacity(names.len());
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), VertexId(i as u32)).is_some() {
                return Err(Error::Precondition(format!("vertex `{n}` declared twice")));
            }
        }
        let prefs: Vec<Vec<VertexId>> = prefs
            .into_iter()
            .map(|list| {
                list.into_iter()
                    .map(|n| index.get(&n).copied().ok_or(Error::UnknownVertex(n)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;
        Ok(Self::from_ids(names, index, prefs, sides))
    }

    pub(crate) fn from_ids(
        names: Vec<String>,
        index: HashMap<String, VertexId>,
        prefs: Vec<Vec<VertexId>>,
        sides: Option<Vec<Side>>,
    ) -> Self {
        let ranks: Vec<HashMap<VertexId, u32>> = prefs
            .iter()
            .map(|list| {
                let mut m = HashMap::with_capacity(list.len());
                for (r, &v) in list.iter().enumerate() {
                    m.entry(v).or_insert(r as u32);
                }
                m
            })
            .collect();
        let mut edges = Vec::new();
        for (ui, list) in prefs.iter().enumerate() {
            let u = VertexId(ui as u32);
            for &v in list {
                if u < v {
                    if let Some(&rv) = ranks[v.index()].get(&u) {
                        let ru = ranks[ui][&v];
                        edges.push(EdgeRec {
                            u,
                            v,
                            rank_at_u: ru,
                            rank_at_v: rv,
                        });
                    }
                }
            }
        }
        edges.sort_by_key(|e| (e.u, e.v));
        edges.dedup_by_key(|e| (e.u, e.v));
        Instance {
            names,
            index,
            prefs,
            ranks,
            sides,
            edges,
        }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.names.len() as u32).map(VertexId)
    }

    pub fn name(&self, v: VertexId) -> &str {
        &self.names[v.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn id(&self, name: &str) -> Result<VertexId> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn get_id(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied()
    }

    pub fn prefs(&self, v: VertexId) -> &[VertexId] {
        &self.prefs[v.index()]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.prefs[v.index()].len()
    }

    pub fn sides(&self) -> Option<&[Side]> {
        self.sides.as_deref()
    }

    /// Edges in canonical order, `u < v`.
    pub fn edges(&self) -> &[EdgeRec] {
        &self.edges
    }

    /// Position of `v` in `u`'s list, if listed.
    #[inline]
    pub fn rank(&self, u: VertexId, v: VertexId) -> Option<u32> {
        self.ranks[u.index()].get(&v).copied()
    }

    pub fn is_edge(&self, u: VertexId, v: VertexId) -> bool {
        u != v && self.rank(u, v).is_some() && self.rank(v, u).is_some()
    }

    fn choice_rank(&self, u: VertexId, c: Choice) -> Result<u32> {
        match c {
            Choice::Alone => Ok(ALONE),
            Choice::Vertex(v) if v == u => Ok(ALONE),
            Choice::Vertex(v) => self.rank(u, v).ok_or_else(|| Error::NotAnEdge {
                u: self.name(u).to_string(),
                v: self.name(v).to_string(),
            }),
        }
    }

    /// The labeled bipartition, or a 2-coloring if the instance carries no
    /// labels. Uncolored components start on the left at their first vertex.
    pub fn bipartition(&self) -> Result<Vec<Side>> {
        if let Some(s) = &self.sides {
            for e in &self.edges {
                if s[e.u.index()] == s[e.v.index()] {
                    return Err(Error::NotBipartite(format!(
                        "edge {}-{} joins one side",
                        self.name(e.u),
                        self.name(e.v)
                    )));
                }
            }
            return Ok(s.clone());
        }
        let n = self.len();
        let mut color: Vec<Option<Side>> = vec![None; n];
        let mut queue = VecDeque::new();
        for start in 0..n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(Side::Left);
            queue.push_back(VertexId(start as u32));
            while let Some(u) = queue.pop_front() {
                let cu = color[u.index()].unwrap();
                for &v in self.prefs(u) {
                    if !self.is_edge(u, v) {
                        continue;
                    }
                    match color[v.index()] {
                        None => {
                            color[v.index()] = Some(cu.opposite());
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => {
                            return Err(Error::NotBipartite(format!(
                                "odd cycle through {}-{}",
                                self.name(u),
                                self.name(v)
                            )))
                        }
                        Some(_) => {}
                    }
                }
            }
        }
        Ok(color.into_iter().map(|c| c.unwrap()).collect())
    }

    /// Copy of this instance with the given side labels attached.
    pub fn with_sides(&self, sides: Vec<Side>) -> Result<Instance> {
        let names = self.names.clone();
        let prefs = self
            .prefs
            .iter()
            .map(|l| l.iter().map(|&v| self.name(v).to_string()).collect())
            .collect();
        Instance::new(names, prefs, Some(sides))
    }

    /// The sub-instance on `keep` (in canonical order), with lists filtered
    /// and side labels carried over.
    pub fn induced(&self, keep: &[VertexId]) -> Result<Instance> {
        let mut inside = vec![false; self.len()];
        for &v in keep {
            inside[v.index()] = true;
        }
        let kept: Vec<VertexId> = self.vertices().filter(|v| inside[v.index()]).collect();
        let names = kept.iter().map(|&v| self.name(v).to_string()).collect();
        let prefs = kept
            .iter()
            .map(|&v| {
                self.prefs(v)
                    .iter()
                    .filter(|w| inside[w.index()])
                    .map(|&w| self.name(w).to_string())
                    .collect()
            })
            .collect();
        let sides = self
            .sides
            .as_ref()
            .map(|s| kept.iter().map(|v| s[v.index()]).collect());
        Instance::new(names, prefs, sides)
    }
}

/// Every invariant breach of `inst`, in canonical vertex order.
pub fn validate_instance(inst: &Instance) -> Vec<Violation> {
    let mut out = Vec::new();
    for u in inst.vertices() {
        let mut seen = std::collections::HashSet::new();
        for &v in inst.prefs(u) {
            if v == u {
                out.push(Violation::SelfReference {
                    owner: inst.name(u).to_string(),
                });
                continue;
            }
            if !seen.insert(v) {
                out.push(Violation::Duplicate {
                    owner: inst.name(u).to_string(),
                    listed: inst.name(v).to_string(),
                });
                continue;
            }
            if inst.rank(v, u).is_none() {
                out.push(Violation::Asymmetric {
                    owner: inst.name(u).to_string(),
                    listed: inst.name(v).to_string(),
                });
            }
        }
    }
    if let Some(sides) = inst.sides() {
        for e in inst.edges() {
            if sides[e.u.index()] == sides[e.v.index()] {
                out.push(Violation::SameSide {
                    u: inst.name(e.u).to_string(),
                    v: inst.name(e.v).to_string(),
                });
            }
        }
    }
    out
}

/// A set of disjoint edges, stored as a partner table over one instance.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matching {
    mate: Vec<Option<VertexId>>,
}

impl Matching {
    pub fn empty(n: usize) -> Self {
        Matching {
            mate: vec![None; n],
        }
    }

    /// Builds a matching, checking that every pair is an edge and that no
    /// vertex is used twice.
    pub fn from_pairs<I>(inst: &Instance, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut m = Matching::empty(inst.len());
        for (u, v) in pairs {
            if !inst.is_edge(u, v) {
                return Err(Error::InvalidMatching(format!(
                    "{}-{} is not an edge",
                    inst.name(u),
                    inst.name(v)
                )));
            }
            for w in [u, v] {
                if m.mate[w.index()].is_some() {
                    return Err(Error::InvalidMatching(format!(
                        "{} is matched twice",
                        inst.name(w)
                    )));
                }
            }
            m.mate[u.index()] = Some(v);
            m.mate[v.index()] = Some(u);
        }
        Ok(m)
    }

    /// Convenience for tests and examples: pairs given by vertex name.
    pub fn from_names(inst: &Instance, pairs: &[(&str, &str)]) -> Result<Self> {
        let ids = pairs
            .iter()
            .map(|(a, b)| Ok((inst.id(a)?, inst.id(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Matching::from_pairs(inst, ids)
    }

    pub(crate) fn from_mate_unchecked(mate: Vec<Option<VertexId>>) -> Self {
        Matching { mate }
    }

    #[inline]
    pub fn partner(&self, v: VertexId) -> Option<VertexId> {
        self.mate[v.index()]
    }

    #[inline]
    pub fn choice(&self, v: VertexId) -> Choice {
        self.mate[v.index()].into()
    }

    #[inline]
    pub fn is_matched(&self, v: VertexId) -> bool {
        self.mate[v.index()].is_some()
    }

    pub fn vertex_count(&self) -> usize {
        self.mate.len()
    }

    /// Number of pairs.
    pub fn len(&self) -> usize {
        self.mate.iter().filter(|m| m.is_some()).count() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.mate.iter().all(Option::is_none)
    }

    pub fn contains(&self, u: VertexId, v: VertexId) -> bool {
        self.mate[u.index()] == Some(v)
    }

    /// Pairs `(u, v)` with `u < v`, sorted.
    pub fn pairs(&self) -> Vec<(VertexId, VertexId)> {
        self.mate
            .iter()
            .enumerate()
            .filter_map(|(i, m)| {
                let u = VertexId(i as u32);
                m.filter(|&v| u < v).map(|v| (u, v))
            })
            .collect()
    }

    /// Pairs by name, for reports.
    pub fn named_pairs(&self, inst: &Instance) -> Vec<(String, String)> {
        self.pairs()
            .into_iter()
            .map(|(u, v)| (inst.name(u).to_string(), inst.name(v).to_string()))
            .collect()
    }

    pub fn unmatched(&self) -> Vec<VertexId> {
        (0..self.mate.len() as u32)
            .map(VertexId)
            .filter(|&v| !self.is_matched(v))
            .collect()
    }

    /// Rank each vertex gives its partner, [`ALONE`] if unmatched.
    pub(crate) fn partner_ranks(&self, inst: &Instance) -> Vec<u32> {
        self.mate
            .iter()
            .enumerate()
            .map(|(i, m)| match m {
                Some(v) => inst.ranks[i][v],
                None => ALONE,
            })
            .collect()
    }
}

/// Checks that `m` is a matching of `inst`.
pub fn check_matching(inst: &Instance, m: &Matching) -> Result<()> {
    if m.vertex_count() != inst.len() {
        return Err(Error::InvalidMatching(format!(
            "matching spans {} vertices, instance has {}",
            m.vertex_count(),
            inst.len()
        )));
    }
    for u in inst.vertices() {
        if let Some(v) = m.partner(u) {
            if m.partner(v) != Some(u) {
                return Err(Error::InvalidMatching(format!(
                    "partner table not symmetric at {}",
                    inst.name(u)
                )));
            }
            if !inst.is_edge(u, v) {
                return Err(Error::InvalidMatching(format!(
                    "{}-{} is not an edge",
                    inst.name(u),
                    inst.name(v)
                )));
            }
        }
    }
    Ok(())
}

/// `u`'s vote between `first` and `second`.
pub fn vote(inst: &Instance, u: VertexId, first: Choice, second: Choice) -> Result<Vote> {
    if u.index() >= inst.len() {
        return Err(Error::UnknownVertex(format!("#{}", u.0)));
    }
    let a = inst.choice_rank(u, first)?;
    let b = inst.choice_rank(u, second)?;
    Ok(Vote::from_ranks(a, b))
}

/// Edge weight relative to `m`: the sum of both endpoints' votes for each
/// other over their current assignment. Always one of -2, 0, 2.
pub fn wt(inst: &Instance, m: &Matching, u: VertexId, v: VertexId) -> Result<i32> {
    if !inst.is_edge(u, v) {
        return Err(Error::NotAnEdge {
            u: inst.name(u).to_string(),
            v: inst.name(v).to_string(),
        });
    }
    Ok(vote(inst, u, Choice::Vertex(v), m.choice(u))?.value()
        + vote(inst, v, Choice::Vertex(u), m.choice(v))?.value())
}

/// Self-loop weight: 0 when `u` is unmatched, -1 otherwise.
pub fn wt_self(m: &Matching, u: VertexId) -> i32 {
    if m.is_matched(u) {
        -1
    } else {
        0
    }
}

#[inline]
pub(crate) fn edge_weight(e: &EdgeRec, ranks: &[u32]) -> i32 {
    Vote::from_ranks(e.rank_at_u, ranks[e.u.index()]).value()
        + Vote::from_ranks(e.rank_at_v, ranks[e.v.index()]).value()
}

#[inline]
pub(crate) fn delta_ranks(first: &[u32], second: &[u32]) -> i64 {
    first
        .iter()
        .zip(second)
        .map(|(&a, &b)| Vote::from_ranks(a, b).value() as i64)
        .sum()
}

/// Vertices preferring `m1` minus vertices preferring `m2`.
pub fn delta(inst: &Instance, m1: &Matching, m2: &Matching) -> Result<i64> {
    check_matching(inst, m1)?;
    check_matching(inst, m2)?;
    Ok(delta_ranks(
        &m1.partner_ranks(inst),
        &m2.partner_ranks(inst),
    ))
}

/// Edges both of whose endpoints prefer each other to their assignment in
/// `m`, in canonical order.
pub fn blocking_edges(inst: &Instance, m: &Matching) -> Vec<(VertexId, VertexId)> {
    let ranks = m.partner_ranks(inst);
    inst.edges()
        .iter()
        .filter(|e| e.rank_at_u < ranks[e.u.index()] && e.rank_at_v < ranks[e.v.index()])
        .map(|e| (e.u, e.v))
        .collect()
}

pub fn is_stable(inst: &Instance, m: &Matching) -> bool {
    blocking_edges(inst, m).is_empty()
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn d_gadget() -> Instance {
        crate::io::parse_instance(
            "vertices: 4\n\
             d0: d1 > d2 > d3\n\
             d1: d2 > d3 > d0\n\
             d2: d3 > d1 > d0\n\
             d3: d1 > d2 > d0\n",
        )
        .unwrap()
    }

    pub(crate) fn level_one() -> Instance {
        crate::io::parse_instance(
            "vertices: 4\n\
             x: y > yp side: L\n\
             xp: y > yp side: L\n\
             y: x > xp side: R\n\
             yp: x > xp side: R\n",
        )
        .unwrap()
    }

    #[test]
    fn d_gadget_is_valid() {
        assert!(validate_instance(&d_gadget()).is_empty());
    }

    #[test]
    fn asymmetric_list_is_reported_once() {
        let inst = Instance::new_unchecked(
            vec!["u".into(), "v".into()],
            vec![vec!["v".into()], vec![]],
            None,
        )
        .unwrap();
        let v = validate_instance(&inst);
        assert_eq!(
            v,
            vec![Violation::Asymmetric {
                owner: "u".into(),
                listed: "v".into()
            }]
        );
        assert!(inst.edges().is_empty());
    }

    #[test]
    fn duplicates_self_and_side_breaches() {
        let inst = Instance::new_unchecked(
            vec!["a".into(), "b".into()],
            vec![vec!["b".into(), "b".into(), "a".into()], vec!["a".into()]],
            Some(vec![Side::Left, Side::Left]),
        )
        .unwrap();
        let v = validate_instance(&inst);
        assert_eq!(v.len(), 3);
        assert!(v.contains(&Violation::Duplicate {
            owner: "a".into(),
            listed: "b".into()
        }));
        assert!(v.contains(&Violation::SelfReference { owner: "a".into() }));
        assert!(v.contains(&Violation::SameSide {
            u: "a".into(),
            v: "b".into()
        }));
        assert!(Instance::new(
            vec!["a".into(), "b".into()],
            vec![vec!["b".into()], vec!["a".into()]],
            Some(vec![Side::Left, Side::Left])
        )
        .is_err());
    }

    #[test]
    fn votes() {
        let d = d_gadget();
        let id = |n| d.id(n).unwrap();
        let v = |u, a, b| vote(&d, id(u), Choice::Vertex(id(a)), Choice::Vertex(id(b))).unwrap();
        assert_eq!(v("d1", "d2", "d3"), Vote::For);
        assert_eq!(v("d1", "d3", "d2"), Vote::Against);
        assert_eq!(v("d1", "d3", "d3"), Vote::Indifferent);
        assert_eq!(
            vote(&d, id("d3"), Choice::Vertex(id("d2")), Choice::Alone).unwrap(),
            Vote::For
        );
        assert_eq!(
            vote(&d, id("d3"), Choice::Alone, Choice::Alone).unwrap(),
            Vote::Indifferent
        );
        assert!(matches!(
            vote(&d, id("d1"), Choice::Vertex(id("d1")), Choice::Alone),
            Ok(Vote::Indifferent)
        ));
        assert!(vote(&d, VertexId(9), Choice::Alone, Choice::Alone).is_err());
        let inst = level_one();
        let x = inst.id("x").unwrap();
        let xp = inst.id("xp").unwrap();
        assert!(matches!(
            vote(&inst, x, Choice::Vertex(xp), Choice::Alone),
            Err(Error::NotAnEdge { .. })
        ));
    }

    #[test]
    fn weights_on_level_one_gadget() {
        let inst = level_one();
        let id = |n| inst.id(n).unwrap();
        let n = Matching::from_names(&inst, &[("x", "yp"), ("xp", "y")]).unwrap();
        assert_eq!(wt(&inst, &n, id("x"), id("y")).unwrap(), 2);
        assert_eq!(wt(&inst, &n, id("x"), id("yp")).unwrap(), 0);
        assert_eq!(wt(&inst, &n, id("xp"), id("yp")).unwrap(), -2);
        assert_eq!(wt_self(&n, id("x")), -1);
        assert_eq!(wt_self(&Matching::empty(4), id("x")), 0);
        assert!(wt(&inst, &n, id("x"), id("xp")).is_err());
        let s = Matching::from_names(&inst, &[("x", "y"), ("xp", "yp")]).unwrap();
        assert_eq!(delta(&inst, &n, &s).unwrap(), 0);
        assert_eq!(delta(&inst, &s, &s).unwrap(), 0);
    }

    #[test]
    fn d_gadget_delta_and_stability() {
        let d = d_gadget();
        let a = Matching::from_names(&d, &[("d0", "d1"), ("d2", "d3")]).unwrap();
        let b = Matching::from_names(&d, &[("d0", "d3"), ("d1", "d2")]).unwrap();
        let c = Matching::from_names(&d, &[("d0", "d2"), ("d1", "d3")]).unwrap();
        assert_eq!(delta(&d, &a, &b).unwrap(), 2);
        assert_eq!(delta(&d, &b, &a).unwrap(), -2);
        for m in [&a, &b, &c] {
            assert!(!is_stable(&d, m));
        }
    }

    #[test]
    fn blocking_edges_of_empty_matching_are_all_edges() {
        let inst = level_one();
        let b = blocking_edges(&inst, &Matching::empty(4));
        assert_eq!(b.len(), 4);
        let s = Matching::from_names(&inst, &[("x", "y"), ("xp", "yp")]).unwrap();
        assert!(is_stable(&inst, &s));
        let single = crate::io::parse_instance("vertices: 2\nu: v\nv: u\n").unwrap();
        assert!(!is_stable(&single, &Matching::empty(2)));
    }

    #[test]
    fn invalid_matchings_are_rejected() {
        let inst = level_one();
        assert!(Matching::from_names(&inst, &[("x", "xp")]).is_err());
        assert!(Matching::from_names(&inst, &[("x", "y"), ("xp", "y")]).is_err());
        assert!(delta(&inst, &Matching::empty(3), &Matching::empty(4)).is_err());
    }

    #[test]
    fn bipartition_inferred_or_rejected() {
        let d = d_gadget();
        assert!(matches!(d.bipartition(), Err(Error::NotBipartite(_))));
        let path = crate::io::parse_instance("vertices: 3\na: b\nb: a > c\nc: b\n").unwrap();
        assert_eq!(
            path.bipartition().unwrap(),
            vec![Side::Left, Side::Right, Side::Left]
        );
    }
}
