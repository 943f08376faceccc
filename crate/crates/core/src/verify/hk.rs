//! Popularity test by alternating structures with blocking edges.
//!
//! After deleting every edge both of whose endpoints prefer their current
//! assignment, a matching of a bipartite instance is popular iff there is
//!
//! 1. no alternating cycle containing a blocking edge,
//! 2. no alternating path starting at an unmatched vertex and containing a
//!    blocking edge,
//! 3. no alternating path containing two blocking edges.
//!
//! Alternating structures are searched in a contracted digraph: one node per
//! matched edge and per unmatched vertex, and for every remaining unmatched
//! edge `(l, r)` an arc from the node of `r` to the node of `l`. Walking an
//! arc and then the matched edge at its head traces an alternating path.
//! Unmatched right vertices are sources, unmatched left vertices are sinks.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::instance::{check_matching, edge_weight, Instance, Matching, Side, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HkViolationKind {
    CycleWithBlocking,
    PathFromUnmatchedWithBlocking,
    PathWithTwoBlocking,
}

/// An alternating cycle or path witnessing that a matching is not popular.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HkViolation {
    pub kind: HkViolationKind,
    /// Vertices in traversal order; for a cycle the closing edge joins the
    /// last vertex to the first.
    pub vertices: Vec<VertexId>,
    /// The blocking edges on the structure, as `(left, right)`.
    pub blocking: Vec<(VertexId, VertexId)>,
}

struct Arc {
    from: usize,
    to: usize,
    /// left endpoint (entry vertex of `to`) and right endpoint
    left: VertexId,
    right: VertexId,
    blocking: bool,
}

struct NodeGraph {
    /// members[node] = (left vertex, right vertex) where present
    members: Vec<(Option<VertexId>, Option<VertexId>)>,
    arcs: Vec<Arc>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
}

/// Checks the three conditions; `Ok(None)` means the matching is popular.
/// Violations are looked for in the order listed in the module docs.
pub fn hk_verify(inst: &Instance, m: &Matching) -> Result<Option<HkViolation>> {
    let sides = inst.bipartition()?;
    check_matching(inst, m)?;
    let graph = build(inst, m, &sides);
    let comp = strongly_connected(&graph);

    // 1. blocking arc inside a strongly connected component
    for (i, a) in graph.arcs.iter().enumerate() {
        if a.blocking && comp[a.from] == comp[a.to] {
            let back = bfs_path(&graph, &[a.to], |n| n == a.from, Some(comp[a.from]), &comp)
                .expect("same component");
            let mut arcs = vec![i];
            arcs.extend(back.arcs);
            return Ok(Some(violation(
                &graph,
                HkViolationKind::CycleWithBlocking,
                a.from,
                &arcs,
                true,
            )));
        }
    }

    // 2. blocking arc reachable from a source or reaching a sink
    let sources: Vec<usize> = (0..graph.members.len())
        .filter(|&n| matches!(graph.members[n], (None, Some(_))))
        .collect();
    let is_sink = |n: usize| matches!(graph.members[n], (Some(_), None));
    let from_source = reach(&graph, &sources, false);
    let sinks: Vec<usize> = (0..graph.members.len()).filter(|&n| is_sink(n)).collect();
    let to_sink = reach(&graph, &sinks, true);
    for (i, a) in graph.arcs.iter().enumerate() {
        if !a.blocking {
            continue;
        }
        if from_source[a.from] {
            let p = bfs_path(&graph, &sources, |n| n == a.from, None, &comp).expect("reachable");
            let mut arcs = p.arcs;
            arcs.push(i);
            return Ok(Some(violation(
                &graph,
                HkViolationKind::PathFromUnmatchedWithBlocking,
                p.start,
                &arcs,
                false,
            )));
        }
        if to_sink[a.to] {
            let p = bfs_path(&graph, &[a.to], is_sink, None, &comp).expect("reachable");
            let mut arcs = vec![i];
            arcs.extend(p.arcs);
            return Ok(Some(violation(
                &graph,
                HkViolationKind::PathFromUnmatchedWithBlocking,
                a.from,
                &arcs,
                false,
            )));
        }
    }

    // 3. two blocking arcs on one path; no blocking arc lies inside a
    // component any more, so work on the condensation in topological order
    let ncomp = comp.iter().max().map_or(0, |&c| c + 1);
    // components are numbered in reverse topological order by Tarjan, so
    // every arc goes from a higher to a lower-or-equal component number
    let mut has_tail = vec![false; ncomp];
    for a in graph.arcs.iter().filter(|a| a.blocking) {
        has_tail[comp[a.from]] = true;
    }
    let mut comp_arcs: Vec<Vec<usize>> = vec![Vec::new(); ncomp];
    for a in &graph.arcs {
        if comp[a.from] != comp[a.to] {
            comp_arcs[comp[a.from]].push(comp[a.to]);
        }
    }
    let mut reaches_tail = has_tail.clone();
    for c in 0..ncomp {
        for &d in &comp_arcs[c] {
            debug_assert!(d < c);
            if reaches_tail[d] {
                reaches_tail[c] = true;
            }
        }
    }
    for (i, a) in graph.arcs.iter().enumerate() {
        if a.blocking && reaches_tail[comp[a.to]] {
            let is_tail = |n: usize| graph.arcs.iter().any(|b| b.blocking && b.from == n);
            let p = bfs_path(&graph, &[a.to], is_tail, None, &comp).expect("reachable");
            let second = (0..graph.arcs.len())
                .find(|&j| graph.arcs[j].blocking && graph.arcs[j].from == p.end)
                .expect("tail of a blocking arc");
            let mut arcs = vec![i];
            arcs.extend(p.arcs);
            arcs.push(second);
            return Ok(Some(violation(
                &graph,
                HkViolationKind::PathWithTwoBlocking,
                a.from,
                &arcs,
                false,
            )));
        }
    }
    Ok(None)
}

fn build(inst: &Instance, m: &Matching, sides: &[Side]) -> NodeGraph {
    let n = inst.len();
    let mut node_of = vec![usize::MAX; n];
    let mut members = Vec::new();
    for v in inst.vertices() {
        if node_of[v.index()] != usize::MAX {
            continue;
        }
        let id = members.len();
        let (l, r) = match (sides[v.index()], m.partner(v)) {
            (Side::Left, p) => (Some(v), p),
            (Side::Right, p) => (p, Some(v)),
        };
        for w in [l, r].into_iter().flatten() {
            node_of[w.index()] = id;
        }
        members.push((l, r));
    }
    let ranks = m.partner_ranks(inst);
    let mut arcs = Vec::new();
    for e in inst.edges() {
        if m.contains(e.u, e.v) {
            continue;
        }
        let w = edge_weight(e, &ranks);
        if w < 0 {
            continue;
        }
        let (l, r) = if sides[e.u.index()] == Side::Left {
            (e.u, e.v)
        } else {
            (e.v, e.u)
        };
        arcs.push(Arc {
            from: node_of[r.index()],
            to: node_of[l.index()],
            left: l,
            right: r,
            blocking: w > 0,
        });
    }
    let mut out = vec![Vec::new(); members.len()];
    let mut inc = vec![Vec::new(); members.len()];
    for (i, a) in arcs.iter().enumerate() {
        out[a.from].push(i);
        inc[a.to].push(i);
    }
    NodeGraph {
        members,
        arcs,
        out,
        inc,
    }
}

/// Tarjan's algorithm, iterative. Component ids come out in reverse
/// topological order of the condensation.
fn strongly_connected(g: &NodeGraph) -> Vec<usize> {
    let n = g.members.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![usize::MAX; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut ncomp = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        // (node, position in its out-list)
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if *pos < g.out[v].len() {
                let w = g.arcs[g.out[v][*pos]].to;
                *pos += 1;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(parent, _)) = call.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp[w] = ncomp;
                        if w == v {
                            break;
                        }
                    }
                    ncomp += 1;
                }
            }
        }
    }
    comp
}

fn reach(g: &NodeGraph, starts: &[usize], backward: bool) -> Vec<bool> {
    let mut seen = vec![false; g.members.len()];
    let mut queue: VecDeque<usize> = starts.iter().copied().collect();
    for &s in starts {
        seen[s] = true;
    }
    while let Some(v) = queue.pop_front() {
        let list = if backward { &g.inc[v] } else { &g.out[v] };
        for &i in list {
            let w = if backward {
                g.arcs[i].from
            } else {
                g.arcs[i].to
            };
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    seen
}

struct NodePath {
    start: usize,
    end: usize,
    arcs: Vec<usize>,
}

/// Shortest arc path from any start to a node satisfying `goal`, optionally
/// confined to one component.
fn bfs_path(
    g: &NodeGraph,
    starts: &[usize],
    goal: impl Fn(usize) -> bool,
    within: Option<usize>,
    comp: &[usize],
) -> Option<NodePath> {
    let n = g.members.len();
    let mut via: Vec<Option<usize>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    for &s in starts {
        if !seen[s] {
            seen[s] = true;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        if goal(v) {
            let mut arcs = Vec::new();
            let mut cur = v;
            while let Some(i) = via[cur] {
                arcs.push(i);
                cur = g.arcs[i].from;
            }
            arcs.reverse();
            return Some(NodePath {
                start: cur,
                end: v,
                arcs,
            });
        }
        for &i in &g.out[v] {
            let w = g.arcs[i].to;
            if seen[w] || within.is_some_and(|c| comp[w] != c) {
                continue;
            }
            seen[w] = true;
            via[w] = Some(i);
            queue.push_back(w);
        }
    }
    None
}

/// Expands a node-level arc sequence starting at node `start` into vertices.
/// For a cycle the last arc returns to `start` and adds nothing.
fn violation(
    g: &NodeGraph,
    kind: HkViolationKind,
    start: usize,
    arcs: &[usize],
    cycle: bool,
) -> HkViolation {
    let mut vertices = Vec::new();
    let (l, r) = g.members[start];
    vertices.extend(l);
    vertices.extend(r);
    for (k, &i) in arcs.iter().enumerate() {
        if cycle && k + 1 == arcs.len() {
            break;
        }
        let (l, r) = g.members[g.arcs[i].to];
        vertices.extend(l);
        vertices.extend(r);
    }
    let blocking = arcs
        .iter()
        .map(|&i| &g.arcs[i])
        .filter(|a| a.blocking)
        .map(|a| (a.left, a.right))
        .collect();
    HkViolation {
        kind,
        vertices,
        blocking,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::tests::level_one;

    #[test]
    fn stable_matching_passes() {
        let inst = level_one();
        let m = Matching::from_names(&inst, &[("x", "y"), ("xp", "yp")]).unwrap();
        assert_eq!(hk_verify(&inst, &m).unwrap(), None);
        let m = Matching::from_names(&inst, &[("x", "yp"), ("xp", "y")]).unwrap();
        assert_eq!(hk_verify(&inst, &m).unwrap(), None);
    }

    #[test]
    fn unmatched_pair_is_a_path_violation() {
        let inst = level_one();
        let m = Matching::from_names(&inst, &[("x", "y")]).unwrap();
        let v = hk_verify(&inst, &m).unwrap().unwrap();
        assert_eq!(v.kind, HkViolationKind::PathFromUnmatchedWithBlocking);
        let id = |n| inst.id(n).unwrap();
        assert_eq!(v.blocking, vec![(id("xp"), id("yp"))]);
        assert_eq!(v.vertices, vec![id("yp"), id("xp")]);
    }

    #[test]
    fn blocking_cycle_is_found() {
        // x prefers y, y prefers x, but M pairs them with their second choices
        // and x', y' rank them the same way round: cycle x-y'-x'-y-x.
        let inst = crate::io::parse_instance(
            "vertices: 4\nx: y > yp side: L\nxp: yp > y side: L\ny: x > xp side: R\nyp: xp > x side: R\n",
        )
        .unwrap();
        let m = Matching::from_names(&inst, &[("x", "yp"), ("xp", "y")]).unwrap();
        let v = hk_verify(&inst, &m).unwrap().unwrap();
        assert_eq!(v.kind, HkViolationKind::CycleWithBlocking);
        assert_eq!(v.blocking.len(), 2);
        assert_eq!(v.vertices.len(), 4);
    }

    #[test]
    fn non_bipartite_is_rejected() {
        let tri = crate::io::parse_instance("vertices: 3\na: b > c\nb: c > a\nc: a > b\n").unwrap();
        assert!(hk_verify(&tri, &Matching::empty(3)).is_err());
    }
}
