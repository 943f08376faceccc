//! Enumeration-based oracles for tiny instances, bipartite or not.
//!
//! Matchings are enumerated lexicographically by canonical edge order, each
//! matching before its extensions, so "first" results are deterministic.

use std::ops::ControlFlow;

use crate::error::{Error, Result};
use crate::instance::{check_matching, delta_ranks, Instance, Matching, VertexId, ALONE};

/// Vertex caps for the enumeration oracles.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExhaustiveConfig {
    /// Largest instance a single enumeration accepts.
    pub vertex_cap: usize,
    /// Largest instance for oracles that compare every pair of matchings.
    pub pairwise_cap: usize,
}

impl Default for ExhaustiveConfig {
    fn default() -> Self {
        ExhaustiveConfig {
            vertex_cap: 14,
            pairwise_cap: 10,
        }
    }
}

fn check_cap(inst: &Instance, cap: usize) -> Result<()> {
    if inst.len() > cap {
        return Err(Error::CapExceeded {
            vertices: inst.len(),
            cap,
        });
    }
    Ok(())
}

/// Calls `f` with the partner table and partner-rank vector of every
/// matching of `inst`, in lexicographic order. Stops when `f` breaks.
pub fn for_each_matching<F>(inst: &Instance, mut f: F)
where
    F: FnMut(&[Option<VertexId>], &[u32]) -> ControlFlow<()>,
{
    let mut mate = vec![None; inst.len()];
    let mut ranks = vec![ALONE; inst.len()];
    let _ = walk(inst, 0, &mut mate, &mut ranks, &mut f);
}

fn walk<F>(
    inst: &Instance,
    start: usize,
    mate: &mut [Option<VertexId>],
    ranks: &mut [u32],
    f: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[Option<VertexId>], &[u32]) -> ControlFlow<()>,
{
    f(mate, ranks)?;
    let edges = inst.edges();
    for (j, e) in edges.iter().enumerate().skip(start) {
        let (u, v) = (e.u.index(), e.v.index());
        if mate[u].is_some() || mate[v].is_some() {
            continue;
        }
        mate[u] = Some(e.v);
        mate[v] = Some(e.u);
        ranks[u] = e.rank_at_u;
        ranks[v] = e.rank_at_v;
        let flow = walk(inst, j + 1, mate, ranks, f);
        mate[u] = None;
        mate[v] = None;
        ranks[u] = ALONE;
        ranks[v] = ALONE;
        flow?;
    }
    ControlFlow::Continue(())
}

/// Every matching of `inst` in enumeration order.
pub fn all_matchings(inst: &Instance, cfg: &ExhaustiveConfig) -> Result<Vec<Matching>> {
    check_cap(inst, cfg.vertex_cap)?;
    let mut out = Vec::new();
    for_each_matching(inst, |mate, _| {
        out.push(Matching::from_mate_unchecked(mate.to_vec()));
        ControlFlow::Continue(())
    });
    Ok(out)
}

/// Result of [`is_popular_exhaustive`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExhaustiveVerdict {
    pub popular: bool,
    /// The first matching that beats the input, with its margin.
    pub counterexample: Option<(Matching, i64)>,
}

/// Checks `delta(M', M) <= 0` for every matching `M'`.
pub fn is_popular_exhaustive(
    inst: &Instance,
    m: &Matching,
    cfg: &ExhaustiveConfig,
) -> Result<ExhaustiveVerdict> {
    check_cap(inst, cfg.vertex_cap)?;
    check_matching(inst, m)?;
    let base = m.partner_ranks(inst);
    let mut counterexample = None;
    for_each_matching(inst, |mate, ranks| {
        let d = delta_ranks(ranks, &base);
        if d > 0 {
            counterexample = Some((Matching::from_mate_unchecked(mate.to_vec()), d));
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    Ok(ExhaustiveVerdict {
        popular: counterexample.is_none(),
        counterexample,
    })
}

/// `max over M'` of `delta(M', M)` with the first matching attaining it.
pub fn max_delta_exhaustive(
    inst: &Instance,
    m: &Matching,
    cfg: &ExhaustiveConfig,
) -> Result<(i64, Matching)> {
    check_cap(inst, cfg.vertex_cap)?;
    check_matching(inst, m)?;
    let base = m.partner_ranks(inst);
    let mut best: Option<(i64, Vec<Option<VertexId>>)> = None;
    for_each_matching(inst, |mate, ranks| {
        let d = delta_ranks(ranks, &base);
        if best.as_ref().is_none_or(|(b, _)| d > *b) {
            best = Some((d, mate.to_vec()));
        }
        ControlFlow::Continue(())
    });
    let (d, mate) = best.expect("the empty matching is always enumerated");
    Ok((d, Matching::from_mate_unchecked(mate)))
}

/// True iff `M` is popular and beats every strictly larger matching.
pub fn is_dominant_exhaustive(
    inst: &Instance,
    m: &Matching,
    cfg: &ExhaustiveConfig,
) -> Result<bool> {
    if !is_popular_exhaustive(inst, m, cfg)?.popular {
        return Err(Error::NotPopular);
    }
    let base = m.partner_ranks(inst);
    let size = m.len();
    let mut dominant = true;
    for_each_matching(inst, |mate, ranks| {
        let len = mate.iter().filter(|x| x.is_some()).count() / 2;
        if len > size && delta_ranks(&base, ranks) <= 0 {
            dominant = false;
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    Ok(dominant)
}

/// Every popular matching, in enumeration order. Compares all pairs, so the
/// pairwise cap applies.
pub fn popular_matchings_exhaustive(
    inst: &Instance,
    cfg: &ExhaustiveConfig,
) -> Result<Vec<Matching>> {
    check_cap(inst, cfg.pairwise_cap)?;
    let mut all: Vec<(Vec<Option<VertexId>>, Vec<u32>)> = Vec::new();
    for_each_matching(inst, |mate, ranks| {
        all.push((mate.to_vec(), ranks.to_vec()));
        ControlFlow::Continue(())
    });
    Ok(all
        .iter()
        .filter(|(_, r)| all.iter().all(|(_, other)| delta_ranks(other, r) <= 0))
        .map(|(mate, _)| Matching::from_mate_unchecked(mate.clone()))
        .collect())
}

/// Edges contained in at least one popular matching, in canonical order.
pub fn popular_edges_exhaustive(
    inst: &Instance,
    cfg: &ExhaustiveConfig,
) -> Result<Vec<(VertexId, VertexId)>> {
    let popular = popular_matchings_exhaustive(inst, cfg)?;
    Ok(inst
        .edges()
        .iter()
        .filter(|e| popular.iter().any(|m| m.contains(e.u, e.v)))
        .map(|e| (e.u, e.v))
        .collect())
}

/// Connected components of the popular subgraph (all vertices, popular
/// edges), each sorted, ordered by smallest member.
pub fn popular_subgraph_components(
    inst: &Instance,
    cfg: &ExhaustiveConfig,
) -> Result<Vec<Vec<VertexId>>> {
    let edges = popular_edges_exhaustive(inst, cfg)?;
    Ok(components(inst.len(), &edges))
}

pub(crate) fn components(n: usize, edges: &[(VertexId, VertexId)]) -> Vec<Vec<VertexId>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut c = x;
        while p[c] != r {
            let next = p[c];
            p[c] = r;
            c = next;
        }
        r
    }
    for &(u, v) in edges {
        let (a, b) = (find(&mut parent, u.index()), find(&mut parent, v.index()));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: Vec<Vec<VertexId>> = vec![Vec::new(); n];
    for x in 0..n {
        let r = find(&mut parent, x);
        groups[r].push(VertexId(x as u32));
    }
    groups.into_iter().filter(|g| !g.is_empty()).collect()
}
