//! Popularity and dominance checks.
//!
//! [`best_response`] and [`hk_verify`] are polynomial and need a bipartite
//! instance; the enumeration oracles in [`exhaustive`] work on anything
//! small enough.

pub mod exhaustive;
pub mod hk;
pub mod maxweight;

pub use exhaustive::{
    all_matchings, for_each_matching, is_dominant_exhaustive, is_popular_exhaustive,
    max_delta_exhaustive, popular_edges_exhaustive, popular_matchings_exhaustive,
    popular_subgraph_components, ExhaustiveConfig, ExhaustiveVerdict,
};
pub use hk::{hk_verify, HkViolation, HkViolationKind};
pub use maxweight::max_weight_bipartite;

use crate::error::Result;
use crate::instance::{check_matching, edge_weight, wt_self, Instance, Matching, Side};

/// The largest margin any matching has over `M`, and a matching attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BestResponse {
    pub max_delta: i64,
    pub witness_matching: Matching,
}

impl BestResponse {
    pub fn is_popular(&self) -> bool {
        self.max_delta == 0
    }
}

/// Maximizes `delta(N, M)` over all matchings `N`.
///
/// `delta(N, M)` is the `wt_M` weight of `N` plus `wt_self` of every vertex
/// `N` leaves unmatched. Moving the self weights onto the edges gives
/// `sum_u wt_self(u) + max_N sum_{(u,v) in N} (wt_M(u,v) - wt_self(u) - wt_self(v))`,
/// an ordinary maximum-weight bipartite matching problem.
pub fn best_response(inst: &Instance, m: &Matching) -> Result<BestResponse> {
    let sides = inst.bipartition()?;
    check_matching(inst, m)?;
    // local indices per side
    let mut local = vec![0usize; inst.len()];
    let mut lefts = Vec::new();
    let mut rights = Vec::new();
    for v in inst.vertices() {
        let list = if sides[v.index()] == Side::Left {
            &mut lefts
        } else {
            &mut rights
        };
        local[v.index()] = list.len();
        list.push(v);
    }
    let ranks = m.partner_ranks(inst);
    let edges: Vec<(usize, usize, i64)> = inst
        .edges()
        .iter()
        .map(|e| {
            let w = edge_weight(e, &ranks) - wt_self(m, e.u) - wt_self(m, e.v);
            let (l, r) = if sides[e.u.index()] == Side::Left {
                (e.u, e.v)
            } else {
                (e.v, e.u)
            };
            (local[l.index()], local[r.index()], i64::from(w))
        })
        .collect();
    let (value, chosen) = max_weight_bipartite(lefts.len(), rights.len(), &edges)?;
    let base: i64 = inst.vertices().map(|v| i64::from(wt_self(m, v))).sum();
    let witness_matching =
        Matching::from_pairs(inst, chosen.into_iter().map(|(l, r)| (lefts[l], rights[r])))?;
    Ok(BestResponse {
        max_delta: base + value,
        witness_matching,
    })
}
