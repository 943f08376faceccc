//! Deferred acceptance on bipartite instances and the stable/unstable vertex
//! split it induces.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{is_stable, Instance, Matching, Side, VertexId};
use crate::reduction::{GadgetKind, Reduction};

/// Which side of the bipartition makes proposals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SideChoice {
    Left,
    Right,
}

impl From<SideChoice> for Side {
    fn from(s: SideChoice) -> Side {
        match s {
            SideChoice::Left => Side::Left,
            SideChoice::Right => Side::Right,
        }
    }
}

/// The proposing-side-optimal stable matching.
///
/// Proposers are queued in canonical order and rejected proposers re-enter
/// at the back of the queue. The output does not depend on that order.
pub fn deferred_acceptance(inst: &Instance, side: SideChoice) -> Result<Matching> {
    let sides = inst.bipartition()?;
    let proposing: Side = side.into();
    let n = inst.len();
    // next[v]: index into v's list of the next proposal
    let mut next = vec![0usize; n];
    let mut held: Vec<Option<VertexId>> = vec![None; n];
    let mut queue: VecDeque<VertexId> = inst
        .vertices()
        .filter(|v| sides[v.index()] == proposing)
        .collect();

    while let Some(p) = queue.pop_front() {
        let list = inst.prefs(p);
        while next[p.index()] < list.len() {
            let r = list[next[p.index()]];
            next[p.index()] += 1;
            let Some(rank_p) = inst.rank(r, p) else {
                continue;
            };
            match held[r.index()] {
                None => {
                    held[r.index()] = Some(p);
                    break;
                }
                Some(cur) => {
                    if rank_p < inst.rank(r, cur).expect("held proposer is listed") {
                        held[r.index()] = Some(p);
                        queue.push_back(cur);
                        break;
                    }
                }
            }
        }
    }

    let pairs = inst
        .vertices()
        .filter_map(|r| held[r.index()].map(|p| (p, r)));
    let m = Matching::from_pairs(inst, pairs)?;
    debug_assert!(is_stable(inst, &m));
    Ok(m)
}

/// Vertices matched in a stable matching. Both proposing sides are run and
/// their matched sets must coincide.
pub fn stable_vertex_set(inst: &Instance) -> Result<Vec<VertexId>> {
    let left = deferred_acceptance(inst, SideChoice::Left)?;
    let right = deferred_acceptance(inst, SideChoice::Right)?;
    let a: Vec<VertexId> = inst.vertices().filter(|&v| left.is_matched(v)).collect();
    let b: Vec<VertexId> = inst.vertices().filter(|&v| right.is_matched(v)).collect();
    if a != b {
        return Err(Error::Internal(
            "left- and right-optimal stable matchings cover different vertices".into(),
        ));
    }
    Ok(a)
}

/// The matching on `G_0` with every gadget in its stable configuration:
/// `(x, y), (x', y')` per variable, straight pairs in level-0 gadgets,
/// `(p_t, q_t)` in level-2 gadgets and `(s_i, t_i)` for `i = 1..3` in the
/// level-3 gadget. `z` and every `s_0, t_0` stay unmatched.
pub fn canonical_stable_matching_g0(red: &Reduction) -> Result<Matching> {
    let g0 = &red.g0;
    let mut pairs = Vec::new();
    for gadget in &red.layout.gadgets {
        if let GadgetKind::LevelThree { .. } = gadget.kind {
            for i in 1..=3 {
                let member = |r: String| {
                    gadget
                        .member(&r)
                        .ok_or_else(|| Error::Internal(format!("level-3 gadget lacks {r}")))
                };
                pairs.push((
                    g0.id(member(format!("s{i}"))?)?,
                    g0.id(member(format!("t{i}"))?)?,
                ));
            }
        } else {
            for (a, b) in &gadget.options[0] {
                pairs.push((g0.id(a)?, g0.id(b)?));
            }
        }
    }
    Matching::from_pairs(g0, pairs)
}
