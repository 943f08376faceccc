//! Dual certificates of popularity in bipartite instances.
//!
//! A witness for `M` is a vector `α` with `Σ α = 0`, `α_a + α_b >= wt_M(a, b)`
//! on every edge and `α_u >= wt_self(u)` on every vertex. A matching is
//! popular iff it has one, and then it has one with values in `{-1, 0, 1}`,
//! which is the only domain accepted here.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{check_matching, edge_weight, wt_self, Instance, Matching, VertexId};
use crate::stable::stable_vertex_set;

/// Per-vertex values in `{-1, 0, 1}`, indexed by vertex id.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WitnessVector(Vec<i8>);

impl WitnessVector {
    pub fn from_values<I: IntoIterator<Item = i64>>(values: I) -> Result<WitnessVector> {
        values
            .into_iter()
            .map(|x| match x {
                -1..=1 => Ok(x as i8),
                _ => Err(Error::WitnessRange(x)),
            })
            .collect::<Result<Vec<_>>>()
            .map(WitnessVector)
    }

    pub fn zeros(n: usize) -> WitnessVector {
        WitnessVector(vec![0; n])
    }

    pub fn get(&self, v: VertexId) -> i8 {
        self.0[v.index()]
    }

    pub fn set(&mut self, v: VertexId, x: i8) -> Result<()> {
        if !(-1..=1).contains(&x) {
            return Err(Error::WitnessRange(i64::from(x)));
        }
        self.0[v.index()] = x;
        Ok(())
    }

    pub fn values(&self) -> &[i8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sum(&self) -> i64 {
        self.0.iter().map(|&x| i64::from(x)).sum()
    }
}

/// One failed witness constraint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WitnessViolation {
    SumNonZero {
        sum: i64,
    },
    EdgeUncovered {
        u: String,
        v: String,
        weight: i32,
        cover: i32,
    },
    SelfUncovered {
        vertex: String,
        value: i8,
    },
}

/// Every violated constraint; an empty list means `α` certifies `M`.
pub fn check_witness(
    inst: &Instance,
    m: &Matching,
    alpha: &WitnessVector,
) -> Result<Vec<WitnessViolation>> {
    inst.bipartition()?;
    check_matching(inst, m)?;
    if alpha.len() != inst.len() {
        return Err(Error::WitnessLength {
            got: alpha.len(),
            expected: inst.len(),
        });
    }
    let mut out = Vec::new();
    let sum = alpha.sum();
    if sum != 0 {
        out.push(WitnessViolation::SumNonZero { sum });
    }
    let ranks = m.partner_ranks(inst);
    for e in inst.edges() {
        let weight = edge_weight(e, &ranks);
        let cover = i32::from(alpha.get(e.u)) + i32::from(alpha.get(e.v));
        if cover < weight {
            out.push(WitnessViolation::EdgeUncovered {
                u: inst.name(e.u).to_string(),
                v: inst.name(e.v).to_string(),
                weight,
                cover,
            });
        }
    }
    for v in inst.vertices() {
        if i32::from(alpha.get(v)) < wt_self(m, v) {
            out.push(WitnessViolation::SelfUncovered {
                vertex: inst.name(v).to_string(),
                value: alpha.get(v),
            });
        }
    }
    Ok(out)
}

/// Default number of bound updates [`find_witness`] may spend.
pub const DEFAULT_WITNESS_BUDGET: u64 = 50_000_000;

/// The lexicographically least witness (canonical vertex order, `-1 < 0 < 1`)
/// or `None` when `M` is not popular.
///
/// Given edge coverage, `Σ α` equals the slack summed over matched edges and
/// unmatched vertices, so `Σ α = 0` forces `α_a = -α_b` on matched edges and
/// `α_u = 0` on unmatched vertices. With the right side negated every
/// constraint is then a difference constraint, for which interval bounds
/// propagation decides feasibility exactly. Values are fixed greedily in
/// canonical order, each time keeping the smallest value whose propagation
/// does not empty a domain.
pub fn find_witness(inst: &Instance, m: &Matching, budget: u64) -> Result<Option<WitnessVector>> {
    inst.bipartition()?;
    check_matching(inst, m)?;
    let mut search = Search::new(inst, m, budget);
    if !search.propagate_all()? {
        return Ok(None);
    }
    for v in inst.vertices() {
        let i = v.index();
        if search.lo[i] == search.hi[i] {
            continue;
        }
        let saved = (search.lo.clone(), search.hi.clone());
        let mut fixed = false;
        for x in search.lo[i]..=search.hi[i] {
            search.lo[i] = x;
            search.hi[i] = x;
            if search.propagate_from(i)? {
                fixed = true;
                break;
            }
            search.lo.clone_from(&saved.0);
            search.hi.clone_from(&saved.1);
        }
        if !fixed {
            return Err(Error::Internal(format!(
                "no value for {} after consistent propagation",
                inst.name(v)
            )));
        }
    }
    WitnessVector::from_values(search.lo.iter().map(|&x| i64::from(x))).map(Some)
}

struct Search {
    lo: Vec<i8>,
    hi: Vec<i8>,
    /// adj[u] = (v, weight of (u, v), matched)
    adj: Vec<Vec<(usize, i8, bool)>>,
    budget: u64,
    spent: u64,
}

impl Search {
    fn new(inst: &Instance, m: &Matching, budget: u64) -> Search {
        let n = inst.len();
        let ranks = m.partner_ranks(inst);
        let mut adj = vec![Vec::new(); n];
        for e in inst.edges() {
            let w = edge_weight(e, &ranks) as i8;
            let matched = m.contains(e.u, e.v);
            adj[e.u.index()].push((e.v.index(), w, matched));
            adj[e.v.index()].push((e.u.index(), w, matched));
        }
        let mut lo = vec![-1i8; n];
        let mut hi = vec![1i8; n];
        for v in inst.vertices() {
            if !m.is_matched(v) {
                lo[v.index()] = 0;
                hi[v.index()] = 0;
            }
        }
        Search {
            lo,
            hi,
            adj,
            budget,
            spent: 0,
        }
    }

    fn propagate_all(&mut self) -> Result<bool> {
        let all: Vec<usize> = (0..self.lo.len()).collect();
        self.run(all)
    }

    fn propagate_from(&mut self, v: usize) -> Result<bool> {
        self.run(vec![v])
    }

    /// Tightens bounds to a fixpoint; false when some domain empties.
    fn run(&mut self, start: Vec<usize>) -> Result<bool> {
        let n = self.lo.len();
        let mut queued = vec![false; n];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for v in start {
            if !queued[v] {
                queued[v] = true;
                queue.push_back(v);
            }
        }
        while let Some(u) = queue.pop_front() {
            queued[u] = false;
            for k in 0..self.adj[u].len() {
                self.spent += 1;
                if self.spent > self.budget {
                    return Err(Error::BudgetExhausted(self.budget));
                }
                let (v, w, matched) = self.adj[u][k];
                let mut changed = false;
                // α_v >= w - α_u
                let need = w - self.hi[u];
                if need > self.lo[v] {
                    self.lo[v] = need;
                    changed = true;
                }
                if matched {
                    // α_v = -α_u
                    if -self.lo[u] < self.hi[v] {
                        self.hi[v] = -self.lo[u];
                        changed = true;
                    }
                    if -self.hi[u] > self.lo[v] {
                        self.lo[v] = -self.hi[u];
                        changed = true;
                    }
                }
                if self.lo[v] > self.hi[v] {
                    return Ok(false);
                }
                if changed && !queued[v] {
                    queued[v] = true;
                    queue.push_back(v);
                }
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ComponentState {
    /// Every value is 0.
    Stable,
    /// Every value is ±1.
    Dominant,
    Mixed,
}

/// Classifies each vertex group by its witness values.
pub fn component_states(
    alpha: &WitnessVector,
    components: &[Vec<VertexId>],
) -> Vec<ComponentState> {
    components
        .iter()
        .map(|c| {
            if c.iter().all(|&v| alpha.get(v) == 0) {
                ComponentState::Stable
            } else if c.iter().all(|&v| alpha.get(v) != 0) {
                ComponentState::Dominant
            } else {
                ComponentState::Mixed
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TightnessViolation {
    /// A popular edge covered strictly.
    SlackPopularEdge {
        u: String,
        v: String,
        weight: i32,
        cover: i32,
    },
    /// A vertex left unmatched by stable matchings whose value is not
    /// `wt_self`.
    UnstableVertex {
        vertex: String,
        matched: bool,
        value: i8,
    },
}

/// Checks that `α` is tight on every given popular edge and that each
/// vertex outside the stable vertex set has `α_u = wt_self(u)`.
pub fn popular_edge_tightness_check(
    inst: &Instance,
    m: &Matching,
    alpha: &WitnessVector,
    popular_edges: &[(VertexId, VertexId)],
) -> Result<Vec<TightnessViolation>> {
    check_matching(inst, m)?;
    let ranks = m.partner_ranks(inst);
    let mut out = Vec::new();
    for &(u, v) in popular_edges {
        let rec = inst
            .edges()
            .iter()
            .find(|e| (e.u, e.v) == (u.min(v), u.max(v)))
            .ok_or_else(|| Error::NotAnEdge {
                u: inst.name(u).to_string(),
                v: inst.name(v).to_string(),
            })?;
        let weight = edge_weight(rec, &ranks);
        let cover = i32::from(alpha.get(u)) + i32::from(alpha.get(v));
        if cover != weight {
            out.push(TightnessViolation::SlackPopularEdge {
                u: inst.name(u).to_string(),
                v: inst.name(v).to_string(),
                weight,
                cover,
            });
        }
    }
    let stable = stable_vertex_set(inst)?;
    for v in inst.vertices().filter(|v| stable.binary_search(v).is_err()) {
        if i32::from(alpha.get(v)) != wt_self(m, v) {
            out.push(TightnessViolation::UnstableVertex {
                vertex: inst.name(v).to_string(),
                matched: m.is_matched(v),
                value: alpha.get(v),
            });
        }
    }
    Ok(out)
}
