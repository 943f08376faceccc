//! Brute-force 1-in-3 SAT, the gadget-restricted search for desired popular
//! matchings of `H`, and dominance checks on `G_0`.

use std::collections::VecDeque;
use std::ops::ControlFlow;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{
    check_matching, delta_ranks, edge_weight, Instance, Matching, Side, VertexId,
};
use crate::reduction::{
    g0_to_h, level_vertices, matching_from_options, Assignment, Formula, Reduction,
};
use crate::verify::{best_response, for_each_matching, hk_verify, ExhaustiveConfig};

/// Largest variable count [`one_in_three_solutions`] enumerates.
pub const SAT_VARIABLE_LIMIT: usize = 24;

/// Every assignment making exactly one variable true per clause, in
/// increasing order of the bit mask with the first variable as bit 0.
pub fn one_in_three_solutions(formula: &Formula) -> Result<Vec<Assignment>> {
    let n = formula.variables.len();
    if n > SAT_VARIABLE_LIMIT {
        return Err(Error::TooManyVariables {
            got: n,
            limit: SAT_VARIABLE_LIMIT,
        });
    }
    let clause_masks: Vec<u32> = formula
        .clauses
        .iter()
        .map(|c| c.iter().fold(0u32, |acc, &v| acc | (1 << v)))
        .collect();
    Ok((0u32..(1u32 << n))
        .filter(|mask| clause_masks.iter().all(|c| (mask & c).count_ones() == 1))
        .map(|mask| Assignment((0..n).map(|i| mask >> i & 1 == 1).collect()))
        .collect())
}

/// The product of per-gadget option tables, gadget 0 varying fastest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateSpace {
    pub radices: Vec<usize>,
}

impl CandidateSpace {
    pub fn new(red: &Reduction) -> CandidateSpace {
        CandidateSpace {
            radices: red.layout.gadgets.iter().map(|g| g.options.len()).collect(),
        }
    }

    /// Number of candidates, saturating at `u128::MAX`.
    pub fn count(&self) -> u128 {
        self.radices
            .iter()
            .fold(1u128, |acc, &r| acc.saturating_mul(r as u128))
    }

    /// Option indices of candidate `index`.
    pub fn digits(&self, mut index: u128) -> Vec<usize> {
        self.radices
            .iter()
            .map(|&r| {
                let d = (index % r as u128) as usize;
                index /= r as u128;
                d
            })
            .collect()
    }

    /// Candidate index of a digit vector.
    pub fn index(&self, digits: &[usize]) -> u128 {
        digits
            .iter()
            .zip(&self.radices)
            .rev()
            .fold(0u128, |acc, (&d, &r)| acc * r as u128 + d as u128)
    }

    pub fn random_digits<R: Rng>(&self, rng: &mut R) -> Vec<usize> {
        self.radices.iter().map(|&r| rng.gen_range(0..r)).collect()
    }
}

/// Gadget-restricted matchings of `H` in candidate order.
pub struct CandidateIterator<'a> {
    red: &'a Reduction,
    space: CandidateSpace,
    next: u128,
    end: u128,
}

impl Iterator for CandidateIterator<'_> {
    type Item = Matching;

    fn next(&mut self) -> Option<Matching> {
        if self.next >= self.end {
            return None;
        }
        let digits = self.space.digits(self.next);
        self.next += 1;
        Some(matching_from_options(self.red, &digits).expect("gadget options are edges of H"))
    }
}

pub fn enumerate_gadget_matchings(red: &Reduction) -> CandidateIterator<'_> {
    let space = CandidateSpace::new(red);
    let end = space.count();
    CandidateIterator {
        red,
        space,
        next: 0,
        end,
    }
}

/// A candidate is certified when the alternating-structure test passes and
/// the best response confirms a zero margin.
pub fn certify(h: &Instance, m: &Matching) -> Result<bool> {
    if hk_verify(h, m)?.is_some() {
        return Ok(false);
    }
    Ok(best_response(h, m)?.is_popular())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecideOutcome {
    Found {
        matching: Matching,
        digits: Vec<usize>,
        tested: u128,
    },
    ExhaustedNone {
        tested: u128,
    },
    BudgetExceeded {
        tested: u128,
    },
}

const CHUNK: u128 = 512;

/// Tests candidates in order and returns the first certified one. At most
/// `budget` candidates are tested; the answer does not depend on the number
/// of worker threads.
pub fn decide_desired_popular(red: &Reduction, budget: u128) -> Result<DecideOutcome> {
    let space = CandidateSpace::new(red);
    let total = space.count();
    let limit = total.min(budget);
    let mut start = 0u128;
    while start < limit {
        let end = (start + CHUNK).min(limit);
        let hit = (start..end)
            .map(|i| i as u64)
            .collect::<Vec<_>>()
            .into_par_iter()
            .map(|i| {
                let digits = space.digits(i as u128);
                let m = matching_from_options(red, &digits)?;
                Ok(certify(&red.h, &m)?.then_some((i as u128, m, digits)))
            })
            .find_first(|r: &Result<Option<_>>| !matches!(r, Ok(None)));
        match hit {
            Some(Ok(Some((i, matching, digits)))) => {
                return Ok(DecideOutcome::Found {
                    matching,
                    digits,
                    tested: i + 1,
                })
            }
            Some(Err(e)) => return Err(e),
            _ => {}
        }
        start = end;
    }
    if limit == total {
        Ok(DecideOutcome::ExhaustedNone { tested: total })
    } else {
        Ok(DecideOutcome::BudgetExceeded { tested: limit })
    }
}

/// Candidate indices (in order) of every certified candidate.
pub fn certified_candidates(red: &Reduction, budget: u128) -> Result<Vec<u128>> {
    let space = CandidateSpace::new(red);
    let total = space.count();
    if total > budget {
        return Err(Error::Precondition(format!(
            "{total} candidates exceed the budget of {budget}"
        )));
    }
    let found: Vec<Option<u128>> = (0..total as u64)
        .into_par_iter()
        .map(|i| {
            let m = matching_from_options(red, &space.digits(i as u128))?;
            Ok(certify(&red.h, &m)?.then_some(i as u128))
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleReport {
    pub tested: u64,
    /// Option digits of every certified sample, in sample order.
    pub certified: Vec<Vec<usize>>,
}

/// Certifies `samples` uniformly drawn candidates. Samples are drawn from a
/// single seeded stream before testing, so the report is reproducible.
pub fn sample_desired_popular(red: &Reduction, samples: u64, seed: u64) -> Result<SampleReport> {
    let space = CandidateSpace::new(red);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut certified = Vec::new();
    let mut done = 0u64;
    const BATCH: u64 = 4096;
    while done < samples {
        let n = BATCH.min(samples - done);
        let batch: Vec<Vec<usize>> = (0..n).map(|_| space.random_digits(&mut rng)).collect();
        let hits: Vec<bool> = batch
            .par_iter()
            .map(|d| certify(&red.h, &matching_from_options(red, d)?))
            .collect::<Result<_>>()?;
        certified.extend(
            batch
                .into_iter()
                .zip(hits)
                .filter(|(_, h)| *h)
                .map(|(d, _)| d),
        );
        done += n;
    }
    Ok(SampleReport {
        tested: samples,
        certified,
    })
}

/// Reads the assignment off a matching of `H`: a variable is true iff its
/// gadget uses `(x, y')` and `(x', y)`.
pub fn assignment_from_matching(red: &Reduction, m: &Matching) -> Result<Assignment> {
    let h = &red.h;
    let mut values = Vec::with_capacity(red.formula.variables.len());
    for r in 0..red.formula.variables.len() {
        let g = red.layout.variable_gadget(r);
        let id = |role: &str| h.id(g.member(role).expect("variable gadget role"));
        let (x, y, xp, yp) = (id("x")?, id("y")?, id("xp")?, id("yp")?);
        if m.contains(x, yp) && m.contains(xp, y) {
            values.push(true);
        } else if m.contains(x, y) && m.contains(xp, yp) {
            values.push(false);
        } else {
            return Err(Error::Precondition(format!(
                "variable gadget of `{}` is not perfectly matched",
                red.formula.variables[r]
            )));
        }
    }
    Ok(Assignment(values))
}

/// First popular matching in enumeration order, by comparing every pair.
pub fn decide_popular_exhaustive(
    inst: &Instance,
    cfg: &ExhaustiveConfig,
) -> Result<Option<Matching>> {
    if inst.len() > cfg.pairwise_cap {
        return Err(Error::CapExceeded {
            vertices: inst.len(),
            cap: cfg.pairwise_cap,
        });
    }
    let mut all: Vec<(Vec<Option<VertexId>>, Vec<u32>)> = Vec::new();
    for_each_matching(inst, |mate, ranks| {
        all.push((mate.to_vec(), ranks.to_vec()));
        ControlFlow::Continue(())
    });
    Ok(all
        .iter()
        .find(|(_, r)| all.iter().all(|(_, other)| delta_ranks(other, r) <= 0))
        .map(|(mate, _)| Matching::from_mate_unchecked(mate.clone())))
}

/// Outcome of a dominance check, with an augmenting path when not dominant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DominanceCheck {
    pub dominant: bool,
    pub augmenting_path: Option<Vec<String>>,
}

/// Shortest augmenting path for `m` that avoids edges both endpoints rank
/// below their partners and vertices in `exclude`. Start vertices are tried
/// in canonical order; neighbors are scanned in preference order.
pub fn augmenting_path(
    inst: &Instance,
    m: &Matching,
    exclude: &[VertexId],
) -> Result<Option<Vec<VertexId>>> {
    let sides = inst.bipartition()?;
    check_matching(inst, m)?;
    let ranks = m.partner_ranks(inst);
    let n = inst.len();
    let mut usable = vec![false; n];
    for v in inst.vertices() {
        usable[v.index()] = !exclude.contains(&v);
    }
    let nonneg = |u: VertexId, v: VertexId| {
        let e = inst
            .edges()
            .iter()
            .find(|e| (e.u, e.v) == (u.min(v), u.max(v)))
            .expect("listed neighbors are edges");
        edge_weight(e, &ranks) >= 0
    };
    for s in inst.vertices() {
        if sides[s.index()] != Side::Left || m.is_matched(s) || !usable[s.index()] {
            continue;
        }
        let mut prev: Vec<Option<VertexId>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[s.index()] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(l) = queue.pop_front() {
            for &r in inst.prefs(l) {
                if seen[r.index()] || !usable[r.index()] || m.contains(l, r) || !nonneg(l, r) {
                    continue;
                }
                seen[r.index()] = true;
                prev[r.index()] = Some(l);
                match m.partner(r) {
                    None => {
                        let mut path = vec![r];
                        let mut cur = r;
                        while let Some(p) = prev[cur.index()] {
                            path.push(p);
                            cur = p;
                        }
                        path.reverse();
                        return Ok(Some(path));
                    }
                    Some(l2) if usable[l2.index()] && !seen[l2.index()] => {
                        seen[l2.index()] = true;
                        prev[l2.index()] = Some(r);
                        queue.push_back(l2);
                    }
                    Some(_) => {}
                }
            }
        }
    }
    Ok(None)
}

/// Dominance of a popular bipartite matching: dominant iff no augmenting
/// path survives the removal of edges both endpoints rank below their
/// partners.
pub fn check_dominant_bipartite(inst: &Instance, m: &Matching) -> Result<DominanceCheck> {
    if !best_response(inst, m)?.is_popular() {
        return Err(Error::NotPopular);
    }
    let path = augmenting_path(inst, m, &[])?;
    Ok(DominanceCheck {
        dominant: path.is_none(),
        augmenting_path: path.map(|p| p.iter().map(|&v| inst.name(v).to_string()).collect()),
    })
}

/// Dominance of a popular matching of `G_0` that leaves `z` unmatched:
/// dominant iff it matches exactly the level vertices `X ∪ Y`. When it does
/// not, an augmenting path avoiding `z` is reported.
pub fn check_dominant_g0(red: &Reduction, m: &Matching) -> Result<DominanceCheck> {
    let g0 = &red.g0;
    check_matching(g0, m)?;
    if m.is_matched(g0.id("z")?) {
        return Err(Error::Precondition("z is matched".into()));
    }
    let mh = g0_to_h(red, m)?;
    let h = &red.h;
    if !best_response(h, &mh)?.is_popular() {
        return Err(Error::NotPopular);
    }
    let covers = level_vertices(red, g0).iter().all(|&v| m.is_matched(v));
    if covers {
        return Ok(DominanceCheck {
            dominant: true,
            augmenting_path: None,
        });
    }
    let exclude = [h.id("z")?, h.id("zp")?];
    let path = augmenting_path(h, &mh, &exclude)?
        .ok_or_else(|| Error::Internal("level vertex unmatched but no augmenting path".into()))?;
    Ok(DominanceCheck {
        dominant: false,
        augmenting_path: Some(path.iter().map(|&v| h.name(v).to_string()).collect()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::{build_reduction, construct_matching, parse_formula};

    #[test]
    fn one_clause_solutions() {
        let f = parse_formula("X1 X2 X3").unwrap();
        let s = one_in_three_solutions(&f).unwrap();
        let bits: Vec<Vec<bool>> = s.into_iter().map(|a| a.0).collect();
        assert_eq!(
            bits,
            vec![
                vec![true, false, false],
                vec![false, true, false],
                vec![false, false, true]
            ]
        );
        let unsat = parse_formula("a b c\na b d\na c d\nb c d").unwrap();
        assert!(one_in_three_solutions(&unsat).unwrap().is_empty());
    }

    #[test]
    fn candidate_space_of_one_clause() {
        let red = build_reduction(&parse_formula("X1 X2 X3").unwrap()).unwrap();
        let space = CandidateSpace::new(&red);
        assert_eq!(space.count(), 5184);
        let d = space.digits(4321);
        assert_eq!(space.index(&d), 4321);
        assert_eq!(space.digits(1)[0], 1);
        let first = enumerate_gadget_matchings(&red).next().unwrap();
        assert_eq!(
            assignment_from_matching(&red, &first).unwrap().0,
            vec![false; 3]
        );
    }

    #[test]
    fn round_trip_assignment() {
        let red = build_reduction(&parse_formula("a b c\nc d e").unwrap()).unwrap();
        for a in one_in_three_solutions(&red.formula).unwrap() {
            let m = construct_matching(&red, &a).unwrap();
            assert_eq!(assignment_from_matching(&red, &m).unwrap(), a);
        }
    }

    #[test]
    fn tiny_decisions() {
        let cfg = ExhaustiveConfig::default();
        let edge = crate::io::parse_instance("vertices: 2\nu: v\nv: u\n").unwrap();
        assert_eq!(
            decide_popular_exhaustive(&edge, &cfg)
                .unwrap()
                .unwrap()
                .len(),
            1
        );
        let d = crate::instance::tests::d_gadget();
        let m = decide_popular_exhaustive(&d, &cfg).unwrap().unwrap();
        assert_eq!(
            m.named_pairs(&d),
            [
                ("d0".to_string(), "d1".to_string()),
                ("d2".into(), "d3".into())
            ]
        );
    }
}
