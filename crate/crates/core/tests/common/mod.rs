//! Generators and naive oracles shared by the integration tests.
#![allow(dead_code)]

use popmatch::reduction::Formula;
use popmatch::{Instance, Matching, Side, VertexId};
use rand::seq::SliceRandom;
use rand::Rng;

/// Bipartite instance `l0..l{a}` / `r0..r{b}` from an edge set and per-vertex
/// list orders given as permutations of the neighbor sets.
pub fn bipartite(left: usize, right: usize, lists: Vec<Vec<usize>>) -> Instance {
    let name = |i: usize| {
        if i < left {
            format!("l{i}")
        } else {
            format!("r{}", i - left)
        }
    };
    let names = (0..left + right).map(name).collect();
    let prefs = lists
        .into_iter()
        .map(|l| l.into_iter().map(name).collect())
        .collect();
    let sides = (0..left + right)
        .map(|i| if i < left { Side::Left } else { Side::Right })
        .collect();
    Instance::new(names, prefs, Some(sides)).unwrap()
}

pub fn random_bipartite<R: Rng>(rng: &mut R, left: usize, right: usize, density: f64) -> Instance {
    let mut lists = vec![Vec::new(); left + right];
    for l in 0..left {
        for r in 0..right {
            if rng.gen_bool(density) {
                lists[l].push(left + r);
                lists[left + r].push(l);
            }
        }
    }
    for l in &mut lists {
        l.shuffle(rng);
    }
    bipartite(left, right, lists)
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let x = rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Every preference instance on two left and two right vertices: each edge
/// subset of the complete bipartite graph with each ordering of every list.
pub fn all_two_by_two() -> Vec<Instance> {
    let pairs = [(0, 2), (0, 3), (1, 2), (1, 3)];
    let mut out = Vec::new();
    for mask in 0u32..16 {
        let mut nbrs = vec![Vec::new(); 4];
        for (k, &(a, b)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                nbrs[a].push(b);
                nbrs[b].push(a);
            }
        }
        let options: Vec<Vec<Vec<usize>>> = nbrs.iter().map(|n| permutations(n)).collect();
        let mut idx = [0usize; 4];
        loop {
            let lists = (0..4).map(|v| options[v][idx[v]].clone()).collect();
            out.push(bipartite(2, 2, lists));
            let mut k = 0;
            while k < 4 {
                idx[k] += 1;
                if idx[k] < options[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == 4 {
                break;
            }
        }
    }
    out
}

/// Matchings enumerated by always deciding the lowest undecided vertex:
/// either it stays single or it pairs with a later undecided neighbor.
pub fn naive_matchings(inst: &Instance) -> Vec<Matching> {
    fn rec(
        inst: &Instance,
        v: usize,
        decided: &mut Vec<bool>,
        pairs: &mut Vec<(VertexId, VertexId)>,
        out: &mut Vec<Matching>,
    ) {
        let n = inst.len();
        let mut v = v;
        while v < n && decided[v] {
            v += 1;
        }
        if v == n {
            out.push(Matching::from_pairs(inst, pairs.clone()).unwrap());
            return;
        }
        decided[v] = true;
        rec(inst, v + 1, decided, pairs, out);
        let vid = VertexId(v as u32);
        for &w in inst.prefs(vid) {
            if !decided[w.index()] {
                decided[w.index()] = true;
                pairs.push((vid, w));
                rec(inst, v + 1, decided, pairs, out);
                pairs.pop();
                decided[w.index()] = false;
            }
        }
        decided[v] = false;
    }
    let mut out = Vec::new();
    rec(
        inst,
        0,
        &mut vec![false; inst.len()],
        &mut Vec::new(),
        &mut out,
    );
    out
}

/// Position of `choice` in `v`'s list, the list length when single.
fn position(inst: &Instance, v: VertexId, choice: Option<VertexId>) -> usize {
    match choice {
        Some(w) => inst.prefs(v).iter().position(|&x| x == w).unwrap(),
        None => inst.prefs(v).len(),
    }
}

/// Head-count of vertices preferring `a` minus those preferring `b`.
pub fn naive_delta(inst: &Instance, a: &Matching, b: &Matching) -> i64 {
    inst.vertices()
        .map(|v| {
            let (pa, pb) = (
                position(inst, v, a.partner(v)),
                position(inst, v, b.partner(v)),
            );
            (pb as i64 - pa as i64).signum()
        })
        .sum()
}

pub fn naive_popular(inst: &Instance, all: &[Matching], m: &Matching) -> bool {
    all.iter().all(|other| naive_delta(inst, other, m) <= 0)
}

pub fn naive_stable(inst: &Instance, m: &Matching) -> bool {
    inst.vertices().all(|u| {
        inst.prefs(u).iter().all(|&v| {
            let u_wants = position(inst, u, Some(v)) < position(inst, u, m.partner(u));
            let v_wants = position(inst, v, Some(u)) < position(inst, v, m.partner(v));
            !(u_wants && v_wants)
        })
    })
}

/// Random positive 3CNF with `n` variables named `v1..vn` (not all need
/// to occur) and `m` clauses over distinct variables.
pub fn random_formula<R: Rng>(rng: &mut R, n: usize, m: usize) -> Formula {
    let vars: Vec<usize> = (0..n).collect();
    let clauses: Vec<[usize; 3]> = (0..m)
        .map(|_| {
            let c: Vec<usize> = vars.choose_multiple(rng, 3).copied().collect();
            [c[0], c[1], c[2]]
        })
        .collect();
    let text: String = clauses
        .iter()
        .map(|c| format!("v{} v{} v{}\n", c[0] + 1, c[1] + 1, c[2] + 1))
        .collect();
    popmatch::reduction::parse_formula(&text).unwrap()
}

/// Every formula whose clauses are distinct sorted triples over `n`
/// variables, with between 1 and `max_clauses` clauses.
pub fn all_formulas(n: usize, max_clauses: usize) -> Vec<Formula> {
    let mut triples = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                triples.push([a, b, c]);
            }
        }
    }
    let mut out = Vec::new();
    fn rec(
        triples: &[[usize; 3]],
        start: usize,
        max: usize,
        cur: &mut Vec<[usize; 3]>,
        out: &mut Vec<Formula>,
    ) {
        if !cur.is_empty() {
            let text: String = cur
                .iter()
                .map(|c| format!("v{} v{} v{}\n", c[0] + 1, c[1] + 1, c[2] + 1))
                .collect();
            out.push(popmatch::reduction::parse_formula(&text).unwrap());
        }
        if cur.len() == max {
            return;
        }
        for i in start..triples.len() {
            cur.push(triples[i]);
            rec(triples, i + 1, max, cur, out);
            cur.pop();
        }
    }
    rec(&triples, 0, max_clauses, &mut Vec::new(), &mut out);
    out
}
