//! Worked examples checked against brute-force computations done here.

mod common;

use popmatch::io::parse_instance;
use popmatch::reduction::{build_reduction, parse_formula, Assignment};
use popmatch::satdecide::{decide_popular_exhaustive, one_in_three_solutions};
use popmatch::stable::{deferred_acceptance, SideChoice};
use popmatch::verify::{
    best_response, hk_verify, is_dominant_exhaustive, is_popular_exhaustive, max_weight_bipartite,
    popular_edges_exhaustive, popular_matchings_exhaustive, ExhaustiveConfig, HkViolationKind,
};
use popmatch::witness::{check_witness, find_witness, WitnessVector, DEFAULT_WITNESS_BUDGET};
use popmatch::{delta, Instance, Matching};

fn level_one() -> Instance {
    parse_instance("vertices: 4\nx: y > yp side: L\nxp: y > yp side: L\ny: x > xp side: R\nyp: x > xp side: R\n")
        .unwrap()
}

fn d_gadget() -> Instance {
    parse_instance(
        "vertices: 4\nd0: d1 > d2 > d3\nd1: d2 > d3 > d0\nd2: d3 > d1 > d0\nd3: d1 > d2 > d0\n",
    )
    .unwrap()
}

#[test]
fn two_by_two_weights_match_enumeration() {
    let w = [[3i64, 1], [2, 4]];
    // all 7 matchings of the complete 2x2 graph
    let mut best = 0;
    let singles = [(0, 0), (0, 1), (1, 0), (1, 1)];
    for &(a, b) in &singles {
        best = best.max(w[a][b]);
    }
    best = best.max(w[0][0] + w[1][1]).max(w[0][1] + w[1][0]);
    let edges: Vec<(usize, usize, i64)> = singles.iter().map(|&(a, b)| (a, b, w[a][b])).collect();
    let (value, chosen) = max_weight_bipartite(2, 2, &edges).unwrap();
    assert_eq!(value, best);
    assert_eq!(value, 7);
    assert_eq!(chosen, vec![(0, 0), (1, 1)]);
}

#[test]
fn level_one_vote_counts() {
    let inst = level_one();
    let crossed = Matching::from_names(&inst, &[("x", "yp"), ("xp", "y")]).unwrap();
    let straight = Matching::from_names(&inst, &[("x", "y"), ("xp", "yp")]).unwrap();
    // x and y prefer straight, x' and y' prefer crossed
    assert_eq!(common::naive_delta(&inst, &crossed, &straight), 0);
    assert_eq!(delta(&inst, &crossed, &straight).unwrap(), 0);
    let single = Matching::from_names(&inst, &[("x", "y")]).unwrap();
    let br = best_response(&inst, &single).unwrap();
    assert_eq!(br.max_delta, common::naive_delta(&inst, &straight, &single));
    assert_eq!(br.max_delta, 2);
}

#[test]
fn level_one_unpopular_single_edge() {
    let inst = level_one();
    let m = Matching::from_names(&inst, &[("x", "y")]).unwrap();
    let v = hk_verify(&inst, &m).unwrap().unwrap();
    assert_eq!(v.kind, HkViolationKind::PathFromUnmatchedWithBlocking);
    assert_eq!(
        find_witness(&inst, &m, DEFAULT_WITNESS_BUDGET).unwrap(),
        None
    );
}

#[test]
fn level_one_dominant_state_witness() {
    let inst = level_one();
    let m = Matching::from_names(&inst, &[("x", "yp"), ("xp", "y")]).unwrap();
    let id = |n| inst.id(n).unwrap();
    let mut alpha = WitnessVector::zeros(4);
    for (n, x) in [("x", 1), ("y", 1), ("xp", -1), ("yp", -1)] {
        alpha.set(id(n), x).unwrap();
    }
    assert!(check_witness(&inst, &m, &alpha).unwrap().is_empty());
    let zero = check_witness(&inst, &m, &WitnessVector::zeros(4)).unwrap();
    assert_eq!(zero.len(), 1);
}

#[test]
fn d_gadget_popular_set_and_edges() {
    let d = d_gadget();
    let cfg = ExhaustiveConfig::default();
    let all = common::naive_matchings(&d);
    assert_eq!(all.len(), 10);
    let naive: Vec<Matching> = all
        .iter()
        .filter(|m| common::naive_popular(&d, &all, m))
        .cloned()
        .collect();
    let lib = popular_matchings_exhaustive(&d, &cfg).unwrap();
    assert_eq!(naive.len(), lib.len());
    assert!(naive.iter().all(|m| lib.contains(m)));
    let edges = popular_edges_exhaustive(&d, &cfg).unwrap();
    let named: Vec<(&str, &str)> = edges.iter().map(|&(u, v)| (d.name(u), d.name(v))).collect();
    assert_eq!(
        named,
        [("d0", "d1"), ("d0", "d2"), ("d1", "d3"), ("d2", "d3")]
    );
    let first = decide_popular_exhaustive(&d, &cfg).unwrap().unwrap();
    assert!(lib.contains(&first));
}

#[test]
fn three_cycle_golden() {
    let tri = parse_instance("vertices: 3\na: b > c\nb: c > a\nc: a > b\n").unwrap();
    let cfg = ExhaustiveConfig::default();
    let all = common::naive_matchings(&tri);
    let naive_first = all
        .iter()
        .find(|m| common::naive_popular(&tri, &all, m))
        .cloned();
    let lib = decide_popular_exhaustive(&tri, &cfg).unwrap();
    assert_eq!(naive_first.is_some(), lib.is_some());
    // every single edge loses to the edge its outsider ranks first: no popular matching
    assert_eq!(lib, None);
}

#[test]
fn single_edge_instance() {
    let inst = parse_instance("vertices: 2\nu: v\nv: u\n").unwrap();
    let cfg = ExhaustiveConfig::default();
    let m = decide_popular_exhaustive(&inst, &cfg).unwrap().unwrap();
    assert_eq!(m.named_pairs(&inst), [("u".to_string(), "v".to_string())]);
    assert!(
        !is_popular_exhaustive(&inst, &Matching::empty(2), &cfg)
            .unwrap()
            .popular
    );
}

#[test]
fn perfect_matchings_are_dominant_when_popular() {
    let inst = level_one();
    let cfg = ExhaustiveConfig::default();
    for m in common::naive_matchings(&inst) {
        if m.len() == 2 && common::naive_popular(&inst, &common::naive_matchings(&inst), &m) {
            assert!(is_dominant_exhaustive(&inst, &m, &cfg).unwrap());
        }
    }
}

#[test]
fn stable_matching_witness_is_zero() {
    let inst = level_one();
    let s = deferred_acceptance(&inst, SideChoice::Left).unwrap();
    assert!(check_witness(&inst, &s, &WitnessVector::zeros(4))
        .unwrap()
        .is_empty());
}

/// Brute-force perfect matchings of a gadget inside `H`.
fn gadget_perfect_matchings(inst: &Instance, names: &[String]) -> usize {
    let ids: Vec<_> = names.iter().map(|n| inst.id(n).unwrap()).collect();
    let sub = inst.induced(&ids).unwrap();
    common::naive_matchings(&sub)
        .iter()
        .filter(|m| 2 * m.len() == sub.len())
        .count()
}

#[test]
fn gadget_option_counts_match_perfect_matchings() {
    let red = build_reduction(&parse_formula("X1 X2 X3").unwrap()).unwrap();
    for g in &red.layout.gadgets {
        assert_eq!(
            gadget_perfect_matchings(&red.h, &g.vertices),
            g.options.len(),
            "{:?}",
            g.kind
        );
    }
    let counts: Vec<usize> = red.layout.gadgets.iter().map(|g| g.options.len()).collect();
    assert_eq!(counts, [2, 2, 2, 2, 2, 2, 3, 3, 3, 3]);
    assert_eq!(counts.iter().product::<usize>(), 5184);
}

#[test]
fn one_in_three_two_clause_enumeration() {
    let f = parse_formula("a b c\na b d").unwrap();
    let mut expected = Vec::new();
    for mask in 0u32..16 {
        let v: Vec<bool> = (0..4).map(|i| mask >> i & 1 == 1).collect();
        let ones = |c: [usize; 3]| c.iter().filter(|&&i| v[i]).count();
        if ones([0, 1, 2]) == 1 && ones([0, 1, 3]) == 1 {
            expected.push(Assignment(v));
        }
    }
    // a alone, b alone, or c and d together
    assert_eq!(expected.len(), 3);
    assert_eq!(one_in_three_solutions(&f).unwrap(), expected);
}
