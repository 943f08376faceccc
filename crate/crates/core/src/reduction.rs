//! Positive 3CNF formulas and the gadget instances built from them.
//!
//! For a formula with `n0` variables and `m` clauses, [`build_reduction`]
//! produces three instances over shared vertex names:
//!
//! * `G`: the roommates instance (`5 + 4 n0 + 38 m` vertices), including the
//!   four-vertex `D` gadget whose `d_0` is everybody's last resort;
//! * `G_0`: `G` without `D`;
//! * `H`: `G_0` with `z` split into `z` (neighbors on the `X` side) and `zp`
//!   (neighbors on the `Y` side), which makes it bipartite.
//!
//! Vertex names: `x_3`, `xp_3`, `y_3`, `yp_3` for variable 3; `a_c2_5`,
//! `b_c2_5`, `p_c1_7`, `q_c1_7`, `s_c1_0`, `t_c1_0` for clause gadgets;
//! `d_0`..`d_3`, `z`, `zp`. Variable and clause numbers are 1-based.
//!
//! Preference-list tails (neighbors whose relative order is free) are sorted
//! by canonical vertex order, which is generation order: `D`, `z`, variable
//! gadgets, then clause gadgets by clause, level 0 before level 2 before
//! level 3, slots left to right, roles by index.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{Instance, Matching, Side, VertexId};
use crate::witness::WitnessVector;

/// A positive 3CNF formula. Variables are listed in first-occurrence order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Formula {
    pub variables: Vec<String>,
    pub clauses: Vec<[usize; 3]>,
}

impl Formula {
    pub fn new(variables: Vec<String>, clauses: Vec<[usize; 3]>) -> Result<Formula> {
        if clauses.is_empty() {
            return Err(Error::EmptyFormula);
        }
        for (ci, c) in clauses.iter().enumerate() {
            for (k, &v) in c.iter().enumerate() {
                if v >= variables.len() {
                    return Err(Error::Precondition(format!(
                        "clause {} uses variable #{v}",
                        ci + 1
                    )));
                }
                if c[..k].contains(&v) {
                    return Err(Error::RepeatedVariableInClause {
                        clause: ci + 1,
                        name: variables[v].clone(),
                    });
                }
            }
        }
        Ok(Formula { variables, clauses })
    }

    pub fn variable_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    pub fn to_text(&self) -> String {
        self.clauses
            .iter()
            .map(|c| {
                format!(
                    "{} {} {}\n",
                    self.variables[c[0]], self.variables[c[1]], self.variables[c[2]]
                )
            })
            .collect()
    }
}

/// One clause per line, three whitespace-separated variable names. Blank
/// lines and `#` comments are skipped.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut variables: Vec<String> = Vec::new();
    let mut clauses = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let names: Vec<&str> = line.split_whitespace().collect();
        let clause_no = clauses.len() + 1;
        if names.len() != 3 {
            return Err(Error::ClauseArity {
                clause: clause_no,
                got: names.len(),
            });
        }
        let mut idx = [0usize; 3];
        for (k, n) in names.iter().enumerate() {
            if names[..k].contains(n) {
                return Err(Error::RepeatedVariableInClause {
                    clause: clause_no,
                    name: n.to_string(),
                });
            }
            idx[k] = match variables.iter().position(|v| v == n) {
                Some(i) => i,
                None => {
                    variables.push(n.to_string());
                    variables.len() - 1
                }
            };
        }
        let _ = ln;
        clauses.push(idx);
    }
    Formula::new(variables, clauses)
}

/// Truth values indexed like [`Formula::variables`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Assignment(pub Vec<bool>);

impl Assignment {
    /// Position (0, 1 or 2) of the single true variable of clause `c`.
    pub fn true_position(&self, formula: &Formula, c: usize) -> Result<usize> {
        self.check_len(formula)?;
        let clause = formula.clauses[c];
        let trues: Vec<usize> = (0..3).filter(|&k| self.0[clause[k]]).collect();
        match trues.as_slice() {
            [k] => Ok(*k),
            _ => Err(Error::NotOneInThree(c + 1)),
        }
    }

    pub fn is_one_in_three(&self, formula: &Formula) -> bool {
        self.0.len() == formula.variables.len()
            && (0..formula.clauses.len()).all(|c| self.true_position(formula, c).is_ok())
    }

    fn check_len(&self, formula: &Formula) -> Result<()> {
        if self.0.len() != formula.variables.len() {
            return Err(Error::AssignmentLength {
                got: self.0.len(),
                expected: formula.variables.len(),
            });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Level {
    Zero,
    One,
    Two,
    Three,
    D,
    Z,
    ZPrime,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Slot {
    Left,
    Middle,
    Right,
}

impl Slot {
    const ALL: [Slot; 3] = [Slot::Left, Slot::Middle, Slot::Right];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Which half of the level vertices a vertex belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Part {
    X,
    Y,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexInfo {
    pub name: String,
    pub level: Level,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variable: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clause: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slot: Option<Slot>,
    pub role: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub part: Option<Part>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum GadgetKind {
    Variable { variable: usize },
    LevelZero { clause: usize, slot: Slot },
    LevelTwo { clause: usize, slot: Slot },
    LevelThree { clause: usize },
    D,
}

/// A gadget of `H` with its perfect matchings. `options[0]` is the stable
/// configuration except for level 3, whose options pair `s_0` with `t_1`,
/// `t_2`, `t_3` respectively.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gadget {
    pub kind: GadgetKind,
    pub roles: Vec<String>,
    pub vertices: Vec<String>,
    /// Each option lists `(X vertex, Y vertex)` pairs.
    pub options: Vec<Vec<(String, String)>>,
}

impl Gadget {
    pub fn member(&self, role: &str) -> Option<&str> {
        self.roles
            .iter()
            .position(|r| r == role)
            .map(|i| self.vertices[i].as_str())
    }

    pub fn level(&self) -> Level {
        match self.kind {
            GadgetKind::Variable { .. } => Level::One,
            GadgetKind::LevelZero { .. } => Level::Zero,
            GadgetKind::LevelTwo { .. } => Level::Two,
            GadgetKind::LevelThree { .. } => Level::Three,
            GadgetKind::D => Level::D,
        }
    }
}

/// Metadata for every generated vertex plus the gadget structure of `H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionLayout {
    pub variables: Vec<String>,
    pub clauses: Vec<[usize; 3]>,
    /// Every vertex of `G` in canonical order, followed by `zp`.
    pub vertices: Vec<VertexInfo>,
    /// Gadgets of `H` in candidate order: variables, then per clause the
    /// level-0 slots, level-2 slots and the level-3 gadget.
    pub gadgets: Vec<Gadget>,
    pub x: Vec<String>,
    pub y: Vec<String>,
}

impl ReductionLayout {
    pub fn info(&self, name: &str) -> Option<&VertexInfo> {
        self.vertices.iter().find(|v| v.name == name)
    }

    pub fn variable_gadget(&self, r: usize) -> &Gadget {
        &self.gadgets[r]
    }

    /// Gadgets of clause `c`: three level-0, three level-2, one level-3.
    pub fn clause_gadgets(&self, c: usize) -> &[Gadget] {
        let start = self.variables.len() + 7 * c;
        &self.gadgets[start..start + 7]
    }
}

/// The three generated instances and their layout.
#[derive(Clone, Debug)]
pub struct Reduction {
    pub formula: Formula,
    pub g: Instance,
    pub g0: Instance,
    pub h: Instance,
    pub layout: ReductionLayout,
}

mod names {
    pub fn x(r: usize) -> String {
        format!("x_{}", r + 1)
    }
    pub fn xp(r: usize) -> String {
        format!("xp_{}", r + 1)
    }
    pub fn y(r: usize) -> String {
        format!("y_{}", r + 1)
    }
    pub fn yp(r: usize) -> String {
        format!("yp_{}", r + 1)
    }
    pub fn clause(letter: char, c: usize, t: usize) -> String {
        format!("{letter}_c{}_{t}", c + 1)
    }
    pub fn d(i: usize) -> String {
        format!("d_{i}")
    }
    pub const Z: &str = "z";
    pub const ZP: &str = "zp";
}

struct Builder {
    names: Vec<String>,
    index: HashMap<String, usize>,
    head: Vec<Vec<usize>>,
    info: Vec<VertexInfo>,
}

impl Builder {
    fn add(&mut self, info: VertexInfo) -> usize {
        let i = self.names.len();
        self.index.insert(info.name.clone(), i);
        self.names.push(info.name.clone());
        self.head.push(Vec::new());
        self.info.push(info);
        i
    }

    fn id(&self, name: &str) -> usize {
        self.index[name]
    }

    fn set_head(&mut self, name: &str, list: &[String]) {
        let i = self.id(name);
        self.head[i] = list.iter().map(|n| self.id(n)).collect();
    }
}

fn vinfo(name: String, level: Level, role: &str) -> VertexInfo {
    VertexInfo {
        name,
        level,
        variable: None,
        clause: None,
        slot: None,
        role: role.to_string(),
        part: None,
    }
}

/// Builds `G`, `G_0`, `H` and the layout for `formula`.
pub fn build_reduction(formula: &Formula) -> Result<Reduction> {
    let formula = Formula::new(formula.variables.clone(), formula.clauses.clone())?;
    let n0 = formula.variables.len();
    let mut b = Builder {
        names: Vec::new(),
        index: HashMap::new(),
        head: Vec::new(),
        info: Vec::new(),
    };

    for i in 0..4 {
        b.add(vinfo(names::d(i), Level::D, &format!("d{i}")));
    }
    b.add(vinfo(names::Z.into(), Level::Z, "z"));
    for r in 0..n0 {
        for (name, role, part) in [
            (names::x(r), "x", Part::X),
            (names::y(r), "y", Part::Y),
            (names::xp(r), "xp", Part::X),
            (names::yp(r), "yp", Part::Y),
        ] {
            let mut vi = vinfo(name, Level::One, role);
            vi.variable = Some(r);
            vi.part = Some(part);
            b.add(vi);
        }
    }
    for c in 0..formula.clauses.len() {
        let mut clause_vertex =
            |letter: char, t: usize, level: Level, slot: Option<Slot>, part: Part| {
                let mut vi = vinfo(names::clause(letter, c, t), level, &format!("{letter}{t}"));
                vi.clause = Some(c);
                vi.slot = slot;
                vi.part = Some(part);
                b.add(vi);
            };
        for t in 1..=6 {
            let slot = Slot::ALL[(t - 1) / 2];
            clause_vertex('a', t, Level::Zero, Some(slot), Part::X);
            clause_vertex('b', t, Level::Zero, Some(slot), Part::Y);
        }
        for t in 0..=8 {
            let slot = Slot::ALL[t / 3];
            clause_vertex('p', t, Level::Two, Some(slot), Part::X);
            clause_vertex('q', t, Level::Two, Some(slot), Part::Y);
        }
        for t in 0..=3 {
            clause_vertex('s', t, Level::Three, None, Part::X);
            clause_vertex('t', t, Level::Three, None, Part::Y);
        }
    }

    // explicit list heads
    let d = |i| names::d(i);
    b.set_head(&d(1), &[d(2), d(3), d(0)]);
    b.set_head(&d(2), &[d(3), d(1), d(0)]);
    b.set_head(&d(3), &[d(1), d(2), d(0)]);
    b.set_head(&d(0), &[d(1), d(2), d(3)]);
    let z = names::Z.to_string();
    let z_head: Vec<String> = (0..n0).flat_map(|r| [names::x(r), names::y(r)]).collect();
    b.set_head(&z, &z_head);
    for r in 0..n0 {
        b.set_head(&names::x(r), &[names::y(r), names::yp(r), z.clone()]);
        b.set_head(&names::y(r), &[names::x(r), names::xp(r), z.clone()]);
        b.set_head(&names::xp(r), &[names::y(r), names::yp(r)]);
        b.set_head(&names::yp(r), &[names::x(r), names::xp(r)]);
    }
    for (c, clause) in formula.clauses.iter().enumerate() {
        let n = |letter, t| names::clause(letter, c, t);
        for s in 0..3 {
            // slot s: a points at y' of position s+1, b at x' of position s+2
            let ya = names::yp(clause[(s + 1) % 3]);
            let xb = names::xp(clause[(s + 2) % 3]);
            let (a, a2, bb, b2) = (
                n('a', 2 * s + 1),
                n('a', 2 * s + 2),
                n('b', 2 * s + 1),
                n('b', 2 * s + 2),
            );
            b.set_head(&a, &[bb.clone(), ya, b2.clone(), z.clone()]);
            b.set_head(&bb, &[a2.clone(), xb, a.clone(), z.clone()]);
            b.set_head(&a2, &[b2.clone(), bb.clone()]);
            b.set_head(&b2, &[a.clone(), a2.clone()]);
        }
        for s in 0..3 {
            let base = 3 * s;
            let yw = names::y(clause[(s + 1) % 3]);
            let xw = names::x(clause[(s + 2) % 3]);
            let (p0, p1, p2) = (n('p', base), n('p', base + 1), n('p', base + 2));
            let (q0, q1, q2) = (n('q', base), n('q', base + 1), n('q', base + 2));
            let mut q0_list = vec![p0.clone(), p2.clone(), z.clone()];
            if s < 2 {
                q0_list.push(n('s', 0));
            }
            let mut p1_list = vec![q1.clone(), q2.clone(), z.clone()];
            if s > 0 {
                p1_list.push(n('t', 0));
            }
            b.set_head(&p0, &[q0.clone(), q2.clone()]);
            b.set_head(&q0, &q0_list);
            b.set_head(&p1, &p1_list);
            b.set_head(&q1, &[p1.clone(), p2.clone()]);
            b.set_head(&p2, &[q0.clone(), yw, q1.clone(), q2.clone()]);
            b.set_head(&q2, &[p1.clone(), xw, p0.clone(), p2.clone()]);
        }
        b.set_head(
            &n('s', 0),
            &[n('t', 1), n('q', 0), n('t', 2), n('q', 3), n('t', 3)],
        );
        b.set_head(
            &n('t', 0),
            &[n('s', 3), n('p', 7), n('s', 2), n('p', 4), n('s', 1)],
        );
        for i in 1..=3 {
            b.set_head(&n('s', i), &[n('t', i), n('t', 0)]);
            b.set_head(&n('t', i), &[n('s', i), n('s', 0)]);
        }
    }

    // tails: every vertex that lists v but is not yet in v's list, in
    // canonical order; then d_0 last for every vertex outside D and z
    let total = b.names.len();
    let z_id = b.id(names::Z);
    let d0 = b.id(&names::d(0));
    let mut lists = b.head.clone();
    let mut listed_by: Vec<Vec<usize>> = vec![Vec::new(); total];
    for (u, list) in b.head.iter().enumerate() {
        for &v in list {
            listed_by[v].push(u);
        }
    }
    for v in 0..total {
        let mut tail: Vec<usize> = listed_by[v]
            .iter()
            .copied()
            .filter(|u| !b.head[v].contains(u))
            .collect();
        tail.sort_unstable();
        tail.dedup();
        if v == d0 {
            tail = (0..total).filter(|&u| u > 3 && u != z_id).collect();
        }
        lists[v].extend(tail);
        if v > 3 && v != z_id {
            lists[v].push(d0);
        }
    }

    let to_names = |l: &[usize]| -> Vec<String> { l.iter().map(|&i| b.names[i].clone()).collect() };
    let g = Instance::new(
        b.names.clone(),
        lists.iter().map(|l| to_names(l)).collect(),
        None,
    )?;

    // G_0: drop D
    let keep: Vec<usize> = (4..total).collect();
    let g0_names: Vec<String> = keep.iter().map(|&i| b.names[i].clone()).collect();
    let g0_lists: Vec<Vec<String>> = keep
        .iter()
        .map(|&i| {
            to_names(
                &lists[i]
                    .iter()
                    .copied()
                    .filter(|&u| u > 3)
                    .collect::<Vec<_>>(),
            )
        })
        .collect();
    let g0 = Instance::new(g0_names.clone(), g0_lists.clone(), None)?;

    // H: split z; Y vertices see zp instead of z
    let part_of = |name: &str| b.info[b.id(name)].part;
    let mut h_names = Vec::with_capacity(g0_names.len() + 1);
    let mut h_lists = Vec::with_capacity(g0_names.len() + 1);
    let mut h_sides = Vec::with_capacity(g0_names.len() + 1);
    for (name, list) in g0_names.iter().zip(&g0_lists) {
        if name == names::Z {
            let (xs, ys): (Vec<String>, Vec<String>) = list
                .iter()
                .cloned()
                .partition(|n| part_of(n) == Some(Part::X));
            h_names.push(names::Z.to_string());
            h_lists.push(xs);
            h_sides.push(Side::Right);
            h_names.push(names::ZP.to_string());
            h_lists.push(ys);
            h_sides.push(Side::Left);
            continue;
        }
        let part = part_of(name).expect("level vertex");
        let list = list
            .iter()
            .map(|n| {
                if n == names::Z && part == Part::Y {
                    names::ZP.to_string()
                } else {
                    n.clone()
                }
            })
            .collect();
        h_names.push(name.clone());
        h_lists.push(list);
        h_sides.push(if part == Part::X {
            Side::Left
        } else {
            Side::Right
        });
    }
    let h = Instance::new(h_names, h_lists, Some(h_sides))?;

    let mut vertices = b.info.clone();
    vertices.push(vinfo(names::ZP.into(), Level::ZPrime, "zp"));
    let x = vertices
        .iter()
        .filter(|v| v.part == Some(Part::X))
        .map(|v| v.name.clone())
        .collect();
    let y = vertices
        .iter()
        .filter(|v| v.part == Some(Part::Y))
        .map(|v| v.name.clone())
        .collect();
    let layout = ReductionLayout {
        variables: formula.variables.clone(),
        clauses: formula.clauses.clone(),
        vertices,
        gadgets: build_gadgets(&formula),
        x,
        y,
    };
    Ok(Reduction {
        formula,
        g,
        g0,
        h,
        layout,
    })
}

fn pairs(list: &[(&String, &String)]) -> Vec<(String, String)> {
    list.iter()
        .map(|(a, b)| ((*a).clone(), (*b).clone()))
        .collect()
}

fn build_gadgets(formula: &Formula) -> Vec<Gadget> {
    let mut out = Vec::new();
    for r in 0..formula.variables.len() {
        let (x, y, xp, yp) = (names::x(r), names::y(r), names::xp(r), names::yp(r));
        out.push(Gadget {
            kind: GadgetKind::Variable { variable: r },
            roles: vec!["x".into(), "y".into(), "xp".into(), "yp".into()],
            options: vec![
                pairs(&[(&x, &y), (&xp, &yp)]),
                pairs(&[(&x, &yp), (&xp, &y)]),
            ],
            vertices: vec![x, y, xp, yp],
        });
    }
    for c in 0..formula.clauses.len() {
        let n = |letter, t| names::clause(letter, c, t);
        for (s, &slot) in Slot::ALL.iter().enumerate() {
            let (a, b, a2, b2) = (
                n('a', 2 * s + 1),
                n('b', 2 * s + 1),
                n('a', 2 * s + 2),
                n('b', 2 * s + 2),
            );
            out.push(Gadget {
                kind: GadgetKind::LevelZero { clause: c, slot },
                roles: [2 * s + 1, 2 * s + 1, 2 * s + 2, 2 * s + 2]
                    .iter()
                    .zip(["a", "b", "a", "b"])
                    .map(|(t, l)| format!("{l}{t}"))
                    .collect(),
                options: vec![
                    pairs(&[(&a, &b), (&a2, &b2)]),
                    pairs(&[(&a, &b2), (&a2, &b)]),
                ],
                vertices: vec![a, b, a2, b2],
            });
        }
        for (s, &slot) in Slot::ALL.iter().enumerate() {
            let base = 3 * s;
            let p: Vec<String> = (0..3).map(|k| n('p', base + k)).collect();
            let q: Vec<String> = (0..3).map(|k| n('q', base + k)).collect();
            out.push(Gadget {
                kind: GadgetKind::LevelTwo { clause: c, slot },
                roles: (0..3)
                    .flat_map(|k| [format!("p{}", base + k), format!("q{}", base + k)])
                    .collect(),
                vertices: (0..3).flat_map(|k| [p[k].clone(), q[k].clone()]).collect(),
                options: vec![
                    pairs(&[(&p[0], &q[0]), (&p[1], &q[1]), (&p[2], &q[2])]),
                    pairs(&[(&p[0], &q[0]), (&p[1], &q[2]), (&p[2], &q[1])]),
                    pairs(&[(&p[0], &q[2]), (&p[1], &q[1]), (&p[2], &q[0])]),
                ],
            });
        }
        let s: Vec<String> = (0..4).map(|i| n('s', i)).collect();
        let t: Vec<String> = (0..4).map(|i| n('t', i)).collect();
        let options = (1..=3)
            .map(|m| {
                let mut o = vec![(s[0].clone(), t[m].clone()), (s[m].clone(), t[0].clone())];
                o.extend(
                    (1..=3)
                        .filter(|&i| i != m)
                        .map(|i| (s[i].clone(), t[i].clone())),
                );
                o
            })
            .collect();
        out.push(Gadget {
            kind: GadgetKind::LevelThree { clause: c },
            roles: (0..4)
                .flat_map(|i| [format!("s{i}"), format!("t{i}")])
                .collect(),
            vertices: (0..4).flat_map(|i| [s[i].clone(), t[i].clone()]).collect(),
            options,
        });
    }
    out
}

/// Gadget option indices (one per entry of [`ReductionLayout::gadgets`])
/// realizing the desired popular matching of a 1-in-3 assignment.
///
/// With the true variable at clause position `T`: the level-0 gadget in slot
/// `T + 1` is crossed and the other two straight; the level-2 gadget in slot
/// `T` stays stable, the one whose `p` points at the true variable's `y`
/// takes `(p_1, q_2), (p_2, q_1)` and the one whose `q` points at its `x`
/// takes `(p_0, q_2), (p_2, q_0)`; `s_0` is matched to `t_{T+1}`.
pub fn assignment_options(formula: &Formula, a: &Assignment) -> Result<Vec<usize>> {
    let mut digits: Vec<usize> = a.0.iter().map(|&b| usize::from(b)).collect();
    a.check_len(formula)?;
    for c in 0..formula.clauses.len() {
        let t = a.true_position(formula, c)?;
        for s in 0..3 {
            digits.push(usize::from(s == (t + 1) % 3));
        }
        for s in 0..3 {
            digits.push(if s == t {
                0
            } else if s == (t + 2) % 3 {
                1
            } else {
                2
            });
        }
        digits.push(t);
    }
    Ok(digits)
}

/// The matching on `H` selected by one option index per gadget.
pub fn matching_from_options(red: &Reduction, digits: &[usize]) -> Result<Matching> {
    if digits.len() != red.layout.gadgets.len() {
        return Err(Error::Precondition(format!(
            "{} option indices for {} gadgets",
            digits.len(),
            red.layout.gadgets.len()
        )));
    }
    let h = &red.h;
    let mut out = Vec::new();
    for (g, &d) in red.layout.gadgets.iter().zip(digits) {
        let opt = g
            .options
            .get(d)
            .ok_or_else(|| Error::Precondition(format!("gadget has no option {d}")))?;
        for (x, y) in opt {
            out.push((h.id(x)?, h.id(y)?));
        }
    }
    Matching::from_pairs(h, out)
}

/// The desired popular matching on `H` built from a 1-in-3 satisfying
/// assignment. It matches every vertex except `z` and `zp`.
pub fn construct_matching(red: &Reduction, a: &Assignment) -> Result<Matching> {
    matching_from_options(red, &assignment_options(&red.formula, a)?)
}

/// Witness values, in gadget role order, for one gadget option in the
/// desired configuration.
fn option_witness(kind: GadgetKind, option: usize) -> Vec<i8> {
    match kind {
        GadgetKind::Variable { .. } => match option {
            0 => vec![0; 4],
            _ => vec![1, 1, -1, -1],
        },
        GadgetKind::LevelZero { .. } | GadgetKind::D => vec![0; 4],
        // role order p_b, q_b, p_b+1, q_b+1, p_b+2, q_b+2
        GadgetKind::LevelTwo { .. } => match option {
            0 => vec![0; 6],
            1 => vec![-1, 1, 1, 1, -1, -1],
            _ => vec![1, 1, 1, -1, -1, -1],
        },
        // role order s0, t0, s1, t1, s2, t2, s3, t3; s_0 matched to t_m
        GadgetKind::LevelThree { .. } => {
            let m = option + 1;
            let mut w = vec![-1, -1];
            for i in 1..=3 {
                let (s, t) = match i.cmp(&m) {
                    std::cmp::Ordering::Equal => (1, 1),
                    std::cmp::Ordering::Less => (-1, 1),
                    std::cmp::Ordering::Greater => (1, -1),
                };
                w.extend([s, t]);
            }
            w
        }
    }
}

/// The `{0, ±1}` witness certifying [`construct_matching`]'s output.
pub fn construct_witness(red: &Reduction, a: &Assignment) -> Result<WitnessVector> {
    let digits = assignment_options(&red.formula, a)?;
    let h = &red.h;
    let mut values = vec![0i8; h.len()];
    for (g, &d) in red.layout.gadgets.iter().zip(&digits) {
        for (name, w) in g.vertices.iter().zip(option_witness(g.kind, d)) {
            values[h.id(name)?.index()] = w;
        }
    }
    WitnessVector::from_values(values.into_iter().map(i64::from))
}

/// Maps a matching on `H` to `G_0` (`zp` becomes `z`). Fails if both `z` and
/// `zp` are matched.
pub fn h_to_g0(red: &Reduction, m: &Matching) -> Result<Matching> {
    let (h, g0) = (&red.h, &red.g0);
    let z = h.id(names::Z)?;
    let zp = h.id(names::ZP)?;
    if m.is_matched(z) && m.is_matched(zp) {
        return Err(Error::Precondition("both z and zp are matched".into()));
    }
    let pairs = m
        .pairs()
        .into_iter()
        .map(|(u, v)| {
            let map = |w: VertexId| {
                if w == zp {
                    g0.id(names::Z)
                } else {
                    g0.id(h.name(w))
                }
            };
            Ok((map(u)?, map(v)?))
        })
        .collect::<Result<Vec<_>>>()?;
    Matching::from_pairs(g0, pairs)
}

/// Maps a matching on `G_0` to `H`: an edge at `z` goes to `zp` when the
/// other endpoint is on the `Y` side.
pub fn g0_to_h(red: &Reduction, m: &Matching) -> Result<Matching> {
    let (h, g0) = (&red.h, &red.g0);
    let z = g0.id(names::Z)?;
    let pairs = m
        .pairs()
        .into_iter()
        .map(|(u, v)| {
            let (zu, other) = if u == z {
                (true, v)
            } else if v == z {
                (true, u)
            } else {
                (false, u)
            };
            if zu {
                let o = h.id(g0.name(other))?;
                let zn = if h.sides().unwrap()[o.index()] == Side::Right {
                    names::ZP
                } else {
                    names::Z
                };
                Ok((h.id(zn)?, o))
            } else {
                Ok((h.id(g0.name(u))?, h.id(g0.name(v))?))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Matching::from_pairs(h, pairs)
}

/// Adds `(d_0, d_1), (d_2, d_3)` to a matching of `G_0` that covers every
/// `X ∪ Y` vertex, giving a matching of `G` that leaves only `z` unmatched.
pub fn extend_to_g(red: &Reduction, m: &Matching) -> Result<Matching> {
    let (g, g0) = (&red.g, &red.g0);
    crate::instance::check_matching(g0, m)?;
    let z = g0.id(names::Z)?;
    if let Some(v) = g0.vertices().find(|&v| v != z && !m.is_matched(v)) {
        return Err(Error::Precondition(format!("{} is unmatched", g0.name(v))));
    }
    if m.is_matched(z) {
        return Err(Error::Precondition("z is matched".into()));
    }
    let mut pairs = m
        .pairs()
        .into_iter()
        .map(|(u, v)| Ok((g.id(g0.name(u))?, g.id(g0.name(v))?)))
        .collect::<Result<Vec<_>>>()?;
    pairs.push((g.id(&names::d(0))?, g.id(&names::d(1))?));
    pairs.push((g.id(&names::d(2))?, g.id(&names::d(3))?));
    Matching::from_pairs(g, pairs)
}

/// Vertex ids of `X ∪ Y` in `inst` (any of the three generated instances).
pub fn level_vertices(red: &Reduction, inst: &Instance) -> Vec<VertexId> {
    red.layout
        .vertices
        .iter()
        .filter(|v| v.part.is_some())
        .filter_map(|v| inst.get_id(&v.name))
        .collect()
}

/// Graphviz rendering of `H`: one cluster per gadget, `z` and `zp` outside.
pub fn to_dot(red: &Reduction) -> String {
    use std::fmt::Write as _;
    let h = &red.h;
    let mut out = String::from("graph H {\n  node [shape=circle, fontsize=10];\n");
    for (i, g) in red.layout.gadgets.iter().enumerate() {
        let label = match g.kind {
            GadgetKind::Variable { variable } => {
                format!("variable {}", red.formula.variables[variable])
            }
            GadgetKind::LevelZero { clause, slot } => {
                format!("clause {} level 0 {:?}", clause + 1, slot)
            }
            GadgetKind::LevelTwo { clause, slot } => {
                format!("clause {} level 2 {:?}", clause + 1, slot)
            }
            GadgetKind::LevelThree { clause } => format!("clause {} level 3", clause + 1),
            GadgetKind::D => "D".to_string(),
        };
        let _ = writeln!(out, "  subgraph cluster_{i} {{\n    label=\"{label}\";");
        for v in &g.vertices {
            let _ = writeln!(out, "    \"{v}\";");
        }
        out.push_str("  }\n");
    }
    for e in h.edges() {
        let _ = writeln!(
            out,
            "  \"{}\" -- \"{}\" [taillabel=\"{}\", headlabel=\"{}\"];",
            h.name(e.u),
            h.name(e.v),
            e.rank_at_u + 1,
            e.rank_at_v + 1
        );
    }
    out.push_str("}\n");
    out
}
