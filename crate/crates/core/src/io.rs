//! Plain-text formats for instances, matchings, witnesses and assignments.
//!
//! Instance grammar (blank lines and lines starting with `#` are ignored):
//!
//! ```text
//! vertices: <n>
//! <name>: <nbr_1> > <nbr_2> > ... > <nbr_k> [side: L|R]
//! ```
//!
//! There is exactly one vertex line per vertex, in canonical order. An empty
//! list is written `<name>:`. Either every vertex line carries a `side:`
//! suffix or none does. Vertex names are non-empty and contain no whitespace,
//! `:` or `>`.
//!
//! A matching is one `u v` pair per line; a witness is one `name value` line
//! per vertex with value in `{-1, 0, 1}`; an assignment is one `name value`
//! line per variable with value in `{0, 1, false, true}`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::instance::{Instance, Matching, Side};
use crate::reduction::{Assignment, Formula};
use crate::witness::WitnessVector;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn check_name(line: usize, name: &str) -> Result<()> {
    if name.is_empty() || name.contains(|c: char| c.is_whitespace() || c == ':' || c == '>') {
        return Err(perr(line, format!("bad vertex name `{name}`")));
    }
    Ok(())
}

/// Parses an instance without validating list symmetry; see
/// [`crate::instance::validate_instance`].
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| perr(0, "empty input"))?;
    let count: usize = header
        .strip_prefix("vertices:")
        .ok_or_else(|| perr(hline, "expected `vertices: <n>`"))?
        .trim()
        .parse()
        .map_err(|_| perr(hline, "vertex count is not a number"))?;

    let mut names = Vec::with_capacity(count);
    let mut lists = Vec::with_capacity(count);
    let mut sides: Vec<Option<Side>> = Vec::with_capacity(count);
    let mut last_line = hline;
    for (ln, line) in lines {
        last_line = ln;
        let (name, rest) = line
            .split_once(':')
            .ok_or_else(|| perr(ln, "expected `name: list`"))?;
        let name = name.trim();
        check_name(ln, name)?;
        let mut rest = rest.trim();
        let mut side = None;
        if let Some(pos) = rest.rfind("side:") {
            let label = rest[pos + 5..].trim();
            side = Some(match label {
                "L" => Side::Left,
                "R" => Side::Right,
                other => return Err(perr(ln, format!("side must be L or R, got `{other}`"))),
            });
            rest = rest[..pos].trim();
        }
        let list = if rest.is_empty() {
            Vec::new()
        } else {
            rest.split('>')
                .map(|n| {
                    let n = n.trim();
                    check_name(ln, n)?;
                    Ok(n.to_string())
                })
                .collect::<Result<Vec<_>>>()?
        };
        names.push(name.to_string());
        lists.push(list);
        sides.push(side);
    }
    if names.len() != count {
        return Err(perr(
            last_line,
            format!("header says {count} vertices, found {}", names.len()),
        ));
    }
    let labeled = sides.iter().filter(|s| s.is_some()).count();
    let sides = if labeled == 0 {
        None
    } else if labeled == count {
        Some(sides.into_iter().map(Option::unwrap).collect())
    } else {
        return Err(perr(
            last_line,
            "either every vertex or no vertex may carry a side label",
        ));
    };
    Instance::new_unchecked(names, lists, sides).map_err(|e| match e {
        Error::UnknownVertex(n) => perr(0, format!("unknown vertex `{n}` in a preference list")),
        other => other,
    })
}

pub fn write_instance(inst: &Instance) -> String {
    let mut out = format!("vertices: {}\n", inst.len());
    for v in inst.vertices() {
        let list: Vec<&str> = inst.prefs(v).iter().map(|&w| inst.name(w)).collect();
        out.push_str(inst.name(v));
        out.push(':');
        if !list.is_empty() {
            out.push(' ');
            out.push_str(&list.join(" > "));
        }
        if let Some(s) = inst.sides() {
            out.push_str(match s[v.index()] {
                Side::Left => " side: L",
                Side::Right => " side: R",
            });
        }
        out.push('\n');
    }
    out
}

fn two_fields(ln: usize, line: &str) -> Result<(&str, &str)> {
    let mut it = line.split_whitespace();
    match (it.next(), it.next(), it.next()) {
        (Some(a), Some(b), None) => Ok((a, b)),
        _ => Err(perr(ln, "expected exactly two fields")),
    }
}

pub fn parse_matching(inst: &Instance, text: &str) -> Result<Matching> {
    let mut pairs = Vec::new();
    for (ln, line) in content_lines(text) {
        let (a, b) = two_fields(ln, line)?;
        let u = inst
            .id(a)
            .map_err(|_| perr(ln, format!("unknown vertex `{a}`")))?;
        let v = inst
            .id(b)
            .map_err(|_| perr(ln, format!("unknown vertex `{b}`")))?;
        pairs.push((u, v));
    }
    Matching::from_pairs(inst, pairs)
}

pub fn write_matching(inst: &Instance, m: &Matching) -> String {
    m.pairs()
        .into_iter()
        .fold(String::new(), |mut out, (u, v)| {
            let _ = writeln!(out, "{} {}", inst.name(u), inst.name(v));
            out
        })
}

/// Parses a witness file. Every vertex must appear exactly once; values
/// must be integers in `{-1, 0, 1}`.
pub fn parse_witness(inst: &Instance, text: &str) -> Result<WitnessVector> {
    let mut values: Vec<Option<i64>> = vec![None; inst.len()];
    for (ln, line) in content_lines(text) {
        let (name, val) = two_fields(ln, line)?;
        let v = inst
            .id(name)
            .map_err(|_| perr(ln, format!("unknown vertex `{name}`")))?;
        let x: i64 = val
            .parse()
            .map_err(|_| perr(ln, format!("witness value `{val}` is not an integer")))?;
        if values[v.index()].replace(x).is_some() {
            return Err(perr(ln, format!("vertex `{name}` given twice")));
        }
    }
    if let Some(i) = values.iter().position(Option::is_none) {
        return Err(perr(
            0,
            format!("no witness value for `{}`", inst.names()[i]),
        ));
    }
    WitnessVector::from_values(values.into_iter().map(Option::unwrap))
}

pub fn write_witness(inst: &Instance, w: &WitnessVector) -> String {
    inst.vertices().fold(String::new(), |mut out, v| {
        let _ = writeln!(out, "{} {}", inst.name(v), w.get(v));
        out
    })
}

pub fn parse_assignment(formula: &Formula, text: &str) -> Result<Assignment> {
    let mut values: Vec<Option<bool>> = vec![None; formula.variables.len()];
    for (ln, line) in content_lines(text) {
        let (name, val) = two_fields(ln, line)?;
        let i = formula
            .variable_index(name)
            .ok_or_else(|| perr(ln, format!("unknown variable `{name}`")))?;
        let b = match val {
            "1" | "true" => true,
            "0" | "false" => false,
            other => return Err(perr(ln, format!("bad truth value `{other}`"))),
        };
        values[i] = Some(b);
    }
    if let Some(i) = values.iter().position(Option::is_none) {
        return Err(perr(
            0,
            format!("no value for variable `{}`", formula.variables[i]),
        ));
    }
    Ok(Assignment(values.into_iter().map(Option::unwrap).collect()))
}

pub fn write_assignment(formula: &Formula, a: &Assignment) -> String {
    formula
        .variables
        .iter()
        .zip(&a.0)
        .fold(String::new(), |mut out, (n, &b)| {
            let _ = writeln!(out, "{n} {}", u8::from(b));
            out
        })
}
