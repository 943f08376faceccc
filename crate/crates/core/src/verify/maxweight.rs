//! Maximum-weight (not necessarily perfect) bipartite matching.

use crate::error::{Error, Result};

/// Maximum total weight of a matching between `left` and `right` vertex
/// indices, with the chosen edges sorted by left index.
///
/// Edges are `(l, r, w)`; parallel edges keep the heaviest weight. Edges of
/// non-positive weight are never needed, so the problem is solved as a
/// square assignment problem over `max(w, 0)` with potentials, and only
/// positive-weight assigned edges are returned.
pub fn max_weight_bipartite(
    left: usize,
    right: usize,
    edges: &[(usize, usize, i64)],
) -> Result<(i64, Vec<(usize, usize)>)> {
    let n = left.max(right);
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    // cost[i][j] = -max(w, 0), 1-based with a zero row/column
    let mut cost = vec![vec![0i64; n + 1]; n + 1];
    for &(l, r, w) in edges {
        if l >= left || r >= right {
            return Err(Error::Precondition(format!(
                "edge ({l}, {r}) outside {left}x{right}"
            )));
        }
        let c = -w.max(0);
        if c < cost[l + 1][r + 1] {
            cost[l + 1][r + 1] = c;
        }
    }

    let inf = i64::MAX / 4;
    let mut u = vec![0i64; n + 1];
    let mut v = vec![0i64; n + 1];
    // owner[j]: row assigned to column j
    let mut owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        owner[0] = i;
        let mut j0 = 0;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[i0][j] - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut total = 0;
    let mut chosen = Vec::new();
    for j in 1..=n {
        let i = owner[j];
        if i == 0 || i > left || j > right {
            continue;
        }
        let w = -cost[i][j];
        if w > 0 {
            total += w;
            chosen.push((i - 1, j - 1));
        }
    }
    chosen.sort_unstable();
    Ok((total, chosen))
}
