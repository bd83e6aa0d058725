//! Exact isomorphism for small digraphs by pruned permutation search.

use crate::digraph::{Digraph, VertexId};
use crate::error::{Error, Result};

/// Largest vertex count accepted by [`is_isomorphic`].
pub const ISO_LIMIT: usize = 10;

fn profile(d: &Digraph, v: VertexId) -> (usize, usize, usize, usize, usize) {
    let both = d
        .out_neighbors(v)
        .iter()
        .filter(|&&w| d.has_arc(w, v))
        .count();
    (
        d.out_degree(v),
        d.in_degree(v),
        d.out_neighbors(v).len(),
        d.in_neighbors(v).len(),
        both,
    )
}

/// Returns `f` with `mult(u, v) == mult(f[u], f[v])` for all pairs, if one exists.
pub fn is_isomorphic(d1: &Digraph, d2: &Digraph) -> Result<Option<Vec<VertexId>>> {
    let n = d1.vertex_count();
    if n > ISO_LIMIT || d2.vertex_count() > ISO_LIMIT {
        return Err(Error::Capability(format!(
            "isomorphism test limited to {ISO_LIMIT} vertices"
        )));
    }
    if n != d2.vertex_count() || d1.arc_count() != d2.arc_count() {
        return Ok(None);
    }
    let p1: Vec<_> = (0..n).map(|v| profile(d1, v)).collect();
    let p2: Vec<_> = (0..n).map(|v| profile(d2, v)).collect();
    let mut s1 = p1.clone();
    let mut s2 = p2.clone();
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return Ok(None);
    }
    // Place the vertices with the rarest profiles first.
    let mut order: Vec<VertexId> = (0..n).collect();
    order.sort_by_key(|&v| (p1.iter().filter(|&&p| p == p1[v]).count(), v));

    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend(d1, d2, &p1, &p2, &order, 0, &mut map, &mut used) {
        Ok(Some(map))
    } else {
        Ok(None)
    }
}

#[allow(clippy::too_many_arguments)]
fn extend(
    d1: &Digraph,
    d2: &Digraph,
    p1: &[(usize, usize, usize, usize, usize)],
    p2: &[(usize, usize, usize, usize, usize)],
    order: &[VertexId],
    depth: usize,
    map: &mut [VertexId],
    used: &mut [bool],
) -> bool {
    if depth == order.len() {
        return true;
    }
    let v = order[depth];
    for w in 0..order.len() {
        if used[w] || p1[v] != p2[w] {
            continue;
        }
        let consistent = order[..depth].iter().all(|&u| {
            let fu = map[u];
            d1.multiplicity(u, v) == d2.multiplicity(fu, w)
                && d1.multiplicity(v, u) == d2.multiplicity(w, fu)
        });
        if !consistent {
            continue;
        }
        map[v] = w;
        used[w] = true;
        if extend(d1, d2, p1, p2, order, depth + 1, map, used) {
            return true;
        }
        used[w] = false;
        map[v] = usize::MAX;
    }
    false
}

/// Convenience wrapper treating oversized inputs as non-isomorphic.
pub fn isomorphic(d1: &Digraph, d2: &Digraph) -> bool {
    matches!(is_isomorphic(d1, d2), Ok(Some(_)))
}
