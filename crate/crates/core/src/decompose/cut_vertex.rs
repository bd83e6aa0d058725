//! Compositions with a cut-vertex.

use std::collections::HashSet;

use super::{fill_remaining, finish, Branch, Ctx, Decomposition};
use crate::branchings::{arc_disjoint_in_branchings, arc_disjoint_out_branchings, Branching};
use crate::connectivity::{is_k_arc_strong, is_strong, strong_components};
use crate::digraph::{Digraph, VertexId};
use crate::error::{internal, Error, Result};
use crate::oracle::SearchConfig;
use crate::structure::finest_structure;

/// Decomposes a 2-arc-strong semicomplete composition `d` around its
/// cut-vertex `u`.
pub fn decompose_cut_vertex(d: &Digraph, u: VertexId) -> Result<Decomposition> {
    let n = d.vertex_count();
    if u >= n || n < 3 {
        return Err(Error::Precondition(format!("vertex {u} out of range")));
    }
    if d.has_parallel_arcs() || is_k_arc_strong(d, 2).is_err() {
        return Err(Error::Precondition("needs a 2-arc-strong digraph without parallel arcs".into()));
    }
    let (rest, _) = d.without_vertex(u);
    if is_strong(&rest) {
        return Err(Error::Precondition(format!("{u} is not a cut-vertex")));
    }
    let mut ctx = Ctx::new(SearchConfig::default());
    cut_vertex(d, u, &mut ctx)
}

pub(super) fn cut_vertex(d: &Digraph, u: VertexId, ctx: &mut Ctx) -> Result<Decomposition> {
    let n = d.vertex_count();
    if (0..n).all(|v| v == u || (d.has_arc(u, v) && d.has_arc(v, u))) {
        ctx.mark(Branch::CutVertexSingleClass);
        return single_class(d, u);
    }
    ctx.mark(Branch::CutVertexBranchings);
    let s = finest_structure(d)?;

    // a source component of d - u against everything else
    let others: Vec<VertexId> = (0..n).filter(|&v| v != u).collect();
    let (rest, map) = super::sub(d, &others);
    let comps = strong_components(&rest);
    let mut in_x = vec![false; n];
    for &v in &comps[0] {
        in_x[map[v]] = true;
    }
    // move whole classes to one side of the cut
    loop {
        let straddling = s.classes.iter().find(|c| {
            c.iter().any(|&v| v != u && in_x[v]) && c.iter().any(|&v| v != u && !in_x[v])
        });
        let Some(c) = straddling else { break };
        let mut in_class = vec![false; n];
        for &v in c {
            in_class[v] = true;
        }
        let y_outside = (0..n).any(|v| v != u && !in_x[v] && !in_class[v]);
        for &v in c {
            if v != u {
                in_x[v] = y_outside;
            }
        }
    }
    let x_side: Vec<VertexId> = (0..n).filter(|&v| v != u && in_x[v]).collect();
    let y_side: Vec<VertexId> = (0..n).filter(|&v| v != u && !in_x[v]).collect();
    if x_side.is_empty() || y_side.is_empty() {
        return Err(internal!("cut around {u} collapsed"));
    }

    let mut star = vec![u];
    star.extend(&x_side);
    let (dstar, smap) = super::sub(d, &star);
    let outs = match arc_disjoint_out_branchings(&dstar, 0, 2)? {
        Ok(b) => b,
        Err(_) => return Err(internal!("no two out-branchings from the cut-vertex")),
    };
    let mut dstar2 = vec![u];
    dstar2.extend(&y_side);
    let (dss, ssmap) = super::sub(d, &dstar2);
    let ins = match arc_disjoint_in_branchings(&dss, 0, 2)? {
        Ok(b) => b,
        Err(_) => return Err(internal!("no two in-branchings into the cut-vertex")),
    };
    let (o1, o2) = distinct_interior(&outs[0], &outs[1])
        .ok_or_else(|| internal!("out-branchings share their only interior vertex"))?;
    let (i1, i2) = distinct_interior(&ins[0], &ins[1])
        .ok_or_else(|| internal!("in-branchings share their only interior vertex"))?;
    let (o1, o2) = (smap[o1], smap[o2]);
    let (i1, i2) = (ssmap[i1], ssmap[i2]);

    let lift = |b: &Branching, m: &[VertexId]| -> Vec<(VertexId, VertexId)> {
        b.arcs().into_iter().map(|(a, c)| (m[a], m[c])).collect()
    };
    let mut dec = Decomposition::default();
    dec.a1.extend(lift(&outs[0], &smap));
    dec.a1.extend(lift(&ins[0], &ssmap));
    dec.a2.extend(lift(&outs[1], &smap));
    dec.a2.extend(lift(&ins[1], &ssmap));

    let mut taken: HashSet<(VertexId, VertexId)> = dec.a1.iter().chain(&dec.a2).copied().collect();
    let mut put = |dec: &mut Decomposition, side: u8, a: VertexId, b: VertexId| -> Result<()> {
        if !d.has_arc(a, b) {
            return Err(internal!("expected arc {a}->{b} across the cut"));
        }
        if taken.insert((a, b)) {
            if side == 1 {
                dec.a1.push((a, b));
            } else {
                dec.a2.push((a, b));
            }
        }
        Ok(())
    };
    for &y in &y_side {
        if y != i2 {
            put(&mut dec, 2, o1, y)?;
        }
        if y != i1 {
            put(&mut dec, 1, o2, y)?;
        }
    }
    for &x in &x_side {
        if x != o2 {
            put(&mut dec, 2, x, i1)?;
        }
        if x != o1 {
            put(&mut dec, 1, x, i2)?;
        }
    }
    fill_remaining(d, &mut dec, 1)?;
    finish(d, dec)
}

/// Interior vertices, one from each branching, that differ. Lowest ids win.
fn distinct_interior(b1: &Branching, b2: &Branching) -> Option<(VertexId, VertexId)> {
    let (s1, s2) = (b1.interior(), b2.interior());
    for &x in &s1 {
        if let Some(&y) = s2.iter().find(|&&y| y != x) {
            return Some((x, y));
        }
    }
    None
}

/// `u` is joined both ways to every other vertex.
fn single_class(d: &Digraph, u: VertexId) -> Result<Decomposition> {
    let n = d.vertex_count();
    let others: Vec<VertexId> = (0..n).filter(|&v| v != u).collect();
    let (rest, map) = super::sub(d, &others);
    let comps = strong_components(&rest);
    let mut comp_of = vec![usize::MAX; n];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[map[v]] = i;
        }
    }
    let mut dec = Decomposition::default();
    for c in &comps {
        let vs: Vec<VertexId> = c.iter().map(|&v| map[v]).collect();
        if vs.len() == 1 {
            let x = vs[0];
            dec.a2.push((x, u));
            dec.a2.push((u, x));
            continue;
        }
        let mut inner: Vec<(VertexId, VertexId)> = Vec::new();
        for &a in &vs {
            for &b in d.out_neighbors(a) {
                if b != u && comp_of[b] == comp_of[a] {
                    inner.push((a, b));
                }
            }
        }
        inner.sort_unstable();
        let (x, y) = inner[0];
        dec.a1.extend(inner[1..].iter().copied());
        dec.a1.push((x, u));
        dec.a1.push((u, y));
        dec.a2.extend([(u, x), (x, y), (y, u)]);
        for &w in &vs {
            if w != x && w != y {
                dec.a2.push((u, w));
                dec.a2.push((w, u));
            }
        }
    }
    // arcs between components go to side 1
    fill_remaining(d, &mut dec, 1)?;
    finish(d, dec)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::verify_decomposition;
    use crate::gallery;

    fn bowtie() -> Digraph {
        // two bidirected triangles sharing vertex 2
        let mut arcs = Vec::new();
        for (a, b) in [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)] {
            arcs.push((a, b));
            arcs.push((b, a));
        }
        Digraph::from_arcs(5, arcs).unwrap()
    }

    #[test]
    fn bowtie_single_class() {
        let d = bowtie();
        let dec = decompose_cut_vertex(&d, 2).unwrap();
        assert!(verify_decomposition(&d, &dec).is_ok());
    }

    #[test]
    fn not_a_cut_vertex() {
        let d = gallery::bidirected_complete(4);
        assert!(matches!(decompose_cut_vertex(&d, 0), Err(Error::Precondition(_))));
    }
}
