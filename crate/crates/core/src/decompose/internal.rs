//! Compositions whose classes carry arcs of their own.

use super::{fill_remaining, finish, search, solve, Branch, Ctx, DecomposeOutcome, Decomposition};
use crate::composition::CompositionStructure;
use crate::connectivity::{cut_vertices, is_k_arc_strong, is_strong};
use crate::digraph::{Digraph, VertexId};
use crate::error::{internal, Error, Result};
use crate::oracle::SearchConfig;

/// Deletes internal class arcs while the digraph stays 2-arc-strong,
/// decomposes what is left and returns the deleted arcs to side 1.
pub fn reduce_internal_arcs(d: &Digraph, s: &CompositionStructure) -> Result<Decomposition> {
    if !s.is_consistent_with(d) {
        return Err(Error::Precondition("structure does not match the digraph".into()));
    }
    if d.has_parallel_arcs() || is_k_arc_strong(d, 2).is_err() {
        return Err(Error::Precondition("needs a 2-arc-strong digraph without parallel arcs".into()));
    }
    if s.is_extension(d) {
        return Err(Error::Precondition("no class has an internal arc".into()));
    }
    if !cut_vertices(d)?.is_empty() {
        return Err(Error::Precondition("digraph has a cut-vertex".into()));
    }
    let mut ctx = Ctx::new(SearchConfig::default());
    strip(d, s, &mut ctx)
}

pub(super) fn strip(d: &Digraph, s: &CompositionStructure, ctx: &mut Ctx) -> Result<Decomposition> {
    let mut internal_arcs: Vec<(VertexId, VertexId)> = d
        .arcs()
        .filter(|a| s.class_of[a.tail] == s.class_of[a.head])
        .map(|a| (a.tail, a.head))
        .collect();
    internal_arcs.sort_unstable();
    let mut cur = d.clone();
    let mut removed = Vec::new();
    for &(a, b) in &internal_arcs {
        let c = cur.without_arc_copy(a, b);
        if is_k_arc_strong(&c, 2).is_ok() {
            cur = c;
            removed.push((a, b));
        }
    }
    if removed.is_empty() {
        ctx.mark(Branch::InternalStuck);
        return stuck(d, internal_arcs[0]);
    }
    ctx.mark(Branch::InternalStrip);
    match solve(&cur, ctx)? {
        DecomposeOutcome::Decomposed(mut dec) => {
            dec.a1.extend(removed);
            finish(d, dec)
        }
        DecomposeOutcome::Exception(_) => {
            ctx.mark(Branch::InternalExceptionSearch);
            search(d, ctx)
        }
        DecomposeOutcome::NotTwoArcStrong(_) => Err(internal!("stripping broke 2-arc-strength")),
    }
}

/// Every internal arc is needed for 2-arc-strength. Then the digraph is a
/// strong class `H` plus one vertex `y` joined both ways to all of `H`.
fn stuck(d: &Digraph, (u, v): (VertexId, VertexId)) -> Result<Decomposition> {
    let n = d.vertex_count();
    let y = (0..n)
        .find(|&y| {
            y != u
                && y != v
                && (0..n).all(|w| w == y || (d.has_arc(y, w) && d.has_arc(w, y)))
                && is_strong(&d.without_vertex(y).0)
        })
        .ok_or_else(|| internal!("no internal arc is deletable, yet no universal vertex"))?;
    let mut dec = Decomposition::default();
    dec.a1.extend([(u, y), (y, v)]);
    dec.a2.extend([(y, u), (u, v), (v, y)]);
    for w in 0..n {
        if w != y && w != u && w != v {
            dec.a2.push((y, w));
            dec.a2.push((w, y));
        }
    }
    // the rest of H goes to side 1
    fill_remaining(d, &mut dec, 1)?;
    finish(d, dec)
}
