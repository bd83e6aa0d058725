//! Semicomplete multigraphs with multiplicities at most two.

use super::{fill_remaining, finish, search, solve, Branch, Ctx, DecomposeOutcome, Decomposition};
use crate::connectivity::is_k_arc_strong;
use crate::digraph::{Digraph, DigraphBuilder, VertexId};
use crate::error::{internal, Error, Result};
use crate::oracle::SearchConfig;
use crate::structure::{match_exception, Family};

/// Decomposes a 2-arc-strong semicomplete multigraph, or refutes it with a
/// cut or one of the seven exceptional multigraphs.
pub fn decompose_semicomplete_multigraph(d: &Digraph) -> Result<DecomposeOutcome> {
    let mut ctx = Ctx::new(SearchConfig::default());
    multigraph(&d.normalize(), &mut ctx)
}

pub(super) fn multigraph(d: &Digraph, ctx: &mut Ctx) -> Result<DecomposeOutcome> {
    if !d.is_semicomplete() {
        return Err(Error::Precondition("multigraph is not semicomplete".into()));
    }
    if d.vertex_count() <= 1 {
        return Ok(DecomposeOutcome::Decomposed(Decomposition::default()));
    }
    if let Err(w) = is_k_arc_strong(d, 2) {
        return Ok(DecomposeOutcome::NotTwoArcStrong(w));
    }
    if let Some(k) = match_exception(d, Family::Multigraph) {
        return Ok(DecomposeOutcome::Exception(k));
    }
    two_arc_strong(d, ctx).map(DecomposeOutcome::Decomposed)
}

fn two_arc_strong(d: &Digraph, ctx: &mut Ctx) -> Result<Decomposition> {
    let n = d.vertex_count();
    if n == 2 {
        ctx.mark(Branch::MultiPair);
        let dec = Decomposition::new(vec![(0, 1), (1, 0)], vec![(0, 1), (1, 0)]);
        return finish(d, dec);
    }
    if n == 4 {
        if let Some(dec) = s4_lemma(d)? {
            ctx.mark(Branch::MultiS4Lemma);
            return Ok(dec);
        }
    }
    if !d.has_parallel_arcs() {
        ctx.mark(Branch::MultiSimple);
        return match solve(d, ctx)? {
            DecomposeOutcome::Decomposed(dec) => Ok(dec),
            other => Err(internal!("simple semicomplete part refuted: {other:?}")),
        };
    }
    let doubles: Vec<(VertexId, VertexId)> =
        d.arcs().filter(|a| a.multiplicity == 2).map(|a| (a.tail, a.head)).collect();

    // drop spare copies while 2-arc-strength survives
    let mut cur = d.clone();
    let mut dropped = Vec::new();
    for &(u, v) in &doubles {
        let c = cur.without_arc_copy(u, v);
        if is_k_arc_strong(&c, 2).is_ok() && match_exception(&c, Family::Multigraph).is_none() {
            cur = c;
            dropped.push((u, v));
        }
    }
    if !dropped.is_empty() {
        ctx.mark(Branch::MultiDropCopy);
        let mut dec = two_arc_strong(&cur, ctx)?;
        dec.a1.extend(dropped);
        return finish(d, dec);
    }

    // every copy whose removal keeps 2-arc-strength leaves an exception
    let tight = doubles.iter().find_map(|&(u, v)| {
        is_k_arc_strong(&d.without_arc_copy(u, v), 2).err().map(|w| (u, v, w))
    });
    let Some((u, v, w)) = tight else {
        ctx.mark(Branch::MultiSearch);
        return search(d, ctx);
    };
    let k = w.side.len();
    if k >= 2 && n - k >= 2 {
        ctx.mark(Branch::MultiTightCut);
        return search(d, ctx);
    }
    if k == 1 {
        contract(d, u, v, ctx)
    } else {
        let dec = contract(&d.reverse(), v, u, ctx)?.reversed();
        finish(d, dec)
    }
}

/// `u` has no out-arcs except the two copies of `uv`: merge `u` and `v`,
/// decompose, and split the merged vertex again.
fn contract(d: &Digraph, u: VertexId, v: VertexId, ctx: &mut Ctx) -> Result<Decomposition> {
    ctx.mark(Branch::MultiContract);
    let n = d.vertex_count();
    let others: Vec<VertexId> = (0..n).filter(|&x| x != u && x != v).collect();
    let w = others.len();
    let mut b = DigraphBuilder::new(w + 1);
    for (i, &x) in others.iter().enumerate() {
        for (j, &y) in others.iter().enumerate() {
            if i != j {
                b.set_multiplicity(i, j, d.multiplicity(x, y))?;
            }
        }
        b.set_multiplicity(w, i, (d.multiplicity(u, x) + d.multiplicity(v, x)).min(2))?;
        b.set_multiplicity(i, w, (d.multiplicity(x, u) + d.multiplicity(x, v)).min(2))?;
    }
    let star = b.build();
    let sdec = match multigraph(&star, ctx)? {
        DecomposeOutcome::Decomposed(dec) => dec,
        other => return Err(internal!("contracted multigraph refuted: {other:?}")),
    };

    let mut dec = Decomposition::default();
    let mut into_w: [Vec<VertexId>; 2] = [Vec::new(), Vec::new()];
    for (side, arcs) in [&sdec.a1, &sdec.a2].into_iter().enumerate() {
        let target = if side == 0 { &mut dec.a1 } else { &mut dec.a2 };
        for &(a, c) in arcs {
            if a == w {
                target.push((v, others[c]));
            } else if c == w {
                into_w[side].push(others[a]);
            } else {
                target.push((others[a], others[c]));
            }
        }
    }
    let mut cu: Vec<u8> = (0..n).map(|x| d.multiplicity(x, u)).collect();
    let mut cv: Vec<u8> = (0..n).map(|x| d.multiplicity(x, v)).collect();
    let pick = into_w[0].iter().enumerate().find_map(|(i, &z1)| {
        into_w[1].iter().position(|&z2| {
            cu[z1] >= 1 && cu[z2] >= 1 && (z1 != z2 || cu[z1] >= 2)
        })
        .map(|j| (i, j))
    });
    let Some((i, j)) = pick else {
        if n != 3 {
            return Err(internal!("no way to give {u} an in-arc on both sides"));
        }
        ctx.mark(Branch::MultiTerminal);
        let z = others[0];
        let mut dec =
            Decomposition::new(vec![(u, v), (v, z), (z, u)], vec![(u, v), (v, u), (v, z), (z, v)]);
        fill_remaining(d, &mut dec, 1)?;
        return finish(d, dec);
    };
    let mut chosen = [into_w[0].remove(i), into_w[1].remove(j)];
    for (side, z) in chosen.iter_mut().enumerate() {
        cu[*z] -= 1;
        let target = if side == 0 { &mut dec.a1 } else { &mut dec.a2 };
        target.push((*z, u));
        target.push((u, v));
    }
    for (side, list) in into_w.iter().enumerate() {
        for &x in list {
            let head = if cv[x] > 0 {
                cv[x] -= 1;
                v
            } else if cu[x] > 0 {
                cu[x] -= 1;
                u
            } else {
                return Err(internal!("more copies into the merged vertex than arcs"));
            };
            if side == 0 {
                dec.a1.push((x, head));
            } else {
                dec.a2.push((x, head));
            }
        }
    }
    fill_remaining(d, &mut dec, 1)?;
    finish(d, dec)
}

const S4_ARCS: [(usize, usize); 8] = [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (2, 0), (1, 3), (3, 1)];

/// The explicit splits for a 4-vertex multigraph containing a spanning S4
/// with enough doubled arcs. The vertices `v1..v4` are `0..3` of S4, whose
/// Hamilton cycle is `0 1 2 3`.
pub(crate) fn s4_lemma(d: &Digraph) -> Result<Option<Decomposition>> {
    if d.vertex_count() != 4 {
        return Ok(None);
    }
    for perm in permutations4() {
        if S4_ARCS.iter().any(|&(a, b)| !d.has_arc(perm[a], perm[b])) {
            continue;
        }
        let mu = |a: usize, b: usize| d.multiplicity(perm[a], perm[b]);
        let cases: [(bool, &[(usize, usize)], Option<&[(usize, usize)]>); 4] = [
            (
                mu(1, 3) == 2 && mu(3, 1) == 2,
                &[(0, 1), (1, 2), (2, 0), (1, 3), (3, 1)],
                Some(&[(0, 2), (2, 3), (3, 0), (1, 3), (3, 1)]),
            ),
            (mu(0, 1) == 2 && mu(1, 2) == 2, &[(0, 1), (1, 2), (2, 3), (3, 0)], None),
            (mu(0, 1) == 2 && mu(2, 3) == 2, &[(0, 1), (1, 2), (2, 3), (3, 1), (2, 0)], None),
            (mu(0, 1) == 2 && mu(2, 0) == 2, &[(0, 1), (1, 3), (3, 0), (0, 2), (2, 0)], None),
        ];
        for (holds, a1, a2) in cases {
            if !holds {
                continue;
            }
            let map = |s: &[(usize, usize)]| s.iter().map(|&(a, b)| (perm[a], perm[b])).collect();
            let mut dec = Decomposition::new(map(a1), a2.map(map).unwrap_or_default());
            // extra copies go to side 2 unless both sides were given
            fill_remaining(d, &mut dec, if a2.is_some() { 1 } else { 2 })?;
            if super::verify_decomposition(d, &dec).is_ok() {
                return Ok(Some(dec));
            }
        }
    }
    Ok(None)
}

/// All 24 permutations of `0..4` in lexicographic order.
fn permutations4() -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for e in 0..4 {
                    let p = [a, b, c, e];
                    let mut seen = [false; 4];
                    if p.iter().all(|&x| !std::mem::replace(&mut seen[x], true)) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::verify_decomposition;
    use crate::gallery::{self, ExceptionKind};

    fn s4_plus(extra: &[(usize, usize)]) -> Digraph {
        let mut d = gallery::s4();
        for &(a, b) in extra {
            d = d.with_arc_copy(a, b);
        }
        d
    }

    #[test]
    fn lemma_case_one_split() {
        let d = s4_plus(&[(1, 3), (3, 1)]);
        let dec = s4_lemma(&d).unwrap().unwrap().canonical();
        assert_eq!(dec.a1, vec![(0, 1), (1, 2), (1, 3), (2, 0), (3, 1)]);
        assert_eq!(dec.a2, vec![(0, 2), (1, 3), (2, 3), (3, 0), (3, 1)]);
    }

    #[test]
    fn lemma_cases_two_to_four() {
        let d = s4_plus(&[(0, 1), (1, 2)]);
        let dec = s4_lemma(&d).unwrap().unwrap().canonical();
        assert_eq!(dec.a1, vec![(0, 1), (1, 2), (2, 3), (3, 0)]);

        let d = s4_plus(&[(0, 1), (2, 3)]);
        let dec = s4_lemma(&d).unwrap().unwrap().canonical();
        assert_eq!(dec.a1, vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 1)]);

        let d = s4_plus(&[(0, 1), (2, 0)]);
        let dec = s4_lemma(&d).unwrap().unwrap().canonical();
        assert_eq!(dec.a1, vec![(0, 1), (0, 2), (1, 3), (2, 0), (3, 0)]);
    }

    #[test]
    fn exceptions_refuted() {
        for k in ExceptionKind::MULTIGRAPH {
            let out = decompose_semicomplete_multigraph(&k.digraph()).unwrap();
            assert_eq!(out, DecomposeOutcome::Exception(k));
        }
    }

    #[test]
    fn two_vertex_double_cycle() {
        let d = Digraph::from_weighted_arcs(2, [(0, 1, 2), (1, 0, 2)]).unwrap();
        let out = decompose_semicomplete_multigraph(&d).unwrap();
        let dec = out.decomposition().unwrap();
        assert_eq!(dec.a1, vec![(0, 1), (1, 0)]);
        assert_eq!(dec.a2, vec![(0, 1), (1, 0)]);
    }

    #[test]
    fn contraction_on_three_vertices() {
        // u=0 only leaves through the double arc to 1
        let d = Digraph::from_weighted_arcs(
            3,
            [(0, 1, 2), (1, 2, 2), (2, 0, 1), (2, 1, 1), (1, 0, 1)],
        )
        .unwrap();
        let out = decompose_semicomplete_multigraph(&d).unwrap();
        let dec = out.decomposition().expect("decomposed");
        assert!(verify_decomposition(&d, dec).is_ok());
    }

    #[test]
    fn non_semicomplete_rejected() {
        let d = Digraph::from_weighted_arcs(3, [(0, 1, 2), (1, 0, 2)]).unwrap();
        assert!(matches!(decompose_semicomplete_multigraph(&d), Err(Error::Precondition(_))));
    }
}
