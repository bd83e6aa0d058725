//! Extensions `T[K̄n1, ..., K̄nt]` with every class of size one or two.

use std::collections::VecDeque;

use super::{
    absorb, fill_remaining, finish, multigraph, search, solve, Branch, Ctx, DecomposeOutcome,
    Decomposition, Trace,
};
use crate::composition::CompositionStructure;
use crate::connectivity::{arc_disjoint_paths, cut_vertices, is_k_arc_strong};
use crate::digraph::{Digraph, VertexId};
use crate::error::{internal, Error, Result};
use crate::gallery;
use crate::iso::is_isomorphic;
use crate::oracle::SearchConfig;
use crate::structure::{match_exception, nice_decomposition, Family};

type Arcs = Vec<(VertexId, VertexId)>;

/// Decomposes a 2-arc-strong extension whose classes have at most two
/// vertices and which is not one of the exceptions.
pub fn decompose_small_class_extension(
    d: &Digraph,
    s: &CompositionStructure,
) -> Result<Decomposition> {
    decompose_small_class_extension_traced(d, s, &SearchConfig::default()).map(|(dec, _)| dec)
}

/// [`decompose_small_class_extension`] with an explicit search budget, also
/// returning the branches taken.
pub fn decompose_small_class_extension_traced(
    d: &Digraph,
    s: &CompositionStructure,
    cfg: &SearchConfig,
) -> Result<(Decomposition, Trace)> {
    if !s.is_consistent_with(d) || !s.is_extension(d) {
        return Err(Error::Precondition("structure is not an extension of the digraph".into()));
    }
    if s.classes.iter().any(|c| c.len() > 2) {
        return Err(Error::Precondition("a class has more than two vertices".into()));
    }
    if d.has_parallel_arcs() || is_k_arc_strong(d, 2).is_err() {
        return Err(Error::Precondition("needs a 2-arc-strong digraph without parallel arcs".into()));
    }
    if let Some(k) = match_exception(d, Family::Composition) {
        return Err(Error::Precondition(format!("{k} has no decomposition")));
    }
    let mut ctx = Ctx::new(cfg.clone());
    let dec = small_classes(d, s, &mut ctx)?;
    Ok((dec, ctx.trace))
}

pub(super) fn small_classes(d: &Digraph, s: &CompositionStructure, ctx: &mut Ctx) -> Result<Decomposition> {
    let t = s.class_count();
    if t <= 2 {
        return case1(d, s, ctx);
    }
    if t == 3 {
        return case2(d, s, ctx);
    }
    if is_k_arc_strong(&s.quotient, 2).is_ok() {
        return case3(d, s, ctx);
    }
    case4(d, s, ctx)
}

fn cycle(vs: &[VertexId]) -> Arcs {
    (0..vs.len()).map(|i| (vs[i], vs[(i + 1) % vs.len()])).collect()
}

fn path(vs: &[VertexId]) -> Arcs {
    vs.windows(2).map(|w| (w[0], w[1])).collect()
}

fn size(s: &CompositionStructure, c: usize) -> usize {
    s.classes[c].len()
}

/// Finishes a decomposition of `d[core]` given in the ids of `d`, with
/// unused core arcs going to `side`, then absorbs the other vertices.
fn on_core(d: &Digraph, core: &[VertexId], dec: Decomposition, side: u8) -> Result<Decomposition> {
    let n = d.vertex_count();
    let mut back = vec![usize::MAX; n];
    for (i, &v) in core.iter().enumerate() {
        back[v] = i;
    }
    if dec.a1.iter().chain(&dec.a2).any(|&(a, b)| back[a] == usize::MAX || back[b] == usize::MAX) {
        return Err(internal!("core construction left the core"));
    }
    let (g, map) = super::sub(d, core);
    let mut local = dec.relabeled(&back);
    fill_remaining(&g, &mut local, side)?;
    let local = finish(&g, local)?;
    let mut dec = local.relabeled(&map);
    let mut inside = vec![false; n];
    for &v in core {
        inside[v] = true;
    }
    // a vertex may need others absorbed before it has two neighbours each way
    while let Some(x) = (0..n).find(|&x| !inside[x] && ready(d, &inside, x)) {
        absorb(d, &mut dec, &mut inside, x)?;
    }
    if let Some(x) = (0..n).find(|&x| !inside[x]) {
        return Err(internal!("vertex {x} never gets two in- and out-neighbours in the core"));
    }
    finish(d, dec)
}

fn ready(d: &Digraph, inside: &[bool], x: VertexId) -> bool {
    d.in_neighbors(x).iter().filter(|&&v| inside[v]).count() >= 2
        && d.out_neighbors(x).iter().filter(|&&v| inside[v]).count() >= 2
}

fn done(d: &Digraph, mut dec: Decomposition, side: u8) -> Result<Decomposition> {
    fill_remaining(d, &mut dec, side)?;
    finish(d, dec)
}

/// Two doubled classes: a 4-cycle and its reverse-order twin.
fn case1(d: &Digraph, s: &CompositionStructure, ctx: &mut Ctx) -> Result<Decomposition> {
    ctx.mark(Branch::Case1);
    if s.class_count() != 2 || s.classes.iter().any(|c| c.len() != 2) {
        return Err(internal!("two classes must both be doubled"));
    }
    let (a, b) = (&s.classes[0], &s.classes[1]);
    let dec = Decomposition::new(cycle(&[a[0], b[0], a[1], b[1]]), cycle(&[a[0], b[1], a[1], b[0]]));
    finish(d, dec)
}

/// Labels the classes `c1, c2, c3` with `c1 -> c2 -> c3 -> c1` in the
/// quotient and the given sizes.
fn label3(s: &CompositionStructure, sizes: [usize; 3]) -> Option<[usize; 3]> {
    let q = &s.quotient;
    for p in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
        if (0..3).all(|i| size(s, p[i]) == sizes[i])
            && q.has_arc(p[0], p[1])
            && q.has_arc(p[1], p[2])
            && q.has_arc(p[2], p[0])
        {
            return Some(p);
        }
    }
    None
}

fn case2(d: &Digraph, s: &CompositionStructure, ctx: &mut Ctx) -> Result<Decomposition> {
    let doubled = s.classes.iter().filter(|c| c.len() == 2).count();
    let c = &s.classes;
    match doubled {
        3 => {
            ctx.mark(Branch::Case2Search);
            search(d, ctx)
        }
        2 => {
            ctx.mark(Branch::Case2Pair);
            let [c1, c2, c3] =
                label3(s, [1, 2, 2]).ok_or_else(|| internal!("no Hamilton cycle in the quotient"))?;
            let (x, h2, h3) = (c[c1][0], &c[c2], &c[c3]);
            let mut a1 = cycle(&[h2[0], h3[0], h2[1], h3[1]]);
            a1.extend([(x, h2[1]), (h3[1], x)]);
            let mut a2 = cycle(&[h2[0], h3[1], h2[1], h3[0]]);
            a2.extend([(x, h2[0]), (h3[0], x)]);
            done(d, Decomposition::new(a1, a2), 1)
        }
        1 => {
            ctx.mark(Branch::Case2Hamilton);
            let [c1, c2, c3] =
                label3(s, [1, 1, 2]).ok_or_else(|| internal!("no Hamilton cycle in the quotient"))?;
            let (x, y, z) = (c[c1][0], c[c2][0], &c[c3]);
            let a1 = cycle(&[x, z[0], y, z[1]]);
            let a2 = cycle(&[x, z[1], y, z[0]]);
            done(d, Decomposition::new(a1, a2), 1)
        }
        _ => {
            ctx.mark(Branch::Case2Cycles);
            let (x, y, z) = (c[0][0], c[1][0], c[2][0]);
            done(d, Decomposition::new(cycle(&[x, y, z]), cycle(&[x, z, y])), 1)
        }
    }
}

/// 2-arc-strong quotient on at least four vertices.
fn case3(d: &Digraph, s: &CompositionStructure, ctx: &mut Ctx) -> Result<Decomposition> {
    let c = &s.classes;
    let s4 = match s.class_count() {
        4 => is_isomorphic(&gallery::s4(), &s.quotient)?,
        _ => None,
    };
    if let Some(phi) = s4 {
        ctx.mark(Branch::Case3S4);
        let j = (0..4)
            .find(|&j| c[j].len() == 2)
            .ok_or_else(|| internal!("S4 itself reached the construction"))?;
        let i0 = phi.iter().position(|&x| x == j).expect("bijection");
        // rotating S4 is an automorphism; put class j first
        let psi = |k: usize| phi[(k + i0) % 4];
        let u = &c[psi(0)];
        let (h2, h3, h4) = (c[psi(1)][0], c[psi(2)][0], c[psi(3)][0]);
        let a2 = vec![(u[1], h2), (h2, h3), (h3, h4), (h4, u[0]), (u[0], h3), (h3, u[1])];
        let a1 = vec![(u[0], h2), (h2, h4), (h4, u[1]), (u[1], h3), (h3, u[0])];
        let mut core = vec![u[0], u[1], h2, h3, h4];
        core.sort_unstable();
        return on_core(d, &core, Decomposition::new(a1, a2), 1);
    }
    ctx.mark(Branch::Case3Search);
    let reps: Vec<VertexId> = c.iter().map(|c| c[0]).collect();
    let (g, map) = super::sub(d, &reps);
    let dec = search(&g, ctx)?.relabeled(&map);
    on_core(d, &reps, dec, 1)
}

/// The decomposition of `T4s[2,2,2,1]` as labelled by
/// [`gallery::t4s_2221`]: vertex 6 is the singleton class.
fn pattern_2221() -> Decomposition {
    let a1 = vec![
        (6, 0), (0, 2), (2, 4), (5, 1), (4, 1), (1, 3), (3, 5), (3, 6),
        (4, 0), (2, 6), (5, 6),
    ];
    let a2 = vec![(6, 1), (1, 2), (2, 5), (5, 0), (0, 3), (3, 4), (4, 6)];
    Decomposition::new(a1, a2)
}

fn case4(d: &Digraph, s: &CompositionStructure, ctx: &mut Ctx) -> Result<Decomposition> {
    let n = d.vertex_count();
    if n == 7 {
        let pat = gallery::t4s_2221();
        if *d == pat {
            ctx.mark(Branch::Case4Pattern);
            return finish(d, pattern_2221());
        }
        if let Some(f) = is_isomorphic(&pat, d)? {
            ctx.mark(Branch::Case4Pattern);
            return finish(d, pattern_2221().relabeled(&f));
        }
        if let Some(f) = is_isomorphic(&pat, &d.reverse())? {
            ctx.mark(Branch::Case4Pattern);
            return finish(d, pattern_2221().relabeled(&f).reversed());
        }
    }

    let nice = nice_decomposition(&s.quotient)?;
    if let [(up, u1)] = nice.cut_arcs[..] {
        if let Some(dec) = case41(d, s, up, u1, ctx)? {
            return Ok(dec);
        }
    }
    if let Some(&u) = cut_vertices(d)?.first() {
        return super::cut_vertex::cut_vertex(d, u, ctx);
    }

    // drop doubled-class vertices while that keeps a non-exceptional
    // 2-arc-strong digraph
    let mut keep = vec![true; n];
    let mut removed = Vec::new();
    for cl in s.classes.iter().filter(|c| c.len() == 2) {
        let z = cl[1];
        keep[z] = false;
        let vs: Vec<VertexId> = (0..n).filter(|&v| keep[v]).collect();
        let (g, _) = super::sub(d, &vs);
        if is_k_arc_strong(&g, 2).is_ok() && match_exception(&g, Family::Composition).is_none() {
            removed.push(z);
        } else {
            keep[z] = true;
        }
    }
    if !removed.is_empty() {
        ctx.mark(Branch::Case4Recurse);
        let vs: Vec<VertexId> = (0..n).filter(|&v| keep[v]).collect();
        let (g, map) = super::sub(d, &vs);
        let mut dec = match solve(&g, ctx)? {
            DecomposeOutcome::Decomposed(dec) => dec.relabeled(&map),
            _ => return Err(internal!("reduced extension lost its decomposition")),
        };
        while let Some(z) = removed.pop() {
            absorb(d, &mut dec, &mut keep, z).map_err(|e| internal!("{e}"))?;
        }
        return finish(d, dec);
    }

    let p = nice.parts.len();
    let ind = &nice.ind;
    let cuts = &nice.cut_arcs;
    let from_last = cuts.iter().copied().find(|&(a, _)| ind[a] == p - 1);
    let into_first = cuts.iter().copied().find(|&(_, b)| ind[b] == 0);
    let (Some((up, uh)), Some((uk, u1))) = (from_last, into_first) else {
        return Err(internal!("nice decomposition without end cut-arcs"));
    };
    match cuts.len() {
        1 => off_script(d, ctx),
        2 => {
            if (up, uh) == (uk, u1) {
                return Err(internal!("two cut-arcs yet one spans all parts"));
            }
            if [u1, up].iter().any(|&c| size(s, c) != 1) || [uh, uk].iter().any(|&c| size(s, c) != 2) {
                return off_script(d, ctx);
            }
            if uh == uk {
                case421(d, s, &nice.parts, ind, up, uk, u1, ctx)
            } else if ind[uh] == ind[uk] {
                case422(d, s, &nice.parts, ind, up, uh, uk, u1, ctx)
            } else if ind[uh] < ind[uk] {
                case423(d, s, up, uh, uk, u1, ctx)
            } else {
                Err(internal!("cut-arcs in the wrong order"))
            }
        }
        3 => {
            if !cuts.contains(&(uh, uk))
                || [u1, up].iter().any(|&c| size(s, c) != 1)
                || [uh, uk].iter().any(|&c| size(s, c) != 2)
            {
                return off_script(d, ctx);
            }
            case43(d, s, up, uh, uk, u1, ctx)
        }
        _ => off_script(d, ctx),
    }
}

/// Cut-arc layouts the case analysis does not reach, e.g. four cut-arcs
/// with no cut-vertex. Deletes a vertex that leaves a 2-arc-strong
/// non-exception and absorbs it back; search if there is none.
fn off_script(d: &Digraph, ctx: &mut Ctx) -> Result<Decomposition> {
    let n = d.vertex_count();
    for x in 0..n {
        let (g, map) = d.without_vertex(x);
        if is_k_arc_strong(&g, 2).is_err() || match_exception(&g, Family::Composition).is_some() {
            continue;
        }
        ctx.mark(Branch::Case4Delete);
        let mut dec = match solve(&g, ctx)? {
            DecomposeOutcome::Decomposed(dec) => dec.relabeled(&map),
            _ => return Err(internal!("2-arc-strong non-exception refuted")),
        };
        let mut keep = vec![true; n];
        keep[x] = false;
        absorb(d, &mut dec, &mut keep, x)?;
        return finish(d, dec);
    }
    ctx.mark(Branch::Case4Search);
    search(d, ctx)
}

/// One cut-arc `up -> u1`.
fn case41(
    d: &Digraph,
    s: &CompositionStructure,
    up: usize,
    u1: usize,
    ctx: &mut Ctx,
) -> Result<Option<Decomposition>> {
    let (hp, h1) = (size(s, up), size(s, u1));
    let others_single = (0..s.class_count()).all(|x| x == up || x == u1 || size(s, x) == 1);
    match (hp, h1) {
        (2, 2) => {}
        (2, 1) | (1, 2) if others_single => {}
        _ => return Ok(None),
    }
    if hp == 1 {
        let rd = d.reverse();
        let rs = CompositionStructure::from_classes(&rd, s.classes.clone())?;
        return match case41(&rd, &rs, u1, up, ctx)? {
            Some(dec) => finish(d, dec.reversed()).map(Some),
            None => Ok(None),
        };
    }
    let c = &s.classes;
    let tq = s.quotient.with_arc_copy(up, u1);
    let r = match multigraph::multigraph(&tq, ctx)? {
        DecomposeOutcome::Decomposed(r) => r,
        _ => return Ok(None),
    };
    let lift = |arcs: &Arcs, all: bool| -> Arcs {
        let mut out = Vec::new();
        for &(a, b) in arcs {
            if (a, b) == (up, u1) {
                continue;
            }
            if all {
                for &x in &c[a] {
                    for &y in &c[b] {
                        out.push((x, y));
                    }
                }
            } else {
                out.push((c[a][0], c[b][0]));
            }
        }
        out
    };
    match (hp, h1) {
        (2, 2) => {
            ctx.mark(Branch::Case41Double);
            let (p, o) = (&c[up], &c[u1]);
            let mut a1 = lift(&r.a1, true);
            a1.extend([(p[0], o[0]), (p[1], o[1])]);
            let mut a2 = lift(&r.a2, true);
            a2.extend([(p[0], o[1]), (p[1], o[0])]);
            done(d, Decomposition::new(a1, a2), 1).map(Some)
        }
        _ => {
            let (mut r1, mut r2) = (r.a1, r.a2);
            if !r1.iter().any(|&(a, b)| a == up && b != u1) {
                std::mem::swap(&mut r1, &mut r2);
            }
            let Some(y) = r1.iter().find(|&&(a, b)| a == up && b != u1).map(|&(_, b)| b) else {
                return Ok(None);
            };
            ctx.mark(Branch::Case41Single);
            let x = last_before(&r1, y, up, s.class_count())
                .ok_or_else(|| internal!("side is not strong"))?;
            let (p1, p2, one) = (c[up][0], c[up][1], c[u1][0]);
            let mut a1 = lift(&r1, false);
            let mut a2 = lift(&r2, false);
            a2.push((p1, one));
            let xv = c[x][0];
            a1.extend([(xv, p2), (p2, one)]);
            let inn = d
                .in_neighbors(p2)
                .iter()
                .copied()
                .filter(|&v| v != xv)
                .min()
                .ok_or_else(|| internal!("{p2} has one in-neighbour"))?;
            let out = d
                .out_neighbors(p2)
                .iter()
                .copied()
                .filter(|&v| v != one)
                .min()
                .ok_or_else(|| internal!("{p2} has one out-neighbour"))?;
            a2.extend([(inn, p2), (p2, out)]);
            done(d, Decomposition::new(a1, a2), 1).map(Some)
        }
    }
}

/// The vertex just before `to` on a shortest `from -> to` path using `arcs`.
fn last_before(arcs: &Arcs, from: VertexId, to: VertexId, n: usize) -> Option<VertexId> {
    let mut pred = vec![usize::MAX; n];
    let mut seen = vec![false; n];
    seen[from] = true;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        for &(a, b) in arcs {
            if a == u && !seen[b] {
                seen[b] = true;
                pred[b] = u;
                if b == to {
                    return Some(u);
                }
                queue.push_back(b);
            }
        }
    }
    None
}

fn part_vertices(s: &CompositionStructure, part: &[usize]) -> Vec<VertexId> {
    let mut vs: Vec<VertexId> = part.iter().flat_map(|&c| s.classes[c].iter().copied()).collect();
    vs.sort_unstable();
    vs
}

/// Two cut-arcs `up -> uk -> ... -> uk -> u1` sharing the doubled class `uk`.
#[allow(clippy::too_many_arguments)]
fn case421(
    d: &Digraph,
    s: &CompositionStructure,
    parts: &[Vec<usize>],
    ind: &[usize],
    up: usize,
    uk: usize,
    u1: usize,
    ctx: &mut Ctx,
) -> Result<Decomposition> {
    if parts.len() != 3 || ind[uk] != 1 {
        return Err(internal!("shared cut-arc head outside a middle part"));
    }
    let c = &s.classes;
    let (one, p, k1, k2) = (c[u1][0], c[up][0], c[uk][0], c[uk][1]);
    let mid = &parts[1];
    if mid.len() == 2 {
        ctx.mark(Branch::Case421Small);
        let r = c[mid.iter().copied().find(|&x| x != uk).expect("two classes")][0];
        let a1 = cycle(&[one, p, k1, r, k2]);
        let mut a2 = path(&[p, k2, r, k1, one]);
        a2.extend(path(&[one, r, p]));
        return done(d, Decomposition::new(a1, a2), 1);
    }
    ctx.mark(Branch::Case421);
    let d2 = part_vertices(s, mid);
    let in_d2 = |v: VertexId| d2.binary_search(&v).is_ok();
    // lowest in-neighbour v of k1 that leaves a different out-neighbour w
    let ins: Vec<VertexId> = d.in_neighbors(k1).iter().copied().filter(|&v| in_d2(v)).collect();
    let outs: Vec<VertexId> = d.out_neighbors(k1).iter().copied().filter(|&w| in_d2(w)).collect();
    let (v, w) = ins
        .iter()
        .flat_map(|&v| outs.iter().map(move |&w| (v, w)))
        .find(|&(v, w)| v != w)
        .ok_or_else(|| internal!("{k1} has a single neighbour in its part"))?;
    let mut a1 = vec![(p, k1), (k1, one), (one, w), (v, p)];
    for &a in &d2 {
        for &b in d.out_neighbors(a) {
            if a != k1 && b != k1 && in_d2(b) {
                a1.push((a, b));
            }
        }
    }
    let mut a2 = vec![(p, k2), (k2, one), (one, v), (v, k1), (k1, w), (w, p)];
    for &z in &d2 {
        if ![k1, k2, v, w].contains(&z) {
            a2.extend([(one, z), (z, p)]);
        }
    }
    done(d, Decomposition::new(a1, a2), 1)
}

/// Two cut-arcs `up -> uh` and `uk -> u1` with `uh` and `uk` in one part.
#[allow(clippy::too_many_arguments)]
fn case422(
    d: &Digraph,
    s: &CompositionStructure,
    parts: &[Vec<usize>],
    ind: &[usize],
    up: usize,
    uh: usize,
    uk: usize,
    u1: usize,
    ctx: &mut Ctx,
) -> Result<Decomposition> {
    ctx.mark(Branch::Case422);
    if parts.len() != 3 || ind[uh] != 1 {
        return Err(internal!("cut-arc heads outside a middle part"));
    }
    let c = &s.classes;
    let mid = &parts[1];
    let (tq2, qmap) = super::sub(&s.quotient, mid);
    let pos = |x: usize| mid.iter().position(|&y| y == x).expect("class in part");
    let pack = match arc_disjoint_paths(&tq2, pos(uh), pos(uk), 2)? {
        Ok(pack) => pack,
        Err(_) => return Err(internal!("no two arc-disjoint paths inside the middle part")),
    };
    let paths: Vec<Vec<usize>> =
        pack.paths.iter().map(|pth| pth.iter().map(|&x| qmap[x]).collect()).collect();
    let (h, k) = (&c[uh], &c[uk]);
    let lift = |pth: &[usize]| -> Arcs {
        let mut out = Vec::new();
        let m = pth.len();
        for i in 0..m - 1 {
            let tails: Vec<VertexId> = if i == 0 { h.clone() } else { vec![c[pth[i]][0]] };
            let heads: Vec<VertexId> = if i + 1 == m - 1 { k.clone() } else { vec![c[pth[i + 1]][0]] };
            for &a in &tails {
                for &b in &heads {
                    out.push((a, b));
                }
            }
        }
        out
    };
    let (one, p) = (c[u1][0], c[up][0]);
    let mut f1 = vec![(p, h[0]), (k[1], one), (one, h[1]), (k[0], p)];
    f1.extend(lift(&paths[0]));
    let mut f2 = vec![(p, h[1]), (k[1], p), (one, h[0]), (k[0], one)];
    f2.extend(lift(&paths[1]));
    for &x in mid {
        if x == uh || x == uk {
            continue;
        }
        let xv = c[x][0];
        if paths[0].contains(&x) {
            f2.extend([(one, xv), (xv, p)]);
        } else {
            f1.extend([(one, xv), (xv, p)]);
        }
    }
    done(d, Decomposition::new(f1, f2), 2)
}

/// Two cut-arcs `up -> uh` and `uk -> u1` with `uh` in an earlier part.
fn case423(
    d: &Digraph,
    s: &CompositionStructure,
    up: usize,
    uh: usize,
    uk: usize,
    u1: usize,
    ctx: &mut Ctx,
) -> Result<Decomposition> {
    ctx.mark(Branch::Case423);
    let c = &s.classes;
    let (one, p, h, k) = (c[u1][0], c[up][0], &c[uh], &c[uk]);
    let six = [one, p, h[0], h[1], k[0], k[1]];
    let z = (0..d.vertex_count())
        .find(|&z| {
            !six.contains(&z)
                && h.iter().all(|&x| d.has_arc(x, z))
                && k.iter().all(|&x| d.has_arc(z, x))
        });
    let Some(z) = z else { return off_script(d, ctx) };
    let mut a1 = cycle(&[p, h[0], k[0], one, h[1], k[1]]);
    a1.extend([(one, z), (z, p)]);
    let mut a2 = cycle(&[k[1], one, p, h[1], z]);
    a2.extend(path(&[one, h[0], k[1]]));
    a2.extend(path(&[h[1], k[0], p]));
    let mut core = six.to_vec();
    core.push(z);
    core.sort_unstable();
    on_core(d, &core, Decomposition::new(a1, a2), 1)
}

/// Three cut-arcs `up -> uh -> uk -> u1`.
fn case43(
    d: &Digraph,
    s: &CompositionStructure,
    up: usize,
    uh: usize,
    uk: usize,
    u1: usize,
    ctx: &mut Ctx,
) -> Result<Decomposition> {
    ctx.mark(Branch::Case43);
    let c = &s.classes;
    let (one, p, h, k) = (c[u1][0], c[up][0], &c[uh], &c[uk]);
    let six = [one, p, h[0], h[1], k[0], k[1]];
    let w = (0..d.vertex_count())
        .find(|&w| {
            !six.contains(&w)
                && k.iter().all(|&x| d.has_arc(x, w))
                && h.iter().all(|&x| d.has_arc(w, x))
        });
    let Some(w) = w else { return off_script(d, ctx) };
    let mut a1 = cycle(&[one, w, p, h[1], k[1]]);
    a1.extend(path(&[one, h[0], k[0], p]));
    let a2 = cycle(&[one, p, h[0], k[1], w, h[1], k[0]]);
    let mut core = six.to_vec();
    core.push(w);
    core.sort_unstable();
    on_core(d, &core, Decomposition::new(a1, a2), 1)
}
