//! Strong components, arc-strong connectivity with certificates, cut-arcs,
//! cut-vertices and arc-disjoint path packing.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::digraph::{Digraph, VertexId};
use crate::dominators::{flow_bridges, nontrivial_dominators, DomTree};
use crate::error::{Error, Result};

/// A vertex set with too few arcs leaving it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutWitness {
    pub side: Vec<VertexId>,
    /// Arcs from `side` to the rest, one entry per copy.
    pub crossing: Vec<(VertexId, VertexId)>,
}

impl CutWitness {
    /// Builds the witness for `side`, listing every crossing arc copy.
    pub fn from_side(d: &Digraph, mut side: Vec<VertexId>) -> CutWitness {
        side.sort_unstable();
        let mut inside = vec![false; d.vertex_count()];
        for &v in &side {
            inside[v] = true;
        }
        let mut crossing = Vec::new();
        for &u in &side {
            for &v in d.out_neighbors(u) {
                if !inside[v] {
                    for _ in 0..d.multiplicity(u, v) {
                        crossing.push((u, v));
                    }
                }
            }
        }
        CutWitness { side, crossing }
    }

    /// Recomputes the crossing arcs and checks the side is a proper subset.
    pub fn is_valid_for(&self, d: &Digraph, k: usize) -> bool {
        let n = d.vertex_count();
        if self.side.is_empty() || self.side.len() >= n || self.side.iter().any(|&v| v >= n) {
            return false;
        }
        let fresh = CutWitness::from_side(d, self.side.clone());
        fresh.side.windows(2).all(|w| w[0] < w[1])
            && fresh.crossing == self.crossing
            && self.crossing.len() < k
    }
}

/// Arc-disjoint `s -> t` paths, as vertex sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathPack {
    pub paths: Vec<Vec<VertexId>>,
}

/// Vertices reachable from `s`.
pub fn reachable_from(d: &Digraph, s: VertexId) -> Vec<bool> {
    let mut seen = vec![false; d.vertex_count()];
    let mut queue = VecDeque::from([s]);
    seen[s] = true;
    while let Some(u) = queue.pop_front() {
        for &v in d.out_neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                queue.push_back(v);
            }
        }
    }
    seen
}

/// Strong components in an order where no arc runs from `Q_i` to `Q_j`
/// with `i > j`.
pub fn strong_components(d: &Digraph) -> Vec<Vec<VertexId>> {
    // iterative Tarjan; components pop out sinks first
    let n = d.vertex_count();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut comps = Vec::new();
    let mut counter = 0;
    for start in 0..n {
        if index[start] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(start, 0)];
        index[start] = counter;
        low[start] = counter;
        counter += 1;
        stack.push(start);
        on_stack[start] = true;
        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            let outs = d.out_neighbors(v);
            if *i < outs.len() {
                let w = outs[*i];
                *i += 1;
                if index[w] == usize::MAX {
                    index[w] = counter;
                    low[w] = counter;
                    counter += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(p, _)) = call.last() {
                    low[p] = low[p].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut comp = Vec::new();
                    loop {
                        let w = stack.pop().unwrap();
                        on_stack[w] = false;
                        comp.push(w);
                        if w == v {
                            break;
                        }
                    }
                    comp.sort_unstable();
                    comps.push(comp);
                }
            }
        }
    }
    comps.reverse();
    comps
}

pub fn is_strong(d: &Digraph) -> bool {
    let n = d.vertex_count();
    if n <= 1 {
        return true;
    }
    reachable_from(d, 0).iter().all(|&x| x) && reachable_from(&d.reverse(), 0).iter().all(|&x| x)
}

/// Residual network for unit-capacity augmenting paths; arc multiplicity is
/// the capacity.
struct Flow<'a> {
    d: &'a Digraph,
    n: usize,
    /// net flow on `u -> v`, antisymmetric
    f: Vec<i32>,
}

impl<'a> Flow<'a> {
    fn new(d: &'a Digraph) -> Self {
        let n = d.vertex_count();
        Flow { d, n, f: vec![0; n * n] }
    }

    fn residual(&self, u: VertexId, v: VertexId) -> i32 {
        self.d.multiplicity(u, v) as i32 - self.f[u * self.n + v]
    }

    /// BFS in the residual network; returns parents, or the reached set on failure.
    fn augment(&mut self, s: VertexId, t: VertexId) -> std::result::Result<(), Vec<bool>> {
        let mut parent = vec![usize::MAX; self.n];
        let mut seen = vec![false; self.n];
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let d = self.d;
            let nbrs = d.out_neighbors(u).iter().chain(d.in_neighbors(u));
            for &v in nbrs {
                if !seen[v] && self.residual(u, v) > 0 {
                    seen[v] = true;
                    parent[v] = u;
                    if v == t {
                        let mut x = t;
                        while x != s {
                            let p = parent[x];
                            self.f[p * self.n + x] += 1;
                            self.f[x * self.n + p] -= 1;
                            x = p;
                        }
                        return Ok(());
                    }
                    queue.push_back(v);
                }
            }
        }
        Err(seen)
    }

    /// Pushes up to `k` units; returns the value and, if below `k`, the
    /// source side of a minimum cut.
    fn run(&mut self, s: VertexId, t: VertexId, k: usize) -> (usize, Option<Vec<bool>>) {
        let mut value = 0;
        while value < k {
            match self.augment(s, t) {
                Ok(()) => value += 1,
                Err(side) => return (value, Some(side)),
            }
        }
        (value, None)
    }

    /// Splits the current flow into simple paths.
    fn paths(&self, s: VertexId, t: VertexId, count: usize) -> Vec<Vec<VertexId>> {
        let n = self.n;
        let mut f: Vec<i32> = self.f.iter().map(|&x| x.max(0)).collect();
        let mut out = Vec::new();
        for _ in 0..count {
            let mut path = vec![s];
            let mut pos = vec![usize::MAX; n];
            pos[s] = 0;
            let mut u = s;
            while u != t {
                let v = (0..n).find(|&v| f[u * n + v] > 0).expect("flow conservation");
                f[u * n + v] -= 1;
                if pos[v] != usize::MAX {
                    // drop the cycle just closed
                    for &w in &path[pos[v] + 1..] {
                        pos[w] = usize::MAX;
                    }
                    path.truncate(pos[v] + 1);
                } else {
                    pos[v] = path.len();
                    path.push(v);
                }
                u = v;
            }
            out.push(path);
        }
        out
    }
}

/// Local arc-connectivity from `s` to `t`, capped at `k`.
pub fn local_arc_connectivity(d: &Digraph, s: VertexId, t: VertexId, k: usize) -> usize {
    Flow::new(d).run(s, t, k).0
}

fn side_of(mask: &[bool]) -> Vec<VertexId> {
    mask.iter().enumerate().filter(|(_, &b)| b).map(|(v, _)| v).collect()
}

/// `k` arc-disjoint `s -> t` paths, or a set containing `s` but not `t`
/// with fewer than `k` arcs leaving it.
pub fn arc_disjoint_paths(
    d: &Digraph,
    s: VertexId,
    t: VertexId,
    k: usize,
) -> Result<std::result::Result<PathPack, CutWitness>> {
    let n = d.vertex_count();
    if s >= n || t >= n || s == t {
        return Err(Error::Precondition(format!("bad terminals {s}, {t}")));
    }
    let mut flow = Flow::new(d);
    match flow.run(s, t, k) {
        (value, None) => Ok(Ok(PathPack { paths: flow.paths(s, t, value) })),
        (_, Some(side)) => Ok(Err(CutWitness::from_side(d, side_of(&side)))),
    }
}

/// Whether `d` is `k`-arc-strong, with a violating cut otherwise.
pub fn is_k_arc_strong(d: &Digraph, k: usize) -> std::result::Result<(), CutWitness> {
    let n = d.vertex_count();
    if n <= 1 || k == 0 {
        return Ok(());
    }
    if k <= 2 {
        return fast_check(d, k);
    }
    for v in 1..n {
        for (s, t) in [(0, v), (v, 0)] {
            if let (_, Some(side)) = Flow::new(d).run(s, t, k) {
                return Err(CutWitness::from_side(d, side_of(&side)));
            }
        }
    }
    Ok(())
}

/// `k <= 2` via reachability and dominator bridges.
fn fast_check(d: &Digraph, k: usize) -> std::result::Result<(), CutWitness> {
    let n = d.vertex_count();
    let fwd = reachable_from(d, 0);
    if fwd.iter().any(|&x| !x) {
        return Err(CutWitness::from_side(d, side_of(&fwd)));
    }
    let rev = d.reverse();
    let bwd = reachable_from(&rev, 0);
    if bwd.iter().any(|&x| !x) {
        let side: Vec<VertexId> = (0..n).filter(|&v| !bwd[v]).collect();
        return Err(CutWitness::from_side(d, side));
    }
    if k == 1 {
        return Ok(());
    }
    if let Some(&(a, b)) = bridges_forward(d).first() {
        let side = side_of(&reachable_from(&d.without_arc_copy(a, b), 0));
        return Err(CutWitness::from_side(d, side));
    }
    if let Some(&(a, b)) = bridges_forward(&rev).first() {
        // arc b -> a of d is needed by every path into 0
        let reach = reachable_from(&rev.without_arc_copy(a, b), 0);
        let side: Vec<VertexId> = (0..n).filter(|&v| !reach[v]).collect();
        return Err(CutWitness::from_side(d, side));
    }
    Ok(())
}

fn bridges_forward(d: &Digraph) -> Vec<(VertexId, VertexId)> {
    let dom = DomTree::new(d, 0);
    flow_bridges(d, 0, &dom)
}

/// Single-copy arcs whose deletion leaves `d` non-strong, in `(tail, head)` order.
pub fn cut_arcs(d: &Digraph) -> Result<Vec<(VertexId, VertexId)>> {
    if !is_strong(d) {
        return Err(Error::Precondition("cut_arcs needs a strong digraph".into()));
    }
    if d.vertex_count() <= 1 {
        return Ok(Vec::new());
    }
    let mut arcs = bridges_forward(d);
    arcs.extend(bridges_forward(&d.reverse()).into_iter().map(|(a, b)| (b, a)));
    arcs.sort_unstable();
    arcs.dedup();
    Ok(arcs)
}

/// Vertices whose removal leaves `d` non-strong, in increasing order.
pub fn cut_vertices(d: &Digraph) -> Result<Vec<VertexId>> {
    let n = d.vertex_count();
    if n < 3 {
        return Err(Error::Precondition("cut_vertices needs at least 3 vertices".into()));
    }
    if !is_strong(d) {
        return Err(Error::Precondition("cut_vertices needs a strong digraph".into()));
    }
    let rev = d.reverse();
    let mut mark = vec![false; n];
    for v in nontrivial_dominators(0, &DomTree::new(d, 0)) {
        mark[v] = true;
    }
    for v in nontrivial_dominators(0, &DomTree::new(&rev, 0)) {
        mark[v] = true;
    }
    if !is_strong(&d.without_vertex(0).0) {
        mark[0] = true;
    }
    Ok((0..n).filter(|&v| mark[v]).collect())
}
