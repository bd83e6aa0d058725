//! Arc-disjoint out- and in-branchings.
//!
//! Branchings are grown one arc at a time in the manner of Lovász's proof of
//! Edmonds' theorem: an arc leaving the current tree is accepted when the
//! arcs not yet used still carry `k - 1` disjoint branchings plus the rest of
//! the current one.

use std::collections::VecDeque;

use crate::connectivity::{local_arc_connectivity, reachable_from, CutWitness};
use crate::digraph::{Digraph, VertexId};
use crate::dominators::{flow_bridges, DomTree};
use crate::error::{internal, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Out,
    In,
}

/// A spanning tree oriented away from (`Out`) or towards (`In`) its root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branching {
    pub root: VertexId,
    /// For `Out`, the arc entering each non-root vertex; for `In`, the arc
    /// leaving it. `None` at the root.
    pub parent_arc: Vec<Option<(VertexId, VertexId)>>,
    pub direction: Direction,
}

impl Branching {
    pub fn arcs(&self) -> Vec<(VertexId, VertexId)> {
        self.parent_arc.iter().flatten().copied().collect()
    }

    fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.parent_arc[v].map(|(a, b)| match self.direction {
            Direction::Out => a,
            Direction::In => b,
        })
    }

    /// Vertices other than the root with no children.
    pub fn leaves(&self) -> Vec<VertexId> {
        let n = self.parent_arc.len();
        let mut has_child = vec![false; n];
        for v in 0..n {
            if let Some(p) = self.parent(v) {
                has_child[p] = true;
            }
        }
        (0..n).filter(|&v| v != self.root && !has_child[v]).collect()
    }

    /// Vertices that are neither the root nor a leaf.
    pub fn interior(&self) -> Vec<VertexId> {
        let n = self.parent_arc.len();
        let mut has_child = vec![false; n];
        for v in 0..n {
            if let Some(p) = self.parent(v) {
                has_child[p] = true;
            }
        }
        (0..n).filter(|&v| v != self.root && has_child[v]).collect()
    }

    /// Checks that the arcs lie in `d` and form a spanning branching.
    pub fn is_valid_in(&self, d: &Digraph) -> bool {
        let n = d.vertex_count();
        if self.parent_arc.len() != n || self.root >= n || self.parent_arc[self.root].is_some() {
            return false;
        }
        for v in 0..n {
            if v == self.root {
                continue;
            }
            let Some((a, b)) = self.parent_arc[v] else {
                return false;
            };
            let own = match self.direction {
                Direction::Out => b,
                Direction::In => a,
            };
            if own != v || !d.has_arc(a, b) {
                return false;
            }
        }
        // every vertex reaches the root along parents
        (0..n).all(|v| {
            let mut x = v;
            for _ in 0..n {
                match self.parent(x) {
                    Some(p) => x = p,
                    None => break,
                }
            }
            x == self.root
        })
    }
}

/// `k` arc-disjoint out-branchings rooted at `root`, or a set containing the
/// root with fewer than `k` arcs leaving it.
pub fn arc_disjoint_out_branchings(
    d: &Digraph,
    root: VertexId,
    k: usize,
) -> Result<std::result::Result<Vec<Branching>, CutWitness>> {
    let n = d.vertex_count();
    if root >= n {
        return Err(crate::error::Error::Precondition(format!("root {root} out of range")));
    }
    if let Some(w) = root_cut(d, root, k) {
        return Ok(Err(w));
    }
    let mut rest = d.clone();
    let mut out = Vec::with_capacity(k);
    for i in 0..k {
        let b = if i + 1 == k {
            bfs_branching(&rest, root)
        } else {
            grow(&rest, root, k - i)?
        };
        let mut builder = rest.to_builder();
        for (a, h) in b.arcs() {
            let m = builder.multiplicity(a, h);
            builder.set_multiplicity(a, h, m - 1)?;
        }
        rest = builder.build();
        out.push(b);
    }
    Ok(Ok(out))
}

/// In-branchings, computed on the reverse digraph.
pub fn arc_disjoint_in_branchings(
    d: &Digraph,
    root: VertexId,
    k: usize,
) -> Result<std::result::Result<Vec<Branching>, CutWitness>> {
    let rev = d.reverse();
    Ok(match arc_disjoint_out_branchings(&rev, root, k)? {
        Ok(bs) => Ok(bs
            .into_iter()
            .map(|b| Branching {
                root: b.root,
                parent_arc: b.parent_arc.iter().map(|a| a.map(|(x, y)| (y, x))).collect(),
                direction: Direction::In,
            })
            .collect()),
        Err(w) => {
            // a set S with few arcs leaving it in the reverse has few entering in d
            let mut inside = vec![false; d.vertex_count()];
            for &v in &w.side {
                inside[v] = true;
            }
            let side: Vec<VertexId> = (0..d.vertex_count()).filter(|&v| !inside[v]).collect();
            Err(CutWitness::from_side(d, side))
        }
    })
}

/// A set containing `root` with fewer than `k` arcs leaving, if any.
fn root_cut(d: &Digraph, root: VertexId, k: usize) -> Option<CutWitness> {
    let n = d.vertex_count();
    if k == 0 || n <= 1 {
        return None;
    }
    for v in 0..n {
        if v == root {
            continue;
        }
        if local_arc_connectivity(d, root, v, k) < k {
            if let Err(w) = crate::connectivity::arc_disjoint_paths(d, root, v, k).ok()? {
                return Some(w);
            }
        }
    }
    None
}

fn bfs_branching(d: &Digraph, root: VertexId) -> Branching {
    let n = d.vertex_count();
    let mut parent_arc = vec![None; n];
    let mut seen = vec![false; n];
    seen[root] = true;
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &v in d.out_neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                parent_arc[v] = Some((u, v));
                queue.push_back(v);
            }
        }
    }
    Branching { root, parent_arc, direction: Direction::Out }
}

/// One out-branching `B` such that `d - A(B)` keeps `k - 1` disjoint ones.
fn grow(d: &Digraph, root: VertexId, k: usize) -> Result<Branching> {
    let n = d.vertex_count();
    let mut in_tree = vec![false; n];
    in_tree[root] = true;
    let mut parent_arc = vec![None; n];
    let mut rest = d.clone();
    for _ in 1..n {
        let chosen = if k == 2 {
            // any arc leaving the tree that is not a bridge of the remaining flowgraph
            let dom = DomTree::new(&rest, root);
            let bridges = flow_bridges(&rest, root, &dom);
            candidates(&rest, &in_tree).find(|&(a, b)| {
                rest.multiplicity(a, b) > 1 || bridges.binary_search_by(|x| cmp_head(x, (a, b))).is_err()
            })
        } else {
            candidates(&rest, &in_tree).find(|&(a, b)| feasible(&rest, root, &in_tree, (a, b), k))
        };
        let Some((a, b)) = chosen else {
            return Err(internal!("branching growth stuck with k = {k}"));
        };
        in_tree[b] = true;
        parent_arc[b] = Some((a, b));
        rest = rest.without_arc_copy(a, b);
    }
    Ok(Branching { root, parent_arc, direction: Direction::Out })
}

/// Bridges come out ordered by head, one per head.
fn cmp_head(x: &(VertexId, VertexId), y: (VertexId, VertexId)) -> std::cmp::Ordering {
    x.1.cmp(&y.1).then(x.0.cmp(&y.0))
}

fn candidates<'a>(
    d: &'a Digraph,
    in_tree: &'a [bool],
) -> impl Iterator<Item = (VertexId, VertexId)> + 'a {
    (0..d.vertex_count())
        .filter(move |&a| in_tree[a])
        .flat_map(move |a| d.out_neighbors(a).iter().map(move |&b| (a, b)))
        .filter(move |&(_, b)| !in_tree[b])
}

/// General-`k` acceptance test: after taking `arc`, every vertex keeps
/// `k - 1` disjoint paths from the root and every vertex outside the grown
/// tree keeps `k` from the tree.
fn feasible(
    d: &Digraph,
    root: VertexId,
    in_tree: &[bool],
    arc: (VertexId, VertexId),
    k: usize,
) -> bool {
    let n = d.vertex_count();
    let after = d.without_arc_copy(arc.0, arc.1);
    let mut tree = in_tree.to_vec();
    tree[arc.1] = true;
    if (0..n).any(|v| v != root && local_arc_connectivity(&after, root, v, k - 1) < k - 1) {
        return false;
    }
    // contract the tree onto the root
    let map: Vec<usize> = (0..n).map(|v| if tree[v] { root } else { v }).collect();
    let mut b = Digraph::builder(n);
    for a in after.arcs() {
        let (x, y) = (map[a.tail], map[a.head]);
        if x != y {
            b.add_copies(x, y, a.multiplicity as u32).expect("in range");
        }
    }
    let contracted = b.build();
    (0..n).all(|v| tree[v] || local_arc_connectivity(&contracted, root, v, k) >= k)
}

/// Whether `root` reaches every vertex.
pub fn spans_from(d: &Digraph, root: VertexId) -> bool {
    reachable_from(d, root).iter().all(|&x| x)
}
