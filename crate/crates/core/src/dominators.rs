//! Iterative dominators (Cooper, Harvey, Kennedy) and the bridge and
//! articulation tests derived from them.

use crate::digraph::{Digraph, VertexId};

const NONE: usize = usize::MAX;

/// Dominator tree of the flowgraph `d` rooted at `root`.
pub(crate) struct DomTree {
    /// Immediate dominator; the root maps to itself, unreachable vertices to `NONE`.
    pub idom: Vec<usize>,
    pre: Vec<usize>,
    post: Vec<usize>,
}

impl DomTree {
    pub fn new(d: &Digraph, root: VertexId) -> DomTree {
        let n = d.vertex_count();
        // reverse postorder by iterative DFS
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
        seen[root] = true;
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            let outs = d.out_neighbors(v);
            if *i < outs.len() {
                let w = outs[*i];
                *i += 1;
                if !seen[w] {
                    seen[w] = true;
                    stack.push((w, 0));
                }
            } else {
                order.push(v);
                stack.pop();
            }
        }
        order.reverse();
        let mut rpo = vec![NONE; n];
        for (i, &v) in order.iter().enumerate() {
            rpo[v] = i;
        }
        let mut idom = vec![NONE; n];
        idom[root] = root;
        let intersect = |idom: &[usize], mut a: usize, mut b: usize| {
            while a != b {
                while rpo[a] > rpo[b] {
                    a = idom[a];
                }
                while rpo[b] > rpo[a] {
                    b = idom[b];
                }
            }
            a
        };
        let mut changed = true;
        while changed {
            changed = false;
            for &v in order.iter().skip(1) {
                let mut new = NONE;
                for &p in d.in_neighbors(v) {
                    if idom[p] == NONE {
                        continue;
                    }
                    new = if new == NONE { p } else { intersect(&idom, p, new) };
                }
                if new != idom[v] {
                    idom[v] = new;
                    changed = true;
                }
            }
        }
        // pre/post numbering of the dominator tree for O(1) ancestry tests
        let mut children = vec![Vec::new(); n];
        for v in 0..n {
            if v != root && idom[v] != NONE {
                children[idom[v]].push(v);
            }
        }
        let mut pre = vec![NONE; n];
        let mut post = vec![NONE; n];
        let mut clock = 0;
        let mut st: Vec<(usize, usize)> = vec![(root, 0)];
        pre[root] = clock;
        clock += 1;
        while let Some(&mut (v, ref mut i)) = st.last_mut() {
            if *i < children[v].len() {
                let c = children[v][*i];
                *i += 1;
                pre[c] = clock;
                clock += 1;
                st.push((c, 0));
            } else {
                post[v] = clock;
                clock += 1;
                st.pop();
            }
        }
        DomTree { idom, pre, post }
    }

    pub fn reachable(&self, v: VertexId) -> bool {
        self.idom[v] != NONE
    }

    /// `a` dominates `b` (reflexive).
    pub fn dominates(&self, a: VertexId, b: VertexId) -> bool {
        self.reachable(a)
            && self.reachable(b)
            && self.pre[a] <= self.pre[b]
            && self.post[b] <= self.post[a]
    }
}

/// Arcs lying on every path from `root` to their head. Only single-copy arcs
/// qualify.
pub(crate) fn flow_bridges(d: &Digraph, root: VertexId, dom: &DomTree) -> Vec<(VertexId, VertexId)> {
    let mut out = Vec::new();
    for b in 0..d.vertex_count() {
        if b == root || !dom.reachable(b) {
            continue;
        }
        let mut candidate = None;
        let mut count = 0;
        for &a in d.in_neighbors(b) {
            if dom.reachable(a) && !dom.dominates(b, a) {
                count += d.multiplicity(a, b) as usize;
                candidate = Some(a);
            }
        }
        if count == 1 {
            out.push((candidate.unwrap(), b));
        }
    }
    out
}

/// Vertices other than `root` that dominate some other vertex.
pub(crate) fn nontrivial_dominators(root: VertexId, dom: &DomTree) -> Vec<VertexId> {
    let n = dom.idom.len();
    let mut mark = vec![false; n];
    for v in 0..n {
        let p = dom.idom[v];
        if v != root && p != NONE && p != root {
            mark[p] = true;
        }
    }
    (0..n).filter(|&v| mark[v]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diamond() {
        // 0 -> 1 -> 3, 0 -> 2 -> 3, 3 -> 4
        let d = Digraph::from_arcs(5, [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)]).unwrap();
        let t = DomTree::new(&d, 0);
        assert_eq!(t.idom, vec![0, 0, 0, 0, 3]);
        assert!(t.dominates(3, 4));
        assert!(!t.dominates(1, 3));
        assert_eq!(flow_bridges(&d, 0, &t), vec![(0, 1), (0, 2), (3, 4)]);
        assert_eq!(nontrivial_dominators(0, &t), vec![3]);
    }
}
