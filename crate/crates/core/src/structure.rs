//! Recognition: composition structure, quasi-transitivity, nice
//! decompositions and exception matching.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::composition::CompositionStructure;
use crate::connectivity::{cut_arcs, is_strong, strong_components};
use crate::digraph::{Digraph, VertexId};
use crate::error::{internal, Error, Result};
use crate::gallery::ExceptionKind;
use crate::iso::isomorphic;

/// How `y` sees `x`: the pair of multiplicities `(y -> x, x -> y)`.
#[inline]
fn rel(d: &Digraph, y: VertexId, x: VertexId) -> (u8, u8) {
    (d.multiplicity(y, x), d.multiplicity(x, y))
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut x = x;
        while self.0[x] != r {
            let next = self.0[x];
            self.0[x] = r;
            x = next;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (a, b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        self.0[hi] = lo;
        true
    }
    fn groups(&mut self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for v in 0..n {
            let r = self.find(v);
            by_root[r].push(v);
        }
        by_root.into_iter().filter(|g| !g.is_empty()).collect()
    }
}

/// Classes ordered by smallest member, members ascending.
fn canonical(mut classes: Vec<Vec<VertexId>>) -> Vec<Vec<VertexId>> {
    for c in &mut classes {
        c.sort_unstable();
    }
    classes.sort_by_key(|c| c[0]);
    classes
}

/// Whether `set` is a module of `d`.
pub fn is_module(d: &Digraph, set: &[VertexId]) -> bool {
    let n = d.vertex_count();
    let mut inside = vec![false; n];
    for &v in set {
        inside[v] = true;
    }
    let Some(&first) = set.first() else {
        return true;
    };
    (0..n).all(|y| inside[y] || set.iter().all(|&x| rel(d, y, x) == rel(d, y, first)))
}

/// Smallest module of `d` containing `seed`.
fn module_closure(d: &Digraph, seed: &[VertexId]) -> Vec<bool> {
    let n = d.vertex_count();
    let mut inside = vec![false; n];
    for &v in seed {
        inside[v] = true;
    }
    let base = seed[0];
    let mut pending: Vec<VertexId> = seed[1..].to_vec();
    while let Some(w) = pending.pop() {
        for y in 0..n {
            if !inside[y] && rel(d, y, w) != rel(d, y, base) {
                inside[y] = true;
                pending.push(y);
            }
        }
    }
    inside
}

/// Maximal modules not containing `v`, by partition refinement.
fn maximal_modules_avoiding(d: &Digraph, v: VertexId) -> Vec<Vec<VertexId>> {
    let n = d.vertex_count();
    let mut parts: Vec<Vec<VertexId>> = vec![(0..n).filter(|&x| x != v).collect()];
    let mut queue = vec![v];
    let mut queued = vec![false; n];
    queued[v] = true;
    while let Some(p) = queue.pop() {
        queued[p] = false;
        let mut i = 0;
        while i < parts.len() {
            if parts[i].len() > 1 && !parts[i].contains(&p) {
                let mut groups: Vec<((u8, u8), Vec<VertexId>)> = Vec::new();
                for &x in &parts[i] {
                    let r = rel(d, p, x);
                    match groups.iter_mut().find(|(k, _)| *k == r) {
                        Some((_, g)) => g.push(x),
                        None => groups.push((r, vec![x])),
                    }
                }
                if groups.len() > 1 {
                    for &x in &parts[i] {
                        if !queued[x] {
                            queued[x] = true;
                            queue.push(x);
                        }
                    }
                    let mut it = groups.into_iter().map(|(_, g)| g);
                    parts[i] = it.next().unwrap();
                    for g in it {
                        parts.push(g);
                    }
                }
            }
            i += 1;
        }
    }
    parts
}

/// Root children of the modular decomposition: the maximal strong modules.
fn maximal_strong_modules(d: &Digraph) -> Vec<Vec<VertexId>> {
    let n = d.vertex_count();
    // series: components of "not joined both ways"
    let mut dsu = Dsu::new(n);
    for a in 0..n {
        for b in a + 1..n {
            if !(d.has_arc(a, b) && d.has_arc(b, a)) {
                dsu.union(a, b);
            }
        }
    }
    let series = dsu.groups();
    if series.len() > 1 {
        return canonical(series);
    }
    // linear: strong components of the "not a one-way arc" relation
    let mut b = Digraph::builder(n);
    for x in 0..n {
        for y in 0..n {
            if x != y && !(d.has_arc(x, y) && !d.has_arc(y, x)) {
                b.add(x, y);
            }
        }
    }
    let linear = strong_components(&b.build());
    if linear.len() > 1 {
        return canonical(linear);
    }
    // prime: maximal modules avoiding 0, then the one containing 0
    let parts = maximal_modules_avoiding(d, 0);
    let mut with_zero = vec![0];
    let mut others = Vec::new();
    for p in parts {
        let closure = module_closure(d, &[0, p[0]]);
        if closure.iter().all(|&x| x) {
            others.push(p);
        } else {
            with_zero.extend(p);
        }
    }
    others.push(with_zero);
    canonical(others)
}

/// Splits `d` as `T[H_1, ..., H_t]` along its maximal strong modules.
///
/// Classes are ordered by smallest member. Fails with `OutOfScope` when that
/// quotient is not semicomplete, which happens exactly when no partition
/// into at least two modules has a semicomplete quotient.
pub fn composition_structure(d: &Digraph) -> Result<CompositionStructure> {
    if d.has_parallel_arcs() {
        return Err(Error::Capability(
            "composition recognition needs a digraph without parallel arcs".into(),
        ));
    }
    let n = d.vertex_count();
    if n <= 1 {
        return CompositionStructure::from_classes(d, vec![(0..n).collect()]);
    }
    let underlying_connected = {
        let mut dsu = Dsu::new(n);
        for a in d.arcs() {
            dsu.union(a.tail, a.head);
        }
        dsu.groups().len() == 1
    };
    if !underlying_connected {
        return Err(Error::OutOfScope("underlying graph is disconnected".into()));
    }
    let s = CompositionStructure::from_classes(d, maximal_strong_modules(d))?;
    if !s.quotient.is_semicomplete() {
        return Err(Error::OutOfScope(format!(
            "quotient on {} classes is not semicomplete",
            s.class_count()
        )));
    }
    Ok(s)
}

/// The finest partition into modules whose quotient is semicomplete:
/// non-adjacent vertices share a class, and a class absorbs any vertex that
/// tells two of its members apart.
pub fn finest_structure(d: &Digraph) -> Result<CompositionStructure> {
    let n = d.vertex_count();
    let mut dsu = Dsu::new(n);
    for a in 0..n {
        for b in a + 1..n {
            if !d.adjacent(a, b) {
                dsu.union(a, b);
            }
        }
    }
    loop {
        let mut merged = false;
        for class in dsu.groups() {
            if class.len() < 2 {
                continue;
            }
            let first = class[0];
            for y in 0..n {
                if dsu.find(y) != dsu.find(first)
                    && class.iter().any(|&x| rel(d, y, x) != rel(d, y, first))
                {
                    dsu.union(y, first);
                    merged = true;
                }
            }
        }
        if !merged {
            break;
        }
    }
    CompositionStructure::from_classes(d, canonical(dsu.groups()))
}

/// Every path `xyz` with `x != z` has an arc between `x` and `z`.
pub fn is_quasi_transitive(d: &Digraph) -> bool {
    (0..d.vertex_count()).all(|y| {
        d.in_neighbors(y).iter().all(|&x| {
            d.out_neighbors(y)
                .iter()
                .all(|&z| x == z || d.adjacent(x, z))
        })
    })
}

/// An ordered partition into strong parts whose backward arcs are exactly
/// the cut-arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NiceDecomposition {
    pub parts: Vec<Vec<VertexId>>,
    pub ind: Vec<usize>,
    pub cut_arcs: Vec<(VertexId, VertexId)>,
}

/// Computes a nice decomposition of a strong semicomplete digraph on at least
/// four vertices. Parts are the strong components of `t` minus its cut-arcs;
/// they are ordered so that non-cut arcs go forward and cut-arcs backward.
pub fn nice_decomposition(t: &Digraph) -> Result<NiceDecomposition> {
    let n = t.vertex_count();
    if n < 4 || !t.is_semicomplete() || !is_strong(t) {
        return Err(Error::Precondition(
            "nice decomposition needs a strong semicomplete digraph on at least 4 vertices".into(),
        ));
    }
    let cuts = cut_arcs(t)?;
    let mut b = t.to_builder();
    for &(u, v) in &cuts {
        b.set_multiplicity(u, v, 0)?;
    }
    let parts = strong_components(&b.build());
    let p = parts.len();
    let mut comp = vec![0; n];
    for (i, c) in parts.iter().enumerate() {
        for &v in c {
            comp[v] = i;
        }
    }
    // precedence between parts
    let mut succ = vec![vec![false; p]; p];
    for a in t.arcs() {
        let (x, y) = (comp[a.tail], comp[a.head]);
        if x == y {
            continue;
        }
        if cuts.binary_search(&(a.tail, a.head)).is_ok() {
            succ[y][x] = true;
        } else {
            succ[x][y] = true;
        }
    }
    let mut indeg = vec![0; p];
    for row in &succ {
        for (j, &e) in row.iter().enumerate() {
            if e {
                indeg[j] += 1;
            }
        }
    }
    let mut heap: BinaryHeap<Reverse<(VertexId, usize)>> = (0..p)
        .filter(|&i| indeg[i] == 0)
        .map(|i| Reverse((parts[i][0], i)))
        .collect();
    let mut order = Vec::with_capacity(p);
    while let Some(Reverse((_, i))) = heap.pop() {
        order.push(i);
        for j in 0..p {
            if succ[i][j] {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    heap.push(Reverse((parts[j][0], j)));
                }
            }
        }
    }
    if order.len() != p {
        return Err(internal!("cut-arc constraints between parts are cyclic"));
    }
    let parts: Vec<Vec<VertexId>> = order.iter().map(|&i| parts[i].clone()).collect();
    let mut ind = vec![0; n];
    for (i, c) in parts.iter().enumerate() {
        for &v in c {
            ind[v] = i;
        }
    }
    let nd = NiceDecomposition { parts, ind, cut_arcs: cuts };
    if !is_nice(t, &nd) {
        return Err(internal!("nice decomposition failed verification"));
    }
    Ok(nd)
}

/// Checks the definition of a nice decomposition and both properties of
/// cut-arc indices.
pub fn is_nice(t: &Digraph, nd: &NiceDecomposition) -> bool {
    let n = t.vertex_count();
    let mut ind = vec![usize::MAX; n];
    for (i, c) in nd.parts.iter().enumerate() {
        if c.is_empty() {
            return false;
        }
        for &v in c {
            if v >= n || ind[v] != usize::MAX {
                return false;
            }
            ind[v] = i;
        }
        if !is_strong(&t.induced_unchecked(c)) {
            return false;
        }
    }
    if ind != nd.ind {
        return false;
    }
    let Ok(cuts) = cut_arcs(t) else {
        return false;
    };
    let backward: Vec<(VertexId, VertexId)> = t
        .arcs()
        .filter(|a| ind[a.tail] > ind[a.head])
        .map(|a| (a.tail, a.head))
        .collect();
    if backward != cuts || cuts != nd.cut_arcs {
        return false;
    }
    cuts.iter().all(|&(u1, v1)| {
        cuts.iter().all(|&(u2, v2)| {
            (u1, v1) == (u2, v2)
                || (ind[u1] != ind[u2]
                    && ind[v1] != ind[v2]
                    && (ind[u1] >= ind[u2] || ind[v1] < ind[v2]))
        })
    })
}

/// Which exceptional family to match against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    /// The four exceptions for semicomplete compositions.
    Composition,
    /// The seven exceptions for semicomplete multigraphs.
    Multigraph,
}

pub fn match_exception(d: &Digraph, family: Family) -> Option<ExceptionKind> {
    let kinds = match family {
        Family::Composition => &ExceptionKind::COMPOSITION[..],
        Family::Multigraph => &ExceptionKind::MULTIGRAPH[..],
    };
    let n = d.vertex_count();
    if n > 7 {
        return None;
    }
    kinds.iter().copied().find(|k| {
        let e = k.digraph();
        e.vertex_count() == n && e.arc_count() == d.arc_count() && isomorphic(d, &e)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::composition::{compose, extension};
    use crate::gallery;

    #[test]
    fn gallery_structures() {
        let s = composition_structure(&gallery::s4()).unwrap();
        assert_eq!(s.class_count(), 4);
        assert_eq!(s.quotient, gallery::s4());

        let s = composition_structure(&ExceptionKind::C3_22P2.digraph()).unwrap();
        assert_eq!(s.classes, vec![vec![0, 1], vec![2, 3], vec![4, 5]]);
        assert_eq!(s.quotient, gallery::directed_cycle(3));

        let k4 = gallery::bidirected_complete(4);
        let s = composition_structure(&k4).unwrap();
        assert_eq!(s.class_count(), 4);
        assert_eq!(s.quotient, k4);

        let c5 = gallery::directed_cycle(5);
        assert!(matches!(composition_structure(&c5), Err(Error::OutOfScope(_))));
        let multi = ExceptionKind::S41.digraph();
        assert!(matches!(composition_structure(&multi), Err(Error::Capability(_))));
    }

    #[test]
    fn finest_splits_p2() {
        let s = finest_structure(&ExceptionKind::C3_22P2.digraph()).unwrap();
        assert_eq!(s.classes, vec![vec![0, 1], vec![2, 3], vec![4], vec![5]]);
        assert!(isomorphic(&s.quotient, &gallery::t4s()));
    }

    #[test]
    fn quasi_transitivity() {
        assert!(is_quasi_transitive(&gallery::directed_cycle(3)));
        let path = Digraph::from_arcs(3, [(0, 1), (1, 0), (1, 2), (2, 1)]).unwrap();
        assert!(!is_quasi_transitive(&path));
        for k in ExceptionKind::COMPOSITION {
            assert!(is_quasi_transitive(&k.digraph()), "{k}");
        }
    }

    #[test]
    fn t4s_nice_order() {
        let nd = nice_decomposition(&gallery::t4s()).unwrap();
        // u3, u2, u1, u4
        assert_eq!(nd.parts, vec![vec![2], vec![1], vec![0], vec![3]]);
        let k4 = nice_decomposition(&gallery::bidirected_complete(4)).unwrap();
        assert_eq!(k4.parts.len(), 1);
        assert!(nice_decomposition(&gallery::directed_cycle(3)).is_err());
    }

    #[test]
    fn exceptions_match() {
        assert_eq!(match_exception(&gallery::s4(), Family::Composition), Some(ExceptionKind::S4));
        assert_eq!(match_exception(&gallery::s4(), Family::Multigraph), Some(ExceptionKind::S4));
        let (d, _) = extension(&gallery::t4s(), &[2, 2, 1, 1]).unwrap();
        assert_eq!(match_exception(&d, Family::Composition), Some(ExceptionKind::C3_22P2));
        assert_eq!(match_exception(&gallery::bidirected_complete(4), Family::Composition), None);
        let relabelled = ExceptionKind::S43.digraph().permuted(&[3, 1, 0, 2]);
        assert_eq!(match_exception(&relabelled, Family::Multigraph), Some(ExceptionKind::S43));
        let (c, _) = compose(&gallery::directed_cycle(3), &[
            Digraph::empty(2),
            Digraph::empty(2),
            Digraph::empty(3),
        ])
        .unwrap();
        assert_eq!(match_exception(&c, Family::Composition), Some(ExceptionKind::C3_223));
    }
}
