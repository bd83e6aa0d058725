//! Brute-force oracles shared by the integration tests. None of them call
//! the library routines they are used to check.

#![allow(dead_code)]

use strongsplit::decompose::Decomposition;
use strongsplit::{Digraph, ExceptionKind, VertexId};

/// Arcs as `(tail, head, multiplicity)` triples.
pub fn triples(d: &Digraph) -> Vec<(usize, usize, usize)> {
    let n = d.vertex_count();
    let mut v = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let m = d.multiplicity(a, b) as usize;
            if a != b && m > 0 {
                v.push((a, b, m));
            }
        }
    }
    v
}

fn reach(n: usize, arcs: &[(usize, usize)], s: usize, forward: bool) -> Vec<bool> {
    let mut seen = vec![false; n];
    seen[s] = true;
    let mut stack = vec![s];
    while let Some(u) = stack.pop() {
        for &(a, b) in arcs {
            let (x, y) = if forward { (a, b) } else { (b, a) };
            if x == u && !seen[y] {
                seen[y] = true;
                stack.push(y);
            }
        }
    }
    seen
}

pub fn strong_on(n: usize, arcs: &[(usize, usize)]) -> bool {
    n <= 1 || (reach(n, arcs, 0, true).iter().all(|&x| x) && reach(n, arcs, 0, false).iter().all(|&x| x))
}

pub fn strong(d: &Digraph) -> bool {
    let arcs: Vec<(usize, usize)> = triples(d).iter().map(|&(a, b, _)| (a, b)).collect();
    strong_on(d.vertex_count(), &arcs)
}

/// Every nonempty proper vertex set has at least `k` arcs leaving it.
pub fn k_arc_strong(d: &Digraph, k: usize) -> bool {
    let n = d.vertex_count();
    assert!(n <= 16);
    if n <= 1 {
        return true;
    }
    let t = triples(d);
    (1..(1u32 << n) - 1).all(|mask| {
        let out: usize = t
            .iter()
            .filter(|&&(a, b, _)| mask >> a & 1 == 1 && mask >> b & 1 == 0)
            .map(|&(_, _, m)| m)
            .sum();
        out >= k
    })
}

/// Arcs of multiplicity one whose removal destroys strongness.
pub fn cut_arcs(d: &Digraph) -> Vec<(usize, usize)> {
    let t = triples(d);
    let mut out = Vec::new();
    for (i, &(a, b, m)) in t.iter().enumerate() {
        if m != 1 {
            continue;
        }
        let rest: Vec<(usize, usize)> =
            t.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &(x, y, _))| (x, y)).collect();
        if !strong_on(d.vertex_count(), &rest) {
            out.push((a, b));
        }
    }
    out
}

pub fn without_vertex(d: &Digraph, x: usize) -> (usize, Vec<(usize, usize)>) {
    let arcs = triples(d)
        .iter()
        .filter(|&&(a, b, _)| a != x && b != x)
        .map(|&(a, b, _)| (a - usize::from(a > x), b - usize::from(b > x)))
        .collect();
    (d.vertex_count() - 1, arcs)
}

pub fn cut_vertices(d: &Digraph) -> Vec<usize> {
    (0..d.vertex_count())
        .filter(|&x| {
            let (n, arcs) = without_vertex(d, x);
            !strong_on(n, &arcs)
        })
        .collect()
}

fn next_perm(p: &mut [usize]) -> bool {
    let n = p.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Isomorphism by trying every permutation.
pub fn isomorphic(a: &Digraph, b: &Digraph) -> bool {
    let n = a.vertex_count();
    if n != b.vertex_count() || a.arc_count() != b.arc_count() {
        return false;
    }
    assert!(n <= 8);
    let ta = triples(a);
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        if ta.iter().all(|&(x, y, m)| b.multiplicity(p[x], p[y]) as usize == m) {
            return true;
        }
        if !next_perm(&mut p) {
            return false;
        }
    }
}

pub fn is_composition_exception(d: &Digraph) -> bool {
    ExceptionKind::COMPOSITION.iter().any(|k| isomorphic(d, &k.digraph()))
}

/// Whether some split of the arc copies leaves both sides strong. Tries all
/// `prod (m + 1)` splits.
pub fn decomposable(d: &Digraph) -> bool {
    let n = d.vertex_count();
    let t = triples(d);
    let total: usize = t.iter().map(|&(_, _, m)| m + 1).product();
    assert!(total <= 1 << 20, "too many splits");
    let mut counts = vec![0usize; t.len()];
    for _ in 0..total {
        let mut s1 = Vec::new();
        let mut s2 = Vec::new();
        for (i, &(a, b, m)) in t.iter().enumerate() {
            if counts[i] > 0 {
                s1.push((a, b));
            }
            if counts[i] < m {
                s2.push((a, b));
            }
        }
        if strong_on(n, &s1) && strong_on(n, &s2) {
            return true;
        }
        for (i, &(_, _, m)) in t.iter().enumerate() {
            counts[i] += 1;
            if counts[i] <= m {
                break;
            }
            counts[i] = 0;
        }
    }
    false
}

/// Independent check of a claimed decomposition.
pub fn valid(d: &Digraph, dec: &Decomposition) -> bool {
    let n = d.vertex_count();
    let mut used = vec![0usize; n * n];
    for &(a, b) in dec.a1.iter().chain(&dec.a2) {
        if a >= n || b >= n {
            return false;
        }
        used[a * n + b] += 1;
    }
    let partition = (0..n).all(|a| (0..n).all(|b| used[a * n + b] == d.multiplicity(a, b) as usize));
    partition && strong_on(n, &dec.a1) && strong_on(n, &dec.a2)
}

/// All semicomplete digraphs on `n` vertices, each pair `u < v` taking one
/// of the given `(mult(u, v), mult(v, u))` options.
pub fn all_semicomplete(n: usize, options: &[(u8, u8)]) -> Vec<Digraph> {
    let mut out = Vec::new();
    each_semicomplete(n, options, |d| out.push(d));
    out
}

pub fn each_semicomplete(n: usize, options: &[(u8, u8)], mut f: impl FnMut(Digraph)) {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let k = options.len();
    let total = k.pow(pairs.len() as u32);
    for mut code in 0..total {
        let mut b = Digraph::builder(n);
        for &(u, v) in &pairs {
            let (x, y) = options[code % k];
            code /= k;
            if x > 0 {
                b.set_multiplicity(u, v, x).unwrap();
            }
            if y > 0 {
                b.set_multiplicity(v, u, y).unwrap();
            }
        }
        f(b.build());
    }
}

pub fn relabel(arcs: &[(VertexId, VertexId)], perm: &[VertexId]) -> Vec<(VertexId, VertexId)> {
    let mut v: Vec<_> = arcs.iter().map(|&(a, b)| (perm[a], perm[b])).collect();
    v.sort_unstable();
    v
}

/// Subdigraph on `vs` as an arc list over `0..vs.len()`.
pub fn induced(d: &Digraph, vs: &[usize]) -> Vec<(usize, usize)> {
    let mut arcs = Vec::new();
    for (i, &a) in vs.iter().enumerate() {
        for (j, &b) in vs.iter().enumerate() {
            if a != b && d.multiplicity(a, b) > 0 {
                arcs.push((i, j));
            }
        }
    }
    arcs
}

/// Every outside vertex sees all members of `set` the same way.
pub fn is_module(d: &Digraph, set: &[usize]) -> bool {
    (0..d.vertex_count()).filter(|y| !set.contains(y)).all(|y| {
        set.iter().all(|&x| {
            d.multiplicity(y, x) == d.multiplicity(y, set[0])
                && d.multiplicity(x, y) == d.multiplicity(set[0], y)
        })
    })
}

/// The maximal strong modules other than `V`, found by listing every
/// module. A module is strong when it overlaps no other module.
pub fn maximal_strong_modules(d: &Digraph) -> Vec<Vec<usize>> {
    let n = d.vertex_count();
    assert!(n <= 12);
    let full = (1u32 << n) - 1;
    let members = |m: u32| (0..n).filter(|&v| m >> v & 1 == 1).collect::<Vec<_>>();
    let modules: Vec<u32> = (1..=full).filter(|&m| is_module(d, &members(m))).collect();
    let overlap = |a: u32, b: u32| a & b != 0 && a & !b != 0 && b & !a != 0;
    let strong: Vec<u32> =
        modules.iter().copied().filter(|&m| modules.iter().all(|&o| !overlap(m, o))).collect();
    let mut out: Vec<Vec<usize>> = strong
        .iter()
        .copied()
        .filter(|&m| m != full && strong.iter().all(|&o| o == full || o == m || o & m != m))
        .map(members)
        .collect();
    out.sort();
    out
}

/// Checks an ordered partition against the definition of a nice
/// decomposition and the two cut-arc properties.
pub fn nice_ok(d: &Digraph, parts: &[Vec<usize>]) -> bool {
    let mut cuts = cut_arcs(d);
    cuts.sort_unstable();
    nice_with(d, parts, &cuts)
}

fn nice_with(d: &Digraph, parts: &[Vec<usize>], cuts: &[(usize, usize)]) -> bool {
    let n = d.vertex_count();
    let mut ind = vec![usize::MAX; n];
    for (i, p) in parts.iter().enumerate() {
        if p.is_empty() {
            return false;
        }
        for &v in p {
            if ind[v] != usize::MAX {
                return false;
            }
            ind[v] = i;
        }
    }
    if ind.contains(&usize::MAX) {
        return false;
    }
    let backward: Vec<(usize, usize)> =
        triples(d).iter().filter(|&&(a, b, _)| ind[a] > ind[b]).map(|&(a, b, _)| (a, b)).collect();
    if backward != cuts {
        return false;
    }
    let props = cuts.iter().all(|&(u1, v1)| {
        cuts.iter().all(|&(u2, v2)| {
            (u1, v1) == (u2, v2)
                || (ind[u1] != ind[u2] && ind[v1] != ind[v2] && (ind[u1] > ind[u2] || ind[v1] < ind[v2]))
        })
    });
    props && parts.iter().all(|p| strong_on(p.len(), &induced(d, p)))
}

/// Every nice decomposition, by listing all ordered partitions.
pub fn all_nice(d: &Digraph) -> Vec<Vec<Vec<usize>>> {
    let n = d.vertex_count();
    assert!(n <= 7);
    let mut cuts = cut_arcs(d);
    cuts.sort_unstable();
    let mut out = Vec::new();
    let mut label = vec![0usize; n];
    loop {
        let p = label.iter().max().map_or(0, |m| m + 1);
        let parts: Vec<Vec<usize>> = (0..p).map(|i| (0..n).filter(|&x| label[x] == i).collect()).collect();
        if nice_with(d, &parts, &cuts) {
            out.push(parts);
        }
        let mut i = 0;
        loop {
            if i == n {
                return out;
            }
            label[i] += 1;
            if label[i] < n {
                break;
            }
            label[i] = 0;
            i += 1;
        }
    }
}

/// A spanning out-branching (or in-branching when `into`) given by one arc
/// per non-root vertex, checked without the library.
pub fn branching_ok(d: &Digraph, root: usize, arcs: &[(usize, usize)], into: bool) -> bool {
    let n = d.vertex_count();
    if arcs.len() + 1 != n {
        return false;
    }
    let mut parent = vec![usize::MAX; n];
    for &(a, b) in arcs {
        if d.multiplicity(a, b) == 0 {
            return false;
        }
        let (own, up) = if into { (a, b) } else { (b, a) };
        if own == root || parent[own] != usize::MAX {
            return false;
        }
        parent[own] = up;
    }
    (0..n).all(|v| {
        let mut x = v;
        for _ in 0..n {
            if x == root {
                return true;
            }
            x = parent[x];
        }
        x == root
    })
}
