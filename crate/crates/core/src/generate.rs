//! Seeded random instances: semicomplete digraphs and multigraphs,
//! compositions, quasi-transitive digraphs, and extensions whose quotient
//! has a prescribed cut-arc pattern.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::composition::{compose, extension, CompositionStructure};
use crate::connectivity::{cut_arcs, cut_vertices, is_k_arc_strong, is_strong};
use crate::digraph::{Digraph, VertexId};
use crate::error::{Error, Result};
use crate::structure::is_quasi_transitive;

const TRIES: usize = 2000;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Each pair gets `u -> v`, `v -> u` or both, uniformly.
pub fn random_semicomplete<R: Rng>(n: usize, rng: &mut R) -> Digraph {
    let mut b = Digraph::builder(n);
    for u in 0..n {
        for v in u + 1..n {
            match rng.gen_range(0..3) {
                0 => b.add(u, v),
                1 => b.add(v, u),
                _ => {
                    b.add(u, v);
                    b.add(v, u);
                }
            }
        }
    }
    b.build()
}

/// A semicomplete digraph with every arc multiplicity drawn from `{1, 2}`.
pub fn random_semicomplete_multigraph<R: Rng>(n: usize, rng: &mut R) -> Digraph {
    let base = random_semicomplete(n, rng);
    let mut b = base.to_builder();
    for (u, v) in base.arc_units() {
        if rng.gen_bool(0.5) {
            b.add(u, v);
        }
    }
    b.build()
}

pub fn random_strong_semicomplete<R: Rng>(n: usize, rng: &mut R) -> Result<Digraph> {
    match n {
        0 | 1 => return Ok(Digraph::empty(n)),
        2 => return Digraph::from_arcs(2, [(0, 1), (1, 0)]),
        _ => {}
    }
    for _ in 0..TRIES {
        let d = random_semicomplete(n, rng);
        if is_strong(&d) {
            return Ok(d);
        }
    }
    Err(Error::Capability(format!("no strong semicomplete digraph on {n} vertices found")))
}

/// Random digraph where each ordered pair is an arc with probability `p`.
pub fn random_digraph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Digraph {
    let mut b = Digraph::builder(n);
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                b.add(u, v);
            }
        }
    }
    b.build()
}

/// `T[H_1, ..., H_t]` with a random semicomplete quotient (strong when
/// `strong`), class sizes in `1..=max_class`, and random class digraphs when
/// `internal` holds.
pub fn random_composition<R: Rng>(
    t: usize,
    max_class: usize,
    internal: bool,
    strong: bool,
    rng: &mut R,
) -> Result<(Digraph, CompositionStructure)> {
    let q = if strong { random_strong_semicomplete(t, rng)? } else { random_semicomplete(t, rng) };
    let parts: Vec<Digraph> = (0..t)
        .map(|_| {
            let m = rng.gen_range(1..=max_class.max(1));
            if internal {
                random_digraph(m, 0.4, rng)
            } else {
                Digraph::empty(m)
            }
        })
        .collect();
    compose(&q, &parts)
}

/// An acyclic quasi-transitive digraph: a transitive tournament whose
/// vertices are replaced by independent sets of size one when `tournament`.
fn random_acyclic_qt<R: Rng>(max_size: usize, tournament: bool, rng: &mut R) -> Digraph {
    let levels = rng.gen_range(1..=max_size.max(1));
    let mut sizes = vec![1; levels];
    if !tournament {
        let mut total = levels;
        while total < max_size && rng.gen_bool(0.5) {
            let i = rng.gen_range(0..levels);
            sizes[i] += 1;
            total += 1;
        }
    }
    let tt = Digraph::from_arcs(levels, (0..levels).flat_map(|i| (i + 1..levels).map(move |j| (i, j))))
        .expect("valid arcs");
    extension(&tt, &sizes).expect("sizes are positive").0
}

/// A strong quasi-transitive digraph `S[Q_1, ..., Q_s]` with `S` strong
/// semicomplete and every `Q_i` a non-strong quasi-transitive digraph or a
/// single vertex. `Q_i` is a tournament when `i` lies on a 2-cycle of `S`,
/// which keeps the result quasi-transitive.
pub fn random_quasi_transitive<R: Rng>(s: usize, max_part: usize, rng: &mut R) -> Result<Digraph> {
    let q = random_strong_semicomplete(s.max(2), rng)?;
    let parts: Vec<Digraph> = (0..q.vertex_count())
        .map(|i| {
            let on_two_cycle = q.out_neighbors(i).iter().any(|&j| q.has_arc(j, i));
            random_acyclic_qt(max_part, on_two_cycle, rng)
        })
        .collect();
    let (d, _) = compose(&q, &parts)?;
    if !is_quasi_transitive(&d) {
        return Err(Error::Internal("generated digraph is not quasi-transitive".into()));
    }
    Ok(d)
}

/// Relabels `d` by a uniformly random permutation.
pub fn shuffled<R: Rng>(d: &Digraph, rng: &mut R) -> (Digraph, Vec<VertexId>) {
    let mut perm: Vec<VertexId> = (0..d.vertex_count()).collect();
    perm.shuffle(rng);
    (d.permuted(&perm), perm)
}

/// Shape of the cut-arcs in the quotient of a generated extension.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CutShape {
    /// No cut-arc; the quotient is 2-arc-strong.
    None,
    /// One cut-arc `p -> 1`; the tail class is doubled.
    OneTail,
    /// One cut-arc `p -> 1`; the head class is doubled.
    OneHead,
    /// One cut-arc `p -> 1`; both end classes doubled.
    OneBoth,
    /// `p -> k` and `k -> 1`.
    TwoShared,
    /// `p -> h` and `k -> 1` with `h`, `k` in the same part.
    TwoSamePart,
    /// `p -> h` and `k -> 1` with `h` in an earlier part than `k`.
    TwoSplit,
    /// `p -> h`, `h -> k`, `k -> 1`.
    Three,
}

impl CutShape {
    pub fn cut_arc_count(self) -> usize {
        match self {
            CutShape::None => 0,
            CutShape::OneTail | CutShape::OneHead | CutShape::OneBoth => 1,
            CutShape::TwoShared | CutShape::TwoSamePart | CutShape::TwoSplit => 2,
            CutShape::Three => 3,
        }
    }
}

/// Vertex `(part, index)` of a layered quotient.
type Slot = (usize, usize);

/// Strong parts in a row, every arc between parts forward, plus the given
/// backward arcs.
fn layered<R: Rng>(parts: &[usize], back: &[(Slot, Slot)], rng: &mut R) -> Result<Digraph> {
    let mut start = vec![0];
    for &s in parts {
        start.push(start.last().unwrap() + s);
    }
    let n = start[parts.len()];
    let mut b = Digraph::builder(n);
    for (i, &sz) in parts.iter().enumerate() {
        let inner = random_strong_semicomplete(sz, rng)?;
        for (u, v) in inner.arc_units() {
            b.add(start[i] + u, start[i] + v);
        }
        for j in i + 1..parts.len() {
            for u in start[i]..start[i + 1] {
                for v in start[j]..start[j + 1] {
                    b.add(u, v);
                }
            }
        }
    }
    for &((pi, x), (pj, y)) in back {
        b.add(start[pi] + x, start[pj] + y);
    }
    Ok(b.build())
}

fn id_of(parts: &[usize], (p, i): Slot) -> VertexId {
    parts[..p].iter().sum::<usize>() + i
}

/// Parts and backward arcs realising `shape` on about `t` quotient vertices.
fn plan<R: Rng>(shape: CutShape, t: usize, rng: &mut R) -> (Vec<usize>, Vec<(Slot, Slot)>) {
    let split = |total: usize, count: usize, rng: &mut R| -> Vec<usize> {
        let mut v = vec![1; count];
        for _ in count..total.max(count) {
            let i = rng.gen_range(0..count);
            v[i] += 1;
        }
        v
    };
    match shape {
        CutShape::None => (vec![t.max(4)], vec![]),
        CutShape::OneTail | CutShape::OneHead | CutShape::OneBoth => {
            let t = t.max(4);
            let t = t.max(5);
            let middle = rng.gen_range(1..=(t - 4).max(1));
            let mut parts = vec![1];
            parts.extend(split(t - 4, middle, rng));
            // a single vertex after the head part would make its in-arc a cut-arc
            parts[1] = parts[1].max(2);
            // the tail part needs room when the head class is single
            parts.push(3);
            if shape == CutShape::OneHead {
                parts.reverse();
            }
            let last = parts.len() - 1;
            (parts, vec![((last, 0), (0, 0))])
        }
        CutShape::TwoShared => {
            let m = t.saturating_sub(2).max(2);
            (vec![1, m, 1], vec![((2, 0), (1, 0)), ((1, 0), (0, 0))])
        }
        CutShape::TwoSamePart => {
            let m = t.saturating_sub(2).max(3);
            (vec![1, m, 1], vec![((2, 0), (1, 0)), ((1, 1), (0, 0))])
        }
        CutShape::TwoSplit => {
            let t = t.max(5);
            let middle = rng.gen_range(2..=(t - 2).clamp(2, 4));
            let mut parts = vec![1];
            parts.extend(split(t - 2, middle, rng));
            parts.push(1);
            let last = parts.len() - 1;
            (parts, vec![((last, 0), (1, 0)), ((last - 1, 0), (0, 0))])
        }
        CutShape::Three => {
            let t = t.max(5);
            let middle = rng.gen_range(3..=(t - 2).clamp(3, 5));
            let mut parts = vec![1];
            parts.extend(split(t - 2, middle, rng));
            parts.push(1);
            let last = parts.len() - 1;
            // k sits in the first middle part, h in the last one
            let (k, h) = ((1, 0), (last - 1, 0));
            (parts, vec![((last, 0), h), (h, k), (k, (0, 0))])
        }
    }
}

/// A strong semicomplete quotient on about `t` vertices whose cut-arcs
/// follow `shape`, and the quotient vertices that must be doubled for the
/// extension to be 2-arc-strong.
pub fn cut_quotient<R: Rng>(shape: CutShape, t: usize, rng: &mut R) -> Result<(Digraph, Vec<VertexId>)> {
    for _ in 0..TRIES {
        let (parts, back) = plan(shape, t, rng);
        let q = layered(&parts, &back, rng)?;
        if shape == CutShape::None {
            if is_k_arc_strong(&q, 2).is_ok() {
                return Ok((q, vec![]));
            }
            continue;
        }
        let mut want: Vec<(VertexId, VertexId)> =
            back.iter().map(|&(a, b)| (id_of(&parts, a), id_of(&parts, b))).collect();
        want.sort_unstable();
        if !is_strong(&q) || cut_arcs(&q)? != want {
            continue;
        }
        let (tail, head) = want[0];
        let doubled = match shape {
            CutShape::OneTail => vec![tail],
            CutShape::OneHead => vec![head],
            CutShape::OneBoth => vec![tail, head],
            _ => {
                // every cut-arc end except the first and last vertex
                let mut v: Vec<VertexId> = want
                    .iter()
                    .flat_map(|&(a, b)| [a, b])
                    .filter(|&x| x != 0 && x != q.vertex_count() - 1)
                    .collect();
                v.sort_unstable();
                v.dedup();
                v
            }
        };
        return Ok((q, doubled));
    }
    Err(Error::Capability(format!("could not realise {shape:?} on {t} quotient vertices")))
}

/// A 2-arc-strong extension without cut-vertices whose quotient has the
/// cut-arcs of `shape`. Other classes are doubled with probability
/// `extra`; `shuffle` relabels the result randomly.
pub fn cut_extension<R: Rng>(
    shape: CutShape,
    t: usize,
    extra: f64,
    shuffle: bool,
    rng: &mut R,
) -> Result<(Digraph, CompositionStructure)> {
    for _ in 0..TRIES {
        let (q, doubled) = cut_quotient(shape, t, rng)?;
        let last = q.vertex_count() - 1;
        let mut fixed = vec![0, last];
        if let Ok(cuts) = cut_arcs(&q) {
            fixed.extend(cuts.iter().flat_map(|&(a, b)| [a, b]));
        }
        let sizes: Vec<usize> = (0..=last)
            .map(|v| {
                if doubled.contains(&v) || (!fixed.contains(&v) && rng.gen_bool(extra)) {
                    2
                } else {
                    1
                }
            })
            .collect();
        let (d, s) = extension(&q, &sizes)?;
        // a single end class of the one cut-arc is always a cut-vertex
        let single_end = matches!(shape, CutShape::OneTail | CutShape::OneHead);
        if is_k_arc_strong(&d, 2).is_err() || (!single_end && !cut_vertices(&d)?.is_empty()) {
            continue;
        }
        if !shuffle {
            return Ok((d, s));
        }
        let (pd, perm) = shuffled(&d, rng);
        let classes = s.classes.iter().map(|c| c.iter().map(|&v| perm[v]).collect()).collect();
        let ps = CompositionStructure::from_classes(&pd, classes)?;
        return Ok((pd, ps));
    }
    Err(Error::Capability(format!("no 2-arc-strong extension for {shape:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::nice_decomposition;

    #[test]
    fn cut_counts_match_shape() {
        let mut r = rng(3);
        for shape in [
            CutShape::OneTail,
            CutShape::OneHead,
            CutShape::OneBoth,
            CutShape::TwoShared,
            CutShape::TwoSamePart,
            CutShape::TwoSplit,
            CutShape::Three,
        ] {
            let (q, _) = cut_quotient(shape, 8, &mut r).unwrap();
            let nd = nice_decomposition(&q).unwrap();
            assert_eq!(nd.cut_arcs.len(), shape.cut_arc_count(), "{shape:?}");
        }
    }

    #[test]
    fn seeds_reproduce() {
        let a = random_semicomplete(7, &mut rng(11));
        let b = random_semicomplete(7, &mut rng(11));
        assert_eq!(a, b);
    }

    #[test]
    fn qt_is_qt() {
        let mut r = rng(5);
        for _ in 0..20 {
            let d = random_quasi_transitive(4, 3, &mut r).unwrap();
            assert!(is_quasi_transitive(&d));
        }
    }
}
