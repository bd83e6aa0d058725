//! Directed multigraphs with arc multiplicities stored as counters.

use std::fmt;

use crate::error::{Error, Result};

/// Dense vertex index in `0..n`.
pub type VertexId = usize;

/// One arc record: all copies of `tail -> head`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Arc {
    pub tail: VertexId,
    pub head: VertexId,
    pub multiplicity: u8,
}

/// A loopless directed multigraph.
///
/// Multiplicities live in a dense `n * n` table; neighbour lists are derived
/// once at construction and kept sorted, so two digraphs with the same arcs
/// compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    mult: Vec<u8>,
    out: Vec<Vec<VertexId>>,
    inn: Vec<Vec<VertexId>>,
    arc_total: usize,
}

/// Mutable staging area for a [`Digraph`].
#[derive(Clone, Debug)]
pub struct DigraphBuilder {
    n: usize,
    mult: Vec<u8>,
}

impl DigraphBuilder {
    pub fn new(n: usize) -> Self {
        DigraphBuilder { n, mult: vec![0; n * n] }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    fn check(&self, u: VertexId, v: VertexId) -> Result<()> {
        if u >= self.n || v >= self.n {
            return Err(Error::MalformedInput(format!(
                "arc ({u},{v}) out of range for {} vertices",
                self.n
            )));
        }
        if u == v {
            return Err(Error::MalformedInput(format!("loop at vertex {u}")));
        }
        Ok(())
    }

    /// Adds `count` copies of `u -> v`. Multiplicities saturate at 255.
    pub fn add_copies(&mut self, u: VertexId, v: VertexId, count: u32) -> Result<()> {
        self.check(u, v)?;
        let slot = &mut self.mult[u * self.n + v];
        *slot = (*slot as u32 + count).min(u8::MAX as u32) as u8;
        Ok(())
    }

    pub fn add_arc(&mut self, u: VertexId, v: VertexId) -> Result<()> {
        self.add_copies(u, v, 1)
    }

    /// Panicking variant for internal constructions whose endpoints are known valid.
    pub(crate) fn add(&mut self, u: VertexId, v: VertexId) {
        debug_assert!(u != v && u < self.n && v < self.n);
        let slot = &mut self.mult[u * self.n + v];
        *slot = slot.saturating_add(1);
    }

    pub fn set_multiplicity(&mut self, u: VertexId, v: VertexId, m: u8) -> Result<()> {
        self.check(u, v)?;
        self.mult[u * self.n + v] = m;
        Ok(())
    }

    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> u8 {
        self.mult[u * self.n + v]
    }

    pub fn build(self) -> Digraph {
        let n = self.n;
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        let mut arc_total = 0;
        for u in 0..n {
            for v in 0..n {
                let m = self.mult[u * n + v];
                if m > 0 {
                    out[u].push(v);
                    inn[v].push(u);
                    arc_total += m as usize;
                }
            }
        }
        Digraph { n, mult: self.mult, out, inn, arc_total }
    }
}

impl Digraph {
    pub fn builder(n: usize) -> DigraphBuilder {
        DigraphBuilder::new(n)
    }

    /// `n` vertices, no arcs.
    pub fn empty(n: usize) -> Self {
        DigraphBuilder::new(n).build()
    }

    /// Builds from a list of arc copies; repeated pairs accumulate multiplicity.
    pub fn from_arcs<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        let mut b = DigraphBuilder::new(n);
        for (u, v) in arcs {
            b.add_arc(u, v)?;
        }
        Ok(b.build())
    }

    /// Builds from `(tail, head, multiplicity)` triples.
    pub fn from_weighted_arcs<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (VertexId, VertexId, u32)>,
    {
        let mut b = DigraphBuilder::new(n);
        for (u, v, m) in arcs {
            if m == 0 {
                return Err(Error::MalformedInput(format!("arc ({u},{v}) has multiplicity 0")));
            }
            b.add_copies(u, v, m)?;
        }
        Ok(b.build())
    }

    pub fn to_builder(&self) -> DigraphBuilder {
        DigraphBuilder { n: self.n, mult: self.mult.clone() }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Number of arcs counted with multiplicity.
    pub fn arc_count(&self) -> usize {
        self.arc_total
    }

    /// Number of ordered pairs carrying at least one arc.
    pub fn arc_record_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    #[inline]
    pub fn multiplicity(&self, u: VertexId, v: VertexId) -> u8 {
        self.mult[u * self.n + v]
    }

    #[inline]
    pub fn has_arc(&self, u: VertexId, v: VertexId) -> bool {
        self.mult[u * self.n + v] > 0
    }

    /// True when at least one arc joins `u` and `v` in either direction.
    #[inline]
    pub fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.has_arc(u, v) || self.has_arc(v, u)
    }

    pub fn out_neighbors(&self, u: VertexId) -> &[VertexId] {
        &self.out[u]
    }

    pub fn in_neighbors(&self, u: VertexId) -> &[VertexId] {
        &self.inn[u]
    }

    /// Out-degree counted with multiplicity.
    pub fn out_degree(&self, u: VertexId) -> usize {
        self.out[u].iter().map(|&v| self.multiplicity(u, v) as usize).sum()
    }

    pub fn in_degree(&self, u: VertexId) -> usize {
        self.inn[u].iter().map(|&v| self.multiplicity(v, u) as usize).sum()
    }

    /// Arc records in `(tail, head)` order.
    pub fn arcs(&self) -> impl Iterator<Item = Arc> + '_ {
        (0..self.n).flat_map(move |u| {
            self.out[u].iter().map(move |&v| Arc {
                tail: u,
                head: v,
                multiplicity: self.multiplicity(u, v),
            })
        })
    }

    /// Every arc copy as its own `(tail, head)` entry, in `(tail, head)` order.
    pub fn arc_units(&self) -> Vec<(VertexId, VertexId)> {
        let mut units = Vec::with_capacity(self.arc_total);
        for a in self.arcs() {
            for _ in 0..a.multiplicity {
                units.push((a.tail, a.head));
            }
        }
        units
    }

    pub fn max_multiplicity(&self) -> u8 {
        self.mult.iter().copied().max().unwrap_or(0)
    }

    /// True when some pair carries two or more copies.
    pub fn has_parallel_arcs(&self) -> bool {
        self.max_multiplicity() >= 2
    }

    pub fn is_normalized(&self) -> bool {
        self.max_multiplicity() <= 2
    }

    /// Caps every multiplicity at 2. Deleting surplus copies beyond two never
    /// changes whether a strong arc decomposition exists.
    pub fn normalize(&self) -> Digraph {
        if self.is_normalized() {
            return self.clone();
        }
        let mut b = self.to_builder();
        for m in b.mult.iter_mut() {
            *m = (*m).min(2);
        }
        b.build()
    }

    /// Every pair of distinct vertices is joined by at least one arc.
    pub fn is_semicomplete(&self) -> bool {
        (0..self.n).all(|u| (u + 1..self.n).all(|v| self.adjacent(u, v)))
    }

    pub fn reverse(&self) -> Digraph {
        let mut b = DigraphBuilder::new(self.n);
        for a in self.arcs() {
            b.mult[a.head * self.n + a.tail] = a.multiplicity;
        }
        b.build()
    }

    /// Subdigraph induced by `vertices`, relabelled densely in the given
    /// order. The returned map sends new ids to old ids.
    pub fn induced(&self, vertices: &[VertexId]) -> Result<(Digraph, Vec<VertexId>)> {
        if vertices.is_empty() {
            return Err(Error::MalformedInput("induced subdigraph needs a vertex".into()));
        }
        let mut seen = vec![false; self.n];
        for &v in vertices {
            if v >= self.n {
                return Err(Error::MalformedInput(format!("vertex {v} out of range")));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::MalformedInput(format!("vertex {v} listed twice")));
            }
        }
        Ok((self.induced_unchecked(vertices), vertices.to_vec()))
    }

    pub(crate) fn induced_unchecked(&self, vertices: &[VertexId]) -> Digraph {
        let k = vertices.len();
        let mut b = DigraphBuilder::new(k);
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate() {
                if i != j {
                    b.mult[i * k + j] = self.multiplicity(u, v);
                }
            }
        }
        b.build()
    }

    /// `self` minus vertex `x`; the map sends new ids to old ids.
    pub fn without_vertex(&self, x: VertexId) -> (Digraph, Vec<VertexId>) {
        let keep: Vec<VertexId> = (0..self.n).filter(|&v| v != x).collect();
        (self.induced_unchecked(&keep), keep)
    }

    /// Removes one copy of `u -> v`.
    pub fn without_arc_copy(&self, u: VertexId, v: VertexId) -> Digraph {
        let mut b = self.to_builder();
        let slot = &mut b.mult[u * self.n + v];
        *slot = slot.saturating_sub(1);
        b.build()
    }

    pub fn with_arc_copy(&self, u: VertexId, v: VertexId) -> Digraph {
        let mut b = self.to_builder();
        b.add(u, v);
        b.build()
    }

    /// Spanning subdigraph on the listed arc copies of the same vertex set.
    pub fn spanning(n: usize, arcs: &[(VertexId, VertexId)]) -> Digraph {
        let mut b = DigraphBuilder::new(n);
        for &(u, v) in arcs {
            b.add(u, v);
        }
        b.build()
    }

    /// Relabels vertex `v` to `perm[v]`.
    pub fn permuted(&self, perm: &[VertexId]) -> Digraph {
        let mut b = DigraphBuilder::new(self.n);
        for a in self.arcs() {
            b.mult[perm[a.tail] * self.n + perm[a.head]] = a.multiplicity;
        }
        b.build()
    }
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph(n={}, arcs=[", self.n)?;
        for (i, a) in self.arcs().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            if a.multiplicity == 1 {
                write!(f, "{}->{}", a.tail, a.head)?;
            } else {
                write!(f, "{}->{}x{}", a.tail, a.head, a.multiplicity)?;
            }
        }
        write!(f, "])")
    }
}
