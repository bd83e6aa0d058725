//! Constructive strong arc decompositions.
//!
//! [`decompose`] runs the pipeline: connectivity and exception checks, then
//! cut-vertices, internal class arcs, large classes and finally the case
//! analysis for extensions whose classes have at most two vertices.
//! Semicomplete multigraphs take their own recursive route. Where the
//! construction rests on an external existence theorem the bounded exact
//! search of [`crate::oracle`] fills in, and every result is verified before
//! it is returned.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::connectivity::{cut_vertices, is_k_arc_strong, CutWitness};
use crate::digraph::{Digraph, VertexId};
use crate::error::{internal, Error, Result};
use crate::gallery::ExceptionKind;
use crate::oracle::{search_decompose, SearchConfig, SearchOutcome};
use crate::structure::{composition_structure, finest_structure, match_exception, Family};

mod cut_vertex;
mod extension;
mod internal;
mod multigraph;

pub use cut_vertex::decompose_cut_vertex;
pub use extension::{decompose_small_class_extension, decompose_small_class_extension_traced};
pub use internal::reduce_internal_arcs;
pub use multigraph::decompose_semicomplete_multigraph;

/// Two arc multisets partitioning the arcs of a digraph, each spanning a
/// strong subdigraph. A doubled arc may sit once on each side or twice on one.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Decomposition {
    pub a1: Vec<(VertexId, VertexId)>,
    pub a2: Vec<(VertexId, VertexId)>,
}

impl Decomposition {
    pub fn new(a1: Vec<(VertexId, VertexId)>, a2: Vec<(VertexId, VertexId)>) -> Self {
        Decomposition { a1, a2 }
    }

    /// Sorts both sides.
    pub fn canonical(mut self) -> Self {
        self.a1.sort_unstable();
        self.a2.sort_unstable();
        self
    }

    /// Arc-by-arc reversal: a decomposition of the reverse digraph.
    pub fn reversed(&self) -> Self {
        let flip = |v: &[(VertexId, VertexId)]| v.iter().map(|&(a, b)| (b, a)).collect();
        Decomposition { a1: flip(&self.a1), a2: flip(&self.a2) }
    }

    /// Renames vertices through `map` (old id to new id).
    pub fn relabeled(&self, map: &[VertexId]) -> Self {
        let r = |v: &[(VertexId, VertexId)]| v.iter().map(|&(a, b)| (map[a], map[b])).collect();
        Decomposition { a1: r(&self.a1), a2: r(&self.a2) }
    }

    pub fn swapped(self) -> Self {
        Decomposition { a1: self.a2, a2: self.a1 }
    }
}

/// Why a decomposition failed to verify.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum VerifyError {
    /// An arc is used more or fewer times than its multiplicity.
    NotAPartition { arc: (VertexId, VertexId), expected: u32, found: u32 },
    /// An endpoint is out of range or a loop.
    BadArc { arc: (VertexId, VertexId) },
    /// One side is not strong; the witness has no arc of that side leaving it.
    NotStrong { side: u8, witness: CutWitness },
}

impl fmt::Display for VerifyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VerifyError::NotAPartition { arc, expected, found } => write!(
                f,
                "not a partition: arc {}->{} has multiplicity {expected} but is used {found} times",
                arc.0, arc.1
            ),
            VerifyError::BadArc { arc } => write!(f, "bad arc {}->{}", arc.0, arc.1),
            VerifyError::NotStrong { side, witness } => write!(
                f,
                "side a{side} is not strong: no arc leaves {:?}",
                witness.side
            ),
        }
    }
}

/// Checks that `dec` partitions the arcs of `d` and that both sides span
/// strong subdigraphs.
pub fn verify_decomposition(d: &Digraph, dec: &Decomposition) -> std::result::Result<(), VerifyError> {
    let n = d.vertex_count();
    let mut used = vec![0u32; n * n];
    for &(a, b) in dec.a1.iter().chain(&dec.a2) {
        if a >= n || b >= n || a == b {
            return Err(VerifyError::BadArc { arc: (a, b) });
        }
        used[a * n + b] += 1;
    }
    for a in 0..n {
        for b in 0..n {
            let expected = d.multiplicity(a, b) as u32;
            if used[a * n + b] != expected {
                return Err(VerifyError::NotAPartition {
                    arc: (a, b),
                    expected,
                    found: used[a * n + b],
                });
            }
        }
    }
    for (i, side) in [&dec.a1, &dec.a2].into_iter().enumerate() {
        let g = Digraph::spanning(n, side);
        if let Err(witness) = is_k_arc_strong(&g, 1) {
            return Err(VerifyError::NotStrong { side: i as u8 + 1, witness });
        }
    }
    Ok(())
}

/// Result of [`decompose`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DecomposeOutcome {
    Decomposed(Decomposition),
    /// Not 2-arc-strong; the witness has at most one arc leaving it.
    NotTwoArcStrong(CutWitness),
    /// Isomorphic to one of the exceptional digraphs.
    Exception(ExceptionKind),
}

impl DecomposeOutcome {
    pub fn decomposition(&self) -> Option<&Decomposition> {
        match self {
            DecomposeOutcome::Decomposed(d) => Some(d),
            _ => None,
        }
    }

    pub fn is_decomposed(&self) -> bool {
        matches!(self, DecomposeOutcome::Decomposed(_))
    }
}

/// A branch of the construction, recorded in the [`Trace`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Branch {
    /// Cut-vertex adjacent both ways to everything else.
    CutVertexSingleClass,
    /// Cut-vertex handled through two pairs of branchings.
    CutVertexBranchings,
    /// Internal class arcs deleted while keeping 2-arc-strength.
    InternalStrip,
    /// No internal arc could be deleted; one class plus a universal vertex.
    InternalStuck,
    /// Stripping reached an exception; the original went to search.
    InternalExceptionSearch,
    /// Classes cut down to two vertices and re-inserted as twins.
    TwinReduce,
    /// Cutting classes down reached an exception; a slightly larger instance
    /// went to search.
    TwinExceptionSearch,
    Case1,
    /// Three classes, two of them doubled.
    Case2Pair,
    /// Three classes, one doubled.
    Case2Hamilton,
    /// Bidirected triangle.
    Case2Cycles,
    /// Three doubled classes, left to search.
    Case2Search,
    /// Quotient isomorphic to S4 with a doubled class.
    Case3S4,
    /// 2-arc-strong quotient decomposed by search, classes re-inserted.
    Case3Search,
    /// Some doubled-class vertex could be deleted.
    Case4Recurse,
    /// The seven-vertex pattern on `T4s[2,2,2,1]` or its reverse.
    Case4Pattern,
    Case41Double,
    Case41Single,
    Case421Small,
    Case421,
    Case422,
    Case423,
    Case43,
    /// Cut-arcs outside the case analysis; one vertex deleted and absorbed.
    Case4Delete,
    /// Cut-arcs outside the case analysis and no deletable vertex; search.
    Case4Search,
    MultiPair,
    MultiS4Lemma,
    MultiSimple,
    MultiDropCopy,
    /// Every removable spare copy leads to an exception; search.
    MultiSearch,
    MultiTightCut,
    MultiContract,
    MultiTerminal,
}

/// The branches taken while decomposing, in order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Trace {
    pub branches: Vec<Branch>,
}

impl Trace {
    pub fn hit(&self, b: Branch) -> bool {
        self.branches.contains(&b)
    }
}

pub(crate) struct Ctx {
    cfg: SearchConfig,
    trace: Trace,
}

impl Ctx {
    fn new(cfg: SearchConfig) -> Self {
        Ctx { cfg, trace: Trace::default() }
    }

    fn mark(&mut self, b: Branch) {
        self.trace.branches.push(b);
    }
}

/// Decides whether `d` has a strong arc decomposition and builds one.
///
/// `d` may be a semicomplete composition (with at most single arcs) or a
/// semicomplete multigraph. Anything else is out of scope.
pub fn decompose(d: &Digraph) -> Result<DecomposeOutcome> {
    decompose_traced(d, &SearchConfig::default()).map(|(o, _)| o)
}

/// [`decompose`] with an explicit search budget, also returning the
/// branches taken.
pub fn decompose_traced(d: &Digraph, cfg: &SearchConfig) -> Result<(DecomposeOutcome, Trace)> {
    let mut ctx = Ctx::new(cfg.clone());
    let out = solve(&d.normalize(), &mut ctx)?;
    Ok((out, ctx.trace))
}

pub(crate) fn solve(d: &Digraph, ctx: &mut Ctx) -> Result<DecomposeOutcome> {
    let n = d.vertex_count();
    if n <= 1 {
        return Ok(DecomposeOutcome::Decomposed(Decomposition::default()));
    }
    if let Err(w) = is_k_arc_strong(d, 2) {
        return Ok(DecomposeOutcome::NotTwoArcStrong(w));
    }
    if d.has_parallel_arcs() {
        if !d.is_semicomplete() {
            return Err(Error::OutOfScope(
                "parallel arcs are only supported in semicomplete multigraphs".into(),
            ));
        }
        return multigraph::multigraph(d, ctx);
    }
    if let Some(k) = match_exception(d, Family::Composition) {
        return Ok(DecomposeOutcome::Exception(k));
    }
    let s = finest_structure(d)?;
    if s.class_count() < 2 {
        let why = match composition_structure(d) {
            Err(e) => e.to_string(),
            Ok(_) => "no partition into two or more modules".into(),
        };
        return Err(Error::OutOfScope(format!("not a semicomplete composition: {why}")));
    }
    solve_composition(d, &s, ctx).map(DecomposeOutcome::Decomposed)
}

/// Steps after the exception check, for a 2-arc-strong simple composition.
fn solve_composition(
    d: &Digraph,
    s: &crate::CompositionStructure,
    ctx: &mut Ctx,
) -> Result<Decomposition> {
    if let Some(&u) = cut_vertices(d)?.first() {
        return cut_vertex::cut_vertex(d, u, ctx);
    }
    if !s.is_extension(d) {
        return internal::strip(d, s, ctx);
    }
    if s.classes.iter().any(|c| c.len() > 2) {
        return reduce_large_classes(d, s, ctx);
    }
    extension::small_classes(d, s, ctx)
}

/// Cuts every class down to its two smallest vertices, decomposes what is
/// left and puts the removed vertices back as twins.
fn reduce_large_classes(
    d: &Digraph,
    s: &crate::CompositionStructure,
    ctx: &mut Ctx,
) -> Result<Decomposition> {
    ctx.mark(Branch::TwinReduce);
    let n = d.vertex_count();
    let mut removed = Vec::new();
    for c in &s.classes {
        removed.extend(c.iter().skip(2).copied());
    }
    let mut keep = vec![true; n];
    for &x in &removed {
        keep[x] = false;
    }
    let core: Vec<VertexId> = (0..n).filter(|&v| keep[v]).collect();
    let (small, map) = sub(d, &core);
    let mut dec = match solve(&small, ctx)? {
        DecomposeOutcome::Decomposed(dec) => dec.relabeled(&map),
        DecomposeOutcome::Exception(_) => {
            // put twins back until the instance stops being exceptional
            ctx.mark(Branch::TwinExceptionSearch);
            loop {
                let x = removed.pop().ok_or_else(|| internal!("ran out of twins"))?;
                keep[x] = true;
                let vs: Vec<VertexId> = (0..n).filter(|&v| keep[v]).collect();
                let (g, map) = sub(d, &vs);
                if match_exception(&g, Family::Composition).is_none() {
                    break search(&g, ctx)?.relabeled(&map);
                }
            }
        }
        DecomposeOutcome::NotTwoArcStrong(_) => {
            return Err(internal!("deleting surplus twins broke 2-arc-strength"))
        }
    };
    while let Some(x) = removed.pop() {
        absorb(d, &mut dec, &mut keep, x)?;
    }
    finish(d, dec)
}

/// Subdigraph induced by `vs` with the map from new ids to old ids.
pub(crate) fn sub(d: &Digraph, vs: &[VertexId]) -> (Digraph, Vec<VertexId>) {
    (d.induced_unchecked(vs), vs.to_vec())
}

/// Verifies `dec` against `d`; a failure here is a bug in a construction.
pub(crate) fn finish(d: &Digraph, dec: Decomposition) -> Result<Decomposition> {
    match verify_decomposition(d, &dec) {
        Ok(()) => Ok(dec),
        Err(e) => Err(internal!("construction produced an invalid decomposition: {e}")),
    }
}

/// Bounded exact search for instances where the construction is an
/// existence theorem proved elsewhere.
pub(crate) fn search(d: &Digraph, ctx: &Ctx) -> Result<Decomposition> {
    match search_decompose(d, &ctx.cfg) {
        SearchOutcome::Found(dec) => Ok(dec),
        SearchOutcome::ProvenNone => Err(internal!(
            "search found no decomposition of a digraph the theory says has one"
        )),
        SearchOutcome::BudgetExhausted => Err(Error::BudgetExhausted(format!(
            "search fallback on {} vertices and {} arcs",
            d.vertex_count(),
            d.arc_count()
        ))),
    }
}

/// Adds every arc copy of `d` not yet used by `dec` to side `side` (1 or 2).
pub(crate) fn fill_remaining(d: &Digraph, dec: &mut Decomposition, side: u8) -> Result<()> {
    let n = d.vertex_count();
    let mut used = vec![0u32; n * n];
    for &(a, b) in dec.a1.iter().chain(&dec.a2) {
        if a >= n || b >= n || a == b {
            return Err(internal!("bad arc {a}->{b}"));
        }
        used[a * n + b] += 1;
    }
    let target = if side == 1 { &mut dec.a1 } else { &mut dec.a2 };
    for a in d.arcs() {
        let u = used[a.tail * n + a.head];
        let m = a.multiplicity as u32;
        if u > m {
            return Err(internal!("arc {}->{} used {u} times", a.tail, a.head));
        }
        for _ in u..m {
            target.push((a.tail, a.head));
        }
    }
    Ok(())
}

/// Inserts `x` into the vertex set marked by `inside`, where `dec`
/// decomposes the arcs of `d` inside that set. Each side gets one arc into
/// `x` and one arc out of it; every other arc between `x` and the set goes
/// to side 1.
pub(crate) fn absorb(
    d: &Digraph,
    dec: &mut Decomposition,
    inside: &mut [bool],
    x: VertexId,
) -> Result<()> {
    let mut ins: Vec<VertexId> = d.in_neighbors(x).iter().copied().filter(|&v| inside[v]).collect();
    let mut outs: Vec<VertexId> =
        d.out_neighbors(x).iter().copied().filter(|&v| inside[v]).collect();
    ins.sort_unstable();
    outs.sort_unstable();
    if ins.len() < 2 || outs.len() < 2 {
        return Err(Error::Precondition(format!(
            "vertex {x} needs two in- and two out-neighbours, has {} and {}",
            ins.len(),
            outs.len()
        )));
    }
    dec.a1.push((ins[0], x));
    dec.a1.push((x, outs[0]));
    dec.a2.push((ins[1], x));
    dec.a2.push((x, outs[1]));
    for &a in &ins {
        let skip = usize::from(a == ins[0] || a == ins[1]);
        for _ in skip..d.multiplicity(a, x) as usize {
            dec.a1.push((a, x));
        }
    }
    for &b in &outs {
        let skip = usize::from(b == outs[0] || b == outs[1]);
        for _ in skip..d.multiplicity(x, b) as usize {
            dec.a1.push((x, b));
        }
    }
    inside[x] = true;
    Ok(())
}

fn restricted_check(d: &Digraph, dec: &Decomposition, inside: &[bool]) -> Result<()> {
    let vs: Vec<VertexId> = (0..d.vertex_count()).filter(|&v| inside[v]).collect();
    let mut back = vec![usize::MAX; d.vertex_count()];
    for (i, &v) in vs.iter().enumerate() {
        back[v] = i;
    }
    if dec.a1.iter().chain(&dec.a2).any(|&(a, b)| back[a] == usize::MAX || back[b] == usize::MAX) {
        return Err(Error::Precondition("decomposition uses a vertex outside the set".into()));
    }
    let (g, _) = sub(d, &vs);
    verify_decomposition(&g, &dec.relabeled(&back))
        .map_err(|e| Error::Precondition(format!("input decomposition is invalid: {e}")))
}

/// Extends a decomposition of `d - x` to `d`, where `x` and `y` are
/// non-adjacent twins. `dec` uses the vertex ids of `d`.
pub fn twin_insert(
    d: &Digraph,
    dec: &Decomposition,
    x: VertexId,
    y: VertexId,
) -> Result<Decomposition> {
    let n = d.vertex_count();
    if x >= n || y >= n || x == y {
        return Err(Error::Precondition(format!("bad twin pair {x}, {y}")));
    }
    let twins = !d.adjacent(x, y)
        && (0..n).filter(|&v| v != x && v != y).all(|v| {
            d.multiplicity(v, x) == d.multiplicity(v, y)
                && d.multiplicity(x, v) == d.multiplicity(y, v)
        });
    if !twins {
        return Err(Error::Precondition(format!("{x} and {y} are not twins")));
    }
    let mut inside = vec![true; n];
    inside[x] = false;
    restricted_check(d, dec, &inside)?;
    let mut out = dec.clone();
    absorb(d, &mut out, &mut inside, x)?;
    finish(d, out)
}

/// Extends a decomposition of `d[inside]` to `d[inside + x]`, where `x` has
/// at least two in- and two out-neighbours in `inside`. The result uses the
/// ids of `d` and covers only arcs inside the enlarged set.
pub fn absorb_vertex(
    d: &Digraph,
    dec: &Decomposition,
    inside: &[VertexId],
    x: VertexId,
) -> Result<Decomposition> {
    let n = d.vertex_count();
    let mut mask = vec![false; n];
    for &v in inside {
        if v >= n {
            return Err(Error::Precondition(format!("vertex {v} out of range")));
        }
        mask[v] = true;
    }
    if x >= n || mask[x] {
        return Err(Error::Precondition(format!("vertex {x} is not outside the set")));
    }
    restricted_check(d, dec, &mask)?;
    let mut out = dec.clone();
    absorb(d, &mut out, &mut mask, x)?;
    restricted_check(d, &out, &mask).map_err(|e| internal!("{e}"))?;
    Ok(out)
}
