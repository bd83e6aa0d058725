//! Exact search for strong arc decompositions of arbitrary digraphs.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::connectivity::is_k_arc_strong;
use crate::decompose::{verify_decomposition, Decomposition};
use crate::digraph::{Digraph, VertexId};

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub node_budget: u64,
    pub time_budget: Duration,
    /// Try randomized constructions before the exhaustive search.
    pub heuristic_first: bool,
    pub seed: u64,
    /// Strongness pruning and symmetry breaking. Off only for counting runs.
    pub pruning: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            node_budget: 200_000_000,
            time_budget: Duration::from_secs(30),
            heuristic_first: true,
            seed: 0x5eed,
            pruning: true,
        }
    }
}

impl SearchConfig {
    /// Exhaustive search only, no time limit worth mentioning.
    pub fn exhaustive() -> Self {
        SearchConfig {
            heuristic_first: false,
            time_budget: Duration::from_secs(3600),
            node_budget: u64::MAX,
            ..SearchConfig::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Decomposition),
    ProvenNone,
    BudgetExhausted,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    /// Complete assignments reached, each weighted by the number of labelled
    /// bipartitions it stands for.
    pub weighted_leaves: u128,
    pub heuristic_hit: bool,
}

pub fn search_decompose(d: &Digraph, cfg: &SearchConfig) -> SearchOutcome {
    search_with_stats(d, cfg).0
}

pub fn search_with_stats(d: &Digraph, cfg: &SearchConfig) -> (SearchOutcome, SearchStats) {
    let d = d.normalize();
    let mut stats = SearchStats::default();
    let n = d.vertex_count();
    if n <= 1 {
        return (SearchOutcome::Found(Decomposition::default()), stats);
    }
    if cfg.pruning && is_k_arc_strong(&d, 2).is_err() {
        return (SearchOutcome::ProvenNone, stats);
    }
    let deadline = Instant::now() + cfg.time_budget;
    if cfg.heuristic_first {
        if let Some(dec) = heuristic(&d, cfg.seed, deadline) {
            stats.heuristic_hit = true;
            return (SearchOutcome::Found(dec), stats);
        }
    }
    let mut s = Search::new(&d, cfg, deadline);
    let res = s.dfs(0, 1);
    stats.nodes = s.nodes;
    stats.weighted_leaves = s.weighted_leaves;
    let outcome = match res {
        Step::Found => {
            let dec = s.decomposition();
            if verify_decomposition(&d, &dec).is_ok() {
                SearchOutcome::Found(dec)
            } else {
                // cannot happen unless pruning is wrong; report honestly
                SearchOutcome::BudgetExhausted
            }
        }
        Step::Exhausted => SearchOutcome::ProvenNone,
        Step::OutOfBudget => SearchOutcome::BudgetExhausted,
    };
    (outcome, stats)
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

struct Search<'a> {
    n: usize,
    recs: Vec<(VertexId, VertexId, u8)>,
    out_recs: Vec<Vec<usize>>,
    in_recs: Vec<Vec<usize>>,
    order: Vec<usize>,
    /// copies of each record on side 1, or `UNSET`
    c1: Vec<u8>,
    cfg: &'a SearchConfig,
    deadline: Instant,
    nodes: u64,
    weighted_leaves: u128,
    seen: Vec<bool>,
    stack: Vec<VertexId>,
}

const UNSET: u8 = u8::MAX;

impl<'a> Search<'a> {
    fn new(d: &Digraph, cfg: &'a SearchConfig, deadline: Instant) -> Self {
        let n = d.vertex_count();
        let recs: Vec<_> = d.arcs().map(|a| (a.tail, a.head, a.multiplicity)).collect();
        let mut out_recs = vec![Vec::new(); n];
        let mut in_recs = vec![Vec::new(); n];
        for (i, &(u, v, _)) in recs.iter().enumerate() {
            out_recs[u].push(i);
            in_recs[v].push(i);
        }
        // tightest vertices first: their few arcs decide strongness early
        let mut vs: Vec<VertexId> = (0..n).collect();
        vs.sort_by_key(|&v| (out_recs[v].len().min(in_recs[v].len()), v));
        let mut placed = vec![false; recs.len()];
        let mut order = Vec::with_capacity(recs.len());
        for v in vs {
            for &r in out_recs[v].iter().chain(&in_recs[v]) {
                if !placed[r] {
                    placed[r] = true;
                    order.push(r);
                }
            }
        }
        Search {
            n,
            c1: vec![UNSET; recs.len()],
            recs,
            out_recs,
            in_recs,
            order,
            cfg,
            deadline,
            nodes: 0,
            weighted_leaves: 0,
            seen: vec![false; n],
            stack: Vec::new(),
        }
    }

    fn usable(&self, r: usize, side: u8) -> bool {
        let c = self.c1[r];
        if c == UNSET {
            return true;
        }
        let m = self.recs[r].2;
        if side == 1 {
            c > 0
        } else {
            c < m
        }
    }

    fn reaches_all(&mut self, side: u8, forward: bool) -> bool {
        self.seen.iter_mut().for_each(|x| *x = false);
        self.seen[0] = true;
        self.stack.clear();
        self.stack.push(0);
        let mut count = 1;
        while let Some(u) = self.stack.pop() {
            let len = if forward { self.out_recs[u].len() } else { self.in_recs[u].len() };
            for i in 0..len {
                let r = if forward { self.out_recs[u][i] } else { self.in_recs[u][i] };
                if !self.usable(r, side) {
                    continue;
                }
                let (a, b, _) = self.recs[r];
                let w = if forward { b } else { a };
                if !self.seen[w] {
                    self.seen[w] = true;
                    count += 1;
                    self.stack.push(w);
                }
            }
        }
        count == self.n
    }

    fn side_strong(&mut self, side: u8) -> bool {
        self.reaches_all(side, true) && self.reaches_all(side, false)
    }

    fn dfs(&mut self, depth: usize, weight: u128) -> Step {
        self.nodes += 1;
        if self.nodes > self.cfg.node_budget
            || (self.nodes & 1023 == 0 && Instant::now() > self.deadline)
        {
            return Step::OutOfBudget;
        }
        if depth == self.order.len() {
            self.weighted_leaves += weight;
            if self.cfg.pruning || (self.side_strong(1) && self.side_strong(2)) {
                return Step::Found;
            }
            return Step::Exhausted;
        }
        let r = self.order[depth];
        let m = self.recs[r].2;
        let lowest = if self.cfg.pruning && depth == 0 { m.div_ceil(2) } else { 0 };
        let mut c = m as i32;
        while c >= lowest as i32 {
            let cu = c as u8;
            self.c1[r] = cu;
            let ok = !self.cfg.pruning
                || ((cu > 0 || self.side_strong(1)) && (cu < m || self.side_strong(2)));
            if ok {
                let w = weight * binomial(m, cu);
                match self.dfs(depth + 1, w) {
                    Step::Exhausted => {}
                    other => return other,
                }
            }
            c -= 1;
        }
        self.c1[r] = UNSET;
        Step::Exhausted
    }

    fn decomposition(&self) -> Decomposition {
        let mut dec = Decomposition::default();
        for (i, &(u, v, m)) in self.recs.iter().enumerate() {
            let c = self.c1[i];
            for _ in 0..c {
                dec.a1.push((u, v));
            }
            for _ in c..m {
                dec.a2.push((u, v));
            }
        }
        dec
    }
}

fn binomial(m: u8, c: u8) -> u128 {
    match (m, c) {
        (2, 1) => 2,
        _ => 1,
    }
}

/// Random minimal strong spanning subdigraph for side 1; succeeds when the
/// leftover arcs are strong too.
fn heuristic(d: &Digraph, seed: u64, deadline: Instant) -> Option<Decomposition> {
    let n = d.vertex_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let units = d.arc_units();
    let attempts = if units.len() > 2000 { 8 } else { 40 };
    for _ in 0..attempts {
        if Instant::now() > deadline {
            return None;
        }
        let root = rng.gen_range(0..n);
        let mut in_side1 = vec![false; units.len()];
        // unit index of each arc copy, per ordered pair
        let mut first_unit = vec![usize::MAX; n * n];
        for (i, &(a, b)) in units.iter().enumerate() {
            if first_unit[a * n + b] == usize::MAX {
                first_unit[a * n + b] = i;
            }
        }
        for forward in [true, false] {
            let mut seen = vec![false; n];
            seen[root] = true;
            let mut stack = vec![root];
            while let Some(u) = stack.pop() {
                let mut nbrs: Vec<VertexId> = if forward {
                    d.out_neighbors(u).to_vec()
                } else {
                    d.in_neighbors(u).to_vec()
                };
                nbrs.shuffle(&mut rng);
                for w in nbrs {
                    if !seen[w] {
                        seen[w] = true;
                        let (a, b) = if forward { (u, w) } else { (w, u) };
                        in_side1[first_unit[a * n + b]] = true;
                        stack.push(w);
                    }
                }
            }
        }
        let mut side1: Vec<usize> = (0..units.len()).filter(|&i| in_side1[i]).collect();
        side1.shuffle(&mut rng);
        let strong_without = |mask: &[bool], skip: usize| {
            let arcs: Vec<(VertexId, VertexId)> = (0..units.len())
                .filter(|&i| mask[i] && i != skip)
                .map(|i| units[i])
                .collect();
            is_k_arc_strong(&Digraph::spanning(n, &arcs), 1).is_ok()
        };
        let side2_arcs = |mask: &[bool]| -> Vec<(VertexId, VertexId)> {
            (0..units.len()).filter(|&i| !mask[i]).map(|i| units[i]).collect()
        };
        if is_k_arc_strong(&Digraph::spanning(n, &side2_arcs(&in_side1)), 1).is_err() {
            for &i in &side1 {
                if strong_without(&in_side1, i) {
                    in_side1[i] = false;
                }
            }
        }
        let a2 = side2_arcs(&in_side1);
        if is_k_arc_strong(&Digraph::spanning(n, &a2), 1).is_ok() {
            let a1 = (0..units.len()).filter(|&i| in_side1[i]).map(|i| units[i]).collect();
            let dec = Decomposition::new(a1, a2);
            if verify_decomposition(d, &dec).is_ok() {
                return Some(dec);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::{self, ExceptionKind};

    #[test]
    fn exceptions_have_no_decomposition() {
        for k in ExceptionKind::ALL {
            let out = search_decompose(&k.digraph(), &SearchConfig::exhaustive());
            assert_eq!(out, SearchOutcome::ProvenNone, "{k}");
        }
    }

    #[test]
    fn k3_opposite_cycles() {
        let k3 = gallery::bidirected_complete(3);
        for cfg in [SearchConfig::default(), SearchConfig::exhaustive()] {
            match search_decompose(&k3, &cfg) {
                SearchOutcome::Found(dec) => assert!(verify_decomposition(&k3, &dec).is_ok()),
                other => panic!("{other:?}"),
            }
        }
    }

    #[test]
    fn unpruned_search_counts_every_bipartition() {
        let graphs = [
            gallery::s4(),
            ExceptionKind::S43.digraph(),
            gallery::directed_cycle(5),
            ExceptionKind::C3_222.digraph(),
        ];
        for d in graphs {
            let cfg = SearchConfig { pruning: false, ..SearchConfig::exhaustive() };
            let (out, stats) = search_with_stats(&d, &cfg);
            assert_eq!(stats.weighted_leaves, 1u128 << d.arc_count(), "{d:?}");
            let pruned = search_decompose(&d, &SearchConfig::exhaustive());
            assert_eq!(
                matches!(out, SearchOutcome::Found(_)),
                matches!(pruned, SearchOutcome::Found(_))
            );
        }
    }

    #[test]
    fn tiny_budget_reports_exhaustion() {
        let d = ExceptionKind::C3_223.digraph();
        let cfg = SearchConfig { node_budget: 3, ..SearchConfig::exhaustive() };
        assert_eq!(search_decompose(&d, &cfg), SearchOutcome::BudgetExhausted);
    }
}
