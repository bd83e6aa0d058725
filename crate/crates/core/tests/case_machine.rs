//! Extensions with prescribed quotient cut-arcs go through the matching
//! branch of the construction, both via the direct entry and via `decompose`.

mod common;

use strongsplit::decompose::{
    decompose_small_class_extension_traced, decompose_traced, Branch, DecomposeOutcome,
};
use strongsplit::generate::{cut_extension, rng, CutShape};
use strongsplit::oracle::SearchConfig;

fn run(shape: CutShape, expect: &[Branch]) {
    let mut r = rng(1);
    let cfg = SearchConfig::default();
    let mut hit = false;
    for t in 5..=9 {
        for _ in 0..8 {
            let (d, st) = cut_extension(shape, t, 0.3, true, &mut r).unwrap();
            let (dec, trace) = decompose_small_class_extension_traced(&d, &st, &cfg)
                .unwrap_or_else(|e| panic!("{shape:?}: {e}"));
            assert!(common::valid(&d, &dec), "{shape:?}");
            hit |= trace.branches.iter().any(|b| expect.contains(b));

            let (out, _) = decompose_traced(&d, &cfg).unwrap();
            let DecomposeOutcome::Decomposed(dec) = out else { panic!("{shape:?}: {out:?}") };
            assert!(common::valid(&d, &dec), "{shape:?}");
        }
    }
    assert!(hit, "{shape:?} never reached {expect:?}");
}

#[test]
fn no_cut_arcs() {
    // quotients on five or more vertices are split by search, then the
    // classes are put back
    run(CutShape::None, &[Branch::Case3Search]);
}

#[test]
fn one_cut_arc() {
    run(CutShape::OneTail, &[Branch::Case41Single]);
    run(CutShape::OneHead, &[Branch::Case41Single]);
    run(CutShape::OneBoth, &[Branch::Case41Double]);
}

#[test]
fn two_cut_arcs() {
    run(CutShape::TwoShared, &[Branch::Case421, Branch::Case421Small]);
    run(CutShape::TwoSamePart, &[Branch::Case422]);
    run(CutShape::TwoSplit, &[Branch::Case423]);
}

#[test]
fn three_cut_arcs() {
    run(CutShape::Three, &[Branch::Case43]);
}

#[test]
fn cut_vertex_shapes_use_branchings() {
    run(CutShape::OneTail, &[Branch::CutVertexBranchings]);
    run(CutShape::OneHead, &[Branch::CutVertexBranchings]);
}
