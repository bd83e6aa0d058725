//! JSON and DOT forms of digraphs and results.
//!
//! A digraph is `{"n": 4, "arcs": [[tail, head, multiplicity], ...]}` with
//! 0-based ids. Multiplicity may be omitted and defaults to 1; repeated
//! entries add up.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::composition::CompositionStructure;
use crate::connectivity::CutWitness;
use crate::decompose::{DecomposeOutcome, Decomposition};
use crate::digraph::{Digraph, VertexId};
use crate::error::{Error, Result};

#[derive(Debug, Serialize, Deserialize)]
struct DigraphJson {
    n: usize,
    arcs: Vec<Vec<u64>>,
}

pub fn parse_digraph(text: &str) -> Result<Digraph> {
    let raw: DigraphJson =
        serde_json::from_str(text).map_err(|e| Error::MalformedInput(e.to_string()))?;
    digraph_from_parts(raw.n, &raw.arcs)
}

/// Reads the digraph from a JSON value, e.g. the `"quotient"` field of a
/// recognized structure.
pub fn digraph_from_value(v: &Value) -> Result<Digraph> {
    let raw: DigraphJson =
        serde_json::from_value(v.clone()).map_err(|e| Error::MalformedInput(e.to_string()))?;
    digraph_from_parts(raw.n, &raw.arcs)
}

fn digraph_from_parts(n: usize, arcs: &[Vec<u64>]) -> Result<Digraph> {
    let mut b = Digraph::builder(n);
    for a in arcs {
        let (u, v, m) = match a[..] {
            [u, v] => (u, v, 1),
            [u, v, m] => (u, v, m),
            _ => return Err(Error::MalformedInput(format!("arc entry {a:?} needs 2 or 3 numbers"))),
        };
        if m == 0 || m > u8::MAX as u64 {
            return Err(Error::MalformedInput(format!("bad multiplicity {m}")));
        }
        b.add_copies(u as usize, v as usize, m as u32)?;
    }
    Ok(b.build())
}

pub fn digraph_value(d: &Digraph) -> Value {
    let arcs: Vec<[u64; 3]> =
        d.arcs().map(|a| [a.tail as u64, a.head as u64, a.multiplicity as u64]).collect();
    json!({ "n": d.vertex_count(), "arcs": arcs })
}

pub fn digraph_json(d: &Digraph) -> String {
    serde_json::to_string(&digraph_value(d)).expect("plain data serializes")
}

/// DOT text; an arc of multiplicity 2 becomes two parallel edges.
pub fn digraph_dot(d: &Digraph) -> String {
    let mut s = String::from("digraph D {\n");
    for v in 0..d.vertex_count() {
        let _ = writeln!(s, "  {v};");
    }
    for a in d.arcs() {
        for _ in 0..a.multiplicity {
            let _ = writeln!(s, "  {} -> {};", a.tail, a.head);
        }
    }
    s.push_str("}\n");
    s
}

/// DOT text with the two sides coloured.
pub fn decomposition_dot(d: &Digraph, dec: &Decomposition) -> String {
    let mut s = String::from("digraph D {\n");
    for v in 0..d.vertex_count() {
        let _ = writeln!(s, "  {v};");
    }
    for (arcs, colour) in [(&dec.a1, "red"), (&dec.a2, "blue")] {
        for &(u, v) in arcs {
            let _ = writeln!(s, "  {u} -> {v} [color={colour}];");
        }
    }
    s.push_str("}\n");
    s
}

fn pairs(arcs: &[(VertexId, VertexId)]) -> Value {
    json!(arcs.iter().map(|&(u, v)| [u, v]).collect::<Vec<_>>())
}

pub fn witness_value(w: &CutWitness) -> Value {
    json!({ "side": w.side, "crossing": pairs(&w.crossing) })
}

pub fn decomposition_value(dec: &Decomposition) -> Value {
    json!({ "a1": pairs(&dec.a1), "a2": pairs(&dec.a2) })
}

pub fn parse_decomposition(text: &str) -> Result<Decomposition> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::MalformedInput(e.to_string()))?;
    let side = |key: &str| -> Result<Vec<(VertexId, VertexId)>> {
        let arr = v
            .get(key)
            .and_then(Value::as_array)
            .ok_or_else(|| Error::MalformedInput(format!("missing array {key:?}")))?;
        arr.iter()
            .map(|p| match p.as_array().map(|x| x.iter().map(Value::as_u64).collect::<Vec<_>>()) {
                Some(x) if x.len() == 2 && x.iter().all(Option::is_some) => {
                    Ok((x[0].unwrap() as usize, x[1].unwrap() as usize))
                }
                _ => Err(Error::MalformedInput(format!("bad arc {p} in {key:?}"))),
            })
            .collect()
    };
    Ok(Decomposition::new(side("a1")?, side("a2")?))
}

/// The `decompose` report.
pub fn outcome_value(out: &DecomposeOutcome) -> Value {
    match out {
        DecomposeOutcome::Decomposed(dec) => json!({
            "status": "decomposed",
            "a1": pairs(&dec.a1),
            "a2": pairs(&dec.a2),
            "witness": null,
        }),
        DecomposeOutcome::NotTwoArcStrong(w) => json!({
            "status": "not_2_arc_strong",
            "a1": [],
            "a2": [],
            "witness": witness_value(w),
        }),
        DecomposeOutcome::Exception(k) => json!({
            "status": "exception",
            "kind": k.to_string(),
            "a1": [],
            "a2": [],
            "witness": { "exception": k.to_string() },
        }),
    }
}

pub fn structure_value(s: &CompositionStructure) -> Value {
    json!({ "quotient": digraph_value(&s.quotient), "classes": s.classes })
}
