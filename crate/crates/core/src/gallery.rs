//! Named digraphs: the exceptional graphs and a few small families.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::composition::{compose, extension};
use crate::digraph::Digraph;
use crate::error::{Error, Result};

/// The digraphs without a strong arc decomposition that the
/// characterizations single out. `S44`, `S45` and `S46` are 2-arc-strong
/// multigraphs on four vertices that exhaustive search also refutes; each
/// is `S4` with two or three doubled arcs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ExceptionKind {
    S4,
    S41,
    S42,
    S43,
    /// `S4` with `v4v1` and `v3v1` doubled.
    S44,
    /// `S4` with `v1v2` and `v1v3` doubled.
    S45,
    /// `S4` with `v4v1`, `v4v2` and `v3v1` doubled.
    S46,
    C3_222,
    C3_22P2,
    C3_223,
}

impl ExceptionKind {
    pub const ALL: [ExceptionKind; 10] = [
        ExceptionKind::S4,
        ExceptionKind::S41,
        ExceptionKind::S42,
        ExceptionKind::S43,
        ExceptionKind::S44,
        ExceptionKind::S45,
        ExceptionKind::S46,
        ExceptionKind::C3_222,
        ExceptionKind::C3_22P2,
        ExceptionKind::C3_223,
    ];

    /// Exceptions among simple semicomplete compositions.
    pub const COMPOSITION: [ExceptionKind; 4] = [
        ExceptionKind::S4,
        ExceptionKind::C3_222,
        ExceptionKind::C3_22P2,
        ExceptionKind::C3_223,
    ];

    /// Exceptions among semicomplete multigraphs.
    pub const MULTIGRAPH: [ExceptionKind; 7] = [
        ExceptionKind::S4,
        ExceptionKind::S41,
        ExceptionKind::S42,
        ExceptionKind::S43,
        ExceptionKind::S44,
        ExceptionKind::S45,
        ExceptionKind::S46,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ExceptionKind::S4 => "S4",
            ExceptionKind::S41 => "S41",
            ExceptionKind::S42 => "S42",
            ExceptionKind::S43 => "S43",
            ExceptionKind::S44 => "S44",
            ExceptionKind::S45 => "S45",
            ExceptionKind::S46 => "S46",
            ExceptionKind::C3_222 => "C3_222",
            ExceptionKind::C3_22P2 => "C3_22P2",
            ExceptionKind::C3_223 => "C3_223",
        }
    }

    pub fn digraph(self) -> Digraph {
        match self {
            ExceptionKind::S4 => s4(),
            ExceptionKind::S41 => s4().with_arc_copy(2, 0),
            ExceptionKind::S42 => s4().with_arc_copy(0, 1),
            ExceptionKind::S43 => s4().with_arc_copy(2, 0).with_arc_copy(1, 3),
            ExceptionKind::S44 => s4().with_arc_copy(3, 0).with_arc_copy(2, 0),
            ExceptionKind::S45 => s4().with_arc_copy(0, 1).with_arc_copy(0, 2),
            ExceptionKind::S46 => s4().with_arc_copy(3, 0).with_arc_copy(3, 1).with_arc_copy(2, 0),
            ExceptionKind::C3_222 => c3_ext(&[2, 2, 2]),
            ExceptionKind::C3_22P2 => {
                let p2 = Digraph::from_arcs(2, [(0, 1)]).unwrap();
                let parts = [Digraph::empty(2), Digraph::empty(2), p2];
                compose(&directed_cycle(3), &parts).unwrap().0
            }
            ExceptionKind::C3_223 => c3_ext(&[2, 2, 3]),
        }
    }
}

impl fmt::Display for ExceptionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ExceptionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ExceptionKind::ALL
            .into_iter()
            .find(|k| k.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::MalformedInput(format!("unknown exception {s}")))
    }
}

fn c3_ext(sizes: &[usize]) -> Digraph {
    extension(&directed_cycle(3), sizes).unwrap().0
}

/// `S_4` on `v1..v4 = 0..3`: the Hamilton cycle `v1v2v3v4v1` plus the
/// 2-cycles `v1v3v1` and `v2v4v2`.
pub fn s4() -> Digraph {
    Digraph::from_arcs(
        4,
        [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (2, 0), (1, 3), (3, 1)],
    )
    .unwrap()
}

/// The strong tournament on four vertices. With `u1..u4 = 0..3` its arcs are
/// `u4u1, u1u2, u2u3, u3u1, u2u4, u3u4`.
pub fn t4s() -> Digraph {
    Digraph::from_arcs(4, [(3, 0), (0, 1), (1, 2), (2, 0), (1, 3), (2, 3)]).unwrap()
}

pub fn directed_cycle(n: usize) -> Digraph {
    if n < 2 {
        return Digraph::empty(n);
    }
    Digraph::from_arcs(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

pub fn bidirected_complete(n: usize) -> Digraph {
    Digraph::from_arcs(
        n,
        (0..n).flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v))),
    )
    .unwrap()
}

/// `T_4^s[K̄2, K̄2, K̄2, K̄1]`, the one 7-vertex extension whose decomposition
/// is given explicitly.
pub fn t4s_2221() -> Digraph {
    extension(&t4s(), &[2, 2, 2, 1]).unwrap().0
}

/// Two doubled classes joined both ways.
pub fn fig_x1a() -> Digraph {
    extension(&bidirected_complete(2), &[2, 2]).unwrap().0
}

/// Three classes with `u1 -> u2 -> u3 -> u1` and `u3 -> u2`; `u2` and `u3`
/// doubled.
pub fn fig_x1b() -> Digraph {
    let t = Digraph::from_arcs(3, [(0, 1), (1, 2), (2, 0), (2, 1)]).unwrap();
    extension(&t, &[1, 2, 2]).unwrap().0
}

/// `S4` with its first vertex doubled.
pub fn fig_x1c() -> Digraph {
    extension(&s4(), &[2, 1, 1, 1]).unwrap().0
}

/// Names accepted by [`named`].
pub const NAMES: [&str; 17] = [
    "S4", "S41", "S42", "S43", "S44", "S45", "S46", "C3_222", "C3_22P2", "C3_223", "T4s", "T4s_2221", "FigX1a",
    "FigX1b", "FigX1c", "Kn", "Cn",
];

/// Looks up a gallery digraph. `Kn` and `Cn` use `size`.
pub fn named(name: &str, size: usize) -> Result<Digraph> {
    if let Ok(k) = name.parse::<ExceptionKind>() {
        return Ok(k.digraph());
    }
    match name.to_ascii_lowercase().as_str() {
        "t4s" => Ok(t4s()),
        "t4s_2221" => Ok(t4s_2221()),
        "figx1a" => Ok(fig_x1a()),
        "figx1b" => Ok(fig_x1b()),
        "figx1c" => Ok(fig_x1c()),
        "kn" | "bidirected_kn" => Ok(bidirected_complete(size)),
        "cn" | "directed_cn" => Ok(directed_cycle(size)),
        _ => Err(Error::MalformedInput(format!("unknown gallery digraph {name}"))),
    }
}
