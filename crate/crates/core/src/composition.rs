//! Compositions `T[H_1, ..., H_t]` and their structure records.

use crate::digraph::{Digraph, DigraphBuilder, VertexId};
use crate::error::{Error, Result};

/// A quotient `T` together with the vertex classes that witness
/// `D = T[H_1, ..., H_t]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionStructure {
    pub quotient: Digraph,
    pub classes: Vec<Vec<VertexId>>,
    pub class_of: Vec<usize>,
}

impl CompositionStructure {
    /// Derives the quotient from a partition of `d`. Fails if some class is
    /// not a module, or if two classes are joined in a mixed way.
    pub fn from_classes(d: &Digraph, classes: Vec<Vec<VertexId>>) -> Result<Self> {
        let n = d.vertex_count();
        let mut class_of = vec![usize::MAX; n];
        for (i, c) in classes.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::MalformedInput(format!("class {i} is empty")));
            }
            for &v in c {
                if v >= n || class_of[v] != usize::MAX {
                    return Err(Error::MalformedInput(format!(
                        "vertex {v} out of range or in two classes"
                    )));
                }
                class_of[v] = i;
            }
        }
        if class_of.contains(&usize::MAX) {
            return Err(Error::MalformedInput("classes do not cover every vertex".into()));
        }
        let t = classes.len();
        let mut q = DigraphBuilder::new(t);
        for i in 0..t {
            for p in 0..t {
                if i == p {
                    continue;
                }
                let mut full = true;
                let mut any = false;
                for &x in &classes[i] {
                    for &y in &classes[p] {
                        match d.multiplicity(x, y) {
                            0 => full = false,
                            1 => any = true,
                            _ => {
                                return Err(Error::Precondition(format!(
                                    "parallel arc {x}->{y} between classes"
                                )))
                            }
                        }
                    }
                }
                if any && !full {
                    return Err(Error::Precondition(format!(
                        "classes {i} and {p} are not joined uniformly"
                    )));
                }
                if full {
                    q.add(i, p);
                }
            }
        }
        Ok(CompositionStructure { quotient: q.build(), classes, class_of })
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Subdigraph of `d` induced by class `i`, with ids local to the class.
    pub fn part(&self, d: &Digraph, i: usize) -> Digraph {
        d.induced_unchecked(&self.classes[i])
    }

    /// True when no class induces an arc.
    pub fn is_extension(&self, d: &Digraph) -> bool {
        self.classes
            .iter()
            .all(|c| c.iter().all(|&x| c.iter().all(|&y| !d.has_arc(x, y))))
    }

    /// Checks the structure against `d`: partition, uniform joins, and no
    /// arcs between classes the quotient leaves unjoined.
    pub fn is_consistent_with(&self, d: &Digraph) -> bool {
        match CompositionStructure::from_classes(d, self.classes.clone()) {
            Ok(s) => s.quotient == self.quotient && s.class_of == self.class_of,
            Err(_) => false,
        }
    }
}

/// Builds `T[H_1, ..., H_t]`. Class `i` receives consecutive ids, in order.
pub fn compose(t: &Digraph, parts: &[Digraph]) -> Result<(Digraph, CompositionStructure)> {
    if parts.len() != t.vertex_count() {
        return Err(Error::MalformedInput(format!(
            "{} parts for a quotient on {} vertices",
            parts.len(),
            t.vertex_count()
        )));
    }
    let mut classes = Vec::with_capacity(parts.len());
    let mut next = 0;
    for (i, h) in parts.iter().enumerate() {
        if h.vertex_count() == 0 {
            return Err(Error::MalformedInput(format!("part {i} is empty")));
        }
        classes.push((next..next + h.vertex_count()).collect::<Vec<_>>());
        next += h.vertex_count();
    }
    let n = next;
    let mut b = DigraphBuilder::new(n);
    for (i, h) in parts.iter().enumerate() {
        let base = classes[i][0];
        for a in h.arcs() {
            b.add_copies(base + a.tail, base + a.head, a.multiplicity as u32)?;
        }
    }
    for a in t.arcs() {
        for &x in &classes[a.tail] {
            for &y in &classes[a.head] {
                b.add(x, y);
            }
        }
    }
    let mut class_of = vec![0; n];
    for (i, c) in classes.iter().enumerate() {
        for &v in c {
            class_of[v] = i;
        }
    }
    let quotient = {
        let mut q = DigraphBuilder::new(t.vertex_count());
        for a in t.arcs() {
            q.add(a.tail, a.head);
        }
        q.build()
    };
    Ok((b.build(), CompositionStructure { quotient, classes, class_of }))
}

/// `T[K̄_{n_1}, ..., K̄_{n_t}]`.
pub fn extension(t: &Digraph, sizes: &[usize]) -> Result<(Digraph, CompositionStructure)> {
    let parts: Vec<Digraph> = sizes.iter().map(|&s| Digraph::empty(s)).collect();
    compose(t, &parts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery;

    #[test]
    fn c3_of_independent_pairs() {
        let (d, s) = extension(&gallery::directed_cycle(3), &[2, 2, 2]).unwrap();
        assert_eq!(d.vertex_count(), 6);
        assert_eq!(d.arc_count(), 12);
        assert_eq!(s.classes, vec![vec![0, 1], vec![2, 3], vec![4, 5]]);
        assert!(s.is_consistent_with(&d));
        let (h, _) = d.induced(&[0, 2, 4]).unwrap();
        assert_eq!(h, gallery::directed_cycle(3));
    }

    #[test]
    fn arc_count_formula() {
        let t = gallery::s4();
        let parts = vec![
            Digraph::from_arcs(2, [(0, 1)]).unwrap(),
            Digraph::empty(3),
            Digraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap(),
            Digraph::empty(1),
        ];
        let (d, s) = compose(&t, &parts).unwrap();
        let sizes: Vec<usize> = parts.iter().map(|h| h.vertex_count()).collect();
        let expected: usize = parts.iter().map(|h| h.arc_count()).sum::<usize>()
            + t.arcs().map(|a| sizes[a.tail] * sizes[a.head]).sum::<usize>();
        assert_eq!(d.arc_count(), expected);
        assert!(s.is_consistent_with(&d));
        assert!(!s.is_extension(&d));
    }

    #[test]
    fn empty_part_rejected() {
        let t = gallery::directed_cycle(2);
        assert!(compose(&t, &[Digraph::empty(1), Digraph::empty(0)]).is_err());
        assert!(compose(&t, &[Digraph::empty(1)]).is_err());
    }

    #[test]
    fn mixed_join_is_not_a_structure() {
        // 0->1, 0->2 but 1 and 2 placed in one class with 2->... missing
        let d = Digraph::from_arcs(3, [(0, 1), (1, 0), (0, 2)]).unwrap();
        assert!(CompositionStructure::from_classes(&d, vec![vec![0], vec![1, 2]]).is_err());
        assert!(CompositionStructure::from_classes(&d, vec![vec![0], vec![1]]).is_err());
    }
}
