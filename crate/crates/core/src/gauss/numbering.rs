use std::collections::VecDeque;

use super::{GaussDiagram, Role};

/// Integer labels on the arcs of a Gauss diagram. Arc `k` runs from token
/// `k` to token `k + 1` (cyclically).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Numbering {
    pub labels: Vec<i64>,
}

/// One linear condition `label[to] = label[from] + offset`.
#[derive(Debug, Clone, Copy)]
struct Constraint {
    from: usize,
    to: usize,
    offset: i64,
}

fn constraints(d: &GaussDiagram) -> Vec<Constraint> {
    let n = d.len();
    let incoming = |p: usize| (p + n - 1) % n;
    let outgoing = |p: usize| p;
    let mut out = Vec::with_capacity(3 * d.chord_count());
    for chord in d.chords() {
        let (o, u) = d.endpoints(chord).expect("chord listed by the diagram");
        let sign = d.sign(chord).expect("chord listed by the diagram");
        // The strand that steps up by one is the over strand at a positive
        // crossing and the under strand at a negative one.
        let (step, other) = if sign > 0 { (o, u) } else { (u, o) };
        debug_assert_eq!(d.tokens()[step].role, if sign > 0 { Role::Over } else { Role::Under });
        out.push(Constraint {
            from: incoming(step),
            to: outgoing(step),
            offset: 1,
        });
        out.push(Constraint {
            from: outgoing(step),
            to: incoming(other),
            offset: 0,
        });
        out.push(Constraint {
            from: incoming(step),
            to: outgoing(other),
            offset: 0,
        });
    }
    out
}

/// Solve the crossing equations for arc labels, or `None` if they are
/// inconsistent. The minimum label is normalized to 0.
pub fn alexander_numbering(d: &GaussDiagram) -> Option<Numbering> {
    let n = d.len();
    if n == 0 {
        return Some(Numbering { labels: vec![0] });
    }
    let mut adj: Vec<Vec<(usize, i64)>> = vec![Vec::new(); n];
    for c in constraints(d) {
        adj[c.from].push((c.to, c.offset));
        adj[c.to].push((c.from, -c.offset));
    }
    let mut labels: Vec<Option<i64>> = vec![None; n];
    for root in 0..n {
        if labels[root].is_some() {
            continue;
        }
        labels[root] = Some(0);
        let mut queue = VecDeque::from([root]);
        while let Some(a) = queue.pop_front() {
            let la = labels[a].expect("queued arcs are labelled");
            for &(b, w) in &adj[a] {
                match labels[b] {
                    None => {
                        labels[b] = Some(la + w);
                        queue.push_back(b);
                    }
                    Some(lb) if lb != la + w => return None,
                    Some(_) => {}
                }
            }
        }
    }
    let labels: Vec<i64> = labels.into_iter().map(|l| l.expect("every arc visited")).collect();
    let min = labels.iter().copied().min().unwrap_or(0);
    Some(Numbering {
        labels: labels.into_iter().map(|l| l - min).collect(),
    })
}

impl Numbering {
    /// Check every crossing equation against `d`.
    pub fn satisfies(&self, d: &GaussDiagram) -> bool {
        if d.is_empty() {
            return self.labels.len() == 1;
        }
        self.labels.len() == d.len()
            && constraints(d)
                .iter()
                .all(|c| self.labels[c.to] == self.labels[c.from] + c.offset)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::is_almost_classical;

    #[test]
    fn classical_trefoil_is_numerable() {
        let d: GaussDiagram = "O1+,U2+,O3+,U1+,O2+,U3+".parse().unwrap();
        let num = alexander_numbering(&d).expect("trefoil has a numbering");
        assert!(num.satisfies(&d));
        assert_eq!(num.labels.iter().min(), Some(&0));
    }

    #[test]
    fn virtual_trefoil_is_not() {
        let d: GaussDiagram = "O1+,O2+,U1+,U2+".parse().unwrap();
        assert_eq!(alexander_numbering(&d), None);
    }

    #[test]
    fn empty_diagram_single_label() {
        assert_eq!(
            alexander_numbering(&GaussDiagram::empty()),
            Some(Numbering { labels: vec![0] })
        );
    }

    #[test]
    fn agrees_with_index_on_small_codes() {
        for code in [
            "O1-,U1-",
            "O1+,U2-,U1+,O2-",
            "O1-,O2-,U1-,U2-",
            "O1+,U2-,O3+,U1+,O2-,U3+",
        ] {
            let d: GaussDiagram = code.parse().unwrap();
            assert_eq!(alexander_numbering(&d).is_some(), is_almost_classical(&d), "{code}");
        }
    }
}
