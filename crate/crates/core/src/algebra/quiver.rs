use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result, Q};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

/// Finite quiver with labelled vertices `0..r` and labelled arrows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::InvalidQuiver("the quiver has no vertices".into()));
        }
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidQuiver(format!("duplicate vertex label `{v}`")));
            }
        }
        let mut seen = HashSet::new();
        for a in &arrows {
            if !seen.insert(a.label.as_str()) {
                return Err(Error::InvalidQuiver(format!("duplicate arrow label `{}`", a.label)));
            }
            if a.source >= vertices.len() || a.target >= vertices.len() {
                return Err(Error::InvalidQuiver(format!("arrow `{}` has an endpoint out of range", a.label)));
            }
        }
        Ok(Self { vertices, arrows })
    }

    /// Convenience constructor from `(label, source label, target label)` triples.
    pub fn from_labels(vertices: &[&str], arrows: &[(&str, &str, &str)]) -> Result<Self> {
        let vs: Vec<String> = vertices.iter().map(|s| s.to_string()).collect();
        let idx = |l: &str| {
            vs.iter()
                .position(|v| v == l)
                .ok_or_else(|| Error::InvalidQuiver(format!("unknown vertex `{l}`")))
        };
        let arrows = arrows
            .iter()
            .map(|(l, s, t)| {
                Ok(Arrow {
                    label: l.to_string(),
                    source: idx(s)?,
                    target: idx(t)?,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(vs, arrows)
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, i: usize) -> &Arrow {
        &self.arrows[i]
    }

    pub fn arrow_index(&self, label: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.label == label)
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|a| a == label)
    }

    /// Arrows reversed, labels kept.
    pub fn opposite(&self) -> Self {
        Self {
            vertices: self.vertices.clone(),
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    label: a.label.clone(),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
        }
    }

    pub fn is_acyclic(&self) -> bool {
        // Kahn's algorithm
        let n = self.num_vertices();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    stack.push(a.target);
                }
            }
        }
        seen == n
    }

    /// Paths of exactly the given length (the trivial paths for length 0).
    pub fn paths_of_length(&self, len: usize) -> Vec<Path> {
        let mut cur: Vec<Path> = (0..self.num_vertices()).map(Path::trivial).collect();
        for _ in 0..len {
            let mut next = Vec::new();
            for p in &cur {
                for (i, a) in self.arrows.iter().enumerate() {
                    if a.source == p.target {
                        let mut arrows = p.arrows.clone();
                        arrows.push(i);
                        next.push(Path {
                            source: p.source,
                            target: a.target,
                            arrows,
                        });
                    }
                }
            }
            cur = next;
        }
        cur.sort();
        cur
    }
}

/// A path read left to right: first arrow first. Trivial paths have no arrows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Self {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn arrow(q: &Quiver, i: usize) -> Self {
        let a = q.arrow(i);
        Self {
            source: a.source,
            target: a.target,
            arrows: vec![i],
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `other`, if composable.
    pub fn concat(&self, other: &Self) -> Option<Self> {
        if self.target != other.source {
            return None;
        }
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&other.arrows);
        Some(Self {
            source: self.source,
            target: other.target,
            arrows,
        })
    }

    /// The same arrows traversed in the opposite quiver.
    pub fn reversed(&self) -> Self {
        let mut arrows = self.arrows.clone();
        arrows.reverse();
        Self {
            source: self.target,
            target: self.source,
            arrows,
        }
    }

    pub fn display<'a>(&'a self, q: &'a Quiver) -> PathDisplay<'a> {
        PathDisplay { path: self, quiver: q }
    }
}

pub struct PathDisplay<'a> {
    path: &'a Path,
    quiver: &'a Quiver,
}

impl fmt::Display for PathDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_trivial() {
            return write!(f, "e_{}", self.quiver.vertices()[self.path.source]);
        }
        let labels: Vec<&str> = self
            .path
            .arrows
            .iter()
            .map(|&i| self.quiver.arrow(i).label.as_str())
            .collect();
        write!(f, "{}", labels.join("*"))
    }
}

/// A linear combination of parallel paths of length at least two.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Q, Path)>,
}

impl Relation {
    /// Builds from `(coefficient, arrow labels)` terms and checks the invariants.
    pub fn from_labels(q: &Quiver, terms: &[(Q, Vec<&str>)]) -> Result<Self> {
        let mut out = Vec::new();
        for (c, labels) in terms {
            let mut path: Option<Path> = None;
            for l in labels {
                let i = q
                    .arrow_index(l)
                    .ok_or_else(|| Error::InvalidQuiver(format!("unknown arrow `{l}` in relation")))?;
                let a = Path::arrow(q, i);
                path = Some(match path {
                    None => a,
                    Some(p) => p.concat(&a).ok_or_else(|| {
                        Error::InvalidQuiver(format!("arrows do not compose at `{l}`"))
                    })?,
                });
            }
            let p = path.ok_or_else(|| Error::InvalidQuiver("empty path in relation".into()))?;
            out.push((c.clone(), p));
        }
        Self::new(out)
    }

    pub fn new(terms: Vec<(Q, Path)>) -> Result<Self> {
        let terms: Vec<(Q, Path)> = terms.into_iter().filter(|(c, _)| c != &Q::from_integer(0.into())).collect();
        if let Some((_, first)) = terms.first() {
            for (_, p) in &terms {
                if p.source != first.source || p.target != first.target {
                    return Err(Error::Admissibility("relation mixes non-parallel paths".into()));
                }
                if p.len() < 2 {
                    return Err(Error::Admissibility(
                        "relation contains a path of length < 2".into(),
                    ));
                }
            }
        }
        Ok(Self { terms })
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].1.len() == w[1].1.len())
    }

    pub fn reversed(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(c, p)| (c.clone(), p.reversed())).collect(),
        }
    }

    pub fn display<'a>(&'a self, q: &'a Quiver) -> String {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(c, p)| format!("{}*{}", c, p.display(q)))
            .collect();
        parts.join(" + ")
    }
}

pub type RelationSet = Vec<Relation>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_quivers() {
        assert!(Quiver::new(vec![], vec![]).is_err());
        assert!(Quiver::from_labels(&["1", "1"], &[]).is_err());
        assert!(Quiver::from_labels(&["1", "2"], &[("a", "1", "2"), ("a", "2", "1")]).is_err());
        assert!(Quiver::from_labels(&["1"], &[("a", "1", "3")]).is_err());
    }

    #[test]
    fn relation_invariants() {
        let q = Quiver::from_labels(&["1", "2", "3"], &[("a", "1", "2"), ("b", "2", "3"), ("c", "1", "3")]).unwrap();
        let one = Q::from_integer(1.into());
        assert!(Relation::from_labels(&q, &[(one.clone(), vec!["a", "b"])]).is_ok());
        assert!(matches!(
            Relation::from_labels(&q, &[(one.clone(), vec!["a", "b"]), (one.clone(), vec!["c"])]),
            Err(Error::Admissibility(_))
        ));
        assert!(Relation::from_labels(&q, &[(one, vec!["b", "a"])]).is_err());
    }

    #[test]
    fn path_enumeration() {
        let q = Quiver::from_labels(&["1", "2"], &[("a", "1", "2"), ("b", "1", "2")]).unwrap();
        assert_eq!(q.paths_of_length(1).len(), 2);
        assert!(q.paths_of_length(2).is_empty());
        assert!(q.is_acyclic());
        let l = Quiver::from_labels(&["1"], &[("x", "1", "1")]).unwrap();
        assert!(!l.is_acyclic());
        assert_eq!(l.paths_of_length(5).len(), 1);
    }
}
