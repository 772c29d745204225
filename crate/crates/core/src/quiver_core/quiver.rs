use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuiverError {
    #[error("quiver must have at least one vertex")]
    NoVertices,
    #[error("arrow ({tail},{head}) uses a label outside 1..={n}")]
    BadLabel { tail: usize, head: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("arrows contain a directed cycle")]
    CyclicQuiver,
    #[error("vertex subset is empty")]
    EmptySubset,
    #[error("vertex {0} is out of range")]
    VertexOutOfRange(usize),
    #[error("vertex {0} is neither a sink nor a source")]
    NotSinkOrSource(usize),
    #[error("malformed quiver JSON: {0}")]
    Json(String),
}

/// Wire format: `{"vertices": n, "arrows": [[t,h], ...]}` with 1-based labels.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverFile {
    pub vertices: usize,
    pub arrows: Vec<[usize; 2]>,
}

/// A finite acyclic quiver without loops.
///
/// Arrows are stored 0-based as `(tail, head)` in input order; multiplicity is
/// repetition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    n: usize,
    arrows: Vec<(usize, usize)>,
    connected: bool,
}

/// Old-to-new vertex map produced by [`Quiver::admissible_relabel`], 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relabeling(pub Vec<usize>);

impl Relabeling {
    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn apply(&self, old: usize) -> usize {
        self.0[old]
    }
}

impl Quiver {
    /// Validates and builds a quiver from 1-based arrow labels.
    pub fn new(n: usize, arrows: &[(usize, usize)]) -> Result<Self, QuiverError> {
        if n == 0 {
            return Err(QuiverError::NoVertices);
        }
        let mut zero_based = Vec::with_capacity(arrows.len());
        for &(t, h) in arrows {
            if t == 0 || h == 0 || t > n || h > n {
                return Err(QuiverError::BadLabel {
                    tail: t,
                    head: h,
                    n,
                });
            }
            if t == h {
                return Err(QuiverError::Loop(t));
            }
            zero_based.push((t - 1, h - 1));
        }
        Self::from_zero_based(n, zero_based)
    }

    pub(crate) fn from_zero_based(
        n: usize,
        arrows: Vec<(usize, usize)>,
    ) -> Result<Self, QuiverError> {
        let mut q = Quiver {
            n,
            arrows,
            connected: false,
        };
        if q.topological_order().is_none() {
            return Err(QuiverError::CyclicQuiver);
        }
        q.connected = q.components().len() == 1;
        Ok(q)
    }

    pub fn from_json(text: &str) -> Result<Self, QuiverError> {
        let file: QuiverFile =
            serde_json::from_str(text).map_err(|e| QuiverError::Json(e.to_string()))?;
        let arrows: Vec<(usize, usize)> = file.arrows.iter().map(|a| (a[0], a[1])).collect();
        Self::new(file.vertices, &arrows)
    }

    pub fn to_file(&self) -> QuiverFile {
        QuiverFile {
            vertices: self.n,
            arrows: self.arrows.iter().map(|&(t, h)| [t + 1, h + 1]).collect(),
        }
    }

    /// Compact JSON in the wire format.
    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("quiver serialization cannot fail")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// 0-based `(tail, head)` pairs.
    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    /// Number of arrows `i → j` (0-based).
    pub fn arrow_count(&self, i: usize, j: usize) -> usize {
        self.arrows.iter().filter(|&&a| a == (i, j)).count()
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.arrows.iter().all(|&(t, _)| t != v)
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.arrows.iter().all(|&(_, h)| h != v)
    }

    /// Tail > head for every arrow.
    pub fn is_admissible(&self) -> bool {
        self.arrows.iter().all(|&(t, h)| t > h)
    }

    /// A topological order (tails before heads), or `None` on a cycle.
    fn topological_order(&self) -> Option<Vec<usize>> {
        let mut indeg = vec![0usize; self.n];
        for &(_, h) in &self.arrows {
            indeg[h] += 1;
        }
        let mut ready: Vec<usize> = (0..self.n).rev().filter(|&v| indeg[v] == 0).collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(v) = ready.pop() {
            order.push(v);
            // Keep smallest labels first among ready vertices for determinism.
            let mut fresh = Vec::new();
            for &(t, h) in &self.arrows {
                if t == v {
                    indeg[h] -= 1;
                    if indeg[h] == 0 {
                        fresh.push(h);
                    }
                }
            }
            ready.extend(fresh);
            ready.sort_unstable_by(|a, b| b.cmp(a));
            ready.dedup();
        }
        (order.len() == self.n).then_some(order)
    }

    /// Vertices ordered so that every arrow points from a later to an earlier
    /// entry: sinks first. Label order of an admissible quiver has this shape.
    pub fn sinks_first_order(&self) -> Vec<usize> {
        if self.is_admissible() {
            return (0..self.n).collect();
        }
        let mut order = self.topological_order().expect("quiver is acyclic");
        order.reverse();
        order
    }

    /// Relabels so that `tail > head` for every arrow. The returned map sends
    /// old labels to new ones; it is the identity on admissible input.
    pub fn admissible_relabel(&self) -> (Quiver, Relabeling) {
        let order = self.sinks_first_order();
        let mut map = vec![0; self.n];
        for (new, &old) in order.iter().enumerate() {
            map[old] = new;
        }
        let arrows = self.arrows.iter().map(|&(t, h)| (map[t], map[h])).collect();
        let q = Quiver {
            n: self.n,
            arrows,
            connected: self.connected,
        };
        (q, Relabeling(map))
    }

    /// Connected components of the underlying graph, each sorted.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut stack = vec![start];
            let mut members = Vec::new();
            comp[start] = id;
            while let Some(v) = stack.pop() {
                members.push(v);
                for &(t, h) in &self.arrows {
                    let w = if t == v {
                        h
                    } else if h == v {
                        t
                    } else {
                        continue;
                    };
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Whether the vertex set (0-based) spans a connected full subquiver.
    pub fn is_connected_subset(&self, vertices: &[usize]) -> bool {
        if vertices.is_empty() {
            return false;
        }
        let mut seen = vec![vertices[0]];
        let mut stack = vec![vertices[0]];
        while let Some(v) = stack.pop() {
            for &(t, h) in &self.arrows {
                let w = if t == v {
                    h
                } else if h == v {
                    t
                } else {
                    continue;
                };
                if vertices.contains(&w) && !seen.contains(&w) {
                    seen.push(w);
                    stack.push(w);
                }
            }
        }
        seen.len() == vertices.len()
    }

    /// The full subquiver on a vertex subset (0-based), relabeled in
    /// increasing order of the original labels.
    pub fn full_subquiver(&self, subset: &[usize]) -> Result<Quiver, QuiverError> {
        if subset.is_empty() {
            return Err(QuiverError::EmptySubset);
        }
        let mut s = subset.to_vec();
        s.sort_unstable();
        s.dedup();
        if let Some(&v) = s.iter().find(|&&v| v >= self.n) {
            return Err(QuiverError::VertexOutOfRange(v));
        }
        let pos = |v: usize| s.iter().position(|&x| x == v);
        let arrows = self
            .arrows
            .iter()
            .filter_map(|&(t, h)| Some((pos(t)?, pos(h)?)))
            .collect();
        Self::from_zero_based(s.len(), arrows)
    }

    /// Reverses every arrow at a sink or source `v` (0-based).
    pub fn sink_source_reflection(&self, v: usize) -> Result<Quiver, QuiverError> {
        if v >= self.n {
            return Err(QuiverError::VertexOutOfRange(v));
        }
        if !self.is_sink(v) && !self.is_source(v) {
            return Err(QuiverError::NotSinkOrSource(v + 1));
        }
        let arrows = self
            .arrows
            .iter()
            .map(|&(t, h)| if t == v || h == v { (h, t) } else { (t, h) })
            .collect();
        Self::from_zero_based(self.n, arrows)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_kronecker() {
        let q = Quiver::new(2, &[(1, 2), (1, 2)]).unwrap();
        assert!(q.is_connected());
        assert_eq!(q.arrow_count(0, 1), 2);
    }

    #[test]
    fn single_vertex() {
        let q = Quiver::new(1, &[]).unwrap();
        assert_eq!(q.vertex_count(), 1);
        assert!(q.is_connected());
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            Quiver::new(2, &[(1, 2), (2, 1)]),
            Err(QuiverError::CyclicQuiver)
        );
        assert_eq!(Quiver::new(2, &[(1, 1)]), Err(QuiverError::Loop(1)));
        assert!(matches!(
            Quiver::new(2, &[(1, 3)]),
            Err(QuiverError::BadLabel { .. })
        ));
    }

    #[test]
    fn relabel_single_arrow() {
        let q = Quiver::new(2, &[(1, 2)]).unwrap();
        let (r, perm) = q.admissible_relabel();
        assert_eq!(r.arrows(), &[(1, 0)]);
        assert_eq!(perm, Relabeling(vec![1, 0]));
    }

    #[test]
    fn relabel_identity_when_admissible() {
        let q = Quiver::new(3, &[(3, 2), (2, 1)]).unwrap();
        let (r, perm) = q.admissible_relabel();
        assert!(perm.is_identity());
        assert_eq!(r, q);
    }

    #[test]
    fn relabel_path() {
        let q = Quiver::new(3, &[(1, 2), (2, 3)]).unwrap();
        let (r, _) = q.admissible_relabel();
        assert!(r.is_admissible());
        assert_eq!(r.arrows().len(), 2);
    }

    #[test]
    fn subquivers() {
        let k = Quiver::new(2, &[(1, 2), (1, 2)]).unwrap();
        let s = k.full_subquiver(&[0]).unwrap();
        assert_eq!((s.vertex_count(), s.arrows().len()), (1, 0));
        let p = Quiver::new(3, &[(1, 2), (2, 3)]).unwrap();
        let s = p.full_subquiver(&[0, 2]).unwrap();
        assert_eq!((s.vertex_count(), s.arrows().len()), (2, 0));
        assert!(!s.is_connected());
        assert_eq!(p.full_subquiver(&[]), Err(QuiverError::EmptySubset));
    }

    #[test]
    fn reflections_at_sinks_and_sources() {
        let k = Quiver::new(2, &[(1, 2), (1, 2)]).unwrap();
        let r = k.sink_source_reflection(1).unwrap();
        assert_eq!(r.arrows(), &[(1, 0), (1, 0)]);
        let p = Quiver::new(3, &[(1, 2), (2, 3)]).unwrap();
        assert_eq!(
            p.sink_source_reflection(1),
            Err(QuiverError::NotSinkOrSource(2))
        );
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{"vertices":2,"arrows":[[1,2],[1,2]]}"#;
        let q = Quiver::from_json(text).unwrap();
        assert_eq!(q.to_json(), text);
    }
}
