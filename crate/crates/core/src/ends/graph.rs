use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use serde::Deserialize;

use crate::error::{Error, Result};

/// Vertices are integer pairs, ordered lexicographically.
pub type Vertex = (i64, i64);

type Neighbors = Arc<dyn Fn(Vertex) -> Vec<Vertex> + Send + Sync>;

/// A locally finite graph given by a neighbour oracle and a basepoint.
#[derive(Clone)]
pub struct LazyGraph {
    name: String,
    basepoint: Vertex,
    neighbors: Neighbors,
    exact_ends: Option<usize>,
    names: Option<Arc<Vec<String>>>,
}

impl fmt::Debug for LazyGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LazyGraph")
            .field("name", &self.name)
            .field("basepoint", &self.basepoint)
            .field("exact_ends", &self.exact_ends)
            .finish()
    }
}

impl LazyGraph {
    pub fn new(
        name: impl Into<String>,
        basepoint: Vertex,
        neighbors: impl Fn(Vertex) -> Vec<Vertex> + Send + Sync + 'static,
        exact_ends: Option<usize>,
    ) -> LazyGraph {
        LazyGraph { name: name.into(), basepoint, neighbors: Arc::new(neighbors), exact_ends, names: None }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn basepoint(&self) -> Vertex {
        self.basepoint
    }

    pub fn exact_ends(&self) -> Option<usize> {
        self.exact_ends
    }

    /// Sorted, duplicate-free neighbour list.
    pub fn neighbors(&self, v: Vertex) -> Vec<Vertex> {
        let mut ns = (self.neighbors)(v);
        ns.sort_unstable();
        ns.dedup();
        ns
    }

    pub fn label(&self, v: Vertex) -> String {
        match &self.names {
            Some(names) if v.1 == 0 && v.0 >= 0 && (v.0 as usize) < names.len() => names[v.0 as usize].clone(),
            _ => format!("({},{})", v.0, v.1),
        }
    }

    /// The integers, basepoint 0.
    pub fn line() -> LazyGraph {
        LazyGraph::new("line", (0, 0), |(v, _)| vec![(v - 1, 0), (v + 1, 0)], Some(2))
    }

    /// The square grid `Z²`.
    pub fn grid2() -> LazyGraph {
        LazyGraph::new("grid2", (0, 0), |(x, y)| vec![(x - 1, y), (x + 1, y), (x, y - 1), (x, y + 1)], Some(1))
    }

    /// The rooted binary tree in heap numbering: root 1, children `2v, 2v+1`.
    pub fn tree2() -> LazyGraph {
        LazyGraph::new(
            "tree2",
            (1, 0),
            |(v, _)| {
                let mut ns = Vec::with_capacity(3);
                if v > 1 {
                    ns.push((v / 2, 0));
                }
                if v < 1 << 61 {
                    ns.push((2 * v, 0));
                    ns.push((2 * v + 1, 0));
                }
                ns
            },
            None,
        )
    }

    /// `k` rays glued at the centre `(0,0)`; ray `r` has vertices `(r, d)`,
    /// `d >= 1`.
    pub fn star(k: usize) -> LazyGraph {
        let k = k as i64;
        LazyGraph::new(
            format!("star:{k}"),
            (0, 0),
            move |(r, d)| {
                if (r, d) == (0, 0) {
                    (1..=k).map(|r| (r, 1)).collect()
                } else if d == 1 {
                    vec![(0, 0), (r, 2)]
                } else {
                    vec![(r, d - 1), (r, d + 1)]
                }
            },
            Some(k as usize),
        )
    }

    /// Two parallel lines joined by rungs.
    pub fn ladder() -> LazyGraph {
        LazyGraph::new("ladder", (0, 0), |(x, s)| vec![(x - 1, s), (x + 1, s), (x, 1 - s)], Some(2))
    }

    /// A finite graph; vertex `i` becomes `(i, 0)` and the first vertex is
    /// the basepoint.
    pub fn finite(name: impl Into<String>, vertices: Vec<String>, edges: &[(String, String)]) -> Result<LazyGraph> {
        if vertices.is_empty() {
            return Err(Error::Graph("a graph needs at least one vertex".into()));
        }
        let mut index = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i as i64).is_some() {
                return Err(Error::DuplicateLabel(v.clone()));
            }
        }
        let mut adj: Vec<BTreeSet<i64>> = vec![BTreeSet::new(); vertices.len()];
        for (u, v) in edges {
            let a = *index.get(u).ok_or_else(|| Error::UnknownPoint(u.clone()))?;
            let b = *index.get(v).ok_or_else(|| Error::UnknownPoint(v.clone()))?;
            if a != b {
                adj[a as usize].insert(b);
                adj[b as usize].insert(a);
            }
        }
        let adj = Arc::new(adj);
        let mut g = LazyGraph::new(
            name,
            (0, 0),
            move |(v, s)| {
                if s != 0 || v < 0 || v as usize >= adj.len() {
                    return vec![];
                }
                adj[v as usize].iter().map(|&u| (u, 0)).collect()
            },
            None,
        );
        g.names = Some(Arc::new(vertices));
        Ok(g)
    }

    /// Parse `{"vertices": [...], "edges": [[u, v], ...]}`. Vertices may be
    /// strings or numbers.
    pub fn finite_from_json(name: impl Into<String>, text: &str) -> Result<LazyGraph> {
        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Doc {
            vertices: Vec<serde_json::Value>,
            edges: Vec<(serde_json::Value, serde_json::Value)>,
        }
        let doc: Doc = serde_json::from_str(text).map_err(|e| Error::Format(format!("line {} column {}: {e}", e.line(), e.column())))?;
        let key = |v: &serde_json::Value| -> Result<String> {
            match v {
                serde_json::Value::String(s) => Ok(s.clone()),
                serde_json::Value::Number(n) => Ok(n.to_string()),
                other => Err(Error::Format(format!("vertex {other} is neither a string nor a number"))),
            }
        };
        let vertices = doc.vertices.iter().map(key).collect::<Result<Vec<_>>>()?;
        let edges = doc.edges.iter().map(|(u, v)| Ok((key(u)?, key(v)?))).collect::<Result<Vec<_>>>()?;
        LazyGraph::finite(name, vertices, &edges)
    }

    /// `line`, `grid2`, `tree2`, `star:K`, `ladder` or `file:PATH`.
    pub fn from_spec(spec: &str) -> Result<LazyGraph> {
        match spec {
            "line" => Ok(LazyGraph::line()),
            "grid2" => Ok(LazyGraph::grid2()),
            "tree2" => Ok(LazyGraph::tree2()),
            "ladder" => Ok(LazyGraph::ladder()),
            _ => {
                if let Some(k) = spec.strip_prefix("star:") {
                    let k: usize = k.parse().map_err(|_| Error::Graph(format!("bad ray count in {spec:?}")))?;
                    if k == 0 {
                        return Err(Error::Graph("a star needs at least one ray".into()));
                    }
                    Ok(LazyGraph::star(k))
                } else if let Some(path) = spec.strip_prefix("file:") {
                    let text = std::fs::read_to_string(path).map_err(|e| Error::Format(format!("cannot read {path:?}: {e}")))?;
                    LazyGraph::finite_from_json(spec, &text)
                } else {
                    Err(Error::Graph(format!("unknown graph {spec:?}")))
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_are_symmetric_near_the_basepoint() {
        for g in [LazyGraph::line(), LazyGraph::grid2(), LazyGraph::tree2(), LazyGraph::star(3), LazyGraph::ladder()] {
            let mut frontier = vec![g.basepoint()];
            let mut seen = BTreeSet::new();
            for _ in 0..4 {
                let mut next = vec![];
                for v in frontier {
                    for u in g.neighbors(v) {
                        assert!(g.neighbors(u).contains(&v), "{}: {u:?} does not see {v:?}", g.name());
                        if seen.insert(u) {
                            next.push(u);
                        }
                    }
                }
                frontier = next;
            }
        }
    }

    #[test]
    fn specs() {
        assert_eq!(LazyGraph::from_spec("star:4").unwrap().exact_ends(), Some(4));
        assert!(LazyGraph::from_spec("star:0").is_err());
        assert!(LazyGraph::from_spec("torus").is_err());
        let g = LazyGraph::finite_from_json("tri", r#"{"vertices": ["a", "b", 3], "edges": [["a", "b"], ["b", 3]]}"#).unwrap();
        assert_eq!(g.neighbors((1, 0)), vec![(0, 0), (2, 0)]);
        assert_eq!(g.label((2, 0)), "3");
        assert!(LazyGraph::finite_from_json("x", r#"{"vertices": ["a"], "edges": [["a", "z"]]}"#).is_err());
        assert!(matches!(LazyGraph::finite_from_json("x", "{"), Err(Error::Format(_))));
    }
}
