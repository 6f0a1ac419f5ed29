//! Graph encoding into n-dimensional instances whose feasible sets are
//! exactly the cliques of the graph.

use crate::error::{Error, Result};
use crate::instance::Instance;

/// A simple undirected graph on `[n]`.
#[derive(Debug, Clone)]
pub struct UndirectedGraph {
    n: usize,
    adj: Vec<Vec<u32>>,
}

impl UndirectedGraph {
    pub fn new(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyInstance);
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u == v {
                return Err(Error::SelfLoop { vertex: u });
            }
            for w in [u, v] {
                if w < 1 || w as usize > n {
                    return Err(Error::OutOfRange {
                        location: "edge list".to_string(),
                        value: w as u64,
                        max: n as u64,
                    });
                }
            }
            adj[u as usize - 1].push(v);
            adj[v as usize - 1].push(u);
        }
        for row in &mut adj {
            row.sort_unstable();
            row.dedup();
        }
        Ok(Self { n, adj })
    }

    /// Text format: a `n <count>` header line, then one `u v` pair per
    /// line (1-based). `#` starts a comment.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = idx + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("n ") {
                if n.is_some() {
                    return Err(Error::Parse {
                        line: lineno,
                        msg: "duplicate `n` header".to_string(),
                    });
                }
                n = Some(rest.trim().parse().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("bad vertex count `{rest}`"),
                })?);
                continue;
            }
            if n.is_none() {
                return Err(Error::Parse {
                    line: lineno,
                    msg: "edge before `n <count>` header".to_string(),
                });
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            let [u, v] = parts.as_slice() else {
                return Err(Error::Parse {
                    line: lineno,
                    msg: format!("expected `u v`, got `{line}`"),
                });
            };
            let parse = |s: &str| {
                s.parse::<u32>().map_err(|_| Error::Parse {
                    line: lineno,
                    msg: format!("bad vertex `{s}`"),
                })
            };
            edges.push((parse(u)?, parse(v)?));
        }
        let n = n.ok_or(Error::Parse {
            line: 0,
            msg: "missing `n <count>` header".to_string(),
        })?;
        Self::new(n, &edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        u != v && self.adj[u as usize - 1].binary_search(&v).is_ok()
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize - 1]
    }

    pub fn is_clique(&self, vertices: &[u32]) -> bool {
        for (a, &u) in vertices.iter().enumerate() {
            for &v in &vertices[a + 1..] {
                if !self.has_edge(u, v) {
                    return false;
                }
            }
        }
        true
    }
}

/// Encodes a graph as an instance with one dimension per vertex: dimension
/// `i` is `(i)·a_i·b_i` against `a_i·(i)·b_i`, where `a_i` lists the
/// non-neighbors and `b_i` the neighbors of `i` in ascending order. Feasible
/// sets of the result are exactly the cliques of the graph.
pub fn graph_to_nlfs(g: &UndirectedGraph) -> Instance {
    let n = g.n();
    let mut s = Vec::with_capacity(n);
    let mut t = Vec::with_capacity(n);
    for i in 1..=n as u32 {
        let non_neighbors: Vec<u32> = (1..=n as u32)
            .filter(|&v| v != i && !g.has_edge(i, v))
            .collect();
        let neighbors = g.neighbors(i);

        let mut src = Vec::with_capacity(n);
        src.push(i);
        src.extend(&non_neighbors);
        src.extend(neighbors);

        let mut tgt = Vec::with_capacity(n);
        tgt.extend(&non_neighbors);
        tgt.push(i);
        tgt.extend(neighbors);

        s.push(src);
        t.push(tgt);
    }
    Instance::from_raw(s, t).expect("construction yields valid permutations")
}
