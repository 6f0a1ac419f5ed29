//! Agreement graphs: the clique correspondence for feasible sets.
//!
//! Two elements are adjacent iff they keep the same relative order in the
//! source and target permutation of every dimension. Feasible sets are
//! exactly the cliques of this graph; the *conflict* graph is its
//! complement, and deletion sets are exactly its vertex covers.

use crate::error::{Error, Result};
use crate::instance::{FeasibleSet, Instance};

/// Above this vertex count the graph switches from a dense bit matrix to
/// sorted adjacency lists. Behavior is identical either way.
const DENSE_LIMIT: usize = 4096;

#[derive(Debug, Clone)]
enum Repr {
    Dense { words_per_row: usize, bits: Vec<u64> },
    Sparse { adj: Vec<Vec<u32>> },
}

/// Undirected graph on `[n]` with no self-loops.
#[derive(Debug, Clone)]
pub struct AgreementGraph {
    n: usize,
    repr: Repr,
    degrees: Vec<u32>,
}

impl AgreementGraph {
    fn empty(n: usize) -> Self {
        let repr = if n <= DENSE_LIMIT {
            let words_per_row = n.div_ceil(64);
            Repr::Dense {
                words_per_row,
                bits: vec![0; words_per_row * n],
            }
        } else {
            Repr::Sparse {
                adj: vec![Vec::new(); n],
            }
        };
        Self {
            n,
            repr,
            degrees: vec![0; n],
        }
    }

    fn insert_edge(&mut self, i: u32, j: u32) {
        debug_assert!(i != j);
        self.degrees[i as usize - 1] += 1;
        self.degrees[j as usize - 1] += 1;
        match &mut self.repr {
            Repr::Dense { words_per_row, bits } => {
                let (a, b) = (i as usize - 1, j as usize - 1);
                bits[a * *words_per_row + b / 64] |= 1 << (b % 64);
                bits[b * *words_per_row + a / 64] |= 1 << (a % 64);
            }
            Repr::Sparse { adj } => {
                adj[i as usize - 1].push(j);
                adj[j as usize - 1].push(i);
            }
        }
    }

    fn finish(&mut self) {
        if let Repr::Sparse { adj } = &mut self.repr {
            for row in adj {
                row.sort_unstable();
            }
        }
    }

    /// Builds the agreement graph of an instance: `{i,j}` is an edge iff
    /// `i` and `j` occur in the same relative order in the source and
    /// target permutation of every dimension. O(k·n²).
    pub fn from_instance(inst: &Instance) -> Self {
        let n = inst.n();
        let k = inst.k();
        let mut g = Self::empty(n);
        for i in 1..=n as u32 {
            for j in i + 1..=n as u32 {
                let agree = (0..k).all(|r| {
                    let s = inst.source().dim(r);
                    let t = inst.target().dim(r);
                    (s.position(i) < s.position(j)) == (t.position(i) < t.position(j))
                });
                if agree {
                    g.insert_edge(i, j);
                }
            }
        }
        g.finish();
        g
    }

    /// Builds a graph from explicit edges (used by tests and the clique
    /// solver's own surface).
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut g = Self::empty(n);
        let mut seen = std::collections::BTreeSet::new();
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
            let key = (u.min(v), u.max(v));
            if seen.insert(key) {
                g.insert_edge(key.0, key.1);
            }
        }
        g.finish();
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for i in 1..=n as u32 {
            for j in i + 1..=n as u32 {
                g.insert_edge(i, j);
            }
        }
        g.finish();
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// 1-based labels; `has_edge(v, v)` is false.
    pub fn has_edge(&self, i: u32, j: u32) -> bool {
        if i == j {
            return false;
        }
        match &self.repr {
            Repr::Dense { words_per_row, bits } => {
                let (a, b) = (i as usize - 1, j as usize - 1);
                bits[a * words_per_row + b / 64] >> (b % 64) & 1 == 1
            }
            Repr::Sparse { adj } => adj[i as usize - 1].binary_search(&j).is_ok(),
        }
    }

    pub fn degree(&self, v: u32) -> usize {
        self.degrees[v as usize - 1] as usize
    }

    /// All edges as `(min, max)` pairs in lexicographic order.
    pub fn edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for i in 1..=self.n as u32 {
            for j in i + 1..=self.n as u32 {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// All non-edges as `(min, max)` pairs in lexicographic order: the
    /// pairs reversed in at least one dimension.
    pub fn conflict_edges(&self) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for i in 1..=self.n as u32 {
            for j in i + 1..=self.n as u32 {
                if !self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn is_clique(&self, set: &FeasibleSet) -> bool {
        let members = set.members();
        for (a, &i) in members.iter().enumerate() {
            for &j in &members[a + 1..] {
                if !self.has_edge(i, j) {
                    return false;
                }
            }
        }
        true
    }
}

impl Instance {
    /// The agreement graph of this instance (see [`AgreementGraph`]).
    pub fn agreement_graph(&self) -> AgreementGraph {
        AgreementGraph::from_instance(self)
    }

    /// Lexicographically ordered conflict pairs: exactly the non-edges of
    /// the agreement graph.
    pub fn conflict_edges(&self) -> Vec<(u32, u32)> {
        self.agreement_graph().conflict_edges()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(s: Vec<Vec<u32>>, t: Vec<Vec<u32>>) -> Instance {
        Instance::from_raw(s, t).unwrap()
    }

    #[test]
    fn identity_pair_is_complete() {
        let g = inst(vec![vec![1, 2, 3, 4]], vec![vec![1, 2, 3, 4]]).agreement_graph();
        assert_eq!(g.edges().len(), 6);
        assert_eq!(g.conflict_edges(), vec![]);
    }

    #[test]
    fn full_reversal_is_empty() {
        let g = inst(vec![vec![1, 2, 3]], vec![vec![3, 2, 1]]).agreement_graph();
        assert_eq!(g.edges(), vec![]);
        assert_eq!(g.conflict_edges(), vec![(1, 2), (1, 3), (2, 3)]);
    }

    #[test]
    fn two_dim_example() {
        let i = inst(
            vec![vec![1, 2, 3], vec![1, 2, 3]],
            vec![vec![2, 1, 3], vec![1, 2, 3]],
        );
        let g = i.agreement_graph();
        assert_eq!(g.edges(), vec![(1, 3), (2, 3)]);
        assert_eq!(i.conflict_edges(), vec![(1, 2)]);
    }

    #[test]
    fn edges_and_conflicts_partition_pairs() {
        let i = inst(
            vec![vec![4, 3, 1, 6, 2, 5], vec![6, 5, 3, 4, 1, 2]],
            vec![vec![5, 3, 1, 4, 6, 2], vec![6, 3, 5, 1, 2, 4]],
        );
        let g = i.agreement_graph();
        let total = g.edges().len() + g.conflict_edges().len();
        assert_eq!(total, 6 * 5 / 2);
        let mut all: Vec<_> = g.edges();
        all.extend(g.conflict_edges());
        all.sort_unstable();
        all.dedup();
        assert_eq!(all.len(), total);
    }

    #[test]
    fn feasible_iff_clique_exhaustive() {
        // Lemma-level correspondence, enumerated over every subset.
        let cases = [
            inst(
                vec![vec![4, 3, 1, 6, 2, 5], vec![6, 5, 3, 4, 1, 2]],
                vec![vec![5, 3, 1, 4, 6, 2], vec![6, 3, 5, 1, 2, 4]],
            ),
            inst(
                vec![vec![2, 1, 3], vec![1, 3, 2]],
                vec![vec![1, 2, 3], vec![3, 1, 2]],
            ),
            inst(
                vec![vec![5, 2, 7, 1, 8, 3, 6, 4]],
                vec![vec![1, 2, 3, 4, 5, 6, 7, 8]],
            ),
        ];
        for i in cases {
            let g = i.agreement_graph();
            let n = i.n();
            for mask in 0u32..1 << n {
                let set = FeasibleSet::from_members(
                    (0..n).filter(|b| mask >> b & 1 == 1).map(|b| b as u32 + 1),
                );
                assert_eq!(i.is_feasible(&set).unwrap(), g.is_clique(&set));
            }
        }
    }

    #[test]
    fn duplicate_dimension_preserves_graph() {
        let a = inst(
            vec![vec![2, 1, 3], vec![1, 3, 2]],
            vec![vec![1, 2, 3], vec![3, 1, 2]],
        );
        let b = inst(
            vec![vec![2, 1, 3], vec![1, 3, 2], vec![1, 3, 2]],
            vec![vec![1, 2, 3], vec![3, 1, 2], vec![3, 1, 2]],
        );
        assert_eq!(a.agreement_graph().edges(), b.agreement_graph().edges());
    }

    #[test]
    fn self_loop_rejected() {
        assert!(matches!(
            AgreementGraph::from_edges(3, &[(1, 1)]),
            Err(Error::SelfLoop { vertex: 1 })
        ));
    }
}
