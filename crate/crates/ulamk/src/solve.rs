//! Exact, approximate and parameterized solvers.
//!
//! * [`brute_force_opt`] — exhaustive subset search with hereditary pruning.
//!   It checks feasibility by direct restriction only and never touches the
//!   agreement graph, so it serves as the independent oracle for everything
//!   else.
//! * [`solve_lfs_exact`] — reduction to maximum clique on the agreement
//!   graph, solved by branch and bound with a greedy-coloring bound.
//! * [`solve_lfs_k1`] — the k=1 case via longest increasing subsequence,
//!   patience-sorting style, O(n log n).
//! * [`approx_u`] — 2-approximation of the deletion problem via a maximal
//!   matching on the conflict edges.
//! * [`decide_ud_fpt`] — bounded search tree deciding whether `l` deletions
//!   suffice, with at most `2^l` leaves.

use crate::error::{Error, Result};
use crate::graph::AgreementGraph;
use crate::instance::{FeasibleSet, Instance};

/// Exhaustive enumeration guard: `brute_force_opt` and
/// `enumerate_feasible` refuse instances above this size.
pub const BRUTE_FORCE_LIMIT: usize = 24;

/// A maximization witness together with solver bookkeeping.
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub witness: FeasibleSet,
    pub size: usize,
    pub optimal: bool,
    /// Search-tree nodes expanded; 0 for closed-form paths.
    pub node_count: u64,
}

/// Distance plus both witnesses: the fixed set and its complement, the
/// deleted set whose size is the distance.
#[derive(Debug, Clone)]
pub struct UlamResult {
    pub distance: usize,
    pub removed: FeasibleSet,
    pub fixed: FeasibleSet,
}

/// Outcome of the parameterized decision procedure.
#[derive(Debug, Clone, Copy)]
pub struct FptDecision {
    pub answer: bool,
    pub node_count: u64,
}

/// Exhaustive optimum by depth-first subset enumeration in lexicographic
/// order, pruning branches below infeasible sets (feasibility is
/// hereditary). Among all maximum feasible sets, returns the
/// lexicographically smallest.
pub fn brute_force_opt(inst: &Instance) -> Result<SolveResult> {
    let n = inst.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            n,
            max: BRUTE_FORCE_LIMIT,
        });
    }
    let mut best: Vec<u32> = Vec::new();
    let mut current: Vec<u32> = Vec::new();
    let mut nodes = 0u64;
    dfs_opt(inst, 0, &mut current, &mut best, &mut nodes);
    Ok(SolveResult {
        size: best.len(),
        witness: FeasibleSet::from_members(best),
        optimal: true,
        node_count: nodes,
    })
}

fn dfs_opt(inst: &Instance, last: u32, current: &mut Vec<u32>, best: &mut Vec<u32>, nodes: &mut u64) {
    let n = inst.n() as u32;
    for v in last + 1..=n {
        // everything beyond v cannot push this branch past the incumbent
        if current.len() + (n - v + 1) as usize <= best.len() {
            return;
        }
        current.push(v);
        *nodes += 1;
        let feasible = inst
            .is_feasible(&FeasibleSet::from_members(current.iter().copied()))
            .expect("members stay within [n]");
        if feasible {
            if current.len() > best.len() {
                *best = current.clone();
            }
            dfs_opt(inst, v, current, best, nodes);
        }
        current.pop();
    }
}

/// Every feasible set of the instance (including the empty set), in
/// lexicographic order. Same hereditary-pruning walk as the oracle; guarded
/// by [`BRUTE_FORCE_LIMIT`].
pub fn enumerate_feasible(inst: &Instance) -> Result<Vec<FeasibleSet>> {
    let n = inst.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::TooLarge {
            n,
            max: BRUTE_FORCE_LIMIT,
        });
    }
    let mut out = vec![FeasibleSet::empty()];
    let mut current = Vec::new();
    dfs_enum(inst, 0, &mut current, &mut out);
    Ok(out)
}

fn dfs_enum(inst: &Instance, last: u32, current: &mut Vec<u32>, out: &mut Vec<FeasibleSet>) {
    for v in last + 1..=inst.n() as u32 {
        current.push(v);
        let set = FeasibleSet::from_members(current.iter().copied());
        if inst.is_feasible(&set).expect("members stay within [n]") {
            out.push(set);
            dfs_enum(inst, v, current, out);
        }
        current.pop();
    }
}

/// Maximum clique by branch and bound. Vertices are explored in ascending
/// label order with a greedy-coloring upper bound (coloring order:
/// descending degree, ties toward smaller labels), so the returned clique
/// is deterministic: the lexicographically smallest maximum clique.
pub fn max_clique(g: &AgreementGraph) -> Vec<u32> {
    max_clique_counted(g).0
}

pub(crate) fn max_clique_counted(g: &AgreementGraph) -> (Vec<u32>, u64) {
    let n = g.n();
    let cands: Vec<u32> = (1..=n as u32).collect();
    let mut best = Vec::new();
    let mut current = Vec::new();
    let mut nodes = 0u64;
    expand_clique(g, &cands, &mut current, &mut best, &mut nodes);
    (best, nodes)
}

fn expand_clique(
    g: &AgreementGraph,
    cands: &[u32],
    current: &mut Vec<u32>,
    best: &mut Vec<u32>,
    nodes: &mut u64,
) {
    *nodes += 1;
    if current.len() > best.len() {
        *best = current.clone();
    }
    if cands.is_empty() {
        return;
    }
    if current.len() + greedy_color_bound(g, cands) <= best.len() {
        return;
    }
    for (idx, &v) in cands.iter().enumerate() {
        if current.len() + (cands.len() - idx) <= best.len() {
            return;
        }
        let rest: Vec<u32> = cands[idx + 1..]
            .iter()
            .copied()
            .filter(|&u| g.has_edge(u, v))
            .collect();
        current.push(v);
        expand_clique(g, &rest, current, best, nodes);
        current.pop();
    }
}

/// Number of colors a greedy coloring needs on the subgraph induced by
/// `cands`; an upper bound on its clique number.
fn greedy_color_bound(g: &AgreementGraph, cands: &[u32]) -> usize {
    let mut order: Vec<u32> = cands.to_vec();
    order.sort_by(|&a, &b| g.degree(b).cmp(&g.degree(a)).then(a.cmp(&b)));
    let mut colors: Vec<(u32, usize)> = Vec::with_capacity(order.len());
    let mut max_color = 0;
    for &v in &order {
        let mut used = vec![false; max_color + 1];
        for &(u, c) in &colors {
            if g.has_edge(u, v) {
                used[c] = true;
            }
        }
        let c = (0..).find(|&c| c >= used.len() || !used[c]).unwrap();
        max_color = max_color.max(c + 1);
        colors.push((v, c));
    }
    max_color
}

/// Exact maximization through the clique correspondence: a maximum clique
/// of the agreement graph is a maximum feasible set.
pub fn solve_lfs_exact(inst: &Instance) -> SolveResult {
    let g = inst.agreement_graph();
    let (clique, nodes) = max_clique_counted(&g);
    SolveResult {
        size: clique.len(),
        witness: FeasibleSet::from_members(clique),
        optimal: true,
        node_count: nodes,
    }
}

/// k=1 special case: longest common subsequence of two permutations via
/// longest increasing subsequence of the relabeled sequence, patience
/// sorting with O(n log n).
pub fn solve_lfs_k1(inst: &Instance) -> Result<SolveResult> {
    if inst.k() != 1 {
        return Err(Error::WrongDimension { k: inst.k() });
    }
    let s = inst.source().dim(0);
    let t = inst.target().dim(0);
    let n = inst.n();
    // position in target of each source element, in source order
    let seq: Vec<usize> = s.labels().iter().map(|&v| t.position(v)).collect();

    let mut pile_tops: Vec<usize> = Vec::new(); // index into seq of each pile's top
    let mut pred: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let p = pile_tops.partition_point(|&top| seq[top] < seq[i]);
        if p > 0 {
            pred[i] = Some(pile_tops[p - 1]);
        }
        if p == pile_tops.len() {
            pile_tops.push(i);
        } else {
            pile_tops[p] = i;
        }
    }
    let mut chain = Vec::with_capacity(pile_tops.len());
    let mut cur = pile_tops.last().copied();
    while let Some(i) = cur {
        chain.push(s.labels()[i]);
        cur = pred[i];
    }
    Ok(SolveResult {
        size: chain.len(),
        witness: FeasibleSet::from_members(chain),
        optimal: true,
        node_count: 0,
    })
}

/// 2-approximation for the deletion problem: take a maximal matching of the
/// conflict edges (scanned in lexicographic order) and return the union of
/// matched endpoints. The result is a deletion-feasible set `D` with
/// `opt ≤ |D| ≤ 2·opt`.
pub fn approx_u(inst: &Instance) -> SolveResult {
    let n = inst.n();
    let conflicts = inst.conflict_edges();
    let mut matched = vec![false; n + 1];
    let mut cover = Vec::new();
    for (u, v) in conflicts {
        if !matched[u as usize] && !matched[v as usize] {
            matched[u as usize] = true;
            matched[v as usize] = true;
            cover.push(u);
            cover.push(v);
        }
    }
    let witness = FeasibleSet::from_members(cover);
    SolveResult {
        optimal: witness.is_empty(),
        size: witness.len(),
        witness,
        node_count: 0,
    }
}

/// Decides whether some deletion-feasible set of size ≤ `l` exists, by a
/// bounded search tree: pick the lexicographically first surviving conflict
/// pair, branch on deleting either endpoint, decrement the budget. Depth is
/// at most `l`, so at most `2^{l+1}` nodes are expanded.
///
/// Exact-size and at-most semantics coincide here because deletion-feasible
/// sets are upward closed: a feasible set of size exactly `l` exists iff the
/// minimum is ≤ `l` (pad with arbitrary extra elements).
pub fn decide_ud_fpt(inst: &Instance, l: usize) -> Result<FptDecision> {
    let n = inst.n();
    if l > n {
        return Err(Error::OutOfRange {
            location: "parameter l".to_string(),
            value: l as u64,
            max: n as u64,
        });
    }
    let conflicts = inst.conflict_edges();
    let mut deleted = vec![false; n + 1];
    let mut nodes = 0u64;
    let answer = branch_vc(&conflicts, &mut deleted, l, &mut nodes);
    Ok(FptDecision {
        answer,
        node_count: nodes,
    })
}

fn branch_vc(conflicts: &[(u32, u32)], deleted: &mut [bool], budget: usize, nodes: &mut u64) -> bool {
    *nodes += 1;
    let open = conflicts
        .iter()
        .find(|&&(u, v)| !deleted[u as usize] && !deleted[v as usize]);
    let Some(&(u, v)) = open else {
        return true;
    };
    if budget == 0 {
        return false;
    }
    for pick in [u, v] {
        deleted[pick as usize] = true;
        let ok = branch_vc(conflicts, deleted, budget - 1, nodes);
        deleted[pick as usize] = false;
        if ok {
            return true;
        }
    }
    false
}

/// The metric value: distance is `n` minus the size of a maximum feasible
/// set, realized by removing the complement.
pub fn ulam_distance(inst: &Instance) -> UlamResult {
    let exact = solve_lfs_exact(inst);
    let removed = inst
        .dual_complement(&exact.witness)
        .expect("witness stays within [n]");
    UlamResult {
        distance: inst.n() - exact.size,
        removed,
        fixed: exact.witness,
    }
}
