//! Insert-move semantics: neighborhood test, move application and shortest
//! path reconstruction.
//!
//! An insert move removes one element and reinserts it at a chosen position
//! in every permutation of the tuple. A tuple counts as its own neighbor
//! (per-dimension no-op placement is allowed); without that relaxation the
//! metric would not be realizable as a move count when an element is
//! already correct in one dimension but not another.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::instance::{FeasibleSet, Instance, Permutation, PermutationTuple};

/// One insert move: the element and its 1-based insertion position per
/// dimension (position within the permutation after removing the element).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InsertMove {
    #[serde(rename = "v")]
    pub element: u32,
    #[serde(rename = "pos")]
    pub targets: Vec<usize>,
}

/// A sequence of insert moves transforming `start` into `end`.
#[derive(Debug, Clone)]
pub struct MovePath {
    pub start: PermutationTuple,
    pub moves: Vec<InsertMove>,
    pub end: PermutationTuple,
}

impl MovePath {
    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }
}

/// Why a path failed verification (or `Valid`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PathVerdict {
    Valid,
    ShapeMismatch,
    StartMismatch,
    EndMismatch,
    BadMove { step: usize },
}

impl std::fmt::Display for PathVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            PathVerdict::Valid => write!(f, "valid"),
            PathVerdict::ShapeMismatch => write!(f, "start/end shape differs from instance"),
            PathVerdict::StartMismatch => write!(f, "path does not start at the source tuple"),
            PathVerdict::EndMismatch => write!(f, "moves do not reach the target tuple"),
            PathVerdict::BadMove { step } => write!(f, "move {step} is not applicable"),
        }
    }
}

/// Removes `mv.element` from every dimension and reinserts it at the
/// per-dimension target position.
pub fn apply_insert_move(gamma: &PermutationTuple, mv: &InsertMove) -> Result<PermutationTuple> {
    let n = gamma.n();
    let k = gamma.k();
    if mv.targets.len() != k {
        return Err(Error::ShapeMismatch {
            detail: format!("move has {} positions, tuple has k={}", mv.targets.len(), k),
        });
    }
    if mv.element < 1 || mv.element as usize > n {
        return Err(Error::OutOfRange {
            location: "move element".to_string(),
            value: mv.element as u64,
            max: n as u64,
        });
    }
    let mut dims = Vec::with_capacity(k);
    for (r, &pos) in mv.targets.iter().enumerate() {
        if pos < 1 || pos > n {
            return Err(Error::BadPosition {
                dim: r + 1,
                pos,
                max: n,
            });
        }
        let mut labels: Vec<u32> = gamma
            .dim(r)
            .labels()
            .iter()
            .copied()
            .filter(|&v| v != mv.element)
            .collect();
        labels.insert(pos - 1, mv.element);
        dims.push(Permutation::from_valid(labels));
    }
    PermutationTuple::new(dims)
}

/// True iff `b` is reachable from `a` by a single insert move: some element
/// `v` exists whose deletion from every dimension of both tuples leaves
/// identical tuples. Includes `a == b`.
pub fn is_neighbor(a: &PermutationTuple, b: &PermutationTuple) -> Result<bool> {
    if a.n() != b.n() || a.k() != b.k() {
        return Err(Error::ShapeMismatch {
            detail: format!(
                "tuples have shapes (n={},k={}) and (n={},k={})",
                a.n(),
                a.k(),
                b.n(),
                b.k()
            ),
        });
    }
    'element: for v in 1..=a.n() as u32 {
        for r in 0..a.k() {
            let mut rhs = b.dim(r).labels().iter().copied().filter(|&x| x != v);
            for &x in a.dim(r).labels() {
                if x == v {
                    continue;
                }
                if rhs.next() != Some(x) {
                    continue 'element;
                }
            }
        }
        return Ok(true);
    }
    Ok(false)
}

/// Builds a shortest move path from the source to the target, given a
/// feasible fixed set: the unfixed elements are inserted one by one, in
/// ascending order of their position in the first target permutation, each
/// at the smallest position whose order relative to the already-settled
/// elements matches the target.
pub fn reconstruct_path(inst: &Instance, fixed: &FeasibleSet) -> Result<MovePath> {
    if !inst.is_feasible(fixed)? {
        return Err(Error::NotFeasible {
            context: "reconstruct_path requires a feasible fixed set",
        });
    }
    let n = inst.n();
    let k = inst.k();
    let mut settled = vec![false; n + 1];
    for v in fixed.iter() {
        settled[v as usize] = true;
    }
    let order: Vec<u32> = inst
        .target()
        .dim(0)
        .labels()
        .iter()
        .copied()
        .filter(|&v| !settled[v as usize])
        .collect();

    let mut cur = inst.source().clone();
    let mut moves = Vec::with_capacity(order.len());
    for v in order {
        let mut targets = Vec::with_capacity(k);
        for r in 0..k {
            let tpos_v = inst.target().dim(r).position(v);
            // smallest insert slot after every settled element that the
            // target places before v
            let mut slot = 1;
            let mut idx = 0;
            for &x in cur.dim(r).labels() {
                if x == v {
                    continue;
                }
                idx += 1;
                if settled[x as usize] && inst.target().dim(r).position(x) < tpos_v {
                    slot = idx + 1;
                }
            }
            targets.push(slot);
        }
        let mv = InsertMove {
            element: v,
            targets,
        };
        cur = apply_insert_move(&cur, &mv).expect("constructed move is applicable");
        settled[v as usize] = true;
        moves.push(mv);
    }
    debug_assert_eq!(&cur, inst.target());
    Ok(MovePath {
        start: inst.source().clone(),
        moves,
        end: cur,
    })
}

/// Full verification with a diagnostic verdict.
pub fn check_path(inst: &Instance, path: &MovePath) -> PathVerdict {
    if path.start.n() != inst.n()
        || path.start.k() != inst.k()
        || path.end.n() != inst.n()
        || path.end.k() != inst.k()
    {
        return PathVerdict::ShapeMismatch;
    }
    if &path.start != inst.source() {
        return PathVerdict::StartMismatch;
    }
    let mut cur = path.start.clone();
    for (step, mv) in path.moves.iter().enumerate() {
        match apply_insert_move(&cur, mv) {
            Ok(next) => cur = next,
            Err(_) => return PathVerdict::BadMove { step },
        }
    }
    if &cur != path.end || &cur != inst.target() {
        return PathVerdict::EndMismatch;
    }
    PathVerdict::Valid
}

/// True iff the path starts at the source, ends at the target, and every
/// recorded move applies.
pub fn verify_path(inst: &Instance, path: &MovePath) -> bool {
    check_path(inst, path) == PathVerdict::Valid
}
