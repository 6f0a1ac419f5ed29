//! Core domain types: permutations, permutation tuples, instances and
//! candidate element sets.
//!
//! An [`Instance`] is a pair of k-tuples of permutations of `[n]`
//! (source and target). A [`FeasibleSet`] is a subset of `[n]`; it is
//! *feasible* when restricting every source/target permutation pair to it
//! yields identical sequences, which is exactly the witness notion behind
//! both the maximization (largest fixed subset) and the dual minimization
//! (fewest deletions) problem.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A permutation of `[n]`, stored with its inverse so position lookups are
/// O(1). Labels are 1-based everywhere; internal indices are 0-based and do
/// not leak through any interface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    labels: Vec<u32>,
    pos: Vec<u32>,
}

impl Permutation {
    /// Checks that `labels` is a permutation of `1..=labels.len()`.
    pub fn new(labels: Vec<u32>) -> Result<Self> {
        Self::new_at(labels, "permutation")
    }

    pub(crate) fn new_at(labels: Vec<u32>, location: &str) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyInstance);
        }
        let mut pos = vec![u32::MAX; n];
        for (i, &v) in labels.iter().enumerate() {
            if v < 1 || v as usize > n {
                return Err(Error::OutOfRange {
                    location: location.to_string(),
                    value: v as u64,
                    max: n as u64,
                });
            }
            if pos[v as usize - 1] != u32::MAX {
                return Err(Error::DuplicateValue {
                    location: location.to_string(),
                    value: v,
                });
            }
            pos[v as usize - 1] = i as u32;
        }
        Ok(Self { labels, pos })
    }

    /// Constructor for label vectors already known to be valid.
    pub(crate) fn from_valid(labels: Vec<u32>) -> Self {
        let mut pos = vec![u32::MAX; labels.len()];
        for (i, &v) in labels.iter().enumerate() {
            debug_assert!(v >= 1 && (v as usize) <= labels.len());
            pos[v as usize - 1] = i as u32;
        }
        debug_assert!(pos.iter().all(|&p| p != u32::MAX));
        Self { labels, pos }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_valid((1..=n as u32).collect())
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    /// 0-based index of label `v`. Panics if `v` is not in `[n]`.
    pub fn position(&self, v: u32) -> usize {
        self.pos[v as usize - 1] as usize
    }

    /// The subsequence consisting of exactly the members of `set`, in this
    /// permutation's order.
    pub fn restrict(&self, set: &FeasibleSet) -> Vec<u32> {
        self.labels
            .iter()
            .copied()
            .filter(|&v| set.contains(v))
            .collect()
    }
}

/// A k-tuple of permutations, all over the same `[n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationTuple {
    dims: Vec<Permutation>,
}

impl PermutationTuple {
    pub fn new(dims: Vec<Permutation>) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::EmptyInstance);
        }
        let n = dims[0].n();
        for (i, p) in dims.iter().enumerate() {
            if p.n() != n {
                return Err(Error::ShapeMismatch {
                    detail: format!("dimension {} has n={}, expected {}", i + 1, p.n(), n),
                });
            }
        }
        Ok(Self { dims })
    }

    pub fn k(&self) -> usize {
        self.dims.len()
    }

    pub fn n(&self) -> usize {
        self.dims[0].n()
    }

    pub fn dims(&self) -> &[Permutation] {
        &self.dims
    }

    /// The r-th dimension, 0-based.
    pub fn dim(&self, r: usize) -> &Permutation {
        &self.dims[r]
    }
}

/// A subset of `[n]`, kept sorted and deduplicated. Ordering on the type is
/// lexicographic on the sorted member sequence, which is the tie-breaking
/// order used by the exhaustive solver.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FeasibleSet {
    members: Vec<u32>,
}

impl FeasibleSet {
    pub fn from_members<I: IntoIterator<Item = u32>>(members: I) -> Self {
        let mut members: Vec<u32> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        Self { members }
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn full(n: usize) -> Self {
        Self {
            members: (1..=n as u32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, v: u32) -> bool {
        self.members.binary_search(&v).is_ok()
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.members.iter().copied()
    }

    /// `[n] \ self`. Errors if any member lies outside `[n]`.
    pub fn complement(&self, n: usize) -> Result<FeasibleSet> {
        self.check_range(n)?;
        let members = (1..=n as u32).filter(|&v| !self.contains(v)).collect();
        Ok(FeasibleSet { members })
    }

    pub(crate) fn check_range(&self, n: usize) -> Result<()> {
        if let Some(&v) = self.members.iter().find(|&&v| v < 1 || v as usize > n) {
            return Err(Error::OutOfRange {
                location: "set".to_string(),
                value: v as u64,
                max: n as u64,
            });
        }
        Ok(())
    }
}

impl From<Vec<u32>> for FeasibleSet {
    fn from(v: Vec<u32>) -> Self {
        Self::from_members(v)
    }
}

impl Serialize for FeasibleSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.members.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for FeasibleSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        Ok(Self::from_members(Vec::<u32>::deserialize(deserializer)?))
    }
}

/// Wire format of an instance:
/// `{"n":6,"k":2,"s":[[4,3,1,6,2,5],...],"t":[[5,3,1,4,6,2],...]}`.
#[derive(Serialize, Deserialize)]
struct RawInstance {
    n: usize,
    k: usize,
    s: Vec<Vec<u32>>,
    t: Vec<Vec<u32>>,
}

/// A pair of k-tuples of permutations over the same `[n]` — the universal
/// input of every solver and generator in this crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    source: PermutationTuple,
    target: PermutationTuple,
}

impl Instance {
    pub fn new(source: PermutationTuple, target: PermutationTuple) -> Result<Self> {
        if source.k() != target.k() {
            return Err(Error::DimensionMismatch {
                source_k: source.k(),
                target_k: target.k(),
            });
        }
        if source.n() != target.n() {
            return Err(Error::ShapeMismatch {
                detail: format!("source n={}, target n={}", source.n(), target.n()),
            });
        }
        Ok(Self { source, target })
    }

    /// Validates two lists of k integer sequences into an instance. Errors
    /// name the offending side and dimension (`s[2]`, `t[1]`, ...).
    pub fn from_raw(s: Vec<Vec<u32>>, t: Vec<Vec<u32>>) -> Result<Self> {
        if s.is_empty() || t.is_empty() {
            return Err(Error::EmptyInstance);
        }
        if s.len() != t.len() {
            return Err(Error::DimensionMismatch {
                source_k: s.len(),
                target_k: t.len(),
            });
        }
        let n = s[0].len();
        if n == 0 {
            return Err(Error::EmptyInstance);
        }
        let build = |side: &str, seqs: Vec<Vec<u32>>| -> Result<PermutationTuple> {
            let mut dims = Vec::with_capacity(seqs.len());
            for (i, labels) in seqs.into_iter().enumerate() {
                let location = format!("{side}[{}]", i + 1);
                if labels.len() != n {
                    return Err(Error::LengthMismatch {
                        location,
                        len: labels.len(),
                        expected: n,
                    });
                }
                dims.push(Permutation::new_at(labels, &location)?);
            }
            PermutationTuple::new(dims)
        };
        let source = build("s", s)?;
        let target = build("t", t)?;
        Instance::new(source, target)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawInstance = serde_json::from_str(text)?;
        let inst = Self::from_raw(raw.s, raw.t)?;
        if raw.n != inst.n() || raw.k != inst.k() {
            return Err(Error::ShapeMismatch {
                detail: format!(
                    "header claims n={}, k={} but data has n={}, k={}",
                    raw.n,
                    raw.k,
                    inst.n(),
                    inst.k()
                ),
            });
        }
        Ok(inst)
    }

    pub fn n(&self) -> usize {
        self.source.n()
    }

    pub fn k(&self) -> usize {
        self.source.k()
    }

    pub fn source(&self) -> &PermutationTuple {
        &self.source
    }

    pub fn target(&self) -> &PermutationTuple {
        &self.target
    }

    /// The instance with source and target exchanged.
    pub fn swapped(&self) -> Instance {
        Instance {
            source: self.target.clone(),
            target: self.source.clone(),
        }
    }

    /// True iff restricting every source/target pair to `set` yields
    /// identical sequences in every dimension. O(k·n) with a bitmap for
    /// membership.
    pub fn is_feasible(&self, set: &FeasibleSet) -> Result<bool> {
        let n = self.n();
        set.check_range(n)?;
        let mut member = vec![false; n + 1];
        for v in set.iter() {
            member[v as usize] = true;
        }
        let mut buf = Vec::with_capacity(set.len());
        for r in 0..self.k() {
            buf.clear();
            buf.extend(
                self.source
                    .dim(r)
                    .labels()
                    .iter()
                    .copied()
                    .filter(|&v| member[v as usize]),
            );
            let mut i = 0;
            for &v in self.target.dim(r).labels() {
                if member[v as usize] {
                    if buf[i] != v {
                        return Ok(false);
                    }
                    i += 1;
                }
            }
        }
        Ok(true)
    }

    /// `[n] \ set`; `set` is feasible for the maximization problem iff the
    /// complement is feasible for the dual deletion problem, and vice versa.
    pub fn dual_complement(&self, set: &FeasibleSet) -> Result<FeasibleSet> {
        set.complement(self.n())
    }
}

impl Serialize for Instance {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let raw = RawInstance {
            n: self.n(),
            k: self.k(),
            s: self.source.dims().iter().map(|p| p.labels().to_vec()).collect(),
            t: self.target.dims().iter().map(|p| p.labels().to_vec()).collect(),
        };
        raw.serialize(serializer)
    }
}
