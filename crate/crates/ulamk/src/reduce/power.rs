//! Recursive power lifting of square instances (k == n == ν) and the
//! extraction procedure recovering base solutions from lifted ones.
//!
//! Level c replaces every entry k of each base permutation by a shifted
//! copy of the corresponding level-(c-1) permutation, multiplying optimum
//! sizes: a base optimum of m yields a lifted optimum of m^c. Extraction
//! walks back down, either reading the set of blocks hit or recursing into
//! the most-hit block, and always returns a base-feasible set of size at
//! least |J|^{1/c}.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::instance::{FeasibleSet, Instance, Permutation, PermutationTuple};

/// Largest element count a lifted instance may have.
pub const POWER_CAP: u64 = 1_000_000;

/// A base instance together with its tower of lifted instances
/// T¹ = base, T², …, T^level.
#[derive(Debug, Clone)]
pub struct PowerInstance {
    tower: Vec<Instance>,
}

impl PowerInstance {
    pub fn base(&self) -> &Instance {
        &self.tower[0]
    }

    pub fn lifted(&self) -> &Instance {
        self.tower.last().expect("tower is never empty")
    }

    pub fn level(&self) -> usize {
        self.tower.len()
    }

    /// T^c for 1 ≤ c ≤ level.
    pub fn at_level(&self, c: usize) -> &Instance {
        &self.tower[c - 1]
    }
}

fn require_square(inst: &Instance) -> Result<usize> {
    if inst.k() != inst.n() {
        return Err(Error::NotSquare {
            k: inst.k(),
            n: inst.n(),
        });
    }
    Ok(inst.n())
}

fn check_cap(nu: usize, c: usize) -> Result<()> {
    if c < 1 {
        return Err(Error::OutOfRange {
            location: "parameter c".to_string(),
            value: c as u64,
            max: u64::MAX,
        });
    }
    let elements = (nu as u128).pow(c as u32);
    if elements > POWER_CAP as u128 {
        return Err(Error::LevelTooLarge {
            elements,
            cap: POWER_CAP,
        });
    }
    Ok(())
}

/// Builds the full tower T¹ … T^c. At each level, dimension i traverses
/// the base permutation σ^i and emits, for each entry k, the previous
/// level's permutation τ^i shifted into the k-th block.
pub fn power_construct(base: &Instance, c: usize) -> Result<PowerInstance> {
    let nu = require_square(base)?;
    check_cap(nu, c)?;
    let mut tower = vec![base.clone()];
    for _ in 2..=c {
        let prev = tower.last().expect("tower is never empty");
        let prev_n = prev.n() as u32;
        let lift_tuple = |base_t: &PermutationTuple, prev_t: &PermutationTuple| {
            let dims: Vec<Permutation> = (0..nu)
                .map(|i| {
                    let mut labels = Vec::with_capacity(prev_n as usize * nu);
                    for &k in base_t.dim(i).labels() {
                        let shift = (k - 1) * prev_n;
                        labels.extend(prev_t.dim(i).labels().iter().map(|&x| shift + x));
                    }
                    Permutation::from_valid(labels)
                })
                .collect();
            PermutationTuple::new(dims).expect("lifted dimensions share one n")
        };
        let next = Instance::new(
            lift_tuple(base.source(), prev.source()),
            lift_tuple(base.target(), prev.target()),
        )
        .expect("lifted source and target share shape");
        tower.push(next);
    }
    Ok(PowerInstance { tower })
}

/// The product set `{(j-1)·ν^{c-1} + k | j ∈ base_set, k ∈ prev}`:
/// feasible for T^c whenever `base_set` is feasible for the base and
/// `prev` for T^{c-1}, with size |base_set|·|prev|.
pub fn lift_solution(base_set: &FeasibleSet, prev: &FeasibleSet, c: usize, nu: usize) -> FeasibleSet {
    let shift = (nu as u64).pow(c as u32 - 1);
    FeasibleSet::from_members(base_set.iter().flat_map(|j| {
        prev.iter().map(move |k| {
            let v = (j as u64 - 1) * shift + k as u64;
            debug_assert!(v <= u32::MAX as u64);
            v as u32
        })
    }))
}

/// Block and in-block coordinates of `s` for block width ν^level:
/// `block = ((s-1) div ν^level) + 1`, `inblock = ((s-1) mod ν^level) + 1`.
/// `s` must lie in `[ν^{level+1}]`.
pub fn block_maps(s: u32, level: u32, nu: u32) -> Result<(u32, u32)> {
    let width = (nu as u64).pow(level);
    let max = width * nu as u64;
    if s < 1 || s as u64 > max {
        return Err(Error::OutOfRange {
            location: format!("block_maps level {level}"),
            value: s as u64,
            max,
        });
    }
    let block = (s as u64 - 1) / width + 1;
    let inblock = (s as u64 - 1) % width + 1;
    Ok((block as u32, inblock as u32))
}

/// How a set `J ⊆ [ν^level]` distributes over the ν blocks of width
/// ν^{level-1}.
#[derive(Debug, Clone)]
pub struct PartitionStats {
    /// Blocks hit by J, ascending (the W set).
    pub blocks: Vec<u32>,
    /// In-block images per hit block (the H sets).
    pub images: BTreeMap<u32, BTreeSet<u32>>,
    /// Largest image size.
    pub alpha: usize,
    /// Largest block attaining `alpha`; `None` when J is empty.
    pub beta: Option<u32>,
}

pub fn partition_stats(j: &FeasibleSet, level: u32, nu: u32) -> PartitionStats {
    debug_assert!(level >= 1);
    let mut images: BTreeMap<u32, BTreeSet<u32>> = BTreeMap::new();
    for s in j.iter() {
        let (block, inblock) = block_maps(s, level - 1, nu).expect("J stays within [nu^level]");
        images.entry(block).or_default().insert(inblock);
    }
    let alpha = images.values().map(|h| h.len()).max().unwrap_or(0);
    let beta = images
        .iter()
        .filter(|(_, h)| h.len() == alpha)
        .map(|(&l, _)| l)
        .max();
    PartitionStats {
        blocks: images.keys().copied().collect(),
        images,
        alpha,
        beta,
    }
}

/// Recovers from a feasible set J of T^c a base-feasible set of size at
/// least |J|^{1/c}: if fewer than |J|^{1/c} blocks are hit is impossible
/// while the per-block images stay small, so either the block set W is
/// large enough, or the procedure descends into the most-hit block.
/// Comparisons use exact integer powers (α^c < |J|).
pub fn extract_lfs(pinst: &PowerInstance, c: usize, j: &FeasibleSet) -> Result<FeasibleSet> {
    if c != pinst.level() {
        return Err(Error::ShapeMismatch {
            detail: format!("c={c} but the tower has level {}", pinst.level()),
        });
    }
    if !pinst.lifted().is_feasible(j)? {
        return Err(Error::NotFeasible {
            context: "extract_lfs input set",
        });
    }
    if c == 1 {
        return Ok(j.clone());
    }
    let nu = pinst.base().n() as u32;
    let mut cur = j.clone();
    let mut cur_c = c;
    loop {
        if cur.is_empty() {
            return Ok(FeasibleSet::empty());
        }
        let stats = partition_stats(&cur, cur_c as u32, nu);
        if (stats.alpha as u128).pow(cur_c as u32) < cur.len() as u128 {
            return Ok(FeasibleSet::from_members(stats.blocks));
        }
        let beta = stats.beta.expect("non-empty set has a beta block");
        let image = FeasibleSet::from_members(stats.images[&beta].iter().copied());
        if cur_c == 2 {
            return Ok(image);
        }
        cur = image;
        cur_c -= 1;
        if !pinst.at_level(cur_c).is_feasible(&cur)? {
            return Err(Error::NotFeasible {
                context: "extract_lfs descent",
            });
        }
    }
}

/// Lifting for the deletion problem: ν^{c-1} shifted copies of each base
/// permutation, concatenated in fixed block order (`g_k(p) = (k-1)·ν + p`).
pub fn u_power_construct(base: &Instance, c: usize) -> Result<Instance> {
    let nu = require_square(base)?;
    check_cap(nu, c)?;
    let copies = (nu as u64).pow(c as u32 - 1) as u32;
    let lift_tuple = |t: &PermutationTuple| {
        let dims: Vec<Permutation> = (0..nu)
            .map(|i| {
                let mut labels = Vec::with_capacity(nu * copies as usize);
                for k in 0..copies {
                    let shift = k * nu as u32;
                    labels.extend(t.dim(i).labels().iter().map(|&p| shift + p));
                }
                Permutation::from_valid(labels)
            })
            .collect();
        PermutationTuple::new(dims).expect("lifted dimensions share one n")
    };
    Instance::new(lift_tuple(base.source()), lift_tuple(base.target()))
}

/// Recovers a base deletion set from a deletion set J of the lifted
/// instance: over blocks of width ν, pick the block with the smallest
/// image (smallest index on ties) and return its image. Rebuilds the
/// lifted instance from the base to check J's feasibility defensively.
pub fn u_extract(base: &Instance, j: &FeasibleSet, c: usize) -> Result<FeasibleSet> {
    let nu = require_square(base)?;
    let lifted = u_power_construct(base, c)?;
    let kept = j.complement(lifted.n())?;
    if !lifted.is_feasible(&kept)? {
        return Err(Error::NotFeasible {
            context: "u_extract input is not a deletion-feasible set",
        });
    }
    let copies = (nu as u64).pow(c as u32 - 1) as usize;
    let mut images: Vec<BTreeSet<u32>> = vec![BTreeSet::new(); copies];
    for s in j.iter() {
        let block = (s as usize - 1) / nu;
        let inblock = (s - 1) % nu as u32 + 1;
        images[block].insert(inblock);
    }
    let best = images
        .iter()
        .enumerate()
        .min_by_key(|(l, h)| (h.len(), *l))
        .map(|(_, h)| h.clone())
        .unwrap_or_default();
    let result = FeasibleSet::from_members(best);
    debug_assert!(base
        .is_feasible(&result.complement(nu).expect("image stays within [nu]"))
        .expect("image stays within [nu]"));
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solve::{brute_force_opt, enumerate_feasible};

    fn inst(s: Vec<Vec<u32>>, t: Vec<Vec<u32>>) -> Instance {
        Instance::from_raw(s, t).unwrap()
    }

    fn square_base() -> Instance {
        inst(vec![vec![1, 2], vec![1, 2]], vec![vec![1, 2], vec![2, 1]])
    }

    #[test]
    fn power_level_two() {
        let p = power_construct(&square_base(), 2).unwrap();
        let lifted = p.lifted();
        assert_eq!(lifted.n(), 4);
        assert_eq!(lifted.source().dim(0).labels(), &[1, 2, 3, 4]);
        assert_eq!(lifted.source().dim(1).labels(), &[1, 2, 3, 4]);
        assert_eq!(lifted.target().dim(0).labels(), &[1, 2, 3, 4]);
        assert_eq!(lifted.target().dim(1).labels(), &[4, 3, 2, 1]);
        assert_eq!(brute_force_opt(&square_base()).unwrap().size, 1);
        assert_eq!(brute_force_opt(lifted).unwrap().size, 1);
    }

    #[test]
    fn power_level_one_is_base() {
        let base = square_base();
        let p = power_construct(&base, 1).unwrap();
        assert_eq!(p.lifted(), &base);
    }

    #[test]
    fn identity_base_lifts_to_identity() {
        let id = inst(
            vec![vec![1, 2, 3], vec![1, 2, 3], vec![1, 2, 3]],
            vec![vec![1, 2, 3], vec![1, 2, 3], vec![1, 2, 3]],
        );
        let p = power_construct(&id, 2).unwrap();
        assert_eq!(p.lifted().source(), p.lifted().target());
        assert_eq!(brute_force_opt(p.lifted()).unwrap().size, 9);
    }

    #[test]
    fn power_guards() {
        let rect = inst(vec![vec![1, 2, 3]], vec![vec![1, 2, 3]]);
        assert!(matches!(
            power_construct(&rect, 2),
            Err(Error::NotSquare { k: 1, n: 3 })
        ));
        let base = inst(
            vec![vec![1, 2, 3], vec![1, 2, 3], vec![1, 2, 3]],
            vec![vec![1, 2, 3], vec![1, 2, 3], vec![1, 2, 3]],
        );
        assert!(matches!(
            power_construct(&base, 13),
            Err(Error::LevelTooLarge { .. })
        ));
    }

    #[test]
    fn lift_solution_examples() {
        assert_eq!(
            lift_solution(&FeasibleSet::from_members([1]), &FeasibleSet::from_members([1]), 2, 2),
            FeasibleSet::from_members([1])
        );
        assert_eq!(
            lift_solution(
                &FeasibleSet::from_members([1, 2]),
                &FeasibleSet::from_members([1, 2, 3]),
                2,
                3
            ),
            FeasibleSet::from_members([1, 2, 3, 4, 5, 6])
        );
        assert_eq!(
            lift_solution(&FeasibleSet::empty(), &FeasibleSet::from_members([1]), 2, 2),
            FeasibleSet::empty()
        );
    }

    #[test]
    fn block_map_examples() {
        assert_eq!(block_maps(5, 1, 3).unwrap(), (2, 2));
        assert_eq!(block_maps(1, 1, 3).unwrap(), (1, 1));
        assert_eq!(block_maps(1, 3, 2).unwrap(), (1, 1));
        assert_eq!(block_maps(9, 1, 3).unwrap(), (3, 3));
        assert!(matches!(block_maps(10, 1, 3), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn partition_examples() {
        let stats = partition_stats(&FeasibleSet::from_members([1, 5, 9]), 2, 3);
        assert_eq!(stats.blocks, vec![1, 2, 3]);
        assert_eq!(stats.images[&1], BTreeSet::from([1]));
        assert_eq!(stats.images[&2], BTreeSet::from([2]));
        assert_eq!(stats.images[&3], BTreeSet::from([3]));
        assert_eq!(stats.alpha, 1);
        assert_eq!(stats.beta, Some(3));

        let empty = partition_stats(&FeasibleSet::empty(), 2, 3);
        assert!(empty.blocks.is_empty());
        assert_eq!(empty.alpha, 0);
        assert_eq!(empty.beta, None);

        let stats = partition_stats(&FeasibleSet::from_members([1, 2, 3]), 2, 2);
        assert_eq!(stats.blocks, vec![1, 2]);
        assert_eq!(stats.images[&1], BTreeSet::from([1, 2]));
        assert_eq!(stats.images[&2], BTreeSet::from([1]));
        assert_eq!(stats.alpha, 2);
        assert_eq!(stats.beta, Some(1));
    }

    #[test]
    fn extract_examples() {
        let p = power_construct(&square_base(), 2).unwrap();
        let out = extract_lfs(&p, 2, &FeasibleSet::from_members([1])).unwrap();
        assert_eq!(out, FeasibleSet::from_members([1]));
        assert!(p.base().is_feasible(&out).unwrap());

        assert_eq!(
            extract_lfs(&p, 2, &FeasibleSet::empty()).unwrap(),
            FeasibleSet::empty()
        );

        let id = inst(
            vec![vec![1, 2, 3], vec![1, 2, 3], vec![1, 2, 3]],
            vec![vec![1, 2, 3], vec![1, 2, 3], vec![1, 2, 3]],
        );
        let p = power_construct(&id, 2).unwrap();
        let out = extract_lfs(&p, 2, &FeasibleSet::full(9)).unwrap();
        assert!(p.base().is_feasible(&out).unwrap());
        assert!(out.len() >= 3);
    }

    #[test]
    fn extract_rejects_infeasible() {
        let p = power_construct(&square_base(), 2).unwrap();
        // {1,4} is reversed in dimension 2 of the lifted instance
        assert!(matches!(
            extract_lfs(&p, 2, &FeasibleSet::from_members([1, 4])),
            Err(Error::NotFeasible { .. })
        ));
    }

    #[test]
    fn power_soundness_small_bases() {
        let bases = [
            inst(
                vec![vec![2, 1, 3], vec![1, 3, 2], vec![3, 2, 1]],
                vec![vec![1, 2, 3], vec![3, 1, 2], vec![2, 3, 1]],
            ),
            inst(
                vec![vec![1, 3, 2], vec![2, 1, 3], vec![1, 2, 3]],
                vec![vec![3, 1, 2], vec![2, 3, 1], vec![1, 3, 2]],
            ),
        ];
        for base in bases {
            let p = power_construct(&base, 2).unwrap();
            let base_opt = brute_force_opt(&base).unwrap();
            let lifted_opt = brute_force_opt(p.lifted()).unwrap();
            assert_eq!(lifted_opt.size, base_opt.size * base_opt.size);

            let lifted_set = lift_solution(&base_opt.witness, &base_opt.witness, 2, 3);
            assert!(p.lifted().is_feasible(&lifted_set).unwrap());
            assert_eq!(lifted_set.len(), base_opt.size * base_opt.size);

            for j in enumerate_feasible(p.lifted()).unwrap() {
                let out = extract_lfs(&p, 2, &j).unwrap();
                assert!(p.base().is_feasible(&out).unwrap());
                assert!((out.len() as u128).pow(2) >= j.len() as u128);
            }
        }
    }

    #[test]
    fn u_power_examples() {
        let base = inst(vec![vec![2, 1], vec![1, 2]], vec![vec![1, 2], vec![1, 2]]);
        let lifted = u_power_construct(&base, 2).unwrap();
        assert_eq!(lifted.source().dim(0).labels(), &[2, 1, 4, 3]);
        assert_eq!(lifted.source().dim(1).labels(), &[1, 2, 3, 4]);
        assert_eq!(lifted.n(), 4);

        let id = inst(vec![vec![1, 2], vec![1, 2]], vec![vec![1, 2], vec![1, 2]]);
        let lifted = u_power_construct(&id, 2).unwrap();
        assert_eq!(lifted.source(), lifted.target());
    }

    #[test]
    fn u_extract_examples() {
        let base = square_base(); // conflict pair {1,2} in dimension 2
        let out = u_extract(&base, &FeasibleSet::from_members([1, 3]), 2).unwrap();
        assert_eq!(out, FeasibleSet::from_members([1]));

        // one full block and one singleton: argmin picks the singleton image
        let out = u_extract(&base, &FeasibleSet::from_members([1, 2, 3]), 2).unwrap();
        assert_eq!(out, FeasibleSet::from_members([1]));

        // deletion-feasible result for the base
        let kept = out.complement(base.n()).unwrap();
        assert!(base.is_feasible(&kept).unwrap());

        // the empty set is only accepted when the base is conflict-free
        let id = inst(vec![vec![1, 2], vec![1, 2]], vec![vec![1, 2], vec![1, 2]]);
        assert_eq!(
            u_extract(&id, &FeasibleSet::empty(), 2).unwrap(),
            FeasibleSet::empty()
        );
        assert!(matches!(
            u_extract(&base, &FeasibleSet::empty(), 2),
            Err(Error::NotFeasible { .. })
        ));
    }

    #[test]
    fn u_extract_never_grows() {
        let base = square_base();
        let lifted = u_power_construct(&base, 2).unwrap();
        for j in enumerate_feasible(&lifted)
            .unwrap()
            .iter()
            .map(|kept| kept.complement(4).unwrap())
        {
            let out = u_extract(&base, &j, 2).unwrap();
            assert!(out.len() <= j.len());
        }
    }
}
