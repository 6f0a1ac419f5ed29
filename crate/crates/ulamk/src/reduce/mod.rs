//! Instance generators and transformers: 3CNF and graph encodings, the
//! recursive power lifting with its extraction procedure, and dimension
//! padding.

mod graph;
mod power;
mod sat;

pub use graph::{graph_to_nlfs, UndirectedGraph};
pub use power::{
    block_maps, extract_lfs, lift_solution, partition_stats, power_construct, u_extract,
    u_power_construct, PartitionStats, PowerInstance, POWER_CAP,
};
pub use sat::{decode_assignment, sat_to_2lfs, Assignment, CnfFormula, Lit, SymbolInfo, SymbolTable};

use crate::error::{Error, Result};
use crate::instance::{Instance, PermutationTuple};

/// Appends copies of the last dimension pair until the instance has
/// `k_new` dimensions. The feasible-set family is unchanged: a duplicated
/// dimension imposes exactly the constraints of the original.
pub fn pad_dimensions(inst: &Instance, k_new: usize) -> Result<Instance> {
    let k = inst.k();
    if k_new < k {
        return Err(Error::ShrinkNotAllowed { from: k, to: k_new });
    }
    let mut s: Vec<_> = inst.source().dims().to_vec();
    let mut t: Vec<_> = inst.target().dims().to_vec();
    while s.len() < k_new {
        s.push(s[k - 1].clone());
        t.push(t[k - 1].clone());
    }
    Instance::new(PermutationTuple::new(s)?, PermutationTuple::new(t)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solve::brute_force_opt;

    fn figure1() -> Instance {
        Instance::from_raw(
            vec![vec![4, 3, 1, 6, 2, 5], vec![6, 5, 3, 4, 1, 2]],
            vec![vec![5, 3, 1, 4, 6, 2], vec![6, 3, 5, 1, 2, 4]],
        )
        .unwrap()
    }

    #[test]
    fn pad_preserves_optimum() {
        let inst = figure1();
        let padded = pad_dimensions(&inst, 4).unwrap();
        assert_eq!(padded.k(), 4);
        assert_eq!(
            brute_force_opt(&inst).unwrap().size,
            brute_force_opt(&padded).unwrap().size
        );
    }

    #[test]
    fn pad_identity_transform() {
        let id = Instance::from_raw(vec![vec![2, 1]], vec![vec![1, 2]]).unwrap();
        assert_eq!(pad_dimensions(&id, 1).unwrap(), id);
    }

    #[test]
    fn pad_identity_pair_stays_full() {
        let id = Instance::from_raw(vec![vec![1, 2, 3]], vec![vec![1, 2, 3]]).unwrap();
        let padded = pad_dimensions(&id, 3).unwrap();
        assert_eq!(brute_force_opt(&padded).unwrap().size, 3);
    }

    #[test]
    fn pad_rejects_shrink() {
        assert!(matches!(
            pad_dimensions(&figure1(), 1),
            Err(Error::ShrinkNotAllowed { from: 2, to: 1 })
        ));
    }
}
