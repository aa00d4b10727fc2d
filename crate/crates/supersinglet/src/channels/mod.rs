//! Channels used by the protocol: permutation operators, the permutation
//! symmetrizer, and SU(2) twirling.

mod permutation;
mod twirl;

pub use permutation::{
    group_swap, group_two_permutations, permutation_operator, permute_density, permute_state,
    supersinglet_symmetry_group, symmetrize, PermutationSpec,
};
pub use twirl::{
    haar_su2, su2_from_quaternion, twirl_monte_carlo, SectorTransferOperator, Twirler,
};
