//! Multisets, permutations, formal sums of permutations, unshuffles and set
//! partitions.

mod multiset;
mod partition;
mod perm;

pub use multiset::{falling, mfact, msum, Multiset};
pub use partition::{chi, partitions, rho, tau_pi, SetPartition};
pub use perm::{
    gamma_block, unsh, unsh_recursion, unshuffle_split, unshuffles, FormalPermSum, Permutation, PositionMap,
};

/// Binomial coefficient as a `u128`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc
}
