//! Fixed inputs shared by the benchmarks.

use neutrep_core::{FiniteAbelianGroup, Representation};

/// `Z/n` with characters `1..=k`, each of multiplicity one.
pub fn cyclic_sum(n: u64, k: i64) -> Representation {
    let g = FiniteAbelianGroup::cyclic(n).unwrap();
    let entries: Vec<_> = (1..=k).map(|c| (g.character(&[c]).unwrap(), 1)).collect();
    Representation::new(g, entries).unwrap()
}

/// `(Z/p)^2` with the coordinate characters and their sum, with multiplicities 1, 1, 2.
pub fn rank_two(p: u64) -> Representation {
    let g = FiniteAbelianGroup::new(&[p, p]).unwrap();
    Representation::from_coords(g, &[(&[1, 0], 1), (&[0, 1], 1), (&[1, 1], 2)]).unwrap()
}

/// Deterministic 3x3 matrices with entries in `[-9, 9]`.
pub fn snf_inputs(count: usize) -> Vec<Vec<Vec<i64>>> {
    let mut state: u64 = 0x9e37_79b9_7f4a_7c15;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state % 19) as i64 - 9
    };
    (0..count)
        .map(|_| (0..3).map(|_| (0..3).map(|_| next()).collect()).collect())
        .collect()
}
