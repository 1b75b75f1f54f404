use std::collections::HashSet;

use itertools::Itertools;

use super::{Lattice, Poset};
use crate::error::{Error, Result};

/// Largest size enumerated unless the caller raises the cap.
pub const DEFAULT_LATTICE_CAP: usize = 8;

// canonical codes are packed into a u64 over ordered pairs of inner elements
const HARD_CAP: usize = 10;

/// All lattices with `n` elements up to isomorphism, `2 <= n <= 8`.
pub fn enumerate_lattices(n: usize) -> Result<Vec<Lattice>> {
    enumerate_lattices_capped(n, DEFAULT_LATTICE_CAP)
}

/// Like [`enumerate_lattices`] with an explicit size cap (at most 10).
///
/// Every inner poset (the lattice minus bottom and top) is generated with a
/// natural labelling, where each new element chooses a down-closed set of
/// earlier elements as its strict down-set. Lattices among the results are
/// deduplicated by a canonical relation code.
pub fn enumerate_lattices_capped(n: usize, cap: usize) -> Result<Vec<Lattice>> {
    if n < 2 {
        return Err(Error::domain("lattices here have a distinct bottom and top (n >= 2)"));
    }
    if n > cap.min(HARD_CAP) {
        return Err(Error::Refused(format!(
            "lattice enumeration is capped at {} elements",
            cap.min(HARD_CAP)
        )));
    }
    let k = n - 2;
    let mut found = Vec::new();
    let mut seen = HashSet::new();
    let mut below = vec![0u32; k];
    extend(0, k, &mut below, &mut |below| {
        let poset = with_bounds(below);
        if poset.is_lattice() && seen.insert(canonical_code(below)) {
            found.push(Lattice::from_poset(poset).expect("checked lattice"));
        }
    });
    Ok(found)
}

fn extend(i: usize, k: usize, below: &mut [u32], visit: &mut impl FnMut(&[u32])) {
    if i == k {
        visit(below);
        return;
    }
    for mask in 0..(1u32 << i) {
        let closed = (0..i).all(|j| mask >> j & 1 == 0 || below[j] & !mask == 0);
        if closed {
            below[i] = mask;
            extend(i + 1, k, below, visit);
        }
    }
}

/// Inner poset given by strict down-sets, plus a new bottom (id 0) and top.
fn with_bounds(below: &[u32]) -> Poset {
    let k = below.len();
    Poset::from_leq(k + 2, |x, y| {
        x == y
            || x == 0
            || y == k + 1
            || (x > 0 && x <= k && y > 0 && y <= k && below[y - 1] >> (x - 1) & 1 == 1)
    })
    .expect("bounded natural labelling is a partial order")
}

fn canonical_code(below: &[u32]) -> u64 {
    let k = below.len();
    let lt = |a: usize, b: usize| below[b] >> a & 1 == 1;
    (0..k)
        .permutations(k)
        .map(|perm| {
            let mut code = 0u64;
            for a in 0..k {
                for b in 0..k {
                    code <<= 1;
                    if a != b && lt(perm[a], perm[b]) {
                        code |= 1;
                    }
                }
            }
            code
        })
        .min()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let counts: Vec<usize> =
            (2..=7).map(|n| enumerate_lattices(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 15, 53]);
    }

    #[test]
    fn refuses_out_of_range() {
        assert!(matches!(enumerate_lattices(9), Err(Error::Refused(_))));
        assert!(matches!(enumerate_lattices(1), Err(Error::Domain(_))));
        assert!(matches!(enumerate_lattices_capped(11, 20), Err(Error::Refused(_))));
    }
}
