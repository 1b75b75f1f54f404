//! Shuffle product on chains of a lattice.

use crate::algebra::Scalar;
use crate::chains::{boundary, normalize, FormalChain, MultiChain, Simplex};
use crate::poset::Lattice;

/// A permutation of `0..=i+j+1` keeping `0..=i` and `i+1..=i+j+1` each in
/// relative order. `sigma[p]` is the index placed at position `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShufflePermutation {
    pub i: isize,
    pub j: isize,
    pub sigma: Vec<usize>,
    pub sign: i8,
}

impl ShufflePermutation {
    /// Applies the permutation to a tuple of length `i + j + 2`.
    pub fn apply<T: Copy>(&self, tuple: &[T]) -> Vec<T> {
        self.sigma.iter().map(|&s| tuple[s]).collect()
    }
}

/// All `(i, j)`-shuffles, in lexicographic order of the positions taken by
/// the first block. There are `binomial(i + j + 2, i + 1)` of them.
/// Degrees below -1 (boundaries of the empty chain) give no shuffles.
pub fn enumerate_shuffles(i: isize, j: isize) -> Vec<ShufflePermutation> {
    if i < -1 || j < -1 {
        return Vec::new();
    }
    let (a, b) = ((i + 1) as usize, (j + 1) as usize);
    let n = a + b;
    let mut out = Vec::new();
    for positions in itertools::Itertools::combinations(0..n, a) {
        let mut sigma = vec![0; n];
        let (mut first, mut second) = (0, a);
        let mut taken = positions.iter().peekable();
        for (p, slot) in sigma.iter_mut().enumerate() {
            if taken.peek() == Some(&&p) {
                taken.next();
                *slot = first;
                first += 1;
            } else {
                *slot = second;
                second += 1;
            }
        }
        let inversions: usize = (0..n)
            .map(|x| (x + 1..n).filter(|&y| sigma[x] > sigma[y]).count())
            .sum();
        let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
        out.push(ShufflePermutation { i, j, sigma, sign });
    }
    out
}

/// Suffix joins `(a_0 v ... v a_k >= a_1 v ... v a_k >= ... >= a_k)`.
pub fn tau(l: &Lattice, tuple: &[usize]) -> MultiChain {
    let mut out = vec![0; tuple.len()];
    let mut acc: Option<usize> = None;
    for (p, &x) in tuple.iter().enumerate().rev() {
        let j = match acc {
            None => x,
            Some(a) => l.join(a, x),
        };
        out[p] = j;
        acc = Some(j);
    }
    MultiChain::from_decreasing(out)
}

/// The shuffle product before normalization, as multichains.
pub fn shuffle_product_raw<C: Simplex>(
    l: &Lattice,
    c: &FormalChain<C>,
    c2: &FormalChain<C>,
) -> FormalChain<MultiChain> {
    let field = c.field();
    let shuffles = enumerate_shuffles(c.dim(), c2.dim());
    let mut out = FormalChain::zero(field, c.dim() + c2.dim() + 1);
    let minus = -field.one();
    for (a, s) in c.terms() {
        for (b, t) in c2.terms() {
            let coeff: Scalar = s * t;
            let tuple: Vec<usize> =
                a.elements().iter().chain(b.elements()).copied().collect();
            for sh in &shuffles {
                let term = tau(l, &sh.apply(&tuple));
                let signed = if sh.sign > 0 { coeff.clone() } else { &coeff * &minus };
                out.add_term(term, signed);
            }
        }
    }
    out
}

/// `c (shuffle) c2`, normalized to order chains.
pub fn shuffle_product<C: Simplex>(
    l: &Lattice,
    c: &FormalChain<C>,
    c2: &FormalChain<C>,
) -> FormalChain {
    normalize(&shuffle_product_raw(l, c, c2))
}

/// Both sides of the boundary formula
/// `d(c sh c2) = dc sh c2 + (-1)^(i+1) c sh dc2`, after normalization.
pub fn chain_map_sides(l: &Lattice, c: &FormalChain, c2: &FormalChain) -> (FormalChain, FormalChain) {
    let field = c.field();
    let lhs = boundary(&shuffle_product(l, c, c2));
    let sign = if (c.dim() + 1) % 2 == 0 { field.one() } else { -field.one() };
    let mut rhs = shuffle_product(l, &boundary(c), c2);
    rhs.add_scaled(&sign, &shuffle_product(l, c, &boundary(c2)));
    (lhs, rhs)
}

/// True iff the boundary formula holds exactly for `c` and `c2`.
pub fn check_chain_map(l: &Lattice, c: &FormalChain, c2: &FormalChain) -> bool {
    let (lhs, rhs) = chain_map_sides(l, c, c2);
    lhs == rhs
}

/// The same identity on multichains, without normalization.
pub fn check_chain_map_raw(l: &Lattice, c: &FormalChain<MultiChain>, c2: &FormalChain<MultiChain>) -> bool {
    let field = c.field();
    let lhs = boundary(&shuffle_product_raw(l, c, c2));
    let sign = if (c.dim() + 1) % 2 == 0 { field.one() } else { -field.one() };
    let mut rhs = shuffle_product_raw(l, &boundary(c), c2);
    rhs.add_scaled(&sign, &shuffle_product_raw(l, c, &boundary(c2)));
    lhs == rhs
}
