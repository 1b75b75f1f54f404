//! Independent oracles and random generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use synor::algebra::{Field, Variables};
use synor::chains::{homology_ranks, FormalChain, OrderChain, Simplex};
use synor::corpus::random_ideal;
use synor::linalg::{kernel, SparseVec};
use synor::poset::{Lattice, LcmLattice, Poset};
use synor::synor::{synors, SynorComplex};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Order chains of `p` grouped by dimension, found by depth-first search on
/// the strict order. Index 0 holds the empty chain.
pub fn chains_by_dim(p: &Poset) -> Vec<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<Vec<usize>>> = vec![vec![Vec::new()]];
    fn extend(p: &Poset, chain: &mut Vec<usize>, out: &mut Vec<Vec<Vec<usize>>>) {
        let last = *chain.last().expect("nonempty");
        for y in 0..p.len() {
            if p.lt(y, last) {
                chain.push(y);
                if out.len() <= chain.len() {
                    out.push(Vec::new());
                }
                out[chain.len()].push(chain.clone());
                extend(p, chain, out);
                chain.pop();
            }
        }
    }
    for x in 0..p.len() {
        if out.len() < 2 {
            out.push(Vec::new());
        }
        out[1].push(vec![x]);
        extend(p, &mut vec![x], &mut out);
    }
    for level in &mut out {
        level.sort();
    }
    out
}

#[allow(clippy::needless_range_loop)]
fn rank_rational(mut m: Vec<Vec<BigRational>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else { continue };
        m.swap(rank, pivot);
        let inv = BigRational::one() / m[rank][c].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] * &inv;
                for k in c..cols {
                    let v = &m[rank][k] * &f;
                    m[r][k] -= v;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[allow(clippy::needless_range_loop)]
fn rank_mod(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let pow = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, pivot);
        let inv = pow(m[rank][c], p - 2);
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c] * inv % p;
                for k in c..cols {
                    m[r][k] = (m[r][k] + p - m[rank][k] * f % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of the dense boundary matrix from `upper` chains to `lower` chains.
fn boundary_rank(upper: &[Vec<usize>], lower: &[Vec<usize>], field: Field) -> usize {
    if upper.is_empty() || lower.is_empty() {
        return 0;
    }
    let index = |c: &Vec<usize>| lower.binary_search(c).expect("face is a chain");
    let faces = |c: &Vec<usize>| -> Vec<(Vec<usize>, i64)> {
        (0..c.len())
            .map(|j| {
                let mut f = c.clone();
                f.remove(j);
                (f, if j % 2 == 0 { 1 } else { -1 })
            })
            .collect()
    };
    match field {
        Field::Rational => {
            let mut m = vec![vec![BigRational::zero(); upper.len()]; lower.len()];
            for (col, c) in upper.iter().enumerate() {
                for (f, s) in faces(c) {
                    m[index(&f)][col] += BigRational::from_integer(BigInt::from(s));
                }
            }
            rank_rational(m)
        }
        Field::Prime(p) => {
            let mut m = vec![vec![0u64; upper.len()]; lower.len()];
            for (col, c) in upper.iter().enumerate() {
                for (f, s) in faces(c) {
                    let e = &mut m[index(&f)][col];
                    *e = (*e + if s > 0 { 1 } else { p - 1 }) % p;
                }
            }
            rank_mod(m, p)
        }
    }
}

/// Reduced homology ranks of the order complex, indexed by `k + 1` for
/// `k = -1 ..`, with trailing zeros trimmed.
pub fn oracle_ranks(p: &Poset, field: Field) -> Vec<usize> {
    let chains = chains_by_dim(p);
    let ranks: Vec<usize> = (0..=chains.len())
        .map(|d| {
            if d == 0 || d >= chains.len() {
                0
            } else {
                boundary_rank(&chains[d], &chains[d - 1], field)
            }
        })
        .collect();
    let mut out: Vec<usize> =
        (0..chains.len()).map(|d| chains[d].len() - ranks[d] - ranks[d + 1]).collect();
    while out.last() == Some(&0) {
        out.pop();
    }
    out
}

pub fn trimmed(mut v: Vec<usize>) -> Vec<usize> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// A random poset on `n` elements from random relations `i < j`.
pub fn random_poset(rng: &mut ChaCha8Rng, n: usize, density: f64) -> Poset {
    let mut rel = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                rel.push((i, j));
            }
        }
    }
    let perm: Vec<usize> = {
        let mut v: Vec<usize> = (0..n).collect();
        v.shuffle(rng);
        v
    };
    let rel: Vec<(usize, usize)> = rel.into_iter().map(|(a, b)| (perm[a], perm[b])).collect();
    Poset::from_relations(n, &rel).expect("acyclic by construction")
}

/// The pool of 100 random posets on at most 10 elements.
pub fn random_poset_pool() -> Vec<Poset> {
    let mut r = rng(8);
    (0..100)
        .map(|_| {
            let n = r.gen_range(1..=10);
            let density = r.gen_range(0.15..0.6);
            random_poset(&mut r, n, density)
        })
        .collect()
}

/// A random order ideal: the down-closure of a random subset.
pub fn random_ideal_mask(rng: &mut ChaCha8Rng, p: &Poset) -> Vec<bool> {
    let mut mask = vec![false; p.len()];
    for x in 0..p.len() {
        if rng.gen_bool(0.4) {
            for y in p.down_set(x) {
                mask[y] = true;
            }
        }
    }
    mask
}

/// LCM lattices of random ideals with at most `max` elements.
pub fn random_lcm_lattices(count: usize, max: usize, seed: u64) -> Vec<LcmLattice> {
    let mut out = Vec::new();
    let mut s = seed;
    while out.len() < count {
        s += 1;
        let n = 2 + (s % 3) as usize;
        let g = 2 + (s % 4) as usize;
        let spec = random_ideal(s, n, g, 2).unwrap();
        let l = spec.lattice().unwrap();
        if l.len() <= max {
            out.push(l);
        }
    }
    out
}

/// A random combination of up to three order chains of dimension `dim`.
pub fn random_chain(rng: &mut ChaCha8Rng, p: &Poset, dim: isize, field: Field) -> FormalChain {
    let pool = &chains_by_dim(p);
    let level = pool.get((dim + 1) as usize).cloned().unwrap_or_default();
    let mut out = FormalChain::zero(field, dim);
    if level.is_empty() {
        return out;
    }
    for _ in 0..rng.gen_range(1..=3) {
        let c = level.choose(rng).expect("nonempty").clone();
        let s = field.from_i64(rng.gen_range(-3..=3));
        out.add_term(OrderChain::from_decreasing(c), s);
    }
    out
}

pub fn lattice_of(names: &[&str], gens: &[&str]) -> LcmLattice {
    let vars = Variables::new(names.iter().copied()).unwrap();
    let gens: Vec<_> = gens.iter().map(|g| vars.parse_monomial(g).unwrap()).collect();
    LcmLattice::new(vars, &gens).unwrap()
}

/// All-pairs lattice-isomorphism test by search over bijections that
/// respect the number of elements below each element.
pub fn isomorphic(a: &Lattice, b: &Lattice) -> bool {
    let n = a.len();
    if n != b.len() {
        return false;
    }
    let sig = |l: &Lattice, x: usize| (l.down_set(x).count(), l.up_set(x).count());
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(a: &Lattice, b: &Lattice, x: usize, map: &mut [usize], used: &mut [bool], sig: &dyn Fn(&Lattice, usize) -> (usize, usize)) -> bool {
        if x == a.len() {
            return true;
        }
        for y in 0..b.len() {
            if used[y] || sig(a, x) != sig(b, y) {
                continue;
            }
            if (0..x).all(|z| a.leq(z, x) == b.leq(map[z], y) && a.leq(x, z) == b.leq(y, map[z])) {
                map[x] = y;
                used[y] = true;
                if go(a, b, x + 1, map, used, sig) {
                    return true;
                }
                used[y] = false;
            }
        }
        false
    }
    go(a, b, 0, &mut map, &mut used, &sig)
}

/// Generator counts per element and dimension agree with simplicial
/// homology of each strict lower ideal, computed twice: by the library and
/// by the dense oracle.
pub fn s1_holds(p: &Poset, field: Field) -> bool {
    let s = SynorComplex::build(p, field);
    let mut counts: BTreeMap<(usize, isize), usize> = BTreeMap::new();
    for g in s.generators() {
        if let Some(x) = g.element {
            *counts.entry((x, g.dim)).or_default() += 1;
        }
    }
    let listed: Vec<(usize, isize, usize)> = counts.iter().map(|(&(x, i), &m)| (x, i, m)).collect();
    if listed != synors(p, field) {
        return false;
    }
    (0..p.len()).all(|x| {
        let below = p.ideal_below(x, true).unwrap();
        let mut from_gens = vec![0; p.len() + 1];
        for (&(y, i), &m) in &counts {
            if y == x {
                from_gens[i as usize] = m;
            }
        }
        trimmed(from_gens) == oracle_ranks(&below, field)
    })
}

/// Homology of the restriction to an order ideal equals simplicial homology
/// of the ideal.
pub fn s2_holds(p: &Poset, mask: &[bool], field: Field) -> bool {
    let s = SynorComplex::build(p, field);
    let ideal = p.induced_where(|x| mask[x]);
    trimmed(s.synor_homology_ranks(mask).unwrap()) == trimmed(homology_ranks(&ideal, field))
}

/// Synor cycles: boundaries of generators and kernel vectors of delta.
pub fn synor_cycles(s: &SynorComplex) -> Vec<FormalChain> {
    let mut out = Vec::new();
    for g in 0..s.len() {
        let gen = s.generator(g);
        if gen.dim >= 1 {
            out.push(s.phi_of(&gen.delta, gen.dim - 1));
        }
    }
    for d in 0..=s.max_dim() {
        let cols: Vec<(usize, &SparseVec)> =
            s.generators_of_dim(d).iter().map(|&g| (g, &s.generator(g).delta)).collect();
        for z in kernel(s.field(), cols) {
            out.push(s.phi_of(&z, d));
        }
    }
    out
}

/// Sums of `zeta` over classes of chains agreeing off position `j`.
pub fn class_sums(entries: &[(OrderChain, SparseVec)], j: usize, field: Field) -> Vec<SparseVec> {
    let mut classes: BTreeMap<Vec<usize>, SparseVec> = BTreeMap::new();
    for (chi, z) in entries {
        let mut key = chi.elements().to_vec();
        key.remove(j);
        classes.entry(key).or_default().axpy(&field.one(), z);
    }
    classes.into_values().collect()
}
