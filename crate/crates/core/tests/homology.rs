mod common;

use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::Rng;

use common::*;
use synor::algebra::Field;
use synor::chains::{boundary, homology, homology_ranks, is_boundary, normalize, FormalChain, MultiChain};
use synor::poset::{enumerate_lattices, Lattice, Poset};

fn faces_of(facets: &[&[usize]]) -> Vec<Vec<usize>> {
    let mut faces = BTreeSet::new();
    for f in facets {
        for mask in 1u32..(1 << f.len()) {
            let face: Vec<usize> = (0..f.len()).filter(|i| mask >> i & 1 == 1).map(|i| f[i]).collect();
            faces.insert(face);
        }
    }
    faces.into_iter().collect()
}

fn face_poset(facets: &[&[usize]]) -> Poset {
    let faces = faces_of(facets);
    Poset::from_leq(faces.len(), |a, b| faces[a].iter().all(|v| faces[b].contains(v))).unwrap()
}

#[test]
fn sparse_homology_matches_dense_oracle_on_random_posets() {
    let gf2 = Field::prime(2).unwrap();
    for p in random_poset_pool() {
        for field in [Field::Rational, gf2] {
            assert_eq!(trimmed(homology_ranks(&p, field)), oracle_ranks(&p, field));
        }
    }
}

#[test]
fn projective_plane_depends_on_characteristic() {
    let rp2: [&[usize]; 10] = [
        &[1, 2, 3], &[1, 3, 4], &[1, 4, 5], &[1, 5, 6], &[1, 2, 6],
        &[2, 3, 5], &[3, 4, 6], &[2, 4, 5], &[3, 5, 6], &[2, 4, 6],
    ];
    let p = face_poset(&rp2);
    let gf2 = Field::prime(2).unwrap();
    assert_eq!(trimmed(homology_ranks(&p, Field::Rational)), Vec::<usize>::new());
    assert_eq!(trimmed(homology_ranks(&p, gf2)), vec![0, 0, 1, 1]);
    assert_eq!(oracle_ranks(&p, gf2), vec![0, 0, 1, 1]);
    assert_eq!(oracle_ranks(&p, Field::Rational), Vec::<usize>::new());
}

#[test]
fn spheres_and_points() {
    // boundary of a tetrahedron: a 2-sphere
    let sphere: [&[usize]; 4] = [&[0, 1, 2], &[0, 1, 3], &[0, 2, 3], &[1, 2, 3]];
    let p = face_poset(&sphere);
    assert_eq!(trimmed(homology_ranks(&p, Field::Rational)), vec![0, 0, 0, 1]);
    assert_eq!(trimmed(homology_ranks(&Poset::empty(), Field::Rational)), vec![1]);
    let point = Poset::from_leq(1, |a, b| a == b).unwrap();
    assert_eq!(trimmed(homology_ranks(&point, Field::Rational)), Vec::<usize>::new());
}

#[test]
fn homology_cycles_are_nonbounding_cycles() {
    let mut r = rng(3);
    for p in random_poset_pool().into_iter().take(40) {
        let k = r.gen_range(-1..3);
        for z in homology(&p, k, Field::Rational).cycles {
            assert!(boundary(&z).is_zero());
            assert!(!is_boundary(&p, &z).unwrap());
        }
    }
}

#[test]
fn boundary_squares_to_zero_and_normalize_commutes() {
    let mut r = rng(11);
    let pool = random_poset_pool();
    for _ in 0..300 {
        let p = &pool[r.gen_range(0..pool.len())];
        let dim = r.gen_range(-1..4);
        let c = random_chain(&mut r, p, dim, Field::Rational);
        assert!(boundary(&boundary(&c)).is_zero());

        // a multichain with a repeated entry plus an ordinary chain
        let Some((chain, _)) = c.terms().next() else { continue };
        let mut e = chain.clone().into_vec();
        if e.is_empty() {
            continue;
        }
        let j = r.gen_range(0..e.len());
        e.insert(j, e[j]);
        let f = Field::Rational;
        let mut m = FormalChain::zero(f, dim + 1);
        m.add_term(MultiChain::from_decreasing(e), f.from_i64(2));
        for (other, s) in random_chain(&mut r, p, dim + 1, f).terms() {
            m.add_term(other.to_multichain(), s.clone());
        }
        assert_eq!(boundary(&normalize(&m)), normalize(&boundary(&m)));
    }
}

/// Unlabelled lattices on `n` elements by brute force over all orientations
/// of the pairs, up to isomorphism.
fn count_lattices_bruteforce(n: usize) -> usize {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    let perms = permutations(n);
    let mut seen = BTreeSet::new();
    let total = 3usize.pow(pairs.len() as u32);
    for code in 0..total {
        let mut c = code;
        let mut leq = vec![vec![false; n]; n];
        for (i, row) in leq.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in &pairs {
            match c % 3 {
                1 => leq[a][b] = true,
                2 => leq[b][a] = true,
                _ => {}
            }
            c /= 3;
        }
        let Ok(p) = Poset::from_leq(n, |a, b| leq[a][b]) else { continue };
        if !p.is_lattice() {
            continue;
        }
        let canon = perms
            .iter()
            .map(|pi| {
                let mut bits = Vec::with_capacity(n * n);
                for a in 0..n {
                    for b in 0..n {
                        bits.push(leq[pi[a]][pi[b]]);
                    }
                }
                bits
            })
            .min()
            .unwrap();
        seen.insert(canon);
    }
    seen.len()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn lattice_enumeration_matches_orientation_oracle() {
    for n in 2..=5 {
        assert_eq!(enumerate_lattices(n).unwrap().len(), count_lattices_bruteforce(n), "n = {n}");
    }
    let counts: Vec<usize> = (2..=7).map(|n| enumerate_lattices(n).unwrap().len()).collect();
    assert_eq!(counts, vec![1, 1, 2, 5, 15, 53]);
}

#[test]
fn enumerated_lattices_are_pairwise_distinct() {
    let ls = enumerate_lattices(6).unwrap();
    for (i, a) in ls.iter().enumerate() {
        assert!(a.is_lattice());
        for b in &ls[i + 1..] {
            assert!(!isomorphic(a, b));
        }
    }
    let four = enumerate_lattices(4).unwrap();
    assert_eq!(four.iter().filter(|l| isomorphic(l, &Lattice::boolean(2))).count(), 1);
    assert_eq!(four.iter().filter(|l| isomorphic(l, &Lattice::chain(4))).count(), 1);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn chain_poset_is_acyclic(n in 1usize..7) {
        let p = Lattice::chain(n);
        prop_assert_eq!(trimmed(homology_ranks(&p, Field::Rational)), Vec::<usize>::new());
    }

    #[test]
    fn antichain_has_reduced_h0(n in 1usize..7) {
        let p = Poset::from_leq(n, |a, b| a == b).unwrap();
        let ranks = trimmed(homology_ranks(&p, Field::Rational));
        prop_assert_eq!(ranks, if n == 1 { vec![] } else { vec![0, n - 1] });
    }
}
