//! Seeded randomized property suite for `verify properties`.

use synor::algebra::Field;
use synor::chains::{homology_ranks, order_chains_of_dim, FormalChain};
use synor::corpus::{random_ideal, Lcg};
use synor::poset::{Poset, Lattice};
use synor::resolution::{betti_from_intervals, betti_from_resolution, certify_resolution, synor_resolution};
use synor::shuffle::check_chain_map;
use synor::synor::{synors, SynorComplex};

use crate::Failure;

/// `(property, instances checked, failure descriptions)`.
pub type Outcome = (&'static str, usize, Vec<String>);

fn random_poset(rng: &mut Lcg, max: usize) -> Poset {
    let n = 1 + rng.below(max as u64) as usize;
    let density = 2 + rng.below(5);
    let mut rel = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.below(10) < density {
                rel.push((i, j));
            }
        }
    }
    Poset::from_relations(n, &rel).expect("acyclic by construction")
}

fn random_order_ideal(rng: &mut Lcg, p: &Poset) -> Vec<bool> {
    let mut mask = vec![false; p.len()];
    for x in 0..p.len() {
        if rng.below(5) < 2 {
            for y in p.down_set(x) {
                mask[y] = true;
            }
        }
    }
    mask
}

fn random_chain(rng: &mut Lcg, p: &Poset, dim: isize, field: Field) -> FormalChain {
    let level = order_chains_of_dim(p, dim);
    let mut out = FormalChain::zero(field, dim);
    if level.is_empty() {
        return out;
    }
    for _ in 0..1 + rng.below(3) {
        let c = level[rng.below(level.len() as u64) as usize].clone();
        out.add_term(c, field.from_i64(rng.below(7) as i64 - 3));
    }
    out
}

fn trimmed(mut v: Vec<usize>) -> Vec<usize> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn run(seed: u64, max: usize, count: usize, field: Field) -> Result<Vec<Outcome>, Failure> {
    if max == 0 {
        return Err(Failure::Input("--max must be at least 1".into()));
    }
    let mut rng = Lcg::new(seed);
    let mut synor_list = (0, Vec::new());
    let mut ideal_homology = (0, Vec::new());
    for case in 0..count {
        let p = random_poset(&mut rng, max);
        let s = SynorComplex::build(&p, field);
        synor_list.0 += 1;
        if s.synor_list() != synors(&p, field) {
            synor_list.1.push(format!("poset {case} covers {:?}", p.cover_pairs()));
        }
        for _ in 0..3 {
            let mask = random_order_ideal(&mut rng, &p);
            let ideal = p.induced_where(|x| mask[x]);
            let ranks = s.synor_homology_ranks(&mask).expect("an order ideal");
            ideal_homology.0 += 1;
            if trimmed(ranks) != trimmed(homology_ranks(&ideal, field)) {
                ideal_homology.1.push(format!("poset {case} covers {:?} ideal {mask:?}", p.cover_pairs()));
            }
        }
    }

    let mut shuffle = (0, Vec::new());
    let mut resolution = (0, Vec::new());
    for case in 0..count {
        let ideal_seed = seed.wrapping_mul(1000).wrapping_add(case as u64);
        let n = 2 + rng.below(3) as usize;
        let g = 2 + rng.below(4) as usize;
        let spec = random_ideal(ideal_seed, n, g, 2).map_err(|e| Failure::Input(e.to_string()))?;
        let l = spec.lattice().map_err(|e| Failure::Input(e.to_string()))?;
        let gens = spec.generators.iter().map(|m| m.display(&spec.vars).to_string()).collect::<Vec<_>>();
        let lattice: &Lattice = &l;
        for _ in 0..5 {
            let d1 = rng.below(4) as isize - 1;
            let d2 = rng.below(4) as isize - 1;
            let a = random_chain(&mut rng, lattice, d1, field);
            let b = random_chain(&mut rng, lattice, d2, field);
            shuffle.0 += 1;
            if !check_chain_map(lattice, &a, &b) {
                shuffle.1.push(format!("ideal {} chains {a} and {b}", gens.join(",")));
            }
        }
        let r = synor_resolution(&l, field).map_err(|e| Failure::Verification(e.to_string()))?;
        resolution.0 += 1;
        if !certify_resolution(&r, &l).is_certified() || betti_from_resolution(&r) != betti_from_intervals(&l, field) {
            resolution.1.push(format!("ideal {}", gens.join(",")));
        }
    }
    Ok(vec![
        ("synor-list", synor_list.0, synor_list.1),
        ("ideal-homology", ideal_homology.0, ideal_homology.1),
        ("shuffle-boundary", shuffle.0, shuffle.1),
        ("resolution", resolution.0, resolution.1),
    ])
}
