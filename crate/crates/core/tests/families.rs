mod common;

use std::collections::BTreeSet;

use common::*;
use synor::algebra::{Field, Monomial};
use synor::corpus::{full_corpus, ideal_cone, ideal_kpq, ideal_powers, kpq_expected_t, IdealSpec};
use synor::poset::{Lattice, Poset};
use synor::resolution::{betti_from_intervals, certify_resolution, synor_resolution};

/// Faces of a hollow p-simplex and a hollow q-simplex sharing vertex 0,
/// plus the empty face and an adjoined top. Vertices `1..=p` belong to the
/// first simplex, `p+1..=p+q` to the second.
fn glued_face_lattice(p: usize, q: usize) -> (Lattice, Vec<Option<BTreeSet<usize>>>) {
    let first: Vec<usize> = (0..=p).collect();
    let second: Vec<usize> = std::iter::once(0).chain(p + 1..=p + q).collect();
    let mut faces: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for simplex in [&first, &second] {
        let n = simplex.len();
        for mask in 0u32..(1 << n) - 1 {
            faces.insert((0..n).filter(|i| mask >> i & 1 == 1).map(|i| simplex[i]).collect());
        }
    }
    let mut elems: Vec<Option<BTreeSet<usize>>> = faces.into_iter().map(Some).collect();
    elems.push(None);
    let leq = |a: usize, b: usize| match (&elems[a], &elems[b]) {
        (_, None) => true,
        (None, Some(_)) => false,
        (Some(x), Some(y)) => x.is_subset(y),
    };
    let poset = Poset::from_leq(elems.len(), leq).unwrap();
    (Lattice::from_poset(poset).unwrap(), elems)
}

#[test]
fn kpq_lattice_is_the_glued_face_lattice() {
    for (p, q) in [(3, 2), (4, 2), (4, 3)] {
        let spec = ideal_kpq(p, q).unwrap();
        let l = spec.lattice().unwrap();
        let (faces, elems) = glued_face_lattice(p, q);
        assert_eq!(l.len(), faces.len(), "({p},{q})");
        // vertex 0 -> x0 y0, vertex i -> Y x_i, vertex p+j -> X y_j
        let image = |f: &Option<BTreeSet<usize>>| -> Monomial {
            match f {
                None => l.label(l.top()).clone(),
                Some(s) => s.iter().fold(Monomial::one(l.vars().len()), |acc, &v| {
                    acc.lcm(&spec.generators[v]).unwrap()
                }),
            }
        };
        let map: Vec<usize> = elems.iter().map(|f| l.id_of(&image(f)).expect("an lcm")).collect();
        let distinct: BTreeSet<usize> = map.iter().copied().collect();
        assert_eq!(distinct.len(), l.len(), "bijective");
        for a in 0..faces.len() {
            for b in 0..faces.len() {
                assert_eq!(faces.leq(a, b), l.leq(map[a], map[b]));
            }
        }
    }
    let (faces, _) = glued_face_lattice(3, 2);
    assert!(isomorphic(&faces, &ideal_kpq(3, 2).unwrap().lattice().unwrap()));
}

#[test]
fn kpq_shifts_match_the_expected_pattern() {
    for (p, q) in [(3, 2), (4, 2), (4, 3)] {
        let l = ideal_kpq(p, q).unwrap().lattice().unwrap();
        let t = betti_from_intervals(&l, Field::Rational).t();
        assert_eq!(t, kpq_expected_t(p, q), "({p},{q})");
    }
}

#[test]
fn cone_ideal_lattice_size_matches_subset_lcms() {
    let spec = ideal_cone();
    let n = spec.generators.len();
    let mut lcms = BTreeSet::new();
    for mask in 0u32..(1 << n) {
        let m = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .fold(Monomial::one(6), |acc, i| acc.lcm(&spec.generators[i]).unwrap());
        lcms.insert(m);
    }
    assert_eq!(lcms.len(), 33);
    assert_eq!(spec.lattice().unwrap().len(), 33);
}

#[test]
fn cone_ideal_betti_table() {
    let spec = ideal_cone();
    let table = betti_from_intervals(&spec.lattice().unwrap(), Field::Rational);
    let text = table.to_text();
    let rows: Vec<Vec<&str>> = text.lines().map(|l| l.split_whitespace().collect()).collect();
    // the reference grid, cell by cell
    assert_eq!(rows[0], ["0", "1", "2", "3", "4", "5"]);
    assert_eq!(rows[1], ["total:", "1", "6", "11", "10", "5", "1"]);
    assert_eq!(rows[2], ["0:", "1", ".", ".", ".", ".", "."]);
    assert_eq!(rows[3], ["1:", ".", "5", "10", "10", "5", "1"]);
    assert_eq!(rows[4], ["2:", ".", ".", ".", ".", ".", "."]);
    assert_eq!(rows[5], ["3:", ".", ".", ".", ".", ".", "."]);
    assert_eq!(rows[6], ["4:", ".", "1", "1", ".", ".", "."]);
    assert_eq!(rows.len(), 7);
    assert_eq!(table.t(), vec![0, 5, 6, 4, 5, 6]);
    assert_eq!(Some((table.totals(), synor::corpus::Provenance::Reference)), spec.expected.totals);
}

#[test]
fn power_ideals_have_linear_shifts() {
    for n in 1..=4 {
        for a in 1..=3 {
            let spec = ideal_powers(n, a).unwrap();
            let t = betti_from_intervals(&spec.lattice().unwrap(), Field::Rational).t();
            assert_eq!(t, spec.expected.t.unwrap().0);
        }
    }
}

#[test]
fn small_resolutions() {
    let l = lattice_of(&["x", "y", "z"], &["x*y", "x*z", "y*z"]);
    let r = synor_resolution(&l, Field::Rational).unwrap();
    assert_eq!(r.ranks(), vec![1, 3, 2]);
    assert!(certify_resolution(&r, &l).is_certified());
    let l = lattice_of(&["x", "y"], &["x^2*y"]);
    let r = synor_resolution(&l, Field::Rational).unwrap();
    assert_eq!(r.ranks(), vec![1, 1]);
    let text = betti_from_intervals(&l, Field::Rational).to_text();
    assert_eq!(text, "       0 1\ntotal: 1 1\n    0: 1 .\n    1: . .\n    2: . 1\n");
}

#[test]
fn corpus_files_round_trip() {
    for spec in full_corpus() {
        let again = IdealSpec::parse(spec.name.clone(), &spec.to_text()).unwrap();
        assert_eq!(again.generators, spec.generators);
        assert_eq!(again.vars, spec.vars);
    }
}

#[test]
fn gf2_tables_can_differ_but_agree_on_degree_one() {
    let gf2 = Field::prime(2).unwrap();
    for spec in full_corpus().into_iter().take(16) {
        let l = spec.lattice().unwrap();
        let a = betti_from_intervals(&l, Field::Rational);
        let b = betti_from_intervals(&l, gf2);
        assert_eq!(a.totals().get(1), b.totals().get(1));
    }
}
