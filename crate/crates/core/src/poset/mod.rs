//! Finite posets, lattices and LCM lattices of monomial ideals.

mod enumerate;
mod lcm;

use std::collections::BinaryHeap;
use std::cmp::Reverse;
use std::ops::Deref;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use enumerate::{enumerate_lattices, enumerate_lattices_capped, DEFAULT_LATTICE_CAP};
pub use lcm::LcmLattice;

/// A finite poset on ids `0..n`.
///
/// The order is stored as two dense bit matrices (up-sets and down-sets).
/// `origin` records, for induced subposets, the id each element had in the
/// poset it was cut out of (composed through repeated restriction).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    n: usize,
    words: usize,
    up: Vec<u64>,
    down: Vec<u64>,
    covers: Vec<Vec<usize>>,
    linear_extension: Vec<usize>,
    origin: Vec<usize>,
}

fn word_count(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

impl Poset {
    pub fn empty() -> Self {
        Poset::from_leq(0, |_, _| false).expect("empty poset")
    }

    /// Builds a poset from a `leq` predicate, checking the partial-order axioms.
    pub fn from_leq(n: usize, leq: impl Fn(usize, usize) -> bool) -> Result<Self> {
        let words = word_count(n);
        let mut up = vec![0u64; n * words];
        let mut down = vec![0u64; n * words];
        for x in 0..n {
            for y in 0..n {
                if leq(x, y) {
                    up[x * words + y / 64] |= 1 << (y % 64);
                    down[y * words + x / 64] |= 1 << (x % 64);
                }
            }
        }
        let mut p = Poset {
            n,
            words,
            up,
            down,
            covers: Vec::new(),
            linear_extension: Vec::new(),
            origin: (0..n).collect(),
        };
        p.validate()?;
        p.finish();
        Ok(p)
    }

    /// Builds a poset as the reflexive-transitive closure of `relations`
    /// (pairs `(x, y)` meaning `x < y`).
    #[allow(clippy::needless_range_loop)]
    pub fn from_relations(n: usize, relations: &[(usize, usize)]) -> Result<Self> {
        let mut rel = vec![vec![false; n]; n];
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(x, y) in relations {
            if x >= n || y >= n {
                return Err(Error::Index { index: x.max(y), max: n.saturating_sub(1) });
            }
            rel[x][y] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if rel[i][k] {
                    for j in 0..n {
                        if rel[k][j] {
                            rel[i][j] = true;
                        }
                    }
                }
            }
        }
        Poset::from_leq(n, |x, y| rel[x][y])
    }

    fn validate(&self) -> Result<()> {
        for x in 0..self.n {
            if !self.leq(x, x) {
                return Err(Error::Validation(format!("relation not reflexive at {x}")));
            }
            for y in 0..self.n {
                if x != y && self.leq(x, y) && self.leq(y, x) {
                    return Err(Error::Validation(format!("relation not antisymmetric: {x}, {y}")));
                }
                if self.leq(x, y) {
                    for z in self.up_set(y) {
                        if !self.leq(x, z) {
                            return Err(Error::Validation(format!(
                                "relation not transitive: {x} <= {y} <= {z}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn finish(&mut self) {
        let n = self.n;
        self.covers = (0..n)
            .map(|x| {
                self.up_set(x)
                    .filter(|&y| y != x && self.open_between(x, y).next().is_none())
                    .collect()
            })
            .collect();
        // Kahn's algorithm, always emitting the smallest available id.
        let mut indeg: Vec<usize> = (0..n).map(|x| self.lower_covers(x).count()).collect();
        let mut heap: BinaryHeap<Reverse<usize>> =
            (0..n).filter(|&x| indeg[x] == 0).map(Reverse).collect();
        let mut ext = Vec::with_capacity(n);
        while let Some(Reverse(x)) = heap.pop() {
            ext.push(x);
            for &y in &self.covers[x] {
                indeg[y] -= 1;
                if indeg[y] == 0 {
                    heap.push(Reverse(y));
                }
            }
        }
        self.linear_extension = ext;
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.up[x * self.words + y / 64] >> (y % 64) & 1 == 1
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn comparable(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }

    fn bits(row: &[u64]) -> impl Iterator<Item = usize> + '_ {
        row.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(w * 64 + b)
            })
        })
    }

    fn up_row(&self, x: usize) -> &[u64] {
        &self.up[x * self.words..(x + 1) * self.words]
    }

    fn down_row(&self, x: usize) -> &[u64] {
        &self.down[x * self.words..(x + 1) * self.words]
    }

    /// All `y >= x`, ascending by id.
    pub fn up_set(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        Self::bits(self.up_row(x))
    }

    /// All `y <= x`, ascending by id.
    pub fn down_set(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        Self::bits(self.down_row(x))
    }

    /// All `y < x`, ascending by id.
    pub fn strictly_below(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.down_set(x).filter(move |&y| y != x)
    }

    pub fn strictly_above(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.up_set(x).filter(move |&y| y != x)
    }

    /// Elements strictly between `x` and `y`.
    pub fn open_between(&self, x: usize, y: usize) -> impl Iterator<Item = usize> + '_ {
        self.up_row(x)
            .iter()
            .zip(self.down_row(y))
            .enumerate()
            .flat_map(|(w, (a, b))| {
                let mut bits = a & b;
                std::iter::from_fn(move || {
                    if bits == 0 {
                        return None;
                    }
                    let bit = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(w * 64 + bit)
                })
            })
            .filter(move |&z| z != x && z != y)
    }

    pub fn upper_covers(&self, x: usize) -> &[usize] {
        &self.covers[x]
    }

    pub fn lower_covers(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        self.strictly_below(x).filter(move |&y| self.covers[y].contains(&x))
    }

    /// Cover relations `(x, y)` with `x` covered by `y`, sorted.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|x| self.covers[x].iter().map(move |&y| (x, y))).collect()
    }

    pub fn linear_extension(&self) -> &[usize] {
        &self.linear_extension
    }

    /// Id of each element in the poset this one was cut from.
    pub fn origin(&self) -> &[usize] {
        &self.origin
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.strictly_below(x).next().is_none()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.covers[x].is_empty()).collect()
    }

    /// The unique maximal element, if the poset has a maximum.
    pub fn maximum(&self) -> Option<usize> {
        match self.maximal_elements().as_slice() {
            [m] => Some(*m),
            _ => None,
        }
    }

    pub fn minimum(&self) -> Option<usize> {
        match self.minimal_elements().as_slice() {
            [m] => Some(*m),
            _ => None,
        }
    }

    pub fn is_order_ideal(&self, members: &[bool]) -> bool {
        (0..self.n).all(|x| !members[x] || self.down_set(x).all(|y| members[y]))
    }

    /// Induced subposet on `keep` (sorted and deduplicated first). Element `i`
    /// of the result is `keep[i]`, and `origin` is composed accordingly.
    pub fn induced(&self, keep: &[usize]) -> Poset {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut p = Poset::from_leq(keep.len(), |i, j| self.leq(keep[i], keep[j]))
            .expect("induced order is a partial order");
        p.origin = keep.iter().map(|&k| self.origin[k]).collect();
        p
    }

    pub fn induced_where(&self, keep: impl Fn(usize) -> bool) -> Poset {
        let ids: Vec<usize> = (0..self.n).filter(|&x| keep(x)).collect();
        self.induced(&ids)
    }

    /// Induced subposet on `{x : a < x < b}`.
    pub fn open_interval(&self, a: usize, b: usize) -> Result<Poset> {
        self.check_id(a)?;
        self.check_id(b)?;
        if !self.leq(a, b) {
            return Err(Error::domain(format!("{a} is not below {b}")));
        }
        let ids: Vec<usize> = self.open_between(a, b).collect();
        Ok(self.induced(&ids))
    }

    /// `P_{<=x}` or `P_{<x}`.
    pub fn ideal_below(&self, x: usize, strict: bool) -> Result<Poset> {
        self.check_id(x)?;
        let ids: Vec<usize> = self.down_set(x).filter(|&y| !strict || y != x).collect();
        Ok(self.induced(&ids))
    }

    pub(crate) fn check_id(&self, x: usize) -> Result<()> {
        if x >= self.n {
            return Err(Error::Index { index: x, max: self.n.saturating_sub(1) });
        }
        Ok(())
    }

    fn least_of(&self, candidates: &[u64]) -> Option<usize> {
        // u is least in the set iff the set is contained in up(u)
        Self::bits(candidates).find(|&u| {
            candidates.iter().zip(self.up_row(u)).all(|(c, row)| c & !row == 0)
        })
    }

    fn greatest_of(&self, candidates: &[u64]) -> Option<usize> {
        Self::bits(candidates).find(|&u| {
            candidates.iter().zip(self.down_row(u)).all(|(c, row)| c & !row == 0)
        })
    }

    /// Least upper bound, if it exists.
    pub fn join_of(&self, x: usize, y: usize) -> Option<usize> {
        let ub: Vec<u64> = self.up_row(x).iter().zip(self.up_row(y)).map(|(a, b)| a & b).collect();
        self.least_of(&ub)
    }

    /// Greatest lower bound, if it exists.
    pub fn meet_of(&self, x: usize, y: usize) -> Option<usize> {
        let lb: Vec<u64> =
            self.down_row(x).iter().zip(self.down_row(y)).map(|(a, b)| a & b).collect();
        self.greatest_of(&lb)
    }

    /// True iff the poset is nonempty and every pair has a join and a meet.
    pub fn is_lattice(&self) -> bool {
        self.n > 0
            && (0..self.n).all(|x| {
                (x + 1..self.n).all(|y| self.join_of(x, y).is_some() && self.meet_of(x, y).is_some())
            })
    }

    pub fn to_json(&self) -> LatticeJson {
        LatticeJson {
            n: self.n,
            covers: self.cover_pairs().into_iter().map(|(a, b)| [a, b]).collect(),
            labels: None,
        }
    }
}

/// A finite lattice with precomputed join and meet tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    poset: Poset,
    join: Vec<usize>,
    meet: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl Lattice {
    pub fn from_poset(poset: Poset) -> Result<Self> {
        let n = poset.len();
        if n == 0 {
            return Err(Error::Validation("the empty poset is not a lattice".into()));
        }
        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        for x in 0..n {
            for y in x..n {
                let j = poset
                    .join_of(x, y)
                    .ok_or_else(|| Error::Validation(format!("{x} and {y} have no join")))?;
                let m = poset
                    .meet_of(x, y)
                    .ok_or_else(|| Error::Validation(format!("{x} and {y} have no meet")))?;
                join[x * n + y] = j;
                join[y * n + x] = j;
                meet[x * n + y] = m;
                meet[y * n + x] = m;
            }
        }
        let bottom = poset.minimum().expect("finite lattice has a bottom");
        let top = poset.maximum().expect("finite lattice has a top");
        Ok(Lattice { poset, join, meet, bottom, top })
    }

    pub fn from_json(json: &LatticeJson) -> Result<Self> {
        let covers: Vec<(usize, usize)> = json.covers.iter().map(|[a, b]| (*a, *b)).collect();
        Lattice::from_poset(Poset::from_relations(json.n, &covers)?)
    }

    /// The `n`-element chain `0 < 1 < ... < n-1`.
    pub fn chain(n: usize) -> Self {
        Lattice::from_poset(Poset::from_leq(n, |x, y| x <= y).expect("chain")).expect("chain")
    }

    /// The Boolean lattice of subsets of an `n`-set, ids being bitmasks.
    pub fn boolean(n: u32) -> Self {
        let size = 1usize << n;
        Lattice::from_poset(Poset::from_leq(size, |x, y| x & y == x).expect("boolean"))
            .expect("boolean")
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.poset.n + y]
    }

    pub fn meet(&self, x: usize, y: usize) -> usize {
        self.meet[x * self.poset.n + y]
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn atoms(&self) -> Vec<usize> {
        self.poset.upper_covers(self.bottom).to_vec()
    }

    /// `(L - {bottom}, L - {bottom, top})`.
    ///
    /// The first poset keeps the top element, so it has a maximum and the top
    /// can be a synor of it.
    pub fn proper_parts(&self) -> Result<(Poset, Poset)> {
        if self.poset.len() < 2 {
            return Err(Error::domain("proper parts need at least two elements"));
        }
        let (b, t) = (self.bottom, self.top);
        Ok((
            self.poset.induced_where(|x| x != b),
            self.poset.induced_where(|x| x != b && x != t),
        ))
    }

    /// The closed interval `[a, b]` as a lattice; `origin` maps back.
    pub fn closed_interval(&self, a: usize, b: usize) -> Result<Lattice> {
        self.poset.check_id(a)?;
        self.poset.check_id(b)?;
        if !self.poset.leq(a, b) {
            return Err(Error::domain(format!("{a} is not below {b}")));
        }
        let ids: Vec<usize> =
            self.poset.up_set(a).filter(|&x| self.poset.leq(x, b)).collect();
        Lattice::from_poset(self.poset.induced(&ids))
    }

    /// Relabels element `x` as `perm[x]`.
    pub fn relabeled(&self, perm: &[usize]) -> Lattice {
        let n = self.poset.len();
        let mut inv = vec![0; n];
        for (x, &p) in perm.iter().enumerate() {
            inv[p] = x;
        }
        Lattice::from_poset(
            Poset::from_leq(n, |a, b| self.poset.leq(inv[a], inv[b])).expect("relabeled order"),
        )
        .expect("relabeled lattice")
    }
}

impl Deref for Lattice {
    type Target = Poset;

    fn deref(&self) -> &Poset {
        &self.poset
    }
}

/// JSON dump of a poset or lattice: cover relations plus optional labels.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub n: usize,
    pub covers: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn antichain(n: usize) -> Poset {
        Poset::from_leq(n, |x, y| x == y).unwrap()
    }

    #[test]
    fn rejects_non_orders() {
        assert!(Poset::from_leq(2, |x, y| x == y || (x, y) == (0, 1) || (x, y) == (1, 0)).is_err());
        assert!(Poset::from_leq(2, |_, _| false).is_err());
        let not_transitive = |x: usize, y: usize| x == y || (x, y) == (0, 1) || (x, y) == (1, 2);
        assert!(Poset::from_leq(3, not_transitive).is_err());
        assert!(Poset::from_relations(3, &[(0, 1), (1, 2)]).unwrap().leq(0, 2));
    }

    #[test]
    fn linear_extension_respects_order() {
        let p = Poset::from_relations(5, &[(4, 0), (3, 1), (0, 2), (1, 2)]).unwrap();
        let ext = p.linear_extension();
        assert_eq!(ext.len(), 5);
        let pos: Vec<usize> = (0..5).map(|x| ext.iter().position(|&e| e == x).unwrap()).collect();
        for x in 0..5 {
            for y in 0..5 {
                if p.lt(x, y) {
                    assert!(pos[x] < pos[y]);
                }
            }
        }
    }

    #[test]
    fn covers_and_intervals() {
        let b3 = Lattice::boolean(3);
        assert_eq!(b3.upper_covers(0), &[1, 2, 4]);
        assert_eq!(b3.atoms(), vec![1, 2, 4]);
        assert_eq!(b3.open_interval(0, 7).unwrap().len(), 6);
        assert!(b3.open_interval(3, 3).unwrap().is_empty());
        assert!(b3.open_interval(0, 1).unwrap().is_empty());
        assert!(matches!(b3.open_interval(1, 2), Err(Error::Domain(_))));
        let below = b3.ideal_below(7, false).unwrap();
        assert_eq!(below.len(), 8);
        assert!(b3.ideal_below(0, true).unwrap().is_empty());
        let interval = b3.open_interval(1, 7).unwrap();
        assert_eq!(interval.origin(), &[3, 5]);
    }

    #[test]
    fn proper_parts_cardinalities() {
        let (bar, check) = Lattice::chain(2).proper_parts().unwrap();
        assert_eq!((bar.len(), check.len()), (1, 0));
        assert_eq!(bar.origin(), &[1]);
        let (bar, check) = Lattice::boolean(3).proper_parts().unwrap();
        assert_eq!((bar.len(), check.len()), (7, 6));
        assert!(Lattice::chain(1).proper_parts().is_err());
    }

    #[test]
    fn lattice_recognition() {
        assert!(Lattice::chain(4).is_lattice());
        assert!(!antichain(2).is_lattice());
        assert!(!Poset::empty().is_lattice());
        // bowtie: two minima below two maxima has no join
        let bowtie = Poset::from_relations(4, &[(0, 2), (0, 3), (1, 2), (1, 3)]).unwrap();
        assert!(!bowtie.is_lattice());
        let b3 = Lattice::boolean(3);
        assert_eq!(b3.join(1, 2), 3);
        assert_eq!(b3.meet(3, 6), 2);
        assert_eq!((b3.bottom(), b3.top()), (0, 7));
    }

    #[test]
    fn json_roundtrip() {
        let b3 = Lattice::boolean(3);
        let back = Lattice::from_json(&b3.to_json()).unwrap();
        assert_eq!(back, b3);
    }
}
