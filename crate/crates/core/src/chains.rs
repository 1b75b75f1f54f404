//! Order chains, multichains, formal chain groups and reduced homology of
//! order complexes.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::algebra::{Field, Scalar};
use crate::error::{Error, Result};
use crate::linalg::{homology_representatives, Reducer, SparseVec};
use crate::poset::Poset;

/// A tuple of element ids, top first. The empty tuple is the (-1)-chain.
pub trait Simplex: Clone + Ord + Hash + fmt::Debug {
    fn from_vec(elements: Vec<usize>) -> Self;
    fn elements(&self) -> &[usize];
    /// Glyph between consecutive entries in text dumps.
    const SEPARATOR: &'static str;

    fn dim(&self) -> isize {
        self.elements().len() as isize - 1
    }

    fn top(&self) -> Option<usize> {
        self.elements().first().copied()
    }

    fn bottom(&self) -> Option<usize> {
        self.elements().last().copied()
    }

    fn is_empty(&self) -> bool {
        self.elements().is_empty()
    }

    /// Deletes position `j`.
    fn face(&self, j: usize) -> Result<Self> {
        let e = self.elements();
        if j >= e.len() {
            return Err(Error::Index { index: j, max: e.len().saturating_sub(1) });
        }
        let mut out = e.to_vec();
        out.remove(j);
        Ok(Self::from_vec(out))
    }
}

/// A strictly decreasing chain `c_0 > c_1 > ... > c_k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OrderChain(Vec<usize>);

/// A weakly decreasing chain `c_0 >= c_1 >= ... >= c_k`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MultiChain(Vec<usize>);

impl Simplex for OrderChain {
    const SEPARATOR: &'static str = ">";

    fn from_vec(elements: Vec<usize>) -> Self {
        OrderChain(elements)
    }

    fn elements(&self) -> &[usize] {
        &self.0
    }
}

impl Simplex for MultiChain {
    const SEPARATOR: &'static str = ">=";

    fn from_vec(elements: Vec<usize>) -> Self {
        MultiChain(elements)
    }

    fn elements(&self) -> &[usize] {
        &self.0
    }
}

impl OrderChain {
    pub fn empty() -> Self {
        OrderChain(Vec::new())
    }

    /// Checks strict decrease in `p`.
    pub fn new(p: &Poset, elements: Vec<usize>) -> Result<Self> {
        for &x in &elements {
            p.check_id(x)?;
        }
        for w in elements.windows(2) {
            if !p.lt(w[1], w[0]) {
                return Err(Error::Validation(format!(
                    "order chain must strictly decrease: {} then {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(OrderChain(elements))
    }

    /// Trusted constructor for tuples already known to decrease.
    pub fn from_decreasing(elements: Vec<usize>) -> Self {
        OrderChain(elements)
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn to_multichain(&self) -> MultiChain {
        MultiChain(self.0.clone())
    }
}

impl MultiChain {
    pub fn new(p: &Poset, elements: Vec<usize>) -> Result<Self> {
        for &x in &elements {
            p.check_id(x)?;
        }
        for w in elements.windows(2) {
            if !p.leq(w[1], w[0]) {
                return Err(Error::Validation(format!(
                    "multichain must weakly decrease: {} then {}",
                    w[0], w[1]
                )));
            }
        }
        Ok(MultiChain(elements))
    }

    pub fn from_decreasing(elements: Vec<usize>) -> Self {
        MultiChain(elements)
    }

    pub fn has_repeat(&self) -> bool {
        self.0.windows(2).any(|w| w[0] == w[1])
    }
}

/// A finite linear combination of chains of one dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormalChain<C = OrderChain> {
    dim: isize,
    field: Field,
    terms: BTreeMap<C, Scalar>,
}

impl<C: Simplex> FormalChain<C> {
    pub fn zero(field: Field, dim: isize) -> Self {
        FormalChain { dim, field, terms: BTreeMap::new() }
    }

    pub fn basis(field: Field, c: C) -> Self {
        let mut out = Self::zero(field, c.dim());
        out.add_term(c, field.one());
        out
    }

    pub fn from_terms(
        field: Field,
        dim: isize,
        terms: impl IntoIterator<Item = (C, Scalar)>,
    ) -> Result<Self> {
        let mut out = Self::zero(field, dim);
        for (c, s) in terms {
            if c.dim() != dim {
                return Err(Error::Dimension {
                    left: c.elements().len(),
                    right: (dim + 1) as usize,
                });
            }
            out.add_term(c, s);
        }
        Ok(out)
    }

    pub fn dim(&self) -> isize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&C, &Scalar)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, c: &C) -> Scalar {
        self.terms.get(c).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Adds `s * c`. Panics if `c` has the wrong dimension.
    pub fn add_term(&mut self, c: C, s: Scalar) {
        assert_eq!(c.dim(), self.dim, "chain dimension mismatch");
        if s.is_zero() {
            return;
        }
        match self.terms.entry(c) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(s);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &s;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, s: &Scalar, other: &Self) {
        for (c, t) in &other.terms {
            self.add_term(c.clone(), s * t);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(&self.field.one(), other);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(&-self.field.one(), other);
        out
    }

    pub fn scaled(&self, s: &Scalar) -> Self {
        let mut out = Self::zero(self.field, self.dim);
        out.add_scaled(s, self);
        out
    }

    /// Renames every element id through `f`.
    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> Self {
        let mut out = Self::zero(self.field, self.dim);
        for (c, s) in &self.terms {
            out.add_term(C::from_vec(c.elements().iter().map(|&x| f(x)).collect()), s.clone());
        }
        out
    }

    /// Largest elements occurring as tops, ascending.
    pub fn tops(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.terms.keys().filter_map(|c| c.top()).collect();
        t.sort_unstable();
        t.dedup();
        t
    }

    /// All element ids occurring anywhere, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> =
            self.terms.keys().flat_map(|c| c.elements().iter().copied()).collect();
        s.sort_unstable();
        s.dedup();
        s
    }

    /// Text dump with ids rendered by `name`, e.g. `+3(a>b) -1(c)`.
    pub fn display_with<'a, F: Fn(usize) -> String + 'a>(&'a self, name: F) -> impl fmt::Display + 'a {
        ChainDisplay { chain: self, name }
    }
}

struct ChainDisplay<'a, C, F> {
    chain: &'a FormalChain<C>,
    name: F,
}

impl<C: Simplex, F: Fn(usize) -> String> fmt::Display for ChainDisplay<'_, C, F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.chain.is_zero() {
            return write!(f, "0");
        }
        for (i, (c, s)) in self.chain.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            let text = s.to_string();
            if text.starts_with('-') {
                write!(f, "{text}(")?;
            } else {
                write!(f, "+{text}(")?;
            }
            for (j, &x) in c.elements().iter().enumerate() {
                if j > 0 {
                    write!(f, "{}", C::SEPARATOR)?;
                }
                write!(f, "{}", (self.name)(x))?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl<C: Simplex> fmt::Display for FormalChain<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(|x| x.to_string()))
    }
}

/// `sum_j (-1)^j face_j`. The boundary of a (-1)-chain is zero in dimension -2.
pub fn boundary<C: Simplex>(c: &FormalChain<C>) -> FormalChain<C> {
    let mut out = FormalChain::zero(c.field, c.dim - 1);
    if c.dim < 0 {
        return out;
    }
    let minus = -c.field.one();
    for (chain, s) in &c.terms {
        let mut sign = s.clone();
        for j in 0..chain.elements().len() {
            out.add_term(chain.face(j).expect("in range"), sign.clone());
            sign = &sign * &minus;
        }
    }
    out
}

/// Deletes position `j` of a multichain.
pub fn face(c: &MultiChain, j: usize) -> Result<MultiChain> {
    c.face(j)
}

/// Drops multichains with a repeated entry; the rest become order chains.
pub fn normalize(c: &FormalChain<MultiChain>) -> FormalChain<OrderChain> {
    let mut out = FormalChain::zero(c.field, c.dim);
    for (m, s) in &c.terms {
        if !m.has_repeat() {
            out.add_term(OrderChain(m.0.clone()), s.clone());
        }
    }
    out
}

/// `c * gamma`: prefixes every chain of `gamma` with `c`. Every chain of
/// `gamma` must lie strictly below the last element of `c`.
pub fn concat(p: &Poset, c: &OrderChain, gamma: &FormalChain) -> Result<FormalChain> {
    let mut out = FormalChain::zero(gamma.field, c.dim() + gamma.dim + 1);
    for (g, s) in &gamma.terms {
        if let (Some(low), Some(high)) = (c.bottom(), g.top()) {
            if !p.lt(high, low) {
                return Err(Error::domain(format!(
                    "chain with top {high} is not supported strictly below {low}"
                )));
            }
        }
        let mut e = c.0.clone();
        e.extend_from_slice(&g.0);
        out.add_term(OrderChain(e), s.clone());
    }
    Ok(out)
}

/// The part of `c` made of chains whose top element is `x`.
pub fn graded_component<C: Simplex>(c: &FormalChain<C>, x: usize) -> FormalChain<C> {
    let mut out = FormalChain::zero(c.field, c.dim);
    for (chain, s) in &c.terms {
        if chain.top() == Some(x) {
            out.add_term(chain.clone(), s.clone());
        }
    }
    out
}

/// All order chains of `p`, grouped by dimension: entry `k + 1` holds the
/// k-chains in lexicographic order.
pub fn order_chains(p: &Poset) -> Vec<Vec<OrderChain>> {
    let mut by_dim: Vec<Vec<OrderChain>> = vec![vec![OrderChain::empty()]];
    let below: Vec<Vec<usize>> = (0..p.len()).map(|x| p.strictly_below(x).collect()).collect();
    let mut stack = Vec::new();
    fn walk(
        below: &[Vec<usize>],
        stack: &mut Vec<usize>,
        by_dim: &mut Vec<Vec<OrderChain>>,
    ) {
        if by_dim.len() <= stack.len() {
            by_dim.push(Vec::new());
        }
        by_dim[stack.len()].push(OrderChain(stack.clone()));
        let last = *stack.last().expect("nonempty");
        for &y in &below[last] {
            stack.push(y);
            walk(below, stack, by_dim);
            stack.pop();
        }
    }
    for x in 0..p.len() {
        stack.push(x);
        walk(&below, &mut stack, &mut by_dim);
        stack.pop();
    }
    by_dim
}

/// Order chains of dimension `k` only.
pub fn order_chains_of_dim(p: &Poset, k: isize) -> Vec<OrderChain> {
    if k < -1 {
        return Vec::new();
    }
    order_chains(p).into_iter().nth((k + 1) as usize).unwrap_or_default()
}

/// Cycles whose classes form a basis of reduced homology in one dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyBasis {
    pub dim: isize,
    pub cycles: Vec<FormalChain>,
}

impl HomologyBasis {
    pub fn rank(&self) -> usize {
        self.cycles.len()
    }
}

pub(crate) struct ChainIndex {
    chains: Vec<OrderChain>,
    index: HashMap<OrderChain, usize>,
}

impl ChainIndex {
    pub(crate) fn new(chains: Vec<OrderChain>) -> Self {
        let index = chains.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        ChainIndex { chains, index }
    }

    pub(crate) fn vector(&self, c: &FormalChain) -> Option<SparseVec> {
        let mut pairs = Vec::with_capacity(c.len());
        for (chain, s) in c.terms() {
            pairs.push((*self.index.get(chain)?, s.clone()));
        }
        Some(SparseVec::from_pairs(pairs))
    }

    pub(crate) fn chain(&self, field: Field, dim: isize, v: &SparseVec) -> FormalChain {
        let mut out = FormalChain::zero(field, dim);
        for (i, s) in v.iter() {
            out.add_term(self.chains[i].clone(), s.clone());
        }
        out
    }
}

fn boundary_vectors(field: Field, chains: &[OrderChain], lower: &ChainIndex) -> Vec<SparseVec> {
    chains
        .iter()
        .map(|c| {
            lower
                .vector(&boundary(&FormalChain::basis(field, c.clone())))
                .expect("faces of chains are chains")
        })
        .collect()
}

/// Basis of reduced homology `H_k(P)` over `field`, as echelon-reduced cycles.
pub fn homology(p: &Poset, k: isize, field: Field) -> HomologyBasis {
    if k < -1 {
        return HomologyBasis { dim: k, cycles: Vec::new() };
    }
    let mut all = order_chains(p);
    let take = |all: &mut Vec<Vec<OrderChain>>, d: isize| -> Vec<OrderChain> {
        if d < -1 {
            return Vec::new();
        }
        all.get_mut((d + 1) as usize).map(std::mem::take).unwrap_or_default()
    };
    let upper = take(&mut all, k + 1);
    let current = ChainIndex::new(take(&mut all, k));
    let lower = ChainIndex::new(take(&mut all, k - 1));
    let columns: Vec<SparseVec> = if k == -1 {
        vec![SparseVec::new(); current.chains.len()]
    } else {
        boundary_vectors(field, &current.chains, &lower)
    };
    let bounds = boundary_vectors(field, &upper, &current);
    let reps = homology_representatives(field, columns.iter().enumerate(), bounds.iter());
    HomologyBasis { dim: k, cycles: reps.iter().map(|v| current.chain(field, k, v)).collect() }
}

/// Reduced Betti numbers `dim H_k(P)` for `k = -1 ..= dim P`, indexed by `k + 1`.
pub fn homology_ranks(p: &Poset, field: Field) -> Vec<usize> {
    let all = order_chains(p);
    let indices: Vec<ChainIndex> = all.into_iter().map(ChainIndex::new).collect();
    // rank of the boundary out of dimension k, indexed by k + 1
    let mut ranks = vec![0usize; indices.len() + 1];
    for d in 1..indices.len() {
        let vecs = boundary_vectors(field, &indices[d].chains, &indices[d - 1]);
        ranks[d] = crate::linalg::rank(field, vecs.iter());
    }
    (0..indices.len())
        .map(|d| indices[d].chains.len() - ranks[d] - ranks[d + 1])
        .collect()
}

/// `dim H_k(P)`, zero outside the range of the order complex.
pub fn reduced_betti(p: &Poset, k: isize, field: Field) -> usize {
    if k < -1 {
        return 0;
    }
    homology_ranks(p, field).get((k + 1) as usize).copied().unwrap_or(0)
}

/// True iff `c` (a chain over ids of `p`) is a boundary in the order complex of `p`.
pub fn is_boundary(p: &Poset, c: &FormalChain) -> Result<bool> {
    if c.is_zero() {
        return Ok(true);
    }
    let upper = order_chains_of_dim(p, c.dim + 1);
    let current = ChainIndex::new(order_chains_of_dim(p, c.dim));
    let target = current
        .vector(c)
        .ok_or_else(|| Error::domain("chain is not supported in the poset"))?;
    let mut red = Reducer::new(c.field, false);
    for v in boundary_vectors(c.field, &upper, &current) {
        red.insert(v, 0);
    }
    Ok(red.contains(&target))
}

/// An elementary tensor `a (x) b` of two chains.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryTensor {
    pub left: FormalChain,
    pub right: FormalChain,
}

/// The two summands of the tensor differential on `a (x) b`:
/// `(da (x) b, (-1)^(i+1) a (x) db)` where `i = dim a`.
pub fn tensor_boundary(a: &FormalChain, b: &FormalChain) -> (ElementaryTensor, ElementaryTensor) {
    let sign = if (a.dim + 1) % 2 == 0 { a.field.one() } else { -a.field.one() };
    (
        ElementaryTensor { left: boundary(a), right: b.clone() },
        ElementaryTensor { left: a.scaled(&sign), right: boundary(b) },
    )
}
