//! Synor complexes: a strictly graded subcomplex of the order complex with
//! one generator per homology class of each strict lower ideal.

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use serde_json::{json, Value};

use crate::algebra::{Field, Scalar};
use crate::chains::{
    boundary, homology_ranks, is_boundary, ChainIndex, FormalChain, HomologyBasis, OrderChain,
    Simplex,
};
use crate::error::{Error, Result};
use crate::linalg::{homology_representatives, Reducer, SparseVec};
use crate::poset::Poset;

/// One basis element `x * zeta` of the complex. `element` is `None` only for
/// the (-1)-generator, the empty chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub element: Option<usize>,
    pub dim: isize,
    /// Differential in generator coordinates (ids of (dim-1)-generators).
    pub delta: SparseVec,
}

/// A synor complex of a poset with its embedding `phi` into order chains.
///
/// Generator 0 is the empty chain. Differentials and all other synor chains
/// are sparse vectors over generator ids.
#[derive(Debug)]
pub struct SynorComplex {
    poset: Poset,
    field: Field,
    gens: Vec<Generator>,
    by_dim: Vec<Vec<usize>>,
    by_element: Vec<Vec<usize>>,
    phi: Vec<OnceLock<FormalChain>>,
}

/// Id of the (-1)-generator.
pub const EMPTY: usize = 0;

impl SynorComplex {
    /// Builds the complex inductively over the canonical linear extension.
    /// At each `x` the new generators correspond to echelon-reduced cycle
    /// representatives of the homology of the complex restricted below `x`.
    pub fn build(poset: &Poset, field: Field) -> Self {
        let n = poset.len();
        let mut s = SynorComplex {
            poset: poset.clone(),
            field,
            gens: vec![Generator { element: None, dim: -1, delta: SparseVec::new() }],
            by_dim: vec![vec![EMPTY]],
            by_element: vec![Vec::new(); n],
            phi: Vec::new(),
        };
        let mut member = vec![false; n];
        for &x in poset.linear_extension() {
            member.iter_mut().for_each(|m| *m = false);
            for y in poset.strictly_below(x) {
                member[y] = true;
            }
            let top = s.by_dim.len() as isize - 1;
            let fresh: Vec<(isize, SparseVec)> = (-1..top)
                .flat_map(|d| s.cycle_basis(&member, d).into_iter().map(move |z| (d + 1, z)))
                .collect();
            for (dim, delta) in fresh {
                s.push(Generator { element: Some(x), dim, delta });
            }
        }
        s.phi = (0..s.gens.len()).map(|_| OnceLock::new()).collect();
        s
    }

    fn push(&mut self, g: Generator) -> usize {
        let id = self.gens.len();
        let slot = (g.dim + 1) as usize;
        if self.by_dim.len() <= slot {
            self.by_dim.resize(slot + 1, Vec::new());
        }
        self.by_dim[slot].push(id);
        if let Some(x) = g.element {
            self.by_element[x].push(id);
        }
        self.gens.push(g);
        id
    }

    fn inside(&self, member: &[bool], g: usize) -> bool {
        self.gens[g].element.is_none_or(|e| member[e])
    }

    /// Homology representatives in dimension `d` of the subcomplex on the
    /// order ideal `member` (the empty generator always belongs).
    fn cycle_basis(&self, member: &[bool], d: isize) -> Vec<SparseVec> {
        let cols: Vec<(usize, &SparseVec)> = self
            .generators_of_dim(d)
            .iter()
            .filter(|&&g| self.inside(member, g))
            .map(|&g| (g, &self.gens[g].delta))
            .collect();
        let bounds: Vec<&SparseVec> = self
            .generators_of_dim(d + 1)
            .iter()
            .filter(|&&g| self.inside(member, g))
            .map(|&g| &self.gens[g].delta)
            .collect();
        homology_representatives(self.field, cols, bounds)
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn generator(&self, g: usize) -> &Generator {
        &self.gens[g]
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn generators_of_dim(&self, d: isize) -> &[usize] {
        if d < -1 {
            return &[];
        }
        self.by_dim.get((d + 1) as usize).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn generators_at(&self, x: usize) -> &[usize] {
        &self.by_element[x]
    }

    /// Generators at `x` of dimension `d`.
    pub fn generators_at_dim(&self, x: usize, d: isize) -> Vec<usize> {
        self.by_element[x].iter().copied().filter(|&g| self.gens[g].dim == d).collect()
    }

    pub fn max_dim(&self) -> isize {
        self.by_dim.len() as isize - 2
    }

    /// Differential of a synor chain given in generator coordinates.
    pub fn delta(&self, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (g, s) in v.iter() {
            out.axpy(s, &self.gens[g].delta);
        }
        out
    }

    /// The order-chain image of a generator.
    pub fn phi(&self, g: usize) -> &FormalChain {
        self.phi[g].get_or_init(|| {
            let gen = &self.gens[g];
            match gen.element {
                None => FormalChain::basis(self.field, OrderChain::empty()),
                Some(x) => {
                    let below = self.phi_of(&gen.delta, gen.dim - 1);
                    let mut out = FormalChain::zero(self.field, gen.dim);
                    for (c, s) in below.terms() {
                        let mut e = Vec::with_capacity(c.elements().len() + 1);
                        e.push(x);
                        e.extend_from_slice(c.elements());
                        out.add_term(OrderChain::from_decreasing(e), s.clone());
                    }
                    out
                }
            }
        })
    }

    /// The order-chain image of a synor chain of dimension `dim`.
    pub fn phi_of(&self, v: &SparseVec, dim: isize) -> FormalChain {
        let mut out = FormalChain::zero(self.field, dim);
        for (g, s) in v.iter() {
            out.add_scaled(s, self.phi(g));
        }
        out
    }

    /// Writes an order-chain combination as a synor chain, if it is one.
    pub fn express(&self, c: &FormalChain) -> Option<SparseVec> {
        let gens = self.generators_of_dim(c.dim());
        let mut chains: Vec<OrderChain> = gens
            .iter()
            .flat_map(|&g| self.phi(g).terms().map(|(c, _)| c.clone()))
            .chain(c.terms().map(|(c, _)| c.clone()))
            .collect();
        chains.sort();
        chains.dedup();
        let index = ChainIndex::new(chains);
        let mut red = Reducer::new(self.field, true);
        for &g in gens {
            red.insert(index.vector(self.phi(g)).expect("indexed"), g);
        }
        red.solve(&index.vector(c).expect("indexed"))
    }

    /// `(x, i, multiplicity)` for every element carrying `i`-generators.
    pub fn synor_list(&self) -> Vec<(usize, isize, usize)> {
        let mut counts: BTreeMap<(usize, isize), usize> = BTreeMap::new();
        for g in &self.gens {
            if let Some(x) = g.element {
                *counts.entry((x, g.dim)).or_default() += 1;
            }
        }
        counts.into_iter().map(|((x, i), m)| (x, i, m)).collect()
    }

    fn check_ideal(&self, ideal: &[bool]) -> Result<()> {
        if ideal.len() != self.poset.len() {
            return Err(Error::Dimension { left: ideal.len(), right: self.poset.len() });
        }
        if !self.poset.is_order_ideal(ideal) {
            return Err(Error::Validation("subset is not an order ideal".into()));
        }
        Ok(())
    }

    /// The subcomplex on an order ideal, as a synor complex of the induced
    /// poset (whose `origin` maps back to this poset).
    pub fn restrict(&self, ideal: &[bool]) -> Result<SynorComplex> {
        self.check_ideal(ideal)?;
        let keep: Vec<usize> = (0..self.poset.len()).filter(|&x| ideal[x]).collect();
        let poset = self.poset.induced(&keep);
        let mut local = vec![usize::MAX; self.poset.len()];
        for (i, &x) in keep.iter().enumerate() {
            local[x] = i;
        }
        let mut renumber = vec![usize::MAX; self.gens.len()];
        let mut out = SynorComplex {
            field: self.field,
            gens: vec![self.gens[EMPTY].clone()],
            by_dim: vec![vec![EMPTY]],
            by_element: vec![Vec::new(); keep.len()],
            phi: Vec::new(),
            poset,
        };
        renumber[EMPTY] = EMPTY;
        for (g, gen) in self.gens.iter().enumerate().skip(1) {
            let Some(x) = gen.element else { continue };
            if !ideal[x] {
                continue;
            }
            let delta = gen.delta.map_indices(|h| renumber[h]);
            renumber[g] = out.push(Generator { element: Some(local[x]), dim: gen.dim, delta });
        }
        out.phi = (0..out.gens.len()).map(|_| OnceLock::new()).collect();
        Ok(out)
    }

    /// Homology of the subcomplex on an order ideal in dimension `k`; the
    /// cycles are returned as order chains of this poset.
    pub fn synor_homology(&self, ideal: &[bool], k: isize) -> Result<HomologyBasis> {
        self.check_ideal(ideal)?;
        let cycles = self
            .cycle_basis(ideal, k)
            .iter()
            .map(|z| self.phi_of(z, k))
            .collect();
        Ok(HomologyBasis { dim: k, cycles })
    }

    /// Ranks of the restricted complex for `k = -1 ..= max_dim`, indexed by `k + 1`.
    pub fn synor_homology_ranks(&self, ideal: &[bool]) -> Result<Vec<usize>> {
        self.check_ideal(ideal)?;
        Ok((-1..=self.max_dim()).map(|k| self.cycle_basis(ideal, k).len()).collect())
    }

    /// JSON dump: one object per generator with differential and image.
    pub fn to_json(&self, name: impl Fn(usize) -> String) -> Value {
        let gens: Vec<Value> = self
            .gens
            .iter()
            .enumerate()
            .map(|(id, g)| {
                json!({
                    "id": id,
                    "element": g.element.map(&name),
                    "dim": g.dim,
                    "delta": g.delta.iter().map(|(h, s)| json!([h, s.to_string()])).collect::<Vec<_>>(),
                    "phi": self.phi(id).display_with(&name).to_string(),
                })
            })
            .collect();
        json!({ "field": self.field.to_string(), "generators": gens })
    }
}

/// All `(x, i, multiplicity)` with `dim H_{i-1}(P_{<x}) > 0`, computed
/// directly from simplicial homology of each strict lower ideal.
pub fn synors(p: &Poset, field: Field) -> Vec<(usize, isize, usize)> {
    let mut out = Vec::new();
    for x in 0..p.len() {
        let below = p.ideal_below(x, true).expect("valid id");
        for (slot, &r) in homology_ranks(&below, field).iter().enumerate() {
            if r > 0 {
                out.push((x, slot as isize, r));
            }
        }
    }
    out
}

/// A synor chain concentrated at one element: its image is `x * zeta`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrincipalSynorChain {
    pub element: usize,
    pub dim: isize,
    pub coords: SparseVec,
}

impl PrincipalSynorChain {
    pub fn from_generator(s: &SynorComplex, g: usize) -> Result<Self> {
        let gen = s.gens.get(g).ok_or(Error::Index { index: g, max: s.len() - 1 })?;
        let element = gen.element.ok_or_else(|| Error::domain("the empty generator is not principal"))?;
        Ok(PrincipalSynorChain { element, dim: gen.dim, coords: SparseVec::unit(g, s.field) })
    }

    /// Checks that all generators involved sit at one element in one dimension.
    pub fn new(s: &SynorComplex, coords: SparseVec) -> Result<Self> {
        let first = coords.pivot().ok_or_else(|| Error::domain("zero chain"))?;
        let gen = &s.gens[first];
        let element = gen.element.ok_or_else(|| Error::domain("the empty generator is not principal"))?;
        for g in coords.indices() {
            if s.gens[g].element != Some(element) || s.gens[g].dim != gen.dim {
                return Err(Error::domain("generators at different elements or dimensions"));
            }
        }
        Ok(PrincipalSynorChain { element, dim: gen.dim, coords })
    }

    pub fn chain(&self, s: &SynorComplex) -> FormalChain {
        s.phi_of(&self.coords, self.dim)
    }
}

/// `gamma = sum chi * zeta_chi` over the length-(ell+1) prefixes `chi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllRepresentation {
    pub ell: isize,
    /// Pairs `(chi, zeta_chi)` with `zeta_chi` in generator coordinates,
    /// sorted by `chi`, zero entries dropped.
    pub entries: Vec<(OrderChain, SparseVec)>,
}

impl EllRepresentation {
    /// Dimension of every `zeta_chi`.
    pub fn zeta_dim(&self, gamma: &PrincipalSynorChain) -> isize {
        gamma.dim - self.ell - 1
    }

    /// `sum chi * phi(zeta_chi)` as order chains.
    pub fn reassemble(&self, s: &SynorComplex, gamma: &PrincipalSynorChain) -> FormalChain {
        let mut out = FormalChain::zero(s.field, gamma.dim);
        for (chi, z) in &self.entries {
            for (c, t) in s.phi_of(z, self.zeta_dim(gamma)).terms() {
                let mut e = chi.elements().to_vec();
                e.extend_from_slice(c.elements());
                out.add_term(OrderChain::from_decreasing(e), t.clone());
            }
        }
        out
    }
}

/// Peels `gamma` into its `ell`-representation, `0 <= ell <= dim gamma`.
pub fn ell_representation(
    s: &SynorComplex,
    gamma: &PrincipalSynorChain,
    ell: isize,
) -> Result<EllRepresentation> {
    if ell < 0 || ell > gamma.dim {
        return Err(Error::domain(format!("ell = {ell} outside 0..={}", gamma.dim)));
    }
    let mut entries =
        vec![(OrderChain::from_decreasing(vec![gamma.element]), s.delta(&gamma.coords))];
    for _ in 0..ell {
        let mut next: BTreeMap<OrderChain, SparseVec> = BTreeMap::new();
        for (chi, z) in &entries {
            let mut parts: BTreeMap<usize, SparseVec> = BTreeMap::new();
            for (g, c) in z.iter() {
                let y = s.gens[g].element.expect("positive-dimensional part has an element");
                parts.entry(y).or_default().axpy(c, &s.gens[g].delta);
            }
            for (y, zy) in parts {
                if !zy.is_zero() {
                    let mut e = chi.elements().to_vec();
                    e.push(y);
                    next.insert(OrderChain::from_decreasing(e), zy);
                }
            }
        }
        entries = next.into_iter().collect();
    }
    Ok(EllRepresentation { ell, entries })
}

/// `[t : c]_j`: the sum of coefficients of `t` over chains agreeing with `c`
/// everywhere except possibly at position `j`.
pub fn bracket(t: &FormalChain, c: &OrderChain, j: usize) -> Result<Scalar> {
    let e = c.elements();
    if j >= e.len() {
        return Err(Error::Index { index: j, max: e.len().saturating_sub(1) });
    }
    let mut sum = t.field().zero();
    for (d, s) in t.terms() {
        let f = d.elements();
        if f.len() == e.len() && (0..e.len()).all(|p| p == j || f[p] == e[p]) {
            sum += s;
        }
    }
    Ok(sum)
}

/// The `rho` map from order chains to synor chains, memoized per chain.
///
/// Each chain `c` with top `x` maps to the solution of
/// `delta(rho c) = rho(dc)` among generators at elements `<= x`, taken from
/// an echelon table over those generators in id order. The cache lives in
/// this value, so distinct sessions never share state.
pub struct Rho<'a> {
    s: &'a SynorComplex,
    memo: HashMap<OrderChain, SparseVec>,
    solvers: HashMap<(usize, isize), Reducer>,
}

impl<'a> Rho<'a> {
    pub fn new(s: &'a SynorComplex) -> Self {
        Rho { s, memo: HashMap::new(), solvers: HashMap::new() }
    }

    /// `rho` of one order chain, in generator coordinates.
    pub fn of_chain(&mut self, c: &OrderChain) -> SparseVec {
        let s = self.s;
        let Some(top) = c.top() else {
            return SparseVec::unit(EMPTY, s.field);
        };
        if let Some(v) = self.memo.get(c) {
            return v.clone();
        }
        let target = self.apply(&boundary(&FormalChain::basis(s.field, c.clone())));
        let k = c.dim();
        let solver = self.solvers.entry((top, k)).or_insert_with(|| {
            let mut red = Reducer::new(s.field, true);
            for &g in s.generators_of_dim(k) {
                if s.gens[g].element.is_some_and(|e| s.poset.leq(e, top)) {
                    red.insert(s.gens[g].delta.clone(), g);
                }
            }
            red
        });
        let v = solver
            .solve(&target)
            .expect("principal lower ideals are acyclic, so a preimage exists");
        self.memo.insert(c.clone(), v.clone());
        v
    }

    /// `rho` of a linear combination, in generator coordinates.
    pub fn apply(&mut self, c: &FormalChain) -> SparseVec {
        let mut out = SparseVec::new();
        for (chain, s) in c.terms() {
            let v = self.of_chain(chain);
            out.axpy(s, &v);
        }
        out
    }

    /// `rho` as an order-chain combination.
    pub fn apply_chain(&mut self, c: &FormalChain) -> FormalChain {
        let v = self.apply(c);
        self.s.phi_of(&v, c.dim())
    }
}

/// Whether `g = top * zeta` and `g2` have homologous boundaries in
/// `P - {top}`, where `top` is the maximum of `p` (the relative classes then
/// agree). Chains use ids of `p`.
pub fn homologous_in_pair(p: &Poset, top: usize, g: &FormalChain, g2: &FormalChain) -> Result<bool> {
    if p.maximum() != Some(top) {
        return Err(Error::domain("the poset must have the given maximum"));
    }
    if g.terms().any(|(c, _)| c.top() != Some(top)) {
        return Err(Error::domain("first chain is not of the form top * zeta"));
    }
    let (dg, dg2) = (boundary(g), boundary(g2));
    if dg.support().contains(&top) || dg2.support().contains(&top) {
        return Err(Error::domain("boundaries must avoid the maximum"));
    }
    let rest: Vec<usize> = (0..p.len()).filter(|&x| x != top).collect();
    let check = p.induced(&rest);
    let mut local = vec![usize::MAX; p.len()];
    for (i, &x) in rest.iter().enumerate() {
        local[x] = i;
    }
    is_boundary(&check, &dg.sub(&dg2).relabel(|x| local[x]))
}
