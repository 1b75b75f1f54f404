//! Mechanical checks of the join-decomposition theorem, generalized
//! subadditivity and the shift-count bound.
//!
//! Decompositions come from two independent routes: an exhaustive pair
//! search over simplicial homology, and a constructive route that follows
//! the shuffle-product argument through a synor complex.

use std::fmt;

use serde_json::json;
use sha2::{Digest, Sha256};

use crate::algebra::Field;
use crate::chains::{boundary, homology_ranks, is_boundary, FormalChain, OrderChain, Simplex};
use crate::error::{Error, Result};
use crate::par;
use crate::poset::{enumerate_lattices, Lattice, LcmLattice, Poset};
use crate::resolution::BettiTable;
use crate::shuffle::shuffle_product;
use crate::synor::{ell_representation, homologous_in_pair, PrincipalSynorChain, Rho, SynorComplex};

/// Which search produced a witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    BruteForce,
    Constructive,
}

/// `n1 v n2 = target` with `n1` an `(i1-1)`-synor and `n2` an `(i2-1)`-synor.
/// All ids refer to the lattice the witness was produced for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionWitness {
    pub i1: usize,
    pub i2: usize,
    pub k: usize,
    pub target: usize,
    pub n1: usize,
    pub n2: usize,
    /// `dim H_{i1-2}((bottom, n1))`, positive for a certified witness.
    pub rank1: usize,
    /// `dim H_{i2-2}((bottom, n2))`.
    pub rank2: usize,
    pub join: usize,
    pub route: Route,
    /// Constructive route only: whether the shuffle sum was checked to be
    /// homologous to the starting chain relative to the open part.
    pub homologous: Option<bool>,
}

impl DecompositionWitness {
    /// Recomputes both homology ranks and the join from the lattice alone.
    pub fn certify(&self, l: &Lattice, field: Field) -> bool {
        let ok_rank = |x: usize, i: usize| {
            below_rank(l, x, i as isize - 2, field).is_ok_and(|r| r > 0)
        };
        self.homologous != Some(false)
            && ok_rank(self.n1, self.i1)
            && ok_rank(self.n2, self.i2)
            && l.join(self.n1, self.n2) == self.target
    }
}

/// `dim H_k((bottom, x))`.
fn below_rank(l: &Lattice, x: usize, k: isize, field: Field) -> Result<usize> {
    let interval = l.open_interval(l.bottom(), x)?;
    Ok(homology_ranks(&interval, field).get((k + 1) as usize).copied().unwrap_or(0))
}

fn check_params(i1: usize, i2: usize, k: usize) -> Result<()> {
    if i1 == 0 || i2 == 0 {
        return Err(Error::domain("i1 and i2 must be at least 1"));
    }
    if k > i1.min(i2) {
        return Err(Error::domain(format!("k = {k} exceeds min(i1, i2) = {}", i1.min(i2))));
    }
    Ok(())
}

/// Whether the top is an `(i1+i2-k-1)`-synor of the lattice without its
/// bottom, decided by simplicial homology of the open proper part.
pub fn top_hypothesis(l: &Lattice, i1: usize, i2: usize, k: usize, field: Field) -> Result<bool> {
    check_params(i1, i2, k)?;
    if l.len() < 2 {
        return Ok(false);
    }
    let m = (i1 + i2 - k - 1) as isize;
    Ok(below_rank(l, l.top(), m - 1, field)? > 0)
}

/// Exhaustive search for `x v y = top` over synors of the right dimensions,
/// first pair in increasing id order. `None` when the hypothesis fails or,
/// against the theorem, no pair exists.
pub fn decompose_top_bruteforce(
    l: &Lattice,
    i1: usize,
    i2: usize,
    k: usize,
    field: Field,
) -> Result<Option<DecompositionWitness>> {
    if !top_hypothesis(l, i1, i2, k, field)? {
        return Ok(None);
    }
    let bottom = l.bottom();
    let ranks: Vec<Vec<usize>> = (0..l.len())
        .map(|x| {
            if x == bottom {
                Vec::new()
            } else {
                homology_ranks(&l.open_interval(bottom, x).expect("bottom is least"), field)
            }
        })
        .collect();
    // slot i-1 holds H_{i-2}
    let rank = |x: usize, i: usize| ranks[x].get(i - 1).copied().unwrap_or(0);
    let xs: Vec<usize> = (0..l.len()).filter(|&x| rank(x, i1) > 0).collect();
    let ys: Vec<usize> = (0..l.len()).filter(|&y| rank(y, i2) > 0).collect();
    for &x in &xs {
        for &y in &ys {
            if l.join(x, y) == l.top() {
                return Ok(Some(DecompositionWitness {
                    i1,
                    i2,
                    k,
                    target: l.top(),
                    n1: x,
                    n2: y,
                    rank1: rank(x, i1),
                    rank2: rank(y, i2),
                    join: l.top(),
                    route: Route::BruteForce,
                    homologous: None,
                }));
            }
        }
    }
    Ok(None)
}

/// The pair `(L - {bottom}, L - {bottom, top})` with a synor complex on the
/// first and id maps back to the lattice.
pub struct ProperPart<'a> {
    pub lattice: &'a Lattice,
    pub bar: Poset,
    pub check: Poset,
    pub synor: SynorComplex,
    bar_ids: Vec<usize>,
    to_bar: Vec<usize>,
}

impl<'a> ProperPart<'a> {
    pub fn new(l: &'a Lattice, field: Field) -> Result<Self> {
        let (bar, check) = l.proper_parts()?;
        let bar_ids: Vec<usize> = (0..l.len()).filter(|&x| x != l.bottom()).collect();
        let mut to_bar = vec![usize::MAX; l.len()];
        for (i, &x) in bar_ids.iter().enumerate() {
            to_bar[x] = i;
        }
        let synor = SynorComplex::build(&bar, field);
        Ok(ProperPart { lattice: l, bar, check, synor, bar_ids, to_bar })
    }

    /// Lattice id of a proper-part id.
    pub fn lift(&self, x: usize) -> usize {
        self.bar_ids[x]
    }

    pub fn lift_chain(&self, c: &FormalChain) -> FormalChain {
        c.relabel(|x| self.bar_ids[x])
    }

    pub fn lower_chain(&self, c: &FormalChain) -> FormalChain {
        c.relabel(|x| self.to_bar[x])
    }

    pub fn top(&self) -> usize {
        self.to_bar[self.lattice.top()]
    }

    /// Whether a chain (over lattice ids) avoiding bottom and top is a
    /// boundary in the open proper part.
    fn boundary_in_check(&self, c: &FormalChain) -> Result<bool> {
        let (b, t) = (self.lattice.bottom(), self.lattice.top());
        let open: Vec<usize> = (0..self.lattice.len()).filter(|&x| x != b && x != t).collect();
        let mut local = vec![usize::MAX; self.lattice.len()];
        for (i, &x) in open.iter().enumerate() {
            local[x] = i;
        }
        if c.support().iter().any(|&x| local[x] == usize::MAX) {
            return Err(Error::domain("chain leaves the open proper part"));
        }
        is_boundary(&self.check, &c.relabel(|x| local[x]))
    }
}

/// One summand `rho(chi) (shuffle) zeta_chi` with its pieces in lattice ids.
struct Summand {
    chi: OrderChain,
    rho: FormalChain,
    zeta: FormalChain,
    product: FormalChain,
}

fn summands(pp: &ProperPart, gamma: &PrincipalSynorChain, ell: isize) -> Result<Vec<Summand>> {
    let s = &pp.synor;
    let rep = ell_representation(s, gamma, ell)?;
    let zdim = rep.zeta_dim(gamma);
    let mut rho = Rho::new(s);
    let mut out = Vec::with_capacity(rep.entries.len());
    for (chi, z) in &rep.entries {
        let r = pp.lift_chain(&rho.apply_chain(&FormalChain::basis(s.field(), chi.clone())));
        let zeta = pp.lift_chain(&s.phi_of(z, zdim));
        let product = shuffle_product(pp.lattice, &r, &zeta);
        out.push(Summand { chi: chi.clone(), rho: r, zeta, product });
    }
    Ok(out)
}

/// Follows the shuffle argument: picks a principal synor chain `gamma` at
/// the top, takes its `(i1-1)`-representation, forms
/// `sum rho(chi) (shuffle) zeta_chi`, checks that it is homologous to
/// `gamma` relative to the open part, and reads `x` and `y` off a summand
/// that reaches the top. For `k >= 1` the second element is lifted to the
/// element of `chi` at position `i1-k`.
///
/// Returns `None` when the hypothesis fails; a failure to find a summand
/// reaching the top is reported as a validation error, since the theorem
/// says it cannot happen.
pub fn decompose_top_constructive(
    l: &Lattice,
    i1: usize,
    i2: usize,
    k: usize,
    field: Field,
) -> Result<Option<DecompositionWitness>> {
    check_params(i1, i2, k)?;
    if l.len() < 2 {
        return Ok(None);
    }
    let pp = ProperPart::new(l, field)?;
    constructive_in(&pp, i1, i2, k)
}

fn constructive_in(
    pp: &ProperPart,
    i1: usize,
    i2: usize,
    k: usize,
) -> Result<Option<DecompositionWitness>> {
    let l = pp.lattice;
    let s = &pp.synor;
    let field = s.field();
    let m = (i1 + i2 - k - 1) as isize;
    let Some(&g) = s.generators_at_dim(pp.top(), m).first() else {
        return Ok(None);
    };
    let gamma = PrincipalSynorChain::from_generator(s, g)?;
    let parts = summands(pp, &gamma, i1 as isize - 1)?;
    let mut total = FormalChain::zero(field, m);
    for p in &parts {
        total.add_scaled(&field.one(), &p.product);
    }
    let top = l.top();
    if !total.tops().contains(&top) {
        return Err(Error::Validation(format!(
            "contradiction: shuffle sum misses the top for i1={i1} i2={i2} k={k}"
        )));
    }
    let homologous =
        homologous_in_pair(&pp.bar, pp.top(), &gamma.chain(s), &pp.lower_chain(&total))?;
    let reaching = parts.iter().filter(|p| p.product.tops().contains(&top));
    for p in reaching {
        let zeta_tops = p.zeta.tops();
        let pair = p.rho.tops().into_iter().find_map(|a| {
            if p.zeta.dim() < 0 {
                return (a == top).then_some((a, None));
            }
            zeta_tops.iter().find(|&&b| l.join(a, b) == top).map(|&b| (a, Some(b)))
        });
        let Some((x, y)) = pair else { continue };
        let z = if k == 0 {
            y.expect("zeta has positive dimension when k < i2")
        } else {
            pp.lift(p.chi.elements()[i1 - k])
        };
        let rank = |e: usize, i: usize| below_rank(l, e, i as isize - 2, field);
        return Ok(Some(DecompositionWitness {
            i1,
            i2,
            k,
            target: top,
            n1: x,
            n2: z,
            rank1: rank(x, i1)?,
            rank2: rank(z, i2)?,
            join: l.join(x, z),
            route: Route::Constructive,
            homologous: Some(homologous),
        }));
    }
    Err(Error::Validation(format!(
        "contradiction: no summand yields a join decomposition for i1={i1} i2={i2} k={k}"
    )))
}

/// The two sums of the step lemma at levels `ell` and `ell-1`:
/// `sum rho(d0 chi) (shuffle) zeta_chi`, where `d0` drops the top of `chi`.
/// True iff both are cycles supported in the open proper part and their
/// difference is a boundary there.
pub fn verify_step_lemma(pp: &ProperPart, gamma: &PrincipalSynorChain, ell: isize) -> Result<bool> {
    if ell < 1 || ell > gamma.dim {
        return Err(Error::domain(format!("ell = {ell} outside 1..={}", gamma.dim)));
    }
    if gamma.element != pp.top() {
        return Err(Error::domain("gamma must sit at the top"));
    }
    let a = step_sum(pp, gamma, ell)?;
    let b = step_sum(pp, gamma, ell - 1)?;
    let (bt, tt) = (pp.lattice.bottom(), pp.lattice.top());
    for c in [&a, &b] {
        if !boundary(c).is_zero() || c.support().iter().any(|&x| x == bt || x == tt) {
            return Ok(false);
        }
    }
    pp.boundary_in_check(&a.sub(&b))
}

fn step_sum(pp: &ProperPart, gamma: &PrincipalSynorChain, ell: isize) -> Result<FormalChain> {
    let s = &pp.synor;
    let field = s.field();
    let rep = ell_representation(s, gamma, ell)?;
    let zdim = rep.zeta_dim(gamma);
    let mut rho = Rho::new(s);
    let mut out = FormalChain::zero(field, gamma.dim - 1);
    for (chi, z) in &rep.entries {
        let rest = OrderChain::from_decreasing(chi.elements()[1..].to_vec());
        let r = pp.lift_chain(&rho.apply_chain(&FormalChain::basis(field, rest)));
        let zeta = pp.lift_chain(&s.phi_of(z, zdim));
        out.add_scaled(&field.one(), &shuffle_product(pp.lattice, &r, &zeta));
    }
    Ok(out)
}

/// The decomposition applied to the closed interval `[bottom, m]` with
/// `k = 0`: `n1 v n2 = m` with `n1` an `(i1-1)`-synor and `n2` an
/// `(i2-1)`-synor. Ids in the result refer to `l`.
pub fn verify_interval_decomposition(
    l: &Lattice,
    m: usize,
    i1: usize,
    i2: usize,
    field: Field,
) -> Result<DecompositionWitness> {
    check_params(i1, i2, 0)?;
    if below_rank(l, m, (i1 + i2) as isize - 2, field)? == 0 {
        return Err(Error::domain(format!(
            "H_{}((bottom, {m})) vanishes, so no decomposition is claimed",
            i1 + i2 - 2
        )));
    }
    let interval = l.closed_interval(l.bottom(), m)?;
    let ids: Vec<usize> = l.down_set(m).collect();
    let pp = ProperPart::new(&interval, field)?;
    let w = constructive_in(&pp, i1, i2, 0)?
        .ok_or_else(|| Error::Validation("contradiction: interval hypothesis lost".into()))?;
    let (n1, n2) = (ids[w.n1], ids[w.n2]);
    Ok(DecompositionWitness { target: m, n1, n2, join: l.join(n1, n2), ..w })
}

/// Valid `(i1, i2, k)` whose top hypothesis holds, in increasing order.
pub fn hypothesis_triples(l: &Lattice, field: Field) -> Vec<(usize, usize, usize)> {
    if l.len() < 2 {
        return Vec::new();
    }
    let check = l.open_interval(l.bottom(), l.top()).expect("bottom below top");
    let ranks = homology_ranks(&check, field);
    let mut out = Vec::new();
    for (slot, &r) in ranks.iter().enumerate() {
        if r == 0 {
            continue;
        }
        // slot holds H_{slot-1}, so the top is a slot-synor
        let m = slot;
        for i1 in 1..=m + 1 {
            for i2 in 1..=m + 1 {
                let Some(k) = (i1 + i2).checked_sub(m + 1) else { continue };
                if k <= i1.min(i2) {
                    out.push((i1, i2, k));
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Short stable hash of a lattice's cover relation.
pub fn lattice_hash(l: &Lattice) -> String {
    let mut covers = l.cover_pairs();
    covers.sort_unstable();
    let canon = json!({ "n": l.len(), "covers": covers }).to_string();
    let digest = Sha256::digest(canon.as_bytes());
    digest.iter().take(6).map(|b| format!("{b:02x}")).collect()
}

/// One verification instance in the stable report format.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportLine {
    pub hash: String,
    pub i1: usize,
    pub i2: usize,
    pub k: usize,
    pub pass: bool,
    pub witness: Option<(String, String)>,
    pub note: Option<String>,
}

impl fmt::Display for ReportLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "LATTICE {} i1={} i2={} k={} RESULT={} witness=",
            self.hash,
            self.i1,
            self.i2,
            self.k,
            if self.pass { "pass" } else { "fail" }
        )?;
        match &self.witness {
            Some((a, b)) => write!(f, "{a},{b}")?,
            None => write!(f, "-")?,
        }
        if let Some(n) = &self.note {
            write!(f, " note={n}")?;
        }
        Ok(())
    }
}

/// Runs both decomposition routes on every hypothesis triple of `l` and
/// certifies each witness.
pub fn verify_top_decompositions(l: &Lattice, field: Field) -> Vec<ReportLine> {
    let hash = lattice_hash(l);
    let triples = hypothesis_triples(l, field);
    let pp = if triples.is_empty() { None } else { ProperPart::new(l, field).ok() };
    triples
        .into_iter()
        .map(|(i1, i2, k)| {
            let brute = decompose_top_bruteforce(l, i1, i2, k, field);
            let built = match &pp {
                Some(pp) => constructive_in(pp, i1, i2, k),
                None => Err(Error::Validation("proper part unavailable".into())),
            };
            let mut note = None;
            let pass = match (&brute, &built) {
                (Ok(Some(b)), Ok(Some(c))) => b.certify(l, field) && c.certify(l, field),
                (_, Err(e)) | (Err(e), _) => {
                    note = Some(e.to_string().replace(' ', "_"));
                    false
                }
                _ => false,
            };
            let witness = built.ok().flatten().map(|w| (w.n1.to_string(), w.n2.to_string()));
            ReportLine { hash: hash.clone(), i1, i2, k, pass, witness, note }
        })
        .collect()
}

/// The exhaustive sweep over all lattices with `2..=max` elements, in
/// enumeration order.
pub fn sweep_lattices(max: usize, field: Field) -> Result<Vec<ReportLine>> {
    let mut lattices = Vec::new();
    for n in 2..=max {
        lattices.extend(enumerate_lattices(n)?);
    }
    Ok(par::map(&lattices, |l| verify_top_decompositions(l, field)).into_iter().flatten().collect())
}

/// A pair realizing `m = lcm(n1, n2)` with nonzero `beta_{i1,n1}` and
/// `beta_{i2,n2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeWitness {
    pub m: usize,
    pub n1: usize,
    pub n2: usize,
    /// Whether `deg n1 = t_{i1}` and `deg n2 = t_{i2}`.
    pub exact_degrees: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubadditivityReport {
    pub i1: usize,
    pub i2: usize,
    pub k: usize,
    /// `t_{i1+i2-k}`
    pub lhs: u64,
    /// `t_{i1} + t_{i2}`
    pub rhs: u64,
    /// One entry per `m` of degree `t_{i1+i2-k}` with nonzero Betti number;
    /// `None` if no pair exists (a contradiction).
    pub witnesses: Vec<(usize, Option<DegreeWitness>)>,
}

impl SubadditivityReport {
    pub fn inequality_holds(&self) -> bool {
        self.lhs <= self.rhs
    }

    pub fn witnesses_found(&self) -> bool {
        self.witnesses.iter().all(|(_, w)| w.is_some())
    }

    /// Whether every witness meets the degrees `t_{i1}` and `t_{i2}` exactly.
    pub fn exact_degrees(&self) -> bool {
        self.witnesses.iter().all(|(_, w)| w.as_ref().is_some_and(|w| w.exact_degrees))
    }

    pub fn holds(&self) -> bool {
        self.inequality_holds() && self.witnesses_found()
    }
}

/// Checks `t_{i1+i2-k} <= t_{i1} + t_{i2}` against `table` (the Betti
/// table of `l`) and, when both indices are positive, searches a pair
/// `n1, n2` for every top-degree `m`, preferring pairs of degrees exactly
/// `t_{i1}` and `t_{i2}`.
pub fn check_subadditivity(
    l: &LcmLattice,
    table: &BettiTable,
    i1: usize,
    i2: usize,
    k: usize,
) -> Result<SubadditivityReport> {
    if k > i1.min(i2) {
        return Err(Error::domain(format!("k = {k} exceeds min(i1, i2) = {}", i1.min(i2))));
    }
    let i = i1 + i2 - k;
    let (lhs, t1, t2) = (table.t_at(i), table.t_at(i1), table.t_at(i2));
    let mut witnesses = Vec::new();
    if i1 > 0 && i2 > 0 && lhs > 0 {
        let beta = |j: usize, x: usize| table.beta(j, l.label(x)) > 0;
        let deg = |x: usize| l.label(x).degree();
        for m in (0..l.len()).filter(|&m| beta(i, m) && deg(m) == lhs) {
            let mut best: Option<DegreeWitness> = None;
            for n1 in l.down_set(m).filter(|&x| beta(i1, x)) {
                for n2 in l.down_set(m).filter(|&y| beta(i2, y)) {
                    if l.join(n1, n2) != m {
                        continue;
                    }
                    let exact_degrees = deg(n1) == t1 && deg(n2) == t2;
                    if best.as_ref().is_none_or(|b| exact_degrees && !b.exact_degrees) {
                        best = Some(DegreeWitness { m, n1, n2, exact_degrees });
                    }
                }
            }
            witnesses.push((m, best));
        }
    }
    Ok(SubadditivityReport { i1, i2, k, lhs, rhs: t1 + t2, witnesses })
}

/// All `(i1, i2, k)` with `i1 <= i2 <= pd + 1` and `k <= i1`.
pub fn subadditivity_triples(table: &BettiTable) -> Vec<(usize, usize, usize)> {
    let top = table.pd() + 1;
    let mut out = Vec::new();
    for i1 in 0..=top {
        for i2 in i1..=top {
            for k in 0..=i1 {
                out.push((i1, i2, k));
            }
        }
    }
    out
}

/// `a_{i1+i2} <= a_{i1} * a_{i2}` with the three counts.
pub fn check_shift_count_bound(table: &BettiTable, i1: usize, i2: usize) -> (bool, [usize; 3]) {
    let counts = [table.a_at(i1 + i2), table.a_at(i1), table.a_at(i2)];
    (counts[0] <= counts[1] * counts[2], counts)
}
