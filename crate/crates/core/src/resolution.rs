//! Betti numbers from interval homology and the synor resolution.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::algebra::{Field, Monomial, Scalar};
use crate::chains::homology_ranks;
use crate::error::Result;
use crate::linalg::{rank, SparseVec};
use crate::par;
use crate::poset::LcmLattice;
use crate::synor::SynorComplex;

/// Multigraded Betti numbers `beta_{i,m}` with graded summaries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, Monomial), usize>,
}

impl BettiTable {
    /// Builds a table from `(i, m, beta)` triples, dropping zeros.
    pub fn from_entries(entries: impl IntoIterator<Item = (usize, Monomial, usize)>) -> Self {
        let mut map = BTreeMap::new();
        for (i, m, b) in entries {
            if b > 0 {
                *map.entry((i, m)).or_insert(0) += b;
            }
        }
        BettiTable { entries: map }
    }

    pub fn multigraded(&self) -> impl Iterator<Item = (usize, &Monomial, usize)> + '_ {
        self.entries.iter().map(|((i, m), b)| (*i, m, *b))
    }

    pub fn beta(&self, i: usize, m: &Monomial) -> usize {
        self.entries.get(&(i, m.clone())).copied().unwrap_or(0)
    }

    /// `beta_{i,j}`: the sum over multidegrees of total degree `j`.
    pub fn graded(&self, i: usize, j: u64) -> usize {
        self.multigraded().filter(|(k, m, _)| *k == i && m.degree() == j).map(|(_, _, b)| b).sum()
    }

    /// Projective dimension: the last homological degree with a nonzero entry.
    pub fn pd(&self) -> usize {
        self.entries.keys().map(|(i, _)| *i).max().unwrap_or(0)
    }

    /// Column totals for `i = 0..=pd`.
    pub fn totals(&self) -> Vec<usize> {
        let mut out = vec![0; self.pd() + 1];
        for (i, _, b) in self.multigraded() {
            out[i] += b;
        }
        out
    }

    /// Maximal shifts `t_i` for `i = 0..=pd`; zero for empty rows.
    pub fn t(&self) -> Vec<u64> {
        let mut out = vec![0; self.pd() + 1];
        for (i, m, _) in self.multigraded() {
            out[i] = out[i].max(m.degree());
        }
        out
    }

    /// `t_i`, zero beyond the projective dimension.
    pub fn t_at(&self, i: usize) -> u64 {
        self.t().get(i).copied().unwrap_or(0)
    }

    /// Number of distinct multidegrees `a_i` for `i = 0..=pd`.
    pub fn a(&self) -> Vec<usize> {
        let mut out = vec![0; self.pd() + 1];
        for (i, _, _) in self.multigraded() {
            out[i] += 1;
        }
        out
    }

    pub fn a_at(&self, i: usize) -> usize {
        self.a().get(i).copied().unwrap_or(0)
    }

    /// Multidegrees `m` with `beta_{i,m} != 0`.
    pub fn shifts(&self, i: usize) -> Vec<&Monomial> {
        self.entries.keys().filter(|(k, _)| *k == i).map(|(_, m)| m).collect()
    }

    /// Rows `d = j - i` of the graded table, `grid[d][i] = beta_{i, i+d}`.
    pub fn grid(&self) -> Vec<Vec<usize>> {
        let cols = self.pd() + 1;
        let rows = self
            .multigraded()
            .map(|(i, m, _)| m.degree() as usize - i.min(m.degree() as usize))
            .max()
            .unwrap_or(0)
            + 1;
        let mut grid = vec![vec![0; cols]; rows];
        for (i, m, b) in self.multigraded() {
            grid[m.degree() as usize - i][i] += b;
        }
        grid
    }

    /// Text table in the layout of Macaulay2's `betti`: a header of column
    /// indices, a `total:` row, then one row per `j - i`, dots for zeros and
    /// right-aligned columns separated by single spaces.
    pub fn to_text(&self) -> String {
        let grid = self.grid();
        let totals = self.totals();
        let cell = |v: usize| if v == 0 { ".".to_string() } else { v.to_string() };
        let mut rows: Vec<(String, Vec<String>)> = Vec::new();
        rows.push((String::new(), (0..totals.len()).map(|i| i.to_string()).collect()));
        rows.push(("total:".into(), totals.iter().map(|&v| v.to_string()).collect()));
        for (d, row) in grid.iter().enumerate() {
            rows.push((format!("{d}:"), row.iter().map(|&v| cell(v)).collect()));
        }
        let label_w = rows.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
        let widths: Vec<usize> = (0..totals.len())
            .map(|c| rows.iter().map(|(_, r)| r[c].len()).max().unwrap_or(1))
            .collect();
        let mut out = String::new();
        for (label, cells) in &rows {
            let mut line = format!("{label:>label_w$}");
            for (c, v) in cells.iter().enumerate() {
                let w = widths[c];
                let _ = write!(line, " {v:>w$}");
            }
            out.push_str(&line);
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self, lattice: &LcmLattice) -> Value {
        json!({
            "totals": self.totals(),
            "t": self.t(),
            "a": self.a(),
            "pd": self.pd(),
            "graded": self.grid(),
            "multigraded": self.multigraded()
                .map(|(i, m, b)| json!([i, m.display(lattice.vars()).to_string(), b]))
                .collect::<Vec<_>>(),
        })
    }
}

/// `beta_{i,m} = dim H_{i-2}((bottom, m))` for every `m` above the bottom,
/// plus `beta_{0,1} = 1`. Intervals are processed concurrently when the
/// `parallel` feature is on.
pub fn betti_from_intervals(l: &LcmLattice, field: Field) -> BettiTable {
    let bottom = l.bottom();
    let elements: Vec<usize> = (0..l.len()).filter(|&m| m != bottom).collect();
    let ranks = par::map(&elements, |&m| {
        let interval = l.open_interval(bottom, m).expect("bottom is below everything");
        homology_ranks(&interval, field)
    });
    let mut entries = vec![(0, l.label(bottom).clone(), 1)];
    for (&m, r) in elements.iter().zip(ranks) {
        for (slot, b) in r.into_iter().enumerate() {
            // slot holds H_{slot-1}, which is beta_{slot+1}
            entries.push((slot + 1, l.label(m).clone(), b));
        }
    }
    BettiTable::from_entries(entries)
}

/// A basis element of a free module: synor generator `generator`, shifted
/// by the monomial of its lattice element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisElement {
    pub generator: usize,
    pub monomial: Monomial,
}

/// One nonzero matrix entry `scalar * multiplier` at `(row, col)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Entry {
    pub row: usize,
    pub col: usize,
    pub multiplier: Monomial,
    pub scalar: Scalar,
}

/// The differential `F_i -> F_{i-1}`; columns index `F_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Differential {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Entry>,
}

/// A multigraded free resolution of `S / I`.
#[derive(Clone, Debug)]
pub struct FreeResolution {
    pub field: Field,
    /// `modules[i]` is the basis of `F_i`.
    pub modules: Vec<Vec<BasisElement>>,
    /// `differentials[i - 1]` is `d_i : F_i -> F_{i-1}`.
    pub differentials: Vec<Differential>,
}

impl FreeResolution {
    pub fn ranks(&self) -> Vec<usize> {
        self.modules.iter().map(Vec::len).collect()
    }

    pub fn to_json(&self, lattice: &LcmLattice) -> Value {
        let vars = lattice.vars();
        json!({
            "field": self.field.to_string(),
            "ranks": self.ranks(),
            "shifts": self.modules.iter()
                .map(|b| b.iter().map(|e| e.monomial.display(vars).to_string()).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "differentials": self.differentials.iter().map(|d| json!({
                "rows": d.rows,
                "cols": d.cols,
                "entries": d.entries.iter().map(|e| json!([
                    e.row, e.col, e.multiplier.display(vars).to_string(), e.scalar.to_string()
                ])).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// The resolution whose `F_i` is spanned by the (i-1)-generators of the
/// synor complex of `L - {bottom}`, each shifted by its element's monomial,
/// with `d(g) = sum (m_g / m_h) c_h h` for `delta(g) = sum c_h h`.
pub fn synor_resolution(l: &LcmLattice, field: Field) -> Result<FreeResolution> {
    let (bar, _) = l.proper_parts()?;
    let s = SynorComplex::build(&bar, field);
    Ok(resolution_from_complex(l, &s))
}

/// Assembles the resolution from an already built synor complex of `L - {bottom}`.
pub fn resolution_from_complex(l: &LcmLattice, s: &SynorComplex) -> FreeResolution {
    let origin = s.poset().origin();
    let label = |g: usize| match s.generator(g).element {
        None => l.label(l.bottom()).clone(),
        Some(e) => l.label(origin[e]).clone(),
    };
    let mut position = vec![0usize; s.len()];
    let mut modules = Vec::new();
    for d in -1..=s.max_dim() {
        let gens = s.generators_of_dim(d);
        for (p, &g) in gens.iter().enumerate() {
            position[g] = p;
        }
        modules.push(gens.iter().map(|&g| BasisElement { generator: g, monomial: label(g) }).collect::<Vec<_>>());
    }
    let mut differentials = Vec::new();
    for i in 1..modules.len() {
        let mut entries = Vec::new();
        for (col, b) in modules[i].iter().enumerate() {
            for (h, c) in s.generator(b.generator).delta.iter() {
                entries.push(Entry {
                    row: position[h],
                    col,
                    multiplier: b.monomial.quotient(&label(h)).expect("lower generators divide"),
                    scalar: c.clone(),
                });
            }
        }
        entries.sort_by_key(|e| (e.col, e.row));
        differentials.push(Differential { rows: modules[i - 1].len(), cols: modules[i].len(), entries });
    }
    FreeResolution { field: s.field(), modules, differentials }
}

/// `beta_{i,m}` read off as the number of basis elements of `F_i` shifted by `m`.
pub fn betti_from_resolution(r: &FreeResolution) -> BettiTable {
    BettiTable::from_entries(
        r.modules
            .iter()
            .enumerate()
            .flat_map(|(i, b)| b.iter().map(move |e| (i, e.monomial.clone(), 1))),
    )
}

/// Outcome of [`certify_resolution`]; `failures` is empty iff certified.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Certification {
    pub strands_checked: usize,
    pub reductions_checked: usize,
    pub failures: Vec<String>,
}

impl Certification {
    pub fn is_certified(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Checks that `r` is a minimal free resolution of `S / I`:
/// differentials compose to zero, every multigraded strand at a lattice
/// element is exact, no entry has a unit multiplier, the image of `d_1` is
/// generated by the minimal generators, and strands at monomials outside
/// the lattice coincide with the strand at their largest lattice divisor.
pub fn certify_resolution(r: &FreeResolution, l: &LcmLattice) -> Certification {
    let mut report = Certification::default();
    let field = r.field;
    let vars = l.vars();

    for (k, d) in r.differentials.iter().enumerate() {
        let i = k + 1;
        if d.cols != r.modules[i].len() || d.rows != r.modules[i - 1].len() {
            report.failures.push(format!("d_{i}: shape does not match the modules"));
        }
        for e in &d.entries {
            if e.multiplier.is_one() {
                report.failures.push(format!("d_{i}: unit entry at ({}, {}), not minimal", e.row, e.col));
            }
            let expected = r.modules[i][e.col].monomial.quotient(&r.modules[i - 1][e.row].monomial);
            if expected.as_ref() != Ok(&e.multiplier) {
                report.failures.push(format!("d_{i}: entry ({}, {}) is not homogeneous", e.row, e.col));
            }
        }
    }

    for k in 1..r.differentials.len() {
        let (lower, upper) = (&r.differentials[k - 1], &r.differentials[k]);
        let mut composite: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
        for u in &upper.entries {
            for w in lower.entries.iter().filter(|w| w.col == u.row) {
                let slot = composite.entry((w.row, u.col)).or_insert_with(|| field.zero());
                *slot += &(&w.scalar * &u.scalar);
            }
        }
        if let Some(((row, col), _)) = composite.iter().find(|(_, s)| !s.is_zero()) {
            report.failures.push(format!("d_{} d_{} != 0 at ({row}, {col})", k, k + 1));
        }
    }

    let strands: Vec<usize> = (0..l.len()).collect();
    let strand_failures = par::map(&strands, |&m| strand_failures(r, l, m));
    report.strands_checked = strands.len();
    report.failures.extend(strand_failures.into_iter().flatten());

    if let Some(d1) = r.differentials.first() {
        let mut image: Vec<Monomial> = d1.entries.iter().map(|e| e.multiplier.clone()).collect();
        image.sort();
        let mut gens: Vec<Monomial> = l.generators().iter().map(|&g| l.label(g).clone()).collect();
        gens.sort();
        if image != gens {
            report.failures.push("image of d_1 is not generated by the minimal generators".into());
        }
    } else if !l.generators().is_empty() {
        report.failures.push("resolution has no d_1".into());
    }

    for m in 0..l.len() {
        for v in 0..vars.len() {
            let mut exps = l.label(m).exponents().to_vec();
            exps[v] += 1;
            let mu = Monomial::new(exps);
            let reduced = l.largest_divisor(&mu).expect("same variables");
            let reduced_label = l.label(reduced);
            for (i, basis) in r.modules.iter().enumerate() {
                let a: BTreeSet<usize> = (0..basis.len())
                    .filter(|&b| basis[b].monomial.divides(&mu).unwrap_or(false))
                    .collect();
                let b: BTreeSet<usize> = (0..basis.len())
                    .filter(|&b| basis[b].monomial.divides(reduced_label).unwrap_or(false))
                    .collect();
                if a != b {
                    report.failures.push(format!(
                        "strand at {} differs from strand at {} in F_{i}",
                        mu.display(vars),
                        reduced_label.display(vars)
                    ));
                }
            }
            report.reductions_checked += 1;
        }
    }
    report
}

/// Exactness of the strand at lattice element `m`: the subcomplex of basis
/// elements whose shift divides `m` has homology only in degree 0, and only
/// when `m` is the bottom (where `S / I` is one-dimensional).
fn strand_failures(r: &FreeResolution, l: &LcmLattice, m: usize) -> Vec<String> {
    let target = l.label(m);
    let vars = l.vars();
    let members: Vec<Vec<usize>> = r
        .modules
        .iter()
        .map(|b| (0..b.len()).filter(|&k| b[k].monomial.divides(target).unwrap_or(false)).collect())
        .collect();
    let ranks: Vec<usize> = (0..=r.modules.len())
        .map(|i| {
            if i == 0 || i > r.differentials.len() {
                return 0;
            }
            let d = &r.differentials[i - 1];
            let cols: Vec<SparseVec> = members[i]
                .iter()
                .map(|&c| {
                    SparseVec::from_pairs(
                        d.entries
                            .iter()
                            .filter(|e| e.col == c && members[i - 1].contains(&e.row))
                            .map(|e| (e.row, e.scalar.clone()))
                            .collect(),
                    )
                })
                .collect();
            rank(r.field, cols.iter())
        })
        .collect();
    let mut out = Vec::new();
    for i in 0..r.modules.len() {
        let homology = members[i].len() - ranks[i] - ranks[i + 1];
        let expected = usize::from(i == 0 && m == l.bottom());
        if homology != expected {
            out.push(format!(
                "strand {} not exact in degree {i}: homology {homology}, expected {expected}",
                target.display(vars)
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Variables;

    fn lattice(names: &[&str], gens: &[&str]) -> LcmLattice {
        let vars = Variables::new(names.iter().copied()).unwrap();
        let gens: Vec<_> = gens.iter().map(|g| vars.parse_monomial(g).unwrap()).collect();
        LcmLattice::new(vars, &gens).unwrap()
    }

    #[test]
    fn triangle_betti() {
        let l = lattice(&["x", "y", "z"], &["x*y", "x*z", "y*z"]);
        let b = betti_from_intervals(&l, Field::Rational);
        assert_eq!(b.totals(), vec![1, 3, 2]);
        assert_eq!(b.graded(1, 2), 3);
        assert_eq!(b.graded(2, 3), 2);
        assert_eq!(b.t(), vec![0, 2, 3]);
        assert_eq!(b.a(), vec![1, 3, 1]);
        let r = synor_resolution(&l, Field::Rational).unwrap();
        assert_eq!(r.ranks(), vec![1, 3, 2]);
        assert_eq!(betti_from_resolution(&r), b);
        let cert = certify_resolution(&r, &l);
        assert!(cert.is_certified(), "{:?}", cert.failures);
    }

    #[test]
    fn principal_ideal() {
        let l = lattice(&["x", "y"], &["x^2*y"]);
        let b = betti_from_intervals(&l, Field::Rational);
        assert_eq!(b.totals(), vec![1, 1]);
        assert_eq!(b.t(), vec![0, 3]);
        assert_eq!(b.to_text(), "       0 1\ntotal: 1 1\n    0: 1 .\n    1: . .\n    2: . 1\n");
        let r = synor_resolution(&l, Field::Rational).unwrap();
        assert_eq!(r.ranks(), vec![1, 1]);
        assert!(certify_resolution(&r, &l).is_certified());
    }

    #[test]
    fn mutation_is_caught() {
        let l = lattice(&["x", "y", "z"], &["x*y", "x*z", "y*z"]);
        let mut r = synor_resolution(&l, Field::Rational).unwrap();
        r.differentials[1].entries.retain(|e| e.col != 0);
        let cert = certify_resolution(&r, &l);
        assert!(!cert.is_certified());
        assert!(cert.failures.iter().any(|f| f.contains("not exact")));
    }
}
