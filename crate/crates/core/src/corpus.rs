//! Ideal families and a reproducible random generator.

use std::fmt::Write as _;

use crate::algebra::{Monomial, Variables};
use crate::error::{Error, Result};
use crate::poset::LcmLattice;

/// Where an expected value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Reference values recorded for a worked example.
    Reference,
    /// A closed formula stated for a family.
    Formula,
}

/// Facts an ideal is expected to satisfy.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Expected {
    pub totals: Option<(Vec<usize>, Provenance)>,
    pub t: Option<(Vec<u64>, Provenance)>,
}

/// A named monomial ideal given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealSpec {
    pub name: String,
    pub vars: Variables,
    pub generators: Vec<Monomial>,
    pub expected: Expected,
}

impl IdealSpec {
    pub fn new(name: impl Into<String>, vars: Variables, generators: Vec<Monomial>) -> Self {
        IdealSpec { name: name.into(), vars, generators, expected: Expected::default() }
    }

    pub fn lattice(&self) -> Result<LcmLattice> {
        LcmLattice::new(self.vars.clone(), &self.generators)
    }

    /// Parses the file format: a `vars: a b c` line, then one monomial per
    /// line. `#` starts a comment; blank lines are skipped. Parse errors
    /// carry byte offsets into `text`.
    pub fn parse(name: impl Into<String>, text: &str) -> Result<Self> {
        let mut vars: Option<Variables> = None;
        let mut generators = Vec::new();
        let mut offset = 0;
        for raw in text.split_inclusive('\n') {
            let line = raw.split('#').next().unwrap_or("").trim_end_matches(['\n', '\r']);
            let start = offset;
            offset += raw.len();
            if line.trim().is_empty() {
                continue;
            }
            match &vars {
                None => {
                    let rest = line.trim_start().strip_prefix("vars:").ok_or_else(|| Error::Parse {
                        position: start,
                        message: "expected a `vars:` line first".into(),
                    })?;
                    let names: Vec<&str> = rest.split_whitespace().collect();
                    if names.is_empty() {
                        return Err(Error::Parse { position: start, message: "no variables declared".into() });
                    }
                    vars = Some(Variables::new(names).map_err(|e| Error::Parse {
                        position: start,
                        message: e.to_string(),
                    })?);
                }
                Some(v) => generators.push(v.parse_at(line, start)?),
            }
        }
        let vars = vars.ok_or(Error::Parse { position: 0, message: "missing `vars:` line".into() })?;
        if generators.is_empty() {
            return Err(Error::Parse { position: text.len(), message: "no generators".into() });
        }
        Ok(IdealSpec::new(name, vars, generators))
    }

    /// Parses a comma-separated generator list over the given variables.
    pub fn parse_list(name: impl Into<String>, vars: Variables, list: &str) -> Result<Self> {
        let mut generators = Vec::new();
        let mut offset = 0;
        for part in list.split(',') {
            generators.push(vars.parse_at(part, offset)?);
            offset += part.len() + 1;
        }
        Ok(IdealSpec::new(name, vars, generators))
    }

    /// Parses a comma-separated generator list whose variables are the
    /// identifiers occurring in it, sorted.
    pub fn parse_inline(name: impl Into<String>, list: &str) -> Result<Self> {
        let mut names: Vec<&str> = list
            .split(|c: char| !(c.is_alphanumeric() || c == '_'))
            .filter(|t| t.starts_with(|c: char| c.is_alphabetic() || c == '_'))
            .collect();
        names.sort_unstable();
        names.dedup();
        if names.is_empty() {
            return Err(Error::Parse { position: 0, message: "no variables in generator list".into() });
        }
        Self::parse_list(name, Variables::new(names)?, list)
    }

    /// The file format accepted by [`IdealSpec::parse`].
    pub fn to_text(&self) -> String {
        let mut out = format!("# {}\nvars: {}\n", self.name, self.vars.names().join(" "));
        for g in &self.generators {
            let _ = writeln!(out, "{}", g.display(&self.vars));
        }
        out
    }
}

fn check_positive(what: &str, v: usize) -> Result<()> {
    if v == 0 {
        return Err(Error::domain(format!("{what} must be at least 1")));
    }
    Ok(())
}

/// `(x1^a, ..., xn^a)`, with `t_k = a k`.
pub fn ideal_powers(n: usize, a: u32) -> Result<IdealSpec> {
    check_positive("n", n)?;
    check_positive("a", a as usize)?;
    let vars = Variables::indexed("x", 1, n);
    let gens = (0..n).map(|i| Monomial::variable_power(n, i, a)).collect();
    let mut spec = IdealSpec::new(format!("powers n={n} a={a}"), vars, gens);
    spec.expected.t = Some(((0..=n as u64).map(|k| a as u64 * k).collect(), Provenance::Formula));
    Ok(spec)
}

/// The ideal whose LCM lattice is the face lattice of a hollow p-simplex and
/// a hollow q-simplex glued at a vertex: `x0 y0`, `Y xi`, `X yj`.
pub fn ideal_kpq(p: usize, q: usize) -> Result<IdealSpec> {
    if p <= q || q < 2 {
        return Err(Error::domain(format!("need p > q >= 2, got p={p} q={q}")));
    }
    let xs = Variables::indexed("x", 0, p + 1);
    let ys = Variables::indexed("y", 0, q + 1);
    let vars = xs.concat(&ys)?;
    let n = vars.len();
    let var = |i: usize| Monomial::variable_power(n, i, 1);
    let product = |range: std::ops::Range<usize>| {
        range.fold(Monomial::one(n), |acc, i| acc.product(&var(i)).expect("same size"))
    };
    let big_x = product(0..p + 1);
    let big_y = product(p + 1..n);
    let mut gens = vec![var(0).product(&var(p + 1))?];
    for i in 1..=p {
        gens.push(big_y.product(&var(i))?);
    }
    for j in 1..=q {
        gens.push(big_x.product(&var(p + 1 + j))?);
    }
    let mut spec = IdealSpec::new(format!("kpq p={p} q={q}"), vars, gens);
    spec.expected.t = Some((kpq_expected_t(p, q), Provenance::Formula));
    Ok(spec)
}

/// The expected maximal-shift pattern for the glued-simplices family:
/// `0, p+2, p+3, ..., p+q+2` up to index `q+1`, then `2q+3, 2q+4, ...` up to
/// index `p+1`.
pub fn kpq_expected_t(p: usize, q: usize) -> Vec<u64> {
    let mut t = vec![0u64];
    for i in 1..=q + 1 {
        t.push((p + 1 + i) as u64);
    }
    for i in q + 2..=p + 1 {
        t.push((2 * q + 3 + (i - q - 2)) as u64);
    }
    t
}

/// The cone `(af, bf, cf, df, ef, abcde)` with its reference Betti totals
/// and shifts.
pub fn ideal_cone() -> IdealSpec {
    let vars = Variables::new(["a", "b", "c", "d", "e", "f"]).expect("valid names");
    let gens = ["a*f", "b*f", "c*f", "d*f", "e*f", "a*b*c*d*e"]
        .iter()
        .map(|g| vars.parse_monomial(g).expect("valid monomial"))
        .collect();
    let mut spec = IdealSpec::new("cone", vars, gens);
    spec.expected.totals = Some((vec![1, 6, 11, 10, 5, 1], Provenance::Reference));
    spec.expected.t = Some((vec![0, 5, 6, 4, 5, 6], Provenance::Reference));
    spec
}

/// 64-bit linear congruential generator with Knuth's MMIX constants.
#[derive(Clone, Debug)]
pub struct Lcg(u64);

impl Lcg {
    pub const MULTIPLIER: u64 = 6364136223846793005;
    pub const INCREMENT: u64 = 1442695040888963407;

    pub fn new(seed: u64) -> Self {
        Lcg(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(Self::MULTIPLIER).wrapping_add(Self::INCREMENT);
        self.0
    }

    /// Uniform-ish value in `0..bound` from the high 32 bits.
    pub fn below(&mut self, bound: u64) -> u64 {
        (self.next_u64() >> 32) % bound
    }
}

/// `g` random monomials in `n` variables with exponents `<= emax`, drawn
/// from [`Lcg`] seeded with `seed` (the constant monomial is redrawn), then
/// pruned to the minimal elements under divisibility in draw order.
pub fn random_ideal(seed: u64, n: usize, g: usize, emax: u32) -> Result<IdealSpec> {
    check_positive("n", n)?;
    check_positive("g", g)?;
    check_positive("emax", emax as usize)?;
    let mut rng = Lcg::new(seed);
    let mut drawn: Vec<Monomial> = Vec::with_capacity(g);
    while drawn.len() < g {
        let exps: Vec<u32> = (0..n).map(|_| rng.below(emax as u64 + 1) as u32).collect();
        if exps.iter().any(|&e| e > 0) {
            drawn.push(Monomial::new(exps));
        }
    }
    let mut gens: Vec<Monomial> = Vec::new();
    for (i, m) in drawn.iter().enumerate() {
        let redundant = drawn.iter().enumerate().any(|(j, other)| {
            j != i && other.divides(m).expect("same size") && (other != m || j < i)
        });
        if !redundant {
            gens.push(m.clone());
        }
    }
    Ok(IdealSpec::new(
        format!("random seed={seed} n={n} g={g} emax={emax}"),
        Variables::indexed("x", 1, n),
        gens,
    ))
}

/// The 50 random ideals of the standard corpus: seed `s` in `1..=50` uses
/// `n = 2 + s % 4`, `g = 3 + s % 5`, `emax = 1 + s % 3`.
pub fn random_corpus() -> Vec<IdealSpec> {
    (1..=50u64)
        .map(|s| {
            random_ideal(s, 2 + (s % 4) as usize, 3 + (s % 5) as usize, 1 + (s % 3) as u32)
                .expect("positive parameters")
        })
        .collect()
}

/// The cone ideal, the power ideals with `n <= 4` and `a <= 3`, the glued
/// simplices for `(3,2), (4,2), (4,3)`, and the random corpus.
pub fn full_corpus() -> Vec<IdealSpec> {
    let mut out = vec![ideal_cone()];
    for n in 1..=4 {
        for a in 1..=3 {
            out.push(ideal_powers(n, a).expect("positive parameters"));
        }
    }
    for (p, q) in [(3, 2), (4, 2), (4, 3)] {
        out.push(ideal_kpq(p, q).expect("p > q >= 2"));
    }
    out.extend(random_corpus());
    out
}
