use std::collections::{BTreeSet, HashMap};
use std::ops::Deref;

use super::{Lattice, LatticeJson, Poset};
use crate::algebra::{Monomial, Variables};
use crate::error::{Error, Result};

/// The LCM lattice of a monomial ideal: all lcms of subsets of the minimal
/// generators, ordered by divisibility. Ids follow lex order on exponent
/// vectors, so the bottom (the empty lcm, `1`) is id 0 and the top is last.
#[derive(Clone, Debug)]
pub struct LcmLattice {
    lattice: Lattice,
    labels: Vec<Monomial>,
    generators: Vec<usize>,
    vars: Variables,
    index: HashMap<Monomial, usize>,
}

impl LcmLattice {
    /// Builds the lattice, rejecting non-minimal or mis-sized generator lists.
    pub fn new(vars: Variables, generators: &[Monomial]) -> Result<Self> {
        Self::with_limit(vars, generators, usize::MAX)
    }

    /// Like [`LcmLattice::new`], refusing lattices with more than `limit` elements.
    pub fn with_limit(vars: Variables, generators: &[Monomial], limit: usize) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::domain("an ideal needs at least one generator"));
        }
        for g in generators {
            if g.nvars() != vars.len() {
                return Err(Error::Dimension { left: g.nvars(), right: vars.len() });
            }
            if g.is_one() {
                return Err(Error::domain("the unit ideal has no proper LCM lattice"));
            }
        }
        for (i, a) in generators.iter().enumerate() {
            for (j, b) in generators.iter().enumerate() {
                if i != j && a.divides(b)? {
                    return Err(Error::Validation(format!(
                        "generators are not minimal: {} divides {}",
                        a.display(&vars),
                        b.display(&vars)
                    )));
                }
            }
        }
        let mut elements: BTreeSet<Monomial> = BTreeSet::new();
        elements.insert(Monomial::one(vars.len()));
        for g in generators {
            let fresh: Vec<Monomial> =
                elements.iter().map(|m| m.lcm(g)).collect::<Result<_>>()?;
            elements.extend(fresh);
            if elements.len() > limit {
                return Err(Error::Refused(format!(
                    "LCM lattice exceeds {limit} elements"
                )));
            }
        }
        let labels: Vec<Monomial> = elements.into_iter().collect();
        let poset = Poset::from_leq(labels.len(), |x, y| {
            labels[x].divides(&labels[y]).expect("same variable count")
        })?;
        let lattice = Lattice::from_poset(poset)?;
        let index: HashMap<Monomial, usize> =
            labels.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut gens: Vec<usize> = generators.iter().map(|g| index[g]).collect();
        gens.sort_unstable();
        Ok(LcmLattice { lattice, labels, generators: gens, vars, index })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn label(&self, x: usize) -> &Monomial {
        &self.labels[x]
    }

    pub fn labels(&self) -> &[Monomial] {
        &self.labels
    }

    /// Ids of the minimal generators; these are exactly the atoms.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn vars(&self) -> &Variables {
        &self.vars
    }

    pub fn id_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// The largest lattice element dividing `m`: the lcm of all generators
    /// dividing `m`, or the bottom if there are none.
    pub fn largest_divisor(&self, m: &Monomial) -> Result<usize> {
        let mut acc = self.lattice.bottom();
        for &g in &self.generators {
            if self.labels[g].divides(m)? {
                acc = self.lattice.join(acc, g);
            }
        }
        Ok(acc)
    }

    pub fn to_json(&self) -> LatticeJson {
        let mut json = self.lattice.to_json();
        json.labels = Some(self.labels.iter().map(|m| m.display(&self.vars).to_string()).collect());
        json
    }
}

impl Deref for LcmLattice {
    type Target = Lattice;

    fn deref(&self) -> &Lattice {
        &self.lattice
    }
}
