//! Sparse exact linear algebra over a [`Field`].
//!
//! Vectors are sorted `(index, scalar)` lists. Elimination is top-reduction
//! against a pivot table keyed by each row's largest index; the insertion order
//! of rows fixes which basis a computation returns.

use std::collections::HashMap;

use crate::algebra::{Field, Scalar};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, Scalar)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(index: usize, field: Field) -> Self {
        SparseVec { entries: vec![(index, field.one())] }
    }

    /// Builds from arbitrary `(index, scalar)` pairs, summing duplicates.
    pub fn from_pairs(mut pairs: Vec<(usize, Scalar)>) -> Self {
        pairs.sort_by_key(|(i, _)| *i);
        let mut entries: Vec<(usize, Scalar)> = Vec::with_capacity(pairs.len());
        for (i, s) in pairs {
            match entries.last_mut() {
                Some((j, acc)) if *j == i => *acc += &s,
                _ => entries.push((i, s)),
            }
        }
        entries.retain(|(_, s)| !s.is_zero());
        SparseVec { entries }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> + '_ {
        self.entries.iter().map(|(i, s)| (*i, s))
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.iter().map(|(i, _)| *i)
    }

    pub fn get(&self, index: usize) -> Option<&Scalar> {
        self.entries
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|k| &self.entries[k].1)
    }

    /// Largest index with a nonzero entry.
    pub fn pivot(&self) -> Option<usize> {
        self.entries.last().map(|(i, _)| *i)
    }

    /// `self += coeff * other`
    pub fn axpy(&mut self, coeff: &Scalar, other: &SparseVec) {
        if coeff.is_zero() || other.is_zero() {
            return;
        }
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a.next();
                    } else if j < i {
                        out.push((*j, coeff * y));
                        b.next();
                    } else {
                        let s = x + &(coeff * y);
                        if !s.is_zero() {
                            out.push((*i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a.next();
                }
                (None, Some((j, y))) => {
                    out.push((*j, coeff * y));
                    b.next();
                }
                (None, None) => break,
            }
        }
        self.entries = out;
    }

    pub fn scale(&mut self, coeff: &Scalar) {
        if coeff.is_zero() {
            self.entries.clear();
        } else {
            for (_, s) in &mut self.entries {
                *s = &*s * coeff;
            }
        }
    }

    pub fn scaled(&self, coeff: &Scalar) -> SparseVec {
        let mut v = self.clone();
        v.scale(coeff);
        v
    }

    pub fn map_indices(&self, f: impl Fn(usize) -> usize) -> SparseVec {
        SparseVec::from_pairs(self.entries.iter().map(|(i, s)| (f(*i), s.clone())).collect())
    }
}

struct Row {
    vec: SparseVec,
    combo: SparseVec,
}

/// Incremental row-echelon table with optional tracking of how each stored
/// row was formed from the inserted vectors.
pub struct Reducer {
    field: Field,
    rows: HashMap<usize, Row>,
    track: bool,
}

pub enum Insert {
    /// The vector was independent and is now a pivot row.
    Pivot(usize),
    /// The vector reduced to zero; `combo` is the dependency (meaningful only
    /// when tracking).
    Dependent(SparseVec),
}

impl Reducer {
    pub fn new(field: Field, track: bool) -> Self {
        Reducer { field, rows: HashMap::new(), track }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce_tracked(&self, mut v: SparseVec, mut combo: SparseVec) -> (SparseVec, SparseVec) {
        while let Some(p) = v.pivot() {
            let Some(row) = self.rows.get(&p) else { break };
            let c = -v.get(p).expect("pivot entry");
            v.axpy(&c, &row.vec);
            if self.track {
                combo.axpy(&c, &row.combo);
            }
        }
        (v, combo)
    }

    /// Top-reduces `v` against the table.
    pub fn reduce(&self, v: SparseVec) -> SparseVec {
        self.reduce_tracked(v, SparseVec::new()).0
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v.clone()).is_zero()
    }

    /// Inserts `v`, labelled as original vector `label` for tracking purposes.
    pub fn insert(&mut self, v: SparseVec, label: usize) -> Insert {
        let combo = if self.track { SparseVec::unit(label, self.field) } else { SparseVec::new() };
        self.insert_with(v, combo)
    }

    fn insert_with(&mut self, v: SparseVec, combo: SparseVec) -> Insert {
        let (mut v, mut combo) = self.reduce_tracked(v, combo);
        match v.pivot() {
            None => Insert::Dependent(combo),
            Some(p) => {
                let inv = v.get(p).expect("pivot entry").inv();
                v.scale(&inv);
                combo.scale(&inv);
                self.rows.insert(p, Row { vec: v, combo });
                Insert::Pivot(p)
            }
        }
    }

    /// Inserts a vector whose residue is kept as-is; returns the residue.
    pub fn insert_residue(&mut self, v: SparseVec) -> Option<SparseVec> {
        let residue = self.reduce(v);
        if residue.is_zero() {
            return None;
        }
        self.insert_with(residue.clone(), SparseVec::new());
        Some(residue)
    }

    /// Expresses `b` as a combination of the inserted (labelled) vectors.
    /// Requires tracking.
    pub fn solve(&self, b: &SparseVec) -> Option<SparseVec> {
        assert!(self.track, "solve needs a tracking reducer");
        let (residue, combo) = self.reduce_tracked(b.clone(), SparseVec::new());
        residue.is_zero().then(|| combo.scaled(&-self.field.one()))
    }
}

/// Kernel basis of the linear map sending labelled basis vector `id` to `image`.
pub fn kernel<'a>(
    field: Field,
    columns: impl IntoIterator<Item = (usize, &'a SparseVec)>,
) -> Vec<SparseVec> {
    let mut red = Reducer::new(field, true);
    let mut out = Vec::new();
    for (id, col) in columns {
        if let Insert::Dependent(combo) = red.insert(col.clone(), id) {
            out.push(combo);
        }
    }
    out
}

pub fn rank<'a>(field: Field, vectors: impl IntoIterator<Item = &'a SparseVec>) -> usize {
    let mut red = Reducer::new(field, false);
    for v in vectors {
        red.insert(v.clone(), 0);
    }
    red.rank()
}

/// Cycle representatives of `ker d_k / im d_{k+1}`.
///
/// `columns_k` lists `(id, d_k(id))` for the basis of `C_k`; `boundaries` are
/// the images `d_{k+1}` of the basis of `C_{k+1}`. Representatives are kernel
/// vectors reduced modulo boundaries and earlier representatives.
pub fn homology_representatives<'a>(
    field: Field,
    columns_k: impl IntoIterator<Item = (usize, &'a SparseVec)>,
    boundaries: impl IntoIterator<Item = &'a SparseVec>,
) -> Vec<SparseVec> {
    let cycles = kernel(field, columns_k);
    let mut red = Reducer::new(field, false);
    for b in boundaries {
        red.insert(b.clone(), 0);
    }
    cycles.into_iter().filter_map(|z| red.insert_residue(z)).collect()
}
