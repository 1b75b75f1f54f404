use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent vector over a fixed, ordered variable set.
///
/// The derived `Ord` is lexicographic on exponents. Divisibility implies
/// lexicographic order, so sorting by it always yields a linear extension of
/// divisibility.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { exps: vec![0; nvars] }
    }

    /// `x_i^power` in `nvars` variables.
    pub fn variable_power(nvars: usize, i: usize, power: u32) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = power;
        Monomial { exps }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| e as u64).sum()
    }

    fn check(&self, other: &Monomial) -> Result<()> {
        if self.exps.len() != other.exps.len() {
            return Err(Error::Dimension { left: self.exps.len(), right: other.exps.len() });
        }
        Ok(())
    }

    pub fn lcm(&self, other: &Monomial) -> Result<Monomial> {
        self.check(other)?;
        Ok(Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect(),
        })
    }

    pub fn gcd(&self, other: &Monomial) -> Result<Monomial> {
        self.check(other)?;
        Ok(Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect(),
        })
    }

    /// Whether `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> Result<bool> {
        self.check(other)?;
        Ok(self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b))
    }

    /// `self / divisor`; fails unless `divisor` divides `self`.
    pub fn quotient(&self, divisor: &Monomial) -> Result<Monomial> {
        if !divisor.divides(self)? {
            return Err(Error::domain("quotient by a non-divisor"));
        }
        Ok(Monomial {
            exps: self.exps.iter().zip(&divisor.exps).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn product(&self, other: &Monomial) -> Result<Monomial> {
        self.check(other)?;
        Ok(Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
        })
    }

    /// Renders in the `x^2*y*z` grammar using `vars` as names.
    pub fn display<'a>(&'a self, vars: &'a Variables) -> MonomialDisplay<'a> {
        MonomialDisplay { monomial: self, vars }
    }
}

/// Ordered variable names of the ambient polynomial ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Variables {
    names: Vec<String>,
}

impl Variables {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) {
                return Err(Error::Validation(format!("`{n}` is not a valid variable name")));
            }
            if names[..i].contains(n) {
                return Err(Error::Validation(format!("variable `{n}` listed twice")));
            }
        }
        Ok(Variables { names })
    }

    /// `prefix0, prefix1, ...` or `prefix1, ...` depending on `start`.
    pub fn indexed(prefix: &str, start: usize, count: usize) -> Self {
        Variables { names: (start..start + count).map(|i| format!("{prefix}{i}")).collect() }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn concat(&self, other: &Variables) -> Result<Variables> {
        Variables::new(self.names.iter().chain(&other.names).cloned())
    }

    /// Parses one monomial: `var` or `var^k` factors joined by `*`, or `1`.
    pub fn parse_monomial(&self, text: &str) -> Result<Monomial> {
        self.parse_at(text, 0)
    }

    pub(crate) fn parse_at(&self, text: &str, offset: usize) -> Result<Monomial> {
        let mut exps = vec![0u32; self.len()];
        let trimmed = text.trim();
        let lead = text.len() - text.trim_start().len();
        if trimmed == "1" {
            return Ok(Monomial { exps });
        }
        if trimmed.is_empty() {
            return Err(Error::Parse { position: offset, message: "empty monomial".into() });
        }
        let mut pos = offset + lead;
        for factor in trimmed.split('*') {
            let flead = factor.len() - factor.trim_start().len();
            let f = factor.trim();
            let at = pos + flead;
            let (name, power) = match f.split_once('^') {
                Some((n, k)) => {
                    let k: u32 = k.trim().parse().map_err(|_| Error::Parse {
                        position: at + n.len() + 1,
                        message: format!("bad exponent `{}`", k.trim()),
                    })?;
                    (n.trim(), k)
                }
                None => (f, 1),
            };
            let idx = self.index_of(name).ok_or_else(|| Error::Parse {
                position: at,
                message: if name.is_empty() {
                    "missing factor".to_string()
                } else {
                    format!("unknown variable `{name}`")
                },
            })?;
            exps[idx] += power;
            pos += factor.len() + 1;
        }
        Ok(Monomial { exps })
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub struct MonomialDisplay<'a> {
    monomial: &'a Monomial,
    vars: &'a Variables,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.monomial.is_one() {
            return write!(f, "1");
        }
        let mut first = true;
        for (name, &e) in self.vars.names.iter().zip(&self.monomial.exps) {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{name}")?;
            } else {
                write!(f, "{name}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn xyz() -> Variables {
        Variables::new(["x", "y", "z"]).unwrap()
    }

    fn m(s: &str) -> Monomial {
        xyz().parse_monomial(s).unwrap()
    }

    #[test]
    fn lcm_examples() {
        assert_eq!(m("x^2*y").lcm(&m("y^3*z")).unwrap(), m("x^2*y^3*z"));
        assert_eq!(m("x*z").lcm(&m("1")).unwrap(), m("x*z"));
        assert_eq!(m("x*y^2").lcm(&m("x*y^2")).unwrap(), m("x*y^2"));
    }

    #[test]
    fn divides_examples() {
        assert!(m("x*y").divides(&m("x*y*z")).unwrap());
        assert!(!m("x^2").divides(&m("x")).unwrap());
        assert!(m("1").divides(&m("x^4*z")).unwrap());
    }

    #[test]
    fn degree_examples() {
        assert_eq!(m("1").degree(), 0);
        assert_eq!(m("x^2*y^3*z").degree(), 6);
        let v = Variables::new(["a", "b", "c", "d", "e", "f"]).unwrap();
        assert_eq!(v.parse_monomial("a*b*c*d*e").unwrap().degree(), 5);
    }

    #[test]
    fn quotient_examples() {
        assert_eq!(m("x*y*z").quotient(&m("x*y")).unwrap(), m("z"));
        assert_eq!(m("x*y").quotient(&m("x*y")).unwrap(), m("1"));
        let v = Variables::new(["a", "b", "c", "d", "e", "f"]).unwrap();
        let q = v
            .parse_monomial("a*b*c*d*e*f")
            .unwrap()
            .quotient(&v.parse_monomial("a*b*c*d*e").unwrap())
            .unwrap();
        assert_eq!(q, v.parse_monomial("f").unwrap());
        assert!(matches!(m("x").quotient(&m("y")), Err(Error::Domain(_))));
    }

    #[test]
    fn dimension_mismatch() {
        let short = Monomial::new(vec![1, 0]);
        assert_eq!(short.lcm(&m("x")), Err(Error::Dimension { left: 2, right: 3 }));
        assert!(short.divides(&m("x")).is_err());
    }

    #[test]
    fn parse_and_display() {
        let v = xyz();
        assert_eq!(m("x^2 * y^3*z").display(&v).to_string(), "x^2*y^3*z");
        assert_eq!(m("1").display(&v).to_string(), "1");
        assert_eq!(m("x*x").exponents(), &[2, 0, 0]);
        match v.parse_monomial("x*w") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("{other:?}"),
        }
        assert!(v.parse_monomial("x^").is_err());
        assert!(v.parse_monomial("x**y").is_err());
        assert!(Variables::new(["x", "x"]).is_err());
        assert!(Variables::new(["2x"]).is_err());
    }

    fn mono() -> impl Strategy<Value = Monomial> {
        proptest::collection::vec(0u32..4, 4).prop_map(Monomial::new)
    }

    proptest! {
        #[test]
        fn lcm_laws(a in mono(), b in mono(), c in mono()) {
            let ab = a.lcm(&b).unwrap();
            prop_assert_eq!(&ab, &b.lcm(&a).unwrap());
            prop_assert_eq!(ab.lcm(&c).unwrap(), a.lcm(&b.lcm(&c).unwrap()).unwrap());
            prop_assert_eq!(a.lcm(&a).unwrap(), a.clone());
            prop_assert!(a.divides(&ab).unwrap());
            prop_assert!(a <= ab);
            let sum = a.degree() + b.degree();
            prop_assert!(ab.degree() <= sum);
            let disjoint = a.exponents().iter().zip(b.exponents()).all(|(x, y)| *x == 0 || *y == 0);
            prop_assert_eq!(ab.degree() == sum, disjoint);
        }

        #[test]
        fn display_parse_roundtrip(a in mono()) {
            let v = Variables::new(["a", "b", "c", "d"]).unwrap();
            let text = a.display(&v).to_string();
            prop_assert_eq!(v.parse_monomial(&text).unwrap(), a);
        }
    }
}
