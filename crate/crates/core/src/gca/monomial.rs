use std::cmp::Ordering;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Ordered generator names and degrees. The order fixes canonical forms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneratorTable {
    names: Vec<String>,
    degrees: Vec<u32>,
}

fn valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && name != "pi"
        && name != "i"
}

impl GeneratorTable {
    pub fn new<S: Into<String>>(gens: impl IntoIterator<Item = (S, u32)>) -> Result<Arc<Self>> {
        let mut names: Vec<String> = Vec::new();
        let mut degrees = Vec::new();
        for (name, deg) in gens {
            let name = name.into();
            if !valid_name(&name) {
                return Err(Error::InvalidGeneratorName(name));
            }
            if names.contains(&name) {
                return Err(Error::DuplicateGenerator(name));
            }
            names.push(name);
            degrees.push(deg);
        }
        Ok(Arc::new(GeneratorTable { names, degrees }))
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.degrees[i] % 2 == 1
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn lookup(&self, name: &str) -> Result<usize> {
        self.index(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u32)> {
        self.names.iter().map(String::as_str).zip(self.degrees.iter().copied())
    }

    /// Concatenation; names must stay unique.
    pub fn concat(&self, other: &GeneratorTable) -> Result<Arc<GeneratorTable>> {
        GeneratorTable::new(self.iter().chain(other.iter()).map(|(n, d)| (n.to_string(), d)))
    }
}

/// A product of generators in table order, stored as a dense exponent vector.
///
/// Ordered by total degree, then number of factors, then lexicographically
/// with larger exponents on earlier generators first.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    degree: u32,
    exps: Box<[u16]>,
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.length().cmp(&other.length()))
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Monomial {
    pub fn one(table: &GeneratorTable) -> Self {
        Monomial { degree: 0, exps: vec![0; table.len()].into_boxed_slice() }
    }

    pub fn generator(table: &GeneratorTable, i: usize) -> Self {
        let mut exps = vec![0; table.len()];
        exps[i] = 1;
        Monomial { degree: table.degree(i), exps: exps.into_boxed_slice() }
    }

    /// Builds from exponents; `None` if an odd generator is repeated.
    pub fn from_exponents(table: &GeneratorTable, exps: Vec<u16>) -> Option<Self> {
        let mut degree = 0;
        for (i, &e) in exps.iter().enumerate() {
            if e > 1 && table.is_odd(i) {
                return None;
            }
            degree += e as u32 * table.degree(i);
        }
        Some(Monomial { degree, exps: exps.into_boxed_slice() })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Number of factors counted with multiplicity.
    pub fn length(&self) -> u32 {
        self.exps.iter().map(|&e| e as u32).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u16 {
        self.exps[i]
    }

    /// Degree contributed by the generators selected by `keep`.
    pub fn partial_degree(&self, table: &GeneratorTable, keep: impl Fn(usize) -> bool) -> u32 {
        self.exps
            .iter()
            .enumerate()
            .filter(|&(i, _)| keep(i))
            .map(|(i, &e)| e as u32 * table.degree(i))
            .sum()
    }

    /// Product with the Koszul sign: `self * other = sign * result`.
    /// `None` when an odd generator would repeat.
    pub fn mul(&self, other: &Monomial, table: &GeneratorTable) -> Option<(bool, Monomial)> {
        let n = self.exps.len();
        let mut negative = false;
        // Count odd generators of `self` that must pass each odd generator of `other`.
        let mut odd_after = 0usize;
        for i in (0..n).rev() {
            if table.is_odd(i) {
                if other.exps[i] == 1 {
                    if self.exps[i] == 1 {
                        return None;
                    }
                    if odd_after % 2 == 1 {
                        negative = !negative;
                    }
                }
                if self.exps[i] == 1 {
                    odd_after += 1;
                }
            }
        }
        let exps: Box<[u16]> = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a + b).collect();
        Some((negative, Monomial { degree: self.degree + other.degree, exps }))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// For `self | other`, returns `(negative, rest)` with `self * rest = ± other`.
    pub fn quotient(&self, other: &Monomial, table: &GeneratorTable) -> Option<(bool, Monomial)> {
        if !self.divides(other) {
            return None;
        }
        let exps: Vec<u16> = other.exps.iter().zip(self.exps.iter()).map(|(b, a)| b - a).collect();
        let rest = Monomial::from_exponents(table, exps)?;
        let (negative, _) = self.mul(&rest, table)?;
        Some((negative, rest))
    }

    /// Splits into `(negative, left, right)` with `left * right = ± self`,
    /// where `left` collects the generators selected by `pick`.
    pub fn split(&self, table: &GeneratorTable, pick: impl Fn(usize) -> bool) -> (bool, Monomial, Monomial) {
        let mut left = vec![0u16; self.exps.len()];
        let mut right = vec![0u16; self.exps.len()];
        for (i, &e) in self.exps.iter().enumerate() {
            if pick(i) {
                left[i] = e;
            } else {
                right[i] = e;
            }
        }
        let left = Monomial::from_exponents(table, left).expect("sub-monomial");
        let right = Monomial::from_exponents(table, right).expect("sub-monomial");
        let (negative, _) = left.mul(&right, table).expect("disjoint support");
        (negative, left, right)
    }

    /// Lexicographic comparison with generators visited in `priority` order.
    pub fn cmp_priority(&self, other: &Monomial, priority: &[usize]) -> Ordering {
        for &i in priority {
            match self.exps[i].cmp(&other.exps[i]) {
                Ordering::Equal => continue,
                o => return o,
            }
        }
        Ordering::Equal
    }

    /// Factors in canonical order, one entry per occurrence.
    pub fn factors(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, &e) in self.exps.iter().enumerate() {
            for _ in 0..e {
                out.push(i);
            }
        }
        out
    }

    pub fn display<'a>(&'a self, table: &'a GeneratorTable) -> impl std::fmt::Display + 'a {
        MonomialDisplay { m: self, table }
    }
}

struct MonomialDisplay<'a> {
    m: &'a Monomial,
    table: &'a GeneratorTable,
}

impl std::fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, &e) in self.m.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.table.name(i))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table() -> Arc<GeneratorTable> {
        GeneratorTable::new([("t1", 1), ("t2", 1), ("z", 2)]).unwrap()
    }

    #[test]
    fn odd_generators_anticommute() {
        let t = table();
        let a = Monomial::generator(&t, 0);
        let b = Monomial::generator(&t, 1);
        let (neg_ab, ab) = a.mul(&b, &t).unwrap();
        let (neg_ba, ba) = b.mul(&a, &t).unwrap();
        assert_eq!(ab, ba);
        assert!(!neg_ab && neg_ba);
        assert!(a.mul(&a, &t).is_none());
    }

    #[test]
    fn quotient_inverts_product() {
        let t = table();
        let m = Monomial::from_exponents(&t, vec![1, 1, 2]).unwrap();
        let d = Monomial::generator(&t, 1);
        let (neg, rest) = d.quotient(&m, &t).unwrap();
        let (neg2, back) = d.mul(&rest, &t).unwrap();
        assert_eq!(back, m);
        assert_eq!(neg, neg2);
        assert!(neg);
    }

    #[test]
    fn names_are_validated() {
        assert!(GeneratorTable::new([("pi", 0)]).is_err());
        assert!(GeneratorTable::new([("1x", 0)]).is_err());
        assert!(GeneratorTable::new([("x", 0), ("x", 1)]).is_err());
    }
}
