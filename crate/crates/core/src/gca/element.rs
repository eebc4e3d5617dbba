use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::monomial::{GeneratorTable, Monomial};
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// An element of the free graded-commutative algebra on a generator table,
/// in canonical form, optionally truncated above a degree cap.
#[derive(Clone)]
pub struct GradedElement {
    table: Arc<GeneratorTable>,
    terms: BTreeMap<Monomial, Scalar>,
    cap: Option<u32>,
}

fn min_cap(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl PartialEq for GradedElement {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.table, &other.table) || self.table == other.table)
            && self.terms == other.terms
    }
}

impl Eq for GradedElement {}

impl GradedElement {
    pub fn zero(table: &Arc<GeneratorTable>) -> Self {
        GradedElement { table: table.clone(), terms: BTreeMap::new(), cap: None }
    }

    pub fn scalar(table: &Arc<GeneratorTable>, c: Scalar) -> Self {
        let mut e = GradedElement::zero(table);
        e.add_term(Monomial::one(table), c);
        e
    }

    pub fn one(table: &Arc<GeneratorTable>) -> Self {
        GradedElement::scalar(table, Scalar::one())
    }

    pub fn generator(table: &Arc<GeneratorTable>, i: usize) -> Self {
        GradedElement::monomial(table, Monomial::generator(table, i), Scalar::one())
    }

    pub fn named(table: &Arc<GeneratorTable>, name: &str) -> Result<Self> {
        Ok(GradedElement::generator(table, table.lookup(name)?))
    }

    pub fn monomial(table: &Arc<GeneratorTable>, m: Monomial, c: Scalar) -> Self {
        let mut e = GradedElement::zero(table);
        e.add_term(m, c);
        e
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn cap(&self) -> Option<u32> {
        self.cap
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// The degree-0 monomial's coefficient.
    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Monomial::one(&self.table))
    }

    /// Adds `c * m`, respecting the cap.
    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() || self.cap.is_some_and(|n| m.degree() > n) {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn with_cap(mut self, cap: Option<u32>) -> Self {
        if let Some(n) = cap {
            self = self.truncate(n);
        }
        self
    }

    fn check_table(&self, other: &GradedElement) -> Result<()> {
        if Arc::ptr_eq(&self.table, &other.table) || self.table == other.table {
            Ok(())
        } else {
            Err(Error::TableMismatch)
        }
    }

    pub fn try_add(&self, other: &GradedElement) -> Result<GradedElement> {
        self.check_table(other)?;
        let mut out = self.clone();
        out.set_cap(min_cap(self.cap, other.cap));
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &GradedElement) -> Result<GradedElement> {
        self.check_table(other)?;
        let mut out = GradedElement::zero(&self.table);
        out.cap = min_cap(self.cap, other.cap);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if out.cap.is_some_and(|n| ma.degree() + mb.degree() > n) {
                    continue;
                }
                if let Some((neg, m)) = ma.mul(mb, &self.table) {
                    let c = ca * cb;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// In-place `self += c * other`; tables must match.
    pub fn add_scaled(&mut self, other: &GradedElement, c: &Scalar) {
        assert!(self.check_table(other).is_ok(), "generator tables must match");
        if let Some(n) = other.cap {
            if self.cap.map_or(true, |m| n < m) {
                self.set_cap(Some(n));
            }
        }
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.clone(), if c.is_one() { a.clone() } else { a * c });
        }
    }

    pub fn add_assign(&mut self, other: &GradedElement) {
        self.add_scaled(other, &Scalar::one());
    }

    pub fn add(&self, other: &GradedElement) -> GradedElement {
        self.try_add(other).expect("generator tables must match")
    }

    pub fn sub(&self, other: &GradedElement) -> GradedElement {
        self.add(&other.neg())
    }

    /// Raw product in the free algebra (no quotient rewriting).
    pub fn mul(&self, other: &GradedElement) -> GradedElement {
        self.try_mul(other).expect("generator tables must match")
    }

    pub fn neg(&self) -> GradedElement {
        self.scale(&Scalar::from_int(-1))
    }

    pub fn scale(&self, c: &Scalar) -> GradedElement {
        let mut out = GradedElement::zero(&self.table);
        out.cap = self.cap;
        if c.is_zero() {
            return out;
        }
        for (m, a) in &self.terms {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    /// Drops monomials above degree `n` and records `n` as the cap.
    pub fn truncate(&self, n: u32) -> GradedElement {
        let cap = Some(self.cap.map_or(n, |c| c.min(n)));
        GradedElement {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() <= n)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
            cap,
        }
    }

    /// Removes the cap without changing terms.
    pub fn uncapped(mut self) -> GradedElement {
        self.cap = None;
        self
    }

    /// Sets a cap directly (terms above it are dropped).
    pub(crate) fn set_cap(&mut self, cap: Option<u32>) {
        self.cap = cap;
        if let Some(n) = cap {
            self.terms.retain(|m, _| m.degree() <= n);
        }
    }

    /// The homogeneous component of degree `k`.
    pub fn part(&self, k: u32) -> GradedElement {
        self.filter(|m| m.degree() == k)
    }

    pub fn filter(&self, keep: impl Fn(&Monomial) -> bool) -> GradedElement {
        GradedElement {
            table: self.table.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
            cap: self.cap,
        }
    }

    /// Applies `f` to every coefficient.
    pub fn map_coefficients(&self, f: impl Fn(&Monomial, &Scalar) -> Scalar) -> GradedElement {
        let mut out = GradedElement::zero(&self.table);
        out.cap = self.cap;
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(m, c));
        }
        out
    }

    /// Negates the odd-degree part: `x -> (-1)^{|x|} x`.
    pub fn parity_twist(&self) -> GradedElement {
        self.map_coefficients(|m, c| if m.degree() % 2 == 1 { -c } else { c.clone() })
    }

    /// Degree if homogeneous and nonzero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    pub fn max_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn min_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).min()
    }

    /// Moves the element to a larger table that extends this one by appending
    /// generators (`offset` is where this table starts in the target).
    pub fn embed(&self, target: &Arc<GeneratorTable>, offset: usize) -> GradedElement {
        let mut out = GradedElement::zero(target);
        out.cap = self.cap;
        for (m, c) in &self.terms {
            let mut exps = vec![0u16; target.len()];
            exps[offset..offset + self.table.len()].copy_from_slice(m.exponents());
            let mm = Monomial::from_exponents(target, exps).expect("embedding preserves parity");
            out.add_term(mm, c.clone());
        }
        out
    }

    /// Whether any monomial involves a generator selected by `pred`.
    pub fn involves(&self, pred: impl Fn(usize) -> bool) -> bool {
        self.terms
            .keys()
            .any(|m| m.exponents().iter().enumerate().any(|(i, &e)| e > 0 && pred(i)))
    }

    pub(crate) fn into_terms(self) -> BTreeMap<Monomial, Scalar> {
        self.terms
    }

    pub(crate) fn from_terms(
        table: &Arc<GeneratorTable>,
        terms: BTreeMap<Monomial, Scalar>,
        cap: Option<u32>,
    ) -> GradedElement {
        let mut e = GradedElement { table: table.clone(), terms, cap: None };
        e.terms.retain(|_, c| !c.is_zero());
        e.set_cap(cap);
        e
    }
}

impl fmt::Display for GradedElement {
    /// Terms in increasing (degree, monomial) order; each term is a
    /// coefficient followed by generators in table order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (m, c) in &self.terms {
            for atom in c.atoms() {
                match (first, atom.negative) {
                    (true, true) => write!(f, "-")?,
                    (true, false) => {}
                    (false, true) => write!(f, " - ")?,
                    (false, false) => write!(f, " + ")?,
                }
                first = false;
                let coeff = atom.to_string();
                let mono_is_one = m.is_one();
                if coeff == "1" && !mono_is_one {
                    write!(f, "{}", m.display(&self.table))?;
                } else if mono_is_one {
                    write!(f, "{coeff}")?;
                } else {
                    write!(f, "{coeff}*{}", m.display(&self.table))?;
                }
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GradedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedElement({self}")?;
        if let Some(c) = self.cap {
            write!(f, "; cap {c}")?;
        }
        write!(f, ")")
    }
}
