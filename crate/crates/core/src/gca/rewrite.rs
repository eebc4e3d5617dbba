use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::sync::Arc;

use super::element::GradedElement;
use super::monomial::{GeneratorTable, Monomial};
use super::scalar::Scalar;
use crate::error::{Error, Result};

pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Clone, Debug)]
pub struct Rule {
    pub lhs: Monomial,
    pub rhs: GradedElement,
}

/// Ordered monomial rewrite rules defining a quotient algebra.
///
/// Every rule must strictly decrease the lexicographic exponent order in
/// which generators are compared in `priority` order. That order is a
/// monomial well-order, so normalization terminates.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    table: Arc<GeneratorTable>,
    rules: Vec<Rule>,
    priority: Vec<usize>,
    budget: usize,
}

impl RewriteSystem {
    pub fn empty(table: &Arc<GeneratorTable>) -> Self {
        RewriteSystem {
            table: table.clone(),
            rules: Vec::new(),
            priority: (0..table.len()).collect(),
            budget: DEFAULT_BUDGET,
        }
    }

    /// `priority` lists generator indices from most to least significant;
    /// `None` uses table order.
    pub fn new(
        table: &Arc<GeneratorTable>,
        rules: Vec<Rule>,
        priority: Option<Vec<usize>>,
    ) -> Result<Self> {
        let priority = priority.unwrap_or_else(|| (0..table.len()).collect());
        let mut seen = vec![false; table.len()];
        for &p in &priority {
            if p >= table.len() || seen[p] {
                return Err(Error::InvalidParameter(
                    "rewrite priority must be a permutation of the generators".into(),
                ));
            }
            seen[p] = true;
        }
        if priority.len() != table.len() {
            return Err(Error::InvalidParameter(
                "rewrite priority must be a permutation of the generators".into(),
            ));
        }
        for (index, rule) in rules.iter().enumerate() {
            if !Arc::ptr_eq(rule.rhs.table(), table) && **rule.rhs.table() != **table {
                return Err(Error::TableMismatch);
            }
            let decreasing = rule
                .rhs
                .terms()
                .all(|(m, _)| m.cmp_priority(&rule.lhs, &priority) == Ordering::Less);
            if !decreasing {
                return Err(Error::RuleNotDecreasing { index });
            }
        }
        Ok(RewriteSystem { table: table.clone(), rules, priority, budget: DEFAULT_BUDGET })
    }

    pub fn with_budget(mut self, budget: usize) -> Self {
        self.budget = budget;
        self
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn priority(&self) -> &[usize] {
        &self.priority
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    /// Whether no rule applies to `m`.
    pub fn is_normal(&self, m: &Monomial) -> bool {
        self.rules.iter().all(|r| !r.lhs.divides(m))
    }

    /// Rewrites until no rule applies. Largest monomials are reduced first.
    pub fn normalize(&self, a: &GradedElement) -> Result<GradedElement> {
        if self.rules.is_empty() {
            return Ok(a.clone());
        }
        let cap = a.cap();
        let mut pending: BTreeMap<Monomial, Scalar> = a.clone().into_terms();
        let mut done: BTreeMap<Monomial, Scalar> = BTreeMap::new();
        let mut steps = 0usize;
        while let Some((m, c)) = pending.pop_last() {
            if c.is_zero() {
                continue;
            }
            let Some(rule) = self.rules.iter().find(|r| r.lhs.divides(&m)) else {
                accumulate(&mut done, m, c);
                continue;
            };
            steps += 1;
            if steps > self.budget {
                return Err(Error::RewriteBudget(self.budget));
            }
            let (neg, rest) = rule.lhs.quotient(&m, &self.table).expect("lhs divides m");
            let c = if neg { -c } else { c };
            for (rm, rc) in rule.rhs.terms() {
                if let Some((neg2, prod)) = rm.mul(&rest, &self.table) {
                    if cap.is_some_and(|n| prod.degree() > n) {
                        continue;
                    }
                    let k = rc * &c;
                    accumulate(&mut pending, prod, if neg2 { -k } else { k });
                }
            }
        }
        Ok(GradedElement::from_terms(&self.table, done, cap))
    }
}

fn accumulate(map: &mut BTreeMap<Monomial, Scalar>, m: Monomial, c: Scalar) {
    use std::collections::btree_map::Entry;
    match map.entry(m) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += &c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane() -> (Arc<GeneratorTable>, RewriteSystem) {
        let t = GeneratorTable::new([("x", 0), ("y", 0), ("z", 0)]).unwrap();
        let x = GradedElement::generator(&t, 0);
        let y = GradedElement::generator(&t, 1);
        let rhs = GradedElement::one(&t).sub(&x.mul(&x)).sub(&y.mul(&y));
        let lhs = Monomial::from_exponents(&t, vec![0, 0, 2]).unwrap();
        let rs = RewriteSystem::new(&t, vec![Rule { lhs, rhs }], Some(vec![2, 1, 0])).unwrap();
        (t, rs)
    }

    #[test]
    fn sphere_relation_applies_once() {
        let (t, rs) = plane();
        let x = GradedElement::generator(&t, 0);
        let z = GradedElement::generator(&t, 2);
        let out = rs.normalize(&z.mul(&z).mul(&x)).unwrap();
        assert_eq!(out.to_string(), "x - x^3 - x*y^2");
        assert_eq!(rs.normalize(&out).unwrap(), out);
    }

    #[test]
    fn increasing_rule_rejected() {
        let t = GeneratorTable::new([("x", 0), ("y", 0)]).unwrap();
        let lhs = Monomial::generator(&t, 1);
        let rhs = GradedElement::generator(&t, 0);
        assert!(matches!(
            RewriteSystem::new(&t, vec![Rule { lhs, rhs }], None),
            Err(Error::RuleNotDecreasing { index: 0 })
        ));
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let (t, rs) = plane();
        let z = GradedElement::generator(&t, 2);
        let mut p = GradedElement::one(&t);
        for _ in 0..8 {
            p = p.mul(&z);
        }
        assert!(matches!(rs.with_budget(3).normalize(&p), Err(Error::RewriteBudget(3))));
    }
}
