use std::sync::Arc;

use super::element::GradedElement;
use super::monomial::{GeneratorTable, Monomial};
use super::rewrite::RewriteSystem;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// A graded derivation given by its values on generators.
#[derive(Clone, Debug)]
pub struct DerivationSpec {
    name: String,
    table: Arc<GeneratorTable>,
    degree: i32,
    images: Vec<GradedElement>,
}

impl PartialEq for DerivationSpec {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.images == other.images
    }
}

impl DerivationSpec {
    pub fn new(
        name: impl Into<String>,
        table: &Arc<GeneratorTable>,
        degree: i32,
        images: Vec<GradedElement>,
    ) -> Result<Self> {
        let name = name.into();
        if images.len() != table.len() {
            return Err(Error::Dimension(format!(
                "derivation `{name}` needs {} images, got {}",
                table.len(),
                images.len()
            )));
        }
        for (i, img) in images.iter().enumerate() {
            if !Arc::ptr_eq(img.table(), table) && **img.table() != **table {
                return Err(Error::TableMismatch);
            }
            let want = table.degree(i) as i32 + degree;
            if img.terms().any(|(m, _)| m.degree() as i32 != want) {
                return Err(Error::DerivationDegree {
                    name,
                    generator: table.name(i).to_string(),
                });
            }
        }
        let images = images.into_iter().map(GradedElement::uncapped).collect();
        Ok(DerivationSpec { name, table: table.clone(), degree, images })
    }

    pub fn zero(name: impl Into<String>, table: &Arc<GeneratorTable>, degree: i32) -> Self {
        DerivationSpec {
            name: name.into(),
            table: table.clone(),
            degree,
            images: vec![GradedElement::zero(table); table.len()],
        }
    }

    /// Builds images generator by generator.
    pub fn from_fn(
        name: impl Into<String>,
        table: &Arc<GeneratorTable>,
        degree: i32,
        f: impl Fn(usize) -> GradedElement,
    ) -> Result<Self> {
        DerivationSpec::new(name, table, degree, (0..table.len()).map(f).collect())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn is_odd(&self) -> bool {
        self.degree.rem_euclid(2) == 1
    }

    pub fn image(&self, i: usize) -> &GradedElement {
        &self.images[i]
    }

    pub fn images(&self) -> &[GradedElement] {
        &self.images
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(GradedElement::is_zero)
    }

    /// Image of a single monomial in the free algebra.
    pub fn derive_monomial(&self, m: &Monomial) -> GradedElement {
        let t = &self.table;
        let mut out = GradedElement::zero(t);
        let mut prefix_degree = 0u32;
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !self.images[i].is_zero() {
                // m = P * g^e * S, and D(g^e) = e g^(e-1) D(g).
                let mut left = vec![0u16; t.len()];
                let mut right = vec![0u16; t.len()];
                for (j, &ej) in m.exponents().iter().enumerate() {
                    match j.cmp(&i) {
                        std::cmp::Ordering::Less => left[j] = ej,
                        std::cmp::Ordering::Equal => left[j] = e - 1,
                        std::cmp::Ordering::Greater => right[j] = ej,
                    }
                }
                let left = Monomial::from_exponents(t, left).expect("sub-monomial");
                let right = Monomial::from_exponents(t, right).expect("sub-monomial");
                let sign = self.is_odd() && prefix_degree % 2 == 1;
                let mut c = Scalar::from_int(e as i64);
                if sign {
                    c = -c;
                }
                let term = GradedElement::monomial(t, left, c)
                    .mul(&self.images[i])
                    .mul(&GradedElement::monomial(t, right, Scalar::one()));
                out.add_assign(&term);
            }
            prefix_degree += e as u32 * t.degree(i);
        }
        out
    }

    /// Applies the derivation by the graded Leibniz rule, without rewriting.
    pub fn apply_free(&self, a: &GradedElement) -> GradedElement {
        let mut out = GradedElement::zero(&self.table);
        for (m, c) in a.terms() {
            out.add_scaled(&self.derive_monomial(m), c);
        }
        let cap = a.cap().map(|n| {
            if self.degree < 0 {
                n.saturating_sub(self.degree.unsigned_abs())
            } else {
                n
            }
        });
        out.with_cap(cap)
    }

    /// Applies the derivation and normalizes with `rewrite` if given.
    pub fn apply(&self, a: &GradedElement, rewrite: Option<&RewriteSystem>) -> Result<GradedElement> {
        if !Arc::ptr_eq(a.table(), &self.table) && **a.table() != *self.table {
            return Err(Error::TableMismatch);
        }
        let out = self.apply_free(a);
        match rewrite {
            Some(r) => r.normalize(&out),
            None => Ok(out),
        }
    }
}

/// `[D1, D2] = D1 D2 - (-1)^{|D1||D2|} D2 D1`, evaluated on generators.
pub fn graded_commutator(
    d1: &DerivationSpec,
    d2: &DerivationSpec,
    rewrite: Option<&RewriteSystem>,
) -> Result<DerivationSpec> {
    if !Arc::ptr_eq(d1.table(), d2.table()) && **d1.table() != **d2.table() {
        return Err(Error::TableMismatch);
    }
    let t = d1.table().clone();
    let both_odd = d1.is_odd() && d2.is_odd();
    let mut images = Vec::with_capacity(t.len());
    for i in 0..t.len() {
        let a = d1.apply(d2.image(i), rewrite)?;
        let b = d2.apply(d1.image(i), rewrite)?;
        images.push(if both_odd { a.add(&b) } else { a.sub(&b) });
    }
    DerivationSpec::new(format!("[{},{}]", d1.name(), d2.name()), &t, d1.degree() + d2.degree(), images)
}

/// Linear combination `Σ c_k D_k` of derivations of equal degree.
pub fn combine(
    name: impl Into<String>,
    table: &Arc<GeneratorTable>,
    degree: i32,
    parts: &[(Scalar, &DerivationSpec)],
) -> Result<DerivationSpec> {
    let mut images = vec![GradedElement::zero(table); table.len()];
    for (c, d) in parts {
        if d.degree() != degree {
            return Err(Error::InvalidParameter("combined derivations must share a degree".into()));
        }
        for (img, di) in images.iter_mut().zip(d.images()) {
            img.add_scaled(di, c);
        }
    }
    DerivationSpec::new(name, table, degree, images)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weil_u2() -> (Arc<GeneratorTable>, DerivationSpec, DerivationSpec) {
        let t = GeneratorTable::new([("th1", 1), ("th2", 1), ("z1", 2), ("z2", 2)]).unwrap();
        let g = |i| GradedElement::generator(&t, i);
        let d = DerivationSpec::new(
            "d",
            &t,
            1,
            vec![g(2), g(3), GradedElement::zero(&t), GradedElement::zero(&t)],
        )
        .unwrap();
        let i1 = DerivationSpec::new(
            "i1",
            &t,
            -1,
            vec![GradedElement::one(&t), GradedElement::zero(&t), GradedElement::zero(&t), GradedElement::zero(&t)],
        )
        .unwrap();
        (t, d, i1)
    }

    #[test]
    fn leibniz_signs() {
        let (t, d, i1) = weil_u2();
        let th12 = GradedElement::generator(&t, 0).mul(&GradedElement::generator(&t, 1));
        assert_eq!(d.apply(&th12, None).unwrap().to_string(), "-th1*z2 + th2*z1");
        assert_eq!(i1.apply(&th12, None).unwrap().to_string(), "th2");
    }

    #[test]
    fn cartan_relation_on_abelian_weil() {
        let (_, d, i1) = weil_u2();
        let l = graded_commutator(&d, &i1, None).unwrap();
        assert!(l.is_zero());
        assert!(graded_commutator(&d, &d, None).unwrap().is_zero());
    }

    #[test]
    fn inhomogeneous_image_rejected() {
        let t = GeneratorTable::new([("x", 0), ("dx", 1)]).unwrap();
        let bad = DerivationSpec::new("d", &t, 1, vec![GradedElement::one(&t), GradedElement::zero(&t)]);
        assert!(matches!(bad, Err(Error::DerivationDegree { .. })));
    }

    #[test]
    fn negative_degree_lowers_cap() {
        let (t, _, i1) = weil_u2();
        let th1 = GradedElement::generator(&t, 0).truncate(4);
        assert_eq!(i1.apply(&th1, None).unwrap().cap(), Some(3));
    }
}
