//! Graded algebras with a Cartan calculus: `d`, `ι_a`, `L_a`.

mod basic;
mod tensor;
mod weil;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gca::{
    graded_commutator, parse_element, DerivationSpec, GeneratorTable, GradedElement, RewriteSystem,
    Rule, Scalar,
};
use crate::lie::LieAlgebraData;
use crate::report::{Check, Report};

pub use basic::{basic_subspace, degree_basis};
pub use tensor::tensor_model;
pub use weil::{build_weil, cartan_project, chi, horizontal_projection, WeilIndices};

/// A 𝔤-differential graded algebra presented by generators, an optional
/// rewrite system, and derivations given on generators.
#[derive(Clone, Debug)]
pub struct GdgaModel {
    name: String,
    table: Arc<GeneratorTable>,
    rewrite: RewriteSystem,
    lie: LieAlgebraData,
    d: DerivationSpec,
    iota: Vec<DerivationSpec>,
    lie_d: Vec<DerivationSpec>,
    cap: Option<u32>,
    weil: Option<WeilIndices>,
}

impl GdgaModel {
    pub fn new(
        name: impl Into<String>,
        rewrite: RewriteSystem,
        lie: LieAlgebraData,
        d: DerivationSpec,
        iota: Vec<DerivationSpec>,
        lie_d: Vec<DerivationSpec>,
    ) -> Result<Self> {
        let table = rewrite.table().clone();
        if iota.len() != lie.dim() || lie_d.len() != lie.dim() {
            return Err(Error::Dimension(format!(
                "expected {} contractions and Lie derivatives",
                lie.dim()
            )));
        }
        let same = |x: &DerivationSpec| Arc::ptr_eq(x.table(), &table) || **x.table() == *table;
        if !same(&d) || !iota.iter().all(same) || !lie_d.iter().all(same) {
            return Err(Error::TableMismatch);
        }
        if d.degree() != 1
            || iota.iter().any(|x| x.degree() != -1)
            || lie_d.iter().any(|x| x.degree() != 0)
        {
            return Err(Error::InvalidParameter(
                "d, ι and L must have degrees 1, -1 and 0".into(),
            ));
        }
        Ok(GdgaModel {
            name: name.into(),
            table,
            rewrite,
            lie,
            d,
            iota,
            lie_d,
            cap: None,
            weil: None,
        })
    }

    /// A model on which 𝔤 acts trivially (all `ι_a`, `L_a` zero).
    pub fn trivial_action(
        name: impl Into<String>,
        rewrite: RewriteSystem,
        lie: LieAlgebraData,
        d: DerivationSpec,
    ) -> Result<Self> {
        let t = rewrite.table().clone();
        let iota = (0..lie.dim()).map(|a| DerivationSpec::zero(format!("i{}", a + 1), &t, -1)).collect();
        let lie_d = (0..lie.dim()).map(|a| DerivationSpec::zero(format!("L{}", a + 1), &t, 0)).collect();
        GdgaModel::new(name, rewrite, lie, d, iota, lie_d)
    }

    pub fn with_cap(mut self, cap: Option<u32>) -> Self {
        self.cap = cap;
        self
    }

    pub(crate) fn with_weil(mut self, weil: Option<WeilIndices>) -> Self {
        self.weil = weil;
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    /// Replaces one contraction (used to build deliberately broken models).
    pub fn with_iota(mut self, a: usize, iota: DerivationSpec) -> Self {
        self.iota[a] = iota;
        self
    }

    pub fn with_lie_derivative(mut self, a: usize, l: DerivationSpec) -> Self {
        self.lie_d[a] = l;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn table(&self) -> &Arc<GeneratorTable> {
        &self.table
    }

    pub fn rewrite(&self) -> &RewriteSystem {
        &self.rewrite
    }

    pub fn lie_algebra(&self) -> &LieAlgebraData {
        &self.lie
    }

    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    pub fn cap(&self) -> Option<u32> {
        self.cap
    }

    pub fn weil(&self) -> Option<&WeilIndices> {
        self.weil.as_ref()
    }

    pub fn d(&self) -> &DerivationSpec {
        &self.d
    }

    pub fn iota(&self, a: usize) -> &DerivationSpec {
        &self.iota[a]
    }

    pub fn lie(&self, a: usize) -> &DerivationSpec {
        &self.lie_d[a]
    }

    pub fn zero(&self) -> GradedElement {
        GradedElement::zero(&self.table)
    }

    pub fn one(&self) -> GradedElement {
        GradedElement::one(&self.table)
    }

    pub fn scalar(&self, c: Scalar) -> GradedElement {
        GradedElement::scalar(&self.table, c)
    }

    pub fn gen(&self, name: &str) -> Result<GradedElement> {
        GradedElement::named(&self.table, name)
    }

    /// Parses and normalizes an element.
    pub fn parse(&self, src: &str) -> Result<GradedElement> {
        self.normalize(&parse_element(&self.table, src)?)
    }

    /// Rewrites to normal form and applies the model cap.
    pub fn normalize(&self, x: &GradedElement) -> Result<GradedElement> {
        let x = match self.cap {
            Some(n) => x.truncate(n),
            None => x.clone(),
        };
        self.rewrite.normalize(&x)
    }

    fn norm(&self, x: &GradedElement) -> GradedElement {
        self.normalize(x).expect("rewrite system terminates within budget")
    }

    pub fn mul(&self, a: &GradedElement, b: &GradedElement) -> GradedElement {
        self.norm(&a.mul(b))
    }

    pub fn product(&self, xs: &[&GradedElement]) -> GradedElement {
        xs.iter().fold(self.one(), |acc, x| self.mul(&acc, x))
    }

    pub fn apply(&self, der: &DerivationSpec, x: &GradedElement) -> GradedElement {
        self.norm(&der.apply_free(x))
    }

    pub fn apply_d(&self, x: &GradedElement) -> GradedElement {
        self.apply(&self.d, x)
    }

    pub fn apply_iota(&self, a: usize, x: &GradedElement) -> GradedElement {
        self.apply(&self.iota[a], x)
    }

    pub fn apply_lie(&self, a: usize, x: &GradedElement) -> GradedElement {
        self.apply(&self.lie_d[a], x)
    }

    /// Whether `ι_a x = 0` and `L_a x = 0` for every `a`.
    pub fn is_basic(&self, x: &GradedElement) -> bool {
        (0..self.dim()).all(|a| self.apply_iota(a, x).is_zero() && self.apply_lie(a, x).is_zero())
    }

    pub fn is_horizontal(&self, x: &GradedElement) -> bool {
        (0..self.dim()).all(|a| self.apply_iota(a, x).is_zero())
    }

    fn commutator(&self, a: &DerivationSpec, b: &DerivationSpec) -> DerivationSpec {
        let c = graded_commutator(a, b, Some(&self.rewrite)).expect("same table");
        if let Some(n) = self.cap {
            let imgs = c.images().iter().map(|x| x.truncate(n).uncapped()).collect();
            DerivationSpec::new(c.name().to_string(), &self.table, c.degree(), imgs).expect("same degree")
        } else {
            c
        }
    }

    /// `Σ_c f^c_{ab} D_c`.
    fn structure_combination(&self, a: usize, b: usize, ds: &[DerivationSpec], degree: i32) -> DerivationSpec {
        let parts: Vec<(Scalar, &DerivationSpec)> = (0..self.dim())
            .filter(|&c| !self.lie.f(c, a, b).is_zero())
            .map(|c| (self.lie.f(c, a, b).clone(), &ds[c]))
            .collect();
        crate::gca::combine("f·D", &self.table, degree, &parts).expect("same degree")
    }

    /// First generator on which two derivations disagree.
    fn mismatch(&self, got: &DerivationSpec, want: &DerivationSpec) -> Option<String> {
        (0..self.table.len()).find_map(|i| {
            let g = self.norm(got.image(i));
            let w = self.norm(want.image(i));
            (g != w).then(|| format!("{} on {}: got {g}, expected {w}", got.name(), self.table.name(i)))
        })
    }
}

/// Checks the six Cartan-calculus identities on every generator, plus
/// compatibility of each derivation with the rewrite rules.
pub fn verify_gdga(m: &GdgaModel) -> Report {
    let n = m.dim();
    let zero_odd = DerivationSpec::zero("0", &m.table, 2);
    let mut report = Report::new();
    report.fact("model", m.name());
    report.fact("convention", "L_b th^a = -f^a_{bc} th^c");

    let dd = m.commutator(&m.d, &m.d);
    report.push(Check::from_witness("d_squared", m.mismatch(&dd, &zero_odd)));

    let mut w = None;
    'outer: for a in 0..n {
        for b in a..n {
            let c = m.commutator(&m.iota[a], &m.iota[b]);
            let z = DerivationSpec::zero("0", &m.table, -2);
            if let Some(x) = m.mismatch(&c, &z) {
                w = Some(x);
                break 'outer;
            }
        }
    }
    report.push(Check::from_witness("iota_anticommute", w));

    let w = (0..n).find_map(|a| {
        let c = m.commutator(&m.d, &m.iota[a]);
        m.mismatch(&c, &m.lie_d[a])
    });
    report.push(Check::from_witness("cartan_formula", w));

    let w = (0..n).find_map(|a| {
        let c = m.commutator(&m.lie_d[a], &m.d);
        m.mismatch(&c, &DerivationSpec::zero("0", &m.table, 1))
    });
    report.push(Check::from_witness("lie_commutes_with_d", w));

    let w = (0..n).find_map(|a| {
        (0..n).find_map(|b| {
            let c = m.commutator(&m.lie_d[a], &m.iota[b]);
            m.mismatch(&c, &m.structure_combination(a, b, &m.iota, -1))
        })
    });
    report.push(Check::from_witness("lie_iota_bracket", w));

    let w = (0..n).find_map(|a| {
        (0..n).find_map(|b| {
            let c = m.commutator(&m.lie_d[a], &m.lie_d[b]);
            m.mismatch(&c, &m.structure_combination(a, b, &m.lie_d, 0))
        })
    });
    report.push(Check::from_witness("lie_lie_bracket", w));

    if !m.rewrite.is_empty() {
        report.push(Check::from_witness("rewrite_ideal_preserved", ideal_witness(m)));
    }
    report
}

fn ideal_witness(m: &GdgaModel) -> Option<String> {
    let ders = std::iter::once(&m.d).chain(m.iota.iter()).chain(m.lie_d.iter());
    for der in ders {
        for (k, Rule { lhs, rhs }) in m.rewrite.rules().iter().enumerate() {
            let rel = GradedElement::monomial(&m.table, lhs.clone(), Scalar::one()).sub(rhs);
            let img = m.apply(der, &rel);
            if !img.is_zero() {
                return Some(format!("{} maps rule {k} to {img}", der.name()));
            }
        }
    }
    None
}
