//! Algebra morphisms between models, given on generators.

use crate::error::{Error, Result};
use crate::gca::{GradedElement, Scalar};
use crate::matrix::MatrixForm;
use crate::model::GdgaModel;

#[derive(Clone, Debug)]
pub struct AlgebraMorphism {
    source: GdgaModel,
    target: GdgaModel,
    images: Vec<GradedElement>,
}

impl AlgebraMorphism {
    pub fn new(source: &GdgaModel, target: &GdgaModel, images: Vec<GradedElement>) -> Result<Self> {
        let t = source.table();
        if images.len() != t.len() {
            return Err(Error::Dimension("one image per source generator".into()));
        }
        for (i, img) in images.iter().enumerate() {
            if img.terms().any(|(m, _)| m.degree() != t.degree(i)) {
                return Err(Error::InvalidParameter(format!(
                    "image of `{}` has the wrong degree",
                    t.name(i)
                )));
            }
        }
        let images = images.iter().map(|x| target.normalize(x)).collect::<Result<_>>()?;
        Ok(AlgebraMorphism { source: source.clone(), target: target.clone(), images })
    }

    pub fn source(&self) -> &GdgaModel {
        &self.source
    }

    pub fn target(&self) -> &GdgaModel {
        &self.target
    }

    pub fn image(&self, i: usize) -> &GradedElement {
        &self.images[i]
    }

    pub fn apply(&self, x: &GradedElement) -> GradedElement {
        let tgt = &self.target;
        let mut out = tgt.zero();
        for (mono, c) in x.terms() {
            let mut term = tgt.scalar(c.clone());
            for i in mono.factors() {
                term = tgt.mul(&term, &self.images[i]);
            }
            out.add_assign(&term);
        }
        out
    }

    pub fn apply_matrix(&self, m: &MatrixForm) -> Result<MatrixForm> {
        let out = MatrixForm::from_fn(&self.target, m.size(), |i, j| self.apply(m.get(i, j)));
        out.with_parity(m.parity_vector().map(|p| p.to_vec()))
    }

    /// `f(d g) = d f(g)` on every source generator.
    pub fn check_chain_map(&self) -> Result<()> {
        let s = &self.source;
        for i in 0..s.table().len() {
            let g = GradedElement::generator(s.table(), i);
            let lhs = self.apply(&s.apply_d(&g));
            let rhs = self.target.apply_d(&self.images[i]);
            if lhs != rhs {
                return Err(Error::NotChainMap(s.table().name(i).to_string()));
            }
        }
        Ok(())
    }
}

/// The Chern–Weil map out of `W(𝔤) ⊗ Y`: `θ^a ↦ φ^a`, `z^a ↦ dφ^a`, and
/// every other generator to the target generator of the same name.
pub fn chern_weil_pullback(source: &GdgaModel, target: &GdgaModel, phi: &[GradedElement]) -> Result<AlgebraMorphism> {
    let w = source
        .weil()
        .ok_or_else(|| Error::InvalidParameter(format!("model {} has no Weil generators", source.name())))?;
    if phi.len() != source.dim() {
        return Err(Error::Dimension(format!("expected {} connection coefficients", source.dim())));
    }
    let t = source.table();
    let mut images = Vec::with_capacity(t.len());
    for i in 0..t.len() {
        if let Some(a) = w.theta.iter().position(|&k| k == i) {
            images.push(phi[a].clone());
        } else if let Some(a) = w.z.iter().position(|&k| k == i) {
            images.push(target.apply_d(&phi[a]));
        } else {
            images.push(target.gen(t.name(i))?);
        }
    }
    let f = AlgebraMorphism::new(source, target, images)?;
    f.check_chain_map()?;
    Ok(f)
}

/// `ω^a = dφ^a + ½ f^a_{bc} φ^b φ^c` in the target model.
pub fn curvature_coefficients(target: &GdgaModel, phi: &[GradedElement]) -> Vec<GradedElement> {
    let g = target.lie_algebra();
    (0..g.dim())
        .map(|a| {
            let mut w = target.apply_d(&phi[a]);
            for b in 0..g.dim() {
                for c in 0..g.dim() {
                    let f = g.f(a, b, c);
                    if !f.is_zero() {
                        w.add_scaled(&target.mul(&phi[b], &phi[c]), &(f * &Scalar::ratio(1, 2)));
                    }
                }
            }
            w
        })
        .collect()
}
