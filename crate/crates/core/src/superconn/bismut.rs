//! Assembly of the equivariant Bismut superconnection
//! `B_G = D + (∇̃_G + ½ k_G) - ¼ c(T)_G`.

use crate::error::{Error, Result};
use crate::gca::{GradedElement, Scalar};
use crate::matrix::MatrixForm;
use crate::model::{cartan_project, chi, GdgaModel};

use super::SuperconnectionModel;

/// Input data for the Bismut superconnection on a `(p|q)` model bundle.
#[derive(Clone, Debug)]
pub struct BismutData {
    pub model: GdgaModel,
    pub parity: Vec<bool>,
    /// Odd 0-form matrix standing in for the vertical Dirac operator.
    pub dirac: MatrixForm,
    /// Connection 1-form of `∇̃`.
    pub a: MatrixForm,
    pub tau: Vec<MatrixForm>,
    /// Mean curvature, an even-block 1-form matrix.
    pub k: MatrixForm,
    /// `c(T)`, an odd-block 2-form matrix.
    pub ct: MatrixForm,
    /// `c(Pξ_a)`, odd-block 0-form matrices.
    pub pxi: Vec<MatrixForm>,
}

impl BismutData {
    fn graded(&self, x: &MatrixForm) -> Result<MatrixForm> {
        x.clone().with_parity(Some(self.parity.clone()))
    }

    /// `L_a X = [τ_a - ι_a A, X]` for `X` in `{D, k, c(T)}`.
    pub fn invariance_witness(&self) -> Result<Option<String>> {
        let m = &self.model;
        for a in 0..m.dim() {
            let ad = self.graded(&self.tau[a].sub(&self.a.apply_derivation(m, m.iota(a)))?)?;
            for (name, x) in [("D", &self.dirac), ("k", &self.k), ("c(T)", &self.ct)] {
                let x = self.graded(x)?;
                let lhs = x.apply_derivation(m, m.lie(a));
                let rhs = ad.supercommutator(m, &x)?;
                if lhs != rhs {
                    return Ok(Some(format!("L_{0} {name} = {lhs} but [τ_{0} - ι_{0}A, {name}] = {rhs}", a + 1)));
                }
            }
        }
        Ok(None)
    }
}

fn weil_theta(m: &GdgaModel, a: usize) -> Option<GradedElement> {
    m.weil().map(|w| GradedElement::generator(m.table(), w.theta[a]))
}

/// Builds `B_G`. Without Weil generators the `θ` and `χ` terms drop out and
/// this is the ordinary Bismut superconnection `D + ∇̃ + ½k - ¼c(T)`.
pub fn assemble_bg(data: &BismutData) -> Result<SuperconnectionModel> {
    let m = &data.model;
    if data.tau.len() != m.dim() || data.pxi.len() != m.dim() {
        return Err(Error::Dimension(format!("expected {} τ_a and c(Pξ_a)", m.dim())));
    }
    if let Some(w) = data.invariance_witness()? {
        return Err(Error::InvalidParameter(format!("invariance violated: {w}")));
    }
    let project = |x: &MatrixForm| -> Result<MatrixForm> {
        let x = data.graded(x)?;
        match m.weil() {
            Some(_) => x.try_map(|e| cartan_project(m, e)),
            None => Ok(x),
        }
    };
    let mut total = data.graded(&data.dirac)?.add(&data.graded(&data.a)?)?;
    total = total.add(&project(&data.k)?.scale(&Scalar::ratio(1, 2)))?;
    let mut ct_g = project(&data.ct)?;
    for a in 0..m.dim() {
        if let Some(th) = weil_theta(m, a) {
            total = total.sub(&data.graded(&data.tau[a])?.left_mul(m, &th))?;
            ct_g = ct_g.sub(&data.graded(&data.pxi[a])?.left_mul(m, &chi(m, a)?))?;
        }
    }
    total = total.sub(&ct_g.scale(&Scalar::ratio(1, 4)))?;
    let total = total.try_map(|x| m.normalize(x))?;
    SuperconnectionModel::new(m.clone(), data.graded(&total)?, true)
}
