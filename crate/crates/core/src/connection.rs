//! Equivariant connections `∇_G = d_K + ∇ - θ^a τ_a` on trivialized bundles
//! over tensor models `W(𝔤) ⊗ Y`, and their pullbacks along Chern–Weil maps.

use crate::error::{Error, Result};
use crate::gca::{GradedElement, Scalar};
use crate::matrix::{MatrixForm, SectionOperator};
use crate::model::{horizontal_projection, GdgaModel};
use crate::morphism::{curvature_coefficients, AlgebraMorphism};
use crate::report::{Check, Report};

/// Connection `d + A` with vertical endomorphisms `τ_a = L_{ξ_a} - ∇_{ξ_a}`.
#[derive(Clone, Debug)]
pub struct ConnectionDataG {
    pub model: GdgaModel,
    pub a: MatrixForm,
    pub tau: Vec<MatrixForm>,
}

fn theta(m: &GdgaModel, a: usize) -> Result<GradedElement> {
    let w = m
        .weil()
        .ok_or_else(|| Error::InvalidParameter(format!("model {} has no Weil generators", m.name())))?;
    Ok(GradedElement::generator(m.table(), w.theta[a]))
}

impl ConnectionDataG {
    pub fn new(model: GdgaModel, a: MatrixForm, tau: Vec<MatrixForm>) -> Result<Self> {
        if tau.len() != model.dim() {
            return Err(Error::Dimension(format!("expected {} endomorphisms τ_a", model.dim())));
        }
        if model.weil().is_none() {
            return Err(Error::InvalidParameter("connection model needs Weil generators".into()));
        }
        if a.entries().iter().any(|x| x.terms().any(|(m, _)| m.degree() != 1))
            || tau.iter().any(|t| t.entries().iter().any(|x| x.terms().any(|(m, _)| m.degree() != 0)))
        {
            return Err(Error::InvalidParameter("A must be a 1-form and τ_a 0-forms".into()));
        }
        Ok(ConnectionDataG { model, a, tau })
    }

    pub fn rank(&self) -> usize {
        self.a.size()
    }

    /// `𝒜 = A - θ^a τ_a`.
    pub fn total_form(&self) -> Result<MatrixForm> {
        let m = &self.model;
        let mut out = self.a.clone();
        for (a, t) in self.tau.iter().enumerate() {
            out = out.sub(&t.left_mul(m, &theta(m, a)?))?;
        }
        Ok(out)
    }

    pub fn nabla_g(&self) -> Result<SectionOperator> {
        SectionOperator::new(Some(self.model.d().clone()), self.total_form()?)
    }

    /// `Ω_G = ∇_G ∘ ∇_G` on basis columns.
    pub fn curvature_g(&self) -> Result<MatrixForm> {
        self.nabla_g()?.square(&self.model)
    }

    /// `d𝒜 + 𝒜𝒜`, computed with matrix algebra only.
    pub fn curvature_formula(&self) -> Result<MatrixForm> {
        let m = &self.model;
        let a = self.total_form()?;
        a.apply_derivation(m, m.d()).add(&a.mul(m, &a)?)
    }

    /// `[ι_a, ∇_G] = L_a + ι_a A - τ_a`.
    pub fn section_lie(&self, a: usize) -> Result<SectionOperator> {
        let m = &self.model;
        let mat = self.a.apply_derivation(m, m.iota(a)).sub(&self.tau[a])?;
        SectionOperator::new(Some(m.lie(a).clone()), mat)
    }

    /// Equivariance: every `[ι_a, ∇_G]` commutes with `∇_G`.
    pub fn equivariance_check(&self) -> Result<Check> {
        let m = &self.model;
        let nabla = self.nabla_g()?;
        for a in 0..m.dim() {
            let c = self.section_lie(a)?.commutator(m, &nabla)?;
            if !c.is_zero() {
                return Ok(Check::fail("equivariance", format!("[L^sec_{}, ∇_G] = {c}", a + 1)));
            }
        }
        Ok(Check::pass("equivariance"))
    }

    /// Bianchi `[∇_G, Ω_G] = 0` as an operator identity.
    pub fn bianchi(&self, omega: &MatrixForm) -> Result<MatrixForm> {
        let m = &self.model;
        let op = SectionOperator::new(None, omega.clone())?;
        self.nabla_g()?.commutator(m, &op)
    }

    /// Every check on the curvature in one report.
    pub fn curvature_report(&self) -> Result<(MatrixForm, Report)> {
        let m = &self.model;
        let mut r = Report::new();
        r.fact("convention", "∇_G = d + A - θ^a τ_a, L^sec_a = L_a + ι_a A - τ_a");
        let omega = self.curvature_g()?;
        let formula = self.curvature_formula()?;
        r.push(Check::from_witness(
            "square_matches_formula",
            (omega != formula).then(|| format!("∇_G² = {omega}, d𝒜 + 𝒜² = {formula}")),
        ));
        r.push(self.equivariance_check()?);
        let mut horizontal = None;
        let mut covariant = None;
        for a in 0..m.dim() {
            let io = omega.apply_derivation(m, m.iota(a));
            if horizontal.is_none() && !io.is_zero() {
                horizontal = Some(format!("ι_{} Ω_G = {io}", a + 1));
            }
            let ad = self.tau[a].sub(&self.a.apply_derivation(m, m.iota(a)))?;
            let lo = omega.apply_derivation(m, m.lie(a)).sub(&ad.supercommutator(m, &omega)?)?;
            if covariant.is_none() && !lo.is_zero() {
                covariant = Some(format!("L_{0} Ω_G - [τ_{0} - ι_{0}A, Ω_G] = {lo}", a + 1));
            }
        }
        r.push(Check::from_witness("horizontal", horizontal));
        r.push(Check::from_witness("lie_covariant", covariant));
        let b = self.bianchi(&omega)?;
        r.push(Check::from_witness("bianchi", (!b.is_zero()).then(|| format!("[∇_G, Ω_G] = {b}"))));
        Ok((omega, r))
    }
}

/// Principal-bundle data on an invariant-forms model of `Q × P`.
#[derive(Clone, Debug)]
pub struct PrincipalConnectionData {
    pub model: GdgaModel,
    pub theta: MatrixForm,
    pub phi: Vec<GradedElement>,
    pub omega: Vec<GradedElement>,
}

impl PrincipalConnectionData {
    /// Checks `ω^a = dφ^a + ½ f^a_{bc} φ^b φ^c` and invariance of `Θ`.
    pub fn new(model: GdgaModel, theta: MatrixForm, phi: Vec<GradedElement>, omega: Vec<GradedElement>) -> Result<Self> {
        if phi.len() != model.dim() || omega.len() != model.dim() {
            return Err(Error::Dimension("one φ^a and ω^a per Lie algebra index".into()));
        }
        let expected = curvature_coefficients(&model, &phi);
        for (a, (w, e)) in omega.iter().zip(&expected).enumerate() {
            if model.normalize(w)? != *e {
                return Err(Error::InvalidParameter(format!(
                    "ω^{} = {w} but dφ + ½fφφ = {e}",
                    a + 1
                )));
            }
        }
        for a in 0..model.dim() {
            if !theta.apply_derivation(&model, model.lie(a)).is_zero() {
                return Err(Error::InvalidParameter(format!("Θ is not L_{}-invariant", a + 1)));
            }
        }
        Ok(PrincipalConnectionData { model, theta, phi, omega })
    }

    /// `Ω = dΘ + ΘΘ`.
    pub fn curvature(&self) -> Result<MatrixForm> {
        let m = &self.model;
        self.theta.apply_derivation(m, m.d()).add(&self.theta.mul(m, &self.theta)?)
    }

    pub fn q_connection(&self) -> Result<MatrixForm> {
        q_connection(&self.model, &self.theta, &self.phi)
    }

    pub fn q_curvature(&self) -> Result<MatrixForm> {
        q_curvature(&self.model, &self.theta, &self.curvature()?, &self.phi, &self.omega)
    }

    /// `(d + Θ_Q)²` computed directly.
    pub fn q_curvature_direct(&self) -> Result<MatrixForm> {
        let m = &self.model;
        let tq = self.q_connection()?;
        SectionOperator::new(Some(m.d().clone()), tq)?.square(m)
    }
}

/// `Θ_Q = Θ - φ^a ι_a Θ`.
pub fn q_connection(m: &GdgaModel, theta: &MatrixForm, phi: &[GradedElement]) -> Result<MatrixForm> {
    let mut out = theta.clone();
    for (a, p) in phi.iter().enumerate() {
        out = out.sub(&theta.apply_derivation(m, m.iota(a)).left_mul(m, p))?;
    }
    Ok(out)
}

/// `Ω_Q = Ω - φ^a ι_a Ω + ½ φ^a φ^b ι_b ι_a Ω - ω^a ι_a Θ`.
pub fn q_curvature(
    m: &GdgaModel,
    theta: &MatrixForm,
    omega: &MatrixForm,
    phi: &[GradedElement],
    curv: &[GradedElement],
) -> Result<MatrixForm> {
    let n = m.dim();
    let mut out = omega.clone();
    for a in 0..n {
        let ia = omega.apply_derivation(m, m.iota(a));
        out = out.sub(&ia.left_mul(m, &phi[a]))?;
        for b in 0..n {
            let iba = ia.apply_derivation(m, m.iota(b));
            let pp = m.mul(&phi[a], &phi[b]);
            out = out.add(&iba.left_mul(m, &pp).scale(&Scalar::ratio(1, 2)))?;
        }
        out = out.sub(&theta.apply_derivation(m, m.iota(a)).left_mul(m, &curv[a]))?;
    }
    Ok(out)
}

/// Compares `f*(Ω_G)` with the curvature of `d + f*A - φ^a τ_a` on the target.
pub fn pullback_curvature_check(conn: &ConnectionDataG, f: &AlgebraMorphism, phi: &[GradedElement]) -> Result<Report> {
    let tgt = f.target();
    let mut r = Report::new();
    let pulled = f.apply_matrix(&conn.curvature_g()?)?;
    let mut aq = f.apply_matrix(&conn.a)?;
    for (a, t) in conn.tau.iter().enumerate() {
        aq = aq.sub(&f.apply_matrix(t)?.left_mul(tgt, &phi[a]))?;
    }
    let direct = SectionOperator::new(Some(tgt.d().clone()), aq)?.square(tgt)?;
    r.push(Check::from_witness(
        "pullback_equals_q_curvature",
        (pulled != direct).then(|| format!("f*Ω_G = {pulled}, Ω_Q = {direct}")),
    ));
    Ok(r)
}

/// `exp(-φ^a ι_a) x` in normal-ordered form.
pub fn mq_project_concrete(m: &GdgaModel, x: &GradedElement, phi: &[GradedElement]) -> Result<GradedElement> {
    horizontal_projection(m, phi, x)
}
