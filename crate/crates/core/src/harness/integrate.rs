//! Fiber integration over the round sphere and the flat torus.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::gca::{GradedElement, Monomial, Rational, Scalar};
use crate::model::GdgaModel;
use crate::models::{sphere_model, torus2, warped_torus_family};
use crate::report::{Check, Report};

/// `(k-1)!!` with `(-1)!! = 1`.
fn odd_double_factorial(k: u32) -> BigInt {
    (1..k).rev().step_by(2).map(BigInt::from).product()
}

fn double_factorial(k: u32) -> BigInt {
    (1..=k).rev().step_by(2).map(BigInt::from).product()
}

/// The closed fibers with built-in integration functionals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fiber {
    /// Unit sphere, generators `x y z dx dy dz nu`, top form `nu`.
    Sphere,
    /// Flat torus, generators `c1 s1 c2 s2 e1 e2`, top form `e1 e2`.
    Torus,
}

impl Fiber {
    pub fn generators(self) -> &'static [&'static str] {
        match self {
            Fiber::Sphere => &["x", "y", "z", "dx", "dy", "dz", "nu"],
            Fiber::Torus => &["c1", "s1", "c2", "s2", "e1", "e2"],
        }
    }

    pub fn dimension(self) -> u32 {
        2
    }

    fn top(self) -> &'static [&'static str] {
        match self {
            Fiber::Sphere => &["nu"],
            Fiber::Torus => &["e1", "e2"],
        }
    }

    /// Integral of the function part of a top monomial, indexed by the
    /// degree-0 fiber generators in [`Fiber::generators`] order.
    fn moment(self, e: &[u32]) -> Scalar {
        match self {
            Fiber::Sphere => {
                // ∫ x^a y^b z^c ν = 4π (a-1)!!(b-1)!!(c-1)!! / (a+b+c+1)!!
                if e.iter().any(|k| k % 2 == 1) {
                    return Scalar::zero();
                }
                let num: BigInt = e.iter().map(|&k| odd_double_factorial(k)).product::<BigInt>() * 4;
                let den = double_factorial(e.iter().sum::<u32>() + 1);
                Scalar::from_rational(Rational::new(num, den)) * Scalar::pi_pow(1)
            }
            Fiber::Torus => {
                // each circle: ∫ cos^i sin^j = 2π (i-1)!!(j-1)!! / (i+j)!!
                let mut out = Scalar::one();
                for (i, j) in [(e[0], e[1]), (e[2], e[3])] {
                    if i % 2 == 1 || j % 2 == 1 {
                        return Scalar::zero();
                    }
                    let num = odd_double_factorial(i) * odd_double_factorial(j) * 2;
                    let r = Rational::new(num, double_factorial(i + j));
                    out = out * Scalar::from_rational(r) * Scalar::pi_pow(1);
                }
                out
            }
        }
    }
}

/// Linear map from fiber-top monomials to scalars, extended base-linearly:
/// `∫ β ∧ ω = β ∫ ω` for base forms `β` written on the left.
#[derive(Clone, Debug)]
pub struct IntegrationFunctional {
    fiber: Fiber,
    /// Table indices of the fiber generators, in [`Fiber::generators`] order.
    index: Vec<usize>,
    top: Vec<usize>,
}

impl IntegrationFunctional {
    pub fn new(m: &GdgaModel, fiber: Fiber) -> Result<Self> {
        let t = m.table();
        let index = fiber.generators().iter().map(|n| t.lookup(n)).collect::<Result<Vec<_>>>()?;
        let top = fiber.top().iter().map(|n| t.lookup(n)).collect::<Result<Vec<_>>>()?;
        Ok(IntegrationFunctional { fiber, index, top })
    }

    pub fn fiber(&self) -> Fiber {
        self.fiber
    }

    fn is_fiber(&self, i: usize) -> bool {
        self.index.contains(&i)
    }

    /// `∫` of one normalized monomial: `(base part, value)`, or `None`
    /// when the fiber degree is not top.
    fn monomial(&self, m: &GdgaModel, mono: &Monomial) -> Result<Option<(GradedElement, Scalar)>> {
        let t = m.table();
        if mono.partial_degree(t, |i| self.is_fiber(i)) != self.fiber.dimension() {
            return Ok(None);
        }
        let mut base = mono.exponents().to_vec();
        let mut fib = vec![0u16; t.len()];
        for &i in &self.index {
            fib[i] = base[i];
            base[i] = 0;
        }
        let form_part: Vec<usize> = self.index.iter().copied().filter(|&i| t.degree(i) > 0 && fib[i] > 0).collect();
        let mut top_ok = form_part == self.top;
        top_ok &= self.top.iter().all(|&i| fib[i] == 1);
        if !top_ok {
            return Err(Error::InvalidParameter(format!(
                "fiber-top monomial {} is not a function times the top form",
                GradedElement::monomial(t, mono.clone(), Scalar::one())
            )));
        }
        let b = GradedElement::monomial(t, Monomial::from_exponents(t, base).expect("sub-monomial"), Scalar::one());
        let f = GradedElement::monomial(t, Monomial::from_exponents(t, fib.clone()).expect("sub-monomial"), Scalar::one());
        // sign from writing the monomial as base ∧ fiber
        let sign = b.mul(&f).coefficient(mono);
        let e: Vec<u32> = self.index.iter().filter(|&&i| t.degree(i) == 0).map(|&i| fib[i] as u32).collect();
        Ok(Some((b, sign * self.fiber.moment(&e))))
    }

    pub fn integrate(&self, m: &GdgaModel, x: &GradedElement) -> Result<GradedElement> {
        let x = m.normalize(x)?;
        let mut out = m.zero();
        for (mono, c) in x.terms() {
            if let Some((b, v)) = self.monomial(m, mono)? {
                out.add_scaled(&b, &(c * &v));
            }
        }
        m.normalize(&out)
    }

    /// `∫` of a base-free element as a scalar.
    pub fn integrate_scalar(&self, m: &GdgaModel, x: &GradedElement) -> Result<Scalar> {
        let v = self.integrate(m, x)?;
        if v.terms().any(|(mono, _)| !mono.is_one()) {
            return Err(Error::InvalidParameter(format!("integral {v} still depends on base generators")));
        }
        Ok(v.constant_term())
    }
}

/// A fibration with closed oriented fibers, modeled by its total space.
#[derive(Clone, Debug)]
pub struct FamilyModel {
    pub name: String,
    pub model: GdgaModel,
    pub functional: IntegrationFunctional,
    /// Vertical volume form.
    pub nu: GradedElement,
    /// Mean curvature, a base 1-form.
    pub k: GradedElement,
    /// `Σ ⟨T, e_i⟩ ι_{e_i} ν`, stored as a precomputed 3-form.
    pub t_term: GradedElement,
}

impl FamilyModel {
    /// Checks `dν = k ν + T` before accepting the data.
    pub fn new(
        name: impl Into<String>,
        model: GdgaModel,
        fiber: Fiber,
        nu: GradedElement,
        k: GradedElement,
        t_term: GradedElement,
    ) -> Result<Self> {
        let functional = IntegrationFunctional::new(&model, fiber)?;
        let fam = FamilyModel { name: name.into(), model, functional, nu, k, t_term };
        if let Some(w) = fam.mean_curvature_witness()? {
            return Err(Error::InvalidParameter(format!("{}: {w}", fam.name)));
        }
        Ok(fam)
    }

    pub(crate) fn mean_curvature_witness(&self) -> Result<Option<String>> {
        let m = &self.model;
        let lhs = m.normalize(&m.apply_d(&self.nu))?;
        let rhs = m.normalize(&m.mul(&self.k, &self.nu).add(&self.t_term))?;
        Ok((lhs != rhs).then(|| format!("dν = {lhs} but kν + T = {rhs}")))
    }

    pub fn integrate(&self, x: &GradedElement) -> Result<GradedElement> {
        self.functional.integrate(&self.model, x)
    }
}

/// `∫_{X/S} ω` for the family's fibers.
pub fn fiber_integrate(x: &GradedElement, fam: &FamilyModel) -> Result<GradedElement> {
    fam.integrate(x)
}

/// `T² → pt` with `ν = e1 e2`, `k = 0`.
pub fn flat_torus_family() -> Result<FamilyModel> {
    let m = torus2(true)?;
    let nu = m.parse("e1*e2")?;
    FamilyModel::new("flat-torus", m.clone(), Fiber::Torus, nu, m.zero(), m.zero())
}

/// `T² × R → R` with `ν = w e1 e2`, `w = e^s`, so `k = ds`.
pub fn warped_torus() -> Result<FamilyModel> {
    let m = warped_torus_family()?;
    let nu = m.parse("w*e1*e2")?;
    let k = m.parse("ds")?;
    FamilyModel::new("warped-torus", m.clone(), Fiber::Torus, nu, k, m.zero())
}

/// `S² → pt` with the round area form.
pub fn sphere_family() -> Result<FamilyModel> {
    let m = sphere_model()?;
    let nu = m.parse("nu")?;
    FamilyModel::new("sphere", m.clone(), Fiber::Sphere, nu, m.zero(), m.zero())
}

/// `∫ dω = 0` on a sample of fiber `(n-1)`-forms, and `∫ 1·ν` as a fact.
pub fn stokes_report(fam: &FamilyModel, sample: &[GradedElement]) -> Result<Report> {
    let m = &fam.model;
    let mut r = Report::new();
    let mut witness = None;
    for x in sample {
        let lhs = fam.integrate(&m.apply_d(x))?;
        let rhs = m.apply_d(&fam.integrate(x)?);
        if witness.is_none() && lhs != rhs {
            witness = Some(format!("∫d({x}) = {lhs} but d∫ = {rhs}"));
        }
    }
    r.push(Check::from_witness("stokes", witness));
    r.fact("volume", fam.integrate(&fam.nu)?);
    Ok(r)
}
