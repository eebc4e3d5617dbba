//! Finite-rank superconnections `d + M` on `(p|q)`-graded trivial bundles:
//! scaling, curvature, the Volterra heat series, Chern character and
//! transgression.

mod bismut;
mod numeric;

pub use bismut::{assemble_bg, BismutData};
pub use numeric::{divided_difference_exp, volterra_numeric, NumericFormMatrix};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::gca::{DerivationSpec, GradedElement, Rational, Scalar};
use crate::matrix::{MatrixForm, SectionOperator};
use crate::model::GdgaModel;
use crate::morphism::AlgebraMorphism;
use crate::report::{Check, Report};

/// Names of the generators carrying `t^{1/2}` and `t^{-1/2}`.
pub const RT: &str = "rt";
pub const RTI: &str = "rti";

/// A scaling parameter: an exact positive rational or the formal `t`.
#[derive(Clone, Debug, PartialEq)]
pub enum TimeParam {
    Value(Rational),
    Formal,
}

impl TimeParam {
    pub fn int(t: i64) -> Self {
        TimeParam::Value(Rational::from_integer(t.into()))
    }
}

fn rational_sqrt(t: &Rational) -> Option<Rational> {
    if t.is_negative() {
        return None;
    }
    let root = |n: &BigInt| {
        let r = n.sqrt();
        (&r * &r == *n).then_some(r)
    };
    Some(Rational::new(root(t.numer())?, root(t.denom())?))
}

/// `t^{e/2}` as an element of `m`.
pub fn half_power(m: &GdgaModel, t: &TimeParam, e: i32) -> Result<GradedElement> {
    match t {
        TimeParam::Value(v) => {
            if !v.is_positive() {
                return Err(Error::InvalidParameter(format!("scaling parameter t = {v} must be positive")));
            }
            let base = if e % 2 == 0 {
                v.clone()
            } else {
                rational_sqrt(v).ok_or_else(|| {
                    Error::InvalidParameter(format!("t^(1/2) is irrational for t = {v}; use the formal parameter"))
                })?
            };
            let k = if e % 2 == 0 { e / 2 } else { e };
            let p = if k >= 0 { num_traits::pow(base, k as usize) } else { Rational::one() / num_traits::pow(base, (-k) as usize) };
            Ok(m.scalar(Scalar::from_rational(p)))
        }
        TimeParam::Formal => {
            let g = if e >= 0 { m.gen(RT)? } else { m.gen(RTI)? };
            let mut out = m.one();
            for _ in 0..e.unsigned_abs() {
                out = m.mul(&out, &g);
            }
            m.normalize(&out)
        }
    }
}

/// `∂/∂t` on a model containing `rt`, `rti`: `rt ↦ ½ rti`, `rti ↦ -½ rti³`.
pub fn time_derivative(m: &GdgaModel) -> Result<DerivationSpec> {
    let t = m.table();
    let rt = t.lookup(RT)?;
    let rti = t.lookup(RTI)?;
    let g = GradedElement::generator(t, rti);
    DerivationSpec::from_fn("dt", t, 0, |i| {
        if i == rt {
            g.scale(&Scalar::ratio(1, 2))
        } else if i == rti {
            g.mul(&g).mul(&g).scale(&Scalar::ratio(-1, 2))
        } else {
            GradedElement::zero(t)
        }
    })
}

/// Substitutes a value for the formal parameter (`t` must be a rational square).
pub fn evaluate_time(m: &GdgaModel, x: &GradedElement, t: &Rational) -> Result<GradedElement> {
    let r = rational_sqrt(t)
        .filter(|r| !r.is_zero())
        .ok_or_else(|| Error::InvalidParameter(format!("t = {t} is not a positive rational square")))?;
    let tab = m.table();
    let images = (0..tab.len())
        .map(|i| match tab.name(i) {
            RT => m.scalar(Scalar::from_rational(r.clone())),
            RTI => m.scalar(Scalar::from_rational(Rational::one() / &r)),
            _ => GradedElement::generator(tab, i),
        })
        .collect();
    let f = AlgebraMorphism::new(m, m, images)?;
    m.normalize(&f.apply(x))
}

/// `B = d + M` (or just `M` without the de Rham part) with `M` odd.
#[derive(Clone, Debug)]
pub struct SuperconnectionModel {
    pub model: GdgaModel,
    pub matrix: MatrixForm,
    pub with_d: bool,
}

impl SuperconnectionModel {
    pub fn new(model: GdgaModel, matrix: MatrixForm, with_d: bool) -> Result<Self> {
        if !matrix.is_graded() {
            return Err(Error::Ungraded);
        }
        if matrix.total_parity() != Some(true) {
            return Err(Error::InvalidParameter("superconnection matrix must be odd".into()));
        }
        Ok(SuperconnectionModel { model, matrix, with_d })
    }

    /// The flat superconnection `d` on a `(p|q)` bundle.
    pub fn flat(model: GdgaModel, p: usize, q: usize) -> Self {
        let matrix = MatrixForm::super_zeros(&model, p, q);
        SuperconnectionModel { model, matrix, with_d: true }
    }

    pub fn parity(&self) -> Vec<bool> {
        self.matrix.parity_vector().expect("graded").to_vec()
    }

    /// Form-degree-`i` part of the matrix; the `d` of `B_[1]` is implicit.
    pub fn component(&self, i: u32) -> MatrixForm {
        self.matrix.map(|x| x.part(i))
    }

    pub fn max_degree(&self) -> u32 {
        self.matrix.entries().iter().filter_map(|x| x.max_degree()).max().unwrap_or(0)
    }

    pub fn operator(&self) -> Result<SectionOperator> {
        let d = self.with_d.then(|| self.model.d().clone());
        SectionOperator::new(d, self.matrix.clone())
    }

    /// `F = B²`.
    pub fn curvature(&self) -> Result<MatrixForm> {
        self.operator()?.square(&self.model)
    }

    /// `B^t = t^{1/2} δ_t B δ_t^{-1}`: component `i` picks up `t^{(1-i)/2}`.
    pub fn scale(&self, t: &TimeParam) -> Result<SuperconnectionModel> {
        let m = &self.model;
        let mut out = MatrixForm::graded_zeros(m, self.parity());
        for i in 0..=self.max_degree() {
            let c = self.component(i);
            if c.is_zero() {
                continue;
            }
            let f = half_power(m, t, 1 - i as i32)?;
            out = out.add(&c.left_mul(m, &f))?;
        }
        Ok(SuperconnectionModel { model: m.clone(), matrix: out, with_d: self.with_d })
    }
}

/// `δ_t (t F) δ_t^{-1}`: form-degree `j` entries pick up `t^{1 - j/2}`.
pub fn delta_conjugate(m: &GdgaModel, f: &MatrixForm, t: &TimeParam) -> Result<MatrixForm> {
    let top = f.entries().iter().filter_map(|x| x.max_degree()).max().unwrap_or(0);
    let mut out = match f.parity_vector() {
        Some(p) => MatrixForm::graded_zeros(m, p.to_vec()),
        None => MatrixForm::zeros(m, f.size()),
    };
    for j in 0..=top {
        let c = f.map(|x| x.part(j));
        if !c.is_zero() {
            out = out.add(&c.left_mul(m, &half_power(m, t, 2 - j as i32)?))?;
        }
    }
    Ok(out)
}

/// `e^{-tF}` for `F` without a degree-0 part: the `k`-simplex has volume
/// `1/k!`, so the Volterra series is `Σ (-t)^k F^k / k!`, cut at `cap`.
pub fn volterra_exact(m: &GdgaModel, f: &MatrixForm, t: &GradedElement, cap: u32) -> Result<MatrixForm> {
    f.left_mul(m, &t.neg()).exp_nilpotent(m, cap)
}

/// `sTr e^{-(B^t)²}` in exact mode.
pub fn ch_exact(b: &SuperconnectionModel, t: &TimeParam, cap: u32) -> Result<GradedElement> {
    let m = &b.model;
    let f = b.scale(t)?.curvature()?;
    volterra_exact(m, &f, &m.one(), cap)?.supertrace()
}

fn first_failure(
    m: &GdgaModel,
    x: &GradedElement,
    ders: impl Iterator<Item = (String, DerivationSpec)>,
) -> Option<String> {
    for (name, d) in ders {
        let y = m.apply(&d, x);
        if !y.is_zero() {
            return Some(format!("{name}(ch) = {y}"));
        }
    }
    None
}

/// Closedness, and basicness when the model carries a Weil factor.
pub fn ch_report(b: &SuperconnectionModel, t: &TimeParam, cap: u32) -> Result<(GradedElement, Report)> {
    let m = &b.model;
    let ch = ch_exact(b, t, cap)?;
    let mut r = Report::new();
    let dch = m.apply_d(&ch);
    r.push(Check::from_witness("ch_closed", (!dch.is_zero()).then(|| format!("d ch = {dch}"))));
    if m.weil().is_some() {
        let iotas = (0..m.dim()).map(|a| (format!("ι_{}", a + 1), m.iota(a).clone()));
        r.push(Check::from_witness("ch_horizontal", first_failure(m, &ch, iotas)));
        let lies = (0..m.dim()).map(|a| (format!("L_{}", a + 1), m.lie(a).clone()));
        r.push(Check::from_witness("ch_invariant", first_failure(m, &ch, lies)));
    }
    Ok((ch, r))
}

/// `(B^t)² = δ_t (t B²) δ_t^{-1}` with `t` formal.
pub fn scaling_report(b: &SuperconnectionModel) -> Result<Report> {
    let m = &b.model;
    let mut r = Report::new();
    let lhs = b.scale(&TimeParam::Formal)?.curvature()?;
    let rhs = delta_conjugate(m, &b.curvature()?, &TimeParam::Formal)?;
    r.push(Check::from_witness(
        "scaled_curvature",
        (lhs != rhs).then(|| format!("(B^t)² = {lhs}, δ(tF)δ⁻¹ = {rhs}")),
    ));
    let id = b.scale(&TimeParam::int(1))?;
    r.push(Check::from_witness("scale_one", (id.matrix != b.matrix).then(|| format!("B^1 = {}", id.matrix))));
    let (s, u) = (TimeParam::int(4), TimeParam::int(9));
    let twice = b.scale(&s)?.scale(&u)?;
    let once = b.scale(&TimeParam::int(36))?;
    r.push(Check::from_witness(
        "scale_composition",
        (twice.matrix != once.matrix).then(|| format!("B^(4)^(9) = {}, B^36 = {}", twice.matrix, once.matrix)),
    ));
    r.fact(
        "degree2_scaling",
        "t^(-1/2) on B_[2], forced by δ_t-conjugation (a printed t^(1/2) would break (B^t)² = δ_t(tF)δ_t^(-1))",
    );
    Ok(r)
}

/// `∂_t ch(B^t) = -d sTr(∂_t B^t e^{-(B^t)²})`, and optionally
/// `∫ ch(B^{t1}) = ∫ ch(B^{t2})` through `integrate`.
pub fn transgression_check(
    b: &SuperconnectionModel,
    t1: &Rational,
    t2: &Rational,
    cap: u32,
    integrate: Option<&dyn Fn(&GradedElement) -> Result<GradedElement>>,
) -> Result<Report> {
    let m = &b.model;
    let dt = time_derivative(m)?;
    let bt = b.scale(&TimeParam::Formal)?;
    let f = bt.curvature()?;
    let e = volterra_exact(m, &f, &m.one(), cap)?;
    let ch = e.supertrace()?;
    let lhs = m.apply(&dt, &ch);
    let db = bt.matrix.apply_derivation(m, &dt);
    let rhs = m.apply_d(&db.mul(m, &e)?.supertrace()?).neg();
    let mut r = Report::new();
    r.push(Check::from_witness(
        "transgression_formula",
        (lhs != rhs).then(|| format!("∂_t ch = {lhs}, -d sTr(∂B e^-F) = {rhs}")),
    ));
    let (c1, c2) = (evaluate_time(m, &ch, t1)?, evaluate_time(m, &ch, t2)?);
    r.fact(format!("ch(t={t1})"), &c1);
    r.fact(format!("ch(t={t2})"), &c2);
    if let Some(int) = integrate {
        let (i1, i2) = (int(&c1)?, int(&c2)?);
        r.fact(format!("integral(t={t1})"), &i1);
        r.fact(format!("integral(t={t2})"), &i2);
        r.push(Check::from_witness(
            "integral_constant",
            (i1 != i2).then(|| format!("∫ch(t={t1}) = {i1}, ∫ch(t={t2}) = {i2}")),
        ));
    }
    Ok(r)
}
