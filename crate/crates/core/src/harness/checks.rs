//! End-to-end checks: mean curvature, localization on the sphere, the index
//! density and the transgression of the torus superconnection.

use crate::charclass::{a_hat, alpha_map, exp_element, relative_chern, twisting_curvature, CliffordRep, RelativeConvention};
use crate::error::Result;
use crate::gca::{GradedElement, Rational, Scalar};
use crate::lie::LieAlgebraData;
use crate::matrix::MatrixForm;
use crate::model::{build_weil, cartan_project, chi, horizontal_projection, tensor_model, GdgaModel};
use crate::models::{sphere_model, torus_superconnection};
use crate::report::{Check, Report};
use crate::superconn::transgression_check;

use super::integrate::{flat_torus_family, FamilyModel, Fiber, IntegrationFunctional};

/// Embeds an element of `X` into `W ⊗ X`.
fn lift(wx: &GdgaModel, offset: usize, x: &GradedElement) -> GradedElement {
    x.embed(wx.table(), offset)
}

/// `dν = kν + T`; with `phi`, horizontality of `exp(-φ^a ι_a) ν` and that it
/// reduces to `ν` once `φ` is dropped; with `weil_cap`, the equivariant form
/// `d ν_G = k_G ν_G + T_G - χ^a (ι_a ν)_G` in `W(g) ⊗ X`.
pub fn mean_curvature_check(fam: &FamilyModel, phi: Option<&[GradedElement]>, weil_cap: Option<u32>) -> Result<Report> {
    let m = &fam.model;
    let mut r = Report::new();
    r.push(Check::from_witness("mean_curvature", fam.mean_curvature_witness()?));
    if let Some(phi) = phi {
        let nu_q = horizontal_projection(m, phi, &fam.nu)?;
        r.fact("mq(nu)", &nu_q);
        let bad = (0..m.dim()).map(|a| (a, m.normalize(&m.apply_iota(a, &nu_q)))).find(|(_, x)| !matches!(x, Ok(x) if x.is_zero()));
        r.push(Check::from_witness(
            "mq_horizontal",
            bad.map(|(a, x)| format!("ι_{} mq(ν) = {}", a + 1, x.map(|x| x.to_string()).unwrap_or_else(|e| e.to_string()))),
        ));
        let used: Vec<usize> = (0..m.table().len()).filter(|&i| phi.iter().any(|p| p.involves(|j| j == i))).collect();
        let rest = nu_q.sub(&fam.nu).filter(|mono| used.iter().all(|&i| mono.exponent(i) == 0));
        r.push(Check::from_witness("mq_restricts", (!rest.is_zero()).then(|| format!("φ-free part of mq(ν) - ν = {rest}"))));
    }
    if let Some(cap) = weil_cap {
        let w = build_weil(m.lie_algebra(), Some(cap))?;
        let off = w.table().len();
        let wx = tensor_model(&w, m)?.with_cap(Some(cap));
        let proj = |x: &GradedElement| cartan_project(&wx, &lift(&wx, off, x));
        let (nu_g, k_g, t_g) = (proj(&fam.nu)?, proj(&fam.k)?, proj(&fam.t_term)?);
        let lhs = wx.normalize(&wx.apply_d(&nu_g))?;
        let mut rhs = wx.mul(&k_g, &nu_g).add(&t_g);
        for a in 0..m.dim() {
            let inu = proj(&m.apply_iota(a, &fam.nu))?;
            rhs = rhs.sub(&wx.mul(&chi(&wx, a)?, &inu));
        }
        let rhs = wx.normalize(&rhs)?;
        r.push(Check::from_witness("equivariant_mean_curvature", (lhs != rhs).then(|| format!("d ν_G = {lhs}, rhs = {rhs}"))));
    }
    Ok(r)
}

/// Power series in one variable, truncated at `len` terms.
#[derive(Clone, Debug, PartialEq)]
struct Series(Vec<Scalar>);

impl Series {
    fn mul(&self, o: &Series) -> Series {
        let n = self.0.len();
        let mut out = vec![Scalar::zero(); n];
        for i in 0..n {
            for j in 0..n - i {
                out[i + j] += &(&self.0[i] * &o.0[j]);
            }
        }
        Series(out)
    }

    /// `exp(c w)`.
    fn exp_linear(c: &Scalar, n: usize) -> Series {
        let mut out = vec![Scalar::one()];
        for k in 1..n {
            let prev = out[k - 1].clone();
            out.push(&(&prev * c) * &Scalar::ratio(1, k as i64));
        }
        Series(out)
    }

    /// `(w/2) / sin(w/2)` by inverting the sine series.
    fn half_angle_ahat(n: usize) -> Series {
        let mut s = vec![Scalar::zero(); n];
        let mut fact = Rational::from_integer(1.into());
        for k in 0..n {
            if k > 0 {
                fact *= Rational::from_integer(((2 * k) * (2 * k + 1)).into());
            }
            if 2 * k < n {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                let four_k = Rational::from_integer(num_bigint::BigInt::from(4).pow(k as u32));
                s[2 * k] = Scalar::from_rational(Rational::from_integer(sign.into()) / (fact.clone() * four_k));
            }
        }
        // 1/s with s[0] = 1
        let mut inv = vec![Scalar::zero(); n];
        inv[0] = Scalar::one();
        for k in 1..n {
            let mut acc = Scalar::zero();
            for j in 1..=k {
                acc += &(&s[j] * &inv[k - j]);
            }
            inv[k] = -acc;
        }
        Series(inv)
    }

    /// `f(-w)`.
    fn reflect(&self) -> Series {
        Series(self.0.iter().enumerate().map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() }).collect())
    }
}

/// Series coefficients of `x` in the generator `u` of a model, `x` being a
/// polynomial in `u` alone.
fn coefficients_in(m: &GdgaModel, x: &GradedElement, u: usize, n: usize) -> Option<Vec<Scalar>> {
    let mut out = vec![Scalar::zero(); n];
    for (mono, c) in x.terms() {
        let k = mono.exponent(u) as usize;
        if (0..m.table().len()).any(|i| i != u && mono.exponent(i) > 0) || k >= n {
            return None;
        }
        out[k] = c.clone();
    }
    Some(out)
}

fn from_coefficients(m: &GdgaModel, u: &GradedElement, cs: &[Scalar]) -> GradedElement {
    let mut out = m.zero();
    let mut p = m.one();
    for c in cs {
        out.add_scaled(&p, c);
        p = m.mul(&p, u);
    }
    out
}

/// `W(u1) ⊗ S²` with the Weil generator `z1` playing the equivariant parameter.
pub fn equivariant_sphere(order: u32) -> Result<(GdgaModel, GradedElement)> {
    let g = LieAlgebraData::u1();
    let cap = 2 * order + 2;
    let wx = tensor_model(&build_weil(&g, Some(cap))?, &sphere_model()?)?.with_cap(Some(cap));
    // ν_G = ν - θ ι ν + u μ, with ι ν = +dz and moment map μ = z
    let nu_g = wx.normalize(&cartan_project(&wx, &wx.parse("nu")?)?.add(&wx.parse("z1*z")?))?;
    Ok((wx, nu_g))
}

/// `∫_{S²} e^{ν_G}` against the two-pole sum `2π(e^u - e^{-u})/u`, exactly,
/// through `u^order`.
pub fn dh_localization(order: u32) -> Result<Report> {
    let (wx, nu_g) = equivariant_sphere(order)?;
    let mut r = Report::new();
    r.fact("convention", "iota nu = +dz, moment map z, nu_G = nu - th1*dz + z1*z");
    let closed = wx.normalize(&wx.apply_d(&nu_g))?;
    r.push(Check::from_witness("nu_G_closed", (!closed.is_zero()).then(|| format!("d ν_G = {closed}"))));
    let cap = wx.cap().unwrap_or(2 * order + 2);
    let e = exp_element(&wx, &nu_g, cap)?;
    let f = IntegrationFunctional::new(&wx, Fiber::Sphere)?;
    let direct = f.integrate(&wx, &e)?;
    let n = order as usize + 1;
    let u = wx.table().lookup("z1")?;
    // poles z = ±1 with tangent weights ±u: 2π e^{±u}/(±u)
    let north = Series::exp_linear(&Scalar::one(), n + 1);
    let pole_sum: Vec<Scalar> = (0..n)
        .map(|k| {
            let c = &north.0[k + 1] - &north.reflect().0[k + 1];
            &c * &(Scalar::from_int(2) * Scalar::pi_pow(1))
        })
        .collect();
    let got = coefficients_in(&wx, &direct, u, n);
    r.fact("direct", &direct);
    r.fact("oracle", from_coefficients(&wx, &wx.gen("z1")?, &pole_sum));
    let nonzero = pole_sum.iter().filter(|c| !c.is_zero()).count();
    let witness = match got {
        None => Some(format!("∫ e^ν_G = {direct} is not a series in u of order ≤ {order}")),
        Some(cs) => cs
            .iter()
            .zip(&pole_sum)
            .enumerate()
            .find(|(_, (a, b))| a != b)
            .map(|(k, (a, b))| format!("u^{k}: direct {a}, fixed points {b}")),
    };
    if witness.is_none() {
        r.fact("matched_nonzero_coefficients", nonzero);
    }
    r.push(Check::from_witness("term_by_term", witness));
    Ok(r)
}

/// Data for `∫_{X/S} Â(Ω) ch(F^{E/𝕊})`.
#[derive(Clone, Debug)]
pub struct IndexInput {
    pub family: FamilyModel,
    /// Vertical Riemannian curvature, `n × n`.
    pub omega: MatrixForm,
    /// Curvature of the twisting bundle `W` with `E = 𝕊 ⊗ W`.
    pub twist_curvature: MatrixForm,
    pub rep: CliffordRep,
    pub convention: RelativeConvention,
    pub cap: u32,
}

/// Assembles `Â(Ω)·ch(F^{E/𝕊})`, fiber-integrates and compares with `oracle`.
pub fn index_check(input: &IndexInput, oracle: &GradedElement) -> Result<Report> {
    let m = &input.family.model;
    let d = input.rep.dim();
    let rank = input.twist_curvature.size();
    let f_e = alpha_map(m, &input.omega, &input.rep, rank)?
        .add(&MatrixForm::kron(m, &MatrixForm::identity(m, d), &input.twist_curvature))?;
    let (f_rel, commutes) = twisting_curvature(m, &f_e, &input.omega, &input.rep)?;
    let mut r = Report::new();
    r.push(commutes);
    let ahat = a_hat(m, &input.omega, input.cap)?.value;
    let ch = relative_chern(m, &f_rel, &input.rep, input.convention, input.cap)?.value;
    let density = m.normalize(&m.mul(&ahat, &ch).truncate(input.cap))?;
    let integral = input.family.integrate(&density)?;
    r.fact("convention", format!("{:?}", input.convention).to_lowercase());
    r.fact("a_hat", &ahat);
    r.fact("ch", &ch);
    r.fact("integral", &integral);
    let oracle = m.normalize(oracle)?;
    r.push(Check::from_witness("index", (integral != oracle).then(|| format!("∫ Â ch = {integral}, oracle {oracle}"))));
    Ok(r)
}

/// `[[0, ν], [-ν, 0]]`.
fn rotation_block(m: &GdgaModel, nu: &GradedElement) -> MatrixForm {
    let mut o = MatrixForm::zeros(m, 2);
    o.set(0, 1, nu.clone());
    o.set(1, 0, nu.neg());
    o
}

/// `S² → pt` twisted by a line bundle of degree `n`, whose curvature is
/// `-(n/4π) ν`. With `order`, the u(1)-equivariant version in `W(u1) ⊗ S²`.
pub fn sphere_index_input(n: i64, order: Option<u32>, convention: RelativeConvention, rep: CliffordRep) -> Result<IndexInput> {
    let (m, nu) = match order {
        None => {
            let m = sphere_model()?;
            let nu = m.parse("nu")?;
            (m, nu)
        }
        Some(o) => equivariant_sphere(o)?,
    };
    let cap = m.cap().unwrap_or(2);
    let family = FamilyModel::new("sphere", m.clone(), Fiber::Sphere, m.parse("nu")?, m.zero(), m.zero())?;
    let c = Scalar::from_int(-n) * Scalar::ratio(1, 4) * Scalar::pi_pow(-1);
    let twist_curvature = MatrixForm::from_fn(&m, 1, |_, _| nu.scale(&c));
    Ok(IndexInput { omega: rotation_block(&m, &nu), twist_curvature, family, rep, convention, cap })
}

/// The expected value: `n`, or the two-pole sum
/// `Σ_± 2π Â(±u) e^{±nu/4π} / (±u)` through `u^order`.
pub fn sphere_index_oracle(m: &GdgaModel, n: i64, order: Option<u32>) -> Result<GradedElement> {
    let Some(order) = order else {
        return Ok(m.scalar(Scalar::from_int(n)));
    };
    let len = order as usize + 2;
    let a = Scalar::from_int(n) * Scalar::ratio(1, 4) * Scalar::pi_pow(-1);
    let g = Series::half_angle_ahat(len).mul(&Series::exp_linear(&a, len));
    let s = g.reflect();
    let two_pi = Scalar::from_int(2) * Scalar::pi_pow(1);
    let cs: Vec<Scalar> = (0..=order as usize).map(|k| &(&g.0[k + 1] - &s.0[k + 1]) * &two_pi).collect();
    Ok(from_coefficients(m, &m.gen("z1")?, &cs))
}

/// Flat torus with the trivial line bundle: `∫ Â ch = 0`.
pub fn torus_index_input(convention: RelativeConvention, rep: CliffordRep) -> Result<IndexInput> {
    let family = flat_torus_family()?;
    let m = family.model.clone();
    Ok(IndexInput {
        omega: MatrixForm::zeros(&m, 2),
        twist_curvature: MatrixForm::zeros(&m, 1),
        family,
        rep,
        convention,
        cap: 2,
    })
}

/// Transgression for the built-in torus superconnection, with `∫_{T²} ch`
/// compared at `t1` and `t2`.
pub fn torus_transgression(t1: i64, t2: i64, cap: u32) -> Result<Report> {
    let b = torus_superconnection()?;
    let m = b.model.clone();
    let f = IntegrationFunctional::new(&m, Fiber::Torus)?;
    let int = |x: &GradedElement| f.integrate(&m, x);
    let (t1, t2) = (Rational::from_integer(t1.into()), Rational::from_integer(t2.into()));
    let mut r = transgression_check(&b, &t1, &t2, cap, Some(&int))?;
    let ch = |t: &Rational| r.facts.iter().find(|(k, _)| k == &format!("ch(t={t})")).map(|(_, v)| v.clone());
    let varies = ch(&t1) != ch(&t2);
    r.push(Check::from_witness("pointwise_t_dependence", (!varies).then(|| "ch(t) is constant".to_string())));
    Ok(r)
}
