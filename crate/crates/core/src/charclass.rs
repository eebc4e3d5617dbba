//! Clifford modules, chirality, and characteristic-class series: Â, the
//! Chern character and the relative Chern character.

use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::gca::{GradedElement, Rational, Scalar};
use crate::matrix::MatrixForm;
use crate::model::GdgaModel;
use crate::report::{Check, Report};

/// Sign of `c(v)²`: `Negative` means `c(v)² = -|v|²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum CliffordSign {
    #[default]
    Negative,
    Positive,
}

/// Where the chirality operator enters the relative Chern character.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum RelativeConvention {
    /// `2^{-n/2} sTr exp(-Γ F)`.
    #[default]
    Paper,
    /// `2^{-n/2} sTr(Γ exp(-F))`.
    Alternate,
}

impl std::str::FromStr for CliffordSign {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "negative" | "neg" | "-" => Ok(CliffordSign::Negative),
            "positive" | "pos" | "+" => Ok(CliffordSign::Positive),
            _ => Err(Error::InvalidParameter(format!("clifford sign `{s}`"))),
        }
    }
}

impl std::str::FromStr for RelativeConvention {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(RelativeConvention::Paper),
            "alternate" | "standard" => Ok(RelativeConvention::Alternate),
            _ => Err(Error::InvalidParameter(format!("relative-ch convention `{s}`"))),
        }
    }
}

/// Dense square matrix of scalars, used to build the Clifford generators.
#[derive(Clone, Debug, PartialEq)]
struct Const {
    n: usize,
    v: Vec<Scalar>,
}

impl Const {
    fn from_ints(n: usize, re: &[i64], im: &[i64]) -> Self {
        let v = re
            .iter()
            .zip(im)
            .map(|(&a, &b)| Scalar::from_int(a) + Scalar::from_int(b) * Scalar::i())
            .collect();
        Const { n, v }
    }

    fn identity(n: usize) -> Self {
        let v = (0..n * n).map(|k| if k / n == k % n { Scalar::one() } else { Scalar::zero() }).collect();
        Const { n, v }
    }

    fn mul(&self, o: &Const) -> Const {
        let n = self.n;
        let mut v = vec![Scalar::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    v[i * n + k] += &(&self.v[i * n + j] * &o.v[j * n + k]);
                }
            }
        }
        Const { n, v }
    }

    fn kron(&self, o: &Const) -> Const {
        let (p, q) = (self.n, o.n);
        let n = p * q;
        let v = (0..n * n)
            .map(|k| {
                let (r, c) = (k / n, k % n);
                &self.v[(r / q) * p + c / q] * &o.v[(r % q) * q + c % q]
            })
            .collect();
        Const { n, v }
    }

    fn scale(&self, c: &Scalar) -> Const {
        Const { n: self.n, v: self.v.iter().map(|x| x * c).collect() }
    }
}

/// Complex spinor module of `Cl(n)` for `n ∈ {2, 4}` with diagonal chirality.
#[derive(Clone, Debug)]
pub struct CliffordRep {
    n: usize,
    sign: CliffordSign,
    gens: Vec<Const>,
    gamma: Const,
}

impl CliffordRep {
    pub fn new(n: usize, sign: CliffordSign) -> Result<Self> {
        // c1 = [[0,-1],[1,0]], c2 = [[0,i],[i,0]], i c1 c2 = diag(1,-1)
        let a1 = Const::from_ints(2, &[0, -1, 1, 0], &[0, 0, 0, 0]);
        let a2 = Const::from_ints(2, &[0, 0, 0, 0], &[0, 1, 1, 0]);
        let g2 = Const::from_ints(2, &[1, 0, 0, -1], &[0, 0, 0, 0]);
        let id = Const::identity(2);
        let mut gens = match n {
            2 => vec![a1, a2],
            4 => vec![a1.kron(&id), a2.kron(&id), g2.kron(&a1), g2.kron(&a2)],
            _ => return Err(Error::InvalidParameter(format!("Clifford rank {n} (only 2 and 4)"))),
        };
        if sign == CliffordSign::Positive {
            gens = gens.iter().map(|c| c.scale(&Scalar::i())).collect();
        }
        let mut gamma = Const::identity(gens[0].n);
        for c in &gens {
            gamma = gamma.mul(c);
        }
        let ik = if n == 2 { Scalar::i() } else { Scalar::from_int(-1) };
        let gamma = gamma.scale(&ik);
        Ok(CliffordRep { n, sign, gens, gamma })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Spinor dimension `2^{n/2}`.
    pub fn dim(&self) -> usize {
        self.gens[0].n
    }

    pub fn sign(&self) -> CliffordSign {
        self.sign
    }

    fn lift(&self, m: &GdgaModel, c: &Const, twist: usize) -> Result<MatrixForm> {
        let base = MatrixForm::constant(m, c.n, &c.v)?;
        Ok(MatrixForm::kron(m, &base, &MatrixForm::identity(m, twist)))
    }

    /// `c(e_i) ⊗ 1` on spinors twisted by a rank-`twist` bundle.
    pub fn c(&self, m: &GdgaModel, i: usize, twist: usize) -> Result<MatrixForm> {
        self.lift(m, &self.gens[i], twist)
    }

    pub fn chirality(&self, m: &GdgaModel, twist: usize) -> Result<MatrixForm> {
        self.lift(m, &self.gamma, twist)
    }

    /// Odd basis vectors are the `Γ = -1` eigenvectors.
    pub fn parity(&self, twist: usize) -> Vec<bool> {
        let d = self.dim();
        (0..d * twist)
            .map(|k| {
                let i = k / twist;
                self.gamma.v[i * d + i] != Scalar::one()
            })
            .collect()
    }

    /// Clifford relations, `Γ² = 1` and `Γ c = -c Γ`.
    pub fn verify(&self) -> Report {
        let mut r = Report::new();
        let s = match self.sign {
            CliffordSign::Negative => Scalar::from_int(-2),
            CliffordSign::Positive => Scalar::from_int(2),
        };
        let d = self.dim();
        let mut relations = None;
        let mut anti = None;
        for i in 0..self.n {
            for j in 0..self.n {
                let (ij, ji) = (self.gens[i].mul(&self.gens[j]), self.gens[j].mul(&self.gens[i]));
                let ac: Vec<Scalar> = ij.v.iter().zip(&ji.v).map(|(a, b)| a + b).collect();
                let want = if i == j { Const::identity(d).scale(&s).v } else { vec![Scalar::zero(); d * d] };
                if relations.is_none() && ac != want {
                    relations = Some(format!("c(e{})c(e{}) + c(e{})c(e{}) wrong", i + 1, j + 1, j + 1, i + 1));
                }
            }
            let gc = self.gamma.mul(&self.gens[i]);
            let cg = self.gens[i].mul(&self.gamma);
            if anti.is_none() && gc.v.iter().zip(&cg.v).any(|(a, b)| !(a + b).is_zero()) {
                anti = Some(format!("Γ does not anticommute with c(e{})", i + 1));
            }
        }
        r.push(Check::from_witness("clifford_relations", relations));
        let g2 = self.gamma.mul(&self.gamma);
        r.push(Check::from_witness("chirality_squared", (g2 != Const::identity(d)).then(|| "Γ² ≠ 1".to_string())));
        r.push(Check::from_witness("chirality_anticommutes", anti));
        r
    }
}

/// An even form produced by a characteristic-class series, truncated at `cap`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeriesResult {
    pub value: GradedElement,
    pub cap: u32,
}

impl fmt::Display for SeriesResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (deg <= {})", self.value, self.cap)
    }
}

/// `exp(x) = Σ x^k/k!` for `x` without constant term.
pub fn exp_element(m: &GdgaModel, x: &GradedElement, cap: u32) -> Result<GradedElement> {
    if !x.constant_term().is_zero() {
        return Err(Error::NotNilpotent);
    }
    let x = x.truncate(cap);
    let mut term = m.one().truncate(cap);
    let mut out = term.clone();
    for k in 1..=cap as i64 {
        term = m.normalize(&m.mul(&term, &x))?.scale(&Scalar::ratio(1, k));
        if term.is_zero() {
            break;
        }
        out.add_assign(&term);
    }
    Ok(out)
}

/// `exp(M)` of a form-valued matrix with no degree-0 part, exact up to `cap`.
pub fn matrix_exp_form(m: &GdgaModel, mat: &MatrixForm, cap: u32) -> Result<MatrixForm> {
    mat.exp_nilpotent(m, cap)
}

/// Numeric matrix exponential (scaling and squaring with Padé approximants).
pub fn matrix_exp_numeric(mat: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    mat.clone().exp()
}

/// A degree-0 matrix as complex floats.
pub fn to_numeric(mat: &MatrixForm) -> Result<DMatrix<Complex64>> {
    let n = mat.size();
    let mut out = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let x = mat.get(i, j);
            if x.terms().any(|(mono, _)| !mono.is_one()) {
                return Err(Error::InvalidParameter("numeric exponential needs scalar entries".into()));
            }
            let (re, im) = x.constant_term().to_c64();
            out[(i, j)] = Complex64::new(re, im);
        }
    }
    Ok(out)
}

/// Bernoulli numbers `B_0..=B_n` with `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> Vec<Rational> {
    let mut b: Vec<Rational> = Vec::with_capacity(n + 1);
    let mut binom: Vec<Rational> = vec![Rational::one()];
    for k in 0..=n {
        // binom holds C(k+1, j) for j = 0..=k+1
        let next: Vec<Rational> = (0..=k + 1)
            .map(|j| {
                let a = if j <= k { binom.get(j).cloned().unwrap_or_default() } else { Rational::zero() };
                let c = if j >= 1 { binom[j - 1].clone() } else { Rational::zero() };
                a + c
            })
            .collect();
        binom = next;
        if k == 0 {
            b.push(Rational::one());
            continue;
        }
        let mut s = Rational::zero();
        for (j, bj) in b.iter().enumerate() {
            s += &binom[j] * bj;
        }
        b.push(-s / &binom[k]);
    }
    b
}

/// Coefficients `c_k` of `log((u/2)/sinh(u/2)) = Σ_{k≥1} c_k u^{2k}`, `k = 1..=kmax`.
pub fn log_ahat_coefficients(kmax: usize) -> Vec<Rational> {
    let b = bernoulli(2 * kmax);
    (1..=kmax)
        .map(|k| {
            let two_k = 2 * k as i64;
            let fact: num_bigint::BigInt = (1..=two_k).map(num_bigint::BigInt::from).product();
            -b[2 * k].clone() / Rational::from_integer(fact * two_k)
        })
        .collect()
}

/// `Â(Ω) = exp(½ Σ_k c_k tr(Ω^{2k}))`.
pub fn a_hat(m: &GdgaModel, omega: &MatrixForm, cap: u32) -> Result<SeriesResult> {
    if !omega.has_zero_scalar_part() {
        return Err(Error::NotNilpotent);
    }
    let kmax = (cap / 4) as usize;
    let coeffs = log_ahat_coefficients(kmax);
    let w = omega.truncate(cap);
    let w2 = w.mul(m, &w)?;
    let mut power = w2.clone();
    let mut log = m.zero();
    for c in &coeffs {
        let tr = power.trace();
        log.add_scaled(&tr, &(Scalar::from_rational(c.clone()) * Scalar::ratio(1, 2)));
        power = power.mul(m, &w2)?;
    }
    Ok(SeriesResult { value: exp_element(m, &log, cap)?, cap })
}

/// `tr exp(-F)`, or the supertrace when `F` is graded.
pub fn chern_character(m: &GdgaModel, f: &MatrixForm, cap: u32) -> Result<SeriesResult> {
    let e = f.neg().exp_nilpotent(m, cap)?;
    let value = if f.is_graded() { e.supertrace()? } else { e.trace() };
    Ok(SeriesResult { value, cap })
}

/// `α(A) = ¼ Σ A_ij c(e_i) c(e_j)` in the spinor module twisted by rank `twist`.
pub fn alpha_map(m: &GdgaModel, a: &MatrixForm, rep: &CliffordRep, twist: usize) -> Result<MatrixForm> {
    if a.size() != rep.n() {
        return Err(Error::Dimension(format!("α needs an {}×{} matrix", rep.n(), rep.n())));
    }
    let mut out = MatrixForm::zeros(m, rep.dim() * twist);
    for i in 0..rep.n() {
        for j in 0..rep.n() {
            let aij = a.get(i, j);
            if aij.is_zero() {
                continue;
            }
            let cc = rep.gens[i].mul(&rep.gens[j]).scale(&Scalar::ratio(1, 4));
            out = out.add(&rep.lift(m, &cc, twist)?.left_mul(m, aij))?;
        }
    }
    Ok(out)
}

/// `F^{E/𝕊} = F_E - α(Ω)`, with the check that it commutes with Clifford
/// multiplication.
pub fn twisting_curvature(
    m: &GdgaModel,
    f_e: &MatrixForm,
    omega_vert: &MatrixForm,
    rep: &CliffordRep,
) -> Result<(MatrixForm, Check)> {
    let d = rep.dim();
    if f_e.size() % d != 0 {
        return Err(Error::Dimension(format!("F_E size {} is not a multiple of {d}", f_e.size())));
    }
    let twist = f_e.size() / d;
    let f = f_e.sub(&alpha_map(m, omega_vert, rep, twist)?)?;
    let mut witness = None;
    for i in 0..rep.n() {
        let c = rep.c(m, i, twist)?;
        let comm = c.mul(m, &f)?.sub(&f.mul(m, &c)?)?;
        if !comm.is_zero() {
            witness = Some(format!("[c(e{}), F^(E/S)] = {comm}", i + 1));
            break;
        }
    }
    Ok((f, Check::from_witness("commutes_with_clifford", witness)))
}

/// Relative Chern character `2^{-n/2} sTr(...)` under either convention.
pub fn relative_chern(
    m: &GdgaModel,
    f_tw: &MatrixForm,
    rep: &CliffordRep,
    convention: RelativeConvention,
    cap: u32,
) -> Result<SeriesResult> {
    let d = rep.dim();
    if f_tw.size() % d != 0 {
        return Err(Error::Dimension(format!("F size {} is not a multiple of {d}", f_tw.size())));
    }
    let twist = f_tw.size() / d;
    let parity = Some(rep.parity(twist));
    let gamma = rep.chirality(m, twist)?.with_parity(parity.clone())?;
    let f = f_tw.clone().with_parity(parity)?;
    let e = match convention {
        RelativeConvention::Paper => gamma.mul(m, &f)?.neg().exp_nilpotent(m, cap)?,
        RelativeConvention::Alternate => gamma.mul(m, &f.neg().exp_nilpotent(m, cap)?)?,
    };
    let norm = Scalar::ratio(1, d as i64);
    Ok(SeriesResult { value: e.supertrace()?.scale(&norm), cap })
}

/// Both conventions on the same input.
pub fn relative_chern_both(
    m: &GdgaModel,
    f_tw: &MatrixForm,
    rep: &CliffordRep,
    cap: u32,
) -> Result<(SeriesResult, SeriesResult)> {
    Ok((
        relative_chern(m, f_tw, rep, RelativeConvention::Paper, cap)?,
        relative_chern(m, f_tw, rep, RelativeConvention::Alternate, cap)?,
    ))
}
