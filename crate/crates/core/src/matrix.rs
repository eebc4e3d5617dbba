//! Square matrices with entries in a model algebra, optionally ℤ/2-graded.
//!
//! A matrix `M` stands for `Σ M_ij ⊗ E_ij` with forms written to the left of
//! the elementary matrices. In the graded case `E_ij` has parity `p_i + p_j`,
//! so products pick up `(ω E_ij)(η E_jk) = (-1)^{(p_i+p_j)|η|} ωη E_ik`.

use std::fmt;

use crate::error::{Error, Result};
use crate::gca::{DerivationSpec, GradedElement, Scalar};
use crate::model::GdgaModel;

#[derive(Clone, PartialEq, Eq)]
pub struct MatrixForm {
    n: usize,
    parity: Option<Vec<bool>>,
    entries: Vec<GradedElement>,
}

fn odd_part(x: &GradedElement) -> GradedElement {
    x.filter(|m| m.degree() % 2 == 1)
}

impl MatrixForm {
    pub fn zeros(m: &GdgaModel, n: usize) -> Self {
        MatrixForm { n, parity: None, entries: vec![m.zero(); n * n] }
    }

    /// Zero matrix on a super vector space with parities `parity`.
    pub fn graded_zeros(m: &GdgaModel, parity: Vec<bool>) -> Self {
        let n = parity.len();
        MatrixForm { n, parity: Some(parity), entries: vec![m.zero(); n * n] }
    }

    /// `(p|q)`: `p` even basis vectors followed by `q` odd ones.
    pub fn super_zeros(m: &GdgaModel, p: usize, q: usize) -> Self {
        MatrixForm::graded_zeros(m, (0..p + q).map(|i| i >= p).collect())
    }

    pub fn identity(m: &GdgaModel, n: usize) -> Self {
        MatrixForm::zeros(m, n).plus_identity(m)
    }

    fn plus_identity(mut self, m: &GdgaModel) -> Self {
        for i in 0..self.n {
            let v = self.get(i, i).add(&m.one());
            self.set(i, i, v);
        }
        self
    }

    pub fn from_fn(m: &GdgaModel, n: usize, f: impl Fn(usize, usize) -> GradedElement) -> Self {
        let mut out = MatrixForm::zeros(m, n);
        for i in 0..n {
            for j in 0..n {
                out.entries[i * n + j] = f(i, j);
            }
        }
        out
    }

    /// Constant matrix from row-major scalars.
    pub fn constant(m: &GdgaModel, n: usize, values: &[Scalar]) -> Result<Self> {
        if values.len() != n * n {
            return Err(Error::Dimension(format!("expected {} entries, got {}", n * n, values.len())));
        }
        Ok(MatrixForm::from_fn(m, n, |i, j| m.scalar(values[i * n + j].clone())))
    }

    /// Constant diagonal matrix.
    pub fn diagonal(m: &GdgaModel, values: &[GradedElement]) -> Self {
        let n = values.len();
        MatrixForm::from_fn(m, n, |i, j| if i == j { values[i].clone() } else { m.zero() })
    }

    pub fn with_parity(mut self, parity: Option<Vec<bool>>) -> Result<Self> {
        if let Some(p) = &parity {
            if p.len() != self.n {
                return Err(Error::Dimension("parity vector length".into()));
            }
        }
        self.parity = parity;
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn parity_vector(&self) -> Option<&[bool]> {
        self.parity.as_deref()
    }

    pub fn is_graded(&self) -> bool {
        self.parity.is_some()
    }

    pub fn parity(&self, i: usize) -> bool {
        self.parity.as_ref().is_some_and(|p| p[i])
    }

    pub fn get(&self, i: usize, j: usize) -> &GradedElement {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: GradedElement) {
        self.entries[i * self.n + j] = x;
    }

    pub fn entries(&self) -> &[GradedElement] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(GradedElement::is_zero)
    }

    fn check_shape(&self, other: &MatrixForm) -> Result<()> {
        if self.n != other.n || self.parity != other.parity {
            return Err(Error::Dimension(format!(
                "matrix shapes differ ({} vs {})",
                self.n, other.n
            )));
        }
        Ok(())
    }

    pub fn map(&self, f: impl Fn(&GradedElement) -> GradedElement) -> MatrixForm {
        MatrixForm { n: self.n, parity: self.parity.clone(), entries: self.entries.iter().map(f).collect() }
    }

    pub fn try_map(&self, f: impl Fn(&GradedElement) -> Result<GradedElement>) -> Result<MatrixForm> {
        let entries = self.entries.iter().map(f).collect::<Result<Vec<_>>>()?;
        Ok(MatrixForm { n: self.n, parity: self.parity.clone(), entries })
    }

    pub fn add(&self, other: &MatrixForm) -> Result<MatrixForm> {
        self.check_shape(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect();
        Ok(MatrixForm { n: self.n, parity: self.parity.clone(), entries })
    }

    pub fn sub(&self, other: &MatrixForm) -> Result<MatrixForm> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> MatrixForm {
        self.map(GradedElement::neg)
    }

    pub fn scale(&self, c: &Scalar) -> MatrixForm {
        self.map(|x| x.scale(c))
    }

    pub fn truncate(&self, cap: u32) -> MatrixForm {
        self.map(|x| x.truncate(cap))
    }

    /// Left multiplication by a form: `ω · M`.
    pub fn left_mul(&self, m: &GdgaModel, omega: &GradedElement) -> MatrixForm {
        self.map(|x| m.mul(omega, x))
    }

    /// Graded matrix product.
    pub fn mul(&self, m: &GdgaModel, other: &MatrixForm) -> Result<MatrixForm> {
        self.check_shape(other)?;
        let n = self.n;
        let mut out = MatrixForm { n, parity: self.parity.clone(), entries: vec![m.zero(); n * n] };
        for i in 0..n {
            for j in 0..n {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                let flip = self.parity(i) != self.parity(j);
                for k in 0..n {
                    let b = other.get(j, k);
                    if b.is_zero() {
                        continue;
                    }
                    let b = if flip { b.parity_twist() } else { b.clone() };
                    out.entries[i * n + k].add_assign(&a.mul(&b));
                }
            }
        }
        out.try_map(|x| m.normalize(x))
    }

    pub fn pow(&self, m: &GdgaModel, k: u32) -> Result<MatrixForm> {
        let mut out = MatrixForm::identity(m, self.n).with_parity(self.parity.clone())?;
        for _ in 0..k {
            out = out.mul(m, self)?;
        }
        Ok(out)
    }

    /// Total parity (form degree plus block parity) if homogeneous.
    /// The zero matrix reports `Some(false)`.
    pub fn total_parity(&self) -> Option<bool> {
        let mut seen: Option<bool> = None;
        for i in 0..self.n {
            for j in 0..self.n {
                let block = self.parity(i) != self.parity(j);
                for (mono, _) in self.get(i, j).terms() {
                    let p = (mono.degree() % 2 == 1) != block;
                    match seen {
                        None => seen = Some(p),
                        Some(q) if q != p => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(seen.unwrap_or(false))
    }

    /// `[A, B] = AB - (-1)^{|A||B|} BA` for homogeneous `A`, `B`.
    pub fn supercommutator(&self, m: &GdgaModel, other: &MatrixForm) -> Result<MatrixForm> {
        let pa = self.total_parity().ok_or(Error::Ungraded)?;
        let pb = other.total_parity().ok_or(Error::Ungraded)?;
        let ab = self.mul(m, other)?;
        let ba = other.mul(m, self)?;
        if pa && pb {
            ab.add(&ba)
        } else {
            ab.sub(&ba)
        }
    }

    /// Entrywise action of a derivation acting on the form factor.
    pub fn apply_derivation(&self, m: &GdgaModel, der: &DerivationSpec) -> MatrixForm {
        self.map(|x| m.apply(der, x))
    }

    pub fn trace(&self) -> GradedElement {
        let mut out = GradedElement::zero(self.entries[0].table());
        for i in 0..self.n {
            out.add_assign(self.get(i, i));
        }
        out
    }

    /// `Σ (-1)^{p_i} M_ii`; needs a grading.
    pub fn supertrace(&self) -> Result<GradedElement> {
        if !self.is_graded() {
            return Err(Error::Ungraded);
        }
        let mut out = GradedElement::zero(self.entries[0].table());
        for i in 0..self.n {
            if self.parity(i) {
                out = out.sub(self.get(i, i));
            } else {
                out.add_assign(self.get(i, i));
            }
        }
        Ok(out)
    }

    /// Whether every entry with form degree 0 vanishes.
    pub fn has_zero_scalar_part(&self) -> bool {
        self.entries.iter().all(|x| x.part(0).is_zero())
    }

    /// `Σ_k M^k / k!`, exact when the degree-0 part of `M` is nilpotent.
    /// Words in `M` then carry at most `n - 1` degree-0 factors in a row
    /// between at most `cap` positive-degree factors, so the sum is finite.
    pub fn exp_nilpotent(&self, m: &GdgaModel, cap: u32) -> Result<MatrixForm> {
        let n = self.n as i64;
        let bound = if self.has_zero_scalar_part() { cap as i64 } else { (cap as i64 + 1) * n + cap as i64 };
        let x = self.truncate(cap);
        let mut term = MatrixForm::identity(m, self.n).with_parity(self.parity.clone())?.truncate(cap);
        let mut out = term.clone();
        for k in 1..=bound + 1 {
            term = term.mul(m, &x)?.scale(&Scalar::ratio(1, k)).try_map(|e| m.normalize(e))?;
            if term.is_zero() {
                return Ok(out);
            }
            out = out.add(&term)?;
        }
        Err(Error::NotNilpotent)
    }

    /// Kronecker product `A ⊗ B` of ungraded matrices; entries multiply
    /// without signs, so use it with one factor constant or all forms even.
    pub fn kron(m: &GdgaModel, a: &MatrixForm, b: &MatrixForm) -> MatrixForm {
        let (p, q) = (a.n, b.n);
        MatrixForm::from_fn(m, p * q, |r, c| {
            let (i1, i2) = (r / q, r % q);
            let (j1, j2) = (c / q, c % q);
            m.mul(a.get(i1, j1), b.get(i2, j2))
        })
    }

    /// Block diagonal sum; parities concatenate when both are graded.
    pub fn block_diag(m: &GdgaModel, a: &MatrixForm, b: &MatrixForm) -> Result<MatrixForm> {
        let n = a.n + b.n;
        let parity = match (&a.parity, &b.parity) {
            (Some(x), Some(y)) => Some(x.iter().chain(y).copied().collect()),
            (None, None) => None,
            _ => return Err(Error::Ungraded),
        };
        let out = MatrixForm::from_fn(m, n, |i, j| {
            if i < a.n && j < a.n {
                a.get(i, j).clone()
            } else if i >= a.n && j >= a.n {
                b.get(i - a.n, j - a.n).clone()
            } else {
                m.zero()
            }
        });
        out.with_parity(parity)
    }

    /// Odd-form part of each entry, used by sign bookkeeping in callers.
    pub fn odd_form_part(&self) -> MatrixForm {
        self.map(odd_part)
    }
}

impl fmt::Display for MatrixForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..self.n {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
        }
        write!(f, "]")
    }
}

impl fmt::Debug for MatrixForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MatrixForm{self}")
    }
}

/// An operator on sections `Σ s_i e_i`: a derivation on coefficients plus a
/// matrix part, `P(ω e_i) = D(ω) e_i + (-1)^{|ω||P|} ω Σ_k M_ki e_k`.
#[derive(Clone, Debug)]
pub struct SectionOperator {
    pub derivation: Option<DerivationSpec>,
    pub matrix: MatrixForm,
    pub odd: bool,
}

impl SectionOperator {
    pub fn new(derivation: Option<DerivationSpec>, matrix: MatrixForm) -> Result<Self> {
        let odd = match (&derivation, matrix.total_parity()) {
            (Some(d), Some(p)) if !matrix.is_zero() && d.is_odd() != p => {
                return Err(Error::InvalidParameter("derivation and matrix parts differ in parity".into()))
            }
            (Some(d), _) => d.is_odd(),
            (None, Some(p)) => p,
            (None, None) => return Err(Error::Ungraded),
        };
        Ok(SectionOperator { derivation, matrix, odd })
    }

    /// Applies to a column of coefficients.
    pub fn apply(&self, m: &GdgaModel, col: &[GradedElement]) -> Vec<GradedElement> {
        let n = self.matrix.size();
        let mut out: Vec<GradedElement> = match &self.derivation {
            Some(d) => col.iter().map(|s| m.apply(d, s)).collect(),
            None => vec![m.zero(); n],
        };
        for (i, s) in col.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            let s = if self.odd { s.parity_twist() } else { s.clone() };
            for (k, o) in out.iter_mut().enumerate() {
                let e = self.matrix.get(k, i);
                if !e.is_zero() {
                    o.add_assign(&m.mul(&s, e));
                }
            }
        }
        out
    }

    /// Matrix of a C^∞-linear composite, read off on basis columns.
    pub fn matrix_on_basis(m: &GdgaModel, n: usize, parity: Option<Vec<bool>>, f: impl Fn(&[GradedElement]) -> Vec<GradedElement>) -> Result<MatrixForm> {
        let mut out = MatrixForm::zeros(m, n).with_parity(parity)?;
        for j in 0..n {
            let mut e = vec![m.zero(); n];
            e[j] = m.one();
            for (i, v) in f(&e).into_iter().enumerate() {
                out.set(i, j, v);
            }
        }
        Ok(out)
    }

    /// `P∘P` read off on basis columns (C^∞-linear for odd `P`).
    pub fn square(&self, m: &GdgaModel) -> Result<MatrixForm> {
        let n = self.matrix.size();
        SectionOperator::matrix_on_basis(m, n, self.matrix.parity_vector().map(|p| p.to_vec()), |e| {
            self.apply(m, &self.apply(m, e))
        })
    }

    /// `[P, Q]` read off on basis columns (C^∞-linear when the derivation
    /// parts supercommute).
    pub fn commutator(&self, m: &GdgaModel, other: &SectionOperator) -> Result<MatrixForm> {
        let n = self.matrix.size();
        let sign = self.odd && other.odd;
        SectionOperator::matrix_on_basis(m, n, self.matrix.parity_vector().map(|p| p.to_vec()), |e| {
            let pq = self.apply(m, &other.apply(m, e));
            let qp = other.apply(m, &self.apply(m, e));
            pq.iter().zip(qp.iter()).map(|(a, b)| if sign { a.add(b) } else { a.sub(b) }).collect()
        })
    }
}
