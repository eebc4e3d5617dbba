//! Numeric Volterra series for `e^{-t(D² + F⁺)}` when `D² ≠ 0`.

use std::collections::{BTreeMap, HashMap};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gca::{GradedElement, Monomial};
use crate::matrix::MatrixForm;
use crate::model::GdgaModel;

/// `Σ_μ μ ⊗ C_μ`: a form-valued matrix with complex float coefficients.
#[derive(Clone, Debug)]
pub struct NumericFormMatrix {
    pub n: usize,
    pub parity: Vec<bool>,
    pub terms: BTreeMap<Monomial, DMatrix<Complex64>>,
}

impl NumericFormMatrix {
    pub fn zeros(n: usize, parity: Vec<bool>) -> Self {
        NumericFormMatrix { n, parity, terms: BTreeMap::new() }
    }

    pub fn from_exact(f: &MatrixForm) -> Self {
        let n = f.size();
        let parity = f.parity_vector().map(|p| p.to_vec()).unwrap_or_else(|| vec![false; n]);
        let mut out = NumericFormMatrix::zeros(n, parity);
        for i in 0..n {
            for j in 0..n {
                for (mono, c) in f.get(i, j).terms() {
                    let (re, im) = c.to_c64();
                    out.entry(mono)[(i, j)] += Complex64::new(re, im);
                }
            }
        }
        out
    }

    fn entry(&mut self, mono: &Monomial) -> &mut DMatrix<Complex64> {
        let n = self.n;
        self.terms.entry(mono.clone()).or_insert_with(|| DMatrix::zeros(n, n))
    }

    pub fn get(&self, mono: &Monomial) -> DMatrix<Complex64> {
        self.terms.get(mono).cloned().unwrap_or_else(|| DMatrix::zeros(self.n, self.n))
    }

    /// Largest entry difference over all monomials.
    pub fn max_abs_diff(&self, other: &NumericFormMatrix) -> f64 {
        let keys: std::collections::BTreeSet<&Monomial> = self.terms.keys().chain(other.terms.keys()).collect();
        keys.into_iter()
            .map(|k| (self.get(k) - other.get(k)).iter().map(|z| z.norm()).fold(0.0, f64::max))
            .fold(0.0, f64::max)
    }

    pub fn supertrace(&self) -> BTreeMap<Monomial, Complex64> {
        self.terms
            .iter()
            .map(|(k, a)| {
                let s = (0..self.n).map(|i| if self.parity[i] { -a[(i, i)] } else { a[(i, i)] }).sum();
                (k.clone(), s)
            })
            .collect()
    }
}

/// Divided difference `exp[x_0, …, x_k]`, which equals `∫_{Δ_k} e^{Σ s_j x_j} ds`.
/// Closed form for well-separated points; otherwise the top-right entry of
/// the exponential of the bidiagonal matrix with diagonal `x`.
pub fn divided_difference_exp(xs: &[Complex64]) -> Complex64 {
    let k = xs.len();
    let scale = 1.0 + xs.iter().map(|x| x.norm()).fold(0.0, f64::max);
    let separated = (0..k).all(|i| (i + 1..k).all(|j| (xs[i] - xs[j]).norm() > 0.05 * scale));
    if separated {
        return (0..k)
            .map(|j| {
                let den: Complex64 = (0..k).filter(|&l| l != j).map(|l| xs[j] - xs[l]).product();
                xs[j].exp() / den
            })
            .sum();
    }
    let m = DMatrix::from_fn(k, k, |i, j| {
        if i == j {
            xs[i]
        } else if j == i + 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    m.exp()[(0, k - 1)]
}

fn twist(a: &DMatrix<Complex64>, parity: &[bool]) -> DMatrix<Complex64> {
    DMatrix::from_fn(a.nrows(), a.ncols(), |i, j| if parity[i] != parity[j] { -a[(i, j)] } else { a[(i, j)] })
}

/// Unitary `U` and eigenvalues with `D² = U diag(λ) U*`, block by block.
fn diagonalize(d2: &DMatrix<Complex64>, parity: &[bool]) -> Result<(DMatrix<Complex64>, Vec<Complex64>)> {
    let n = d2.nrows();
    let off = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| i != j);
    if off.clone().all(|(i, j)| d2[(i, j)].norm() == 0.0) {
        return Ok((DMatrix::identity(n, n), (0..n).map(|i| d2[(i, i)]).collect()));
    }
    if off.clone().any(|(i, j)| parity[i] != parity[j] && d2[(i, j)].norm() > 0.0) {
        return Err(Error::Numeric("D² must preserve the grading".into()));
    }
    if (d2 - d2.adjoint()).norm() > 1e-12 * (1.0 + d2.norm()) {
        return Err(Error::Numeric("numeric Volterra needs D² diagonal or Hermitian".into()));
    }
    let mut u = DMatrix::zeros(n, n);
    let mut lambda = vec![Complex64::new(0.0, 0.0); n];
    for p in [false, true] {
        let idx: Vec<usize> = (0..n).filter(|&i| parity[i] == p).collect();
        if idx.is_empty() {
            continue;
        }
        let block = DMatrix::from_fn(idx.len(), idx.len(), |i, j| d2[(idx[i], idx[j])]);
        let eig = block.symmetric_eigen();
        for (c, &col) in idx.iter().enumerate() {
            lambda[col] = Complex64::new(eig.eigenvalues[c], 0.0);
            for (r, &row) in idx.iter().enumerate() {
                u[(row, col)] = eig.eigenvectors[(r, c)];
            }
        }
    }
    Ok((u, lambda))
}

struct Walk<'a> {
    m: &'a GdgaModel,
    terms: Vec<(Monomial, u32, DMatrix<Complex64>)>,
    parity: &'a [bool],
    x: Vec<Complex64>,
    t: f64,
    cap: u32,
    memo: HashMap<Vec<usize>, Complex64>,
    out: NumericFormMatrix,
}

impl Walk<'_> {
    fn dd(&mut self, path: &[usize]) -> Complex64 {
        let mut key = path.to_vec();
        key.sort_unstable();
        if let Some(v) = self.memo.get(&key) {
            return *v;
        }
        let xs: Vec<Complex64> = key.iter().map(|&i| self.x[i]).collect();
        let v = divided_difference_exp(&xs);
        self.memo.insert(key, v);
        v
    }

    fn sequences(&mut self, seq: &mut Vec<usize>, budget: u32) -> Result<()> {
        if !seq.is_empty() {
            self.emit(seq)?;
        }
        for j in 0..self.terms.len() {
            let deg = self.terms[j].1;
            if deg <= budget {
                seq.push(j);
                self.sequences(seq, budget - deg)?;
                seq.pop();
            }
        }
        Ok(())
    }

    fn emit(&mut self, seq: &[usize]) -> Result<()> {
        let t = self.m.table();
        let mut form = self.m.one();
        for &j in seq {
            form = self.m.mul(&form, &GradedElement::monomial(t, self.terms[j].0.clone(), crate::gca::Scalar::one()));
        }
        let form = self.m.normalize(&form)?;
        if form.is_zero() {
            return Ok(());
        }
        // twist each factor by the parity of the forms to its right
        let mut mats = Vec::with_capacity(seq.len());
        let mut right = 0u32;
        for &j in seq.iter().rev() {
            let a = &self.terms[j].2;
            mats.push(if right % 2 == 1 { twist(a, self.parity) } else { a.clone() });
            right += self.terms[j].1;
        }
        mats.reverse();
        let n = self.parity.len();
        let k = seq.len();
        let coeff = Complex64::new(-self.t, 0.0).powu(k as u32);
        let mut w = DMatrix::<Complex64>::zeros(n, n);
        let mut path = vec![0usize; k + 1];
        for i0 in 0..n {
            path[0] = i0;
            self.paths(&mats, &mut path, 1, Complex64::new(1.0, 0.0), &mut w);
        }
        w *= coeff;
        for (mono, c) in form.terms() {
            let (re, im) = c.to_c64();
            *self.out.entry(mono) += &w * Complex64::new(re, im);
        }
        Ok(())
    }

    fn paths(&mut self, mats: &[DMatrix<Complex64>], path: &mut Vec<usize>, l: usize, acc: Complex64, w: &mut DMatrix<Complex64>) {
        if l == path.len() {
            let v = acc * self.dd(path);
            w[(path[0], path[l - 1])] += v;
            return;
        }
        let prev = path[l - 1];
        for next in 0..self.parity.len() {
            let a = mats[l - 1][(prev, next)];
            if a.norm() == 0.0 {
                continue;
            }
            path[l] = next;
            self.paths(mats, path, l + 1, acc * a, w);
        }
    }
}

/// `e^{-t(D² + F⁺)} = e^{-tD²} + Σ_k (-t)^k ∫_{Δ_k} e^{-s_0 t D²} F⁺ ⋯ F⁺ e^{-s_k t D²}`,
/// with the simplex integrals done as divided differences in an eigenbasis of `D²`.
pub fn volterra_numeric(m: &GdgaModel, f: &MatrixForm, t: f64, cap: u32) -> Result<NumericFormMatrix> {
    let nf = NumericFormMatrix::from_exact(f);
    let n = nf.n;
    let parity = nf.parity.clone();
    let one = Monomial::one(m.table());
    if nf.terms.keys().any(|k| !k.is_one() && k.degree() == 0) {
        return Err(Error::Numeric("the degree-0 part of F must be a constant matrix".into()));
    }
    let d2 = nf.get(&one);
    let (u, lambda) = diagonalize(&d2, &parity)?;
    let uh = u.adjoint();
    let terms = nf
        .terms
        .iter()
        .filter(|(k, _)| !k.is_one() && k.degree() <= cap)
        .map(|(k, a)| (k.clone(), k.degree(), &uh * a * &u))
        .collect();
    let mut walk = Walk {
        m,
        terms,
        parity: &parity,
        x: lambda.iter().map(|l| l * (-t)).collect(),
        t,
        cap,
        memo: HashMap::new(),
        out: NumericFormMatrix::zeros(n, parity.clone()),
    };
    *walk.out.entry(&one) += DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(n, walk.x.iter().map(|x| x.exp())));
    let cap = walk.cap;
    walk.sequences(&mut Vec::new(), cap)?;
    let mut out = walk.out;
    for a in out.terms.values_mut() {
        *a = &u * &*a * &uh;
    }
    Ok(out)
}
