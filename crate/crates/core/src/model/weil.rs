use crate::error::{Error, Result};
use crate::gca::{DerivationSpec, GeneratorTable, GradedElement, RewriteSystem, Scalar};
use crate::lie::LieAlgebraData;

use super::GdgaModel;

/// Positions of `θ^a` and `z^a` in a model's generator table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeilIndices {
    pub theta: Vec<usize>,
    pub z: Vec<usize>,
}

impl WeilIndices {
    pub(crate) fn shifted(&self, offset: usize) -> WeilIndices {
        WeilIndices {
            theta: self.theta.iter().map(|i| i + offset).collect(),
            z: self.z.iter().map(|i| i + offset).collect(),
        }
    }
}

/// The Weil algebra `Λ𝔤* ⊗ S𝔤*` with generators `th1.. (deg 1)` and `z1.. (deg 2)`,
/// truncated above `cap` when given.
pub fn build_weil(g: &LieAlgebraData, cap: Option<u32>) -> Result<GdgaModel> {
    let report = g.validate();
    if !report.passed() {
        return Err(Error::InvalidLieAlgebra(format!("{} fails validation", g.name())));
    }
    let n = g.dim();
    let names = (1..=n)
        .map(|a| (format!("th{a}"), 1))
        .chain((1..=n).map(|a| (format!("z{a}"), 2)));
    let t = GeneratorTable::new(names)?;
    let th = |a: usize| GradedElement::generator(&t, a);
    let z = |a: usize| GradedElement::generator(&t, n + a);
    let zero = GradedElement::zero(&t);

    let d = DerivationSpec::from_fn("d", &t, 1, |i| if i < n { z(i) } else { zero.clone() })?;

    // Σ_c f^a_{bc} x_c, negated.
    let ad = |a: usize, b: usize, x: &dyn Fn(usize) -> GradedElement| {
        let mut out = GradedElement::zero(&t);
        for c in 0..n {
            out.add_scaled(&x(c), &-g.f(a, b, c));
        }
        out
    };

    let mut iota = Vec::with_capacity(n);
    let mut lie = Vec::with_capacity(n);
    for b in 0..n {
        iota.push(DerivationSpec::from_fn(format!("i{}", b + 1), &t, -1, |i| {
            if i < n {
                if i == b {
                    GradedElement::one(&t)
                } else {
                    GradedElement::zero(&t)
                }
            } else {
                ad(i - n, b, &th)
            }
        })?);
        lie.push(DerivationSpec::from_fn(format!("L{}", b + 1), &t, 0, |i| {
            if i < n {
                ad(i, b, &th)
            } else {
                ad(i - n, b, &z)
            }
        })?);
    }
    let model = GdgaModel::new(format!("W({})", g.name()), RewriteSystem::empty(&t), g.clone(), d, iota, lie)?;
    Ok(model
        .with_cap(cap)
        .with_weil(Some(WeilIndices { theta: (0..n).collect(), z: (n..2 * n).collect() })))
}

/// `χ^a = z^a + ½ f^a_{bc} θ^b θ^c`.
pub fn chi(m: &GdgaModel, a: usize) -> Result<GradedElement> {
    let w = m
        .weil()
        .ok_or_else(|| Error::InvalidParameter(format!("model {} has no Weil generators", m.name())))?;
    let t = m.table();
    let g = m.lie_algebra();
    let mut out = GradedElement::generator(t, w.z[a]);
    let half = Scalar::ratio(1, 2);
    for b in 0..g.dim() {
        for c in 0..g.dim() {
            let f = g.f(a, b, c);
            if f.is_zero() {
                continue;
            }
            let tt = GradedElement::generator(t, w.theta[b]).mul(&GradedElement::generator(t, w.theta[c]));
            out.add_scaled(&tt, &(f * &half));
        }
    }
    m.normalize(&out)
}

/// `Σ_k (-1)^k Σ_{a_1<…<a_k} φ^{a_1}⋯φ^{a_k} ι_{a_k}⋯ι_{a_1} x`, the
/// normal-ordered form of `exp(-φ^a ι_a)`.
pub fn horizontal_projection(m: &GdgaModel, phi: &[GradedElement], x: &GradedElement) -> Result<GradedElement> {
    let n = m.dim();
    if phi.len() != n {
        return Err(Error::Dimension(format!("expected {n} connection coefficients")));
    }
    let mut out = m.zero();
    // Depth-first over increasing index sequences; carry (φ-product, contracted x).
    let mut stack = vec![(0usize, 0usize, m.one(), x.clone().uncapped())];
    while let Some((start, k, prod, contracted)) = stack.pop() {
        let sign = if k % 2 == 1 { Scalar::from_int(-1) } else { Scalar::one() };
        out.add_scaled(&m.mul(&prod, &contracted), &sign);
        for a in start..n {
            let next = m.apply_iota(a, &contracted).uncapped();
            if next.is_zero() {
                continue;
            }
            stack.push((a + 1, k + 1, m.mul(&prod, &phi[a]), next));
        }
    }
    m.normalize(&out.uncapped().with_cap(x.cap()))
}

/// The universal projection with `φ^a = θ^a`.
pub fn cartan_project(m: &GdgaModel, x: &GradedElement) -> Result<GradedElement> {
    let w = m
        .weil()
        .ok_or_else(|| Error::InvalidParameter(format!("model {} has no Weil generators", m.name())))?;
    let phi: Vec<GradedElement> = w.theta.iter().map(|&i| GradedElement::generator(m.table(), i)).collect();
    horizontal_projection(m, &phi, x)
}
