use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gca::{DerivationSpec, GeneratorTable, GradedElement, Monomial, RewriteSystem, Rule};

use super::GdgaModel;

fn embed_der<'a>(d: &'a DerivationSpec, t: &Arc<GeneratorTable>, offset: usize) -> impl Iterator<Item = GradedElement> + 'a {
    let t = t.clone();
    d.images().iter().map(move |x| x.embed(&t, offset))
}

fn embed_mono(m: &Monomial, t: &GeneratorTable, offset: usize) -> Monomial {
    let mut exps = vec![0u16; t.len()];
    exps[offset..offset + m.exponents().len()].copy_from_slice(m.exponents());
    Monomial::from_exponents(t, exps).expect("parity preserved")
}

/// `A ⊗ B` with generators of `A` first. `d`, `ι_a`, `L_a` act on both factors.
pub fn tensor_model(a: &GdgaModel, b: &GdgaModel) -> Result<GdgaModel> {
    if a.lie_algebra() != b.lie_algebra() {
        return Err(Error::LieAlgebraMismatch);
    }
    let t = a.table().concat(b.table())?;
    let off = a.table().len();

    let join = |x: &DerivationSpec, y: &DerivationSpec| -> Result<DerivationSpec> {
        let imgs = embed_der(x, &t, 0).chain(embed_der(y, &t, off)).collect();
        DerivationSpec::new(x.name().to_string(), &t, x.degree(), imgs)
    };
    let d = join(a.d(), b.d())?;
    let iota = (0..a.dim()).map(|i| join(a.iota(i), b.iota(i))).collect::<Result<Vec<_>>>()?;
    let lie = (0..a.dim()).map(|i| join(a.lie(i), b.lie(i))).collect::<Result<Vec<_>>>()?;

    let mut rules = Vec::new();
    for r in a.rewrite().rules() {
        rules.push(Rule { lhs: embed_mono(&r.lhs, &t, 0), rhs: r.rhs.embed(&t, 0) });
    }
    for r in b.rewrite().rules() {
        rules.push(Rule { lhs: embed_mono(&r.lhs, &t, off), rhs: r.rhs.embed(&t, off) });
    }
    let priority: Vec<usize> = a
        .rewrite()
        .priority()
        .iter()
        .copied()
        .chain(b.rewrite().priority().iter().map(|p| p + off))
        .collect();
    let rewrite = RewriteSystem::new(&t, rules, Some(priority))?;

    let cap = match (a.cap(), b.cap()) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, y) => x.or(y),
    };
    let weil = match (a.weil(), b.weil()) {
        (Some(w), _) => Some(w.clone()),
        (None, Some(w)) => Some(w.shifted(off)),
        (None, None) => None,
    };
    Ok(GdgaModel::new(format!("{}⊗{}", a.name(), b.name()), rewrite, a.lie_algebra().clone(), d, iota, lie)?
        .with_cap(cap)
        .with_weil(weil))
}
