use crate::error::Result;
use crate::gca::{DerivationSpec, GeneratorTable, GradedElement, RewriteSystem, Scalar};
use crate::lie::LieAlgebraData;
use crate::model::GdgaModel;

/// `CE(𝔤)`: generators `{prefix}1..` of degree 1 with `dσ^a = -½ f^a_{bc} σ^b σ^c`,
/// `ι_a σ^b = δ^b_a` and `L_b σ^a = -f^a_{bc} σ^c`.
pub fn ce_model(g: &LieAlgebraData, prefix: &str) -> Result<GdgaModel> {
    let n = g.dim();
    let t = GeneratorTable::new((1..=n).map(|a| (format!("{prefix}{a}"), 1)))?;
    let s = |a: usize| GradedElement::generator(&t, a);
    let d = DerivationSpec::from_fn("d", &t, 1, |a| {
        let mut out = GradedElement::zero(&t);
        for b in 0..n {
            for c in 0..n {
                let f = g.f(a, b, c);
                if !f.is_zero() {
                    out.add_scaled(&s(b).mul(&s(c)), &(f * &Scalar::ratio(-1, 2)));
                }
            }
        }
        out
    })?;
    let mut iota = Vec::with_capacity(n);
    let mut lie = Vec::with_capacity(n);
    for b in 0..n {
        iota.push(DerivationSpec::from_fn(format!("i{}", b + 1), &t, -1, |a| {
            if a == b {
                GradedElement::one(&t)
            } else {
                GradedElement::zero(&t)
            }
        })?);
        lie.push(DerivationSpec::from_fn(format!("L{}", b + 1), &t, 0, |a| {
            let mut out = GradedElement::zero(&t);
            for c in 0..n {
                out.add_scaled(&s(c), &-g.f(a, b, c));
            }
            out
        })?);
    }
    GdgaModel::new(format!("CE({})", g.name()), RewriteSystem::empty(&t), g.clone(), d, iota, lie)
}
