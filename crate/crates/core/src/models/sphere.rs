use crate::error::Result;
use crate::gca::{DerivationSpec, GeneratorTable, GradedElement, Monomial, RewriteSystem, Rule};
use crate::lie::LieAlgebraData;
use crate::model::GdgaModel;

/// The unit sphere `x² + y² + z² = 1` with rotation about the z-axis.
///
/// Generators `x y z` (degree 0), `dx dy dz` (degree 1) and `nu` (degree 2),
/// where `nu` is the area form. The relations reduce every 2-form to a
/// multiple of `nu`:
///
/// ```text
/// z^2   -> 1 - x^2 - y^2       x*dx  -> -y*dy - z*dz
/// dx*dy -> z*nu                dx*dz -> -y*nu          dy*dz -> x*nu
/// nu*dx, nu*dy, nu*dz, nu^2 -> 0
/// ```
///
/// The rotation field has `ι dx = -y`, `ι dy = x`, `ι dz = 0`, `ι nu = dz`.
pub fn sphere_model() -> Result<GdgaModel> {
    let t = GeneratorTable::new([
        ("x", 0),
        ("y", 0),
        ("z", 0),
        ("dx", 1),
        ("dy", 1),
        ("dz", 1),
        ("nu", 2),
    ])?;
    let g = |i: usize| GradedElement::generator(&t, i);
    let [x, y, z, dx, dy, dz, nu] = [0, 1, 2, 3, 4, 5, 6].map(g);
    let zero = GradedElement::zero(&t);
    let one = GradedElement::one(&t);
    let mono = |e: [u16; 7]| Monomial::from_exponents(&t, e.to_vec()).expect("valid monomial");
    let rules = vec![
        Rule { lhs: mono([0, 0, 2, 0, 0, 0, 0]), rhs: one.sub(&x.mul(&x)).sub(&y.mul(&y)) },
        Rule { lhs: mono([1, 0, 0, 1, 0, 0, 0]), rhs: y.mul(&dy).add(&z.mul(&dz)).neg() },
        Rule { lhs: mono([0, 0, 0, 1, 1, 0, 0]), rhs: z.mul(&nu) },
        Rule { lhs: mono([0, 0, 0, 1, 0, 1, 0]), rhs: y.mul(&nu).neg() },
        Rule { lhs: mono([0, 0, 0, 0, 1, 1, 0]), rhs: x.mul(&nu) },
        Rule { lhs: mono([0, 0, 0, 1, 0, 0, 1]), rhs: zero.clone() },
        Rule { lhs: mono([0, 0, 0, 0, 1, 0, 1]), rhs: zero.clone() },
        Rule { lhs: mono([0, 0, 0, 0, 0, 1, 1]), rhs: zero.clone() },
        Rule { lhs: mono([0, 0, 0, 0, 0, 0, 2]), rhs: zero.clone() },
    ];
    let rewrite = RewriteSystem::new(&t, rules, Some(vec![3, 4, 5, 6, 2, 1, 0]))?;
    let d = DerivationSpec::new(
        "d",
        &t,
        1,
        vec![dx.clone(), dy.clone(), dz.clone(), zero.clone(), zero.clone(), zero.clone(), zero.clone()],
    )?;
    let iota = DerivationSpec::new(
        "i1",
        &t,
        -1,
        vec![zero.clone(), zero.clone(), zero.clone(), y.neg(), x.clone(), zero.clone(), dz.clone()],
    )?;
    let lie = DerivationSpec::new(
        "L1",
        &t,
        0,
        vec![y.neg(), x.clone(), zero.clone(), dy.neg(), dx.clone(), zero.clone(), zero.clone()],
    )?;
    GdgaModel::new("S2", rewrite, LieAlgebraData::u1(), d, vec![iota], vec![lie])
}

/// `x dy dz + y dz dx + z dx dy`, which normalizes to `nu`.
pub fn sphere_area_form(m: &GdgaModel) -> Result<GradedElement> {
    m.parse("x*dy*dz + y*dz*dx + z*dx*dy")
}
