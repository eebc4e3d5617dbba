use crate::error::Result;
use crate::gca::{DerivationSpec, GeneratorTable, GradedElement, Monomial, RewriteSystem, Rule, Scalar};
use crate::lie::LieAlgebraData;
use crate::model::GdgaModel;

/// The algebra of a point: just scalars, with `g` acting trivially.
pub fn point_model(g: &LieAlgebraData) -> Result<GdgaModel> {
    let t = GeneratorTable::new(Vec::<(String, u32)>::new())?;
    let d = DerivationSpec::zero("d", &t, 1);
    GdgaModel::trivial_action("pt", RewriteSystem::empty(&t), g.clone(), d)
}

/// The plane with `u(1)` rotating it: `ι dx1 = -x2`, `ι dx2 = x1`.
pub fn r2rot() -> Result<GdgaModel> {
    let t = GeneratorTable::new([("x1", 0), ("x2", 0), ("dx1", 1), ("dx2", 1)])?;
    let [x1, x2, dx1, dx2] = [0, 1, 2, 3].map(|i| GradedElement::generator(&t, i));
    let zero = GradedElement::zero(&t);
    let d = DerivationSpec::new("d", &t, 1, vec![dx1.clone(), dx2.clone(), zero.clone(), zero.clone()])?;
    let iota = DerivationSpec::new("i1", &t, -1, vec![zero.clone(), zero.clone(), x2.neg(), x1.clone()])?;
    let lie = DerivationSpec::new("L1", &t, 0, vec![x2.neg(), x1, dx2.neg(), dx1])?;
    GdgaModel::new("R2", RewriteSystem::empty(&t), LieAlgebraData::u1(), d, vec![iota], vec![lie])
}

/// `R³` with a 3-dimensional `g` acting by `L_a x_b = -f^b_{ac} x_c`.
pub fn r3rot(g: &LieAlgebraData) -> Result<GdgaModel> {
    let t = GeneratorTable::new([("x1", 0), ("x2", 0), ("x3", 0), ("dx1", 1), ("dx2", 1), ("dx3", 1)])?;
    let x = |i: usize| GradedElement::generator(&t, i);
    let dx = |i: usize| GradedElement::generator(&t, 3 + i);
    let rot = |a: usize, b: usize, v: &dyn Fn(usize) -> GradedElement| {
        let mut out = GradedElement::zero(&t);
        for c in 0..3 {
            out.add_scaled(&v(c), &-g.f(b, a, c));
        }
        out
    };
    let d = DerivationSpec::from_fn("d", &t, 1, |i| if i < 3 { dx(i) } else { GradedElement::zero(&t) })?;
    let mut iota = Vec::new();
    let mut lie = Vec::new();
    for a in 0..3 {
        iota.push(DerivationSpec::from_fn(format!("i{}", a + 1), &t, -1, |i| {
            if i < 3 {
                GradedElement::zero(&t)
            } else {
                rot(a, i - 3, &x)
            }
        })?);
        lie.push(DerivationSpec::from_fn(format!("L{}", a + 1), &t, 0, |i| {
            if i < 3 {
                rot(a, i, &x)
            } else {
                rot(a, i - 3, &dx)
            }
        })?);
    }
    GdgaModel::new("R3", RewriteSystem::empty(&t), g.clone(), d, iota, lie)
}

fn torus_tables(prefix: &[(&str, u32)]) -> Result<std::sync::Arc<GeneratorTable>> {
    let tail = [("c1", 0), ("s1", 0), ("c2", 0), ("s2", 0), ("e1", 1), ("e2", 1)];
    GeneratorTable::new(prefix.iter().chain(tail.iter()).map(|&(n, d)| (n.to_string(), d)))
}

/// Circle relations `s_i^2 -> 1 - c_i^2` for a table containing the torus generators.
fn torus_rewrite(t: &std::sync::Arc<GeneratorTable>) -> Result<RewriteSystem> {
    let mut rules = Vec::new();
    for i in ["1", "2"] {
        let c = GradedElement::named(t, &format!("c{i}"))?;
        let s = t.lookup(&format!("s{i}"))?;
        let mut exps = vec![0u16; t.len()];
        exps[s] = 2;
        rules.push(Rule {
            lhs: Monomial::from_exponents(t, exps).expect("even generator"),
            rhs: GradedElement::one(t).sub(&c.mul(&c)),
        });
    }
    let s1 = t.lookup("s1")?;
    let s2 = t.lookup("s2")?;
    let priority = [s1, s2].into_iter().chain((0..t.len()).filter(|&i| i != s1 && i != s2)).collect();
    RewriteSystem::new(t, rules, Some(priority))
}

fn torus_d(t: &std::sync::Arc<GeneratorTable>, extra: impl Fn(&str) -> Option<GradedElement>) -> Result<DerivationSpec> {
    let g = |n: &str| GradedElement::named(t, n).expect("torus generator");
    DerivationSpec::from_fn("d", t, 1, |i| {
        let name = t.name(i);
        match name {
            "c1" => g("s1").mul(&g("e1")).neg(),
            "s1" => g("c1").mul(&g("e1")),
            "c2" => g("s2").mul(&g("e2")).neg(),
            "s2" => g("c2").mul(&g("e2")),
            _ => extra(name).unwrap_or_else(|| GradedElement::zero(t)),
        }
    })
}

/// Flat torus `T² = S¹ × S¹` with coordinates `c_i = cos`, `s_i = sin` and
/// angle forms `e_i`. With `translate`, `u(1)` rotates the first circle.
pub fn torus2(translate: bool) -> Result<GdgaModel> {
    let t = torus_tables(&[])?;
    let rewrite = torus_rewrite(&t)?;
    let d = torus_d(&t, |_| None)?;
    if !translate {
        return GdgaModel::trivial_action("T2", rewrite, LieAlgebraData::u1(), d);
    }
    let g = |n: &str| GradedElement::named(&t, n).expect("torus generator");
    let iota = DerivationSpec::from_fn("i1", &t, -1, |i| {
        if t.name(i) == "e1" {
            GradedElement::one(&t)
        } else {
            GradedElement::zero(&t)
        }
    })?;
    let lie = DerivationSpec::from_fn("L1", &t, 0, |i| match t.name(i) {
        "c1" => g("s1").neg(),
        "s1" => g("c1"),
        _ => GradedElement::zero(&t),
    })?;
    GdgaModel::new("T2", rewrite, LieAlgebraData::u1(), d, vec![iota], vec![lie])
}

/// A torus bundle over a line with base coordinate `s` and a warping
/// function `w = e^s` encoded by `dw = w ds`. The trivial group acts.
pub fn warped_torus_family() -> Result<GdgaModel> {
    let t = torus_tables(&[("s", 0), ("w", 0), ("ds", 1)])?;
    let rewrite = torus_rewrite(&t)?;
    let g = |n: &str| GradedElement::named(&t, n).expect("family generator");
    let d = torus_d(&t, |name| match name {
        "s" => Some(g("ds")),
        "w" => Some(g("w").mul(&g("ds"))),
        _ => None,
    })?;
    GdgaModel::trivial_action("T2 family", rewrite, LieAlgebraData::u1(), d)
}

/// Constants `rt = t^{1/2}` and `rti = t^{-1/2}` with `rt*rti -> 1`.
pub fn time_parameter(g: &LieAlgebraData) -> Result<GdgaModel> {
    let t = GeneratorTable::new([("rt", 0), ("rti", 0)])?;
    let lhs = Monomial::from_exponents(&t, vec![1, 1]).expect("even generators");
    let rewrite = RewriteSystem::new(&t, vec![Rule { lhs, rhs: GradedElement::scalar(&t, Scalar::one()) }], None)?;
    GdgaModel::trivial_action("t", rewrite, g.clone(), DerivationSpec::zero("d", &t, 1))
}

/// The plane with `g` acting trivially.
pub fn r2_trivial(g: &LieAlgebraData) -> Result<GdgaModel> {
    let t = GeneratorTable::new([("x1", 0), ("x2", 0), ("dx1", 1), ("dx2", 1)])?;
    let [dx1, dx2] = [2, 3].map(|i| GradedElement::generator(&t, i));
    let zero = GradedElement::zero(&t);
    let d = DerivationSpec::new("d", &t, 1, vec![dx1, dx2, zero.clone(), zero])?;
    GdgaModel::trivial_action("R2", RewriteSystem::empty(&t), g.clone(), d)
}
