use equichern::gca::{DerivationSpec, GradedElement, Scalar};
use equichern::lie::LieAlgebraData;
use equichern::model::{basic_subspace, build_weil, cartan_project, chi, verify_gdga, GdgaModel};

fn all_algebras() -> Vec<LieAlgebraData> {
    ["u1", "su2", "so3", "ab2"].iter().map(|n| LieAlgebraData::builtin(n).unwrap()).collect()
}

fn g(m: &GdgaModel, name: &str) -> GradedElement {
    m.gen(name).unwrap()
}

#[test]
fn weil_su2_generator_actions() {
    let w = build_weil(&LieAlgebraData::su2(), None).unwrap();
    assert_eq!(w.apply_iota(0, &g(&w, "z2")), g(&w, "th3"));
    assert_eq!(w.apply_lie(0, &g(&w, "th2")), g(&w, "th3"));
    let u = build_weil(&LieAlgebraData::u1(), None).unwrap();
    assert!(u.apply_iota(0, &g(&u, "z1")).is_zero());
    assert!(u.apply_lie(0, &g(&u, "z1")).is_zero());
}

#[test]
fn weil_models_satisfy_cartan_calculus() {
    for alg in all_algebras() {
        let w = build_weil(&alg, None).unwrap();
        let r = verify_gdga(&w);
        assert_eq!(r.checks.len(), 6);
        assert!(r.passed(), "{}:\n{r}", alg.name());
    }
}

#[test]
fn flipped_contraction_breaks_cartan_formula() {
    let alg = LieAlgebraData::su2();
    let w = build_weil(&alg, None).unwrap();
    let t = w.table().clone();
    let n = 3;
    let bad = DerivationSpec::from_fn("i1", &t, -1, |i| {
        if i < n {
            if i == 0 {
                GradedElement::one(&t)
            } else {
                GradedElement::zero(&t)
            }
        } else {
            let mut out = GradedElement::zero(&t);
            for c in 0..n {
                out.add_scaled(&GradedElement::generator(&t, c), alg.f(i - n, 0, c));
            }
            out
        }
    })
    .unwrap();
    let broken = w.with_iota(0, bad);
    let r = verify_gdga(&broken);
    let cartan = r.checks.iter().find(|c| c.name == "cartan_formula").unwrap();
    assert!(!cartan.passed);
}

#[test]
fn chi_is_horizontal_and_satisfies_bianchi() {
    for alg in all_algebras() {
        let w = build_weil(&alg, None).unwrap();
        let n = alg.dim();
        for a in 0..n {
            let x = chi(&w, a).unwrap();
            for b in 0..n {
                assert!(w.apply_iota(b, &x).is_zero(), "{} ι_{b} χ^{a}", alg.name());
            }
            // d χ^a + f^a_{bc} θ^b χ^c = 0
            let mut lhs = w.apply_d(&x);
            for b in 0..n {
                for c in 0..n {
                    let f = alg.f(a, b, c);
                    if !f.is_zero() {
                        let th = g(&w, &format!("th{}", b + 1));
                        lhs.add_scaled(&w.mul(&th, &chi(&w, c).unwrap()), f);
                    }
                }
            }
            assert!(lhs.is_zero(), "{}: {lhs}", alg.name());
        }
        if alg.is_abelian() {
            assert_eq!(chi(&w, 0).unwrap(), g(&w, "z1"));
        }
    }
}

#[test]
fn chi_su2_expanded_by_hand() {
    let w = build_weil(&LieAlgebraData::su2(), None).unwrap();
    // ½ε_{1bc} θ^b θ^c = θ^2 θ^3
    assert_eq!(chi(&w, 0).unwrap(), w.parse("z1 + th2*th3").unwrap());
}

#[test]
fn cartan_projection_of_z_is_chi() {
    let w = build_weil(&LieAlgebraData::su2(), None).unwrap();
    for a in 0..3 {
        let z = g(&w, &format!("z{}", a + 1));
        let p = cartan_project(&w, &z).unwrap();
        assert_eq!(p, chi(&w, a).unwrap());
        assert_eq!(cartan_project(&w, &p).unwrap(), p);
    }
    let horizontal = w.parse("z1*z1 + th2*th3*z1").unwrap();
    let c1 = chi(&w, 0).unwrap();
    let h = w.mul(&c1, &c1);
    assert_eq!(cartan_project(&w, &h).unwrap(), h);
    assert_ne!(cartan_project(&w, &horizontal).unwrap(), horizontal);
}

#[test]
fn basic_dimensions_su2() {
    let w = build_weil(&LieAlgebraData::su2(), Some(9)).unwrap();
    let dims: Vec<usize> = (0..=9).map(|k| basic_subspace(&w, k, None).unwrap().len()).collect();
    assert_eq!(dims, vec![1, 0, 0, 0, 1, 0, 0, 0, 1, 0]);
    for k in [4, 8] {
        for v in basic_subspace(&w, k, None).unwrap() {
            assert!(w.is_basic(&v));
        }
    }
    // Degree 4 is spanned by the Casimir Σ χ^a χ^a.
    let mut cas = w.zero();
    for a in 0..3 {
        let c = chi(&w, a).unwrap();
        cas.add_assign(&w.mul(&c, &c));
    }
    let v = &basic_subspace(&w, 4, None).unwrap()[0];
    let lead = v.terms().next().unwrap();
    let ratio = cas.coefficient(lead.0).inverse().unwrap() * lead.1.clone();
    assert_eq!(cas.scale(&ratio), *v);
}

#[test]
fn basic_u1_degree_two_is_z() {
    let w = build_weil(&LieAlgebraData::u1(), Some(4)).unwrap();
    let b = basic_subspace(&w, 2, None).unwrap();
    assert_eq!(b, vec![g(&w, "z1")]);
    assert!(basic_subspace(&w, 3, None).unwrap().is_empty());
    assert_eq!(basic_subspace(&w, 0, None).unwrap(), vec![w.scalar(Scalar::one())]);
}
