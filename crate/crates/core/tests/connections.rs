use equichern::connection::{mq_project_concrete, pullback_curvature_check, ConnectionDataG};
use equichern::lie::LieAlgebraData;
use equichern::matrix::MatrixForm;
use equichern::model::{build_weil, tensor_model};
use equichern::models::{
    builtin_connections, ce_model, point_model, principal_su2, principal_u1, r2_trivial, r2rot, r3rot, sphere_model,
    su2_vector, su2_vector_tau, u1_plane, u1_weight,
};
use equichern::morphism::{chern_weil_pullback, AlgebraMorphism};
use equichern::Error;

#[test]
fn builtin_connections_pass_all_checks() {
    for (name, conn) in builtin_connections().unwrap() {
        let (_, r) = conn.curvature_report().unwrap();
        assert!(r.passed(), "{name}: {r}");
        assert_eq!(r.count_passed(), 5, "{name}");
    }
}

#[test]
fn weight_curvature_is_minus_z_tau() {
    let conn = u1_weight(3).unwrap();
    let omega = conn.curvature_g().unwrap();
    let expected = conn.model.parse("-3*i*z1").unwrap();
    assert_eq!(omega.get(0, 0), &expected);
}

#[test]
fn su2_vector_curvature_is_minus_chi_tau() {
    let conn = su2_vector().unwrap();
    let m = &conn.model;
    let omega = conn.curvature_g().unwrap();
    let mut expected = MatrixForm::zeros(m, 3);
    for (c, t) in su2_vector_tau(m).iter().enumerate() {
        let chi = equichern::model::chi(m, c).unwrap();
        expected = expected.sub(&t.left_mul(m, &chi)).unwrap();
    }
    assert_eq!(omega, expected);
}

#[test]
fn tau_brackets_close() {
    // [τ_a, τ_b] = -f^c_{ab} τ_c, checked entrywise by hand
    let conn = su2_vector().unwrap();
    let m = &conn.model;
    let g = LieAlgebraData::su2();
    for a in 0..3 {
        for b in 0..3 {
            let lhs = conn.tau[a].supercommutator(m, &conn.tau[b]).unwrap();
            let mut rhs = MatrixForm::zeros(m, 3);
            for c in 0..3 {
                rhs = rhs.sub(&conn.tau[c].scale(g.f(c, a, b))).unwrap();
            }
            assert_eq!(lhs, rhs, "a={a} b={b}");
        }
    }
}

#[test]
fn non_invariant_tau_fails_equivariance() {
    let good = u1_plane().unwrap();
    let m = good.model.clone();
    // dropping ι A from τ breaks [L^sec, ∇_G] = 0
    let tau = MatrixForm::diagonal(&m, &[m.parse("i").unwrap()]);
    let bad = ConnectionDataG::new(m, good.a.clone(), vec![tau]).unwrap();
    let (_, r) = bad.curvature_report().unwrap();
    let failed: Vec<_> = r.failures().map(|c| c.name.clone()).collect();
    assert!(failed.contains(&"equivariance".to_string()), "{r}");
}

#[test]
fn rejects_wrong_degrees() {
    let good = u1_weight(1).unwrap();
    let m = good.model.clone();
    let a = MatrixForm::diagonal(&m, &[m.one()]);
    assert!(matches!(ConnectionDataG::new(m, a, good.tau.clone()), Err(Error::InvalidParameter(_))));
}

#[test]
fn q_curvature_formula_matches_direct_square() {
    for p in [principal_su2().unwrap(), principal_u1().unwrap()] {
        let formula = p.q_curvature().unwrap();
        let direct = p.q_curvature_direct().unwrap();
        assert_eq!(formula, direct, "{}", p.model.name());
    }
}

#[test]
fn q_connection_is_horizontal() {
    let p = principal_u1().unwrap();
    let m = &p.model;
    let tq = p.q_connection().unwrap();
    // ι_1 Θ_Q = ι_1Θ - ι_1(φ) ι_1Θ = 0 since ι_1 φ = 1
    assert!(tq.apply_derivation(m, m.iota(0)).is_zero());
}

#[test]
fn pullback_of_weight_bundle() {
    let conn = u1_weight(1).unwrap();
    let g = LieAlgebraData::u1();
    let tgt = tensor_model(&ce_model(&g, "s").unwrap(), &r2_trivial(&g).unwrap()).unwrap();
    let phi = vec![tgt.parse("s1 + x1*dx2").unwrap()];
    let f = chern_weil_pullback(&conn.model, &tgt, &phi).unwrap();
    let r = pullback_curvature_check(&conn, &f, &phi).unwrap();
    assert!(r.passed(), "{r}");
    let pulled = f.apply_matrix(&conn.curvature_g().unwrap()).unwrap();
    assert_eq!(pulled.get(0, 0), &tgt.parse("-i*dx1*dx2").unwrap());
}

#[test]
fn pullback_of_su2_vector_bundle_along_maurer_cartan() {
    let conn = su2_vector().unwrap();
    let g = LieAlgebraData::su2();
    let tgt = tensor_model(&ce_model(&g, "s").unwrap(), &r3rot(&g).unwrap()).unwrap();
    let phi: Vec<_> = (1..=3).map(|a| tgt.gen(&format!("s{a}")).unwrap()).collect();
    let f = chern_weil_pullback(&conn.model, &tgt, &phi).unwrap();
    let r = pullback_curvature_check(&conn, &f, &phi).unwrap();
    assert!(r.passed(), "{r}");
    // a flat Maurer–Cartan form pulls the curvature back to zero
    assert!(f.apply_matrix(&conn.curvature_g().unwrap()).unwrap().is_zero());
}

#[test]
fn non_chain_map_is_rejected() {
    let g = LieAlgebraData::u1();
    let src = tensor_model(&build_weil(&g, Some(6)).unwrap(), &point_model(&g).unwrap()).unwrap();
    let tgt = tensor_model(&ce_model(&g, "s").unwrap(), &r2rot().unwrap()).unwrap();
    let th = src.weil().unwrap().theta[0];
    let mut images = vec![tgt.zero(); src.table().len()];
    images[th] = tgt.gen("s1").unwrap();
    // dθ = z but d s1 = 0, so a nonzero image of z breaks the chain condition
    images[src.weil().unwrap().z[0]] = tgt.parse("dx1*dx2").unwrap();
    let f = AlgebraMorphism::new(&src, &tgt, images).unwrap();
    assert!(matches!(f.check_chain_map(), Err(Error::NotChainMap(_))));
}

#[test]
fn mq_projection_of_sphere_area_form() {
    let g = LieAlgebraData::u1();
    let m = tensor_model(&ce_model(&g, "s").unwrap(), &sphere_model().unwrap()).unwrap();
    let nu = m.gen("nu").unwrap();
    let phi = vec![m.gen("s1").unwrap()];
    let p = mq_project_concrete(&m, &nu, &phi).unwrap();
    assert_eq!(p, m.parse("nu - s1*dz").unwrap());
    assert!(m.is_horizontal(&p));
}
