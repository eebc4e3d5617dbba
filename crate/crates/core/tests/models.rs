use equichern::gca::{GradedElement, Monomial, Scalar};
use equichern::lie::LieAlgebraData;
use equichern::model::{build_weil, tensor_model, verify_gdga, GdgaModel};
use equichern::models::{
    ce_model, point_model, r2rot, r3rot, sphere_area_form, sphere_model, time_parameter, torus2,
    warped_torus_family,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn assert_gdga(m: &GdgaModel) {
    let r = verify_gdga(m);
    assert!(r.passed(), "{}:\n{r}", m.name());
}

#[test]
fn ce_differentials() {
    let su2 = ce_model(&LieAlgebraData::su2(), "s").unwrap();
    assert_eq!(su2.apply_d(&su2.gen("s1").unwrap()), su2.parse("-s2*s3").unwrap());
    let u1 = ce_model(&LieAlgebraData::u1(), "s").unwrap();
    assert!(u1.apply_d(&u1.gen("s1").unwrap()).is_zero());
    for m in [su2, u1] {
        assert_gdga(&m);
    }
}

#[test]
fn manifold_models_satisfy_cartan_calculus() {
    let su2 = LieAlgebraData::su2();
    for m in [
        sphere_model().unwrap(),
        torus2(true).unwrap(),
        torus2(false).unwrap(),
        r2rot().unwrap(),
        r3rot(&su2).unwrap(),
        r3rot(&LieAlgebraData::so3()).unwrap(),
        warped_torus_family().unwrap(),
        time_parameter(&su2).unwrap(),
        point_model(&su2).unwrap(),
    ] {
        assert_gdga(&m);
    }
}

#[test]
fn tensor_models_satisfy_cartan_calculus() {
    let u1 = LieAlgebraData::u1();
    let su2 = LieAlgebraData::su2();
    let wu = build_weil(&u1, Some(8)).unwrap();
    let ws = build_weil(&su2, Some(6)).unwrap();
    let models = [
        tensor_model(&wu, &sphere_model().unwrap()).unwrap(),
        tensor_model(&wu, &r2rot().unwrap()).unwrap(),
        tensor_model(&wu, &torus2(true).unwrap()).unwrap(),
        tensor_model(&ws, &r3rot(&su2).unwrap()).unwrap(),
        tensor_model(&ce_model(&su2, "s").unwrap(), &r3rot(&su2).unwrap()).unwrap(),
        tensor_model(&ws, &point_model(&su2).unwrap()).unwrap(),
    ];
    for m in &models {
        assert_gdga(m);
    }
}

#[test]
fn tensor_mixes_contractions() {
    let wu = build_weil(&LieAlgebraData::u1(), None).unwrap();
    let m = tensor_model(&wu, &sphere_model().unwrap()).unwrap();
    assert_eq!(m.apply_iota(0, &m.gen("dx").unwrap()), m.parse("-y").unwrap());
    assert_eq!(m.apply_iota(0, &m.gen("th1").unwrap()), m.one());
    assert!(tensor_model(&wu, &r3rot(&LieAlgebraData::su2()).unwrap()).is_err());
    let p = tensor_model(&wu, &point_model(&LieAlgebraData::u1()).unwrap()).unwrap();
    assert_eq!(p.table().len(), wu.table().len());
}

#[test]
fn sphere_area_form_and_rotation() {
    let m = sphere_model().unwrap();
    let nu = sphere_area_form(&m).unwrap();
    assert_eq!(nu, m.gen("nu").unwrap());
    let i_nu = m.apply_iota(0, &nu);
    assert_eq!(i_nu, m.gen("dz").unwrap());
    assert!(m.apply_d(&i_nu).is_zero());
    assert!(m.apply_lie(0, &nu).is_zero());
    assert!(m.apply_d(&nu).is_zero());
    // Tangency: d(x² + y² + z²) = 0.
    assert!(m.parse("x*dx + y*dy + z*dz").unwrap().is_zero());
}

fn random_monomial(m: &GdgaModel, rng: &mut ChaCha8Rng, max_len: usize) -> GradedElement {
    let t = m.table();
    let mut e = m.one();
    for _ in 0..rng.gen_range(0..=max_len) {
        let i = rng.gen_range(0..t.len());
        e = e.mul(&GradedElement::generator(t, i));
    }
    e
}

/// Normal forms do not depend on when reductions happen.
#[test]
fn rewrite_systems_confluent_on_samples() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for m in [sphere_model().unwrap(), torus2(true).unwrap(), warped_torus_family().unwrap()] {
        for _ in 0..200 {
            let a = random_monomial(&m, &mut rng, 4);
            let b = random_monomial(&m, &mut rng, 4);
            let direct = m.normalize(&a.mul(&b)).unwrap();
            let staged = m.normalize(&m.normalize(&a).unwrap().mul(&m.normalize(&b).unwrap())).unwrap();
            assert_eq!(direct, staged, "{}: {a} * {b}", m.name());
        }
    }
}

#[test]
fn time_parameter_inverse_pair() {
    let m = time_parameter(&LieAlgebraData::u1()).unwrap();
    assert_eq!(m.parse("rt^3*rti^2").unwrap(), m.gen("rt").unwrap());
    let normal = Monomial::from_exponents(m.table(), vec![2, 0]).unwrap();
    assert_eq!(m.parse("rt^2").unwrap().coefficient(&normal), Scalar::one());
}
