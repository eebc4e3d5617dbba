use std::time::Instant;

use equichern::charclass::matrix_exp_form;
use equichern::gca::{DerivationSpec, GeneratorTable, GradedElement, Monomial, Rational, RewriteSystem, Scalar};
use equichern::lie::LieAlgebraData;
use equichern::matrix::MatrixForm;
use equichern::model::{degree_basis, GdgaModel};
use equichern::models::{torus_bismut, torus_bismut_data, torus_superconnection};
use equichern::superconn::{
    assemble_bg, ch_exact, ch_report, delta_conjugate, divided_difference_exp, evaluate_time, scaling_report,
    transgression_check, volterra_exact, volterra_numeric, NumericFormMatrix, SuperconnectionModel, TimeParam,
};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn forms(cap: u32) -> GdgaModel {
    let t = GeneratorTable::new([("e1", 1), ("e2", 1), ("e3", 1), ("r", 2)]).unwrap();
    let d = DerivationSpec::zero("d", &t, 1);
    GdgaModel::trivial_action("forms", RewriteSystem::empty(&t), LieAlgebraData::u1(), d).unwrap().with_cap(Some(cap))
}

/// `e^{-tF}` from the dense exponential of left multiplication by `-tF` on
/// `Λ^{≤cap} ⊗ C^n`.
fn dense_oracle(m: &GdgaModel, f: &MatrixForm, t: f64, cap: u32) -> NumericFormMatrix {
    let parity = f.parity_vector().unwrap().to_vec();
    let n = f.size();
    let basis: Vec<Monomial> = (0..=cap).flat_map(|k| degree_basis(m, k, None).unwrap()).collect();
    let b = basis.len();
    let pos = |mono: &Monomial| basis.iter().position(|x| x == mono).unwrap();
    let mut l = DMatrix::<Complex64>::zeros(n * b, n * b);
    for j in 0..n {
        for (bi, mono) in basis.iter().enumerate() {
            let mut x = MatrixForm::graded_zeros(m, parity.clone());
            x.set(j, 0, GradedElement::monomial(m.table(), mono.clone(), Scalar::one()));
            let y = f.mul(m, &x).unwrap();
            for k in 0..n {
                for (nu, c) in y.get(k, 0).terms() {
                    let (re, im) = c.to_c64();
                    l[(k * b + pos(nu), j * b + bi)] += Complex64::new(re, im);
                }
            }
        }
    }
    let e = (l * Complex64::new(-t, 0.0)).exp();
    let one = pos(&Monomial::one(m.table()));
    let mut out = NumericFormMatrix::zeros(n, parity);
    for (bn, nu) in basis.iter().enumerate() {
        let mat = DMatrix::from_fn(n, n, |k, i| e[(k * b + bn, i * b + one)]);
        if mat.iter().any(|z| z.norm() > 0.0) {
            out.terms.insert(nu.clone(), mat);
        }
    }
    out
}

fn random_model(m: &GdgaModel, rng: &mut ChaCha8Rng, p: usize, hermitian: bool) -> MatrixForm {
    let n = 2 * p;
    let parity: Vec<bool> = (0..n).map(|i| i >= p).collect();
    let mut d = MatrixForm::graded_zeros(m, parity.clone());
    for i in 0..p {
        for j in 0..p {
            if hermitian || i == j {
                let v = rng.gen_range(1i64..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
                d.set(i, p + j, m.scalar(Scalar::from_int(v)));
                let w = if hermitian { v } else { rng.gen_range(1i64..=3) };
                d.set(p + j, i, m.scalar(Scalar::from_int(w)));
            }
        }
    }
    let d2 = d.mul(m, &d).unwrap();
    let even = ["e1*e2", "e2*e3", "r", "e1*e2*e3"];
    let odd = ["e1", "e2", "e3", "r*e1"];
    let mut fp = MatrixForm::graded_zeros(m, parity.clone());
    for i in 0..n {
        for j in 0..n {
            let pool = if parity[i] == parity[j] { &even } else { &odd };
            let x = m.parse(pool[rng.gen_range(0..4)]).unwrap();
            fp.set(i, j, x.scale(&Scalar::ratio(rng.gen_range(-4i64..=4), 4)));
        }
    }
    d2.add(&fp).unwrap()
}

#[test]
fn divided_differences_match_simplex_volumes() {
    let z = Complex64::new(0.0, 0.0);
    // exp[0, …, 0] with k+1 points is 1/k!
    assert!((divided_difference_exp(&[z, z, z, z]) - Complex64::new(1.0 / 6.0, 0.0)).norm() < 1e-14);
    let (a, b) = (Complex64::new(-1.0, 0.0), Complex64::new(-3.0, 0.0));
    let expected = (a.exp() - b.exp()) / (a - b);
    assert!((divided_difference_exp(&[a, b]) - expected).norm() < 1e-14);
    let close = divided_difference_exp(&[a, a + Complex64::new(1e-9, 0.0)]);
    assert!((close - a.exp()).norm() < 1e-8);
}

#[test]
fn flat_bundle_has_rank_character() {
    let m = forms(4);
    let b = SuperconnectionModel::flat(m.clone(), 3, 1);
    assert_eq!(ch_exact(&b, &TimeParam::int(1), 4).unwrap(), m.parse("2").unwrap());
    assert!(b.curvature().unwrap().is_zero());
}

#[test]
fn constant_odd_part_squares() {
    let m = forms(4);
    let mut d = MatrixForm::super_zeros(&m, 1, 1);
    d.set(0, 1, m.parse("2").unwrap());
    d.set(1, 0, m.parse("3").unwrap());
    let b = SuperconnectionModel::new(m.clone(), d.clone(), false).unwrap();
    assert_eq!(b.curvature().unwrap(), d.mul(&m, &d).unwrap());
    assert!(SuperconnectionModel::new(m.clone(), MatrixForm::identity(&m, 2).with_parity(Some(vec![false, true])).unwrap(), true).is_err());
}

#[test]
fn scaling_of_components() {
    let b = torus_superconnection().unwrap();
    let m = &b.model;
    assert_eq!(b.scale(&TimeParam::int(1)).unwrap().matrix, b.matrix);
    let bt = b.scale(&TimeParam::int(4)).unwrap();
    assert_eq!(bt.component(0), b.component(0).scale(&Scalar::from_int(2)));
    assert_eq!(bt.component(1), b.component(1));
    assert_eq!(bt.component(2), b.component(2).scale(&Scalar::ratio(1, 2)));
    let formal = b.scale(&TimeParam::Formal).unwrap();
    assert_eq!(formal.component(2), b.component(2).left_mul(m, &m.gen("rti").unwrap()));
    assert!(b.scale(&TimeParam::int(0)).is_err());
    assert!(b.scale(&TimeParam::int(2)).is_err());
    let r = scaling_report(&b).unwrap();
    assert!(r.passed(), "{r}");
}

#[test]
fn scaled_curvature_is_conjugated_curvature() {
    for b in [torus_superconnection().unwrap(), torus_bismut().unwrap()] {
        let m = &b.model;
        let lhs = b.scale(&TimeParam::Formal).unwrap().curvature().unwrap();
        let rhs = delta_conjugate(m, &b.curvature().unwrap(), &TimeParam::Formal).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn exact_volterra_is_the_exponential() {
    let b = torus_superconnection().unwrap();
    let m = &b.model;
    let f = b.curvature().unwrap();
    let v = volterra_exact(m, &f, &m.one(), 4).unwrap();
    assert_eq!(v, matrix_exp_form(m, &f.neg(), 4).unwrap());
    let t = m.parse("3").unwrap();
    let v3 = volterra_exact(m, &f, &t, 4).unwrap();
    assert_eq!(v3, matrix_exp_form(m, &f.scale(&Scalar::from_int(-3)), 4).unwrap());
    // semigroup law, independent of how the series is summed
    let cube = v.mul(m, &v).unwrap().mul(m, &v).unwrap().truncate(4).try_map(|x| m.normalize(x)).unwrap();
    assert_eq!(v3, cube);
}

#[test]
fn numeric_volterra_without_forms_is_heat_operator() {
    let m = forms(3);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let f = random_model(&m, &mut rng, 2, false);
    let d2 = f.map(|x| x.part(0));
    let v = volterra_numeric(&m, &d2, 0.5, 3).unwrap();
    let dense = equichern::charclass::matrix_exp_numeric(&(equichern::charclass::to_numeric(&d2).unwrap() * Complex64::new(-0.5, 0.0)));
    assert!((v.get(&Monomial::one(m.table())) - dense).norm() < 1e-12);
    assert_eq!(v.terms.len(), 1);
}

#[test]
fn numeric_volterra_matches_exact_when_nilpotent() {
    let b = torus_superconnection().unwrap();
    let m = &b.model;
    // the numeric path needs a constant degree-0 part, so drop c2 s1 E_01
    let f = b.curvature().unwrap().map(|x| x.sub(&x.part(0)));
    let exact = NumericFormMatrix::from_exact(&volterra_exact(m, &f, &m.parse("2").unwrap(), 4).unwrap());
    let num = volterra_numeric(m, &f, 2.0, 4).unwrap();
    assert!(num.max_abs_diff(&exact) < 1e-12);
}

#[test]
fn numeric_volterra_matches_dense_oracle() {
    let m = forms(3);
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for (p, hermitian) in [(1, false), (2, false), (2, true), (4, false), (4, true)] {
        let f = random_model(&m, &mut rng, p, hermitian);
        let start = Instant::now();
        let v = volterra_numeric(&m, &f, 1.0, 3).unwrap();
        let elapsed = start.elapsed();
        let oracle = dense_oracle(&m, &f, 1.0, 3);
        let err = v.max_abs_diff(&oracle);
        assert!(err < 1e-10, "({p}|{p}) hermitian={hermitian}: error {err}");
        assert!(elapsed.as_secs_f64() < 5.0);
    }
}

#[test]
fn numeric_volterra_rejects_non_hermitian_coupling() {
    let m = forms(2);
    let mut f = MatrixForm::super_zeros(&m, 2, 0);
    f.set(0, 1, m.parse("1").unwrap());
    assert!(volterra_numeric(&m, &f, 1.0, 2).is_err());
}

#[test]
fn chern_character_is_closed() {
    for b in [torus_superconnection().unwrap(), torus_bismut().unwrap()] {
        for t in [TimeParam::int(1), TimeParam::int(4), TimeParam::Formal] {
            let (ch, r) = ch_report(&b, &t, 6).unwrap();
            assert!(r.passed(), "{} t={t:?}: {r}", b.model.name());
            assert!(!ch.is_zero());
        }
    }
}

#[test]
fn equivariant_ch_is_basic_and_non_trivial() {
    let b = torus_bismut().unwrap();
    let (ch, r) = ch_report(&b, &TimeParam::Formal, 6).unwrap();
    assert_eq!(r.count_passed(), 3, "{r}");
    let w = b.model.weil().unwrap();
    let z = w.z[0];
    assert!(ch.involves(|i| i == z));
}

#[test]
fn chern_character_depends_on_t_pointwise() {
    let b = torus_superconnection().unwrap();
    let m = &b.model;
    let c1 = ch_exact(&b, &TimeParam::int(1), 4).unwrap();
    let c4 = ch_exact(&b, &TimeParam::int(4), 4).unwrap();
    assert_ne!(c1, c4);
    let formal = ch_exact(&b, &TimeParam::Formal, 4).unwrap();
    let four = Rational::from_integer(4.into());
    assert_eq!(evaluate_time(m, &formal, &four).unwrap(), c4);
}

#[test]
fn transgression_formula_holds() {
    for b in [torus_superconnection().unwrap(), torus_bismut().unwrap()] {
        let one = Rational::from_integer(1.into());
        let four = Rational::from_integer(4.into());
        let r = transgression_check(&b, &one, &four, 6, None).unwrap();
        assert!(r.passed(), "{r}");
    }
}

#[test]
fn bismut_components_match_hand_expansion() {
    let data = torus_bismut_data().unwrap();
    let m = &data.model;
    let b = assemble_bg(&data).unwrap();
    let th = m.parse("th1").unwrap();
    let chi = equichern::model::chi(m, 0).unwrap();
    let grade = |x: &MatrixForm| x.clone().with_parity(Some(b.parity())).unwrap();
    // ι k = 1, so ½ k_G = ½ (k - θ)
    let id = grade(&MatrixForm::identity(m, 4));
    let k_g = grade(&data.k).sub(&id.left_mul(m, &th)).unwrap();
    let expected_1 = grade(&data.a)
        .sub(&grade(&data.tau[0]).left_mul(m, &th))
        .unwrap()
        .add(&k_g.scale(&Scalar::ratio(1, 2)))
        .unwrap();
    assert_eq!(b.component(1), expected_1);
    // ι c(T) = [[0, e2], [s2 e2, 0]] in the coupled corner
    let ict = grade(&data.ct.apply_derivation(m, m.iota(0)));
    let ct_g = grade(&data.ct).sub(&ict.left_mul(m, &th)).unwrap().sub(&grade(&data.pxi[0]).left_mul(m, &chi)).unwrap();
    assert_eq!(b.component(2), ct_g.scale(&Scalar::ratio(-1, 4)).map(|x| x.part(2)));
    assert_eq!(b.component(0), grade(&data.dirac));
    assert_eq!(ict.get(0, 3), &m.parse("e2").unwrap());
}

#[test]
fn bismut_without_weil_is_ordinary() {
    let base = torus_superconnection().unwrap();
    let m = base.model.clone();
    let p = base.parity();
    let g = |items: &[(usize, usize, &str)]| {
        let mut x = MatrixForm::graded_zeros(&m, p.clone());
        for &(i, j, s) in items {
            x.set(i, j, m.parse(s).unwrap());
        }
        x
    };
    let data = equichern::superconn::BismutData {
        model: m.clone(),
        parity: p.clone(),
        dirac: g(&[(0, 3, "c2")]),
        a: g(&[(0, 0, "c1*e2")]),
        tau: vec![MatrixForm::graded_zeros(&m, p.clone())],
        k: g(&[(0, 0, "e1"), (3, 3, "e1")]),
        ct: g(&[(0, 3, "e1*e2")]),
        pxi: vec![MatrixForm::graded_zeros(&m, p.clone())],
    };
    let b = assemble_bg(&data).unwrap();
    let expected = g(&[(0, 3, "c2 - 1/4*e1*e2"), (0, 0, "c1*e2 + 1/2*e1"), (3, 3, "1/2*e1")]);
    assert_eq!(b.matrix, expected);
}

#[test]
fn bismut_flat_torus_curvature() {
    let mut data = torus_bismut_data().unwrap();
    let m = data.model.clone();
    let p = data.parity.clone();
    let grade = |x: MatrixForm| x.with_parity(Some(p.clone())).unwrap();
    data.k = MatrixForm::zeros(&m, 4);
    data.ct = MatrixForm::zeros(&m, 4);
    data.pxi = vec![MatrixForm::zeros(&m, 4)];
    let mut dirac = MatrixForm::zeros(&m, 4);
    for (i, j) in [(0, 2), (2, 0), (1, 3), (3, 1)] {
        dirac.set(i, j, m.one());
    }
    data.dirac = dirac.clone();
    data.a = MatrixForm::identity(&m, 4).left_mul(&m, &m.parse("c2*e1 + s2*e2").unwrap());
    data.tau = vec![MatrixForm::identity(&m, 4).left_mul(&m, &m.parse("c2").unwrap())];
    let b = assemble_bg(&data).unwrap();
    let f = b.curvature().unwrap();
    let conn = SuperconnectionModel::new(m.clone(), b.matrix.sub(&grade(dirac.clone())).unwrap(), true).unwrap();
    // B_G = D + ∇̃_G, and [∇̃_G, D] = 0 for scalar A, so F = D² + ∇̃_G²
    let d2 = grade(dirac.clone()).mul(&m, &grade(dirac)).unwrap();
    assert_eq!(d2, grade(MatrixForm::identity(&m, 4)));
    assert_eq!(f, d2.add(&conn.curvature().unwrap()).unwrap());
}

#[test]
fn bismut_rejects_non_invariant_dirac() {
    let mut data = torus_bismut_data().unwrap();
    let m = data.model.clone();
    let mut d = MatrixForm::zeros(&m, 4);
    d.set(0, 3, m.parse("c1").unwrap());
    data.dirac = d;
    assert!(assemble_bg(&data).is_err());
}
