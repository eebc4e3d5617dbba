use equichern::charclass::{
    a_hat, alpha_map, bernoulli, chern_character, exp_element, log_ahat_coefficients, matrix_exp_form,
    matrix_exp_numeric, relative_chern, relative_chern_both, twisting_curvature, CliffordRep, CliffordSign,
    RelativeConvention,
};
use equichern::gca::{DerivationSpec, GeneratorTable, Rational, RewriteSystem, Scalar};
use equichern::lie::LieAlgebraData;
use equichern::matrix::MatrixForm;
use equichern::model::GdgaModel;
use equichern::models::{su2_vector, trivial_action_bundle, u1_plane};
use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn forms(cap: u32) -> GdgaModel {
    let t = GeneratorTable::new([("e1", 1), ("e2", 1), ("e3", 1), ("r", 2), ("s", 2), ("f", 2)]).unwrap();
    let d = DerivationSpec::zero("d", &t, 1);
    GdgaModel::trivial_action("forms", RewriteSystem::empty(&t), LieAlgebraData::u1(), d).unwrap().with_cap(Some(cap))
}

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn block(m: &GdgaModel, x: &str) -> MatrixForm {
    let r = m.parse(x).unwrap();
    MatrixForm::from_fn(m, 2, |i, j| match (i, j) {
        (0, 1) => r.clone(),
        (1, 0) => r.neg(),
        _ => m.zero(),
    })
}

/// Power series in `u` (coefficients of u^0..u^n) for `sin(u)/u`.
fn sinc_series(n: usize) -> Vec<Rational> {
    let mut out = vec![q(0, 1); n + 1];
    let mut fact = q(1, 1);
    for k in 0..=n {
        if k > 0 {
            fact = fact * q(((2 * k) * (2 * k + 1)) as i64, 1);
        }
        if 2 * k <= n {
            out[2 * k] = if k % 2 == 0 { q(1, 1) } else { q(-1, 1) } / fact.clone();
        }
    }
    out
}

fn reciprocal(a: &[Rational]) -> Vec<Rational> {
    let mut b = vec![q(0, 1); a.len()];
    b[0] = q(1, 1) / a[0].clone();
    for k in 1..a.len() {
        let mut s = q(0, 1);
        for j in 1..=k {
            s += a[j].clone() * b[k - j].clone();
        }
        b[k] = -s / a[0].clone();
    }
    b
}

#[test]
fn clifford_reps_satisfy_relations() {
    for n in [2, 4] {
        for sign in [CliffordSign::Negative, CliffordSign::Positive] {
            let rep = CliffordRep::new(n, sign).unwrap();
            let r = rep.verify();
            assert!(r.passed(), "n={n} {sign:?}: {r}");
            assert_eq!(rep.dim(), 1 << (n / 2));
        }
    }
    assert!(CliffordRep::new(3, CliffordSign::Negative).is_err());
}

#[test]
fn chirality_in_rank_two() {
    let m = forms(4);
    let rep = CliffordRep::new(2, CliffordSign::Negative).unwrap();
    assert_eq!(rep.chirality(&m, 1).unwrap().to_string(), "[1, 0; 0, -1]");
    assert_eq!(rep.parity(2), vec![false, false, true, true]);
}

#[test]
fn supertrace_basics() {
    let m = forms(4);
    let id = MatrixForm::identity(&m, 5).with_parity(Some(vec![false, false, false, true, true])).unwrap();
    assert_eq!(id.supertrace().unwrap(), m.parse("1").unwrap());
    let off = MatrixForm::from_fn(&m, 2, |i, j| if i != j { m.parse("e1").unwrap() } else { m.zero() });
    assert!(off.supertrace().is_err());
    let off = off.with_parity(Some(vec![false, true])).unwrap();
    assert!(off.supertrace().unwrap().is_zero());
}

fn random_homogeneous(m: &GdgaModel, rng: &mut ChaCha8Rng, odd: bool) -> MatrixForm {
    let even_pool = ["r", "s", "e1*e2", "e2*e3", "1", "f"];
    let odd_pool = ["e1", "e2", "e3", "r*e1", "s*e3"];
    let parity = vec![false, false, true];
    let mut mat = MatrixForm::zeros(m, 3);
    for i in 0..3 {
        for j in 0..3 {
            let block_odd = parity[i] != parity[j];
            let pool: &[&str] = if block_odd != odd { &odd_pool } else { &even_pool };
            let c = rng.gen_range(-3i64..=3);
            let x = m.parse(pool[rng.gen_range(0..pool.len())]).unwrap();
            mat.set(i, j, x.scale(&Scalar::from_int(c)));
        }
    }
    mat.with_parity(Some(parity)).unwrap()
}

#[test]
fn supertrace_is_graded_cyclic() {
    let m = forms(6);
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let (pa, pb) = (rng.gen_bool(0.5), rng.gen_bool(0.5));
        let a = random_homogeneous(&m, &mut rng, pa);
        let b = random_homogeneous(&m, &mut rng, pb);
        assert_eq!(a.total_parity(), Some(pa));
        let ab = a.mul(&m, &b).unwrap().supertrace().unwrap();
        let ba = b.mul(&m, &a).unwrap().supertrace().unwrap();
        let expected = if pa && pb { ba.neg() } else { ba };
        assert_eq!(ab, expected);
    }
}

#[test]
fn exponential_of_nilpotent_forms() {
    let m = forms(4);
    let zero = MatrixForm::zeros(&m, 2);
    assert_eq!(matrix_exp_form(&m, &zero, 4).unwrap(), MatrixForm::identity(&m, 2));
    let n = MatrixForm::from_fn(&m, 2, |i, j| m.parse(["r", "s", "f", "r + s"][2 * i + j]).unwrap());
    let n2 = n.mul(&m, &n).unwrap();
    let expected = MatrixForm::identity(&m, 2).add(&n).unwrap().add(&n2.scale(&Scalar::ratio(1, 2))).unwrap();
    assert_eq!(matrix_exp_form(&m, &n, 4).unwrap(), expected);
    let m8 = forms(8);
    let a = MatrixForm::diagonal(&m8, &[m8.parse("r + e1*e2").unwrap(), m8.parse("s").unwrap()]);
    let ea = matrix_exp_form(&m8, &a, 8).unwrap();
    let eb = matrix_exp_form(&m8, &a.neg(), 8).unwrap();
    assert_eq!(ea.mul(&m8, &eb).unwrap(), MatrixForm::identity(&m8, 2));
    let scalar = MatrixForm::identity(&m, 2);
    assert!(matrix_exp_form(&m, &scalar, 4).is_err());
}

#[test]
fn numeric_exponential_matches_taylor_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let a = DMatrix::from_fn(4, 4, |_, _| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let mut term = DMatrix::<Complex64>::identity(4, 4);
    let mut sum = term.clone();
    for k in 1..60 {
        term = &term * &a / Complex64::new(k as f64, 0.0);
        sum += &term;
    }
    let e = matrix_exp_numeric(&a);
    assert!((e - sum).norm() < 1e-12);
}

#[test]
fn bernoulli_and_log_coefficients() {
    let b = bernoulli(8);
    assert_eq!(b[1], q(-1, 2));
    assert_eq!(b[2], q(1, 6));
    assert_eq!(b[4], q(-1, 30));
    assert_eq!(b[8], q(-1, 30));
    assert_eq!(log_ahat_coefficients(3), vec![q(-1, 24), q(1, 2880), q(-1, 181440)]);
}

#[test]
fn a_hat_of_zero_is_one() {
    let m = forms(8);
    assert_eq!(a_hat(&m, &MatrixForm::zeros(&m, 4), 8).unwrap().value, m.one());
}

#[test]
fn a_hat_single_block_matches_series_oracle() {
    let cap = 16;
    let m = forms(cap);
    let v = a_hat(&m, &block(&m, "r"), cap).unwrap().value;
    // eigenvalues ±i r give Â = (r/2)/sin(r/2)
    let inv = reciprocal(&sinc_series(8));
    let mut expected = m.zero();
    for k in 0..=4usize {
        let c = inv[2 * k].clone() / Rational::from_integer(num_bigint::BigInt::from(4u32).pow(k as u32));
        expected.add_scaled(&m.parse(&format!("r^{}", 2 * k)).unwrap(), &Scalar::from_rational(c));
    }
    assert_eq!(v, expected);
    assert!(v.terms().all(|(mono, _)| mono.degree() % 4 == 0));
    assert_eq!(v.coefficient(&m.parse("r^2").unwrap().terms().next().unwrap().0.clone()), Scalar::ratio(1, 24));
}

#[test]
fn a_hat_is_multiplicative() {
    let cap = 12;
    let m = forms(cap);
    let (b1, b2) = (block(&m, "r"), block(&m, "s + e1*e2"));
    let sum = MatrixForm::block_diag(&m, &b1, &b2).unwrap();
    let lhs = a_hat(&m, &sum, cap).unwrap().value;
    let rhs = m.mul(&a_hat(&m, &b1, cap).unwrap().value, &a_hat(&m, &b2, cap).unwrap().value);
    assert_eq!(lhs, rhs);
}

#[test]
fn chern_character_examples() {
    let cap = 6;
    let m = forms(cap);
    assert_eq!(chern_character(&m, &MatrixForm::zeros(&m, 3), cap).unwrap().value, m.parse("3").unwrap());
    let rho = ["r", "s", "e1*e2"];
    let f = MatrixForm::diagonal(&m, &rho.map(|x| m.parse(x).unwrap()));
    let mut expected = m.zero();
    for x in rho {
        let x = m.parse(x).unwrap();
        // e^{-x} = 1 - x + x²/2 - x³/6 through degree 6
        let x2 = m.mul(&x, &x);
        let x3 = m.mul(&x2, &x);
        expected = expected.add(&m.one()).sub(&x).add(&x2.scale(&Scalar::ratio(1, 2))).sub(&x3.scale(&Scalar::ratio(1, 6)));
    }
    assert_eq!(chern_character(&m, &f, cap).unwrap().value, expected);
    let g = MatrixForm::from_fn(&m, 2, |i, j| m.parse(["r", "e1*e3", "s", "f"][2 * i + j]).unwrap());
    let both = MatrixForm::block_diag(&m, &f, &g).unwrap();
    let add = chern_character(&m, &f, cap).unwrap().value.add(&chern_character(&m, &g, cap).unwrap().value);
    assert_eq!(chern_character(&m, &both, cap).unwrap().value, add);
    assert_eq!(exp_element(&m, &m.parse("r").unwrap(), 4).unwrap(), m.parse("1 + r + 1/2*r^2").unwrap());
}

#[test]
fn chern_character_is_closed_for_a_connection() {
    for conn in [u1_plane().unwrap(), su2_vector().unwrap(), trivial_action_bundle().unwrap()] {
        let m = &conn.model;
        let omega = conn.curvature_g().unwrap();
        let ch = chern_character(m, &omega, 8).unwrap().value;
        assert!(m.apply_d(&ch).is_zero(), "{}", m.name());
    }
    let conn = u1_plane().unwrap();
    let ch = chern_character(&conn.model, &conn.curvature_g().unwrap(), 8).unwrap().value;
    assert!(!ch.part(2).is_zero());
}

#[test]
fn alpha_map_examples() {
    let m = forms(4);
    let rep = CliffordRep::new(2, CliffordSign::Negative).unwrap();
    assert!(alpha_map(&m, &MatrixForm::zeros(&m, 2), &rep, 1).unwrap().is_zero());
    let c12 = rep.c(&m, 0, 1).unwrap().mul(&m, &rep.c(&m, 1, 1).unwrap()).unwrap();
    let r = m.parse("r").unwrap();
    let expected = c12.left_mul(&m, &r).scale(&Scalar::ratio(1, 2));
    assert_eq!(alpha_map(&m, &block(&m, "r"), &rep, 1).unwrap(), expected);
    assert!(alpha_map(&m, &MatrixForm::zeros(&m, 3), &rep, 1).is_err());
}

fn so_n(m: &GdgaModel, n: usize, seed: i64) -> MatrixForm {
    MatrixForm::from_fn(m, n, |i, j| {
        let (lo, hi) = (i.min(j), i.max(j));
        let v = ((lo * 7 + hi * 3) as i64 * seed) % 5 - 2;
        let v = if i < j { v } else if i > j { -v } else { 0 };
        m.scalar(Scalar::from_int(v))
    })
}

fn bracket(m: &GdgaModel, a: &MatrixForm, b: &MatrixForm) -> MatrixForm {
    a.mul(m, b).unwrap().sub(&b.mul(m, a).unwrap()).unwrap()
}

#[test]
fn alpha_map_is_a_homomorphism() {
    let m = forms(2);
    let rep = CliffordRep::new(2, CliffordSign::Negative).unwrap();
    let (a, b) = (so_n(&m, 2, 1), so_n(&m, 2, 3));
    let (x, y) = (alpha_map(&m, &a, &rep, 1).unwrap(), alpha_map(&m, &b, &rep, 1).unwrap());
    assert_eq!(bracket(&m, &x, &y), alpha_map(&m, &bracket(&m, &a, &b), &rep, 1).unwrap());
}

#[test]
fn alpha_map_bracket_sign_follows_clifford_sign() {
    // [α(A), c(v)] = ∓c(Av) for c(v)² = ∓|v|², so the negative convention
    // reverses brackets in rank 4
    let m = forms(2);
    for (sign, flip) in [(CliffordSign::Positive, false), (CliffordSign::Negative, true)] {
        let rep = CliffordRep::new(4, sign).unwrap();
        let (a, b) = (so_n(&m, 4, 1), so_n(&m, 4, 3));
        let (x, y) = (alpha_map(&m, &a, &rep, 1).unwrap(), alpha_map(&m, &b, &rep, 1).unwrap());
        let rhs = alpha_map(&m, &bracket(&m, &a, &b), &rep, 1).unwrap();
        assert!(!rhs.is_zero());
        assert_eq!(bracket(&m, &x, &y), if flip { rhs.neg() } else { rhs }, "{sign:?}");
        for k in 0..4 {
            let ck = rep.c(&m, k, 1).unwrap();
            let mut av = MatrixForm::zeros(&m, 4);
            for i in 0..4 {
                av = av.add(&rep.c(&m, i, 1).unwrap().left_mul(&m, a.get(i, k))).unwrap();
            }
            assert_eq!(bracket(&m, &x, &ck), if flip { av.neg() } else { av });
        }
    }
}

#[test]
fn twisting_curvature_examples() {
    let m = forms(4);
    let rep = CliffordRep::new(2, CliffordSign::Negative).unwrap();
    let omega = block(&m, "r");
    let spin = alpha_map(&m, &omega, &rep, 1).unwrap();
    let (f, check) = twisting_curvature(&m, &spin, &omega, &rep).unwrap();
    assert!(f.is_zero() && check.passed);
    let line = spin.add(&MatrixForm::identity(&m, 2).left_mul(&m, &m.parse("f").unwrap())).unwrap();
    let (f, check) = twisting_curvature(&m, &line, &omega, &rep).unwrap();
    assert_eq!(f, MatrixForm::diagonal(&m, &[m.parse("f").unwrap(), m.parse("f").unwrap()]));
    assert!(check.passed);
    let bad = rep.c(&m, 0, 1).unwrap().left_mul(&m, &m.parse("f").unwrap());
    let (_, check) = twisting_curvature(&m, &bad, &MatrixForm::zeros(&m, 2), &rep).unwrap();
    assert!(!check.passed);
}

#[test]
fn twisting_curvature_in_rank_four_with_twist() {
    let m = forms(4);
    let rep = CliffordRep::new(4, CliffordSign::Negative).unwrap();
    let omega = MatrixForm::block_diag(&m, &block(&m, "r"), &block(&m, "s")).unwrap();
    let f = m.parse("f").unwrap();
    let twist = MatrixForm::from_fn(&m, 2, |i, j| if i == j { f.clone() } else { m.parse("e1*e2").unwrap() });
    let f_e = alpha_map(&m, &omega, &rep, 2).unwrap().add(&MatrixForm::kron(&m, &MatrixForm::identity(&m, 4), &twist)).unwrap();
    let (out, check) = twisting_curvature(&m, &f_e, &omega, &rep).unwrap();
    assert!(check.passed);
    assert_eq!(out, MatrixForm::kron(&m, &MatrixForm::identity(&m, 4), &twist));
}

#[test]
fn relative_chern_conventions() {
    let cap = 6;
    let m = forms(cap);
    let rep = CliffordRep::new(2, CliffordSign::Negative).unwrap();
    let f = MatrixForm::identity(&m, 2).left_mul(&m, &m.parse("f").unwrap());
    let paper = relative_chern(&m, &f, &rep, RelativeConvention::Paper, cap).unwrap().value;
    // ½(e^{-f} - e^{f}) = -sinh f
    assert_eq!(paper, m.parse("-f - 1/6*f^3").unwrap());
    let zero = MatrixForm::zeros(&m, 2);
    let (p0, a0) = relative_chern_both(&m, &zero, &rep, cap).unwrap();
    assert!(p0.value.is_zero());
    assert_eq!(a0.value, m.one());
    let alt = relative_chern(&m, &f, &rep, RelativeConvention::Alternate, cap).unwrap().value;
    assert_eq!(alt, m.parse("1 - f + 1/2*f^2 - 1/6*f^3").unwrap());
    let rep4 = CliffordRep::new(4, CliffordSign::Negative).unwrap();
    let (p4, a4) = relative_chern_both(&m, &MatrixForm::zeros(&m, 8), &rep4, cap).unwrap();
    assert!(p4.value.is_zero());
    assert_eq!(a4.value, m.parse("2").unwrap());
}
