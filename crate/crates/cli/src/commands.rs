//! One function per subcommand, each producing a [`Report`].

use equichern::charclass::{
    a_hat, chern_character, relative_chern_both, CliffordRep, CliffordSign, RelativeConvention,
};
use equichern::connection::{pullback_curvature_check, ConnectionDataG, PrincipalConnectionData};
use equichern::gca::Rational;
use equichern::harness::{
    dh_localization, index_check, sphere_index_input, sphere_index_oracle, torus_index_input, Fiber,
    IndexInput, IntegrationFunctional,
};
use equichern::lie::LieAlgebraData;
use equichern::matrix::MatrixForm;
use equichern::model::{basic_subspace, tensor_model, verify_gdga, GdgaModel};
use equichern::models::{
    builtin_connections, builtin_model, builtin_superconnections, ce_model, principal_su2, principal_u1, r2_trivial,
    r3rot, BUILTIN_NAMES,
};
use equichern::morphism::chern_weil_pullback;
use equichern::report::{Check, Report};
use equichern::superconn::{
    ch_report, scaling_report, transgression_check, volterra_exact, volterra_numeric, NumericFormMatrix,
    SuperconnectionModel, TimeParam,
};

use crate::error::CliError;
use crate::modelfile::LoadedModel;

pub const CONNECTION_BUILTINS: &[&str] =
    &["u1-weight", "u1-plane", "su2-vector", "trivial-action", "principal-u1", "principal-su2"];
pub const CHARCLASS_BUILTINS: &[&str] = &["u1-weight", "u1-plane", "su2-vector", "trivial-action"];
pub const SUPERCONNECTION_BUILTINS: &[&str] = &["torus-22", "torus-bismut-u1"];
pub const INDEX_BUILTINS: &[&str] = &["s2", "s2rot", "torus2"];
pub const DH_BUILTINS: &[&str] = &["s2rot"];

/// Built-in targets accepted by each command.
pub fn builtins_for(command: &str) -> &'static [&'static str] {
    match command {
        "axioms" | "basic" => BUILTIN_NAMES,
        "curvature" => CONNECTION_BUILTINS,
        "charclass" => CHARCLASS_BUILTINS,
        "superconn" => SUPERCONNECTION_BUILTINS,
        "index" => INDEX_BUILTINS,
        "dh" => DH_BUILTINS,
        _ => &[],
    }
}

pub enum Target {
    Builtin(String),
    File(Box<LoadedModel>),
}

impl Target {
    pub fn label(&self) -> String {
        match self {
            Target::Builtin(n) => n.clone(),
            Target::File(f) => format!("file:{}", f.model.name()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Options {
    pub cap: Option<u32>,
    pub t: Option<Rational>,
    pub sign: CliffordSign,
    pub convention: RelativeConvention,
    pub tol: f64,
    pub degree: i64,
    pub max_length: Option<u32>,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            cap: None,
            t: None,
            sign: CliffordSign::Negative,
            convention: RelativeConvention::Paper,
            tol: 1e-10,
            degree: 1,
            max_length: None,
        }
    }
}

fn core(context: &str) -> impl FnOnce(equichern::Error) -> CliError + '_ {
    move |source| CliError::Model { context: context.to_string(), source }
}

fn unknown(command: &str, name: &str) -> CliError {
    CliError::Input(format!("`{command}` has no built-in `{name}` (choose from {})", builtins_for(command).join(", ")))
}

fn model_of(target: &Target, opts: &Options) -> Result<GdgaModel, CliError> {
    match target {
        Target::Builtin(name) => {
            if !BUILTIN_NAMES.contains(&name.as_str()) {
                return Err(unknown("axioms", name));
            }
            builtin_model(name, opts.cap).map_err(core(name))
        }
        Target::File(f) => Ok(match opts.cap {
            Some(c) => f.model.clone().with_cap(Some(c)),
            None => f.model.clone(),
        }),
    }
}

pub fn axioms(target: &Target, opts: &Options) -> Result<Report, CliError> {
    let m = model_of(target, opts)?;
    let mut r = Report::new();
    let lie = m.lie_algebra().validate();
    let witness = (!lie.passed()).then(|| format!("antisymmetry {:?}, Jacobi {:?}", lie.antisymmetry, lie.jacobi));
    r.push(Check::from_witness("lie_algebra", witness));
    r.fact("generators", m.table().len());
    r.extend_prefixed("gdga", verify_gdga(&m));
    Ok(r)
}

pub fn basic(target: &Target, k: u32, opts: &Options) -> Result<Report, CliError> {
    let m = model_of(target, opts)?;
    let has_functions = (0..m.table().len()).any(|i| m.table().degree(i) == 0);
    let bound = if has_functions { Some(opts.max_length.unwrap_or(4)) } else { opts.max_length };
    let basis = basic_subspace(&m, k, bound).map_err(core("basic"))?;
    let mut r = Report::new();
    r.fact("degree", k);
    if let Some(b) = bound {
        r.fact("max_length", b);
    }
    r.fact("dimension", basis.len());
    for (i, x) in basis.iter().enumerate() {
        r.fact(format!("basis.{i}"), x);
    }
    let bad = basis.iter().find(|x| !m.is_basic(x));
    r.push(Check::from_witness("basis_is_basic", bad.map(|x| format!("{x} is not basic"))));
    Ok(r)
}

enum ConnTarget {
    Bundle(ConnectionDataG, Option<Pullback>),
    Principal(PrincipalConnectionData),
}

struct Pullback {
    target: GdgaModel,
    phi: Vec<equichern::gca::GradedElement>,
}

fn connection_target(target: &Target) -> Result<ConnTarget, CliError> {
    let name = match target {
        Target::File(f) => return Ok(ConnTarget::Bundle(f.connection()?, None)),
        Target::Builtin(n) => n.as_str(),
    };
    match name {
        "principal-u1" => return Ok(ConnTarget::Principal(principal_u1().map_err(core(name))?)),
        "principal-su2" => return Ok(ConnTarget::Principal(principal_su2().map_err(core(name))?)),
        _ => {}
    }
    let conn = builtin_connections()
        .map_err(core(name))?
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, c)| c)
        .ok_or_else(|| unknown("curvature", name))?;
    let pullback = match name {
        "u1-weight" => {
            let g = LieAlgebraData::u1();
            let t = tensor_model(&ce_model(&g, "s").map_err(core(name))?, &r2_trivial(&g).map_err(core(name))?)
                .map_err(core(name))?;
            let phi = vec![t.parse("s1 + x1*dx2").map_err(core(name))?];
            Some(Pullback { target: t, phi })
        }
        "su2-vector" => {
            let g = LieAlgebraData::su2();
            let t = tensor_model(&ce_model(&g, "s").map_err(core(name))?, &r3rot(&g).map_err(core(name))?)
                .map_err(core(name))?;
            let phi = (1..=3).map(|a| t.gen(&format!("s{a}"))).collect::<Result<Vec<_>, _>>().map_err(core(name))?;
            Some(Pullback { target: t, phi })
        }
        _ => None,
    };
    Ok(ConnTarget::Bundle(conn, pullback))
}

pub fn curvature(target: &Target) -> Result<Report, CliError> {
    let mut r = Report::new();
    match connection_target(target)? {
        ConnTarget::Bundle(conn, pullback) => {
            let (omega, rep) = conn.curvature_report().map_err(core("curvature"))?;
            r.fact("omega_g", &omega);
            r.extend_prefixed("connection", rep);
            if let Some(p) = pullback {
                let f = chern_weil_pullback(&conn.model, &p.target, &p.phi).map_err(core("pullback"))?;
                r.extend_prefixed("pullback", pullback_curvature_check(&conn, &f, &p.phi).map_err(core("pullback"))?);
            }
        }
        ConnTarget::Principal(data) => {
            let m = &data.model;
            let q = data.q_curvature().map_err(core("q_curvature"))?;
            let direct = data.q_curvature_direct().map_err(core("q_curvature"))?;
            r.fact("omega_q", &q);
            r.push(Check::from_witness("q_curvature", (q != direct).then(|| format!("formula {q}, direct {direct}"))));
            let tq = data.q_connection().map_err(core("q_connection"))?;
            let bad = (0..m.dim()).find(|&a| !tq.apply_derivation(m, m.iota(a)).is_zero());
            r.push(Check::from_witness("theta_q_horizontal", bad.map(|a| format!("ι_{} Θ_Q ≠ 0", a + 1))));
        }
    }
    Ok(r)
}

fn closed_and_basic(r: &mut Report, name: &str, m: &GdgaModel, x: &equichern::gca::GradedElement) -> Result<(), CliError> {
    let dx = m.normalize(&m.apply_d(x)).map_err(core(name))?;
    r.push(Check::from_witness(format!("{name}_closed"), (!dx.is_zero()).then(|| format!("d = {dx}"))));
    r.push(Check::from_witness(format!("{name}_basic"), (!m.is_basic(x)).then(|| format!("{x} is not basic"))));
    Ok(())
}

pub fn charclass(target: &Target, cap: u32, opts: &Options) -> Result<Report, CliError> {
    let conn = match connection_target(target)? {
        ConnTarget::Bundle(c, _) => c,
        ConnTarget::Principal(_) => return Err(CliError::Input("charclass needs an equivariant bundle target".into())),
    };
    let m = &conn.model;
    let omega = conn.curvature_g().map_err(core("curvature"))?;
    let mut r = Report::new();
    r.fact("cap", cap);
    let ch = chern_character(m, &omega, cap).map_err(core("ch"))?.value;
    r.fact("ch", &ch);
    closed_and_basic(&mut r, "ch", m, &ch)?;
    let ahat = a_hat(m, &omega, cap).map_err(core("a_hat"))?.value;
    r.fact("a_hat", &ahat);
    closed_and_basic(&mut r, "a_hat", m, &ahat)?;
    let rep = CliffordRep::new(2, opts.sign).map_err(core("clifford"))?;
    r.extend_prefixed("clifford", rep.verify());
    let f = MatrixForm::kron(m, &MatrixForm::identity(m, rep.dim()), &omega);
    let (paper, alt) = relative_chern_both(m, &f, &rep, cap).map_err(core("relative ch"))?;
    r.fact("relative_ch.paper", &paper.value);
    r.fact("relative_ch.standard", &alt.value);
    closed_and_basic(&mut r, "relative_ch_paper", m, &paper.value)?;
    closed_and_basic(&mut r, "relative_ch_standard", m, &alt.value)?;
    Ok(r)
}

fn superconnection_target(target: &Target) -> Result<SuperconnectionModel, CliError> {
    match target {
        Target::File(f) => f.superconnection(),
        Target::Builtin(name) => builtin_superconnections()
            .map_err(core(name))?
            .into_iter()
            .find(|(n, _)| n == name)
            .map(|(_, b)| b)
            .ok_or_else(|| unknown("superconn", name)),
    }
}

pub fn superconn(target: &Target, t: &Rational, cap: u32, opts: &Options) -> Result<Report, CliError> {
    let b = superconnection_target(target)?;
    let m = &b.model;
    let tp = TimeParam::Value(t.clone());
    let mut r = Report::new();
    r.fact("t", t);
    r.fact("cap", cap);
    let (ch, rep) = ch_report(&b, &tp, cap).map_err(core("ch"))?;
    r.fact("ch", &ch);
    r.extend_prefixed("ch", rep);
    r.extend_prefixed("scaling", scaling_report(&b).map_err(core("scaling"))?);
    let other = if *t == Rational::from_integer(1.into()) { Rational::from_integer(4.into()) } else { t.clone() };
    let functional = IntegrationFunctional::new(m, Fiber::Torus).ok();
    let int = |x: &equichern::gca::GradedElement| functional.as_ref().expect("checked").integrate(m, x);
    let integrate: Option<&dyn Fn(&equichern::gca::GradedElement) -> equichern::Result<equichern::gca::GradedElement>> =
        if functional.is_some() { Some(&int) } else { None };
    let one = Rational::from_integer(1.into());
    r.extend_prefixed("transgression", transgression_check(&b, &one, &other, cap, integrate).map_err(core("transgression"))?);

    // numeric Volterra against the exact series when D² is a constant matrix
    let scaled = b.scale(&tp).map_err(core("scale"))?;
    let f = scaled.curvature().map_err(core("curvature"))?;
    let exact = volterra_exact(m, &f, &m.one(), cap).map_err(core("volterra"))?;
    let tf: f64 = 1.0;
    match volterra_numeric(m, &f, tf, cap) {
        Ok(num) => {
            let diff = num.max_abs_diff(&NumericFormMatrix::from_exact(&exact));
            r.fact("volterra.max_error", format!("{diff:.3e}"));
            r.fact("volterra.tolerance", format!("{:.0e}", opts.tol));
            r.push(Check::from_witness(
                "volterra.numeric_matches_exact",
                (diff >= opts.tol).then(|| format!("max entry error {diff:e}")),
            ));
        }
        Err(e) => r.fact("volterra.numeric", format!("skipped ({e})")),
    }
    Ok(r)
}

pub fn index(target: &Target, cap: Option<u32>, opts: &Options) -> Result<Report, CliError> {
    let rep = CliffordRep::new(2, opts.sign).map_err(core("clifford"))?;
    let (input, oracle) = match target {
        Target::File(f) => {
            let family = f.family()?;
            let (omega, twist, oracle) = f.index()?;
            let cap = cap.or(f.model.cap()).unwrap_or(2);
            let input = IndexInput { family, omega, twist_curvature: twist, rep, convention: opts.convention, cap };
            (input, oracle)
        }
        Target::Builtin(name) => match name.as_str() {
            "s2" => {
                let input = sphere_index_input(opts.degree, None, opts.convention, rep).map_err(core(name))?;
                let oracle = sphere_index_oracle(&input.family.model, opts.degree, None).map_err(core(name))?;
                (input, oracle)
            }
            "s2rot" => {
                let order = cap.map(|c| c.saturating_sub(2) / 2).unwrap_or(6).max(1);
                let input = sphere_index_input(opts.degree, Some(order), opts.convention, rep).map_err(core(name))?;
                let oracle = sphere_index_oracle(&input.family.model, opts.degree, Some(order)).map_err(core(name))?;
                (input, oracle)
            }
            "torus2" => {
                let input = torus_index_input(opts.convention, rep).map_err(core(name))?;
                let zero = input.family.model.zero();
                (input, zero)
            }
            _ => return Err(unknown("index", name)),
        },
    };
    let mut r = Report::new();
    r.fact("degree", opts.degree);
    r.fact("cap", input.cap);
    r.extend_prefixed("index", index_check(&input, &oracle).map_err(core("index"))?);
    Ok(r)
}

pub fn dh(target: &Target, order: u32) -> Result<Report, CliError> {
    match target {
        Target::Builtin(n) if n == "s2rot" => {}
        Target::Builtin(n) => return Err(unknown("dh", n)),
        Target::File(_) => return Err(CliError::Input("dh runs on the built-in s2rot only".into())),
    }
    dh_localization(order).map_err(core("dh"))
}
