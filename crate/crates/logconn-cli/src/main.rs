//! `logconn`: JSON reports for every computation and verification in the library.
//!
//! Exit status: 0 when every check passes, 1 when a check fails, 2 on invalid input.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use logconn::config::InstanceConfig;
use logconn::connection::{eigendirection, elm, residue_data, Direction, ElmSign};
use logconn::curve::{CurveInstance, CurvePoint};
use logconn::exact::{format_q, parse_q, projective_normalize, qi, Mat2, Q};
use logconn::family::{basis, combine, nabla_c, verify_family, Chart};
use logconn::maps::{
    app, app_degenerate_at, app_det, app_det_closed_form, app_matrix, app_matrix_infinity, bun_prime, det3, mat3_vec,
    par, par_closed_form, par_inverse, BaseCoord, Degeneration, ParData,
};
use logconn::parabolic::{genericity, nu_flat, parabolic_degree, ExponentSet, FlatVerdict, ParabolicBundleDesc, Summand};
use logconn::report::{Check, Report};
use logconn::samples::{Sampler, SEED_SYMPLECTIC};
use logconn::suite::run_all;
use logconn::symplectic::{eta_and_domega_check, par_pullback_check, torelli_invariance_checks};
use logconn::Error;

const SCHEMA_VERSION: &str = "1";

#[derive(Parser)]
#[command(name = "logconn", version, about = "Exact verification of a universal family of logarithmic connections")]
struct Cli {
    /// Flat key=value file with lambda, t, r, nu1, nu2; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Curve parameter λ in y² = x(x−1)(x−λ).
    #[arg(long, global = true, allow_hyphen_values = true)]
    lambda: Option<String>,
    /// x-coordinate of the poles.
    #[arg(long = "t", global = true, allow_hyphen_values = true)]
    t: Option<String>,
    /// y-coordinate of t₁; r² = t(t−1)(t−λ).
    #[arg(long, global = true, allow_hyphen_values = true)]
    r: Option<String>,
    /// Exponent difference at t₁.
    #[arg(long, global = true, allow_hyphen_values = true)]
    nu1: Option<String>,
    /// Exponent difference at t₂.
    #[arg(long, global = true, allow_hyphen_values = true)]
    nu2: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(clap::Args, Clone)]
struct FamilyArgs {
    #[arg(long, allow_hyphen_values = true)]
    z1: String,
    #[arg(long, allow_hyphen_values = true)]
    z2: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    c1: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    c2: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum SympSuite {
    Par,
    Eta,
    Torelli,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check tracelessness, L(D') membership and the 13 linear conditions for ∇_c(z).
    FamilyVerify(FamilyArgs),
    /// Residue eigendirections of ∇_c(z) against the closed form.
    Par(FamilyArgs),
    /// Recover (c1, c2) from the minus directions, given as slopes or "inf".
    ParInv {
        #[arg(long, allow_hyphen_values = true)]
        z1: String,
        #[arg(long, allow_hyphen_values = true)]
        z2: String,
        #[arg(long, allow_hyphen_values = true)]
        zeta1: String,
        #[arg(long, allow_hyphen_values = true)]
        zeta2: String,
    },
    /// App coordinates of ∇_c(z), from first principles and from the matrix.
    App(FamilyArgs),
    /// Classify c ↦ App(∇_c(z)) at a base point; coordinates may be "inf".
    AppAnalyze {
        #[arg(long, allow_hyphen_values = true)]
        z1: String,
        #[arg(long, allow_hyphen_values = true)]
        z2: String,
    },
    /// Bun'(z).
    Bunprime {
        #[arg(long, allow_hyphen_values = true)]
        z1: String,
        #[arg(long, allow_hyphen_values = true)]
        z2: String,
    },
    /// Symplectic identity suites at deterministic samples.
    Symplectic {
        #[arg(long, value_enum)]
        suite: SympSuite,
    },
    /// Elementary transformation of ∇_c(z) at a point (w0, w1, wl, t1, t2 or "(x, y)").
    Elm {
        #[arg(long)]
        point: String,
        #[arg(long, allow_hyphen_values = true)]
        sign: String,
        /// Center direction "(u:v)"; default is the ν⁺ eigendirection.
        #[arg(long)]
        direction: Option<String>,
        #[arg(long, allow_hyphen_values = true, default_value = "1")]
        z1: String,
        #[arg(long, allow_hyphen_values = true, default_value = "2")]
        z2: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        c1: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        c2: String,
    },
    /// Flatness decision for a parabolic bundle description (JSON file).
    Flat {
        #[arg(long)]
        desc: PathBuf,
    },
    /// Run all ten acceptance criteria.
    Selftest,
}

/// Invalid input: exit 2 with the violated constraint.
struct Invalid {
    kind: &'static str,
    message: String,
}

impl From<Error> for Invalid {
    fn from(e: Error) -> Self {
        let kind = match &e {
            Error::DivisionByZero => "division_by_zero",
            Error::Parse(_) => "parse",
            Error::InvalidInstance(_) => "invalid_instance",
            Error::ZeroFunction => "zero_function",
            Error::Pole => "pole",
            Error::UnsupportedLocus(_) => "unsupported_locus",
            Error::NotLogarithmic { .. } => "not_logarithmic",
            Error::NonGenericResidue => "non_generic_residue",
            Error::EigenvaluesOutsideField => "eigenvalues_outside_field",
            Error::NotInvertible => "not_invertible",
            Error::Precondition(_) => "precondition",
            Error::IncidenceVariety(_) => "incidence_variety",
            Error::IncidencePole => "incidence_pole",
            Error::BlownUpPoint => "blown_up_point",
            Error::UseEpsilonField(_) => "use_epsilon_field",
            Error::AppTranscription(_) => "app_transcription",
            Error::Unsupported(_) => "unsupported",
            Error::Precision => "precision",
        };
        Invalid { kind, message: e.to_string() }
    }
}

fn invalid(kind: &'static str, message: impl Into<String>) -> Invalid {
    Invalid { kind, message: message.into() }
}

type Out = Result<(Value, Report), Invalid>;

fn rat(name: &str, s: &str) -> Result<Q, Invalid> {
    parse_q(s).map_err(|_| invalid("parse", format!("--{name}: {s:?} is not a rational literal")))
}

fn base_coord(name: &str, s: &str) -> Result<BaseCoord, Invalid> {
    if s == "inf" {
        Ok(BaseCoord::Infinity)
    } else {
        rat(name, s).map(BaseCoord::Finite)
    }
}

fn qs(v: &Q) -> String {
    format_q(v)
}

fn proj(v: &[Q]) -> Value {
    match projective_normalize(v) {
        Some(n) => json!(n.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
        None => Value::Null,
    }
}

fn dir(d: &Direction) -> Value {
    proj(&d.vec())
}

fn mat(m: &Mat2<Q>) -> Value {
    json!([[qs(m.get(0, 0)), qs(m.get(0, 1))], [qs(m.get(1, 0)), qs(m.get(1, 1))]])
}

fn par_json(p: &ParData) -> Value {
    json!({"p1plus": dir(&p.p1plus), "p1minus": dir(&p.p1minus), "p2plus": dir(&p.p2plus), "p2minus": dir(&p.p2minus)})
}

fn family_args(a: &FamilyArgs) -> Result<[Q; 4], Invalid> {
    Ok([rat("z1", &a.z1)?, rat("z2", &a.z2)?, rat("c1", &a.c1)?, rat("c2", &a.c2)?])
}

fn cmd_family_verify(inst: &CurveInstance, a: &FamilyArgs) -> Out {
    let [z1, z2, c1, c2] = family_args(a)?;
    let rep = verify_family(inst, &z1, &z2, &c1, &c2)?;
    Ok((json!({"z": [qs(&z1), qs(&z2)], "c": [qs(&c1), qs(&c2)]}), rep))
}

fn cmd_par(inst: &CurveInstance, a: &FamilyArgs) -> Out {
    let [z1, z2, c1, c2] = family_args(a)?;
    let got = par(inst, (&z1, &z2), (&c1, &c2))?;
    let closed = par_closed_form(inst, (&z1, &z2), (&c1, &c2))?;
    let mut rep = Report::new();
    rep.check("residue directions = closed form", got == closed, || format!("{}", par_json(&closed)));
    let back = par_inverse(inst, (&z1, &z2), (&got.p1minus, &got.p2minus));
    let want = Ok((c1.clone(), c2.clone()));
    rep.check("inverse recovers c", back == want, || format!("{back:?}"));
    Ok((par_json(&got), rep))
}

fn slope_dir(name: &str, s: &str) -> Result<Direction, Invalid> {
    if s == "inf" {
        Ok(Direction::vertical())
    } else {
        rat(name, s).map(Direction::slope)
    }
}

fn cmd_par_inv(inst: &CurveInstance, z1: &str, z2: &str, zeta1: &str, zeta2: &str) -> Out {
    let (z1, z2) = (rat("z1", z1)?, rat("z2", z2)?);
    let (d1, d2) = (slope_dir("zeta1", zeta1)?, slope_dir("zeta2", zeta2)?);
    let (c1, c2) = par_inverse(inst, (&z1, &z2), (&d1, &d2))?;
    let mut rep = Report::new();
    let fwd = par(inst, (&z1, &z2), (&c1, &c2))?;
    rep.check("par recovers directions", fwd.p1minus == d1 && fwd.p2minus == d2, || par_json(&fwd).to_string());
    Ok((json!({"c": [qs(&c1), qs(&c2)]}), rep))
}

fn cmd_app(inst: &CurveInstance, a: &FamilyArgs) -> Out {
    let [z1, z2, c1, c2] = family_args(a)?;
    let m = combine(&basis(inst, &z1, &z2), &Q::from_integer(1.into()), &c1, &c2);
    let first = app(inst, &m, &Q::from_integer(1.into()))?;
    let one = Q::from_integer(1.into());
    let via = mat3_vec(&app_matrix(inst, &z1, &z2), &[one, c1, c2]);
    let mut rep = Report::new();
    rep.check("first principles = matrix (projective)", projective_normalize(&first) == projective_normalize(&via), || {
        proj(&via).to_string()
    });
    rep.check("first principles = matrix (exact)", first == via, || format!("{:?}", via.iter().map(qs).collect::<Vec<_>>()));
    let result = json!({
        "app": proj(&first),
        "exact": first.iter().map(qs).collect::<Vec<_>>(),
        "matrix": app_matrix(inst, &z1, &z2).iter().map(|r| r.iter().map(qs).collect::<Vec<_>>()).collect::<Vec<_>>(),
    });
    Ok((result, rep))
}

fn degeneration_json(d: &Degeneration) -> Value {
    match d {
        Degeneration::GenericIso => json!({"kind": "GenericIso"}),
        Degeneration::LineImage(i) => json!({"kind": "LineImage", "independent_of": format!("c{i}")}),
        Degeneration::NonDominant => json!({"kind": "NonDominant"}),
        Degeneration::ConstantImage(p) => {
            json!({"kind": "ConstantImage", "point": p.iter().map(|x| x.to_string()).collect::<Vec<_>>()})
        }
        Degeneration::Indeterminate => json!({"kind": "Indeterminate"}),
    }
}

fn cmd_app_analyze(inst: &CurveInstance, z1: &str, z2: &str) -> Out {
    let (a, b) = (base_coord("z1", z1)?, base_coord("z2", z2)?);
    let (chart, deg) = app_degenerate_at(inst, (&a, &b))?;
    let chart_name = match chart {
        Chart::U0 => "U0",
        Chart::UInf => "UInf",
    };
    let mut rep = Report::new();
    let det = match (&a, &b) {
        (BaseCoord::Finite(x), BaseCoord::Finite(y)) => {
            let d = app_det(inst, x, y);
            let cf = app_det_closed_form(inst, x, y);
            rep.check("determinant = closed form", d == cf, || qs(&cf));
            d
        }
        _ => {
            let inv = |c: &BaseCoord| match c {
                BaseCoord::Infinity => Q::from_integer(0.into()),
                BaseCoord::Finite(v) => v.recip(),
            };
            det3(&app_matrix_infinity(inst, &inv(&a), &inv(&b)))
        }
    };
    Ok((json!({"chart": chart_name, "determinant": qs(&det), "degeneration": degeneration_json(&deg)}), rep))
}

fn cmd_bunprime(inst: &CurveInstance, z1: &str, z2: &str) -> Out {
    let (z1, z2) = (rat("z1", z1)?, rat("z2", z2)?);
    let b = bun_prime(inst, &z1, &z2)?;
    Ok((json!({"bunprime": proj(&b)}), Report::new()))
}

fn sample_row(point: &[Q; 4], r: logconn::Result<bool>) -> (Value, bool) {
    let (pass, err) = match r {
        Ok(b) => (b, None),
        Err(e) => (false, Some(e.to_string())),
    };
    let mut v = json!({"point": point.iter().map(qs).collect::<Vec<_>>(), "pass": pass});
    if let Some(e) = err {
        v["error"] = json!(e);
    }
    (v, pass)
}

fn cmd_symplectic(inst: &CurveInstance, suite: SympSuite) -> Out {
    let mut rep = Report::new();
    let mut rows = Vec::new();
    let mut s = Sampler::new(SEED_SYMPLECTIC);
    match suite {
        SympSuite::Par => {
            for k in 0..20 {
                let (z1, z2) = s.base_point(inst);
                let p = [z1.clone(), z2.clone(), s.q_avoiding(&[z1]), s.q_avoiding(&[z2])];
                let (row, pass) = sample_row(&p, par_pullback_check(inst, &p));
                rep.check(format!("par pullback s{k:03}"), pass, || row.to_string());
                rows.push(row);
            }
        }
        SympSuite::Eta => {
            if inst.nu1.clone() + inst.nu2.clone() == qi(-1) {
                return Err(invalid("precondition", "eta suite needs nu1 + nu2 + 1 != 0"));
            }
            for _ in 0..20 {
                s.base_point(inst);
                s.q();
                s.q();
            }
            for k in 0..20 {
                let p = s.family_point(inst);
                let (row, pass) = sample_row(&p, eta_and_domega_check(inst, &p));
                rep.check(format!("d(eta) = omega s{k:03}"), pass, || row.to_string());
                rows.push(row);
            }
        }
        SympSuite::Torelli => {
            let r = torelli_invariance_checks(inst);
            for c in &r.checks {
                rows.push(json!({"name": c.name, "pass": c.pass}));
            }
            rep = r;
        }
    }
    let name = match suite {
        SympSuite::Par => "par",
        SympSuite::Eta => "eta",
        SympSuite::Torelli => "torelli",
    };
    Ok((json!({"suite": name, "samples": rows}), rep))
}

fn named_point(inst: &CurveInstance, s: &str) -> Result<CurvePoint, Invalid> {
    let p = match s {
        "w0" => inst.w0(),
        "w1" => inst.w1(),
        "wl" | "wlambda" => inst.wl(),
        "t1" => inst.t1(),
        "t2" => inst.t2(),
        "winf" | "w_inf" => CurvePoint::Infinity,
        _ => CurvePoint::parse(s).map_err(|_| invalid("parse", format!("--point: {s:?} is not a point name or \"(x, y)\"")))?,
    };
    if !inst.on_curve(&p) {
        return Err(invalid("precondition", format!("--point: {p} is not on the curve")));
    }
    Ok(p)
}

fn parse_direction(s: &str) -> Result<Direction, Invalid> {
    let bad = || invalid("parse", format!("--direction: {s:?} is not \"(u:v)\""));
    let inner = s.trim().strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
    let (u, v) = inner.split_once(':').ok_or_else(bad)?;
    let (u, v) = (parse_q(u.trim()).map_err(|_| bad())?, parse_q(v.trim()).map_err(|_| bad())?);
    Direction::new(u, v).ok_or_else(|| invalid("precondition", "--direction: (0:0) is not a direction"))
}

/// Roots of the characteristic polynomial, in descending order.
fn eigenvalues(m: &Mat2<Q>) -> Result<Vec<Q>, Invalid> {
    let tr = m.trace();
    let disc = tr.clone() * tr.clone() - m.det() * Q::from_integer(4.into());
    let s = logconn::exact::Field::sqrt(&disc).ok_or_else(|| Invalid::from(Error::EigenvaluesOutsideField))?;
    let half = Q::new(1.into(), 2.into());
    Ok(vec![(tr.clone() + s.clone()) * half.clone(), (tr - s) * half])
}

fn cmd_elm(inst: &CurveInstance, point: &str, sign: &str, direction: Option<&str>, fa: &FamilyArgs) -> Out {
    let p = named_point(inst, point)?;
    let sign = ElmSign::parse(sign).ok_or_else(|| invalid("parse", format!("--sign: {sign:?} must be + or -")))?;
    let [z1, z2, c1, c2] = family_args(fa)?;
    let conn = nabla_c(inst, &z1, &z2, &c1, &c2);
    let before = residue_data(&conn, &p)?;
    let d = match direction {
        Some(s) => parse_direction(s)?,
        None => {
            let plus = conn.ledger.get(&p).0;
            eigendirection(&before.a_minus1, &plus).ok_or_else(|| {
                invalid("precondition", format!("{} is not a residue eigenvalue at {p}", qs(&plus)))
            })?
        }
    };
    let e = elm(inst, &conn, &p, &d, sign)?;
    let after = residue_data(&e.conn, &p)?;
    let ev = eigenvalues(&after.a_minus1)?;
    let (lp, lm) = e.conn.ledger.get(&p);
    let mut want = vec![lp.clone(), lm.clone()];
    want.sort();
    want.reverse();
    let mut rep = Report::new();
    rep.check("residue eigenvalues = ledger", ev == want, || format!("{:?}", ev.iter().map(qs).collect::<Vec<_>>()));
    rep.check("fuchs relation", e.conn.ledger.fuchs_check(), || qs(&e.conn.ledger.fuchs_sum()));
    if p.is_two_torsion() && p != CurvePoint::Infinity && sign == ElmSign::Plus {
        let h = Q::new((-1).into(), 2.into());
        rep.check("apparent point becomes -1/2 I", after.a_minus1 == Mat2::scalar(h), || mat(&after.a_minus1).to_string());
    }
    let result = json!({
        "point": p.to_string(),
        "sign": sign.text(),
        "direction": dir(&d),
        "new_direction": dir(&e.direction),
        "residue_before": mat(&before.a_minus1),
        "residue_after": mat(&after.a_minus1),
        "eigenvalues_after": ev.iter().map(qs).collect::<Vec<_>>(),
        "ledger_after": {
            "exponents": [qs(&lp), qs(&lm)],
            "degree": e.conn.ledger.degree,
            "class_sum": e.conn.ledger.class.sum.to_string(),
        },
    });
    Ok((result, rep))
}

#[derive(Deserialize)]
struct FlatInput {
    bundle: ParabolicBundleDesc,
    /// Per-pole [ν⁺, ν⁻] texts; default: the instance exponents.
    #[serde(default)]
    exponents: Option<Vec<[String; 2]>>,
    #[serde(default)]
    expect: Option<FlatVerdict>,
}

fn cmd_flat(inst: &CurveInstance, path: &PathBuf) -> Out {
    let text = fs::read_to_string(path).map_err(|e| invalid("io", format!("--desc {}: {e}", path.display())))?;
    let input: FlatInput =
        serde_json::from_str(&text).map_err(|e| invalid("parse", format!("--desc {}: {e}", path.display())))?;
    let nu = match &input.exponents {
        Some(t) => ExponentSet::parse(t)?,
        None => ExponentSet::from_instance(inst),
    };
    if let ParabolicBundleDesc::Decomposable { flags, .. } = &input.bundle {
        if flags.len() != nu.pairs.len() {
            return Err(invalid("precondition", format!("{} flags for {} poles", flags.len(), nu.pairs.len())));
        }
    }
    let verdict = nu_flat(&input.bundle, &nu);
    let mut rep = Report::new();
    if let Some(want) = input.expect {
        rep.check("verdict = expected", verdict == want, || format!("{verdict:?}"));
    }
    let degrees = match &input.bundle {
        ParabolicBundleDesc::Decomposable { .. } => {
            let l = parabolic_degree(&input.bundle, Summand::L, &nu).ok();
            let m = parabolic_degree(&input.bundle, Summand::M, &nu).ok();
            json!({"L": l.as_ref().map(qs), "M": m.as_ref().map(qs)})
        }
        _ => Value::Null,
    };
    let gen = genericity(&nu);
    let result = json!({
        "verdict": verdict,
        "degree": input.bundle.degree(),
        "fuchs": nu.fuchs(input.bundle.degree()),
        "parabolic_degrees": degrees,
        "generic": gen.all_pass(),
        "genericity_failures": gen.failures().iter().map(|c| c.name.clone()).collect::<Vec<_>>(),
    });
    Ok((result, rep))
}

fn cmd_selftest(inst: &CurveInstance) -> Out {
    let reports = run_all(inst);
    let mut rep = Report::new();
    for r in &reports {
        rep.check(format!("criterion {:02} {}", r.id, r.title), r.pass, || format!("{} failed", r.failures.len()));
    }
    Ok((json!({"criteria": reports}), rep))
}

#[derive(Serialize)]
struct InstanceOut {
    lambda: String,
    t: String,
    r: String,
    nu1: String,
    nu2: String,
}

fn command_name(c: &Cmd) -> &'static str {
    match c {
        Cmd::FamilyVerify(_) => "family-verify",
        Cmd::Par(_) => "par",
        Cmd::ParInv { .. } => "par-inv",
        Cmd::App(_) => "app",
        Cmd::AppAnalyze { .. } => "app-analyze",
        Cmd::Bunprime { .. } => "bunprime",
        Cmd::Symplectic { .. } => "symplectic",
        Cmd::Elm { .. } => "elm",
        Cmd::Flat { .. } => "flat",
        Cmd::Selftest => "selftest",
    }
}

fn instance(cli: &Cli) -> Result<CurveInstance, Invalid> {
    let base = match &cli.config {
        Some(p) => {
            let text = fs::read_to_string(p).map_err(|e| invalid("io", format!("--config {}: {e}", p.display())))?;
            InstanceConfig::parse(&text)?
        }
        None => InstanceConfig::default(),
    };
    let mut flags = InstanceConfig::default();
    for (k, v) in [("lambda", &cli.lambda), ("t", &cli.t), ("r", &cli.r), ("nu1", &cli.nu1), ("nu2", &cli.nu2)] {
        if let Some(v) = v {
            flags.set(k, v).map_err(|_| invalid("parse", format!("--{k}: {v:?} is not a rational literal")))?;
        }
    }
    Ok(base.overridden_by(&flags).instance()?)
}

fn run(cli: &Cli) -> Result<(CurveInstance, Value, Report), Invalid> {
    let inst = instance(cli)?;
    let (v, rep) = match &cli.cmd {
        Cmd::FamilyVerify(a) => cmd_family_verify(&inst, a),
        Cmd::Par(a) => cmd_par(&inst, a),
        Cmd::ParInv { z1, z2, zeta1, zeta2 } => cmd_par_inv(&inst, z1, z2, zeta1, zeta2),
        Cmd::App(a) => cmd_app(&inst, a),
        Cmd::AppAnalyze { z1, z2 } => cmd_app_analyze(&inst, z1, z2),
        Cmd::Bunprime { z1, z2 } => cmd_bunprime(&inst, z1, z2),
        Cmd::Symplectic { suite } => cmd_symplectic(&inst, *suite),
        Cmd::Elm { point, sign, direction, z1, z2, c1, c2 } => {
            let fa = FamilyArgs { z1: z1.clone(), z2: z2.clone(), c1: c1.clone(), c2: c2.clone() };
            cmd_elm(&inst, point, sign, direction.as_deref(), &fa)
        }
        Cmd::Flat { desc } => cmd_flat(&inst, desc),
        Cmd::Selftest => cmd_selftest(&inst),
    }?;
    Ok((inst, v, rep))
}

fn emit(cli: &Cli, v: &Value) -> Result<(), String> {
    let text = serde_json::to_string_pretty(v).expect("JSON values serialize") + "\n";
    match &cli.output {
        Some(p) => fs::write(p, text).map_err(|e| format!("--output {}: {e}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = command_name(&cli.cmd);
    let (doc, code) = match run(&cli) {
        Ok((inst, result, rep)) => {
            let pass = rep.all_pass();
            let checks: Vec<Check> = rep.checks;
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "command": command,
                "instance": InstanceOut {
                    lambda: qs(&inst.lambda),
                    t: qs(&inst.t),
                    r: qs(&inst.r),
                    nu1: qs(&inst.nu1),
                    nu2: qs(&inst.nu2),
                },
                "pass": pass,
                "result": result,
                "checks": checks,
                "info": rep.info,
            });
            (doc, if pass { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            let doc = json!({
                "schema_version": SCHEMA_VERSION,
                "command": command,
                "error": {"kind": e.kind, "message": e.message},
            });
            (doc, 2)
        }
    };
    if let Err(e) = emit(&cli, &doc) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
