use std::fmt::Write as _;

use serde::Serialize;

use lierack::builtins::CORPUS_LAMBDAS;
use lierack::integrator::IntegrationReport;
use lierack::triples::{GeneratedTriple, TripleComponents};
use lierack::{
    build_model, check_group_rack_triple, check_morphism, check_rack, integrate, is_strict, max_strictness_subalgebra,
    random_triple, Builtin, DiffConfig, Error, FiniteGroup, GroupRackTriple, IntegrationSettings, ModelOptions,
    RelaxedAugmentation, Rep, Report, Scheme, Subspace, TripleFamily, TripleMorphism,
};

use crate::spec::{ConfigSpec, MorphismSpec, SpecFile};

pub const PASS: u8 = 0;
pub const AXIOM: u8 = 2;
pub const STRUCTURAL: u8 = 3;
pub const CAPABILITY: u8 = 4;

pub fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Axiom { .. } => AXIOM,
        Error::Capability(_) => CAPABILITY,
        _ => STRUCTURAL,
    }
}

/// Keeps the first nonzero code.
fn escalate(code: &mut u8, new: u8) {
    if *code == PASS {
        *code = new;
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

pub struct Rendered {
    pub code: u8,
    pub stdout: String,
}

fn render<T: Serialize>(format: Format, value: &T, text: impl FnOnce(&mut String)) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut s = String::new();
            text(&mut s);
            s
        }
    }
}

fn write_report(out: &mut String, indent: &str, r: &Report) {
    for law in &r.laws {
        let status = match (law.passed, law.derived) {
            (true, false) => "ok",
            (true, true) => "ok (derived)",
            (false, false) => "FAIL",
            (false, true) => "FAIL (derived)",
        };
        let _ = writeln!(
            out,
            "{indent}{:<34} {:<15} max_residual {:.3e}  checked {}  tol {:.0e}",
            law.name, status, law.max_residual, law.checked, law.tolerance
        );
    }
    for v in r.violations.iter().take(5) {
        let _ = writeln!(out, "{indent}violation {} at {:?}: residual {:.3e}", v.law, v.indices, v.residual);
    }
    for (name, value) in &r.flags {
        let _ = writeln!(out, "{indent}flag {name}: {value}");
    }
}

fn error_output(format: Format, source: &str, code: u8, message: &str) -> Rendered {
    #[derive(Serialize)]
    struct ErrorOutput<'a> {
        source: &'a str,
        exit_code: u8,
        error: &'a str,
    }
    let stdout = render(format, &ErrorOutput { source, exit_code: code, error: message }, |s| {
        let _ = writeln!(s, "source: {source}\nerror: {message}\nexit_code: {code}");
    });
    Rendered { code, stdout }
}

/// What `verify` and `integrate` operate on.
pub enum Input {
    Triple {
        components: TripleComponents<f64>,
        rep: Option<Result<Rep, Error>>,
        h_basis: Option<Result<Subspace, Error>>,
        config: ConfigSpec,
        morphism: Option<MorphismSpec>,
    },
    Rack(Result<GroupRackTriple, Error>),
}

pub fn input_from_builtin(b: Builtin) -> Input {
    match b.triple::<f64>() {
        Some((components, rep)) => {
            let rep = rep.map(|m| Rep::new(&components.algebra, m, lierack::default_tolerance()));
            Input::Triple { components, rep, h_basis: None, config: ConfigSpec::default(), morphism: None }
        }
        None => Input::Rack(Ok(b.rack().expect("rack builtin"))),
    }
}

pub fn input_from_file(spec: SpecFile, tol: f64) -> Result<Input, Error> {
    match spec {
        SpecFile::Rack(r) => Ok(Input::Rack(r.triple())),
        SpecFile::Triple(t) => {
            let components = t.components()?;
            let rep = t.rep(&components.algebra, tol).transpose();
            let h_basis = t.h_basis().transpose();
            let t = *t;
            Ok(Input::Triple { components, rep, h_basis, config: t.config.unwrap_or_default(), morphism: t.morphism })
        }
    }
}

// ---------------------------------------------------------------------------
// verify

#[derive(Serialize, Default)]
struct VerifyOutput {
    source: String,
    kind: &'static str,
    passed: bool,
    exit_code: u8,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dim_g: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    dim_v: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    strict: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    h_max_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    image_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    kernel_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<Report>,
    #[serde(skip_serializing_if = "Option::is_none")]
    relaxed_augmentation: Option<Report>,
    #[serde(skip_serializing_if = "Option::is_none")]
    faithful_rep: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    morphism: Option<Report>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rack: Option<Report>,
    #[serde(skip_serializing_if = "Option::is_none")]
    strictness_subgroup_size: Option<usize>,
}

impl VerifyOutput {
    fn fail(&mut self, code: u8, message: String) {
        escalate(&mut self.exit_code, code);
        if self.error.is_none() {
            self.error = Some(message);
        }
    }

    fn text(&self, s: &mut String) {
        let _ = writeln!(s, "source: {}\nkind: {}", self.source, self.kind);
        let line = |s: &mut String, k: &str, v: Option<String>| {
            if let Some(v) = v {
                let _ = writeln!(s, "{k}: {v}");
            }
        };
        line(s, "dim_g", self.dim_g.map(|x| x.to_string()));
        line(s, "dim_v", self.dim_v.map(|x| x.to_string()));
        line(s, "passed", Some(self.passed.to_string()));
        line(s, "strict", self.strict.map(|x| x.to_string()));
        line(s, "h_max_dim", self.h_max_dim.map(|x| x.to_string()));
        line(s, "image_dim", self.image_dim.map(|x| x.to_string()));
        line(s, "kernel_dim", self.kernel_dim.map(|x| x.to_string()));
        line(s, "strictness_subgroup_size", self.strictness_subgroup_size.map(|x| x.to_string()));
        line(s, "faithful_rep", self.faithful_rep.clone());
        for (title, r) in [
            ("laws", &self.report),
            ("relaxed augmentation", &self.relaxed_augmentation),
            ("morphism", &self.morphism),
            ("rack", &self.rack),
        ] {
            if let Some(r) = r {
                let _ = writeln!(s, "{title}:");
                write_report(s, "  ", r);
            }
        }
        line(s, "error", self.error.clone());
        let _ = writeln!(s, "exit_code: {}", self.exit_code);
    }
}

pub fn verify(source: &str, input: Input, tol: f64, format: Format) -> Rendered {
    let mut out = VerifyOutput { source: source.to_string(), ..Default::default() };
    match input {
        Input::Rack(t) => {
            out.kind = "rack";
            match t {
                Err(e) => out.fail(exit_code(&e), e.to_string()),
                Ok(t) => {
                    let report = check_group_rack_triple(&t);
                    let rack = check_rack(&t.rack());
                    if let Some(f) = report.first_failure() {
                        out.fail(AXIOM, format!("law {} violated", f.name));
                    } else if let Some(f) = rack.first_failure() {
                        out.fail(AXIOM, format!("rack law {} violated", f.name));
                    }
                    out.strict = Some(t.is_strict());
                    out.strictness_subgroup_size = Some(t.strictness_subgroup().len());
                    out.report = Some(report);
                    out.rack = Some(rack);
                }
            }
        }
        Input::Triple { components, rep, h_basis, morphism, .. } => {
            out.kind = "triple";
            verify_triple(&mut out, components, rep, h_basis, morphism, tol);
        }
    }
    out.passed = out.exit_code == PASS;
    let stdout = render(format, &out, |s| out.text(s));
    Rendered { code: out.exit_code, stdout }
}

fn verify_triple(
    out: &mut VerifyOutput,
    components: TripleComponents<f64>,
    rep: Option<Result<Rep, Error>>,
    h_basis: Option<Result<Subspace, Error>>,
    morphism: Option<MorphismSpec>,
    tol: f64,
) {
    out.dim_g = Some(components.algebra.dim());
    out.dim_v = Some(components.action.dim_v());
    let report = match components.check(tol) {
        Ok(r) => r,
        Err(e) => return out.fail(exit_code(&e), e.to_string()),
    };
    let failure = report.first_failure().map(|f| (f.name.clone(), f.max_residual));
    out.report = Some(report);
    if let Some((law, residual)) = failure {
        return out.fail(AXIOM, format!("law {law} violated (residual {residual:.3e})"));
    }
    let triple = components.build(tol).expect("checked above");
    let h_max = max_strictness_subalgebra(&triple, tol);
    out.strict = Some(is_strict(&triple, tol));
    out.h_max_dim = Some(h_max.dim());
    out.image_dim = Some(triple.image(tol).dim());
    out.kernel_dim = Some(triple.kernel(tol).dim());

    match h_basis {
        None => {}
        Some(Err(e)) => out.fail(exit_code(&e), e.to_string()),
        Some(Ok(h)) => match RelaxedAugmentation::check(&triple, &h, tol) {
            Err(e) => out.fail(exit_code(&e), e.to_string()),
            Ok(r) => {
                if let Some(f) = r.first_failure() {
                    out.fail(AXIOM, format!("relaxed augmentation law {} violated", f.name));
                }
                out.relaxed_augmentation = Some(r);
            }
        },
    }

    out.faithful_rep = Some(match rep {
        Some(Ok(r)) => format!("valid ({}×{})", r.faithful_dim(), r.faithful_dim()),
        Some(Err(e)) => {
            let msg = e.to_string();
            out.fail(exit_code(&e), msg.clone());
            format!("invalid: {msg}")
        }
        None => match Rep::adjoint_rep(triple.algebra(), tol) {
            Ok(_) => "not given; the adjoint representation is faithful".into(),
            Err(_) => "not given; the center is nontrivial, so integration needs one".into(),
        },
    });

    if let Some(m) = morphism {
        let target = match m.target() {
            None => Ok(triple.clone()),
            Some(Err(e)) => Err(e),
            Some(Ok(c)) => c.build(tol),
        };
        let checked = target.and_then(|target| {
            let (phi, psi) =
                m.matrices((triple.dim_g(), triple.dim_v()), (target.dim_g(), target.dim_v()))?;
            check_morphism(&TripleMorphism { phi, psi, source: &triple, target: &target }, tol)
        });
        match checked {
            Err(e) => out.fail(exit_code(&e), format!("morphism: {e}")),
            Ok(r) => {
                if let Some(f) = r.first_failure() {
                    out.fail(AXIOM, format!("morphism law {} violated", f.name));
                }
                out.morphism = Some(r);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// integrate

#[derive(Clone, Copy, Debug, Default)]
pub struct IntegrateFlags {
    pub radius: Option<f64>,
    pub step: Option<f64>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub scheme: Option<Scheme>,
    pub tolerance: Option<f64>,
}

#[derive(Serialize)]
struct IntegrateOutput<'a> {
    source: &'a str,
    exit_code: u8,
    tolerance: f64,
    #[serde(flatten)]
    report: &'a IntegrationReport<f64>,
}

fn integrate_text(s: &mut String, source: &str, code: u8, tolerance: f64, r: &IntegrationReport<f64>) {
    let _ = writeln!(s, "source: {source}");
    let _ = writeln!(s, "dim_g: {}\ndim_v: {}\nh_dim: {}\nstrict: {}", r.dim_g, r.dim_v, r.h_dim, r.strict);
    let scheme = match r.scheme {
        Scheme::Central => "central",
        Scheme::Richardson => "richardson",
    };
    let _ = writeln!(s, "radius: {}\nstep: {:e}\nscheme: {scheme}\nsamples: {}\nseed: {}", r.radius, r.step, r.samples, r.seed);
    let _ = writeln!(s, "local laws:");
    write_report(s, "  ", &r.local_laws);
    let _ = writeln!(s, "equivariance:");
    write_report(s, "  ", &r.equivariance);
    let rt = &r.roundtrip;
    let _ = writeln!(s, "roundtrip: theta {:.3e}  action {:.3e}  bracket {:.3e}", rt.theta, rt.action, rt.bracket);
    let _ = writeln!(s, "max_roundtrip_residual: {:.3e} (tolerance {tolerance:e})", r.max_roundtrip_residual);
    let _ = writeln!(s, "a_theta_recovered: max deviation {:.3e}", r.a_theta_max_residual);
    let fmt = |v: &[f64]| v.iter().map(|x| format!("{x:.6}")).collect::<Vec<_>>().join(", ");
    for e in &r.a_theta_recovered {
        let _ = writeln!(s, "  a=e{} v=v{}: recovered [{}]  expected [{}]", e.a, e.v, fmt(&e.recovered), fmt(&e.expected));
    }
    let _ = writeln!(s, "passed: {}\nexit_code: {code}", code == PASS);
}

pub fn integrate_input(source: &str, input: Input, flags: IntegrateFlags, format: Format) -> Rendered {
    let Input::Triple { components, rep, h_basis, config, .. } = input else {
        return error_output(
            format,
            source,
            CAPABILITY,
            "finite racks have no Lie integration; use `verify` for discrete rack triples",
        );
    };
    let tol = lierack::default_tolerance();
    let tolerance = flags.tolerance.or(config.tolerance).unwrap_or(1e-4);
    let scheme = flags.scheme.or(config.scheme).unwrap_or(Scheme::Central);
    let step = flags.step.or(config.step).unwrap_or(1e-4);
    let settings = IntegrationSettings {
        samples: flags.samples.or(config.samples).unwrap_or(200),
        seed: flags.seed.or(config.seed).unwrap_or(0),
        tolerance,
    };
    let result = (|| {
        let triple = components.build(tol)?;
        let cfg = DiffConfig::new(step, scheme)?;
        let opts = ModelOptions {
            rep: rep.transpose()?,
            h_basis: h_basis.transpose()?,
            radius: flags.radius.or(config.radius),
            cfg,
            tolerance: tol,
        };
        let model = build_model(triple, opts)?;
        integrate(&model, &settings)
    })();
    match result {
        Err(e) => {
            let msg = match &e {
                Error::Capability(_) => format!("{e}; add a \"faithful_rep\" section to the spec file"),
                _ => e.to_string(),
            };
            error_output(format, source, exit_code(&e), &msg)
        }
        Ok(report) => {
            let code = if report.passed { PASS } else { AXIOM };
            let out = IntegrateOutput { source, exit_code: code, tolerance, report: &report };
            let stdout = render(format, &out, |s| integrate_text(s, source, code, tolerance, &report));
            Rendered { code, stdout }
        }
    }
}

// ---------------------------------------------------------------------------
// corpus

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    StrictFromIdeal,
    Scaling,
    PerturbedInvalid,
    ConjugationRacks,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::StrictFromIdeal, Family::Scaling, Family::PerturbedInvalid, Family::ConjugationRacks];

    pub fn name(self) -> &'static str {
        match self {
            Family::StrictFromIdeal => "strict_from_ideal",
            Family::Scaling => "scaling",
            Family::PerturbedInvalid => "perturbed_invalid",
            Family::ConjugationRacks => "conjugation_racks",
        }
    }

    fn expects_valid(self) -> bool {
        self != Family::PerturbedInvalid
    }
}

#[derive(Serialize)]
struct CorpusRow {
    family: &'static str,
    index: usize,
    label: String,
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    failing_law: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    residual: Option<f64>,
    strict: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    h_max_dim: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    integrated: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_roundtrip_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    a_theta_max_residual: Option<f64>,
    expected: bool,
}

#[derive(Serialize)]
struct CorpusOutput {
    seed: u64,
    count: usize,
    rows: Vec<CorpusRow>,
    valid: usize,
    as_expected: usize,
    exit_code: u8,
}

fn generated(family: Family, seed: u64, i: usize) -> GeneratedTriple<f64> {
    let s = seed.wrapping_add(i as u64);
    match family {
        Family::StrictFromIdeal => random_triple(s, &TripleFamily::StrictFromIdeal { algebra: None, ideal: None }),
        Family::Scaling => {
            let lambda = CORPUS_LAMBDAS.get(i).copied();
            random_triple(s, &TripleFamily::ScalingFamily { lambda })
        }
        Family::PerturbedInvalid => {
            let epsilon = if i % 2 == 0 { 1e-3 } else { 1e-1 };
            random_triple(s, &TripleFamily::PerturbedInvalid { epsilon })
        }
        Family::ConjugationRacks => unreachable!("racks are not triples"),
    }
}

fn triple_row(family: Family, index: usize, g: GeneratedTriple<f64>, settings: &IntegrationSettings) -> CorpusRow {
    let tol = lierack::default_tolerance();
    let mut row = CorpusRow {
        family: family.name(),
        index,
        label: g.label.clone(),
        valid: false,
        failing_law: None,
        residual: None,
        strict: None,
        h_max_dim: None,
        integrated: None,
        max_roundtrip_residual: None,
        a_theta_max_residual: None,
        expected: false,
    };
    match g.components.build(tol) {
        Err(e) => {
            if let Error::Axiom { law, residual } = e {
                row.failing_law = Some(law);
                row.residual = Some(residual);
            } else {
                row.failing_law = Some(e.to_string());
            }
            row.expected = family == Family::PerturbedInvalid && row.failing_law.as_deref() == Some("quadratic_constraint");
        }
        Ok(triple) => {
            row.valid = true;
            row.strict = Some(is_strict(&triple, tol));
            row.h_max_dim = Some(max_strictness_subalgebra(&triple, tol).dim());
            let report = Rep::new(&g.components.algebra, g.faithful_rep.clone(), tol)
                .and_then(|rep| build_model(triple, ModelOptions { rep: Some(rep), ..Default::default() }))
                .and_then(|m| integrate(&m, settings));
            match report {
                Ok(r) => {
                    row.integrated = Some(r.passed && r.local_laws.passed && r.equivariance.passed);
                    row.max_roundtrip_residual = Some(r.max_roundtrip_residual);
                    row.a_theta_max_residual = Some(r.a_theta_max_residual);
                }
                Err(e) => {
                    row.integrated = Some(false);
                    row.failing_law = Some(e.to_string());
                }
            }
            row.expected = family.expects_valid() && row.integrated == Some(true);
        }
    }
    row
}

fn rack_row(index: usize, name: &str, g: &FiniteGroup) -> CorpusRow {
    let t = GroupRackTriple::conjugation(g);
    let report = check_group_rack_triple(&t);
    let rack = check_rack(&t.rack());
    let valid = report.passed && rack.passed;
    CorpusRow {
        family: Family::ConjugationRacks.name(),
        index,
        label: format!("conjugation:{name}"),
        valid,
        failing_law: report.first_failure().or(rack.first_failure()).map(|l| l.name.clone()),
        residual: None,
        strict: Some(t.is_strict()),
        h_max_dim: None,
        integrated: None,
        max_roundtrip_residual: None,
        a_theta_max_residual: None,
        expected: valid,
    }
}

pub fn corpus(families: &[Family], seed: u64, count: usize, samples: usize, format: Format) -> Rendered {
    let settings = IntegrationSettings { samples, seed, tolerance: 1e-4 };
    let groups = FiniteGroup::catalog();
    let mut rows = Vec::new();
    for &family in families {
        for i in 0..count {
            rows.push(match family {
                Family::ConjugationRacks => {
                    let (name, g) = &groups[(seed as usize).wrapping_add(i) % groups.len()];
                    rack_row(i, name, g)
                }
                _ => triple_row(family, i, generated(family, seed, i), &settings),
            });
        }
    }
    let valid = rows.iter().filter(|r| r.valid).count();
    let as_expected = rows.iter().filter(|r| r.expected).count();
    let exit_code = if as_expected == rows.len() { PASS } else { AXIOM };
    let out = CorpusOutput { seed, count, rows, valid, as_expected, exit_code };
    let stdout = render(format, &out, |s| {
        let _ = writeln!(s, "seed: {seed}\ncount: {count}");
        let _ = writeln!(
            s,
            "{:<18} {:>3}  {:<28} {:<5} {:<6} {:<5} {:<10} {:<10} {}",
            "family", "#", "label", "valid", "strict", "h_max", "roundtrip", "a_theta", "note"
        );
        let opt = |x: Option<f64>| x.map_or("-".to_string(), |v| format!("{v:.2e}"));
        for r in &out.rows {
            let _ = writeln!(
                s,
                "{:<18} {:>3}  {:<28} {:<5} {:<6} {:<5} {:<10} {:<10} {}",
                r.family,
                r.index,
                r.label,
                if r.valid { "yes" } else { "no" },
                r.strict.map_or("-", |x| if x { "yes" } else { "no" }),
                r.h_max_dim.map_or("-".into(), |x| x.to_string()),
                opt(r.max_roundtrip_residual),
                opt(r.a_theta_max_residual),
                r.failing_law.as_deref().map_or(String::new(), |l| format!("caught at {l}")),
            );
        }
        let _ = writeln!(s, "summary: {valid}/{} valid, {as_expected}/{} as expected", out.rows.len(), out.rows.len());
        let _ = writeln!(s, "exit_code: {exit_code}");
    });
    Rendered { code: exit_code, stdout }
}
