//! Commands behind the `geolin3` binary. Each command turns input text into
//! a [`Report`]; the binary only handles files, flags and exit codes.

pub mod report;

use std::str::FromStr;

use geolin3::cas::{AnsatzWindow, RF};
use geolin3::criteria::{
    lie_residuals, verdict_quintic, verdict_second, verdict_semilinear, Gauge, GaugeChoice, Status,
    Verdict, VerdictOptions,
};
use geolin3::geometry::GeodesicSystem2;
use geolin3::parser::{self, Document, Ode, OdeForm};
use geolin3::reduction::{project, scalar_of, third_quintic, third_semilinear, Residual, SecondOrderCubic};
use geolin3::solver::{
    flat_coordinates_escalating, flat_pullback_generator, induced_equation, recover_metric_escalating,
    seeded_sample, select_metric, solution_family, verify_solution, verify_transformation, PointMap,
    SolutionFamily,
};

pub use report::Report;
use report::{CandidateOut, Check, GaugeOut, GeneratedOut, MetricOut, SecondOrder, SolutionOut, TransformationOut};

pub const EXIT_INPUT_ERROR: i32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FormFlag {
    #[default]
    Auto,
    Quintic,
    Semilinear,
    Second,
    Geodesic,
}

impl FromStr for FormFlag {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "auto" => FormFlag::Auto,
            "quintic" => FormFlag::Quintic,
            "semilinear" => FormFlag::Semilinear,
            "second" => FormFlag::Second,
            "geodesic" => FormFlag::Geodesic,
            _ => return Err(format!("unknown form {s:?}; expected auto, quintic, semilinear, second or geodesic")),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum GaugeFlag {
    #[default]
    Auto,
    Fixed(GaugeChoice),
    /// The `gauge:` statement of the input file.
    File,
}

impl FromStr for GaugeFlag {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(GaugeFlag::Auto),
            "file" => Ok(GaugeFlag::File),
            _ => GaugeChoice::from_name(s)
                .map(GaugeFlag::Fixed)
                .ok_or_else(|| format!("unknown gauge {s:?}; expected auto, be0, af0, ab0, ef0 or file")),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub form: FormFlag,
    pub gauge: GaugeFlag,
    pub window: Option<AnsatzWindow>,
    pub hint: Option<SecondOrderCubic>,
}

impl Options {
    fn windows(&self) -> Vec<AnsatzWindow> {
        match self.window {
            Some(w) => vec![w],
            None => AnsatzWindow::escalation().to_vec(),
        }
    }
}

/// Reads a hint file: a second-order equation `y'' - g y'^2 + h y' - d = 0`.
pub fn parse_hint(src: &str) -> Result<SecondOrderCubic, String> {
    let doc = parser::parse(src).map_err(|e| e.to_string())?;
    match doc.ode() {
        Some(Ode::Second(e)) => Ok(e.clone()),
        _ => Err("hint file must contain a second-order 'ode:' statement".into()),
    }
}

enum Subject {
    Ode(Ode),
    Geodesic(GeodesicSystem2),
}

fn input_error(mut report: Report, msg: String) -> Report {
    report.status = "input-error".into();
    report.exit_code = EXIT_INPUT_ERROR;
    report.error = Some(msg);
    report
}

fn load(src: &str, report: &mut Report) -> Result<Document, String> {
    let doc = parser::parse(src).map_err(|e| e.to_string())?;
    report.input = parser::print(&doc);
    Ok(doc)
}

fn subject(doc: &Document, form: FormFlag) -> Result<Subject, String> {
    let want = match form {
        FormFlag::Auto => None,
        FormFlag::Quintic => Some(OdeForm::Quintic),
        FormFlag::Semilinear => Some(OdeForm::Semilinear),
        FormFlag::Second => Some(OdeForm::Second),
        FormFlag::Geodesic => {
            return doc
                .geodesic()
                .cloned()
                .map(Subject::Geodesic)
                .ok_or_else(|| "--form geodesic needs a 'geodesic:' statement".into())
        }
    };
    match (doc.ode(), want) {
        (Some(o), None) => Ok(Subject::Ode(o.clone())),
        (Some(o), Some(f)) if o.form() == f => Ok(Subject::Ode(o.clone())),
        (Some(o), Some(f)) => Ode::from_equation(&o.equation(), Some(f))
            .map(Subject::Ode)
            .map_err(|e| format!("equation does not have the {} shape: {e}", f.name())),
        (None, None) => doc
            .geodesic()
            .cloned()
            .map(Subject::Geodesic)
            .ok_or_else(|| "input has neither an 'ode:' nor a 'geodesic:' statement".into()),
        (None, Some(_)) => Err("input has no 'ode:' statement".into()),
    }
}

fn verdict_options(doc: &Document, opts: &Options) -> Result<VerdictOptions, String> {
    let mut v = VerdictOptions {
        hint: opts.hint.clone(),
        windows: opts.windows(),
        ..Default::default()
    };
    match opts.gauge {
        GaugeFlag::Auto => {
            if let Some(g) = doc.gauge() {
                v.extra_gauges.push(("file".into(), g.clone()));
            }
        }
        GaugeFlag::Fixed(c) => v.only_gauge = Some(c),
        GaugeFlag::File => {
            let g = doc.gauge().ok_or("--gauge file needs a 'gauge:' statement")?;
            v.extra_gauges.push(("file".into(), g.clone()));
            v.skip_canonical = true;
        }
    }
    Ok(v)
}

fn check_of(r: &Residual) -> Check {
    Check {
        name: r.name.clone(),
        holds: r.holds(),
        value: r.value.to_string(),
    }
}

fn second_order_out(e: &SecondOrderCubic) -> SecondOrder {
    SecondOrder {
        c: e.c.to_string(),
        g: e.g.to_string(),
        h: e.h.to_string(),
        d: e.d.to_string(),
        equation: e.to_jets().to_string(),
    }
}

fn gauge_out(name: &str, g: &Gauge) -> GaugeOut {
    GaugeOut {
        name: name.to_string(),
        a: g.a.to_string(),
        b: g.b.to_string(),
        e: g.e.to_string(),
        f: g.f.to_string(),
    }
}

fn fill_verdict(report: &mut Report, v: &Verdict) {
    report.status = v.status.name().into();
    report.exit_code = v.status.exit_code();
    report.candidates = v
        .candidates
        .iter()
        .map(|c| CandidateOut {
            branch: c.candidate.branch.to_string(),
            passes: c.passes(),
            second_order: second_order_out(&c.candidate.eq2),
            checks: c.residuals().map(check_of).collect(),
            witness_gauge: c.witness.as_ref().map(|(n, _)| n.clone()),
        })
        .collect();
    report.d_constant = v.d_constant.as_ref().map(RF::to_string);
    if let Some((n, g)) = v.accepted().find_map(|c| c.witness.as_ref()) {
        report.gauge = Some(gauge_out(n, g));
    }
    report.caveats.extend(v.caveats.iter().cloned());
}

struct Decided {
    report: Report,
    doc: Document,
    subject: Subject,
    /// Accepted second-order equation with a flat gauge system.
    witness: Option<(SecondOrderCubic, GeodesicSystem2)>,
}

fn decide(command: &str, src: &str, opts: &Options) -> Result<Decided, Report> {
    let mut report = Report::new(command);
    let doc = match load(src, &mut report) {
        Ok(d) => d,
        Err(e) => return Err(input_error(report, e)),
    };
    let subj = match subject(&doc, opts.form) {
        Ok(s) => s,
        Err(e) => return Err(input_error(report, e)),
    };
    let vopts = match verdict_options(&doc, opts) {
        Ok(v) => v,
        Err(e) => return Err(input_error(report, e)),
    };
    let mut witness = None;
    match &subj {
        Subject::Ode(ode) => {
            report.form = Some(ode.form().name().into());
            let v = match ode {
                Ode::Quintic(q) => verdict_quintic(q, &vopts),
                Ode::Semilinear(s) => verdict_semilinear(s, &vopts),
                Ode::Second(e) => verdict_second(e, &vopts),
            };
            fill_verdict(&mut report, &v);
            witness = v.accepted().find_map(|c| {
                c.witness
                    .as_ref()
                    .map(|(_, g)| (c.candidate.eq2.clone(), g.system(&c.candidate.eq2)))
            });
        }
        Subject::Geodesic(sys) => {
            report.form = Some("geodesic".into());
            let lie = lie_residuals(sys);
            report.checks = lie.iter().map(check_of).collect();
            let status = if lie.iter().all(Residual::holds) {
                witness = Some((scalar_of(&project(&sys.connection())), sys.clone()));
                Status::Linearizable
            } else {
                Status::NotLinearizable
            };
            report.status = status.name().into();
            report.exit_code = status.exit_code();
        }
    }
    Ok(Decided {
        report,
        doc,
        subject: subj,
        witness,
    })
}

/// `check`: verdict only.
pub fn check(src: &str, opts: &Options) -> Report {
    match decide("check", src, opts) {
        Ok(d) => d.report,
        Err(r) => r,
    }
}

fn subject_equation(subj: &Subject, fallback: &SecondOrderCubic) -> geolin3::reduction::JetEquation {
    match subj {
        Subject::Ode(o) => o.equation(),
        Subject::Geodesic(_) => fallback.to_jets(),
    }
}

/// Whether the straight lines of `map` are exactly the solutions of the
/// subject equation. Returns the named check.
fn map_equation_check(map: &PointMap, subj: &Subject, eq2: Option<&SecondOrderCubic>) -> Check {
    let induced = match induced_equation(map) {
        Ok(e) => e,
        Err(e) => {
            return Check {
                name: "map-equation".into(),
                holds: false,
                value: e.to_string(),
            }
        }
    };
    let diffs: Vec<(String, RF)> = match subj {
        Subject::Ode(Ode::Quintic(q)) => {
            let t = third_quintic(&induced);
            t.entries()
                .iter()
                .zip(q.entries().iter())
                .map(|((n, a), (_, b))| (n.to_string(), *a - *b))
                .collect()
        }
        Subject::Ode(Ode::Semilinear(s)) => {
            let t = third_semilinear(&induced);
            t.entries()
                .iter()
                .zip(s.entries().iter())
                .map(|((n, a), (_, b))| (n.to_string(), *a - *b))
                .collect()
        }
        Subject::Ode(Ode::Second(e)) => induced
            .entries()
            .iter()
            .zip(e.entries().iter())
            .map(|((n, a), (_, b))| (n.to_string(), *a - *b))
            .collect(),
        Subject::Geodesic(_) => {
            let e = eq2.cloned().unwrap_or_default();
            induced
                .entries()
                .iter()
                .zip(e.entries().iter())
                .map(|((n, a), (_, b))| (n.to_string(), *a - *b))
                .collect()
        }
    };
    let bad: Vec<String> = diffs
        .iter()
        .filter(|(_, d)| !d.is_zero())
        .map(|(n, d)| format!("{n}: {d}"))
        .collect();
    Check {
        name: "map-equation".into(),
        holds: bad.is_empty(),
        value: if bad.is_empty() { "0".into() } else { bad.join("; ") },
    }
}

fn solution_check(family: &SolutionFamily, eq: &geolin3::reduction::JetEquation) -> Check {
    match verify_solution(family, eq) {
        Ok(c) => Check {
            name: "solution".into(),
            holds: c.ok,
            value: c.remainder.to_string(),
        },
        Err(e) => Check {
            name: "solution".into(),
            holds: false,
            value: e.to_string(),
        },
    }
}

const EXTENSION_HINT: &str = "transformation not found in the ansatz window; if it involves \
non-rational functions, declare extension symbols (for example `ext s(y): d/dy = c; \
ext c(y): d/dy = -s; rel s^2 + c^2 = 1;`) and supply a `map:` statement";

/// `linearize`: verdict, then metric, flat coordinates, map and solution.
pub fn linearize(src: &str, opts: &Options) -> Report {
    let d = match decide("linearize", src, opts) {
        Ok(d) => d,
        Err(r) => return r,
    };
    let Decided {
        mut report,
        doc,
        subject: subj,
        witness,
    } = d;
    if report.status != Status::Linearizable.name() {
        return report;
    }
    let Some((eq2, system)) = witness else {
        report
            .caveats
            .push("no flat gauge found; metric and transformation were not attempted".into());
        return report;
    };
    let windows = opts.windows();

    let selected = match recover_metric_escalating(&system, &windows) {
        Ok((basis, window)) => match select_metric(&basis) {
            Ok(sel) => {
                report.metric = Some(MetricOut {
                    status: "found".into(),
                    window: window.to_string(),
                    basis_dimension: basis.len(),
                    p: Some(sel.metric.p.to_string()),
                    q: Some(sel.metric.q.to_string()),
                    r: Some(sel.metric.r.to_string()),
                    det: Some(sel.det.to_string()),
                    definite: Some(sel.definite),
                });
                Some(sel)
            }
            Err(e) => {
                report.metric = Some(MetricOut {
                    status: "degenerate".into(),
                    window: window.to_string(),
                    basis_dimension: basis.len(),
                    ..Default::default()
                });
                report.caveats.push(e.to_string());
                None
            }
        },
        Err(e) => {
            report.metric = Some(MetricOut {
                status: "not-found-in-ansatz".into(),
                window: windows.last().expect("windows").to_string(),
                ..Default::default()
            });
            report.caveats.push(e.to_string());
            None
        }
    };

    let mut map: Option<PointMap> = None;
    let mut transformation = TransformationOut::default();
    match flat_coordinates_escalating(&system, &windows) {
        Ok(fc) => {
            transformation.window = Some(fc.window.to_string());
            transformation.flat_dimension = Some(fc.dimension);
            match fc.map {
                Some(m) => {
                    transformation.status = "found".into();
                    map = Some(m);
                }
                None => transformation.status = "not-found-in-ansatz".into(),
            }
        }
        Err(e) => {
            transformation.status = "not-found-in-ansatz".into();
            report.caveats.push(e.to_string());
        }
    }
    if map.is_none() {
        if let Some(m) = doc.map() {
            transformation.status = "given".into();
            map = Some(m.clone());
        } else {
            report.caveats.push(EXTENSION_HINT.into());
        }
    }
    if let Some(m) = &map {
        transformation.map = Some(m.to_string());
        let eq_check = map_equation_check(m, &subj, Some(&eq2));
        if let Some(sel) = &selected {
            let t = verify_transformation(m, &sel.metric);
            if t.ok {
                transformation.lambda = t.lambda.as_ref().map(RF::to_string);
            }
        }
        transformation.verified = Some(eq_check.holds);
        report.checks.push(eq_check);
    }
    report.transformation = Some(transformation);

    let equation = subject_equation(&subj, &eq2);
    let family = match (&map, doc.solution()) {
        (Some(m), _) => Some(solution_family(m)),
        (None, Some(f)) => Some(f.clone()),
        (None, None) => None,
    };
    if let Some(f) = family {
        let c = solution_check(&f, &equation);
        report.solution = Some(SolutionOut {
            family: f.to_string(),
            verified: c.holds,
        });
        report.checks.push(c);
    }
    report
}

/// `verify`: checks a supplied map and/or solution family against the
/// equation.
pub fn verify(src: &str, opts: &Options) -> Report {
    let mut report = Report::new("verify");
    let doc = match load(src, &mut report) {
        Ok(d) => d,
        Err(e) => return input_error(report, e),
    };
    let subj = match subject(&doc, opts.form) {
        Ok(s) => s,
        Err(e) => return input_error(report, e),
    };
    if doc.map().is_none() && doc.solution().is_none() {
        return input_error(report, "nothing to verify: supply a 'map:' and/or 'solution:' statement".into());
    }
    let eq2 = match &subj {
        Subject::Geodesic(sys) => Some(scalar_of(&project(&sys.connection()))),
        Subject::Ode(o) => {
            report.form = Some(o.form().name().into());
            None
        }
    };
    if let Subject::Geodesic(_) = subj {
        report.form = Some("geodesic".into());
    }
    if let Some(m) = doc.map() {
        let jac = m.jacobian();
        report.checks.push(Check {
            name: "map-jacobian".into(),
            holds: !jac.is_zero(),
            value: jac.to_string(),
        });
        let eq_check = map_equation_check(m, &subj, eq2.as_ref());
        let mut t = TransformationOut {
            status: "given".into(),
            map: Some(m.to_string()),
            verified: Some(eq_check.holds),
            ..Default::default()
        };
        report.checks.push(eq_check);
        if let Some(metric) = doc.metric() {
            let tc = verify_transformation(m, metric);
            t.lambda = tc.lambda.as_ref().map(RF::to_string);
            let failing: Vec<String> = tc
                .residuals
                .iter()
                .filter(|r| !r.holds())
                .map(|r| format!("{}: {}", r.name, r.value))
                .collect();
            report.checks.push(Check {
                name: "map-metric".into(),
                holds: tc.ok,
                value: if failing.is_empty() {
                    tc.lambda.map_or("no lambda".into(), |l| format!("lambda = {l}"))
                } else {
                    failing.join("; ")
                },
            });
        }
        report.transformation = Some(t);
    }
    if let Some(f) = doc.solution() {
        let equation = subject_equation(&subj, &eq2.clone().unwrap_or_default());
        let c = solution_check(f, &equation);
        report.solution = Some(SolutionOut {
            family: f.to_string(),
            verified: c.holds,
        });
        report.checks.push(c);
    }
    let ok = report.checks.iter().all(|c| c.holds);
    report.status = if ok { "verified" } else { "failed" }.into();
    report.exit_code = if ok { 0 } else { 1 };
    report
}

fn generated(eq2: &SecondOrderCubic, gauge: Option<&Gauge>, map: Option<&PointMap>, seed: Option<u64>) -> GeneratedOut {
    GeneratedOut {
        seed,
        map: map.map(PointMap::to_string),
        second_order: second_order_out(eq2),
        gauge: gauge.map(Gauge::to_string),
        quintic: third_quintic(eq2).to_jets().to_string(),
        semilinear: third_semilinear(eq2).to_jets().to_string(),
        solution: map.map(|m| solution_family(m).to_string()),
    }
}

/// `generate` from an input file holding a `map:`, a second-order `ode:`
/// or a `geodesic:` statement.
pub fn generate(src: &str) -> Report {
    let mut report = Report::new("generate");
    let doc = match load(src, &mut report) {
        Ok(d) => d,
        Err(e) => return input_error(report, e),
    };
    let out = if let Some(m) = doc.map() {
        match flat_pullback_generator(m) {
            Ok(s) => {
                let eq2 = scalar_of(&project(&s.system.connection()));
                generated(&eq2, Some(&Gauge::of_system(&s.system)), Some(m), None)
            }
            Err(e) => return input_error(report, e.to_string()),
        }
    } else if let Some(Ode::Second(e)) = doc.ode() {
        generated(e, doc.gauge(), None, None)
    } else if let Some(sys) = doc.geodesic() {
        let eq2 = scalar_of(&project(&sys.connection()));
        generated(&eq2, Some(&Gauge::of_system(sys)), None, None)
    } else {
        return input_error(
            report,
            "generate needs a 'map:', a second-order 'ode:' or a 'geodesic:' statement".into(),
        );
    };
    report.generated.push(out);
    report.status = "generated".into();
    report
}

/// `generate --seed N --count K`: random flat pullbacks for seeds
/// `N..N+K`, in seed order.
pub fn generate_seeds(seed: u64, count: u64) -> Report {
    let mut report = Report::new("generate");
    for s in seed..seed.saturating_add(count) {
        let sample = seeded_sample(s);
        let eq2 = scalar_of(&project(&sample.system.connection()));
        report
            .generated
            .push(generated(&eq2, Some(&Gauge::of_system(&sample.system)), Some(&sample.map), Some(s)));
    }
    report.status = "generated".into();
    report
}
