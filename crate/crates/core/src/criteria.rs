//! Linearizability tests: the four Lie conditions on a geodesic system, the
//! two scalar conditions on a second-order cubic equation, gauge choices and
//! the verdicts for third-order equations.

use std::fmt;

use crate::cas::{AnsatzWindow, RF};
use crate::geometry::GeodesicSystem2;
use crate::reduction::{
    extract_degenerate, extract_quintic, extract_semilinear, third_quintic, Branch, Candidate,
    Extraction, QuinticForm, Residual, SecondOrderCubic, SemilinearExtraction, SemilinearForm,
};

/// The free part `(a, b, e, f)` of a geodesic system realizing a
/// second-order equation: `h = a - 2e` and `g = f - 2b`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Gauge {
    pub a: RF,
    pub b: RF,
    pub e: RF,
    pub f: RF,
}

impl Gauge {
    pub fn system(&self, eq2: &SecondOrderCubic) -> GeodesicSystem2 {
        GeodesicSystem2 {
            a: self.a.clone(),
            b: self.b.clone(),
            c: eq2.c.clone(),
            d: eq2.d.clone(),
            e: self.e.clone(),
            f: self.f.clone(),
        }
    }

    pub fn of_system(sys: &GeodesicSystem2) -> Gauge {
        Gauge {
            a: sys.a.clone(),
            b: sys.b.clone(),
            e: sys.e.clone(),
            f: sys.f.clone(),
        }
    }

    /// Whether `h = a - 2e` and `g = f - 2b`.
    pub fn fits(&self, eq2: &SecondOrderCubic) -> bool {
        let two = RF::int(2);
        (&(&self.a - &(&two * &self.e)) - &eq2.h).is_zero()
            && (&(&self.f - &(&two * &self.b)) - &eq2.g).is_zero()
    }
}

impl fmt::Display for Gauge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a = {}, b = {}, e = {}, f = {}", self.a, self.b, self.e, self.f)
    }
}

/// Named gauge families. The search order is `AB0, BE0, EF0, AF0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaugeChoice {
    /// `b = e = 0`
    BE0,
    /// `a = f = 0`
    AF0,
    /// `a = b = 0`
    AB0,
    /// `e = f = 0`
    EF0,
}

impl GaugeChoice {
    pub const SEARCH_ORDER: [GaugeChoice; 4] =
        [GaugeChoice::AB0, GaugeChoice::BE0, GaugeChoice::EF0, GaugeChoice::AF0];

    pub fn name(&self) -> &'static str {
        match self {
            GaugeChoice::BE0 => "be0",
            GaugeChoice::AF0 => "af0",
            GaugeChoice::AB0 => "ab0",
            GaugeChoice::EF0 => "ef0",
        }
    }

    pub fn from_name(s: &str) -> Option<GaugeChoice> {
        Self::SEARCH_ORDER.into_iter().find(|g| g.name() == s)
    }

    pub fn gauge(&self, eq2: &SecondOrderCubic) -> Gauge {
        let half = RF::frac(-1, 2);
        let (h, g) = (&eq2.h, &eq2.g);
        match self {
            GaugeChoice::BE0 => Gauge {
                a: h.clone(),
                b: RF::zero(),
                e: RF::zero(),
                f: g.clone(),
            },
            GaugeChoice::AF0 => Gauge {
                a: RF::zero(),
                b: &half * g,
                e: &half * h,
                f: RF::zero(),
            },
            GaugeChoice::AB0 => Gauge {
                a: RF::zero(),
                b: RF::zero(),
                e: &half * h,
                f: g.clone(),
            },
            GaugeChoice::EF0 => Gauge {
                a: h.clone(),
                b: &half * g,
                e: RF::zero(),
                f: RF::zero(),
            },
        }
    }
}

impl fmt::Display for GaugeChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The four canonical gauges in search order.
pub fn gauge_candidates(eq2: &SecondOrderCubic) -> Vec<(GaugeChoice, Gauge)> {
    GaugeChoice::SEARCH_ORDER
        .iter()
        .map(|g| (*g, g.gauge(eq2)))
        .collect()
}

/// Lie's conditions on a geodesic system; all vanish iff its connection is
/// flat.
pub fn lie_residuals(sys: &GeodesicSystem2) -> [Residual; 4] {
    let GeodesicSystem2 { a, b, c, d, e, f } = sys;
    let r1 = &(&(&a.dy() - &b.dx()) + &(b * e)) - &(c * d);
    let r2 = &(&(&b.dy() - &c.dx()) + &(&(a * c) - &b.pow(2))) + &(&(b * f) - &(c * e));
    let r3 = &(&(&d.dy() - &e.dx()) - &(&(a * e) - &(b * d))) - &(&(d * f) - &e.pow(2));
    let r4 = &(b + f).dx() - &(a + e).dy();
    [
        Residual::new("lie-1", r1),
        Residual::new("lie-2", r2),
        Residual::new("lie-3", r3),
        Residual::new("lie-4", r4),
    ]
}

/// The two gauge-independent conditions on `(c, g, h, d)`.
///
/// These are Lie's conditions rewritten for `y'' + c y'^3 - g y'^2 + h y'
/// - d = 0`. They include the terms `6 c d_y` and `6 d c_x`, which the
/// commonly quoted form of this pair leaves out; both vanish when `d = 0`.
pub fn scalar_residuals(eq2: &SecondOrderCubic) -> [Residual; 2] {
    let SecondOrderCubic { c, g, h, d } = eq2;
    let n = RF::int;
    let s1 = [
        &n(3) * &(c * h).dx(),
        &n(3) * &(d * &c.dy()),
        &n(6) * &(c * &d.dy()),
        -(&n(2) * &(g * &g.dx())),
        -(g * &h.dy()),
        -(&n(3) * &c.dx().dx()),
        -(&n(2) * &g.dx().dy()),
        -h.dy().dy(),
    ];
    let s2 = [
        &n(3) * &(d * g).dy(),
        &n(3) * &(c * &d.dx()),
        &n(6) * &(d * &c.dx()),
        -(&n(2) * &(h * &h.dy())),
        -(h * &g.dx()),
        -(&n(3) * &d.dy().dy()),
        -(&n(2) * &h.dx().dy()),
        -g.dx().dx(),
    ];
    [
        Residual::new("scalar-1", s1.into_iter().sum()),
        Residual::new("scalar-2", s2.into_iter().sum()),
    ]
}

/// Conditions for the gauge `b = e = 0`, together with the two combined
/// identities `g_x = δ/3 - gh` and `h_y = δ/3 - gh`.
pub fn special_gauge_residuals_be0(eq2: &SecondOrderCubic) -> [Residual; 6] {
    let SecondOrderCubic { c, g, h, d } = eq2;
    let delta = third_quintic(eq2).delta;
    let target = &(&delta / &RF::int(3)) - &(g * h);
    [
        Residual::new("be0-1", &h.dy() - &(c * d)),
        Residual::new("be0-2", &c.dx() - &(c * h)),
        Residual::new("be0-3", &d.dy() - &(d * g)),
        Residual::new("be0-4", &g.dx() - &h.dy()),
        Residual::new("be0-delta-gx", &g.dx() - &target),
        Residual::new("be0-delta-hy", &h.dy() - &target),
    ]
}

/// The auxiliary-variable form of the scalar criteria, evaluated with
/// `g = f - 2b`, `h = a - 2e`. Reported for comparison only.
pub fn auxiliary_residuals_15a(sys: &GeodesicSystem2) -> [Residual; 4] {
    let GeodesicSystem2 { a, b, c, d, e, f } = sys;
    let two = RF::int(2);
    let three = RF::int(3);
    let g = f - &(&two * b);
    let h = a - &(&two * e);
    let be3 = &three * &(b * e);
    let cd3 = &three * &(c * d);
    let r1 = &(&(&(&(&three * &b.dx()) - &(&two * &g.dx())) + &h.dy()) - &be3) - &cd3;
    let r2 = &(&(&(&(&b.dy() - &c.dx()) + &b.pow(2)) + &(b * &g)) + &(c * &h)) - &(c * e);
    let r3 = &(&(&(&(&d.dy() + &e.dx()) - &(b * d)) - &(d * &g)) - &e.pow(2)) + &(e * &h);
    let r4 = &(&(&(&(&three * &e.dy()) - &(&two * &h.dy())) - &g.dx()) + &be3) + &cd3;
    [
        Residual::new("aux-1", r1),
        Residual::new("aux-2", r2),
        Residual::new("aux-3", r3),
        Residual::new("aux-4", r4),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Linearizable,
    NotLinearizable,
    NotInClass,
    Undecided,
}

impl Status {
    pub fn name(&self) -> &'static str {
        match self {
            Status::Linearizable => "linearizable",
            Status::NotLinearizable => "not-linearizable",
            Status::NotInClass => "not-in-class",
            Status::Undecided => "undecided",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Status::Linearizable => 0,
            Status::NotLinearizable => 1,
            Status::NotInClass => 2,
            Status::Undecided => 3,
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Result of testing one candidate second-order equation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateReport {
    pub candidate: Candidate,
    pub scalar: Vec<Residual>,
    /// First gauge whose geodesic system satisfies the Lie conditions.
    pub witness: Option<(String, Gauge)>,
}

impl CandidateReport {
    pub fn passes(&self) -> bool {
        self.candidate.passes() && self.scalar.iter().all(Residual::holds)
    }

    pub fn residuals(&self) -> impl Iterator<Item = &Residual> {
        self.candidate.checks.iter().chain(self.scalar.iter())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub candidates: Vec<CandidateReport>,
    pub caveats: Vec<String>,
    /// Value chosen for the free constant in `d` (semilinear input only).
    pub d_constant: Option<RF>,
}

impl Verdict {
    fn bare(status: Status, caveat: String) -> Verdict {
        Verdict {
            status,
            candidates: Vec::new(),
            caveats: vec![caveat],
            d_constant: None,
        }
    }

    /// Candidates that satisfy every condition.
    pub fn accepted(&self) -> impl Iterator<Item = &CandidateReport> {
        self.candidates.iter().filter(|c| c.passes())
    }

    /// Names of failing residuals across all candidates, deduplicated.
    pub fn failing_names(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for c in &self.candidates {
            for r in c.residuals().filter(|r| !r.holds()) {
                if !out.contains(&r.name) {
                    out.push(r.name.clone());
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerdictOptions {
    /// Second-order equation to try when `c` vanishes.
    pub hint: Option<SecondOrderCubic>,
    /// Gauges tried after the canonical ones.
    pub extra_gauges: Vec<(String, Gauge)>,
    /// Restrict the witness search to one canonical gauge.
    pub only_gauge: Option<GaugeChoice>,
    /// Try only `extra_gauges`.
    pub skip_canonical: bool,
    pub windows: Vec<AnsatzWindow>,
}

impl VerdictOptions {
    pub fn windows(&self) -> Vec<AnsatzWindow> {
        if self.windows.is_empty() {
            AnsatzWindow::escalation().to_vec()
        } else {
            self.windows.clone()
        }
    }
}

/// First gauge, in search order, whose geodesic system is flat.
pub fn find_witness(eq2: &SecondOrderCubic, opts: &VerdictOptions) -> Option<(String, Gauge)> {
    let mut tries: Vec<(String, Gauge)> = Vec::new();
    match opts.only_gauge {
        _ if opts.skip_canonical => {}
        Some(g) => tries.push((g.name().to_string(), g.gauge(eq2))),
        None => tries.extend(
            gauge_candidates(eq2)
                .into_iter()
                .map(|(n, g)| (n.name().to_string(), g)),
        ),
    }
    tries.extend(opts.extra_gauges.iter().filter(|(_, g)| g.fits(eq2)).cloned());
    tries
        .into_iter()
        .find(|(_, g)| lie_residuals(&g.system(eq2)).iter().all(Residual::holds))
}

fn assess(candidate: Candidate, opts: &VerdictOptions) -> CandidateReport {
    let scalar = scalar_residuals(&candidate.eq2).to_vec();
    let mut report = CandidateReport {
        candidate,
        scalar,
        witness: None,
    };
    if report.passes() {
        report.witness = find_witness(&report.candidate.eq2, opts);
    }
    report
}

fn pole_caveat(eq2: &SecondOrderCubic) -> Option<String> {
    if eq2.c.is_zero() || eq2.c.as_constant().is_some() {
        return None;
    }
    Some(format!(
        "extracted coefficients may have poles where c = {} vanishes",
        eq2.c
    ))
}

fn finish(reports: Vec<CandidateReport>, fallback: Status, mut caveats: Vec<String>) -> Verdict {
    let status = if reports.iter().any(CandidateReport::passes) {
        Status::Linearizable
    } else {
        fallback
    };
    for r in reports.iter().filter(|r| r.passes()) {
        if let Some(c) = pole_caveat(&r.candidate.eq2) {
            if !caveats.contains(&c) {
                caveats.push(c);
            }
        }
        if r.witness.is_none() {
            caveats.push(format!(
                "branch {}: no flat gauge among the tried choices",
                r.candidate.branch
            ));
        }
    }
    Verdict {
        status,
        candidates: reports,
        caveats,
        d_constant: None,
    }
}

pub fn verdict_quintic(q: &QuinticForm, opts: &VerdictOptions) -> Verdict {
    match extract_quintic(q) {
        Extraction::NotInClass(why) => Verdict::bare(Status::NotInClass, why),
        Extraction::Candidates(cs) => {
            let reports = cs.into_iter().map(|c| assess(c, opts)).collect();
            finish(reports, Status::NotLinearizable, Vec::new())
        }
        Extraction::Degenerate => {
            let window = opts.windows()[0];
            let cs = extract_degenerate(q, opts.hint.as_ref(), &window);
            let with_hint = opts.hint.is_some();
            let reports: Vec<CandidateReport> = cs.into_iter().map(|c| assess(c, opts)).collect();
            if with_hint {
                let caveats = vec!["c = 0: decided for the supplied hint only".to_string()];
                finish(reports, Status::NotLinearizable, caveats)
            } else {
                let caveats = vec![if reports.is_empty() {
                    "c = 0: no candidate found in the ansatz window; supply a hint".to_string()
                } else {
                    "c = 0: candidates found by bounded search".to_string()
                }];
                finish(reports, Status::Undecided, caveats)
            }
        }
    }
}

/// Chooses the additive constant `d0` in `d` so that the scalar conditions
/// hold, if a constant does it. The conditions are affine in `d0`.
fn resolve_d_constant(eq2: &SecondOrderCubic) -> Option<RF> {
    let r0 = scalar_residuals(eq2);
    if r0.iter().all(Residual::holds) {
        return Some(RF::zero());
    }
    let mut shifted = eq2.clone();
    shifted.d = &shifted.d + &RF::one();
    let r1 = scalar_residuals(&shifted);
    let mut chosen: Option<RF> = None;
    for (a, b) in r0.iter().zip(r1.iter()) {
        let slope = &b.value - &a.value;
        if slope.is_zero() {
            if !a.holds() {
                return None;
            }
            continue;
        }
        let d0 = -(&a.value / &slope);
        if !d0.is_coordinate_free() {
            return None;
        }
        match &chosen {
            Some(c) if c != &d0 => return None,
            _ => chosen = Some(d0),
        }
    }
    chosen
}

pub fn verdict_semilinear(s: &SemilinearForm, opts: &VerdictOptions) -> Verdict {
    match extract_semilinear(s, &opts.windows()) {
        SemilinearExtraction::NotInClass(why, checks) => {
            let mut v = Verdict::bare(Status::NotInClass, why);
            let candidate = Candidate {
                eq2: SecondOrderCubic::zero(),
                branch: Branch::Semilinear,
                checks,
            };
            v.candidates.push(CandidateReport {
                candidate,
                scalar: Vec::new(),
                witness: None,
            });
            v
        }
        SemilinearExtraction::Undecided(why, c) => {
            let report = CandidateReport {
                candidate: c,
                scalar: Vec::new(),
                witness: None,
            };
            Verdict {
                status: Status::Undecided,
                candidates: vec![report],
                caveats: vec![why],
                d_constant: None,
            }
        }
        SemilinearExtraction::Found(mut c) => {
            if !c.passes() {
                let report = assess(c, opts);
                return finish(vec![report], Status::NotLinearizable, Vec::new());
            }
            let d0 = resolve_d_constant(&c.eq2);
            if let Some(d0) = &d0 {
                c.eq2.d = &c.eq2.d + d0;
            }
            let report = assess(c, opts);
            let mut v = finish(
                vec![report],
                Status::NotLinearizable,
                vec!["d is determined up to an additive constant".to_string()],
            );
            v.d_constant = d0;
            v
        }
    }
}

/// Verdict for a second-order cubic equation given directly.
pub fn verdict_second(eq2: &SecondOrderCubic, opts: &VerdictOptions) -> Verdict {
    let candidate = Candidate {
        eq2: eq2.clone(),
        branch: Branch::Given,
        checks: Vec::new(),
    };
    let report = assess(candidate, opts);
    finish(vec![report], Status::NotLinearizable, Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> RF {
        RF::x()
    }
    fn y() -> RF {
        RF::y()
    }

    #[test]
    fn rational_system_gauge_is_flat() {
        let sys = GeodesicSystem2 {
            a: RF::zero(),
            b: RF::zero(),
            c: -(&x() / &y().pow(2)),
            d: RF::zero(),
            e: -x().inv().unwrap(),
            f: y().inv().unwrap(),
        };
        assert!(lie_residuals(&sys).iter().all(Residual::holds));
    }

    #[test]
    fn falsification_control() {
        let sys = GeodesicSystem2 {
            a: y(),
            ..Default::default()
        };
        let r = lie_residuals(&sys);
        assert_eq!(r[0].value, RF::one());
    }

    #[test]
    fn non_linearizable_second_order() {
        let eq2 = SecondOrderCubic {
            d: &x() * &y().pow(2),
            ..Default::default()
        };
        let r = scalar_residuals(&eq2);
        assert!(r[0].holds());
        assert_eq!(r[1].value, &RF::int(-6) * &x());
    }

    #[test]
    fn be0_fails_for_trig_seed() {
        let eq2 = SecondOrderCubic {
            c: x(),
            g: RF::zero(),
            h: &RF::int(2) / &x(),
            d: RF::zero(),
        };
        let r = special_gauge_residuals_be0(&eq2);
        assert_eq!(r[1].value, RF::int(-1));
    }
}
