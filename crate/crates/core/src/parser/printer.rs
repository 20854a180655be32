use std::fmt::Write;

use crate::cas::RF;
use crate::parser::{Decl, Document, Ode, Statement};

fn keyed(out: &mut String, kw: &str, entries: &[(&str, &RF)]) {
    let parts: Vec<String> = entries.iter().map(|(k, v)| format!("{k} = {v}")).collect();
    let _ = writeln!(out, "{kw}: {};", parts.join("; "));
}

/// Canonical text of a document, one declaration or statement per line.
pub fn print(doc: &Document) -> String {
    let mut out = String::new();
    for d in &doc.decls {
        match d {
            Decl::Const(n) => {
                let _ = writeln!(out, "const {n};");
            }
            Decl::Ext {
                var,
                deps,
                derivatives,
            } => {
                let deps: Vec<String> = deps.iter().map(|v| v.to_string()).collect();
                let ders: Vec<String> = derivatives
                    .iter()
                    .map(|(v, e)| format!("d/d{v} = {e}"))
                    .collect();
                let _ = writeln!(out, "ext {var}({}): {};", deps.join(", "), ders.join(", "));
            }
            Decl::Rel(p) => {
                let _ = writeln!(out, "rel {p} = 0;");
            }
        }
    }
    for s in &doc.statements {
        match s {
            Statement::Ode(o) => {
                let tag = match o {
                    // Without y'' terms auto-detection would read a quintic.
                    Ode::Semilinear(s) if s.is_quintic_shaped() => "ode(semilinear)",
                    _ => "ode",
                };
                let _ = writeln!(out, "{tag}: {};", o.equation());
            }
            Statement::Metric(m) => keyed(&mut out, "metric", &[("p", &m.p), ("q", &m.q), ("r", &m.r)]),
            Statement::Map(m) => keyed(&mut out, "map", &[("u", &m.u), ("v", &m.v)]),
            Statement::Solution(f) => {
                let _ = writeln!(out, "solution: {f};");
            }
            Statement::Geodesic(g) => keyed(&mut out, "geodesic", &g.entries()),
            Statement::Gauge(g) => keyed(&mut out, "gauge", &[("a", &g.a), ("b", &g.b), ("e", &g.e), ("f", &g.f)]),
        }
    }
    out
}
