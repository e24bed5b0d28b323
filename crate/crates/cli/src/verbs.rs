//! One function per verb, each producing a [`Report`].

use std::collections::BTreeMap;

use crossbraid::cohomology::Cochain;
use crossbraid::pointed::{self, PointedError};
use crossbraid::skeletal::{
    self, pentagon_check, BraidingTable, CrossedContext, FusionData, GActionData, IdAutos, Scope, SolveStats,
    Trivialization, VerifyReport,
};
use crossbraid::tycat::{self, Totals, TyError};
use crossbraid::{BigRational, Root, TyCategory};
use serde::Serialize;
use serde_json::{json, Value};

use crate::instance::Instance;
use crate::Failure;

#[derive(Serialize)]
pub struct Report {
    pub verb: &'static str,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub instance: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub method: Option<&'static str>,
    pub summary: String,
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub totals: Option<Totals>,
    pub items: Value,
    /// what was checked or searched, so that diffs of reports are meaningful
    pub transcript: Value,
    #[serde(skip)]
    pub lines: Vec<String>,
}

impl Report {
    fn new(verb: &'static str, inst: Option<&Instance>) -> Self {
        Report {
            verb,
            instance: inst.map_or(Value::Null, Instance::describe),
            method: None,
            summary: String::new(),
            ok: true,
            witness: None,
            count: None,
            totals: None,
            items: Value::Array(Vec::new()),
            transcript: Value::Null,
            lines: Vec::new(),
        }
    }

    pub fn text(&self) -> String {
        let mut out = format!("{}\n", self.summary);
        for l in &self.lines {
            out.push_str("  ");
            out.push_str(l);
            out.push('\n');
        }
        if let Some(w) = &self.witness {
            out.push_str(&format!("witness: {w}\n"));
        }
        if !self.transcript.is_null() {
            out.push_str(&format!("transcript: {}\n", self.transcript));
        }
        out
    }
}

impl From<TyError> for Failure {
    fn from(e: TyError) -> Self {
        match e {
            TyError::TooLarge(_) => Failure::input(e),
            e => Failure::Verification(e.to_string()),
        }
    }
}

impl From<PointedError> for Failure {
    fn from(e: PointedError) -> Self {
        match e {
            PointedError::TooLarge(_) => Failure::input(e),
            e => Failure::Verification(e.to_string()),
        }
    }
}

impl From<skeletal::SkeletalError> for Failure {
    fn from(e: skeletal::SkeletalError) -> Self {
        Failure::Verification(e.to_string())
    }
}

impl From<crossbraid::cohomology::CohomologyError> for Failure {
    fn from(e: crossbraid::cohomology::CohomologyError) -> Self {
        Failure::Verification(e.to_string())
    }
}

fn method(brute: bool) -> &'static str {
    if brute {
        "brute-force"
    } else {
        "formula"
    }
}

fn render_table(fd: &FusionData, t: &BraidingTable) -> String {
    t.iter()
        .map(|(x, y, z, v)| format!("c({},{};{})={v}", fd.label(x), fd.label(y), fd.label(z)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn render_values(fd: &FusionData, vals: &[Root]) -> String {
    vals.iter().enumerate().map(|(x, v)| format!("{}:{v}", fd.label(x))).collect::<Vec<_>>().join(" ")
}

fn stats(s: &SolveStats) -> Value {
    json!({ "search": s })
}

/// Sums the per-diagram counts of several verification runs; the first
/// failure is returned as a witness.
#[derive(Default)]
struct Tally {
    checked: BTreeMap<&'static str, usize>,
    runs: usize,
    failure: Option<String>,
}

impl Tally {
    fn add(&mut self, r: &VerifyReport, what: impl FnOnce() -> String) {
        self.runs += 1;
        for (k, v) in &r.checked {
            *self.checked.entry(k).or_default() += v;
        }
        if !r.holds && self.failure.is_none() {
            let at = r.failure.map(|i| i.to_string()).unwrap_or_default();
            self.failure = Some(format!("{} fails at {at}", what()));
        }
    }

    fn finish(self, report: &mut Report) {
        report.ok = self.failure.is_none();
        report.witness = self.failure;
        report.transcript = json!({ "verified": self.runs, "checked": self.checked });
    }
}

fn enumeration(report: &mut Report, noun: &str, fd: &FusionData, tables: &[BraidingTable]) {
    report.count = Some(tables.len());
    report.summary = format!("{} {noun}", tables.len());
    report.items = json!(tables);
    report.lines = tables.iter().enumerate().map(|(i, t)| format!("#{i}: {}", render_table(fd, t))).collect();
}

fn require_ty<'a>(inst: &'a Instance, verb: &str) -> Result<&'a TyCategory, Failure> {
    match inst {
        Instance::Ty(t) => Ok(t),
        Instance::Pointed(_) => Err(Failure::Input(format!("{verb} is defined for TY instances only"))),
    }
}

fn no_brute_force(brute: bool, what: &str) -> Result<(), Failure> {
    if brute {
        Err(Failure::Input(format!("{what} has no brute-force path")))
    } else {
        Ok(())
    }
}

fn strict_action(t: &TyCategory) -> Result<GActionData, Failure> {
    let [strict, _] = tycat::z2_actions(t)?;
    Ok(strict)
}

pub fn pentagon(inst: &Instance) -> Result<Report, Failure> {
    let mut report = Report::new("pentagon", Some(inst));
    let r = match inst {
        Instance::Ty(t) => pentagon_check(t)?,
        Instance::Pointed(p) => pentagon_check::<BigRational, _>(p)?,
    };
    report.ok = r.holds;
    report.summary = if r.holds {
        format!("pentagon holds for {} ({} identities)", inst.title(), r.checked)
    } else {
        format!("pentagon FAILS for {} ({} of {} identities)", inst.title(), r.failures.len(), r.checked)
    };
    if let Some(f) = r.failures.first() {
        let fd = inst.fusion();
        report.witness = Some(format!(
            "X={} Y={} Z={} W={} U={} E={} G={} K={} L={}",
            fd.label(f.x),
            fd.label(f.y),
            fd.label(f.z),
            fd.label(f.w),
            fd.label(f.u),
            fd.label(f.e),
            fd.label(f.g),
            fd.label(f.k),
            fd.label(f.l)
        ));
    }
    report.transcript = json!({ "checked": r.checked, "failures": r.failures.len() });
    Ok(report)
}

pub fn braidings(inst: &Instance, brute: bool) -> Result<Report, Failure> {
    let mut report = Report::new("braidings", Some(inst));
    report.method = Some(method(brute));
    let fd = inst.fusion();
    let mut tally = Tally::default();
    let tables = match (inst, brute) {
        (Instance::Ty(t), false) => {
            let ctx = CrossedContext::ordinary(t);
            let mut tables: Vec<_> = tycat::braidings(t)?.into_iter().map(|c| c.table).collect();
            tables.sort();
            for (i, b) in tables.iter().enumerate() {
                tally.add(&ctx.verify_braiding(b, &Scope::Full)?, || format!("braiding #{i}"));
            }
            tables
        }
        (Instance::Pointed(p), false) => {
            let ctx = CrossedContext::<BigRational, _>::ordinary(p);
            let tables = pointed::braidings_from_trivializations(p)?;
            for (i, b) in tables.iter().enumerate() {
                tally.add(&ctx.verify_braiding(b, &Scope::Full)?, || format!("braiding #{i}"));
            }
            tables
        }
        (Instance::Ty(t), true) => {
            let (tables, s) = tycat::brute_force_braidings(t)?;
            report.transcript = stats(&s);
            tables
        }
        (Instance::Pointed(p), true) => {
            let (tables, s) = pointed::braidings_pointed(p)?;
            report.transcript = stats(&s);
            tables
        }
    };
    if !brute {
        tally.finish(&mut report);
    }
    enumeration(&mut report, "braidings", &fd, &tables);
    Ok(report)
}

pub fn crossed_braidings(inst: &Instance, brute: bool) -> Result<Report, Failure> {
    let mut report = Report::new("crossed-braidings", Some(inst));
    report.method = Some(method(brute));
    let fd = inst.fusion();
    let mut tally = Tally::default();
    match inst {
        Instance::Ty(t) => {
            let strict = strict_action(t)?;
            let tables = if brute {
                let (tables, s) = tycat::brute_force_crossed_braidings(t, &strict)?;
                report.transcript = stats(&s);
                tables
            } else {
                let mut cbs = tycat::crossed_braidings(t)?;
                cbs.sort_by(|a, b| a.table.cmp(&b.table));
                for (i, cb) in cbs.iter().enumerate() {
                    let r = tycat::verify_crossed_braiding(t, &strict, &cb.table)?;
                    tally.add(&r, || format!("crossed braiding #{i}"));
                }
                let params: Vec<Value> = cbs.iter().map(|c| json!({ "q": c.q.values(), "alpha": c.alpha })).collect();
                let tables: Vec<_> = cbs.into_iter().map(|c| c.table).collect();
                tally.finish(&mut report);
                report.transcript["parameters"] = json!(params);
                tables
            };
            enumeration(&mut report, "crossed braidings", &fd, &tables);
        }
        Instance::Pointed(p) => {
            no_brute_force(brute, "crossed-braidings on a pointed instance")?;
            let ctx = pointed::crossed_context::<BigRational>(p)?;
            let action = ctx.action().check::<BigRational, _>(p)?;
            let table = pointed::trivial_crossed_braiding(p);
            tally.add(&ctx.verify_braiding(&table, &Scope::Full)?, || "canonical crossed braiding".into());
            tally.finish(&mut report);
            if !action.holds() {
                report.ok = false;
                report.witness = Some(format!("the canonical action is not coherent: {action:?}"));
            }
            enumeration(&mut report, "canonical crossed braiding", &fd, &[table]);
            report.count = None;
            report.summary = format!(
                "canonical crossed braiding on the crossed extension of {}: {}",
                inst.title(),
                if report.ok { "verified" } else { "FAILS" }
            );
        }
    }
    Ok(report)
}

pub fn relative_braidings(inst: &Instance, brute: bool) -> Result<Report, Failure> {
    let t = require_ty(inst, "relative-braidings")?;
    let mut report = Report::new("relative-braidings", Some(inst));
    report.method = Some(method(brute));
    let tables = if brute {
        let (tables, s) = tycat::brute_force_relative_braidings(t)?;
        report.transcript = stats(&s);
        tables
    } else {
        let ctx = tycat::context(t, strict_action(t)?)?;
        let m = t.m();
        let scope = Scope::Relative((0..=m).map(|x| x != m).collect());
        let mut tables: Vec<_> = tycat::relative_braidings(t)?.into_iter().map(|r| r.table).collect();
        tables.sort();
        let mut tally = Tally::default();
        for (i, b) in tables.iter().enumerate() {
            tally.add(&ctx.verify_braiding(b, &scope)?, || format!("relative braiding #{i}"));
        }
        tally.finish(&mut report);
        tables
    };
    enumeration(&mut report, "relative braidings", t.fusion_data(), &tables);
    Ok(report)
}

pub fn ribbons(inst: &Instance, brute: bool) -> Result<Report, Failure> {
    let t = require_ty(inst, "ribbons")?;
    let mut report = Report::new("ribbons", Some(inst));
    report.method = Some(method(brute));
    let fd = t.fusion_data();
    let mut cbs = tycat::crossed_braidings(t)?;
    cbs.sort_by(|a, b| a.table.cmp(&b.table));
    let ctx = tycat::context(t, strict_action(t)?)?;
    let mut tally = Tally::default();
    let mut searched = Vec::new();
    let mut items = Vec::new();
    for (i, cb) in cbs.iter().enumerate() {
        let thetas = if brute {
            let (thetas, s) = tycat::brute_force_twists(t, cb)?;
            searched.push(s);
            thetas
        } else {
            let thetas: Vec<_> = tycat::twists(t, cb)?.into_iter().map(|w| w.theta).collect();
            for theta in &thetas {
                tally.add(&ctx.verify_twist(&cb.table, theta, true)?, || format!("twist on crossed braiding #{i}"));
            }
            thetas
        };
        for theta in thetas {
            report.lines.push(format!("braiding #{i}: θ = {}", render_values(fd, &theta.values)));
            items.push(json!({ "braiding": i, "theta": theta }));
        }
    }
    if brute {
        report.transcript = json!({ "search": searched });
    } else {
        tally.finish(&mut report);
    }
    report.count = Some(items.len());
    report.summary = format!("{} ribbon twists over {} crossed braidings", items.len(), cbs.len());
    report.items = Value::Array(items);
    Ok(report)
}

/// The strict `ℤ/2` action with identity choices, when every `T(g)` fixes
/// every simple; `None` otherwise.
fn ty_pointwise(t: &TyCategory) -> Result<Option<(GActionData, Vec<Vec<Root>>)>, Failure> {
    if !t.group().is_elementary_2() {
        return Ok(None);
    }
    let strict = strict_action(t)?;
    let choices = vec![vec![Root::ONE; t.fusion_data().len()]; 2];
    Ok(Some((strict, choices)))
}

fn not_trivializable(report: &mut Report, inst: &Instance) {
    report.summary = format!(
        "{}: not pointwise trivializable (the ℤ/2 action moves simples unless A is an elementary abelian 2-group)",
        inst.title()
    );
    report.items = Value::Null;
}

fn obstruction_items(report: &mut Report, b: &Cochain) -> Result<(), Failure> {
    let closed = b.is_cocycle();
    let vanishes = b.is_coboundary()?.is_some();
    report.ok = closed;
    if !closed {
        report.witness = Some("the obstruction cochain is not a 2-cocycle".into());
    }
    report.items = json!({ "cocycle": b.to_file(), "is_cocycle": closed, "class_vanishes": vanishes });
    report.lines.push(format!("class {}", if vanishes { "vanishes" } else { "is nonzero" }));
    Ok(())
}

pub fn obstruction(inst: &Instance, brute: bool) -> Result<Report, Failure> {
    let mut report = Report::new("obstruction", Some(inst));
    match inst {
        Instance::Pointed(p) => {
            report.method = Some(if brute { "engine" } else { "formula" });
            let Some(eta) = pointed::solve_eta(p)? else {
                report.summary = format!("{}: no η, some g_* is not isomorphic to the identity", inst.title());
                report.items = Value::Null;
                return Ok(report);
            };
            let b = if brute { pointed::engine_obstruction(p, &eta)? } else { pointed::pointed_obstruction(p, &eta)? };
            obstruction_items(&mut report, &b)?;
            report.transcript = json!({ "eta": eta.to_file() });
        }
        Instance::Ty(t) => {
            no_brute_force(brute, "the TY obstruction")?;
            report.method = Some("engine");
            let Some((strict, choices)) = ty_pointwise(t)? else {
                not_trivializable(&mut report, inst);
                return Ok(report);
            };
            let fd = t.fusion_data();
            let autos = IdAutos::new(fd)?;
            let b = skeletal::obstruction_cocycle(&strict, fd, &autos, &choices)?;
            obstruction_items(&mut report, &b)?;
        }
    }
    if report.summary.is_empty() {
        report.summary = format!("obstruction class for {}", inst.title());
    }
    Ok(report)
}

pub fn trivializations(inst: &Instance, brute: bool) -> Result<Report, Failure> {
    no_brute_force(brute, "trivializations")?;
    let mut report = Report::new("trivializations", Some(inst));
    let fd = inst.fusion();
    let (act, ts): (GActionData, Vec<Trivialization>) = match inst {
        Instance::Pointed(p) => (pointed::crossed_action(p, &pointed::crossed_data(p))?, pointed::trivializations(p)?),
        Instance::Ty(t) => {
            let Some((strict, choices)) = ty_pointwise(t)? else {
                not_trivializable(&mut report, inst);
                return Ok(report);
            };
            let ts = skeletal::trivializations(&strict, &fd, &choices)?;
            (strict, ts)
        }
    };
    let mut verified = 0;
    for (i, tr) in ts.iter().enumerate() {
        if tr.verify(&act, &fd)? {
            verified += 1;
        } else if report.witness.is_none() {
            report.ok = false;
            report.witness = Some(format!("trivialization #{i} fails"));
        }
        let rows: Vec<String> = tr.etas.iter().map(|e| render_values(&fd, e)).collect();
        report.lines.push(format!("#{i}: {}", rows.join(" | ")));
    }
    report.count = Some(ts.len());
    report.summary = format!("{} trivializations", ts.len());
    report.items = json!(ts);
    report.transcript = json!({ "verified": verified });
    Ok(report)
}

pub fn ising_report() -> Result<Report, Failure> {
    let r = tycat::ising_report()?;
    let mut report = Report::new("ising-report", None);
    let t = &r.totals;
    let bits = r.categories.iter().all(|c| {
        c.pentagon && c.braidings.iter().all(|b| b.hexagons && b.ribbons.iter().all(|x| x.verified))
    });
    report.ok = bits && (t.fusion, t.braided, t.ribbon) == (2, 8, 16);
    report.summary = format!("{} fusion categories, {} braided, {} ribbon", t.fusion, t.braided, t.ribbon);
    for c in &r.categories {
        report.lines.push(format!("τ sign {:+}: pentagon {}", c.tau_sign, if c.pentagon { "holds" } else { "FAILS" }));
        for b in &c.braidings {
            let betas: Vec<String> = b.ribbons.iter().map(|x| x.beta.to_string()).collect();
            report.lines.push(format!(
                "  q(ψ)={} α={} (α²={}) hexagons {} ribbons β ∈ {{{}}}",
                b.q_psi,
                b.alpha,
                b.alpha_squared,
                if b.hexagons { "hold" } else { "FAIL" },
                betas.join(", ")
            ));
        }
    }
    for a in &r.displayed_alpha {
        report.lines.push(format!(
            "displayed α for q(ψ)={}: {}, {} square to {}, required {} ({})",
            a.q_psi,
            a.displayed[0],
            a.displayed[1],
            a.displayed_squared,
            a.required_square,
            if a.consistent { "consistent" } else { "discrepancy" }
        ));
    }
    report.totals = Some(r.totals.clone());
    report.items = json!(r);
    report.transcript = json!({ "alpha_discrepancy": r.alpha_discrepancy });
    Ok(report)
}
