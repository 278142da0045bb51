//! One function per subcommand. Each returns a [`Report`]; printing and
//! exit codes are left to the binary.

use std::path::Path;

use relci::bundle::{ci_class, classify, cone, ConeLabel};
use relci::contact::{self, ContactInstance, HmOutcome, WeightFiltration};
use relci::exact::Rat;
use relci::invariants as inv;
use relci::oracles::{run_suites, OracleLimits};
use relci::verdicts::{all_verdicts, build_example, h_sweep, Orientation, VerdictReport};
use relci::Error;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{CliError, CliResult};
use crate::instance::Instance;
use crate::report::Report;
use crate::svg::cone_diagram;

fn s(v: impl ToString) -> Value {
    Value::String(v.to_string())
}

fn echo(inst: &Instance) -> Value {
    serde_json::to_value(&inst.file).expect("instance file is plain JSON")
}

fn with_flags(inst: &Instance, flags: Value) -> Value {
    json!({ "instance": echo(inst), "flags": flags })
}

fn instance_report(command: &str, inst: &Instance, flags: Value, result: Value) -> Report {
    let mut report = Report::new(command, with_flags(inst, flags), result);
    report.warnings = inst.ci.warnings();
    report
}

pub fn verdict_json(v: &VerdictReport) -> Value {
    json!({
        "theorem": v.theorem,
        "hypotheses": v.hypotheses.iter().map(|(n, h)| json!({"name": n, "holds": h})).collect::<Vec<_>>(),
        "conclusion": v.conclusion,
        "witnesses": v.witnesses.iter().map(|(n, w)| json!({"name": n, "value": w})).collect::<Vec<_>>(),
    })
}

fn verdict_line(v: &VerdictReport) -> String {
    let conclusion = serde_json::to_string(&v.conclusion).expect("plain JSON");
    let failed: Vec<&str> = v.hypotheses.iter().filter(|(_, h)| !h).map(|(n, _)| n.as_str()).collect();
    if failed.is_empty() {
        format!("{:?}: {conclusion}", v.theorem)
    } else {
        format!("{:?}: {conclusion} (failed: {})", v.theorem, failed.join(", "))
    }
}

pub fn cmd_invariants(inst: &Instance, h: i64) -> CliResult<Report> {
    let x = &inst.ci;
    let pf = inv::pushforward(x, h)?;
    let kc = inv::canonical_coeffs(x);
    let margin = if h >= 1 { Some(inv::e_margin(x, h)?) } else { None };
    let result = json!({
        "h": s(h),
        "dim": s(x.dim()),
        "h_top": s(inv::h_top(x)),
        "fibre_deg": s(inv::fibre_deg(x)),
        "rank": s(&pf.rank),
        "deg": s(&pf.degree),
        "e_cleared": margin.as_ref().map(|m| s(&m.e_cleared)),
        "e_rational": margin.as_ref().and_then(|m| m.e_rational.as_ref().map(s)),
        "sign": margin.as_ref().map(|m| m.sign),
        "alpha": s(inv::alpha(x)),
        "canonical": { "a": s(kc.a), "b": s(kc.b), "general_type_fibres": kc.general_type_fibres },
        "kf_top": s(inv::kf_top(x)),
    });
    let mut report = instance_report("invariants", inst, json!({ "h": s(h) }), result);
    report.summary = vec![
        format!("H_X^n = {}, H_F^(n-1) = {}, alpha = {}", inv::h_top(x), inv::fibre_deg(x), inv::alpha(x)),
        format!("f_*O_X({h}): rank {}, degree {}", pf.rank, pf.degree),
        match &margin {
            Some(m) => format!("cleared margin at h = {h}: {} ({})", m.e_cleared, m.sign),
            None => "cleared margin: undefined for h = 0".to_owned(),
        },
        format!(
            "K_f = {}*H_X {} {}*F, K_f^n = {}",
            kc.a,
            if kc.b < 0 { '+' } else { '-' },
            kc.b.abs(),
            inv::kf_top(x)
        ),
    ];
    Ok(report)
}

pub fn cmd_verdict(inst: &Instance) -> CliResult<Report> {
    let verdicts = all_verdicts(&inst.ci)?;
    let result = json!({ "verdicts": verdicts.iter().map(verdict_json).collect::<Vec<_>>() });
    let mut report = instance_report("verdict", inst, json!({}), result);
    report.summary = verdicts.iter().map(verdict_line).collect();
    Ok(report)
}

pub fn cmd_cones(inst: &Instance, c: Option<usize>, svg: Option<&Path>) -> CliResult<Report> {
    let e = inst.ci.bundle();
    let c = c.unwrap_or(inst.ci.c());
    if e.hn().is_none() {
        return Err(Error::MissingHn("cones needs bundle.hn or bundle.split".into()).into());
    }
    let cones = [ConeLabel::Nef, ConeLabel::Bridge, ConeLabel::Pseff]
        .into_iter()
        .map(|l| cone(e, c, l))
        .collect::<relci::Result<Vec<_>>>()?;
    let semistable = e.is_semistable() == Some(true);
    let class = (c == inst.ci.c()).then(|| ci_class(&inst.ci));
    let region = class.as_ref().map(|cl| classify(e, cl)).transpose()?;

    let mut summary = Vec::new();
    let cone_json: Vec<Value> = cones
        .iter()
        .map(|cd| {
            summary.push(format!("{:?}: rays H^{}S and H^{c} - ({})H^{}S", cd.label, c - 1, cd.threshold(), c - 1));
            json!({
                "label": cd.label,
                "threshold": s(cd.threshold()),
                "ray1": { "p": s(&cd.ray1.p), "q": s(&cd.ray1.q) },
                "ray2": { "p": s(&cd.ray2.p), "q": s(&cd.ray2.q) },
            })
        })
        .collect();
    let class_json = match (&class, region) {
        (Some(cl), Some(region)) => {
            summary.push(format!("class of X: ({}, {}), {region:?}", cl.p, cl.q));
            json!({
                "p": s(&cl.p),
                "q": s(&cl.q),
                "ray_position": cl.ray_position().map(s),
                "region": region,
            })
        }
        _ => Value::Null,
    };
    if semistable {
        summary.push("semistable bundle: the three cones coincide".into());
    }
    if let Some(path) = svg {
        let text = cone_diagram(&cones, semistable, class.as_ref());
        std::fs::write(path, text).map_err(|source| CliError::Write { path: path.to_owned(), source })?;
        summary.push(format!("diagram written to {}", path.display()));
    }
    let result = json!({ "codim": s(c), "semistable": semistable, "cones": cone_json, "class": class_json });
    let flags = json!({ "c": s(c), "svg": svg.map(|p| p.display().to_string()) });
    let mut report = instance_report("cones", inst, flags, result);
    report.summary = summary;
    Ok(report)
}

pub fn cmd_sweep(inst: &Instance, h_max: i64) -> CliResult<Report> {
    let sweep = h_sweep(&inst.ci, h_max)?;
    let mut summary = vec![format!("{:>4} {:>12} {:>12} {:>20} {:>9}", "h", "rank", "deg", "e_cleared", "sign")];
    let rows: Vec<Value> = sweep
        .reports
        .iter()
        .map(|m| {
            summary.push(format!("{:>4} {:>12} {:>12} {:>20} {:>9}", m.h, m.rank, m.degree, m.e_cleared, m.sign));
            json!({ "h": s(m.h), "rank": s(&m.rank), "deg": s(&m.degree), "e_cleared": s(&m.e_cleared), "sign": m.sign })
        })
        .collect();
    let constant_sign = sweep.reports.windows(2).all(|w| w[0].sign == w[1].sign);
    summary.push(format!(
        "stable polynomial {} (h >= {}), eventual sign {} from h0 = {}",
        sweep.stable_polynomial,
        inv::stable_start(&inst.ci),
        sweep.eventual_sign,
        sweep.h0
    ));
    let result = json!({
        "rows": rows,
        "constant_sign": constant_sign,
        "alpha": s(inv::alpha(&inst.ci)),
        "stable_start": s(inv::stable_start(&inst.ci)),
        "stable_polynomial": s(&sweep.stable_polynomial),
        "h0": s(sweep.h0),
        "eventual_sign": sweep.eventual_sign,
    });
    let mut report = instance_report("sweep", inst, json!({ "h_max": s(h_max) }), result);
    report.summary = summary;
    Ok(report)
}

pub fn cmd_oracle(inst: &Instance, h_max: i64) -> CliResult<Report> {
    let Some(split) = &inst.split else {
        return Err(Error::invalid("bundle.split", "required by the oracle command").into());
    };
    let suites = run_suites(split, &inst.ci, h_max, OracleLimits::default())?;
    let failed = suites.iter().filter(|s| !s.passed()).count();
    let mut summary: Vec<String> = suites
        .iter()
        .map(|r| format!("{}: {} checks, {} mismatches", r.name, r.checks, r.mismatches.len()))
        .collect();
    for r in &suites {
        summary.extend(r.mismatches.iter().map(|m| format!("  {}: {m}", r.name)));
    }
    summary.push(if failed == 0 {
        format!("all {} oracle suites passed", suites.len())
    } else {
        format!("{failed} of {} oracle suites FAILED", suites.len())
    });
    let result = json!({
        "passed": failed == 0,
        "suites": suites.iter().map(|r| json!({
            "name": r.name,
            "checks": s(r.checks),
            "mismatches": r.mismatches,
        })).collect::<Vec<_>>(),
    });
    let mut report = instance_report("oracle", inst, json!({ "h_max": s(h_max) }), result);
    report.summary = summary;
    report.mismatch = failed > 0;
    Ok(report)
}

/// Exact rational given as a JSON integer or a string such as `"7/2"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatInput {
    Int(i64),
    Text(String),
}

impl RatInput {
    fn to_rat(&self, field: &str) -> CliResult<Rat> {
        match self {
            RatInput::Int(v) => Ok(Rat::from_integer((*v).into())),
            RatInput::Text(t) => t
                .trim()
                .parse::<Rat>()
                .map_err(|_| Error::invalid(field, format!("not an exact rational: {t:?}")).into()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CycleInput {
    pub dim: i64,
    pub deg: i64,
    pub e_f: RatInput,
}

/// `weights` has `n + 1` entries for `P^n`; `z` is optional.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContactFile {
    pub weights: Vec<RatInput>,
    pub y: CycleInput,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub z: Option<CycleInput>,
}

fn cycle_json(t: &ContactInstance, outcome: HmOutcome, w: &WeightFiltration) -> Value {
    json!({
        "dim": s(t.dim),
        "deg": s(t.deg),
        "e_f": s(&t.e_f),
        "normalized_weight": s(t.normalized_weight()),
        "semistable_bound": s(t.semistable_bound(w)),
        "outcome": outcome,
    })
}

pub fn cmd_contact(input: &ContactFile) -> CliResult<Report> {
    let weights = input
        .weights
        .iter()
        .enumerate()
        .map(|(i, r)| r.to_rat(&format!("weights[{i}]")))
        .collect::<CliResult<Vec<_>>>()?;
    let w = WeightFiltration::new(weights)?;
    let n = w.ambient_n();
    let cycle = |c: &CycleInput, name: &str| -> CliResult<ContactInstance> {
        Ok(ContactInstance::new(n, c.dim, c.deg, c.e_f.to_rat(&format!("{name}.e_f"))?)?)
    };
    let y = cycle(&input.y, "y")?;
    let oy = contact::hm_test(&y, &w)?;
    let mut summary = vec![format!("P^{n}, weight average {}", w.average()), format!("Y: {oy:?}")];
    let mut warnings = Vec::new();
    let mut result = json!({ "n": s(n), "average_weight": s(w.average()), "y": cycle_json(&y, oy, &w) });

    if let Some(zi) = &input.z {
        let z = cycle(zi, "z")?;
        let oz = contact::hm_test(&z, &w)?;
        summary.push(format!("Z: {oz:?}"));
        result["z"] = cycle_json(&z, oz, &w);
        let yz = contact::contact_of_intersection(&y, &z, &w)?;
        let oyz = contact::hm_test(&yz, &w)?;
        summary.push(format!("Y.Z: e_F = {}, {oyz:?}", yz.e_f));
        result["intersection"] = cycle_json(&yz, oyz, &w);
        result["propagation"] = match contact::intersection_semistability_check(&y, &z, &w) {
            Ok(check) => {
                summary.push(format!("propagation holds: {}, strict: {}", check.holds, check.strict_holds));
                if !(check.holds && check.strict_holds) {
                    return Err(Error::Internal("semistability failed to propagate to the intersection".into()).into());
                }
                json!({ "holds": check.holds, "strict_holds": check.strict_holds })
            }
            Err(e) if e.is_input_error() => {
                warnings.push(format!("propagation not checked: {e}"));
                Value::Null
            }
            Err(e) => return Err(e.into()),
        };
    }
    let input_echo = serde_json::to_value(input).expect("contact file is plain JSON");
    let mut report = Report::new("contact", input_echo, result);
    report.summary = summary;
    report.warnings = warnings;
    Ok(report)
}

pub fn cmd_example(a: i64, r: i64, c: i64, m: i64, orientation: Orientation) -> CliResult<Report> {
    let ex = build_example(a, r, c, m, orientation)?;
    let v = &ex.report;
    let flag = |name: &str| v.witness_value(name) == Some("true");
    let pass = |b: bool| if b { "PASS" } else { "FAIL" };
    let hn: Vec<Value> = ex
        .bundle
        .hn()
        .unwrap_or(&[])
        .iter()
        .map(|b| json!({ "rank": s(b.rank), "degree": s(b.degree) }))
        .collect();
    let result = json!({
        "bundle": { "rank": s(ex.bundle.rank()), "degree": s(ex.bundle.degree()), "base_genus": "0", "hn": hn },
        "ci": { "k": ex.ci.k().iter().map(s).collect::<Vec<_>>(), "y": ex.ci.y().iter().map(s).collect::<Vec<_>>() },
        "report": verdict_json(v),
    });
    let flags = json!({ "a": s(a), "r": s(r), "c": s(c), "m": s(m), "orientation": orientation });
    let mut report = Report::new("example", flags, result);
    report.summary = vec![
        format!("E = O({a})^{} + O({}), k = {}, y = {}", r - 1, a - 1, ex.ci.k()[0], ex.ci.y()[0]),
        format!("effectivity (y/k <= mu_1): {}", pass(flag("effective"))),
        format!("base locus (y/k > mu_2): {}", pass(flag("base_locus_condition"))),
        format!("instability (sum y/k > c*mu): {}", pass(flag("instability_condition"))),
        verdict_line(v),
    ];
    report.warnings = ex.ci.warnings();
    Ok(report)
}
