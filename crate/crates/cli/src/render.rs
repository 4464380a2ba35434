//! Rendering of each subcommand in plain, JSON and CSV form.

use std::fmt::Write as _;

use hirzebruch::verify::{self, Fault, Suite, Summary};
use hirzebruch::{
    component_dimension, scroll_report, CohomologyTable64, DivisorClass64, Error, FamilyParams64,
    HilbertReport64, ScrollReport64, Surface64, UniformityEvidence,
};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::Format;

/// Output text plus an optional error that still decides the exit code.
pub struct Rendered {
    pub body: String,
    pub status: Option<Error>,
}

impl Rendered {
    fn ok(body: String) -> Self {
        Rendered { body, status: None }
    }
}

/// One `table` row; field names are the CSV header.
#[derive(Debug, Serialize)]
pub struct Row {
    pub e: i64,
    pub b: i64,
    pub t: i64,
    pub n: i64,
    pub d: i64,
    pub c2: i64,
    pub r: i64,
    pub ell2: i64,
    pub ell3: i64,
    #[serde(rename = "h0E")]
    pub h0_e: i64,
    pub paper_regime: bool,
    pub dim_or_blank: Option<i64>,
    pub codim_or_blank: Option<i64>,
}

fn row(params: &FamilyParams64) -> Result<Row, Error> {
    let scroll = scroll_report(params)?;
    let uniformity = params.uniformity()?;
    let paper_regime = params.in_paper_regime()?;
    let component = if paper_regime {
        Some(component_dimension(params)?)
    } else {
        None
    };
    Ok(Row {
        e: params.e(),
        b: params.b(),
        t: params.t(),
        n: scroll.n,
        d: scroll.d,
        c2: scroll.c2,
        r: uniformity.r,
        ell2: uniformity.ell2,
        ell3: uniformity.ell3,
        h0_e: scroll.h_of_l[0],
        paper_regime,
        dim_or_blank: component.as_ref().and_then(|c| c.dim_component),
        codim_or_blank: component.as_ref().and_then(|c| c.codim_scroll_locus),
    })
}

fn to_json(value: &impl Serialize) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn to_csv<R: Serialize>(rows: &[R]) -> Result<String, Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)
            .map_err(|err| Error::InvalidInput(err.to_string()))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|err| Error::InvalidInput(err.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn triple(h: &CohomologyTable64) -> String {
    format!("({}, {}, {})", h.h0, h.h1, h.h2)
}

fn member_checks(params: &FamilyParams64) -> Result<Value, Error> {
    let summary = Suite::new().check_member(params);
    let value = summary_json(&summary);
    match summary.failures.first() {
        Some(f) => Err(Error::Inconsistency {
            identity: f.identity,
            detail: f.detail.clone(),
        }),
        None => Ok(value),
    }
}

fn summary_json(summary: &Summary) -> Value {
    json!({
        "passed": summary.passed(),
        "assertions": summary.assertions(),
        "identities": summary
            .identities
            .iter()
            .map(|(name, n)| json!({"identity": name, "assertions": n}))
            .collect::<Vec<_>>(),
        "failures": summary
            .failures
            .iter()
            .map(|f| json!({"identity": f.identity, "at": f.at, "detail": f.detail}))
            .collect::<Vec<_>>(),
    })
}

fn envelope(
    params: &FamilyParams64,
    scroll: &ScrollReport64,
    hilbert: Option<&HilbertReport64>,
    uniformity: &UniformityEvidence<i64>,
    checks: Value,
) -> Value {
    let mut obj = json!({
        "params": params,
        "scroll": scroll,
        "uniformity": uniformity,
        "checks": checks,
    });
    if let Some(h) = hilbert {
        obj["hilbert"] = json!(h);
    }
    obj
}

fn plain_scroll(
    out: &mut String,
    params: &FamilyParams64,
    scroll: &ScrollReport64,
) -> Result<(), Error> {
    let split = params.split()?;
    let surface = params.surface();
    let h_a = surface.cohomology(&split.a_line)?;
    let h_b = surface.cohomology(&split.b_line)?;
    let h_e = params.bundle_cohomology()?;
    let [h0, h1, h2, h3] = scroll.h_of_l;
    writeln!(
        out,
        "(e, b, t)        = ({}, {}, {})",
        params.e(),
        params.b(),
        params.t()
    )
    .unwrap();
    writeln!(out, "n                = {}", scroll.n).unwrap();
    writeln!(out, "d                = {}", scroll.d).unwrap();
    writeln!(out, "c1(E)            = {}", scroll.c1).unwrap();
    writeln!(out, "c2(E)            = {}", scroll.c2).unwrap();
    writeln!(out, "h^i(A) = {}  A = {}", triple(&h_a), split.a_line).unwrap();
    writeln!(out, "h^i(B) = {}  B = {}", triple(&h_b), split.b_line).unwrap();
    writeln!(out, "h^i(E)           = {}", triple(&h_e)).unwrap();
    writeln!(out, "h^i(X, L)        = ({h0}, {h1}, {h2}, {h3})").unwrap();
    writeln!(out, "P(m)             = {}", scroll.hilbert_poly).unwrap();
    Ok(())
}

fn plain_uniformity(out: &mut String, u: &UniformityEvidence<i64>) {
    writeln!(out, "r                = {}", u.r).unwrap();
    writeln!(out, "ℓ(c1, c2, 3, r)  = {}", u.ell3).unwrap();
    writeln!(out, "ℓ(c1, c2, 2, r)  = {}", u.ell2).unwrap();
    writeln!(out, "uniform          = {}", u.uniform).unwrap();
    let (d1, d2) = u.splitting_type;
    writeln!(out, "splitting type   = ({d1}, {d2})").unwrap();
}

fn plain_hilbert(out: &mut String, h: &HilbertReport64) {
    let opt = |v: Option<i64>| v.map_or("absent".to_string(), |v| v.to_string());
    let arr = |v: Option<[i64; 4]>| {
        v.map_or("absent".to_string(), |[a, b, c, d]| {
            format!("({a}, {b}, {c}, {d})")
        })
    };
    writeln!(
        out,
        "flags            = paper_regime={} v1={} v2={} v3={}",
        h.flags.paper_regime, h.flags.v1, h.flags.v2, h.flags.v3
    )
    .unwrap();
    if h.is_complete() {
        writeln!(out, "χ(N)             = {}", h.chi_n).unwrap();
    } else {
        writeln!(
            out,
            "χ(N)             = {} (Euler characteristic only)",
            h.chi_n
        )
        .unwrap();
    }
    writeln!(out, "dim              = {}", opt(h.dim_component)).unwrap();
    writeln!(out, "h^i(N)           = {}", arr(h.h_n)).unwrap();
    writeln!(out, "h^i(T_X)         = {}", arr(h.h_tx)).unwrap();
    writeln!(out, "χ(T_X)           = {}", opt(h.chi_tx)).unwrap();
    writeln!(out, "codim            = {}", opt(h.codim_scroll_locus)).unwrap();
}

pub fn report(e: i64, b: i64, t: i64, format: Format) -> Result<Rendered, Error> {
    let params = FamilyParams64::new(e, b, t)?;
    let scroll = scroll_report(&params)?;
    let uniformity = params.uniformity()?;
    let hilbert = if params.in_paper_regime()? {
        Some(component_dimension(&params)?)
    } else {
        None
    };
    let checks = member_checks(&params)?;
    let body = match format {
        Format::Json => to_json(&envelope(
            &params,
            &scroll,
            hilbert.as_ref(),
            &uniformity,
            checks,
        )),
        Format::Csv => to_csv(&[row(&params)?])?,
        Format::Plain => {
            let mut out = String::new();
            plain_scroll(&mut out, &params, &scroll)?;
            plain_uniformity(&mut out, &uniformity);
            if let Some(h) = &hilbert {
                plain_hilbert(&mut out, h);
            }
            writeln!(
                out,
                "checks           = {} assertions passed",
                checks["assertions"]
            )
            .unwrap();
            out
        }
    };
    Ok(Rendered::ok(body))
}

pub fn uniformity(e: i64, b: i64, t: i64, format: Format) -> Result<Rendered, Error> {
    let params = FamilyParams64::new(e, b, t)?;
    let evidence = params.uniformity()?;
    let splitting = params.splitting_type()?;
    let body = match format {
        Format::Json => to_json(&json!({"params": params, "uniformity": evidence})),
        Format::Csv => {
            #[derive(Serialize)]
            struct UniformityRow {
                e: i64,
                b: i64,
                t: i64,
                r: i64,
                ell3: i64,
                ell2: i64,
                uniform: bool,
                d1: i64,
                d2: i64,
            }
            to_csv(&[UniformityRow {
                e,
                b,
                t,
                r: evidence.r,
                ell3: evidence.ell3,
                ell2: evidence.ell2,
                uniform: evidence.uniform,
                d1: splitting.0,
                d2: splitting.1,
            }])?
        }
        Format::Plain => {
            let mut out = String::new();
            writeln!(out, "(e, b, t)        = ({e}, {b}, {t})").unwrap();
            plain_uniformity(&mut out, &evidence);
            out
        }
    };
    Ok(Rendered::ok(body))
}

pub fn hilbpoly(e: i64, b: i64, t: i64, at: &[i64], format: Format) -> Result<Rendered, Error> {
    let params = FamilyParams64::new(e, b, t)?;
    let poly = hirzebruch::hilbert_polynomial(&params)?;
    let values = at
        .iter()
        .map(|&m| poly.eval_integer(m).map(|v| (m, v)))
        .collect::<Result<Vec<_>, _>>()?;
    let body = match format {
        Format::Json => to_json(&json!({
            "params": params,
            "hilbert_poly": poly,
            "values": values.iter().map(|(m, v)| json!({"m": m, "P": v})).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            #[derive(Serialize)]
            struct ValueRow {
                m: i64,
                #[serde(rename = "P")]
                p: i64,
            }
            let rows: Vec<_> = values.iter().map(|&(m, p)| ValueRow { m, p }).collect();
            to_csv(&rows)?
        }
        Format::Plain => {
            let mut out = format!("P(m) = {poly}\n");
            for (m, v) in values {
                writeln!(out, "P({m}) = {v}").unwrap();
            }
            out
        }
    };
    Ok(Rendered::ok(body))
}

pub fn hilbert(e: i64, t: i64, force_b: Option<i64>, format: Format) -> Result<Rendered, Error> {
    let b = match force_b {
        Some(b) => b,
        None => e
            .checked_mul(2)
            .and_then(|v| v.checked_add(3))
            .and_then(|v| v.checked_add(t))
            .ok_or(Error::Overflow)?,
    };
    let params = FamilyParams64::new(e, b, t)?;
    let (report, status) = match component_dimension(&params) {
        Ok(report) => (report, None),
        Err(err @ Error::HypothesesNotSatisfied { .. }) => {
            (HilbertReport64::euler_only(&params)?, Some(err))
        }
        Err(err) => return Err(err),
    };
    let body = match format {
        Format::Json => {
            let scroll = scroll_report(&params)?;
            let uniformity = params.uniformity()?;
            let checks = member_checks(&params)?;
            to_json(&envelope(
                &params,
                &scroll,
                Some(&report),
                &uniformity,
                checks,
            ))
        }
        Format::Csv => {
            #[derive(Serialize)]
            struct HilbertRow {
                e: i64,
                b: i64,
                t: i64,
                n: i64,
                d: i64,
                #[serde(rename = "chiN")]
                chi_n: i64,
                paper_regime: bool,
                v1: bool,
                v2: bool,
                v3: bool,
                dim_or_blank: Option<i64>,
                #[serde(rename = "h0TX_or_blank")]
                h0_tx: Option<i64>,
                #[serde(rename = "h1TX_or_blank")]
                h1_tx: Option<i64>,
                codim_or_blank: Option<i64>,
            }
            to_csv(&[HilbertRow {
                e,
                b,
                t,
                n: report.n,
                d: report.d,
                chi_n: report.chi_n,
                paper_regime: report.flags.paper_regime,
                v1: report.flags.v1,
                v2: report.flags.v2,
                v3: report.flags.v3,
                dim_or_blank: report.dim_component,
                h0_tx: report.h_tx.map(|h| h[0]),
                h1_tx: report.h_tx.map(|h| h[1]),
                codim_or_blank: report.codim_scroll_locus,
            }])?
        }
        Format::Plain => {
            let mut out = String::new();
            writeln!(out, "(e, b, t)        = ({e}, {b}, {t})").unwrap();
            writeln!(out, "n                = {}", report.n).unwrap();
            writeln!(out, "d                = {}", report.d).unwrap();
            plain_hilbert(&mut out, &report);
            out
        }
    };
    Ok(Rendered { body, status })
}

pub fn cohomology(e: i64, a: i64, c: i64, format: Format) -> Result<Rendered, Error> {
    let surface = Surface64::new(e)?;
    let divisor = DivisorClass64::new(a, c);
    let h = surface.cohomology(&divisor)?;
    let body = match format {
        Format::Json => to_json(&json!({
            "e": e,
            "divisor": divisor,
            "cohomology": h,
        })),
        Format::Csv => {
            #[derive(Serialize)]
            struct CohomologyRow {
                e: i64,
                a: i64,
                c: i64,
                h0: i64,
                h1: i64,
                h2: i64,
                chi: i64,
            }
            to_csv(&[CohomologyRow {
                e,
                a,
                c,
                h0: h.h0,
                h1: h.h1,
                h2: h.h2,
                chi: h.chi,
            }])?
        }
        Format::Plain => format!(
            "F_{e}, D = {divisor}\nh^0 = {}\nh^1 = {}\nh^2 = {}\nχ   = {}\n",
            h.h0, h.h1, h.h2, h.chi
        ),
    };
    Ok(Rendered::ok(body))
}

pub fn table(
    e_max: i64,
    t_max: i64,
    paper_regime_only: bool,
    format: Format,
) -> Result<Rendered, Error> {
    let mut grid = hirzebruch::family_grid(e_max, t_max)?;
    if paper_regime_only {
        grid.retain(|p| p.in_paper_regime().unwrap_or(false));
    }
    let rows = grid.par_iter().map(row).collect::<Result<Vec<_>, _>>()?;
    let body = match format {
        Format::Csv => to_csv(&rows)?,
        Format::Json => to_json(&json!({ "rows": rows })),
        Format::Plain => {
            let blank = |v: Option<i64>| v.map_or("-".to_string(), |v| v.to_string());
            let mut out = format!(
                "{:>3} {:>3} {:>3} {:>5} {:>5} {:>4} {:>4} {:>5} {:>4} {:>5} {:>6} {:>7} {:>5}\n",
                "e", "b", "t", "n", "d", "c2", "r", "ell2", "ell3", "h0E", "regime", "dim", "codim"
            );
            for r in &rows {
                writeln!(
                    out,
                    "{:>3} {:>3} {:>3} {:>5} {:>5} {:>4} {:>4} {:>5} {:>4} {:>5} {:>6} {:>7} {:>5}",
                    r.e,
                    r.b,
                    r.t,
                    r.n,
                    r.d,
                    r.c2,
                    r.r,
                    r.ell2,
                    r.ell3,
                    r.h0_e,
                    r.paper_regime,
                    blank(r.dim_or_blank),
                    blank(r.codim_or_blank)
                )
                .unwrap();
            }
            out
        }
    };
    Ok(Rendered::ok(body))
}

pub fn verify(
    e_max: i64,
    t_max: i64,
    fault: Option<Fault>,
    format: Format,
) -> Result<Rendered, Error> {
    let suite = match fault {
        Some(f) => Suite::with_fault(f),
        None => Suite::new(),
    };
    let summary = suite.run(e_max, t_max)?;
    let body = match format {
        Format::Json => to_json(&summary_json(&summary)),
        Format::Csv => {
            #[derive(Serialize)]
            struct IdentityRow<'a> {
                identity: &'a str,
                assertions: usize,
                failures: usize,
            }
            let rows: Vec<_> = summary
                .identities
                .iter()
                .map(|&(identity, assertions)| IdentityRow {
                    identity,
                    assertions,
                    failures: summary
                        .failures
                        .iter()
                        .filter(|f| f.identity == identity)
                        .count(),
                })
                .collect();
            to_csv(&rows)?
        }
        Format::Plain => {
            let counts = verify::counts(&summary);
            let mut out = String::new();
            for (name, n) in &summary.identities {
                let failed = summary
                    .failures
                    .iter()
                    .filter(|f| f.identity == *name)
                    .count();
                let mark = if failed == 0 { "ok  " } else { "FAIL" };
                writeln!(out, "{mark} {name} ({n} assertions, {failed} failed)").unwrap();
            }
            for f in &summary.failures {
                writeln!(out, "{f}").unwrap();
            }
            writeln!(
                out,
                "{} identities, {} assertions, {} failures",
                counts.len(),
                summary.assertions(),
                summary.failures.len()
            )
            .unwrap();
            out
        }
    };
    let status = summary.failures.first().map(|f| Error::Inconsistency {
        identity: f.identity,
        detail: format!(
            "{} of {} assertions failed",
            summary.failures.len(),
            summary.assertions()
        ),
    });
    Ok(Rendered { body, status })
}
