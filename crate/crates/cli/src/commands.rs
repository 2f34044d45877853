use hsing_core::corpus::{self, Kind};
use hsing_core::cuts::{self, LinearCut};
use hsing_core::hpoly::{self, PreparationTrace};
use hsing_core::value::Fraction;
use hsing_core::{cone, hord, nubar, Error, FieldSpec, Frame, NuValue, Poly, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::request::{parse_in, CutArgs, NubarArgs, NubarMethod, Parsed};

fn to_value<T: serde::Serialize>(x: &T) -> Result<Value> {
    serde_json::to_value(x).map_err(|e| Error::Internal(e.to_string()))
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A frame with explicit u- and y-blocks is used as given; otherwise the
/// directrix is moved onto the y-block.
fn framed(p: &Parsed) -> Result<(Poly, Frame)> {
    if p.frame.u_count() > 0 && p.frame.y_count() > 0 {
        Ok((p.f.clone(), p.frame.clone()))
    } else {
        nubar::normalized(&p.f, &p.frame)
    }
}

fn frame_json(frame: &Frame) -> Value {
    json!({ "u": frame.u_names(), "y": frame.y_names() })
}

fn multiplicity(f: &Poly) -> Result<u32> {
    f.ord().ok_or(Error::ZeroPolynomial("multiplicity"))
}

pub fn order(p: &Parsed) -> Result<Value> {
    Ok(json!({ "multiplicity": multiplicity(&p.f)? }))
}

pub fn initial_form(p: &Parsed) -> Result<Value> {
    let m = multiplicity(&p.f)?;
    Ok(json!({ "multiplicity": m, "initial_form": p.frame.display(&p.f.initial_form()?) }))
}

pub fn directrix(p: &Parsed) -> Result<Value> {
    let m = multiplicity(&p.f)?;
    let big_f = p.f.initial_form()?;
    let d = cone::directrix(&big_f)?;
    let ridge: Vec<Value> = d
        .ridge
        .generators
        .iter()
        .map(|g| json!({ "form": p.frame.display(&g.form), "exponent": g.exponent }))
        .collect();
    Ok(json!({
        "multiplicity": m,
        "initial_form": p.frame.display(&big_f),
        "r": d.r,
        "forms": d.forms.iter().map(|l| p.frame.display(l)).collect::<Vec<_>>(),
        "ridge": ridge,
        "extremal": m >= 2 && d.r == 1,
    }))
}

pub fn polyhedron(p: &Parsed) -> Result<Value> {
    let (f, frame) = framed(p)?;
    let poly = hpoly::polyhedron(&f, &frame)?;
    Ok(json!({
        "frame": frame_json(&frame),
        "f": frame.display(&f),
        "polyhedron": to_value(&poly.export())?,
    }))
}

fn shifts(frame: &Frame, trace: &PreparationTrace) -> Vec<String> {
    trace.shifts.iter().map(|s| frame.display(s)).collect()
}

pub fn delta(p: &Parsed) -> Result<Value> {
    let (f, frame) = framed(p)?;
    let (delta, trace) = hpoly::prepare_delta(&f, &frame)?;
    Ok(json!({
        "frame": frame_json(&frame),
        "f": frame.display(&f),
        "delta": delta,
        "status": trace.status,
        "steps": trace.steps.len(),
        "shifts": shifts(&frame, &trace),
    }))
}

pub fn prepare(p: &Parsed) -> Result<Value> {
    let (f, frame) = framed(p)?;
    let (delta, trace) = hpoly::prepare_delta(&f, &frame)?;
    let steps: Vec<Value> = trace
        .steps
        .iter()
        .map(|s| {
            json!({
                "vertex": s.vertex.iter().map(Fraction::from).collect::<Vec<_>>(),
                "delta_before": s.delta_before,
                "lambda": s.lambda.iter().map(|l| frame.display(l)).collect::<Vec<_>>(),
                "f_after": frame.display(&s.f_after),
            })
        })
        .collect();
    Ok(json!({
        "frame": frame_json(&frame),
        "f": frame.display(&f),
        "delta": delta,
        "status": trace.status,
        "steps": steps,
        "shifts": shifts(&frame, &trace),
        "final_f": frame.display(&trace.final_f),
        "final_polyhedron": to_value(&trace.final_polyhedron.export())?,
    }))
}

pub fn nubar(p: &Parsed, args: &NubarArgs) -> Result<Value> {
    let (f, frame) = framed(p)?;
    let theta = match &args.theta {
        Some(t) => parse_in(t, &frame, f.field())?,
        None if frame.y_count() == 1 => Poly::var(f.field(), f.nvars(), frame.y(0)),
        None => {
            return Err(Error::Precondition("--theta is required with more than one y-variable".into()))
        }
    };
    let value = match args.method {
        NubarMethod::Hickel => nubar::nubar_hickel_at(&f, &frame, &theta)?,
        NubarMethod::Resultant => nubar::nubar_resultant(&f, &frame, &theta)?,
        NubarMethod::LowerBound => {
            nubar::nubar_lower_bound(&f, &frame, &theta, frame.precision())?
        }
    };
    Ok(json!({
        "frame": frame_json(&frame),
        "f": frame.display(&f),
        "theta": frame.display(&theta),
        "method": args.method,
        "nubar": value,
    }))
}

pub fn slope(p: &Parsed) -> Result<Value> {
    to_value(&nubar::samuel_slope(&p.f, &p.frame)?)
}

pub fn refined_slope(p: &Parsed, seed: u64) -> Result<Value> {
    to_value(&cuts::refined_samuel_slope(&p.f, &p.frame, &mut rng(seed))?)
}

pub fn hord(p: &Parsed) -> Result<Value> {
    let report = hord::hord_d(&p.f, &p.frame)?;
    let (f, frame) = (&report.slope.normalized_f, &report.slope.frame);
    let contact = if report.slope.extremal && frame.y_count() == 1 {
        match hord::maximal_contact_check(f, frame) {
            Ok(c) => to_value(&c)?,
            Err(e) if e.is_refusal() => json!({ "status": "hypothesis_not_met", "reason": e.to_string() }),
            Err(e) => return Err(e),
        }
    } else {
        Value::Null
    };
    let mut out = to_value(&report)?;
    out["maximal_contact"] = contact;
    Ok(out)
}

fn parse_point(text: &str, field: &FieldSpec) -> Result<Vec<hsing_core::Scalar>> {
    text.split(',')
        .map(|c| {
            let poly = hsing_core::parse_poly(c, &[], field)?;
            Ok(poly.constant_term())
        })
        .collect()
}

pub fn cut(p: &Parsed, args: &CutArgs, seed: u64) -> Result<Value> {
    let (f, frame) = framed(p)?;
    let base = json!({ "frame": frame_json(&frame), "f": frame.display(&f) });
    let mut out = match &args.point {
        Some(text) => {
            let cut = LinearCut::new(parse_point(text, f.field())?);
            let value = cuts::nubar_lin(&f, &frame, &cut)?;
            let cert = cuts::certify_generic(&f, &frame, &cut)?;
            json!({
                "nubar_lin": value,
                "generic": cert.is_valid(),
                "certificate": to_value(&cert.export())?,
            })
        }
        None => {
            let g = cuts::nubar_gen(&f, &frame, &mut rng(seed), args.attempts)?;
            json!({
                "nubar_gen": g.value,
                "field": g.field.to_string(),
                "attempts": g.attempts,
                "point": g.cut.coefficients.iter().map(ToString::to_string).collect::<Vec<_>>(),
                "certificate": to_value(&g.certificate.export())?,
            })
        }
    };
    for (k, v) in base.as_object().into_iter().flatten() {
        out[k] = v.clone();
    }
    Ok(out)
}

/// Runs the corpus. Returns the report and whether every item matched.
pub fn suite(seed: u64, precision: u32) -> Result<(Value, bool)> {
    let mut items = Vec::new();
    let mut all = true;
    for (i, it) in corpus::corpus().iter().enumerate() {
        let (f, frame) = it.build()?;
        let frame = frame.with_precision(precision);
        let (computed, method) = match it.kind {
            Kind::NonExtremal => {
                let r = cuts::refined_samuel_slope(&f, &frame, &mut rng(seed.wrapping_add(i as u64)));
                r.map(|r| (r.slope, r.method))
            }
            _ => nubar::samuel_slope(&f, &frame).map(|r| (r.slope, r.method)),
        }
        .map_or_else(|e| (Err(e.to_string()), ""), |(v, m)| (Ok(v), m));
        let expected = match it.kind {
            Kind::PerfectPower => Some(NuValue::Infinite),
            _ => it.expected.clone(),
        };
        let pass = matches!((&computed, &expected), (Ok(c), Some(e)) if c == e);
        all &= pass;
        let (value, error) = match computed {
            Ok(v) => (Some(v), None),
            Err(e) => (None, Some(e)),
        };
        items.push(json!({
            "name": it.name,
            "field": it.field,
            "vars": it.vars,
            "poly": it.poly,
            "kind": it.kind,
            "expected": expected,
            "computed": value,
            "method": method,
            "error": error,
            "pass": pass,
        }));
    }
    let passed = items.iter().filter(|v| v["pass"] == true).count();
    let total = items.len();
    Ok((json!({ "items": items, "passed": passed, "total": total }), all))
}
