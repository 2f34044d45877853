//! The asymptotic Samuel function `ν̄` on hypersurface quotients `R/(f)`,
//! its independent oracles, and the Samuel slope.

use num_rational::BigRational;
use serde::Serialize;

use crate::cone;
use crate::cpx;
use crate::error::{Error, Result};
use crate::hpoly::{self, PreparationTrace, TraceStatus};
use crate::mpoly::{Frame, Poly};
use crate::value::NuValue;
use crate::wprep;

/// `ν̄(y)` for the first y-variable of `frame`, from the orders of the
/// pseudo-Weierstrass coefficients: `min_i ord(a_i)/i`.
///
/// Refuses unless the Weierstrass degree equals the multiplicity, which
/// makes the other variables generate a reduction of the maximal ideal of
/// `R/(f)`.
pub fn nubar_hickel(f: &Poly, frame: &Frame) -> Result<NuValue> {
    let w = wprep::prepare(f, frame)?;
    let m = f.ord().ok_or(Error::ZeroPolynomial("multiplicity"))?;
    if w.ell != m {
        return Err(Error::precondition(format!(
            "Weierstrass degree {} differs from the multiplicity {m}",
            w.ell
        )));
    }
    Ok(min_over_orders(&wprep::coefficient_orders(&w)))
}

/// `min_i orders[i-1] / i`.
fn min_over_orders(orders: &[NuValue]) -> NuValue {
    orders
        .iter()
        .enumerate()
        .fold(NuValue::Infinite, |acc, (i, o)| acc.min(&o.div_int(i as u64 + 1)))
}

/// `ν̄(θ)` for `θ = y + s` with `s` free of `y` and `s(0) = 0`: Hickel's
/// formula after the substitution `y ↦ y - s`.
pub fn nubar_hickel_at(f: &Poly, frame: &Frame, theta: &Poly) -> Result<NuValue> {
    let shifted = translate_to(f, frame, theta)?;
    nubar_hickel(&shifted, frame)
}

/// Rewrites `f` so that `θ = y + s` becomes the first y-variable.
pub fn translate_to(f: &Poly, frame: &Frame, theta: &Poly) -> Result<Poly> {
    frame.check_poly(f)?;
    frame.check_poly(theta)?;
    frame.require_split()?;
    let y = frame.y(0);
    let yv = Poly::var(f.field(), f.nvars(), y);
    let s = theta - &yv;
    if s.involves(&[y]) || !s.constant_term().is_zero() {
        return Err(Error::precondition("theta must be y + s with s free of y and s(0) = 0"));
    }
    f.substitute_var(y, &(&yv - &s))
}

/// Monic form of `f` in `var`: the coefficient list (lowest degree first)
/// divided by the constant leading coefficient.
fn monic_coefficients(f: &Poly, var: usize) -> Result<Vec<Poly>> {
    let coeffs = f.coefficients_in(var);
    let lead = coeffs.last().ok_or(Error::ZeroPolynomial("resultant"))?;
    if coeffs.len() < 2 || !lead.is_constant() {
        return Err(Error::precondition("f must be monic of positive degree in the y-variable"));
    }
    let inv = lead.constant_term().inv()?;
    Ok(coeffs.iter().map(|c| c.scale(&inv)).collect())
}

/// Remainder of `g` modulo a monic polynomial given by its coefficients.
fn reduce_monic(g: &Poly, monic: &[Poly], var: usize) -> Vec<Poly> {
    let ell = monic.len() - 1;
    let mut c = g.coefficients_in(var);
    while c.len() > ell {
        let top = c.pop().unwrap();
        let shift = c.len() - ell;
        if top.is_zero() {
            continue;
        }
        for (k, a) in monic[..ell].iter().enumerate() {
            c[shift + k] = &c[shift + k] - &(&top * a);
        }
    }
    while c.last().is_some_and(Poly::is_zero) {
        c.pop();
    }
    c
}

/// The characteristic polynomial `Res_y(f, Z - θ)` of `θ` over the ring of
/// the other variables, monic in `Z`, in a ring with `Z` appended last.
pub fn characteristic_polynomial(f: &Poly, frame: &Frame, theta: &Poly) -> Result<Poly> {
    frame.check_poly(f)?;
    frame.check_poly(theta)?;
    frame.require_split()?;
    let y = frame.y(0);
    let n = f.nvars();
    let field = f.field().clone();
    let monic = monic_coefficients(f, y)?;
    let ell = monic.len() - 1;
    let f_monic = Poly::from_coefficients_in(&monic, y, &field, n).extend_vars(1);
    let reduced = Poly::from_coefficients_in(&reduce_monic(theta, &monic, y), y, &field, n);
    let z = Poly::var(&field, n + 1, n);
    let g = &z - &reduced.extend_vars(1);
    let p = if reduced.involves(&[y]) { f_monic.resultant_in(&g, y)? } else { g.pow(ell as u32) };
    let coeffs = p.coefficients_in(n);
    let lead = coeffs.last().filter(|c| c.is_constant()).ok_or_else(|| {
        Error::Internal("characteristic polynomial is not monic in Z".into())
    })?;
    let inv = lead.constant_term().inv()?;
    Ok(p.scale(&inv))
}

/// `ν̄(θ)` from the characteristic polynomial `Z^ℓ + Σ c_i Z^{ℓ-i}` as
/// `min_i ord(c_i)/i`. Equals the minimal-polynomial value when `f` is
/// irreducible; otherwise this is the characteristic-polynomial variant.
pub fn nubar_resultant(f: &Poly, frame: &Frame, theta: &Poly) -> Result<NuValue> {
    let p = characteristic_polynomial(f, frame, theta)?;
    let z = p.nvars() - 1;
    let coeffs = p.coefficients_in(z);
    let ell = coeffs.len() - 1;
    let orders: Vec<NuValue> = (1..=ell)
        .map(|i| match coeffs[ell - i].ord() {
            Some(o) => NuValue::from_int(o as u64),
            None => NuValue::Infinite,
        })
        .collect();
    Ok(min_over_orders(&orders))
}

/// A certified lower bound `max_{n <= n_max} ord(θ^n mod f)/n`; `Infinite`
/// when some power of `θ` is zero modulo `f`.
pub fn nubar_lower_bound(f: &Poly, frame: &Frame, theta: &Poly, n_max: u32) -> Result<NuValue> {
    frame.check_poly(f)?;
    frame.check_poly(theta)?;
    frame.require_split()?;
    if n_max == 0 {
        return Err(Error::precondition("n_max must be positive"));
    }
    let y = frame.y(0);
    let n = f.nvars();
    let field = f.field().clone();
    let monic = monic_coefficients(f, y)?;
    let reduce = |g: &Poly| Poly::from_coefficients_in(&reduce_monic(g, &monic, y), y, &field, n);
    let base = reduce(theta);
    let mut power = Poly::one(&field, n);
    let mut best = BigRational::from_integer(0.into());
    for k in 1..=n_max {
        power = reduce(&(&power * &base));
        let Some(o) = power.ord() else {
            return Ok(NuValue::Infinite);
        };
        let ratio = BigRational::new(o.into(), k.into());
        if ratio > best {
            best = ratio;
        }
    }
    Ok(NuValue::AtLeast(best))
}

/// `ν̄(g) = ord(g)` for `g` with a u-CP-expansion, when the u-variables
/// generate a reduction (certified by Weierstrass degree = multiplicity).
pub fn nubar_reduction_case(f: &Poly, frame: &Frame, g: &Poly) -> Result<NuValue> {
    frame.check_poly(g)?;
    if frame.y_count() != 1 {
        return Err(Error::precondition("the frame must have exactly one y-variable"));
    }
    if !g.is_zero() && !cpx::has_u_expansion(g, frame) {
        return Err(Error::precondition("g has no (u)-CP-expansion"));
    }
    let w = wprep::prepare(f, frame)?;
    let m = f.ord().ok_or(Error::ZeroPolynomial("multiplicity"))?;
    if w.ell != m {
        return Err(Error::precondition("the u-variables do not generate a reduction"));
    }
    Ok(g.ord().map_or(NuValue::Infinite, |o| NuValue::from_int(o as u64)))
}

/// Result of [`samuel_slope`].
#[derive(Debug, Clone, Serialize)]
pub struct SlopeReport {
    pub multiplicity: u32,
    pub extremal: bool,
    pub slope: NuValue,
    /// Frame in which the witness is expressed (directrix on the y-block).
    pub frame: Frame,
    /// `f` in that frame, before the witness translation.
    #[serde(skip)]
    pub normalized_f: Poly,
    /// `θ_j = y_j + s_j`, the parameters realizing the slope.
    #[serde(skip)]
    pub witness: Vec<Poly>,
    pub status: Option<TraceStatus>,
    pub method: &'static str,
    /// `ν̄-gen` of the prepared frame, when a generic cut was used to
    /// realize the slope.
    pub realized_by_cut: Option<NuValue>,
    pub rendered: Rendered,
}

/// Text forms of the polynomials in a report.
#[derive(Debug, Clone, Serialize)]
pub struct Rendered {
    pub normalized_f: String,
    pub witness: Vec<String>,
}

impl Rendered {
    pub fn new(frame: &Frame, f: &Poly, witness: &[Poly]) -> Self {
        Rendered {
            normalized_f: frame.display(f),
            witness: witness.iter().map(|w| frame.display(w)).collect(),
        }
    }
}

/// Brings `f` into a frame whose y-block determines the directrix, keeping
/// `frame` when it already does.
pub fn normalized(f: &Poly, frame: &Frame) -> Result<(Poly, Frame)> {
    frame.check_poly(f)?;
    if frame.y_count() > 0 && cone::frame_is_normalized(f, frame)? {
        return Ok((f.clone(), frame.clone()));
    }
    let nf = cone::normalize_frame(f, frame)?;
    Ok((nf.f, nf.frame))
}

/// The Samuel slope of `R/(f)`: 1 outside the extremal case, otherwise
/// `δ(Δ(f,u))` from the preparation loop.
pub fn samuel_slope(f: &Poly, frame: &Frame) -> Result<SlopeReport> {
    frame.check_poly(f)?;
    let m = f.ord().ok_or(Error::ZeroPolynomial("multiplicity"))?;
    if m <= 1 {
        return Err(Error::precondition(format!("multiplicity {m} is below 2")));
    }
    let extremal = cone::is_extremal(f)?.is_some();
    let (g, fr) = normalized(f, frame)?;
    let ys = fr.y_indices();
    let identity: Vec<Poly> = ys.iter().map(|&y| Poly::var(g.field(), g.nvars(), y)).collect();
    let (slope, status, witness, method) = if extremal {
        let (slope, trace) = hpoly::prepare_delta(&g, &fr)?;
        (slope, Some(trace.status), witness_params(&trace, &identity), "polyhedron preparation")
    } else {
        (NuValue::from_int(1), None, identity, "non-extremal")
    };
    Ok(SlopeReport {
        multiplicity: m,
        extremal,
        slope,
        rendered: Rendered::new(&fr, &g, &witness),
        frame: fr,
        normalized_f: g,
        witness,
        status,
        method,
        realized_by_cut: None,
    })
}

pub(crate) fn witness_params(trace: &PreparationTrace, ys: &[Poly]) -> Vec<Poly> {
    ys.iter().zip(&trace.shifts).map(|(y, s)| y + s).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::parse_poly;
    use crate::scalars::FieldSpec;

    fn setup(spec: &str, text: &str, field: &FieldSpec) -> (Poly, Frame) {
        let frame = Frame::parse(spec).unwrap();
        let f = parse_poly(text, frame.names(), field).unwrap();
        (f, frame)
    }

    #[test]
    fn hickel_examples() {
        let f2 = FieldSpec::prime(2).unwrap();
        let (f, fr) = setup("y|x", "x^2 + y^4 + y^5", &f2);
        assert_eq!(nubar_hickel(&f, &fr).unwrap(), NuValue::exact(2, 1));
        let theta = parse_poly("x + y^2", fr.names(), &f2).unwrap();
        assert_eq!(nubar_hickel_at(&f, &fr, &theta).unwrap(), NuValue::exact(5, 2));
        let (g, fr) = setup("u|y", "y^3", &FieldSpec::Rationals);
        assert_eq!(nubar_hickel(&g, &fr).unwrap(), NuValue::Infinite);
        let (h, fr) = setup("u|y", "u*y + u^3", &FieldSpec::Rationals);
        assert!(matches!(nubar_hickel(&h, &fr), Err(Error::NotPseudoWeierstrass)));
        let (k, fr) = setup("u|y", "y^3 + u^2", &FieldSpec::Rationals);
        assert!(matches!(nubar_hickel(&k, &fr), Err(Error::Precondition(_))));
    }

    #[test]
    fn resultant_examples() {
        let f2 = FieldSpec::prime(2).unwrap();
        let (f, fr) = setup("y|x", "x^2 + y^4 + y^5", &f2);
        let theta = parse_poly("x + y^2", fr.names(), &f2).unwrap();
        let p = characteristic_polynomial(&f, &fr, &theta).unwrap();
        let names = ["y", "x", "Z"].map(String::from);
        assert_eq!(p, parse_poly("Z^2 + y^5", &names, &f2).unwrap());
        assert_eq!(nubar_resultant(&f, &fr, &theta).unwrap(), NuValue::exact(5, 2));
        let y = parse_poly("y", fr.names(), &f2).unwrap();
        assert_eq!(nubar_resultant(&f, &fr, &y).unwrap(), NuValue::exact(1, 1));

        let q = FieldSpec::Rationals;
        let (c, fr) = setup("u|y", "y^2 - u^3", &q);
        let y = parse_poly("y", fr.names(), &q).unwrap();
        assert_eq!(nubar_resultant(&c, &fr, &y).unwrap(), NuValue::exact(3, 2));
        let y2 = parse_poly("y^2", fr.names(), &q).unwrap();
        assert_eq!(nubar_resultant(&c, &fr, &y2).unwrap(), NuValue::exact(3, 1));
    }

    #[test]
    fn lower_bound_examples() {
        let f2 = FieldSpec::prime(2).unwrap();
        let (f, fr) = setup("y|x", "x^2 + y^4 + y^5", &f2);
        let theta = parse_poly("x + y^2", fr.names(), &f2).unwrap();
        assert_eq!(nubar_lower_bound(&f, &fr, &theta, 4).unwrap(), NuValue::at_least(5, 2));
        let q = FieldSpec::Rationals;
        let (g, fr) = setup("u|y", "y^2 - u^4*(1 + u)", &q);
        let y = parse_poly("y", fr.names(), &q).unwrap();
        assert_eq!(nubar_lower_bound(&g, &fr, &y, 2).unwrap(), NuValue::at_least(2, 1));
        let (h, fr) = setup("u|y", "y^3", &q);
        let y = parse_poly("y", fr.names(), &q).unwrap();
        assert_eq!(nubar_lower_bound(&h, &fr, &y, 3).unwrap(), NuValue::Infinite);
    }

    #[test]
    fn reduction_case() {
        let q = FieldSpec::Rationals;
        let (f, fr) = setup("u1,u2|y", "y^2 + u1^3 + u2^3", &q);
        let g = parse_poly("u1^2 + u1*u2*(1 + y) - 1/2*u2^2", fr.names(), &q).unwrap();
        assert_eq!(nubar_reduction_case(&f, &fr, &g).unwrap(), NuValue::exact(2, 1));
        let y = parse_poly("y", fr.names(), &q).unwrap();
        assert!(nubar_reduction_case(&f, &fr, &y).is_err());
    }

    #[test]
    fn slopes() {
        let f2 = FieldSpec::prime(2).unwrap();
        let (f, fr) = setup("y|x", "x^2 + y^4 + y^5", &f2);
        let rep = samuel_slope(&f, &fr).unwrap();
        assert_eq!(rep.slope, NuValue::exact(5, 2));
        assert_eq!(rep.witness, vec![parse_poly("x + y^2", fr.names(), &f2).unwrap()]);

        let (g, fr) = setup("y|x", "x^2 + y^4 + y^5", &FieldSpec::Rationals);
        assert_eq!(samuel_slope(&g, &fr).unwrap().slope, NuValue::exact(2, 1));

        let (h, fr) = setup("u|y", "(y - u^2)^3", &FieldSpec::Rationals);
        let rep = samuel_slope(&h, &fr).unwrap();
        assert_eq!(rep.slope, NuValue::Infinite);
        assert_eq!(rep.status, Some(TraceStatus::Degenerate));

        let (k, fr) = setup("x,y", "x^2 + y^2 + x^5", &FieldSpec::Rationals);
        let rep = samuel_slope(&k, &fr).unwrap();
        assert!(!rep.extremal);
        assert_eq!(rep.slope, NuValue::exact(1, 1));
    }
}
