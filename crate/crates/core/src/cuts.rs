//! Linear cuts `y_j ↦ a_j·y_1`, genericity certificates, the values
//! `ν̄-lin` and `ν̄-gen`, and the refined Samuel slope.

use std::collections::BTreeMap;

use num_rational::BigRational;
use rand::Rng;
use serde::Serialize;

use crate::cone;
use crate::error::{Error, Result};
use crate::hpoly;
use crate::mpoly::{Exponent, Frame, Poly};
use crate::nubar::{self, Rendered, SlopeReport};
use crate::scalars::{FieldSpec, Scalar};
use crate::value::NuValue;

/// Attempts per field before escalating.
pub const ATTEMPTS_PER_FIELD: usize = 16;

/// The normalized cut `{y_j - a_j·y_1 : j = 2..r}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCut {
    /// `a_2..a_r`.
    pub coefficients: Vec<Scalar>,
}

impl LinearCut {
    pub fn new(coefficients: Vec<Scalar>) -> Self {
        LinearCut { coefficients }
    }

    /// The cut `{y_2, ..., y_r}`.
    pub fn coordinate(field: &FieldSpec, r: usize) -> Self {
        LinearCut { coefficients: vec![field.zero(); r - 1] }
    }

    pub fn field(&self) -> Option<FieldSpec> {
        self.coefficients.first().map(Scalar::field)
    }
}

/// Checks a frame for cutting: `r >= 2`, and over a perfect field that the
/// y-block determines the directrix. Over F_p(t) the directrix is not
/// computed and the caller vouches for the frame.
fn check_cut_frame(f: &Poly, frame: &Frame) -> Result<u32> {
    frame.check_poly(f)?;
    let m = f.ord().ok_or(Error::ZeroPolynomial("multiplicity"))?;
    if frame.y_count() < 2 {
        return Err(Error::precondition("a linear cut needs at least two y-variables"));
    }
    if f.field().is_perfect() && !cone::frame_is_normalized(f, frame)? {
        return Err(Error::precondition("the y-block does not determine the directrix"));
    }
    Ok(m)
}

/// `f` restricted to `y_j = a_j·y_1`, in the frame `(u | y_1)`.
pub fn apply_cut(f: &Poly, frame: &Frame, cut: &LinearCut) -> Result<(Poly, Frame)> {
    let m = check_cut_frame(f, frame)?;
    let (g, cut_frame) = cut_unchecked(f, frame, cut)?;
    match g.ord() {
        Some(k) if k == m => Ok((g, cut_frame)),
        k => Err(Error::InvalidCut(format!(
            "the multiplicity drops from {m} to {}",
            k.map_or("infinity".to_string(), |k| k.to_string())
        ))),
    }
}

fn cut_unchecked(f: &Poly, frame: &Frame, cut: &LinearCut) -> Result<(Poly, Frame)> {
    let ys = frame.y_indices();
    if cut.coefficients.len() + 1 != ys.len() {
        return Err(Error::InvalidCut(format!(
            "{} coefficients for {} y-variables",
            cut.coefficients.len(),
            ys.len()
        )));
    }
    let field = f.field();
    let us = frame.u_indices();
    let n = us.len() + 1;
    let y1 = Poly::var(field, n, us.len());
    let mut images = vec![Poly::zero(field, n); f.nvars()];
    for (k, &u) in us.iter().enumerate() {
        images[u] = Poly::var(field, n, k);
    }
    images[ys[0]] = y1.clone();
    for (&y, a) in ys[1..].iter().zip(&cut.coefficients) {
        images[y] = y1.scale(a);
    }
    let g = f.compose(&images)?;
    let cut_frame =
        Frame::new(frame.u_names(), &frame.y_names()[..1])?.with_precision(frame.precision());
    Ok((g, cut_frame))
}

/// Whether two certified values can describe the same number.
fn consistent(a: &NuValue, b: &NuValue) -> bool {
    a.may_be_le(b) && b.may_be_le(a)
}

/// `ν̄(y_1)` in the cut quotient, as `δ` of the cut polyhedron, cross-checked
/// against the pseudo-Weierstrass value.
pub fn nubar_lin(f: &Poly, frame: &Frame, cut: &LinearCut) -> Result<NuValue> {
    let (g, cut_frame) = apply_cut(f, frame, cut)?;
    lin_value(&g, &cut_frame)
}

fn lin_value(g: &Poly, cut_frame: &Frame) -> Result<NuValue> {
    let delta = hpoly::polyhedron(g, cut_frame)?.delta;
    let hickel = nubar::nubar_hickel(g, cut_frame)?;
    if !consistent(&delta, &hickel) {
        return Err(Error::Internal(format!(
            "cut polyhedron gives {delta} but the Weierstrass coefficients give {hickel}"
        )));
    }
    Ok(delta)
}

/// `ḡ_{α,i} = Σ_{|β| = i} c_{α,β} a^β` (with `a_1 = 1`), a polynomial in
/// `a_2..a_r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericityPoly {
    pub alpha: Vec<u32>,
    pub i: u32,
    pub poly: Poly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericityCertificate {
    pub family: Vec<GenericityPoly>,
    pub point: Vec<Scalar>,
    pub evaluations: Vec<Scalar>,
}

/// JSON form of a certificate; polynomials as sparse term lists.
#[derive(Debug, Clone, Serialize)]
pub struct CertificateExport {
    pub field: String,
    pub point: Vec<String>,
    pub family: Vec<FamilyExport>,
    pub valid: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyExport {
    pub alpha: Vec<u32>,
    pub i: u32,
    pub terms: Vec<(Vec<u32>, String)>,
    pub value: String,
}

impl GenericityCertificate {
    pub fn is_valid(&self) -> bool {
        self.evaluations.iter().all(|v| !v.is_zero())
    }

    pub fn export(&self) -> CertificateExport {
        let field = self.point.first().map_or(String::new(), |s| s.field().to_string());
        CertificateExport {
            field,
            point: self.point.iter().map(ToString::to_string).collect(),
            family: self
                .family
                .iter()
                .zip(&self.evaluations)
                .map(|(g, v)| FamilyExport {
                    alpha: g.alpha.clone(),
                    i: g.i,
                    terms: g
                        .poly
                        .terms()
                        .map(|(e, c)| (e.as_slice().to_vec(), c.to_string()))
                        .collect(),
                    value: v.to_string(),
                })
                .collect(),
            valid: self.is_valid(),
        }
    }
}

/// The polynomials `ḡ_{α,i}` that decide whether a cut keeps the polyhedron:
/// `(0, m)` for the multiplicity, and every projected point `(α, i)` whose
/// image `α/(m-i)` is a vertex of `Δ(f,u,y)`.
pub fn genericity_family(f: &Poly, frame: &Frame) -> Result<Vec<GenericityPoly>> {
    let m = check_cut_frame(f, frame)?;
    family_unchecked(f, frame, m)
}

fn family_unchecked(f: &Poly, frame: &Frame, m: u32) -> Result<Vec<GenericityPoly>> {
    let poly = hpoly::polyhedron(f, frame)?;
    let us = frame.u_indices();
    let ys = frame.y_indices();
    let field = f.field();
    let mut family: BTreeMap<(Vec<u32>, u32), Poly> = BTreeMap::new();
    for (e, c) in f.terms() {
        let alpha: Vec<u32> = us.iter().map(|&u| e.get(u)).collect();
        let beta: Vec<u32> = ys.iter().map(|&y| e.get(y)).collect();
        let i: u32 = beta.iter().sum();
        let wanted = if i < m {
            let den = BigRational::from_integer((m - i).into());
            let point: Vec<BigRational> =
                alpha.iter().map(|&a| BigRational::from_integer(a.into()) / &den).collect();
            poly.vertices.contains(&point)
        } else {
            i == m && alpha.iter().all(|&a| a == 0)
        };
        if wanted {
            let entry =
                family.entry((alpha, i)).or_insert_with(|| Poly::zero(field, ys.len() - 1));
            entry.add_term(Exponent::new(beta[1..].to_vec()), c.clone());
        }
    }
    Ok(family.into_iter().map(|((alpha, i), poly)| GenericityPoly { alpha, i, poly }).collect())
}

fn evaluate(g: &Poly, point: &[Scalar]) -> Result<Scalar> {
    let mut acc = g.field().zero();
    for (e, c) in g.terms() {
        let mut t = c.clone();
        for (a, &k) in point.iter().zip(e.as_slice()) {
            t = t.try_mul(&a.pow(k as u64))?;
        }
        acc = acc.try_add(&t)?;
    }
    Ok(acc)
}

fn certify_with(family: &[GenericityPoly], cut: &LinearCut) -> Result<GenericityCertificate> {
    let evaluations =
        family.iter().map(|g| evaluate(&g.poly, &cut.coefficients)).collect::<Result<_>>()?;
    Ok(GenericityCertificate {
        family: family.to_vec(),
        point: cut.coefficients.clone(),
        evaluations,
    })
}

/// Evaluates the genericity family at the cut. A valid certificate implies
/// that the cut preserves the multiplicity and the polyhedron.
pub fn certify_generic(f: &Poly, frame: &Frame, cut: &LinearCut) -> Result<GenericityCertificate> {
    let family = genericity_family(f, frame)?;
    certify_with(&family, cut)
}

/// A certified generic cut and its `ν̄-lin` value.
#[derive(Debug, Clone)]
pub struct GenericCut {
    pub value: NuValue,
    pub cut: LinearCut,
    pub certificate: GenericityCertificate,
    /// Field over which the cut was found: the base field or an extension.
    pub field: FieldSpec,
    pub attempts: usize,
}

/// Candidate points over `field`: all of them when there are at most
/// `max_attempts`, otherwise `max_attempts` random ones.
fn candidates<R: Rng + ?Sized>(
    field: &FieldSpec,
    dim: usize,
    rng: &mut R,
    max_attempts: usize,
) -> Vec<Vec<Scalar>> {
    if let Some(elems) = field.elements() {
        let total = (elems.len() as u64).checked_pow(dim as u32);
        if total.is_some_and(|t| t <= max_attempts as u64) {
            let mut out = vec![Vec::new()];
            for _ in 0..dim {
                out = out
                    .into_iter()
                    .flat_map(|p| {
                        elems.iter().map(move |e| {
                            let mut q = p.clone();
                            q.push(e.clone());
                            q
                        })
                    })
                    .collect();
            }
            return out;
        }
    }
    (0..max_attempts).map(|_| (0..dim).map(|_| field.sample(rng)).collect()).collect()
}

/// `a_j = t^{D^{j-2}}` with `D` above every partial degree of the family:
/// distinct monomials of each `ḡ` map to distinct powers of `t`, so no
/// `ḡ` vanishes.
fn kronecker_point(field: &FieldSpec, family: &[GenericityPoly], dim: usize) -> Result<Vec<Scalar>> {
    let t = field.generator().ok_or_else(|| Error::Internal("field has no generator".into()))?;
    let d = family
        .iter()
        .flat_map(|g| g.poly.terms().flat_map(|(e, _)| e.as_slice().to_vec()))
        .max()
        .unwrap_or(0) as u64
        + 1;
    let mut out = Vec::with_capacity(dim);
    let mut exp = 1u64;
    for _ in 0..dim {
        out.push(t.pow(exp));
        exp = exp
            .checked_mul(d)
            .ok_or_else(|| Error::Internal("Kronecker exponent overflow".into()))?;
    }
    Ok(out)
}

/// `ν̄-gen(y)`: samples cuts until one is certified generic, escalating
/// F_p → F_{p^4} → F_p(t) when the base field is too small. Returns the
/// `ν̄-lin` value of the certified cut, which equals `δ(Δ(f,u,y))`.
pub fn nubar_gen<R: Rng + ?Sized>(
    f: &Poly,
    frame: &Frame,
    rng: &mut R,
    max_attempts: usize,
) -> Result<GenericCut> {
    let m = check_cut_frame(f, frame)?;
    let dim = frame.y_count() - 1;
    let base = f.field().clone();
    let mut ladder = vec![base.clone()];
    if let FieldSpec::Prime(p) = base {
        ladder.push(FieldSpec::ext(p, 4)?);
        ladder.push(FieldSpec::ratfunc(p)?);
    }
    let mut attempts = 0;
    for field in ladder {
        let g = if field == base { f.clone() } else { f.lift_into(&field)? };
        let family = family_unchecked(&g, frame, m)?;
        let mut points = candidates(&field, dim, rng, max_attempts);
        if matches!(field, FieldSpec::RatFunc(_)) {
            points.push(kronecker_point(&field, &family, dim)?);
        }
        for point in points {
            attempts += 1;
            let cut = LinearCut::new(point);
            let certificate = certify_with(&family, &cut)?;
            if !certificate.is_valid() {
                continue;
            }
            let (h, cut_frame) = cut_unchecked(&g, frame, &cut)?;
            let value = lin_value(&h, &cut_frame)?;
            let full = hpoly::polyhedron(&g, frame)?.delta;
            if value != full {
                return Err(Error::Internal(format!(
                    "certified cut gives {value}, the polyhedron gives {full}"
                )));
            }
            return Ok(GenericCut { value, cut, certificate, field, attempts });
        }
    }
    Err(Error::NeedsFieldExtension { attempts })
}

/// The refined Samuel slope `δ(Δ(f,u))` for a non-extremal `f`, with the
/// prepared frame realized by a certified generic cut. Extremal input is
/// handed to [`nubar::samuel_slope`].
pub fn refined_samuel_slope<R: Rng + ?Sized>(
    f: &Poly,
    frame: &Frame,
    rng: &mut R,
) -> Result<SlopeReport> {
    frame.check_poly(f)?;
    let m = f.ord().ok_or(Error::ZeroPolynomial("multiplicity"))?;
    if m <= 1 {
        return Err(Error::precondition(format!("multiplicity {m} is below 2")));
    }
    if cone::is_extremal(f)?.is_some() {
        return nubar::samuel_slope(f, frame);
    }
    let (g, fr) = nubar::normalized(f, frame)?;
    let (slope, trace) = hpoly::prepare_delta(&g, &fr)?;
    let ys: Vec<Poly> = fr.y_indices().iter().map(|&y| Poly::var(g.field(), g.nvars(), y)).collect();
    let witness = nubar::witness_params(&trace, &ys);
    let realized = match (&slope, trace.status) {
        (NuValue::Exact(_), hpoly::TraceStatus::WellPreparedAtDelta) => {
            let cut = nubar_gen(&trace.final_f, &fr, rng, ATTEMPTS_PER_FIELD)?;
            if cut.value != slope {
                return Err(Error::Internal(format!(
                    "generic cut of the prepared frame gives {}, expected {slope}",
                    cut.value
                )));
            }
            Some(cut.value)
        }
        _ => None,
    };
    Ok(SlopeReport {
        multiplicity: m,
        extremal: false,
        slope,
        rendered: Rendered::new(&fr, &g, &witness),
        frame: fr,
        normalized_f: g,
        witness,
        status: Some(trace.status),
        method: "refined: polyhedron preparation",
        realized_by_cut: realized,
    })
}
