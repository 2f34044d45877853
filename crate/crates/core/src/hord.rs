//! Tschirnhausen normalization, the elimination order, `Sl(P)`, `Hord` and
//! the maximal-contact cross-check.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::mpoly::{Frame, Poly, TruncSeries};
use crate::nubar::{self, SlopeReport};
use crate::value::NuValue;
use crate::wprep::{self, PseudoWeierstrass};

/// A pseudo-Weierstrass polynomial translated so that `a_1 = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TschirnForm {
    /// `y^m + a_2 y^{m-2} + ... + a_m`.
    pub poly: Poly,
    /// `a_1/m`: the translation was `y ↦ y - a_1/m`.
    pub shift: Poly,
    /// `a_1..a_m`, with `a_1 = 0`.
    pub a: Vec<TruncSeries>,
    pub certified: u32,
    pub exact: bool,
    pub var: usize,
}

/// Kills `a_1` by `y ↦ y - a_1/m`. Requires the characteristic not to
/// divide `m`.
pub fn tschirnhausen(w: &PseudoWeierstrass) -> Result<TschirnForm> {
    let p = w.polynomial();
    let field = p.field().clone();
    let m = w.ell;
    let ch = field.characteristic();
    if ch != 0 && (m as u64).is_multiple_of(ch) {
        return Err(Error::UnsupportedField {
            op: "Tschirnhausen transformation",
            field: format!("{field} with degree {m}"),
        });
    }
    let inv_m = field.from_int(m as i64).inv()?;
    let shift = w.a[0].poly().scale(&inv_m);
    let y = Poly::var(&field, p.nvars(), w.var);
    let translated = p.substitute_var(w.var, &(&y - &shift))?;
    let coeffs = translated.coefficients_in(w.var);
    let a: Vec<TruncSeries> = (1..=m)
        .map(|i| {
            let c = coeffs[(m - i) as usize].clone();
            TruncSeries::new(c, if w.exact { u32::MAX } else { w.certified })
        })
        .collect();
    let mut rebuilt: Vec<Poly> = a.iter().rev().map(|s| s.poly().clone()).collect();
    rebuilt.push(Poly::one(&field, p.nvars()));
    let poly = Poly::from_coefficients_in(&rebuilt, w.var, &field, p.nvars());
    if !a[0].poly().is_zero() {
        return Err(Error::Internal("Tschirnhausen translation left a_1 nonzero".into()));
    }
    Ok(TschirnForm { poly, shift, a, certified: w.certified, exact: w.exact, var: w.var })
}

fn orders(a: &[TruncSeries], exact: bool, certified: u32) -> Vec<NuValue> {
    a.iter()
        .map(|s| match s.poly().ord() {
            Some(o) => NuValue::from_int(o as u64),
            None if exact => NuValue::Infinite,
            None => NuValue::at_least_int(certified as u64),
        })
        .collect()
}

fn min_ratio(orders: &[NuValue], from: usize) -> NuValue {
    orders
        .iter()
        .enumerate()
        .skip(from - 1)
        .fold(NuValue::Infinite, |acc, (i, o)| acc.min(&o.div_int(i as u64 + 1)))
}

/// The elimination order `min_{i >= 2} ord(a_i)/i`.
pub fn ord_d(t: &TschirnForm) -> NuValue {
    min_ratio(&orders(&t.a, t.exact, t.certified), 2)
}

/// `Sl(P)`: the coefficient part `min_i ord(a_i)/i`, combined with the
/// elimination order when one is given.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlopeP {
    pub value: NuValue,
    /// No elimination order was supplied (characteristic p).
    pub partial: bool,
}

pub fn slope_p(w: &PseudoWeierstrass, elimination_order: Option<&NuValue>) -> SlopeP {
    let coeff = min_ratio(&wprep::coefficient_orders(w), 1);
    match elimination_order {
        Some(e) => SlopeP { value: coeff.min(e), partial: false },
        None => SlopeP { value: coeff, partial: true },
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HordReport {
    pub value: NuValue,
    /// The elimination order, computed in characteristic 0 on extremal input.
    pub ord_d: Option<NuValue>,
    pub slope: SlopeReport,
}

/// `Hord^(d)`, computed as the Samuel slope. In characteristic 0 on
/// extremal input the elimination order is computed as well and must agree.
pub fn hord_d(f: &Poly, frame: &Frame) -> Result<HordReport> {
    let slope = nubar::samuel_slope(f, frame)?;
    let ord = if slope.extremal && f.field().characteristic() == 0 {
        let w = wprep::prepare(&slope.normalized_f, &slope.frame)?;
        let value = ord_d(&tschirnhausen(&w)?);
        if !(value.may_be_le(&slope.slope) && slope.slope.may_be_le(&value)) {
            return Err(Error::Internal(format!(
                "Samuel slope {} differs from the elimination order {value}",
                slope.slope
            )));
        }
        Some(value)
    } else {
        None
    };
    Ok(HordReport { value: slope.slope.clone(), ord_d: ord, slope })
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum MaximalContact {
    HypothesisNotMet { reason: String },
    Checked { omega: String, nubar: NuValue, slope: NuValue, agrees: bool },
}

/// Compares `ν̄(ω)` for `ω = Δ^{m-1}_y f` with the Samuel slope. Needs a
/// single y-variable and `f` monic in it of degree `m`.
pub fn maximal_contact_check(f: &Poly, frame: &Frame) -> Result<MaximalContact> {
    frame.check_poly(f)?;
    frame.require_split()?;
    if frame.y_count() != 1 {
        return Err(Error::precondition("the frame must have exactly one y-variable"));
    }
    let m = f.ord().ok_or(Error::ZeroPolynomial("multiplicity"))?;
    let y = frame.y(0);
    if f.degree_in(y) != Some(m) || !f.coefficients_in(y)[m as usize].is_constant() {
        return Err(Error::precondition(format!("f must be monic of degree {m} in the y-variable")));
    }
    let omega = f.hasse_derivative(y, m - 1);
    if omega.ord() != Some(1) {
        return Ok(MaximalContact::HypothesisNotMet {
            reason: format!(
                "the {}-th Taylor derivative has order {}",
                m - 1,
                omega.ord().map_or("infinity".to_string(), |o| o.to_string())
            ),
        });
    }
    let nubar = nubar::nubar_resultant(f, frame, &omega)?;
    let slope = nubar::samuel_slope(f, frame)?.slope;
    let agrees = nubar.may_be_le(&slope) && slope.may_be_le(&nubar);
    Ok(MaximalContact::Checked { omega: frame.display(&omega), nubar, slope, agrees })
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
    fn tschirnhausen_examples() {
        let q = FieldSpec::Rationals;
        let (f, fr) = setup("u|z", "z^2 + 2*u*z + u^3", &q);
        let t = tschirnhausen(&wprep::prepare(&f, &fr).unwrap()).unwrap();
        assert_eq!(t.poly, parse_poly("z^2 - u^2 + u^3", fr.names(), &q).unwrap());
        assert_eq!(t.shift, parse_poly("u", fr.names(), &q).unwrap());
        assert_eq!(ord_d(&t), NuValue::exact(1, 1));

        let (g, fr) = setup("u|z", "z^3 + 3*z*u^5 + u^7", &q);
        let t = tschirnhausen(&wprep::prepare(&g, &fr).unwrap()).unwrap();
        assert_eq!(t.poly, g);
        assert_eq!(ord_d(&t), NuValue::exact(7, 3));

        let (h, fr) = setup("u|z", "z^3", &q);
        assert_eq!(ord_d(&tschirnhausen(&wprep::prepare(&h, &fr).unwrap()).unwrap()), NuValue::Infinite);

        let f3 = FieldSpec::prime(3).unwrap();
        let (k, fr) = setup("u|z", "z^3 + 3*z^2*u + u^4", &f3);
        assert!(tschirnhausen(&wprep::prepare(&k, &fr).unwrap()).is_err());
    }

    #[test]
    fn slope_p_examples() {
        let q = FieldSpec::Rationals;
        let (f, fr) = setup("u|z", "z^2 + u^3", &q);
        let w = wprep::prepare(&f, &fr).unwrap();
        let t = tschirnhausen(&w).unwrap();
        assert_eq!(slope_p(&w, Some(&ord_d(&t))).value, NuValue::exact(3, 2));
        let (g, fr) = setup("u|z", "z^2 + u*z + u^5", &q);
        let w = wprep::prepare(&g, &fr).unwrap();
        assert_eq!(slope_p(&w, None), SlopeP { value: NuValue::exact(1, 1), partial: true });

        let f2 = FieldSpec::prime(2).unwrap();
        let (h, fr) = setup("y|x", "x^2 + y^5", &f2);
        let w = wprep::prepare(&h, &fr).unwrap();
        assert_eq!(slope_p(&w, None).value, NuValue::exact(5, 2));
    }

    #[test]
    fn hord_examples() {
        let q = FieldSpec::Rationals;
        let (f, fr) = setup("u|z", "z^3 + 3*z*u^5 + u^7", &q);
        let rep = hord_d(&f, &fr).unwrap();
        assert_eq!(rep.value, NuValue::exact(7, 3));
        assert_eq!(rep.ord_d, Some(NuValue::exact(7, 3)));

        let f2 = FieldSpec::prime(2).unwrap();
        let (g, fr) = setup("y|x", "x^2 + y^4 + y^5", &f2);
        let rep = hord_d(&g, &fr).unwrap();
        assert_eq!(rep.value, NuValue::exact(5, 2));
        assert_eq!(rep.ord_d, None);

        let (h, fr) = setup("u|y1,y2", "y1^2 + y2^2 + u^5", &q);
        assert_eq!(hord_d(&h, &fr).unwrap().value, NuValue::exact(1, 1));
    }

    #[test]
    fn maximal_contact() {
        let q = FieldSpec::Rationals;
        let (f, fr) = setup("u|z", "z^2 + u^3", &q);
        match maximal_contact_check(&f, &fr).unwrap() {
            MaximalContact::Checked { nubar, agrees, .. } => {
                assert_eq!(nubar, NuValue::exact(3, 2));
                assert!(agrees);
            }
            other => panic!("{other:?}"),
        }
        let (g, fr) = setup("u|z", "z^2 + 2*u^2*z + u^5", &q);
        match maximal_contact_check(&g, &fr).unwrap() {
            MaximalContact::Checked { nubar, slope, agrees, .. } => {
                assert_eq!(nubar, NuValue::exact(2, 1));
                assert_eq!(slope, NuValue::exact(2, 1));
                assert!(agrees);
            }
            other => panic!("{other:?}"),
        }
        let f2 = FieldSpec::prime(2).unwrap();
        let (h, fr) = setup("u|z", "z^2 + u^3", &f2);
        assert!(matches!(
            maximal_contact_check(&h, &fr).unwrap(),
            MaximalContact::HypothesisNotMet { .. }
        ));
    }
}
