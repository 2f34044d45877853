//! Pseudo-Weierstrass preparation with respect to one distinguished
//! variable, at certified precision.

use crate::error::{Error, Result};
use crate::mpoly::{Exponent, Frame, Poly, TruncSeries};
use crate::value::NuValue;

/// `v·f ≡ y^ℓ + a_1 y^{ℓ-1} + ... + a_ℓ` modulo total degree `certified + 1`,
/// with every `a_i` free of `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoWeierstrass {
    pub ell: u32,
    /// `a_1..a_ℓ`, in the ring of `f`.
    pub a: Vec<TruncSeries>,
    pub v: TruncSeries,
    pub certified: u32,
    /// The `a_i` are exact polynomials: the division remainder was computed
    /// without truncation. The unit `v` may still be a truncated series.
    pub exact: bool,
    /// Index of the distinguished variable.
    pub var: usize,
}

impl PseudoWeierstrass {
    /// `y^ℓ + Σ a_i y^{ℓ-i}`.
    pub fn polynomial(&self) -> Poly {
        let field = self.v.poly().field().clone();
        let n = self.v.poly().nvars();
        let mut coeffs: Vec<Poly> = self.a.iter().rev().map(|s| s.poly().clone()).collect();
        coeffs.push(Poly::one(&field, n));
        Poly::from_coefficients_in(&coeffs, self.var, &field, n)
    }
}

/// The `ℓ` with `y^ℓ ∈ S(f)`, i.e. the lowest pure power of `y` in `f`;
/// `None` iff `f` lies in the ideal of the other variables.
pub fn weierstrass_degree_in(f: &Poly, var: usize) -> Option<u32> {
    f.terms()
        .filter(|(e, _)| e.degree() == e.get(var))
        .map(|(e, _)| e.get(var))
        .min()
}

/// [`weierstrass_degree_in`] for the first y-variable of `frame`.
pub fn weierstrass_degree(f: &Poly, frame: &Frame) -> Result<Option<u32>> {
    frame.check_poly(f)?;
    frame.require_split()?;
    Ok(weierstrass_degree_in(f, frame.y(0)))
}

/// Prepares `f` with respect to the first y-variable of `frame`; every other
/// variable acts as a parameter.
pub fn prepare(f: &Poly, frame: &Frame) -> Result<PseudoWeierstrass> {
    frame.check_poly(f)?;
    frame.require_split()?;
    prepare_in(f, frame.y(0), frame.precision())
}

/// Weierstrass division of `y^ℓ` by `f`: `y^ℓ = q·f + r` with
/// `deg_y r < ℓ`, so `q·f = y^ℓ - r`.
///
/// Runs in weighted degree: `y` has weight 1 and the other variables weight
/// `s`, with `s` large enough that each step strictly raises the weight of
/// the running dividend. Truncating at weight `N·s` keeps every term of total
/// degree `<= N` exact.
pub fn prepare_in(f: &Poly, var: usize, precision: u32) -> Result<PseudoWeierstrass> {
    let ell = weierstrass_degree_in(f, var).ok_or(Error::NotPseudoWeierstrass)?;
    let field = f.field().clone();
    let n = f.nvars();
    let coeffs = f.coefficients_in(var);
    let y = |k: u32| Exponent::unit(n, var, k);
    let mut a_poly = Poly::zero(&field, n);
    let mut b = Poly::zero(&field, n);
    for (k, c) in coeffs.iter().enumerate() {
        if k as u32 >= ell {
            a_poly = a_poly + c.mul_monomial(&y(k as u32 - ell), &field.one());
        } else {
            b = b + c.mul_monomial(&y(k as u32), &field.one());
        }
    }
    let mut s = 1u32;
    for (e, _) in b.terms() {
        let rest = e.degree() - e.get(var);
        let gap = ell - e.get(var);
        s = s.max(gap / rest + 1);
    }
    let mut weights = vec![s; n];
    weights[var] = 1;
    let bound = precision as u64 * s as u64;

    let a_const = a_poly.is_constant();
    let a_inv = a_poly.invert_unit_weighted(&weights, bound)?;
    let mut dropped = false;
    let mut q = Poly::zero(&field, n);
    let mut r = Poly::zero(&field, n);
    let mut g = Poly::monomial(&field, n, y(ell), field.one());
    for _ in 0..=bound + 1 {
        if g.is_zero() {
            break;
        }
        let (lo, hi) = split_at_degree(&g, var, ell);
        r = r + lo;
        if hi.is_zero() {
            g = Poly::zero(&field, n);
            break;
        }
        let (t, d1) = hi.mul_truncated(&a_inv, &weights, bound);
        q = q + t.clone();
        let (next, d2) = t.mul_truncated(&b, &weights, bound);
        dropped |= d1 | d2;
        g = -next;
    }
    if !g.is_zero() {
        return Err(Error::Internal("preparation did not converge".into()));
    }
    let exact = b.is_zero() || (a_const && !dropped);
    let r_coeffs = r.coefficients_in(var);
    let a: Vec<TruncSeries> = (1..=ell)
        .map(|i| {
            let k = (ell - i) as usize;
            let c = r_coeffs.get(k).cloned().unwrap_or_else(|| Poly::zero(&field, n));
            TruncSeries::new(-c, if exact { u32::MAX } else { precision })
        })
        .collect();
    let v = TruncSeries::new(q, if a_const && exact { u32::MAX } else { precision });
    Ok(PseudoWeierstrass { ell, a, v, certified: precision, exact, var })
}

/// Splits `g` into the terms of `var`-degree below `ell` and the quotient of
/// the rest by `var^ell`.
fn split_at_degree(g: &Poly, var: usize, ell: u32) -> (Poly, Poly) {
    let n = g.nvars();
    let mut lo = Poly::zero(g.field(), n);
    let mut hi = Poly::zero(g.field(), n);
    let shift = Exponent::unit(n, var, ell);
    for (e, c) in g.terms() {
        match e.checked_sub(&shift) {
            Some(rest) => hi.add_term(rest, c.clone()),
            None => lo.add_term(e.clone(), c.clone()),
        }
    }
    (lo, hi)
}

/// Orders of `a_1..a_ℓ`: exact up to the certified degree, `AtLeast(N)` for a
/// coefficient that vanishes at truncation, `Infinite` only when the
/// division terminated exactly.
pub fn coefficient_orders(w: &PseudoWeierstrass) -> Vec<NuValue> {
    w.a
        .iter()
        .map(|a| match a.poly().ord() {
            Some(o) => NuValue::from_int(o as u64),
            None if w.exact => NuValue::Infinite,
            None => NuValue::at_least_int(w.certified as u64),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::parse_poly;
    use crate::scalars::FieldSpec;

    fn setup(spec: &str, text: &str, field: &FieldSpec, n: u32) -> (Poly, Frame) {
        let frame = Frame::parse(spec).unwrap().with_precision(n);
        let f = parse_poly(text, frame.names(), field).unwrap();
        (f, frame)
    }

    #[test]
    fn degrees() {
        let q = FieldSpec::Rationals;
        let (f, fr) = setup("y|x", "x^2 + y^4 + y^5", &q, 8);
        assert_eq!(weierstrass_degree(&f, &fr).unwrap(), Some(2));
        let (g, fr) = setup("u|x", "u*x", &q, 8);
        assert_eq!(weierstrass_degree(&g, &fr).unwrap(), None);
        assert!(matches!(prepare(&g, &fr), Err(Error::NotPseudoWeierstrass)));
        let (h, fr) = setup("u|x", "x^5", &q, 8);
        assert_eq!(weierstrass_degree(&h, &fr).unwrap(), Some(5));
    }

    #[test]
    fn already_prepared_is_exact() {
        for field in [FieldSpec::Rationals, FieldSpec::prime(2).unwrap()] {
            let (f, fr) = setup("y|x", "x^2 + y^4 + y^5", &field, 8);
            let w = prepare(&f, &fr).unwrap();
            assert!(w.exact);
            assert_eq!(w.ell, 2);
            assert!(w.a[0].poly().is_zero());
            assert_eq!(w.a[1].poly(), &parse_poly("y^4 + y^5", fr.names(), &field).unwrap());
            assert_eq!(w.v.poly(), &Poly::one(&field, 2));
            assert_eq!(
                coefficient_orders(&w),
                vec![NuValue::Infinite, NuValue::from_int(4)]
            );
        }
    }

    #[test]
    fn unit_leading_coefficient() {
        let q = FieldSpec::Rationals;
        let n = 8;
        let (f, fr) = setup("u|y", "(1 + y)*y^2 + u^3", &q, n);
        let w = prepare(&f, &fr).unwrap();
        assert!(!w.exact);
        assert_eq!(w.ell, 2);
        let lhs = w.v.poly() * &f - w.polynomial();
        assert!(lhs.ord().is_none_or(|o| o > n));
        assert_eq!(w.a[1].poly().ord(), Some(3));
        let orders = coefficient_orders(&w);
        assert_eq!(orders[1], NuValue::from_int(3));
        for a in &w.a {
            assert!(!a.poly().involves(&[1]));
        }
    }

    #[test]
    fn cubic_in_prepared_form() {
        let q = FieldSpec::Rationals;
        let (f, fr) = setup("u|z", "z^3 + 3*z*u^5 + u^7", &q, 16);
        let w = prepare(&f, &fr).unwrap();
        let names = fr.names();
        assert!(w.a[0].poly().is_zero());
        assert_eq!(w.a[1].poly(), &parse_poly("3*u^5", names, &q).unwrap());
        assert_eq!(w.a[2].poly(), &parse_poly("u^7", names, &q).unwrap());
    }

    #[test]
    fn mixed_terms_fold_into_coefficients() {
        let q = FieldSpec::Rationals;
        let n = 12;
        let (f, fr) = setup("u|y", "y^2 + u*y^3 + u^2*y + u^5", &q, n);
        let w = prepare(&f, &fr).unwrap();
        let rem = w.v.poly() * &f - w.polynomial();
        assert!(rem.ord().is_none_or(|o| o > n));
        for a in &w.a {
            assert!(!a.poly().involves(&[1]));
        }
    }

    #[test]
    fn vanishing_coefficient_at_truncation() {
        let q = FieldSpec::Rationals;
        let (f, fr) = setup("u|y", "(1 + u)*y^2 + u^20", &q, 6);
        let w = prepare(&f, &fr).unwrap();
        assert!(!w.exact);
        assert_eq!(coefficient_orders(&w), vec![NuValue::at_least(6, 1); 2]);

        let (g, fr) = setup("u|y", "(1 + u)*y^2", &q, 6);
        let w = prepare(&g, &fr).unwrap();
        assert!(w.exact);
        assert_eq!(coefficient_orders(&w), vec![NuValue::Infinite; 2]);
    }
}
