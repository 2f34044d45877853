//! Sparse multivariate polynomials over the exact fields of [`crate::scalars`].
//!
//! A [`Poly`] is a map from exponent vectors to nonzero scalars. All
//! polynomials in one computation share a variable count and a field; the
//! variable names live in a [`Frame`].

mod frame;
mod ops;
mod parse;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalars::{FieldSpec, Scalar};

pub use frame::{Frame, TruncSeries, DEFAULT_PRECISION, MAX_VARS};
pub use parse::{identifiers, parse_poly};

/// An exponent vector with its cached total degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Exponent {
    e: Vec<u32>,
    deg: u32,
}

impl Exponent {
    pub fn new(e: Vec<u32>) -> Self {
        let deg = e.iter().sum();
        Exponent { e, deg }
    }

    pub fn zero(n: usize) -> Self {
        Exponent { e: vec![0; n], deg: 0 }
    }

    /// The exponent of the `i`-th variable raised to `k`.
    pub fn unit(n: usize, i: usize, k: u32) -> Self {
        let mut e = vec![0; n];
        e[i] = k;
        Exponent { e, deg: k }
    }

    pub fn len(&self) -> usize {
        self.e.len()
    }

    pub fn is_empty(&self) -> bool {
        self.e.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.e
    }

    pub fn get(&self, i: usize) -> u32 {
        self.e[i]
    }

    /// Componentwise `self <= other`.
    pub fn divides(&self, other: &Exponent) -> bool {
        self.e.iter().zip(&other.e).all(|(a, b)| a <= b)
    }

    pub fn add(&self, other: &Exponent) -> Exponent {
        Exponent {
            e: self.e.iter().zip(&other.e).map(|(a, b)| a + b).collect(),
            deg: self.deg + other.deg,
        }
    }

    /// `self - other`, if `other` divides `self`.
    pub fn checked_sub(&self, other: &Exponent) -> Option<Exponent> {
        if !other.divides(self) {
            return None;
        }
        Some(Exponent {
            e: self.e.iter().zip(&other.e).map(|(a, b)| a - b).collect(),
            deg: self.deg - other.deg,
        })
    }

    pub fn weighted_degree(&self, weights: &[u32]) -> u64 {
        self.e.iter().zip(weights).map(|(&a, &w)| a as u64 * w as u64).sum()
    }

    /// Sum of the exponents at the given positions.
    pub fn degree_in(&self, vars: &[usize]) -> u32 {
        vars.iter().map(|&i| self.e[i]).sum()
    }
}

impl From<Vec<u32>> for Exponent {
    fn from(e: Vec<u32>) -> Self {
        Exponent::new(e)
    }
}

/// Sparse polynomial in `nvars` variables over `field`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    field: FieldSpec,
    nvars: usize,
    terms: BTreeMap<Exponent, Scalar>,
}

impl Poly {
    pub fn zero(field: &FieldSpec, nvars: usize) -> Self {
        Poly { field: field.clone(), nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: &FieldSpec, nvars: usize, c: Scalar) -> Self {
        Self::monomial(field, nvars, Exponent::zero(nvars), c)
    }

    pub fn one(field: &FieldSpec, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    pub fn var(field: &FieldSpec, nvars: usize, i: usize) -> Self {
        Self::monomial(field, nvars, Exponent::unit(nvars, i, 1), field.one())
    }

    pub fn monomial(field: &FieldSpec, nvars: usize, e: Exponent, c: Scalar) -> Self {
        assert_eq!(e.len(), nvars, "exponent length mismatch");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Poly { field: field.clone(), nvars, terms }
    }

    /// Builds a polynomial from (exponent, coefficient) pairs, summing repeats.
    pub fn from_terms<I>(field: &FieldSpec, nvars: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, Scalar)>,
    {
        let mut p = Poly::zero(field, nvars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Convenience constructor from integer coefficients.
    pub fn from_int_terms(field: &FieldSpec, nvars: usize, terms: &[(&[u32], i64)]) -> Self {
        Self::from_terms(
            field,
            nvars,
            terms.iter().map(|(e, c)| (Exponent::new(e.to_vec()), field.from_int(*c))),
        )
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Exponent, Scalar)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, e: &Exponent) -> Scalar {
        self.terms.get(e).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn constant_term(&self) -> Scalar {
        self.coeff(&Exponent::zero(self.nvars))
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.degree() == 0)
    }

    /// Adds `c * x^e` in place.
    pub fn add_term(&mut self, e: Exponent, c: Scalar) {
        debug_assert_eq!(e.len(), self.nvars);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_compatible(&self, other: &Poly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::FrameMismatch(format!(
                "{} variables vs {} variables",
                self.nvars, other.nvars
            )));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.to_string(),
                right: other.field.to_string(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_compatible(other)?;
        let mut out = Poly::zero(&self.field, self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                out.add_term(e1.add(e2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.field, self.nvars);
        }
        Poly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, d)| (e.clone(), d * c)).collect(),
        }
    }

    /// Multiplies by the monomial `c * x^e`.
    pub fn mul_monomial(&self, e: &Exponent, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.field, self.nvars);
        }
        Poly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(f, d)| (f.add(e), d * c)).collect(),
        }
    }

    pub fn pow(&self, mut k: u32) -> Poly {
        let mut acc = Poly::one(&self.field, self.nvars);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Order at the origin: minimum total degree of the support, `None` for 0.
    pub fn ord(&self) -> Option<u32> {
        self.terms.keys().map(Exponent::degree).min()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Exponent::degree).max()
    }

    /// Minimum of the summed exponents over the variables in `vars`.
    pub fn ord_in(&self, vars: &[usize]) -> Option<u32> {
        self.terms.keys().map(|e| e.degree_in(vars)).min()
    }

    pub fn weighted_order(&self, weights: &[u32]) -> Option<u64> {
        self.terms.keys().map(|e| e.weighted_degree(weights)).min()
    }

    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e.get(var)).max()
    }

    /// Homogeneous component of total degree `d`.
    pub fn homogeneous_part(&self, d: u32) -> Poly {
        self.filter(|e| e.degree() == d)
    }

    /// The lowest-degree homogeneous component.
    pub fn initial_form(&self) -> Result<Poly> {
        let m = self.ord().ok_or(Error::ZeroPolynomial("initial form"))?;
        Ok(self.homogeneous_part(m))
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Exponent::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    /// Keeps only the terms whose exponent satisfies `keep`.
    pub fn filter<F: Fn(&Exponent) -> bool>(&self, keep: F) -> Poly {
        Poly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| keep(e))
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Drops every term of total degree above `d`; reports whether anything
    /// was dropped.
    pub fn truncate(&self, d: u32) -> (Poly, bool) {
        let kept = self.filter(|e| e.degree() <= d);
        let dropped = kept.len() != self.len();
        (kept, dropped)
    }

    /// Drops every term of weighted degree above `bound`.
    pub fn truncate_weighted(&self, weights: &[u32], bound: u64) -> (Poly, bool) {
        let kept = self.filter(|e| e.weighted_degree(weights) <= bound);
        let dropped = kept.len() != self.len();
        (kept, dropped)
    }

    /// Product truncated at weighted degree `bound`; the flag reports
    /// whether any product term was discarded.
    pub fn mul_truncated(&self, other: &Poly, weights: &[u32], bound: u64) -> (Poly, bool) {
        assert_eq!(self.nvars, other.nvars);
        let mut rhs: Vec<(u64, &Exponent, &Scalar)> =
            other.terms.iter().map(|(e, c)| (e.weighted_degree(weights), e, c)).collect();
        rhs.sort_by_key(|t| t.0);
        let mut out = Poly::zero(&self.field, self.nvars);
        let mut dropped = false;
        for (e1, c1) in &self.terms {
            let w1 = e1.weighted_degree(weights);
            for (w2, e2, c2) in &rhs {
                if w1 + w2 > bound {
                    dropped = true;
                    break;
                }
                out.add_term(e1.add(e2), c1 * *c2);
            }
        }
        (out, dropped)
    }

    /// Coefficients of `self` viewed as a polynomial in `var`: entry `k` is
    /// the coefficient of `var^k` (with `var` removed from its exponents).
    pub fn coefficients_in(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var).unwrap_or(0) as usize;
        let mut out = vec![Poly::zero(&self.field, self.nvars); deg + 1];
        if self.is_zero() {
            return Vec::new();
        }
        for (e, c) in &self.terms {
            let k = e.get(var) as usize;
            let mut v = e.as_slice().to_vec();
            v[var] = 0;
            out[k].add_term(Exponent::new(v), c.clone());
        }
        out
    }

    /// Reassembles `Σ coeffs[k] * var^k`.
    pub fn from_coefficients_in(coeffs: &[Poly], var: usize, field: &FieldSpec, nvars: usize) -> Poly {
        let mut out = Poly::zero(field, nvars);
        for (k, c) in coeffs.iter().enumerate() {
            let shift = Exponent::unit(nvars, var, k as u32);
            for (e, s) in c.terms() {
                out.add_term(e.add(&shift), s.clone());
            }
        }
        out
    }

    /// Whether any term involves one of `vars`.
    pub fn involves(&self, vars: &[usize]) -> bool {
        self.terms.keys().any(|e| vars.iter().any(|&i| e.get(i) > 0))
    }

    /// Re-indexes variables: variable `i` of `self` becomes variable
    /// `map[i]` of a ring with `nvars` variables.
    pub fn remap_vars(&self, map: &[usize], nvars: usize) -> Poly {
        assert_eq!(map.len(), self.nvars);
        let mut out = Poly::zero(&self.field, nvars);
        for (e, c) in &self.terms {
            let mut v = vec![0u32; nvars];
            for (i, &k) in e.as_slice().iter().enumerate() {
                v[map[i]] += k;
            }
            out.add_term(Exponent::new(v), c.clone());
        }
        out
    }

    /// Embeds into a ring with `extra` additional trailing variables.
    pub fn extend_vars(&self, extra: usize) -> Poly {
        let map: Vec<usize> = (0..self.nvars).collect();
        self.remap_vars(&map, self.nvars + extra)
    }

    /// Removes variables that do not occur (`keep` lists survivors in order).
    pub fn restrict_vars(&self, keep: &[usize]) -> Result<Poly> {
        let dropped: Vec<usize> = (0..self.nvars).filter(|i| !keep.contains(i)).collect();
        if self.involves(&dropped) {
            return Err(Error::precondition("cannot drop a variable that occurs"));
        }
        let mut out = Poly::zero(&self.field, keep.len());
        for (e, c) in &self.terms {
            out.add_term(Exponent::new(keep.iter().map(|&i| e.get(i)).collect()), c.clone());
        }
        Ok(out)
    }

    /// Image of every coefficient in `target` (canonical field embedding).
    pub fn lift_into(&self, target: &FieldSpec) -> Result<Poly> {
        let mut out = Poly::zero(target, self.nvars);
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c.lift_into(target)?);
        }
        Ok(out)
    }

    /// Renders with the given variable names, lowest degree first.
    pub fn to_string_with(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut keys: Vec<&Exponent> = self.terms.keys().collect();
        keys.sort_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
        let mut out = String::new();
        for (idx, e) in keys.into_iter().enumerate() {
            let c = &self.terms[e];
            let (neg, mag) = if c.is_negative_literal() { (true, -c) } else { (false, c.clone()) };
            if idx == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mono: Vec<String> = e
                .as_slice()
                .iter()
                .enumerate()
                .filter(|(_, &k)| k > 0)
                .map(|(i, &k)| if k == 1 { names[i].clone() } else { format!("{}^{}", names[i], k) })
                .collect();
            let coeff = if mag.is_compound() { format!("({mag})") } else { mag.to_string() };
            if mono.is_empty() {
                out.push_str(&coeff);
            } else if mag.is_one() {
                out.push_str(&mono.join("*"));
            } else {
                out.push_str(&coeff);
                out.push('*');
                out.push_str(&mono.join("*"));
            }
        }
        out
    }

    /// Default names `x0, x1, ...`.
    pub fn default_names(nvars: usize) -> Vec<String> {
        (0..nvars).map(|i| format!("x{i}")).collect()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_with(&Poly::default_names(self.nvars)))
    }
}

macro_rules! poly_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

poly_binop!(Add, add, try_add);
poly_binop!(Sub, sub, try_sub);
poly_binop!(Mul, mul, try_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            field: self.field.clone(),
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
