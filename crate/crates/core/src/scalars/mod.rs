//! Exact coefficient fields: ℚ, F_p, F_{p^e} and F_p(t).
//!
//! A [`Scalar`] carries enough of its field to operate on its own, so
//! polynomials only need to keep a [`FieldSpec`] for building constants.
//! Binary operators panic on mixed fields or division by zero; the `try_*`
//! methods report those as [`Error`]s instead.

mod upoly;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// A finite field F_p[w]/(modulus) of order p^e.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtField {
    p: u64,
    e: u32,
    /// monic, degree e, low coefficient first
    modulus: Vec<u64>,
}

impl ExtField {
    /// F_{p^e} with the first irreducible modulus of degree `e`.
    pub fn new(p: u64, e: u32) -> Result<Self> {
        check_prime(p)?;
        if e == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        Ok(ExtField { p, e, modulus: upoly::first_irreducible(p, e) })
    }

    /// F_p[w]/(modulus); `modulus` is low-coefficient-first and must be monic
    /// and irreducible.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        check_prime(p)?;
        let modulus = upoly::trim(modulus.into_iter().map(|c| c % p).collect());
        if modulus.last() != Some(&1) || modulus.len() < 2 {
            return Err(Error::InvalidField("modulus must be monic of degree >= 1".into()));
        }
        if !upoly::is_irreducible(&modulus, p) {
            return Err(Error::InvalidField("modulus is reducible".into()));
        }
        let e = (modulus.len() - 1) as u32;
        Ok(ExtField { p, e, modulus })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.e
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    /// Number of elements, when it fits in a u64.
    pub fn order(&self) -> Option<u64> {
        self.p.checked_pow(self.e)
    }
}

/// Which exact field the coefficients live in.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
    Ext(Arc<ExtField>),
    /// F_p(t), the rational function field in one variable.
    RatFunc(u64),
}

fn check_prime(p: u64) -> Result<()> {
    if p >= 1 << 31 {
        return Err(Error::InvalidField(format!("prime {p} exceeds 2^31")));
    }
    if !is_prime(p) {
        return Err(Error::InvalidField(format!("{p} is not prime")));
    }
    Ok(())
}

/// Deterministic trial division; adequate for word-size primes.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(FieldSpec::Prime(p))
    }

    pub fn ext(p: u64, e: u32) -> Result<Self> {
        Ok(FieldSpec::Ext(Arc::new(ExtField::new(p, e)?)))
    }

    pub fn ratfunc(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(FieldSpec::RatFunc(p))
    }

    /// 0 for ℚ, p otherwise.
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) | FieldSpec::RatFunc(p) => *p,
            FieldSpec::Ext(f) => f.p,
        }
    }

    /// Perfect fields admit p-th roots of every element.
    pub fn is_perfect(&self) -> bool {
        !matches!(self, FieldSpec::RatFunc(_))
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, FieldSpec::Prime(_) | FieldSpec::Ext(_))
    }

    /// Number of elements of a finite field (None for infinite fields or overflow).
    pub fn order(&self) -> Option<u64> {
        match self {
            FieldSpec::Prime(p) => Some(*p),
            FieldSpec::Ext(f) => f.order(),
            _ => None,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_int(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Q(BigRational::from_integer(n.clone())),
            FieldSpec::Prime(p) => Scalar::Fp { v: reduce_bigint(n, *p), p: *p },
            FieldSpec::Ext(f) => Scalar::Fq {
                c: upoly::trim(vec![reduce_bigint(n, f.p)]),
                field: f.clone(),
            },
            FieldSpec::RatFunc(p) => Scalar::Fpt {
                num: upoly::trim(vec![reduce_bigint(n, *p)]),
                den: vec![1],
                p: *p,
            },
        }
    }

    /// Image of a rational number; fails when the denominator vanishes mod p.
    pub fn from_rational(&self, q: &BigRational) -> Result<Scalar> {
        let num = self.from_bigint(q.numer());
        let den = self.from_bigint(q.denom());
        num.try_div(&den)
    }

    /// The adjoined element: `w` for F_{p^e}, `t` for F_p(t).
    pub fn generator(&self) -> Option<Scalar> {
        match self {
            FieldSpec::Ext(f) => Some(Scalar::Fq {
                c: upoly::rem(&[0, 1], &f.modulus, f.p),
                field: f.clone(),
            }),
            FieldSpec::RatFunc(p) => Some(Scalar::Fpt { num: vec![0, 1], den: vec![1], p: *p }),
            _ => None,
        }
    }

    /// Name of the adjoined element in text input and output.
    pub fn generator_name(&self) -> Option<&'static str> {
        match self {
            FieldSpec::Ext(_) => Some("w"),
            FieldSpec::RatFunc(_) => Some("t"),
            _ => None,
        }
    }

    /// A pseudo-random element.
    ///
    /// ℚ: numerator in [-1000, 1000], denominator in [1, 1000].
    /// F_p(t): a polynomial in t of degree at most 3, so infinitely many
    /// distinct values are reachable.
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self {
            FieldSpec::Rationals => {
                let n: i64 = rng.gen_range(-1000..=1000);
                let d: i64 = rng.gen_range(1..=1000);
                Scalar::Q(BigRational::new(n.into(), d.into()))
            }
            FieldSpec::Prime(p) => Scalar::Fp { v: rng.gen_range(0..*p), p: *p },
            FieldSpec::Ext(f) => {
                let c = (0..f.e).map(|_| rng.gen_range(0..f.p)).collect();
                Scalar::Fq { c: upoly::trim(c), field: f.clone() }
            }
            FieldSpec::RatFunc(p) => {
                let deg = rng.gen_range(0..=3usize);
                let num = (0..=deg).map(|_| rng.gen_range(0..*p)).collect();
                Scalar::Fpt { num: upoly::trim(num), den: vec![1], p: *p }
            }
        }
    }

    /// Deterministic sample for a fixed seed.
    pub fn sample_seeded(&self, seed: u64) -> Scalar {
        self.sample(&mut ChaCha8Rng::seed_from_u64(seed))
    }

    /// All elements of a finite field, in a fixed order.
    pub fn elements(&self) -> Option<Vec<Scalar>> {
        match self {
            FieldSpec::Prime(p) => Some((0..*p).map(|v| Scalar::Fp { v, p: *p }).collect()),
            FieldSpec::Ext(f) => {
                let q = f.order()?;
                Some(
                    (0..q)
                        .map(|mut k| {
                            let mut c = Vec::with_capacity(f.e as usize);
                            for _ in 0..f.e {
                                c.push(k % f.p);
                                k /= f.p;
                            }
                            Scalar::Fq { c: upoly::trim(c), field: f.clone() }
                        })
                        .collect(),
                )
            }
            _ => None,
        }
    }

    /// Can scalars of `self` be embedded into `target`?
    pub fn embeds_into(&self, target: &FieldSpec) -> bool {
        match (self, target) {
            (a, b) if a == b => true,
            (FieldSpec::Prime(p), FieldSpec::Ext(f)) => *p == f.p,
            (FieldSpec::Prime(p), FieldSpec::RatFunc(q)) => p == q,
            _ => false,
        }
    }
}

fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "Fp:{p}"),
            FieldSpec::Ext(ext) => write!(f, "Fq:{}^{}", ext.p, ext.e),
            FieldSpec::RatFunc(p) => write!(f, "Fpt:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// `Q`, `Fp:<p>`, `Fq:<p>^<e>`, `Fpt:<p>`; `F<p>` is accepted as a
    /// shorthand for `Fp:<p>`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidField(format!("cannot parse field `{s}`"));
        let num = |t: &str| t.trim().parse::<u64>().map_err(|_| bad());
        if s == "Q" {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(rest) = s.strip_prefix("Fpt:") {
            return FieldSpec::ratfunc(num(rest)?);
        }
        if let Some(rest) = s.strip_prefix("Fp:") {
            return FieldSpec::prime(num(rest)?);
        }
        if let Some(rest) = s.strip_prefix("Fq:") {
            let (p, e) = rest.split_once('^').ok_or_else(bad)?;
            let e = u32::try_from(num(e)?).map_err(|_| bad())?;
            return FieldSpec::ext(num(p)?, e);
        }
        if let Some(rest) = s.strip_prefix('F') {
            if !rest.is_empty() && rest.chars().all(|c| c.is_ascii_digit()) {
                return FieldSpec::prime(num(rest)?);
            }
        }
        Err(bad())
    }
}

/// An element of one of the supported fields.
///
/// Canonical forms: rationals in lowest terms with positive denominator,
/// residues in `[0, p)`, extension residues reduced and trimmed, and
/// rational functions gcd-reduced with monic denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { v: u64, p: u64 },
    Fq { c: Vec<u64>, field: Arc<ExtField> },
    Fpt { num: Vec<u64>, den: Vec<u64>, p: u64 },
}

impl Scalar {
    pub fn rational(n: i64, d: i64) -> Scalar {
        Scalar::Q(BigRational::new(n.into(), d.into()))
    }

    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Q(_) => FieldSpec::Rationals,
            Scalar::Fp { p, .. } => FieldSpec::Prime(*p),
            Scalar::Fq { field, .. } => FieldSpec::Ext(field.clone()),
            Scalar::Fpt { p, .. } => FieldSpec::RatFunc(*p),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Scalar::Q(_) => 0,
            Scalar::Fp { p, .. } | Scalar::Fpt { p, .. } => *p,
            Scalar::Fq { field, .. } => field.p,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
            Scalar::Fq { c, .. } => c.is_empty(),
            Scalar::Fpt { num, .. } => num.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
            Scalar::Fq { c, .. } => c.as_slice() == [1],
            Scalar::Fpt { num, den, .. } => num.as_slice() == [1] && den.as_slice() == [1],
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<()> {
        let ok = match (self, other) {
            (Scalar::Q(_), Scalar::Q(_)) => true,
            (Scalar::Fp { p, .. }, Scalar::Fp { p: q, .. }) => p == q,
            (Scalar::Fq { field: a, .. }, Scalar::Fq { field: b, .. }) => Arc::ptr_eq(a, b) || a == b,
            (Scalar::Fpt { p, .. }, Scalar::Fpt { p: q, .. }) => p == q,
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: self.field().to_string(),
                right: other.field().to_string(),
            })
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, .. }) => Scalar::Fp { v: (a + b) % p, p: *p },
            (Scalar::Fq { c: a, field }, Scalar::Fq { c: b, .. }) => {
                Scalar::Fq { c: upoly::add(a, b, field.p), field: field.clone() }
            }
            (Scalar::Fpt { num: a, den: b, p }, Scalar::Fpt { num: c, den: d, .. }) => {
                let n = upoly::add(&upoly::mul(a, d, *p), &upoly::mul(c, b, *p), *p);
                ratfunc(n, upoly::mul(b, d, *p), *p)
            }
            _ => unreachable!(),
        })
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(-a),
            Scalar::Fp { v, p } => Scalar::Fp { v: (p - v) % p, p: *p },
            Scalar::Fq { c, field } => Scalar::Fq { c: upoly::neg(c, field.p), field: field.clone() },
            Scalar::Fpt { num, den, p } => Scalar::Fpt { num: upoly::neg(num, *p), den: den.clone(), p: *p },
        }
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.try_add(&other.neg())
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { v: a, p }, Scalar::Fp { v: b, .. }) => Scalar::Fp { v: upoly::mul_mod(*a, *b, *p), p: *p },
            (Scalar::Fq { c: a, field }, Scalar::Fq { c: b, .. }) => Scalar::Fq {
                c: upoly::rem(&upoly::mul(a, b, field.p), &field.modulus, field.p),
                field: field.clone(),
            },
            (Scalar::Fpt { num: a, den: b, p }, Scalar::Fpt { num: c, den: d, .. }) => {
                ratfunc(upoly::mul(a, c, *p), upoly::mul(b, d, *p), *p)
            }
            _ => unreachable!(),
        })
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Q(a) => Scalar::Q(a.recip()),
            Scalar::Fp { v, p } => Scalar::Fp { v: upoly::inv_mod(*v, *p), p: *p },
            Scalar::Fq { c, field } => Scalar::Fq {
                c: upoly::inv_rem(c, &field.modulus, field.p).expect("modulus is irreducible"),
                field: field.clone(),
            },
            Scalar::Fpt { num, den, p } => ratfunc(den.clone(), num.clone(), *p),
        })
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        self.try_mul(&other.inv()?)
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut acc = self.field().one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Frobenius p-th power map applied `e` times.
    fn frobenius(&self, e: u32) -> Scalar {
        let p = self.characteristic();
        let mut x = self.clone();
        for _ in 0..e {
            x = x.pow(p);
        }
        x
    }

    /// The unique `b` with `b^(p^e) = self` over a perfect field of
    /// characteristic p.
    pub fn pth_root(&self, e: u32) -> Result<Scalar> {
        match self {
            Scalar::Fp { .. } => Ok(self.clone()),
            Scalar::Fq { field, .. } => {
                // Frobenius has order field.e; invert it by the complementary power.
                let k = e % field.e;
                Ok(self.frobenius((field.e - k) % field.e))
            }
            _ => Err(Error::UnsupportedField { op: "pth_root", field: self.field().to_string() }),
        }
    }

    /// Like [`Scalar::pth_root`], but also accepts F_p(t) elements that
    /// happen to be p^e-th powers; `None` when no root exists in the field
    /// (or the field has characteristic 0).
    pub fn try_frobenius_root(&self, e: u32) -> Option<Scalar> {
        match self {
            Scalar::Q(_) => {
                if e == 0 {
                    Some(self.clone())
                } else {
                    None
                }
            }
            Scalar::Fp { .. } | Scalar::Fq { .. } => self.pth_root(e).ok(),
            Scalar::Fpt { num, den, p } => {
                let q = p.checked_pow(e)? as usize;
                // a^(1/q) for a in F_p[t]: only exponents divisible by q, F_p fixed by Frobenius
                let root = |a: &[u64]| -> Option<Vec<u64>> {
                    let mut out = Vec::new();
                    for (k, &c) in a.iter().enumerate() {
                        if c != 0 {
                            if k % q != 0 {
                                return None;
                            }
                            out.resize(k / q + 1, 0);
                            out[k / q] = c;
                        }
                    }
                    Some(out)
                };
                let lead = *den.last()?;
                // den is monic; divide its leading unit out for safety
                debug_assert_eq!(lead, 1);
                Some(ratfunc(root(num)?, root(den)?, *p))
            }
        }
    }

    /// Image under the canonical embedding into `target`.
    pub fn lift_into(&self, target: &FieldSpec) -> Result<Scalar> {
        if &self.field() == target {
            return Ok(self.clone());
        }
        match (self, target) {
            (Scalar::Fp { v, p }, FieldSpec::Ext(f)) if *p == f.p => {
                Ok(Scalar::Fq { c: upoly::trim(vec![*v]), field: f.clone() })
            }
            (Scalar::Fp { v, p }, FieldSpec::RatFunc(q)) if p == q => {
                Ok(Scalar::Fpt { num: upoly::trim(vec![*v]), den: vec![1], p: *p })
            }
            _ => Err(Error::FieldMismatch { left: self.field().to_string(), right: target.to_string() }),
        }
    }

    /// The rational value, if this is an element of ℚ.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Q(q) => Some(q),
            _ => None,
        }
    }

    /// Whether a printed form needs parentheses when used as a factor.
    pub(crate) fn is_compound(&self) -> bool {
        match self {
            Scalar::Q(q) => !q.is_integer(),
            Scalar::Fp { .. } => false,
            Scalar::Fq { c, .. } => c.iter().filter(|&&x| x != 0).count() > 1 || c.len() > 1,
            Scalar::Fpt { num, den, .. } => den.len() > 1 || num.iter().filter(|&&x| x != 0).count() > 1 || num.len() > 1,
        }
    }

    /// True when the canonical text starts with a minus sign.
    pub(crate) fn is_negative_literal(&self) -> bool {
        matches!(self, Scalar::Q(q) if q.is_negative())
    }
}

fn ratfunc(num: Vec<u64>, den: Vec<u64>, p: u64) -> Scalar {
    let num = upoly::trim(num);
    let den = upoly::trim(den);
    assert!(!den.is_empty(), "zero denominator in F_p(t)");
    if num.is_empty() {
        return Scalar::Fpt { num, den: vec![1], p };
    }
    let g = upoly::gcd(&num, &den, p);
    let (mut n, _) = upoly::divrem(&num, &g, p);
    let (mut d, _) = upoly::divrem(&den, &g, p);
    let lead = *d.last().expect("nonzero denominator");
    if lead != 1 {
        let inv = upoly::inv_mod(lead, p);
        n = upoly::scale(&n, inv, p);
        d = upoly::scale(&d, inv, p);
    }
    Scalar::Fpt { num: n, den: d, p }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => write!(f, "{q}"),
            Scalar::Fp { v, .. } => write!(f, "{v}"),
            Scalar::Fq { c, .. } => write!(f, "{}", upoly::fmt_poly(c, "w")),
            Scalar::Fpt { num, den, .. } => {
                if den.as_slice() == [1] {
                    write!(f, "{}", upoly::fmt_poly(num, "t"))
                } else {
                    write!(f, "({})/({})", upoly::fmt_poly(num, "t"), upoly::fmt_poly(den, "t"))
                }
            }
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);
forward_binop!(Div, div, try_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fq(field: &FieldSpec, c: &[u64]) -> Scalar {
        match field {
            FieldSpec::Ext(f) => Scalar::Fq { c: upoly::trim(c.to_vec()), field: f.clone() },
            _ => panic!(),
        }
    }

    #[test]
    fn rational_sum() {
        let s = Scalar::rational(1, 3) + Scalar::rational(1, 6);
        assert_eq!(s, Scalar::rational(1, 2));
    }

    #[test]
    fn prime_field_product() {
        let f7 = FieldSpec::prime(7).unwrap();
        assert!((f7.from_int(3) * f7.from_int(5)).is_one());
    }

    #[test]
    fn char_two_rational_functions() {
        let k = FieldSpec::ratfunc(2).unwrap();
        let t = k.generator().unwrap();
        let x = (&t + &k.one()).inv().unwrap();
        assert!((&x + &x).is_zero());
    }

    #[test]
    fn ratfunc_canonical_form() {
        let k = FieldSpec::ratfunc(3).unwrap();
        let t = k.generator().unwrap();
        // (t^2 - 1)/(2t + 2) = (t - 1)/2 = 2t - 2 = 2t + 1 over F_3
        let num = &(&t * &t) - &k.one();
        let den = &(&k.from_int(2) * &t) + &k.from_int(2);
        let q = num / den;
        assert_eq!(q, &(&k.from_int(2) * &t) + &k.one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let q = FieldSpec::Rationals;
        assert_eq!(q.one().try_div(&q.zero()), Err(Error::DivisionByZero));
        assert_eq!(q.zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn mixed_fields_are_an_error() {
        let a = FieldSpec::prime(5).unwrap().one();
        let b = FieldSpec::prime(7).unwrap().one();
        assert!(matches!(a.try_add(&b), Err(Error::FieldMismatch { .. })));
        assert!(matches!(a.try_mul(&FieldSpec::Rationals.one()), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn pth_root_examples() {
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(f5.from_int(2).pth_root(1).unwrap(), f5.from_int(2));
        let f3 = FieldSpec::prime(3).unwrap();
        assert!(f3.zero().pth_root(2).unwrap().is_zero());

        let f4 = FieldSpec::ext(2, 2).unwrap();
        let w = f4.generator().unwrap();
        // exhaustive search over the four elements for b^2 = w
        let roots: Vec<Scalar> = f4.elements().unwrap().into_iter().filter(|b| b.pow(2) == w).collect();
        assert_eq!(roots, vec![&w * &w]);
        assert_eq!(w.pth_root(1).unwrap(), &w * &w);
    }

    #[test]
    fn pth_root_rejects_imperfect_fields() {
        assert!(matches!(
            FieldSpec::Rationals.one().pth_root(1),
            Err(Error::UnsupportedField { .. })
        ));
        let k = FieldSpec::ratfunc(2).unwrap();
        assert!(k.generator().unwrap().pth_root(1).is_err());
        assert_eq!(k.generator().unwrap().try_frobenius_root(1), None);
        let t = k.generator().unwrap();
        assert_eq!((&t * &t).try_frobenius_root(1), Some(t));
    }

    #[test]
    fn field_grammar() {
        assert_eq!("Q".parse::<FieldSpec>().unwrap(), FieldSpec::Rationals);
        assert_eq!("Fp:7".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(7));
        assert_eq!("F2".parse::<FieldSpec>().unwrap(), FieldSpec::Prime(2));
        assert_eq!("Fpt:3".parse::<FieldSpec>().unwrap(), FieldSpec::RatFunc(3));
        let f4: FieldSpec = "Fq:2^2".parse().unwrap();
        assert_eq!(f4.to_string(), "Fq:2^2");
        match &f4 {
            FieldSpec::Ext(e) => assert_eq!(e.modulus(), &[1, 1, 1]),
            _ => panic!(),
        }
        assert!("Fp:9".parse::<FieldSpec>().is_err());
        assert!("Fq:2^0".parse::<FieldSpec>().is_err());
        assert!("R".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn sampling_contracts() {
        let q = FieldSpec::Rationals;
        for seed in 0..50 {
            let s = q.sample_seeded(seed);
            let r = s.as_rational().unwrap();
            // canonical form may shrink numerator/denominator, never grow them
            assert!(r.numer().abs() <= BigInt::from(1000));
            assert!(r.denom() <= &BigInt::from(1000));
            assert_eq!(q.sample_seeded(seed), s);
        }
        let f2 = FieldSpec::prime(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let s = f2.sample(&mut rng);
            assert!(s.is_zero() || s.is_one());
        }
        let k = FieldSpec::ratfunc(2).unwrap();
        let distinct: std::collections::HashSet<Scalar> = (0..20).map(|s| k.sample_seeded(s)).collect();
        assert!(distinct.len() > 2);
    }

    #[test]
    fn lifting() {
        let f2 = FieldSpec::prime(2).unwrap();
        let f16 = FieldSpec::ext(2, 4).unwrap();
        let one = f2.one().lift_into(&f16).unwrap();
        assert!(one.is_one());
        assert_eq!(fq(&f16, &[1]), one);
        assert!(f2.one().lift_into(&FieldSpec::Rationals).is_err());
    }

    #[test]
    fn rational_into_prime_field() {
        let f5 = FieldSpec::prime(5).unwrap();
        let half = f5.from_rational(&BigRational::new(1.into(), 2.into())).unwrap();
        assert_eq!(half, f5.from_int(3));
        assert!(f5.from_rational(&BigRational::new(1.into(), 5.into())).is_err());
    }
}
