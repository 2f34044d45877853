//! CP-expansions: the minimal support set `S(f)` and unit coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::mpoly::{Exponent, Frame, Poly};

/// Antichain of exponents: the componentwise-minimal elements of a support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportSet {
    exps: Vec<Exponent>,
}

impl SupportSet {
    pub fn exponents(&self) -> &[Exponent] {
        &self.exps
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn contains(&self, e: &Exponent) -> bool {
        self.exps.binary_search(e).is_ok()
    }

    /// Elements of total degree at most `n`.
    pub fn truncated(&self, n: u32) -> Vec<Exponent> {
        self.exps.iter().filter(|e| e.degree() <= n).cloned().collect()
    }

    pub fn is_antichain(&self) -> bool {
        self.exps
            .iter()
            .enumerate()
            .all(|(i, a)| self.exps.iter().enumerate().all(|(j, b)| i == j || !a.divides(b)))
    }
}

/// Monomial orderings used to break ties when assigning terms to units.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MonomialOrder {
    /// Graded lexicographic.
    #[default]
    Grlex,
    Lex,
    /// Graded reverse lexicographic.
    Grevlex,
}

impl MonomialOrder {
    pub const ALL: [MonomialOrder; 3] =
        [MonomialOrder::Grlex, MonomialOrder::Lex, MonomialOrder::Grevlex];

    /// Compares so that `1` is the smallest monomial and `x_0 > x_1 > ...`.
    pub fn cmp(&self, a: &Exponent, b: &Exponent) -> Ordering {
        let lex = || a.as_slice().cmp(b.as_slice());
        match self {
            MonomialOrder::Lex => lex(),
            MonomialOrder::Grlex => a.degree().cmp(&b.degree()).then_with(lex),
            MonomialOrder::Grevlex => a.degree().cmp(&b.degree()).then_with(|| {
                for (x, y) in a.as_slice().iter().zip(b.as_slice()).rev() {
                    if x != y {
                        return y.cmp(x);
                    }
                }
                Ordering::Equal
            }),
        }
    }

    pub fn min<'a>(&self, exps: impl IntoIterator<Item = &'a Exponent>) -> Option<&'a Exponent> {
        exps.into_iter().min_by(|a, b| self.cmp(a, b))
    }
}

/// `f = Σ_{α ∈ S(f)} c_α x^α` with every `c_α` a unit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CPExpansion {
    support: SupportSet,
    units: BTreeMap<Exponent, Poly>,
}

impl CPExpansion {
    pub fn support(&self) -> &SupportSet {
        &self.support
    }

    pub fn unit(&self, alpha: &Exponent) -> Option<&Poly> {
        self.units.get(alpha)
    }

    pub fn units(&self) -> impl Iterator<Item = (&Exponent, &Poly)> {
        self.units.iter()
    }

    pub fn reassemble(&self) -> Poly {
        let mut it = self.units.iter();
        let (e0, c0) = it.next().expect("nonempty expansion");
        let mut out = c0.mul_monomial(e0, &c0.field().one());
        for (e, c) in it {
            out = out + c.mul_monomial(e, &c.field().one());
        }
        out
    }
}

/// The componentwise-minimal exponents of the support of `f`.
pub fn support_min(f: &Poly) -> Result<SupportSet> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial("support set"));
    }
    let mut all: Vec<&Exponent> = f.terms().map(|(e, _)| e).collect();
    all.sort_by_key(|e| e.degree());
    let mut kept: Vec<Exponent> = Vec::new();
    for e in all {
        if !kept.iter().any(|k| k.divides(e)) {
            kept.push(e.clone());
        }
    }
    kept.sort();
    Ok(SupportSet { exps: kept })
}

/// CP-expansion where each support term goes to the `order`-smallest
/// element of `S(f)` dividing it.
pub fn cp_expand(f: &Poly, order: MonomialOrder) -> Result<CPExpansion> {
    let support = support_min(f)?;
    let mut units: BTreeMap<Exponent, Poly> = support
        .exps
        .iter()
        .map(|a| (a.clone(), Poly::zero(f.field(), f.nvars())))
        .collect();
    for (e, c) in f.terms() {
        let alpha = order
            .min(support.exps.iter().filter(|a| a.divides(e)))
            .expect("every support term is divisible by a minimal element")
            .clone();
        let rest = e.checked_sub(&alpha).unwrap();
        units.get_mut(&alpha).unwrap().add_term(rest, c.clone());
    }
    Ok(CPExpansion { support, units })
}

/// Whether every element of `S(f)` lies in the u-block.
pub fn has_u_expansion(f: &Poly, frame: &Frame) -> bool {
    let ys = frame.y_indices();
    match support_min(f) {
        Ok(s) => s.exps.iter().all(|e| e.degree_in(&ys) == 0),
        Err(_) => false,
    }
}

/// Weighted order `min_{α ∈ S(f)} ω·α`; `None` stands for `+∞` (f = 0).
pub fn monomial_valuation(f: &Poly, weights: &[u32]) -> Result<Option<u64>> {
    if weights.len() != f.nvars() || weights.contains(&0) {
        return Err(Error::precondition("weights must be positive, one per variable"));
    }
    if f.is_zero() {
        return Ok(None);
    }
    let s = support_min(f)?;
    Ok(s.exps.iter().map(|e| e.weighted_degree(weights)).min())
}

/// Compares `S(f) ∩ M_N` computed in the coordinates `x` of `f` with the same
/// set in the coordinates `z_j = x_j + h_j`, where every perturbation `h_j`
/// has order at least `N + 1`.
pub fn check_truncated_support_equality(f: &Poly, perturbations: &[Poly], n: u32) -> Result<bool> {
    let nv = f.nvars();
    if perturbations.len() != nv {
        return Err(Error::FrameMismatch("one perturbation per variable is required".into()));
    }
    if n == 0 {
        return Err(Error::precondition("N must be at least 1"));
    }
    for h in perturbations {
        if h.nvars() != nv || h.field() != f.field() {
            return Err(Error::FrameMismatch("perturbation lives in another ring".into()));
        }
        if matches!(h.ord(), Some(o) if o <= n) {
            return Err(Error::precondition(format!(
                "perturbation of order {} does not exceed N = {n}",
                h.ord().unwrap()
            )));
        }
    }
    // x = z - h(x), solved by fixed-point iteration up to degree `bound`
    let bound = 2 * n + 2;
    let z: Vec<Poly> = (0..nv).map(|i| Poly::var(f.field(), nv, i)).collect();
    let mut x = z.clone();
    for _ in 0..=bound {
        let next: Vec<Poly> = perturbations
            .iter()
            .zip(&z)
            .map(|(h, zi)| {
                let hx = h.compose(&x).expect("same ring");
                (zi - &hx).truncate(bound).0
            })
            .collect();
        if next == x {
            break;
        }
        x = next;
    }
    let g = f.compose(&x)?.truncate(bound).0;
    let lhs = support_min(&f.truncate(n).0).map(|s| s.truncated(n)).unwrap_or_default();
    let rhs = support_min(&g.truncate(n).0).map(|s| s.truncated(n)).unwrap_or_default();
    Ok(lhs == rhs)
}
