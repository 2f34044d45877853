//! Tangent cone analysis: ridge, directrix, extremality and the linear
//! change of coordinates that puts the directrix on the y-block.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::linalg;
use crate::mpoly::{Exponent, Frame, Poly};
use crate::scalars::{FieldSpec, Scalar};

/// One ridge generator `form^(p^exponent)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RidgeGen {
    pub form: Poly,
    pub exponent: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RidgeData {
    /// Generators with linearly independent forms, by increasing exponent.
    pub generators: Vec<RidgeGen>,
    pub char0: bool,
}

fn check_cone(f: &Poly) -> Result<u32> {
    if !f.field().is_perfect() {
        return Err(Error::UnsupportedField { op: "ridge", field: f.field().to_string() });
    }
    let m = f.ord().ok_or(Error::ZeroPolynomial("tangent cone"))?;
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    Ok(m)
}

/// All exponents of total degree `d` in `n` variables.
pub(crate) fn monomials_of_degree(n: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=d).rev() {
            prefix.push(k);
            rec(n, d - k, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n == 0 {
        if d == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    rec(n, d, &mut Vec::new(), &mut out);
    out
}

/// The exponents `p^e <= m` at which additive generators can occur.
fn levels(p: u64, m: u32) -> Vec<(u32, u64)> {
    if p == 0 {
        return vec![(0, 1)];
    }
    let mut out = Vec::new();
    let (mut e, mut q) = (0u32, 1u64);
    while q <= m as u64 {
        out.push((e, q));
        e += 1;
        q *= p;
    }
    out
}

fn pure_power_var(e: &Exponent) -> Option<usize> {
    let nz: Vec<usize> = (0..e.len()).filter(|&i| e.get(i) > 0).collect();
    (nz.len() == 1).then(|| nz[0])
}

/// Rows of a matrix whose columns are the degree-`q` monomials of `polys`,
/// non-pure monomials first. Returns the rows and the column monomials.
fn coefficient_rows(polys: &[Poly], q: u64) -> (Vec<Vec<Scalar>>, Vec<Exponent>) {
    let mut cols: BTreeSet<Exponent> = BTreeSet::new();
    for g in polys {
        for (e, _) in g.terms() {
            cols.insert(e.clone());
        }
    }
    let mut cols: Vec<Exponent> = cols.into_iter().collect();
    cols.sort_by_key(|e| (pure_power_var(e).is_some() && e.degree() as u64 == q, e.clone()));
    let rows = polys
        .iter()
        .map(|g| cols.iter().map(|e| g.coeff(e)).collect())
        .collect();
    (rows, cols)
}

/// Reads an additive row `Σ c_j X_j^q` as the linear form `Σ c_j^(1/q) X_j`.
fn additive_form(
    row: &[Scalar],
    cols: &[Exponent],
    q: u64,
    e: u32,
    field: &FieldSpec,
    n: usize,
) -> Option<Poly> {
    let mut form = Poly::zero(field, n);
    for (c, col) in row.iter().zip(cols) {
        if c.is_zero() {
            continue;
        }
        let j = pure_power_var(col).filter(|_| col.degree() as u64 == q)?;
        let root = if e == 0 { c.clone() } else { c.try_frobenius_root(e)? };
        form.add_term(Exponent::unit(n, j, 1), root);
    }
    Some(form)
}

fn form_row(l: &Poly) -> Vec<Scalar> {
    (0..l.nvars()).map(|i| l.coeff(&Exponent::unit(l.nvars(), i, 1))).collect()
}

fn row_form(row: &[Scalar], field: &FieldSpec) -> Poly {
    let n = row.len();
    Poly::from_terms(field, n, row.iter().enumerate().map(|(i, c)| (Exponent::unit(n, i, 1), c.clone())))
}

/// Ridge of the cone `F = 0`. Its ideal is generated by the Hasse
/// derivatives `Δ_{X^α} F`, `|α| < m`; the degree-`d` part `I_d` of that
/// ideal is built incrementally as the span of the derivatives of degree `d`
/// and of `X_j·I_{d-1}`. At each degree `q = p^e` the additive elements
/// `Σ c_j X_j^q = L^q` of `I_q` give the generators.
pub fn ridge(f: &Poly) -> Result<RidgeData> {
    let m = check_cone(f)?;
    let field = f.field().clone();
    let n = f.nvars();
    let p = field.characteristic();
    let max_q = levels(p, m).last().map_or(1, |l| l.1);
    let mut generators: Vec<RidgeGen> = Vec::new();
    let mut span: Vec<Vec<Scalar>> = Vec::new();
    let mut prev: Vec<Poly> = Vec::new();
    for d in 1..=max_q as u32 {
        let mut gens: Vec<Poly> = monomials_of_degree(n, m - d)
            .into_iter()
            .map(|a| f.hasse_multi(&a))
            .filter(|g| !g.is_zero())
            .collect();
        for b in &prev {
            for j in 0..n {
                gens.push(b.mul_monomial(&Exponent::unit(n, j, 1), &field.one()));
            }
        }
        if gens.is_empty() {
            prev.clear();
            continue;
        }
        let (mut rows, cols) = coefficient_rows(&gens, d as u64);
        let pivot_cols: Vec<usize> = (0..cols.len()).collect();
        let pivots = linalg::rref(&mut rows, &pivot_cols);
        prev = rows.iter().map(|r| row_poly(r, &cols, &field, n)).collect();
        let Some(e) = levels(p, m).iter().find(|l| l.1 == d as u64).map(|l| l.0) else {
            continue;
        };
        for (row, &pc) in rows.iter().zip(&pivots) {
            if !(pure_power_var(&cols[pc]).is_some() && cols[pc].degree() == d) {
                continue;
            }
            if let Some(form) = additive_form(row, &cols, d as u64, e, &field, n) {
                let r = form_row(&form);
                let mut trial = span.clone();
                trial.push(r.clone());
                if linalg::rank(&trial) > span.len() {
                    span.push(r);
                    generators.push(RidgeGen { form, exponent: e });
                }
            }
        }
    }
    Ok(RidgeData { generators, char0: p == 0 })
}

fn row_poly(row: &[Scalar], cols: &[Exponent], field: &FieldSpec, n: usize) -> Poly {
    Poly::from_terms(field, n, row.iter().zip(cols).map(|(c, e)| (e.clone(), c.clone())))
}

/// The directrix: independent linear forms `L_1..L_r` (reduced row echelon
/// form) with `F ∈ k[L_1..L_r]` and `r` minimal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectrixData {
    pub r: usize,
    pub forms: Vec<Poly>,
    /// Pivot variable of each form.
    pub pivots: Vec<usize>,
    pub ridge: RidgeData,
    pub field: FieldSpec,
}

/// A linear change of coordinates of the whole ring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordinateChange {
    /// Image of every old variable in the new ring.
    pub images: Vec<Poly>,
    /// Old index of every new variable.
    pub order: Vec<usize>,
    pub frame: Frame,
}

impl CoordinateChange {
    pub fn apply(&self, f: &Poly) -> Result<Poly> {
        f.compose(&self.images)
    }

    pub fn is_identity(&self) -> bool {
        self.images
            .iter()
            .enumerate()
            .all(|(i, g)| *g == Poly::var(g.field(), g.nvars(), i))
    }
}

fn echelon_forms(forms: &[Poly], field: &FieldSpec, n: usize) -> (Vec<Poly>, Vec<usize>) {
    let mut rows: Vec<Vec<Scalar>> = forms.iter().map(form_row).collect();
    let cols: Vec<usize> = (0..n).collect();
    let pivots = linalg::rref(&mut rows, &cols);
    (rows.iter().map(|r| row_form(r, field)).collect(), pivots)
}

impl DirectrixData {
    /// New coordinates: the non-pivot variables form the u-block, and
    /// `y_i = L_i` takes the name of its pivot variable.
    pub fn change_of_coordinates(&self, frame: &Frame) -> Result<CoordinateChange> {
        let n = frame.nvars();
        let field = self.field.clone();
        let non_pivots: Vec<usize> = (0..n).filter(|i| !self.pivots.contains(i)).collect();
        let mut order = non_pivots.clone();
        order.extend(&self.pivots);
        let position = |old: usize| order.iter().position(|&o| o == old).unwrap();
        let mut images = Vec::with_capacity(n);
        for old in 0..n {
            let new_var = Poly::var(&field, n, position(old));
            match self.pivots.iter().position(|&p| p == old) {
                None => images.push(new_var),
                Some(i) => {
                    let l = &self.forms[i];
                    let mut img = new_var;
                    for &j in &non_pivots {
                        let c = l.coeff(&Exponent::unit(n, j, 1));
                        if !c.is_zero() {
                            img = img - Poly::var(&field, n, position(j)).scale(&c);
                        }
                    }
                    images.push(img);
                }
            }
        }
        let names = frame.names();
        let u: Vec<&str> = non_pivots.iter().map(|&i| names[i].as_str()).collect();
        let y: Vec<&str> = self.pivots.iter().map(|&i| names[i].as_str()).collect();
        let new_frame = Frame::new(&u, &y)?.with_precision(frame.precision());
        Ok(CoordinateChange { images, order, frame: new_frame })
    }
}

/// Directrix of the cone `F = 0` for homogeneous `F` over a perfect field.
pub fn directrix(f: &Poly) -> Result<DirectrixData> {
    check_cone(f)?;
    let field = f.field().clone();
    let n = f.nvars();
    let ridge = ridge(f)?;
    let candidates: Vec<Poly> = ridge.generators.iter().map(|g| g.form.clone()).collect();
    let (forms, pivots) = echelon_forms(&candidates, &field, n);
    if !depends_only_on(f, &forms, &pivots)? {
        return Err(Error::Internal("initial form is not a polynomial in the ridge forms".into()));
    }
    Ok(DirectrixData { r: forms.len(), forms, pivots, ridge, field })
}

/// Whether `F` becomes a polynomial in the pivot coordinates after the
/// change `x_pivot ↦ L`.
fn depends_only_on(f: &Poly, forms: &[Poly], pivots: &[usize]) -> Result<bool> {
    let n = f.nvars();
    if forms.is_empty() {
        return Ok(f.is_constant());
    }
    let data = DirectrixData {
        r: forms.len(),
        forms: forms.to_vec(),
        pivots: pivots.to_vec(),
        ridge: RidgeData { generators: Vec::new(), char0: true },
        field: f.field().clone(),
    };
    let names = Poly::default_names(n);
    let frame = Frame::new::<String>(&[], &names)?;
    let change = data.change_of_coordinates(&frame)?;
    let g = change.apply(f)?;
    let u_block: Vec<usize> = (0..n - forms.len()).collect();
    Ok(!g.involves(&u_block))
}

/// Extremality witness `In(f) = c·L^m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalWitness {
    pub c: Scalar,
    pub form: Poly,
}

/// Decides whether the initial form of `f` is a scaled `m`-th power of a
/// linear form over the coefficient field.
pub fn is_extremal(f: &Poly) -> Result<Option<ExtremalWitness>> {
    let m = f.ord().ok_or(Error::ZeroPolynomial("multiplicity"))?;
    if m <= 1 {
        return Err(Error::precondition(format!("multiplicity {m} is below 2")));
    }
    let big_f = f.initial_form()?;
    let d = directrix(&big_f)?;
    if d.r != 1 {
        return Ok(None);
    }
    let form = d.forms[0].clone();
    let c = big_f.coeff(&Exponent::unit(f.nvars(), d.pivots[0], m));
    if big_f != form.pow(m).scale(&c) {
        return Err(Error::Internal("codimension-one directrix without an m-th power".into()));
    }
    Ok(Some(ExtremalWitness { c, form }))
}

/// Result of [`normalize_frame`].
#[derive(Debug, Clone)]
pub struct Normalized {
    pub f: Poly,
    pub frame: Frame,
    pub directrix: DirectrixData,
    pub change: CoordinateChange,
}

/// Moves the directrix of `In(f)` onto the y-block. `frame` supplies the
/// variable names and precision; its split is ignored.
pub fn normalize_frame(f: &Poly, frame: &Frame) -> Result<Normalized> {
    frame.check_poly(f)?;
    let big_f = f.initial_form()?;
    let d = directrix(&big_f)?;
    if d.r == 0 {
        return Err(Error::precondition("the initial form is constant"));
    }
    let change = d.change_of_coordinates(frame)?;
    let g = change.apply(f)?;
    Ok(Normalized { f: g, frame: change.frame.clone(), directrix: d, change })
}

/// Whether the y-block of `frame` determines the directrix of `f`.
pub fn frame_is_normalized(f: &Poly, frame: &Frame) -> Result<bool> {
    frame.check_poly(f)?;
    let d = directrix(&f.initial_form()?)?;
    let us = frame.u_indices();
    Ok(d.r == frame.y_count() && d.forms.iter().all(|l| !l.involves(&us)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mpoly::parse_poly;

    fn p(s: &str, names: &[&str], field: &FieldSpec) -> Poly {
        let names: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        parse_poly(s, &names, field).unwrap()
    }

    fn forms_of(r: &RidgeData) -> Vec<(Poly, u32)> {
        r.generators.iter().map(|g| (g.form.clone(), g.exponent)).collect()
    }

    #[test]
    fn ridge_examples() {
        let f2 = FieldSpec::prime(2).unwrap();
        let xy = ["X", "Y"];
        let r = ridge(&p("X^2 + Y^2", &xy, &f2)).unwrap();
        assert_eq!(forms_of(&r), vec![(p("X + Y", &xy, &f2), 1)]);

        let q = FieldSpec::Rationals;
        let r = ridge(&p("X^2 + X*Y + Y^2", &xy, &q)).unwrap();
        assert_eq!(r.generators.len(), 2);
        assert!(r.generators.iter().all(|g| g.exponent == 0));

        let r = ridge(&p("X^5", &xy, &q)).unwrap();
        assert_eq!(r.generators.len(), 1);
        assert_eq!(r.generators[0].form.len(), 1);
        assert!(r.char0);

        // x1 enters only through a product with a first-order derivative
        let f2_3 = ["x0", "x1", "x2"];
        let g = p("x0^2 + x0*x1 + x1^2 + x1*x2", &f2_3, &f2);
        assert_eq!(ridge(&g).unwrap().generators.len(), 3);
        assert_eq!(directrix(&g).unwrap().r, 3);
    }

    #[test]
    fn directrix_examples() {
        let q = FieldSpec::Rationals;
        let d = directrix(&p("X^2", &["Y", "X"], &q)).unwrap();
        assert_eq!(d.r, 1);
        assert_eq!(d.forms[0], p("X", &["Y", "X"], &q));

        let names = ["U", "Y1", "Y2", "Y3"];
        let d = directrix(&p("Y1^4 + Y1^2*Y2^2 + Y3^4", &names, &q)).unwrap();
        assert_eq!(d.r, 3);
        assert_eq!(d.pivots, vec![1, 2, 3]);

        let f2t = FieldSpec::ratfunc(2).unwrap();
        assert!(matches!(
            directrix(&p("X^2 + t*Y^2", &["X", "Y"], &f2t)),
            Err(Error::UnsupportedField { .. })
        ));
        assert!(matches!(directrix(&p("X^2 + Y", &["X", "Y"], &q)), Err(Error::NotHomogeneous)));
    }

    #[test]
    fn extremality_examples() {
        let f2 = FieldSpec::prime(2).unwrap();
        let w = is_extremal(&p("x^2 + y^4 + y^5", &["x", "y"], &f2)).unwrap().unwrap();
        assert_eq!(w.form, p("x", &["x", "y"], &f2));

        let q = FieldSpec::Rationals;
        let names = ["u", "y1", "y2", "y3"];
        let f = p("y1^4 + y1^2*(y2 + u^2)^2 + y3^4 + y3*u^7 + u^12", &names, &q);
        assert!(is_extremal(&f).unwrap().is_none());

        let g = p("(x + y)^3 + x^4", &["x", "y"], &q);
        let w = is_extremal(&g).unwrap().unwrap();
        assert_eq!(w.form, p("x + y", &["x", "y"], &q));
        assert!(w.c.is_one());

        assert!(matches!(is_extremal(&p("x + y^2", &["x", "y"], &q)), Err(Error::Precondition(_))));
    }

    #[test]
    fn normalization_examples() {
        let q = FieldSpec::Rationals;
        let frame = Frame::parse("x,y").unwrap();
        let n = normalize_frame(&p("(x + y)^2 + y^5", &["x", "y"], &q), &frame).unwrap();
        assert_eq!(n.frame.spec_string(), "y|x");
        assert_eq!(n.f.initial_form().unwrap(), p("x^2", &["y", "x"], &q));

        let n = normalize_frame(&p("x^2 + y^4 + y^5", &["x", "y"], &q), &frame).unwrap();
        assert_eq!(n.frame.spec_string(), "y|x");
        assert_eq!(n.f, p("x^2 + y^4 + y^5", &["y", "x"], &q));

        let frame = Frame::parse("u|y1,y2").unwrap();
        let f = p("y1*y2 + u^5", &["u", "y1", "y2"], &q);
        let n = normalize_frame(&f, &frame).unwrap();
        assert!(n.change.is_identity());
        assert_eq!(n.f, f);
        assert!(frame_is_normalized(&f, &frame).unwrap());
    }

    #[test]
    fn monomial_enumeration() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_of_degree(1, 4), vec![vec![4]]);
        assert_eq!(monomials_of_degree(0, 0).len(), 1);
    }
}
