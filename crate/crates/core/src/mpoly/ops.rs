use std::collections::BTreeMap;

use num_bigint::BigInt;

use super::{Exponent, Frame, Poly, TruncSeries};
use crate::error::{Error, Result};
use crate::scalars::Scalar;

fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

impl Poly {
    /// Hasse derivative: the coefficient of `T^i` in `f(.., x_var + T, ..)`.
    pub fn hasse_derivative(&self, var: usize, i: u32) -> Poly {
        let mut out = Poly::zero(self.field(), self.nvars());
        for (e, c) in self.terms() {
            let k = e.get(var);
            if k < i {
                continue;
            }
            let b = self.field().from_bigint(&binomial(k, i));
            if b.is_zero() {
                continue;
            }
            let mut v = e.as_slice().to_vec();
            v[var] -= i;
            out.add_term(Exponent::new(v), c * &b);
        }
        out
    }

    /// The multi-index operator `Δ_{X^α}`, a product of one-variable Hasse
    /// derivatives.
    pub fn hasse_multi(&self, alpha: &[u32]) -> Poly {
        let mut out = Poly::zero(self.field(), self.nvars());
        'terms: for (e, c) in self.terms() {
            let mut coeff = c.clone();
            let mut v = e.as_slice().to_vec();
            for (j, &a) in alpha.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                if v[j] < a {
                    continue 'terms;
                }
                coeff = &coeff * &self.field().from_bigint(&binomial(v[j], a));
                if coeff.is_zero() {
                    continue 'terms;
                }
                v[j] -= a;
            }
            out.add_term(Exponent::new(v), coeff);
        }
        out
    }

    /// Replaces variable `i` by `images[i]`. All images share one ring, which
    /// may differ in variable count from `self`'s.
    pub fn compose(&self, images: &[Poly]) -> Result<Poly> {
        if images.len() != self.nvars() {
            return Err(Error::FrameMismatch(format!(
                "{} images for {} variables",
                images.len(),
                self.nvars()
            )));
        }
        let (field, nv) = match images.first() {
            Some(g) => (g.field().clone(), g.nvars()),
            None => return Ok(self.clone()),
        };
        for g in images {
            if g.field() != &field || g.nvars() != nv {
                return Err(Error::FrameMismatch("images live in different rings".into()));
            }
        }
        if &field != self.field() {
            return Err(Error::FieldMismatch {
                left: self.field().to_string(),
                right: field.to_string(),
            });
        }
        let mut powers: Vec<Vec<Poly>> =
            images.iter().map(|_| vec![Poly::one(&field, nv)]).collect();
        let mut out = Poly::zero(&field, nv);
        for (e, c) in self.terms() {
            let mut term = Poly::constant(&field, nv, c.clone());
            for (i, &k) in e.as_slice().iter().enumerate() {
                if k == 0 {
                    continue;
                }
                while powers[i].len() <= k as usize {
                    let next = powers[i].last().unwrap() * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][k as usize];
            }
            out = out + term;
        }
        Ok(out)
    }

    /// Substitutes the given variables, leaving the others fixed.
    pub fn substitute(&self, assignment: &BTreeMap<usize, Poly>) -> Result<Poly> {
        let images: Vec<Poly> = (0..self.nvars())
            .map(|i| {
                assignment
                    .get(&i)
                    .cloned()
                    .unwrap_or_else(|| Poly::var(self.field(), self.nvars(), i))
            })
            .collect();
        self.compose(&images)
    }

    /// Convenience form of [`Poly::substitute`] for a single variable.
    pub fn substitute_var(&self, var: usize, image: &Poly) -> Result<Poly> {
        let mut m = BTreeMap::new();
        m.insert(var, image.clone());
        self.substitute(&m)
    }

    /// Lex-leading term (largest exponent vector).
    fn leading(&self) -> Option<(&Exponent, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        let (de, dc) = d.leading()?;
        let dc_inv = dc.inv().ok()?;
        let mut r = self.clone();
        let mut q = Poly::zero(self.field(), self.nvars());
        while let Some((re, rc)) = r.leading() {
            let e = re.checked_sub(de)?;
            let c = rc * &dc_inv;
            r = r - d.mul_monomial(&e, &c);
            q.add_term(e, c);
        }
        Some(q)
    }

    /// Resultant in `var`: the determinant of the Sylvester matrix, computed
    /// by fraction-free elimination.
    pub fn resultant_in(&self, g: &Poly, var: usize) -> Result<Poly> {
        self.check_compatible(g)?;
        let df = self.degree_in(var).unwrap_or(0) as usize;
        let dg = g.degree_in(var).unwrap_or(0) as usize;
        if df == 0 || self.is_zero() {
            return Err(Error::DegreeZero(var));
        }
        if dg == 0 || g.is_zero() {
            return Err(Error::DegreeZero(var));
        }
        let cf = self.coefficients_in(var);
        let cg = g.coefficients_in(var);
        let size = df + dg;
        let zero = Poly::zero(self.field(), self.nvars());
        let mut m: Vec<Vec<Poly>> = vec![vec![zero.clone(); size]; size];
        for i in 0..dg {
            for (k, c) in cf.iter().enumerate() {
                m[i][i + df - k] = c.clone();
            }
        }
        for i in 0..df {
            for (k, c) in cg.iter().enumerate() {
                m[dg + i][i + dg - k] = c.clone();
            }
        }
        Ok(bareiss_det(m, &zero))
    }

    /// Inverse of a unit modulo total degree `frame.precision() + 1`.
    pub fn invert_unit(&self, frame: &Frame) -> Result<TruncSeries> {
        let n = frame.precision();
        let w = vec![1u32; self.nvars()];
        let g = self.invert_unit_weighted(&w, n as u64)?;
        Ok(TruncSeries::new(g, n))
    }

    /// Inverse of a unit modulo weighted degree `bound + 1`, computed one
    /// weighted-homogeneous layer at a time.
    pub fn invert_unit_weighted(&self, weights: &[u32], bound: u64) -> Result<Poly> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(Error::NotAUnit);
        }
        let c0_inv = c0.inv()?;
        let (h, _) = self.truncate_weighted(weights, bound);
        let mut h_layers: BTreeMap<u64, Poly> = BTreeMap::new();
        for (e, c) in h.terms() {
            let w = e.weighted_degree(weights);
            if w == 0 {
                continue;
            }
            h_layers
                .entry(w)
                .or_insert_with(|| Poly::zero(self.field(), self.nvars()))
                .add_term(e.clone(), c.clone());
        }
        let neg_inv = -&c0_inv;
        let mut g_layers: Vec<Poly> = vec![Poly::constant(self.field(), self.nvars(), c0_inv)];
        for w in 1..=bound {
            let mut acc = Poly::zero(self.field(), self.nvars());
            for (&j, hj) in h_layers.range(1..=w) {
                let gl = &g_layers[(w - j) as usize];
                if !gl.is_zero() {
                    acc = acc + hj * gl;
                }
            }
            g_layers.push(acc.scale(&neg_inv));
        }
        let mut g = Poly::zero(self.field(), self.nvars());
        for layer in g_layers {
            g = g + layer;
        }
        Ok(g)
    }
}

fn bareiss_det(mut m: Vec<Vec<Poly>>, zero: &Poly) -> Poly {
    let n = m.len();
    let mut sign_neg = false;
    let mut prev = Poly::one(zero.field(), zero.nvars());
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign_neg = !sign_neg;
                }
                None => return zero.clone(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = zero.clone();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_neg {
        -det
    } else {
        det
    }
}
