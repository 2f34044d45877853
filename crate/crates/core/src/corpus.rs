//! A fixed corpus of test singularities and seeded generators for random
//! families.

use rand::Rng;
use serde::Serialize;

use crate::error::Result;
use crate::mpoly::{parse_poly, Exponent, Frame, Poly};
use crate::scalars::FieldSpec;
use crate::value::NuValue;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Extremal,
    NonExtremal,
    /// `(y - s)^m`: a power of a regular parameter.
    PerfectPower,
}

#[derive(Debug, Clone, Serialize)]
pub struct CorpusItem {
    pub name: &'static str,
    pub field: &'static str,
    /// Frame specification; without `|` the frame is normalized on use.
    pub vars: &'static str,
    pub poly: &'static str,
    pub kind: Kind,
    /// Samuel slope for extremal items, refined slope otherwise.
    pub expected: Option<NuValue>,
}

impl CorpusItem {
    pub fn field_spec(&self) -> Result<FieldSpec> {
        self.field.parse()
    }

    pub fn build(&self) -> Result<(Poly, Frame)> {
        let field = self.field_spec()?;
        let frame = Frame::parse(self.vars)?;
        let f = parse_poly(self.poly, frame.names(), &field)?;
        Ok((f, frame))
    }
}

const fn item(
    name: &'static str,
    field: &'static str,
    vars: &'static str,
    poly: &'static str,
    kind: Kind,
) -> CorpusItem {
    CorpusItem { name, field, vars, poly, kind, expected: None }
}

fn with(mut it: CorpusItem, n: i64, d: i64) -> CorpusItem {
    it.expected = Some(NuValue::exact(n, d));
    it
}

/// The fixed corpus.
pub fn corpus() -> Vec<CorpusItem> {
    use Kind::*;
    vec![
        with(item("intro-f2", "F2", "y|x", "x^2 + y^4 + y^5", Extremal), 5, 2),
        with(item("intro-q", "Q", "y|x", "x^2 + y^4 + y^5", Extremal), 2, 1),
        with(item("cusp", "Q", "u|z", "z^2 + u^3", Extremal), 3, 2),
        with(item("cubic-tower", "Q", "u|z", "z^3 + 3*z*u^5 + u^7", Extremal), 7, 3),
        with(item("rotated", "Q", "x,y", "(x + y)^2 + x^5", Extremal), 5, 2),
        with(item("cubic-f3", "F3", "u|z", "z^3 + u^4 + u^5*z", Extremal), 4, 3),
        with(item("hidden-square-f2", "F2", "u|y", "(y + u^2)^2 + u^5", Extremal), 5, 2),
        with(item("two-params", "Q", "u1,u2|y", "y^2 + u1^3 + u2^3", Extremal), 3, 2),
        with(item("hidden-square-q", "Q", "u1,u2|y", "(y + u1*u2)^2 + u1^5", Extremal), 5, 2),
        with(item("quartic-f3", "F3", "u|z", "(z + u^2)^4 + u^9", Extremal), 9, 4),
        with(
            item("example-y", "Q", "u|y1,y2,y3", "y1^4 + y1^2*(y2 + u^2)^2 + y3^4 + y3*u^7 + u^12", NonExtremal),
            7,
            3,
        ),
        with(
            item("example-z", "Q", "u|z1,z2,z3", "z1^4 + z1^2*z2^2 + z3^4 + z3*u^7 + u^12", NonExtremal),
            7,
            3,
        ),
        with(item("two-squares", "Q", "u|y1,y2", "y1^2 + y2^2 + u^6", NonExtremal), 3, 1),
        with(item("node", "Q", "u|y1,y2", "y1*y2 + u^5", NonExtremal), 5, 2),
        with(item("hyperbola-f3", "F3", "u|y1,y2", "y1^2 - y2^2 + u^4", NonExtremal), 2, 1),
        with(item("triple-lines-f2", "F2", "u|y1,y2", "y1*y2*(y1 + y2) + u^7", NonExtremal), 7, 3),
        with(
            item("two-params-cone", "Q", "u1,u2|y1,y2", "y1^2 + y2^2 + u1^3*u2 + u2^5", NonExtremal),
            2,
            1,
        ),
        with(item("shifted-node", "Q", "u|y1,y2", "(y1 + u^2)*(y2 - u^3) + u^7", NonExtremal), 7, 2),
        item("cube", "Q", "u|y", "(y - u^2)^3", PerfectPower),
        item("cube-f3", "F3", "y,u", "(y + u)^3", PerfectPower),
        item("square-two-params", "Q", "u1,u2|y", "(y + u1*u2 + u1^2)^2", PerfectPower),
    ]
}

fn nonzero_coeff<R: Rng + ?Sized>(field: &FieldSpec, rng: &mut R) -> crate::scalars::Scalar {
    loop {
        let c = field.from_int(rng.gen_range(-3..=3));
        if !c.is_zero() {
            return c;
        }
    }
}

/// A random polynomial in the variables `vars` of a ring with `n` variables,
/// with up to `terms` terms of total degree in `lo..=hi`.
fn random_poly<R: Rng + ?Sized>(
    field: &FieldSpec,
    n: usize,
    vars: &[usize],
    lo: u32,
    hi: u32,
    terms: usize,
    rng: &mut R,
) -> Poly {
    let mut p = Poly::zero(field, n);
    for _ in 0..terms {
        let deg = rng.gen_range(lo..=hi);
        let mut e = vec![0u32; n];
        for _ in 0..deg {
            e[vars[rng.gen_range(0..vars.len())]] += 1;
        }
        p.add_term(Exponent::new(e), nonzero_coeff(field, rng));
    }
    p
}

/// An irreducible Weierstrass polynomial `y^ℓ + a_1 y^{ℓ-1} + ... + a_ℓ`.
#[derive(Debug, Clone)]
pub struct Instance {
    pub f: Poly,
    pub frame: Frame,
}

fn frame_for(nu: usize) -> Frame {
    let us: Vec<String> = (1..=nu).map(|i| format!("u{i}")).collect();
    Frame::new(&us, &["y".to_string()]).expect("valid frame")
}

/// Eisenstein-shaped instances: with respect to the `u1`-adic valuation the
/// Newton polygon is one edge of slope `k/ℓ`, `gcd(k, ℓ) = 1`, `k > ℓ`, so
/// the polynomial is irreducible and has multiplicity `ℓ`.
pub fn eisenstein_instances<R: Rng + ?Sized>(
    field: &FieldSpec,
    count: usize,
    rng: &mut R,
) -> Vec<Instance> {
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let ell: u32 = rng.gen_range(2..=4);
        let k: u32 = rng.gen_range(ell + 1..=3 * ell + 1);
        if num_integer::gcd(k, ell) != 1 {
            continue;
        }
        let nu: usize = rng.gen_range(1..=2);
        let frame = frame_for(nu);
        let n = nu + 1;
        let us: Vec<usize> = (0..nu).collect();
        let y = nu;
        let u1k = Poly::monomial(field, n, Exponent::unit(n, 0, k), field.one());
        let unit = Poly::constant(field, n, nonzero_coeff(field, rng))
            + random_poly(field, n, &us, 1, 3, 2, rng);
        let mut coeffs = vec![&u1k * &unit];
        for i in (1..ell).rev() {
            let v = i * k / ell + 1;
            let base = Poly::monomial(field, n, Exponent::unit(n, 0, v), field.one());
            let extra = random_poly(field, n, &us, 0, 2, rng.gen_range(0..=2), rng);
            coeffs.push(&base * &extra);
        }
        coeffs.push(Poly::one(field, n));
        let f = Poly::from_coefficients_in(&coeffs, y, field, n);
        out.push(Instance { f, frame });
    }
    out
}

/// Characteristic-0 extremal instances `z^m + Σ a_i z^{m-i}` with
/// `ord(a_i) > i`, so the initial form is `z^m`.
pub fn tschirnhausen_instances<R: Rng + ?Sized>(count: usize, rng: &mut R) -> Vec<Instance> {
    let field = FieldSpec::Rationals;
    (0..count)
        .map(|_| {
            let m: u32 = rng.gen_range(2..=4);
            let nu: usize = rng.gen_range(1..=2);
            let frame = frame_for(nu);
            let n = nu + 1;
            let us: Vec<usize> = (0..nu).collect();
            let mut coeffs = Vec::new();
            for i in (1..=m).rev() {
                let terms = if i == m { 2 } else { rng.gen_range(0..=2) };
                coeffs.push(random_poly(&field, n, &us, i + 1, i + 5, terms, rng));
            }
            coeffs.push(Poly::one(&field, n));
            let f = Poly::from_coefficients_in(&coeffs, nu, &field, n);
            Instance { f, frame }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn corpus_parses() {
        for it in corpus() {
            let (f, _) = it.build().unwrap();
            assert!(f.ord().unwrap() >= 2, "{}", it.name);
        }
    }

    #[test]
    fn generated_shapes() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for field in [FieldSpec::Rationals, FieldSpec::prime(3).unwrap()] {
            for inst in eisenstein_instances(&field, 20, &mut rng) {
                let y = inst.frame.y(0);
                let ell = inst.f.degree_in(y).unwrap();
                assert_eq!(inst.f.ord(), Some(ell));
            }
        }
        for inst in tschirnhausen_instances(10, &mut rng) {
            let m = inst.f.degree_in(inst.frame.y(0)).unwrap();
            assert_eq!(inst.f.ord(), Some(m));
        }
    }
}
