use hsing_core::corpus::{self, Kind};
use hsing_core::cpx::{self, MonomialOrder};
use hsing_core::cuts::{self, LinearCut};
use hsing_core::mpoly::{Exponent, Frame, Poly};
use hsing_core::{cone, hpoly, nubar, wprep, FieldSpec, NuValue, Scalar};
use num_rational::BigRational;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn fields() -> Vec<FieldSpec> {
    vec![
        FieldSpec::Rationals,
        FieldSpec::prime(2).unwrap(),
        FieldSpec::prime(3).unwrap(),
        FieldSpec::prime(5).unwrap(),
        FieldSpec::ext(2, 2).unwrap(),
        FieldSpec::ext(3, 2).unwrap(),
        FieldSpec::ratfunc(2).unwrap(),
        FieldSpec::ratfunc(3).unwrap(),
    ]
}

fn domain_fields() -> Vec<FieldSpec> {
    vec![FieldSpec::Rationals, FieldSpec::prime(2).unwrap(), FieldSpec::prime(3).unwrap()]
}

type Terms = Vec<(Vec<u32>, i64)>;

fn terms(nvars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = Terms> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, nvars), -4i64..=4), 1..=max_terms)
}

fn build(field: &FieldSpec, nvars: usize, t: &Terms) -> Poly {
    let mut p = Poly::zero(field, nvars);
    for (e, c) in t {
        p.add_term(Exponent::new(e.clone()), field.from_int(*c));
    }
    p
}

fn uy_frame(nu: usize, ny: usize) -> Frame {
    let us: Vec<String> = (1..=nu).map(|i| format!("u{i}")).collect();
    let ys: Vec<String> = (1..=ny).map(|i| format!("y{i}")).collect();
    Frame::new(&us, &ys).unwrap()
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms(s in any::<[u64; 3]>()) {
        for k in fields() {
            let [a, b, c] = s.map(|x| k.sample_seeded(x));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            if !a.is_zero() {
                prop_assert!((&a * &a.inv().unwrap()).is_one());
            }
            let p = k.characteristic();
            if p > 0 {
                prop_assert_eq!((&a + &b).pow(p), &a.pow(p) + &b.pow(p));
                prop_assert_eq!(a.pow(p).try_frobenius_root(1), Some(a.clone()));
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn order_is_additive(fi in 0usize..3, a in terms(3, 4, 5), b in terms(3, 4, 5)) {
        let k = &domain_fields()[fi];
        let (f, g) = (build(k, 3, &a), build(k, 3, &b));
        prop_assume!(!f.is_zero() && !g.is_zero());
        prop_assert_eq!((&f * &g).ord(), Some(f.ord().unwrap() + g.ord().unwrap()));
    }

    #[test]
    fn smallest_monomial_is_multiplicative(fi in 0usize..3, oi in 0usize..3, a in terms(3, 4, 5), b in terms(3, 4, 5)) {
        let k = &domain_fields()[fi];
        let order = MonomialOrder::ALL[oi];
        let (f, g) = (build(k, 3, &a), build(k, 3, &b));
        prop_assume!(!f.is_zero() && !g.is_zero());
        let sf = cpx::support_min(&f).unwrap();
        let sg = cpx::support_min(&g).unwrap();
        let sfg = cpx::support_min(&(&f * &g)).unwrap();
        let lhs = order.min(sfg.exponents()).unwrap().clone();
        let rhs = order.min(sf.exponents()).unwrap().add(order.min(sg.exponents()).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn monomial_valuation_is_a_valuation(fi in 0usize..3, w in prop::collection::vec(1u32..4, 3), a in terms(3, 4, 5), b in terms(3, 4, 5)) {
        let k = &domain_fields()[fi];
        let (f, g) = (build(k, 3, &a), build(k, 3, &b));
        prop_assume!(!f.is_zero() && !g.is_zero());
        let v = |p: &Poly| cpx::monomial_valuation(p, &w).unwrap();
        let (vf, vg) = (v(&f).unwrap(), v(&g).unwrap());
        prop_assert_eq!(v(&(&f * &g)), Some(vf + vg));
        if let Some(s) = v(&(&f + &g)) {
            prop_assert!(s >= vf.min(vg));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn hasse_derivatives_compose(fi in 0usize..8, a in terms(2, 6, 6), i in 0u32..4, j in 0u32..4) {
        let k = &fields()[fi];
        let f = build(k, 2, &a);
        let lhs = f.hasse_derivative(0, j).hasse_derivative(0, i);
        let rhs = f.hasse_derivative(0, i + j).scale(&k.from_int(binomial(i + j, i)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn translation_round_trip(fi in 0usize..8, a in terms(2, 4, 6), s in terms(1, 3, 3)) {
        let k = &fields()[fi];
        let f = build(k, 2, &a);
        let s = build(k, 1, &s).extend_vars(1);
        let y = Poly::var(k, 2, 1);
        let there = f.substitute_var(1, &(&y + &s)).unwrap();
        prop_assert_eq!(there.substitute_var(1, &(&y - &s)).unwrap(), f);
    }

    #[test]
    fn unit_inverse(fi in 0usize..8, a in terms(2, 4, 5), n in 2u32..10) {
        let k = &fields()[fi];
        let h = build(k, 2, &a).filter(|e| e.degree() > 0);
        let u = &Poly::one(k, 2) + &h;
        let frame = uy_frame(1, 1).with_precision(n);
        let inv = u.invert_unit(&frame).unwrap();
        let (prod, _) = (&u * inv.poly()).truncate(n);
        prop_assert_eq!(prod, Poly::one(k, 2));
    }

    #[test]
    fn cp_expansion_round_trip(fi in 0usize..8, oi in 0usize..3, a in terms(3, 4, 6)) {
        let k = &fields()[fi];
        let f = build(k, 3, &a);
        prop_assume!(!f.is_zero());
        let cp = cpx::cp_expand(&f, MonomialOrder::ALL[oi]).unwrap();
        prop_assert!(cp.support().is_antichain());
        for (_, unit) in cp.units() {
            prop_assert!(!unit.constant_term().is_zero());
        }
        prop_assert_eq!(cp.reassemble(), f);
    }

    #[test]
    fn weierstrass_preparation(fi in 0usize..3, ell in 1u32..4, a in terms(2, 5, 5), n in 4u32..12) {
        let k = &domain_fields()[fi];
        let frame = uy_frame(1, 1).with_precision(n);
        let rest = build(k, 2, &a).filter(|e| e.degree() > ell || (e.get(1) < ell && e.get(0) > 0));
        let f = &Poly::monomial(k, 2, Exponent::new(vec![0, ell]), k.one()) + &rest;
        let w = wprep::prepare(&f, &frame).unwrap();
        prop_assert_eq!(w.ell, ell);
        for c in &w.a {
            prop_assert!(!c.poly().involves(&[1]));
        }
        let diff = &(w.v.poly() * &f) - &w.polynomial();
        prop_assert!(diff.ord().is_none_or(|o| o > n));
    }
}

/// A random form of degree `m` in `n` variables built from `k` random
/// linear forms, so its directrix has dimension at most `k`.
fn form_in_linear_forms<R: Rng>(field: &FieldSpec, n: usize, m: u32, k: usize, rng: &mut R) -> Poly {
    let lin: Vec<Poly> = (0..k)
        .map(|_| {
            (0..n).fold(Poly::zero(field, n), |acc, i| {
                &acc + &Poly::var(field, n, i).scale(&field.from_int(rng.gen_range(-2..=2)))
            })
        })
        .collect();
    let mut out = Poly::zero(field, n);
    for _ in 0..4 {
        let mut t = Poly::constant(field, n, field.from_int(rng.gen_range(1..=3)));
        for _ in 0..m {
            t = &t * &lin[rng.gen_range(0..k)];
        }
        out = &out + &t;
    }
    out
}

fn random_invertible<R: Rng>(field: &FieldSpec, n: usize, rng: &mut R) -> Vec<Poly> {
    loop {
        let images: Vec<Poly> = (0..n)
            .map(|_| {
                (0..n).fold(Poly::zero(field, n), |acc, i| {
                    &acc + &Poly::var(field, n, i).scale(&field.from_int(rng.gen_range(-2..=2)))
                })
            })
            .collect();
        let d = cone::directrix(&images.iter().fold(Poly::one(field, n), |acc, l| &acc * l));
        if images.iter().all(|l| !l.is_zero()) && d.map(|d| d.r == n).unwrap_or(false) {
            return images;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn directrix_is_linearly_invariant(fi in 0usize..3, seed in any::<u64>(), k in 1usize..4, m in 2u32..4) {
        let field = &domain_fields()[fi];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = form_in_linear_forms(field, 3, m, k, &mut rng);
        prop_assume!(!f.is_zero());
        let d = cone::directrix(&f).unwrap();
        prop_assert!(d.r <= k);
        let g = f.compose(&random_invertible(field, 3, &mut rng)).unwrap();
        prop_assert_eq!(cone::directrix(&g).unwrap().r, d.r);
    }
}

fn normalized_item(i: usize, kind: Kind) -> Option<(Poly, Frame)> {
    let items: Vec<_> = corpus::corpus().into_iter().filter(|it| it.kind == kind).collect();
    let it = &items[i % items.len()];
    let (f, fr) = it.build().unwrap();
    Some(nubar::normalized(&f, &fr).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn delta_ignores_u_changes(i in 0usize..100, seed in any::<u64>(), nonext in any::<bool>()) {
        let kind = if nonext { Kind::NonExtremal } else { Kind::Extremal };
        let (g, fr) = normalized_item(i, kind).unwrap();
        prop_assume!(fr.u_count() > 0);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let field = g.field();
        let n = g.nvars();
        let us = fr.u_indices();
        let mut images: Vec<Poly> = (0..n).map(|j| Poly::var(field, n, j)).collect();
        // a triangular linear part with unit diagonal, plus higher terms in u
        for (a, &u) in us.iter().enumerate() {
            let mut img = Poly::var(field, n, u);
            for &w in &us[a + 1..] {
                img = &img + &Poly::var(field, n, w).scale(&field.from_int(rng.gen_range(-2..=2)));
            }
            let mut e = vec![0u32; n];
            for _ in 0..rng.gen_range(2..=4) {
                e[us[rng.gen_range(0..us.len())]] += 1;
            }
            img.add_term(Exponent::new(e), field.from_int(rng.gen_range(1..=3)));
            images[u] = img;
        }
        let h = g.compose(&images).unwrap();
        let before = hpoly::polyhedron(&g, &fr).unwrap().delta;
        let after = hpoly::polyhedron(&h, &fr).unwrap().delta;
        prop_assert_eq!(before, after);
    }

    #[test]
    fn cuts_never_lower_delta(i in 0usize..100, seed in any::<u64>()) {
        let (g, fr) = normalized_item(i, Kind::NonExtremal).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let field = g.field().clone();
        let point: Vec<Scalar> =
            (1..fr.y_count()).map(|_| field.from_int(rng.gen_range(-2..=2))).collect();
        let delta = hpoly::polyhedron(&g, &fr).unwrap().delta;
        match cuts::nubar_lin(&g, &fr, &LinearCut::new(point)) {
            Ok(v) => prop_assert!(delta.may_be_le(&v), "cut value {} below δ {}", v, delta),
            Err(e) => prop_assert!(e.is_refusal(), "{}", e),
        }
    }

    #[test]
    fn surviving_index_does_not_matter(i in 0usize..100, a in 1i64..5) {
        let (g, fr) = normalized_item(i, Kind::NonExtremal).unwrap();
        prop_assume!(fr.y_count() == 2);
        let field = g.field().clone();
        let a = field.from_int(a);
        prop_assume!(!a.is_zero());
        let (y1, y2) = (fr.y(0), fr.y(1));
        let map: Vec<usize> = (0..g.nvars()).map(|j| if j == y1 { y2 } else if j == y2 { y1 } else { j }).collect();
        let swapped = g.remap_vars(&map, g.nvars());
        let first = cuts::nubar_lin(&g, &fr, &LinearCut::new(vec![a.clone()]));
        let second = cuts::nubar_lin(&swapped, &fr, &LinearCut::new(vec![a.inv().unwrap()]));
        match (first, second) {
            (Ok(x), Ok(y)) => prop_assert_eq!(x, y),
            (Err(_), Err(_)) => {}
            (x, y) => prop_assert!(false, "{:?} vs {:?}", x, y),
        }
    }

    #[test]
    fn preparation_trace_is_monotone_and_replayable(i in 0usize..100, nonext in any::<bool>()) {
        let kind = if nonext { Kind::NonExtremal } else { Kind::Extremal };
        let (g, fr) = normalized_item(i, kind).unwrap();
        let (delta, trace) = hpoly::prepare_delta(&g, &fr).unwrap();
        let m = g.ord().unwrap();
        let mut last: Option<BigRational> = None;
        for step in &trace.steps {
            prop_assert!(step.delta_before.in_lattice(m));
            let d = step.delta_before.value().unwrap().clone();
            if let Some(prev) = &last {
                prop_assert!(&d >= prev);
            }
            last = Some(d);
        }
        if let (Some(prev), Some(d)) = (&last, delta.value()) {
            prop_assert!(d >= prev);
        }
        prop_assert_eq!(hpoly::replay_shifts(&g, &fr, &trace.shifts).unwrap(), trace.final_f);
    }
}

#[test]
fn residue_field_extension_keeps_delta() {
    for it in corpus::corpus() {
        let (f, fr) = it.build().unwrap();
        if !matches!(f.field(), FieldSpec::Prime(_)) {
            continue;
        }
        let (g, gf) = nubar::normalized(&f, &fr).unwrap();
        assert!(hpoly::extend_residue_field_check(&g, &gf).unwrap(), "{}", it.name);
    }
}

#[test]
fn certified_values_round_trip_through_json() {
    let values = [
        NuValue::exact(7, 3),
        NuValue::at_least(16, 1),
        NuValue::Infinite,
        NuValue::Exact(BigRational::new("123456789012345678901234567890".parse().unwrap(), 7.into())),
    ];
    for v in values {
        let text = serde_json::to_string(&v).unwrap();
        let back: NuValue = serde_json::from_str(&text).unwrap();
        assert_eq!(back, v, "{text}");
    }
    assert_eq!(
        serde_json::to_string(&NuValue::exact(5, 2)).unwrap(),
        r#"{"kind":"exact","num":5,"den":2}"#
    );
}
