//! The Hironaka polyhedron `Δ(f,u,y)`, its `δ` invariant, vertex
//! solvability and the preparation loop computing `δ(Δ(f,u))`.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::cone;
use crate::error::{Error, Result};
use crate::linalg;
use crate::mpoly::{Exponent, Frame, Poly};
use crate::scalars::{FieldSpec, Scalar};
use crate::value::{Fraction, NuValue};

/// Generating points `α/(m-|β|)`, vertices and `δ` of `Δ(f,u,y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HPolyhedron {
    /// Number of u-variables.
    pub dim: usize,
    pub m: u32,
    /// Sorted and deduplicated.
    pub generators: Vec<Vec<BigRational>>,
    /// Sorted; a subset of the generators.
    pub vertices: Vec<Vec<BigRational>>,
    /// `Exact(min |γ|)`, or `Infinite` when there are no generators.
    pub delta: NuValue,
}

/// JSON form of a polyhedron.
#[derive(Debug, Clone, Serialize)]
pub struct PolyhedronExport {
    pub dim: usize,
    pub multiplicity: u32,
    pub generators: Vec<Vec<Fraction>>,
    pub vertices: Vec<Vec<Fraction>>,
    pub delta: NuValue,
}

fn coord_sum(p: &[BigRational]) -> BigRational {
    p.iter().fold(BigRational::zero(), |acc, x| acc + x)
}

impl HPolyhedron {
    pub fn export(&self) -> PolyhedronExport {
        let conv = |pts: &[Vec<BigRational>]| -> Vec<Vec<Fraction>> {
            pts.iter().map(|p| p.iter().map(Fraction::from).collect()).collect()
        };
        PolyhedronExport {
            dim: self.dim,
            multiplicity: self.m,
            generators: conv(&self.generators),
            vertices: conv(&self.vertices),
            delta: self.delta.clone(),
        }
    }

    /// Vertices attaining `δ`, in lexicographic order.
    pub fn delta_vertices(&self) -> Vec<&Vec<BigRational>> {
        match &self.delta {
            NuValue::Exact(d) => self.vertices.iter().filter(|v| &coord_sum(v) == d).collect(),
            _ => Vec::new(),
        }
    }

    /// Whether `p` lies in `conv(generators) + ℝ^dim_{>=0}`.
    pub fn contains(&self, p: &[BigRational]) -> bool {
        in_upper_hull(p, &self.generators)
    }
}

/// Checks the hypothesis `ord(f mod ⟨u⟩) = ord(f)` and returns `m`.
fn multiplicity_in_frame(f: &Poly, frame: &Frame) -> Result<u32> {
    frame.check_poly(f)?;
    frame.require_split()?;
    let m = f.ord().ok_or(Error::ZeroPolynomial("polyhedron"))?;
    let us = frame.u_indices();
    let reduced = f.filter(|e| e.degree_in(&us) == 0);
    match reduced.ord() {
        Some(k) if k == m => Ok(m),
        _ => Err(Error::precondition(format!(
            "f modulo the u-variables must have order {m}, the multiplicity"
        ))),
    }
}

/// The point `α/(m-|β|)` of a term, or `None` when `|β| >= m`.
fn term_point(e: &Exponent, us: &[usize], ys: &[usize], m: u32) -> Option<Vec<BigRational>> {
    let b = e.degree_in(ys);
    if b >= m {
        return None;
    }
    let den = BigRational::from_integer((m - b).into());
    Some(us.iter().map(|&i| BigRational::from_integer(e.get(i).into()) / &den).collect())
}

/// The polyhedron `Δ(f,u,y)` of `f` in the given frame.
pub fn polyhedron(f: &Poly, frame: &Frame) -> Result<HPolyhedron> {
    let m = multiplicity_in_frame(f, frame)?;
    Ok(polyhedron_unchecked(f, frame, m))
}

fn polyhedron_unchecked(f: &Poly, frame: &Frame, m: u32) -> HPolyhedron {
    let us = frame.u_indices();
    let ys = frame.y_indices();
    let gens: BTreeSet<Vec<BigRational>> =
        f.terms().filter_map(|(e, _)| term_point(e, &us, &ys, m)).collect();
    let generators: Vec<Vec<BigRational>> = gens.into_iter().collect();
    let delta = generators
        .iter()
        .map(|g| coord_sum(g))
        .min()
        .map_or(NuValue::Infinite, NuValue::Exact);
    let vertices = generators
        .iter()
        .enumerate()
        .filter(|(i, g)| {
            let others: Vec<Vec<BigRational>> = generators
                .iter()
                .enumerate()
                .filter(|(j, _)| j != i)
                .map(|(_, h)| h.clone())
                .collect();
            !in_upper_hull(g, &others)
        })
        .map(|(_, g)| g.clone())
        .collect();
    HPolyhedron { dim: us.len(), m, generators, vertices, delta }
}

/// Whether `g ∈ conv(pts) + ℝ^d_{>=0}`.
fn in_upper_hull(g: &[BigRational], pts: &[Vec<BigRational>]) -> bool {
    if pts.is_empty() {
        return false;
    }
    if pts.iter().any(|h| h.iter().zip(g).all(|(a, b)| a <= b)) {
        return true;
    }
    lp_feasible(g, pts)
}

/// Phase one of the simplex method with Bland's rule, over exact rationals:
/// is there `λ >= 0`, `s >= 0` with `Σ λ_h h + s = g` and `Σ λ_h = 1`?
fn lp_feasible(g: &[BigRational], pts: &[Vec<BigRational>]) -> bool {
    let d = g.len();
    let k = pts.len();
    let rows = d + 1;
    // columns: λ (k), slack (d), artificial (rows), rhs
    let ncols = k + d + rows;
    let zero = BigRational::zero();
    let one = BigRational::one();
    let mut t: Vec<Vec<BigRational>> = vec![vec![zero.clone(); ncols + 1]; rows];
    for i in 0..d {
        for (j, h) in pts.iter().enumerate() {
            t[i][j] = h[i].clone();
        }
        t[i][k + i] = one.clone();
        t[i][ncols] = g[i].clone();
    }
    for j in 0..k {
        t[d][j] = one.clone();
    }
    t[d][ncols] = one.clone();
    for (i, row) in t.iter_mut().enumerate() {
        row[k + d + i] = one.clone();
        debug_assert!(!row[ncols].is_negative());
    }
    let mut basis: Vec<usize> = (0..rows).map(|i| k + d + i).collect();
    // reduced costs of the phase-one objective Σ artificials
    let mut cost: Vec<BigRational> = vec![zero.clone(); ncols + 1];
    for row in &t {
        for c in 0..k + d {
            cost[c] -= &row[c];
        }
        cost[ncols] -= &row[ncols];
    }
    loop {
        let Some(enter) = (0..ncols).find(|&c| cost[c].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, BigRational)> = None;
        for i in 0..rows {
            if t[i][enter].is_positive() {
                let ratio = &t[i][ncols] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        let Some((r, _)) = leave else {
            // unbounded cannot happen for a phase-one problem
            break;
        };
        let piv = t[r][enter].clone();
        for x in t[r].iter_mut() {
            *x = &*x / &piv;
        }
        for i in 0..rows {
            if i != r && !t[i][enter].is_zero() {
                let factor = t[i][enter].clone();
                for c in 0..=ncols {
                    let delta = &factor * &t[r][c];
                    t[i][c] -= delta;
                }
            }
        }
        if !cost[enter].is_zero() {
            let factor = cost[enter].clone();
            for c in 0..=ncols {
                let delta = &factor * &t[r][c];
                cost[c] -= delta;
            }
        }
        basis[r] = enter;
    }
    cost[ncols].is_zero()
}

/// `In_v(f) = In_m(f) + In_v(f)^+` at a vertex `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexInitialForm {
    pub vertex: Vec<BigRational>,
    pub poly: Poly,
    pub m: u32,
}

/// The initial form of `f` at a vertex of its polyhedron.
pub fn initial_form_at_vertex(
    f: &Poly,
    frame: &Frame,
    v: &[BigRational],
) -> Result<VertexInitialForm> {
    let poly = polyhedron(f, frame)?;
    if !poly.vertices.iter().any(|w| w.as_slice() == v) {
        return Err(Error::precondition("not a vertex of the polyhedron"));
    }
    Ok(vertex_form(f, frame, v, poly.m))
}

fn vertex_form(f: &Poly, frame: &Frame, v: &[BigRational], m: u32) -> VertexInitialForm {
    let us = frame.u_indices();
    let ys = frame.y_indices();
    let poly = f.filter(|e| {
        e.degree() == m || term_point(e, &us, &ys, m).is_some_and(|p| p.as_slice() == v)
    });
    VertexInitialForm { vertex: v.to_vec(), poly, m }
}

/// The integer exponent vector of a vertex, if integral.
fn integral_point(v: &[BigRational]) -> Option<Vec<u32>> {
    v.iter()
        .map(|x| {
            if x.is_integer() {
                u32::try_from(x.to_integer()).ok()
            } else {
                None
            }
        })
        .collect()
}

/// Decides solvability of a vertex: finds `λ_j = c_j U^v` with
/// `In_m(f)(Y + λ) = In_v(f)`, returning the `λ_j` as polynomials in the
/// u-variables, or `None`.
///
/// The `c_j` are found level by level from `F(Y + c) = H(Y)`, `H` being the
/// dehomogenization at `U^v = 1`: every coefficient comparison that reduces
/// to `Σ a_j t_j^q = b` with `q` a power of the characteristic is a linear
/// condition after a `q`-th root. Candidates are always checked by full
/// expansion.
pub fn solve_vertex(ivf: &VertexInitialForm, frame: &Frame) -> Result<Option<Vec<Poly>>> {
    let Some(v) = integral_point(&ivf.vertex) else {
        return Ok(None);
    };
    let f = &ivf.poly;
    let field = f.field().clone();
    let n = f.nvars();
    let us = frame.u_indices();
    let ys = frame.y_indices();
    let r = ys.len();
    let big_f = f.homogeneous_part(ivf.m);
    if big_f.involves(&us) {
        return Err(Error::precondition("the initial form involves u-variables"));
    }
    let cone_f = big_f.restrict_vars(&ys)?;
    let mut h = Poly::zero(&field, r);
    for (e, c) in f.terms() {
        h.add_term(Exponent::new(ys.iter().map(|&i| e.get(i)).collect()), c.clone());
    }
    let mut u_pow = vec![0u32; n];
    for (k, &i) in us.iter().enumerate() {
        u_pow[i] = v[k];
    }
    let s_mono = Exponent::new(u_pow);
    let lambdas = |c: &[Scalar]| -> Vec<Poly> {
        c.iter().map(|cj| Poly::monomial(&field, n, s_mono.clone(), cj.clone())).collect()
    };
    let verify = |c: &[Scalar]| -> Result<bool> {
        let mut images: Vec<Poly> = (0..n).map(|i| Poly::var(&field, n, i)).collect();
        for (j, lam) in lambdas(c).into_iter().enumerate() {
            images[ys[j]] = &images[ys[j]] + &lam;
        }
        Ok(big_f.compose(&images)? == *f)
    };
    match solve_translation(&cone_f, &h)? {
        Candidates::None => Ok(None),
        Candidates::Unique(c) => Ok(if verify(&c)? { Some(lambdas(&c)) } else { None }),
        Candidates::Affine(c0, basis) => {
            let s = basis.len();
            if verify(&c0)? {
                return Ok(Some(lambdas(&c0)));
            }
            let Some(elems) = field.elements() else {
                return Err(Error::Internal(format!(
                    "vertex solvability left {s} undetermined directions over an infinite field"
                )));
            };
            let total = (elems.len() as f64).powi(s as i32);
            if total > ENUMERATION_CAP as f64 {
                return Err(Error::Internal(format!(
                    "vertex solvability needs {total} candidates, above the cap {ENUMERATION_CAP}"
                )));
            }
            let mut idx = vec![0usize; s];
            loop {
                let mut c = c0.clone();
                for (k, &ix) in idx.iter().enumerate() {
                    for j in 0..r {
                        c[j] = &c[j] + &(&elems[ix] * &basis[k][j]);
                    }
                }
                if verify(&c)? {
                    return Ok(Some(lambdas(&c)));
                }
                let mut k = 0;
                loop {
                    if k == s {
                        return Ok(None);
                    }
                    idx[k] += 1;
                    if idx[k] < elems.len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
            }
        }
    }
}

/// Largest number of candidates tried by exhaustive search.
const ENUMERATION_CAP: usize = 1 << 16;

enum Candidates {
    None,
    Unique(Vec<Scalar>),
    /// `c0 + span(basis)` contains every solution.
    Affine(Vec<Scalar>, Vec<Vec<Scalar>>),
}

/// Whether `k` is `p^e` (`e >= 0`); returns `e`.
fn additive_exponent(k: u32, p: u64) -> Option<u32> {
    if k == 1 {
        return Some(0);
    }
    if p == 0 {
        return None;
    }
    let (mut q, mut e) = (1u64, 0u32);
    while q < k as u64 {
        q *= p;
        e += 1;
    }
    (q == k as u64).then_some(e)
}

/// Narrows the solutions `c ∈ k^r` of `F(Y + c) = H(Y)` to an affine
/// subspace using the linear conditions hidden in the coefficient equations.
fn solve_translation(big_f: &Poly, h: &Poly) -> Result<Candidates> {
    let field = big_f.field().clone();
    let p = field.characteristic();
    let r = big_f.nvars();
    let mut c0 = vec![field.zero(); r];
    let mut basis: Vec<Vec<Scalar>> =
        (0..r).map(|k| (0..r).map(|j| if j == k { field.one() } else { field.zero() }).collect()).collect();
    while !basis.is_empty() {
        let s = basis.len();
        let nv = r + s;
        let images: Vec<Poly> = (0..r)
            .map(|j| {
                let mut img = Poly::var(&field, nv, j) + Poly::constant(&field, nv, c0[j].clone());
                for (k, b) in basis.iter().enumerate() {
                    img = img + Poly::var(&field, nv, r + k).scale(&b[j]);
                }
                img
            })
            .collect();
        let g = big_f.compose(&images)? - h.extend_vars(s);
        let mut eqs: BTreeMap<Vec<u32>, Vec<(Vec<u32>, Scalar)>> = BTreeMap::new();
        let mut cols: BTreeSet<Vec<u32>> = BTreeSet::new();
        for (e, c) in g.terms() {
            let gamma = e.as_slice()[..r].to_vec();
            let mu = e.as_slice()[r..].to_vec();
            if mu.iter().any(|&x| x > 0) {
                cols.insert(mu.clone());
            }
            eqs.entry(gamma).or_default().push((mu, c.clone()));
        }
        let pure = |mu: &[u32]| -> Option<(usize, u32, u32)> {
            let nz: Vec<usize> = (0..mu.len()).filter(|&i| mu[i] > 0).collect();
            if nz.len() != 1 {
                return None;
            }
            let k = mu[nz[0]];
            additive_exponent(k, p).map(|e| (nz[0], k, e))
        };
        let mut cols: Vec<Vec<u32>> = cols.into_iter().collect();
        cols.sort_by_key(|mu| (pure(mu).map(|t| t.1), mu.clone()));
        let nc = cols.len();
        let col_index: BTreeMap<&Vec<u32>, usize> =
            cols.iter().enumerate().map(|(i, c)| (c, i)).collect();
        let mut rows: Vec<Vec<Scalar>> = eqs
            .values()
            .map(|terms| {
                let mut row = vec![field.zero(); nc + 1];
                for (mu, c) in terms {
                    match col_index.get(mu) {
                        Some(&i) => row[i] = c.clone(),
                        None => row[nc] = c.clone(),
                    }
                }
                row
            })
            .collect();
        let pivot_cols: Vec<usize> = (0..nc).collect();
        let pivots = linalg::rref_keep(&mut rows, &pivot_cols);
        if rows[pivots.len()..].iter().any(|row| !row[nc].is_zero()) {
            return Ok(Candidates::None);
        }
        let mut lin_rows: Vec<Vec<Scalar>> = Vec::new();
        let mut lin_rhs: Vec<Scalar> = Vec::new();
        'rows: for row in &rows[..pivots.len()] {
            let mut q: Option<(u32, u32)> = None;
            let mut lin = vec![field.zero(); s];
            for (i, c) in row[..nc].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let Some((var, k, e)) = pure(&cols[i]) else { continue 'rows };
                match q {
                    None => q = Some((k, e)),
                    Some((k0, _)) if k0 != k => continue 'rows,
                    _ => {}
                }
                let Some(root) = c.try_frobenius_root(e) else { continue 'rows };
                lin[var] = root;
            }
            let Some((_, e)) = q else { continue };
            let Some(rhs) = (-&row[nc]).try_frobenius_root(e) else { continue };
            lin_rows.push(lin);
            lin_rhs.push(rhs);
        }
        if lin_rows.is_empty() {
            break;
        }
        let Some((t0, null)) = linalg::affine_solutions(&lin_rows, &lin_rhs, s, &field) else {
            return Ok(Candidates::None);
        };
        if null.len() == s {
            break;
        }
        for (k, b) in basis.iter().enumerate() {
            for j in 0..r {
                c0[j] = &c0[j] + &(&t0[k] * &b[j]);
            }
        }
        basis = null
            .iter()
            .map(|nvec| {
                (0..r)
                    .map(|j| {
                        let mut acc = field.zero();
                        for (k, b) in basis.iter().enumerate() {
                            acc = &acc + &(&nvec[k] * &b[j]);
                        }
                        acc
                    })
                    .collect()
            })
            .collect();
    }
    Ok(if basis.is_empty() { Candidates::Unique(c0) } else { Candidates::Affine(c0, basis) })
}

/// How the preparation loop stopped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TraceStatus {
    /// No `δ`-vertex is solvable: `δ` is `δ(Δ(f,u))`.
    WellPreparedAtDelta,
    /// `δ·m` exceeded the precision, or the iteration bound was reached.
    PrecisionExhausted,
    /// No generating points remain: `f` lies in `⟨y⟩^m`.
    Degenerate,
}

/// One dissolved vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub vertex: Vec<BigRational>,
    pub delta_before: NuValue,
    /// `λ_j` for each y-variable; the step substitutes `y_j ↦ y_j - λ_j`.
    pub lambda: Vec<Poly>,
    pub f_after: Poly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PreparationTrace {
    pub steps: Vec<TraceStep>,
    pub status: TraceStatus,
    /// Accumulated shifts `s_j`: the final coordinates are `y_j + s_j`.
    pub shifts: Vec<Poly>,
    pub final_f: Poly,
    pub final_polyhedron: HPolyhedron,
}

/// Computes `δ(Δ(f,u))` by dissolving solvable `δ`-vertices. The frame must
/// be normalized: its y-block determines the directrix of `In(f)`.
pub fn prepare_delta(f: &Poly, frame: &Frame) -> Result<(NuValue, PreparationTrace)> {
    multiplicity_in_frame(f, frame)?;
    if !cone::frame_is_normalized(f, frame)? {
        return Err(Error::precondition("the y-block does not determine the directrix"));
    }
    run_preparation(f, frame)
}

/// The preparation loop without the directrix check, for fields where the
/// directrix is not computable (F_p(t)) but the frame is known to be
/// normalized from the base field.
pub(crate) fn run_preparation(f: &Poly, frame: &Frame) -> Result<(NuValue, PreparationTrace)> {
    let m = multiplicity_in_frame(f, frame)?;
    let field = f.field().clone();
    let n = f.nvars();
    let ys = frame.y_indices();
    let big_n = frame.precision();
    let max_iter = 4 * big_n as usize;
    let mut cur = f.clone();
    let mut shifts: Vec<Poly> = ys.iter().map(|_| Poly::zero(&field, n)).collect();
    let mut steps = Vec::new();
    let finish = |value, status, cur: Poly, steps, shifts, poly| {
        Ok((value, PreparationTrace { steps, status, shifts, final_f: cur, final_polyhedron: poly }))
    };
    for _ in 0..=max_iter {
        let poly = polyhedron_unchecked(&cur, frame, m);
        let delta = match &poly.delta {
            NuValue::Exact(d) => d.clone(),
            _ => return finish(NuValue::Infinite, TraceStatus::Degenerate, cur, steps, shifts, poly),
        };
        let limit = BigRational::new(big_n.into(), m.into());
        if delta > limit {
            return finish(NuValue::AtLeast(limit), TraceStatus::PrecisionExhausted, cur, steps, shifts, poly);
        }
        if steps.len() == max_iter {
            return finish(NuValue::AtLeast(delta), TraceStatus::PrecisionExhausted, cur, steps, shifts, poly);
        }
        let mut dissolved = None;
        for v in poly.delta_vertices() {
            let ivf = vertex_form(&cur, frame, v, m);
            if let Some(lambda) = solve_vertex(&ivf, frame)? {
                dissolved = Some((v.clone(), lambda));
                break;
            }
        }
        let Some((vertex, lambda)) = dissolved else {
            return finish(NuValue::Exact(delta), TraceStatus::WellPreparedAtDelta, cur, steps, shifts, poly);
        };
        let mut images: Vec<Poly> = (0..n).map(|i| Poly::var(&field, n, i)).collect();
        for (j, lam) in lambda.iter().enumerate() {
            images[ys[j]] = &images[ys[j]] - lam;
            shifts[j] = &shifts[j] + lam;
        }
        cur = cur.compose(&images)?;
        steps.push(TraceStep {
            vertex,
            delta_before: NuValue::Exact(delta),
            lambda,
            f_after: cur.clone(),
        });
    }
    Err(Error::Internal("preparation loop exceeded its bound".into()))
}

/// Applies the shifts of a trace: `f(y_j ↦ y_j - s_j)`.
pub fn replay_shifts(f: &Poly, frame: &Frame, shifts: &[Poly]) -> Result<Poly> {
    let n = f.nvars();
    let mut images: Vec<Poly> = (0..n).map(|i| Poly::var(f.field(), n, i)).collect();
    for (j, &y) in frame.y_indices().iter().enumerate() {
        images[y] = &images[y] - &shifts[j];
    }
    f.compose(&images)
}

/// Recomputes the preparation over `F_p(t)` and reports whether `δ(Δ(f,u))`
/// is unchanged. Over ℚ the check holds vacuously.
pub fn extend_residue_field_check(f: &Poly, frame: &Frame) -> Result<bool> {
    let (base, _) = prepare_delta(f, frame)?;
    let target = match f.field() {
        FieldSpec::Rationals => return Ok(true),
        FieldSpec::Prime(p) => FieldSpec::ratfunc(*p)?,
        other => {
            return Err(Error::UnsupportedField {
                op: "residue field extension",
                field: other.to_string(),
            })
        }
    };
    let lifted = f.lift_into(&target)?;
    let (ext, _) = run_preparation(&lifted, frame)?;
    Ok(base == ext)
}
