//! Brute-force oracles shared by the integration tests.
//!
//! Nothing here calls the closed-form criteria under test; every answer is
//! recomputed from pointwise linear algebra or direct enumeration.
#![allow(dead_code)]

use num_traits::{One, Zero};
use spectral_core::coord::{Coord, ExtCoord, Rational};
use spectral_core::field::ScalarField;
use spectral_core::fp::{FpInterval, FpModule, Generator};
use spectral_core::linalg::Matrix;
use spectral_core::order::{contains, DPoint, IndexModel};
use spectral_core::spectrum::{Spectrum, SymbolicSet};

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

pub fn c(n: i64) -> Coord {
    Coord::int(n)
}

/// Sorted, deduplicated samples: the given coordinates, a point between each
/// consecutive pair, and one point beyond each end.
pub fn sample_line(mut pts: Vec<Coord>) -> Vec<Coord> {
    pts.sort();
    pts.dedup();
    if pts.is_empty() {
        return vec![Coord::int(0)];
    }
    let mut out = vec![Coord::rational(pts[0].rational_below())];
    for (k, p) in pts.iter().enumerate() {
        out.push(p.clone());
        if let Some(n) = pts.get(k + 1) {
            out.push(Coord::rational(Coord::rational_between(p, n)));
        }
    }
    out.push(Coord::rational(pts.last().unwrap().rational_above()));
    out
}

/// Basis of the space of natural transformations between two modules
/// that are `k` on a convex support with identity transitions, computed on
/// the samples by solving every commuting square.
pub fn pointwise_hom_basis(
    src: &dyn Fn(&Coord) -> bool,
    tgt: &dyn Fn(&Coord) -> bool,
    samples: &[Coord],
) -> Vec<Vec<Rational>> {
    let field = ScalarField::ExactRationals;
    let vars: Vec<usize> = (0..samples.len())
        .filter(|&k| src(&samples[k]) && tgt(&samples[k]))
        .collect();
    let col = |k: usize| vars.iter().position(|&v| v == k);
    let mut rows = Vec::new();
    for s in 0..samples.len() {
        for t in s + 1..samples.len() {
            let mut row = vec![Rational::zero(); vars.len()];
            // phi_t . M(s,t) - N(s,t) . phi_s = 0
            let m_st = src(&samples[s]) && src(&samples[t]);
            let n_st = tgt(&samples[s]) && tgt(&samples[t]);
            if m_st {
                if let Some(ct) = col(t) {
                    row[ct] += Rational::one();
                }
            }
            if n_st {
                if let Some(cs) = col(s) {
                    row[cs] -= Rational::one();
                }
            }
            if row.iter().any(|x| !x.is_zero()) {
                rows.push(row);
            }
        }
    }
    let m = Matrix::from_rows(rows, vars.len()).unwrap();
    // expand solutions back to all samples
    m.nullspace(&field)
        .into_iter()
        .map(|v| {
            let mut full = vec![Rational::zero(); samples.len()];
            for (i, &k) in vars.iter().enumerate() {
                full[k] = v[i].clone();
            }
            full
        })
        .collect()
}

fn in_interval(x: &FpInterval, t: &Coord) -> bool {
    x.alive_at(t)
}

fn interval_coords(x: &FpInterval) -> Vec<Coord> {
    let mut v = vec![x.start().clone()];
    if let ExtCoord::Finite(b) = x.end() {
        v.push(b.clone());
    }
    v
}

fn point_coords(p: &DPoint) -> Vec<Coord> {
    p.finite_coord().cloned().into_iter().collect()
}

/// `dim Hom(k_[a,b), k_[c,d))` by brute force.
pub fn oracle_hom_fp(x: &FpInterval, y: &FpInterval) -> usize {
    let mut pts = interval_coords(x);
    pts.extend(interval_coords(y));
    let samples = sample_line(pts);
    pointwise_hom_basis(&|t| in_interval(x, t), &|t| in_interval(y, t), &samples).len()
}

/// `dim Hom(k_[a,b), k_I)` by brute force.
pub fn oracle_hom_injective(model: &IndexModel, x: &FpInterval, p: &DPoint) -> usize {
    let mut pts = interval_coords(x);
    pts.extend(point_coords(p));
    let samples: Vec<Coord> = sample_line(pts)
        .into_iter()
        .filter(|t| model.is_member(t))
        .collect();
    pointwise_hom_basis(
        &|t| in_interval(x, t),
        &|t| contains(model, p, t).unwrap(),
        &samples,
    )
    .len()
}

/// Decides an `eps`-interleaving of `k_I` and `k_J` by finding the maps
/// `k_I -> k_J[eps]`, `k_J -> k_I[eps]` pointwise and checking that both
/// composites can be scaled to the `2 eps` transition maps.
pub fn oracle_interleaved(model: &IndexModel, i: &DPoint, j: &DPoint, eps: &Rational) -> bool {
    let shifted = |p: &DPoint, t: &Coord| contains(model, p, &t.add_rational(eps)).unwrap();
    let base: Vec<Coord> = point_coords(i).into_iter().chain(point_coords(j)).collect();
    let mut crit = Vec::new();
    for x in &base {
        for k in -3..=3 {
            crit.push(x.add_rational(&(eps * Rational::from_integer(k.into()))));
        }
    }
    let core = sample_line(crit);
    let mut all = core.clone();
    for t in &core {
        all.push(t.add_rational(eps));
        all.push(t.add_rational(&(eps + eps)));
    }
    all.sort();
    all.dedup();
    let pos = |t: &Coord| all.iter().position(|s| s == t).unwrap();

    let phi = pointwise_hom_basis(&|t| contains(model, i, t).unwrap(), &|t| shifted(j, t), &all);
    let psi = pointwise_hom_basis(&|t| contains(model, j, t).unwrap(), &|t| shifted(i, t), &all);
    assert!(phi.len() <= 1 && psi.len() <= 1, "ideal Hom spaces are at most one-dimensional");
    let (Some(phi), Some(psi)) = (phi.first(), psi.first()) else {
        return false;
    };
    // composite at t: phi_t then psi_{t+eps}; required on t with t + 2eps in the ideal
    let mut lambda: Option<Rational> = None;
    let checks = [(i, phi, psi), (j, psi, phi)];
    for (p, first, second) in checks {
        for t in &core {
            let t2 = t.add_rational(&(eps + eps));
            if !contains(model, p, &t2).unwrap() || !contains(model, p, t).unwrap() {
                continue;
            }
            let prod = &first[pos(t)] * &second[pos(&t.add_rational(eps))];
            if prod.is_zero() {
                return false;
            }
            match &lambda {
                None => lambda = Some(prod),
                Some(l) if *l != prod => return false,
                _ => {}
            }
        }
    }
    lambda.is_some()
}

/// Greedy basis: scan generators by increasing `(position, index)` and keep
/// those independent of the ones already kept.
pub fn oracle_greedy_generators(field: &ScalarField, ambient: &FpModule, gens: &[Generator]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..gens.len()).collect();
    order.sort_by(|&a, &b| gens[a].position.cmp(&gens[b].position).then(a.cmp(&b)));
    let mut kept: Vec<usize> = Vec::new();
    for g in order {
        let mut trial = kept.clone();
        trial.push(g);
        if generator_rank(field, ambient, gens, &trial) == trial.len() {
            kept = trial;
        }
    }
    kept.sort();
    kept
}

pub fn generator_rank(field: &ScalarField, ambient: &FpModule, gens: &[Generator], idx: &[usize]) -> usize {
    let mut m = Matrix::zeros(ambient.len(), idx.len());
    for (col, &g) in idx.iter().enumerate() {
        for (r, x) in gens[g].coeffs.iter().enumerate() {
            m.set(r, col, field.reduce(x).unwrap());
        }
    }
    m.rank(field)
}

/// Inverse of a square matrix by Gauss-Jordan on `[m | I]`.
pub fn inverse(field: &ScalarField, m: &Matrix) -> Matrix {
    let n = m.rows();
    let mut aug = Matrix::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, m.get(i, j).clone());
        }
        aug.set(i, n + i, field.one());
    }
    let (r, pivots) = aug.rref(field);
    assert_eq!(pivots, (0..n).collect::<Vec<_>>(), "matrix must be invertible");
    let mut inv = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            inv.set(i, j, r.get(i, n + j).clone());
        }
    }
    inv
}

/// Points of `D` that witness every difference between finite unions of
/// intervals with the given endpoint coordinates: both flavors at each
/// coordinate and between consecutive coordinates, plus the top.
pub fn probe_points(model: &IndexModel, coords: Vec<Coord>) -> Vec<DPoint> {
    let mut out = vec![DPoint::top()];
    for t in sample_line(coords) {
        if model.is_member(&t) {
            out.push(DPoint::principal(t.clone()));
        }
        if model.admits(&t) {
            out.push(DPoint::strict(t));
        }
    }
    out
}

pub fn set_coords(sets: &[&SymbolicSet]) -> Vec<Coord> {
    let mut v = Vec::new();
    for s in sets {
        for comp in s.components() {
            for e in [&comp.lo, &comp.hi] {
                if let Some(c) = e.point().and_then(|p| p.finite_coord()) {
                    v.push(c.clone());
                }
            }
        }
    }
    v
}

/// Membership table of a set on the probe points.
pub fn profile(sp: &Spectrum, s: &SymbolicSet, probes: &[DPoint]) -> Vec<bool> {
    probes.iter().map(|p| sp.member(s, p).unwrap()).collect()
}
