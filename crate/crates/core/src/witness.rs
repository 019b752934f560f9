//! From a point of small log discrepancy on the base `Y` to one on `X`.
//!
//! Let `A ∈ N_Y` attain `mld(Y) ≤ δ` and lift it to `P = (b; A) ∈ N_X` with
//! fiber part `b ∈ [0,1)^m`. Among the multiples `k·P`, `0 ≤ k < t`, with
//! fiber parts reduced modulo 1, two must be within `t^{-1/m}` of each other
//! on the torus `R^m / Z^m`. Their difference `Q` has a short fiber part and
//! base part `(j-i)·A`, so `ℓ(Q)` is bounded by a multiple of
//! `δ^{1/(m+1)}` when `t ≈ δ^{-m/(m+1)}`.
//!
//! All threshold comparisons are done exactly on integer powers.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use std::collections::HashMap;

use crate::exactmath::{floor_rat, frac_rat, hnf, int_root_floor, rat_int, Rat};
use crate::mfs::{f_in_bases, generic_fiber, validate, FiberData, ToricMfs};
use crate::mld::{mld, MldResult};
use crate::Error;

/// Largest number of multiples `find_witness` will generate.
pub const MAX_MULTIPLES: u64 = 1 << 24;

/// The bound `coefficient · radicand^{1/root}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootBound {
    pub coefficient: Rat,
    pub radicand: Rat,
    pub root: u32,
}

impl RootBound {
    /// Whether `x ≤ coefficient · radicand^{1/root}`, decided exactly.
    pub fn holds(&self, x: &Rat) -> bool {
        if !x.is_positive() {
            return true;
        }
        let k = self.root as usize;
        num_traits::pow(x.clone(), k) <= num_traits::pow(self.coefficient.clone(), k) * &self.radicand
    }

    pub fn approx(&self) -> f64 {
        let c = self.coefficient.to_f64().unwrap_or(f64::NAN);
        let r = self.radicand.to_f64().unwrap_or(f64::NAN);
        c * r.powf(1.0 / f64::from(self.root))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EffectiveDelta {
    /// Largest `Σ|coefficients|` of the fiber functionals `ℓ_σ`.
    pub c_z: Rat,
    pub m: usize,
}

impl EffectiveDelta {
    /// `C_Z + 1`.
    pub fn constant(&self) -> Rat {
        &self.c_z + Rat::one()
    }

    /// `(ε / (C_Z + 1))^{m+1}`.
    pub fn delta_of(&self, eps: &Rat) -> Rat {
        num_traits::pow(eps / self.constant(), self.m + 1)
    }
}

pub fn effective_delta(fiber: &FiberData) -> EffectiveDelta {
    let c_z = fiber
        .z
        .fan()
        .cones()
        .iter()
        .filter_map(|c| c.log_discrepancy_functional())
        .map(|f| f.iter().map(|x| x.abs()).sum::<Rat>())
        .max()
        .unwrap_or_else(Rat::zero);
    EffectiveDelta { c_z, m: fiber.m() }
}

/// Coefficient of `δ^{1/(m+1)}` in the witness bound: `2m` for the standard
/// simplex fiber, `C_Z + 1` otherwise.
pub fn bound_coefficient(fiber: &FiberData) -> Rat {
    if fiber.is_standard_simplex() {
        rat_int(2 * fiber.m() as i64)
    } else {
        effective_delta(fiber).constant()
    }
}

/// A point `P ∈ N_X` with `F(P) = A` and fiber coordinates in `[0, 1)`.
pub fn lift_to_x(mfs: &ToricMfs, a: &[Rat]) -> Result<Vec<Rat>, Error> {
    let (m, n) = (mfs.m(), mfs.n());
    if a.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: a.len(),
        });
    }
    if a.iter().all(Zero::is_zero) {
        return Err(Error::ZeroVector);
    }
    let target = mfs
        .y()
        .lattice()
        .coordinates(a)?
        .ok_or(Error::NotInBaseLattice)?;
    let map = f_in_bases(mfs)?.ok_or(Error::NonSurjective)?;
    let form = hnf(&map);
    // w·H = target, with w zero beyond the rank
    let d = m + n;
    let mut w = vec![BigInt::zero(); d];
    for (k, &col) in form.pivots.iter().enumerate() {
        let mut rest = target[col].clone();
        for (i, wi) in w.iter().enumerate().take(k) {
            rest -= wi * &form.h[(i, col)];
        }
        let pivot = &form.h[(k, col)];
        if !(&rest % pivot).is_zero() {
            return Err(Error::NotInBaseLattice);
        }
        w[k] = rest / pivot;
    }
    for j in 0..n {
        let got: BigInt = (0..d).map(|i| &w[i] * &form.h[(i, j)]).sum();
        if got != target[j] {
            return Err(Error::NotInBaseLattice);
        }
    }
    let z: Vec<Rat> = (0..d)
        .map(|j| rat_int((0..d).map(|i| &w[i] * &form.u[(i, j)]).sum::<BigInt>()))
        .collect();
    let mut p = mfs.x().lattice().basis().vec_mul(&z);
    for x in p.iter_mut().take(m) {
        *x = frac_rat(x);
    }
    Ok(p)
}

/// Distance from `a - b` to the nearest integer.
pub fn toroidal_distance(a: &Rat, b: &Rat) -> Rat {
    let d = frac_rat(&(a - b));
    let other = Rat::one() - &d;
    d.min(other)
}

/// Whether every coordinate distance `x` satisfies `x^m · t ≤ 1`, i.e.
/// `x ≤ t^{-1/m}`.
pub fn within_threshold(a: &[Rat], b: &[Rat], t: &Rat) -> bool {
    let m = a.len();
    a.iter()
        .zip(b)
        .all(|(x, y)| num_traits::pow(toroidal_distance(x, y), m) * t <= Rat::one())
}

fn neighbor_cells(cell: &[i64], g: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![Vec::new()];
    for &c in cell {
        let mut steps = vec![(c - 1).rem_euclid(g), c, (c + 1).rem_euclid(g)];
        steps.sort_unstable();
        steps.dedup();
        out = out
            .into_iter()
            .flat_map(|prefix| {
                steps.iter().map(move |&s| {
                    let mut v = prefix.clone();
                    v.push(s);
                    v
                })
            })
            .collect();
    }
    out
}

/// Indices `i < j` of two points whose toroidal distance is at most
/// `t^{-1/m}` in every coordinate, with the smallest such `j` and then the
/// smallest `i`. At least `t` points guarantee such a pair.
pub fn dirichlet_pair(points: &[Vec<Rat>], t: &Rat) -> Result<(usize, usize), Error> {
    if !t.is_positive() {
        return Err(Error::BadParameter(format!("threshold parameter {t} must be positive")));
    }
    if points.len() < 2 {
        return Err(Error::NoPairFound(points.len()));
    }
    let m = points[0].len();
    if let Some(p) = points.iter().find(|p| p.len() != m) {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: p.len(),
        });
    }
    if m == 0 {
        return Ok((0, 1));
    }
    // cells of width 1/g ≥ t^{-1/m}: close pairs sit in neighboring cells
    let g = int_root_floor(t, m as u32)
        .to_i64()
        .unwrap_or(i64::MAX)
        .clamp(1, points.len() as i64);
    let reduced: Vec<Vec<Rat>> = points.iter().map(|p| p.iter().map(frac_rat).collect()).collect();
    let cell_of = |p: &[Rat]| -> Vec<i64> {
        p.iter()
            .map(|x| floor_rat(&(x * rat_int(g))).to_i64().expect("cell index below g"))
            .collect()
    };
    let mut buckets: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
    for (j, p) in reduced.iter().enumerate() {
        let cell = cell_of(p);
        let best = neighbor_cells(&cell, g)
            .iter()
            .filter_map(|c| buckets.get(c))
            .flat_map(|v| v.iter().copied())
            .filter(|&i| within_threshold(&reduced[i], p, t))
            .min();
        if let Some(i) = best {
            return Ok((i, j));
        }
        buckets.entry(cell).or_default().push(j);
    }
    Err(Error::NoPairFound(points.len()))
}

/// Number of multiples used for a given `δ`: `⌊δ^{-m/(m+1)}⌋ + 1`, at
/// least 2.
pub fn multiple_count(delta: &Rat, m: usize) -> BigInt {
    let inv = num_traits::pow(Rat::one() / delta, m);
    let floor = int_root_floor(&inv, m as u32 + 1);
    (floor + 1u32).max(BigInt::from(2))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessReport {
    pub delta: Rat,
    pub a: Vec<Rat>,
    pub p: Vec<Rat>,
    /// Number of multiples `k·P`, `0 ≤ k < t`.
    pub t: BigInt,
    pub pair: (usize, usize),
    pub q: Vec<Rat>,
    pub q_bar: Vec<Rat>,
    pub cone_index: usize,
    pub ld_q: Rat,
    pub bound: RootBound,
    pub bound_satisfied: bool,
}

fn require_valid(mfs: &ToricMfs) -> Result<(), Error> {
    let report = validate(mfs);
    if report.overall {
        Ok(())
    } else {
        Err(Error::InvalidMfs(format!("failed checks: {}", report.failed().join(", "))))
    }
}

pub fn find_witness(mfs: &ToricMfs, delta: &Rat) -> Result<WitnessReport, Error> {
    require_valid(mfs)?;
    if !delta.is_positive() {
        return Err(Error::BadParameter(format!("delta {delta} must be positive")));
    }
    let m = mfs.m();
    let base = mld(mfs.y())?;
    if &base.value > delta {
        return Err(Error::PreconditionFailed(format!(
            "mld(Y) = {} exceeds delta = {delta}",
            base.value
        )));
    }
    let a = base.witness;
    let p = lift_to_x(mfs, &a)?;
    let t = multiple_count(delta, m);
    let count = t
        .to_u64()
        .filter(|&c| c <= MAX_MULTIPLES)
        .ok_or_else(|| Error::TooLarge(format!("{t} multiples")))?;
    let b = &p[..m];
    let points: Vec<Vec<Rat>> = (0..count)
        .into_par_iter()
        .map(|k| b.iter().map(|x| frac_rat(&(x * rat_int(k)))).collect())
        .collect();
    let (i, j) = dirichlet_pair(&points, &rat_int(t.clone()))?;
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    let q_bar: Vec<Rat> = points[j]
        .iter()
        .zip(&points[i])
        .map(|(x, y)| {
            let d = x - y;
            let shift = rat_int(floor_rat(&(&d + &half)));
            d - shift
        })
        .collect();
    let steps = rat_int(BigInt::from(j - i));
    let q: Vec<Rat> = q_bar.iter().cloned().chain(a.iter().map(|x| x * &steps)).collect();
    if q[m..].iter().any(Signed::is_negative) {
        return Err(Error::PreconditionFailed("base part of Q is negative".into()));
    }
    let x = mfs.x();
    let cone_index = x
        .find_containing_cone(&q)?
        .ok_or_else(|| Error::InvalidMfs("Q lies outside the fan of X".into()))?;
    let ld_q = x
        .log_discrepancy(&q)?
        .value()
        .cloned()
        .ok_or_else(|| Error::InvalidMfs("Q lies outside the fan of X".into()))?;
    let fiber = generic_fiber(mfs)?;
    let bound = RootBound {
        coefficient: bound_coefficient(&fiber),
        radicand: delta.clone(),
        root: m as u32 + 1,
    };
    let bound_satisfied = bound.holds(&ld_q);
    Ok(WitnessReport {
        delta: delta.clone(),
        a,
        p,
        t,
        pair: (i, j),
        q,
        q_bar,
        cone_index,
        ld_q,
        bound,
        bound_satisfied,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsDeltaCertificate {
    pub mld_x: MldResult,
    pub mld_y: MldResult,
    /// `C` in `mld(X) ≤ C · mld(Y)^{1/(m+1)}`.
    pub coefficient: Rat,
    pub exponent: u32,
    pub holds: bool,
}

/// Checks `mld(X)^{m+1} ≤ C^{m+1} · mld(Y)` exactly.
pub fn check_eps_delta(mfs: &ToricMfs) -> Result<EpsDeltaCertificate, Error> {
    require_valid(mfs)?;
    let fiber = generic_fiber(mfs)?;
    let coefficient = bound_coefficient(&fiber);
    let exponent = mfs.m() as u32 + 1;
    let mld_x = mld(mfs.x())?;
    let mld_y = mld(mfs.y())?;
    let bound = RootBound {
        coefficient: coefficient.clone(),
        radicand: mld_y.value.clone(),
        root: exponent,
    };
    let holds = bound.holds(&mld_x.value);
    Ok(EpsDeltaCertificate {
        mld_x,
        mld_y,
        coefficient,
        exponent,
        holds,
    })
}
