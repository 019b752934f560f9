//! Minimal log discrepancy: the minimum of `ℓ` over the nonzero lattice
//! points in the support of the fan.
//!
//! For a full-dimensional simplicial cone `σ = ⟨P_1..P_d⟩` every lattice
//! point `v ∈ σ` with barycentric coordinates `x` differs from the coset
//! representative with coordinates `frac(x)` by an integer combination of
//! the `P_i`. If `⌊x⌋ ≠ 0` then `ℓ(v) ≥ 1`, and every ray generator has
//! `ℓ = 1`. So the minimum over the cone is the minimum of `Σ frac(x)` over
//! nonzero representatives of `N / ⟨P_i⟩`, capped at 1. Points on lower
//! dimensional cones show up as representatives with zero coordinates.
//!
//! Ties are broken by the smallest value, then the lexicographically
//! smallest witness, then the lowest cone index. When nothing falls below
//! the cap the witness is the first ray of cone 0.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use std::collections::HashSet;

use crate::exactmath::{ceil_rat, floor_rat, rat_int, Rat, RatMat};
use crate::lattice::{Lattice, QuotientGroup};
use crate::toric::{Fan, ToricVariety};
use crate::Error;

/// Default bound on the number of points the brute-force scan may visit.
pub const DEFAULT_GUARD: u64 = 10_000_000;

/// Groups larger than this are scanned in parallel chunks.
const PARALLEL_CHUNK: u64 = 1 << 15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MldMethod {
    Parallelepiped,
    BruteForce,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MldResult {
    pub value: Rat,
    pub witness: Vec<Rat>,
    pub cone_index: usize,
    pub method: MldMethod,
}

impl MldResult {
    /// Same value, witness and cone, ignoring the method.
    pub fn agrees_with(&self, other: &MldResult) -> bool {
        self.value == other.value
            && self.witness == other.witness
            && self.cone_index == other.cone_index
    }
}

#[derive(Clone, Debug)]
struct Candidate {
    value: Rat,
    witness: Vec<Rat>,
    cone: usize,
}

fn better(a: Candidate, b: Candidate) -> Candidate {
    let key = |c: &Candidate| (c.value.clone(), c.witness.clone(), c.cone);
    if key(&b) < key(&a) {
        b
    } else {
        a
    }
}

fn check_fan(fan: &Fan) -> Result<(), Error> {
    if fan.cones().is_empty() {
        return Err(Error::EmptyFan);
    }
    if let Some(i) = fan.cones().iter().position(|c| !c.is_full_dimensional()) {
        return Err(Error::NotFullDimensional(i));
    }
    Ok(())
}

fn finish(x: &ToricVariety, best: Option<Candidate>, method: MldMethod) -> MldResult {
    match best {
        Some(c) if c.value < Rat::one() => MldResult {
            value: c.value,
            witness: c.witness,
            cone_index: c.cone,
            method,
        },
        _ => {
            let fan = x.fan();
            let first = fan.cones()[0].ray_indices()[0];
            MldResult {
                value: Rat::one(),
                witness: fan.rays()[first].clone(),
                cone_index: 0,
                method,
            }
        }
    }
}

/// Smallest nonzero coordinate sum and every residue attaining it.
fn scan_residues(group: &QuotientGroup, start: u64, count: u64) -> Option<(i64, Vec<Vec<i64>>)> {
    let mut best: Option<(i64, Vec<Vec<i64>>)> = None;
    for u in group.residues_range(start, count) {
        let s: i64 = u.iter().sum();
        if s == 0 {
            continue;
        }
        match &mut best {
            Some((b, list)) if s == *b => list.push(u),
            Some((b, _)) if s > *b => {}
            _ => best = Some((s, vec![u])),
        }
    }
    best
}

fn merge_scans(
    a: Option<(i64, Vec<Vec<i64>>)>,
    b: Option<(i64, Vec<Vec<i64>>)>,
) -> Option<(i64, Vec<Vec<i64>>)> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some((sa, mut la)), Some((sb, lb))) => match sa.cmp(&sb) {
            std::cmp::Ordering::Less => Some((sa, la)),
            std::cmp::Ordering::Greater => Some((sb, lb)),
            std::cmp::Ordering::Equal => {
                la.extend(lb);
                Some((sa, la))
            }
        },
    }
}

fn cone_minimum(lattice: &Lattice, generators: &RatMat, cone: usize) -> Result<Option<Candidate>, Error> {
    let group = QuotientGroup::new(lattice, generators)?;
    let n = group.len();
    let scanned = if n > PARALLEL_CHUNK {
        let chunks = n.div_ceil(PARALLEL_CHUNK);
        (0..chunks)
            .into_par_iter()
            .map(|c| scan_residues(&group, c * PARALLEL_CHUNK, PARALLEL_CHUNK))
            .reduce(|| None, merge_scans)
    } else {
        scan_residues(&group, 0, n)
    };
    let Some((sum, achievers)) = scanned else {
        return Ok(None);
    };
    let witness = achievers
        .iter()
        .map(|u| group.ambient(u))
        .min()
        .expect("at least one achiever");
    Ok(Some(Candidate {
        value: Rat::new(BigInt::from(sum), BigInt::from(group.denominator())),
        witness,
        cone,
    }))
}

/// Exact minimal log discrepancy by enumerating the half-open fundamental
/// parallelepiped of every maximal cone.
pub fn mld(x: &ToricVariety) -> Result<MldResult, Error> {
    let fan = x.fan();
    check_fan(fan)?;
    let per_cone = fan
        .cones()
        .par_iter()
        .enumerate()
        .map(|(i, c)| cone_minimum(x.lattice(), c.generators(), i))
        .collect::<Result<Vec<_>, _>>()?;
    let best = per_cone.into_iter().flatten().reduce(better);
    Ok(finish(x, best, MldMethod::Parallelepiped))
}

fn to_i128(x: &BigInt) -> Result<i128, Error> {
    x.to_i128()
        .ok_or_else(|| Error::TooLarge(format!("integer {x} exceeds 128 bits")))
}

/// Representatives of `N / Z^d` as numerators over `lattice.denominator()`,
/// generated by closing the basis rows under addition modulo `Z^d`.
fn standard_cosets(lattice: &Lattice, guard: u64) -> Result<(i128, Vec<Vec<i128>>), Error> {
    let d = lattice.dim();
    let den = to_i128(lattice.denominator())?;
    let gens: Vec<Vec<i128>> = (0..d)
        .map(|i| {
            lattice
                .basis()
                .row(i)
                .iter()
                .map(|x| to_i128(&(x * rat_int(lattice.denominator().clone())).to_integer()))
                .map(|x| x.map(|x| x.rem_euclid(den)))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<_, _>>()?;
    let mut seen: HashSet<Vec<i128>> = HashSet::new();
    let mut order = vec![vec![0i128; d]];
    seen.insert(order[0].clone());
    let mut head = 0;
    while head < order.len() {
        let cur = order[head].clone();
        head += 1;
        for g in &gens {
            let next: Vec<i128> = cur.iter().zip(g).map(|(a, b)| (a + b) % den).collect();
            if seen.insert(next.clone()) {
                if order.len() as u64 >= guard {
                    return Err(Error::TooLarge(format!(
                        "more than {guard} cosets of the standard lattice"
                    )));
                }
                order.push(next);
            }
        }
    }
    Ok((den, order))
}

/// Independent oracle: scans every lattice point whose barycentric
/// coordinates lie in `[0, cap]` in some maximal cone, as integer translates
/// of the cosets of `Z^d`. `cap` must be at least 1; `guard` bounds the
/// number of visited points.
pub fn mld_bruteforce(x: &ToricVariety, cap: &Rat, guard: u64) -> Result<MldResult, Error> {
    let fan = x.fan();
    check_fan(fan)?;
    if cap < &Rat::one() {
        return Err(Error::BadParameter(format!("cap {cap} is below 1")));
    }
    let d = x.dim();
    let (den, cosets) = standard_cosets(x.lattice(), guard)?;

    struct Plan {
        weights: Vec<Vec<i128>>,
        scale: i128,
        limit: i128,
        lo: Vec<Rat>,
        hi: Vec<Rat>,
    }
    let mut plans = Vec::with_capacity(fan.cones().len());
    let mut visits: u128 = 0;
    for cone in fan.cones() {
        let b = cone.generators();
        let inv = b.inverse()?;
        let k = inv.common_denominator();
        let weights = (0..d)
            .map(|i| {
                inv.row(i)
                    .iter()
                    .map(|w| to_i128(&(w * rat_int(k.clone())).to_integer()))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        let scale = den
            .checked_mul(to_i128(&k)?)
            .ok_or_else(|| Error::TooLarge("barycentric scale".into()))?;
        let limit_rat = cap * rat_int(BigInt::from(scale));
        let limit = to_i128(&floor_rat(&limit_rat))?;
        let lo: Vec<Rat> = (0..d)
            .map(|j| cap * (0..d).map(|i| b[(i, j)].clone().min(Rat::zero())).sum::<Rat>())
            .collect();
        let hi: Vec<Rat> = (0..d)
            .map(|j| cap * (0..d).map(|i| b[(i, j)].clone().max(Rat::zero())).sum::<Rat>())
            .collect();
        let boxed: u128 = lo
            .iter()
            .zip(&hi)
            .map(|(l, h)| (ceil_rat(&(h - l)) + 1u32).to_u128().unwrap_or(u128::MAX))
            .fold(1u128, |a, b| a.saturating_mul(b));
        visits = visits.saturating_add(boxed.saturating_mul(cosets.len() as u128));
        plans.push(Plan {
            weights,
            scale,
            limit,
            lo,
            hi,
        });
    }
    if visits > u128::from(guard) {
        return Err(Error::TooLarge(format!(
            "brute force would visit about {visits} points (guard {guard})"
        )));
    }

    let den_rat = rat_int(BigInt::from(den));
    let mut best: Option<Candidate> = None;
    for (ci, plan) in plans.iter().enumerate() {
        // smallest scaled sum, with the lexicographically smallest numerator vector
        let mut cone_best: Option<(i128, Vec<i128>)> = None;
        for rho in &cosets {
            let mut ranges = Vec::with_capacity(d);
            for j in 0..d {
                let r = Rat::new(BigInt::from(rho[j]), BigInt::from(den));
                let zl = to_i128(&ceil_rat(&(&plan.lo[j] - &r)))?;
                let zh = to_i128(&floor_rat(&(&plan.hi[j] - &r)))?;
                ranges.push((zl, zh));
            }
            if ranges.iter().any(|(l, h)| l > h) {
                continue;
            }
            let mut z: Vec<i128> = ranges.iter().map(|r| r.0).collect();
            loop {
                let n: Vec<i128> = (0..d).map(|j| rho[j] + den * z[j]).collect();
                if n.iter().any(|&c| c != 0) {
                    let mut sum = 0i128;
                    let mut inside = true;
                    for j in 0..d {
                        let xj: i128 = (0..d).map(|i| n[i] * plan.weights[i][j]).sum();
                        if xj < 0 || xj > plan.limit {
                            inside = false;
                            break;
                        }
                        sum += xj;
                    }
                    if inside {
                        let replace = match &cone_best {
                            None => true,
                            Some((s, w)) => sum < *s || (sum == *s && n < *w),
                        };
                        if replace {
                            cone_best = Some((sum, n));
                        }
                    }
                }
                let mut k = 0;
                loop {
                    if k == d {
                        break;
                    }
                    z[k] += 1;
                    if z[k] <= ranges[k].1 {
                        break;
                    }
                    z[k] = ranges[k].0;
                    k += 1;
                }
                if k == d {
                    break;
                }
            }
        }
        if let Some((sum, n)) = cone_best {
            let cand = Candidate {
                value: Rat::new(BigInt::from(sum), BigInt::from(plan.scale)),
                witness: n.iter().map(|&c| rat_int(BigInt::from(c)) / &den_rat).collect(),
                cone: ci,
            };
            best = Some(match best {
                None => cand,
                Some(b) => better(b, cand),
            });
        }
    }
    Ok(finish(x, best, MldMethod::BruteForce))
}

/// The affine toric variety of the cyclic quotient singularity
/// `1/r(a_1, ..., a_n)`: cone `⟨e_1..e_n⟩` over `Z^n + Z·(1/r)(a_1..a_n)`.
pub fn cyclic_quotient(r: i64, weights: &[i64]) -> Result<ToricVariety, Error> {
    if r <= 0 {
        return Err(Error::InvalidWeights(format!("order {r} must be positive")));
    }
    if weights.is_empty() {
        return Err(Error::InvalidWeights("no weights".into()));
    }
    let n = weights.len();
    let g: Vec<Rat> = weights.iter().map(|&a| Rat::new(a.into(), r.into())).collect();
    let lattice = Lattice::from_generators(n, &[g])?;
    let rays: Vec<Vec<Rat>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rat::one() } else { Rat::zero() })
                .collect()
        })
        .collect();
    ToricVariety::affine(lattice, &rays)
}

/// `mld` of `1/r(a_1..a_n)`.
pub fn mld_cyclic(r: i64, weights: &[i64]) -> Result<Rat, Error> {
    Ok(mld(&cyclic_quotient(r, weights)?)?.value)
}

/// Sanity helper shared by tests and callers that want a certificate check:
/// the witness lies in the lattice, is nonzero, sits in the reported cone
/// and has `ℓ` equal to the reported value.
pub fn verify_result(x: &ToricVariety, result: &MldResult) -> Result<bool, Error> {
    if result.value.is_negative() || result.value > Rat::one() {
        return Ok(false);
    }
    if !x.lattice().contains(&result.witness)? {
        return Ok(false);
    }
    let Some(cone) = x.fan().cones().get(result.cone_index) else {
        return Ok(false);
    };
    if !cone.contains(&result.witness)? {
        return Ok(false);
    }
    let value = x.log_discrepancy(&result.witness)?;
    Ok(value.value() == Some(&result.value))
}
