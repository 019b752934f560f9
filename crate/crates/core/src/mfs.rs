//! Toric Mori fiber spaces `X → Y` in normal form.
//!
//! Coordinates on `N_X ⊗ R = R^{m+n}` put the `m` fiber coordinates first
//! and the `n` base coordinates last, and `F` is the projection onto the
//! last `n`. The fan of `X` has `m+1` rays `P_0..P_m` in `ker F` spanning a
//! simplex around the origin and `n` rays mapping to positive multiples of
//! `e_1..e_n`. Its maximal cones are the sets of rays omitting exactly one
//! fiber ray. `Y` is the affine cone `⟨e_1..e_n⟩` over `N_Y`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use std::collections::BTreeSet;

use crate::exactmath::{hnf, rat_int, snf, IntMat, Rat};
use crate::lattice::Lattice;
use crate::mld::mld;
use crate::toric::{barycentric_of_origin, Fan, ToricVariety};
use crate::Error;

#[derive(Clone, Debug)]
pub struct ToricMfs {
    m: usize,
    n: usize,
    x: ToricVariety,
    y: ToricVariety,
    f: IntMat,
    adjusted_rays: Vec<usize>,
}

/// Structural equality: same dimensions, varieties and projection.
impl PartialEq for ToricMfs {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m && self.n == other.n && self.x == other.x && self.y == other.y && self.f == other.f
    }
}

impl Eq for ToricMfs {}

/// The normal-form projection `R^{m+n} → R^n`, as an `n × (m+n)` matrix.
pub fn projection(m: usize, n: usize) -> IntMat {
    let mut f = IntMat::zeros(n, m + n);
    for l in 0..n {
        f[(l, m + l)] = BigInt::one();
    }
    f
}

fn unit(dim: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); dim];
    v[i] = Rat::one();
    v
}

fn fan_cones(m: usize, total: usize) -> Vec<Vec<usize>> {
    (0..=m)
        .map(|i| (0..total).filter(|&k| k != i).collect())
        .collect()
}

impl ToricMfs {
    /// Checks dimensions and that every structural check passes.
    pub fn new(m: usize, n: usize, x: ToricVariety, y: ToricVariety, f: IntMat) -> Result<Self, Error> {
        let mfs = Self::new_unchecked(m, n, x, y, f)?;
        mfs.require_valid()?;
        Ok(mfs)
    }

    /// Checks dimensions only, so that malformed spaces can be validated.
    pub fn new_unchecked(m: usize, n: usize, x: ToricVariety, y: ToricVariety, f: IntMat) -> Result<Self, Error> {
        if m == 0 {
            return Err(Error::BadParameter("fiber dimension must be positive".into()));
        }
        if x.dim() != m + n {
            return Err(Error::DimensionMismatch {
                expected: m + n,
                found: x.dim(),
            });
        }
        if y.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: y.dim(),
            });
        }
        if f.rows() != n || f.cols() != m + n {
            return Err(Error::DimensionMismatch {
                expected: n * (m + n),
                found: f.rows() * f.cols(),
            });
        }
        Ok(Self {
            m,
            n,
            x,
            y,
            f,
            adjusted_rays: Vec::new(),
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn x(&self) -> &ToricVariety {
        &self.x
    }

    pub fn y(&self) -> &ToricVariety {
        &self.y
    }

    pub fn f(&self) -> &IntMat {
        &self.f
    }

    /// Rays of `X` (by index) that were rescaled to become primitive.
    pub fn adjusted_rays(&self) -> &[usize] {
        &self.adjusted_rays
    }

    /// `F(v)`.
    pub fn apply_f(&self, v: &[Rat]) -> Vec<Rat> {
        (0..self.n)
            .map(|l| (0..self.m + self.n).map(|k| rat_int(self.f[(l, k)].clone()) * &v[k]).sum())
            .collect()
    }

    /// Copy with ray `index` of `X` removed and every cone restricted to the
    /// remaining rays.
    pub fn without_ray(&self, index: usize) -> Result<Self, Error> {
        let fan = self.x.fan();
        if index >= fan.rays().len() {
            return Err(Error::BadParameter(format!("no ray {index}")));
        }
        let rays: Vec<Vec<Rat>> = fan
            .rays()
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != index)
            .map(|(_, r)| r.clone())
            .collect();
        let cones = fan
            .cones()
            .iter()
            .map(|c| {
                c.ray_indices()
                    .iter()
                    .filter(|&&k| k != index)
                    .map(|&k| if k > index { k - 1 } else { k })
                    .collect()
            })
            .collect();
        let x = ToricVariety::new_unchecked(self.x.lattice().clone(), Fan::new(self.x.dim(), rays, cones)?);
        Self::new_unchecked(self.m, self.n, x, self.y.clone(), self.f.clone())
    }

    /// Copy with `Y` placed over a different lattice.
    pub fn with_base_lattice(&self, lattice: Lattice) -> Result<Self, Error> {
        let y = ToricVariety::new_unchecked(lattice, self.y.fan().clone());
        Self::new_unchecked(self.m, self.n, self.x.clone(), y, self.f.clone())
    }

    /// Copy with the fiber rays `P_0..P_m` replaced (given in fiber
    /// coordinates), keeping the cone structure.
    pub fn with_fiber_rays(&self, fiber: &[Vec<Rat>]) -> Result<Self, Error> {
        let fan = self.x.fan();
        let fiber_idx = self.fiber_ray_indices();
        if fiber.len() != fiber_idx.len() {
            return Err(Error::DimensionMismatch {
                expected: fiber_idx.len(),
                found: fiber.len(),
            });
        }
        let mut rays = fan.rays().to_vec();
        for (&k, v) in fiber_idx.iter().zip(fiber) {
            if v.len() != self.m {
                return Err(Error::DimensionMismatch {
                    expected: self.m,
                    found: v.len(),
                });
            }
            rays[k] = v.iter().cloned().chain((0..self.n).map(|_| Rat::zero())).collect();
        }
        let cones = fan.cones().iter().map(|c| c.ray_indices().to_vec()).collect();
        let x = ToricVariety::new_unchecked(self.x.lattice().clone(), Fan::new(self.x.dim(), rays, cones)?);
        Self::new_unchecked(self.m, self.n, x, self.y.clone(), self.f.clone())
    }

    /// Indices of the rays of `X` lying in `ker F`.
    pub fn fiber_ray_indices(&self) -> Vec<usize> {
        self.x
            .fan()
            .rays()
            .iter()
            .enumerate()
            .filter(|(_, r)| self.apply_f(r).iter().all(Zero::is_zero))
            .map(|(k, _)| k)
            .collect()
    }

    fn require_valid(&self) -> Result<(), Error> {
        let report = validate(self);
        if report.overall {
            Ok(())
        } else {
            Err(Error::InvalidMfs(format!("failed checks: {}", report.failed().join(", "))))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
    pub overall: bool,
}

impl ValidationReport {
    fn new(checks: Vec<Check>) -> Self {
        let overall = checks.iter().all(|c| c.passed);
        Self { checks, overall }
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Names of the failing checks, in report order.
    pub fn failed(&self) -> Vec<&'static str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name).collect()
    }
}

fn check(name: &'static str, result: Result<String, String>) -> Check {
    match result {
        Ok(detail) => Check {
            name,
            passed: true,
            detail,
        },
        Err(detail) => Check {
            name,
            passed: false,
            detail,
        },
    }
}

/// Runs every structural check independently.
pub fn validate(mfs: &ToricMfs) -> ValidationReport {
    ValidationReport::new(vec![
        check("rays_primitive", check_primitive(mfs)),
        check("ray_count", check_ray_count(mfs)),
        check("ray_positions", check_ray_positions(mfs)),
        check("fiber_simplex_contains_origin", check_fiber_simplex(mfs)),
        check("cone_structure", check_cone_structure(mfs)),
        check("surjective", check_surjective(mfs)),
        check("relative_picard_rank", check_picard(mfs)),
        check("proper", check_proper(mfs)),
    ])
}

fn check_primitive(mfs: &ToricMfs) -> Result<String, String> {
    for (k, r) in mfs.x.fan().rays().iter().enumerate() {
        match mfs.x.lattice().is_primitive(r) {
            Ok(true) => {}
            Ok(false) => return Err(format!("ray {k} is not primitive")),
            Err(e) => return Err(format!("ray {k}: {e}")),
        }
    }
    Ok("all rays primitive".into())
}

fn check_ray_count(mfs: &ToricMfs) -> Result<String, String> {
    let count = mfs.x.fan().rays().len();
    let expected = mfs.m + mfs.n + 1;
    if count == expected {
        Ok(format!("{count} rays"))
    } else {
        Err(format!("{count} rays, expected {expected}"))
    }
}

/// The base coordinate a non-fiber ray maps onto, if its image is a positive
/// multiple of a single `e_l`.
fn base_direction(image: &[Rat]) -> Option<usize> {
    let nonzero: Vec<usize> = (0..image.len()).filter(|&l| !image[l].is_zero()).collect();
    match nonzero.as_slice() {
        [l] if image[*l].is_positive() => Some(*l),
        _ => None,
    }
}

fn check_ray_positions(mfs: &ToricMfs) -> Result<String, String> {
    if mfs.f != projection(mfs.m, mfs.n) {
        return Err("F is not the coordinate projection".into());
    }
    let fiber = mfs.fiber_ray_indices();
    if fiber.len() != mfs.m + 1 {
        return Err(format!("{} rays in ker F, expected {}", fiber.len(), mfs.m + 1));
    }
    let mut hit = vec![false; mfs.n];
    for (k, r) in mfs.x.fan().rays().iter().enumerate() {
        if fiber.contains(&k) {
            continue;
        }
        match base_direction(&mfs.apply_f(r)) {
            Some(l) if !hit[l] => hit[l] = true,
            Some(l) => return Err(format!("two rays map onto e_{}", l + 1)),
            None => return Err(format!("ray {k} does not map onto a ray of Y")),
        }
    }
    if let Some(l) = hit.iter().position(|h| !h) {
        return Err(format!("no ray maps onto e_{}", l + 1));
    }
    Ok(format!("{} fiber rays, {} base rays", mfs.m + 1, mfs.n))
}

fn fiber_vertices(mfs: &ToricMfs, fiber: &[usize]) -> Vec<Vec<Rat>> {
    fiber
        .iter()
        .map(|&k| mfs.x.fan().rays()[k][..mfs.m].to_vec())
        .collect()
}

fn origin_inside(mfs: &ToricMfs) -> Result<Vec<Rat>, String> {
    let fiber = mfs.fiber_ray_indices();
    if fiber.len() != mfs.m + 1 {
        return Err(format!("{} rays in ker F, expected {}", fiber.len(), mfs.m + 1));
    }
    let y = barycentric_of_origin(&fiber_vertices(mfs, &fiber))
        .ok_or_else(|| "fiber rays are affinely dependent".to_string())?;
    if y.iter().all(Signed::is_positive) {
        Ok(y)
    } else {
        Err("origin is not strictly inside the fiber simplex".into())
    }
}

fn check_fiber_simplex(mfs: &ToricMfs) -> Result<String, String> {
    origin_inside(mfs).map(|y| {
        let parts: Vec<String> = y.iter().map(ToString::to_string).collect();
        format!("barycentric coordinates ({})", parts.join(", "))
    })
}

fn cone_sets(fan: &Fan) -> BTreeSet<BTreeSet<usize>> {
    fan.cones()
        .iter()
        .map(|c| c.ray_indices().iter().copied().collect())
        .collect()
}

fn expected_cones(mfs: &ToricMfs) -> BTreeSet<BTreeSet<usize>> {
    let total = mfs.x.fan().rays().len();
    mfs.fiber_ray_indices()
        .into_iter()
        .map(|i| (0..total).filter(|&k| k != i).collect())
        .collect()
}

fn check_cone_structure(mfs: &ToricMfs) -> Result<String, String> {
    let actual = cone_sets(mfs.x.fan());
    if mfs.x.fan().cones().len() != actual.len() {
        return Err("repeated maximal cone".into());
    }
    let expected = expected_cones(mfs);
    if expected.is_empty() {
        return Err("no rays in ker F".into());
    }
    if actual == expected {
        Ok(format!("{} maximal cones, each omitting one fiber ray", actual.len()))
    } else {
        Err("maximal cones are not the sets omitting one fiber ray".into())
    }
}

/// Matrix of `F` from the basis of `N_X` to the basis of `N_Y`, if it is
/// integral.
pub(crate) fn f_in_bases(mfs: &ToricMfs) -> Result<Option<IntMat>, Error> {
    let bx = mfs.x.lattice().basis();
    let by_inv = mfs.y.lattice().basis().inverse()?;
    let images = bx.mul(&mfs.f.to_rat().transpose());
    Ok(images.mul(&by_inv).to_int())
}

fn check_surjective(mfs: &ToricMfs) -> Result<String, String> {
    let m = f_in_bases(mfs)
        .map_err(|e| e.to_string())?
        .ok_or_else(|| "F(N_X) is not contained in N_Y".to_string())?;
    let diag = snf(&m).diagonal();
    if diag.len() == mfs.n && diag.iter().all(One::is_one) {
        Ok("F(N_X) = N_Y".into())
    } else {
        let index: BigInt = diag.iter().product();
        Err(format!("cokernel of F has invariant factors {diag:?} (order {index})"))
    }
}

fn check_picard(mfs: &ToricMfs) -> Result<String, String> {
    let rank = mfs.x.fan().rays().len() as i64 - mfs.y.fan().rays().len() as i64 - mfs.m as i64;
    if rank == 1 {
        Ok("relative Picard rank 1".into())
    } else {
        Err(format!("relative Picard rank {rank}"))
    }
}

fn check_proper(mfs: &ToricMfs) -> Result<String, String> {
    let rays = mfs.x.fan().rays();
    let mut covered = vec![false; mfs.n];
    let mut fiber = Vec::new();
    for (k, r) in rays.iter().enumerate() {
        let image = mfs.apply_f(r);
        if image.iter().any(Signed::is_negative) {
            return Err(format!("ray {k} maps outside the cone of Y"));
        }
        if image.iter().all(Zero::is_zero) {
            fiber.push(k);
        }
        if let Some(l) = base_direction(&image) {
            covered[l] = true;
        }
    }
    if let Some(l) = covered.iter().position(|c| !c) {
        return Err(format!("e_{} is not in the image of the support", l + 1));
    }
    if fiber.len() != mfs.m + 1 {
        return Err("fiber fan is not complete".into());
    }
    let inside = barycentric_of_origin(&fiber_vertices(mfs, &fiber))
        .is_some_and(|y| y.iter().all(Signed::is_positive));
    if !inside {
        return Err("fiber fan does not cover ker F".into());
    }
    let total = rays.len();
    let expected: BTreeSet<BTreeSet<usize>> = fiber
        .iter()
        .map(|&i| (0..total).filter(|&k| k != i).collect())
        .collect();
    if cone_sets(mfs.x.fan()) != expected {
        return Err("support of the fan is not the preimage of the cone of Y".into());
    }
    Ok("support is the preimage of the cone of Y".into())
}

/// Fiber `Z`, the simplex `P_0..P_m` and the barycentric coordinates of 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiberData {
    pub z: ToricVariety,
    pub simplex_vertices: Vec<Vec<Rat>>,
    pub barycentric_of_origin: Vec<Rat>,
}

impl FiberData {
    pub fn m(&self) -> usize {
        self.z.dim()
    }

    /// Whether the vertices are `e_1..e_m` and `-(e_1+..+e_m)` in some order.
    pub fn is_standard_simplex(&self) -> bool {
        let m = self.m();
        let mut expected: Vec<Vec<Rat>> = (0..m).map(|i| unit(m, i)).collect();
        expected.push(vec![-Rat::one(); m]);
        let mut actual = self.simplex_vertices.clone();
        expected.sort();
        actual.sort();
        actual == expected
    }
}

/// `N_Z = ker F ∩ N_X`, in fiber coordinates.
pub fn fiber_lattice(mfs: &ToricMfs) -> Result<Lattice, Error> {
    let bx = mfs.x.lattice().basis();
    let images = bx.mul(&mfs.f.to_rat().transpose());
    let scale = images.common_denominator();
    let h = hnf(&images.scaled_to_int(&scale));
    let rank = h.rank();
    let d = mfs.m + mfs.n;
    let ur = h.u.to_rat();
    let gens: Vec<Vec<Rat>> = (rank..d)
        .map(|i| bx.vec_mul(ur.row(i))[..mfs.m].to_vec())
        .collect();
    Lattice::from_generators(mfs.m, &gens)
}

pub fn generic_fiber(mfs: &ToricMfs) -> Result<FiberData, Error> {
    mfs.require_valid()?;
    let fiber = mfs.fiber_ray_indices();
    let vertices = fiber_vertices(mfs, &fiber);
    let y = barycentric_of_origin(&vertices).ok_or(Error::DegenerateSimplex)?;
    let lattice = fiber_lattice(mfs)?;
    let fan = Fan::new(mfs.m, vertices.clone(), fan_cones(mfs.m, mfs.m + 1))?;
    let z = ToricVariety::new(lattice, fan).map_err(|e| Error::InvalidMfs(e.to_string()))?;
    Ok(FiberData {
        z,
        simplex_vertices: vertices,
        barycentric_of_origin: y,
    })
}

/// Invariant factors of `N_Z / ⟨P_0, .., P_m⟩`.
pub fn generic_fiber_group(mfs: &ToricMfs) -> Result<Vec<BigInt>, Error> {
    let fiber = generic_fiber(mfs)?;
    let lattice = fiber.z.lattice();
    let coords = fiber
        .simplex_vertices
        .iter()
        .map(|v| lattice.coordinates(v)?.ok_or(Error::NotInLattice))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(snf(&IntMat::from_rows(coords)).diagonal())
}

/// Builds the space with fiber rays `(v_i; 0)`, base rays `c_l·e_{m+l}` over
/// `N_X = Z^{m+n} + ⟨extra_generators⟩`, and `N_Y = F(N_X)`. Rays that are
/// not primitive in `N_X` are rescaled and listed in
/// [`ToricMfs::adjusted_rays`].
pub fn make_mfs(
    m: usize,
    n: usize,
    fiber_rays: &[Vec<i64>],
    base_multiples: &[i64],
    extra_generators: &[Vec<Rat>],
) -> Result<ToricMfs, Error> {
    if m == 0 {
        return Err(Error::BadParameter("fiber dimension must be positive".into()));
    }
    if fiber_rays.len() != m + 1 {
        return Err(Error::BadParameter(format!(
            "{} fiber rays, expected {}",
            fiber_rays.len(),
            m + 1
        )));
    }
    if let Some(v) = fiber_rays.iter().find(|v| v.len() != m) {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: v.len(),
        });
    }
    if base_multiples.len() != n {
        return Err(Error::BadParameter(format!(
            "{} base multiples, expected {n}",
            base_multiples.len()
        )));
    }
    if let Some(c) = base_multiples.iter().find(|&&c| c < 1) {
        return Err(Error::BadParameter(format!("base multiple {c} must be positive")));
    }
    let fiber: Vec<Vec<Rat>> = fiber_rays
        .iter()
        .map(|v| v.iter().map(|&x| rat_int(x)).collect())
        .collect();
    match barycentric_of_origin(&fiber) {
        Some(y) if y.iter().all(Signed::is_positive) => {}
        _ => return Err(Error::DegenerateSimplex),
    }
    let d = m + n;
    let lattice = Lattice::from_generators(d, extra_generators)?;
    let mut rays: Vec<Vec<Rat>> = fiber
        .iter()
        .map(|v| v.iter().cloned().chain((0..n).map(|_| Rat::zero())).collect())
        .collect();
    for (l, &c) in base_multiples.iter().enumerate() {
        let mut v = vec![Rat::zero(); d];
        v[m + l] = rat_int(c);
        rays.push(v);
    }
    let mut adjusted = Vec::new();
    for (k, r) in rays.iter_mut().enumerate() {
        let p = lattice.primitivize(r)?;
        if p != *r {
            adjusted.push(k);
            *r = p;
        }
    }
    let fan = Fan::new(d, rays, fan_cones(m, d + 1))?;
    let x = ToricVariety::new(lattice, fan)?;
    let f = projection(m, n);
    let base_gens: Vec<Vec<Rat>> = (0..d)
        .map(|i| x.lattice().basis().row(i)[m..].to_vec())
        .collect();
    let base_lattice = Lattice::from_generators(n, &base_gens)?;
    let y = ToricVariety::affine(base_lattice, &(0..n).map(|l| unit(n, l)).collect::<Vec<_>>())?;
    let mut mfs = ToricMfs::new_unchecked(m, n, x, y, f)?;
    if !check_surjective(&mfs).is_ok() {
        return Err(Error::NonSurjective);
    }
    mfs.require_valid()?;
    mfs.adjusted_rays = adjusted;
    Ok(mfs)
}

/// `r = l^4 + 1`.
pub fn family_r(l: i64) -> Result<i64, Error> {
    if l < 2 {
        return Err(Error::BadParameter(format!("l = {l} must be at least 2")));
    }
    l.checked_pow(4)
        .and_then(|x| x.checked_add(1))
        .ok_or_else(|| Error::BadParameter(format!("l = {l} is too large")))
}

/// Fiber triangle `(1,0), (-(l-1),1), (-(l-1),-1)` over
/// `Z^4 + Z·(1/r)(l, l², 1, 1)` with `r = l^4 + 1`; the base is `1/r(1,1)`.
pub fn example_family(l: i64) -> Result<ToricMfs, Error> {
    let r = family_r(l)?;
    let g: Vec<Rat> = [l, l * l, 1, 1].iter().map(|&a| Rat::new(a.into(), r.into())).collect();
    make_mfs(
        2,
        2,
        &[vec![1, 0], vec![-(l - 1), 1], vec![-(l - 1), -1]],
        &[1, 1],
        &[g],
    )
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub l: i64,
    pub r: i64,
    pub mld_x: Rat,
    pub mld_y: Rat,
    /// `mld(Y) / mld(X)^4`.
    pub ratio: f64,
    /// Least-squares slope of `log mld(Y)` against `log mld(X)` over the rows
    /// so far; `None` for the first row.
    pub slope_running: Option<f64>,
    /// `mld(X) ≥ 0.9 / (2l)`.
    pub bound_check: bool,
}

pub fn rat_to_f64(x: &Rat) -> f64 {
    use num_traits::ToPrimitive;
    x.to_f64().unwrap_or(f64::NAN)
}

/// Least-squares slope of `ys` against `xs`.
pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() < 2 || xs.len() != ys.len() {
        return None;
    }
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Slope of `log mld(Y)` against `log mld(X)` over the given rows.
pub fn loglog_slope(rows: &[SweepRow]) -> Option<f64> {
    let xs: Vec<f64> = rows.iter().map(|r| rat_to_f64(&r.mld_x).ln()).collect();
    let ys: Vec<f64> = rows.iter().map(|r| rat_to_f64(&r.mld_y).ln()).collect();
    least_squares_slope(&xs, &ys)
}

/// Rows for `l_min..=l_max`, computed in parallel and ordered by `l`.
pub fn sweep_family(l_min: i64, l_max: i64) -> Result<Vec<SweepRow>, Error> {
    if l_min < 2 {
        return Err(Error::BadParameter(format!("l_min = {l_min} must be at least 2")));
    }
    let values = (l_min..=l_max.max(l_min - 1))
        .into_par_iter()
        .map(|l| {
            let mfs = example_family(l)?;
            let x = mld(mfs.x())?.value;
            let y = mld(mfs.y())?.value;
            Ok((l, family_r(l)?, x, y))
        })
        .collect::<Result<Vec<_>, Error>>()?;
    let mut rows: Vec<SweepRow> = Vec::with_capacity(values.len());
    for (l, r, x, y) in values {
        let x4 = &x * &x * &x * &x;
        let ratio = rat_to_f64(&(&y / &x4));
        let bound_check = &x * rat_int(20 * l) >= rat_int(9);
        let mut row = SweepRow {
            l,
            r,
            mld_x: x,
            mld_y: y,
            ratio,
            slope_running: None,
            bound_check,
        };
        if !rows.is_empty() {
            let mut all = rows.clone();
            all.push(row.clone());
            row.slope_running = loglog_slope(&all);
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Index `[N_Y : F(N_X)]` expressed through the cokernel; 1 when surjective.
pub fn cokernel_order(mfs: &ToricMfs) -> Result<Option<BigInt>, Error> {
    Ok(f_in_bases(mfs)?.map(|m| snf(&m).diagonal().iter().product()))
}
