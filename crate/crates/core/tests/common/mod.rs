#![allow(dead_code)]

use rand::Rng;
use toricmld::exactmath::{rat, rat_int};
use toricmld::mfs::fiber_lattice;
use toricmld::{make_mfs, Fan, IntMat, Lattice, Rat, ToricMfs, ToricVariety};

/// `Z^d + Σ Z·(a/q)` with index at most `max_index`.
pub fn random_lattice<R: Rng>(rng: &mut R, d: usize, max_index: i64) -> Lattice {
    let gens = rng.gen_range(0..=2);
    let mut out = Vec::new();
    let mut budget = max_index;
    for _ in 0..gens {
        if budget < 2 {
            break;
        }
        let q = rng.gen_range(2..=budget);
        budget /= q;
        out.push((0..d).map(|_| rat(rng.gen_range(0..q), q)).collect::<Vec<_>>());
    }
    Lattice::from_generators(d, &out).unwrap()
}

fn random_int_vec<R: Rng>(rng: &mut R, d: usize, bound: i64) -> Vec<Rat> {
    (0..d).map(|_| rat_int(rng.gen_range(-bound..=bound))).collect()
}

fn independent(rows: &[Vec<Rat>]) -> bool {
    toricmld::RatMat::from_rows(rows.to_vec()).rank() == rows.len()
}

/// A full-dimensional simplicial cone with small integer generators.
fn random_cone<R: Rng>(rng: &mut R, d: usize, bound: i64) -> Vec<Vec<Rat>> {
    loop {
        let rows: Vec<Vec<Rat>> = (0..d).map(|_| random_int_vec(rng, d, bound)).collect();
        if independent(&rows) {
            return rows;
        }
    }
}

/// `d+1` integer points with the origin strictly inside their hull.
fn random_simplex<R: Rng>(rng: &mut R, d: usize, bound: i64) -> Vec<Vec<Rat>> {
    loop {
        let rows: Vec<Vec<Rat>> = (0..=d).map(|_| random_int_vec(rng, d, bound)).collect();
        if let Some(y) = toricmld::toric::barycentric_of_origin(&rows) {
            if y.iter().all(|c| c > &Rat::from_integer(0.into())) {
                return rows;
            }
        }
    }
}

/// Random affine or complete simplicial toric variety of dimension `d` over
/// a lattice of index at most `max_index`.
pub fn random_variety<R: Rng>(rng: &mut R, d: usize, max_index: i64, bound: i64) -> ToricVariety {
    let lattice = random_lattice(rng, d, max_index);
    if d >= 1 && rng.gen_bool(0.4) {
        let rays: Vec<Vec<Rat>> = random_simplex(rng, d, bound)
            .iter()
            .map(|r| lattice.primitivize(r).unwrap())
            .collect();
        let cones = (0..=d).map(|i| (0..=d).filter(|&k| k != i).collect()).collect();
        let fan = Fan::new(d, rays, cones).unwrap();
        ToricVariety::new(lattice, fan).unwrap()
    } else {
        ToricVariety::affine(lattice, &random_cone(rng, d, bound)).unwrap()
    }
}

/// Random integer matrix with determinant ±1.
pub fn random_unimodular<R: Rng>(rng: &mut R, d: usize) -> IntMat {
    let mut m = IntMat::identity(d);
    if d < 2 {
        if rng.gen_bool(0.5) {
            m.negate_row(0);
        }
        return m;
    }
    for _ in 0..3 * d {
        let a = rng.gen_range(0..d);
        let mut b = rng.gen_range(0..d - 1);
        if b >= a {
            b += 1;
        }
        match rng.gen_range(0..4) {
            0 => m.swap_rows(a, b),
            1 => m.negate_row(a),
            _ => {
                let f: i64 = rng.gen_range(-2..=2);
                m.add_row_multiple(a, b, &f.into());
            }
        }
    }
    m
}

pub fn standard_fiber(m: usize) -> Vec<Vec<i64>> {
    let mut fiber: Vec<Vec<i64>> = (0..m)
        .map(|i| (0..m).map(|j| i64::from(i == j)).collect())
        .collect();
    fiber.push(vec![-1; m]);
    fiber
}

/// Random space with the standard simplex as fiber over `N_X` of index at
/// most `max_index`. `None` when the extra generators made a fiber ray
/// non-primitive.
pub fn random_standard_mfs<R: Rng>(rng: &mut R, m: usize, n: usize, max_index: i64) -> Option<ToricMfs> {
    let lattice = random_lattice(rng, m + n, max_index);
    let extras = lattice.basis().row_vecs();
    let mfs = make_mfs(m, n, &standard_fiber(m), &vec![1; n], &extras).ok()?;
    let fiber_ok = mfs.adjusted_rays().iter().all(|&k| k > m);
    fiber_ok.then_some(mfs)
}

/// Whether `N_Z` is just `Z^m`.
pub fn fiber_is_standard_lattice(mfs: &ToricMfs) -> bool {
    fiber_lattice(mfs).unwrap() == Lattice::standard(mfs.m())
}

pub fn family_value(l: i64) -> Rat {
    rat(l * l * l + l + 2, l.pow(4) + 1)
}
