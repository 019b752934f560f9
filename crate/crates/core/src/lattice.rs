//! Finite overlattices `N ⊇ Z^d` and enumeration of their quotient groups.
//!
//! A [`Lattice`] is stored by a canonical basis: with `D` any common
//! denominator, the basis is `HNF(D·N) / D`. Hermite normal forms commute
//! with positive scaling, so the basis does not depend on the choice of `D`
//! and equal lattices compare equal.

use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::exactmath::{hnf, rat_int, snf, BigInt, IntMat, Rat, RatMat};
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    dim: usize,
    basis: RatMat,
    /// Exponent of `N / Z^d`: the least `D` with `D·N ⊆ Z^d`.
    denominator: BigInt,
    /// `denominator · basis`, upper triangular.
    scaled: IntMat,
    index: BigInt,
}

impl Lattice {
    pub fn standard(dim: usize) -> Self {
        Self::from_generators(dim, &[]).expect("no generators to mismatch")
    }

    /// Smallest lattice containing `Z^d` and every generator.
    pub fn from_generators(dim: usize, gens: &[Vec<Rat>]) -> Result<Self, Error> {
        if let Some(g) = gens.iter().find(|g| g.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: g.len(),
            });
        }
        let scale = gens
            .iter()
            .flatten()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let mut rows: Vec<Vec<BigInt>> = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| if i == j { scale.clone() } else { BigInt::zero() })
                    .collect()
            })
            .collect();
        for g in gens {
            rows.push(
                g.iter()
                    .map(|x| (x * rat_int(scale.clone())).to_integer())
                    .collect(),
            );
        }
        let stacked = if dim == 0 {
            IntMat::zeros(rows.len(), 0)
        } else {
            IntMat::from_rows(rows)
        };
        let h = hnf(&stacked).h;
        let mut basis = RatMat::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                basis[(i, j)] = Rat::new(h[(i, j)].clone(), scale.clone());
            }
        }
        Ok(Self::from_canonical_basis(basis))
    }

    fn from_canonical_basis(basis: RatMat) -> Self {
        let dim = basis.rows();
        let denominator = basis.common_denominator();
        let scaled = basis.scaled_to_int(&denominator);
        let mut inv_index = Rat::one();
        for i in 0..dim {
            inv_index *= &basis[(i, i)];
        }
        let index = (Rat::one() / inv_index).to_integer();
        Self {
            dim,
            basis,
            denominator,
            scaled,
            index,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Canonical basis, one lattice vector per row.
    pub fn basis(&self) -> &RatMat {
        &self.basis
    }

    pub fn denominator(&self) -> &BigInt {
        &self.denominator
    }

    /// `[N : Z^d]`.
    pub fn index_over_standard(&self) -> &BigInt {
        &self.index
    }

    /// Integer coordinates of `v` in the canonical basis, or `None` if
    /// `v ∉ N`.
    pub fn coordinates(&self, v: &[Rat]) -> Result<Option<Vec<BigInt>>, Error> {
        self.check_dim(v)?;
        let scale = rat_int(self.denominator.clone());
        let mut w = Vec::with_capacity(self.dim);
        for x in v {
            let y = x * &scale;
            if !y.is_integer() {
                return Ok(None);
            }
            w.push(y.to_integer());
        }
        // v·D = y·H with H upper triangular: forward substitution.
        let mut y = Vec::with_capacity(self.dim);
        for j in 0..self.dim {
            let mut rest = w[j].clone();
            for (i, yi) in y.iter().enumerate() {
                rest -= yi * &self.scaled[(i, j)];
            }
            let (q, r) = rest.div_rem(&self.scaled[(j, j)]);
            if !r.is_zero() {
                return Ok(None);
            }
            y.push(q);
        }
        Ok(Some(y))
    }

    pub fn contains(&self, v: &[Rat]) -> Result<bool, Error> {
        Ok(self.coordinates(v)?.is_some())
    }

    /// The primitive lattice point on the ray `R≥0·v`.
    pub fn primitivize(&self, v: &[Rat]) -> Result<Vec<Rat>, Error> {
        let y = self.coordinates(v)?.ok_or(Error::NotInLattice)?;
        let g = crate::exactmath::gcd_all(&y);
        if g.is_zero() {
            return Err(Error::ZeroVector);
        }
        let g = rat_int(g);
        Ok(v.iter().map(|x| x / &g).collect())
    }

    pub fn is_primitive(&self, v: &[Rat]) -> Result<bool, Error> {
        let y = self.coordinates(v)?.ok_or(Error::NotInLattice)?;
        let g = crate::exactmath::gcd_all(&y);
        if g.is_zero() {
            return Err(Error::ZeroVector);
        }
        Ok(g.is_one())
    }

    /// Lattice obtained by applying `v ↦ v·m` to every vector. `m` must
    /// preserve `Z^d` (integer matrix with determinant ±1).
    pub fn transform(&self, m: &IntMat) -> Result<Self, Error> {
        let images: Vec<Vec<Rat>> = (0..self.dim)
            .map(|i| m.to_rat().vec_mul(self.basis.row(i)))
            .collect();
        Self::from_generators(self.dim, &images)
    }

    fn check_dim(&self, v: &[Rat]) -> Result<(), Error> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: v.len(),
            });
        }
        Ok(())
    }
}

/// The finite group `N / ⟨B⟩` for a full-rank sublattice `⟨B⟩ ⊆ N`.
///
/// Elements are represented by `B`-coordinates reduced into `[0, 1)^d`,
/// stored as integer numerators over a common denominator. Generators come
/// from the Smith form of the change of basis `C = B·basis(N)⁻¹`: with
/// `U·C·V = diag(s_i)`, the rows `u_i / s_i` of `diag(s)⁻¹·U` generate
/// `N / ⟨B⟩ ≅ ⊕ Z/s_i` in `B`-coordinates.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    sub_basis: RatMat,
    order: BigInt,
    invariant_factors: Vec<BigInt>,
    denominator: i64,
    generators: Vec<Vec<i64>>,
    orders: Vec<u64>,
    total: u64,
}

impl QuotientGroup {
    pub fn new(lattice: &Lattice, sub_basis: &RatMat) -> Result<Self, Error> {
        let d = lattice.dim();
        if sub_basis.rows() != d || sub_basis.cols() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                found: sub_basis.rows(),
            });
        }
        for i in 0..d {
            if !lattice.contains(sub_basis.row(i))? {
                return Err(Error::NotSublattice(i));
            }
        }
        if sub_basis.det().is_zero() {
            return Err(Error::Degenerate);
        }
        let change = sub_basis
            .mul(&lattice.basis().inverse()?)
            .to_int()
            .expect("rows of B lie in N, so their coordinates are integral");
        let form = snf(&change);
        let invariant_factors = form.diagonal();
        let order: BigInt = invariant_factors.iter().product();
        let too_large = || Error::TooLarge(format!("quotient group of order {order}"));

        let exponent = invariant_factors.last().cloned().unwrap_or_else(BigInt::one);
        let denominator = exponent.to_i64().ok_or_else(too_large)?;
        let total = order.to_u64().ok_or_else(too_large)?;
        let mut generators = Vec::new();
        let mut orders = Vec::new();
        for (i, s) in invariant_factors.iter().enumerate() {
            if s.is_one() {
                continue;
            }
            let step = &exponent / s;
            let g = form
                .u
                .row(i)
                .iter()
                .map(|x| {
                    (x * &step)
                        .mod_floor(&exponent)
                        .to_i64()
                        .expect("reduced below the exponent")
                })
                .collect();
            generators.push(g);
            orders.push(s.to_u64().ok_or_else(too_large)?);
        }
        Ok(Self {
            sub_basis: sub_basis.clone(),
            order,
            invariant_factors,
            denominator,
            generators,
            orders,
            total,
        })
    }

    pub fn order(&self) -> &BigInt {
        &self.order
    }

    /// All `d` invariant factors, including trivial ones.
    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.invariant_factors
    }

    /// Common denominator of the residue numerators.
    pub fn denominator(&self) -> i64 {
        self.denominator
    }

    pub fn len(&self) -> u64 {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Every coset once, as `B`-coordinate numerators in `[0, denominator)`.
    pub fn residues(&self) -> Residues<'_> {
        self.residues_range(0, self.total)
    }

    /// Cosets with flat index in `start..start + count` (mixed radix over
    /// the invariant factors). Disjoint ranges give disjoint cosets.
    pub fn residues_range(&self, start: u64, count: u64) -> Residues<'_> {
        Residues {
            cursor: self.cursor(start, count),
            group: self,
        }
    }

    fn cursor(&self, start: u64, count: u64) -> Cursor {
        let end = start.saturating_add(count).min(self.total);
        let d = self.sub_basis.rows();
        let den = i128::from(self.denominator);
        let mut digits = Vec::with_capacity(self.orders.len());
        let mut current = vec![0i64; d];
        let mut rest = start;
        for (g, &o) in self.generators.iter().zip(&self.orders) {
            let c = rest % o;
            rest /= o;
            digits.push(c);
            for (x, gj) in current.iter_mut().zip(g) {
                let y = (i128::from(*x) + i128::from(c) * i128::from(*gj)) % den;
                *x = y as i64;
            }
        }
        Cursor {
            digits,
            current,
            remaining: end.saturating_sub(start),
        }
    }

    /// Odometer step. Adding generator `k` `o_k` times returns to the
    /// starting residue, so a wrapped digit needs no correction.
    fn step(&self, cursor: &mut Cursor) -> Option<Vec<i64>> {
        if cursor.remaining == 0 {
            return None;
        }
        cursor.remaining -= 1;
        let out = cursor.current.clone();
        let den = self.denominator;
        for (k, g) in self.generators.iter().enumerate() {
            for (x, gj) in cursor.current.iter_mut().zip(g) {
                *x += gj;
                if *x >= den {
                    *x -= den;
                }
            }
            cursor.digits[k] += 1;
            if cursor.digits[k] < self.orders[k] {
                break;
            }
            cursor.digits[k] = 0;
        }
        Some(out)
    }

    /// Ambient vector of a residue: `(u / denominator)·B`.
    pub fn ambient(&self, residue: &[i64]) -> Vec<Rat> {
        let coords: Vec<Rat> = residue
            .iter()
            .map(|&u| Rat::new(BigInt::from(u), BigInt::from(self.denominator)))
            .collect();
        self.sub_basis.vec_mul(&coords)
    }

    /// Representatives in ambient coordinates.
    pub fn into_reps(self) -> QuotientReps {
        QuotientReps {
            cursor: self.cursor(0, self.total),
            group: self,
        }
    }
}

struct Cursor {
    digits: Vec<u64>,
    current: Vec<i64>,
    remaining: u64,
}

pub struct Residues<'a> {
    group: &'a QuotientGroup,
    cursor: Cursor,
}

impl Iterator for Residues<'_> {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        self.group.step(&mut self.cursor)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = usize::try_from(self.cursor.remaining).unwrap_or(usize::MAX);
        (n, Some(n))
    }
}

/// Owning stream of ambient representatives; see [`quotient_reps`].
pub struct QuotientReps {
    group: QuotientGroup,
    cursor: Cursor,
}

impl Iterator for QuotientReps {
    type Item = Vec<Rat>;

    fn next(&mut self) -> Option<Vec<Rat>> {
        let residue = self.group.step(&mut self.cursor)?;
        Some(self.group.ambient(&residue))
    }
}

/// Representatives of `N / ⟨B⟩`, one per coset, with `B`-coordinates in
/// `[0, 1)^d`, in ambient coordinates. Includes the origin.
pub fn quotient_reps(lattice: &Lattice, sub_basis: &RatMat) -> Result<QuotientReps, Error> {
    Ok(QuotientGroup::new(lattice, sub_basis)?.into_reps())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;
    use std::collections::HashSet;

    fn family_lattice(l: i64) -> Lattice {
        let r = l.pow(4) + 1;
        Lattice::from_generators(4, &[vec![rat(l, r), rat(l * l, r), rat(1, r), rat(1, r)]])
            .unwrap()
    }

    #[test]
    fn from_generators_examples() {
        let z2 = Lattice::from_generators(2, &[]).unwrap();
        assert_eq!(z2.basis(), &RatMat::identity(2));
        assert_eq!(z2.index_over_standard(), &BigInt::one());

        let a1 = Lattice::from_generators(2, &[vec![rat(1, 2), rat(1, 2)]]).unwrap();
        assert_eq!(a1.index_over_standard(), &BigInt::from(2));

        assert_eq!(family_lattice(2).index_over_standard(), &BigInt::from(17));
        assert_eq!(family_lattice(3).index_over_standard(), &BigInt::from(82));
    }

    #[test]
    fn canonical_form_is_generator_independent() {
        let a = Lattice::from_generators(2, &[vec![rat(1, 2), rat(1, 2)]]).unwrap();
        let b = Lattice::from_generators(2, &[vec![rat(-1, 2), rat(3, 2)], vec![rat(1, 1), rat(0, 1)]])
            .unwrap();
        assert_eq!(a, b);
        let again = Lattice::from_generators(2, &a.basis().row_vecs()).unwrap();
        assert_eq!(a, again);
    }

    #[test]
    fn membership() {
        let z2 = Lattice::standard(2);
        assert!(z2.contains(&[rat(1, 1), rat(3, 1)]).unwrap());
        assert!(!z2.contains(&[rat(1, 2), rat(0, 1)]).unwrap());
        let l2 = family_lattice(2);
        assert!(l2
            .contains(&[rat(2, 17), rat(4, 17), rat(1, 17), rat(1, 17)])
            .unwrap());
        assert!(!l2
            .contains(&[rat(1, 17), rat(4, 17), rat(1, 17), rat(1, 17)])
            .unwrap());
        assert!(matches!(
            z2.contains(&[rat(1, 1)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn primitivize_examples() {
        let z2 = Lattice::standard(2);
        assert_eq!(
            z2.primitivize(&[rat(2, 1), rat(4, 1)]).unwrap(),
            vec![rat(1, 1), rat(2, 1)]
        );
        assert_eq!(
            z2.primitivize(&[rat(0, 1), rat(-3, 1)]).unwrap(),
            vec![rat(0, 1), rat(-1, 1)]
        );
        let a1 = Lattice::from_generators(2, &[vec![rat(1, 2), rat(1, 2)]]).unwrap();
        assert_eq!(
            a1.primitivize(&[rat(1, 1), rat(1, 1)]).unwrap(),
            vec![rat(1, 2), rat(1, 2)]
        );
        assert_eq!(
            z2.primitivize(&[rat(0, 1), rat(0, 1)]),
            Err(Error::ZeroVector)
        );
        assert_eq!(
            z2.primitivize(&[rat(1, 2), rat(0, 1)]),
            Err(Error::NotInLattice)
        );
    }

    #[test]
    fn quotient_examples() {
        let z2 = Lattice::standard(2);
        let reps: Vec<_> = quotient_reps(&z2, &RatMat::identity(2)).unwrap().collect();
        assert_eq!(reps, vec![vec![rat(0, 1), rat(0, 1)]]);

        let a1 = Lattice::from_generators(2, &[vec![rat(1, 2), rat(1, 2)]]).unwrap();
        let reps: HashSet<_> = quotient_reps(&a1, &RatMat::identity(2)).unwrap().collect();
        let expected: HashSet<_> = [vec![rat(0, 1), rat(0, 1)], vec![rat(1, 2), rat(1, 2)]]
            .into_iter()
            .collect();
        assert_eq!(reps, expected);
    }

    #[test]
    fn family_quotient_matches_modular_generation() {
        // oracle: k·g mod Z⁴ for k = 0..16, deduplicated
        let l2 = family_lattice(2);
        let g = [rat(2, 17), rat(4, 17), rat(1, 17), rat(1, 17)];
        let oracle: HashSet<Vec<Rat>> = (0..17)
            .map(|k| {
                g.iter()
                    .map(|x| crate::exactmath::frac_rat(&(x * rat(k, 1))))
                    .collect()
            })
            .collect();
        assert_eq!(oracle.len(), 17);
        let reps: Vec<_> = quotient_reps(&l2, &RatMat::identity(4)).unwrap().collect();
        assert_eq!(reps.len(), 17);
        assert_eq!(reps.into_iter().collect::<HashSet<_>>(), oracle);
    }

    #[test]
    fn quotient_errors() {
        let z2 = Lattice::standard(2);
        let half = RatMat::from_rows(vec![vec![rat(1, 2), rat(0, 1)], vec![rat(0, 1), rat(1, 1)]]);
        assert!(matches!(QuotientGroup::new(&z2, &half), Err(Error::NotSublattice(0))));
        let dep = RatMat::from_i64_rows(&[&[1, 1], &[2, 2]]);
        assert!(matches!(QuotientGroup::new(&z2, &dep), Err(Error::Degenerate)));
    }

    #[test]
    fn ranges_partition_the_group() {
        let l = Lattice::from_generators(3, &[vec![rat(1, 6), rat(1, 4), rat(1, 3)]]).unwrap();
        let b = RatMat::from_i64_rows(&[&[1, 0, 0], &[1, 2, 0], &[0, 1, 3]]);
        let q = QuotientGroup::new(&l, &b).unwrap();
        let all: Vec<_> = q.residues().collect();
        let mut pieces = Vec::new();
        let mut start = 0;
        while start < q.len() {
            pieces.extend(q.residues_range(start, 7));
            start += 7;
        }
        assert_eq!(all, pieces);
        assert_eq!(all.len() as u64, q.len());
        assert_eq!(all.iter().collect::<HashSet<_>>().len(), all.len());
    }
}
