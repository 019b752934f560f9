//! Simplicial fans over a lattice and the piecewise-linear function `ℓ`
//! that equals 1 on every primitive ray generator.

use num_traits::{One, Signed, Zero};

use crate::exactmath::{is_zero_vec, Rat, RatMat};
use crate::lattice::Lattice;
use crate::Error;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialCone {
    ray_indices: Vec<usize>,
    generators: RatMat,
    /// `generators⁻¹` for full-dimensional cones.
    inverse: Option<RatMat>,
}

impl SimplicialCone {
    fn new(ray_indices: Vec<usize>, generators: RatMat) -> Result<Self, String> {
        if generators.rows() > generators.cols() {
            return Err(format!("{} rays in dimension {}", generators.rows(), generators.cols()));
        }
        if generators.rank() != generators.rows() {
            return Err("ray generators are linearly dependent".into());
        }
        let inverse = if generators.is_square() {
            Some(generators.inverse().expect("independent square generators"))
        } else {
            None
        };
        Ok(Self {
            ray_indices,
            generators,
            inverse,
        })
    }

    pub fn ray_indices(&self) -> &[usize] {
        &self.ray_indices
    }

    /// Rows are the primitive ray generators, in `ray_indices` order.
    pub fn generators(&self) -> &RatMat {
        &self.generators
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.inverse.is_some()
    }

    /// Coefficients `x` with `Σ x_i·P_i = v`, or `None` when `v` is outside
    /// the linear span of the cone (lower-dimensional cones only). The point
    /// lies in the cone iff every coefficient is nonnegative.
    pub fn barycentric(&self, v: &[Rat]) -> Result<Option<Vec<Rat>>, Error> {
        if v.len() != self.generators.cols() {
            return Err(Error::DimensionMismatch {
                expected: self.generators.cols(),
                found: v.len(),
            });
        }
        match &self.inverse {
            Some(inv) => Ok(Some(inv.vec_mul(v))),
            None => self.generators.row_coordinates(v),
        }
    }

    pub fn contains(&self, v: &[Rat]) -> Result<bool, Error> {
        Ok(self
            .barycentric(v)?
            .is_some_and(|x| x.iter().all(|c| !c.is_negative())))
    }

    /// Coefficients of the linear functional `ℓ_σ` with `ℓ_σ(P_i) = 1`, in
    /// standard coordinates. Full-dimensional cones only.
    pub fn log_discrepancy_functional(&self) -> Option<Vec<Rat>> {
        let inv = self.inverse.as_ref()?;
        Some((0..inv.rows()).map(|i| inv.row(i).iter().sum()).collect())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    dim: usize,
    rays: Vec<Vec<Rat>>,
    cones: Vec<SimplicialCone>,
}

impl Fan {
    /// Builds a simplicial fan. Cone coherence (cones meeting in common
    /// faces) is not checked.
    pub fn new(dim: usize, rays: Vec<Vec<Rat>>, cones: Vec<Vec<usize>>) -> Result<Self, Error> {
        for (i, r) in rays.iter().enumerate() {
            if r.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: r.len(),
                });
            }
            if is_zero_vec(r) {
                return Err(Error::InvalidFan(format!("ray {i} is zero")));
            }
            if rays[..i].contains(r) {
                return Err(Error::InvalidFan(format!("ray {i} is a duplicate")));
            }
        }
        let mut used = vec![false; rays.len()];
        let mut built = Vec::with_capacity(cones.len());
        for (c, idx) in cones.into_iter().enumerate() {
            for (k, &i) in idx.iter().enumerate() {
                if i >= rays.len() {
                    return Err(Error::InvalidFan(format!("cone {c} refers to missing ray {i}")));
                }
                if idx[..k].contains(&i) {
                    return Err(Error::InvalidFan(format!("cone {c} repeats ray {i}")));
                }
                used[i] = true;
            }
            let generators = if idx.is_empty() {
                RatMat::zeros(0, dim)
            } else {
                RatMat::from_rows(idx.iter().map(|&i| rays[i].clone()).collect())
            };
            built.push(SimplicialCone::new(idx, generators).map_err(|e| Error::NonSimplicial(c, e))?);
        }
        if let Some(i) = used.iter().position(|u| !u) {
            return Err(Error::InvalidFan(format!("ray {i} is in no cone")));
        }
        Ok(Self {
            dim,
            rays,
            cones: built,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rays(&self) -> &[Vec<Rat>] {
        &self.rays
    }

    pub fn cones(&self) -> &[SimplicialCone] {
        &self.cones
    }

    /// Whether this is the boundary fan of a simplex: `d+1` rays with every
    /// `d`-subset a cone.
    pub fn is_simplex_shaped(&self) -> bool {
        let d = self.dim;
        if self.rays.len() != d + 1 || self.cones.len() != d + 1 {
            return false;
        }
        let mut omitted: Vec<usize> = self
            .cones
            .iter()
            .filter(|c| c.ray_indices.len() == d)
            .filter_map(|c| (0..=d).find(|i| !c.ray_indices.contains(i)))
            .collect();
        omitted.sort_unstable();
        omitted == (0..=d).collect::<Vec<_>>()
    }

    /// For a simplex-shaped fan: whether 0 lies strictly inside the convex
    /// hull of the rays, i.e. the fan covers the whole space.
    pub fn is_complete(&self) -> Result<bool, Error> {
        if !self.is_simplex_shaped() {
            return Err(Error::WrongShape);
        }
        Ok(barycentric_of_origin(&self.rays).is_some_and(|y| y.iter().all(Signed::is_positive)))
    }
}

/// Affine coordinates `y` with `Σ y_i·v_i = 0` and `Σ y_i = 1` for `d+1`
/// points in dimension `d`, or `None` if the points are affinely dependent.
pub fn barycentric_of_origin(vertices: &[Vec<Rat>]) -> Option<Vec<Rat>> {
    let n = vertices.len();
    let d = vertices.first()?.len();
    if n != d + 1 {
        return None;
    }
    let mut a = RatMat::zeros(n, n);
    for (i, v) in vertices.iter().enumerate() {
        for (j, x) in v.iter().enumerate() {
            a[(j, i)] = x.clone();
        }
        a[(d, i)] = Rat::one();
    }
    let mut b = vec![Rat::zero(); n];
    b[d] = Rat::one();
    a.solve_exact(&b).ok()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LogDiscrepancy {
    Value(Rat),
    /// The point is outside the support of the fan.
    Outside,
}

impl LogDiscrepancy {
    pub fn value(&self) -> Option<&Rat> {
        match self {
            Self::Value(v) => Some(v),
            Self::Outside => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToricVariety {
    lattice: Lattice,
    fan: Fan,
}

impl ToricVariety {
    /// Checks that every ray is a primitive vector of the lattice.
    pub fn new(lattice: Lattice, fan: Fan) -> Result<Self, Error> {
        if lattice.dim() != fan.dim() {
            return Err(Error::DimensionMismatch {
                expected: lattice.dim(),
                found: fan.dim(),
            });
        }
        for (i, r) in fan.rays().iter().enumerate() {
            match lattice.is_primitive(r) {
                Ok(true) => {}
                Ok(false) => {
                    return Err(Error::InvalidFan(format!("ray {i} is not primitive in the lattice")))
                }
                Err(Error::NotInLattice) => {
                    return Err(Error::InvalidFan(format!("ray {i} is not in the lattice")))
                }
                Err(e) => return Err(e),
            }
        }
        Ok(Self { lattice, fan })
    }

    /// Pairs a lattice and a fan without the primitivity check. Used to
    /// represent malformed inputs that a validator should reject.
    pub fn new_unchecked(lattice: Lattice, fan: Fan) -> Self {
        assert_eq!(lattice.dim(), fan.dim(), "lattice and fan dimensions differ");
        Self { lattice, fan }
    }

    /// Affine toric variety of the cone spanned by the primitive vectors on
    /// the given rays.
    pub fn affine(lattice: Lattice, rays: &[Vec<Rat>]) -> Result<Self, Error> {
        let prim = rays
            .iter()
            .map(|r| lattice.primitivize(r))
            .collect::<Result<Vec<_>, _>>()?;
        let fan = Fan::new(lattice.dim(), prim, vec![(0..rays.len()).collect()])?;
        Self::new(lattice, fan)
    }

    pub fn dim(&self) -> usize {
        self.lattice.dim()
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn fan(&self) -> &Fan {
        &self.fan
    }

    /// Lowest-index maximal cone containing `v`.
    pub fn find_containing_cone(&self, v: &[Rat]) -> Result<Option<usize>, Error> {
        for (i, c) in self.fan.cones().iter().enumerate() {
            if c.contains(v)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// `ℓ(v)`, evaluated in the lowest-index cone containing `v`.
    pub fn log_discrepancy(&self, v: &[Rat]) -> Result<LogDiscrepancy, Error> {
        if is_zero_vec(v) {
            return Err(Error::ZeroVector);
        }
        if !self.lattice.contains(v)? {
            return Err(Error::NotInLattice);
        }
        for c in self.fan.cones() {
            if let Some(x) = c.barycentric(v)? {
                if x.iter().all(|c| !c.is_negative()) {
                    return Ok(LogDiscrepancy::Value(x.into_iter().sum()));
                }
            }
        }
        Ok(LogDiscrepancy::Outside)
    }

    /// Image under `v ↦ v·m` for an integer matrix with determinant ±1.
    pub fn transform(&self, m: &crate::exactmath::IntMat) -> Result<Self, Error> {
        let lattice = self.lattice.transform(m)?;
        let mr = m.to_rat();
        let rays = self.fan.rays().iter().map(|r| mr.vec_mul(r)).collect();
        let cones = self.fan.cones().iter().map(|c| c.ray_indices.clone()).collect();
        Self::new(lattice, Fan::new(self.dim(), rays, cones)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn v(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat(x, 1)).collect()
    }

    fn smooth_plane() -> ToricVariety {
        ToricVariety::affine(Lattice::standard(2), &[v(&[1, 0]), v(&[0, 1])]).unwrap()
    }

    #[test]
    fn barycentric_examples() {
        let plane = smooth_plane();
        let cone = &plane.fan().cones()[0];
        assert_eq!(cone.barycentric(&v(&[3, 5])).unwrap(), Some(v(&[3, 5])));
        assert_eq!(cone.barycentric(&v(&[-1, 0])).unwrap(), Some(v(&[-1, 0])));
        assert!(!cone.contains(&v(&[-1, 0])).unwrap());

        // ⟨(1,0), (-1,1)⟩ with l = 2: (0,1) = 1·(1,0) + 1·(-1,1)
        let fan = Fan::new(2, vec![v(&[1, 0]), v(&[-1, 1])], vec![vec![0, 1]]).unwrap();
        let x = fan.cones()[0].barycentric(&v(&[0, 1])).unwrap().unwrap();
        assert_eq!(x, v(&[1, 1]));
        assert_eq!(fan.cones()[0].generators().vec_mul(&x), v(&[0, 1]));

        assert!(matches!(
            cone.barycentric(&v(&[1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn log_discrepancy_examples() {
        let plane = smooth_plane();
        assert_eq!(
            plane.log_discrepancy(&v(&[1, 0])).unwrap(),
            LogDiscrepancy::Value(rat(1, 1))
        );
        assert_eq!(plane.log_discrepancy(&v(&[-1, 0])).unwrap(), LogDiscrepancy::Outside);
        assert_eq!(plane.log_discrepancy(&v(&[0, 0])), Err(Error::ZeroVector));

        let lat = Lattice::from_generators(2, &[vec![rat(1, 17), rat(1, 17)]]).unwrap();
        let y = ToricVariety::affine(lat, &[v(&[1, 0]), v(&[0, 1])]).unwrap();
        assert_eq!(
            y.log_discrepancy(&[rat(1, 17), rat(1, 17)]).unwrap(),
            LogDiscrepancy::Value(rat(2, 17))
        );
        assert_eq!(
            y.log_discrepancy(&[rat(1, 17), rat(0, 1)]),
            Err(Error::NotInLattice)
        );
    }

    #[test]
    fn containing_cone_lookup() {
        let p1 = Fan::new(1, vec![v(&[1]), v(&[-1])], vec![vec![0], vec![1]]).unwrap();
        let p1 = ToricVariety::new(Lattice::standard(1), p1).unwrap();
        assert_eq!(p1.find_containing_cone(&v(&[-3])).unwrap(), Some(1));
        assert_eq!(p1.find_containing_cone(&v(&[0])).unwrap(), Some(0));

        // fiber triangle of the l = 2 family; cone i omits ray i
        let tri = Fan::new(
            2,
            vec![v(&[1, 0]), v(&[-1, 1]), v(&[-1, -1])],
            vec![vec![1, 2], vec![0, 2], vec![0, 1]],
        )
        .unwrap();
        let z = ToricVariety::new(Lattice::standard(2), tri).unwrap();
        // (-1,-1) is the ray P_2 itself: in cones 0 and 1, lowest is 0
        assert_eq!(z.find_containing_cone(&v(&[-1, -1])).unwrap(), Some(0));
        // (1,-1) = 2·P_0 + 1·P_2: only the lower cone ⟨P_0, P_2⟩
        assert_eq!(z.find_containing_cone(&v(&[1, -1])).unwrap(), Some(1));
        assert_eq!(z.find_containing_cone(&v(&[1, 1])).unwrap(), Some(2));
    }

    #[test]
    fn completeness() {
        let p1 = Fan::new(1, vec![v(&[1]), v(&[-1])], vec![vec![0], vec![1]]).unwrap();
        assert!(p1.is_complete().unwrap());
        let p2 = Fan::new(
            2,
            vec![v(&[1, 0]), v(&[0, 1]), v(&[-1, -1])],
            vec![vec![1, 2], vec![0, 2], vec![0, 1]],
        )
        .unwrap();
        assert!(p2.is_complete().unwrap());
        let miss = Fan::new(
            2,
            vec![v(&[1, 0]), v(&[0, 1]), v(&[1, 1])],
            vec![vec![1, 2], vec![0, 2], vec![0, 1]],
        )
        .unwrap();
        assert!(!miss.is_complete().unwrap());
        let affine = smooth_plane();
        assert_eq!(affine.fan().is_complete(), Err(Error::WrongShape));
    }

    #[test]
    fn fan_rejects_bad_input() {
        assert!(matches!(
            Fan::new(2, vec![v(&[1, 0]), v(&[2, 0])], vec![vec![0, 1]]),
            Err(Error::NonSimplicial(0, _))
        ));
        assert!(matches!(
            Fan::new(2, vec![v(&[1, 0]), v(&[0, 1])], vec![vec![0]]),
            Err(Error::InvalidFan(_))
        ));
        assert!(matches!(
            Fan::new(2, vec![v(&[1, 0]), v(&[1, 0])], vec![vec![0, 1]]),
            Err(Error::InvalidFan(_))
        ));
        let fan = Fan::new(2, vec![v(&[2, 0]), v(&[0, 1])], vec![vec![0, 1]]).unwrap();
        assert!(matches!(
            ToricVariety::new(Lattice::standard(2), fan),
            Err(Error::InvalidFan(_))
        ));
    }

    #[test]
    fn functional_is_one_on_rays() {
        let fan = Fan::new(2, vec![v(&[-1, -1]), v(&[0, 1])], vec![vec![0, 1]]).unwrap();
        let f = fan.cones()[0].log_discrepancy_functional().unwrap();
        assert_eq!(f, v(&[-2, 1]));
    }
}
