use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rat::{rat_int, Rat};
use crate::Error;

macro_rules! dense_matrix {
    ($name:ident, $elem:ty) => {
        #[derive(Clone, PartialEq, Eq, Hash)]
        pub struct $name {
            rows: usize,
            cols: usize,
            data: Vec<$elem>,
        }

        impl $name {
            pub fn new(rows: usize, cols: usize, data: Vec<$elem>) -> Self {
                assert_eq!(data.len(), rows * cols, "matrix data length mismatch");
                Self { rows, cols, data }
            }

            pub fn zeros(rows: usize, cols: usize) -> Self {
                Self::new(rows, cols, vec![<$elem>::zero(); rows * cols])
            }

            pub fn identity(n: usize) -> Self {
                let mut m = Self::zeros(n, n);
                for i in 0..n {
                    m[(i, i)] = <$elem>::one();
                }
                m
            }

            /// Builds a matrix from rows of equal length. An empty row list
            /// gives a `0 x cols` matrix only through [`Self::zeros`].
            pub fn from_rows(rows: Vec<Vec<$elem>>) -> Self {
                let cols = rows.first().map_or(0, Vec::len);
                assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
                let n = rows.len();
                Self::new(n, cols, rows.into_iter().flatten().collect())
            }

            pub fn rows(&self) -> usize {
                self.rows
            }

            pub fn cols(&self) -> usize {
                self.cols
            }

            pub fn is_square(&self) -> bool {
                self.rows == self.cols
            }

            pub fn row(&self, i: usize) -> &[$elem] {
                &self.data[i * self.cols..(i + 1) * self.cols]
            }

            pub fn row_vecs(&self) -> Vec<Vec<$elem>> {
                (0..self.rows).map(|i| self.row(i).to_vec()).collect()
            }

            pub fn column(&self, j: usize) -> Vec<$elem> {
                (0..self.rows).map(|i| self[(i, j)].clone()).collect()
            }

            pub fn transpose(&self) -> Self {
                let mut t = Self::zeros(self.cols, self.rows);
                for i in 0..self.rows {
                    for j in 0..self.cols {
                        t[(j, i)] = self[(i, j)].clone();
                    }
                }
                t
            }

            pub fn mul(&self, other: &Self) -> Self {
                assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
                let mut out = Self::zeros(self.rows, other.cols);
                for i in 0..self.rows {
                    for k in 0..self.cols {
                        let a = &self[(i, k)];
                        if a.is_zero() {
                            continue;
                        }
                        for j in 0..other.cols {
                            out[(i, j)] += a * &other[(k, j)];
                        }
                    }
                }
                out
            }

            /// Row vector times matrix.
            pub fn vec_mul(&self, v: &[$elem]) -> Vec<$elem> {
                assert_eq!(v.len(), self.rows, "vector length mismatch");
                let mut out = vec![<$elem>::zero(); self.cols];
                for (i, a) in v.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    for (j, o) in out.iter_mut().enumerate() {
                        *o += a * &self[(i, j)];
                    }
                }
                out
            }

            pub fn swap_rows(&mut self, a: usize, b: usize) {
                if a == b {
                    return;
                }
                for j in 0..self.cols {
                    self.data.swap(a * self.cols + j, b * self.cols + j);
                }
            }

            pub fn swap_cols(&mut self, a: usize, b: usize) {
                if a == b {
                    return;
                }
                for i in 0..self.rows {
                    self.data.swap(i * self.cols + a, i * self.cols + b);
                }
            }

            /// `row[dst] += factor * row[src]`
            pub fn add_row_multiple(&mut self, dst: usize, src: usize, factor: &$elem) {
                if factor.is_zero() {
                    return;
                }
                for j in 0..self.cols {
                    let v = factor * &self[(src, j)];
                    self[(dst, j)] += v;
                }
            }

            /// `col[dst] += factor * col[src]`
            pub fn add_col_multiple(&mut self, dst: usize, src: usize, factor: &$elem) {
                if factor.is_zero() {
                    return;
                }
                for i in 0..self.rows {
                    let v = factor * &self[(i, src)];
                    self[(i, dst)] += v;
                }
            }

            pub fn negate_row(&mut self, i: usize) {
                for j in 0..self.cols {
                    let v = -std::mem::take(&mut self[(i, j)]);
                    self[(i, j)] = v;
                }
            }

            pub fn negate_col(&mut self, j: usize) {
                for i in 0..self.rows {
                    let v = -std::mem::take(&mut self[(i, j)]);
                    self[(i, j)] = v;
                }
            }
        }

        impl Index<(usize, usize)> for $name {
            type Output = $elem;
            fn index(&self, (i, j): (usize, usize)) -> &$elem {
                debug_assert!(i < self.rows && j < self.cols);
                &self.data[i * self.cols + j]
            }
        }

        impl IndexMut<(usize, usize)> for $name {
            fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut $elem {
                debug_assert!(i < self.rows && j < self.cols);
                &mut self.data[i * self.cols + j]
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "[")?;
                for i in 0..self.rows {
                    if i > 0 {
                        write!(f, "; ")?;
                    }
                    for (j, x) in self.row(i).iter().enumerate() {
                        if j > 0 {
                            write!(f, " ")?;
                        }
                        write!(f, "{x}")?;
                    }
                }
                write!(f, "]")
            }
        }
    };
}

dense_matrix!(IntMat, BigInt);
dense_matrix!(RatMat, Rat);

impl IntMat {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
        )
    }

    pub fn to_rat(&self) -> RatMat {
        RatMat::new(
            self.rows,
            self.cols,
            self.data.iter().cloned().map(rat_int).collect(),
        )
    }

    /// Determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(p) => {
                        a.swap_rows(k, p);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(k, k)] * &a[(i, j)] - &a[(i, k)] * &a[(k, j)];
                    // exact by Sylvester's identity
                    a[(i, j)] = v / &prev;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        sign * a[(n - 1, n - 1)].clone()
    }
}

impl RatMat {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        IntMat::from_i64_rows(rows).to_rat()
    }

    /// Lowest common denominator of all entries.
    pub fn common_denominator(&self) -> BigInt {
        self.data
            .iter()
            .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
    }

    /// Integer matrix `scale * self`; panics if the result is not integral.
    pub fn scaled_to_int(&self, scale: &BigInt) -> IntMat {
        let data = self
            .data
            .iter()
            .map(|x| {
                let y = x * rat_int(scale.clone());
                assert!(y.is_integer(), "scaled entry is not integral");
                y.to_integer()
            })
            .collect();
        IntMat::new(self.rows, self.cols, data)
    }

    /// Integer view of the matrix if every entry is integral.
    pub fn to_int(&self) -> Option<IntMat> {
        if !self.data.iter().all(Rat::is_integer) {
            return None;
        }
        Some(IntMat::new(
            self.rows,
            self.cols,
            self.data.iter().map(Rat::to_integer).collect(),
        ))
    }

    /// Determinant: rows are cleared of denominators and the integer
    /// determinant is taken with Bareiss elimination.
    pub fn det(&self) -> Rat {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut scale = BigInt::one();
        let mut rows = Vec::with_capacity(self.rows);
        for i in 0..self.rows {
            let d = self
                .row(i)
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            rows.push(
                self.row(i)
                    .iter()
                    .map(|x| (x * rat_int(d.clone())).to_integer())
                    .collect(),
            );
            scale *= d;
        }
        Rat::new(IntMat::from_rows(rows).det(), scale)
    }

    pub fn rank(&self) -> usize {
        let mut a = self.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&i| !a[(i, col)].is_zero()) else {
                continue;
            };
            a.swap_rows(rank, p);
            for i in rank + 1..self.rows {
                if a[(i, col)].is_zero() {
                    continue;
                }
                let f = -(&a[(i, col)] / &a[(rank, col)]);
                a.add_row_multiple(i, rank, &f);
            }
            rank += 1;
        }
        rank
    }

    /// Solves `A·x = b` exactly for square nonsingular `A`.
    pub fn solve_exact(&self, b: &[Rat]) -> Result<Vec<Rat>, Error> {
        if !self.is_square() || b.len() != self.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: b.len(),
            });
        }
        let n = self.rows;
        let mut aug = RatMat::zeros(n, n + 1);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n)] = b[i].clone();
        }
        gauss_jordan(&mut aug, n)?;
        Ok((0..n).map(|i| aug[(i, n)].clone()).collect())
    }

    pub fn inverse(&self) -> Result<RatMat, Error> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = RatMat::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Rat::one();
        }
        gauss_jordan(&mut aug, n)?;
        let mut inv = RatMat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = std::mem::take(&mut aug[(i, n + j)]);
            }
        }
        Ok(inv)
    }

    /// Expresses `v` as a combination of the rows: returns `x` with
    /// `x·self = v`, or `None` when `v` is not in the row span. Rows must be
    /// linearly independent.
    pub fn row_coordinates(&self, v: &[Rat]) -> Result<Option<Vec<Rat>>, Error> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        if self.is_square() {
            return self.transpose().solve_exact(v).map(Some);
        }
        // Reduce [Aᵀ | v] and read off a consistent solution.
        let k = self.rows;
        let d = self.cols;
        let mut aug = RatMat::zeros(d, k + 1);
        for i in 0..k {
            for j in 0..d {
                aug[(j, i)] = self[(i, j)].clone();
            }
        }
        for (j, x) in v.iter().enumerate() {
            aug[(j, k)] = x.clone();
        }
        let mut pivot_row = 0;
        for col in 0..k {
            let Some(p) = (pivot_row..d).find(|&i| !aug[(i, col)].is_zero()) else {
                return Err(Error::SingularMatrix);
            };
            aug.swap_rows(pivot_row, p);
            let inv = Rat::one() / &aug[(pivot_row, col)];
            for j in 0..=k {
                let x = &aug[(pivot_row, j)] * &inv;
                aug[(pivot_row, j)] = x;
            }
            for i in 0..d {
                if i != pivot_row && !aug[(i, col)].is_zero() {
                    let f = -aug[(i, col)].clone();
                    aug.add_row_multiple(i, pivot_row, &f);
                }
            }
            pivot_row += 1;
        }
        if (k..d).any(|i| !aug[(i, k)].is_zero()) {
            return Ok(None);
        }
        Ok(Some((0..k).map(|i| aug[(i, k)].clone()).collect()))
    }
}

fn gauss_jordan(aug: &mut RatMat, n: usize) -> Result<(), Error> {
    for col in 0..n {
        let p = (col..n)
            .find(|&i| !aug[(i, col)].is_zero())
            .ok_or(Error::SingularMatrix)?;
        aug.swap_rows(col, p);
        let inv = Rat::one() / &aug[(col, col)];
        for j in 0..aug.cols() {
            let x = &aug[(col, j)] * &inv;
            aug[(col, j)] = x;
        }
        for i in 0..n {
            if i != col && !aug[(i, col)].is_zero() {
                let f = -aug[(i, col)].clone();
                aug.add_row_multiple(i, col, &f);
            }
        }
    }
    Ok(())
}

pub(crate) fn is_zero_vec(v: &[Rat]) -> bool {
    v.iter().all(Zero::is_zero)
}

pub fn gcd_all(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x)).abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        let m = IntMat::from_i64_rows(&[&[2, -1, 3], &[4, 0, 1], &[-2, 5, 7]]);
        // 2(0-5) + 1(28+2) + 3(20-0) = -10 + 30 + 60
        assert_eq!(m.det(), BigInt::from(80));
        let singular = IntMat::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert_eq!(singular.det(), BigInt::zero());
        let pivot_swap = IntMat::from_i64_rows(&[&[0, 1], &[1, 0]]);
        assert_eq!(pivot_swap.det(), BigInt::from(-1));
    }

    #[test]
    fn rational_det_and_inverse() {
        let m = RatMat::from_rows(vec![
            vec![rat(1, 2), rat(1, 3)],
            vec![rat(0, 1), rat(2, 5)],
        ]);
        assert_eq!(m.det(), rat(1, 5));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RatMat::identity(2));
    }

    #[test]
    fn solve_examples() {
        let id = RatMat::identity(2);
        assert_eq!(
            id.solve_exact(&[rat(1, 3), rat(2, 5)]).unwrap(),
            vec![rat(1, 3), rat(2, 5)]
        );
        let two = RatMat::from_i64_rows(&[&[2, 0], &[0, 2]]);
        assert_eq!(
            two.solve_exact(&[rat(1, 1), rat(1, 1)]).unwrap(),
            vec![rat(1, 2), rat(1, 2)]
        );
        let singular = RatMat::from_i64_rows(&[&[1, 2], &[2, 4]]);
        assert!(matches!(
            singular.solve_exact(&[rat(1, 1), rat(0, 1)]),
            Err(Error::SingularMatrix)
        ));
    }

    #[test]
    fn row_coordinates_for_lower_rank() {
        let m = RatMat::from_i64_rows(&[&[1, 0, 0], &[0, 1, 1]]);
        assert_eq!(
            m.row_coordinates(&[rat(2, 1), rat(3, 1), rat(3, 1)]).unwrap(),
            Some(vec![rat(2, 1), rat(3, 1)])
        );
        assert_eq!(
            m.row_coordinates(&[rat(2, 1), rat(3, 1), rat(4, 1)]).unwrap(),
            None
        );
    }

    #[test]
    fn rank_counts_independent_rows() {
        let m = RatMat::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(m.rank(), 2);
    }
}
