use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntMat;

/// Row-style Hermite normal form `H = U·M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hnf {
    pub h: IntMat,
    pub u: IntMat,
    /// Column of the pivot in each nonzero row of `h`.
    pub pivots: Vec<usize>,
}

impl Hnf {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// Smith normal form `S = U·M·V`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snf {
    pub s: IntMat,
    pub u: IntMat,
    pub v: IntMat,
}

impl Snf {
    /// Diagonal entries `s_1 | s_2 | ...` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols()))
            .map(|i| self.s[(i, i)].clone())
            .collect()
    }
}

pub fn hnf(m: &IntMat) -> Hnf {
    let rows = m.rows();
    let cols = m.cols();
    let mut h = m.clone();
    let mut u = IntMat::identity(rows);
    let mut pivots = Vec::new();
    let mut row = 0;

    for col in 0..cols {
        if row == rows {
            break;
        }
        // Euclid on the column below `row` until a single nonzero remains.
        loop {
            let smallest = (row..rows)
                .filter(|&i| !h[(i, col)].is_zero())
                .min_by(|&a, &b| h[(a, col)].abs().cmp(&h[(b, col)].abs()));
            let Some(p) = smallest else { break };
            h.swap_rows(row, p);
            u.swap_rows(row, p);
            let mut done = true;
            for i in row + 1..rows {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let q = -h[(i, col)].div_floor(&h[(row, col)]);
                h.add_row_multiple(i, row, &q);
                u.add_row_multiple(i, row, &q);
                if !h[(i, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(row, col)].is_zero() {
            continue;
        }
        if h[(row, col)].is_negative() {
            h.negate_row(row);
            u.negate_row(row);
        }
        for i in 0..row {
            let q = -h[(i, col)].div_floor(&h[(row, col)]);
            h.add_row_multiple(i, row, &q);
            u.add_row_multiple(i, row, &q);
        }
        pivots.push(col);
        row += 1;
    }
    Hnf { h, u, pivots }
}

pub fn snf(m: &IntMat) -> Snf {
    let rows = m.rows();
    let cols = m.cols();
    let mut s = m.clone();
    let mut u = IntMat::identity(rows);
    let mut v = IntMat::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let smallest = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !s[(i, j)].is_zero())
                .min_by(|&a, &b| s[a].abs().cmp(&s[b].abs()));
            let Some((pi, pj)) = smallest else {
                return Snf { s, u, v };
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                if s[(i, t)].is_zero() {
                    continue;
                }
                let q = -s[(i, t)].div_floor(&s[(t, t)]);
                s.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                clean &= s[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if s[(t, j)].is_zero() {
                    continue;
                }
                let q = -s[(t, j)].div_floor(&s[(t, t)]);
                s.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                clean &= s[(t, j)].is_zero();
            }
            if !clean {
                continue;
            }
            // Divisibility: pull an offending row into row t and repeat.
            let offending = (t + 1..rows).find(|&i| {
                (t + 1..cols).any(|j| !s[(i, j)].is_multiple_of(&s[(t, t)]))
            });
            match offending {
                Some(i) => {
                    let one = BigInt::from(1);
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    Snf { s, u, v }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn is_hnf(h: &IntMat, pivots: &[usize]) -> bool {
        let mut last: Option<usize> = None;
        for (r, &p) in pivots.iter().enumerate() {
            if last.is_some_and(|l| p <= l) {
                return false;
            }
            if (0..p).any(|j| !h[(r, j)].is_zero()) || !h[(r, p)].is_positive() {
                return false;
            }
            for above in 0..r {
                let x = &h[(above, p)];
                if x.is_negative() || x >= &h[(r, p)] {
                    return false;
                }
            }
            last = Some(p);
        }
        (pivots.len()..h.rows()).all(|r| h.row(r).iter().all(Zero::is_zero))
    }

    fn arb_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = IntMat> {
        (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-9i64..=9, r * c).prop_map(move |data| {
                IntMat::new(r, c, data.into_iter().map(BigInt::from).collect())
            })
        })
    }

    #[test]
    fn hnf_examples() {
        let id = IntMat::identity(3);
        let r = hnf(&id);
        assert_eq!(r.h, id);
        assert_eq!(r.u, id);

        let diag = IntMat::from_i64_rows(&[&[2, 0], &[0, 2]]);
        assert_eq!(hnf(&diag).h, diag);

        // [[1,2],[3,4]] has |det| = 2; its HNF is [[1,0],[0,2]].
        let m = IntMat::from_i64_rows(&[&[1, 2], &[3, 4]]);
        let r = hnf(&m);
        assert!(is_hnf(&r.h, &r.pivots));
        assert_eq!(r.h.det().abs(), BigInt::from(2));
        assert_eq!(r.h, IntMat::from_i64_rows(&[&[1, 0], &[0, 2]]));
        assert_eq!(r.u.mul(&m), r.h);
    }

    #[test]
    fn snf_examples() {
        let m = IntMat::from_i64_rows(&[&[2, 0], &[0, 3]]);
        assert_eq!(snf(&m).diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
        let z = IntMat::zeros(2, 3);
        assert_eq!(snf(&z).s, z);
        let id = IntMat::identity(2);
        assert_eq!(snf(&id).s, id);
    }

    /// gcd of all k×k minors, the classical invariant behind SNF.
    fn minor_gcd(m: &IntMat, k: usize) -> BigInt {
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            if k == 0 {
                return vec![vec![]];
            }
            if n < k {
                return vec![];
            }
            let mut out = subsets(n - 1, k);
            for mut s in subsets(n - 1, k - 1) {
                s.push(n - 1);
                out.push(s);
            }
            out
        }
        let mut g = BigInt::zero();
        for rs in subsets(m.rows(), k) {
            for cs in subsets(m.cols(), k) {
                let sub = IntMat::from_rows(
                    rs.iter()
                        .map(|&i| cs.iter().map(|&j| m[(i, j)].clone()).collect())
                        .collect(),
                );
                g = g.gcd(&sub.det());
            }
        }
        g
    }

    #[test]
    fn snf_matches_minor_gcd_oracle() {
        let m = IntMat::from_i64_rows(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let d = snf(&m).diagonal();
        let mut prod = BigInt::from(1);
        for (k, s) in d.iter().enumerate() {
            prod *= s;
            assert_eq!(prod, minor_gcd(&m, k + 1));
        }
        assert_eq!(d, vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]);
    }

    proptest! {
        #[test]
        fn hnf_transform_is_valid(m in arb_matrix(5, 4)) {
            let r = hnf(&m);
            prop_assert_eq!(r.u.mul(&m), r.h.clone());
            prop_assert_eq!(r.u.det().abs(), BigInt::from(1));
            prop_assert!(is_hnf(&r.h, &r.pivots));
            if m.is_square() {
                prop_assert_eq!(r.h.det().abs(), m.det().abs());
            }
        }

        #[test]
        fn snf_transform_is_valid(m in arb_matrix(4, 4)) {
            let r = snf(&m);
            prop_assert_eq!(r.u.mul(&m).mul(&r.v), r.s.clone());
            prop_assert_eq!(r.u.det().abs(), BigInt::from(1));
            prop_assert_eq!(r.v.det().abs(), BigInt::from(1));
            for i in 0..r.s.rows() {
                for j in 0..r.s.cols() {
                    if i != j {
                        prop_assert!(r.s[(i, j)].is_zero());
                    }
                }
            }
            let d = r.diagonal();
            prop_assert!(d.iter().all(|x| !x.is_negative()));
            for w in d.windows(2) {
                prop_assert!(w[1].is_multiple_of(&w[0]) || w[0].is_zero() && w[1].is_zero());
            }
            if m.is_square() && !m.det().is_zero() {
                let prod: BigInt = d.iter().product();
                prop_assert_eq!(prod, m.det().abs());
            }
        }
    }
}
