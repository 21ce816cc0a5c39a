use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense integer matrix over arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows_i64(rows: usize, cols: usize, values: &[Vec<i64>]) -> Self {
        assert_eq!(values.len(), rows);
        let mut m = IntegerMatrix::zeros(rows, cols);
        for (i, row) in values.iter().enumerate() {
            assert_eq!(row.len(), cols);
            for (j, &v) in row.iter().enumerate() {
                m.data[i * cols + j] = BigInt::from(v);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[target] -= q * row[source]
    fn sub_row(&mut self, target: usize, source: usize, q: &BigInt) {
        for j in 0..self.cols {
            let s = &self.data[source * self.cols + j] * q;
            self.data[target * self.cols + j] -= s;
        }
    }

    fn sub_col(&mut self, target: usize, source: usize, q: &BigInt) {
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + source] * q;
            self.data[i * self.cols + target] -= s;
        }
    }

    /// Whether `v` is an integer combination of the rows.
    pub fn row_lattice_contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.cols);
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next_row = 0;
        for col in 0..m.cols {
            if next_row == m.rows {
                break;
            }
            loop {
                let best = (next_row..m.rows)
                    .filter(|&i| !m.get(i, col).is_zero())
                    .min_by_key(|&i| m.get(i, col).abs());
                let Some(p) = best else { break };
                m.swap_rows(next_row, p);
                let pivot = m.get(next_row, col).clone();
                let mut clean = true;
                for i in next_row + 1..m.rows {
                    let q = m.get(i, col).div_floor(&pivot);
                    if !q.is_zero() {
                        m.sub_row(i, next_row, &q);
                    }
                    if !m.get(i, col).is_zero() {
                        clean = false;
                    }
                }
                if clean {
                    pivots.push((next_row, col));
                    next_row += 1;
                    break;
                }
            }
        }
        let mut v = v.to_vec();
        for (row, col) in pivots {
            let pivot = m.get(row, col);
            let (q, r) = v[col].div_rem(pivot);
            if !r.is_zero() {
                return false;
            }
            for (j, x) in v.iter_mut().enumerate() {
                *x -= m.get(row, j) * &q;
            }
        }
        v.iter().all(Zero::is_zero)
    }
}

impl fmt::Display for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}

/// Invariant factors `d₁ | d₂ | …` (all positive, unit factors included) of an
/// integer matrix, plus the free rank of the cokernel `ℤ^cols / rowspace`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub invariant_factors: Vec<BigInt>,
    pub free_rank: usize,
}

impl SmithForm {
    /// Factors greater than one: the torsion part of the cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }

    /// Trivial cokernel.
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.iter().all(One::is_one)
    }
}

/// Smith normal form by elementary row and column operations, always pivoting
/// on a nonzero entry of least absolute value.
pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let mut a = m.clone();
    let limit = a.rows.min(a.cols);
    let mut factors = Vec::new();
    for t in 0..limit {
        let Some((pi, pj)) = min_entry(&a, t) else {
            break;
        };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        loop {
            let pivot = a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..a.rows {
                let q = a.get(i, t) / &pivot;
                if !q.is_zero() {
                    a.sub_row(i, t, &q);
                }
                clean &= a.get(i, t).is_zero();
            }
            for j in t + 1..a.cols {
                let q = a.get(t, j) / &pivot;
                if !q.is_zero() {
                    a.sub_col(j, t, &q);
                }
                clean &= a.get(t, j).is_zero();
            }
            if !clean {
                // A remainder smaller than the pivot survived in row or column t.
                let col_best = (t + 1..a.rows)
                    .filter(|&i| !a.get(i, t).is_zero())
                    .min_by_key(|&i| a.get(i, t).abs());
                if let Some(i) = col_best {
                    a.swap_rows(t, i);
                } else {
                    let j = (t + 1..a.cols)
                        .filter(|&j| !a.get(t, j).is_zero())
                        .min_by_key(|&j| a.get(t, j).abs())
                        .expect("nonzero remainder in row");
                    a.swap_cols(t, j);
                }
                continue;
            }
            let bad = (t + 1..a.rows)
                .flat_map(|i| (t + 1..a.cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a.get(i, j).is_multiple_of(&pivot));
            match bad {
                Some((i, _)) => {
                    // row t += row i, then clear again
                    a.sub_row(t, i, &BigInt::from(-1));
                }
                None => break,
            }
        }
        factors.push(a.get(t, t).abs());
    }
    let free_rank = m.cols - factors.len();
    SmithForm {
        invariant_factors: factors,
        free_rank,
    }
}

fn min_entry(a: &IntegerMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows {
        for j in t..a.cols {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| v.abs() < a.get(bi, bj).abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[&[i64]]) -> IntegerMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let v: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        IntegerMatrix::from_rows_i64(rows.len(), cols, &v)
    }

    fn factors(s: &SmithForm) -> Vec<i64> {
        s.invariant_factors
            .iter()
            .map(|d| d.try_into().unwrap())
            .collect()
    }

    /// Determinantal divisors: gcd of all k×k minors, by cofactor expansion.
    fn det(a: &[Vec<i64>]) -> i64 {
        let n = a.len();
        if n == 0 {
            return 1;
        }
        (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = a[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                    .collect();
                let s = if j % 2 == 0 { 1 } else { -1 };
                s * a[0][j] * det(&minor)
            })
            .sum()
    }

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

    fn determinantal_divisors(a: &[Vec<i64>], cols: usize) -> Vec<i64> {
        let rows = a.len();
        let mut out = Vec::new();
        for k in 1..=rows.min(cols) {
            let mut g = 0i64;
            for rs in subsets(rows, k) {
                for cs in subsets(cols, k) {
                    let sub: Vec<Vec<i64>> = rs.iter().map(|&i| cs.iter().map(|&j| a[i][j]).collect()).collect();
                    g = g.gcd(&det(&sub));
                }
            }
            if g == 0 {
                break;
            }
            out.push(g);
        }
        out
    }

    #[test]
    fn diagonal_two_three() {
        assert_eq!(factors(&smith_normal_form(&m(&[&[2, 0], &[0, 3]]))), vec![1, 6]);
    }

    #[test]
    fn zero_matrix() {
        let s = smith_normal_form(&m(&[&[0, 0], &[0, 0]]));
        assert!(s.invariant_factors.is_empty());
        assert_eq!(s.free_rank, 2);
    }

    #[test]
    fn icosahedral_relation_matrix() {
        let rows: &[&[i64]] = &[&[2, 0], &[0, 3], &[5, 5]];
        let oracle = determinantal_divisors(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>(), 2);
        assert_eq!(oracle, vec![1, 1]);
        assert_eq!(factors(&smith_normal_form(&m(rows))), vec![1, 1]);
    }

    #[test]
    fn lattice_membership() {
        let a = m(&[&[2, 0], &[0, 3], &[5, 5]]);
        let v: Vec<BigInt> = vec![1.into(), 7.into()];
        assert!(a.row_lattice_contains(&v));
        let b = m(&[&[2, 0], &[0, 2]]);
        assert!(!b.row_lattice_contains(&[1.into(), 0.into()]));
        assert!(b.row_lattice_contains(&[4.into(), (-2).into()]));
        let empty = IntegerMatrix::zeros(0, 2);
        assert!(empty.row_lattice_contains(&[0.into(), 0.into()]));
        assert!(!empty.row_lattice_contains(&[0.into(), 1.into()]));
    }

    fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
        (1usize..=4, 1usize..=4).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-6i64..=6, c), r)
        })
    }

    proptest! {
        #[test]
        fn divisibility_chain_and_minors(a in small_matrix()) {
            let cols = a[0].len();
            let s = smith_normal_form(&IntegerMatrix::from_rows_i64(a.len(), cols, &a));
            let f = factors(&s);
            for w in f.windows(2) {
                prop_assert_eq!(w[1] % w[0], 0);
            }
            let dd = determinantal_divisors(&a, cols);
            prop_assert_eq!(dd.len(), f.len());
            let mut prod = 1i64;
            for (k, d) in f.iter().enumerate() {
                prod *= d;
                prop_assert_eq!(prod, dd[k].abs());
            }
            prop_assert_eq!(s.free_rank + f.len(), cols);
        }

        #[test]
        fn invariant_under_permutation(a in small_matrix(), seed in 0u64..1000) {
            let cols = a[0].len();
            let mut b = a.clone();
            let nrows = b.len();
            b.rotate_left((seed as usize) % nrows);
            for row in &mut b {
                row.rotate_left((seed as usize / 7) % cols);
            }
            let sa = smith_normal_form(&IntegerMatrix::from_rows_i64(a.len(), cols, &a));
            let sb = smith_normal_form(&IntegerMatrix::from_rows_i64(b.len(), cols, &b));
            prop_assert_eq!(sa, sb);
        }
    }
}
