//! Exact rationals and the small amount of rational linear algebra the
//! combinatorics needs.

use alloc::vec;
use alloc::vec::Vec;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type Q = num_rational::Ratio<i64>;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

pub fn int(n: i64) -> Q {
    Q::from_integer(n)
}

/// `⌈x⌉`.
pub fn ceil(x: Q) -> i64 {
    Integer::div_ceil(x.numer(), x.denom())
}

/// `⌊x⌋`.
pub fn floor(x: Q) -> i64 {
    Integer::div_floor(x.numer(), x.denom())
}

pub fn to_f64(x: Q) -> f64 {
    *x.numer() as f64 / *x.denom() as f64
}

/// Coordinates with respect to a family of linearly independent vectors.
///
/// Built once from the columns `c_1, …, c_l ∈ Q^n`; [`Expansion::solve`] then returns
/// the unique `x` with `Σ x_j c_j = d`, or `None` when `d` is outside the span.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    dim: usize,
    /// `l × n`: left inverse on the span.
    left: Vec<Vec<Q>>,
    /// `(n - l) × n`: equations cutting out the span.
    constraints: Vec<Vec<Q>>,
}

impl Expansion {
    /// Fails (returns `None`) when the columns are linearly dependent.
    pub fn new(dim: usize, columns: &[Vec<i64>]) -> Option<Self> {
        let l = columns.len();
        // row-reduce [C | I_n]
        let mut rows: Vec<Vec<Q>> = (0..dim)
            .map(|i| {
                let mut row: Vec<Q> = columns.iter().map(|c| int(c[i])).collect();
                row.extend((0..dim).map(|k| if k == i { Q::one() } else { Q::zero() }));
                row
            })
            .collect();
        let mut r = 0;
        for col in 0..l {
            let piv = (r..dim).find(|&i| !rows[i][col].is_zero())?;
            rows.swap(r, piv);
            let inv = rows[r][col].recip();
            for x in rows[r].iter_mut() {
                *x *= inv;
            }
            for i in 0..dim {
                if i != r && !rows[i][col].is_zero() {
                    let f = rows[i][col];
                    let pivot_row = rows[r].clone();
                    for (x, y) in rows[i].iter_mut().zip(pivot_row) {
                        *x -= f * y;
                    }
                }
            }
            r += 1;
        }
        let left = rows[..l].iter().map(|row| row[l..].to_vec()).collect();
        let constraints = rows[l..].iter().map(|row| row[l..].to_vec()).collect();
        Some(Expansion { dim, left, constraints })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.left.len()
    }

    pub fn is_empty(&self) -> bool {
        self.left.is_empty()
    }

    pub fn solve(&self, d: &[Q]) -> Option<Vec<Q>> {
        debug_assert_eq!(d.len(), self.dim);
        let dot = |row: &Vec<Q>| row.iter().zip(d).fold(Q::zero(), |acc, (a, b)| acc + a * b);
        if self.constraints.iter().any(|row| !dot(row).is_zero()) {
            return None;
        }
        Some(self.left.iter().map(dot).collect())
    }
}

/// Determinant of a small integer matrix by exact fraction-free elimination.
pub fn int_det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<Q>> = m.iter().map(|row| row.iter().map(|&x| int(x)).collect()).collect();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return 0;
        };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c];
        for i in c + 1..n {
            let f = a[i][c] / a[c][c];
            let pivot_row = a[c].clone();
            for (x, y) in a[i].iter_mut().zip(pivot_row) {
                *x -= f * y;
            }
        }
    }
    debug_assert!(det.is_integer());
    det.to_integer()
}

/// Integer matrices with unimodular transforms: `u · m · v = diag(d_1, …)` with
/// `d_1 | d_2 | …` nonnegative.
pub fn int_smith(m: &[Vec<i64>], rows: usize, cols: usize) -> (Vec<Vec<i64>>, Vec<i64>) {
    let mut a: Vec<Vec<i64>> = m.to_vec();
    let mut u: Vec<Vec<i64>> = (0..rows)
        .map(|i| (0..rows).map(|j| i64::from(i == j)).collect())
        .collect();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero absolute entry in the remaining block
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i][j] != 0)
            .min_by_key(|&(i, j)| (a[i][j].abs(), i, j));
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        u.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut done = true;
            for i in t + 1..rows {
                let f = Integer::div_floor(&a[i][t], &a[t][t]);
                if f != 0 {
                    row_axpy(&mut a, i, t, -f);
                    row_axpy(&mut u, i, t, -f);
                }
                if a[i][t] != 0 {
                    done = false;
                }
            }
            for j in t + 1..cols {
                let f = Integer::div_floor(&a[t][j], &a[t][t]);
                if f != 0 {
                    for row in a.iter_mut() {
                        row[j] -= f * row[t];
                    }
                }
                if a[t][j] != 0 {
                    done = false;
                }
            }
            if done {
                // enforce divisibility of the remaining block
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| a[i][j] % a[t][t] != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        row_axpy(&mut a, t, i, 1);
                        row_axpy(&mut u, t, i, 1);
                        continue;
                    }
                }
            }
            // move the smallest entry of row/column t to the pivot position
            let best = (t..rows)
                .map(|i| (i, t))
                .chain((t..cols).map(|j| (t, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| (a[i][j].abs(), i, j))
                .unwrap();
            if best.0 != t {
                a.swap(t, best.0);
                u.swap(t, best.0);
            } else if best.1 != t {
                for row in a.iter_mut() {
                    row.swap(t, best.1);
                }
            }
        }
        if a[t][t] < 0 {
            for x in a[t].iter_mut() {
                *x = -*x;
            }
            for x in u[t].iter_mut() {
                *x = -*x;
            }
        }
        diag.push(a[t][t]);
        t += 1;
    }
    (u, diag)
}

fn row_axpy(a: &mut [Vec<i64>], target: usize, source: usize, f: i64) {
    let src = a[source].clone();
    for (x, y) in a[target].iter_mut().zip(src) {
        *x += f * y;
    }
}

/// Row-style Hermite normal form of an integer matrix with linearly independent rows
/// (positive pivots, entries above each pivot reduced into `[0, pivot)`).
pub fn int_row_hnf(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut a: Vec<Vec<i64>> = m.to_vec();
    let rows = a.len();
    if rows == 0 {
        return a;
    }
    let cols = a[0].len();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let nz: Vec<usize> = (r..rows).filter(|&i| a[i][c] != 0).collect();
            if nz.is_empty() {
                break;
            }
            let best = *nz.iter().min_by_key(|&&i| (a[i][c].abs(), i)).unwrap();
            a.swap(r, best);
            let mut clean = true;
            for i in r + 1..rows {
                if a[i][c] != 0 {
                    let f = Integer::div_floor(&a[i][c], &a[r][c]);
                    row_axpy(&mut a, i, r, -f);
                    if a[i][c] != 0 {
                        clean = false;
                    }
                }
            }
            if clean {
                if a[r][c] < 0 {
                    for x in a[r].iter_mut() {
                        *x = -*x;
                    }
                }
                for i in 0..r {
                    let f = Integer::div_floor(&a[i][c], &a[r][c]);
                    if f != 0 {
                        row_axpy(&mut a, i, r, -f);
                    }
                }
                r += 1;
                break;
            }
        }
    }
    a
}

/// `Σ a_i b_i` for an integer and a rational vector.
pub fn pair(a: &[i64], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (&x, &y)| acc + y * x)
}

pub fn pair_int(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn to_rational(v: &[i64]) -> Vec<Q> {
    v.iter().map(|&x| int(x)).collect()
}

pub fn sub_rational(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn is_nonnegative(x: &Q) -> bool {
    !x.is_negative()
}

pub fn zeros(n: usize) -> Vec<Q> {
    vec![Q::zero(); n]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceil_and_floor() {
        assert_eq!(ceil(q(3, 2)), 2);
        assert_eq!(ceil(q(-3, 2)), -1);
        assert_eq!(floor(q(-3, 2)), -2);
        assert_eq!(ceil(int(4)), 4);
    }

    #[test]
    fn expansion_in_gl3_coroots() {
        let e = Expansion::new(3, &[vec![1, -1, 0], vec![0, 1, -1]]).unwrap();
        assert_eq!(e.solve(&to_rational(&[1, 0, -1])), Some(vec![int(1), int(1)]));
        assert_eq!(e.solve(&to_rational(&[1, 0, 0])), None);
    }

    #[test]
    fn smith_of_pgl2_coroot() {
        let (u, d) = int_smith(&[vec![2]], 1, 1);
        assert_eq!(d, vec![2]);
        assert_eq!(u, vec![vec![1]]);
    }

    #[test]
    fn smith_transform_kills_columns() {
        let c = vec![vec![1, 0], vec![-1, 1], vec![0, -1]];
        let (u, d) = int_smith(&c, 3, 2);
        assert_eq!(d, vec![1, 1]);
        // last row of u annihilates the coroot lattice
        for j in 0..2 {
            let s: i64 = (0..3).map(|i| u[2][i] * c[i][j]).sum();
            assert_eq!(s, 0);
        }
        assert_eq!(int_det(&u).abs(), 1);
    }

    #[test]
    fn hnf_normalizes_sign() {
        assert_eq!(int_row_hnf(&[vec![-1, -1, -1]]), vec![vec![1, 1, 1]]);
    }
}
