//! Small exact linear algebra over `i64`/`i128` and `Ratio<i128>`.
//!
//! Matrices are row-major `Vec<Vec<_>>`; sizes here never exceed a few dozen.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;

pub type Rational = Ratio<i128>;

pub fn rational(n: i128) -> Rational {
    Rational::from_integer(n)
}

pub fn identity(n: usize) -> Vec<Vec<Rational>> {
    (0..n)
        .map(|i| (0..n).map(|j| rational((i == j) as i128)).collect())
        .collect()
}

pub fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(Rational::zero(), |acc, k| acc + row[k] * b[k][j]))
                .collect()
        })
        .collect()
}

pub fn transpose<T: Clone>(a: &[Vec<T>]) -> Vec<Vec<T>> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

/// `v · A` for a row vector `v`.
pub fn row_times(v: &[Rational], a: &[Vec<Rational>]) -> Vec<Rational> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols)
        .map(|j| v.iter().zip(a).fold(Rational::zero(), |acc, (x, row)| acc + x * row[j]))
        .collect()
}

/// `A · v` for a column vector `v`.
pub fn times_col(a: &[Vec<Rational>], v: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| row.iter().zip(v).fold(Rational::zero(), |acc, (x, y)| acc + x * y))
        .collect()
}

/// Gauss-Jordan inverse; `None` when singular.
pub fn inverse(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .zip(identity(n))
        .map(|(row, id)| row.iter().cloned().chain(id).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col];
        for x in m[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col];
                let pivot_row = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn rank(a: &[Vec<Rational>]) -> usize {
    let mut m = a.to_vec();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            if !m[i][c].is_zero() {
                let f = m[i][c] / m[r][c];
                let pivot_row = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

pub fn to_rational(a: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    a.iter()
        .map(|row| row.iter().map(|&x| rational(x as i128)).collect())
        .collect()
}

/// Converts a rational vector to integers, `None` if any entry is fractional
/// or out of `i64` range.
pub fn to_integral(v: &[Rational]) -> Option<Vec<i64>> {
    v.iter()
        .map(|x| {
            if x.is_integer() {
                i64::try_from(x.to_integer()).ok()
            } else {
                None
            }
        })
        .collect()
}

pub fn gcd_all<I: IntoIterator<Item = i64>>(values: I) -> i64 {
    values.into_iter().fold(0, |acc, x| acc.gcd(&x))
}

/// Nonzero invariant factors `d_1 | d_2 | ...` of an integer matrix.
///
/// The product of the factors is the index of the row lattice inside its
/// saturation `ℚ-span ∩ ℤⁿ`.
pub fn smith_invariants(a: &[Vec<i64>]) -> Vec<i64> {
    let mut m: Vec<Vec<i128>> = a
        .iter()
        .map(|row| row.iter().map(|&x| x as i128).collect())
        .collect();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();

    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let Some((pr, pc)) = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| m[i][j] != 0)
            .min_by_key(|&(i, j)| m[i][j].abs())
        else {
            break;
        };
        m.swap(t, pr);
        for row in m.iter_mut() {
            row.swap(t, pc);
        }

        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                let q = Integer::div_floor(&m[i][t], &m[t][t]);
                if q != 0 {
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                if m[i][t] != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                let q = Integer::div_floor(&m[t][j], &m[t][t]);
                if q != 0 {
                    for i in t..rows {
                        m[i][j] -= q * m[i][t];
                    }
                }
                if m[t][j] != 0 {
                    dirty = true;
                }
            }
            if !dirty {
                // pivot must divide the whole trailing block
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| m[i][j] % m[t][t] != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            let v = m[i][j];
                            m[t][j] += v;
                        }
                        dirty = true;
                    }
                }
            }
            if dirty {
                // move the smallest nonzero entry of row/column t to the pivot
                let (mut bi, mut bj) = (t, t);
                let mut best = if m[t][t] == 0 { i128::MAX } else { m[t][t].abs() };
                for i in t..rows {
                    if m[i][t] != 0 && m[i][t].abs() < best {
                        best = m[i][t].abs();
                        (bi, bj) = (i, t);
                    }
                }
                for j in t..cols {
                    if m[t][j] != 0 && m[t][j].abs() < best {
                        best = m[t][j].abs();
                        (bi, bj) = (t, j);
                    }
                }
                m.swap(t, bi);
                for row in m.iter_mut() {
                    row.swap(t, bj);
                }
            }
        }
        out.push(m[t][t].abs() as i64);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_round_trip() {
        let a = to_rational(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        let inv = inverse(&a).unwrap();
        assert_eq!(mat_mul(&a, &inv), identity(3));
        assert_eq!(inv[1][1], Rational::new(1, 1));
        assert_eq!(inv[0][0], Rational::new(3, 4));
    }

    #[test]
    fn singular_has_no_inverse() {
        let a = to_rational(&[vec![1, 2], vec![2, 4]]);
        assert!(inverse(&a).is_none());
        assert_eq!(rank(&a), 1);
    }

    #[test]
    fn smith_small_cases() {
        assert_eq!(smith_invariants(&[vec![2]]), vec![2]);
        assert_eq!(smith_invariants(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        assert_eq!(smith_invariants(&[vec![4, 6], vec![6, 4]]), vec![2, 10]);
        assert_eq!(smith_invariants(&[vec![0, 0], vec![0, 0]]), Vec::<i64>::new());
        // rank-deficient: rows (1,1),(2,2)
        assert_eq!(smith_invariants(&[vec![1, 1], vec![2, 2]]), vec![1]);
    }

    #[test]
    fn smith_product_equals_abs_det_for_square() {
        let a = vec![vec![3, 1, 4], vec![1, 5, 9], vec![2, 6, 5]];
        // det = 3(25-54) - 1(5-18) + 4(6-10) = -87 + 13 - 16 = -90
        let p: i64 = smith_invariants(&a).iter().product();
        assert_eq!(p, 90);
    }

    #[test]
    fn gcd_of_values() {
        assert_eq!(gcd_all([4, -6, 10]), 2);
        assert_eq!(gcd_all([0, 0]), 0);
        assert_eq!(gcd_all([0, -3]), 3);
    }
}
