//! Exact linear algebra over the rationals: reduced row echelon form,
//! nullspaces and linear solves.

use num_traits::{One, Zero};

use super::Rational;
use crate::error::{check_dim, Result};

/// Reduced row echelon form of a matrix given as rows. Returns the reduced
/// nonzero rows and the pivot column of each.
pub fn rref(rows: &[Vec<Rational>], ncols: usize) -> Result<(Vec<Vec<Rational>>, Vec<usize>)> {
    for r in rows {
        check_dim(ncols, r.len())?;
    }
    let mut m: Vec<Vec<Rational>> = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        if top == m.len() {
            break;
        }
        let Some(p) = (top..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(top, p);
        let inv = Rational::one() / &m[top][col];
        for x in m[top].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[top].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == top || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(col);
        top += 1;
    }
    m.truncate(top);
    Ok((m, pivots))
}

pub fn rank(rows: &[Vec<Rational>], ncols: usize) -> Result<usize> {
    Ok(rref(rows, ncols)?.1.len())
}

/// Basis of `{v : rows * v = 0}`, one vector per free column, each with a
/// unit entry in its free column.
pub fn nullspace(rows: &[Vec<Rational>], ncols: usize) -> Result<Vec<Vec<Rational>>> {
    let (m, pivots) = rref(rows, ncols)?;
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (row, &p) in m.iter().zip(&pivots) {
            v[p] = -row[free].clone();
        }
        basis.push(v);
    }
    Ok(basis)
}

/// One solution of `rows * x = rhs`, or `None` if inconsistent.
pub fn solve(rows: &[Vec<Rational>], rhs: &[Rational], ncols: usize) -> Result<Option<Vec<Rational>>> {
    check_dim(rows.len(), rhs.len())?;
    let augmented: Vec<Vec<Rational>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            let mut a = r.clone();
            a.push(b.clone());
            a
        })
        .collect();
    for r in rows {
        check_dim(ncols, r.len())?;
    }
    let (m, pivots) = rref(&augmented, ncols + 1)?;
    if pivots.last() == Some(&ncols) {
        return Ok(None);
    }
    let mut x = vec![Rational::zero(); ncols];
    for (row, &p) in m.iter().zip(&pivots) {
        x[p] = row[ncols].clone();
    }
    Ok(Some(x))
}

/// Whether `v` lies in the row span of `rows`.
pub fn in_span(rows: &[Vec<Rational>], v: &[Rational]) -> Result<bool> {
    let n = v.len();
    let base = rank(rows, n)?;
    let mut ext = rows.to_vec();
    ext.push(v.to_vec());
    Ok(rank(&ext, n)? == base)
}

pub fn mat_vec(rows: &[Vec<Rational>], v: &[Rational]) -> Result<Vec<Rational>> {
    rows.iter()
        .map(|r| {
            check_dim(v.len(), r.len())?;
            Ok(r.iter()
                .zip(v)
                .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                .fold(Rational::zero(), |acc, (a, b)| acc + a * b))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn nullspace_is_annihilated() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let ns = nullspace(&a, 4).unwrap();
        assert_eq!(ns.len(), 2);
        for v in &ns {
            assert!(mat_vec(&a, v).unwrap().iter().all(Zero::is_zero));
        }
        assert_eq!(rank(&a, 4).unwrap(), 2);
    }

    #[test]
    fn solves_and_detects_inconsistency() {
        let a = m(&[&[2, 1], &[1, 3]]);
        let x = solve(&a, &[int(1), int(2)], 2).unwrap().unwrap();
        assert_eq!(x, vec![rat(1, 5), rat(3, 5)]);
        let b = m(&[&[1, 1], &[2, 2]]);
        assert!(solve(&b, &[int(1), int(3)], 2).unwrap().is_none());
        assert!(in_span(&b, &[int(3), int(3)]).unwrap());
        assert!(!in_span(&b, &[int(3), int(2)]).unwrap());
    }

    #[test]
    fn empty_system_has_full_nullspace() {
        assert_eq!(nullspace(&[], 3).unwrap().len(), 3);
    }
}
