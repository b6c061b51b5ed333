//! Smith and Hermite normal forms, integer kernels and integer linear solves.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{Int, Matrix};

/// Result of a Smith normal form computation: `u * m * v == d`.
///
/// The inverses of the unimodular transforms are tracked alongside so that
/// changes of basis can be undone without a separate inversion.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: Matrix,
    pub u_inv: Matrix,
    pub d: Matrix,
    pub v: Matrix,
    pub v_inv: Matrix,
    pub rank: usize,
}

impl SmithForm {
    /// Diagonal entries `d[0..min(rows, cols)]`.
    pub fn diagonal(&self) -> Vec<Int> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Smallest non-zero entry by absolute value in `m[t.., t..]`, ties broken by
/// lowest (row, column).
fn select_pivot(m: &Matrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..m.rows() {
        for j in t..m.cols() {
            let x = &m[(i, j)];
            if x.is_zero() {
                continue;
            }
            match best {
                Some((bi, bj)) if m[(bi, bj)].abs() <= x.abs() => {}
                _ => best = Some((i, j)),
            }
        }
    }
    best
}

/// Smith normal form of an arbitrary integer matrix.
pub fn smith(m: &Matrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = Matrix::identity(rows);
    let mut u_inv = Matrix::identity(rows);
    let mut v = Matrix::identity(cols);
    let mut v_inv = Matrix::identity(cols);

    let swap_r = |d: &mut Matrix, u: &mut Matrix, u_inv: &mut Matrix, a: usize, b: usize| {
        d.swap_rows(a, b);
        u.swap_rows(a, b);
        u_inv.swap_cols(a, b);
    };
    let swap_c = |d: &mut Matrix, v: &mut Matrix, v_inv: &mut Matrix, a: usize, b: usize| {
        d.swap_cols(a, b);
        v.swap_cols(a, b);
        v_inv.swap_rows(a, b);
    };

    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = select_pivot(&d, t) else {
            break;
        };
        swap_r(&mut d, &mut u, &mut u_inv, t, pi);
        swap_c(&mut d, &mut v, &mut v_inv, t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row_multiple(i, t, &-&q);
                u.add_row_multiple(i, t, &-&q);
                u_inv.add_col_multiple(t, i, &q);
                dirty |= !d[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col_multiple(j, t, &-&q);
                v.add_col_multiple(j, t, &-&q);
                v_inv.add_row_multiple(t, j, &q);
                dirty |= !d[(t, j)].is_zero();
            }
            if dirty {
                let (pi, pj) = select_pivot(&d, t).expect("pivot row is non-zero");
                swap_r(&mut d, &mut u, &mut u_inv, t, pi);
                swap_c(&mut d, &mut v, &mut v_inv, t, pj);
                continue;
            }
            // pivot must divide the remaining block
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !d[(i, j)].is_multiple_of(&d[(t, t)]));
            match offender {
                Some((i, _)) => {
                    let one = Int::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                    u_inv.add_col_multiple(i, t, &-one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
            u_inv.negate_col(t);
        }
        t += 1;
    }
    let rank = (0..rows.min(cols)).take_while(|&i| !d[(i, i)].is_zero()).count();
    SmithForm {
        u,
        u_inv,
        d,
        v,
        v_inv,
        rank,
    }
}

/// Row-style Hermite normal form of the lattice spanned by the rows of `m`.
///
/// The result has no zero rows, strictly increasing pivot columns, positive
/// pivots, and entries above each pivot reduced into `[0, pivot)`. It depends
/// only on the lattice, not on the generating rows.
pub fn hnf(m: &Matrix) -> Matrix {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows {
                if a[(i, c)].is_zero() {
                    continue;
                }
                match best {
                    Some(b) if a[(b, c)].abs() <= a[(i, c)].abs() => {}
                    _ => best = Some(i),
                }
            }
            let Some(p) = best else { break };
            a.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let q = a[(i, c)].div_floor(&a[(r, c)]);
                a.add_row_multiple(i, r, &-q);
                done &= a[(i, c)].is_zero();
            }
            if done {
                if a[(r, c)].is_negative() {
                    a.negate_row(r);
                }
                for i in 0..r {
                    let q = a[(i, c)].div_floor(&a[(r, c)]);
                    a.add_row_multiple(i, r, &-q);
                }
                r += 1;
                break;
            }
        }
    }
    a.select_rows(&(0..r).collect::<Vec<_>>())
}

/// Pivot column of each row of a matrix in Hermite normal form.
pub fn hnf_pivots(h: &Matrix) -> Vec<usize> {
    (0..h.rows())
        .map(|i| {
            (0..h.cols())
                .find(|&j| !h[(i, j)].is_zero())
                .expect("HNF rows are non-zero")
        })
        .collect()
}

/// Coefficients `c` with `c * h == x`, where `h` is in Hermite normal form.
pub fn hnf_solve(h: &Matrix, x: &[Int]) -> Option<Vec<Int>> {
    let mut rest = x.to_vec();
    let mut coeffs = Vec::with_capacity(h.rows());
    for (i, p) in hnf_pivots(h).into_iter().enumerate() {
        let (q, r) = rest[p].div_rem(&h[(i, p)]);
        if !r.is_zero() {
            return None;
        }
        for (j, item) in rest.iter_mut().enumerate() {
            *item -= &q * &h[(i, j)];
        }
        coeffs.push(q);
    }
    rest.iter().all(Zero::is_zero).then_some(coeffs)
}

/// Basis (as rows) of the integer kernel `{ x : m * x == 0 }`.
pub fn kernel(m: &Matrix) -> Matrix {
    let s = smith(m);
    let basis: Vec<Vec<Int>> = (s.rank..m.cols()).map(|j| s.v.col(j)).collect();
    Matrix::from_rows(m.cols(), basis)
}

/// Solves `m * x == b` over the integers, returning one solution.
pub fn solve(m: &Matrix, b: &[Int]) -> Option<Vec<Int>> {
    let s = smith(m);
    let ub = s.u.mul_vec(b);
    let mut y = vec![Int::zero(); m.cols()];
    for (i, val) in ub.iter().enumerate() {
        if i < s.rank {
            let (q, r) = val.div_rem(&s.d[(i, i)]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !val.is_zero() {
            return None;
        }
    }
    Some(s.v.mul_vec(&y))
}
