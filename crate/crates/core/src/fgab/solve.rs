//! Linear congruence systems with deterministic (lexicographically least)
//! solution selection.

use num_integer::Integer;
use num_traits::Zero;

use super::group::FgGroup;
use super::matrix::{Int, Matrix};
use super::smith::{hnf, hnf_pivots, kernel, solve};

/// Unknowns `u_0..u_{N-1}` (each read modulo its own modulus, `0` = integer)
/// subject to rows `a . u = b (mod w)`.
#[derive(Clone, Debug)]
pub struct Congruences {
    var_moduli: Vec<Int>,
    rows: Vec<Vec<Int>>,
    rhs: Vec<Int>,
    row_moduli: Vec<Int>,
}

/// The full solution set: `particular + lattice`, with `particular` the
/// lexicographically least representative when every unknown has a modulus.
#[derive(Clone, Debug)]
pub struct Solution {
    pub particular: Vec<Int>,
    pub lattice: Matrix,
}

impl Congruences {
    pub fn new(var_moduli: Vec<Int>) -> Self {
        Congruences {
            var_moduli,
            rows: Vec::new(),
            rhs: Vec::new(),
            row_moduli: Vec::new(),
        }
    }

    /// `blocks` copies of the coordinates of `g`, i.e. unknown elements of `g`.
    pub fn for_group_blocks(g: &FgGroup, blocks: usize) -> Self {
        let m = g.moduli();
        Congruences::new((0..blocks).flat_map(|_| m.iter().cloned()).collect())
    }

    pub fn num_vars(&self) -> usize {
        self.var_moduli.len()
    }

    pub fn push(&mut self, coeffs: Vec<Int>, rhs: Int, modulus: Int) {
        assert_eq!(coeffs.len(), self.num_vars());
        self.rows.push(coeffs);
        self.rhs.push(rhs);
        self.row_moduli.push(modulus);
    }

    /// Adds the group equation `sum_t terms[t].1 * u[terms[t].0 ..] = rhs` in
    /// `target`, one congruence per coordinate of `target`. Each term matrix has
    /// `target.dim()` rows and acts on a consecutive block of unknowns starting
    /// at the given offset.
    pub fn push_group_eq(&mut self, target: &FgGroup, terms: &[(usize, &Matrix)], rhs: &[Int]) {
        assert_eq!(rhs.len(), target.dim());
        for i in 0..target.dim() {
            let mut coeffs = vec![Int::zero(); self.num_vars()];
            for (offset, m) in terms {
                assert_eq!(m.rows(), target.dim());
                for k in 0..m.cols() {
                    coeffs[offset + k] += &m[(i, k)];
                }
            }
            self.push(coeffs, rhs[i].clone(), target.modulus(i));
        }
    }

    pub fn solve(&self) -> Option<Solution> {
        let n = self.num_vars();
        let slack: Vec<usize> = (0..self.rows.len())
            .filter(|&i| !self.row_moduli[i].is_zero())
            .collect();
        let mut a = Matrix::zeros(self.rows.len(), n + slack.len());
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                a[(i, j)] = v.clone();
            }
        }
        for (k, &i) in slack.iter().enumerate() {
            a[(i, n + k)] = self.row_moduli[i].clone();
        }
        let full = solve(&a, &self.rhs)?;
        let mut particular: Vec<Int> = full[..n].to_vec();

        let mut gens: Vec<Vec<Int>> = kernel(&a)
            .row_vecs()
            .into_iter()
            .map(|r| r[..n].to_vec())
            .collect();
        for (j, v) in self.var_moduli.iter().enumerate() {
            if v.is_zero() {
                continue;
            }
            debug_assert!(self.rows.iter().zip(&self.row_moduli).all(|(row, w)| {
                let c = &row[j] * v;
                if w.is_zero() {
                    c.is_zero()
                } else {
                    c.is_multiple_of(w)
                }
            }));
            let mut e = vec![Int::zero(); n];
            e[j] = v.clone();
            gens.push(e);
        }
        let lattice = hnf(&Matrix::from_rows(n, gens));
        for (i, p) in hnf_pivots(&lattice).into_iter().enumerate() {
            let q = particular[p].div_floor(&lattice[(i, p)]);
            if !q.is_zero() {
                for (j, x) in particular.iter_mut().enumerate() {
                    *x -= &q * &lattice[(i, j)];
                }
            }
        }
        Some(Solution {
            particular,
            lattice,
        })
    }
}

impl Solution {
    /// Splits the particular solution into consecutive blocks of length `len`.
    pub fn blocks(&self, len: usize) -> Vec<Vec<Int>> {
        if len == 0 {
            return Vec::new();
        }
        self.particular.chunks(len).map(|c| c.to_vec()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fgab::matrix::int;

    #[test]
    fn picks_lexicographically_least() {
        // 2u = 2 (mod 4) over u in Z/4: solutions {1, 3}
        let mut c = Congruences::new(vec![int(4)]);
        c.push(vec![int(2)], int(2), int(4));
        assert_eq!(c.solve().unwrap().particular, vec![int(1)]);
    }

    #[test]
    fn detects_unsolvable() {
        // 2u = 1 (mod 2)
        let mut c = Congruences::new(vec![int(2)]);
        c.push(vec![int(2)], int(1), int(2));
        assert!(c.solve().is_none());
    }

    #[test]
    fn two_unknowns() {
        // u0 + u1 = 1 (mod 2) over (Z/2)^2: least is (0, 1)
        let mut c = Congruences::new(vec![int(2), int(2)]);
        c.push(vec![int(1), int(1)], int(1), int(2));
        let s = c.solve().unwrap();
        assert_eq!(s.particular, vec![int(0), int(1)]);
        assert_eq!(s.lattice.rows(), 2);
    }
}
