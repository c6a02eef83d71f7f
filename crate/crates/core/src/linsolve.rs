//! Exact Gauss-Jordan elimination over the rationals.
//!
//! Systems here are small and often underdetermined. Pivots are taken from
//! the leftmost available column, so the unknowns left without a pivot (the
//! free parameters) are the rightmost ones; they are pinned to zero.

use num_traits::{One, Zero};

use crate::scalar::Scalar;

/// Dense augmented system `A x = b`.
#[derive(Debug, Clone)]
pub struct LinearSystem {
    unknowns: usize,
    rows: Vec<Vec<Scalar>>,
    rhs: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub values: Vec<Scalar>,
    /// Unknowns that had no pivot and were set to zero, ascending.
    pub free: Vec<usize>,
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Inconsistent {
    /// Index of an original equation that cannot be satisfied together with
    /// the ones before it.
    pub equation: usize,
}

impl LinearSystem {
    pub fn new(unknowns: usize) -> LinearSystem {
        LinearSystem {
            unknowns,
            rows: Vec::new(),
            rhs: Vec::new(),
        }
    }

    pub fn unknowns(&self) -> usize {
        self.unknowns
    }

    pub fn equations(&self) -> usize {
        self.rows.len()
    }

    /// Adds `sum(coef * x[var]) = value`; repeated variables accumulate.
    pub fn push<I>(&mut self, terms: I, value: Scalar)
    where
        I: IntoIterator<Item = (usize, Scalar)>,
    {
        let mut row = vec![Scalar::zero(); self.unknowns];
        for (var, coef) in terms {
            row[var] += coef;
        }
        self.rows.push(row);
        self.rhs.push(value);
    }

    /// Left-hand side of equation `eq` evaluated at `x`.
    pub fn evaluate(&self, eq: usize, x: &[Scalar]) -> Scalar {
        self.rows[eq]
            .iter()
            .zip(x)
            .filter(|(c, _)| !c.is_zero())
            .fold(Scalar::zero(), |acc, (c, v)| acc + c * v)
    }

    pub fn rhs(&self, eq: usize) -> &Scalar {
        &self.rhs[eq]
    }

    /// Reduces to row echelon form and back-substitutes with every free
    /// unknown set to zero.
    pub fn solve(&self) -> Result<Solution, Inconsistent> {
        let mut rows = self.rows.clone();
        let mut rhs = self.rhs.clone();
        // original equation index of each working row, for diagnostics
        let mut origin: Vec<usize> = (0..rows.len()).collect();
        let mut pivots: Vec<usize> = Vec::new();
        let mut r = 0;
        for col in 0..self.unknowns {
            let Some(found) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(r, found);
            rhs.swap(r, found);
            origin.swap(r, found);

            let inv = Scalar::one() / &rows[r][col];
            for v in rows[r][col..].iter_mut() {
                *v *= &inv;
            }
            rhs[r] *= &inv;

            for i in 0..rows.len() {
                if i == r || rows[i][col].is_zero() {
                    continue;
                }
                let factor = rows[i][col].clone();
                let (pivot_row, other) = pick_two(&mut rows, r, i);
                for (dst, src) in other[col..].iter_mut().zip(&pivot_row[col..]) {
                    if !src.is_zero() {
                        *dst -= &factor * src;
                    }
                }
                let delta = &factor * &rhs[r];
                rhs[i] -= delta;
            }
            pivots.push(col);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        if let Some(bad) = (r..rows.len()).find(|&i| !rhs[i].is_zero()) {
            let equation = (r..rows.len())
                .filter(|&i| !rhs[i].is_zero())
                .map(|i| origin[i])
                .min()
                .unwrap_or(origin[bad]);
            return Err(Inconsistent { equation });
        }
        let mut values = vec![Scalar::zero(); self.unknowns];
        for (row, &col) in pivots.iter().enumerate() {
            values[col] = rhs[row].clone();
        }
        let free = (0..self.unknowns).filter(|c| !pivots.contains(c)).collect();
        Ok(Solution {
            values,
            free,
            rank: pivots.len(),
        })
    }
}

fn pick_two<T>(v: &mut [T], a: usize, b: usize) -> (&T, &mut T) {
    debug_assert_ne!(a, b);
    if a < b {
        let (lo, hi) = v.split_at_mut(b);
        (&lo[a], &mut hi[0])
    } else {
        let (lo, hi) = v.split_at_mut(a);
        (&hi[0], &mut lo[b])
    }
}
