//! Exact rational linear algebra: dense reduced row echelon form with kernel
//! extraction, and an incremental sparse solver with a rank certificate.

use std::collections::BTreeMap;

use num::Zero;

use crate::rat::Rat;

/// Reduces `rows` in place to reduced row echelon form and returns the pivot
/// columns in order.
pub fn rref(rows: &mut [Vec<Rat>]) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(src) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, src);
        let inv = rows[r][c].clone().recip();
        for j in c..ncols {
            let v = rows[r][j].clone() * &inv;
            rows[r][j] = v;
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let factor = rows[i][c].clone();
                for j in c..ncols {
                    let delta = rows[r][j].clone() * &factor;
                    rows[i][j] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// A basis of `{v : M v = 0}` in reduced-echelon canonical form: one vector
/// per free column, carrying 1 there and 0 at every other free column.
pub fn kernel_basis(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut work: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), ncols);
            r.clone()
        })
        .collect();
    let pivots = rref(&mut work);
    let pivot_rows: BTreeMap<usize, usize> =
        pivots.iter().enumerate().map(|(r, &c)| (c, r)).collect();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_rows.contains_key(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); ncols];
        v[free] = Rat::from_integer(1.into());
        for (&pc, &pr) in &pivot_rows {
            let coeff = work[pr][free].clone();
            if !coeff.is_zero() {
                v[pc] = -coeff;
            }
        }
        basis.push(v);
    }
    basis
}

/// Outcome of feeding one equation to a [`SparseSolver`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AddOutcome {
    /// The equation added a new pivot.
    Reduced,
    /// The equation was implied by the ones already seen.
    Redundant,
    /// The equation contradicts the ones already seen.
    Inconsistent,
}

#[derive(Clone, Debug)]
struct SparseRow {
    /// Nonzero coefficients keyed by column; the pivot column carries 1.
    entries: BTreeMap<usize, Rat>,
    rhs: Rat,
}

/// Incremental exact solver for sparse linear systems: equations arrive one at
/// a time, are forward-reduced against the pivots seen so far, and the solver
/// certifies rank, consistency, and uniqueness at any point.
#[derive(Clone, Debug)]
pub struct SparseSolver {
    ncols: usize,
    pivots: BTreeMap<usize, SparseRow>,
    consistent: bool,
}

impl SparseSolver {
    pub fn new(ncols: usize) -> Self {
        SparseSolver {
            ncols,
            pivots: BTreeMap::new(),
            consistent: true,
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Adds `Σ coeff·x_col = rhs`, reducing against existing pivots first.
    pub fn add_equation(
        &mut self,
        entries: impl IntoIterator<Item = (usize, Rat)>,
        rhs: Rat,
    ) -> AddOutcome {
        let mut row: BTreeMap<usize, Rat> = BTreeMap::new();
        for (col, c) in entries {
            assert!(col < self.ncols, "column index out of range");
            if c.is_zero() {
                continue;
            }
            let v = row.entry(col).or_insert_with(Rat::zero);
            *v += c;
            if v.is_zero() {
                row.remove(&col);
            }
        }
        let mut rhs = rhs;
        loop {
            let Some((&lead, _)) = row.first_key_value() else {
                return if rhs.is_zero() {
                    AddOutcome::Redundant
                } else {
                    self.consistent = false;
                    AddOutcome::Inconsistent
                };
            };
            let Some(pivot) = self.pivots.get(&lead) else {
                break;
            };
            let factor = row
                .remove(&lead)
                .expect("lead column present by construction");
            for (col, c) in &pivot.entries {
                if *col == lead {
                    continue;
                }
                let v = row.entry(*col).or_insert_with(Rat::zero);
                *v -= c * &factor;
                if v.is_zero() {
                    row.remove(col);
                }
            }
            rhs -= &pivot.rhs * &factor;
        }
        let (&lead, _) = row.first_key_value().expect("nonempty after reduction");
        let inv = row[&lead].clone().recip();
        let entries: BTreeMap<usize, Rat> =
            row.into_iter().map(|(col, c)| (col, c * &inv)).collect();
        let rhs = rhs * &inv;
        self.pivots.insert(lead, SparseRow { entries, rhs });
        AddOutcome::Reduced
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_consistent(&self) -> bool {
        self.consistent
    }

    /// True when the accumulated equations pin every unknown.
    pub fn is_unique(&self) -> bool {
        self.consistent && self.rank() == self.ncols
    }

    /// A particular solution with all free unknowns set to zero, or `None`
    /// if any equation was inconsistent.
    pub fn solve_particular(&self) -> Option<Vec<Rat>> {
        if !self.consistent {
            return None;
        }
        let mut x = vec![Rat::zero(); self.ncols];
        for (&col, row) in self.pivots.iter().rev() {
            let mut v = row.rhs.clone();
            for (&j, c) in row.entries.range(col + 1..) {
                if !x[j].is_zero() {
                    v -= c * &x[j];
                }
            }
            x[col] = v;
        }
        Some(x)
    }
}
