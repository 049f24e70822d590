use num_traits::{Signed, Zero};
use thiserror::Error;

use super::cyclo::{CycloOrder, CycloScalar};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HermitianError {
    #[error("matrix is not square ({rows} rows, row {row} has {len} entries)")]
    NotSquare { rows: usize, row: usize, len: usize },
    #[error("entry ({i}, {j}) is not the conjugate of entry ({j}, {i})")]
    NotHermitian { i: usize, j: usize },
}

/// A square matrix over `Q(ζ_r)` that equals its conjugate transpose.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermitianMatrix {
    order: CycloOrder,
    rows: Vec<Vec<CycloScalar>>,
}

impl HermitianMatrix {
    pub fn new(order: CycloOrder, rows: Vec<Vec<CycloScalar>>) -> Result<Self, HermitianError> {
        let n = rows.len();
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(HermitianError::NotSquare {
                    rows: n,
                    row,
                    len: r.len(),
                });
            }
        }
        for i in 0..n {
            for j in i..n {
                if rows[i][j] != rows[j][i].conj() {
                    return Err(HermitianError::NotHermitian { i, j });
                }
            }
        }
        Ok(HermitianMatrix { order, rows })
    }

    pub fn from_integers(order: CycloOrder, rows: &[Vec<i64>]) -> Result<Self, HermitianError> {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&v| CycloScalar::from_int(order, v)).collect())
            .collect();
        Self::new(order, rows)
    }

    pub fn order(&self) -> CycloOrder {
        self.order
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloScalar {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<CycloScalar>] {
        &self.rows
    }
}

/// Signature and nullity of a Hermitian form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.positive as i64 - self.negative as i64
    }
}

/// Inertia by exact congruence diagonalization `P M P*`.
///
/// A nonzero diagonal pivot is used when available. When every remaining
/// diagonal entry vanishes but some off-diagonal `M[k][j]` does not, row `k`
/// gets `M[k][j]` times row `j` added (and column `k` the conjugate multiple),
/// producing the pivot `2|M[k][j]|² > 0`.
pub fn inertia(m: &HermitianMatrix) -> Inertia {
    let n = m.size();
    let mut a: Vec<Vec<CycloScalar>> = m.rows.clone();
    let mut active: Vec<usize> = (0..n).collect();
    let mut out = Inertia {
        positive: 0,
        negative: 0,
        zero: 0,
    };

    while !active.is_empty() {
        let pivot = active.iter().copied().find(|&k| !a[k][k].is_zero());
        let k = match pivot {
            Some(k) => k,
            None => {
                let pair = active.iter().copied().find_map(|k| {
                    active
                        .iter()
                        .copied()
                        .find(|&j| j != k && !a[k][j].is_zero())
                        .map(|j| (k, j))
                });
                match pair {
                    None => {
                        out.zero += active.len();
                        break;
                    }
                    Some((k, j)) => {
                        let c = a[k][j].clone();
                        add_multiple(&mut a, &active, k, j, &c);
                        k
                    }
                }
            }
        };

        let d = a[k][k].clone();
        let dq = d
            .as_rational()
            .expect("diagonal of a Hermitian matrix is rational")
            .clone();
        debug_assert!(!dq.is_zero());
        if dq.is_positive() {
            out.positive += 1;
        } else {
            out.negative += 1;
        }
        let d_inv = d.inv().expect("nonzero pivot");
        active.retain(|&x| x != k);
        for &i in &active {
            if a[i][k].is_zero() {
                continue;
            }
            // row_i -= (a_ik / d) row_k ; col_i -= conj(.) col_k
            let f = &a[i][k] * &d_inv;
            for &j in &active {
                let t = &f * &a[k][j];
                a[i][j] = &a[i][j] - &t;
            }
            a[i][k] = CycloScalar::zero(m.order);
        }
        for &i in &active {
            a[k][i] = CycloScalar::zero(m.order);
        }
        // keep exact Hermitian symmetry after the row updates
        for (x, &i) in active.iter().enumerate() {
            for &j in &active[x + 1..] {
                a[j][i] = a[i][j].conj();
            }
        }
    }
    out
}

/// `row_k += c · row_j`, `col_k += conj(c) · col_j` on the active block.
fn add_multiple(
    a: &mut [Vec<CycloScalar>],
    active: &[usize],
    k: usize,
    j: usize,
    c: &CycloScalar,
) {
    for &x in active {
        let t = c * &a[j][x];
        a[k][x] = &a[k][x] + &t;
    }
    let cc = c.conj();
    for &x in active {
        let t = &a[x][j] * &cc;
        a[x][k] = &a[x][k] + &t;
    }
}

/// `(signature, nullity)`.
pub fn signature_nullity(m: &HermitianMatrix) -> (i64, i64) {
    let i = inertia(m);
    (i.signature(), i.zero as i64)
}
