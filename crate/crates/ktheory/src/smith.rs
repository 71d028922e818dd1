use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::IntMatrix;

/// `U·M·V = D` with `U`, `V` unimodular and `D` diagonal, its nonzero
/// entries positive and each dividing the next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl Smith {
    /// The nonzero diagonal entries `d₁ | d₂ | … | d_r`.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank).map(|i| self.d[(i, i)].clone()).collect()
    }

    /// Whether `y` lies in the column span of `M` over `Z`.
    pub fn spans(&self, y: &[BigInt]) -> bool {
        let z = self.u.mul_vec(y);
        z.iter()
            .enumerate()
            .all(|(i, zi)| if i < self.rank { zi.is_multiple_of(&self.d[(i, i)]) } else { zi.is_zero() })
    }

    /// A basis of `ker M`: the last `cols - rank` columns of `V`.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        (self.rank..self.v.cols()).map(|j| self.v.column(j)).collect()
    }
}

/// Least nonzero absolute value in the block `[t.., t..]`.
fn least_entry(a: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..a.rows() {
        for j in t..a.cols() {
            let x = &a[(i, j)];
            if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < a[(bi, bj)].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

/// Least nonzero absolute value in row `t` and column `t` beyond the corner.
fn least_in_cross(a: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let cells = (t..a.rows()).map(|i| (i, t)).chain((t + 1..a.cols()).map(|j| (t, j)));
    for (i, j) in cells {
        let x = &a[(i, j)];
        if !x.is_zero() && (a[best].is_zero() || x.abs() < a[best].abs()) {
            best = (i, j);
        }
    }
    best
}

/// Smith normal form by exact elimination, pivoting on the entry of least
/// absolute value.
pub fn smith_normal_form(m: &IntMatrix) -> Smith {
    let (rows, cols) = m.shape();
    let mut a = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = least_entry(&a, t) else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let pivot = a[(t, t)].clone();
            let mut clear = true;
            for i in t + 1..rows {
                if !a[(i, t)].is_zero() {
                    let q = -a[(i, t)].div_floor(&pivot);
                    a.add_row(i, t, &q);
                    u.add_row(i, t, &q);
                    clear &= a[(i, t)].is_zero();
                }
            }
            for j in t + 1..cols {
                if !a[(t, j)].is_zero() {
                    let q = -a[(t, j)].div_floor(&pivot);
                    a.add_col(j, t, &q);
                    v.add_col(j, t, &q);
                    clear &= a[(t, j)].is_zero();
                }
            }
            if clear {
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[(i, j)].is_multiple_of(&pivot)));
                match bad {
                    None => break,
                    Some(i) => {
                        a.add_row(t, i, &BigInt::one());
                        u.add_row(t, i, &BigInt::one());
                        continue;
                    }
                }
            }
            let (bi, bj) = least_in_cross(&a, t);
            a.swap_rows(t, bi);
            u.swap_rows(t, bi);
            a.swap_cols(t, bj);
            v.swap_cols(t, bj);
        }
        if a[(t, t)].is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    Smith { u, d: a, v, rank: t }
}
