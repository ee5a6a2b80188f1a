//! Smith normal form over the integers.
//!
//! Pivoting always picks the nonzero entry of smallest absolute value in the
//! remaining block (first in row-major order on ties), so the transforms are
//! reproducible.

pub type IntMatrix = Vec<Vec<i64>>;

/// `left * input * right == diagonal`, with `left` and `right` unimodular and
/// the diagonal entries nonnegative, each dividing the next (zeros last).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub left: IntMatrix,
    pub diagonal: IntMatrix,
    pub right: IntMatrix,
}

impl SmithForm {
    /// The diagonal entries `d_1, ..., d_min(rows, cols)`.
    pub fn invariants(&self) -> Vec<i64> {
        let n = self
            .diagonal
            .len()
            .min(self.diagonal.first().map_or(0, Vec::len));
        (0..n).map(|i| self.diagonal[i][i]).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariants().iter().filter(|&&d| d != 0).count()
    }
}

pub fn identity(n: usize) -> IntMatrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> IntMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).map(|l| row[l] * b[l][j]).sum())
                .collect()
        })
        .collect()
}

struct Reducer {
    d: IntMatrix,
    u: IntMatrix,
    w: IntMatrix,
    rows: usize,
    cols: usize,
}

impl Reducer {
    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap(a, b);
        self.u.swap(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for row in &mut self.d {
            row.swap(a, b);
        }
        for row in &mut self.w {
            row.swap(a, b);
        }
    }

    // row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: i64) {
        for j in 0..self.cols {
            self.d[dst][j] += k * self.d[src][j];
        }
        for j in 0..self.rows {
            self.u[dst][j] += k * self.u[src][j];
        }
    }

    // col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: i64) {
        for i in 0..self.rows {
            self.d[i][dst] += k * self.d[i][src];
        }
        for i in 0..self.cols {
            self.w[i][dst] += k * self.w[i][src];
        }
    }

    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let v = self.d[i][j];
                if v != 0 && best.is_none_or(|(bi, bj)| v.abs() < self.d[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn reduce(&mut self) {
        let steps = self.rows.min(self.cols);
        for t in 0..steps {
            loop {
                let Some((pi, pj)) = self.smallest_in_block(t) else {
                    return;
                };
                if pi != t {
                    self.swap_rows(t, pi);
                }
                if pj != t {
                    self.swap_cols(t, pj);
                }
                let pivot = self.d[t][t];
                let mut clean = true;
                for i in t + 1..self.rows {
                    let q = self.d[i][t] / pivot;
                    if q != 0 {
                        self.add_row(i, t, -q);
                    }
                    clean &= self.d[i][t] == 0;
                }
                for j in t + 1..self.cols {
                    let q = self.d[t][j] / pivot;
                    if q != 0 {
                        self.add_col(j, t, -q);
                    }
                    clean &= self.d[t][j] == 0;
                }
                if !clean {
                    continue;
                }
                // Pivot must divide the rest of the block for the chain d_i | d_{i+1}.
                let offender = (t + 1..self.rows)
                    .find(|&i| (t + 1..self.cols).any(|j| self.d[i][j] % pivot != 0));
                match offender {
                    Some(i) => self.add_row(t, i, 1),
                    None => break,
                }
            }
            if self.d[t][t] < 0 {
                for j in 0..self.cols {
                    self.d[t][j] = -self.d[t][j];
                }
                for j in 0..self.rows {
                    self.u[t][j] = -self.u[t][j];
                }
            }
        }
    }
}

/// Computes the Smith normal form of a rectangular integer matrix.
pub fn smith_normal_form(m: &[Vec<i64>]) -> SmithForm {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    assert!(m.iter().all(|r| r.len() == cols), "ragged matrix");
    let mut r = Reducer {
        d: m.to_vec(),
        u: identity(rows),
        w: identity(cols),
        rows,
        cols,
    };
    r.reduce();
    SmithForm {
        left: r.u,
        diagonal: r.d,
        right: r.w,
    }
}
