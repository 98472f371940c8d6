//! Revised simplex for packing LPs `max 1.y  s.t.  A y <= cap, y >= 0` where
//! every column of `A` is a 0/1 indicator of a row subset.
//!
//! The basis inverse is kept explicitly and refactored periodically. Pivoting
//! follows Bland's rule, so the method terminates under degeneracy.

const PRICE_EPS: f64 = 1e-12;
const PIVOT_EPS: f64 = 1e-11;

#[derive(Clone, Debug)]
pub(crate) struct PackingLp {
    m: usize,
    cap: Vec<f64>,
    /// Rows covered by column `j`; its variable index is `m + j`.
    cols: Vec<Vec<usize>>,
    /// Variable basic in each row.
    basis: Vec<usize>,
    /// Row of each basic variable, `usize::MAX` when nonbasic.
    row_of: Vec<usize>,
    binv: Vec<f64>,
    xb: Vec<f64>,
    since_refactor: usize,
    pub pivots: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) enum Step {
    Optimal,
    Pivoted,
}

impl PackingLp {
    pub fn new(cap: Vec<f64>) -> Self {
        let m = cap.len();
        let mut binv = vec![0.0; m * m];
        for i in 0..m {
            binv[i * m + i] = 1.0;
        }
        Self {
            m,
            xb: cap.clone(),
            cap,
            cols: Vec::new(),
            basis: (0..m).collect(),
            row_of: (0..m).collect(),
            binv,
            since_refactor: 0,
            pivots: 0,
        }
    }

    /// Adds a nonbasic column; the current basis stays feasible.
    pub fn add_column(&mut self, rows: Vec<usize>) -> usize {
        debug_assert!(!rows.is_empty());
        self.cols.push(rows);
        self.row_of.push(usize::MAX);
        self.cols.len() - 1
    }

    fn obj(&self, var: usize) -> f64 {
        if var < self.m {
            0.0
        } else {
            1.0
        }
    }

    /// Simplex multipliers `c_B B^-1`.
    pub fn duals(&self) -> Vec<f64> {
        let m = self.m;
        let mut pi = vec![0.0; m];
        for (i, &var) in self.basis.iter().enumerate() {
            if var >= m {
                let row = &self.binv[i * m..(i + 1) * m];
                for (p, b) in pi.iter_mut().zip(row) {
                    *p += b;
                }
            }
        }
        pi
    }

    pub fn objective(&self) -> f64 {
        self.basis
            .iter()
            .zip(&self.xb)
            .map(|(&var, &v)| self.obj(var) * v)
            .sum()
    }

    fn reduced_cost(&self, var: usize, pi: &[f64]) -> f64 {
        if var < self.m {
            -pi[var]
        } else {
            1.0 - self.cols[var - self.m].iter().map(|&r| pi[r]).sum::<f64>()
        }
    }

    fn ftran(&self, var: usize) -> Vec<f64> {
        let m = self.m;
        let mut u = vec![0.0; m];
        let rows: &[usize] = if var < m {
            std::slice::from_ref(&var)
        } else {
            &self.cols[var - m]
        };
        for i in 0..m {
            let row = &self.binv[i * m..(i + 1) * m];
            u[i] = rows.iter().map(|&r| row[r]).sum();
        }
        u
    }

    /// One Bland pivot, or `Optimal` when no column prices out.
    pub fn step(&mut self) -> Step {
        let pi = self.duals();
        let total = self.m + self.cols.len();
        let Some(enter) = (0..total)
            .filter(|&v| self.row_of[v] == usize::MAX)
            .find(|&v| self.reduced_cost(v, &pi) > PRICE_EPS)
        else {
            return Step::Optimal;
        };
        self.pivot_in(enter);
        Step::Pivoted
    }

    /// Pivots `enter` into the basis by the ratio test, ties to the smallest
    /// leaving variable index. Returns false if the column is unbounded.
    fn pivot_in(&mut self, enter: usize) -> bool {
        let u = self.ftran(enter);
        let mut leave: Option<(usize, f64)> = None;
        for i in 0..self.m {
            if u[i] > PIVOT_EPS {
                let ratio = self.xb[i].max(0.0) / u[i];
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((r, best)) => {
                        if ratio < best - 1e-12
                            || (ratio <= best + 1e-12 && self.basis[i] < self.basis[r])
                        {
                            Some((i, ratio))
                        } else {
                            Some((r, best))
                        }
                    }
                };
            }
        }
        // Packing columns are nonnegative with at least one row, so the
        // ratio test always finds a row.
        let Some((r, _)) = leave else {
            return false;
        };
        let m = self.m;
        let piv = u[r];
        for j in 0..m {
            self.binv[r * m + j] /= piv;
        }
        self.xb[r] /= piv;
        for i in 0..m {
            if i != r && u[i] != 0.0 {
                let f = u[i];
                for j in 0..m {
                    self.binv[i * m + j] -= f * self.binv[r * m + j];
                }
                self.xb[i] -= f * self.xb[r];
            }
        }
        self.row_of[self.basis[r]] = usize::MAX;
        self.basis[r] = enter;
        self.row_of[enter] = r;
        self.pivots += 1;
        self.since_refactor += 1;
        if self.since_refactor >= m.max(64) {
            self.refactor();
        }
        true
    }

    /// Forces a nonbasic column with positive reduced cost into the basis.
    pub fn force_enter(&mut self, j: usize) -> bool {
        let var = self.m + j;
        self.row_of[var] == usize::MAX && self.pivot_in(var)
    }

    /// Recomputes `B^-1` and the basic values from scratch by Gauss-Jordan
    /// elimination with partial pivoting.
    pub fn refactor(&mut self) {
        let m = self.m;
        self.since_refactor = 0;
        if m == 0 {
            return;
        }
        let mut a = vec![0.0f64; m * m];
        for (i, &var) in self.basis.iter().enumerate() {
            if var < m {
                a[var * m + i] = 1.0;
            } else {
                for &r in &self.cols[var - m] {
                    a[r * m + i] = 1.0;
                }
            }
        }
        let mut inv = vec![0.0; m * m];
        for i in 0..m {
            inv[i * m + i] = 1.0;
        }
        for c in 0..m {
            let p = (c..m)
                .max_by(|&x, &y| a[x * m + c].abs().total_cmp(&a[y * m + c].abs()))
                .expect("nonempty range");
            if a[p * m + c].abs() < 1e-12 {
                // Singular in floating point; keep the updated inverse.
                return;
            }
            if p != c {
                for j in 0..m {
                    a.swap(p * m + j, c * m + j);
                    inv.swap(p * m + j, c * m + j);
                }
            }
            let d = a[c * m + c];
            for j in 0..m {
                a[c * m + j] /= d;
                inv[c * m + j] /= d;
            }
            for i in 0..m {
                let f = a[i * m + c];
                if i != c && f != 0.0 {
                    for j in 0..m {
                        a[i * m + j] -= f * a[c * m + j];
                        inv[i * m + j] -= f * inv[c * m + j];
                    }
                }
            }
        }
        self.binv = inv;
        for i in 0..m {
            let row = &self.binv[i * m..(i + 1) * m];
            let v: f64 = row.iter().zip(&self.cap).map(|(b, c)| b * c).sum();
            self.xb[i] = if v.abs() < 1e-12 { 0.0 } else { v };
        }
    }

    /// Runs pivots until optimal.
    pub fn solve(&mut self) {
        while self.step() == Step::Pivoted {}
    }
}
