//! Certified linear-programming bounds for integer interval tightening.
//!
//! Bounds on a coordinate over the polytope `{x : lo_i <= a_i . x <= hi_i}`
//! are computed with a floating-point revised simplex working on the dual:
//! any weight vector `w` with `sum_i w_i a_i = c` proves
//! `c . x <= sum_i w_i * side_i` where `side_i` is `hi_i` for `w_i > 0` and
//! `lo_i` otherwise. The float solution is only a *proposal*: each weight is
//! rounded to a dyadic rational and the residual `sum_i w_i a_i - c` is
//! recomputed exactly, so the final bound
//! `sum_i w_i side_i + sum_j |r_j| box_j` is valid in exact arithmetic no
//! matter how inaccurate the solver was. Infeasibility certificates (`c = 0`
//! with a negative bound) go through the same exact check.

/// One two-sided constraint `lo <= coeffs . x <= hi`.
pub(crate) struct LpRow {
    pub coeffs: Vec<i64>,
    pub lo: i128,
    pub hi: i128,
}

/// Scale of the dyadic rounding applied to dual weights before the exact
/// certification step.
const SHIFT: u32 = 30;

/// Dense revised simplex on the dual described in the module docs. The box
/// rows (one unit row per variable) are implicit and always come last, which
/// also provides a trivially feasible starting basis.
pub(crate) struct BoundProver {
    /// form rows; box rows are virtual indices `rows.len()..rows.len()+nv`
    rows: Vec<LpRow>,
    nv: usize,
    frows: Vec<Vec<f64>>,
}

/// Outcome of a certified bound query.
pub(crate) enum Certified {
    /// exact proof that `c . x <= bound` over the constraint polytope
    Upper(i128),
    /// no usable certificate (bound unimproved)
    Unknown,
}

impl BoundProver {
    pub fn new(rows: Vec<LpRow>, nv: usize) -> Self {
        let frows = rows.iter().map(|r| r.coeffs.iter().map(|&a| a as f64).collect()).collect();
        BoundProver { rows, nv, frows }
    }

    fn nrows(&self) -> usize {
        self.rows.len() + self.nv
    }

    /// cost of using row `row` with sign `sig` (weight `sig * y`, `y >= 0`)
    fn cost(&self, row: usize, sig: f64, bounds: &[(i64, i64)]) -> f64 {
        let (lo, hi) = if row < self.rows.len() {
            (self.rows[row].lo as f64, self.rows[row].hi as f64)
        } else {
            let (l, h) = bounds[row - self.rows.len()];
            (l as f64, h as f64)
        };
        if sig > 0.0 {
            hi
        } else {
            -lo
        }
    }

    /// Runs the float simplex for objective `c` (a +/-1 unit vector or zero
    /// with a seed column) and returns per-row dual weights, or None when no
    /// improving certificate was found.
    fn solve(&self, c: &[f64], bounds: &[(i64, i64)]) -> Option<Vec<f64>> {
        let nv = self.nv;
        let nr = self.nrows();
        let ncols = 2 * nr;
        // column 2*i is (+row i), column 2*i+1 is (-row i)
        let col_row = |s: usize| s / 2;
        let col_sig = |s: usize| if s % 2 == 0 { 1.0 } else { -1.0 };

        // starting basis: the box column of each variable, signed to make the
        // basic values |c_j| nonnegative
        let mut basis: Vec<usize> = (0..nv)
            .map(|j| {
                let row = self.rows.len() + j;
                if c[j] >= 0.0 {
                    2 * row
                } else {
                    2 * row + 1
                }
            })
            .collect();
        let mut in_basis = vec![false; ncols];
        for &s in &basis {
            in_basis[s] = true;
        }
        let mut binv: Vec<Vec<f64>> = (0..nv)
            .map(|i| {
                let mut e = vec![0.0; nv];
                e[i] = col_sig(basis[i]);
                e
            })
            .collect();
        let mut ybas: Vec<f64> = c.iter().map(|v| v.abs()).collect();

        let max_iters = 40 * (nv + self.rows.len());
        let bland_after = max_iters / 2;
        for iter in 0..max_iters {
            // dual prices u = cost_B^T * Binv
            let mut u = vec![0.0; nv];
            for (k, &s) in basis.iter().enumerate() {
                let ck = self.cost(col_row(s), col_sig(s), bounds);
                if ck != 0.0 {
                    for j in 0..nv {
                        u[j] += ck * binv[k][j];
                    }
                }
            }
            // pricing
            let mut enter: Option<(usize, f64)> = None;
            'cols: for s in 0..ncols {
                if in_basis[s] {
                    continue;
                }
                let row = col_row(s);
                let sig = col_sig(s);
                let mut ua = 0.0;
                if row < self.rows.len() {
                    for (j, &a) in self.frows[row].iter().enumerate() {
                        ua += u[j] * a;
                    }
                } else {
                    ua = u[row - self.rows.len()];
                }
                let rc = self.cost(row, sig, bounds) - sig * ua;
                if rc < -1e-7 {
                    if iter >= bland_after {
                        enter = Some((s, rc));
                        break 'cols;
                    }
                    if enter.map(|(_, b)| rc < b).unwrap_or(true) {
                        enter = Some((s, rc));
                    }
                }
            }
            let Some((s, _)) = enter else {
                // optimal: extract per-row weights
                let mut w = vec![0.0; nr];
                for (k, &b) in basis.iter().enumerate() {
                    w[col_row(b)] += col_sig(b) * ybas[k];
                }
                return Some(w);
            };
            // direction d = Binv * a_s
            let sig = col_sig(s);
            let row = col_row(s);
            let mut d = vec![0.0; nv];
            for (k, dk) in d.iter_mut().enumerate() {
                let mut acc = 0.0;
                if row < self.rows.len() {
                    for (j, &a) in self.frows[row].iter().enumerate() {
                        acc += binv[k][j] * a;
                    }
                } else {
                    acc = binv[k][row - self.rows.len()];
                }
                *dk = sig * acc;
            }
            // ratio test
            let mut leave: Option<(usize, f64)> = None;
            for k in 0..nv {
                if d[k] > 1e-9 {
                    let ratio = ybas[k] / d[k];
                    if leave.map(|(_, r)| ratio < r).unwrap_or(true) {
                        leave = Some((k, ratio));
                    }
                }
            }
            let Some((k, theta)) = leave else {
                // unbounded dual: Farkas ray (weights summing to the zero
                // functional with negative cost)
                let mut w = vec![0.0; nr];
                w[row] += sig;
                for (k, &b) in basis.iter().enumerate() {
                    w[col_row(b)] += col_sig(b) * -d[k];
                }
                return Some(w);
            };
            // pivot
            for i in 0..nv {
                if i != k {
                    ybas[i] -= theta * d[i];
                    if ybas[i] < 0.0 {
                        ybas[i] = 0.0;
                    }
                }
            }
            ybas[k] = theta;
            in_basis[basis[k]] = false;
            in_basis[s] = true;
            basis[k] = s;
            let piv = d[k];
            let scale: Vec<f64> = binv[k].iter().map(|x| x / piv).collect();
            for i in 0..nv {
                if i != k && d[i] != 0.0 {
                    for j in 0..nv {
                        binv[i][j] -= d[i] * scale[j];
                    }
                }
            }
            binv[k] = scale;
        }
        None
    }

    /// Verifies a proposed weight vector exactly and returns a certified
    /// upper bound on `c . x` over the polytope cut with `bounds`, or None
    /// when the proposal is numerically unusable.
    fn certify(&self, w: &[f64], c: &[i64], bounds: &[(i64, i64)]) -> Option<i128> {
        // dyadic rounding of the weights
        let scale = (1u64 << SHIFT) as f64;
        let mut wn = Vec::with_capacity(w.len());
        for &x in w {
            if !x.is_finite() || x.abs() > 1e12 {
                return None;
            }
            wn.push((x * scale).round() as i128);
        }
        // residual r = sum w_i a_i - c, times 2^SHIFT
        let mut r: Vec<i128> = c.iter().map(|&cj| -(cj as i128) << SHIFT).collect();
        for (i, &wi) in wn.iter().enumerate() {
            if wi == 0 {
                continue;
            }
            if i < self.rows.len() {
                for (j, &a) in self.rows[i].coeffs.iter().enumerate() {
                    r[j] += wi * a as i128;
                }
            } else {
                r[i - self.rows.len()] += wi;
            }
        }
        // bound = sum_i w_i side_i + sum_j |r_j| * max(|box_j|), times 2^SHIFT
        let mut num: i128 = 0;
        for (i, &wi) in wn.iter().enumerate() {
            if wi == 0 {
                continue;
            }
            let (lo, hi) = if i < self.rows.len() {
                (self.rows[i].lo, self.rows[i].hi)
            } else {
                let (l, h) = bounds[i - self.rows.len()];
                (l as i128, h as i128)
            };
            num = num.checked_add(wi.checked_mul(if wi > 0 { hi } else { lo })?)?;
        }
        for (j, &rj) in r.iter().enumerate() {
            let (l, h) = bounds[j];
            let m = (l as i128).abs().max((h as i128).abs());
            num = num.checked_add(rj.abs().checked_mul(m)?)?;
        }
        Some(num.div_euclid(1 << SHIFT) + if num.rem_euclid(1 << SHIFT) > 0 { 1 } else { 0 })
    }

    /// Certified upper bound for the single coordinate `var` (`negate` for a
    /// lower bound via `-x_var`), over the polytope cut with `bounds`.
    pub fn coordinate_bound(
        &self,
        var: usize,
        negate: bool,
        bounds: &[(i64, i64)],
    ) -> Certified {
        let mut c = vec![0.0; self.nv];
        c[var] = if negate { -1.0 } else { 1.0 };
        let Some(w) = self.solve(&c, bounds) else {
            return Certified::Unknown;
        };
        let mut ci = vec![0i64; self.nv];
        ci[var] = if negate { -1 } else { 1 };
        match self.certify(&w, &ci, bounds) {
            Some(b) => Certified::Upper(b),
            None => Certified::Unknown,
        }
    }

    /// Single-solve emptiness test: with a zero objective the dual is either
    /// bounded at zero (no information) or yields a Farkas ray whose exact
    /// certification proves `0 <= bound < 0`, i.e. the polytope is empty.
    pub fn certify_empty(&self, bounds: &[(i64, i64)]) -> bool {
        let c = vec![0.0; self.nv];
        let Some(w) = self.solve(&c, bounds) else {
            return false;
        };
        let ci = vec![0i64; self.nv];
        matches!(self.certify(&w, &ci, bounds), Some(b) if b < 0)
    }

    /// Tightens every variable interval with certified LP bounds; returns
    /// None when the polytope is certified empty.
    pub fn tighten(&self, bounds: &mut [(i64, i64)]) -> Option<bool> {
        let mut changed = false;
        for j in 0..self.nv {
            if bounds[j].0 >= bounds[j].1 {
                continue;
            }
            match self.coordinate_bound(j, false, bounds) {
                Certified::Upper(b) => {
                    let b = b.clamp(i64::MIN as i128, i64::MAX as i128) as i64;
                    if b < bounds[j].1 {
                        bounds[j].1 = b;
                        changed = true;
                    }
                    if bounds[j].0 > bounds[j].1 {
                        return None;
                    }
                }
                Certified::Unknown => {}
            }
            match self.coordinate_bound(j, true, bounds) {
                Certified::Upper(b) => {
                    let b = (-b).clamp(i64::MIN as i128, i64::MAX as i128) as i64;
                    if b > bounds[j].0 {
                        bounds[j].0 = b;
                        changed = true;
                    }
                    if bounds[j].0 > bounds[j].1 {
                        return None;
                    }
                }
                Certified::Unknown => {}
            }
        }
        Some(changed)
    }
}
