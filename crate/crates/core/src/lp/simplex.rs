use super::{LinearProgram, LpScalar, LpSolution, LpStatus, Relation};
use crate::error::{Error, Result};

const MAX_ITERATIONS: usize = 200_000;

struct Tableau<T> {
    rows: Vec<Vec<T>>,
    rhs: Vec<T>,
    basis: Vec<usize>,
    /// Reduced costs `c_j - c_B B^-1 A_j` for the current phase.
    reduced: Vec<T>,
    /// Columns allowed to enter the basis.
    eligible: Vec<bool>,
    iterations: usize,
}

impl<T: LpScalar> Tableau<T> {
    fn set_costs(&mut self, cost: &[T]) {
        self.reduced = cost.to_vec();
        for (r, row) in self.rows.iter().enumerate() {
            let cb = &cost[self.basis[r]];
            if cb.near_zero() {
                continue;
            }
            for (d, a) in self.reduced.iter_mut().zip(row) {
                *d = d.clone() - cb.clone() * a.clone();
            }
        }
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.rows[r][c].clone();
        for a in self.rows[r].iter_mut() {
            if !a.near_zero() {
                *a = a.clone() / p.clone();
            }
        }
        self.rhs[r] = self.rhs[r].clone() / p;
        let support: Vec<usize> = (0..self.rows[r].len()).filter(|&j| !self.rows[r][j].near_zero()).collect();
        let pivot_row = self.rows[r].clone();
        let pivot_rhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r {
                continue;
            }
            let f = self.rows[i][c].clone();
            if f.near_zero() {
                continue;
            }
            for &j in &support {
                self.rows[i][j] = self.rows[i][j].clone() - f.clone() * pivot_row[j].clone();
            }
            self.rows[i][c] = T::zero();
            self.rhs[i] = self.rhs[i].clone() - f * pivot_rhs.clone();
        }
        let f = self.reduced[c].clone();
        if !f.near_zero() {
            for &j in &support {
                self.reduced[j] = self.reduced[j].clone() - f.clone() * pivot_row[j].clone();
            }
            self.reduced[c] = T::zero();
        }
        self.basis[r] = c;
        self.iterations += 1;
    }

    /// Bland's rule: lowest eligible improving column, ratio ties to the
    /// lowest basic index. `Ok(false)` on unboundedness.
    fn optimize(&mut self) -> Result<bool> {
        loop {
            if self.iterations > MAX_ITERATIONS {
                return Err(Error::Lp("simplex iteration limit reached".into()));
            }
            let Some(c) = (0..self.reduced.len()).find(|&j| self.eligible[j] && self.reduced[j].is_pos()) else {
                return Ok(true);
            };
            let mut leave: Option<(usize, T)> = None;
            for r in 0..self.rows.len() {
                let a = &self.rows[r][c];
                if !a.is_pos() {
                    continue;
                }
                let ratio = self.rhs[r].clone() / a.clone();
                let better = match &leave {
                    None => true,
                    Some((lr, best)) => ratio < *best || (ratio == *best && self.basis[r] < self.basis[*lr]),
                };
                if better {
                    leave = Some((r, ratio));
                }
            }
            match leave {
                Some((r, _)) => self.pivot(r, c),
                None => return Ok(false),
            }
        }
    }
}

fn validate<T: LpScalar>(lp: &LinearProgram<T>) -> Result<()> {
    let n = lp.objective.len();
    if lp.upper_bounds.len() != n {
        return Err(Error::input(format!("{} upper bounds for {n} variables", lp.upper_bounds.len())));
    }
    for (r, c) in lp.constraints.iter().enumerate() {
        if c.coeffs.len() != n {
            return Err(Error::input(format!("row {r} has {} coefficients for {n} variables", c.coeffs.len())));
        }
        if !c.rhs.is_finite_value() || c.coeffs.iter().any(|a| !a.is_finite_value()) {
            return Err(Error::input(format!("row {r} has a non-finite coefficient")));
        }
    }
    if lp.objective.iter().chain(lp.upper_bounds.iter().flatten()).any(|a| !a.is_finite_value()) {
        return Err(Error::input("non-finite objective or bound"));
    }
    Ok(())
}

/// Solves `lp`. Malformed dimensions and numerical breakdown are errors;
/// infeasibility and unboundedness are statuses.
pub fn solve_lp<T: LpScalar>(lp: &LinearProgram<T>) -> Result<LpSolution<T>> {
    validate(lp)?;
    let n = lp.num_vars();

    // Rows: constraints, then upper bounds as `x_j <= u_j`.
    let mut rows: Vec<(Vec<T>, Relation, T)> =
        lp.constraints.iter().map(|c| (c.coeffs.clone(), c.relation, c.rhs.clone())).collect();
    let bounded: Vec<usize> = (0..n).filter(|&j| lp.upper_bounds[j].is_some()).collect();
    for &j in &bounded {
        let mut e = vec![T::zero(); n];
        e[j] = T::one();
        rows.push((e, Relation::Le, lp.upper_bounds[j].clone().expect("bounded")));
    }
    let m = rows.len();

    // Make every right-hand side non-negative.
    let mut sign = vec![T::one(); m];
    for (r, (coeffs, rel, rhs)) in rows.iter_mut().enumerate() {
        if rhs.is_neg() {
            sign[r] = -T::one();
            coeffs.iter_mut().for_each(|a| *a = -a.clone());
            *rhs = -rhs.clone();
            *rel = match *rel {
                Relation::Le => Relation::Ge,
                Relation::Ge => Relation::Le,
                Relation::Eq => Relation::Eq,
            };
        }
    }

    let slack_count = rows.iter().filter(|r| r.1 != Relation::Eq).count();
    let art_count = rows.iter().filter(|r| r.1 != Relation::Le).count();
    let width = n + slack_count + art_count;
    let art_start = n + slack_count;
    let mut table = Vec::with_capacity(m);
    let mut basis = Vec::with_capacity(m);
    let mut identity_col = Vec::with_capacity(m);
    let (mut next_slack, mut next_art) = (n, art_start);
    for (coeffs, rel, _) in &rows {
        let mut row = coeffs.clone();
        row.resize(width, T::zero());
        match rel {
            Relation::Le => {
                row[next_slack] = T::one();
                basis.push(next_slack);
                identity_col.push(next_slack);
                next_slack += 1;
            }
            Relation::Ge => {
                row[next_slack] = -T::one();
                next_slack += 1;
                row[next_art] = T::one();
                basis.push(next_art);
                identity_col.push(next_art);
                next_art += 1;
            }
            Relation::Eq => {
                row[next_art] = T::one();
                basis.push(next_art);
                identity_col.push(next_art);
                next_art += 1;
            }
        }
        table.push(row);
    }

    let mut t = Tableau {
        rows: table,
        rhs: rows.iter().map(|r| r.2.clone()).collect(),
        basis,
        reduced: Vec::new(),
        eligible: vec![true; width],
        iterations: 0,
    };
    let infeasible = |iterations| LpSolution {
        status: LpStatus::Infeasible,
        primal: Vec::new(),
        duals: Vec::new(),
        bound_duals: Vec::new(),
        objective: T::zero(),
        iterations,
    };

    if art_count > 0 {
        let mut phase1 = vec![T::zero(); width];
        phase1[art_start..].iter_mut().for_each(|c| *c = -T::one());
        t.set_costs(&phase1);
        t.optimize()?;
        let value =
            t.basis.iter().zip(&t.rhs).filter(|(&b, _)| b >= art_start).fold(T::zero(), |acc, (_, v)| acc + v.clone());
        if value.is_pos() {
            return Ok(infeasible(t.iterations));
        }
        // Pivot zero-level artificials out where a structural or slack column allows.
        for r in 0..m {
            if t.basis[r] < art_start {
                continue;
            }
            if let Some(j) = (0..art_start).find(|&j| !t.rows[r][j].near_zero()) {
                t.pivot(r, j);
            }
        }
        t.eligible[art_start..].iter_mut().for_each(|e| *e = false);
    }

    let mut cost = lp.objective.clone();
    cost.resize(width, T::zero());
    t.set_costs(&cost);
    if !t.optimize()? {
        return Ok(LpSolution {
            status: LpStatus::Unbounded,
            primal: Vec::new(),
            duals: Vec::new(),
            bound_duals: Vec::new(),
            objective: T::zero(),
            iterations: t.iterations,
        });
    }

    let mut x = vec![T::zero(); width];
    for (r, &b) in t.basis.iter().enumerate() {
        x[b] = t.rhs[r].clone();
    }
    x.truncate(n);
    if x.iter().any(LpScalar::is_neg) {
        return Err(Error::Lp("negative primal value after pivoting".into()));
    }
    let objective = lp.objective.iter().zip(&x).fold(T::zero(), |acc, (c, v)| acc + c.clone() * v.clone());
    // y_r = c_id - d_id with the identity column's cost zero in phase two.
    let y: Vec<T> = (0..m).map(|r| -(t.reduced[identity_col[r]].clone()) * sign[r].clone()).collect();
    let mut bound_duals = vec![T::zero(); n];
    for (k, &j) in bounded.iter().enumerate() {
        bound_duals[j] = y[lp.constraints.len() + k].clone();
    }
    Ok(LpSolution {
        status: LpStatus::Optimal,
        primal: x,
        duals: y[..lp.constraints.len()].to_vec(),
        bound_duals,
        objective,
        iterations: t.iterations,
    })
}
