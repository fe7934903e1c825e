//! Exact rational linear programming over nonnegative variables.
//!
//! Two-phase tableau simplex with Bland's rule, so it terminates on any
//! input. Every answer carries evidence that can be checked without trusting
//! the solver: a point for feasibility, and a vector of row multipliers for
//! infeasibility or for an upper bound on the objective.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rational = BigRational;

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn integer(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    Le,
    Ge,
    Eq,
}

/// `Σ coeffs · x  (relation)  rhs`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Constraint {
    pub coeffs: Vec<(usize, Rational)>,
    pub relation: Relation,
    pub rhs: Rational,
}

impl Constraint {
    /// Merges repeated variables, drops zero coefficients and sorts by variable.
    pub fn new(coeffs: impl IntoIterator<Item = (usize, Rational)>, relation: Relation, rhs: Rational) -> Self {
        let mut merged: Vec<(usize, Rational)> = Vec::new();
        let mut all: Vec<(usize, Rational)> = coeffs.into_iter().collect();
        all.sort_by_key(|(v, _)| *v);
        for (v, c) in all {
            match merged.last_mut() {
                Some((lv, lc)) if *lv == v => *lc += c,
                _ => merged.push((v, c)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        Self {
            coeffs: merged,
            relation,
            rhs,
        }
    }

    pub fn lhs(&self, x: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .fold(Rational::zero(), |acc, (v, c)| acc + c * &x[*v])
    }

    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        let lhs = self.lhs(x);
        match self.relation {
            Relation::Le => lhs <= self.rhs,
            Relation::Ge => lhs >= self.rhs,
            Relation::Eq => lhs == self.rhs,
        }
    }
}

/// Constraints over variables `0..num_vars`, all implicitly `>= 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LinearSystem {
    pub num_vars: usize,
    pub constraints: Vec<Constraint>,
}

impl LinearSystem {
    pub fn new(num_vars: usize) -> Self {
        Self {
            num_vars,
            constraints: Vec::new(),
        }
    }

    pub fn push(&mut self, c: Constraint) -> usize {
        self.constraints.push(c);
        self.constraints.len() - 1
    }

    /// Index of the first violated constraint, or `None` when `x` is feasible.
    /// A negative coordinate is reported as `Some(usize::MAX)`.
    pub fn first_violation(&self, x: &[Rational]) -> Option<usize> {
        if x.len() != self.num_vars || x.iter().any(Signed::is_negative) {
            return Some(usize::MAX);
        }
        self.constraints.iter().position(|c| !c.is_satisfied_by(x))
    }

    pub fn is_satisfied_by(&self, x: &[Rational]) -> bool {
        self.first_violation(x).is_none()
    }
}

/// Row multipliers `m` with the sign of each row's relation (`>= 0` for
/// `<=`, `<= 0` for `>=`, free for `=`). If `mᵀA >= c` componentwise then
/// every feasible `x` has `c·x <= mᵀb`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub multipliers: Vec<Rational>,
}

impl Certificate {
    /// The bound `mᵀb` this certificate proves on `objective · x`, or `None`
    /// when the certificate is malformed for this system.
    pub fn bound(&self, sys: &LinearSystem, objective: &[(usize, Rational)]) -> Option<Rational> {
        if self.multipliers.len() != sys.constraints.len() {
            return None;
        }
        let mut combined = vec![Rational::zero(); sys.num_vars];
        let mut rhs = Rational::zero();
        for (m, c) in self.multipliers.iter().zip(&sys.constraints) {
            let sign_ok = match c.relation {
                Relation::Le => !m.is_negative(),
                Relation::Ge => !m.is_positive(),
                Relation::Eq => true,
            };
            if !sign_ok {
                return None;
            }
            if m.is_zero() {
                continue;
            }
            for (v, a) in &c.coeffs {
                combined[*v] += m * a;
            }
            rhs += m * &c.rhs;
        }
        let mut target = vec![Rational::zero(); sys.num_vars];
        for (v, c) in objective {
            target[*v] += c;
        }
        combined.iter().zip(&target).all(|(a, c)| a >= c).then_some(rhs)
    }

    /// Whether this certificate derives `0 <= negative`.
    pub fn proves_infeasible(&self, sys: &LinearSystem) -> bool {
        self.bound(sys, &[]).is_some_and(|b| b.is_negative())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Feasibility {
    Found(Vec<Rational>),
    Infeasible(Certificate),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Optimum {
    /// `point` attains `value`; `certificate` proves nothing feasible exceeds it.
    Optimal {
        point: Vec<Rational>,
        value: Rational,
        certificate: Certificate,
    },
    Infeasible(Certificate),
    Unbounded {
        point: Vec<Rational>,
    },
}

pub fn solve_feasibility(sys: &LinearSystem) -> Feasibility {
    match maximize(sys, &[]) {
        Optimum::Optimal { point, .. } | Optimum::Unbounded { point } => Feasibility::Found(point),
        Optimum::Infeasible(cert) => Feasibility::Infeasible(cert),
    }
}

/// Maximizes `objective · x` subject to `sys` and `x >= 0`.
pub fn maximize(sys: &LinearSystem, objective: &[(usize, Rational)]) -> Optimum {
    Tableau::new(sys).run(sys, objective)
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// `-1` where the row was negated to make its right-hand side nonnegative.
    flipped: Vec<bool>,
    num_vars: usize,
    first_artificial: usize,
    width: usize,
}

impl Tableau {
    fn new(sys: &LinearSystem) -> Self {
        let m = sys.constraints.len();
        let num_slack = sys.constraints.iter().filter(|c| c.relation != Relation::Eq).count();
        let first_artificial = sys.num_vars + num_slack;
        let width = first_artificial + m;
        let mut rows = Vec::with_capacity(m);
        let mut flipped = Vec::with_capacity(m);
        let mut slack = sys.num_vars;
        for (i, c) in sys.constraints.iter().enumerate() {
            let mut row = vec![Rational::zero(); width + 1];
            for (v, a) in &c.coeffs {
                row[*v] += a;
            }
            match c.relation {
                Relation::Le => {
                    row[slack] = Rational::one();
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -Rational::one();
                    slack += 1;
                }
                Relation::Eq => {}
            }
            row[width] = c.rhs.clone();
            let flip = c.rhs.is_negative();
            if flip {
                for e in row.iter_mut() {
                    *e = -&*e;
                }
            }
            row[first_artificial + i] = Rational::one();
            rows.push(row);
            flipped.push(flip);
        }
        Self {
            rows,
            basis: (first_artificial..width).collect(),
            flipped,
            num_vars: sys.num_vars,
            first_artificial,
            width,
        }
    }

    fn run(mut self, sys: &LinearSystem, objective: &[(usize, Rational)]) -> Optimum {
        // Phase 1: minimize the sum of artificials.
        let mut cost = vec![Rational::zero(); self.width];
        for c in &mut cost[self.first_artificial..] {
            *c = Rational::one();
        }
        let mut reduced = self.reduced_costs(&cost);
        self.optimize(&mut reduced, self.width);
        let infeasibility = self.objective_value(&cost);
        if infeasibility.is_positive() {
            // y_i = 1 - r(a_i); multipliers are -y, un-flipped.
            let multipliers = (0..self.rows.len())
                .map(|i| {
                    let y = Rational::one() - &reduced[self.first_artificial + i];
                    self.unflip(i, -y)
                })
                .collect();
            let cert = Certificate { multipliers };
            debug_assert!(cert.proves_infeasible(sys));
            return Optimum::Infeasible(cert);
        }
        self.drive_out_artificials();

        // Phase 2: minimize -objective; artificials may not re-enter.
        let mut cost = vec![Rational::zero(); self.width];
        for (v, c) in objective {
            cost[*v] -= c;
        }
        let mut reduced = self.reduced_costs(&cost);
        let bounded = self.optimize(&mut reduced, self.first_artificial);
        let point = self.point();
        if !bounded {
            return Optimum::Unbounded { point };
        }
        // y_i = -r(a_i); multipliers are -y, un-flipped.
        let multipliers = (0..self.rows.len())
            .map(|i| self.unflip(i, reduced[self.first_artificial + i].clone()))
            .collect();
        let value = -self.objective_value(&cost);
        let certificate = Certificate { multipliers };
        debug_assert_eq!(certificate.bound(sys, objective).as_ref(), Some(&value));
        Optimum::Optimal {
            point,
            value,
            certificate,
        }
    }

    fn unflip(&self, i: usize, v: Rational) -> Rational {
        if self.flipped[i] {
            -v
        } else {
            v
        }
    }

    fn reduced_costs(&self, cost: &[Rational]) -> Vec<Rational> {
        let mut r: Vec<Rational> = cost.to_vec();
        r.push(Rational::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (rj, a) in r.iter_mut().zip(row) {
                if !a.is_zero() {
                    *rj -= cb * a;
                }
            }
        }
        r
    }

    fn objective_value(&self, cost: &[Rational]) -> Rational {
        self.rows
            .iter()
            .zip(&self.basis)
            .fold(Rational::zero(), |acc, (row, &b)| acc + &cost[b] * &row[self.width])
    }

    /// Bland's rule pivoting on columns `0..limit`. Returns false if unbounded.
    fn optimize(&mut self, reduced: &mut Vec<Rational>, limit: usize) -> bool {
        loop {
            let Some(enter) = (0..limit).find(|&j| reduced[j].is_negative()) else {
                return true;
            };
            let mut leave: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[self.width] / &row[enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && self.basis[i] < self.basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((pivot_row, _)) = leave else {
                return false;
            };
            self.pivot(pivot_row, enter, reduced);
        }
    }

    fn pivot(&mut self, r: usize, c: usize, reduced: &mut Vec<Rational>) {
        let inv = Rational::one() / &self.rows[r][c];
        for e in self.rows[r].iter_mut() {
            if !e.is_zero() {
                *e *= &inv;
            }
        }
        let pivot_row = core::mem::take(&mut self.rows[r]);
        let nonzero: Vec<usize> = (0..pivot_row.len()).filter(|&j| !pivot_row[j].is_zero()).collect();
        for row in self.rows.iter_mut().chain(core::iter::once(&mut *reduced)) {
            if row.is_empty() || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &nonzero {
                row[j] -= &f * &pivot_row[j];
            }
        }
        self.rows[r] = pivot_row;
        self.basis[r] = c;
    }

    /// Replaces zero-level basic artificials by real columns where possible.
    /// Rows with no real entries are redundant and keep their artificial.
    fn drive_out_artificials(&mut self) {
        let mut scratch = vec![Rational::zero(); self.width + 1];
        for r in 0..self.rows.len() {
            if self.basis[r] < self.first_artificial {
                continue;
            }
            if let Some(c) = (0..self.first_artificial).find(|&j| !self.rows[r][j].is_zero()) {
                self.pivot(r, c, &mut scratch);
            }
        }
    }

    fn point(&self) -> Vec<Rational> {
        let mut x = vec![Rational::zero(); self.num_vars];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b < self.num_vars {
                x[b] = row[self.width].clone();
            }
        }
        x
    }
}
