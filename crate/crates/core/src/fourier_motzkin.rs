//! Fourier–Motzkin elimination over exact rationals, for strict systems in
//! low dimension: feasibility with an interior witness, and recession-cone
//! probing for boundedness.

use crate::half::Rat;

fn zero() -> Rat {
    Rat::from_integer(0)
}

/// One constraint Σ coeffs·x (< | ≤) rhs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub coeffs: Vec<Rat>,
    pub rhs: Rat,
    pub strict: bool,
}

impl Constraint {
    pub fn new(coeffs: Vec<Rat>, rhs: Rat, strict: bool) -> Self {
        Constraint { coeffs, rhs, strict }
    }
}

/// A strictly interior point of the solution set, when nonempty.
pub fn feasible_point(constraints: &[Constraint], dim: usize) -> Option<Vec<Rat>> {
    if dim == 0 {
        return if constraints
            .iter()
            .all(|c| if c.strict { zero() < c.rhs } else { zero() <= c.rhs })
        {
            Some(Vec::new())
        } else {
            None
        };
    }
    let var = dim - 1;
    // split on the sign of the last coefficient
    let mut uppers: Vec<Constraint> = Vec::new(); // x_var (<|≤) expr
    let mut lowers: Vec<Constraint> = Vec::new(); // expr (<|≤) x_var
    let mut rest: Vec<Constraint> = Vec::new();
    for c in constraints {
        let a = c.coeffs[var];
        if a == zero() {
            rest.push(Constraint::new(c.coeffs[..var].to_vec(), c.rhs, c.strict));
        } else {
            let inv = Rat::from_integer(1) / a;
            let coeffs: Vec<Rat> = c.coeffs[..var].iter().map(|v| *v * inv).collect();
            let rhs = c.rhs * inv;
            if a > zero() {
                uppers.push(Constraint::new(coeffs, rhs, c.strict));
            } else {
                // dividing by a negative flips the sense: rhs (<|≤) x + coeffs·x'
                lowers.push(Constraint::new(coeffs, rhs, c.strict));
            }
        }
    }
    // every lower bound must sit under every upper bound
    let mut reduced = rest;
    for lo in &lowers {
        for up in &uppers {
            let coeffs: Vec<Rat> = lo
                .coeffs
                .iter()
                .zip(&up.coeffs)
                .map(|(l, u)| *l - *u)
                .collect();
            // lo.rhs - lo.coeffs·x' < up.rhs - up.coeffs·x'
            reduced.push(Constraint::new(
                coeffs.iter().map(|v| -*v).collect(),
                up.rhs - lo.rhs,
                lo.strict || up.strict,
            ));
        }
    }
    let inner = feasible_point(&reduced, dim - 1)?;
    let eval = |c: &Constraint| -> Rat {
        c.rhs - c.coeffs.iter().zip(&inner).map(|(a, x)| *a * *x).sum::<Rat>()
    };
    let hi = uppers.iter().map(|c| eval(c)).min();
    let lo = lowers.iter().map(|c| eval(c)).max();
    let value = match (lo, hi) {
        (None, None) => zero(),
        (Some(l), None) => l + Rat::from_integer(1),
        (None, Some(h)) => h - Rat::from_integer(1),
        (Some(l), Some(h)) => (l + h) / Rat::from_integer(2),
    };
    let mut out = inner;
    out.push(value);
    Some(out)
}

pub fn feasible(constraints: &[Constraint], dim: usize) -> bool {
    feasible_point(constraints, dim).is_some()
}

/// Whether the region has a nonzero recession direction, i.e. is unbounded.
/// Probes the weakened homogeneous system along ±e_j for every coordinate.
pub fn is_unbounded(constraints: &[Constraint], dim: usize) -> bool {
    for j in 0..dim {
        for sign in [1i64, -1] {
            // homogeneous weak system with d_j pinned to ±1; the pinned
            // coordinate's column is zeroed and stays free
            let sys: Vec<Constraint> = constraints
                .iter()
                .map(|c| {
                    let mut coeffs = c.coeffs.clone();
                    let pinned = coeffs[j] * Rat::from_integer(sign);
                    coeffs[j] = zero();
                    Constraint::new(coeffs, -pinned, false)
                })
                .collect();
            if feasible(&sys, dim) {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::half::rat;

    fn c(coeffs: &[i64], rhs: Rat, strict: bool) -> Constraint {
        Constraint::new(coeffs.iter().map(|&v| Rat::from_integer(v)).collect(), rhs, strict)
    }

    #[test]
    fn interval_feasibility() {
        // -3/2 < x < 3/2
        let sys = vec![c(&[1], rat(3, 2), true), c(&[-1], rat(3, 2), true)];
        let p = feasible_point(&sys, 1).unwrap();
        assert!(p[0] > rat(-3, 2) && p[0] < rat(3, 2));
        assert!(!is_unbounded(&sys, 1));
        // x > 2 is unbounded
        let sys = vec![c(&[-1], rat(-2, 1), true)];
        assert!(is_unbounded(&sys, 1));
    }

    #[test]
    fn empty_diamond_corner() {
        // x + y < 1, x > 1, y > 0 is empty
        let sys = vec![
            c(&[1, 1], rat(1, 1), true),
            c(&[-1, 0], rat(-1, 1), true),
            c(&[0, -1], rat(0, 1), true),
        ];
        assert!(feasible_point(&sys, 2).is_none());
    }

    #[test]
    fn triangle_is_bounded() {
        // x > 0, y > 0, x + y < 1
        let sys = vec![
            c(&[-1, 0], zero(), true),
            c(&[0, -1], zero(), true),
            c(&[1, 1], rat(1, 1), true),
        ];
        assert!(feasible(&sys, 2));
        assert!(!is_unbounded(&sys, 2));
        // half-strip x > 0, 0 < y < 1 is unbounded
        let sys = vec![
            c(&[-1, 0], zero(), true),
            c(&[0, -1], zero(), true),
            c(&[0, 1], rat(1, 1), true),
        ];
        assert!(is_unbounded(&sys, 2));
    }
}
