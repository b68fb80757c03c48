//! Independent root verification.
//!
//! [`residual`] substitutes a candidate into x² + bx + c and reports the
//! backward error. [`oracle_solve`] ignores the closed-form machinery
//! entirely: it runs damped Newton on the equivalent four-equation real
//! system from many pseudo-random starting points and returns whatever
//! converged. It knows nothing about the solution structure, which is what
//! makes it a useful cross-check.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraContext, Quaternion};

/// Fixed seed for the oracle's starting points, so failures reproduce.
pub const ORACLE_SEED: u64 = 0x00c0_ffee_5eed_2024;

const MAX_NEWTON_ITER: usize = 80;
const MAX_HALVINGS: usize = 40;

/// Backward error of one candidate root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport {
    /// The quaternion value of x² + bx + c.
    pub residual: Quaternion,
    /// Its algebra norm.
    pub residual_norm: f64,
    /// max(1, norm(b)², norm(c)): the magnitude against which the norm
    /// should be judged.
    pub scale: f64,
}

pub fn residual(
    ctx: AlgebraContext,
    b: Quaternion,
    c: Quaternion,
    x: Quaternion,
) -> ResidualReport {
    let value = ctx.mul(x, x) + ctx.mul(b, x) + c;
    ResidualReport {
        residual: value,
        residual_norm: ctx.norm(value),
        scale: f64::max(1.0, f64::max(ctx.norm(b).powi(2), ctx.norm(c))),
    }
}

/// Matrix of h ↦ a·h on the (1, e1, e2, e3) coordinates.
fn left_mul_matrix(ctx: AlgebraContext, a: Quaternion) -> [[f64; 4]; 4] {
    let (al, be) = (ctx.alpha(), ctx.beta());
    let [a1, a2, a3, a4] = a.coords();
    [
        [a1, al * a2, be * a3, -al * be * a4],
        [a2, a1, be * a4, -be * a3],
        [a3, -al * a4, a1, al * a2],
        [a4, -a3, a2, a1],
    ]
}

/// Matrix of h ↦ h·a.
fn right_mul_matrix(ctx: AlgebraContext, a: Quaternion) -> [[f64; 4]; 4] {
    let (al, be) = (ctx.alpha(), ctx.beta());
    let [a1, a2, a3, a4] = a.coords();
    [
        [a1, al * a2, be * a3, -al * be * a4],
        [a2, a1, -be * a4, be * a3],
        [a3, al * a4, a1, -al * a2],
        [a4, a3, -a2, a1],
    ]
}

/// Gaussian elimination with partial pivoting; None when singular.
#[allow(clippy::needless_range_loop)]
fn solve4(mut m: [[f64; 4]; 4], mut rhs: [f64; 4]) -> Option<[f64; 4]> {
    for col in 0..4 {
        let pivot_row = (col..4)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap();
        if m[pivot_row][col].abs() < 1e-300 {
            return None;
        }
        m.swap(col, pivot_row);
        rhs.swap(col, pivot_row);
        for row in col + 1..4 {
            let factor = m[row][col] / m[col][col];
            for k in col..4 {
                m[row][k] -= factor * m[col][k];
            }
            rhs[row] -= factor * rhs[col];
        }
    }
    let mut x = [0.0; 4];
    for row in (0..4).rev() {
        let mut sum = rhs[row];
        for k in row + 1..4 {
            sum -= m[row][k] * x[k];
        }
        x[row] = sum / m[row][row];
    }
    Some(x)
}

fn merit(ctx: AlgebraContext, b: Quaternion, c: Quaternion, x: Quaternion) -> f64 {
    let value = ctx.mul(x, x) + ctx.mul(b, x) + c;
    value.coords().iter().map(|v| v * v).sum()
}

/// One damped Newton run. Returns a point only when the iteration truly
/// converged (vanishing step); stalled or diverging starts yield None.
fn newton_from(
    ctx: AlgebraContext,
    b: Quaternion,
    c: Quaternion,
    mut x: Quaternion,
) -> Option<Quaternion> {
    let mut current = merit(ctx, b, c, x);
    for _ in 0..MAX_NEWTON_ITER {
        let value = ctx.mul(x, x) + ctx.mul(b, x) + c;
        // d/dh (x² + bx + c) = xh + hx + bh.
        let lx = left_mul_matrix(ctx, x);
        let rx = right_mul_matrix(ctx, x);
        let lb = left_mul_matrix(ctx, b);
        let mut jac = [[0.0; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                jac[i][j] = lx[i][j] + rx[i][j] + lb[i][j];
            }
        }
        let mut neg = value.coords();
        for v in &mut neg {
            *v = -*v;
        }
        let step = solve4(jac, neg)?;
        let step = Quaternion::from_coords(step);
        if step.sup_norm() <= 1e-13 * f64::max(1.0, x.sup_norm()) {
            return Some(x + step);
        }

        let mut lambda = 1.0;
        let mut accepted = None;
        for _ in 0..=MAX_HALVINGS {
            let candidate = x + step.scale(lambda);
            let candidate_merit = merit(ctx, b, c, candidate);
            if candidate_merit < current {
                accepted = Some((candidate, candidate_merit));
                break;
            }
            lambda *= 0.5;
        }
        let (next, next_merit) = accepted?;
        x = next;
        current = next_merit;
    }
    None
}

/// Multi-start Newton on the real four-equation form of x² + bx + c = 0.
///
/// Starting points are uniform in [−R, R]⁴ with R = 2(1 + ‖b‖∞ + ‖c‖∞),
/// drawn from a fixed-seed generator. Converged points with
/// residual_norm ≤ tol·scale are deduplicated and returned sorted. No
/// completeness guarantee: a root can be missed if every start drains
/// elsewhere.
pub fn oracle_solve(
    ctx: AlgebraContext,
    b: Quaternion,
    c: Quaternion,
    starts: usize,
    tol: f64,
) -> Vec<Quaternion> {
    let radius = 2.0 * (1.0 + b.sup_norm() + c.sup_norm());
    let mut rng = ChaCha8Rng::seed_from_u64(ORACLE_SEED);
    let mut found: Vec<Quaternion> = Vec::new();

    for _ in 0..starts {
        let start = Quaternion::new(
            rng.random_range(-radius..=radius),
            rng.random_range(-radius..=radius),
            rng.random_range(-radius..=radius),
            rng.random_range(-radius..=radius),
        );
        let Some(x) = newton_from(ctx, b, c, start) else {
            continue;
        };
        let report = residual(ctx, b, c, x);
        if report.residual_norm <= tol * report.scale {
            found.push(x);
        }
    }

    found.sort_by(|p, q| {
        p.coords()
            .iter()
            .zip(q.coords())
            .map(|(a, b)| a.total_cmp(&b))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    // Converged copies of one root can interleave under the lexicographic
    // sort (tiny jitter in a leading coordinate), so compare each candidate
    // against every retained representative rather than its neighbor.
    let mut distinct: Vec<Quaternion> = Vec::new();
    for x in found {
        let duplicate = distinct.iter().any(|r| {
            (*r - x).sup_norm() <= 1e-7 * f64::max(1.0, r.sup_norm().max(x.sup_norm()))
        });
        if !duplicate {
            distinct.push(x);
        }
    }
    distinct
}
