//! Finds the unique positive root of the resolvent cubic
//! z³ + 2Az² + (A²−4B)z − C² with a bisection-safeguarded Newton iteration.
//!
//! With C ≠ 0 (and A² < 4B whenever A < 0) the cubic has exactly one positive
//! root, f(0) = −C² < 0, and f stays positive past the Cauchy-style bound
//! returned by [`ResolventCubic::bracket_hi`], so [0, hi] always brackets it.

use thiserror::Error;

pub const DEFAULT_TOL: f64 = 1e-13;
pub const DEFAULT_MAX_ITER: usize = 200;

#[derive(Debug, Error, PartialEq)]
pub enum RealRootsError {
    #[error("invalid resolvent cubic (A={a}, B={b}, C={c}): {reason}")]
    InvalidCubic {
        a: f64,
        b: f64,
        c: f64,
        reason: &'static str,
    },
    #[error("no convergence after {iterations} iterations (best z={z}, |f(z)|={residual:e})")]
    NoConvergence {
        z: f64,
        iterations: usize,
        residual: f64,
    },
}

/// The cubic z³ + 2Az² + (A²−4B)z − C² built from the reduced invariants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResolventCubic {
    a: f64,
    b: f64,
    c: f64,
}

impl ResolventCubic {
    /// Requires C ≠ 0 and, when A < 0, A² < 4B; these are the hypotheses
    /// under which the positive root exists and is unique.
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self, RealRootsError> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(RealRootsError::InvalidCubic {
                a,
                b,
                c,
                reason: "coefficients must be finite",
            });
        }
        if c == 0.0 {
            return Err(RealRootsError::InvalidCubic {
                a,
                b,
                c,
                reason: "C must be nonzero",
            });
        }
        if a < 0.0 && a * a >= 4.0 * b {
            return Err(RealRootsError::InvalidCubic {
                a,
                b,
                c,
                reason: "A < 0 requires A^2 < 4B",
            });
        }
        Ok(Self { a, b, c })
    }

    /// Polynomial value and derivative at z.
    pub fn eval(&self, z: f64) -> (f64, f64) {
        let lin = self.a * self.a - 4.0 * self.b;
        let f = ((z + 2.0 * self.a) * z + lin) * z - self.c * self.c;
        let fprime = (3.0 * z + 4.0 * self.a) * z + lin;
        (f, fprime)
    }

    /// An upper bracket endpoint: 1 + max(|2A|, |A²−4B|, |C²|) makes the
    /// leading term dominate, so f is positive there.
    pub fn bracket_hi(&self) -> f64 {
        let lin = self.a * self.a - 4.0 * self.b;
        1.0 + (2.0 * self.a).abs().max(lin.abs()).max(self.c * self.c)
    }

    /// The unique positive root.
    ///
    /// Newton steps start from the bracket midpoint; any step that would
    /// leave the current bracket, or that divides by a vanishing derivative,
    /// is replaced by bisection, so the bracket [lo, hi] with
    /// f(lo) ≤ 0 ≤ f(hi) only ever shrinks. Stops when
    /// |f(z)| ≤ tol·max(1, |f(0)|) or the iterate gap is ≤ tol·max(1, z).
    pub fn positive_root(&self, tol: f64, max_iter: usize) -> Result<RootResult, RealRootsError> {
        let f_scale = f64::max(1.0, self.c * self.c); // |f(0)| = C²
        let mut lo = 0.0;
        let mut hi = self.bracket_hi();
        let mut z = 0.5 * (lo + hi);

        for iterations in 1..=max_iter {
            let (f, fprime) = self.eval(z);
            if f.abs() <= tol * f_scale {
                return Ok(RootResult {
                    z,
                    iterations,
                    residual: f.abs(),
                });
            }
            if f <= 0.0 {
                lo = z;
            } else {
                hi = z;
            }

            let newton = z - f / fprime;
            let next = if fprime.abs() < 1e-300 || !(newton > lo && newton < hi) {
                0.5 * (lo + hi)
            } else {
                newton
            };
            if (next - z).abs() <= tol * f64::max(1.0, next) {
                let residual = self.eval(next).0.abs();
                return Ok(RootResult {
                    z: next,
                    iterations,
                    residual,
                });
            }
            z = next;
        }

        Err(RealRootsError::NoConvergence {
            z,
            iterations: max_iter,
            residual: self.eval(z).0.abs(),
        })
    }
}

/// Converged output of [`ResolventCubic::positive_root`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootResult {
    pub z: f64,
    pub iterations: usize,
    pub residual: f64,
}
