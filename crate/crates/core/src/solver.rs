//! Solves the monic quadratic x² + bx + c = 0 with quaternion coefficients
//! over a division algebra H(α,β).
//!
//! The equation is classified by whether b and c are real. Real coefficient
//! pairs reduce to the classical formula or to an infinite quadric family.
//! Otherwise the equation is shifted by t = Re(b)/2 into b′ = Im(b),
//! c′ = c − t(b − t), whose invariants
//!
//!   A = |b′|² + 2Re(c′),  B = |c′|²,  C = 2Re(conj(b′)·c′)
//!
//! feed a small real system in (W, Y). Every root is assembled as
//! x = −t − (b′ + W)⁻¹(c′ − Y). A second, fully expanded component-wise
//! route computes the same roots and serves as a cross-check.

use thiserror::Error;

use crate::algebra::{AlgebraContext, AlgebraError, Quaternion};
use crate::realroots::{RealRootsError, ResolventCubic};

/// A coefficient counts as real when its imaginary part is this small
/// relative to the whole coefficient.
const REAL_COEFF_TOL: f64 = 1e-12;
/// C counts as zero below this, relative to max(1, |A|, √B).
const C_ZERO_TOL: f64 = 1e-10;
/// A² − 4B counts as zero below this, relative to max(1, A², B); the
/// double-Y boundary that makes the root unique.
const DISC_ZERO_TOL: f64 = 1e-9;
/// Marginally negative Y values above this (relative) are clamped to 0,
/// anything lower is discarded.
const Y_NEGATIVE_TOL: f64 = 1e-12;
/// Two assembled roots closer than this (relative) are the same root.
const DEDUP_TOL: f64 = 1e-9;

#[derive(Debug, Error, PartialEq)]
pub enum SolverError {
    #[error(
        "H({alpha},{beta}) is not a division algebra; the solver requires alpha < 0 and beta < 0"
    )]
    SplitAlgebraUnsupported { alpha: f64, beta: f64 },
    #[error(transparent)]
    Roots(#[from] RealRootsError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Which branch of the solution structure applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquationCase {
    /// b, c real with b² < 4c: a quadric's worth of solutions.
    RealSpherical,
    /// b, c real with b² ≥ 4c: the classical formula.
    RealClassical,
    /// b real, c not: handled through the (W, Y) system, which always
    /// lands in its W ≠ 0 branch here.
    RealBNonRealC,
    /// b not real: the general (W, Y) machinery.
    NonRealB,
}

impl EquationCase {
    pub fn name(&self) -> &'static str {
        match self {
            EquationCase::RealSpherical => "real_spherical",
            EquationCase::RealClassical => "real_classical",
            EquationCase::RealBNonRealC => "real_b_nonreal_c",
            EquationCase::NonRealB => "nonreal_b",
        }
    }
}

/// The real invariants controlling the (W, Y) system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Invariants {
    /// A = |b′|² + 2Re(c′)
    pub a: f64,
    /// B = |c′|² (nonnegative in a division algebra)
    pub b: f64,
    /// C = 2Re(conj(b′)·c′)
    pub c: f64,
}

/// The equation after the t = Re(b)/2 shift.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedEquation {
    pub t: f64,
    pub b_prime: Quaternion,
    pub c_prime: Quaternion,
    pub invariants: Invariants,
}

/// A real solution of the system Y² − (A + W²)Y + B = 0,
/// W³ + (A − 2Y)W + C = 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WyPair {
    pub w: f64,
    pub y: f64,
}

impl WyPair {
    /// Residuals of the two system equations; both should be ~0 for a
    /// valid pair.
    pub fn system_residuals(&self, inv: &Invariants) -> (f64, f64) {
        let (w, y) = (self.w, self.y);
        (
            y * y - (inv.a + w * w) * y + inv.b,
            w * w * w + (inv.a - 2.0 * y) * w + inv.c,
        )
    }
}

/// One root with the backward error of substituting it into the equation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: Quaternion,
    pub residual_norm: f64,
}

/// The infinite solution family of the real spherical case:
/// x = ½(−b + e·e1 + f·e2 + g·e3) with −α e² − β f² + αβ g² = rhs.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadricFamily {
    pub b: f64,
    pub c: f64,
    pub rhs: f64,
    pub representative: Root,
}

/// Every solution of one equation.
#[derive(Debug, Clone, PartialEq)]
pub enum SolutionSet {
    Finite(Vec<Root>),
    Quadric(QuadricFamily),
}

impl SolutionSet {
    pub fn roots(&self) -> Vec<Root> {
        match self {
            SolutionSet::Finite(roots) => roots.clone(),
            SolutionSet::Quadric(family) => vec![family.representative],
        }
    }
}

/// Tolerances threaded into the resolvent cubic root finder.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub newton_tol: f64,
    pub newton_max_iter: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            newton_tol: crate::realroots::DEFAULT_TOL,
            newton_max_iter: crate::realroots::DEFAULT_MAX_ITER,
        }
    }
}

/// Solution set plus every intermediate the caller may want to inspect.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub case: EquationCase,
    pub reduced: ReducedEquation,
    pub pairs: Vec<WyPair>,
    pub set: SolutionSet,
}

fn is_real(q: Quaternion) -> bool {
    q.im().sup_norm() <= REAL_COEFF_TOL * f64::max(1.0, q.sup_norm())
}

fn residual_norm_of(ctx: AlgebraContext, b: Quaternion, c: Quaternion, x: Quaternion) -> f64 {
    ctx.norm(ctx.mul(x, x) + ctx.mul(b, x) + c)
}

/// Shifts the equation by t = Re(b)/2 and computes the invariants with
/// algebra operations (not the expanded component formulas).
pub fn reduce(ctx: AlgebraContext, b: Quaternion, c: Quaternion) -> ReducedEquation {
    let t = b.re() / 2.0;
    let b_prime = b.im();
    let c_prime = c - (b - Quaternion::real(t)).scale(t);
    let invariants = Invariants {
        a: ctx.norm(b_prime) + 2.0 * c_prime.re(),
        b: ctx.norm(c_prime),
        c: 2.0 * ctx.mul(b_prime.conj(), c_prime).re(),
    };
    ReducedEquation {
        t,
        b_prime,
        c_prime,
        invariants,
    }
}

/// Decides which solution branch applies. Only division algebras are
/// supported.
pub fn classify(
    ctx: AlgebraContext,
    b: Quaternion,
    c: Quaternion,
) -> Result<EquationCase, SolverError> {
    if !ctx.is_division() {
        return Err(SolverError::SplitAlgebraUnsupported {
            alpha: ctx.alpha(),
            beta: ctx.beta(),
        });
    }
    Ok(match (is_real(b), is_real(c)) {
        (true, true) => {
            if b.q1 * b.q1 < 4.0 * c.q1 {
                EquationCase::RealSpherical
            } else {
                EquationCase::RealClassical
            }
        }
        (true, false) => EquationCase::RealBNonRealC,
        (false, _) => EquationCase::NonRealB,
    })
}

fn c_is_zero(inv: &Invariants) -> bool {
    inv.c.abs() <= C_ZERO_TOL * f64::max(1.0, f64::max(inv.a.abs(), inv.b.max(0.0).sqrt()))
}

/// All (W, Y) solutions of the system, in deterministic order.
///
/// Requires B ≥ 0 and, when A < 0, A² < 4B — both hold for invariants
/// produced by [`reduce`] in a division algebra. `tol` is the resolvent
/// cubic tolerance used when C ≠ 0.
pub fn resolve_wy(a: f64, b: f64, c: f64, tol: f64) -> Result<Vec<WyPair>, SolverError> {
    resolve_wy_with(a, b, c, tol, crate::realroots::DEFAULT_MAX_ITER)
}

fn resolve_wy_with(
    a: f64,
    b: f64,
    c: f64,
    tol: f64,
    max_iter: usize,
) -> Result<Vec<WyPair>, SolverError> {
    let b = b.max(0.0);
    let inv = Invariants { a, b, c };
    if c_is_zero(&inv) {
        let disc = a * a - 4.0 * b;
        if disc.abs() <= DISC_ZERO_TOL * f64::max(1.0, f64::max(a * a, b)) {
            // Double Y: the unique-solution boundary.
            return Ok(keep_nonnegative_y(vec![WyPair { w: 0.0, y: a / 2.0 }], a));
        }
        if disc > 0.0 {
            let s = disc.sqrt();
            let pairs = vec![
                WyPair {
                    w: 0.0,
                    y: (a + s) / 2.0,
                },
                WyPair {
                    w: 0.0,
                    y: (a - s) / 2.0,
                },
            ];
            return Ok(keep_nonnegative_y(pairs, a));
        }
        let y = b.sqrt();
        let w = (2.0 * y - a).max(0.0).sqrt();
        return Ok(vec![WyPair { w, y }, WyPair { w: -w, y }]);
    }

    let cubic = ResolventCubic::new(a, b, c)?;
    let z = cubic.positive_root(tol, max_iter)?.z;
    let w = z.sqrt();
    let y_at = |w: f64| (w * w * w + a * w + c) / (2.0 * w);
    Ok(vec![
        WyPair { w, y: y_at(w) },
        WyPair { w: -w, y: y_at(-w) },
    ])
}

fn keep_nonnegative_y(pairs: Vec<WyPair>, a: f64) -> Vec<WyPair> {
    let floor = -Y_NEGATIVE_TOL * f64::max(1.0, a.abs());
    pairs
        .into_iter()
        .filter(|p| p.y >= floor)
        .map(|p| WyPair {
            w: p.w,
            y: p.y.max(0.0),
        })
        .collect()
}

/// Assembles x = −t − (b′ + W)⁻¹(c′ − Y) with algebra operations.
pub fn assemble(
    ctx: AlgebraContext,
    red: &ReducedEquation,
    wy: WyPair,
) -> Result<Quaternion, SolverError> {
    let denom = red.b_prime + Quaternion::real(wy.w);
    let shifted = red.c_prime - Quaternion::real(wy.y);
    Ok(Quaternion::real(-red.t) - ctx.mul(ctx.inv(denom)?, shifted))
}

/// The same root through fully expanded component formulas, dividing by
/// m = |b′ + W|² = W² − αb₂² − βb₃² + αβb₄².
///
/// Agrees with [`assemble`] to ~1e−9 relative; kept as an independent
/// arithmetic route.
pub fn assemble_expanded(
    ctx: AlgebraContext,
    red: &ReducedEquation,
    wy: WyPair,
) -> Result<Quaternion, SolverError> {
    let (alpha, beta) = (ctx.alpha(), ctx.beta());
    let t = red.t;
    let (w, y) = (wy.w, wy.y);
    let [_, b2, b3, b4] = red.b_prime.coords();
    // Undo the shift: these are the original equation's c components.
    let [c1p, c2p, c3p, c4p] = red.c_prime.coords();
    let (c1, c2, c3, c4) = (c1p + t * t, c2p + t * b2, c3p + t * b3, c4p + t * b4);

    let m = w * w - alpha * b2 * b2 - beta * b3 * b3 + alpha * beta * b4 * b4;
    if m.abs() <= 1e-12 * f64::max(1.0, red.b_prime.sup_norm().powi(2) + w * w) {
        return Err(SolverError::Algebra(AlgebraError::NonInvertible {
            norm: m,
        }));
    }

    let x1 = -t
        - (w * c1 - y * w - alpha * b2 * c2 - beta * b3 * c3 + alpha * beta * b4 * c4
            - t * (w * t - alpha * b2 * b2 - beta * b3 * b3 + alpha * beta * b4 * b4))
            / m;
    let x2 = -(w * c2 - b2 * c1 + b2 * y + beta * b3 * c4 - beta * b4 * c3 - t * b2 * (w - t)) / m;
    let x3 =
        -(w * c3 - alpha * b2 * c4 - b3 * c1 + b3 * y + alpha * b4 * c2 - t * b3 * (w - t)) / m;
    let x4 = -(w * c4 - b2 * c3 + b3 * c2 - b4 * c1 + b4 * y - t * b4 * (w - t)) / m;

    Ok(Quaternion::new(x1, x2, x3, x4))
}

/// Real coefficients with b² ≥ 4c: the classical quadratic formula,
/// embedded back into the algebra.
pub fn solve_real_classical(b: f64, c: f64) -> SolutionSet {
    let disc = b * b - 4.0 * c;
    let scalar_root = |x: f64| {
        let value = x * x + b * x + c;
        Root {
            x: Quaternion::real(x),
            residual_norm: value * value,
        }
    };
    let roots = if disc == 0.0 {
        vec![scalar_root(-b / 2.0)]
    } else {
        let s = disc.sqrt();
        vec![scalar_root((-b + s) / 2.0), scalar_root((-b - s) / 2.0)]
    };
    SolutionSet::Finite(roots)
}

/// Real coefficients with b² < 4c: the full solution set is the quadric
/// −α e² − β f² + αβ g² = 4c − b² of imaginary directions. A concrete
/// representative (f = g = 0) is returned alongside the family.
pub fn solve_real_spherical(ctx: AlgebraContext, b: f64, c: f64) -> SolutionSet {
    let rhs = 4.0 * c - b * b;
    let e = (rhs / -ctx.alpha()).sqrt();
    let x = Quaternion::new(-b / 2.0, e / 2.0, 0.0, 0.0);
    let residual_norm = residual_norm_of(ctx, Quaternion::real(b), Quaternion::real(c), x);
    SolutionSet::Quadric(QuadricFamily {
        b,
        c,
        rhs,
        representative: Root { x, residual_norm },
    })
}

/// Full pipeline: classify, reduce, resolve (W, Y), assemble, and attach
/// residual norms. [`solve`] is the plain-solution-set wrapper.
pub fn solve_report(
    ctx: AlgebraContext,
    b: Quaternion,
    c: Quaternion,
    config: &SolverConfig,
) -> Result<SolveReport, SolverError> {
    let case = classify(ctx, b, c)?;
    let reduced = reduce(ctx, b, c);
    let (pairs, set) = match case {
        EquationCase::RealSpherical => (Vec::new(), solve_real_spherical(ctx, b.q1, c.q1)),
        EquationCase::RealClassical => (Vec::new(), solve_real_classical(b.q1, c.q1)),
        EquationCase::RealBNonRealC | EquationCase::NonRealB => {
            let inv = reduced.invariants;
            let pairs = resolve_wy_with(
                inv.a,
                inv.b,
                inv.c,
                config.newton_tol,
                config.newton_max_iter,
            )?;
            let mut roots = Vec::with_capacity(pairs.len());
            for wy in &pairs {
                let x = assemble(ctx, &reduced, *wy)?;
                roots.push(Root {
                    x,
                    residual_norm: residual_norm_of(ctx, b, c, x),
                });
            }
            dedup_roots(&mut roots);
            (pairs, SolutionSet::Finite(roots))
        }
    };
    Ok(SolveReport {
        case,
        reduced,
        pairs,
        set,
    })
}

/// All solutions of x² + bx + c = 0 over a division algebra.
pub fn solve(
    ctx: AlgebraContext,
    b: Quaternion,
    c: Quaternion,
) -> Result<SolutionSet, SolverError> {
    solve_report(ctx, b, c, &SolverConfig::default()).map(|report| report.set)
}

fn dedup_roots(roots: &mut Vec<Root>) {
    let mut i = 0;
    while i < roots.len() {
        let mut j = i + 1;
        while j < roots.len() {
            let scale = f64::max(1.0, roots[i].x.sup_norm().max(roots[j].x.sup_norm()));
            if (roots[i].x - roots[j].x).sup_norm() <= DEDUP_TOL * scale {
                roots.remove(j);
            } else {
                j += 1;
            }
        }
        i += 1;
    }
}
