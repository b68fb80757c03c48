//! Generalized quaternion algebras H(α,β) and the monic quadratic equation
//! x² + bx + c = 0 over them.
//!
//! The [`algebra`] module provides the arithmetic, [`solver`] classifies and
//! solves the equation over division algebras (α < 0, β < 0), [`realroots`]
//! supplies the resolvent-cubic root finder behind it, [`sequences`]
//! generates Fibonacci/Pell/Lucas quaternion coefficients, [`verify`] checks
//! roots independently, and [`cli`] is the command-line front end.

pub mod algebra;
pub mod cli;
pub mod realroots;
pub mod sequences;
pub mod solver;
pub mod verify;

pub use algebra::{AlgebraContext, AlgebraError, Quaternion};
pub use realroots::{ResolventCubic, RootResult};
pub use sequences::SequenceKind;
pub use solver::{
    solve, solve_report, EquationCase, QuadricFamily, ReducedEquation, Root, SolutionSet,
    SolveReport, SolverConfig, SolverError, WyPair,
};
pub use verify::{oracle_solve, residual, ResidualReport};
