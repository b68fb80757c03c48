//! Python bindings.
//!
//! Quaternions cross the boundary as plain 4-tuples of floats on the basis
//! (1, e1, e2, e3). The `Algebra` class carries (alpha, beta) and exposes
//! the arithmetic, the quadratic solver, and the verification helpers.

use pyo3::exceptions::{PyOverflowError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;

use genquat::algebra::{AlgebraContext, Quaternion};
use genquat::sequences::{self, SequenceKind};
use genquat::solver::{self, SolutionSet, SolverConfig};
use genquat::verify;

type Quad = (f64, f64, f64, f64);

fn to_quat(q: Quad) -> Quaternion {
    Quaternion::new(q.0, q.1, q.2, q.3)
}

fn from_quat(q: Quaternion) -> Quad {
    (q.q1, q.q2, q.q3, q.q4)
}

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// The generalized quaternion algebra H(alpha, beta) with e1^2 = alpha,
/// e2^2 = beta, e3^2 = -alpha*beta.
#[pyclass]
struct Algebra {
    ctx: AlgebraContext,
}

#[pymethods]
impl Algebra {
    #[new]
    fn new(alpha: f64, beta: f64) -> PyResult<Self> {
        let ctx = AlgebraContext::new(alpha, beta).map_err(value_error)?;
        Ok(Self { ctx })
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.ctx.alpha()
    }

    #[getter]
    fn beta(&self) -> f64 {
        self.ctx.beta()
    }

    /// True when every nonzero element is invertible (alpha < 0, beta < 0).
    fn is_division(&self) -> bool {
        self.ctx.is_division()
    }

    fn add(&self, p: Quad, q: Quad) -> Quad {
        from_quat(to_quat(p) + to_quat(q))
    }

    fn mul(&self, p: Quad, q: Quad) -> Quad {
        from_quat(self.ctx.mul(to_quat(p), to_quat(q)))
    }

    fn conj(&self, q: Quad) -> Quad {
        from_quat(to_quat(q).conj())
    }

    fn norm(&self, q: Quad) -> f64 {
        self.ctx.norm(to_quat(q))
    }

    fn trace(&self, q: Quad) -> f64 {
        to_quat(q).trace()
    }

    fn scale(&self, s: f64, q: Quad) -> Quad {
        from_quat(to_quat(q).scale(s))
    }

    fn inv(&self, q: Quad) -> PyResult<Quad> {
        self.ctx.inv(to_quat(q)).map(from_quat).map_err(value_error)
    }

    fn symm_product(&self, p: Quad, q: Quad) -> Quad {
        from_quat(self.ctx.symm_product(to_quat(p), to_quat(q)))
    }

    /// Solves x^2 + b*x + c = 0 and returns a dict with the case name, the
    /// invariants A/B/C, the (W, Y) pairs, the solutions, and their
    /// residual norms. Infinite families carry a "family" entry.
    #[pyo3(signature = (b, c, tol=None))]
    fn solve<'py>(
        &self,
        py: Python<'py>,
        b: Quad,
        c: Quad,
        tol: Option<f64>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let mut config = SolverConfig::default();
        if let Some(tol) = tol {
            config.newton_tol = tol;
        }
        let report =
            solver::solve_report(self.ctx, to_quat(b), to_quat(c), &config).map_err(value_error)?;

        let dict = PyDict::new(py);
        dict.set_item("case", report.case.name())?;
        dict.set_item("A", report.reduced.invariants.a)?;
        dict.set_item("B", report.reduced.invariants.b)?;
        dict.set_item("C", report.reduced.invariants.c)?;
        dict.set_item("W", report.pairs.iter().map(|p| p.w).collect::<Vec<_>>())?;
        dict.set_item("Y", report.pairs.iter().map(|p| p.y).collect::<Vec<_>>())?;
        let roots = report.set.roots();
        dict.set_item(
            "solutions",
            roots.iter().map(|r| from_quat(r.x)).collect::<Vec<_>>(),
        )?;
        dict.set_item(
            "residual_norms",
            roots.iter().map(|r| r.residual_norm).collect::<Vec<_>>(),
        )?;
        if let SolutionSet::Quadric(family) = &report.set {
            let fam = PyDict::new(py);
            fam.set_item("constraint", "-alpha*e^2 - beta*f^2 + alpha*beta*g^2")?;
            fam.set_item("rhs", family.rhs)?;
            dict.set_item("family", fam)?;
        }
        Ok(dict)
    }

    /// Substitutes x into x^2 + b*x + c and returns
    /// (residual_quaternion, residual_norm, scale).
    fn residual(&self, b: Quad, c: Quad, x: Quad) -> (Quad, f64, f64) {
        let report = verify::residual(self.ctx, to_quat(b), to_quat(c), to_quat(x));
        (
            from_quat(report.residual),
            report.residual_norm,
            report.scale,
        )
    }

    /// Multi-start Newton roots of the expanded real system; an
    /// independent check on `solve`.
    #[pyo3(signature = (b, c, starts=48, tol=1e-10))]
    fn oracle_roots(&self, b: Quad, c: Quad, starts: usize, tol: f64) -> Vec<Quad> {
        verify::oracle_solve(self.ctx, to_quat(b), to_quat(c), starts, tol)
            .into_iter()
            .map(from_quat)
            .collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "Algebra(alpha={}, beta={})",
            self.ctx.alpha(),
            self.ctx.beta()
        )
    }
}

fn parse_kind(kind: &str) -> PyResult<SequenceKind> {
    SequenceKind::parse(kind).ok_or_else(|| {
        PyValueError::new_err(format!(
            "unknown sequence `{kind}` (use fib, pell, or lucas)"
        ))
    })
}

/// The n-th Fibonacci/Pell/Lucas number, exactly representable as a float.
#[pyfunction]
fn sequence_scalar(kind: &str, n: usize) -> PyResult<f64> {
    sequences::scalar_term(parse_kind(kind)?, n)
        .map_err(|e| PyOverflowError::new_err(e.to_string()))
}

/// The quaternion of four consecutive sequence terms starting at index n.
#[pyfunction]
fn sequence_quaternion(kind: &str, n: usize) -> PyResult<Quad> {
    sequences::quaternion_term(parse_kind(kind)?, n)
        .map(from_quat)
        .map_err(|e| PyOverflowError::new_err(e.to_string()))
}

#[pymodule]
fn genquat_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<Algebra>()?;
    m.add_function(wrap_pyfunction!(sequence_scalar, m)?)?;
    m.add_function(wrap_pyfunction!(sequence_quaternion, m)?)?;
    Ok(())
}
