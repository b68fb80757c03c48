//! Arithmetic in the generalized quaternion algebra H(α,β).
//!
//! Elements are written on the basis (1, e1, e2, e3) with the relations
//! e1² = α, e2² = β, e3² = −αβ, e1e2 = e3 = −e2e1. The pair (α, β) lives in
//! an [`AlgebraContext`] that is passed to every operation whose result
//! depends on it, so values built for different algebras cannot be mixed
//! by accident.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use thiserror::Error;

/// Relative threshold below which a norm is considered zero by [`AlgebraContext::inv`].
const INVERTIBILITY_TOL: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum AlgebraError {
    #[error("algebra parameters must be finite and nonzero (alpha={alpha}, beta={beta})")]
    InvalidParameters { alpha: f64, beta: f64 },
    #[error("quaternion is not invertible (norm {norm:e})")]
    NonInvertible { norm: f64 },
}

/// The pair (α, β) selecting one algebra from the H(α,β) family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AlgebraContext {
    alpha: f64,
    beta: f64,
}

impl AlgebraContext {
    pub fn new(alpha: f64, beta: f64) -> Result<Self, AlgebraError> {
        if !alpha.is_finite() || !beta.is_finite() || alpha == 0.0 || beta == 0.0 {
            return Err(AlgebraError::InvalidParameters { alpha, beta });
        }
        Ok(Self { alpha, beta })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// True iff the norm form is definite, i.e. every nonzero element has an
    /// inverse. Holds exactly when α < 0 and β < 0.
    pub fn is_division(&self) -> bool {
        self.alpha < 0.0 && self.beta < 0.0
    }

    /// Product of two quaternions under the e1² = α, e2² = β table.
    pub fn mul(&self, p: Quaternion, q: Quaternion) -> Quaternion {
        let (a, b) = (self.alpha, self.beta);
        Quaternion {
            q1: p.q1 * q.q1 + a * p.q2 * q.q2 + b * p.q3 * q.q3 - a * b * p.q4 * q.q4,
            q2: p.q1 * q.q2 + p.q2 * q.q1 - b * p.q3 * q.q4 + b * p.q4 * q.q3,
            q3: p.q1 * q.q3 + a * p.q2 * q.q4 + p.q3 * q.q1 - a * p.q4 * q.q2,
            q4: p.q1 * q.q4 + p.q2 * q.q3 - p.q3 * q.q2 + p.q4 * q.q1,
        }
    }

    /// The norm form q1² − αq2² − βq3² + αβq4², equal to q·conj(q).
    pub fn norm(&self, q: Quaternion) -> f64 {
        q.q1 * q.q1 - self.alpha * q.q2 * q.q2 - self.beta * q.q3 * q.q3
            + self.alpha * self.beta * q.q4 * q.q4
    }

    /// Inverse conj(q)/norm(q).
    ///
    /// Fails when |norm| ≤ 1e−12·max(1, ‖q‖∞²): always for q = 0, and for
    /// nonzero q only in split algebras where the norm form has zeros.
    pub fn inv(&self, q: Quaternion) -> Result<Quaternion, AlgebraError> {
        let n = self.norm(q);
        let s = q.sup_norm();
        if n.abs() <= INVERTIBILITY_TOL * f64::max(1.0, s * s) {
            return Err(AlgebraError::NonInvertible { norm: n });
        }
        Ok(q.conj().scale(1.0 / n))
    }

    /// Symmetrized product (qr + rq)/2.
    pub fn symm_product(&self, q: Quaternion, r: Quaternion) -> Quaternion {
        (self.mul(q, r) + self.mul(r, q)).scale(0.5)
    }
}

/// A quaternion q1 + q2·e1 + q3·e2 + q4·e3 with real coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
    pub q4: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const E1: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const E2: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const E3: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(q1: f64, q2: f64, q3: f64, q4: f64) -> Self {
        Self { q1, q2, q3, q4 }
    }

    /// Embeds a real number as a scalar quaternion.
    pub const fn real(s: f64) -> Self {
        Self::new(s, 0.0, 0.0, 0.0)
    }

    /// The scalar part Re(q) = q1.
    pub fn re(&self) -> f64 {
        self.q1
    }

    /// The imaginary part q − Re(q).
    pub fn im(&self) -> Quaternion {
        Quaternion::new(0.0, self.q2, self.q3, self.q4)
    }

    /// Conjugate: sign of the imaginary part flipped.
    pub fn conj(&self) -> Quaternion {
        Quaternion::new(self.q1, -self.q2, -self.q3, -self.q4)
    }

    /// Trace q + conj(q), a real scalar equal to 2·q1.
    pub fn trace(&self) -> f64 {
        2.0 * self.q1
    }

    pub fn scale(&self, s: f64) -> Quaternion {
        Quaternion::new(s * self.q1, s * self.q2, s * self.q3, s * self.q4)
    }

    /// Largest coefficient magnitude; the scale used by tolerance checks.
    pub fn sup_norm(&self) -> f64 {
        self.q1
            .abs()
            .max(self.q2.abs())
            .max(self.q3.abs())
            .max(self.q4.abs())
    }

    pub fn coords(&self) -> [f64; 4] {
        [self.q1, self.q2, self.q3, self.q4]
    }

    pub fn from_coords(c: [f64; 4]) -> Self {
        Self::new(c[0], c[1], c[2], c[3])
    }
}

impl Add for Quaternion {
    type Output = Quaternion;

    fn add(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(
            self.q1 + rhs.q1,
            self.q2 + rhs.q2,
            self.q3 + rhs.q3,
            self.q4 + rhs.q4,
        )
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;

    fn sub(self, rhs: Quaternion) -> Quaternion {
        Quaternion::new(
            self.q1 - rhs.q1,
            self.q2 - rhs.q2,
            self.q3 - rhs.q3,
            self.q4 - rhs.q4,
        )
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;

    fn neg(self) -> Quaternion {
        self.scale(-1.0)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:+} e_1{:+} e_2{:+} e_3",
            self.q1, self.q2, self.q3, self.q4
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn quat(q1: f64, q2: f64, q3: f64, q4: f64) -> Quaternion {
        Quaternion::new(q1, q2, q3, q4)
    }

    fn hamilton() -> AlgebraContext {
        AlgebraContext::new(-1.0, -1.0).unwrap()
    }

    fn close(p: Quaternion, q: Quaternion, tol: f64) -> bool {
        (p - q).sup_norm() <= tol * f64::max(1.0, p.sup_norm().max(q.sup_norm()))
    }

    #[test]
    fn context_rejects_bad_parameters() {
        assert!(AlgebraContext::new(0.0, -1.0).is_err());
        assert!(AlgebraContext::new(-1.0, 0.0).is_err());
        assert!(AlgebraContext::new(f64::NAN, -1.0).is_err());
        assert!(AlgebraContext::new(-1.0, f64::INFINITY).is_err());
        assert!(AlgebraContext::new(-1.0, -1.0).unwrap().is_division());
        assert!(!AlgebraContext::new(1.0, -1.0).unwrap().is_division());
        assert!(!AlgebraContext::new(-1.0, 2.0).unwrap().is_division());
    }

    #[test]
    fn addition_is_componentwise() {
        assert_eq!(
            quat(1.0, 2.0, 3.0, 4.0) + Quaternion::ZERO,
            quat(1.0, 2.0, 3.0, 4.0)
        );
        assert_eq!(
            quat(1.0, 0.0, 1.0, 0.0) + quat(0.0, 1.0, 0.0, 1.0),
            quat(1.0, 1.0, 1.0, 1.0)
        );
        assert_eq!(
            quat(1.0, -2.0, 0.5, 3.0) + quat(4.0, 2.0, 0.5, -1.0),
            quat(5.0, 0.0, 1.0, 2.0)
        );
    }

    #[test]
    fn basis_products_follow_the_table() {
        let ctx = hamilton();
        assert_eq!(ctx.mul(Quaternion::E1, Quaternion::E2), Quaternion::E3);
        assert_eq!(ctx.mul(Quaternion::E2, Quaternion::E1), -Quaternion::E3);

        // e1² = α, e2² = β, e3² = −αβ, e1e3 = αe2, e3e1 = −αe2,
        // e2e3 = −βe1, e3e2 = βe1, for a non-Hamilton parameter pair.
        let ctx = AlgebraContext::new(-2.0, -3.0).unwrap();
        assert_eq!(
            ctx.mul(Quaternion::E1, Quaternion::E1),
            Quaternion::real(-2.0)
        );
        assert_eq!(
            ctx.mul(Quaternion::E2, Quaternion::E2),
            Quaternion::real(-3.0)
        );
        assert_eq!(
            ctx.mul(Quaternion::E3, Quaternion::E3),
            Quaternion::real(-6.0)
        );
        assert_eq!(
            ctx.mul(Quaternion::E1, Quaternion::E3),
            Quaternion::E2.scale(-2.0)
        );
        assert_eq!(
            ctx.mul(Quaternion::E3, Quaternion::E1),
            Quaternion::E2.scale(2.0)
        );
        assert_eq!(
            ctx.mul(Quaternion::E2, Quaternion::E3),
            Quaternion::E1.scale(3.0)
        );
        assert_eq!(
            ctx.mul(Quaternion::E3, Quaternion::E2),
            Quaternion::E1.scale(-3.0)
        );
    }

    #[test]
    fn unit_is_multiplicative_identity() {
        let ctx = AlgebraContext::new(-5.0, 2.5).unwrap();
        let q = quat(1.5, -2.0, 0.25, 4.0);
        assert_eq!(ctx.mul(Quaternion::ONE, q), q);
        assert_eq!(ctx.mul(q, Quaternion::ONE), q);
    }

    #[test]
    fn hand_expanded_product() {
        // (1 + e1)(1 + e2) at α=−2, β=−3 has no square terms, so every
        // component comes out 1 regardless of the parameters.
        let ctx = AlgebraContext::new(-2.0, -3.0).unwrap();
        assert_eq!(
            ctx.mul(quat(1.0, 1.0, 0.0, 0.0), quat(1.0, 0.0, 1.0, 0.0)),
            quat(1.0, 1.0, 1.0, 1.0)
        );
    }

    #[test]
    fn conjugate_flips_imaginary_part() {
        assert_eq!(quat(1.0, 2.0, 3.0, 4.0).conj(), quat(1.0, -2.0, -3.0, -4.0));
        assert_eq!(Quaternion::real(5.0).conj(), Quaternion::real(5.0));
    }

    #[test]
    fn norm_examples() {
        let ctx = hamilton();
        assert_eq!(ctx.norm(quat(1.0, 1.0, 1.0, 1.0)), 4.0);
        assert_eq!(ctx.norm(Quaternion::ZERO), 0.0);
        // |b'|² for b' = e1+e2+e3 in the Hamilton algebra.
        assert_eq!(ctx.norm(quat(0.0, 1.0, 1.0, 1.0)), 3.0);
    }

    #[test]
    fn trace_is_twice_the_scalar_part() {
        assert_eq!(quat(1.0, 2.0, 3.0, 4.0).trace(), 2.0);
        assert_eq!(quat(0.0, 5.0, -5.0, 1.0).trace(), 0.0);
    }

    #[test]
    fn inverse_examples() {
        let ctx = hamilton();
        assert_eq!(ctx.inv(Quaternion::ONE).unwrap(), Quaternion::ONE);
        assert_eq!(
            ctx.inv(quat(1.0, 1.0, 0.0, 0.0)).unwrap(),
            quat(0.5, -0.5, 0.0, 0.0)
        );
        assert!(matches!(
            ctx.inv(Quaternion::ZERO),
            Err(AlgebraError::NonInvertible { .. })
        ));
        // 1 + e1 has zero norm in the split algebra with α = 1.
        let split = AlgebraContext::new(1.0, 1.0).unwrap();
        assert!(matches!(
            split.inv(quat(1.0, 1.0, 0.0, 0.0)),
            Err(AlgebraError::NonInvertible { .. })
        ));
    }

    #[test]
    fn scale_examples() {
        let q = quat(1.0, 2.0, 3.0, 4.0);
        assert_eq!(q.scale(0.0), Quaternion::ZERO);
        assert_eq!(q.scale(1.0), q);
        assert_eq!(q.scale(2.0), quat(2.0, 4.0, 6.0, 8.0));
    }

    #[test]
    fn symm_product_of_orthogonal_units_vanishes() {
        let ctx = hamilton();
        assert_eq!(
            ctx.symm_product(Quaternion::E1, Quaternion::E2),
            Quaternion::ZERO
        );
    }

    fn any_param() -> impl Strategy<Value = f64> {
        prop_oneof![-10.0..-0.1f64, 0.1..10.0f64]
    }

    fn division_param() -> impl Strategy<Value = f64> {
        -10.0..-0.1f64
    }

    fn any_quat() -> impl Strategy<Value = Quaternion> {
        [
            -10.0..10.0f64,
            -10.0..10.0f64,
            -10.0..10.0f64,
            -10.0..10.0f64,
        ]
        .prop_map(Quaternion::from_coords)
    }

    proptest! {
        #[test]
        fn conj_is_an_involution(q in any_quat()) {
            prop_assert_eq!(q.conj().conj(), q);
        }

        #[test]
        fn trace_is_conjugation_invariant(q in any_quat()) {
            prop_assert_eq!(q.trace(), q.conj().trace());
        }

        #[test]
        fn re_and_im_partition(q in any_quat()) {
            prop_assert_eq!(Quaternion::real(q.re()) + q.im(), q);
        }

        #[test]
        fn norm_is_multiplicative(
            a in any_param(), b in any_param(),
            p in any_quat(), q in any_quat(),
        ) {
            let ctx = AlgebraContext::new(a, b).unwrap();
            let lhs = ctx.norm(ctx.mul(p, q));
            let rhs = ctx.norm(p) * ctx.norm(q);
            prop_assert!((lhs - rhs).abs() <= 1e-10 * f64::max(1.0, rhs.abs()));
        }

        #[test]
        fn conjugation_reverses_products(
            a in any_param(), b in any_param(),
            p in any_quat(), q in any_quat(),
        ) {
            let ctx = AlgebraContext::new(a, b).unwrap();
            prop_assert!(close(ctx.mul(p, q).conj(), ctx.mul(q.conj(), p.conj()), 1e-12));
        }

        #[test]
        fn multiplication_is_associative(
            a in any_param(), b in any_param(),
            p in any_quat(), q in any_quat(), r in any_quat(),
        ) {
            let ctx = AlgebraContext::new(a, b).unwrap();
            prop_assert!(close(
                ctx.mul(ctx.mul(p, q), r),
                ctx.mul(p, ctx.mul(q, r)),
                1e-10,
            ));
        }

        #[test]
        fn inverse_round_trips(
            a in division_param(), b in division_param(),
            q in any_quat(),
        ) {
            prop_assume!(q.sup_norm() > 1e-2);
            let ctx = AlgebraContext::new(a, b).unwrap();
            let inv = ctx.inv(q).unwrap();
            prop_assert!(close(ctx.mul(q, inv), Quaternion::ONE, 1e-10));
            prop_assert!(close(ctx.mul(inv, q), Quaternion::ONE, 1e-10));
        }

        #[test]
        fn norm_agrees_with_self_conjugate_product(
            a in any_param(), b in any_param(),
            q in any_quat(),
        ) {
            let ctx = AlgebraContext::new(a, b).unwrap();
            let prod = ctx.mul(q, q.conj());
            let scale = f64::max(1.0, prod.q1.abs());
            prop_assert!((prod.q1 - ctx.norm(q)).abs() <= 1e-12 * scale);
            prop_assert!(prod.im().sup_norm() <= 1e-12 * scale);
        }

        #[test]
        fn symm_product_is_symmetric(
            a in any_param(), b in any_param(),
            p in any_quat(), q in any_quat(),
        ) {
            let ctx = AlgebraContext::new(a, b).unwrap();
            prop_assert_eq!(ctx.symm_product(p, q), ctx.symm_product(q, p));
            prop_assert!(close(ctx.symm_product(p, p), ctx.mul(p, p), 1e-12));
        }
    }
}
