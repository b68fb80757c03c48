//! Fibonacci, Pell, and Lucas numbers and the quaternions built from four
//! consecutive terms, used as ready-made large-coefficient test equations.

use thiserror::Error;

use crate::algebra::Quaternion;

/// Largest integer magnitude a double holds exactly (2⁵³).
const MAX_EXACT: i128 = 1 << 53;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SequenceKind {
    Fibonacci,
    Pell,
    Lucas,
}

impl SequenceKind {
    pub fn parse(name: &str) -> Option<Self> {
        match name.to_ascii_lowercase().as_str() {
            "fib" | "fibonacci" => Some(Self::Fibonacci),
            "pell" => Some(Self::Pell),
            "lucas" => Some(Self::Lucas),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Fibonacci => "fibonacci",
            Self::Pell => "pell",
            Self::Lucas => "lucas",
        }
    }

    /// Multiplier r in s_k = r·s_{k−1} + s_{k−2}.
    fn multiplier(&self) -> i128 {
        match self {
            Self::Pell => 2,
            _ => 1,
        }
    }

    fn scalar_seeds(&self) -> (i128, i128) {
        match self {
            Self::Fibonacci => (0, 1),
            Self::Pell => (0, 1),
            Self::Lucas => (2, 1),
        }
    }

    /// Seeds of the sequence whose windows of four form the quaternions.
    ///
    /// Pell quaternions use the companion variant seeded (−1, 1), one step
    /// offset from the Pell numbers proper, so that
    /// Q_3 = 3 + 7e1 + 17e2 + 41e3 and Q_12 starts at 8119.
    fn quaternion_seeds(&self) -> (i128, i128) {
        match self {
            Self::Pell => (-1, 1),
            _ => self.scalar_seeds(),
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum SequenceError {
    #[error("{kind} term {index} exceeds the exactly representable range of f64")]
    PrecisionOverflow { kind: &'static str, index: usize },
}

fn term_from(kind: SequenceKind, seeds: (i128, i128), n: usize) -> Result<i128, SequenceError> {
    let r = kind.multiplier();
    let overflow = SequenceError::PrecisionOverflow {
        kind: kind.name(),
        index: n,
    };
    // After k steps `prev` holds s_k. Terms grow monotonically once past
    // the seeds, so the walk can stop as soon as the bound is crossed.
    let (mut prev, mut cur) = seeds;
    for _ in 0..n {
        if prev.abs() > MAX_EXACT {
            return Err(overflow);
        }
        let next = r * cur + prev;
        prev = cur;
        cur = next;
    }
    if prev.abs() > MAX_EXACT {
        return Err(overflow);
    }
    Ok(prev)
}

/// The n-th term of the sequence, exactly representable or an error.
pub fn scalar_term(kind: SequenceKind, n: usize) -> Result<f64, SequenceError> {
    term_from(kind, kind.scalar_seeds(), n).map(|t| t as f64)
}

/// The quaternion (s(n), s(n+1), s(n+2), s(n+3)) of four consecutive terms.
pub fn quaternion_term(kind: SequenceKind, n: usize) -> Result<Quaternion, SequenceError> {
    let seeds = kind.quaternion_seeds();
    let mut coords = [0.0; 4];
    for (offset, coord) in coords.iter_mut().enumerate() {
        *coord = term_from(kind, seeds, n + offset)? as f64;
    }
    Ok(Quaternion::from_coords(coords))
}
