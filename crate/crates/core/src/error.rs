use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::linalg::Rational;

/// A failing instance of an identity: which condition broke, on which basis
/// arguments (0-based indices), and the nonzero residual `lhs - rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub condition: String,
    pub args: Vec<usize>,
    pub residual: Vec<Rational>,
}

impl Witness {
    pub fn new(condition: impl Into<String>, args: Vec<usize>, residual: Vec<Rational>) -> Self {
        Witness {
            condition: condition.into(),
            args,
            residual,
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at (", self.condition)?;
        for (pos, a) in self.args.iter().enumerate() {
            if pos > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", a + 1)?;
        }
        f.write_str("), residual [")?;
        for (pos, r) in self.residual.iter().enumerate() {
            if pos > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", r)?;
        }
        f.write_str("]")
    }
}

/// Outcome of an axiom check. Checks never panic or error on a false
/// statement; they report the lexicographically first failing basis tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Ok,
    Fail(Witness),
}

impl Verdict {
    pub fn is_ok(&self) -> bool {
        matches!(self, Verdict::Ok)
    }

    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Verdict::Ok => None,
            Verdict::Fail(w) => Some(w),
        }
    }

    /// Runs `next` only if `self` passed.
    pub fn and_then(self, next: impl FnOnce() -> Verdict) -> Verdict {
        match self {
            Verdict::Ok => next(),
            fail => fail,
        }
    }

    pub fn into_result<E>(self, wrap: impl FnOnce(Witness) -> E) -> Result<(), E> {
        match self {
            Verdict::Ok => Ok(()),
            Verdict::Fail(w) => Err(wrap(w)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    /// The requested NR bracket would land in negative arity.
    ArityOutOfRange,
    LinearlyDependent,
    InvalidBracket(Witness),
    InvalidPair(Witness),
    InvalidRepresentation(Witness),
    /// A degree-0 element that is not in the space of 0-cochains.
    NotInZeroCochains,
    NotADeformation(Witness),
    NotNijenhuis(Witness),
    NotACocycle(Witness),
    InvalidExtension(Witness),
    InvalidSection(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch {
                context,
                expected,
                found,
            } => write!(f, "dimension mismatch in {context}: expected {expected}, found {found}"),
            Error::ArityOutOfRange => f.write_str("bracket of two arity-0 cochains has negative arity"),
            Error::LinearlyDependent => f.write_str("vectors are linearly dependent"),
            Error::InvalidBracket(w) => write!(f, "not a Lie bracket: {w}"),
            Error::InvalidPair(w) => write!(f, "not a compatible pair: {w}"),
            Error::InvalidRepresentation(w) => write!(f, "not a representation: {w}"),
            Error::NotInZeroCochains => f.write_str("element is not a 0-cochain (rho(x)v != mu(x)v)"),
            Error::NotADeformation(w) => write!(f, "not an infinitesimal deformation: {w}"),
            Error::NotNijenhuis(w) => write!(f, "not a Nijenhuis operator: {w}"),
            Error::NotACocycle(w) => write!(f, "not a 2-cocycle: {w}"),
            Error::InvalidExtension(w) => write!(f, "invalid extension datum: {w}"),
            Error::InvalidSection(why) => write!(f, "invalid section data: {why}"),
        }
    }
}

impl core::error::Error for Error {}

pub(crate) fn check_dim(context: &'static str, expected: usize, found: usize) -> Result<(), Error> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            context,
            expected,
            found,
        })
    }
}
