use core::fmt;

/// Failures raised by system construction, evaluation and the identity checks.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A system parameter violates its admissible range; the payload names the constraint.
    ParameterOutOfRange(&'static str),
    /// `R1(E)^2 + 4 R0(E) < 0`, so the two frequencies are not real.
    ComplexFrequencies {
        energy: f64,
    },
    DegenerateFrequencies {
        index: usize,
    },
    EvaluationDomain {
        x: f64,
    },
    QuadratureNotConverged {
        index: usize,
        rel_diff: f64,
    },
    UnsupportedSystem(&'static str),
    DivisionByZero(&'static str),
    NonOscillatory {
        r0: f64,
    },
    DomainEscape {
        t: f64,
        x: f64,
    },
    EnergyDrift {
        t: f64,
        drift: f64,
    },
    SingularDerivative {
        x: f64,
    },
    ZeroRecurrenceCoefficient {
        index: usize,
    },
    SeriesNotConverged {
        tail: f64,
    },
    InvalidTruncation {
        dim: usize,
        guard: usize,
    },
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ParameterOutOfRange(what) => write!(f, "parameter out of range: {what}"),
            Error::ComplexFrequencies { energy } => {
                write!(f, "frequencies are complex at energy {energy}")
            }
            Error::DegenerateFrequencies { index } => {
                write!(f, "alpha_+ equals alpha_- at level {index}")
            }
            Error::EvaluationDomain { x } => write!(f, "x = {x} lies outside the domain"),
            Error::QuadratureNotConverged { index, rel_diff } => write!(
                f,
                "quadrature for level {index} not converged (refinements differ by {rel_diff:e})"
            ),
            Error::UnsupportedSystem(what) => write!(f, "unsupported system: {what}"),
            Error::DivisionByZero(what) => write!(f, "division by zero: {what}"),
            Error::NonOscillatory { r0 } => write!(f, "R0 = {r0} is not positive"),
            Error::DomainEscape { t, x } => {
                write!(f, "trajectory left the domain at t = {t} (x = {x})")
            }
            Error::EnergyDrift { t, drift } => {
                write!(f, "energy drift {drift:e} exceeds tolerance at t = {t}")
            }
            Error::SingularDerivative { x } => write!(f, "d eta/dx vanishes at x = {x}"),
            Error::ZeroRecurrenceCoefficient { index } => {
                write!(f, "recurrence coefficient C_{index} is zero")
            }
            Error::SeriesNotConverged { tail } => write!(f, "series tail {tail:e} above threshold"),
            Error::InvalidTruncation { dim, guard } => {
                write!(
                    f,
                    "truncation N = {dim} with guard G = {guard} leaves no interior window"
                )
            }
        }
    }
}

impl core::error::Error for Error {}
