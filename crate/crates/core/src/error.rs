use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Malformed quantum numbers, out-of-range parameters, or inconsistent
    /// structures.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive quadrature hit its node cap. Carries the last two estimates
    /// as `(cos-component, sin-component)` pairs.
    #[error("quadrature failed to converge at {nodes} nodes: previous {previous:?}, last {last:?}")]
    NoConvergence {
        nodes: usize,
        previous: (f64, f64),
        last: (f64, f64),
    },

    /// A computed quantity violated an invariant it must satisfy (probability
    /// normalisation, positivity).
    #[error("numerical failure: {0}")]
    Numerical(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
