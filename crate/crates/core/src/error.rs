use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("elliptic modulus k = {0} outside [0, 1)")]
    InvalidModulus(f64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("t = {t} beyond domain bound {bound_name} = {bound}")]
    BeyondDomain {
        t: f64,
        bound: f64,
        bound_name: &'static str,
    },
    #[error("homogeneous chart undefined at y = y0")]
    Chart,
    #[error("unsupported base point ({0}): only bases with x = 0 are handled")]
    UnsupportedBase(String),
    #[error("point is not in the interior of the attainable set: {0}")]
    NotInterior(String),
    #[error("point lies outside the closure of the attainable set")]
    OutsideAttainable,
    #[error("no feasible trajectory found: {0}")]
    Infeasible(String),
    #[error("numerical failure: {0}")]
    Numerical(String),
}
