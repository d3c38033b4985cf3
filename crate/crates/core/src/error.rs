use thiserror::Error;

/// Errors raised by the library. Messages are prefixed with the module that
/// detected the problem so that CLI diagnostics can be traced back.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("root_datum: {0}")]
    RootDatum(String),
    #[error("root_datum: lattice does not contain Q∨")]
    LatticeMissingCoroots,
    #[error("twist: {0}")]
    Twist(String),
    #[error("weyl: {0}")]
    Weyl(String),
    #[error("weyl: unknown token `{0}`")]
    UnknownToken(String),
    #[error("newton: {0}")]
    Newton(String),
    #[error("hecke: {0}")]
    Hecke(String),
    #[error("rigid: {0}")]
    Rigid(String),
    #[error("config: {0}")]
    Config(String),
    #[error("cli: {0}")]
    Cli(String),
}

pub type Result<T> = std::result::Result<T, Error>;
