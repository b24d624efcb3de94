//! Exact construction and verification of pseudocyclic fusions of cyclotomic
//! association schemes over finite fields.

pub mod charsum;
pub mod cli;
pub mod cycint;
pub mod families;
pub mod ffield;
pub mod gauss2;
pub mod numth;
pub mod report;
pub mod scheme;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error(transparent)]
    Field(#[from] ffield::FieldError),
    #[error(transparent)]
    Numth(#[from] numth::NumthError),
    #[error(transparent)]
    CharSum(#[from] charsum::CharSumError),
    #[error(transparent)]
    Gauss(#[from] gauss2::GaussError),
    #[error(transparent)]
    Scheme(#[from] scheme::SchemeError),
    #[error(transparent)]
    Family(#[from] families::FamilyError),
}
