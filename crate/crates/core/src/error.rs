use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus p must be at least 3, got {0}")]
    InvalidModulus(u32),
    #[error("offset set {set} repeats {offset} mod {p}")]
    DuplicateOffset {
        set: &'static str,
        offset: u32,
        p: u32,
    },
    #[error("cycle length bound must be in 3..=6, got {0}")]
    CycleBound(usize),
    #[error("vertex {0} is not in the complex")]
    NotInComplex(String),
    #[error("label {0} occurs in both join factors")]
    LabelCollision(String),
    #[error("relabeling is not a bijection: {0}")]
    NotBijective(String),
    #[error("simplicial complex is not closed under faces: {0}")]
    NotClosed(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
