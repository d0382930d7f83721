use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("generator {0} has no assigned vertical operation")]
    Unassigned(usize),
    #[error("unknown base `{0}`")]
    UnknownBase(String),
    #[error("unknown generator label `{0}`")]
    UnknownLabel(String),
    #[error("bad number `{0}`")]
    BadNumber(String),
    #[error("bad vertical operation `{0}`")]
    BadOp(String),
    #[error("assignment does not satisfy the relations of {0}")]
    NotHomomorphism(String),
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("invalid name: {0}")]
    Semantic(String),
    #[error("`{0}` is not the name of a fibration")]
    NoSuchName(String),
    #[error("resource {file} line {line}: {msg}")]
    Resource { file: &'static str, line: usize, msg: String },
    #[error("realization check failed: {0}")]
    Realization(String),
    #[error("irreducible group: {0}")]
    Irreducible(String),
    #[error("alias resolution: {0}")]
    Alias(String),
    #[error("catalog: {0}")]
    Catalog(String),
    #[error("closure exceeded {0} elements")]
    Overflow(usize),
}
