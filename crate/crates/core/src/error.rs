use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("group order {order} exceeds the cap of {cap}")]
    OrderCapExceeded { order: usize, cap: usize },
    #[error("unknown builtin group {0:?}")]
    UnknownBuiltin(String),
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("context mismatch: {0}")]
    ContextMismatch(String),
    #[error("denominator {den} is divisible by p = {p}")]
    NotPLocal { den: String, p: u64 },
    #[error("operation needs injective morphisms: {0}")]
    NotInjective(String),
    #[error("left action is not free")]
    NotLeftFree,
    #[error("invalid biset: {0}")]
    InvalidBiset(String),
    #[error("invalid fusion system: {0}")]
    InvalidFusion(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("linear system for the idempotent is {kind} (rank {rank} of {unknowns} unknowns)")]
    Singular { kind: &'static str, rank: usize, unknowns: usize },
    #[error("rational reconstruction did not verify up to modulus p^{k}")]
    Reconstruction { k: u32 },
    #[error("characteristic property failed: {0}")]
    NotCharacteristic(String),
    #[error("stable spaces disagree: {0}")]
    StableSpaceMismatch(String),
    #[error("scenario error: {0}")]
    Scenario(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
