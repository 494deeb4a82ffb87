//! Error types shared across the crate.

use thiserror::Error;

/// Violations of game-level invariants and preconditions.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GameError {
    #[error("a game needs at least 2 players, got {n}")]
    TooFewPlayers { n: usize },
    #[error("endowments must be non-negative, got {endowment}")]
    NegativeEndowment { endowment: f64 },
    #[error("multiplication factor must be non-negative, got {factor}")]
    NegativeFactor { factor: f64 },
    #[error("action profile has {got} entries but the game has {expected} players")]
    ProfileLengthMismatch { expected: usize, got: usize },
    #[error("player index {player} out of range for {n} players")]
    PlayerOutOfRange { player: usize, n: usize },
    #[error("risk exponent beta must be non-negative, got {beta}")]
    NegativeBeta { beta: f64 },
    #[error("objective weights must be non-negative")]
    NegativeWeight,
    #[error("utility undefined: collective component {collective} is negative with fractional beta {beta}")]
    UtilityDomain { collective: f64, beta: f64 },
}

/// Failures of the analytical toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum AnalysisError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("operation requires a 2-player game, got {n} players")]
    NotTwoPlayer { n: usize },
    #[error("operation requires equal endowments")]
    UnequalEndowments,
    #[error("joint strategy has {got} entries but the game has {expected} players")]
    StrategyLengthMismatch { expected: usize, got: usize },
    #[error("cooperation probability {p} outside [0, 1]")]
    ProbabilityOutOfRange { p: f64 },
    #[error("grid resolution {resolution} outside (0, 0.5]")]
    BadResolution { resolution: f64 },
    #[error("expected one risk preference per player ({expected}), got {got}")]
    PreferenceCountMismatch { expected: usize, got: usize },
    #[error("no Nash equilibrium found on the grid; the resolution may be too coarse")]
    NoEquilibrium,
}

/// Failures of the learner.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum LearningError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("observation has {got} entries, the network expects {expected}")]
    ObservationShape { expected: usize, got: usize },
    #[error("cannot update from an empty minibatch")]
    EmptyBatch,
}

/// Failures of the population experiment driver.
#[derive(Debug, Error)]
pub enum ExperimentError {
    #[error(transparent)]
    Game(#[from] GameError),
    #[error(transparent)]
    Learning(#[from] LearningError),
    #[error("invalid experiment config: {reason}")]
    BadConfig { reason: String },
    #[error("checkpoint I/O failed: {0}")]
    CheckpointIo(#[from] std::io::Error),
    #[error("checkpoint format: {reason}")]
    CheckpointFormat { reason: String },
}
