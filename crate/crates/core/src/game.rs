//! Payoff mechanics of the multi-objective extended public goods game
//! (MO-EPGG) and the non-linear risk utility applied on top of it.
//!
//! Every other module computes rewards through this one.

use serde::{Deserialize, Serialize};

use crate::error::GameError;

/// The two moves available to every player.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Action {
    Cooperate,
    Defect,
}

impl Action {
    /// Indicator used by the payoff formulas: 1 for cooperation, 0 otherwise.
    #[inline]
    pub fn indicator(self) -> f64 {
        match self {
            Action::Cooperate => 1.0,
            Action::Defect => 0.0,
        }
    }
}

/// A joint action, one entry per player.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionProfile(pub Vec<Action>);

impl ActionProfile {
    pub fn new(actions: Vec<Action>) -> Self {
        ActionProfile(actions)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn actions(&self) -> &[Action] {
        &self.0
    }

    /// All `2^n` pure profiles for `n` players, in lexicographic order with
    /// Cooperate < Defect (so all-cooperate comes first).
    pub fn enumerate(n_players: usize) -> Vec<ActionProfile> {
        let mut out = Vec::with_capacity(1 << n_players);
        for bits in 0..(1u32 << n_players) {
            let actions = (0..n_players)
                .map(|i| {
                    if bits >> (n_players - 1 - i) & 1 == 0 {
                        Action::Cooperate
                    } else {
                        Action::Defect
                    }
                })
                .collect();
            out.push(ActionProfile(actions));
        }
        out
    }
}

/// One instance of the game: who plays, with what endowments, and how much
/// the common pool is multiplied before redistribution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameSpec {
    n_players: usize,
    endowments: Vec<f64>,
    multiplication_factor: f64,
}

/// Incentive-alignment regime of a game, determined by the multiplication
/// factor relative to the player count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GameClass {
    Competitive,
    MixedMotive,
    Cooperative,
}

impl GameSpec {
    /// Build a game, validating the invariants (`n >= 2`, endowments and
    /// multiplication factor non-negative, one endowment per player).
    pub fn new(endowments: Vec<f64>, multiplication_factor: f64) -> Result<Self, GameError> {
        let n_players = endowments.len();
        if n_players < 2 {
            return Err(GameError::TooFewPlayers { n: n_players });
        }
        if let Some(&c) = endowments.iter().find(|c| !(**c >= 0.0)) {
            return Err(GameError::NegativeEndowment { endowment: c });
        }
        if !(multiplication_factor >= 0.0) {
            return Err(GameError::NegativeFactor {
                factor: multiplication_factor,
            });
        }
        Ok(GameSpec {
            n_players,
            endowments,
            multiplication_factor,
        })
    }

    /// Symmetric game: `n` players with the same endowment.
    pub fn symmetric(n_players: usize, endowment: f64, f: f64) -> Result<Self, GameError> {
        GameSpec::new(vec![endowment; n_players], f)
    }

    pub fn n_players(&self) -> usize {
        self.n_players
    }

    pub fn endowments(&self) -> &[f64] {
        &self.endowments
    }

    pub fn endowment(&self, player: usize) -> f64 {
        self.endowments[player]
    }

    pub fn multiplication_factor(&self) -> f64 {
        self.multiplication_factor
    }

    pub fn has_equal_endowments(&self) -> bool {
        self.endowments.iter().all(|&c| c == self.endowments[0])
    }

    fn check_profile(&self, profile: &ActionProfile, player: usize) -> Result<(), GameError> {
        if profile.len() != self.n_players {
            return Err(GameError::ProfileLengthMismatch {
                expected: self.n_players,
                got: profile.len(),
            });
        }
        if player >= self.n_players {
            return Err(GameError::PlayerOutOfRange {
                player,
                n: self.n_players,
            });
        }
        Ok(())
    }

    /// The two payoff components for one player under a pure action profile:
    /// an equal share of the multiplied pool, plus the endowment if kept.
    pub fn vector_reward(
        &self,
        profile: &ActionProfile,
        player: usize,
    ) -> Result<VectorReturn, GameError> {
        self.check_profile(profile, player)?;
        let pool: f64 = self
            .endowments
            .iter()
            .zip(profile.actions())
            .map(|(&c, &a)| c * a.indicator())
            .sum();
        let collective = self.multiplication_factor * pool / self.n_players as f64;
        let individual = self.endowments[player] * (1.0 - profile.actions()[player].indicator());
        Ok(VectorReturn {
            collective,
            individual,
        })
    }

    /// Scalar payoff of the single-objective game. Defined as the exact sum
    /// of the two vector components so the decomposition holds bit-for-bit.
    pub fn scalar_reward(&self, profile: &ActionProfile, player: usize) -> Result<f64, GameError> {
        let v = self.vector_reward(profile, player)?;
        Ok(v.collective + v.individual)
    }

    /// Incentive regime of this game. Boundaries: `f = 1` counts as
    /// competitive (defection stays a Pareto-optimal dominant strategy up to
    /// and including 1), `f = n` as mixed-motive.
    pub fn classify(&self) -> GameClass {
        let f = self.multiplication_factor;
        if f <= 1.0 {
            GameClass::Competitive
        } else if f <= self.n_players as f64 {
            GameClass::MixedMotive
        } else {
            GameClass::Cooperative
        }
    }
}

/// A two-objective payoff or return: the share of the public good and the
/// privately kept endowment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VectorReturn {
    pub collective: f64,
    pub individual: f64,
}

impl VectorReturn {
    pub const ZERO: VectorReturn = VectorReturn {
        collective: 0.0,
        individual: 0.0,
    };

    pub fn new(collective: f64, individual: f64) -> Self {
        VectorReturn {
            collective,
            individual,
        }
    }

    /// Component-wise sum.
    pub fn add(self, other: VectorReturn) -> VectorReturn {
        VectorReturn {
            collective: self.collective + other.collective,
            individual: self.individual + other.individual,
        }
    }

    /// Component-wise scaling.
    pub fn scale(self, k: f64) -> VectorReturn {
        VectorReturn {
            collective: self.collective * k,
            individual: self.individual * k,
        }
    }
}

/// Per-agent risk attitude: exponent on the collective component plus
/// objective weights (both default to 1, recovering the plain utility).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RiskPreference {
    pub beta: f64,
    pub weight_collective: f64,
    pub weight_individual: f64,
}

impl RiskPreference {
    /// Preference with unit weights. `beta < 1` is risk-averse, `beta = 1`
    /// neutral, `beta > 1` risk-seeking.
    pub fn new(beta: f64) -> Result<Self, GameError> {
        RiskPreference::with_weights(beta, 1.0, 1.0)
    }

    pub fn with_weights(beta: f64, w_collective: f64, w_individual: f64) -> Result<Self, GameError> {
        if !(beta >= 0.0) {
            return Err(GameError::NegativeBeta { beta });
        }
        if !(w_collective >= 0.0) || !(w_individual >= 0.0) {
            return Err(GameError::NegativeWeight);
        }
        Ok(RiskPreference {
            beta,
            weight_collective: w_collective,
            weight_individual: w_individual,
        })
    }

    /// Scalarise a vector return: `w_C * collective^beta + w_I * individual`,
    /// with the convention `0^0 = 1` so the collective term degenerates to a
    /// constant at `beta = 0`.
    pub fn utility(&self, g: VectorReturn) -> Result<f64, GameError> {
        if g.collective < 0.0 && self.beta.fract() != 0.0 {
            return Err(GameError::UtilityDomain {
                collective: g.collective,
                beta: self.beta,
            });
        }
        Ok(self.weight_collective * g.collective.powf(self.beta)
            + self.weight_individual * g.individual)
    }
}
