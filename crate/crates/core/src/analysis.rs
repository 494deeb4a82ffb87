//! Analytical toolkit for the 2-player game: expected vector payoffs under
//! mixed strategies, SER/ESR values, best responses and cooperation
//! thresholds, Nash-equilibrium grid sweeps, Pareto coverage, utilitarian
//! welfare and the price of anarchy.
//!
//! Everything here works on expected values in closed form; the learner in
//! [`crate::learning`] is the sampling counterpart.

use serde::{Deserialize, Serialize};

use crate::error::AnalysisError;
use crate::game::{ActionProfile, GameSpec, RiskPreference, VectorReturn};

/// SER improvement below which a grid point counts as unimprovable.
pub const NASH_GRID_TOLERANCE: f64 = 1e-9;
/// Improvement threshold for the continuous best-response verification.
pub const NASH_VERIFY_TOLERANCE: f64 = 1e-6;
/// Absolute tolerance of the threshold bisection.
pub const THRESHOLD_BISECTION_TOLERANCE: f64 = 1e-6;

/// Per-player cooperation probabilities.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct JointStrategy {
    coop_probs: Vec<f64>,
}

impl JointStrategy {
    pub fn new(coop_probs: Vec<f64>) -> Result<Self, AnalysisError> {
        for &p in &coop_probs {
            if !(0.0..=1.0).contains(&p) {
                return Err(AnalysisError::ProbabilityOutOfRange { p });
            }
        }
        Ok(JointStrategy { coop_probs })
    }

    pub fn pair(p0: f64, p1: f64) -> Result<Self, AnalysisError> {
        JointStrategy::new(vec![p0, p1])
    }

    pub fn coop_probs(&self) -> &[f64] {
        &self.coop_probs
    }

    pub fn len(&self) -> usize {
        self.coop_probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coop_probs.is_empty()
    }
}

/// Uniform lattice over [0, 1] per player, always containing both endpoints.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    resolution: f64,
}

impl SweepGrid {
    pub fn new(resolution: f64) -> Result<Self, AnalysisError> {
        if !(resolution > 0.0 && resolution <= 0.5) {
            return Err(AnalysisError::BadResolution { resolution });
        }
        Ok(SweepGrid { resolution })
    }

    pub fn resolution(&self) -> f64 {
        self.resolution
    }

    /// Lattice points for one player. The final point is exactly 1.0.
    pub fn points(&self) -> Vec<f64> {
        let k = (1.0 / self.resolution - 1e-9).ceil() as usize;
        let mut pts: Vec<f64> = (0..k).map(|i| i as f64 * self.resolution).collect();
        pts.push(1.0);
        pts
    }
}

impl Default for SweepGrid {
    fn default() -> Self {
        SweepGrid { resolution: 0.01 }
    }
}

/// A verified grid equilibrium with its per-player SER values.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NashResult {
    pub strategy: JointStrategy,
    pub ser_values: Vec<f64>,
    pub on_pareto_front: bool,
}

/// A connected group of equilibrium grid points. For risk-averse games the
/// equilibria form a segment of constant `p0 + p1`; the sum range makes that
/// visible instead of presenting grid artifacts as isolated equilibria.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NashCluster {
    pub representative: JointStrategy,
    pub size: usize,
    pub min_coop_sum: f64,
    pub max_coop_sum: f64,
}

fn check_two_player(spec: &GameSpec) -> Result<(), AnalysisError> {
    if spec.n_players() != 2 {
        return Err(AnalysisError::NotTwoPlayer {
            n: spec.n_players(),
        });
    }
    Ok(())
}

fn check_strategy(spec: &GameSpec, strategy: &JointStrategy) -> Result<(), AnalysisError> {
    if strategy.len() != spec.n_players() {
        return Err(AnalysisError::StrategyLengthMismatch {
            expected: spec.n_players(),
            got: strategy.len(),
        });
    }
    Ok(())
}

fn check_symmetric(spec: &GameSpec) -> Result<(), AnalysisError> {
    check_two_player(spec)?;
    if !spec.has_equal_endowments() {
        return Err(AnalysisError::UnequalEndowments);
    }
    Ok(())
}

fn check_prefs(spec: &GameSpec, prefs: &[RiskPreference]) -> Result<(), AnalysisError> {
    if prefs.len() != spec.n_players() {
        return Err(AnalysisError::PreferenceCountMismatch {
            expected: spec.n_players(),
            got: prefs.len(),
        });
    }
    Ok(())
}

/// Expected vector payoff of one player when everyone cooperates
/// independently with their strategy probability.
pub fn expected_vector_return(
    spec: &GameSpec,
    strategy: &JointStrategy,
    player: usize,
) -> Result<VectorReturn, AnalysisError> {
    check_two_player(spec)?;
    check_strategy(spec, strategy)?;
    if player >= spec.n_players() {
        return Err(AnalysisError::Game(
            crate::error::GameError::PlayerOutOfRange {
                player,
                n: spec.n_players(),
            },
        ));
    }
    let expected_pool: f64 = spec
        .endowments()
        .iter()
        .zip(strategy.coop_probs())
        .map(|(&c, &p)| c * p)
        .sum();
    let collective = spec.multiplication_factor() * expected_pool / spec.n_players() as f64;
    let individual = spec.endowment(player) * (1.0 - strategy.coop_probs()[player]);
    Ok(VectorReturn::new(collective, individual))
}

/// Scalarised expected return: the utility of the expected vector payoff.
pub fn ser_value(
    spec: &GameSpec,
    strategy: &JointStrategy,
    player: usize,
    pref: &RiskPreference,
) -> Result<f64, AnalysisError> {
    let expected = expected_vector_return(spec, strategy, player)?;
    Ok(pref.utility(expected)?)
}

/// Expected scalarised return: utility applied to each pure outcome before
/// averaging over the profile distribution.
pub fn esr_value(
    spec: &GameSpec,
    strategy: &JointStrategy,
    player: usize,
    pref: &RiskPreference,
) -> Result<f64, AnalysisError> {
    check_two_player(spec)?;
    check_strategy(spec, strategy)?;
    let probs = strategy.coop_probs();
    let mut total = 0.0;
    for profile in ActionProfile::enumerate(spec.n_players()) {
        let weight: f64 = profile
            .actions()
            .iter()
            .zip(probs)
            .map(|(a, &p)| match a {
                crate::game::Action::Cooperate => p,
                crate::game::Action::Defect => 1.0 - p,
            })
            .product();
        if weight == 0.0 {
            continue;
        }
        let reward = spec.vector_reward(&profile, player)?;
        total += weight * pref.utility(reward)?;
    }
    Ok(total)
}

/// Whether, under ESR, collective cooperation is strictly preferred over
/// collective defection: `(c*f)^beta > c`. Expects `c > 0`; `c*f = 0` with
/// `beta = 0` falls under the `0^0 = 1` convention.
pub fn esr_cooperation_preferred(c: f64, f: f64, beta: f64) -> bool {
    (c * f).powf(beta) > c
}

/// SER value of choosing own cooperation probability `p` against an opponent
/// cooperating with probability `q`, in a symmetric 2-player game.
fn own_ser(c: f64, f: f64, pref: &RiskPreference, p: f64, q: f64) -> f64 {
    let collective = f * c * (p + q) / 2.0;
    pref.weight_collective * collective.powf(pref.beta)
        + pref.weight_individual * c * (1.0 - p)
}

/// Cooperation-minus-defection SER gap for a player facing an opponent who
/// cooperates with probability `p`.
fn cooperation_gap(c: f64, f: f64, beta: f64, p: f64) -> f64 {
    (f * c * (1.0 + p) / 2.0).powf(beta) - (f * c * p / 2.0).powf(beta) - c
}

/// Minimum opponent cooperation probability above which cooperating strictly
/// beats defecting under SER, for a symmetric 2-player game with endowment
/// `c`. `None` means the condition holds for no opponent strategy in [0, 1].
pub fn best_response_coop_threshold(c: f64, f: f64, beta: f64) -> Option<f64> {
    let gap = |p: f64| cooperation_gap(c, f, beta, p);
    if gap(1.0) <= 0.0 {
        return None;
    }
    // Walk down from p = 1 to the last point where the gap is not positive,
    // then bisect the crossing.
    const STEPS: usize = 1024;
    let mut hi = 1.0;
    let mut lo = None;
    for i in (0..STEPS).rev() {
        let p = i as f64 / STEPS as f64;
        if gap(p) <= 0.0 {
            lo = Some(p);
            break;
        }
        hi = p;
    }
    let mut lo = match lo {
        Some(lo) => lo,
        None => return Some(0.0),
    };
    while hi - lo > THRESHOLD_BISECTION_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if gap(mid) > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Some(0.5 * (lo + hi))
}

/// Total cooperation mass `p_own + p_opp` at which the SER derivative in the
/// own probability vanishes, for risk-averse preferences (`0 < beta < 1`).
/// `beta = 0` degenerates to 0; `beta >= 1` has no interior stationary point.
pub fn interior_stationarity_sum(c: f64, f: f64, pref: &RiskPreference) -> Option<f64> {
    let beta = pref.beta;
    if beta >= 1.0 || f * c <= 0.0 {
        return None;
    }
    if beta == 0.0 {
        return Some(0.0);
    }
    let ratio = 2.0 * pref.weight_individual / (pref.weight_collective * beta * f);
    Some(2.0 / (f * c) * ratio.powf(1.0 / (beta - 1.0)))
}

/// Own cooperation probability maximising SER against an opponent cooperating
/// with probability `opponent_coop_prob`. Ties break toward defection.
pub fn best_response(
    spec: &GameSpec,
    pref: &RiskPreference,
    opponent_coop_prob: f64,
) -> Result<f64, AnalysisError> {
    check_symmetric(spec)?;
    let q = opponent_coop_prob;
    if !(0.0..=1.0).contains(&q) {
        return Err(AnalysisError::ProbabilityOutOfRange { p: q });
    }
    let c = spec.endowment(0);
    let f = spec.multiplication_factor();
    let beta = pref.beta;

    // Degenerate pool: the collective term is constant in the own action.
    if f * c == 0.0 || beta == 0.0 {
        return Ok(0.0);
    }
    if beta == 1.0 {
        let slope = pref.weight_collective * f * c / 2.0 - pref.weight_individual * c;
        return Ok(if slope > 0.0 { 1.0 } else { 0.0 });
    }
    if beta > 1.0 {
        // Convex in the own probability, so the optimum sits on a corner.
        let defect = own_ser(c, f, pref, 0.0, q);
        let cooperate = own_ser(c, f, pref, 1.0, q);
        return Ok(if cooperate > defect { 1.0 } else { 0.0 });
    }
    // 0 < beta < 1: concave, interior stationary point at p = s* - q.
    match interior_stationarity_sum(c, f, pref) {
        Some(s_star) => Ok((s_star - q).clamp(0.0, 1.0)),
        None => Ok(0.0),
    }
}

/// Largest SER gain either player can realise by unilaterally moving to
/// their continuous best response.
pub fn max_unilateral_gain(
    spec: &GameSpec,
    prefs: &[RiskPreference],
    strategy: &JointStrategy,
) -> Result<f64, AnalysisError> {
    check_symmetric(spec)?;
    check_prefs(spec, prefs)?;
    check_strategy(spec, strategy)?;
    let c = spec.endowment(0);
    let f = spec.multiplication_factor();
    let p = strategy.coop_probs();
    let mut worst: f64 = 0.0;
    for player in 0..2 {
        let (own, opp) = (p[player], p[1 - player]);
        let br = best_response(spec, &prefs[player], opp)?;
        let gain = own_ser(c, f, &prefs[player], br, opp) - own_ser(c, f, &prefs[player], own, opp);
        worst = worst.max(gain);
    }
    Ok(worst)
}

struct SerMatrices {
    points: Vec<f64>,
    ser: [Vec<Vec<f64>>; 2],
}

/// SER of both players at every lattice point. Indexed `[player][i0][i1]`
/// where `i0` walks player 0's probability and `i1` player 1's.
fn ser_matrices(
    spec: &GameSpec,
    prefs: &[RiskPreference],
    grid: &SweepGrid,
) -> Result<SerMatrices, AnalysisError> {
    check_symmetric(spec)?;
    check_prefs(spec, prefs)?;
    let c = spec.endowment(0);
    let f = spec.multiplication_factor();
    let points = grid.points();
    let k = points.len();
    let mut ser = [vec![vec![0.0; k]; k], vec![vec![0.0; k]; k]];
    for (i0, &p0) in points.iter().enumerate() {
        for (i1, &p1) in points.iter().enumerate() {
            ser[0][i0][i1] = own_ser(c, f, &prefs[0], p0, p1);
            ser[1][i0][i1] = own_ser(c, f, &prefs[1], p1, p0);
        }
    }
    Ok(SerMatrices { points, ser })
}

/// All grid joint strategies that survive both equilibrium checks: no grid
/// deviation improves either player's SER by more than [`NASH_GRID_TOLERANCE`],
/// and the continuous best response either improves by less than
/// [`NASH_VERIFY_TOLERANCE`] or lies within one grid step of the strategy.
pub fn find_nash_equilibria(
    spec: &GameSpec,
    prefs: &[RiskPreference],
    grid: &SweepGrid,
) -> Result<Vec<NashResult>, AnalysisError> {
    let m = ser_matrices(spec, prefs, grid)?;
    let k = m.points.len();
    let c = spec.endowment(0);
    let f = spec.multiplication_factor();

    // Best achievable SER per player for each fixed opponent probability.
    let mut best0 = vec![f64::NEG_INFINITY; k]; // over i0, per i1
    let mut best1 = vec![f64::NEG_INFINITY; k]; // over i1, per i0
    for i0 in 0..k {
        for i1 in 0..k {
            best0[i1] = best0[i1].max(m.ser[0][i0][i1]);
            best1[i0] = best1[i0].max(m.ser[1][i0][i1]);
        }
    }

    let front = pareto_membership(spec, grid)?;
    let mut results = Vec::new();
    for i0 in 0..k {
        for i1 in 0..k {
            if best0[i1] - m.ser[0][i0][i1] > NASH_GRID_TOLERANCE
                || best1[i0] - m.ser[1][i0][i1] > NASH_GRID_TOLERANCE
            {
                continue;
            }
            let (p0, p1) = (m.points[i0], m.points[i1]);
            let mut verified = true;
            for player in 0..2 {
                let (own, opp) = if player == 0 { (p0, p1) } else { (p1, p0) };
                let br = best_response(spec, &prefs[player], opp)?;
                let gain = own_ser(c, f, &prefs[player], br, opp)
                    - own_ser(c, f, &prefs[player], own, opp);
                if gain >= NASH_VERIFY_TOLERANCE && (br - own).abs() > grid.resolution() + 1e-9 {
                    verified = false;
                    break;
                }
            }
            if !verified {
                continue;
            }
            results.push(NashResult {
                strategy: JointStrategy::pair(p0, p1).expect("grid points are probabilities"),
                ser_values: vec![m.ser[0][i0][i1], m.ser[1][i0][i1]],
                on_pareto_front: front[i0][i1],
            });
        }
    }
    Ok(results)
}

/// Group equilibria into connected clusters (Chebyshev distance of at most
/// one grid step) and annotate the cooperation-sum range of each cluster.
pub fn cluster_equilibria(results: &[NashResult], resolution: f64) -> Vec<NashCluster> {
    let n = results.len();
    let mut assigned = vec![usize::MAX; n];
    let mut clusters = Vec::new();
    let link = resolution * 1.5;
    for start in 0..n {
        if assigned[start] != usize::MAX {
            continue;
        }
        let id = clusters.len();
        let mut stack = vec![start];
        let mut members = Vec::new();
        assigned[start] = id;
        while let Some(i) = stack.pop() {
            members.push(i);
            let pi = results[i].strategy.coop_probs();
            for j in 0..n {
                if assigned[j] != usize::MAX {
                    continue;
                }
                let pj = results[j].strategy.coop_probs();
                let dist = (pi[0] - pj[0]).abs().max((pi[1] - pj[1]).abs());
                if dist <= link {
                    assigned[j] = id;
                    stack.push(j);
                }
            }
        }
        let sums: Vec<f64> = members
            .iter()
            .map(|&i| results[i].strategy.coop_probs().iter().sum())
            .collect();
        let min_sum = sums.iter().cloned().fold(f64::INFINITY, f64::min);
        let max_sum = sums.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        clusters.push(NashCluster {
            representative: results[members[0]].strategy.clone(),
            size: members.len(),
            min_coop_sum: min_sum,
            max_coop_sum: max_sum,
        });
    }
    clusters
}

/// Expected payoff vectors of one player at every lattice point.
fn payoff_grid(
    spec: &GameSpec,
    points: &[f64],
    player: usize,
) -> Result<Vec<Vec<VectorReturn>>, AnalysisError> {
    let k = points.len();
    let mut out = vec![vec![VectorReturn::ZERO; k]; k];
    for (i0, &p0) in points.iter().enumerate() {
        for (i1, &p1) in points.iter().enumerate() {
            let strategy = JointStrategy::pair(p0, p1)?;
            out[i0][i1] = expected_vector_return(spec, &strategy, player)?;
        }
    }
    Ok(out)
}

/// Per-grid-point membership in the Pareto coverage set: true when the
/// point's expected payoff vector is non-dominated for at least one player.
fn pareto_membership(spec: &GameSpec, grid: &SweepGrid) -> Result<Vec<Vec<bool>>, AnalysisError> {
    check_two_player(spec)?;
    let points = grid.points();
    let k = points.len();
    let mut member = vec![vec![false; k]; k];
    for player in 0..2 {
        let payoffs = payoff_grid(spec, &points, player)?;
        // 2-objective skyline: sort by collective descending and keep the
        // points whose individual payoff is not beaten at equal-or-better
        // collective value.
        let mut flat: Vec<(f64, f64, usize, usize)> = Vec::with_capacity(k * k);
        for i0 in 0..k {
            for i1 in 0..k {
                let v = payoffs[i0][i1];
                flat.push((v.collective, v.individual, i0, i1));
            }
        }
        flat.sort_by(|a, b| b.0.total_cmp(&a.0).then(b.1.total_cmp(&a.1)));
        let mut best_higher = f64::NEG_INFINITY;
        let mut idx = 0;
        while idx < flat.len() {
            let coll = flat[idx].0;
            let mut end = idx;
            let mut group_best = f64::NEG_INFINITY;
            while end < flat.len() && flat[end].0 == coll {
                group_best = group_best.max(flat[end].1);
                end += 1;
            }
            for item in &flat[idx..end] {
                if item.1 == group_best && item.1 > best_higher {
                    member[item.2][item.3] = true;
                }
            }
            best_higher = best_higher.max(group_best);
            idx = end;
        }
    }
    Ok(member)
}

/// Grid joint strategies whose expected payoff vector is Pareto-dominated for
/// no player, ordered lexicographically by the two probabilities.
pub fn pareto_coverage_set(
    spec: &GameSpec,
    grid: &SweepGrid,
) -> Result<Vec<JointStrategy>, AnalysisError> {
    let member = pareto_membership(spec, grid)?;
    let points = grid.points();
    let mut out = Vec::new();
    for (i0, &p0) in points.iter().enumerate() {
        for (i1, &p1) in points.iter().enumerate() {
            if member[i0][i1] {
                out.push(JointStrategy::pair(p0, p1)?);
            }
        }
    }
    Ok(out)
}

/// Utilitarian welfare: the sum of the players' SER values. Welfare is taken
/// over utilities, not raw payoffs, because SER scalarises after expectation.
pub fn welfare(
    spec: &GameSpec,
    strategy: &JointStrategy,
    prefs: &[RiskPreference],
) -> Result<f64, AnalysisError> {
    check_prefs(spec, prefs)?;
    let mut total = 0.0;
    for (player, pref) in prefs.iter().enumerate() {
        total += ser_value(spec, strategy, player, pref)?;
    }
    Ok(total)
}

/// Best grid welfare divided by the welfare of the worst Nash equilibrium.
pub fn price_of_anarchy(
    spec: &GameSpec,
    prefs: &[RiskPreference],
    grid: &SweepGrid,
) -> Result<f64, AnalysisError> {
    let equilibria = find_nash_equilibria(spec, prefs, grid)?;
    if equilibria.is_empty() {
        return Err(AnalysisError::NoEquilibrium);
    }
    let m = ser_matrices(spec, prefs, grid)?;
    let k = m.points.len();
    let mut best = f64::NEG_INFINITY;
    for i0 in 0..k {
        for i1 in 0..k {
            best = best.max(m.ser[0][i0][i1] + m.ser[1][i0][i1]);
        }
    }
    let worst_nash = equilibria
        .iter()
        .map(|r| r.ser_values.iter().sum::<f64>())
        .fold(f64::INFINITY, f64::min);
    Ok(best / worst_nash)
}

/// SER of one player across the whole lattice; rows follow player 0's
/// probability, columns player 1's.
pub fn ser_landscape(
    spec: &GameSpec,
    prefs: &[RiskPreference],
    grid: &SweepGrid,
    player: usize,
) -> Result<Vec<Vec<f64>>, AnalysisError> {
    let m = ser_matrices(spec, prefs, grid)?;
    Ok(m.ser[player].clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(f: f64) -> GameSpec {
        GameSpec::symmetric(2, 4.0, f).unwrap()
    }

    fn pref(beta: f64) -> RiskPreference {
        RiskPreference::new(beta).unwrap()
    }

    #[test]
    fn expected_return_examples() {
        let s = JointStrategy::pair(1.0, 1.0).unwrap();
        let v = expected_vector_return(&spec(0.5), &s, 0).unwrap();
        assert_eq!((v.collective, v.individual), (2.0, 0.0));

        // Frozen from the brute-force enumeration over the four pure
        // profiles (oracle in tests/analysis_oracles.rs).
        let s = JointStrategy::pair(0.5, 0.5).unwrap();
        let v = expected_vector_return(&spec(1.5), &s, 0).unwrap();
        assert!((v.collective - 3.0).abs() < 1e-12);
        assert!((v.individual - 2.0).abs() < 1e-12);

        let s = JointStrategy::pair(0.0, 1.0).unwrap();
        let v = expected_vector_return(&spec(2.5), &s, 0).unwrap();
        assert_eq!((v.collective, v.individual), (5.0, 4.0));
    }

    #[test]
    fn ser_examples() {
        let s = JointStrategy::pair(1.0, 1.0).unwrap();
        assert_eq!(ser_value(&spec(0.5), &s, 0, &pref(3.0)).unwrap(), 8.0);

        let s = JointStrategy::pair(0.0, 0.0).unwrap();
        assert_eq!(ser_value(&spec(3.3), &s, 0, &pref(1.7)).unwrap(), 4.0);

        let s = JointStrategy::pair(1.0, 0.0).unwrap();
        assert_eq!(ser_value(&spec(1.0), &s, 1, &pref(2.0)).unwrap(), 8.0);
    }

    #[test]
    fn esr_examples() {
        // Pure strategies: ESR equals SER exactly.
        for &(p0, p1) in &[(0.0, 0.0), (1.0, 0.0), (1.0, 1.0)] {
            let s = JointStrategy::pair(p0, p1).unwrap();
            let esr = esr_value(&spec(1.5), &s, 0, &pref(2.0)).unwrap();
            let ser = ser_value(&spec(1.5), &s, 0, &pref(2.0)).unwrap();
            assert_eq!(esr, ser);
        }
        // Hand enumeration: 0.25*(16) + 0.25*(1) + 0.25*(1+4) + 0.25*(4)
        // has utility terms 4, 1, 5, 4 for beta = 2 at f = 0.5.
        let s = JointStrategy::pair(0.5, 0.5).unwrap();
        let esr = esr_value(&spec(0.5), &s, 0, &pref(2.0)).unwrap();
        assert!((esr - 3.5).abs() < 1e-12);

        let s = JointStrategy::pair(0.0, 0.0).unwrap();
        assert_eq!(esr_value(&spec(0.5), &s, 0, &pref(0.7)).unwrap(), 4.0);
    }

    #[test]
    fn esr_preference_inequality() {
        assert!(esr_cooperation_preferred(4.0, 0.5, 3.0));
        assert!(!esr_cooperation_preferred(4.0, 0.5, 1.0));
        assert!(esr_cooperation_preferred(4.0, 2.5, 1.0));
    }

    #[test]
    fn thresholds_match_reference_table() {
        // Rows of the published threshold table, +-0.05.
        let t = |f, beta| best_response_coop_threshold(4.0, f, beta);
        assert!((t(0.5, 3.0).unwrap() - 0.6).abs() < 0.05);
        assert!((t(0.5, 4.0).unwrap() - 0.4).abs() < 0.05);
        assert!(t(0.5, 2.0).is_none());
        assert_eq!(t(1.5, 2.0), Some(0.0));
        assert_eq!(t(2.5, 1.0), Some(0.0));
        assert!(t(1.0, 1.0).is_none());
    }

    #[test]
    fn best_response_examples() {
        assert_eq!(best_response(&spec(2.5), &pref(1.5), 1.0).unwrap(), 1.0);
        for q in [0.0, 0.3, 1.0] {
            assert_eq!(best_response(&spec(0.5), &pref(1.0), q).unwrap(), 0.0);
        }
        let br = best_response(&spec(0.5), &pref(0.5), 0.0).unwrap();
        assert!((br - 0.015625).abs() < 1e-12);
    }

    #[test]
    fn stationarity_sum_closed_form() {
        let s = interior_stationarity_sum(4.0, 0.5, &pref(0.5)).unwrap();
        assert!((s - 0.015625).abs() < 1e-15);
        assert_eq!(interior_stationarity_sum(4.0, 0.5, &pref(1.0)), None);
        assert_eq!(interior_stationarity_sum(4.0, 0.5, &pref(0.0)), Some(0.0));
    }

    #[test]
    fn nash_equilibria_qualitative() {
        let grid = SweepGrid::new(0.01).unwrap();
        let both = |beta: f64| vec![pref(beta), pref(beta)];

        let results = find_nash_equilibria(&spec(2.5), &both(1.5), &grid).unwrap();
        let strategies: Vec<_> = results
            .iter()
            .map(|r| {
                (
                    r.strategy.coop_probs()[0],
                    r.strategy.coop_probs()[1],
                )
            })
            .collect();
        assert!(strategies.contains(&(1.0, 1.0)));
        assert!(!strategies.contains(&(0.0, 0.0)));

        let results = find_nash_equilibria(&spec(1.5), &both(1.0), &grid).unwrap();
        assert!(results
            .iter()
            .any(|r| r.strategy.coop_probs() == [0.0, 0.0]));

        // Risk-averse regime: every equilibrium sits on the stationarity
        // segment near full defection.
        let results = find_nash_equilibria(&spec(0.5), &both(0.5), &grid).unwrap();
        assert!(!results.is_empty());
        let s_star = interior_stationarity_sum(4.0, 0.5, &pref(0.5)).unwrap();
        for r in &results {
            let sum: f64 = r.strategy.coop_probs().iter().sum();
            assert!((sum - s_star).abs() < 0.02, "sum {sum} vs s* {s_star}");
            assert!(!r.on_pareto_front);
        }
    }

    #[test]
    fn mutual_cooperation_is_on_the_front() {
        let grid = SweepGrid::new(0.05).unwrap();
        for f in [0.5, 1.5, 2.5] {
            let pcs = pareto_coverage_set(&spec(f), &grid).unwrap();
            assert!(pcs
                .iter()
                .any(|s| s.coop_probs() == [1.0, 1.0]));
            // Full defection is dominated for each player by the strategy
            // where only the opponent switches to cooperation.
            assert!(!pcs.iter().any(|s| s.coop_probs() == [0.0, 0.0]));
        }
    }

    #[test]
    fn welfare_examples() {
        let both = |beta: f64| vec![pref(beta), pref(beta)];
        let s = JointStrategy::pair(1.0, 1.0).unwrap();
        assert_eq!(welfare(&spec(1.0), &s, &both(2.0)).unwrap(), 32.0);
        assert_eq!(welfare(&spec(2.5), &s, &both(1.0)).unwrap(), 20.0);
        let s = JointStrategy::pair(0.0, 0.0).unwrap();
        assert_eq!(welfare(&spec(1.5), &s, &both(0.8)).unwrap(), 8.0);
    }

    #[test]
    fn welfare_is_sum_of_ser_values() {
        let prefs = vec![pref(1.3), pref(0.6)];
        for &(p0, p1) in &[(0.25, 0.75), (0.0, 1.0), (0.5, 0.5)] {
            let s = JointStrategy::pair(p0, p1).unwrap();
            let w = welfare(&spec(1.7), &s, &prefs).unwrap();
            let sum = ser_value(&spec(1.7), &s, 0, &prefs[0]).unwrap()
                + ser_value(&spec(1.7), &s, 1, &prefs[1]).unwrap();
            assert_eq!(w, sum);
        }
    }

    #[test]
    fn price_of_anarchy_linear_mixed_motive() {
        // beta = 1, f = 1.5: defection is the only equilibrium, the social
        // optimum is mutual cooperation; PoA = 12 / 8.
        let grid = SweepGrid::new(0.05).unwrap();
        let prefs = vec![pref(1.0), pref(1.0)];
        let poa = price_of_anarchy(&spec(1.5), &prefs, &grid).unwrap();
        assert!((poa - 1.5).abs() < 1e-9);
    }

    #[test]
    fn landscape_shape_and_corner_values() {
        let grid = SweepGrid::new(0.01).unwrap();
        let prefs = vec![pref(0.5), pref(0.5)];
        let m = ser_landscape(&spec(0.5), &prefs, &grid, 0).unwrap();
        assert_eq!(m.len(), 101);
        assert!(m.iter().all(|row| row.len() == 101));
        assert_eq!(m[0][0], 4.0);
        assert!((m[100][100] - 2.0_f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn grid_contains_endpoints() {
        for res in [0.01, 0.05, 0.3, 0.5] {
            let pts = SweepGrid::new(res).unwrap().points();
            assert_eq!(pts[0], 0.0);
            assert_eq!(*pts.last().unwrap(), 1.0);
        }
        assert_eq!(SweepGrid::new(0.01).unwrap().points().len(), 101);
        assert_eq!(SweepGrid::new(0.5).unwrap().points().len(), 3);
        assert!(SweepGrid::new(0.0).is_err());
        assert!(SweepGrid::new(0.7).is_err());
    }

    #[test]
    fn clustering_annotates_segments() {
        let grid = SweepGrid::new(0.01).unwrap();
        let prefs = vec![pref(0.5), pref(0.5)];
        let results = find_nash_equilibria(&spec(0.5), &prefs, &grid).unwrap();
        let clusters = cluster_equilibria(&results, 0.01);
        assert!(!clusters.is_empty());
        let total: usize = clusters.iter().map(|c| c.size).sum();
        assert_eq!(total, results.len());
        for c in &clusters {
            assert!(c.max_coop_sum - c.min_coop_sum < 0.05);
        }
    }

    #[test]
    fn analysis_rejects_invalid_inputs() {
        let three = GameSpec::symmetric(3, 4.0, 1.0).unwrap();
        let s = JointStrategy::pair(0.5, 0.5).unwrap();
        assert!(matches!(
            expected_vector_return(&three, &s, 0),
            Err(AnalysisError::NotTwoPlayer { .. })
        ));
        let lopsided = GameSpec::new(vec![4.0, 2.0], 1.0).unwrap();
        assert!(matches!(
            best_response(&lopsided, &pref(1.0), 0.5),
            Err(AnalysisError::UnequalEndowments)
        ));
        assert!(JointStrategy::pair(1.2, 0.0).is_err());
        assert!(matches!(
            ser_value(&spec(1.0), &JointStrategy::new(vec![0.5]).unwrap(), 0, &pref(1.0)),
            Err(AnalysisError::StrategyLengthMismatch { .. })
        ));
    }
}
