//! The satisfaction relation and model-level validity.
//!
//! `satisfies` is a direct recursive reading of the semantics, evaluated at a
//! single point. `truth_set` computes the set of all points satisfying a
//! formula in one bottom-up pass over subformulas; `valid_in_model`,
//! `failing_points`, and `consistent_across_meanings` are built on it. The
//! two routes are interchangeable on the standard semantics and are tested
//! against each other.

use thiserror::Error;

use crate::formula::{AgentId, Formula};
use crate::model::{Model, Point, StateId};

/// Which clause interprets `K[a]`.
///
/// `Standard` quantifies over every meaning of every indistinguishable state.
/// `MeaningIndexedK` is the rejected alternative that keeps the current
/// meaning fixed while moving across states; it presupposes that the meaning
/// exists in every indistinguishable state and reports an error otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SemanticsMode {
    #[default]
    Standard,
    MeaningIndexedK,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("formula mentions unknown agent `{0}`")]
    UnknownAgent(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("state `{state}` has no meaning `{meaning}`")]
    UnknownMeaning { state: String, meaning: String },
    #[error("meaning `{meaning}` does not exist in indistinguishable state `{state}`")]
    MeaningNotShared { state: String, meaning: String },
}

/// The set of points of one model at which a formula holds, stored as one
/// meaning bitmask per state.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruthSet {
    masks: Vec<u64>,
}

impl TruthSet {
    pub fn holds_at(&self, model: &Model, point: &Point) -> Result<bool, EvalError> {
        let (si, mi) = resolve_point(model, point)?;
        Ok(self.masks[si] >> mi & 1 == 1)
    }

    fn holds_everywhere(&self, model: &Model) -> bool {
        (0..self.masks.len()).all(|si| self.masks[si] == model.full_mask(si))
    }
}

fn resolve_point(model: &Model, point: &Point) -> Result<(usize, usize), EvalError> {
    let si = model
        .state_pos(point.state.as_str())
        .ok_or_else(|| EvalError::UnknownState(point.state.to_string()))?;
    let mi = model
        .meaning_pos(si, point.meaning.as_str())
        .ok_or_else(|| EvalError::UnknownMeaning {
            state: point.state.to_string(),
            meaning: point.meaning.to_string(),
        })?;
    Ok((si, mi))
}

fn agent_pos(model: &Model, agent: &AgentId) -> Result<usize, EvalError> {
    model
        .agent_pos(agent.as_str())
        .ok_or_else(|| EvalError::UnknownAgent(agent.to_string()))
}

/// Whether the formula holds at the given point.
pub fn satisfies(
    model: &Model,
    point: &Point,
    f: &Formula,
    mode: SemanticsMode,
) -> Result<bool, EvalError> {
    let (si, mi) = resolve_point(model, point)?;
    eval_at(model, si, mi, f, mode)
}

fn eval_at(
    model: &Model,
    si: usize,
    mi: usize,
    f: &Formula,
    mode: SemanticsMode,
) -> Result<bool, EvalError> {
    match f {
        Formula::Var(v) => Ok(model.var_mask(v, si) >> mi & 1 == 1),
        Formula::Top => Ok(true),
        Formula::Not(x) => Ok(!eval_at(model, si, mi, x, mode)?),
        Formula::Implies(lhs, rhs) => {
            Ok(!eval_at(model, si, mi, lhs, mode)? || eval_at(model, si, mi, rhs, mode)?)
        }
        Formula::Know(agent, x) => {
            let ai = agent_pos(model, agent)?;
            match mode {
                SemanticsMode::Standard => {
                    for &u in model.block_states(ai, si) {
                        for um in 0..model.meaning_count(u) {
                            if !eval_at(model, u, um, x, mode)? {
                                return Ok(false);
                            }
                        }
                    }
                    Ok(true)
                }
                SemanticsMode::MeaningIndexedK => {
                    // The alternative clause presupposes the current meaning
                    // in every related state, so resolve them all before
                    // evaluating anything.
                    let name = model.meaning_name(si, mi).clone();
                    let mut resolved = Vec::new();
                    for &u in model.block_states(ai, si) {
                        let um = model.meaning_pos(u, name.as_str()).ok_or_else(|| {
                            EvalError::MeaningNotShared {
                                state: model.state_name(u).to_string(),
                                meaning: name.to_string(),
                            }
                        })?;
                        resolved.push((u, um));
                    }
                    for (u, um) in resolved {
                        if !eval_at(model, u, um, x, mode)? {
                            return Ok(false);
                        }
                    }
                    Ok(true)
                }
            }
        }
        Formula::Comp(agent, x) => {
            // The current meaning is irrelevant: the formula must be constant
            // across the meanings of each indistinguishable state.
            let ai = agent_pos(model, agent)?;
            for &u in model.block_states(ai, si) {
                let first = eval_at(model, u, 0, x, mode)?;
                for um in 1..model.meaning_count(u) {
                    if eval_at(model, u, um, x, mode)? != first {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
    }
}

/// The set of all points at which the formula holds (standard semantics),
/// computed in one pass per subformula.
pub fn truth_set(model: &Model, f: &Formula) -> Result<TruthSet, EvalError> {
    Ok(TruthSet {
        masks: eval_set(model, f)?,
    })
}

fn eval_set(model: &Model, f: &Formula) -> Result<Vec<u64>, EvalError> {
    let n = model.state_count();
    match f {
        Formula::Var(v) => Ok((0..n).map(|si| model.var_mask(v, si)).collect()),
        Formula::Top => Ok((0..n).map(|si| model.full_mask(si)).collect()),
        Formula::Not(x) => {
            let mut t = eval_set(model, x)?;
            for (si, mask) in t.iter_mut().enumerate() {
                *mask = model.full_mask(si) & !*mask;
            }
            Ok(t)
        }
        Formula::Implies(lhs, rhs) => {
            let l = eval_set(model, lhs)?;
            let mut r = eval_set(model, rhs)?;
            for si in 0..n {
                r[si] |= model.full_mask(si) & !l[si];
            }
            Ok(r)
        }
        Formula::Know(agent, x) => {
            let ai = agent_pos(model, agent)?;
            let t = eval_set(model, x)?;
            let mut out = vec![0u64; n];
            for block in model.agent_blocks(ai) {
                if block.iter().all(|&u| t[u] == model.full_mask(u)) {
                    for &u in block {
                        out[u] = model.full_mask(u);
                    }
                }
            }
            Ok(out)
        }
        Formula::Comp(agent, x) => {
            let ai = agent_pos(model, agent)?;
            let t = eval_set(model, x)?;
            let mut out = vec![0u64; n];
            for block in model.agent_blocks(ai) {
                let consistent = block
                    .iter()
                    .all(|&u| t[u] == 0 || t[u] == model.full_mask(u));
                if consistent {
                    for &u in block {
                        out[u] = model.full_mask(u);
                    }
                }
            }
            Ok(out)
        }
    }
}

/// True iff the formula's truth value is uniform across the meanings of the
/// given state (standard semantics).
pub fn consistent_across_meanings(
    model: &Model,
    state: &StateId,
    f: &Formula,
) -> Result<bool, EvalError> {
    let si = model
        .state_pos(state.as_str())
        .ok_or_else(|| EvalError::UnknownState(state.to_string()))?;
    let t = truth_set(model, f)?;
    let mask = t.masks[si];
    Ok(mask == 0 || mask == model.full_mask(si))
}

/// True iff the formula holds at every point of the model.
pub fn valid_in_model(model: &Model, f: &Formula) -> Result<bool, EvalError> {
    Ok(truth_set(model, f)?.holds_everywhere(model))
}

/// All falsifying points, in canonical order.
pub fn failing_points(model: &Model, f: &Formula) -> Result<Vec<Point>, EvalError> {
    let t = truth_set(model, f)?;
    let mut out = Vec::new();
    for point in model.points() {
        if !t.holds_at(model, &point)? {
            out.push(point);
        }
    }
    Ok(out)
}
