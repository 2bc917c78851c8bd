//! Epistemic models with meanings: validation, lookups, and the JSON format.
//!
//! A model is a tuple of states, per-agent indistinguishability partitions,
//! a nonempty meaning set per state, and a valuation mapping each variable,
//! per state, to a subset of that state's meanings. Storing
//! indistinguishability as a partition makes it an equivalence relation by
//! construction. Valuations are sparse: unmentioned variables are false under
//! every meaning.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::path::Path;

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{is_identifier, AgentId, IdentError, VarId};

/// A state name. Scoped to one model.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateId(String);

impl StateId {
    pub fn new(name: impl Into<String>) -> Result<Self, IdentError> {
        let name = name.into();
        if is_identifier(&name) {
            Ok(StateId(name))
        } else {
            Err(IdentError::Invalid(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A meaning name. Scoped to one state: two states may reuse the same name
/// for distinct meanings.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MeaningId(String);

impl MeaningId {
    pub fn new(name: impl Into<String>) -> Result<Self, IdentError> {
        let name = name.into();
        if is_identifier(&name) {
            Ok(MeaningId(name))
        } else {
            Err(IdentError::Invalid(name))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for MeaningId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A (state, meaning) pair — the unit at which satisfaction is evaluated.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Point {
    pub state: StateId,
    pub meaning: MeaningId,
}

impl Point {
    pub fn new(state: StateId, meaning: MeaningId) -> Self {
        Point { state, meaning }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.state, self.meaning)
    }
}

/// A structurally parsed model file, prior to validation.
///
/// Field names are the on-disk JSON schema:
///
/// ```json
/// {"states": ["w1"], "agents": ["a"],
///  "indist": {"a": [["w1"]]},
///  "meanings": {"w1": ["m1", "m2"]},
///  "valuation": {"w1": {"p": ["m1"]}}}
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ModelDescription {
    pub states: Vec<String>,
    pub agents: Vec<String>,
    #[serde(default)]
    pub indist: IndexMap<String, Vec<Vec<String>>>,
    #[serde(default)]
    pub meanings: IndexMap<String, Vec<String>>,
    #[serde(default)]
    pub valuation: IndexMap<String, IndexMap<String, Vec<String>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("model has no states")]
    NoStates,
    #[error("invalid {kind} name `{name}`")]
    InvalidName { kind: &'static str, name: String },
    #[error("duplicate state `{0}`")]
    DuplicateState(String),
    #[error("duplicate agent `{0}`")]
    DuplicateAgent(String),
    #[error("blocks for agent `{0}` do not partition the states")]
    NotAPartition(String),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("unknown agent `{0}`")]
    UnknownAgent(String),
    #[error("state `{0}` has an empty meaning set")]
    EmptyMeaningSet(String),
    #[error("duplicate meaning in state `{0}`")]
    DuplicateMeaning(String),
    #[error("state `{0}` has more than 64 meanings")]
    TooManyMeanings(String),
    #[error("valuation of `{var}` in state `{state}` names unknown meaning `{meaning}`")]
    UnknownMeaning {
        state: String,
        var: String,
        meaning: String,
    },
    #[error("state `{state}` has no meaning `{meaning}`")]
    NoSuchMeaning { state: String, meaning: String },
    #[error("io error: {0}")]
    Io(String),
    #[error("format error at {location}: {message}")]
    Format { location: String, message: String },
}

/// A validated epistemic model with meanings.
///
/// Immutable after [`Model::validate`]; safe to share read-only across
/// threads. States, agents, and per-state meanings keep the order of the
/// description they were validated from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    states: Vec<StateId>,
    agents: Vec<AgentId>,
    /// Per agent: blocks of state indices, in description order.
    blocks: Vec<Vec<Vec<usize>>>,
    /// Per agent: state index -> block index.
    block_of: Vec<Vec<usize>>,
    /// Per state: its meanings, in description order.
    meanings: Vec<Vec<MeaningId>>,
    /// Per variable: state index -> bitmask over that state's meanings.
    valuation: BTreeMap<VarId, Vec<u64>>,
    state_index: HashMap<String, usize>,
    agent_index: HashMap<String, usize>,
}

impl Model {
    /// Checks every structural invariant of a description and builds the
    /// indexed model.
    pub fn validate(desc: &ModelDescription) -> Result<Model, ModelError> {
        if desc.states.is_empty() {
            return Err(ModelError::NoStates);
        }

        let mut states = Vec::with_capacity(desc.states.len());
        let mut state_index = HashMap::new();
        for name in &desc.states {
            let id = StateId::new(name).map_err(|_| ModelError::InvalidName {
                kind: "state",
                name: name.clone(),
            })?;
            if state_index.insert(name.clone(), states.len()).is_some() {
                return Err(ModelError::DuplicateState(name.clone()));
            }
            states.push(id);
        }

        let mut agents = Vec::with_capacity(desc.agents.len());
        let mut agent_index = HashMap::new();
        for name in &desc.agents {
            let id = AgentId::new(name).map_err(|_| ModelError::InvalidName {
                kind: "agent",
                name: name.clone(),
            })?;
            if agent_index.insert(name.clone(), agents.len()).is_some() {
                return Err(ModelError::DuplicateAgent(name.clone()));
            }
            agents.push(id);
        }

        for key in desc.indist.keys() {
            if !agent_index.contains_key(key) {
                return Err(ModelError::UnknownAgent(key.clone()));
            }
        }
        let mut blocks = Vec::with_capacity(agents.len());
        let mut block_of = Vec::with_capacity(agents.len());
        for agent in &agents {
            let raw = desc
                .indist
                .get(agent.as_str())
                .ok_or_else(|| ModelError::NotAPartition(agent.to_string()))?;
            let mut covered = vec![false; states.len()];
            let mut agent_blocks = Vec::with_capacity(raw.len());
            let mut agent_block_of = vec![0usize; states.len()];
            for block in raw {
                if block.is_empty() {
                    return Err(ModelError::NotAPartition(agent.to_string()));
                }
                let mut indices = Vec::with_capacity(block.len());
                for state_name in block {
                    let &si = state_index
                        .get(state_name)
                        .ok_or_else(|| ModelError::UnknownState(state_name.clone()))?;
                    if covered[si] {
                        return Err(ModelError::NotAPartition(agent.to_string()));
                    }
                    covered[si] = true;
                    agent_block_of[si] = agent_blocks.len();
                    indices.push(si);
                }
                agent_blocks.push(indices);
            }
            if !covered.iter().all(|&c| c) {
                return Err(ModelError::NotAPartition(agent.to_string()));
            }
            blocks.push(agent_blocks);
            block_of.push(agent_block_of);
        }

        for key in desc.meanings.keys() {
            if !state_index.contains_key(key) {
                return Err(ModelError::UnknownState(key.clone()));
            }
        }
        let mut meanings = Vec::with_capacity(states.len());
        for state in &states {
            let raw = desc
                .meanings
                .get(state.as_str())
                .filter(|list| !list.is_empty())
                .ok_or_else(|| ModelError::EmptyMeaningSet(state.to_string()))?;
            if raw.len() > 64 {
                return Err(ModelError::TooManyMeanings(state.to_string()));
            }
            let mut list: Vec<MeaningId> = Vec::with_capacity(raw.len());
            for name in raw {
                let id = MeaningId::new(name).map_err(|_| ModelError::InvalidName {
                    kind: "meaning",
                    name: name.clone(),
                })?;
                if list.contains(&id) {
                    return Err(ModelError::DuplicateMeaning(state.to_string()));
                }
                list.push(id);
            }
            meanings.push(list);
        }

        let mut valuation: BTreeMap<VarId, Vec<u64>> = BTreeMap::new();
        for (state_name, vars) in &desc.valuation {
            let &si = state_index
                .get(state_name)
                .ok_or_else(|| ModelError::UnknownState(state_name.clone()))?;
            for (var_name, set) in vars {
                let var = VarId::new(var_name).map_err(|_| ModelError::InvalidName {
                    kind: "variable",
                    name: var_name.clone(),
                })?;
                let masks = valuation
                    .entry(var)
                    .or_insert_with(|| vec![0u64; states.len()]);
                for meaning_name in set {
                    let mi = meanings[si]
                        .iter()
                        .position(|m| m.as_str() == meaning_name)
                        .ok_or_else(|| ModelError::UnknownMeaning {
                            state: state_name.clone(),
                            var: var_name.clone(),
                            meaning: meaning_name.clone(),
                        })?;
                    masks[si] |= 1 << mi;
                }
            }
        }

        Ok(Model {
            states,
            agents,
            blocks,
            block_of,
            meanings,
            valuation,
            state_index,
            agent_index,
        })
    }

    /// The canonical description: states and agents in model order, map keys
    /// in model order, variables sorted, meaning sets in per-state meaning
    /// order, and empty valuation entries dropped.
    pub fn description(&self) -> ModelDescription {
        let mut indist = IndexMap::new();
        for (ai, agent) in self.agents.iter().enumerate() {
            let blocks = self.blocks[ai]
                .iter()
                .map(|block| {
                    block
                        .iter()
                        .map(|&si| self.states[si].to_string())
                        .collect()
                })
                .collect();
            indist.insert(agent.to_string(), blocks);
        }

        let mut meanings = IndexMap::new();
        for (si, state) in self.states.iter().enumerate() {
            meanings.insert(
                state.to_string(),
                self.meanings[si].iter().map(|m| m.to_string()).collect(),
            );
        }

        let mut valuation = IndexMap::new();
        for (si, state) in self.states.iter().enumerate() {
            let mut per_var = IndexMap::new();
            for (var, masks) in &self.valuation {
                let mask = masks[si];
                if mask == 0 {
                    continue;
                }
                let set = self.meanings[si]
                    .iter()
                    .enumerate()
                    .filter(|(mi, _)| mask >> mi & 1 == 1)
                    .map(|(_, m)| m.to_string())
                    .collect();
                per_var.insert(var.to_string(), set);
            }
            if !per_var.is_empty() {
                valuation.insert(state.to_string(), per_var);
            }
        }

        ModelDescription {
            states: self.states.iter().map(|s| s.to_string()).collect(),
            agents: self.agents.iter().map(|a| a.to_string()).collect(),
            indist,
            meanings,
            valuation,
        }
    }

    /// Canonical JSON text; `save` writes exactly this.
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(&self.description())
            .expect("model descriptions always serialize");
        text.push('\n');
        text
    }

    pub fn from_json_str(text: &str) -> Result<Model, ModelError> {
        let desc: ModelDescription =
            serde_json::from_str(text).map_err(|e| ModelError::Format {
                location: format!("line {}, column {}", e.line(), e.column()),
                message: e.to_string(),
            })?;
        Model::validate(&desc)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Model, ModelError> {
        let text =
            std::fs::read_to_string(path.as_ref()).map_err(|e| ModelError::Io(e.to_string()))?;
        Model::from_json_str(&text)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), ModelError> {
        std::fs::write(path.as_ref(), self.to_json()).map_err(|e| ModelError::Io(e.to_string()))
    }

    pub fn states(&self) -> &[StateId] {
        &self.states
    }

    pub fn agents(&self) -> &[AgentId] {
        &self.agents
    }

    /// The meanings of a state, in model order.
    pub fn meanings(&self, state: &StateId) -> Result<&[MeaningId], ModelError> {
        let si = self
            .state_pos(state.as_str())
            .ok_or_else(|| ModelError::UnknownState(state.to_string()))?;
        Ok(&self.meanings[si])
    }

    /// True iff `w` and `u` share a block of the agent's partition.
    pub fn indistinguishable(
        &self,
        agent: &AgentId,
        w: &StateId,
        u: &StateId,
    ) -> Result<bool, ModelError> {
        let ai = self
            .agent_pos(agent.as_str())
            .ok_or_else(|| ModelError::UnknownAgent(agent.to_string()))?;
        let wi = self
            .state_pos(w.as_str())
            .ok_or_else(|| ModelError::UnknownState(w.to_string()))?;
        let ui = self
            .state_pos(u.as_str())
            .ok_or_else(|| ModelError::UnknownState(u.to_string()))?;
        Ok(self.block_of[ai][wi] == self.block_of[ai][ui])
    }

    /// Builds a validated point from raw names.
    pub fn point(&self, state: &str, meaning: &str) -> Result<Point, ModelError> {
        let si = self
            .state_pos(state)
            .ok_or_else(|| ModelError::UnknownState(state.to_string()))?;
        let mi = self
            .meaning_pos(si, meaning)
            .ok_or_else(|| ModelError::NoSuchMeaning {
                state: state.to_string(),
                meaning: meaning.to_string(),
            })?;
        Ok(Point {
            state: self.states[si].clone(),
            meaning: self.meanings[si][mi].clone(),
        })
    }

    /// All points in canonical order: states in model order, meanings in
    /// per-state order.
    pub fn points(&self) -> impl Iterator<Item = Point> + '_ {
        self.states.iter().enumerate().flat_map(move |(si, s)| {
            self.meanings[si].iter().map(move |m| Point {
                state: s.clone(),
                meaning: m.clone(),
            })
        })
    }

    pub(crate) fn state_count(&self) -> usize {
        self.states.len()
    }

    pub(crate) fn state_pos(&self, name: &str) -> Option<usize> {
        self.state_index.get(name).copied()
    }

    pub(crate) fn agent_pos(&self, name: &str) -> Option<usize> {
        self.agent_index.get(name).copied()
    }

    pub(crate) fn state_name(&self, si: usize) -> &StateId {
        &self.states[si]
    }

    pub(crate) fn meaning_count(&self, si: usize) -> usize {
        self.meanings[si].len()
    }

    pub(crate) fn meaning_name(&self, si: usize, mi: usize) -> &MeaningId {
        &self.meanings[si][mi]
    }

    pub(crate) fn meaning_pos(&self, si: usize, name: &str) -> Option<usize> {
        self.meanings[si].iter().position(|m| m.as_str() == name)
    }

    /// Bitmask of meanings of state `si` where `var` is true.
    pub(crate) fn var_mask(&self, var: &VarId, si: usize) -> u64 {
        self.valuation.get(var).map_or(0, |masks| masks[si])
    }

    /// Bitmask covering every meaning of state `si`.
    pub(crate) fn full_mask(&self, si: usize) -> u64 {
        mask_of(self.meanings[si].len())
    }

    /// The states the agent cannot distinguish from `si` (including `si`).
    pub(crate) fn block_states(&self, ai: usize, si: usize) -> &[usize] {
        &self.blocks[ai][self.block_of[ai][si]]
    }

    pub(crate) fn agent_blocks(&self, ai: usize) -> &[Vec<usize>] {
        &self.blocks[ai]
    }
}

pub(crate) fn mask_of(count: usize) -> u64 {
    if count >= 64 {
        u64::MAX
    } else {
        (1u64 << count) - 1
    }
}
