//! Bounded exhaustive search for a pointed model falsifying (or satisfying)
//! a formula.
//!
//! Candidates are enumerated in a fixed order: state counts ascending, then
//! per-agent partitions as restricted-growth strings in lexicographic order
//! (earlier agents vary slower), then per-state meaning counts in
//! lexicographic order, then valuations with each subset counted in binary
//! (state-major, variable-minor, last digit fastest). Candidates are
//! evaluated on a compact bitmask representation; a real [`Model`] is only
//! materialized for the witness, which is re-checked through the checker
//! before it is returned.
//!
//! There is no completeness claim at any bound: exhausting the bounds says
//! nothing beyond the bounds.

use std::time::{Duration, Instant};

use indexmap::IndexMap;

use crate::checker::{satisfies, SemanticsMode};
use crate::formula::{AgentId, Formula, VarId};
use crate::model::{Model, ModelDescription, Point};

/// Limits for the exhaustive enumerator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_states: usize,
    pub max_meanings: usize,
    pub time_limit: Option<Duration>,
}

impl SearchBounds {
    pub fn new(max_states: usize, max_meanings: usize) -> Self {
        SearchBounds {
            max_states,
            max_meanings,
            time_limit: None,
        }
    }

    pub fn with_time_limit(mut self, limit: Duration) -> Self {
        self.time_limit = Some(limit);
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum SearchResult {
    /// A witness model and the first falsifying (for `find_countermodel`) or
    /// satisfying (for `find_model`) point, in enumeration order.
    Found(Box<Model>, Point),
    ExhaustedBounds,
    TimedOut,
}

/// Searches for a model with a point at which `f` is false.
pub fn find_countermodel(f: &Formula, bounds: &SearchBounds) -> SearchResult {
    assert!(bounds.max_states >= 1 && bounds.max_meanings >= 1);
    assert!(
        bounds.max_states * bounds.max_meanings <= 64,
        "bounds exceed the 64-point search limit"
    );
    let compiled = Compiled::from_formula(f);
    let start = Instant::now();

    for num_states in 1..=bounds.max_states {
        let mut enumerator = Enumerator::new(&compiled, num_states, bounds.max_meanings);
        loop {
            if let Some(limit) = bounds.time_limit {
                if start.elapsed() >= limit {
                    return SearchResult::TimedOut;
                }
            }
            if let Some(point_idx) = enumerator.falsifying_point(&compiled) {
                let (model, point) = enumerator.materialize(&compiled, point_idx);
                let verified = satisfies(&model, &point, f, SemanticsMode::Standard);
                assert_eq!(
                    verified,
                    Ok(false),
                    "search witness disagrees with the checker"
                );
                return SearchResult::Found(Box::new(model), point);
            }
            if !enumerator.advance() {
                break;
            }
        }
    }
    SearchResult::ExhaustedBounds
}

/// Searches for a model with a point at which `f` is true, by falsifying its
/// negation.
pub fn find_model(f: &Formula, bounds: &SearchBounds) -> SearchResult {
    match find_countermodel(&Formula::not(f.clone()), bounds) {
        SearchResult::Found(model, point) => {
            debug_assert_eq!(
                satisfies(&model, &point, f, SemanticsMode::Standard),
                Ok(true)
            );
            SearchResult::Found(model, point)
        }
        other => other,
    }
}

// --- compiled formula -------------------------------------------------------

/// Index-based postorder rendering of a formula: children always precede
/// parents, so one forward pass evaluates the whole tree.
enum Node {
    Var(usize),
    Top,
    Not(usize),
    Implies(usize, usize),
    Know(usize, usize),
    Comp(usize, usize),
}

struct Compiled {
    nodes: Vec<Node>,
    agents: Vec<AgentId>,
    vars: Vec<VarId>,
}

impl Compiled {
    fn from_formula(f: &Formula) -> Compiled {
        let (agent_set, var_set) = f.signature();
        let mut agents: Vec<AgentId> = agent_set.into_iter().collect();
        let mut vars: Vec<VarId> = var_set.into_iter().collect();
        // The modal clauses quantify over agents, which must exist in every
        // candidate; inject one fresh agent (and variable) when the formula
        // mentions none.
        if agents.is_empty() {
            agents.push(AgentId::new("a").unwrap());
        }
        if vars.is_empty() {
            vars.push(VarId::new("p").unwrap());
        }
        let mut compiled = Compiled {
            nodes: Vec::new(),
            agents,
            vars,
        };
        compiled.push(f);
        compiled
    }

    fn push(&mut self, f: &Formula) -> usize {
        let node = match f {
            Formula::Var(v) => Node::Var(self.vars.iter().position(|x| x == v).unwrap()),
            Formula::Top => Node::Top,
            Formula::Not(x) => {
                let xi = self.push(x);
                Node::Not(xi)
            }
            Formula::Implies(lhs, rhs) => {
                let li = self.push(lhs);
                let ri = self.push(rhs);
                Node::Implies(li, ri)
            }
            Formula::Know(a, x) => {
                let ai = self.agents.iter().position(|b| b == a).unwrap();
                let xi = self.push(x);
                Node::Know(ai, xi)
            }
            Formula::Comp(a, x) => {
                let ai = self.agents.iter().position(|b| b == a).unwrap();
                let xi = self.push(x);
                Node::Comp(ai, xi)
            }
        };
        self.nodes.push(node);
        self.nodes.len() - 1
    }
}

// --- enumeration for one state count ----------------------------------------

fn submask(bits: u8) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

struct Enumerator {
    num_states: usize,
    max_meanings: usize,
    num_agents: usize,
    num_vars: usize,
    /// All restricted-growth strings of this length, lexicographic.
    rgs_pool: Vec<Vec<u8>>,
    /// Per agent: index into `rgs_pool`.
    partition_choice: Vec<usize>,
    /// Per agent: block id -> member states (derived from the choice).
    block_states: Vec<Vec<Vec<usize>>>,
    /// Meanings per state, each in `1..=max_meanings`.
    counts: Vec<u8>,
    /// Derived from `counts`.
    offsets: Vec<u32>,
    state_masks: Vec<u64>,
    all_mask: u64,
    /// Per agent: block id -> mask of the block's points.
    block_masks: Vec<Vec<u64>>,
    /// Subset digit per (state, var), state-major.
    val_digits: Vec<u64>,
    var_masks: Vec<u64>,
    scratch: Vec<u64>,
}

impl Enumerator {
    fn new(compiled: &Compiled, num_states: usize, max_meanings: usize) -> Self {
        let num_agents = compiled.agents.len();
        let num_vars = compiled.vars.len();
        let mut e = Enumerator {
            num_states,
            max_meanings,
            num_agents,
            num_vars,
            rgs_pool: all_restricted_growth_strings(num_states),
            partition_choice: vec![0; num_agents],
            block_states: Vec::new(),
            counts: vec![1; num_states],
            offsets: Vec::new(),
            state_masks: Vec::new(),
            all_mask: 0,
            block_masks: Vec::new(),
            val_digits: vec![0; num_states * num_vars],
            var_masks: vec![0; num_vars],
            scratch: vec![0; compiled.nodes.len()],
        };
        e.rebuild_blocks();
        e.rebuild_counts();
        e.rebuild_var_masks();
        e
    }

    fn rebuild_blocks(&mut self) {
        self.block_states = self
            .partition_choice
            .iter()
            .map(|&choice| {
                let rgs = &self.rgs_pool[choice];
                let num_blocks = rgs.iter().copied().max().unwrap_or(0) as usize + 1;
                let mut blocks = vec![Vec::new(); num_blocks];
                for (state, &block) in rgs.iter().enumerate() {
                    blocks[block as usize].push(state);
                }
                blocks
            })
            .collect();
    }

    fn rebuild_counts(&mut self) {
        self.offsets.clear();
        self.state_masks.clear();
        let mut offset = 0u32;
        for &c in &self.counts {
            self.offsets.push(offset);
            self.state_masks.push(submask(c) << offset);
            offset += c as u32;
        }
        self.all_mask = if offset >= 64 {
            u64::MAX
        } else {
            (1u64 << offset) - 1
        };
        self.block_masks = self
            .block_states
            .iter()
            .map(|blocks| {
                blocks
                    .iter()
                    .map(|states| {
                        states
                            .iter()
                            .map(|&s| self.state_masks[s])
                            .fold(0, |acc, m| acc | m)
                    })
                    .collect()
            })
            .collect();
    }

    fn rebuild_var_masks(&mut self) {
        for v in 0..self.num_vars {
            let mut mask = 0u64;
            for s in 0..self.num_states {
                mask |= self.val_digits[s * self.num_vars + v] << self.offsets[s];
            }
            self.var_masks[v] = mask;
        }
    }

    /// Moves to the next candidate; false when this state count is done.
    fn advance(&mut self) -> bool {
        // Innermost: valuation digits, binary counting, last digit fastest.
        for idx in (0..self.val_digits.len()).rev() {
            let state = idx / self.num_vars;
            let cap = 1u128 << self.counts[state];
            if u128::from(self.val_digits[idx]) + 1 < cap {
                self.val_digits[idx] += 1;
                for later in self.val_digits[idx + 1..].iter_mut() {
                    *later = 0;
                }
                self.rebuild_var_masks();
                return true;
            }
        }
        // Then meaning counts, lexicographic.
        for i in (0..self.num_states).rev() {
            if (self.counts[i] as usize) < self.max_meanings {
                self.counts[i] += 1;
                for later in self.counts[i + 1..].iter_mut() {
                    *later = 1;
                }
                self.val_digits.iter_mut().for_each(|d| *d = 0);
                self.rebuild_counts();
                self.rebuild_var_masks();
                return true;
            }
        }
        // Outermost: partition choices, earlier agents vary slower.
        for i in (0..self.num_agents).rev() {
            if self.partition_choice[i] + 1 < self.rgs_pool.len() {
                self.partition_choice[i] += 1;
                for later in self.partition_choice[i + 1..].iter_mut() {
                    *later = 0;
                }
                self.counts.iter_mut().for_each(|c| *c = 1);
                self.val_digits.iter_mut().for_each(|d| *d = 0);
                self.rebuild_blocks();
                self.rebuild_counts();
                self.rebuild_var_masks();
                return true;
            }
        }
        false
    }

    /// Lowest point index where the compiled formula is false, if any.
    fn falsifying_point(&mut self, compiled: &Compiled) -> Option<u32> {
        let truth = self.eval(compiled);
        let failing = self.all_mask & !truth;
        if failing == 0 {
            None
        } else {
            Some(failing.trailing_zeros())
        }
    }

    fn eval(&mut self, compiled: &Compiled) -> u64 {
        for (i, node) in compiled.nodes.iter().enumerate() {
            let value = match *node {
                Node::Var(v) => self.var_masks[v],
                Node::Top => self.all_mask,
                Node::Not(x) => self.all_mask & !self.scratch[x],
                Node::Implies(l, r) => (self.all_mask & !self.scratch[l]) | self.scratch[r],
                Node::Know(a, x) => {
                    let t = self.scratch[x];
                    let mut out = 0u64;
                    for &bm in &self.block_masks[a] {
                        if t & bm == bm {
                            out |= bm;
                        }
                    }
                    out
                }
                Node::Comp(a, x) => {
                    let t = self.scratch[x];
                    let mut out = 0u64;
                    for (b, states) in self.block_states[a].iter().enumerate() {
                        let consistent = states.iter().all(|&s| {
                            let ts = t & self.state_masks[s];
                            ts == 0 || ts == self.state_masks[s]
                        });
                        if consistent {
                            out |= self.block_masks[a][b];
                        }
                    }
                    out
                }
            };
            self.scratch[i] = value;
        }
        self.scratch[compiled.nodes.len() - 1]
    }

    fn materialize(&self, compiled: &Compiled, point_idx: u32) -> (Model, Point) {
        let state_name = |s: usize| format!("s{}", s + 1);
        let meaning_name = |m: usize| format!("m{}", m + 1);

        let mut desc = ModelDescription {
            states: (0..self.num_states).map(state_name).collect(),
            agents: compiled.agents.iter().map(|a| a.to_string()).collect(),
            indist: IndexMap::new(),
            meanings: IndexMap::new(),
            valuation: IndexMap::new(),
        };
        for (ai, agent) in compiled.agents.iter().enumerate() {
            let blocks = self.block_states[ai]
                .iter()
                .map(|states| states.iter().map(|&s| state_name(s)).collect())
                .collect();
            desc.indist.insert(agent.to_string(), blocks);
        }
        for s in 0..self.num_states {
            desc.meanings.insert(
                state_name(s),
                (0..self.counts[s] as usize).map(meaning_name).collect(),
            );
        }
        for s in 0..self.num_states {
            let mut per_var = IndexMap::new();
            for (v, var) in compiled.vars.iter().enumerate() {
                let digit = self.val_digits[s * self.num_vars + v];
                if digit == 0 {
                    continue;
                }
                let set = (0..self.counts[s] as usize)
                    .filter(|mi| digit >> mi & 1 == 1)
                    .map(meaning_name)
                    .collect();
                per_var.insert(var.to_string(), set);
            }
            if !per_var.is_empty() {
                desc.valuation.insert(state_name(s), per_var);
            }
        }
        let model = Model::validate(&desc).expect("enumerated candidates are always well formed");
        let state = (0..self.num_states)
            .rfind(|&s| self.offsets[s] <= point_idx)
            .unwrap();
        let meaning = (point_idx - self.offsets[state]) as usize;
        let point = model
            .point(&state_name(state), &meaning_name(meaning))
            .expect("falsifying point lies in the materialized model");
        (model, point)
    }
}

/// All restricted-growth strings of length `k`, in lexicographic order. The
/// first entry is the single-block partition, the last is fully discrete.
fn all_restricted_growth_strings(k: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur = vec![0u8; k];
    loop {
        out.push(cur.clone());
        let mut advanced = false;
        for i in (1..k).rev() {
            let max_prefix = cur[..i].iter().copied().max().unwrap();
            if cur[i] <= max_prefix {
                cur[i] += 1;
                for later in cur[i + 1..].iter_mut() {
                    *later = 0;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            return out;
        }
    }
}
