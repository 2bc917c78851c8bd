//! Seeded random generators and the randomized property suites.
//!
//! Generation is bounded-uniform over the structured description (partitions
//! via random restricted-growth strings, valuation bits as independent fair
//! coins), not uniform over isomorphism classes; that is enough for
//! falsification-style testing and easy to reproduce. All randomness flows
//! from a single 64-bit seed through per-trial subseeds, so a suite's report
//! is a pure function of `(seed, trials)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::checker::{self, SemanticsMode};
use crate::fixtures;
use crate::formula::{AgentId, Formula, VarId};
use crate::model::{Model, ModelDescription, Point};
use crate::proof::{instantiate_axiom, AxiomName};

/// Bounds for the generators and the suites built on them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenConfig {
    pub seed: u64,
    pub max_states: usize,
    pub max_meanings: usize,
    pub num_agents: usize,
    pub num_vars: usize,
    pub formula_depth: usize,
    pub allow_c: bool,
    pub allow_k: bool,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            seed: 0,
            max_states: 4,
            max_meanings: 3,
            num_agents: 2,
            num_vars: 2,
            formula_depth: 3,
            allow_c: true,
            allow_k: true,
        }
    }
}

impl GenConfig {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    fn check(&self) {
        assert!(
            self.max_states >= 1
                && self.max_meanings >= 1
                && self.num_agents >= 1
                && self.num_vars >= 1
                && self.formula_depth >= 1,
            "generator bounds must be at least 1"
        );
        assert!(
            self.allow_c || self.allow_k,
            "at least one modality must be enabled"
        );
        assert!(self.num_agents <= AGENT_POOL.len() && self.num_vars <= VAR_POOL.len());
    }
}

const AGENT_POOL: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];
const VAR_POOL: [&str; 8] = ["p", "q", "r", "s", "t", "u", "v", "w"];

fn agent_pool(n: usize) -> Vec<AgentId> {
    AGENT_POOL[..n]
        .iter()
        .map(|s| AgentId::new(*s).unwrap())
        .collect()
}

fn var_pool(n: usize) -> Vec<VarId> {
    VAR_POOL[..n]
        .iter()
        .map(|s| VarId::new(*s).unwrap())
        .collect()
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ (trial + 1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// A valid model, deterministic in the seed.
pub fn gen_model(cfg: &GenConfig) -> Model {
    cfg.check();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    gen_model_with(&mut rng, cfg)
}

fn gen_model_with(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> Model {
    let num_states = rng.gen_range(1..=cfg.max_states);
    let states: Vec<String> = (1..=num_states).map(|i| format!("w{i}")).collect();
    let agents = agent_pool(cfg.num_agents);
    let vars = var_pool(cfg.num_vars);

    let mut desc = ModelDescription {
        states: states.clone(),
        agents: agents.iter().map(|a| a.to_string()).collect(),
        ..ModelDescription::default()
    };

    for agent in &agents {
        let rgs = random_rgs(rng, num_states);
        let num_blocks = rgs.iter().copied().max().unwrap() as usize + 1;
        let mut blocks = vec![Vec::new(); num_blocks];
        for (si, &b) in rgs.iter().enumerate() {
            blocks[b as usize].push(states[si].clone());
        }
        desc.indist.insert(agent.to_string(), blocks);
    }

    let mut counts = Vec::with_capacity(num_states);
    for state in &states {
        let count = rng.gen_range(1..=cfg.max_meanings);
        counts.push(count);
        desc.meanings.insert(
            state.clone(),
            (1..=count).map(|i| format!("m{i}")).collect(),
        );
    }

    for (si, state) in states.iter().enumerate() {
        let mut per_var = indexmap::IndexMap::new();
        for var in &vars {
            let set: Vec<String> = (1..=counts[si])
                .filter(|_| rng.gen_bool(0.5))
                .map(|i| format!("m{i}"))
                .collect();
            if !set.is_empty() {
                per_var.insert(var.to_string(), set);
            }
        }
        if !per_var.is_empty() {
            desc.valuation.insert(state.clone(), per_var);
        }
    }

    Model::validate(&desc).expect("generated descriptions always validate")
}

fn random_rgs(rng: &mut ChaCha8Rng, len: usize) -> Vec<u8> {
    let mut out = vec![0u8; len];
    let mut max = 0u8;
    for slot in out.iter_mut().skip(1) {
        let v = rng.gen_range(0..=max + 1);
        *slot = v;
        max = max.max(v);
    }
    out
}

/// A formula over the configured agents and variables, deterministic in the
/// seed, with tree depth at most `formula_depth` and modalities restricted by
/// `allow_k` / `allow_c`.
pub fn gen_formula(cfg: &GenConfig) -> Formula {
    cfg.check();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    gen_formula_with(&mut rng, cfg)
}

fn gen_formula_with(rng: &mut ChaCha8Rng, cfg: &GenConfig) -> Formula {
    let agents = agent_pool(cfg.num_agents);
    let vars = var_pool(cfg.num_vars);
    gen_formula_impl(
        rng,
        &agents,
        &vars,
        cfg.formula_depth,
        cfg.allow_k,
        cfg.allow_c,
        usize::MAX,
    )
}

#[derive(Clone, Copy)]
enum Shape {
    Leaf,
    Not,
    Implies,
    Know,
    Comp,
}

fn gen_formula_impl(
    rng: &mut ChaCha8Rng,
    agents: &[AgentId],
    vars: &[VarId],
    depth: usize,
    allow_k: bool,
    allow_c: bool,
    modal_budget: usize,
) -> Formula {
    if depth == 0 {
        return gen_leaf(rng, vars);
    }
    let mut shapes = vec![Shape::Leaf, Shape::Leaf, Shape::Not, Shape::Not];
    shapes.extend([Shape::Implies, Shape::Implies, Shape::Implies]);
    if allow_k && modal_budget > 0 {
        shapes.extend([Shape::Know, Shape::Know]);
    }
    if allow_c && modal_budget > 0 {
        shapes.extend([Shape::Comp, Shape::Comp]);
    }
    match shapes[rng.gen_range(0..shapes.len())] {
        Shape::Leaf => gen_leaf(rng, vars),
        Shape::Not => Formula::not(gen_formula_impl(
            rng,
            agents,
            vars,
            depth - 1,
            allow_k,
            allow_c,
            modal_budget,
        )),
        Shape::Implies => {
            let lhs =
                gen_formula_impl(rng, agents, vars, depth - 1, allow_k, allow_c, modal_budget);
            let rhs =
                gen_formula_impl(rng, agents, vars, depth - 1, allow_k, allow_c, modal_budget);
            Formula::implies(lhs, rhs)
        }
        Shape::Know => {
            let agent = agents[rng.gen_range(0..agents.len())].clone();
            Formula::know(
                agent,
                gen_formula_impl(
                    rng,
                    agents,
                    vars,
                    depth - 1,
                    allow_k,
                    allow_c,
                    modal_budget - 1,
                ),
            )
        }
        Shape::Comp => {
            let agent = agents[rng.gen_range(0..agents.len())].clone();
            Formula::comp(
                agent,
                gen_formula_impl(
                    rng,
                    agents,
                    vars,
                    depth - 1,
                    allow_k,
                    allow_c,
                    modal_budget - 1,
                ),
            )
        }
    }
}

fn gen_leaf(rng: &mut ChaCha8Rng, vars: &[VarId]) -> Formula {
    if rng.gen_bool(0.15) {
        Formula::Top
    } else {
        Formula::Var(vars[rng.gen_range(0..vars.len())].clone())
    }
}

// --- reports ------------------------------------------------------------

/// Outcome of one suite run. Serializes with a fixed field order, so equal
/// seeds give byte-identical JSON.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub passed: bool,
    pub checks: Vec<CheckReport>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub passes: usize,
    /// Trials whose precondition never fired (rule-preservation checks).
    pub vacuous: usize,
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl CheckReport {
    fn new(name: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            passes: 0,
            vacuous: 0,
            failures: 0,
            counterexample: None,
        }
    }

    fn fail(&mut self, counterexample: Counterexample) {
        self.failures += 1;
        if self.counterexample.is_none() {
            self.counterexample = Some(counterexample);
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    pub formula: String,
    pub model: ModelDescription,
    pub points: Vec<PointRepr>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointRepr {
    pub state: String,
    pub meaning: String,
}

impl From<&Point> for PointRepr {
    fn from(p: &Point) -> Self {
        PointRepr {
            state: p.state.to_string(),
            meaning: p.meaning.to_string(),
        }
    }
}

impl Report {
    pub fn to_json_string(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("reports always serialize");
        text.push('\n');
        text
    }

    fn finish(mut self) -> Self {
        self.passed = self.checks.iter().all(|c| c.failures == 0);
        self
    }
}

fn counterexample_of(model: &Model, f: &Formula) -> Counterexample {
    let points = checker::failing_points(model, f)
        .map(|ps| ps.iter().map(PointRepr::from).collect())
        .unwrap_or_default();
    Counterexample {
        formula: f.to_string(),
        model: model.description(),
        points,
    }
}

// --- soundness suite ------------------------------------------------------

/// Per trial: a fresh model and fresh instantiations of all ten axiom
/// schemas, each required to be valid in the model; plus checks that modus
/// ponens and necessitation preserve model-validity.
pub fn run_soundness_suite(cfg: &GenConfig, trials: usize) -> Report {
    cfg.check();
    assert!(trials >= 1);
    let schemas: Vec<(String, SchemaFn)> = AxiomName::ALL
        .iter()
        .map(|&name| {
            let f: SchemaFn = Box::new(
                move |a: &AgentId, b: &AgentId, phi: &Formula, psi: &Formula| {
                    instantiate_axiom(name, a, b, phi, psi)
                },
            );
            (name.to_string(), f)
        })
        .collect();
    run_schema_suite(cfg, trials, schemas)
}

type SchemaFn = Box<dyn Fn(&AgentId, &AgentId, &Formula, &Formula) -> Formula>;

fn run_schema_suite(cfg: &GenConfig, trials: usize, schemas: Vec<(String, SchemaFn)>) -> Report {
    let agents = agent_pool(cfg.num_agents);
    let vars = var_pool(cfg.num_vars);
    let mut checks: Vec<CheckReport> = schemas
        .iter()
        .map(|(name, _)| CheckReport::new(name.clone()))
        .collect();
    let mut mp_check = CheckReport::new("modus_ponens_preservation");
    let mut nec_check = CheckReport::new("necessitation_preservation");

    for trial in 0..trials {
        let mut rng = trial_rng(cfg.seed, trial as u64);
        let model = gen_model_with(&mut rng, cfg);
        // Instantiation formulas stay modally shallow so evaluation is cheap
        // while still nesting modalities.
        let phi = gen_formula_impl(&mut rng, &agents, &vars, 3, cfg.allow_k, cfg.allow_c, 2);
        let psi = gen_formula_impl(&mut rng, &agents, &vars, 3, cfg.allow_k, cfg.allow_c, 2);
        let a = agents[rng.gen_range(0..agents.len())].clone();
        let b = agents[rng.gen_range(0..agents.len())].clone();

        for (i, (_, make)) in schemas.iter().enumerate() {
            let instance = make(&a, &b, &phi, &psi);
            let valid = checker::valid_in_model(&model, &instance)
                .expect("instances mention only generated agents");
            if valid {
                checks[i].passes += 1;
            } else {
                checks[i].fail(counterexample_of(&model, &instance));
            }
        }

        // Modus ponens preserves model-validity.
        let chi = gen_formula_impl(&mut rng, &agents, &vars, 3, cfg.allow_k, cfg.allow_c, 2);
        let xi = gen_formula_impl(&mut rng, &agents, &vars, 3, cfg.allow_k, cfg.allow_c, 2);
        let implication = Formula::implies(chi.clone(), xi.clone());
        let chi_valid = checker::valid_in_model(&model, &chi).unwrap();
        let imp_valid = checker::valid_in_model(&model, &implication).unwrap();
        if chi_valid && imp_valid {
            if checker::valid_in_model(&model, &xi).unwrap() {
                mp_check.passes += 1;
            } else {
                mp_check.fail(counterexample_of(&model, &xi));
            }
        } else {
            mp_check.vacuous += 1;
        }

        // Necessitation preserves model-validity, for every agent.
        if chi_valid {
            let mut ok = true;
            for agent in model.agents() {
                let necced = Formula::know(agent.clone(), chi.clone());
                if !checker::valid_in_model(&model, &necced).unwrap() {
                    nec_check.fail(counterexample_of(&model, &necced));
                    ok = false;
                }
            }
            if ok {
                nec_check.passes += 1;
            }
        } else {
            nec_check.vacuous += 1;
        }
    }

    checks.push(mp_check);
    checks.push(nec_check);
    Report {
        suite: "soundness".to_string(),
        seed: cfg.seed,
        trials,
        passed: false,
        checks,
    }
    .finish()
}

// --- undefinability suite ---------------------------------------------------

/// Point-swap transfer and agreement checks on the bundled inexpressibility
/// pairs, plus the exact distinguishing facts.
pub fn run_undefinability_suite(seed: u64, trials: usize) -> Report {
    assert!(trials >= 1);
    let c_left = fixtures::undef_c_left();
    let c_right = fixtures::undef_c_right();
    let k_left = fixtures::undef_k_left();
    let k_right = fixtures::undef_k_right();

    let mut transfer = CheckReport::new("c_free_point_swap_transfer");
    let mut c_facts = CheckReport::new("comprehension_distinguishes_the_pair");
    let mut agreement = CheckReport::new("k_free_agreement_at_base_point");
    let mut k_facts = CheckReport::new("knowledge_distinguishes_the_pair");

    let cfg_no_c = GenConfig {
        num_agents: 1,
        num_vars: 1,
        allow_c: false,
        allow_k: true,
        ..GenConfig::default()
    };
    let cfg_no_k = GenConfig {
        num_agents: 1,
        num_vars: 1,
        allow_c: true,
        allow_k: false,
        ..GenConfig::default()
    };

    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial as u64);
        let f = gen_formula_with(&mut rng, &cfg_no_c);
        let mut ok = true;
        for x in 0..2usize {
            for y in 0..2usize {
                let left_pt = c_left
                    .point(&format!("s{}", x + 1), &format!("m{}", y + 1))
                    .unwrap();
                let right_pt = c_right
                    .point(&format!("s{}", y + 1), &format!("m{}", x + 1))
                    .unwrap();
                let lv =
                    checker::satisfies(&c_left, &left_pt, &f, SemanticsMode::Standard).unwrap();
                let rv =
                    checker::satisfies(&c_right, &right_pt, &f, SemanticsMode::Standard).unwrap();
                if lv != rv {
                    ok = false;
                    transfer.fail(Counterexample {
                        formula: f.to_string(),
                        model: c_left.description(),
                        points: vec![PointRepr::from(&left_pt), PointRepr::from(&right_pt)],
                    });
                }
            }
        }
        if ok {
            transfer.passes += 1;
        }
    }

    for trial in 0..trials {
        let mut rng = trial_rng(seed.wrapping_add(0x5851_F42D_4C95_7F2D), trial as u64);
        let f = gen_formula_with(&mut rng, &cfg_no_k);
        let left_pt = k_left.point("s1", "m1").unwrap();
        let right_pt = k_right.point("s1", "m1").unwrap();
        let lv = checker::satisfies(&k_left, &left_pt, &f, SemanticsMode::Standard).unwrap();
        let rv = checker::satisfies(&k_right, &right_pt, &f, SemanticsMode::Standard).unwrap();
        if lv == rv {
            agreement.passes += 1;
        } else {
            agreement.fail(Counterexample {
                formula: f.to_string(),
                model: k_right.description(),
                points: vec![PointRepr::from(&left_pt), PointRepr::from(&right_pt)],
            });
        }
    }

    // The exact facts separating each pair in the full language.
    let cp = crate::formula::parse("C[a] p").unwrap();
    let base_left = c_left.point("s1", "m1").unwrap();
    let base_right = c_right.point("s1", "m1").unwrap();
    let left_holds = checker::satisfies(&c_left, &base_left, &cp, SemanticsMode::Standard).unwrap();
    let right_holds =
        checker::satisfies(&c_right, &base_right, &cp, SemanticsMode::Standard).unwrap();
    if left_holds && !right_holds {
        c_facts.passes += 1;
    } else {
        c_facts.fail(Counterexample {
            formula: cp.to_string(),
            model: c_right.description(),
            points: vec![PointRepr::from(&base_left), PointRepr::from(&base_right)],
        });
    }

    let kp = crate::formula::parse("K[a] p").unwrap();
    let base_left = k_left.point("s1", "m1").unwrap();
    let base_right = k_right.point("s1", "m1").unwrap();
    let left_holds = checker::satisfies(&k_left, &base_left, &kp, SemanticsMode::Standard).unwrap();
    let right_holds =
        checker::satisfies(&k_right, &base_right, &kp, SemanticsMode::Standard).unwrap();
    if left_holds && !right_holds {
        k_facts.passes += 1;
    } else {
        k_facts.fail(Counterexample {
            formula: kp.to_string(),
            model: k_right.description(),
            points: vec![PointRepr::from(&base_left), PointRepr::from(&base_right)],
        });
    }

    Report {
        suite: "undefinability".to_string(),
        seed,
        trials,
        passed: false,
        checks: vec![transfer, c_facts, agreement, k_facts],
    }
    .finish()
}

// --- meaning-transfer suite ---------------------------------------------------

/// Satisfaction of `C[a] phi` (and `K[a] phi`) at a point does not depend on
/// the point's meaning: checked on random models, formulas, states, and
/// meaning pairs.
pub fn run_meaning_transfer_suite(cfg: &GenConfig, trials: usize) -> Report {
    cfg.check();
    assert!(trials >= 1);
    let agents = agent_pool(cfg.num_agents);
    let mut c_transfer = CheckReport::new("comprehension_meaning_transfer");
    let mut k_transfer = CheckReport::new("knowledge_meaning_transfer");

    for trial in 0..trials {
        let mut rng = trial_rng(cfg.seed, trial as u64);
        let model = gen_model_with(&mut rng, cfg);
        let phi = gen_formula_with(&mut rng, cfg);
        let agent = agents[rng.gen_range(0..agents.len())].clone();
        let state = model.states()[rng.gen_range(0..model.states().len())].clone();
        let meanings = model.meanings(&state).unwrap().to_vec();
        let m1 = meanings[rng.gen_range(0..meanings.len())].clone();
        let m2 = meanings[rng.gen_range(0..meanings.len())].clone();
        let pt1 = Point::new(state.clone(), m1);
        let pt2 = Point::new(state.clone(), m2);

        for (check, f) in [
            (&mut c_transfer, Formula::comp(agent.clone(), phi.clone())),
            (&mut k_transfer, Formula::know(agent.clone(), phi.clone())),
        ] {
            let v1 = checker::satisfies(&model, &pt1, &f, SemanticsMode::Standard).unwrap();
            let v2 = checker::satisfies(&model, &pt2, &f, SemanticsMode::Standard).unwrap();
            if v1 == v2 {
                check.passes += 1;
            } else {
                check.fail(counterexample_of(&model, &f));
            }
        }
    }

    Report {
        suite: "meaning_transfer".to_string(),
        seed: cfg.seed,
        trials,
        passed: false,
        checks: vec![c_transfer, k_transfer],
    }
    .finish()
}
