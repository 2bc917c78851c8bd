//! Bundled example models and proofs.
//!
//! The first three models come from the running examples: the two airport
//! scenarios and the robotic guard. The `undef_*` pairs are the model pairs
//! behind the inexpressibility results: the `c` pair agrees on every
//! `C`-free formula under the point swap `(x, y) ~ (y, x)` yet disagrees on
//! `C[a] p`, and the `k` pair agrees on every `K`-free formula at `(s1, m1)`
//! yet disagrees on `K[a] p`.

use indexmap::IndexMap;

use crate::model::{Model, ModelDescription};
use crate::proof::Proof;

type ValuationRows<'a> = &'a [(&'a str, &'a [(&'a str, &'a [&'a str])])];

fn desc(
    states: &[&str],
    agents: &[&str],
    indist: &[(&str, &[&[&str]])],
    meanings: &[(&str, &[&str])],
    valuation: ValuationRows<'_>,
) -> ModelDescription {
    ModelDescription {
        states: states.iter().map(|s| s.to_string()).collect(),
        agents: agents.iter().map(|a| a.to_string()).collect(),
        indist: indist
            .iter()
            .map(|(agent, blocks)| {
                (
                    agent.to_string(),
                    blocks
                        .iter()
                        .map(|block| block.iter().map(|s| s.to_string()).collect())
                        .collect(),
                )
            })
            .collect(),
        meanings: meanings
            .iter()
            .map(|(state, list)| {
                (
                    state.to_string(),
                    list.iter().map(|m| m.to_string()).collect(),
                )
            })
            .collect(),
        valuation: valuation
            .iter()
            .map(|(state, vars)| {
                (
                    state.to_string(),
                    vars.iter()
                        .map(|(var, set)| {
                            (
                                var.to_string(),
                                set.iter().map(|m| m.to_string()).collect::<Vec<String>>(),
                            )
                        })
                        .collect::<IndexMap<String, Vec<String>>>(),
                )
            })
            .collect(),
    }
}

fn build(description: ModelDescription) -> Model {
    Model::validate(&description).expect("bundled fixtures are valid")
}

/// Two states the controllers cannot tell apart, one meaning each; `p` holds
/// only where the fuel is low. Knowledge of `p` fails everywhere while
/// comprehension holds vacuously.
pub fn bogota() -> Model {
    build(desc(
        &["EnoughFuel", "NotEnoughFuel"],
        &["atc"],
        &[("atc", &[&["EnoughFuel", "NotEnoughFuel"]])],
        &[("EnoughFuel", &["m"]), ("NotEnoughFuel", &["m"])],
        &[("NotEnoughFuel", &[("p", &["m"])])],
    ))
}

/// The same two states, but the utterance is ambiguous: each state carries a
/// high- and a low-power-distance reading, and `p` holds under exactly one of
/// them per state. Both knowledge and comprehension of `p` fail everywhere.
pub fn nyc() -> Model {
    build(desc(
        &["EnoughFuel", "NotEnoughFuel"],
        &["atc"],
        &[("atc", &[&["EnoughFuel", "NotEnoughFuel"]])],
        &[
            ("EnoughFuel", &["high", "low"]),
            ("NotEnoughFuel", &["high", "low"]),
        ],
        &[
            ("EnoughFuel", &[("p", &["low"])]),
            ("NotEnoughFuel", &[("p", &["high"])]),
        ],
    ))
}

/// The guard scenario: door X open or closed, the visitor's entrance, and the
/// badge. The instruction "enter through door X or through door Y and wear a
/// badge" has two readings, `m1 = (x | y) & b` and `m2 = x | (y & b)`; `p` is
/// true under a reading exactly where that reading holds. The guard only
/// distinguishes open-door states from closed-door states.
///
/// In `v` (open, enters X, no badge) the two readings disagree, so `p` is not
/// consistent across meanings there; `w` (open, enters Y, badge) therefore
/// fails `C[ava] p`, while `u` (closed, enters Y, badge) satisfies it.
pub fn ava() -> Model {
    build(desc(
        &[
            "v",
            "w",
            "openX_enterX_badge",
            "openX_enterY_nobadge",
            "openX_enterZ_badge",
            "openX_enterZ_nobadge",
            "u",
            "closedX_enterY_nobadge",
            "closedX_enterZ_badge",
            "closedX_enterZ_nobadge",
        ],
        &["ava"],
        &[(
            "ava",
            &[
                &[
                    "v",
                    "w",
                    "openX_enterX_badge",
                    "openX_enterY_nobadge",
                    "openX_enterZ_badge",
                    "openX_enterZ_nobadge",
                ],
                &[
                    "u",
                    "closedX_enterY_nobadge",
                    "closedX_enterZ_badge",
                    "closedX_enterZ_nobadge",
                ],
            ],
        )],
        &[
            ("v", &["m1", "m2"]),
            ("w", &["m1", "m2"]),
            ("openX_enterX_badge", &["m1", "m2"]),
            ("openX_enterY_nobadge", &["m1", "m2"]),
            ("openX_enterZ_badge", &["m1", "m2"]),
            ("openX_enterZ_nobadge", &["m1", "m2"]),
            ("u", &["m1", "m2"]),
            ("closedX_enterY_nobadge", &["m1", "m2"]),
            ("closedX_enterZ_badge", &["m1", "m2"]),
            ("closedX_enterZ_nobadge", &["m1", "m2"]),
        ],
        &[
            ("v", &[("p", &["m2"])]),
            ("w", &[("p", &["m1", "m2"])]),
            ("openX_enterX_badge", &[("p", &["m1", "m2"])]),
            ("u", &[("p", &["m1", "m2"])]),
        ],
    ))
}

/// Left half of the comprehension-inexpressibility pair: states and meanings
/// share index structure, `p` holds under both meanings of `s1` and neither
/// meaning of `s2`, so `p` is consistent across meanings everywhere.
pub fn undef_c_left() -> Model {
    build(desc(
        &["s1", "s2"],
        &["a"],
        &[("a", &[&["s1", "s2"]])],
        &[("s1", &["m1", "m2"]), ("s2", &["m1", "m2"])],
        &[("s1", &[("p", &["m1", "m2"])])],
    ))
}

/// Right half of the pair: `p` holds under the first meaning of each state
/// only, so `p` is inconsistent across meanings in both states.
pub fn undef_c_right() -> Model {
    build(desc(
        &["s1", "s2"],
        &["a"],
        &[("a", &[&["s1", "s2"]])],
        &[("s1", &["m1", "m2"]), ("s2", &["m1", "m2"])],
        &[("s1", &[("p", &["m1"])]), ("s2", &[("p", &["m1"])])],
    ))
}

/// Left half of the knowledge-inexpressibility pair: one state, one meaning,
/// `p` true.
pub fn undef_k_left() -> Model {
    build(desc(
        &["s1"],
        &["a"],
        &[("a", &[&["s1"]])],
        &[("s1", &["m1"])],
        &[("s1", &[("p", &["m1"])])],
    ))
}

/// Right half: a second indistinguishable state where `p` fails. Every state
/// still has a single meaning, so every `C`-formula is vacuously true in both
/// halves.
pub fn undef_k_right() -> Model {
    build(desc(
        &["s1", "s2"],
        &["a"],
        &[("a", &[&["s1", "s2"]])],
        &[("s1", &["m1"]), ("s2", &["m1"])],
        &[("s1", &[("p", &["m1"])])],
    ))
}

/// Names accepted by [`model`], in listing order.
pub const MODEL_NAMES: [&str; 7] = [
    "bogota",
    "nyc",
    "ava",
    "undef_c_left",
    "undef_c_right",
    "undef_k_left",
    "undef_k_right",
];

/// Looks up a bundled model by name.
pub fn model(name: &str) -> Option<Model> {
    match name {
        "bogota" => Some(bogota()),
        "nyc" => Some(nyc()),
        "ava" => Some(ava()),
        "undef_c_left" => Some(undef_c_left()),
        "undef_c_right" => Some(undef_c_right()),
        "undef_k_left" => Some(undef_k_left()),
        "undef_k_right" => Some(undef_k_right()),
        _ => None,
    }
}

/// All bundled models with their names.
pub fn models() -> Vec<(&'static str, Model)> {
    MODEL_NAMES
        .iter()
        .map(|&name| (name, model(name).unwrap()))
        .collect()
}

/// A four-line derivation of `C[a] (p -> p)`: tautology, necessitation,
/// the knowledge-implies-comprehension axiom, and modus ponens.
pub fn proof_comprehension_of_tautology() -> Proof {
    Proof::from_json_str(PROOF_COMPREHENSION_OF_TAUTOLOGY)
        .expect("bundled proof fixtures are well formed")
}

/// A two-line attempt that necessitates a hypothesis; rejected at line 2.
pub fn proof_necessitation_on_hypothesis() -> Proof {
    Proof::from_json_str(PROOF_NECESSITATION_ON_HYPOTHESIS)
        .expect("bundled proof fixtures are well formed")
}

pub const PROOF_NAMES: [&str; 2] = [
    "sample_comprehension_of_tautology",
    "necessitation_on_hypothesis",
];

/// Looks up a bundled proof by name.
pub fn proof(name: &str) -> Option<Proof> {
    match name {
        "sample_comprehension_of_tautology" => Some(proof_comprehension_of_tautology()),
        "necessitation_on_hypothesis" => Some(proof_necessitation_on_hypothesis()),
        _ => None,
    }
}

const PROOF_COMPREHENSION_OF_TAUTOLOGY: &str = r#"{
  "hypotheses": [],
  "lines": [
    {
      "formula": "p -> p",
      "rule": "tautology"
    },
    {
      "formula": "K[a] (p -> p)",
      "rule": "nec",
      "agent": "a",
      "from": 1
    },
    {
      "formula": "K[a] (p -> p) -> C[a] (p -> p)",
      "rule": "axiom",
      "axiom": "ComprehensionOfKnown"
    },
    {
      "formula": "C[a] (p -> p)",
      "rule": "mp",
      "from": [
        2,
        3
      ]
    }
  ]
}
"#;

const PROOF_NECESSITATION_ON_HYPOTHESIS: &str = r#"{
  "hypotheses": [
    "p"
  ],
  "lines": [
    {
      "formula": "p",
      "rule": "hyp",
      "index": 0
    },
    {
      "formula": "K[a] p",
      "rule": "nec",
      "agent": "a",
      "from": 1
    }
  ]
}
"#;

/// Raw JSON text for a bundled proof, as written by `save`-style emission.
pub fn proof_json(name: &str) -> Option<&'static str> {
    match name {
        "sample_comprehension_of_tautology" => Some(PROOF_COMPREHENSION_OF_TAUTOLOGY),
        "necessitation_on_hypothesis" => Some(PROOF_NECESSITATION_ON_HYPOTHESIS),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_model_validates_and_round_trips() {
        for (name, model) in models() {
            let again = Model::from_json_str(&model.to_json()).unwrap();
            assert_eq!(again, model, "{name}");
        }
    }

    #[test]
    fn undef_c_valuations_mirror_each_other() {
        // Base case of the point-swap transfer: m_y in left pi_x iff
        // m_x in right pi_y.
        let left = undef_c_left().description();
        let right = undef_c_right().description();
        let holds = |d: &ModelDescription, s: &str, m: &str| {
            d.valuation
                .get(s)
                .and_then(|vars| vars.get("p"))
                .is_some_and(|set| set.iter().any(|x| x == m))
        };
        for x in 1..=2 {
            for y in 1..=2 {
                assert_eq!(
                    holds(&left, &format!("s{x}"), &format!("m{y}")),
                    holds(&right, &format!("s{y}"), &format!("m{x}")),
                    "x={x} y={y}"
                );
            }
        }
    }

    #[test]
    fn bundled_proof_json_parses() {
        assert_eq!(proof_comprehension_of_tautology().lines.len(), 4);
        assert_eq!(proof_necessitation_on_hypothesis().lines.len(), 2);
    }
}
