//! Hilbert-style proof verification for the ten-axiom system.
//!
//! A proof is a list of lines, each justified as an axiom instance, a
//! propositional tautology, a hypothesis, modus ponens, or necessitation.
//! Whether a line depends on a hypothesis is tracked per line: axiom and
//! tautology lines are theorem-only, hypothesis lines are not, modus ponens
//! takes the conjunction of its premises' flags, and necessitation is only
//! admitted on theorem-only lines. Checking with an empty hypothesis list is
//! plain provability; with hypotheses it is the restricted relation in which
//! necessitation never touches hypothesis-dependent lines.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{parse, AgentId, Formula, IdentError, ParseError};

/// The ten axiom schemas. Metavariables range over formulas (`phi`, `psi`)
/// and agents (`a`, `b`, which may coincide).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum AxiomName {
    /// `K[a] phi -> phi`
    Truth,
    /// `~K[a] phi -> K[a] ~K[a] phi`
    NegativeIntrospection,
    /// `K[a] (phi -> psi) -> (K[a] phi -> K[a] psi)`
    Distributivity,
    /// `K[a] phi -> C[a] phi`
    ComprehensionOfKnown,
    /// `C[a] phi -> K[a] C[a] phi`
    IntrospectionOfComprehension,
    /// `C[a] phi -> C[a] ~phi`
    ComprehensionOfNegation,
    /// `C[a] phi -> (C[a] psi -> C[a] (phi -> psi))`
    ComprehensionOfImplication,
    /// `K[a] (phi <-> psi) -> (C[a] phi -> C[a] psi)`
    Substitution,
    /// `C[a] C[b] phi`
    ComprehensionOfComprehension,
    /// `C[a] (C[b] phi -> phi)`
    Incomprehensible,
}

impl AxiomName {
    pub const ALL: [AxiomName; 10] = [
        AxiomName::Truth,
        AxiomName::NegativeIntrospection,
        AxiomName::Distributivity,
        AxiomName::ComprehensionOfKnown,
        AxiomName::IntrospectionOfComprehension,
        AxiomName::ComprehensionOfNegation,
        AxiomName::ComprehensionOfImplication,
        AxiomName::Substitution,
        AxiomName::ComprehensionOfComprehension,
        AxiomName::Incomprehensible,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            AxiomName::Truth => "Truth",
            AxiomName::NegativeIntrospection => "NegativeIntrospection",
            AxiomName::Distributivity => "Distributivity",
            AxiomName::ComprehensionOfKnown => "ComprehensionOfKnown",
            AxiomName::IntrospectionOfComprehension => "IntrospectionOfComprehension",
            AxiomName::ComprehensionOfNegation => "ComprehensionOfNegation",
            AxiomName::ComprehensionOfImplication => "ComprehensionOfImplication",
            AxiomName::Substitution => "Substitution",
            AxiomName::ComprehensionOfComprehension => "ComprehensionOfComprehension",
            AxiomName::Incomprehensible => "Incomprehensible",
        }
    }
}

impl fmt::Display for AxiomName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Justification of one proof line. Line references are 1-based and must
/// point at earlier lines; hypothesis indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Rule {
    Axiom(AxiomName),
    Tautology,
    Hypothesis(usize),
    ModusPonens(usize, usize),
    Necessitation(AgentId, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofLine {
    pub formula: Formula,
    pub rule: Rule,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Proof {
    pub hypotheses: Vec<Formula>,
    pub lines: Vec<ProofLine>,
}

/// Builds the named schema instance.
pub fn instantiate_axiom(
    name: AxiomName,
    a: &AgentId,
    b: &AgentId,
    phi: &Formula,
    psi: &Formula,
) -> Formula {
    let know = |agent: &AgentId, f: Formula| Formula::know(agent.clone(), f);
    let comp = |agent: &AgentId, f: Formula| Formula::comp(agent.clone(), f);
    match name {
        AxiomName::Truth => Formula::implies(know(a, phi.clone()), phi.clone()),
        AxiomName::NegativeIntrospection => Formula::implies(
            Formula::not(know(a, phi.clone())),
            know(a, Formula::not(know(a, phi.clone()))),
        ),
        AxiomName::Distributivity => Formula::implies(
            know(a, Formula::implies(phi.clone(), psi.clone())),
            Formula::implies(know(a, phi.clone()), know(a, psi.clone())),
        ),
        AxiomName::ComprehensionOfKnown => {
            Formula::implies(know(a, phi.clone()), comp(a, phi.clone()))
        }
        AxiomName::IntrospectionOfComprehension => {
            Formula::implies(comp(a, phi.clone()), know(a, comp(a, phi.clone())))
        }
        AxiomName::ComprehensionOfNegation => {
            Formula::implies(comp(a, phi.clone()), comp(a, Formula::not(phi.clone())))
        }
        AxiomName::ComprehensionOfImplication => Formula::implies(
            comp(a, phi.clone()),
            Formula::implies(
                comp(a, psi.clone()),
                comp(a, Formula::implies(phi.clone(), psi.clone())),
            ),
        ),
        AxiomName::Substitution => Formula::implies(
            know(a, Formula::iff(phi.clone(), psi.clone())),
            Formula::implies(comp(a, phi.clone()), comp(a, psi.clone())),
        ),
        AxiomName::ComprehensionOfComprehension => comp(a, comp(b, phi.clone())),
        AxiomName::Incomprehensible => comp(a, Formula::implies(comp(b, phi.clone()), phi.clone())),
    }
}

/// Every schema the formula instantiates exactly.
pub fn match_axiom(f: &Formula) -> BTreeSet<AxiomName> {
    use Formula::{Comp, Implies, Know, Not};

    let mut out = BTreeSet::new();

    if let Implies(lhs, rhs) = f {
        // Truth: K[a] phi -> phi
        if let Know(_, x) = &**lhs {
            if **x == **rhs {
                out.insert(AxiomName::Truth);
            }
        }
        // Negative Introspection: ~K[a] phi -> K[a] ~K[a] phi
        if let (Not(neg), Know(a2, outer)) = (&**lhs, &**rhs) {
            if let Know(a1, x1) = &**neg {
                if let Not(inner) = &**outer {
                    if let Know(a3, x3) = &**inner {
                        if a1 == a2 && a2 == a3 && x1 == x3 {
                            out.insert(AxiomName::NegativeIntrospection);
                        }
                    }
                }
            }
        }
        // Distributivity: K[a] (phi -> psi) -> (K[a] phi -> K[a] psi)
        if let (Know(a1, body), Implies(r1, r2)) = (&**lhs, &**rhs) {
            if let Implies(x, y) = &**body {
                if let (Know(a2, x2), Know(a3, y2)) = (&**r1, &**r2) {
                    if a1 == a2 && a1 == a3 && x == x2 && y == y2 {
                        out.insert(AxiomName::Distributivity);
                    }
                }
            }
        }
        // Comprehension of Known: K[a] phi -> C[a] phi
        if let (Know(a1, x1), Comp(a2, x2)) = (&**lhs, &**rhs) {
            if a1 == a2 && x1 == x2 {
                out.insert(AxiomName::ComprehensionOfKnown);
            }
        }
        // Introspection of Comprehension: C[a] phi -> K[a] C[a] phi
        if let (Comp(a1, x1), Know(a2, inner)) = (&**lhs, &**rhs) {
            if let Comp(a3, x3) = &**inner {
                if a1 == a2 && a2 == a3 && x1 == x3 {
                    out.insert(AxiomName::IntrospectionOfComprehension);
                }
            }
        }
        // Comprehension of Negation: C[a] phi -> C[a] ~phi
        if let (Comp(a1, x1), Comp(a2, negged)) = (&**lhs, &**rhs) {
            if let Not(x2) = &**negged {
                if a1 == a2 && x1 == x2 {
                    out.insert(AxiomName::ComprehensionOfNegation);
                }
            }
        }
        // Comprehension of Implication:
        // C[a] phi -> (C[a] psi -> C[a] (phi -> psi))
        if let (Comp(a1, x1), Implies(r1, r2)) = (&**lhs, &**rhs) {
            if let (Comp(a2, y1), Comp(a3, imp)) = (&**r1, &**r2) {
                if let Implies(x2, y2) = &**imp {
                    if a1 == a2 && a1 == a3 && x1 == x2 && y1 == y2 {
                        out.insert(AxiomName::ComprehensionOfImplication);
                    }
                }
            }
        }
        // Substitution: K[a] (phi <-> psi) -> (C[a] phi -> C[a] psi),
        // where the biconditional appears in its desugared form.
        if let (Know(a1, iff_body), Implies(r1, r2)) = (&**lhs, &**rhs) {
            if let (Comp(a2, x1), Comp(a3, y1)) = (&**r1, &**r2) {
                if a1 == a2
                    && a1 == a3
                    && **iff_body == Formula::iff((**x1).clone(), (**y1).clone())
                {
                    out.insert(AxiomName::Substitution);
                }
            }
        }
    }

    if let Comp(_, inner) = f {
        // Comprehension of Comprehension: C[a] C[b] phi
        if matches!(&**inner, Comp(_, _)) {
            out.insert(AxiomName::ComprehensionOfComprehension);
        }
        // Incomprehensible: C[a] (C[b] phi -> phi)
        if let Implies(l, r) = &**inner {
            if let Comp(_, x) = &**l {
                if **x == **r {
                    out.insert(AxiomName::Incomprehensible);
                }
            }
        }
    }

    out
}

/// Cap on distinct atoms in the truth-table tautology check.
pub const MAX_TAUTOLOGY_ATOMS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("abstraction has {atoms} distinct atoms, over the cap of {MAX_TAUTOLOGY_ATOMS}")]
pub struct TooManyAtoms {
    pub atoms: usize,
}

/// Truth-table check of the propositional abstraction: each maximal
/// subformula that is a variable, `top`, `K[..]`, or `C[..]` becomes an atom
/// (identical subformulas share one), and the remaining `~`/`->` skeleton is
/// checked over all assignments.
pub fn is_tautology_instance(f: &Formula) -> Result<bool, TooManyAtoms> {
    let mut atoms: Vec<&Formula> = Vec::new();
    collect_atoms(f, &mut atoms);
    if atoms.len() > MAX_TAUTOLOGY_ATOMS {
        return Err(TooManyAtoms { atoms: atoms.len() });
    }
    for assignment in 0u32..(1u32 << atoms.len()) {
        if !eval_skeleton(f, &atoms, assignment) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn collect_atoms<'f>(f: &'f Formula, atoms: &mut Vec<&'f Formula>) {
    match f {
        Formula::Not(x) => collect_atoms(x, atoms),
        Formula::Implies(lhs, rhs) => {
            collect_atoms(lhs, atoms);
            collect_atoms(rhs, atoms);
        }
        atom => {
            if !atoms.contains(&atom) {
                atoms.push(atom);
            }
        }
    }
}

fn eval_skeleton(f: &Formula, atoms: &[&Formula], assignment: u32) -> bool {
    match f {
        Formula::Not(x) => !eval_skeleton(x, atoms, assignment),
        Formula::Implies(lhs, rhs) => {
            !eval_skeleton(lhs, atoms, assignment) || eval_skeleton(rhs, atoms, assignment)
        }
        atom => {
            let idx = atoms
                .iter()
                .position(|known| *known == atom)
                .expect("atoms were collected from this formula");
            assignment >> idx & 1 == 1
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RejectReason {
    #[error("the proof has no lines")]
    EmptyProof,
    #[error("not an instance of the {0} schema")]
    BadAxiomInstance(AxiomName),
    #[error("not a propositional tautology")]
    NotATautology,
    #[error(transparent)]
    TooManyAtoms(#[from] TooManyAtoms),
    #[error("premises do not have the shapes `phi` and `phi -> psi` for this conclusion")]
    BadMPShape,
    #[error("conclusion is not `K[agent]` applied to the premise line")]
    BadNecessitationShape,
    #[error("necessitation applied to a line that depends on a hypothesis")]
    NecessitationOnHypothesis,
    #[error("reference to a line or hypothesis that does not exist or is not earlier")]
    DanglingReference,
    #[error("line does not quote the referenced hypothesis exactly")]
    HypothesisMismatch,
}

impl RejectReason {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            RejectReason::EmptyProof => "EmptyProof",
            RejectReason::BadAxiomInstance(_) => "BadAxiomInstance",
            RejectReason::NotATautology => "NotATautology",
            RejectReason::TooManyAtoms(_) => "TooManyAtoms",
            RejectReason::BadMPShape => "BadMPShape",
            RejectReason::BadNecessitationShape => "BadNecessitationShape",
            RejectReason::NecessitationOnHypothesis => "NecessitationOnHypothesis",
            RejectReason::DanglingReference => "DanglingReference",
            RejectReason::HypothesisMismatch => "HypothesisMismatch",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Accepted { goal: Formula },
    Rejected { line: usize, reason: RejectReason },
}

/// Checks every line; the goal is the last line's formula.
pub fn check_proof(proof: &Proof) -> Verdict {
    if proof.lines.is_empty() {
        return Verdict::Rejected {
            line: 0,
            reason: RejectReason::EmptyProof,
        };
    }
    let mut theorem_only: Vec<bool> = Vec::with_capacity(proof.lines.len());
    for (i, line) in proof.lines.iter().enumerate() {
        let lineno = i + 1;
        let reject = |reason| Verdict::Rejected {
            line: lineno,
            reason,
        };
        let flag = match &line.rule {
            Rule::Axiom(name) => {
                if !match_axiom(&line.formula).contains(name) {
                    return reject(RejectReason::BadAxiomInstance(*name));
                }
                true
            }
            Rule::Tautology => match is_tautology_instance(&line.formula) {
                Ok(true) => true,
                Ok(false) => return reject(RejectReason::NotATautology),
                Err(e) => return reject(RejectReason::TooManyAtoms(e)),
            },
            Rule::Hypothesis(k) => {
                match proof.hypotheses.get(*k) {
                    None => return reject(RejectReason::DanglingReference),
                    Some(h) if *h != line.formula => {
                        return reject(RejectReason::HypothesisMismatch)
                    }
                    Some(_) => {}
                }
                false
            }
            Rule::ModusPonens(i1, i2) => {
                if !(1..lineno).contains(i1) || !(1..lineno).contains(i2) {
                    return reject(RejectReason::DanglingReference);
                }
                let antecedent = &proof.lines[i1 - 1].formula;
                match &proof.lines[i2 - 1].formula {
                    Formula::Implies(l, r) if **l == *antecedent && **r == line.formula => {}
                    _ => return reject(RejectReason::BadMPShape),
                }
                theorem_only[i1 - 1] && theorem_only[i2 - 1]
            }
            Rule::Necessitation(agent, i1) => {
                if !(1..lineno).contains(i1) {
                    return reject(RejectReason::DanglingReference);
                }
                let premise = proof.lines[i1 - 1].formula.clone();
                if line.formula != Formula::know(agent.clone(), premise) {
                    return reject(RejectReason::BadNecessitationShape);
                }
                if !theorem_only[i1 - 1] {
                    return reject(RejectReason::NecessitationOnHypothesis);
                }
                true
            }
        };
        theorem_only.push(flag);
    }
    Verdict::Accepted {
        goal: proof.lines.last().unwrap().formula.clone(),
    }
}

// --- JSON wire format ---------------------------------------------------

#[derive(Debug, Serialize, Deserialize)]
struct ProofDoc {
    #[serde(default)]
    hypotheses: Vec<String>,
    lines: Vec<LineDoc>,
}

#[derive(Debug, Serialize, Deserialize)]
struct LineDoc {
    formula: String,
    #[serde(flatten)]
    rule: RuleDoc,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "lowercase")]
enum RuleDoc {
    Axiom { axiom: AxiomName },
    Tautology,
    Hyp { index: usize },
    Mp { from: [usize; 2] },
    Nec { agent: String, from: usize },
}

#[derive(Debug, Error)]
pub enum ProofFormatError {
    #[error("proof file is not valid JSON: {0}")]
    Json(String),
    #[error("hypothesis {index}: {source}")]
    Hypothesis { index: usize, source: ParseError },
    #[error("line {line}: {source}")]
    Line { line: usize, source: ParseError },
    #[error("line {line}: bad agent name: {source}")]
    Agent { line: usize, source: IdentError },
    #[error("io error: {0}")]
    Io(String),
}

impl Proof {
    pub fn from_json_str(text: &str) -> Result<Proof, ProofFormatError> {
        let doc: ProofDoc =
            serde_json::from_str(text).map_err(|e| ProofFormatError::Json(e.to_string()))?;
        let mut hypotheses = Vec::with_capacity(doc.hypotheses.len());
        for (index, h) in doc.hypotheses.iter().enumerate() {
            hypotheses
                .push(parse(h).map_err(|source| ProofFormatError::Hypothesis { index, source })?);
        }
        let mut lines = Vec::with_capacity(doc.lines.len());
        for (i, line) in doc.lines.iter().enumerate() {
            let lineno = i + 1;
            let formula = parse(&line.formula).map_err(|source| ProofFormatError::Line {
                line: lineno,
                source,
            })?;
            let rule = match &line.rule {
                RuleDoc::Axiom { axiom } => Rule::Axiom(*axiom),
                RuleDoc::Tautology => Rule::Tautology,
                RuleDoc::Hyp { index } => Rule::Hypothesis(*index),
                RuleDoc::Mp { from } => Rule::ModusPonens(from[0], from[1]),
                RuleDoc::Nec { agent, from } => {
                    let agent =
                        AgentId::new(agent.clone()).map_err(|source| ProofFormatError::Agent {
                            line: lineno,
                            source,
                        })?;
                    Rule::Necessitation(agent, *from)
                }
            };
            lines.push(ProofLine { formula, rule });
        }
        Ok(Proof { hypotheses, lines })
    }

    pub fn to_json_string(&self) -> String {
        let doc = ProofDoc {
            hypotheses: self.hypotheses.iter().map(|h| h.to_string()).collect(),
            lines: self
                .lines
                .iter()
                .map(|line| LineDoc {
                    formula: line.formula.to_string(),
                    rule: match &line.rule {
                        Rule::Axiom(axiom) => RuleDoc::Axiom { axiom: *axiom },
                        Rule::Tautology => RuleDoc::Tautology,
                        Rule::Hypothesis(index) => RuleDoc::Hyp { index: *index },
                        Rule::ModusPonens(i, j) => RuleDoc::Mp { from: [*i, *j] },
                        Rule::Necessitation(agent, from) => RuleDoc::Nec {
                            agent: agent.to_string(),
                            from: *from,
                        },
                    },
                })
                .collect(),
        };
        let mut text =
            serde_json::to_string_pretty(&doc).expect("proof documents always serialize");
        text.push('\n');
        text
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Proof, ProofFormatError> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| ProofFormatError::Io(e.to_string()))?;
        Proof::from_json_str(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn agent(s: &str) -> AgentId {
        AgentId::new(s).unwrap()
    }

    fn axioms_of(text: &str) -> BTreeSet<AxiomName> {
        match_axiom(&parse(text).unwrap())
    }

    #[test]
    fn matches_truth() {
        assert_eq!(axioms_of("K[a] p -> p"), BTreeSet::from([AxiomName::Truth]));
    }

    #[test]
    fn matches_comprehension_of_known() {
        assert_eq!(
            axioms_of("K[a] p -> C[a] p"),
            BTreeSet::from([AxiomName::ComprehensionOfKnown])
        );
    }

    #[test]
    fn matches_comprehension_of_comprehension_with_equal_agents() {
        assert_eq!(
            axioms_of("C[a] C[a] p"),
            BTreeSet::from([AxiomName::ComprehensionOfComprehension])
        );
    }

    #[test]
    fn plain_implication_matches_nothing() {
        assert_eq!(axioms_of("p -> p"), BTreeSet::new());
    }

    #[test]
    fn matches_remaining_schemas() {
        assert_eq!(
            axioms_of("~K[a] p -> K[a] ~K[a] p"),
            BTreeSet::from([AxiomName::NegativeIntrospection])
        );
        assert_eq!(
            axioms_of("K[a] (p -> q) -> (K[a] p -> K[a] q)"),
            BTreeSet::from([AxiomName::Distributivity])
        );
        assert_eq!(
            axioms_of("C[a] p -> K[a] C[a] p"),
            BTreeSet::from([AxiomName::IntrospectionOfComprehension])
        );
        assert_eq!(
            axioms_of("C[a] p -> C[a] ~p"),
            BTreeSet::from([AxiomName::ComprehensionOfNegation])
        );
        assert_eq!(
            axioms_of("C[a] p -> (C[a] q -> C[a] (p -> q))"),
            BTreeSet::from([AxiomName::ComprehensionOfImplication])
        );
        assert_eq!(
            axioms_of("K[a] (p <-> q) -> (C[a] p -> C[a] q)"),
            BTreeSet::from([AxiomName::Substitution])
        );
        assert_eq!(
            axioms_of("C[a] (C[b] p -> p)"),
            BTreeSet::from([AxiomName::Incomprehensible])
        );
    }

    #[test]
    fn mismatched_agents_do_not_match() {
        assert_eq!(axioms_of("K[a] p -> C[b] p"), BTreeSet::new());
        assert_eq!(axioms_of("K[a] p -> q"), BTreeSet::new());
    }

    #[test]
    fn instantiations_are_recognized() {
        let phi = parse("K[b] (p -> q)").unwrap();
        let psi = parse("~C[a] r").unwrap();
        for name in AxiomName::ALL {
            let inst = instantiate_axiom(name, &agent("a"), &agent("b"), &phi, &psi);
            assert!(
                match_axiom(&inst).contains(&name),
                "{name} instance {inst} not recognized"
            );
        }
    }

    #[test]
    fn tautology_examples() {
        assert_eq!(
            is_tautology_instance(&parse("K[a] p -> K[a] p").unwrap()),
            Ok(true)
        );
        assert_eq!(
            is_tautology_instance(&parse("C[a] p | ~C[a] p").unwrap()),
            Ok(true)
        );
        assert_eq!(
            is_tautology_instance(&parse("K[a] p -> p").unwrap()),
            Ok(false)
        );
        assert_eq!(
            is_tautology_instance(&parse("p & q -> p").unwrap()),
            Ok(true)
        );
        assert_eq!(
            is_tautology_instance(&parse("p -> p & p").unwrap()),
            Ok(true)
        );
    }

    #[test]
    fn tautology_atom_cap() {
        // 21 distinct variables chained with implications: p1 -> p2 -> ... is
        // not what we want; build (p1 -> (p2 -> ...)) which has 21 atoms.
        let mut f = parse("p0").unwrap();
        for i in 1..21 {
            f = Formula::implies(parse(&format!("p{i}")).unwrap(), f);
        }
        assert_eq!(is_tautology_instance(&f), Err(TooManyAtoms { atoms: 21 }));
    }

    #[test]
    fn accepts_the_bundled_four_line_proof() {
        let proof = fixtures::proof_comprehension_of_tautology();
        assert_eq!(
            check_proof(&proof),
            Verdict::Accepted {
                goal: parse("C[a] (p -> p)").unwrap()
            }
        );
    }

    #[test]
    fn rejects_necessitation_on_hypothesis() {
        let proof = fixtures::proof_necessitation_on_hypothesis();
        assert_eq!(
            check_proof(&proof),
            Verdict::Rejected {
                line: 2,
                reason: RejectReason::NecessitationOnHypothesis
            }
        );
    }

    #[test]
    fn rejects_bad_axiom_instance() {
        let proof = Proof {
            hypotheses: vec![],
            lines: vec![ProofLine {
                formula: parse("q").unwrap(),
                rule: Rule::Axiom(AxiomName::Truth),
            }],
        };
        assert_eq!(
            check_proof(&proof),
            Verdict::Rejected {
                line: 1,
                reason: RejectReason::BadAxiomInstance(AxiomName::Truth)
            }
        );
    }

    #[test]
    fn modus_ponens_from_hypotheses_is_fine() {
        let proof = Proof {
            hypotheses: vec![parse("p").unwrap(), parse("p -> q").unwrap()],
            lines: vec![
                ProofLine {
                    formula: parse("p").unwrap(),
                    rule: Rule::Hypothesis(0),
                },
                ProofLine {
                    formula: parse("p -> q").unwrap(),
                    rule: Rule::Hypothesis(1),
                },
                ProofLine {
                    formula: parse("q").unwrap(),
                    rule: Rule::ModusPonens(1, 2),
                },
            ],
        };
        assert_eq!(
            check_proof(&proof),
            Verdict::Accepted {
                goal: parse("q").unwrap()
            }
        );
    }

    #[test]
    fn rejects_bad_shapes_and_references() {
        let line = |text: &str, rule: Rule| ProofLine {
            formula: parse(text).unwrap(),
            rule,
        };
        let proof = Proof {
            hypotheses: vec![],
            lines: vec![
                line("p -> p", Rule::Tautology),
                line("q", Rule::ModusPonens(1, 1)),
            ],
        };
        assert_eq!(
            check_proof(&proof),
            Verdict::Rejected {
                line: 2,
                reason: RejectReason::BadMPShape
            }
        );

        let proof = Proof {
            hypotheses: vec![],
            lines: vec![
                line("p -> p", Rule::Tautology),
                line("q", Rule::ModusPonens(1, 2)),
            ],
        };
        assert_eq!(
            check_proof(&proof),
            Verdict::Rejected {
                line: 2,
                reason: RejectReason::DanglingReference
            }
        );

        let proof = Proof {
            hypotheses: vec![parse("p").unwrap()],
            lines: vec![line("q", Rule::Hypothesis(0))],
        };
        assert_eq!(
            check_proof(&proof),
            Verdict::Rejected {
                line: 1,
                reason: RejectReason::HypothesisMismatch
            }
        );

        let proof = Proof {
            hypotheses: vec![],
            lines: vec![
                line("p -> p", Rule::Tautology),
                line("K[a] p", Rule::Necessitation(agent("a"), 1)),
            ],
        };
        assert_eq!(
            check_proof(&proof),
            Verdict::Rejected {
                line: 2,
                reason: RejectReason::BadNecessitationShape
            }
        );

        assert_eq!(
            check_proof(&Proof::default()),
            Verdict::Rejected {
                line: 0,
                reason: RejectReason::EmptyProof
            }
        );
    }

    #[test]
    fn json_round_trip() {
        let proof = fixtures::proof_comprehension_of_tautology();
        let text = proof.to_json_string();
        let back = Proof::from_json_str(&text).unwrap();
        assert_eq!(back, proof);
    }

    #[test]
    fn json_wire_format_shape() {
        let text = r#"{
            "hypotheses": ["p -> q"],
            "lines": [
                {"formula": "p -> q", "rule": "hyp", "index": 0},
                {"formula": "(p -> q) -> (p -> q)", "rule": "tautology"},
                {"formula": "K[a] ((p -> q) -> (p -> q))", "rule": "nec", "agent": "a", "from": 2},
                {"formula": "K[a] ((p -> q) -> (p -> q)) -> C[a] ((p -> q) -> (p -> q))",
                 "rule": "axiom", "axiom": "ComprehensionOfKnown"},
                {"formula": "C[a] ((p -> q) -> (p -> q))", "rule": "mp", "from": [3, 4]}
            ]
        }"#;
        let proof = Proof::from_json_str(text).unwrap();
        assert!(matches!(check_proof(&proof), Verdict::Accepted { .. }));
    }
}
