//! The formula language: abstract syntax, parsing, and printing.
//!
//! Core constructors are propositional variables, `top`, negation `~`,
//! implication `->`, and the modalities `K[a]` and `C[a]`. Conjunction `&`,
//! disjunction `|`, biconditional `<->`, and `bot` are surface sugar: the
//! parser desugars them, so they never appear in a [`Formula`] value.

mod parse;

pub use parse::{parse, ParseError};

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Words claimed by the grammar; variables and agents may not use them.
pub const RESERVED_WORDS: [&str; 2] = ["top", "bot"];

/// Error building a name newtype from a raw string.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentError {
    #[error("`{0}` is not a valid identifier")]
    Invalid(String),
    #[error("`{0}` is a reserved word")]
    Reserved(String),
}

/// `[A-Za-z_][A-Za-z0-9_]*`
pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {
            chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        }
        _ => false,
    }
}

fn checked_name(name: impl Into<String>) -> Result<String, IdentError> {
    let name = name.into();
    if !is_identifier(&name) {
        Err(IdentError::Invalid(name))
    } else if RESERVED_WORDS.contains(&name.as_str()) {
        Err(IdentError::Reserved(name))
    } else {
        Ok(name)
    }
}

/// An agent name. Equality is exact string equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AgentId(String);

impl AgentId {
    pub fn new(name: impl Into<String>) -> Result<Self, IdentError> {
        checked_name(name).map(AgentId)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for AgentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for AgentId {
    type Err = IdentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AgentId::new(s)
    }
}

/// A propositional variable name. `top` and `bot` are reserved, not variables.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(String);

impl VarId {
    pub fn new(name: impl Into<String>) -> Result<Self, IdentError> {
        checked_name(name).map(VarId)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for VarId {
    type Err = IdentError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        VarId::new(s)
    }
}

/// A formula of the bimodal language.
///
/// Values are immutable finite trees; equality is structural, node by node.
/// `Top` is a core node so that `signature` never reports a variable that the
/// user did not write; it is satisfied at every point, which coincides with
/// any instance of `phi -> phi`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Var(VarId),
    Top,
    Not(Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Know(AgentId, Box<Formula>),
    Comp(AgentId, Box<Formula>),
}

impl Formula {
    pub fn var(v: VarId) -> Self {
        Formula::Var(v)
    }

    // `not` is the connective's name, not a `std::ops::Not` impl.
    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn implies(lhs: Formula, rhs: Formula) -> Self {
        Formula::Implies(Box::new(lhs), Box::new(rhs))
    }

    pub fn know(a: AgentId, f: Formula) -> Self {
        Formula::Know(a, Box::new(f))
    }

    pub fn comp(a: AgentId, f: Formula) -> Self {
        Formula::Comp(a, Box::new(f))
    }

    /// `phi & psi`, desugared to `~(phi -> ~psi)`.
    pub fn and(lhs: Formula, rhs: Formula) -> Self {
        Formula::not(Formula::implies(lhs, Formula::not(rhs)))
    }

    /// `phi | psi`, desugared to `~phi -> psi`.
    pub fn or(lhs: Formula, rhs: Formula) -> Self {
        Formula::implies(Formula::not(lhs), rhs)
    }

    /// `phi <-> psi`, desugared to `(phi -> psi) & (psi -> phi)`.
    pub fn iff(lhs: Formula, rhs: Formula) -> Self {
        Formula::and(
            Formula::implies(lhs.clone(), rhs.clone()),
            Formula::implies(rhs, lhs),
        )
    }

    /// `bot`, desugared to `~top`.
    pub fn bot() -> Self {
        Formula::not(Formula::Top)
    }

    /// Exactly the agents and variables occurring in the formula.
    pub fn signature(&self) -> (BTreeSet<AgentId>, BTreeSet<VarId>) {
        let mut agents = BTreeSet::new();
        let mut vars = BTreeSet::new();
        self.collect_signature(&mut agents, &mut vars);
        (agents, vars)
    }

    fn collect_signature(&self, agents: &mut BTreeSet<AgentId>, vars: &mut BTreeSet<VarId>) {
        match self {
            Formula::Var(v) => {
                vars.insert(v.clone());
            }
            Formula::Top => {}
            Formula::Not(x) => x.collect_signature(agents, vars),
            Formula::Implies(lhs, rhs) => {
                lhs.collect_signature(agents, vars);
                rhs.collect_signature(agents, vars);
            }
            Formula::Know(a, x) | Formula::Comp(a, x) => {
                agents.insert(a.clone());
                x.collect_signature(agents, vars);
            }
        }
    }

    // Implication is the only infix core constructor, so the printer needs
    // just two levels: operand position forces parentheses around `->`.
    fn fmt_prec(&self, out: &mut fmt::Formatter<'_>, operand: bool) -> fmt::Result {
        match self {
            Formula::Var(v) => write!(out, "{v}"),
            Formula::Top => out.write_str("top"),
            Formula::Not(x) => {
                out.write_str("~")?;
                x.fmt_prec(out, true)
            }
            Formula::Know(a, x) => {
                write!(out, "K[{a}] ")?;
                x.fmt_prec(out, true)
            }
            Formula::Comp(a, x) => {
                write!(out, "C[{a}] ")?;
                x.fmt_prec(out, true)
            }
            Formula::Implies(lhs, rhs) => {
                if operand {
                    out.write_str("(")?;
                }
                lhs.fmt_prec(out, true)?;
                out.write_str(" -> ")?;
                rhs.fmt_prec(out, false)?;
                if operand {
                    out.write_str(")")?;
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, false)
    }
}

/// Minimal-parentheses text such that `parse(&render(f)) == Ok(f)`.
pub fn render(f: &Formula) -> String {
    f.to_string()
}
