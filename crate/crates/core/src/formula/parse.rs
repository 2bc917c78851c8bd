//! Recursive-descent parser for the concrete formula grammar.
//!
//! Precedence, loosest to tightest:
//!
//! ```text
//! formula := iff
//! iff     := imp ("<->" imp)*          left-associative
//! imp     := or ("->" imp)?            right-associative
//! or      := and ("|" and)*            left-associative
//! and     := unary ("&" unary)*        left-associative
//! unary   := "~" unary
//!          | ("K" | "C") "[" agent "]" unary
//!          | atom
//! atom    := "top" | "bot" | variable | "(" formula ")"
//! ```
//!
//! `&`, `|`, `<->`, and `bot` are desugared while parsing, so the result
//! contains only the six core constructors.

use super::{AgentId, Formula, VarId};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at byte {offset}: expected {}, found {found}", expected.join(" or "))]
    Syntax {
        /// Byte offset of the offending token in the input.
        offset: usize,
        /// What would have been accepted at this position.
        expected: Vec<&'static str>,
        found: String,
    },
    #[error("reserved word `{word}` used as an agent name at byte {offset}")]
    ReservedWord { offset: usize, word: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Top,
    Bot,
    Tilde,
    Arrow,
    Iff,
    Pipe,
    Amp,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Top => "`top`".to_string(),
            Tok::Bot => "`bot`".to_string(),
            Tok::Tilde => "`~`".to_string(),
            Tok::Arrow => "`->`".to_string(),
            Tok::Iff => "`<->`".to_string(),
            Tok::Pipe => "`|`".to_string(),
            Tok::Amp => "`&`".to_string(),
            Tok::LParen => "`(`".to_string(),
            Tok::RParen => "`)`".to_string(),
            Tok::LBracket => "`[`".to_string(),
            Tok::RBracket => "`]`".to_string(),
            Tok::Eof => "end of input".to_string(),
        }
    }
}

fn lex(input: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut toks = Vec::new();
    let bytes = input.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => i += 1,
            b'~' => {
                toks.push((Tok::Tilde, i));
                i += 1;
            }
            b'|' => {
                toks.push((Tok::Pipe, i));
                i += 1;
            }
            b'&' => {
                toks.push((Tok::Amp, i));
                i += 1;
            }
            b'(' => {
                toks.push((Tok::LParen, i));
                i += 1;
            }
            b')' => {
                toks.push((Tok::RParen, i));
                i += 1;
            }
            b'[' => {
                toks.push((Tok::LBracket, i));
                i += 1;
            }
            b']' => {
                toks.push((Tok::RBracket, i));
                i += 1;
            }
            b'-' => {
                if bytes.get(i + 1) == Some(&b'>') {
                    toks.push((Tok::Arrow, i));
                    i += 2;
                } else {
                    return Err(ParseError::Syntax {
                        offset: i,
                        expected: vec!["`->`"],
                        found: format!("`{}`", &input[i..(i + 1)]),
                    });
                }
            }
            b'<' => {
                if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') {
                    toks.push((Tok::Iff, i));
                    i += 3;
                } else {
                    return Err(ParseError::Syntax {
                        offset: i,
                        expected: vec!["`<->`"],
                        found: format!("`{}`", &input[i..(i + 1)]),
                    });
                }
            }
            _ if c.is_ascii_alphabetic() || c == b'_' => {
                let start = i;
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                let word = &input[start..i];
                let tok = match word {
                    "top" => Tok::Top,
                    "bot" => Tok::Bot,
                    _ => Tok::Ident(word.to_string()),
                };
                toks.push((tok, start));
            }
            _ => {
                // Step over a full character so the `found` text is readable.
                let ch = input[i..].chars().next().unwrap();
                return Err(ParseError::Syntax {
                    offset: i,
                    expected: vec!["a formula token"],
                    found: format!("`{ch}`"),
                });
            }
        }
    }
    toks.push((Tok::Eof, input.len()));
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.pos + 1).min(self.toks.len() - 1)].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let tok = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        tok
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error(&self, expected: Vec<&'static str>) -> ParseError {
        ParseError::Syntax {
            offset: self.offset(),
            expected,
            found: self.peek().describe(),
        }
    }

    fn iff(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.imp()?;
        while self.eat(&Tok::Iff) {
            let rhs = self.imp()?;
            lhs = Formula::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.imp()?;
            Ok(Formula::implies(lhs, rhs))
        } else {
            Ok(lhs)
        }
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while self.eat(&Tok::Pipe) {
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::Amp) {
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Tilde => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            // `K` and `C` are modal operators only when followed by `[`;
            // otherwise they are ordinary variables.
            Tok::Ident(name) if (name == "K" || name == "C") && *self.peek2() == Tok::LBracket => {
                let know = name == "K";
                self.bump();
                self.bump();
                let agent = self.agent_name()?;
                if !self.eat(&Tok::RBracket) {
                    return Err(self.error(vec!["`]`"]));
                }
                let body = self.unary()?;
                Ok(if know {
                    Formula::know(agent, body)
                } else {
                    Formula::comp(agent, body)
                })
            }
            _ => self.atom(),
        }
    }

    fn agent_name(&mut self) -> Result<AgentId, ParseError> {
        let offset = self.offset();
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                Ok(AgentId(name))
            }
            Tok::Top | Tok::Bot => {
                let word = if *self.peek() == Tok::Top {
                    "top"
                } else {
                    "bot"
                };
                Err(ParseError::ReservedWord {
                    offset,
                    word: word.to_string(),
                })
            }
            _ => Err(self.error(vec!["an agent name"])),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Top => {
                self.bump();
                Ok(Formula::Top)
            }
            Tok::Bot => {
                self.bump();
                Ok(Formula::bot())
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::Var(VarId(name)))
            }
            Tok::LParen => {
                self.bump();
                let f = self.iff()?;
                if !self.eat(&Tok::RParen) {
                    return Err(self.error(vec!["`)`", "`->`", "`<->`", "`|`", "`&`"]));
                }
                Ok(f)
            }
            _ => Err(self.error(vec!["a formula"])),
        }
    }
}

/// Parses the concrete grammar into the core syntax tree.
pub fn parse(input: &str) -> Result<Formula, ParseError> {
    let toks = lex(input)?;
    let mut parser = Parser { toks, pos: 0 };
    let f = parser.iff()?;
    if *parser.peek() != Tok::Eof {
        return Err(parser.error(vec!["`->`", "`<->`", "`|`", "`&`", "end of input"]));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::super::render;
    use super::*;

    fn agent(s: &str) -> AgentId {
        AgentId::new(s).unwrap()
    }

    fn var(s: &str) -> Formula {
        Formula::Var(VarId::new(s).unwrap())
    }

    #[test]
    fn parses_modal_implication() {
        assert_eq!(
            parse("K[a] p -> C[a] p").unwrap(),
            Formula::implies(
                Formula::know(agent("a"), var("p")),
                Formula::comp(agent("a"), var("p")),
            )
        );
    }

    #[test]
    fn parses_nested_modalities() {
        assert_eq!(
            parse("C[a] C[b] p").unwrap(),
            Formula::comp(agent("a"), Formula::comp(agent("b"), var("p")))
        );
    }

    #[test]
    fn desugars_or() {
        assert_eq!(
            parse("~p -> p | q").unwrap(),
            Formula::implies(
                Formula::not(var("p")),
                Formula::implies(Formula::not(var("p")), var("q")),
            )
        );
    }

    #[test]
    fn desugars_and_iff_bot() {
        assert_eq!(parse("p & q").unwrap(), Formula::and(var("p"), var("q")));
        assert_eq!(parse("p <-> q").unwrap(), Formula::iff(var("p"), var("q")));
        assert_eq!(parse("bot").unwrap(), Formula::not(Formula::Top));
    }

    #[test]
    fn implication_is_right_associative() {
        assert_eq!(
            parse("p -> q -> r").unwrap(),
            Formula::implies(var("p"), Formula::implies(var("q"), var("r")))
        );
    }

    #[test]
    fn iff_is_left_associative() {
        assert_eq!(
            parse("p <-> q <-> r").unwrap(),
            Formula::iff(Formula::iff(var("p"), var("q")), var("r"))
        );
    }

    #[test]
    fn pipe_binds_tighter_than_arrow_and_looser_than_amp() {
        assert_eq!(
            parse("p -> q | r & s").unwrap(),
            Formula::implies(
                var("p"),
                Formula::or(var("q"), Formula::and(var("r"), var("s")))
            )
        );
    }

    #[test]
    fn bare_k_and_c_are_variables() {
        assert_eq!(
            parse("K -> C").unwrap(),
            Formula::implies(var("K"), var("C"))
        );
    }

    #[test]
    fn reserved_agent_name_is_reported() {
        assert_eq!(
            parse("K[top] p"),
            Err(ParseError::ReservedWord {
                offset: 2,
                word: "top".to_string()
            })
        );
    }

    #[test]
    fn syntax_error_carries_offset_and_expectations() {
        match parse("p -> -> q") {
            Err(ParseError::Syntax {
                offset,
                expected,
                found,
            }) => {
                assert_eq!(offset, 5);
                assert_eq!(expected, vec!["a formula"]);
                assert_eq!(found, "`->`");
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
    }

    #[test]
    fn unclosed_paren_is_reported() {
        assert!(matches!(
            parse("(p -> q"),
            Err(ParseError::Syntax { offset: 7, .. })
        ));
    }

    #[test]
    fn sugar_round_trips_through_core_syntax() {
        for text in ["p & q & r", "p | q | r", "p <-> q", "bot -> p", "~(p & ~q)"] {
            let f = parse(text).unwrap();
            assert_eq!(parse(&render(&f)).unwrap(), f, "round-trip of {text}");
        }
    }
}
