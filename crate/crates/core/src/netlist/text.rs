//! The `.qnl` netlist text format.
//!
//! ```text
//! # comment
//! design <name>
//! supply single|triple
//! input <net> bit|quat
//! output <net> bit|quat
//! inst <name> <BLOCK> <in-nets...> -> <out-nets...>
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use super::{BuildError, Netlist};
use crate::catalog::{lookup, SignalKind, SupplyMode};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}, column {column}: expected {expected}")]
    Syntax {
        line: usize,
        column: usize,
        expected: String,
    },
    #[error("line {line}, column {column}: unknown block `{name}`")]
    UnknownBlock {
        line: usize,
        column: usize,
        name: String,
    },
    #[error("line {line}, column {column}: duplicate name `{name}`")]
    DuplicateName {
        line: usize,
        column: usize,
        name: String,
    },
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Token<'_>> {
    let code = line.split('#').next().unwrap_or("");
    let mut tokens = Vec::new();
    let mut start = None;
    for (i, c) in code.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                tokens.push(Token {
                    text: &code[s..i],
                    column: code[..s].chars().count() + 1,
                });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        tokens.push(Token {
            text: &code[s..],
            column: code[..s].chars().count() + 1,
        });
    }
    tokens
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '.' | '[' | ']' | '-'))
}

struct LineParser<'a> {
    line: usize,
    tokens: Vec<Token<'a>>,
    pos: usize,
    end_column: usize,
}

impl<'a> LineParser<'a> {
    fn error(&self, expected: &str) -> ParseError {
        let column = self
            .tokens
            .get(self.pos)
            .map(|t| t.column)
            .unwrap_or(self.end_column);
        ParseError::Syntax {
            line: self.line,
            column,
            expected: expected.to_string(),
        }
    }

    fn peek(&self) -> Option<&Token<'a>> {
        self.tokens.get(self.pos)
    }

    fn identifier(&mut self, what: &str) -> Result<&'a str, ParseError> {
        match self.tokens.get(self.pos) {
            Some(t) if is_identifier(t.text) => {
                self.pos += 1;
                Ok(t.text)
            }
            _ => Err(self.error(what)),
        }
    }

    fn keyword<T: Copy>(&mut self, options: &[(&str, T)], what: &str) -> Result<T, ParseError> {
        let found = self
            .peek()
            .and_then(|t| options.iter().find(|(k, _)| *k == t.text))
            .map(|(_, v)| *v);
        match found {
            Some(v) => {
                self.pos += 1;
                Ok(v)
            }
            None => Err(self.error(what)),
        }
    }

    fn finish(&self) -> Result<(), ParseError> {
        if self.pos < self.tokens.len() {
            Err(self.error("end of line"))
        } else {
            Ok(())
        }
    }
}

const KINDS: [(&str, SignalKind); 2] = [("bit", SignalKind::Bit), ("quat", SignalKind::Quat)];
const SUPPLIES: [(&str, SupplyMode); 2] = [
    ("single", SupplyMode::Single),
    ("triple", SupplyMode::Triple),
];

enum Item<'a> {
    Port {
        output: bool,
        net: &'a str,
        kind: SignalKind,
        line: usize,
        column: usize,
    },
    Inst {
        name: &'a str,
        block: &'a str,
        ins: Vec<&'a str>,
        outs: Vec<&'a str>,
        line: usize,
        column: usize,
        block_column: usize,
    },
}

/// Parses `.qnl` text. Directives may appear in any order; `design` and
/// `supply` are required exactly once.
pub fn parse_netlist(text: &str) -> Result<Netlist, ParseError> {
    let mut design: Option<&str> = None;
    let mut supply: Option<SupplyMode> = None;
    let mut items = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let tokens = tokenize(raw);
        if tokens.is_empty() {
            continue;
        }
        let end_column = raw
            .split('#')
            .next()
            .unwrap_or("")
            .trim_end()
            .chars()
            .count()
            + 1;
        let mut p = LineParser {
            line,
            tokens,
            pos: 1,
            end_column,
        };
        let head = &p.tokens[0];
        let head_column = head.column;
        match head.text {
            "design" => {
                if design.is_some() {
                    return Err(ParseError::Syntax {
                        line,
                        column: head_column,
                        expected: "a single design directive".into(),
                    });
                }
                design = Some(p.identifier("design name")?);
                p.finish()?;
            }
            "supply" => {
                if supply.is_some() {
                    return Err(ParseError::Syntax {
                        line,
                        column: head_column,
                        expected: "a single supply directive".into(),
                    });
                }
                supply = Some(p.keyword(&SUPPLIES, "`single` or `triple`")?);
                p.finish()?;
            }
            "input" | "output" => {
                let output = head.text == "output";
                let column = p.peek().map(|t| t.column).unwrap_or(end_column);
                let net = p.identifier("net name")?;
                let kind = p.keyword(&KINDS, "`bit` or `quat`")?;
                p.finish()?;
                items.push(Item::Port {
                    output,
                    net,
                    kind,
                    line,
                    column,
                });
            }
            "inst" => {
                let column = p.peek().map(|t| t.column).unwrap_or(end_column);
                let name = p.identifier("instance name")?;
                let block_column = p.peek().map(|t| t.column).unwrap_or(end_column);
                let block = p.identifier("block name")?;
                let mut ins = Vec::new();
                while p.peek().is_some_and(|t| t.text != "->") {
                    ins.push(p.identifier("input net name or `->`")?);
                }
                p.keyword(&[("->", ())], "`->`")?;
                let mut outs = Vec::new();
                while p.peek().is_some() {
                    outs.push(p.identifier("output net name")?);
                }
                items.push(Item::Inst {
                    name,
                    block,
                    ins,
                    outs,
                    line,
                    column,
                    block_column,
                });
            }
            _ => {
                return Err(ParseError::Syntax {
                    line,
                    column: head_column,
                    expected: "`design`, `supply`, `input`, `output` or `inst`".into(),
                })
            }
        }
    }

    let missing = |what: &str| ParseError::Syntax {
        line: last_line + 1,
        column: 1,
        expected: what.into(),
    };
    let design = design.ok_or_else(|| missing("`design` directive"))?;
    let supply = supply.ok_or_else(|| missing("`supply` directive"))?;

    let mut n = Netlist::new(design, supply);
    for item in items {
        match item {
            Item::Port {
                output,
                net,
                kind,
                line,
                column,
            } => {
                let r = if output {
                    n.add_output(net, kind)
                } else {
                    n.add_input(net, kind)
                };
                r.map_err(|_| ParseError::DuplicateName {
                    line,
                    column,
                    name: net.to_string(),
                })?;
            }
            Item::Inst {
                name,
                block,
                ins,
                outs,
                line,
                column,
                block_column,
            } => {
                let spec = lookup(block).ok_or_else(|| ParseError::UnknownBlock {
                    line,
                    column: block_column,
                    name: block.to_string(),
                })?;
                n.add_instance_of(name, spec, &ins, &outs)
                    .map_err(|e| match e {
                        BuildError::DuplicateName(name) => {
                            ParseError::DuplicateName { line, column, name }
                        }
                        BuildError::UnknownBlock(name) => ParseError::UnknownBlock {
                            line,
                            column: block_column,
                            name,
                        },
                    })?;
            }
        }
    }
    Ok(n)
}

/// Canonical text: LF endings, single spaces, declarations before instances.
pub fn emit_netlist(n: &Netlist) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "design {}", n.name());
    let _ = writeln!(s, "supply {}", n.supply().keyword());
    for (net, kind) in n.inputs() {
        let _ = writeln!(s, "input {} {}", net.name, kind.keyword());
    }
    for (net, kind) in n.outputs() {
        let _ = writeln!(s, "output {} {}", net.name, kind.keyword());
    }
    for inst in n.instances() {
        let mut line = format!("inst {} {}", inst.name, inst.block.name);
        for id in &inst.inputs {
            line.push(' ');
            line.push_str(&n.net(*id).name);
        }
        line.push_str(" ->");
        for id in &inst.outputs {
            line.push(' ');
            line.push_str(&n.net(*id).name);
        }
        s.push_str(&line);
        s.push('\n');
    }
    s
}
