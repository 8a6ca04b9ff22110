//! Recursive-descent parser for formulas, circ atoms and NATs.

use super::alphabet::{Alphabet, Atom};
use super::formula::Formula;
use super::nat::{Block, Child, Nat};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Semi,
    Colon,
    Comma,
    Not,
    And,
    Or,
    Arrow,
    DArrow,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Not => "`~`".into(),
            Tok::And => "`&`".into(),
            Tok::Or => "`|`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::DArrow => "`<->`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

pub(crate) fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

pub(crate) fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || matches!(c, '_' | '\'' | '@' | '.')
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let mut adv = 1;
        let tok = match c {
            '\n' => {
                line += 1;
                col = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => None,
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            ';' => Some(Tok::Semi),
            ':' => Some(Tok::Colon),
            ',' => Some(Tok::Comma),
            '~' | '!' => Some(Tok::Not),
            '&' => Some(Tok::And),
            '|' => Some(Tok::Or),
            '-' if chars.get(i + 1) == Some(&'>') => {
                adv = 2;
                Some(Tok::Arrow)
            }
            '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => {
                adv = 3;
                Some(Tok::DArrow)
            }
            c if is_ident_start(c) => {
                let start = i;
                let mut j = i;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                adv = j - start;
                Some(Tok::Ident(chars[start..j].iter().collect()))
            }
            other => {
                return Err(Error::Parse {
                    line,
                    col,
                    msg: format!("unexpected character `{other}`"),
                })
            }
        };
        if let Some(tok) = tok {
            out.push(Spanned {
                tok,
                line: l0,
                col: c0,
            });
        }
        i += adv;
        col += adv;
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    alpha: &'a mut Alphabet,
}

impl<'a> Parser<'a> {
    fn new(text: &str, alpha: &'a mut Alphabet) -> Result<Self> {
        Ok(Parser {
            toks: lex(text)?,
            pos: 0,
            alpha,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err(&self, expected: &str) -> Error {
        let s = &self.toks[self.pos];
        Error::Parse {
            line: s.line,
            col: s.col,
            msg: format!("expected {expected}, found {}", s.tok.describe()),
        }
    }

    fn semantic_at(&self, msg: String) -> Error {
        let s = &self.toks[self.pos.saturating_sub(1)];
        Error::Semantic(format!("{}:{}: {msg}", s.line, s.col))
    }

    fn expect(&mut self, t: Tok, expected: &str) -> Result<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            Err(self.err(expected))
        }
    }

    fn atom(&mut self, name: &str) -> Result<Atom> {
        if let Some(a) = self.alpha.get(name) {
            return Ok(a);
        }
        if self.alpha.closed {
            return Err(self.semantic_at(format!("unknown atom `{name}` under a closed alphabet")));
        }
        Ok(self.alpha.intern(name))
    }

    /// Identifier list with optional commas; may be empty.
    fn idents(&mut self) -> Result<Vec<Atom>> {
        let mut out = Vec::new();
        loop {
            match self.peek().clone() {
                Tok::Ident(s) => {
                    self.bump();
                    let a = self.atom(&s)?;
                    if out.contains(&a) {
                        return Err(self.semantic_at(format!("duplicate letter `{s}` in list")));
                    }
                    out.push(a);
                }
                Tok::Comma if !out.is_empty() && matches!(self.peek_at(1), Tok::Ident(_)) => {
                    self.bump();
                }
                _ => return Ok(out),
            }
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let mut l = self.implication()?;
        while *self.peek() == Tok::DArrow {
            self.bump();
            let r = self.implication()?;
            l = Formula::iff(l, r);
        }
        Ok(l)
    }

    fn implication(&mut self) -> Result<Formula> {
        let l = self.disjunction()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let r = self.implication()?;
            return Ok(Formula::implies(l, r));
        }
        Ok(l)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut items = vec![self.conjunction()?];
        while *self.peek() == Tok::Or {
            self.bump();
            items.push(self.conjunction()?);
        }
        Ok(Formula::or_all(items))
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut items = vec![self.unary()?];
        while *self.peek() == Tok::And {
            self.bump();
            items.push(self.unary()?);
        }
        Ok(Formula::and_all(items))
    }

    fn unary(&mut self) -> Result<Formula> {
        if *self.peek() == Tok::Not {
            self.bump();
            return Ok(Formula::not(self.unary()?));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            Tok::Ident(s) if s == "true" => {
                self.bump();
                Ok(Formula::True)
            }
            Tok::Ident(s) if s == "false" => {
                self.bump();
                Ok(Formula::False)
            }
            Tok::Ident(s) if s.eq_ignore_ascii_case("circ") && *self.peek_at(1) == Tok::LParen => {
                self.bump();
                self.bump();
                let inner = self.formula()?;
                self.expect(Tok::Semi, "`;` after circ body")?;
                let p = self.idents()?;
                self.expect(Tok::Semi, "`;` after minimized letters")?;
                let z = self.idents()?;
                self.expect(Tok::RParen, "`)` closing circ")?;
                if let Some(&a) = p.iter().find(|a| z.contains(a)) {
                    return Err(self.semantic_at(format!(
                        "minimized and floating letters overlap on `{}`",
                        self.alpha.name(a)
                    )));
                }
                Ok(Formula::circ(inner, p, z))
            }
            Tok::Ident(s) => {
                self.bump();
                Ok(Formula::Atom(self.atom(&s)?))
            }
            _ => Err(self.err("formula")),
        }
    }

    fn block(&mut self) -> Result<Block> {
        self.expect(Tok::LBrace, "`{`")?;
        // `~` marks an empty list of described letters.
        let described = if *self.peek() == Tok::Not && *self.peek_at(1) == Tok::Colon {
            self.bump();
            Vec::new()
        } else {
            self.idents()?
        };
        let mut b = Block {
            described,
            ..Block::default()
        };
        while *self.peek() == Tok::Semi {
            self.bump();
            match self.peek().clone() {
                Tok::Ident(s) if s == "min" && b.min.is_empty() && b.max.is_empty() => {
                    self.bump();
                    b.min = self.idents()?;
                }
                Tok::Ident(s) if s == "max" && b.max.is_empty() => {
                    self.bump();
                    b.max = self.idents()?;
                }
                _ => return Err(self.err("`min` or `max`")),
            }
        }
        self.expect(Tok::Colon, "`:` in block header")?;
        self.check_block_letters(&b)?;
        loop {
            let child = if *self.peek() == Tok::LBrace {
                Child::Block(self.block()?)
            } else {
                let f = self.formula()?;
                if !f.is_propositional() {
                    return Err(
                        self.semantic_at("circ atoms are not allowed inside NAT blocks".into())
                    );
                }
                Child::Formula(f)
            };
            b.children.push(child);
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                }
                Tok::RBrace => {
                    self.bump();
                    return Ok(b);
                }
                _ => return Err(self.err("`,` or `}`")),
            }
        }
    }

    fn check_block_letters(&self, b: &Block) -> Result<()> {
        let all = b.declared();
        for (i, &a) in all.iter().enumerate() {
            if self.alpha.is_ab(a) {
                return Err(self.semantic_at(format!(
                    "letter `{}` of a block header is an abnormality letter",
                    self.alpha.name(a)
                )));
            }
            if all[..i].contains(&a) {
                return Err(self.semantic_at(format!(
                    "letter `{}` appears in more than one of C, min, max",
                    self.alpha.name(a)
                )));
            }
        }
        Ok(())
    }

    /// An optional leading `ab a1 a2 ...;` declares the abnormality letters.
    fn nat(&mut self) -> Result<Vec<Block>> {
        let declares = matches!(self.peek(), Tok::Ident(s) if s == "ab")
            && matches!(self.peek_at(1), Tok::Ident(_) | Tok::Comma | Tok::Semi);
        if declares {
            self.bump();
            self.ab_declaration()?;
        }
        self.nat_body()
    }

    fn ab_declaration(&mut self) -> Result<()> {
        loop {
            match self.peek().clone() {
                Tok::Ident(s) => {
                    self.bump();
                    self.alpha.intern_ab(&s);
                }
                Tok::Comma => {
                    self.bump();
                }
                _ => break,
            }
        }
        self.expect(Tok::Semi, "`;` after the ab declaration")
    }

    fn nat_body(&mut self) -> Result<Vec<Block>> {
        let mut blocks = Vec::new();
        while *self.peek() != Tok::Eof {
            if *self.peek() == Tok::LBrace {
                blocks.push(self.block()?);
                if *self.peek() == Tok::Semi {
                    self.bump();
                }
            } else {
                let f = self.formula()?;
                if !f.is_propositional() {
                    return Err(self.semantic_at("circ atoms are not allowed inside NATs".into()));
                }
                blocks.push(Block::new(Vec::new(), vec![Child::Formula(f)]));
                if *self.peek() == Tok::Semi {
                    self.bump();
                } else if *self.peek() != Tok::Eof {
                    return Err(self.err("`;`"));
                }
            }
        }
        if blocks.is_empty() {
            return Err(self.err("block or formula"));
        }
        Ok(blocks)
    }
}

/// Parses an L_CIRC formula, interning new atoms into `alpha` unless it is closed.
pub fn parse_lcirc(text: &str, alpha: &mut Alphabet) -> Result<Formula> {
    let mut p = Parser::new(text, alpha)?;
    let f = p.formula()?;
    if *p.peek() == Tok::Semi {
        p.bump();
    }
    if *p.peek() != Tok::Eof {
        return Err(p.err("end of input"));
    }
    Ok(f)
}

/// Parses a NAT. Bare top-level formulas become blocks with empty C.
pub fn parse_nat(text: &str) -> Result<Nat> {
    let mut alpha = Alphabet::new();
    let blocks = Parser::new(text, &mut alpha)?.nat()?;
    Ok(Nat::new(alpha, blocks))
}

/// Parses a model literal such as `b,c,f` into the list of true atoms.
pub fn parse_model(text: &str, alpha: &Alphabet) -> Result<Vec<Atom>> {
    let mut out = Vec::new();
    for name in text
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
    {
        match alpha.get(name) {
            Some(a) => out.push(a),
            None => {
                return Err(Error::semantic(format!(
                    "model mentions unknown atom `{name}`"
                )))
            }
        }
    }
    Ok(out)
}
