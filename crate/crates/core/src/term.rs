//! Terms of the relational calculus.
//!
//! Application is binary and associative, so every term is stored in its
//! canonical flattened form: a [`Word`], the in-order sequence of its leaves.
//! Two terms are equal modulo association iff their words are identical.

use std::fmt;

use thiserror::Error;

/// Identity element of the generative systems.
pub const IDENTITY: &str = "e";
/// The three distinguished atoms of the identity triple.
pub const TRIPLE: [&str; 3] = ["x", "y", "z"];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("unexpected character {ch:?} at byte {offset}")]
    Lex { offset: usize, ch: char },
    #[error("unbalanced delimiter at byte {offset}")]
    Unbalanced { offset: usize },
    #[error("empty group at byte {offset}")]
    EmptyGroup { offset: usize },
    #[error("group at byte {offset} must contain at least two terms")]
    SingletonGroup { offset: usize },
    #[error("empty input")]
    Empty,
    #[error("invalid atom name {0:?}")]
    BadAtom(String),
    #[error("expected exactly one '=' in equation, found {0}")]
    Equation(usize),
    #[error("{side} side of equation: {source}")]
    Side {
        side: &'static str,
        #[source]
        source: Box<TermError>,
    },
}

/// A named generator, optionally carrying an inverse mark (`a'`).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    name: String,
    inverted: bool,
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

impl Atom {
    pub fn new(name: impl Into<String>) -> Result<Self, TermError> {
        Self::with_mark(name, false)
    }

    pub fn inverse_of(name: impl Into<String>) -> Result<Self, TermError> {
        Self::with_mark(name, true)
    }

    pub fn with_mark(name: impl Into<String>, inverted: bool) -> Result<Self, TermError> {
        let name = name.into();
        if name.is_empty() || !name.chars().all(is_name_char) {
            return Err(TermError::BadAtom(name));
        }
        Ok(Atom { name, inverted })
    }

    /// Shorthand for reserved or literal names known to be valid.
    ///
    /// Panics on an invalid name.
    pub fn named(name: &str) -> Self {
        Self::new(name).expect("valid atom name")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_inverted(&self) -> bool {
        self.inverted
    }

    /// The same generator with the inverse mark flipped.
    pub fn flipped(&self) -> Self {
        Atom {
            name: self.name.clone(),
            inverted: !self.inverted,
        }
    }

    pub fn is_inverse_pair(&self, other: &Atom) -> bool {
        self.name == other.name && self.inverted != other.inverted
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)?;
        if self.inverted {
            f.write_str("'")?;
        }
        Ok(())
    }
}

/// A binary application tree; the left child sits in operator position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TermTree {
    Leaf(Atom),
    App(Box<TermTree>, Box<TermTree>),
}

impl TermTree {
    pub fn app(left: TermTree, right: TermTree) -> Self {
        TermTree::App(Box::new(left), Box::new(right))
    }

    pub fn leaf(name: &str) -> Self {
        TermTree::Leaf(Atom::named(name))
    }
}

/// A non-empty sequence of atoms: a term modulo the association rule.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(Vec<Atom>);

impl Word {
    /// Returns `None` for an empty sequence.
    pub fn new(atoms: Vec<Atom>) -> Option<Self> {
        if atoms.is_empty() {
            None
        } else {
            Some(Word(atoms))
        }
    }

    pub fn single(atom: Atom) -> Self {
        Word(vec![atom])
    }

    /// Builds a word from plain atom names. Panics on an invalid name or empty list.
    pub fn from_names(names: &[&str]) -> Self {
        Word::new(names.iter().map(|n| Atom::named(n)).collect()).expect("non-empty word")
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.0
    }

    pub fn into_atoms(self) -> Vec<Atom> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; present for API symmetry with slices.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut atoms = self.0.clone();
        atoms.extend(other.0.iter().cloned());
        Word(atoms)
    }

    pub fn has_inverted(&self) -> bool {
        self.0.iter().any(Atom::is_inverted)
    }

    /// The left-comb tree `((a b) c) ...` with this leaf sequence.
    pub fn to_tree(&self) -> TermTree {
        let mut iter = self.0.iter().cloned();
        let first = TermTree::Leaf(iter.next().expect("non-empty"));
        iter.fold(first, |acc, a| TermTree::app(acc, TermTree::Leaf(a)))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// Space-separated atom names, apostrophe for inverted atoms.
pub fn print_word(w: &Word) -> String {
    w.to_string()
}

pub fn flatten(t: &TermTree) -> Word {
    fn walk(t: &TermTree, out: &mut Vec<Atom>) {
        match t {
            TermTree::Leaf(a) => out.push(a.clone()),
            TermTree::App(l, r) => {
                walk(l, out);
                walk(r, out);
            }
        }
    }
    let mut atoms = Vec::new();
    walk(t, &mut atoms);
    Word(atoms)
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Atom(Atom),
    Open(char),
    Close(char),
}

fn lex(text: &str) -> Result<Vec<(usize, Token)>, TermError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(offset, ch)) = chars.peek() {
        if ch.is_whitespace() {
            chars.next();
        } else if ch == '(' || ch == '[' {
            chars.next();
            out.push((offset, Token::Open(ch)));
        } else if ch == ')' || ch == ']' {
            chars.next();
            out.push((offset, Token::Close(ch)));
        } else if is_name_char(ch) {
            let mut end = offset;
            while let Some(&(i, c)) = chars.peek() {
                if !is_name_char(c) {
                    break;
                }
                end = i + c.len_utf8();
                chars.next();
            }
            let mut inverted = false;
            if let Some(&(_, '\'')) = chars.peek() {
                inverted = true;
                chars.next();
            }
            let atom = Atom::with_mark(&text[offset..end], inverted)?;
            out.push((offset, Token::Atom(atom)));
        } else {
            return Err(TermError::Lex { offset, ch });
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&(usize, Token)> {
        self.tokens.get(self.pos)
    }

    /// One or more terms, folded left, stopping before a closer or end of input.
    fn sequence(&mut self) -> Result<(TermTree, usize), TermError> {
        let mut acc: Option<TermTree> = None;
        let mut count = 0;
        while let Some((_, tok)) = self.peek() {
            if matches!(tok, Token::Close(_)) {
                break;
            }
            let t = self.term()?;
            count += 1;
            acc = Some(match acc {
                None => t,
                Some(prev) => TermTree::app(prev, t),
            });
        }
        match acc {
            Some(t) => Ok((t, count)),
            None => Err(TermError::Empty),
        }
    }

    fn term(&mut self) -> Result<TermTree, TermError> {
        let (offset, tok) = self.tokens[self.pos].clone();
        self.pos += 1;
        match tok {
            Token::Atom(a) => Ok(TermTree::Leaf(a)),
            Token::Close(_) => Err(TermError::Unbalanced { offset }),
            Token::Open(open) => {
                let want = if open == '(' { ')' } else { ']' };
                if let Some((_, Token::Close(c))) = self.peek() {
                    return if *c == want {
                        Err(TermError::EmptyGroup { offset })
                    } else {
                        Err(TermError::Unbalanced {
                            offset: self.peek().unwrap().0,
                        })
                    };
                }
                let (inner, count) = self.sequence().map_err(|e| match e {
                    TermError::Empty => TermError::Unbalanced { offset },
                    e => e,
                })?;
                match self.peek() {
                    Some((_, Token::Close(c))) if *c == want => {
                        self.pos += 1;
                    }
                    Some((at, Token::Close(_))) => {
                        return Err(TermError::Unbalanced { offset: *at })
                    }
                    _ => return Err(TermError::Unbalanced { offset }),
                }
                if count < 2 {
                    return Err(TermError::SingletonGroup { offset });
                }
                Ok(inner)
            }
        }
    }
}

/// Parses `term := atom | '(' term term+ ')' | '[' term term+ ']'`; a bare
/// top-level sequence is also accepted. Juxtaposition associates left.
pub fn parse(text: &str) -> Result<TermTree, TermError> {
    let tokens = lex(text)?;
    if tokens.is_empty() {
        return Err(TermError::Empty);
    }
    let mut p = Parser { tokens, pos: 0 };
    let (tree, _) = p.sequence()?;
    if let Some((offset, _)) = p.peek() {
        return Err(TermError::Unbalanced { offset: *offset });
    }
    Ok(tree)
}

pub fn parse_word(text: &str) -> Result<Word, TermError> {
    parse(text).map(|t| flatten(&t))
}

/// Parses `TERM = TERM` into its two flattened sides.
pub fn parse_equation(text: &str) -> Result<(Word, Word), TermError> {
    let parts: Vec<&str> = text.split('=').collect();
    if parts.len() != 2 {
        return Err(TermError::Equation(parts.len().saturating_sub(1)));
    }
    let side = |s: &str, name: &'static str, base: usize| {
        parse_word(s).map_err(|e| TermError::Side {
            side: name,
            source: Box::new(shift_offset(e, base)),
        })
    };
    let lhs = side(parts[0], "left", 0)?;
    let rhs = side(parts[1], "right", parts[0].len() + 1)?;
    Ok((lhs, rhs))
}

fn shift_offset(e: TermError, base: usize) -> TermError {
    match e {
        TermError::Lex { offset, ch } => TermError::Lex {
            offset: offset + base,
            ch,
        },
        TermError::Unbalanced { offset } => TermError::Unbalanced {
            offset: offset + base,
        },
        TermError::EmptyGroup { offset } => TermError::EmptyGroup {
            offset: offset + base,
        },
        TermError::SingletonGroup { offset } => TermError::SingletonGroup {
            offset: offset + base,
        },
        e => e,
    }
}

pub fn print_equation(lhs: &Word, rhs: &Word) -> String {
    format!("{lhs} = {rhs}")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        parse_word(s).unwrap()
    }

    #[test]
    fn parse_examples() {
        let zyy = TermTree::app(
            TermTree::app(TermTree::leaf("z"), TermTree::leaf("y")),
            TermTree::leaf("y"),
        );
        assert_eq!(parse("[[z y] y]").unwrap(), zyy);
        assert_eq!(parse("z y y").unwrap(), zyy);
        assert_eq!(parse("x").unwrap(), TermTree::leaf("x"));
    }

    #[test]
    fn flatten_examples() {
        let (a, b, c) = (
            TermTree::leaf("a"),
            TermTree::leaf("b"),
            TermTree::leaf("c"),
        );
        let left = TermTree::app(TermTree::app(a.clone(), b.clone()), c.clone());
        let right = TermTree::app(a, TermTree::app(b, c));
        assert_eq!(flatten(&left), Word::from_names(&["a", "b", "c"]));
        assert_eq!(flatten(&right), Word::from_names(&["a", "b", "c"]));
        assert_eq!(flatten(&TermTree::leaf("x")), Word::from_names(&["x"]));
    }

    #[test]
    fn print_examples() {
        assert_eq!(print_word(&Word::from_names(&["z", "y", "y"])), "z y y");
        assert_eq!(
            print_word(&Word::single(Atom::inverse_of("a").unwrap())),
            "a'"
        );
        assert_eq!(print_word(&Word::from_names(&["1", "1", "1"])), "1 1 1");
    }

    #[test]
    fn equation_examples() {
        assert_eq!(parse_equation("z y = x").unwrap(), (w("z y"), w("x")));
        assert_eq!(parse_equation("x y = y").unwrap(), (w("x y"), w("y")));
        assert_eq!(parse_equation("a = a").unwrap(), (w("a"), w("a")));
        assert_eq!(parse_equation("a b").unwrap_err(), TermError::Equation(0));
        assert_eq!(
            parse_equation("a = b = c").unwrap_err(),
            TermError::Equation(2)
        );
        assert!(matches!(
            parse_equation("a = (b").unwrap_err(),
            TermError::Side { side: "right", .. }
        ));
    }

    #[test]
    fn brackets_and_parens_interchange() {
        assert_eq!(w("(a b) c"), w("[a [b c]]"));
        assert_eq!(w("0 (1 1)"), Word::from_names(&["0", "1", "1"]));
    }

    #[test]
    fn inverse_marks() {
        let word = w("a' b");
        assert!(word.atoms()[0].is_inverted());
        assert!(!word.atoms()[1].is_inverted());
    }

    #[test]
    fn error_offsets() {
        assert_eq!(
            parse("a # b").unwrap_err(),
            TermError::Lex { offset: 2, ch: '#' }
        );
        assert_eq!(
            parse("a (b c").unwrap_err(),
            TermError::Unbalanced { offset: 2 }
        );
        assert_eq!(
            parse("a b)").unwrap_err(),
            TermError::Unbalanced { offset: 3 }
        );
        assert_eq!(
            parse("(a b]").unwrap_err(),
            TermError::Unbalanced { offset: 4 }
        );
        assert_eq!(
            parse("x ()").unwrap_err(),
            TermError::EmptyGroup { offset: 2 }
        );
        assert_eq!(
            parse("[x]").unwrap_err(),
            TermError::SingletonGroup { offset: 0 }
        );
        assert_eq!(parse("   ").unwrap_err(), TermError::Empty);
        assert_eq!(
            parse("a''").unwrap_err(),
            TermError::Lex {
                offset: 2,
                ch: '\''
            }
        );
        assert_eq!(
            parse("(a b)'").unwrap_err(),
            TermError::Lex {
                offset: 5,
                ch: '\''
            }
        );
    }

    #[test]
    fn left_comb_tree_round_trip() {
        let word = w("a b c d");
        assert_eq!(flatten(&word.to_tree()), word);
    }
}
