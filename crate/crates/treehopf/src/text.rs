//! Tree-literal grammar, parsing, and canonical rendering.
//!
//! ```text
//! tree   := DEC | DEC '[' edge (',' edge)* ']'
//! edge   := TYPE ':' tree
//! forest := '1' | tree (' ' tree)*
//! ```
//!
//! `DEC` and `TYPE` are `[A-Za-z0-9_]+` names declared in the alphabets.
//! No whitespace is allowed anywhere except the single space separating
//! forest factors; `1` is the empty forest. Rendering always emits the
//! canonical child and factor order, so parse-render round-trips are exact.

use crate::error::{Error, Result};
use crate::linalg::{Lambda, LinComb, Rat};
use crate::operad::LabeledTree;
use crate::trees::{Alphabets, Forest, RawTree, Tree, TypeAlphabet, TypeId};
use num::bigint::BigInt;
use num::One;
use std::str::FromStr;

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(src: &'a str) -> Self {
        Cursor { src, pos: 0 }
    }

    fn line_col(&self) -> (usize, usize) {
        let before = &self.src[..self.pos];
        let line = before.bytes().filter(|&b| b == b'\n').count() + 1;
        let col = before
            .rfind('\n')
            .map(|i| self.pos - i)
            .unwrap_or(self.pos + 1);
        (line, col)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let (line, col) = self.line_col();
        Error::parse(line, col, msg)
    }

    fn peek(&self) -> Option<u8> {
        self.src.as_bytes().get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek();
        if b.is_some() {
            self.pos += 1;
        }
        b
    }

    fn expect(&mut self, b: u8) -> Result<()> {
        match self.peek() {
            Some(x) if x == b => {
                self.pos += 1;
                Ok(())
            }
            Some(x) => Err(self.err(format!(
                "expected `{}`, found `{}`",
                b as char, x as char
            ))),
            None => Err(self.err(format!("expected `{}`, found end of input", b as char))),
        }
    }

    fn ident(&mut self) -> Result<&'a str> {
        let start = self.pos;
        while let Some(b) = self.peek() {
            if b.is_ascii_alphanumeric() || b == b'_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        if self.pos == start {
            Err(self.err(match self.peek() {
                Some(b) => format!("expected a name, found `{}`", b as char),
                None => "expected a name, found end of input".to_string(),
            }))
        } else {
            Ok(&self.src[start..self.pos])
        }
    }

    fn at_end(&self) -> bool {
        self.pos == self.src.len()
    }

    fn expect_end(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.err(format!(
                "unexpected `{}` after the literal",
                self.peek().unwrap() as char
            )))
        }
    }
}

fn p_tree(c: &mut Cursor, a: &Alphabets) -> Result<RawTree> {
    let name = c.ident()?;
    let dec = a.decorations.id(name)?;
    let mut children = Vec::new();
    if c.peek() == Some(b'[') {
        c.bump();
        loop {
            let tname = c.ident()?;
            let ty = a.types.id(tname)?;
            c.expect(b':')?;
            let sub = p_tree(c, a)?;
            children.push((ty, sub));
            match c.peek() {
                Some(b',') => {
                    c.bump();
                }
                Some(b']') => {
                    c.bump();
                    break;
                }
                Some(x) => {
                    return Err(c.err(format!(
                        "expected `,` or `]`, found `{}`",
                        x as char
                    )))
                }
                None => return Err(c.err("expected `,` or `]`, found end of input")),
            }
        }
    }
    Ok(RawTree { dec, children })
}

/// Parse a single tree literal; the whole input must be consumed.
pub fn parse_tree(src: &str, a: &Alphabets) -> Result<Tree> {
    let mut c = Cursor::new(src);
    let raw = p_tree(&mut c, a)?;
    c.expect_end()?;
    Ok(crate::trees::canonicalize(&raw))
}

/// Parse a forest literal: `1` for the empty forest, otherwise trees
/// separated by single spaces.
pub fn parse_forest(src: &str, a: &Alphabets) -> Result<Forest> {
    let mut c = Cursor::new(src);
    if src == "1" {
        return Ok(Forest::empty());
    }
    let mut trees = vec![crate::trees::canonicalize(&p_tree(&mut c, a)?)];
    while !c.at_end() {
        c.expect(b' ')?;
        trees.push(crate::trees::canonicalize(&p_tree(&mut c, a)?));
    }
    Ok(Forest::new(trees))
}

pub fn render_tree(t: &Tree, a: &Alphabets) -> Result<String> {
    let mut s = a.decorations.name(t.dec())?.to_string();
    if !t.children().is_empty() {
        s.push('[');
        for (i, (ty, c)) in t.children().iter().enumerate() {
            if i > 0 {
                s.push(',');
            }
            s.push_str(a.types.name(*ty)?);
            s.push(':');
            s.push_str(&render_tree(c, a)?);
        }
        s.push(']');
    }
    Ok(s)
}

pub fn render_forest(f: &Forest, a: &Alphabets) -> Result<String> {
    if f.is_empty() {
        return Ok("1".to_string());
    }
    let parts: Result<Vec<String>> = f.trees().iter().map(|t| render_tree(t, a)).collect();
    Ok(parts?.join(" "))
}

/// `p` when the denominator is one, else `p/q`; the sign sits on `p`.
pub fn render_rat(r: &Rat) -> String {
    if r.denom() == &BigInt::one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(src: &str) -> Result<Rat> {
    let parse_int = |s: &str| -> Result<BigInt> {
        BigInt::from_str(s)
            .map_err(|_| Error::parse(1, 1, format!("invalid integer `{s}`")))
    };
    match src.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(src)?)),
        Some((p, q)) => {
            let num = parse_int(p)?;
            let den = parse_int(q)?;
            if den == BigInt::from(0) {
                return Err(Error::parse(1, 1, "zero denominator"));
            }
            Ok(Rat::new(num, den))
        }
    }
}

/// Parse a weight vector written `type=rational,type=rational`; types left
/// out weigh zero. The empty string is the zero vector.
pub fn parse_lambda(src: &str, types: &TypeAlphabet) -> Result<Lambda> {
    if src.is_empty() {
        return Ok(Lambda::zero());
    }
    let mut pairs = Vec::new();
    for item in src.split(',') {
        let (name, val) = item.split_once('=').ok_or_else(|| {
            Error::parse(1, 1, format!("expected `type=value`, found `{item}`"))
        })?;
        let t = types.id(name)?;
        if pairs.iter().any(|(x, _)| *x == t) {
            return Err(Error::parse(1, 1, format!("type `{name}` given twice")));
        }
        pairs.push((t, parse_rat(val)?));
    }
    Ok(Lambda::from_pairs(pairs))
}

pub fn render_lambda(l: &Lambda, types: &TypeAlphabet) -> Result<String> {
    let parts: Result<Vec<String>> = l
        .support()
        .map(|(t, c)| Ok(format!("{}={}", types.name(t)?, render_rat(c))))
        .collect();
    Ok(parts?.join(","))
}

/// Render `coeff * key` terms joined by ` + `, keys in canonical order.
/// The zero combination renders as `0`.
pub fn render_lincomb<B: Ord + Clone>(
    c: &LinComb<B>,
    mut key: impl FnMut(&B) -> Result<String>,
) -> Result<String> {
    if c.is_zero() {
        return Ok("0".to_string());
    }
    let parts: Result<Vec<String>> = c
        .iter()
        .map(|(b, x)| Ok(format!("{} * {}", render_rat(x), key(b)?)))
        .collect();
    Ok(parts?.join(" + "))
}

/// Parse a labeled tree literal: the trees grammar with positive integer
/// labels as decorations. Labels must be distinct.
pub fn parse_labeled_tree(src: &str, types: &TypeAlphabet) -> Result<LabeledTree> {
    struct RawL {
        label: u32,
        children: Vec<(TypeId, RawL)>,
    }
    fn p(c: &mut Cursor, types: &TypeAlphabet) -> Result<RawL> {
        let name = c.ident()?;
        let label: u32 = name
            .parse()
            .map_err(|_| c.err(format!("expected an integer label, found `{name}`")))?;
        let mut children = Vec::new();
        if c.peek() == Some(b'[') {
            c.bump();
            loop {
                let tname = c.ident()?;
                let ty = types.id(tname)?;
                c.expect(b':')?;
                children.push((ty, p(c, types)?));
                match c.peek() {
                    Some(b',') => {
                        c.bump();
                    }
                    Some(b']') => {
                        c.bump();
                        break;
                    }
                    Some(x) => {
                        return Err(c.err(format!(
                            "expected `,` or `]`, found `{}`",
                            x as char
                        )))
                    }
                    None => return Err(c.err("expected `,` or `]`, found end of input")),
                }
            }
        }
        Ok(RawL { label, children })
    }
    let mut c = Cursor::new(src);
    let raw = p(&mut c, types)?;
    c.expect_end()?;
    let mut parents = Vec::new();
    fn walk(r: &RawL, out: &mut Vec<(u32, u32, TypeId)>) {
        for (ty, ch) in &r.children {
            out.push((ch.label, r.label, *ty));
            walk(ch, out);
        }
    }
    walk(&raw, &mut parents);
    LabeledTree::new(raw.label, parents)
}

pub fn render_labeled_tree(t: &LabeledTree, types: &TypeAlphabet) -> Result<String> {
    fn rec(t: &LabeledTree, v: u32, types: &TypeAlphabet) -> Result<String> {
        let mut s = v.to_string();
        let kids = t.children(v);
        if !kids.is_empty() {
            s.push('[');
            for (i, (c, ty)) in kids.iter().enumerate() {
                if i > 0 {
                    s.push(',');
                }
                s.push_str(types.name(*ty)?);
                s.push(':');
                s.push_str(&rec(t, *c, types)?);
            }
            s.push(']');
        }
        Ok(s)
    }
    rec(t, t.root(), types)
}
