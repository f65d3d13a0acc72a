//! Text syntax for trees.
//!
//! ```text
//! tree   := edge | node
//! edge   := "e:" colour
//! node   := "v" INT ":" colour "(" [child ("," child)*] ")"
//! child  := node | "l" INT ":" colour
//! colour := [a-z0-9_]+
//! ```
//! Whitespace between tokens is ignored.

use std::collections::BTreeSet;

use super::{Child, ColouredTree, Leaf, Vertex};
use crate::colour::{is_colour_char, Colour};
use crate::error::{Error, Result};

pub fn parse_tree(text: &str) -> Result<ColouredTree> {
    let mut p = Parser { src: text, pos: 0 };
    let tree = p.tree()?;
    p.skip_ws();
    if p.pos != text.len() {
        return Err(p.error("trailing input after tree"));
    }
    tree.check_numbering()?;
    Ok(tree)
}

/// Parses and additionally rejects colours outside `colours`.
pub fn parse_tree_with_colours(text: &str, colours: &BTreeSet<Colour>) -> Result<ColouredTree> {
    let tree = parse_tree(text)?;
    if let Some(bad) = tree.colours().into_iter().find(|c| !colours.contains(c)) {
        return Err(Error::InvalidTree(format!("unknown colour {bad}")));
    }
    Ok(tree)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> Error {
        Error::Syntax {
            pos: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, ch: char) -> Result<()> {
        self.skip_ws();
        if self.peek() == Some(ch) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected '{ch}'")))
        }
    }

    fn tree(&mut self) -> Result<ColouredTree> {
        self.skip_ws();
        match self.peek() {
            Some('e') => {
                self.pos += 1;
                self.expect(':')?;
                Ok(ColouredTree::Edge(self.colour()?))
            }
            Some('v') => Ok(ColouredTree::Vertex(self.node()?)),
            _ => Err(self.error("expected 'e:' or 'v'")),
        }
    }

    fn node(&mut self) -> Result<Vertex> {
        self.expect('v')?;
        let number = self.int()?;
        self.expect(':')?;
        let colour = self.colour()?;
        self.expect('(')?;
        let mut children = Vec::new();
        self.skip_ws();
        if self.peek() == Some(')') {
            self.pos += 1;
            return Ok(Vertex { number, colour, children });
        }
        loop {
            children.push(self.child()?);
            self.skip_ws();
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(')') => {
                    self.pos += 1;
                    break;
                }
                _ => return Err(self.error("expected ',' or ')'")),
            }
        }
        Ok(Vertex { number, colour, children })
    }

    fn child(&mut self) -> Result<Child> {
        self.skip_ws();
        match self.peek() {
            Some('v') => Ok(Child::Vertex(self.node()?)),
            Some('l') => {
                self.pos += 1;
                let number = self.int()?;
                self.expect(':')?;
                let colour = self.colour()?;
                Ok(Child::Leaf(Leaf { number, colour }))
            }
            _ => Err(self.error("expected a vertex 'v' or a leaf 'l'")),
        }
    }

    fn int(&mut self) -> Result<u64> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        self.src[start..self.pos]
            .parse()
            .map_err(|_| Error::Syntax {
                pos: start,
                message: "number does not fit in 64 bits".into(),
            })
    }

    fn colour(&mut self) -> Result<Colour> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if is_colour_char(c)) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a colour [a-z0-9_]+"));
        }
        Colour::new(&self.src[start..self.pos])
    }
}
