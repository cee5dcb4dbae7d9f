//! Text formats for link diagrams.
//!
//! * `PD[X[1,4,2,5],X[3,6,4,1],X[5,2,6,3]]`, optionally followed by
//!   `loops=k` for crossingless unknotted components;
//! * `braid:<strands>:[i, -j, ...]`, the closure of a braid word.

use crate::link::LinkDiagram;
use crate::{Error, Result};

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor { text, pos: 0 }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.text[self.pos..].starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, token: &str) -> Result<()> {
        if self.eat(token) {
            Ok(())
        } else {
            self.err(format!("expected `{token}`"))
        }
    }

    fn integer(&mut self) -> Result<i64> {
        self.skip_ws();
        let rest = &self.text[self.pos..];
        let len = rest
            .char_indices()
            .take_while(|&(i, c)| c.is_ascii_digit() || (i == 0 && (c == '-' || c == '+')))
            .count();
        match rest[..len].parse::<i64>() {
            Ok(v) => {
                self.pos += len;
                Ok(v)
            }
            Err(_) => self.err("expected an integer"),
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }
}

/// Parse a PD code with an optional trailing `loops=k`.
pub fn parse_pd(text: &str) -> Result<LinkDiagram> {
    let mut c = Cursor::new(text);
    c.expect("PD")?;
    c.expect("[")?;
    let mut quads = Vec::new();
    if !c.eat("]") {
        loop {
            c.expect("X")?;
            c.expect("[")?;
            let mut q = [0u32; 4];
            for (k, slot) in q.iter_mut().enumerate() {
                if k > 0 {
                    c.expect(",")?;
                }
                let v = c.integer()?;
                *slot = u32::try_from(v).or_else(|_| c.err("edge ids must be non-negative"))?;
            }
            c.expect("]")?;
            quads.push(q);
            if c.eat("]") {
                break;
            }
            c.expect(",")?;
        }
    }
    let mut loops = 0;
    while c.eat(",") || c.eat(";") {}
    if c.eat("loops") {
        c.expect("=")?;
        let v = c.integer()?;
        loops = usize::try_from(v).or_else(|_| c.err("loop count must be non-negative"))?;
    }
    if !c.at_end() {
        return c.err("unexpected trailing input");
    }
    LinkDiagram::from_pd(&quads, loops)
}

/// Parse `braid:<strands>:[...]`.
pub fn parse_braid(text: &str) -> Result<LinkDiagram> {
    let mut c = Cursor::new(text);
    c.expect("braid")?;
    c.expect(":")?;
    let strands = c.integer()?;
    let strands = usize::try_from(strands).ok().filter(|&s| s >= 1);
    let Some(strands) = strands else {
        return c.err("need at least one strand");
    };
    c.expect(":")?;
    c.expect("[")?;
    let mut word = Vec::new();
    if !c.eat("]") {
        loop {
            word.push(c.integer()?);
            if c.eat("]") {
                break;
            }
            c.expect(",")?;
        }
    }
    if !c.at_end() {
        return c.err("unexpected trailing input");
    }
    LinkDiagram::from_braid(strands, &word)
}

/// PD code or braid word, chosen by prefix.
pub fn parse_link(text: &str) -> Result<LinkDiagram> {
    let t = text.trim_start();
    if t.starts_with("braid") {
        parse_braid(text)
    } else {
        parse_pd(text)
    }
}

/// The diagram as PD text, `loops=k` appended when present.
pub fn to_pd(d: &LinkDiagram) -> String {
    let xs: Vec<String> = d
        .crossings
        .iter()
        .map(|c| format!("X[{},{},{},{}]", c.pd[0], c.pd[1], c.pd[2], c.pd[3]))
        .collect();
    let mut s = format!("PD[{}]", xs.join(","));
    if d.loops > 0 {
        s.push_str(&format!(" loops={}", d.loops));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pd_trefoil() {
        let d = parse_pd("PD[X[1,4,2,5], X[3,6,4,1], X[5,2,6,3]]").unwrap();
        assert_eq!(d.crossings.len(), 3);
        assert_eq!(d.component_count(), 1);
        assert_eq!(parse_pd(&to_pd(&d)).unwrap(), d);
    }

    #[test]
    fn pd_empty_with_loops() {
        let d = parse_pd("PD[] loops=1").unwrap();
        assert_eq!(d.crossings.len(), 0);
        assert_eq!(d.component_count(), 1);
    }

    #[test]
    fn malformed() {
        assert!(matches!(
            parse_pd("PD[X[1,2,3]]"),
            Err(Error::Parse { pos: 10, .. })
        ));
        assert!(matches!(
            parse_pd("PD[X[1,4,2,5]"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_braid("braid:2:[1,,1]"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_braid("braid:2:[3]"),
            Err(Error::GeneratorOutOfRange(3, 2))
        ));
    }
}
