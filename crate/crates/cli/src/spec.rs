//! Group specifications.
//!
//! ```text
//! spec   := term ("x" term)*
//! term   := ("S" | "A" | "C" | "D") int
//!         | "perm:" int ":" cycles (";" cycles)*
//! cycles := ("(" int ("," int)* ")")+
//! ```
//!
//! Points are 0-indexed and whitespace is ignored everywhere. A product
//! `a x b x c` is the left-nested direct product; since factors act on
//! consecutive blocks of points, the nesting does not change the resulting
//! permutation group.

use std::fmt;
use std::sync::Arc;

use qell::group::{builtin, make_group, DirectProduct, Family, FiniteGroup, Permutation};

use crate::error::CliError;

/// Largest degree accepted for a single factor; bounds the memory of the
/// enumerated element list.
pub const MAX_DEGREE: usize = 1024;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    /// 0-based character offset into the source.
    pub pos: usize,
    pub message: String,
    pub source: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "invalid group spec at column {}: {}", self.pos + 1, self.message)?;
        writeln!(f, "  {}", self.source)?;
        write!(f, "  {}^", " ".repeat(self.pos))
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Term {
    Family { family: Family, pos: usize },
    Perm { degree: usize, generators: Vec<Vec<Vec<u32>>>, pos: usize },
}

impl Term {
    fn degree(&self) -> usize {
        match self {
            Term::Family { family, .. } => match *family {
                Family::Dihedral(1) => 2,
                Family::Dihedral(2) => 4,
                Family::Cyclic(n) | Family::Symmetric(n) | Family::Alternating(n) | Family::Dihedral(n) => n,
            },
            Term::Perm { degree, .. } => *degree,
        }
    }

    fn build(&self, cap: usize) -> Result<FiniteGroup, CliError> {
        if self.degree() > MAX_DEGREE {
            return Err(CliError::Cap(format!(
                "degree {} exceeds the supported maximum {MAX_DEGREE}",
                self.degree()
            )));
        }
        match self {
            Term::Family { family, .. } => Ok(builtin(family, cap)?),
            Term::Perm { degree, generators, .. } => {
                let perms = generators
                    .iter()
                    .map(|cycles| Permutation::from_cycles(*degree, cycles))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(make_group(*degree, &perms, cap)?)
            }
        }
    }
}

/// A parsed group specification. Two specs are equal when their
/// whitespace-free texts are.
#[derive(Clone, Debug)]
pub struct GroupSpec {
    text: String,
    terms: Vec<Term>,
}

impl GroupSpec {
    pub fn parse(source: &str) -> Result<Self, ParseError> {
        let mut p = Parser {
            chars: source.chars().enumerate().filter(|(_, c)| !c.is_whitespace()).collect(),
            at: 0,
            source,
        };
        let mut terms = vec![p.term()?];
        while !p.done() {
            p.expect('x', "expected `x` or end of input")?;
            terms.push(p.term()?);
        }
        Ok(Self {
            text: source.chars().filter(|c| !c.is_whitespace()).collect(),
            terms,
        })
    }

    /// The source with whitespace removed.
    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// The spec of `self × other`.
    pub fn times(&self, other: &Self) -> Self {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        Self {
            text: format!("{}x{}", self.text, other.text),
            terms,
        }
    }

    pub fn build(&self, cap: usize) -> Result<Arc<FiniteGroup>, CliError> {
        let mut acc = Arc::new(self.terms[0].build(cap)?);
        for t in &self.terms[1..] {
            let next = Arc::new(t.build(cap)?);
            acc = DirectProduct::new(acc, next, cap)?.group;
        }
        Ok(Arc::new(Arc::unwrap_or_clone(acc).with_name(self.text.clone())))
    }
}

impl PartialEq for GroupSpec {
    fn eq(&self, other: &Self) -> bool {
        self.text == other.text
    }
}

impl Eq for GroupSpec {}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

impl std::str::FromStr for GroupSpec {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

struct Parser<'a> {
    /// Non-whitespace characters with their offsets in the source.
    chars: Vec<(usize, char)>,
    at: usize,
    source: &'a str,
}

impl Parser<'_> {
    fn done(&self) -> bool {
        self.at >= self.chars.len()
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.at).map(|&(_, c)| c)
    }

    /// Offset of the current character, or the end of the source.
    fn pos(&self) -> usize {
        self.chars
            .get(self.at)
            .map_or_else(|| self.source.chars().count(), |&(i, _)| i)
    }

    fn error<T>(&self, pos: usize, message: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError {
            pos,
            message: message.into(),
            source: self.source.to_string(),
        })
    }

    fn expect(&mut self, c: char, message: &str) -> Result<(), ParseError> {
        if self.peek() == Some(c) {
            self.at += 1;
            Ok(())
        } else {
            self.error(self.pos(), message)
        }
    }

    fn int(&mut self) -> Result<(usize, usize), ParseError> {
        let start = self.pos();
        let mut value: usize = 0;
        let mut digits = 0;
        while let Some(d) = self.peek().and_then(|c| c.to_digit(10)) {
            value = match value.checked_mul(10).and_then(|v| v.checked_add(d as usize)) {
                Some(v) => v,
                None => return self.error(start, "integer is too large"),
            };
            digits += 1;
            self.at += 1;
        }
        if digits == 0 {
            return self.error(start, "expected an integer");
        }
        Ok((value, start))
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let pos = self.pos();
        let family = match self.peek() {
            Some('S') => Family::Symmetric,
            Some('A') => Family::Alternating,
            Some('C') => Family::Cyclic,
            Some('D') => Family::Dihedral,
            Some('p') => return self.perm(),
            _ => return self.error(pos, "expected a group family (S, A, C, D) or `perm:`"),
        };
        self.at += 1;
        let (n, npos) = self.int()?;
        if n == 0 {
            return self.error(npos, "the family parameter must be at least 1");
        }
        Ok(Term::Family { family: family(n), pos })
    }

    fn perm(&mut self) -> Result<Term, ParseError> {
        let pos = self.pos();
        for c in "perm:".chars() {
            self.expect(c, "expected `perm:`")?;
        }
        let (degree, dpos) = self.int()?;
        if degree == 0 {
            return self.error(dpos, "the degree must be at least 1");
        }
        if degree > MAX_DEGREE {
            return self.error(dpos, format!("the degree may be at most {MAX_DEGREE}"));
        }
        self.expect(':', "expected `:` after the degree")?;
        let mut generators = vec![self.generator(degree)?];
        while self.peek() == Some(';') {
            self.at += 1;
            generators.push(self.generator(degree)?);
        }
        Ok(Term::Perm { degree, generators, pos })
    }

    fn generator(&mut self, degree: usize) -> Result<Vec<Vec<u32>>, ParseError> {
        let mut used = vec![false; degree];
        let mut cycles = Vec::new();
        if self.peek() != Some('(') {
            return self.error(self.pos(), "expected `(` to start a cycle");
        }
        while self.peek() == Some('(') {
            self.at += 1;
            let mut cycle = Vec::new();
            loop {
                let (x, xpos) = self.int()?;
                if x >= degree {
                    return self.error(xpos, format!("point {x} is outside 0..{degree}"));
                }
                if std::mem::replace(&mut used[x], true) {
                    return self.error(xpos, format!("point {x} appears twice in one generator"));
                }
                cycle.push(x as u32);
                match self.peek() {
                    Some(',') => self.at += 1,
                    Some(')') => {
                        self.at += 1;
                        break;
                    }
                    _ => return self.error(self.pos(), "expected `,` or `)`"),
                }
            }
            cycles.push(cycle);
        }
        Ok(cycles)
    }
}
