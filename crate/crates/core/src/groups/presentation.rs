use std::fmt;

use super::GroupError;

/// A generator or its inverse: generator index plus an inversion flag.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    /// Column of this letter in a coset table: `2g` for `g`, `2g+1` for `g^-1`.
    pub fn column(self) -> usize {
        2 * self.generator + usize::from(self.inverse)
    }
}

/// A word in the generators, read left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|l| l.inv()).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v).reduced()
    }

    pub fn pow(&self, e: i64) -> Self {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut v = Vec::with_capacity(base.len() * e.unsigned_abs() as usize);
        for _ in 0..e.unsigned_abs() {
            v.extend_from_slice(&base.0);
        }
        Word(v).reduced()
    }

    /// Free reduction: cancels every adjacent `x x^-1` pair.
    pub fn reduced(self) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.0.len());
        for l in self.0 {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }
}

/// Finite presentation `< generators | relators >`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    /// Builds a presentation, freely reducing the relators and dropping the
    /// ones that reduce to the empty word.
    pub fn new(generators: Vec<String>, relators: Vec<Word>) -> Result<Self, GroupError> {
        for w in &relators {
            if let Some(l) = w.0.iter().find(|l| l.generator >= generators.len()) {
                return Err(GroupError::UnknownGenerator(format!("#{}", l.generator)));
            }
        }
        let relators = relators
            .into_iter()
            .map(Word::reduced)
            .filter(|w| !w.is_empty())
            .collect();
        Ok(Presentation {
            generators,
            relators,
        })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g == name)
    }

    /// Parses a word over this presentation's generators.
    pub fn parse_word(&self, text: &str) -> Result<Word, GroupError> {
        let mut p = WordParser::new(text, &self.generators);
        let w = p.word()?;
        p.finish()?;
        Ok(w.reduced())
    }

    /// Renders a word as `y*z^-1*y`; the empty word is `1`.
    pub fn render_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let mut parts: Vec<String> = Vec::new();
        let mut i = 0;
        while i < w.0.len() {
            let l = w.0[i];
            let mut run = 1;
            while i + run < w.0.len() && w.0[i + run] == l {
                run += 1;
            }
            let name = &self.generators[l.generator];
            parts.push(match (run, l.inverse) {
                (1, false) => name.clone(),
                (k, false) => format!("{name}^{k}"),
                (k, true) => format!("{name}^-{k}"),
            });
            i += run;
        }
        parts.join("*")
    }

    /// The group of the genus-10 chiral triangulation:
    /// `<y, z | y^3, z^8, (yz)^2, z^2 y^-1 z^3 y^-1 z y^-1 z^-3 y z^-3 y^-1>`.
    pub fn gamma10() -> Self {
        GAMMA10.parse().expect("built-in presentation parses")
    }
}

/// Text of the built-in presentation named `gamma10`.
pub const GAMMA10: &str = "<y, z | y^3, z^8, (y*z)^2, z^2*y^-1*z^3*y^-1*z*y^-1*z^-3*y*z^-3*y^-1>";

/// Looks up a built-in presentation by name.
pub fn named_presentation(name: &str) -> Option<Presentation> {
    match name {
        "gamma10" => Some(Presentation::gamma10()),
        "tetrahedron" => Some("<y, z | y^3, z^3, (y*z)^2>".parse().expect("parses")),
        _ => None,
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rels: Vec<String> = self.relators.iter().map(|w| self.render_word(w)).collect();
        write!(f, "<{} | {}>", self.generators.join(", "), rels.join(", "))
    }
}

impl std::str::FromStr for Presentation {
    type Err = GroupError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_presentation(s)
    }
}

/// Parses a presentation.
///
/// Two layouts are accepted. The bracket form `< y, z | rel, rel, ... >`,
/// and a line form whose first non-empty line lists the generators and whose
/// remaining lines hold one or more comma-separated relations each. `#`
/// starts a comment in the line form.
///
/// Words use `*` (or juxtaposition), `^` with a signed integer exponent
/// (braces allowed: `y^{-1}`), parentheses and `1` for the empty word. A
/// relation `u = v` becomes the relator `u v^-1`; chains `1 = u = v = ...`
/// give one relator per consecutive pair.
pub fn parse_presentation(text: &str) -> Result<Presentation, GroupError> {
    let trimmed = text.trim();
    if let Some(inner) = trimmed.strip_prefix('<') {
        let offset = text.len() - text.trim_start().len() + 1;
        let inner = inner.strip_suffix('>').ok_or(GroupError::Parse {
            position: text.trim_end().len(),
            message: "expected closing '>'".into(),
        })?;
        let (gens, rels) = match inner.find('|') {
            Some(bar) => (&inner[..bar], &inner[bar + 1..]),
            None => (inner, ""),
        };
        let generators = parse_generators(gens, offset)?;
        let rel_offset = offset + gens.len() + 1;
        let relators = parse_relations(rels, &generators, rel_offset)?;
        return Presentation::new(generators, relators);
    }

    let mut generators: Option<Vec<String>> = None;
    let mut relators = Vec::new();
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let content = line.split('#').next().unwrap_or("");
        if !content.trim().is_empty() {
            match &generators {
                None => generators = Some(parse_generators(content, offset)?),
                Some(g) => relators.extend(parse_relations(content, g, offset)?),
            }
        }
        offset += line.len();
    }
    let generators = generators.ok_or(GroupError::Parse {
        position: 0,
        message: "no generators".into(),
    })?;
    Presentation::new(generators, relators)
}

fn parse_generators(text: &str, offset: usize) -> Result<Vec<String>, GroupError> {
    let mut out: Vec<String> = Vec::new();
    let mut pos = offset;
    for part in text.split(',') {
        for name in part.split_whitespace() {
            let at = pos + part.find(name).unwrap_or(0);
            let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
                && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(GroupError::Parse {
                    position: at,
                    message: format!("invalid generator name {name:?}"),
                });
            }
            if out.iter().any(|g| g == name) {
                return Err(GroupError::Parse {
                    position: at,
                    message: format!("duplicate generator {name:?}"),
                });
            }
            out.push(name.to_string());
        }
        pos += part.len() + 1;
    }
    Ok(out)
}

fn parse_relations(text: &str, gens: &[String], offset: usize) -> Result<Vec<Word>, GroupError> {
    let mut p = WordParser::new(text, gens);
    p.base = offset;
    let mut out = Vec::new();
    loop {
        if p.at_end() {
            return Ok(out);
        }
        let mut chain = vec![p.word()?];
        while p.eat(b'=') {
            chain.push(p.word()?);
        }
        if chain.len() == 1 {
            out.push(chain.pop().unwrap());
        } else {
            for pair in chain.windows(2) {
                out.push(pair[0].concat(&pair[1].inverse()));
            }
        }
        if !p.eat(b',') && !p.at_end() {
            return Err(p.error("expected ',' between relators"));
        }
    }
}

struct WordParser<'a> {
    src: &'a [u8],
    pos: usize,
    base: usize,
    gens: &'a [String],
}

impl<'a> WordParser<'a> {
    fn new(text: &'a str, gens: &'a [String]) -> Self {
        WordParser {
            src: text.as_bytes(),
            pos: 0,
            base: 0,
            gens,
        }
    }

    fn error(&self, message: &str) -> GroupError {
        GroupError::Parse {
            position: self.base + self.pos,
            message: message.to_string(),
        }
    }

    fn peek(&mut self) -> Option<u8> {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn at_end(&mut self) -> bool {
        self.peek().is_none()
    }

    fn finish(&mut self) -> Result<(), GroupError> {
        if self.at_end() {
            Ok(())
        } else {
            Err(self.error("unexpected trailing input"))
        }
    }

    fn word(&mut self) -> Result<Word, GroupError> {
        let mut letters = Vec::new();
        let mut any = false;
        loop {
            match self.peek() {
                Some(b'*') if any => {
                    self.pos += 1;
                }
                Some(c) if c.is_ascii_alphanumeric() || c == b'(' => {}
                _ => break,
            }
            let f = self.factor()?;
            letters.extend(f.0);
            any = true;
        }
        if !any {
            return Err(self.error("expected a word"));
        }
        Ok(Word(letters).reduced())
    }

    fn factor(&mut self) -> Result<Word, GroupError> {
        let base = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let w = self.word()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                w
            }
            Some(b'1') => {
                let start = self.pos;
                self.pos += 1;
                if self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    self.pos = start;
                    return Err(self.error("only the literal 1 may appear as a word"));
                }
                Word::empty()
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                // longest match may swallow juxtaposed generators ("yz"); split greedily
                self.split_name(name, start)?
            }
            _ => return Err(self.error("expected a generator, '1' or '('")),
        };
        if self.eat(b'^') {
            let e = self.exponent()?;
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn split_name(&self, name: &str, start: usize) -> Result<Word, GroupError> {
        if let Some(g) = self.gens.iter().position(|g| g == name) {
            return Ok(Word(vec![Letter::new(g, false)]));
        }
        let mut letters = Vec::new();
        let mut rest = name;
        while !rest.is_empty() {
            let hit = self
                .gens
                .iter()
                .enumerate()
                .filter(|(_, g)| rest.starts_with(g.as_str()))
                .max_by_key(|(_, g)| g.len());
            match hit {
                Some((g, gname)) => {
                    letters.push(Letter::new(g, false));
                    rest = &rest[gname.len()..];
                }
                None => {
                    return Err(GroupError::UnknownGenerator(format!(
                        "{name} (at position {})",
                        self.base + start
                    )))
                }
            }
        }
        Ok(Word(letters))
    }

    fn exponent(&mut self) -> Result<i64, GroupError> {
        let close = match self.peek() {
            Some(b'{') => Some(b'}'),
            Some(b'(') => Some(b')'),
            _ => None,
        };
        if close.is_some() {
            self.pos += 1;
        }
        let negative = match self.peek() {
            Some(b'-') => {
                self.pos += 1;
                true
            }
            Some(b'+') => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        self.peek();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected an integer exponent"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        let e: i64 = digits
            .parse()
            .map_err(|_| self.error("exponent out of range"))?;
        if let Some(c) = close {
            if !self.eat(c) {
                return Err(self.error("unclosed exponent"));
            }
        }
        Ok(if negative { -e } else { e })
    }
}
