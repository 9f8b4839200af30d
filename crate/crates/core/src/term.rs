//! Words and omega-terms: the AST, the concrete grammar, and word
//! statistics (occurrence counts, content, initial and final parts).
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! pseudoidentity := term '=' term
//! term   := factor+
//! factor := atom [ '^' exp ]
//! atom   := letter | 'e' | '(' term ')'
//! exp    := INT | 'w' | '(' 'w' ('+'|'-') INT ')' | '(' INT '+' 'w' ')'
//!         | '[' INT (',' INT)* '\'' ']'
//! letter := [a-z] [0-9]*        (bare 'e' and 'w' are reserved)
//! ```
//!
//! `x^w` is the omega power, `x^(w+1)` the omega-plus-one power, and
//! `x^[2']` the `[2']`-exponent (the generator of the 2-primary component of
//! the cyclic group generated by `x^(w+1)`). The reserved symbol `e` stands
//! for an idempotent of the minimal ideal; it may appear at most once per
//! side and denotes the same value on both sides.

use crate::error::TermError;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub base: char,
    pub sub: Option<u32>,
}

impl Letter {
    pub fn new(base: char) -> Letter {
        Letter { base, sub: None }
    }

    pub fn with_sub(base: char, sub: u32) -> Letter {
        Letter {
            base,
            sub: Some(sub),
        }
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.base)?;
        if let Some(s) = self.sub {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// A nonempty sequence of letters.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Exponent {
    /// A literal exponent; `0` is allowed only for factors inside a longer
    /// product, where the factor is skipped.
    Int(u32),
    /// `w + k` (`k` may be negative; reduction is modulo the group period).
    OmegaPlus(i32),
    /// The exponent `[P']`: evaluation yields the generator of the
    /// P-primary component of the cyclic group generated by the base's
    /// omega-plus-one power.
    PiOmega(BTreeSet<u32>),
}

pub const OMEGA: Exponent = Exponent::OmegaPlus(0);

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OmegaTerm {
    Letter(Letter),
    KernelIdempotent,
    Concat(Vec<OmegaTerm>),
    Power(Box<OmegaTerm>, Exponent),
}

impl OmegaTerm {
    /// Flattens nested concatenations and unwraps singletons.
    pub fn concat(children: Vec<OmegaTerm>) -> OmegaTerm {
        let mut flat = Vec::with_capacity(children.len());
        for c in children {
            match c {
                OmegaTerm::Concat(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        if flat.len() == 1 {
            flat.pop().unwrap()
        } else {
            OmegaTerm::Concat(flat)
        }
    }

    pub fn letters(&self) -> BTreeSet<Letter> {
        let mut set = BTreeSet::new();
        self.collect_letters(&mut set);
        set
    }

    fn collect_letters(&self, set: &mut BTreeSet<Letter>) {
        match self {
            OmegaTerm::Letter(l) => {
                set.insert(*l);
            }
            OmegaTerm::KernelIdempotent => {}
            OmegaTerm::Concat(cs) => cs.iter().for_each(|c| c.collect_letters(set)),
            OmegaTerm::Power(b, _) => b.collect_letters(set),
        }
    }

    pub fn kernel_occurrences(&self) -> usize {
        match self {
            OmegaTerm::Letter(_) => 0,
            OmegaTerm::KernelIdempotent => 1,
            OmegaTerm::Concat(cs) => cs.iter().map(|c| c.kernel_occurrences()).sum(),
            OmegaTerm::Power(b, _) => b.kernel_occurrences(),
        }
    }

    /// True when the term denotes the empty product once zero-power factors
    /// are dropped.
    pub fn is_effectively_empty(&self) -> bool {
        match self {
            OmegaTerm::Letter(_) | OmegaTerm::KernelIdempotent => false,
            OmegaTerm::Concat(cs) => cs.iter().all(|c| c.is_effectively_empty()),
            OmegaTerm::Power(b, e) => *e == Exponent::Int(0) || b.is_effectively_empty(),
        }
    }

    /// True when the term uses only letters, concatenation, and literal
    /// exponents.
    pub fn is_plain(&self) -> bool {
        match self {
            OmegaTerm::Letter(_) => true,
            OmegaTerm::KernelIdempotent => false,
            OmegaTerm::Concat(cs) => cs.iter().all(|c| c.is_plain()),
            OmegaTerm::Power(b, e) => matches!(e, Exponent::Int(_)) && b.is_plain(),
        }
    }

    /// Expands a plain term into its word.
    pub fn as_plain_word(&self) -> Option<Word> {
        let mut letters = Vec::new();
        self.expand_plain(&mut letters)?;
        if letters.is_empty() {
            return None;
        }
        Some(Word(letters))
    }

    fn expand_plain(&self, out: &mut Vec<Letter>) -> Option<()> {
        match self {
            OmegaTerm::Letter(l) => {
                out.push(*l);
                Some(())
            }
            OmegaTerm::KernelIdempotent => None,
            OmegaTerm::Concat(cs) => {
                for c in cs {
                    c.expand_plain(out)?;
                }
                Some(())
            }
            OmegaTerm::Power(b, Exponent::Int(k)) => {
                let mut part = Vec::new();
                b.expand_plain(&mut part)?;
                for _ in 0..*k {
                    out.extend(part.iter().copied());
                }
                Some(())
            }
            OmegaTerm::Power(..) => None,
        }
    }

    pub fn from_word(w: &Word) -> OmegaTerm {
        OmegaTerm::concat(w.0.iter().map(|&l| OmegaTerm::Letter(l)).collect())
    }

    /// Mirror image: reverses every concatenation.
    pub fn reversed(&self) -> OmegaTerm {
        match self {
            OmegaTerm::Letter(_) | OmegaTerm::KernelIdempotent => self.clone(),
            OmegaTerm::Concat(cs) => {
                OmegaTerm::Concat(cs.iter().rev().map(|c| c.reversed()).collect())
            }
            OmegaTerm::Power(b, e) => OmegaTerm::Power(Box::new(b.reversed()), e.clone()),
        }
    }

    fn validate(&self) -> Result<(), TermError> {
        match self {
            OmegaTerm::Letter(_) | OmegaTerm::KernelIdempotent => Ok(()),
            OmegaTerm::Concat(cs) => cs.iter().try_for_each(|c| c.validate()),
            OmegaTerm::Power(b, e) => {
                if *e == Exponent::Int(0) && **b == OmegaTerm::KernelIdempotent {
                    return Err(TermError::ReservedLetterMisuse);
                }
                if *e != Exponent::Int(0) && b.is_effectively_empty() {
                    return Err(TermError::Syntax {
                        pos: 0,
                        msg: "power of an empty product".into(),
                    });
                }
                b.validate()
            }
        }
    }
}

impl fmt::Display for OmegaTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaTerm::Letter(l) => write!(f, "{l}"),
            OmegaTerm::KernelIdempotent => write!(f, "e"),
            OmegaTerm::Concat(cs) => {
                for (i, c) in cs.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{c}")?;
                }
                Ok(())
            }
            OmegaTerm::Power(b, e) => {
                match **b {
                    OmegaTerm::Letter(_) | OmegaTerm::KernelIdempotent => write!(f, "{b}")?,
                    _ => write!(f, "({b})")?,
                }
                match e {
                    Exponent::Int(k) => write!(f, "^{k}"),
                    Exponent::OmegaPlus(0) => write!(f, "^w"),
                    Exponent::OmegaPlus(k) if *k > 0 => write!(f, "^(w+{k})"),
                    Exponent::OmegaPlus(k) => write!(f, "^(w-{})", -k),
                    Exponent::PiOmega(ps) => {
                        write!(f, "^[")?;
                        for (i, p) in ps.iter().enumerate() {
                            if i > 0 {
                                write!(f, ",")?;
                            }
                            write!(f, "{p}")?;
                        }
                        write!(f, "']")
                    }
                }
            }
        }
    }
}

/// A formal equality of two omega-terms over a shared alphabet.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Pseudoidentity {
    pub lhs: OmegaTerm,
    pub rhs: OmegaTerm,
}

impl Pseudoidentity {
    pub fn new(lhs: OmegaTerm, rhs: OmegaTerm) -> Result<Pseudoidentity, TermError> {
        lhs.validate()?;
        rhs.validate()?;
        for side in [&lhs, &rhs] {
            if side.is_effectively_empty() {
                return Err(TermError::Syntax {
                    pos: 0,
                    msg: "a side reduces to the empty product".into(),
                });
            }
            if side.kernel_occurrences() > 1 {
                return Err(TermError::TooManyKernelIdempotents);
            }
        }
        let p = Pseudoidentity { lhs, rhs };
        if p.alphabet().is_empty() {
            return Err(TermError::EmptyAlphabet);
        }
        Ok(p)
    }

    pub fn parse(text: &str) -> Result<Pseudoidentity, TermError> {
        let Some(eq) = text.find('=') else {
            return Err(TermError::Syntax {
                pos: text.len(),
                msg: "expected '=' between the two sides".into(),
            });
        };
        let lhs = parse_term(&text[..eq])?;
        let rhs = parse_term(&text[eq + 1..]).map_err(|e| match e {
            TermError::Syntax { pos, msg } => TermError::Syntax {
                pos: pos + eq + 1,
                msg,
            },
            other => other,
        })?;
        Pseudoidentity::new(lhs, rhs)
    }

    pub fn alphabet(&self) -> BTreeSet<Letter> {
        let mut set = self.lhs.letters();
        set.extend(self.rhs.letters());
        set
    }

    pub fn uses_kernel(&self) -> bool {
        self.lhs.kernel_occurrences() + self.rhs.kernel_occurrences() > 0
    }

    pub fn is_plain(&self) -> bool {
        self.lhs.is_plain() && self.rhs.is_plain()
    }

    pub fn reversed(&self) -> Pseudoidentity {
        Pseudoidentity {
            lhs: self.lhs.reversed(),
            rhs: self.rhs.reversed(),
        }
    }
}

impl fmt::Display for Pseudoidentity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn bump(&mut self) -> Option<u8> {
        let b = self.peek()?;
        self.pos += 1;
        Some(b)
    }

    fn expect(&mut self, want: u8) -> Result<(), TermError> {
        match self.bump() {
            Some(b) if b == want => Ok(()),
            _ => Err(self.err(format!("expected '{}'", want as char))),
        }
    }

    fn err(&self, msg: impl Into<String>) -> TermError {
        TermError::Syntax {
            pos: self.pos.min(self.bytes.len()),
            msg: msg.into(),
        }
    }

    fn int(&mut self) -> Result<u32, TermError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            return Err(self.err("expected an integer"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map_err(|_| self.err("integer out of range"))
    }

    fn term(&mut self) -> Result<OmegaTerm, TermError> {
        let mut factors = Vec::new();
        loop {
            match self.peek() {
                Some(b) if b.is_ascii_lowercase() || b == b'(' => {
                    factors.push(self.factor()?);
                }
                _ => break,
            }
        }
        if factors.is_empty() {
            return Err(self.err("expected a term"));
        }
        Ok(OmegaTerm::concat(factors))
    }

    fn factor(&mut self) -> Result<OmegaTerm, TermError> {
        let atom = self.atom()?;
        if self.peek() == Some(b'^') {
            self.bump();
            let exp = self.exponent()?;
            let factor = OmegaTerm::Power(Box::new(atom), exp);
            if let OmegaTerm::Power(b, Exponent::Int(0)) = &factor {
                if **b == OmegaTerm::KernelIdempotent {
                    return Err(TermError::ReservedLetterMisuse);
                }
            }
            Ok(factor)
        } else {
            Ok(atom)
        }
    }

    fn atom(&mut self) -> Result<OmegaTerm, TermError> {
        match self.peek() {
            Some(b'(') => {
                self.bump();
                let t = self.term()?;
                self.expect(b')')?;
                Ok(t)
            }
            Some(b) if b.is_ascii_lowercase() => {
                self.bump();
                let base = b as char;
                let mut sub = None;
                self.skip_subscript_marker();
                if self.bytes.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
                    sub = Some(self.int()?);
                }
                if base == 'e' && sub.is_none() {
                    return Ok(OmegaTerm::KernelIdempotent);
                }
                if base == 'w' && sub.is_none() {
                    return Err(self.err("'w' is reserved for the omega exponent"));
                }
                Ok(OmegaTerm::Letter(Letter { base, sub }))
            }
            _ => Err(self.err("expected a letter, 'e', or '('")),
        }
    }

    fn skip_subscript_marker(&mut self) {
        if self.bytes.get(self.pos) == Some(&b'_') {
            self.pos += 1;
        }
    }

    fn exponent(&mut self) -> Result<Exponent, TermError> {
        match self.peek() {
            Some(b) if b.is_ascii_digit() => Ok(Exponent::Int(self.int()?)),
            Some(b'w') => {
                self.bump();
                Ok(OMEGA)
            }
            Some(b'(') => {
                self.bump();
                let exp = if self.peek() == Some(b'w') {
                    self.bump();
                    match self.bump() {
                        Some(b'+') => Exponent::OmegaPlus(self.int()? as i32),
                        Some(b'-') => Exponent::OmegaPlus(-(self.int()? as i32)),
                        _ => return Err(self.err("expected '+' or '-' after 'w'")),
                    }
                } else {
                    let k = self.int()?;
                    self.expect(b'+')?;
                    if self.bump() != Some(b'w') {
                        return Err(self.err("expected 'w'"));
                    }
                    Exponent::OmegaPlus(k as i32)
                };
                self.expect(b')')?;
                Ok(exp)
            }
            Some(b'[') => {
                self.bump();
                let mut primes = BTreeSet::new();
                while self.peek().is_some_and(|b| b.is_ascii_digit()) {
                    primes.insert(self.int()?);
                    if self.peek() == Some(b',') {
                        self.bump();
                    }
                }
                self.expect(b'\'')?;
                self.expect(b']')?;
                Ok(Exponent::PiOmega(primes))
            }
            _ => Err(self.err("expected an exponent")),
        }
    }
}

/// Parses a single term of the grammar.
pub fn parse_term(text: &str) -> Result<OmegaTerm, TermError> {
    let mut p = Parser {
        bytes: text.as_bytes(),
        pos: 0,
    };
    let t = p.term()?;
    if p.peek().is_some() {
        return Err(p.err("trailing input"));
    }
    t.validate()?;
    if t.is_effectively_empty() {
        return Err(TermError::Syntax {
            pos: 0,
            msg: "term reduces to the empty product".into(),
        });
    }
    Ok(t)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordStats {
    pub occ: BTreeMap<Letter, usize>,
    pub con: BTreeSet<Letter>,
    pub ini: Word,
    pub fin: Word,
}

/// Occurrence counts, content, and the subwords of first/last occurrences.
pub fn word_stats(w: &Word) -> WordStats {
    let mut occ = BTreeMap::new();
    for &l in &w.0 {
        *occ.entry(l).or_insert(0) += 1;
    }
    let con: BTreeSet<Letter> = occ.keys().copied().collect();
    let mut seen = BTreeSet::new();
    let mut ini = Vec::new();
    for &l in &w.0 {
        if seen.insert(l) {
            ini.push(l);
        }
    }
    let mut seen = BTreeSet::new();
    let mut fin_rev = Vec::new();
    for &l in w.0.iter().rev() {
        if seen.insert(l) {
            fin_rev.push(l);
        }
    }
    fin_rev.reverse();
    WordStats {
        occ,
        con,
        ini: Word(ini),
        fin: Word(fin_rev),
    }
}
