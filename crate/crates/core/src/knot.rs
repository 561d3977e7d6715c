//! Knot expressions.
//!
//! ```text
//! expr := term ("#" term)*
//! term := "U" | "T(" int "," int ")" | "mirror(" expr ")" | "rev(" expr ")"
//!       | "wh+(" expr ")" | "P[" int "](" expr ")"
//! ```
//!
//! Whitespace between tokens is ignored and `#` is left-associative.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum KnotExpr {
    Unknot,
    /// Positive torus knot `T(p,q)` with coprime `p, q >= 2`.
    Torus(u32, u32),
    /// Untwisted positive-clasped Whitehead double.
    WhiteheadPos(Box<KnotExpr>),
    Mirror(Box<KnotExpr>),
    Reverse(Box<KnotExpr>),
    Sum(Box<KnotExpr>, Box<KnotExpr>),
    /// The `(2, 2l)` cable link `P_l(K)`.
    Cable(i64, Box<KnotExpr>),
}

impl KnotExpr {
    pub fn torus(p: u32, q: u32) -> Result<KnotExpr> {
        if p < 2 || q < 2 {
            return Err(Error::Contract(format!("torus parameters must be at least 2, got T({p},{q})")));
        }
        if p.gcd(&q) != 1 {
            return Err(Error::Contract(format!("T({p},{q}): parameters must be coprime")));
        }
        Ok(KnotExpr::Torus(p, q))
    }

    pub fn mirror(k: KnotExpr) -> KnotExpr {
        KnotExpr::Mirror(Box::new(k))
    }

    pub fn rev(k: KnotExpr) -> KnotExpr {
        KnotExpr::Reverse(Box::new(k))
    }

    pub fn wh(k: KnotExpr) -> KnotExpr {
        KnotExpr::WhiteheadPos(Box::new(k))
    }

    pub fn cable(ell: i64, k: KnotExpr) -> KnotExpr {
        KnotExpr::Cable(ell, Box::new(k))
    }

    pub fn sum(a: KnotExpr, b: KnotExpr) -> KnotExpr {
        KnotExpr::Sum(Box::new(a), Box::new(b))
    }

    /// Connected sum of all `parts`; the unknot when empty.
    pub fn sum_all(parts: impl IntoIterator<Item = KnotExpr>) -> KnotExpr {
        parts.into_iter().reduce(KnotExpr::sum).unwrap_or(KnotExpr::Unknot)
    }

    pub fn is_link(&self) -> bool {
        match self {
            KnotExpr::Cable(..) => true,
            KnotExpr::Unknot | KnotExpr::Torus(..) => false,
            KnotExpr::WhiteheadPos(k) | KnotExpr::Mirror(k) | KnotExpr::Reverse(k) => k.is_link(),
            KnotExpr::Sum(a, b) => a.is_link() || b.is_link(),
        }
    }

    /// Top-level connected summands, left to right.
    pub fn summands(&self) -> Vec<&KnotExpr> {
        let mut out = Vec::new();
        fn walk<'a>(e: &'a KnotExpr, out: &mut Vec<&'a KnotExpr>) {
            match e {
                KnotExpr::Sum(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                other => out.push(other),
            }
        }
        walk(self, &mut out);
        out
    }

    /// Canonical form: connected sums flattened, unknot summands dropped and the
    /// rest sorted; mirror and rev pushed to the leaves; rev dropped on leaves
    /// whose knot Floer model is reversal invariant (unknot and torus knots).
    pub fn canonical(&self) -> KnotExpr {
        let mut leaves = Vec::new();
        collect_leaves(self, false, false, true, &mut leaves);
        assemble(leaves)
    }

    /// Key shared by a knot and its reverse: the canonical form with every
    /// orientation reversal removed.
    pub fn cache_key(&self) -> String {
        let mut leaves = Vec::new();
        collect_leaves(self, false, false, false, &mut leaves);
        assemble(leaves).to_string()
    }
}

fn collect_leaves(e: &KnotExpr, mirrored: bool, reversed: bool, keep_rev: bool, out: &mut Vec<KnotExpr>) {
    match e {
        KnotExpr::Unknot => {}
        KnotExpr::Torus(p, q) => {
            let t = KnotExpr::Torus(*p.min(q), *p.max(q));
            out.push(if mirrored { KnotExpr::mirror(t) } else { t });
        }
        KnotExpr::Mirror(k) => collect_leaves(k, !mirrored, reversed, keep_rev, out),
        KnotExpr::Reverse(k) => collect_leaves(k, mirrored, !reversed, keep_rev, out),
        KnotExpr::Sum(a, b) => {
            collect_leaves(a, mirrored, reversed, keep_rev, out);
            collect_leaves(b, mirrored, reversed, keep_rev, out);
        }
        KnotExpr::WhiteheadPos(j) => {
            let inner = canonical_inner(j, keep_rev);
            let mut leaf = KnotExpr::wh(inner);
            if reversed && keep_rev {
                leaf = KnotExpr::rev(leaf);
            }
            if mirrored {
                leaf = KnotExpr::mirror(leaf);
            }
            out.push(leaf);
        }
        KnotExpr::Cable(ell, k) => {
            // reflecting the cable reflects the companion and negates the twisting
            let (ell, mirror_inner) = if mirrored { (-ell, true) } else { (*ell, false) };
            let mut inner = if mirror_inner { KnotExpr::mirror((**k).clone()) } else { (**k).clone() };
            if reversed {
                inner = KnotExpr::rev(inner);
            }
            out.push(KnotExpr::cable(ell, canonical_inner(&inner, keep_rev)));
        }
    }
}

fn canonical_inner(e: &KnotExpr, keep_rev: bool) -> KnotExpr {
    let mut leaves = Vec::new();
    collect_leaves(e, false, false, keep_rev, &mut leaves);
    assemble(leaves)
}

fn assemble(mut leaves: Vec<KnotExpr>) -> KnotExpr {
    leaves.sort_by_cached_key(|l| l.to_string());
    KnotExpr::sum_all(leaves)
}

impl fmt::Display for KnotExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotExpr::Unknot => write!(f, "U"),
            KnotExpr::Torus(p, q) => write!(f, "T({p},{q})"),
            KnotExpr::WhiteheadPos(k) => write!(f, "wh+({k})"),
            KnotExpr::Mirror(k) => write!(f, "mirror({k})"),
            KnotExpr::Reverse(k) => write!(f, "rev({k})"),
            KnotExpr::Sum(a, b) => write!(f, "{a} # {b}"),
            KnotExpr::Cable(ell, k) => write!(f, "P[{ell}]({k})"),
        }
    }
}

impl FromStr for KnotExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<KnotExpr> {
        parse_knot_expr(s)
    }
}

impl Serialize for KnotExpr {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for KnotExpr {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<KnotExpr, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a knot expression. Errors carry the byte offset of the offending
/// token.
pub fn parse_knot_expr(text: &str) -> Result<KnotExpr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, depth: 0 };
    let e = p.expr()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.err(format!("unexpected trailing input {:?}", p.rest_preview())));
    }
    Ok(e)
}

const MAX_DEPTH: usize = 256;

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    depth: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn rest_preview(&self) -> String {
        let rest = String::from_utf8_lossy(&self.src[self.pos..]);
        rest.chars().take(12).collect()
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(_) => Err(self.err(format!("expected '{}', found {:?}", c as char, self.rest_preview()))),
            None => Err(self.err(format!("expected '{}', found end of input", c as char))),
        }
    }

    fn keyword(&mut self, kw: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(kw.as_bytes()) {
            self.pos += kw.len();
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if matches!(self.src.get(self.pos), Some(b'-') | Some(b'+')) {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return Err(self.err("expected an integer"));
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse().map_err(|_| Error::Parse { pos: start, msg: format!("integer {text} out of range") })
    }

    fn expr(&mut self) -> Result<KnotExpr> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            return Err(self.err("expression nested too deeply"));
        }
        let mut lhs = self.term()?;
        while self.peek() == Some(b'#') {
            self.pos += 1;
            let rhs = self.term()?;
            lhs = KnotExpr::sum(lhs, rhs);
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn wrapped(&mut self) -> Result<KnotExpr> {
        self.expect(b'(')?;
        let e = self.expr()?;
        self.expect(b')')?;
        Ok(e)
    }

    fn term(&mut self) -> Result<KnotExpr> {
        let start = {
            self.skip_ws();
            self.pos
        };
        if self.keyword("mirror") {
            return Ok(KnotExpr::mirror(self.wrapped()?));
        }
        if self.keyword("rev") {
            return Ok(KnotExpr::rev(self.wrapped()?));
        }
        if self.keyword("wh+") {
            return Ok(KnotExpr::wh(self.wrapped()?));
        }
        match self.peek() {
            Some(b'U') => {
                self.pos += 1;
                Ok(KnotExpr::Unknot)
            }
            Some(b'T') => {
                self.pos += 1;
                self.expect(b'(')?;
                let p = self.int()?;
                self.expect(b',')?;
                let q = self.int()?;
                self.expect(b')')?;
                let conv = |x: i64| u32::try_from(x).ok();
                match (conv(p), conv(q)) {
                    (Some(p), Some(q)) => {
                        KnotExpr::torus(p, q).map_err(|e| Error::Parse { pos: start, msg: contract_msg(e) })
                    }
                    _ => Err(Error::Parse {
                        pos: start,
                        msg: format!("torus parameters must be positive integers; write mirror(T(p,q)) for negative torus knots, got T({p},{q})"),
                    }),
                }
            }
            Some(b'P') => {
                self.pos += 1;
                self.expect(b'[')?;
                let ell = self.int()?;
                self.expect(b']')?;
                Ok(KnotExpr::cable(ell, self.wrapped()?))
            }
            Some(_) => Err(self.err(format!("expected a knot, found {:?}", self.rest_preview()))),
            None => Err(self.err("expected a knot, found end of input")),
        }
    }
}

fn contract_msg(e: Error) -> String {
    match e {
        Error::Contract(m) => m,
        other => other.to_string(),
    }
}
