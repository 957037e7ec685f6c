//! Noncommutative polynomials over Q and normal forms modulo rewrite rules.
//!
//! Terms are ordered by weighted degree, then lexicographically on the
//! generator indices. With unit weights this is plain degree-lex.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::rational::{self, Rat};

pub const DEFAULT_STEP_CAP: u64 = 1_000_000;
pub const STEP_CAP_VAR: &str = "LOGCENTRE_STEP_CAP";

/// Step cap from the environment, falling back to the default.
pub fn step_cap_from_env() -> u64 {
    std::env::var(STEP_CAP_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_STEP_CAP)
}

pub type Word = Vec<u32>;

/// Monomial order key: weighted degree first, then the word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub weight: u64,
    pub word: Word,
}

impl Monomial {
    pub fn one() -> Self {
        Self { weight: 0, word: Vec::new() }
    }

    fn concat(&self, other: &Monomial) -> Monomial {
        let mut word = self.word.clone();
        word.extend_from_slice(&other.word);
        Monomial { weight: self.weight + other.weight, word }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NCPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl NCPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rat) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: Rat) -> Self {
        let mut p = Self::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(|m| m.word.len()).max()
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect() }
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(Rat::one());
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }
}

impl Add for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        self.scale(&-Rat::one())
    }
}

impl Mul for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        let mut out = NCPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.concat(m2), c1 * c2);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for NCPoly {
            type Output = NCPoly;
            fn $f(self, rhs: NCPoly) -> NCPoly {
                (&self).$f(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Monomial,
    pub rhs: NCPoly,
}

/// Generators, weights, oriented rules and named abbreviations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteSystem {
    names: Vec<String>,
    weights: Vec<u64>,
    rules: Vec<Rule>,
    definitions: BTreeMap<String, NCPoly>,
    step_cap: u64,
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_alphabetic()) && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'')
}

impl RewriteSystem {
    /// Generators in increasing order; weights default to 1.
    pub fn new(names: Vec<String>, weights: Option<Vec<u64>>) -> Result<Self> {
        if names.is_empty() {
            return invalid("at least one generator is required");
        }
        if let Some(bad) = names.iter().find(|n| !valid_name(n)) {
            return invalid(format!("invalid generator name {bad:?}"));
        }
        if names.iter().collect::<BTreeSet<_>>().len() != names.len() {
            return invalid("generator names must be distinct");
        }
        let weights = weights.unwrap_or_else(|| vec![1; names.len()]);
        if weights.len() != names.len() || weights.iter().any(|&w| w == 0) {
            return invalid("one positive weight per generator is required");
        }
        Ok(Self { names, weights, rules: Vec::new(), definitions: BTreeMap::new(), step_cap: step_cap_from_env() })
    }

    pub fn with_step_cap(mut self, cap: u64) -> Self {
        self.step_cap = cap;
        self
    }

    pub fn step_cap(&self) -> u64 {
        self.step_cap
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn definitions(&self) -> &BTreeMap<String, NCPoly> {
        &self.definitions
    }

    pub fn monomial(&self, word: Word) -> Monomial {
        let weight = word.iter().map(|&g| self.weights[g as usize]).sum();
        Monomial { weight, word }
    }

    pub fn generator(&self, name: &str) -> Result<NCPoly> {
        let i = self
            .names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown generator {name}")))?;
        Ok(NCPoly::term(self.monomial(vec![i as u32]), Rat::one()))
    }

    pub fn generators(&self) -> Vec<NCPoly> {
        (0..self.names.len())
            .map(|i| NCPoly::term(self.monomial(vec![i as u32]), Rat::one()))
            .collect()
    }

    /// Adds `lhs -> rhs`; every term of `rhs` must be smaller than `lhs`.
    pub fn add_rule(&mut self, lhs: Word, rhs: NCPoly) -> Result<()> {
        if lhs.iter().any(|&g| g as usize >= self.names.len()) {
            return invalid("rule uses an unknown generator");
        }
        let lhs = self.monomial(lhs);
        if lhs.word.is_empty() {
            return invalid("rule left side must be a nonempty word");
        }
        if let Some((top, _)) = rhs.leading() {
            if *top >= lhs {
                return Err(Error::PreconditionViolation(format!(
                    "rule {} -> {} does not decrease in the term order",
                    self.fmt_word(&lhs.word),
                    self.display(&rhs)
                )));
            }
        }
        self.rules.push(Rule { lhs, rhs });
        Ok(())
    }

    /// Orients the relation `p = 0` by its leading term and appends the rule.
    pub fn add_relation(&mut self, p: &NCPoly) -> Result<()> {
        let Some((lead, c)) = p.leading() else {
            return invalid("relation is zero");
        };
        let (lead, c) = (lead.clone(), c.clone());
        let rest = &p.clone() - &NCPoly::term(lead.clone(), c.clone());
        let rhs = rest.scale(&(-Rat::one() / c));
        self.add_rule(lead.word, rhs)
    }

    /// Parses `"lhs = rhs"` or a bare polynomial and adds it as a relation.
    pub fn add_relation_str(&mut self, s: &str) -> Result<()> {
        let p = self.parse_relation(s)?;
        self.add_relation(&p)
    }

    pub fn parse_relation(&self, s: &str) -> Result<NCPoly> {
        match s.split_once('=') {
            Some((l, r)) => Ok(&self.parse(l)? - &self.parse(r)?),
            None => self.parse(s),
        }
    }

    pub fn define(&mut self, name: &str, value: NCPoly) -> Result<()> {
        if !valid_name(name) {
            return invalid(format!("invalid definition name {name:?}"));
        }
        if self.names.iter().any(|n| n == name) || self.definitions.contains_key(name) {
            return invalid(format!("name {name} is already in use"));
        }
        self.definitions.insert(name.to_string(), value);
        Ok(())
    }

    pub fn define_str(&mut self, name: &str, expr: &str) -> Result<()> {
        let value = self.parse(expr)?;
        self.define(name, value)
    }

    pub fn parse(&self, s: &str) -> Result<NCPoly> {
        let mut p = Parser { src: s, pos: 0, rs: self };
        let out = p.expr()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.error("unexpected input"));
        }
        Ok(out)
    }

    fn fmt_word(&self, word: &[u32]) -> String {
        let sep = if self.names.iter().all(|n| n.chars().count() == 1) { "" } else { " " };
        let mut parts = Vec::new();
        let mut i = 0;
        while i < word.len() {
            let mut j = i;
            while j < word.len() && word[j] == word[i] {
                j += 1;
            }
            let name = &self.names[word[i] as usize];
            parts.push(if j - i == 1 { name.clone() } else { format!("{name}^{}", j - i) });
            i = j;
        }
        parts.join(sep)
    }

    /// Renders terms from largest to smallest, e.g. `ab - 2c^3`.
    pub fn display(&self, p: &NCPoly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (m, c)) in p.terms().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            let word = self.fmt_word(&m.word);
            if word.is_empty() {
                let _ = write!(out, "{abs}");
            } else if abs.is_one() {
                out.push_str(&word);
            } else if abs.is_integer() {
                let _ = write!(out, "{abs}{word}");
            } else {
                let _ = write!(out, "{abs} {word}");
            }
        }
        out
    }

    /// Reduces `p` until no rule applies, always rewriting the largest reducible term.
    pub fn normal_form(&self, p: &NCPoly) -> Result<NCPoly> {
        let mut work = p.terms.clone();
        let mut done: BTreeMap<Monomial, Rat> = BTreeMap::new();
        let mut steps = 0u64;
        while let Some((m, c)) = work.pop_last() {
            let hit = self.rules.iter().find_map(|r| find_subword(&m.word, &r.lhs.word).map(|pos| (r, pos)));
            let Some((rule, pos)) = hit else {
                // later terms are all smaller, so this one is final
                done.insert(m, c);
                continue;
            };
            steps += 1;
            if steps > self.step_cap {
                return Err(Error::NonterminationSuspected { cap: self.step_cap });
            }
            let left = self.monomial(m.word[..pos].to_vec());
            let right = self.monomial(m.word[pos + rule.lhs.word.len()..].to_vec());
            for (rm, rc) in &rule.rhs.terms {
                let new = left.concat(rm).concat(&right);
                let v = work.entry(new).or_insert_with(Rat::zero);
                *v += &c * rc;
            }
            work.retain(|_, v| !v.is_zero());
        }
        Ok(NCPoly { terms: done })
    }

    pub fn is_normal(&self, p: &NCPoly) -> bool {
        p.terms.keys().all(|m| self.rules.iter().all(|r| find_subword(&m.word, &r.lhs.word).is_none()))
    }
}

fn find_subword(word: &[u32], pat: &[u32]) -> Option<usize> {
    if pat.len() > word.len() {
        return None;
    }
    (0..=word.len() - pat.len()).find(|&i| word[i..i + pat.len()] == *pat)
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
    rs: &'a RewriteSystem,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse(format!("{msg} at offset {} in {:?}", self.pos, self.src))
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.rest().starts_with(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<NCPoly> {
        let mut acc = NCPoly::zero();
        let mut first = true;
        loop {
            let sign = if self.eat('+') {
                1
            } else if self.eat('-') {
                -1
            } else if first {
                1
            } else {
                break;
            };
            let t = self.term()?;
            acc = if sign > 0 { &acc + &t } else { &acc - &t };
            first = false;
        }
        Ok(acc)
    }

    fn starts_factor(&mut self) -> bool {
        self.skip_ws();
        self.rest().chars().next().is_some_and(|c| c == '(' || c.is_ascii_digit() || c.is_alphabetic())
    }

    fn term(&mut self) -> Result<NCPoly> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') || self.starts_factor() {
                let f = self.factor()?;
                acc = &acc * &f;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<NCPoly> {
        let base = self.atom()?;
        if self.eat('^') {
            self.skip_ws();
            let digits: String = self.rest().chars().take_while(|c| c.is_ascii_digit()).collect();
            if digits.is_empty() {
                return Err(self.error("expected exponent"));
            }
            self.pos += digits.len();
            let k: u32 = digits.parse().map_err(|_| self.error("exponent too large"))?;
            return Ok(base.pow(k));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<NCPoly> {
        self.skip_ws();
        if self.eat('(') {
            let inner = self.expr()?;
            if !self.eat(')') {
                return Err(self.error("expected ')'"));
            }
            return Ok(inner);
        }
        let rest = self.rest();
        if rest.starts_with(|c: char| c.is_ascii_digit()) {
            let num: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
            let mut len = num.len();
            let after = &rest[len..];
            if after.starts_with('/') && after[1..].starts_with(|c: char| c.is_ascii_digit()) {
                len += 1 + after[1..].chars().take_while(|c| c.is_ascii_digit()).count();
            }
            let value = rational::parse(&rest[..len])?;
            self.pos += len;
            return Ok(NCPoly::constant(value));
        }
        let rs = self.rs;
        let best = rs
            .names
            .iter()
            .chain(rs.definitions.keys())
            .filter(|n| rest.starts_with(n.as_str()))
            .max_by_key(|n| n.len());
        let Some(name) = best else {
            return Err(self.error("unknown symbol"));
        };
        self.pos += name.len();
        match rs.definitions.get(name) {
            Some(v) => Ok(v.clone()),
            None => rs.generator(name),
        }
    }
}

pub fn is_central(p: &NCPoly, rs: &RewriteSystem, generators: &[NCPoly]) -> Result<bool> {
    for g in generators {
        if !rs.normal_form(&(&(p * g) - &(g * p)))?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn verify_identity(lhs: &NCPoly, rhs: &NCPoly, rs: &RewriteSystem) -> Result<bool> {
    Ok(rs.normal_form(&(lhs - rhs))?.is_zero())
}

/// Matrix of polynomials over one rewrite system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraMatrix {
    entries: Vec<Vec<NCPoly>>,
}

impl AlgebraMatrix {
    pub fn new(entries: Vec<Vec<NCPoly>>) -> Result<Self> {
        let cols = entries.first().map_or(0, Vec::len);
        if entries.is_empty() || cols == 0 || entries.iter().any(|r| r.len() != cols) {
            return invalid("matrix rows must be nonempty and of equal length");
        }
        Ok(Self { entries })
    }

    /// Builds a matrix from rows of parsed entries.
    pub fn parse(rs: &RewriteSystem, rows: &[&[&str]]) -> Result<Self> {
        let entries = rows
            .iter()
            .map(|r| r.iter().map(|s| rs.parse(s)).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        Self::new(entries)
    }

    pub fn identity(n: usize) -> Self {
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { NCPoly::constant(Rat::one()) } else { NCPoly::zero() })
                    .collect()
            })
            .collect();
        Self { entries }
    }

    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries[0].len()
    }

    pub fn get(&self, i: usize, j: usize) -> &NCPoly {
        &self.entries[i][j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(NCPoly::is_zero)
    }

    pub fn display(&self, rs: &RewriteSystem) -> String {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|p| rs.display(p)).collect::<Vec<_>>().join(", "))
            .collect();
        format!("[{}]", rows.join("; "))
    }
}

/// `M N` with every entry in normal form.
pub fn matrix_compose(m: &AlgebraMatrix, n: &AlgebraMatrix, rs: &RewriteSystem) -> Result<AlgebraMatrix> {
    if m.cols() != n.rows() {
        return invalid(format!("cannot compose {}x{} with {}x{}", m.rows(), m.cols(), n.rows(), n.cols()));
    }
    let mut entries = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let mut row = Vec::with_capacity(n.cols());
        for j in 0..n.cols() {
            let mut acc = NCPoly::zero();
            for k in 0..m.cols() {
                acc = &acc + &(m.get(i, k) * n.get(k, j));
            }
            row.push(rs.normal_form(&acc)?);
        }
        entries.push(row);
    }
    Ok(AlgebraMatrix { entries })
}

/// Commutative presentation: the given generator order, all commutation rules, then `relations`.
pub fn commutative_system(names: &[&str], relations: &[&str]) -> Result<RewriteSystem> {
    let mut rs = RewriteSystem::new(names.iter().map(|s| s.to_string()).collect(), None)?;
    let n = names.len() as u32;
    for i in 0..n {
        for j in (i + 1)..n {
            let rhs = NCPoly::term(rs.monomial(vec![i, j]), Rat::one());
            rs.add_rule(vec![j, i], rhs)?;
        }
    }
    for r in relations {
        rs.add_relation_str(r)?;
    }
    Ok(rs)
}

/// Element `num / g^power` of a commutative ring localized at the generator `g`.
#[derive(Debug, Clone)]
pub struct Fraction {
    pub num: NCPoly,
    pub power: u32,
}

impl Fraction {
    pub fn new(num: NCPoly) -> Self {
        Self { num, power: 0 }
    }

    pub fn over(num: NCPoly, power: u32) -> Self {
        Self { num, power }
    }
}

/// Arithmetic in a commutative ring localized at one generator.
pub struct Localization<'a> {
    rs: &'a RewriteSystem,
    denominator: NCPoly,
}

impl<'a> Localization<'a> {
    pub fn new(rs: &'a RewriteSystem, denominator: &str) -> Result<Self> {
        Ok(Self { rs, denominator: rs.generator(denominator)? })
    }

    pub fn parse(&self, num: &str, power: u32) -> Result<Fraction> {
        Ok(Fraction::over(self.rs.parse(num)?, power))
    }

    pub fn zero(&self) -> Fraction {
        Fraction::new(NCPoly::zero())
    }

    pub fn add(&self, x: &Fraction, y: &Fraction) -> Result<Fraction> {
        let num = &(&x.num * &self.denominator.pow(y.power)) + &(&y.num * &self.denominator.pow(x.power));
        Ok(Fraction::over(self.rs.normal_form(&num)?, x.power + y.power))
    }

    pub fn mul(&self, x: &Fraction, y: &Fraction) -> Result<Fraction> {
        Ok(Fraction::over(self.rs.normal_form(&(&x.num * &y.num))?, x.power + y.power))
    }

    /// `p / g^k = q / g^l` iff `p g^l - q g^k` vanishes in the ring.
    pub fn equal(&self, x: &Fraction, y: &Fraction) -> Result<bool> {
        let diff = &(&x.num * &self.denominator.pow(y.power)) - &(&y.num * &self.denominator.pow(x.power));
        Ok(self.rs.normal_form(&diff)?.is_zero())
    }

    /// Product of square matrices of fractions.
    pub fn mat_mul(&self, m: &[Vec<Fraction>], n: &[Vec<Fraction>]) -> Result<Vec<Vec<Fraction>>> {
        let size = m.len();
        let mut out = Vec::with_capacity(size);
        for i in 0..size {
            let mut row = Vec::with_capacity(size);
            for j in 0..size {
                let mut acc = self.zero();
                for k in 0..size {
                    acc = self.add(&acc, &self.mul(&m[i][k], &n[k][j])?)?;
                }
                row.push(acc);
            }
            out.push(row);
        }
        Ok(out)
    }

    pub fn mat_equal(&self, m: &[Vec<Fraction>], n: &[Vec<Fraction>]) -> Result<bool> {
        for (r, s) in m.iter().zip(n) {
            for (x, y) in r.iter().zip(s) {
                if !self.equal(x, y)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// The Clifford-type algebra `<a, b, c | ac + ca, bc + cb, ab - ba - 2c^3>`
/// with its central elements `x, y, z, t` defined.
///
/// Weights are `a = b = 2`, `c = 1` so that `ba -> ab - 2c^3` decreases.
pub fn clifford_system() -> Result<RewriteSystem> {
    let mut rs = RewriteSystem::new(vec!["a".into(), "b".into(), "c".into()], Some(vec![2, 2, 1]))?;
    for r in CLIFFORD_RELATIONS {
        rs.add_relation_str(r)?;
    }
    for (name, value) in CLIFFORD_DEFINITIONS {
        rs.define_str(name, value)?;
    }
    Ok(rs)
}

pub const CLIFFORD_RELATIONS: [&str; 3] = ["ca = -ac", "cb = -bc", "ba = ab - 2c^3"];
pub const CLIFFORD_DEFINITIONS: [(&str, &str); 4] = [("x", "a^2"), ("y", "b^2"), ("z", "ab + ba"), ("t", "c^2")];

/// `k[a,b,c,d]/(ad - bc)` with generator order `b < c < a < d`, so that `ad -> bc` decreases.
pub fn conifold_system() -> Result<RewriteSystem> {
    commutative_system(&["b", "c", "a", "d"], &["ad = bc"])
}

/// Outcome of the quiver-image and invariant-ring checks on `k[a,b,c,d]/(ad - bc)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommutativeQuotientCheck {
    /// One flag per quiver relation, in the order `u ū v = v ū u`, `u v̄ v = v v̄ u`, `ū u v̄ = v̄ u ū`, `ū v v̄ = v̄ v ū`.
    pub quiver_relations: Vec<bool>,
    /// `xz - y^2`, `xd - yc`, `yd - zc` vanish after `x = a^2, y = ab, z = b^2`.
    pub invariant_relations: Vec<bool>,
    /// `a^2, ab, b^2, c, d` are fixed by `a -> -a, b -> -b`.
    pub invariants_fixed: bool,
}

impl CommutativeQuotientCheck {
    pub fn holds(&self) -> bool {
        self.quiver_relations.iter().all(|&b| b) && self.invariant_relations.iter().all(|&b| b) && self.invariants_fixed
    }
}

pub fn commutative_quotient_check() -> Result<CommutativeQuotientCheck> {
    let rs = conifold_system()?;
    let loc = Localization::new(&rs, "a")?;
    let mat = |e: [(&str, u32); 4]| -> Result<Vec<Vec<Fraction>>> {
        let f = e.map(|(s, k)| loc.parse(s, k));
        let [p, q, r, s] = f;
        Ok(vec![vec![p?, q?], vec![r?, s?]])
    };
    let u = mat([("0", 0), ("a", 0), ("0", 0), ("0", 0)])?;
    let v = mat([("0", 0), ("c", 0), ("0", 0), ("0", 0)])?;
    let ub = mat([("0", 0), ("0", 0), ("1", 0), ("0", 0)])?;
    let vb = mat([("0", 0), ("0", 0), ("b", 1), ("0", 0)])?;
    let triple = |x: &Vec<Vec<Fraction>>, y: &Vec<Vec<Fraction>>, z: &Vec<Vec<Fraction>>| {
        loc.mat_mul(&loc.mat_mul(x, y)?, z)
    };
    let quiver_relations = vec![
        loc.mat_equal(&triple(&u, &ub, &v)?, &triple(&v, &ub, &u)?)?,
        loc.mat_equal(&triple(&u, &vb, &v)?, &triple(&v, &vb, &u)?)?,
        loc.mat_equal(&triple(&ub, &u, &vb)?, &triple(&vb, &u, &ub)?)?,
        loc.mat_equal(&triple(&ub, &v, &vb)?, &triple(&vb, &v, &ub)?)?,
    ];

    let mut inv = rs.clone();
    inv.define_str("x", "a^2")?;
    inv.define_str("y", "ab")?;
    inv.define_str("z", "b^2")?;
    let invariant_relations = ["xz - y^2", "xd - yc", "yd - zc"]
        .iter()
        .map(|r| Ok(inv.normal_form(&inv.parse(r)?)?.is_zero()))
        .collect::<Result<_>>()?;

    let mut flipped = rs.clone();
    flipped.define_str("A", "-a")?;
    flipped.define_str("B", "-b")?;
    let invariants_fixed = [("a^2", "A^2"), ("ab", "AB"), ("b^2", "B^2"), ("c", "c"), ("d", "d")]
        .iter()
        .map(|(l, r)| verify_identity(&flipped.parse(l)?, &flipped.parse(r)?, &flipped))
        .collect::<Result<Vec<bool>>>()?
        .into_iter()
        .all(|b| b);
    Ok(CommutativeQuotientCheck { quiver_relations, invariant_relations, invariants_fixed })
}

/// JSON shape of a presented algebra.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationRecord {
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<u64>>,
    /// Relations `"lhs = rhs"`, oriented by their leading term, in priority order.
    pub relations: Vec<String>,
    /// Abbreviations in the order they are introduced; each may use earlier ones.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub definitions: Vec<Definition>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Definition {
    pub name: String,
    pub value: String,
}

impl TryFrom<&PresentationRecord> for RewriteSystem {
    type Error = Error;

    fn try_from(rec: &PresentationRecord) -> Result<Self> {
        let mut rs = RewriteSystem::new(rec.generators.clone(), rec.weights.clone())?;
        for r in &rec.relations {
            rs.add_relation_str(r)?;
        }
        for d in &rec.definitions {
            rs.define_str(&d.name, &d.value)?;
        }
        Ok(rs)
    }
}

impl From<&RewriteSystem> for PresentationRecord {
    fn from(rs: &RewriteSystem) -> Self {
        Self {
            generators: rs.names.clone(),
            weights: rs.weights.iter().any(|&w| w != 1).then(|| rs.weights.clone()),
            relations: rs
                .rules
                .iter()
                .map(|r| format!("{} = {}", rs.fmt_word(&r.lhs.word), rs.display(&r.rhs)))
                .collect(),
            definitions: rs
                .definitions
                .iter()
                .map(|(name, v)| Definition { name: name.clone(), value: rs.display(v) })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cl() -> RewriteSystem {
        clifford_system().unwrap()
    }

    fn nf(rs: &RewriteSystem, s: &str) -> String {
        rs.display(&rs.normal_form(&rs.parse(s).unwrap()).unwrap())
    }

    #[test]
    fn parsing() {
        let rs = cl();
        assert_eq!(rs.display(&rs.parse("ab - 2c^3").unwrap()), "ab - 2c^3");
        assert_eq!(rs.display(&rs.parse("(a+b)^2").unwrap()), "b^2 + ba + ab + a^2");
        assert_eq!(rs.display(&rs.parse("1/2 a*b + 3").unwrap()), "1/2 ab + 3");
        assert_eq!(rs.parse("x").unwrap(), rs.parse("a^2").unwrap());
        assert_eq!(rs.parse("0").unwrap(), NCPoly::zero());
        assert!(rs.parse("q").is_err());
        assert!(rs.parse("a +").is_err());
        assert!(rs.parse("(a").is_err());
        assert!(rs.parse("").is_err());
    }

    #[test]
    fn clifford_normal_forms() {
        let rs = cl();
        assert_eq!(nf(&rs, "ba"), "ab - 2c^3");
        assert_eq!(nf(&rs, "ca + ac"), "0");
        assert_eq!(nf(&rs, "(ab - ba)^2 - 4c^6"), "0");
        assert_eq!(nf(&rs, "cba"), "abc - 2c^4");
    }

    #[test]
    fn non_decreasing_rule_is_rejected() {
        let mut rs = RewriteSystem::new(vec!["a".into(), "b".into(), "c".into()], None).unwrap();
        let rhs = rs.parse("ab - 2c^3").unwrap();
        assert!(matches!(rs.add_rule(vec![1, 0], rhs), Err(Error::PreconditionViolation(_))));
    }

    #[test]
    fn step_cap() {
        let rs = cl().with_step_cap(3);
        let p = rs.parse("c^2 b^2 a^2").unwrap();
        assert!(matches!(rs.normal_form(&p), Err(Error::NonterminationSuspected { cap: 3 })));
    }

    #[test]
    fn centrality() {
        let rs = cl();
        let gens = rs.generators();
        for s in ["x", "y", "z", "t", "a^2", "ab + ba"] {
            assert!(is_central(&rs.parse(s).unwrap(), &rs, &gens).unwrap(), "{s}");
        }
        assert!(!is_central(&rs.parse("c").unwrap(), &rs, &gens).unwrap());
        assert!(!is_central(&rs.parse("ab").unwrap(), &rs, &gens).unwrap());
    }

    #[test]
    fn identities() {
        let rs = cl();
        let id = |l: &str, r: &str| verify_identity(&rs.parse(l).unwrap(), &rs.parse(r).unwrap(), &rs).unwrap();
        assert!(id("z^2 - 4xy", "4t^3"));
        assert!(id("(ab+ba)^2 - 4a^2b^2", "4c^6"));
        assert!(id("0", "0"));
        assert!(!id("ab", "ba"));
    }

    #[test]
    fn resolution_compositions() {
        let rs = cl();
        let m = AlgebraMatrix::parse(&rs, &[&["-c", "0", "-a"], &["0", "c", "b"], &["-b", "a", "-2c^2"]]).unwrap();
        let left = AlgebraMatrix::parse(&rs, &[&["b", "a", "c"]]).unwrap();
        let right = AlgebraMatrix::parse(&rs, &[&["a"], &["b"], &["c"]]).unwrap();
        assert!(matrix_compose(&left, &m, &rs).unwrap().is_zero());
        assert!(matrix_compose(&m, &right, &rs).unwrap().is_zero());
        assert_eq!(matrix_compose(&AlgebraMatrix::identity(3), &m, &rs).unwrap(), m);
        assert!(matrix_compose(&left, &left, &rs).is_err());
    }

    #[test]
    fn conifold() {
        let rs = conifold_system().unwrap();
        assert_eq!(nf(&rs, "ad - bc"), "0");
        assert_eq!(nf(&rs, "da"), "bc");
        assert_eq!(nf(&rs, "dcba"), "b^2c^2");
        let check = commutative_quotient_check().unwrap();
        assert!(check.holds(), "{check:?}");
    }

    #[test]
    fn localization() {
        let rs = conifold_system().unwrap();
        let loc = Localization::new(&rs, "a").unwrap();
        let ba = loc.parse("b", 1).unwrap();
        let a = loc.parse("a", 0).unwrap();
        assert!(loc.equal(&loc.mul(&ba, &a).unwrap(), &loc.parse("b", 0).unwrap()).unwrap());
        // c * (b/a) = bc/a = ad/a = d
        let c = loc.parse("c", 0).unwrap();
        assert!(loc.equal(&loc.mul(&c, &ba).unwrap(), &loc.parse("d", 0).unwrap()).unwrap());
        assert!(!loc.equal(&ba, &loc.parse("b", 0).unwrap()).unwrap());
    }

    #[test]
    fn record_round_trip() {
        let rs = cl();
        let rec = PresentationRecord::from(&rs);
        assert_eq!(rec.relations, vec!["ca = -ac", "cb = -bc", "ba = ab - 2c^3"]);
        let back = RewriteSystem::try_from(&rec).unwrap();
        assert_eq!(back, rs);
        let json = serde_json::to_string(&rec).unwrap();
        assert_eq!(serde_json::from_str::<PresentationRecord>(&json).unwrap(), rec);
    }
}
