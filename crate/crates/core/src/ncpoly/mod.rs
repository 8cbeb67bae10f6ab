//! Free-algebra arithmetic over ℚ and bounded two-sided ideal membership.
//!
//! Words are sequences of symbol indices into an [`Alphabet`] and are ordered
//! degree-lexicographically. Membership is decided in the truncated span of
//! `w₁·r·w₂` with `|w₁| + len(r) + |w₂| ≤ max_len` (see [`ideal`]), and every
//! positive answer comes with a [`MembershipCertificate`] that can be re-expanded.

pub mod ideal;

use crate::rational::Rational;
use num_traits::{One, Zero};
use smallvec::SmallVec;
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use ideal::{ideal_member, TruncatedIdeal};

pub type Symbol = u16;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum NcError {
    #[error("duplicate symbol `{0}` in alphabet")]
    DuplicateSymbol(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("alphabet mismatch")]
    AlphabetMismatch,
    #[error("bound {max_len} is smaller than the longest word ({degree}) of the query")]
    BoundTooSmall { max_len: usize, degree: usize },
    #[error("no coproduct given for symbol `{0}`")]
    MissingSymbol(String),
    #[error("search space of {size} spanning products exceeds the component limit")]
    SearchTooLarge { size: usize },
}

/// A word in the free monoid; ordered by length, then lexicographically by symbol index.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub SmallVec<[Symbol; 8]>);

impl Word {
    pub fn empty() -> Self {
        Word(SmallVec::new())
    }

    pub fn from_slice(s: &[Symbol]) -> Self {
        Word(SmallVec::from_slice(s))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.0.clone();
        w.extend_from_slice(&other.0);
        Word(w)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0.as_slice())
    }
}

/// Ordered, duplicate-free generator names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    names: Vec<String>,
    index: HashMap<String, Symbol>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, NcError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut index = HashMap::new();
        for (i, n) in names.iter().enumerate() {
            if index.insert(n.clone(), i as Symbol).is_some() {
                return Err(NcError::DuplicateSymbol(n.clone()));
            }
        }
        Ok(Alphabet { names, index })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn symbol(&self, name: &str) -> Result<Symbol, NcError> {
        self.index.get(name).copied().ok_or_else(|| NcError::UnknownSymbol(name.to_string()))
    }

    pub fn name(&self, s: Symbol) -> &str {
        &self.names[s as usize]
    }

    pub fn word(&self, names: &[&str]) -> Result<Word, NcError> {
        names.iter().map(|n| self.symbol(n)).collect::<Result<SmallVec<_>, _>>().map(Word)
    }

    pub fn gen(&self, name: &str) -> Result<NcPoly, NcError> {
        Ok(NcPoly::symbol(self.symbol(name)?))
    }

    pub fn render_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".into();
        }
        w.0.iter().map(|&s| self.name(s)).collect::<Vec<_>>().join("·")
    }

    pub fn render(&self, p: &NcPoly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        p.terms
            .iter()
            .rev()
            .map(|(w, c)| format!("({c})·{}", self.render_word(w)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// A noncommutative polynomial: finitely many words with nonzero coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct NcPoly {
    terms: BTreeMap<Word, Rational>,
}

impl fmt::Debug for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.terms.iter().map(|(w, c)| format!("{c}*{w:?}")).collect();
        write!(f, "NcPoly[{}]", parts.join(" + "))
    }
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::term(Word::empty(), c)
    }

    pub fn symbol(s: Symbol) -> Self {
        Self::term(Word::from_slice(&[s]), Rational::one())
    }

    pub fn term(w: Word, c: Rational) -> Self {
        let mut p = NcPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Rational)>) -> Self {
        let mut p = NcPoly::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn terms(&self) -> &BTreeMap<Word, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        self.terms.get(w).cloned().unwrap_or_else(Rational::zero)
    }

    /// Length of the longest word; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().next_back().map_or(0, Word::len)
    }

    /// Deglex-largest word with its coefficient.
    pub fn leading(&self) -> Option<(&Word, &Rational)> {
        self.terms.iter().next_back()
    }

    pub fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &NcPoly, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (w, x) in &other.terms {
            self.add_term(w.clone(), x * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero();
        }
        NcPoly { terms: self.terms.iter().map(|(w, x)| (w.clone(), x * c)).collect() }
    }

    /// `left·self·right` for words.
    pub fn sandwich(&self, left: &Word, right: &Word) -> NcPoly {
        NcPoly {
            terms: self.terms.iter().map(|(w, c)| (left.concat(w).concat(right), c.clone())).collect(),
        }
    }

    pub fn symbols(&self) -> BTreeSet<Symbol> {
        self.terms.keys().flat_map(|w| w.0.iter().copied()).collect()
    }

    /// Extends `image` to an algebra map; symbols without an image are kept.
    pub fn substitute(&self, image: &dyn Fn(Symbol) -> Option<NcPoly>) -> NcPoly {
        self.map_words(image, false)
    }

    /// Extends `image` to an anti-algebra map (products are reversed).
    pub fn anti_substitute(&self, image: &dyn Fn(Symbol) -> Option<NcPoly>) -> NcPoly {
        self.map_words(image, true)
    }

    fn map_words(&self, image: &dyn Fn(Symbol) -> Option<NcPoly>, reverse: bool) -> NcPoly {
        let mut cache: HashMap<Symbol, NcPoly> = HashMap::new();
        let mut out = NcPoly::zero();
        for (w, c) in &self.terms {
            let mut acc = NcPoly::constant(c.clone());
            let syms: Box<dyn Iterator<Item = &Symbol>> =
                if reverse { Box::new(w.0.iter().rev()) } else { Box::new(w.0.iter()) };
            for &s in syms {
                let img = cache.entry(s).or_insert_with(|| image(s).unwrap_or_else(|| NcPoly::symbol(s)));
                acc = &acc * &*img;
                if acc.is_zero() {
                    break;
                }
            }
            out.add_scaled(&acc, &Rational::one());
        }
        out
    }

    /// Evaluates at scalar values (which commute, so this is an algebra map to ℚ).
    pub fn eval(&self, value: &dyn Fn(Symbol) -> Rational) -> Rational {
        self.terms
            .iter()
            .map(|(w, c)| w.0.iter().fold(c.clone(), |acc, &s| acc * value(s)))
            .sum()
    }
}

impl Add for &NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &Rational::one());
        out
    }
}

impl Sub for &NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: &NcPoly) -> NcPoly {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Rational::one());
        out
    }
}

impl Neg for &NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        self.scale(&-Rational::one())
    }
}

impl Mul for &NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: &NcPoly) -> NcPoly {
        let mut out = NcPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                out.add_term(a.concat(b), x * y);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for NcPoly {
            type Output = NcPoly;
            fn $f(self, rhs: NcPoly) -> NcPoly { (&self).$f(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

/// Product of two polynomials that live over the same alphabet.
pub fn mul(a: &Alphabet, p: &NcPoly, b: &Alphabet, q: &NcPoly) -> Result<NcPoly, NcError> {
    if a != b {
        return Err(NcError::AlphabetMismatch);
    }
    Ok(p * q)
}

/// An element of the tensor square `F⊗F`, stored on pairs of words.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorPoly {
    terms: BTreeMap<(Word, Word), Rational>,
}

impl TensorPoly {
    pub fn zero() -> Self {
        TensorPoly::default()
    }

    pub fn one() -> Self {
        Self::term(Word::empty(), Word::empty(), Rational::one())
    }

    pub fn term(l: Word, r: Word, c: Rational) -> Self {
        let mut t = TensorPoly::zero();
        t.add_term(l, r, c);
        t
    }

    pub fn terms(&self) -> &BTreeMap<(Word, Word), Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, l: Word, r: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        let key = (l, r);
        let v = self.terms.entry(key.clone()).or_insert_with(Rational::zero);
        *v += c;
        if v.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add_scaled(&mut self, other: &TensorPoly, c: &Rational) {
        for ((l, r), x) in &other.terms {
            self.add_term(l.clone(), r.clone(), x * c);
        }
    }

    /// `(a⊗b)(c⊗d) = ac⊗bd`.
    pub fn mul(&self, other: &TensorPoly) -> TensorPoly {
        let mut out = TensorPoly::zero();
        for ((a, b), x) in &self.terms {
            for ((c, d), y) in &other.terms {
                out.add_term(a.concat(c), b.concat(d), x * y);
            }
        }
        out
    }
}

/// Multiplicative extension of `delta` to `p`.
pub fn coproduct_extend(
    p: &NcPoly,
    delta: &dyn Fn(Symbol) -> Option<TensorPoly>,
    alphabet: &Alphabet,
) -> Result<TensorPoly, NcError> {
    let mut images: HashMap<Symbol, TensorPoly> = HashMap::new();
    for s in p.symbols() {
        let img = delta(s).ok_or_else(|| NcError::MissingSymbol(alphabet.name(s).to_string()))?;
        images.insert(s, img);
    }
    let mut out = TensorPoly::zero();
    for (w, c) in p.terms() {
        let mut acc = TensorPoly::term(Word::empty(), Word::empty(), c.clone());
        for s in w.symbols() {
            acc = acc.mul(&images[s]);
        }
        out.add_scaled(&acc, &Rational::one());
    }
    Ok(out)
}

/// One term `coef · left · relations[relation] · right` of a certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summand {
    pub coef: Rational,
    pub left: Word,
    pub relation: usize,
    pub right: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MembershipCertificate {
    pub summands: Vec<Summand>,
}

impl MembershipCertificate {
    /// Longest `|left| + len(relation) + |right|` over the summands.
    pub fn max_len(&self, relations: &[NcPoly]) -> usize {
        self.summands
            .iter()
            .map(|s| s.left.len() + relations.get(s.relation).map_or(0, NcPoly::degree) + s.right.len())
            .max()
            .unwrap_or(0)
    }

    pub fn expand(&self, relations: &[NcPoly]) -> Option<NcPoly> {
        let mut out = NcPoly::zero();
        for s in &self.summands {
            let r = relations.get(s.relation)?;
            out.add_scaled(&r.sandwich(&s.left, &s.right), &s.coef);
        }
        Some(out)
    }
}

/// Re-expands the certificate and compares with `p` exactly.
pub fn verify_certificate(p: &NcPoly, relations: &[NcPoly], cert: &MembershipCertificate) -> bool {
    cert.expand(relations).is_some_and(|e| e == *p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn xy() -> (Alphabet, NcPoly, NcPoly) {
        let a = Alphabet::new(["x", "y"]).unwrap();
        let x = a.gen("x").unwrap();
        let y = a.gen("y").unwrap();
        (a, x, y)
    }

    #[test]
    fn noncommutative_product() {
        let (a, x, y) = xy();
        let p = &(&x + &y) * &(&x - &y);
        let xx = &x * &x;
        let expect = &(&(&xx - &(&x * &y)) + &(&y * &x)) - &(&y * &y);
        assert_eq!(p, expect);
        assert_eq!(&p * &NcPoly::one(), p);
        assert!(mul(&a, &x, &Alphabet::new(["x"]).unwrap(), &y).is_err());
    }

    #[test]
    fn deglex_order() {
        let short = Word::from_slice(&[1]);
        let long = Word::from_slice(&[0, 0]);
        assert!(short < long);
        assert!(Word::from_slice(&[0, 1]) < Word::from_slice(&[1, 0]));
        let (_, x, y) = xy();
        let p = &(&x * &y) + &y;
        assert_eq!(p.leading().unwrap().0, &Word::from_slice(&[0, 1]));
        assert_eq!(p.degree(), 2);
    }

    #[test]
    fn duplicate_symbols_rejected() {
        assert!(Alphabet::new(["x", "x"]).is_err());
    }

    #[test]
    fn anti_substitution_reverses() {
        let (_, x, y) = xy();
        let p = &x * &y;
        let swapped = p.anti_substitute(&|s| Some(NcPoly::symbol(s)));
        assert_eq!(swapped, &y * &x);
        let v = p.eval(&|s| int(s as i64 + 2));
        assert_eq!(v, int(6));
    }

    #[test]
    fn coproduct_of_grouplike_product() {
        let a = Alphabet::new(["De", "DeInv"]).unwrap();
        let delta = |s: Symbol| Some(TensorPoly::term(Word::from_slice(&[s]), Word::from_slice(&[s]), int(1)));
        let p = &a.gen("De").unwrap() * &a.gen("DeInv").unwrap();
        let w = Word::from_slice(&[0, 1]);
        assert_eq!(coproduct_extend(&p, &delta, &a).unwrap(), TensorPoly::term(w.clone(), w, int(1)));
        assert_eq!(coproduct_extend(&NcPoly::one(), &delta, &a).unwrap(), TensorPoly::one());
        assert!(coproduct_extend(&p, &|_| None, &a).is_err());
    }

    #[test]
    fn certificate_checks() {
        let (_, x, y) = xy();
        let rel = vec![&(&x * &y) - &(&y * &x)];
        assert!(verify_certificate(&NcPoly::zero(), &rel, &MembershipCertificate::default()));
        let cert = MembershipCertificate {
            summands: vec![Summand { coef: int(1), left: Word::empty(), relation: 0, right: Word::empty() }],
        };
        assert!(verify_certificate(&rel[0], &rel, &cert));
        let mut bad = cert.clone();
        bad.summands[0].coef = int(2);
        assert!(!verify_certificate(&rel[0], &rel, &bad));
        bad.summands[0].relation = 3;
        assert!(!verify_certificate(&rel[0], &rel, &bad));
    }
}
