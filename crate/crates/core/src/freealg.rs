//! Words and noncommutative polynomials over a finite alphabet.

use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::coeffs::RatFunc;
use crate::error::{Error, Result};

/// A finite, ordered set of single-character letters. The declaration order
/// is the letter rank used for term ordering and inversion counting.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    letters: Arc<[char]>,
}

impl Alphabet {
    pub fn new(letters: &[char]) -> Self {
        assert!(letters.len() <= usize::from(u8::MAX), "alphabet too large");
        Alphabet {
            letters: letters.into(),
        }
    }

    /// `{A, B, C}` ranked `B < C < A`.
    pub fn abc() -> Self {
        Self::new(&['B', 'C', 'A'])
    }

    /// `{A, B}` ranked `B < A`.
    pub fn ab() -> Self {
        Self::new(&['B', 'A'])
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letter(&self, name: char) -> Option<Letter> {
        self.letters
            .iter()
            .position(|&c| c == name)
            .map(|i| Letter(i as u8))
    }

    /// Like [`Alphabet::letter`] for letters known to be present.
    pub fn ch(&self, name: char) -> Letter {
        self.letter(name)
            .unwrap_or_else(|| panic!("letter {name} not in alphabet {self:?}"))
    }

    pub fn name(&self, l: Letter) -> char {
        self.letters[usize::from(l.0)]
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.letters.len()).map(|i| Letter(i as u8))
    }

    /// Parses a plain letter string such as `"BCCA"`.
    pub fn word(&self, text: &str) -> Word {
        Word(text.chars().map(|c| self.ch(c)).collect())
    }
}

impl fmt::Debug for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.letters.iter().collect();
        write!(f, "{{{s}}}")
    }
}

/// A letter, as its rank inside an [`Alphabet`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter(pub u8);

/// A finite sequence of letters; the empty word is the identity `I`.
///
/// Ordered by length, then lexicographically by letter rank.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        Word(letters.to_vec())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `l^k` as a word.
    pub fn power(l: Letter, k: usize) -> Word {
        Word(vec![l; k])
    }

    pub fn contains_at(&self, pattern: &[Letter], position: usize) -> bool {
        self.0
            .get(position..position + pattern.len())
            .is_some_and(|s| s == pattern)
    }

    pub fn contains(&self, pattern: &[Letter]) -> bool {
        !pattern.is_empty() && self.0.windows(pattern.len()).any(|w| w == pattern)
    }

    /// Maximal runs `(letter, count)`.
    pub fn runs(&self) -> Vec<(Letter, usize)> {
        let mut out: Vec<(Letter, usize)> = Vec::new();
        for &l in &self.0 {
            match out.last_mut() {
                Some((prev, n)) if *prev == l => *n += 1,
                _ => out.push((l, 1)),
            }
        }
        out
    }

    /// Count of letter pairs `i < j` whose ranks are out of order.
    pub fn inversions(&self) -> usize {
        let mut seen = [0usize; 256];
        let mut inv = 0;
        for &Letter(x) in &self.0 {
            inv += seen[usize::from(x) + 1..].iter().sum::<usize>();
            seen[usize::from(x)] += 1;
        }
        inv
    }

    /// Letter multiset as a count vector.
    pub fn content(&self, alphabet_len: usize) -> Vec<usize> {
        let mut c = vec![0; alphabet_len];
        for l in &self.0 {
            c[usize::from(l.0)] += 1;
        }
        c
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> WordDisplay<'a> {
        WordDisplay {
            word: self,
            alphabet,
        }
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    alphabet: &'a Alphabet,
}

impl fmt::Display for WordDisplay<'_> {
    /// Run-length form such as `B^2*C^3*A`; `I` for the empty word.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "I");
        }
        for (i, (l, n)) in self.word.runs().into_iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{}", self.alphabet.name(l))?;
            if n > 1 {
                write!(f, "^{n}")?;
            }
        }
        Ok(())
    }
}

/// Element of the free algebra: a finitely supported map from words to
/// coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct NCPoly {
    alphabet: Alphabet,
    terms: BTreeMap<Word, RatFunc>,
}

impl NCPoly {
    pub fn zero(alphabet: &Alphabet) -> Self {
        NCPoly {
            alphabet: alphabet.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(alphabet: &Alphabet) -> Self {
        Self::scalar(alphabet, RatFunc::one())
    }

    pub fn scalar(alphabet: &Alphabet, c: RatFunc) -> Self {
        Self::term(alphabet, Word::empty(), c)
    }

    pub fn term(alphabet: &Alphabet, w: Word, c: RatFunc) -> Self {
        let mut p = Self::zero(alphabet);
        p.add_term(w, &c);
        p
    }

    pub fn word(alphabet: &Alphabet, w: Word) -> Self {
        Self::term(alphabet, w, RatFunc::one())
    }

    /// Monomial from a plain letter string, e.g. `NCPoly::monomial(&abc, "BCA")`.
    pub fn monomial(alphabet: &Alphabet, text: &str) -> Self {
        Self::word(alphabet, alphabet.word(text))
    }

    pub fn letter(alphabet: &Alphabet, name: char) -> Self {
        Self::word(alphabet, Word(vec![alphabet.ch(name)]))
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
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

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &RatFunc)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, RatFunc)> {
        self.terms.into_iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn coeff(&self, w: &Word) -> RatFunc {
        self.terms.get(w).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, w: Word, c: &RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    fn check_alphabet(&self, other: &NCPoly) -> Result<()> {
        if self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch {
                left: format!("{:?}", self.alphabet),
                right: format!("{:?}", other.alphabet),
            })
        }
    }

    pub fn try_add(&self, other: &NCPoly) -> Result<NCPoly> {
        self.check_alphabet(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &NCPoly) -> Result<NCPoly> {
        self.check_alphabet(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), &-c);
        }
        Ok(out)
    }

    /// Bilinear extension of concatenation.
    pub fn multiply(&self, other: &NCPoly) -> Result<NCPoly> {
        self.check_alphabet(other)?;
        let mut out = NCPoly::zero(&self.alphabet);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), &(a * b));
            }
        }
        Ok(out)
    }

    /// `[p, q] = pq - qp`.
    pub fn bracket(&self, other: &NCPoly) -> Result<NCPoly> {
        self.multiply(other)?.try_sub(&other.multiply(self)?)
    }

    pub fn scale(&self, k: &RatFunc) -> NCPoly {
        if k.is_zero() {
            return NCPoly::zero(&self.alphabet);
        }
        NCPoly {
            alphabet: self.alphabet.clone(),
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c * k)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> NCPoly {
        let mut acc = NCPoly::one(&self.alphabet);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Multiplies every word on the left by `l` and on the right by `r`.
    pub fn sandwich(&self, l: &Word, r: &Word) -> NCPoly {
        NCPoly {
            alphabet: self.alphabet.clone(),
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (l.concat(w).concat(r), c.clone()))
                .collect(),
        }
    }

    /// Rebuilds the term map applying `f` to every coefficient.
    pub fn map_coeffs<F>(&self, mut f: F) -> Result<NCPoly>
    where
        F: FnMut(&RatFunc) -> Result<RatFunc>,
    {
        let mut out = NCPoly::zero(&self.alphabet);
        for (w, c) in &self.terms {
            out.add_term(w.clone(), &f(c)?);
        }
        Ok(out)
    }
}

impl fmt::Display for NCPoly {
    /// Canonical rendering: terms by degree then rank order, coefficients in
    /// parentheses, e.g. `(q/(1-q))*C^2*A - B`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let word = w.display(&self.alphabet).to_string();
            let body = if w.is_empty() {
                format!("({c})")
            } else if c.is_one() {
                word
            } else if (-c).is_one() {
                format!("-{word}")
            } else {
                format!("({c})*{word}")
            };
            match (i, body.strip_prefix('-')) {
                (0, _) => write!(f, "{body}")?,
                (_, Some(rest)) => write!(f, " - {rest}")?,
                (_, None) => write!(f, " + {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for NCPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NCPoly[{}]", self)
    }
}

impl Add for &NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: &NCPoly) -> NCPoly {
        self.try_add(rhs).expect("alphabet mismatch in +")
    }
}

impl Sub for &NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: &NCPoly) -> NCPoly {
        self.try_sub(rhs).expect("alphabet mismatch in -")
    }
}

impl Mul for &NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: &NCPoly) -> NCPoly {
        self.multiply(rhs).expect("alphabet mismatch in *")
    }
}

impl Add for NCPoly {
    type Output = NCPoly;
    fn add(self, rhs: NCPoly) -> NCPoly {
        &self + &rhs
    }
}

impl Sub for NCPoly {
    type Output = NCPoly;
    fn sub(self, rhs: NCPoly) -> NCPoly {
        &self - &rhs
    }
}

impl Mul for NCPoly {
    type Output = NCPoly;
    fn mul(self, rhs: NCPoly) -> NCPoly {
        &self * &rhs
    }
}

impl Neg for &NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        self.scale(&RatFunc::from_int(-1))
    }
}

impl Neg for NCPoly {
    type Output = NCPoly;
    fn neg(self) -> NCPoly {
        -&self
    }
}

/// Images of the letters of a source alphabet; extends uniquely to a unital
/// algebra map.
#[derive(Clone, Debug)]
pub struct GeneratorMap {
    source: Alphabet,
    target: Alphabet,
    images: Vec<Option<NCPoly>>,
}

impl GeneratorMap {
    pub fn new(source: &Alphabet, target: &Alphabet) -> Self {
        GeneratorMap {
            source: source.clone(),
            target: target.clone(),
            images: vec![None; source.len()],
        }
    }

    pub fn identity(alphabet: &Alphabet) -> Self {
        let mut m = Self::new(alphabet, alphabet);
        for l in alphabet.letters() {
            m.images[usize::from(l.0)] = Some(NCPoly::word(alphabet, Word(vec![l])));
        }
        m
    }

    /// Sets the image of `name`; the image must live over the target alphabet.
    pub fn with(mut self, name: char, image: NCPoly) -> Result<Self> {
        self.set(name, image)?;
        Ok(self)
    }

    pub fn set(&mut self, name: char, image: NCPoly) -> Result<()> {
        if image.alphabet() != &self.target {
            return Err(Error::AlphabetMismatch {
                left: format!("{:?}", self.target),
                right: format!("{:?}", image.alphabet()),
            });
        }
        let l = self.source.letter(name).ok_or(Error::MissingImage(name))?;
        self.images[usize::from(l.0)] = Some(image);
        Ok(())
    }

    pub fn source(&self) -> &Alphabet {
        &self.source
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    pub fn image(&self, name: char) -> Option<&NCPoly> {
        let l = self.source.letter(name)?;
        self.images[usize::from(l.0)].as_ref()
    }

    fn letter_image(&self, l: Letter) -> Result<&NCPoly> {
        self.images[usize::from(l.0)]
            .as_ref()
            .ok_or_else(|| Error::MissingImage(self.source.name(l)))
    }

    pub fn apply_word(&self, w: &Word) -> Result<NCPoly> {
        let mut acc = NCPoly::one(&self.target);
        for &l in w.letters() {
            acc = acc.multiply(self.letter_image(l)?)?;
        }
        Ok(acc)
    }

    pub fn apply(&self, p: &NCPoly) -> Result<NCPoly> {
        if p.alphabet() != &self.source {
            return Err(Error::AlphabetMismatch {
                left: format!("{:?}", self.source),
                right: format!("{:?}", p.alphabet()),
            });
        }
        let mut out = NCPoly::zero(&self.target);
        for (w, c) in p.terms() {
            for (u, d) in self.apply_word(w)?.terms() {
                out.add_term(u.clone(), &(c * d));
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Alphabet {
        Alphabet::abc()
    }
    fn m(s: &str) -> NCPoly {
        NCPoly::monomial(&abc(), s)
    }
    fn sc(c: RatFunc) -> NCPoly {
        NCPoly::scalar(&abc(), c)
    }

    #[test]
    fn multiply_examples() {
        assert_eq!(&m("A") * &m("B"), m("AB"));
        assert_eq!(&(&m("A") + &m("B")) * &m("A"), &m("AA") + &m("BA"));
        let one_minus_q = &RatFunc::one() - &RatFunc::q();
        let x = (&(&m("A").scale(&RatFunc::r()) + &m("B").scale(&RatFunc::s()))
            - &m("C").scale(&RatFunc::q()))
            .scale(&one_minus_q.inv().unwrap());
        assert_eq!(&x * &NCPoly::one(&abc()), x);
    }

    #[test]
    fn bracket_examples() {
        assert!(m("A").bracket(&m("A")).unwrap().is_zero());
        assert_eq!(m("A").bracket(&m("B")).unwrap(), &m("AB") - &m("BA"));
        let s = &m("A").bracket(&m("B")).unwrap() + &m("B").bracket(&m("A")).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        let x = NCPoly::monomial(&Alphabet::ab(), "A");
        assert!(matches!(
            x.multiply(&m("A")),
            Err(Error::AlphabetMismatch { .. })
        ));
        assert!(x.bracket(&m("A")).is_err());
    }

    #[test]
    fn generator_map_examples() {
        let ab = Alphabet::ab();
        let elim = GeneratorMap::new(&abc(), &ab)
            .with('A', NCPoly::monomial(&ab, "A"))
            .unwrap()
            .with('B', NCPoly::monomial(&ab, "B"))
            .unwrap()
            .with(
                'C',
                &NCPoly::monomial(&ab, "AB") - &NCPoly::monomial(&ab, "BA"),
            )
            .unwrap();
        let c_img = &NCPoly::monomial(&ab, "AB") - &NCPoly::monomial(&ab, "BA");
        assert_eq!(elim.apply(&m("CC")).unwrap(), &c_img * &c_img);

        // {A -> sA, B -> B} on AB - qBA - sB
        let (q, s) = (RatFunc::q(), RatFunc::s());
        let scale_a = GeneratorMap::new(&abc(), &abc())
            .with('A', m("A").scale(&s))
            .unwrap()
            .with('B', m("B"))
            .unwrap();
        let rel = &(&m("AB") - &m("BA").scale(&q)) - &m("B").scale(&s);
        let expected = (&(&m("AB") - &m("BA").scale(&q)) - &m("B")).scale(&s);
        assert_eq!(scale_a.apply(&rel).unwrap(), expected);

        let p = &rel + &sc(RatFunc::from_int(3));
        assert_eq!(GeneratorMap::identity(&abc()).apply(&p).unwrap(), p);
    }

    #[test]
    fn missing_image_errors() {
        let map = GeneratorMap::new(&abc(), &abc()).with('A', m("A")).unwrap();
        assert_eq!(map.apply(&m("AB")), Err(Error::MissingImage('B')));
    }

    #[test]
    fn word_order_and_rendering() {
        let a = abc();
        assert!(a.word("B") < a.word("C"));
        assert!(a.word("C") < a.word("A"));
        assert!(a.word("A") < a.word("BB"));
        assert_eq!(a.word("BBCCCA").display(&a).to_string(), "B^2*C^3*A");
        assert_eq!(Word::empty().display(&a).to_string(), "I");
        assert_eq!(a.word("ACB").inversions(), 3);
        assert_eq!(a.word("BCA").inversions(), 0);
        let q = RatFunc::q();
        let p = NCPoly::term(
            &a,
            a.word("CCA"),
            q.checked_div(&(&RatFunc::one() - &q)).unwrap(),
        );
        assert_eq!(p.to_string(), "(q/(1-q))*C^2*A");
        assert_eq!((&m("A") - &m("B")).to_string(), "-B + A");
    }
}
