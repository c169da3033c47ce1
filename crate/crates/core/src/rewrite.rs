//! Reduction systems on the free algebra.
//!
//! A system is a list of concrete rules `W -> f` plus parametric families
//! whose pattern is `prefix · x^k · suffix`. Normal forms are computed by a
//! worklist that always rewrites the largest pending word first, so equal
//! words merge before they are reduced. Termination is guaranteed by the
//! registered metric (total degree, then inversion count by letter rank),
//! which every rule is checked to decrease when the system is built.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use serde::Serialize;

use crate::coeffs::RatFunc;
use crate::error::{Error, Result};
use crate::freealg::{Alphabet, Letter, NCPoly, Word};

/// Reductions per normal-form call before giving up.
pub const STEP_BUDGET: u64 = 10_000_000;

/// A concrete reduction `(W, f)`.
#[derive(Clone, Debug)]
pub struct ReductionRule {
    name: String,
    pattern: Word,
    replacement: NCPoly,
}

impl ReductionRule {
    pub fn new(name: impl Into<String>, pattern: Word, replacement: NCPoly) -> Result<Self> {
        let name = name.into();
        if pattern.is_empty() {
            return Err(Error::InvalidRule {
                rule: name,
                reason: "empty pattern".into(),
            });
        }
        if replacement.support().any(|w| w.contains(pattern.letters())) {
            return Err(Error::InvalidRule {
                rule: name,
                reason: "replacement contains its own pattern".into(),
            });
        }
        Ok(ReductionRule {
            name,
            pattern,
            replacement,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn pattern(&self) -> &Word {
        &self.pattern
    }

    pub fn replacement(&self) -> &NCPoly {
        &self.replacement
    }
}

type FamilyGenerator = dyn Fn(usize) -> NCPoly + Send + Sync;

/// Parametric rules `prefix · x^k · suffix -> g(k)` for `k >= min_k`.
///
/// Occurrences are found by content: `k` is the length of the maximal run of
/// `x` following the prefix, so matching needs no bound on `k`.
pub struct RuleFamily {
    name: String,
    prefix: Word,
    repeated: Letter,
    suffix: Word,
    min_k: usize,
    generator: Arc<FamilyGenerator>,
    cache: RwLock<HashMap<usize, Arc<ReductionRule>>>,
}

impl RuleFamily {
    pub fn new<F>(
        name: impl Into<String>,
        prefix: Word,
        repeated: Letter,
        suffix: Word,
        min_k: usize,
        generator: F,
    ) -> Self
    where
        F: Fn(usize) -> NCPoly + Send + Sync + 'static,
    {
        RuleFamily {
            name: name.into(),
            prefix,
            repeated,
            suffix,
            min_k,
            generator: Arc::new(generator),
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn min_k(&self) -> usize {
        self.min_k
    }

    pub fn pattern(&self, k: usize) -> Word {
        self.prefix
            .concat(&Word::power(self.repeated, k))
            .concat(&self.suffix)
    }

    /// The rule at parameter `k`, built once and cached.
    pub fn instance(&self, k: usize) -> Result<Arc<ReductionRule>> {
        if let Some(r) = self.cache.read().expect("cache lock").get(&k) {
            return Ok(r.clone());
        }
        let rule = Arc::new(ReductionRule::new(
            format!("{}_{}", self.name, k),
            self.pattern(k),
            (self.generator)(k),
        )?);
        self.cache
            .write()
            .expect("cache lock")
            .entry(k)
            .or_insert_with(|| rule.clone());
        Ok(rule)
    }

    /// Parameter of the occurrence starting at `pos`, if any.
    fn match_at(&self, letters: &[Letter], pos: usize) -> Option<usize> {
        let p = self.prefix.letters();
        if letters.get(pos..pos + p.len())? != p {
            return None;
        }
        let start = pos + p.len();
        let k = letters[start..]
            .iter()
            .take_while(|&&l| l == self.repeated)
            .count();
        if k < self.min_k {
            return None;
        }
        let s = self.suffix.letters();
        let at = start + k;
        (letters.get(at..at + s.len())? == s).then_some(k)
    }
}

impl fmt::Debug for RuleFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RuleFamily")
            .field("name", &self.name)
            .field("prefix", &self.prefix)
            .field("repeated", &self.repeated)
            .field("suffix", &self.suffix)
            .field("min_k", &self.min_k)
            .finish()
    }
}

/// Order in which candidate matches are tried inside a word.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Strategy {
    /// Leftmost position first; at a position, concrete rules in declaration
    /// order, then families.
    #[default]
    Leftmost,
    /// Rightmost position first, same rule priority.
    Rightmost,
}

/// The termination metric: `(total degree, inversions)` compared
/// lexicographically, with inversions counted by alphabet rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TerminationMetric;

impl TerminationMetric {
    pub fn measure(&self, w: &Word) -> (usize, usize) {
        (w.len(), w.inversions())
    }

    /// Whether replacing `pattern` by `image` lowers the metric inside every
    /// context. Equal-degree images must permute the same letters, so the
    /// cross inversions with the context are unchanged.
    fn decreases(&self, pattern: &Word, image: &Word, alphabet_len: usize) -> bool {
        if image.len() < pattern.len() {
            return true;
        }
        image.len() == pattern.len()
            && image.content(alphabet_len) == pattern.content(alphabet_len)
            && image.inversions() < pattern.inversions()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub rule: String,
    pub word: String,
    pub position: usize,
}

impl fmt::Display for TraceStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} @ {}/{}", self.rule, self.word, self.position)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum RuleRef {
    Concrete(usize),
    Family(usize, usize),
}

#[derive(Debug)]
pub struct ReductionSystem {
    alphabet: Alphabet,
    rules: Vec<ReductionRule>,
    families: Vec<RuleFamily>,
    metric: TerminationMetric,
}

impl ReductionSystem {
    /// Builds the system, checking the metric on every concrete rule and on
    /// family instances up to `check_k`.
    pub fn new(
        alphabet: &Alphabet,
        rules: Vec<ReductionRule>,
        families: Vec<RuleFamily>,
        check_k: usize,
    ) -> Result<Self> {
        let sys = ReductionSystem {
            alphabet: alphabet.clone(),
            rules,
            families,
            metric: TerminationMetric,
        };
        for rule in &sys.rules {
            sys.check_rule(rule)?;
        }
        for fam in &sys.families {
            for k in fam.min_k..=check_k.max(fam.min_k) {
                sys.check_rule(&*fam.instance(k)?)?;
            }
        }
        Ok(sys)
    }

    fn check_rule(&self, rule: &ReductionRule) -> Result<()> {
        if rule.replacement.alphabet() != &self.alphabet {
            return Err(Error::InvalidRule {
                rule: rule.name.clone(),
                reason: "replacement over a different alphabet".into(),
            });
        }
        for w in rule.replacement.support() {
            if !self.metric.decreases(&rule.pattern, w, self.alphabet.len()) {
                return Err(Error::InvalidRule {
                    rule: rule.name.clone(),
                    reason: format!(
                        "image word {} does not decrease the termination metric",
                        w.display(&self.alphabet)
                    ),
                });
            }
        }
        Ok(())
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> &[ReductionRule] {
        &self.rules
    }

    pub fn families(&self) -> &[RuleFamily] {
        &self.families
    }

    pub fn metric(&self) -> TerminationMetric {
        self.metric
    }

    pub fn rule(&self, name: &str) -> Option<&ReductionRule> {
        self.rules.iter().find(|r| r.name == name)
    }

    pub fn family(&self, name: &str) -> Option<&RuleFamily> {
        self.families.iter().find(|f| f.name == name)
    }

    fn match_at(&self, letters: &[Letter], pos: usize) -> Option<(RuleRef, usize)> {
        for (i, r) in self.rules.iter().enumerate() {
            let p = r.pattern.letters();
            if letters.get(pos..pos + p.len()) == Some(p) {
                return Some((RuleRef::Concrete(i), pos));
            }
        }
        for (i, f) in self.families.iter().enumerate() {
            if let Some(k) = f.match_at(letters, pos) {
                return Some((RuleRef::Family(i, k), pos));
            }
        }
        None
    }

    fn find_match(&self, w: &Word, strategy: Strategy) -> Option<(RuleRef, usize)> {
        let letters = w.letters();
        match strategy {
            Strategy::Leftmost => (0..letters.len()).find_map(|p| self.match_at(letters, p)),
            Strategy::Rightmost => (0..letters.len())
                .rev()
                .find_map(|p| self.match_at(letters, p)),
        }
    }

    fn resolve(&self, r: RuleRef) -> Result<RuleHandle<'_>> {
        Ok(match r {
            RuleRef::Concrete(i) => RuleHandle::Borrowed(&self.rules[i]),
            RuleRef::Family(i, k) => RuleHandle::Shared(self.families[i].instance(k)?),
        })
    }

    /// True iff no rule pattern (family instances included) occurs in `w`.
    pub fn is_irreducible(&self, w: &Word) -> bool {
        self.find_match(w, Strategy::Leftmost).is_none()
    }

    pub fn normal_form(&self, p: &NCPoly) -> Result<NCPoly> {
        self.normal_form_with(p, Strategy::Leftmost, None)
    }

    pub fn normal_form_traced(&self, p: &NCPoly) -> Result<(NCPoly, Vec<TraceStep>)> {
        let mut trace = Vec::new();
        let nf = self.normal_form_with(p, Strategy::Leftmost, Some(&mut trace))?;
        Ok((nf, trace))
    }

    pub fn normal_form_with(
        &self,
        p: &NCPoly,
        strategy: Strategy,
        mut trace: Option<&mut Vec<TraceStep>>,
    ) -> Result<NCPoly> {
        if p.alphabet() != &self.alphabet {
            return Err(Error::AlphabetMismatch {
                left: format!("{:?}", self.alphabet),
                right: format!("{:?}", p.alphabet()),
            });
        }
        // keyed so every reduction moves mass to strictly smaller keys
        let mut pending: BTreeMap<(usize, usize, Word), RatFunc> = BTreeMap::new();
        for (w, c) in p.terms() {
            pending.insert((w.len(), w.inversions(), w.clone()), c.clone());
        }
        let mut out = NCPoly::zero(&self.alphabet);
        let mut steps = 0u64;
        while let Some(((_, _, w), c)) = pending.pop_last() {
            let Some((rref, pos)) = self.find_match(&w, strategy) else {
                out.add_term(w, &c);
                continue;
            };
            steps += 1;
            if steps > STEP_BUDGET {
                return Err(Error::StepBudgetExceeded(STEP_BUDGET));
            }
            let rule = self.resolve(rref)?;
            let rule = rule.get();
            if let Some(t) = trace.as_deref_mut() {
                t.push(TraceStep {
                    rule: rule.name.clone(),
                    word: w.display(&self.alphabet).to_string(),
                    position: pos,
                });
            }
            let left = Word::from_letters(&w.letters()[..pos]);
            let right = Word::from_letters(&w.letters()[pos + rule.pattern.len()..]);
            let before = self.metric.measure(&w);
            for (u, d) in rule.replacement.terms() {
                let nw = left.concat(u).concat(&right);
                debug_assert!(
                    self.metric.measure(&nw) < before,
                    "termination metric did not decrease under {}",
                    rule.name
                );
                let key = (nw.len(), nw.inversions(), nw);
                let add = &c * d;
                match pending.get_mut(&key) {
                    Some(slot) => {
                        *slot += &add;
                        if slot.is_zero() {
                            pending.remove(&key);
                        }
                    }
                    None => {
                        pending.insert(key, add);
                    }
                }
            }
        }
        Ok(out)
    }

    /// All overlap and inclusion ambiguities among the concrete rules and the
    /// family instances with parameter at most `k_max`.
    pub fn enumerate_ambiguities(&self, k_max: usize) -> Result<Vec<Ambiguity>> {
        let mut instances: Vec<(Arc<ReductionRule>, Option<usize>)> = self
            .rules
            .iter()
            .map(|r| (Arc::new(r.clone()), None))
            .collect();
        for f in &self.families {
            for k in f.min_k..=k_max {
                instances.push((f.instance(k)?, Some(k)));
            }
        }
        let mut out = Vec::new();
        for (i, (lam, lk)) in instances.iter().enumerate() {
            for (j, (tau, tk)) in instances.iter().enumerate() {
                let wl = lam.pattern.letters();
                let wt = tau.pattern.letters();
                let k = lk.or(*tk);
                for l2 in 1..wl.len().min(wt.len()) {
                    if wl[wl.len() - l2..] == wt[..l2] {
                        out.push(Ambiguity {
                            kind: AmbiguityKind::Overlap,
                            first: lam.clone(),
                            second: tau.clone(),
                            w1: Word::from_letters(&wl[..wl.len() - l2]),
                            w2: Word::from_letters(&wt[..l2]),
                            w3: Word::from_letters(&wt[l2..]),
                            k,
                        });
                    }
                }
                if i != j && wl.len() <= wt.len() {
                    for pos in 0..=wt.len() - wl.len() {
                        if wt[pos..pos + wl.len()] == *wl {
                            out.push(Ambiguity {
                                kind: AmbiguityKind::Inclusion,
                                first: lam.clone(),
                                second: tau.clone(),
                                w1: Word::from_letters(&wt[..pos]),
                                w2: Word::from_letters(wl),
                                w3: Word::from_letters(&wt[pos + wl.len()..]),
                                k,
                            });
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Reduces both sides of the ambiguity to normal form and compares.
    pub fn check_resolvable(&self, a: &Ambiguity) -> Result<ResolvabilityReport> {
        let (left_start, right_start) = match a.kind {
            AmbiguityKind::Overlap => (
                a.first.replacement.sandwich(&Word::empty(), &a.w3),
                a.second.replacement.sandwich(&a.w1, &Word::empty()),
            ),
            AmbiguityKind::Inclusion => (
                a.second.replacement.clone(),
                a.first.replacement.sandwich(&a.w1, &a.w3),
            ),
        };
        let mut left_trace = Vec::new();
        let mut right_trace = Vec::new();
        let left = self.normal_form_with(&left_start, Strategy::Leftmost, Some(&mut left_trace))?;
        let right =
            self.normal_form_with(&right_start, Strategy::Leftmost, Some(&mut right_trace))?;
        Ok(ResolvabilityReport {
            ambiguity: a.clone(),
            resolved: left == right,
            left,
            right,
            left_trace,
            right_trace,
        })
    }
}

enum RuleHandle<'a> {
    Borrowed(&'a ReductionRule),
    Shared(Arc<ReductionRule>),
}

impl RuleHandle<'_> {
    fn get(&self) -> &ReductionRule {
        match self {
            RuleHandle::Borrowed(r) => r,
            RuleHandle::Shared(r) => r,
        }
    }
}

/// The linear map fixing every word except `word`, whose occurrence of the
/// rule pattern at `position` is replaced by the rule's image.
pub fn apply_reduction(
    p: &NCPoly,
    word: &Word,
    rule: &ReductionRule,
    position: usize,
) -> Result<NCPoly> {
    if !word.contains_at(rule.pattern.letters(), position) {
        return Err(Error::PatternMismatch {
            rule: rule.name.clone(),
            word: word.display(p.alphabet()).to_string(),
            position,
        });
    }
    let c = p.coeff(word);
    let mut out = p.clone();
    if c.is_zero() {
        return Ok(out);
    }
    out.add_term(word.clone(), &-&c);
    let left = Word::from_letters(&word.letters()[..position]);
    let right = Word::from_letters(&word.letters()[position + rule.pattern.len()..]);
    for (u, d) in rule.replacement.terms() {
        out.add_term(left.concat(u).concat(&right), &(&c * d));
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum AmbiguityKind {
    Overlap,
    Inclusion,
}

/// `(lambda, tau, W1, W2, W3)`. Overlap: `W_lambda = W1 W2`,
/// `W_tau = W2 W3`. Inclusion: `W_lambda = W2`, `W_tau = W1 W2 W3`.
#[derive(Debug, Clone)]
pub struct Ambiguity {
    pub kind: AmbiguityKind,
    pub first: Arc<ReductionRule>,
    pub second: Arc<ReductionRule>,
    pub w1: Word,
    pub w2: Word,
    pub w3: Word,
    pub k: Option<usize>,
}

impl Ambiguity {
    pub fn label(&self, alphabet: &Alphabet) -> String {
        format!(
            "({}, {}, {}, {}, {})",
            self.first.name,
            self.second.name,
            self.w1.display(alphabet),
            self.w2.display(alphabet),
            self.w3.display(alphabet)
        )
    }
}

#[derive(Debug, Clone)]
pub struct ResolvabilityReport {
    pub ambiguity: Ambiguity,
    pub left: NCPoly,
    pub right: NCPoly,
    pub resolved: bool,
    pub left_trace: Vec<TraceStep>,
    pub right_trace: Vec<TraceStep>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn abc() -> Alphabet {
        Alphabet::abc()
    }

    /// Single rule `AB -> BA` over `{A, B, C}`.
    fn swap_system() -> ReductionSystem {
        let a = abc();
        let rule = ReductionRule::new("swap", a.word("AB"), NCPoly::monomial(&a, "BA")).unwrap();
        ReductionSystem::new(&a, vec![rule], vec![], 4).unwrap()
    }

    #[test]
    fn rule_validation() {
        let a = abc();
        assert!(ReductionRule::new("e", Word::empty(), NCPoly::zero(&a)).is_err());
        assert!(ReductionRule::new("loop", a.word("AB"), NCPoly::monomial(&a, "CAB")).is_err());
    }

    #[test]
    fn metric_rejects_growing_rules() {
        let a = abc();
        // CA -> AC raises inversions under B < C < A
        let bad = ReductionRule::new("bad", a.word("CA"), NCPoly::monomial(&a, "AC")).unwrap();
        assert!(matches!(
            ReductionSystem::new(&a, vec![bad], vec![], 1),
            Err(Error::InvalidRule { .. })
        ));
    }

    #[test]
    fn normal_form_sorts_letters() {
        let sys = swap_system();
        let a = abc();
        let nf = sys.normal_form(&NCPoly::monomial(&a, "AABAB")).unwrap();
        assert_eq!(nf, NCPoly::monomial(&a, "BBAAA"));
    }

    #[test]
    fn apply_reduction_position_checked() {
        let sys = swap_system();
        let a = abc();
        let p = NCPoly::monomial(&a, "CAB");
        let rule = &sys.rules()[0];
        let w = a.word("CAB");
        assert_eq!(
            apply_reduction(&p, &w, rule, 1).unwrap(),
            NCPoly::monomial(&a, "CBA")
        );
        assert!(matches!(
            apply_reduction(&p, &w, rule, 0),
            Err(Error::PatternMismatch { .. })
        ));
    }

    #[test]
    fn family_matching_reads_k_from_word() {
        let a = abc();
        let (b, c, aa) = (a.ch('B'), a.ch('C'), a.ch('A'));
        let alpha = a.clone();
        let fam = RuleFamily::new("t", Word(vec![b]), c, Word(vec![aa]), 1, move |k| {
            NCPoly::word(&alpha, Word::power(c, k + 1))
        });
        let w = a.word("CBCCCCA");
        assert_eq!(fam.match_at(w.letters(), 1), Some(4));
        assert_eq!(fam.match_at(w.letters(), 0), None);
        assert_eq!(fam.match_at(a.word("BA").letters(), 0), None);
        let sys = ReductionSystem::new(&a, vec![], vec![fam], 3).unwrap();
        assert!(!sys.is_irreducible(&a.word("BCCCCCCCA")));
        assert!(sys.is_irreducible(&a.word("CCAB")));
    }

    #[test]
    fn swap_system_overlaps() {
        // AB has no self-overlap
        assert!(swap_system().enumerate_ambiguities(3).unwrap().is_empty());
    }
}
