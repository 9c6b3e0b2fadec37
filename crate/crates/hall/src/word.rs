//! Formal words in a double algebra: plus letters, minus letters, and group-like
//! K elements over a fixed symmetric pairing.
//!
//! A word normalizes to triangular form (minus letters, then plus letters, then a
//! single K) using three rewrite families: K elements slide to the right end
//! picking up v-power twists, paired plus/minus letters straighten via the
//! EF rule, and letters declared to commute swap freely.  Pairs with no declared
//! rule stay in place, so formal identities that depend only on declared
//! relations normalize to a syntactic normal form.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use exact::{IMat, Laurent, RatFunc};

use crate::isoclass::IsoClass;

pub type LetterId = usize;

/// Which half of the double algebra a letter lives in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Side {
    Plus,
    Minus,
}

/// What a letter evaluates to in the Hall model, if anything.
#[derive(Clone, Debug)]
pub enum LetterEval {
    /// The class of the simple at a quiver vertex.
    Simple(usize),
    /// A fixed isomorphism class.
    Class(IsoClass),
    /// Purely formal: identities involving it must close syntactically.
    Abstract,
}

#[derive(Clone, Debug)]
pub struct LetterSpec {
    pub label: String,
    pub side: Side,
    /// Class in the K-lattice; twists against K elements read the pairing
    /// of this vector, with the sign flipped on the minus side.
    pub class: Vec<i64>,
    pub eval: LetterEval,
    /// Opposite-side partner subject to the EF straightening rule.
    pub pair: Option<LetterId>,
    /// Opposite-side letters this one commutes with exactly.
    pub commutes: BTreeSet<LetterId>,
}

/// Coefficient convention for the EF rule.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Flavor {
    /// E F = F E + (K - K^{-1}) / (v - v^{-1}).
    QuantumGroup,
    /// u+ u- = u- u+ + (K - K^{-1}) / (1 - v^2).
    HallDouble,
}

pub struct Presentation {
    flavor: Flavor,
    rank: usize,
    sym: IMat,
    letters: Vec<LetterSpec>,
}

impl Presentation {
    fn base(flavor: Flavor, sym: IMat, plus_label: &dyn Fn(usize) -> String, minus_label: &dyn Fn(usize) -> String) -> Self {
        assert_eq!(sym.rows(), sym.cols());
        let rank = sym.rows();
        let mut letters = Vec::with_capacity(2 * rank);
        for v in 0..rank {
            let mut class = vec![0i64; rank];
            class[v] = 1;
            letters.push(LetterSpec {
                label: plus_label(v),
                side: Side::Plus,
                class,
                eval: LetterEval::Simple(v),
                pair: Some(rank + v),
                commutes: (0..rank).filter(|&u| u != v).map(|u| rank + u).collect(),
            });
        }
        for v in 0..rank {
            let mut class = vec![0i64; rank];
            class[v] = 1;
            letters.push(LetterSpec {
                label: minus_label(v),
                side: Side::Minus,
                class,
                eval: LetterEval::Simple(v),
                pair: Some(v),
                commutes: (0..rank).filter(|&u| u != v).collect(),
            });
        }
        Presentation { flavor, rank, sym, letters }
    }

    /// Chevalley generators E_v, F_v over a symmetrized Cartan pairing.
    pub fn quantum_group(sym: IMat) -> Self {
        Self::base(Flavor::QuantumGroup, sym, &|v| format!("E{v}"), &|v| format!("F{v}"))
    }

    /// Simple Hall generators u+_v, u-_v over the symmetrized Euler pairing.
    pub fn hall_double(sym: IMat) -> Self {
        Self::base(Flavor::HallDouble, sym, &|v| format!("u+{v}"), &|v| format!("u-{v}"))
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn sym(&self) -> &IMat {
        &self.sym
    }

    /// Plus letter at vertex v.
    pub fn e(&self, v: usize) -> LetterId {
        assert!(v < self.rank);
        v
    }

    /// Minus letter at vertex v.
    pub fn f(&self, v: usize) -> LetterId {
        assert!(v < self.rank);
        self.rank + v
    }

    pub fn letter(&self, id: LetterId) -> &LetterSpec {
        &self.letters[id]
    }

    pub fn letter_count(&self) -> usize {
        self.letters.len()
    }

    /// Adds a non-generator letter.  Declared commutations are symmetrized.
    /// A paired letter must name an opposite-side partner with the same class.
    pub fn add_letter(
        &mut self,
        label: &str,
        side: Side,
        class: Vec<i64>,
        eval: LetterEval,
        pair: Option<LetterId>,
        commutes: &[LetterId],
    ) -> LetterId {
        assert_eq!(class.len(), self.rank);
        let id = self.letters.len();
        if let Some(p) = pair {
            assert!(self.letters[p].side != side);
            assert_eq!(self.letters[p].class, class);
            assert!(self.letters[p].pair.is_none());
            self.letters[p].pair = Some(id);
        }
        for &c in commutes {
            assert!(self.letters[c].side != side);
            self.letters[c].commutes.insert(id);
        }
        self.letters.push(LetterSpec {
            label: label.to_string(),
            side,
            class,
            eval,
            pair,
            commutes: commutes.iter().copied().collect(),
        });
        id
    }

    pub fn pairing(&self, a: &[i64], b: &[i64]) -> i64 {
        let sb = self.sym.mul_vec(b);
        a.iter().zip(sb.iter()).map(|(x, y)| x * y).sum()
    }

    fn ef_coeff(&self) -> RatFunc {
        match self.flavor {
            Flavor::QuantumGroup => RatFunc::ratio(Laurent::one(), Laurent::v_pow(1).sub(&Laurent::v_pow(-1))),
            Flavor::HallDouble => RatFunc::ratio(Laurent::one(), Laurent::one().sub(&Laurent::v_pow(2))),
        }
    }
}

/// One symbol in a word: a letter or a group-like K indexed by a lattice vector.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Wl {
    L(LetterId),
    K(Vec<i64>),
}

/// Formal linear combination of words with rational-function coefficients.
#[derive(Clone, Debug)]
pub struct DoubleWord {
    terms: Vec<(Vec<Wl>, RatFunc)>,
}

impl DoubleWord {
    pub fn zero() -> Self {
        DoubleWord { terms: Vec::new() }
    }

    pub fn one() -> Self {
        DoubleWord { terms: vec![(Vec::new(), RatFunc::one())] }
    }

    pub fn letter(id: LetterId) -> Self {
        DoubleWord { terms: vec![(vec![Wl::L(id)], RatFunc::one())] }
    }

    pub fn k(mu: Vec<i64>) -> Self {
        DoubleWord { terms: vec![(vec![Wl::K(mu)], RatFunc::one())] }
    }

    pub fn from_terms(terms: Vec<(Vec<Wl>, RatFunc)>) -> Self {
        DoubleWord { terms }
    }

    pub fn terms(&self) -> &[(Vec<Wl>, RatFunc)] {
        &self.terms
    }

    pub fn add(&self, other: &DoubleWord) -> DoubleWord {
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        DoubleWord { terms }
    }

    pub fn neg(&self) -> DoubleWord {
        DoubleWord { terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, other: &DoubleWord) -> DoubleWord {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &RatFunc) -> DoubleWord {
        DoubleWord { terms: self.terms.iter().map(|(w, k)| (w.clone(), k.mul(c))).collect() }
    }

    pub fn scale_vpow(&self, k: i64) -> DoubleWord {
        self.scale(&RatFunc::from(Laurent::v_pow(k)))
    }

    pub fn mul(&self, other: &DoubleWord) -> DoubleWord {
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend(w2.iter().cloned());
                terms.push((w, c1.mul(c2)));
            }
        }
        DoubleWord { terms }
    }

    /// x y - v^a y x.
    pub fn skew(x: &DoubleWord, y: &DoubleWord, a: i64) -> DoubleWord {
        x.mul(y).sub(&y.mul(x).scale_vpow(a))
    }

    /// Iterated skew bracket, all levels with the same exponent.
    /// Left nesting folds [[x1,x2],x3]; right nesting folds [x1,[x2,x3]].
    pub fn iterated_skew(items: &[DoubleWord], a: i64, nesting: crate::hallalg::Nesting) -> DoubleWord {
        assert!(!items.is_empty());
        match nesting {
            crate::hallalg::Nesting::Left => {
                let mut acc = items[0].clone();
                for it in &items[1..] {
                    acc = Self::skew(&acc, it, a);
                }
                acc
            }
            crate::hallalg::Nesting::Right => {
                let mut acc = items[items.len() - 1].clone();
                for it in items[..items.len() - 1].iter().rev() {
                    acc = Self::skew(it, &acc, a);
                }
                acc
            }
        }
    }
}

/// Normal-form key: straightened letter word plus the trailing K exponent.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct TKey {
    pub word: Vec<LetterId>,
    pub mu: Vec<i64>,
}

/// Normalized element: coefficients on normal-form keys.
#[derive(Clone, Debug)]
pub struct Triang {
    terms: BTreeMap<TKey, RatFunc>,
}

impl Triang {
    pub fn zero() -> Self {
        Triang { terms: BTreeMap::new() }
    }

    pub fn terms(&self) -> &BTreeMap<TKey, RatFunc> {
        &self.terms
    }

    fn push(&mut self, key: TKey, coeff: RatFunc) {
        let entry = self.terms.entry(key.clone()).or_insert_with(RatFunc::zero);
        *entry = entry.add(&coeff);
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Triang) -> Triang {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.push(k.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Triang {
        Triang { terms: self.terms.iter().map(|(k, c)| (k.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, other: &Triang) -> Triang {
        self.add(&other.neg())
    }

    pub fn is_syntactically_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Rebuilds a word representative (minus/plus letters in key order, then K).
    pub fn to_word(&self) -> DoubleWord {
        let terms = self
            .terms
            .iter()
            .map(|(key, c)| {
                let mut w: Vec<Wl> = key.word.iter().map(|&id| Wl::L(id)).collect();
                if key.mu.iter().any(|&x| x != 0) {
                    w.push(Wl::K(key.mu.clone()));
                }
                (w, c.clone())
            })
            .collect();
        DoubleWord::from_terms(terms)
    }

    pub fn display(&self, pres: &Presentation) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (key, c) in &self.terms {
            let mut word: Vec<String> = key.word.iter().map(|&id| pres.letter(id).label.clone()).collect();
            if key.mu.iter().any(|&x| x != 0) {
                word.push(format!("K{:?}", key.mu));
            }
            if word.is_empty() {
                word.push("1".to_string());
            }
            parts.push(format!("({}) {}", c, word.join(" ")));
        }
        parts.join(" + ")
    }
}

impl fmt::Display for TKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}|{:?}", self.word, self.mu)
    }
}

/// Straightens a word combination into triangular normal form.
///
/// Rewrites, applied at the leftmost applicable position until none applies:
/// drop K(0); merge adjacent K's; slide K right past a letter with a v-power
/// twist; straighten an adjacent plus-minus pair by the EF rule when paired,
/// or swap it when a commutation is declared.  Undeclared plus-minus pairs are
/// left in place.
pub fn normalize(dw: &DoubleWord, pres: &Presentation) -> Triang {
    let mut out = Triang::zero();
    let mut work: Vec<(Vec<Wl>, RatFunc)> = dw.terms().to_vec();
    while let Some((word, coeff)) = work.pop() {
        if coeff.is_zero() {
            continue;
        }
        let mut applied = false;
        for i in 0..word.len() {
            match &word[i] {
                Wl::K(mu) => {
                    if mu.iter().all(|&x| x == 0) {
                        let mut w = word.clone();
                        w.remove(i);
                        work.push((w, coeff.clone()));
                        applied = true;
                        break;
                    }
                    if i + 1 < word.len() {
                        match &word[i + 1] {
                            Wl::K(nu) => {
                                let sum: Vec<i64> = mu.iter().zip(nu.iter()).map(|(a, b)| a + b).collect();
                                let mut w = word.clone();
                                w[i] = Wl::K(sum);
                                w.remove(i + 1);
                                work.push((w, coeff.clone()));
                                applied = true;
                                break;
                            }
                            Wl::L(id) => {
                                let spec = pres.letter(*id);
                                let sign = match spec.side {
                                    Side::Plus => 1,
                                    Side::Minus => -1,
                                };
                                let tw = sign * pres.pairing(mu, &spec.class);
                                let mut w = word.clone();
                                w.swap(i, i + 1);
                                work.push((w, coeff.mul(&RatFunc::from(Laurent::v_pow(tw)))));
                                applied = true;
                                break;
                            }
                        }
                    }
                }
                Wl::L(id) => {
                    if i + 1 < word.len() {
                        if let Wl::L(next) = &word[i + 1] {
                            let a = pres.letter(*id);
                            let b = pres.letter(*next);
                            if a.side == Side::Plus && b.side == Side::Minus {
                                if a.pair == Some(*next) {
                                    let mut swapped = word.clone();
                                    swapped.swap(i, i + 1);
                                    work.push((swapped, coeff.clone()));
                                    let c = pres.ef_coeff();
                                    let mut kpos = word.clone();
                                    kpos[i] = Wl::K(a.class.clone());
                                    kpos.remove(i + 1);
                                    work.push((kpos, coeff.mul(&c)));
                                    let mut kneg = word.clone();
                                    kneg[i] = Wl::K(a.class.iter().map(|x| -x).collect());
                                    kneg.remove(i + 1);
                                    work.push((kneg, coeff.mul(&c).neg()));
                                    applied = true;
                                    break;
                                }
                                if a.commutes.contains(next) {
                                    let mut w = word.clone();
                                    w.swap(i, i + 1);
                                    work.push((w, coeff.clone()));
                                    applied = true;
                                    break;
                                }
                            }
                        }
                    }
                }
            }
        }
        if applied {
            continue;
        }
        let mut letters = Vec::new();
        let mut mu = vec![0i64; pres.rank()];
        for (pos, wl) in word.iter().enumerate() {
            match wl {
                Wl::L(id) => letters.push(*id),
                Wl::K(m) => {
                    assert_eq!(pos, word.len() - 1, "trailing K invariant");
                    mu = m.clone();
                }
            }
        }
        out.push(TKey { word: letters, mu }, coeff);
    }
    out
}

/// Algebra endomorphism given by images of letters and a K-lattice matrix.
#[derive(Clone)]
pub struct HomOp {
    img: Vec<DoubleWord>,
    k_mat: IMat,
}

impl HomOp {
    pub fn identity(pres: &Presentation) -> Self {
        HomOp {
            img: (0..pres.letter_count()).map(DoubleWord::letter).collect(),
            k_mat: IMat::identity(pres.rank()),
        }
    }

    pub fn new(img: Vec<DoubleWord>, k_mat: IMat) -> Self {
        HomOp { img, k_mat }
    }

    pub fn k_mat(&self) -> &IMat {
        &self.k_mat
    }

    pub fn set_image(&mut self, id: LetterId, w: DoubleWord) {
        self.img[id] = w;
    }

    pub fn image(&self, id: LetterId) -> &DoubleWord {
        &self.img[id]
    }

    /// Substitutes letter images and transports K exponents; no normalization.
    pub fn apply_word(&self, dw: &DoubleWord) -> DoubleWord {
        let mut out = DoubleWord::zero();
        for (word, coeff) in dw.terms() {
            let mut acc = DoubleWord::from_terms(vec![(Vec::new(), coeff.clone())]);
            for wl in word {
                let factor = match wl {
                    Wl::L(id) => self.img[*id].clone(),
                    Wl::K(mu) => DoubleWord::k(self.k_mat.mul_vec(mu)),
                };
                acc = acc.mul(&factor);
            }
            out = out.add(&acc);
        }
        out
    }

    pub fn apply(&self, dw: &DoubleWord, pres: &Presentation) -> Triang {
        normalize(&self.apply_word(dw), pres)
    }

    /// outer after inner; images are compressed through normal form.
    pub fn compose(outer: &HomOp, inner: &HomOp, pres: &Presentation) -> HomOp {
        let img = inner
            .img
            .iter()
            .map(|w| normalize(&outer.apply_word(w), pres).to_word())
            .collect();
        HomOp { img, k_mat: outer.k_mat.mul(&inner.k_mat) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hallalg::Nesting;

    fn a2_sym() -> IMat {
        IMat::from_rows(&[vec![2, -1], vec![-1, 2]])
    }

    #[test]
    fn ef_rule_quantum_group() {
        let pres = Presentation::quantum_group(a2_sym());
        let e0 = DoubleWord::letter(pres.e(0));
        let f0 = DoubleWord::letter(pres.f(0));
        let lhs = e0.mul(&f0).sub(&f0.mul(&e0));
        let coeff = RatFunc::ratio(Laurent::one(), Laurent::v_pow(1).sub(&Laurent::v_pow(-1)));
        let rhs = DoubleWord::k(vec![1, 0]).sub(&DoubleWord::k(vec![-1, 0])).scale(&coeff);
        let diff = normalize(&lhs.sub(&rhs), &pres);
        assert!(diff.is_syntactically_zero(), "{}", diff.display(&pres));
    }

    #[test]
    fn mixed_ef_commutes() {
        let pres = Presentation::quantum_group(a2_sym());
        let e0 = DoubleWord::letter(pres.e(0));
        let f1 = DoubleWord::letter(pres.f(1));
        let diff = normalize(&e0.mul(&f1).sub(&f1.mul(&e0)), &pres);
        assert!(diff.is_syntactically_zero());
    }

    #[test]
    fn k_twist_moves_right() {
        let pres = Presentation::quantum_group(a2_sym());
        let w = DoubleWord::k(vec![1, 0]).mul(&DoubleWord::letter(pres.e(0)));
        let t = normalize(&w, &pres);
        assert_eq!(t.terms().len(), 1);
        let (key, c) = t.terms().iter().next().unwrap();
        assert_eq!(key.word, vec![pres.e(0)]);
        assert_eq!(key.mu, vec![1, 0]);
        let expect = RatFunc::from(Laurent::v_pow(2));
        assert!(c.sub(&expect).is_zero());
    }

    #[test]
    fn k_twist_minus_side_inverts() {
        let pres = Presentation::quantum_group(a2_sym());
        let w = DoubleWord::k(vec![0, 1]).mul(&DoubleWord::letter(pres.f(0)));
        let t = normalize(&w, &pres);
        let (_, c) = t.terms().iter().next().unwrap();
        let expect = RatFunc::from(Laurent::v_pow(1));
        assert!(c.sub(&expect).is_zero());
    }

    #[test]
    fn normalize_is_projection() {
        let pres = Presentation::quantum_group(a2_sym());
        let e0 = DoubleWord::letter(pres.e(0));
        let e1 = DoubleWord::letter(pres.e(1));
        let f0 = DoubleWord::letter(pres.f(0));
        let w = e0.mul(&e1).mul(&f0).mul(&DoubleWord::k(vec![1, 1])).mul(&f0);
        let t1 = normalize(&w, &pres);
        let t2 = normalize(&t1.to_word(), &pres);
        let diff = t1.sub(&t2);
        assert!(diff.is_syntactically_zero());
    }

    #[test]
    fn hall_double_ef_coefficient() {
        let pres = Presentation::hall_double(a2_sym());
        let p0 = DoubleWord::letter(pres.e(0));
        let m0 = DoubleWord::letter(pres.f(0));
        let lhs = p0.mul(&m0).sub(&m0.mul(&p0));
        let coeff = RatFunc::ratio(Laurent::one(), Laurent::one().sub(&Laurent::v_pow(2)));
        let rhs = DoubleWord::k(vec![1, 0]).sub(&DoubleWord::k(vec![-1, 0])).scale(&coeff);
        let diff = normalize(&lhs.sub(&rhs), &pres);
        assert!(diff.is_syntactically_zero(), "{}", diff.display(&pres));
    }

    #[test]
    fn abstract_letter_blocks() {
        let mut pres = Presentation::quantum_group(a2_sym());
        let x = pres.add_letter("X", Side::Plus, vec![1, 1], LetterEval::Abstract, None, &[]);
        let w = DoubleWord::letter(x).mul(&DoubleWord::letter(pres.f(0)));
        let t = normalize(&w, &pres);
        assert_eq!(t.terms().len(), 1);
        let key = t.terms().keys().next().unwrap();
        assert_eq!(key.word, vec![x, pres.f(0)]);
    }

    #[test]
    fn homop_compose_tracks_k() {
        let pres = Presentation::quantum_group(a2_sym());
        let mut h = HomOp::identity(&pres);
        h.set_image(pres.e(0), DoubleWord::letter(pres.e(1)));
        h.set_image(pres.e(1), DoubleWord::letter(pres.e(0)));
        h.set_image(pres.f(0), DoubleWord::letter(pres.f(1)));
        h.set_image(pres.f(1), DoubleWord::letter(pres.f(0)));
        let swap = IMat::from_rows(&[vec![0, 1], vec![1, 0]]);
        let h = HomOp::new(
            (0..pres.letter_count())
                .map(|id| h.image(id).clone())
                .collect(),
            swap,
        );
        let hh = HomOp::compose(&h, &h, &pres);
        assert!(hh.k_mat().is_identity());
        let img = normalize(hh.image(pres.e(0)), &pres);
        let expect = normalize(&DoubleWord::letter(pres.e(0)), &pres);
        assert!(img.sub(&expect).is_syntactically_zero());
    }

    #[test]
    fn skew_bracket_nestings_differ() {
        let pres = Presentation::quantum_group(a2_sym());
        let items: Vec<DoubleWord> = vec![
            DoubleWord::letter(pres.e(0)),
            DoubleWord::letter(pres.e(0)),
            DoubleWord::letter(pres.e(1)),
        ];
        let l = normalize(&DoubleWord::iterated_skew(&items, 1, Nesting::Left), &pres);
        let r = normalize(&DoubleWord::iterated_skew(&items, 1, Nesting::Right), &pres);
        assert!(!l.sub(&r).is_syntactically_zero());
    }
}
