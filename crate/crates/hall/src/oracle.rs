//! Zero test for normalized words, evaluated in the Hall model of the quiver.
//!
//! A triangular element splits per K-exponent into a pairing matrix between
//! minus-word values and plus-word values.  Plus words evaluate by folding Hall
//! multiplication; minus words evaluate through the identification of the minus
//! half with the same Hall algebra, with a per-letter scalar determined by the
//! presentation flavor.  Coefficients on distinct K-exponents are independent,
//! as are distinct (minus class, plus class) pairs, so the element vanishes
//! exactly when every accumulated coefficient does.
//!
//! Two certification modes: sampling at a user-supplied list of prime powers,
//! or exact certification from a degree bound.  Every evaluated coefficient is
//! a Laurent polynomial in v with bounded exponents; writing it at v = sqrt(q)
//! as A(q) + sqrt(q) B(q) with q prime, vanishing at more primes than
//! deg A, deg B forces the polynomial to vanish identically, so sampling the
//! first (bound/2 + 2) primes is a proof, not a heuristic.

use std::collections::HashMap;
use std::sync::RwLock;

use exact::QSqrt;
use num_bigint::BigInt;

use crate::hallalg::{HallCtx, HallElement};
use crate::isoclass::IsoClass;
use crate::word::{Flavor, LetterEval, LetterId, Presentation, Side, Triang};
use crate::{HallError, BRUTE_Q};

/// How a zero claim gets certified.
#[derive(Clone, Debug)]
pub enum OracleMode {
    /// Evaluate at each listed ground-field size; square sizes are rejected.
    Probabilistic(Vec<i64>),
    /// Derive a degree bound and evaluate at enough primes to certify.
    Exact,
}

impl OracleMode {
    pub fn label(&self) -> &'static str {
        match self {
            OracleMode::Probabilistic(_) => "probabilistic",
            OracleMode::Exact => "exact",
        }
    }
}

#[derive(Clone, Debug)]
pub enum OracleOutcome {
    /// The difference normalized to the empty combination.
    SyntacticZero,
    /// Zero at every sampled ground-field size.
    ZeroSampled(Vec<i64>),
    /// Zero at enough primes to exceed the degree bound.
    ZeroExact { primes: usize, degree_bound: i64 },
    /// A nonzero coefficient at some ground-field size.
    Nonzero { q: i64, detail: String },
}

impl OracleOutcome {
    pub fn passed(&self) -> bool {
        !matches!(self, OracleOutcome::Nonzero { .. })
    }

    /// True only for certifications valid at every ground-field size.
    pub fn certified(&self) -> bool {
        matches!(self, OracleOutcome::SyntacticZero | OracleOutcome::ZeroExact { .. })
    }

    pub fn detail(&self) -> String {
        match self {
            OracleOutcome::SyntacticZero => "normal forms coincide".to_string(),
            OracleOutcome::ZeroSampled(qs) => format!("zero at q in {:?}", qs),
            OracleOutcome::ZeroExact { primes, degree_bound } => {
                format!("zero at first {} primes, degree bound {}", primes, degree_bound)
            }
            OracleOutcome::Nonzero { q, detail } => format!("nonzero at q={}: {}", q, detail),
        }
    }
}

/// Hard cap on primes the exact mode will sample.
const EXACT_PRIME_BUDGET: usize = 400;

pub struct Oracle<'a> {
    ctx: &'a HallCtx,
    pres: &'a Presentation,
    memo: RwLock<HashMap<(Side, Vec<LetterId>, i64), HallElement>>,
}

impl<'a> Oracle<'a> {
    /// The presentation must present the double Hall algebra of the context's
    /// quiver: same rank, pairing matrix equal to the symmetrized Euler form.
    pub fn new(ctx: &'a HallCtx, pres: &'a Presentation) -> Result<Self, HallError> {
        let n = ctx.quiver().len();
        if pres.rank() != n {
            return Err(HallError::Infeasible(format!(
                "presentation rank {} does not match quiver rank {}",
                pres.rank(),
                n
            )));
        }
        for i in 0..n {
            for j in 0..n {
                let mut ei = vec![0i64; n];
                ei[i] = 1;
                let mut ej = vec![0i64; n];
                ej[j] = 1;
                if pres.sym().row(i)[j] != ctx.quiver().sym(&ei, &ej) {
                    return Err(HallError::Infeasible(format!(
                        "pairing mismatch at ({}, {})",
                        i, j
                    )));
                }
            }
        }
        Ok(Oracle { ctx, pres, memo: RwLock::new(HashMap::new()) })
    }

    pub fn ctx(&self) -> &HallCtx {
        self.ctx
    }

    pub fn pres(&self) -> &Presentation {
        self.pres
    }

    pub fn equality(&self, a: &Triang, b: &Triang, mode: &OracleMode) -> Result<OracleOutcome, HallError> {
        self.is_zero(&a.sub(b), mode)
    }

    pub fn is_zero(&self, t: &Triang, mode: &OracleMode) -> Result<OracleOutcome, HallError> {
        if t.is_syntactically_zero() {
            return Ok(OracleOutcome::SyntacticZero);
        }
        let split = self.split_keys(t)?;
        match mode {
            OracleMode::Probabilistic(qs) => {
                if qs.is_empty() {
                    return Err(HallError::Infeasible("empty sample list".to_string()));
                }
                for &q in qs {
                    check_sample_q(q)?;
                    self.check_feasible(&split, q)?;
                    if let Some(detail) = self.nonzero_at(&split, q)? {
                        return Ok(OracleOutcome::Nonzero { q, detail });
                    }
                }
                Ok(OracleOutcome::ZeroSampled(qs.clone()))
            }
            OracleMode::Exact => {
                let bound = self.degree_bound(&split)?;
                let need = (bound / 2 + 2) as usize;
                if need > EXACT_PRIME_BUDGET {
                    return Err(HallError::ExactBudget(format!(
                        "needs {} primes for degree bound {}",
                        need, bound
                    )));
                }
                let primes = first_primes(need);
                for &q in &primes {
                    self.check_feasible(&split, q)?;
                    if let Some(detail) = self.nonzero_at(&split, q)? {
                        return Ok(OracleOutcome::Nonzero { q, detail });
                    }
                }
                Ok(OracleOutcome::ZeroExact { primes: need, degree_bound: bound })
            }
        }
    }

    /// Splits each key's word at the minus/plus boundary.  Interleaved sides
    /// and inert letters cannot be evaluated and reject the element.
    fn split_keys<'t>(&self, t: &'t Triang) -> Result<Vec<SplitKey<'t>>, HallError> {
        let mut out = Vec::with_capacity(t.terms().len());
        for (key, coeff) in t.terms() {
            let mut minus = Vec::new();
            let mut plus = Vec::new();
            for &id in &key.word {
                let spec = self.pres.letter(id);
                if matches!(spec.eval, LetterEval::Abstract) {
                    return Err(HallError::NotTriangular(format!(
                        "letter {} has no Hall value",
                        spec.label
                    )));
                }
                match spec.side {
                    Side::Minus => {
                        if !plus.is_empty() {
                            return Err(HallError::NotTriangular(format!(
                                "minus letter {} after a plus letter",
                                spec.label
                            )));
                        }
                        minus.push(id);
                    }
                    Side::Plus => plus.push(id),
                }
            }
            out.push(SplitKey { minus, plus, mu: &key.mu, coeff });
        }
        Ok(out)
    }

    /// A word folds through the fast tally route when every letter is a simple
    /// or the word is a single letter; anything else multiplies general classes
    /// and needs the brute-force route, which only supports small fields.
    fn word_is_fast(&self, ids: &[LetterId]) -> bool {
        ids.len() <= 1
            || ids
                .iter()
                .all(|&id| matches!(self.pres.letter(id).eval, LetterEval::Simple(_)))
    }

    fn check_feasible(&self, split: &[SplitKey<'_>], q: i64) -> Result<(), HallError> {
        if BRUTE_Q.contains(&q) {
            return Ok(());
        }
        for sk in split {
            for ids in [&sk.minus, &sk.plus] {
                if !self.word_is_fast(ids) {
                    return Err(HallError::ExactBudget(format!(
                        "general class product at q={} outside the brute-force range",
                        q
                    )));
                }
            }
        }
        Ok(())
    }

    /// Evaluates the plus half of a word by folding Hall multiplication.
    fn plus_eval(&self, ids: &[LetterId], q: i64) -> Result<HallElement, HallError> {
        if let Some(hit) = self.memo.read().unwrap().get(&(Side::Plus, ids.to_vec(), q)) {
            return Ok(hit.clone());
        }
        let mut acc = HallElement::unit(q);
        for &id in ids {
            let spec = self.pres.letter(id);
            let factor = match &spec.eval {
                LetterEval::Simple(v) => HallElement::simple(self.ctx, q, *v),
                LetterEval::Class(cls) => {
                    let dim = cls.dim(self.ctx.quiver());
                    assert_eq!(dim, spec.class, "letter class must match its Hall dimension");
                    HallElement::class(q, cls.clone())
                }
                LetterEval::Abstract => unreachable!("rejected in split_keys"),
            };
            acc = acc.mul(self.ctx, &factor)?;
        }
        self.memo
            .write()
            .unwrap()
            .insert((Side::Plus, ids.to_vec(), q), acc.clone());
        Ok(acc)
    }

    /// Evaluates the minus half of a word.  The minus copy is identified with
    /// the plus copy generator-by-generator (same products, same twists), so
    /// the fold is the same; the flavor contributes a scalar per letter from
    /// the change of generators (quantum-group minus letters carry -v).
    fn minus_eval(&self, ids: &[LetterId], q: i64) -> Result<HallElement, HallError> {
        if let Some(hit) = self.memo.read().unwrap().get(&(Side::Minus, ids.to_vec(), q)) {
            return Ok(hit.clone());
        }
        let mut acc = HallElement::unit(q);
        for &id in ids {
            let spec = self.pres.letter(id);
            let factor = match &spec.eval {
                LetterEval::Simple(v) => HallElement::simple(self.ctx, q, *v),
                LetterEval::Class(cls) => {
                    let dim = cls.dim(self.ctx.quiver());
                    assert_eq!(dim, spec.class, "letter class must match its Hall dimension");
                    HallElement::class(q, cls.clone())
                }
                LetterEval::Abstract => unreachable!("rejected in split_keys"),
            };
            acc = acc.mul(self.ctx, &factor)?;
        }
        let acc = match self.pres.flavor() {
            Flavor::HallDouble => acc,
            Flavor::QuantumGroup => {
                let minus_v = QSqrt::v_pow(q, 1).neg();
                let mut scale = QSqrt::one(q);
                for _ in 0..ids.len() {
                    scale = scale.mul(&minus_v);
                }
                acc.scale(&scale)
            }
        };
        self.memo
            .write()
            .unwrap()
            .insert((Side::Minus, ids.to_vec(), q), acc.clone());
        Ok(acc)
    }

    /// Accumulates the pairing matrix per K-exponent; returns a witness for
    /// the first nonzero coefficient found, or None when everything vanishes.
    fn nonzero_at(&self, split: &[SplitKey<'_>], q: i64) -> Result<Option<String>, HallError> {
        let mut blocks: HashMap<&[i64], HashMap<(IsoClass, IsoClass), QSqrt>> = HashMap::new();
        for sk in split {
            let c = sk.coeff.eval_qsqrt(q)?;
            if c.is_zero() {
                continue;
            }
            let em = self.minus_eval(&sk.minus, q)?;
            let ep = self.plus_eval(&sk.plus, q)?;
            let block = blocks.entry(sk.mu.as_slice()).or_default();
            for (cm, am) in em.coeffs() {
                for (cp, ap) in ep.coeffs() {
                    let add = c.mul(am).mul(ap);
                    let cell = block
                        .entry((cm.clone(), cp.clone()))
                        .or_insert_with(|| QSqrt::zero(q));
                    *cell = cell.add(&add);
                }
            }
        }
        for (mu, block) in &blocks {
            for ((cm, cp), val) in block {
                if !val.is_zero() {
                    return Ok(Some(format!(
                        "K{:?} | minus {} | plus {}",
                        mu,
                        cm.display(self.ctx.quiver()),
                        cp.display(self.ctx.quiver())
                    )));
                }
            }
        }
        Ok(None)
    }

    /// Span bound on the v-degrees of every coefficient of the evaluated
    /// element, after clearing all term denominators.
    ///
    /// Value words fold through Hall multiplication: each pair of factors with
    /// dimension vectors d_r, d_s contributes a twist within the Euler bound
    /// (sum_v d_r,v d_s,v + arrow incidences) and a Hall number polynomial in
    /// q of degree at most the submodule Grassmannian dimension
    /// sum_v d_r,v d_s,v, so a word's value has |v-degree| at most W =
    /// sum_{r<s} (3 dot + arrows) plus the per-letter scalar's shift.  Each
    /// term occupies [num_lo - W + D_lo - den_lo, num_hi + W + D_hi - den_hi]
    /// where D is the summed denominator interval from clearing, so the total
    /// span is the width of the union of term intervals.
    fn degree_bound(&self, split: &[SplitKey<'_>]) -> Result<i64, HallError> {
        let quiver = self.ctx.quiver();
        let n = quiver.len();
        let mut d_lo = 0i64;
        let mut d_hi = 0i64;
        let mut dens = Vec::with_capacity(split.len());
        for sk in split {
            let (lo, hi) = laurent_range(sk.coeff.den());
            d_lo += lo;
            d_hi += hi;
            dens.push((lo, hi));
        }
        let mut g_lo = i64::MAX;
        let mut g_hi = i64::MIN;
        for (sk, (den_lo, den_hi)) in split.iter().zip(dens.iter()) {
            let (num_lo, num_hi) = laurent_range(sk.coeff.num());
            let mut w = 0i64;
            for ids in [&sk.minus, &sk.plus] {
                let dims: Vec<Vec<i64>> = ids
                    .iter()
                    .map(|&id| {
                        let spec = self.pres.letter(id);
                        match &spec.eval {
                            LetterEval::Simple(v) => {
                                let mut d = vec![0i64; n];
                                d[*v] = 1;
                                d
                            }
                            LetterEval::Class(cls) => cls.dim(quiver),
                            LetterEval::Abstract => unreachable!(),
                        }
                    })
                    .collect();
                for r in 0..dims.len() {
                    for s in (r + 1)..dims.len() {
                        let dot: i64 = dims[r].iter().zip(dims[s].iter()).map(|(a, b)| a * b).sum();
                        let mut arrow: i64 = 0;
                        for &(t, h) in quiver.arrows() {
                            arrow += dims[r][t] * dims[s][h];
                        }
                        w += 3 * dot + arrow;
                    }
                }
                w += ids.len() as i64;
            }
            g_lo = g_lo.min(num_lo - w + (d_lo - den_lo));
            g_hi = g_hi.max(num_hi + w + (d_hi - den_hi));
        }
        Ok((g_hi - g_lo).max(0))
    }
}

struct SplitKey<'t> {
    minus: Vec<LetterId>,
    plus: Vec<LetterId>,
    mu: &'t Vec<i64>,
    coeff: &'t exact::RatFunc,
}

trait EvalQ {
    fn eval_qsqrt(&self, q: i64) -> Result<QSqrt, HallError>;
}

impl EvalQ for exact::RatFunc {
    fn eval_qsqrt(&self, q: i64) -> Result<QSqrt, HallError> {
        let den = QSqrt::eval_laurent(q, self.den());
        if den.is_zero() {
            return Err(HallError::Infeasible(format!("denominator vanishes at q={}", q)));
        }
        Ok(QSqrt::eval_laurent(q, self.num()).div(&den))
    }
}

fn laurent_span(l: &exact::Laurent) -> i64 {
    match (l.lo_deg(), l.hi_deg()) {
        (Some(lo), Some(hi)) => hi - lo,
        _ => 0,
    }
}

/// Rejects perfect squares: v = sqrt(q) must generate a quadratic extension.
fn check_sample_q(q: i64) -> Result<(), HallError> {
    if q < 2 {
        return Err(HallError::BadQ(q.to_string()));
    }
    let r = (q as f64).sqrt() as i64;
    for c in [r - 1, r, r + 1] {
        if c >= 0 && c * c == q {
            return Err(HallError::BadQ(format!("{} is a perfect square", q)));
        }
    }
    Ok(())
}

pub(crate) fn first_primes(n: usize) -> Vec<i64> {
    let mut out = Vec::with_capacity(n);
    let mut c: i64 = 2;
    while out.len() < n {
        if (2..c).take_while(|d| d * d <= c).all(|d| c % d != 0) {
            out.push(c);
        }
        c += 1;
    }
    out
}
