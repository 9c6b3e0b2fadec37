//! Twisted Hall algebra elements at a fixed ground field size. Scalars live
//! in Q(sqrt q); the product carries the twist v^{<dim M, dim N>} with
//! v = sqrt q. Products by a simple class go through the closed-form tally;
//! general products go through brute-force counting, so the two routes stay
//! independently exercised.

use crate::brute::brute_hall_number;
use crate::cache::HallCache;
use crate::isoclass::{enumerate_isoclasses, IsoClass, Seg};
use crate::quiver::{EvalQuiver, Shape};
use crate::tally::{socle_tally, TallyEntry};
use crate::HallError;
use exact::QSqrt;
use num_bigint::BigInt;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, RwLock};

pub struct HallCtx {
    quiver: EvalQuiver,
    tallies: RwLock<HashMap<(IsoClass, usize), Arc<Vec<TallyEntry>>>>,
    isos: RwLock<HashMap<Vec<i64>, Arc<Vec<IsoClass>>>>,
    cache: HallCache,
}

impl HallCtx {
    pub fn new(quiver: EvalQuiver) -> Self {
        Self::with_cache(quiver, HallCache::in_memory())
    }

    pub fn with_cache(quiver: EvalQuiver, cache: HallCache) -> Self {
        HallCtx {
            quiver,
            tallies: RwLock::new(HashMap::new()),
            isos: RwLock::new(HashMap::new()),
            cache,
        }
    }

    pub fn quiver(&self) -> &EvalQuiver {
        &self.quiver
    }

    pub fn cache(&self) -> &HallCache {
        &self.cache
    }

    /// The simple class concentrated at vertex v.
    pub fn simple_seg(&self, v: usize) -> Seg {
        match self.quiver.shape() {
            Shape::Path => Seg { a: self.quiver.pos_of(v), b: self.quiver.pos_of(v) },
            Shape::Cycle => Seg { a: v, b: 1 },
        }
    }

    pub(crate) fn tally(&self, l: &IsoClass, v: usize) -> Arc<Vec<TallyEntry>> {
        if let Some(t) = self.tallies.read().unwrap().get(&(l.clone(), v)) {
            return t.clone();
        }
        let t = Arc::new(socle_tally(&self.quiver, l, v));
        self.tallies.write().unwrap().insert((l.clone(), v), t.clone());
        t
    }

    pub(crate) fn isoclasses(&self, dim: &[i64]) -> Result<Arc<Vec<IsoClass>>, HallError> {
        if let Some(c) = self.isos.read().unwrap().get(dim) {
            return Ok(c.clone());
        }
        let c = Arc::new(enumerate_isoclasses(&self.quiver, dim)?);
        self.isos.write().unwrap().insert(dim.to_vec(), c.clone());
        Ok(c)
    }

    /// Brute-force Hall number F^L_{M,N} with persistent memoization.
    pub fn hall_number(&self, l: &IsoClass, m: &IsoClass, n: &IsoClass, q: i64) -> Result<u64, HallError> {
        let key = HallCache::entry_key(
            self.quiver.tag(),
            &l.dim(&self.quiver),
            &m.dim(&self.quiver),
            &n.dim(&self.quiver),
            &l.key(&self.quiver),
            &m.key(&self.quiver),
            &n.key(&self.quiver),
            q,
        );
        if let Some(v) = self.cache.get(&key) {
            return Ok(v);
        }
        let v = brute_hall_number(&self.quiver, l, m, n, q)?;
        self.cache.put(key, v);
        Ok(v)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallElement {
    q: i64,
    coeffs: BTreeMap<IsoClass, QSqrt>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Nesting {
    /// [[x1, x2], x3], ...
    Left,
    /// [x1, [x2, x3]], ...
    Right,
}

impl HallElement {
    pub fn zero(q: i64) -> Self {
        HallElement { q, coeffs: BTreeMap::new() }
    }

    /// The class of the zero module: the algebra identity.
    pub fn unit(q: i64) -> Self {
        Self::class(q, IsoClass::zero())
    }

    pub fn class(q: i64, cls: IsoClass) -> Self {
        let mut coeffs = BTreeMap::new();
        coeffs.insert(cls, QSqrt::one(q));
        HallElement { q, coeffs }
    }

    pub fn simple(ctx: &HallCtx, q: i64, v: usize) -> Self {
        Self::class(q, IsoClass::single(ctx.simple_seg(v)))
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn coeffs(&self) -> &BTreeMap<IsoClass, QSqrt> {
        &self.coeffs
    }

    pub fn coeff(&self, cls: &IsoClass) -> QSqrt {
        self.coeffs.get(cls).cloned().unwrap_or_else(|| QSqrt::zero(self.q))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(|c| c.is_zero())
    }

    fn insert(&mut self, cls: IsoClass, c: QSqrt) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(cls);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
            std::collections::btree_map::Entry::Vacant(vac) => {
                vac.insert(c);
            }
        }
    }

    pub fn add(&self, other: &HallElement) -> HallElement {
        assert_eq!(self.q, other.q);
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            out.insert(k.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> HallElement {
        HallElement { q: self.q, coeffs: self.coeffs.iter().map(|(k, c)| (k.clone(), c.neg())).collect() }
    }

    pub fn sub(&self, other: &HallElement) -> HallElement {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &QSqrt) -> HallElement {
        if s.is_zero() {
            return HallElement::zero(self.q);
        }
        HallElement { q: self.q, coeffs: self.coeffs.iter().map(|(k, c)| (k.clone(), c.mul(s))).collect() }
    }

    pub fn scale_vpow(&self, k: i64) -> HallElement {
        self.scale(&QSqrt::v_pow(self.q, k))
    }

    /// u_self * u_{S_v} through the closed-form tally.
    pub fn mul_by_simple(&self, ctx: &HallCtx, v: usize) -> Result<HallElement, HallError> {
        let quiver = ctx.quiver();
        let sv = ctx.simple_seg(v);
        let ev = IsoClass::single(sv).dim(quiver);
        let mut out = HallElement::zero(self.q);
        let mut by_dim: BTreeMap<Vec<i64>, Vec<(&IsoClass, &QSqrt)>> = BTreeMap::new();
        for (k, c) in &self.coeffs {
            by_dim.entry(k.dim(quiver)).or_default().push((k, c));
        }
        for (dim, group) in by_dim {
            let twist = QSqrt::v_pow(self.q, quiver.euler(&dim, &ev));
            let ldim: Vec<i64> = dim.iter().zip(&ev).map(|(a, b)| a + b).collect();
            for l in ctx.isoclasses(&ldim)?.iter() {
                let mut acc = QSqrt::zero(self.q);
                for entry in ctx.tally(l, v).iter() {
                    if let Some((_, c)) = group.iter().find(|(k, _)| **k == entry.quotient) {
                        let n = entry.count.eval(&BigInt::from(self.q));
                        acc = acc.add(&c.mul(&QSqrt::from_int(self.q, &n)));
                    }
                }
                if !acc.is_zero() {
                    out.insert(l.clone(), acc.mul(&twist));
                }
            }
        }
        Ok(out)
    }

    /// General product. A right factor supported on one simple class takes
    /// the tally route; everything else counts submodules brute-force.
    pub fn mul(&self, ctx: &HallCtx, other: &HallElement) -> Result<HallElement, HallError> {
        assert_eq!(self.q, other.q);
        if let Some((cls, c)) = other.single_simple(ctx) {
            return Ok(self.mul_by_simple(ctx, cls)?.scale(&c));
        }
        let quiver = ctx.quiver();
        let mut out = HallElement::zero(self.q);
        for (km, cm) in &self.coeffs {
            let dm = km.dim(quiver);
            for (kn, cn) in &other.coeffs {
                let dn = kn.dim(quiver);
                let twist = QSqrt::v_pow(self.q, quiver.euler(&dm, &dn));
                let scale = cm.mul(cn).mul(&twist);
                let ldim: Vec<i64> = dm.iter().zip(&dn).map(|(a, b)| a + b).collect();
                for l in ctx.isoclasses(&ldim)?.iter() {
                    let f = ctx.hall_number(l, km, kn, self.q)?;
                    if f != 0 {
                        out.insert(l.clone(), scale.mul(&QSqrt::from_int(self.q, &BigInt::from(f))));
                    }
                }
            }
        }
        Ok(out)
    }

    fn single_simple(&self, ctx: &HallCtx) -> Option<(usize, QSqrt)> {
        if self.coeffs.len() != 1 {
            return None;
        }
        let (k, c) = self.coeffs.iter().next()?;
        if k.segs().len() != 1 {
            return None;
        }
        let s = k.segs()[0];
        (0..ctx.quiver().len()).find(|&v| ctx.simple_seg(v) == s).map(|v| (v, c.clone()))
    }

    pub fn display(&self, ctx: &HallCtx) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.coeffs
            .iter()
            .map(|(k, c)| format!("({:?})u[{}]", c, k.display(ctx.quiver())))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// u_M * u_N as an element, with the standard twist.
pub fn hall_product(ctx: &HallCtx, m: &IsoClass, n: &IsoClass, q: i64) -> Result<HallElement, HallError> {
    HallElement::class(q, m.clone()).mul(ctx, &HallElement::class(q, n.clone()))
}

/// [x, y]_{v^a} = x y - v^a y x.
pub fn skew_commutator(
    ctx: &HallCtx,
    x: &HallElement,
    y: &HallElement,
    a: i64,
) -> Result<HallElement, HallError> {
    Ok(x.mul(ctx, y)?.sub(&y.mul(ctx, x)?.scale_vpow(a)))
}

/// Iterated skew commutator of a list, nested to the chosen side, all
/// brackets twisted by v^a.
pub fn iterated_skew(
    ctx: &HallCtx,
    items: &[HallElement],
    a: i64,
    nesting: Nesting,
) -> Result<HallElement, HallError> {
    assert!(!items.is_empty());
    match nesting {
        Nesting::Left => {
            let mut acc = items[0].clone();
            for x in &items[1..] {
                acc = skew_commutator(ctx, &acc, x, a)?;
            }
            Ok(acc)
        }
        Nesting::Right => {
            let mut acc = items.last().unwrap().clone();
            for x in items[..items.len() - 1].iter().rev() {
                acc = skew_commutator(ctx, x, &acc, a)?;
            }
            Ok(acc)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    fn rational(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    #[test]
    fn simple_products_on_the_two_chain() {
        // Arrow 1 -> 0. No extension of S_0 by S_1, one of S_1 by S_0.
        let ctx = HallCtx::new(EvalQuiver::chain(2));
        let q = 3;
        let u0 = HallElement::simple(&ctx, q, 0);
        let u1 = HallElement::simple(&ctx, q, 1);
        let p2 = IsoClass::single(Seg { a: 0, b: 1 });
        let split = IsoClass::new(vec![Seg { a: 0, b: 0 }, Seg { a: 1, b: 1 }]);
        // u_0 u_1 = u_{S_0 + S_1} (twist <e0, e1> = 0).
        let prod01 = u0.mul(&ctx, &u1).unwrap();
        assert_eq!(prod01.coeff(&split), QSqrt::one(q));
        assert!(prod01.coeff(&p2).is_zero());
        // u_1 u_0 = v^{-1} (u_{S_0+S_1} + u_{P}).
        let prod10 = u1.mul(&ctx, &u0).unwrap();
        assert_eq!(prod10.coeff(&split), QSqrt::v_pow(q, -1));
        assert_eq!(prod10.coeff(&p2), QSqrt::v_pow(q, -1));
    }

    #[test]
    fn commutators_produce_the_extension_class() {
        let ctx = HallCtx::new(EvalQuiver::chain(2));
        let q = 5;
        let u0 = HallElement::simple(&ctx, q, 0);
        let u1 = HallElement::simple(&ctx, q, 1);
        let p2 = HallElement::class(q, IsoClass::single(Seg { a: 0, b: 1 }));
        // [u_0, u_1]_v = -u_P and [u_1, u_0]_{v^{-1}} = v^{-1} u_P, with
        // vertex 0 the sink and vertex 1 the source.
        let lhs = skew_commutator(&ctx, &u0, &u1, 1).unwrap();
        assert_eq!(lhs, p2.neg());
        let rhs = skew_commutator(&ctx, &u1, &u0, -1).unwrap();
        assert_eq!(rhs, p2.scale_vpow(-1));
    }

    #[test]
    fn general_and_simple_routes_agree() {
        let ctx = HallCtx::new(EvalQuiver::chain(3));
        let q = 2;
        let u2 = HallElement::simple(&ctx, q, 2);
        let u1 = HallElement::simple(&ctx, q, 1);
        let x = u2.mul(&ctx, &u1).unwrap();
        assert!(x.coeffs().len() > 1, "left factor must be non-simple");
        let fast = x.mul_by_simple(&ctx, 0).unwrap();
        // Same product term by term through brute-force counting.
        let e0 = IsoClass::single(ctx.simple_seg(0)).dim(ctx.quiver());
        let s0 = IsoClass::single(ctx.simple_seg(0));
        let mut brute = HallElement::zero(q);
        for (k, c) in x.coeffs() {
            let dk = k.dim(ctx.quiver());
            let twist = QSqrt::v_pow(q, ctx.quiver().euler(&dk, &e0));
            let ldim: Vec<i64> = dk.iter().zip(&e0).map(|(a, b)| a + b).collect();
            for l in ctx.isoclasses(&ldim).unwrap().iter() {
                let f = ctx.hall_number(l, k, &s0, q).unwrap();
                if f != 0 {
                    brute = brute.add(&HallElement::class(q, l.clone()).scale(
                        &c.mul(&twist).mul(&QSqrt::from_rational(q, rational(f as i64))),
                    ));
                }
            }
        }
        assert_eq!(brute, fast);
    }

    #[test]
    fn iterated_skew_reversal_identity() {
        // [x1..xn]_v right-nested equals (-v)^{n-1} [xn..x1]_{v^{-1}}
        // left-nested, for words of simples.
        let ctx = HallCtx::new(EvalQuiver::chain(3));
        let q = 3;
        let items: Vec<HallElement> = (0..3).map(|v| HallElement::simple(&ctx, q, v)).collect();
        let lhs = iterated_skew(&ctx, &items, 1, Nesting::Right).unwrap();
        let rev: Vec<HallElement> = items.iter().rev().cloned().collect();
        let rhs = iterated_skew(&ctx, &rev, -1, Nesting::Left).unwrap();
        let n = items.len() as u32;
        let sign = if (n - 1) % 2 == 1 { -1 } else { 1 };
        let scaled = rhs.scale_vpow((n as i64) - 1).scale(&QSqrt::from_rational(q, rational(sign)));
        assert_eq!(lhs, scaled);
    }
}
