//! Partial Hall Lie bracket on the quotient algebra, driven entirely by the
//! rule tables for the catalog symbols. Pairs outside the tables (line
//! bundles whose twists differ on two or more arms) yield Undefined rather
//! than guessed structure constants.

use crate::combo::SymbolCombination;
use crate::symbol::{SheafSymbol, SymbolKind};
use lattice::{euler_sym, K0Class, LNormalForm, LVector, WeightData};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Symmetrized Euler pairing of a rational cartan coordinate vector against a
/// class; delta lies in the radical so mod-delta coordinates suffice.
pub(crate) fn cartan_pairing(
    w: &WeightData,
    coords: &[BigRational],
    class: &K0Class,
) -> BigRational {
    let mut acc = BigRational::zero();
    for (v, c) in lattice::vertex_list(w).into_iter().zip(coords) {
        if c.is_zero() {
            continue;
        }
        let p = euler_sym(w, &K0Class::alpha(w, v), class);
        acc += c * BigRational::from_integer(BigInt::from(p));
    }
    acc
}

/// Nonzero arm coordinates of the normal form, 1-based.
pub(crate) fn nonzero_arms(nf: &LNormalForm) -> Vec<(usize, u32)> {
    nf.arm_coeffs()
        .iter()
        .enumerate()
        .filter(|(_, &m)| m > 0)
        .map(|(i, &m)| (i + 1, m))
        .collect()
}

/// [bar1_a, bar1_b] for canonical symbols; None when the pair is outside the
/// rule tables.
fn symbol_bracket(
    w: &WeightData,
    a: &SheafSymbol,
    b: &SheafSymbol,
) -> Option<SymbolCombination> {
    if a.shift() == 1 {
        // [bar1_{A[1]}, bar1_B] = sigma([bar1_A, bar1_{B[1]}]); only line
        // bundles carry a stored shift.
        let a0 = a.shifted();
        let (sgn, b1) = b.shifted().quotient_canonical(w);
        let inner = symbol_bracket(w, &a0, &b1)?;
        return Some(inner.shift(w).scaled(sgn));
    }
    match (a.kind(), b.kind()) {
        (SymbolKind::Torsion { .. }, SymbolKind::LineBundle(_)) => {
            Some(symbol_bracket(w, b, a)?.scaled(-1))
        }
        (
            SymbolKind::Torsion { arm: ia, j: ja, k: ka },
            SymbolKind::Torsion { arm: ib, j: jb, k: kb },
        ) => Some(torsion_bracket(w, (*ia, *ja, *ka), (*ib, *jb, *kb))),
        (SymbolKind::LineBundle(xa), _) => line_first_bracket(w, xa, b),
    }
}

/// First factor is an unshifted line bundle O(a).
fn line_first_bracket(
    w: &WeightData,
    xa: &LNormalForm,
    b: &SheafSymbol,
) -> Option<SymbolCombination> {
    match b.kind() {
        SymbolKind::LineBundle(xb) => {
            let d = (&xb.to_vector() - &xa.to_vector()).normal_form(w);
            let nz = nonzero_arms(&d);
            match (nz.len(), b.shift()) {
                // Both Ext groups between unshifted quotient-equal or
                // single-arm-shifted line bundles vanish.
                (0, 0) | (1, 0) => Some(SymbolCombination::zero(w)),
                // [bar1_X, bar1_{X[1]}] = h_{[X]}.
                (0, 1) => {
                    let cls = class_of_nf(w, xa);
                    Some(SymbolCombination::from_cartan(w, &cls.reduce_mod_delta()))
                }
                // [bar1_{O(x)}, bar1_{O(x-kx_i)[1]}] = -bar1_{S_{i,l_i}^{(k)}}
                // with k = p_i - m for the forward reading m.
                (1, 1) => {
                    let (i, m) = nz[0];
                    let p = w.weight(i);
                    let t = SheafSymbol::torsion(w, i, xa.arm(i) as i64, p - m, 0)
                        .expect("complementary length is exceptional");
                    Some(SymbolCombination::from_term(w, &t, -1))
                }
                _ => None,
            }
        }
        SymbolKind::Torsion { arm, j, k } => {
            // [bar1_{O(x)}, bar1_{S_{ij}^{(k)}}] = -delta_{j,l_i+k} bar1_{O(x+kx_i)}.
            let p = w.weight(*arm);
            let hit = *j == (xa.arm(*arm) + k) % p;
            if !hit {
                return Some(SymbolCombination::zero(w));
            }
            let y = &xa.to_vector() + &LVector::xi(w.arms(), *arm).scaled(*k as i64);
            let line = SheafSymbol::line_bundle(w, &y, 0);
            Some(SymbolCombination::from_term(w, &line, -1))
        }
    }
}

fn class_of_nf(w: &WeightData, nf: &LNormalForm) -> K0Class {
    lattice::class_of_line_bundle(w, &nf.to_vector())
}

/// Segments on the same arm glue when one starts right below the other; a
/// full period returns minus the cartan element of the lower factor's class,
/// and overlong glued segments collapse by one period.
fn torsion_bracket(
    w: &WeightData,
    (ia, ja, ka): (usize, u32, u32),
    (ib, jb, kb): (usize, u32, u32),
) -> SymbolCombination {
    if ia != ib {
        return SymbolCombination::zero(w);
    }
    let p = w.weight(ia);
    let glue_b_below_a = jb == (ja + p - ka) % p;
    let glue_a_below_b = ja == (jb + p - kb) % p;
    if ka + kb == p {
        if glue_b_below_a {
            let cls = lattice::class_of_torsion(w, ia, ja as i64, ka)
                .expect("segment is valid");
            return SymbolCombination::from_cartan(w, &cls.reduce_mod_delta()).scaled(-1);
        }
        return SymbolCombination::zero(w);
    }
    let (top, sign) = if glue_b_below_a {
        (ja, 1)
    } else if glue_a_below_b {
        (jb, -1)
    } else {
        return SymbolCombination::zero(w);
    };
    let mut total = ka + kb;
    if total > p {
        total -= p;
    }
    let t = SheafSymbol::torsion(w, ia, top as i64, total, 0)
        .expect("glued length is exceptional after collapse");
    SymbolCombination::from_term(w, &t, sign)
}

/// Bilinear extension over terms and cartan parts; any symbol pair outside
/// the rule tables makes the whole bracket Undefined (None).
pub fn partial_bracket(
    w: &WeightData,
    a: &SymbolCombination,
    b: &SymbolCombination,
) -> Option<SymbolCombination> {
    let mut out = SymbolCombination::zero(w);
    for (sa, ca) in a.terms() {
        for (sb, cb) in b.terms() {
            let br = symbol_bracket(w, sa, sb)?;
            out.add_scaled(&br, ca * cb);
        }
    }
    // [h_alpha, bar1_X] = -(alpha, [X]) bar1_X, and its opposite.
    for (sb, cb) in b.terms() {
        let pair = cartan_pairing(w, a.cartan(), &sb.class(w));
        add_rational_multiple(w, &mut out, sb, &(-pair), *cb);
    }
    for (sa, ca) in a.terms() {
        let pair = cartan_pairing(w, b.cartan(), &sa.class(w));
        add_rational_multiple(w, &mut out, sa, &pair, *ca);
    }
    Some(out)
}

fn add_rational_multiple(
    w: &WeightData,
    out: &mut SymbolCombination,
    s: &SheafSymbol,
    q: &BigRational,
    c: i64,
) {
    if q.is_zero() || c == 0 {
        return;
    }
    let total = q * BigRational::from_integer(BigInt::from(c));
    assert!(
        total.is_integer(),
        "cartan pairing left the integer lattice on {}",
        s
    );
    let n = i64::try_from(total.to_integer()).expect("pairing coefficient fits i64");
    out.add_term(w, s, n);
}
