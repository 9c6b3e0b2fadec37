//! Brute-force Hall numbers: enumerate arrow-stable subspace tuples of an
//! explicit representation over GF(q) and classify subobject and quotient.
//! This route is independent of the closed-form tally and cross-checks it.

use crate::gf::Gf;
use crate::isoclass::{segments_within, IsoClass, DIM_ENTRY_CAP};
use crate::quiver::EvalQuiver;
use crate::zrep::{zrep_of, ZRep};
use crate::HallError;
use itertools::Itertools;

/// Ground field sizes the brute-force enumerator accepts.
pub const BRUTE_Q: [i64; 7] = [2, 3, 4, 5, 7, 8, 9];

/// Cap on the number of subspace tuples one call may enumerate.
const TUPLE_BUDGET: u128 = 4_000_000;

pub(crate) struct GfRep {
    pub dims: Vec<usize>,
    pub mats: Vec<Vec<Vec<u16>>>,
}

pub(crate) fn gf_rep(zr: &ZRep) -> GfRep {
    GfRep {
        dims: zr.dims.clone(),
        mats: zr
            .mats
            .iter()
            .map(|m| {
                m.iter()
                    .map(|row| {
                        row.iter()
                            .map(|&e| {
                                assert!(e == 0 || e == 1, "canonical representatives are 0/1");
                                e as u16
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect(),
    }
}

fn mat_vec(gf: &Gf, m: &[Vec<u16>], v: &[u16]) -> Vec<u16> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(0u16, |acc, (&a, &b)| gf.add(acc, gf.mul(a, b))))
        .collect()
}

/// A subspace in reduced row-echelon form.
#[derive(Clone)]
pub(crate) struct Sub {
    pub pivots: Vec<usize>,
    pub rows: Vec<Vec<u16>>,
}

impl Sub {
    /// Subtract the span; returns (coefficients, residue).
    fn reduce(&self, gf: &Gf, v: &[u16]) -> (Vec<u16>, Vec<u16>) {
        let mut r = v.to_vec();
        let mut coefs = Vec::with_capacity(self.rows.len());
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = r[p];
            coefs.push(c);
            if c != 0 {
                for (ri, &e) in r.iter_mut().zip(row) {
                    *ri = gf.sub(*ri, gf.mul(c, e));
                }
            }
        }
        (coefs, r)
    }

    fn contains(&self, gf: &Gf, v: &[u16]) -> bool {
        self.reduce(gf, v).1.iter().all(|&e| e == 0)
    }
}

/// All m-dimensional subspaces of GF(q)^d as reduced echelon bases.
pub(crate) fn subspaces(gf: &Gf, d: usize, m: usize) -> Vec<Sub> {
    if m > d {
        return Vec::new();
    }
    if m == 0 {
        return vec![Sub { pivots: vec![], rows: vec![] }];
    }
    let mut out = Vec::new();
    for pivots in (0..d).combinations(m) {
        // Free slots: row i may have arbitrary entries in columns past its
        // pivot that are not pivots themselves.
        let mut free: Vec<(usize, usize)> = Vec::new();
        for (i, &p) in pivots.iter().enumerate() {
            for c in p + 1..d {
                if !pivots.contains(&c) {
                    free.push((i, c));
                }
            }
        }
        let total = (gf.q as u128).pow(free.len() as u32);
        let mut counter = vec![0u16; free.len()];
        let mut done = 0u128;
        loop {
            let mut rows = vec![vec![0u16; d]; m];
            for (i, &p) in pivots.iter().enumerate() {
                rows[i][p] = 1;
            }
            for (slot, &(i, c)) in free.iter().enumerate() {
                rows[i][c] = counter[slot];
            }
            out.push(Sub { pivots: pivots.clone(), rows });
            done += 1;
            if done == total {
                break;
            }
            for slot in 0..counter.len() {
                counter[slot] += 1;
                if counter[slot] < gf.q {
                    break;
                }
                counter[slot] = 0;
            }
        }
    }
    out
}

/// Gaussian binomial [d over m]_q as u128.
fn gauss_binom(d: usize, m: usize, q: i64) -> u128 {
    if m > d {
        return 0;
    }
    let q = q as u128;
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..m {
        num = num.saturating_mul(q.pow((d - i) as u32) - 1);
        den = den.saturating_mul(q.pow((i + 1) as u32) - 1);
    }
    num / den
}

fn gf_rank(gf: &Gf, mut rows: Vec<Vec<u16>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = gf.inv(rows[rank][c]);
        for j in 0..cols {
            rows[rank][j] = gf.mul(rows[rank][j], inv);
        }
        for i in 0..rows.len() {
            if i != rank && rows[i][c] != 0 {
                let f = rows[i][c];
                for j in 0..cols {
                    let s = gf.mul(f, rows[rank][j]);
                    rows[i][j] = gf.sub(rows[i][j], s);
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// dim Hom(X, Y) over GF(q), by the rank of the commuting-square system.
pub(crate) fn gf_hom_dim(gf: &Gf, q: &EvalQuiver, x: &GfRep, y: &GfRep) -> usize {
    let n = q.len();
    let mut off = vec![0usize; n];
    let mut total = 0usize;
    for v in 0..n {
        off[v] = total;
        total += y.dims[v] * x.dims[v];
    }
    if total == 0 {
        return 0;
    }
    let mut rows: Vec<Vec<u16>> = Vec::new();
    for (ai, &(t, h)) in q.arrows().iter().enumerate() {
        let xa = &x.mats[ai];
        let ya = &y.mats[ai];
        for i in 0..y.dims[h] {
            for j in 0..x.dims[t] {
                let mut row = vec![0u16; total];
                for k in 0..x.dims[h] {
                    if xa[k][j] != 0 {
                        let u = off[h] + i * x.dims[h] + k;
                        row[u] = gf.add(row[u], xa[k][j]);
                    }
                }
                for k in 0..y.dims[t] {
                    if ya[i][k] != 0 {
                        let u = off[t] + k * x.dims[t] + j;
                        row[u] = gf.sub(row[u], ya[i][k]);
                    }
                }
                if row.iter().any(|&e| e != 0) {
                    rows.push(row);
                }
            }
        }
    }
    total - gf_rank(gf, rows)
}

/// Hom-rank vector against every segment fitting under `dims`; two
/// representations with equal dimension vectors are isomorphic exactly when
/// these vectors agree.
fn hom_signature(gf: &Gf, q: &EvalQuiver, rep: &GfRep, ambient: &[i64]) -> Vec<usize> {
    segments_within(q, ambient)
        .iter()
        .map(|&s| {
            let (zr, _) = zrep_of(q, &IsoClass::single(s));
            gf_hom_dim(gf, q, &gf_rep(&zr), rep)
        })
        .collect()
}

fn sub_rep(gf: &Gf, q: &EvalQuiver, rep: &GfRep, subs: &[Sub]) -> GfRep {
    let dims: Vec<usize> = subs.iter().map(|s| s.rows.len()).collect();
    let mats = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, &(t, h))| {
            let mut m = vec![vec![0u16; dims[t]]; dims[h]];
            for (j, b) in subs[t].rows.iter().enumerate() {
                let w = mat_vec(gf, &rep.mats[ai], b);
                let (coefs, resid) = subs[h].reduce(gf, &w);
                assert!(resid.iter().all(|&e| e == 0), "stability was checked before");
                for (i, c) in coefs.into_iter().enumerate() {
                    m[i][j] = c;
                }
            }
            m
        })
        .collect();
    GfRep { dims, mats }
}

fn quo_rep(gf: &Gf, q: &EvalQuiver, rep: &GfRep, subs: &[Sub]) -> GfRep {
    // Complement basis: the non-pivot unit vectors; coordinates of the class
    // of w are the non-pivot entries of w reduced modulo the subspace.
    let compl: Vec<Vec<usize>> = subs
        .iter()
        .zip(&rep.dims)
        .map(|(s, &d)| (0..d).filter(|c| !s.pivots.contains(c)).collect())
        .collect();
    let dims: Vec<usize> = compl.iter().map(|c| c.len()).collect();
    let mats = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, &(t, h))| {
            let mut m = vec![vec![0u16; dims[t]]; dims[h]];
            for (j, &c) in compl[t].iter().enumerate() {
                let mut e = vec![0u16; rep.dims[t]];
                e[c] = 1;
                let w = mat_vec(gf, &rep.mats[ai], &e);
                let (_, resid) = subs[h].reduce(gf, &w);
                for (i, &cc) in compl[h].iter().enumerate() {
                    m[i][j] = resid[cc];
                }
            }
            m
        })
        .collect();
    GfRep { dims, mats }
}

/// Number of submodules X of L with X isomorphic to N and L/X isomorphic to
/// M, counted over GF(q) by explicit enumeration.
pub(crate) fn brute_hall_number(
    quiver: &EvalQuiver,
    l: &IsoClass,
    m: &IsoClass,
    n: &IsoClass,
    q: i64,
) -> Result<u64, HallError> {
    if !BRUTE_Q.contains(&q) {
        return Err(HallError::BadQ(format!(
            "brute-force counting supports q in {BRUTE_Q:?}, got {q}"
        )));
    }
    let dl = l.dim(quiver);
    let dm = m.dim(quiver);
    let dn = n.dim(quiver);
    for d in [&dl, &dm, &dn] {
        if d.iter().any(|&x| x > DIM_ENTRY_CAP) {
            return Err(HallError::DimGuard(format!(
                "dimension entries above {DIM_ENTRY_CAP} are outside the brute-force range"
            )));
        }
    }
    if dl.iter().zip(dm.iter().zip(&dn)).any(|(a, (b, c))| *a != b + c) {
        return Ok(0);
    }
    let mut budget = 1u128;
    for (v, &d) in dl.iter().enumerate() {
        budget = budget.saturating_mul(gauss_binom(d as usize, dn[v] as usize, q));
    }
    if budget > TUPLE_BUDGET {
        return Err(HallError::DimGuard(format!(
            "{budget} subspace tuples exceed the brute-force budget {TUPLE_BUDGET}"
        )));
    }
    let gf = Gf::new(q as u16)?;
    let (zl, _) = zrep_of(quiver, l);
    let rep = gf_rep(&zl);
    let sig_m = {
        let (zm, _) = zrep_of(quiver, m);
        hom_signature(&gf, quiver, &gf_rep(&zm), &dm)
    };
    let sig_n = {
        let (zn, _) = zrep_of(quiver, n);
        hom_signature(&gf, quiver, &gf_rep(&zn), &dn)
    };
    let per_vertex: Vec<Vec<Sub>> = (0..quiver.len())
        .map(|v| subspaces(&gf, rep.dims[v], dn[v] as usize))
        .collect();
    let mut count = 0u64;
    let mut idx = vec![0usize; quiver.len()];
    'tuples: loop {
        let tuple: Vec<&Sub> = idx.iter().enumerate().map(|(v, &i)| &per_vertex[v][i]).collect();
        let stable = quiver.arrows().iter().enumerate().all(|(ai, &(t, h))| {
            tuple[t]
                .rows
                .iter()
                .all(|b| tuple[h].contains(&gf, &mat_vec(&gf, &rep.mats[ai], b)))
        });
        if stable {
            let owned: Vec<Sub> = tuple.iter().map(|&s| s.clone()).collect();
            let sr = sub_rep(&gf, quiver, &rep, &owned);
            if hom_signature(&gf, quiver, &sr, &dn) == sig_n {
                let qr = quo_rep(&gf, quiver, &rep, &owned);
                if hom_signature(&gf, quiver, &qr, &dm) == sig_m {
                    count += 1;
                }
            }
        }
        for v in 0..quiver.len() {
            idx[v] += 1;
            if idx[v] < per_vertex[v].len() {
                continue 'tuples;
            }
            idx[v] = 0;
            if v == quiver.len() - 1 {
                break 'tuples;
            }
        }
    }
    Ok(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isoclass::{enumerate_isoclasses, Seg};
    use crate::tally::socle_tally;
    use num_bigint::BigInt;

    #[test]
    fn subspace_counts_match_gaussian_binomials() {
        for q in [2u16, 3, 4] {
            let gf = Gf::new(q).unwrap();
            for d in 0..=4usize {
                for m in 0..=d {
                    assert_eq!(subspaces(&gf, d, m).len() as u128, gauss_binom(d, m, q as i64));
                }
            }
        }
    }

    #[test]
    fn extension_of_simples_on_the_two_chain() {
        // Arrow 1 -> 0: the segment [0,1] has the sink simple as its unique
        // proper submodule.
        let q = EvalQuiver::chain(2);
        let p2 = IsoClass::single(Seg { a: 0, b: 1 });
        let s0 = IsoClass::single(Seg { a: 0, b: 0 });
        let s1 = IsoClass::single(Seg { a: 1, b: 1 });
        for qv in BRUTE_Q {
            assert_eq!(brute_hall_number(&q, &p2, &s1, &s0, qv).unwrap(), 1);
            assert_eq!(brute_hall_number(&q, &p2, &s0, &s1, qv).unwrap(), 0);
        }
    }

    #[test]
    fn split_extension_counts_all_complement_lines() {
        // F^{S_0 + S_1}_{S_0, S_1} = 1 on the two-chain (the submodule S_1 of
        // the direct sum is unique because Hom(S_1, S_0) = 0... it is the
        // isotypic component).
        let q = EvalQuiver::chain(2);
        let ss = IsoClass::new(vec![Seg { a: 0, b: 0 }, Seg { a: 1, b: 1 }]);
        let s0 = IsoClass::single(Seg { a: 0, b: 0 });
        let s1 = IsoClass::single(Seg { a: 1, b: 1 });
        assert_eq!(brute_hall_number(&q, &ss, &s0, &s1, 3).unwrap(), 1);
        assert_eq!(brute_hall_number(&q, &ss, &s1, &s0, 3).unwrap(), 1);
    }

    #[test]
    fn uniserial_filtration_steps_on_the_three_cycle() {
        let q = EvalQuiver::cycle(3);
        // U(top 2, len 3) contains U(top 1, len 2) with simple top quotient.
        let u3 = IsoClass::single(Seg { a: 2, b: 3 });
        let u2 = IsoClass::single(Seg { a: 1, b: 2 });
        let s2 = IsoClass::single(Seg { a: 2, b: 1 });
        for qv in [2, 3, 5] {
            assert_eq!(brute_hall_number(&q, &u3, &s2, &u2, qv).unwrap(), 1);
            assert_eq!(brute_hall_number(&q, &u3, &u2, &s2, qv).unwrap(), 0);
        }
    }

    #[test]
    fn brute_force_agrees_with_the_closed_form_tally() {
        let w = lattice::WeightData::new(&[2, 2]).unwrap();
        let quivers = [EvalQuiver::chain(3), EvalQuiver::star_path(&w).unwrap(), EvalQuiver::cycle(2)];
        for quiver in &quivers {
            let dims: Vec<Vec<i64>> = match quiver.len() {
                3 => vec![vec![1, 1, 1], vec![2, 1, 1], vec![1, 2, 1]],
                2 => vec![vec![2, 1], vec![2, 2]],
                _ => unreachable!(),
            };
            for dim in dims {
                for l in enumerate_isoclasses(quiver, &dim).unwrap() {
                    for v in 0..quiver.len() {
                        let entries = socle_tally(quiver, &l, v);
                        let mut quotients: Vec<IsoClass> =
                            entries.iter().map(|e| e.quotient.clone()).collect();
                        quotients.sort();
                        quotients.dedup();
                        // Also check a quotient class that never appears.
                        let dq: Vec<i64> = dim
                            .iter()
                            .enumerate()
                            .map(|(u, &x)| if u == v { x - 1 } else { x })
                            .collect();
                        if dq.iter().all(|&x| x >= 0) {
                            for m in enumerate_isoclasses(quiver, &dq).unwrap() {
                                let sv = IsoClass::single(match quiver.shape() {
                                    crate::quiver::Shape::Path => Seg { a: quiver.pos_of(v), b: quiver.pos_of(v) },
                                    crate::quiver::Shape::Cycle => Seg { a: v, b: 1 },
                                });
                                for qv in [2i64, 3] {
                                    let fast: BigInt = entries
                                        .iter()
                                        .filter(|e| e.quotient == m)
                                        .map(|e| e.count.eval(&BigInt::from(qv)))
                                        .sum();
                                    let brute =
                                        brute_hall_number(quiver, &l, &m, &sv, qv).unwrap();
                                    assert_eq!(
                                        fast,
                                        BigInt::from(brute),
                                        "L={} M={} v={} q={qv}",
                                        l.key(quiver),
                                        m.key(quiver),
                                        v
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }
    }
}
