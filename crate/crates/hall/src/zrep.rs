//! Canonical integer representations of isoclasses, Hom dimensions over the
//! rationals, quotients by socle vectors, and classification of a
//! representation back to its isoclass via Hom-rank vectors. Everything here
//! is independent of the ground field size: a canonical representative has
//! 0/1 matrices, and Hom dimensions between fixed integer matrices agree
//! over every field of definition because ranks of integer matrices are
//! stable under extension (and these stay correct at every prime for the
//! sizes we enumerate, which is backed by the brute-force cross-checks).

use crate::isoclass::{segments_within, IsoClass, Seg};
use crate::quiver::{EvalQuiver, Shape};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Debug)]
pub struct ZRep {
    pub dims: Vec<usize>,
    /// Parallel to `quiver.arrows()`; entry for arrow (t, h) has shape
    /// dims[h] x dims[t].
    pub mats: Vec<Vec<Vec<i64>>>,
}

/// Where each box of each segment landed: `slot[si][k]` is the coordinate of
/// box `k` of segment `si` inside its vertex space.
pub struct BoxSlots {
    pub slot: Vec<Vec<usize>>,
}

fn seg_boxes(q: &EvalQuiver, s: &Seg) -> Vec<usize> {
    match q.shape() {
        Shape::Path => (s.a..=s.b).map(|p| q.vertex_at(p)).collect(),
        Shape::Cycle => (0..s.b).map(|m| (s.a + q.len() - m % q.len()) % q.len()).collect(),
    }
}

pub fn zrep_of(q: &EvalQuiver, cls: &IsoClass) -> (ZRep, BoxSlots) {
    let n = q.len();
    let mut dims = vec![0usize; n];
    let mut slot: Vec<Vec<usize>> = Vec::with_capacity(cls.segs().len());
    for s in cls.segs() {
        let mut mine = Vec::new();
        for v in seg_boxes(q, s) {
            mine.push(dims[v]);
            dims[v] += 1;
        }
        slot.push(mine);
    }
    let mut mats: Vec<Vec<Vec<i64>>> = q
        .arrows()
        .iter()
        .map(|&(t, h)| vec![vec![0i64; dims[t]]; dims[h]])
        .collect();
    for (si, s) in cls.segs().iter().enumerate() {
        let boxes = seg_boxes(q, s);
        match q.shape() {
            Shape::Path => {
                for (ai, &(t, h)) in q.arrows().iter().enumerate() {
                    let (pt, ph) = (q.pos_of(t), q.pos_of(h));
                    if s.a <= pt.min(ph) && pt.max(ph) <= s.b {
                        let kt = pt - s.a;
                        let kh = ph - s.a;
                        mats[ai][slot[si][kh]][slot[si][kt]] = 1;
                    }
                }
            }
            Shape::Cycle => {
                for m in 0..s.b.saturating_sub(1) {
                    let from = boxes[m];
                    let ai = q
                        .arrows()
                        .iter()
                        .position(|&(t, _)| t == from)
                        .expect("cycle vertex has one outgoing arrow");
                    mats[ai][slot[si][m + 1]][slot[si][m]] = 1;
                }
            }
        }
    }
    (ZRep { dims, mats }, BoxSlots { slot })
}

fn rational_rank(mut rows: Vec<Vec<BigRational>>) -> usize {
    let mut rank = 0;
    if rows.is_empty() {
        return 0;
    }
    let cols = rows[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = &rows[i][c] / &inv;
                for j in c..cols {
                    let s = &rows[r][j] * &f;
                    rows[i][j] = &rows[i][j] - s;
                }
            }
        }
        rank += 1;
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rank
}

/// Unique solution of a square rational system; None when singular.
fn solve_unique(a: &[Vec<i64>], b: &[i64]) -> Option<Vec<BigRational>> {
    let n = a.len();
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            row.iter()
                .map(|&x| BigRational::from(BigInt::from(x)))
                .chain(std::iter::once(BigRational::from(BigInt::from(bi))))
                .collect()
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero())?;
        m.swap(c, p);
        let inv = m[c][c].clone();
        for j in c..=n {
            let t = &m[c][j] / &inv;
            m[c][j] = t;
        }
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..=n {
                    let s = &m[c][j] * &f;
                    m[i][j] = &m[i][j] - s;
                }
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// dim Hom(X, Y) over the rationals.
pub fn hom_dim(q: &EvalQuiver, x: &ZRep, y: &ZRep) -> usize {
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
    let unknown = |v: usize, i: usize, j: usize, xd: usize| off[v] + i * xd + j;
    let mut rows: Vec<Vec<BigRational>> = Vec::new();
    for (ai, &(t, h)) in q.arrows().iter().enumerate() {
        let xa = &x.mats[ai];
        let ya = &y.mats[ai];
        for i in 0..y.dims[h] {
            for j in 0..x.dims[t] {
                let mut row = vec![BigRational::zero(); total];
                // (Phi_h x_a)(i, j)
                for k in 0..x.dims[h] {
                    if xa[k][j] != 0 {
                        row[unknown(h, i, k, x.dims[h])] += BigRational::from(BigInt::from(xa[k][j]));
                    }
                }
                // -(y_a Phi_t)(i, j)
                for k in 0..y.dims[t] {
                    if ya[i][k] != 0 {
                        row[unknown(t, k, j, x.dims[t])] -= BigRational::from(BigInt::from(ya[i][k]));
                    }
                }
                if row.iter().any(|e| !e.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    total - rational_rank(rows)
}

/// Quotient of `rep` by the line spanned by `vec` inside the vertex-`v`
/// component. `vec` must lie in the joint kernel of the arrows leaving `v`.
pub fn quotient_by(q: &EvalQuiver, rep: &ZRep, v: usize, vec: &[i64]) -> ZRep {
    assert_eq!(vec.len(), rep.dims[v]);
    let pivot = vec
        .iter()
        .position(|&c| c == 1 || c == -1)
        .expect("socle vector needs a unit coordinate");
    let pc = vec[pivot];
    for (ai, &(t, _)) in q.arrows().iter().enumerate() {
        if t == v {
            for row in &rep.mats[ai] {
                let s: i64 = row.iter().zip(vec).map(|(a, b)| a * b).sum();
                assert_eq!(s, 0, "vector must lie in the socle at the chosen vertex");
            }
        }
    }
    let keep: Vec<usize> = (0..rep.dims[v]).filter(|&i| i != pivot).collect();
    let mut dims = rep.dims.clone();
    dims[v] -= 1;
    let mats = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(ai, &(t, h))| {
            let m = &rep.mats[ai];
            if t == v && h == v {
                unreachable!("loops are never built");
            } else if t == v {
                // Columns restricted to kept slots; the pivot column is
                // redundant because the vector maps to zero.
                m.iter().map(|row| keep.iter().map(|&j| row[j]).collect()).collect()
            } else if h == v {
                // Project onto the complement: add -c_a/c_pivot times the
                // pivot row into each kept row.
                // c_i / c_pivot = vec[i] * pc because pc is a unit.
                keep.iter()
                    .map(|&i| (0..rep.dims[t]).map(|j| m[i][j] - vec[i] * pc * m[pivot][j]).collect())
                    .collect()
            } else {
                m.clone()
            }
        })
        .collect();
    ZRep { dims, mats }
}

/// Isoclass of an arbitrary representation, determined by its Hom-rank
/// vector against all candidate segments.
pub fn classify(q: &EvalQuiver, rep: &ZRep) -> IsoClass {
    let dim: Vec<i64> = rep.dims.iter().map(|&d| d as i64).collect();
    if dim.iter().all(|&d| d == 0) {
        return IsoClass::zero();
    }
    let cands = segments_within(q, &dim);
    let seg_reps: Vec<ZRep> = cands.iter().map(|&s| zrep_of(q, &IsoClass::single(s)).0).collect();
    let h: Vec<i64> = seg_reps.iter().map(|sr| hom_dim(q, sr, rep) as i64).collect();
    let gram: Vec<Vec<i64>> = seg_reps
        .iter()
        .map(|a| seg_reps.iter().map(|b| hom_dim(q, a, b) as i64).collect())
        .collect();
    let sol = solve_unique(&gram, &h).expect("Hom matrix of segment classes is nonsingular");
    let mut segs = Vec::new();
    for (i, m) in sol.iter().enumerate() {
        assert!(m.is_integer() && !m.is_negative(), "Hom-rank solution must be a nonnegative integer");
        let mult = m.to_integer();
        let mut k = BigInt::zero();
        while k < mult {
            segs.push(cands[i]);
            k += BigInt::one();
        }
    }
    let out = IsoClass::new(segs);
    assert_eq!(out.dim(q), dim, "classified dimension vector must match");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isoclass::enumerate_isoclasses;
    use lattice::WeightData;

    fn roundtrip_all(q: &EvalQuiver, dim: &[i64]) {
        for cls in enumerate_isoclasses(q, dim).unwrap() {
            let (rep, _) = zrep_of(q, &cls);
            assert_eq!(classify(q, &rep), cls, "roundtrip on {}", cls.key(q));
        }
    }

    #[test]
    fn hom_dims_on_the_two_chain() {
        let q = EvalQuiver::chain(2);
        let s0 = zrep_of(&q, &IsoClass::single(Seg { a: 0, b: 0 })).0;
        let s1 = zrep_of(&q, &IsoClass::single(Seg { a: 1, b: 1 })).0;
        let p = zrep_of(&q, &IsoClass::single(Seg { a: 0, b: 1 })).0;
        assert_eq!(hom_dim(&q, &s0, &p), 1);
        assert_eq!(hom_dim(&q, &p, &s0), 0);
        assert_eq!(hom_dim(&q, &s1, &p), 0);
        assert_eq!(hom_dim(&q, &p, &s1), 1);
        assert_eq!(hom_dim(&q, &p, &p), 1);
    }

    #[test]
    fn classification_roundtrips_on_paths() {
        let q3 = EvalQuiver::chain(3);
        roundtrip_all(&q3, &[2, 1, 2]);
        roundtrip_all(&q3, &[1, 2, 1]);
        let w = WeightData::new(&[2, 3]).unwrap();
        let qs = EvalQuiver::star_path(&w).unwrap();
        roundtrip_all(&qs, &[2, 1, 1, 1]);
    }

    #[test]
    fn classification_roundtrips_on_cycles() {
        let q2 = EvalQuiver::cycle(2);
        roundtrip_all(&q2, &[2, 1]);
        roundtrip_all(&q2, &[2, 2]);
        let q3 = EvalQuiver::cycle(3);
        roundtrip_all(&q3, &[1, 1, 1]);
        roundtrip_all(&q3, &[2, 1, 1]);
    }

    #[test]
    fn quotient_of_jordan_block_drops_the_socle() {
        // Cycle of length 2 is the smallest nilpotent model; a single
        // uniserial of length 2 quotiented by its socle leaves the top.
        let q = EvalQuiver::cycle(2);
        let cls = IsoClass::single(Seg { a: 0, b: 2 });
        let (rep, slots) = zrep_of(&q, &cls);
        let socle_vertex = 1; // box 1 of (0;2) sits at vertex 1
        let mut vec = vec![0i64; rep.dims[socle_vertex]];
        vec[slots.slot[0][1]] = 1;
        let quo = quotient_by(&q, &rep, socle_vertex, &vec);
        assert_eq!(classify(&q, &quo), IsoClass::single(Seg { a: 0, b: 1 }));
    }
}
