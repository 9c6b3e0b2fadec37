//! Closed-form tally of simple submodule lines. For a representation L and a
//! vertex v, the lines X inside the socle of L at v are partitioned by the
//! automorphism group of L into orbits indexed by antichains of qualifying
//! segment classes, each orbit having a constant quotient class L/X and a
//! cardinality that is polynomial in the field size q. This makes the
//! structure constants F^L_{M, S_v} evaluable at every prime in one pass.

use crate::isoclass::IsoClass;
use crate::quiver::{EvalQuiver, Shape};
use crate::zrep::{classify, quotient_by, zrep_of};
use num_bigint::BigInt;
use num_traits::{One, Zero};

/// q^pow * prod_j (q^ones[j] - 1) / (q - 1); `ones` is nonempty, so the
/// division is exact (one factor folds to a geometric sum).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountExpr {
    pub pow: u32,
    pub ones: Vec<u32>,
}

impl CountExpr {
    pub fn eval(&self, q: &BigInt) -> BigInt {
        let mut acc = geometric(q, self.ones[0]);
        for &m in &self.ones[1..] {
            acc *= q.pow(m) - BigInt::one();
        }
        acc * q.pow(self.pow)
    }

    /// Degree in q, for exact-mode interpolation bounds.
    pub fn degree(&self) -> u32 {
        self.pow + self.ones.iter().sum::<u32>() - 1
    }
}

fn geometric(q: &BigInt, m: u32) -> BigInt {
    let mut s = BigInt::zero();
    for k in 0..m {
        s += q.pow(k);
    }
    s
}

#[derive(Clone, Debug)]
pub struct TallyEntry {
    pub quotient: IsoClass,
    pub count: CountExpr,
}

/// Tail data of a qualifying segment at v: how far the segment extends past
/// v against the arrows on each side. Absorption order: a class with
/// entry-wise smaller tails embeds socle-aligned into a larger one, so its
/// presence in a socle vector frees the larger coordinate.
fn tails(q: &EvalQuiver, s: &crate::isoclass::Seg, v: usize) -> Option<(usize, usize)> {
    match q.shape() {
        Shape::Path => {
            let p = q.pos_of(v);
            if p < s.a || p > s.b {
                return None;
            }
            // Out-arrows of v inside the segment disqualify it.
            if p > s.a && q.arrow_points_down(p - 1) {
                return None;
            }
            if p < s.b && !q.arrow_points_down(p) {
                return None;
            }
            // Along both tails every arrow must point toward v; the path
            // shapes built by the constructors always satisfy this.
            for e in s.a..p {
                assert!(!q.arrow_points_down(e), "left tail must flow toward the socle vertex");
            }
            for e in p..s.b {
                assert!(q.arrow_points_down(e), "right tail must flow toward the socle vertex");
            }
            Some((p - s.a, s.b - p))
        }
        Shape::Cycle => {
            let n = q.len();
            let socle = (s.a + n - (s.b - 1) % n) % n;
            if socle == v {
                Some((s.b - 1, 0))
            } else {
                None
            }
        }
    }
}

/// All (quotient class, line count) orbit data for simple submodules at v.
pub fn socle_tally(q: &EvalQuiver, l: &IsoClass, v: usize) -> Vec<TallyEntry> {
    let counted = l.counted();
    // Qualifying distinct classes: (index into counted, tails, multiplicity).
    let mut qual: Vec<(usize, (usize, usize), u32)> = Vec::new();
    for (ci, (seg, mult)) in counted.iter().enumerate() {
        if let Some(t) = tails(q, seg, v) {
            qual.push((ci, t, *mult as u32));
        }
    }
    for i in 0..qual.len() {
        for j in 0..i {
            assert_ne!(qual[i].1, qual[j].1, "distinct qualifying classes have distinct tails");
        }
    }
    let below = |a: (usize, usize), b: (usize, usize)| a.0 <= b.0 && a.1 <= b.1;
    let (rep, slots) = zrep_of(q, l);
    // Socle slot of the first copy of each qualifying class.
    let first_copy_socle: Vec<usize> = qual
        .iter()
        .map(|&(ci, _, _)| {
            let si: usize = counted[..ci].iter().map(|(_, m)| m).sum();
            let seg = counted[ci].0;
            let box_idx = match q.shape() {
                Shape::Path => q.pos_of(v) - seg.a,
                Shape::Cycle => seg.b - 1,
            };
            slots.slot[si][box_idx]
        })
        .collect();
    let mut out = Vec::new();
    let k = qual.len();
    for mask in 1u32..(1 << k) {
        let members: Vec<usize> = (0..k).filter(|&i| mask >> i & 1 == 1).collect();
        let antichain = members.iter().all(|&i| {
            members
                .iter()
                .all(|&j| i == j || !(below(qual[i].1, qual[j].1) || below(qual[j].1, qual[i].1)))
        });
        if !antichain {
            continue;
        }
        // Junk classes: strictly above some member, their coordinates are
        // absorbed and range freely.
        let pow: u32 = (0..k)
            .filter(|&t| !members.contains(&t) && members.iter().any(|&s| below(qual[s].1, qual[t].1)))
            .map(|t| qual[t].2)
            .sum();
        let ones: Vec<u32> = members.iter().map(|&s| qual[s].2).collect();
        let mut vec = vec![0i64; rep.dims[v]];
        for &s in &members {
            vec[first_copy_socle[s]] = 1;
        }
        let quo = quotient_by(q, &rep, v, &vec);
        out.push(TallyEntry { quotient: classify(q, &quo), count: CountExpr { pow, ones } });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isoclass::{enumerate_isoclasses, Seg};
    use exact::projective_points;

    fn count_sum(entries: &[TallyEntry], q: i64) -> BigInt {
        let qq = BigInt::from(q);
        entries.iter().map(|e| e.count.eval(&qq)).sum()
    }

    #[test]
    fn two_block_nilpotent_splits_q_and_one() {
        // U(0;2) + U(1;1) on the 2-cycle: q lines leave the length-two
        // uniserial intact, one line splits it.
        let q = EvalQuiver::cycle(2);
        let l = IsoClass::new(vec![Seg { a: 0, b: 2 }, Seg { a: 1, b: 1 }]);
        let t = socle_tally(&q, &l, 1);
        assert_eq!(t.len(), 2);
        let big = IsoClass::single(Seg { a: 0, b: 2 });
        let split = IsoClass::new(vec![Seg { a: 0, b: 1 }, Seg { a: 1, b: 1 }]);
        for e in &t {
            if e.quotient == big {
                assert_eq!(e.count, CountExpr { pow: 1, ones: vec![1] });
            } else {
                assert_eq!(e.quotient, split);
                assert_eq!(e.count, CountExpr { pow: 0, ones: vec![1] });
            }
        }
        assert_eq!(count_sum(&t, 5), BigInt::from(6));
    }

    #[test]
    fn incomparable_pair_glues() {
        // Two arms into a center: the mixed orbit of socle lines glues the
        // two segments into the long one.
        let w = lattice::WeightData::new(&[2, 2]).unwrap();
        let q = EvalQuiver::star_path(&w).unwrap();
        let s_left = Seg { a: 0, b: 1 };
        let s_right = Seg { a: 1, b: 2 };
        let l = IsoClass::new(vec![s_left, s_right]);
        let star = 0usize; // center is vertex id 0, spine position 1
        let t = socle_tally(&q, &l, star);
        assert_eq!(t.len(), 3);
        let glued = IsoClass::single(Seg { a: 0, b: 2 });
        let mut seen_glued = false;
        for e in &t {
            if e.quotient == glued {
                seen_glued = true;
                assert_eq!(e.count, CountExpr { pow: 0, ones: vec![1, 1] });
                assert_eq!(e.count.eval(&BigInt::from(3)), BigInt::from(2));
            }
        }
        assert!(seen_glued);
        assert_eq!(count_sum(&t, 4), BigInt::from(5));
    }

    #[test]
    fn tally_counts_cover_the_projective_space_of_the_socle() {
        let w = lattice::WeightData::new(&[2, 3]).unwrap();
        let qs = EvalQuiver::star_path(&w).unwrap();
        let qc = EvalQuiver::cycle(3);
        for (q, dim) in [(&qs, vec![2i64, 1, 1, 1]), (&qc, vec![2, 2, 1])] {
            for l in enumerate_isoclasses(q, &dim).unwrap() {
                for v in 0..q.len() {
                    let t = socle_tally(q, &l, v);
                    let ker: u32 = l
                        .counted()
                        .iter()
                        .filter_map(|(s, m)| tails(q, s, v).map(|_| *m as u32))
                        .sum();
                    for qv in [2i64, 3, 5] {
                        let expect = if ker == 0 {
                            BigInt::zero()
                        } else {
                            projective_points(ker as usize, &BigInt::from(qv))
                        };
                        assert_eq!(count_sum(&t, qv), expect, "L={} v={}", l.key(q), v);
                    }
                }
            }
        }
    }
}
