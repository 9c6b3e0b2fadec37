//! Isomorphism classes of representations. Over a path quiver every
//! indecomposable is a segment (an interval of spine positions); over a
//! cyclic quiver the nilpotent indecomposables are uniserials (top vertex
//! plus length, winding allowed). An isoclass is a multiset of segments.

use crate::quiver::{EvalQuiver, Shape};
use crate::HallError;

/// Entry-wise cap on dimension vectors the enumeration layer accepts.
pub const DIM_ENTRY_CAP: i64 = 6;

/// One indecomposable. Path: spine positions `a..=b`. Cycle: top vertex `a`,
/// length `b >= 1`, basis walking a, a-1, ... downward mod p.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Seg {
    pub a: usize,
    pub b: usize,
}

impl Seg {
    pub fn dim(&self, q: &EvalQuiver) -> Vec<i64> {
        let n = q.len();
        let mut d = vec![0i64; n];
        match q.shape() {
            Shape::Path => {
                for p in self.a..=self.b {
                    d[q.vertex_at(p)] += 1;
                }
            }
            Shape::Cycle => {
                for m in 0..self.b {
                    d[(self.a + n - m % n) % n] += 1;
                }
            }
        }
        d
    }

    /// Number of basis boxes.
    pub fn total(&self, q: &EvalQuiver) -> usize {
        match q.shape() {
            Shape::Path => self.b - self.a + 1,
            Shape::Cycle => self.b,
        }
    }

    pub fn key(&self, q: &EvalQuiver) -> String {
        match q.shape() {
            Shape::Path => format!("p{}-{}", self.a, self.b),
            Shape::Cycle => format!("c{}l{}", self.a, self.b),
        }
    }

    pub fn display(&self, q: &EvalQuiver) -> String {
        match q.shape() {
            Shape::Path => {
                if self.a == self.b {
                    format!("[{}]", q.label(q.vertex_at(self.a)))
                } else {
                    format!("[{}..{}]", q.label(q.vertex_at(self.a)), q.label(q.vertex_at(self.b)))
                }
            }
            Shape::Cycle => format!("({};{})", q.label(self.a), self.b),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct IsoClass {
    segs: Vec<Seg>,
}

impl IsoClass {
    pub fn new(mut segs: Vec<Seg>) -> Self {
        segs.sort();
        IsoClass { segs }
    }

    pub fn zero() -> Self {
        IsoClass { segs: Vec::new() }
    }

    pub fn single(s: Seg) -> Self {
        IsoClass { segs: vec![s] }
    }

    pub fn segs(&self) -> &[Seg] {
        &self.segs
    }

    pub fn is_zero(&self) -> bool {
        self.segs.is_empty()
    }

    pub fn dim(&self, q: &EvalQuiver) -> Vec<i64> {
        let mut d = vec![0i64; q.len()];
        for s in &self.segs {
            for (acc, x) in d.iter_mut().zip(s.dim(q)) {
                *acc += x;
            }
        }
        d
    }

    /// Distinct segments with multiplicities, preserving sorted order.
    pub fn counted(&self) -> Vec<(Seg, usize)> {
        let mut out: Vec<(Seg, usize)> = Vec::new();
        for &s in &self.segs {
            match out.last_mut() {
                Some((t, m)) if *t == s => *m += 1,
                _ => out.push((s, 1)),
            }
        }
        out
    }

    pub fn key(&self, q: &EvalQuiver) -> String {
        if self.segs.is_empty() {
            return "0".to_string();
        }
        self.segs.iter().map(|s| s.key(q)).collect::<Vec<_>>().join("+")
    }

    pub fn display(&self, q: &EvalQuiver) -> String {
        if self.segs.is_empty() {
            return "0".to_string();
        }
        self.segs.iter().map(|s| s.display(q)).collect::<Vec<_>>().join("+")
    }
}

fn check_dim(dim: &[i64]) -> Result<(), HallError> {
    for &d in dim {
        if d < 0 {
            return Err(HallError::DimGuard("negative dimension entry".to_string()));
        }
        if d > DIM_ENTRY_CAP {
            return Err(HallError::DimGuard(format!(
                "dimension entry {d} exceeds the enumeration cap {DIM_ENTRY_CAP}"
            )));
        }
    }
    Ok(())
}

/// All segments whose dimension vector fits under `dim` entry-wise.
pub fn segments_within(q: &EvalQuiver, dim: &[i64]) -> Vec<Seg> {
    let n = q.len();
    let mut out = Vec::new();
    match q.shape() {
        Shape::Path => {
            for a in 0..n {
                for b in a..n {
                    let s = Seg { a, b };
                    if fits(&s.dim(q), dim) {
                        out.push(s);
                    } else {
                        break;
                    }
                }
            }
        }
        Shape::Cycle => {
            let total: i64 = dim.iter().sum();
            for top in 0..n {
                for len in 1..=total.max(0) as usize {
                    let s = Seg { a: top, b: len };
                    if fits(&s.dim(q), dim) {
                        out.push(s);
                    } else {
                        break;
                    }
                }
            }
        }
    }
    out.sort();
    out
}

fn fits(d: &[i64], cap: &[i64]) -> bool {
    d.iter().zip(cap).all(|(a, b)| a <= b)
}

/// Every isoclass with the given dimension vector, in a stable order.
pub fn enumerate_isoclasses(q: &EvalQuiver, dim: &[i64]) -> Result<Vec<IsoClass>, HallError> {
    assert_eq!(dim.len(), q.len());
    check_dim(dim)?;
    let cands = segments_within(q, dim);
    let mut out = Vec::new();
    let mut stack = Vec::new();
    let mut rem = dim.to_vec();
    fn rec(
        q: &EvalQuiver,
        cands: &[Seg],
        from: usize,
        rem: &mut Vec<i64>,
        stack: &mut Vec<Seg>,
        out: &mut Vec<IsoClass>,
    ) {
        if rem.iter().all(|&x| x == 0) {
            out.push(IsoClass::new(stack.clone()));
            return;
        }
        let left: i64 = rem.iter().sum();
        for i in from..cands.len() {
            let s = cands[i];
            if s.total(q) as i64 > left {
                continue;
            }
            let d = s.dim(q);
            if !fits(&d, rem) {
                continue;
            }
            for (r, x) in rem.iter_mut().zip(&d) {
                *r -= x;
            }
            stack.push(s);
            rec(q, cands, i, rem, stack, out);
            stack.pop();
            for (r, x) in rem.iter_mut().zip(&d) {
                *r += x;
            }
        }
    }
    rec(q, &cands, 0, &mut rem, &mut stack, &mut out);
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_classes_of_dim_one_one_on_the_two_chain() {
        let q = EvalQuiver::chain(2);
        let cls = enumerate_isoclasses(&q, &[1, 1]).unwrap();
        assert_eq!(cls.len(), 2);
        // S_1 + S_2 and the length-two segment.
        assert!(cls.contains(&IsoClass::new(vec![Seg { a: 0, b: 0 }, Seg { a: 1, b: 1 }])));
        assert!(cls.contains(&IsoClass::single(Seg { a: 0, b: 1 })));
    }

    #[test]
    fn three_classes_of_dim_one_one_on_the_two_cycle() {
        let q = EvalQuiver::cycle(2);
        let cls = enumerate_isoclasses(&q, &[1, 1]).unwrap();
        // S_0 + S_1 and the two uniserials of length two.
        assert_eq!(cls.len(), 3);
        assert!(cls.contains(&IsoClass::new(vec![Seg { a: 0, b: 1 }, Seg { a: 1, b: 1 }])));
        assert!(cls.contains(&IsoClass::single(Seg { a: 0, b: 2 })));
        assert!(cls.contains(&IsoClass::single(Seg { a: 1, b: 2 })));
    }

    #[test]
    fn winding_uniserials_are_enumerated() {
        let q = EvalQuiver::cycle(2);
        let cls = enumerate_isoclasses(&q, &[2, 1]).unwrap();
        // Length-three uniserial topped at 0, plus decomposables.
        assert!(cls.contains(&IsoClass::single(Seg { a: 0, b: 3 })));
        for c in &cls {
            assert_eq!(c.dim(&q), vec![2, 1]);
        }
    }

    #[test]
    fn dim_cap_is_enforced() {
        let q = EvalQuiver::chain(1);
        assert!(matches!(
            enumerate_isoclasses(&q, &[7]),
            Err(HallError::DimGuard(_))
        ));
    }
}
