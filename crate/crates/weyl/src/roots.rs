//! Root enumeration from a symmetric Cartan matrix, complete up to a height
//! cap: real roots from the reflection orbit of the simples, imaginary roots
//! from the reflection orbit of the fundamental cone.

use crate::reflect::pairing;
use exact::imat::IMat;
use lattice::WeightData;
use std::collections::{HashSet, VecDeque};

/// Simply-laced finite types realized by star quivers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DynkinType {
    A(usize),
    D(usize),
    E(usize),
}

impl DynkinType {
    pub fn root_count(&self) -> usize {
        match *self {
            DynkinType::A(n) => n * (n + 1),
            DynkinType::D(n) => 2 * n * (n - 1),
            DynkinType::E(6) => 72,
            DynkinType::E(7) => 126,
            DynkinType::E(8) => 240,
            DynkinType::E(n) => panic!("E{n} is not a finite type"),
        }
    }

    pub fn rank(&self) -> usize {
        match *self {
            DynkinType::A(n) | DynkinType::D(n) | DynkinType::E(n) => n,
        }
    }
}

impl std::fmt::Display for DynkinType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match *self {
            DynkinType::A(n) => write!(f, "A{n}"),
            DynkinType::D(n) => write!(f, "D{n}"),
            DynkinType::E(n) => write!(f, "E{n}"),
        }
    }
}

/// Classify the star of a weight sequence by the ADE list. Weight-1 arms
/// contribute no vertices and are dropped. Finite iff sum 1/p_i > t - 2
/// over the remaining arms.
pub fn detect_finite_type(w: &WeightData) -> Option<DynkinType> {
    let mut arms: Vec<u32> = w.weights().iter().copied().filter(|&p| p >= 2).collect();
    arms.sort_unstable();
    let total: usize = 1 + arms.iter().map(|&p| p as usize - 1).sum::<usize>();
    match arms.len() {
        0 | 1 | 2 => Some(DynkinType::A(total)),
        3 => match (arms[0], arms[1], arms[2]) {
            (2, 2, _) => Some(DynkinType::D(total)),
            (2, 3, 3) => Some(DynkinType::E(6)),
            (2, 3, 4) => Some(DynkinType::E(7)),
            (2, 3, 5) => Some(DynkinType::E(8)),
            _ => None,
        },
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Root {
    pub vec: Vec<i64>,
    pub real: bool,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.vec.iter().sum()
    }
}

#[derive(Debug, Clone)]
pub struct RootSet {
    roots: Vec<Root>,
    height_cap: u32,
    complete: bool,
}

impl RootSet {
    /// All roots found, positives then negatives, each height band sorted.
    pub fn roots(&self) -> &[Root] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn height_cap(&self) -> u32 {
        self.height_cap
    }

    /// True when the set is the entire root system, not a height slice.
    pub fn complete(&self) -> bool {
        self.complete
    }

    pub fn contains(&self, v: &[i64]) -> bool {
        self.roots.iter().any(|r| r.vec == v)
    }
}

fn height(v: &[i64]) -> i64 {
    v.iter().sum()
}

/// Vectors of the fundamental imaginary cone with height <= cap: nonzero,
/// nonnegative, connected support, (v, alpha_i) <= 0 for every i. Every such
/// vector is an imaginary positive root; for finite Cartan data none exist.
fn fundamental_cone(cartan: &IMat, cap: u32) -> Vec<Vec<i64>> {
    let n = cartan.rows();
    let mut out = Vec::new();
    let mut v = vec![0i64; n];
    fn rec(cartan: &IMat, v: &mut Vec<i64>, pos: usize, budget: i64, out: &mut Vec<Vec<i64>>) {
        if pos == v.len() {
            if v.iter().all(|&x| x == 0) {
                return;
            }
            let cv = cartan.mul_vec(v);
            if cv.iter().any(|&x| x > 0) {
                return;
            }
            if support_connected(cartan, v) {
                out.push(v.clone());
            }
            return;
        }
        for x in 0..=budget {
            v[pos] = x;
            rec(cartan, v, pos + 1, budget - x, out);
        }
        v[pos] = 0;
    }
    rec(cartan, &mut v, 0, i64::from(cap), &mut out);
    out
}

fn support_connected(cartan: &IMat, v: &[i64]) -> bool {
    let support: Vec<usize> = (0..v.len()).filter(|&i| v[i] != 0).collect();
    if support.is_empty() {
        return false;
    }
    let mut seen = HashSet::new();
    let mut stack = vec![support[0]];
    seen.insert(support[0]);
    while let Some(i) = stack.pop() {
        for &j in &support {
            if !seen.contains(&j) && cartan[(i, j)] < 0 {
                seen.insert(j);
                stack.push(j);
            }
        }
    }
    seen.len() == support.len()
}

/// Breadth-first closure of the seed roots under simple reflections, kept
/// positive and within the height cap. Complete for every height <= cap:
/// any positive root descends to a seed through height-decreasing simple
/// reflections, so the reversed path stays under the cap.
pub fn enumerate_roots_from_cartan(cartan: &IMat, height_cap: u32, finite: bool) -> RootSet {
    assert!(height_cap >= 1, "height cap must be at least 1");
    let n = cartan.rows();
    let cap = i64::from(height_cap);
    let mut seeds: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut e = vec![0i64; n];
            e[i] = 1;
            e
        })
        .collect();
    if !finite {
        seeds.extend(fundamental_cone(cartan, height_cap));
    }

    let mut found: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
    let mut truncated = false;
    for s in seeds {
        if height(&s) <= cap && found.insert(s.clone()) {
            queue.push_back(s);
        }
    }
    while let Some(beta) = queue.pop_front() {
        let cb = cartan.mul_vec(&beta);
        for i in 0..n {
            let mut gamma = beta.clone();
            gamma[i] -= cb[i];
            if gamma.iter().any(|&x| x < 0) {
                continue;
            }
            if height(&gamma) > cap {
                truncated = true;
                continue;
            }
            if found.insert(gamma.clone()) {
                queue.push_back(gamma);
            }
        }
    }

    let mut positives: Vec<Vec<i64>> = found.into_iter().collect();
    positives.sort_by_key(|v| (height(v), v.clone()));
    let mut roots = Vec::with_capacity(2 * positives.len());
    for v in &positives {
        let real = pairing(cartan, v, v) == 2;
        roots.push(Root { vec: v.clone(), real });
    }
    for v in &positives {
        let real = pairing(cartan, v, v) == 2;
        roots.push(Root { vec: v.iter().map(|x| -x).collect(), real });
    }
    RootSet { roots, height_cap, complete: finite && !truncated }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linear::an_cartan;
    use crate::quiver::StarQuiver;

    #[test]
    fn finite_type_detection() {
        let t = |p: &[u32]| detect_finite_type(&WeightData::new(p).unwrap());
        assert_eq!(t(&[2, 2]), Some(DynkinType::A(3)));
        assert_eq!(t(&[2, 3]), Some(DynkinType::A(4)));
        assert_eq!(t(&[1, 3]), Some(DynkinType::A(3)));
        assert_eq!(t(&[2, 2, 2]), Some(DynkinType::D(4)));
        assert_eq!(t(&[2, 2, 5]), Some(DynkinType::D(7)));
        assert_eq!(t(&[2, 3, 3]), Some(DynkinType::E(6)));
        assert_eq!(t(&[2, 3, 4]), Some(DynkinType::E(7)));
        assert_eq!(t(&[2, 3, 5]), Some(DynkinType::E(8)));
        assert_eq!(t(&[2, 3, 6]), None);
        assert_eq!(t(&[3, 3, 3]), None);
        assert_eq!(t(&[2, 2, 2, 2]), None);
        assert_eq!(t(&[2, 3, 7]), None);
    }

    #[test]
    fn full_finite_enumerations() {
        for (p, expect) in [
            (vec![2u32, 2], 12usize),
            (vec![2, 3], 20),
            (vec![2, 2, 2], 24),
            (vec![2, 3, 5], 240),
        ] {
            let q = StarQuiver::new(WeightData::new(&p).unwrap());
            let rs = q.enumerate_roots(40);
            assert!(rs.complete());
            assert_eq!(rs.len(), expect);
            assert!(rs.roots().iter().all(|r| r.real));
            assert_eq!(rs.len(), q.dynkin_type().unwrap().root_count());
        }
    }

    #[test]
    fn cap_one_gives_simples() {
        let q = StarQuiver::new(WeightData::new(&[2, 3]).unwrap());
        let rs = q.enumerate_roots(1);
        assert_eq!(rs.len(), 8);
        assert!(!rs.complete());
        assert!(rs.contains(&[1, 0, 0, 0]));
        assert!(rs.contains(&[-1, 0, 0, 0]));
    }

    #[test]
    fn closed_under_negation() {
        let q = StarQuiver::new(WeightData::new(&[2, 2, 2]).unwrap());
        let rs = q.enumerate_roots(10);
        for r in rs.roots() {
            let neg: Vec<i64> = r.vec.iter().map(|x| -x).collect();
            assert!(rs.contains(&neg));
        }
    }

    #[test]
    fn affine_star_has_isotropic_roots() {
        // Weights (2,2,2,2): affine D4 with delta = (2,1,1,1,1) of height 6.
        let q = StarQuiver::new(WeightData::new(&[2, 2, 2, 2]).unwrap());
        let rs = q.enumerate_roots(13);
        assert!(!rs.complete());
        let c = q.cartan_matrix();
        let delta = vec![2i64, 1, 1, 1, 1];
        assert!(rs.contains(&delta));
        assert_eq!(pairing(&c, &delta, &delta), 0);
        let two_delta = vec![4i64, 2, 2, 2, 2];
        assert!(rs.contains(&two_delta));
        // Real + delta stays real: (1,1,1,1,1)... that vector is real iff
        // self-pairing 2; check a known affine real root alpha_star + delta.
        let mut re = vec![1i64, 0, 0, 0, 0];
        for (a, d) in re.iter_mut().zip(&delta) {
            *a += d;
        }
        assert!(rs.contains(&re));
        assert_eq!(pairing(&c, &re, &re), 2);
        let im = rs.roots().iter().filter(|r| !r.real).count();
        assert_eq!(im, 4);
    }

    #[test]
    fn an_cartan_roots_are_intervals() {
        let rs = enumerate_roots_from_cartan(&an_cartan(4), 10, true);
        assert!(rs.complete());
        assert_eq!(rs.len(), 20);
        // Positive roots of A_n are exactly the 0/1 interval vectors.
        for r in rs.roots() {
            let pos: Vec<i64> = if height(&r.vec) > 0 {
                r.vec.clone()
            } else {
                r.vec.iter().map(|x| -x).collect()
            };
            assert!(pos.iter().all(|&x| x == 0 || x == 1));
            let ones: Vec<usize> = (0..4).filter(|&i| pos[i] == 1).collect();
            assert!(ones.windows(2).all(|w| w[1] == w[0] + 1));
        }
    }
}
