//! Quivers whose module categories the evaluation layer can enumerate:
//! linear paths (any orientation along a fixed spine) and cyclic quivers
//! with all arrows in one direction (nilpotent representations only).

use crate::HallError;
use lattice::{vertex_count, vertex_index, Vertex, WeightData};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    Path,
    Cycle,
}

/// A quiver the Hall-number routines understand. `spine` lists vertex ids in
/// path (or cycle) order; adjacent spine entries are joined by exactly one
/// arrow, recorded in `arrows` as (tail, head) pairs.
#[derive(Clone, Debug)]
pub struct EvalQuiver {
    shape: Shape,
    spine: Vec<usize>,
    pos_of: Vec<usize>,
    arrows: Vec<(usize, usize)>,
    labels: Vec<String>,
    tag: String,
}

impl EvalQuiver {
    fn build(shape: Shape, spine: Vec<usize>, arrows: Vec<(usize, usize)>, labels: Vec<String>, tag: String) -> Self {
        let n = spine.len();
        let mut pos_of = vec![usize::MAX; n];
        for (p, &v) in spine.iter().enumerate() {
            assert!(v < n && pos_of[v] == usize::MAX, "spine must be a permutation");
            pos_of[v] = p;
        }
        for &(t, h) in &arrows {
            assert!(t < n && h < n && t != h);
        }
        EvalQuiver { shape, spine, pos_of, arrows, labels, tag }
    }

    /// Equioriented A_n with arrows i -> i-1 (vertex ids 0..n-1, so u_0 is the
    /// sink). Vertex id k carries label `k+1` to match 1-based displays.
    pub fn chain(n: usize) -> Self {
        assert!(n >= 1);
        let spine: Vec<usize> = (0..n).collect();
        let arrows: Vec<(usize, usize)> = (1..n).map(|i| (i, i - 1)).collect();
        let labels = (1..=n).map(|i| format!("{i}")).collect();
        Self::build(Shape::Path, spine, arrows, labels, format!("chain{n}"))
    }

    /// Cyclic quiver on Z/p with arrows v -> v-1 (mod p).
    pub fn cycle(p: usize) -> Self {
        assert!(p >= 2);
        let spine: Vec<usize> = (0..p).collect();
        let arrows: Vec<(usize, usize)> = (0..p).map(|v| (v, (v + p - 1) % p)).collect();
        let labels = (0..p).map(|j| format!("{j}")).collect();
        Self::build(Shape::Cycle, spine, arrows, labels, format!("cycle{p}"))
    }

    /// The star quiver of a weight sequence with at most two arms, flattened
    /// to a path: arm 1 reversed, then the center, then arm 2. All arrows
    /// point toward the center. Vertex ids follow the ambient lattice order
    /// (center first, then arm-major), so dimension vectors line up with
    /// presentation coordinates without translation.
    pub fn star_path(w: &WeightData) -> Result<Self, HallError> {
        let t = w.arms();
        if t > 2 {
            return Err(HallError::UnsupportedShape(format!(
                "module enumeration needs a path-shaped quiver; a star with {t} arms is not one"
            )));
        }
        let n = vertex_count(w);
        let idx = |arm: usize, j: u32| vertex_index(w, Vertex::Arm { arm, j });
        let mut spine = Vec::with_capacity(n);
        if t >= 1 {
            for j in (1..w.weight(1)).rev() {
                spine.push(idx(1, j));
            }
        }
        spine.push(vertex_index(w, Vertex::Star));
        if t >= 2 {
            for j in 1..w.weight(2) {
                spine.push(idx(2, j));
            }
        }
        let mut arrows = Vec::with_capacity(n.saturating_sub(1));
        for arm in 1..=t {
            arrows.push((idx(arm, 1), vertex_index(w, Vertex::Star)));
            for j in 2..w.weight(arm) {
                arrows.push((idx(arm, j), idx(arm, j - 1)));
            }
        }
        let mut labels = vec![String::new(); n];
        labels[vertex_index(w, Vertex::Star)] = "*".to_string();
        for arm in 1..=t {
            for j in 1..w.weight(arm) {
                labels[idx(arm, j)] = format!("{arm}{j}");
            }
        }
        let tag = format!(
            "star{}",
            (1..=t).map(|a| w.weight(a).to_string()).collect::<Vec<_>>().join(".")
        );
        Ok(Self::build(Shape::Path, spine, arrows, labels, tag))
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn len(&self) -> usize {
        self.spine.len()
    }

    pub fn spine(&self) -> &[usize] {
        &self.spine
    }

    pub fn pos_of(&self, v: usize) -> usize {
        self.pos_of[v]
    }

    pub fn vertex_at(&self, pos: usize) -> usize {
        self.spine[pos]
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn label(&self, v: usize) -> &str {
        &self.labels[v]
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    /// Euler form <x,y> = sum_v x_v y_v - sum_{a: t->h} x_t y_h.
    pub fn euler(&self, x: &[i64], y: &[i64]) -> i64 {
        assert_eq!(x.len(), self.len());
        assert_eq!(y.len(), self.len());
        let mut s: i64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
        for &(t, h) in &self.arrows {
            s -= x[t] * y[h];
        }
        s
    }

    /// Symmetrized Euler form (x,y) = <x,y> + <y,x>.
    pub fn sym(&self, x: &[i64], y: &[i64]) -> i64 {
        self.euler(x, y) + self.euler(y, x)
    }

    /// Between adjacent spine positions p and p+1 (mod n for cycles) there is
    /// exactly one arrow; true when it points from position p+1 down to p.
    pub fn arrow_points_down(&self, p: usize) -> bool {
        let n = self.len();
        let (a, b) = (self.spine[p], self.spine[(p + 1) % n]);
        if self.arrows.contains(&(b, a)) {
            true
        } else {
            assert!(self.arrows.contains(&(a, b)), "spine gap without an arrow");
            false
        }
    }
}
