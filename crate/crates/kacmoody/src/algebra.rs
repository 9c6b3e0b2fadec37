//! The Lie algebra of a star quiver in two exact models. Finite type gets a
//! Chevalley basis with asymmetry-function signs; everything else gets a
//! height-truncated graded model built from iterated brackets of the
//! generators with linear-dependence elimination at each height.
//!
//! Basis order in both models: positive root vectors by height, then their
//! negatives in the mirrored order, then the cartan h_v over the vertex
//! order. In the finite model the negative basis vector at -alpha_v is
//! e_{-alpha_v} = -f_v; in the truncated model it is the f-word itself.

use crate::KacmoodyError;
use exact::imat::IMat;
use lattice::{vertex_list, WeightData};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use report::{Check, Report, Status};
use std::collections::{BTreeMap, HashMap};
use weyl::StarQuiver;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Finite,
    Truncated { height: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasisVector {
    /// Root vector of the stated degree.
    Root(Vec<i64>),
    /// h_v at the stated vertex index.
    Cartan(usize),
}

/// Rational coordinate vector over the basis of a `KMAlgebra`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LieElement {
    coords: BTreeMap<usize, BigRational>,
}

impl LieElement {
    pub fn zero() -> LieElement {
        LieElement::default()
    }

    pub fn unit(idx: usize) -> LieElement {
        LieElement::term(idx, 1)
    }

    pub fn term(idx: usize, coeff: i64) -> LieElement {
        let mut e = LieElement::zero();
        e.add_term(idx, &rat(coeff));
        e
    }

    pub fn add_term(&mut self, idx: usize, coeff: &BigRational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.coords.entry(idx).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.coords.remove(&idx);
        }
    }

    pub fn add_scaled(&mut self, other: &LieElement, coeff: &BigRational) {
        if coeff.is_zero() {
            return;
        }
        for (i, c) in &other.coords {
            self.add_term(*i, &(c * coeff));
        }
    }

    pub fn scaled(&self, coeff: &BigRational) -> LieElement {
        let mut out = LieElement::zero();
        out.add_scaled(self, coeff);
        out
    }

    pub fn scaled_int(&self, coeff: i64) -> LieElement {
        self.scaled(&rat(coeff))
    }

    pub fn negated(&self) -> LieElement {
        self.scaled_int(-1)
    }

    pub fn plus(&self, other: &LieElement) -> LieElement {
        let mut out = self.clone();
        out.add_scaled(other, &rat(1));
        out
    }

    pub fn minus(&self, other: &LieElement) -> LieElement {
        let mut out = self.clone();
        out.add_scaled(other, &rat(-1));
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn coords(&self) -> &BTreeMap<usize, BigRational> {
        &self.coords
    }

    pub fn coeff(&self, idx: usize) -> BigRational {
        self.coords.get(&idx).cloned().unwrap_or_else(BigRational::zero)
    }
}

pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl std::fmt::Debug for KMAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("KMAlgebra")
            .field("weights", &self.w.weights())
            .field("mode", &self.mode)
            .field("dim", &self.basis.len())
            .finish()
    }
}

pub struct KMAlgebra {
    quiver: StarQuiver,
    w: WeightData,
    mode: Mode,
    basis: Vec<BasisVector>,
    degrees: Vec<Vec<i64>>,
    space_of: HashMap<Vec<i64>, Vec<usize>>,
    cartan_base: usize,
    rank: usize,
    sym: IMat,
    table: Vec<Vec<Option<LieElement>>>,
    /// basis[idx] == coeff * [basis[gen], basis[sub]], present for every root
    /// vector of |height| >= 2; drives extension of generator images.
    made_from: Vec<Option<(usize, usize, i64)>>,
}

impl KMAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn quiver(&self) -> &StarQuiver {
        &self.quiver
    }

    pub fn weights(&self) -> &WeightData {
        &self.w
    }

    pub fn basis(&self) -> &[BasisVector] {
        &self.basis
    }

    /// Degree in ZI of a basis vector; zero for cartan directions.
    pub fn degree(&self, idx: usize) -> &[i64] {
        &self.degrees[idx]
    }

    pub fn cartan_index(&self, v: usize) -> usize {
        self.cartan_base + v
    }

    pub fn is_cartan(&self, idx: usize) -> bool {
        idx >= self.cartan_base
    }

    pub fn root_space(&self, deg: &[i64]) -> &[usize] {
        self.space_of.get(deg).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn root_index(&self, deg: &[i64]) -> Option<usize> {
        match self.root_space(deg) {
            [idx] => Some(*idx),
            _ => None,
        }
    }

    fn simple(&self, v: usize, positive: bool) -> usize {
        let mut deg = vec![0i64; self.rank];
        deg[v] = if positive { 1 } else { -1 };
        self.root_index(&deg).expect("simple root spaces are one-dimensional")
    }

    pub fn simple_pos_index(&self, v: usize) -> usize {
        self.simple(v, true)
    }

    pub fn simple_neg_index(&self, v: usize) -> usize {
        self.simple(v, false)
    }

    pub fn e(&self, v: usize) -> LieElement {
        LieElement::unit(self.simple_pos_index(v))
    }

    /// Chevalley f_v, normalized so that [e_v, f_v] = h_v in both models.
    pub fn f(&self, v: usize) -> LieElement {
        let idx = self.simple_neg_index(v);
        match self.mode {
            Mode::Finite => LieElement::term(idx, -1),
            Mode::Truncated { .. } => LieElement::unit(idx),
        }
    }

    pub fn h(&self, v: usize) -> LieElement {
        LieElement::unit(self.cartan_base + v)
    }

    pub fn cartan_matrix(&self) -> &IMat {
        &self.sym
    }

    /// Symmetric form (alpha_u, beta).
    pub fn pairing_with_simple(&self, u: usize, beta: &[i64]) -> i64 {
        self.sym.row(u).iter().zip(beta).map(|(a, b)| a * b).sum()
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &Option<LieElement> {
        &self.table[i][j]
    }

    pub(crate) fn made_from(&self, idx: usize) -> Option<(usize, usize, i64)> {
        self.made_from[idx]
    }

    pub fn bracket(&self, x: &LieElement, y: &LieElement) -> Result<LieElement, KacmoodyError> {
        let mut out = LieElement::zero();
        for (i, a) in x.coords() {
            for (j, b) in y.coords() {
                match &self.table[*i][*j] {
                    Some(e) => out.add_scaled(e, &(a * b)),
                    None => {
                        let h = match self.mode {
                            Mode::Truncated { height } => height,
                            Mode::Finite => 0,
                        };
                        return Err(KacmoodyError::OutsideWindow(h));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn label(&self, idx: usize) -> String {
        match &self.basis[idx] {
            BasisVector::Root(deg) => {
                let parts: Vec<String> = deg.iter().map(|c| c.to_string()).collect();
                format!("e[{}]", parts.join(" "))
            }
            BasisVector::Cartan(v) => format!("h[{}]", vertex_list(&self.w)[*v]),
        }
    }

    pub fn format_element(&self, x: &LieElement) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = x
            .coords()
            .iter()
            .map(|(i, c)| format!("{} {}", c, self.label(*i)))
            .collect();
        parts.join(" + ")
    }

    /// Common degree of the support, if the element is homogeneous.
    pub fn homogeneous_degree(&self, x: &LieElement) -> Option<Vec<i64>> {
        let mut deg: Option<Vec<i64>> = None;
        for (i, _) in x.coords() {
            let d = self.degrees[*i].clone();
            match &deg {
                None => deg = Some(d),
                Some(existing) if *existing == d => {}
                Some(_) => return None,
            }
        }
        deg
    }
}

pub fn build_algebra(quiver: &StarQuiver, mode: Mode) -> Result<KMAlgebra, KacmoodyError> {
    match mode {
        Mode::Finite => build_finite(quiver.clone()),
        Mode::Truncated { height } => build_truncated(quiver.clone(), height),
    }
}

fn height(deg: &[i64]) -> i64 {
    deg.iter().sum()
}

/// Sign (-1)^(a^T M b) for the arrow-orientation parity matrix M.
fn epsilon(m: &[Vec<u8>], a: &[i64], b: &[i64]) -> i64 {
    let mut acc = 0i64;
    for (u, row) in m.iter().enumerate() {
        if a[u] == 0 {
            continue;
        }
        for (v, bit) in row.iter().enumerate() {
            if *bit == 1 {
                acc += a[u] * b[v];
            }
        }
    }
    if acc.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn build_finite(quiver: StarQuiver) -> Result<KMAlgebra, KacmoodyError> {
    quiver.dynkin_type().ok_or(KacmoodyError::NotFiniteType)?;
    let w = quiver.weights().clone();
    let rank = quiver.vertex_count();
    // Height 64 clears every finite diagram; E8 tops out at 29.
    let roots = quiver.enumerate_roots(64);
    assert!(roots.complete(), "finite root system closes under reflections");

    let mut basis = Vec::new();
    let mut degrees = Vec::new();
    let mut space_of: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
    for r in roots.roots() {
        let idx = basis.len();
        basis.push(BasisVector::Root(r.vec.clone()));
        degrees.push(r.vec.clone());
        space_of.insert(r.vec.clone(), vec![idx]);
    }
    let cartan_base = basis.len();
    for v in 0..rank {
        basis.push(BasisVector::Cartan(v));
        degrees.push(vec![0; rank]);
    }
    let dim = basis.len();
    let sym = quiver.cartan_matrix();

    // Parity matrix: diagonal ones plus one entry per quiver arrow.
    let mut parity = vec![vec![0u8; rank]; rank];
    for v in 0..rank {
        parity[v][v] = 1;
    }
    for (src, tgt) in quiver.arrows() {
        let s = quiver.index(src).expect("arrow endpoints are vertices");
        let t = quiver.index(tgt).expect("arrow endpoints are vertices");
        parity[s][t] = 1;
    }

    let pair = |u: usize, beta: &[i64]| -> i64 {
        sym.row(u).iter().zip(beta).map(|(a, b)| a * b).sum()
    };

    let mut table: Vec<Vec<Option<LieElement>>> = vec![vec![None; dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            let entry = match (&basis[i], &basis[j]) {
                (BasisVector::Cartan(_), BasisVector::Cartan(_)) => LieElement::zero(),
                (BasisVector::Cartan(u), BasisVector::Root(beta)) => {
                    LieElement::term(j, pair(*u, beta))
                }
                (BasisVector::Root(beta), BasisVector::Cartan(u)) => {
                    LieElement::term(i, -pair(*u, beta))
                }
                (BasisVector::Root(beta), BasisVector::Root(gamma)) => {
                    let sum: Vec<i64> = beta.iter().zip(gamma).map(|(a, b)| a + b).collect();
                    let sgn = epsilon(&parity, beta, gamma);
                    if sum.iter().all(|c| *c == 0) {
                        let mut h = LieElement::zero();
                        for (v, c) in beta.iter().enumerate() {
                            h.add_term(cartan_base + v, &rat(sgn * c));
                        }
                        h
                    } else if let Some(target) = space_of.get(&sum) {
                        LieElement::term(target[0], sgn)
                    } else {
                        LieElement::zero()
                    }
                }
            };
            table[i][j] = Some(entry);
        }
    }

    let mut made_from: Vec<Option<(usize, usize, i64)>> = vec![None; dim];
    for idx in 0..cartan_base {
        let beta = degrees[idx].clone();
        let ht = height(&beta);
        if ht.abs() < 2 {
            continue;
        }
        let step = if ht > 0 { 1 } else { -1 };
        let found = (0..rank).find_map(|v| {
            let mut gamma = beta.clone();
            gamma[v] -= step;
            let sub = *space_of.get(&gamma)?.first()?;
            let mut alpha = vec![0i64; rank];
            alpha[v] = step;
            let gen = space_of[&alpha][0];
            let coeff = epsilon(&parity, &alpha, &gamma);
            Some((gen, sub, coeff))
        });
        made_from[idx] = Some(found.expect("every root of |height| >= 2 peels off a simple"));
    }

    Ok(KMAlgebra {
        quiver,
        w,
        mode: Mode::Finite,
        basis,
        degrees,
        space_of,
        cartan_base,
        rank,
        sym,
        table,
        made_from,
    })
}

/// One height level of the truncated positive part.
struct Level {
    degs: Vec<Vec<i64>>,
    /// (generator vertex, index in the level below); unused at level 1.
    made: Vec<(usize, usize)>,
    /// fdown[k][j] = [f_j, b_k] over the level below (over the cartan at level 1).
    fdown: Vec<Vec<Vec<BigRational>>>,
}

/// Column-pivot reduced row echelon form; returns pivot column indices. For a
/// non-pivot column c, row t of the result holds its coefficient over the
/// t-th pivot column.
fn rref(rows: &mut [Vec<BigRational>]) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = if nrows == 0 { 0 } else { rows[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(pr) = (r..nrows).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].recip();
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..nrows {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for cc in 0..ncols {
                    let sub = &rows[r][cc] * &f;
                    rows[i][cc] = &rows[i][cc] - &sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

enum Loc {
    Pos(usize, usize),
    Neg(usize, usize),
    Cartan(usize),
}

struct TruncBuilder {
    rank: usize,
    h: usize,
    sym: IMat,
    levels: Vec<Level>,
    /// eup[m-1][i][k] = [e_i, level_m[k]] over level m+1; absent for m = h.
    eup: Vec<Vec<Vec<Vec<BigRational>>>>,
    pos_global: Vec<Vec<usize>>,
    neg_global: Vec<Vec<usize>>,
    locs: Vec<Loc>,
    cartan_base: usize,
}

impl TruncBuilder {
    fn pair(&self, u: usize, beta: &[i64]) -> i64 {
        self.sym.row(u).iter().zip(beta).map(|(a, b)| a * b).sum()
    }

    fn degree(&self, idx: usize) -> Vec<i64> {
        match self.locs[idx] {
            Loc::Pos(m, k) => self.levels[m - 1].degs[k].clone(),
            Loc::Neg(m, k) => self.levels[m - 1].degs[k].iter().map(|c| -c).collect(),
            Loc::Cartan(_) => vec![0; self.rank],
        }
    }

    fn bracket_basis(
        &self,
        a: usize,
        b: usize,
        memo: &mut HashMap<(usize, usize), Option<LieElement>>,
    ) -> Option<LieElement> {
        if let Some(hit) = memo.get(&(a, b)) {
            return hit.clone();
        }
        let out = self.compute(a, b, memo);
        memo.insert((a, b), out.clone());
        out
    }

    fn bracket_with_element(
        &self,
        a: usize,
        x: &LieElement,
        memo: &mut HashMap<(usize, usize), Option<LieElement>>,
    ) -> Option<LieElement> {
        let mut out = LieElement::zero();
        for (j, c) in x.coords() {
            let part = self.bracket_basis(a, *j, memo)?;
            out.add_scaled(&part, c);
        }
        Some(out)
    }

    fn signed_height(&self, idx: usize) -> i64 {
        match self.locs[idx] {
            Loc::Pos(m, _) => m as i64,
            Loc::Neg(m, _) => -(m as i64),
            Loc::Cartan(_) => 0,
        }
    }

    fn compute(
        &self,
        a: usize,
        b: usize,
        memo: &mut HashMap<(usize, usize), Option<LieElement>>,
    ) -> Option<LieElement> {
        // Definedness must depend on the degree pair alone: a same-side
        // bracket past the cap is out of window even when one evaluation
        // order could prove it zero without leaving the window.
        let (ha, hb) = (self.signed_height(a), self.signed_height(b));
        if ha != 0 && hb != 0 && (ha > 0) == (hb > 0) && (ha.abs() + hb.abs()) as usize > self.h {
            return None;
        }
        match self.locs[a] {
            Loc::Cartan(u) => match self.locs[b] {
                Loc::Cartan(_) => Some(LieElement::zero()),
                _ => {
                    let deg = self.degree(b);
                    Some(LieElement::term(b, self.pair(u, &deg)))
                }
            },
            Loc::Pos(1, i) => match self.locs[b] {
                Loc::Cartan(u) => {
                    let deg = self.degree(a);
                    Some(LieElement::term(a, -self.pair(u, &deg)))
                }
                Loc::Pos(m, k) => {
                    if m == self.h {
                        return None;
                    }
                    let coords = &self.eup[m - 1][i][k];
                    let mut out = LieElement::zero();
                    for (idx, c) in coords.iter().enumerate() {
                        out.add_term(self.pos_global[m][idx], c);
                    }
                    Some(out)
                }
                Loc::Neg(m, k) => {
                    // [e_i, mirror(B)] mirrors [f_i, B] with the cartan part
                    // of the m = 1 case sign-flipped.
                    let coords = &self.levels[m - 1].fdown[k][i];
                    let mut out = LieElement::zero();
                    if m == 1 {
                        for (u, c) in coords.iter().enumerate() {
                            out.add_term(self.cartan_base + u, &(-c));
                        }
                    } else {
                        for (idx, c) in coords.iter().enumerate() {
                            out.add_term(self.neg_global[m - 2][idx], c);
                        }
                    }
                    Some(out)
                }
            },
            Loc::Neg(1, i) => match self.locs[b] {
                Loc::Cartan(u) => {
                    let deg = self.degree(a);
                    Some(LieElement::term(a, -self.pair(u, &deg)))
                }
                Loc::Pos(m, k) => {
                    let coords = &self.levels[m - 1].fdown[k][i];
                    let mut out = LieElement::zero();
                    if m == 1 {
                        for (u, c) in coords.iter().enumerate() {
                            out.add_term(self.cartan_base + u, c);
                        }
                    } else {
                        for (idx, c) in coords.iter().enumerate() {
                            out.add_term(self.pos_global[m - 2][idx], c);
                        }
                    }
                    Some(out)
                }
                Loc::Neg(m, k) => {
                    if m == self.h {
                        return None;
                    }
                    let coords = &self.eup[m - 1][i][k];
                    let mut out = LieElement::zero();
                    for (idx, c) in coords.iter().enumerate() {
                        out.add_term(self.neg_global[m][idx], c);
                    }
                    Some(out)
                }
            },
            Loc::Pos(m, k) => {
                let (g, kprev) = self.levels[m - 1].made[k];
                let gen = self.pos_global[0][g];
                let sub = self.pos_global[m - 2][kprev];
                self.leibniz(gen, sub, b, memo)
            }
            Loc::Neg(m, k) => {
                let (g, kprev) = self.levels[m - 1].made[k];
                let gen = self.neg_global[0][g];
                let sub = self.neg_global[m - 2][kprev];
                self.leibniz(gen, sub, b, memo)
            }
        }
    }

    /// [[gen, sub], b] = [gen, [sub, b]] - [sub, [gen, b]].
    fn leibniz(
        &self,
        gen: usize,
        sub: usize,
        b: usize,
        memo: &mut HashMap<(usize, usize), Option<LieElement>>,
    ) -> Option<LieElement> {
        let inner = self.bracket_basis(sub, b, memo)?;
        let t1 = self.bracket_with_element(gen, &inner, memo)?;
        let outer = self.bracket_basis(gen, b, memo)?;
        let t2 = self.bracket_with_element(sub, &outer, memo)?;
        Some(t1.minus(&t2))
    }
}

fn build_truncated(quiver: StarQuiver, height_cap: u32) -> Result<KMAlgebra, KacmoodyError> {
    if height_cap < 3 {
        return Err(KacmoodyError::WindowTooSmall(height_cap));
    }
    let w = quiver.weights().clone();
    let rank = quiver.vertex_count();
    let h = height_cap as usize;
    let sym = quiver.cartan_matrix();
    let pair = |u: usize, beta: &[i64]| -> i64 {
        sym.row(u).iter().zip(beta).map(|(a, b)| a * b).sum()
    };

    let mut levels: Vec<Level> = Vec::new();
    {
        let mut degs = Vec::new();
        let mut fdown = Vec::new();
        for v in 0..rank {
            let mut d = vec![0i64; rank];
            d[v] = 1;
            degs.push(d);
            let mut per_vertex = Vec::new();
            for j in 0..rank {
                let mut c = vec![BigRational::zero(); rank];
                if j == v {
                    c[j] = rat(-1);
                }
                per_vertex.push(c);
            }
            fdown.push(per_vertex);
        }
        let made = vec![(usize::MAX, usize::MAX); rank];
        levels.push(Level { degs, made, fdown });
    }

    let mut eup: Vec<Vec<Vec<Vec<BigRational>>>> = Vec::new();
    for m in 1..h {
        let nm = levels[m - 1].degs.len();
        let mut cands: Vec<(usize, usize)> = Vec::new();
        let mut constraints: Vec<Vec<BigRational>> = Vec::new();
        for i in 0..rank {
            for k in 0..nm {
                let degk = levels[m - 1].degs[k].clone();
                let mut c = vec![BigRational::zero(); rank * nm];
                for j in 0..rank {
                    let base = j * nm;
                    if i == j {
                        let q = rat(-pair(i, &degk));
                        c[base + k] = &c[base + k] + &q;
                    }
                    if m == 1 {
                        // [f_j, e_k] = -delta_jk h_j, then [e_i, h_j] = -(alpha_j, alpha_i) e_i.
                        if j == k {
                            let mut alpha_i = vec![0i64; rank];
                            alpha_i[i] = 1;
                            let q = rat(pair(j, &alpha_i));
                            c[base + i] = &c[base + i] + &q;
                        }
                    } else {
                        let coords = levels[m - 1].fdown[k][j].clone();
                        for (idx2, c2) in coords.iter().enumerate() {
                            if c2.is_zero() {
                                continue;
                            }
                            for (idx3, c3) in eup[m - 2][i][idx2].iter().enumerate() {
                                if c3.is_zero() {
                                    continue;
                                }
                                let q = c2 * c3;
                                c[base + idx3] = &c[base + idx3] + &q;
                            }
                        }
                    }
                }
                cands.push((i, k));
                constraints.push(c);
            }
        }

        // Columns are candidates; independent constraint columns survive.
        let nrows = rank * nm;
        let mut rows = vec![vec![BigRational::zero(); cands.len()]; nrows];
        for (cidx, c) in constraints.iter().enumerate() {
            for (ridx, val) in c.iter().enumerate() {
                rows[ridx][cidx] = val.clone();
            }
        }
        let pivots = rref(&mut rows);

        let mut degs = Vec::new();
        let mut made = Vec::new();
        let mut fdown = Vec::new();
        let mut newpos: HashMap<usize, usize> = HashMap::new();
        for (slot, cidx) in pivots.iter().enumerate() {
            let (i, k) = cands[*cidx];
            let mut d = levels[m - 1].degs[k].clone();
            d[i] += 1;
            degs.push(d);
            made.push((i, k));
            let c = &constraints[*cidx];
            let mut per_vertex = Vec::new();
            for j in 0..rank {
                per_vertex.push(c[j * nm..(j + 1) * nm].to_vec());
            }
            fdown.push(per_vertex);
            newpos.insert(*cidx, slot);
        }
        let nnew = degs.len();

        let mut level_eup = vec![vec![vec![BigRational::zero(); nnew]; nm]; rank];
        for (cidx, (i, k)) in cands.iter().enumerate() {
            if let Some(slot) = newpos.get(&cidx) {
                level_eup[*i][*k][*slot] = rat(1);
            } else {
                for (t, _) in pivots.iter().enumerate() {
                    level_eup[*i][*k][t] = rows[t][cidx].clone();
                }
            }
        }
        eup.push(level_eup);
        levels.push(Level { degs, made, fdown });
    }

    // Global assembly: positives by level, negatives mirrored, cartans last.
    let mut basis = Vec::new();
    let mut degrees = Vec::new();
    let mut pos_global = Vec::new();
    for level in &levels {
        let mut ids = Vec::new();
        for d in &level.degs {
            ids.push(basis.len());
            basis.push(BasisVector::Root(d.clone()));
            degrees.push(d.clone());
        }
        pos_global.push(ids);
    }
    let mut neg_global = Vec::new();
    for level in &levels {
        let mut ids = Vec::new();
        for d in &level.degs {
            let nd: Vec<i64> = d.iter().map(|c| -c).collect();
            ids.push(basis.len());
            basis.push(BasisVector::Root(nd.clone()));
            degrees.push(nd);
        }
        neg_global.push(ids);
    }
    let cartan_base = basis.len();
    for v in 0..rank {
        basis.push(BasisVector::Cartan(v));
        degrees.push(vec![0; rank]);
    }
    let dim = basis.len();

    let mut locs = Vec::with_capacity(dim);
    for (m, ids) in pos_global.iter().enumerate() {
        for (k, _) in ids.iter().enumerate() {
            locs.push(Loc::Pos(m + 1, k));
        }
    }
    for (m, ids) in neg_global.iter().enumerate() {
        for (k, _) in ids.iter().enumerate() {
            locs.push(Loc::Neg(m + 1, k));
        }
    }
    for v in 0..rank {
        locs.push(Loc::Cartan(v));
    }

    let builder = TruncBuilder {
        rank,
        h,
        sym: sym.clone(),
        levels,
        eup,
        pos_global: pos_global.clone(),
        neg_global: neg_global.clone(),
        locs,
        cartan_base,
    };

    let mut memo: HashMap<(usize, usize), Option<LieElement>> = HashMap::new();
    let mut table: Vec<Vec<Option<LieElement>>> = vec![vec![None; dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            table[i][j] = builder.bracket_basis(i, j, &mut memo);
        }
    }

    let mut made_from: Vec<Option<(usize, usize, i64)>> = vec![None; dim];
    for (m, ids) in pos_global.iter().enumerate() {
        if m == 0 {
            continue;
        }
        for (k, idx) in ids.iter().enumerate() {
            let (g, kprev) = builder.levels[m].made[k];
            made_from[*idx] = Some((pos_global[0][g], pos_global[m - 1][kprev], 1));
        }
    }
    for (m, ids) in neg_global.iter().enumerate() {
        if m == 0 {
            continue;
        }
        for (k, idx) in ids.iter().enumerate() {
            let (g, kprev) = builder.levels[m].made[k];
            made_from[*idx] = Some((neg_global[0][g], neg_global[m - 1][kprev], 1));
        }
    }

    let mut space_of: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
    for (idx, d) in degrees.iter().enumerate().take(cartan_base) {
        space_of.entry(d.clone()).or_default().push(idx);
    }

    Ok(KMAlgebra {
        quiver,
        w,
        mode: Mode::Truncated { height: height_cap },
        basis,
        degrees,
        space_of,
        cartan_base,
        rank,
        sym,
        table,
        made_from,
    })
}

pub(crate) struct SplitMix(u64);

impl SplitMix {
    pub(crate) fn new(seed: u64) -> SplitMix {
        SplitMix(seed)
    }

    pub(crate) fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    pub(crate) fn below(&mut self, n: usize) -> usize {
        (self.next_u64() % n as u64) as usize
    }
}

fn jacobi_defect(a: &KMAlgebra, i: usize, j: usize, k: usize) -> Option<LieElement> {
    let ij = a.table[i][j].as_ref()?;
    let jk = a.table[j][k].as_ref()?;
    let ki = a.table[k][i].as_ref()?;
    let mut acc = LieElement::zero();
    for (t, part) in [(k, ij), (i, jk), (j, ki)] {
        for (s, c) in part.coords() {
            let inner = a.table[*s][t].as_ref()?;
            acc.add_scaled(inner, c);
        }
    }
    Some(acc)
}

/// Structural health of a built model: antisymmetry, grading, the Serre
/// relations, the Jacobi identity (exhaustive on finite models, sampled on
/// truncated ones), sl2 rows, and the Chevalley size bound on constants.
pub fn verify_model_integrity(a: &KMAlgebra) -> Report {
    let mode = match a.mode() {
        Mode::Finite => "finite".to_string(),
        Mode::Truncated { height } => format!("truncated:{height}"),
    };
    let mut report = Report::new(
        "km-integrity",
        serde_json::json!({
            "weights": a.weights().weights(),
            "mode": mode,
            "dim": a.dim(),
        }),
    );
    let dim = a.dim();

    report.timed(|| {
        let mut bad = None;
        for i in 0..dim {
            for j in 0..dim {
                match (&a.table[i][j], &a.table[j][i]) {
                    (Some(x), Some(y)) => {
                        if !x.plus(y).is_zero() {
                            bad = Some((i, j));
                        }
                    }
                    (None, None) => {}
                    _ => bad = Some((i, j)),
                }
            }
        }
        Check::equality(
            "antisymmetry",
            "[x,y] = -[y,x] for every basis pair, with matching definedness",
            bad.is_none(),
            bad.map(|(i, j)| format!("pair ({}, {})", a.label(i), a.label(j)))
                .unwrap_or_else(|| "all pairs".into()),
            "antisymmetric",
        )
    });

    report.timed(|| {
        let mut bad = None;
        for i in 0..dim {
            for j in 0..dim {
                if let Some(e) = &a.table[i][j] {
                    let want: Vec<i64> = a
                        .degree(i)
                        .iter()
                        .zip(a.degree(j))
                        .map(|(x, y)| x + y)
                        .collect();
                    for (s, _) in e.coords() {
                        if a.degree(*s) != want.as_slice() {
                            bad = Some((i, j));
                        }
                    }
                }
            }
        }
        Check::equality(
            "grading",
            "every bracket lands in the degree-sum component",
            bad.is_none(),
            bad.map(|(i, j)| format!("pair ({}, {})", a.label(i), a.label(j)))
                .unwrap_or_else(|| "all pairs".into()),
            "graded",
        )
    });

    report.timed(|| {
        let mut bad = None;
        for v in 0..a.rank() {
            let ef = a.bracket(&a.e(v), &a.f(v)).expect("height-0 brackets stay in window");
            if ef != a.h(v) {
                bad = Some(v);
            }
            let he = a.bracket(&a.h(v), &a.e(v)).expect("height-1 brackets stay in window");
            if he != a.e(v).scaled_int(2) {
                bad = Some(v);
            }
            let hf = a.bracket(&a.h(v), &a.f(v)).expect("height-1 brackets stay in window");
            if hf != a.f(v).scaled_int(-2) {
                bad = Some(v);
            }
        }
        Check::equality(
            "sl2-rows",
            "[e_v, f_v] = h_v and [h_v, e_v] = 2 e_v at every vertex",
            bad.is_none(),
            bad.map(|v| format!("vertex {v}")).unwrap_or_else(|| "all vertices".into()),
            "sl2 triples",
        )
    });

    report.timed(|| {
        let mut bad = None;
        'outer: for u in 0..a.rank() {
            for v in 0..a.rank() {
                if u == v {
                    continue;
                }
                let c = a.sym[(u, v)];
                let n = (1 - c) as usize;
                let mut x = a.e(v);
                let mut y = a.f(v);
                for _ in 0..n {
                    x = a.bracket(&a.e(u), &x).expect("Serre words stay in window");
                    y = a.bracket(&a.f(u), &y).expect("Serre words stay in window");
                }
                if !x.is_zero() || !y.is_zero() {
                    bad = Some((u, v));
                    break 'outer;
                }
            }
        }
        Check::equality(
            "serre",
            "(ad e_u)^(1-c_uv) e_v = 0 and the f-side mirror for all vertex pairs",
            bad.is_none(),
            bad.map(|(u, v)| format!("pair ({u}, {v})")).unwrap_or_else(|| "all pairs".into()),
            "0",
        )
    });

    match a.mode() {
        Mode::Finite => {
            report.timed(|| {
                let mut bad = None;
                'outer: for i in 0..dim {
                    for j in (i + 1)..dim {
                        for k in (j + 1)..dim {
                            let defect = jacobi_defect(a, i, j, k)
                                .expect("finite tables are total");
                            if !defect.is_zero() {
                                bad = Some((i, j, k));
                                break 'outer;
                            }
                        }
                    }
                }
                Check::equality(
                    "jacobi",
                    format!("Jacobi identity on all {} basis triples", dim * (dim - 1) * (dim - 2) / 6),
                    bad.is_none(),
                    bad.map(|(i, j, k)| {
                        format!("triple ({}, {}, {})", a.label(i), a.label(j), a.label(k))
                    })
                    .unwrap_or_else(|| "all triples".into()),
                    "0",
                )
            });
            report.timed(|| {
                let mut bad = None;
                for i in 0..dim {
                    for j in 0..dim {
                        let (BasisVector::Root(beta), BasisVector::Root(gamma)) =
                            (&a.basis[i], &a.basis[j])
                        else {
                            continue;
                        };
                        let sum: Vec<i64> = beta.iter().zip(gamma).map(|(x, y)| x + y).collect();
                        if sum.iter().all(|c| *c == 0) {
                            continue;
                        }
                        if let Some(e) = &a.table[i][j] {
                            for (_, c) in e.coords() {
                                if c.abs() != rat(1) {
                                    bad = Some((i, j));
                                }
                            }
                        }
                    }
                }
                Check::equality(
                    "structure-range",
                    "root-to-root structure constants are +1 or -1 on the simply-laced diagram",
                    bad.is_none(),
                    bad.map(|(i, j)| format!("pair ({}, {})", a.label(i), a.label(j)))
                        .unwrap_or_else(|| "all root pairs".into()),
                    "unit constants",
                )
            });
        }
        Mode::Truncated { .. } => {
            report.timed(|| {
                let mut rng = SplitMix::new(0x5EED_0001);
                let target = 500usize;
                let mut checked = 0usize;
                let mut attempts = 0usize;
                let mut bad = None;
                while checked < target && attempts < target * 60 {
                    attempts += 1;
                    let i = rng.below(dim);
                    let j = rng.below(dim);
                    let k = rng.below(dim);
                    if i == j || j == k || i == k {
                        continue;
                    }
                    match jacobi_defect(a, i, j, k) {
                        None => continue,
                        Some(d) => {
                            checked += 1;
                            if !d.is_zero() {
                                bad = Some((i, j, k));
                                break;
                            }
                        }
                    }
                }
                let status = if bad.is_none() && checked > 0 {
                    Status::PassProbabilistic
                } else {
                    Status::Fail
                };
                Check::new(
                    "jacobi",
                    format!("Jacobi identity on {checked} sampled in-window basis triples"),
                    status,
                    bad.map(|(i, j, k)| {
                        format!("triple ({}, {}, {})", a.label(i), a.label(j), a.label(k))
                    })
                    .unwrap_or_else(|| "all sampled triples".into()),
                    "0",
                )
            });
        }
    }

    report
}

/// CSV rows `alpha,beta,target,coeff` for every nonzero bracket of two root
/// vectors, for cross-checking against an external computer-algebra system.
pub fn structure_constants_csv(a: &KMAlgebra) -> String {
    let fmt_deg = |d: &[i64]| {
        let parts: Vec<String> = d.iter().map(|c| c.to_string()).collect();
        parts.join(" ")
    };
    let mut out = String::from("alpha,beta,target,coeff\n");
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let (BasisVector::Root(beta), BasisVector::Root(gamma)) = (&a.basis[i], &a.basis[j])
            else {
                continue;
            };
            let Some(e) = &a.table[i][j] else { continue };
            for (t, c) in e.coords() {
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    fmt_deg(beta),
                    fmt_deg(gamma),
                    a.label(*t),
                    c
                ));
            }
        }
    }
    out
}
