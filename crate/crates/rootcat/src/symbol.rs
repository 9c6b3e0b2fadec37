//! Object symbols for the catalog: line bundles O(x) with honest twist and
//! exceptional torsion segments S_{ij}^{(k)}, both with shift mod 2. The
//! quotient-algebra identifications (O(x) ~ O(x+c), shifted torsion rewrite)
//! live in `quotient_canonical`, not in the object symbols themselves.

use crate::RootcatError;
use lattice::{class_of_line_bundle, class_of_torsion, K0Class, LNormalForm, LVector, WeightData};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SymbolKind {
    /// O(x), with the full normal form of x (lc included).
    LineBundle(LNormalForm),
    /// Uniserial segment S_{arm,j}^{(k)}: top S_{arm,j}, length k, 1 <= k <= p-1.
    Torsion { arm: usize, j: u32, k: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SheafSymbol {
    kind: SymbolKind,
    shift: u8,
}

impl SheafSymbol {
    pub fn line_bundle(w: &WeightData, x: &LVector, shift: u8) -> SheafSymbol {
        SheafSymbol { kind: SymbolKind::LineBundle(x.normal_form(w)), shift: shift & 1 }
    }

    /// Segments of length 0 or >= p are not exceptional and are rejected;
    /// overlong segments occur only transiently inside bracket gluing, which
    /// collapses their length before constructing a symbol.
    pub fn torsion(
        w: &WeightData,
        arm: usize,
        j: i64,
        k: u32,
        shift: u8,
    ) -> Result<SheafSymbol, RootcatError> {
        w.check_arm(arm)?;
        let p = w.weight(arm);
        if p < 2 || k == 0 || k > p - 1 {
            return Err(RootcatError::NotExceptional { arm, k: k as i64 });
        }
        let j = w.reduce_mod_arm(arm, j);
        Ok(SheafSymbol { kind: SymbolKind::Torsion { arm, j, k }, shift: shift & 1 })
    }

    pub fn simple(w: &WeightData, arm: usize, j: i64) -> Result<SheafSymbol, RootcatError> {
        SheafSymbol::torsion(w, arm, j, 1, 0)
    }

    pub fn kind(&self) -> &SymbolKind {
        &self.kind
    }

    pub fn shift(&self) -> u8 {
        self.shift
    }

    pub fn is_line_bundle(&self) -> bool {
        matches!(self.kind, SymbolKind::LineBundle(_))
    }

    pub fn twist(&self) -> Option<&LNormalForm> {
        match &self.kind {
            SymbolKind::LineBundle(nf) => Some(nf),
            SymbolKind::Torsion { .. } => None,
        }
    }

    /// The object X[1]; in the root category shifts are mod 2.
    pub fn shifted(&self) -> SheafSymbol {
        SheafSymbol { kind: self.kind.clone(), shift: self.shift ^ 1 }
    }

    /// Rewrites the averaged element bar1 of this object into the canonical
    /// quotient-algebra representative and its sign: line-bundle twists drop
    /// lc (bar1_{O(x+c)} = bar1_{O(x)}), and a shifted segment becomes minus
    /// the complementary segment (bar1_{S_{ij}^{(k)}[1]} = -bar1_{S_{i,j-k}^{(p-k)}}).
    pub fn quotient_canonical(&self, w: &WeightData) -> (i64, SheafSymbol) {
        match &self.kind {
            SymbolKind::LineBundle(nf) => {
                if nf.lc() == 0 {
                    return (1, self.clone());
                }
                let mut v = nf.to_vector();
                v = &v - &LVector::canonical(w.arms()).scaled(nf.lc());
                (1, SheafSymbol { kind: SymbolKind::LineBundle(v.normal_form(w)), shift: self.shift })
            }
            SymbolKind::Torsion { arm, j, k } => {
                if self.shift == 0 {
                    return (1, self.clone());
                }
                let p = w.weight(*arm);
                let j2 = w.reduce_mod_arm(*arm, *j as i64 - *k as i64);
                (-1, SheafSymbol { kind: SymbolKind::Torsion { arm: *arm, j: j2, k: p - k }, shift: 0 })
            }
        }
    }

    /// Class in K0, with [X[1]] = -[X].
    pub fn class(&self, w: &WeightData) -> K0Class {
        let base = match &self.kind {
            SymbolKind::LineBundle(nf) => class_of_line_bundle(w, &nf.to_vector()),
            SymbolKind::Torsion { arm, j, k } => {
                class_of_torsion(w, *arm, *j as i64, *k).expect("torsion symbol is validated")
            }
        };
        if self.shift == 1 {
            base.scaled(-1)
        } else {
            base
        }
    }

    pub fn class_mod_delta(&self, w: &WeightData) -> Vec<i64> {
        self.class(w).reduce_mod_delta()
    }
}

fn fmt_twist(nf: &LNormalForm, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    let mut wrote = false;
    for (i, &l) in nf.arm_coeffs().iter().enumerate() {
        if l == 0 {
            continue;
        }
        if wrote {
            write!(f, "+")?;
        }
        if l == 1 {
            write!(f, "x{}", i + 1)?;
        } else {
            write!(f, "{}x{}", l, i + 1)?;
        }
        wrote = true;
    }
    let lc = nf.lc();
    if lc != 0 {
        if lc > 0 && wrote {
            write!(f, "+")?;
        }
        match lc {
            1 => write!(f, "c")?,
            -1 => write!(f, "-c")?,
            _ => write!(f, "{}c", lc)?,
        }
        wrote = true;
    }
    if !wrote {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for SheafSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            SymbolKind::LineBundle(nf) => {
                write!(f, "O(")?;
                fmt_twist(nf, f)?;
                write!(f, ")")?;
            }
            SymbolKind::Torsion { arm, j, k } => {
                write!(f, "S_{{{},{}}}", arm, j)?;
                if *k > 1 {
                    write!(f, "^({})", k)?;
                }
            }
        }
        if self.shift == 1 {
            write!(f, "[1]")?;
        }
        Ok(())
    }
}

/// Chevalley generator catalog attached to a twist x: O(x) plus every simple
/// S_{ij} except the one with j = l_i(x) on each arm of weight >= 2.
pub fn generator_catalog(w: &WeightData, x: &LVector) -> Vec<SheafSymbol> {
    let nf = x.normal_form(w);
    let mut out = vec![SheafSymbol::line_bundle(w, x, 0).quotient_canonical(w).1];
    for i in 1..=w.arms() {
        let p = w.weight(i);
        if p < 2 {
            continue;
        }
        for j in 0..p {
            if j == nf.arm(i) {
                continue;
            }
            out.push(SheafSymbol::torsion(w, i, j as i64, 1, 0).expect("valid simple"));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w23() -> WeightData {
        WeightData::new(&[2, 3]).unwrap()
    }

    #[test]
    fn quotient_canonical_drops_lc_and_is_idempotent() {
        let w = w23();
        let x = &LVector::xi(2, 2).scaled(-1) - &LVector::canonical(2).scaled(2);
        let s = SheafSymbol::line_bundle(&w, &x, 1);
        let (sign, c) = s.quotient_canonical(&w);
        assert_eq!(sign, 1);
        assert_eq!(c.twist().unwrap().lc(), 0);
        assert_eq!(c.shift(), 1);
        let (sign2, c2) = c.quotient_canonical(&w);
        assert_eq!((sign2, &c2), (1, &c));
    }

    #[test]
    fn shifted_torsion_canonicalizes_to_minus_complement() {
        let w = w23();
        let s = SheafSymbol::torsion(&w, 2, 1, 1, 1).unwrap();
        let (sign, c) = s.quotient_canonical(&w);
        assert_eq!(sign, -1);
        assert_eq!(c, SheafSymbol::torsion(&w, 2, 0, 2, 0).unwrap());
        assert_eq!(c.quotient_canonical(&w), (1, c.clone()));
    }

    #[test]
    fn torsion_rejects_non_exceptional_lengths() {
        let w = w23();
        assert!(SheafSymbol::torsion(&w, 2, 0, 3, 0).is_err());
        assert!(SheafSymbol::torsion(&w, 2, 0, 0, 0).is_err());
        let w1 = WeightData::new(&[1, 3]).unwrap();
        assert!(SheafSymbol::torsion(&w1, 1, 0, 1, 0).is_err());
    }

    #[test]
    fn class_flips_sign_under_shift() {
        let w = w23();
        let s = SheafSymbol::line_bundle(&w, &LVector::xi(2, 1), 0);
        let c0 = s.class(&w);
        let c1 = s.shifted().class(&w);
        assert_eq!(c1, c0.scaled(-1));
    }

    #[test]
    fn catalog_size_counts_all_but_one_simple_per_arm() {
        let w = w23();
        let cat = generator_catalog(&w, &LVector::zero(2));
        assert_eq!(cat.len(), 1 + 1 + 2);
        let w222 = WeightData::new(&[2, 2, 2]).unwrap();
        let cat2 = generator_catalog(&w222, &LVector::xi(3, 1));
        assert_eq!(cat2.len(), 1 + 3);
    }

    #[test]
    fn display_matches_catalog_notation() {
        let w = w23();
        let x = &LVector::xi(2, 1) - &LVector::canonical(2);
        assert_eq!(SheafSymbol::line_bundle(&w, &x, 1).to_string(), "O(x1-c)[1]");
        assert_eq!(SheafSymbol::torsion(&w, 2, 1, 2, 0).unwrap().to_string(), "S_{2,1}^(2)");
    }
}
