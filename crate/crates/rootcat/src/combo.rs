//! Linear combinations in the quotient Lie algebra: integer multiples of
//! canonical symbols plus a rational cartan part h expressed over the vertex
//! basis mod delta (the delta coordinate is projected away, so h_delta = 0 is
//! built in).

use crate::symbol::SheafSymbol;
use lattice::{vertex_count, WeightData};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolCombination {
    terms: BTreeMap<SheafSymbol, i64>,
    cartan: Vec<BigRational>,
}

impl SymbolCombination {
    pub fn zero(w: &WeightData) -> SymbolCombination {
        SymbolCombination {
            terms: BTreeMap::new(),
            cartan: vec![BigRational::zero(); vertex_count(w)],
        }
    }

    pub fn from_symbol(w: &WeightData, s: &SheafSymbol) -> SymbolCombination {
        SymbolCombination::from_term(w, s, 1)
    }

    pub fn from_term(w: &WeightData, s: &SheafSymbol, coeff: i64) -> SymbolCombination {
        let mut out = SymbolCombination::zero(w);
        out.add_term(w, s, coeff);
        out
    }

    /// h_alpha for alpha given by its coordinates mod delta.
    pub fn from_cartan(w: &WeightData, coords: &[i64]) -> SymbolCombination {
        let mut out = SymbolCombination::zero(w);
        assert_eq!(coords.len(), out.cartan.len(), "cartan coordinate length");
        for (slot, &c) in out.cartan.iter_mut().zip(coords) {
            *slot = BigRational::from_integer(BigInt::from(c));
        }
        out
    }

    /// h_{[X]} for the object symbol X (shift negates the class).
    pub fn h_of_symbol(w: &WeightData, s: &SheafSymbol) -> SymbolCombination {
        SymbolCombination::from_cartan(w, &s.class_mod_delta(w))
    }

    /// Inserts coeff * bar1_s after rewriting s to its canonical quotient
    /// representative; zero coefficients are dropped.
    pub fn add_term(&mut self, w: &WeightData, s: &SheafSymbol, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let (sign, canon) = s.quotient_canonical(w);
        let slot = self.terms.entry(canon.clone()).or_insert(0);
        *slot += sign * coeff;
        if *slot == 0 {
            self.terms.remove(&canon);
        }
    }

    pub fn add_cartan(&mut self, coords: &[BigRational]) {
        assert_eq!(coords.len(), self.cartan.len(), "cartan coordinate length");
        for (slot, c) in self.cartan.iter_mut().zip(coords) {
            *slot += c;
        }
    }

    pub fn add_assign(&mut self, other: &SymbolCombination) {
        self.add_scaled(other, 1);
    }

    pub fn add_scaled(&mut self, other: &SymbolCombination, n: i64) {
        if n == 0 {
            return;
        }
        for (s, c) in &other.terms {
            let slot = self.terms.entry(s.clone()).or_insert(0);
            *slot += c * n;
            if *slot == 0 {
                self.terms.remove(s);
            }
        }
        let factor = BigRational::from_integer(BigInt::from(n));
        for (slot, c) in self.cartan.iter_mut().zip(&other.cartan) {
            *slot += c * &factor;
        }
    }

    pub fn scaled(&self, n: i64) -> SymbolCombination {
        let mut out = SymbolCombination {
            terms: BTreeMap::new(),
            cartan: vec![BigRational::zero(); self.cartan.len()],
        };
        out.add_scaled(self, n);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.cartan.iter().all(|c| c.is_zero())
    }

    pub fn terms(&self) -> &BTreeMap<SheafSymbol, i64> {
        &self.terms
    }

    pub fn cartan(&self) -> &[BigRational] {
        &self.cartan
    }

    /// The shift automorphism: bar1_X -> bar1_{X[1]} (canonicalized) and
    /// h -> -h.
    pub fn shift(&self, w: &WeightData) -> SymbolCombination {
        let mut out = SymbolCombination {
            terms: BTreeMap::new(),
            cartan: self.cartan.iter().map(|c| -c).collect(),
        };
        for (s, c) in &self.terms {
            out.add_term(w, &s.shifted(), *c);
        }
        out
    }
}

impl fmt::Display for SymbolCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (s, c) in &self.terms {
            if wrote {
                write!(f, " {} ", if *c < 0 { "-" } else { "+" })?;
            } else if *c < 0 {
                write!(f, "-")?;
            }
            let a = c.abs();
            if a != 1 {
                write!(f, "{}*", a)?;
            }
            write!(f, "{}", s)?;
            wrote = true;
        }
        if self.cartan.iter().any(|c| !c.is_zero()) {
            if wrote {
                write!(f, " + ")?;
            }
            write!(f, "h[")?;
            for (i, c) in self.cartan.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", c)?;
            }
            write!(f, "]")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use lattice::LVector;

    fn w23() -> WeightData {
        WeightData::new(&[2, 3]).unwrap()
    }

    #[test]
    fn add_term_canonicalizes_shifted_torsion() {
        let w = w23();
        let s = SheafSymbol::torsion(&w, 2, 1, 1, 1).unwrap();
        let combo = SymbolCombination::from_symbol(&w, &s);
        let canon = SheafSymbol::torsion(&w, 2, 0, 2, 0).unwrap();
        assert_eq!(combo.terms().get(&canon), Some(&-1));
    }

    #[test]
    fn shift_is_an_involution_on_combinations() {
        let w = w23();
        let mut c = SymbolCombination::from_symbol(
            &w,
            &SheafSymbol::line_bundle(&w, &LVector::xi(2, 1), 0),
        );
        c.add_term(&w, &SheafSymbol::torsion(&w, 2, 2, 1, 0).unwrap(), 3);
        let h = SymbolCombination::h_of_symbol(
            &w,
            &SheafSymbol::line_bundle(&w, &LVector::zero(2), 0),
        );
        c.add_cartan(h.cartan());
        assert_eq!(c.shift(&w).shift(&w), c);
        assert!(!c.shift(&w).eq(&c));
    }

    #[test]
    fn cancelling_terms_vanish() {
        let w = w23();
        let s = SheafSymbol::line_bundle(&w, &LVector::zero(2), 0);
        let mut c = SymbolCombination::from_term(&w, &s, 2);
        c.add_term(&w, &s, -2);
        assert!(c.is_zero());
    }
}
