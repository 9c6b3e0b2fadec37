//! Object-level action of the mutation R_x on the catalog of the right
//! perpendicular category of O(x): line bundles O(x-kx_i) turn into torsion
//! segments (into O(x+c)[-1] at the full period), and torsion segments either
//! slide up to a line bundle or stay put. Shifts are tracked mod 2.

use crate::symbol::{SheafSymbol, SymbolKind};
use crate::RootcatError;
use lattice::{torsion_in_right_perp, LVector, TorsionIdx, WeightData};

use crate::bracket::nonzero_arms;

pub fn mutate_object(
    w: &WeightData,
    x: &LVector,
    s: &SheafSymbol,
) -> Result<SheafSymbol, RootcatError> {
    let xnf = x.normal_form(w);
    match s.kind() {
        SymbolKind::LineBundle(ynf) => {
            let d = (x - &ynf.to_vector()).normal_form(w);
            let nz = nonzero_arms(&d);
            if d.lc() == 0 && nz.len() == 1 {
                // O(x - kx_i) with 1 <= k <= p_i - 1 becomes S_{i,l_i}^{(k)}[-1].
                let (i, k) = nz[0];
                return SheafSymbol::torsion(w, i, xnf.arm(i) as i64, k, s.shift() ^ 1);
            }
            if d.lc() == 1 && nz.is_empty() {
                // Full period: O(x - c) becomes O(x + c)[-1].
                let y = x + &LVector::canonical(w.arms());
                return Ok(SheafSymbol::line_bundle(w, &y, s.shift() ^ 1));
            }
            Err(RootcatError::NotInPerp(s.to_string()))
        }
        SymbolKind::Torsion { arm, j, k } => {
            let idx = TorsionIdx { arm: *arm, j: *j as i64, k: *k };
            if !torsion_in_right_perp(w, x, idx)? {
                return Err(RootcatError::NotInPerp(s.to_string()));
            }
            let p = w.weight(*arm);
            if *j == (xnf.arm(*arm) + k) % p {
                let y = x + &LVector::xi(w.arms(), *arm).scaled(*k as i64);
                return Ok(SheafSymbol::line_bundle(w, &y, s.shift()));
            }
            Ok(s.clone())
        }
    }
}
