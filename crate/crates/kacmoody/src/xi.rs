//! The twist symmetries transported onto the Chevalley generators: for each
//! twist x, push generator class functions through the quotient symmetry at
//! x, pull them back through the dictionary, and extend to an automorphism.
//! The comparison theorem matches these against Tits composites up to a
//! diagonal sign character, searched exhaustively and reported as a witness.

use crate::algebra::{KMAlgebra, Mode};
use crate::operator::{diagonal_character, extend_from_generators, LieOperator};
use crate::phi::{phi_dictionary, phi_of_e, phi_of_f, phi_of_h, pull_back, PhiDictionary};
use crate::tits::tits_at_vertex;
use crate::KacmoodyError;
use lattice::{vertex_list, LVector, Vertex, WeightData};
use report::{Check, Report};
use rootcat::upsilon_combination;

/// Generations that fill the whole canonical symbol box: enough twist steps
/// to cross every arm plus the longest torsion shrink chain.
pub fn saturation_depth(w: &WeightData) -> u32 {
    let steps: u32 = w.weights().iter().map(|p| p - 1).sum();
    let longest = w.weights().iter().copied().max().unwrap_or(1);
    steps + longest + 1
}

/// The symmetry at twist x as an operator on the algebra, through a
/// prebuilt dictionary.
pub fn xi_with(
    a: &KMAlgebra,
    dict: &PhiDictionary,
    x: &LVector,
) -> Result<LieOperator, KacmoodyError> {
    if a.mode() != Mode::Finite {
        return Err(KacmoodyError::FiniteModeOnly);
    }
    let w = a.weights().clone();
    let mut e_img = Vec::new();
    let mut f_img = Vec::new();
    let mut h_img = Vec::new();
    for vert in vertex_list(&w) {
        let e = upsilon_combination(&w, x, &phi_of_e(&w, vert))?;
        let f = upsilon_combination(&w, x, &phi_of_f(&w, vert))?;
        let h = upsilon_combination(&w, x, &phi_of_h(&w, vert))?;
        e_img.push(pull_back(a, dict, &e)?);
        f_img.push(pull_back(a, dict, &f)?);
        h_img.push(pull_back(a, dict, &h)?);
    }
    extend_from_generators(a, &e_img, &f_img, &h_img)
}

pub fn xi(a: &KMAlgebra, x: &LVector) -> Result<LieOperator, KacmoodyError> {
    let dict = phi_dictionary(a, saturation_depth(a.weights()))?;
    xi_with(a, &dict, x)
}

fn character_witness(a: &KMAlgebra, flags: &[bool]) -> String {
    let parts: Vec<String> = vertex_list(a.weights())
        .iter()
        .zip(flags)
        .map(|(v, f)| format!("{v}:{}", if *f { "-" } else { "+" }))
        .collect();
    parts.join(" ")
}

/// Exhaustive search over all diagonal sign characters for one making
/// `target` equal `base` composed with the character.
fn find_character(a: &KMAlgebra, target: &LieOperator, base: &LieOperator) -> Option<Vec<bool>> {
    let rank = a.rank();
    for mask in 0u32..(1 << rank) {
        let flags: Vec<bool> = (0..rank).map(|v| mask & (1 << v) != 0).collect();
        let d = diagonal_character(a, &flags);
        if d.compose(base).matrix() == target.matrix() {
            return Some(flags);
        }
    }
    None
}

/// The comparison suite: the symmetry at twist zero against the star Tits
/// composite, and each braid-word composite along an arm against the Tits
/// composite at its arm vertex, all up to a diagonal sign character.
pub fn verify_tits_realization(a: &KMAlgebra) -> Report {
    let w = a.weights().clone();
    let mut report = Report::new(
        "tits-realization",
        serde_json::json!({ "weights": w.weights(), "dim": a.dim() }),
    );
    let dict = match phi_dictionary(a, saturation_depth(&w)) {
        Ok(d) => d,
        Err(err) => {
            report.push(Check::equality(
                "dictionary",
                "the symbol dictionary saturates without conflicts",
                false,
                err.to_string(),
                "saturated dictionary",
            ));
            return report;
        }
    };
    let t = w.arms();

    report.timed(|| {
        let claim = "the twist-zero symmetry is the star Tits composite up to a sign character";
        match (xi_with(a, &dict, &LVector::zero(t)), tits_at_vertex(a, Vertex::Star)) {
            (Ok(xi0), Ok(tits)) => match find_character(a, &xi0, &tits) {
                Some(flags) => Check::equality(
                    "xi0-vs-star-tits",
                    claim,
                    true,
                    format!("character {}", character_witness(a, &flags)),
                    "diagonal sign character",
                ),
                None => Check::equality(
                    "xi0-vs-star-tits",
                    claim,
                    false,
                    "no diagonal sign character matches",
                    "diagonal sign character",
                ),
            },
            (Err(err), _) | (_, Err(err)) => {
                Check::equality("xi0-vs-star-tits", claim, false, err.to_string(), "operators build")
            }
        }
    });

    for arm in 1..=t {
        let p = w.weight(arm);
        for j in 1..p {
            report.timed(|| {
                let tag = format!("xi-braid:{arm}.{j}");
                let claim = "the twist braid composite is the arm Tits composite up to a sign character";
                let lower = LVector::xi(t, arm).scaled(j as i64 - 1);
                let upper = LVector::xi(t, arm).scaled(j as i64);
                let built = (|| -> Result<(LieOperator, LieOperator), KacmoodyError> {
                    let xa = xi_with(a, &dict, &lower)?;
                    let xb = xi_with(a, &dict, &upper)?;
                    let composite = xa.compose(&xb).compose(&xa);
                    let tits = tits_at_vertex(a, Vertex::Arm { arm, j })?;
                    Ok((composite, tits))
                })();
                match built {
                    Ok((composite, tits)) => match find_character(a, &composite, &tits) {
                        Some(flags) => Check::equality(
                            tag,
                            claim,
                            true,
                            format!("character {}", character_witness(a, &flags)),
                            "diagonal sign character",
                        ),
                        None => Check::equality(
                            tag,
                            claim,
                            false,
                            "no diagonal sign character matches",
                            "diagonal sign character",
                        ),
                    },
                    Err(err) => Check::equality(tag, claim, false, err.to_string(), "operators build"),
                }
            });
        }
    }

    report
}
