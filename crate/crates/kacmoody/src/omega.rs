//! The arm-rotation automorphisms: for each arm vertex (i, j) an
//! automorphism permuting the Chevalley generators along arm i, acting on
//! root spaces through an explicit Weyl word. Generator images follow the
//! three-row table: the star picks up the arm chain, the chosen arm vertex
//! swaps to the opposite nilpotent part, and the remaining arm indices
//! rotate by -j.

use crate::algebra::{KMAlgebra, LieElement};
use crate::operator::{extend_from_generators, LieOperator};
use crate::KacmoodyError;
use lattice::{vertex_index, vertex_list, Vertex};
use num_traits::Zero;
use report::{Check, Report};
use weyl::{StarQuiver, WeylElement};

/// Right-nested iterated bracket [a_1, [a_2, [..., a_n]]].
fn nested_bracket(a: &KMAlgebra, items: &[LieElement]) -> Result<LieElement, KacmoodyError> {
    let (last, rest) = items.split_last().expect("nonempty bracket chain");
    let mut acc = last.clone();
    for item in rest.iter().rev() {
        acc = a.bracket(item, &acc)?;
    }
    Ok(acc)
}

fn sign_pow(n: u32) -> i64 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The Weyl word of the arm rotation at (i, j): p_i - j groups of j
/// ascending-index arm reflections, rightmost factor applied first.
pub fn varpi_element(q: &StarQuiver, i: usize, j: u32) -> Result<WeylElement, KacmoodyError> {
    let p = q.weights().weight(i);
    assert!(j >= 1 && j < p, "arm vertex index in 1..=p-1");
    let mut word = Vec::new();
    for s in (1..=(p - j)).rev() {
        for m in s..(s + j) {
            word.push(q.simple_reflection(Vertex::Arm { arm: i, j: m })?);
        }
    }
    Ok(WeylElement::compose_all(&word, q.vertex_count()))
}

pub fn omega_tilde(a: &KMAlgebra, i: usize, j: u32) -> Result<LieOperator, KacmoodyError> {
    let w = a.weights().clone();
    w.check_arm(i)?;
    let p = w.weight(i);
    assert!(j >= 1 && j < p, "arm vertex index in 1..=p-1");
    let vid = |vert: Vertex| vertex_index(&w, vert);
    let arm_e = |m: u32| a.e(vid(Vertex::Arm { arm: i, j: m }));
    let arm_f = |m: u32| a.f(vid(Vertex::Arm { arm: i, j: m }));

    let mut e_img = Vec::new();
    let mut f_img = Vec::new();
    let mut h_img = Vec::new();
    for vert in vertex_list(&w) {
        match vert {
            Vertex::Star => {
                let mut e_chain: Vec<LieElement> = Vec::new();
                let mut f_chain: Vec<LieElement> = Vec::new();
                for m in (1..=(p - j)).rev() {
                    e_chain.push(arm_e(m));
                    f_chain.push(arm_f(m));
                }
                e_chain.push(a.e(vid(Vertex::Star)));
                f_chain.push(a.f(vid(Vertex::Star)));
                e_img.push(nested_bracket(a, &e_chain)?);
                f_img.push(nested_bracket(a, &f_chain)?.scaled_int(sign_pow(p - j)));
                let mut h = a.h(vid(Vertex::Star));
                for m in 1..=(p - j) {
                    h = h.plus(&a.h(vid(Vertex::Arm { arm: i, j: m })));
                }
                h_img.push(h);
            }
            Vertex::Arm { arm, j: l } if arm == i && l == j => {
                let mut e_chain: Vec<LieElement> = Vec::new();
                let mut f_chain: Vec<LieElement> = Vec::new();
                for m in (1..=(p - 1)).rev() {
                    e_chain.push(arm_e(m));
                    f_chain.push(arm_f(m));
                }
                e_img.push(nested_bracket(a, &f_chain)?.scaled_int(sign_pow(p)));
                f_img.push(nested_bracket(a, &e_chain)?);
                let mut h = LieElement::zero();
                for m in 1..=(p - 1) {
                    h = h.minus(&a.h(vid(Vertex::Arm { arm: i, j: m })));
                }
                h_img.push(h);
            }
            Vertex::Arm { arm, j: l } => {
                let lnew = if arm == i { w.reduce_mod_arm(i, l as i64 - j as i64) } else { l };
                assert!(lnew != 0, "rotation keeps arm vertices off the zero slot");
                let target = vid(Vertex::Arm { arm, j: lnew });
                e_img.push(a.e(target));
                f_img.push(a.f(target));
                h_img.push(a.h(target));
            }
        }
    }
    extend_from_generators(a, &e_img, &f_img, &h_img)
}

/// Automorphism and root-space checks for every arm vertex of the diagram.
pub fn verify_omega_family(a: &KMAlgebra) -> Report {
    let w = a.weights().clone();
    let q = a.quiver().clone();
    let mut report = Report::new(
        "omega-family",
        serde_json::json!({ "weights": w.weights(), "dim": a.dim() }),
    );
    for arm in 1..=w.arms() {
        let p = w.weight(arm);
        for j in 1..p {
            let tag = format!("{arm}.{j}");
            let op = match omega_tilde(a, arm, j) {
                Ok(op) => op,
                Err(err) => {
                    report.push(Check::equality(
                        format!("automorphism:{tag}"),
                        "generator images extend to a bracket-preserving operator",
                        false,
                        err.to_string(),
                        "automorphism",
                    ));
                    continue;
                }
            };
            report.timed(|| {
                Check::equality(
                    format!("automorphism:{tag}"),
                    "generator images extend to a bracket-preserving operator",
                    op.is_automorphism(),
                    "extension verified on all basis pairs",
                    "automorphism",
                )
            });

            let varpi = varpi_element(&q, arm, j).expect("valid arm vertex");
            report.timed(|| {
                let mut bad = None;
                for idx in 0..a.dim() {
                    if a.is_cartan(idx) {
                        continue;
                    }
                    let want = varpi.apply(a.degree(idx));
                    let target = a.root_index(&want);
                    let image = op.apply_basis(idx);
                    let ok = match target {
                        Some(t) => image.coords().len() == 1 && !image.coeff(t).is_zero(),
                        None => false,
                    };
                    if !ok {
                        bad = Some(idx);
                        break;
                    }
                }
                Check::equality(
                    format!("root-map:{tag}"),
                    "each root vector maps into the root space at the Weyl-word image",
                    bad.is_none(),
                    bad.map(|idx| a.label(idx)).unwrap_or_else(|| "all root vectors".into()),
                    "single root space",
                )
            });

            report.timed(|| {
                let star = vertex_index(&w, Vertex::Star);
                let mut want = vec![0i64; a.rank()];
                want[star] = 1;
                for m in 1..=(p - j) {
                    let vm = vertex_index(&w, Vertex::Arm { arm, j: m });
                    want[vm] = 1;
                }
                let got = varpi.apply(&{
                    let mut alpha = vec![0i64; a.rank()];
                    alpha[star] = 1;
                    alpha
                });
                Check::equality(
                    format!("varpi-star:{tag}"),
                    "the Weyl word pushes the star root up the arm chain",
                    got == want,
                    format!("{got:?}"),
                    format!("{want:?}"),
                )
            });

            report.timed(|| {
                let vij = vertex_index(&w, Vertex::Arm { arm, j });
                let mut alpha = vec![0i64; a.rank()];
                alpha[vij] = 1;
                let got = varpi.apply(&alpha);
                let mut want = vec![0i64; a.rank()];
                for m in 1..p {
                    let vm = vertex_index(&w, Vertex::Arm { arm, j: m });
                    want[vm] = -1;
                }
                Check::equality(
                    format!("varpi-arm:{tag}"),
                    "the Weyl word sends the chosen arm root to minus the full arm sum",
                    got == want,
                    format!("{got:?}"),
                    format!("{want:?}"),
                )
            });

            report.timed(|| {
                let mut bad = None;
                'scan: for (k, l) in w.arm_vertices() {
                    if k == arm && l == j {
                        continue;
                    }
                    let src = vertex_index(&w, Vertex::Arm { arm: k, j: l });
                    let lnew = if k == arm { w.reduce_mod_arm(k, l as i64 - j as i64) } else { l };
                    let dst = vertex_index(&w, Vertex::Arm { arm: k, j: lnew });
                    for (got, want) in [
                        (op.apply(&a.e(src)), a.e(dst)),
                        (op.apply(&a.f(src)), a.f(dst)),
                        (op.apply(&a.h(src)), a.h(dst)),
                    ] {
                        if got != want {
                            bad = Some((k, l));
                            break 'scan;
                        }
                    }
                }
                Check::equality(
                    format!("rotation:{tag}"),
                    "untouched arm generators rotate by -j with coefficient one",
                    bad.is_none(),
                    bad.map(|(k, l)| format!("w{k}{l}")).unwrap_or_else(|| "all other arm vertices".into()),
                    "rotated generators",
                )
            });
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{build_algebra, Mode};
    use lattice::WeightData;
    use weyl::StarQuiver;

    fn setup(p: &[u32]) -> KMAlgebra {
        let w = WeightData::new(p).unwrap();
        build_algebra(&StarQuiver::new(w), Mode::Finite).unwrap()
    }

    #[test]
    fn omega_family_is_green_for_small_weights() {
        for p in [&[2u32, 2][..], &[2, 3][..], &[2, 2, 2][..]] {
            let a = setup(p);
            let report = verify_omega_family(&a);
            assert!(!report.has_failures(), "{}", serde_json::to_string(&report.checks).unwrap());
        }
    }

    #[test]
    fn omega_on_two_two_swaps_the_chosen_arm_generator() {
        let a = setup(&[2, 2]);
        let w = a.weights().clone();
        let op = omega_tilde(&a, 1, 1).unwrap();
        let v11 = vertex_index(&w, Vertex::Arm { arm: 1, j: 1 });
        // p = 2: the chosen arm generator moves to the opposite part with
        // sign (-1)^p = +1 and a single-factor chain.
        assert_eq!(op.apply(&a.e(v11)), a.f(v11));
        assert_eq!(op.apply(&a.f(v11)), a.e(v11));
        assert_eq!(op.apply(&a.h(v11)), a.h(v11).negated());
    }

    #[test]
    fn omega_star_image_is_the_arm_chain_bracket() {
        let a = setup(&[2, 3]);
        let w = a.weights().clone();
        let star = vertex_index(&w, Vertex::Star);
        let v21 = vertex_index(&w, Vertex::Arm { arm: 2, j: 1 });
        let v22 = vertex_index(&w, Vertex::Arm { arm: 2, j: 2 });
        let op = omega_tilde(&a, 2, 1).unwrap();
        // j = 1, p = 3: chain w22, w21 then the star.
        let want = a
            .bracket(&a.e(v22), &a.bracket(&a.e(v21), &a.e(star)).unwrap())
            .unwrap();
        assert_eq!(op.apply(&a.e(star)), want);
    }

    #[test]
    fn varpi_is_an_exact_lattice_reflection_word() {
        let w = WeightData::new(&[3, 3, 3]).unwrap();
        let q = StarQuiver::new(w);
        let varpi = varpi_element(&q, 1, 2).unwrap();
        assert!(varpi.preserves_form(&q.cartan_matrix()));
        assert!(varpi.is_unimodular());
    }
}
