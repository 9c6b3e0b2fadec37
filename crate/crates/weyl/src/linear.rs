//! Reflection identities on the linear quiver A_n: the reflection in the
//! dimension vector of each projective equals two nested words in simple
//! reflections, and conversely each simple reflection is a conjugate of
//! neighboring projective reflections.

use crate::element::WeylElement;
use crate::reflect::{reflection_in_vector, simple_reflection_at};
use exact::imat::IMat;
use report::{Check, Report};

/// Cartan matrix of the path graph on n vertices.
pub fn an_cartan(n: usize) -> IMat {
    assert!(n >= 1);
    let mut c = IMat::zeros(n, n);
    for i in 0..n {
        c[(i, i)] = 2;
        if i + 1 < n {
            c[(i, i + 1)] = -1;
            c[(i + 1, i)] = -1;
        }
    }
    c
}

/// Dimension vector of the projective cover P_i on the equioriented A_n
/// quiver with arrows j+1 -> j: the interval alpha_1 + ... + alpha_i.
pub fn projective_class(n: usize, i: usize) -> Vec<i64> {
    assert!(i >= 1 && i <= n, "projective index out of range");
    (0..n).map(|k| i64::from(k < i)).collect()
}

/// Word s_a s_{a+1} ... s_b ... s_{a+1} s_a (indices 1-based, a <= b).
fn nest_word(cartan: &IMat, a: usize, b: usize) -> WeylElement {
    let n = cartan.rows();
    let gens: Vec<WeylElement> = (0..n).map(|v| simple_reflection_at(cartan, v)).collect();
    let mut word: Vec<&WeylElement> = (a..=b).map(|k| &gens[k - 1]).collect();
    word.extend((a..b).rev().map(|k| &gens[k - 1]));
    WeylElement::compose_all(word, n)
}

/// Exact matrix checks, for all 2 <= i <= n: the reflection in [P_i] equals
/// both nested simple-reflection words, and s_i equals both triple products
/// of the reflections in [P_{i-1}] and [P_i].
pub fn verify_linear_identities(n: usize) -> Report {
    assert!(n >= 2, "need at least two vertices");
    let cartan = an_cartan(n);
    let gens: Vec<WeylElement> = (0..n).map(|v| simple_reflection_at(&cartan, v)).collect();
    let proj: Vec<WeylElement> = (1..=n)
        .map(|i| reflection_in_vector(&cartan, &projective_class(n, i)).expect("interval is a real root"))
        .collect();

    let mut report = Report::new("weyl-linear", serde_json::json!({ "n": n }));
    let mat = |w: &WeylElement| serde_json::to_string(&w.matrix().to_rows()).unwrap();
    for i in 2..=n {
        let p_i = &proj[i - 1];
        let p_prev = &proj[i - 2];
        let s_i = &gens[i - 1];

        let desc = nest_word(&cartan, 1, i);
        report.push(Check::equality(
            format!("linear-n{n}-i{i}-nest-desc"),
            format!("reflection in [P_{i}] equals s_{i}...s_1...s_{i} on A_{n}"),
            *p_i == desc,
            mat(p_i),
            mat(&desc),
        ));

        // The ascending form s_1 s_2 ... s_i ... s_2 s_1 is nest_word read
        // from the other end; build it explicitly.
        let mut word: Vec<&WeylElement> = (1..=i).map(|k| &gens[k - 1]).collect();
        word.extend((1..i).rev().map(|k| &gens[k - 1]));
        let asc = WeylElement::compose_all(word, n);
        report.push(Check::equality(
            format!("linear-n{n}-i{i}-nest-asc"),
            format!("reflection in [P_{i}] equals s_1...s_{i}...s_1 on A_{n}"),
            *p_i == asc,
            mat(p_i),
            mat(&asc),
        ));

        let left = p_prev.compose(p_i).compose(p_prev);
        report.push(Check::equality(
            format!("linear-n{n}-i{i}-conj-left"),
            format!("s_{i} equals s_[P_{}] s_[P_{i}] s_[P_{}] on A_{n}", i - 1, i - 1),
            *s_i == left,
            mat(s_i),
            mat(&left),
        ));

        let right = p_i.compose(p_prev).compose(p_i);
        report.push(Check::equality(
            format!("linear-n{n}-i{i}-conj-right"),
            format!("s_{i} equals s_[P_{i}] s_[P_{}] s_[P_{i}] on A_{n}", i - 1),
            *s_i == right,
            mat(s_i),
            mat(&right),
        ));
    }
    report
}
