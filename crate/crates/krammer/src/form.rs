//! The invariant sesquilinear form on the v_{i,j} basis, from its closed-form
//! entry table.
//!
//! The pairing ⟨v_{i,j}, v_{k,l}⟩ is linear in the first slot and
//! bar-conjugate in the second; every entry is a common prefactor `c` times a
//! short case value determined by the order relations among i, j, k, l.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lkrep::{LkBasis, LkRep};
use crate::matrix::RingMatrix;
use crate::ring::LaurentPoly;

/// Which of the four candidate matrix identities a generator matrix M
/// satisfies against J. `bar` is entrywise q ↦ q^{-1}, t ↦ t^{-1}.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum InvarianceConvention {
    /// Mᵀ · J · bar(M) = J
    TransposeJBar,
    /// bar(M)ᵀ · J · M = J
    BarTransposeJ,
    /// M · J · bar(M)ᵀ = J
    MJBarTranspose,
    /// bar(M) · J · Mᵀ = J
    BarMJTranspose,
}

impl InvarianceConvention {
    pub const ALL: [InvarianceConvention; 4] = [
        InvarianceConvention::TransposeJBar,
        InvarianceConvention::BarTransposeJ,
        InvarianceConvention::MJBarTranspose,
        InvarianceConvention::BarMJTranspose,
    ];

    /// Evaluates the candidate identity's left side.
    pub fn transform(self, m: &RingMatrix, j: &RingMatrix) -> RingMatrix {
        match self {
            InvarianceConvention::TransposeJBar => m.transpose().mul(j).mul(&m.bar()),
            InvarianceConvention::BarTransposeJ => m.bar().transpose().mul(j).mul(m),
            InvarianceConvention::MJBarTranspose => m.mul(j).mul(&m.bar().transpose()),
            InvarianceConvention::BarMJTranspose => m.bar().mul(j).mul(&m.transpose()),
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            InvarianceConvention::TransposeJBar => "T_J_bar",
            InvarianceConvention::BarTransposeJ => "barT_J_M",
            InvarianceConvention::MJBarTranspose => "M_J_barT",
            InvarianceConvention::BarMJTranspose => "bar_J_T",
        }
    }
}

/// The form for a fixed strand count: the raw matrix `J = c·M'` and the
/// normalized matrix `M'` whose entries are the bare case values.
#[derive(Clone, Debug)]
pub struct FormMatrix {
    n: usize,
    j: RingMatrix,
    normalized: RingMatrix,
    prefactor: LaurentPoly,
}

/// The common prefactor c = −(1−t)(1+qt)(q−1)² t^{-2} q^{-3}.
pub fn form_prefactor() -> LaurentPoly {
    let one = LaurentPoly::one();
    let q = LaurentPoly::q();
    let t = LaurentPoly::t();
    let qt = &q * &t;
    let f = &(&(&one - &t) * &(&one + &qt)) * &(&q - &one).pow(2);
    &f * &LaurentPoly::monomial(-3, -2, -1)
}

/// Classifies the order relations among the chord endpoints of ⟨v_{i,j},
/// v_{k,l}⟩ into the eight entry patterns of the form table. Both the exact
/// entry construction here and the factored complex evaluation in `numeric`
/// key off this one classification, so the two routes cannot drift apart on
/// which pattern an index pair falls into.
///
/// index — case value:
///   0 — 0                    (disjoint or otherwise unpaired)
///   1 — (1 − qt)(1 + q²t)    (i = k, j = l)
///   2 — −q²t²(q − 1)         (i = k < j < l  or  i < k < j = l)
///   3 — −(q − 1)             (k = i < l < j  or  k < i < j = l)
///   4 — t(q − 1)             (i < j = k < l)
///   5 — q²t(q − 1)           (k < l = i < j)
///   6 — −t(q − 1)²(1 + qt)   (i < k < j < l)
///   7 — (q − 1)²(1 + qt)     (k < i < l < j)
pub(crate) fn case_index(i: usize, j: usize, k: usize, l: usize) -> u8 {
    debug_assert!(i < j && k < l);
    if i == k && j == l {
        1
    } else if (i == k && j < l) || (i < k && k < j && j == l) {
        2
    } else if (i == k && l < j) || (k < i && j == l) {
        3
    } else if j == k {
        4
    } else if l == i {
        5
    } else if i < k && k < j && j < l {
        6
    } else if k < i && i < l && l < j {
        7
    } else {
        0
    }
}

/// The case value for ⟨v_{i,j}, v_{k,l}⟩ / c, given 1 ≤ i < j, 1 ≤ k < l.
fn case_value(i: usize, j: usize, k: usize, l: usize) -> LaurentPoly {
    let one = LaurentPoly::one();
    let q = LaurentPoly::q();
    let t = LaurentPoly::t();
    let qm1 = &q - &one; // q - 1
    let qt = &q * &t;
    match case_index(i, j, k, l) {
        0 => LaurentPoly::zero(),
        1 => &(&one - &qt) * &(&one + &LaurentPoly::monomial(2, 1, 1)),
        2 => &LaurentPoly::monomial(2, 2, -1) * &qm1,
        3 => qm1.neg_ref(),
        4 => &t * &qm1,
        5 => &LaurentPoly::monomial(2, 1, 1) * &qm1,
        6 => &(&LaurentPoly::monomial(0, 1, -1) * &qm1.pow(2)) * &(&one + &qt),
        7 => &qm1.pow(2) * &(&one + &qt),
        _ => unreachable!(),
    }
}

impl FormMatrix {
    pub fn new(n: usize) -> Self {
        let basis = LkBasis::new(n);
        let c = form_prefactor();
        let dim = basis.dim();
        let normalized = RingMatrix::from_fn(dim, dim, |r, s| {
            let (i, j) = basis.pair(r);
            let (k, l) = basis.pair(s);
            case_value(i, j, k, l)
        });
        let j = normalized.scale(&c);
        FormMatrix {
            n,
            j,
            normalized,
            prefactor: c,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// The raw form matrix J.
    pub fn j(&self) -> &RingMatrix {
        &self.j
    }

    /// The normalized matrix M' = J / c.
    pub fn normalized(&self) -> &RingMatrix {
        &self.normalized
    }

    pub fn prefactor(&self) -> &LaurentPoly {
        &self.prefactor
    }

    /// The pairing ⟨x, y⟩ = xᵀ · J · bar(y) on coordinate vectors.
    pub fn pair(&self, x: &[LaurentPoly], y: &[LaurentPoly]) -> LaurentPoly {
        let dim = self.j.rows();
        assert_eq!(x.len(), dim);
        assert_eq!(y.len(), dim);
        let mut acc = LaurentPoly::zero();
        for (r, xr) in x.iter().enumerate() {
            if xr.is_zero() {
                continue;
            }
            for (s, ys) in y.iter().enumerate() {
                let e = self.j.at(r, s);
                if e.is_zero() || ys.is_zero() {
                    continue;
                }
                acc = &acc + &(&(xr * e) * &ys.bar());
            }
        }
        acc
    }

    /// True iff Jᵀ = bar(J) entrywise.
    pub fn check_hermitian_symmetry(&self) -> bool {
        self.j.transpose() == self.j.bar()
    }
}

/// Determines which of the four candidate identities holds exactly for every
/// generator of the representation at this strand count.
pub fn check_invariance(n: usize) -> Result<InvarianceConvention> {
    let form = FormMatrix::new(n);
    let rep = LkRep::get(n);
    let mut surviving: Vec<InvarianceConvention> = InvarianceConvention::ALL.to_vec();
    for i in 1..n {
        let m = rep.gen_matrix(i, 1)?;
        surviving.retain(|conv| &conv.transform(m, form.j()) == form.j());
        if surviving.is_empty() {
            return Err(Error::InvarianceInconsistent { n });
        }
    }
    // At n = 2 all four degenerate to the same scalar identity; report the
    // first survivor, which for n ≥ 3 is unique.
    Ok(surviving[0])
}

/// The single convention that validates for every generator at every n,
/// frozen after `check_invariance` confirmed it across n = 2..5:
/// Mᵀ · J · bar(M) = J.
pub const FROZEN_CONVENTION: InvarianceConvention = InvarianceConvention::TransposeJBar;

/// Exact determinant of the normalized form matrix M' = J/c, with the q = 1
/// specialization checked against the closed form ((1−t)(1+t))^N.
///
/// The check runs by two routes — collapse the matrix then take the
/// determinant, and take the determinant then collapse — which must agree.
pub fn nonsingularity_certificate(n: usize) -> Result<LaurentPoly> {
    let form = FormMatrix::new(n);
    let det = form.normalized().det()?;
    let dim = form.normalized().rows();

    let collapsed_then_det = {
        let m = RingMatrix::from_fn(dim, dim, |r, s| form.normalized().at(r, s).collapse_q1());
        m.det()?
    };
    let det_then_collapsed = det.collapse_q1();
    let one = LaurentPoly::one();
    let t = LaurentPoly::t();
    let expected = (&(&one - &t) * &(&one + &t)).pow(dim as u32);
    if det_then_collapsed != expected || collapsed_then_det != expected {
        return Err(Error::CertificateMismatch);
    }
    if det.is_zero() {
        return Err(Error::Singular);
    }
    Ok(det)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn one() -> LaurentPoly {
        LaurentPoly::one()
    }

    #[test]
    fn prefactor_expansion() {
        // c = -(1-t)(1+qt)(q-1)² t^-2 q^-3; spot value at a monomial level:
        // the bar of c equals -c·t²q³ scaled appropriately — concretely
        // bar(c)·q³t² = -c·q³t²·q³t² / (q³t²)... check the defining identity
        // bar(c) = -t² q³ c directly, which drives Hermitian symmetry.
        let c = form_prefactor();
        let rhs = &LaurentPoly::monomial(3, 2, -1) * &c;
        assert_eq!(c.bar(), rhs);
    }

    #[test]
    fn diagonal_entry_is_prefactor_times_expected() {
        let f = FormMatrix::new(3);
        let expected = &(&one() - &LaurentPoly::monomial(1, 1, 1))
            * &(&one() + &LaurentPoly::monomial(2, 1, 1));
        for r in 0..3 {
            assert_eq!(*f.normalized().at(r, r), expected);
        }
    }

    #[test]
    fn disjoint_chords_pair_to_zero() {
        let f = FormMatrix::new(4);
        let b = LkBasis::new(4);
        // (1,2) vs (3,4): indices disjoint and non-interleaved
        assert!(f.j().at(b.index_of(1, 2), b.index_of(3, 4)).is_zero());
    }

    #[test]
    fn interleaved_chords_case() {
        // ⟨v_{1,3}, v_{2,4}⟩: i<k<j<l gives -t(q-1)²(1+qt) times c
        let f = FormMatrix::new(4);
        let b = LkBasis::new(4);
        let got = f.normalized().at(b.index_of(1, 3), b.index_of(2, 4));
        let expected = &(&LaurentPoly::monomial(0, 1, -1) * &(&LaurentPoly::q() - &one()).pow(2))
            * &(&one() + &LaurentPoly::monomial(1, 1, 1));
        assert_eq!(*got, expected);
    }

    #[test]
    fn hermitian_symmetry_small_n() {
        for n in 2..=5 {
            assert!(FormMatrix::new(n).check_hermitian_symmetry(), "n = {n}");
        }
    }

    #[test]
    fn perturbed_matrix_fails_hermitian_check() {
        let f = FormMatrix::new(3);
        let mut j = f.j().clone();
        *j.at_mut(0, 1) = j.at(0, 1) + &one();
        assert_ne!(j.transpose(), j.bar());
    }

    #[test]
    fn invariance_convention_fixed_across_n() {
        for n in 2..=4 {
            let conv = check_invariance(n).unwrap();
            if n == 2 {
                // 1×1: every candidate degenerates to the same identity.
                continue;
            }
            assert_eq!(conv, FROZEN_CONVENTION, "n = {n}");
        }
    }

    #[test]
    fn certificate_small_n() {
        let det2 = nonsingularity_certificate(2).unwrap();
        // n=2: M' is 1×1 so det = (1-qt)(1+q²t)
        let expected = &(&one() - &LaurentPoly::monomial(1, 1, 1))
            * &(&one() + &LaurentPoly::monomial(2, 1, 1));
        assert_eq!(det2, expected);
        nonsingularity_certificate(3).unwrap();
    }

    fn arb_vec(dim: usize) -> impl Strategy<Value = Vec<LaurentPoly>> {
        proptest::collection::vec(
            proptest::collection::vec(((-2i64..3), (-2i64..3), (-3i64..4)), 0..3)
                .prop_map(|v| LaurentPoly::from_coeffs(&v)),
            dim,
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(16))]

        #[test]
        fn pairing_is_invariant_under_generators(x in arb_vec(3), y in arb_vec(3), gen in 1usize..3) {
            // n = 3, ⟨Mx, My⟩ = ⟨x, y⟩ with ⟨x,y⟩ = xᵀ J bar(y)
            let f = FormMatrix::new(3);
            let rep = LkRep::get(3);
            let m = rep.gen_matrix(gen, 1).unwrap();
            let mul_vec = |mat: &RingMatrix, v: &[LaurentPoly], conj: bool| -> Vec<LaurentPoly> {
                (0..mat.rows())
                    .map(|r| {
                        let mut acc = LaurentPoly::zero();
                        for (c, vc) in v.iter().enumerate().take(mat.cols()) {
                            let e = if conj { mat.at(r, c).bar() } else { mat.at(r, c).clone() };
                            if !e.is_zero() && !vc.is_zero() {
                                acc = &acc + &(&e * vc);
                            }
                        }
                        acc
                    })
                    .collect()
            };
            // Under Mᵀ J bar(M) = J, the invariant pairing is
            // ⟨x,y⟩ = xᵀ J bar(y) with x ↦ Mx acting via xᵀ ↦ xᵀMᵀ, i.e.
            // vectors transform by M in the first slot and bar(M) in the second.
            let mx = mul_vec(m, &x, false);
            // second slot carries the bar: pair() bars y internally, so feed
            // y transformed by M and let bar(M y) = bar(M)bar(y) happen inside.
            let my = mul_vec(m, &y, false);
            prop_assert_eq!(f.pair(&mx, &my), f.pair(&x, &y));
        }
    }
}
