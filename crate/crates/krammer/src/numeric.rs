//! Complex specialization on the unit torus: definiteness certificates for
//! the invariant form near (q, t) = (1, i), unitarization of specialized
//! representation matrices, numeric characteristic polynomials, and the
//! spectral experiments comparing a braid word with its reversal.

use num_complex::Complex64;
use rand::Rng;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::lkrep::LkRep;
use crate::matrix::RingMatrix;
use crate::ring::LaurentPoly;

/// A point on the unit torus |q0| = |t0| = 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UnitParams {
    pub q0: Complex64,
    pub t0: Complex64,
}

impl UnitParams {
    pub fn new(q0: Complex64, t0: Complex64) -> Result<Self> {
        if (q0.norm() - 1.0).abs() > 1e-12 || (t0.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::EvalDomain);
        }
        Ok(UnitParams { q0, t0 })
    }

    /// `q0 = exp(iε)`, `t0 = i·exp(iδ)` — the standard parametrization of the
    /// neighborhood of (1, i) where the form is negative definite.
    pub fn near_identity(epsilon_q: f64, epsilon_t: f64) -> Self {
        UnitParams {
            q0: Complex64::from_polar(1.0, epsilon_q),
            t0: Complex64::i() * Complex64::from_polar(1.0, epsilon_t),
        }
    }

    /// A uniform sample from the square of radius `definiteness_ball_radius(n)` around
    /// (1, i) in angle coordinates.
    pub fn sample_in_ball(n: usize, rng: &mut impl Rng) -> Self {
        let r = definiteness_ball_radius(n);
        Self::near_identity(rng.random_range(-r..r), rng.random_range(-r..r))
    }
}

impl Serialize for UnitParams {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            q0: [f64; 2],
            t0: [f64; 2],
        }
        Repr {
            q0: [self.q0.re, self.q0.im],
            t0: [self.t0.re, self.t0.im],
        }
        .serialize(serializer)
    }
}

/// A dense complex matrix, the result of evaluating exact matrices at a torus
/// point. Serialized as nested rows of `[re, im]` pairs.
#[derive(Clone, Debug, PartialEq)]
pub struct SpecializedMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl SpecializedMatrix {
    pub fn zero(dim: usize) -> Self {
        SpecializedMatrix {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zero(dim);
        for i in 0..dim {
            m.data[i * dim + i] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        SpecializedMatrix { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.dim + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        let n = self.dim;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a.norm_sqr() == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.at(k, j);
                }
            }
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        SpecializedMatrix {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.at(j, i))
    }

    pub fn conj(&self) -> Self {
        SpecializedMatrix {
            dim: self.dim,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn conj_transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self.at(j, i).conj())
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// `‖self − I‖_max`.
    pub fn distance_from_identity(&self) -> f64 {
        self.sub(&Self::identity(self.dim)).max_abs()
    }

    /// Hermitian defect `‖self − self†‖_max`.
    pub fn hermitian_defect(&self) -> f64 {
        self.sub(&self.conj_transpose()).max_abs()
    }

    /// Determinant by LU decomposition with partial pivoting.
    pub fn det(&self) -> Complex64 {
        let n = self.dim;
        let mut a = self.data.clone();
        let mut det = Complex64::new(1.0, 0.0);
        for col in 0..n {
            let (pivot_row, pivot_mag) = (col..n)
                .map(|r| (r, a[r * n + col].norm()))
                .max_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap();
            if pivot_mag == 0.0 {
                return Complex64::new(0.0, 0.0);
            }
            if pivot_row != col {
                for j in 0..n {
                    a.swap(col * n + j, pivot_row * n + j);
                }
                det = -det;
            }
            let pivot = a[col * n + col];
            det *= pivot;
            for r in col + 1..n {
                let factor = a[r * n + col] / pivot;
                if factor.norm_sqr() == 0.0 {
                    continue;
                }
                for j in col..n {
                    let v = a[col * n + j];
                    a[r * n + j] -= factor * v;
                }
            }
        }
        det
    }
}

impl Serialize for SpecializedMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut rows = serializer.serialize_seq(Some(self.dim))?;
        for i in 0..self.dim {
            let row: Vec<[f64; 2]> = (0..self.dim)
                .map(|j| {
                    let z = self.at(i, j);
                    [z.re, z.im]
                })
                .collect();
            rows.serialize_element(&row)?;
        }
        rows.end()
    }
}

/// Entrywise evaluation of an exact matrix at a torus point.
pub fn specialize(m: &RingMatrix, p: UnitParams) -> Result<SpecializedMatrix> {
    assert_eq!(m.rows(), m.cols(), "specialization targets square matrices");
    let dim = m.rows();
    let mut out = SpecializedMatrix::zero(dim);
    for i in 0..dim {
        for j in 0..dim {
            *out.at_mut(i, j) = m.at(i, j).eval(p.q0, p.t0)?;
        }
    }
    Ok(out)
}

/// The prefactor c = −(1−t)(1+qt)(q−1)²t⁻²q⁻³ evaluated as a product of
/// factors. Near q = 1 the entries of the form are O((q−1)²) but expand into
/// O(1) monomials, so expanded evaluation cancels catastrophically and loses
/// ~|q−1|⁻² in relative accuracy; factored evaluation keeps the relative
/// error at machine scale, which the unitarization and definiteness
/// tolerances rely on.
fn prefactor_factored(p: UnitParams) -> Complex64 {
    let (q, t) = (p.q0, p.t0);
    let qm1 = q - 1.0;
    -(1.0 - t) * (1.0 + q * t) * qm1 * qm1 / (t * t * q * q * q)
}

/// One entry of the specialized form, evaluated in factored form. Keys off
/// the same case classification as the exact construction.
fn form_entry_factored(pp: (usize, usize), pq: (usize, usize), p: UnitParams) -> Complex64 {
    let (q, t) = (p.q0, p.t0);
    let qm1 = q - 1.0;
    let qt = q * t;
    let case = match crate::form::case_index(pp.0, pp.1, pq.0, pq.1) {
        0 => return Complex64::new(0.0, 0.0),
        1 => (1.0 - qt) * (1.0 + q * q * t),
        2 => -q * q * t * t * qm1,
        3 => -qm1,
        4 => t * qm1,
        5 => q * q * t * qm1,
        6 => -t * qm1 * qm1 * (1.0 + qt),
        7 => qm1 * qm1 * (1.0 + qt),
        _ => unreachable!(),
    };
    prefactor_factored(p) * case
}

/// The invariant form evaluated at a torus point, entry by entry in factored
/// form (never through the expanded exact matrix, whose evaluation loses
/// relative accuracy near q = 1).
pub fn form_specialized(n: usize, p: UnitParams) -> SpecializedMatrix {
    let basis = crate::lkrep::LkBasis::new(n);
    let pairs = basis.pairs();
    SpecializedMatrix::from_fn(basis.dim(), |r, s| {
        form_entry_factored(pairs[r], pairs[s], p)
    })
}

/// The representation matrix of a word evaluated at a torus point, computed
/// as a product of specialized generator matrices (never through the exact
/// word matrix, whose entries grow with word length).
pub fn rep_matrix_specialized(w: &BraidWord, p: UnitParams) -> Result<SpecializedMatrix> {
    let rep = LkRep::get(w.n());
    let n = w.n();
    let mut gens: Vec<Option<SpecializedMatrix>> = vec![None; 2 * (n - 1)];
    let mut acc = SpecializedMatrix::identity(rep.dim());
    for &k in w.letters() {
        let i = k.unsigned_abs() as usize;
        let slot = (i - 1) * 2 + usize::from(k < 0);
        if gens[slot].is_none() {
            let exact = rep.gen_matrix(i, k.signum())?;
            gens[slot] = Some(specialize(exact, p)?);
        }
        acc = acc.mul(gens[slot].as_ref().unwrap());
    }
    Ok(acc)
}

/// Radius of the proven definiteness neighborhood around (1, i):
/// `1/(2n⁴ + 6n³)` in each angle coordinate.
pub fn definiteness_ball_radius(n: usize) -> f64 {
    let n = n as f64;
    1.0 / (2.0 * n.powi(4) + 6.0 * n.powi(3))
}

/// Cholesky factorization of a Hermitian positive-definite matrix:
/// `a = L·L†` with `L` lower triangular and strictly positive real diagonal.
/// Returns `None` when a pivot fails to be strictly positive.
fn cholesky(a: &SpecializedMatrix) -> Option<SpecializedMatrix> {
    let n = a.dim();
    let mut l = SpecializedMatrix::zero(n);
    for j in 0..n {
        let mut d = a.at(j, j).re;
        for k in 0..j {
            d -= l.at(j, k).norm_sqr();
        }
        if !d.is_finite() || d <= 0.0 {
            return None;
        }
        let root = d.sqrt();
        *l.at_mut(j, j) = Complex64::new(root, 0.0);
        for i in j + 1..n {
            let mut s = a.at(i, j);
            for k in 0..j {
                s -= l.at(i, k) * l.at(j, k).conj();
            }
            *l.at_mut(i, j) = s / root;
        }
    }
    Some(l)
}

/// Checks Hermitian symmetry within `1e-10`, then attempts a Cholesky
/// factorization of `−H` (symmetrized): `Ok(true)` iff every pivot is
/// strictly positive, i.e. the form is negative definite at this point.
pub fn certify_negative_definite(n: usize, p: UnitParams) -> Result<bool> {
    let h = form_specialized(n, p);
    negative_definite_factor(&h).map(|l| l.is_some())
}

/// The Cholesky factor of `−H` if it exists, after validating Hermitian
/// symmetry within `1e-10` and symmetrizing.
fn negative_definite_factor(h: &SpecializedMatrix) -> Result<Option<SpecializedMatrix>> {
    let defect = h.hermitian_defect();
    if defect > 1e-10 * h.max_abs().max(1.0) {
        return Err(Error::NotHermitian { residual: defect });
    }
    let dim = h.dim();
    let neg_sym = SpecializedMatrix::from_fn(dim, |i, j| -(h.at(i, j) + h.at(j, i).conj()) / 2.0);
    Ok(cholesky(&neg_sym))
}

/// Inverse of an upper-triangular matrix by back substitution.
fn invert_upper_triangular(u: &SpecializedMatrix) -> SpecializedMatrix {
    let n = u.dim();
    let mut inv = SpecializedMatrix::zero(n);
    for col in 0..n {
        // Solve u · x = e_col; x is zero below `col`.
        for row in (0..=col).rev() {
            let mut s = if row == col {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            };
            for k in row + 1..=col {
                s -= u.at(row, k) * inv.at(k, col);
            }
            *inv.at_mut(row, col) = s / u.at(row, row);
        }
    }
    inv
}

/// Conjugates a form-preserving matrix into the unitary group.
///
/// The exact invariance `Mᵀ·J·bar(M) = J` specializes on the torus to
/// `M†·G·M = G` with `G = Hᵀ`; factoring `−G = L·L†` and setting
/// `U = L†·M·(L†)⁻¹` makes `U` unitary. Fails if `−H` is not positive
/// definite or if `m` does not preserve the form within `1e-8`.
pub fn unitarize(m: &SpecializedMatrix, h: &SpecializedMatrix) -> Result<SpecializedMatrix> {
    let scale = h.max_abs().max(1.0);
    let preserved = m.transpose().mul(h).mul(&m.conj()).sub(h).max_abs();
    if preserved > 1e-8 * scale {
        return Err(Error::FormNotPreserved {
            residual: preserved,
        });
    }
    let g = h.transpose();
    let l = negative_definite_factor(&g)?.ok_or(Error::NotDefinite)?;
    let lt = l.conj_transpose();
    Ok(lt.mul(m).mul(&invert_upper_triangular(&lt)))
}

/// Coefficients of `det(xI − A)` in ascending degree, recovered by evaluating
/// the determinant at scaled roots of unity and inverting the discrete
/// Fourier transform. The evaluation radius 2 comfortably encloses the
/// spectra this crate meets (matrices conjugate to unitaries).
pub fn charpoly_numeric(a: &SpecializedMatrix) -> Vec<Complex64> {
    let n = a.dim();
    let m = n + 1;
    let r = 2.0;
    let values: Vec<Complex64> = (0..m)
        .map(|j| {
            let x = Complex64::from_polar(r, 2.0 * std::f64::consts::PI * j as f64 / m as f64);
            let shifted = SpecializedMatrix::from_fn(n, |row, col| {
                let mut v = -a.at(row, col);
                if row == col {
                    v += x;
                }
                v
            });
            shifted.det()
        })
        .collect();
    (0..m)
        .map(|k| {
            let mut c = Complex64::new(0.0, 0.0);
            for (j, v) in values.iter().enumerate() {
                let w = Complex64::from_polar(
                    1.0,
                    -2.0 * std::f64::consts::PI * (j * k) as f64 / m as f64,
                );
                c += v * w;
            }
            c / (m as f64 * r.powi(k as i32))
        })
        .collect()
}

/// Splits the basis-pair correlations of the squared-norm identity: given
/// coefficients λ indexed by basis pairs, returns the three correlation sums
/// `(S1, S2, S3)` over ordered pairs (P, Q) = ((a,b), (c,d)) with
///
/// - S1: `a=c, b>d` or `b=d, c<a` (nested chords sharing an endpoint),
/// - S2: `a=d` (chords meeting head-to-tail),
/// - S3: `c<a<d<b` (interleaved chords),
///
/// each summing `λ_{a,b}·conj(λ_{c,d})`.
fn correlation_sums(
    pairs: &[(usize, usize)],
    lambda: &[Complex64],
) -> (Complex64, Complex64, Complex64) {
    let zero = Complex64::new(0.0, 0.0);
    let (mut s1, mut s2, mut s3) = (zero, zero, zero);
    for (pi, &(a, b)) in pairs.iter().enumerate() {
        for (qi, &(c, d)) in pairs.iter().enumerate() {
            let term = lambda[pi] * lambda[qi].conj();
            if (a == c && b > d) || (b == d && c < a) {
                s1 += term;
            }
            if a == d {
                s2 += term;
            }
            if c < a && a < d && d < b {
                s3 += term;
            }
        }
    }
    (s1, s2, s3)
}

/// Outcome of checking the squared-norm decomposition `⟨v,v⟩/D = Σ|λ|² +
/// 2Re(w·k)` at one torus point over random coefficient vectors.
///
/// The sign of the first correlation sum is the delicate part of the
/// decomposition, so both orientations are evaluated: the identity that
/// holds against the form matrix takes it negatively (`k = −S1 + q²t·S2 +
/// (q−1)(1+qt)·S3`), and the opposite orientation fails whenever S1-type
/// correlations are present. Both residuals are reported so the sign
/// sensitivity stays visible instead of being absorbed.
#[derive(Clone, Debug, Serialize)]
pub struct QuadformReport {
    pub n: usize,
    pub params: UnitParams,
    pub trials: usize,
    /// Max |LHS − RHS| with the first correlation sum negated (the identity
    /// consistent with the form matrix).
    pub max_residual: f64,
    /// Max |LHS − RHS| with the first correlation sum taken positively;
    /// large whenever S1-type correlations are present.
    pub max_residual_opposite_sign: f64,
}

/// Evaluates both sides of the squared-norm identity on random coefficient
/// vectors: the left through the specialized form matrix, the right through
/// the correlation sums. `D = −(1−t)(1−q²t²)(q−1)²(1+q²t)t⁻²q⁻³` is the real
/// normalizer.
pub fn quadform_identity_check(
    n: usize,
    p: UnitParams,
    trials: usize,
    rng: &mut impl Rng,
) -> Result<QuadformReport> {
    let h = form_specialized(n, p);
    let basis = crate::lkrep::LkBasis::new(n);
    let dim = basis.dim();

    // D = c·(1−qt)(1+q²t), evaluated in factored form like the entries.
    let d = prefactor_factored(p) * (1.0 - p.q0 * p.t0) * (1.0 + p.q0 * p.q0 * p.t0);
    if d.norm() < 1e-30 {
        return Err(Error::EvalDomain);
    }
    let weight = (p.q0 - 1.0) / ((1.0 - p.q0 * p.t0) * (1.0 + p.q0 * p.q0 * p.t0));
    let s2_factor = p.q0 * p.q0 * p.t0;
    let s3_factor = (p.q0 - 1.0) * (1.0 + p.q0 * p.t0);

    let mut max_residual: f64 = 0.0;
    let mut max_residual_opposite_sign: f64 = 0.0;
    for _ in 0..trials {
        let lambda: Vec<Complex64> = (0..dim)
            .map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)))
            .collect();
        // ⟨v, v⟩ = Σ_{P,Q} λ_P·conj(λ_Q)·H[P,Q]
        let mut inner = Complex64::new(0.0, 0.0);
        for r in 0..dim {
            for s in 0..dim {
                inner += lambda[r] * lambda[s].conj() * h.at(r, s);
            }
        }
        let lhs = inner / d;
        let norm_sq: f64 = lambda.iter().map(|z| z.norm_sqr()).sum();
        let (s1, s2, s3) = correlation_sums(basis.pairs(), &lambda);
        let k_holding = -s1 + s2_factor * s2 + s3_factor * s3;
        let k_opposite = s1 + s2_factor * s2 + s3_factor * s3;
        let rhs_holding = norm_sq + 2.0 * (weight * k_holding).re;
        let rhs_opposite = norm_sq + 2.0 * (weight * k_opposite).re;
        max_residual = max_residual.max((lhs - rhs_holding).norm());
        max_residual_opposite_sign = max_residual_opposite_sign.max((lhs - rhs_opposite).norm());
    }
    Ok(QuadformReport {
        n,
        params: p,
        trials,
        max_residual,
        max_residual_opposite_sign,
    })
}

/// Everything the word-reversal experiment produces for one word: exact
/// characteristic-polynomial comparison, numeric cross-checks, and the
/// definiteness context. Equal characteristic polynomials mean the two
/// specialized matrices are unitarily conjugate (both are conjugate to
/// unitary matrices at definite parameters, and unitaries with equal
/// characteristic polynomials are conjugate); whether the underlying braids
/// are conjugate is a strictly harder question this data cannot decide.
#[derive(Clone, Debug, Serialize)]
pub struct ConjugacyReport {
    pub word: String,
    pub n: usize,
    pub params: UnitParams,
    /// Exact coefficient-by-coefficient equality of the characteristic
    /// polynomials of ρ(w) and ρ(reverse w); `None` when the word exceeded
    /// `exact_limit` and only the numeric comparison ran.
    pub charpoly_exact_equal: Option<bool>,
    /// For each of the two words: max |exact coefficient evaluated at the
    /// parameters − numeric coefficient| (dual-route agreement), plus the max
    /// numeric difference between the two words' coefficient lists.
    pub numeric_residuals: NumericResiduals,
    pub definiteness: bool,
    pub note: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct NumericResiduals {
    pub exact_vs_numeric_word: Option<f64>,
    pub exact_vs_numeric_reversed: Option<f64>,
    pub word_vs_reversed: f64,
}

/// Compares ρ(w) with ρ(reverse w): word reversal realizes the composite of
/// inversion with the mirror involution on both sides, which preserves all
/// spectral data, so the characteristic polynomials agree — even though the
/// braids themselves need not be conjugate.
///
/// Words longer than `exact_limit` skip the exact characteristic polynomial
/// (whose cost grows quickly with entry degree) and report numeric data only.
pub fn conjugacy_experiment(
    w: &BraidWord,
    p: UnitParams,
    exact_limit: usize,
) -> Result<ConjugacyReport> {
    let n = w.n();
    let reversed = w.reverse();
    let m_word = rep_matrix_specialized(w, p)?;
    let m_rev = rep_matrix_specialized(&reversed, p)?;
    let num_word = charpoly_numeric(&m_word);
    let num_rev = charpoly_numeric(&m_rev);
    let word_vs_reversed = num_word
        .iter()
        .zip(&num_rev)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);

    let mut charpoly_exact_equal = None;
    let mut exact_vs_numeric_word = None;
    let mut exact_vs_numeric_reversed = None;
    if w.len() <= exact_limit {
        let rep = LkRep::get(n);
        let cp_word = rep.rep_matrix(w).charpoly()?;
        let cp_rev = rep.rep_matrix(&reversed).charpoly()?;
        charpoly_exact_equal = Some(cp_word == cp_rev);
        let residual = |cp: &[LaurentPoly], num: &[Complex64]| -> Result<f64> {
            let mut worst: f64 = 0.0;
            for (c, v) in cp.iter().zip(num) {
                worst = worst.max((c.eval(p.q0, p.t0)? - v).norm());
            }
            Ok(worst)
        };
        exact_vs_numeric_word = Some(residual(&cp_word, &num_word)?);
        exact_vs_numeric_reversed = Some(residual(&cp_rev, &num_rev)?);
    }

    Ok(ConjugacyReport {
        word: w.render(),
        n,
        params: p,
        charpoly_exact_equal,
        numeric_residuals: NumericResiduals {
            exact_vs_numeric_word,
            exact_vs_numeric_reversed,
            word_vs_reversed,
        },
        definiteness: certify_negative_definite(n, p)?,
        note: "braid conjugacy not decided",
    })
}
