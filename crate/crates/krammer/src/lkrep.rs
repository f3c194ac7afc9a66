//! The Lawrence–Krammer representation: B_n → GL_{n(n−1)/2}(Z[q^±1, t^±1]).
//!
//! Basis vectors v_{i,j} are indexed by pairs 1 ≤ i < j ≤ n in lexicographic
//! order. A generator acts on a basis vector through one of six index-relation
//! cases; each case fills one column of the generator matrix. Words evaluate
//! as ordered matrix products, first letter leftmost.

use std::collections::HashMap;
use std::sync::Mutex;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::matrix::RingMatrix;
use crate::ring::LaurentPoly;

/// The ordered basis {v_{i,j} : 1 ≤ i < j ≤ n} with pair ↔ index lookups.
#[derive(Clone, Debug)]
pub struct LkBasis {
    n: usize,
    pairs: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
}

impl LkBasis {
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "need at least 2 strands");
        let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
        for i in 1..=n {
            for j in (i + 1)..=n {
                pairs.push((i, j));
            }
        }
        let index = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();
        LkBasis { n, pairs, index }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn pair(&self, k: usize) -> (usize, usize) {
        self.pairs[k]
    }

    pub fn index_of(&self, i: usize, j: usize) -> usize {
        self.index[&(i, j)]
    }
}

/// The representation for a fixed strand count, with all generator matrices
/// and their exact inverses computed once up front.
pub struct LkRep {
    basis: LkBasis,
    gens: Vec<RingMatrix>,     // gens[i-1] = ρ(σ_i)
    gen_invs: Vec<RingMatrix>, // gen_invs[i-1] = ρ(σ_i)^{-1}
}

/// Process-wide cache: building inverses is the expensive part and every
/// caller wants the same handful of strand counts.
static REP_CACHE: Mutex<Vec<Option<&'static LkRep>>> = Mutex::new(Vec::new());

impl LkRep {
    /// Builds (or fetches) the representation for `n` strands. The returned
    /// reference is to a process-lifetime cached instance.
    pub fn get(n: usize) -> &'static LkRep {
        assert!(n >= 2, "need at least 2 strands");
        let mut cache = REP_CACHE.lock().unwrap();
        if cache.len() <= n {
            cache.resize(n + 1, None);
        }
        if let Some(rep) = cache[n] {
            return rep;
        }
        let rep: &'static LkRep = Box::leak(Box::new(LkRep::build(n)));
        cache[n] = Some(rep);
        rep
    }

    fn build(n: usize) -> LkRep {
        let basis = LkBasis::new(n);
        let gens: Vec<RingMatrix> = (1..n).map(|i| gen_action_matrix(&basis, i)).collect();
        let gen_invs = gens
            .iter()
            .map(|g| {
                g.inverse()
                    .expect("generator matrices are invertible over the Laurent ring")
            })
            .collect();
        LkRep {
            basis,
            gens,
            gen_invs,
        }
    }

    pub fn basis(&self) -> &LkBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// ρ(σ_i^sign) for 1 ≤ i ≤ n−1.
    pub fn gen_matrix(&self, i: usize, sign: i32) -> Result<&RingMatrix> {
        if i == 0 || i >= self.basis.n {
            return Err(Error::GeneratorIndex {
                n: self.basis.n,
                index: i as i64,
            });
        }
        Ok(if sign >= 0 {
            &self.gens[i - 1]
        } else {
            &self.gen_invs[i - 1]
        })
    }

    /// ρ(w): ordered product over the word's letters, first letter leftmost.
    pub fn rep_matrix(&self, w: &BraidWord) -> RingMatrix {
        assert_eq!(w.n(), self.basis.n, "strand counts differ");
        let mut acc = RingMatrix::identity(self.dim());
        for &k in w.letters() {
            let m = self
                .gen_matrix(k.unsigned_abs() as usize, k.signum())
                .expect("letters validated at word construction");
            acc = acc.mul(m);
        }
        acc
    }
}

/// The action of σ_i on the basis, one column per basis vector v_{j,k}:
///
/// - i ∉ {j−1, j, k−1, k}:  v_{j,k}
/// - i = j−1:               q·v_{i,k} + (q²−q)·v_{i,j} + (1−q)·v_{j,k}
/// - i = j ≠ k−1:           v_{j+1,k}
/// - i = k−1 ≠ j:           q·v_{j,i} + (1−q)·v_{j,k} − (q²−q)t·v_{i,k}
/// - i = k:                 v_{j,k+1}
/// - i = j = k−1:           −tq²·v_{j,k}
fn gen_action_matrix(basis: &LkBasis, i: usize) -> RingMatrix {
    let q = LaurentPoly::q;
    let one = LaurentPoly::one;
    let n_dim = basis.dim();
    let mut m = RingMatrix::zero(n_dim, n_dim);
    for (col, &(j, k)) in basis.pairs().iter().enumerate() {
        let mut put = |tj: usize, tk: usize, c: LaurentPoly| {
            let row = basis.index_of(tj, tk);
            *m.at_mut(row, col) = m.at(row, col) + &c;
        };
        if i == j && i == k - 1 {
            // -t q^2 v_{j,k}
            put(j, k, LaurentPoly::monomial(2, 1, -1));
        } else if i + 1 == j {
            // q v_{i,k} + (q^2 - q) v_{i,j} + (1 - q) v_{j,k}
            put(i, k, q());
            put(i, j, LaurentPoly::from_coeffs(&[(2, 0, 1), (1, 0, -1)]));
            put(j, k, &one() - &q());
        } else if i == j {
            // v_{j+1,k}
            put(j + 1, k, one());
        } else if i + 1 == k {
            // q v_{j,i} + (1 - q) v_{j,k} - (q^2 - q) t v_{i,k}
            put(j, i, q());
            put(j, k, &one() - &q());
            put(i, k, LaurentPoly::from_coeffs(&[(2, 1, -1), (1, 1, 1)]));
        } else if i == k {
            // v_{j,k+1}
            put(j, k + 1, one());
        } else {
            put(j, k, one());
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn basis_ordering_n4() {
        let b = LkBasis::new(4);
        assert_eq!(b.pairs(), &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        assert_eq!(b.dim(), 6);
        assert_eq!(b.index_of(2, 4), 4);
    }

    #[test]
    fn n2_generator_is_scalar() {
        let rep = LkRep::get(2);
        let g = rep.gen_matrix(1, 1).unwrap();
        assert_eq!(g.rows(), 1);
        assert_eq!(*g.at(0, 0), LaurentPoly::monomial(2, 1, -1)); // -t q^2
    }

    #[test]
    fn n3_sigma1_column_of_v23() {
        // σ_1 · v_{2,3} = q v_{1,3} + (q^2 - q) v_{1,2} + (1 - q) v_{2,3}
        let rep = LkRep::get(3);
        let g = rep.gen_matrix(1, 1).unwrap();
        let b = rep.basis();
        let col = b.index_of(2, 3);
        assert_eq!(*g.at(b.index_of(1, 3), col), LaurentPoly::q());
        assert_eq!(
            *g.at(b.index_of(1, 2), col),
            LaurentPoly::from_coeffs(&[(2, 0, 1), (1, 0, -1)])
        );
        assert_eq!(
            *g.at(b.index_of(2, 3), col),
            LaurentPoly::from_coeffs(&[(0, 0, 1), (1, 0, -1)])
        );
    }

    #[test]
    fn n4_sigma2_fixes_v14() {
        // i=2, (j,k)=(1,4): 2 ∉ {0, 1, 3, 4}, so the column is the basis vector.
        let rep = LkRep::get(4);
        let g = rep.gen_matrix(2, 1).unwrap();
        let b = rep.basis();
        let col = b.index_of(1, 4);
        for row in 0..b.dim() {
            let expected = if row == col {
                LaurentPoly::one()
            } else {
                LaurentPoly::zero()
            };
            assert_eq!(*g.at(row, col), expected);
        }
    }

    #[test]
    fn inverse_letters_cancel() {
        for n in 2..=4 {
            let rep = LkRep::get(n);
            let w = BraidWord::parse("1 -1", n).unwrap();
            assert_eq!(rep.rep_matrix(&w), RingMatrix::identity(rep.dim()));
        }
    }

    #[test]
    fn sigma1_cubed_in_b2() {
        let rep = LkRep::get(2);
        let w = BraidWord::parse("1 1 1", 2).unwrap();
        let m = rep.rep_matrix(&w);
        assert_eq!(*m.at(0, 0), LaurentPoly::monomial(6, 3, -1)); // -t^3 q^6
    }

    #[test]
    fn braid_relation_b3() {
        let rep = LkRep::get(3);
        let lhs = rep.rep_matrix(&BraidWord::parse("1 2 1", 3).unwrap());
        let rhs = rep.rep_matrix(&BraidWord::parse("2 1 2", 3).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn far_commutation_b4() {
        let rep = LkRep::get(4);
        let lhs = rep.rep_matrix(&BraidWord::parse("1 3", 4).unwrap());
        let rhs = rep.rep_matrix(&BraidWord::parse("3 1", 4).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn word_inverse_is_matrix_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 3..=4 {
            let rep = LkRep::get(n);
            let w = BraidWord::random(n, 6, &mut rng);
            let m = rep.rep_matrix(&w);
            let mi = rep.rep_matrix(&w.inverse());
            assert_eq!(m.mul(&mi), RingMatrix::identity(rep.dim()));
        }
    }

    #[test]
    fn homomorphism_on_concatenation() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let rep = LkRep::get(4);
        let a = BraidWord::random(4, 5, &mut rng);
        let b = BraidWord::random(4, 5, &mut rng);
        assert_eq!(
            rep.rep_matrix(&a.concat(&b)),
            rep.rep_matrix(&a).mul(&rep.rep_matrix(&b))
        );
    }

    #[test]
    fn generator_index_out_of_range() {
        let rep = LkRep::get(3);
        assert!(matches!(
            rep.gen_matrix(3, 1),
            Err(Error::GeneratorIndex { n: 3, index: 3 })
        ));
    }
}
