//! Exact arithmetic in the two-variable Laurent polynomial ring Z[q^±1, t^±1].
//!
//! [`LaurentPoly`] is the scalar type of the whole crate: sparse terms with
//! arbitrary-precision integer coefficients, kept in a canonical sorted order
//! so that equality is structural. [`RingFraction`] is a thin field-of-fractions
//! layer used only where exact inversion forces denominators.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// One monomial `coeff * q^eq * t^et`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub eq: i64,
    pub et: i64,
    pub coeff: BigInt,
}

/// An element of Z[q^±1, t^±1].
///
/// Invariants: terms are sorted lexicographically by `(eq, et)`, no coefficient
/// is zero, and no two terms share an exponent pair.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    terms: Vec<Term>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(0, 0, c)
    }

    /// `c * q^eq * t^et`.
    pub fn monomial(eq: i64, et: i64, c: i64) -> Self {
        Self::monomial_big(eq, et, BigInt::from(c))
    }

    pub fn monomial_big(eq: i64, et: i64, c: BigInt) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            LaurentPoly {
                terms: vec![Term { eq, et, coeff: c }],
            }
        }
    }

    /// The variable `q`.
    pub fn q() -> Self {
        Self::monomial(1, 0, 1)
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(0, 1, 1)
    }

    /// Builds a polynomial from raw `(eq, et, coeff)` triples, canonicalizing.
    pub fn from_coeffs(coeffs: &[(i64, i64, i64)]) -> Self {
        let terms = coeffs
            .iter()
            .map(|&(eq, et, c)| Term {
                eq,
                et,
                coeff: BigInt::from(c),
            })
            .collect();
        Self::from_terms(terms)
    }

    /// Canonicalizes an arbitrary term list: sort, merge duplicates, drop zeros.
    pub fn from_terms(mut terms: Vec<Term>) -> Self {
        terms.sort_by(|a, b| cmp_key(a.eq, a.et, b.eq, b.et));
        let mut out: Vec<Term> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.eq == t.eq && last.et == t.et => {
                    last.coeff += t.coeff;
                    if last.coeff.is_zero() {
                        out.pop();
                    }
                }
                _ => {
                    if !t.coeff.is_zero() {
                        out.push(t);
                    }
                }
            }
        }
        LaurentPoly { terms: out }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && {
            let t = &self.terms[0];
            t.eq == 0 && t.et == 0 && t.coeff == BigInt::from(1)
        }
    }

    /// Coefficient of `q^eq * t^et` (zero if absent).
    pub fn coeff(&self, eq: i64, et: i64) -> BigInt {
        match self.terms.binary_search_by(|t| cmp_key(t.eq, t.et, eq, et)) {
            Ok(i) => self.terms[i].coeff.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    /// True iff the polynomial is `±q^a t^b`.
    pub fn is_unit_monomial(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].coeff.abs() == BigInt::from(1)
    }

    pub fn neg_ref(&self) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    eq: t.eq,
                    et: t.et,
                    coeff: -&t.coeff,
                })
                .collect(),
        }
    }

    fn add_impl(&self, other: &Self, subtract: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let a = &self.terms[i];
            let b = &other.terms[j];
            match cmp_key(a.eq, a.et, b.eq, b.et) {
                Ordering::Less => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Greater => {
                    let c = if subtract { -&b.coeff } else { b.coeff.clone() };
                    out.push(Term {
                        eq: b.eq,
                        et: b.et,
                        coeff: c,
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if subtract {
                        &a.coeff - &b.coeff
                    } else {
                        &a.coeff + &b.coeff
                    };
                    if !c.is_zero() {
                        out.push(Term {
                            eq: a.eq,
                            et: a.et,
                            coeff: c,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        for b in &other.terms[j..] {
            let c = if subtract { -&b.coeff } else { b.coeff.clone() };
            out.push(Term {
                eq: b.eq,
                et: b.et,
                coeff: c,
            });
        }
        LaurentPoly { terms: out }
    }

    fn mul_impl(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        // Monomial factors are the common case in this crate; skip the map.
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0]);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0]);
        }
        let mut acc: std::collections::BTreeMap<(i64, i64), BigInt> =
            std::collections::BTreeMap::new();
        for a in &self.terms {
            for b in &other.terms {
                let key = (a.eq + b.eq, a.et + b.et);
                let prod = &a.coeff * &b.coeff;
                match acc.get_mut(&key) {
                    Some(c) => *c += prod,
                    None => {
                        acc.insert(key, prod);
                    }
                }
            }
        }
        LaurentPoly {
            terms: acc
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|((eq, et), coeff)| Term { eq, et, coeff })
                .collect(),
        }
    }

    fn mul_term(&self, m: &Term) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    eq: t.eq + m.eq,
                    et: t.et + m.et,
                    coeff: &t.coeff * &m.coeff,
                })
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_impl(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_impl(&base);
            }
        }
        acc
    }

    /// The bar involution: `q ↦ q^{-1}`, `t ↦ t^{-1}`, coefficients fixed.
    pub fn bar(&self) -> Self {
        let mut terms: Vec<Term> = self
            .terms
            .iter()
            .map(|t| Term {
                eq: -t.eq,
                et: -t.et,
                coeff: t.coeff.clone(),
            })
            .collect();
        terms.reverse(); // negation reverses the lex order exactly
        debug_assert!(terms
            .windows(2)
            .all(|w| { cmp_key(w[0].eq, w[0].et, w[1].eq, w[1].et) == Ordering::Less }));
        LaurentPoly { terms }
    }

    /// Evaluates at complex `(q0, t0)`.
    ///
    /// Fails only when a zero base meets a negative exponent.
    pub fn eval(&self, q0: Complex64, t0: Complex64) -> Result<Complex64> {
        let mut acc = Complex64::new(0.0, 0.0);
        for t in &self.terms {
            if (q0.norm_sqr() == 0.0 && t.eq < 0) || (t0.norm_sqr() == 0.0 && t.et < 0) {
                return Err(Error::EvalDomain);
            }
            let c = t.coeff.to_f64().expect("coefficient out of f64 range");
            acc += c * q0.powi(t.eq as i32) * t0.powi(t.et as i32);
        }
        Ok(acc)
    }

    /// Exact substitution q = 1, leaving a Laurent polynomial in t alone
    /// (all q-exponents collapse to 0).
    pub fn collapse_q1(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .map(|t| Term {
                    eq: 0,
                    et: t.et,
                    coeff: t.coeff.clone(),
                })
                .collect(),
        )
    }

    /// Exact division: returns `self / divisor` when the quotient lies in the
    /// ring, `None` otherwise. Nested univariate long division (q outer, t
    /// inner); sound over an integral domain because leading and trailing
    /// terms of a product never cancel.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let f = QGrouped::from_poly(self);
        let g = QGrouped::from_poly(divisor);
        let min_qd = f.min_q - g.min_q;
        let mut rem = f;
        let mut quotient: Vec<Term> = Vec::new();
        while !rem.is_zero() {
            let (fq, f_lead) = rem.leading();
            let (gq, g_lead) = g.leading();
            let qd = fq - gq;
            if qd < min_qd {
                return None;
            }
            let tq = t_div_exact(f_lead, g_lead)?;
            for (et, c) in &tq {
                quotient.push(Term {
                    eq: qd,
                    et: *et,
                    coeff: c.clone(),
                });
            }
            rem.sub_shifted_product(&g, qd, &tq);
        }
        Some(Self::from_terms(quotient))
    }

    /// Greatest common divisor of the integer coefficients (positive), or zero
    /// for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for t in &self.terms {
            g = num_integer_gcd(&g, &t.coeff);
            if g == BigInt::from(1) {
                break;
            }
        }
        g
    }

    /// Divides every coefficient by `d` (must divide exactly).
    fn div_content(&self, d: &BigInt) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|t| Term {
                    eq: t.eq,
                    et: t.et,
                    coeff: &t.coeff / d,
                })
                .collect(),
        }
    }

    /// Lexicographically largest exponent pair, if nonzero.
    fn lex_max(&self) -> Option<(i64, i64)> {
        self.terms.last().map(|t| (t.eq, t.et))
    }
}

fn cmp_key(aq: i64, at: i64, bq: i64, bt: i64) -> Ordering {
    (aq, at).cmp(&(bq, bt))
}

fn num_integer_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    // Euclid; num-bigint has gcd via num-integer but keeping deps minimal here.
    let mut a = a.abs();
    let mut b = b.abs();
    while !b.is_zero() {
        let r = &a % &b;
        a = b;
        b = r;
    }
    a
}

/// A Laurent polynomial grouped by q-exponent, each group a t-Laurent polynomial
/// as a sorted coefficient list. Working form for exact division.
struct QGrouped {
    // ascending by q-exponent; each entry (q_exp, sorted (t_exp, coeff) list)
    groups: Vec<(i64, Vec<(i64, BigInt)>)>,
    min_q: i64,
}

impl QGrouped {
    fn from_poly(p: &LaurentPoly) -> Self {
        let mut groups: Vec<(i64, Vec<(i64, BigInt)>)> = Vec::new();
        for t in p.terms() {
            match groups.last_mut() {
                Some((q, list)) if *q == t.eq => list.push((t.et, t.coeff.clone())),
                _ => groups.push((t.eq, vec![(t.et, t.coeff.clone())])),
            }
        }
        let min_q = groups.first().map(|(q, _)| *q).unwrap_or(0);
        QGrouped { groups, min_q }
    }

    fn is_zero(&self) -> bool {
        self.groups.is_empty()
    }

    fn leading(&self) -> (i64, &[(i64, BigInt)]) {
        let (q, list) = self.groups.last().expect("nonzero");
        (*q, list)
    }

    /// `self -= q^qd * tq * g`.
    fn sub_shifted_product(&mut self, g: &QGrouped, qd: i64, tq: &[(i64, BigInt)]) {
        for (gq, glist) in &g.groups {
            let target_q = gq + qd;
            // product tq * glist
            let mut prod: std::collections::BTreeMap<i64, BigInt> =
                std::collections::BTreeMap::new();
            for (et_a, ca) in tq {
                for (et_b, cb) in glist {
                    let e = et_a + et_b;
                    let c = ca * cb;
                    match prod.get_mut(&e) {
                        Some(v) => *v += c,
                        None => {
                            prod.insert(e, c);
                        }
                    }
                }
            }
            let idx = self.groups.binary_search_by(|(q, _)| q.cmp(&target_q));
            match idx {
                Ok(i) => {
                    let list = &mut self.groups[i].1;
                    let mut merged: std::collections::BTreeMap<i64, BigInt> =
                        list.iter().map(|(e, c)| (*e, c.clone())).collect();
                    for (e, c) in prod {
                        let entry = merged.entry(e).or_insert_with(BigInt::zero);
                        *entry -= c;
                    }
                    let new_list: Vec<(i64, BigInt)> =
                        merged.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                    if new_list.is_empty() {
                        self.groups.remove(i);
                    } else {
                        self.groups[i].1 = new_list;
                    }
                }
                Err(i) => {
                    let list: Vec<(i64, BigInt)> = prod
                        .into_iter()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(e, c)| (e, -c))
                        .collect();
                    if !list.is_empty() {
                        self.groups.insert(i, (target_q, list));
                    }
                }
            }
        }
    }
}

/// Exact univariate Laurent division over Z; `None` if the quotient is not in Z[t^±1].
fn t_div_exact(a: &[(i64, BigInt)], b: &[(i64, BigInt)]) -> Option<Vec<(i64, BigInt)>> {
    let min_quot = a.first()?.0 - b.first().expect("divisor nonzero").0;
    let mut rem: std::collections::BTreeMap<i64, BigInt> =
        a.iter().map(|(e, c)| (*e, c.clone())).collect();
    let (b_deg, b_lead) = {
        let (e, c) = b.last().expect("divisor nonzero");
        (*e, c.clone())
    };
    let mut quot: Vec<(i64, BigInt)> = Vec::new();
    while let Some((&r_deg, r_lead)) = rem.iter().next_back() {
        let d = r_deg - b_deg;
        if d < min_quot {
            return None;
        }
        if (r_lead % &b_lead) != BigInt::zero() {
            return None;
        }
        let qc = r_lead / &b_lead;
        for (e, c) in b {
            let key = d + e;
            let entry = rem.entry(key).or_insert_with(BigInt::zero);
            *entry -= &qc * c;
            if entry.is_zero() {
                rem.remove(&key);
            }
        }
        quot.push((d, qc));
    }
    quot.reverse();
    Some(quot)
}

/// Dispatch-free ring operations on all reference/value combinations.
macro_rules! forward_binop {
    ($trait:ident, $method:ident, $impl:ident) => {
        impl $trait<&LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                self.$impl(rhs)
            }
        }
        impl $trait<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$impl(&rhs)
            }
        }
        impl $trait<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$impl(rhs)
            }
        }
        impl $trait<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$impl(&rhs)
            }
        }
    };
}

impl LaurentPoly {
    fn add_ref(&self, rhs: &Self) -> Self {
        self.add_impl(rhs, false)
    }
    fn sub_ref(&self, rhs: &Self) -> Self {
        self.add_impl(rhs, true)
    }
    fn mul_ref(&self, rhs: &Self) -> Self {
        self.mul_impl(rhs)
    }
}

forward_binop!(Add, add, add_ref);
forward_binop!(Sub, sub, sub_ref);
forward_binop!(Mul, mul, mul_ref);

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.neg_ref()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, t) in self.terms.iter().rev().enumerate() {
            let neg = t.coeff.is_negative();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = t.coeff.abs();
            let mut parts: Vec<String> = Vec::new();
            if mag != BigInt::from(1) || (t.eq == 0 && t.et == 0) {
                parts.push(mag.to_string());
            }
            for (var, e) in [("q", t.eq), ("t", t.et)] {
                match e {
                    0 => {}
                    1 => parts.push(var.to_string()),
                    _ => parts.push(format!("{var}^{e}")),
                }
            }
            write!(f, "{}", parts.join("*"))?;
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<(i64, i64, String)> = self
            .terms
            .iter()
            .map(|t| (t.eq, t.et, t.coeff.to_string()))
            .collect();
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<(i64, i64, String)> = Vec::deserialize(deserializer)?;
        let mut terms = Vec::with_capacity(rows.len());
        for (eq, et, c) in rows {
            let coeff: BigInt = c
                .parse()
                .map_err(|_| D::Error::custom(format!("bad integer coefficient: {c}")))?;
            terms.push(Term { eq, et, coeff });
        }
        Ok(LaurentPoly::from_terms(terms))
    }
}

/// A quotient of Laurent polynomials with nonzero denominator.
///
/// No canonical GCD reduction is maintained; equality is by cross-multiplication.
/// Integer content and monomial units are stripped to bound growth.
#[derive(Clone, Debug)]
pub struct RingFraction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RingFraction {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut f = RingFraction { num, den };
        f.reduce();
        f
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        RingFraction {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn num(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn den(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn reduce(&mut self) {
        if self.num.is_zero() {
            self.den = LaurentPoly::one();
            return;
        }
        // strip common integer content
        let g = num_integer_gcd(&self.num.content(), &self.den.content());
        if g > BigInt::from(1) {
            self.num = self.num.div_content(&g);
            self.den = self.den.div_content(&g);
        }
        // strip the denominator's monomial unit so it stays near exponent zero
        if let Some((dq, dt)) = self.den.lex_max() {
            if dq != 0 || dt != 0 {
                let shift = LaurentPoly::monomial(-dq, -dt, 1);
                self.num = &self.num * &shift;
                self.den = &self.den * &shift;
            }
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        Self::new(
            &(&self.num * &rhs.den) - &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        Self::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }

    pub fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::Singular);
        }
        Ok(Self::new(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn neg(&self) -> Self {
        RingFraction {
            num: self.num.neg_ref(),
            den: self.den.clone(),
        }
    }

    /// Collapses to a genuine Laurent polynomial when the division is exact.
    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        self.num.div_exact(&self.den)
    }
}

impl PartialEq for RingFraction {
    fn eq(&self, other: &Self) -> bool {
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RingFraction {}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> LaurentPoly {
        LaurentPoly::q()
    }

    fn t() -> LaurentPoly {
        LaurentPoly::t()
    }

    fn one() -> LaurentPoly {
        LaurentPoly::one()
    }

    #[test]
    fn difference_of_squares() {
        let lhs = &(&q() - &one()) * &(&q() + &one());
        assert_eq!(lhs, &q().pow(2) - &one());
    }

    #[test]
    fn additive_identity() {
        let p = LaurentPoly::from_coeffs(&[(2, -1, 3), (0, 0, -5)]);
        assert_eq!(&p + &LaurentPoly::zero(), p);
    }

    #[test]
    fn multiplicative_identity_on_expanded_coefficient() {
        // (1-t)(1+qt) expands to 1 + qt - t - qt^2
        let p = &(&one() - &t()) * &(&one() + &(&q() * &t()));
        let expected = LaurentPoly::from_coeffs(&[(0, 0, 1), (1, 1, 1), (0, 1, -1), (1, 2, -1)]);
        assert_eq!(p, expected);
        assert_eq!(&p * &one(), p);
    }

    #[test]
    fn bar_defining_cases() {
        assert_eq!(q().bar(), LaurentPoly::monomial(-1, 0, 1));
        let p = &q() - &one();
        assert_eq!(p.bar(), &LaurentPoly::monomial(-1, 0, 1) - &one());
    }

    #[test]
    fn eval_direct_cases() {
        let i = Complex64::new(0.0, 1.0);
        // q^2 t at (i, i) = i^2 * i = -i
        let p = LaurentPoly::monomial(2, 1, 1);
        let v = p.eval(i, i).unwrap();
        assert!((v - Complex64::new(0.0, -1.0)).norm() < 1e-14);
        // q - 1 vanishes at q = 1
        let p = &q() - &one();
        let v = p
            .eval(Complex64::new(1.0, 0.0), Complex64::new(0.3, 0.7))
            .unwrap();
        assert!(v.norm() < 1e-15);
    }

    #[test]
    fn eval_zero_base_negative_exponent_is_domain_error() {
        let p = LaurentPoly::monomial(-1, 0, 1);
        assert!(matches!(
            p.eval(Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)),
            Err(Error::EvalDomain)
        ));
    }

    #[test]
    fn collapse_q1_cases() {
        // (q-1)*p collapses to zero
        let p = LaurentPoly::from_coeffs(&[(3, -2, 7), (0, 1, 2)]);
        let prod = &(&q() - &one()) * &p;
        assert!(prod.collapse_q1().is_zero());
        // (1-qt)(1+q^2 t) -> (1-t)(1+t)
        let a = &one() - &(&q() * &t());
        let b = &one() + &LaurentPoly::monomial(2, 1, 1);
        let collapsed = (&a * &b).collapse_q1();
        let expected = &(&one() - &t()) * &(&one() + &t());
        assert_eq!(collapsed, expected);
        // q^3 t^-2 -> t^-2
        assert_eq!(
            LaurentPoly::monomial(3, -2, 1).collapse_q1(),
            LaurentPoly::monomial(0, -2, 1)
        );
    }

    #[test]
    fn div_exact_recovers_factor() {
        let a = LaurentPoly::from_coeffs(&[(1, 0, 1), (0, 0, -1)]); // q - 1
        let b = LaurentPoly::from_coeffs(&[(-1, 2, 3), (2, -1, 5), (0, 0, 1)]);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        // and inexact division fails
        let c = &prod + &one();
        assert!(c.div_exact(&a).is_none());
    }

    #[test]
    fn div_exact_integer_content() {
        let a = LaurentPoly::constant(2);
        let p = LaurentPoly::from_coeffs(&[(1, 1, 4), (0, 0, -6)]);
        assert_eq!(
            p.div_exact(&a).unwrap(),
            LaurentPoly::from_coeffs(&[(1, 1, 2), (0, 0, -3)])
        );
        let odd = LaurentPoly::from_coeffs(&[(1, 1, 4), (0, 0, -3)]);
        assert!(odd.div_exact(&a).is_none());
    }

    #[test]
    fn display_rendering() {
        let p = LaurentPoly::from_coeffs(&[(2, 1, -1), (0, 0, 1)]);
        assert_eq!(p.to_string(), "-q^2*t + 1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
        let p = LaurentPoly::from_coeffs(&[(1, -2, 3), (0, 0, -2)]);
        assert_eq!(p.to_string(), "3*q*t^-2 - 2");
    }

    #[test]
    fn json_round_trip_sorted() {
        let p = LaurentPoly::from_coeffs(&[(2, 1, -1), (0, 0, 1), (-1, 3, 12)]);
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"[[-1,3,"12"],[0,0,"1"],[2,1,"-1"]]"#);
        let back: LaurentPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, p);
    }

    #[test]
    fn fraction_equality_cross_multiplication() {
        let a = RingFraction::new(&q() - &one(), t());
        let b = RingFraction::new(
            &(&q() - &one()) * &LaurentPoly::constant(3),
            &t() * &LaurentPoly::constant(3),
        );
        assert_eq!(a, b);
        let c = a.sub(&b);
        assert!(c.is_zero());
    }

    #[test]
    fn fraction_to_laurent() {
        let f = RingFraction::new(&(&q() * &q()) - &one(), &q() + &one());
        assert_eq!(f.to_laurent().unwrap(), &q() - &one());
        let g = RingFraction::new(one(), &q() + &one());
        assert!(g.to_laurent().is_none());
    }

    fn arb_poly() -> impl Strategy<Value = LaurentPoly> {
        proptest::collection::vec(((-4i64..5), (-4i64..5), (-9i64..10)), 0..8)
            .prop_map(|v| LaurentPoly::from_coeffs(&v))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a - &a, LaurentPoly::zero());
        }

        #[test]
        fn bar_is_ring_involution(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(a.bar().bar(), a.clone());
            prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
            prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
        }

        #[test]
        fn eval_is_ring_homomorphism(a in arb_poly(), b in arb_poly(), th1 in 0.0..std::f64::consts::TAU, th2 in 0.0..std::f64::consts::TAU) {
            let q0 = Complex64::from_polar(1.0, th1);
            let t0 = Complex64::from_polar(1.0, th2);
            let lhs = (&a * &b).eval(q0, t0).unwrap();
            let rhs = a.eval(q0, t0).unwrap() * b.eval(q0, t0).unwrap();
            let scale = lhs.norm().max(rhs.norm()).max(1.0);
            prop_assert!((lhs - rhs).norm() / scale < 1e-12);
            let lhs = (&a + &b).eval(q0, t0).unwrap();
            let rhs = a.eval(q0, t0).unwrap() + b.eval(q0, t0).unwrap();
            let scale = lhs.norm().max(rhs.norm()).max(1.0);
            prop_assert!((lhs - rhs).norm() / scale < 1e-12);
        }

        #[test]
        fn bar_specializes_to_conjugation_on_torus(a in arb_poly(), th1 in 0.0..std::f64::consts::TAU, th2 in 0.0..std::f64::consts::TAU) {
            let q0 = Complex64::from_polar(1.0, th1);
            let t0 = Complex64::from_polar(1.0, th2);
            let lhs = a.bar().eval(q0, t0).unwrap();
            let rhs = a.eval(q0, t0).unwrap().conj();
            prop_assert!((lhs - rhs).norm() < 1e-10 * (1.0 + rhs.norm()));
        }

        #[test]
        fn div_exact_inverts_multiplication(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let p = &a * &b;
            prop_assert_eq!(p.div_exact(&b).unwrap(), a);
        }
    }
}
