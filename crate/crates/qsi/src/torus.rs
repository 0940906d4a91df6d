//! The quantum torus `k_q[t^{±1}, Q^{±1}]` with `Qt = q·tQ`, in the
//! normal order t-power-then-Q-power, together with the qsi operators
//! `σ` and `θ^(m)`.
//!
//! The Picard-Vessiot ring `k[t, Q^{±1}]` is the subring of elements
//! with non-negative t-exponents (`in_pv_ring`).

use thiserror::Error;

use crate::algebra::{Element, Monomial};
use crate::scalar::{qfact, qint, QScalar};

#[derive(Debug, Error, PartialEq, Eq, Clone)]
pub enum TorusError {
    #[error("monomial inverse requires a single nonzero term")]
    NotAMonomial,
}

/// Exponent pair of a normal monomial `t^i Q^j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct TorusKey {
    pub t_exp: i64,
    pub q_exp: i64,
}

impl Monomial for TorusKey {
    fn unit() -> Self {
        TorusKey { t_exp: 0, q_exp: 0 }
    }

    // (t^a Q^b)(t^c Q^d) = q^{b c} t^{a+c} Q^{b+d}
    fn mul(&self, other: &Self) -> (QScalar, Self) {
        (
            QScalar::q_pow(self.q_exp * other.t_exp),
            TorusKey {
                t_exp: self.t_exp + other.t_exp,
                q_exp: self.q_exp + other.q_exp,
            },
        )
    }
}

pub type TorusElement = Element<TorusKey>;

pub fn monomial(t_exp: i64, q_exp: i64, coeff: QScalar) -> TorusElement {
    Element::term(TorusKey { t_exp, q_exp }, coeff)
}

/// The generator `t`.
pub fn t_gen() -> TorusElement {
    monomial(1, 0, QScalar::one())
}

/// The generator `Q`.
pub fn q_gen() -> TorusElement {
    monomial(0, 1, QScalar::one())
}

/// `σ(t^i Q^j) = q^{i+j} t^i Q^j`, extended linearly; a ring automorphism.
pub fn sigma(f: &TorusElement) -> TorusElement {
    sigma_pow(f, 1)
}

pub fn sigma_inv(f: &TorusElement) -> TorusElement {
    sigma_pow(f, -1)
}

/// `σ^k` for any integer `k`.
pub fn sigma_pow(f: &TorusElement, k: i64) -> TorusElement {
    f.map_terms(|key, c| {
        Element::term(*key, c * &QScalar::q_pow(k * (key.t_exp + key.q_exp)))
    })
}

/// `θ^(1)(t^i Q^j) = [i]_q t^{i-1} Q^j`, extended linearly.
pub fn theta1(f: &TorusElement) -> TorusElement {
    f.map_terms(|key, c| {
        let coeff = c * &qint(key.t_exp);
        Element::term(
            TorusKey { t_exp: key.t_exp - 1, q_exp: key.q_exp },
            coeff,
        )
    })
}

/// `θ^(m) = (θ^(1))^m / [m]_q!`, computed by iteration.
pub fn theta(m: u32, f: &TorusElement) -> TorusElement {
    let mut acc = f.clone();
    for _ in 0..m {
        acc = theta1(&acc);
    }
    let fact = qfact(m as i64).expect("non-negative m");
    acc.scale(&fact.inv().expect("[m]_q! is nonzero for formal q"))
}

/// Closed-form fast path for `θ^(m)` on monomials:
/// `θ^(m)(t^i Q^j) = ([i]_q [i-1]_q ... [i-m+1]_q / [m]_q!) t^{i-m} Q^j`.
pub fn theta_closed(m: u32, f: &TorusElement) -> TorusElement {
    let fact_inv = qfact(m as i64)
        .expect("non-negative m")
        .inv()
        .expect("[m]_q! is nonzero for formal q");
    f.map_terms(|key, c| {
        let mut coeff = c * &fact_inv;
        for k in 0..m as i64 {
            coeff = coeff * qint(key.t_exp - k);
        }
        Element::term(
            TorusKey { t_exp: key.t_exp - m as i64, q_exp: key.q_exp },
            coeff,
        )
    })
}

/// Inverse of a single term: `(c t^i Q^j)^{-1} = c^{-1} q^{i j} t^{-i} Q^{-j}`.
pub fn monomial_inverse(f: &TorusElement) -> Result<TorusElement, TorusError> {
    let (key, coeff) = f.as_monomial().ok_or(TorusError::NotAMonomial)?;
    let c = coeff
        .inv()
        .map_err(|_| TorusError::NotAMonomial)?
        * QScalar::q_pow(key.t_exp * key.q_exp);
    Ok(monomial(-key.t_exp, -key.q_exp, c))
}

/// Membership in the Picard-Vessiot ring `k[t, Q^{±1}]`.
pub fn in_pv_ring(f: &TorusElement) -> bool {
    f.terms().all(|(key, _)| key.t_exp >= 0)
}

/// Bounded rectangle of exponents, used as a search domain by the
/// linear solvers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExponentWindow {
    pub t_min: i64,
    pub t_max: i64,
    pub q_min: i64,
    pub q_max: i64,
}

impl ExponentWindow {
    pub fn new(t_min: i64, t_max: i64, q_min: i64, q_max: i64) -> Self {
        assert!(t_min <= t_max && q_min <= q_max, "empty window bounds");
        ExponentWindow { t_min, t_max, q_min, q_max }
    }

    pub fn contains(&self, key: &TorusKey) -> bool {
        (self.t_min..=self.t_max).contains(&key.t_exp)
            && (self.q_min..=self.q_max).contains(&key.q_exp)
    }

    pub fn keys(&self) -> impl Iterator<Item = TorusKey> + '_ {
        (self.t_min..=self.t_max).flat_map(move |t_exp| {
            (self.q_min..=self.q_max).map(move |q_exp| TorusKey { t_exp, q_exp })
        })
    }

    pub fn len(&self) -> usize {
        ((self.t_max - self.t_min + 1) * (self.q_max - self.q_min + 1)) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn commutation_relation() {
        // Q t = q t Q
        let lhs = q_gen().mul(&t_gen());
        let rhs = t_gen().mul(&q_gen()).scale(&QScalar::q());
        assert_eq!(lhs, rhs);
        // t Q is already normal
        assert_eq!(t_gen().mul(&q_gen()), monomial(1, 1, QScalar::one()));
        // (tQ)(tQ) = q t^2 Q^2
        let tq = t_gen().mul(&q_gen());
        assert_eq!(tq.mul(&tq), monomial(2, 2, QScalar::q()));
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(sigma(&t_gen()), t_gen().scale(&QScalar::q()));
        assert_eq!(sigma(&Element::one()), Element::one());
        // t^2 Q^{-1} -> q^{2-1} t^2 Q^{-1}
        let x = monomial(2, -1, QScalar::one());
        assert_eq!(sigma(&x), x.scale(&QScalar::q()));
        // sigma is invertible
        let f = monomial(3, -2, QScalar::q()).add(&monomial(-1, 4, QScalar::one()));
        assert_eq!(sigma_inv(&sigma(&f)), f);
    }

    #[test]
    fn theta1_examples() {
        assert_eq!(theta1(&t_gen()), Element::one());
        let q5 = monomial(0, 5, QScalar::one());
        assert!(theta1(&q5).is_zero());
        // theta1(t^2) = (1+q) t
        let t2 = monomial(2, 0, QScalar::one());
        assert_eq!(theta1(&t2), t_gen().scale(&qint(2)));
    }

    #[test]
    fn theta_examples() {
        let t2 = monomial(2, 0, QScalar::one());
        assert_eq!(theta(0, &t2), t2);
        assert_eq!(theta(2, &t2), Element::one());
        assert!(theta(3, &t2).is_zero());
    }

    #[test]
    fn theta_closed_agrees_with_iteration() {
        let f = monomial(3, -2, QScalar::q())
            .add(&monomial(-2, 1, QScalar::one()))
            .add(&monomial(0, 0, qint(2)));
        for m in 0..=4 {
            assert_eq!(theta(m, &f), theta_closed(m, &f), "m={m}");
        }
    }

    #[test]
    fn monomial_inverse_examples() {
        let q_inv = monomial_inverse(&q_gen()).unwrap();
        assert_eq!(q_inv, monomial(0, -1, QScalar::one()));
        let tq = t_gen().mul(&q_gen());
        let inv = monomial_inverse(&tq).unwrap();
        assert_eq!(inv, monomial(-1, -1, QScalar::q()));
        assert_eq!(tq.mul(&inv), Element::one());
        assert_eq!(inv.mul(&tq), Element::one());
        let not_mono = t_gen().add(&q_gen());
        assert_eq!(monomial_inverse(&not_mono), Err(TorusError::NotAMonomial));
        assert_eq!(
            monomial_inverse(&Element::zero()),
            Err(TorusError::NotAMonomial)
        );
    }

    #[test]
    fn pv_ring_membership() {
        assert!(in_pv_ring(&monomial(3, -2, QScalar::one())));
        assert!(!in_pv_ring(&monomial(-1, 0, QScalar::one())));
        assert!(in_pv_ring(&Element::zero()));
    }

    #[test]
    fn twisted_leibniz_on_sample() {
        let f = monomial(2, -1, QScalar::q()).add(&monomial(-1, 2, QScalar::one()));
        let g = monomial(1, 1, QScalar::one()).add(&monomial(0, -2, qint(3)));
        let lhs = theta1(&f.mul(&g));
        let rhs = theta1(&f).mul(&g).add(&sigma(&f).mul(&theta1(&g)));
        assert_eq!(lhs, rhs);
    }
}
