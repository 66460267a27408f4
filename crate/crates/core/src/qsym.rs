//! Quasisymmetric function expressions with exact rational coefficients.
//!
//! An expression is a sparse map from compositions to rationals tagged with a
//! basis: monomial `M_α`, quasisymmetric power sum `Ψ_α`, or the unnormalized
//! power sum `ψ̂_α = Ψ_α / z_α`. The monomial basis is the comparison basis.

use alloc::collections::btree_map::{self, BTreeMap};
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::compositions::{pi, rearrangements, Composition, Partition};
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Basis {
    Monomial,
    Psi,
    PsiHat,
}

impl Basis {
    /// Short tag used in file formats: `M`, `Psi` or `PsiHat`.
    pub fn tag(self) -> &'static str {
        match self {
            Basis::Monomial => "M",
            Basis::Psi => "Psi",
            Basis::PsiHat => "PsiHat",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Basis> {
        match tag {
            "M" => Some(Basis::Monomial),
            "Psi" => Some(Basis::Psi),
            "PsiHat" => Some(Basis::PsiHat),
            _ => None,
        }
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QsymExpr {
    basis: Basis,
    terms: BTreeMap<Composition, Rational>,
}

impl QsymExpr {
    pub fn zero(basis: Basis) -> Self {
        QsymExpr {
            basis,
            terms: BTreeMap::new(),
        }
    }

    /// A single basis element with coefficient one.
    pub fn basis_element(basis: Basis, alpha: Composition) -> Self {
        let mut e = Self::zero(basis);
        e.add_term(alpha, Rational::one());
        e
    }

    pub fn from_terms<I>(basis: Basis, terms: I) -> Self
    where
        I: IntoIterator<Item = (Composition, Rational)>,
    {
        let mut e = Self::zero(basis);
        for (alpha, c) in terms {
            e.add_term(alpha, c);
        }
        e
    }

    /// Builds an expression from integer coefficients.
    pub fn from_integer_terms<I>(basis: Basis, terms: I) -> Self
    where
        I: IntoIterator<Item = (Composition, BigInt)>,
    {
        Self::from_terms(
            basis,
            terms
                .into_iter()
                .map(|(a, c)| (a, Rational::from_integer(c))),
        )
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    /// Adds `c` to the coefficient of `alpha`, dropping the entry if it
    /// cancels to zero.
    pub fn add_term(&mut self, alpha: Composition, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn coefficient(&self, alpha: &Composition) -> Rational {
        self.terms
            .get(alpha)
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> btree_map::Iter<'_, Composition, Rational> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common weight of all keys, if the expression is nonzero and
    /// homogeneous.
    pub fn degree(&self) -> Option<u32> {
        let mut keys = self.terms.keys().map(Composition::weight);
        let first = keys.next()?;
        keys.all(|w| w == first).then_some(first)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_terms(
            self.basis,
            self.terms.iter().map(|(a, v)| (a.clone(), v * c)),
        )
    }

    /// Rewrites the expression in the monomial basis.
    pub fn to_monomial(&self) -> QsymExpr {
        match self.basis {
            Basis::Monomial => self.clone(),
            Basis::Psi | Basis::PsiHat => psi_to_monomial(self),
        }
    }

    /// Rewrites the expression in any basis. Power sum expansions of monomial
    /// expressions are found by triangular inversion.
    pub fn to_basis(&self, basis: Basis) -> QsymExpr {
        if basis == self.basis {
            return self.clone();
        }
        match (self.basis, basis) {
            (_, Basis::Monomial) => self.to_monomial(),
            (Basis::PsiHat, Basis::Psi) => self.rescale_by_z(false),
            (Basis::Psi, Basis::PsiHat) => self.rescale_by_z(true),
            (Basis::Monomial, Basis::PsiHat) => monomial_to_psi_hat(self),
            (Basis::Monomial, Basis::Psi) => monomial_to_psi_hat(self).rescale_by_z(false),
            _ => unreachable!(),
        }
    }

    // ψ̂_α = Ψ_α / z_α, so a ψ̂ coefficient c is a Ψ coefficient c / z_α.
    fn rescale_by_z(&self, multiply: bool) -> QsymExpr {
        let target = if multiply { Basis::PsiHat } else { Basis::Psi };
        Self::from_terms(
            target,
            self.terms.iter().map(|(a, c)| {
                let z = Rational::from_integer(BigInt::from(a.z()));
                let v = if multiply { c * z } else { c / z };
                (a.clone(), v)
            }),
        )
    }

    /// Adds another expression in the same basis.
    ///
    /// # Panics
    ///
    /// If the bases differ.
    pub fn add_expr(&mut self, other: &QsymExpr) {
        assert_eq!(
            self.basis, other.basis,
            "adding expressions in different bases"
        );
        for (a, c) in &other.terms {
            self.add_term(a.clone(), c.clone());
        }
    }
}

impl Add for &QsymExpr {
    type Output = QsymExpr;

    fn add(self, rhs: &QsymExpr) -> QsymExpr {
        let mut out = self.clone();
        out.add_expr(rhs);
        out
    }
}

impl Neg for &QsymExpr {
    type Output = QsymExpr;

    fn neg(self) -> QsymExpr {
        self.scale(&-Rational::one())
    }
}

impl Sub for &QsymExpr {
    type Output = QsymExpr;

    fn sub(self, rhs: &QsymExpr) -> QsymExpr {
        self + &(-rhs)
    }
}

impl fmt::Display for QsymExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (a, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})*{}[{a}]", self.basis)?;
        }
        Ok(())
    }
}

/// Expands `Ψ_α = z_α Σ_{β ≥ α} M_β / π(α, β)` (without the `z_α` for `ψ̂_α`)
/// term by term.
pub fn psi_to_monomial(expr: &QsymExpr) -> QsymExpr {
    let normalized = match expr.basis {
        Basis::Monomial => return expr.clone(),
        Basis::Psi => true,
        Basis::PsiHat => false,
    };
    let mut out = QsymExpr::zero(Basis::Monomial);
    for (alpha, c) in &expr.terms {
        let lead = if normalized {
            c * Rational::from_integer(BigInt::from(alpha.z()))
        } else {
            c.clone()
        };
        for beta in alpha.coarsenings() {
            let p = BigInt::from(pi(alpha, &beta).expect("coarsening is refined"));
            out.add_term(beta, &lead / Rational::from_integer(p));
        }
    }
    out
}

/// Inverse of [`psi_to_monomial`] for the `ψ̂` basis.
///
/// `ψ̂_γ` has leading monomial `M_γ / π(γ, γ)` and every other monomial in it
/// is a strict coarsening of `γ`, so peeling off the longest index first
/// terminates.
pub fn monomial_to_psi_hat(expr: &QsymExpr) -> QsymExpr {
    let mut rest = expr.to_monomial();
    let mut out = QsymExpr::zero(Basis::PsiHat);
    while let Some(gamma) = rest.terms.keys().max_by_key(|k| k.len()).cloned() {
        let c = rest.coefficient(&gamma);
        let lead = Rational::from_integer(BigInt::from(pi(&gamma, &gamma).unwrap()));
        let coeff = c * lead;
        let piece = psi_to_monomial(&QsymExpr::from_terms(
            Basis::PsiHat,
            [(gamma.clone(), coeff.clone())],
        ));
        rest = &rest - &piece;
        debug_assert!(rest.coefficient(&gamma).is_zero());
        out.add_term(gamma, coeff);
    }
    out
}

/// The power sum symmetric function `p_μ = Σ_{α ~ μ} Ψ_α`.
pub fn power_sum_symmetric(mu: &Partition) -> QsymExpr {
    QsymExpr::from_terms(
        Basis::Psi,
        rearrangements(mu).into_iter().map(|a| (a, Rational::one())),
    )
}

/// Evaluates `expr` at `x = point` (all further variables zero).
///
/// `M_α` becomes the sum over increasing index tuples of `Π x_{i_j}^{α_j}`,
/// computed by a prefix dynamic program.
pub fn evaluate(expr: &QsymExpr, point: &[Rational]) -> Rational {
    let m = expr.to_monomial();
    let mut total = Rational::zero();
    for (alpha, c) in &m.terms {
        total += c * monomial_at(alpha, point);
    }
    total
}

fn monomial_at(alpha: &Composition, point: &[Rational]) -> Rational {
    let parts = alpha.parts();
    if parts.len() > point.len() {
        return Rational::zero();
    }
    // row[i] = sum over increasing tuples of the first j parts using x_1..x_i
    let mut row: Vec<Rational> = alloc::vec![Rational::one(); point.len() + 1];
    for &p in parts {
        let mut next = alloc::vec![Rational::zero(); point.len() + 1];
        for i in 1..=point.len() {
            let here = &row[i - 1] * pow(&point[i - 1], p);
            next[i] = &next[i - 1] + here;
        }
        row = next;
    }
    row[point.len()].clone()
}

fn pow(x: &Rational, e: u32) -> Rational {
    num_traits::pow(x.clone(), e as usize)
}

/// True iff both expressions denote the same quasisymmetric function.
pub fn equals(a: &QsymExpr, b: &QsymExpr) -> bool {
    a.to_monomial().terms == b.to_monomial().terms
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(s: &str) -> Composition {
        s.parse().unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn psi_examples() {
        let e = psi_to_monomial(&QsymExpr::basis_element(Basis::Psi, c("2")));
        assert_eq!(
            e,
            QsymExpr::from_terms(Basis::Monomial, [(c("2"), r(1, 1))])
        );

        let e = psi_to_monomial(&QsymExpr::basis_element(Basis::Psi, c("1,1")));
        let want = QsymExpr::from_terms(Basis::Monomial, [(c("1,1"), r(2, 1)), (c("2"), r(1, 1))]);
        assert_eq!(e, want);

        let e = psi_to_monomial(&QsymExpr::basis_element(Basis::PsiHat, c("1,1")));
        let want = QsymExpr::from_terms(Basis::Monomial, [(c("1,1"), r(1, 1)), (c("2"), r(1, 2))]);
        assert_eq!(e, want);
    }

    #[test]
    fn power_sums() {
        let p = |s: &str| s.parse::<Partition>().unwrap();
        assert_eq!(
            power_sum_symmetric(&p("2")),
            QsymExpr::basis_element(Basis::Psi, c("2"))
        );
        assert_eq!(power_sum_symmetric(&p("2,1")).len(), 2);
        let m = power_sum_symmetric(&p("1,1")).to_monomial();
        assert_eq!(
            m,
            QsymExpr::from_terms(Basis::Monomial, [(c("1,1"), r(2, 1)), (c("2"), r(1, 1))])
        );
        // p_(1,1) = (M_1)^2 pointwise
        let pt = vec![r(2, 3), r(-1, 5), r(7, 2)];
        let m1 = evaluate(&QsymExpr::basis_element(Basis::Monomial, c("1")), &pt);
        assert_eq!(evaluate(&m, &pt), &m1 * &m1);
    }

    #[test]
    fn evaluate_examples() {
        let ones = vec![r(1, 1), r(1, 1)];
        assert_eq!(
            evaluate(&QsymExpr::basis_element(Basis::Monomial, c("2")), &ones),
            r(2, 1)
        );
        assert_eq!(
            evaluate(&QsymExpr::basis_element(Basis::Monomial, c("1,1")), &ones),
            r(1, 1)
        );
        let zeros = vec![r(0, 1); 3];
        let e = psi_to_monomial(&QsymExpr::basis_element(Basis::Psi, c("2,1")));
        assert_eq!(evaluate(&e, &zeros), r(0, 1));
        // more parts than variables vanish
        assert_eq!(
            evaluate(&QsymExpr::basis_element(Basis::Monomial, c("1,1,1")), &ones),
            r(0, 1)
        );
    }

    #[test]
    fn equality() {
        let psi = QsymExpr::basis_element(Basis::Psi, c("1,1"));
        assert!(equals(&psi, &psi.to_monomial()));
        assert!(!equals(
            &QsymExpr::basis_element(Basis::Monomial, c("2")),
            &QsymExpr::basis_element(Basis::Monomial, c("1,1"))
        ));
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let mut e = QsymExpr::basis_element(Basis::Monomial, c("2"));
        e.add_term(c("2"), r(-1, 1));
        assert!(e.is_zero());
        e.add_term(c("1"), r(0, 1));
        assert!(e.is_zero());
        assert_eq!(e.degree(), None);
    }

    #[test]
    fn single_part_hat_coefficient() {
        for n in 1..=8u32 {
            let e = psi_to_monomial(&QsymExpr::basis_element(
                Basis::PsiHat,
                Composition::single(n).unwrap(),
            ));
            assert_eq!(
                e.coefficient(&Composition::single(n).unwrap()),
                r(1, n as i64)
            );
        }
    }

    #[test]
    fn inversion_round_trip() {
        let m = QsymExpr::from_terms(Basis::Monomial, [(c("1,1"), r(2, 1)), (c("2"), r(1, 1))]);
        let hat = monomial_to_psi_hat(&m);
        assert_eq!(hat.basis(), Basis::PsiHat);
        assert!(equals(&hat, &m));
        // 2M_11 + M_2 = 2 ψ̂_11  (ψ̂_11 = M_11 + M_2/2)
        assert_eq!(
            hat,
            QsymExpr::from_terms(Basis::PsiHat, [(c("1,1"), r(2, 1))])
        );
        let psi = m.to_basis(Basis::Psi);
        assert!(equals(&psi, &m));
        assert_eq!(psi.to_basis(Basis::PsiHat), hat);
    }
}
