//! Polyphase-with-advance representation of filters and two-channel banks.
//!
//! A scalar filter splits into even and odd phases via
//! `F(z) = F0(z^2) + z F1(z^2)`, i.e. component samples `e_j(k) = e(2k - j)`:
//! the even phase collects taps at even indices, the odd phase the taps at
//! odd indices, with the *advance* convention placing `e(-1)` at phase-1
//! index 0. A two-channel analysis bank is the 2x2 matrix whose row `i` is
//! the polyphase vector of scalar filter `H_i`.
//!
//! Support intervals lift componentwise by joins: the suppint of a vector is
//! the join of its two component suppints, and the suppint of a matrix is the
//! join over its rows. The matrix **order** (span of that join) is the
//! quantity that strictly grows along an order-increasing lifting cascade.
//!
//! ```
//! use lifting_forge::laurent::{LaurentPoly, ratio};
//! use lifting_forge::polyphase::{analyze, PolyMatrix};
//!
//! // The 2-tap/2-tap reversible pair ((z+1)/2, z-1) in polyphase form.
//! let h0 = LaurentPoly::from_terms([(-1, ratio(1, 2)), (0, ratio(1, 2))]);
//! let h1 = LaurentPoly::from_terms([(-1, ratio(1, 1)), (0, ratio(-1, 1))]);
//! let bank = PolyMatrix::from_scalars(&h0, &h1);
//! assert_eq!(bank.det(), LaurentPoly::one());
//! assert_eq!(analyze(&h0).f0, LaurentPoly::constant(ratio(1, 2)));
//! ```

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Rational, SupportInterval};

// ---- Vectors ----

/// A polyphase pair `(F0, F1)` for one scalar filter (one bank row).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PolyVector {
    /// Even-phase component `F0`.
    pub f0: LaurentPoly,
    /// Odd-phase component `F1`.
    pub f1: LaurentPoly,
}

impl PolyVector {
    pub fn new(f0: LaurentPoly, f1: LaurentPoly) -> Self {
        PolyVector { f0, f1 }
    }

    /// Join of the component support intervals.
    pub fn suppint(&self) -> SupportInterval {
        self.f0.suppint().join(self.f1.suppint())
    }

    /// Span of the joined support, if nonempty.
    pub fn order(&self) -> Option<i64> {
        self.suppint().order()
    }
}

/// Split a scalar filter into its polyphase pair: `e_j(k) = e(2k - j)`.
pub fn analyze(f: &LaurentPoly) -> PolyVector {
    let mut even = Vec::new();
    let mut odd = Vec::new();
    for (n, c) in f.iter() {
        if n.rem_euclid(2) == 0 {
            even.push((n / 2, c.clone()));
        } else {
            odd.push(((n + 1) / 2, c.clone()));
        }
    }
    PolyVector::new(LaurentPoly::from_terms(even), LaurentPoly::from_terms(odd))
}

/// Reassemble the scalar filter: `F(z) = F0(z^2) + z F1(z^2)`.
pub fn synthesize(v: &PolyVector) -> LaurentPoly {
    let even = v.f0.iter().map(|(k, c)| (2 * k, c.clone()));
    let odd = v.f1.iter().map(|(k, c)| (2 * k - 1, c.clone()));
    LaurentPoly::from_terms(even.chain(odd))
}

// ---- Matrices ----

/// A 2x2 Laurent-polynomial matrix; row `i` is the polyphase vector of the
/// scalar filter `H_i` of a two-channel analysis bank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    entries: [[LaurentPoly; 2]; 2],
}

impl PolyMatrix {
    pub fn new(entries: [[LaurentPoly; 2]; 2]) -> Self {
        PolyMatrix { entries }
    }

    /// The identity matrix (the polyphase form of the lazy bank `(1, z)`).
    pub fn identity() -> Self {
        PolyMatrix::diagonal(LaurentPoly::one(), LaurentPoly::one())
    }

    pub fn diagonal(d0: LaurentPoly, d1: LaurentPoly) -> Self {
        PolyMatrix::new([
            [d0, LaurentPoly::zero()],
            [LaurentPoly::zero(), d1],
        ])
    }

    /// The gain matrix `diag(1/K, K)`. Fails on `K = 0`.
    pub fn gain(k: &Rational) -> Result<Self> {
        use num::Zero;
        if k.is_zero() {
            return Err(Error::ZeroScale);
        }
        Ok(PolyMatrix::diagonal(
            LaurentPoly::constant(k.recip()),
            LaurentPoly::constant(k.clone()),
        ))
    }

    /// Entry `(i, j)`, indices in `{0, 1}`.
    pub fn entry(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i][j]
    }

    /// Row `i` as a polyphase vector (cloned).
    pub fn row(&self, i: usize) -> PolyVector {
        PolyVector::new(self.entries[i][0].clone(), self.entries[i][1].clone())
    }

    /// Join of the two entry suppints in row `i`.
    pub fn row_suppint(&self, i: usize) -> SupportInterval {
        self.entries[i][0].suppint().join(self.entries[i][1].suppint())
    }

    /// Join of all four entry suppints.
    pub fn suppint(&self) -> SupportInterval {
        self.row_suppint(0).join(self.row_suppint(1))
    }

    /// Span of the joined support, if nonempty. This is the matrix order that
    /// an order-increasing cascade grows stage by stage.
    pub fn order(&self) -> Option<i64> {
        self.suppint().order()
    }

    /// Matrix-vector action (rows dot the column vector).
    pub fn apply(&self, v: &PolyVector) -> PolyVector {
        PolyVector::new(
            &(&self.entries[0][0] * &v.f0) + &(&self.entries[0][1] * &v.f1),
            &(&self.entries[1][0] * &v.f0) + &(&self.entries[1][1] * &v.f1),
        )
    }

    /// Determinant `AD - BC`.
    pub fn det(&self) -> LaurentPoly {
        &(&self.entries[0][0] * &self.entries[1][1])
            - &(&self.entries[0][1] * &self.entries[1][0])
    }

    /// Adjugate `[[D, -B], [-C, A]]`, satisfying `M * adj(M) = det(M) * I`;
    /// for `det = 1` this is the exact inverse.
    pub fn adjugate(&self) -> Self {
        PolyMatrix::new([
            [self.entries[1][1].clone(), -&self.entries[0][1]],
            [-&self.entries[1][0], self.entries[0][0].clone()],
        ])
    }

    /// Scale row 0 by `r0` and row 1 by `r1` (left-multiplication by
    /// `diag(r0, r1)`).
    pub fn scale_rows(&self, r0: &Rational, r1: &Rational) -> Self {
        PolyMatrix::new([
            [self.entries[0][0].scale(r0), self.entries[0][1].scale(r0)],
            [self.entries[1][0].scale(r1), self.entries[1][1].scale(r1)],
        ])
    }

    /// The scalar filter pair `(H0, H1)` this matrix represents.
    pub fn scalar_filters(&self) -> (LaurentPoly, LaurentPoly) {
        (synthesize(&self.row(0)), synthesize(&self.row(1)))
    }

    /// Build the polyphase matrix of the bank with scalar filters `(h0, h1)`.
    pub fn from_scalars(h0: &LaurentPoly, h1: &LaurentPoly) -> Self {
        let r0 = analyze(h0);
        let r1 = analyze(h1);
        PolyMatrix::new([[r0.f0, r0.f1], [r1.f0, r1.f1]])
    }
}

impl Mul for &PolyMatrix {
    type Output = PolyMatrix;
    fn mul(self, rhs: &PolyMatrix) -> PolyMatrix {
        let e = |i: usize, j: usize| -> LaurentPoly {
            &(&self.entries[i][0] * &rhs.entries[0][j])
                + &(&self.entries[i][1] * &rhs.entries[1][j])
        };
        PolyMatrix::new([[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]])
    }
}

impl Mul for PolyMatrix {
    type Output = PolyMatrix;
    fn mul(self, rhs: PolyMatrix) -> PolyMatrix {
        &self * &rhs
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[ {} | {} ]", self.entries[0][0], self.entries[0][1])?;
        write!(f, "[ {} | {} ]", self.entries[1][0], self.entries[1][1])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{rat, ratio};
    use proptest::prelude::*;

    fn lp(terms: &[(i64, i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(n, p, q)| (n, ratio(p, q))))
    }

    /// 7-tap filter z^4 + z^2 + z + 1 + z^-2 used to pin the phase-split
    /// convention.
    fn seven_tap() -> LaurentPoly {
        lp(&[(-4, 1, 1), (-2, 1, 1), (-1, 1, 1), (0, 1, 1), (2, 1, 1)])
    }

    fn haar_bank() -> PolyMatrix {
        let h0 = lp(&[(-1, 1, 2), (0, 1, 2)]);
        let h1 = lp(&[(-1, 1, 1), (0, -1, 1)]);
        PolyMatrix::from_scalars(&h0, &h1)
    }

    #[test]
    fn analyze_uses_the_advance_convention() {
        // even taps of z^4+z^2+z+1+z^-2 land at phase-0 indices -2..=1,
        // the lone odd tap e(-1) lands at phase-1 index 0
        let v = analyze(&seven_tap());
        assert_eq!(v.f0, lp(&[(-2, 1, 1), (-1, 1, 1), (0, 1, 1), (1, 1, 1)]));
        assert_eq!(v.f1, LaurentPoly::one());
        assert_eq!(v.suppint(), SupportInterval::new(-2, 1));
        assert_eq!(v.order(), Some(3));
    }

    #[test]
    fn lazy_bank_is_the_identity_matrix() {
        let (b0, b1) = PolyMatrix::identity().scalar_filters();
        assert_eq!(b0, LaurentPoly::one());
        assert_eq!(b1, LaurentPoly::monomial(-1, rat(1)));
        assert_eq!(
            PolyMatrix::from_scalars(&b0, &b1),
            PolyMatrix::identity()
        );
    }

    #[test]
    fn haar_polyphase_matrix_and_determinant() {
        let bank = haar_bank();
        assert_eq!(*bank.entry(0, 0), LaurentPoly::constant(ratio(1, 2)));
        assert_eq!(*bank.entry(0, 1), LaurentPoly::constant(ratio(1, 2)));
        assert_eq!(*bank.entry(1, 0), LaurentPoly::constant(rat(-1)));
        assert_eq!(*bank.entry(1, 1), LaurentPoly::one());
        assert_eq!(bank.det(), LaurentPoly::one());
    }

    #[test]
    fn matrix_suppint_joins_rows() {
        let m = PolyMatrix::new([
            [lp(&[(0, 1, 1), (2, 1, 1)]), LaurentPoly::zero()],
            [lp(&[(-3, 1, 1)]), LaurentPoly::one()],
        ]);
        assert_eq!(m.row_suppint(0), SupportInterval::new(0, 2));
        assert_eq!(m.row_suppint(1), SupportInterval::new(-3, 0));
        assert_eq!(m.suppint(), SupportInterval::new(-3, 2));
        assert_eq!(m.order(), Some(5));
    }

    #[test]
    fn gain_matrix_requires_nonzero_gain() {
        let g = PolyMatrix::gain(&rat(3)).unwrap();
        assert_eq!(*g.entry(0, 0), LaurentPoly::constant(ratio(1, 3)));
        assert_eq!(*g.entry(1, 1), LaurentPoly::constant(rat(3)));
        assert_eq!(PolyMatrix::gain(&rat(0)), Err(Error::ZeroScale));
    }

    // ---- Property tests ----

    prop_compose! {
        fn arb_poly()(terms in prop::collection::vec((-4i64..=4, -9i64..=9, 1i64..=9), 0..6)) -> LaurentPoly {
            LaurentPoly::from_terms(terms.into_iter().map(|(n, p, q)| (n, ratio(p, q))))
        }
    }

    prop_compose! {
        fn arb_matrix()(a in arb_poly(), b in arb_poly(), c in arb_poly(), d in arb_poly()) -> PolyMatrix {
            PolyMatrix::new([[a, b], [c, d]])
        }
    }

    proptest! {
        #[test]
        fn analyze_synthesize_round_trip(f in arb_poly()) {
            prop_assert_eq!(synthesize(&analyze(&f)), f);
        }

        #[test]
        fn synthesize_analyze_round_trip(f0 in arb_poly(), f1 in arb_poly()) {
            let v = PolyVector::new(f0, f1);
            prop_assert_eq!(analyze(&synthesize(&v)), v);
        }

        #[test]
        fn scalar_filters_invert_from_scalars(h0 in arb_poly(), h1 in arb_poly()) {
            let bank = PolyMatrix::from_scalars(&h0, &h1);
            let (g0, g1) = bank.scalar_filters();
            prop_assert_eq!(g0, h0);
            prop_assert_eq!(g1, h1);
        }

        #[test]
        fn determinant_is_multiplicative(a in arb_matrix(), b in arb_matrix()) {
            prop_assert_eq!((&a * &b).det(), &a.det() * &b.det());
        }

        #[test]
        fn adjugate_gives_det_times_identity(a in arb_matrix()) {
            let prod = &a * &a.adjugate();
            let d = a.det();
            prop_assert_eq!(prod.entry(0, 0), &d);
            prop_assert_eq!(prod.entry(1, 1), &d);
            prop_assert!(prod.entry(0, 1).is_zero());
            prop_assert!(prod.entry(1, 0).is_zero());
        }

        #[test]
        fn matrix_action_is_associative(a in arb_matrix(), b in arb_matrix(), f0 in arb_poly(), f1 in arb_poly()) {
            let v = PolyVector::new(f0, f1);
            prop_assert_eq!((&a * &b).apply(&v), a.apply(&b.apply(&v)));
        }
    }
}
