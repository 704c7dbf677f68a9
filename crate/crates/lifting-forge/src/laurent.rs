//! Laurent polynomials over exact rationals, with support intervals and
//! linear-phase symmetry classification.
//!
//! A filter is stored by its impulse response: the coefficient of `z^-n` is
//! the tap value `f(n)`, so positive indices are delays (the causal side) and
//! negative indices are advances. All arithmetic is exact — coefficients are
//! arbitrary-precision rationals and zero coefficients are never stored, so
//! structural equality is meaningful.
//!
//! Conventions used throughout the crate:
//!
//! * **support interval** `suppint(F) = [a, b]`: the first and last nonzero
//!   tap indices; the zero filter gets the distinguished [`SupportInterval::Empty`].
//! * **order**: `b - a`, defined only for nonzero filters.
//! * **support radius**: `floor((b - a + 1) / 2)` — half the tap span,
//!   rounded down. A 2-tap filter has radius 1, a 3-tap filter also 1.
//! * **symmetry**: a nonzero filter satisfying `F(1/z) = ± z^(2c) F(z)`
//!   (equivalently `f(2c - n) = ± f(n)`) is symmetric (`+`) or antisymmetric
//!   (`-`) about the axis `c = (a + b) / 2`, which the support endpoints force
//!   uniquely. Integer `c` is the *whole-sample* case, half-integer `c` the
//!   *half-sample* case.
//!
//! ```
//! use lifting_forge::laurent::{LaurentPoly, SupportInterval, SymmetryClass, ratio};
//!
//! // F(z) = z^2 + z + 1 + z^-1, a 4-tap filter symmetric about -1/2.
//! let f = LaurentPoly::from_terms((-2..=1).map(|n| (n, ratio(1, 1))));
//! assert_eq!(f.suppint(), SupportInterval::new(-2, 1));
//! assert_eq!(f.order().unwrap(), 3);
//! assert_eq!(f.supp_rad().unwrap(), 2);
//! assert_eq!(f.symmetry().unwrap(), SymmetryClass::Hs { twice_center: -1 });
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar used for every coefficient in the crate.
pub type Rational = BigRational;

// ---- Rational helpers ----

/// The rational `n`.
pub fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// The rational `num/den` in reduced form. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// True when the reduced denominator of `r` is a power of two (including 1).
///
/// Dyadic coefficients are what make a lifting step implementable with
/// integer-to-integer reversible arithmetic.
pub fn is_dyadic(r: &Rational) -> bool {
    let d = r.denom();
    // d > 0 in reduced form; d is a power of two iff d & (d - 1) == 0.
    ((d - BigInt::one()) & d).is_zero()
}

// ---- Support intervals ----

/// Closed integer interval of nonzero tap indices, or `Empty` for the zero
/// filter.
///
/// `Empty` is absorbing for the Minkowski sum (convolving with zero gives
/// zero) and an identity for `join` (adding zero changes nothing).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SupportInterval {
    /// Support of the zero filter.
    Empty,
    /// `[lo, hi]` with `lo <= hi`.
    Range { lo: i64, hi: i64 },
}

impl SupportInterval {
    /// The interval `[lo, hi]`. Panics unless `lo <= hi`.
    pub fn new(lo: i64, hi: i64) -> Self {
        assert!(lo <= hi, "interval endpoints out of order: [{lo}, {hi}]");
        SupportInterval::Range { lo, hi }
    }

    pub fn is_empty(self) -> bool {
        matches!(self, SupportInterval::Empty)
    }

    /// Left endpoint, if any.
    pub fn lo(self) -> Option<i64> {
        match self {
            SupportInterval::Empty => None,
            SupportInterval::Range { lo, .. } => Some(lo),
        }
    }

    /// Right endpoint, if any.
    pub fn hi(self) -> Option<i64> {
        match self {
            SupportInterval::Empty => None,
            SupportInterval::Range { hi, .. } => Some(hi),
        }
    }

    /// `hi - lo`, if nonempty.
    pub fn order(self) -> Option<i64> {
        match self {
            SupportInterval::Empty => None,
            SupportInterval::Range { lo, hi } => Some(hi - lo),
        }
    }

    /// Smallest interval containing both operands (`Empty` is the identity).
    pub fn join(self, other: Self) -> Self {
        match (self, other) {
            (SupportInterval::Empty, x) | (x, SupportInterval::Empty) => x,
            (SupportInterval::Range { lo: a, hi: b }, SupportInterval::Range { lo: c, hi: d }) => {
                SupportInterval::Range { lo: a.min(c), hi: b.max(d) }
            }
        }
    }

    /// Minkowski sum `[a+c, b+d]` (`Empty` is absorbing).
    pub fn minkowski_add(self, other: Self) -> Self {
        match (self, other) {
            (SupportInterval::Range { lo: a, hi: b }, SupportInterval::Range { lo: c, hi: d }) => {
                SupportInterval::Range { lo: a + c, hi: b + d }
            }
            _ => SupportInterval::Empty,
        }
    }

    /// `[2 lo, 2 hi]` — the support of `F(z^2)` given the support of `F(z)`.
    pub fn double(self) -> Self {
        match self {
            SupportInterval::Empty => SupportInterval::Empty,
            SupportInterval::Range { lo, hi } => SupportInterval::Range { lo: 2 * lo, hi: 2 * hi },
        }
    }

    /// Shift both endpoints by `k` — the support of `z^-k F(z)`.
    pub fn translate(self, k: i64) -> Self {
        match self {
            SupportInterval::Empty => SupportInterval::Empty,
            SupportInterval::Range { lo, hi } => SupportInterval::Range { lo: lo + k, hi: hi + k },
        }
    }

    /// `other ⊆ self` (the empty interval is contained in everything).
    pub fn contains(self, other: Self) -> bool {
        match (other, self) {
            (SupportInterval::Empty, _) => true,
            (_, SupportInterval::Empty) => false,
            (SupportInterval::Range { lo: c, hi: d }, SupportInterval::Range { lo: a, hi: b }) => {
                a <= c && d <= b
            }
        }
    }

    /// `other ⊊ self`: containment with `other != self`.
    pub fn properly_contains(self, other: Self) -> bool {
        self.contains(other) && self != other
    }

    /// `other ⊆ [lo+1, hi-1]`, the strict interior of `self`.
    ///
    /// This is the hypothesis of the covering rule: a perturbation supported
    /// strictly inside an interval cannot move its endpoints, so
    /// `suppint(f + g) = suppint(f)` whenever
    /// `suppint(g) ⊆ interior(suppint(f))`. The empty interval counts as
    /// inside anything.
    pub fn interior_contains(self, other: Self) -> bool {
        match (other, self) {
            (SupportInterval::Empty, _) => true,
            (_, SupportInterval::Empty) => false,
            (SupportInterval::Range { lo: c, hi: d }, SupportInterval::Range { lo: a, hi: b }) => {
                a < c && d < b
            }
        }
    }
}

impl fmt::Display for SupportInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SupportInterval::Empty => write!(f, "(empty)"),
            SupportInterval::Range { lo, hi } => write!(f, "[{lo}, {hi}]"),
        }
    }
}

// ---- Symmetry classification ----

/// Linear-phase symmetry of a nonzero filter, `f(2c - n) = ± f(n)`.
///
/// Half-integer axes are stored as `twice_center = 2c` (an odd integer) to
/// stay in exact integer arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SymmetryClass {
    /// Whole-sample symmetric: odd tap count, symmetric about integer `center`.
    Ws { center: i64 },
    /// Half-sample symmetric: even tap count, symmetric about `twice_center / 2`.
    Hs { twice_center: i64 },
    /// Whole-sample antisymmetric about integer `center` (the center tap is 0).
    Wa { center: i64 },
    /// Half-sample antisymmetric about `twice_center / 2`.
    Ha { twice_center: i64 },
    /// No linear-phase symmetry.
    Asymmetric,
}

impl fmt::Display for SymmetryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymmetryClass::Ws { center } => write!(f, "WS(center {center})"),
            SymmetryClass::Hs { twice_center } => write!(f, "HS(center {twice_center}/2)"),
            SymmetryClass::Wa { center } => write!(f, "WA(center {center})"),
            SymmetryClass::Ha { twice_center } => write!(f, "HA(center {twice_center}/2)"),
            SymmetryClass::Asymmetric => write!(f, "asymmetric"),
        }
    }
}

// ---- Laurent polynomials ----

/// A Laurent polynomial `F(z) = Σ f(n) z^-n` with exact rational taps.
///
/// Canonical form: the map never stores a zero coefficient, so `==` is exact
/// mathematical equality and the support endpoints are the first/last keys.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rational>,
}

impl LaurentPoly {
    /// The zero filter.
    pub fn zero() -> Self {
        LaurentPoly { terms: BTreeMap::new() }
    }

    /// The constant filter 1.
    pub fn one() -> Self {
        LaurentPoly::constant(Rational::one())
    }

    /// The constant filter `c`.
    pub fn constant(c: Rational) -> Self {
        LaurentPoly::monomial(0, c)
    }

    /// The single-tap filter `c z^-n`.
    pub fn monomial(n: i64, c: Rational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(n, c);
        }
        LaurentPoly { terms }
    }

    /// Sum arbitrary `(tap index, coefficient)` pairs into canonical form;
    /// duplicate indices accumulate, zero totals are dropped.
    pub fn from_terms<I: IntoIterator<Item = (i64, Rational)>>(iter: I) -> Self {
        let mut terms: BTreeMap<i64, Rational> = BTreeMap::new();
        for (n, c) in iter {
            if c.is_zero() {
                continue;
            }
            let entry = terms.entry(n).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(&n);
            }
        }
        LaurentPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Tap value `f(n)` (zero when absent).
    pub fn coeff(&self, n: i64) -> Rational {
        self.terms.get(&n).cloned().unwrap_or_else(Rational::zero)
    }

    /// Nonzero taps in ascending index order.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &Rational)> + '_ {
        self.terms.iter().map(|(&n, c)| (n, c))
    }

    /// Number of nonzero taps.
    pub fn num_taps(&self) -> usize {
        self.terms.len()
    }

    /// Support interval `[first nonzero tap, last nonzero tap]`.
    pub fn suppint(&self) -> SupportInterval {
        match (self.terms.keys().next(), self.terms.keys().next_back()) {
            (Some(&lo), Some(&hi)) => SupportInterval::Range { lo, hi },
            _ => SupportInterval::Empty,
        }
    }

    /// Filter order `b - a`; undefined for the zero filter.
    pub fn order(&self) -> Result<i64> {
        self.suppint().order().ok_or(Error::ZeroFilter)
    }

    /// Support radius `floor((b - a + 1) / 2)`; undefined for the zero filter.
    pub fn supp_rad(&self) -> Result<i64> {
        self.order().map(|ord| (ord + 1) / 2)
    }

    /// `c · F(z)`.
    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { terms: self.terms.iter().map(|(&n, v)| (n, v * c)).collect() }
    }

    /// `z^-k F(z)`: delay every tap by `k` samples (negative `k` advances).
    pub fn delay(&self, k: i64) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&n, v)| (n + k, v.clone())).collect() }
    }

    /// `F(z^2)`: spread the taps onto even indices.
    pub fn upsample(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&n, v)| (2 * n, v.clone())).collect() }
    }

    /// `F(1/z)`: time-reverse the taps.
    pub fn reflect(&self) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&n, v)| (-n, v.clone())).collect() }
    }

    /// `F(1)`, the sum of the taps (the DC value of the filter).
    pub fn eval_at_one(&self) -> Rational {
        self.terms.values().fold(Rational::zero(), |acc, c| acc + c)
    }

    /// True when every tap is a dyadic rational.
    pub fn is_dyadic(&self) -> bool {
        self.terms.values().all(is_dyadic)
    }

    /// Classify the linear-phase symmetry of a nonzero filter.
    ///
    /// The axis is forced: matching endpoints require `2c = a + b`, so the
    /// check is a single pass comparing each tap against its mirror image.
    pub fn symmetry(&self) -> Result<SymmetryClass> {
        let (a, b) = match self.suppint() {
            SupportInterval::Range { lo, hi } => (lo, hi),
            SupportInterval::Empty => return Err(Error::ZeroFilter),
        };
        let twice_center = a + b;
        let mut symmetric = true;
        let mut antisymmetric = true;
        for (n, c) in self.iter() {
            let mirror = self.coeff(twice_center - n);
            if mirror != *c {
                symmetric = false;
            }
            if mirror != -c {
                antisymmetric = false;
            }
            if !symmetric && !antisymmetric {
                return Ok(SymmetryClass::Asymmetric);
            }
        }
        // A nonzero filter cannot be both; symmetric wins the tie vacuously.
        Ok(if symmetric {
            if twice_center % 2 == 0 {
                SymmetryClass::Ws { center: twice_center / 2 }
            } else {
                SymmetryClass::Hs { twice_center }
            }
        } else if twice_center % 2 == 0 {
            SymmetryClass::Wa { center: twice_center / 2 }
        } else {
            SymmetryClass::Ha { twice_center }
        })
    }
}

// ---- Arithmetic ----

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.terms
                .iter()
                .map(|(&n, c)| (n, c.clone()))
                .chain(rhs.terms.iter().map(|(&n, c)| (n, c.clone()))),
        )
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.terms
                .iter()
                .map(|(&n, c)| (n, c.clone()))
                .chain(rhs.terms.iter().map(|(&n, c)| (n, -c))),
        )
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(&n, c)| (n, -c)).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut acc: BTreeMap<i64, Rational> = BTreeMap::new();
        for (n, c) in self.terms.iter() {
            for (m, d) in rhs.terms.iter() {
                let entry = acc.entry(n + m).or_insert_with(Rational::zero);
                *entry += c * d;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        LaurentPoly { terms: acc }
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Display for LaurentPoly {
    /// Renders in descending powers of `z`, e.g. `z^4 + 2 z^2 + 3 + z^-4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (n, c) in self.iter() {
            let power = -n;
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if power == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag} ")?;
                }
                if power == 1 {
                    write!(f, "z")?;
                } else {
                    write!(f, "z^{power}")?;
                }
            }
        }
        Ok(())
    }
}
