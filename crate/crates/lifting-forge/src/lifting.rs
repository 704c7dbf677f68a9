//! Lifting steps, cascades, intermediate traces, and exact signal transforms.
//!
//! A lifting step updates one polyphase channel from the other through a
//! nonzero filter `S`:
//!
//! * update characteristic `m = 0` (upper): `[[1, S], [0, 1]]` — lowpass
//!   channel updated from the highpass channel;
//! * update characteristic `m = 1` (lower): `[[1, 0], [S, 1]]` — highpass
//!   updated from the lowpass.
//!
//! A [`Cascade`] is a gain `K != 0`, an ordered list of steps (first applied
//! first), and a base matrix `B`; it evaluates to
//! `H(z) = diag(1/K, K) · S_{N-1}(z) ⋯ S_0(z) · B(z)`.
//!
//! The [`IntermediateTrace`] records the partial products
//! `E^(-1) = B`, `E^(n) = S_n E^(n-1)` (gain excluded) together with their
//! scalar filter pairs, which obey the one-channel-at-a-time recursion
//! `E_m^(n)(z) = E_m^(n-1)(z) + S_n(z^2) E_{1-m}^(n-1)(z)` with the
//! complementary filter unchanged. A cascade is *irreducible* when
//! consecutive steps strictly alternate channels, and *order-increasing* when
//! the matrix order of `E^(n)` strictly grows with every stage.

use std::fmt;

use num::Zero;

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Rational, SupportInterval};
use crate::polyphase::{analyze, synthesize, PolyMatrix, PolyVector};

// ---- Update characteristic ----

/// Which channel a lifting step updates: `Upper` is `m = 0` (lowpass updated),
/// `Lower` is `m = 1` (highpass updated).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum UpdateChar {
    Upper,
    Lower,
}

impl UpdateChar {
    /// Row index of the updated channel: 0 for upper, 1 for lower.
    pub fn index(self) -> usize {
        match self {
            UpdateChar::Upper => 0,
            UpdateChar::Lower => 1,
        }
    }

    /// The complementary characteristic.
    pub fn flip(self) -> Self {
        match self {
            UpdateChar::Upper => UpdateChar::Lower,
            UpdateChar::Lower => UpdateChar::Upper,
        }
    }

    /// Parse the numeric form `0 | 1`.
    pub fn from_index(m: u8) -> Result<Self> {
        match m {
            0 => Ok(UpdateChar::Upper),
            1 => Ok(UpdateChar::Lower),
            other => Err(Error::Parse(format!(
                "update characteristic must be 0 or 1, got {other}"
            ))),
        }
    }
}

impl fmt::Display for UpdateChar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UpdateChar::Upper => write!(f, "upper"),
            UpdateChar::Lower => write!(f, "lower"),
        }
    }
}

// ---- Lifting steps ----

/// One lifting step: an update characteristic and a nonzero lifting filter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftingStep {
    update: UpdateChar,
    filter: LaurentPoly,
}

impl LiftingStep {
    /// Build a step; the zero filter is rejected (it would be the identity
    /// matrix, which breaks radius bookkeeping and irreducibility counting).
    pub fn new(update: UpdateChar, filter: LaurentPoly) -> Result<Self> {
        if filter.is_zero() {
            return Err(Error::ZeroFilter);
        }
        Ok(LiftingStep { update, filter })
    }

    /// Upper step `[[1, S], [0, 1]]`.
    pub fn upper(filter: LaurentPoly) -> Result<Self> {
        LiftingStep::new(UpdateChar::Upper, filter)
    }

    /// Lower step `[[1, 0], [S, 1]]`.
    pub fn lower(filter: LaurentPoly) -> Result<Self> {
        LiftingStep::new(UpdateChar::Lower, filter)
    }

    pub fn update(&self) -> UpdateChar {
        self.update
    }

    pub fn filter(&self) -> &LaurentPoly {
        &self.filter
    }

    /// The unit-diagonal triangular transfer matrix of this step.
    pub fn matrix(&self) -> PolyMatrix {
        let one = LaurentPoly::one();
        let zero = LaurentPoly::zero();
        match self.update {
            UpdateChar::Upper => {
                PolyMatrix::new([[one.clone(), self.filter.clone()], [zero, one]])
            }
            UpdateChar::Lower => {
                PolyMatrix::new([[one.clone(), zero], [self.filter.clone(), one]])
            }
        }
    }

    /// Gain-conjugation `diag(1/a, a) · S · diag(a, 1/a)`: an upper filter is
    /// scaled by `1/a^2`, a lower filter by `a^2`. Fails on `a = 0`.
    pub fn conjugate(&self, alpha: &Rational) -> Result<Self> {
        if alpha.is_zero() {
            return Err(Error::ZeroScale);
        }
        let a2 = alpha * alpha;
        let filter = match self.update {
            UpdateChar::Upper => self.filter.scale(&a2.recip()),
            UpdateChar::Lower => self.filter.scale(&a2),
        };
        Ok(LiftingStep { update: self.update, filter })
    }

    /// The inverse step (same channel, negated filter).
    pub fn inverse(&self) -> Self {
        LiftingStep { update: self.update, filter: -&self.filter }
    }
}

impl fmt::Display for LiftingStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.update, self.filter)
    }
}

// ---- Cascades ----

/// A lifting cascade `diag(1/K, K) · S_{N-1} ⋯ S_0 · B` with `K != 0`.
///
/// Steps are stored in application order: `steps()[0]` is the step applied
/// first (the factor adjacent to the base).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cascade {
    gain: Rational,
    steps: Vec<LiftingStep>,
    base: PolyMatrix,
}

/// One stage of an [`IntermediateTrace`]: the partial-product matrix and its
/// scalar filter pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceStage {
    /// `E^(n)` — partial product up to and including step `n` (index 0 of
    /// the trace holds `E^(-1) = B`).
    pub matrix: PolyMatrix,
    /// Scalar filters `(E_0^(n), E_1^(n))`, computed by the one-channel
    /// lifting recursion.
    pub filters: (LaurentPoly, LaurentPoly),
}

/// The stage-by-stage partial products of a cascade, gain excluded.
///
/// `stages[0]` is the base stage `E^(-1)`; `stages[n + 1]` is the state after
/// applying step `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntermediateTrace {
    pub stages: Vec<TraceStage>,
}

impl IntermediateTrace {
    /// Matrix orders per stage (`None` where a stage matrix is zero).
    pub fn orders(&self) -> Vec<Option<i64>> {
        self.stages.iter().map(|s| s.matrix.order()).collect()
    }

    /// Scalar suppints per stage, per channel.
    pub fn scalar_suppints(&self) -> Vec<(SupportInterval, SupportInterval)> {
        self.stages
            .iter()
            .map(|s| (s.filters.0.suppint(), s.filters.1.suppint()))
            .collect()
    }
}

impl Cascade {
    /// Build a cascade; a zero gain is rejected.
    pub fn new(gain: Rational, steps: Vec<LiftingStep>, base: PolyMatrix) -> Result<Self> {
        if gain.is_zero() {
            return Err(Error::ZeroScale);
        }
        Ok(Cascade { gain, steps, base })
    }

    /// A cascade over the identity base.
    pub fn from_steps(gain: Rational, steps: Vec<LiftingStep>) -> Result<Self> {
        Cascade::new(gain, steps, PolyMatrix::identity())
    }

    pub fn gain(&self) -> &Rational {
        &self.gain
    }

    pub fn steps(&self) -> &[LiftingStep] {
        &self.steps
    }

    pub fn base(&self) -> &PolyMatrix {
        &self.base
    }

    /// Number of lifting steps `N`.
    pub fn depth(&self) -> usize {
        self.steps.len()
    }

    /// The polyphase matrix `diag(1/K, K) · S_{N-1} ⋯ S_0 · B`.
    pub fn evaluate(&self) -> PolyMatrix {
        let mut acc = self.base.clone();
        for step in &self.steps {
            acc = &step.matrix() * &acc;
        }
        acc.scale_rows(&self.gain.recip(), &self.gain)
    }

    /// Partial products `E^(-1) ⋯ E^(N-1)` with their scalar filters (gain
    /// excluded). The scalar pairs are computed by the lifting recursion
    /// `E_m += S(z^2) E_{1-m}` and agree with `scalar_filters` of the stage
    /// matrices.
    pub fn trace(&self) -> IntermediateTrace {
        let mut matrix = self.base.clone();
        let (mut e0, mut e1) = matrix.scalar_filters();
        let mut stages = vec![TraceStage {
            matrix: matrix.clone(),
            filters: (e0.clone(), e1.clone()),
        }];
        for step in &self.steps {
            matrix = &step.matrix() * &matrix;
            let update = &step.filter.upsample();
            match step.update {
                UpdateChar::Upper => e0 = &e0 + &(update * &e1),
                UpdateChar::Lower => e1 = &e1 + &(update * &e0),
            }
            debug_assert_eq!((e0.clone(), e1.clone()), matrix.scalar_filters());
            stages.push(TraceStage {
                matrix: matrix.clone(),
                filters: (e0.clone(), e1.clone()),
            });
        }
        IntermediateTrace { stages }
    }

    /// True when consecutive steps strictly alternate channels. Empty and
    /// single-step cascades count as irreducible.
    pub fn is_irreducible(&self) -> bool {
        self.steps.windows(2).all(|w| w[0].update != w[1].update)
    }

    /// True when the matrix order of `E^(n)` strictly exceeds the order of
    /// `E^(n-1)` at every stage. Requires irreducibility; stages with zero
    /// matrices (undefined order) report `false`.
    pub fn is_order_increasing(&self) -> Result<bool> {
        if !self.is_irreducible() {
            return Err(Error::NotIrreducible(
                "order growth is only defined for strictly alternating cascades".into(),
            ));
        }
        let orders = self.trace().orders();
        Ok(orders.windows(2).all(|w| match (w[0], w[1]) {
            (Some(prev), Some(next)) => next > prev,
            _ => false,
        }))
    }

    /// Forward transform of a signal (sample `x(n)` is the coefficient of
    /// `z^-n`): polyphase split, base matrix action, lifting ladder, gains.
    /// Returns `(lowband, highband)` in the downsampled index domain.
    pub fn analyze_signal(&self, x: &LaurentPoly) -> (LaurentPoly, LaurentPoly) {
        let mut v = self.base.apply(&analyze(x));
        for step in &self.steps {
            match step.update {
                UpdateChar::Upper => v.f0 = &v.f0 + &(&step.filter * &v.f1),
                UpdateChar::Lower => v.f1 = &v.f1 + &(&step.filter * &v.f0),
            }
        }
        (v.f0.scale(&self.gain.recip()), v.f1.scale(&self.gain))
    }

    /// Exact inverse of [`Cascade::analyze_signal`]: undo gains, run the
    /// ladder backwards with negated filters, invert the base, merge phases.
    ///
    /// Fails with `NotUnimodular` when the base determinant is not a unit
    /// (a nonzero monomial), since only then does the base have a Laurent
    /// inverse.
    pub fn synthesize_signal(&self, low: &LaurentPoly, high: &LaurentPoly) -> Result<LaurentPoly> {
        let mut v = PolyVector::new(low.scale(&self.gain), high.scale(&self.gain.recip()));
        for step in self.steps.iter().rev() {
            match step.update {
                UpdateChar::Upper => v.f0 = &v.f0 - &(&step.filter * &v.f1),
                UpdateChar::Lower => v.f1 = &v.f1 - &(&step.filter * &v.f0),
            }
        }
        let det = self.base.det();
        let mut taps = det.iter();
        let inverse_det = match (taps.next(), taps.next()) {
            (Some((n, c)), None) => LaurentPoly::monomial(-n, c.recip()),
            _ => {
                return Err(Error::NotUnimodular(format!(
                    "base determinant {det} is not a unit; cannot invert the base"
                )))
            }
        };
        let adj = self.base.adjugate();
        let inv = PolyMatrix::new([
            [adj.entry(0, 0) * &inverse_det, adj.entry(0, 1) * &inverse_det],
            [adj.entry(1, 0) * &inverse_det, adj.entry(1, 1) * &inverse_det],
        ]);
        Ok(synthesize(&inv.apply(&v)))
    }
}

impl fmt::Display for Cascade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K = {}", self.gain)?;
        for (i, step) in self.steps.iter().enumerate() {
            write!(f, "; S{i} = {step}")?;
        }
        if self.base == PolyMatrix::identity() {
            write!(f, "; base = identity")
        } else {
            write!(f, "; base = {}", self.base.scalar_filters().0)
        }
    }
}
