//! Unique-factorization engines for linear-phase banks, rescaling
//! normalization, and round-trip verification.
//!
//! Both engines peel lifting steps off the *left* of the polyphase matrix.
//! At each stage the channel with the strictly larger polyphase row order is
//! the one that was updated last (the support-covering law guarantees the
//! orders separate), the step-filter radius `t` is forced by the structure's
//! radius recursion, and the step coefficients are pinned by an exact linear
//! system: the residual `E_m(z) - S(z^2) E_{1-m}(z)` must vanish everywhere
//! outside the support predicted for the previous stage. Symmetry halves the
//! unknowns, so the system has `t` unknowns and `4t` highly redundant
//! equations; a unique solution exists exactly when the input lies in the
//! factorable class.
//!
//! Peeling runs with the gain matrix still attached: for a whole-sample
//! symmetric bank `diag(1/K, K) · S_{N-1} ⋯ S_0` the stripped factors are the
//! gain-conjugates of the true steps and the loop terminates at the constant
//! diagonal `diag(1/K, K)`, after which the conjugation is undone. For a
//! half-sample symmetric bank the loop stops when the two scalar orders
//! equalize; the terminal matrix (gain times base) is itself an admissible
//! base, so it is returned with `K = 1` — a valid representative of the
//! rescaling class that [`normalize_cascade`] canonicalizes.

use std::fmt;

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Rational, SymmetryClass};
use crate::lifting::{Cascade, LiftingStep, UpdateChar};
use crate::polyphase::PolyMatrix;
use crate::structures::{
    base_in_class, cascade_in_structure, predict_radii, summarize_violations, MembershipReport,
    RadiusTrace, StructureKind,
};

// ---- Results ----

/// Post-hoc evidence attached to a factorization: which structure the output
/// lives in, its membership report, and the support bookkeeping.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorCertificate {
    pub kind: StructureKind,
    pub membership: MembershipReport,
    pub irreducible: bool,
    pub order_increasing: bool,
    pub radius_trace: RadiusTrace,
}

/// A factorization together with its certificate. The cascade's evaluation
/// equals the factored input exactly (asserted by the engines).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorResult {
    pub cascade: Cascade,
    pub certificate: FactorCertificate,
}

impl fmt::Display for FactorResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}; membership {}; irreducible {}; order-increasing {}]",
            self.cascade,
            self.certificate.kind,
            if self.certificate.membership.verdict() { "pass" } else { "fail" },
            self.certificate.irreducible,
            self.certificate.order_increasing,
        )
    }
}

/// True iff the cascade is implementable reversibly: unit gain and dyadic
/// coefficients in every step filter and base entry.
pub fn is_reversible(c: &Cascade) -> bool {
    c.gain().is_one()
        && c.steps().iter().all(|s| s.filter().is_dyadic())
        && (0..2).all(|i| (0..2).all(|j| c.base().entry(i, j).is_dyadic()))
}

fn certify(cascade: &Cascade, ws: bool) -> FactorCertificate {
    let kind = match (ws, is_reversible(cascade)) {
        (true, true) => StructureKind::WsReversible,
        (true, false) => StructureKind::WsIrreversible,
        (false, true) => StructureKind::HsReversible,
        (false, false) => StructureKind::HsIrreversible,
    };
    let membership = cascade_in_structure(cascade, kind);
    let irreducible = cascade.is_irreducible();
    let order_increasing = cascade.is_order_increasing().unwrap_or(false);
    let radius_trace = predict_radii(cascade, kind)
        .expect("factorization outputs are irreducible and in-structure");
    FactorCertificate { kind, membership, irreducible, order_increasing, radius_trace }
}

// ---- Exact linear algebra ----

/// Solve `rows * x = rhs` over the rationals by Gauss-Jordan elimination.
/// Returns the solution only when it exists and is unique (full column rank
/// and consistent); any ambiguity or contradiction yields `None`.
pub(crate) fn solve_unique(
    mut rows: Vec<Vec<Rational>>,
    mut rhs: Vec<Rational>,
    unknowns: usize,
) -> Option<Vec<Rational>> {
    debug_assert!(rows.iter().all(|r| r.len() == unknowns));
    let mut pivot_of_col = Vec::with_capacity(unknowns);
    let mut next_pivot = 0usize;
    for col in 0..unknowns {
        let Some(found) = (next_pivot..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next_pivot, found);
        rhs.swap(next_pivot, found);
        let inv = rows[next_pivot][col].recip();
        for v in rows[next_pivot][col..].iter_mut() {
            *v = &*v * &inv;
        }
        rhs[next_pivot] = &rhs[next_pivot] * &inv;
        let pivot_row = rows[next_pivot].clone();
        let pivot_rhs = rhs[next_pivot].clone();
        for (r, (row, b)) in rows.iter_mut().zip(rhs.iter_mut()).enumerate() {
            if r == next_pivot || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                let delta = p * &factor;
                *v = &*v - &delta;
            }
            let delta = &pivot_rhs * &factor;
            *b = &*b - &delta;
        }
        pivot_of_col.push((col, next_pivot));
        next_pivot += 1;
    }
    if pivot_of_col.len() != unknowns {
        return None; // underdetermined: no unique solution
    }
    if rhs.iter().skip(next_pivot).any(|v| !v.is_zero()) {
        return None; // inconsistent
    }
    let mut x = vec![Rational::zero(); unknowns];
    for (col, row) in pivot_of_col {
        x[col] = rhs[row].clone();
    }
    Some(x)
}

// ---- Shared peeling helpers ----

/// If `e` is exactly `diag(1/K, K)`, return `K`.
fn constant_diagonal_gain(e: &PolyMatrix) -> Option<Rational> {
    if !e.entry(0, 1).is_zero() || !e.entry(1, 0).is_zero() {
        return None;
    }
    let (d0, d1) = (e.entry(0, 0), e.entry(1, 1));
    if d0.num_taps() != 1 || d1.num_taps() != 1 {
        return None;
    }
    let k = d1.coeff(0);
    if k.is_zero() || &d0.coeff(0) * &k != Rational::one() {
        return None;
    }
    Some(k)
}

/// Solve for the unique lifting step that reduces channel `m`, given the
/// current scalar filters, the unknowns' paired tap positions, the
/// constraint positions, and the mirror sign (`+1` symmetric, `-1`
/// antisymmetric).
fn solve_step(
    update: UpdateChar,
    lifted: &LaurentPoly,
    fixed: &LaurentPoly,
    tap_pairs: &[(i64, i64)],
    positions: &[i64],
    mirror_sign: i64,
) -> Result<LiftingStep> {
    let sign = crate::laurent::rat(mirror_sign);
    let rows: Vec<Vec<Rational>> = positions
        .iter()
        .map(|&n| {
            tap_pairs
                .iter()
                .map(|&(a, b)| fixed.coeff(n - 2 * a) + &sign * fixed.coeff(n - 2 * b))
                .collect()
        })
        .collect();
    let rhs: Vec<Rational> = positions.iter().map(|&n| lifted.coeff(n)).collect();
    let sigma = solve_unique(rows, rhs, tap_pairs.len()).ok_or_else(|| {
        Error::NotFactorable(format!(
            "no {update} lifting step reproduces the outer taps of the current stage"
        ))
    })?;
    let filter = LaurentPoly::from_terms(tap_pairs.iter().zip(&sigma).flat_map(|(&(a, b), s)| {
        [(a, s.clone()), (b, &sign * s)]
    }));
    LiftingStep::new(update, filter)
        .map_err(|_| Error::NotFactorable("the forced lifting step is the zero filter".into()))
}

/// Scalar filters of the current matrix with their radii, after checking the
/// expected centering (`2c` = sum of suppint endpoints must equal the target
/// per channel).
fn centered_scalars(
    e: &PolyMatrix,
    expected_twice_center: [i64; 2],
) -> Result<((LaurentPoly, LaurentPoly), [i64; 2])> {
    let (e0, e1) = e.scalar_filters();
    let mut radii = [0i64; 2];
    for (i, f) in [&e0, &e1].into_iter().enumerate() {
        let supp = f.suppint();
        let (Some(lo), Some(hi)) = (supp.lo(), supp.hi()) else {
            return Err(Error::NotFactorable(format!(
                "intermediate scalar filter {i} vanished; input is outside the factorable class"
            )));
        };
        if lo + hi != expected_twice_center[i] {
            return Err(Error::NotFactorable(format!(
                "intermediate scalar filter {i} lost its centering (suppint {supp}); \
                 input is outside the factorable class"
            )));
        }
        radii[i] = f.supp_rad().expect("nonzero filter");
    }
    Ok(((e0, e1), radii))
}

// ---- Whole-sample symmetric engine ----

/// Factor a whole-sample symmetric bank into its unique irreducible lifting
/// cascade over the identity base.
///
/// Preconditions checked up front: determinant exactly 1 (`NotUnimodular`);
/// lowpass odd-length symmetric about 0 and highpass odd-length symmetric
/// about -1, the delay-minimized centering (`NotWsClass` — other centerings
/// are rejected with a shift suggestion, never silently normalized). The
/// uniqueness theorem for this class makes the output canonical: any correct
/// peeling strategy must produce the same steps.
pub fn factor_ws(h: &PolyMatrix) -> Result<FactorResult> {
    let det = h.det();
    if det != LaurentPoly::one() {
        return Err(Error::NotUnimodular(format!("det = {det}")));
    }
    let (h0, h1) = h.scalar_filters();
    for (i, (filter, want_center)) in [(&h0, 0i64), (&h1, -1i64)].into_iter().enumerate() {
        let class = filter.symmetry().map_err(|_| {
            Error::NotWsClass(format!("channel {i} is the zero filter"))
        })?;
        match class {
            SymmetryClass::Ws { center } if center == want_center => {}
            SymmetryClass::Ws { center } => {
                return Err(Error::NotWsClass(format!(
                    "channel {i} is symmetric about {center}, expected {want_center}; \
                     shift the filter by z^{} to use the delay-minimized centering",
                    center - want_center
                )))
            }
            other => {
                return Err(Error::NotWsClass(format!(
                    "channel {i} must be odd-length symmetric about {want_center}, got {other}"
                )))
            }
        }
    }

    let mut e = h.clone();
    let mut peeled: Vec<LiftingStep> = Vec::new();
    let limit = h.order().unwrap_or(0) as usize + 2;
    let gain = loop {
        if let Some(k) = constant_diagonal_gain(&e) {
            break k;
        }
        if peeled.len() > limit {
            return Err(Error::NotFactorable(
                "peeling failed to terminate; input is outside the factorable class".into(),
            ));
        }
        // channel centering: 0 for the lowpass row, -1 for the highpass row
        let ((e0, e1), radii) = centered_scalars(&e, [0, -2])?;
        let update = match e.row_suppint(0).order().zip(e.row_suppint(1).order()) {
            Some((o0, o1)) if o0 > o1 => UpdateChar::Upper,
            Some((o0, o1)) if o1 > o0 => UpdateChar::Lower,
            _ => {
                return Err(Error::NotFactorable(
                    "polyphase row orders do not separate; input is outside the factorable class"
                        .into(),
                ))
            }
        };
        let m = update.index();
        let (lifted, fixed) = if m == 0 { (&e0, &e1) } else { (&e1, &e0) };
        let (r_m, r_c) = (radii[m], radii[1 - m]);
        let gap = r_m - r_c;
        if gap < 1 || gap % 2 == 0 {
            return Err(Error::NotFactorable(format!(
                "scalar radius gap {gap} is not an odd positive integer"
            )));
        }
        let t = (gap + 1) / 2;
        // every scalar at an earlier stage has radius at most r_c - 1, except
        // the base rows (1, z) which have radius 0; the residual must vanish
        // outside that window
        let prev = (r_c - 1).max(0);
        // unknown sigma_j sits at the mirrored tap pair; constraints cover
        // every position outside the previous stage's possible support
        let (tap_pairs, positions): (Vec<(i64, i64)>, Vec<i64>) = match update {
            UpdateChar::Upper => (
                (1..=t).map(|j| (j, 1 - j)).collect(),
                (prev + 1..=r_m).chain(-r_m..=-prev - 1).collect(),
            ),
            UpdateChar::Lower => (
                (0..t).map(|j| (j, -1 - j)).collect(),
                (prev..=r_m - 1).chain(-r_m - 1..=-prev - 2).collect(),
            ),
        };
        let step = solve_step(update, lifted, fixed, &tap_pairs, &positions, 1)?;
        e = &step.inverse().matrix() * &e;
        peeled.push(step);
    };

    // peeled factors are the gain-conjugates of the true steps, in reverse
    // application order
    let inv_gain = gain.recip();
    let steps = peeled
        .into_iter()
        .rev()
        .map(|s| s.conjugate(&inv_gain))
        .collect::<Result<Vec<_>>>()?;
    let cascade = Cascade::from_steps(gain, steps)?;
    assert_eq!(cascade.evaluate(), *h, "factorization must reconstruct its input");
    let certificate = certify(&cascade, true);
    Ok(FactorResult { cascade, certificate })
}

// ---- Half-sample symmetric engine ----

/// Factor a half-sample symmetric bank into whole-sample antisymmetric
/// lifting steps over a concentric equal-length base.
///
/// Preconditions checked up front: determinant exactly 1 (`NotUnimodular`);
/// lowpass even-length symmetric about -1/2 and highpass even-length
/// antisymmetric about -1/2 (`NotHsClass`). Peeling stops when the two
/// scalar orders equalize; the result is unique modulo rescaling and is
/// returned with `K = 1` (the gain lives in the base until normalization).
pub fn factor_hs(h: &PolyMatrix) -> Result<FactorResult> {
    let det = h.det();
    if det != LaurentPoly::one() {
        return Err(Error::NotUnimodular(format!("det = {det}")));
    }
    let (h0, h1) = h.scalar_filters();
    for (i, (filter, want, role)) in [
        (&h0, SymmetryClass::Hs { twice_center: -1 }, "even-length symmetric"),
        (&h1, SymmetryClass::Ha { twice_center: -1 }, "even-length antisymmetric"),
    ]
    .into_iter()
    .enumerate()
    {
        let class = filter.symmetry().map_err(|_| {
            Error::NotHsClass(format!("channel {i} is the zero filter"))
        })?;
        if class != want {
            return Err(Error::NotHsClass(format!(
                "channel {i} must be {role} about -1/2, got {class}"
            )));
        }
    }

    let mut e = h.clone();
    let mut peeled: Vec<LiftingStep> = Vec::new();
    let limit = h.order().unwrap_or(0) as usize + 2;
    loop {
        let ((e0, e1), radii) = centered_scalars(&e, [-1, -1])?;
        if radii[0] == radii[1] {
            // terminal: gain-times-base, itself an admissible base
            let base_report = base_in_class(&e, StructureKind::HsIrreversible);
            if !base_report.verdict() {
                return Err(Error::NotFactorable(format!(
                    "terminal matrix is not an admissible concentric equal-length base ({})",
                    summarize_violations(&base_report.violations)
                )));
            }
            peeled.reverse();
            let cascade = Cascade::new(Rational::one(), peeled, e)?;
            assert_eq!(cascade.evaluate(), *h, "factorization must reconstruct its input");
            let certificate = certify(&cascade, false);
            return Ok(FactorResult { cascade, certificate });
        }
        if peeled.len() > limit {
            return Err(Error::NotFactorable(
                "peeling failed to terminate; input is outside the factorable class".into(),
            ));
        }
        let update = if radii[0] > radii[1] { UpdateChar::Upper } else { UpdateChar::Lower };
        let m = update.index();
        let (lifted, fixed) = if m == 0 { (&e0, &e1) } else { (&e1, &e0) };
        let (r_m, r_c) = (radii[m], radii[1 - m]);
        let gap = r_m - r_c;
        if gap % 2 != 0 {
            return Err(Error::NotFactorable(format!(
                "scalar radius gap {gap} is odd; half-sample radii must share parity"
            )));
        }
        let t = gap / 2;
        // whole-sample antisymmetric unknowns: s(j) = -s(-j), s(0) = 0
        let tap_pairs: Vec<(i64, i64)> = (1..=t).map(|j| (j, -j)).collect();
        let positions: Vec<i64> = (r_c..=r_m - 1).chain(-r_m..=-r_c - 1).collect();
        let step = solve_step(update, lifted, fixed, &tap_pairs, &positions, -1)?;
        e = &step.inverse().matrix() * &e;
        peeled.push(step);
    }
}

// ---- Rescaling normalization ----

/// Gain-transfer conventions for canonicalizing half-sample factorizations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Normalization {
    /// Transfer the whole gain into the base: `K' = 1`.
    UnitGain,
    /// Scale the base lowpass to unit DC value: `B0(1) = 1`.
    UnitDc,
}

/// Transfer gain between the diagonal and the base by `alpha`:
/// `base' = diag(1/alpha, alpha) * base`, steps conjugated, `K' = K / alpha`.
/// The evaluation is unchanged, exactly.
pub fn transfer_gain(c: &Cascade, alpha: &Rational) -> Result<Cascade> {
    if alpha.is_zero() {
        return Err(Error::ZeroScale);
    }
    let steps = c
        .steps()
        .iter()
        .map(|s| s.conjugate(alpha))
        .collect::<Result<Vec<_>>>()?;
    Cascade::new(
        c.gain() / alpha,
        steps,
        c.base().scale_rows(&alpha.recip(), alpha),
    )
}

/// Canonicalize a cascade's rescaling freedom under the chosen convention.
///
/// Two cascades that differ only by gain transfer map to the *same* cascade:
/// under `UnitDc` the transfer factor is the base's lowpass DC value (which
/// fails with `DcZero` when that value is 0), under `UnitGain` it is `K`
/// itself.
pub fn normalize_cascade(c: &Cascade, convention: Normalization) -> Result<Cascade> {
    let alpha = match convention {
        Normalization::UnitGain => c.gain().clone(),
        Normalization::UnitDc => {
            let dc = c.base().scalar_filters().0.eval_at_one();
            if dc.is_zero() {
                return Err(Error::DcZero);
            }
            dc
        }
    };
    if alpha.is_one() {
        return Ok(c.clone());
    }
    transfer_gain(c, &alpha)
}

/// Normalize a factorization and re-certify the result. The evaluation is
/// preserved bit-exactly.
pub fn normalize_rescaling(r: &FactorResult, convention: Normalization) -> Result<FactorResult> {
    let cascade = normalize_cascade(&r.cascade, convention)?;
    debug_assert_eq!(cascade.evaluate(), r.cascade.evaluate());
    let certificate = certify(&cascade, r.certificate.kind.is_ws());
    Ok(FactorResult { cascade, certificate })
}

// ---- Round-trip verification ----

/// Evaluate, refactor with the matching engine, and compare step by step.
///
/// Whole-sample and reversible half-sample structures admit no rescaling
/// freedom, so the comparison is direct; irreversible half-sample cascades
/// are compared after `UnitDc` normalization. Factorization errors
/// propagate.
pub fn verify_roundtrip(c: &Cascade, kind: StructureKind) -> Result<bool> {
    if !c.is_irreducible() {
        return Err(Error::NotIrreducible(
            "round-trip verification applies to irreducible cascades".into(),
        ));
    }
    let membership = cascade_in_structure(c, kind);
    if !membership.verdict() {
        return Err(Error::NotInStructure(summarize_violations(&membership.violations)));
    }
    let h = c.evaluate();
    if kind.is_ws() {
        let recovered = factor_ws(&h)?;
        Ok(recovered.cascade == *c)
    } else if kind.is_reversible() {
        // K' = K = 1: the representative is forced, no normalization needed
        let recovered = factor_hs(&h)?;
        Ok(recovered.cascade == *c)
    } else {
        let recovered = factor_hs(&h)?;
        Ok(normalize_cascade(&recovered.cascade, Normalization::UnitDc)?
            == normalize_cascade(c, Normalization::UnitDc)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{rat, ratio};

    fn lp(terms: &[(i64, i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().map(|&(n, p, q)| (n, ratio(p, q))))
    }

    fn worked_cascade() -> Cascade {
        Cascade::from_steps(
            rat(1),
            vec![
                LiftingStep::lower(lp(&[(-2, 1, 1), (-1, 1, 1), (0, 1, 1), (1, 1, 1)])).unwrap(),
                LiftingStep::upper(lp(&[(0, 1, 1), (1, 1, 1)])).unwrap(),
            ],
        )
        .unwrap()
    }

    fn worked_bank() -> PolyMatrix {
        worked_cascade().evaluate()
    }

    fn haar_bank() -> PolyMatrix {
        PolyMatrix::from_scalars(
            &lp(&[(-1, 1, 2), (0, 1, 2)]),
            &lp(&[(-1, 1, 1), (0, -1, 1)]),
        )
    }

    // ---- solver ----

    #[test]
    fn solver_finds_unique_solutions() {
        // x + y = 3, x - y = 1  =>  (2, 1)
        let rows = vec![vec![rat(1), rat(1)], vec![rat(1), rat(-1)]];
        assert_eq!(solve_unique(rows, vec![rat(3), rat(1)], 2), Some(vec![rat(2), rat(1)]));
    }

    #[test]
    fn solver_rejects_singular_and_inconsistent_systems() {
        // rank deficient
        let rows = vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)]];
        assert_eq!(solve_unique(rows, vec![rat(1), rat(2)], 2), None);
        // inconsistent
        let rows = vec![vec![rat(1), rat(0)], vec![rat(1), rat(0)], vec![rat(0), rat(1)]];
        assert_eq!(solve_unique(rows, vec![rat(1), rat(2), rat(0)], 2), None);
        // overdetermined but consistent
        let rows = vec![vec![rat(1), rat(0)], vec![rat(0), rat(1)], vec![rat(1), rat(1)]];
        assert_eq!(
            solve_unique(rows, vec![ratio(1, 2), rat(2), ratio(5, 2)], 2),
            Some(vec![ratio(1, 2), rat(2)])
        );
    }

    // ---- whole-sample engine ----

    #[test]
    fn worked_bank_factors_back_to_the_worked_cascade() {
        let result = factor_ws(&worked_bank()).unwrap();
        assert_eq!(result.cascade, worked_cascade());
        assert_eq!(result.certificate.kind, StructureKind::WsReversible);
        assert!(result.certificate.membership.verdict());
        assert!(result.certificate.irreducible);
        assert!(result.certificate.order_increasing);
        assert!(result
            .certificate
            .radius_trace
            .compare_with_trace(&result.cascade.trace())
            .is_empty());
    }

    #[test]
    fn pure_gain_matrices_factor_to_empty_cascades() {
        let result = factor_ws(&PolyMatrix::identity()).unwrap();
        assert!(result.cascade.steps().is_empty());
        assert_eq!(*result.cascade.gain(), rat(1));

        let gain = PolyMatrix::diagonal(
            LaurentPoly::constant(ratio(1, 3)),
            LaurentPoly::constant(rat(3)),
        );
        let result = factor_ws(&gain).unwrap();
        assert!(result.cascade.steps().is_empty());
        assert_eq!(*result.cascade.gain(), rat(3));
        assert_eq!(result.certificate.kind, StructureKind::WsIrreversible);
        assert!(result.certificate.membership.verdict());
    }

    #[test]
    fn ws_engine_rejects_wrong_determinants_and_classes() {
        let (h0, h1) = worked_bank().scalar_filters();
        let doubled = PolyMatrix::from_scalars(&h0.scale(&rat(2)), &h1);
        assert!(matches!(factor_ws(&doubled), Err(Error::NotUnimodular(_))));
        // even-length filters belong to the half-sample engine
        assert!(matches!(factor_ws(&haar_bank()), Err(Error::NotWsClass(_))));
        // wrong centering gets a shift hint (opposite delays keep det = 1)
        let shifted = PolyMatrix::from_scalars(&h0.delay(2), &h1.delay(-2));
        match factor_ws(&shifted) {
            Err(Error::NotWsClass(msg)) => assert!(msg.contains("shift"), "got: {msg}"),
            other => panic!("expected NotWsClass, got {other:?}"),
        }
    }

    #[test]
    fn nontrivial_gain_is_recovered_with_conjugated_steps() {
        // gain-scaled variant of the worked cascade: same steps conjugated
        let scaled = Cascade::from_steps(
            ratio(3, 2),
            worked_cascade()
                .steps()
                .iter()
                .map(|s| s.conjugate(&ratio(5, 1)).unwrap())
                .collect(),
        )
        .unwrap();
        let result = factor_ws(&scaled.evaluate()).unwrap();
        assert_eq!(result.cascade, scaled);
        assert_eq!(result.certificate.kind, StructureKind::WsIrreversible);
    }

    // ---- half-sample engine ----

    #[test]
    fn haar_factors_to_a_bare_base() {
        let result = factor_hs(&haar_bank()).unwrap();
        assert!(result.cascade.steps().is_empty());
        assert_eq!(*result.cascade.gain(), rat(1));
        assert_eq!(*result.cascade.base(), haar_bank());
        assert_eq!(result.certificate.kind, StructureKind::HsReversible);
        assert!(result.certificate.membership.verdict());
    }

    #[test]
    fn one_step_over_haar_round_trips() {
        let step = LiftingStep::upper(lp(&[(-1, 1, 4), (1, -1, 4)])).unwrap();
        let c = Cascade::new(rat(1), vec![step], haar_bank()).unwrap();
        let result = factor_hs(&c.evaluate()).unwrap();
        assert_eq!(result.cascade, c);
        assert!(result.certificate.order_increasing);
    }

    #[test]
    fn hs_engine_rejects_odd_length_banks() {
        // the lazy bank's scalars (1, z) are whole-sample, not half-sample
        assert!(matches!(factor_hs(&PolyMatrix::identity()), Err(Error::NotHsClass(_))));
        assert!(matches!(factor_hs(&worked_bank()), Err(Error::NotHsClass(_))));
    }

    #[test]
    fn gain_injected_bank_factors_with_gain_absorbed_into_the_base() {
        let step = LiftingStep::lower(lp(&[(-2, 1, 2), (2, -1, 2)])).unwrap();
        let c = Cascade::new(rat(2), vec![step.clone()], haar_bank()).unwrap();
        let result = factor_hs(&c.evaluate()).unwrap();
        // representative has K = 1; steps are the gain-conjugates
        assert_eq!(*result.cascade.gain(), rat(1));
        assert_eq!(result.cascade.steps()[0], step.conjugate(&rat(2)).unwrap());
        assert_eq!(*result.cascade.base(), haar_bank().scale_rows(&ratio(1, 2), &rat(2)));
        // and both normalize to the same canonical cascade
        assert_eq!(
            normalize_cascade(&result.cascade, Normalization::UnitDc).unwrap(),
            normalize_cascade(&c, Normalization::UnitDc).unwrap()
        );
    }

    // ---- normalization ----

    #[test]
    fn unit_dc_normalization_fixes_the_base_lowpass() {
        let step = LiftingStep::upper(lp(&[(-1, 1, 4), (1, -1, 4)])).unwrap();
        let c = Cascade::new(ratio(3, 2), vec![step], haar_bank()).unwrap();
        let normalized = normalize_cascade(&c, Normalization::UnitDc).unwrap();
        assert_eq!(normalized.base().scalar_filters().0.eval_at_one(), rat(1));
        assert_eq!(normalized.evaluate(), c.evaluate());
        // already-normalized input is a fixed point
        assert_eq!(normalize_cascade(&normalized, Normalization::UnitDc).unwrap(), normalized);
    }

    #[test]
    fn gain_transferred_cascades_normalize_identically() {
        let step = LiftingStep::upper(lp(&[(-1, 1, 3), (1, -1, 3)])).unwrap();
        let c = Cascade::new(ratio(5, 4), vec![step], haar_bank()).unwrap();
        for alpha in [rat(2), ratio(3, 2), rat(-1)] {
            let moved = transfer_gain(&c, &alpha).unwrap();
            assert_eq!(moved.evaluate(), c.evaluate());
            assert_ne!(moved, c);
            assert_eq!(
                normalize_cascade(&moved, Normalization::UnitDc).unwrap(),
                normalize_cascade(&c, Normalization::UnitDc).unwrap()
            );
        }
        assert!(matches!(transfer_gain(&c, &rat(0)), Err(Error::ZeroScale)));
    }

    #[test]
    fn unit_gain_normalization_moves_k_into_the_base() {
        let step = LiftingStep::upper(lp(&[(-1, 1, 4), (1, -1, 4)])).unwrap();
        let c = Cascade::new(rat(2), vec![step], haar_bank()).unwrap();
        let normalized = normalize_cascade(&c, Normalization::UnitGain).unwrap();
        assert_eq!(*normalized.gain(), rat(1));
        assert_eq!(normalized.evaluate(), c.evaluate());
    }

    // ---- round trips and reversibility ----

    #[test]
    fn roundtrip_verifies_the_worked_cascade() {
        assert_eq!(verify_roundtrip(&worked_cascade(), StructureKind::WsReversible), Ok(true));
        assert_eq!(verify_roundtrip(&worked_cascade(), StructureKind::WsIrreversible), Ok(true));
    }

    #[test]
    fn roundtrip_checks_preconditions() {
        let s = || LiftingStep::upper(lp(&[(0, 1, 1), (1, 1, 1)])).unwrap();
        let reducible = Cascade::from_steps(rat(1), vec![s(), s()]).unwrap();
        assert!(matches!(
            verify_roundtrip(&reducible, StructureKind::WsIrreversible),
            Err(Error::NotIrreducible(_))
        ));
        let hs_step = LiftingStep::upper(lp(&[(-1, 1, 4), (1, -1, 4)])).unwrap();
        let hs = Cascade::new(rat(1), vec![hs_step], haar_bank()).unwrap();
        assert!(matches!(
            verify_roundtrip(&hs, StructureKind::WsIrreversible),
            Err(Error::NotInStructure(_))
        ));
        assert_eq!(verify_roundtrip(&hs, StructureKind::HsIrreversible), Ok(true));
        assert_eq!(verify_roundtrip(&hs, StructureKind::HsReversible), Ok(true));
    }

    #[test]
    fn reversibility_requires_unit_gain_and_dyadic_taps() {
        assert!(is_reversible(&worked_cascade()));
        let scaled = Cascade::new(rat(2), worked_cascade().steps().to_vec(), PolyMatrix::identity())
            .unwrap();
        assert!(!is_reversible(&scaled));
        let thirds = Cascade::from_steps(
            rat(1),
            vec![LiftingStep::upper(lp(&[(0, 1, 3), (1, 1, 3)])).unwrap()],
        )
        .unwrap();
        assert!(!is_reversible(&thirds));
    }
}
