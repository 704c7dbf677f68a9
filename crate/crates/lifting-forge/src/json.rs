//! JSON interchange for filters, banks, cascades, and signals.
//!
//! All numbers cross the wire as exact rationals `{"num": "<int>", "den":
//! "<int>"}` with decimal *strings* for the integers, so coefficients larger
//! than 64 bits survive any toolchain. A Laurent filter is `{"terms":
//! [{"n": <int>, "num": ..., "den": ...}, ...]}` listed by ascending tap
//! index `n` (the coefficient of `z^-n`). A bank is either a scalar pair
//! `{"h0": ..., "h1": ...}` or an explicit `{"matrix": [[p, p], [p, p]]}`;
//! loaders accept both. A cascade is `{"K": <rational>, "steps": [{"m": 0|1,
//! "s": <filter>}, ...], "base": <2x2 array or the string "identity">}`.
//! Signals reuse the filter encoding (a signal *is* a Laurent polynomial
//! here), and subband files pair them as `{"low": ..., "high": ...}`.
//!
//! Deserialization is two-phase: serde maps JSON onto the DTO types below
//! (reporting line/column on malformed syntax), then the conversion to
//! domain types validates semantics — nonzero denominators, update
//! characteristics in `{0, 1}`, nonzero step filters and gain. Both phases
//! report through [`Error::Parse`].

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Rational};
use crate::lifting::{Cascade, LiftingStep, UpdateChar};
use crate::polyphase::PolyMatrix;

fn parse_err(context: &str, detail: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{context}: {detail}"))
}

// ---- Rationals ----

/// Exact rational: decimal-string numerator and denominator.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct RationalDto {
    pub num: String,
    pub den: String,
}

impl RationalDto {
    pub fn encode(r: &Rational) -> Self {
        RationalDto { num: r.numer().to_string(), den: r.denom().to_string() }
    }

    pub fn decode(&self) -> Result<Rational> {
        let num: num::BigInt =
            self.num.trim().parse().map_err(|e| parse_err("numerator", e))?;
        let den: num::BigInt =
            self.den.trim().parse().map_err(|e| parse_err("denominator", e))?;
        if num::Zero::is_zero(&den) {
            return Err(parse_err("denominator", "must be nonzero"));
        }
        Ok(Rational::new(num, den))
    }
}

// ---- Filters and signals ----

/// One tap: the coefficient `num/den` of `z^-n`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct TermDto {
    pub n: i64,
    pub num: String,
    pub den: String,
}

/// A Laurent polynomial as a sorted, sparse tap list.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolyDto {
    pub terms: Vec<TermDto>,
}

impl PolyDto {
    pub fn encode(p: &LaurentPoly) -> Self {
        PolyDto {
            terms: p
                .iter()
                .map(|(n, c)| TermDto {
                    n,
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
    }

    pub fn decode(&self) -> Result<LaurentPoly> {
        let mut taps = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            let c = RationalDto { num: t.num.clone(), den: t.den.clone() }
                .decode()
                .map_err(|e| parse_err(&format!("term n={}", t.n), e))?;
            taps.push((t.n, c));
        }
        Ok(LaurentPoly::from_terms(taps))
    }
}

// ---- Banks ----

/// A bank on the wire: scalar filters or an explicit polyphase matrix.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BankDto {
    Scalars { h0: PolyDto, h1: PolyDto },
    Matrix { matrix: [[PolyDto; 2]; 2] },
}

impl BankDto {
    /// Canonical output form: the scalar filters.
    pub fn encode(m: &PolyMatrix) -> Self {
        let (h0, h1) = m.scalar_filters();
        BankDto::Scalars { h0: PolyDto::encode(&h0), h1: PolyDto::encode(&h1) }
    }

    pub fn decode(&self) -> Result<PolyMatrix> {
        match self {
            BankDto::Scalars { h0, h1 } => {
                Ok(PolyMatrix::from_scalars(&h0.decode()?, &h1.decode()?))
            }
            BankDto::Matrix { matrix } => {
                let mut entries =
                    std::array::from_fn(|_| std::array::from_fn(|_| LaurentPoly::zero()));
                for i in 0..2 {
                    for j in 0..2 {
                        entries[i][j] = matrix[i][j].decode()?;
                    }
                }
                Ok(PolyMatrix::new(entries))
            }
        }
    }
}

// ---- Cascades ----

/// One lifting step: update characteristic `m` (0 upper, 1 lower) and the
/// step filter `s`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StepDto {
    pub m: u8,
    pub s: PolyDto,
}

/// A cascade base: the literal string `"identity"` or an explicit matrix.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BaseDto {
    Named(String),
    Matrix([[PolyDto; 2]; 2]),
}

/// A lifting cascade on the wire.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CascadeDto {
    #[serde(rename = "K")]
    pub k: RationalDto,
    pub steps: Vec<StepDto>,
    pub base: BaseDto,
}

impl CascadeDto {
    pub fn encode(c: &Cascade) -> Self {
        let base = if *c.base() == PolyMatrix::identity() {
            BaseDto::Named("identity".into())
        } else {
            BaseDto::Matrix(std::array::from_fn(|i| {
                std::array::from_fn(|j| PolyDto::encode(c.base().entry(i, j)))
            }))
        };
        CascadeDto {
            k: RationalDto::encode(c.gain()),
            steps: c
                .steps()
                .iter()
                .map(|s| StepDto { m: s.update().index() as u8, s: PolyDto::encode(s.filter()) })
                .collect(),
            base,
        }
    }

    pub fn decode(&self) -> Result<Cascade> {
        let gain = self.k.decode().map_err(|e| parse_err("K", e))?;
        let mut steps = Vec::with_capacity(self.steps.len());
        for (i, dto) in self.steps.iter().enumerate() {
            let update = UpdateChar::from_index(dto.m)
                .map_err(|e| parse_err(&format!("step {i}"), e))?;
            let filter = dto.s.decode().map_err(|e| parse_err(&format!("step {i}"), e))?;
            steps.push(
                LiftingStep::new(update, filter)
                    .map_err(|_| parse_err(&format!("step {i}"), "step filter must be nonzero"))?,
            );
        }
        let base = match &self.base {
            BaseDto::Named(name) if name == "identity" => PolyMatrix::identity(),
            BaseDto::Named(name) => {
                return Err(parse_err("base", format!("unknown name {name:?}, expected \"identity\"")))
            }
            BaseDto::Matrix(matrix) => {
                let mut entries: [[LaurentPoly; 2]; 2] =
                    std::array::from_fn(|_| std::array::from_fn(|_| LaurentPoly::zero()));
                for i in 0..2 {
                    for j in 0..2 {
                        entries[i][j] = matrix[i][j].decode().map_err(|e| parse_err("base", e))?;
                    }
                }
                PolyMatrix::new(entries)
            }
        };
        Cascade::new(gain, steps, base).map_err(|_| parse_err("K", "gain must be nonzero"))
    }
}

// ---- Subbands ----

/// A pair of subband signals produced by analysis and consumed by synthesis.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SubbandsDto {
    pub low: PolyDto,
    pub high: PolyDto,
}

// ---- String-level helpers ----

fn from_json_str<'a, T: Deserialize<'a>>(s: &'a str, what: &str) -> Result<T> {
    serde_json::from_str(s).map_err(|e| parse_err(what, e))
}

fn to_pretty(v: &impl Serialize) -> String {
    serde_json::to_string_pretty(v).expect("DTOs serialize infallibly")
}

pub fn bank_from_str(s: &str) -> Result<PolyMatrix> {
    from_json_str::<BankDto>(s, "bank")?.decode()
}

pub fn bank_to_string(m: &PolyMatrix) -> String {
    to_pretty(&BankDto::encode(m))
}

pub fn cascade_from_str(s: &str) -> Result<Cascade> {
    from_json_str::<CascadeDto>(s, "cascade")?.decode()
}

pub fn cascade_to_string(c: &Cascade) -> String {
    to_pretty(&CascadeDto::encode(c))
}

pub fn signal_from_str(s: &str) -> Result<LaurentPoly> {
    from_json_str::<PolyDto>(s, "signal")?.decode()
}

pub fn signal_to_string(x: &LaurentPoly) -> String {
    to_pretty(&PolyDto::encode(x))
}

pub fn subbands_from_str(s: &str) -> Result<(LaurentPoly, LaurentPoly)> {
    let dto = from_json_str::<SubbandsDto>(s, "subbands")?;
    Ok((dto.low.decode()?, dto.high.decode()?))
}

pub fn subbands_to_string(low: &LaurentPoly, high: &LaurentPoly) -> String {
    to_pretty(&SubbandsDto { low: PolyDto::encode(low), high: PolyDto::encode(high) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::laurent::{rat, ratio};
    use crate::testkit;

    #[test]
    fn rationals_round_trip_with_huge_integers() {
        let r = Rational::new(
            "123456789012345678901234567890".parse().unwrap(),
            "340282366920938463463374607431768211456".parse().unwrap(), // 2^128
        );
        let dto = RationalDto::encode(&r);
        assert_eq!(dto.decode().unwrap(), r);
        // negative denominators normalize on decode
        let neg = RationalDto { num: "3".into(), den: "-6".into() };
        assert_eq!(neg.decode().unwrap(), ratio(-1, 2));
        let zero_den = RationalDto { num: "1".into(), den: "0".into() };
        assert!(matches!(zero_den.decode(), Err(Error::Parse(_))));
    }

    #[test]
    fn filters_round_trip_and_canonicalize() {
        let p = LaurentPoly::from_terms([(-4, rat(1)), (0, ratio(3, 7)), (2, rat(-2))]);
        assert_eq!(PolyDto::encode(&p).decode().unwrap(), p);
        // duplicate taps accumulate, zero totals vanish
        let messy: PolyDto = serde_json::from_str(
            r#"{"terms": [
                {"n": 1, "num": "2", "den": "3"},
                {"n": 1, "num": "-2", "den": "3"},
                {"n": 0, "num": "5", "den": "1"}
            ]}"#,
        )
        .unwrap();
        assert_eq!(messy.decode().unwrap(), LaurentPoly::constant(rat(5)));
    }

    #[test]
    fn banks_load_from_either_wire_form() {
        let bank = testkit::worked_bank();
        let out = bank_to_string(&bank);
        assert!(out.contains("\"h0\""));
        assert_eq!(bank_from_str(&out).unwrap(), bank);

        let (h0, h1) = bank.scalar_filters();
        let matrix_form = serde_json::json!({
            "matrix": [
                [PolyDto::encode(bank.entry(0, 0)), PolyDto::encode(bank.entry(0, 1))],
                [PolyDto::encode(bank.entry(1, 0)), PolyDto::encode(bank.entry(1, 1))],
            ]
        });
        let reloaded = bank_from_str(&matrix_form.to_string()).unwrap();
        assert_eq!(reloaded, bank);
        assert_eq!(reloaded.scalar_filters(), (h0, h1));
    }

    #[test]
    fn cascades_round_trip_with_identity_and_matrix_bases() {
        let ws = testkit::worked_cascade();
        let text = cascade_to_string(&ws);
        assert!(text.contains("\"identity\""));
        assert_eq!(cascade_from_str(&text).unwrap(), ws);

        let hs = crate::lifting::Cascade::new(
            ratio(3, 2),
            vec![crate::lifting::LiftingStep::upper(
                LaurentPoly::from_terms([(-1, ratio(1, 4)), (1, ratio(-1, 4))]),
            )
            .unwrap()],
            testkit::haar_base(),
        )
        .unwrap();
        assert_eq!(cascade_from_str(&cascade_to_string(&hs)).unwrap(), hs);
    }

    #[test]
    fn semantic_violations_surface_as_parse_errors() {
        let bad_m = r#"{"K": {"num": "1", "den": "1"},
                        "steps": [{"m": 2, "s": {"terms": [{"n": 0, "num": "1", "den": "1"}]}}],
                        "base": "identity"}"#;
        assert!(matches!(cascade_from_str(bad_m), Err(Error::Parse(_))));

        let zero_step = r#"{"K": {"num": "1", "den": "1"},
                            "steps": [{"m": 0, "s": {"terms": []}}],
                            "base": "identity"}"#;
        assert!(matches!(cascade_from_str(zero_step), Err(Error::Parse(_))));

        let zero_gain = r#"{"K": {"num": "0", "den": "1"}, "steps": [], "base": "identity"}"#;
        assert!(matches!(cascade_from_str(zero_gain), Err(Error::Parse(_))));

        let bad_base = r#"{"K": {"num": "1", "den": "1"}, "steps": [], "base": "lazy"}"#;
        match cascade_from_str(bad_base) {
            Err(Error::Parse(msg)) => assert!(msg.contains("identity"), "got: {msg}"),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn malformed_syntax_reports_line_and_column() {
        let err = bank_from_str("{\"h0\": {\"terms\": [}}").unwrap_err();
        match err {
            Error::Parse(msg) => assert!(msg.contains("line"), "got: {msg}"),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn signals_and_subbands_round_trip() {
        let x = LaurentPoly::from_terms([(3, rat(7)), (10, ratio(-1, 3))]);
        assert_eq!(signal_from_str(&signal_to_string(&x)).unwrap(), x);
        let (low, high) = testkit::worked_cascade().analyze_signal(&x);
        let text = subbands_to_string(&low, &high);
        assert_eq!(subbands_from_str(&text).unwrap(), (low, high));
        // the empty signal is representable
        assert_eq!(signal_from_str(r#"{"terms": []}"#).unwrap(), LaurentPoly::zero());
    }
}
