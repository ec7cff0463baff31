//! Cesàro means and generalized limits of finitely described sequences.
//!
//! A [`SequenceWindow`] is a finite window `x_1..x_N` of exact rationals,
//! optionally followed by a declared tail: a constant, a repeating pattern,
//! or a named generator. Constant and periodic tails make the Cesàro limit
//! (the period average) and the Banach-limit axioms exactly checkable.
//! Generators and bare windows only yield estimates; nothing is claimed
//! beyond what the data determines.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Signed, Zero};
use serde::{Serialize, Serializer};
use serde_json::Value;
use thiserror::Error;

/// Convergence tolerance for windows without a declared tail, applied to
/// the trailing quarter of the means.
pub const WINDOW_TOLERANCE: f64 = 1e-9;
/// Terms drawn from a generator tail when estimating; the trailing half of
/// their means is examined.
pub const GENERATOR_HORIZON: usize = 1 << 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BanachError {
    #[error("a sequence needs at least one window value or a tail")]
    Empty,
    #[error("periodic tail needs a nonempty pattern")]
    EmptyPattern,
    #[error("unknown generator `{0}` (expected linear_blocks, doubling_blocks or ramp)")]
    UnknownGenerator(String),
    #[error("sequence is outside the exactly checkable class: {0}")]
    NotExact(String),
    #[error("malformed sequence document: {0}")]
    Format(String),
}

/// Named infinite sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Generator {
    /// `0, 1, 0, 0, 1, 1, 0, 0, 0, 1, 1, 1, …`: blocks of length 1, 2, 3, …
    LinearBlocks,
    /// `0, 1, 1, 0, 0, 0, 0, …`: alternating blocks of length 1, 2, 4, 8, …
    DoublingBlocks,
    /// `1, 2, 3, …`
    Ramp,
}

impl Generator {
    pub fn from_name(name: &str) -> Result<Self, BanachError> {
        match name {
            "linear_blocks" => Ok(Generator::LinearBlocks),
            "doubling_blocks" => Ok(Generator::DoublingBlocks),
            "ramp" => Ok(Generator::Ramp),
            other => Err(BanachError::UnknownGenerator(other.to_string())),
        }
    }

    pub fn is_bounded(self) -> bool {
        !matches!(self, Generator::Ramp)
    }

    /// The first `len` terms.
    pub fn terms(self, len: usize) -> Vec<BigRational> {
        let mut out = Vec::with_capacity(len);
        match self {
            Generator::LinearBlocks => {
                let mut j = 1;
                while out.len() < len {
                    out.extend(std::iter::repeat_n(0, j).chain(std::iter::repeat_n(1, j)));
                    j += 1;
                }
            }
            Generator::DoublingBlocks => {
                let (mut j, mut bit) = (1, 0);
                while out.len() < len {
                    out.extend(std::iter::repeat_n(bit, j));
                    j *= 2;
                    bit ^= 1;
                }
            }
            Generator::Ramp => out.extend(1..=len as i64),
        }
        out.truncate(len);
        out.into_iter().map(|v| BigRational::from_integer(v.into())).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tail {
    Constant(BigRational),
    Periodic(Vec<BigRational>),
    Generator(Generator),
}

/// `x_1..x_N` followed by an optional tail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceWindow {
    values: Vec<BigRational>,
    tail: Option<Tail>,
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

impl SequenceWindow {
    pub fn new(values: Vec<BigRational>, tail: Option<Tail>) -> Result<Self, BanachError> {
        if values.is_empty() && tail.is_none() {
            return Err(BanachError::Empty);
        }
        if matches!(&tail, Some(Tail::Periodic(p)) if p.is_empty()) {
            return Err(BanachError::EmptyPattern);
        }
        Ok(SequenceWindow { values, tail })
    }

    pub fn constant(c: BigRational) -> Self {
        SequenceWindow { values: Vec::new(), tail: Some(Tail::Constant(c)) }
    }

    pub fn periodic(pattern: Vec<BigRational>) -> Result<Self, BanachError> {
        SequenceWindow::new(Vec::new(), Some(Tail::Periodic(pattern)))
    }

    pub fn window(values: Vec<BigRational>) -> Result<Self, BanachError> {
        SequenceWindow::new(values, None)
    }

    pub fn from_integers(values: &[i64], tail: Option<Tail>) -> Result<Self, BanachError> {
        SequenceWindow::new(values.iter().map(|&v| q(v)).collect(), tail)
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn tail(&self) -> Option<&Tail> {
        self.tail.as_ref()
    }

    /// The repeating block of a constant or periodic tail.
    fn pattern(&self) -> Option<Vec<BigRational>> {
        match &self.tail {
            Some(Tail::Constant(c)) => Some(vec![c.clone()]),
            Some(Tail::Periodic(p)) => Some(p.clone()),
            _ => None,
        }
    }

    /// Constant and periodic tails are the exactly checkable class.
    pub fn is_exact(&self) -> bool {
        self.pattern().is_some()
    }

    /// The first `len` terms; `None` past the end of a bare window.
    pub fn prefix(&self, len: usize) -> Option<Vec<BigRational>> {
        let mut out: Vec<BigRational> = self.values.iter().take(len).cloned().collect();
        let rest = len.saturating_sub(out.len());
        match &self.tail {
            _ if rest == 0 => {}
            None => return None,
            Some(Tail::Generator(g)) => out.extend(g.terms(rest)),
            Some(_) => {
                let p = self.pattern().expect("periodic or constant");
                out.extend((0..rest).map(|j| p[j % p.len()].clone()));
            }
        }
        Some(out)
    }

    /// `x_{n+1}` as a sequence in `n`.
    pub fn shift(&self) -> Result<Self, BanachError> {
        if let Some((_, rest)) = self.values.split_first() {
            return SequenceWindow::new(rest.to_vec(), self.tail.clone());
        }
        match &self.tail {
            Some(Tail::Periodic(p)) => {
                let mut p = p.clone();
                p.rotate_left(1);
                Ok(SequenceWindow { values: Vec::new(), tail: Some(Tail::Periodic(p)) })
            }
            Some(Tail::Constant(_)) => Ok(self.clone()),
            Some(Tail::Generator(g)) => Err(BanachError::NotExact(format!("cannot shift the generator {g:?} exactly"))),
            None => Err(BanachError::Empty),
        }
    }

    /// `a x + b y`, for sequences in the exact class.
    pub fn combine(a: &BigRational, x: &Self, b: &BigRational, y: &Self) -> Result<Self, BanachError> {
        let (px, py) = match (x.pattern(), y.pattern()) {
            (Some(px), Some(py)) => (px, py),
            _ => return Err(BanachError::NotExact("linear combinations need constant or periodic tails".into())),
        };
        let start = x.values.len().max(y.values.len());
        let period = px.len().lcm(&py.len());
        let xs = x.prefix(start + period).expect("tail present");
        let ys = y.prefix(start + period).expect("tail present");
        let mix: Vec<BigRational> = xs.iter().zip(&ys).map(|(u, v)| a * u + b * v).collect();
        let (window, pattern) = mix.split_at(start);
        SequenceWindow::new(window.to_vec(), Some(Tail::Periodic(pattern.to_vec())))
    }

    pub fn is_nonnegative(&self) -> Option<bool> {
        let p = self.pattern()?;
        Some(self.values.iter().chain(&p).all(|v| !v.is_negative()))
    }

    pub fn from_json(text: &str) -> Result<Self, BanachError> {
        let doc: Value = serde_json::from_str(text).map_err(|e| BanachError::Format(e.to_string()))?;
        let window = match doc.get("window") {
            None | Some(Value::Null) => Vec::new(),
            Some(Value::Array(xs)) => xs.iter().map(parse_number).collect::<Result<_, _>>()?,
            Some(_) => return Err(BanachError::Format("`window` must be an array".into())),
        };
        let tail = match doc.get("tail") {
            None | Some(Value::Null) => None,
            Some(t) => Some(parse_tail(t)?),
        };
        SequenceWindow::new(window, tail)
    }
}

/// Integers, decimals (converted exactly) or strings such as `"3/4"`.
fn parse_number(v: &Value) -> Result<BigRational, BanachError> {
    match v {
        Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(q(i))
            } else {
                n.as_f64()
                    .and_then(BigRational::from_f64)
                    .ok_or_else(|| BanachError::Format(format!("`{n}` is not a finite number")))
            }
        }
        Value::String(s) => {
            let bad = || BanachError::Format(format!("`{s}` is not a rational"));
            match s.split_once('/') {
                Some((n, d)) => {
                    let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                    let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                    if d.is_zero() {
                        return Err(bad());
                    }
                    Ok(BigRational::new(n, d))
                }
                None => s.trim().parse::<BigInt>().map(BigRational::from_integer).map_err(|_| bad()),
            }
        }
        other => Err(BanachError::Format(format!("expected a number, found {other}"))),
    }
}

fn parse_tail(t: &Value) -> Result<Tail, BanachError> {
    let kind = t.get("kind").and_then(Value::as_str).ok_or_else(|| BanachError::Format("tail needs a `kind`".into()))?;
    match kind {
        "constant" => {
            let v = t.get("value").ok_or_else(|| BanachError::Format("constant tail needs a `value`".into()))?;
            Ok(Tail::Constant(parse_number(v)?))
        }
        "periodic" => match t.get("pattern") {
            Some(Value::Array(xs)) => Ok(Tail::Periodic(xs.iter().map(parse_number).collect::<Result<_, _>>()?)),
            _ => Err(BanachError::Format("periodic tail needs a `pattern` array".into())),
        },
        "generator" => {
            let name = t.get("name").and_then(Value::as_str).ok_or_else(|| BanachError::Format("generator tail needs a `name`".into()))?;
            Ok(Tail::Generator(Generator::from_name(name)?))
        }
        other => Err(BanachError::Format(format!("unknown tail kind `{other}`"))),
    }
}

/// Exact prefix means `t_n = (x_1 + … + x_n) / n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CesaroMeans {
    #[serde(serialize_with = "rationals")]
    pub means: Vec<BigRational>,
    /// `lim t_n` when a constant or periodic tail determines it.
    #[serde(serialize_with = "opt_rational")]
    pub limit: Option<BigRational>,
}

pub fn cesaro_prefix(terms: &[BigRational]) -> Vec<BigRational> {
    let mut sum = BigRational::zero();
    terms
        .iter()
        .enumerate()
        .map(|(i, x)| {
            sum += x;
            &sum / q(i as i64 + 1)
        })
        .collect()
}

/// Means over the window, plus a few tail periods when a tail is declared;
/// the limit is the period average of a constant or periodic tail.
pub fn cesaro(x: &SequenceWindow) -> CesaroMeans {
    let n = x.values.len();
    let len = match &x.tail {
        None => n,
        Some(Tail::Generator(_)) => n + 64,
        Some(_) => n + 16 * x.pattern().map_or(1, |p| p.len()),
    };
    let terms = x.prefix(len).expect("length within the described sequence");
    let limit = x.pattern().map(|p| average(&p));
    CesaroMeans { means: cesaro_prefix(&terms), limit }
}

fn average(xs: &[BigRational]) -> BigRational {
    xs.iter().sum::<BigRational>() / q(xs.len() as i64)
}

fn min_of(xs: &[BigRational]) -> BigRational {
    xs.iter().min().cloned().unwrap_or_else(BigRational::zero)
}

fn max_of(xs: &[BigRational]) -> BigRational {
    xs.iter().max().cloned().unwrap_or_else(BigRational::zero)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum LimitStatus {
    /// Determined exactly by a constant or periodic tail.
    Exact,
    /// The trailing means of a bare window agree within `tolerance`.
    Converged { tolerance: f64 },
    /// A declared tail is unbounded.
    Diverged,
    Undetermined,
}

/// Generalized limit with Baire-style bounds.
///
/// Exact inputs report `inf x ≤ liminf x ≤ L ≤ limsup x ≤ sup x` with every
/// bound exact. Otherwise the bounds are taken over the sampled terms, and
/// `liminf_est`, `limsup_est` bracket the trailing Cesàro means.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitEstimate {
    pub status: LimitStatus,
    #[serde(serialize_with = "opt_rational")]
    pub value: Option<BigRational>,
    #[serde(serialize_with = "rational")]
    pub inf: BigRational,
    #[serde(serialize_with = "rational")]
    pub liminf_est: BigRational,
    #[serde(serialize_with = "rational")]
    pub limsup_est: BigRational,
    #[serde(serialize_with = "rational")]
    pub sup: BigRational,
    /// Terms examined.
    pub sampled: usize,
}

impl LimitEstimate {
    pub fn sandwich_holds(&self) -> bool {
        let inner = match &self.value {
            Some(v) => &self.liminf_est <= v && v <= &self.limsup_est,
            None => self.liminf_est <= self.limsup_est,
        };
        self.inf <= self.liminf_est && inner && self.limsup_est <= self.sup
    }
}

pub fn generalized_limit_estimate(x: &SequenceWindow) -> LimitEstimate {
    if let Some(p) = x.pattern() {
        let all: Vec<BigRational> = x.values.iter().chain(&p).cloned().collect();
        return LimitEstimate {
            status: LimitStatus::Exact,
            value: Some(average(&p)),
            inf: min_of(&all),
            liminf_est: min_of(&p),
            limsup_est: max_of(&p),
            sup: max_of(&all),
            sampled: all.len(),
        };
    }
    let terms = match &x.tail {
        Some(Tail::Generator(_)) => x.prefix(x.values.len() + GENERATOR_HORIZON).expect("generator tail"),
        _ => x.values.clone(),
    };
    let means = cesaro_prefix(&terms);
    // Generator samples are long enough to look back over a full block.
    let look_back = match &x.tail {
        Some(Tail::Generator(_)) => means.len().div_ceil(2),
        _ => means.len().div_ceil(4),
    };
    let trailing = &means[means.len() - look_back..];
    let (lo, hi) = (min_of(trailing), max_of(trailing));
    let status = match &x.tail {
        Some(Tail::Generator(g)) if !g.is_bounded() => LimitStatus::Diverged,
        Some(Tail::Generator(_)) => LimitStatus::Undetermined,
        _ => {
            let spread = BigRational::from_f64(WINDOW_TOLERANCE).expect("finite");
            if &hi - &lo <= spread {
                LimitStatus::Converged { tolerance: WINDOW_TOLERANCE }
            } else {
                LimitStatus::Undetermined
            }
        }
    };
    let value = matches!(status, LimitStatus::Converged { .. }).then(|| means.last().cloned()).flatten();
    LimitEstimate {
        status,
        value,
        inf: min_of(&terms),
        liminf_est: lo,
        limsup_est: hi,
        sup: max_of(&terms),
        sampled: terms.len(),
    }
}

/// The exact generalized limit, for constant and periodic tails.
pub fn exact_limit(x: &SequenceWindow) -> Result<BigRational, BanachError> {
    x.pattern()
        .map(|p| average(&p))
        .ok_or_else(|| BanachError::NotExact("the limit is exact only for constant or periodic tails".into()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub inputs: usize,
    pub linear_cases: usize,
    pub linearity: bool,
    pub positivity: bool,
    pub shift_invariance: bool,
    pub normalization: bool,
    pub sandwich: bool,
}

impl AxiomReport {
    pub fn holds(&self) -> bool {
        self.linearity && self.positivity && self.shift_invariance && self.normalization && self.sandwich
    }
}

/// Checks the Banach-limit axioms on `inputs`, exactly: linearity over all
/// ordered pairs and every coefficient pair in `coefficients`, positivity
/// for nonnegative inputs, shift invariance, `L(1) = 1`, and the Baire
/// sandwich. Inputs outside the exact class are rejected.
pub fn banach_axioms_check(
    inputs: &[SequenceWindow],
    coefficients: &[(BigRational, BigRational)],
) -> Result<AxiomReport, BanachError> {
    let limits: Vec<BigRational> = inputs.iter().map(exact_limit).collect::<Result<_, _>>()?;
    let mut report = AxiomReport {
        inputs: inputs.len(),
        linear_cases: 0,
        linearity: true,
        positivity: true,
        shift_invariance: true,
        normalization: exact_limit(&SequenceWindow::constant(q(1)))? == q(1),
        sandwich: true,
    };
    for (i, x) in inputs.iter().enumerate() {
        report.shift_invariance &= exact_limit(&x.shift()?)? == limits[i];
        if x.is_nonnegative() == Some(true) {
            report.positivity &= !limits[i].is_negative();
        }
        report.sandwich &= generalized_limit_estimate(x).sandwich_holds();
        for (j, y) in inputs.iter().enumerate() {
            for (a, b) in coefficients {
                let mix = SequenceWindow::combine(a, x, b, y)?;
                report.linearity &= exact_limit(&mix)? == a * &limits[i] + b * &limits[j];
                report.linear_cases += 1;
            }
        }
    }
    Ok(report)
}

fn rational<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn opt_rational<S: Serializer>(v: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_some(&v.to_string()),
        None => s.serialize_none(),
    }
}

fn rationals<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn alternating() -> SequenceWindow {
        SequenceWindow::periodic(vec![q(0), q(1)]).unwrap()
    }

    #[test]
    fn constant_one() {
        let one = SequenceWindow::constant(q(1));
        let c = cesaro(&one);
        assert!(c.means.iter().all(|m| m == &q(1)));
        assert_eq!(c.limit, Some(q(1)));
        assert_eq!(generalized_limit_estimate(&one).value, Some(q(1)));
    }

    #[test]
    fn alternating_limit_is_half() {
        let e = generalized_limit_estimate(&alternating());
        assert_eq!(e.status, LimitStatus::Exact);
        assert_eq!(e.value, Some(r(1, 2)));
        assert_eq!(exact_limit(&alternating().shift().unwrap()).unwrap(), r(1, 2));
        assert_eq!(cesaro(&alternating()).means[..4], [q(0), r(1, 2), r(1, 3), r(1, 2)]);
    }

    #[test]
    fn window_does_not_change_the_limit() {
        let x = SequenceWindow::from_integers(&[7, -3, 12], Some(Tail::Periodic(vec![q(2), q(4)]))).unwrap();
        let e = generalized_limit_estimate(&x);
        assert_eq!(e.value, Some(q(3)));
        assert_eq!((&e.inf, &e.sup), (&q(-3), &q(12)));
        assert!(e.sandwich_holds());
    }

    #[test]
    fn ramp_window_is_undetermined() {
        let x = SequenceWindow::from_integers(&(1..=40).collect::<Vec<_>>(), None).unwrap();
        let e = generalized_limit_estimate(&x);
        assert_eq!(e.status, LimitStatus::Undetermined);
        assert_eq!(e.value, None);
        assert!(e.sandwich_holds());
    }

    #[test]
    fn converging_window() {
        let x = SequenceWindow::from_integers(&[5; 12], None).unwrap();
        let e = generalized_limit_estimate(&x);
        assert_eq!(e.status, LimitStatus::Converged { tolerance: WINDOW_TOLERANCE });
        assert_eq!(e.value, Some(q(5)));
    }

    #[test]
    fn generators() {
        assert_eq!(Generator::LinearBlocks.terms(9), [0, 1, 0, 0, 1, 1, 0, 0, 0].map(q).to_vec());
        assert_eq!(Generator::DoublingBlocks.terms(7), [0, 1, 1, 0, 0, 0, 0].map(q).to_vec());
        let doubling = SequenceWindow::new(vec![], Some(Tail::Generator(Generator::DoublingBlocks))).unwrap();
        let e = generalized_limit_estimate(&doubling);
        assert_eq!(e.status, LimitStatus::Undetermined);
        assert!(e.limsup_est.clone() - e.liminf_est.clone() > r(1, 4), "{e:?}");
        let ramp = SequenceWindow::new(vec![], Some(Tail::Generator(Generator::Ramp))).unwrap();
        assert_eq!(generalized_limit_estimate(&ramp).status, LimitStatus::Diverged);
        let blocks = SequenceWindow::new(vec![], Some(Tail::Generator(Generator::LinearBlocks))).unwrap();
        let e = generalized_limit_estimate(&blocks);
        assert_eq!(e.status, LimitStatus::Undetermined);
        assert!(e.sandwich_holds());
    }

    #[test]
    fn combine_aligns_windows_and_periods() {
        let x = SequenceWindow::from_integers(&[1], Some(Tail::Periodic(vec![q(0), q(1)]))).unwrap();
        let y = SequenceWindow::from_integers(&[2, 2], Some(Tail::Periodic(vec![q(1), q(2), q(3)]))).unwrap();
        let z = SequenceWindow::combine(&q(1), &x, &q(2), &y).unwrap();
        let expect: Vec<BigRational> =
            x.prefix(20).unwrap().iter().zip(y.prefix(20).unwrap()).map(|(a, b)| a + q(2) * b).collect();
        assert_eq!(z.prefix(20).unwrap(), expect);
        assert_eq!(exact_limit(&z).unwrap(), r(1, 2) + q(4));
    }

    #[test]
    fn axioms_hold_on_tailed_inputs() {
        let inputs = vec![
            alternating(),
            SequenceWindow::constant(q(1)),
            SequenceWindow::from_integers(&[3, -1, 4], Some(Tail::Periodic(vec![r(1, 3), q(-2), q(5)]))).unwrap(),
            SequenceWindow::new(vec![q(1), r(1, 2), r(1, 3), r(1, 4)], Some(Tail::Constant(q(0)))).unwrap(),
        ];
        let coeffs = vec![(q(1), q(1)), (r(2, 3), q(-5)), (q(0), r(7, 2))];
        let report = banach_axioms_check(&inputs, &coeffs).unwrap();
        assert!(report.holds(), "{report:?}");
        assert_eq!(report.linear_cases, 48);
    }

    #[test]
    fn axioms_reject_bare_windows() {
        let x = SequenceWindow::from_integers(&[1, 2, 3], None).unwrap();
        assert!(matches!(banach_axioms_check(&[x], &[]), Err(BanachError::NotExact(_))));
    }

    #[test]
    fn json_input() {
        let x = SequenceWindow::from_json(r#"{"window": [1, "1/2", 0.25], "tail": {"kind": "periodic", "pattern": [0, 1]}}"#)
            .unwrap();
        assert_eq!(x.values(), &[q(1), r(1, 2), r(1, 4)]);
        assert_eq!(exact_limit(&x).unwrap(), r(1, 2));
        let c = SequenceWindow::from_json(r#"{"tail": {"kind": "constant", "value": "-2/3"}}"#).unwrap();
        assert_eq!(exact_limit(&c).unwrap(), r(-2, 3));
        assert!(matches!(SequenceWindow::from_json(r#"{"window": []}"#), Err(BanachError::Empty)));
        assert!(matches!(
            SequenceWindow::from_json(r#"{"tail": {"kind": "generator", "name": "zigzag"}}"#),
            Err(BanachError::UnknownGenerator(_))
        ));
        assert!(matches!(SequenceWindow::from_json(r#"{"window": ["1/0"]}"#), Err(BanachError::Format(_))));
    }

    #[test]
    fn estimate_serializes_rationals_as_strings() {
        let text = serde_json::to_string(&generalized_limit_estimate(&alternating())).unwrap();
        assert!(text.contains(r#""value":"1/2""#), "{text}");
        assert!(text.contains(r#""status":{"kind":"exact"}"#), "{text}");
    }
}
