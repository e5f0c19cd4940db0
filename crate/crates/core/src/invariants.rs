//! Invariant vectors, algebra comparison and the chord-count bound.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Pow};
use rayon::prelude::*;

use crate::chord::{enumerate_diagrams, ChordDiagram, Symmetry};
use crate::error::{Error, Result};
use crate::killing::casimir_theta;
use crate::lie_algebra::StructureConstants;
use crate::linalg::{format_rational, rat, Rational};
use crate::tensor::{DiagramEvaluator, FloatEvaluator};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Exact,
    Float,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" => Ok(Mode::Exact),
            "float" => Ok(Mode::Float),
            other => Err(Error::MalformedInput(format!("unknown mode {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Exact(Rational),
    Float(f64),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Exact(r) => write!(f, "{}", format_rational(r)),
            Value::Float(x) => write!(f, "{x:e}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct InvariantVector {
    pub label: String,
    pub max_chords: usize,
    /// Rotation-canonical diagrams, by chord count then lexicographically.
    pub values: Vec<(ChordDiagram, Value)>,
}

impl InvariantVector {
    pub fn get(&self, d: &ChordDiagram) -> Option<&Value> {
        let d = d.canonical(Symmetry::Rotation);
        self.values.iter().find(|(e, _)| *e == d).map(|(_, v)| v)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `diagram,value` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("diagram,value\n");
        for (d, v) in &self.values {
            out.push_str(&format!("\"{d}\",{v}\n"));
        }
        out
    }
}

fn diagrams_up_to(max_chords: usize) -> Vec<ChordDiagram> {
    (1..=max_chords)
        .flat_map(|m| enumerate_diagrams(m, Symmetry::Rotation))
        .collect()
}

/// Values of every rotation-canonical diagram with `1..=max_chords` chords.
///
/// Diagrams are evaluated in parallel on the current rayon pool; the order of
/// the result does not depend on it.
pub fn invariant_vector(sc: &StructureConstants, max_chords: usize, mode: Mode) -> Result<InvariantVector> {
    if max_chords == 0 {
        return Err(Error::MalformedInput("max_chords must be at least 1".into()));
    }
    let kd = casimir_theta(sc)?;
    let diagrams = diagrams_up_to(max_chords);
    let values: Vec<Value> = match mode {
        Mode::Exact => {
            let ev = DiagramEvaluator::new(sc, &kd)?;
            diagrams
                .par_iter()
                .map(|d| ev.evaluate(d).map(Value::Exact))
                .collect::<Result<_>>()?
        }
        Mode::Float => {
            let ev = FloatEvaluator::new(sc, &kd)?;
            diagrams
                .par_iter()
                .map(|d| ev.evaluate(d).map(Value::Float))
                .collect::<Result<_>>()?
        }
    };
    Ok(InvariantVector {
        label: String::new(),
        max_chords,
        values: diagrams.into_iter().zip(values).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Distinct {
        witness: ChordDiagram,
        value_a: Rational,
        value_b: Rational,
    },
    EqualUpTo(usize),
    IsomorphyCertified,
}

impl Verdict {
    pub fn is_distinct(&self) -> bool {
        matches!(self, Verdict::Distinct { .. })
    }

    /// Classification without the witness details.
    pub fn kind(&self) -> &'static str {
        match self {
            Verdict::Distinct { .. } => "distinct",
            Verdict::EqualUpTo(_) => "equal",
            Verdict::IsomorphyCertified => "isomorphic",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Distinct {
                witness,
                value_a,
                value_b,
            } => write!(
                f,
                "distinct witness={witness} a={} b={}",
                format_rational(value_a),
                format_rational(value_b)
            ),
            Verdict::EqualUpTo(m) => write!(f, "equal up to {m} chords"),
            Verdict::IsomorphyCertified => write!(f, "isomorphic"),
        }
    }
}

/// How [`compare_algebras_with`] searches for a witness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Strategy {
    /// Exact values, chord count by chord count.
    #[default]
    Exact,
    /// A double-precision pass over all diagrams first; each float
    /// difference is re-checked exactly before it counts. Agreement still
    /// needs the exact pass.
    FloatScreen,
}

/// Relative gap above which the float pass asks for an exact check.
pub const FLOAT_SCREEN_TOLERANCE: f64 = 1e-9;

pub fn compare_algebras(a: &StructureConstants, b: &StructureConstants, max_chords: usize) -> Result<Verdict> {
    compare_algebras_with(a, b, max_chords, Strategy::Exact)
}

pub fn compare_algebras_with(
    a: &StructureConstants,
    b: &StructureConstants,
    max_chords: usize,
    strategy: Strategy,
) -> Result<Verdict> {
    if max_chords == 0 {
        return Err(Error::MalformedInput("max_chords must be at least 1".into()));
    }
    let (ka, kb) = (casimir_theta(a)?, casimir_theta(b)?);
    if a.dim() != b.dim() {
        return Ok(Verdict::Distinct {
            witness: ChordDiagram::from_pairs(&[(0, 1)])?,
            value_a: rat(a.dim() as i64),
            value_b: rat(b.dim() as i64),
        });
    }
    let (ea, eb) = (DiagramEvaluator::new(a, &ka)?, DiagramEvaluator::new(b, &kb)?);
    let exact_pair = |d: &ChordDiagram| -> Result<(Rational, Rational)> { Ok((ea.evaluate(d)?, eb.evaluate(d)?)) };
    let distinct = |d: &ChordDiagram, va: Rational, vb: Rational| Verdict::Distinct {
        witness: d.clone(),
        value_a: va,
        value_b: vb,
    };

    if strategy == Strategy::FloatScreen {
        let (fa, fb) = (FloatEvaluator::new(a, &ka)?, FloatEvaluator::new(b, &kb)?);
        for m in 1..=max_chords {
            let diagrams = enumerate_diagrams(m, Symmetry::Rotation);
            let gaps: Vec<bool> = diagrams
                .par_iter()
                .map(|d| {
                    let (x, y) = (fa.evaluate(d)?, fb.evaluate(d)?);
                    let scale = x.abs().max(y.abs()).max(1.0);
                    Ok((x - y).abs() > FLOAT_SCREEN_TOLERANCE * scale)
                })
                .collect::<Result<_>>()?;
            for (d, _) in diagrams.iter().zip(gaps).filter(|(_, g)| *g) {
                let (va, vb) = exact_pair(d)?;
                if va != vb {
                    return Ok(distinct(d, va, vb));
                }
            }
        }
    }

    for m in 1..=max_chords {
        let diagrams = enumerate_diagrams(m, Symmetry::Rotation);
        let values: Vec<(Rational, Rational)> = diagrams.par_iter().map(exact_pair).collect::<Result<_>>()?;
        if let Some((d, (va, vb))) = diagrams.iter().zip(values).find(|(_, (va, vb))| va != vb) {
            return Ok(distinct(d, va, vb));
        }
    }
    let (_, floor) = theorem_bound(a.dim() as u64);
    if BigInt::from(max_chords) >= floor {
        Ok(Verdict::IsomorphyCertified)
    } else {
        Ok(Verdict::EqualUpTo(max_chords))
    }
}

/// `k(n) = (n³ + n²)(n + 1)²(2n + 1)^{2n²} / 8` and its floor.
pub fn theorem_bound(n: u64) -> (Rational, BigInt) {
    let n = BigInt::from(n);
    let n2 = &n * &n;
    let cubic = &n2 * &n + &n2;
    let square = Pow::pow(&n + BigInt::one(), 2u32);
    let exponent = 2u64 * u64::try_from(&n2).expect("bound exponent fits u64");
    let power = Pow::pow(BigInt::from(2) * &n + BigInt::one(), exponent);
    let value = Rational::new(cubic * square * power, BigInt::from(8));
    let floor = value.floor().to_integer();
    (value, floor)
}
