use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::chord::ChordDiagram;
use crate::error::Result;
use crate::linalg::{format_rational, Rational};
use crate::tensor::DiagramEvaluator;

/// A rational combination of products of chord diagrams.
///
/// Products are stored as sorted factor lists, so equal products share one
/// key; zero coefficients are never stored. The empty product is `1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DiagramCombination {
    terms: BTreeMap<Vec<ChordDiagram>, Rational>,
}

impl DiagramCombination {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        let mut c = Self::zero();
        c.add_term(Vec::new(), Rational::one());
        c
    }

    /// `coeff * D` for each entry.
    pub fn from_single_factors(terms: BTreeMap<ChordDiagram, Rational>) -> Self {
        let mut c = Self::zero();
        for (d, coeff) in terms {
            c.add_term(vec![d], coeff);
        }
        c
    }

    pub fn add_term(&mut self, mut factors: Vec<ChordDiagram>, coeff: Rational) {
        factors.sort();
        let slot = self.terms.entry(factors).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.retain(|_, c| !c.is_zero());
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[ChordDiagram], &Rational)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, factors: &[ChordDiagram]) -> Rational {
        let mut key = factors.to_vec();
        key.sort();
        self.terms.get(&key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn multiply(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let mut factors = a.clone();
                factors.extend(b.iter().cloned());
                out.add_term(factors, ca * cb);
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.add_term(k.clone(), c * factor);
        }
        out
    }

    /// Every distinct diagram appearing in some product.
    pub fn diagrams(&self) -> Vec<ChordDiagram> {
        let mut all: Vec<ChordDiagram> = self.terms.keys().flatten().cloned().collect();
        all.sort();
        all.dedup();
        all
    }

    /// `Σ coeff · Π W(factor)`, evaluating each distinct diagram once.
    pub fn evaluate(&self, evaluator: &DiagramEvaluator) -> Result<Rational> {
        let mut values = BTreeMap::new();
        for d in self.diagrams() {
            let v = evaluator.evaluate(&d)?;
            values.insert(d, v);
        }
        let mut total = Rational::zero();
        for (factors, coeff) in &self.terms {
            let mut term = coeff.clone();
            for d in factors {
                term *= &values[d];
            }
            total += term;
        }
        Ok(total)
    }
}

/// One term per line: `coeff [D1] [D2] ...`; the zero combination prints `0`.
impl fmt::Display for DiagramCombination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return writeln!(f, "0");
        }
        for (factors, coeff) in &self.terms {
            write!(f, "{}", format_rational(coeff))?;
            for d in factors {
                write!(f, " [{d}]")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}
