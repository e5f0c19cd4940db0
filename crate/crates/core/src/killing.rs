//! Killing form `B_ij = Σ_{a,b} μ_ia^b μ_jb^a` and its inverse tensor θ.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lie_algebra::StructureConstants;
use crate::linalg::{det_exact, invert_exact, Rational, RationalMatrix};

/// The Killing matrix together with `θ = B⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KillingData {
    pub b: RationalMatrix,
    pub theta: RationalMatrix,
}

fn ensure_valid(sc: &StructureConstants) -> Result<()> {
    let report = sc.validate();
    if report.is_empty() {
        Ok(())
    } else {
        Err(Error::MalformedInput(format!(
            "not a Lie algebra: {}",
            report.to_string().trim_end()
        )))
    }
}

/// `B_ij = tr(ad_i ∘ ad_j)`.
pub fn killing_matrix(sc: &StructureConstants) -> Result<RationalMatrix> {
    ensure_valid(sc)?;
    Ok(killing_matrix_unchecked(sc))
}

pub(crate) fn killing_matrix_unchecked(sc: &StructureConstants) -> RationalMatrix {
    let n = sc.dim();
    let full = sc.full_entries();
    // (second input, output) -> [(first input, value)]
    let mut by_tail: BTreeMap<(usize, usize), Vec<(usize, &Rational)>> = BTreeMap::new();
    for (j, b, a, v) in &full {
        by_tail.entry((*b, *a)).or_default().push((*j, v));
    }
    let mut b = RationalMatrix::zeros(n, n);
    for (i, a, bb, v) in &full {
        // μ_ia^b μ_jb^a
        if let Some(list) = by_tail.get(&(*bb, *a)) {
            for (j, w) in list {
                b[(*i, *j)] += v * *w;
            }
        }
    }
    b
}

/// Killing matrix and θ; fails with `NotSemisimple` when `det B = 0`.
pub fn casimir_theta(sc: &StructureConstants) -> Result<KillingData> {
    let b = killing_matrix(sc)?;
    let theta = match invert_exact(&b) {
        Ok(t) => t,
        Err(Error::SingularMatrix) => {
            return Err(Error::NotSemisimple("Killing form is degenerate".into()))
        }
        Err(e) => return Err(e),
    };
    Ok(KillingData { b, theta })
}

pub fn is_semisimple(sc: &StructureConstants) -> Result<bool> {
    let b = killing_matrix(sc)?;
    Ok(!det_exact(&b)?.is_zero())
}

/// `Σ_b μ_ki^b B_bj + μ_kj^b B_ib`, which vanishes for an invariant form.
pub fn ad_invariance_defect(sc: &StructureConstants, b: &RationalMatrix) -> Vec<(usize, usize, usize)> {
    let n = sc.dim();
    let mut bad = Vec::new();
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let mut s = Rational::zero();
                for x in 0..n {
                    s += sc.get(k, i, x) * &b[(x, j)] + sc.get(k, j, x) * &b[(i, x)];
                }
                if !s.is_zero() {
                    bad.push((k, i, j));
                }
            }
        }
    }
    bad
}
