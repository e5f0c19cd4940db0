//! Structure constants `[v_i, v_j] = Σ_k μ_ij^k v_k` and the basis-change action.
//!
//! Indices are 0-based in the API and 1-based in the JSON file format.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{det_exact, format_rational, invert_exact, parse_rational, rat, Rational, RationalMatrix};

/// Sparse antisymmetric structure-constant tensor. Only `i < j` is stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureConstants {
    n: usize,
    mu: BTreeMap<(usize, usize, usize), Rational>,
}

/// Unchecked entry list, used to validate tensors that may not be antisymmetric.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawStructure {
    pub n: usize,
    pub entries: Vec<(usize, usize, usize, Rational)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    /// `(i, j, k)` with `i <= j` and `μ_ij^k + μ_ji^k != 0`.
    pub antisymmetry: Vec<(usize, usize, usize)>,
    /// `(i, j, k, b)` with a nonzero Jacobi residual.
    pub jacobi: Vec<(usize, usize, usize, usize)>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.antisymmetry.is_empty() && self.jacobi.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "ok");
        }
        for (i, j, k) in &self.antisymmetry {
            writeln!(f, "antisymmetry ({},{},{})", i + 1, j + 1, k + 1)?;
        }
        for (i, j, k, b) in &self.jacobi {
            writeln!(f, "jacobi ({},{},{},{})", i + 1, j + 1, k + 1, b + 1)?;
        }
        Ok(())
    }
}

/// Checks antisymmetry and the Jacobi identity
/// `μ_ij^a μ_ak^b + μ_jk^a μ_ai^b + μ_ki^a μ_aj^b = 0`.
pub fn validate_structure(raw: &RawStructure) -> Result<ValidationReport> {
    let n = raw.n;
    let mut dense: BTreeMap<(usize, usize, usize), Rational> = BTreeMap::new();
    for (i, j, k, v) in &raw.entries {
        if *i >= n || *j >= n || *k >= n {
            return Err(Error::MalformedInput(format!(
                "index ({i},{j},{k}) out of range for dimension {n}"
            )));
        }
        *dense.entry((*i, *j, *k)).or_insert_with(Rational::zero) += v;
    }
    dense.retain(|_, v| !v.is_zero());

    let get = |i, j, k| dense.get(&(i, j, k)).cloned().unwrap_or_else(Rational::zero);
    let mut report = ValidationReport::default();
    let mut keys: Vec<(usize, usize, usize)> = dense
        .keys()
        .map(|&(i, j, k)| (i.min(j), i.max(j), k))
        .collect();
    keys.sort_unstable();
    keys.dedup();
    for (i, j, k) in keys {
        if !(get(i, j, k) + get(j, i, k)).is_zero() {
            report.antisymmetry.push((i, j, k));
        }
    }

    // rows[(i, j)] = Σ_k μ_ij^k e_k, sparse
    let mut rows: BTreeMap<(usize, usize), Vec<(usize, Rational)>> = BTreeMap::new();
    for (&(i, j, k), v) in &dense {
        rows.entry((i, j)).or_default().push((k, v.clone()));
    }
    let bracket_then = |i: usize, j: usize, k: usize, acc: &mut BTreeMap<usize, Rational>| {
        // [[e_i, e_j], e_k]
        if let Some(row) = rows.get(&(i, j)) {
            for (a, x) in row {
                if let Some(row2) = rows.get(&(*a, k)) {
                    for (b, y) in row2 {
                        *acc.entry(*b).or_insert_with(Rational::zero) += x * y;
                    }
                }
            }
        }
    };
    let alternating = report.antisymmetry.is_empty();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if alternating && !(i < j && j < k) {
                    continue;
                }
                let mut acc = BTreeMap::new();
                bracket_then(i, j, k, &mut acc);
                bracket_then(j, k, i, &mut acc);
                bracket_then(k, i, j, &mut acc);
                for (b, v) in acc {
                    if !v.is_zero() {
                        report.jacobi.push((i, j, k, b));
                    }
                }
            }
        }
    }
    Ok(report)
}

impl StructureConstants {
    /// The abelian algebra of dimension `n`.
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            mu: BTreeMap::new(),
        }
    }

    /// Builds from `i < j` entries. Zero values are dropped; duplicates,
    /// `i >= j` and out-of-range indices are rejected.
    pub fn from_upper_entries(
        n: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, Rational)>,
    ) -> Result<Self> {
        if n == 0 {
            return Err(Error::MalformedInput("dimension must be positive".into()));
        }
        let mut mu = BTreeMap::new();
        for (i, j, k, v) in entries {
            if i >= n || j >= n || k >= n {
                return Err(Error::MalformedInput(format!(
                    "index ({},{},{}) out of range for dimension {n}",
                    i + 1,
                    j + 1,
                    k + 1
                )));
            }
            if i >= j {
                return Err(Error::MalformedInput(format!(
                    "entry ({},{},{}) must have i < j",
                    i + 1,
                    j + 1,
                    k + 1
                )));
            }
            if mu.contains_key(&(i, j, k)) {
                return Err(Error::MalformedInput(format!(
                    "duplicate entry ({},{},{})",
                    i + 1,
                    j + 1,
                    k + 1
                )));
            }
            if !v.is_zero() {
                mu.insert((i, j, k), v);
            }
        }
        Ok(Self { n, mu })
    }

    /// Builds from an arbitrary bracket table, requiring antisymmetry.
    pub fn from_raw(raw: &RawStructure) -> Result<Self> {
        let report = validate_structure(raw)?;
        if !report.antisymmetry.is_empty() {
            return Err(Error::MalformedInput(format!(
                "not antisymmetric: {}",
                report.to_string().trim_end()
            )));
        }
        // antisymmetry holds, so the i<j value is either the listed sum or minus the (j,i) sum
        let mut upper: BTreeMap<(usize, usize, usize), Rational> = BTreeMap::new();
        let mut lower: BTreeMap<(usize, usize, usize), Rational> = BTreeMap::new();
        for (i, j, k, v) in &raw.entries {
            if i < j {
                *upper.entry((*i, *j, *k)).or_insert_with(Rational::zero) += v;
            } else if i > j {
                *lower.entry((*j, *i, *k)).or_insert_with(Rational::zero) -= v;
            }
        }
        let mut acc = lower;
        acc.extend(upper);
        Self::from_upper_entries(raw.n, acc.into_iter().map(|((i, j, k), v)| (i, j, k, v)))
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    /// `μ_ij^k`, with the `i > j` value implied by antisymmetry.
    pub fn get(&self, i: usize, j: usize, k: usize) -> Rational {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Less => self.mu.get(&(i, j, k)).cloned().unwrap_or_else(Rational::zero),
            Greater => -self.mu.get(&(j, i, k)).cloned().unwrap_or_else(Rational::zero),
            Equal => Rational::zero(),
        }
    }

    /// Stored `i < j` entries in lexicographic order.
    pub fn upper_entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Rational)> {
        self.mu.iter().map(|(&(i, j, k), v)| (i, j, k, v))
    }

    /// Every nonzero `μ_ij^k`, both orders, lexicographic.
    pub fn full_entries(&self) -> Vec<(usize, usize, usize, Rational)> {
        let mut out: Vec<_> = self
            .mu
            .iter()
            .flat_map(|(&(i, j, k), v)| [(i, j, k, v.clone()), (j, i, k, -v.clone())])
            .collect();
        out.sort_by_key(|a| (a.0, a.1, a.2));
        out
    }

    pub fn nnz(&self) -> usize {
        self.mu.len()
    }

    pub fn is_abelian(&self) -> bool {
        self.mu.is_empty()
    }

    pub fn to_raw(&self) -> RawStructure {
        RawStructure {
            n: self.n,
            entries: self.full_entries(),
        }
    }

    pub fn validate(&self) -> ValidationReport {
        validate_structure(&self.to_raw()).expect("stored indices are in range")
    }

    pub fn to_file(&self) -> AlgebraFile {
        AlgebraFile {
            n: self.n,
            mu: self
                .upper_entries()
                .map(|(i, j, k, v)| (i + 1, j + 1, k + 1, format_rational(v)))
                .collect(),
        }
    }

    pub fn from_file(file: &AlgebraFile) -> Result<Self> {
        let mut entries = Vec::with_capacity(file.mu.len());
        for (i, j, k, v) in &file.mu {
            if *i == 0 || *j == 0 || *k == 0 {
                return Err(Error::MalformedInput("indices are 1-based".into()));
            }
            entries.push((i - 1, j - 1, k - 1, parse_rational(v)?));
        }
        Self::from_upper_entries(file.n, entries)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: AlgebraFile = serde_json::from_str(text)
            .map_err(|e| Error::MalformedInput(format!("algebra json: {e}")))?;
        Self::from_file(&file)
    }
}

/// On-disk algebra: `{"n": 3, "mu": [[1, 2, 3, "1/2"], ...]}` with `i < j`.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub n: usize,
    pub mu: Vec<(usize, usize, usize, String)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassicalFamily {
    SpecialLinear,
    Orthogonal,
    Symplectic,
}

impl std::str::FromStr for ClassicalFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sl" | "special_linear" => Ok(Self::SpecialLinear),
            "so" | "orthogonal" => Ok(Self::Orthogonal),
            "sp" | "symplectic" => Ok(Self::Symplectic),
            other => Err(Error::MalformedInput(format!("unknown family {other:?}"))),
        }
    }
}

/// Square integer matrix used only while building classical algebras.
#[derive(Clone, PartialEq, Eq)]
struct IntMatrix {
    size: usize,
    a: Vec<i64>,
}

impl IntMatrix {
    fn zero(size: usize) -> Self {
        Self {
            size,
            a: vec![0; size * size],
        }
    }

    fn unit(size: usize, p: usize, q: usize) -> Self {
        let mut m = Self::zero(size);
        m.a[p * size + q] = 1;
        m
    }

    fn at(&self, p: usize, q: usize) -> i64 {
        self.a[p * self.size + q]
    }

    fn add_scaled(&mut self, other: &Self, c: i64) {
        for (x, y) in self.a.iter_mut().zip(&other.a) {
            *x += c * y;
        }
    }

    fn commutator(&self, other: &Self) -> Self {
        let s = self.size;
        let mut out = Self::zero(s);
        for p in 0..s {
            for r in 0..s {
                let (x, y) = (self.at(p, r), other.at(p, r));
                if x == 0 && y == 0 {
                    continue;
                }
                for q in 0..s {
                    out.a[p * s + q] += x * other.at(r, q) - y * self.at(r, q);
                }
            }
        }
        out
    }
}

/// A matrix realization: basis matrices plus a coordinate map on the span.
struct MatrixRealization {
    basis: Vec<IntMatrix>,
    coords: Box<dyn Fn(&IntMatrix) -> Vec<i64>>,
}

impl MatrixRealization {
    fn structure_constants(&self) -> StructureConstants {
        let n = self.basis.len();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let c = self.basis[i].commutator(&self.basis[j]);
                let x = (self.coords)(&c);
                // the coordinate map must reproduce the commutator exactly
                let mut back = IntMatrix::zero(c.size);
                for (k, &xk) in x.iter().enumerate() {
                    back.add_scaled(&self.basis[k], xk);
                }
                assert!(back == c, "commutator left the span of the basis");
                for (k, xk) in x.into_iter().enumerate() {
                    if xk != 0 {
                        entries.push((i, j, k, rat(xk)));
                    }
                }
            }
        }
        StructureConstants::from_upper_entries(n, entries).expect("well-formed")
    }
}

/// `sl(m)`: `E_pq` for `p != q` (lexicographic), then `E_pp - E_{p+1,p+1}`.
fn special_linear(m: usize) -> MatrixRealization {
    let mut basis = Vec::new();
    let mut off = Vec::new();
    for p in 0..m {
        for q in 0..m {
            if p != q {
                basis.push(IntMatrix::unit(m, p, q));
                off.push((p, q));
            }
        }
    }
    for p in 0..m - 1 {
        let mut h = IntMatrix::unit(m, p, p);
        h.a[(p + 1) * m + p + 1] = -1;
        basis.push(h);
    }
    let coords = move |x: &IntMatrix| {
        let mut c: Vec<i64> = off.iter().map(|&(p, q)| x.at(p, q)).collect();
        // Σ_p c_p (E_pp - E_{p+1,p+1}) has diagonal entry p equal to c_p - c_{p-1}.
        let mut running = 0;
        for p in 0..m - 1 {
            running += x.at(p, p);
            c.push(running);
        }
        c
    };
    MatrixRealization {
        basis,
        coords: Box::new(coords),
    }
}

/// `so(m)`: `E_pq - E_qp` for `p < q`, lexicographic.
fn orthogonal(m: usize) -> MatrixRealization {
    let mut basis = Vec::new();
    let mut pairs = Vec::new();
    for p in 0..m {
        for q in (p + 1)..m {
            let mut a = IntMatrix::unit(m, p, q);
            a.a[q * m + p] = -1;
            basis.push(a);
            pairs.push((p, q));
        }
    }
    let coords = move |x: &IntMatrix| pairs.iter().map(|&(p, q)| x.at(p, q)).collect();
    MatrixRealization {
        basis,
        coords: Box::new(coords),
    }
}

/// `sp(2r)`: block matrices `[[A, B], [C, -Aᵗ]]` with `B, C` symmetric,
/// preserving `J = [[0, I], [-I, 0]]`. Basis order: the `r²` elements
/// `E_pq - E_{r+q,r+p}`, then `B` parts for `p <= q`, then `C` parts for `p <= q`.
fn symplectic(r: usize) -> MatrixRealization {
    let s = 2 * r;
    let mut basis = Vec::new();
    for p in 0..r {
        for q in 0..r {
            let mut a = IntMatrix::unit(s, p, q);
            a.a[(r + q) * s + r + p] -= 1;
            basis.push(a);
        }
    }
    let mut sym_pairs = Vec::new();
    for p in 0..r {
        for q in p..r {
            sym_pairs.push((p, q));
        }
    }
    for &(p, q) in &sym_pairs {
        let mut b = IntMatrix::unit(s, p, r + q);
        b.a[q * s + r + p] = 1;
        basis.push(b);
    }
    for &(p, q) in &sym_pairs {
        let mut c = IntMatrix::unit(s, r + p, q);
        c.a[(r + q) * s + p] = 1;
        basis.push(c);
    }
    let coords = move |x: &IntMatrix| {
        let mut c = Vec::new();
        for p in 0..r {
            for q in 0..r {
                c.push(x.at(p, q));
            }
        }
        c.extend(sym_pairs.iter().map(|&(p, q)| x.at(p, r + q)));
        c.extend(sym_pairs.iter().map(|&(p, q)| x.at(r + p, q)));
        c
    };
    MatrixRealization {
        basis,
        coords: Box::new(coords),
    }
}

/// Standard integer structure constants for `sl(m)`, `so(m)` or `sp(m)`
/// (`m` even for the symplectic family).
pub fn build_classical(family: ClassicalFamily, m: usize) -> Result<StructureConstants> {
    let realization = match family {
        ClassicalFamily::SpecialLinear if m >= 2 => special_linear(m),
        ClassicalFamily::Orthogonal if m >= 3 => orthogonal(m),
        ClassicalFamily::Symplectic if m >= 2 && m.is_multiple_of(2) => symplectic(m / 2),
        _ => {
            return Err(Error::NotSemisimpleFamily(format!(
                "{family:?} with parameter {m}"
            )))
        }
    };
    Ok(realization.structure_constants())
}

/// Block sum: cross-block brackets vanish.
pub fn direct_sum(a: &StructureConstants, b: &StructureConstants) -> Result<StructureConstants> {
    for (name, x) in [("left", a), ("right", b)] {
        let report = x.validate();
        if !report.is_empty() {
            return Err(Error::MalformedInput(format!(
                "{name} summand is not a Lie algebra: {}",
                report.to_string().trim_end()
            )));
        }
    }
    let shift = a.n;
    let entries = a
        .upper_entries()
        .map(|(i, j, k, v)| (i, j, k, v.clone()))
        .chain(
            b.upper_entries()
                .map(|(i, j, k, v)| (i + shift, j + shift, k + shift, v.clone())),
        );
    StructureConstants::from_upper_entries(a.n + b.n, entries)
}

/// New basis `w_j = Σ_i T_ij v_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisChange {
    t: RationalMatrix,
    t_inv: RationalMatrix,
}

impl BasisChange {
    pub fn new(t: RationalMatrix) -> Result<Self> {
        if !t.is_square() {
            return Err(Error::DimensionMismatch("basis change must be square".into()));
        }
        let t_inv = invert_exact(&t)?;
        Ok(Self { t, t_inv })
    }

    pub fn dim(&self) -> usize {
        self.t.rows()
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.t
    }

    pub fn inverse(&self) -> Self {
        Self {
            t: self.t_inv.clone(),
            t_inv: self.t.clone(),
        }
    }

    /// Apply `first`, then `second`: the composite basis is `T_first · T_second`.
    pub fn then(first: &Self, second: &Self) -> Result<Self> {
        Ok(Self {
            t: first.t.checked_mul(&second.t)?,
            t_inv: second.t_inv.checked_mul(&first.t_inv)?,
        })
    }
}

/// Deterministic unimodular `L·U` with unit-triangular integer factors.
pub fn random_invertible(n: usize, seed: u64) -> BasisChange {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut lower = RationalMatrix::identity(n);
    let mut upper = RationalMatrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            lower[(i, j)] = rat(rng.gen_range(-2..=2));
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            upper[(i, j)] = rat(rng.gen_range(-2..=2));
        }
    }
    let t = &lower * &upper;
    debug_assert!(det_exact(&t).map(|d| d.is_one()).unwrap_or(false));
    BasisChange::new(t).expect("unit triangular factors are invertible")
}

/// `μ'_ij^k = Σ T_ai T_bj μ_ab^c (T⁻¹)_kc`.
pub fn change_basis(sc: &StructureConstants, g: &BasisChange) -> Result<StructureConstants> {
    let n = sc.n;
    if g.dim() != n {
        return Err(Error::DimensionMismatch(format!(
            "basis change of size {} on a {n}-dimensional algebra",
            g.dim()
        )));
    }
    let t = &g.t;
    let mut entries = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            // [w_i, w_j] in v-coordinates
            let mut x = vec![Rational::zero(); n];
            for (a, b, c, v) in sc.upper_entries() {
                let w = &t[(a, i)] * &t[(b, j)] - &t[(b, i)] * &t[(a, j)];
                if !w.is_zero() {
                    x[c] += w * v;
                }
            }
            for k in 0..n {
                let mut y = Rational::zero();
                for (c, xc) in x.iter().enumerate() {
                    if !xc.is_zero() {
                        y += &g.t_inv[(k, c)] * xc;
                    }
                }
                if !y.is_zero() {
                    entries.push((i, j, k, y));
                }
            }
        }
    }
    StructureConstants::from_upper_entries(n, entries)
}
