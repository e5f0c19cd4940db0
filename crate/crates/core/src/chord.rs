//! Chord diagrams: perfect matchings of `2m` points in cyclic order.
//!
//! A diagram is encoded by its partner sequence (partner of point 0, of
//! point 1, ...). Canonical forms are the lexicographically least encoding
//! over the chosen symmetry group acting on point labels.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Symmetry {
    None,
    Rotation,
    Dihedral,
}

impl FromStr for Symmetry {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "none" => Ok(Self::None),
            "rotation" => Ok(Self::Rotation),
            "dihedral" => Ok(Self::Dihedral),
            other => Err(Error::MalformedInput(format!("unknown symmetry {other:?}"))),
        }
    }
}

/// A perfect matching on points `0..2m` (printed 1-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChordDiagram {
    partner: Vec<usize>,
}

impl ChordDiagram {
    /// Builds from a partner sequence, without canonicalizing.
    pub fn from_partners(partner: Vec<usize>) -> Result<Self> {
        let len = partner.len();
        if len == 0 || !len.is_multiple_of(2) {
            return Err(Error::MalformedInput(format!(
                "a matching needs a positive even number of points, got {len}"
            )));
        }
        for (p, &q) in partner.iter().enumerate() {
            if q >= len || q == p || partner[q] != p {
                return Err(Error::MalformedInput(format!(
                    "not a perfect matching at point {}",
                    p + 1
                )));
            }
        }
        Ok(Self { partner })
    }

    /// Builds from 0-based pairs, without canonicalizing.
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Result<Self> {
        let len = 2 * pairs.len();
        let mut partner = vec![usize::MAX; len];
        for &(a, b) in pairs {
            if a >= len || b >= len || a == b {
                return Err(Error::MalformedInput(format!(
                    "chord {}-{} out of range for {len} points",
                    a + 1,
                    b + 1
                )));
            }
            if partner[a] != usize::MAX || partner[b] != usize::MAX {
                let p = if partner[a] != usize::MAX { a } else { b };
                return Err(Error::MalformedInput(format!("point {} repeated", p + 1)));
            }
            partner[a] = b;
            partner[b] = a;
        }
        Self::from_partners(partner)
    }

    /// Parses `"1-4,2-6,3-5"` exactly as written (no canonicalization).
    pub fn parse_matching(text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for chunk in text.split(',') {
            let chunk = chunk.trim();
            let (a, b) = chunk
                .split_once('-')
                .ok_or_else(|| Error::MalformedInput(format!("chord {chunk:?} is not a-b")))?;
            let parse = |s: &str| -> Result<usize> {
                let v: usize = s
                    .trim()
                    .parse()
                    .map_err(|_| Error::MalformedInput(format!("point {s:?} is not an integer")))?;
                v.checked_sub(1)
                    .ok_or_else(|| Error::MalformedInput("points are numbered from 1".into()))
            };
            pairs.push((parse(a)?, parse(b)?));
        }
        Self::from_pairs(&pairs)
    }

    pub fn chords(&self) -> usize {
        self.partner.len() / 2
    }

    pub fn points(&self) -> usize {
        self.partner.len()
    }

    pub fn partner(&self, p: usize) -> usize {
        self.partner[p]
    }

    pub fn partners(&self) -> &[usize] {
        &self.partner
    }

    /// Chords as `(a, b)` with `a < b`, sorted by `a`.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        self.partner
            .iter()
            .enumerate()
            .filter(|&(p, &q)| p < q)
            .map(|(p, &q)| (p, q))
            .collect()
    }

    /// Relabel so that old point `p + shift` becomes point `p`.
    pub fn rotated(&self, shift: usize) -> Self {
        let len = self.points();
        let partner = (0..len)
            .map(|p| (self.partner[(p + shift) % len] + len - shift % len) % len)
            .collect();
        Self { partner }
    }

    /// Relabel `p -> -p mod 2m`.
    pub fn reflected(&self) -> Self {
        let len = self.points();
        let partner = (0..len)
            .map(|p| (len - self.partner[(len - p) % len]) % len)
            .collect();
        Self { partner }
    }

    pub fn canonical(&self, symmetry: Symmetry) -> Self {
        let mut best = self.clone();
        if symmetry == Symmetry::None {
            return best;
        }
        let mut consider = |d: &ChordDiagram| {
            for s in 0..d.points() {
                let r = d.rotated(s);
                if r.partner < best.partner {
                    best = r;
                }
            }
        };
        consider(self);
        if symmetry == Symmetry::Dihedral {
            consider(&self.reflected());
        }
        best
    }

    pub fn is_canonical(&self, symmetry: Symmetry) -> bool {
        *self == self.canonical(symmetry)
    }

    /// Number of distinct relabelings of `self` under the group.
    pub fn orbit_size(&self, symmetry: Symmetry) -> usize {
        let mut seen = std::collections::BTreeSet::new();
        let len = self.points();
        let mut add = |d: &ChordDiagram| {
            for s in 0..len {
                seen.insert(d.rotated(s).partner);
            }
        };
        match symmetry {
            Symmetry::None => return 1,
            Symmetry::Rotation => add(self),
            Symmetry::Dihedral => {
                add(self);
                add(&self.reflected());
            }
        }
        seen.len()
    }
}

/// The default (rotation) canonical form.
pub fn canonicalize(d: &ChordDiagram) -> ChordDiagram {
    d.canonical(Symmetry::Rotation)
}

/// Parses a diagram and returns its rotation-canonical form.
pub fn parse_diagram(text: &str) -> Result<ChordDiagram> {
    Ok(canonicalize(&ChordDiagram::parse_matching(text)?))
}

pub fn format_diagram(d: &ChordDiagram) -> String {
    d.to_string()
}

impl fmt::Display for ChordDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .pairs()
            .into_iter()
            .map(|(a, b)| format!("{}-{}", a + 1, b + 1))
            .collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for ChordDiagram {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        parse_diagram(s)
    }
}

/// All matchings on `2m` points, or one canonical representative per orbit,
/// in increasing partner-sequence order.
pub fn enumerate_diagrams(m: usize, symmetry: Symmetry) -> Vec<ChordDiagram> {
    let len = 2 * m;
    let mut out = Vec::new();
    if m == 0 {
        return out;
    }
    let mut partner = vec![usize::MAX; len];
    fn go(partner: &mut [usize], symmetry: Symmetry, out: &mut Vec<ChordDiagram>) {
        let Some(p) = partner.iter().position(|&q| q == usize::MAX) else {
            let d = ChordDiagram {
                partner: partner.to_vec(),
            };
            if d.is_canonical(symmetry) {
                out.push(d);
            }
            return;
        };
        for q in (p + 1)..partner.len() {
            if partner[q] == usize::MAX {
                partner[p] = q;
                partner[q] = p;
                go(partner, symmetry, out);
                partner[p] = usize::MAX;
                partner[q] = usize::MAX;
            }
        }
    }
    go(&mut partner, symmetry, &mut out);
    out
}

/// Canonical representatives for every chord count in `1..=max_chords`.
pub fn enumerate_up_to(max_chords: usize, symmetry: Symmetry) -> Vec<ChordDiagram> {
    (1..=max_chords)
        .flat_map(|m| enumerate_diagrams(m, symmetry))
        .collect()
}
