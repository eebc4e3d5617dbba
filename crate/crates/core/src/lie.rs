//! Structure constants of finite-dimensional Lie algebras.

use std::fmt;

use crate::error::{Error, Result};
use crate::gca::Scalar;

/// `f^a_{bc}` in a fixed basis, stored densely and indexed from zero.
#[derive(Clone)]
pub struct LieAlgebraData {
    name: String,
    dim: usize,
    f: Vec<Scalar>,
}

/// Outcome of [`LieAlgebraData::validate`]. Indices are 1-based.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LieReport {
    pub antisymmetry: Vec<(usize, usize, usize)>,
    pub jacobi: Vec<(usize, usize, usize, usize)>,
}

impl LieReport {
    pub fn passed(&self) -> bool {
        self.antisymmetry.is_empty() && self.jacobi.is_empty()
    }
}

fn epsilon(a: usize, b: usize, c: usize) -> i64 {
    match (a, b, c) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
        _ => 0,
    }
}

impl LieAlgebraData {
    /// Unchecked construction from 0-based `(a, b, c, value)` entries.
    pub fn from_entries(
        name: impl Into<String>,
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
    ) -> Result<Self> {
        let mut f = vec![Scalar::zero(); dim * dim * dim];
        for (a, b, c, v) in entries {
            if a >= dim || b >= dim || c >= dim {
                return Err(Error::InvalidLieAlgebra(format!(
                    "index ({}, {}, {}) out of range for dimension {dim}",
                    a + 1,
                    b + 1,
                    c + 1
                )));
            }
            f[(a * dim + b) * dim + c] = v;
        }
        Ok(LieAlgebraData { name: name.into(), dim, f })
    }

    /// Validated construction; antisymmetry and Jacobi failures are errors.
    pub fn new(
        name: impl Into<String>,
        dim: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
    ) -> Result<Self> {
        let g = LieAlgebraData::from_entries(name, dim, entries)?;
        let report = g.validate();
        if let Some(&(a, b, c)) = report.antisymmetry.first() {
            return Err(Error::InvalidLieAlgebra(format!(
                "antisymmetry fails at f^{a}_{{{b}{c}}}"
            )));
        }
        if let Some(&(a, b, c, m)) = report.jacobi.first() {
            return Err(Error::InvalidLieAlgebra(format!(
                "Jacobi identity fails at (a, b, c, m) = ({a}, {b}, {c}, {m})"
            )));
        }
        Ok(g)
    }

    pub fn abelian(name: impl Into<String>, dim: usize) -> Self {
        LieAlgebraData::from_entries(name, dim, []).expect("no entries")
    }

    pub fn u1() -> Self {
        LieAlgebraData::abelian("u1", 1)
    }

    pub fn ab2() -> Self {
        LieAlgebraData::abelian("ab2", 2)
    }

    /// `f^a_{bc} = ε_{abc}`.
    pub fn su2() -> Self {
        LieAlgebraData::levi_civita("su2", 1)
    }

    /// `f^a_{bc} = -ε_{abc}`, the rotation algebra in the opposite-handed basis.
    pub fn so3() -> Self {
        LieAlgebraData::levi_civita("so3", -1)
    }

    fn levi_civita(name: &str, sign: i64) -> Self {
        let mut entries = Vec::new();
        for a in 0..3 {
            for b in 0..3 {
                for c in 0..3 {
                    let e = epsilon(a, b, c);
                    if e != 0 {
                        entries.push((a, b, c, Scalar::from_int(sign * e)));
                    }
                }
            }
        }
        LieAlgebraData::from_entries(name, 3, entries).expect("indices in range")
    }

    pub fn builtin(name: &str) -> Option<Self> {
        match name {
            "u1" => Some(LieAlgebraData::u1()),
            "su2" => Some(LieAlgebraData::su2()),
            "so3" => Some(LieAlgebraData::so3()),
            "ab2" => Some(LieAlgebraData::ab2()),
            _ => None,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `f^a_{bc}`, 0-based.
    pub fn f(&self, a: usize, b: usize, c: usize) -> &Scalar {
        &self.f[(a * self.dim + b) * self.dim + c]
    }

    pub fn is_abelian(&self) -> bool {
        self.f.iter().all(Scalar::is_zero)
    }

    /// Nonzero entries in index order, 0-based.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> {
        let n = self.dim;
        self.f
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(k, v)| (k / (n * n), (k / n) % n, k % n, v))
    }

    pub fn validate(&self) -> LieReport {
        let n = self.dim;
        let mut report = LieReport::default();
        for a in 0..n {
            for b in 0..n {
                for c in b..n {
                    if !(self.f(a, b, c) + self.f(a, c, b)).is_zero() {
                        report.antisymmetry.push((a + 1, b + 1, c + 1));
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for m in 0..n {
                        let mut s = Scalar::zero();
                        for d in 0..n {
                            s += &(self.f(d, b, c) * self.f(a, d, m));
                            s += &(self.f(d, c, m) * self.f(a, d, b));
                            s += &(self.f(d, m, b) * self.f(a, d, c));
                        }
                        if !s.is_zero() {
                            report.jacobi.push((a + 1, b + 1, c + 1, m + 1));
                        }
                    }
                }
            }
        }
        report
    }
}

/// Equality compares structure constants only, not names.
impl PartialEq for LieAlgebraData {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.f == other.f
    }
}

impl Eq for LieAlgebraData {}

impl fmt::Debug for LieAlgebraData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebraData({}, dim {})", self.name, self.dim)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins_validate() {
        for name in ["u1", "su2", "so3", "ab2"] {
            assert!(LieAlgebraData::builtin(name).unwrap().validate().passed(), "{name}");
        }
    }

    #[test]
    fn lone_entry_breaks_antisymmetry() {
        let g = LieAlgebraData::from_entries("bad", 3, [(0, 1, 2, Scalar::one())]).unwrap();
        let r = g.validate();
        assert_eq!(r.antisymmetry, vec![(1, 2, 3)]);
        assert!(LieAlgebraData::new("bad", 3, [(0, 1, 2, Scalar::one())]).is_err());
    }

    #[test]
    fn jacobi_failure_detected() {
        // Antisymmetric but not a Lie bracket: [e1, e2] = e1, [e1, e3] = e2, [e2, e3] = e1.
        let one = Scalar::one;
        let m = || Scalar::from_int(-1);
        let g = LieAlgebraData::from_entries(
            "bad",
            3,
            [
                (0, 0, 1, one()),
                (0, 1, 0, m()),
                (1, 0, 2, one()),
                (1, 2, 0, m()),
                (0, 1, 2, one()),
                (0, 2, 1, m()),
            ],
        )
        .unwrap();
        let r = g.validate();
        assert!(r.antisymmetry.is_empty());
        assert!(!r.jacobi.is_empty());
    }
}
