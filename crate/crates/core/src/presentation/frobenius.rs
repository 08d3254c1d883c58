use num_traits::{One, Zero};

use crate::coeff::Rational;

use super::PresentationError;

/// A finite-dimensional algebra `A` over the rationals given on a basis `B`,
/// optionally with a trace and a dual basis `b -> b̌` satisfying
/// `tr(ab) = tr(ba)` and `tr(ǎ b) = δ(a, b)`.
#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusAlgebraData {
    name: String,
    labels: Vec<String>,
    /// `structure[a][b]` is the product `a * b` on the basis.
    structure: Vec<Vec<Vec<Rational>>>,
    unit: Vec<Rational>,
    trace: Option<Vec<Rational>>,
    dual: Option<Vec<Vec<Rational>>>,
    /// `Σ_b b ⊗ b̌` as `(left basis index, right basis index, coefficient)`.
    casimir: Option<Vec<(usize, usize, Rational)>>,
}

fn invalid(msg: impl Into<String>) -> PresentationError {
    PresentationError::InvalidAlgebra(msg.into())
}

impl FrobeniusAlgebraData {
    /// Validates the data; associativity and unit laws are checked on the basis,
    /// and when a trace is given, so are the trace and duality identities.
    pub fn new(
        name: impl Into<String>,
        labels: Vec<String>,
        structure: Vec<Vec<Vec<Rational>>>,
        unit: Vec<Rational>,
        trace: Option<Vec<Rational>>,
        dual: Option<Vec<Vec<Rational>>>,
    ) -> Result<Self, PresentationError> {
        let n = labels.len();
        if n == 0 {
            return Err(invalid("empty basis"));
        }
        let shape_ok = structure.len() == n
            && structure.iter().all(|row| row.len() == n && row.iter().all(|v| v.len() == n))
            && unit.len() == n
            && trace.as_ref().is_none_or(|t| t.len() == n)
            && dual.as_ref().is_none_or(|d| d.len() == n && d.iter().all(|v| v.len() == n));
        if !shape_ok {
            return Err(invalid("structure constants, unit, trace or dual have the wrong shape"));
        }
        if trace.is_some() != dual.is_some() {
            return Err(invalid("trace and dual basis must be given together"));
        }
        let mut a = FrobeniusAlgebraData { name: name.into(), labels, structure, unit, trace, dual, casimir: None };
        a.check_algebra()?;
        if a.trace.is_some() {
            a.check_frobenius()?;
            a.casimir = Some(a.compute_casimir());
        }
        Ok(a)
    }

    /// Group algebra of the cyclic group of order `n`, basis `1, g, g2, ...`,
    /// with `tr(g^k) = δ(k, 0)` and dual basis `g^k -> g^{-k}`.
    pub fn cyclic_group(n: usize) -> Self {
        assert!(n >= 1);
        let labels: Vec<String> = (0..n)
            .map(|k| match k {
                0 => "1".to_string(),
                1 => "g".to_string(),
                k => format!("g{k}"),
            })
            .collect();
        let e = |k: usize| -> Vec<Rational> {
            let mut v = vec![Rational::zero(); n];
            v[k % n] = Rational::one();
            v
        };
        let structure = (0..n).map(|a| (0..n).map(|b| e(a + b)).collect()).collect();
        let dual = (0..n).map(|k| e(n - k)).collect();
        let name = if n == 1 { "trivial".to_string() } else { format!("Z{n}") };
        Self::new(name, labels, structure, e(0), Some(e(0)), Some(dual)).expect("group algebras are Frobenius")
    }

    /// The ground field itself.
    pub fn trivial() -> Self {
        Self::cyclic_group(1)
    }

    /// Resolves a builtin algebra name: `trivial`, or `Zn` for the cyclic group of order `n`.
    pub fn from_name(name: &str) -> Result<Self, PresentationError> {
        match name {
            "trivial" | "k" => Ok(Self::trivial()),
            _ => name
                .strip_prefix('Z')
                .and_then(|n| n.parse::<usize>().ok())
                .filter(|&n| (1..=64).contains(&n))
                .map(Self::cyclic_group)
                .ok_or_else(|| invalid(format!("unknown algebra '{name}' (expected Z<n> or trivial)"))),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[Rational] {
        &self.unit
    }

    pub fn basis_product(&self, a: usize, b: usize) -> &[Rational] {
        &self.structure[a][b]
    }

    pub fn has_trace(&self) -> bool {
        self.trace.is_some()
    }

    pub fn dual(&self, b: usize) -> Option<&[Rational]> {
        self.dual.as_ref().map(|d| d[b].as_slice())
    }

    /// Cached expansion of `Σ_b b ⊗ b̌`.
    pub fn casimir(&self) -> Option<&[(usize, usize, Rational)]> {
        self.casimir.as_deref()
    }

    /// Product of two elements given as coefficient vectors.
    pub fn mul(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for (a, xa) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (b, yb) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let c = xa * yb;
                for (k, s) in self.structure[a][b].iter().enumerate() {
                    if !s.is_zero() {
                        out[k] += &c * s;
                    }
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, b: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[b] = Rational::one();
        v
    }

    pub fn trace_of(&self, x: &[Rational]) -> Option<Rational> {
        self.trace.as_ref().map(|t| t.iter().zip(x).map(|(a, b)| a * b).sum())
    }

    fn check_algebra(&self) -> Result<(), PresentationError> {
        let n = self.dim();
        for a in 0..n {
            let ea = self.basis_vector(a);
            if self.mul(&self.unit, &ea) != ea || self.mul(&ea, &self.unit) != ea {
                return Err(invalid(format!("unit law fails on basis element {}", self.labels[a])));
            }
            for b in 0..n {
                let ab = self.structure[a][b].clone();
                for c in 0..n {
                    let ec = self.basis_vector(c);
                    let left = self.mul(&ab, &ec);
                    let right = self.mul(&ea, &self.structure[b][c]);
                    if left != right {
                        return Err(invalid(format!(
                            "associativity fails on ({}, {}, {})",
                            self.labels[a], self.labels[b], self.labels[c]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_frobenius(&self) -> Result<(), PresentationError> {
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                let tab = self.trace_of(&self.structure[a][b]).unwrap();
                let tba = self.trace_of(&self.structure[b][a]).unwrap();
                if tab != tba {
                    return Err(invalid(format!("tr(ab) != tr(ba) for ({}, {})", self.labels[a], self.labels[b])));
                }
                let check = self.trace_of(&self.mul(self.dual(a).unwrap(), &self.basis_vector(b))).unwrap();
                let expected = if a == b { Rational::one() } else { Rational::zero() };
                if check != expected {
                    return Err(invalid(format!(
                        "tr(dual({}) * {}) = {check}, expected {expected}",
                        self.labels[a], self.labels[b]
                    )));
                }
            }
        }
        Ok(())
    }

    fn compute_casimir(&self) -> Vec<(usize, usize, Rational)> {
        let mut out = Vec::new();
        for b in 0..self.dim() {
            for (c, coeff) in self.dual(b).unwrap().iter().enumerate() {
                if !coeff.is_zero() {
                    out.push((b, c, coeff.clone()));
                }
            }
        }
        out.sort_by_key(|x| (x.0, x.1));
        out
    }
}
