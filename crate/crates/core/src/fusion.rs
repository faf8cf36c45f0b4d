//! Fusion rings and their Grothendieck Frobenius algebras.
//!
//! A fusion ring has a basis of simple labels with label 0 the unit, a dual
//! involution, and nonnegative structure constants `N[i][j][k]`, the
//! multiplicity of `k` in `i ⊗ j`.

use std::fmt;

use crate::error::{Error, Result};
use crate::frobenius::{BilinearPairing, FrobeniusAlgebra};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionRing {
    labels: Vec<String>,
    dual: Vec<usize>,
    n: Vec<Vec<Vec<u64>>>,
}

/// One violated fusion-ring axiom with its witness indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FusionFailure {
    LeftUnit {
        j: usize,
        k: usize,
    },
    RightUnit {
        i: usize,
        k: usize,
    },
    Associativity {
        i: usize,
        j: usize,
        k: usize,
        l: usize,
        left: u64,
        right: u64,
    },
    Duality {
        i: usize,
        j: usize,
    },
    DualNotInvolution {
        i: usize,
    },
    DualOfUnit,
}

impl fmt::Display for FusionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FusionFailure::LeftUnit { j, k } => write!(f, "left unit: N[0][{j}][{k}]"),
            FusionFailure::RightUnit { i, k } => write!(f, "right unit: N[{i}][0][{k}]"),
            FusionFailure::Associativity {
                i,
                j,
                k,
                l,
                left,
                right,
            } => write!(f, "associativity at ({i},{j},{k},{l}): {left} ≠ {right}"),
            FusionFailure::Duality { i, j } => write!(f, "duality: N[{i}][{j}][0]"),
            FusionFailure::DualNotInvolution { i } => write!(f, "dual is not an involution at {i}"),
            FusionFailure::DualOfUnit => write!(f, "dual of the unit is not the unit"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FusionReport {
    pub failures: Vec<FusionFailure>,
}

impl FusionReport {
    pub fn is_valid(&self) -> bool {
        self.failures.is_empty()
    }
}

impl FusionRing {
    /// Shape checks only; see [`validate`](Self::validate) for the axioms.
    pub fn new(labels: Vec<String>, dual: Vec<usize>, n: Vec<Vec<Vec<u64>>>) -> Result<Self> {
        let r = labels.len();
        if r == 0 {
            return Err(Error::InvalidFusionRing("no labels".into()));
        }
        if dual.len() != r || dual.iter().any(|&d| d >= r) {
            return Err(Error::InvalidFusionRing(
                "dual must map labels to labels".into(),
            ));
        }
        if n.len() != r
            || n.iter()
                .any(|m| m.len() != r || m.iter().any(|v| v.len() != r))
        {
            return Err(Error::InvalidFusionRing(format!("N must be {r}x{r}x{r}")));
        }
        Ok(Self { labels, dual, n })
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dual(&self, i: usize) -> usize {
        self.dual[i]
    }

    pub fn duals(&self) -> &[usize] {
        &self.dual
    }

    pub fn table(&self) -> &[Vec<Vec<u64>>] {
        &self.n
    }

    pub fn n(&self, i: usize, j: usize, k: usize) -> u64 {
        self.n[i][j][k]
    }

    pub fn label_index(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == name)
    }

    /// Check every axiom with exact integer arithmetic.
    pub fn validate(&self) -> FusionReport {
        let r = self.rank();
        let mut failures = Vec::new();
        let delta = |a: usize, b: usize| u64::from(a == b);
        for j in 0..r {
            for k in 0..r {
                if self.n[0][j][k] != delta(j, k) {
                    failures.push(FusionFailure::LeftUnit { j, k });
                }
                if self.n[j][0][k] != delta(j, k) {
                    failures.push(FusionFailure::RightUnit { i: j, k });
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    for l in 0..r {
                        let left: u64 = (0..r).map(|m| self.n[i][j][m] * self.n[m][k][l]).sum();
                        let right: u64 = (0..r).map(|m| self.n[j][k][m] * self.n[i][m][l]).sum();
                        if left != right {
                            failures.push(FusionFailure::Associativity {
                                i,
                                j,
                                k,
                                l,
                                left,
                                right,
                            });
                        }
                    }
                }
            }
        }
        for i in 0..r {
            for j in 0..r {
                if self.n[i][j][0] != delta(j, self.dual[i]) {
                    failures.push(FusionFailure::Duality { i, j });
                }
            }
            if self.dual[self.dual[i]] != i {
                failures.push(FusionFailure::DualNotInvolution { i });
            }
        }
        if self.dual[0] != 0 {
            failures.push(FusionFailure::DualOfUnit);
        }
        FusionReport { failures }
    }

    /// First pair `(i, j)` with `i ⊗ j ≠ j ⊗ i`.
    pub fn commutativity_witness(&self) -> Option<(usize, usize)> {
        let r = self.rank();
        (0..r)
            .flat_map(|i| (0..r).map(move |j| (i, j)))
            .find(|&(i, j)| self.n[i][j] != self.n[j][i])
    }

    /// Multiplicity of the unit in `U_1 ⊗ … ⊗ U_m`, contracting left to
    /// right. The empty word gives 1.
    pub fn hom_dimension(&self, word: &[usize]) -> Result<u64> {
        let r = self.rank();
        if let Some(&bad) = word.iter().find(|&&i| i >= r) {
            return Err(Error::LabelOutOfRange(bad));
        }
        let mut v = vec![0u64; r];
        v[0] = 1;
        for &u in word {
            let mut next = vec![0u64; r];
            for (i, &vi) in v.iter().enumerate().filter(|(_, &x)| x != 0) {
                for (k, slot) in next.iter_mut().enumerate() {
                    *slot += vi * self.n[i][u][k];
                }
            }
            v = next;
        }
        Ok(v[0])
    }

    /// Resolve label names to indices.
    pub fn word(&self, names: &[&str]) -> Result<Vec<usize>> {
        names
            .iter()
            .map(|n| {
                self.label_index(n.trim())
                    .ok_or_else(|| Error::Format(format!("unknown label `{n}`")))
            })
            .collect()
    }
}

/// `Gr ⊗ k` with `⟨[U],[V]⟩ = δ_{V, U*}`; requires a valid commutative ring.
pub fn grothendieck_frobenius<T: Scalar>(ring: &FusionRing) -> Result<FrobeniusAlgebra<T>> {
    let report = ring.validate();
    if let Some(first) = report.failures.first() {
        return Err(Error::InvalidFusionRing(first.to_string()));
    }
    if let Some(w) = ring.commutativity_witness() {
        return Err(Error::NotCommutativeRing(w));
    }
    let r = ring.rank();
    let mut mu = Matrix::zeros(r, r * r);
    let mut gram = Matrix::zeros(r, r);
    for i in 0..r {
        for j in 0..r {
            for k in 0..r {
                let c = ring.n(i, j, k);
                if c != 0 {
                    mu.set(k, i * r + j, T::from_int(c as i64));
                }
            }
        }
        gram.set(i, ring.dual(i), T::one());
    }
    let mut eta = Matrix::zeros(r, 1);
    eta.set(0, 0, T::one());
    Ok(
        FrobeniusAlgebra::from_economy(r, mu, eta, &BilinearPairing::new(gram)?)?
            .with_basis_names(ring.labels().to_vec()),
    )
}

fn table_from(r: usize, rule: impl Fn(usize, usize) -> Vec<(usize, u64)>) -> Vec<Vec<Vec<u64>>> {
    (0..r)
        .map(|i| {
            (0..r)
                .map(|j| {
                    let mut v = vec![0; r];
                    for (k, c) in rule(i, j) {
                        v[k] += c;
                    }
                    v
                })
                .collect()
        })
        .collect()
}

/// `{1, τ}` with `τ ⊗ τ = 1 ⊕ τ`.
pub fn fibonacci() -> FusionRing {
    let n = table_from(2, |i, j| match (i, j) {
        (0, x) | (x, 0) => vec![(x, 1)],
        _ => vec![(0, 1), (1, 1)],
    });
    FusionRing::new(vec!["1".into(), "tau".into()], vec![0, 1], n).expect("Fibonacci")
}

/// `{1, σ, ψ}` with `σσ = 1 ⊕ ψ`, `σψ = ψσ = σ`, `ψψ = 1`.
pub fn ising() -> FusionRing {
    let n = table_from(3, |i, j| match (i, j) {
        (0, x) | (x, 0) => vec![(x, 1)],
        (1, 1) => vec![(0, 1), (2, 1)],
        (1, 2) | (2, 1) => vec![(1, 1)],
        _ => vec![(0, 1)],
    });
    FusionRing::new(
        vec!["1".into(), "sigma".into(), "psi".into()],
        vec![0, 1, 2],
        n,
    )
    .expect("Ising")
}

/// Pointed ring of `Z/n`: `g^a ⊗ g^b = g^{a+b}`.
pub fn vec_zn(n: usize) -> FusionRing {
    assert!(n > 0);
    let table = table_from(n, |i, j| vec![((i + j) % n, 1)]);
    let labels = (0..n)
        .map(|k| match k {
            0 => "1".to_owned(),
            1 => "g".to_owned(),
            _ => format!("g^{k}"),
        })
        .collect();
    let dual = (0..n).map(|k| (n - k) % n).collect();
    FusionRing::new(labels, dual, table).expect("pointed ring")
}
