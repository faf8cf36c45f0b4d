//! Named example algebras: group algebras, centres of semisimple matrix
//! algebras, one-variable Milnor rings, and the upper-triangular algebra
//! that carries no Frobenius form.

use crate::error::{Error, Result};
use crate::frobenius::{BilinearPairing, FrobeniusAlgebra, UnitalAlgebra};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// A finite group given by its multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupTable {
    order: usize,
    mult: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    identity: usize,
    names: Vec<String>,
}

impl FiniteGroupTable {
    /// Validates closure, associativity, identity and inverses; the identity
    /// and inverses are recovered from the table.
    pub fn new(mult: Vec<Vec<usize>>, names: Vec<String>) -> Result<Self> {
        let n = mult.len();
        if n == 0 {
            return Err(Error::InvalidGroup("empty table".into()));
        }
        if names.len() != n {
            return Err(Error::InvalidGroup("one name per element required".into()));
        }
        if mult
            .iter()
            .any(|r| r.len() != n || r.iter().any(|&x| x >= n))
        {
            return Err(Error::InvalidGroup("table is not closed".into()));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if mult[mult[a][b]][c] != mult[a][mult[b][c]] {
                        return Err(Error::InvalidGroup(format!(
                            "not associative on ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|a| mult[e][a] == a && mult[a][e] == a))
            .ok_or_else(|| Error::InvalidGroup("no identity".into()))?;
        let inverse = (0..n)
            .map(|a| {
                (0..n)
                    .find(|&b| mult[a][b] == identity && mult[b][a] == identity)
                    .ok_or_else(|| Error::InvalidGroup(format!("element {a} has no inverse")))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            order: n,
            mult,
            inverse,
            identity,
            names,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..self.order).all(|b| self.mult[a][b] == self.mult[b][a]))
    }

    /// Direct product, elements ordered `(a, b) ↦ a·|H| + b`.
    pub fn product(&self, other: &FiniteGroupTable) -> FiniteGroupTable {
        let (n, m) = (self.order, other.order);
        let mult = (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| self.mul(x / m, y / m) * m + other.mul(x % m, y % m))
                    .collect()
            })
            .collect();
        let names = (0..n * m)
            .map(|x| format!("({},{})", self.names[x / m], other.names[x % m]))
            .collect();
        FiniteGroupTable::new(mult, names).expect("products of groups are groups")
    }
}

/// The cyclic group `Z/n`, element `k` standing for `g^k`.
pub fn zn_table(n: usize) -> FiniteGroupTable {
    assert!(n > 0);
    let mult = (0..n)
        .map(|a| (0..n).map(|b| (a + b) % n).collect())
        .collect();
    let names = (0..n)
        .map(|k| match k {
            0 => "e".to_owned(),
            1 => "g".to_owned(),
            _ => format!("g^{k}"),
        })
        .collect();
    FiniteGroupTable::new(mult, names).expect("cyclic group")
}

/// The symmetric group on three letters; elements are permutations in
/// lexicographic order, composed as functions `(στ)(i) = σ(τ(i))`.
pub fn s3_table() -> FiniteGroupTable {
    let perms: Vec<[usize; 3]> = vec![
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed");
    let mult = perms
        .iter()
        .map(|s| {
            perms
                .iter()
                .map(|t| index([s[t[0]], s[t[1]], s[t[2]]]))
                .collect()
        })
        .collect();
    let names = perms
        .iter()
        .map(|p| format!("[{}{}{}]", p[0], p[1], p[2]))
        .collect();
    FiniteGroupTable::new(mult, names).expect("S3")
}

/// Group algebra `kG` with `⟨g, h⟩ = δ_{g, h⁻¹}`.
pub fn group_algebra<T: Scalar>(g: &FiniteGroupTable) -> Result<FrobeniusAlgebra<T>> {
    let n = g.order();
    let mut mu = Matrix::zeros(n, n * n);
    let mut gram = Matrix::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            mu.set(g.mul(a, b), a * n + b, T::one());
        }
        gram.set(a, g.inverse(a), T::one());
    }
    let mut eta = Matrix::zeros(n, 1);
    eta.set(g.identity(), 0, T::one());
    Ok(
        FrobeniusAlgebra::from_economy(n, mu, eta, &BilinearPairing::new(gram)?)?
            .with_basis_names(g.names().to_vec()),
    )
}

/// Gram matrix of the trace form on the block identities of
/// `⊕ Mat_{n_i}`, computed from explicit block-diagonal matrices.
pub fn block_identity_traces<T: Scalar>(block_sizes: &[usize]) -> Matrix<T> {
    let total: usize = block_sizes.iter().sum();
    let mut offset = 0;
    let blocks: Vec<Matrix<T>> = block_sizes
        .iter()
        .map(|&n| {
            let mut e = Matrix::zeros(total, total);
            for k in offset..offset + n {
                e.set(k, k, T::one());
            }
            offset += n;
            e
        })
        .collect();
    let m = blocks.len();
    let mut gram = Matrix::zeros(m, m);
    for i in 0..m {
        for j in 0..m {
            let prod = blocks[i].matmul(&blocks[j]).expect("square blocks");
            let trace = (0..total).fold(T::zero(), |acc, k| acc + prod.get(k, k).clone());
            gram.set(i, j, trace);
        }
    }
    gram
}

/// Centre of `⊕_i Mat_{n_i × n_i}(k)` with the restricted trace pairing.
/// The basis is the block identities `e_i`, with `e_i e_j = δ_{ij} e_i`.
pub fn matrix_center_algebra<T: Scalar>(block_sizes: &[usize]) -> Result<FrobeniusAlgebra<T>> {
    if block_sizes.is_empty() || block_sizes.contains(&0) {
        return Err(Error::Format(
            "block sizes must be a nonempty list of positive integers".into(),
        ));
    }
    let m = block_sizes.len();
    let mut mu = Matrix::zeros(m, m * m);
    for i in 0..m {
        mu.set(i, i * m + i, T::one());
    }
    let eta = Matrix::column(vec![T::one(); m]);
    let gram = block_identity_traces(block_sizes);
    let names = (0..m).map(|i| format!("e{i}")).collect();
    Ok(
        FrobeniusAlgebra::from_economy(m, mu, eta, &BilinearPairing::new(gram)?)?
            .with_basis_names(names),
    )
}

/// The potential `W = x^d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OneVarPotential {
    degree: usize,
}

impl OneVarPotential {
    pub fn new(degree: usize) -> Result<Self> {
        if degree < 2 {
            return Err(Error::Format(format!(
                "x^{degree} has no nonzero Milnor ring; degree must be at least 2"
            )));
        }
        Ok(Self { degree })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Dimension of `k[x]/(W')`.
    pub fn milnor_dim(&self) -> usize {
        self.degree - 1
    }

    /// Residue of `φψ dx / W'` on monomials: `coeff_{x^{d-2}}(x^{a+b}) / d`.
    pub fn residue<T: Scalar>(&self, a: usize, b: usize) -> T {
        if a + b == self.degree - 2 {
            T::ratio(1, self.degree as i64)
        } else {
            T::zero()
        }
    }
}

/// Milnor ring `k[x]/(x^{d-1})` of `W = x^d` with the residue pairing.
pub fn milnor_ring<T: Scalar>(degree: usize) -> Result<FrobeniusAlgebra<T>> {
    let w = OneVarPotential::new(degree)?;
    let n = w.milnor_dim();
    let mut mu = Matrix::zeros(n, n * n);
    let mut gram = Matrix::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            if a + b < n {
                mu.set(a + b, a * n + b, T::one());
            }
            gram.set(a, b, w.residue(a, b));
        }
    }
    let mut eta = Matrix::zeros(n, 1);
    eta.set(0, 0, T::one());
    let names = (0..n)
        .map(|k| match k {
            0 => "1".to_owned(),
            1 => "x".to_owned(),
            _ => format!("x^{k}"),
        })
        .collect();
    Ok(
        FrobeniusAlgebra::from_economy(n, mu, eta, &BilinearPairing::new(gram)?)?
            .with_basis_names(names),
    )
}

/// Upper-triangular `2 × 2` matrices on the basis `E11, E12, E22`.
pub fn upper_triangular_algebra<T: Scalar>() -> UnitalAlgebra<T> {
    // matrix units: E_ij E_kl = δ_jk E_il
    let units = [(0, 0), (0, 1), (1, 1)];
    let index = |p: (usize, usize)| units.iter().position(|&u| u == p);
    let mut mu = Matrix::zeros(3, 9);
    for (a, &(i, j)) in units.iter().enumerate() {
        for (b, &(k, l)) in units.iter().enumerate() {
            if j == k {
                let c = index((i, l)).expect("upper triangular is closed");
                mu.set(c, a * 3 + b, T::one());
            }
        }
    }
    let eta = Matrix::column(vec![T::one(), T::zero(), T::one()]);
    UnitalAlgebra::new(3, mu, eta).expect("3-dimensional")
}
