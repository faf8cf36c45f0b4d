//! Frobenius algebras on `k^n` with explicit structure matrices.
//!
//! `mu` is `n × n²`, `eta` is `n × 1`, `delta` is `n² × n`, `eps` is `1 × n`,
//! all in the row-major Kronecker convention of [`crate::linalg`]. Basis
//! element `b_i ⊗ b_j` is column `i·n + j` of `mu`.

use crate::error::{Error, Result};
use crate::linalg::{swap_matrix, Matrix};
use crate::scalar::Scalar;

/// A unital algebra without a chosen Frobenius form.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitalAlgebra<T> {
    pub dim: usize,
    pub mu: Matrix<T>,
    pub eta: Matrix<T>,
}

impl<T: Scalar> UnitalAlgebra<T> {
    pub fn new(dim: usize, mu: Matrix<T>, eta: Matrix<T>) -> Result<Self> {
        expect_shape("mu", &mu, (dim, dim * dim))?;
        expect_shape("eta", &eta, (dim, 1))?;
        Ok(Self { dim, mu, eta })
    }

    /// Coordinates of `b_i · b_j`.
    pub fn product(&self, i: usize, j: usize) -> Vec<T> {
        let col = i * self.dim + j;
        (0..self.dim).map(|k| self.mu.get(k, col).clone()).collect()
    }

    /// Coordinates of `x · y` for arbitrary coordinate vectors.
    pub fn multiply(&self, x: &[T], y: &[T]) -> Vec<T> {
        let mut out = vec![T::zero(); self.dim];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let w = xi.clone() * yj.clone();
                for (k, p) in self.product(i, j).into_iter().enumerate() {
                    out[k] = out[k].clone() + w.clone() * p;
                }
            }
        }
        out
    }

    fn basis(&self, i: usize) -> Vec<T> {
        (0..self.dim)
            .map(|k| if k == i { T::one() } else { T::zero() })
            .collect()
    }

    /// First basis triple on which `(ab)c ≠ a(bc)`.
    pub fn associativity_witness(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim;
        for a in 0..n {
            for b in 0..n {
                let ab = self.product(a, b);
                for c in 0..n {
                    let left = self.multiply(&ab, &self.basis(c));
                    let right = self.multiply(&self.basis(a), &self.product(b, c));
                    if left != right {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// First basis element on which `eta` fails to act as a two-sided unit.
    pub fn unit_witness(&self) -> Option<usize> {
        let u: Vec<T> = self.eta.entries().to_vec();
        (0..self.dim).find(|&i| {
            let b = self.basis(i);
            self.multiply(&u, &b) != b || self.multiply(&b, &u) != b
        })
    }

    /// Gram matrix of the pairing `⟨a, b⟩ = λ(ab)`.
    pub fn gram_from_functional(&self, lambda: &[T]) -> Matrix<T> {
        let n = self.dim;
        let mut g = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let v = self
                    .product(i, j)
                    .into_iter()
                    .zip(lambda)
                    .fold(T::zero(), |acc, (p, l)| acc + p * l.clone());
                g.set(i, j, v);
            }
        }
        g
    }

    /// A functional `λ` with nondegenerate `⟨a,b⟩ = λ(ab)`, if one exists.
    ///
    /// Invariant pairings on a unital algebra are exactly those of the form
    /// `λ(ab)`. The Gram determinant is a polynomial in the coordinates of
    /// `λ` of degree at most `dim` in each variable, so it is identically
    /// zero iff it vanishes on the grid `{0, …, dim}^dim`. The search is
    /// deterministic and exhaustive over that grid.
    pub fn frobenius_functional(&self) -> Option<Vec<T>> {
        let n = self.dim;
        let mut point = vec![0usize; n];
        loop {
            let lambda: Vec<T> = point.iter().map(|&x| T::from_int(x as i64)).collect();
            let det = self
                .gram_from_functional(&lambda)
                .determinant()
                .expect("square gram");
            if !det.is_zero() {
                return Some(lambda);
            }
            // odometer over {0..=n}^n
            let mut k = 0;
            loop {
                if k == n {
                    return None;
                }
                point[k] += 1;
                if point[k] <= n {
                    break;
                }
                point[k] = 0;
                k += 1;
            }
        }
    }
}

/// Whether `(dim, mu, eta)` admits a nondegenerate invariant pairing.
pub fn admits_frobenius_form<T: Scalar>(dim: usize, mu: &Matrix<T>, eta: &Matrix<T>) -> bool {
    UnitalAlgebra {
        dim,
        mu: mu.clone(),
        eta: eta.clone(),
    }
    .frobenius_functional()
    .is_some()
}

/// A bilinear form by its Gram matrix, `gram(i, j) = ⟨b_i, b_j⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct BilinearPairing<T> {
    pub dim: usize,
    pub gram: Matrix<T>,
}

impl<T: Scalar> BilinearPairing<T> {
    pub fn new(gram: Matrix<T>) -> Result<Self> {
        if gram.rows() != gram.cols() {
            return Err(Error::Shape {
                op: "pairing",
                left: gram.shape(),
                right: (gram.rows(), gram.rows()),
            });
        }
        Ok(Self {
            dim: gram.rows(),
            gram,
        })
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.gram.rank() == self.dim
    }

    /// The copairing `c = Σ (G⁻¹)_{ij} b_i ⊗ b_j` as a `dim² × 1` column.
    pub fn copairing(&self) -> Result<Matrix<T>> {
        let inv = self.gram.inverse().map_err(|_| Error::PairingDegenerate {
            rank: self.gram.rank(),
            dim: self.dim,
        })?;
        inv.reshape(self.dim * self.dim, 1)
    }
}

/// Results of the six exact axiom checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub assoc: bool,
    pub unit: bool,
    pub coassoc: bool,
    pub counit: bool,
    pub frobenius: bool,
    pub commutative: bool,
}

impl AxiomReport {
    /// All Frobenius axioms; commutativity is not required.
    pub fn is_frobenius(&self) -> bool {
        self.assoc && self.unit && self.coassoc && self.counit && self.frobenius
    }

    pub fn is_commutative_frobenius(&self) -> bool {
        self.is_frobenius() && self.commutative
    }

    pub fn entries(&self) -> [(&'static str, bool); 6] {
        [
            ("assoc", self.assoc),
            ("unit", self.unit),
            ("coassoc", self.coassoc),
            ("counit", self.counit),
            ("frobenius", self.frobenius),
            ("commutative", self.commutative),
        ]
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct FrobeniusAlgebra<T> {
    pub dim: usize,
    pub mu: Matrix<T>,
    pub eta: Matrix<T>,
    pub delta: Matrix<T>,
    pub eps: Matrix<T>,
    pub basis_names: Option<Vec<String>>,
}

fn expect_shape<T: Scalar>(name: &str, m: &Matrix<T>, want: (usize, usize)) -> Result<()> {
    if m.shape() != want {
        return Err(Error::Format(format!(
            "{name} must be {}x{}, got {}x{}",
            want.0,
            want.1,
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

impl<T: Scalar> FrobeniusAlgebra<T> {
    /// Shape-checked constructor; axioms are checked separately by
    /// [`check_axioms`](Self::check_axioms).
    pub fn new(
        dim: usize,
        mu: Matrix<T>,
        eta: Matrix<T>,
        delta: Matrix<T>,
        eps: Matrix<T>,
        basis_names: Option<Vec<String>>,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::Format("algebra dimension must be positive".into()));
        }
        expect_shape("mu", &mu, (dim, dim * dim))?;
        expect_shape("eta", &eta, (dim, 1))?;
        expect_shape("delta", &delta, (dim * dim, dim))?;
        expect_shape("eps", &eps, (1, dim))?;
        if let Some(names) = &basis_names {
            if names.len() != dim {
                return Err(Error::Format(format!(
                    "{} basis names for a {dim}-dimensional algebra",
                    names.len()
                )));
            }
        }
        Ok(Self {
            dim,
            mu,
            eta,
            delta,
            eps,
            basis_names,
        })
    }

    /// Build `Δ` and `ε` from an algebra and a pairing:
    /// `ε(a) = ⟨a, 1⟩`, `Δ(a) = (μ ⊗ id)(a ⊗ c)` with `c` the copairing.
    pub fn from_economy(
        dim: usize,
        mu: Matrix<T>,
        eta: Matrix<T>,
        pairing: &BilinearPairing<T>,
    ) -> Result<Self> {
        let alg = UnitalAlgebra::new(dim, mu, eta)?;
        if pairing.dim != dim {
            return Err(Error::Shape {
                op: "from_economy",
                left: (dim, dim),
                right: pairing.gram.shape(),
            });
        }
        if let Some(t) = alg.associativity_witness() {
            return Err(Error::NotAssociative(t));
        }
        if let Some(i) = alg.unit_witness() {
            return Err(Error::NotUnital(i));
        }
        let rank = pairing.gram.rank();
        if rank < dim {
            return Err(Error::PairingDegenerate { rank, dim });
        }
        let g = &pairing.gram;
        for a in 0..dim {
            for b in 0..dim {
                let ab = alg.product(a, b);
                for c in 0..dim {
                    let bc = alg.product(b, c);
                    let left = (0..dim).fold(T::zero(), |acc, k| {
                        acc + ab[k].clone() * g.get(k, c).clone()
                    });
                    let right = (0..dim).fold(T::zero(), |acc, k| {
                        acc + g.get(a, k).clone() * bc[k].clone()
                    });
                    if left != right {
                        return Err(Error::PairingNotInvariant((a, b, c)));
                    }
                }
            }
        }
        let copairing = pairing.copairing()?;
        let id = Matrix::identity(dim);
        let delta = alg.mu.kron(&id).matmul(&id.kron(&copairing))?;
        let eps = g.matmul(&alg.eta)?.transpose();
        Self::new(dim, alg.mu, alg.eta, delta, eps, None)
    }

    /// `⟨a, b⟩ = ε(ab)`.
    pub fn to_economy(&self) -> BilinearPairing<T> {
        let row = self
            .eps
            .matmul(&self.mu)
            .expect("shapes checked at construction");
        BilinearPairing {
            dim: self.dim,
            gram: row.reshape(self.dim, self.dim).expect("dim² entries"),
        }
    }

    pub fn algebra(&self) -> UnitalAlgebra<T> {
        UnitalAlgebra {
            dim: self.dim,
            mu: self.mu.clone(),
            eta: self.eta.clone(),
        }
    }

    pub fn with_basis_names(mut self, names: Vec<String>) -> Self {
        assert_eq!(names.len(), self.dim);
        self.basis_names = Some(names);
        self
    }

    /// `Δ(η(1))`, the copairing as a `dim² × 1` column.
    pub fn copairing(&self) -> Matrix<T> {
        self.delta
            .matmul(&self.eta)
            .expect("shapes checked at construction")
    }

    /// `ε ∘ μ`, the pairing as a `1 × dim²` row.
    pub fn pairing_row(&self) -> Matrix<T> {
        self.eps
            .matmul(&self.mu)
            .expect("shapes checked at construction")
    }

    /// The handle operator `μ ∘ Δ`.
    pub fn handle(&self) -> Matrix<T> {
        self.mu
            .matmul(&self.delta)
            .expect("shapes checked at construction")
    }

    pub fn check_axioms(&self) -> AxiomReport {
        let n = self.dim;
        let id = Matrix::<T>::identity(n);
        let mm =
            |a: &Matrix<T>, b: &Matrix<T>| a.matmul(b).expect("shapes checked at construction");
        let (mu, eta, delta, eps) = (&self.mu, &self.eta, &self.delta, &self.eps);

        let assoc = mm(mu, &mu.kron(&id)) == mm(mu, &id.kron(mu));
        let unit = mm(mu, &eta.kron(&id)) == id && mm(mu, &id.kron(eta)) == id;
        let coassoc = mm(&delta.kron(&id), delta) == mm(&id.kron(delta), delta);
        let counit = mm(&eps.kron(&id), delta) == id && mm(&id.kron(eps), delta) == id;
        let middle = mm(delta, mu);
        let frobenius = mm(&mu.kron(&id), &id.kron(delta)) == middle
            && mm(&id.kron(mu), &delta.kron(&id)) == middle;
        let commutative = mm(mu, &swap_matrix(n, n)) == *mu;
        AxiomReport {
            assoc,
            unit,
            coassoc,
            counit,
            frobenius,
            commutative,
        }
    }

    /// `ε(H^g η(1))`: the closed genus-`g` surface evaluated directly from
    /// the structure maps.
    pub fn genus_value(&self, g: usize) -> T {
        let h = self.handle();
        let mut v = self.eta.clone();
        for _ in 0..g {
            v = h.matmul(&v).expect("square handle");
        }
        self.eps
            .matmul(&v)
            .expect("row times column")
            .get(0, 0)
            .clone()
    }
}

/// Check the four morphism equations for `psi: F → G`, in order:
/// 1 `ψμ_F = μ_G(ψ⊗ψ)`, 2 `ψη_F = η_G`, 3 `(ψ⊗ψ)Δ_F = Δ_Gψ`, 4 `ε_Gψ = ε_F`.
pub fn check_morphism<T: Scalar>(
    f: &FrobeniusAlgebra<T>,
    g: &FrobeniusAlgebra<T>,
    psi: &Matrix<T>,
) -> Result<()> {
    if psi.shape() != (g.dim, f.dim) {
        return Err(Error::Shape {
            op: "frobenius morphism",
            left: psi.shape(),
            right: (g.dim, f.dim),
        });
    }
    let mm = |a: &Matrix<T>, b: &Matrix<T>| a.matmul(b).expect("shapes checked above");
    let pp = psi.kron(psi);
    let equations = [
        mm(psi, &f.mu) == mm(&g.mu, &pp),
        mm(psi, &f.eta) == g.eta,
        mm(&pp, &f.delta) == mm(&g.delta, psi),
        mm(&g.eps, psi) == f.eps,
    ];
    match equations.iter().position(|ok| !ok) {
        Some(i) => Err(Error::NotAFrobeniusMorphism { equation: i + 1 }),
        None => Ok(()),
    }
}

/// The inverse of a Frobenius morphism `psi: F → G`, built without matrix
/// inversion as
/// `(id_F ⊗ ε_Gμ_G) ∘ (id_F ⊗ ψ ⊗ id_G) ∘ (Δ_Fη_F ⊗ id_G)`:
/// bend with the copairing of `F`, push the middle leg through `ψ`, and
/// close with the pairing of `G`.
pub fn morphism_inverse<T: Scalar>(
    f: &FrobeniusAlgebra<T>,
    g: &FrobeniusAlgebra<T>,
    psi: &Matrix<T>,
) -> Result<Matrix<T>> {
    check_morphism(f, g, psi)?;
    let id_f = Matrix::identity(f.dim);
    let id_g = Matrix::identity(g.dim);
    let open = f.copairing().kron(&id_g);
    let push = id_f.kron(psi).kron(&id_g);
    let close = id_f.kron(&g.pairing_row());
    close.matmul(&push)?.matmul(&open)
}
