//! Evaluation of terms as linear maps.
//!
//! An [`Interpretation`] fixes a dimension for each object generator and a
//! matrix for each morphism generator; [`Interpretation::eval`] extends that
//! assignment to every well-typed term as a strict symmetric monoidal functor
//! into matrices. The same module holds the bend/reconstruct pair that turns
//! a map `E → F` into a state `() → F·E*` and back, using the duality data
//! designated in the signature.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{swap_matrix, Matrix};
use crate::scalar::Scalar;
use crate::term::{typecheck, ObjectWord, Signature, Term};

#[derive(Clone, Debug, PartialEq)]
pub struct Interpretation<T> {
    sig: Signature,
    obj_dim: BTreeMap<String, usize>,
    gen_matrix: BTreeMap<String, Matrix<T>>,
}

impl<T: Scalar> Interpretation<T> {
    /// Checks that every object has a positive dimension and every generator
    /// a matrix of shape `dim(target) × dim(source)`.
    pub fn new(
        sig: Signature,
        obj_dim: BTreeMap<String, usize>,
        gen_matrix: BTreeMap<String, Matrix<T>>,
    ) -> Result<Self> {
        for o in sig.objects() {
            match obj_dim.get(o) {
                Some(0) => {
                    return Err(Error::Interpretation(format!(
                        "object `{o}` has dimension 0"
                    )))
                }
                Some(_) => {}
                None => {
                    return Err(Error::Interpretation(format!(
                        "object `{o}` has no dimension"
                    )))
                }
            }
        }
        if let Some(extra) = obj_dim.keys().find(|k| !sig.has_object(k)) {
            return Err(Error::UnknownObject(extra.clone()));
        }
        let interp = Self {
            sig,
            obj_dim,
            gen_matrix,
        };
        for (name, ty) in interp.sig.generators() {
            let m = interp.gen_matrix.get(name).ok_or_else(|| {
                Error::Interpretation(format!("generator `{name}` has no matrix"))
            })?;
            let want = (interp.dim(&ty.target), interp.dim(&ty.source));
            if m.shape() != want {
                return Err(Error::Interpretation(format!(
                    "generator `{name}` needs a {}x{} matrix, got {}x{}",
                    want.0,
                    want.1,
                    m.rows(),
                    m.cols()
                )));
            }
        }
        if let Some(extra) = interp
            .gen_matrix
            .keys()
            .find(|k| interp.sig.generator(k).is_none())
        {
            return Err(Error::UnknownGenerator(extra.clone()));
        }
        Ok(interp)
    }

    pub fn signature(&self) -> &Signature {
        &self.sig
    }

    pub fn object_dims(&self) -> &BTreeMap<String, usize> {
        &self.obj_dim
    }

    pub fn generator_matrices(&self) -> &BTreeMap<String, Matrix<T>> {
        &self.gen_matrix
    }

    /// Product of the label dimensions; the empty word has dimension 1.
    /// Labels are assumed to belong to the signature.
    pub fn dim(&self, w: &ObjectWord) -> usize {
        w.labels().iter().map(|l| self.obj_dim[l]).product()
    }

    /// Type-check `t`, then evaluate it.
    pub fn eval(&self, t: &Term) -> Result<Matrix<T>> {
        typecheck(t, &self.sig)?;
        Ok(self.eval_checked(t))
    }

    fn eval_checked(&self, t: &Term) -> Matrix<T> {
        match t {
            Term::Gen(name) => self.gen_matrix[name].clone(),
            Term::Id(w) => Matrix::identity(self.dim(w)),
            Term::Swap(x, y) => swap_matrix(self.dim(x), self.dim(y)),
            Term::Compose(first, then) => self
                .eval_checked(then)
                .matmul(&self.eval_checked(first))
                .expect("well-typed composite"),
            Term::Tensor(l, r) => self.eval_checked(l).kron(&self.eval_checked(r)),
        }
    }

    /// Evaluate both sides of every relation of the signature.
    pub fn check_relations(&self) -> RelationReport<T> {
        let outcomes = self
            .sig
            .relations()
            .iter()
            .map(|rel| {
                let lhs = self.eval_checked(&rel.lhs);
                let rhs = self.eval_checked(&rel.rhs);
                let mismatch = lhs.first_difference(&rhs).map(|(r, c)| EntryMismatch {
                    row: r,
                    col: c,
                    lhs: lhs.get(r, c).clone(),
                    rhs: rhs.get(r, c).clone(),
                });
                RelationOutcome {
                    name: rel.name.clone(),
                    lhs: rel.lhs.render(),
                    rhs: rel.rhs.render(),
                    mismatch,
                }
            })
            .collect();
        RelationReport { outcomes }
    }

    /// The state `() → F·E*` obtained by bending the source of `t: E → F`
    /// up with the designated coevaluations.
    pub fn bend_state(&self, t: &Term) -> Result<Matrix<T>> {
        let (source, _) = typecheck(t, &self.sig)?;
        if source.is_empty() {
            return Ok(self.eval_checked(t));
        }
        let dual = self.dim(&dual_word(&source, &self.sig)?);
        // (M ⊗ id) vec(C) = vec(M C) for row-major vec.
        let m = self.eval_checked(t);
        let bent = m.matmul(&self.nested_duality(&source, true)?)?;
        bent.reshape(m.rows() * dual, 1)
    }

    /// Undo [`bend_state`](Self::bend_state): contract the `E*` leg of a
    /// `dim(F)·dim(E*) × 1` state against the designated pairing of `E`,
    /// giving `(id_F ⊗ d_E) ∘ (state ⊗ id_E)`.
    pub fn reconstruct_map(
        &self,
        state: &Matrix<T>,
        source: &ObjectWord,
        target: &ObjectWord,
    ) -> Result<Matrix<T>> {
        let df = self.dim(target);
        let dual = self.dim(&dual_word(source, &self.sig)?);
        if state.shape() != (df * dual, 1) {
            return Err(Error::Shape {
                op: "reconstruct_map",
                left: state.shape(),
                right: (df * dual, 1),
            });
        }
        if source.is_empty() {
            return Ok(state.clone());
        }
        // (id ⊗ d)(vec(S) ⊗ id) = S D with D the pairing as a dim(E*) × dim(E) matrix.
        state
            .reshape(df, dual)?
            .matmul(&self.nested_duality(source, false)?)
    }

    /// The value of [`coevaluation`] reshaped to `dim(E) × dim(E*)`, or of
    /// [`evaluation`] reshaped to `dim(E*) × dim(E)`. Both factor as
    /// `Π_l M_l[x_l, y_l]` with the `E*` digits in reverse label order.
    fn nested_duality(&self, e: &ObjectWord, coev: bool) -> Result<Matrix<T>> {
        let mut factors = Vec::new();
        for l in e.labels() {
            let d = self
                .sig
                .duality(l)
                .ok_or_else(|| Error::MissingDuality(l.clone()))?;
            let (n, n_dual) = (
                self.dim(&ObjectWord(vec![l.clone()])),
                self.dim(&ObjectWord(vec![d.dual.clone()])),
            );
            factors.push(if coev {
                self.eval(&d.coev)?.reshape(n, n_dual)?
            } else {
                self.eval(&d.pairing)?.reshape(n_dual, n)?
            });
        }
        if !coev {
            factors.reverse();
        }
        let col_dims: Vec<usize> = factors.iter().map(Matrix::cols).collect();
        let k = factors
            .iter()
            .fold(Matrix::identity(1), |acc, f| acc.kron(f));
        let mut out = Matrix::zeros(k.rows(), k.cols());
        for c in 0..k.cols() {
            let mut rest = c;
            let mut digits = vec![0; col_dims.len()];
            for (slot, &b) in digits.iter_mut().zip(&col_dims).rev() {
                *slot = rest % b;
                rest /= b;
            }
            let flipped = digits
                .iter()
                .zip(&col_dims)
                .rev()
                .fold(0, |acc, (&x, &b)| acc * b + x);
            for r in 0..k.rows() {
                out.set(r, flipped, k.get(r, c).clone());
            }
        }
        Ok(out)
    }
}

/// `E*`: the designated duals of the labels of `E`, in reverse order.
pub fn dual_word(e: &ObjectWord, sig: &Signature) -> Result<ObjectWord> {
    e.labels()
        .iter()
        .rev()
        .map(|l| {
            sig.duality(l)
                .map(|d| d.dual.clone())
                .ok_or_else(|| Error::MissingDuality(l.clone()))
        })
        .collect::<Result<Vec<_>>>()
        .map(ObjectWord)
}

/// The nested coevaluation `() → E·E*` built from per-label coevaluations.
pub fn coevaluation(e: &ObjectWord, sig: &Signature) -> Result<Term> {
    let Some((head, rest)) = e.labels().split_first() else {
        return Ok(Term::Id(ObjectWord::unit()));
    };
    let d = sig
        .duality(head)
        .ok_or_else(|| Error::MissingDuality(head.clone()))?;
    if rest.is_empty() {
        return Ok(d.coev.clone());
    }
    let inner = coevaluation(&ObjectWord(rest.to_vec()), sig)?;
    Ok(d.coev.clone().then(
        Term::id([head.clone()])
            .tensor(inner)
            .tensor(Term::id([d.dual.clone()])),
    ))
}

/// The nested evaluation `E*·E → ()` matching [`coevaluation`].
pub fn evaluation(e: &ObjectWord, sig: &Signature) -> Result<Term> {
    let Some((head, rest)) = e.labels().split_first() else {
        return Ok(Term::Id(ObjectWord::unit()));
    };
    let d = sig
        .duality(head)
        .ok_or_else(|| Error::MissingDuality(head.clone()))?;
    if rest.is_empty() {
        return Ok(d.pairing.clone());
    }
    let rest = ObjectWord(rest.to_vec());
    let inner = evaluation(&rest, sig)?;
    Ok(Term::Id(dual_word(&rest, sig)?)
        .tensor(d.pairing.clone())
        .tensor(Term::Id(rest))
        .then(inner))
}

/// `eval_term(t, I)`.
pub fn eval_term<T: Scalar>(t: &Term, interp: &Interpretation<T>) -> Result<Matrix<T>> {
    interp.eval(t)
}

#[derive(Clone, Debug, PartialEq)]
pub struct EntryMismatch<T> {
    pub row: usize,
    pub col: usize,
    pub lhs: T,
    pub rhs: T,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelationOutcome<T> {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    /// First differing entry, `None` when both sides agree.
    pub mismatch: Option<EntryMismatch<T>>,
}

impl<T> RelationOutcome<T> {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RelationReport<T> {
    pub outcomes: Vec<RelationOutcome<T>>,
}

impl<T> RelationReport<T> {
    pub fn all_pass(&self) -> bool {
        self.outcomes.iter().all(RelationOutcome::passed)
    }

    pub fn failing(&self) -> Vec<&str> {
        self.outcomes
            .iter()
            .filter(|o| !o.passed())
            .map(|o| o.name.as_str())
            .collect()
    }
}
