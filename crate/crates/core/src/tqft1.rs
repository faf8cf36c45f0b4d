//! One-dimensional theories: the oriented point bordism signature and dual
//! pairs `(U, V, b, d)`.

use std::collections::BTreeMap;

use crate::error::{Error, Result, ZorroSide};
use crate::eval::Interpretation;
use crate::linalg::{swap_matrix, Matrix};
use crate::parser::parse;
use crate::scalar::Scalar;
use crate::term::{Duality, GeneratorType, ObjectWord, Relation, Signature, Term};

pub const POSITIVE: &str = "pp";
pub const NEGATIVE: &str = "pm";

/// Closed loop `() → ()`: bend up, braid, bend down.
pub const LOOP: &str = "coev ; swap[pp,pm] ; ev";

fn p(text: &str) -> Term {
    parse(text).expect("built-in term")
}

/// Objects `pp`, `pm`; generators `coev: () → (pp,pm)` and
/// `ev: (pm,pp) → ()`; the two snake relations.
pub fn bord1_signature() -> Signature {
    let mut gens = BTreeMap::new();
    gens.insert(
        "coev".to_owned(),
        GeneratorType {
            source: ObjectWord::unit(),
            target: ObjectWord::new([POSITIVE, NEGATIVE]),
        },
    );
    gens.insert(
        "ev".to_owned(),
        GeneratorType {
            source: ObjectWord::new([NEGATIVE, POSITIVE]),
            target: ObjectWord::unit(),
        },
    );
    let relations = vec![
        Relation {
            name: "snake_pm".into(),
            lhs: p("id[pm] * coev ; ev * id[pm]"),
            rhs: p("id[pm]"),
        },
        Relation {
            name: "snake_pp".into(),
            lhs: p("coev * id[pp] ; id[pp] * ev"),
            rhs: p("id[pp]"),
        },
    ];
    let mut dualities = BTreeMap::new();
    dualities.insert(
        POSITIVE.to_owned(),
        Duality {
            dual: NEGATIVE.into(),
            coev: p("coev"),
            pairing: p("ev"),
        },
    );
    dualities.insert(
        NEGATIVE.to_owned(),
        Duality {
            dual: POSITIVE.into(),
            coev: p("coev ; swap[pp,pm]"),
            pairing: p("swap[pp,pm] ; ev"),
        },
    );
    Signature::new(
        vec![POSITIVE.into(), NEGATIVE.into()],
        gens,
        relations,
        dualities,
    )
    .expect("built-in signature is well formed")
}

/// A duality `b: k → U ⊗ V`, `d: V ⊗ U → k` satisfying both snake moves.
#[derive(Clone, Debug, PartialEq)]
pub struct DualPair<T> {
    dim_u: usize,
    dim_v: usize,
    b: Matrix<T>,
    d: Matrix<T>,
}

impl<T: Scalar> DualPair<T> {
    pub fn new(dim_u: usize, dim_v: usize, b: Matrix<T>, d: Matrix<T>) -> Result<Self> {
        let pair = Self::new_unchecked(dim_u, dim_v, b, d)?;
        if let Some(side) = pair.zorro_failure() {
            return Err(Error::ZorroViolation(side));
        }
        Ok(pair)
    }

    /// Shape-checked only; the snake identities may fail.
    pub fn new_unchecked(dim_u: usize, dim_v: usize, b: Matrix<T>, d: Matrix<T>) -> Result<Self> {
        if dim_u == 0 || dim_v == 0 {
            return Err(Error::Format(
                "dual pair dimensions must be positive".into(),
            ));
        }
        if b.shape() != (dim_u * dim_v, 1) {
            return Err(Error::Shape {
                op: "dual pair b",
                left: b.shape(),
                right: (dim_u * dim_v, 1),
            });
        }
        if d.shape() != (1, dim_v * dim_u) {
            return Err(Error::Shape {
                op: "dual pair d",
                left: d.shape(),
                right: (1, dim_v * dim_u),
            });
        }
        Ok(Self { dim_u, dim_v, b, d })
    }

    /// `b = Σ e_i ⊗ e_i`, `d = Σ e_i* ⊗ e_i*` on `k^n`.
    pub fn standard(n: usize) -> Self {
        let flat = Matrix::<T>::identity(n).into_entries();
        Self::new(n, n, Matrix::column(flat.clone()), Matrix::row(flat)).expect("standard pair")
    }

    pub fn dim_u(&self) -> usize {
        self.dim_u
    }

    pub fn dim_v(&self) -> usize {
        self.dim_v
    }

    pub fn b(&self) -> &Matrix<T> {
        &self.b
    }

    pub fn d(&self) -> &Matrix<T> {
        &self.d
    }

    /// The first snake identity that fails, if any.
    pub fn zorro_failure(&self) -> Option<ZorroSide> {
        let iu = Matrix::identity(self.dim_u);
        let iv = Matrix::identity(self.dim_v);
        let v_side = self.d.kron(&iv).matmul(&iv.kron(&self.b)).expect("shapes");
        if v_side != iv {
            return Some(ZorroSide::V);
        }
        let u_side = iu.kron(&self.d).matmul(&self.b.kron(&iu)).expect("shapes");
        if u_side != iu {
            return Some(ZorroSide::U);
        }
        None
    }

    /// Closed loop value `d ∘ β_{U,V} ∘ b`.
    pub fn loop_value(&self) -> T {
        let braided = swap_matrix(self.dim_u, self.dim_v)
            .matmul(&self.b)
            .expect("shapes");
        self.d.matmul(&braided).expect("shapes").get(0, 0).clone()
    }
}

/// `pp ↦ U`, `pm ↦ V`, `coev ↦ b`, `ev ↦ d`.
pub fn dual_pair_interpretation<T: Scalar>(p: &DualPair<T>) -> Result<Interpretation<T>> {
    if let Some(side) = p.zorro_failure() {
        return Err(Error::ZorroViolation(side));
    }
    Ok(raw_interpretation(p))
}

/// As [`dual_pair_interpretation`], without checking the snake identities.
pub fn raw_interpretation<T: Scalar>(p: &DualPair<T>) -> Interpretation<T> {
    let mut dims = BTreeMap::new();
    dims.insert(POSITIVE.to_owned(), p.dim_u);
    dims.insert(NEGATIVE.to_owned(), p.dim_v);
    let mut gens = BTreeMap::new();
    gens.insert("coev".to_owned(), p.b.clone());
    gens.insert("ev".to_owned(), p.d.clone());
    Interpretation::new(bord1_signature(), dims, gens).expect("shapes checked by DualPair")
}

fn check_morphism_shapes<T: Scalar>(
    p: &DualPair<T>,
    q: &DualPair<T>,
    f: &Matrix<T>,
    g: &Matrix<T>,
) -> Result<()> {
    if f.shape() != (q.dim_u, p.dim_u) {
        return Err(Error::Shape {
            op: "dual pair morphism f",
            left: f.shape(),
            right: (q.dim_u, p.dim_u),
        });
    }
    if g.shape() != (q.dim_v, p.dim_v) {
        return Err(Error::Shape {
            op: "dual pair morphism g",
            left: g.shape(),
            right: (q.dim_v, p.dim_v),
        });
    }
    Ok(())
}

/// Whether `(f, g)` is a morphism `p → q`:
/// `d_p = d_q ∘ (g ⊗ f)` and `(f ⊗ g) ∘ b_p = b_q`.
pub fn dp_morphism_check<T: Scalar>(
    p: &DualPair<T>,
    q: &DualPair<T>,
    f: &Matrix<T>,
    g: &Matrix<T>,
) -> Result<bool> {
    check_morphism_shapes(p, q, f, g)?;
    let death = q.d.matmul(&g.kron(f))? == p.d;
    let birth = f.kron(g).matmul(&p.b)? == q.b;
    Ok(death && birth)
}

/// Inverse of a dual-pair morphism, obtained by sandwiching: bend with
/// `b_p`, push through the other component of the morphism, close with `d_q`.
/// No matrix is inverted.
pub fn dp_morphism_inverse<T: Scalar>(
    p: &DualPair<T>,
    q: &DualPair<T>,
    f: &Matrix<T>,
    g: &Matrix<T>,
) -> Result<(Matrix<T>, Matrix<T>)> {
    if !dp_morphism_check(p, q, f, g)? {
        return Err(Error::NotADualPairMorphism);
    }
    let (iu, iv) = (Matrix::identity(p.dim_u), Matrix::identity(p.dim_v));
    let (iu2, iv2) = (Matrix::identity(q.dim_u), Matrix::identity(q.dim_v));

    // f⁻¹ = (id_U ⊗ d_q) ∘ (id_U ⊗ g ⊗ id_U') ∘ (b_p ⊗ id_U')
    let f_inv = iu
        .kron(&q.d)
        .matmul(&iu.kron(g).kron(&iu2))?
        .matmul(&p.b.kron(&iu2))?;

    // g⁻¹ uses the braided duality V ⊣ U: b' = β b_p, d' = d_q β.
    let b_vu = swap_matrix(p.dim_u, p.dim_v).matmul(&p.b)?;
    let d_uv = q.d.matmul(&swap_matrix(q.dim_u, q.dim_v))?;
    let g_inv = iv
        .kron(&d_uv)
        .matmul(&iv.kron(f).kron(&iv2))?
        .matmul(&b_vu.kron(&iv2))?;
    Ok((f_inv, g_inv))
}
