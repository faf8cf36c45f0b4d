//! Two-dimensional theories: the oriented surface bordism signature, its
//! interpretation by a commutative Frobenius algebra, closed-surface values,
//! connected sums, and reduction along a circle.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::eval::Interpretation;
use crate::frobenius::FrobeniusAlgebra;
use crate::linalg::Matrix;
use crate::parser::parse;
use crate::scalar::Scalar;
use crate::term::{typecheck, Duality, GeneratorType, ObjectWord, Relation, Signature, Term};
use crate::tqft1::DualPair;

pub const CIRCLE: &str = "S1";

fn p(text: &str) -> Term {
    parse(text).expect("built-in term")
}

fn rel(name: &str, lhs: &str, rhs: &str) -> Relation {
    Relation {
        name: name.to_owned(),
        lhs: p(lhs),
        rhs: p(rhs),
    }
}

/// One object `S1`; generators `pants`, `copants`, `cap`, `cup`; eleven
/// relations: (co)associativity, the four (co)unit laws, the three pairwise
/// Frobenius equalities, and (co)commutativity.
pub fn bord2_signature() -> Signature {
    let c = || ObjectWord::single(CIRCLE);
    let cc = || ObjectWord::new([CIRCLE, CIRCLE]);
    let mut gens = BTreeMap::new();
    for (name, source, target) in [
        ("pants", cc(), c()),
        ("copants", c(), cc()),
        ("cap", ObjectWord::unit(), c()),
        ("cup", c(), ObjectWord::unit()),
    ] {
        gens.insert(name.to_owned(), GeneratorType { source, target });
    }
    let frob_left = "id[S1] * copants ; pants * id[S1]";
    let frob_mid = "pants ; copants";
    let frob_right = "copants * id[S1] ; id[S1] * pants";
    let relations = vec![
        rel(
            "R1.assoc",
            "pants * id[S1] ; pants",
            "id[S1] * pants ; pants",
        ),
        rel(
            "R1.coassoc",
            "copants ; copants * id[S1]",
            "copants ; id[S1] * copants",
        ),
        rel("R2.unit_left", "cap * id[S1] ; pants", "id[S1]"),
        rel("R2.unit_right", "id[S1] * cap ; pants", "id[S1]"),
        rel("R2.counit_left", "copants ; cup * id[S1]", "id[S1]"),
        rel("R2.counit_right", "copants ; id[S1] * cup", "id[S1]"),
        rel("R3.left_middle", frob_left, frob_mid),
        rel("R3.middle_right", frob_mid, frob_right),
        rel("R3.left_right", frob_left, frob_right),
        rel("R4.pants", "swap[S1,S1] ; pants", "pants"),
        rel("R4.copants", "copants ; swap[S1,S1]", "copants"),
    ];
    let mut dualities = BTreeMap::new();
    dualities.insert(
        CIRCLE.to_owned(),
        Duality {
            dual: CIRCLE.into(),
            coev: p("cap ; copants"),
            pairing: p("pants ; cup"),
        },
    );
    Signature::new(vec![CIRCLE.into()], gens, relations, dualities)
        .expect("built-in signature is well formed")
}

/// `pants ↦ μ`, `copants ↦ Δ`, `cap ↦ η`, `cup ↦ ε`; requires a
/// commutative Frobenius algebra.
pub fn frobenius_interpretation<T: Scalar>(f: &FrobeniusAlgebra<T>) -> Result<Interpretation<T>> {
    let r = f.check_axioms();
    let violated = [
        ("assoc", r.assoc, "R1"),
        ("coassoc", r.coassoc, "R1"),
        ("unit", r.unit, "R2"),
        ("counit", r.counit, "R2"),
        ("frobenius", r.frobenius, "R3"),
    ]
    .into_iter()
    .find(|(_, ok, _)| !ok);
    if let Some((axiom, _, relation)) = violated {
        return Err(Error::AxiomViolated { axiom, relation });
    }
    if !r.commutative {
        return Err(Error::NotCommutative);
    }
    Ok(frobenius_interpretation_unchecked(f))
}

/// Assign the structure maps without checking any axiom, e.g. to see which
/// relations a non-commutative algebra breaks.
pub fn frobenius_interpretation_unchecked<T: Scalar>(f: &FrobeniusAlgebra<T>) -> Interpretation<T> {
    let mut dims = BTreeMap::new();
    dims.insert(CIRCLE.to_owned(), f.dim);
    let mut gens = BTreeMap::new();
    gens.insert("pants".to_owned(), f.mu.clone());
    gens.insert("copants".to_owned(), f.delta.clone());
    gens.insert("cap".to_owned(), f.eta.clone());
    gens.insert("cup".to_owned(), f.eps.clone());
    Interpretation::new(bord2_signature(), dims, gens).expect("shapes checked by FrobeniusAlgebra")
}

/// Connected closed surface of genus `g`: `cap ; (copants ; pants)^g ; cup`.
pub fn surface_term(genus: usize) -> Term {
    let mut factors = vec![Term::gen("cap")];
    for _ in 0..genus {
        factors.push(Term::gen("copants"));
        factors.push(Term::gen("pants"));
    }
    factors.push(Term::gen("cup"));
    Term::sequence(factors).expect("nonempty")
}

/// Value of the genus-`g` surface under the theory of `f`.
pub fn surface_invariant<T: Scalar>(f: &FrobeniusAlgebra<T>, genus: usize) -> Result<T> {
    let z = frobenius_interpretation(f)?;
    Ok(z.eval(&surface_term(genus))?.get(0, 0).clone())
}

/// Checks `Z(Ñ ; M̃) · Z(S²) = Z(M) ∘ Z(N)` for a one-dimensional state space.
///
/// `term_m: () → E` must start with `cap` and `term_n: F → ()` must end with
/// `cup`; removing those discs gives `M̃: S1 → E` and `Ñ: F → S1`, and the
/// connected sum is `Ñ ; M̃: F → E`.
pub fn connected_sum_identity<T: Scalar>(
    f: &FrobeniusAlgebra<T>,
    term_m: &Term,
    term_n: &Term,
) -> Result<bool> {
    if f.dim != 1 {
        return Err(Error::Format(format!(
            "connected sums need a one-dimensional state space, got dimension {}",
            f.dim
        )));
    }
    let z = frobenius_interpretation(f)?;
    let sphere = z.eval(&p("cap ; cup"))?.get(0, 0).clone();
    if sphere.is_zero() {
        return Err(Error::Format("the sphere evaluates to zero".into()));
    }
    let sig = z.signature();
    let (m_src, _) = typecheck(term_m, sig)?;
    let (_, n_tgt) = typecheck(term_n, sig)?;
    if !m_src.is_empty() || !n_tgt.is_empty() {
        return Err(Error::TermShape(
            "M must start at () and N must end at ()".into(),
        ));
    }
    let m_tilde = strip_first_cap(term_m)?;
    let n_tilde = strip_last_cup(term_n)?;
    let glued = z.eval(&n_tilde.then(m_tilde))?;
    let left = glued.scale(&sphere);
    let right = z.eval(term_m)?.matmul(&z.eval(term_n)?)?;
    Ok(left == right)
}

fn strip_first_cap(t: &Term) -> Result<Term> {
    let factors = t.compose_factors();
    match factors.split_first() {
        Some((Term::Gen(name), rest)) if name == "cap" => {
            Ok(Term::sequence(rest.iter().map(|&t| t.clone()))
                .unwrap_or_else(|| Term::id([CIRCLE])))
        }
        _ => Err(Error::TermShape(format!("`{t}` does not start with cap"))),
    }
}

fn strip_last_cup(t: &Term) -> Result<Term> {
    let factors = t.compose_factors();
    match factors.split_last() {
        Some((Term::Gen(name), rest)) if name == "cup" => {
            Ok(Term::sequence(rest.iter().map(|&t| t.clone()))
                .unwrap_or_else(|| Term::id([CIRCLE])))
        }
        _ => Err(Error::TermShape(format!("`{t}` does not end with cup"))),
    }
}

/// Cross with a circle: the state space becomes a self-dual object with
/// `b = Δ ∘ η` and `d = ε ∘ μ`.
pub fn reduce_along_circle<T: Scalar>(f: &FrobeniusAlgebra<T>) -> Result<DualPair<T>> {
    let r = f.check_axioms();
    if !r.is_frobenius() {
        return Err(Error::AxiomViolated {
            axiom: "frobenius",
            relation: "R1-R3",
        });
    }
    if !r.commutative {
        return Err(Error::NotCommutative);
    }
    DualPair::new(f.dim, f.dim, f.copairing(), f.pairing_row())
}

/// `Z(M ⊔ N)` for two closed terms, evaluated as a tensor product.
pub fn disjoint_union<T: Scalar>(z: &Interpretation<T>, m: &Term, n: &Term) -> Result<Matrix<T>> {
    z.eval(&m.clone().tensor(n.clone()))
}
