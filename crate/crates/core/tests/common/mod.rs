#![allow(dead_code)]

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tqft::examples::{group_algebra, matrix_center_algebra, milnor_ring, zn_table};
use tqft::fusion::{fibonacci, grothendieck_frobenius, ising, vec_zn};
use tqft::tqft2::{bord2_signature, CIRCLE};
use tqft::{typecheck, FrobeniusAlgebra, Matrix, ObjectWord, Signature, Term, Q};

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The eleven commutative Frobenius algebras used across the suites.
pub fn shipped_algebras() -> Vec<(&'static str, FrobeniusAlgebra<Q>)> {
    vec![
        ("z2", group_algebra(&zn_table(2)).unwrap()),
        ("z3", group_algebra(&zn_table(3)).unwrap()),
        (
            "z2xz2",
            group_algebra(&zn_table(2).product(&zn_table(2))).unwrap(),
        ),
        ("milnor:3", milnor_ring(3).unwrap()),
        ("milnor:4", milnor_ring(4).unwrap()),
        ("milnor:5", milnor_ring(5).unwrap()),
        ("center:[1,2]", matrix_center_algebra(&[1, 2]).unwrap()),
        (
            "gr(Fibonacci)",
            grothendieck_frobenius(&fibonacci()).unwrap(),
        ),
        ("gr(Ising)", grothendieck_frobenius(&ising()).unwrap()),
        ("gr(Vec Z3)", grothendieck_frobenius(&vec_zn(3)).unwrap()),
        ("trivial", group_algebra(&zn_table(1)).unwrap()),
    ]
}

pub fn algebra(name: &str) -> FrobeniusAlgebra<Q> {
    shipped_algebras()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, a)| a)
        .unwrap_or_else(|| panic!("no algebra {name}"))
}

// ---- independent dense oracle on Vec<Vec<Q>> ----

pub type Dense = Vec<Vec<Q>>;

pub fn dense(m: &Matrix<Q>) -> Dense {
    (0..m.rows()).map(|r| m.row_vec(r).to_vec()).collect()
}

pub fn dense_mul(a: &Dense, b: &Dense) -> Dense {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            assert_eq!(row.len(), inner);
            (0..cols)
                .map(|c| {
                    let mut acc = q(0, 1);
                    for k in 0..inner {
                        acc += &row[k] * &b[k][c];
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

pub fn dense_identity(n: usize) -> Dense {
    (0..n)
        .map(|i| (0..n).map(|j| q(i64::from(i == j), 1)).collect())
        .collect()
}

/// `A ⊗ B` written out with explicit block indices.
pub fn dense_kron(a: &Dense, b: &Dense) -> Dense {
    let (ar, ac) = (a.len(), a[0].len());
    let (br, bc) = (b.len(), b[0].len());
    let mut out = vec![vec![q(0, 1); ac * bc]; ar * br];
    for i in 0..ar {
        for j in 0..ac {
            for k in 0..br {
                for l in 0..bc {
                    out[i * br + k][j * bc + l] = &a[i][j] * &b[k][l];
                }
            }
        }
    }
    out
}

// ---- Bord2 term generation ----

fn s1_word(n: usize) -> ObjectWord {
    ObjectWord::new(std::iter::repeat_n(CIRCLE, n))
}

/// Bord2 atoms: every generator, the basic identities and the braiding.
pub fn bord2_atoms() -> Vec<Term> {
    vec![
        Term::gen("pants"),
        Term::gen("copants"),
        Term::gen("cap"),
        Term::gen("cup"),
        Term::Id(s1_word(1)),
        Term::Id(ObjectWord::unit()),
        Term::swap(s1_word(1), s1_word(1)),
    ]
}

fn width(t: &Term, sig: &Signature) -> Option<(usize, usize)> {
    typecheck(t, sig).ok().map(|(s, t)| (s.len(), t.len()))
}

/// All well-typed Bord2 terms of AST depth at most `max_depth` whose
/// source and target have at most `max_width` circles.
pub fn enumerate_terms(max_depth: usize, max_width: usize) -> Vec<Term> {
    let sig = bord2_signature();
    let mut by_depth: Vec<Vec<Term>> = vec![Vec::new(), bord2_atoms()];
    for d in 2..=max_depth {
        let lower: Vec<&Term> = by_depth.iter().flatten().collect();
        let mut next = Vec::new();
        for a in &lower {
            for b in &lower {
                if a.depth().max(b.depth()) != d - 1 {
                    continue;
                }
                for t in [
                    (*a).clone().then((*b).clone()),
                    (*a).clone().tensor((*b).clone()),
                ] {
                    if let Some((s, o)) = width(&t, &sig) {
                        if s <= max_width && o <= max_width {
                            next.push(t);
                        }
                    }
                }
            }
        }
        by_depth.push(next);
    }
    by_depth.into_iter().flatten().collect()
}

/// Deterministic sample of `count` well-typed depth-`depth` terms built from
/// pairs of terms in `pool`, with interfaces of at most `max_width` circles.
pub fn sample_terms(
    pool: &[Term],
    depth: usize,
    count: usize,
    max_width: usize,
    seed: u64,
) -> Vec<Term> {
    let sig = bord2_signature();
    let mut r = rng(seed);
    let tops: Vec<&Term> = pool.iter().filter(|t| t.depth() == depth - 1).collect();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 200 * count {
        attempts += 1;
        let a = (*tops.choose(&mut r).expect("nonempty pool")).clone();
        let b = pool.choose(&mut r).expect("nonempty pool").clone();
        let (a, b) = if r.gen_bool(0.5) { (a, b) } else { (b, a) };
        let t = if r.gen_bool(0.5) {
            a.then(b)
        } else {
            a.tensor(b)
        };
        if let Some((s, o)) = width(&t, &sig) {
            if s <= max_width && o <= max_width && seen.insert(t.render()) {
                out.push(t);
            }
        }
    }
    out
}

/// A random well-typed Bord2 term `S1^width_in → ?` built as a stack of
/// `layers` layers; each layer tensors blocks covering the current word and
/// never grows it beyond `max_width`.
pub fn layered_term(r: &mut impl Rng, width_in: usize, layers: usize, max_width: usize) -> Term {
    let mut w = width_in;
    let mut factors = Vec::new();
    for _ in 0..layers {
        let mut blocks: Vec<Term> = Vec::new();
        let (mut left, mut out_w) = (w, 0);
        loop {
            // circles still to be consumed plus circles already produced
            let room = max_width.saturating_sub(out_w + left);
            if left == 0 {
                if blocks.is_empty() {
                    blocks.push(if room >= 1 && r.gen_bool(0.7) {
                        out_w += 1;
                        Term::gen("cap")
                    } else {
                        Term::Id(ObjectWord::unit())
                    });
                }
                break;
            }
            let mut choices: Vec<(Term, usize, usize)> =
                vec![(Term::Id(s1_word(1)), 1, 1), (Term::gen("cup"), 1, 0)];
            if room >= 1 {
                choices.push((Term::gen("copants"), 1, 2));
                choices.push((Term::gen("cap"), 0, 1));
            }
            if left >= 2 {
                choices.push((Term::gen("pants"), 2, 1));
                choices.push((Term::swap(s1_word(1), s1_word(1)), 2, 2));
            }
            let (t, i, o) = choices.choose(r).expect("nonempty").clone();
            blocks.push(t);
            left -= i;
            out_w += o;
        }
        w = out_w;
        factors.push(
            blocks
                .into_iter()
                .reduce(Term::tensor)
                .expect("at least one block"),
        );
    }
    Term::sequence(factors).unwrap_or_else(|| Term::Id(s1_word(width_in)))
}

pub fn s1(n: usize) -> ObjectWord {
    s1_word(n)
}

// ---- transported structures ----

/// Carry `f` along an invertible change of basis `p`, so that `p` becomes a
/// Frobenius isomorphism `f → transport(f, p)`.
pub fn transport(f: &FrobeniusAlgebra<Q>, p: &Matrix<Q>) -> FrobeniusAlgebra<Q> {
    let pi = p.inverse().expect("invertible change of basis");
    let mu = p.matmul(&f.mu).unwrap().matmul(&pi.kron(&pi)).unwrap();
    let eta = p.matmul(&f.eta).unwrap();
    let delta = p.kron(p).matmul(&f.delta).unwrap().matmul(&pi).unwrap();
    let eps = f.eps.matmul(&pi).unwrap();
    FrobeniusAlgebra::new(f.dim, mu, eta, delta, eps, None).unwrap()
}

/// A random integer matrix with nonzero determinant.
pub fn random_invertible(r: &mut impl Rng, n: usize) -> Matrix<Q> {
    loop {
        let entries = (0..n * n).map(|_| q(r.gen_range(-2..=2), 1)).collect();
        let m = Matrix::new(n, n, entries).unwrap();
        if m.rank() == n {
            return m;
        }
    }
}

pub fn permutation(images: &[usize]) -> Matrix<Q> {
    let n = images.len();
    let mut m = Matrix::zeros(n, n);
    for (src, &dst) in images.iter().enumerate() {
        m.set(dst, src, q(1, 1));
    }
    m
}

// ---- CLI fixtures ----

pub fn fixture(name: &str) -> String {
    format!("{}/tests/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

/// One malformed input: the CLI arguments (fixture names are resolved),
/// the exit code, and a substring locating the error.
pub struct ErrorFixture {
    pub args: Vec<String>,
    pub code: i32,
    pub position: &'static str,
}

pub fn error_fixtures() -> Vec<ErrorFixture> {
    let case = |args: &[&str], code, position| ErrorFixture {
        args: args
            .iter()
            .map(|a| match a.strip_prefix('@') {
                Some(name) => fixture(name),
                None => (*a).to_owned(),
            })
            .collect(),
        code,
        position,
    };
    vec![
        case(
            &["check", "--algebra", "@algebra_syntax.json"],
            2,
            "line 1 column 37",
        ),
        case(
            &["check", "--algebra", "@algebra_missing_key.json"],
            2,
            "at /: missing key \"eta\"",
        ),
        case(
            &["check", "--algebra", "@algebra_bad_scalar.json"],
            2,
            "at /mu/1/2",
        ),
        case(
            &["check", "--algebra", "@algebra_wrong_shape.json"],
            2,
            "at /mu",
        ),
        case(
            &["check", "--algebra", "@algebra_unknown_key.json"],
            2,
            "unexpected key \"counit\"",
        ),
        case(
            &["eval", "--algebra", "z2", "--term", "@term_unbalanced.term"],
            2,
            "term_unbalanced.term:2:1",
        ),
        case(
            &["eval", "--algebra", "z2", "--term", "@term_bad_char.term"],
            2,
            "term_bad_char.term:1:11",
        ),
        case(
            &["eval", "--algebra", "z2", "--term", "@term_multiline.term"],
            2,
            "term_multiline.term:3:9",
        ),
        case(
            &[
                "eval",
                "--algebra",
                "z2",
                "--term",
                "@term_type_mismatch.term",
            ],
            2,
            "at root.then",
        ),
        case(
            &[
                "eval",
                "--sig",
                "bord1",
                "--pair",
                "@pair_wrong_length.json",
                "--term",
                "ev",
            ],
            2,
            "at /b",
        ),
        case(&["fusion", "@ring_negative.json"], 2, "at /N/0/0/0"),
        case(
            &[
                "relations",
                "--sig",
                "@sig_bad_relation.json",
                "--interp",
                "@interp_flip.json",
            ],
            2,
            "at /relations/0/lhs",
        ),
        case(
            &[
                "relations",
                "--sig",
                "@sig_involution.json",
                "--interp",
                "@interp_wrong_shape.json",
            ],
            2,
            "at /generators/f",
        ),
        case(
            &["eval", "--algebra", "z2", "--term", "cap ; ; cup"],
            2,
            "<term>:1:7",
        ),
        case(
            &["check", "--algebra", "@nonassociative.json"],
            1,
            "basis triple (1, 1, 2)",
        ),
    ]
}

/// [`layered_term`] with the input width and layer count drawn from ranges.
pub fn random_layered(
    r: &mut impl Rng,
    width_in: std::ops::RangeInclusive<usize>,
    layers: std::ops::RangeInclusive<usize>,
    max_width: usize,
) -> Term {
    let w = r.gen_range(width_in);
    let n = r.gen_range(layers);
    layered_term(r, w, n, max_width)
}
