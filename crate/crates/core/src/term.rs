//! Signatures and morphism terms of a free symmetric monoidal category.
//!
//! A [`Signature`] lists object generators, typed morphism generators, and
//! relations between terms. A [`Term`] is built from generators, identities,
//! symmetric braidings, composition, and tensor product. Typing is purely
//! syntactic: objects are finite words in the object generators and the
//! empty word is the monoidal unit.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::parser;

/// Reserved words that may not name a generator.
pub const RESERVED: [&str; 2] = ["id", "swap"];

/// A finite ordered list of object-generator labels.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct ObjectWord(pub Vec<String>);

impl ObjectWord {
    pub fn unit() -> Self {
        Self(Vec::new())
    }

    pub fn new<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Self {
        Self(labels.into_iter().map(Into::into).collect())
    }

    pub fn single(label: impl Into<String>) -> Self {
        Self(vec![label.into()])
    }

    pub fn labels(&self) -> &[String] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Monoidal product of words: concatenation.
    pub fn concat(&self, other: &ObjectWord) -> ObjectWord {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        ObjectWord(v)
    }
}

impl fmt::Display for ObjectWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.0.join(","))
    }
}

impl fmt::Debug for ObjectWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Term {
    Gen(String),
    Id(ObjectWord),
    /// Braiding `x·y → y·x`.
    Swap(ObjectWord, ObjectWord),
    /// `first` followed by `then` (diagrammatic order).
    Compose(Box<Term>, Box<Term>),
    Tensor(Box<Term>, Box<Term>),
}

impl Term {
    pub fn gen(name: impl Into<String>) -> Term {
        Term::Gen(name.into())
    }

    pub fn id<S: Into<String>>(labels: impl IntoIterator<Item = S>) -> Term {
        Term::Id(ObjectWord::new(labels))
    }

    pub fn swap(x: ObjectWord, y: ObjectWord) -> Term {
        Term::Swap(x, y)
    }

    /// `self ; then`
    pub fn then(self, then: Term) -> Term {
        Term::Compose(Box::new(self), Box::new(then))
    }

    /// `self * right`
    pub fn tensor(self, right: Term) -> Term {
        Term::Tensor(Box::new(self), Box::new(right))
    }

    /// Left-nested composite of a nonempty sequence.
    pub fn sequence(terms: impl IntoIterator<Item = Term>) -> Option<Term> {
        terms.into_iter().reduce(Term::then)
    }

    /// Depth of the syntax tree; atoms have depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Term::Gen(_) | Term::Id(_) | Term::Swap(..) => 1,
            Term::Compose(a, b) | Term::Tensor(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// Flatten nested compositions into their factors, in order.
    pub fn compose_factors(&self) -> Vec<&Term> {
        match self {
            Term::Compose(a, b) => {
                let mut v = a.compose_factors();
                v.extend(b.compose_factors());
                v
            }
            t => vec![t],
        }
    }

    /// Canonical DSL text; `parse(render(t)) == t`.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(&mut out);
        out
    }

    fn render_into(&self, out: &mut String) {
        fn paren(t: &Term, wrap: bool, out: &mut String) {
            if wrap {
                out.push('(');
                t.render_into(out);
                out.push(')');
            } else {
                t.render_into(out);
            }
        }
        match self {
            Term::Gen(name) => out.push_str(name),
            Term::Id(w) => {
                out.push_str("id[");
                out.push_str(&render_word(w));
                out.push(']');
            }
            Term::Swap(x, y) => {
                out.push_str("swap[");
                out.push_str(&render_swap_word(x));
                out.push(',');
                out.push_str(&render_swap_word(y));
                out.push(']');
            }
            Term::Compose(a, b) => {
                paren(a, false, out);
                out.push_str(" ; ");
                paren(b, matches!(**b, Term::Compose(..)), out);
            }
            Term::Tensor(a, b) => {
                paren(a, matches!(**a, Term::Compose(..)), out);
                out.push_str(" * ");
                paren(b, matches!(**b, Term::Compose(..) | Term::Tensor(..)), out);
            }
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn render_word(w: &ObjectWord) -> String {
    if w.is_empty() {
        "1".to_owned()
    } else {
        w.0.join(",")
    }
}

fn render_swap_word(w: &ObjectWord) -> String {
    match w.len() {
        0 => "1".to_owned(),
        1 => w.0[0].clone(),
        _ => format!("({})", w.0.join(",")),
    }
}

/// A named relation `lhs = rhs`.
#[derive(Clone, Debug, PartialEq)]
pub struct Relation {
    pub name: String,
    pub lhs: Term,
    pub rhs: Term,
}

/// Designated duality data for one object label: a coevaluation
/// `() → (x, x*)` and an evaluation `(x*, x) → ()`.
#[derive(Clone, Debug, PartialEq)]
pub struct Duality {
    pub dual: String,
    pub coev: Term,
    pub pairing: Term,
}

/// Morphism generator type `source → target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorType {
    pub source: ObjectWord,
    pub target: ObjectWord,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Signature {
    objects: Vec<String>,
    generators: BTreeMap<String, GeneratorType>,
    relations: Vec<Relation>,
    dualities: BTreeMap<String, Duality>,
}

impl Signature {
    /// Validate and assemble a signature. Every relation must type-check
    /// with equal endpoints, and every designated duality must have the
    /// shapes `() → (x,x*)` and `(x*,x) → ()`.
    pub fn new(
        objects: Vec<String>,
        generators: BTreeMap<String, GeneratorType>,
        relations: Vec<Relation>,
        dualities: BTreeMap<String, Duality>,
    ) -> Result<Self> {
        let mut seen = objects.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != objects.len() {
            return Err(Error::Signature("duplicate object label".into()));
        }
        for o in &objects {
            if RESERVED.contains(&o.as_str()) || o == "1" {
                return Err(Error::Signature(format!("`{o}` is reserved")));
            }
        }
        for (name, ty) in &generators {
            if RESERVED.contains(&name.as_str()) {
                return Err(Error::Signature(format!("`{name}` is a reserved word")));
            }
            if objects.contains(name) {
                return Err(Error::Signature(format!(
                    "`{name}` names both an object and a generator"
                )));
            }
            for l in ty.source.0.iter().chain(&ty.target.0) {
                if !objects.contains(l) {
                    return Err(Error::UnknownObject(l.clone()));
                }
            }
        }
        let sig = Self {
            objects,
            generators,
            relations,
            dualities,
        };
        for rel in &sig.relations {
            let l = typecheck(&rel.lhs, &sig)?;
            let r = typecheck(&rel.rhs, &sig)?;
            if l != r {
                return Err(Error::Signature(format!(
                    "relation {} relates {}→{} to {}→{}",
                    rel.name, l.0, l.1, r.0, r.1
                )));
            }
        }
        for (x, d) in &sig.dualities {
            if !sig.has_object(x) || !sig.has_object(&d.dual) {
                return Err(Error::UnknownObject(x.clone()));
            }
            let want_coev = (
                ObjectWord::unit(),
                ObjectWord::new([x.clone(), d.dual.clone()]),
            );
            let want_pair = (
                ObjectWord::new([d.dual.clone(), x.clone()]),
                ObjectWord::unit(),
            );
            if typecheck(&d.coev, &sig)? != want_coev || typecheck(&d.pairing, &sig)? != want_pair {
                return Err(Error::Signature(format!(
                    "duality data for `{x}` has the wrong endpoints"
                )));
            }
        }
        Ok(sig)
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn has_object(&self, label: &str) -> bool {
        self.objects.iter().any(|o| o == label)
    }

    pub fn generators(&self) -> &BTreeMap<String, GeneratorType> {
        &self.generators
    }

    pub fn generator(&self, name: &str) -> Option<&GeneratorType> {
        self.generators.get(name)
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn dualities(&self) -> &BTreeMap<String, Duality> {
        &self.dualities
    }

    pub fn duality(&self, label: &str) -> Option<&Duality> {
        self.dualities.get(label)
    }

    /// Parse DSL text and type-check it against this signature.
    pub fn parse(&self, text: &str) -> Result<Term> {
        parse_term(text, self)
    }
}

/// Parse a term and type-check it against `sig`.
pub fn parse_term(text: &str, sig: &Signature) -> Result<Term> {
    let t = parser::parse(text)?;
    typecheck(&t, sig)?;
    Ok(t)
}

/// Source and target words of `t`.
pub fn typecheck(t: &Term, sig: &Signature) -> Result<(ObjectWord, ObjectWord)> {
    check_at(t, sig, &mut String::from("root"))
}

fn check_word(w: &ObjectWord, sig: &Signature) -> Result<()> {
    match w.0.iter().find(|l| !sig.has_object(l)) {
        Some(l) => Err(Error::UnknownObject(l.clone())),
        None => Ok(()),
    }
}

fn check_at(t: &Term, sig: &Signature, path: &mut String) -> Result<(ObjectWord, ObjectWord)> {
    match t {
        Term::Gen(name) => sig
            .generator(name)
            .map(|g| (g.source.clone(), g.target.clone()))
            .ok_or_else(|| Error::UnknownGenerator(name.clone())),
        Term::Id(w) => {
            check_word(w, sig)?;
            Ok((w.clone(), w.clone()))
        }
        Term::Swap(x, y) => {
            check_word(x, sig)?;
            check_word(y, sig)?;
            Ok((x.concat(y), y.concat(x)))
        }
        Term::Compose(a, b) => {
            let n = path.len();
            path.push_str(".first");
            let (s, m1) = check_at(a, sig, path)?;
            path.truncate(n);
            path.push_str(".then");
            let (m2, e) = check_at(b, sig, path)?;
            if m1 != m2 {
                return Err(Error::ComposeMismatch {
                    expected: m1,
                    found: m2,
                    path: path.clone(),
                });
            }
            path.truncate(n);
            Ok((s, e))
        }
        Term::Tensor(a, b) => {
            let n = path.len();
            path.push_str(".left");
            let (s1, t1) = check_at(a, sig, path)?;
            path.truncate(n);
            path.push_str(".right");
            let (s2, t2) = check_at(b, sig, path)?;
            path.truncate(n);
            Ok((s1.concat(&s2), t1.concat(&t2)))
        }
    }
}
